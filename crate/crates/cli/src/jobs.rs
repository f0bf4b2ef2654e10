//! Dispatch from job descriptions to engine operations.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use dga_core::algebra::DGBimodule;
use dga_core::free::{adjunction_card_check, axiom3_smoke, free_functor_checked, ideal_generation_check, RsAlgebra};
use dga_core::hochschild::{bar_augmentation_check, der_groups, ext_groups, hh_groups, CochainCohomology};
use dga_core::theorems::{
    der_hh_les, fiber_les_assemble, lemma_c_check, pi_map_alg, semifree_pi0, theorem_a_report, LESReport,
};
use dga_core::{CutoffPolicy, DgaError, Result, Status, Window};

use crate::input::{Environment, JobDoc};

pub const DEFAULT_LEN: usize = 6;
pub const DEFAULT_CUTOFF: usize = 8;
pub const DEFAULT_POLY: usize = 4;

/// A finished job: the result body and whether every entry is determined.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub result: Value,
    pub determined: bool,
}

/// Global overrides from the command line.
#[derive(Clone, Copy, Debug, Default)]
pub struct Overrides {
    pub no_stabilize: bool,
}

fn need<'a>(v: &'a Option<String>, what: &str) -> Result<&'a str> {
    v.as_deref().ok_or_else(|| DgaError::Validation(format!("job: missing `{what}`")))
}

fn window(job: &JobDoc, default: (i32, i32)) -> Result<Window> {
    let [lo, hi] = job.degrees.unwrap_or([default.0, default.1]);
    if lo > hi {
        return Err(DgaError::Validation(format!("job.degrees: empty range [{lo}, {hi}]")));
    }
    Ok(Window::new(lo, hi))
}

fn positive(v: Option<usize>, default: usize, what: &str) -> Result<usize> {
    match v.unwrap_or(default) {
        0 => Err(DgaError::Validation(format!("job.{what}: must be positive"))),
        n => Ok(n),
    }
}

fn policy(job: &JobDoc, o: Overrides) -> Result<CutoffPolicy> {
    Ok(CutoffPolicy {
        cutoff: positive(job.cutoff, DEFAULT_CUTOFF, "cutoff")?,
        stabilize: job.stabilize.unwrap_or(true) && !o.no_stabilize,
    })
}

fn stabilize(job: &JobDoc, o: Overrides) -> bool {
    job.stabilize.unwrap_or(true) && !o.no_stabilize
}

fn wjson(w: Window) -> Value {
    json!([w.lo, w.hi])
}

fn groups(c: &CochainCohomology, w: Window) -> (Value, bool) {
    let rows: Vec<Value> = w
        .degrees()
        .map(|n| json!({"degree": n, "dim": c.dim(n), "status": c.status(n), "window": wjson(w)}))
        .collect();
    (Value::Array(rows), w.degrees().all(|n| c.status(n).is_determined()))
}

fn les(r: &LESReport) -> (Value, bool) {
    let ok = r.undetermined() == 0 && r.nodes.iter().all(|n| n.status.is_determined());
    (
        json!({"nodes": r.nodes, "exact": r.exact(), "not_exact": r.not_exact(), "undetermined": r.undetermined()}),
        ok,
    )
}

fn coefficients(env: &Environment, job: &JobDoc, r: &std::sync::Arc<dga_core::DGAlgebra>) -> Result<DGBimodule> {
    match &job.coefficients {
        Some(m) => env.bimodule(m),
        None => Ok(DGBimodule::regular(r)),
    }
}

pub fn run_job(env: &Environment, job: &JobDoc, o: Overrides) -> Result<Outcome> {
    let out = |result: Value, determined: bool| Ok(Outcome { result, determined });
    match job.op.as_str() {
        "homology" => {
            let c = if let Some(m) = &job.module {
                env.module(m)?
            } else if let Some(b) = &job.bimodule {
                env.bimodule(b)?.complex().clone()
            } else {
                env.algebra(need(&job.algebra, "algebra")?)?.complex().clone()
            };
            let sup = c.support().unwrap_or(Window::new(0, 0));
            let w = window(job, (sup.lo, sup.hi))?;
            let h = c.homology(w)?;
            let rows: Vec<Value> = w
                .degrees()
                .map(|n| json!({"degree": n, "dim": h.dims.get(&n).copied().unwrap_or(0), "status": Status::Exact, "window": wjson(w)}))
                .collect();
            out(json!({"groups": rows}), true)
        }
        "hh" | "ext" | "der" => {
            let r = env.algebra(need(&job.algebra, "algebra")?)?;
            let w = window(job, (-4, 4))?;
            let p = policy(job, o)?;
            let c = match job.op.as_str() {
                "hh" => hh_groups(&r, &coefficients(env, job, &r)?, w.lo, w.hi, p)?,
                "der" => der_groups(&r, &coefficients(env, job, &r)?, w.lo, w.hi, p)?,
                _ => {
                    let s = env.bimodule(need(&job.source, "source")?)?;
                    let t = env.bimodule(need(&job.target, "target")?)?;
                    ext_groups(&r, &s, &t, w.lo, w.hi, p)?
                }
            };
            let (rows, ok) = groups(&c, w);
            out(json!({"groups": rows}), ok)
        }
        "pi" => {
            let phi = env.map(need(&job.map, "map")?)?;
            let n = job.n.unwrap_or(2);
            if n < 2 {
                return Err(DgaError::Validation("job.n: homotopy degree must be at least 2".into()));
            }
            let gens = job.generators.as_deref().map(|g| env.module(g)).transpose()?;
            let g = pi_map_alg(&phi, n as usize, gens.as_ref(), policy(job, o)?)?;
            let ok = g.status.is_determined() && g.routes_agree();
            out(json!({"group": g, "routes_agree": g.routes_agree()}), ok)
        }
        "les-check" | "theorem-b" => {
            let p = policy(job, o)?;
            let rep = if let Some(m) = &job.map {
                fiber_les_assemble(&env.map(m)?, job.n.unwrap_or(3), p)?
            } else {
                let r = env.algebra(need(&job.algebra, "algebra")?)?;
                let w = window(job, (-3, 3))?;
                der_hh_les(&r, &coefficients(env, job, &r)?, w.lo, w.hi, p)?
            };
            let (v, ok) = les(&rep);
            out(v, ok)
        }
        "theorem-a" => {
            let r = env.algebra(need(&job.algebra, "algebra")?)?;
            let rep = theorem_a_report(&r, policy(job, o)?)?;
            let ok = rep.status.is_determined();
            out(json!({"report": rep}), ok)
        }
        "lemma-c" => {
            let r = env.algebra(need(&job.algebra, "algebra")?)?;
            let m = coefficients(env, job, &r)?;
            let rep = lemma_c_check(&r, &m, job.n.unwrap_or(2), policy(job, o)?)?;
            let ok = rep.status.is_determined();
            out(json!({"report": rep}), ok)
        }
        "free-f" => {
            let x = env.pointed(job.bimodule.as_deref(), job.point.as_deref(), job.algebra.as_deref())?;
            let w = window(job, (-2, 2))?;
            let l = positive(job.max_len, DEFAULT_LEN, "max_len")?;
            let (_, slice) = free_functor_checked(&x, l, w, stabilize(job, o))?;
            let ok = slice.status.is_determined();
            let dims: BTreeMap<i32, Value> = slice
                .dims
                .iter()
                .map(|(&n, &d)| (n, json!({"dim": d, "status": slice.status, "window": wjson(w)})))
                .collect();
            out(json!({"dims": dims, "max_len": l, "status": slice.status}), ok)
        }
        "adjunction-check" => {
            let x = env.pointed(job.bimodule.as_deref(), job.point.as_deref(), None)?;
            let a = env.algebra(need(&job.target, "target")?)?;
            let w = window(job, (0, 0))?;
            let l = positive(job.max_len, 3, "max_len")?;
            let rep = adjunction_card_check(&x, &RsAlgebra::over_ground(&a), l, w)?;
            out(json!({"report": rep, "window": wjson(w), "status": Status::Exact}), true)
        }
        "bar-check" => {
            let r = env.algebra(need(&job.algebra, "algebra")?)?;
            let s = coefficients(env, job, &r)?;
            let w = window(job, (-4, 2))?;
            let rep = bar_augmentation_check(&r, &s, w, policy(job, o)?)?;
            let ok = rep.status.is_determined();
            out(json!({"report": rep}), ok)
        }
        "generation-check" => {
            let x = env.pointed(job.bimodule.as_deref(), job.point.as_deref(), job.algebra.as_deref())?;
            let w = window(job, (-2, 2))?;
            let l = positive(job.max_len, 4, "max_len")?;
            let rep = ideal_generation_check(&x, l, w, stabilize(job, o))?;
            let ok = rep.status.is_determined();
            out(json!({"report": rep}), ok)
        }
        "axiom3-smoke" => {
            let s = env.algebra(need(&job.algebra, "algebra")?)?;
            let summand = job.bimodule.as_deref().map(|b| env.bimodule(b)).transpose()?;
            let w = window(job, (-2, 2))?;
            let l = positive(job.max_len, 3, "max_len")?;
            let rep = axiom3_smoke(&s, summand.as_ref(), l, w, stabilize(job, o))?;
            let ok = rep.status.is_determined();
            out(json!({"report": rep}), ok)
        }
        "lurie" => {
            let s = env.algebra(need(&job.algebra, "algebra")?)?;
            let d = positive(job.max_poly, DEFAULT_POLY, "max_poly")?;
            let rep = semifree_pi0(&s, job.with_z.unwrap_or(true), d, stabilize(job, o))?;
            let ok = rep.status.is_determined();
            out(json!({"report": rep}), ok)
        }
        other => Err(DgaError::Validation(format!("job.op: unknown operation {other:?}"))),
    }
}
