//! Running a document's jobs and assembling the report.

use std::time::Instant;

use rayon::prelude::*;
use serde_json::{json, Value};

use dga_core::DgaError;

use crate::cache::{sha256_hex, Cache};
use crate::input::{Document, Environment, JobDoc};
use crate::jobs::{run_job, Outcome, Overrides, DEFAULT_CUTOFF, DEFAULT_LEN, DEFAULT_POLY};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_UNDETERMINED: i32 = 3;
pub const EXIT_SCOPE: i32 = 4;

pub struct RunOptions<'a> {
    pub jobs: usize,
    pub cache: Option<&'a Cache>,
    pub overrides: Overrides,
    pub timing: bool,
}

pub fn error_code(e: &DgaError) -> i32 {
    match e {
        DgaError::Validation(_) | DgaError::Precondition(_) => EXIT_VALIDATION,
        DgaError::Scope(_) | DgaError::OutOfWindow { .. } => EXIT_SCOPE,
        DgaError::Unstable(_) => EXIT_UNDETERMINED,
        DgaError::Internal(_) => EXIT_INTERNAL,
    }
}

fn error_kind(e: &DgaError) -> &'static str {
    match e {
        DgaError::Validation(_) => "validation",
        DgaError::Precondition(_) => "precondition",
        DgaError::Scope(_) => "scope",
        DgaError::OutOfWindow { .. } => "out_of_window",
        DgaError::Unstable(_) => "unstable",
        DgaError::Internal(_) => "internal",
    }
}

/// Combines per-job codes: validation, then internal, then scope, then
/// undetermined.
pub fn combine(codes: impl IntoIterator<Item = i32>) -> i32 {
    let codes: Vec<i32> = codes.into_iter().collect();
    [EXIT_VALIDATION, EXIT_INTERNAL, EXIT_SCOPE, EXIT_UNDETERMINED]
        .into_iter()
        .find(|c| codes.contains(c))
        .unwrap_or(EXIT_OK)
}

fn job_key(doc: &Document, job: &JobDoc, o: Overrides) -> String {
    let material = json!({
        "version": env!("CARGO_PKG_VERSION"),
        "field": doc.field,
        "modules": doc.modules,
        "algebras": doc.algebras,
        "bimodules": doc.bimodules,
        "maps": doc.maps,
        "job": job,
        "no_stabilize": o.no_stabilize,
    });
    sha256_hex(material.to_string().as_bytes())
}

fn cached_run(env: &Environment, doc: &Document, job: &JobDoc, opts: &RunOptions) -> (String, Result<Outcome, DgaError>) {
    let key = job_key(doc, job, opts.overrides);
    if let Some(c) = opts.cache {
        if let Some(v) = c.get(&key) {
            if let (Some(result), Some(determined)) = (v.get("result"), v.get("determined").and_then(Value::as_bool)) {
                return (key, Ok(Outcome { result: result.clone(), determined }));
            }
        }
    }
    let r = run_job(env, job, opts.overrides);
    if let (Some(c), Ok(o)) = (opts.cache, &r) {
        // a failed cache write only costs a recomputation later
        let _ = c.put(&key, &json!({"result": o.result, "determined": o.determined}));
    }
    (key, r)
}

/// Runs every job and returns the report with the process exit code.
pub fn run_document(doc: &Document, input_bytes: &[u8], opts: &RunOptions) -> (Value, i32) {
    let start = Instant::now();
    let env = match Environment::build(doc) {
        Ok(e) => e,
        Err(e) => {
            let report = json!({"error": {"kind": error_kind(&e), "message": e.to_string()}});
            return (report, EXIT_VALIDATION);
        }
    };
    let run = || -> Vec<(String, Result<Outcome, DgaError>)> {
        doc.jobs.par_iter().map(|j| cached_run(&env, doc, j, opts)).collect()
    };
    let outcomes = match rayon::ThreadPoolBuilder::new().num_threads(opts.jobs.max(1)).build() {
        Ok(pool) => pool.install(run),
        Err(_) => doc.jobs.iter().map(|j| cached_run(&env, doc, j, opts)).collect(),
    };
    let mut codes = Vec::new();
    let results: Vec<Value> = doc
        .jobs
        .iter()
        .zip(outcomes)
        .enumerate()
        .map(|(i, (job, (key, r)))| match r {
            Ok(o) => {
                codes.push(if o.determined { EXIT_OK } else { EXIT_UNDETERMINED });
                let status = if o.determined { "ok" } else { "undetermined" };
                json!({"index": i, "job": job, "key": key, "outcome": status, "result": o.result})
            }
            Err(e) => {
                codes.push(error_code(&e));
                json!({"index": i, "job": job, "key": key, "outcome": "error",
                       "error": {"kind": error_kind(&e), "message": e.to_string()}})
            }
        })
        .collect();
    let mut report = json!({
        "field": env.field.to_string(),
        "input_sha256": sha256_hex(input_bytes),
        "defaults": {"max_len": DEFAULT_LEN, "cutoff": DEFAULT_CUTOFF, "max_poly": DEFAULT_POLY},
        "results": results,
    });
    if opts.timing {
        report["timing_ms"] = json!(start.elapsed().as_millis() as u64);
    }
    (report, combine(codes))
}

/// Plain-text rendering: one block per job, arrays of flat objects as tables.
pub fn render_pretty(report: &Value) -> String {
    let mut out = String::new();
    if let Some(e) = report.get("error") {
        out.push_str(&format!("error: {}\n", e["message"].as_str().unwrap_or("")));
        return out;
    }
    out.push_str(&format!("field {}\n", report["field"].as_str().unwrap_or("?")));
    for r in report["results"].as_array().into_iter().flatten() {
        out.push_str(&format!("\n[{}] {} ({})\n", r["index"], r["job"]["op"].as_str().unwrap_or("?"), r["outcome"].as_str().unwrap_or("?")));
        if let Some(e) = r.get("error") {
            out.push_str(&format!("  {}\n", e["message"].as_str().unwrap_or("")));
            continue;
        }
        render_value(&r["result"], 1, &mut out);
    }
    out
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Object(m) if m.len() == 1 && m.contains_key("kind") => scalar_text(&m["kind"]),
        Value::Object(m) => m.iter().map(|(k, x)| format!("{k}={}", scalar_text(x))).collect::<Vec<_>>().join(","),
        other => other.to_string(),
    }
}

fn render_value(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                match x {
                    Value::Array(a) if a.iter().all(|y| !y.is_object() && !y.is_array()) => {
                        out.push_str(&format!("{pad}{k}: {}\n", scalar_text(x)));
                    }
                    Value::Object(_) | Value::Array(_) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render_value(x, depth + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}{k}: {}\n", scalar_text(x))),
                }
            }
        }
        Value::Array(items) if !items.is_empty() && items.iter().all(Value::is_object) => {
            let cols: Vec<&String> = items[0].as_object().unwrap().keys().collect();
            let rows: Vec<Vec<String>> = items
                .iter()
                .map(|it| cols.iter().map(|c| it.get(c.as_str()).map(scalar_text).unwrap_or_default()).collect())
                .collect();
            let widths: Vec<usize> = cols
                .iter()
                .enumerate()
                .map(|(i, c)| rows.iter().map(|r| r[i].chars().count()).chain([c.chars().count()]).max().unwrap())
                .collect();
            let line = |cells: Vec<String>| {
                let parts: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
                format!("{pad}{}\n", parts.join("  ").trim_end())
            };
            out.push_str(&line(cols.iter().map(|c| c.to_string()).collect()));
            for r in rows {
                out.push_str(&line(r));
            }
        }
        Value::Array(items) => {
            for x in items {
                render_value(x, depth, out);
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar_text(other))),
    }
}
