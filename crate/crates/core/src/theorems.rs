//! Homotopy groups of mapping spaces of DG algebras, through Hochschild
//! cohomology and the long exact sequences relating it to `H*(S)`.
//!
//! The fiber of the edge map `C(R, M) → M` is the positive-length cochain
//! subcomplex `C^{≥1}`; with `M = S_φ` its cohomology models the loop space
//! of the algebra mapping space, so `[R, S]_{i+1} = H^{-i}(C^{≥1}) = Der^{-i-1}`.

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{AlgebraMap, DGAlgebra, DGBimodule};
use crate::complex::{ChainComplex, Window};
use crate::error::{DgaError, Result};
use crate::hochschild::{BarCochains, Cell, CutoffPolicy, HochschildComplex, Status};
use crate::field::FieldSpec;
use crate::linalg::{Matrix, SparseVec, Span};

/// Exactness verdict at one node of a long exact sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum Verdict {
    Exact,
    NotExact { image: usize, kernel: usize },
    /// First or last node: one of its maps leaves the computed range.
    Boundary,
    Undetermined { reason: String },
}

#[derive(Clone, Debug, Serialize)]
pub struct LesNode {
    pub name: String,
    pub degree: i32,
    pub dim: usize,
    pub status: Status,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct LESReport {
    pub nodes: Vec<LesNode>,
}

impl LESReport {
    pub fn node(&self, name: &str) -> Option<&LesNode> {
        self.nodes.iter().find(|n| n.name == name)
    }

    pub fn not_exact(&self) -> usize {
        self.nodes.iter().filter(|n| matches!(n.verdict, Verdict::NotExact { .. })).count()
    }

    pub fn exact(&self) -> usize {
        self.nodes.iter().filter(|n| n.verdict == Verdict::Exact).count()
    }

    pub fn undetermined(&self) -> usize {
        self.nodes.iter().filter(|n| matches!(n.verdict, Verdict::Undetermined { .. })).count()
    }
}

/// One group of a sequence: the complex it lives in and class representatives.
struct Stage<'a> {
    name: String,
    degree: i32,
    complex: &'a ChainComplex,
    reps: Vec<SparseVec>,
    status: Status,
}

type CochainMap<'a> = Box<dyn Fn(&SparseVec) -> SparseVec + 'a>;

/// Verdicts for a sequence of stages joined by cochain maps
/// (`maps[i] : stage i → stage i + 1`). A node is exact when the composite
/// through it vanishes on cohomology and `rank(in) + rank(out) = dim`.
fn assemble(stages: Vec<Stage<'_>>, maps: Vec<CochainMap<'_>>) -> LESReport {
    let k = stages.len();
    let mut nodes = Vec::with_capacity(k);
    for i in 0..k {
        let s = &stages[i];
        let verdict = if i == 0 || i + 1 == k {
            Verdict::Boundary
        } else if ![&stages[i - 1], s, &stages[i + 1]].iter().all(|t| t.status.is_determined()) {
            Verdict::Undetermined { reason: "unstable neighbour".into() }
        } else {
            let (prev, next) = (&stages[i - 1], &stages[i + 1]);
            let incoming: Vec<SparseVec> = prev.reps.iter().map(|v| maps[i - 1](v)).collect();
            let outgoing: Vec<SparseVec> = s.reps.iter().map(|v| maps[i](v)).collect();
            let composite: Vec<SparseVec> = incoming.iter().map(|v| maps[i](v)).collect();
            let rank_in = s.complex.class_rank(s.degree, &incoming);
            let rank_out = next.complex.class_rank(next.degree, &outgoing);
            let kernel = s.reps.len() - rank_out;
            if next.complex.class_rank(next.degree, &composite) == 0 && rank_in == kernel {
                Verdict::Exact
            } else {
                Verdict::NotExact { image: rank_in, kernel }
            }
        };
        nodes.push(LesNode { name: s.name.clone(), degree: s.degree, dim: s.reps.len(), status: s.status, verdict });
    }
    LESReport { nodes }
}

fn global_to_local(c: &ChainComplex, n: i32, v: &SparseVec) -> SparseVec {
    let off = c.offset(n);
    v.map_indices(c.field(), |i| i - off)
}

/// `… → Der^{n-1} → HH^n → H^n(M) → Der^n → …` for `n ∈ [lo, hi]`, from the
/// short exact sequence `0 → C^{≥1} → C → M → 0`. `names` renames the
/// `Der^{n-1}` nodes (given `n`).
fn fiber_sequence(
    r: &Arc<DGAlgebra>,
    m: &DGBimodule,
    lo: i32,
    hi: i32,
    policy: CutoffPolicy,
    names: &dyn Fn(i32) -> [String; 3],
) -> Result<LESReport> {
    let cochains = BarCochains::hochschild(r, m)?;
    let full = cochains.cohomology(lo, hi + 1, policy)?;
    let pos = cochains.clone().positive_length().cohomology(lo, hi + 1, policy)?;
    let pos_cx = if pos.complex.truncation == full.complex.truncation {
        pos.complex.clone()
    } else {
        cochains.clone().positive_length().assemble(lo, hi + 1, full.complex.truncation)?
    };
    let pos_h = pos_cx.complex.homology(Window::new(lo, hi + 1))?;
    let mc = m.complex();
    let mh = mc.homology(Window::new(lo, hi + 1))?;
    let m_status = if m.is_truncation() { full.status(lo) } else { Status::Exact };
    let mut stages = Vec::new();
    let mut maps: Vec<CochainMap> = Vec::new();
    for n in lo..=hi {
        let [der, hh, h] = names(n);
        stages.push(Stage {
            name: der,
            degree: n,
            complex: &pos_cx.complex,
            reps: pos_h.representatives[&n].clone(),
            status: pos.status(n),
        });
        let (pcx, fcx) = (&pos_cx, &full.complex);
        maps.push(Box::new(move |v| pcx.restrict_to(fcx, n, v)));
        stages.push(Stage {
            name: hh,
            degree: n,
            complex: &full.complex.complex,
            reps: full.group(n).representatives.clone(),
            status: full.status(n),
        });
        maps.push(Box::new(move |v| global_to_local(mc, n, &fcx.edge(n, v))));
        stages.push(Stage { name: h, degree: n, complex: mc, reps: mh.representatives[&n].clone(), status: m_status });
        maps.push(Box::new(move |v| connecting(mc, fcx, pcx, n, v)));
    }
    maps.pop();
    let [der, _, _] = names(hi + 1);
    stages.push(Stage {
        name: der,
        degree: hi + 1,
        complex: &pos_cx.complex,
        reps: pos_h.representatives[&(hi + 1)].clone(),
        status: pos.status(hi + 1),
    });
    let (fcx, pcx) = (&full.complex, &pos_cx);
    maps.push(Box::new(move |v| connecting(mc, fcx, pcx, hi, v)));
    Ok(assemble(stages, maps))
}

/// Connecting map `H^n(M) → H^{n+1}(C^{≥1})`: lift a cocycle of `M` to a
/// length-0 cochain and apply the differential.
fn connecting(mc: &ChainComplex, full: &HochschildComplex, pos: &HochschildComplex, n: i32, v: &SparseVec) -> SparseVec {
    let f = mc.field();
    let off = mc.offset(n);
    let lift = SparseVec::from_pairs(
        f,
        v.iter().filter_map(|(i, c)| {
            let cell = Cell { word: Vec::new(), tail: 0, value: off + i };
            full.cell_index(n, &cell).map(|k| (k, c.clone()))
        }),
    );
    full.restrict_to(pos, n + 1, &full.complex.diff(n).apply(f, &lift))
}

/// The long exact sequence `Der^{n-1} → HH^n → H^n(M) → Der^n` on `[lo, hi]`.
pub fn der_hh_les(r: &Arc<DGAlgebra>, m: &DGBimodule, lo: i32, hi: i32, policy: CutoffPolicy) -> Result<LESReport> {
    fiber_sequence(r, m, lo, hi, policy, &|n| {
        [format!("Der^{}", n - 1), format!("HH^{n}"), format!("H^{n}(M)")]
    })
}

/// `S` as an `R`-bimodule through `φ`.
pub fn restricted_bimodule(phi: &AlgebraMap) -> Result<DGBimodule> {
    DGBimodule::regular(phi.target()).restrict(Some(phi), Some(phi))
}

/// Loop-space bookkeeping of the fiber sequence of `φ`:
/// nodes `[R,S]_{i+1} → HH^{-i}(R,S) → H^{-i}(S)` for `i ∈ [1, max_i]`.
pub fn fiber_les_assemble(phi: &AlgebraMap, max_i: i32, policy: CutoffPolicy) -> Result<LESReport> {
    let s = phi.target();
    if !s.is_strict() {
        return Err(DgaError::Scope("the target algebra must be strict".into()));
    }
    let m = restricted_bimodule(phi)?;
    fiber_sequence(phi.source(), &m, -max_i, -1, policy, &|n| {
        [format!("[R,S]_{}", 1 - n), format!("HH^{n}(R,S)"), format!("H^{n}(S)")]
    })
}

/// How a homotopy group was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Route {
    /// `[R,S]_{i+1} = HH^{-i}(R, S_φ)` for strict connective `S`.
    Corollary,
    /// The fiber term of the long exact sequence, `H^{-i}(C^{≥1})`.
    LesBound,
    /// Free source: maps out of generators.
    Oracle,
}

#[derive(Clone, Debug, Serialize)]
pub struct PiGroup {
    pub n: usize,
    pub dim: usize,
    pub route: Route,
    pub status: Status,
    /// Values from the other routes that could be evaluated.
    pub cross_checks: Vec<(Route, usize)>,
}

impl PiGroup {
    pub fn routes_agree(&self) -> bool {
        self.cross_checks.iter().all(|(_, d)| *d == self.dim)
    }
}

/// `dim π_n Map(T(V), S) = Σ_j dim V^j · dim H^{j-n}(S)` for generators `V`
/// with zero differential.
pub fn free_source_oracle(v: &ChainComplex, s: &DGAlgebra, n: i32) -> Result<usize> {
    if !v.has_zero_differential() {
        return Err(DgaError::Scope("generators must have zero differential".into()));
    }
    let sc = s.complex();
    let mut total = 0;
    for (&j, &d) in v.dims() {
        let deg = j - n;
        if d == 0 || sc.dim(deg) == 0 {
            continue;
        }
        total += d * sc.homology_dim(deg)?;
    }
    Ok(total)
}

/// Generators of a free source `R = T(V)` with zero differential, when known.
pub type FreeGenerators<'a> = Option<&'a ChainComplex>;

/// `[R, S]_n` at base point `φ`, for `n ≥ 2`.
pub fn pi_map_alg(phi: &AlgebraMap, n: usize, generators: FreeGenerators<'_>, policy: CutoffPolicy) -> Result<PiGroup> {
    if n < 2 {
        return Err(DgaError::Precondition("π_n for n ≥ 2 only; use theorem_a_report for n = 1".into()));
    }
    let s = phi.target();
    if !s.is_strict() {
        return Err(DgaError::Scope("the target algebra must be strict".into()));
    }
    let i = n as i32 - 1;
    let m = restricted_bimodule(phi)?;
    let r = phi.source();
    let connective = s.is_connective(s.support())?;
    let fiber = BarCochains::hochschild(r, &m)?.positive_length().cohomology(-i, -i, policy)?;
    let les = (Route::LesBound, fiber.dim(-i), fiber.status(-i));
    let mut values = vec![les];
    if connective {
        let hh = BarCochains::hochschild(r, &m)?.cohomology(-i, -i, policy)?;
        values.insert(0, (Route::Corollary, hh.dim(-i), hh.status(-i)));
    }
    if let Some(v) = generators {
        values.push((Route::Oracle, free_source_oracle(v, s, n as i32)?, Status::Exact));
    }
    let (route, dim, status) = values[0];
    let cross_checks = values[1..].iter().map(|(r, d, _)| (*r, *d)).collect();
    Ok(PiGroup { n, dim, route, status, cross_checks })
}

/// The fiber sequence of `φ : R → S` with `S` strict, over
/// `i ∈ [1, max_i]`, with the `[R,S]` nodes cross-checked against the
/// HH route and, for free sources, the generator count.
#[derive(Clone, Debug, Serialize)]
pub struct TheoremBReport {
    pub les: LESReport,
    pub pi: Vec<PiGroup>,
}

pub fn theorem_b_les_report(
    phi: &AlgebraMap,
    max_i: i32,
    generators: FreeGenerators<'_>,
    policy: CutoffPolicy,
) -> Result<TheoremBReport> {
    let les = fiber_les_assemble(phi, max_i, policy)?;
    let mut pi = Vec::new();
    for n in 2..=(max_i as usize + 1) {
        pi.push(pi_map_alg(phi, n, generators, policy)?);
    }
    Ok(TheoremBReport { les, pi })
}

/// Three dimensions that agree for a square-zero extension of connective `R` by `M`.
#[derive(Clone, Debug, Serialize)]
pub struct LemmaCReport {
    pub n: i32,
    /// `HH^{-n+1}(R, R ⊕ M)`.
    pub a: usize,
    /// `HH^{-n+1}(R, R) + HH^{-n+1}(R, M)`.
    pub b: usize,
    /// `Der^{-n}(R, M) + HH^{-n+1}(R, R)`.
    pub c: usize,
    pub status: Status,
    pub holds: bool,
}

pub fn lemma_c_check(r: &Arc<DGAlgebra>, m: &DGBimodule, n: i32, policy: CutoffPolicy) -> Result<LemmaCReport> {
    if n <= 1 {
        return Err(DgaError::Precondition("the square-zero comparison needs n > 1".into()));
    }
    if !r.is_connective(r.support())? {
        return Err(DgaError::Precondition("R must be connective".into()));
    }
    let mc = m.complex();
    if let Some(w) = mc.support() {
        if w.lo < 0 && !mc.homology(Window::new(w.lo, -1))?.is_zero() {
            return Err(DgaError::Precondition("M must be connective".into()));
        }
    }
    let sq = crate::algebra::square_zero_extension(r, m)?;
    if !sq.is_strict() {
        return Err(DgaError::Precondition("R ⊕ M must be strict".into()));
    }
    let k = -n + 1;
    let reg = DGBimodule::regular(r);
    let sum = reg.direct_sum(m)?;
    let hh = |c: &DGBimodule| BarCochains::hochschild(r, c)?.cohomology(k, k, policy);
    let (ha, hr, hm) = (hh(&sum)?, hh(&reg)?, hh(m)?);
    let der = crate::hochschild::der_groups(r, m, -n, -n, policy)?;
    let status = [ha.status(k), hr.status(k), hm.status(k), der.status(-n)]
        .into_iter()
        .fold(Status::Exact, Status::meet);
    let (a, b, c) = (ha.dim(k), hr.dim(k) + hm.dim(k), der.dim(-n) + hr.dim(k));
    Ok(LemmaCReport { n, a, b, c, status, holds: status.is_determined() && a == b && b == c })
}

/// Coordinates of the class of `v` in the basis `reps` of `H^n`.
fn class_coords(c: &ChainComplex, n: i32, reps: &[SparseVec], v: &SparseVec) -> Result<SparseVec> {
    let f = c.field();
    let mut span = Span::with_tracking(f);
    for (i, r) in reps.iter().enumerate() {
        span.insert_tracked(r.clone(), i);
    }
    if let Some(d) = c.diff_ref(n - 1) {
        for (j, col) in d.columns(f).into_iter().enumerate() {
            span.insert_tracked(col, reps.len() + j);
        }
    }
    let Some(combo) = span.express(v) else {
        return Err(DgaError::Internal(format!("vector is not a cocycle in degree {n}")));
    };
    Ok(SparseVec::from_pairs(f, combo.iter().filter(|(i, _)| *i < reps.len()).cloned()))
}

/// A finite-dimensional algebra given by structure constants on a basis.
#[derive(Clone, Debug, Serialize)]
pub struct SmallRing {
    pub dim: usize,
    #[serde(skip)]
    pub table: Vec<Vec<SparseVec>>,
    #[serde(skip)]
    pub unit: SparseVec,
}

impl SmallRing {
    pub fn mul(&self, f: FieldSpec, a: &SparseVec, b: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, x) in a.iter() {
            for (j, y) in b.iter() {
                out = out.axpy(f, &f.mul(x, y), &self.table[*i][*j]);
            }
        }
        out
    }

    /// Left multiplication by `a` is bijective (in finite dimension this
    /// makes `a` a two-sided unit).
    pub fn is_unit(&self, f: FieldSpec, a: &SparseVec) -> bool {
        let cols: Vec<SparseVec> = (0..self.dim).map(|j| self.mul(f, a, &SparseVec::unit(j, f.one()))).collect();
        Matrix::from_columns(f, self.dim, &cols).rank(f) == self.dim
    }

    /// Every element, for a prime field.
    pub fn elements(&self, f: FieldSpec) -> Result<Vec<SparseVec>> {
        let elems = f.elements().map_err(|_| DgaError::Scope("unit groups over the rationals are infinite".into()))?;
        let mut out = vec![SparseVec::new()];
        for i in 0..self.dim {
            out = out
                .iter()
                .flat_map(|v| elems.iter().map(move |c| v.add(f, &SparseVec::from_pairs(f, [(i, c.clone())]))))
                .collect();
        }
        Ok(out)
    }
}

/// `HH⁰(R)` with the cup product, `H⁰(R)`, and the edge map between them.
#[derive(Clone, Debug, Serialize)]
pub struct Hh0Ring {
    pub hh0: SmallRing,
    pub h0: SmallRing,
    /// Image of each `HH⁰` basis class in `H⁰(R)`.
    #[serde(skip)]
    pub edge: Vec<SparseVec>,
    pub labels: Vec<String>,
    pub status: Status,
}

impl Hh0Ring {
    pub fn edge_of(&self, f: FieldSpec, a: &SparseVec) -> SparseVec {
        a.iter().fold(SparseVec::new(), |acc, (i, c)| acc.axpy(f, c, &self.edge[*i]))
    }

    /// Whether the edge map is a unital ring map.
    pub fn edge_is_ring_map(&self, f: FieldSpec) -> bool {
        self.edge_of(f, &self.hh0.unit) == self.h0.unit
            && (0..self.hh0.dim).all(|i| {
                (0..self.hh0.dim).all(|j| {
                    self.edge_of(f, &self.hh0.table[i][j]) == self.h0.mul(f, &self.edge[i], &self.edge[j])
                })
            })
    }
}

/// Cup product of two degree-0 Hochschild cochains with values in `R`:
/// `(u ∪ v)[w₁w₂] = u[w₁]·v[w₂]`. No Koszul sign arises since `v` has total
/// degree 0.
fn cup0(r: &DGAlgebra, c: &HochschildComplex, u: &SparseVec, v: &SparseVec) -> SparseVec {
    let f = r.field();
    let cells = c.cells(0);
    let mut pairs = Vec::new();
    for (i, a) in u.iter() {
        for (j, b) in v.iter() {
            let (ci, cj) = (&cells[*i], &cells[*j]);
            let mut word = ci.word.clone();
            word.extend_from_slice(&cj.word);
            for (k, x) in r.mul_basis(ci.value, cj.value).iter() {
                let cell = Cell { word: word.clone(), tail: 0, value: *k };
                if let Some(idx) = c.cell_index(0, &cell) {
                    pairs.push((idx, f.mul(&f.mul(a, b), x)));
                }
            }
        }
    }
    SparseVec::from_pairs(f, pairs)
}

pub fn hh0_ring(r: &Arc<DGAlgebra>, policy: CutoffPolicy) -> Result<Hh0Ring> {
    let f = r.field();
    let cc = BarCochains::hochschild(r, &DGBimodule::regular(r))?.cohomology(0, 0, policy)?;
    let hc = &cc.complex;
    let g = cc.group(0);
    let reps = &g.representatives;
    let mut table = Vec::new();
    for u in reps {
        let mut row = Vec::new();
        for v in reps {
            let w = cup0(r, hc, u, v);
            if !hc.complex.is_cocycle(0, &w) {
                return Err(DgaError::Internal("cup product of cocycles is not a cocycle".into()));
            }
            row.push(class_coords(&hc.complex, 0, reps, &w)?);
        }
        table.push(row);
    }
    let unit_cell = r
        .unit()
        .iter()
        .filter_map(|(k, c)| hc.cell_index(0, &Cell { word: Vec::new(), tail: 0, value: *k }).map(|i| (i, c.clone())));
    let unit = class_coords(&hc.complex, 0, reps, &SparseVec::from_pairs(f, unit_cell.collect::<Vec<_>>()))?;
    let hh0 = SmallRing { dim: reps.len(), table, unit };
    // H⁰(R) with the induced product
    let rc = r.complex();
    let h0_reps = rc.homology(Window::new(0, 0))?.representatives.remove(&0).unwrap_or_default();
    let off = rc.offset(0);
    let lift = |v: &SparseVec| v.shifted(off);
    let mut h0_table = Vec::new();
    for a in &h0_reps {
        let mut row = Vec::new();
        for b in &h0_reps {
            let p = global_to_local(rc, 0, &r.mul(&lift(a), &lift(b)));
            row.push(class_coords(rc, 0, &h0_reps, &p)?);
        }
        h0_table.push(row);
    }
    let h0_unit = class_coords(rc, 0, &h0_reps, &global_to_local(rc, 0, r.unit()))?;
    let h0 = SmallRing { dim: h0_reps.len(), table: h0_table, unit: h0_unit };
    let edge = reps
        .iter()
        .map(|v| class_coords(rc, 0, &h0_reps, &global_to_local(rc, 0, &hc.edge(0, v))))
        .collect::<Result<Vec<_>>>()?;
    Ok(Hh0Ring { hh0, h0, edge, labels: g.labels.clone(), status: g.status })
}

/// The tail `H^{-1}(R) → [R,R]₁ → HH⁰(R)^⋆ → H⁰(R)^⋆` over a prime field.
#[derive(Clone, Debug, Serialize)]
pub struct TheoremAReport {
    pub h_minus_1: usize,
    pub hh0_dim: usize,
    pub hh0_units: usize,
    pub h0_units: usize,
    /// Units of `HH⁰` mapping to `1` in `H⁰(R)`.
    pub kernel: usize,
    /// Size of the image of `HH⁰^⋆` in `H⁰^⋆`.
    pub image: usize,
    /// `|[R,R]₁|`, determined as the kernel when `H^{-1}(R) = 0`.
    pub rr1_order: Option<usize>,
    pub edge_is_ring_map: bool,
    pub status: Status,
}

pub fn theorem_a_report(r: &Arc<DGAlgebra>, policy: CutoffPolicy) -> Result<TheoremAReport> {
    let f = r.field();
    if !f.is_finite() {
        return Err(DgaError::Scope("unit groups over the rationals are infinite".into()));
    }
    if !r.is_strict() {
        return Err(DgaError::Scope("R must be strict".into()));
    }
    let ring = hh0_ring(r, policy)?;
    let h_minus_1 = if r.complex().dim(-1) == 0 { 0 } else { r.complex().homology_dim(-1)? };
    let units: Vec<SparseVec> = ring.hh0.elements(f)?.into_iter().filter(|a| ring.hh0.is_unit(f, a)).collect();
    let h0_units = ring.h0.elements(f)?.into_iter().filter(|a| ring.h0.is_unit(f, a)).count();
    let mut image: Vec<SparseVec> = Vec::new();
    let mut kernel = 0;
    for u in &units {
        let e = ring.edge_of(f, u);
        if e == ring.h0.unit {
            kernel += 1;
        }
        if !image.contains(&e) {
            image.push(e);
        }
    }
    Ok(TheoremAReport {
        h_minus_1,
        hh0_dim: ring.hh0.dim,
        hh0_units: units.len(),
        h0_units,
        kernel,
        image: image.len(),
        rr1_order: (h_minus_1 == 0).then_some(kernel),
        edge_is_ring_map: ring.edge_is_ring_map(f),
        status: ring.status,
    })
}

/// Homotopy classes of maps out of a semifree algebra, counted by the path
/// object `S ⊗ Ω_D` with `Ω_D` the polynomial de Rham forms on the interval
/// truncated at `t^D`.
#[derive(Clone, Debug, Serialize)]
pub struct SemifreePi0 {
    pub max_poly: usize,
    /// `dim π₀` for `k⟨x, y, z⟩` with `|x| = |y| = 0`, `|z| = -1`,
    /// `dz = xy - yx` (or for `k⟨x, y⟩` when `z` is left out).
    pub associative: usize,
    /// `dim π₀` for `k[x, y]`.
    pub commutative: usize,
    pub status: Status,
}

/// `dim Z^j(S) - dim {ev₁ h : h ∈ Z^j(S⊗Ω_D), ev₀ h = 0}`: cocycles of S of
/// degree j modulo those homotopic to zero through the path object.
fn cocycles_mod_homotopy(s: &DGAlgebra, j: i32, big_d: usize) -> usize {
    let f = s.field();
    let of_deg = |n: i32| (0..s.dim()).filter(move |&i| s.degree(i) == n).collect::<Vec<_>>();
    // basis of (S⊗Ω)^n: s⊗t^k for |s| = n, then s⊗t^k dt for |s| = n - 1
    let basis = |n: i32| {
        let mut b: Vec<(usize, usize, bool)> = Vec::new();
        for i in of_deg(n) {
            b.extend((0..=big_d).map(|k| (i, k, false)));
        }
        for i in of_deg(n - 1) {
            b.extend((0..big_d).map(|k| (i, k, true)));
        }
        b
    };
    let (src, tgt) = (basis(j), basis(j + 1));
    let pos = |e: &(usize, usize, bool)| tgt.iter().position(|x| x == e);
    let mut cols = Vec::new();
    for &(i, k, dt) in &src {
        let mut pairs = Vec::new();
        for (m, c) in s.d_basis(i).iter() {
            pairs.extend(pos(&(*m, k, dt)).map(|p| (p, c.clone())));
        }
        if !dt && k > 0 {
            let c = f.mul(&f.sign(s.degree(i) as i64), &f.from_i64(k as i64));
            pairs.extend(pos(&(i, k - 1, true)).map(|p| (p, c)));
        }
        cols.push(SparseVec::from_pairs(f, pairs));
    }
    let z = Matrix::from_columns(f, tgt.len(), &cols).kernel(f);
    let sdeg = of_deg(j);
    let ev = |h: &SparseVec, at_one: bool| {
        let pairs = h.iter().filter_map(|(b, c)| {
            let (i, k, dt) = src[*b];
            (!dt && (at_one || k == 0)).then(|| (sdeg.iter().position(|&x| x == i).unwrap(), c.clone()))
        });
        SparseVec::from_pairs(f, pairs.collect::<Vec<_>>())
    };
    let e0: Vec<SparseVec> = z.iter().map(|h| ev(h, false)).collect();
    let null = Matrix::from_columns(f, sdeg.len(), &e0).kernel(f);
    let k_vecs: Vec<SparseVec> = null
        .iter()
        .map(|c| ev(&c.iter().fold(SparseVec::new(), |acc, (i, x)| acc.axpy(f, x, &z[*i])), true))
        .collect();
    let k_rank = Matrix::from_columns(f, sdeg.len(), &k_vecs).rank(f);
    s.complex().cocycles(j).len() - k_rank
}

fn is_graded_commutative(s: &DGAlgebra) -> bool {
    let f = s.field();
    (0..s.dim()).all(|i| {
        (0..s.dim()).all(|j| {
            let sign = f.sign((s.degree(i) * s.degree(j)) as i64);
            s.mul_basis(i, j) == s.mul_basis(j, i).scale(f, &sign)
        })
    })
}

pub fn semifree_pi0(s: &DGAlgebra, with_z: bool, max_poly: usize, stabilize: bool) -> Result<SemifreePi0> {
    if s.field().is_finite() {
        return Err(DgaError::Scope("the path object needs characteristic zero".into()));
    }
    if !is_graded_commutative(s) {
        return Err(DgaError::Scope("target must be graded-commutative".into()));
    }
    if max_poly == 0 {
        return Err(DgaError::Precondition("polynomial degree must be positive".into()));
    }
    let counts = |d: usize| {
        let c0 = cocycles_mod_homotopy(s, 0, d);
        let cm1 = if with_z { cocycles_mod_homotopy(s, -1, d) } else { 0 };
        (2 * c0 + cm1, 2 * c0)
    };
    let (associative, commutative) = counts(max_poly);
    let status = if stabilize && counts(max_poly + 1) == (associative, commutative) {
        Status::Stabilized(max_poly)
    } else {
        Status::Unstable(max_poly)
    };
    Ok(SemifreePi0 { max_poly, associative, commutative, status })
}
