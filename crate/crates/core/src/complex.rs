//! Finitely supported cochain complexes (differential of degree +1) and the
//! constructions on them: homology, Hom and tensor complexes, suspension,
//! mapping cones.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{DgaError, Result};
use crate::field::FieldSpec;
use crate::linalg::{Matrix, SparseVec, Span};

/// Closed degree interval `[lo, hi]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Window {
    pub lo: i32,
    pub hi: i32,
}

const UNBOUNDED_LO: i32 = i32::MIN / 4;
const UNBOUNDED_HI: i32 = i32::MAX / 4;

impl Window {
    pub fn new(lo: i32, hi: i32) -> Self {
        Self { lo, hi }
    }

    pub fn unbounded() -> Self {
        Self { lo: UNBOUNDED_LO, hi: UNBOUNDED_HI }
    }

    pub fn is_unbounded(&self) -> bool {
        self.lo == UNBOUNDED_LO && self.hi == UNBOUNDED_HI
    }

    pub fn contains(&self, n: i32) -> bool {
        self.lo <= n && n <= self.hi
    }

    pub fn covers(&self, other: &Window) -> bool {
        other.lo > other.hi || (self.lo <= other.lo && other.hi <= self.hi)
    }

    pub fn degrees(&self) -> impl Iterator<Item = i32> {
        self.lo..=self.hi
    }

    pub fn intersect(&self, other: &Window) -> Window {
        Window { lo: self.lo.max(other.lo), hi: self.hi.min(other.hi) }
    }

    pub fn shift(&self, by: i32) -> Window {
        let lo = if self.lo == UNBOUNDED_LO { UNBOUNDED_LO } else { self.lo + by };
        let hi = if self.hi == UNBOUNDED_HI { UNBOUNDED_HI } else { self.hi + by };
        Window { lo, hi }
    }
}

/// Cochain complex over an exact field. `exact` is the degree range in which
/// homology is certified to agree with the object this complex models
/// (unbounded for genuine finite complexes, finite for truncations).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    field: FieldSpec,
    dims: BTreeMap<i32, usize>,
    diffs: BTreeMap<i32, Matrix>,
    exact: Window,
}

impl ChainComplex {
    /// Validates shapes and `d∘d = 0`.
    pub fn new(
        field: FieldSpec,
        dims: BTreeMap<i32, usize>,
        diffs: BTreeMap<i32, Matrix>,
    ) -> Result<Self> {
        let dims: BTreeMap<i32, usize> = dims.into_iter().filter(|(_, d)| *d > 0).collect();
        let mut clean = BTreeMap::new();
        for (n, d) in diffs {
            let (src, tgt) = (dims.get(&n).copied().unwrap_or(0), dims.get(&(n + 1)).copied().unwrap_or(0));
            if d.cols() != src || d.rows() != tgt {
                return Err(DgaError::Validation(format!(
                    "d^{n} has shape {}x{}, expected {tgt}x{src}",
                    d.rows(),
                    d.cols()
                )));
            }
            if src > 0 && tgt > 0 && !d.is_zero() {
                clean.insert(n, d);
            }
        }
        let c = Self { field, dims, diffs: clean, exact: Window::unbounded() };
        for (n, d) in &c.diffs {
            if let Some(next) = c.diffs.get(&(n + 1)) {
                if !next.mul(field, d).is_zero() {
                    return Err(DgaError::Validation(format!("d^{} ∘ d^{n} ≠ 0", n + 1)));
                }
            }
        }
        Ok(c)
    }

    /// Builds a complex from a global basis with non-decreasing degrees and
    /// the image of each basis element under `d` (global coordinates).
    pub fn from_global(field: FieldSpec, degrees: &[i32], d_images: &[SparseVec]) -> Result<Self> {
        if d_images.len() != degrees.len() {
            return Err(DgaError::Validation("one differential image per basis element required".into()));
        }
        if degrees.windows(2).any(|w| w[0] > w[1]) {
            return Err(DgaError::Validation("basis degrees must be non-decreasing".into()));
        }
        let mut dims: BTreeMap<i32, usize> = BTreeMap::new();
        for d in degrees {
            *dims.entry(*d).or_insert(0) += 1;
        }
        let offset = |n: i32| -> usize { dims.range(..n).map(|(_, d)| d).sum() };
        let mut trip: BTreeMap<i32, Vec<(usize, usize, crate::field::Scalar)>> = BTreeMap::new();
        for (g, img) in d_images.iter().enumerate() {
            let n = degrees[g];
            for (t, c) in img.iter() {
                if *t >= degrees.len() || degrees[*t] != n + 1 {
                    return Err(DgaError::Validation(format!(
                        "d of basis element {g} (degree {n}) has a component outside degree {}",
                        n + 1
                    )));
                }
                trip.entry(n).or_default().push((t - offset(n + 1), g - offset(n), c.clone()));
            }
        }
        let diffs = trip
            .into_iter()
            .map(|(n, t)| (n, Matrix::from_triplets(field, dims[&(n + 1)], dims[&n], t)))
            .collect();
        Self::new(field, dims.clone(), diffs)
    }

    /// Degree of each global basis index.
    pub fn basis_degrees(&self) -> Vec<i32> {
        self.dims.iter().flat_map(|(n, d)| std::iter::repeat(*n).take(*d)).collect()
    }

    pub fn zero(field: FieldSpec) -> Self {
        Self { field, dims: BTreeMap::new(), diffs: BTreeMap::new(), exact: Window::unbounded() }
    }

    /// One-dimensional complex in degree 0.
    pub fn ground(field: FieldSpec) -> Self {
        Self::new(field, BTreeMap::from([(0, 1)]), BTreeMap::new()).unwrap()
    }

    /// Complex with zero differential and the given dimensions.
    pub fn with_zero_differential(field: FieldSpec, dims: BTreeMap<i32, usize>) -> Self {
        Self::new(field, dims, BTreeMap::new()).unwrap()
    }

    /// Restricts the certified homology range.
    pub fn with_exact_window(mut self, w: Window) -> Self {
        self.exact = self.exact.intersect(&w);
        self
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn exact_window(&self) -> Window {
        self.exact
    }

    pub fn dim(&self, n: i32) -> usize {
        self.dims.get(&n).copied().unwrap_or(0)
    }

    pub fn dims(&self) -> &BTreeMap<i32, usize> {
        &self.dims
    }

    /// `d^n : C^n → C^{n+1}`.
    pub fn diff(&self, n: i32) -> Matrix {
        self.diffs
            .get(&n)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.dim(n + 1), self.dim(n)))
    }

    pub fn diff_ref(&self, n: i32) -> Option<&Matrix> {
        self.diffs.get(&n)
    }

    /// Smallest and largest degree with nonzero dimension.
    pub fn support(&self) -> Option<Window> {
        let lo = *self.dims.keys().next()?;
        let hi = *self.dims.keys().next_back()?;
        Some(Window::new(lo, hi))
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn has_zero_differential(&self) -> bool {
        self.diffs.is_empty()
    }

    /// Offset of degree `n` inside the concatenated basis (degrees ascending).
    pub fn offset(&self, n: i32) -> usize {
        self.dims.range(..n).map(|(_, d)| d).sum()
    }

    /// Degree and local index of a global basis index.
    pub fn locate(&self, g: usize) -> (i32, usize) {
        let mut acc = 0;
        for (n, d) in &self.dims {
            if g < acc + d {
                return (*n, g - acc);
            }
            acc += d;
        }
        panic!("global index {g} out of range");
    }

    /// Applies the differential to a vector in global coordinates.
    pub fn diff_global(&self, v: &SparseVec) -> SparseVec {
        let f = self.field;
        let mut out = SparseVec::new();
        for (n, d) in &self.diffs {
            let off = self.offset(*n);
            let part = v.slice(off, off + self.dim(*n));
            if part.is_zero() {
                continue;
            }
            let img = d.apply(f, &part).shifted(self.offset(n + 1));
            out = out.add(f, &img);
        }
        out
    }

    /// Span of the boundaries in degree `n`.
    pub fn boundaries(&self, n: i32) -> Span {
        let mut span = Span::new(self.field);
        if let Some(d) = self.diffs.get(&(n - 1)) {
            for c in d.columns(self.field) {
                span.insert(c);
            }
        }
        span
    }

    pub fn cocycles(&self, n: i32) -> Vec<SparseVec> {
        let dim = self.dim(n);
        match self.diffs.get(&n) {
            Some(d) => d.kernel(self.field),
            None => (0..dim).map(|i| SparseVec::unit(i, self.field.one())).collect(),
        }
    }

    pub fn is_cocycle(&self, n: i32, v: &SparseVec) -> bool {
        self.diffs.get(&n).map_or(true, |d| d.apply(self.field, v).is_zero())
    }

    pub fn is_boundary(&self, n: i32, v: &SparseVec) -> bool {
        self.boundaries(n).contains(v)
    }

    fn check_window(&self, window: Window) -> Result<()> {
        for n in [window.lo, window.hi] {
            if window.lo <= window.hi && !self.exact.contains(n) {
                return Err(DgaError::OutOfWindow { degree: n, lo: self.exact.lo, hi: self.exact.hi });
            }
        }
        Ok(())
    }

    /// Homology on `window` with cocycle representatives spanning a
    /// complement of the boundaries.
    pub fn homology(&self, window: Window) -> Result<HomologyResult> {
        self.check_window(window)?;
        let mut dims = BTreeMap::new();
        let mut reps = BTreeMap::new();
        for n in window.degrees() {
            let mut span = self.boundaries(n);
            let mut chosen = Vec::new();
            for z in self.cocycles(n) {
                if span.insert(z.clone()) {
                    chosen.push(z);
                }
            }
            dims.insert(n, chosen.len());
            reps.insert(n, chosen);
        }
        Ok(HomologyResult { window, dims, representatives: reps })
    }

    /// Dimension of `H^n`.
    pub fn homology_dim(&self, n: i32) -> Result<usize> {
        Ok(self.homology(Window::new(n, n))?.dim(n))
    }

    /// Rank of the classes of `vectors` (cocycles in degree `n`) in `H^n`.
    pub fn class_rank(&self, n: i32, vectors: &[SparseVec]) -> usize {
        let mut span = self.boundaries(n);
        let base = span.rank();
        for v in vectors {
            span.insert(v.clone());
        }
        span.rank() - base
    }

    /// The complex with degree `n` moved to `n - m` and differential
    /// multiplied by `(-1)^m`; `(Σ^m M)^n = M^{n+m}`.
    pub fn suspend(&self, m: i32) -> ChainComplex {
        let f = self.field;
        let sign = f.sign(m as i64);
        ChainComplex {
            field: f,
            dims: self.dims.iter().map(|(n, d)| (n - m, *d)).collect(),
            diffs: self.diffs.iter().map(|(n, d)| (n - m, d.scale(f, &sign))).collect(),
            exact: self.exact.shift(-m),
        }
    }

    /// Direct sum; bases concatenated degreewise (self first).
    pub fn direct_sum(&self, other: &ChainComplex) -> ChainComplex {
        assert_eq!(self.field, other.field);
        let mut dims = self.dims.clone();
        for (n, d) in &other.dims {
            *dims.entry(*n).or_insert(0) += d;
        }
        let mut diffs = BTreeMap::new();
        for n in dims.keys() {
            let m = self.diff(*n).block_diag(&other.diff(*n));
            diffs.insert(*n, m);
        }
        let mut c = ChainComplex::new(self.field, dims, diffs).expect("sum of complexes");
        c.exact = self.exact.intersect(&other.exact);
        c
    }

    fn require_finite(&self, what: &str) -> Result<()> {
        if self.exact.is_unbounded() {
            Ok(())
        } else {
            Err(DgaError::Precondition(format!("{what} needs untruncated complexes")))
        }
    }
}

/// Homology on a certified window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyResult {
    pub window: Window,
    pub dims: BTreeMap<i32, usize>,
    pub representatives: BTreeMap<i32, Vec<SparseVec>>,
}

impl HomologyResult {
    pub fn dim(&self, n: i32) -> usize {
        self.dims.get(&n).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.dims.values().all(|d| *d == 0)
    }
}


/// Degree-`shift` linear map between complexes: `components[n] : S^n → T^{n+shift}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMap {
    pub shift: i32,
    pub components: BTreeMap<i32, Matrix>,
}

impl GradedMap {
    pub fn new(shift: i32) -> Self {
        Self { shift, components: BTreeMap::new() }
    }

    pub fn zero_between(source: &ChainComplex, target: &ChainComplex, shift: i32) -> Self {
        let components = source
            .dims()
            .iter()
            .map(|(n, d)| (*n, Matrix::zeros(target.dim(n + shift), *d)))
            .collect();
        Self { shift, components }
    }

    pub fn identity(c: &ChainComplex) -> Self {
        let f = c.field();
        Self {
            shift: 0,
            components: c.dims().iter().map(|(n, d)| (*n, Matrix::identity(f, *d))).collect(),
        }
    }

    pub fn component(&self, source: &ChainComplex, target: &ChainComplex, n: i32) -> Matrix {
        self.components
            .get(&n)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(target.dim(n + self.shift), source.dim(n)))
    }

    /// Checks shapes and `d_T f = (-1)^shift f d_S`.
    pub fn validate(&self, source: &ChainComplex, target: &ChainComplex) -> Result<()> {
        let fld = source.field();
        for (n, m) in &self.components {
            if m.cols() != source.dim(*n) || m.rows() != target.dim(n + self.shift) {
                return Err(DgaError::Validation(format!(
                    "map component in degree {n} has shape {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    target.dim(n + self.shift),
                    source.dim(*n)
                )));
            }
        }
        let sign = fld.sign(self.shift as i64);
        let mut degrees: Vec<i32> = source.dims().keys().copied().collect();
        degrees.extend(source.dims().keys().map(|n| n - 1));
        degrees.sort_unstable();
        degrees.dedup();
        for n in degrees {
            let lhs = target.diff(n + self.shift).mul(fld, &self.component(source, target, n));
            let rhs = self
                .component(source, target, n + 1)
                .mul(fld, &source.diff(n))
                .scale(fld, &sign);
            if lhs != rhs {
                return Err(DgaError::Validation(format!(
                    "map does not commute with differentials in degree {n}"
                )));
            }
        }
        Ok(())
    }

    pub fn compose(&self, other: &GradedMap, a: &ChainComplex, b: &ChainComplex, c: &ChainComplex) -> GradedMap {
        // self: b → c, other: a → b
        let fld = a.field();
        let mut out = GradedMap::new(self.shift + other.shift);
        for n in a.dims().keys() {
            let m = self
                .component(b, c, n + other.shift)
                .mul(fld, &other.component(a, b, *n));
            out.components.insert(*n, m);
        }
        out
    }

    /// Rank of the induced map `H^n(S) → H^{n+shift}(T)`.
    pub fn induced_rank(&self, source: &ChainComplex, target: &ChainComplex, n: i32) -> Result<usize> {
        let h = source.homology(Window::new(n, n))?;
        target.check_window(Window::new(n + self.shift, n + self.shift))?;
        let m = self.component(source, target, n);
        let images: Vec<SparseVec> = h.representatives[&n]
            .iter()
            .map(|z| m.apply(source.field(), z))
            .collect();
        Ok(target.class_rank(n + self.shift, &images))
    }
}

/// `Hom(M, N)` with `(δf) = d_N f - (-1)^n f d_M` in degree `n`.
/// Basis of degree `n`: for `i` ascending over degrees of `M`, the elementary
/// maps `E_{b,a}` (a ∈ M^i, b ∈ N^{i+n}) in order `a` major, `b` minor.
pub fn hom_complex(m: &ChainComplex, n: &ChainComplex) -> Result<ChainComplex> {
    m.require_finite("Hom")?;
    n.require_finite("Hom")?;
    let fld = m.field();
    let layout = HomLayout::new(m, n);
    let mut diffs = BTreeMap::new();
    for (&deg, &dim) in &layout.dims {
        let tgt_dim = layout.dims.get(&(deg + 1)).copied().unwrap_or(0);
        if tgt_dim == 0 {
            continue;
        }
        let sign = fld.neg(&fld.sign(deg as i64));
        let mut trip = Vec::new();
        for (&i, &mdim) in m.dims() {
            let ndim = n.dim(i + deg);
            if ndim == 0 {
                continue;
            }
            for a in 0..mdim {
                for b in 0..ndim {
                    let col = layout.index(deg, i, a, b);
                    // d_N ∘ E_{b,a}
                    if let Some(dn) = n.diff_ref(i + deg) {
                        for b2 in 0..dn.rows() {
                            let c = dn.get(b2, b);
                            if !c.is_zero() {
                                trip.push((layout.index(deg + 1, i, a, b2), col, c));
                            }
                        }
                    }
                    // -(-1)^deg E_{b,a} ∘ d_M, landing on sources in M^{i-1}
                    if let Some(dm) = m.diff_ref(i - 1) {
                        for (a0, c) in dm.row(a).iter() {
                            trip.push((layout.index(deg + 1, i - 1, *a0, b), col, fld.mul(&sign, c)));
                        }
                    }
                }
            }
        }
        diffs.insert(deg, Matrix::from_triplets(fld, tgt_dim, dim, trip));
    }
    ChainComplex::new(fld, layout.dims.clone(), diffs)
}

/// Index bookkeeping for [`hom_complex`].
#[derive(Clone, Debug)]
pub struct HomLayout {
    pub dims: BTreeMap<i32, usize>,
    offsets: BTreeMap<(i32, i32), (usize, usize)>,
}

impl HomLayout {
    pub fn new(m: &ChainComplex, n: &ChainComplex) -> Self {
        let mut dims: BTreeMap<i32, usize> = BTreeMap::new();
        let mut offsets = BTreeMap::new();
        let (Some(sm), Some(sn)) = (m.support(), n.support()) else {
            return Self { dims, offsets };
        };
        for deg in (sn.lo - sm.hi)..=(sn.hi - sm.lo) {
            let mut acc = 0;
            for (&i, &mdim) in m.dims() {
                let ndim = n.dim(i + deg);
                if ndim > 0 {
                    offsets.insert((deg, i), (acc, ndim));
                    acc += mdim * ndim;
                }
            }
            if acc > 0 {
                dims.insert(deg, acc);
            }
        }
        Self { dims, offsets }
    }

    /// Position of `E_{b,a}` with `a ∈ M^i`, `b ∈ N^{i+deg}`.
    pub fn index(&self, deg: i32, i: i32, a: usize, b: usize) -> usize {
        let (off, ndim) = self.offsets[&(deg, i)];
        off + a * ndim + b
    }

    /// Matrix of the degree-`deg` element `v` on `M^i`.
    pub fn block(&self, field: FieldSpec, v: &SparseVec, deg: i32, i: i32, mdim: usize) -> Option<Matrix> {
        let (off, ndim) = *self.offsets.get(&(deg, i))?;
        let trip = v
            .iter()
            .filter(|(k, _)| *k >= off && *k < off + mdim * ndim)
            .map(|(k, c)| ((k - off) % ndim, (k - off) / ndim, c.clone()));
        Some(Matrix::from_triplets(field, ndim, mdim, trip))
    }
}

/// `M ⊗ N` with `d(a⊗b) = da⊗b + (-1)^{|a|} a⊗db`; basis `(i, a, b)` with
/// `i` ascending, `a` major.
pub fn tensor_product(m: &ChainComplex, n: &ChainComplex) -> Result<ChainComplex> {
    m.require_finite("tensor product")?;
    n.require_finite("tensor product")?;
    let fld = m.field();
    let mut dims: BTreeMap<i32, usize> = BTreeMap::new();
    let mut offsets: BTreeMap<(i32, i32), usize> = BTreeMap::new();
    let mut totals: Vec<i32> = Vec::new();
    for &i in m.dims().keys() {
        for &j in n.dims().keys() {
            totals.push(i + j);
        }
    }
    totals.sort_unstable();
    totals.dedup();
    for &t in &totals {
        let mut acc = 0;
        for (&i, &mdim) in m.dims() {
            let ndim = n.dim(t - i);
            if ndim > 0 {
                offsets.insert((t, i), acc);
                acc += mdim * ndim;
            }
        }
        dims.insert(t, acc);
    }
    let idx = |t: i32, i: i32, a: usize, b: usize| offsets[&(t, i)] + a * n.dim(t - i) + b;
    let mut diffs = BTreeMap::new();
    for &t in &totals {
        let tgt = dims.get(&(t + 1)).copied().unwrap_or(0);
        if tgt == 0 {
            continue;
        }
        let mut trip = Vec::new();
        for (&i, &mdim) in m.dims() {
            let ndim = n.dim(t - i);
            if ndim == 0 {
                continue;
            }
            let sign = fld.sign(i as i64);
            for a in 0..mdim {
                for b in 0..ndim {
                    let col = idx(t, i, a, b);
                    if let Some(dm) = m.diff_ref(i) {
                        for a2 in 0..dm.rows() {
                            let c = dm.get(a2, a);
                            if !c.is_zero() {
                                trip.push((idx(t + 1, i + 1, a2, b), col, c));
                            }
                        }
                    }
                    if let Some(dn) = n.diff_ref(t - i) {
                        for b2 in 0..dn.rows() {
                            let c = dn.get(b2, b);
                            if !c.is_zero() {
                                trip.push((idx(t + 1, i, a, b2), col, fld.mul(&sign, &c)));
                            }
                        }
                    }
                }
            }
        }
        diffs.insert(t, Matrix::from_triplets(fld, tgt, dims[&t], trip));
    }
    ChainComplex::new(fld, dims, diffs)
}

/// Mapping cone of a degree-0 chain map `f : S → T`:
/// `cone^n = S^{n+1} ⊕ T^n`, `d(s, t) = (-ds, f(s) + dt)`.
pub fn cone(f: &GradedMap, source: &ChainComplex, target: &ChainComplex) -> Result<ChainComplex> {
    if f.shift != 0 {
        return Err(DgaError::Precondition("cone needs a degree-0 map".into()));
    }
    f.validate(source, target)?;
    let fld = source.field();
    let mut dims = BTreeMap::new();
    for (n, d) in source.dims() {
        *dims.entry(n - 1).or_insert(0) += d;
    }
    for (n, d) in target.dims() {
        *dims.entry(*n).or_insert(0) += d;
    }
    let minus = fld.from_i64(-1);
    let mut diffs = BTreeMap::new();
    for &n in dims.keys() {
        let t_src = target.dim(n);
        let s_tgt = source.dim(n + 2);
        let top = source.diff(n + 1).scale(fld, &minus).hconcat(&Matrix::zeros(s_tgt, t_src));
        let bottom = f.component(source, target, n + 1).hconcat(&target.diff(n));
        diffs.insert(n, top.vconcat(&bottom));
    }
    let c = ChainComplex::new(fld, dims, diffs)?;
    let exact = source.exact_window().shift(-1).intersect(&target.exact_window());
    Ok(c.with_exact_window(exact))
}

/// True iff the cone of `f` has vanishing homology on `window`.
pub fn is_quasi_iso(f: &GradedMap, source: &ChainComplex, target: &ChainComplex, window: Window) -> Result<bool> {
    let c = cone(f, source, target)?;
    Ok(c.homology(window)?.is_zero())
}

/// `π_n Map(M, N) = H^{-n} Hom(M, N)` for finite complexes and `n ≥ 0`.
pub fn pi_n_mod_map(m: &ChainComplex, n: &ChainComplex, deg: i32) -> Result<HomologyResult> {
    if deg < 0 {
        return Err(DgaError::Precondition(format!("π_{deg} requested; homotopy groups need n ≥ 0")));
    }
    hom_complex(m, n)?.homology(Window::new(-deg, -deg))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn int(v: i64) -> crate::field::Scalar {
        q().from_i64(v)
    }

    /// `k --1--> k` in degrees 0, 1 plus a free `k` in degree 2.
    fn sample() -> ChainComplex {
        let d0 = Matrix::from_dense(q(), &[vec![int(1)]]);
        ChainComplex::new(q(), BTreeMap::from([(0, 1), (1, 1), (2, 1)]), BTreeMap::from([(0, d0)])).unwrap()
    }

    #[test]
    fn rejects_nonzero_square() {
        let d0 = Matrix::from_dense(q(), &[vec![int(1)]]);
        let d1 = Matrix::from_dense(q(), &[vec![int(2)]]);
        let r = ChainComplex::new(q(), BTreeMap::from([(0, 1), (1, 1), (2, 1)]), BTreeMap::from([(0, d0), (1, d1)]));
        assert!(matches!(r, Err(DgaError::Validation(_))));
    }

    #[test]
    fn homology_of_sample() {
        let h = sample().homology(Window::new(-1, 3)).unwrap();
        assert_eq!((h.dim(0), h.dim(1), h.dim(2)), (0, 0, 1));
    }

    #[test]
    fn suspension_shifts_homology() {
        let s = sample().suspend(2);
        assert_eq!(s.homology_dim(0).unwrap(), 1);
        assert_eq!(s.dim(-2), 1);
    }

    #[test]
    fn truncated_window_is_enforced() {
        let c = sample().with_exact_window(Window::new(0, 1));
        assert!(matches!(c.homology(Window::new(0, 2)), Err(DgaError::OutOfWindow { degree: 2, .. })));
    }

    #[test]
    fn hom_and_tensor_dimensions() {
        let s = sample();
        let k2 = ChainComplex::with_zero_differential(q(), BTreeMap::from([(0, 1), (3, 1)]));
        let hom = hom_complex(&k2, &s).unwrap();
        assert_eq!(hom.homology_dim(0).unwrap(), 0);
        assert_eq!(hom.homology_dim(2).unwrap(), 1);
        assert_eq!(pi_n_mod_map(&k2, &s, 1).unwrap().dim(-1), 1);
        assert!(pi_n_mod_map(&k2, &s, -1).is_err());
        let t = tensor_product(&s, &k2).unwrap();
        assert_eq!(t.homology_dim(2).unwrap(), 1);
        assert_eq!(t.homology_dim(5).unwrap(), 1);
        assert_eq!(t.homology_dim(3).unwrap(), 0);
    }

    #[test]
    fn cone_of_identity_is_acyclic() {
        let s = sample();
        let id = GradedMap::identity(&s);
        assert!(is_quasi_iso(&id, &s, &s, Window::new(-3, 4)).unwrap());
        let zero = GradedMap::zero_between(&s, &s, 0);
        assert!(!is_quasi_iso(&zero, &s, &s, Window::new(-3, 4)).unwrap());
    }

    #[test]
    fn induced_rank_of_identity() {
        let s = sample();
        let id = GradedMap::identity(&s);
        assert_eq!(id.induced_rank(&s, &s, 2).unwrap(), 1);
        assert_eq!(id.induced_rank(&s, &s, 0).unwrap(), 0);
    }
}
