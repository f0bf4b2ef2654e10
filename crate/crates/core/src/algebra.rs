//! DG algebras, DG bimodules and algebra maps given by structure constants
//! on ordered bases (degrees non-decreasing along the basis).

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::Zero;

use crate::complex::{ChainComplex, Window};
use crate::error::{DgaError, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::{Matrix, SparseVec};

/// Sparse bilinear table: `(i, j) ↦ e_i * e_j`, zero entries omitted.
pub type Table = HashMap<(usize, usize), SparseVec>;

fn bilinear(field: FieldSpec, table: &Table, a: &SparseVec, b: &SparseVec) -> SparseVec {
    let mut pairs = Vec::new();
    for (i, x) in a.iter() {
        for (j, y) in b.iter() {
            if let Some(p) = table.get(&(*i, *j)) {
                let c = field.mul(x, y);
                pairs.extend(p.iter().map(|(k, z)| (*k, field.mul(&c, z))));
            }
        }
    }
    SparseVec::from_pairs(field, pairs)
}

fn clean_table(field: FieldSpec, entries: impl IntoIterator<Item = ((usize, usize), SparseVec)>) -> Table {
    let mut t: Table = HashMap::new();
    for (k, v) in entries {
        let e = t.entry(k).or_default();
        *e = e.add(field, &v);
    }
    t.retain(|_, v| !v.is_zero());
    t
}

fn check_degrees(
    table: &Table,
    left: &[i32],
    right: &[i32],
    out: &[i32],
    what: &str,
) -> Result<()> {
    let mut keys: Vec<_> = table.keys().copied().collect();
    keys.sort_unstable();
    for (i, j) in keys {
        if i >= left.len() || j >= right.len() {
            return Err(DgaError::Validation(format!("{what}: index ({i}, {j}) out of range")));
        }
        for (k, _) in table[&(i, j)].iter() {
            if *k >= out.len() || out[*k] != left[i] + right[j] {
                return Err(DgaError::Validation(format!(
                    "{what}: product of basis elements {i} and {j} leaves degree {}",
                    left[i] + right[j]
                )));
            }
        }
    }
    Ok(())
}

/// DG algebra with an ordered basis. The unit is an arbitrary degree-0
/// vector; `unit_pivot` is a basis index where it has nonzero coefficient,
/// and the remaining indices form the basis of the augmentation-free
/// quotient `R / k·1` used by the normalized bar construction.
#[derive(Clone, Debug)]
pub struct DGAlgebra {
    complex: ChainComplex,
    degrees: Vec<i32>,
    d_images: Vec<SparseVec>,
    unit: SparseVec,
    unit_pivot: usize,
    mult: Table,
    labels: Vec<String>,
    weights: Vec<usize>,
}

impl DGAlgebra {
    /// Validates associativity, unit laws and the graded Leibniz rule on
    /// every basis pair/triple.
    pub fn new(
        field: FieldSpec,
        degrees: Vec<i32>,
        d_images: Vec<SparseVec>,
        unit: SparseVec,
        mult: impl IntoIterator<Item = ((usize, usize), SparseVec)>,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        let complex = ChainComplex::from_global(field, &degrees, &d_images)?;
        let mult = clean_table(field, mult);
        check_degrees(&mult, &degrees, &degrees, &degrees, "multiplication")?;
        let n = degrees.len();
        let labels = labels.unwrap_or_else(|| (0..n).map(|i| format!("e{i}")).collect());
        if labels.len() != n {
            return Err(DgaError::Validation("one label per basis element required".into()));
        }
        if unit.is_zero() || unit.iter().any(|(i, _)| *i >= n || degrees[*i] != 0) {
            return Err(DgaError::Validation("unit must be a nonzero degree-0 vector".into()));
        }
        let unit_pivot = unit.max_index().unwrap();
        let a = Self { complex, degrees, d_images, unit, unit_pivot, mult, labels, weights: vec![1; n] };
        a.validate()?;
        Ok(a)
    }

    fn validate(&self) -> Result<()> {
        let f = self.field();
        let n = self.dim();
        let name = |i: usize| self.labels[i].clone();
        for i in 0..n {
            let e = self.basis(i);
            if self.mul(&self.unit, &e) != e || self.mul(&e, &self.unit) != e {
                return Err(DgaError::Validation(format!("unit law fails on {}", name(i))));
            }
        }
        for i in 0..n {
            for j in 0..n {
                let ab = self.mul_basis(i, j);
                let lhs = self.d(&ab);
                let rhs = self
                    .mul(&self.d_images[i], &self.basis(j))
                    .add(f, &self.mul(&self.basis(i), &self.d_images[j]).scale(f, &f.sign(self.degrees[i] as i64)));
                if lhs != rhs {
                    return Err(DgaError::Validation(format!(
                        "Leibniz rule fails on ({}, {})",
                        name(i),
                        name(j)
                    )));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                let ij = self.mul_basis(i, j);
                for k in 0..n {
                    let lhs = self.mul(&ij, &self.basis(k));
                    let rhs = self.mul(&self.basis(i), &self.mul_basis(j, k));
                    if lhs != rhs {
                        return Err(DgaError::Validation(format!(
                            "associativity fails on ({}, {}, {})",
                            name(i),
                            name(j),
                            name(k)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn field(&self) -> FieldSpec {
        self.complex.field()
    }

    pub fn complex(&self) -> &ChainComplex {
        &self.complex
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn degree(&self, i: usize) -> i32 {
        self.degrees[i]
    }

    pub fn degrees(&self) -> &[i32] {
        &self.degrees
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> &SparseVec {
        &self.unit
    }

    /// Basis index omitted from the basis of `R / k·1`.
    pub fn unit_pivot(&self) -> usize {
        self.unit_pivot
    }

    pub fn table(&self) -> &Table {
        &self.mult
    }

    pub fn basis(&self, i: usize) -> SparseVec {
        SparseVec::unit(i, self.field().one())
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> SparseVec {
        self.mult.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn mul(&self, a: &SparseVec, b: &SparseVec) -> SparseVec {
        bilinear(self.field(), &self.mult, a, b)
    }

    /// Differential in global coordinates.
    pub fn d(&self, v: &SparseVec) -> SparseVec {
        let f = self.field();
        let mut pairs = Vec::new();
        for (i, c) in v.iter() {
            pairs.extend(self.d_images[*i].iter().map(|(k, z)| (*k, f.mul(c, z))));
        }
        SparseVec::from_pairs(f, pairs)
    }

    pub fn d_basis(&self, i: usize) -> &SparseVec {
        &self.d_images[i]
    }

    /// Indices of the basis of `R / k·1`, ascending.
    pub fn reduced_basis(&self) -> Vec<usize> {
        (0..self.dim()).filter(|i| *i != self.unit_pivot).collect()
    }

    /// Image of `v` in `R / k·1`, written on [`Self::reduced_basis`] indices.
    pub fn project_reduced(&self, v: &SparseVec) -> SparseVec {
        let c = v.get(self.unit_pivot);
        if c.is_zero() {
            return v.clone();
        }
        let f = self.field();
        let u = self.unit.get(self.unit_pivot);
        v.axpy(f, &f.neg(&f.mul(&c, &f.inv(&u))), &self.unit)
    }

    /// Truncation weight of each basis element (1 unless set).
    pub fn weights(&self) -> &[usize] {
        &self.weights
    }

    /// Degree range where this finite algebra agrees with the algebra it
    /// models (unbounded unless it is a truncation).
    pub fn complete_window(&self) -> Window {
        self.complex.exact_window()
    }

    pub fn is_truncation(&self) -> bool {
        !self.complex.exact_window().is_unbounded()
    }

    fn with_truncation(mut self, weights: Vec<usize>, complete: Window) -> Self {
        self.weights = weights;
        self.complex = self.complex.with_exact_window(complete);
        self
    }

    /// Support of the algebra as a degree window.
    pub fn support(&self) -> Window {
        self.complex.support().unwrap_or(Window::new(0, 0))
    }

    pub fn is_unit_basis(&self) -> bool {
        self.unit.nnz() == 1 && self.unit.get(self.unit_pivot) == self.field().one()
    }
}

impl DGAlgebra {
    /// True iff `d : S^{-1} → S^0` vanishes.
    pub fn is_strict(&self) -> bool {
        self.complex.diff_ref(-1).is_none()
    }

    fn require_degree_zero_cocycle(&self, x: &SparseVec) -> Result<()> {
        if x.iter().any(|(i, _)| *i >= self.dim() || self.degrees[*i] != 0) {
            return Err(DgaError::Precondition("element is not of degree 0".into()));
        }
        if !self.d(x).is_zero() {
            return Err(DgaError::Precondition("element is not a cocycle".into()));
        }
        Ok(())
    }

    /// Searches for a cocycle `y` with `xy - 1` and `yx - 1` boundaries by
    /// one linear system in `(y, a, b)`: `dy = 0`, `xy - da = 1`, `yx - db = 1`.
    pub fn is_homotopy_invertible(&self, x: &SparseVec) -> Result<Option<SparseVec>> {
        self.require_degree_zero_cocycle(x)?;
        let f = self.field();
        let n = self.dim();
        let zero: Vec<usize> = (0..n).filter(|i| self.degrees[*i] == 0).collect();
        let minus: Vec<usize> = (0..n).filter(|i| self.degrees[*i] == -1).collect();
        let mut columns = Vec::new();
        // rows: [dy | xy - da | yx - db], each block of global size n
        for &j in &zero {
            let e = self.basis(j);
            let col = self
                .d(&e)
                .add(f, &self.mul(x, &e).shifted(n))
                .add(f, &self.mul(&e, x).shifted(2 * n));
            columns.push(col);
        }
        let neg = f.from_i64(-1);
        for block in [1usize, 2] {
            for &j in &minus {
                columns.push(self.d(&self.basis(j)).scale(f, &neg).shifted(block * n));
            }
        }
        let m = Matrix::from_columns(f, 3 * n, &columns);
        let rhs = self.unit.shifted(n).add(f, &self.unit.shifted(2 * n));
        Ok(m.solve(f, &rhs).map(|sol| {
            SparseVec::from_pairs(
                f,
                sol.iter().filter(|(k, _)| *k < zero.len()).map(|(k, c)| (zero[*k], c.clone())),
            )
        }))
    }

    /// Searches for `y` with `xy = yx = 1` exactly.
    pub fn is_strictly_invertible(&self, x: &SparseVec) -> Result<Option<SparseVec>> {
        self.require_degree_zero_cocycle(x)?;
        let f = self.field();
        let n = self.dim();
        let zero: Vec<usize> = (0..n).filter(|i| self.degrees[*i] == 0).collect();
        let columns: Vec<SparseVec> = zero
            .iter()
            .map(|&j| {
                let e = self.basis(j);
                self.mul(x, &e).add(f, &self.mul(&e, x).shifted(n))
            })
            .collect();
        let m = Matrix::from_columns(f, 2 * n, &columns);
        let rhs = self.unit.add(f, &self.unit.shifted(n));
        Ok(m.solve(f, &rhs).map(|sol| {
            SparseVec::from_pairs(f, sol.iter().map(|(k, c)| (zero[*k], c.clone())))
        }))
    }

    /// True iff `H^n = 0` for every `n < 0`. The window must reach the
    /// bottom of the support.
    pub fn is_connective(&self, window: Window) -> Result<bool> {
        let sup = self.support();
        if sup.lo < 0 && sup.lo < window.lo {
            return Err(DgaError::Precondition(format!(
                "support starts in degree {} below the window [{}, {}]",
                sup.lo, window.lo, window.hi
            )));
        }
        if sup.lo >= 0 {
            return Ok(true);
        }
        let h = self.complex.homology(Window::new(sup.lo, -1))?;
        Ok(h.is_zero())
    }

    /// Algebra with the same basis and products `a ∘ b = (-1)^{|a||b|} b a`.
    pub fn opposite(&self) -> DGAlgebra {
        let f = self.field();
        let mult: Vec<_> = self
            .mult
            .iter()
            .map(|(&(i, j), v)| {
                let s = f.sign((self.degrees[i] * self.degrees[j]) as i64);
                ((j, i), v.scale(f, &s))
            })
            .collect();
        let mut out = self.clone();
        out.mult = clean_table(f, mult);
        out
    }

    /// `R ⊗ S` with `(r⊗s)(r'⊗s') = (-1)^{|s||r'|} rr' ⊗ ss'`.
    pub fn tensor(&self, other: &DGAlgebra) -> Result<DGAlgebra> {
        let f = self.field();
        let mut pairs: Vec<(i32, usize, usize)> = Vec::new();
        for i in 0..self.dim() {
            for j in 0..other.dim() {
                pairs.push((self.degrees[i] + other.degrees[j], i, j));
            }
        }
        pairs.sort_unstable();
        let index: HashMap<(usize, usize), usize> =
            pairs.iter().enumerate().map(|(k, &(_, i, j))| ((i, j), k)).collect();
        let embed = |a: &SparseVec, b: &SparseVec| -> SparseVec {
            let mut out = Vec::new();
            for (i, x) in a.iter() {
                for (j, y) in b.iter() {
                    out.push((index[&(*i, *j)], f.mul(x, y)));
                }
            }
            SparseVec::from_pairs(f, out)
        };
        let degrees: Vec<i32> = pairs.iter().map(|p| p.0).collect();
        let d_images: Vec<SparseVec> = pairs
            .iter()
            .map(|&(_, i, j)| {
                let s = f.sign(self.degrees[i] as i64);
                embed(&self.d_images[i], &other.basis(j))
                    .add(f, &embed(&self.basis(i), &other.d_images[j]).scale(f, &s))
            })
            .collect();
        let mut mult = Vec::new();
        for (&(i, i2), a) in &self.mult {
            for (&(j, j2), b) in &other.mult {
                let s = f.sign((other.degrees[j] * self.degrees[i2]) as i64);
                mult.push(((index[&(i, j)], index[&(i2, j2)]), embed(a, b).scale(f, &s)));
            }
        }
        let labels = pairs
            .iter()
            .map(|&(_, i, j)| format!("{}⊗{}", self.labels[i], other.labels[j]))
            .collect();
        DGAlgebra::new(f, degrees, d_images, embed(&self.unit, &other.unit), mult, Some(labels))
    }
}

/// Standard small algebras.
impl DGAlgebra {
    /// The ground field as a one-dimensional algebra.
    pub fn ground(field: FieldSpec) -> DGAlgebra {
        let one = field.one();
        DGAlgebra::new(
            field,
            vec![0],
            vec![SparseVec::new()],
            SparseVec::unit(0, one.clone()),
            [((0, 0), SparseVec::unit(0, one))],
            Some(vec!["1".into()]),
        )
        .unwrap()
    }

    /// `k ⊕ k·u` with `|u| = deg`, `u² = 0`, zero differential. Degree 0
    /// gives the dual numbers, degree −1 gives `k ⊕ Σk·u`.
    pub fn square_zero_class(field: FieldSpec, deg: i32) -> DGAlgebra {
        let one = field.one();
        let (degrees, unit, u) = if deg < 0 { (vec![deg, 0], 1, 0) } else { (vec![0, deg], 0, 1) };
        let mut labels = vec![String::new(); 2];
        labels[unit] = "1".into();
        labels[u] = if deg == 0 { "eps".into() } else { "u".into() };
        let e = |i: usize| SparseVec::unit(i, one.clone());
        let mult = vec![((unit, unit), e(unit)), ((unit, u), e(u)), ((u, unit), e(u))];
        DGAlgebra::new(field, degrees, vec![SparseVec::new(); 2], e(unit), mult, Some(labels)).unwrap()
    }

    /// `k[ε]/(ε²)` in degree 0.
    pub fn dual_numbers(field: FieldSpec) -> DGAlgebra {
        Self::square_zero_class(field, 0)
    }

    /// Full matrix algebra `M_n(k)`; basis `E_ij` in row-major order.
    pub fn matrix_algebra(field: FieldSpec, n: usize) -> DGAlgebra {
        Self::matrix_subalgebra(field, n, |_, _| true)
    }

    /// Upper triangular `n × n` matrices.
    pub fn upper_triangular(field: FieldSpec, n: usize) -> DGAlgebra {
        Self::matrix_subalgebra(field, n, |i, j| i <= j)
    }

    fn matrix_subalgebra(field: FieldSpec, n: usize, keep: impl Fn(usize, usize) -> bool) -> DGAlgebra {
        let one = field.one();
        let cells: Vec<(usize, usize)> =
            (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|&(i, j)| keep(i, j)).collect();
        let index: HashMap<(usize, usize), usize> = cells.iter().enumerate().map(|(k, c)| (*c, k)).collect();
        let mut mult = Vec::new();
        for (a, &(i, j)) in cells.iter().enumerate() {
            for (b, &(j2, l)) in cells.iter().enumerate() {
                if j == j2 {
                    mult.push(((a, b), SparseVec::unit(index[&(i, l)], one.clone())));
                }
            }
        }
        let unit = SparseVec::from_pairs(field, (0..n).map(|i| (index[&(i, i)], one.clone())));
        let labels = cells.iter().map(|(i, j)| format!("E{}{}", i + 1, j + 1)).collect();
        let dim = cells.len();
        DGAlgebra::new(field, vec![0; dim], vec![SparseVec::new(); dim], unit, mult, Some(labels)).unwrap()
    }

    /// `k ⊕ k·t ⊕ k·s` with `|t| = -1`, `dt = s`, all products of `t, s` zero.
    /// Acyclic apart from the unit and not strict.
    pub fn contractible_pair(field: FieldSpec) -> DGAlgebra {
        let one = field.one();
        let e = |i: usize| SparseVec::unit(i, one.clone());
        let mult = vec![((1, 1), e(1)), ((1, 0), e(0)), ((0, 1), e(0)), ((1, 2), e(2)), ((2, 1), e(2))];
        DGAlgebra::new(
            field,
            vec![-1, 0, 0],
            vec![e(2), SparseVec::new(), SparseVec::new()],
            e(1),
            mult,
            Some(vec!["t".into(), "1".into(), "s".into()]),
        )
        .unwrap()
    }
}

/// A word in the generators of a free algebra, as generator indices.
pub type Word = Vec<usize>;

impl DGAlgebra {
    /// `k⟨V⟩ / (words of length > max_len)` on generators `gens` (label,
    /// degree) with `d(v_i) = d_gens[i]` (combinations of nonempty words).
    /// Basis: words ordered by (degree, length, lex); weights are word
    /// lengths. When all generators have degrees of one sign the result is
    /// marked complete on the degrees where no word is cut off.
    pub fn truncated_free(
        field: FieldSpec,
        gens: &[(String, i32)],
        d_gens: &[Vec<(Word, Scalar)>],
        max_len: usize,
    ) -> Result<DGAlgebra> {
        if d_gens.len() != gens.len() {
            return Err(DgaError::Validation("one differential entry per generator required".into()));
        }
        let gdeg = |w: &[usize]| -> i32 { w.iter().map(|g| gens[*g].1).sum() };
        let mut words: Vec<Word> = vec![Vec::new()];
        let mut frontier: Vec<Word> = vec![Vec::new()];
        for _ in 0..max_len {
            let next: Vec<Word> = frontier
                .iter()
                .flat_map(|w| {
                    (0..gens.len()).map(move |g| {
                        let mut w2 = w.clone();
                        w2.push(g);
                        w2
                    })
                })
                .collect();
            words.extend(next.iter().cloned());
            frontier = next;
        }
        words.sort_by(|a, b| (gdeg(a), a.len(), a).cmp(&(gdeg(b), b.len(), b)));
        let index: HashMap<Word, usize> = words.iter().enumerate().map(|(k, w)| (w.clone(), k)).collect();
        for (g, terms) in d_gens.iter().enumerate() {
            for (w, _) in terms {
                if w.is_empty() || w.iter().any(|x| *x >= gens.len()) {
                    return Err(DgaError::Validation(format!(
                        "differential of generator {} must be a combination of nonempty words",
                        gens[g].0
                    )));
                }
                if gdeg(w) != gens[g].1 + 1 {
                    return Err(DgaError::Validation(format!(
                        "differential of generator {} is not homogeneous of degree {}",
                        gens[g].0,
                        gens[g].1 + 1
                    )));
                }
            }
        }
        let d_images: Vec<SparseVec> = words
            .iter()
            .map(|w| {
                let mut pairs = Vec::new();
                let mut prefix_deg = 0;
                for (pos, g) in w.iter().enumerate() {
                    let s = field.sign(prefix_deg as i64);
                    for (dw, c) in &d_gens[*g] {
                        let mut nw = w[..pos].to_vec();
                        nw.extend_from_slice(dw);
                        nw.extend_from_slice(&w[pos + 1..]);
                        if let Some(k) = index.get(&nw) {
                            pairs.push((*k, field.mul(&s, &field.reduce(c.clone()))));
                        }
                    }
                    prefix_deg += gens[*g].1;
                }
                SparseVec::from_pairs(field, pairs)
            })
            .collect();
        let one = field.one();
        let mut mult = Vec::new();
        for (a, wa) in words.iter().enumerate() {
            for (b, wb) in words.iter().enumerate() {
                if wa.len() + wb.len() <= max_len {
                    let mut w = wa.clone();
                    w.extend_from_slice(wb);
                    mult.push(((a, b), SparseVec::unit(index[&w], one.clone())));
                }
            }
        }
        let labels = words
            .iter()
            .map(|w| {
                if w.is_empty() {
                    "1".to_string()
                } else {
                    w.iter().map(|g| gens[*g].0.as_str()).collect::<Vec<_>>().join("")
                }
            })
            .collect();
        let degrees: Vec<i32> = words.iter().map(|w| gdeg(w)).collect();
        let weights: Vec<usize> = words.iter().map(|w| w.len()).collect();
        let unit = SparseVec::unit(index[&Vec::new()], one);
        let alg = DGAlgebra::new(field, degrees, d_images, unit, mult, Some(labels))?;
        let l = max_len as i32 + 1;
        let complete = if gens.is_empty() {
            Window::unbounded()
        } else if gens.iter().all(|g| g.1 > 0) {
            let m = gens.iter().map(|g| g.1).min().unwrap();
            Window::new(Window::unbounded().lo, l * m - 1)
        } else if gens.iter().all(|g| g.1 < 0) {
            let m = gens.iter().map(|g| g.1).max().unwrap();
            Window::new(l * m + 1, Window::unbounded().hi)
        } else {
            Window::new(1, 0)
        };
        Ok(alg.with_truncation(weights, complete))
    }

    /// `k⟨x⟩` with a single generator of degree `deg`, truncated at `max_len`.
    pub fn free_on_one(field: FieldSpec, deg: i32, max_len: usize) -> DGAlgebra {
        Self::truncated_free(field, &[("x".into(), deg)], &[Vec::new()], max_len).unwrap()
    }
}

/// DG `R–S`-bimodule with left action `(r, m) ↦ r·m` and right action
/// `(m, s) ↦ m·s` given by structure constants.
#[derive(Clone, Debug)]
pub struct DGBimodule {
    left: Arc<DGAlgebra>,
    right: Arc<DGAlgebra>,
    complex: ChainComplex,
    degrees: Vec<i32>,
    d_images: Vec<SparseVec>,
    lact: Table,
    ract: Table,
    labels: Vec<String>,
}

impl DGBimodule {
    /// Validates both actions: associativity, unit, compatibility and Leibniz.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        left: Arc<DGAlgebra>,
        right: Arc<DGAlgebra>,
        degrees: Vec<i32>,
        d_images: Vec<SparseVec>,
        lact: impl IntoIterator<Item = ((usize, usize), SparseVec)>,
        ract: impl IntoIterator<Item = ((usize, usize), SparseVec)>,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        let f = left.field();
        if right.field() != f {
            return Err(DgaError::Validation("acting algebras over different fields".into()));
        }
        let complex = ChainComplex::from_global(f, &degrees, &d_images)?;
        let lact = clean_table(f, lact);
        let ract = clean_table(f, ract);
        check_degrees(&lact, left.degrees(), &degrees, &degrees, "left action")?;
        check_degrees(&ract, &degrees, right.degrees(), &degrees, "right action")?;
        let n = degrees.len();
        let labels = labels.unwrap_or_else(|| (0..n).map(|i| format!("m{i}")).collect());
        if labels.len() != n {
            return Err(DgaError::Validation("one label per basis element required".into()));
        }
        let m = Self { left, right, complex, degrees, d_images, lact, ract, labels };
        m.validate()?;
        Ok(m)
    }

    fn validate(&self) -> Result<()> {
        let f = self.field();
        let (r, s) = (&*self.left, &*self.right);
        let name = |i: usize| self.labels[i].clone();
        for i in 0..self.dim() {
            let e = self.basis(i);
            if self.act_left(r.unit(), &e) != e {
                return Err(DgaError::Validation(format!("left unit law fails on {}", name(i))));
            }
            if self.act_right(&e, s.unit()) != e {
                return Err(DgaError::Validation(format!("right unit law fails on {}", name(i))));
            }
        }
        for m in 0..self.dim() {
            let em = self.basis(m);
            let dm = &self.d_images[m];
            for a in 0..r.dim() {
                let ea = r.basis(a);
                let am = self.act_left(&ea, &em);
                let rhs = self
                    .act_left(r.d_basis(a), &em)
                    .add(f, &self.act_left(&ea, dm).scale(f, &f.sign(r.degree(a) as i64)));
                if self.d(&am) != rhs {
                    return Err(DgaError::Validation(format!(
                        "left Leibniz rule fails on ({}, {})",
                        r.labels()[a],
                        name(m)
                    )));
                }
                for b in 0..r.dim() {
                    let lhs = self.act_left(&r.mul_basis(a, b), &em);
                    let rhs = self.act_left(&ea, &self.act_left(&r.basis(b), &em));
                    if lhs != rhs {
                        return Err(DgaError::Validation(format!(
                            "left associativity fails on ({}, {}, {})",
                            r.labels()[a],
                            r.labels()[b],
                            name(m)
                        )));
                    }
                }
                for c in 0..s.dim() {
                    let ec = s.basis(c);
                    if self.act_right(&am, &ec) != self.act_left(&ea, &self.act_right(&em, &ec)) {
                        return Err(DgaError::Validation(format!(
                            "actions do not commute on ({}, {}, {})",
                            r.labels()[a],
                            name(m),
                            s.labels()[c]
                        )));
                    }
                }
            }
            for c in 0..s.dim() {
                let ec = s.basis(c);
                let mc = self.act_right(&em, &ec);
                let rhs = self
                    .act_right(dm, &ec)
                    .add(f, &self.act_right(&em, s.d_basis(c)).scale(f, &f.sign(self.degrees[m] as i64)));
                if self.d(&mc) != rhs {
                    return Err(DgaError::Validation(format!(
                        "right Leibniz rule fails on ({}, {})",
                        name(m),
                        s.labels()[c]
                    )));
                }
                for c2 in 0..s.dim() {
                    let lhs = self.act_right(&mc, &s.basis(c2));
                    let rhs = self.act_right(&em, &s.mul_basis(c, c2));
                    if lhs != rhs {
                        return Err(DgaError::Validation(format!(
                            "right associativity fails on ({}, {}, {})",
                            name(m),
                            s.labels()[c],
                            s.labels()[c2]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn field(&self) -> FieldSpec {
        self.complex.field()
    }

    pub fn left(&self) -> &Arc<DGAlgebra> {
        &self.left
    }

    pub fn right(&self) -> &Arc<DGAlgebra> {
        &self.right
    }

    pub fn complex(&self) -> &ChainComplex {
        &self.complex
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn degree(&self, i: usize) -> i32 {
        self.degrees[i]
    }

    pub fn degrees(&self) -> &[i32] {
        &self.degrees
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn basis(&self, i: usize) -> SparseVec {
        SparseVec::unit(i, self.field().one())
    }

    pub fn d(&self, v: &SparseVec) -> SparseVec {
        let f = self.field();
        let mut pairs = Vec::new();
        for (i, c) in v.iter() {
            pairs.extend(self.d_images[*i].iter().map(|(k, z)| (*k, f.mul(c, z))));
        }
        SparseVec::from_pairs(f, pairs)
    }

    pub fn d_basis(&self, i: usize) -> &SparseVec {
        &self.d_images[i]
    }

    pub fn act_left(&self, r: &SparseVec, m: &SparseVec) -> SparseVec {
        bilinear(self.field(), &self.lact, r, m)
    }

    pub fn act_right(&self, m: &SparseVec, s: &SparseVec) -> SparseVec {
        bilinear(self.field(), &self.ract, m, s)
    }

    pub fn left_table(&self) -> &Table {
        &self.lact
    }

    pub fn right_table(&self) -> &Table {
        &self.ract
    }

    /// Degree range where the underlying complex is certified.
    pub fn complete_window(&self) -> Window {
        self.complex.exact_window()
    }

    pub fn is_truncation(&self) -> bool {
        !self.complete_window().is_unbounded()
    }

    /// `R` as a bimodule over itself.
    pub fn regular(r: &Arc<DGAlgebra>) -> DGBimodule {
        let t: Vec<_> = r.table().iter().map(|(k, v)| (*k, v.clone())).collect();
        let mut m = DGBimodule::new(
            r.clone(),
            r.clone(),
            r.degrees().to_vec(),
            r.d_images.clone(),
            t.clone(),
            t,
            Some(r.labels().to_vec()),
        )
        .expect("regular bimodule of a valid algebra");
        m.complex = m.complex.with_exact_window(r.complete_window());
        m
    }

    /// Replaces the acting algebras through algebra maps `φ_L : R' → R`,
    /// `φ_R : S' → S`: `r'·m = φ_L(r')·m`, `m·s' = m·φ_R(s')`.
    pub fn restrict(&self, left: Option<&AlgebraMap>, right: Option<&AlgebraMap>) -> Result<DGBimodule> {
        let f = self.field();
        let pull = |table: &Table, map: &AlgebraMap, on_left: bool, n_mod: usize| -> Vec<((usize, usize), SparseVec)> {
            let mut out = Vec::new();
            for a in 0..map.source().dim() {
                let img = map.apply(&map.source().basis(a));
                for m in 0..n_mod {
                    let em = SparseVec::unit(m, f.one());
                    let v = if on_left { bilinear(f, table, &img, &em) } else { bilinear(f, table, &em, &img) };
                    if !v.is_zero() {
                        out.push((if on_left { (a, m) } else { (m, a) }, v));
                    }
                }
            }
            out
        };
        let n = self.dim();
        let (l_alg, lact) = match left {
            Some(phi) => {
                if !Arc::ptr_eq(phi.target(), &self.left) && phi.target().labels() != self.left.labels() {
                    return Err(DgaError::Precondition("left map does not land in the acting algebra".into()));
                }
                (phi.source().clone(), pull(&self.lact, phi, true, n))
            }
            None => (self.left.clone(), self.lact.iter().map(|(k, v)| (*k, v.clone())).collect()),
        };
        let (r_alg, ract) = match right {
            Some(phi) => {
                if !Arc::ptr_eq(phi.target(), &self.right) && phi.target().labels() != self.right.labels() {
                    return Err(DgaError::Precondition("right map does not land in the acting algebra".into()));
                }
                (phi.source().clone(), pull(&self.ract, phi, false, n))
            }
            None => (self.right.clone(), self.ract.iter().map(|(k, v)| (*k, v.clone())).collect()),
        };
        let mut out = DGBimodule::new(
            l_alg,
            r_alg,
            self.degrees.clone(),
            self.d_images.clone(),
            lact,
            ract,
            Some(self.labels.clone()),
        )?;
        out.complex = out.complex.with_exact_window(self.complete_window());
        Ok(out)
    }

    /// `Σ^m M`: same basis placed in degree `n - m`, differential times
    /// `(-1)^m`, left action twisted by `(-1)^{m|r|}`.
    pub fn suspend(&self, m: i32) -> DGBimodule {
        let f = self.field();
        let s = f.sign(m as i64);
        let lact: Vec<_> = self
            .lact
            .iter()
            .map(|(&(a, x), v)| ((a, x), v.scale(f, &f.sign((m * self.left.degree(a)) as i64))))
            .collect();
        let mut out = DGBimodule::new(
            self.left.clone(),
            self.right.clone(),
            self.degrees.iter().map(|d| d - m).collect(),
            self.d_images.iter().map(|v| v.scale(f, &s)).collect(),
            lact,
            self.ract.iter().map(|(k, v)| (*k, v.clone())).collect::<Vec<_>>(),
            Some(self.labels.clone()),
        )
        .expect("suspension of a valid bimodule");
        out.complex = out.complex.with_exact_window(self.complete_window().shift(-m));
        out
    }

    /// A complex of vector spaces as a `k–k`-bimodule.
    pub fn over_ground(
        field: FieldSpec,
        degrees: Vec<i32>,
        d_images: Vec<SparseVec>,
        labels: Option<Vec<String>>,
    ) -> Result<DGBimodule> {
        let k = Arc::new(DGAlgebra::ground(field));
        let n = degrees.len();
        let act: Vec<_> = (0..n).map(|m| SparseVec::unit(m, field.one())).collect();
        DGBimodule::new(
            k.clone(),
            k,
            degrees,
            d_images,
            act.iter().enumerate().map(|(m, v)| ((0, m), v.clone())).collect::<Vec<_>>(),
            act.iter().enumerate().map(|(m, v)| ((m, 0), v.clone())).collect::<Vec<_>>(),
            labels,
        )
    }

    /// The free bimodule `R ⊗ S` with `d(r⊗s) = dr⊗s + (-1)^{|r|} r⊗ds`.
    pub fn free(r: &Arc<DGAlgebra>, s: &Arc<DGAlgebra>) -> Result<DGBimodule> {
        let f = r.field();
        let mut order: Vec<(i32, usize, usize)> = Vec::new();
        for i in 0..r.dim() {
            for j in 0..s.dim() {
                order.push((r.degree(i) + s.degree(j), i, j));
            }
        }
        order.sort_unstable();
        let pos: HashMap<(usize, usize), usize> = order.iter().enumerate().map(|(k, o)| ((o.1, o.2), k)).collect();
        let tensor = |a: &SparseVec, b: &SparseVec| -> SparseVec {
            let mut pairs = Vec::new();
            for (i, x) in a.iter() {
                for (j, y) in b.iter() {
                    pairs.push((pos[&(*i, *j)], f.mul(x, y)));
                }
            }
            SparseVec::from_pairs(f, pairs)
        };
        let degrees = order.iter().map(|o| o.0).collect();
        let d_images = order
            .iter()
            .map(|&(_, i, j)| {
                let sg = f.sign(r.degree(i) as i64);
                tensor(r.d_basis(i), &s.basis(j)).add(f, &tensor(&r.basis(i), s.d_basis(j)).scale(f, &sg))
            })
            .collect();
        let mut lact = Vec::new();
        let mut ract = Vec::new();
        for &(_, i, j) in &order {
            for a in 0..r.dim() {
                lact.push(((a, pos[&(i, j)]), tensor(&r.mul_basis(a, i), &s.basis(j))));
            }
            for b in 0..s.dim() {
                ract.push(((pos[&(i, j)], b), tensor(&r.basis(i), &s.mul_basis(j, b))));
            }
        }
        let labels = order.iter().map(|&(_, i, j)| format!("{}⊗{}", r.labels()[i], s.labels()[j])).collect();
        let mut out = DGBimodule::new(r.clone(), s.clone(), degrees, d_images, lact, ract, Some(labels))?;
        out.complex = out.complex.with_exact_window(r.complete_window().intersect(&s.complete_window()));
        Ok(out)
    }

    /// `cone(id_M) = ΣM ⊕ M` with `d(σx, y) = (-σdx, x + dy)`; contractible.
    pub fn cone_of_identity(&self) -> Result<DGBimodule> {
        let f = self.field();
        let n = self.dim();
        let mut order: Vec<(i32, usize, usize)> = Vec::new();
        for i in 0..n {
            order.push((self.degrees[i] - 1, 0, i));
            order.push((self.degrees[i], 1, i));
        }
        order.sort_unstable();
        let mut pos = [vec![0; n], vec![0; n]];
        for (k, &(_, s, i)) in order.iter().enumerate() {
            pos[s][i] = k;
        }
        let embed = |s: usize, v: &SparseVec| v.map_indices(f, |i| pos[s][i]);
        let neg = f.from_i64(-1);
        let degrees = order.iter().map(|o| o.0).collect();
        let d_images = order
            .iter()
            .map(|&(_, s, i)| {
                let di = embed(s, &self.d_images[i]);
                if s == 0 {
                    di.scale(f, &neg).add(f, &SparseVec::unit(pos[1][i], f.one()))
                } else {
                    di
                }
            })
            .collect();
        let mut lact = Vec::new();
        let mut ract = Vec::new();
        for s in 0..2 {
            for (&(a, x), v) in &self.lact {
                let sg = if s == 0 { f.sign(self.left.degree(a) as i64) } else { f.one() };
                lact.push(((a, pos[s][x]), embed(s, v).scale(f, &sg)));
            }
            for (&(x, b), v) in &self.ract {
                ract.push(((pos[s][x], b), embed(s, v)));
            }
        }
        let labels = order
            .iter()
            .map(|&(_, s, i)| if s == 0 { format!("σ{}", self.labels[i]) } else { self.labels[i].clone() })
            .collect();
        let mut out = DGBimodule::new(self.left.clone(), self.right.clone(), degrees, d_images, lact, ract, Some(labels))?;
        out.complex = out.complex.with_exact_window(self.complete_window().shift(-1).intersect(&self.complete_window()));
        Ok(out)
    }

    fn sum_order(&self, other: &DGBimodule) -> Vec<(i32, usize, usize)> {
        let mut order: Vec<(i32, usize, usize)> = Vec::new();
        for i in 0..self.dim() {
            order.push((self.degrees[i], 0, i));
        }
        for i in 0..other.dim() {
            order.push((other.degrees[i], 1, i));
        }
        order.sort_unstable();
        order
    }

    /// Positions of the two summands' basis elements inside `direct_sum`.
    pub fn sum_embedding(&self, other: &DGBimodule) -> [Vec<usize>; 2] {
        let mut pos = [vec![0; self.dim()], vec![0; other.dim()]];
        for (k, &(_, s, i)) in self.sum_order(other).iter().enumerate() {
            pos[s][i] = k;
        }
        pos
    }

    /// `M ⊕ N`, basis re-sorted by degree (stable, `M` first within a degree).
    pub fn direct_sum(&self, other: &DGBimodule) -> Result<DGBimodule> {
        let f = self.field();
        let order = self.sum_order(other);
        let pos = self.sum_embedding(other);
        let embed = |s: usize, v: &SparseVec| v.map_indices(f, |i| pos[s][i]);
        let parts = [self, other];
        let degrees = order.iter().map(|o| o.0).collect();
        let d_images = order.iter().map(|&(_, s, i)| embed(s, &parts[s].d_images[i])).collect();
        let mut lact = Vec::new();
        let mut ract = Vec::new();
        for (s, p) in parts.iter().enumerate() {
            lact.extend(p.lact.iter().map(|(&(a, x), v)| ((a, pos[s][x]), embed(s, v))));
            ract.extend(p.ract.iter().map(|(&(x, b), v)| ((pos[s][x], b), embed(s, v))));
        }
        let labels = order.iter().map(|&(_, s, i)| format!("{}{}", parts[s].labels[i], if s == 0 { "" } else { "'" })).collect();
        let mut out = DGBimodule::new(self.left.clone(), self.right.clone(), degrees, d_images, lact, ract, Some(labels))?;
        out.complex = out
            .complex
            .with_exact_window(self.complete_window().intersect(&other.complete_window()));
        Ok(out)
    }
}

/// Bimodule with a base point `1 ∈ X^0`, a cocycle.
#[derive(Clone, Debug)]
pub struct PointedBimodule {
    pub module: DGBimodule,
    pub point: SparseVec,
}

impl PointedBimodule {
    pub fn new(module: DGBimodule, point: SparseVec) -> Result<Self> {
        if point.iter().any(|(i, _)| *i >= module.dim() || module.degree(*i) != 0) {
            return Err(DgaError::Validation("point must lie in degree 0".into()));
        }
        if !module.d(&point).is_zero() {
            return Err(DgaError::Validation("point must be a cocycle".into()));
        }
        Ok(Self { module, point })
    }

    /// An algebra as a pointed bimodule over itself, pointed by its unit.
    pub fn from_algebra(a: &Arc<DGAlgebra>) -> Self {
        let m = DGBimodule::regular(a);
        Self { point: a.unit().clone(), module: m }
    }
}

/// Degree-0 multiplicative unital chain map between algebras, as a matrix
/// on global bases (rows: target).
#[derive(Clone, Debug)]
pub struct AlgebraMap {
    source: Arc<DGAlgebra>,
    target: Arc<DGAlgebra>,
    matrix: Matrix,
}

impl AlgebraMap {
    /// `images[i]` is the image of source basis element `i`.
    pub fn new(source: Arc<DGAlgebra>, target: Arc<DGAlgebra>, images: Vec<SparseVec>) -> Result<Self> {
        let f = source.field();
        if images.len() != source.dim() {
            return Err(DgaError::Validation("one image per source basis element required".into()));
        }
        for (i, img) in images.iter().enumerate() {
            if img.iter().any(|(k, _)| *k >= target.dim() || target.degree(*k) != source.degree(i)) {
                return Err(DgaError::Validation(format!(
                    "image of {} is not of degree {}",
                    source.labels()[i],
                    source.degree(i)
                )));
            }
        }
        let matrix = Matrix::from_columns(f, target.dim(), &images);
        let map = Self { source, target, matrix };
        map.validate()?;
        Ok(map)
    }

    fn validate(&self) -> Result<()> {
        let (s, t) = (&*self.source, &*self.target);
        if self.apply(s.unit()) != *t.unit() {
            return Err(DgaError::Validation("map does not preserve the unit".into()));
        }
        for i in 0..s.dim() {
            let ei = s.basis(i);
            if self.apply(&s.d(&ei)) != t.d(&self.apply(&ei)) {
                return Err(DgaError::Validation(format!("map does not commute with d on {}", s.labels()[i])));
            }
            for j in 0..s.dim() {
                if self.apply(&s.mul_basis(i, j)) != t.mul(&self.apply(&ei), &self.apply(&s.basis(j))) {
                    return Err(DgaError::Validation(format!(
                        "map is not multiplicative on ({}, {})",
                        s.labels()[i],
                        s.labels()[j]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn identity(a: &Arc<DGAlgebra>) -> Self {
        let images = (0..a.dim()).map(|i| a.basis(i)).collect();
        Self::new(a.clone(), a.clone(), images).expect("identity map")
    }

    /// The unit map `k → S`.
    pub fn unit_map(s: &Arc<DGAlgebra>) -> Self {
        let k = Arc::new(DGAlgebra::ground(s.field()));
        Self::new(k, s.clone(), vec![s.unit().clone()]).expect("unit map")
    }

    pub fn source(&self) -> &Arc<DGAlgebra> {
        &self.source
    }

    pub fn target(&self) -> &Arc<DGAlgebra> {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        self.matrix.apply(self.source.field(), v)
    }

    pub fn compose(&self, first: &AlgebraMap) -> Result<AlgebraMap> {
        let images = (0..first.source.dim()).map(|i| self.apply(&first.apply(&first.source.basis(i)))).collect();
        AlgebraMap::new(first.source.clone(), self.target.clone(), images)
    }
}

/// `R ⊕ M` with `(r, m)(r', m') = (rr', r·m' + m·r')`.
pub fn square_zero_extension(r: &Arc<DGAlgebra>, m: &DGBimodule) -> Result<DGAlgebra> {
    if !Arc::ptr_eq(m.left(), r) && m.left().labels() != r.labels() {
        return Err(DgaError::Precondition("bimodule is not over the given algebra".into()));
    }
    let f = r.field();
    let mut order: Vec<(i32, usize, usize)> = Vec::new();
    for i in 0..r.dim() {
        order.push((r.degree(i), 0, i));
    }
    for i in 0..m.dim() {
        order.push((m.degree(i), 1, i));
    }
    order.sort_unstable();
    let mut pos = [vec![0; r.dim()], vec![0; m.dim()]];
    for (k, &(_, s, i)) in order.iter().enumerate() {
        pos[s][i] = k;
    }
    let emb = |s: usize, v: &SparseVec| v.map_indices(f, |i| pos[s][i]);
    let degrees = order.iter().map(|o| o.0).collect();
    let d_images = order
        .iter()
        .map(|&(_, s, i)| if s == 0 { emb(0, r.d_basis(i)) } else { emb(1, m.d_basis(i)) })
        .collect();
    let mut mult = Vec::new();
    mult.extend(r.table().iter().map(|(&(a, b), v)| ((pos[0][a], pos[0][b]), emb(0, v))));
    mult.extend(m.left_table().iter().map(|(&(a, x), v)| ((pos[0][a], pos[1][x]), emb(1, v))));
    mult.extend(m.right_table().iter().map(|(&(x, b), v)| ((pos[1][x], pos[0][b]), emb(1, v))));
    let labels = order
        .iter()
        .map(|&(_, s, i)| if s == 0 { r.labels()[i].clone() } else { format!("[{}]", m.labels()[i]) })
        .collect();
    let out = DGAlgebra::new(f, degrees, d_images, emb(0, r.unit()), mult, Some(labels))?;
    let complete = r.complete_window().intersect(&m.complete_window());
    let mut weights = vec![1; out.dim()];
    for (k, &(_, s, i)) in order.iter().enumerate() {
        weights[k] = if s == 0 { r.weights()[i] } else { 1 };
    }
    Ok(out.with_truncation(weights, complete))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn v(pairs: &[(usize, i64)]) -> SparseVec {
        SparseVec::from_pairs(q(), pairs.iter().map(|(i, c)| (*i, q().from_i64(*c))))
    }

    #[test]
    fn reports_failing_associativity_triple() {
        // basis 1, a, b in degree 0 with a·a = b but a·b = 0 ≠ b·a = b
        let mult = vec![
            ((0, 0), v(&[(0, 1)])),
            ((0, 1), v(&[(1, 1)])),
            ((1, 0), v(&[(1, 1)])),
            ((0, 2), v(&[(2, 1)])),
            ((2, 0), v(&[(2, 1)])),
            ((1, 1), v(&[(2, 1)])),
            ((2, 1), v(&[(2, 1)])),
        ];
        let err = DGAlgebra::new(q(), vec![0; 3], vec![SparseVec::new(); 3], v(&[(0, 1)]), mult, None).unwrap_err();
        assert!(matches!(err, DgaError::Validation(ref s) if s.contains("associativity fails on (e1, e1, e1)")), "{err}");
    }

    #[test]
    fn small_algebras_validate() {
        assert_eq!(DGAlgebra::ground(q()).dim(), 1);
        assert_eq!(DGAlgebra::matrix_algebra(q(), 2).dim(), 4);
        assert_eq!(DGAlgebra::upper_triangular(FieldSpec::Prime(2), 2).dim(), 3);
        let a = DGAlgebra::free_on_one(q(), 2, 4);
        assert_eq!(a.dim(), 5);
        assert_eq!(a.complete_window().hi, 9);
        let t = DGAlgebra::dual_numbers(q()).tensor(&DGAlgebra::square_zero_class(q(), -1)).unwrap();
        assert_eq!(t.dim(), 4);
    }

    #[test]
    fn strictness_and_connectivity() {
        let w = Window::new(-3, 3);
        assert!(DGAlgebra::dual_numbers(q()).is_strict());
        let su = DGAlgebra::square_zero_class(q(), -1);
        assert!(su.is_strict());
        assert!(!su.is_connective(w).unwrap());
        assert!(DGAlgebra::square_zero_class(q(), 1).is_connective(w).unwrap());
        let c = DGAlgebra::contractible_pair(q());
        assert!(!c.is_strict());
        assert!(c.is_connective(w).unwrap());
        assert!(su.is_connective(Window::new(0, 3)).is_err());
    }

    #[test]
    fn invertibility_in_dual_numbers() {
        let a = DGAlgebra::dual_numbers(q());
        let y = a.is_homotopy_invertible(&v(&[(0, 1), (1, 1)])).unwrap().unwrap();
        assert_eq!(y, v(&[(0, 1), (1, -1)]));
        assert!(a.is_homotopy_invertible(&v(&[(1, 1)])).unwrap().is_none());
        assert_eq!(a.is_homotopy_invertible(a.unit()).unwrap().unwrap(), *a.unit());
        assert!(a.is_homotopy_invertible(&SparseVec::new()).unwrap().is_none());
    }

    #[test]
    fn homotopy_inverse_in_non_strict_algebra() {
        // in k ⊕ k·t ⊕ k·s with dt = s, s is a boundary, so 1 + s is
        // homotopy invertible with inverse 1
        let a = DGAlgebra::contractible_pair(q());
        let x = v(&[(1, 1), (2, 1)]);
        assert!(a.is_homotopy_invertible(&x).unwrap().is_some());
        assert!(a.is_strictly_invertible(&x).unwrap().is_some());
        assert!(a.is_homotopy_invertible(&v(&[(2, 1)])).unwrap().is_none());
        assert!(a.is_homotopy_invertible(&v(&[(0, 1)])).is_err());
    }

    #[test]
    fn square_zero_of_ground_is_dual_numbers() {
        let k = Arc::new(DGAlgebra::ground(q()));
        let m = DGBimodule::regular(&k);
        let e = square_zero_extension(&k, &m).unwrap();
        assert_eq!(e.dim(), 2);
        assert!(e.mul_basis(1, 1).is_zero());
        assert_eq!(e.mul_basis(0, 1), v(&[(1, 1)]));
    }

    #[test]
    fn restriction_along_projection_kills_epsilon() {
        let r = Arc::new(DGAlgebra::dual_numbers(q()));
        let k = Arc::new(DGAlgebra::ground(q()));
        let proj = AlgebraMap::new(r.clone(), k.clone(), vec![v(&[(0, 1)]), SparseVec::new()]).unwrap();
        let m = DGBimodule::regular(&k).restrict(Some(&proj), Some(&proj)).unwrap();
        assert!(m.act_left(&v(&[(1, 1)]), &v(&[(0, 1)])).is_zero());
        let id = AlgebraMap::identity(&r);
        let reg = DGBimodule::regular(&r).restrict(Some(&id), Some(&id)).unwrap();
        assert_eq!(reg.left_table(), DGBimodule::regular(&r).left_table());
    }

    #[test]
    fn non_multiplicative_map_rejected() {
        let r = Arc::new(DGAlgebra::dual_numbers(q()));
        let bad = AlgebraMap::new(r.clone(), r.clone(), vec![v(&[(0, 1)]), v(&[(0, 1)])]);
        assert!(bad.is_err());
    }

    #[test]
    fn suspended_bimodule_is_valid() {
        let r = Arc::new(DGAlgebra::square_zero_class(q(), -1));
        let m = DGBimodule::regular(&r);
        for s in -2..=2 {
            let sm = m.suspend(s);
            assert_eq!(sm.complex().dims().keys().copied().min(), Some(-1 - s));
        }
        assert_eq!(m.direct_sum(&m).unwrap().dim(), 4);
    }
}
