//! Normalized bar constructions and bar cochain complexes: Hochschild
//! cohomology `HH^n(R, M)`, `Ext^n_R(N, M)`, the positive-length subcomplex
//! computing `Der`, and the edge map to `H^n(M)`.
//!
//! Conventions. A bar element is `r[a1|…|as]x` with letters `a_i` in the
//! complement of the unit line; letter `a` has shifted degree `|a| - 1` and
//! `e_i = |r| + Σ_{j≤i} (|a_j| - 1)`. The differential is
//!
//! ```text
//! d r[w]x = dr[w]x - Σ (-1)^{e_{i-1}} r[..|da_i|..]x + (-1)^{e_s} r[w]dx
//!         + (-1)^{|r|} ra_1[a_2|..]x + Σ_{0<i<s} (-1)^{e_i} r[..|a_i a_{i+1}|..]x
//!         - (-1)^{e_{s-1}} r[a_1|..|a_{s-1}]a_s x
//! ```
//!
//! A cochain of total degree `n` is a degree-`n` map `F` of bimodules
//! (`F(r y) = (-1)^{n|r|} r F(y)`) with `δF = d F - (-1)^n F d`; it is
//! determined by its values on `1[w]1` (or `1[w]x`).

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_traits::Zero;
use serde::Serialize;

use crate::algebra::{DGAlgebra, DGBimodule};
use crate::complex::{ChainComplex, Window};
use crate::error::{DgaError, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::{Matrix, SparseVec};

/// How a computed group relates to the untruncated object. Serialized as
/// its label, e.g. `"STABILIZED(8)"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    /// Finite column range certified by degree bounds.
    Exact,
    /// Agreement between cutoffs `N` and `N + 1`.
    Stabilized(usize),
    /// No agreement between cutoffs `N` and `N + 1`.
    Unstable(usize),
}

impl Serialize for Status {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.label())
    }
}

impl Status {
    pub fn is_determined(&self) -> bool {
        !matches!(self, Status::Unstable(_))
    }

    pub fn label(&self) -> String {
        match self {
            Status::Exact => "EXACT".into(),
            Status::Stabilized(n) => format!("STABILIZED({n})"),
            Status::Unstable(n) => format!("UNSTABLE({n})"),
        }
    }

    /// Weakest of two statuses (used when combining groups).
    pub fn meet(self, other: Status) -> Status {
        match (self, other) {
            (Status::Unstable(a), _) | (_, Status::Unstable(a)) => Status::Unstable(a),
            (Status::Stabilized(a), Status::Stabilized(b)) => Status::Stabilized(a.max(b)),
            (Status::Stabilized(a), _) | (_, Status::Stabilized(a)) => Status::Stabilized(a),
            _ => Status::Exact,
        }
    }
}

/// One cohomology group with its certification status.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyGroup {
    pub degree: i32,
    pub dim: usize,
    pub representatives: Vec<SparseVec>,
    pub labels: Vec<String>,
    pub status: Status,
}

/// Letters of the normalized bar construction: basis elements of `R`
/// other than the unit pivot, with the tables needed to run the
/// differential backwards.
#[derive(Clone, Debug)]
pub(crate) struct Letters {
    pub basis: Vec<usize>,
    pub of_basis: HashMap<usize, usize>,
    pub shifted: Vec<i32>,
    pub weight: Vec<usize>,
    /// `dpre[a]`: letters `b` with coefficient `c` of `a` in `d̄b`.
    pub dpre: Vec<Vec<(usize, Scalar)>>,
    /// `mpre[a]`: letter pairs `(b, b')` with coefficient `c` of `a` in `\overline{bb'}`.
    pub mpre: Vec<Vec<(usize, usize, Scalar)>>,
}

impl Letters {
    pub fn new(r: &DGAlgebra) -> Self {
        let basis = r.reduced_basis();
        let of_basis: HashMap<usize, usize> = basis.iter().enumerate().map(|(k, b)| (*b, k)).collect();
        let shifted = basis.iter().map(|b| r.degree(*b) - 1).collect();
        let weight = basis.iter().map(|b| r.weights()[*b].max(1)).collect();
        let n = basis.len();
        let mut dpre = vec![Vec::new(); n];
        let mut mpre = vec![Vec::new(); n];
        for (lb, &b) in basis.iter().enumerate() {
            for (k, c) in r.project_reduced(r.d_basis(b)).iter() {
                dpre[of_basis[k]].push((lb, c.clone()));
            }
            for (lb2, &b2) in basis.iter().enumerate() {
                for (k, c) in r.project_reduced(&r.mul_basis(b, b2)).iter() {
                    mpre[of_basis[k]].push((lb, lb2, c.clone()));
                }
            }
        }
        Self { basis, of_basis, shifted, weight, dpre, mpre }
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn shifted_degree(&self, w: &[usize]) -> i32 {
        w.iter().map(|a| self.shifted[*a]).sum()
    }

    pub fn word_weight(&self, w: &[usize]) -> usize {
        w.iter().map(|a| self.weight[*a]).sum()
    }

    /// Bounds on shifted letter degrees.
    pub fn shifted_range(&self) -> Option<(i32, i32)> {
        let lo = *self.shifted.iter().min()?;
        let hi = *self.shifted.iter().max()?;
        Some((lo, hi))
    }

    /// Checks that the differential and products never raise weight, so that
    /// weight truncation of cochains is a quotient complex.
    pub fn check_weight_filtration(&self) -> Result<()> {
        for (a, pre) in self.dpre.iter().enumerate() {
            for (b, _) in pre {
                if self.weight[a] > self.weight[*b] {
                    return Err(DgaError::Scope(
                        "differential raises word weight; weight truncation unavailable".into(),
                    ));
                }
            }
        }
        for (a, pre) in self.mpre.iter().enumerate() {
            for (b, b2, _) in pre {
                if self.weight[a] > self.weight[*b] + self.weight[*b2] {
                    return Err(DgaError::Scope(
                        "product raises word weight; weight truncation unavailable".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Words with `min_len ≤ length`, bounded by `max_len` and/or
    /// `max_weight`, with shifted degree inside `dwin` whenever the sign of
    /// the letter degrees allows pruning. Ordered by (length, lex).
    pub fn words(
        &self,
        min_len: usize,
        max_len: Option<usize>,
        max_weight: Option<usize>,
        dwin: Window,
    ) -> Vec<Vec<usize>> {
        let (lo, hi) = self.shifted_range().unwrap_or((0, 0));
        let mut out = Vec::new();
        let mut stack: Vec<Vec<usize>> = vec![Vec::new()];
        while let Some(w) = stack.pop() {
            let d = self.shifted_degree(&w);
            if w.len() >= min_len && dwin.contains(d) {
                out.push(w.clone());
            }
            if max_len.is_some_and(|m| w.len() >= m) {
                continue;
            }
            for a in (0..self.len()).rev() {
                let d2 = d + self.shifted[a];
                if max_weight.is_some_and(|m| self.word_weight(&w) + self.weight[a] > m) {
                    continue;
                }
                if lo > 0 && d2 > dwin.hi {
                    continue;
                }
                if hi < 0 && d2 < dwin.lo {
                    continue;
                }
                let mut w2 = w.clone();
                w2.push(a);
                stack.push(w2);
            }
        }
        out.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        out
    }
}

/// Coefficients of a bar cochain complex.
#[derive(Clone, Debug)]
pub enum Coefficients {
    /// `Hom_{R-R}(B(R,R,R), M)` computing `HH(R, M)`.
    Bimodule(DGBimodule),
    /// `Hom_R(B(R,R,N), M)` computing `Ext_R(N, M)` for left modules
    /// (bimodules whose right algebra is ignored).
    LeftModules { source: DGBimodule, target: DGBimodule },
}

impl Coefficients {
    fn target(&self) -> &DGBimodule {
        match self {
            Coefficients::Bimodule(m) => m,
            Coefficients::LeftModules { target, .. } => target,
        }
    }

    fn tail_degrees(&self) -> Vec<i32> {
        match self {
            Coefficients::Bimodule(_) => vec![0],
            Coefficients::LeftModules { source, .. } => source.degrees().to_vec(),
        }
    }
}

/// Basis cochain: sends `1[word]tail` to basis element `value` of `M`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub word: Vec<usize>,
    pub tail: usize,
    pub value: usize,
}

/// How the columns of a cochain complex were bounded.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Truncation {
    /// Every column that can be nonzero is present (lengths ≤ `max_len`).
    Certified { max_len: usize },
    /// Cochains restricted to words of weight ≤ cutoff (a quotient complex).
    Weight(usize),
}

/// Assembled bar cochain complex on a window of total degrees.
#[derive(Clone, Debug)]
pub struct HochschildComplex {
    pub complex: ChainComplex,
    pub cells: BTreeMap<i32, Vec<Cell>>,
    index: BTreeMap<i32, HashMap<Cell, usize>>,
    pub truncation: Truncation,
    pub min_len: usize,
    letter_labels: Vec<String>,
    tail_labels: Option<Vec<String>>,
    value_labels: Vec<String>,
}

impl HochschildComplex {
    pub fn window(&self) -> Window {
        self.complex.exact_window()
    }

    pub fn cell_index(&self, n: i32, cell: &Cell) -> Option<usize> {
        self.index.get(&n)?.get(cell).copied()
    }

    pub fn cells(&self, n: i32) -> &[Cell] {
        self.cells.get(&n).map_or(&[], |v| v.as_slice())
    }

    /// Human-readable form of a cochain, e.g. `[x|x] ↦ 2 xx`.
    pub fn describe(&self, field: FieldSpec, n: i32, v: &SparseVec) -> String {
        let cells = self.cells(n);
        let mut parts = Vec::new();
        for (k, c) in v.iter() {
            let cell = &cells[*k];
            let word: Vec<&str> = cell.word.iter().map(|a| self.letter_labels[*a].as_str()).collect();
            let tail = self.tail_labels.as_ref().map_or(String::new(), |t| t[cell.tail].clone());
            parts.push(format!(
                "[{}]{} ↦ {} {}",
                word.join("|"),
                tail,
                field.format(c),
                self.value_labels[cell.value]
            ));
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    /// Restriction of a cochain of `self` to the cells of `other` (used to
    /// compare cutoffs).
    pub fn restrict_to(&self, other: &HochschildComplex, n: i32, v: &SparseVec) -> SparseVec {
        let cells = self.cells(n);
        let f = self.complex.field();
        SparseVec::from_pairs(
            f,
            v.iter().filter_map(|(k, c)| other.cell_index(n, &cells[*k]).map(|j| (j, c.clone()))),
        )
    }
}

/// Bar cochains of `R` with given coefficients.
#[derive(Clone, Debug)]
pub struct BarCochains {
    pub algebra: Arc<DGAlgebra>,
    pub coefficients: Coefficients,
    letters: Letters,
    pub min_len: usize,
}

impl BarCochains {
    pub fn hochschild(r: &Arc<DGAlgebra>, m: &DGBimodule) -> Result<Self> {
        Self::check_over(r, m, true)?;
        Ok(Self { algebra: r.clone(), coefficients: Coefficients::Bimodule(m.clone()), letters: Letters::new(r), min_len: 0 })
    }

    pub fn ext(r: &Arc<DGAlgebra>, source: &DGBimodule, target: &DGBimodule) -> Result<Self> {
        Self::check_over(r, source, false)?;
        Self::check_over(r, target, false)?;
        if source.is_truncation() {
            return Err(DgaError::Scope("Ext source module must be untruncated".into()));
        }
        Ok(Self {
            algebra: r.clone(),
            coefficients: Coefficients::LeftModules { source: source.clone(), target: target.clone() },
            letters: Letters::new(r),
            min_len: 0,
        })
    }

    /// The subcomplex of cochains vanishing on the empty word.
    pub fn positive_length(mut self) -> Self {
        self.min_len = 1;
        self
    }

    fn check_over(r: &Arc<DGAlgebra>, m: &DGBimodule, both: bool) -> Result<()> {
        let same = |a: &Arc<DGAlgebra>| Arc::ptr_eq(a, r) || (a.labels() == r.labels() && a.degrees() == r.degrees());
        if !same(m.left()) || (both && !same(m.right())) {
            return Err(DgaError::Precondition("module is not over the given algebra".into()));
        }
        if r.field() != m.field() {
            return Err(DgaError::Precondition("field mismatch".into()));
        }
        Ok(())
    }

    pub fn field(&self) -> FieldSpec {
        self.algebra.field()
    }

    /// Whether the algebra or coefficients are truncations of larger objects.
    fn involves_truncation(&self) -> bool {
        self.algebra.is_truncation()
            || match &self.coefficients {
                Coefficients::Bimodule(m) => m.is_truncation(),
                Coefficients::LeftModules { source, target } => source.is_truncation() || target.is_truncation(),
            }
    }

    /// Length bound making every degree in `[lo, hi]` complete, when degree
    /// bounds force one.
    pub fn certificate(&self, lo: i32, hi: i32) -> Option<usize> {
        if self.involves_truncation() {
            return None;
        }
        let Some((a, b)) = self.letters.shifted_range() else {
            return Some(0);
        };
        let m = self.coefficients.target().complex().support()?;
        let tails = self.coefficients.tail_degrees();
        let (xlo, xhi) = (*tails.iter().min()?, *tails.iter().max()?);
        let s = if a > 0 {
            (m.hi - lo - xlo).max(0) / a
        } else if b < 0 {
            (hi + xhi - m.lo).max(0) / (-b)
        } else {
            return None;
        };
        Some(s as usize)
    }

    /// Assembles total degrees `[lo - 1, hi + 1]`; homology is valid on `[lo, hi]`.
    pub fn assemble(&self, lo: i32, hi: i32, truncation: Truncation) -> Result<HochschildComplex> {
        let f = self.field();
        let target = self.coefficients.target();
        let tails = self.coefficients.tail_degrees();
        let mdeg = target.degrees();
        let (Some(msup), Some(&xlo), Some(&xhi)) =
            (target.complex().support(), tails.iter().min(), tails.iter().max())
        else {
            return self.empty(lo, hi, truncation);
        };
        let dwin = Window::new(msup.lo - (hi + 1) - xhi, msup.hi - (lo - 1) - xlo);
        let (max_len, max_weight) = match truncation {
            Truncation::Certified { max_len } => (Some(max_len), None),
            Truncation::Weight(n) => {
                self.letters.check_weight_filtration()?;
                self.check_completeness(lo, hi, n)?;
                (None, Some(n))
            }
        };
        let words = self.letters.words(self.min_len, max_len, max_weight, dwin);
        let mut by_value_degree: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
        for (i, d) in mdeg.iter().enumerate() {
            by_value_degree.entry(*d).or_default().push(i);
        }
        let mut cells: BTreeMap<i32, Vec<Cell>> = BTreeMap::new();
        for n in (lo - 1)..=(hi + 1) {
            let mut list = Vec::new();
            for w in &words {
                let dw = self.letters.shifted_degree(w);
                for (x, xd) in tails.iter().enumerate() {
                    if let Some(vals) = by_value_degree.get(&(n + dw + xd)) {
                        for v in vals {
                            list.push(Cell { word: w.clone(), tail: x, value: *v });
                        }
                    }
                }
            }
            if let Truncation::Weight(_) = truncation {
                self.check_value_degrees(n, &words, &tails)?;
            }
            cells.insert(n, list);
        }
        let index: BTreeMap<i32, HashMap<Cell, usize>> = cells
            .iter()
            .map(|(n, l)| (*n, l.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect()))
            .collect();
        let mut diffs = BTreeMap::new();
        for n in (lo - 1)..=hi {
            let src = &cells[&n];
            let tgt_index = &index[&(n + 1)];
            let mut trip = Vec::new();
            for (col, cell) in src.iter().enumerate() {
                for (tc, c) in self.delta(n, cell) {
                    if let Some(row) = tgt_index.get(&tc) {
                        trip.push((*row, col, c));
                    }
                }
            }
            diffs.insert(n, Matrix::from_triplets(f, cells[&(n + 1)].len(), src.len(), trip));
        }
        let dims = cells.iter().map(|(n, l)| (*n, l.len())).collect();
        let complex = ChainComplex::new(f, dims, diffs)
            .map_err(|e| DgaError::Internal(format!("cochain differential: {e}")))?
            .with_exact_window(Window::new(lo, hi));
        let labels = |idx: &[usize], all: &[String]| idx.iter().map(|i| all[*i].clone()).collect::<Vec<_>>();
        Ok(HochschildComplex {
            complex,
            cells,
            index,
            truncation,
            min_len: self.min_len,
            letter_labels: labels(&self.letters.basis, self.algebra.labels()),
            tail_labels: match &self.coefficients {
                Coefficients::Bimodule(_) => None,
                Coefficients::LeftModules { source, .. } => Some(source.labels().to_vec()),
            },
            value_labels: target.labels().to_vec(),
        })
    }

    fn empty(&self, lo: i32, hi: i32, truncation: Truncation) -> Result<HochschildComplex> {
        let f = self.field();
        Ok(HochschildComplex {
            complex: ChainComplex::zero(f).with_exact_window(Window::new(lo, hi)),
            cells: ((lo - 1)..=(hi + 1)).map(|n| (n, Vec::new())).collect(),
            index: ((lo - 1)..=(hi + 1)).map(|n| (n, HashMap::new())).collect(),
            truncation,
            min_len: self.min_len,
            letter_labels: Vec::new(),
            tail_labels: None,
            value_labels: Vec::new(),
        })
    }

    /// Products of letters inside the cutoff must be computed where the
    /// algebra is complete.
    fn check_completeness(&self, lo: i32, hi: i32, cutoff: usize) -> Result<()> {
        let r = &self.algebra;
        if !r.is_truncation() {
            return Ok(());
        }
        let l = &self.letters;
        let max_w = l.weight.iter().copied().max().unwrap_or(0);
        if cutoff > max_w {
            return Err(DgaError::Scope(format!(
                "cutoff {cutoff} exceeds the truncation of the algebra (letters up to weight {max_w})"
            )));
        }
        let cw = r.complete_window();
        for a in 0..l.len() {
            for b in 0..l.len() {
                if l.weight[a] + l.weight[b] <= cutoff {
                    let d = r.degree(l.basis[a]) + r.degree(l.basis[b]);
                    if !cw.contains(d) {
                        return Err(DgaError::OutOfWindow { degree: d, lo: cw.lo, hi: cw.hi });
                    }
                }
            }
        }
        let _ = (lo, hi);
        Ok(())
    }

    fn check_value_degrees(&self, n: i32, words: &[Vec<usize>], tails: &[i32]) -> Result<()> {
        let target = self.coefficients.target();
        if !target.is_truncation() {
            return Ok(());
        }
        let cw = target.complete_window();
        for w in words {
            let dw = self.letters.shifted_degree(w);
            for xd in tails {
                let d = n + dw + xd;
                if !cw.contains(d) {
                    return Err(DgaError::OutOfWindow { degree: d, lo: cw.lo, hi: cw.hi });
                }
            }
        }
        Ok(())
    }

    /// `δ` of a basis cochain of total degree `n`, as cells of degree `n+1`.
    fn delta(&self, n: i32, cell: &Cell) -> Vec<(Cell, Scalar)> {
        let f = self.field();
        let r = &*self.algebra;
        let l = &self.letters;
        let target = self.coefficients.target();
        let w = &cell.word;
        let s = w.len();
        let sn = f.sign(n as i64);
        let minus_sn = f.neg(&sn);
        let mut out: Vec<(Cell, Scalar)> = Vec::new();
        let value = target.basis(cell.value);
        let emit = |word: Vec<usize>, tail: usize, v: &SparseVec, coef: &Scalar, out: &mut Vec<(Cell, Scalar)>| {
            for (k, c) in v.iter() {
                out.push((Cell { word: word.clone(), tail, value: *k }, f.mul(coef, c)));
            }
        };
        // d_M ∘ f
        emit(w.clone(), cell.tail, target.d_basis(cell.value), &f.one(), &mut out);
        // prefix sums e_i of the word (r = 1)
        let mut e = vec![0i32; s + 1];
        for i in 0..s {
            e[i + 1] = e[i] + l.shifted[w[i]];
        }
        // internal: (-1)^{n + e_{i-1}} c f(..d̄b..) at w' = w[i := b]
        for i in 0..s {
            for (b, c) in &l.dpre[w[i]] {
                let mut w2 = w.clone();
                w2[i] = *b;
                let coef = f.mul(&f.sign((n + e[i]) as i64), c);
                out.push((Cell { word: w2, tail: cell.tail, value: cell.value }, coef));
            }
        }
        // inner merges: -(-1)^n (-1)^{e'_i} c at w' = w[..i] b b' w[i+1..]
        for i in 0..s {
            for (b, b2, c) in &l.mpre[w[i]] {
                let mut w2 = w[..i].to_vec();
                w2.push(*b);
                w2.push(*b2);
                w2.extend_from_slice(&w[i + 1..]);
                let ei = e[i] + l.shifted[*b];
                let coef = f.mul(&f.mul(&minus_sn, &f.sign(ei as i64)), c);
                out.push((Cell { word: w2, tail: cell.tail, value: cell.value }, coef));
            }
        }
        // left merge: -(-1)^n (-1)^{n|a|} a·f(w) at w' = a w
        for a in 0..l.len() {
            let ra = r.basis(l.basis[a]);
            let v = target.act_left(&ra, &value);
            if v.is_zero() {
                continue;
            }
            let coef = f.mul(&minus_sn, &f.sign((n * r.degree(l.basis[a])) as i64));
            let mut w2 = vec![a];
            w2.extend_from_slice(w);
            emit(w2, cell.tail, &v, &coef, &mut out);
        }
        // right merge: (-1)^{n + D(w)} at w' = w a
        let coef = f.sign((n + e[s]) as i64);
        match &self.coefficients {
            Coefficients::Bimodule(m) => {
                for a in 0..l.len() {
                    let v = m.act_right(&value, &r.basis(l.basis[a]));
                    if v.is_zero() {
                        continue;
                    }
                    let mut w2 = w.clone();
                    w2.push(a);
                    emit(w2, 0, &v, &coef, &mut out);
                }
            }
            Coefficients::LeftModules { source, .. } => {
                // f(w (a·x')) picks the coefficient of tail x in a·x'
                for a in 0..l.len() {
                    let ra = r.basis(l.basis[a]);
                    for x2 in 0..source.dim() {
                        let c = source.act_left(&ra, &source.basis(x2)).get(cell.tail);
                        if c.is_zero() {
                            continue;
                        }
                        let mut w2 = w.clone();
                        w2.push(a);
                        out.push((Cell { word: w2, tail: x2, value: cell.value }, f.mul(&coef, &c)));
                    }
                }
                // tail differential: -(-1)^n (-1)^{e_s} f(w dx')
                let tcoef = f.mul(&minus_sn, &f.sign(e[s] as i64));
                for x2 in 0..source.dim() {
                    let c = source.d_basis(x2).get(cell.tail);
                    if !c.is_zero() {
                        out.push((Cell { word: w.clone(), tail: x2, value: cell.value }, f.mul(&tcoef, &c)));
                    }
                }
            }
        }
        out
    }
}

/// Column cutoff and whether to confirm it against the next cutoff.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CutoffPolicy {
    pub cutoff: usize,
    pub stabilize: bool,
}

impl Default for CutoffPolicy {
    fn default() -> Self {
        Self { cutoff: 8, stabilize: true }
    }
}

/// Cohomology of bar cochains on a window, with the complex it came from.
#[derive(Clone, Debug)]
pub struct CochainCohomology {
    pub complex: HochschildComplex,
    pub groups: BTreeMap<i32, CohomologyGroup>,
}

impl CochainCohomology {
    pub fn group(&self, n: i32) -> &CohomologyGroup {
        &self.groups[&n]
    }

    pub fn dim(&self, n: i32) -> usize {
        self.groups[&n].dim
    }

    pub fn status(&self, n: i32) -> Status {
        self.groups[&n].status
    }
}

impl BarCochains {
    /// `H^n` for `n ∈ [lo, hi]`: EXACT under a length certificate, otherwise
    /// weight cutoff `N` compared with `N + 1` (dimensions equal and the
    /// restriction map an isomorphism).
    pub fn cohomology(&self, lo: i32, hi: i32, policy: CutoffPolicy) -> Result<CochainCohomology> {
        let f = self.field();
        if let Some(max_len) = self.certificate(lo - 1, hi + 1) {
            let c = self.assemble(lo, hi, Truncation::Certified { max_len })?;
            let groups = Self::groups_of(&c, f, lo, hi, |_| Status::Exact)?;
            return Ok(CochainCohomology { complex: c, groups });
        }
        let n = policy.cutoff;
        let c = self.assemble(lo, hi, Truncation::Weight(n))?;
        if !policy.stabilize {
            let groups = Self::groups_of(&c, f, lo, hi, |_| Status::Unstable(n))?;
            return Ok(CochainCohomology { complex: c, groups });
        }
        let next = self.assemble(lo, hi, Truncation::Weight(n + 1))?;
        let h_next = next.complex.homology(Window::new(lo, hi))?;
        let h = c.complex.homology(Window::new(lo, hi))?;
        let groups = Self::groups_of(&c, f, lo, hi, |deg| {
            let reps: Vec<SparseVec> =
                h_next.representatives[&deg].iter().map(|v| next.restrict_to(&c, deg, v)).collect();
            let rank = c.complex.class_rank(deg, &reps);
            if h.dim(deg) == h_next.dim(deg) && rank == h.dim(deg) {
                Status::Stabilized(n)
            } else {
                Status::Unstable(n)
            }
        })?;
        Ok(CochainCohomology { complex: c, groups })
    }

    fn groups_of(
        c: &HochschildComplex,
        f: FieldSpec,
        lo: i32,
        hi: i32,
        mut status: impl FnMut(i32) -> Status,
    ) -> Result<BTreeMap<i32, CohomologyGroup>> {
        let h = c.complex.homology(Window::new(lo, hi))?;
        let mut out = BTreeMap::new();
        for n in lo..=hi {
            let reps = h.representatives[&n].clone();
            let labels = reps.iter().map(|v| c.describe(f, n, v)).collect();
            out.insert(n, CohomologyGroup { degree: n, dim: reps.len(), representatives: reps, labels, status: status(n) });
        }
        Ok(out)
    }
}

impl HochschildComplex {
    /// Length-0 component of a degree-`n` cochain, in global coordinates of
    /// the coefficient module.
    pub fn edge(&self, n: i32, v: &SparseVec) -> SparseVec {
        let cells = self.cells(n);
        let f = self.complex.field();
        SparseVec::from_pairs(
            f,
            v.iter().filter(|(k, _)| cells[*k].word.is_empty()).map(|(k, c)| (cells[*k].value, c.clone())),
        )
    }

    /// Cells of degree `n` of positive length, as indices.
    pub fn positive_cells(&self, n: i32) -> Vec<usize> {
        self.cells(n).iter().enumerate().filter(|(_, c)| !c.word.is_empty()).map(|(i, _)| i).collect()
    }
}

/// `HH^n(R, M)` for `n ∈ [lo, hi]`.
pub fn hh_groups(r: &Arc<DGAlgebra>, m: &DGBimodule, lo: i32, hi: i32, policy: CutoffPolicy) -> Result<CochainCohomology> {
    BarCochains::hochschild(r, m)?.cohomology(lo, hi, policy)
}

pub fn hh_group(r: &Arc<DGAlgebra>, m: &DGBimodule, n: i32, policy: CutoffPolicy) -> Result<CohomologyGroup> {
    Ok(hh_groups(r, m, n, n, policy)?.groups.remove(&n).unwrap())
}

/// `Ext^n_R(N, M)` for left `R`-modules, via `B(R, R, N)`.
pub fn ext_groups(
    r: &Arc<DGAlgebra>,
    source: &DGBimodule,
    target: &DGBimodule,
    lo: i32,
    hi: i32,
    policy: CutoffPolicy,
) -> Result<CochainCohomology> {
    BarCochains::ext(r, source, target)?.cohomology(lo, hi, policy)
}

/// `Der^n(R, M) := H^{n+1}` of the positive-length cochains, for `n ∈ [lo, hi]`.
/// Groups are keyed by `n`.
pub fn der_groups(r: &Arc<DGAlgebra>, m: &DGBimodule, lo: i32, hi: i32, policy: CutoffPolicy) -> Result<CochainCohomology> {
    let mut c = BarCochains::hochschild(r, m)?.positive_length().cohomology(lo + 1, hi + 1, policy)?;
    c.groups = c
        .groups
        .into_iter()
        .map(|(n, mut g)| {
            g.degree = n - 1;
            (n - 1, g)
        })
        .collect();
    Ok(c)
}

/// Normalized bar construction `B(R, R, S)` restricted to bar length ≤ N,
/// a subcomplex.
#[derive(Clone, Debug)]
pub struct BarComplex {
    pub complex: ChainComplex,
    pub cells: BTreeMap<i32, Vec<(usize, Vec<usize>, usize)>>,
    pub augmentation: crate::complex::GradedMap,
    pub max_len: usize,
}

/// Assembles `B(R, R, S)` (S a left `R`-module) in total degrees
/// `[lo - 1, hi + 1]`, certified on `[lo, hi]`, with bar length ≤ `max_len`.
pub fn bar_complex(r: &Arc<DGAlgebra>, s: &DGBimodule, lo: i32, hi: i32, max_len: usize) -> Result<BarComplex> {
    BarCochains::check_over(r, s, false)?;
    let f = r.field();
    let letters = Letters::new(r);
    let (Some(rs), Some(ss)) = (r.complex().support(), s.complex().support()) else {
        return Err(DgaError::Precondition("empty algebra or module".into()));
    };
    let dwin = Window::new(lo - 1 - rs.hi - ss.hi, hi + 1 - rs.lo - ss.lo);
    let words = letters.words(0, Some(max_len), None, dwin);
    let mut cells: BTreeMap<i32, Vec<(usize, Vec<usize>, usize)>> = ((lo - 1)..=(hi + 1)).map(|n| (n, Vec::new())).collect();
    for ri in 0..r.dim() {
        for w in &words {
            for x in 0..s.dim() {
                let deg = r.degree(ri) + letters.shifted_degree(w) + s.degree(x);
                if let Some(l) = cells.get_mut(&deg) {
                    l.push((ri, w.clone(), x));
                }
            }
        }
    }
    let index: BTreeMap<i32, HashMap<(usize, Vec<usize>, usize), usize>> = cells
        .iter()
        .map(|(n, l)| (*n, l.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect()))
        .collect();
    let mut diffs = BTreeMap::new();
    for n in (lo - 1)..=hi {
        let mut trip = Vec::new();
        for (col, (ri, w, x)) in cells[&n].iter().enumerate() {
            for (cell, c) in bar_d(r, s, &letters, *ri, w, *x) {
                if let Some(row) = index[&(n + 1)].get(&cell) {
                    trip.push((*row, col, c));
                } else if cell.1.len() <= max_len {
                    return Err(DgaError::Internal("bar differential left the assembled range".into()));
                }
            }
        }
        diffs.insert(n, Matrix::from_triplets(f, cells[&(n + 1)].len(), cells[&n].len(), trip));
    }
    let dims = cells.iter().map(|(n, l)| (*n, l.len())).collect();
    let complex = ChainComplex::new(f, dims, diffs)
        .map_err(|e| DgaError::Internal(format!("bar differential: {e}")))?
        .with_exact_window(Window::new(lo, hi));
    let mut aug = crate::complex::GradedMap::new(0);
    let soff = |n: i32| s.complex().offset(n);
    for (n, l) in &cells {
        let mut trip = Vec::new();
        for (col, (ri, w, x)) in l.iter().enumerate() {
            if w.is_empty() {
                for (k, c) in s.act_left(&r.basis(*ri), &s.basis(*x)).iter() {
                    trip.push((k - soff(*n), col, c.clone()));
                }
            }
        }
        aug.components.insert(*n, Matrix::from_triplets(f, s.complex().dim(*n), l.len(), trip));
    }
    Ok(BarComplex { complex, cells, augmentation: aug, max_len })
}

fn bar_d(
    r: &DGAlgebra,
    s: &DGBimodule,
    l: &Letters,
    ri: usize,
    w: &[usize],
    x: usize,
) -> Vec<((usize, Vec<usize>, usize), Scalar)> {
    let f = r.field();
    let mut out = Vec::new();
    let len = w.len();
    let mut e = vec![r.degree(ri); len + 1];
    for i in 0..len {
        e[i + 1] = e[i] + l.shifted[w[i]];
    }
    for (k, c) in r.d_basis(ri).iter() {
        out.push(((*k, w.to_vec(), x), c.clone()));
    }
    for i in 0..len {
        let sign = f.neg(&f.sign(e[i] as i64));
        for (k, c) in r.project_reduced(r.d_basis(l.basis[w[i]])).iter() {
            let mut w2 = w.to_vec();
            w2[i] = l.of_basis[k];
            out.push(((ri, w2, x), f.mul(&sign, c)));
        }
    }
    let sign = f.sign(e[len] as i64);
    for (k, c) in s.d_basis(x).iter() {
        out.push(((ri, w.to_vec(), *k), f.mul(&sign, c)));
    }
    if len > 0 {
        let sign = f.sign(r.degree(ri) as i64);
        for (k, c) in r.mul_basis(ri, l.basis[w[0]]).iter() {
            out.push(((*k, w[1..].to_vec(), x), f.mul(&sign, c)));
        }
        for i in 0..len - 1 {
            let sign = f.sign(e[i + 1] as i64);
            let p = r.project_reduced(&r.mul_basis(l.basis[w[i]], l.basis[w[i + 1]]));
            for (k, c) in p.iter() {
                let mut w2 = w[..i].to_vec();
                w2.push(l.of_basis[k]);
                w2.extend_from_slice(&w[i + 2..]);
                out.push(((ri, w2, x), f.mul(&sign, c)));
            }
        }
        let sign = f.neg(&f.sign(e[len - 1] as i64));
        let ax = s.act_left(&r.basis(l.basis[w[len - 1]]), &s.basis(x));
        for (k, c) in ax.iter() {
            out.push(((ri, w[..len - 1].to_vec(), *k), f.mul(&sign, c)));
        }
    }
    out
}

/// Verdict of the bar augmentation check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BarCheck {
    pub window: Window,
    pub quasi_iso: bool,
    pub bar_dims: BTreeMap<i32, usize>,
    pub status: Status,
}

/// Checks that `B(R,R,S) → S` induces isomorphisms on `H^n` for `n` in
/// `window`, i.e. its cone is acyclic on `[lo - 1, hi]`, at bar lengths
/// `N` and `N + 1`.
pub fn bar_augmentation_check(r: &Arc<DGAlgebra>, s: &DGBimodule, window: Window, policy: CutoffPolicy) -> Result<BarCheck> {
    let run = |n: usize| -> Result<(bool, BTreeMap<i32, usize>)> {
        let b = bar_complex(r, s, window.lo - 1, window.hi + 1, n)?;
        b.augmentation
            .validate(&b.complex, s.complex())
            .map_err(|e| DgaError::Internal(format!("augmentation: {e}")))?;
        let qi = crate::complex::is_quasi_iso(&b.augmentation, &b.complex, s.complex(), Window::new(window.lo - 1, window.hi))?;
        let h = b.complex.homology(window)?;
        Ok((qi, h.dims))
    };
    let (qi, dims) = run(policy.cutoff)?;
    let status = if policy.stabilize {
        let (qi2, dims2) = run(policy.cutoff + 1)?;
        if qi == qi2 && dims == dims2 {
            Status::Stabilized(policy.cutoff)
        } else {
            Status::Unstable(policy.cutoff)
        }
    } else {
        Status::Unstable(policy.cutoff)
    };
    Ok(BarCheck { window, quasi_iso: qi, bar_dims: dims, status })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dims(c: &CochainCohomology, lo: i32, hi: i32) -> Vec<usize> {
        (lo..=hi).map(|n| c.dim(n)).collect()
    }

    #[test]
    fn dual_numbers_hochschild() {
        for (field, expect) in [(FieldSpec::Rationals, vec![2, 1, 1, 1, 1]), (FieldSpec::Prime(2), vec![2; 5])] {
            let r = Arc::new(DGAlgebra::dual_numbers(field));
            let m = DGBimodule::regular(&r);
            let c = hh_groups(&r, &m, 0, 4, CutoffPolicy::default()).unwrap();
            assert_eq!(dims(&c, 0, 4), expect);
            assert!(c.groups.values().all(|g| g.status == Status::Exact));
        }
    }

    #[test]
    fn ground_field_reduces_to_coefficients() {
        let k = Arc::new(DGAlgebra::ground(FieldSpec::Rationals));
        let m = DGBimodule::regular(&k).suspend(2);
        let c = hh_groups(&k, &m, -3, 1, CutoffPolicy::default()).unwrap();
        assert_eq!(dims(&c, -3, 1), vec![0, 1, 0, 0, 0]);
    }

    #[test]
    fn free_algebra_degree_two() {
        let r = Arc::new(DGAlgebra::free_on_one(FieldSpec::Rationals, 2, 12));
        let m = DGBimodule::regular(&r);
        let c = hh_groups(&r, &m, -2, 2, CutoffPolicy { cutoff: 5, stabilize: true }).unwrap();
        assert_eq!(c.dim(-1), 1);
        assert!(c.groups.values().all(|g| g.status.is_determined()), "{:?}", c.groups.values().map(|g| (g.dim, g.status)).collect::<Vec<_>>());
    }

    #[test]
    fn bar_of_dual_numbers_resolves_ground() {
        let f = FieldSpec::Rationals;
        let r = Arc::new(DGAlgebra::dual_numbers(f));
        let k = Arc::new(DGAlgebra::ground(f));
        let proj = crate::algebra::AlgebraMap::new(r.clone(), k.clone(), vec![SparseVec::unit(0, f.one()), SparseVec::new()]).unwrap();
        let s = DGBimodule::regular(&k).restrict(Some(&proj), Some(&proj)).unwrap();
        let chk = bar_augmentation_check(&r, &s, Window::new(-4, 2), CutoffPolicy::default()).unwrap();
        assert!(chk.quasi_iso);
        assert_eq!(chk.status, Status::Stabilized(8));
    }
}
