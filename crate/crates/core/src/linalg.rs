//! Sparse exact linear algebra: vectors as sorted coordinate lists,
//! row-major sparse matrices, and incremental echelon spans.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::field::{FieldSpec, Scalar};

/// Sparse vector: strictly increasing indices, no stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SparseVec {
    entries: Vec<(usize, Scalar)>,
}

impl SparseVec {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn unit(i: usize, one: Scalar) -> Self {
        Self { entries: vec![(i, one)] }
    }

    /// Builds from arbitrary (index, value) pairs, summing duplicates.
    pub fn from_pairs(field: FieldSpec, pairs: impl IntoIterator<Item = (usize, Scalar)>) -> Self {
        let mut map: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (i, v) in pairs {
            let e = map.entry(i).or_insert_with(Scalar::zero);
            *e = field.add(e, &v);
        }
        Self { entries: map.into_iter().filter(|(_, v)| !v.is_zero()).collect() }
    }

    pub fn from_dense(values: &[Scalar]) -> Self {
        Self {
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(i, v)| (i, v.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self, len: usize) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); len];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = &(usize, Scalar)> {
        self.entries.iter()
    }

    pub fn get(&self, i: usize) -> Scalar {
        match self.entries.binary_search_by_key(&i, |(j, _)| *j) {
            Ok(pos) => self.entries[pos].1.clone(),
            Err(_) => Scalar::zero(),
        }
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    pub fn scale(&self, field: FieldSpec, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::new();
        }
        Self {
            entries: self
                .entries
                .iter()
                .map(|(i, v)| (*i, field.mul(v, c)))
                .filter(|(_, v)| !v.is_zero())
                .collect(),
        }
    }

    /// `self + c * other`.
    pub fn axpy(&self, field: FieldSpec, c: &Scalar, other: &SparseVec) -> Self {
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) => {
                    if i < j {
                        out.push((*i, x.clone()));
                        a.next();
                    } else if j < i {
                        out.push((*j, field.mul(c, y)));
                        b.next();
                    } else {
                        let v = field.add(x, &field.mul(c, y));
                        if !v.is_zero() {
                            out.push((*i, v));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (None, Some((j, y))) => {
                    out.push((*j, field.mul(c, y)));
                    b.next();
                }
                (None, None) => break,
            }
        }
        out.retain(|(_, v)| !v.is_zero());
        Self { entries: out }
    }

    pub fn add(&self, field: FieldSpec, other: &SparseVec) -> Self {
        self.axpy(field, &field.one(), other)
    }

    pub fn sub(&self, field: FieldSpec, other: &SparseVec) -> Self {
        self.axpy(field, &field.from_i64(-1), other)
    }

    /// Re-indexes every coordinate through `f`.
    pub fn map_indices(&self, field: FieldSpec, f: impl Fn(usize) -> usize) -> Self {
        Self::from_pairs(field, self.entries.iter().map(|(i, v)| (f(*i), v.clone())))
    }

    /// Shifts all indices by `offset`.
    pub fn shifted(&self, offset: usize) -> Self {
        Self { entries: self.entries.iter().map(|(i, v)| (i + offset, v.clone())).collect() }
    }

    /// Restricts to indices in `lo..hi`, re-based at zero.
    pub fn slice(&self, lo: usize, hi: usize) -> Self {
        Self {
            entries: self
                .entries
                .iter()
                .filter(|(i, _)| *i >= lo && *i < hi)
                .map(|(i, v)| (i - lo, v.clone()))
                .collect(),
        }
    }
}

/// Sparse matrix stored by rows. Rows index the target basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![SparseVec::new(); rows] }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i] = SparseVec::unit(i, field.one());
        }
        m
    }

    pub fn from_triplets(
        field: FieldSpec,
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, Scalar)>,
    ) -> Self {
        let mut buckets: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); rows];
        for (r, c, v) in triplets {
            assert!(r < rows && c < cols, "triplet ({r},{c}) outside {rows}x{cols}");
            buckets[r].push((c, v));
        }
        Self {
            rows,
            cols,
            data: buckets.into_iter().map(|b| SparseVec::from_pairs(field, b)).collect(),
        }
    }

    /// Builds a matrix whose j-th column is `columns[j]`.
    pub fn from_columns(field: FieldSpec, rows: usize, columns: &[SparseVec]) -> Self {
        let trip = columns
            .iter()
            .enumerate()
            .flat_map(|(j, col)| col.iter().map(move |(i, v)| (*i, j, v.clone())));
        Self::from_triplets(field, rows, columns.len(), trip)
    }

    pub fn from_dense(field: FieldSpec, rows: &[Vec<Scalar>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let trip = rows
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().enumerate().map(move |(j, v)| (i, j, v.clone())));
        Self::from_triplets(field, r, c, trip)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &SparseVec {
        &self.data[i]
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.data[i].get(j)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(SparseVec::is_zero)
    }

    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        self.data.iter().map(|r| r.to_dense(self.cols)).collect()
    }

    pub fn transpose(&self, field: FieldSpec) -> Self {
        let trip = self
            .data
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().map(move |(j, v)| (*j, i, v.clone())));
        Self::from_triplets(field, self.cols, self.rows, trip)
    }

    pub fn columns(&self, field: FieldSpec) -> Vec<SparseVec> {
        let t = self.transpose(field);
        t.data
    }

    pub fn column(&self, j: usize) -> SparseVec {
        SparseVec {
            entries: self
                .data
                .iter()
                .enumerate()
                .filter_map(|(i, r)| {
                    let v = r.get(j);
                    (!v.is_zero()).then_some((i, v))
                })
                .collect(),
        }
    }

    pub fn apply(&self, field: FieldSpec, v: &SparseVec) -> SparseVec {
        let mut out = Vec::new();
        for (i, row) in self.data.iter().enumerate() {
            let mut acc = Scalar::zero();
            let (mut a, mut b) = (row.entries.iter().peekable(), v.entries.iter().peekable());
            while let (Some((ia, xa)), Some((ib, xb))) = (a.peek(), b.peek()) {
                if ia < ib {
                    a.next();
                } else if ib < ia {
                    b.next();
                } else {
                    acc = field.add(&acc, &field.mul(xa, xb));
                    a.next();
                    b.next();
                }
            }
            if !acc.is_zero() {
                out.push((i, acc));
            }
        }
        SparseVec { entries: out }
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, field: FieldSpec, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let data = self
            .data
            .iter()
            .map(|row| {
                row.iter().fold(SparseVec::new(), |acc, (k, v)| acc.axpy(field, v, &other.data[*k]))
            })
            .collect();
        Matrix { rows: self.rows, cols: other.cols, data }
    }

    pub fn scale(&self, field: FieldSpec, c: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|r| r.scale(field, c)).collect(),
        }
    }

    pub fn add(&self, field: FieldSpec, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.add(field, b)).collect(),
        }
    }

    pub fn sub(&self, field: FieldSpec, other: &Matrix) -> Matrix {
        self.add(field, &other.scale(field, &field.from_i64(-1)))
    }

    pub fn rank(&self, field: FieldSpec) -> usize {
        let mut span = Span::new(field);
        for r in &self.data {
            span.insert(r.clone());
        }
        span.rank()
    }

    /// Basis of `{x : self * x = 0}`.
    pub fn kernel(&self, field: FieldSpec) -> Vec<SparseVec> {
        let cols = self.columns(field);
        let mut span = Span::with_tracking(field);
        let mut kernel = Vec::new();
        for (j, c) in cols.into_iter().enumerate() {
            if let Some(combo) = span.insert_tracked(c, j) {
                kernel.push(combo);
            }
        }
        kernel
    }

    /// Basis of the column space.
    pub fn image(&self, field: FieldSpec) -> Vec<SparseVec> {
        let mut span = Span::new(field);
        let mut basis = Vec::new();
        for c in self.columns(field) {
            if span.insert(c.clone()) {
                basis.push(c);
            }
        }
        basis
    }

    /// Some `x` with `self * x = b`, if one exists.
    pub fn solve(&self, field: FieldSpec, b: &SparseVec) -> Option<SparseVec> {
        let mut span = Span::with_tracking(field);
        for (j, c) in self.columns(field).into_iter().enumerate() {
            span.insert_tracked(c, j);
        }
        span.express(b)
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hconcat(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        Matrix {
            rows: self.rows,
            cols: self.cols + other.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| {
                    let mut e = a.entries.clone();
                    e.extend(b.shifted(self.cols).entries);
                    SparseVec { entries: e }
                })
                .collect(),
        }
    }

    /// Vertical concatenation.
    pub fn vconcat(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Block diagonal sum.
    pub fn block_diag(&self, other: &Matrix) -> Matrix {
        let top = self.hconcat(&Matrix::zeros(self.rows, other.cols));
        let bottom = Matrix::zeros(other.rows, self.cols).hconcat(other);
        top.vconcat(&bottom)
    }
}

#[derive(Clone, Debug)]
struct Pivot {
    row: SparseVec,
    combo: SparseVec,
}

/// Incrementally built subspace in reduced echelon form. Pivots sit at the
/// largest index of each row, so normal forms are supported on the smallest
/// non-pivot coordinates.
#[derive(Clone, Debug)]
pub struct Span {
    field: FieldSpec,
    pivots: BTreeMap<usize, Pivot>,
    tracking: bool,
}

impl Span {
    pub fn new(field: FieldSpec) -> Self {
        Self { field, pivots: BTreeMap::new(), tracking: false }
    }

    /// Variant that records each pivot as a combination of inserted inputs.
    pub fn with_tracking(field: FieldSpec) -> Self {
        Self { field, pivots: BTreeMap::new(), tracking: true }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    pub fn is_pivot(&self, i: usize) -> bool {
        self.pivots.contains_key(&i)
    }

    fn reduce_full(&self, v: &SparseVec, mut combo: SparseVec) -> (SparseVec, SparseVec) {
        let f = self.field;
        let mut work: BTreeMap<usize, Scalar> = v.entries.iter().cloned().collect();
        let mut cursor = usize::MAX;
        loop {
            let next = work.range(..=cursor).next_back().map(|(k, c)| (*k, c.clone()));
            let Some((k, c)) = next else { break };
            if let Some(p) = self.pivots.get(&k) {
                let neg = f.neg(&c);
                for (i, x) in p.row.iter() {
                    let e = work.entry(*i).or_insert_with(Scalar::zero);
                    *e = f.add(e, &f.mul(&neg, x));
                    if e.is_zero() {
                        work.remove(i);
                    }
                }
                if self.tracking {
                    combo = combo.axpy(f, &neg, &p.combo);
                }
            }
            if k == 0 {
                break;
            }
            cursor = k - 1;
        }
        (SparseVec { entries: work.into_iter().collect() }, combo)
    }

    /// Normal form of `v` modulo the span.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        self.reduce_full(v, SparseVec::new()).0
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    fn add_pivot(&mut self, rem: SparseVec, combo: SparseVec) {
        let f = self.field;
        let lead = rem.max_index().expect("nonzero remainder");
        let inv = f.inv(&rem.get(lead));
        let row = rem.scale(f, &inv);
        let combo = combo.scale(f, &inv);
        // keep the echelon fully reduced at the new pivot column
        let keys: Vec<usize> = self.pivots.keys().copied().collect();
        for k in keys {
            let p = self.pivots.get_mut(&k).unwrap();
            let c = p.row.get(lead);
            if !c.is_zero() {
                let neg = f.neg(&c);
                p.row = p.row.axpy(f, &neg, &row);
                if self.tracking {
                    p.combo = p.combo.axpy(f, &neg, &combo);
                }
            }
        }
        self.pivots.insert(lead, Pivot { row, combo });
    }

    /// Inserts `v`; returns whether the rank grew.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let (rem, _) = self.reduce_full(&v, SparseVec::new());
        if rem.is_zero() {
            return false;
        }
        self.add_pivot(rem, SparseVec::new());
        true
    }

    /// Inserts `v` labelled as input `label`. When `v` is dependent, returns
    /// the relation among inputs (coefficient vector indexed by label).
    pub fn insert_tracked(&mut self, v: SparseVec, label: usize) -> Option<SparseVec> {
        let one = SparseVec::unit(label, self.field.one());
        let (rem, combo) = self.reduce_full(&v, one);
        if rem.is_zero() {
            return Some(combo);
        }
        self.add_pivot(rem, combo);
        None
    }

    /// Coefficients over the tracked inputs expressing `v`, if `v` lies in the span.
    pub fn express(&self, v: &SparseVec) -> Option<SparseVec> {
        assert!(self.tracking, "express requires a tracking span");
        let (rem, combo) = self.reduce_full(v, SparseVec::new());
        rem.is_zero().then(|| combo.scale(self.field, &self.field.from_i64(-1)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn m(rows: &[&[i64]]) -> Matrix {
        let f = q();
        Matrix::from_dense(f, &rows.iter().map(|r| r.iter().map(|v| f.from_i64(*v)).collect()).collect::<Vec<_>>())
    }

    #[test]
    fn rank_and_kernel() {
        let f = q();
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert_eq!(a.rank(f), 2);
        let k = a.kernel(f);
        assert_eq!(k.len(), 1);
        assert!(a.apply(f, &k[0]).is_zero());
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let f = q();
        let a = m(&[&[1, 1], &[1, 1]]);
        let b = SparseVec::from_dense(&[f.from_i64(2), f.from_i64(2)]);
        let x = a.solve(f, &b).unwrap();
        assert_eq!(a.apply(f, &x), b);
        let c = SparseVec::from_dense(&[f.from_i64(1), f.from_i64(2)]);
        assert!(a.solve(f, &c).is_none());
    }

    #[test]
    fn normal_form_prefers_small_indices() {
        let f = q();
        let mut s = Span::new(f);
        // e2 - e0 : pivot on 2
        s.insert(SparseVec::from_pairs(f, [(2, f.one()), (0, f.from_i64(-1))]));
        let r = s.reduce(&SparseVec::unit(2, f.one()));
        assert_eq!(r, SparseVec::unit(0, f.one()));
    }

    #[test]
    fn fp_rank() {
        let f = FieldSpec::Prime(2);
        let a = Matrix::from_dense(
            f,
            &[vec![f.one(), f.one()], vec![f.one(), f.one()]],
        );
        assert_eq!(a.rank(f), 1);
        assert_eq!(a.mul(f, &a), Matrix::zeros(2, 2));
    }
}
