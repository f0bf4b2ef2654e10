//! Independent oracles. Nothing here calls into the engine's linear algebra:
//! ranks are computed on small integer matrices with their own elimination.
#![allow(dead_code)]

use dga_core::algebra::{DGAlgebra, DGBimodule};
use dga_core::{FieldSpec, SparseVec};

/// Rank of an integer matrix over `F_p` (`p > 0`) or over `Q` (`p = 0`).
pub fn rank(rows: &[Vec<i64>], p: i64) -> usize {
    let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let md = |x: i128| if p > 0 { x.rem_euclid(p as i128) } else { x };
    for r in m.iter_mut() {
        for x in r.iter_mut() {
            *x = md(*x);
        }
    }
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(rank, piv);
        for i in 0..m.len() {
            if i != rank && m[i][c] != 0 {
                let (a, b) = (m[rank][c], m[i][c]);
                // row_i := a·row_i − b·row_rank, then normalize the gcd away
                for j in 0..cols {
                    m[i][j] = md(a * m[i][j] - b * m[rank][j]);
                }
                if p == 0 {
                    let g = m[i].iter().fold(0i128, |g, &x| gcd(g, x.abs()));
                    if g > 1 {
                        m[i].iter_mut().for_each(|x| *x /= g);
                    }
                }
            }
        }
        rank += 1;
    }
    rank
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 { a } else { gcd(b, a % b) }
}

/// `HH^n(k[ε], k[ε])` from the 2-periodic resolution
/// `… → A⊗A → A⊗A → A⊗A → A` with maps alternating between
/// `ε⊗1 − 1⊗ε` and `ε⊗1 + 1⊗ε`. Applying `Hom_{A^e}(−, A)` gives the complex
/// `A → A → A → …` with maps `0, 2ε, 0, 2ε, …`.
pub fn dual_numbers_hh(n: i32, p: i64) -> usize {
    if n < 0 {
        return 0;
    }
    // 2ε· on the basis {1, ε}: 1 ↦ 2ε, ε ↦ 0
    let two_eps = vec![vec![0, 0], vec![2, 0]];
    let zero = vec![vec![0, 0], vec![0, 0]];
    let d = |k: i32| if k % 2 == 1 { &two_eps } else { &zero }; // d^k : C^k → C^{k+1}
    let out = rank(d(n), p);
    let inc = if n == 0 { 0 } else { rank(d(n - 1), p) };
    2 - out - inc
}

/// `HH^n(k⟨x⟩, k⟨x⟩)` over `Q` from the resolution
/// `0 → R⊗kx⊗R → R⊗R → R → 0`: the two-term complex
/// `R → Hom(kx, R)`, `a ↦ (x ↦ xa − (−1)^{|a||x|} ax)`, where a 1-cochain
/// with value of degree `t` sits in total degree `1 + t − |x|`.
pub fn free_one_hh(x: i32, n: i32) -> usize {
    let r_dim = |m: i32| usize::from(m == 0 || (m % x == 0 && m / x > 0));
    // rank of d from R^m (m = k|x|): x^{k+1}(1 − (−1)^{k|x|})
    let d_rank = |m: i32| usize::from(r_dim(m) == 1 && (m / x) % 2 != 0 && x % 2 != 0);
    let c0 = r_dim(n) - d_rank(n);
    let c1 = r_dim(n - 1 + x) - d_rank(n - 1);
    c0 + c1
}

/// `Σ_j dim V^j · h(j − n)` for a free source on `V` with zero differential.
pub fn free_source_count(v: &[(i32, usize)], h: impl Fn(i32) -> usize, n: i32) -> usize {
    v.iter().map(|&(j, dim)| dim * h(j - n)).sum()
}

/// Number of pointed maps from `k·1 ⊕ k·v` (zero differential) into an
/// algebra: the image of `v` is any cocycle of degree `|v|`.
pub fn pointed_map_count(a: &DGAlgebra, deg_v: i32, p: u64) -> u64 {
    let cocycles = cocycle_dim(a, deg_v);
    p.pow(cocycles as u32)
}

fn to_int(f: FieldSpec, v: &SparseVec, len: usize) -> Vec<i64> {
    let int = |s: String| match s.split_once('/') {
        Some((n, "1")) => n.parse::<i64>().expect("integral entry"),
        Some(_) => panic!("non-integral entry {s}"),
        None => s.parse::<i64>().expect("integral entry"),
    };
    (0..len).map(|i| int(f.format(&v.get(i)))).collect()
}

/// `dim Z^n` of an algebra, from its differential alone.
pub fn cocycle_dim(a: &DGAlgebra, n: i32) -> usize {
    let f = a.field();
    let p = f.characteristic() as i64;
    let src: Vec<usize> = (0..a.dim()).filter(|&i| a.degree(i) == n).collect();
    if src.is_empty() {
        return 0;
    }
    let cols: Vec<Vec<i64>> = src.iter().map(|&i| to_int(f, a.d_basis(i), a.dim())).collect();
    let rows: Vec<Vec<i64>> = (0..a.dim()).map(|r| cols.iter().map(|c| c[r]).collect()).collect();
    src.len() - rank(&rows, p)
}

/// Brute-force check of the algebra axioms on basis elements.
pub fn algebra_laws(a: &DGAlgebra) -> Result<(), String> {
    let f = a.field();
    let n = a.dim();
    let e = |i: usize| SparseVec::unit(i, f.one());
    for i in 0..n {
        if !a.d(a.d_basis(i)).is_zero() {
            return Err(format!("d² ≠ 0 on e{i}"));
        }
        if a.mul(a.unit(), &e(i)) != e(i) || a.mul(&e(i), a.unit()) != e(i) {
            return Err(format!("unit law fails on e{i}"));
        }
        for j in 0..n {
            let ab = a.mul_basis(i, j);
            let lhs = a.d(&ab);
            let sign = f.sign(a.degree(i) as i64);
            let rhs = a.mul(a.d_basis(i), &e(j)).add(f, &a.mul(&e(i), a.d_basis(j)).scale(f, &sign));
            if lhs != rhs {
                return Err(format!("Leibniz fails on (e{i}, e{j})"));
            }
            for k in 0..n {
                if a.mul(&ab, &e(k)) != a.mul(&e(i), &a.mul_basis(j, k)) {
                    return Err(format!("associativity fails on (e{i}, e{j}, e{k})"));
                }
            }
        }
    }
    Ok(())
}

/// Brute-force check of the bimodule axioms on basis elements.
pub fn bimodule_laws(m: &DGBimodule) -> Result<(), String> {
    let f = m.field();
    let (r, s) = (m.left(), m.right());
    let e = |i: usize| SparseVec::unit(i, f.one());
    for x in 0..m.dim() {
        let ex = e(x);
        if !m.d(m.d_basis(x)).is_zero() {
            return Err(format!("d² ≠ 0 on m{x}"));
        }
        if m.act_left(r.unit(), &ex) != ex || m.act_right(&ex, s.unit()) != ex {
            return Err(format!("unit law fails on m{x}"));
        }
        for i in 0..r.dim() {
            let ri = e(i);
            let lhs = m.d(&m.act_left(&ri, &ex));
            let sign = f.sign(r.degree(i) as i64);
            let rhs = m.act_left(r.d_basis(i), &ex).add(f, &m.act_left(&ri, m.d_basis(x)).scale(f, &sign));
            if lhs != rhs {
                return Err(format!("left Leibniz fails on (r{i}, m{x})"));
            }
            for j in 0..r.dim() {
                if m.act_left(&r.mul_basis(i, j), &ex) != m.act_left(&ri, &m.act_left(&e(j), &ex)) {
                    return Err(format!("left associativity fails on (r{i}, r{j}, m{x})"));
                }
            }
            for j in 0..s.dim() {
                let a = m.act_right(&m.act_left(&ri, &ex), &e(j));
                let b = m.act_left(&ri, &m.act_right(&ex, &e(j)));
                if a != b {
                    return Err(format!("actions do not commute on (r{i}, m{x}, s{j})"));
                }
            }
        }
        for j in 0..s.dim() {
            let sj = e(j);
            let lhs = m.d(&m.act_right(&ex, &sj));
            let sign = f.sign(m.degree(x) as i64);
            let rhs = m.act_right(m.d_basis(x), &sj).add(f, &m.act_right(&ex, s.d_basis(j)).scale(f, &sign));
            if lhs != rhs {
                return Err(format!("right Leibniz fails on (m{x}, s{j})"));
            }
            for k in 0..s.dim() {
                if m.act_right(&ex, &s.mul_basis(j, k)) != m.act_right(&m.act_right(&ex, &sj), &e(k)) {
                    return Err(format!("right associativity fails on (m{x}, s{j}, s{k})"));
                }
            }
        }
    }
    Ok(())
}
