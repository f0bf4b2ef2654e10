//! Named example instances shared by the tests, the CLI and the benches.

use std::sync::Arc;

use crate::algebra::{square_zero_extension, AlgebraMap, DGAlgebra, DGBimodule};
use crate::complex::ChainComplex;
use crate::error::Result;
use crate::field::FieldSpec;
use crate::linalg::SparseVec;

/// Sends the unit to the unit and every other basis element to zero. This is
/// an algebra map whenever the non-unit basis spans an ideal.
pub fn augmentation(r: &Arc<DGAlgebra>, s: &Arc<DGAlgebra>) -> Result<AlgebraMap> {
    let p = r.unit_pivot();
    let c = r.unit().get(p);
    let f = r.field();
    let images = (0..r.dim())
        .map(|i| if i == p { s.unit().scale(f, &f.inv(&c)) } else { SparseVec::new() })
        .collect();
    AlgebraMap::new(r.clone(), s.clone(), images)
}

/// `S` viewed as an `R–S`-bimodule along `φ`.
pub fn along(phi: &AlgebraMap) -> Result<DGBimodule> {
    DGBimodule::regular(phi.target()).restrict(Some(phi), None)
}

/// `k⟨x⟩` with one generator, truncated far enough for cutoffs up to 10
/// on the degrees `[-4, 4]`.
pub fn free_one(field: FieldSpec, deg: i32) -> Arc<DGAlgebra> {
    let len = match deg.abs() {
        1 => 16,
        2 => 14,
        _ => 12,
    };
    Arc::new(DGAlgebra::free_on_one(field, deg, len))
}

/// The generator space of [`free_one`].
pub fn one_generator(field: FieldSpec, deg: i32) -> ChainComplex {
    ChainComplex::with_zero_differential(field, [(deg, 1)].into_iter().collect())
}

/// Pairs `(R, S)` for the bar augmentation check.
pub fn bar_pairs(field: FieldSpec) -> Result<Vec<(String, Arc<DGAlgebra>, DGBimodule)>> {
    let k = Arc::new(DGAlgebra::ground(field));
    let eps = Arc::new(DGAlgebra::dual_numbers(field));
    let su = Arc::new(DGAlgebra::square_zero_class(field, -1));
    let x2 = free_one(field, 2);
    Ok(vec![
        ("k,k".into(), k.clone(), DGBimodule::regular(&k)),
        ("k[e],k".into(), eps.clone(), along(&augmentation(&eps, &k)?)?),
        ("k[e],k[e]".into(), eps.clone(), DGBimodule::regular(&eps)),
        ("k+Su,k".into(), su.clone(), along(&augmentation(&su, &k)?)?),
        ("k<x2>,k".into(), x2.clone(), along(&augmentation(&x2, &k)?)?),
    ])
}

/// Ordinary algebras over prime fields.
pub fn ordinary_algebras() -> Result<Vec<(String, Arc<DGAlgebra>)>> {
    let mut out = Vec::new();
    for p in [2, 3] {
        let f = FieldSpec::prime(p)?;
        out.push((format!("F{p}"), Arc::new(DGAlgebra::ground(f))));
        out.push((format!("F{p}[e]"), Arc::new(DGAlgebra::dual_numbers(f))));
        out.push((format!("T2(F{p})"), Arc::new(DGAlgebra::upper_triangular(f, 2))));
        out.push((format!("M2(F{p})"), Arc::new(DGAlgebra::matrix_algebra(f, 2))));
    }
    Ok(out)
}

/// A map for the fiber sequence, with the generators when the source is free.
pub struct MapInstance {
    pub name: String,
    pub phi: AlgebraMap,
    pub generators: Option<ChainComplex>,
}

/// Free sources, ordinary sources and shifted square-zero targets.
pub fn theorem_b_maps(field: FieldSpec) -> Result<Vec<MapInstance>> {
    let k = Arc::new(DGAlgebra::ground(field));
    let eps = Arc::new(DGAlgebra::dual_numbers(field));
    let su = Arc::new(DGAlgebra::square_zero_class(field, -1));
    let mut out = Vec::new();
    for deg in [1, 2] {
        let r = free_one(field, deg);
        out.push(MapInstance {
            name: format!("k<x{deg}> -> k[e]"),
            phi: augmentation(&r, &eps)?,
            generators: Some(one_generator(field, deg)),
        });
    }
    out.push(MapInstance { name: "k -> k[e]".into(), phi: AlgebraMap::unit_map(&eps), generators: None });
    out.push(MapInstance { name: "id k[e]".into(), phi: AlgebraMap::identity(&eps), generators: None });
    out.push(MapInstance { name: "k[e] -> k".into(), phi: augmentation(&eps, &k)?, generators: None });
    // k ⊕ Σ^m k for m = 1, 2
    for m in [1, 2] {
        let sh = DGBimodule::regular(&k).suspend(m);
        let s = Arc::new(square_zero_extension(&k, &sh)?);
        out.push(MapInstance { name: format!("k -> k+S^{m}k"), phi: AlgebraMap::unit_map(&s), generators: None });
    }
    out.push(MapInstance { name: "id k+Su".into(), phi: AlgebraMap::identity(&su), generators: None });
    Ok(out)
}

/// Coefficient bimodules `R` and `R ⊕ R` for the square-zero checks.
pub fn lemma_c_coefficients(r: &Arc<DGAlgebra>) -> Result<Vec<(String, DGBimodule)>> {
    let reg = DGBimodule::regular(r);
    Ok(vec![("R".into(), reg.clone()), ("R+R".into(), reg.direct_sum(&reg)?)])
}

/// The two strict algebras with invertible point used for `F(S) ≅ S` and
/// the ideal generation check.
pub fn strict_points(field: FieldSpec) -> Vec<(String, Arc<DGAlgebra>)> {
    vec![
        ("k[e]".into(), Arc::new(DGAlgebra::dual_numbers(field))),
        ("k+Su".into(), Arc::new(DGAlgebra::square_zero_class(field, -1))),
    ]
}
