//! Input documents and the environment of named objects they declare.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use dga_core::algebra::{AlgebraMap, DGAlgebra, DGBimodule, PointedBimodule};
use dga_core::{suite, ChainComplex, DgaError, FieldSpec, Result, SparseVec};

#[derive(Clone, Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    pub field: Value,
    #[serde(default)]
    pub modules: BTreeMap<String, ModuleDoc>,
    #[serde(default)]
    pub algebras: BTreeMap<String, AlgebraDoc>,
    #[serde(default)]
    pub bimodules: BTreeMap<String, BimoduleDoc>,
    #[serde(default)]
    pub maps: BTreeMap<String, MapDoc>,
    #[serde(default)]
    pub jobs: Vec<JobDoc>,
}

#[derive(Clone, Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleDoc {
    pub degrees: BTreeMap<String, usize>,
    #[serde(default)]
    pub d: BTreeMap<String, Vec<Vec<Value>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

/// Structure constants `[i, j, coefficients]`.
pub type Table = Vec<(usize, usize, Vec<Value>)>;

#[derive(Clone, Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub builtin: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<i32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_len: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub module: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degrees: Option<BTreeMap<String, usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<BTreeMap<String, Vec<Vec<Value>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mult: Option<Table>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

#[derive(Clone, Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct BimoduleDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub builtin: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub left: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub right: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub of: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub left_map: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub right_map: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub by: Option<i32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub module: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degrees: Option<BTreeMap<String, usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<BTreeMap<String, Vec<Vec<Value>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lact: Option<Table>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ract: Option<Table>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

#[derive(Clone, Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct MapDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub builtin: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub images: Option<Vec<Vec<Value>>>,
}

/// One requested computation. Unused fields are ignored by the operation.
#[derive(Clone, Debug, Default, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct JobDoc {
    pub op: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub module: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bimodule: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point: Option<Vec<Value>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub map: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degrees: Option<[i32; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<i32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cutoff: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_len: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_poly: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stabilize: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub with_z: Option<bool>,
}

pub fn parse_document(text: &str) -> std::result::Result<Document, String> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| format!("at `{}`: {}", e.path(), e.inner()))
}

pub fn parse_field(v: &Value) -> Result<FieldSpec> {
    let bad = || DgaError::Validation(format!("field: expected \"Q\", \"F<p>\" or a prime, got {v}"));
    match v {
        Value::String(s) => match s.as_str() {
            "Q" | "QQ" | "rationals" => Ok(FieldSpec::Rationals),
            s => {
                let p = s.trim_start_matches('F').trim_start_matches('_');
                FieldSpec::prime(p.parse().map_err(|_| bad())?)
            }
        },
        Value::Number(n) => match n.as_u64() {
            Some(0) => Ok(FieldSpec::Rationals),
            Some(p) => FieldSpec::prime(u32::try_from(p).map_err(|_| bad())?),
            None => Err(bad()),
        },
        _ => Err(bad()),
    }
}

/// Validated objects, read-only once built.
pub struct Environment {
    pub field: FieldSpec,
    pub modules: BTreeMap<String, ChainComplex>,
    pub algebras: BTreeMap<String, Arc<DGAlgebra>>,
    pub bimodules: BTreeMap<String, DGBimodule>,
    pub maps: BTreeMap<String, AlgebraMap>,
}

fn at(path: &str, e: DgaError) -> DgaError {
    match e {
        DgaError::Validation(m) => DgaError::Validation(format!("{path}: {m}")),
        DgaError::Precondition(m) => DgaError::Validation(format!("{path}: {m}")),
        other => other,
    }
}

pub fn scalar(f: FieldSpec, v: &Value, path: &str) -> Result<dga_core::Scalar> {
    match v {
        Value::String(s) => f.parse(s).map_err(|e| at(path, e)),
        Value::Number(n) => n
            .as_i64()
            .map(|i| f.from_i64(i))
            .ok_or_else(|| DgaError::Validation(format!("{path}: expected an integer or \"p/q\""))),
        _ => Err(DgaError::Validation(format!("{path}: expected a scalar"))),
    }
}

pub fn vector(f: FieldSpec, vs: &[Value], len: usize, path: &str) -> Result<SparseVec> {
    if vs.len() != len {
        return Err(DgaError::Validation(format!("{path}: expected {len} coefficients, got {}", vs.len())));
    }
    let pairs = vs
        .iter()
        .enumerate()
        .map(|(i, v)| Ok((i, scalar(f, v, &format!("{path}[{i}]"))?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(SparseVec::from_pairs(f, pairs))
}

/// Basis degrees sorted ascending, and global differential images.
type Graded = (Vec<i32>, Vec<SparseVec>);

fn graded(
    f: FieldSpec,
    degrees: &BTreeMap<String, usize>,
    d: &BTreeMap<String, Vec<Vec<Value>>>,
    path: &str,
) -> Result<Graded> {
    let mut dims = BTreeMap::new();
    for (k, &n) in degrees {
        let deg: i32 = k.parse().map_err(|_| DgaError::Validation(format!("{path}.degrees: bad degree key {k:?}")))?;
        dims.insert(deg, n);
    }
    let degs: Vec<i32> = dims.iter().flat_map(|(&deg, &n)| std::iter::repeat_n(deg, n)).collect();
    let offset = |deg: i32| dims.range(..deg).map(|(_, n)| n).sum::<usize>();
    let mut images = vec![SparseVec::new(); degs.len()];
    for (k, rows) in d {
        let p = format!("{path}.d.{k}");
        let deg: i32 = k.parse().map_err(|_| DgaError::Validation(format!("{p}: bad degree key")))?;
        let (src, tgt) = (dims.get(&deg).copied().unwrap_or(0), dims.get(&(deg + 1)).copied().unwrap_or(0));
        if rows.len() != tgt || rows.iter().any(|r| r.len() != src) {
            return Err(DgaError::Validation(format!("{p}: expected a {tgt}x{src} matrix")));
        }
        let (so, to) = (offset(deg), offset(deg + 1));
        for (i, row) in rows.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                let c = scalar(f, v, &format!("{p}[{i}][{j}]"))?;
                let e = SparseVec::from_pairs(f, [(to + i, c)]);
                images[so + j] = images[so + j].add(f, &e);
            }
        }
    }
    Ok((degs, images))
}

fn table(f: FieldSpec, t: &Table, len: usize, path: &str) -> Result<Vec<((usize, usize), SparseVec)>> {
    let mut seen = std::collections::BTreeSet::new();
    if let Some(k) = t.iter().position(|(i, j, _)| !seen.insert((*i, *j))) {
        return Err(DgaError::Validation(format!("{path}[{k}]: duplicate entry ({}, {})", t[k].0, t[k].1)));
    }
    t.iter()
        .enumerate()
        .map(|(k, (i, j, c))| Ok(((*i, *j), vector(f, c, len, &format!("{path}[{k}]"))?)))
        .collect()
}

fn missing(path: &str, field: &str) -> DgaError {
    DgaError::Validation(format!("{path}: missing `{field}`"))
}

impl Environment {
    pub fn build(doc: &Document) -> Result<Environment> {
        let field = parse_field(&doc.field)?;
        let mut env = Environment {
            field,
            modules: BTreeMap::new(),
            algebras: BTreeMap::new(),
            bimodules: BTreeMap::new(),
            maps: BTreeMap::new(),
        };
        for (name, m) in &doc.modules {
            let p = format!("modules.{name}");
            let (degs, images) = graded(field, &m.degrees, &m.d, &p)?;
            let c = ChainComplex::from_global(field, &degs, &images).map_err(|e| at(&p, e))?;
            env.modules.insert(name.clone(), c);
        }
        for (name, a) in &doc.algebras {
            let p = format!("algebras.{name}");
            let alg = env.algebra_from_doc(a, &p).map_err(|e| at(&p, e))?;
            env.algebras.insert(name.clone(), Arc::new(alg));
        }
        for (name, m) in &doc.maps {
            let p = format!("maps.{name}");
            let map = env.map_from_doc(m, &p).map_err(|e| at(&p, e))?;
            env.maps.insert(name.clone(), map);
        }
        // bimodules may refer to each other; resolve in dependency order
        let mut pending: Vec<(&String, &BimoduleDoc)> = doc.bimodules.iter().collect();
        while !pending.is_empty() {
            let before = pending.len();
            let mut rest = Vec::new();
            for (name, b) in pending {
                if b.of.iter().all(|o| env.bimodule(o).is_ok()) {
                    let p = format!("bimodules.{name}");
                    let m = env.bimodule_from_doc(b, &p).map_err(|e| at(&p, e))?;
                    env.bimodules.insert(name.clone(), m);
                } else {
                    rest.push((name, b));
                }
            }
            if rest.len() == before {
                let names: Vec<_> = rest.iter().map(|(n, _)| n.as_str()).collect();
                return Err(DgaError::Validation(format!("bimodules: unresolved references in {names:?}")));
            }
            pending = rest;
        }
        Ok(env)
    }

    /// A declared algebra, or a builtin spelled `name` or `name:arg`.
    pub fn algebra(&self, name: &str) -> Result<Arc<DGAlgebra>> {
        if let Some(a) = self.algebras.get(name) {
            return Ok(a.clone());
        }
        let (b, arg) = match name.split_once(':') {
            Some((b, a)) => {
                let v: i32 = a.parse().map_err(|_| DgaError::Validation(format!("bad builtin argument in {name:?}")))?;
                (b, Some(v))
            }
            None => (name, None),
        };
        let doc = AlgebraDoc {
            builtin: Some(b.to_string()),
            degree: arg,
            n: arg.map(|v| v.max(0) as usize),
            ..Default::default()
        };
        self.algebra_from_doc(&doc, name).map(Arc::new)
    }

    pub fn bimodule(&self, name: &str) -> Result<DGBimodule> {
        if let Some(m) = self.bimodules.get(name) {
            return Ok(m.clone());
        }
        // an algebra name stands for its regular bimodule
        self.algebra(name)
            .map(|a| DGBimodule::regular(&a))
            .map_err(|_| DgaError::Validation(format!("unknown bimodule {name:?}")))
    }

    /// A declared map, or `unit:S`, `identity:S`, `augmentation:R,S`.
    pub fn map(&self, name: &str) -> Result<AlgebraMap> {
        if let Some(m) = self.maps.get(name) {
            return Ok(m.clone());
        }
        let unknown = || DgaError::Validation(format!("unknown map {name:?}"));
        let (kind, arg) = name.split_once(':').ok_or_else(unknown)?;
        match kind {
            "unit" => Ok(AlgebraMap::unit_map(&self.algebra(arg)?)),
            "identity" => Ok(AlgebraMap::identity(&self.algebra(arg)?)),
            "augmentation" => {
                let (s, t) = arg.split_once(',').ok_or_else(unknown)?;
                suite::augmentation(&self.algebra(s)?, &self.algebra(t)?)
            }
            _ => Err(unknown()),
        }
    }

    pub fn module(&self, name: &str) -> Result<ChainComplex> {
        self.modules.get(name).cloned().ok_or_else(|| DgaError::Validation(format!("unknown module {name:?}")))
    }

    /// A pointed bimodule: `bimodule` with `point`, or an algebra pointed by its unit.
    pub fn pointed(&self, bimodule: Option<&str>, point: Option<&[Value]>, algebra: Option<&str>) -> Result<PointedBimodule> {
        match (bimodule, algebra) {
            (Some(b), _) => {
                let m = self.bimodule(b)?;
                let p = match point {
                    Some(p) => vector(self.field, p, m.dim(), "point")?,
                    None => return Err(missing("job", "point")),
                };
                PointedBimodule::new(m, p)
            }
            (None, Some(a)) => Ok(PointedBimodule::from_algebra(&self.algebra(a)?)),
            (None, None) => Err(missing("job", "bimodule")),
        }
    }

    fn algebra_from_doc(&self, a: &AlgebraDoc, path: &str) -> Result<DGAlgebra> {
        let f = self.field;
        if let Some(b) = &a.builtin {
            let deg = || a.degree.ok_or_else(|| missing(path, "degree"));
            let n = || a.n.filter(|&n| n > 0).ok_or_else(|| missing(path, "n"));
            return Ok(match b.as_str() {
                "ground" => DGAlgebra::ground(f),
                "dual_numbers" => DGAlgebra::dual_numbers(f),
                "square_zero_class" => DGAlgebra::square_zero_class(f, deg()?),
                "matrix" => DGAlgebra::matrix_algebra(f, n()?),
                "upper_triangular" => DGAlgebra::upper_triangular(f, n()?),
                "contractible_pair" => DGAlgebra::contractible_pair(f),
                "free_one" => match a.max_len {
                    Some(l) => DGAlgebra::free_on_one(f, deg()?, l),
                    None => (*suite::free_one(f, deg()?)).clone(),
                },
                other => return Err(DgaError::Validation(format!("{path}: unknown builtin {other:?}"))),
            });
        }
        let (degs, images) = match (&a.module, &a.degrees) {
            (Some(m), _) => {
                let c = self.module(m)?;
                let degs = c.basis_degrees();
                let images = (0..degs.len()).map(|i| c.diff_global(&SparseVec::unit(i, f.one()))).collect();
                (degs, images)
            }
            (None, Some(d)) => graded(f, d, a.d.as_ref().unwrap_or(&BTreeMap::new()), path)?,
            (None, None) => return Err(missing(path, "degrees")),
        };
        let unit = a.unit.ok_or_else(|| missing(path, "unit"))?;
        if unit >= degs.len() {
            return Err(DgaError::Validation(format!("{path}.unit: index {unit} out of range")));
        }
        let mult = table(f, a.mult.as_ref().ok_or_else(|| missing(path, "mult"))?, degs.len(), &format!("{path}.mult"))?;
        DGAlgebra::new(f, degs, images, SparseVec::unit(unit, f.one()), mult, a.labels.clone())
    }

    fn map_from_doc(&self, m: &MapDoc, path: &str) -> Result<AlgebraMap> {
        let get = |o: &Option<String>, what: &str| -> Result<Arc<DGAlgebra>> {
            self.algebra(o.as_deref().ok_or_else(|| missing(path, what))?)
        };
        match m.builtin.as_deref() {
            Some("identity") => Ok(AlgebraMap::identity(&get(&m.source, "source")?)),
            Some("unit") => Ok(AlgebraMap::unit_map(&get(&m.target, "target")?)),
            Some("augmentation") => suite::augmentation(&get(&m.source, "source")?, &get(&m.target, "target")?),
            Some(other) => Err(DgaError::Validation(format!("{path}: unknown builtin {other:?}"))),
            None => {
                let (s, t) = (get(&m.source, "source")?, get(&m.target, "target")?);
                let images = m.images.as_ref().ok_or_else(|| missing(path, "images"))?;
                let images = images
                    .iter()
                    .enumerate()
                    .map(|(i, v)| vector(self.field, v, t.dim(), &format!("{path}.images[{i}]")))
                    .collect::<Result<Vec<_>>>()?;
                AlgebraMap::new(s, t, images)
            }
        }
    }

    fn bimodule_from_doc(&self, b: &BimoduleDoc, path: &str) -> Result<DGBimodule> {
        let alg = |o: &Option<String>, what: &str| self.algebra(o.as_deref().ok_or_else(|| missing(path, what))?);
        let of = |i: usize| -> Result<DGBimodule> {
            let n = b.of.get(i).ok_or_else(|| missing(path, "of"))?;
            self.bimodule(n)
        };
        let map = |o: &Option<String>| o.as_deref().map(|n| self.map(n)).transpose();
        match b.builtin.as_deref() {
            Some("regular") => Ok(DGBimodule::regular(&alg(&b.algebra, "algebra")?)),
            Some("free") => DGBimodule::free(&alg(&b.left, "left")?, &alg(&b.right, "right")?),
            Some("restrict") => of(0)?.restrict(map(&b.left_map)?.as_ref(), map(&b.right_map)?.as_ref()),
            Some("direct_sum") => of(0)?.direct_sum(&of(1)?),
            Some("suspend") => Ok(of(0)?.suspend(b.by.ok_or_else(|| missing(path, "by"))?)),
            Some("cone") => of(0)?.cone_of_identity(),
            Some("over_ground") => {
                let degrees = b.degrees.as_ref().ok_or_else(|| missing(path, "degrees"))?;
                let (degs, images) = graded(self.field, degrees, b.d.as_ref().unwrap_or(&BTreeMap::new()), path)?;
                DGBimodule::over_ground(self.field, degs, images, b.labels.clone())
            }
            Some(other) => Err(DgaError::Validation(format!("{path}: unknown builtin {other:?}"))),
            None => {
                let (l, r) = (alg(&b.left, "left")?, alg(&b.right, "right")?);
                let (degs, images) = match (&b.module, &b.degrees) {
                    (Some(m), _) => {
                        let c = self.module(m)?;
                        let degs = c.basis_degrees();
                        let images = (0..degs.len()).map(|i| c.diff_global(&SparseVec::unit(i, self.field.one()))).collect();
                        (degs, images)
                    }
                    (None, Some(d)) => graded(self.field, d, b.d.as_ref().unwrap_or(&BTreeMap::new()), path)?,
                    (None, None) => return Err(missing(path, "degrees")),
                };
                let n = degs.len();
                let empty = Vec::new();
                let lact = table(self.field, b.lact.as_ref().unwrap_or(&empty), n, &format!("{path}.lact"))?;
                let ract = table(self.field, b.ract.as_ref().unwrap_or(&empty), n, &format!("{path}.ract"))?;
                DGBimodule::new(l, r, degs, images, lact, ract, b.labels.clone())
            }
        }
    }
}
