use std::collections::{BTreeMap, HashSet};

use num::{BigInt, BigRational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;

use crate::algebra::{vars, CycNum, CycloField, Matrix, Mono, Poly, Vars};
use crate::symmetry::{closure, BiMoebius, GroupElement, ProjMap, TrigonalMap, DEFAULT_GROUP_CAP};

use super::model::{biform_vars, binary_vars, invariance, plane_vars, smoothness_check, Model, Smoothness};
use super::CurveError;

static SHIPPED: &str = include_str!("../../data/catalog.json");

/// Retry budget for `instantiate_moduli`.
pub const DEFAULT_RETRIES: usize = 32;
/// Bound on numerators and denominators of random moduli.
pub const MODULI_BOUND: i64 = 7;

/// A coefficient: a sum of field constants times Laurent monomials in the named moduli.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coef {
    terms: Vec<(CycNum, BTreeMap<String, i32>)>,
}

impl Coef {
    pub fn constant(c: CycNum) -> Coef {
        Coef { terms: vec![(c, BTreeMap::new())] }
    }

    pub fn params(&self) -> impl Iterator<Item = &String> {
        self.terms.iter().flat_map(|(_, m)| m.keys())
    }

    pub fn eval(&self, moduli: &BTreeMap<String, CycNum>) -> Result<CycNum, CurveError> {
        let k = CycloField::default_field();
        let mut acc = k.zero();
        for (c, mono) in &self.terms {
            let mut t = c.clone();
            for (name, &e) in mono {
                let v = moduli.get(name).ok_or_else(|| CurveError::FreeParameter(name.clone()))?;
                if e < 0 && v.is_zero() {
                    return Err(CurveError::Degenerate(format!("{name} = 0 in a denominator")));
                }
                t = &t * &v.pow(e as i64);
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }
}

/// One step of a plane Cremona map: a collineation, or the standard quadratic transformation
/// based at three of the marked points (by index).
#[derive(Clone, Debug)]
pub enum CremonaStep {
    Collineation(Matrix<CycNum>),
    Quadratic([usize; 3]),
}

/// A listed generator: a group element, or a birational map of a plane model given as a
/// composition of steps (applied first to last).
#[derive(Clone, Debug)]
pub enum Generator {
    Element(GroupElement),
    Cremona(Vec<CremonaStep>),
}

#[derive(Clone, Debug, Default, Deserialize)]
pub struct Expected {
    pub order: usize,
    #[serde(rename = "type")]
    pub type_name: String,
    #[serde(default)]
    pub histogram: Option<BTreeMap<u64, usize>>,
    #[serde(default)]
    pub quotient_genus: Option<u32>,
    #[serde(default)]
    pub moduli_count: Option<u32>,
    #[serde(default)]
    pub notes: String,
    /// isolated fixed points of the listed generator with this index
    #[serde(default)]
    pub fixed_points: BTreeMap<usize, usize>,
    /// genus of the quotient by the cyclic group of the listed generator with this index
    #[serde(default)]
    pub cyclic_quotient_genus: BTreeMap<usize, u32>,
    /// order of the group induced on the base line (hyperelliptic models)
    #[serde(default)]
    pub moebius_order: Option<usize>,
}

/// Hyperplanes permuted by the group, with the expected image and kernel orders.
#[derive(Clone, Debug)]
pub struct BlockData {
    pub hyperplanes: Vec<Vec<CycNum>>,
    pub image_order: usize,
    pub kernel_order: usize,
}

#[derive(Clone, Debug, Default)]
pub struct Extras {
    /// factors of the degenerate-quadric discriminant of a net, as forms in (l1, l2, l3)
    pub delta5_factors: Vec<Poly<CycNum>>,
    pub polar_triangle: bool,
    pub split_case: Option<u32>,
    pub split_count: Option<usize>,
    pub blocks: Option<BlockData>,
}

/// Symbolic form: terms with exponent vectors and coefficient expressions.
#[derive(Clone, Debug)]
struct FormSpec {
    vars: Vars,
    terms: Vec<(Mono, Coef)>,
}

impl FormSpec {
    fn eval(&self, m: &BTreeMap<String, CycNum>) -> Result<Poly<CycNum>, CurveError> {
        let mut p = Poly::zero(self.vars.clone(), CycloField::default_field());
        for (e, c) in &self.terms {
            p.add_term(e.clone(), c.eval(m)?);
        }
        Ok(p)
    }
}

type MatSpec = Vec<Vec<Coef>>;

fn eval_matrix(m: &MatSpec, moduli: &BTreeMap<String, CycNum>) -> Result<Matrix<CycNum>, CurveError> {
    let rows = m.iter().map(|r| r.iter().map(|c| c.eval(moduli)).collect::<Result<Vec<_>, _>>()).collect::<Result<_, _>>()?;
    Ok(Matrix::from_rows(rows))
}

#[derive(Clone, Debug)]
enum ModelSpec {
    BiForm33(FormSpec),
    Trigonal { f4: FormSpec, f6: FormSpec },
    QuadricNet([MatSpec; 3]),
    SpaceQC { q: FormSpec, c: FormSpec },
    PlaneNodal { f: FormSpec, marked: Vec<(Vec<Coef>, u32)> },
    HyperBranch(FormSpec),
}

#[derive(Clone, Debug)]
enum GenSpec {
    Proj(MatSpec),
    Bi { a: MatSpec, b: MatSpec, swap: bool },
    Tri { a: MatSpec, c: Coef, weight: u32 },
    Cremona(Vec<StepSpec>),
}

#[derive(Clone, Debug)]
enum StepSpec {
    Collineation(MatSpec),
    Quadratic([usize; 3]),
}

/// One catalog record. Coefficients may depend on the free parameters in `params`; the
/// model and generators are evaluated at `moduli`.
#[derive(Clone, Debug)]
pub struct CurveEntry {
    pub id: String,
    pub genus: u32,
    pub paper_ref: String,
    pub params: Vec<String>,
    pub moduli: BTreeMap<String, CycNum>,
    pub expected: Expected,
    pub extras: Extras,
    model: ModelSpec,
    generators: Vec<GenSpec>,
}

impl CurveEntry {
    /// Whether every free parameter has a value.
    pub fn is_instantiated(&self) -> bool {
        self.params.iter().all(|p| self.moduli.contains_key(p))
    }

    pub fn with_moduli(&self, moduli: BTreeMap<String, CycNum>) -> CurveEntry {
        CurveEntry { moduli, ..self.clone() }
    }

    pub fn model(&self) -> Result<Model, CurveError> {
        let m = &self.moduli;
        match &self.model {
            ModelSpec::BiForm33(f) => Model::biform33(f.eval(m)?),
            ModelSpec::Trigonal { f4, f6 } => Model::trigonal(f4.eval(m)?, f6.eval(m)?),
            ModelSpec::QuadricNet(a) => {
                Model::quadric_net([eval_matrix(&a[0], m)?, eval_matrix(&a[1], m)?, eval_matrix(&a[2], m)?])
            }
            ModelSpec::SpaceQC { q, c } => Model::space_qc(q.eval(m)?, c.eval(m)?),
            ModelSpec::PlaneNodal { f, marked } => {
                let pts = marked
                    .iter()
                    .map(|(p, k)| Ok((p.iter().map(|c| c.eval(m)).collect::<Result<Vec<_>, _>>()?, *k)))
                    .collect::<Result<Vec<_>, CurveError>>()?;
                Model::plane_nodal(f.eval(m)?, pts)
            }
            ModelSpec::HyperBranch(b) => Model::hyper_branch(b.eval(m)?),
        }
    }

    pub fn generators(&self) -> Result<Vec<Generator>, CurveError> {
        let m = &self.moduli;
        self.generators
            .iter()
            .map(|g| {
                Ok(match g {
                    GenSpec::Proj(a) => Generator::Element(GroupElement::Proj(ProjMap::new(eval_matrix(a, m)?)?)),
                    GenSpec::Bi { a, b, swap } => Generator::Element(GroupElement::Bi(BiMoebius::new(
                        eval_matrix(a, m)?,
                        eval_matrix(b, m)?,
                        *swap,
                    )?)),
                    GenSpec::Tri { a, c, weight } => Generator::Element(GroupElement::Tri(TrigonalMap::new(
                        eval_matrix(a, m)?,
                        c.eval(m)?,
                        *weight,
                    )?)),
                    GenSpec::Cremona(steps) => Generator::Cremona(
                        steps
                            .iter()
                            .map(|s| {
                                Ok(match s {
                                    StepSpec::Collineation(a) => CremonaStep::Collineation(eval_matrix(a, m)?),
                                    StepSpec::Quadratic(t) => CremonaStep::Quadratic(*t),
                                })
                            })
                            .collect::<Result<_, CurveError>>()?,
                    ),
                })
            })
            .collect()
    }

    /// The generators, all of which must be group elements.
    pub fn group_generators(&self) -> Result<Vec<GroupElement>, CurveError> {
        self.generators()?
            .into_iter()
            .map(|g| match g {
                Generator::Element(e) => Ok(e),
                Generator::Cremona(_) => Err(CurveError::InvalidModel(format!("{}: generator is a Cremona map", self.id))),
            })
            .collect()
    }
}

// ---- file format ----

type RawLit = Vec<(i64, i64, i64)>;

#[derive(Deserialize)]
#[serde(untagged)]
enum RawCoef {
    Lit(RawLit),
    Sum { sum: Vec<RawSumTerm> },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSumTerm {
    c: RawLit,
    #[serde(default)]
    p: BTreeMap<String, i32>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTerm {
    e: Vec<u32>,
    c: RawCoef,
}

type RawMat = Vec<Vec<RawCoef>>;

#[derive(Deserialize)]
struct RawMarked {
    point: Vec<RawCoef>,
    mult: u32,
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum RawModel {
    Biform33 { terms: Vec<RawTerm> },
    Trigonal { f4: Vec<RawTerm>, f6: Vec<RawTerm> },
    QuadricNet { quadrics: Vec<RawMat> },
    SpaceQc { vars: Vec<String>, quadric: Vec<RawTerm>, cubic: Vec<RawTerm> },
    PlaneNodal { terms: Vec<RawTerm>, #[serde(default)] marked: Vec<RawMarked> },
    HyperBranch { terms: Vec<RawTerm> },
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawStep {
    Collineation { collineation: RawMat },
    Quadratic { quadratic: [usize; 3] },
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum RawGen {
    Projmap { m: RawMat },
    Bimoebius { a: RawMat, b: RawMat, #[serde(default)] swap: bool },
    Trigonal { a: RawMat, c: RawCoef, weight: u32 },
    Cremona { steps: Vec<RawStep> },
}

#[derive(Deserialize)]
struct RawBlocks {
    hyperplanes: Vec<Vec<RawCoef>>,
    image_order: usize,
    kernel_order: usize,
}

#[derive(Deserialize, Default)]
struct RawExtras {
    #[serde(default)]
    delta5_factors: Vec<Vec<RawTerm>>,
    #[serde(default)]
    polar_triangle: bool,
    #[serde(default)]
    split_case: Option<u32>,
    #[serde(default)]
    split_count: Option<usize>,
    #[serde(default)]
    blocks: Option<RawBlocks>,
}

#[derive(Deserialize)]
struct RawEntry {
    id: String,
    genus: u32,
    #[serde(default)]
    paper_ref: String,
    #[serde(default)]
    params: Vec<String>,
    #[serde(default)]
    moduli: BTreeMap<String, RawLit>,
    model: serde_json::Value,
    generators: Vec<serde_json::Value>,
    expected: Expected,
    #[serde(default)]
    extras: Option<RawExtras>,
}

#[derive(Deserialize)]
struct RawCatalog {
    field_index: u32,
    entries: Vec<serde_json::Value>,
}

/// Converts file literals into the session field.
struct Loader {
    index: u32,
    id: String,
    params: Vec<String>,
}

impl Loader {
    fn err(&self, path: &str, msg: impl Into<String>) -> CurveError {
        CurveError::Load { id: self.id.clone(), path: path.to_string(), msg: msg.into() }
    }

    fn lit(&self, raw: &RawLit, path: &str) -> Result<CycNum, CurveError> {
        let k = CycloField::default_field();
        let n = k.index();
        if n % self.index != 0 {
            return Err(self.err(path, format!("zeta_{} does not embed into Q(zeta_{n})", self.index)));
        }
        let step = (n / self.index) as i64;
        let mut acc = k.zero();
        for &(pw, num, den) in raw {
            if den == 0 {
                return Err(self.err(path, "zero denominator"));
            }
            let r = BigRational::new(BigInt::from(num), BigInt::from(den));
            acc = &acc + &(&k.rational(&r) * &k.zeta_pow(pw * step));
        }
        Ok(acc)
    }

    fn coef(&self, raw: &RawCoef, path: &str) -> Result<Coef, CurveError> {
        match raw {
            RawCoef::Lit(l) => Ok(Coef::constant(self.lit(l, path)?)),
            RawCoef::Sum { sum } => {
                let mut terms = Vec::new();
                for (i, t) in sum.iter().enumerate() {
                    for name in t.p.keys() {
                        if !self.params.contains(name) {
                            return Err(self.err(&format!("{path}.sum[{i}]"), format!("undeclared parameter {name}")));
                        }
                    }
                    terms.push((self.lit(&t.c, &format!("{path}.sum[{i}]"))?, t.p.clone()));
                }
                Ok(Coef { terms })
            }
        }
    }

    fn form(&self, raw: &[RawTerm], vs: Vars, path: &str) -> Result<FormSpec, CurveError> {
        let mut terms = Vec::new();
        for (i, t) in raw.iter().enumerate() {
            let p = format!("{path}[{i}]");
            if t.e.len() != vs.len() {
                return Err(self.err(&p, format!("exponent vector of length {}, expected {}", t.e.len(), vs.len())));
            }
            terms.push((t.e.clone(), self.coef(&t.c, &p)?));
        }
        Ok(FormSpec { vars: vs, terms })
    }

    fn matrix(&self, raw: &RawMat, path: &str) -> Result<MatSpec, CurveError> {
        let cols = raw.first().map_or(0, |r| r.len());
        if raw.is_empty() || raw.iter().any(|r| r.len() != cols) {
            return Err(self.err(path, "ragged or empty matrix"));
        }
        raw.iter()
            .enumerate()
            .map(|(i, r)| r.iter().enumerate().map(|(j, c)| self.coef(c, &format!("{path}[{i}][{j}]"))).collect())
            .collect()
    }

    fn model(&self, v: serde_json::Value) -> Result<ModelSpec, CurveError> {
        let raw: RawModel = serde_json::from_value(v).map_err(|e| self.err("model", e.to_string()))?;
        Ok(match raw {
            RawModel::Biform33 { terms } => ModelSpec::BiForm33(self.form(&terms, biform_vars(), "model.terms")?),
            RawModel::Trigonal { f4, f6 } => ModelSpec::Trigonal {
                f4: self.form(&f4, binary_vars(), "model.f4")?,
                f6: self.form(&f6, binary_vars(), "model.f6")?,
            },
            RawModel::QuadricNet { quadrics } => {
                if quadrics.len() != 3 {
                    return Err(self.err("model.quadrics", "a net has three quadrics"));
                }
                let m = |i: usize| self.matrix(&quadrics[i], &format!("model.quadrics[{i}]"));
                ModelSpec::QuadricNet([m(0)?, m(1)?, m(2)?])
            }
            RawModel::SpaceQc { vars: names, quadric, cubic } => {
                let vs = vars(&names.iter().map(|s| s.as_str()).collect::<Vec<_>>());
                ModelSpec::SpaceQC {
                    q: self.form(&quadric, vs.clone(), "model.quadric")?,
                    c: self.form(&cubic, vs, "model.cubic")?,
                }
            }
            RawModel::PlaneNodal { terms, marked } => {
                let mut pts = Vec::new();
                for (i, mk) in marked.iter().enumerate() {
                    let p = mk
                        .point
                        .iter()
                        .enumerate()
                        .map(|(j, c)| self.coef(c, &format!("model.marked[{i}].point[{j}]")))
                        .collect::<Result<Vec<_>, _>>()?;
                    pts.push((p, mk.mult));
                }
                ModelSpec::PlaneNodal { f: self.form(&terms, plane_vars(), "model.terms")?, marked: pts }
            }
            RawModel::HyperBranch { terms } => {
                ModelSpec::HyperBranch(self.form(&terms, vars(&["x", "z"]), "model.terms")?)
            }
        })
    }

    fn generator(&self, v: serde_json::Value, i: usize) -> Result<GenSpec, CurveError> {
        let path = format!("generators[{i}]");
        let raw: RawGen = serde_json::from_value(v).map_err(|e| self.err(&path, e.to_string()))?;
        Ok(match raw {
            RawGen::Projmap { m } => GenSpec::Proj(self.matrix(&m, &format!("{path}.m"))?),
            RawGen::Bimoebius { a, b, swap } => GenSpec::Bi {
                a: self.matrix(&a, &format!("{path}.a"))?,
                b: self.matrix(&b, &format!("{path}.b"))?,
                swap,
            },
            RawGen::Trigonal { a, c, weight } => GenSpec::Tri {
                a: self.matrix(&a, &format!("{path}.a"))?,
                c: self.coef(&c, &format!("{path}.c"))?,
                weight,
            },
            RawGen::Cremona { steps } => GenSpec::Cremona(
                steps
                    .iter()
                    .enumerate()
                    .map(|(j, s)| {
                        Ok(match s {
                            RawStep::Collineation { collineation } => {
                                StepSpec::Collineation(self.matrix(collineation, &format!("{path}.steps[{j}]"))?)
                            }
                            RawStep::Quadratic { quadratic } => StepSpec::Quadratic(*quadratic),
                        })
                    })
                    .collect::<Result<_, CurveError>>()?,
            ),
        })
    }

    fn extras(&self, raw: RawExtras) -> Result<Extras, CurveError> {
        let lv = vars(&["l1", "l2", "l3"]);
        let none = BTreeMap::new();
        let delta5_factors = raw
            .delta5_factors
            .iter()
            .enumerate()
            .map(|(i, f)| self.form(f, lv.clone(), &format!("extras.delta5_factors[{i}]"))?.eval(&none))
            .collect::<Result<_, _>>()?;
        let blocks = match raw.blocks {
            None => None,
            Some(b) => Some(BlockData {
                hyperplanes: b
                    .hyperplanes
                    .iter()
                    .enumerate()
                    .map(|(i, h)| {
                        h.iter()
                            .map(|c| self.coef(c, &format!("extras.blocks.hyperplanes[{i}]"))?.eval(&none))
                            .collect::<Result<Vec<_>, _>>()
                    })
                    .collect::<Result<_, _>>()?,
                image_order: b.image_order,
                kernel_order: b.kernel_order,
            }),
        };
        Ok(Extras {
            delta5_factors,
            polar_triangle: raw.polar_triangle,
            split_case: raw.split_case,
            split_count: raw.split_count,
            blocks,
        })
    }
}

fn load_entry(index: u32, v: serde_json::Value, pos: usize) -> Result<CurveEntry, CurveError> {
    let id_hint = v.get("id").and_then(|x| x.as_str()).unwrap_or("?").to_string();
    let raw: RawEntry = serde_json::from_value(v)
        .map_err(|e| CurveError::Load { id: id_hint.clone(), path: format!("entries[{pos}]"), msg: e.to_string() })?;
    let ld = Loader { index, id: raw.id.clone(), params: raw.params.clone() };
    if raw.expected.order == 0 {
        return Err(ld.err("expected.order", "order must be at least 1"));
    }
    let mut moduli = BTreeMap::new();
    for (name, lit) in &raw.moduli {
        if !raw.params.contains(name) {
            return Err(ld.err(&format!("moduli.{name}"), "not a declared parameter"));
        }
        moduli.insert(name.clone(), ld.lit(lit, &format!("moduli.{name}"))?);
    }
    let model = ld.model(raw.model)?;
    let generators = raw
        .generators
        .into_iter()
        .enumerate()
        .map(|(i, g)| ld.generator(g, i))
        .collect::<Result<Vec<_>, _>>()?;
    if generators.is_empty() {
        return Err(ld.err("generators", "at least one generator is required"));
    }
    let kind_ok = generators.iter().all(|g| match (&model, g) {
        (ModelSpec::BiForm33(_), GenSpec::Bi { .. }) => true,
        (ModelSpec::Trigonal { .. } | ModelSpec::HyperBranch(_), GenSpec::Tri { .. }) => true,
        (ModelSpec::QuadricNet(_) | ModelSpec::SpaceQC { .. } | ModelSpec::PlaneNodal { .. }, GenSpec::Proj(_)) => true,
        (ModelSpec::PlaneNodal { .. }, GenSpec::Cremona(_)) => true,
        _ => false,
    });
    if !kind_ok {
        return Err(ld.err("generators", "generator kind does not match the model"));
    }
    let extras = ld.extras(raw.extras.unwrap_or_default())?;
    Ok(CurveEntry {
        id: raw.id,
        genus: raw.genus,
        paper_ref: raw.paper_ref,
        params: raw.params,
        moduli,
        expected: raw.expected,
        extras,
        model,
        generators,
    })
}

/// Parse and validate a catalog file.
pub fn load_catalog(bytes: &[u8]) -> Result<Vec<CurveEntry>, CurveError> {
    let raw: RawCatalog = serde_json::from_slice(bytes)
        .map_err(|e| CurveError::Load { id: String::new(), path: String::new(), msg: e.to_string() })?;
    let mut seen = HashSet::new();
    let mut out = Vec::with_capacity(raw.entries.len());
    for (i, v) in raw.entries.into_iter().enumerate() {
        let e = load_entry(raw.field_index, v, i)?;
        if !seen.insert(e.id.clone()) {
            return Err(CurveError::Load { id: e.id, path: format!("entries[{i}].id"), msg: "duplicate id".into() });
        }
        out.push(e);
    }
    Ok(out)
}

/// The catalog compiled into the library.
pub fn shipped_catalog() -> Result<Vec<CurveEntry>, CurveError> {
    load_catalog(SHIPPED.as_bytes())
}

fn random_small(rng: &mut ChaCha8Rng) -> CycNum {
    let k = CycloField::default_field();
    let mut num = 0;
    while num == 0 {
        num = rng.gen_range(-MODULI_BOUND..=MODULI_BOUND);
    }
    let den = rng.gen_range(1..=MODULI_BOUND);
    k.rational(&BigRational::new(num.into(), den.into()))
}

/// Checks a candidate instance: smooth (or pending a probe), every group generator
/// invariant, and the generated group no larger than expected.
fn acceptable(entry: &CurveEntry) -> Result<(), CurveError> {
    let model = entry.model()?;
    if let Smoothness::Singular(w) = smoothness_check(&model) {
        return Err(CurveError::Degenerate(w));
    }
    let gens: Vec<GroupElement> = entry
        .generators()?
        .into_iter()
        .filter_map(|g| match g {
            Generator::Element(e) => Some(e),
            Generator::Cremona(_) => None,
        })
        .collect();
    for g in &gens {
        invariance(&model, g)?;
    }
    if !gens.is_empty() {
        let grp = closure(&gens, DEFAULT_GROUP_CAP)?;
        if grp.order() > entry.expected.order {
            return Err(CurveError::Degenerate(format!("group of order {} exceeds the expected {}", grp.order(), entry.expected.order)));
        }
    }
    Ok(())
}

/// Replace the free parameters by seeded random small rationals, retrying until the
/// instance is acceptable.
pub fn instantiate_moduli(entry: &CurveEntry, seed: u64) -> Result<CurveEntry, CurveError> {
    instantiate_with(entry, seed, DEFAULT_RETRIES, |_| true)
}

/// As `instantiate_moduli`, with a retry budget and an extra filter on candidate values.
pub fn instantiate_with(
    entry: &CurveEntry,
    seed: u64,
    retries: usize,
    filter: impl Fn(&BTreeMap<String, CycNum>) -> bool,
) -> Result<CurveEntry, CurveError> {
    if entry.params.is_empty() {
        acceptable(entry)?;
        return Ok(entry.clone());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut last = String::new();
    for _ in 0..retries {
        let mut m = entry.moduli.clone();
        for p in &entry.params {
            m.insert(p.clone(), random_small(&mut rng));
        }
        if !filter(&m) {
            last = "rejected by filter".into();
            continue;
        }
        let cand = entry.with_moduli(m);
        match acceptable(&cand) {
            Ok(()) => return Ok(cand),
            Err(e) => last = e.to_string(),
        }
    }
    Err(CurveError::DegenerateFamily { id: entry.id.clone(), retries, last })
}
