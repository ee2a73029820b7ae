//! Finite-field reduction and point counting.
//!
//! Everything here is a cross-check. Counts are exact over the chosen finite field, but a
//! statement about the curve in characteristic zero drawn from them is evidence only.

mod fields;

pub use fields::{irreducible, pow_mod, Fp, Gf, GfCtx, GfSpec};

use num::{BigInt, Integer, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{Field, Matrix, Poly, Rational, UPoly};
use crate::curves::{invariance, CurveError, Model};
use crate::groebner::{affine_rational, chart, is_inconsistent, projective_rational, GroebnerError};
use crate::ramify::{fixed_point_system, RamifyError};
use crate::symmetry::{GroupElement, SymmetryError};
use crate::CycNum;

/// Default work budget for point counts, in fiber operations.
pub const DEFAULT_BUDGET: u128 = 1 << 40;

const PRIME_CAP: u64 = 1 << 31;

#[derive(Debug, Error)]
pub enum FfError {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("no prime q ≡ 1 (mod {k}) found below 2^31 starting at {min}")]
    NoPrime { k: u64, min: u64 },
    #[error("reduction modulo {q} undefined: {reason}")]
    Reduction { q: u64, reason: String },
    #[error("work budget exceeded: {needed} fiber operations, budget {budget}")]
    Budget { needed: u128, budget: u128 },
    #[error("invariance lost after reduction: {0}")]
    Invariance(String),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Symmetry(#[from] SymmetryError),
    #[error(transparent)]
    Ramify(#[from] RamifyError),
}

/// A prime q ≡ 1 (mod K) with a pinned image of ζ_K.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeSpec {
    pub q: u64,
    /// K, the order of the root of unity being reduced.
    pub order: u64,
    /// Least primitive root modulo q.
    pub generator: u64,
    /// generator^((q-1)/K), the image of ζ_K.
    pub root_image: u64,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Least primitive root modulo the prime q.
pub fn primitive_root(q: u64) -> u64 {
    if q == 2 {
        return 1;
    }
    let fs = prime_factors(q - 1);
    (2..q).find(|&g| fs.iter().all(|&p| pow_mod(g, (q - 1) / p, q) != 1)).expect("a prime has a primitive root")
}

/// The least prime q >= min with q ≡ 1 (mod k).
pub fn find_prime(k: u64, min: u64) -> Result<PrimeSpec, FfError> {
    if k == 0 || min < 2 {
        return Err(FfError::Input("need K >= 1 and min >= 2".into()));
    }
    let start = min.max(k + 1);
    let mut q = start + (k + 1 - start % k) % k;
    if q % k != 1 % k {
        q = start;
    }
    while q < PRIME_CAP {
        if q >= min && q % k == 1 % k && is_prime(q) {
            let generator = primitive_root(q);
            return Ok(PrimeSpec { q, order: k, generator, root_image: pow_mod(generator, (q - 1) / k, q) });
        }
        q += if k == 1 { 1 } else { k };
        if q % k != 1 % k {
            q += (k + 1 - q % k) % k;
        }
    }
    Err(FfError::NoPrime { k, min })
}

/// The two least primes ≡ 1 (mod 120) above 240.
pub fn default_primes() -> [PrimeSpec; 2] {
    let a = find_prime(120, 241).expect("241 is prime");
    let b = find_prime(120, a.q + 1).expect("601 is prime");
    [a, b]
}

/// Reduction map from Q(ζ_K) into the field with q^k elements.
#[derive(Clone, Debug)]
pub struct Reducer {
    pub spec: PrimeSpec,
    pub ctx: GfCtx,
    powers: Vec<u64>,
}

impl Reducer {
    pub fn new(spec: PrimeSpec, k: usize) -> Result<Reducer, FfError> {
        if k == 0 {
            return Err(FfError::Input("extension degree must be at least 1".into()));
        }
        let q = spec.q;
        let powers = (0..spec.order).map(|i| pow_mod(spec.root_image, i, q)).collect();
        Ok(Reducer { ctx: GfSpec::new(q, k), spec, powers })
    }

    pub fn q(&self) -> u64 {
        self.spec.q
    }

    pub fn field_size(&self) -> u128 {
        self.ctx.size()
    }

    fn rational(&self, r: &Rational) -> Result<u64, FfError> {
        let q = BigInt::from(self.q());
        let den = r.denom().mod_floor(&q);
        if den.is_zero() {
            return Err(FfError::Reduction { q: self.q(), reason: format!("denominator of {r} is divisible by q") });
        }
        let num = r.numer().mod_floor(&q).to_u64().unwrap();
        let den = den.to_u64().unwrap();
        Ok(num * pow_mod(den, self.q() - 2, self.q()) % self.q())
    }

    pub fn num(&self, x: &CycNum) -> Result<Gf, FfError> {
        if let Some(r) = x.as_rational() {
            return Ok(Gf::from_fp(&self.ctx, self.rational(&r)?));
        }
        let index = x.ctx().index() as u64;
        if index != self.spec.order {
            return Err(FfError::Reduction {
                q: self.q(),
                reason: format!("irrational coefficient needs q ≡ 1 (mod {index}), the prime spec has K = {}", self.spec.order),
            });
        }
        let mut acc = 0u64;
        for (i, c) in x.coeffs().iter().enumerate() {
            if !c.is_zero() {
                acc = (acc + self.rational(c)? * self.powers[i]) % self.q();
            }
        }
        Ok(Gf::from_fp(&self.ctx, acc))
    }

    pub fn poly(&self, p: &Poly<CycNum>) -> Result<Poly<Gf>, FfError> {
        let out = p.try_map_coeffs(self.ctx.clone(), |c| self.num(c))?;
        if out.is_zero() != p.is_zero() || (p.is_homogeneous() && out.total_degree() != p.total_degree()) {
            return Err(FfError::Reduction { q: self.q(), reason: "a defining form vanishes modulo q".into() });
        }
        Ok(out)
    }

    pub fn matrix(&self, m: &Matrix<CycNum>) -> Result<Matrix<Gf>, FfError> {
        let rows = (0..m.rows())
            .map(|i| (0..m.cols()).map(|j| self.num(m.get(i, j))).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Matrix::from_rows(rows))
    }

    pub fn element(&self, g: &GroupElement<CycNum>) -> Result<GroupElement<Gf>, FfError> {
        g.try_map(&self.ctx, &|c: &CycNum| self.num(c)).map_err(|e| match e {
            FfError::Symmetry(SymmetryError::Singular) => {
                FfError::Reduction { q: self.q(), reason: "the element becomes singular".into() }
            }
            other => other,
        })
    }

    pub fn model(&self, m: &Model<CycNum>) -> Result<Model<Gf>, FfError> {
        Ok(match m {
            Model::BiForm33(f) => Model::BiForm33(self.poly(f)?),
            Model::Trigonal { f4, f6 } => {
                let f4r = if f4.is_zero() { Poly::zero(f4.vars().clone(), self.ctx.clone()) } else { self.poly(f4)? };
                Model::Trigonal { f4: f4r, f6: self.poly(f6)? }
            }
            Model::QuadricNet(a) => Model::QuadricNet([self.matrix(&a[0])?, self.matrix(&a[1])?, self.matrix(&a[2])?]),
            Model::SpaceQC { q, c } => Model::SpaceQC { q: self.poly(q)?, c: self.poly(c)? },
            Model::PlaneNodal { f, marked } => {
                let pts = marked
                    .iter()
                    .map(|(p, k)| Ok((p.iter().map(|c| self.num(c)).collect::<Result<Vec<_>, FfError>>()?, *k)))
                    .collect::<Result<Vec<_>, FfError>>()?;
                Model::PlaneNodal { f: self.poly(f)?, marked: pts }
            }
            Model::HyperBranch(b) => Model::HyperBranch(self.poly(b)?),
        })
    }
}

fn field_size(ctx: &GfCtx) -> u128 {
    ctx.size()
}

/// Distinct roots in the field of size `size` of a polynomial given lowest degree first.
/// The zero polynomial has every element as a root.
fn roots_in_field(u: &UPoly<Gf>, size: u128) -> u128 {
    match u.degree() {
        None => size,
        Some(0) => 0,
        Some(_) => {
            let t = UPoly::t(u.ctx().clone());
            let frob = t.powmod(size, u).sub(&t);
            u.gcd(&frob).degree().unwrap_or(0) as u128
        }
    }
}

/// Univariate restriction of a polynomial whose only live variable is `var`.
fn to_upoly(p: &Poly<Gf>, var: usize, ctx: &GfCtx) -> UPoly<Gf> {
    let deg = p.degree_in(var).unwrap_or(0) as usize;
    let mut c = vec![Gf::zero(ctx); deg + 1];
    for (e, v) in p.terms() {
        c[e[var] as usize] = c[e[var] as usize].add(v);
    }
    UPoly::new(ctx.clone(), c)
}

/// Normalized representatives of P^{n-1} over the field: first nonzero coordinate is 1.
fn projective_points(n: usize, ctx: &GfCtx) -> Vec<Vec<Gf>> {
    let all: Vec<Gf> = Gf::all(ctx).collect();
    let mut out = Vec::new();
    for lead in 0..n {
        let free = n - lead - 1;
        let total = all.len().pow(free as u32);
        for mut idx in 0..total {
            let mut p = vec![Gf::zero(ctx); n];
            p[lead] = Gf::one(ctx);
            for slot in p.iter_mut().skip(lead + 1) {
                *slot = all[idx % all.len()].clone();
                idx /= all.len();
            }
            out.push(p);
        }
    }
    out
}

fn check_budget(needed: u128, budget: u128) -> Result<(), FfError> {
    if needed > budget {
        return Err(FfError::Budget { needed, budget });
    }
    Ok(())
}

/// Fibers of the sweep, used against the budget.
fn sweep_size(model: &Model<Gf>, size: u128) -> u128 {
    match model {
        Model::BiForm33(_) | Model::Trigonal { .. } | Model::HyperBranch(_) => size + 1,
        Model::PlaneNodal { .. } => size + 1,
        // one zero-dimensional count per member of a pencil of hyperplanes, each costing
        // roughly a full enumeration of its rational points
        Model::SpaceQC { .. } | Model::QuadricNet(_) => (size + 1) * (size + 1),
    }
}

/// Number of points of the model rational over the field of the reduction context.
/// Singular points of plane models count once.
pub fn count_points(model: &Model<Gf>, budget: u128) -> Result<u128, FfError> {
    let ctx = model.ctx();
    let size = field_size(&ctx);
    check_budget(sweep_size(model, size), budget)?;
    let eqs = model.equations();
    match model {
        Model::BiForm33(f) => {
            let base = projective_points(2, &ctx);
            let n = base
                .par_iter()
                .map(|p| {
                    let g = f.specialize(0, &p[0]).specialize(1, &p[1]);
                    binary_roots(&g, 2, 3, &ctx, size)
                })
                .sum();
            Ok(n)
        }
        Model::Trigonal { .. } | Model::HyperBranch(_) => {
            let f = &eqs[0];
            let base = projective_points(2, &ctx);
            let fibers: u128 = base
                .par_iter()
                .map(|p| {
                    let g = f.specialize(0, &p[0]).specialize(1, &p[1]);
                    roots_in_field(&to_upoly(&g, 2, &ctx), size)
                })
                .sum();
            let apex = f.eval(&[Gf::zero(&ctx), Gf::zero(&ctx), Gf::one(&ctx)]).is_zero();
            Ok(fibers + u128::from(apex))
        }
        Model::PlaneNodal { f, .. } => {
            let base = projective_points(2, &ctx);
            let fibers: u128 = base
                .par_iter()
                .map(|p| {
                    let g = f.specialize(0, &p[0]).specialize(1, &p[1]);
                    roots_in_field(&to_upoly(&g, 2, &ctx), size)
                })
                .sum();
            let apex = f.eval(&[Gf::zero(&ctx), Gf::zero(&ctx), Gf::one(&ctx)]).is_zero();
            Ok(fibers + u128::from(apex))
        }
        Model::SpaceQC { .. } | Model::QuadricNet(_) => pencil_sweep(&eqs, size),
    }
}

/// Rational roots on P1 of a binary form in variables (a, b) of a polynomial in more variables.
fn binary_roots(g: &Poly<Gf>, a: usize, b: usize, ctx: &GfCtx, size: u128) -> u128 {
    if g.is_zero() {
        return size + 1;
    }
    let affine = to_upoly(&g.specialize(b, &Gf::one(ctx)), a, ctx);
    let at_infinity = g.specialize(b, &Gf::zero(ctx)).specialize(a, &Gf::one(ctx)).is_zero();
    roots_in_field(&affine, size) + u128::from(at_infinity)
}

/// Points of a curve in P^n (n >= 3) by sweeping the hyperplanes b x_{n-1} = a x_n through the
/// codimension-two space x_{n-1} = x_n = 0, which is counted once on its own.
fn pencil_sweep(eqs: &[Poly<Gf>], size: u128) -> Result<u128, FfError> {
    let n = eqs[0].nvars();
    let ctx = eqs[0].ctx().clone();
    let vs = eqs[0].vars().clone();
    let var = |i: usize| Poly::var(vs.clone(), i, ctx.clone());
    let zero = Gf::zero(&ctx);
    // (x_{n-1}, x_n) = t (a, b), with t stored in slot n-1 and slot n dropped
    let sub_vars: crate::algebra::Vars = vs.iter().take(n - 1).cloned().collect::<Vec<_>>().into();
    let restrict = |p: &Poly<Gf>| -> Poly<Gf> {
        let m = p.vars().len();
        let idx: Vec<usize> = (0..m).map(|i| i.min(n - 2)).collect();
        p.reembed(sub_vars.clone(), &idx)
    };
    let base = projective_points(2, &ctx);
    let fibers: Result<Vec<u128>, FfError> = base
        .par_iter()
        .map(|ab| {
            let t = var(n - 2);
            let mut images: Vec<Poly<Gf>> = (0..n).map(var).collect();
            images[n - 2] = t.scale(&ab[0]);
            images[n - 1] = t.scale(&ab[1]);
            let sys: Vec<Poly<Gf>> = eqs.iter().map(|p| restrict(&p.substitute(&images))).collect();
            let with_t = projective_rational(&sys, size)?;
            let t_zero: Vec<Poly<Gf>> =
                sys.iter().map(|p| drop_last(&p.specialize(n - 2, &zero))).collect();
            let without = projective_rational(&t_zero, size)?;
            Ok(with_t as u128 - without as u128)
        })
        .collect();
    let axis: Vec<Poly<Gf>> = eqs
        .iter()
        .map(|p| drop_last(&drop_last(&p.specialize(n - 1, &zero).specialize(n - 2, &zero))))
        .collect();
    Ok(fibers?.iter().sum::<u128>() + projective_rational(&axis, size)? as u128)
}

/// Drop the last variable (which must not occur).
fn drop_last(p: &Poly<Gf>) -> Poly<Gf> {
    let m = p.nvars();
    let vars: crate::algebra::Vars = p.vars().iter().take(m - 1).cloned().collect::<Vec<_>>().into();
    let mut out = Poly::zero(vars, p.ctx().clone());
    for (e, c) in p.terms() {
        debug_assert_eq!(e[m - 1], 0);
        out.add_term(e[..m - 1].to_vec(), c.clone());
    }
    out
}

/// Full enumeration of the affine cone, for small fields only. Each solution is weighted
/// by the inverse size of its orbit under the (weighted) scaling action.
pub fn count_points_brute(model: &Model<Gf>, budget: u128) -> Result<u128, FfError> {
    let ctx = model.ctx();
    let size = field_size(&ctx);
    let eqs = model.equations();
    let vs = eqs[0].vars().clone();
    let n = vs.len();
    let needed = size.pow(n as u32);
    check_budget(needed, budget)?;
    let all: Vec<Gf> = Gf::all(&ctx).collect();
    let units = size - 1;
    let mut weighted = 0u128;
    let mut point = vec![Gf::zero(&ctx); n];
    for mut idx in 0..needed {
        for slot in point.iter_mut() {
            *slot = all[(idx % size) as usize].clone();
            idx /= size;
        }
        if !eqs.iter().all(|p| p.eval(&point).is_zero()) {
            continue;
        }
        match model {
            Model::BiForm33(_) => {
                if point[..2].iter().any(|c| !c.is_zero()) && point[2..].iter().any(|c| !c.is_zero()) {
                    weighted += 1;
                }
            }
            _ => {
                let ws: Vec<u128> =
                    (0..n).filter(|&i| !point[i].is_zero()).map(|i| u128::from(vs[i].weight)).collect();
                if ws.is_empty() {
                    continue;
                }
                let g = ws.iter().fold(0u128, |a, &w| a.gcd(&w));
                // a solution contributes gcd(q-1, g) / (q-1); scaled by q-1 here
                weighted += units.gcd(&g);
            }
        }
    }
    let denom = match model {
        Model::BiForm33(_) => units * units,
        _ => units,
    };
    if weighted % denom != 0 {
        return Err(FfError::Input("orbit bookkeeping failed".into()));
    }
    Ok(weighted / denom)
}

/// Points rational over the field of the reduction that `g` fixes. The identity gives the
/// full count.
pub fn fixed_count_ff(model: &Model<Gf>, g: &GroupElement<Gf>, budget: u128) -> Result<u128, FfError> {
    invariance(model, g).map_err(|e| FfError::Invariance(e.to_string()))?;
    if g.is_identity() {
        return count_points(model, budget);
    }
    let ctx = model.ctx();
    let size = field_size(&ctx);
    let sys = fixed_point_system(model, g)?;
    let (n, _) = sys.count(&mut |s: &[Poly<Gf>]| affine_rational(s, &ctx, size))?;
    Ok(n as u128)
}

/// Outcome of a singularity search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ProbeOutcome {
    NoSingularityFound,
    Singular { witness: String },
}

/// Probe result with the prime it was obtained at. Always evidence, never proof.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeReport {
    pub q: u64,
    pub root_image: u64,
    pub outcome: ProbeOutcome,
    pub evidence_only: bool,
}

fn det3(m: &[Vec<Poly<Gf>>]) -> Poly<Gf> {
    let t = |a: usize, b: usize, c: usize| m[0][a].mul(&m[1][b]).mul(&m[2][c]);
    t(0, 1, 2).add(&t(1, 2, 0)).add(&t(2, 0, 1)).sub(&t(2, 1, 0)).sub(&t(0, 2, 1)).sub(&t(1, 0, 2))
}

/// Equations of the singular locus in ambient coordinates: the equations together with the
/// maximal minors of their Jacobian.
fn singular_system(eqs: &[Poly<Gf>]) -> Vec<Poly<Gf>> {
    let n = eqs[0].nvars();
    let jac: Vec<Vec<Poly<Gf>>> = eqs.iter().map(|f| (0..n).map(|i| f.derivative(i)).collect()).collect();
    let mut sys = eqs.to_vec();
    match eqs.len() {
        1 => sys.extend(jac[0].iter().cloned()),
        2 => {
            for i in 0..n {
                for j in i + 1..n {
                    sys.push(jac[0][i].mul(&jac[1][j]).sub(&jac[0][j].mul(&jac[1][i])));
                }
            }
        }
        _ => {
            for a in 0..n {
                for b in a + 1..n {
                    for c in b + 1..n {
                        let m: Vec<Vec<Poly<Gf>>> = jac.iter().map(|r| vec![r[a].clone(), r[b].clone(), r[c].clone()]).collect();
                        sys.push(det3(&m));
                    }
                }
            }
        }
    }
    sys.retain(|p| !p.is_zero());
    sys
}

/// Searches for singular points of the reduced model over the algebraic closure of the prime
/// field, chart by chart, by deciding consistency of the Jacobian system with a Groebner
/// basis. This covers every extension degree at once. Plane models are singular by design
/// and are rejected.
pub fn smooth_probe(model: &Model<Gf>, spec: &PrimeSpec) -> Result<ProbeReport, FfError> {
    let eqs = model.equations();
    let vs = eqs[0].vars().clone();
    let sing = singular_system(&eqs);
    let report = |outcome| ProbeReport { q: spec.q, root_image: spec.root_image, outcome, evidence_only: true };
    let charts: Vec<Vec<usize>> = match model {
        Model::PlaneNodal { .. } => {
            return Err(FfError::Input("plane models carry marked singular points; probe the smooth models".into()))
        }
        Model::BiForm33(_) => vec![vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3]],
        _ => (0..vs.len()).filter(|&i| vs[i].weight == 1).map(|i| vec![i]).collect(),
    };
    for c in &charts {
        let sys: Vec<Poly<Gf>> = sing.iter().map(|p| c.iter().fold(p.clone(), |acc, &v| chart(&acc, v))).collect();
        if !is_inconsistent(&sys) {
            let names: Vec<String> = c.iter().map(|&v| format!("{} = 1", vs[v].name)).collect();
            return Ok(report(ProbeOutcome::Singular { witness: format!("singular point in the chart {}", names.join(", ")) }));
        }
    }
    // weighted models: the apex where every weight-one coordinate vanishes
    let weighted: Vec<usize> = (0..vs.len()).filter(|&i| vs[i].weight != 1).collect();
    if !weighted.is_empty() && !matches!(model, Model::BiForm33(_)) {
        let ctx = model.ctx();
        let apex: Vec<Gf> = (0..vs.len()).map(|i| if vs[i].weight == 1 { Gf::zero(&ctx) } else { Gf::one(&ctx) }).collect();
        if sing.iter().all(|p| p.eval(&apex).is_zero()) {
            return Ok(report(ProbeOutcome::Singular { witness: "singular at the apex of the weighted plane".into() }));
        }
    }
    Ok(report(ProbeOutcome::NoSingularityFound))
}

fn mobius(mut n: u64) -> i128 {
    let mut sign = 1;
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            n /= d;
            if n % d == 0 {
                return 0;
            }
            sign = -sign;
        }
        d += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// Fixed-point counts over the extensions of degree 1..=d_max and their Möbius inversion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeCounts {
    pub q: u64,
    /// `rational[k-1]` points rational over the extension of degree k.
    pub rational: Vec<u128>,
    /// `exact[d-1]` points whose residue degree is exactly d.
    pub exact: Vec<i128>,
}

impl DegreeCounts {
    /// Geometric count, exact when every fixed point has residue degree at most d_max.
    pub fn total(&self) -> i128 {
        self.exact.iter().sum()
    }
}

/// Reduces the model and element over each extension of degree up to `d_max` and counts the
/// fixed points there.
pub fn fixed_counts_by_degree(
    model: &Model<CycNum>,
    g: &GroupElement<CycNum>,
    spec: &PrimeSpec,
    d_max: usize,
    budget: u128,
) -> Result<DegreeCounts, FfError> {
    if d_max == 0 {
        return Err(FfError::Input("d_max must be at least 1".into()));
    }
    let max_k = (127.0 / (spec.q as f64).log2()).floor() as usize;
    if d_max > max_k {
        return Err(FfError::Input(format!("extension degree {d_max} too large for q = {}", spec.q)));
    }
    let rational = (1..=d_max)
        .map(|k| {
            let r = Reducer::new(spec.clone(), k)?;
            fixed_count_ff(&r.model(model)?, &r.element(g)?, budget)
        })
        .collect::<Result<Vec<u128>, FfError>>()?;
    let exact = (1..=d_max as u64)
        .map(|d| {
            (1..=d).filter(|e| d % e == 0).map(|e| mobius(d / e) * rational[e as usize - 1] as i128).sum()
        })
        .collect();
    Ok(DegreeCounts { q: spec.q, rational, exact })
}
