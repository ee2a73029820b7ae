//! Fixed points of automorphisms, branch data and the Riemann-Hurwitz (Zeuthen) relation.

mod zeuthen;

use std::collections::{BTreeMap, BTreeSet};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::algebra::{distinct_root_count, gcd_binary, Field, Matrix, Poly};
use crate::curves::{genus, invariance, CurveError, Model};
use crate::groebner::{affine_distinct, count_multiprojective, count_projective, GroebnerError};
use crate::symmetry::{Group, GroupElement, SymmetryError};

pub use zeuthen::{enumerate_zeuthen, rh_cover_branch, verify_zeuthen, MAX_ENUMERATION_ORDER};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RamifyError {
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Symmetry(#[from] SymmetryError),
    #[error("fixed-point system could not be solved exactly ({0}); use a finite-field probe")]
    NeedsProbe(GroebnerError),
    #[error("inconsistent fixed-point data: {0}")]
    Inconsistent(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("the map fixes the singular point {0} of the plane model; its branches are not counted")]
    SingularFixed(String),
}

/// A stabilizer order together with the number of orbits having it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
pub struct BranchDatum {
    pub n_i: u64,
    pub orbits: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct ZeuthenSolution {
    pub p: u64,
    pub n: u64,
    pub p_prime: u64,
    pub branch: Vec<BranchDatum>,
}

/// Fixed points of one transformation on a curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedSet {
    pub isolated_count: usize,
    /// true only for the identity
    pub pointwise_fixed: bool,
    /// per ambient cell: description and number of fixed points found there
    pub loci: Vec<(String, usize)>,
}

/// How the ambient space of a fixed-point system is cut into affine cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Strata {
    /// ordinary projective space in the system's variables
    Projective,
    /// product of projective spaces, one block of variable indices per factor
    Product(Vec<Vec<usize>>),
}

/// Equations whose solutions are exactly the fixed points of an element on the curve.
#[derive(Clone, Debug)]
pub struct FixedSystem<F: Field> {
    pub eqs: Vec<Poly<F>>,
    pub strata: Strata,
}

impl<F: Field> FixedSystem<F> {
    /// Count solutions with a per-cell counter, recording each nonzero cell.
    pub fn count<E>(&self, count: &mut impl FnMut(&[Poly<F>]) -> Result<usize, E>) -> Result<(usize, Vec<(String, usize)>), E> {
        let mut loci = Vec::new();
        let mut cell = 0usize;
        let mut rec = |sys: &[Poly<F>]| -> Result<usize, E> {
            let k = count(sys)?;
            if k > 0 {
                let names: Vec<&str> = sys.first().map_or(Vec::new(), |p| p.vars().iter().map(|v| v.name.as_str()).collect());
                loci.push((format!("cell {cell} in ({})", names.join(", ")), k));
            }
            cell += 1;
            Ok(k)
        };
        let total = match &self.strata {
            Strata::Projective => count_projective(&self.eqs, &mut rec)?,
            Strata::Product(blocks) => count_multiprojective(&self.eqs, blocks, &mut rec)?,
        };
        Ok((total, loci))
    }
}

/// 2x2 minors of the matrix with rows v and image, skipping identically zero ones.
fn parallel_conditions<F: Field>(v: &[Poly<F>], image: &[Poly<F>]) -> Vec<Poly<F>> {
    let mut out = Vec::new();
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            let m = v[i].mul(&image[j]).sub(&v[j].mul(&image[i]));
            if !m.is_zero() {
                out.push(m);
            }
        }
    }
    out
}

fn apply<F: Field>(m: &Matrix<F>, v: &[Poly<F>]) -> Vec<Poly<F>> {
    (0..m.rows())
        .map(|i| {
            let mut acc = Poly::zero(v[0].vars().clone(), v[0].ctx().clone());
            for (j, vj) in v.iter().enumerate() {
                let c = m.get(i, j);
                if !c.is_zero() {
                    acc = acc.add(&vj.scale(c));
                }
            }
            acc
        })
        .collect()
}

/// The fixed-point system of a (non-identity) element on a model.
pub fn fixed_point_system<F: Field>(model: &Model<F>, g: &GroupElement<F>) -> Result<FixedSystem<F>, RamifyError> {
    model.check_representation(g)?;
    let eqs = model.equations();
    let vs = eqs[0].vars().clone();
    let ctx = model.ctx();
    let var = |i: usize| Poly::var(vs.clone(), i, ctx.clone());
    match (model, g) {
        (Model::BiForm33(_), GroupElement::Bi(b)) => {
            let x = [var(0), var(1)];
            let y = [var(2), var(3)];
            let (ix, iy) = if b.swap() { (apply(b.a(), &y), apply(b.b(), &x)) } else { (apply(b.a(), &x), apply(b.b(), &y)) };
            let mut sys = eqs;
            sys.extend(parallel_conditions(&x, &ix));
            sys.extend(parallel_conditions(&y, &iy));
            Ok(FixedSystem { eqs: sys, strata: Strata::Product(vec![vec![0, 1], vec![2, 3]]) })
        }
        (Model::Trigonal { .. } | Model::HyperBranch(_), GroupElement::Tri(t)) => {
            // ambient P(1, 1, k) with coordinates (u0, u1, w); reorder to (w, u0, u1) so that
            // the projective stratification only ever sets a weight-one coordinate to 1
            let k = t.weight();
            let reordered: crate::algebra::Vars = vec![vs[2].clone(), vs[0].clone(), vs[1].clone()].into();
            let re = |p: &Poly<F>| p.reembed(reordered.clone(), &[1, 2, 0]);
            let w = re(&var(2));
            let u = [re(&var(0)), re(&var(1))];
            let au = apply(t.a(), &u);
            let mut sys: Vec<Poly<F>> = eqs.iter().map(re).collect();
            sys.extend(parallel_conditions(&u, &au));
            for i in 0..2 {
                let cond = u[i].pow(k).scale(t.c()).sub(&au[i].pow(k)).mul(&w);
                if !cond.is_zero() {
                    sys.push(cond);
                }
            }
            Ok(FixedSystem { eqs: sys, strata: Strata::Projective })
        }
        (_, GroupElement::Proj(p)) => {
            let v: Vec<Poly<F>> = (0..vs.len()).map(var).collect();
            let mut sys = eqs;
            sys.extend(parallel_conditions(&v, &apply(p.matrix(), &v)));
            Ok(FixedSystem { eqs: sys, strata: Strata::Projective })
        }
        _ => unreachable!("representation checked"),
    }
}

const FIXED_SEED: u64 = 0xf1d;

/// Geometric fixed points of `g` on the curve, counted without multiplicity. For plane
/// models the count is on the plane model itself (a fixed singular point counts once).
pub fn fixed_points<F: Field>(model: &Model<F>, g: &GroupElement<F>) -> Result<FixedSet, RamifyError> {
    invariance(model, g)?;
    if g.is_identity() {
        return Ok(FixedSet { isolated_count: 0, pointwise_fixed: true, loci: Vec::new() });
    }
    if let (Model::BiForm33(f), GroupElement::Bi(b)) = (model, g) {
        if b.swap() {
            return swap_fixed_points(f, b.a(), b.b());
        }
    }
    if let (Model::PlaneNodal { marked, .. }, GroupElement::Proj(p)) = (model, g) {
        for (q, _) in marked {
            let img = p.matrix().mul_vec(q);
            let fixed = (0..3).all(|i| (0..3).all(|j| img[i].mul(&q[j]) == img[j].mul(&q[i])));
            if fixed {
                let coords: Vec<String> = q.iter().map(|c| c.to_string()).collect();
                return Err(RamifyError::SingularFixed(format!("({})", coords.join(" : "))));
            }
        }
    }
    let ctx = model.ctx();
    let mut rng = ChaCha8Rng::seed_from_u64(FIXED_SEED);
    if let GroupElement::Proj(p) = g {
        if !matches!(model, Model::PlaneNodal { .. }) {
            if let Some((n, loci)) = eigen_fixed_points(&model.equations(), p.matrix(), &ctx, &mut rng)? {
                return Ok(FixedSet { isolated_count: n, pointwise_fixed: false, loci });
            }
        }
    }
    let sys = fixed_point_system(model, g)?;
    let (n, loci) = sys.count(&mut |s: &[Poly<F>]| affine_distinct(s, &ctx, &mut rng)).map_err(RamifyError::NeedsProbe)?;
    Ok(FixedSet { isolated_count: n, pointwise_fixed: false, loci })
}

/// Root multiplicity of `x` in a polynomial given lowest degree first.
fn root_multiplicity<F: Field>(coeffs: &[F], x: &F) -> usize {
    let mut c = coeffs.to_vec();
    let mut mult = 0;
    while c.len() > 1 {
        // synthetic division by (t - x)
        let mut q = vec![F::zero(&x.ctx()); c.len() - 1];
        let mut acc = F::zero(&x.ctx());
        for i in (0..c.len()).rev() {
            acc = acc.mul(x).add(&c[i]);
            if i > 0 {
                q[i - 1] = acc.clone();
            }
        }
        if !acc.is_zero() {
            break;
        }
        mult += 1;
        c = q;
    }
    mult
}

/// Eigenvalues of `m` among the listed roots of unity scaled by 1 or an entry of `m`, with
/// multiplicities; None unless they exhaust the characteristic polynomial.
fn field_eigenvalues<F: Field>(m: &Matrix<F>, ctx: &F::Ctx) -> Option<Vec<F>> {
    let roots = F::roots_of_unity(ctx);
    if roots.is_empty() {
        return None;
    }
    let cp = m.charpoly();
    let mut scales = vec![F::one(ctx)];
    for e in m.entries() {
        if !e.is_zero() && !scales.contains(e) {
            scales.push(e.clone());
        }
    }
    let mut seen = std::collections::HashSet::new();
    let mut found = Vec::new();
    let mut total = 0;
    for s in &scales {
        for z in &roots {
            let mu = s.mul(z);
            if !seen.insert(mu.clone()) {
                continue;
            }
            let k = root_multiplicity(&cp, &mu);
            if k > 0 {
                total += k;
                found.push(mu);
                if total == m.rows() {
                    return Some(found);
                }
            }
        }
    }
    None
}

/// Fixed points of x -> M x as the union of eigenspaces meeting the curve, each intersection
/// counted inside its own projective space. None when the eigenvalues are not found.
fn eigen_fixed_points<F: Field>(
    eqs: &[Poly<F>],
    m: &Matrix<F>,
    ctx: &F::Ctx,
    rng: &mut ChaCha8Rng,
) -> Result<Option<(usize, Vec<(String, usize)>)>, RamifyError> {
    let Some(eig) = field_eigenvalues(m, ctx) else { return Ok(None) };
    let n = m.rows();
    let mut total = 0;
    let mut loci = Vec::new();
    for mu in eig {
        let shifted = m.sub(&Matrix::identity(n, ctx).scale(&mu));
        let basis = shifted.kernel();
        let d = basis.len();
        let names: Vec<String> = (1..=d).map(|i| format!("t{i}")).collect();
        let tv = crate::algebra::vars(&names.iter().map(|s| s.as_str()).collect::<Vec<_>>());
        let images: Vec<Poly<F>> = (0..n)
            .map(|i| {
                Poly::from_terms(tv.clone(), ctx.clone(), (0..d).map(|j| {
                    let mut e = vec![0; d];
                    e[j] = 1;
                    (e, basis[j][i].clone())
                }))
            })
            .collect();
        let restricted: Vec<Poly<F>> =
            eqs.iter().map(|f| f.substitute(&images)).filter(|p| !p.is_zero()).collect();
        let k = if d == 1 {
            usize::from(restricted.is_empty())
        } else if restricted.is_empty() {
            return Err(RamifyError::Inconsistent(format!("eigenspace of {mu} lies on the curve")));
        } else {
            count_projective(&restricted, &mut |s: &[Poly<F>]| affine_distinct(s, ctx, rng))
                .map_err(RamifyError::NeedsProbe)?
        };
        if k > 0 {
            loci.push((format!("eigenvalue {mu}, dimension {d}"), k));
        }
        total += k;
    }
    Ok(Some((total, loci)))
}

/// Fixed points of (x, y) -> (A y, B x) lie on the graph x = A y with y an eigenvector of
/// B A, so they are the common roots of two binary forms in y: F(A y, y) and y ^ (B A) y.
fn swap_fixed_points<F: Field>(f: &Poly<F>, a: &Matrix<F>, b: &Matrix<F>) -> Result<FixedSet, RamifyError> {
    let yv = crate::algebra::vars(&["y1", "y2"]);
    let ctx = f.ctx().clone();
    let y = [Poly::var(yv.clone(), 0, ctx.clone()), Poly::var(yv.clone(), 1, ctx)];
    let ay = apply(a, &y);
    let on_graph = f.substitute(&[ay[0].clone(), ay[1].clone(), y[0].clone(), y[1].clone()]);
    if on_graph.is_zero() {
        return Err(RamifyError::Inconsistent("the curve contains the graph of the map".into()));
    }
    let eig = parallel_conditions(&y, &apply(&b.mul(a), &y));
    let common = match eig.first() {
        None => on_graph,
        Some(q) => gcd_binary(&on_graph, q).map_err(CurveError::from)?,
    };
    let n = distinct_root_count(&common).map_err(CurveError::from)?;
    Ok(FixedSet { isolated_count: n, pointwise_fixed: false, loci: vec![("graph x = A y".into(), n)] })
}

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

fn moebius(mut n: u64) -> i64 {
    let mut r = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            r = -r;
        }
        p += 1;
    }
    if n > 1 {
        r = -r;
    }
    r
}

/// Stabilizer data of the cyclic group generated by `g`: for every divisor e > 1 of its
/// order n, the number of orbits of points whose stabilizer has order exactly e.
pub fn cyclic_branch_data<F: Field>(model: &Model<F>, g: &GroupElement<F>) -> Result<Vec<BranchDatum>, RamifyError> {
    let n = g.order()?;
    let mut fix = BTreeMap::new();
    for d in divisors(n) {
        if d > 1 {
            fix.insert(d, fixed_points(model, &g.pow(n / d))?.isolated_count as i64);
        }
    }
    let mut out = Vec::new();
    for e in divisors(n).into_iter().filter(|&e| e > 1) {
        let mut exact = 0i64;
        for d in divisors(n).into_iter().filter(|d| d % e == 0) {
            exact += moebius(d / e) * fix[&d];
        }
        let orbit = (n / e) as i64;
        if exact < 0 || exact % orbit != 0 {
            return Err(RamifyError::Inconsistent(format!("{exact} points with stabilizer of order {e} in a group of order {n}")));
        }
        if exact > 0 {
            out.push(BranchDatum { n_i: e, orbits: (exact / orbit) as u64 });
        }
    }
    out.sort_by(|a, b| b.n_i.cmp(&a.n_i));
    Ok(out)
}

/// Solve the relation 2(p - 1) = 2n(p' - 1) + S for p'.
pub fn solve_quotient_genus(p: u64, n: u64, s: u64) -> Result<u64, RamifyError> {
    let num = 2 * p as i64 - 2 - s as i64 + 2 * n as i64;
    if n == 0 || num < 0 || num % (2 * n as i64) != 0 {
        return Err(RamifyError::Inconsistent(format!("p = {p}, n = {n}, fixed-point total {s} gives no integral quotient genus")));
    }
    Ok((num / (2 * n as i64)) as u64)
}

/// Quotient genus and branch data of a finite group acting on the curve. Points with
/// nontrivial stabilizer are sorted by stabilizer, which is cyclic; the count with
/// stabilizer exactly C follows by inversion over the cyclic subgroups containing C.
pub fn quotient_genus<F: Field>(model: &Model<F>, group: &Group<F>) -> Result<ZeuthenSolution, RamifyError> {
    let p = genus(model)? as u64;
    let n = group.order() as u64;
    // cyclic subgroups, each as the set of element positions, with one generator;
    // Fix(g) depends only on the cyclic subgroup g generates
    let mut cyclic: BTreeMap<BTreeSet<usize>, usize> = BTreeMap::new();
    let mut generated: Vec<BTreeSet<usize>> = Vec::new();
    for (i, g) in group.elements().iter().enumerate().skip(1) {
        let mut set = BTreeSet::from([0]);
        let mut x = g.clone();
        while !x.is_identity() {
            set.insert(group.position(&x).ok_or(SymmetryError::NotContained)?);
            x = g.compose(&x)?;
        }
        cyclic.entry(set.clone()).or_insert(i);
        generated.push(set);
    }
    let classes = conjugacy_classes(group)?;
    let mut by_class: BTreeMap<usize, usize> = BTreeMap::new();
    let mut fix: BTreeMap<BTreeSet<usize>, usize> = BTreeMap::new();
    for (set, gi) in &cyclic {
        let (cls, rep) = classes[*gi];
        let k = match by_class.get(&cls) {
            Some(&k) => k,
            None => {
                let k = fixed_points(model, &group.elements()[rep])?.isolated_count;
                by_class.insert(cls, k);
                k
            }
        };
        fix.insert(set.clone(), k);
    }
    let s: u64 = generated.iter().map(|set| fix[set] as u64).sum();
    let mut subs: Vec<(BTreeSet<usize>, usize)> = fix.into_iter().collect();
    let p_prime = solve_quotient_genus(p, n, s)?;
    // exact stabilizer counts, largest subgroups first
    subs.sort_by(|a, b| b.0.len().cmp(&a.0.len()));
    let mut exact: Vec<i64> = Vec::with_capacity(subs.len());
    for i in 0..subs.len() {
        let mut e = subs[i].1 as i64;
        for j in 0..i {
            if subs[j].0.len() > subs[i].0.len() && subs[i].0.is_subset(&subs[j].0) {
                e -= exact[j];
            }
        }
        if e < 0 {
            return Err(RamifyError::Inconsistent(format!("negative point count for a cyclic subgroup of order {}", subs[i].0.len())));
        }
        exact.push(e);
    }
    let mut by_order: BTreeMap<u64, i64> = BTreeMap::new();
    for ((set, _), e) in subs.iter().zip(&exact) {
        *by_order.entry(set.len() as u64).or_insert(0) += e;
    }
    let mut branch = Vec::new();
    for (d, pts) in by_order.into_iter().rev() {
        let orbit = (n / d) as i64;
        if pts % orbit != 0 {
            return Err(RamifyError::Inconsistent(format!("{pts} points with stabilizer order {d} do not form orbits of size {orbit}")));
        }
        if pts > 0 {
            branch.push(BranchDatum { n_i: d, orbits: (pts / orbit) as u64 });
        }
    }
    let sol = ZeuthenSolution { p, n, p_prime, branch };
    if verify_zeuthen(p, n, p_prime, &sol.branch)? != 0 {
        return Err(RamifyError::Inconsistent("branch data do not satisfy the relation".into()));
    }
    Ok(sol)
}

/// For every element: (class index, position of the class representative with the
/// shortest printed form, which keeps the exact systems small).
pub fn conjugacy_classes<F: Field>(group: &Group<F>) -> Result<Vec<(usize, usize)>, RamifyError> {
    let n = group.order();
    let mut out = vec![(usize::MAX, 0); n];
    let gens: Vec<(GroupElement<F>, GroupElement<F>)> =
        group.generators().into_iter().map(|s| (s.clone(), s.inverse())).collect();
    let mut next = 0;
    for start in 0..n {
        if out[start].0 != usize::MAX {
            continue;
        }
        let mut members = vec![start];
        out[start].0 = next;
        let mut i = 0;
        while i < members.len() {
            let x = &group.elements()[members[i]];
            for (s, si) in &gens {
                let c = s.compose(&x.compose(si)?)?;
                let pos = group.position(&c).ok_or(SymmetryError::NotContained)?;
                if out[pos].0 == usize::MAX {
                    out[pos].0 = next;
                    members.push(pos);
                }
            }
            i += 1;
        }
        let rep = *members.iter().min_by_key(|&&m| (group.elements()[m].key().len(), m)).unwrap();
        for m in members {
            out[m].1 = rep;
        }
        next += 1;
    }
    Ok(out)
}
