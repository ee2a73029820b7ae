use std::collections::BTreeSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::binary::is_squarefree;
use crate::algebra::{gcd_binary, vars, weighted_vars, Field, Matrix, Mono, Poly, Vars};
use crate::groebner::{count_multiprojective, is_inconsistent, projective_distinct, GroebnerError};
use crate::symmetry::GroupElement;

use super::CurveError;

/// A curve model. Forms live in fixed variable sets, listed per variant.
#[derive(Clone, Debug)]
pub enum Model<F: Field = crate::algebra::CycNum> {
    /// F(x1, x2, y1, y2) = 0 of bidegree (3, 3) on P1 x P1.
    BiForm33(Poly<F>),
    /// w^3 + f4(x, y) w + f6(x, y) = 0 in P(1, 1, 2).
    Trigonal { f4: Poly<F>, f6: Poly<F> },
    /// Three quadrics in P4 given by symmetric 5x5 matrices.
    QuadricNet([Matrix<F>; 3]),
    /// Quadric and cubic in P3.
    SpaceQC { q: Poly<F>, c: Poly<F> },
    /// Plane curve with marked singular points and their multiplicities.
    PlaneNodal { f: Poly<F>, marked: Vec<(Vec<F>, u32)> },
    /// y^2 = B(x, z) with B of degree 2g + 2.
    HyperBranch(Poly<F>),
}

/// Outcome of a smoothness check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Smoothness {
    Smooth,
    Singular(String),
    Inconclusive(String),
}

impl Smoothness {
    pub fn is_smooth(&self) -> bool {
        matches!(self, Smoothness::Smooth)
    }
}

/// What a transformation does to the defining equations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Invariance<F: Field> {
    /// F o g = lambda F.
    Scalar(F),
    /// f4 o A = l f4 and f6 o A = k f6; the weighted equation picks up lambda = c^3.
    Trigonal { lambda: F, l: Option<F>, k: Option<F> },
    /// Q o g = lambda Q and C o g = mu C + L Q with L linear.
    SpaceQC { lambda: F, mu: F, linear: Vec<F> },
    /// F_i o g = sum_j N_ij F_j.
    Net(Matrix<F>),
}

impl<F: Field> Invariance<F> {
    /// The multiplier of the (first) defining equation.
    pub fn scalar(&self) -> Option<&F> {
        match self {
            Invariance::Scalar(l) | Invariance::Trigonal { lambda: l, .. } | Invariance::SpaceQC { lambda: l, .. } => {
                Some(l)
            }
            Invariance::Net(_) => None,
        }
    }
}

pub fn biform_vars() -> Vars {
    vars(&["x1", "x2", "y1", "y2"])
}

pub fn binary_vars() -> Vars {
    vars(&["x", "y"])
}

pub fn plane_vars() -> Vars {
    vars(&["x", "y", "z"])
}

pub fn net_vars() -> Vars {
    vars(&["x1", "x2", "x3", "x4", "x5"])
}

fn bidegree<F: Field>(f: &Poly<F>) -> Option<(u32, u32)> {
    let mut out = None;
    for (e, _) in f.terms() {
        let d = (e[0] + e[1], e[2] + e[3]);
        match out {
            None => out = Some(d),
            Some(o) if o != d => return None,
            _ => {}
        }
    }
    out
}

fn degree_is<F: Field>(f: &Poly<F>, d: u32) -> bool {
    f.is_homogeneous() && f.total_degree() == Some(d)
}

/// The quadratic form x^T A x.
pub fn quadric_form<F: Field>(a: &Matrix<F>) -> Poly<F> {
    let n = a.rows();
    let vs: Vars = vars(&(1..=n).map(|i| format!("x{i}")).collect::<Vec<_>>().iter().map(|s| s.as_str()).collect::<Vec<_>>());
    let ctx = a.ctx();
    let mut p = Poly::zero(vs, ctx);
    for i in 0..n {
        for j in 0..n {
            let c = a.get(i, j);
            if c.is_zero() {
                continue;
            }
            let mut e = vec![0; n];
            e[i] += 1;
            e[j] += 1;
            p.add_term(e, c.clone());
        }
    }
    p
}

fn sym_vector<F: Field>(a: &Matrix<F>) -> Vec<F> {
    let n = a.rows();
    let mut v = Vec::new();
    for i in 0..n {
        for j in i..n {
            v.push(a.get(i, j).clone());
        }
    }
    v
}

/// Coefficients c with target = sum c_i basis_i, if the basis vectors are independent and
/// the target lies in their span.
pub(crate) fn solve_in_span<F: Field>(basis: &[Vec<F>], target: &[F]) -> Option<Vec<F>> {
    let n = target.len();
    let k = basis.len();
    let m = Matrix::from_fn(n, k + 1, |r, c| if c < k { basis[c][r].clone() } else { target[r].clone() });
    let ker = m.kernel();
    let v = ker.iter().find(|v| !v[k].is_zero())?;
    let s = v[k].neg();
    Some(v[..k].iter().map(|x| x.div(&s).unwrap()).collect())
}

/// Coefficient vectors of several polynomials over the union of their monomials.
fn coefficient_vectors<F: Field>(ps: &[&Poly<F>]) -> Vec<Vec<F>> {
    let monos: BTreeSet<Mono> = ps.iter().flat_map(|p| p.terms().map(|(e, _)| e.clone())).collect();
    ps.iter().map(|p| monos.iter().map(|e| p.coeff(e)).collect()).collect()
}

impl<F: Field> Model<F> {
    pub fn biform33(f: Poly<F>) -> Result<Self, CurveError> {
        if f.nvars() != 4 || bidegree(&f) != Some((3, 3)) {
            return Err(CurveError::InvalidModel("bidegree (3, 3) form in four variables expected".into()));
        }
        Ok(Model::BiForm33(f))
    }

    pub fn trigonal(f4: Poly<F>, f6: Poly<F>) -> Result<Self, CurveError> {
        if f4.nvars() != 2 || f6.nvars() != 2 {
            return Err(CurveError::InvalidModel("binary forms expected".into()));
        }
        if !(f4.is_zero() || degree_is(&f4, 4)) || !(f6.is_zero() || degree_is(&f6, 6)) {
            return Err(CurveError::InvalidModel("f4 must be a quartic and f6 a sextic".into()));
        }
        let m = Model::Trigonal { f4, f6 };
        if m.trigonal_discriminant().is_zero() {
            return Err(CurveError::InvalidModel("discriminant 4 f4^3 + 27 f6^2 vanishes identically".into()));
        }
        Ok(m)
    }

    pub fn quadric_net(a: [Matrix<F>; 3]) -> Result<Self, CurveError> {
        for m in &a {
            if m.rows() != 5 || m.cols() != 5 || *m != m.transpose() {
                return Err(CurveError::InvalidModel("symmetric 5x5 matrices expected".into()));
            }
        }
        let rows: Vec<Vec<F>> = a.iter().map(sym_vector).collect();
        if Matrix::from_rows(rows).rank() != 3 {
            return Err(CurveError::InvalidModel("quadrics of the net are dependent".into()));
        }
        Ok(Model::QuadricNet(a))
    }

    pub fn space_qc(q: Poly<F>, c: Poly<F>) -> Result<Self, CurveError> {
        if q.nvars() != 4 || c.nvars() != 4 || !degree_is(&q, 2) || !degree_is(&c, 3) {
            return Err(CurveError::InvalidModel("quadric and cubic in four variables expected".into()));
        }
        Ok(Model::SpaceQC { q, c })
    }

    pub fn plane_nodal(f: Poly<F>, marked: Vec<(Vec<F>, u32)>) -> Result<Self, CurveError> {
        if f.nvars() != 3 || !f.is_homogeneous() || f.is_zero() {
            return Err(CurveError::InvalidModel("ternary form expected".into()));
        }
        if marked.iter().any(|(p, m)| p.len() != 3 || p.iter().all(|c| c.is_zero()) || *m < 2) {
            return Err(CurveError::InvalidModel("marked points need three coordinates and multiplicity >= 2".into()));
        }
        Ok(Model::PlaneNodal { f, marked })
    }

    pub fn hyper_branch(b: Poly<F>) -> Result<Self, CurveError> {
        match b.total_degree() {
            Some(d) if b.nvars() == 2 && b.is_homogeneous() && d % 2 == 0 && d >= 6 => Ok(Model::HyperBranch(b)),
            _ => Err(CurveError::InvalidModel("binary form of even degree at least 6 expected".into())),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Model::BiForm33(_) => "biform33",
            Model::Trigonal { .. } => "trigonal",
            Model::QuadricNet(_) => "quadric_net",
            Model::SpaceQC { .. } => "space_qc",
            Model::PlaneNodal { .. } => "plane_nodal",
            Model::HyperBranch(_) => "hyper_branch",
        }
    }

    pub fn ctx(&self) -> F::Ctx {
        match self {
            Model::BiForm33(f) | Model::HyperBranch(f) | Model::PlaneNodal { f, .. } => f.ctx().clone(),
            Model::Trigonal { f6, .. } => f6.ctx().clone(),
            Model::QuadricNet(a) => a[0].ctx(),
            Model::SpaceQC { q, .. } => q.ctx().clone(),
        }
    }

    /// 4 f4^3 + 27 f6^2 (trigonal models only; zero otherwise).
    pub fn trigonal_discriminant(&self) -> Poly<F> {
        match self {
            Model::Trigonal { f4, f6 } => {
                let ctx = f6.ctx();
                f4.pow(3).scale(&F::from_i64(ctx, 4)).add(&f6.pow(2).scale(&F::from_i64(ctx, 27)))
            }
            _ => Poly::zero(binary_vars(), self.ctx()),
        }
    }

    /// Weight of y in the hyperelliptic model, g + 1.
    pub fn hyper_weight(&self) -> Option<u32> {
        match self {
            Model::HyperBranch(b) => Some(b.total_degree().unwrap() / 2),
            _ => None,
        }
    }

    /// Defining equations in the ambient coordinates of the model:
    /// (x1, x2, y1, y2); weighted (x, y, w); (x1..x5); the four space coordinates;
    /// (x, y, z); weighted (x, z, y).
    pub fn equations(&self) -> Vec<Poly<F>> {
        let ctx = self.ctx();
        match self {
            Model::BiForm33(f) | Model::PlaneNodal { f, .. } => vec![f.clone()],
            Model::Trigonal { f4, f6 } => {
                let vs = weighted_vars(&[("x", 1), ("y", 1), ("w", 2)]);
                let w = Poly::var(vs.clone(), 2, ctx.clone());
                let f4 = f4.reembed(vs.clone(), &[0, 1]);
                let f6 = f6.reembed(vs.clone(), &[0, 1]);
                vec![w.pow(3).add(&f4.mul(&w)).add(&f6)]
            }
            Model::QuadricNet(a) => a.iter().map(quadric_form).collect(),
            Model::SpaceQC { q, c } => vec![q.clone(), c.clone()],
            Model::HyperBranch(b) => {
                let wt = self.hyper_weight().unwrap();
                let vs = weighted_vars(&[("x", 1), ("z", 1), ("y", wt)]);
                let y = Poly::var(vs.clone(), 2, ctx);
                vec![y.pow(2).sub(&b.reembed(vs, &[0, 1]))]
            }
        }
    }

    /// Check that `g` has the representation this model expects.
    pub fn check_representation(&self, g: &GroupElement<F>) -> Result<(), CurveError> {
        let ok = match (self, g) {
            (Model::BiForm33(_), GroupElement::Bi(_)) => true,
            (Model::Trigonal { .. }, GroupElement::Tri(t)) => t.weight() == 2,
            (Model::HyperBranch(_), GroupElement::Tri(t)) => Some(t.weight()) == self.hyper_weight(),
            (Model::QuadricNet(_), GroupElement::Proj(p)) => p.dim() == 5,
            (Model::SpaceQC { .. }, GroupElement::Proj(p)) => p.dim() == 4,
            (Model::PlaneNodal { .. }, GroupElement::Proj(p)) => p.dim() == 3,
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(CurveError::WrongRepresentation { model: self.kind(), element: g.kind() })
        }
    }
}

fn not_invariant<F: Field>(p: &Poly<F>) -> CurveError {
    CurveError::NotInvariant { residual: p.to_string() }
}

fn ratio_or_residual<F: Field>(image: &Poly<F>, f: &Poly<F>) -> Result<F, CurveError> {
    match image.ratio_to(f) {
        Some(l) if !l.is_zero() => Ok(l),
        _ => Err(not_invariant(image)),
    }
}

/// How `g` transforms the model's equations; fails with the residual form when it does not
/// preserve the curve.
pub fn invariance<F: Field>(model: &Model<F>, g: &GroupElement<F>) -> Result<Invariance<F>, CurveError> {
    model.check_representation(g)?;
    match (model, g) {
        (Model::BiForm33(f), GroupElement::Bi(b)) => {
            let img = f.substitute_linear(&b.substitution())?;
            Ok(Invariance::Scalar(ratio_or_residual(&img, f)?))
        }
        (Model::Trigonal { f4, f6 }, GroupElement::Tri(t)) => {
            let c = t.c();
            let c2 = c.mul(c);
            let c3 = c2.mul(c);
            let mut l = None;
            let mut k = None;
            if !f4.is_zero() {
                let img = f4.substitute_linear(t.a())?;
                let r = ratio_or_residual(&img, f4)?;
                if r != c2 {
                    return Err(not_invariant(&img.sub(&f4.scale(&c2))));
                }
                l = Some(r);
            }
            if !f6.is_zero() {
                let img = f6.substitute_linear(t.a())?;
                let r = ratio_or_residual(&img, f6)?;
                if r != c3 {
                    return Err(not_invariant(&img.sub(&f6.scale(&c3))));
                }
                k = Some(r);
            }
            Ok(Invariance::Trigonal { lambda: c3, l, k })
        }
        (Model::HyperBranch(b), GroupElement::Tri(t)) => {
            let img = b.substitute_linear(t.a())?;
            let c2 = t.c().mul(t.c());
            let r = ratio_or_residual(&img, b)?;
            if r != c2 {
                return Err(not_invariant(&img.sub(&b.scale(&c2))));
            }
            Ok(Invariance::Scalar(c2))
        }
        (Model::PlaneNodal { f, .. }, GroupElement::Proj(p)) => {
            let img = f.substitute_linear(p.matrix())?;
            Ok(Invariance::Scalar(ratio_or_residual(&img, f)?))
        }
        (Model::SpaceQC { q, c }, GroupElement::Proj(p)) => {
            let qi = q.substitute_linear(p.matrix())?;
            let lambda = ratio_or_residual(&qi, q)?;
            let ci = c.substitute_linear(p.matrix())?;
            let ctx = q.ctx().clone();
            let mut basis_polys = vec![c.clone()];
            for i in 0..4 {
                basis_polys.push(Poly::var(q.vars().clone(), i, ctx.clone()).mul(q));
            }
            let mut all: Vec<&Poly<F>> = basis_polys.iter().collect();
            all.push(&ci);
            let vecs = coefficient_vectors(&all);
            let sol = solve_in_span(&vecs[..5], &vecs[5]).ok_or_else(|| not_invariant(&ci))?;
            if sol[0].is_zero() {
                return Err(not_invariant(&ci));
            }
            Ok(Invariance::SpaceQC { lambda, mu: sol[0].clone(), linear: sol[1..].to_vec() })
        }
        (Model::QuadricNet(a), GroupElement::Proj(p)) => {
            let m = p.matrix();
            let basis: Vec<Vec<F>> = a.iter().map(sym_vector).collect();
            let mut rows = Vec::new();
            for ai in a.iter() {
                let img = m.transpose().mul(ai).mul(m);
                let sol = solve_in_span(&basis, &sym_vector(&img))
                    .ok_or_else(|| not_invariant(&quadric_form(&img)))?;
                rows.push(sol);
            }
            let n = Matrix::from_rows(rows);
            if n.det().is_zero() {
                return Err(CurveError::NotInvariant { residual: "net collapses".into() });
            }
            Ok(Invariance::Net(n))
        }
        _ => unreachable!("representation checked above"),
    }
}

/// gcd of several binary forms, skipping zeros; None when all are zero.
fn gcd_many<F: Field>(fs: &[&Poly<F>]) -> Result<Option<Poly<F>>, CurveError> {
    let mut acc: Option<Poly<F>> = None;
    for f in fs.iter().filter(|f| !f.is_zero()) {
        acc = Some(match acc {
            None => gcd_binary(f, f)?,
            Some(a) => gcd_binary(&a, f)?,
        });
    }
    Ok(acc)
}

fn positive_degree<F: Field>(f: &Poly<F>) -> bool {
    f.total_degree().unwrap_or(0) > 0
}

fn trigonal_smoothness<F: Field>(f4: &Poly<F>, f6: &Poly<F>, d: &Poly<F>) -> Result<Smoothness, CurveError> {
    let ctx = f6.ctx();
    // points over base points where f4 vanishes: then w = 0 and f6 must be singular there
    if let Some(g) = gcd_many(&[f4, f6, &f6.derivative(0), &f6.derivative(1)])? {
        if positive_degree(&g) {
            return Ok(Smoothness::Singular(format!("over the roots of {g}")));
        }
    }
    // elsewhere w = -3 f6 / (2 f4), forcing D = 0 and 2 f4 grad f6 = 3 f6 grad f4
    let h = |i: usize| {
        f4.mul(&f6.derivative(i)).scale(&F::from_i64(ctx, 2)).sub(&f4.derivative(i).mul(f6).scale(&F::from_i64(ctx, 3)))
    };
    let (hx, hy) = (h(0), h(1));
    if let Some(mut g) = gcd_many(&[d, &hx, &hy])? {
        if !f4.is_zero() {
            loop {
                let c = gcd_binary(&g, f4)?;
                if !positive_degree(&c) {
                    break;
                }
                g = g.div_exact(&c).expect("gcd divides");
            }
            if positive_degree(&g) {
                return Ok(Smoothness::Singular(format!("over the roots of {g}")));
            }
        }
    }
    Ok(Smoothness::Smooth)
}

/// Does `f` vanish to order exactly `m` at `p`?
pub fn multiplicity_at<F: Field>(f: &Poly<F>, p: &[F]) -> u32 {
    let mut layer = vec![f.clone()];
    let mut k = 0;
    loop {
        if layer.iter().any(|g| !g.eval(p).is_zero()) {
            return k;
        }
        let mut next = Vec::new();
        let mut seen = BTreeSet::new();
        for g in &layer {
            for i in 0..g.nvars() {
                let d = g.derivative(i);
                if !d.is_zero() && seen.insert(format!("{d}")) {
                    next.push(d);
                }
            }
        }
        if next.is_empty() {
            return u32::MAX;
        }
        layer = next;
        k += 1;
    }
}

/// Smoothness of the model (for plane models: the marked points have exactly their
/// multiplicities and there are no other singular points).
pub fn smoothness_check<F: Field>(model: &Model<F>) -> Smoothness {
    match smoothness_inner(model) {
        Ok(s) => s,
        Err(e) => Smoothness::Inconclusive(e.to_string()),
    }
}

fn smoothness_inner<F: Field>(model: &Model<F>) -> Result<Smoothness, CurveError> {
    match model {
        Model::Trigonal { f4, f6 } => trigonal_smoothness(f4, f6, &model.trigonal_discriminant()),
        Model::HyperBranch(b) => Ok(if is_squarefree(b)? {
            Smoothness::Smooth
        } else {
            Smoothness::Singular("branch form has a repeated factor".into())
        }),
        Model::BiForm33(f) => {
            let mut eqs = vec![f.clone()];
            eqs.extend((0..4).map(|i| f.derivative(i)));
            let blocks = [vec![0, 1], vec![2, 3]];
            let mut bad = 0usize;
            count_multiprojective(&eqs, &blocks, &mut |sys: &[Poly<F>]| -> Result<usize, CurveError> {
                if !is_inconsistent(sys) {
                    bad += 1;
                }
                Ok(0)
            })?;
            Ok(if bad == 0 { Smoothness::Smooth } else { Smoothness::Singular(format!("singular points in {bad} cells")) })
        }
        Model::PlaneNodal { f, marked } => {
            for (p, m) in marked {
                let k = multiplicity_at(f, p);
                if k != *m {
                    return Ok(Smoothness::Singular(format!(
                        "marked point {:?} has multiplicity {k}, expected {m}",
                        p.iter().map(|c| c.to_string()).collect::<Vec<_>>()
                    )));
                }
            }
            let mut eqs = vec![f.clone()];
            eqs.extend((0..3).map(|i| f.derivative(i)));
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            match projective_distinct(&eqs, &mut rng) {
                Ok(n) if n == marked.len() => Ok(Smoothness::Smooth),
                Ok(n) => Ok(Smoothness::Singular(format!("{n} singular points, {} marked", marked.len()))),
                Err(GroebnerError::PositiveDimensional) => Ok(Smoothness::Singular("singular along a curve".into())),
                Err(e) => Ok(Smoothness::Inconclusive(e.to_string())),
            }
        }
        Model::QuadricNet(_) | Model::SpaceQC { .. } => Ok(Smoothness::Inconclusive("pending probe".into())),
    }
}

/// Arithmetic genus of the model, which is the geometric genus when the model is smooth
/// (plane models: when the marked points are ordinary singularities and the only ones).
pub fn genus<F: Field>(model: &Model<F>) -> Result<u32, CurveError> {
    match model {
        Model::BiForm33(_) | Model::Trigonal { .. } | Model::SpaceQC { .. } => Ok(4),
        Model::QuadricNet(_) => Ok(5),
        Model::HyperBranch(b) => Ok((b.total_degree().unwrap() - 2) / 2),
        Model::PlaneNodal { f, marked } => {
            let d = f.total_degree().unwrap() as i64;
            let delta: i64 = marked.iter().map(|(_, m)| (*m as i64) * (*m as i64 - 1) / 2).sum();
            let g = (d - 1) * (d - 2) / 2 - delta;
            u32::try_from(g).map_err(|_| CurveError::GenusUndefined(format!("negative genus {g}")))
        }
    }
}

/// Genus after confirming the smoothness precondition.
pub fn genus_checked<F: Field>(model: &Model<F>) -> Result<u32, CurveError> {
    match smoothness_check(model) {
        Smoothness::Singular(w) => Err(CurveError::GenusUndefined(w)),
        _ => genus(model),
    }
}
