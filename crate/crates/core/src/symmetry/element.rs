use std::fmt;

use crate::algebra::{CycNum, Field, Matrix};

use super::SymmetryError;

/// Scale a matrix so that its first nonzero entry (row-major) is 1; returns the factor used.
fn canonical_matrix<F: Field>(m: &Matrix<F>) -> (Matrix<F>, F) {
    let first = m.entries().iter().find(|c| !c.is_zero()).expect("zero matrix");
    let s = first.inv().unwrap();
    (m.scale(&s), s)
}

/// Collineation of projective space, x' = M x.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ProjMap<F: Field> {
    m: Matrix<F>,
}

impl<F: Field> ProjMap<F> {
    pub fn new(m: Matrix<F>) -> Result<Self, SymmetryError> {
        if m.rows() != m.cols() {
            return Err(SymmetryError::Shape("projective map needs a square matrix".into()));
        }
        if m.det().is_zero() {
            return Err(SymmetryError::Singular);
        }
        Ok(ProjMap { m: canonical_matrix(&m).0 })
    }

    pub fn matrix(&self) -> &Matrix<F> {
        &self.m
    }

    pub fn dim(&self) -> usize {
        self.m.rows()
    }
}

/// Automorphism of P1 x P1. Without swap (x, y) -> (A x, B y); with swap (x, y) -> (A y, B x).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BiMoebius<F: Field> {
    a: Matrix<F>,
    b: Matrix<F>,
    swap: bool,
}

impl<F: Field> BiMoebius<F> {
    pub fn new(a: Matrix<F>, b: Matrix<F>, swap: bool) -> Result<Self, SymmetryError> {
        for m in [&a, &b] {
            if m.rows() != 2 || m.cols() != 2 {
                return Err(SymmetryError::Shape("bi-Moebius factors must be 2x2".into()));
            }
            if m.det().is_zero() {
                return Err(SymmetryError::Singular);
            }
        }
        Ok(BiMoebius { a: canonical_matrix(&a).0, b: canonical_matrix(&b).0, swap })
    }

    pub fn a(&self) -> &Matrix<F> {
        &self.a
    }

    pub fn b(&self) -> &Matrix<F> {
        &self.b
    }

    pub fn swap(&self) -> bool {
        self.swap
    }

    /// 4x4 matrix of the pullback substitution on (x1, x2, y1, y2).
    pub fn substitution(&self) -> Matrix<F> {
        let ctx = self.a.ctx();
        Matrix::from_fn(4, 4, |i, j| {
            let (bi, bj) = (i / 2, j / 2);
            let src = if self.swap { 1 - bi } else { bi };
            if bj != src {
                return F::zero(&ctx);
            }
            let m = if bi == 0 { &self.a } else { &self.b };
            m.get(i % 2, j % 2).clone()
        })
    }

    /// Action on P3 through the Segre coordinates z_{ij} = x_i y_j (index 2i + j).
    pub fn segre(&self) -> Matrix<F> {
        Matrix::from_fn(4, 4, |r, c| {
            let (i, j) = (r / 2, r % 2);
            let (l, k) = (c / 2, c % 2);
            if self.swap {
                // z'_{ij} = sum A_ik B_jl z_{lk}
                self.a.get(i, k).mul(self.b.get(j, l))
            } else {
                self.a.get(i, l).mul(self.b.get(j, k))
            }
        })
    }
}

/// Automorphism (A, c) of a model in weighted projective space P(1, 1, weight):
/// (x, y, w) -> (A (x, y), c w), with (A, c) ~ (s A, s^weight c).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TrigonalMap<F: Field> {
    a: Matrix<F>,
    c: F,
    weight: u32,
}

impl<F: Field> TrigonalMap<F> {
    pub fn new(a: Matrix<F>, c: F, weight: u32) -> Result<Self, SymmetryError> {
        if a.rows() != 2 || a.cols() != 2 {
            return Err(SymmetryError::Shape("trigonal base action must be 2x2".into()));
        }
        if a.det().is_zero() || c.is_zero() {
            return Err(SymmetryError::Singular);
        }
        let (a, s) = canonical_matrix(&a);
        let c = c.mul(&s.pow_u(weight as u128));
        Ok(TrigonalMap { a, c, weight })
    }

    pub fn a(&self) -> &Matrix<F> {
        &self.a
    }

    pub fn c(&self) -> &F {
        &self.c
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }
}

/// A transformation in one of the three representations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum GroupElement<F: Field = CycNum> {
    Proj(ProjMap<F>),
    Bi(BiMoebius<F>),
    Tri(TrigonalMap<F>),
}

/// Projective order together with the scalars of g^m.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectiveOrder<F: Field> {
    pub order: u64,
    pub scalars: Vec<F>,
}

pub const DEFAULT_ORDER_CAP: u64 = 256;

impl<F: Field> GroupElement<F> {
    pub fn kind(&self) -> &'static str {
        match self {
            GroupElement::Proj(_) => "projmap",
            GroupElement::Bi(_) => "bimoebius",
            GroupElement::Tri(_) => "trigonal",
        }
    }

    pub fn ctx(&self) -> F::Ctx {
        match self {
            GroupElement::Proj(p) => p.m.ctx(),
            GroupElement::Bi(b) => b.a.ctx(),
            GroupElement::Tri(t) => t.a.ctx(),
        }
    }

    /// The identity of the same kind and shape.
    pub fn identity_like(&self) -> Self {
        let ctx = self.ctx();
        match self {
            GroupElement::Proj(p) => GroupElement::Proj(ProjMap { m: Matrix::identity(p.dim(), &ctx) }),
            GroupElement::Bi(_) => GroupElement::Bi(BiMoebius {
                a: Matrix::identity(2, &ctx),
                b: Matrix::identity(2, &ctx),
                swap: false,
            }),
            GroupElement::Tri(t) => GroupElement::Tri(TrigonalMap {
                a: Matrix::identity(2, &ctx),
                c: F::one(&ctx),
                weight: t.weight,
            }),
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == self.identity_like()
    }

    /// self after other: p -> self(other(p)).
    pub fn compose(&self, other: &Self) -> Result<Self, SymmetryError> {
        match (self, other) {
            (GroupElement::Proj(g), GroupElement::Proj(h)) if g.dim() == h.dim() => {
                Ok(GroupElement::Proj(ProjMap { m: canonical_matrix(&g.m.mul(&h.m)).0 }))
            }
            (GroupElement::Bi(g), GroupElement::Bi(h)) => {
                let (a, b) = if g.swap { (g.a.mul(&h.b), g.b.mul(&h.a)) } else { (g.a.mul(&h.a), g.b.mul(&h.b)) };
                Ok(GroupElement::Bi(BiMoebius {
                    a: canonical_matrix(&a).0,
                    b: canonical_matrix(&b).0,
                    swap: g.swap ^ h.swap,
                }))
            }
            (GroupElement::Tri(g), GroupElement::Tri(h)) if g.weight == h.weight => {
                Ok(GroupElement::Tri(TrigonalMap::new(g.a.mul(&h.a), g.c.mul(&h.c), g.weight)?))
            }
            _ => Err(SymmetryError::Shape(format!("cannot compose {} with {}", self.kind(), other.kind()))),
        }
    }

    pub fn inverse(&self) -> Self {
        match self {
            GroupElement::Proj(p) => GroupElement::Proj(ProjMap { m: canonical_matrix(&p.m.inverse().unwrap()).0 }),
            GroupElement::Bi(b) => {
                let (ai, bi) = (b.a.inverse().unwrap(), b.b.inverse().unwrap());
                let (a, bb) = if b.swap { (bi, ai) } else { (ai, bi) };
                GroupElement::Bi(BiMoebius { a: canonical_matrix(&a).0, b: canonical_matrix(&bb).0, swap: b.swap })
            }
            GroupElement::Tri(t) => {
                GroupElement::Tri(TrigonalMap::new(t.a.inverse().unwrap(), t.c.inv().unwrap(), t.weight).unwrap())
            }
        }
    }

    pub fn pow(&self, e: u64) -> Self {
        let mut acc = self.identity_like();
        for _ in 0..e {
            acc = self.compose(&acc).unwrap();
        }
        acc
    }

    /// Least m with g^m scalar, and the scalars of that power for the canonical representative.
    pub fn projective_order(&self, cap: u64) -> Result<ProjectiveOrder<F>, SymmetryError> {
        match self {
            GroupElement::Proj(p) => {
                let mut acc = p.m.clone();
                for m in 1..=cap {
                    if let Some(c) = acc.scalar_value() {
                        return Ok(ProjectiveOrder { order: m, scalars: vec![c] });
                    }
                    acc = acc.mul(&p.m);
                }
            }
            GroupElement::Bi(b) => {
                let (mut a, mut bb, mut swap) = (b.a.clone(), b.b.clone(), b.swap);
                for m in 1..=cap {
                    if !swap {
                        if let (Some(ca), Some(cb)) = (a.scalar_value(), bb.scalar_value()) {
                            return Ok(ProjectiveOrder { order: m, scalars: vec![ca, cb] });
                        }
                    }
                    // self after the current power
                    let (na, nb) = if b.swap { (b.a.mul(&bb), b.b.mul(&a)) } else { (b.a.mul(&a), b.b.mul(&bb)) };
                    a = na;
                    bb = nb;
                    swap ^= b.swap;
                }
            }
            GroupElement::Tri(t) => {
                let (mut a, mut c) = (t.a.clone(), t.c.clone());
                for m in 1..=cap {
                    if let Some(s) = a.scalar_value() {
                        if c == s.pow_u(t.weight as u128) {
                            return Ok(ProjectiveOrder { order: m, scalars: vec![s, c] });
                        }
                    }
                    a = a.mul(&t.a);
                    c = c.mul(&t.c);
                }
            }
        }
        Err(SymmetryError::OrderTooLarge(cap))
    }

    /// Order in the group (for a finite-order element).
    pub fn order(&self) -> Result<u64, SymmetryError> {
        Ok(self.projective_order(DEFAULT_ORDER_CAP)?.order)
    }

    /// The linear matrix through which the element acts on its ambient projective space:
    /// the matrix itself, the Segre 4x4 matrix, or the base action A.
    pub fn linear_matrix(&self) -> Matrix<F> {
        match self {
            GroupElement::Proj(p) => p.m.clone(),
            GroupElement::Bi(b) => b.segre(),
            GroupElement::Tri(t) => t.a.clone(),
        }
    }

    /// Apply a coefficient map (for example reduction modulo a prime).
    pub fn try_map<G: Field, E>(&self, ctx: &G::Ctx, f: &impl Fn(&F) -> Result<G, E>) -> Result<GroupElement<G>, E>
    where
        E: From<SymmetryError>,
    {
        let mm = |m: &Matrix<F>| -> Result<Matrix<G>, E> {
            let rows = m.rows();
            let cols = m.cols();
            let mut data = Vec::with_capacity(rows);
            for i in 0..rows {
                let mut r = Vec::with_capacity(cols);
                for j in 0..cols {
                    r.push(f(m.get(i, j))?);
                }
                data.push(r);
            }
            let _ = ctx;
            Ok(Matrix::from_rows(data))
        };
        Ok(match self {
            GroupElement::Proj(p) => GroupElement::Proj(ProjMap::new(mm(&p.m)?)?),
            GroupElement::Bi(b) => GroupElement::Bi(BiMoebius::new(mm(&b.a)?, mm(&b.b)?, b.swap)?),
            GroupElement::Tri(t) => GroupElement::Tri(TrigonalMap::new(mm(&t.a)?, f(&t.c)?, t.weight)?),
        })
    }

    /// Stable text key; equal keys iff equal elements.
    pub fn key(&self) -> String {
        format!("{self}")
    }
}

impl GroupElement<CycNum> {
    /// Rescale so that g^m is exactly the identity, searching the session roots of unity.
    pub fn normalize_finite(&self) -> Result<(Self, u64), SymmetryError> {
        let po = self.projective_order(DEFAULT_ORDER_CAP)?;
        let m = po.order as i64;
        let field = po.scalars[0].field();
        let n = field.index() as i64;
        let find = |c: &CycNum| -> Result<CycNum, SymmetryError> {
            (0..n)
                .map(|t| field.zeta_pow(t))
                .find(|s| (s.pow(m) * c.clone()).is_one())
                .ok_or(SymmetryError::FieldTooSmall)
        };
        Ok(match self {
            GroupElement::Proj(p) => {
                let s = find(&po.scalars[0])?;
                (GroupElement::Proj(ProjMap { m: p.m.scale(&s) }), po.order)
            }
            GroupElement::Bi(b) => {
                let sa = find(&po.scalars[0])?;
                let sb = find(&po.scalars[1])?;
                (GroupElement::Bi(BiMoebius { a: b.a.scale(&sa), b: b.b.scale(&sb), swap: b.swap }), po.order)
            }
            GroupElement::Tri(t) => {
                let s = find(&po.scalars[0])?;
                let c = t.c.clone() * s.pow(t.weight as i64);
                if !c.pow(m).is_one() {
                    return Err(SymmetryError::FieldTooSmall);
                }
                (GroupElement::Tri(TrigonalMap { a: t.a.scale(&s), c, weight: t.weight }), po.order)
            }
        })
    }
}

/// Eigenvalues and eigenspaces of a finite-order matrix whose eigenvalues are session roots of unity.
pub fn eigen_split(m: &Matrix<CycNum>, order: u64) -> Result<Vec<(CycNum, Vec<Vec<CycNum>>)>, SymmetryError> {
    let field = m.ctx();
    let n = field.index() as u64;
    if n % order != 0 {
        return Err(SymmetryError::FieldTooSmall);
    }
    let mut out = Vec::new();
    let mut total = 0;
    for t in 0..order {
        let lam = field.zeta_pow((t * (n / order)) as i64);
        let shifted = m.sub(&Matrix::identity(m.rows(), &field).scale(&lam));
        let k = shifted.kernel();
        if !k.is_empty() {
            total += k.len();
            out.push((lam, k));
        }
    }
    if total != m.rows() {
        return Err(SymmetryError::NotDiagonalizable);
    }
    Ok(out)
}

impl<F: Field> fmt::Display for GroupElement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Proj(p) => write!(f, "proj{:?}", p.m),
            GroupElement::Bi(b) => write!(f, "bi{}{:?}{:?}", if b.swap { "~" } else { "" }, b.a, b.b),
            GroupElement::Tri(t) => write!(f, "tri{}{:?}({})", t.weight, t.a, t.c),
        }
    }
}

impl<F: Field> fmt::Debug for GroupElement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
