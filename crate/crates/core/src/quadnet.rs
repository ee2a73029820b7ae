//! Nets of quadrics in five variables: the discriminant quintic, the Jacobian minors, the
//! kernel correspondence and the split classification.

use thiserror::Error;

use crate::algebra::{vars, Field, Matrix, Poly, Vars};
use crate::curves::{net_vars, quadric_form, CurveError, Model};

#[derive(Debug, Error)]
pub enum NetError {
    #[error("not a net of quadrics: {0}")]
    NotANet(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("factorization fails, residual {0}")]
    Factorization(String),
    #[error("pencil matrix has rank {0} at the given point, expected 4")]
    Rank(usize),
    #[error("cannot eliminate: {0}")]
    Elimination(String),
    #[error("kernel and cofactors are not proportional")]
    Correspondence,
    #[error(transparent)]
    Curve(#[from] CurveError),
}

/// Coordinates (l1, l2, l3) on the plane of the net.
pub fn lambda_vars() -> Vars {
    vars(&["l1", "l2", "l3"])
}

fn net_of<F: Field>(model: &Model<F>) -> Result<&[Matrix<F>; 3], NetError> {
    match model {
        Model::QuadricNet(a) => Ok(a),
        other => Err(NetError::NotANet(other.kind().to_string())),
    }
}

/// Determinant of a square matrix of polynomials, by expansion over column subsets.
pub fn poly_det<F: Field>(m: &[Vec<Poly<F>>], vs: &Vars, ctx: &F::Ctx) -> Poly<F> {
    let n = m.len();
    // minors[mask] = determinant of the last popcount(mask) rows on the columns in mask
    let mut minors: Vec<Option<Poly<F>>> = vec![None; 1 << n];
    minors[0] = Some(Poly::constant(vs.clone(), F::one(ctx)));
    for mask in 1usize..(1 << n) {
        let k = mask.count_ones() as usize;
        let row = n - k;
        let mut acc = Poly::zero(vs.clone(), ctx.clone());
        let mut sign_pos = 0;
        for c in 0..n {
            if mask & (1 << c) == 0 {
                continue;
            }
            let rest = minors[mask & !(1 << c)].as_ref().unwrap();
            if !m[row][c].is_zero() && !rest.is_zero() {
                let t = m[row][c].mul(rest);
                acc = if sign_pos % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
            }
            sign_pos += 1;
        }
        minors[mask] = Some(acc);
    }
    minors[(1 << n) - 1].take().unwrap()
}

/// The pencil matrix l1 A1 + l2 A2 + l3 A3 with entries linear forms u_ik.
pub fn pencil_matrix<F: Field>(model: &Model<F>) -> Result<Vec<Vec<Poly<F>>>, NetError> {
    let a = net_of(model)?;
    let lv = lambda_vars();
    let ctx = a[0].ctx();
    Ok((0..5)
        .map(|i| {
            (0..5)
                .map(|k| {
                    let mut u = Poly::zero(lv.clone(), ctx.clone());
                    for (j, aj) in a.iter().enumerate() {
                        let mut e = vec![0; 3];
                        e[j] = 1;
                        u.add_term(e, aj.get(i, k).clone());
                    }
                    u
                })
                .collect()
        })
        .collect())
}

/// Δ₅ = det(l1 A1 + l2 A2 + l3 A3).
pub fn delta5<F: Field>(model: &Model<F>) -> Result<Poly<F>, NetError> {
    let m = pencil_matrix(model)?;
    let ctx = net_of(model)?[0].ctx();
    Ok(poly_det(&m, &lambda_vars(), &ctx))
}

/// The ten 3x3 minors of the Jacobian (dF_i/dx_k), keyed by the column triple.
pub fn jacobian_minors<F: Field>(model: &Model<F>) -> Result<Vec<([usize; 3], Poly<F>)>, NetError> {
    let a = net_of(model)?;
    let ctx = a[0].ctx();
    let forms: Vec<Poly<F>> = a.iter().map(quadric_form).collect();
    let jac: Vec<Vec<Poly<F>>> = forms.iter().map(|f| (0..5).map(|k| f.derivative(k)).collect()).collect();
    let xv = net_vars();
    let mut out = Vec::with_capacity(10);
    for i in 0..5 {
        for j in i + 1..5 {
            for k in j + 1..5 {
                let sub: Vec<Vec<Poly<F>>> = jac.iter().map(|r| vec![r[i].clone(), r[j].clone(), r[k].clone()]).collect();
                out.push(([i, j, k], poly_det(&sub, &xv, &ctx)));
            }
        }
    }
    Ok(out)
}

/// The scalar c with q = c * product(factors).
pub fn verify_factorization<F: Field>(q: &Poly<F>, factors: &[Poly<F>]) -> Result<F, NetError> {
    let total: u32 = factors.iter().map(|f| f.total_degree().unwrap_or(0)).sum();
    if Some(total) != q.total_degree() {
        return Err(NetError::Input(format!("factor degrees sum to {total}, not {:?}", q.total_degree())));
    }
    let Some(first) = factors.first() else {
        return Err(NetError::Input("no factors".into()));
    };
    let prod = factors[1..].iter().fold(first.clone(), |acc, f| acc.mul(f));
    match q.ratio_to(&prod) {
        Some(c) if !c.is_zero() => Ok(c),
        _ => {
            let lead = |p: &Poly<F>| p.terms().next().map(|(e, c)| (e.clone(), c.clone()));
            let residual = match (lead(q), lead(&prod)) {
                (Some((e, c)), Some(_)) => match prod.coeff(&e).inv() {
                    Some(d) => q.sub(&prod.scale(&c.mul(&d))),
                    None => q.clone(),
                },
                _ => q.clone(),
            };
            Err(NetError::Factorization(residual.to_string()))
        }
    }
}

fn linear_coeffs<F: Field>(l: &Poly<F>) -> Result<Vec<F>, NetError> {
    if l.total_degree() != Some(1) || !l.is_homogeneous() || l.nvars() != 3 {
        return Err(NetError::Input(format!("{l} is not a ternary line")));
    }
    Ok((0..3)
        .map(|i| {
            let mut e = vec![0; 3];
            e[i] = 1;
            l.coeff(&e)
        })
        .collect())
}

fn conic_matrix<F: Field>(c: &Poly<F>) -> Result<Matrix<F>, NetError> {
    if c.total_degree() != Some(2) || !c.is_homogeneous() || c.nvars() != 3 {
        return Err(NetError::Input(format!("{c} is not a ternary conic")));
    }
    let ctx = c.ctx().clone();
    let two = F::from_i64(&ctx, 2);
    Ok(Matrix::from_fn(3, 3, |i, j| {
        let mut e = vec![0; 3];
        e[i] += 1;
        e[j] += 1;
        let v = c.coeff(&e);
        if i == j {
            v
        } else {
            v.div(&two).expect("characteristic 2 is not supported")
        }
    }))
}

fn cross<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    vec![
        a[1].mul(&b[2]).sub(&a[2].mul(&b[1])),
        a[2].mul(&b[0]).sub(&a[0].mul(&b[2])),
        a[0].mul(&b[1]).sub(&a[1].mul(&b[0])),
    ]
}

fn proportional<F: Field>(a: &[F], b: &[F]) -> bool {
    a.iter().any(|x| !x.is_zero())
        && b.iter().any(|x| !x.is_zero())
        && (0..a.len()).all(|i| (0..a.len()).all(|j| a[i].mul(&b[j]) == a[j].mul(&b[i])))
}

/// Whether three lines form a self-polar triangle for a conic: each line is the polar of
/// the opposite vertex.
pub fn polar_triangle<F: Field>(conic: &Poly<F>, lines: &[Poly<F>; 3]) -> Result<bool, NetError> {
    let c = conic_matrix(conic)?;
    let l: Vec<Vec<F>> = lines.iter().map(linear_coeffs).collect::<Result<_, _>>()?;
    for i in 0..3 {
        let vertex = cross(&l[(i + 1) % 3], &l[(i + 2) % 3]);
        if vertex.iter().all(|x| x.is_zero()) {
            return Ok(false);
        }
        if !proportional(&c.mul_vec(&vertex), &l[i]) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Result of the split classification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitType {
    /// 1 to 7, in the order: irreducible; line + quartic; conic + cubic; two lines + cubic;
    /// line + two conics; three lines + conic; five lines.
    pub case: u32,
    /// Variable blocks, each sorted, largest block first.
    pub blocks: Vec<Vec<usize>>,
    /// Systems of Abelian root forms: the pairwise intersections of the Δ₅ components.
    pub root_form_systems: usize,
}

/// Detects the block shape of the net after the optional basis change x -> P x. For an
/// unsplit net the count of root-form systems is `double_points`, supplied by the caller.
pub fn classify_split<F: Field>(
    model: &Model<F>,
    basis: Option<&Matrix<F>>,
    double_points: usize,
) -> Result<SplitType, NetError> {
    let a = net_of(model)?;
    let mats: Vec<Matrix<F>> = match basis {
        None => a.to_vec(),
        Some(p) => {
            if p.rows() != 5 || p.cols() != 5 || p.det().is_zero() {
                return Err(NetError::Input("basis change must be an invertible 5x5 matrix".into()));
            }
            a.iter().map(|m| p.transpose().mul(m).mul(p)).collect()
        }
    };
    let mut parent: Vec<usize> = (0..5).collect();
    fn find(p: &mut [usize], i: usize) -> usize {
        if p[i] != i {
            let r = find(p, p[i]);
            p[i] = r;
        }
        p[i]
    }
    for m in &mats {
        for i in 0..5 {
            for k in i + 1..5 {
                if !m.get(i, k).is_zero() {
                    let (ri, rk) = (find(&mut parent, i), find(&mut parent, k));
                    parent[ri] = rk;
                }
            }
        }
    }
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for root in 0..5 {
        let b: Vec<usize> = (0..5).filter(|&i| find(&mut parent, i) == root).collect();
        if !b.is_empty() {
            blocks.push(b);
        }
    }
    blocks.sort_by(|x, y| y.len().cmp(&x.len()).then(x.cmp(y)));
    let sizes: Vec<usize> = blocks.iter().map(|b| b.len()).collect();
    let case = match sizes.as_slice() {
        [5] => 1,
        [4, 1] => 2,
        [3, 2] => 3,
        [3, 1, 1] => 4,
        [2, 2, 1] => 5,
        [2, 1, 1, 1] => 6,
        [1, 1, 1, 1, 1] => 7,
        _ => unreachable!("block sizes partition 5"),
    };
    let root_form_systems = if case == 1 {
        double_points
    } else {
        let sq: usize = sizes.iter().map(|d| d * d).sum();
        (25 - sq) / 2
    };
    Ok(SplitType { case, blocks, root_form_systems })
}

/// Two quadrics spanning the part of the net free of the square of one variable.
#[derive(Clone, Debug)]
pub struct Eliminated<F: Field> {
    pub var: usize,
    /// A member of the net not involving the variable at all.
    pub free: Poly<F>,
    /// A second member where the variable occurs only linearly (equal to `free`'s partner
    /// also free of it when the whole subspace avoids the variable).
    pub linear: Poly<F>,
}

impl<F: Field> Eliminated<F> {
    /// Writes `linear` as v*L + R and substitutes v = -R/L into the given quadric of the
    /// net, cleared of denominators: a R^2 - M R L + N L^2 for a v^2 + M v + N.
    pub fn resolvent(&self, target: &Poly<F>) -> Result<Poly<F>, NetError> {
        let v = self.var;
        let split = |p: &Poly<F>| -> Vec<Poly<F>> {
            let mut c = p.coefficients_in(v);
            c.resize(3, Poly::zero(p.vars().clone(), p.ctx().clone()));
            c
        };
        let lin = split(&self.linear);
        if !lin[2].is_zero() || lin[1].is_zero() {
            return Err(NetError::Elimination("second quadric is not linear in the variable".into()));
        }
        let (r, l) = (&lin[0], &lin[1]);
        let t = split(target);
        if t[2].is_zero() {
            return Err(NetError::Elimination("target does not contain the square".into()));
        }
        let (a, m, n) = (&t[2], &t[1], &t[0]);
        Ok(a.mul(&r.mul(r)).sub(&m.mul(&r.mul(l))).add(&n.mul(&l.mul(l))))
    }
}

/// Finds the members of the net with no `var`² term. One of them must avoid the variable
/// entirely; otherwise it occurs in cross terms that cannot be eliminated.
pub fn eliminate_square<F: Field>(model: &Model<F>, var: usize) -> Result<Eliminated<F>, NetError> {
    let a = net_of(model)?;
    if var >= 5 {
        return Err(NetError::Input(format!("variable index {var} out of range")));
    }
    let ctx = a[0].ctx();
    let sq = Matrix::from_rows(vec![a.iter().map(|m| m.get(var, var).clone()).collect()]);
    let span = sq.kernel();
    if span.len() != 2 {
        return Err(NetError::Elimination(format!("x{} does not occur squared", var + 1)));
    }
    // cross coefficients of var restricted to the span
    let cross = Matrix::from_fn(5, 2, |k, s| {
        if k == var {
            F::zero(&ctx)
        } else {
            (0..3).fold(F::zero(&ctx), |acc, j| acc.add(&span[s][j].mul(a[j].get(var, k))))
        }
    });
    let free_dirs = cross.kernel();
    let Some(fd) = free_dirs.first() else {
        return Err(NetError::Elimination(format!("x{} occurs off the diagonal in every member", var + 1)));
    };
    let combo = |c: &[F]| -> Poly<F> {
        let coeffs: Vec<F> = (0..3).map(|j| c[0].mul(&span[0][j]).add(&c[1].mul(&span[1][j]))).collect();
        let m = (0..3).fold(Matrix::zeros(5, 5, &ctx), |acc, j| acc.add(&a[j].scale(&coeffs[j])));
        quadric_form(&m)
    };
    let free = combo(fd);
    let other = if free_dirs.len() == 2 {
        free_dirs[1].clone()
    } else if fd[0].is_zero() {
        vec![F::one(&ctx), F::zero(&ctx)]
    } else {
        vec![F::zero(&ctx), F::one(&ctx)]
    };
    Ok(Eliminated { var, free, linear: combo(&other) })
}

/// Kernel point x of the pencil at a smooth point λ of Δ₅, checked against x_i x_k = ρ U_ik
/// with U the cofactor matrix.
pub fn correspondence_check<F: Field>(model: &Model<F>, lambda: &[F]) -> Result<Vec<F>, NetError> {
    let a = net_of(model)?;
    if lambda.len() != 3 {
        return Err(NetError::Input("λ needs three coordinates".into()));
    }
    let ctx = a[0].ctx();
    let m = (0..3).fold(Matrix::zeros(5, 5, &ctx), |acc, j| acc.add(&a[j].scale(&lambda[j])));
    let rank = m.rank();
    if rank != 4 {
        return Err(NetError::Rank(rank));
    }
    let x = m.kernel().remove(0);
    let cof = Matrix::from_fn(5, 5, |i, k| {
        let minor = Matrix::from_fn(4, 4, |r, c| {
            let rr = if r < i { r } else { r + 1 };
            let cc = if c < k { c } else { c + 1 };
            m.get(rr, cc).clone()
        });
        let d = minor.det();
        if (i + k) % 2 == 0 {
            d
        } else {
            d.neg()
        }
    });
    let outer: Vec<F> = (0..25).map(|t| x[t / 5].mul(&x[t % 5])).collect();
    if !proportional(&outer, cof.entries()) {
        return Err(NetError::Correspondence);
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::CycloField;
    use crate::CycNum;

    fn q(n: i64) -> CycNum {
        CycloField::default_field().int(n)
    }

    fn diag_net(rows: [[i64; 5]; 3]) -> Model<CycNum> {
        Model::quadric_net(rows.map(|r| Matrix::diag(&r.map(q)))).unwrap()
    }

    #[test]
    fn diagonal_delta5_is_five_lines() {
        let net = diag_net([[1, 1, 1, 1, 1], [0, 1, 2, 3, 4], [0, 1, 4, 9, 16]]);
        let d = delta5(&net).unwrap();
        let lv = lambda_vars();
        let ctx = CycloField::default_field();
        let lines: Vec<Poly<CycNum>> = (0..5)
            .map(|i| Poly::from_terms(lv.clone(), ctx, [(vec![1, 0, 0], q(1)), (vec![0, 1, 0], q(i)), (vec![0, 0, 1], q(i * i))]))
            .collect();
        assert_eq!(verify_factorization(&d, &lines).unwrap(), q(1));
        assert!(verify_factorization(&d, &lines[..4]).is_err());
        let split = classify_split(&net, None, 0).unwrap();
        assert_eq!((split.case, split.root_form_systems), (7, 10));
        assert!(matches!(correspondence_check(&net, &[q(0), q(1), q(-1)]), Err(NetError::Rank(3))));
        let x = correspondence_check(&net, &[q(0), q(1), q(0)]).unwrap();
        assert_eq!(x.iter().filter(|c| !c.is_zero()).count(), 1);
    }

    #[test]
    fn cross_term_blocks_elimination() {
        let ctx = CycloField::default_field();
        let mut m2 = Matrix::diag(&[0, 1, 0, 0, 0].map(q));
        m2.set(3, 4, q(1));
        m2.set(4, 3, q(1));
        let mut m3 = Matrix::diag(&[0, 0, 1, 0, 0].map(q));
        m3.set(0, 4, q(1));
        m3.set(4, 0, q(1));
        let net = Model::quadric_net([Matrix::diag(&[1, 0, 0, 0, 1].map(q)), m2, m3]).unwrap();
        assert!(matches!(eliminate_square(&net, 4), Err(NetError::Elimination(_))));
        let diag = diag_net([[1, 1, 1, 1, 1], [0, 1, 2, 3, 4], [0, 1, 4, 9, 16]]);
        let e = eliminate_square(&diag, 0).unwrap();
        for f in [&e.free, &e.linear] {
            assert_eq!(f.degree_in(0), Some(0));
        }
        let _ = ctx;
    }
}
