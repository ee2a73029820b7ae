//! Sylvester resultants and low-degree discriminants over polynomial coefficient rings.

use super::field::Field;
use super::poly::Poly;
use super::AlgebraError;

/// Coefficients of f as a polynomial in variable `var`, lowest power first, padded to `deg + 1`.
fn coeffs_in<F: Field>(f: &Poly<F>, var: usize, deg: usize) -> Vec<Poly<F>> {
    let mut c = f.coefficients_in(var);
    c.resize(deg + 1, Poly::zero(f.vars().clone(), f.ctx().clone()));
    c
}

/// Coefficients of a form homogeneous in the pair (a, b), indexed by the power of a.
fn coeffs_in_pair<F: Field>(f: &Poly<F>, a: usize, b: usize) -> Result<(Vec<Poly<F>>, usize), AlgebraError> {
    let mut deg = None;
    for (e, _) in f.terms() {
        let d = (e[a] + e[b]) as usize;
        match deg {
            None => deg = Some(d),
            Some(d0) if d0 != d => {
                return Err(AlgebraError::Shape("form is not homogeneous in the eliminated pair".into()))
            }
            _ => {}
        }
    }
    let deg = deg.unwrap_or(0);
    let zero = Poly::zero(f.vars().clone(), f.ctx().clone());
    let mut c = vec![zero; deg + 1];
    for (e, v) in f.terms() {
        let k = e[a] as usize;
        let mut rest = e.clone();
        rest[a] = 0;
        rest[b] = 0;
        c[k].add_term(rest, v.clone());
    }
    Ok((c, deg))
}

/// Determinant of a square matrix of polynomials, fraction-free (Bareiss).
pub fn poly_det<F: Field>(mut m: Vec<Vec<Poly<F>>>) -> Poly<F> {
    let n = m.len();
    assert!(n > 0, "empty determinant");
    let vars = m[0][0].vars().clone();
    let ctx = m[0][0].ctx().clone();
    let mut sign = false;
    let mut prev = Poly::constant(vars.clone(), F::one(&ctx));
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return Poly::zero(vars, ctx);
            };
            m.swap(k, p);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num.div_exact(&prev).expect("Bareiss step is exact");
            }
            m[i][k] = Poly::zero(vars.clone(), ctx.clone());
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        d.neg()
    } else {
        d
    }
}

fn sylvester<F: Field>(fc: &[Poly<F>], gc: &[Poly<F>]) -> Poly<F> {
    let (m, n) = (fc.len() - 1, gc.len() - 1);
    let size = m + n;
    let vars = fc[0].vars().clone();
    let ctx = fc[0].ctx().clone();
    if size == 0 {
        return Poly::constant(vars, F::one(&ctx));
    }
    let zero = Poly::zero(vars, ctx);
    let mut rows = Vec::with_capacity(size);
    // highest power first in each row
    for i in 0..n {
        let mut r = vec![zero.clone(); size];
        for (k, c) in fc.iter().rev().enumerate() {
            r[i + k] = c.clone();
        }
        rows.push(r);
    }
    for i in 0..m {
        let mut r = vec![zero.clone(); size];
        for (k, c) in gc.iter().rev().enumerate() {
            r[i + k] = c.clone();
        }
        rows.push(r);
    }
    poly_det(rows)
}

/// Resultant of f and g with respect to the variable `var`; the result no longer involves `var`.
pub fn resultant<F: Field>(f: &Poly<F>, g: &Poly<F>, var: usize) -> Result<Poly<F>, AlgebraError> {
    if f.is_zero() || g.is_zero() {
        return Err(AlgebraError::ZeroInput);
    }
    let df = f.degree_in(var).unwrap_or(0) as usize;
    let dg = g.degree_in(var).unwrap_or(0) as usize;
    Ok(sylvester(&coeffs_in(f, var, df), &coeffs_in(g, var, dg)))
}

/// Resultant of two forms homogeneous in the variable pair (a, b), eliminating both.
pub fn resultant_pair<F: Field>(f: &Poly<F>, g: &Poly<F>, a: usize, b: usize) -> Result<Poly<F>, AlgebraError> {
    if f.is_zero() || g.is_zero() {
        return Err(AlgebraError::ZeroInput);
    }
    let (fc, _) = coeffs_in_pair(f, a, b)?;
    let (gc, _) = coeffs_in_pair(g, a, b)?;
    Ok(sylvester(&fc, &gc))
}

/// Discriminant in the variable `var`, for degree 2 or 3.
///
/// Degree 2 gives b^2 - 4ac. Degree 3 gives the negative of the classical discriminant, so that
/// w^3 + p w + q yields 4p^3 + 27q^2.
pub fn discriminant<F: Field>(f: &Poly<F>, var: usize) -> Result<Poly<F>, AlgebraError> {
    let d = f.degree_in(var).unwrap_or(0) as usize;
    let c = coeffs_in(f, var, d);
    let ctx = f.ctx().clone();
    let k = |n: i64| F::from_i64(&ctx, n);
    match d {
        2 => {
            let (a, b, cc) = (&c[2], &c[1], &c[0]);
            Ok(b.mul(b).sub(&a.mul(cc).scale(&k(4))))
        }
        3 => {
            let (a, b, cc, dd) = (&c[3], &c[2], &c[1], &c[0]);
            let b2 = b.mul(b);
            let c2 = cc.mul(cc);
            let classical = b2
                .mul(&c2)
                .sub(&a.mul(&c2.mul(cc)).scale(&k(4)))
                .sub(&b2.mul(b).mul(dd).scale(&k(4)))
                .sub(&a.mul(a).mul(&dd.mul(dd)).scale(&k(27)))
                .add(&a.mul(b).mul(cc).mul(dd).scale(&k(18)));
            Ok(classical.neg())
        }
        _ => Err(AlgebraError::UnsupportedDegree(d)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::cyclo::CycloField;
    use crate::algebra::poly::{vars, weighted_vars};
    use crate::algebra::CycNum;

    fn p(names: &[&str], terms: &[(&[u32], i64)]) -> Poly<CycNum> {
        let f = CycloField::default_field();
        Poly::from_terms(vars(names), f, terms.iter().map(|(e, c)| (e.to_vec(), f.int(*c))))
    }

    #[test]
    fn small_resultants() {
        let r = resultant(&p(&["x", "y"], &[(&[1, 0], 1), (&[0, 1], -1)]), &p(&["x", "y"], &[(&[1, 0], 1), (&[0, 1], 1)]), 0)
            .unwrap();
        assert_eq!(r, p(&["x", "y"], &[(&[0, 1], 2)]));
        let r = resultant(&p(&["x", "z"], &[(&[2, 0], 1), (&[0, 2], 1)]), &p(&["x", "z"], &[(&[1, 0], 1), (&[0, 1], -1)]), 0)
            .unwrap();
        assert_eq!(r, p(&["x", "z"], &[(&[0, 2], 2)]));
    }

    #[test]
    fn trigonal_discriminant() {
        let fld = CycloField::default_field();
        let v = weighted_vars(&[("x", 1), ("y", 1), ("w", 2)]);
        let f = Poly::from_terms(
            v.clone(),
            fld,
            [(vec![0, 0, 3], fld.one()), (vec![0, 4, 1], fld.one()), (vec![5, 0, 0], fld.one())],
        );
        let d = discriminant(&f, 2).unwrap();
        let expect = Poly::from_terms(v, fld, [(vec![0, 12, 0], fld.int(4)), (vec![10, 0, 0], fld.int(27))]);
        assert_eq!(d, expect);
    }

    #[test]
    fn quadratic_discriminant_and_degree_error() {
        let f = p(&["w", "b", "c"], &[(&[2, 0, 0], 1), (&[1, 1, 0], 1), (&[0, 0, 1], 1)]);
        assert_eq!(discriminant(&f, 0).unwrap(), p(&["w", "b", "c"], &[(&[0, 2, 0], 1), (&[0, 0, 1], -4)]));
        let q = p(&["w"], &[(&[4], 1)]);
        assert!(matches!(discriminant(&q, 0), Err(AlgebraError::UnsupportedDegree(4))));
    }
}
