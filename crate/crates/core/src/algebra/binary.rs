//! Binary forms: homogeneous polynomials in two weight-1 variables (x, y).

use super::field::Field;
use super::poly::{Poly, Vars};
use super::upoly::UPoly;
use super::AlgebraError;

fn check_binary<F: Field>(f: &Poly<F>) -> Result<u32, AlgebraError> {
    if f.nvars() != 2 {
        return Err(AlgebraError::Shape(format!("binary form expected, got {} variables", f.nvars())));
    }
    if !f.is_homogeneous() {
        return Err(AlgebraError::Shape("binary form must be homogeneous".into()));
    }
    Ok(f.total_degree().unwrap_or(0))
}

/// f(x, 1) together with the multiplicity of the root (1:0), i.e. the power of y dividing f.
pub fn dehomogenize<F: Field>(f: &Poly<F>) -> (UPoly<F>, u32) {
    let d = f.total_degree().unwrap_or(0);
    let mut c = vec![F::zero(f.ctx()); d as usize + 1];
    for (e, v) in f.terms() {
        c[e[0] as usize] = v.clone();
    }
    let u = UPoly::new(f.ctx().clone(), c);
    let dx = u.degree().map_or(0, |k| k as u32);
    (u, d - dx)
}

/// y^ymult * homogenization of u.
pub fn homogenize<F: Field>(vars: Vars, u: &UPoly<F>, ymult: u32) -> Poly<F> {
    let d = u.degree().map_or(0, |k| k as u32);
    let mut p = Poly::zero(vars, u.ctx().clone());
    for (k, c) in u.coeffs().iter().enumerate() {
        p.add_term(vec![k as u32, d - k as u32 + ymult], c.clone());
    }
    p
}

/// Greatest common divisor, scaled so its first coefficient in decreasing powers of x is 1.
pub fn gcd_binary<F: Field>(f: &Poly<F>, g: &Poly<F>) -> Result<Poly<F>, AlgebraError> {
    if f.is_zero() && g.is_zero() {
        return Err(AlgebraError::ZeroInput);
    }
    if f.is_zero() {
        check_binary(g)?;
        return Ok(normalize(g));
    }
    if g.is_zero() {
        check_binary(f)?;
        return Ok(normalize(f));
    }
    check_binary(f)?;
    check_binary(g)?;
    let (uf, yf) = dehomogenize(f);
    let (ug, yg) = dehomogenize(g);
    let u = uf.gcd(&ug);
    Ok(homogenize(f.vars().clone(), &u, yf.min(yg)))
}

fn normalize<F: Field>(f: &Poly<F>) -> Poly<F> {
    let (u, y) = dehomogenize(f);
    homogenize(f.vars().clone(), &u.monic(), y)
}

/// gcd(f, f_x, f_y): the repeated part of f.
pub fn repeated_part<F: Field>(f: &Poly<F>) -> Result<Poly<F>, AlgebraError> {
    let g = gcd_binary(&f.derivative(0), &f.derivative(1));
    match g {
        Ok(g) => gcd_binary(f, &g),
        // both partials vanish: constant form
        Err(AlgebraError::ZeroInput) => Ok(normalize(f)),
        Err(e) => Err(e),
    }
}

/// Number of distinct projective roots of a nonzero binary form, (1:0) and (0:1) included.
pub fn distinct_root_count<F: Field>(f: &Poly<F>) -> Result<usize, AlgebraError> {
    if f.is_zero() {
        return Err(AlgebraError::ZeroInput);
    }
    let d = check_binary(f)?;
    let r = repeated_part(f)?;
    Ok((d - r.total_degree().unwrap_or(0)) as usize)
}

/// Number of distinct roots of exact multiplicity one.
pub fn simple_root_count<F: Field>(f: &Poly<F>) -> Result<usize, AlgebraError> {
    let all = distinct_root_count(f)?;
    let r = repeated_part(f)?;
    let multiple = if r.total_degree().unwrap_or(0) == 0 { 0 } else { distinct_root_count(&r)? };
    Ok(all - multiple)
}

pub fn is_squarefree<F: Field>(f: &Poly<F>) -> Result<bool, AlgebraError> {
    let d = check_binary(f)?;
    Ok(distinct_root_count(f)? == d as usize)
}
