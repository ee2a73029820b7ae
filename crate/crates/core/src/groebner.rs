//! Zero-dimensional polynomial systems: grevlex Groebner bases, quotient algebras and
//! point counts. Generic over the field, so the same code runs over Q(zeta) and over
//! finite fields.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::algebra::{Field, Matrix, Poly, UPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroebnerError {
    #[error("system is not zero-dimensional")]
    PositiveDimensional,
    #[error("quotient algebra too large ({0} standard monomials)")]
    TooLarge(usize),
    #[error("separating form not found after {0} attempts")]
    NoSeparatingForm(usize),
}

type Mono = Vec<u32>;

fn deg(m: &[u32]) -> u32 {
    m.iter().sum()
}

/// Graded reverse lexicographic order.
pub fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    match deg(a).cmp(&deg(b)) {
        Ordering::Equal => {}
        o => return o,
    }
    for i in (0..a.len()).rev() {
        match a[i].cmp(&b[i]) {
            Ordering::Equal => continue,
            o => return o.reverse(),
        }
    }
    Ordering::Equal
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[u32], b: &[u32]) -> Mono {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn mono_sub(a: &[u32], b: &[u32]) -> Mono {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn mono_add(a: &[u32], b: &[u32]) -> Mono {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Sparse polynomial with terms sorted in decreasing grevlex order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GPoly<F: Field> {
    terms: Vec<(Mono, F)>,
}

impl<F: Field> GPoly<F> {
    pub fn from_poly(p: &Poly<F>) -> Self {
        let mut terms: Vec<(Mono, F)> = p.terms().map(|(e, c)| (e.clone(), c.clone())).collect();
        terms.sort_by(|a, b| grevlex(&b.0, &a.0));
        GPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lm(&self) -> &Mono {
        &self.terms[0].0
    }

    fn lc(&self) -> &F {
        &self.terms[0].1
    }

    fn monic(mut self) -> Self {
        if let Some(inv) = self.terms.first().and_then(|t| t.1.inv()) {
            for t in &mut self.terms {
                t.1 = t.1.mul(&inv);
            }
        }
        self
    }

    /// self - c * m * other
    fn sub_mul(&self, c: &F, m: &[u32], other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut i = 0;
        let mut j = 0;
        let shifted = |k: usize| mono_add(&other.terms[k].0, m);
        let mut next_j = if other.terms.is_empty() { None } else { Some(shifted(0)) };
        while i < self.terms.len() || next_j.is_some() {
            let take = match (&self.terms.get(i), &next_j) {
                (Some(a), Some(b)) => grevlex(&a.0, b),
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (None, None) => unreachable!(),
            };
            match take {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let e = next_j.take().unwrap();
                    out.push((e, other.terms[j].1.mul(c).neg()));
                    j += 1;
                    next_j = if j < other.terms.len() { Some(shifted(j)) } else { None };
                }
                Ordering::Equal => {
                    let v = self.terms[i].1.sub(&other.terms[j].1.mul(c));
                    if !v.is_zero() {
                        out.push((self.terms[i].0.clone(), v));
                    }
                    i += 1;
                    j += 1;
                    next_j = if j < other.terms.len() { Some(shifted(j)) } else { None };
                }
            }
        }
        GPoly { terms: out }
    }

    fn to_poly(&self, template: &Poly<F>) -> Poly<F> {
        Poly::from_terms(template.vars().clone(), template.ctx().clone(), self.terms.iter().cloned())
    }
}

/// Full reduction of p modulo the (monic) basis.
fn reduce<F: Field>(p: &GPoly<F>, basis: &[GPoly<F>]) -> GPoly<F> {
    let mut p = p.clone();
    let mut rem: Vec<(Mono, F)> = Vec::new();
    while !p.is_zero() {
        let lm = p.lm().clone();
        match basis.iter().find(|g| divides(g.lm(), &lm)) {
            Some(g) => {
                let m = mono_sub(&lm, g.lm());
                let c = p.lc().clone();
                p = p.sub_mul(&c, &m, g);
            }
            None => {
                let t = p.terms.remove(0);
                rem.push(t);
            }
        }
    }
    GPoly { terms: rem }
}

fn spoly<F: Field>(f: &GPoly<F>, g: &GPoly<F>) -> GPoly<F> {
    let l = lcm(f.lm(), g.lm());
    let a = GPoly { terms: Vec::new() }.sub_mul(&f.lc().inv().unwrap().neg(), &mono_sub(&l, f.lm()), f);
    a.sub_mul(&g.lc().inv().unwrap(), &mono_sub(&l, g.lm()), g)
}

/// Reduced grevlex Groebner basis (monic). The zero ideal gives an empty basis.
pub fn groebner<F: Field>(input: &[GPoly<F>]) -> Vec<GPoly<F>> {
    let mut basis: Vec<GPoly<F>> = Vec::new();
    let mut pairs: BTreeSet<(u32, usize, usize)> = BTreeSet::new();
    let add = |h: GPoly<F>, basis: &mut Vec<GPoly<F>>, pairs: &mut BTreeSet<(u32, usize, usize)>| {
        let k = basis.len();
        let hl = h.lm().clone();
        // Gebauer-Moeller style pruning of old pairs
        let stale: Vec<_> = pairs
            .iter()
            .filter(|&&(_, i, j)| {
                let l = lcm(basis[i].lm(), basis[j].lm());
                divides(&hl, &l) && lcm(basis[i].lm(), &hl) != l && lcm(basis[j].lm(), &hl) != l
            })
            .cloned()
            .collect();
        for s in stale {
            pairs.remove(&s);
        }
        for i in 0..k {
            let l = lcm(basis[i].lm(), &hl);
            // product criterion
            if deg(&l) == deg(basis[i].lm()) + deg(&hl) {
                continue;
            }
            pairs.insert((deg(&l), i, k));
        }
        basis.push(h);
    };
    for p in input {
        let r = reduce(p, &basis);
        if !r.is_zero() {
            if deg(r.lm()) == 0 {
                return vec![r.monic()];
            }
            add(r.monic(), &mut basis, &mut pairs);
        }
    }
    while let Some(&first) = pairs.iter().next() {
        pairs.remove(&first);
        let (_, i, j) = first;
        let s = spoly(&basis[i], &basis[j]);
        let r = reduce(&s, &basis);
        if r.is_zero() {
            continue;
        }
        if deg(r.lm()) == 0 {
            return vec![r.monic()];
        }
        add(r.monic(), &mut basis, &mut pairs);
    }
    // minimalize and interreduce
    let mut minimal: Vec<GPoly<F>> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let redundant = basis.iter().enumerate().any(|(j, h)| {
            j != i && divides(h.lm(), g.lm()) && (h.lm() != g.lm() || j < i)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<GPoly<F>> =
            minimal.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, g)| g.clone()).collect();
        let g = &minimal[i];
        let tail = GPoly { terms: g.terms[1..].to_vec() };
        let mut r = reduce(&tail, &others);
        r.terms.insert(0, g.terms[0].clone());
        out.push(r.monic());
    }
    out.sort_by(|a, b| grevlex(a.lm(), b.lm()));
    out
}

/// The quotient algebra k[x]/I of a zero-dimensional ideal.
pub struct Quotient<F: Field> {
    nvars: usize,
    gb: Vec<GPoly<F>>,
    basis: Vec<Mono>,
    ctx: F::Ctx,
}

pub const DEFAULT_MAX_DIM: usize = 4000;

impl<F: Field> Quotient<F> {
    /// Build from polynomials in a common variable set. An empty variety gives dimension 0.
    pub fn new(polys: &[Poly<F>], ctx: F::Ctx, max_dim: usize) -> Result<Self, GroebnerError> {
        let nvars = polys.first().map_or(0, |p| p.nvars());
        let input: Vec<GPoly<F>> = polys.iter().filter(|p| !p.is_zero()).map(GPoly::from_poly).collect();
        let gb = groebner(&input);
        if gb.len() == 1 && deg(gb[0].lm()) == 0 {
            return Ok(Quotient { nvars, gb, basis: Vec::new(), ctx });
        }
        let mut bounds = vec![None; nvars];
        for g in &gb {
            let lm = g.lm();
            let nz: Vec<usize> = (0..nvars).filter(|&i| lm[i] > 0).collect();
            if nz.len() == 1 {
                let i = nz[0];
                bounds[i] = Some(bounds[i].map_or(lm[i], |b: u32| b.min(lm[i])));
            }
        }
        if bounds.iter().any(|b| b.is_none()) {
            return Err(GroebnerError::PositiveDimensional);
        }
        let mut basis = Vec::new();
        let mut stack = vec![vec![0u32; nvars]];
        let mut seen = BTreeSet::new();
        while let Some(m) = stack.pop() {
            if !seen.insert(m.clone()) {
                continue;
            }
            if gb.iter().any(|g| divides(g.lm(), &m)) {
                continue;
            }
            basis.push(m.clone());
            if basis.len() > max_dim {
                return Err(GroebnerError::TooLarge(basis.len()));
            }
            for i in 0..nvars {
                let mut n = m.clone();
                n[i] += 1;
                stack.push(n);
            }
        }
        basis.sort_by(|a, b| grevlex(a, b));
        Ok(Quotient { nvars, gb, basis, ctx })
    }

    /// Number of standard monomials (solutions counted with multiplicity).
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Mono] {
        &self.basis
    }

    pub fn groebner_basis(&self, template: &Poly<F>) -> Vec<Poly<F>> {
        self.gb.iter().map(|g| g.to_poly(template)).collect()
    }

    fn coords(&self, p: &GPoly<F>) -> Vec<F> {
        let r = reduce(p, &self.gb);
        let mut v = vec![F::zero(&self.ctx); self.basis.len()];
        for (e, c) in r.terms {
            let k = self.basis.binary_search_by(|b| grevlex(b, &e)).expect("normal form in the standard basis");
            v[k] = c;
        }
        v
    }

    /// Matrix of multiplication by x_i in the standard monomial basis (column k = x_i * b_k).
    pub fn mult_matrix(&self, i: usize) -> Matrix<F> {
        let d = self.basis.len();
        let one = F::one(&self.ctx);
        let cols: Vec<Vec<F>> = self
            .basis
            .iter()
            .map(|b| {
                let mut m = b.clone();
                m[i] += 1;
                self.coords(&GPoly { terms: vec![(m, one.clone())] })
            })
            .collect();
        Matrix::from_fn(d, d, |r, c| cols[c][r].clone())
    }

    fn linear_form_matrix(&self, mats: &[Matrix<F>], coeffs: &[i64]) -> Matrix<F> {
        let d = self.basis.len();
        let mut m = Matrix::zeros(d, d, &self.ctx);
        for (mi, &c) in mats.iter().zip(coeffs) {
            m = m.add(&mi.scale(&F::from_i64(&self.ctx, c)));
        }
        m
    }

    /// Number of distinct geometric points, via the characteristic polynomial of a random
    /// linear form. Two independent forms must agree.
    pub fn distinct_points(&self, rng: &mut ChaCha8Rng) -> Result<usize, GroebnerError> {
        let d = self.basis.len();
        if d <= 1 {
            return Ok(d);
        }
        let mats: Vec<Matrix<F>> = (0..self.nvars).map(|i| self.mult_matrix(i)).collect();
        let p = F::characteristic(&self.ctx);
        let bound = if p == 0 { 1_000_000 } else { (p as i64 - 1).min(1_000_000) };
        let mut prev: Option<usize> = None;
        let attempts = 8;
        for _ in 0..attempts {
            let coeffs: Vec<i64> = (0..self.nvars).map(|_| rng.gen_range(1..=bound)).collect();
            let m = self.linear_form_matrix(&mats, &coeffs);
            let chi = UPoly::new(self.ctx.clone(), m.charpoly());
            let n = chi.distinct_roots();
            match prev {
                Some(k) if k == n => return Ok(n),
                Some(k) if n > k => prev = Some(n),
                None => prev = Some(n),
                _ => {}
            }
        }
        Err(GroebnerError::NoSeparatingForm(attempts))
    }

    /// Number of points with all coordinates in the subfield of size `field_size`
    /// (a power of the characteristic), computed exactly from the field equations.
    pub fn rational_points(&self, field_size: u128) -> usize {
        let d = self.basis.len();
        if d == 0 {
            return 0;
        }
        let mats: Vec<Matrix<F>> = (0..self.nvars).map(|i| self.mult_matrix(i)).collect();
        let one_idx = self.basis.iter().position(|b| b.iter().all(|&e| e == 0)).unwrap();
        // span of x_i^Q - x_i inside the quotient, closed under multiplication
        let mut span: Vec<Vec<F>> = Vec::new();
        let mut queue: Vec<Vec<F>> = Vec::new();
        for m in &mats {
            let p = mat_pow_u128(m, field_size);
            let v: Vec<F> = (0..d).map(|r| p.get(r, one_idx).sub(m.get(r, one_idx))).collect();
            queue.push(v);
        }
        while let Some(v) = queue.pop() {
            if extend_span(&mut span, v.clone()) {
                for m in &mats {
                    queue.push(m.mul_vec(&v));
                }
            }
        }
        d - span.len()
    }
}

fn mat_pow_u128<F: Field>(m: &Matrix<F>, mut e: u128) -> Matrix<F> {
    let mut acc = Matrix::identity(m.rows(), &m.ctx());
    let mut base = m.clone();
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(&base);
        }
        e >>= 1;
        if e > 0 {
            base = base.mul(&base);
        }
    }
    acc
}

/// Add v to an echelonized span; returns whether the span grew.
fn extend_span<F: Field>(span: &mut Vec<Vec<F>>, mut v: Vec<F>) -> bool {
    for row in span.iter() {
        let p = row.iter().position(|c| !c.is_zero()).unwrap();
        if !v[p].is_zero() {
            let f = v[p].div(&row[p]).unwrap();
            for (a, b) in v.iter_mut().zip(row) {
                *a = a.sub(&f.mul(b));
            }
        }
    }
    if v.iter().all(|c| c.is_zero()) {
        return false;
    }
    span.push(v);
    true
}

/// Dehomogenize: set variable `var` to 1 (the variable stays, with exponent 0).
pub fn chart<F: Field>(p: &Poly<F>, var: usize) -> Poly<F> {
    p.specialize(var, &F::one(p.ctx()))
}

/// Remove variable `var` from the system, keeping the others in order.
fn drop_var<F: Field>(p: &Poly<F>, var: usize) -> Poly<F> {
    let vars: Vec<_> = p.vars().iter().enumerate().filter(|&(i, _)| i != var).map(|(_, v)| v.clone()).collect();
    let vars: crate::algebra::Vars = vars.into();
    let map: Vec<usize> = (0..p.nvars()).map(|i| if i < var { i } else { i.saturating_sub(1) }).collect();
    let mut out = Poly::zero(vars.clone(), p.ctx().clone());
    for (e, c) in p.terms() {
        debug_assert!(e[var] == 0);
        let mut e2 = vec![0; vars.len()];
        for (i, &k) in e.iter().enumerate() {
            if i != var {
                e2[map[i]] = k;
            }
        }
        out.add_term(e2, c.clone());
    }
    out
}

/// Geometric points of a homogeneous system in projective space (all variables weight one),
/// stratified by the standard flag so that nothing is missed or counted twice.
/// `count` receives affine systems and returns their point count.
pub fn count_projective<F: Field, E>(
    eqs: &[Poly<F>],
    count: &mut impl FnMut(&[Poly<F>]) -> Result<usize, E>,
) -> Result<usize, E> {
    let n = eqs.first().map_or(0, |p| p.nvars());
    let mut total = 0;
    let mut sys: Vec<Poly<F>> = eqs.to_vec();
    for last in (0..n).rev() {
        // points with x_last != 0 and all later coordinates already zero
        let aff: Vec<Poly<F>> = sys.iter().map(|p| drop_var(&chart(p, last), last)).collect();
        total += count(&aff)?;
        if last == 0 {
            break;
        }
        sys = sys.iter().map(|p| drop_var(&p.specialize(last, &F::zero(p.ctx())), last)).collect();
    }
    Ok(total)
}

/// Distinct geometric points of an affine system.
pub fn affine_distinct<F: Field>(
    eqs: &[Poly<F>],
    ctx: &F::Ctx,
    rng: &mut ChaCha8Rng,
) -> Result<usize, GroebnerError> {
    if eqs.is_empty() {
        return Err(GroebnerError::PositiveDimensional);
    }
    if eqs[0].nvars() == 0 {
        return Ok(usize::from(eqs.iter().all(|p| p.is_zero())));
    }
    let q = Quotient::new(eqs, ctx.clone(), DEFAULT_MAX_DIM)?;
    q.distinct_points(rng)
}

/// Points of an affine system over the subfield of size `field_size`.
pub fn affine_rational<F: Field>(eqs: &[Poly<F>], ctx: &F::Ctx, field_size: u128) -> Result<usize, GroebnerError> {
    if eqs.is_empty() {
        return Err(GroebnerError::PositiveDimensional);
    }
    if eqs[0].nvars() == 0 {
        return Ok(usize::from(eqs.iter().all(|p| p.is_zero())));
    }
    let q = Quotient::new(eqs, ctx.clone(), DEFAULT_MAX_DIM)?;
    Ok(q.rational_points(field_size))
}

/// Stratify a product of projective spaces (one block of variable indices per factor) into
/// affine cells and add up `count` over them. Each cell fixes one coordinate per block to 1
/// and all later coordinates of that block to 0; the fixed variables are dropped.
pub fn count_multiprojective<F: Field, E>(
    eqs: &[Poly<F>],
    blocks: &[Vec<usize>],
    count: &mut impl FnMut(&[Poly<F>]) -> Result<usize, E>,
) -> Result<usize, E> {
    let n = eqs.first().map_or(0, |p| p.nvars());
    let mut fixed = vec![false; n];
    multi_rec(eqs.to_vec(), blocks, &mut fixed, count)
}

fn multi_rec<F: Field, E>(
    sys: Vec<Poly<F>>,
    blocks: &[Vec<usize>],
    fixed: &mut Vec<bool>,
    count: &mut impl FnMut(&[Poly<F>]) -> Result<usize, E>,
) -> Result<usize, E> {
    let Some((block, rest)) = blocks.split_first() else {
        let aff: Vec<Poly<F>> = sys.iter().map(|p| drop_vars(p, fixed)).collect();
        return count(&aff);
    };
    let mut total = 0;
    let mut cur = sys;
    for (pos, &v) in block.iter().enumerate().rev() {
        let chart_sys: Vec<Poly<F>> = cur.iter().map(|p| chart(p, v)).collect();
        fixed[v] = true;
        total += multi_rec(chart_sys, rest, fixed, count)?;
        if pos == 0 {
            break;
        }
        cur = cur.iter().map(|p| p.specialize(v, &F::zero(p.ctx()))).collect();
    }
    for &v in block {
        fixed[v] = false;
    }
    Ok(total)
}

fn drop_vars<F: Field>(p: &Poly<F>, fixed: &[bool]) -> Poly<F> {
    let keep: Vec<usize> = (0..p.nvars()).filter(|&i| !fixed[i]).collect();
    let vars: crate::algebra::Vars = keep.iter().map(|&i| p.vars()[i].clone()).collect::<Vec<_>>().into();
    let mut out = Poly::zero(vars, p.ctx().clone());
    for (e, c) in p.terms() {
        out.add_term(keep.iter().map(|&i| e[i]).collect(), c.clone());
    }
    out
}

/// Whether a system has no solution at all in the affine space of its variables
/// (its reduced Groebner basis is {1}).
pub fn is_inconsistent<F: Field>(eqs: &[Poly<F>]) -> bool {
    if eqs.is_empty() {
        return false;
    }
    if eqs[0].nvars() == 0 {
        return eqs.iter().any(|p| !p.is_zero());
    }
    let input: Vec<GPoly<F>> = eqs.iter().filter(|p| !p.is_zero()).map(GPoly::from_poly).collect();
    let gb = groebner(&input);
    gb.len() == 1 && deg(gb[0].lm()) == 0
}

/// Distinct geometric points of a projective system.
pub fn projective_distinct<F: Field>(eqs: &[Poly<F>], rng: &mut ChaCha8Rng) -> Result<usize, GroebnerError> {
    let ctx = eqs[0].ctx().clone();
    count_projective(eqs, &mut |sys: &[Poly<F>]| affine_distinct(sys, &ctx, rng))
}

/// Projective points over the subfield of size `field_size`.
pub fn projective_rational<F: Field>(eqs: &[Poly<F>], field_size: u128) -> Result<usize, GroebnerError> {
    let ctx = eqs[0].ctx().clone();
    count_projective(eqs, &mut |sys: &[Poly<F>]| affine_rational(sys, &ctx, field_size))
}
