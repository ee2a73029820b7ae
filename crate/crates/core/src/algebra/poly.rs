use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::field::Field;
use super::matrix::Matrix;
use super::AlgebraError;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Var {
    pub name: String,
    pub weight: u32,
}

pub type Vars = Arc<[Var]>;

pub fn vars(names: &[&str]) -> Vars {
    names.iter().map(|n| Var { name: n.to_string(), weight: 1 }).collect::<Vec<_>>().into()
}

pub fn weighted_vars(spec: &[(&str, u32)]) -> Vars {
    spec.iter().map(|(n, w)| Var { name: n.to_string(), weight: *w }).collect::<Vec<_>>().into()
}

pub type Mono = Vec<u32>;

/// Sparse multivariate polynomial with named, weighted variables.
#[derive(Clone)]
pub struct Poly<F: Field> {
    vars: Vars,
    terms: BTreeMap<Mono, F>,
    ctx: F::Ctx,
}

impl<F: Field> PartialEq for Poly<F> {
    fn eq(&self, other: &Self) -> bool {
        self.vars.len() == other.vars.len() && self.terms == other.terms
    }
}

impl<F: Field> Eq for Poly<F> {}

impl<F: Field> Poly<F> {
    pub fn zero(vars: Vars, ctx: F::Ctx) -> Self {
        Poly { vars, terms: BTreeMap::new(), ctx }
    }

    pub fn constant(vars: Vars, c: F) -> Self {
        let ctx = c.ctx();
        let mut p = Poly::zero(vars, ctx);
        if !c.is_zero() {
            let n = p.vars.len();
            p.terms.insert(vec![0; n], c);
        }
        p
    }

    pub fn var(vars: Vars, i: usize, ctx: F::Ctx) -> Self {
        let n = vars.len();
        let mut e = vec![0; n];
        e[i] = 1;
        let one = F::one(&ctx);
        Poly::monomial(vars, e, one)
    }

    pub fn monomial(vars: Vars, exp: Mono, c: F) -> Self {
        assert_eq!(exp.len(), vars.len());
        let ctx = c.ctx();
        let mut p = Poly::zero(vars, ctx);
        if !c.is_zero() {
            p.terms.insert(exp, c);
        }
        p
    }

    pub fn from_terms(vars: Vars, ctx: F::Ctx, terms: impl IntoIterator<Item = (Mono, F)>) -> Self {
        let mut p = Poly::zero(vars, ctx);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, e: Mono, c: F) {
        debug_assert_eq!(e.len(), self.vars.len());
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                let s = v.add(&c);
                if s.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn ctx(&self) -> &F::Ctx {
        &self.ctx
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &F)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &[u32]) -> F {
        self.terms.get(e).cloned().unwrap_or_else(|| F::zero(&self.ctx))
    }

    /// Largest term in lexicographic exponent order.
    pub fn lex_leading(&self) -> Option<(&Mono, &F)> {
        self.terms.iter().next_back()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&k| k == 0))
    }

    pub fn constant_value(&self) -> Option<F> {
        if self.is_constant() {
            Some(self.coeff(&vec![0; self.nvars()]))
        } else {
            None
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn weighted_degree_of(&self, e: &[u32]) -> u32 {
        e.iter().zip(self.vars.iter()).map(|(k, v)| k * v.weight).sum()
    }

    pub fn weighted_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| self.weighted_degree_of(e)).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(|e| self.weighted_degree_of(e));
        match it.next() {
            None => true,
            Some(d) => it.all(|k| k == d),
        }
    }

    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[i]).max()
    }

    pub fn neg(&self) -> Self {
        Poly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect(),
            ctx: self.ctx.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.neg());
        }
        out
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Poly::zero(self.vars.clone(), self.ctx.clone());
        }
        Poly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v.mul(c))).collect(),
            ctx: self.ctx.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut acc: BTreeMap<Mono, F> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Mono = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                let c = c1.mul(c2);
                match acc.get_mut(&e) {
                    Some(v) => *v = v.add(&c),
                    None => {
                        acc.insert(e, c);
                    }
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Poly { vars: self.vars.clone(), terms: acc, ctx: self.ctx.clone() }
    }

    pub fn mul_mono(&self, e: &[u32], c: &F) -> Self {
        Poly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.iter().zip(e).map(|(a, b)| a + b).collect(), v.mul(c)))
                .filter(|(_, v): &(Mono, F)| !v.is_zero())
                .collect(),
            ctx: self.ctx.clone(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Poly::constant(self.vars.clone(), F::one(&self.ctx));
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Poly::zero(self.vars.clone(), self.ctx.clone());
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            out.add_term(e2, c.mul(&F::from_i64(&self.ctx, e[i] as i64)));
        }
        out
    }

    pub fn eval(&self, point: &[F]) -> F {
        assert_eq!(point.len(), self.nvars());
        let mut acc = F::zero(&self.ctx);
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (k, x) in e.iter().zip(point) {
                if *k > 0 {
                    t = t.mul(&x.pow_u(*k as u128));
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Replace every variable by a polynomial (all images share one variable set).
    pub fn substitute(&self, images: &[Poly<F>]) -> Poly<F> {
        assert_eq!(images.len(), self.nvars());
        let target = images
            .first()
            .map(|p| p.vars.clone())
            .unwrap_or_else(|| self.vars.clone());
        let mut cache: Vec<Vec<Poly<F>>> = images
            .iter()
            .map(|p| vec![Poly::constant(target.clone(), F::one(&self.ctx)), p.clone()])
            .collect();
        let mut out = Poly::zero(target.clone(), self.ctx.clone());
        for (e, c) in &self.terms {
            let mut t = Poly::constant(target.clone(), c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                while cache[i].len() <= k as usize {
                    let next = cache[i].last().unwrap().mul(&images[i]);
                    cache[i].push(next);
                }
                t = t.mul(&cache[i][k as usize]);
            }
            out = out.add(&t);
        }
        out
    }

    /// Pullback under x_i -> sum_j m[i][j] x_j; entries may only couple variables of equal weight.
    pub fn substitute_linear(&self, m: &Matrix<F>) -> Result<Poly<F>, AlgebraError> {
        let n = self.nvars();
        if m.rows() != n || m.cols() != n {
            return Err(AlgebraError::Shape(format!(
                "substitution is {}x{} but the form has {} variables",
                m.rows(),
                m.cols(),
                n
            )));
        }
        let mut images = Vec::with_capacity(n);
        for i in 0..n {
            let mut img = Poly::zero(self.vars.clone(), self.ctx.clone());
            for j in 0..n {
                let c = m.get(i, j);
                if c.is_zero() {
                    continue;
                }
                if self.vars[i].weight != self.vars[j].weight {
                    return Err(AlgebraError::Shape(format!(
                        "substitution mixes {} and {} of different weight",
                        self.vars[i].name, self.vars[j].name
                    )));
                }
                let mut e = vec![0; n];
                e[j] = 1;
                img.add_term(e, c.clone());
            }
            images.push(img);
        }
        Ok(self.substitute(&images))
    }

    pub fn map_coeffs<G: Field>(&self, ctx: G::Ctx, f: impl Fn(&F) -> G) -> Poly<G> {
        let mut out = Poly::zero(self.vars.clone(), ctx);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c));
        }
        out
    }

    pub fn try_map_coeffs<G: Field, E>(&self, ctx: G::Ctx, f: impl Fn(&F) -> Result<G, E>) -> Result<Poly<G>, E> {
        let mut out = Poly::zero(self.vars.clone(), ctx);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c)?);
        }
        Ok(out)
    }

    /// Coefficients of self viewed as a polynomial in variable `i`: entry k multiplies x_i^k.
    pub fn coefficients_in(&self, i: usize) -> Vec<Poly<F>> {
        let d = self.degree_in(i).unwrap_or(0) as usize;
        let mut out = vec![Poly::zero(self.vars.clone(), self.ctx.clone()); d + 1];
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let k = e2[i] as usize;
            e2[i] = 0;
            out[k].add_term(e2, c.clone());
        }
        out
    }

    /// Set variable i to a constant (the variable stays in the set with exponent 0).
    pub fn specialize(&self, i: usize, value: &F) -> Poly<F> {
        let mut out = Poly::zero(self.vars.clone(), self.ctx.clone());
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let k = e2[i];
            e2[i] = 0;
            out.add_term(e2, c.mul(&value.pow_u(k as u128)));
        }
        out
    }

    /// Move to a new variable set; `index_map[i]` is the new position of old variable i.
    pub fn reembed(&self, new_vars: Vars, index_map: &[usize]) -> Poly<F> {
        let n = new_vars.len();
        let mut out = Poly::zero(new_vars, self.ctx.clone());
        for (e, c) in &self.terms {
            let mut e2 = vec![0; n];
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    e2[index_map[i]] += k;
                }
            }
            out.add_term(e2, c.clone());
        }
        out
    }

    /// Exact division; None if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly<F>) -> Option<Poly<F>> {
        let (ld_e, ld_c) = d.lex_leading()?;
        let ld_e = ld_e.clone();
        let ld_inv = ld_c.inv()?;
        let mut r = self.clone();
        let mut q = Poly::zero(self.vars.clone(), self.ctx.clone());
        while let Some((e, c)) = r.lex_leading() {
            if e.iter().zip(&ld_e).any(|(a, b)| a < b) {
                return None;
            }
            let qe: Mono = e.iter().zip(&ld_e).map(|(a, b)| a - b).collect();
            let qc = c.mul(&ld_inv);
            r = r.sub(&d.mul_mono(&qe, &qc));
            q.add_term(qe, qc);
        }
        Some(q)
    }

    /// Divide out the largest monomial dividing every term; returns (stripped, exponent).
    pub fn strip_monomial(&self) -> (Poly<F>, Mono) {
        let n = self.nvars();
        if self.is_zero() {
            return (self.clone(), vec![0; n]);
        }
        let mut g = vec![u32::MAX; n];
        for e in self.terms.keys() {
            for (a, b) in g.iter_mut().zip(e) {
                *a = (*a).min(*b);
            }
        }
        let mut out = Poly::zero(self.vars.clone(), self.ctx.clone());
        for (e, c) in &self.terms {
            out.terms.insert(e.iter().zip(&g).map(|(a, b)| a - b).collect(), c.clone());
        }
        (out, g)
    }

    /// Some(c) with self = c * other, if such a scalar exists.
    pub fn ratio_to(&self, other: &Poly<F>) -> Option<F> {
        if self.is_zero() && other.is_zero() {
            return Some(F::one(&self.ctx));
        }
        if self.terms.len() != other.terms.len() {
            return None;
        }
        let (e, c) = other.terms.iter().next()?;
        let lam = self.terms.get(e)?.div(c)?;
        for (e, c) in &other.terms {
            match self.terms.get(e) {
                Some(v) if *v == c.mul(&lam) => {}
                _ => return None,
            }
        }
        Some(lam)
    }
}

impl<F: Field> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mono: Vec<String> = e
                .iter()
                .zip(self.vars.iter())
                .filter(|(k, _)| **k > 0)
                .map(|(k, v)| if *k == 1 { v.name.clone() } else { format!("{}^{}", v.name, k) })
                .collect();
            if mono.is_empty() {
                write!(f, "({})", c)?;
            } else if c.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "({})*{}", c, mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
