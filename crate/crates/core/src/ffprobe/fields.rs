//! Prime fields and their extensions.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::algebra::{Field, UPoly};

/// Element of the prime field with q elements (q < 2^31).
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    v: u64,
    q: u64,
}

impl Fp {
    pub fn new(q: u64, v: i64) -> Fp {
        Fp { v: v.rem_euclid(q as i64) as u64, q }
    }

    pub fn value(&self) -> u64 {
        self.v
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

pub fn pow_mod(mut b: u64, mut e: u64, q: u64) -> u64 {
    let mut acc = 1 % q;
    b %= q;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % q;
        }
        b = b * b % q;
        e >>= 1;
    }
    acc
}

impl Field for Fp {
    type Ctx = u64;

    fn ctx(&self) -> u64 {
        self.q
    }
    fn zero(q: &u64) -> Self {
        Fp { v: 0, q: *q }
    }
    fn one(q: &u64) -> Self {
        Fp { v: 1 % *q, q: *q }
    }
    fn from_i64(q: &u64, n: i64) -> Self {
        Fp::new(*q, n)
    }
    fn is_zero(&self) -> bool {
        self.v == 0
    }
    fn add(&self, o: &Self) -> Self {
        let s = self.v + o.v;
        Fp { v: if s >= self.q { s - self.q } else { s }, q: self.q }
    }
    fn sub(&self, o: &Self) -> Self {
        Fp { v: if self.v >= o.v { self.v - o.v } else { self.v + self.q - o.v }, q: self.q }
    }
    fn mul(&self, o: &Self) -> Self {
        Fp { v: self.v * o.v % self.q, q: self.q }
    }
    fn neg(&self) -> Self {
        Fp { v: if self.v == 0 { 0 } else { self.q - self.v }, q: self.q }
    }
    fn inv(&self) -> Option<Self> {
        if self.v == 0 {
            None
        } else {
            Some(Fp { v: pow_mod(self.v, self.q - 2, self.q), q: self.q })
        }
    }
    fn characteristic(q: &u64) -> u64 {
        *q
    }
    fn size(q: &u64) -> Option<u128> {
        Some(*q as u128)
    }
}

/// Description of the field with q^k elements as F_q[t]/(m(t)).
#[derive(Debug, PartialEq, Eq)]
pub struct GfSpec {
    pub q: u64,
    pub k: usize,
    /// monic modulus, lowest coefficient first, length k + 1
    pub modulus: Vec<u64>,
}

pub type GfCtx = Arc<GfSpec>;

/// Element of F_{q^k}.
#[derive(Clone)]
pub struct Gf {
    c: Vec<u64>,
    ctx: GfCtx,
}

impl PartialEq for Gf {
    fn eq(&self, o: &Self) -> bool {
        self.c == o.c && self.ctx.q == o.ctx.q && self.ctx.k == o.ctx.k
    }
}
impl Eq for Gf {}

impl Hash for Gf {
    fn hash<H: Hasher>(&self, h: &mut H) {
        self.c.hash(h);
    }
}

impl fmt::Debug for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.c.iter().map(|v| v.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Smallest monic irreducible polynomial of degree k over F_q in lexicographic order
/// of its coefficients (lowest first).
pub fn irreducible(q: u64, k: usize) -> Vec<u64> {
    if k == 1 {
        return vec![0, 1];
    }
    let mut c = vec![0u64; k];
    loop {
        let mut coeffs: Vec<Fp> = c.iter().map(|&v| Fp::new(q, v as i64)).collect();
        coeffs.push(Fp::one(&q));
        let f = UPoly::new(q, coeffs);
        if c[0] != 0 && is_irreducible(&f, q) {
            let mut out = c.clone();
            out.push(1);
            return out;
        }
        // next candidate
        let mut i = 0;
        loop {
            c[i] += 1;
            if c[i] < q {
                break;
            }
            c[i] = 0;
            i += 1;
        }
    }
}

fn is_irreducible(f: &UPoly<Fp>, q: u64) -> bool {
    let k = f.degree().unwrap();
    let t = UPoly::t(q);
    let mut x = t.clone();
    for _ in 1..=k / 2 {
        x = x.powmod(q as u128, f);
        if x.sub(&t).gcd(f).degree() != Some(0) {
            return false;
        }
    }
    true
}

impl GfSpec {
    pub fn new(q: u64, k: usize) -> GfCtx {
        Arc::new(GfSpec { q, k, modulus: irreducible(q, k) })
    }

    pub fn size(&self) -> u128 {
        (self.q as u128).pow(self.k as u32)
    }
}

impl Gf {
    pub fn from_fp(ctx: &GfCtx, v: u64) -> Gf {
        let mut c = vec![0; ctx.k];
        c[0] = v % ctx.q;
        Gf { c, ctx: ctx.clone() }
    }

    pub fn from_coeffs(ctx: &GfCtx, c: Vec<u64>) -> Gf {
        assert_eq!(c.len(), ctx.k);
        Gf { c: c.into_iter().map(|v| v % ctx.q).collect(), ctx: ctx.clone() }
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    /// The class of t, a generator of the extension over F_q.
    pub fn t(ctx: &GfCtx) -> Gf {
        let mut c = vec![0; ctx.k];
        if ctx.k == 1 {
            c[0] = (ctx.q - ctx.modulus[0]) % ctx.q;
        } else {
            c[1] = 1;
        }
        Gf { c, ctx: ctx.clone() }
    }

    /// Element of the prime field, if it is one.
    pub fn as_fp(&self) -> Option<u64> {
        if self.c[1..].iter().all(|&v| v == 0) {
            Some(self.c[0])
        } else {
            None
        }
    }

    /// Enumerate all q^k elements.
    pub fn all(ctx: &GfCtx) -> impl Iterator<Item = Gf> + '_ {
        let total = ctx.size();
        (0..total).map(move |mut n| {
            let mut c = vec![0; ctx.k];
            for v in c.iter_mut() {
                *v = (n % ctx.q as u128) as u64;
                n /= ctx.q as u128;
            }
            Gf { c, ctx: ctx.clone() }
        })
    }
}

impl Field for Gf {
    type Ctx = GfCtx;

    fn ctx(&self) -> GfCtx {
        self.ctx.clone()
    }
    fn zero(ctx: &GfCtx) -> Self {
        Gf { c: vec![0; ctx.k], ctx: ctx.clone() }
    }
    fn one(ctx: &GfCtx) -> Self {
        Gf::from_fp(ctx, 1)
    }
    fn from_i64(ctx: &GfCtx, n: i64) -> Self {
        Gf::from_fp(ctx, n.rem_euclid(ctx.q as i64) as u64)
    }
    fn is_zero(&self) -> bool {
        self.c.iter().all(|&v| v == 0)
    }
    fn add(&self, o: &Self) -> Self {
        let q = self.ctx.q;
        Gf { c: self.c.iter().zip(&o.c).map(|(a, b)| (a + b) % q).collect(), ctx: self.ctx.clone() }
    }
    fn sub(&self, o: &Self) -> Self {
        let q = self.ctx.q;
        Gf { c: self.c.iter().zip(&o.c).map(|(a, b)| (a + q - b) % q).collect(), ctx: self.ctx.clone() }
    }
    fn mul(&self, o: &Self) -> Self {
        let (q, k) = (self.ctx.q, self.ctx.k);
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, a) in self.c.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                prod[i + j] = (prod[i + j] + a * b) % q;
            }
        }
        let m = &self.ctx.modulus;
        for d in (k..prod.len()).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            for i in 0..k {
                prod[d - k + i] = (prod[d - k + i] + (q - m[i]) * c) % q;
            }
            prod[d] = 0;
        }
        prod.truncate(k);
        Gf { c: prod, ctx: self.ctx.clone() }
    }
    fn neg(&self) -> Self {
        let q = self.ctx.q;
        Gf { c: self.c.iter().map(|a| (q - a) % q).collect(), ctx: self.ctx.clone() }
    }
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(self.pow_u(self.ctx.size() - 2))
    }
    fn characteristic(ctx: &GfCtx) -> u64 {
        ctx.q
    }
    fn size(ctx: &GfCtx) -> Option<u128> {
        Some(ctx.size())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_inverse() {
        for v in 1..241 {
            let a = Fp::new(241, v);
            assert!(a.mul(&a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn extension_is_a_field() {
        let ctx = GfSpec::new(7, 3);
        let nonzero: Vec<Gf> = Gf::all(&ctx).filter(|x| !x.is_zero()).collect();
        assert_eq!(nonzero.len(), 342);
        for a in &nonzero {
            assert!(a.mul(&a.inv().unwrap()).is_one());
        }
        // t generates: t^(q^3) = t
        let t = Gf::t(&ctx);
        assert_eq!(t.pow_u(343), t);
        assert_ne!(t.pow_u(7), t);
    }
}
