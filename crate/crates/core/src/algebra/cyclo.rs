use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Mutex;

use num::bigint::BigInt;
use num::integer::Integer;
use num::{One, Signed, ToPrimitive, Zero};
use once_cell::sync::Lazy;

use super::{AlgebraError, Rational};

/// Default field index: Q(zeta_120) contains i, j, eps and zeta_8.
pub const DEFAULT_INDEX: u32 = 120;

/// Integer coefficients of the n-th cyclotomic polynomial, lowest degree first.
pub fn cyclotomic_polynomial(n: u32) -> Vec<BigInt> {
    assert!(n >= 1, "cyclotomic index must be positive");
    static MEMO: Lazy<Mutex<HashMap<u32, Vec<BigInt>>>> = Lazy::new(|| Mutex::new(HashMap::new()));
    if let Some(p) = MEMO.lock().unwrap().get(&n) {
        return p.clone();
    }
    // t^n - 1 divided by every Phi_d with d | n, d < n.
    let mut num: Vec<BigInt> = vec![BigInt::zero(); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            num = exact_div_monic(&num, &cyclotomic_polynomial(d));
        }
    }
    MEMO.lock().unwrap().insert(n, num.clone());
    num
}

fn exact_div_monic(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let da = a.len() - 1;
    let mut q = vec![BigInt::zero(); da - db + 1];
    for k in (0..=da - db).rev() {
        let c = r[k + db].clone();
        if c.is_zero() {
            continue;
        }
        for (i, bi) in b.iter().enumerate() {
            r[k + i] -= &c * bi;
        }
        q[k] = c;
    }
    debug_assert!(r.iter().all(|c| c.is_zero()));
    q
}

pub fn euler_phi(n: u32) -> usize {
    let mut n = n;
    let mut out = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out as usize
}

/// The field Q(zeta_n) in the power basis modulo Phi_n.
pub struct CycloField {
    n: u32,
    phi: usize,
    modulus: Vec<BigInt>,
    // t^phi = -sum c_i t^i; only the nonzero c_i are kept
    tail: Vec<(usize, BigInt)>,
    powers: Vec<Vec<BigInt>>,
}

impl fmt::Debug for CycloField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(zeta_{})", self.n)
    }
}

static REGISTRY: Lazy<Mutex<HashMap<u32, &'static CycloField>>> = Lazy::new(|| Mutex::new(HashMap::new()));

impl CycloField {
    /// Shared field of index `n`; built once and kept for the process lifetime.
    pub fn get(n: u32) -> &'static CycloField {
        assert!(n >= 1);
        let mut reg = REGISTRY.lock().unwrap();
        if let Some(f) = reg.get(&n) {
            return f;
        }
        let f: &'static CycloField = Box::leak(Box::new(CycloField::build(n)));
        reg.insert(n, f);
        f
    }

    pub fn default_field() -> &'static CycloField {
        Self::get(DEFAULT_INDEX)
    }

    fn build(n: u32) -> CycloField {
        let modulus = cyclotomic_polynomial(n);
        let phi = modulus.len() - 1;
        let tail: Vec<(usize, BigInt)> = modulus[..phi]
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i, c.clone()))
            .collect();
        let mut field = CycloField { n, phi, modulus, tail, powers: Vec::new() };
        let mut cur = vec![BigInt::zero(); phi];
        cur[0] = BigInt::one();
        let mut powers = Vec::with_capacity(n as usize);
        for _ in 0..n {
            powers.push(cur.clone());
            // multiply by t
            let mut next = vec![BigInt::zero(); phi + 1];
            for (i, c) in cur.iter().enumerate() {
                next[i + 1] = c.clone();
            }
            field.reduce(&mut next);
            next.truncate(phi);
            cur = next;
        }
        field.powers = powers;
        field
    }

    pub fn index(&self) -> u32 {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.phi
    }

    pub fn modulus(&self) -> &[BigInt] {
        &self.modulus
    }

    fn reduce(&self, v: &mut Vec<BigInt>) {
        let phi = self.phi;
        if v.len() <= phi {
            v.resize(phi, BigInt::zero());
            return;
        }
        for k in (phi..v.len()).rev() {
            if v[k].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut v[k]);
            for (i, m) in &self.tail {
                v[k - phi + i] -= &c * m;
            }
        }
        v.truncate(phi);
    }

    pub fn zero(&'static self) -> CycNum {
        CycNum { field: self, num: vec![BigInt::zero(); self.phi], den: BigInt::one() }
    }

    pub fn one(&'static self) -> CycNum {
        self.int(1)
    }

    pub fn int(&'static self, k: i64) -> CycNum {
        let mut z = self.zero();
        z.num[0] = BigInt::from(k);
        z
    }

    pub fn rational(&'static self, r: &Rational) -> CycNum {
        let mut z = self.zero();
        z.num[0] = r.numer().clone();
        z.den = r.denom().clone();
        z.normalize();
        z
    }

    /// zeta_n^k for any integer k.
    pub fn zeta_pow(&'static self, k: i64) -> CycNum {
        let e = k.rem_euclid(self.n as i64) as usize;
        CycNum { field: self, num: self.powers[e].clone(), den: BigInt::one() }
    }

    /// zeta_k^j expressed in this field; k must divide the field index.
    pub fn root(&'static self, k: u32, j: i64) -> Result<CycNum, AlgebraError> {
        if k == 0 || self.n % k != 0 {
            return Err(AlgebraError::UnsupportedRoot { order: k, index: self.n });
        }
        Ok(self.zeta_pow(j * (self.n / k) as i64))
    }
}

/// Element of Q(zeta_n): integer numerator vector over a positive common denominator.
#[derive(Clone)]
pub struct CycNum {
    field: &'static CycloField,
    num: Vec<BigInt>,
    den: BigInt,
}

/// zeta_K^j in the default field.
pub fn make_root(k: u32, j: i64) -> Result<CycNum, AlgebraError> {
    CycloField::default_field().root(k, j)
}

impl CycNum {
    pub fn field(&self) -> &'static CycloField {
        self.field
    }

    pub fn field_index(&self) -> u32 {
        self.field.n
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -&self.den;
            for c in self.num.iter_mut() {
                *c = -&*c;
            }
        }
        let mut g = self.den.clone();
        let mut all_zero = true;
        for c in &self.num {
            if !c.is_zero() {
                all_zero = false;
                g = g.gcd(c);
                if g.is_one() {
                    return;
                }
            }
        }
        if all_zero {
            self.den = BigInt::one();
            return;
        }
        if !g.is_one() {
            for c in self.num.iter_mut() {
                if !c.is_zero() {
                    *c = &*c / &g;
                }
            }
            self.den = &self.den / &g;
        }
    }

    /// Coordinates in the power basis 1, zeta, ..., zeta^(phi-1).
    pub fn coeffs(&self) -> Vec<Rational> {
        self.num.iter().map(|c| Rational::new(c.clone(), self.den.clone())).collect()
    }

    pub fn from_coeffs(field: &'static CycloField, coeffs: &[Rational]) -> CycNum {
        let mut acc = field.zero();
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc = &acc + &(&field.rational(c) * &field.zeta_pow(i as i64));
            }
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(|c| c.is_zero())
    }

    /// Some(r) when the element is rational.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.num[1..].iter().all(|c| c.is_zero()) {
            Some(Rational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    fn single_term(&self) -> Option<(usize, &BigInt)> {
        let mut found = None;
        for (i, c) in self.num.iter().enumerate() {
            if !c.is_zero() {
                if found.is_some() {
                    return None;
                }
                found = Some((i, c));
            }
        }
        found
    }

    pub fn inv(&self) -> Option<CycNum> {
        if self.is_zero() {
            return None;
        }
        let f = self.field;
        if let Some((i, c)) = self.single_term() {
            // (c/den) zeta^i -> (den/c) zeta^-i
            let mut out = f.zeta_pow(-(i as i64));
            let scale = Rational::new(self.den.clone(), c.clone());
            for v in out.num.iter_mut() {
                *v = &*v * scale.numer();
            }
            out.den = scale.denom().clone();
            out.normalize();
            return Some(out);
        }
        let a: Vec<Rational> = self.coeffs();
        let m: Vec<Rational> = f.modulus.iter().map(|c| Rational::from_integer(c.clone())).collect();
        let s = rat_poly_inverse(&a, &m)?;
        Some(CycNum::from_rat_vec(f, &s))
    }

    fn from_rat_vec(field: &'static CycloField, v: &[Rational]) -> CycNum {
        let mut den = BigInt::one();
        for c in v {
            den = den.lcm(c.denom());
        }
        let mut num: Vec<BigInt> = v.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        field.reduce(&mut num);
        let mut out = CycNum { field, num, den };
        out.normalize();
        out
    }

    pub fn pow(&self, e: i64) -> CycNum {
        if e < 0 {
            return self.inv().expect("inverse of zero").pow(-e);
        }
        let mut base = self.clone();
        let mut acc = self.field.one();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Complex conjugate (zeta -> zeta^-1).
    pub fn conj(&self) -> CycNum {
        let f = self.field;
        let mut acc = vec![BigInt::zero(); f.phi];
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let p = &f.powers[(f.n as usize - i) % f.n as usize];
            for (k, v) in p.iter().enumerate() {
                if !v.is_zero() {
                    acc[k] += c * v;
                }
            }
        }
        let mut out = CycNum { field: f, num: acc, den: self.den.clone() };
        out.normalize();
        out
    }

    /// Numerical value under zeta = exp(2 pi i / n); for diagnostics and float oracles.
    pub fn to_complex(&self) -> (f64, f64) {
        let n = self.field.n as f64;
        let d = self.den.to_f64().unwrap_or(f64::NAN);
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let v = c.to_f64().unwrap_or(f64::NAN) / d;
            let ang = 2.0 * std::f64::consts::PI * k as f64 / n;
            re += v * ang.cos();
            im += v * ang.sin();
        }
        (re, im)
    }
}

// Inverse of a modulo m over Q by the extended Euclidean algorithm.
fn rat_poly_inverse(a: &[Rational], m: &[Rational]) -> Option<Vec<Rational>> {
    fn trim(v: &mut Vec<Rational>) {
        while v.last().map_or(false, |c| c.is_zero()) {
            v.pop();
        }
    }
    fn sub_scaled(a: &mut Vec<Rational>, b: &[Rational], c: &Rational, shift: usize) {
        if a.len() < b.len() + shift {
            a.resize(b.len() + shift, Rational::zero());
        }
        for (i, bi) in b.iter().enumerate() {
            if !bi.is_zero() {
                a[i + shift] = &a[i + shift] - c * bi;
            }
        }
        trim(a);
    }
    fn mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    out[i + j] = &out[i + j] + x * y;
                }
            }
        }
        out
    }
    let mut r0 = m.to_vec();
    let mut r1 = a.to_vec();
    trim(&mut r0);
    trim(&mut r1);
    let mut s0: Vec<Rational> = Vec::new();
    let mut s1: Vec<Rational> = vec![Rational::one()];
    while !r1.is_empty() {
        // q = r0 div r1
        let mut rem = r0.clone();
        let mut q = vec![Rational::zero(); rem.len().saturating_sub(r1.len()) + 1];
        let lc = r1.last().unwrap().clone();
        while rem.len() >= r1.len() && !rem.is_empty() {
            let shift = rem.len() - r1.len();
            let c = rem.last().unwrap() / &lc;
            q[shift] = c.clone();
            sub_scaled(&mut rem, &r1, &c, shift);
        }
        let mut s2 = s0.clone();
        let qs = mul(&q, &s1);
        for (i, v) in qs.iter().enumerate() {
            if s2.len() <= i {
                s2.resize(i + 1, Rational::zero());
            }
            s2[i] = &s2[i] - v;
        }
        trim(&mut s2);
        r0 = std::mem::replace(&mut r1, rem);
        s0 = std::mem::replace(&mut s1, s2);
    }
    // r0 is the gcd, a nonzero constant when a is invertible
    if r0.len() != 1 {
        return None;
    }
    let c = r0[0].clone();
    Some(s0.iter().map(|v| v / &c).collect())
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        self.field.n == other.field.n && self.den == other.den && self.num == other.num
    }
}

impl Eq for CycNum {}

impl Hash for CycNum {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.n.hash(state);
        self.den.hash(state);
        self.num.hash(state);
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let r = Rational::new(c.clone(), self.den.clone());
            let neg = r.is_negative();
            let a = r.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            match (k, a.is_one()) {
                (0, _) => write!(f, "{}", a)?,
                (_, true) => write!(f, "z{}^{}", self.field.n, k)?,
                (_, false) => write!(f, "{}*z{}^{}", a, self.field.n, k)?,
            }
        }
        Ok(())
    }
}

fn check_same(a: &CycNum, b: &CycNum) {
    assert_eq!(a.field.n, b.field.n, "cyclotomic field mismatch");
}

impl<'a> Add<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn add(self, rhs: &'a CycNum) -> CycNum {
        check_same(self, rhs);
        let num: Vec<BigInt> = if self.den == rhs.den {
            self.num.iter().zip(&rhs.num).map(|(a, b)| a + b).collect()
        } else {
            self.num.iter().zip(&rhs.num).map(|(a, b)| a * &rhs.den + b * &self.den).collect()
        };
        let den = if self.den == rhs.den { self.den.clone() } else { &self.den * &rhs.den };
        let mut out = CycNum { field: self.field, num, den };
        out.normalize();
        out
    }
}

impl<'a> Sub<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn sub(self, rhs: &'a CycNum) -> CycNum {
        self + &(-rhs)
    }
}

impl<'a> Neg for &'a CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum { field: self.field, num: self.num.iter().map(|c| -c).collect(), den: self.den.clone() }
    }
}

impl<'a> Mul<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn mul(self, rhs: &'a CycNum) -> CycNum {
        check_same(self, rhs);
        let f = self.field;
        let phi = f.phi;
        let mut acc = vec![BigInt::zero(); 2 * phi - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.num.iter().enumerate() {
                if !b.is_zero() {
                    acc[i + j] += a * b;
                }
            }
        }
        f.reduce(&mut acc);
        let mut out = CycNum { field: f, num: acc, den: &self.den * &rhs.den };
        out.normalize();
        out
    }
}

impl<'a> Div<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn div(self, rhs: &'a CycNum) -> CycNum {
        self * &rhs.inv().expect("division by zero in cyclotomic field")
    }
}

macro_rules! owned_ops {
    ($t:ty) => {
        impl Add for $t {
            type Output = $t;
            fn add(self, rhs: $t) -> $t {
                &self + &rhs
            }
        }
        impl Sub for $t {
            type Output = $t;
            fn sub(self, rhs: $t) -> $t {
                &self - &rhs
            }
        }
        impl Mul for $t {
            type Output = $t;
            fn mul(self, rhs: $t) -> $t {
                &self * &rhs
            }
        }
        impl Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                -&self
            }
        }
    };
}

owned_ops!(CycNum);

impl Div for CycNum {
    type Output = CycNum;
    fn div(self, rhs: CycNum) -> CycNum {
        &self / &rhs
    }
}

/// Checked division: errors on a zero divisor instead of panicking.
pub fn field_div(a: &CycNum, b: &CycNum) -> Result<CycNum, AlgebraError> {
    let inv = b.inv().ok_or(AlgebraError::DivisionByZero)?;
    Ok(a * &inv)
}
