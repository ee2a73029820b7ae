use std::fmt::{Debug, Display};
use std::hash::Hash;

use super::cyclo::{CycNum, CycloField};

/// Minimal field interface shared by the exact cyclotomic field and the finite fields.
///
/// Elements carry enough context to do arithmetic on their own; `Ctx` is only
/// needed to manufacture constants.
pub trait Field: Clone + PartialEq + Eq + Hash + Debug + Display + Send + Sync + 'static {
    type Ctx: Clone + Debug + Send + Sync;

    fn ctx(&self) -> Self::Ctx;
    fn zero(ctx: &Self::Ctx) -> Self;
    fn one(ctx: &Self::Ctx) -> Self;
    fn from_i64(ctx: &Self::Ctx, n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Option<Self>;

    /// 0 for characteristic zero.
    fn characteristic(ctx: &Self::Ctx) -> u64;

    /// Number of elements, None when infinite.
    fn size(ctx: &Self::Ctx) -> Option<u128>;

    /// Roots of unity the field lists cheaply (used to find eigenvalues); may be empty.
    fn roots_of_unity(_ctx: &Self::Ctx) -> Vec<Self> {
        Vec::new()
    }

    fn is_one(&self) -> bool {
        *self == Self::one(&self.ctx())
    }

    fn div(&self, other: &Self) -> Option<Self> {
        Some(self.mul(&other.inv()?))
    }

    fn pow_u(&self, mut e: u128) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.ctx());
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
}

impl Field for CycNum {
    type Ctx = &'static CycloField;

    fn ctx(&self) -> Self::Ctx {
        self.field()
    }
    fn zero(ctx: &Self::Ctx) -> Self {
        ctx.zero()
    }
    fn one(ctx: &Self::Ctx) -> Self {
        ctx.one()
    }
    fn from_i64(ctx: &Self::Ctx, n: i64) -> Self {
        ctx.int(n)
    }
    fn is_zero(&self) -> bool {
        CycNum::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        std::ops::Add::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        std::ops::Sub::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        std::ops::Mul::mul(self, other)
    }
    fn neg(&self) -> Self {
        std::ops::Neg::neg(self)
    }
    fn inv(&self) -> Option<Self> {
        CycNum::inv(self)
    }
    fn characteristic(_: &Self::Ctx) -> u64 {
        0
    }
    fn size(_: &Self::Ctx) -> Option<u128> {
        None
    }
    fn roots_of_unity(ctx: &Self::Ctx) -> Vec<Self> {
        (0..ctx.index() as i64).map(|k| ctx.zeta_pow(k)).collect()
    }
    fn is_one(&self) -> bool {
        CycNum::is_one(self)
    }
}
