//! Field abstraction shared by the exact and modular linear-algebra paths.
//!
//! Operations are routed through a context value rather than inherent
//! methods: the rational-function field needs no state, but prime fields
//! carry their modulus, and passing a context keeps element types plain.

use crate::error::QError;
use crate::scalar::Scalar;

pub trait FieldCtx: Clone + Send + Sync {
    type E: Clone + PartialEq + std::fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn inv(&self, a: &Self::E) -> Result<Self::E, QError>;
    fn from_int(&self, n: i64) -> Self::E;

    fn div(&self, a: &Self::E, b: &Self::E) -> Result<Self::E, QError> {
        Ok(self.mul(a, &self.inv(b)?))
    }
}

/// The rational-function field Q(t) or Q(t, s).
#[derive(Clone, Copy, Debug)]
pub struct ScalarField {
    pub vars: usize,
}

impl FieldCtx for ScalarField {
    type E = Scalar;

    fn zero(&self) -> Scalar {
        Scalar::zero(self.vars)
    }
    fn one(&self) -> Scalar {
        Scalar::one(self.vars)
    }
    fn is_zero(&self, a: &Scalar) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        a.add(b)
    }
    fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        a.sub(b)
    }
    fn neg(&self, a: &Scalar) -> Scalar {
        a.neg()
    }
    fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        a.mul(b)
    }
    fn inv(&self, a: &Scalar) -> Result<Scalar, QError> {
        a.inv()
    }
    fn from_int(&self, n: i64) -> Scalar {
        Scalar::from_int(self.vars, n)
    }
}

/// The prime field Z/p with p an odd prime above 2^31.
#[derive(Clone, Copy, Debug)]
pub struct PrimeField {
    pub p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Self {
        PrimeField { p }
    }

    pub fn reduce_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }

    pub fn pow(&self, mut base: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, base, self.p);
            }
            base = mulmod(base, base, self.p);
            e >>= 1;
        }
        acc
    }
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

impl FieldCtx for PrimeField {
    type E = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p { s - self.p } else { s }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b { a - b } else { a + self.p - b }
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 { 0 } else { self.p - a }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mulmod(*a, *b, self.p)
    }
    fn inv(&self, a: &u64) -> Result<u64, QError> {
        if *a == 0 {
            return Err(QError::ZeroDivisor);
        }
        Ok(self.pow(*a, self.p - 2))
    }
    fn from_int(&self, n: i64) -> u64 {
        self.reduce_i64(n)
    }
}
