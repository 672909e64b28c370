//! Exact arithmetic in the coefficient field.
//!
//! The ground field is the field of rational functions in one variable `t`
//! (or two variables `t`, `s`) over the rationals, housed as quotients of
//! Laurent polynomials with arbitrary-precision rational coefficients.
//! All deformation constants (`q`, `z`, `x`, `y`) are embedded here through
//! branch substitutions, so identities like `z^N = q^2` hold on the nose.

mod gcd;
mod parse;

pub use parse::parse_scalar;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::QError;

/// Exponent tuple; the second slot is always 0 for one-variable polynomials.
pub type Exp = [i32; 2];

pub const VAR_NAMES: [&str; 2] = ["t", "s"];

/// Graded lexicographic order with `t` before `s`.
pub fn grlex(a: &Exp, b: &Exp) -> Ordering {
    let da = a[0] as i64 + a[1] as i64;
    let db = b[0] as i64 + b[1] as i64;
    da.cmp(&db).then(a[0].cmp(&b[0]))
}

/// Laurent polynomial in one or two central indeterminates.
///
/// Invariant: no stored coefficient is zero; the zero polynomial is the
/// empty term map. Exponents may be negative.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LaurentPoly {
    vars: usize,
    terms: BTreeMap<Exp, BigRational>,
}

impl LaurentPoly {
    pub fn zero(vars: usize) -> Self {
        assert!(vars == 1 || vars == 2);
        LaurentPoly { vars, terms: BTreeMap::new() }
    }

    pub fn one(vars: usize) -> Self {
        Self::monomial(vars, [0, 0], BigRational::one())
    }

    pub fn constant(vars: usize, c: BigRational) -> Self {
        Self::monomial(vars, [0, 0], c)
    }

    pub fn monomial(vars: usize, exp: Exp, coeff: BigRational) -> Self {
        assert!(vars == 1 || vars == 2);
        assert!(vars == 2 || exp[1] == 0);
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        LaurentPoly { vars, terms }
    }

    /// The variable `t` (index 0) or `s` (index 1).
    pub fn var(vars: usize, index: usize) -> Self {
        let mut exp = [0, 0];
        exp[index] = 1;
        Self::monomial(vars, exp, BigRational::one())
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn insert_add(&mut self, exp: Exp, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.vars, other.vars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_add(*e, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.vars, other.vars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_add(*e, -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.vars, other.vars);
        let mut out = Self::zero(self.vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.insert_add([ea[0] + eb[0], ea[1] + eb[1]], ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.vars);
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = &*v * c;
        }
        out
    }

    pub fn shift(&self, by: Exp) -> Self {
        let mut out = Self::zero(self.vars);
        for (e, c) in &self.terms {
            out.terms.insert([e[0] + by[0], e[1] + by[1]], c.clone());
        }
        out
    }

    /// Minimal exponent per variable, `[0, 0]` for the zero polynomial.
    pub fn min_exp(&self) -> Exp {
        if self.is_zero() {
            return [0, 0];
        }
        let mut m = [i32::MAX, i32::MAX];
        for e in self.terms.keys() {
            m[0] = m[0].min(e[0]);
            m[1] = m[1].min(e[1]);
        }
        m
    }

    pub fn max_exp(&self) -> Exp {
        let mut m = [i32::MIN, i32::MIN];
        for e in self.terms.keys() {
            m[0] = m[0].max(e[0]);
            m[1] = m[1].max(e[1]);
        }
        m
    }

    /// Leading term under graded-lexicographic order.
    pub fn leading(&self) -> Option<(Exp, &BigRational)> {
        self.terms
            .iter()
            .max_by(|a, b| grlex(a.0, b.0))
            .map(|(e, c)| (*e, c))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one(self.vars);
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// Widen a one-variable polynomial into the two-variable ring.
    pub fn widen(&self) -> Self {
        if self.vars == 2 {
            return self.clone();
        }
        LaurentPoly { vars: 2, terms: self.terms.clone() }
    }

    /// True if every exponent is nonnegative (an honest polynomial).
    pub fn is_polynomial(&self) -> bool {
        let m = self.min_exp();
        m[0] >= 0 && m[1] >= 0
    }

    /// Exact division of true polynomials; panics if the division is inexact.
    /// Used only after gcd computations, where exactness is guaranteed.
    pub fn div_exact(&self, den: &Self) -> Self {
        assert_eq!(self.vars, den.vars);
        assert!(!den.is_zero(), "division by zero polynomial");
        let mut rem = self.clone();
        let mut quot = Self::zero(self.vars);
        let (dexp, dlc) = den.leading().expect("nonzero divisor");
        while !rem.is_zero() {
            let (rexp, rlc) = rem.leading().unwrap();
            let qexp = [rexp[0] - dexp[0], rexp[1] - dexp[1]];
            let qc = rlc / dlc;
            let mono = Self::monomial(self.vars, qexp, qc);
            quot = quot.add(&mono);
            rem = rem.sub(&mono.mul(den));
            // leading term strictly decreases under grlex; inexact division
            // would eventually push the remainder's leading term below the
            // divisor's and loop forever, so guard on that.
            if let Some((e, _)) = rem.leading() {
                if grlex(&e, &rexp) != Ordering::Less {
                    panic!("inexact polynomial division");
                }
            }
        }
        quot
    }

    /// Evaluate at a rational point; negative exponents require a nonzero
    /// coordinate, which the caller guarantees.
    pub fn eval_rational(&self, point: &[BigRational; 2]) -> BigRational {
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for v in 0..self.vars {
                term *= rational_pow(&point[v], e[v]);
            }
            acc += term;
        }
        acc
    }
}

fn rational_pow(base: &BigRational, exp: i32) -> BigRational {
    if exp == 0 {
        return BigRational::one();
    }
    let b = if exp < 0 {
        assert!(!base.is_zero(), "negative power of zero");
        base.recip()
    } else {
        base.clone()
    };
    let mut acc = BigRational::one();
    for _ in 0..exp.unsigned_abs() {
        acc = acc * &b;
    }
    acc
}

/// Exact rational function: a quotient of Laurent polynomials in canonical
/// form. The denominator is a true polynomial (minimal exponent 0 in each
/// variable) with coprime integer coefficients and positive leading
/// coefficient under graded-lexicographic order; the numerator absorbs all
/// Laurent shifts, and gcd(num, den) = 1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Scalar {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl Scalar {
    pub fn zero(vars: usize) -> Self {
        Scalar { num: LaurentPoly::zero(vars), den: LaurentPoly::one(vars) }
    }

    pub fn one(vars: usize) -> Self {
        Scalar { num: LaurentPoly::one(vars), den: LaurentPoly::one(vars) }
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        let vars = p.vars();
        Scalar::new(p, LaurentPoly::one(vars))
    }

    pub fn from_int(vars: usize, n: i64) -> Self {
        Self::from_poly(LaurentPoly::constant(vars, BigRational::from_integer(BigInt::from(n))))
    }

    pub fn monomial(vars: usize, exp: Exp, coeff: i64) -> Self {
        Self::from_poly(LaurentPoly::monomial(
            vars,
            exp,
            BigRational::from_integer(BigInt::from(coeff)),
        ))
    }

    /// The variable t (as a scalar), or s for `index == 1`.
    pub fn var(vars: usize, index: usize) -> Self {
        Self::from_poly(LaurentPoly::var(vars, index))
    }

    /// Construct and canonicalize.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Self {
        assert!(!den.is_zero(), "zero divisor");
        let vars = num.vars().max(den.vars());
        let num = if vars == 2 { num.widen() } else { num };
        let den = if vars == 2 { den.widen() } else { den };
        if num.is_zero() {
            return Scalar::zero(vars);
        }
        // Split off Laurent monomial parts so both sides are true polynomials
        // with minimal exponent 0 per variable.
        let nm = num.min_exp();
        let dm = den.min_exp();
        let npoly = num.shift([-nm[0], -nm[1]]);
        let dpoly = den.shift([-dm[0], -dm[1]]);
        let g = gcd::poly_gcd(&npoly, &dpoly);
        let mut n = npoly.div_exact(&g);
        let mut d = dpoly.div_exact(&g);
        // Normalize the denominator to coprime integer coefficients with a
        // positive grlex-leading coefficient.
        let scale = gcd::integral_normalizer(&d);
        d = d.scale(&scale);
        n = n.scale(&scale);
        let shift = [nm[0] - dm[0], nm[1] - dm[1]];
        Scalar { num: n.shift(shift), den: d }
    }

    pub fn vars(&self) -> usize {
        self.num.vars()
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == LaurentPoly::one(self.vars()) && self.den == LaurentPoly::one(self.vars())
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = widen_pair(self, other);
        Scalar::new(
            a.num.mul(&b.den).add(&b.num.mul(&a.den)),
            a.den.mul(&b.den),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Scalar { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = widen_pair(self, other);
        if a.is_zero() || b.is_zero() {
            return Scalar::zero(a.vars());
        }
        Scalar::new(a.num.mul(&b.num), a.den.mul(&b.den))
    }

    pub fn div(&self, other: &Self) -> Result<Self, QError> {
        if other.is_zero() {
            return Err(QError::ZeroDivisor);
        }
        let (a, b) = widen_pair(self, other);
        Ok(Scalar::new(a.num.mul(&b.den), a.den.mul(&b.num)))
    }

    pub fn inv(&self) -> Result<Self, QError> {
        Scalar::one(self.vars()).div(self)
    }

    pub fn pow(&self, n: i32) -> Self {
        if n < 0 {
            let p = self.pow(-n);
            return p.inv().expect("negative power of zero scalar");
        }
        let mut out = Scalar::one(self.vars());
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    pub fn scale_int(&self, k: i64) -> Self {
        self.mul(&Scalar::from_int(self.vars(), k))
    }

    /// Exact evaluation at a rational point. Fails if the denominator
    /// vanishes there.
    pub fn eval_rational(&self, point: &[BigRational; 2]) -> Result<BigRational, QError> {
        for v in 0..self.vars() {
            if point[v].is_zero() {
                return Err(QError::BadSpecialization);
            }
        }
        let d = self.den.eval_rational(point);
        if d.is_zero() {
            return Err(QError::BadSpecialization);
        }
        Ok(self.num.eval_rational(point) / d)
    }
}

fn widen_pair(a: &Scalar, b: &Scalar) -> (Scalar, Scalar) {
    if a.vars() == b.vars() {
        (a.clone(), b.clone())
    } else {
        (
            Scalar { num: a.num.widen(), den: a.den.widen() },
            Scalar { num: b.num.widen(), den: b.den.widen() },
        )
    }
}

fn fmt_coeff(c: &BigRational) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn fmt_poly(p: &LaurentPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    // Highest grlex terms first.
    let mut terms: Vec<_> = p.terms().collect();
    terms.sort_by(|a, b| grlex(b.0, a.0));
    let mut out = String::new();
    for (i, (e, c)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        let mag = if neg { -(*c).clone() } else { (*c).clone() };
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else if neg {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let mut factors: Vec<String> = Vec::new();
        for v in 0..p.vars() {
            match e[v] {
                0 => {}
                1 => factors.push(VAR_NAMES[v].to_string()),
                k => factors.push(format!("{}^{}", VAR_NAMES[v], k)),
            }
        }
        if factors.is_empty() {
            out.push_str(&fmt_coeff(&mag));
        } else {
            if !mag.is_one() {
                out.push_str(&fmt_coeff(&mag));
                out.push('*');
            }
            out.push_str(&factors.join("*"));
        }
    }
    out
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == LaurentPoly::one(self.vars()) {
            if self.num.num_terms() > 1 {
                write!(f, "{}", fmt_poly(&self.num))
            } else {
                write!(f, "{}", fmt_poly(&self.num))
            }
        } else {
            write!(f, "({})/({})", fmt_poly(&self.num), fmt_poly(&self.den))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t() -> Scalar {
        Scalar::var(1, 0)
    }

    #[test]
    fn gcd_cancellation() {
        // (t - 1)/(t^2 - 1) -> 1/(t + 1)
        let num = t().sub(&Scalar::one(1));
        let den = t().mul(&t()).sub(&Scalar::one(1));
        let r = num.div(&den).unwrap();
        let expect = Scalar::one(1)
            .div(&t().add(&Scalar::one(1)))
            .unwrap();
        assert_eq!(r, expect);
    }

    #[test]
    fn laurent_identity() {
        let r = Scalar::monomial(1, [-1, 0], 1).mul(&t());
        assert!(r.is_one());
    }

    #[test]
    fn q_numbers_expand() {
        // With q = t^2: Q*Q+ = q^2 - q^-2 = t^4 - t^-4.
        let q = Scalar::monomial(1, [2, 0], 1);
        let qinv = q.inv().unwrap();
        let big_q = q.sub(&qinv);
        let big_qp = q.add(&qinv);
        let lhs = big_q.mul(&big_qp);
        let rhs = Scalar::monomial(1, [4, 0], 1).sub(&Scalar::monomial(1, [-4, 0], 1));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn display_round_trip() {
        let x = t()
            .pow(4)
            .sub(&Scalar::one(1))
            .div(&t().pow(2).add(&Scalar::one(1)))
            .unwrap();
        assert_eq!(x.to_string(), "t^2 - 1");
    }

    #[test]
    fn canonical_den_positive_leading() {
        // 1/(-t + 1) must normalize the sign into the numerator.
        let one = Scalar::one(1);
        let d = one.sub(&t());
        let r = one.div(&d).unwrap();
        let (_, lc) = r.den().leading().unwrap();
        assert!(lc.is_positive());
    }

    #[test]
    fn two_var_arith() {
        let tt = Scalar::var(2, 0);
        let s = Scalar::var(2, 1);
        let p = tt.mul(&s).add(&Scalar::one(2));
        let q = p.mul(&p).div(&p).unwrap();
        assert_eq!(p, q);
    }
}
