//! Polynomial gcd for the canonicalization of rational functions.
//!
//! One variable: subresultant PRS over the integers after clearing rational
//! denominators. Two variables: primitive PRS in `s` on the recursive
//! representation with coefficients in Q[t].

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};

use super::LaurentPoly;

/// Gcd of two true polynomials (nonnegative exponents) in 1 or 2 variables.
/// The result is defined up to a rational scalar; we return a primitive
/// polynomial with positive leading coefficient.
pub fn poly_gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    assert_eq!(a.vars(), b.vars());
    assert!(a.is_polynomial() && b.is_polynomial());
    if a.is_zero() {
        return normalize_primitive(b);
    }
    if b.is_zero() {
        return normalize_primitive(a);
    }
    if a.vars() == 1 || (s_degree(a) == 0 && s_degree(b) == 0) {
        let vars = a.vars();
        let g = uni_gcd(&to_uni_int(a, 0), &to_uni_int(b, 0));
        from_uni_int(&g, vars, 0)
    } else {
        biv_gcd(a, b)
    }
}

/// Rational scale factor making `d` an integer-coefficient primitive
/// polynomial with positive grlex-leading coefficient.
pub fn integral_normalizer(d: &LaurentPoly) -> BigRational {
    assert!(!d.is_zero());
    let mut denom_lcm = BigInt::one();
    let mut numer_gcd = BigInt::zero();
    for (_, c) in d.terms() {
        denom_lcm = denom_lcm.lcm(c.denom());
        numer_gcd = numer_gcd.gcd(c.numer());
    }
    let mut scale = BigRational::new(denom_lcm, numer_gcd);
    let (_, lc) = d.leading().unwrap();
    if (lc * &scale).is_negative() {
        scale = -scale;
    }
    scale
}

fn normalize_primitive(p: &LaurentPoly) -> LaurentPoly {
    p.scale(&integral_normalizer(p))
}

fn s_degree(p: &LaurentPoly) -> i32 {
    p.terms().map(|(e, _)| e[1]).max().unwrap_or(0)
}

// ---- univariate layer: dense Vec<BigInt>, little-endian -------------------

fn to_uni_int(p: &LaurentPoly, var: usize) -> Vec<BigInt> {
    // Clear rational denominators; gcd is scale-free.
    let mut denom_lcm = BigInt::one();
    for (_, c) in p.terms() {
        denom_lcm = denom_lcm.lcm(c.denom());
    }
    let deg = p.terms().map(|(e, _)| e[var]).max().unwrap_or(0);
    let mut out = vec![BigInt::zero(); deg as usize + 1];
    for (e, c) in p.terms() {
        out[e[var] as usize] = c.numer() * (&denom_lcm / c.denom());
    }
    out
}

fn from_uni_int(v: &[BigInt], vars: usize, var: usize) -> LaurentPoly {
    let mut out = LaurentPoly::zero(vars);
    for (i, c) in v.iter().enumerate() {
        if !c.is_zero() {
            let mut exp = [0, 0];
            exp[var] = i as i32;
            out = out.add(&LaurentPoly::monomial(
                vars,
                exp,
                BigRational::from_integer(c.clone()),
            ));
        }
    }
    out
}

fn trim(v: &mut Vec<BigInt>) {
    while v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
}

fn content(v: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in v {
        g = g.gcd(c);
    }
    g
}

fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    trim(&mut v);
    if v.is_empty() {
        return v;
    }
    let mut c = content(&v);
    if v.last().unwrap().is_negative() {
        c = -c;
    }
    for x in v.iter_mut() {
        *x = &*x / &c;
    }
    v
}

/// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a reduced modulo b.
/// The multiplier is kept exact so the subresultant divisions stay integral.
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lb = b.last().unwrap().clone();
    let mut r: Vec<BigInt> = a.to_vec();
    let mut e = (a.len() - b.len()) as u32 + 1;
    loop {
        trim(&mut r);
        if r.is_empty() || r.len() < b.len() {
            break;
        }
        let dr = r.len() - 1;
        let lead = r.last().unwrap().clone();
        for x in r.iter_mut() {
            *x = &*x * &lb;
        }
        for i in 0..=db {
            r[dr - db + i] -= &lead * &b[i];
        }
        e -= 1;
    }
    let scale = lb.pow(e);
    for x in r.iter_mut() {
        *x = &*x * &scale;
    }
    r
}

/// Primitive gcd of integer polynomials via subresultant PRS.
fn uni_gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut a = primitive(a.to_vec());
    let mut b = primitive(b.to_vec());
    if a.is_empty() {
        return b;
    }
    if b.is_empty() {
        return a;
    }
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let d = (a.len() - b.len()) as u32;
        let mut r = pseudo_rem(&a, &b);
        if r.is_empty() {
            return primitive(b);
        }
        let div = &g * h.pow(d);
        for x in r.iter_mut() {
            debug_assert!((&*x % &div).is_zero());
            *x = &*x / &div;
        }
        a = b;
        b = r;
        g = a.last().unwrap().clone();
        h = if d == 0 {
            h
        } else {
            // h = g^d / h^(d-1), exact
            let num = g.pow(d);
            let den = h.pow(d - 1);
            debug_assert!((&num % &den).is_zero());
            num / den
        };
    }
}

// ---- bivariate layer: primitive PRS in s over Q[t] ------------------------

/// Coefficients of `p` viewed as a polynomial in `s` over Q[t].
fn s_coeffs(p: &LaurentPoly) -> Vec<LaurentPoly> {
    let ds = s_degree(p);
    let mut out = vec![LaurentPoly::zero(1); ds as usize + 1];
    for (e, c) in p.terms() {
        out[e[1] as usize] =
            out[e[1] as usize].add(&LaurentPoly::monomial(1, [e[0], 0], c.clone()));
    }
    out
}

fn from_s_coeffs(coeffs: &[LaurentPoly]) -> LaurentPoly {
    let mut out = LaurentPoly::zero(2);
    for (i, c) in coeffs.iter().enumerate() {
        let shifted = c.widen().shift([0, i as i32]);
        out = out.add(&shifted);
    }
    out
}

fn strim(v: &mut Vec<LaurentPoly>) {
    while v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
}

fn s_content(v: &[LaurentPoly]) -> LaurentPoly {
    let mut g = LaurentPoly::zero(1);
    for c in v {
        if c.is_zero() {
            continue;
        }
        g = from_uni_int(&uni_gcd(&to_uni_int(&g, 0), &to_uni_int(c, 0)), 1, 0);
    }
    g
}

fn s_primitive(mut v: Vec<LaurentPoly>) -> (Vec<LaurentPoly>, LaurentPoly) {
    strim(&mut v);
    if v.is_empty() {
        return (v, LaurentPoly::one(1));
    }
    let cont = s_content(&v);
    let pp = v.iter().map(|c| c.div_exact(&cont)).collect();
    (pp, cont)
}

fn s_pseudo_rem(a: &[LaurentPoly], b: &[LaurentPoly]) -> Vec<LaurentPoly> {
    let db = b.len() - 1;
    let lb = b.last().unwrap().clone();
    let mut r: Vec<LaurentPoly> = a.to_vec();
    loop {
        strim(&mut r);
        if r.len() < b.len() {
            return r;
        }
        let dr = r.len() - 1;
        let lead = r.last().unwrap().clone();
        for x in r.iter_mut() {
            *x = x.mul(&lb);
        }
        for i in 0..=db {
            r[dr - db + i] = r[dr - db + i].sub(&lead.mul(&b[i]));
        }
    }
}

fn biv_gcd(pa: &LaurentPoly, pb: &LaurentPoly) -> LaurentPoly {
    let (mut a, cont_a) = s_primitive(s_coeffs(pa));
    let (mut b, cont_b) = s_primitive(s_coeffs(pb));
    let cont_g = from_uni_int(&uni_gcd(&to_uni_int(&cont_a, 0), &to_uni_int(&cont_b, 0)), 1, 0);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    // Primitive PRS: content stripped after every step keeps growth in check.
    while !b.is_empty() {
        let r = s_pseudo_rem(&a, &b);
        a = b;
        b = s_primitive(r).0;
    }
    let g = from_s_coeffs(&a);
    let g = g.mul(&cont_g.widen());
    normalize_primitive(&g)
}
