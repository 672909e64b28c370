//! Linear combinations of monomial words in the generators u^i_j.
//!
//! Words are stored verbatim: no reordering against the RTT relations is
//! attempted. Every map applied to a `FreeElem` (counit, ω, 𝒮) factors
//! through the relations, so free representatives are safe — a word that
//! represents 0 in 𝒜 is simply sent to 0.

use crate::scalar::Scalar;
use std::collections::BTreeMap;

/// A monomial word: letter indices i·N + j, left to right.
pub type FreeWord = Vec<u16>;

/// A finite linear combination of words with canonical Scalar
/// coefficients; the empty word is the unit 1.
#[derive(Clone, Debug, PartialEq)]
pub struct FreeElem {
    n: usize,
    vars: usize,
    terms: BTreeMap<FreeWord, Scalar>,
}

impl FreeElem {
    pub fn zero(n: usize, vars: usize) -> Self {
        FreeElem { n, vars, terms: BTreeMap::new() }
    }

    pub fn one(n: usize, vars: usize) -> Self {
        let mut e = Self::zero(n, vars);
        e.add_term(Vec::new(), Scalar::one(vars));
        e
    }

    /// The generator u^i_j as a one-letter word.
    pub fn letter(n: usize, vars: usize, i: usize, j: usize) -> Self {
        assert!(i < n && j < n);
        let mut e = Self::zero(n, vars);
        e.add_term(vec![(i * n + j) as u16], Scalar::one(vars));
        e
    }

    pub fn word(n: usize, vars: usize, w: FreeWord) -> Self {
        debug_assert!(w.iter().all(|l| (*l as usize) < n * n));
        let mut e = Self::zero(n, vars);
        e.add_term(w, Scalar::one(vars));
        e
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FreeWord, &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: FreeWord, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(w) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&Scalar::from_int(self.vars, -1)))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero(self.n, self.vars);
        for (w, v) in &self.terms {
            out.add_term(w.clone(), v.mul(c));
        }
        out
    }

    /// Concatenation product, extended bilinearly.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let mut out = Self::zero(self.n, self.vars);
        for (w, c) in &self.terms {
            for (v, d) in &other.terms {
                let mut cat = w.clone();
                cat.extend_from_slice(v);
                out.add_term(cat, c.mul(d));
            }
        }
        out
    }

    /// ā = a − ε(a).
    pub fn bar(&self) -> Self {
        let mut out = self.clone();
        out.add_term(Vec::new(), counit(self).neg());
        out
    }
}

/// ε(u^i_j) = δ^i_j extended multiplicatively and linearly; ε(1) = 1.
pub fn counit(a: &FreeElem) -> Scalar {
    let n = a.n;
    let mut acc = Scalar::zero(a.vars);
    for (w, c) in &a.terms {
        if w.iter().all(|l| (*l as usize) / n == (*l as usize) % n) {
            acc = acc.add(c);
        }
    }
    acc
}

/// ε of a single word.
pub fn counit_word(n: usize, w: &[u16]) -> bool {
    w.iter().all(|l| (*l as usize) / n == (*l as usize) % n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counit_values() {
        let one = FreeElem::one(2, 1);
        assert_eq!(counit(&one), Scalar::one(1));
        // u^0_1 u^1_0 has off-diagonal letters.
        let bc = FreeElem::letter(2, 1, 0, 1).mul(&FreeElem::letter(2, 1, 1, 0));
        assert!(counit(&bc).is_zero());
        let ad = FreeElem::letter(2, 1, 0, 0).mul(&FreeElem::letter(2, 1, 1, 1));
        assert_eq!(counit(&ad), Scalar::one(1));
        assert!(counit(&ad.bar()).is_zero());
    }

    #[test]
    fn product_collects_terms() {
        let a = FreeElem::letter(2, 1, 0, 0);
        let s = a.add(&a).sub(&a.scale(&Scalar::from_int(1, 2)));
        assert!(s.is_zero());
    }
}
