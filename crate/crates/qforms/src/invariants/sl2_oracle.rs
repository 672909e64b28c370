//! Brute-force cross-check at N = 2: solve the Δ_R-coinvariance equations
//! directly in the SL_q(2) coordinate algebra with its monomial basis.
//!
//! With this R̂ the relations read ab = q⁻¹ba, ac = q⁻¹ca, bd = q⁻¹db,
//! cd = q⁻¹dc, bc = cb, ad − da = (q⁻¹−q)bc, ad − q⁻¹bc = 1, and the
//! antipode matrix is S(u) = [[d, −qb], [−q⁻¹c, a]]. Words are straightened
//! to the order b ≤ c ≤ a ≤ d, where ad-pairs become adjacent and reduce.
//! Everything here is test-only machinery, independent of the ℓ-functional
//! tables it cross-checks.

use std::collections::BTreeMap;

use crate::linalg::{Echelon, ScalarField, SparseVec};
use crate::scalar::Scalar;

pub const A: u8 = 0;
pub const B: u8 = 1;
pub const C: u8 = 2;
pub const D: u8 = 3;

/// An element of SL_q(2) as a sum of normal-ordered words b^β c^γ a^α d^δ
/// (never both a and d present).
#[derive(Clone, Debug, PartialEq)]
pub struct CoordElem {
    terms: BTreeMap<Vec<u8>, Scalar>,
}

fn q_pow(k: i32) -> Scalar {
    Scalar::monomial(1, [2 * k, 0], 1)
}

/// Normal-order rank: b < c < a < d.
fn order(l: u8) -> u8 {
    match l {
        B => 0,
        C => 1,
        A => 2,
        D => 3,
        _ => unreachable!(),
    }
}

impl CoordElem {
    pub fn zero() -> Self {
        CoordElem { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        CoordElem::word(&[], Scalar::one(1))
    }

    /// c · (a raw word, straightened on construction).
    pub fn word(w: &[u8], c: Scalar) -> Self {
        let mut out = CoordElem::zero();
        out.add_word(w.to_vec(), c);
        out
    }

    /// Straighten one word into normal form and accumulate it.
    fn add_word(&mut self, mut w: Vec<u8>, mut c: Scalar) {
        'outer: loop {
            for i in 0..w.len().saturating_sub(1) {
                let (x, y) = (w[i], w[i + 1]);
                match (x, y) {
                    // ad = 1 + q⁻¹bc, da = ad − (q⁻¹−q)bc = 1 + q·bc.
                    (A, D) | (D, A) => {
                        let coeff = if x == A { q_pow(-1) } else { q_pow(1) };
                        let mut unit = w.clone();
                        unit.drain(i..i + 2);
                        let mut bc = unit.clone();
                        bc.splice(i..i, [B, C]);
                        self.add_word(unit, c.clone());
                        self.add_word(bc, c.mul(&coeff));
                        return;
                    }
                    _ if order(x) > order(y) => {
                        // Commutation: xy = coeff · yx.
                        let coeff = match (x, y) {
                            (A, B) | (A, C) => q_pow(-1), // ab = q⁻¹ba, ac = q⁻¹ca
                            (B, A) | (C, A) => q_pow(1),
                            (D, B) | (D, C) => q_pow(1), // db = q·bd, dc = q·cd
                            (B, D) | (C, D) => q_pow(-1),
                            (C, B) | (B, C) => Scalar::one(1),
                            _ => unreachable!(),
                        };
                        w.swap(i, i + 1);
                        c = c.mul(&coeff);
                        continue 'outer;
                    }
                    _ => {}
                }
            }
            break;
        }
        let entry = self.terms.entry(w.clone()).or_insert_with(|| Scalar::zero(1));
        *entry = entry.add(&c);
        if entry.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_word(w.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = CoordElem::zero();
        for (w, v) in &self.terms {
            out.add_word(w.clone(), v.mul(c));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = CoordElem::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                out.add_word(w, c1.mul(c2));
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u8>, Scalar> {
        &self.terms
    }
}

/// u^i_j as a letter.
pub fn u_entry(i: usize, j: usize) -> CoordElem {
    let l = match (i, j) {
        (0, 0) => A,
        (0, 1) => B,
        (1, 0) => C,
        (1, 1) => D,
        _ => unreachable!(),
    };
    CoordElem::word(&[l], Scalar::one(1))
}

/// S(u^i_j) from the adjugate: S(u) = [[d, −qb], [−q⁻¹c, a]].
pub fn s_entry(i: usize, j: usize) -> CoordElem {
    match (i, j) {
        (0, 0) => CoordElem::word(&[D], Scalar::one(1)),
        (0, 1) => CoordElem::word(&[B], q_pow(1).neg()),
        (1, 0) => CoordElem::word(&[C], q_pow(-1).neg()),
        (1, 1) => CoordElem::word(&[A], Scalar::one(1)),
        _ => unreachable!(),
    }
}

/// The coaction coefficient v^J_I = S(u^{I₁}_{J₁})·u^{J₂}_{I₂}.
pub fn coaction_coeff(jj: usize, ii: usize) -> CoordElem {
    let (j1, j2) = (jj / 2, jj % 2);
    let (i1, i2) = (ii / 2, ii % 2);
    s_entry(i1, j1).mul(&u_entry(j2, i2))
}

/// Solution space of the coinvariance equations Σ_I x_I·v^{J₁}_{I₁}⋯ = x_J·1
/// at tensor degree k, as coefficient vectors over the 4^k multi-indices.
pub fn coinvariant_solutions(k: usize) -> Vec<SparseVec<Scalar>> {
    let f = ScalarField { vars: 1 };
    let dim = 4usize.pow(k as u32);
    // Constraint rows indexed by (J, monomial): columns are the x_I.
    let mut rows: BTreeMap<(usize, Vec<u8>), SparseVec<Scalar>> = BTreeMap::new();
    for jj in 0..dim {
        for ii in 0..dim {
            let mut v = CoordElem::one();
            let (mut jr, mut ir) = (jj, ii);
            let mut legs = Vec::with_capacity(k);
            for _ in 0..k {
                legs.push((jr % 4, ir % 4));
                jr /= 4;
                ir /= 4;
            }
            // legs were peeled least-significant-first; multiply in leg order.
            for (j, i) in legs.into_iter().rev() {
                v = v.mul(&coaction_coeff(j, i));
            }
            for (w, c) in v.terms() {
                rows.entry((jj, w.clone())).or_default().push((ii as u32, c.clone()));
            }
        }
        // The −x_J·1 side of the equation lives on the constant monomial.
        rows.entry((jj, Vec::new()))
            .or_default()
            .push((jj as u32, Scalar::one(1).neg()));
    }
    let mut ech = Echelon::new(f, dim);
    for ((_, _), mut row) in rows {
        row.sort_by_key(|(c, _)| *c);
        // Merge duplicate columns (a constant entry may have been pushed
        // both from the expansion and the −x_J side).
        let mut merged: SparseVec<Scalar> = Vec::new();
        for (c, v) in row {
            match merged.last_mut() {
                Some((lc, lv)) if *lc == c => {
                    *lv = lv.add(&v);
                    if lv.is_zero() {
                        merged.pop();
                    }
                }
                _ => merged.push((c, v)),
            }
        }
        if !merged.is_empty() {
            ech.insert(&merged);
        }
    }
    ech.kernel_rows()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::biinvariant_basis;
    use crate::linalg::Subspace;
    use crate::qgroup::{Branch, CalcParams, Group, Tau};

    #[test]
    fn relations_hold_in_normal_form() {
        let a = u_entry(0, 0);
        let b = u_entry(0, 1);
        let c = u_entry(1, 0);
        let d = u_entry(1, 1);
        // ab − q⁻¹ba = 0, bc − cb = 0, det − 1 = 0.
        assert!(a.mul(&b).add(&b.mul(&a).scale(&q_pow(-1).neg())).is_zero());
        assert!(b.mul(&c).add(&c.mul(&b).scale(&Scalar::one(1).neg())).is_zero());
        let det = a.mul(&d).add(&b.mul(&c).scale(&q_pow(-1).neg()));
        assert_eq!(det, CoordElem::one());
    }

    #[test]
    fn antipode_matrix_is_two_sided_inverse() {
        for m in 0..2 {
            for n in 0..2 {
                let mut su = CoordElem::zero();
                let mut us = CoordElem::zero();
                for k in 0..2 {
                    su = su.add(&s_entry(m, k).mul(&u_entry(k, n)));
                    us = us.add(&u_entry(m, k).mul(&s_entry(k, n)));
                }
                let want = if m == n { CoordElem::one() } else { CoordElem::zero() };
                assert_eq!(su, want, "S·u at ({m},{n})");
                assert_eq!(us, want, "u·S at ({m},{n})");
            }
        }
    }

    #[test]
    fn oracle_matches_functional_biinvariants() {
        // The coordinate-algebra coinvariance solutions coincide with the
        // joint δ-eigenspace of the ℓ-functional action for k ≤ 2.
        let f = ScalarField { vars: 1 };
        for tau in [Tau::Plus, Tau::Minus] {
            let p = CalcParams::new(2, tau, Group::SL, Branch::Principal).unwrap();
            for k in 1..=2usize {
                let oracle = Subspace::from_span(4usize.pow(k as u32), coinvariant_solutions(k), &f);
                let dual = biinvariant_basis(&p, k).unwrap();
                assert!(oracle.equals(&dual), "{tau:?} k = {k}");
            }
        }
    }
}
