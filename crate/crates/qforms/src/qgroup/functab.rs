//! Evaluation tables of the ℓ±-functionals.
//!
//! The defining property is ℓ^{±,i}_j(u^m_n) = x^{∓1}(R̂^{±1})^{im}_{nj}.
//! Tables are kept scale-free (pure R̂-slices); the scale x^{∓1} (or the
//! y-scale of the second representation leg) is multiplied in at
//! evaluation time, with the sign of the exponent flipping once per
//! antipode power because each antipode inverts the letter tables.
//!
//! Tables for S^p-arguments are produced by grouped matrix inversion from
//! the antipode identities Σ_k S^p(u^m_k)S^{p±1}(u^k_·) = δ; the grouping
//! arrangement depends on the parity of the lower power of the (p, p+1)
//! edge because odd antipode powers reverse products.

use super::rmat::rhat_in;
use super::{CalcParams, Tau};
use crate::error::QError;
use crate::linalg::{invert, FieldCtx, ScalarField, SparseMat};

/// Which of the two scale parameters to apply at evaluation time.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scale {
    X,
    Y,
}

/// Highest antipode power with a precomputed table. The representation f
/// needs S^{p+1} on its contragredient leg for letters with p ≤ 1.
pub const MAX_SPOW: usize = 2;

pub struct FuncTable<F: FieldCtx> {
    n: usize,
    ctx: F,
    tau: Tau,
    x: F::E,
    x_inv: F::E,
    y: F::E,
    y_inv: F::E,
    /// tables[p][sign] with sign 0 = +, 1 = −: per letter m·N + n, the N×N
    /// matrix of scale-free values ℓ^{sign,i}_j(S^p u^m_n).
    tables: Vec<[Vec<SparseMat<F::E>>; 2]>,
}

fn slice_tables<F: FieldCtx>(n: usize, r: &SparseMat<F::E>, f: &F) -> Vec<SparseMat<F::E>> {
    let mut out = Vec::with_capacity(n * n);
    for m in 0..n {
        for nn in 0..n {
            let mut mat = SparseMat::zero(n, n);
            for i in 0..n {
                for j in 0..n {
                    let v = r.get(i * n + m, nn * n + j, f);
                    mat.set(i, j, v, f);
                }
            }
            out.push(mat);
        }
    }
    out
}

/// Grouped matrix with index (m, a) ↦ m·N + a; `swapped` exchanges the
/// roles of the two algebra indices of the letter.
fn pack<F: FieldCtx>(
    n: usize,
    t: &[SparseMat<F::E>],
    swapped: bool,
    f: &F,
) -> SparseMat<F::E> {
    let dim = n * n;
    let mut g = SparseMat::zero(dim, dim);
    for m in 0..n {
        for k in 0..n {
            let letter = &t[m * n + k];
            let (row_alg, col_alg) = if swapped { (k, m) } else { (m, k) };
            for a in 0..n {
                for b in 0..n {
                    let v = letter.get(a, b, f);
                    g.set(row_alg * n + a, col_alg * n + b, v, f);
                }
            }
        }
    }
    g
}

fn unpack<F: FieldCtx>(
    n: usize,
    g: &SparseMat<F::E>,
    swapped: bool,
    f: &F,
) -> Vec<SparseMat<F::E>> {
    let mut out = Vec::with_capacity(n * n);
    for k in 0..n {
        for nn in 0..n {
            let (row_alg, col_alg) = if swapped { (nn, k) } else { (k, nn) };
            let mut mat = SparseMat::zero(n, n);
            for a in 0..n {
                for b in 0..n {
                    let v = g.get(row_alg * n + a, col_alg * n + b, f);
                    mat.set(a, b, v, f);
                }
            }
            out.push(mat);
        }
    }
    out
}

impl<F: FieldCtx> FuncTable<F> {
    /// Build the tables from the images of q, x, y in the target field.
    pub fn new(n: usize, tau: Tau, q: F::E, x: F::E, y: F::E, ctx: F) -> Result<Self, QError> {
        let (r, r_inv) = rhat_in(n, &q, &ctx);
        let mut tables = vec![[
            slice_tables(n, &r, &ctx),
            slice_tables(n, &r_inv, &ctx),
        ]];
        for p in 0..MAX_SPOW {
            // Shifting across the (p, p+1) edge: straight arrangement when
            // p is even, swapped when odd.
            let swapped = p % 2 == 1;
            let prev = &tables[p];
            let mut next: [Vec<SparseMat<F::E>>; 2] = [Vec::new(), Vec::new()];
            for sign in 0..2 {
                let g = pack(n, &prev[sign], swapped, &ctx);
                let h = invert(&g, &ctx)?;
                next[sign] = unpack(n, &h, swapped, &ctx);
            }
            tables.push(next);
        }
        let x_inv = ctx.inv(&x)?;
        let y_inv = ctx.inv(&y)?;
        Ok(FuncTable { n, ctx, tau, x, x_inv, y, y_inv, tables })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn tau(&self) -> Tau {
        self.tau
    }

    pub fn ctx(&self) -> &F {
        &self.ctx
    }

    /// Scale factor for one letter: ℓ⁺_c carries c⁻¹ on plain letters and
    /// the exponent flips per antipode power; ℓ⁻_c is the mirror image.
    fn scale_factor(&self, sign: Tau, spow: usize, scale: Scale) -> F::E {
        let exp_neg = match sign {
            Tau::Plus => spow % 2 == 0,
            Tau::Minus => spow % 2 == 1,
        };
        match (scale, exp_neg) {
            (Scale::X, true) => self.x_inv.clone(),
            (Scale::X, false) => self.x.clone(),
            (Scale::Y, true) => self.y_inv.clone(),
            (Scale::Y, false) => self.y.clone(),
        }
    }

    /// Scale-free table slice for ℓ^{sign}(S^spow u^m_n).
    pub fn raw(&self, sign: Tau, spow: usize, m: usize, n: usize) -> &SparseMat<F::E> {
        assert!(spow <= MAX_SPOW, "antipode power beyond the table range");
        let s = if sign == Tau::Plus { 0 } else { 1 };
        &self.tables[spow][s][m * self.n + n]
    }

    /// ℓ^{sign}_c(S^spow u^m_n) with the requested scale parameter.
    pub fn letter(&self, sign: Tau, scale: Scale, spow: usize, m: usize, n: usize) -> SparseMat<F::E> {
        let c = self.scale_factor(sign, spow, scale);
        self.raw(sign, spow, m, n).scale(&c, &self.ctx)
    }
}

impl FuncTable<ScalarField> {
    pub fn for_params(p: &CalcParams) -> Result<Self, QError> {
        FuncTable::new(p.n, p.tau, p.q_pow(1), p.x(), p.y(), p.field())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qgroup::{Branch, Group};
    use crate::scalar::Scalar;

    fn table(n: usize, tau: Tau) -> FuncTable<ScalarField> {
        let p = CalcParams::new(n, tau, Group::SL, Branch::Principal).unwrap();
        FuncTable::for_params(&p).unwrap()
    }

    #[test]
    fn n2_plus_tables_match_hand_values() {
        // With q = t^2, x = t: l+(u^1_1) = x^-1 diag(q, 1),
        // l+(u^1_2) = x^-1 Q e_21, l+(u^2_1) = 0, l+(u^2_2) = x^-1 diag(1, q).
        let t = table(2, Tau::Plus);
        let f = ScalarField { vars: 1 };
        let q = Scalar::monomial(1, [2, 0], 1);
        let x_inv = Scalar::monomial(1, [-1, 0], 1);
        let big_q = q.sub(&q.inv().unwrap());
        let a = t.letter(Tau::Plus, Scale::X, 0, 0, 0);
        assert_eq!(a.get(0, 0, &f), x_inv.mul(&q));
        assert_eq!(a.get(1, 1, &f), x_inv);
        assert_eq!(a.get(0, 1, &f), Scalar::zero(1));
        let b = t.letter(Tau::Plus, Scale::X, 0, 0, 1);
        assert_eq!(b.get(1, 0, &f), x_inv.mul(&big_q));
        assert_eq!(b.nnz(), 1);
        let c = t.letter(Tau::Plus, Scale::X, 0, 1, 0);
        assert!(c.is_zero());
    }

    #[test]
    fn antipode_inverse_property() {
        // sum_k l(u^m_k) l(S u^k_n) = delta^m_n I, with scales included
        // (they cancel pairwise), for both signs and both tau.
        for tau in [Tau::Plus, Tau::Minus] {
            for n in [2usize, 3] {
                let t = table(n, tau);
                let f = ScalarField { vars: 1 };
                for sign in [Tau::Plus, Tau::Minus] {
                    for m in 0..n {
                        for nn in 0..n {
                            let mut acc = SparseMat::zero(n, n);
                            for k in 0..n {
                                let a = t.letter(sign, Scale::X, 0, m, k);
                                let b = t.letter(sign, Scale::X, 1, k, nn);
                                acc = acc.add(&a.mul(&b, &f), &f);
                            }
                            let expect = if m == nn {
                                SparseMat::identity(n, &f)
                            } else {
                                SparseMat::zero(n, n)
                            };
                            assert_eq!(acc, expect, "sign {sign:?} m {m} n {nn}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn s2_tables_compose() {
        // sum_k l(S u^m_k)... the odd-power identity:
        // sum_k l(S^2 u^k_n) l(S u^m_k) = delta^m_n I.
        let t = table(2, Tau::Plus);
        let f = ScalarField { vars: 1 };
        let n = 2;
        for m in 0..n {
            for nn in 0..n {
                let mut acc = SparseMat::zero(n, n);
                for k in 0..n {
                    let a = t.letter(Tau::Plus, Scale::X, 2, k, nn);
                    let b = t.letter(Tau::Plus, Scale::X, 1, m, k);
                    acc = acc.add(&a.mul(&b, &f), &f);
                }
                let expect = if m == nn {
                    SparseMat::identity(n, &f)
                } else {
                    SparseMat::zero(n, n)
                };
                assert_eq!(acc, expect);
            }
        }
    }

    #[test]
    fn rtt_compatibility() {
        // l on both sides of R̂ u1 u2 = u1 u2 R̂ agree, making the
        // functionals well-defined on the quotient algebra.
        for n in [2usize, 3] {
            let t = table(n, Tau::Plus);
            let f = ScalarField { vars: 1 };
            let p = CalcParams::new(n, Tau::Plus, Group::SL, Branch::Principal).unwrap();
            let (r, _) = super::super::rmat::rhat(&p);
            for sign in [Tau::Plus, Tau::Minus] {
                for a in 0..n {
                    for b in 0..n {
                        for m in 0..n {
                            for nn in 0..n {
                                let mut lhs = SparseMat::zero(n, n);
                                let mut rhs = SparseMat::zero(n, n);
                                for c in 0..n {
                                    for d in 0..n {
                                        let rc = r.get(a * n + b, c * n + d, &f);
                                        if !rc.is_zero() {
                                            let w = t
                                                .letter(sign, Scale::X, 0, c, m)
                                                .mul(&t.letter(sign, Scale::X, 0, d, nn), &f);
                                            lhs = lhs.add(&w.scale(&rc, &f), &f);
                                        }
                                        let rc2 = r.get(c * n + d, m * n + nn, &f);
                                        if !rc2.is_zero() {
                                            let w = t
                                                .letter(sign, Scale::X, 0, a, c)
                                                .mul(&t.letter(sign, Scale::X, 0, b, d), &f);
                                            rhs = rhs.add(&w.scale(&rc2, &f), &f);
                                        }
                                    }
                                }
                                assert_eq!(lhs, rhs, "sign {sign:?} ({a},{b};{m},{nn})");
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn sl2_determinant_is_one() {
        // l(a d - q^-1 b c) = I for both signs with the x-scale (x^2 = q);
        // with this R-matrix the relations read ab = q^-1 ba, so the
        // central grouplike determinant is a d - q^-1 b c.
        let f = ScalarField { vars: 1 };
        let q_inv = Scalar::monomial(1, [-2, 0], 1);
        for tau in [Tau::Plus, Tau::Minus] {
            let t = table(2, tau);
            for sign in [Tau::Plus, Tau::Minus] {
                let det = t
                    .letter(sign, Scale::X, 0, 0, 0)
                    .mul(&t.letter(sign, Scale::X, 0, 1, 1), &f)
                    .sub(
                        &t.letter(sign, Scale::X, 0, 0, 1)
                            .mul(&t.letter(sign, Scale::X, 0, 1, 0), &f)
                            .scale(&q_inv, &f),
                        &f,
                    );
                assert_eq!(det, SparseMat::identity(2, &f));
            }
        }
    }

    #[test]
    fn sl2_determinant_with_y_scale() {
        // The second representation leg carries the y-scale; well-definedness
        // on SL needs y^N = q, which the branch embeddings guarantee.
        let f = ScalarField { vars: 1 };
        let q_inv = Scalar::monomial(1, [-2, 0], 1);
        for tau in [Tau::Plus, Tau::Minus] {
            for branch in [Branch::Principal, Branch::Negative] {
                let p = CalcParams::new(2, tau, Group::SL, branch).unwrap();
                let t = FuncTable::for_params(&p).unwrap();
                let sign = if tau == Tau::Plus { Tau::Minus } else { Tau::Plus };
                let det = t
                    .letter(sign, Scale::Y, 0, 0, 0)
                    .mul(&t.letter(sign, Scale::Y, 0, 1, 1), &f)
                    .sub(
                        &t.letter(sign, Scale::Y, 0, 0, 1)
                            .mul(&t.letter(sign, Scale::Y, 0, 1, 0), &f)
                            .scale(&q_inv, &f),
                        &f,
                    );
                assert_eq!(det, SparseMat::identity(2, &f), "{tau:?} {branch:?}");
            }
        }
    }
}
