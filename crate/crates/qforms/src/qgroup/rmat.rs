//! The type-A braid-form R-matrix and its Hecke projectors.

use super::CalcParams;
use crate::linalg::{FieldCtx, SparseMat};
use crate::scalar::Scalar;

/// R̂ over an arbitrary field given the image of q there.
pub fn rhat_in<F: FieldCtx>(
    n: usize,
    q: &F::E,
    f: &F,
) -> (SparseMat<F::E>, SparseMat<F::E>) {
    let q_inv = f.inv(q).expect("q invertible");
    let big_q = f.sub(q, &q_inv);
    let mut r = SparseMat::zero(n * n, n * n);
    for i in 0..n {
        for j in 0..n {
            let col = i * n + j;
            if i == j {
                r.set(col, col, q.clone(), f);
            } else {
                r.set(j * n + i, col, f.one(), f);
                if i > j {
                    r.set(col, col, big_q.clone(), f);
                }
            }
        }
    }
    let id = SparseMat::identity(n * n, f);
    let r_inv = r.sub(&id.scale(&big_q, f), f);
    (r, r_inv)
}

/// R̂ on C^N ⊗ C^N with pair index (i, j) ↦ i·N + j:
/// R̂(e_i⊗e_j) = q·e_i⊗e_i for i = j; e_j⊗e_i for i < j;
/// e_j⊗e_i + Q·e_i⊗e_j for i > j. Returns (R̂, R̂⁻¹); the Hecke relation
/// gives R̂⁻¹ = R̂ − Q·I.
pub fn rhat(p: &CalcParams) -> (SparseMat<Scalar>, SparseMat<Scalar>) {
    rhat_in(p.n, &p.q_pow(1), &p.field())
}

/// R̂^τ: R̂ for τ = +, R̂⁻¹ for τ = −.
pub fn rhat_tau(p: &CalcParams) -> SparseMat<Scalar> {
    let (r, r_inv) = rhat(p);
    match p.tau {
        super::Tau::Plus => r,
        super::Tau::Minus => r_inv,
    }
}

/// Hecke projectors P₊ = (R̂ + q⁻¹I)/Q₊, P₋ = (qI − R̂)/Q₊ with
/// P₊ + P₋ = I, P±² = P±, P₊P₋ = 0, R̂ = qP₊ − q⁻¹P₋.
pub fn hecke_projectors(p: &CalcParams) -> (SparseMat<Scalar>, SparseMat<Scalar>) {
    let f = p.field();
    let (r, _) = rhat(p);
    let id = SparseMat::identity(p.n * p.n, &f);
    let inv_qp = p.big_q_plus().inv().expect("Q+ nonzero");
    let plus = r.add(&id.scale(&p.q_pow(-1), &f), &f).scale(&inv_qp, &f);
    let minus = id.scale(&p.q_pow(1), &f).sub(&r, &f).scale(&inv_qp, &f);
    (plus, minus)
}
