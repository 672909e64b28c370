//! The braiding σ of Γ_ℓ⊗Γ_ℓ as an N⁴×N⁴ matrix on the ν-basis.
//!
//! Closed form: σ(ν_a⊗ν_b) = Σ_c ν_c ⊗ (ν_a ◁ v^c_b) with
//! v^c_b = S(u^{b₁}_{c₁})·u^{c₂}_{b₂} the coaction coefficients of ν_b,
//! evaluated through the representation f. The matrix acts on coefficient
//! column vectors (flat multi-index, leg 0 most significant), so operator
//! composition is matrix multiplication in the written order. The closed
//! form is validated, not trusted: the defining swap against ν₁, the braid
//! equation, and equivariance under ◁ are all checked exactly.

use crate::error::QError;
use crate::form::TensorForm;
use crate::linalg::{FieldCtx, SparseMat};
use crate::qgroup::{f_eval, triangle_letter_ops, CalcParams, FuncTable, Letter};
use crate::scalar::Scalar;

/// The raw σ-matrix over any coefficient field, without validation; the
/// exact path wraps it in [`braiding`], the modular path specializes the
/// functional tables first and inherits the exact validation generically.
pub fn braiding_matrix<F: FieldCtx>(t: &FuncTable<F>) -> SparseMat<F::E> {
    let n = t.n();
    let n2 = n * n;
    let f = t.ctx().clone();
    let mut out = SparseMat::zero(n2 * n2, n2 * n2);
    for b in 0..n2 {
        let (b1, b2) = (b / n, b % n);
        for c in 0..n2 {
            let (c1, c2) = (c / n, c % n);
            let fm = f_eval(t, &[Letter::s_u(b1, c1), Letter::u(c2, b2)]);
            for (a, row) in fm.rows_iter().enumerate() {
                for (d, v) in row {
                    out.set(c * n2 + *d as usize, a * n2 + b, v.clone(), &f);
                }
            }
        }
    }
    out
}

/// σ_j on Γ_ℓ^{⊗k}: identity on all legs except (j−1, j) (1-based slot j).
pub fn sigma_slot<F: FieldCtx>(
    sigma: &SparseMat<F::E>,
    n: usize,
    k: usize,
    j: usize,
    f: &F,
) -> SparseMat<F::E> {
    assert!(j >= 1 && j < k);
    let n2 = n * n;
    let before = SparseMat::identity(n2.pow((j - 1) as u32), f);
    let after = SparseMat::identity(n2.pow((k - 1 - j) as u32), f);
    before.kron(&sigma.kron(&after, f), f)
}

fn check(cond: bool, what: &str) -> Result<(), QError> {
    if cond {
        Ok(())
    } else {
        Err(QError::ConventionMismatch(format!("braiding validation: {what}")))
    }
}

/// The validated braiding for one calculus. Postconditions checked:
/// σ(ν_a⊗ν₁) = ν₁⊗ν_a for every basis letter (in particular ν₁⊗ν₁ is
/// fixed), the braid equation on three legs, and equivariance with the
/// right action of the generator letters.
pub fn braiding(p: &CalcParams) -> Result<SparseMat<Scalar>, QError> {
    let t = FuncTable::for_params(p)?;
    let f = p.field();
    let n = p.n;
    let sigma = braiding_matrix(&t);

    // Defining swap against the right-invariant element ν₁.
    let mut nu1 = TensorForm::zero(n, 1);
    for i in 0..n {
        nu1 = nu1.add(&TensorForm::nu(n, &f, i, i).scale(&p.trace_weight(i)));
    }
    for a1 in 0..n {
        for a2 in 0..n {
            let nu_a = TensorForm::nu(n, &f, a1, a2);
            let got = nu_a.tensor(&nu1).apply(&sigma, &f);
            check(got == nu1.tensor(&nu_a), "sigma(x (x) nu_1) = nu_1 (x) x")?;
        }
    }

    // Braid equation on N⁶ dimensions.
    let s1 = sigma_slot(&sigma, n, 3, 1, &f);
    let s2 = sigma_slot(&sigma, n, 3, 2, &f);
    let lhs = s1.mul(&s2, &f).mul(&s1, &f);
    let rhs = s2.mul(&s1, &f).mul(&s2, &f);
    check(lhs == rhs, "braid equation")?;

    // Equivariance: σ commutes with ◁ u^m_n on degree 2. The action
    // operators are row-convention, σ column-convention; commutation is
    // preserved under the simultaneous transpose.
    for op in triangle_letter_ops(&t, 2, 0) {
        let a = op.transpose();
        check(
            a.mul(&sigma, &f) == sigma.mul(&a, &f),
            "equivariance with the generator action",
        )?;
    }
    Ok(sigma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qgroup::{Branch, Group, Tau};

    fn params(n: usize, tau: Tau, branch: Branch) -> CalcParams {
        let group = if branch == Branch::GenericZ { Group::GL } else { Group::SL };
        CalcParams::new(n, tau, group, branch).unwrap()
    }

    #[test]
    fn braiding_validates_on_all_n2_branches() {
        for tau in [Tau::Plus, Tau::Minus] {
            for branch in [Branch::Principal, Branch::Negative, Branch::GenericZ] {
                braiding(&params(2, tau, branch)).unwrap();
            }
        }
    }

    #[test]
    fn braiding_validates_at_n3() {
        braiding(&params(3, Tau::Plus, Branch::Principal)).unwrap();
    }

    #[test]
    fn nu1_tensor_nu1_is_fixed() {
        let p = params(2, Tau::Minus, Branch::Principal);
        let f = p.field();
        let sigma = braiding(&p).unwrap();
        let mut nu1 = TensorForm::zero(2, 1);
        for i in 0..2 {
            nu1 = nu1.add(&TensorForm::nu(2, &f, i, i).scale(&p.trace_weight(i)));
        }
        let x = nu1.tensor(&nu1);
        assert_eq!(x.apply(&sigma, &f), x);
    }
}
