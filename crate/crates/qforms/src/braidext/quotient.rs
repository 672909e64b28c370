//! Normal forms and products in Λ_w = Γ^⊗/⊕_k ker A_k.
//!
//! Coordinates are ordered lexicographically by flat multi-index; the
//! kernel of A_k is echelonized against that order and the non-pivot
//! coordinates form the section, so equality in Λ_w is equality of normal
//! forms.

use super::antisym::{antisymmetrizers, EXACT_DIM_CEILING};
use super::sigma::braiding;
use crate::error::QError;
use crate::form::TensorForm;
use crate::linalg::{kernel_basis, RankCertificate, RankMode, SparseMat, Subspace};
use crate::qgroup::CalcParams;
use crate::scalar::Scalar;

/// The exterior algebra of one calculus up to a fixed degree: the braiding,
/// the antisymmetrizers, and (in exact mode) the echelonized kernels that
/// define the normal-form sections.
pub struct ExtAlgebra {
    p: CalcParams,
    sigma: SparseMat<Scalar>,
    /// A_1, …, A_{k_max}.
    anti: Vec<SparseMat<Scalar>>,
    /// Kernel subspaces per degree 0..=k_max; `None` when only modular
    /// ranks were computed.
    kernels: Vec<Option<Subspace<Scalar>>>,
    ranks: Vec<usize>,
    certificate: RankCertificate,
}

impl ExtAlgebra {
    pub fn new(p: &CalcParams, k_max: usize, mode: RankMode) -> Result<Self, QError> {
        let f = p.field();
        let n2 = p.n * p.n;
        let sigma = braiding(p)?;
        let anti = antisymmetrizers(p.n, &sigma, k_max.max(1), &f);
        match mode {
            RankMode::Exact => {
                if n2.pow(k_max as u32) > EXACT_DIM_CEILING {
                    return Err(QError::ResourceLimit(format!(
                        "exact kernels at dimension {} exceed the ceiling {EXACT_DIM_CEILING}",
                        n2.pow(k_max as u32)
                    )));
                }
                let mut kernels = vec![Some(Subspace::zero(1))];
                let mut ranks = vec![1usize];
                for a_k in &anti[..k_max] {
                    let ker = Subspace::from_span(a_k.cols(), kernel_basis(a_k, &f), &f);
                    ranks.push(a_k.cols() - ker.dim());
                    kernels.push(Some(ker));
                }
                Ok(ExtAlgebra {
                    p: *p,
                    sigma,
                    anti,
                    kernels,
                    ranks,
                    certificate: RankCertificate::Exact,
                })
            }
            RankMode::Modular { samples, seed } => {
                let mut ranks = vec![1usize];
                let mut cert = RankCertificate::Exact;
                for k in 1..=k_max {
                    let (r, c) = super::antisym::lambda_dim(
                        p,
                        k,
                        RankMode::Modular { samples, seed },
                    )?;
                    ranks.push(r);
                    cert = c;
                }
                Ok(ExtAlgebra {
                    p: *p,
                    sigma,
                    anti,
                    kernels: vec![None; k_max + 1],
                    ranks,
                    certificate: cert,
                })
            }
        }
    }

    pub fn params(&self) -> &CalcParams {
        &self.p
    }

    pub fn k_max(&self) -> usize {
        self.ranks.len() - 1
    }

    pub fn sigma(&self) -> &SparseMat<Scalar> {
        &self.sigma
    }

    /// A_k, k ≥ 1.
    pub fn antisymmetrizer(&self, k: usize) -> &SparseMat<Scalar> {
        &self.anti[k - 1]
    }

    /// dim Λ_w^k of left-invariant forms.
    pub fn lambda_rank(&self, k: usize) -> usize {
        self.ranks[k]
    }

    pub fn certificate(&self) -> &RankCertificate {
        &self.certificate
    }

    /// ker A_k as a subspace of Γ_ℓ^{⊗k}; requires the exact mode.
    pub fn kernel(&self, k: usize) -> Result<&Subspace<Scalar>, QError> {
        self.kernels
            .get(k)
            .and_then(|o| o.as_ref())
            .ok_or(QError::ExactKernelRequired)
    }

    /// Normal form of a degree-k tensor: the residue after eliminating the
    /// ker A_k coordinates against the fixed echelonized kernel basis.
    pub fn quotient_reduce(&self, x: &TensorForm) -> Result<TensorForm, QError> {
        let k = x.degree();
        if k == 0 {
            return Ok(x.clone());
        }
        let ker = self.kernel(k)?;
        let f = self.p.field();
        Ok(TensorForm::from_coeffs(x.n(), k, ker.reduce(x.coeffs(), &f)))
    }

    /// Product in Λ_w: the normal form of x⊗y.
    pub fn product_in_lambda(
        &self,
        x: &TensorForm,
        y: &TensorForm,
    ) -> Result<TensorForm, QError> {
        self.quotient_reduce(&x.tensor(y))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fodc::{differential, nu1_form, OmegaCtx};
    use crate::qgroup::{Branch, Group, Tau};

    fn algebra(n: usize, tau: Tau, k_max: usize) -> ExtAlgebra {
        let p = CalcParams::new(n, tau, Group::SL, Branch::Principal).unwrap();
        ExtAlgebra::new(&p, k_max, RankMode::Exact).unwrap()
    }

    #[test]
    fn nu1_wedge_nu1_vanishes() {
        for tau in [Tau::Plus, Tau::Minus] {
            let ext = algebra(2, tau, 2);
            let nu1 = nu1_form(ext.params());
            let prod = ext.product_in_lambda(&nu1, &nu1).unwrap();
            assert!(prod.is_zero(), "{tau:?}");
        }
    }

    #[test]
    fn maurer_cartan() {
        // d̃ω^i_j + Σ_x ω^i_x⊗ω^x_j ≡ 0 in Λ_w².
        let ext = algebra(2, Tau::Plus, 2);
        let p = ext.params();
        let ctx = OmegaCtx::new(p).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let mut acc = differential(p, ctx.omega_gen(i, j));
                for x in 0..2 {
                    acc = acc.add(&ctx.omega_gen(i, x).tensor(ctx.omega_gen(x, j)));
                }
                assert!(ext.quotient_reduce(&acc).unwrap().is_zero(), "({i},{j})");
            }
        }
    }

    #[test]
    fn eq_x_normal_form_vanishes() {
        // r_τ(ΥΥ)^i_j + (Υν₁)^i_j + (ν₁Υ)^i_j ≡ 0 in Λ_w² for all i, j.
        for tau in [Tau::Plus, Tau::Minus] {
            let ext = algebra(2, tau, 2);
            let p = ext.params();
            let f = p.field();
            let nu1 = nu1_form(p);
            for i in 0..2 {
                for j in 0..2 {
                    let mut acc = TensorForm::zero(2, 2);
                    for x in 0..2 {
                        acc = acc.add(
                            &TensorForm::nu(2, &f, i, x)
                                .tensor(&TensorForm::nu(2, &f, x, j))
                                .scale(&p.r_tau()),
                        );
                    }
                    let nu_ij = TensorForm::nu(2, &f, i, j);
                    acc = acc.add(&nu_ij.tensor(&nu1)).add(&nu1.tensor(&nu_ij));
                    assert!(
                        ext.quotient_reduce(&acc).unwrap().is_zero(),
                        "{tau:?} ({i},{j})"
                    );
                }
            }
        }
    }

    #[test]
    fn differential_descends() {
        // d̃(ker A_k) ⊆ ker A_{k+1}, so d is well-defined on Λ_w.
        let ext = algebra(2, Tau::Plus, 3);
        let p = ext.params();
        let f = p.field();
        for k in 1..=2usize {
            let ker = ext.kernel(k).unwrap();
            let next = ext.kernel(k + 1).unwrap();
            for row in ker.basis() {
                let x = TensorForm::from_coeffs(2, k, row.clone());
                let dx = differential(p, &x);
                assert!(next.contains(dx.coeffs(), &f), "k = {k}");
            }
        }
    }

    #[test]
    fn modular_mode_has_no_kernels() {
        let p = CalcParams::new(2, Tau::Plus, Group::SL, Branch::Principal).unwrap();
        let ext = ExtAlgebra::new(&p, 2, RankMode::Modular { samples: 2, seed: 9 }).unwrap();
        assert_eq!(ext.lambda_rank(2), 6);
        let nu1 = nu1_form(&p);
        assert!(matches!(
            ext.product_in_lambda(&nu1, &nu1),
            Err(QError::ExactKernelRequired)
        ));
    }
}
