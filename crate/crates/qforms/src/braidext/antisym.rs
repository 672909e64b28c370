//! Woronowicz' braided antisymmetrizers A_k and the dimensions of the
//! external algebra Λ_w, via the shuffle recursion
//! A_k = A_{k,1}·(I ⊗ A_{k−1}),  A_{k,1} = Σ_{j=0}^{k−1} (−1)^j σ_j⋯σ_1.
//! The k!-term signed sum over 𝒮_k survives only as a test oracle.

use super::perm::Perm;
use super::sigma::{braiding, braiding_matrix, sigma_slot};
use crate::error::QError;
use crate::linalg::{
    rank_mod, sample_stream, scalar_mod, Echelon, FieldCtx, PrimeField, RankCertificate,
    RankMode, SparseMat,
};
use crate::qgroup::{CalcParams, FuncTable};

/// Exact eliminations are limited to representation dimension N^{2k} ≤ 4096
/// (N = 2 up to k = 6, N = 3 up to k = 3); beyond that use the modular mode.
pub const EXACT_DIM_CEILING: usize = 4096;

/// σ together with its slot operators σ_1, …, σ_{k−1} on Γ_ℓ^{⊗k}.
pub struct BraidRep<F: FieldCtx> {
    n: usize,
    k: usize,
    sigmas: Vec<SparseMat<F::E>>,
}

impl<F: FieldCtx> BraidRep<F> {
    pub fn new(n: usize, k: usize, sigma: &SparseMat<F::E>, f: &F) -> Self {
        assert!(k >= 1);
        let sigmas = (1..k).map(|j| sigma_slot(sigma, n, k, j, f)).collect();
        BraidRep { n, k, sigmas }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn dim(&self) -> usize {
        (self.n * self.n).pow(self.k as u32)
    }

    /// σ_j, 1-based slot index.
    pub fn sigma(&self, j: usize) -> &SparseMat<F::E> {
        &self.sigmas[j - 1]
    }

    /// b_w = σ_{w₁}σ_{w₂}⋯σ_{wℓ} for a reduced word; well-defined by the
    /// braid equation.
    pub fn b_word(&self, word: &[usize], f: &F) -> SparseMat<F::E> {
        let mut acc = SparseMat::identity(self.dim(), f);
        for &j in word {
            acc = acc.mul(self.sigma(j), f);
        }
        acc
    }

    /// The signed shuffle sum A_{ki} = Σ_{w∈𝒞_{ki}} (−1)^{ℓ(w)} b_w from an
    /// explicit shuffle set (test-oracle path; the recursion builds 𝒞_{k1}
    /// implicitly).
    pub fn signed_sum<'a>(
        &self,
        perms: impl IntoIterator<Item = &'a Perm>,
        f: &F,
    ) -> SparseMat<F::E> {
        let mut acc = SparseMat::zero(self.dim(), self.dim());
        for p in perms {
            let b = self.b_word(&p.reduced_word(), f);
            let sign = if p.length() % 2 == 0 { f.one() } else { f.neg(&f.one()) };
            acc = acc.add(&b.scale(&sign, f), f);
        }
        acc
    }
}

/// A_1, …, A_k by the recursion; A_1 = I.
pub fn antisymmetrizers<F: FieldCtx>(
    n: usize,
    sigma: &SparseMat<F::E>,
    k: usize,
    f: &F,
) -> Vec<SparseMat<F::E>> {
    let n2 = n * n;
    let mut out: Vec<SparseMat<F::E>> = vec![SparseMat::identity(n2, f)];
    for m in 2..=k {
        let rep = BraidRep::new(n, m, sigma, f);
        // A_{m,1} = I − σ_1 + σ_2σ_1 − …: accumulate the chain products.
        let mut a_m1 = SparseMat::identity(rep.dim(), f);
        let mut chain = SparseMat::identity(rep.dim(), f);
        for j in 1..m {
            chain = rep.sigma(j).mul(&chain, f);
            let sign = if j % 2 == 0 { f.one() } else { f.neg(&f.one()) };
            a_m1 = a_m1.add(&chain.scale(&sign, f), f);
        }
        let prev = SparseMat::identity(n2, f).kron(out.last().unwrap(), f);
        out.push(a_m1.mul(&prev, f));
    }
    out
}

/// dim Λ_w^k of left-invariant forms = rank A_k. Degree 0 is the scalar
/// line. Exact mode eliminates over the rational-function field; modular
/// mode specializes the functional tables mod p first, rebuilds σ and the
/// recursion there, and reports the agreed rank.
pub fn lambda_dim(
    p: &CalcParams,
    k: usize,
    mode: RankMode,
) -> Result<(usize, RankCertificate), QError> {
    if k == 0 {
        return Ok((1, RankCertificate::Exact));
    }
    let n2 = p.n * p.n;
    match mode {
        RankMode::Exact => {
            let dim = n2.pow(k as u32);
            if dim > EXACT_DIM_CEILING {
                return Err(QError::ResourceLimit(format!(
                    "exact elimination at dimension {dim} exceeds the ceiling \
                     {EXACT_DIM_CEILING}; use the modular mode"
                )));
            }
            let f = p.field();
            let sigma = braiding(p)?;
            let a_k = antisymmetrizers(p.n, &sigma, k, &f).pop().unwrap();
            let mut ech = Echelon::new(f, a_k.cols());
            for row in a_k.rows_iter() {
                if !row.is_empty() {
                    ech.insert(row);
                }
            }
            Ok((ech.rank(), RankCertificate::Exact))
        }
        RankMode::Modular { samples, seed } => modular_lambda_dim(p, k, samples, seed),
    }
}

/// One modular specialization of the functional tables.
pub fn functab_mod(
    p: &CalcParams,
    sample: &crate::linalg::ModularSample,
) -> Result<FuncTable<PrimeField>, QError> {
    FuncTable::new(
        p.n,
        p.tau,
        scalar_mod(&p.q_pow(1), sample)?,
        scalar_mod(&p.x(), sample)?,
        scalar_mod(&p.y(), sample)?,
        sample.field,
    )
}

fn modular_lambda_dim(
    p: &CalcParams,
    k: usize,
    samples: usize,
    seed: u64,
) -> Result<(usize, RankCertificate), QError> {
    let want = samples.max(2);
    let mut ranks = Vec::with_capacity(want);
    let mut tried = 0usize;
    for sample in sample_stream(seed) {
        if ranks.len() == want {
            break;
        }
        tried += 1;
        if tried > want + 16 {
            return Err(QError::SamplingExhausted);
        }
        let t = match functab_mod(p, &sample) {
            Ok(t) => t,
            Err(QError::BadSpecialization) | Err(QError::ZeroDivisor) => continue,
            Err(e) => return Err(e),
        };
        let f = sample.field;
        let sigma = braiding_matrix(&t);
        let a_k = antisymmetrizers(p.n, &sigma, k, &f).pop().unwrap();
        ranks.push(rank_mod(&a_k, &f));
    }
    let best = *ranks.iter().max().unwrap();
    if ranks.iter().any(|r| *r != best) {
        // A sample hit a rank-dropping locus; retry with a shifted stream.
        return modular_lambda_dim(p, k, want + 2, seed.wrapping_add(1));
    }
    Ok((best, RankCertificate::ProbabilisticLowerBoundAgreed { samples: want }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braidext::perm::{all_perms, shuffles};
    use crate::qgroup::{Branch, Group, Tau};

    fn params(n: usize, tau: Tau, branch: Branch) -> CalcParams {
        let group = if branch == Branch::GenericZ { Group::GL } else { Group::SL };
        CalcParams::new(n, tau, group, branch).unwrap()
    }

    #[test]
    fn a2_is_one_minus_sigma() {
        let p = params(2, Tau::Plus, Branch::Principal);
        let f = p.field();
        let sigma = braiding(&p).unwrap();
        let a = antisymmetrizers(2, &sigma, 2, &f);
        let expect = SparseMat::identity(16, &f).sub(&sigma, &f);
        assert_eq!(a[1], expect);
    }

    #[test]
    fn recursion_matches_signed_sum_oracle() {
        // A_k from the recursion equals the direct k!-term signed sum over
        // 𝒮_k, k ≤ 4, N = 2.
        let p = params(2, Tau::Minus, Branch::Principal);
        let f = p.field();
        let sigma = braiding(&p).unwrap();
        let a = antisymmetrizers(2, &sigma, 4, &f);
        for k in 2..=4usize {
            let rep = BraidRep::new(2, k, &sigma, &f);
            let oracle = rep.signed_sum(&all_perms(k).unwrap(), &f);
            assert_eq!(a[k - 1], oracle, "k = {k}");
        }
    }

    #[test]
    fn shuffle_factorization() {
        // A_k = A_{ki}·(A_i ⊗ A_{k−i}) with both factors built
        // independently, for 1 ≤ i < k ≤ 4 at N = 2.
        let p = params(2, Tau::Plus, Branch::Principal);
        let f = p.field();
        let sigma = braiding(&p).unwrap();
        let a = antisymmetrizers(2, &sigma, 4, &f);
        for k in 2..=4usize {
            for i in 1..k {
                let rep = BraidRep::new(2, k, &sigma, &f);
                let shuffle_part = rep.signed_sum(&shuffles(k, i).unwrap(), &f);
                let split = a[i - 1].kron(&a[k - i - 1], &f);
                assert_eq!(a[k - 1], shuffle_part.mul(&split, &f), "k = {k}, i = {i}");
            }
        }
    }

    #[test]
    fn n2_lambda_dims() {
        // Theorem 1 at N = 2: Poincaré series (1+t)⁴, and A_5 = 0.
        let p = params(2, Tau::Plus, Branch::Principal);
        for (k, want) in [(0usize, 1usize), (1, 4), (2, 6), (3, 4), (4, 1), (5, 0)] {
            let (rank, cert) = lambda_dim(&p, k, RankMode::Exact).unwrap();
            assert_eq!(rank, want, "k = {k}");
            assert_eq!(cert, RankCertificate::Exact);
        }
    }

    #[test]
    fn n3_k2_exact_dim() {
        let p = params(3, Tau::Plus, Branch::Principal);
        let (rank, _) = lambda_dim(&p, 2, RankMode::Exact).unwrap();
        assert_eq!(rank, 36);
    }

    #[test]
    fn modular_agrees_with_exact() {
        let p = params(2, Tau::Plus, Branch::Principal);
        let (rank, cert) =
            lambda_dim(&p, 2, RankMode::Modular { samples: 2, seed: 5 }).unwrap();
        assert_eq!(rank, 6);
        assert_eq!(cert, RankCertificate::ProbabilisticLowerBoundAgreed { samples: 2 });
    }

    #[test]
    fn exact_ceiling_enforced() {
        let p = params(3, Tau::Plus, Branch::Principal);
        assert!(matches!(
            lambda_dim(&p, 4, RankMode::Exact),
            Err(QError::ResourceLimit(_))
        ));
    }
}
