//! The dual action of the ℓ±-functionals on Γ_ℓ^{⊗k} and the bi-invariant
//! subspaces it cuts out.
//!
//! π(ℓ^{±,i}_j)(x) = (id⊗ℓ^{±,i}_j)(Δ_R x): the functional's matrix
//! coproduct is split across the tensor legs, each leg evaluated on the
//! coaction coefficients v^J_I = S(u^{I₁}_{J₁})·u^{J₂}_{I₂}. Bi-invariance
//! of a left-invariant tensor is the joint δ^i_j-eigenvalue condition for
//! both signs; the ℓ± entries generate the relevant functional algebra, so
//! for transcendental q this detects Δ_R-coinvariance (cross-checked at
//! N = 2 against a coordinate-algebra oracle).

use crate::braidext::{antisymmetrizers, braiding, braiding_matrix, functab_mod, EXACT_DIM_CEILING};
use crate::error::QError;
use crate::form::TensorForm;
use crate::linalg::{
    sample_stream, Echelon, FieldCtx, RankCertificate, RankMode, SparseMat, SparseVec, Subspace,
};
use crate::qgroup::{row_apply, CalcParams, FuncTable, Scale, Tau};
use crate::scalar::Scalar;

/// The per-leg evaluation family: fam[a·N+b] is the N²×N² matrix (column
/// convention, rows = target letter J) with entries ℓ^a_?(v^J_I) chained at
/// functional indices (a, b). Scales cancel within each S(u)·u pair.
fn leg_family<F: FieldCtx>(t: &FuncTable<F>, sign: Tau) -> Vec<SparseMat<F::E>> {
    let n = t.n();
    let n2 = n * n;
    let f = t.ctx().clone();
    let mut fam = vec![SparseMat::zero(n2, n2); n2];
    for src in 0..n2 {
        let (i1, i2) = (src / n, src % n);
        for dst in 0..n2 {
            let (j1, j2) = (dst / n, dst % n);
            let prod = t
                .letter(sign, Scale::X, 1, i1, j1)
                .mul(&t.letter(sign, Scale::X, 0, j2, i2), &f);
            for (a, row) in prod.rows_iter().enumerate() {
                for (b, v) in row {
                    fam[a * n + *b as usize].set(dst, src, v.clone(), &f);
                }
            }
        }
    }
    fam
}

/// All N² operators π(ℓ^{sign,i}_j) on Γ_ℓ^{⊗k} (index i·N+j), acting on
/// coefficient column vectors. The matrix coproduct chains the functional
/// indices across the legs, leg 0 first.
pub fn uq_ops<F: FieldCtx>(t: &FuncTable<F>, sign: Tau, k: usize) -> Vec<SparseMat<F::E>> {
    let n = t.n();
    let n2 = n * n;
    let f = t.ctx().clone();
    let fam = leg_family(t, sign);
    // Degree 0: ℓ^i_j(1) = δ^i_j.
    let mut level: Vec<SparseMat<F::E>> = (0..n2)
        .map(|ij| {
            let mut m = SparseMat::zero(1, 1);
            if ij / n == ij % n {
                m.set(0, 0, f.one(), &f);
            }
            m
        })
        .collect();
    for _ in 0..k {
        let mut next = Vec::with_capacity(n2);
        for a in 0..n {
            for b in 0..n {
                let dim = level[0].rows() * n2;
                let mut acc = SparseMat::zero(dim, dim);
                for c in 0..n {
                    acc = acc.add(&fam[a * n + c].kron(&level[c * n + b], &f), &f);
                }
                next.push(acc);
            }
        }
        level = next;
    }
    level
}

/// π(ℓ^{sign,i}_j)(x) for a degree ≥ 1 tensor form.
pub fn uq_action(
    p: &CalcParams,
    sign: Tau,
    i: usize,
    j: usize,
    x: &TensorForm,
) -> Result<TensorForm, QError> {
    assert!(x.degree() >= 1);
    let t = FuncTable::for_params(p)?;
    let ops = uq_ops(&t, sign, x.degree());
    Ok(x.apply(&ops[i * p.n + j], &p.field()))
}

/// Kernel of the joint eigenvalue system π(ℓ^{±,i}_j)x = δ^i_j·x over any
/// coefficient field.
pub fn biinv_kernel<F: FieldCtx>(t: &FuncTable<F>, k: usize) -> Vec<SparseVec<F::E>> {
    let n = t.n();
    let n2 = n * n;
    let f = t.ctx().clone();
    let dim = n2.pow(k as u32);
    let mut ech = Echelon::new(f.clone(), dim);
    for sign in [Tau::Plus, Tau::Minus] {
        for (ij, op) in uq_ops(t, sign, k).into_iter().enumerate() {
            let c = if ij / n == ij % n {
                op.sub(&SparseMat::identity(dim, &f), &f)
            } else {
                op
            };
            for row in c.rows_iter() {
                if !row.is_empty() {
                    ech.insert(row);
                }
            }
        }
    }
    ech.kernel_rows()
}

/// The bi-invariant subspace of Γ_ℓ^{⊗k}, exact.
pub fn biinvariant_basis(p: &CalcParams, k: usize) -> Result<Subspace<Scalar>, QError> {
    let f = p.field();
    let dim = (p.n * p.n).pow(k as u32);
    if k == 0 {
        return Ok(Subspace::full(1, &f));
    }
    if dim > EXACT_DIM_CEILING {
        return Err(QError::ResourceLimit(format!(
            "exact bi-invariance system at dimension {dim} exceeds the ceiling \
             {EXACT_DIM_CEILING}; use the modular mode"
        )));
    }
    let t = FuncTable::for_params(p)?;
    Ok(Subspace::from_span(dim, biinv_kernel(&t, k), &f))
}

/// Rank of { A_k·v : v in the joint kernel } over any field; A_k in column
/// convention, so A_k·v accumulates columns.
fn image_rank<F: FieldCtx>(a_k: &SparseMat<F::E>, basis: &[SparseVec<F::E>], f: &F) -> usize {
    let at = a_k.transpose();
    let mut ech = Echelon::new(f.clone(), a_k.rows());
    for v in basis {
        let img = row_apply(v, &at, f);
        if !img.is_empty() {
            ech.insert(&img);
        }
    }
    ech.rank()
}

/// Dimensions of the bi-invariant part of Λ_w^k for k = 0..=k_max: the
/// image of the bi-invariant tensor subspace under A_k (A_k commutes with
/// the coaction, a checked invariant). The modular mode specializes the
/// whole pipeline mod p and reports the agreed dimension vector.
pub fn biinv_lambda_dims(
    p: &CalcParams,
    k_max: usize,
    mode: RankMode,
) -> Result<(Vec<usize>, RankCertificate), QError> {
    match mode {
        RankMode::Exact => {
            let f = p.field();
            let dim = (p.n * p.n).pow(k_max as u32);
            if dim > EXACT_DIM_CEILING {
                return Err(QError::ResourceLimit(format!(
                    "exact eliminations at dimension {dim} exceed the ceiling \
                     {EXACT_DIM_CEILING}; use the modular mode"
                )));
            }
            let sigma = braiding(p)?;
            let anti = antisymmetrizers(p.n, &sigma, k_max.max(1), &f);
            let t = FuncTable::for_params(p)?;
            let mut dims = vec![1usize];
            for k in 1..=k_max {
                let basis = biinv_kernel(&t, k);
                dims.push(image_rank(&anti[k - 1], &basis, &f));
            }
            Ok((dims, RankCertificate::Exact))
        }
        RankMode::Modular { samples, seed } => modular_dims(p, k_max, samples, seed),
    }
}

fn modular_dims(
    p: &CalcParams,
    k_max: usize,
    samples: usize,
    seed: u64,
) -> Result<(Vec<usize>, RankCertificate), QError> {
    let want = samples.max(2);
    let mut runs: Vec<Vec<usize>> = Vec::with_capacity(want);
    let mut tried = 0usize;
    for sample in sample_stream(seed) {
        if runs.len() == want {
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
        let anti = antisymmetrizers(p.n, &sigma, k_max.max(1), &f);
        let mut dims = vec![1usize];
        for k in 1..=k_max {
            let basis = biinv_kernel(&t, k);
            dims.push(image_rank(&anti[k - 1], &basis, &f));
        }
        runs.push(dims);
    }
    // Componentwise maximum is the generic lower bound; require agreement.
    let best = runs
        .iter()
        .fold(vec![0usize; k_max + 1], |acc, r| {
            acc.iter().zip(r).map(|(a, b)| *a.max(b)).collect()
        });
    if runs.iter().any(|r| *r != best) {
        return modular_dims(p, k_max, want + 2, seed.wrapping_add(1));
    }
    Ok((best, RankCertificate::ProbabilisticLowerBoundAgreed { samples: want }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fodc::{nu1_form, OmegaCtx};
    use crate::qgroup::{Branch, Group};

    fn params(n: usize, tau: Tau, branch: Branch) -> CalcParams {
        let group = if branch == Branch::GenericZ { Group::GL } else { Group::SL };
        CalcParams::new(n, tau, group, branch).unwrap()
    }

    #[test]
    fn nu1_is_a_joint_eigenvector() {
        for n in [2usize, 3] {
            let p = params(n, Tau::Plus, Branch::Principal);
            let nu1 = nu1_form(&p);
            for sign in [Tau::Plus, Tau::Minus] {
                for i in 0..n {
                    for j in 0..n {
                        let got = uq_action(&p, sign, i, j, &nu1).unwrap();
                        let want = if i == j { nu1.clone() } else { TensorForm::zero(n, 1) };
                        assert_eq!(got, want, "n={n} {sign:?} ({i},{j})");
                    }
                }
            }
        }
    }

    #[test]
    fn omega2_is_a_joint_eigenvector() {
        let p = params(2, Tau::Minus, Branch::Principal);
        let om2 = OmegaCtx::new(&p).unwrap().omega2().clone();
        for sign in [Tau::Plus, Tau::Minus] {
            for i in 0..2 {
                for j in 0..2 {
                    let got = uq_action(&p, sign, i, j, &om2).unwrap();
                    let want = if i == j { om2.clone() } else { TensorForm::zero(2, 2) };
                    assert_eq!(got, want, "{sign:?} ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn representation_composes() {
        // The matrix coproduct makes π matricial: the degree-1 operator of
        // ℓ^i_j on two legs equals Σ_c (leg op of ℓ^i_c) ⊗ (leg op of ℓ^c_j).
        let p = params(2, Tau::Plus, Branch::Principal);
        let t = FuncTable::for_params(&p).unwrap();
        let f = p.field();
        for sign in [Tau::Plus, Tau::Minus] {
            let one = uq_ops(&t, sign, 1);
            let two = uq_ops(&t, sign, 2);
            for i in 0..2 {
                for j in 0..2 {
                    let mut acc = SparseMat::zero(16, 16);
                    for c in 0..2 {
                        acc = acc.add(&one[i * 2 + c].kron(&one[c * 2 + j], &f), &f);
                    }
                    assert_eq!(acc, two[i * 2 + j], "{sign:?} ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn antisymmetrizer_commutes_with_the_action() {
        let p = params(2, Tau::Plus, Branch::Principal);
        let f = p.field();
        let t = FuncTable::for_params(&p).unwrap();
        let sigma = braiding(&p).unwrap();
        let anti = antisymmetrizers(2, &sigma, 3, &f);
        for k in 2..=3usize {
            for sign in [Tau::Plus, Tau::Minus] {
                for op in uq_ops(&t, sign, k) {
                    assert_eq!(
                        op.mul(&anti[k - 1], &f),
                        anti[k - 1].mul(&op, &f),
                        "k = {k} {sign:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn tensor_level_biinvariants() {
        let p = params(2, Tau::Plus, Branch::Principal);
        let f = p.field();
        assert_eq!(biinvariant_basis(&p, 0).unwrap().dim(), 1);
        let k1 = biinvariant_basis(&p, 1).unwrap();
        assert_eq!(k1.dim(), 1);
        assert!(k1.contains(nu1_form(&p).coeffs(), &f));
        let k2 = biinvariant_basis(&p, 2).unwrap();
        let ctx = OmegaCtx::new(&p).unwrap();
        assert!(k2.contains(ctx.omega2().coeffs(), &f));
        let om11 = ctx.omega1().tensor(&ctx.omega1());
        assert!(k2.contains(om11.coeffs(), &f));
    }

    #[test]
    fn n2_biinv_lambda_dims() {
        // Theorem 2 (i) at N = 2: coefficients of (1+t)(1+t³).
        for tau in [Tau::Plus, Tau::Minus] {
            let p = params(2, tau, Branch::Principal);
            let (dims, cert) = biinv_lambda_dims(&p, 4, RankMode::Exact).unwrap();
            assert_eq!(dims, vec![1, 1, 0, 1, 1], "{tau:?}");
            assert_eq!(cert, RankCertificate::Exact);
        }
    }

    #[test]
    fn n3_biinv_lambda_dims_exact_part() {
        // Theorem 2 (i) at N = 3: coefficients of (1+t)(1+t³)(1+t⁵) through t³.
        let p = params(3, Tau::Plus, Branch::Principal);
        let (dims, _) = biinv_lambda_dims(&p, 3, RankMode::Exact).unwrap();
        assert_eq!(dims, vec![1, 1, 0, 1]);
    }

    #[test]
    fn modular_dims_agree_with_exact() {
        let p = params(2, Tau::Minus, Branch::Principal);
        let (dims, cert) =
            biinv_lambda_dims(&p, 3, RankMode::Modular { samples: 2, seed: 21 }).unwrap();
        assert_eq!(dims, vec![1, 1, 0, 1]);
        assert_eq!(cert, RankCertificate::ProbabilisticLowerBoundAgreed { samples: 2 });
    }
}
