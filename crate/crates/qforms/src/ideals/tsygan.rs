//! The reflection-equation presentation of Λ_s: the entries of
//! R̂^τΥ₂R̂^τΥ₂R̂^τ + Υ₂R̂^τΥ₂ with Υ = (ν^i_j) and Υ₂ = I⊗Υ span
//! exactly ker(I−σ) inside V⊗V.

use super::compare::s_ideal;
use crate::error::QError;
use crate::form::TensorForm;
use crate::linalg::{SparseMat, Subspace};
use crate::qgroup::{rhat_tau, CalcParams};
use crate::report::Report;
use crate::scalar::Scalar;

/// An N²×N² matrix whose entries are tensor forms of one common degree;
/// the matrix product tensors the entries in written order, so scalar
/// matrices (degree 0) compose as usual.
type FormMat = Vec<Vec<TensorForm>>;

fn from_scalar_mat(n: usize, m: &SparseMat<Scalar>) -> FormMat {
    let n2 = n * n;
    let mut out: FormMat = (0..n2)
        .map(|_| (0..n2).map(|_| TensorForm::zero(n, 0)).collect())
        .collect();
    for (i, row) in m.rows_iter().enumerate() {
        for (j, v) in row {
            out[i][*j as usize] = TensorForm::scalar(n, v.clone());
        }
    }
    out
}

/// Υ₂ = I⊗Υ: entry ((i₁,i₂),(j₁,j₂)) = δ^{i₁}_{j₁}·ν^{i₂}_{j₂}.
fn upsilon2(p: &CalcParams) -> FormMat {
    let n = p.n;
    let f = p.field();
    (0..n * n)
        .map(|r| {
            let (i1, i2) = (r / n, r % n);
            (0..n * n)
                .map(|c| {
                    let (j1, j2) = (c / n, c % n);
                    if i1 == j1 {
                        TensorForm::nu(n, &f, i2, j2)
                    } else {
                        TensorForm::zero(n, 1)
                    }
                })
                .collect()
        })
        .collect()
}

fn fmul(a: &FormMat, b: &FormMat, n: usize) -> FormMat {
    let dim = a.len();
    let deg = a[0][0].degree() + b[0][0].degree();
    (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| {
                    let mut acc = TensorForm::zero(n, deg);
                    for k in 0..dim {
                        if a[i][k].is_zero() || b[k][j].is_zero() {
                            continue;
                        }
                        acc = acc.add(&a[i][k].tensor(&b[k][j]));
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// Check that the quadratic reflection-equation relations, evaluated on
/// T = Υ, span the s-ideal in degree 2.
pub fn tsygan_span(p: &CalcParams) -> Result<Report, QError> {
    let n = p.n;
    let n2 = n * n;
    let f = p.field();
    let mut report = Report::new();

    let r = from_scalar_mat(n, &rhat_tau(p));
    let y = upsilon2(p);
    let ryr = fmul(&r, &fmul(&y, &r, n), n);
    let lhs = fmul(&ryr, &fmul(&y, &r, n), n);
    let rhs = fmul(&y, &fmul(&r, &y, n), n);

    let mut entries = Vec::with_capacity(n2 * n2);
    for i in 0..n2 {
        for j in 0..n2 {
            entries.push(lhs[i][j].add(&rhs[i][j]).into_coeffs());
        }
    }
    let span = Subspace::from_span(n2 * n2, entries, &f);
    let s2 = s_ideal(p)?;
    report.check(
        "relation entries span the s-ideal",
        span.equals(&s2),
        format!(
            "span of R Y R Y R + Y R Y entries has dim {}, ker(I-sigma) has dim {}",
            span.dim(),
            s2.dim()
        ),
    );
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qgroup::{Branch, Group, Tau};

    #[test]
    fn span_matches_kernel_n2() {
        for tau in [Tau::Plus, Tau::Minus] {
            for branch in [Branch::Principal, Branch::Negative] {
                let p = CalcParams::new(2, tau, Group::SL, branch).unwrap();
                let r = tsygan_span(&p).unwrap();
                assert!(r.all_passed(), "{tau:?} {branch:?}: {:?}", r.failures().collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn span_matches_kernel_n3() {
        for tau in [Tau::Plus, Tau::Minus] {
            let p = CalcParams::new(3, tau, Group::SL, Branch::Principal).unwrap();
            let r = tsygan_span(&p).unwrap();
            assert!(r.all_passed(), "{tau:?}: {:?}", r.failures().collect::<Vec<_>>());
        }
    }
}
