//! Graded commutativity and closedness of bi-invariant forms in Λ_w.

use super::uq::biinv_kernel;
use crate::braidext::ExtAlgebra;
use crate::error::QError;
use crate::fodc::differential;
use crate::form::TensorForm;
use crate::linalg::RankMode;
use crate::qgroup::{CalcParams, FuncTable};
use crate::report::Report;
use crate::scalar::Scalar;

/// Bi-invariant tensor representatives per degree 1..k_max.
fn biinv_forms(p: &CalcParams, k_max: usize) -> Result<Vec<Vec<TensorForm>>, QError> {
    let t = FuncTable::for_params(p)?;
    Ok((1..=k_max)
        .map(|k| {
            biinv_kernel(&t, k)
                .into_iter()
                .map(|v| TensorForm::from_coeffs(p.n, k, v))
                .collect()
        })
        .collect())
}

/// Theorem 2 (ii)/(iii): every pair of bi-invariant forms graded-commutes
/// with sign (−1)^{kn} in Λ_w, and every bi-invariant form is closed there.
/// Failures are report entries, not exceptions.
pub fn verify_thm2(p: &CalcParams, k_max: usize) -> Result<Report, QError> {
    let ext = ExtAlgebra::new(p, k_max, RankMode::Exact)?;
    let forms = biinv_forms(p, k_max.saturating_sub(1))?;
    let mut report = Report::new();
    for (ki, xs) in forms.iter().enumerate() {
        let k = ki + 1;
        for (ni, ys) in forms.iter().enumerate() {
            let n = ni + 1;
            if k + n > k_max {
                continue;
            }
            for (xi, x) in xs.iter().enumerate() {
                for (yi, y) in ys.iter().enumerate() {
                    let lhs = ext.product_in_lambda(x, y)?;
                    let mut rhs = ext.product_in_lambda(y, x)?;
                    if (k * n) % 2 == 1 {
                        rhs = rhs.scale(&Scalar::from_int(p.vars(), -1));
                    }
                    report.check(
                        format!("graded-commutativity deg ({k},{n}) #({xi},{yi})"),
                        lhs == rhs,
                        format!("x∧y vs (−1)^{{{k}·{n}}} y∧x in Λ_w^{}", k + n),
                    );
                }
            }
        }
        if k + 1 <= k_max {
            for (xi, x) in xs.iter().enumerate() {
                let dx = ext.quotient_reduce(&differential(p, x))?;
                report.check(
                    format!("closedness deg {k} #{xi}"),
                    dx.is_zero(),
                    format!("normal form of d̃x in Λ_w^{}", k + 1),
                );
            }
        }
    }
    Ok(report)
}
