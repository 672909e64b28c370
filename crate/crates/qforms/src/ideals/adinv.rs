//! The ad-invariant slice of ℛ at N = 2: on the span of Ū, Ū², Ū³ the
//! ideal cuts out a 2-dimensional space whose image under 𝒮 is the line
//! spanned by 2ω₁⊗ω₁ + θ_τ·ω₂.

use crate::error::QError;
use crate::fodc::{counit, u_element, OmegaCtx};
use crate::linalg::{kernel_basis, SparseMat, SparseVec, Subspace};
use crate::qgroup::CalcParams;
use crate::report::Report;
use crate::scalar::Scalar;

/// Verify the ad-invariant generator of the universal ideal at N = 2.
pub fn ad_invariant_check(p: &CalcParams) -> Result<Report, QError> {
    if p.n != 2 {
        return Err(QError::InvalidParams(
            "the ad-invariant slice check is specific to N = 2".into(),
        ));
    }
    let ctx = OmegaCtx::new(p)?;
    let f = p.field();
    let mut report = Report::new();

    let ubar = u_element(&ctx).bar();
    let mut powers = vec![ubar.clone()];
    for _ in 1..3 {
        powers.push(powers.last().unwrap().mul(&ubar));
    }
    report.check(
        "counit vanishes on powers",
        powers.iter().all(|a| counit(a).is_zero()),
        "eps(Ubar^k) = 0 for k = 1, 2, 3",
    );

    // R_inv on span{Ubar, Ubar^2, Ubar^3}: the kernel of omega, one
    // constraint row per nu-coordinate.
    let n2 = p.n * p.n;
    let mut cons: Vec<SparseVec<Scalar>> = vec![Vec::new(); n2];
    for (k, a) in powers.iter().enumerate() {
        for (c, v) in ctx.omega(a).coeffs() {
            cons[*c as usize].push((k as u32, v.clone()));
        }
    }
    let kernel = kernel_basis(&SparseMat::from_rows(n2, powers.len(), cons), &f);
    report.check(
        "truncated invariant ideal dimension",
        kernel.len() == 2,
        format!("dim (R_inv on span{{Ubar, Ubar^2, Ubar^3}}) = {}", kernel.len()),
    );

    // S of the kernel: a single line, proportional to 2 w1 x w1 + theta w2.
    let span = kernel.iter().map(|kv| {
        let mut acc = crate::form::TensorForm::zero(p.n, 2);
        for (k, c) in kv {
            acc = acc.add(&ctx.s_map(&powers[*k as usize]).scale(c));
        }
        acc.into_coeffs()
    });
    let s_span = Subspace::from_span(n2 * n2, span, &f);
    let w1w1 = ctx.omega1().tensor(&ctx.omega1());
    let target = w1w1
        .scale(&Scalar::from_int(p.vars(), 2))
        .add(&ctx.omega2().scale(&p.theta_tau()));
    let line = Subspace::from_span(n2 * n2, [target.coeffs().clone()], &f);
    report.check(
        "invariant generator line",
        s_span.dim() == 1 && s_span.equals(&line),
        format!(
            "dim S(R_inv) = {}, spanned by 2 w1 x w1 + theta w2",
            s_span.dim()
        ),
    );

    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qgroup::{Branch, Group, Tau};

    #[test]
    fn invariant_line_on_all_4d_branches() {
        for tau in [Tau::Plus, Tau::Minus] {
            for branch in [Branch::Principal, Branch::Negative] {
                let p = CalcParams::new(2, tau, Group::SL, branch).unwrap();
                let r = ad_invariant_check(&p).unwrap();
                assert!(r.all_passed(), "{tau:?} {branch:?}: {:?}", r.failures().collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn rejects_other_ranks() {
        let p = CalcParams::new(3, Tau::Plus, Group::SL, Branch::Principal).unwrap();
        assert!(ad_invariant_check(&p).is_err());
    }
}
