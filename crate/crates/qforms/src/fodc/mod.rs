//! The first-order-calculus layer: counit and words in the free algebra,
//! the maps ω and 𝒮, the truncated right ideal ℛ = ker ε ∩ ker ω, the
//! Ad-invariant elements W± with their f-constants, the ν↔ω basis
//! transforms of Eq. (zero), and the tensor-level differential.

pub mod free;
pub mod omega;
pub mod winv;

pub use free::{counit, FreeElem, FreeWord};
pub use omega::{nu1_form, OmegaCtx, RIdealTrunc};
pub use winv::{f_constants, u_element, w_element, w_elements, FConstants, WElement, WElements};

use crate::error::QError;
use crate::form::TensorForm;
use crate::linalg::{invert, SparseMat};
use crate::qgroup::CalcParams;
use crate::scalar::Scalar;

/// Direction of the per-leg change of basis between the ν- and ω-bases.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    OmegaToNu,
    NuToOmega,
}

/// Matrix sending ω-coefficient vectors to ν-coefficient vectors on one
/// leg: by Eq. (zero), ω^i_j = z·r_τ·ν^i_j + (z−1)·δ^i_j·ν₁.
fn omega_to_nu_matrix(p: &CalcParams) -> SparseMat<Scalar> {
    let n = p.n;
    let f = p.field();
    let zr = p.z().mul(&p.r_tau());
    let zm1 = p.z().sub(&Scalar::one(p.vars()));
    let mut t = SparseMat::zero(n * n, n * n);
    for i in 0..n {
        for j in 0..n {
            t.add_at(i * n + j, i * n + j, zr.clone(), &f);
            if i == j {
                for k in 0..n {
                    t.add_at(i * n + j, k * n + k, zm1.mul(&p.trace_weight(k)), &f);
                }
            }
        }
    }
    // Rows express ω-basis elements in ν-coordinates; coefficient vectors
    // transform by the transpose.
    t.transpose()
}

/// Per-leg change of basis on a degree-k form. The two directions are
/// mutually inverse; validity of the parameters guarantees z·r_τ ≠ 0 and
/// θ_τ ≠ 0, so the matrix is invertible.
pub fn basis_transform(
    p: &CalcParams,
    x: &TensorForm,
    dir: Direction,
) -> Result<TensorForm, QError> {
    let f = p.field();
    let fwd = omega_to_nu_matrix(p);
    let m = match dir {
        Direction::OmegaToNu => fwd,
        Direction::NuToOmega => invert(&fwd, &f)?,
    };
    let mut out = x.clone();
    for leg in 0..x.degree() {
        out = out.apply_on_leg(&m, leg, &f);
    }
    Ok(out)
}

/// Tensor-level representative of the differential:
/// d̃x = ν₁⊗x − (−1)^k·x⊗ν₁ for x of degree k. It interpolates
/// Eq. (inner) at k = 0 and Eq. (inner1) at k = 1, and descends to the
/// quotients because d̃(ker A_k) ⊆ ker A_{k+1}.
pub fn differential(p: &CalcParams, x: &TensorForm) -> TensorForm {
    let nu1 = nu1_form(p);
    let left = nu1.tensor(x);
    let right = x.tensor(&nu1);
    if x.degree() % 2 == 0 {
        left.sub(&right)
    } else {
        left.add(&right)
    }
}
