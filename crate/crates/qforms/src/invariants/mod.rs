//! Bi-invariant subspaces via the dual ℓ-functional action, bi-invariant
//! Poincaré series in Λ_w, and the Theorem 2 verification suite.

#[cfg(test)]
mod sl2_oracle;
mod suite;
mod thm2;
mod uq;

pub use suite::structural_suite;
pub use thm2::verify_thm2;
pub use uq::{biinv_kernel, biinv_lambda_dims, biinvariant_basis, uq_action, uq_ops};
