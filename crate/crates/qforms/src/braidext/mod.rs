//! The braid layer: symmetric-group bookkeeping, the braiding σ of
//! Γ_ℓ⊗Γ_ℓ, the antisymmetrizers A_k of Woronowicz' external algebra via
//! the shuffle recursion, and normal forms in the quotient Λ_w.

pub mod antisym;
pub mod perm;
pub mod quotient;
pub mod sigma;

pub use antisym::{antisymmetrizers, functab_mod, lambda_dim, BraidRep, EXACT_DIM_CEILING};
pub use perm::{all_perms, shuffles, Perm, PERM_ENUM_LIMIT};
pub use quotient::ExtAlgebra;
pub use sigma::{braiding, braiding_matrix, sigma_slot};
