//! Degree-wise comparison of the three exterior ideals: the Woronowicz
//! kernel ker A₂, the braided-symmetric ideal ker(I−σ) of Λ_s, and the
//! universal ideal 𝒮(ℛ) of Λ_u, together with the ad-invariant slice at
//! N = 2 and the reflection-equation presentation of Λ_s.

mod adinv;
mod compare;
mod tsygan;

pub use adinv::ad_invariant_check;
pub use compare::{compare_ideals, s_ideal, IdealComparison};
pub use tsygan::tsygan_span;
