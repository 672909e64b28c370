//! Exact-arithmetic workbench for bicovariant exterior calculi on the
//! quantum groups SL_q(N) and GL_q(N).
//!
//! The crate constructs the N^2-dimensional bicovariant first-order
//! differential calculi of type A, builds the braided antisymmetrizers of
//! Woronowicz' external algebra, and verifies dimension tables, graded
//! commutativity and closedness of bi-invariant forms, and degree-wise
//! comparisons of the three exterior ideals, all in exact arithmetic over
//! a rational-function field.
//!
//! ```
//! use qforms::scalar::parse_scalar;
//!
//! let x = parse_scalar("(t^4 - 1)/(t^2 + 1)", 1).unwrap();
//! assert_eq!(x.to_string(), "t^2 - 1");
//! ```

pub mod braidext;
pub mod cli;
pub mod error;
pub mod fodc;
pub mod form;
pub mod ideals;
pub mod invariants;
pub mod linalg;
pub mod report;
pub mod qgroup;
pub mod scalar;

#[cfg(doctest)]
mod book;

pub use error::QError;
