//! Exact computation in the type-A Hecke algebras and the Homfly skein of
//! the annulus.
//!
//! The crate provides:
//!
//! * [`scalar`] — the coefficient ring: integer Laurent polynomials in `v`
//!   and `s` with quantum-integer denominators, exact throughout;
//! * [`perm`], [`hecke`] — the Hecke algebra `H_n` on the
//!   positive-permutation-braid basis, braid-word evaluation and the Murphy
//!   operators;
//! * [`closure`] — partial closures and the Markov trace (framed Homfly
//!   polynomials of braid closures);
//! * [`series`], [`annulus`] — the positive part of the annulus skein as a
//!   polynomial ring on `h_1, h_2, ..`, generating series, the closed-braid
//!   elements, the power sums and the mirror map;
//! * [`threading`] — the homomorphism onto the centre of `H_n` given by
//!   threading annulus elements through `n` parallel strands;
//! * [`verify`] — batch identity checks with machine-readable reports.

pub mod annulus;
pub mod closure;
pub mod error;
pub mod hecke;
pub mod perm;
pub mod scalar;
pub mod series;
pub mod threading;
pub mod verify;

pub use annulus::AnnulusElem;
pub use error::SkeinError;
pub use hecke::{BraidWord, HeckeElem};
pub use perm::Permutation;
pub use scalar::{LaurentPoly, Scalar};
pub use series::Series;
