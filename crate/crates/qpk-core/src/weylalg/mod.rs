//! Exact symbolic calculus of operator words: Weyl exponentials, special
//! linear operators, quadratic exponentials and quantum dilogarithms.

pub mod form;
pub mod rules;
pub mod saso;
pub mod word;

pub use form::{bracket, Axis, ComplexExponent, Coord, Generator, Kind, LinForm, RealLinearForm};
pub use saso::{dilog_frame, quadexp, IntMatrix, Saso};
pub use word::{bch_mul, weyl_shift, Dilog, DilogKind, Factor, OperatorSum, OperatorWord, Prefactor, Term};
