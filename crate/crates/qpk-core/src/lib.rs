#![no_std]
//! Exact symbolic core: coefficients, Weyl-algebra operator words with
//! quantum dilogarithm factors, the Hopf algebras `C_{q,q∨}` / `D_{q,q∨}`,
//! operator builders with an identity catalog, proof scripts, and the
//! Kashaev groupoid of dotted polygon triangulations.

extern crate alloc;

pub mod coeff;
pub mod error;
pub mod groupoid;
pub mod hopf;
pub mod reps;
pub mod script;
pub mod weylalg;

pub use coeff::{Coeff, GaussRat};
pub use error::{Error, Result};
