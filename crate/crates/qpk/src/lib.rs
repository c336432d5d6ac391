//! Special functions, grid numerics and the command-line verifier built on
//! the exact engine in `qpk-core`.

pub mod qdilog;
pub mod numerics;
pub mod cli;
