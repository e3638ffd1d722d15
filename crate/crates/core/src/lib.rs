//! Exact-arithmetic toolkit for height bounds of S-integral points on
//! modular curves.
//!
//! The library is organised around the objects the bounds are built from:
//!
//! - [`numtheory`]: torsion points of (Q/Z)^2, Euler phi, partition tables,
//!   and the quadratic Bernoulli values that control q-orders.
//! - [`modgroup`]: subgroups of GL2(Z/nZ), orbits of torsion points, cusps
//!   with widths, and divisors of orbit units on the associated curve.
//! - [`qseries`]: exact q-expansions with cyclotomic coefficients, Siegel
//!   unit expansions, formal logarithms, and certified numeric evaluation.
//! - [`bounds`]: the closed-form height bounds, evaluated with outward
//!   interval rounding so every reported value is a certified upper bound.
//! - [`cli`]: config parsing, report assembly, and the command entry points
//!   used by the `jbound` binary.
//!
//! Everything that feeds a certified inequality is computed either in exact
//! rational/cyclotomic arithmetic or in directed-rounding interval
//! arithmetic; floating point with default rounding never decides a check.

pub mod bounds;
pub mod cli;
pub mod error;
pub mod interval;
pub mod modgroup;
pub mod numtheory;
pub mod qseries;
pub mod verify;

pub use error::{Error, Result};
