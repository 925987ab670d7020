//! Exact-arithmetic local automorphic computations.
//!
//! Everything here works over the rationals (or the integers localized at an
//! odd prime) with no floating point anywhere: Schur-function identities,
//! Satake data and local base change, local Euler factors, newvector torus
//! values, congruence modules over a discrete valuation ring, and the integral
//! models of algebraic `GL3` representations.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod congalg;
pub mod error;
pub mod lattice;
pub mod lfactors;
pub mod matrix;
pub mod rational;
pub mod repmodels;
pub mod roots;
pub mod satake;
pub mod series;
pub mod symfunc;
pub mod whittaker;

pub use error::{Error, Result};
pub use matrix::Matrix;
pub use rational::Rational;
pub use series::TruncatedSeries;
