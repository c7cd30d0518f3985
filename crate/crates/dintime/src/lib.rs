// `!(x > 0.0)` style guards are used throughout on purpose: unlike `x <= 0.0`
// they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

//! Evolution of discontinuous one-dimensional Schrödinger wavepackets.
//!
//! The library computes the diffraction-in-time pattern of wavepackets with
//! sharp (or slightly smoothed) edges three independent ways:
//!
//! * closed-form error-function solutions ([`exact`]), backed by a
//!   brute-force propagator quadrature that serves as the numerical oracle,
//! * truncated replication expansions — sums of affine-transformed copies of
//!   a reference profile — for free, SL(2) and squeeze evolution maps
//!   ([`replication`]),
//! * a split-step spectral solver for the linear Schrödinger and
//!   Gross–Pitaevskii equations ([`pde`]).
//!
//! The [`caustics`] module extracts the parabolic intensity ridges that
//! organize the patterns, and [`cli`] wires everything into a command-line
//! front end. Units are natural (ħ = m = 1) throughout.

pub mod caustics;
pub mod cli;
pub mod domain;
pub mod error;
pub mod exact;
pub mod io;
pub mod pde;
pub mod replication;
pub mod specfun;

pub use error::{Error, Result};
