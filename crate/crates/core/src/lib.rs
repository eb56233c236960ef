//! Tsirelson (quantum) and classical bounds for two-party, two-outcome
//! correlation Bell inequalities.
//!
//! A correlation inequality is a coefficient matrix `c[s][t]` weighting the
//! correlators `<X_s Y_t>`. Its quantum maximum is the value of the
//! unit-diagonal semidefinite program
//!
//! ```text
//! maximize ½·Tr(G·W)   subject to   G ⪰ 0,  G_ii = 1
//! ```
//!
//! where `W` is the bipartite objective matrix assembled from `c`. This crate
//! solves that program by low-rank coordinate ascent ([`sdp`]), certifies the
//! result with a dual eigenvalue check, computes the classical bound by
//! enumerating deterministic strategies ([`classical`]), provides closed forms
//! for the chained CHSH family ([`analytic`]), and turns unit vectors back into
//! ±1 observables on a maximally entangled state ([`realization`]).
//!
//! The crate is `no_std` and only needs `alloc`.
#![cfg_attr(not(test), no_std)]
#![deny(unsafe_code)]
#![warn(missing_docs)]

extern crate alloc;

pub mod analytic;
pub mod classical;
mod error;
pub mod inequality;
pub mod linalg;
pub mod realization;
pub mod sdp;

pub use error::{Error, Result};
pub use inequality::{build_objective, CorrelationInequality, ObjectiveMatrix};
pub use linalg::{Spectrum, SymMatrix};
pub use sdp::{solve, BoundReport, DualCertificate, PrimalSolution, SolveOptions};
