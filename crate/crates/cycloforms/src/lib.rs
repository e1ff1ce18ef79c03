//! Cyclotomic binary forms `Phi_n(X, Y)` and the integers they represent.
//!
//! The crate is organised around the quantities attached to the forms
//! `Phi_n(X,Y) = Y^phi(n) * phi_n(X/Y)`:
//!
//! - [`numtheory`]: Euler's phi, Moebius, radicals, totients and inverse totients.
//! - [`cycloform`]: exact coefficients of `phi_n`, exact and capped evaluation,
//!   the classical identities and the Bateman length bound.
//! - [`congruence`]: residue sets attained modulo `p | n`, modulo 9 and modulo 4,
//!   and the confinement-class construction (modulus `D`, residues `a0, b0`).
//! - [`symmetry`]: automorphism groups (`D2`/`D4`), rational weights `w_n` and
//!   the isomorphism classification of cyclotomic forms.
//! - [`counting`]: exact represented-integer sets `B_n(N)`, union counts `A_d(N)`,
//!   common-value counters and multiplicity histograms.
//! - [`geometry`]: fundamental-domain areas `A_{Phi_n}` with certified error,
//!   the constants `C_d`, `eta_d`, `beta*_d` and square-containment checks.
//! - [`verify`]: the named verification suite used by `cycloforms verify-all`.

pub mod congruence;
pub mod counting;
pub mod cycloform;
mod error;
pub mod geometry;
pub mod numtheory;
pub mod symmetry;
pub mod verify;

pub use error::{Error, Result};
