//! Exact spectra of finite rooted trees with regular branching, and of their
//! clique-fan generalizations.
//!
//! The eigenvalues of these graphs are roots of families of integer
//! polynomials defined by three-term recurrences. This crate builds the
//! graphs ([`treegen`]), the polynomial families with exact arithmetic
//! ([`polyfam`]), assembles full spectra with exact multiplicities and
//! certified eigenvectors ([`spectra`]), computes the limiting spectral
//! measures and their staircase endpoints ([`measure`]), and cross-validates
//! everything against an in-repo dense symmetric eigensolver ([`oracle`]).

pub mod error;
pub mod measure;
pub mod oracle;
pub mod polyfam;
pub mod report;
pub mod spectra;
pub mod treegen;

pub mod cli;

pub use error::{Error, Result};
