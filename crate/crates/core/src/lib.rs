//! Exact GF(p) toolkit for kernel bundles on Fano blow-ups of projective
//! space: line-bundle cohomology through fat points, construction of the
//! bundles from random matrices of linear forms, and verification of their
//! ACM / Ulrich behaviour by rank computations.

pub mod blowup;
pub mod cli;
pub mod error;
pub mod exactla;
pub mod kerbundle;
pub mod polyspace;
pub mod seeds;
pub mod serrecorr;

pub use error::{Error, Result};
