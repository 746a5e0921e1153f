//! Exact-arithmetic engine for formal connections over truncated
//! Laurent/Puiseux series with a deformation parameter.
//!
//! The crate computes, over the computable scalar field Q(zeta_m):
//!
//! - truncated series arithmetic with the derivation `theta = s^(-1) x_s d/dx_s`
//!   and certified precision windows ([`series`]);
//! - connections as matrices, gauge transformations, Euler connections,
//!   residues/exponents, mod-t reduction with its Artinian shift action, and
//!   order-by-order kernel solving ([`conn`]);
//! - Turrittin-Levelt-Jordan block forms: assembly, representative
//!   normalization, semisimple/nilpotent extraction, irregular values,
//!   splitting under the no-turning-point hypothesis, and Chinese-remainder
//!   splitting of constant matrices ([`tlj`]);
//! - the logarithmic decomposition of a connection into a regular singular
//!   part plus a diagonalizable irregular part, its verification, and
//!   Deligne-Manin lattice extraction ([`logdecomp`]);
//! - truncation families, levelwise decompositions, the explicit
//!   block-Toeplitz limit gauge chains, and divergence detection
//!   ([`deform`]).

pub mod cyc;
pub mod error;
pub mod linalg;
pub mod series;
pub mod util;

pub mod conn;
pub mod deform;
pub mod logdecomp;
pub mod tlj;

pub use cyc::{CycNum, Rat};
pub use error::{Error, Result};
pub use linalg::{FMat, SMat};
pub use series::{Series, SeriesParams, XPrec};
