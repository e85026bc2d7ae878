//! Mellin-space analysis of linear viscoelastic moduli.
//!
//! A complex modulus `G*(ω)` admits an exact finite Prony series (a finite
//! spring-dashpot network) exactly when the pole lattices of its Mellin
//! symbol align with the integer lattice of the constitutive kernel and the
//! residues along aligned sublattices satisfy decoupled first-order
//! recurrences. This crate makes that criterion executable:
//!
//! - [`numerics`]: complex Gamma, log-scale Mellin quadrature, contour
//!   residues — the oracles everything else is checked against.
//! - [`mellin`]: extended Fox-class Mellin symbols, the constitutive kernel
//!   transform, pole enumeration and residues.
//! - [`lattice`]: exact arithmetic-progression geometry — intersections with
//!   the integers, pairwise lattice intersections, and the Diophantine
//!   spacing-alignment test.
//! - [`models`]: the catalog of eight viscoelastic models with complex
//!   moduli, relaxation spectra, and trial-state factorizations.
//! - [`classify`]: the decision pipeline producing a [`classify::Verdict`].
//! - [`ladder`]: geometric discretization of continuous spectra into Prony
//!   ladders with convergence diagnostics.
//! - [`cli`]: the `pronyq` command-line entry points.
//!
//! Runnable walkthroughs live in `examples/`; start with
//! `cargo run --example classify_catalog`.

use num_complex::Complex64;

pub mod cli;
pub mod classify;
pub mod exact;
pub mod ladder;
pub mod lattice;
pub mod mellin;
pub mod models;
pub mod numerics;

/// Crate-wide error type. Variants mirror the failure modes of the numeric
/// substrate and the model catalog.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("gamma/kernel pole evaluation at s = {0}")]
    PoleEvaluation(Complex64),
    #[error("quadrature did not converge: {0}")]
    NonConvergent(String),
    #[error("Re s = {re} outside convergence strip ({lo}, {hi})")]
    StripViolation { re: f64, lo: f64, hi: f64 },
    #[error("coincident pole at s = {0}; use the Laurent expansion instead")]
    CoincidentPole(Complex64),
    #[error("incommensurate spacing input: {0}")]
    IncommensurateInput(String),
    #[error("negative spectral density H({0}) = {1}")]
    NegativeDensity(f64, f64),
    #[error("ladder has zero total weight")]
    DegenerateLadder,
    #[error("model `{0}` has no closed-form modulus")]
    UnsupportedModel(String),
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
