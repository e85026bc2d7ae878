//! Geometric Prony ladders: discretization of continuous relaxation spectra
//! on a geometric timescale grid `τ_k = τ_0 q^k` with weights
//! `g_k = H_c(τ_k) ln q`, plus evaluation, sum-rule normalization, and
//! refinement diagnostics.

use crate::models::{forward_modulus, ModelSpec, SpectrumProvider};
use crate::numerics::QuadratureSpec;
use crate::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// One relaxation mode.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Mode {
    pub g: f64,
    pub tau: f64,
}

/// Geometric-grid provenance of a synthesized ladder.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub tau0: f64,
    pub q: f64,
    pub n_half: u32,
}

/// A finite set of relaxation modes plus the equilibrium modulus; modes are
/// kept strictly increasing in timescale.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PronyLadder {
    pub g_inf: f64,
    pub modes: Vec<Mode>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Provenance>,
}

impl PronyLadder {
    /// Wrap an explicit atom list (weights merge at equal timescales).
    pub fn from_atoms(atoms: &[(f64, f64)], g_inf: f64) -> Self {
        let mut modes: Vec<Mode> = Vec::new();
        let mut sorted = atoms.to_vec();
        sorted.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap());
        for (g, tau) in sorted {
            match modes.last_mut() {
                Some(m) if m.tau == tau => m.g += g,
                _ => modes.push(Mode { g, tau }),
            }
        }
        PronyLadder {
            g_inf,
            modes,
            provenance: None,
        }
    }

    /// Total ladder weight Σ g_k = ∫ H_N dτ/τ.
    pub fn weight_sum(&self) -> f64 {
        self.modes.iter().map(|m| m.g).sum()
    }

    /// Weights at the grid boundary; their size estimates the truncation of
    /// the doubly infinite sum.
    pub fn boundary_weights(&self) -> (f64, f64) {
        match (self.modes.first(), self.modes.last()) {
            (Some(a), Some(b)) => (a.g, b.g),
            _ => (0.0, 0.0),
        }
    }

    /// Complex modulus of the ladder: `G_inf + Σ g_k iωτ_k/(1+iωτ_k)`.
    pub fn eval_modulus(&self, omega: f64) -> Complex64 {
        let mut acc = Complex64::new(self.g_inf, 0.0);
        for m in &self.modes {
            let x = Complex64::new(0.0, omega * m.tau);
            acc += m.g * x / (1.0 + x);
        }
        acc
    }

    /// Relaxation modulus in time: `G_inf + Σ g_k e^{-t/τ_k}`.
    pub fn eval_time(&self, t: f64) -> f64 {
        assert!(t >= 0.0, "time must be non-negative");
        self.g_inf
            + self
                .modes
                .iter()
                .map(|m| m.g * (-t / m.tau).exp())
                .sum::<f64>()
    }

    /// Rescale all weights so Σ g_k equals `target` (the sum rule
    /// ∫ H dτ/τ = G_glassy - G_equilibrium fixes the overall scale).
    pub fn normalize_sum_rule(&self, target: f64) -> Result<PronyLadder> {
        if !(target > 0.0) {
            return Err(Error::InvalidInput("sum-rule target must be positive".into()));
        }
        let total = self.weight_sum();
        if total <= 0.0 {
            return Err(Error::DegenerateLadder);
        }
        let f = target / total;
        Ok(PronyLadder {
            g_inf: self.g_inf,
            modes: self
                .modes
                .iter()
                .map(|m| Mode { g: m.g * f, tau: m.tau })
                .collect(),
            provenance: self.provenance,
        })
    }
}

/// Discretize a continuous density on the geometric grid
/// `τ_k = τ_0 q^k, k = -n_half..=n_half`, with weights `H_c(τ_k) ln q`.
pub fn synthesize(
    provider: &SpectrumProvider,
    g_inf: f64,
    tau0: f64,
    q: f64,
    n_half: u32,
) -> Result<PronyLadder> {
    if !(q > 1.0) {
        return Err(Error::InvalidInput(format!("q must exceed 1, got {q}")));
    }
    if !(tau0 > 0.0) {
        return Err(Error::InvalidInput(format!("tau0 must be positive, got {tau0}")));
    }
    let density = match provider {
        SpectrumProvider::Atoms(atoms) => return Ok(PronyLadder::from_atoms(atoms, g_inf)),
        SpectrumProvider::Density(d) => d,
    };
    let lnq = q.ln();
    let mut modes = Vec::with_capacity(2 * n_half as usize + 1);
    for k in -(n_half as i64)..=n_half as i64 {
        let tau = tau0 * q.powi(k as i32);
        let h = (density.eval)(tau);
        if !h.is_finite() || h < 0.0 {
            return Err(Error::NegativeDensity(tau, h));
        }
        modes.push(Mode { g: h * lnq, tau });
    }
    Ok(PronyLadder {
        g_inf,
        modes,
        provenance: Some(Provenance { tau0, q, n_half }),
    })
}

/// Pick a grid covering the density's effective support (where it exceeds
/// 1e-12 of its maximum), padded one decade each side: returns (tau0, n_half)
/// for the given q.
pub fn default_grid(provider: &SpectrumProvider, q: f64) -> Option<(f64, u32)> {
    let density = match provider {
        SpectrumProvider::Density(d) => d,
        SpectrumProvider::Atoms(_) => return None,
    };
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    let mut max_h = 0.0f64;
    let scan: Vec<(f64, f64)> = (0..2000)
        .map(|i| {
            let tau = density.scale * 10f64.powf(-12.0 + 24.0 * i as f64 / 1999.0);
            (tau, (density.eval)(tau))
        })
        .collect();
    for &(_, h) in &scan {
        max_h = max_h.max(h);
    }
    if max_h <= 0.0 {
        return None;
    }
    for &(tau, h) in &scan {
        if h >= 1e-12 * max_h {
            lo = lo.min(tau);
            hi = hi.max(tau);
        }
    }
    let (lo, hi) = (lo / 10.0, hi * 10.0);
    let tau0 = (lo * hi).sqrt();
    let n_half = ((hi / lo).ln() / (2.0 * q.ln())).ceil() as u32;
    Some((tau0, n_half))
}

/// Refinement history of a ladder against an `oracle` modulus.
#[derive(Clone, Debug, Serialize)]
pub struct ConvergenceReport {
    pub omega_grid: Vec<f64>,
    /// Errors of the last (finest) schedule entry.
    pub per_point_errors: Vec<f64>,
    pub sup_rel_error: f64,
    /// (q, n_half, sup relative error) per schedule entry.
    pub refinement_history: Vec<(f64, u32, f64)>,
}

impl ConvergenceReport {
    /// Weak convergence is monotone only asymptotically; accept history
    /// entries that backslide by no more than `band` (e.g. 0.10).
    pub fn is_monotone_within(&self, band: f64) -> bool {
        self.refinement_history
            .windows(2)
            .all(|w| w[1].2 <= w[0].2 * (1.0 + band))
    }
}

/// Synthesize a ladder per schedule entry and record the sup relative
/// modulus error over `omega_grid` against the model's own oracle: the
/// closed form when it exists, spectral quadrature otherwise.
pub fn convergence_study(
    spec: &ModelSpec,
    omega_grid: &[f64],
    schedule: &[(f64, u32)],
    tau0: Option<f64>,
) -> Result<ConvergenceReport> {
    if schedule.is_empty() || omega_grid.is_empty() {
        return Err(Error::InvalidInput("empty schedule or frequency grid".into()));
    }
    let provider = spec.spectrum()?;
    let quad = QuadratureSpec::oracle();
    let oracle: Vec<Complex64> = omega_grid
        .iter()
        .map(|&w| match spec.modulus(w) {
            Ok(v) => Ok(v),
            Err(Error::UnsupportedModel(_)) => {
                forward_modulus(&provider, spec.g_inf, w, &quad)
            }
            Err(e) => Err(e),
        })
        .collect::<Result<_>>()?;

    let mut history = Vec::new();
    let mut last_errors = Vec::new();
    for &(q, n_half) in schedule {
        let t0 = match tau0 {
            Some(t) => t,
            None => default_grid(&provider, q).map(|(t, _)| t).unwrap_or(1.0),
        };
        let ladder = synthesize(&provider, spec.equilibrium_modulus(), t0, q, n_half)?;
        let errors: Vec<f64> = omega_grid
            .iter()
            .zip(&oracle)
            .map(|(&w, want)| {
                let got = ladder.eval_modulus(w);
                (got - want).norm() / want.norm().max(1e-300)
            })
            .collect();
        let sup = errors.iter().cloned().fold(0.0, f64::max);
        history.push((q, n_half, sup));
        last_errors = errors;
    }
    let sup_rel_error = history.last().unwrap().2;
    Ok(ConvergenceReport {
        omega_grid: omega_grid.to_vec(),
        per_point_errors: last_errors,
        sup_rel_error,
        refinement_history: history,
    })
}

/// Log-spaced grid helper.
pub fn log_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    assert!(lo > 0.0 && hi >= lo && points >= 1);
    if points == 1 {
        return vec![lo];
    }
    (0..points)
        .map(|i| lo * (hi / lo).powf(i as f64 / (points - 1) as f64))
        .collect()
}
