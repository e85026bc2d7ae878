//! The viscoelastic model catalog: complex moduli, relaxation spectra, and
//! trial-state Mellin metadata.
//!
//! All moduli follow the relaxation (completely monotone) orientation of the
//! spectral representation `G*(ω) = G_inf + ∫ K(ωτ) H(τ) dτ/τ` with
//! `K(x) = ix/(1+ix)` and `H >= 0`: storage rises with frequency and the
//! loss modulus is non-negative. Dielectric-style presentations of the same
//! models (susceptibilities that fall with frequency) are the complementary
//! kernel `1 - K` acting on the same spectrum, which in Mellin space is the
//! same symbol read on the adjacent strip; the spectra and the
//! classification are identical either way. Fractional spectra are obtained
//! by Stieltjes inversion of the closed-form modulus and certified by the
//! round-trip tests, never assumed.

use crate::exact::Exact;
use crate::mellin::{GammaFactor, MellinSymbol};
use crate::numerics::{exp_sinh, i_pow, mellin_quadrature, tanh_sinh, QuadratureSpec};
use crate::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModelKind {
    Maxwell,
    Sls,
    PowerLaw,
    ColeCole,
    ColeDavidson,
    HavriliakNegami,
    FractionalZener,
    LogNormal,
}

impl ModelKind {
    pub fn name(&self) -> &'static str {
        match self {
            ModelKind::Maxwell => "maxwell",
            ModelKind::Sls => "sls",
            ModelKind::PowerLaw => "power-law",
            ModelKind::ColeCole => "cole-cole",
            ModelKind::ColeDavidson => "cole-davidson",
            ModelKind::HavriliakNegami => "havriliak-negami",
            ModelKind::FractionalZener => "fractional-zener",
            ModelKind::LogNormal => "log-normal",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "maxwell" => Ok(ModelKind::Maxwell),
            "sls" => Ok(ModelKind::Sls),
            "power-law" | "powerlaw" => Ok(ModelKind::PowerLaw),
            "cole-cole" | "colecole" => Ok(ModelKind::ColeCole),
            "cole-davidson" | "coledavidson" => Ok(ModelKind::ColeDavidson),
            "havriliak-negami" | "hn" => Ok(ModelKind::HavriliakNegami),
            "fractional-zener" | "zener" => Ok(ModelKind::FractionalZener),
            "log-normal" | "lognormal" | "gaussian" => Ok(ModelKind::LogNormal),
            other => Err(Error::InvalidModel(format!("unknown model `{other}`"))),
        }
    }
}

/// A named model plus its parameters. Only the fields relevant to `name`
/// are required; `validate` enforces presence and ranges.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModelSpec {
    pub name: ModelKind,
    /// Equilibrium (long-time) modulus offset.
    #[serde(default)]
    pub g_inf: f64,
    /// Relaxation strength ΔG for the fractional models.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta_g: Option<f64>,
    /// Spring constant for Maxwell/SLS.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g: Option<f64>,
    /// Relaxation time.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tau: Option<f64>,
    /// Fractional order α in (0, 1]; exact rationals drive the lattice test.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Exact>,
    /// Exponent β in (0, 1] (power-law, Cole-Davidson, Havriliak-Negami).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<Exact>,
    /// Modulus ratio δ = G_e/G_glassy in (0, 1) for the fractional Zener.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    /// Equilibrium modulus for the fractional Zener.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g_e: Option<f64>,
    /// Log-normal location.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu: Option<f64>,
    /// Log-normal width.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma: Option<f64>,
    /// Power-law prefactor.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g0: Option<f64>,
    /// Power-law reference time.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tau0: Option<f64>,
}

impl ModelSpec {
    fn blank(name: ModelKind) -> Self {
        ModelSpec {
            name,
            g_inf: 0.0,
            delta_g: None,
            g: None,
            tau: None,
            alpha: None,
            beta: None,
            delta: None,
            g_e: None,
            mu: None,
            sigma: None,
            g0: None,
            tau0: None,
        }
    }

    pub fn maxwell(g_inf: f64, g: f64, tau: f64) -> Self {
        ModelSpec {
            g_inf,
            g: Some(g),
            tau: Some(tau),
            ..Self::blank(ModelKind::Maxwell)
        }
    }

    pub fn sls(g_inf: f64, g: f64, tau: f64) -> Self {
        ModelSpec {
            g_inf,
            g: Some(g),
            tau: Some(tau),
            ..Self::blank(ModelKind::Sls)
        }
    }

    pub fn power_law(g0: f64, tau0: f64, beta: Exact) -> Self {
        ModelSpec {
            g0: Some(g0),
            tau0: Some(tau0),
            beta: Some(beta),
            ..Self::blank(ModelKind::PowerLaw)
        }
    }

    pub fn cole_cole(g_inf: f64, delta_g: f64, tau: f64, alpha: Exact) -> Self {
        ModelSpec {
            g_inf,
            delta_g: Some(delta_g),
            tau: Some(tau),
            alpha: Some(alpha),
            ..Self::blank(ModelKind::ColeCole)
        }
    }

    pub fn cole_davidson(g_inf: f64, delta_g: f64, tau: f64, beta: Exact) -> Self {
        ModelSpec {
            g_inf,
            delta_g: Some(delta_g),
            tau: Some(tau),
            beta: Some(beta),
            ..Self::blank(ModelKind::ColeDavidson)
        }
    }

    pub fn havriliak_negami(g_inf: f64, delta_g: f64, tau: f64, alpha: Exact, beta: Exact) -> Self {
        ModelSpec {
            g_inf,
            delta_g: Some(delta_g),
            tau: Some(tau),
            alpha: Some(alpha),
            beta: Some(beta),
            ..Self::blank(ModelKind::HavriliakNegami)
        }
    }

    pub fn fractional_zener(g_e: f64, tau: f64, alpha: Exact, delta: f64) -> Self {
        ModelSpec {
            g_e: Some(g_e),
            tau: Some(tau),
            alpha: Some(alpha),
            delta: Some(delta),
            ..Self::blank(ModelKind::FractionalZener)
        }
    }

    pub fn log_normal(mu: f64, sigma: f64) -> Self {
        ModelSpec {
            mu: Some(mu),
            sigma: Some(sigma),
            ..Self::blank(ModelKind::LogNormal)
        }
    }

    fn need(&self, field: Option<f64>, name: &str) -> Result<f64> {
        field.ok_or_else(|| Error::InvalidModel(format!("{} requires `{name}`", self.name.name())))
    }

    fn need_exact(&self, field: Option<Exact>, name: &str) -> Result<Exact> {
        field.ok_or_else(|| Error::InvalidModel(format!("{} requires `{name}`", self.name.name())))
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |v: f64, name: &str| -> Result<f64> {
            if v > 0.0 && v.is_finite() {
                Ok(v)
            } else {
                Err(Error::InvalidModel(format!("`{name}` must be positive, got {v}")))
            }
        };
        if !(self.g_inf >= 0.0 && self.g_inf.is_finite()) {
            return Err(Error::InvalidModel("`g_inf` must be non-negative".into()));
        }
        let unit_interval = |e: Exact, name: &str| -> Result<()> {
            let v = e.to_f64();
            if v > 0.0 && v <= 1.0 {
                Ok(())
            } else {
                Err(Error::InvalidModel(format!("`{name}` must lie in (0, 1], got {v}")))
            }
        };
        match self.name {
            ModelKind::Maxwell | ModelKind::Sls => {
                positive(self.need(self.g, "g")?, "g")?;
                positive(self.need(self.tau, "tau")?, "tau")?;
            }
            ModelKind::PowerLaw => {
                positive(self.need(self.g0, "g0")?, "g0")?;
                positive(self.need(self.tau0, "tau0")?, "tau0")?;
                unit_interval(self.need_exact(self.beta, "beta")?, "beta")?;
            }
            ModelKind::ColeCole => {
                positive(self.need(self.delta_g, "delta_g")?, "delta_g")?;
                positive(self.need(self.tau, "tau")?, "tau")?;
                unit_interval(self.need_exact(self.alpha, "alpha")?, "alpha")?;
            }
            ModelKind::ColeDavidson => {
                positive(self.need(self.delta_g, "delta_g")?, "delta_g")?;
                positive(self.need(self.tau, "tau")?, "tau")?;
                unit_interval(self.need_exact(self.beta, "beta")?, "beta")?;
            }
            ModelKind::HavriliakNegami => {
                positive(self.need(self.delta_g, "delta_g")?, "delta_g")?;
                positive(self.need(self.tau, "tau")?, "tau")?;
                unit_interval(self.need_exact(self.alpha, "alpha")?, "alpha")?;
                unit_interval(self.need_exact(self.beta, "beta")?, "beta")?;
            }
            ModelKind::FractionalZener => {
                positive(self.need(self.g_e, "g_e")?, "g_e")?;
                positive(self.need(self.tau, "tau")?, "tau")?;
                unit_interval(self.need_exact(self.alpha, "alpha")?, "alpha")?;
                let d = self.need(self.delta, "delta")?;
                if !(d > 0.0 && d < 1.0) {
                    return Err(Error::InvalidModel(format!(
                        "`delta` must lie in (0, 1), got {d}"
                    )));
                }
            }
            ModelKind::LogNormal => {
                let mu = self.need(self.mu, "mu")?;
                if !mu.is_finite() {
                    return Err(Error::InvalidModel("`mu` must be finite".into()));
                }
                positive(self.need(self.sigma, "sigma")?, "sigma")?;
            }
        }
        Ok(())
    }

    /// The modulus value approached as ω -> 0.
    pub fn equilibrium_modulus(&self) -> f64 {
        match self.name {
            ModelKind::FractionalZener => self.g_e.unwrap_or(0.0),
            ModelKind::PowerLaw => 0.0,
            _ => self.g_inf,
        }
    }

    /// Total relaxation strength ∫ H dτ/τ = G_glassy - G_equilibrium.
    /// None for the power law, whose spectrum carries no finite sum rule.
    pub fn relaxation_strength(&self) -> Option<f64> {
        match self.name {
            ModelKind::Maxwell | ModelKind::Sls => self.g,
            ModelKind::ColeCole | ModelKind::ColeDavidson | ModelKind::HavriliakNegami => {
                self.delta_g
            }
            ModelKind::FractionalZener => {
                let (ge, d) = (self.g_e?, self.delta?);
                Some(ge * (1.0 - d) / d)
            }
            ModelKind::LogNormal => Some(1.0),
            ModelKind::PowerLaw => None,
        }
    }

    /// Complex modulus at the Laplace argument `p` (so `p = iω` on the
    /// physical line). Powers use the principal branch.
    fn modulus_p(&self, p: Complex64) -> Result<Complex64> {
        match self.name {
            ModelKind::Maxwell | ModelKind::Sls => {
                let x = p * self.tau.unwrap();
                Ok(self.g_inf + self.g.unwrap() * x / (1.0 + x))
            }
            ModelKind::PowerLaw => {
                let beta = self.beta.unwrap().to_f64();
                Ok(self.g0.unwrap() * (p * self.tau0.unwrap()).powc(Complex64::new(beta, 0.0)))
            }
            ModelKind::ColeCole => {
                let x = p * self.tau.unwrap();
                let alpha = self.alpha.unwrap().to_f64();
                Ok(self.g_inf + self.delta_g.unwrap() / (1.0 + x.powc(Complex64::new(-alpha, 0.0))))
            }
            ModelKind::ColeDavidson => {
                let x = p * self.tau.unwrap();
                let beta = self.beta.unwrap().to_f64();
                Ok(self.g_inf
                    + self.delta_g.unwrap() * (1.0 - (1.0 + x).powc(Complex64::new(-beta, 0.0))))
            }
            ModelKind::HavriliakNegami => {
                let x = p * self.tau.unwrap();
                let alpha = self.alpha.unwrap().to_f64();
                let beta = self.beta.unwrap().to_f64();
                let xa = x.powc(Complex64::new(alpha, 0.0));
                Ok(self.g_inf
                    + self.delta_g.unwrap() * (1.0 - (1.0 + xa).powc(Complex64::new(-beta, 0.0))))
            }
            ModelKind::FractionalZener => {
                let x = p * self.tau.unwrap();
                let alpha = self.alpha.unwrap().to_f64();
                let xa = x.powc(Complex64::new(alpha, 0.0));
                Ok(self.g_e.unwrap() * (1.0 + xa) / (1.0 + self.delta.unwrap() * xa))
            }
            ModelKind::LogNormal => Err(Error::UnsupportedModel(self.name.name().into())),
        }
    }

    /// Closed-form complex modulus at angular frequency ω. The principal
    /// branch is pinned to `(iωτ)^α = e^{α(ln ωτ + iπ/2)}`.
    pub fn modulus(&self, omega: f64) -> Result<Complex64> {
        if !(omega > 0.0) {
            return Err(Error::InvalidInput(format!(
                "omega must be positive, got {omega}"
            )));
        }
        self.validate()?;
        match self.name {
            ModelKind::ColeCole => {
                let wt = omega * self.tau.unwrap();
                let alpha = self.alpha.unwrap().to_f64();
                Ok(self.g_inf + self.delta_g.unwrap() / (1.0 + i_pow(wt, -alpha)))
            }
            ModelKind::HavriliakNegami => {
                let wt = omega * self.tau.unwrap();
                let alpha = self.alpha.unwrap().to_f64();
                let beta = self.beta.unwrap().to_f64();
                let xa = i_pow(wt, alpha);
                Ok(self.g_inf
                    + self.delta_g.unwrap() * (1.0 - (1.0 + xa).powc(Complex64::new(-beta, 0.0))))
            }
            ModelKind::PowerLaw => {
                let beta = self.beta.unwrap().to_f64();
                Ok(self.g0.unwrap() * i_pow(omega * self.tau0.unwrap(), beta))
            }
            ModelKind::FractionalZener => {
                let wt = omega * self.tau.unwrap();
                let alpha = self.alpha.unwrap().to_f64();
                let xa = i_pow(wt, alpha);
                Ok(self.g_e.unwrap() * (1.0 + xa) / (1.0 + self.delta.unwrap() * xa))
            }
            _ => self.modulus_p(Complex64::new(0.0, omega)),
        }
    }

    /// The viscoelastic part ΔG*(ω) = G*(ω) - G_equilibrium.
    pub fn viscoelastic_part(&self, omega: f64) -> Result<Complex64> {
        Ok(self.modulus(omega)? - self.equilibrium_modulus())
    }

    /// Relaxation spectrum provider. Rational degenerations (α = 1, β = 1)
    /// collapse to the discrete atom; fractional models get the Stieltjes
    /// density `H(τ) = Im[ΔG*(p = -1/τ + i0)]/π` on the principal branch;
    /// the log-normal density is closed-form.
    pub fn spectrum(&self) -> Result<SpectrumProvider> {
        self.validate()?;
        let is_one = |e: Option<Exact>| e.map(|x| x.to_f64() == 1.0).unwrap_or(false);
        match self.name {
            ModelKind::Maxwell | ModelKind::Sls => Ok(SpectrumProvider::Atoms(vec![(
                self.g.unwrap(),
                self.tau.unwrap(),
            )])),
            ModelKind::ColeCole if is_one(self.alpha) => Ok(SpectrumProvider::Atoms(vec![(
                self.delta_g.unwrap(),
                self.tau.unwrap(),
            )])),
            ModelKind::ColeDavidson if is_one(self.beta) => Ok(SpectrumProvider::Atoms(vec![(
                self.delta_g.unwrap(),
                self.tau.unwrap(),
            )])),
            ModelKind::HavriliakNegami if is_one(self.alpha) && is_one(self.beta) => Ok(
                SpectrumProvider::Atoms(vec![(self.delta_g.unwrap(), self.tau.unwrap())]),
            ),
            ModelKind::FractionalZener if is_one(self.alpha) => {
                // G_e (1+x)/(1+δx) = G_e + G_e(1-δ)/δ · K(ωτδ).
                let (ge, d, tau) = (self.g_e.unwrap(), self.delta.unwrap(), self.tau.unwrap());
                Ok(SpectrumProvider::Atoms(vec![(ge * (1.0 - d) / d, tau * d)]))
            }
            ModelKind::LogNormal => {
                let (mu, sigma) = (self.mu.unwrap(), self.sigma.unwrap());
                let norm = 1.0 / (2.0 * PI * sigma * sigma).sqrt();
                Ok(SpectrumProvider::Density(SpectralDensity {
                    eval: Arc::new(move |tau: f64| {
                        let u = tau.ln() - mu;
                        norm * (-u * u / (2.0 * sigma * sigma)).exp()
                    }),
                    support: (0.0, f64::INFINITY),
                    scale: mu.exp(),
                }))
            }
            ModelKind::PowerLaw => {
                // Distributional: no finite sum rule. Truncated density for
                // ladder demonstrations only.
                let (g0, tau0) = (self.g0.unwrap(), self.tau0.unwrap());
                let beta = self.beta.unwrap().to_f64();
                let c = g0 * tau0.powf(beta) * (PI * beta).sin() / PI;
                Ok(SpectrumProvider::Density(SpectralDensity {
                    eval: Arc::new(move |tau: f64| c * tau.powf(-beta)),
                    support: (tau0 * 1e-6, tau0 * 1e6),
                    scale: tau0,
                }))
            }
            ModelKind::ColeCole | ModelKind::HavriliakNegami | ModelKind::FractionalZener => {
                let spec = self.clone();
                let scale = match self.name {
                    ModelKind::FractionalZener => {
                        let alpha = self.alpha.unwrap().to_f64();
                        self.tau.unwrap() * self.delta.unwrap().powf(1.0 / alpha)
                    }
                    _ => self.tau.unwrap(),
                };
                Ok(SpectrumProvider::Density(SpectralDensity {
                    eval: Arc::new(move |tau: f64| stieltjes(&spec, tau)),
                    support: (0.0, f64::INFINITY),
                    scale,
                }))
            }
            ModelKind::ColeDavidson => {
                let spec = self.clone();
                let tau = self.tau.unwrap();
                Ok(SpectrumProvider::Density(SpectralDensity {
                    eval: Arc::new(move |t: f64| if t < tau { stieltjes(&spec, t) } else { 0.0 }),
                    support: (0.0, tau),
                    scale: tau,
                }))
            }
        }
    }

    /// Numerically determined Mellin convergence strip of the viscoelastic
    /// part, from the power-law slopes of |ΔG*| at the frequency extremes.
    pub fn convergence_strip(&self) -> Result<(f64, f64)> {
        self.validate()?;
        let slope = |w0: f64, w1: f64| -> Result<f64> {
            let f0 = self.viscoelastic_part(w0)?.norm();
            let f1 = self.viscoelastic_part(w1)?.norm();
            Ok((f1.ln() - f0.ln()) / (w1.ln() - w0.ln()))
        };
        let lo = slope(1e-9, 1e-8)?;
        let hi = slope(1e8, 1e9)?;
        let strip = (-lo, -hi);
        if strip.0 >= strip.1 - 1e-9 {
            return Err(Error::NonConvergent(format!(
                "{}: no classical Mellin strip (slopes {lo:.3}, {hi:.3})",
                self.name.name()
            )));
        }
        Ok(strip)
    }

    /// Mellin transform of the viscoelastic part by direct quadrature,
    /// `∫ ω^{s-1} (G*(ω) - G_eq) dω`, inside the numerically determined
    /// strip. The oracle closed-form trial symbols are checked against.
    pub fn mellin_of_modulus(&self, s: Complex64, quad: &QuadratureSpec) -> Result<Complex64> {
        let strip = self.convergence_strip()?;
        let spec = QuadratureSpec {
            strip: Some(strip),
            ..*quad
        };
        let f = |w: f64| {
            self.viscoelastic_part(w)
                .unwrap_or(Complex64::new(f64::NAN, 0.0))
        };
        mellin_quadrature(f, s, &spec)
    }

    /// Trial-state metadata: dominant Gamma factor, lattice spacing, and the
    /// modulation symbol carrying everything beyond the constitutive kernel.
    pub fn trial_state(&self) -> Result<TrialStateMeta> {
        self.validate()?;
        let one = Exact::one();
        match self.name {
            ModelKind::Maxwell | ModelKind::Sls => Ok(TrialStateMeta {
                kind: TrialKind::GammaFactored,
                gamma_scale: Some(one),
                gamma_shift: Some(Exact::zero()),
                delta_g_spacing: Some(one),
                modulation: MellinSymbol::from_atoms(&[(self.g.unwrap(), self.tau.unwrap())]),
            }),
            ModelKind::ColeCole => {
                let alpha = self.alpha.unwrap();
                // Modulation Γ(1-s)/Γ(1-αs) about the dominant Γ(s) lattice.
                let modulation = MellinSymbol::one()
                    .with_numerator(GammaFactor::new(Exact::integer(-1), one))
                    .with_denominator(GammaFactor::new(alpha.neg(), one))
                    .with_prefactor(Complex64::new(self.delta_g.unwrap(), 0.0))
                    .with_exp_poly(vec![
                        Complex64::new(0.0, 0.0),
                        Complex64::new(self.tau.unwrap().ln(), 0.0),
                    ]);
                Ok(TrialStateMeta {
                    kind: TrialKind::GammaFactored,
                    gamma_scale: Some(one),
                    gamma_shift: Some(Exact::zero()),
                    delta_g_spacing: Some(one),
                    modulation,
                })
            }
            ModelKind::ColeDavidson => {
                let beta = self.beta.unwrap();
                let gb = crate::numerics::gamma_real(beta.to_f64());
                let modulation = MellinSymbol::one()
                    .with_numerator(GammaFactor::new(Exact::integer(-1), beta))
                    .with_prefactor(Complex64::new(self.delta_g.unwrap() / gb, 0.0))
                    .with_exp_poly(vec![
                        Complex64::new(0.0, 0.0),
                        Complex64::new(-self.tau.unwrap().ln(), -PI / 2.0),
                    ]);
                Ok(TrialStateMeta {
                    kind: TrialKind::GammaFactored,
                    gamma_scale: Some(one),
                    gamma_shift: Some(Exact::zero()),
                    delta_g_spacing: Some(one),
                    modulation,
                })
            }
            ModelKind::HavriliakNegami => {
                let alpha = self.alpha.unwrap();
                let beta = self.beta.unwrap();
                let af = alpha.to_f64();
                let gb = crate::numerics::gamma_real(beta.to_f64());
                let modulation = MellinSymbol::one()
                    .with_numerator(GammaFactor::new(alpha.recip().neg(), beta))
                    .with_prefactor(Complex64::new(self.delta_g.unwrap() / (af * gb), 0.0))
                    .with_exp_poly(vec![
                        Complex64::new(0.0, 0.0),
                        Complex64::new(-self.tau.unwrap().ln(), -PI / 2.0),
                    ]);
                Ok(TrialStateMeta {
                    kind: TrialKind::GammaFactored,
                    gamma_scale: Some(alpha.recip()),
                    gamma_shift: Some(Exact::zero()),
                    delta_g_spacing: Some(alpha),
                    modulation,
                })
            }
            ModelKind::FractionalZener => {
                let alpha = self.alpha.unwrap();
                let af = alpha.to_f64();
                let (ge, d) = (self.g_e.unwrap(), self.delta.unwrap());
                let tau_z = self.tau.unwrap() * d.powf(1.0 / af);
                let modulation = MellinSymbol::one()
                    .with_numerator(GammaFactor::new(alpha.recip().neg(), one))
                    .with_prefactor(Complex64::new(ge * (1.0 - d) / d / af, 0.0))
                    .with_exp_poly(vec![
                        Complex64::new(0.0, 0.0),
                        Complex64::new(-tau_z.ln(), -PI / 2.0),
                    ]);
                Ok(TrialStateMeta {
                    kind: TrialKind::GammaFactored,
                    gamma_scale: Some(alpha.recip()),
                    gamma_shift: Some(Exact::zero()),
                    delta_g_spacing: Some(alpha),
                    modulation,
                })
            }
            ModelKind::LogNormal => {
                let (mu, sigma) = (self.mu.unwrap(), self.sigma.unwrap());
                let modulation = MellinSymbol::one().with_exp_poly(vec![
                    Complex64::new(0.0, 0.0),
                    Complex64::new(mu, 0.0),
                    Complex64::new(sigma * sigma / 2.0, 0.0),
                ]);
                Ok(TrialStateMeta {
                    kind: TrialKind::Entire,
                    gamma_scale: None,
                    gamma_shift: None,
                    delta_g_spacing: None,
                    modulation,
                })
            }
            ModelKind::PowerLaw => Ok(TrialStateMeta {
                // The Mellin image is a point mass at s = -β (analytic
                // continuation of the range-limited integral), not a
                // meromorphic symbol.
                kind: TrialKind::Distributional,
                gamma_scale: None,
                gamma_shift: None,
                delta_g_spacing: None,
                modulation: MellinSymbol::one()
                    .with_prefactor(Complex64::new(self.g0.unwrap(), 0.0)),
            }),
        }
    }
}

/// Stieltjes inversion at the continued argument iω = -1/τ + i0.
fn stieltjes(spec: &ModelSpec, tau: f64) -> f64 {
    if tau <= 0.0 {
        return 0.0;
    }
    let p = Complex64::new(-1.0 / tau, 0.0);
    match spec.modulus_p(p) {
        Ok(v) if v.im.is_finite() => v.im / PI,
        _ => 0.0,
    }
}

/// A relaxation spectrum: discrete atoms or a continuous density.
#[derive(Clone)]
pub enum SpectrumProvider {
    /// (weight, timescale) pairs.
    Atoms(Vec<(f64, f64)>),
    Density(SpectralDensity),
}

#[derive(Clone)]
pub struct SpectralDensity {
    pub eval: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    /// Open support interval; the density is zero outside.
    pub support: (f64, f64),
    /// Characteristic timescale used to center infinite-support quadrature.
    pub scale: f64,
}

impl SpectrumProvider {
    pub fn density_at(&self, tau: f64) -> Option<f64> {
        match self {
            SpectrumProvider::Atoms(_) => None,
            SpectrumProvider::Density(d) => Some((d.eval)(tau)),
        }
    }
}

/// The spectral representation `G_inf + ∫ K(ωτ) H(τ) dτ/τ` evaluated
/// forward: exactly for atoms, by double-exponential quadrature for
/// densities (tanh-sinh on finite support, exp-sinh on (0, ∞)).
pub fn forward_modulus(
    provider: &SpectrumProvider,
    g_inf: f64,
    omega: f64,
    quad: &QuadratureSpec,
) -> Result<Complex64> {
    if !(omega > 0.0) {
        return Err(Error::InvalidInput(format!(
            "omega must be positive, got {omega}"
        )));
    }
    match provider {
        SpectrumProvider::Atoms(atoms) => {
            let mut acc = Complex64::new(g_inf, 0.0);
            for &(g, tau) in atoms {
                let x = Complex64::new(0.0, omega * tau);
                acc += g * x / (1.0 + x);
            }
            Ok(acc)
        }
        SpectrumProvider::Density(d) => {
            let integrand = |tau: f64| -> Complex64 {
                let h = (d.eval)(tau);
                if h == 0.0 {
                    return Complex64::new(0.0, 0.0);
                }
                let x = Complex64::new(0.0, omega * tau);
                x / (1.0 + x) * (h / tau)
            };
            let n = quad.abscissa_count.max(400);
            let run = |nodes: usize| -> Complex64 {
                if d.support.1.is_finite() {
                    tanh_sinh(integrand, d.support.0, d.support.1, nodes)
                } else {
                    exp_sinh(integrand, d.scale, nodes)
                }
            };
            let full = run(n);
            let half = run(n / 2 + 1);
            let tol = quad.tolerance.max(1e-7);
            if (full - half).norm() > tol * full.norm().max(1e-300) {
                return Err(Error::NonConvergent(format!(
                    "spectral integral unstable at omega = {omega}: {full} vs {half}"
                )));
            }
            Ok(full + g_inf)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TrialKind {
    /// Factorizes as modulation x Γ(scale·s + shift).
    GammaFactored,
    /// Entire Mellin symbol (no Gamma factor).
    Entire,
    /// Point-mass Mellin image; outside the meromorphic class.
    Distributional,
}

/// Trial-state factorization metadata for the classifier.
#[derive(Clone, Debug)]
pub struct TrialStateMeta {
    pub kind: TrialKind,
    /// Everything multiplying the dominant Gamma factor.
    pub modulation: MellinSymbol,
    pub gamma_scale: Option<Exact>,
    pub gamma_shift: Option<Exact>,
    /// Dominant pole-lattice spacing, 1/gamma_scale.
    pub delta_g_spacing: Option<Exact>,
}
