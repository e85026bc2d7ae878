//! Special-function and quadrature substrate.
//!
//! Everything downstream is checked against these routines, so they are kept
//! deliberately boring: a Lanczos complex Gamma with reflection, trapezoidal
//! Mellin quadrature in the log variable (spectrally accurate for the smooth
//! decaying integrands of this domain), double-exponential rules for spectral
//! integrals, and a trapezoidal contour rule for residues.

use crate::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Proximity threshold below which an argument counts as an exact pole hit.
/// Exact lattice arithmetic happens upstream; anything closer than this to a
/// non-positive integer is float noise, not a legitimate evaluation point.
pub const POLE_EPS: f64 = 1e-14;

// Lanczos approximation, g = 607/128, 15 terms. Relative error is at the
// 1e-14 level over the working range |s| <= 50.
const LANCZOS_G: f64 = 4.7421875;
const LANCZOS: [f64; 15] = [
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
];

fn lanczos_sum(z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(LANCZOS[0], 0.0);
    for (k, c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (z + k as f64 - 1.0);
    }
    acc
}

pub fn near_nonpositive_integer(s: Complex64, eps: f64) -> bool {
    if s.im.abs() > eps {
        return false;
    }
    let r = s.re.round();
    r <= 0.0 && (s.re - r).abs() <= eps
}

pub fn near_integer(s: Complex64, eps: f64) -> bool {
    s.im.abs() <= eps && (s.re - s.re.round()).abs() <= eps
}

fn gamma_unchecked(s: Complex64) -> Complex64 {
    if s.re < 0.5 {
        // Reflection: gamma(s) = pi / (sin(pi s) gamma(1 - s)).
        let sin = (s * PI).sin();
        Complex64::new(PI, 0.0) / (sin * gamma_unchecked(Complex64::new(1.0, 0.0) - s))
    } else {
        let z = s - 1.0;
        let t = z + LANCZOS_G + 0.5;
        (2.0 * PI).sqrt() * t.powc(z + 0.5) * (-t).exp() * lanczos_sum(s)
    }
}

/// Complex Gamma function.
pub fn complex_gamma(s: Complex64) -> Result<Complex64> {
    if near_nonpositive_integer(s, POLE_EPS) {
        return Err(Error::PoleEvaluation(s));
    }
    Ok(gamma_unchecked(s))
}

/// Real Gamma for positive arguments (used for factorial-scale constants).
pub fn gamma_real(x: f64) -> f64 {
    gamma_unchecked(Complex64::new(x, 0.0)).re
}

/// ln n! without overflow for large n.
pub fn ln_factorial(n: u32) -> f64 {
    if n < 2 {
        return 0.0;
    }
    let z = Complex64::new(n as f64 + 1.0, 0.0);
    let t = z - 1.0 + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (z.re - 0.5) * t.re.ln() - t.re + lanczos_sum(z).re.ln()
}

/// `(i x)^alpha` on the principal branch, pinned bit-exactly to
/// `exp(alpha (ln x + i pi/2))` for `x > 0`.
pub fn i_pow(x: f64, alpha: f64) -> Complex64 {
    (Complex64::new(x.ln(), PI / 2.0) * alpha).exp()
}

/// Parameters of a truncated log-scale Mellin quadrature.
#[derive(Clone, Copy, Debug)]
pub struct QuadratureSpec {
    pub abscissa_count: usize,
    /// Bounds of the integration variable in natural-log scale.
    pub log_range: (f64, f64),
    /// Target relative tolerance; the tail estimate is checked against it.
    pub tolerance: f64,
    /// Caller-declared convergence strip for `Re s`, when known.
    pub strip: Option<(f64, f64)>,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            abscissa_count: 2000,
            log_range: (-40.0, 40.0),
            tolerance: 1e-8,
            strip: None,
        }
    }
}

impl QuadratureSpec {
    /// A wide, dense spec for oracle-grade comparisons against closed forms.
    pub fn oracle() -> Self {
        QuadratureSpec {
            abscissa_count: 7001,
            log_range: (-130.0, 130.0),
            tolerance: 1e-9,
            strip: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.log_range.0 >= self.log_range.1 {
            return Err(Error::InvalidInput("log_range lower must be below upper".into()));
        }
        if !(self.tolerance > 0.0 && self.tolerance < 1.0) {
            return Err(Error::InvalidInput("tolerance must lie in (0, 1)".into()));
        }
        if self.abscissa_count < 8 {
            return Err(Error::InvalidInput("abscissa_count too small".into()));
        }
        Ok(())
    }
}

/// Truncated Mellin transform `\int_0^inf t^{s-1} f(t) dt` computed by the
/// substitution `t = e^u` and the composite trapezoid rule on `log_range`.
/// The transformed integrand `e^{su} f(e^u)` is smooth and decaying for every
/// kernel in this crate, where the trapezoid rule converges spectrally; the
/// truncation tails are estimated from the endpoint samples.
pub fn mellin_quadrature<F>(f: F, s: Complex64, spec: &QuadratureSpec) -> Result<Complex64>
where
    F: Fn(f64) -> Complex64,
{
    spec.validate()?;
    if let Some((lo, hi)) = spec.strip {
        if s.re <= lo || s.re >= hi {
            return Err(Error::StripViolation { re: s.re, lo, hi });
        }
    }
    let (a, b) = spec.log_range;
    let n = spec.abscissa_count;
    let h = (b - a) / (n - 1) as f64;
    let g = |u: f64| -> Complex64 { (s * u).exp() * f(u.exp()) };

    let mut sum = Complex64::new(0.0, 0.0);
    let mut first = Complex64::new(0.0, 0.0);
    let mut last = Complex64::new(0.0, 0.0);
    let mut prev_first = Complex64::new(0.0, 0.0);
    let mut prev_last = Complex64::new(0.0, 0.0);
    for i in 0..n {
        let u = a + h * i as f64;
        let v = g(u);
        if !v.re.is_finite() || !v.im.is_finite() {
            return Err(Error::NonConvergent(format!("non-finite sample at log t = {u}")));
        }
        let w = if i == 0 || i == n - 1 { 0.5 } else { 1.0 };
        sum += v * w;
        match i {
            0 => first = v,
            1 => prev_first = v,
            _ => {}
        }
        if i == n - 2 {
            prev_last = v;
        }
        if i == n - 1 {
            last = v;
        }
    }
    let integral = sum * h;

    let tail = tail_estimate(first.norm(), prev_first.norm(), h)
        + tail_estimate(last.norm(), prev_last.norm(), h);
    let scale = integral.norm().max(1e-300);
    if tail > spec.tolerance * scale {
        return Err(Error::NonConvergent(format!(
            "tail estimate {tail:.3e} exceeds tolerance {:.3e} x |I| = {scale:.3e}; widen log_range",
            spec.tolerance
        )));
    }
    Ok(integral)
}

/// Geometric tail bound from the outermost two samples: if the integrand
/// decays like e^{-lambda u}, the omitted tail is ~ |edge| / lambda.
fn tail_estimate(edge: f64, inner: f64, h: f64) -> f64 {
    if edge == 0.0 {
        return 0.0;
    }
    if inner <= edge {
        // Not decaying at the boundary; report the worst case.
        return f64::INFINITY;
    }
    let lambda = (inner / edge).ln() / h;
    edge / lambda
}

/// Residue of `f` at `center` via the trapezoid rule on a circular contour
/// (exact for Laurent modes up to the node count).
pub fn contour_residue<F>(f: F, center: Complex64, radius: f64, nodes: usize) -> Complex64
where
    F: Fn(Complex64) -> Complex64,
{
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..nodes {
        let theta = 2.0 * PI * j as f64 / nodes as f64;
        let dz = Complex64::from_polar(radius, theta);
        acc += f(center + dz) * dz;
    }
    acc / nodes as f64
}

/// tanh-sinh rule over a finite interval (a, b); handles integrable endpoint
/// singularities of the spectral densities. Accuracy near a singular
/// endpoint bottoms out where the abscissa saturates in f64 (relative
/// distance ~1e-16), e.g. ~1e-8 of the local mass for an inverse-sqrt
/// singularity.
pub fn tanh_sinh<F>(f: F, a: f64, b: f64, n: usize) -> Complex64
where
    F: Fn(f64) -> Complex64,
{
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let t_max = 4.0;
    let h = 2.0 * t_max / (n - 1) as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..n {
        let t = -t_max + h * j as f64;
        let w = PI / 2.0 * t.sinh();
        let x = mid + half * w.tanh();
        if x <= a || x >= b {
            continue;
        }
        let dxdt = half * (PI / 2.0) * t.cosh() / w.cosh().powi(2);
        let v = f(x);
        if v.re.is_finite() && v.im.is_finite() {
            acc += v * dxdt;
        }
    }
    acc * h
}

/// exp-sinh rule over (0, inf) centered at `scale`; power-law tails become
/// doubly exponential under the map, so truncation to |t| <= 4 is benign.
pub fn exp_sinh<F>(f: F, scale: f64, n: usize) -> Complex64
where
    F: Fn(f64) -> Complex64,
{
    let t_max = 4.0;
    let h = 2.0 * t_max / (n - 1) as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..n {
        let t = -t_max + h * j as f64;
        let x = scale * (PI / 2.0 * t.sinh()).exp();
        if !(x.is_finite() && x > 0.0) {
            continue;
        }
        let dxdt = x * (PI / 2.0) * t.cosh();
        let v = f(x);
        if v.re.is_finite() && v.im.is_finite() {
            acc += v * dxdt;
        }
    }
    acc * h
}
