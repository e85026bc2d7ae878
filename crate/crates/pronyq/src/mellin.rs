//! Extended Fox-class Mellin symbols and the constitutive kernel.
//!
//! A symbol is a finite Gamma-ratio times `exp(P(s))`, an overall prefactor,
//! and optionally a finite exponential sum (the transform of a discrete
//! spectrum). Poles come only from the numerator Gamma factors and form
//! one-sided arithmetic progressions; cancellation against denominator
//! lattices is decided in exact rational arithmetic.

use crate::exact::Exact;
use crate::numerics::{self, complex_gamma, contour_residue, ln_factorial, near_integer, POLE_EPS};
use crate::{Error, Result};
use num_complex::Complex64;
use num_traits::Signed;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::fmt;

/// One Gamma factor `Γ(scale·s + shift)`. `scale` is negative for reflected
/// factors such as `Γ(β − s)`, whose pole progression ascends.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GammaFactor {
    #[serde(rename = "a")]
    pub scale: Exact,
    #[serde(rename = "b")]
    pub shift: Exact,
}

impl GammaFactor {
    pub fn new(scale: Exact, shift: Exact) -> Self {
        GammaFactor { scale, shift }
    }

    /// Pole location of index k: s = -(shift + k)/scale.
    pub fn pole(&self, k: u32) -> Exact {
        match (self.scale, self.shift) {
            (Exact::Rational(a), Exact::Rational(b)) => {
                Exact::Rational(-(b + num_rational::Ratio::from_integer(k as i128)) / a)
            }
            _ => Exact::Irrational(-(self.shift.to_f64() + k as f64) / self.scale.to_f64()),
        }
    }

    /// Pole spacing |1/scale|.
    pub fn spacing(&self) -> Exact {
        match self.scale {
            Exact::Rational(a) => Exact::Rational(a.recip().abs()),
            Exact::Irrational(a) => Exact::Irrational((1.0 / a).abs()),
        }
    }

    fn argument(&self, s: Complex64) -> Complex64 {
        s * self.scale.to_f64() + self.shift.to_f64()
    }
}

impl fmt::Display for GammaFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a = self.scale;
        let b = self.shift;
        if a == Exact::integer(1) {
            if b.is_zero() {
                write!(f, "Γ(s)")
            } else {
                write!(f, "Γ(s + {b})")
            }
        } else if a == Exact::integer(-1) {
            if b.is_zero() {
                write!(f, "Γ(-s)")
            } else {
                write!(f, "Γ({b} - s)")
            }
        } else if b.is_zero() {
            write!(f, "Γ(({a})s)")
        } else {
            write!(f, "Γ(({a})s + {b})")
        }
    }
}

/// One term `g·e^{λ s}` of a finite exponential sum; `λ = ln τ` for an atom
/// of weight `g` at timescale `τ`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AtomTerm {
    #[serde(rename = "g")]
    pub weight: f64,
    #[serde(rename = "lambda")]
    pub log_timescale: f64,
}

/// An element of the extended Fox class: Gamma-ratio x exp(polynomial) x
/// prefactor, optionally times a finite exponential sum.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MellinSymbol {
    #[serde(rename = "num")]
    pub numerator: Vec<GammaFactor>,
    #[serde(rename = "den")]
    pub denominator: Vec<GammaFactor>,
    /// Coefficients of P(s) in Q(s) = exp(P(s)), ascending degree. Complex
    /// coefficients carry branch phases such as i^{-s} = exp(-iπ/2·s).
    #[serde(rename = "poly", with = "poly_serde")]
    pub exp_poly: Vec<Complex64>,
    #[serde(with = "complex_serde")]
    pub prefactor: Complex64,
    #[serde(rename = "atoms")]
    pub atom_terms: Vec<AtomTerm>,
}

impl MellinSymbol {
    /// The constant symbol 1.
    pub fn one() -> Self {
        MellinSymbol {
            numerator: vec![],
            denominator: vec![],
            exp_poly: vec![],
            prefactor: Complex64::new(1.0, 0.0),
            atom_terms: vec![],
        }
    }

    pub fn with_prefactor(mut self, p: Complex64) -> Self {
        self.prefactor = p;
        self
    }

    pub fn with_numerator(mut self, f: GammaFactor) -> Self {
        self.numerator.push(f);
        self
    }

    pub fn with_denominator(mut self, f: GammaFactor) -> Self {
        self.denominator.push(f);
        self
    }

    pub fn with_exp_poly(mut self, coeffs: Vec<Complex64>) -> Self {
        self.exp_poly = coeffs;
        self
    }

    /// Transform of a finite Prony spectrum: Σ g_k e^{λ_k s}, λ_k = ln τ_k.
    pub fn from_atoms(atoms: &[(f64, f64)]) -> Self {
        MellinSymbol {
            atom_terms: atoms
                .iter()
                .map(|&(g, tau)| AtomTerm {
                    weight: g,
                    log_timescale: tau.ln(),
                })
                .collect(),
            ..MellinSymbol::one()
        }
    }

    pub fn has_gamma_factors(&self) -> bool {
        !self.numerator.is_empty() || !self.denominator.is_empty()
    }

    /// Numerator/denominator pairs with identical exact parameters cancel;
    /// float-shifted factors never do (float equality would be spurious).
    pub fn cancelled(&self) -> MellinSymbol {
        let mut num = self.numerator.clone();
        let mut den = self.denominator.clone();
        let mut i = 0;
        while i < num.len() {
            let mut removed = false;
            for j in 0..den.len() {
                let exact_pair = num[i].scale.is_rational()
                    && num[i].shift.is_rational()
                    && den[j].scale.is_rational()
                    && den[j].shift.is_rational();
                if exact_pair && num[i] == den[j] {
                    num.remove(i);
                    den.remove(j);
                    removed = true;
                    break;
                }
            }
            if !removed {
                i += 1;
            }
        }
        MellinSymbol {
            numerator: num,
            denominator: den,
            exp_poly: self.exp_poly.clone(),
            prefactor: self.prefactor,
            atom_terms: self.atom_terms.clone(),
        }
    }

    fn poly_at(&self, s: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.exp_poly.iter().rev() {
            acc = acc * s + c;
        }
        acc
    }

    fn atom_sum_at(&self, s: Complex64) -> Complex64 {
        self.atom_terms
            .iter()
            .map(|a| a.weight * (s * a.log_timescale).exp())
            .sum()
    }
}

/// Evaluate a symbol at a regular point. Denominator poles are zeros of the
/// symbol; numerator poles (after exact cancellation) are errors.
pub fn evaluate_symbol(sym: &MellinSymbol, s: Complex64) -> Result<Complex64> {
    let sym = sym.cancelled();
    for f in &sym.numerator {
        if numerics::near_nonpositive_integer(f.argument(s), POLE_EPS) {
            return Err(Error::PoleEvaluation(s));
        }
    }
    let mut v = sym.prefactor * sym.poly_at(s).exp();
    if !sym.atom_terms.is_empty() {
        v *= sym.atom_sum_at(s);
    }
    for f in &sym.numerator {
        v *= complex_gamma(f.argument(s))?;
    }
    for f in &sym.denominator {
        let arg = f.argument(s);
        if numerics::near_nonpositive_integer(arg, POLE_EPS) {
            return Ok(Complex64::new(0.0, 0.0));
        }
        v /= complex_gamma(arg)?;
    }
    Ok(v)
}

/// Mellin transform of the spectral kernel `iω/(1+iω)` on −1 < Re s < 0:
///
/// ```text
/// K̃(s) = −π e^{−iπs/2} / sin(πs)
/// ```
///
/// The sign is fixed by the Beta integral
/// `∫ x^{u−1}/(1+ix) dx = e^{−iπu/2} π/sin(πu)` at `u = s+1` and is the value
/// the quadrature oracle reproduces. The τ-dependence of the dressed kernel
/// `iωτ/(1+iωτ)` enters as a `τ^{−s}` factor handled by callers.
pub fn kernel_mellin(s: Complex64) -> Result<Complex64> {
    if near_integer(s, POLE_EPS) {
        return Err(Error::PoleEvaluation(s));
    }
    let phase = (Complex64::new(0.0, -PI / 2.0) * s).exp();
    Ok(-PI * phase / (s * PI).sin())
}

/// Residue of [`kernel_mellin`] at the integer `s = n`:
/// `(−1)^{n+1} e^{−iπn/2}`, an exact unit in {±1, ±i}. Verified against a
/// contour integral of the closed form (active under debug assertions).
pub fn kernel_residue(n: i64) -> Complex64 {
    // e^{-i pi n / 2} cycles with period 4; combine with (-1)^{n+1} exactly.
    let i_pow_neg_n = match n.rem_euclid(4) {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, -1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, 1.0),
    };
    let sign = if n % 2 == 0 { -1.0 } else { 1.0 };
    let res = sign * i_pow_neg_n;
    debug_assert!(
        {
            let by_contour = contour_residue(
                |z| kernel_mellin(z).unwrap(),
                Complex64::new(n as f64, 0.0),
                0.25,
                64,
            );
            (by_contour - res).norm() < 1e-8
        },
        "kernel residue at n = {n} disagrees with contour integral"
    );
    res
}

/// A pole of a Mellin symbol, tagged with the Gamma factor that generated it.
#[derive(Clone, Copy, Debug)]
pub struct PoleRecord {
    pub location: Complex64,
    /// Index into the numerator factor list.
    pub family_index: usize,
    /// The k in the family's progression -(shift + k)/scale.
    pub order_index: u32,
    /// Coefficient of 1/(s - s0); for simple poles this is the residue of
    /// the generating factor times the remaining factors.
    pub residue: Complex64,
    /// Pole order after cancellation (1 = simple).
    pub order: u32,
}

/// All numerator-lattice poles with real part inside `window`, at most
/// `max_per_family` per family. Poles cancelled by exactly coinciding
/// denominator-lattice points are removed; coincidences between numerator
/// families are flagged through `order` and their residue is computed by a
/// contour integral.
pub fn enumerate_poles(
    sym: &MellinSymbol,
    window: (f64, f64),
    max_per_family: usize,
) -> Vec<PoleRecord> {
    assert!(window.0 < window.1, "window lower bound must be below upper");
    let sym = sym.cancelled();
    let mut records = Vec::new();
    for (fi, fam) in sym.numerator.iter().enumerate() {
        for k in 0..max_per_family as u32 {
            let loc = fam.pole(k);
            let loc_f = loc.to_f64();
            // One-sided lattices are monotone in k, so once we leave the
            // window on the far side we can stop.
            let spacing = 1.0 / fam.scale.to_f64();
            if spacing < 0.0 && loc_f > window.1 {
                break;
            }
            if spacing > 0.0 && loc_f < window.0 {
                break;
            }
            if loc_f <= window.0 || loc_f >= window.1 {
                continue;
            }
            if cancelled_by_denominator(&sym, loc) {
                continue;
            }
            let order = numerator_multiplicity(&sym, loc) - denominator_multiplicity(&sym, loc);
            if order == 0 {
                continue;
            }
            let s0 = Complex64::new(loc_f, 0.0);
            let residue = if order == 1 && numerator_multiplicity(&sym, loc) == 1 {
                simple_residue(&sym, fi, k, s0)
            } else {
                // Nearby lattice geometry sets the safe contour radius.
                let r = 0.25_f64.min(min_spacing(&sym) / 4.0);
                contour_residue(|z| evaluate_symbol(&sym, z).unwrap_or_default(), s0, r, 128)
            };
            records.push(PoleRecord {
                location: s0,
                family_index: fi,
                order_index: k,
                residue,
                order: order as u32,
            });
        }
    }
    records.sort_by(|a, b| b.location.re.partial_cmp(&a.location.re).unwrap());
    records
}

fn min_spacing(sym: &MellinSymbol) -> f64 {
    sym.numerator
        .iter()
        .map(|f| f.spacing().to_f64())
        .fold(1.0, f64::min)
}

fn lattice_hits(factor: &GammaFactor, loc: Exact, max_k: u32) -> u32 {
    // Count k >= 0 with -(shift + k)/scale == loc. At most one per factor.
    match (factor.scale, factor.shift, loc) {
        (Exact::Rational(a), Exact::Rational(b), Exact::Rational(x)) => {
            let k = -x * a - b;
            if k.is_integer() && *k.numer() >= 0 && *k.numer() < max_k as i128 {
                1
            } else {
                0
            }
        }
        _ => {
            let a = factor.scale.to_f64();
            let b = factor.shift.to_f64();
            let k = -loc.to_f64() * a - b;
            if k > -1e-12 && (k - k.round()).abs() < 1e-12 && k.round() < max_k as f64 {
                1
            } else {
                0
            }
        }
    }
}

fn cancelled_by_denominator(sym: &MellinSymbol, loc: Exact) -> bool {
    // Cancellation is only recognized for exact rational coincidences.
    if !loc.is_rational() {
        return false;
    }
    denominator_multiplicity(sym, loc) >= numerator_multiplicity(sym, loc)
}

fn numerator_multiplicity(sym: &MellinSymbol, loc: Exact) -> i64 {
    sym.numerator.iter().map(|f| lattice_hits(f, loc, u32::MAX) as i64).sum()
}

fn denominator_multiplicity(sym: &MellinSymbol, loc: Exact) -> i64 {
    sym.denominator.iter().map(|f| lattice_hits(f, loc, u32::MAX) as i64).sum()
}

fn simple_residue(sym: &MellinSymbol, family: usize, k: u32, s0: Complex64) -> Complex64 {
    let fam = sym.numerator[family];
    // Residue of Γ(a s + b) at index k is (-1)^k / (a k!).
    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
    let gamma_res = sign * (-ln_factorial(k)).exp() / fam.scale.to_f64();
    let mut rest = sym.prefactor * sym.poly_at(s0).exp();
    if !sym.atom_terms.is_empty() {
        rest *= sym.atom_sum_at(s0);
    }
    for (fi, f) in sym.numerator.iter().enumerate() {
        if fi != family {
            rest *= complex_gamma(f.argument(s0)).unwrap_or(Complex64::new(f64::NAN, 0.0));
        }
    }
    for f in &sym.denominator {
        rest /= complex_gamma(f.argument(s0)).unwrap_or(Complex64::new(f64::NAN, 0.0));
    }
    gamma_res * rest
}

/// Residue at a simple pole of the symbol: the generating factor contributes
/// `(−1)^k/(scale·k!)` and every remaining factor is evaluated at the pole.
pub fn residue_at(sym: &MellinSymbol, pole: &PoleRecord) -> Result<Complex64> {
    let sym = sym.cancelled();
    let loc = sym.numerator[pole.family_index].pole(pole.order_index);
    if numerator_multiplicity(&sym, loc) - denominator_multiplicity(&sym, loc) > 1 {
        return Err(Error::CoincidentPole(pole.location));
    }
    Ok(simple_residue(&sym, pole.family_index, pole.order_index, pole.location))
}

/// Principal part of the product of two locally expanded simple poles
/// (`a/b` indices: -1 = residue, 0 = constant term):
///
/// ```text
/// (double, simple) = (a₋₁ b₋₁, a₋₁ b₀ + a₀ b₋₁)
/// ```
pub fn laurent_at_coincidence(
    residue_k: Complex64,
    const_k: Complex64,
    residue_h: Complex64,
    const_h: Complex64,
) -> (Complex64, Complex64) {
    (residue_k * residue_h, residue_k * const_h + const_k * residue_h)
}

mod complex_serde {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &Complex64, ser: S) -> Result<S::Ok, S::Error> {
        [v.re, v.im].serialize(ser)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Complex64, D::Error> {
        let [re, im] = <[f64; 2]>::deserialize(de)?;
        Ok(Complex64::new(re, im))
    }
}

mod poly_serde {
    use num_complex::Complex64;
    use serde::de::Error;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    /// Real coefficients serialize as plain numbers, complex ones as
    /// [re, im] pairs.
    #[derive(Serialize, Deserialize)]
    #[serde(untagged)]
    enum Coeff {
        Real(f64),
        Pair([f64; 2]),
    }

    pub fn serialize<S: Serializer>(v: &[Complex64], ser: S) -> Result<S::Ok, S::Error> {
        let out: Vec<Coeff> = v
            .iter()
            .map(|c| {
                if c.im == 0.0 {
                    Coeff::Real(c.re)
                } else {
                    Coeff::Pair([c.re, c.im])
                }
            })
            .collect();
        out.serialize(ser)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Vec<Complex64>, D::Error> {
        let raw = Vec::<Coeff>::deserialize(de).map_err(D::Error::custom)?;
        Ok(raw
            .into_iter()
            .map(|c| match c {
                Coeff::Real(x) => Complex64::new(x, 0.0),
                Coeff::Pair([re, im]) => Complex64::new(re, im),
            })
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{mellin_quadrature, QuadratureSpec};
    use rand::{Rng, SeedableRng};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn gamma_s() -> MellinSymbol {
        MellinSymbol::one().with_numerator(GammaFactor::new(Exact::one(), Exact::zero()))
    }

    #[test]
    fn kernel_closed_form_values() {
        // K(s) sin(pi s)/pi = -e^{-i pi s /2} in closed form.
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let s = c(rng.gen_range(-4.0..4.0), rng.gen_range(-3.0..3.0));
            if near_integer(s, 1e-3) {
                continue;
            }
            let lhs = kernel_mellin(s).unwrap() * (s * PI).sin() / PI;
            let rhs = -(Complex64::new(0.0, -PI / 2.0) * s).exp();
            assert!((lhs - rhs).norm() < 1e-12, "identity fails at {s}");
        }
        // Spot values: K(1/2) = -pi e^{-i pi/4}, K(-1/2) = +pi e^{i pi/4}.
        let k = kernel_mellin(c(0.5, 0.0)).unwrap();
        let want = -PI * Complex64::from_polar(1.0, -PI / 4.0);
        assert!((k - want).norm() < 1e-12);
        let k = kernel_mellin(c(-0.5, 0.0)).unwrap();
        let want = PI * Complex64::from_polar(1.0, PI / 4.0);
        assert!((k - want).norm() < 1e-12);
    }

    #[test]
    fn kernel_matches_quadrature_on_the_strip() {
        // The quadrature oracle fixes the kernel's sign convention.
        let spec = QuadratureSpec::oracle();
        let f = |w: f64| {
            let iw = c(0.0, w);
            iw / (1.0 + iw)
        };
        for s in [c(-0.5, 0.0), c(-0.25, 0.0), c(-0.75, 0.0), c(-0.5, 0.5)] {
            let got = mellin_quadrature(f, s, &spec).unwrap();
            let want = kernel_mellin(s).unwrap();
            assert!(
                (got - want).norm() / want.norm() < 1e-8,
                "kernel quadrature mismatch at {s}: {got} vs {want}"
            );
        }
    }

    #[test]
    fn kernel_residues_match_contour_integrals() {
        for n in -3i64..=3 {
            let formula = kernel_residue(n);
            let by_contour = contour_residue(
                |z| kernel_mellin(z).unwrap(),
                c(n as f64, 0.0),
                0.25,
                64,
            );
            assert!(
                (formula - by_contour).norm() < 1e-10,
                "residue mismatch at n = {n}: {formula} vs {by_contour}"
            );
        }
        // The contour-verified values: -1 at n = 0, -i at n = 1, +1 at n = 2.
        assert!((kernel_residue(0) - c(-1.0, 0.0)).norm() < 1e-15);
        assert!((kernel_residue(1) - c(0.0, -1.0)).norm() < 1e-15);
        assert!((kernel_residue(2) - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn pole_enumeration_for_plain_gamma() {
        let poles = enumerate_poles(&gamma_s(), (-3.5, 1.0), 100);
        let locs: Vec<f64> = poles.iter().map(|p| p.location.re).collect();
        assert_eq!(locs, vec![0.0, -1.0, -2.0, -3.0]);
        assert!(poles.iter().all(|p| p.order == 1));
    }

    #[test]
    fn full_cancellation_gives_no_poles() {
        let sym = gamma_s().with_denominator(GammaFactor::new(Exact::one(), Exact::zero()));
        assert!(enumerate_poles(&sym, (-100.0, 10.0), 200).is_empty());
    }

    #[test]
    fn scaled_shifted_lattice() {
        // Γ(s/2 + 3/10): poles at -0.6, -2.6, -4.6 (spacing 2).
        let sym = MellinSymbol::one()
            .with_numerator(GammaFactor::new(Exact::rational(1, 2), Exact::rational(3, 10)));
        let poles = enumerate_poles(&sym, (-5.0, 0.0), 100);
        let locs: Vec<f64> = poles.iter().map(|p| p.location.re).collect();
        assert_eq!(locs.len(), 3);
        assert!((locs[0] + 0.6).abs() < 1e-12);
        assert!((locs[1] + 2.6).abs() < 1e-12);
        assert!((locs[2] + 4.6).abs() < 1e-12);
    }

    #[test]
    fn residue_formula_examples() {
        let poles = enumerate_poles(&gamma_s(), (-3.5, 0.5), 100);
        let at = |re: f64| poles.iter().find(|p| (p.location.re - re).abs() < 1e-12).unwrap();
        assert!((residue_at(&gamma_s(), at(0.0)).unwrap() - 1.0).norm() < 1e-14);
        assert!((residue_at(&gamma_s(), at(-3.0)).unwrap() - c(-1.0 / 6.0, 0.0)).norm() < 1e-14);

        let sym = MellinSymbol::one()
            .with_numerator(GammaFactor::new(Exact::rational(1, 2), Exact::rational(3, 10)));
        let poles = enumerate_poles(&sym, (-5.0, 0.0), 100);
        let p46 = poles.iter().find(|p| (p.location.re + 4.6).abs() < 1e-12).unwrap();
        assert_eq!(p46.order_index, 2);
        // (-1)^2 / (0.5 * 2!) = 1.
        assert!((residue_at(&sym, p46).unwrap() - 1.0).norm() < 1e-12);
    }

    #[test]
    fn enumerated_residues_match_contour_integrals() {
        let syms = [
            gamma_s(),
            MellinSymbol::one()
                .with_numerator(GammaFactor::new(Exact::rational(1, 2), Exact::rational(3, 10)))
                .with_prefactor(c(2.0, 1.0)),
            MellinSymbol::one()
                .with_numerator(GammaFactor::new(Exact::one(), Exact::zero()))
                .with_numerator(GammaFactor::new(Exact::integer(-1), Exact::rational(1, 2)))
                .with_exp_poly(vec![c(0.0, 0.0), c(0.3, -0.2)]),
        ];
        for sym in &syms {
            for p in enumerate_poles(sym, (-6.0, 6.0), 16) {
                if p.order != 1 {
                    continue;
                }
                let r = 0.25_f64.min(min_spacing(sym) / 4.0);
                let by_contour =
                    contour_residue(|z| evaluate_symbol(sym, z).unwrap(), p.location, r, 96);
                let by_formula = residue_at(sym, &p).unwrap();
                assert!(
                    (by_contour - by_formula).norm() < 1e-8 * by_formula.norm().max(1.0),
                    "contour {by_contour} vs formula {by_formula} at {}",
                    p.location
                );
            }
        }
    }

    #[test]
    fn coincident_pole_is_rejected_by_residue_at() {
        // Γ(s)Γ(s/2): both have a pole at 0.
        let sym = gamma_s().with_numerator(GammaFactor::new(Exact::rational(1, 2), Exact::zero()));
        let poles = enumerate_poles(&sym, (-0.5, 0.5), 4);
        assert!(poles.iter().all(|p| p.order == 2));
        assert!(matches!(
            residue_at(&sym, &poles[0]),
            Err(Error::CoincidentPole(_))
        ));
    }

    #[test]
    fn laurent_coincidence_formula() {
        let pairs = [
            ((1.0, 0.0, 1.0, 0.0), (1.0, 0.0)),
            ((1.0, 2.0, 0.0, 5.0), (0.0, 5.0)),
            ((2.0, 1.0, 3.0, 4.0), (6.0, 11.0)),
        ];
        for ((a1, a0, b1, b0), (d, s)) in pairs {
            let (double, simple) =
                laurent_at_coincidence(c(a1, 0.0), c(a0, 0.0), c(b1, 0.0), c(b0, 0.0));
            assert!((double - d).norm() < 1e-15);
            assert!((simple - s).norm() < 1e-15);
        }
    }

    #[test]
    fn evaluate_symbol_examples() {
        // Single atom with lambda = 0 is identically 1.
        let atom = MellinSymbol::from_atoms(&[(1.0, 1.0)]);
        assert!((evaluate_symbol(&atom, c(7.0, 3.0)).unwrap() - 1.0).norm() < 1e-15);
        // Log-normal symbol exp(0.5 s^2) at s = 2 is e^2.
        let ln = MellinSymbol::one().with_exp_poly(vec![c(0.0, 0.0), c(0.0, 0.0), c(0.5, 0.0)]);
        assert!(
            (evaluate_symbol(&ln, c(2.0, 0.0)).unwrap() - std::f64::consts::E.powi(2)).norm()
                < 1e-12
        );
        // Γ(4) = 6.
        assert!((evaluate_symbol(&gamma_s(), c(4.0, 0.0)).unwrap() - 6.0).norm() < 1e-12);
        // Atom-only symbols are entire.
        assert!(enumerate_poles(&atom, (-100.0, 100.0), 64).is_empty());
    }

    #[test]
    fn exact_cancellation_is_identity() {
        let sym = MellinSymbol::one()
            .with_numerator(GammaFactor::new(Exact::rational(2, 3), Exact::rational(1, 5)))
            .with_denominator(GammaFactor::new(Exact::rational(2, 3), Exact::rational(1, 5)));
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let s = c(rng.gen_range(-8.0..8.0), rng.gen_range(-8.0..8.0));
            let v = evaluate_symbol(&sym, s).unwrap();
            assert!((v - 1.0).norm() < 1e-12, "cancelled symbol != 1 at {s}");
        }
    }

    #[test]
    fn symbol_json_round_trip() {
        let sym = MellinSymbol {
            numerator: vec![GammaFactor::new(Exact::rational(1, 2), Exact::rational(3, 10))],
            denominator: vec![],
            exp_poly: vec![c(0.0, 0.0), c(1.0, 0.0)],
            prefactor: c(1.0, 0.0),
            atom_terms: vec![AtomTerm { weight: 1.0, log_timescale: 0.0 }],
        };
        let json = serde_json::to_string(&sym).unwrap();
        assert!(json.contains("\"num\":[{\"a\":\"1/2\",\"b\":\"3/10\"}]"));
        assert!(json.contains("\"poly\":[0.0,1.0]"));
        assert!(json.contains("\"prefactor\":[1.0,0.0]"));
        assert!(json.contains("\"atoms\":[{\"g\":1.0,\"lambda\":0.0}]"));
        let back: MellinSymbol = serde_json::from_str(&json).unwrap();
        assert_eq!(back, sym);
    }
}
