//! Command-line entry points: classify | ladder | eval | verify | table.
//!
//! Exit codes: 0 on success (any verdict), 1 on verification failure,
//! 2 on invalid input. Output goes to `--out` or stdout; diagnostics to
//! stderr.

use crate::classify::{classify_with_candidates, verify_constitutive, Verdict};
use crate::exact::Exact;
use crate::ladder::{default_grid, log_grid, synthesize, PronyLadder};
use crate::models::{ModelKind, ModelSpec, SpectrumProvider};
use crate::numerics::QuadratureSpec;
use crate::{Error, Result};
use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_INPUT_ERROR: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "pronyq",
    about = "Decide finite Prony representability of viscoelastic moduli in Mellin space \
             and synthesize convergent Prony ladders",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Classify a model: lattice alignment, residue coupling, verdict JSON.
    Classify(ClassifyArgs),
    /// Synthesize a geometric Prony ladder from a model's spectrum.
    Ladder(LadderArgs),
    /// Evaluate a modulus or relaxation curve to CSV.
    Eval(EvalArgs),
    /// Check the Mellin constitutive identity by dual-path evaluation.
    Verify(VerifyArgs),
    /// Classify the whole catalog at default fractional parameters.
    Table(TableArgs),
}

/// Model selection flags shared by the subcommands. Rational parameters
/// ("3/5", "0.6") stay exact; prefix a value with `~` to tag it irrational.
#[derive(Args, Debug, Default, Clone)]
pub struct ModelFlags {
    /// maxwell | sls | power-law | cole-cole | cole-davidson |
    /// havriliak-negami | fractional-zener | log-normal
    #[arg(long)]
    pub model: Option<String>,
    #[arg(long, value_name = "G")]
    pub g_inf: Option<f64>,
    #[arg(long, value_name = "DG")]
    pub delta_g: Option<f64>,
    #[arg(long)]
    pub g: Option<f64>,
    #[arg(long)]
    pub tau: Option<f64>,
    #[arg(long)]
    pub alpha: Option<String>,
    #[arg(long)]
    pub beta: Option<String>,
    #[arg(long)]
    pub delta: Option<f64>,
    #[arg(long)]
    pub g_e: Option<f64>,
    #[arg(long)]
    pub mu: Option<f64>,
    #[arg(long)]
    pub sigma: Option<f64>,
    #[arg(long)]
    pub g0: Option<f64>,
    #[arg(long)]
    pub tau0: Option<f64>,
}

impl ModelFlags {
    pub fn build(&self) -> Result<ModelSpec> {
        let name = self
            .model
            .as_deref()
            .ok_or_else(|| Error::InvalidInput("--model is required".into()))?;
        let kind = ModelKind::parse(name)?;
        let parse_exact = |v: &Option<String>, what: &str| -> Result<Option<Exact>> {
            match v {
                None => Ok(None),
                Some(s) => s
                    .parse::<Exact>()
                    .map(Some)
                    .map_err(|e| Error::InvalidInput(format!("--{what}: {e}"))),
            }
        };
        let spec = ModelSpec {
            name: kind,
            g_inf: self.g_inf.unwrap_or(0.0),
            delta_g: self.delta_g,
            g: self.g,
            tau: self.tau,
            alpha: parse_exact(&self.alpha, "alpha")?,
            beta: parse_exact(&self.beta, "beta")?,
            delta: self.delta,
            g_e: self.g_e,
            mu: self.mu,
            sigma: self.sigma,
            g0: self.g0,
            tau0: self.tau0,
        };
        spec.validate()?;
        Ok(spec)
    }
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub model: ModelFlags,
    /// Model spec JSON file (alternative to inline flags).
    #[arg(long, value_name = "PATH")]
    pub spec: Option<PathBuf>,
    /// Candidate lattice spacing (repeatable); defaults to the integer
    /// spacing 1.
    #[arg(long = "candidate-spacing", value_name = "P/Q")]
    pub candidate_spacings: Vec<String>,
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
pub struct LadderArgs {
    #[command(flatten)]
    pub model: ModelFlags,
    /// Model spec JSON file (alternative to inline flags).
    #[arg(long, value_name = "PATH")]
    pub spec: Option<PathBuf>,
    /// Geometric ratio between consecutive timescales.
    #[arg(long)]
    pub q: Option<f64>,
    /// Total grid span in decades of timescale.
    #[arg(long, value_name = "D")]
    pub span_decades: Option<f64>,
    /// Half mode count (grid runs k = -n_half..=n_half).
    #[arg(long, value_name = "N")]
    pub n_half: Option<u32>,
    /// Rescale the weights to the model's relaxation strength.
    #[arg(long)]
    pub normalize: bool,
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
pub struct EvalArgs {
    #[command(flatten)]
    pub model: ModelFlags,
    /// Ladder JSON file to evaluate instead of a closed-form model.
    #[arg(long, value_name = "PATH")]
    pub spec: Option<PathBuf>,
    #[arg(long, default_value_t = 1e-3)]
    pub omega_min: f64,
    #[arg(long, default_value_t = 1e3)]
    pub omega_max: f64,
    #[arg(long, default_value_t = 200)]
    pub points: usize,
    /// Emit the time-domain relaxation curve "t,g" instead of the modulus.
    /// The range flags then bound t (linear grid when the minimum is 0).
    #[arg(long)]
    pub time: bool,
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub model: ModelFlags,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    /// "text" (default) or "json".
    #[arg(long, default_value = "text")]
    pub format: String,
}

/// Parse the process arguments and dispatch; returns the exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_INPUT_ERROR
        }
    }
}

pub fn dispatch(cmd: Command) -> Result<i32> {
    match cmd {
        Command::Classify(args) => cmd_classify(args),
        Command::Ladder(args) => cmd_ladder(args),
        Command::Eval(args) => cmd_eval(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Table(args) => cmd_table(args),
    }
}

fn load_model(flags: &ModelFlags, spec_path: &Option<PathBuf>) -> Result<ModelSpec> {
    if let Some(path) = spec_path {
        let text = fs::read_to_string(path)?;
        let spec: ModelSpec = serde_json::from_str(&text)?;
        spec.validate()?;
        Ok(spec)
    } else {
        flags.build()
    }
}

fn emit(out: &Option<PathBuf>, content: &str) -> Result<()> {
    match out {
        Some(path) => {
            fs::write(path, content)?;
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(content.as_bytes())?;
        }
    }
    Ok(())
}

fn cmd_classify(args: ClassifyArgs) -> Result<i32> {
    let spec = load_model(&args.model, &args.spec)?;
    let spacings = if args.candidate_spacings.is_empty() {
        vec![Exact::one()]
    } else {
        args.candidate_spacings
            .iter()
            .map(|s| s.parse::<Exact>().map_err(Error::InvalidInput))
            .collect::<Result<Vec<_>>>()?
    };
    let verdict = classify_with_candidates(&spec, &spacings)?;
    let json = serde_json::to_string_pretty(&verdict)?;
    emit(&args.out, &format!("{json}\n"))?;
    Ok(EXIT_OK)
}

fn cmd_ladder(args: LadderArgs) -> Result<i32> {
    let spec = load_model(&args.model, &args.spec)?;
    let provider = spec.spectrum()?;
    let g_inf = spec.equilibrium_modulus();

    let ladder = match &provider {
        SpectrumProvider::Atoms(atoms) => PronyLadder::from_atoms(atoms, g_inf),
        SpectrumProvider::Density(d) => {
            let q = args.q.unwrap_or_else(|| 10f64.powf(0.1));
            if q <= 1.0 {
                return Err(Error::InvalidInput(format!("--q must exceed 1, got {q}")));
            }
            let (tau0, n_half) = match (args.grid_tau0, args.span_decades, args.n_half) {
                (t0, Some(span), n) => {
                    let tau0 = t0.unwrap_or(d.scale);
                    let n_half =
                        n.unwrap_or(((span / 2.0) * 10f64.ln() / q.ln()).ceil() as u32);
                    (tau0, n_half)
                }
                (t0, None, Some(n)) => (t0.unwrap_or(d.scale), n),
                (t0, None, None) => {
                    let (auto_t0, n) = default_grid(&provider, q)
                        .ok_or(Error::DegenerateLadder)?;
                    (t0.unwrap_or(auto_t0), n)
                }
            };
            synthesize(&provider, g_inf, tau0, q, n_half)?
        }
    };

    let ladder = if args.normalize {
        let target = spec.relaxation_strength().ok_or_else(|| {
            Error::InvalidInput(
                "distributional spectrum carries no finite sum rule; --normalize unavailable"
                    .into(),
            )
        })?;
        ladder.normalize_sum_rule(target)?
    } else {
        ladder
    };

    let (g_lo, g_hi) = ladder.boundary_weights();
    eprintln!(
        "modes: {}; total weight: {:.6e}; boundary-weight truncation estimate: ({:.3e}, {:.3e})",
        ladder.modes.len(),
        ladder.weight_sum(),
        g_lo,
        g_hi
    );
    let json = serde_json::to_string_pretty(&ladder)?;
    emit(&args.out, &format!("{json}\n"))?;
    Ok(EXIT_OK)
}

/// 17-significant-digit float formatting for curve output.
fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

fn cmd_eval(args: EvalArgs) -> Result<i32> {
    let degenerate_ok = args.points == 1 && args.omega_max == args.omega_min;
    if !(args.omega_min >= 0.0
        && args.points >= 1
        && (args.omega_max > args.omega_min || degenerate_ok))
    {
        return Err(Error::InvalidInput(
            "need 0 <= min <= max (equal only with a single point) and at least one grid point"
                .into(),
        ));
    }
    let ladder: Option<PronyLadder> = match &args.spec {
        Some(path) => {
            let text = fs::read_to_string(path)?;
            Some(serde_json::from_str(&text)?)
        }
        None => None,
    };

    let mut csv = String::new();
    if args.time {
        let ts: Vec<f64> = if args.omega_min == 0.0 {
            (0..args.points)
                .map(|i| {
                    args.omega_min
                        + (args.omega_max - args.omega_min) * i as f64
                            / (args.points.max(2) - 1) as f64
                })
                .collect()
        } else {
            log_grid(args.omega_min, args.omega_max, args.points)
        };
        let ladder = match &ladder {
            Some(l) => l.clone(),
            None => {
                let spec = args.model.build()?;
                match spec.spectrum()? {
                    SpectrumProvider::Atoms(atoms) => {
                        PronyLadder::from_atoms(&atoms, spec.equilibrium_modulus())
                    }
                    SpectrumProvider::Density(_) => {
                        return Err(Error::InvalidInput(
                            "time-domain evaluation needs a discrete ladder; synthesize one \
                             with `ladder` first"
                                .into(),
                        ))
                    }
                }
            }
        };
        csv.push_str("t,g\n");
        for t in ts {
            csv.push_str(&format!("{},{}\n", fmt17(t), fmt17(ladder.eval_time(t))));
        }
    } else {
        if args.omega_min <= 0.0 {
            return Err(Error::InvalidInput("omega grid must be positive".into()));
        }
        let ws = log_grid(args.omega_min, args.omega_max, args.points);
        let eval: Box<dyn Fn(f64) -> Result<Complex64>> = match &ladder {
            Some(l) => {
                let l = l.clone();
                Box::new(move |w| Ok(l.eval_modulus(w)))
            }
            None => {
                let spec = args.model.build()?;
                Box::new(move |w| spec.modulus(w))
            }
        };
        csv.push_str("omega,re_g,im_g\n");
        for w in ws {
            let v = eval(w)?;
            csv.push_str(&format!(
                "{},{},{}\n",
                fmt17(w),
                fmt17(v.re),
                fmt17(v.im)
            ));
        }
    }
    emit(&args.out, &csv)?;
    Ok(EXIT_OK)
}

fn cmd_verify(args: VerifyArgs) -> Result<i32> {
    let spec = args.model.build()?;
    let (lo, hi) = spec.convergence_strip()?;
    // 9-point grid: three real abscissae inside the strip times three
    // imaginary offsets.
    let mut samples = Vec::with_capacity(9);
    for fr in [0.25, 0.5, 0.75] {
        for im in [-0.5, 0.0, 0.5] {
            samples.push(Complex64::new(lo + (hi - lo) * fr, im));
        }
    }
    let residual = verify_constitutive(&spec, &samples, &QuadratureSpec::oracle())?;
    println!("max relative constitutive residual: {residual:.3e}");
    if residual <= 1e-6 {
        Ok(EXIT_OK)
    } else {
        Ok(EXIT_VERIFY_FAILED)
    }
}

/// The catalog at the default fractional parameters (α = 3/5, β = 1/2,
/// δ = 1/2, μ = 0, σ = 1, unit strengths and timescales).
pub fn default_catalog() -> Vec<ModelSpec> {
    vec![
        ModelSpec::maxwell(0.0, 1.0, 1.0),
        ModelSpec::sls(1.0, 1.0, 1.0),
        ModelSpec::power_law(1.0, 1.0, Exact::rational(1, 2)),
        ModelSpec::cole_cole(0.0, 1.0, 1.0, Exact::rational(3, 5)),
        ModelSpec::cole_davidson(0.0, 1.0, 1.0, Exact::rational(1, 2)),
        ModelSpec::havriliak_negami(0.0, 1.0, 1.0, Exact::rational(3, 5), Exact::rational(1, 2)),
        ModelSpec::fractional_zener(1.0, 1.0, Exact::rational(3, 5), 0.5),
        ModelSpec::log_normal(0.0, 1.0),
    ]
}

pub fn catalog_verdicts() -> Result<Vec<(ModelSpec, Verdict)>> {
    default_catalog()
        .into_iter()
        .map(|m| classify_with_candidates(&m, &[Exact::one()]).map(|v| (m, v)))
        .collect()
}

fn cmd_table(args: TableArgs) -> Result<i32> {
    let rows = catalog_verdicts()?;
    match args.format.as_str() {
        "json" => {
            #[derive(serde::Serialize)]
            struct Row<'a> {
                model: &'a str,
                verdict: &'a Verdict,
            }
            let out: Vec<Row> = rows
                .iter()
                .map(|(m, v)| Row {
                    model: m.name.name(),
                    verdict: v,
                })
                .collect();
            println!("{}", serde_json::to_string_pretty(&out)?);
        }
        "text" => {
            let fmt_delta = |v: &Verdict| match &v.delta_g {
                Some(d) => d.to_string(),
                None => "-".into(),
            };
            println!("Finite Prony class (discrete spectra)");
            println!("{:<18} {:>6} {:>6}  reason", "model", "dG", "in-P");
            for (m, v) in &rows {
                if v.class == crate::classify::VerdictClass::FiniteProny {
                    println!(
                        "{:<18} {:>6} {:>6}  {}",
                        m.name.name(),
                        fmt_delta(v),
                        "yes",
                        short_reason(v)
                    );
                }
            }
            println!();
            println!("Transcendental class (infinite Prony ladders required)");
            println!("{:<18} {:>6} {:>6}  obstruction", "model", "dG", "in-P");
            for (m, v) in &rows {
                if v.class != crate::classify::VerdictClass::FiniteProny {
                    println!(
                        "{:<18} {:>6} {:>6}  {}",
                        m.name.name(),
                        fmt_delta(v),
                        "no",
                        short_reason(v)
                    );
                }
            }
        }
        other => {
            return Err(Error::InvalidInput(format!(
                "unknown table format `{other}` (use text or json)"
            )))
        }
    }
    Ok(EXIT_OK)
}

fn short_reason(v: &Verdict) -> &'static str {
    use crate::classify::VerdictReason::*;
    match v.reason {
        RationalFinite => "integer lattice; residues decouple",
        LatticeMisalignment => "lattice spacing differs from 1; alignment impossible",
        ResidueCoupling => "residue compatibility fails; secondary Gamma factor couples",
        EntireNonAffine => "entire Mellin symbol; residue condition fails",
        DistributionalSpectrum => "continuous spectrum (no discrete poles)",
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{VerdictClass, VerdictReason};

    #[test]
    fn model_flags_build_and_validate() {
        let flags = ModelFlags {
            model: Some("maxwell".into()),
            g: Some(1.0),
            tau: Some(1.0),
            ..ModelFlags::default()
        };
        assert!(flags.build().is_ok());

        let bad = ModelFlags {
            model: Some("maxwell".into()),
            g: Some(1.0),
            tau: Some(-1.0),
            ..ModelFlags::default()
        };
        assert!(bad.build().is_err());

        let fraction = ModelFlags {
            model: Some("havriliak-negami".into()),
            delta_g: Some(1.0),
            tau: Some(1.0),
            alpha: Some("3/5".into()),
            beta: Some("1/2".into()),
            ..ModelFlags::default()
        };
        let spec = fraction.build().unwrap();
        assert_eq!(spec.alpha, Some(Exact::rational(3, 5)));
    }

    #[test]
    fn catalog_reproduces_the_expected_rows() {
        let rows = catalog_verdicts().unwrap();
        let by_name = |n: &str| rows.iter().find(|(m, _)| m.name.name() == n).unwrap();
        assert_eq!(by_name("maxwell").1.class, VerdictClass::FiniteProny);
        assert_eq!(by_name("sls").1.class, VerdictClass::FiniteProny);
        assert_eq!(
            by_name("power-law").1.reason,
            VerdictReason::DistributionalSpectrum
        );
        assert_eq!(by_name("cole-cole").1.reason, VerdictReason::ResidueCoupling);
        assert_eq!(
            by_name("cole-davidson").1.reason,
            VerdictReason::ResidueCoupling
        );
        assert_eq!(
            by_name("havriliak-negami").1.reason,
            VerdictReason::LatticeMisalignment
        );
        assert_eq!(
            by_name("fractional-zener").1.reason,
            VerdictReason::LatticeMisalignment
        );
        assert_eq!(
            by_name("log-normal").1.reason,
            VerdictReason::EntireNonAffine
        );
    }

    #[test]
    fn seventeen_digit_format_round_trips() {
        for x in [0.1, std::f64::consts::PI, 1.0 / 3.0, 2.5e-13] {
            let s = fmt17(x);
            let back: f64 = s.parse().unwrap();
            assert_eq!(back, x, "{s}");
        }
    }
}
