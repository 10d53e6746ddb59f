//! Command-line front end: validation, θ computation, uncertainty reports,
//! the verification suite, grid sampling, angle scans, and phase-space
//! ellipse data as JSON/CSV.
//!
//! Exit codes: 0 success, 1 verification failure, 2 invalid input.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde::Serialize;

use wpkit::observables::uncertainty_report;
use wpkit::params::GaussianParams;
use wpkit::rotation::{optimal_theta, rotate_params};
use wpkit::verify::{run_suites, VerifyOptions, DEFAULT_SEED, DEFAULT_TRIALS};
use wpkit::wavepacket::WavePacket;
use wpkit::EllipseSpec;

#[derive(Parser)]
#[command(
    name = "wpkit",
    version,
    about = "Gaussian wave-packet uncertainty toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    params: ParamFlags,
}

#[derive(Args)]
struct ParamFlags {
    /// Re(A), the width parameter
    #[arg(
        long = "A-re",
        default_value_t = 0.0,
        global = true,
        allow_negative_numbers = true
    )]
    a_re: f64,
    /// Im(A)
    #[arg(
        long = "A-im",
        default_value_t = 0.0,
        global = true,
        allow_negative_numbers = true
    )]
    a_im: f64,
    /// Re(B), the cowidth parameter
    #[arg(
        long = "B-re",
        default_value_t = 0.0,
        global = true,
        allow_negative_numbers = true
    )]
    b_re: f64,
    /// Im(B)
    #[arg(
        long = "B-im",
        default_value_t = 0.0,
        global = true,
        allow_negative_numbers = true
    )]
    b_im: f64,
    /// Semiclassical parameter
    #[arg(long, default_value_t = 1.0, global = true)]
    hbar: f64,
    /// Mean position
    #[arg(
        long,
        default_value_t = 0.0,
        global = true,
        allow_negative_numbers = true
    )]
    a: f64,
    /// Mean momentum
    #[arg(
        long,
        default_value_t = 0.0,
        global = true,
        allow_negative_numbers = true
    )]
    eta: f64,
    /// Tolerance on |Re(conj(A)·B) − 1|
    #[arg(long, default_value_t = 1e-12, global = true)]
    tol: f64,
    /// Pretty-print JSON output
    #[arg(long, global = true)]
    json_pretty: bool,
}

impl ParamFlags {
    fn build(&self) -> Result<GaussianParams, wpkit::ParamsError> {
        GaussianParams::validate(
            Complex64::new(self.a_re, self.a_im),
            Complex64::new(self.b_re, self.b_im),
            self.hbar,
            self.a,
            self.eta,
            self.tol,
        )
    }
}

#[derive(Subcommand)]
enum Command {
    /// Optimal rotation angle θ = ½·atan2(2·Im(BĀ), |B|²−|A|²) as JSON
    Theta,
    /// Uncertainty report for φ_k (θ defaults to the optimal angle) as JSON
    Report {
        /// Excitation index
        #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u64).range(0..=64))]
        k: u64,
        /// Rotation angle in radians (default: optimal)
        #[arg(long, allow_negative_numbers = true)]
        theta: Option<f64>,
    },
    /// Run the randomized property suites; exit 0 iff every suite passes
    Verify {
        /// RNG seed (the WPKIT_SEED environment variable wins over this)
        #[arg(long)]
        seed: Option<u64>,
        /// Number of random parameter sets
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: usize,
        #[arg(long, hide = true)]
        tamper: bool,
    },
    /// Sample φ_k on a grid as CSV (columns x, re, im, abs2)
    Sample {
        #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u64).range(0..=64))]
        k: u64,
        /// Left edge (default: a − 10·max(Δx, √ħ))
        #[arg(long, allow_negative_numbers = true)]
        xmin: Option<f64>,
        /// Right edge (default: a + 10·max(Δx, √ħ))
        #[arg(long, allow_negative_numbers = true)]
        xmax: Option<f64>,
        #[arg(long, default_value_t = 1001)]
        points: usize,
    },
    /// Scan |A(t)|, |B(t)| over t ∈ [0, π) as CSV
    Scan {
        #[arg(long, default_value_t = 1024)]
        points: usize,
    },
    /// Phase-space ellipse (center, tilt, semiaxes, boundary) as JSON
    Ellipse,
}

#[derive(Serialize)]
struct ThetaOutput {
    theta: f64,
    im_ba: f64,
    mod_a: f64,
    mod_b: f64,
}

#[derive(Serialize)]
struct ReportOutput {
    #[serde(flatten)]
    report: wpkit::UncertaintyReport,
    residual_min: f64,
}

fn emit_json<T: Serialize>(value: &T, pretty: bool) {
    let text = if pretty {
        serde_json::to_string_pretty(value)
    } else {
        serde_json::to_string(value)
    }
    .expect("payloads are plain finite numbers");
    println!("{text}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Box<dyn std::error::Error>> {
    match cli.command {
        Command::Theta => {
            let p = cli.params.build()?;
            emit_json(
                &ThetaOutput {
                    theta: optimal_theta(&p).radians(),
                    im_ba: p.im_ba(),
                    mod_a: p.width().norm(),
                    mod_b: p.cowidth().norm(),
                },
                cli.params.json_pretty,
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Report { k, theta } => {
            let p = cli.params.build()?;
            let k = k as usize;
            let theta = theta.unwrap_or_else(|| optimal_theta(&p).radians());
            let report = uncertainty_report(&p, k, theta);
            let target = 0.5 * p.hbar() * (2 * k + 1) as f64;
            let residual_min = (report.product_alphabeta - target).abs();
            emit_json(
                &ReportOutput {
                    report,
                    residual_min,
                },
                cli.params.json_pretty,
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            seed,
            trials,
            tamper,
        } => {
            let seed = std::env::var("WPKIT_SEED")
                .ok()
                .and_then(|s| s.parse().ok())
                .or(seed)
                .unwrap_or(DEFAULT_SEED);
            let outcomes = run_suites(&VerifyOptions {
                seed,
                trials,
                tamper,
            });
            println!(
                "{:<32} {:>8} {:>14} {:>10}  result",
                "suite", "cases", "max_residual", "tolerance"
            );
            let mut all_passed = true;
            for o in &outcomes {
                println!(
                    "{:<32} {:>8} {:>14.3e} {:>10.1e}  {}",
                    o.name,
                    o.cases,
                    o.max_residual,
                    o.tolerance,
                    if o.passed() { "PASS" } else { "FAIL" }
                );
                all_passed &= o.passed();
            }
            if all_passed {
                println!("verify: all {} suites passed (seed {seed})", outcomes.len());
                Ok(ExitCode::SUCCESS)
            } else {
                for o in outcomes.iter().filter(|o| !o.passed()) {
                    eprintln!("verify: FAIL {}", o.name);
                }
                Ok(ExitCode::from(1))
            }
        }
        Command::Sample {
            k,
            xmin,
            xmax,
            points,
        } => {
            let p = cli.params.build()?;
            if points < 2 {
                return Err(format!("need at least 2 grid points, got {points}").into());
            }
            let k = k as usize;
            let spread = (p.hbar() / 2.0).sqrt() * p.width().norm() * ((2 * k + 1) as f64).sqrt();
            let default_half = 10.0 * spread.max(p.hbar().sqrt());
            let lo = xmin.unwrap_or(p.center() - default_half);
            let hi = xmax.unwrap_or(p.center() + default_half);
            if hi <= lo || hi.is_nan() || lo.is_nan() {
                return Err(format!("empty grid: xmin = {lo}, xmax = {hi}").into());
            }
            let wp = WavePacket::excited(p, k);
            let step = (hi - lo) / (points - 1) as f64;
            println!("x,re,im,abs2");
            for i in 0..points {
                let x = lo + i as f64 * step;
                let v = wp.evaluate_at(x);
                println!("{x},{},{},{}", v.re, v.im, v.norm_sqr());
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Scan { points } => {
            let p = cli.params.build()?;
            if points < 2 {
                return Err(format!("need at least 2 scan points, got {points}").into());
            }
            let step = std::f64::consts::PI / points as f64;
            println!("t,mod_a,mod_b,product,im_ba");
            let mut best = (0.0f64, f64::INFINITY);
            for i in 0..points {
                let t = i as f64 * step;
                let r = rotate_params(&p, t);
                let (mod_a, mod_b) = (r.width().norm(), r.cowidth().norm());
                let product = mod_a * mod_b;
                if product < best.1 {
                    best = (t, product);
                }
                println!("{t},{mod_a},{mod_b},{product},{}", r.im_ba());
            }
            println!(
                "# argmin_t={} argmin_product={} optimal_theta={}",
                best.0,
                best.1,
                optimal_theta(&p).radians()
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Ellipse => {
            let p = cli.params.build()?;
            emit_json(&EllipseSpec::from_params(&p), cli.params.json_pretty);
            Ok(ExitCode::SUCCESS)
        }
    }
}
