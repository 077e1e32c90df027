//! `hsamp` — verification suites and data export for the sampling library.
//!
//! Exit codes: 0 all contracts met, 1 contract violation, 2 usage error
//! (also used by the argument parser), 3 I/O failure.

// `!(x > 0.0)` rejects NaN along with nonpositive values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use std::fs::File;
use std::io::Write;
use std::process::ExitCode;

use heisenberg_sampling::gabor::{
    frame_bounds, tightness_ratio, window_norm_check, IndexRange, WhSystemSpec,
};
use heisenberg_sampling::grid::{GridSpec, GridSignal};
use heisenberg_sampling::plancherel::{
    multiplicity_condition_check, unbounded_witness, ConditionReport, MultiplicityFunction,
};
use heisenberg_sampling::sampling::{
    sinc_by_inversion, sinc_closed_form, write_sinc_csv, InversionConfig,
};
use heisenberg_sampling::signals;
use heisenberg_sampling::superframe::density_gate;
use heisenberg_sampling::verify::{run_all, VerifyConfig};

const EXIT_VIOLATION: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_IO: u8 = 3;

#[derive(Parser)]
#[command(name = "hsamp", version, about = "Sampling theory on the Heisenberg group")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct OutputArgs {
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<String>,
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Tightness, norm-identity and frame-bound checks for the construction
    /// window at translation step h and modulation step d.
    VerifyGabor {
        #[arg(long)]
        h: f64,
        #[arg(long)]
        d: u32,
        /// Grid length (the window [-1, 3) is sampled at 4/n).
        #[arg(long, default_value = "512")]
        n: usize,
        #[arg(long, default_value = "0")]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Evaluate the sinc-type kernel: a single point, a sampled table, or
    /// the closed-form-vs-inversion oracle comparison.
    Sinc {
        /// Evaluate at one point p q t.
        #[arg(long, num_args = 3, value_names = ["P", "Q", "T"])]
        point: Option<Vec<f64>>,
        /// Per-axis sample count of the table over [-1,1]x[-2,2]x[-2,2].
        #[arg(long, default_value = "5")]
        grid: usize,
        /// Compare against both inversion oracles and report the worst gap.
        #[arg(long)]
        check: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Evaluate the multiplicity density criterion.
    Density {
        /// Inline piecewise spec "[a,b]:v;[c,d]:w" or a path to a JSON file.
        #[arg(long, conflicts_with = "unbounded_witness")]
        m: Option<String>,
        /// Use the integrable-but-unbounded counterexample profile.
        #[arg(long)]
        unbounded_witness: bool,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        r: f64,
        /// Midpoint-grid step for the scan.
        #[arg(long, default_value = "1e-3")]
        step: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run the full acceptance suite.
    Report {
        #[arg(long, default_value = "0")]
        seed: u64,
        /// Multiplies all tolerances (values < 1 tighten the contracts).
        #[arg(long, default_value = "1.0")]
        tol_scale: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
}

fn emit(output: &OutputArgs, text: &str) -> Result<(), u8> {
    match &output.out {
        None => {
            println!("{text}");
            Ok(())
        }
        Some(path) => {
            let write = || -> std::io::Result<()> {
                let mut f = File::create(path)?;
                f.write_all(text.as_bytes())?;
                f.write_all(b"\n")
            };
            write().map_err(|e| {
                eprintln!("error: cannot write {path}: {e}");
                EXIT_IO
            })
        }
    }
}

#[derive(Serialize)]
struct GaborReport {
    h: f64,
    d: u32,
    n: usize,
    density_admissible: bool,
    tight_ratio_min: f64,
    tight_ratio_max: f64,
    norm_identity_gap: f64,
    lower_bound: f64,
    upper_bound: f64,
    passed: bool,
}

fn cmd_verify_gabor(h: f64, d: u32, n: usize, seed: u64, output: &OutputArgs) -> Result<bool, u8> {
    if !(h > 0.0) || d == 0 || n < 8 {
        eprintln!("error: need h > 0, d >= 1, n >= 8");
        return Err(EXIT_USAGE);
    }
    if !density_gate(&[h], d) {
        let report = GaborReport {
            h,
            d,
            n,
            density_admissible: false,
            tight_ratio_min: f64::NAN,
            tight_ratio_max: f64::NAN,
            norm_identity_gap: f64::NAN,
            lower_bound: f64::NAN,
            upper_bound: f64::NAN,
            passed: false,
        };
        emit(output, &render_gabor(&report, output.format))?;
        return Ok(false);
    }
    let dx = 4.0 / n as f64;
    let build = || -> heisenberg_sampling::Result<GaborReport> {
        let grid = GridSpec::new(-1.0, dx, n)?;
        let window = GridSignal::indicator(grid, 0.0, h, Complex64::new((d as f64).sqrt(), 0.0))?;
        let mut spec = WhSystemSpec::new(
            h,
            d as f64,
            window,
            IndexRange::symmetric(0),
            IndexRange::symmetric(0),
        )?;
        spec.k_range = spec.full_period_k_range().ok_or_else(|| {
            heisenberg_sampling::Error::InvalidParameter(
                "grid is not DFT-compatible with this d; choose n divisible by 4d".into(),
            )
        })?;
        spec.m_range = spec.covering_m_range();
        let mut rng = signals::rng(seed);
        let tests: Vec<GridSignal> = (0..10)
            .map(|_| signals::random_bandlimited(grid, &mut rng, (0.0, 2.0), 6))
            .collect();
        let ratios = tightness_ratio(&spec, &tests)?;
        let norm_gap = window_norm_check(h, d, &spec.window);
        let bounds = frame_bounds(&spec)?;
        let passed = ratios.max_deviation_from_unit() <= 1e-9 && norm_gap <= 1e-10;
        Ok(GaborReport {
            h,
            d,
            n,
            density_admissible: true,
            tight_ratio_min: ratios.tight_ratio_min,
            tight_ratio_max: ratios.tight_ratio_max,
            norm_identity_gap: norm_gap,
            lower_bound: bounds.lower_bound_estimate,
            upper_bound: bounds.upper_bound_estimate,
            passed,
        })
    };
    match build() {
        Ok(report) => {
            let passed = report.passed;
            emit(output, &render_gabor(&report, output.format))?;
            Ok(passed)
        }
        Err(e) => {
            eprintln!("error: {e}");
            Err(EXIT_USAGE)
        }
    }
}

fn render_gabor(report: &GaborReport, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(report).expect("serializable"),
        Format::Csv => format!(
            "h,d,n,density_admissible,tight_ratio_min,tight_ratio_max,norm_identity_gap,lower_bound,upper_bound,passed\n{},{},{},{},{},{},{},{},{},{}",
            report.h,
            report.d,
            report.n,
            report.density_admissible,
            report.tight_ratio_min,
            report.tight_ratio_max,
            report.norm_identity_gap,
            report.lower_bound,
            report.upper_bound,
            report.passed
        ),
    }
}

fn cmd_sinc(
    point: Option<Vec<f64>>,
    grid: usize,
    check: bool,
    output: &OutputArgs,
) -> Result<bool, u8> {
    if check {
        let icfg = InversionConfig::default();
        let mut worst = 0.0f64;
        let axis = |lo: f64, hi: f64, n: usize| -> Vec<f64> {
            (0..n)
                .map(|i| lo + (hi - lo) * i as f64 / (n.max(2) - 1) as f64)
                .collect()
        };
        for &p in &axis(-1.0, 1.0, grid) {
            for &q in &axis(-2.0, 2.0, grid) {
                if q == 0.0 {
                    continue;
                }
                for &t in &axis(-2.0, 2.0, grid) {
                    let closed = sinc_closed_form(p, q, t).value;
                    let o = sinc_by_inversion(p, q, t, &icfg);
                    worst = worst
                        .max((o.semi_analytic - closed).abs())
                        .max((o.double_numeric - closed).abs());
                }
            }
        }
        let passed = worst <= 1e-6;
        emit(
            output,
            &format!("max oracle gap {worst:.3e} over {grid}^3 grid (tolerance 1e-6)"),
        )?;
        return Ok(passed);
    }
    if let Some(coords) = point {
        let ev = sinc_closed_form(coords[0], coords[1], coords[2]);
        emit(output, &format!("{}", ev.value))?;
        return Ok(true);
    }
    // Table over the rectangular box.
    let axis = |lo: f64, hi: f64| -> Vec<f64> {
        (0..grid)
            .map(|i| lo + (hi - lo) * i as f64 / (grid.max(2) - 1) as f64)
            .collect()
    };
    let mut pts = Vec::new();
    for &p in &axis(-1.0, 1.0) {
        for &q in &axis(-2.0, 2.0) {
            for &t in &axis(-2.0, 2.0) {
                pts.push((p, q, t));
            }
        }
    }
    let text = match output.format {
        Format::Csv => {
            let mut buf = Vec::new();
            write_sinc_csv(&mut buf, &pts).map_err(|e| {
                eprintln!("error: {e}");
                EXIT_IO
            })?;
            String::from_utf8(buf).expect("ascii table")
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Row {
                p: f64,
                q: f64,
                t: f64,
                value: f64,
                branch: &'static str,
            }
            let rows: Vec<Row> = pts
                .iter()
                .map(|&(p, q, t)| {
                    let ev = sinc_closed_form(p, q, t);
                    Row {
                        p,
                        q,
                        t,
                        value: ev.value,
                        branch: ev.branch.label(),
                    }
                })
                .collect();
            serde_json::to_string_pretty(&rows).expect("serializable")
        }
    };
    emit(output, text.trim_end())?;
    Ok(true)
}

fn parse_multiplicity(text: &str) -> Result<MultiplicityFunction, String> {
    if !text.trim_start().starts_with('[') {
        // Treat as a path to a JSON document.
        let body = std::fs::read_to_string(text).map_err(|e| format!("cannot read {text}: {e}"))?;
        return serde_json::from_str(&body).map_err(|e| format!("bad multiplicity JSON: {e}"));
    }
    // Inline "[a,b]:v;[c,d]:w" — disjoint bands, merged into one profile.
    let mut segments: Vec<(f64, f64, u32)> = Vec::new();
    for part in text.split(';') {
        let part = part.trim();
        let (range, value) = part
            .rsplit_once(':')
            .ok_or_else(|| format!("segment '{part}' is not [a,b]:v"))?;
        let range = range
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| format!("segment '{part}' is not [a,b]:v"))?;
        let (a, b) = range
            .split_once(',')
            .ok_or_else(|| format!("range '{range}' is not a,b"))?;
        let a: f64 = a.trim().parse().map_err(|e| format!("bad endpoint: {e}"))?;
        let b: f64 = b.trim().parse().map_err(|e| format!("bad endpoint: {e}"))?;
        let v: u32 = value.trim().parse().map_err(|e| format!("bad value: {e}"))?;
        segments.push((a, b, v));
    }
    segments.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
    let mut breakpoints = Vec::new();
    let mut values = Vec::new();
    for (a, b, v) in segments {
        if let Some(&last) = breakpoints.last() {
            if a < last {
                return Err("bands must be disjoint".into());
            }
            if a > last {
                breakpoints.push(a);
                values.push(0);
            }
        } else {
            breakpoints.push(a);
        }
        breakpoints.push(b);
        values.push(v);
    }
    MultiplicityFunction::piecewise(breakpoints, values).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct DensityOutput {
    satisfied: bool,
    worst_h: f64,
    worst_value: f64,
    bound: f64,
}

fn cmd_density(
    m: Option<String>,
    witness: bool,
    d: u32,
    r: f64,
    step: f64,
    output: &OutputArgs,
) -> Result<bool, u8> {
    if d == 0 || !(r > 0.0) || !(step > 0.0) {
        eprintln!("error: need d >= 1, r > 0, step > 0");
        return Err(EXIT_USAGE);
    }
    let profile = if witness {
        unbounded_witness()
    } else {
        match m {
            None => {
                eprintln!("error: provide --m or --unbounded-witness");
                return Err(EXIT_USAGE);
            }
            Some(text) => parse_multiplicity(&text).map_err(|e| {
                eprintln!("error: {e}");
                EXIT_USAGE
            })?,
        }
    };
    let report: ConditionReport = multiplicity_condition_check(&profile, d, r, step);
    let out = DensityOutput {
        satisfied: report.satisfied,
        worst_h: report.worst_h,
        worst_value: report.worst_value,
        bound: report.bound,
    };
    let text = match output.format {
        Format::Json => serde_json::to_string_pretty(&out).expect("serializable"),
        Format::Csv => format!(
            "satisfied,worst_h,worst_value,bound\n{},{},{},{}",
            out.satisfied, out.worst_h, out.worst_value, out.bound
        ),
    };
    emit(output, &text)?;
    Ok(report.satisfied)
}

#[derive(Serialize)]
struct ReportDocument<'a> {
    schema: &'static str,
    seed: u64,
    tol_scale: f64,
    passed: bool,
    criteria: &'a [heisenberg_sampling::verify::CriterionOutcome],
}

fn cmd_report(seed: u64, tol_scale: f64, output: &OutputArgs) -> Result<bool, u8> {
    let cfg = VerifyConfig { seed, tol_scale };
    let outcomes = run_all(&cfg);
    let passed = outcomes.iter().all(|o| o.passed);
    let text = match output.format {
        Format::Json => {
            let doc = ReportDocument {
                schema: "1",
                seed,
                tol_scale,
                passed,
                criteria: &outcomes,
            };
            serde_json::to_string_pretty(&doc).expect("serializable")
        }
        Format::Csv => {
            let mut lines = vec!["id,name,passed,measured,threshold,seconds".to_string()];
            for o in &outcomes {
                lines.push(format!(
                    "{},{},{},{},{},{:.3}",
                    o.id, o.name, o.passed, o.measured, o.threshold, o.seconds
                ));
            }
            lines.join("\n")
        }
    };
    emit(output, &text)?;
    Ok(passed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::VerifyGabor {
            h,
            d,
            n,
            seed,
            output,
        } => cmd_verify_gabor(h, d, n, seed, &output),
        Command::Sinc {
            point,
            grid,
            check,
            output,
        } => cmd_sinc(point, grid, check, &output),
        Command::Density {
            m,
            unbounded_witness,
            d,
            r,
            step,
            output,
        } => cmd_density(m, unbounded_witness, d, r, step, &output),
        Command::Report {
            seed,
            tol_scale,
            output,
        } => cmd_report(seed, tol_scale, &output),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_VIOLATION),
        Err(code) => ExitCode::from(code),
    }
}
