//! `stirzeta`: exact generalized Stirling numbers and rational zeta
//! approximants from the command line.
//!
//! Exit codes: 0 success, 1 verification failure, 2 argument error,
//! 3 I/O error.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::{FromPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;
use stirzeta::arith::{decimal_render, ln_abs_f64, ten_pow_neg};
use stirzeta::stirling::{gen_stirling_butzer, gen_stirling_explicit, gen_stirling_row, stirling1_table};
use stirzeta::verify::{self, Suite};
use stirzeta::zeta::{self, SweepRecord};
use stirzeta::Rational;

#[derive(Parser)]
#[command(name = "stirzeta", version, about = "Exact generalized Stirling numbers and rational zeta approximants")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generalized Stirling number S_n^p of the second kind.
    Snp {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: usize,
        #[arg(long, value_enum, default_value_t = Method::Explicit)]
        method: Method,
        #[arg(long, value_enum, default_value_t = NumFormat::Frac)]
        format: NumFormat,
        #[arg(long, default_value_t = 30)]
        digits: usize,
    },
    /// Signed Stirling number of the first kind s(n, k).
    Stirling1 {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// The rational approximant ζ_N(p).
    Zeta {
        #[arg(long)]
        p: usize,
        #[arg(long = "N")]
        big_n: usize,
        #[arg(long, value_enum, default_value_t = NumFormat::Frac)]
        format: NumFormat,
        #[arg(long, default_value_t = 30)]
        digits: usize,
        /// Replace the two summation limits (4N and N-p) with A,B.
        #[arg(long, value_name = "A,B", value_parser = parse_limits)]
        limit_override: Option<(usize, usize)>,
    },
    /// Error of ζ_N(p) against the oracle over a range of N.
    Sweep {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        n_min: usize,
        #[arg(long)]
        n_max: usize,
        #[arg(long, default_value_t = 4)]
        step: usize,
        /// Output file; records go to stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = SweepFormat::Csv)]
        format: SweepFormat,
        #[arg(long, default_value_t = 30)]
        digits: usize,
    },
    /// Run identity checks.
    Verify {
        #[arg(long, default_value = "all", value_parser = parse_suite)]
        suite: Suite,
    },
    /// Certified value of ζ(p).
    Oracle {
        #[arg(long)]
        p: usize,
        #[arg(long, default_value_t = 30)]
        digits: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Explicit,
    Recurrence,
    Butzer,
}

#[derive(Clone, Copy, ValueEnum)]
enum NumFormat {
    Frac,
    Dec,
}

#[derive(Clone, Copy, ValueEnum)]
enum SweepFormat {
    Csv,
    Json,
}

fn parse_limits(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or("expected A,B")?;
    let a = a.trim().parse().map_err(|e| format!("bad first limit: {e}"))?;
    let b = b.trim().parse().map_err(|e| format!("bad second limit: {e}"))?;
    Ok((a, b))
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse()
}

enum Failure {
    Usage(String),
    Verify,
    Io(String),
}

impl From<stirzeta::Error> for Failure {
    fn from(e: stirzeta::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verify) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match command {
        Command::Snp { n, p, method, format, digits } => {
            let v = match method {
                Method::Explicit => gen_stirling_explicit(n, p)?,
                Method::Recurrence => gen_stirling_row(p, n)?.get(n).clone(),
                Method::Butzer => gen_stirling_butzer(n, p)?,
            };
            writeln!(out, "{}", render(&v, format, digits)?)?;
        }
        Command::Stirling1 { n, k } => {
            if k > n {
                return Err(Failure::Usage(format!("need 0 <= k <= n, got n = {n}, k = {k}")));
            }
            writeln!(out, "{}", stirling1_table(n).get(n, k))?;
        }
        Command::Zeta { p, big_n, format, digits, limit_override } => {
            if p < 2 || big_n < p {
                return Err(Failure::Usage(format!("need N >= p >= 2, got N = {big_n}, p = {p}")));
            }
            let z = match limit_override {
                Some((a, b)) => {
                    eprintln!(
                        "warning: summation limits overridden ({a}, {b} instead of {}, {}); \
                         this is not the standard approximant",
                        4 * big_n,
                        big_n - p
                    );
                    zeta::zeta_n_approx_with_limits(p, big_n, a, b)?
                }
                None => zeta::zeta_n_approx(p, big_n)?,
            };
            writeln!(out, "{}", render(&z.value, format, digits)?)?;
        }
        Command::Sweep { p, n_min, n_max, step, out: path, format, digits } => {
            sweep(p, n_min, n_max, step, path, format, digits, &mut out)?;
        }
        Command::Verify { suite } => {
            let checks = verify::checks(suite);
            let outcomes: Vec<_> = checks.par_iter().map(|c| c.execute()).collect();
            let mut failed = 0;
            for o in &outcomes {
                let tag = if o.passed { "PASS" } else { "FAIL" };
                writeln!(out, "{tag} {}/{}: {}", o.suite, o.name, o.detail)?;
                if !o.passed {
                    failed += 1;
                    writeln!(out, "     violated: {}", o.formula)?;
                }
            }
            writeln!(out, "{} passed, {failed} failed", outcomes.len() - failed)?;
            if failed > 0 {
                return Err(Failure::Verify);
            }
        }
        Command::Oracle { p, digits } => {
            if digits == 0 {
                return Err(Failure::Usage("digits must be >= 1".into()));
            }
            let k = u32::try_from(digits + 5).map_err(|_| Failure::Usage("digits too large".into()))?;
            let z = zeta::zeta_oracle(p, &ten_pow_neg(k))?;
            writeln!(out, "{}", decimal_render(z.center(), digits)?)?;
            writeln!(out, "radius <= 1e-{k}")?;
        }
    }
    out.flush()?;
    Ok(())
}

fn render(q: &Rational, format: NumFormat, digits: usize) -> Result<String, Failure> {
    Ok(match format {
        NumFormat::Frac => q.to_string(),
        NumFormat::Dec => decimal_render(q, digits)?,
    })
}

/// Decimal rendering that keeps at least 12 significant digits of small
/// quantities.
fn render_small(q: &Rational, min_digits: usize) -> Result<String, Failure> {
    let digits = if q.is_zero() {
        min_digits
    } else {
        let lead = (-ln_abs_f64(q) / std::f64::consts::LN_10).ceil().max(0.0) as usize;
        min_digits.max(lead + 12)
    };
    Ok(decimal_render(q, digits)?)
}

#[derive(Serialize)]
struct JsonRecord {
    p: usize,
    #[serde(rename = "N")]
    n: usize,
    numerator: String,
    denominator: String,
    decimal: String,
    oracle_mid: String,
    oracle_radius: String,
    abs_err: String,
}

#[allow(clippy::too_many_arguments)]
fn sweep(
    p: usize,
    n_min: usize,
    n_max: usize,
    step: usize,
    path: Option<PathBuf>,
    format: SweepFormat,
    digits: usize,
    stdout: &mut impl Write,
) -> Result<(), Failure> {
    if step == 0 || n_min > n_max {
        return Err(Failure::Usage(format!("empty range {n_min}..={n_max} step {step}")));
    }
    if p < 2 || n_min < p {
        return Err(Failure::Usage(format!("need N >= p >= 2, got N = {n_min}, p = {p}")));
    }
    // open the file before the (slow) computation so a bad path fails fast
    let sink: Box<dyn Write> = match &path {
        Some(path) => Box::new(BufWriter::new(
            File::create(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?,
        )),
        None => Box::new(io::stdout()),
    };
    let ns: Vec<usize> = (n_min..=n_max).step_by(step).collect();
    let records = ns
        .par_iter()
        .map(|&n| zeta::sweep_record(p, n))
        .collect::<stirzeta::Result<Vec<SweepRecord>>>()?;

    match format {
        SweepFormat::Csv => {
            let mut w = csv::Writer::from_writer(sink);
            w.write_record(["p", "N", "zeta_N_decimal", "abs_err", "ln_abs_err", "ratio_err_eN_over_N"])?;
            for r in &records {
                let ln = Rational::from_f64(ln_abs_f64(&r.abs_err))
                    .ok_or_else(|| Failure::Usage("abs_err is zero".into()))?;
                w.write_record([
                    r.p.to_string(),
                    r.n.to_string(),
                    decimal_render(&r.zeta_n, digits)?,
                    render_small(&r.abs_err, digits)?,
                    decimal_render(&ln, 12)?,
                    render_small(&r.ratio, 12)?,
                ])?;
            }
            w.flush()?;
        }
        SweepFormat::Json => {
            let rows = records
                .iter()
                .map(|r| {
                    Ok(JsonRecord {
                        p: r.p,
                        n: r.n,
                        numerator: r.zeta_n.numer().to_string(),
                        denominator: r.zeta_n.denom().to_string(),
                        decimal: decimal_render(&r.zeta_n, digits)?,
                        oracle_mid: decimal_render(r.oracle.center(), digits)?,
                        oracle_radius: render_small(r.oracle.radius(), digits)?,
                        abs_err: render_small(&r.abs_err, digits)?,
                    })
                })
                .collect::<Result<Vec<_>, Failure>>()?;
            let mut sink = sink;
            serde_json::to_writer_pretty(&mut sink, &rows).map_err(|e| Failure::Io(e.to_string()))?;
            writeln!(sink)?;
            sink.flush()?;
        }
    }

    let summary = match zeta::fit_log_slope(&records) {
        Some(s) => format!("p = {p}: fitted slope of ln(abs_err) vs N = {s:.4} over {} points", records.len()),
        None => format!("p = {p}: {} point(s), no slope fitted", records.len()),
    };
    if path.is_some() {
        writeln!(stdout, "{summary}")?;
    } else {
        eprintln!("{summary}");
    }
    Ok(())
}
