use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use fekete::io::{parse_error_term, parse_family_spec, parse_pairs, parse_sequence};
use fekete::limits::verify_split_coverage;
use fekete::{
    builtin_error_term, convex_from_error, fekete_bracket, g_deficit, linear_error_example,
    mu_chain_certificate, rational_slope_sequence_with, scan_violations, threshold_gap_example,
    two_good_chain, ErrorTerm, MuChainCertificate, PairDomain, Rational, SequencePrefix,
    TargetOrder,
};
use serde::Serialize;

/// Exact analysis and construction of nearly subadditive sequences.
///
/// Exit status: 0 on success, 1 when a check finds violations, 2 on usage,
/// input or format errors. FEKETE_THREADS sets the size of the scan pool.
#[derive(Parser)]
#[command(name = "fekete", version)]
struct Cli {
    /// Output format. CSV is tabular and not offered for `limit`.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Lists pairs violating a(n+m) <= a(n) + a(m) + f(n+m) on a pair domain.
    Check {
        #[arg(long)]
        seq: PathBuf,
        /// `zero`, an error-term file, or a family spec such as
        /// `family:floor_power,c=1,delta=1/2` (the `family:` prefix is optional).
        #[arg(long = "f", default_value = "zero")]
        f: String,
        /// `full`, `threshold:N`, `muband:P/Q,N`, `oneplus:N` or `explicit:FILE`.
        #[arg(long, default_value = "full")]
        domain: String,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Brackets lim a(n)/n from a prefix subadditive past N.
    Limit {
        #[arg(long)]
        seq: PathBuf,
        #[arg(long = "N")]
        threshold: usize,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Builds the doubling chains for a mu-band and verifies split coverage.
    CertifyMu {
        #[arg(long)]
        mu: Rational,
        #[arg(long = "N")]
        threshold: usize,
        #[arg(long = "n")]
        base: u64,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Merges {k, ..., k, β} into {n} through 2-good multisets.
    Decompose {
        #[arg(long = "n")]
        n: usize,
        #[arg(long = "k")]
        k: usize,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    #[command(subcommand)]
    Construct(Construct),
    /// The G-transform deficit G(n+m) - G(n) - G(m).
    Gdeficit {
        #[arg(long)]
        seq: PathBuf,
        #[arg(long = "f")]
        f: String,
        #[arg(long = "n")]
        n: usize,
        #[arg(long = "m")]
        m: usize,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum Construct {
    /// a(n) = n·Σ_{i<=n} f(i)/i², with f(1) taken as 0.
    Convex {
        #[arg(long = "f")]
        f: String,
        #[arg(long = "H")]
        horizon: usize,
        #[command(flatten)]
        out: Required,
    },
    /// A prefix whose slopes are distinct and cover r_1..r_K.
    RationalSlopes {
        #[arg(long = "f")]
        f: String,
        #[arg(long = "K")]
        k: usize,
        #[arg(long = "Hmax")]
        h_max: usize,
        #[arg(long, value_enum, default_value_t = Order::Descending)]
        order: Order,
        #[command(flatten)]
        out: Required,
    },
    /// Subadditive on pairs n, m >= N but not on all pairs.
    ThresholdGap {
        #[arg(long = "N")]
        threshold: usize,
        /// Comma-separated anchors n_1 < n_2 < ...
        #[arg(long, value_delimiter = ',', required = true)]
        anchors: Vec<usize>,
        #[arg(long = "H")]
        horizon: usize,
        #[command(flatten)]
        out: Required,
    },
    /// f-subadditive with slopes oscillating between 0 and above L/2.
    LinearError {
        #[arg(long = "f")]
        f: String,
        #[arg(long = "L")]
        l: Rational,
        #[arg(long = "H")]
        horizon: usize,
        #[command(flatten)]
        out: Required,
    },
}

#[derive(Args)]
struct Required {
    #[arg(short = 'o', long = "output")]
    output: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum Order {
    Descending,
    Enumeration,
}

impl From<Order> for TargetOrder {
    fn from(o: Order) -> Self {
        match o {
            Order::Descending => TargetOrder::Descending,
            Order::Enumeration => TargetOrder::Enumeration,
        }
    }
}

enum Outcome {
    Ok,
    CheckFailed,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match configure_threads().and_then(|()| run(&cli)) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::CheckFailed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn configure_threads() -> Result<()> {
    let Ok(raw) = std::env::var("FEKETE_THREADS") else {
        return Ok(());
    };
    if raw.trim().is_empty() {
        return Ok(());
    }
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .with_context(|| format!("FEKETE_THREADS must be a positive integer, got {raw:?}"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .context("configuring the thread pool")
}

fn run(cli: &Cli) -> Result<Outcome> {
    let fmt = cli.format;
    match &cli.command {
        Command::Check {
            seq,
            f,
            domain,
            output,
        } => {
            let a = read_sequence(seq)?;
            let f = error_term(f, a.horizon())?;
            let domain = parse_domain(domain)?;
            let report = scan_violations(&a, Some(&f), &domain)?;
            let csv = || {
                table(
                    "n,m,deficit",
                    report
                        .violations
                        .iter()
                        .map(|v| format!("{},{},{}", v.n, v.m, v.deficit)),
                )
            };
            emit(output.as_deref(), fmt, &report, csv)?;
            if report.is_clean() {
                eprintln!("clean: {} pairs checked", report.pairs_checked);
                Ok(Outcome::Ok)
            } else {
                eprintln!(
                    "{} violations in {} pairs",
                    report.violations.len(),
                    report.pairs_checked
                );
                Ok(Outcome::CheckFailed)
            }
        }
        Command::Limit {
            seq,
            threshold,
            output,
        } => {
            if fmt == Format::Csv {
                bail!("limit has no CSV form; use --format json");
            }
            let bracket = fekete_bracket(&read_sequence(seq)?, *threshold)?;
            emit(output.as_deref(), fmt, &bracket, String::new)?;
            Ok(Outcome::Ok)
        }
        Command::CertifyMu {
            mu,
            threshold,
            base,
            output,
        } => {
            let cert = mu_chain_certificate(mu, *threshold, *base)?;
            let report = CertifyReport {
                guaranteed_from: cert.guaranteed_from(),
                first_uncovered: verify_split_coverage(&cert).err(),
                certificate: &cert,
            };
            let csv = || {
                table(
                    "i,u,v",
                    cert.u
                        .iter()
                        .zip(&cert.v)
                        .enumerate()
                        .map(|(i, (u, v))| format!("{i},{u},{v}")),
                )
            };
            emit(output.as_deref(), fmt, &report, csv)?;
            Ok(Outcome::Ok)
        }
        Command::Decompose { n, k, output } => {
            let chain = two_good_chain(*n, *k)?;
            let csv = || {
                table(
                    "x,y,sum",
                    chain
                        .merge_trace
                        .iter()
                        .map(|(x, y, s)| format!("{x},{y},{s}")),
                )
            };
            emit(output.as_deref(), fmt, &chain, csv)?;
            Ok(Outcome::Ok)
        }
        Command::Construct(c) => construct(c, fmt),
        Command::Gdeficit {
            seq,
            f,
            n,
            m,
            output,
        } => {
            let a = read_sequence(seq)?;
            let f = error_term(f, a.horizon())?;
            let deficit = g_deficit(&a, &f, *n, *m)?;
            let report = GDeficitReport {
                n: *n,
                m: *m,
                deficit,
            };
            let csv = || table("n,m,deficit", [format!("{n},{m},{}", report.deficit)]);
            emit(output.as_deref(), fmt, &report, csv)?;
            Ok(Outcome::Ok)
        }
    }
}

fn construct(c: &Construct, fmt: Format) -> Result<Outcome> {
    match c {
        Construct::Convex { f, horizon, out } => {
            let a = convex_from_error(&error_term(f, *horizon)?, *horizon)?;
            emit_sequence(&out.output, fmt, &a)
        }
        Construct::RationalSlopes {
            f,
            k,
            h_max,
            order,
            out,
        } => {
            let built =
                rational_slope_sequence_with(&error_term(f, *h_max)?, *k, *h_max, (*order).into())?;
            let csv = || sequence_rows(&built.b);
            emit(Some(&out.output), fmt, &built, csv)?;
            Ok(Outcome::Ok)
        }
        Construct::ThresholdGap {
            threshold,
            anchors,
            horizon,
            out,
        } => emit_sequence(
            &out.output,
            fmt,
            &threshold_gap_example(*threshold, anchors, *horizon)?,
        ),
        Construct::LinearError { f, l, horizon, out } => {
            let a = linear_error_example(&error_term(f, *horizon)?, l, *horizon)?;
            emit_sequence(&out.output, fmt, &a)
        }
    }
}

#[derive(Serialize)]
struct CertifyReport<'a> {
    #[serde(flatten)]
    certificate: &'a MuChainCertificate,
    guaranteed_from: u64,
    /// First `z` in some `[u_{i+1}, v_{i+1}]` without a split, if any.
    first_uncovered: Option<u64>,
}

#[derive(Serialize)]
struct GDeficitReport {
    n: usize,
    m: usize,
    deficit: Rational,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_sequence(path: &Path) -> Result<SequencePrefix> {
    parse_sequence(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

/// Resolves `--f`. Families are tabulated on `1..=h`.
fn error_term(spec: &str, h: usize) -> Result<ErrorTerm> {
    if spec == "zero" {
        return Ok(ErrorTerm::zero(h));
    }
    let family =
        |s: &str| -> Result<ErrorTerm> { Ok(builtin_error_term(&parse_family_spec(s)?, h)?) };
    if let Some(rest) = spec.strip_prefix("family:") {
        return family(rest);
    }
    let path = Path::new(spec);
    if path.is_file() {
        return parse_error_term(&read(path)?).with_context(|| format!("parsing {spec}"));
    }
    family(spec).with_context(|| format!("{spec:?} is neither a file nor an error-term family"))
}

fn parse_domain(spec: &str) -> Result<PairDomain> {
    let (kind, arg) = spec.split_once(':').unwrap_or((spec, ""));
    let int = |s: &str| -> Result<usize> {
        s.trim()
            .parse()
            .with_context(|| format!("bad threshold {s:?} in --domain {spec}"))
    };
    let domain = match (kind, arg) {
        ("full", "") => PairDomain::Full,
        ("threshold", n) => PairDomain::threshold(int(n)?)?,
        ("oneplus", n) => PairDomain::one_plus(int(n)?)?,
        ("muband", rest) => {
            let (mu, n) = rest
                .split_once(',')
                .with_context(|| format!("expected muband:P/Q,N, got {spec:?}"))?;
            PairDomain::mu_band(mu.trim().parse()?, int(n)?)?
        }
        ("explicit", path) if !path.is_empty() => {
            parse_pairs(&read(Path::new(path))?).with_context(|| format!("parsing {path}"))?
        }
        _ => bail!("unknown domain {spec:?}"),
    };
    Ok(domain)
}

fn table(header: &str, rows: impl IntoIterator<Item = String>) -> String {
    let mut out = String::from(header);
    out.push('\n');
    for row in rows {
        out.push_str(&row);
        out.push('\n');
    }
    out
}

fn sequence_rows(seq: &SequencePrefix) -> String {
    let mut out = String::new();
    for (i, v) in seq.values().iter().enumerate() {
        writeln!(out, "{},{v}", i + 1).expect("writing to a String");
    }
    out
}

fn emit_sequence(path: &Path, fmt: Format, seq: &SequencePrefix) -> Result<Outcome> {
    emit(Some(path), fmt, seq, || sequence_rows(seq))?;
    Ok(Outcome::Ok)
}

fn emit<T: Serialize>(
    path: Option<&Path>,
    fmt: Format,
    value: &T,
    csv: impl FnOnce() -> String,
) -> Result<()> {
    let text = match fmt {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(value)?;
            s.push('\n');
            s
        }
        Format::Csv => csv(),
    };
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
