use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use cubicf::cf::partial_quotient;
use cubicf::constants::{bundle, ConstOpts};
use cubicf::convergents::Convergents;
use cubicf::harness::{
    gcd_growth_profile, scan, sufficiency_sweep, verify_distance, verify_growth, verify_theorem1, wakabayashi_compare,
    ScanRecord, TGrid, TheoremOpts, Verdict,
};
use cubicf::modcert::{certify, CertKind};
use cubicf::params::normalize;
use cubicf::{CubicParams, Decision, Error};

#[derive(Parser)]
#[command(
    name = "cubicf",
    version,
    about = "Continued fractions and irrationality bounds for roots of x^3 - t x^2 - a"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: Global,
}

#[derive(Args)]
struct Global {
    /// Working precision of interval constants, in bits.
    #[arg(long, global = true, default_value_t = 256, value_parser = clap::value_parser!(u32).range(24..=65536))]
    precision: u32,
    #[arg(long, global = true, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(100_000..=1_000_000_000))]
    sieve_limit: u64,
    #[arg(long, global = true, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1_000..=1_000_000_000))]
    series_terms: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..=1024))]
    jobs: Option<u64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Clone, Copy)]
struct Pair {
    #[arg(long, allow_hyphen_values = true)]
    t: i64,
    #[arg(long, allow_hyphen_values = true)]
    a: i64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Nice,
    Convenient,
    Perfect,
}

#[derive(Subcommand)]
enum Command {
    /// Reduced coordinates g1, g2, t1, t2, a*.
    Reduce(Pair),
    /// Partial quotients a_i, beta_i for i <= n.
    Cf {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, default_value_t = 20)]
        n: usize,
    },
    /// Convergents p_i, q_i for i <= n.
    Convergents {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, default_value_t = 20)]
        n: usize,
    },
    /// Modular certificate at index k for modulus d.
    Certify {
        #[command(flatten)]
        pair: Pair,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        d: u64,
        #[arg(long, value_enum, default_value_t = Kind::Convenient)]
        kind: Kind,
        /// Window for `perfect`.
        #[arg(long, default_value_t = 0)]
        r: usize,
    },
    /// Certified constants bundle.
    Constants(Pair),
    /// Verification suites.
    #[command(subcommand)]
    Verify(Verify),
    /// Scan c6 < c7^2 over a grid, or run the threshold sufficiency sweep.
    Scan {
        #[arg(long, default_value_t = 20)]
        a_max: i64,
        #[arg(long, default_value_t = -1000, allow_hyphen_values = true)]
        t_min: i64,
        #[arg(long, default_value_t = 1000, allow_hyphen_values = true)]
        t_max: i64,
        #[arg(long, default_value_t = 1)]
        t_step: u64,
        /// Use c2 (starred constants and thresholds).
        #[arg(long)]
        starred: bool,
        /// Check every pair with |t| <= t-max against the thresholds instead
        /// of listing the grid.
        #[arg(long)]
        sweep: bool,
    },
    /// Compare with the classical bound for x^3 + p x + q.
    CompareWak {
        #[arg(long, allow_hyphen_values = true)]
        p: i64,
        #[arg(long, allow_hyphen_values = true)]
        q: i64,
    },
}

#[derive(Subcommand)]
enum Verify {
    Theorem1 {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 60)]
        digit_cap: u32,
        /// Also check q0 .. q0 + range.
        #[arg(long)]
        range: Option<u64>,
    },
    Growth {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, default_value_t = 50)]
        k_max: usize,
    },
    Gcd {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, default_value_t = 200)]
        n_max: usize,
    },
    Distance {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, default_value_t = 25)]
        k_max: usize,
    },
}

const USAGE: u8 = 3;

enum Output {
    Json(String),
    Csv(Vec<u8>),
}

fn json<T: Serialize>(v: &T) -> Result<Output, Error> {
    Ok(Output::Json(serde_json::to_string_pretty(v)?))
}

fn csv_rows<T: Serialize>(rows: impl IntoIterator<Item = T>) -> Result<Output, Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    let buf = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    Ok(Output::Csv(buf))
}

fn params(p: &Pair) -> Result<CubicParams, Error> {
    normalize(p.t, p.a)
}

#[derive(Serialize)]
struct QuotientRow {
    index: usize,
    a: String,
    beta: String,
}

#[derive(Serialize)]
struct ConvergentRow {
    n: usize,
    p: String,
    q: String,
    gcd: String,
}

fn run(cli: &Cli) -> Result<(Output, Verdict), Error> {
    let g = &cli.global;
    let opts = ConstOpts {
        prec: g.precision,
        sieve_limit: g.sieve_limit,
        series_terms: g.series_terms,
        max_prec: g.precision.max(4096),
        max_sieve: g.sieve_limit.max(16_000_000),
    };
    let csv = g.format == Format::Csv;
    let no_csv = || Err(Error::InvalidArgument("this subcommand only writes JSON".into()));
    let pass = Verdict::Pass;
    match &cli.command {
        Command::Reduce(p) => {
            if csv {
                return no_csv();
            }
            Ok((json(&params(p)?.reduce())?, pass))
        }
        Command::Cf { pair, n } => {
            let rp = params(pair)?.require_cf()?;
            let rows: Vec<_> = (0..=*n).map(|i| partial_quotient(&rp, i)).collect();
            let out = if csv {
                csv_rows(rows.iter().map(|q| QuotientRow {
                    index: q.index,
                    a: q.a.to_string(),
                    beta: q.beta.to_string(),
                }))?
            } else {
                json(&rows)?
            };
            Ok((out, pass))
        }
        Command::Convergents { pair, n } => {
            let rp = params(pair)?.require_cf()?;
            let states: Vec<_> = Convergents::new(&rp).take(n + 1).collect();
            let out = if csv {
                csv_rows(states.iter().map(|s| ConvergentRow {
                    n: s.n,
                    p: s.p.to_string(),
                    q: s.q.to_string(),
                    gcd: s.gcd().to_string(),
                }))?
            } else {
                json(&states)?
            };
            Ok((out, pass))
        }
        Command::Certify { pair, k, d, kind, r } => {
            if csv {
                return no_csv();
            }
            let rp = params(pair)?.require_cf()?;
            let kind = match kind {
                Kind::Nice => CertKind::Nice,
                Kind::Convenient => CertKind::Convenient,
                Kind::Perfect => CertKind::Perfect(*r),
            };
            let w = certify(&rp, *k, *d, kind)?;
            let v = if w.ok { Verdict::Pass } else { Verdict::Fail };
            Ok((json(&w)?, v))
        }
        Command::Constants(p) => {
            if csv {
                return no_csv();
            }
            let rp = params(p)?.require_bounds()?;
            Ok((json(&bundle(&rp, &opts)?)?, pass))
        }
        Command::Verify(v) => {
            if csv {
                return no_csv();
            }
            match v {
                Verify::Theorem1 {
                    pair,
                    seed,
                    samples,
                    digit_cap,
                    range,
                } => {
                    let topts = TheoremOpts {
                        consts: opts,
                        digit_cap: *digit_cap,
                        random_samples: *samples,
                        seed: *seed,
                        range: *range,
                    };
                    let r = verify_theorem1(&params(pair)?, &topts)?;
                    Ok((json(&r)?, r.verdict))
                }
                Verify::Growth { pair, k_max } => {
                    let r = verify_growth(&params(pair)?.require_bounds()?, *k_max)?;
                    Ok((json(&r)?, r.verdict))
                }
                Verify::Gcd { pair, n_max } => {
                    let r = gcd_growth_profile(&params(pair)?.require_cf()?, *n_max, &opts)?;
                    Ok((json(&r)?, r.verdict))
                }
                Verify::Distance { pair, k_max } => {
                    let r = verify_distance(&params(pair)?, *k_max, &opts)?;
                    Ok((json(&r)?, r.verdict))
                }
            }
        }
        Command::Scan {
            a_max,
            t_min,
            t_max,
            t_step,
            starred,
            sweep,
        } => {
            if *sweep {
                if csv {
                    return no_csv();
                }
                let r = sufficiency_sweep(*a_max, t_max.abs().max(t_min.abs()), *starred, &opts)?;
                return Ok((json(&r)?, r.verdict));
            }
            let recs = scan(*a_max, &TGrid::new(*t_min, *t_max, *t_step)?, *starred, &opts)?;
            let verdict = recs
                .iter()
                .filter(|r| r.predicted_by_threshold)
                .map(|r| Verdict::from_decision(r.nontrivial))
                .collect();
            let out = if csv {
                let mut buf = Vec::new();
                ScanRecord::write_csv(&recs, &mut buf)?;
                Output::Csv(buf)
            } else {
                json(&recs)?
            };
            Ok((out, verdict))
        }
        Command::CompareWak { p, q } => {
            if csv {
                return no_csv();
            }
            Ok((json(&wakabayashi_compare(*p, *q, &opts)?)?, pass))
        }
    }
}

fn error_code(e: &Error) -> u8 {
    match e {
        Error::PrecisionExhausted { .. } | Error::C7NotOk(Decision::Undetermined) => 2,
        _ => USAGE,
    }
}

fn emit(out: &Output, path: Option<&PathBuf>) -> io::Result<()> {
    let mut w: Box<dyn Write> = match path {
        Some(p) => Box::new(File::create(p)?),
        None => Box::new(io::stdout().lock()),
    };
    match out {
        Output::Json(s) => writeln!(w, "{s}")?,
        Output::Csv(b) => w.write_all(b)?,
    }
    w.flush()
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE } else { 0 });
        }
    };
    if let Some(j) = cli.global.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j as usize).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(USAGE);
        }
    }
    match run(&cli) {
        Ok((out, verdict)) => {
            if let Err(e) = emit(&out, cli.global.output.as_ref()) {
                eprintln!("error: {e}");
                return ExitCode::from(USAGE);
            }
            ExitCode::from(verdict.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(error_code(&e))
        }
    }
}
