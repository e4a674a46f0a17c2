//! Command-line front end. A thin layer over the library; [`run`] returns
//! the process exit status so it can be driven from tests.
//!
//! Exit codes: 0 success, 1 "not divisible" (or a failed experiment
//! invariant), 2 usage error, 3 precision exhaustion.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;

use crate::bounds::{self, BoundReport};
use crate::division::{exact_divide, Verdict};
use crate::error::SpectralError;
use crate::experiment::{self, Profile};
use crate::poly::SparsePoly;
use crate::spectral::{self, PrecisionPolicy};
use crate::text;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NOT_DIVISIBLE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PRECISION: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "lacunary", version, about = "Sparse integer polynomial division and bounds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print f / g when g divides f.
    Divide(PairArgs),
    /// Report whether g divides f.
    Divides(PairArgs),
    /// Tabulate the cofactor bounds for the pair (f, g).
    Bounds {
        #[command(flatten)]
        pair: PairArgs,
        /// Print the full key=value record of every bound.
        #[arg(long)]
        records: bool,
    },
    /// Certify the root-of-unity evaluation lower bound for g.
    Certify {
        #[command(flatten)]
        g: PolyArg,
        #[arg(long = "p-min")]
        p_min: u64,
        #[arg(long = "precision-bits", default_value_t = spectral::DEFAULT_PRECISION_BITS)]
        precision_bits: u32,
    },
    /// Random exact instances as CSV, aborting on any violated bound.
    Experiment {
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value = "desk")]
        profile: Profile,
        /// Record division wall time (makes the output nondeterministic).
        #[arg(long)]
        timing: bool,
    },
    /// Division time against quotient size.
    Bench {
        #[arg(long, default_value = "desk")]
        profile: Profile,
        #[arg(long, default_value_t = 5)]
        repetitions: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Args, Debug)]
struct PairArgs {
    #[arg(long = "f", conflicts_with = "f_file", required_unless_present = "f_file")]
    f: Option<String>,
    #[arg(long = "f-file")]
    f_file: Option<PathBuf>,
    #[command(flatten)]
    g: PolyArg,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args, Debug)]
struct PolyArg {
    #[arg(long = "g", conflicts_with = "g_file", required_unless_present = "g_file")]
    g: Option<String>,
    #[arg(long = "g-file")]
    g_file: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Lines,
}

fn load(inline: &Option<String>, file: &Option<PathBuf>) -> Result<SparsePoly, String> {
    match (inline, file) {
        (Some(expr), _) => text::parse(expr).map_err(|e| e.to_string()),
        (None, Some(path)) => {
            let body = std::fs::read_to_string(path)
                .map_err(|e| format!("{}: {e}", path.display()))?;
            text::parse_lines(&body).map_err(|e| format!("{}: {e}", path.display()))
        }
        (None, None) => Err("missing polynomial".into()),
    }
}

impl PairArgs {
    fn load(&self) -> Result<(SparsePoly, SparsePoly), String> {
        let f = load(&self.f, &self.f_file).map_err(|e| format!("f: {e}"))?;
        let g = self.g.load()?;
        Ok((f, g))
    }
}

impl PolyArg {
    fn load(&self) -> Result<SparsePoly, String> {
        let g = load(&self.g, &self.g_file).map_err(|e| format!("g: {e}"))?;
        if g.is_zero() {
            return Err("g: divisor must be nonzero".into());
        }
        Ok(g)
    }
}

fn render(p: &SparsePoly, format: Format) -> String {
    match format {
        Format::Text => format!("{p}\n"),
        Format::Lines => text::format_lines(p),
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
            } else {
                let _ = write!(out, "{rendered}");
            }
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(Failure(code, message)) => {
            let _ = writeln!(err, "error: {message}");
            code
        }
    }
}

struct Failure(i32, String);

fn usage(message: String) -> Failure {
    Failure(EXIT_USAGE, message)
}

fn io(e: std::io::Error) -> Failure {
    Failure(EXIT_NOT_DIVISIBLE, format!("output: {e}"))
}

fn execute(command: Command, out: &mut dyn Write, _err: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Divide(pair) => {
            let (f, g) = pair.load().map_err(usage)?;
            let outcome = exact_divide(&f, &g).map_err(|e| usage(e.to_string()))?;
            match outcome.verdict() {
                Verdict::Exact(q) => {
                    write!(out, "{}", render(q, pair.format)).map_err(io)?;
                    Ok(EXIT_OK)
                }
                Verdict::NotDivisible(reason) => {
                    writeln!(out, "no ({reason})").map_err(io)?;
                    Ok(EXIT_NOT_DIVISIBLE)
                }
            }
        }
        Command::Divides(pair) => {
            let (f, g) = pair.load().map_err(usage)?;
            let outcome = exact_divide(&f, &g).map_err(|e| usage(e.to_string()))?;
            match outcome.reason() {
                None => {
                    writeln!(out, "yes").map_err(io)?;
                    Ok(EXIT_OK)
                }
                Some(reason) => {
                    writeln!(out, "no ({reason})").map_err(io)?;
                    Ok(EXIT_NOT_DIVISIBLE)
                }
            }
        }
        Command::Bounds { pair, records } => {
            let (f, g) = pair.load().map_err(usage)?;
            let reports = bound_reports(&f, &g).map_err(usage)?;
            writeln!(out, "{:<18}{:<8}log2_bound", "formula", "bounds").map_err(io)?;
            for r in &reports {
                writeln!(
                    out,
                    "{:<18}{:<8}{}",
                    r.formula.name(),
                    r.formula.bounded_norm(),
                    experiment::sci(r.log2_bound)
                )
                .map_err(io)?;
            }
            if records {
                for r in &reports {
                    write!(out, "\n{r}").map_err(io)?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Certify {
            g,
            p_min,
            precision_bits,
        } => {
            let g = g.load().map_err(usage)?;
            let policy = PrecisionPolicy {
                start_bits: precision_bits,
                ..PrecisionPolicy::default()
            };
            match spectral::certify_evaluation_bound_with(&g, p_min, policy) {
                Ok(cert) => {
                    write!(out, "{cert}").map_err(io)?;
                    Ok(EXIT_OK)
                }
                Err(
                    e @ (SpectralError::NoCertificate { .. }
                    | SpectralError::Indeterminate { .. }
                    | SpectralError::PrecisionBudget { .. }),
                ) => Err(Failure(EXIT_PRECISION, e.to_string())),
                Err(e) => Err(usage(e.to_string())),
            }
        }
        Command::Experiment {
            trials,
            seed,
            profile,
            timing,
        } => {
            if trials == 0 {
                return Err(usage("--trials must be at least 1".into()));
            }
            experiment::run_experiment(&mut *out, trials, seed, &profile, timing)
                .map_err(|e| Failure(EXIT_NOT_DIVISIBLE, e.to_string()))?;
            Ok(EXIT_OK)
        }
        Command::Bench {
            profile,
            repetitions,
            seed,
        } => {
            let points = experiment::bench(&profile.bench_sizes(), repetitions.max(5), seed);
            writeln!(out, "quotient_terms,median_ns").map_err(io)?;
            for p in &points {
                writeln!(out, "{},{}", p.quotient_terms, p.median_ns).map_err(io)?;
            }
            writeln!(
                out,
                "# worst growth relative to linear: {:.3}",
                experiment::worst_linearity_ratio(&points)
            )
            .map_err(io)?;
            Ok(EXIT_OK)
        }
    }
}

/// Every bound that applies to the pair: the Mignotte bound is taken at
/// `deg h = deg f - deg g` and the induction bound at the largest possible
/// quotient sparsity.
fn bound_reports(f: &SparsePoly, g: &SparsePoly) -> Result<Vec<BoundReport>, String> {
    let deg_f = f.degree().cloned().unwrap_or_default();
    let deg_g = g.degree().cloned().unwrap_or_default();
    if deg_f < deg_g {
        return Err("deg f must be at least deg g".into());
    }
    let h_degree: BigUint = &deg_f - &deg_g;
    let h_sparsity = usize::try_from(&h_degree + 1u32).unwrap_or(usize::MAX);
    let err = |e: crate::error::BoundError| e.to_string();
    Ok(vec![
        bounds::gelfond_height_bound(f, g).map_err(err)?,
        bounds::mignotte_l1_bound(f, &h_degree).map_err(err)?,
        bounds::induction_height_bound(f, g, h_sparsity).map_err(err)?,
        bounds::sparse_cofactor_l2_log_bound(f, g).map_err(err)?,
    ])
}
