//! Command-line front end for `pcea-core`: allocation tables, threshold
//! sweeps, the axiom battery, award-path data and inequality comparisons.
//!
//! Exit codes: 0 success, 1 usage error, 2 invalid input, 3 the axiom
//! battery disagrees with the bundled expectations.

pub mod commands;
pub mod error;
pub mod input;
pub mod render;

use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use pcea_core::{GenConfig, Ratio, RuleSpec, Threshold};

pub use error::CliError;
pub use input::{parse_input, LoadedProblem};
pub use render::{round_half_even, Format};

/// Threshold used by the axiom battery for rules without their own.
pub const DEFAULT_THRESHOLD: i64 = 20;

#[derive(Debug, Parser)]
#[command(name = "pcea", version, about = "Division rules for claims problems, in exact arithmetic")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Decimal places in rendered values (round half to even).
    #[arg(long, default_value_t = 3)]
    pub precision: u32,
    /// Print exact rationals `p/q` instead of decimals.
    #[arg(long)]
    pub exact: bool,
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl OutputArgs {
    fn format(&self) -> Format {
        Format { precision: self.precision, exact: self.exact }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Award table, one row per rule.
    Allocate {
        /// Problem file (TOML or batch); standard input when absent or `-`.
        input: Option<PathBuf>,
        /// Rule, e.g. `proportional`, `cea`, `cel`, `alpha-min`, `pcea:20`,
        /// `pcea-dual:20`, `dual:cea`. A bare `pcea` takes `--L`.
        #[arg(long = "rule", required = true)]
        rules: Vec<String>,
        #[arg(long = "L")]
        threshold: Option<String>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// P-CEA rows over a grid of thresholds.
    Sweep {
        input: Option<PathBuf>,
        /// Comma-separated thresholds.
        #[arg(long)]
        grid: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run the axiom battery and write a JSON report.
    Axioms {
        #[arg(long = "rule")]
        rule: String,
        /// Threshold for the threshold axioms: a decimal or `c1` (smallest claim).
        #[arg(long = "L")]
        threshold: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random problems per axiom.
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Award-path data as CSV rows `estate,award_1,...`.
    Path {
        #[arg(long = "rule")]
        rule: String,
        /// Comma-separated claims.
        #[arg(long)]
        claims: String,
        /// Number of even steps from zero to the total claim; kinks are added.
        #[arg(long, default_value_t = 20)]
        grid: usize,
        #[arg(long = "L")]
        threshold: Option<String>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Leximin and Lorenz comparison of two rules.
    Compare {
        input: Option<PathBuf>,
        /// Exactly two rules.
        #[arg(long = "rule", required = true, num_args = 1)]
        rules: Vec<String>,
        #[arg(long = "L")]
        threshold: Option<String>,
        #[command(flatten)]
        output: OutputArgs,
    },
}

fn parse_ratio_flag(s: &str, flag: &str) -> Result<Ratio, CliError> {
    s.parse().map_err(|_| CliError::Usage(format!("{flag}: not an exact decimal: {s:?}")))
}

/// Parses a rule name; bare `pcea`/`psi`/`pcea-dual` take the `--L` value.
pub fn resolve_rule(name: &str, threshold: Option<&str>) -> Result<RuleSpec, CliError> {
    let bare = name.trim().to_ascii_lowercase();
    let name = match (bare.as_str(), threshold) {
        ("pcea" | "psi" | "pcea-dual" | "pcea_dual", Some(l)) => format!("{bare}:{l}"),
        ("pcea" | "psi" | "pcea-dual" | "pcea_dual", None) => {
            return Err(CliError::Usage(format!("rule {name} needs a threshold, e.g. {name}:20 or --L 20")))
        }
        _ => name.to_string(),
    };
    Ok(name.parse::<RuleSpec>()?)
}

/// Threshold for the battery: `--L` if given (clamped against the dual
/// problem for dual rules), else the rule's own parameter, `c_1` for
/// alpha-min, and [`DEFAULT_THRESHOLD`] otherwise.
pub fn battery_threshold(rule: &RuleSpec, flag: Option<&str>) -> Result<Threshold, CliError> {
    let dual = matches!(rule, RuleSpec::PceaDual(_) | RuleSpec::DualOf(_));
    match flag.map(str::trim) {
        Some("c1" | "c_1") => Ok(Threshold::smallest_claim()),
        Some(s) => {
            let l = parse_ratio_flag(s, "--L")?;
            Ok(if dual { Threshold::dual(l) } else { Threshold::primal(l) })
        }
        None => Ok(match rule {
            RuleSpec::Pcea(l) => Threshold::primal(l.clone()),
            RuleSpec::PceaDual(l) => Threshold::dual(l.clone()),
            RuleSpec::AlphaMin => Threshold::smallest_claim(),
            _ if dual => Threshold::dual(DEFAULT_THRESHOLD),
            _ => Threshold::primal(DEFAULT_THRESHOLD),
        }),
    }
}

fn read_input(path: Option<&PathBuf>, stdin: &mut dyn Read) -> Result<(String, String), CliError> {
    match path {
        Some(p) if p.as_os_str() != "-" => {
            let name = p.display().to_string();
            let text = std::fs::read_to_string(p).map_err(|source| CliError::Io { path: name.clone(), source })?;
            Ok((text, name))
        }
        _ => {
            let mut text = String::new();
            stdin.read_to_string(&mut text).map_err(|source| CliError::Io { path: "<stdin>".into(), source })?;
            Ok((text, "<stdin>".into()))
        }
    }
}

fn load(path: Option<&PathBuf>, stdin: &mut dyn Read) -> Result<Vec<LoadedProblem>, CliError> {
    let (text, name) = read_input(path, stdin)?;
    parse_input(&text, &name)
}

fn emit(text: &str, out: Option<&PathBuf>, stdout: &mut dyn Write) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io { path: path.display().to_string(), source }),
        None => stdout.write_all(text.as_bytes()).map_err(|source| CliError::Io { path: "<stdout>".into(), source }),
    }
}

/// Executes a parsed command and returns the process exit code.
pub fn execute(cli: Cli, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<u8, CliError> {
    match cli.command {
        Command::Allocate { input, rules, threshold, output } => {
            let rules = rules.iter().map(|r| resolve_rule(r, threshold.as_deref())).collect::<Result<Vec<_>, _>>()?;
            let problems = load(input.as_ref(), stdin)?;
            emit(&commands::allocate_table(&problems, &rules, &output.format())?, output.out.as_ref(), stdout)?;
        }
        Command::Sweep { input, grid, output } => {
            let grid = input::parse_list(&grid, "--grid")?;
            let problems = load(input.as_ref(), stdin)?;
            emit(&commands::sweep(&problems, &grid, &output.format())?, output.out.as_ref(), stdout)?;
        }
        Command::Axioms { rule, threshold, seed, trials, out } => {
            let rule = resolve_rule(&rule, threshold.as_deref())?;
            let threshold = battery_threshold(&rule, threshold.as_deref())?;
            let cfg = GenConfig::with_seed(seed).trials(trials);
            let report = commands::axioms(&rule, threshold, &cfg)?;
            let json = serde_json::to_string_pretty(&report).expect("report serializes") + "\n";
            emit(&json, out.as_ref(), stdout)?;
            if !report.matches_expected {
                for line in commands::mismatch_lines(&report) {
                    let _ = writeln!(stderr, "mismatch: {line}");
                }
                return Ok(3);
            }
        }
        Command::Path { rule, claims, grid, threshold, output } => {
            let rule = resolve_rule(&rule, threshold.as_deref())?;
            let claims = input::parse_list(&claims, "--claims")?;
            emit(&commands::path(&rule, &claims, grid, &output.format())?, output.out.as_ref(), stdout)?;
        }
        Command::Compare { input, rules, threshold, output } => {
            let [a, b] = rules.as_slice() else {
                return Err(CliError::Usage(format!("compare takes exactly two --rule values, got {}", rules.len())));
            };
            let a = resolve_rule(a, threshold.as_deref())?;
            let b = resolve_rule(b, threshold.as_deref())?;
            let problems = load(input.as_ref(), stdin)?;
            emit(&commands::compare(&problems, &a, &b, &output.format())?, output.out.as_ref(), stdout)?;
        }
    }
    Ok(0)
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() { stderr.write_all(rendered.as_bytes()) } else { stdout.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    match execute(cli, stdin, stdout, stderr) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
