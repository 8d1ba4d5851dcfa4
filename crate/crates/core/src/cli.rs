//! Command-line front end for the `leverage` binary.
//!
//! Rate flags are given in percent (`--roi 6` is 6%); every file and every
//! JSON payload holds decimals. Exit codes: 0 success, 2 input error,
//! 3 semantic misuse of flags.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::chain::LeverageChain;
use crate::criteria::{Attitude, Criterion, UtilityKind};
use crate::io::{self as files, ChainFile, FileError, RegularityFile, SchemeFile};
use crate::optimizer::{self, LeverageWindow, OptimizationOutcome};
use crate::regularity::Regularity;
use crate::scheme::{roc_leverage_form, CapitalStructure, Decision};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_MISUSE: i32 = 3;

pub fn percent_to_decimal(percent: f64) -> f64 {
    percent / 100.0
}

pub fn decimal_to_percent(decimal: f64) -> f64 {
    decimal * 100.0
}

#[derive(Debug, Parser)]
#[command(
    name = "leverage",
    version,
    about = "Leverage decisions under statistical regularities"
)]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    /// Print only the headline number.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Return on capital of a funded position.
    Roc(RocArgs),
    /// Evaluate a criterion at one decision.
    Eval(EvalArgs),
    /// Optimal leverage over a window at a fixed price.
    Optimize(OptimizeArgs),
    /// See-through leverage and criteria of a leverage chain.
    Chain(ChainArgs),
    /// Dump the consequence matrix of a decision scheme as CSV.
    Scheme(SchemeArgs),
    /// Regularity file utilities.
    #[command(subcommand)]
    Regularity(RegularityCommand),
}

#[derive(Debug, Subcommand)]
enum RegularityCommand {
    /// Build a regularity from a sample series with a sliding window.
    Build(BuildArgs),
}

#[derive(Debug, Args)]
struct RocArgs {
    /// Capital C (currency units, > 0).
    #[arg(long, allow_hyphen_values = true)]
    capital: f64,
    /// Borrowed funds B (currency units, ≥ 0).
    #[arg(long, allow_hyphen_values = true)]
    borrowed: f64,
    /// Return on investment, percent.
    #[arg(long, allow_hyphen_values = true)]
    roi: f64,
    /// Cost of funding, percent; defaults to the cost of capital.
    #[arg(long, allow_hyphen_values = true)]
    cof: Option<f64>,
    /// Cost of capital, percent.
    #[arg(long, allow_hyphen_values = true)]
    coc: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CriterionArg {
    Averse,
    Prone,
    Wald,
    Expected,
}

#[derive(Debug, Args)]
struct CriterionArgs {
    /// Regularity file (JSON).
    #[arg(long)]
    regularity: PathBuf,
    #[arg(long, value_enum)]
    criterion: CriterionArg,
    /// identity, exp:ALPHA or pow:GAMMA; only for `expected`.
    #[arg(long)]
    utility: Option<String>,
    /// Member of the regularity used by `expected` (default 0).
    #[arg(long)]
    dist: Option<usize>,
}

#[derive(Debug, Args)]
struct EvalArgs {
    #[command(flatten)]
    criterion: CriterionArgs,
    /// Leverage u.
    #[arg(long, allow_hyphen_values = true)]
    u: f64,
    /// Price p, percent.
    #[arg(long, allow_hyphen_values = true)]
    price: f64,
}

#[derive(Debug, Args)]
struct OptimizeArgs {
    #[command(flatten)]
    criterion: CriterionArgs,
    /// Smallest admissible leverage
    #[arg(long, allow_hyphen_values = true)]
    u_min: f64,
    /// Largest admissible leverage
    #[arg(long, allow_hyphen_values = true)]
    u_max: f64,
    /// Price p, percent.
    #[arg(long, allow_hyphen_values = true)]
    price: f64,
    /// Use a brute-force search over N leverages instead of the closed form.
    #[arg(long)]
    grid_steps: Option<usize>,
}

#[derive(Debug, Args)]
struct ChainArgs {
    /// Chain file (JSON).
    #[arg(long)]
    chain: PathBuf,
}

#[derive(Debug, Args)]
struct SchemeArgs {
    /// Scheme file (JSON).
    #[arg(long)]
    scheme: PathBuf,
}

#[derive(Debug, Args)]
struct BuildArgs {
    /// One decimal ROI per line; `#` starts a comment.
    #[arg(long)]
    samples: PathBuf,
    /// Samples per window
    #[arg(long)]
    window: usize,
    /// Offset between consecutive window starts
    #[arg(long, default_value_t = 1)]
    stride: usize,
    /// Where to write the regularity file.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug)]
enum CliError {
    Input(String),
    Misuse(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            Self::Input(_) => EXIT_INPUT,
            Self::Misuse(_) => EXIT_MISUSE,
        }
    }

    fn message(&self) -> &str {
        match self {
            Self::Input(m) | Self::Misuse(m) => m,
        }
    }
}

fn input(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

fn in_file(path: &Path, e: impl std::fmt::Display) -> CliError {
    input(format!("{}: {e}", path.display()))
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Roc(a) => cmd_roc(&cli, a),
        Command::Eval(a) => cmd_eval(&cli, a),
        Command::Optimize(a) => cmd_optimize(&cli, a),
        Command::Chain(a) => cmd_chain(&cli, a),
        Command::Scheme(a) => cmd_scheme(&cli, a),
        Command::Regularity(RegularityCommand::Build(a)) => cmd_regularity_build(&cli, a),
    };
    match result {
        Ok(text) => {
            if out.write_all(text.as_bytes()).is_err() {
                return EXIT_INPUT;
            }
            EXIT_OK
        }
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message());
            e.code()
        }
    }
}

fn json_line<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("plain data serializes");
    s.push('\n');
    s
}

/// Percent with four decimals; negative zero prints as zero.
fn pct(decimal: f64) -> String {
    format!("{:.4}%", decimal_to_percent(decimal) + 0.0)
}

fn rate_flag(name: &str, percent: f64) -> Result<f64, CliError> {
    if !percent.is_finite() {
        return Err(input(format!("--{name} must be a finite number")));
    }
    Ok(percent_to_decimal(percent))
}

#[derive(Serialize)]
struct RocReport {
    capital: f64,
    borrowed: f64,
    roi: f64,
    cof: f64,
    coc: f64,
    leverage: f64,
    roc_general: f64,
    roc_leverage_form: f64,
}

fn cmd_roc(cli: &Cli, a: &RocArgs) -> Result<String, CliError> {
    if !(a.capital.is_finite() && a.capital > 0.0) {
        return Err(input(format!(
            "--capital must be positive, got {}",
            a.capital
        )));
    }
    if !(a.borrowed.is_finite() && a.borrowed >= 0.0) {
        return Err(input(format!(
            "--borrowed must be non-negative, got {}",
            a.borrowed
        )));
    }
    let roi = rate_flag("roi", a.roi)?;
    let coc = rate_flag("coc", a.coc)?;
    let cof = match a.cof {
        Some(v) => rate_flag("cof", v)?,
        None => coc,
    };
    let cs = CapitalStructure::new(a.capital, a.borrowed, roi, cof, coc)
        .map_err(|e| input(e.to_string()))?;
    let report = RocReport {
        capital: cs.capital(),
        borrowed: cs.borrowed(),
        roi,
        cof,
        coc,
        leverage: cs.leverage(),
        roc_general: cs.roc(),
        roc_leverage_form: if cof == coc {
            roc_leverage_form(cs.leverage(), roi, coc)
        } else {
            cs.roc_decomposed()
        },
    };
    Ok(if cli.json {
        json_line(&report)
    } else if cli.quiet {
        format!("{}\n", pct(report.roc_general))
    } else {
        format!(
            "LEV                  {:.4}\nROC (general)        {}\nROC (leverage form)  {}\n",
            report.leverage,
            pct(report.roc_general),
            pct(report.roc_leverage_form)
        )
    })
}

fn load_regularity(path: &Path) -> Result<Regularity<f64>, CliError> {
    let text = fs::read_to_string(path).map_err(|e| in_file(path, e))?;
    RegularityFile::from_json(&text)
        .and_then(|f| f.to_regularity())
        .map_err(|e| in_file(path, e))
}

fn build_criterion(a: &CriterionArgs) -> Result<Criterion<f64>, CliError> {
    if a.criterion != CriterionArg::Expected {
        if a.utility.is_some() {
            return Err(CliError::Misuse(
                "--utility is only valid with --criterion expected".into(),
            ));
        }
        if a.dist.is_some() {
            return Err(CliError::Misuse(
                "--dist is only valid with --criterion expected".into(),
            ));
        }
    }
    let q = load_regularity(&a.regularity)?;
    Ok(match a.criterion {
        CriterionArg::Averse => Criterion::Averse(q),
        CriterionArg::Prone => Criterion::Prone(q),
        CriterionArg::Wald => Criterion::Wald(q.grid().clone()),
        CriterionArg::Expected => {
            let utility = match &a.utility {
                Some(s) => s
                    .parse::<UtilityKind<f64>>()
                    .map_err(|e| input(format!("--utility: {e}")))?,
                None => UtilityKind::Identity,
            };
            let index = a.dist.unwrap_or(0);
            let dist = q.members().get(index).cloned().ok_or_else(|| {
                input(format!(
                    "--dist {index} out of range: the regularity has {} members",
                    q.len()
                ))
            })?;
            Criterion::Expected { dist, utility }
        }
    })
}

#[derive(Serialize)]
struct EvalReport<'a> {
    criterion: &'a str,
    u: f64,
    p: f64,
    value: f64,
}

fn cmd_eval(cli: &Cli, a: &EvalArgs) -> Result<String, CliError> {
    let criterion = build_criterion(&a.criterion)?;
    let p = rate_flag("price", a.price)?;
    let d = Decision::new(a.u, p).map_err(|e| input(format!("--u/--price: {e}")))?;
    let report = EvalReport {
        criterion: criterion.name(),
        u: d.u(),
        p: d.p(),
        value: criterion.evaluate(&d),
    };
    Ok(if cli.json {
        json_line(&report)
    } else if cli.quiet {
        format!("{}\n", report.value)
    } else {
        format!(
            "{} criterion at u={} p={}: {} ({})\n",
            report.criterion,
            report.u,
            pct(report.p),
            report.value,
            pct(report.value)
        )
    })
}

#[derive(Serialize)]
struct OptimizeReport {
    best_u: f64,
    best_value: f64,
    edge_case: optimizer::EdgeCase,
}

fn cmd_optimize(cli: &Cli, a: &OptimizeArgs) -> Result<String, CliError> {
    let p = rate_flag("price", a.price)?;
    if a.u_min > a.u_max {
        return Err(input(format!(
            "--u-min {} exceeds --u-max {}",
            a.u_min, a.u_max
        )));
    }
    let window = LeverageWindow::new(a.u_min, a.u_max, p).map_err(|e| input(e.to_string()))?;
    let criterion = build_criterion(&a.criterion)?;
    let outcome: OptimizationOutcome<f64> = match a.grid_steps {
        Some(steps) => optimizer::grid_optimize(&criterion, &window, steps)
            .map_err(|e| input(format!("--grid-steps: {e}")))?,
        None => optimizer::optimize(&criterion, &window)
            .map_err(|e| CliError::Misuse(format!("{e} (pass --grid-steps N)")))?,
    };
    let report = OptimizeReport {
        best_u: outcome.best.u(),
        best_value: outcome.value,
        edge_case: outcome.edge_case,
    };
    Ok(if cli.json {
        json_line(&report)
    } else if cli.quiet {
        format!("{}\n", report.best_u)
    } else {
        format!(
            "best u      {}\nbest value  {} ({})\nedge case   {}\n",
            report.best_u,
            report.best_value,
            pct(report.best_value),
            report.edge_case.as_str()
        )
    })
}

#[derive(Serialize)]
struct ChainReport {
    see_through: f64,
    averse_value: f64,
    prone_value: f64,
}

fn cmd_chain(cli: &Cli, a: &ChainArgs) -> Result<String, CliError> {
    let text = fs::read_to_string(&a.chain).map_err(|e| in_file(&a.chain, e))?;
    let chain: LeverageChain<f64> = ChainFile::from_json(&text)
        .and_then(|f| f.to_chain())
        .map_err(|e| in_file(&a.chain, e))?;
    let report = ChainReport {
        see_through: chain.see_through(),
        averse_value: chain.criterion(Attitude::Averse),
        prone_value: chain.criterion(Attitude::Prone),
    };
    Ok(if cli.json {
        json_line(&report)
    } else if cli.quiet {
        format!("{}\n", report.see_through)
    } else {
        format!(
            "see-through leverage  {}\naverse value          {} ({})\nprone value           {} ({})\n",
            report.see_through,
            report.averse_value,
            pct(report.averse_value),
            report.prone_value,
            pct(report.prone_value)
        )
    })
}

#[derive(Serialize)]
struct SchemeReport<'a> {
    states: &'a [f64],
    decisions: Vec<files::DecisionRecord>,
    consequences: &'a [Vec<f64>],
}

fn cmd_scheme(cli: &Cli, a: &SchemeArgs) -> Result<String, CliError> {
    let text = fs::read_to_string(&a.scheme).map_err(|e| in_file(&a.scheme, e))?;
    let scheme = SchemeFile::from_json(&text)
        .and_then(|f| f.to_scheme::<f64>())
        .map_err(|e| in_file(&a.scheme, e))?;
    if cli.json {
        return Ok(json_line(&SchemeReport {
            states: scheme.grid().states(),
            decisions: scheme
                .decisions()
                .iter()
                .map(|d| files::DecisionRecord { u: d.u(), p: d.p() })
                .collect(),
            consequences: scheme.consequences(),
        }));
    }
    let mut buf = Vec::new();
    files::write_scheme_csv(&scheme, &mut buf).map_err(|e| input(e.to_string()))?;
    Ok(String::from_utf8(buf).expect("csv output is utf-8"))
}

#[derive(Serialize)]
struct BuildReport<'a> {
    members: usize,
    states: usize,
    out: &'a str,
}

fn cmd_regularity_build(cli: &Cli, a: &BuildArgs) -> Result<String, CliError> {
    let file = fs::File::open(&a.samples).map_err(|e| in_file(&a.samples, e))?;
    let samples = files::read_samples(file).map_err(|e| in_file(&a.samples, e))?;
    let q = Regularity::empirical(&samples, a.window, a.stride)
        .map_err(|e| in_file(&a.samples, FileError::Model(e)))?;
    let payload = RegularityFile::from_regularity(&q).to_json() + "\n";
    fs::write(&a.out, payload).map_err(|e| in_file(&a.out, e))?;
    let out = a.out.to_string_lossy();
    Ok(if cli.json {
        json_line(&BuildReport {
            members: q.len(),
            states: q.grid().len(),
            out: &out,
        })
    } else if cli.quiet {
        String::new()
    } else {
        format!(
            "members {}\nstates  {}\nwrote   {}\n",
            q.len(),
            q.grid().len(),
            out
        )
    })
}
