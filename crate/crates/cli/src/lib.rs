//! Command implementations for the `iel` binary.
//!
//! Each `cmd_*` function returns the exact bytes to print and the exit code,
//! so the binary is a thin wrapper around [`run`].

use std::io::Read;

use clap::{Args, Parser, Subcommand, ValueEnum};
use iel_core::analyzer::{coefficients, family_at_least, family_even, family_odd, CardinalitySet};
use iel_core::eval::{dot, format_set};
use iel_core::render::{combination_latex, combination_text};
use iel_core::{
    analyze, eval_charset, eval_expr, i_vector, indicator_sequence, parse, render_json,
    render_latex, render_text, sigma_vector, Arity, IelDecision, SetSequence, DEFAULT_MAX_ARITY,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NOT_LIKE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

pub const DEFAULT_TRIALS: usize = 1000;
pub const DEFAULT_UNIVERSE: u32 = 10;
pub const DEFAULT_SEED: u64 = 0;
pub const MAX_UNIVERSE: u32 = 16;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] iel_core::Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type CliResult<T> = Result<T, CliError>;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Latex,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyKind {
    AtLeast,
    Even,
    Odd,
}

/// What a command prints and how the process should exit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub code: i32,
}

impl Output {
    fn new(mut stdout: String, code: i32) -> Self {
        if !stdout.ends_with('\n') {
            stdout.push('\n');
        }
        Output { stdout, code }
    }
}

/// Settings shared by the pipeline commands.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliConfig {
    pub n: usize,
    pub format: Format,
    pub seed: u64,
    pub trials: usize,
    pub universe: u32,
    pub nmax: usize,
}

impl CliConfig {
    pub fn new(n: usize) -> Self {
        CliConfig {
            n,
            format: Format::Text,
            seed: DEFAULT_SEED,
            trials: DEFAULT_TRIALS,
            universe: DEFAULT_UNIVERSE,
            nmax: DEFAULT_MAX_ARITY,
        }
    }

    pub fn format(mut self, format: Format) -> Self {
        self.format = format;
        self
    }

    pub fn validate(&self) -> CliResult<Arity> {
        if self.trials == 0 {
            return Err(CliError::Config("trial count must be at least 1".into()));
        }
        if !(1..=MAX_UNIVERSE).contains(&self.universe) {
            return Err(CliError::Config(format!(
                "universe size must be in 1..={MAX_UNIVERSE}"
            )));
        }
        Ok(Arity::with_max(self.n, self.nmax)?)
    }
}

/// Full analysis of one expression. Exit code 0 when inclusion-exclusion-like, 1 otherwise.
pub fn cmd_analyze(expr_text: &str, cfg: &CliConfig) -> CliResult<Output> {
    let n = cfg.validate()?;
    let analysis = analyze(expr_text, n)?;
    let report = analysis.report();
    let stdout = match cfg.format {
        Format::Text => render_text(&report),
        Format::Latex => render_latex(&report),
        Format::Json => render_json(&report),
    };
    let code = if report.iel { EXIT_OK } else { EXIT_NOT_LIKE };
    Ok(Output::new(stdout, code))
}

/// Prints the serialized characteristic set.
pub fn cmd_charset(expr_text: &str, cfg: &CliConfig) -> CliResult<Output> {
    let n = cfg.validate()?;
    let analysis = analyze(expr_text, n)?;
    let json = serde_json::to_string(&analysis.charset.serialize()).expect("index lists serialize");
    Ok(Output::new(json, EXIT_OK))
}

#[derive(Debug, Serialize)]
struct VerifyRecord {
    n: usize,
    expression: String,
    iel: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    coefficients: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness_in: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness_out: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness_confirmed: Option<bool>,
    seed: u64,
    universe: u32,
    trials: usize,
    passed: usize,
    failed: usize,
}

/// Runs the pipeline and checks the result on random sequences.
///
/// Each trial draws a sequence from a ChaCha8 generator seeded with
/// `cfg.seed` and checks that the expression and its characteristic set
/// evaluate to the same set; when a coefficient identity exists it is
/// checked as well. A non-identity additionally has its witness pair
/// re-derived. Exit code 0 only if everything passes.
pub fn cmd_verify(expr_text: &str, cfg: &CliConfig) -> CliResult<Output> {
    let n = cfg.validate()?;
    let analysis = analyze(expr_text, n)?;
    let report = analysis.report();
    let expr = &analysis.expr;
    let s = &analysis.charset;

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut passed = 0;
    for _ in 0..cfg.trials {
        let a = SetSequence::random(n, cfg.universe, &mut rng);
        let value = eval_expr(expr, &a)?;
        let mut ok = value == eval_charset(s, &a)?;
        if let Some(c) = analysis.decision.coeffs() {
            ok &= value.len() as i64 == dot(c, &i_vector(&a))?;
        }
        passed += usize::from(ok);
    }
    let failed = cfg.trials - passed;

    let mut witness_line = None;
    let witness_confirmed = match &analysis.decision {
        IelDecision::IsLike { .. } => None,
        IelDecision::NotLike {
            witness_in,
            witness_out,
        } => {
            let a_in = indicator_sequence(*witness_in, n)?;
            let a_out = indicator_sequence(*witness_out, n)?;
            let (i_in, i_out) = (i_vector(&a_in), i_vector(&a_out));
            let (size_in, size_out) = (
                eval_expr(expr, &a_in)?.len(),
                eval_expr(expr, &a_out)?.len(),
            );
            let confirmed = i_in == i_out && size_in == 1 && size_out == 0;
            witness_line = Some(format!(
                "witness {}: i-vectors {i_in} and {i_out}, |E(A)| = {size_in} vs {size_out}",
                if confirmed { "confirmed" } else { "REJECTED" }
            ));
            Some(confirmed)
        }
    };

    let all_pass = failed == 0 && witness_confirmed != Some(false);
    let code = if all_pass { EXIT_OK } else { EXIT_NOT_LIKE };
    let stdout = match cfg.format {
        Format::Json => {
            let record = VerifyRecord {
                n: n.get(),
                expression: report.expression.clone(),
                iel: report.iel,
                coefficients: report.iel.then(|| report.coefficients.clone()),
                witness_in: report.witness_in.clone(),
                witness_out: report.witness_out.clone(),
                witness_confirmed,
                seed: cfg.seed,
                universe: cfg.universe,
                trials: cfg.trials,
                passed,
                failed,
            };
            serde_json::to_string(&record).expect("record serializes")
        }
        Format::Text | Format::Latex => {
            let mut lines = vec![if cfg.format == Format::Latex {
                render_latex(&report)
            } else {
                render_text(&report)
            }];
            lines.extend(witness_line);
            lines.push(format!(
                "trials: {passed}/{} pass (universe {}, seed {})",
                cfg.trials, cfg.universe, cfg.seed
            ));
            lines.join("\n")
        }
    };
    Ok(Output::new(stdout, code))
}

#[derive(Debug, Serialize)]
struct FamilyRecord {
    family: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    m: Option<usize>,
    n: usize,
    coefficients: Vec<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    cross_check: Option<bool>,
}

/// Closed-form coefficients of a generalized inclusion-exclusion family.
///
/// With `cross_check`, compares against the coefficients computed from the
/// corresponding cardinality set; a mismatch exits with code 1.
pub fn cmd_family(
    kind: FamilyKind,
    m: Option<usize>,
    n: usize,
    nmax: usize,
    format: Format,
    cross_check: bool,
) -> CliResult<Output> {
    let arity = Arity::with_max(n, nmax)?;
    let (name, closed, levels) = match (kind, m) {
        (FamilyKind::AtLeast, Some(m)) => (
            "at-least",
            family_at_least(m, arity)?,
            CardinalitySet::at_least(m, arity)?,
        ),
        (FamilyKind::AtLeast, None) => {
            return Err(CliError::Config("family at-least requires --m".into()))
        }
        (_, Some(_)) => {
            return Err(CliError::Config(
                "--m is only valid for family at-least".into(),
            ))
        }
        (FamilyKind::Even, None) => ("even", family_even(arity)?, CardinalitySet::evens(arity)),
        (FamilyKind::Odd, None) => ("odd", family_odd(arity)?, CardinalitySet::odds(arity)),
    };
    let agrees = if cross_check {
        Some(coefficients(&levels)? == closed)
    } else {
        None
    };
    let c = closed.as_slice();
    let stdout = match format {
        Format::Json => serde_json::to_string(&FamilyRecord {
            family: name,
            m,
            n,
            coefficients: c.to_vec(),
            cross_check: agrees,
        })
        .expect("record serializes"),
        Format::Text => {
            let lhs = match (kind, m) {
                (FamilyKind::AtLeast, Some(m)) => format!("|{{x : #{{j : x ∈ A_j}} >= {m}}}|"),
                (FamilyKind::Even, _) => "|{x : #{j : x ∈ A_j} even, nonzero}|".to_string(),
                _ => "|{x : #{j : x ∈ A_j} odd}|".to_string(),
            };
            let mut out = format!("c = {closed}\n{lhs} = {}", combination_text(n, c));
            if let Some(ok) = agrees {
                out.push_str(if ok {
                    "\ncross-check: ok"
                } else {
                    "\ncross-check: MISMATCH"
                });
            }
            out
        }
        Format::Latex => {
            let cond = match (kind, m) {
                (FamilyKind::AtLeast, Some(m)) => format!("\\geq {m}"),
                (FamilyKind::Even, _) => "\\text{ even}".to_string(),
                _ => "\\text{ odd}".to_string(),
            };
            format!(
                "|\\{{x : |\\{{j : x \\in A_j\\}}| {cond}\\}}| = {}",
                combination_latex(n, c)
            )
        }
    };
    let code = if agrees == Some(false) {
        EXIT_NOT_LIKE
    } else {
        EXIT_OK
    };
    Ok(Output::new(stdout, code))
}

#[derive(Debug, Serialize)]
struct EvalRecord {
    n: usize,
    expression: String,
    value: Vec<u32>,
    i: Vec<u64>,
    sigma: Vec<u64>,
}

/// Evaluates an expression on a sequence given as JSON (`[[1,2],[2,3],[3]]`).
///
/// The arity is the number of sets; an explicit `n` must agree with it.
pub fn cmd_eval(
    expr_text: &str,
    sequence_json: &str,
    n: Option<usize>,
    nmax: usize,
    format: Format,
) -> CliResult<Output> {
    let a = SetSequence::from_json(sequence_json, nmax)?;
    if let Some(n) = n {
        if n != a.arity().get() {
            return Err(iel_core::Error::ArityMismatch {
                left: n,
                right: a.arity().get(),
            }
            .into());
        }
    }
    let expr = parse(expr_text, a.arity())?;
    let value = eval_expr(&expr, &a)?;
    let (i, sigma) = (i_vector(&a), sigma_vector(&a));
    let stdout = match format {
        Format::Json => serde_json::to_string(&EvalRecord {
            n: a.arity().get(),
            expression: expr.to_string(),
            value: value.iter().copied().collect(),
            i: i.as_slice().to_vec(),
            sigma: sigma.as_slice().to_vec(),
        })
        .expect("record serializes"),
        Format::Text => format!("value: {}\ni: {i}\nsigma: {sigma}", format_set(&value)),
        Format::Latex => {
            let inner: Vec<String> = value.iter().map(u32::to_string).collect();
            let set = if value.is_empty() {
                "\\emptyset".to_string()
            } else {
                format!("\\{{{}\\}}", inner.join(","))
            };
            format!("E(\\mathcal{{A}}) = {set},\\quad i = {i},\\quad \\sigma = {sigma}")
        }
    };
    Ok(Output::new(stdout, EXIT_OK))
}

const ABOUT: &str =
    "Characteristic sets and inclusion-exclusion identities for set-valued expressions";

const AFTER_HELP: &str = "\
Expressions use X1..Xn for variables, 0 or ∅ for the empty set, | or ∪ for
union, & or ∩ for intersection, and prefix ! or postfix ' for complement
(relative to the union of all sets). Precedence: complement > & > |.

The expression is read from stdin when omitted or given as '-'.

verify draws every random sequence from one ChaCha8 generator seeded with
--seed; identical arguments give byte-identical output.

Exit codes: 0 success / inclusion-exclusion-like, 1 not inclusion-exclusion-like
or a failed check, 2 input error.";

#[derive(Debug, Parser)]
#[command(name = "iel", version, about = ABOUT, after_help = AFTER_HELP)]
pub struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Largest accepted number of variables
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_ARITY)]
    pub nmax: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct ExprArgs {
    /// Expression text, or '-' for stdin
    pub expr: Option<String>,

    /// Number of variables
    #[arg(long)]
    pub n: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide inclusion-exclusion-likeness and print the identity or a witness
    Analyze(ExprArgs),
    /// Check the decided identity on random set sequences
    Verify {
        #[command(flatten)]
        expr: ExprArgs,
        /// Number of random sequences
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: usize,
        /// Elements are drawn from 1..=UNIVERSE (at most 16)
        #[arg(long, default_value_t = DEFAULT_UNIVERSE)]
        universe: u32,
        /// Seed for the sequence generator
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Closed-form coefficients of a generalized inclusion-exclusion family
    Family {
        #[arg(value_enum)]
        kind: FamilyKind,
        /// Threshold for at-least
        #[arg(long)]
        m: Option<usize>,
        /// Number of variables
        #[arg(long)]
        n: usize,
        /// Compare against the general coefficient formula
        #[arg(long)]
        cross_check: bool,
    },
    /// Evaluate an expression on a concrete sequence and print statistics
    Eval {
        /// Expression text, or '-' for stdin
        expr: Option<String>,
        /// JSON file with the sequence, e.g. [[1,2],[2,3],[3]]; '-' for stdin
        #[arg(long = "seq")]
        sequence: String,
        /// Expected number of sets (defaults to the file's)
        #[arg(long)]
        n: Option<usize>,
    },
    /// Print the characteristic set as sorted index lists
    Charset(ExprArgs),
}

fn read_expr(arg: &Option<String>, stdin: &mut dyn Read) -> CliResult<String> {
    match arg.as_deref() {
        Some(text) if text != "-" => Ok(text.to_string()),
        _ => {
            let mut buf = String::new();
            stdin.read_to_string(&mut buf)?;
            Ok(buf.trim().to_string())
        }
    }
}

/// Dispatches a parsed command line.
pub fn execute(cli: &Cli, stdin: &mut dyn Read) -> CliResult<Output> {
    let base = |n: usize| CliConfig {
        nmax: cli.nmax,
        ..CliConfig::new(n).format(cli.format)
    };
    match &cli.command {
        Command::Analyze(args) => cmd_analyze(&read_expr(&args.expr, stdin)?, &base(args.n)),
        Command::Charset(args) => cmd_charset(&read_expr(&args.expr, stdin)?, &base(args.n)),
        Command::Verify {
            expr,
            trials,
            universe,
            seed,
        } => {
            let cfg = CliConfig {
                trials: *trials,
                universe: *universe,
                seed: *seed,
                ..base(expr.n)
            };
            cmd_verify(&read_expr(&expr.expr, stdin)?, &cfg)
        }
        Command::Family {
            kind,
            m,
            n,
            cross_check,
        } => cmd_family(*kind, *m, *n, cli.nmax, cli.format, *cross_check),
        Command::Eval { expr, sequence, n } => {
            if sequence == "-" && expr.as_deref().is_none_or(|e| e == "-") {
                return Err(CliError::Config(
                    "stdin can supply the expression or the sequence, not both".into(),
                ));
            }
            let json = if sequence == "-" {
                let mut buf = String::new();
                stdin.read_to_string(&mut buf)?;
                buf
            } else {
                std::fs::read_to_string(sequence)
                    .map_err(|e| std::io::Error::new(e.kind(), format!("{sequence}: {e}")))?
            };
            cmd_eval(&read_expr(expr, stdin)?, &json, *n, cli.nmax, cli.format)
        }
    }
}

/// Result of a whole invocation: stdout, stderr and exit code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invocation {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> Invocation
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Invocation {
                    stdout: String::new(),
                    stderr: text,
                    code,
                }
            } else {
                Invocation {
                    stdout: text,
                    stderr: String::new(),
                    code,
                }
            };
        }
    };
    match execute(&cli, stdin) {
        Ok(out) => Invocation {
            stdout: out.stdout,
            stderr: String::new(),
            code: out.code,
        },
        Err(e) => Invocation {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code: EXIT_INPUT,
        },
    }
}
