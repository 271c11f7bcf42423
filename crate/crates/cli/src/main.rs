use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use diagkit::fields::FieldSpec;
use diagkit::text;
use diagkit::Error;
use serde_json::{json, Value};

mod commands;

/// Exact diagonalizability checks for matrices, banded infinite operators,
/// idempotent families and finite algebras.
///
/// Exit status: 0 positive verdict, 1 negative verdict, 2 unknown,
/// 3 input error.
#[derive(Parser, Debug)]
#[command(name = "diagkit", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    opts: Options,
}

#[derive(Args, Debug, Clone)]
pub struct Options {
    /// Field for inputs that do not declare one: Q or Fp:<p>.
    #[arg(long, global = true)]
    pub field: Option<String>,

    /// Krylov depth for torsion searches.
    #[arg(long, global = true)]
    pub depth: Option<usize>,

    /// Window size for truncated searches.
    #[arg(long, global = true)]
    pub truncate: Option<usize>,

    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Input text given inline instead of a file.
    #[arg(short = 'e', long = "expr", global = true)]
    pub expr: Option<String>,

    /// Add elapsed wall time to the report.
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Diagonalize a square matrix.
    DiagFinite(Input),
    /// Decide `T^p = T` for a banded operator over F_p.
    DiagFfield(Input),
    /// Torsion test for one vector under a banded operator.
    Torsion {
        #[command(flatten)]
        input: Input,
        /// Vector as `{i:s,...}`; defaults to v_0.
        #[arg(long)]
        vector: Option<String>,
    },
    /// Closure of the diagonalizable operators: is T in it?
    Closure {
        #[command(flatten)]
        input: Input,
        /// Window of basis indices such as `0,1,2` or `[{0:1},{1:2}]`;
        /// repeatable.
        #[arg(long = "window")]
        windows: Vec<String>,
    },
    /// Summability of an idempotent family.
    Summable(Input),
    /// Common refinement of two families (or commuting matrices), given as
    /// documents separated by a `---` line.
    Simdiag(Input),
    /// Tree decompositions of a finite window.
    Tree {
        #[command(subcommand)]
        action: TreeAction,
    },
    /// Maximal ideals of K^X.
    Spec0 {
        #[command(flatten)]
        input: Input,
        /// Number of points; otherwise read as `points N` from the input.
        #[arg(long)]
        points: Option<usize>,
    },
    /// Functor laws and round trips for one or two set maps.
    DualityCheck(Input),
    /// Lagrange idempotents of K[x]/(f).
    Crt(Input),
    /// Jacobson radical of a structure-constant algebra.
    Radical(Input),
    /// Classical equivalent conditions for diagonalizability of a matrix.
    Classical(Input),
    /// Seeded acceptance suite.
    Suite {
        /// Run a single criterion (1 to 9).
        #[arg(long)]
        criterion: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
enum TreeAction {
    /// Build a decomposition of depth `--depth` on a window of `--truncate`.
    Build,
    /// Load a serialized decomposition and check every clause.
    Verify(Input),
    /// Level-m idempotent family, common eigenvector search and discreteness
    /// witness of a serialized decomposition.
    Family {
        #[command(flatten)]
        input: Input,
        /// Level; defaults to the tree depth.
        #[arg(long)]
        level: Option<usize>,
    },
}

#[derive(Args, Debug, Clone)]
pub struct Input {
    /// Input file; `-` or nothing reads stdin.
    pub path: Option<String>,
}

/// A verdict with its report body.
pub enum Outcome {
    Positive(Value),
    Negative(Value),
    Unknown(Value),
}

impl Outcome {
    fn parts(self) -> (&'static str, u8, Value) {
        match self {
            Outcome::Positive(v) => ("positive", 0, v),
            Outcome::Negative(v) => ("negative", 1, v),
            Outcome::Unknown(v) => ("unknown", 2, v),
        }
    }
}

impl Options {
    pub fn field(&self) -> Result<Option<FieldSpec>, Error> {
        self.field.as_deref().map(text::parse_field).transpose()
    }

    pub fn read(&self, input: &Input) -> Result<String, Error> {
        if let Some(e) = &self.expr {
            return Ok(e.clone());
        }
        match input.path.as_deref() {
            None | Some("-") => {
                let mut s = String::new();
                io::stdin()
                    .read_to_string(&mut s)
                    .map_err(|e| Error::Parse { line: 0, column: 0, message: format!("stdin: {e}") })?;
                Ok(s)
            }
            Some(path) => fs::read_to_string(path)
                .map_err(|e| Error::Parse { line: 0, column: 0, message: format!("{path}: {e}") }),
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::DiagFinite(_) => "diag-finite",
        Command::DiagFfield(_) => "diag-ffield",
        Command::Torsion { .. } => "torsion",
        Command::Closure { .. } => "closure",
        Command::Summable(_) => "summable",
        Command::Simdiag(_) => "simdiag",
        Command::Tree { action: TreeAction::Build } => "tree build",
        Command::Tree { action: TreeAction::Verify(_) } => "tree verify",
        Command::Tree { action: TreeAction::Family { .. } } => "tree family",
        Command::Spec0 { .. } => "spec0",
        Command::DualityCheck(_) => "duality-check",
        Command::Crt(_) => "crt",
        Command::Radical(_) => "radical",
        Command::Classical(_) => "classical",
        Command::Suite { .. } => "suite",
    }
}

fn dispatch(cmd: &Command, o: &Options) -> Result<Outcome, Error> {
    match cmd {
        Command::DiagFinite(i) => commands::diag_finite(&o.read(i)?, o),
        Command::DiagFfield(i) => commands::diag_ffield(&o.read(i)?, o),
        Command::Torsion { input, vector } => commands::torsion(&o.read(input)?, vector.as_deref(), o),
        Command::Closure { input, windows } => commands::closure(&o.read(input)?, windows, o),
        Command::Summable(i) => commands::summable(&o.read(i)?, o),
        Command::Simdiag(i) => commands::simdiag(&o.read(i)?, o),
        Command::Tree { action: TreeAction::Build } => commands::tree_build(o),
        Command::Tree { action: TreeAction::Verify(i) } => commands::tree_verify(&o.read(i)?),
        Command::Tree { action: TreeAction::Family { input, level } } => commands::tree_family(&o.read(input)?, *level),
        Command::Spec0 { input, points } => {
            let text = match points {
                Some(n) => format!("points {n}"),
                None => o.read(input)?,
            };
            commands::spec0(&text, o)
        }
        Command::DualityCheck(i) => commands::duality_check(&o.read(i)?, o),
        Command::Crt(i) => commands::crt(&o.read(i)?, o),
        Command::Radical(i) => commands::radical(&o.read(i)?, o),
        Command::Classical(i) => commands::classical(&o.read(i)?, o),
        Command::Suite { criterion } => commands::suite(*criterion, o),
    }
}

fn error_report(e: &Error) -> (u8, Value) {
    let kind = format!("{e:?}").split(['(', ' ', '{']).next().unwrap_or("Error").to_string();
    let mut body = json!({ "kind": kind, "message": e.to_string() });
    if let Error::Parse { line, column, .. } = e {
        body["line"] = json!(line);
        body["column"] = json!(column);
    }
    let code = if matches!(e, Error::CapacityExceeded(_)) { 2 } else { 3 };
    (code, body)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = command_name(&cli.command);
    let start = Instant::now();
    let (code, mut report) = match dispatch(&cli.command, &cli.opts) {
        Ok(outcome) => {
            let (verdict, code, body) = outcome.parts();
            let mut r = json!({ "command": name, "verdict": verdict });
            if let Value::Object(fields) = body {
                for (k, v) in fields {
                    r[k] = v;
                }
            }
            (code, r)
        }
        Err(e) => {
            let (code, body) = error_report(&e);
            eprintln!("diagkit {name}: {e}");
            let verdict = if code == 2 { "unknown" } else { "error" };
            (code, json!({ "command": name, "verdict": verdict, "error": body }))
        }
    };
    if cli.opts.timing {
        report["elapsed_ms"] = json!(start.elapsed().as_secs_f64() * 1e3);
    }
    let text = serde_json::to_string_pretty(&report).expect("json values serialize");
    let _ = writeln!(io::stdout(), "{text}");
    ExitCode::from(code)
}
