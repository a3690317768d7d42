mod commands;

use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use compalg::json::{document_field, SCHEMA};
use compalg::{ComplexFloat, Cyclotomic, FieldSpec};
use serde_json::Value;

#[derive(Parser, Debug)]
#[command(name = "compalg", about = "Compatible associative products: build, verify, classify", disable_version_flag = true)]
pub struct Cli {
    /// Scalar field: rational, cyclotomic:N or float:TOL. Defaults to the input document's field.
    #[arg(long, global = true)]
    pub field: Option<FieldSpec>,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// json: one document on stdout and a summary on stderr. text: the summary on stdout.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Print the document schema version and exit.
    #[arg(long)]
    pub version: bool,
    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Associativity of both products and their compatibility for a pencil document.
    VerifyPencil {
        /// Path, `-` for stdin, or inline JSON.
        input: Option<String>,
    },
    /// Second product X∘Y = R(X)⋆Y + X⋆R(Y) − R(X⋆Y) from a structure-constants document.
    Deform {
        input: Option<String>,
        /// Matrix of R in the algebra basis (columns are images of basis vectors).
        #[arg(long)]
        r: String,
    },
    /// Tensors of an r-presentation document, with the quadratic identities checked.
    ExtractTensors { input: Option<String> },
    /// Consistency and K-centrality of an m-presentation document.
    VerifyMstructure {
        input: Option<String>,
        /// r-presentation document to validate against the presentation.
        #[arg(long)]
        representation: Option<String>,
    },
    /// The cyclic M-structure; with --s, its representation instead.
    BuildCyclic {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        s: Option<String>,
    },
    /// M-structure on a commutative semisimple 𝒜 from u, v, q.
    BuildComma {
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
        #[arg(long)]
        q: String,
    },
    /// Classification of u, v, q data satisfying (BB3)–(BB5).
    ClassifyComma {
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
        #[arg(long)]
        q: String,
    },
    /// The Ã_{2k−1} PM-structure; with --s, its representation instead.
    BuildA2k1 {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: usize,
        /// JSON list of m values; defaults to 1, 2, …, m.
        #[arg(long)]
        lambda: Option<String>,
        /// JSON list of m values; defaults to all 1.
        #[arg(long)]
        t: Option<String>,
        #[arg(long)]
        s: Option<String>,
    },
    /// Consistency and K-centrality of a pm-presentation document.
    VerifyPmstructure {
        input: Option<String>,
        /// pm-representation document to validate against the presentation.
        #[arg(long)]
        representation: Option<String>,
    },
    /// Admissibility and affine diagram of a matrix of multiplicities.
    ClassifyMatrix { input: Option<String> },
    /// Catalog matrix and dimension vectors of a family.
    Catalog {
        /// A1, A2k-1, D4, D2k, D2k-1, E6, E7 or E8.
        family: String,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Jacobi and compatibility of the two brackets of a pencil on Mat_n(V).
    PoissonCheck {
        input: Option<String>,
        #[arg(long, default_value_t = 1)]
        n: usize,
    },
    /// Product on V ⊗ F_m from a pencil and a polynomial q.
    ExtendPoly {
        input: Option<String>,
        /// Coefficients of q, constant term first.
        #[arg(long)]
        q: Option<String>,
        /// Distinct roots of q; the decomposition into copies of the pencil is checked.
        #[arg(long)]
        roots: Option<String>,
    },
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Failed(String),
}

impl From<compalg::Error> for CliError {
    fn from(e: compalg::Error) -> Self {
        use compalg::Error::*;
        match e {
            Format(_) | Dimension(_) | InvalidParameters(_) | TooLarge(_) => CliError::Usage(e.to_string()),
            _ => CliError::Failed(e.to_string()),
        }
    }
}

/// Result of a subcommand.
pub struct Outcome {
    pub doc: Value,
    pub passed: bool,
    pub summary: String,
}

/// Reads inline JSON, a file, or stdin (`-` or absent).
pub fn read_json(arg: Option<&str>) -> Result<Value, CliError> {
    let (source, text) = match arg {
        Some(s) if s.trim_start().starts_with(['{', '[']) => ("argument".to_string(), s.to_string()),
        None | Some("-") => {
            let mut buf = String::new();
            std::io::stdin().read_to_string(&mut buf).map_err(|e| CliError::Usage(format!("stdin: {e}")))?;
            ("stdin".to_string(), buf)
        }
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{path}: {e}")))?;
            (path.to_string(), text)
        }
    };
    serde_json::from_str(&text).map_err(|e| {
        CliError::Usage(format!("{source}: malformed JSON at line {}, column {}: {e}", e.line(), e.column()))
    })
}

fn input_of(cmd: &Command) -> Option<Option<&str>> {
    match cmd {
        Command::VerifyPencil { input }
        | Command::Deform { input, .. }
        | Command::ExtractTensors { input }
        | Command::VerifyMstructure { input, .. }
        | Command::VerifyPmstructure { input, .. }
        | Command::PoissonCheck { input, .. }
        | Command::ExtendPoly { input, .. }
        | Command::ClassifyMatrix { input } => Some(input.as_deref()),
        _ => None,
    }
}

fn run(cli: &Cli, cmd: &Command) -> Result<Outcome, CliError> {
    let doc = input_of(cmd).map(read_json).transpose()?;
    let field = match (cli.field, &doc) {
        (Some(f), _) => f,
        (None, Some(d)) => document_field(d)?,
        (None, None) => FieldSpec::rational(),
    };
    match field {
        FieldSpec::Cyclotomic { .. } => commands::run::<Cyclotomic>(cli, cmd, field, doc),
        FieldSpec::Float { .. } => commands::run::<ComplexFloat>(cli, cmd, field, doc),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if cli.version {
        println!("compalg {} (schema {SCHEMA})", env!("CARGO_PKG_VERSION"));
        return ExitCode::SUCCESS;
    }
    let Some(cmd) = &cli.command else {
        eprintln!("a subcommand is required; see --help");
        return ExitCode::from(2);
    };
    match run(&cli, cmd) {
        Ok(out) => {
            match cli.format {
                Format::Json => {
                    println!("{}", serde_json::to_string_pretty(&out.doc).expect("serializable"));
                    eprint!("{}", out.summary);
                }
                Format::Text => print!("{}", out.summary),
            }
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Failed(msg)) => {
            let doc = serde_json::json!({"schema": SCHEMA, "kind": "error", "passed": false, "error": msg});
            if cli.format == Format::Json {
                println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
            }
            eprintln!("failed: {msg}");
            ExitCode::from(1)
        }
    }
}
