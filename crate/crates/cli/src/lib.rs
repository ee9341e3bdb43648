//! Command-line front end for `logalg-core`.
//!
//! [`run`] takes the argument vector and a reader for `-` inputs and returns
//! the exit code together with everything the process would print, so the
//! binary and the tests share one code path.
//!
//! Exit codes: 0 for an affirmative verdict or a finished computation, 1 for
//! a negative verdict, 2 for malformed input or usage, 3 for numeric failure.

pub mod commands;
pub mod document;
pub mod report;

use std::io::Read;

use clap::{Parser, Subcommand, ValueEnum};
use logalg_core::Error;

use crate::document::DocumentError;
use crate::report::Node;

pub const EXIT_YES: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "logalg",
    version,
    about = "Log-algebra norms, inclusions, counterexamples and isomorphisms"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Finite,
    Semifinite,
}

impl From<ModeArg> for logalg_core::rearrangement::NormMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Finite => Self::Finite,
            ModeArg::Semifinite => Self::Semifinite,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DirectionArg {
    MuInNu,
    NuInMu,
}

impl From<DirectionArg> for logalg_core::trace::Direction {
    fn from(d: DirectionArg) -> Self {
        match d {
            DirectionArg::MuInNu => Self::MuInNu,
            DirectionArg::NuInMu => Self::NuInMu,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LevelArg {
    Algebra,
    Center,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse and validate a model document.
    Validate { file: String },
    /// Log F-norm of a named element of a cell-model document.
    Norm {
        file: String,
        #[arg(long)]
        element: Option<String>,
        #[arg(long, value_enum, default_value = "semifinite")]
        mode: ModeArg,
    },
    /// Decreasing rearrangement of a named element.
    Rearrange {
        file: String,
        #[arg(long)]
        element: Option<String>,
    },
    /// Decide one inclusion between the two log-algebras of a cell model.
    Inclusion {
        file: String,
        #[arg(long, value_enum)]
        direction: DirectionArg,
    },
    /// Decide whether the two log-algebras of a cell model coincide.
    Coincide { file: String },
    /// Build the explicit non-inclusion witness and certify its partial sums.
    Counterexample {
        file: String,
        #[arg(long, default_value_t = 100)]
        terms: usize,
    },
    /// Decide isomorphism of two passports or algebra descriptors.
    Isomorphic {
        a: String,
        b: String,
        #[arg(long, value_enum, default_value = "algebra")]
        level: LevelArg,
    },
    /// Seeded randomized check of the F-norm axioms.
    Axioms {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, value_enum, default_value = "semifinite")]
        mode: ModeArg,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Validate { .. } => "validate",
            Command::Norm { .. } => "norm",
            Command::Rearrange { .. } => "rearrange",
            Command::Inclusion { .. } => "inclusion",
            Command::Coincide { .. } => "coincide",
            Command::Counterexample { .. } => "counterexample",
            Command::Isomorphic { .. } => "isomorphic",
            Command::Axioms { .. } => "axioms",
        }
    }
}

/// What a finished command would print and return.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io { path: String, message: String },
    Document { path: String, error: DocumentError },
    Core(Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io { .. } | CliError::Document { .. } => EXIT_INPUT,
            CliError::Core(e) => match e {
                Error::Input(_) | Error::UnsupportedMerge(_) | Error::InsufficientGroups { .. } => EXIT_INPUT,
                Error::Range(_) | Error::Numeric(_) => EXIT_NUMERIC,
            },
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Io { .. } => "io",
            CliError::Document {
                error: DocumentError::Syntax { .. },
                ..
            } => "syntax",
            CliError::Document { .. } => "semantic",
            CliError::Core(Error::Input(_)) => "input",
            CliError::Core(Error::Range(_)) => "range",
            CliError::Core(Error::Numeric(_)) => "numeric",
            CliError::Core(Error::UnsupportedMerge(_)) => "unsupported-merge",
            CliError::Core(Error::InsufficientGroups { .. }) => "insufficient-groups",
        }
    }

    fn to_node(&self) -> Node {
        let mut node = Node::obj([
            ("kind", Node::from(self.kind())),
            ("message", Node::from(self.to_string())),
        ]);
        match self {
            CliError::Document { path, error } => {
                node.insert("file", path.as_str());
                match error {
                    DocumentError::Syntax { line, column, .. } => {
                        node.insert("line", *line);
                        node.insert("column", *column);
                    }
                    DocumentError::Semantic(issues) => node.insert(
                        "issues",
                        Node::arr(issues.iter().map(|i| {
                            Node::obj([
                                ("path", Node::from(i.path.as_str())),
                                ("message", Node::from(i.message.as_str())),
                            ])
                        })),
                    ),
                }
            }
            CliError::Core(Error::InsufficientGroups { found, requested }) => {
                node.insert("found", *found);
                node.insert("requested", *requested);
            }
            _ => {}
        }
        node
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => f.write_str(m),
            CliError::Io { path, message } => write!(f, "{path}: {message}"),
            CliError::Document { path, error } => write!(f, "{path}: {error}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

/// A finished command: its report and whether the verdict was affirmative.
pub struct Answer {
    pub affirmative: bool,
    pub report: Node,
}

impl Answer {
    pub fn yes(report: Node) -> Self {
        Answer {
            affirmative: true,
            report,
        }
    }

    pub fn verdict(affirmative: bool, report: Node) -> Self {
        Answer { affirmative, report }
    }
}

pub fn run<I, S>(argv: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_INPUT,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: EXIT_YES,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let name = cli.command.name();
    let mut inputs = Inputs {
        stdin,
        stdin_used: false,
    };
    match commands::execute(&cli.command, &mut inputs) {
        Ok(mut answer) => {
            answer.report.insert("command", name);
            Outcome {
                code: if answer.affirmative { EXIT_YES } else { EXIT_NO },
                stdout: answer.report.render(),
                stderr: String::new(),
            }
        }
        Err(e) => {
            let report = Node::obj([("command", Node::from(name)), ("error", e.to_node())]);
            Outcome {
                code: e.exit_code(),
                stdout: report.render(),
                stderr: format!("logalg {name}: {e}\n"),
            }
        }
    }
}

/// Reads named files, or standard input for `-` (at most once).
pub struct Inputs<'a> {
    stdin: &'a mut dyn Read,
    stdin_used: bool,
}

impl Inputs<'_> {
    pub fn read(&mut self, path: &str) -> Result<String, CliError> {
        if path == "-" {
            if self.stdin_used {
                return Err(CliError::Usage("standard input can be read only once".into()));
            }
            self.stdin_used = true;
            let mut text = String::new();
            self.stdin.read_to_string(&mut text).map_err(|e| CliError::Io {
                path: "<stdin>".into(),
                message: e.to_string(),
            })?;
            return Ok(text);
        }
        std::fs::read_to_string(path).map_err(|e| CliError::Io {
            path: path.into(),
            message: e.to_string(),
        })
    }

    pub fn document(&mut self, path: &str) -> Result<document::Document, CliError> {
        let text = self.read(path)?;
        document::parse(&text).map_err(|error| CliError::Document {
            path: path.into(),
            error,
        })
    }
}
