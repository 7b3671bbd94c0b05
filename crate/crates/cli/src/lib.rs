//! Command-line front end over the `patcount` library. The binary is a
//! thin shell around [`run`], which parses arguments, executes one
//! subcommand, and reports what to print and which code to exit with, so
//! integration tests can drive the full pipeline in process.
//!
//! Exit codes: 0 success, 2 bad usage or unanswerable query, 3 the query
//! pattern contains a forbidden pattern, 4 a formula disagreed with the
//! enumeration oracle.

pub mod commands;
pub mod output;

use std::ffi::OsString;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};

/// What one invocation printed and how it exited.
#[derive(Debug)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            stdout,
            stderr: String::new(),
            code: 0,
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, Debug, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Copy, Clone, PartialEq, Eq, Debug, ValueEnum)]
pub enum SeqFormat {
    Text,
    Json,
    Csv,
    Bfile,
}

#[derive(Copy, Clone, PartialEq, Eq, Debug, ValueEnum)]
pub enum Source {
    Formula,
    Oracle,
    Both,
}

/// Named menus of forbidden sets for `verify`.
#[derive(Copy, Clone, PartialEq, Eq, Debug, ValueEnum)]
pub enum SetChoice {
    /// Every canonical family plus the monotone guard set
    Canonical,
    /// The four two-pattern families
    Pairs,
    /// The four three-pattern families
    Triples,
    /// The four- and five-pattern shape-table families
    Quads,
}

#[derive(Parser, Debug)]
#[command(
    name = "patcount",
    version,
    about = "counts permutations avoiding a set of length-3 patterns while containing one pattern exactly once"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Closed form (when one is attached) and series for a single query
    Gf {
        /// Forbidden patterns, comma separated, e.g. 132,321
        #[arg(long)]
        avoid: String,
        /// Pattern that must occur exactly once
        #[arg(long)]
        contain: String,
        /// Highest length to expand the series to
        #[arg(long, default_value_t = 12)]
        order: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Count table over a range of lengths
    Seq {
        #[arg(long)]
        avoid: String,
        #[arg(long)]
        contain: String,
        /// Length range, inclusive: a single N or A..B
        #[arg(long, default_value = "0..10")]
        n: String,
        /// Where the counts come from; both adds a match column
        #[arg(long, value_enum, default_value_t = Source::Both)]
        source: Source,
        #[arg(long, value_enum, default_value_t = SeqFormat::Text)]
        format: SeqFormat,
        /// Largest length the enumeration oracle may be asked for
        #[arg(long, default_value_t = patcount::DEFAULT_GUARD)]
        guard: usize,
    },
    /// Compare formulas against brute-force enumeration over a query grid
    Verify {
        /// Named menu of forbidden sets
        #[arg(long, value_enum, default_value_t = SetChoice::Canonical, conflicts_with = "set")]
        sets: SetChoice,
        /// Explicit forbidden set; repeat for several
        #[arg(long = "set", value_name = "PATTERNS")]
        set: Vec<String>,
        /// Largest query pattern length
        #[arg(long, default_value_t = 5)]
        k_max: usize,
        /// Largest permutation length to compare counts at
        #[arg(long, default_value_t = 9)]
        n_max: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Family membership, canonical form, and the count derivation
    Classify {
        #[arg(long)]
        avoid: String,
        #[arg(long)]
        contain: String,
        /// Highest length to expand the series to
        #[arg(long, default_value_t = 12)]
        order: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Group all canonical queries by their count sequences
    Wilf {
        /// Query pattern length
        #[arg(long, default_value_t = 3)]
        k: usize,
        /// Largest permutation length entering each sequence
        #[arg(long, default_value_t = 10)]
        n_max: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

/// Runs one invocation. `args` excludes the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv = std::iter::once(OsString::from("patcount")).chain(args.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(err) => {
            let mut rendered = err.render().to_string();
            if !rendered.ends_with('\n') {
                rendered.push('\n');
            }
            return match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    stdout: rendered,
                    stderr: String::new(),
                    code: 0,
                },
                _ => Outcome {
                    stdout: String::new(),
                    stderr: rendered,
                    code: 2,
                },
            };
        }
    };
    let result = match &cli.cmd {
        Cmd::Gf {
            avoid,
            contain,
            order,
            format,
        } => commands::gf(avoid, contain, *order, *format),
        Cmd::Seq {
            avoid,
            contain,
            n,
            source,
            format,
            guard,
        } => commands::seq(avoid, contain, n, *source, *format, *guard),
        Cmd::Verify {
            sets,
            set,
            k_max,
            n_max,
            format,
        } => commands::verify(*sets, set, *k_max, *n_max, *format),
        Cmd::Classify {
            avoid,
            contain,
            order,
            format,
        } => commands::classify(avoid, contain, *order, *format),
        Cmd::Wilf { k, n_max, format } => commands::wilf(*k, *n_max, *format),
    };
    result.unwrap_or_else(|err| Outcome {
        stdout: String::new(),
        stderr: format!("error: {err}\n"),
        code: match err {
            patcount::Error::NotInClass { .. } => 3,
            _ => 2,
        },
    })
}
