//! Command-line front end for `closure_lattice`.
//!
//! [`run`] is the whole program; `main` only wires it to the process. Exit
//! codes: 0 success, 1 input or usage error, 2 enumeration size limit,
//! 3 an invariant check failed (the witness is printed).

mod dot;
mod report;

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use closure_lattice::{parse_poset, Poset, SizeLimit, DEFAULT_SIZE_LIMIT};

pub use report::Report;

/// Environment variable overriding the enumeration size limit.
pub const SIZE_LIMIT_VAR: &str = "CLOSURE_LATTICE_SIZE_LIMIT";

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_SIZE_LIMIT: i32 = 2;
pub const EXIT_INVARIANT: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "closure-lattice", version, about = "Analyse the lattice of closure relations on a finite poset")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Emit JSON instead of human-readable text.
    #[arg(long, global = true)]
    pub json: bool,
    /// ASCII output: λ, μ, ·, Π and the hatted 0/1 become L, mu, *, Pi, 0^ and 1^.
    #[arg(long, global = true)]
    pub ascii: bool,
    /// Cross-check the lattice against brute-force enumeration of all maps.
    #[arg(long, global = true)]
    pub oracle: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sizes, maximal elements and their mlb-closure.
    Info { input: PathBuf },
    /// List every closure relation.
    Closures {
        input: PathBuf,
        /// Print each closure as `x -> H(x)` lines instead of its closed set.
        #[arg(long)]
        maps: bool,
    },
    /// Node and edge counts, rank, atoms and the node table.
    Lattice { input: PathBuf },
    /// Characteristic polynomial, by Möbius sum and by closed form.
    Charpoly { input: PathBuf },
    /// Which closures are modular elements.
    Modular { input: PathBuf },
    /// A maximal chain of modular elements.
    Mchain { input: PathBuf },
    /// Anti-exchange, join-distributivity and semimodularity checks.
    Convexity { input: PathBuf },
    /// Whether the lattice is a sublattice of the partition lattice.
    Sublattice { input: PathBuf },
    /// Hasse diagrams in DOT syntax.
    Dot {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = DotTarget::Both)]
        target: DotTarget,
        /// Annotate lattice nodes with μ(0̂, node).
        #[arg(long)]
        mu: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DotTarget {
    Poset,
    Lattice,
    Both,
}

impl Command {
    fn input(&self) -> &PathBuf {
        match self {
            Command::Info { input }
            | Command::Closures { input, .. }
            | Command::Lattice { input }
            | Command::Charpoly { input }
            | Command::Modular { input }
            | Command::Mchain { input }
            | Command::Convexity { input }
            | Command::Sublattice { input }
            | Command::Dot { input, .. } => input,
        }
    }
}

/// Failure modes mapped onto exit codes.
#[derive(Debug)]
pub enum CliError {
    Input(String),
    SizeLimit(SizeLimit),
    /// A library routine reported a state its guarantees rule out.
    Invariant(String),
}

impl From<SizeLimit> for CliError {
    fn from(err: SizeLimit) -> Self {
        CliError::SizeLimit(err)
    }
}

impl From<closure_lattice::LatticeError> for CliError {
    fn from(err: closure_lattice::LatticeError) -> Self {
        use closure_lattice::LatticeError;
        match err {
            LatticeError::SizeLimit(limit) => CliError::SizeLimit(limit),
            LatticeError::NoGreatestElement | LatticeError::Poset(_) => CliError::Input(err.to_string()),
            LatticeError::NegativeExponent(_) | LatticeError::AtomCountDivergence { .. } | LatticeError::MissingNode(_) => {
                CliError::Invariant(err.to_string())
            }
        }
    }
}

/// Options that apply to every verb.
#[derive(Debug, Clone, Copy)]
pub struct Settings {
    pub size_limit: usize,
    pub oracle: bool,
}

/// Runs the program on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };

    let size_limit = match std::env::var(SIZE_LIMIT_VAR) {
        Ok(value) => match value.trim().parse::<usize>() {
            Ok(limit) => limit,
            Err(_) => {
                let _ = writeln!(err, "error: {SIZE_LIMIT_VAR} must be a non-negative integer, got `{value}`");
                return EXIT_INPUT;
            }
        },
        Err(_) => DEFAULT_SIZE_LIMIT,
    };
    let settings = Settings {
        size_limit,
        oracle: cli.oracle,
    };

    let path = cli.command.input();
    let poset = match load(path) {
        Ok(p) => p,
        Err(message) => {
            let _ = writeln!(err, "error: {message}");
            return EXIT_INPUT;
        }
    };

    let result = match &cli.command {
        Command::Info { .. } => report::info(&poset, settings),
        Command::Closures { maps, .. } => report::closures(&poset, settings, *maps),
        Command::Lattice { .. } => report::lattice(&poset, settings),
        Command::Charpoly { .. } => report::charpoly(&poset, settings),
        Command::Modular { .. } => report::modular(&poset, settings),
        Command::Mchain { .. } => report::mchain(&poset, settings),
        Command::Convexity { .. } => report::convexity(&poset, settings),
        Command::Sublattice { .. } => report::sublattice(&poset, settings),
        Command::Dot { target, mu, .. } => dot::render(&poset, settings, *target, *mu),
    };

    let as_json = cli.json && !matches!(cli.command, Command::Dot { .. });
    finish(result, as_json, cli.ascii, out, err)
}

/// Writes a verb's outcome and picks the exit code.
fn finish(result: Result<Report, CliError>, as_json: bool, ascii: bool, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let normalise = |text: String| if ascii { asciify(&text) } else { text };
    match result {
        Ok(report) => {
            let text = if as_json {
                let mut s = serde_json::to_string_pretty(&report.json).expect("JSON values serialize");
                s.push('\n');
                s
            } else {
                report.human
            };
            let _ = out.write_all(normalise(text).as_bytes());
            match report.violation {
                Some(violation) => {
                    let _ = writeln!(err, "invariant violation: {}", normalise(violation));
                    EXIT_INVARIANT
                }
                None => EXIT_OK,
            }
        }
        Err(CliError::Input(message)) => {
            let _ = writeln!(err, "error: {message}");
            EXIT_INPUT
        }
        Err(CliError::SizeLimit(limit)) => {
            let _ = writeln!(err, "error: {limit} (raise it with {SIZE_LIMIT_VAR})");
            EXIT_SIZE_LIMIT
        }
        Err(CliError::Invariant(message)) => {
            let _ = writeln!(err, "invariant violation: {}", normalise(message));
            EXIT_INVARIANT
        }
    }
}

fn load(path: &PathBuf) -> Result<Poset, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_poset(&text).map_err(|e| format!("{}: {e}", path.display()))
}

/// ASCII normalisation used for golden-file comparisons.
pub fn asciify(text: &str) -> String {
    text.replace('λ', "L")
        .replace('μ', "mu")
        .replace('·', "*")
        .replace("0̂", "0^")
        .replace("1̂", "1^")
        .replace('Π', "Pi")
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn exit_code(result: Result<Report, CliError>) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = finish(result, false, true, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn violations_exit_with_three() {
        let report = Report {
            human: "verdict: DISAGREE\n".into(),
            json: json!({}),
            violation: Some("χ mismatch at λ^2".into()),
        };
        let (code, out, err) = exit_code(Ok(report));
        assert_eq!(code, EXIT_INVARIANT);
        assert_eq!(out, "verdict: DISAGREE\n");
        assert!(err.contains("at L^2"));
        assert_eq!(exit_code(Err(CliError::Invariant("x".into()))).0, EXIT_INVARIANT);
    }

    #[test]
    fn error_kinds_map_to_exit_codes() {
        assert_eq!(exit_code(Err(CliError::Input("bad".into()))).0, EXIT_INPUT);
        let limit = SizeLimit { what: "test", size: 30, limit: 20 };
        assert_eq!(exit_code(Err(CliError::SizeLimit(limit))).0, EXIT_SIZE_LIMIT);
        let clean = Report { human: String::new(), json: json!({}), violation: None };
        assert_eq!(exit_code(Ok(clean)).0, EXIT_OK);
    }

    #[test]
    fn ascii_normalisation() {
        assert_eq!(asciify("(λ-1)^2·λ, μ, 0̂+P, Π(P)"), "(L-1)^2*L, mu, 0^+P, Pi(P)");
    }
}
