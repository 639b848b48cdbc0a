//! `tvs`: construct, verify and explore irregular total weightings of forests.

mod dot;
mod error;
mod sweep;

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use tvs_core::classify::bounds;
use tvs_core::enumerate::{enumerate_trees, random_forest, DegreeTwo, GeneratorSpec};
use tvs_core::exact::{Solver, DEFAULT_GUARD};
use tvs_core::{
    audit_construction, classify, construct, verify, Forest, Format, Mode, TotalWeighting,
};

use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(name = "tvs", version, about = "Irregular total weightings of forests")]
struct Cli {
    /// Forest input format (auto-detected when omitted); also the output format of `gen`.
    #[arg(long, global = true, value_enum)]
    format: Option<FormatArg>,
    /// Write the payload here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Edgelist,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Json => Format::Json,
            FormatArg::Edgelist => Format::Edgelist,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Auto,
    T1,
    T2,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Auto => Mode::Any,
            ModeArg::T1 => Mode::Theorem1,
            ModeArg::T2 => Mode::Theorem2,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Construct a weighting with labels 1..s, verify it, and print it as JSON.
    Label {
        /// Forest file, or `-` for standard input.
        forest: PathBuf,
        #[arg(long, value_enum, default_value = "auto")]
        mode: ModeArg,
        /// Also run the structural audit of the construction (report on stderr).
        #[arg(long)]
        audit: bool,
    },
    /// Check a labeling file against a forest and print a certificate.
    Verify {
        forest: PathBuf,
        labeling: PathBuf,
        /// Label bound to check against; defaults to the labeling's own `s`.
        #[arg(long)]
        s: Option<u32>,
    },
    /// Compute the exact strength by exhaustive search; prints s* then a witness.
    Exact {
        forest: PathBuf,
        /// Largest strength to try.
        #[arg(long)]
        cap: Option<u32>,
        /// Largest vertex count the search accepts.
        #[arg(long, default_value_t = DEFAULT_GUARD)]
        guard: usize,
    },
    /// Print the degree class table.
    Classify { forest: PathBuf },
    /// Print the known lower and upper bounds.
    Bounds { forest: PathBuf },
    /// Generate forests: one seeded random forest, or every tree of a given size.
    Gen(GenArgs),
    /// Check the construction over enumerated and random instances.
    Sweep(sweep::SweepArgs),
    /// Emit Graphviz DOT with edge labels and `w|wt` vertex labels.
    Dot {
        forest: PathBuf,
        /// Labeling to draw; constructed on the fly when omitted.
        labeling: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
struct GenArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Component count, `k` or `lo..hi` (inclusive).
    #[arg(long, default_value = "1", value_parser = parse_range)]
    components: (usize, usize),
    /// Component sizes, `k` or `lo..hi` (inclusive).
    #[arg(long, default_value = "4..10", value_parser = parse_range)]
    sizes: (usize, usize),
    /// Cap on the total vertex count.
    #[arg(long)]
    max_total: Option<usize>,
    /// Number of degree-2 vertices; 0 when sampling, unrestricted with `--all` when omitted.
    #[arg(long, value_parser = clap::value_parser!(u8).range(0..=1))]
    n2: Option<u8>,
    /// Allow single-edge components.
    #[arg(long)]
    allow_k2: bool,
    /// Instead of sampling, print every non-isomorphic tree on this many vertices, one per line.
    #[arg(long, conflicts_with_all = ["seed", "components", "sizes", "max_total", "allow_k2"])]
    all: Option<usize>,
}

/// Parses `k`, `lo..hi` or `lo-hi` into an inclusive range.
pub(crate) fn parse_range(text: &str) -> Result<(usize, usize), String> {
    let parts: Vec<&str> = if let Some((a, b)) = text.split_once("..") {
        vec![a, b.trim_start_matches('=')]
    } else if let Some((a, b)) = text.split_once('-') {
        vec![a, b]
    } else {
        vec![text, text]
    };
    let parse = |s: &str| s.trim().parse::<usize>().map_err(|e| format!("{s:?}: {e}"));
    let (lo, hi) = (parse(parts[0])?, parse(parts[1])?);
    if lo > hi {
        return Err(format!("empty range {lo}..{hi}"));
    }
    Ok((lo, hi))
}

fn read_input(path: &Path) -> Result<String, CliError> {
    if path.as_os_str() == "-" {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text)?;
        Ok(text)
    } else {
        fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
    }
}

fn read_forest(path: &Path, format: Option<Format>) -> Result<Forest, CliError> {
    let text = read_input(path)?;
    let format = format.unwrap_or_else(|| Format::detect(&text));
    Ok(Forest::parse(&text, format)?)
}

fn read_labeling(path: &Path, f: &Forest) -> Result<TotalWeighting, CliError> {
    Ok(TotalWeighting::from_json(&read_input(path)?, f)?)
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report serializes")
}

/// Constructs and verifies; success is never reported without a passing check.
fn checked_construction(f: &Forest, mode: Mode) -> Result<TotalWeighting, CliError> {
    let tw = construct(f, mode)?;
    let cert = verify(f, &tw, tw.s)?;
    if !cert.valid {
        return Err(CliError::Verification(format!(
            "constructed weighting failed its own check: {}",
            to_json(&cert)
        )));
    }
    Ok(tw)
}

/// Runs one command and returns the payload to print.
fn run(cli: &Cli) -> Result<String, CliError> {
    let format = cli.format.map(Format::from);
    match &cli.command {
        Command::Label {
            forest,
            mode,
            audit,
        } => {
            let f = read_forest(forest, format)?;
            let mode = Mode::from(*mode);
            let tw = checked_construction(&f, mode)?;
            if *audit {
                let (_, table) = classify(&f);
                let report = audit_construction(&f, &tw, &table, mode)?;
                eprintln!("{}", to_json(&report));
                if !report.passed() {
                    return Err(CliError::Verification(format!(
                        "audit failed: {}",
                        report.failed().join(", ")
                    )));
                }
            }
            let resolved = match mode {
                Mode::Any => tvs_core::labeler::resolve_mode(&f),
                m => m,
            };
            Ok(tw.to_json(&f, Some(resolved)))
        }
        Command::Verify {
            forest,
            labeling,
            s,
        } => {
            let f = read_forest(forest, format)?;
            let tw = read_labeling(labeling, &f)?;
            let cert = verify(&f, &tw, s.unwrap_or(tw.s))?;
            let doc = to_json(&cert);
            if cert.valid {
                Ok(doc)
            } else {
                emit(&doc, cli.output.as_deref())?;
                Err(CliError::Verification(format!(
                    "{} collisions, {} labels out of range",
                    cert.collisions.len(),
                    cert.out_of_range.len()
                )))
            }
        }
        Command::Exact { forest, cap, guard } => {
            let f = read_forest(forest, format)?;
            let (s, witness) = Solver::new(*guard).exact_tvs(&f, *cap)?;
            Ok(format!("{s}\n{}", witness.to_json(&f, None)))
        }
        Command::Classify { forest } => {
            let f = read_forest(forest, format)?;
            Ok(to_json(&classify(&f).1))
        }
        Command::Bounds { forest } => {
            let f = read_forest(forest, format)?;
            Ok(to_json(&bounds(&f)))
        }
        Command::Gen(args) => generate(args, format.unwrap_or(Format::Json)),
        Command::Sweep(args) => sweep::run(args, cli.output.as_deref()),
        Command::Dot { forest, labeling } => {
            let f = read_forest(forest, format)?;
            let tw = match labeling {
                Some(path) => read_labeling(path, &f)?,
                None => checked_construction(&f, Mode::Any)?,
            };
            Ok(dot::render(&f, &tw)?)
        }
    }
}

fn generate(args: &GenArgs, format: Format) -> Result<String, CliError> {
    let degree_two = match args.n2 {
        None if args.all.is_some() => DegreeTwo::Any,
        None | Some(0) => DegreeTwo::None,
        Some(_) => DegreeTwo::ExactlyOne,
    };
    if let Some(n) = args.all {
        let trees = enumerate_trees(n, degree_two)?;
        let blocks: Vec<String> = trees.iter().map(|t| t.serialize(format)).collect();
        let sep = if format == Format::Json { "\n" } else { "\n\n" };
        return Ok(blocks
            .iter()
            .map(|b| b.trim_end().to_string())
            .collect::<Vec<_>>()
            .join(sep));
    }
    let spec = GeneratorSpec {
        components: args.components,
        sizes: args.sizes,
        max_total: args.max_total,
        degree_two,
        allow_isolated_edges: args.allow_k2,
        seed: args.seed,
        ..GeneratorSpec::default()
    };
    Ok(random_forest(&spec)?.serialize(format))
}

/// Writes a payload, adding a trailing newline when missing.
pub(crate) fn emit(payload: &str, output: Option<&Path>) -> io::Result<()> {
    let mut text = payload.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match output {
        Some(path) => fs::write(path, text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(&cli) {
        Ok(payload) => match emit(&payload, cli.output.as_deref()) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("tvs: cannot write output: {e}");
                ExitCode::from(1)
            }
        },
        Err(e) => {
            eprintln!("tvs: {e}");
            e.exit_code()
        }
    }
}
