//! `peres`: extraction, verification and rate tables from the command line.
//!
//! Exit codes: 0 success, 1 a check found a violation, 2 usage or input
//! error, 3 unknown scheme, 4 an exhaustive check would exceed its size cap.

mod input;
mod pack;

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use peres::analysis::{
    chi_square_uniformity, compare_csv, compare_rows, empirical_rate, exact_rate, rate_report,
    sample_source, shannon_entropy,
};
use peres::tree::parse_tree;
use peres::verify::{
    check_extracting, check_structure, check_structure_on, check_uniform_symbolic, golden_tables,
    non_uniform_outputs,
};
use peres::{builtin, BinarizationTree, Error, Role, Scheme, SymbolString};

#[derive(Parser)]
#[command(
    name = "peres",
    version,
    about = "Recursive randomness extractors from binarization trees"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Extract digits from source symbols.
    Extract(ExtractArgs),
    /// Run an exhaustive or numeric check.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Output rates.
    #[command(subcommand)]
    Rate(RateCommand),
    /// Shannon entropy of a distribution.
    Entropy {
        #[command(flatten)]
        dist: DistArgs,
        #[arg(long, default_value_t = 2)]
        base: usize,
    },
    /// Print the component tables of a scheme, one row per block.
    Table {
        #[command(flatten)]
        scheme: SchemeArgs,
    },
    /// Tree file tooling.
    #[command(subcommand)]
    Tree(TreeCommand),
}

#[derive(Args)]
#[group(skip)]
struct SchemeArgs {
    /// Builtin scheme name.
    #[arg(
        long,
        required_unless_present = "scheme_file",
        conflicts_with = "scheme_file"
    )]
    scheme: Option<String>,
    /// Tree description file.
    #[arg(long)]
    scheme_file: Option<PathBuf>,
    /// Output alphabet size for a tree file (inferred by default).
    #[arg(long, requires = "scheme_file")]
    output_base: Option<usize>,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct DistArgs {
    /// Probability of symbol 0 in a binary source.
    #[arg(long)]
    p: Option<f64>,
    /// Comma-separated probabilities.
    #[arg(long)]
    dist: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Digits,
    Packed,
}

#[derive(Args)]
struct ExtractArgs {
    #[command(flatten)]
    scheme: SchemeArgs,
    /// Input file; standard input when absent.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Output file; standard output when absent.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "digits")]
    format: Format,
    /// Recursion depth limit.
    #[arg(long)]
    depth: Option<usize>,
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Every class image up to a length is extracting.
    Extracting {
        #[command(flatten)]
        scheme: SchemeArgs,
        #[arg(long)]
        max: usize,
        /// Only print the summary, not one line per class.
        #[arg(long)]
        quiet: bool,
    },
    /// Output nodes are uniform for every source.
    Tree {
        #[command(flatten)]
        scheme: SchemeArgs,
        #[arg(long, default_value_t = 100)]
        grid: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// The structure map is a bijection onto the product of image classes.
    Structure {
        #[command(flatten)]
        scheme: SchemeArgs,
        /// Maximum number of blocks.
        #[arg(long)]
        max: usize,
        /// Restrict to these block indices (comma-separated).
        #[arg(long, value_delimiter = ',')]
        blocks: Option<Vec<usize>>,
    },
    /// Builtin tables against the embedded reference tables.
    Golden,
}

#[derive(Subcommand)]
enum RateCommand {
    /// Truncated rates r_0..r_depth from the rate recursion.
    Recursion {
        #[command(flatten)]
        scheme: SchemeArgs,
        #[command(flatten)]
        dist: DistArgs,
        #[arg(long)]
        depth: usize,
    },
    /// Exact expected rate at input length n.
    Exact {
        #[command(flatten)]
        scheme: SchemeArgs,
        #[command(flatten)]
        dist: DistArgs,
        #[arg(long)]
        n: usize,
    },
    /// Rate on a pseudorandom input.
    Empirical {
        #[command(flatten)]
        scheme: SchemeArgs,
        #[command(flatten)]
        dist: DistArgs,
        #[arg(long)]
        samples: usize,
        #[arg(long)]
        seed: u64,
        /// Also run a chi-square test on words of this many output digits.
        #[arg(long)]
        chi_square: Option<usize>,
    },
    /// CSV comparison of binary schemes over a grid of p.
    Compare {
        #[arg(
            long,
            value_delimiter = ',',
            default_value = "peres2,peres3bit,peres4bit_e4"
        )]
        schemes: Vec<String>,
        /// Grid spacing; points run from step to 1 - step.
        #[arg(long, default_value_t = 0.01)]
        step: f64,
        #[arg(long, default_value_t = 8)]
        depth: usize,
    },
}

#[derive(Subcommand)]
enum TreeCommand {
    /// Parse and validate a tree file.
    Validate { file: PathBuf },
    /// Pretty-print a tree file with its component tables.
    Show { file: PathBuf },
}

/// A failure together with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::UnknownScheme(_) => 3,
            Error::SizeLimit(_) => 4,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

/// A closed downstream pipe ends the run quietly, like other filters.
fn io_failure(e: io::Error) -> Failure {
    match e.kind() {
        io::ErrorKind::BrokenPipe => Failure {
            code: 0,
            message: String::new(),
        },
        _ => usage(e.to_string()),
    }
}

macro_rules! outln {
    ($($arg:tt)*) => {
        writeln!(io::stdout().lock(), $($arg)*).map_err(io_failure)?
    };
}

macro_rules! out {
    ($($arg:tt)*) => {
        write!(io::stdout().lock(), $($arg)*).map_err(io_failure)?
    };
}

type Outcome = Result<bool, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Extract(args) => extract(args),
        Command::Verify(cmd) => verify(cmd),
        Command::Rate(cmd) => rate(cmd),
        Command::Entropy { dist, base } => entropy(dist, base),
        Command::Table { scheme } => table(scheme),
        Command::Tree(cmd) => tree(cmd),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) if f.code == 0 => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn read_tree(path: &Path, output_base: Option<usize>) -> Result<BinarizationTree, Failure> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let root = parse_tree(&text)?;
    Ok(match output_base {
        Some(d) => BinarizationTree::with_output_alphabet(root, d)?,
        None => BinarizationTree::new(root)?,
    })
}

fn load_scheme(args: &SchemeArgs) -> Result<Scheme, Failure> {
    match (&args.scheme, &args.scheme_file) {
        (Some(name), _) => Ok(builtin(name)?),
        (None, Some(path)) => {
            let tree = read_tree(path, args.output_base)?;
            let name = path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "tree".into());
            Ok(Scheme::new(name, tree)?)
        }
        (None, None) => Err(usage("one of --scheme or --scheme-file is required")),
    }
}

fn load_dist(args: &DistArgs) -> Result<peres::Distribution, Failure> {
    input::distribution(args.p, args.dist.as_deref()).map_err(usage)
}

fn extract(args: ExtractArgs) -> Outcome {
    let scheme = load_scheme(&args.scheme)?;
    let mut text = String::new();
    match &args.input {
        Some(path) => {
            text =
                fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?
        }
        None => {
            io::stdin().read_to_string(&mut text).map_err(io_failure)?;
        }
    }
    let symbols =
        input::parse_digits(&text, scheme.source_alphabet()).map_err(|e| usage(e.to_string()))?;
    let x = SymbolString::new(scheme.source_alphabet(), symbols)?;
    let out = match args.depth {
        Some(depth) => scheme.extract_truncated(&x, depth)?,
        None => scheme.extract(&x)?,
    };
    let bytes = match args.format {
        Format::Digits => out.to_string().into_bytes(),
        Format::Packed => {
            if scheme.output_alphabet() != 2 {
                return Err(usage(format!(
                    "packed output needs binary output, {} has {} output symbols",
                    scheme.name(),
                    scheme.output_alphabet()
                )));
            }
            eprintln!("bits={}", out.len());
            pack::pack_bits(out.symbols())
        }
    };
    match &args.output {
        Some(path) => fs::write(path, bytes).map_err(io_failure)?,
        None => io::stdout().write_all(&bytes).map_err(io_failure)?,
    }
    Ok(true)
}

fn verify(cmd: VerifyCommand) -> Outcome {
    match cmd {
        VerifyCommand::Extracting { scheme, max, quiet } => {
            let scheme = load_scheme(&scheme)?;
            let report = check_extracting(&scheme, max)?;
            if !quiet {
                for line in report.lines() {
                    outln!("{line}");
                }
            }
            out!("{report}");
            Ok(report.passed())
        }
        VerifyCommand::Tree { scheme, grid, seed } => {
            let scheme = load_scheme(&scheme)?;
            let tree = scheme.tree();
            let failing = non_uniform_outputs(tree, grid, seed);
            let symbolic = check_uniform_symbolic(tree);
            for k in &failing {
                outln!("output node {} ({}) is not uniform", k, scheme.labels()[*k]);
            }
            outln!(
                "{} output nodes; numeric check on {grid} sources: {}; symbolic check: {}",
                tree.components_with_role(Role::Output).len(),
                if failing.is_empty() {
                    "uniform"
                } else {
                    "FAILED"
                },
                if symbolic { "uniform" } else { "FAILED" },
            );
            Ok(failing.is_empty() && symbolic)
        }
        VerifyCommand::Structure {
            scheme,
            max,
            blocks,
        } => {
            let scheme = load_scheme(&scheme)?;
            let report = match blocks {
                Some(b) => check_structure_on(scheme.tree(), max, &b)?,
                None => check_structure(scheme.tree(), max)?,
            };
            outln!("{report}");
            Ok(report.passed())
        }
        VerifyCommand::Golden => {
            let report = golden_tables()?;
            out!("{report}");
            Ok(report.passed())
        }
    }
}

fn rate(cmd: RateCommand) -> Outcome {
    match cmd {
        RateCommand::Recursion {
            scheme,
            dist,
            depth,
        } => {
            let report = rate_report(&load_scheme(&scheme)?, &load_dist(&dist)?, depth)?;
            for (nu, r) in report.rates.iter().enumerate() {
                outln!("r{nu} {r:.12}");
            }
            outln!("bound {:.12}", report.entropy_bound);
            outln!("residual {:.3e}", report.residual);
        }
        RateCommand::Exact { scheme, dist, n } => {
            outln!(
                "{:.12}",
                exact_rate(&load_scheme(&scheme)?, &load_dist(&dist)?, n)?
            );
        }
        RateCommand::Empirical {
            scheme,
            dist,
            samples,
            seed,
            chi_square,
        } => {
            let scheme = load_scheme(&scheme)?;
            let d = load_dist(&dist)?;
            match chi_square {
                None => outln!("rate {:.6}", empirical_rate(&scheme, &d, samples, seed)?),
                Some(word) => {
                    let x = sample_source(&d, samples, seed)?;
                    let out = scheme.extract(&x)?;
                    outln!("rate {:.6}", out.len() as f64 / samples.max(1) as f64);
                    let chi = chi_square_uniformity(out.symbols(), scheme.output_alphabet(), word)?;
                    outln!(
                        "chi_square {:.3} df {} words {} p_value {:.6}",
                        chi.statistic,
                        chi.degrees_of_freedom,
                        chi.samples,
                        chi.p_value
                    );
                }
            }
        }
        RateCommand::Compare {
            schemes,
            step,
            depth,
        } => {
            if !(step > 0.0 && step < 0.5) {
                return Err(usage("--step must lie in (0, 0.5)"));
            }
            let schemes = schemes
                .iter()
                .map(|n| builtin(n))
                .collect::<peres::Result<Vec<_>>>()?;
            let points = (1.0 / step).round() as usize;
            let grid: Vec<f64> = (1..points).map(|i| i as f64 * step).collect();
            let rows = compare_rows(&schemes, &grid, depth)?;
            let mut csv = Vec::new();
            compare_csv(&rows, &mut csv)?;
            io::stdout().write_all(&csv).map_err(io_failure)?;
        }
    }
    Ok(true)
}

fn entropy(dist: DistArgs, base: usize) -> Outcome {
    if base < 2 {
        return Err(usage("--base must be at least 2"));
    }
    outln!("{:.12}", shannon_entropy(&load_dist(&dist)?, base));
    Ok(true)
}

fn table(args: SchemeArgs) -> Outcome {
    let scheme = load_scheme(&args)?;
    let tree = scheme.tree();
    let aux: Vec<usize> = (0..tree.component_count())
        .filter(|&k| tree.role(k) != Role::Output)
        .collect();
    let width = tree.block_len().max(1);
    let mut header = format!("{:<width$}  Ψ1", "x");
    for &k in &aux {
        header.push_str(&format!("  {}", scheme.labels()[k]));
    }
    outln!("{header}");
    let lambda = |s: String| if s.is_empty() { "λ".to_string() } else { s };
    for block in 0..tree.block_alphabet() {
        let x = SymbolString::new(tree.source_alphabet(), tree.block_symbols(block))?;
        let base = SymbolString::new(scheme.output_alphabet(), scheme.base_digits(block).to_vec())?;
        let mut row = format!("{:<width$}  {}", x.to_string(), lambda(base.to_string()));
        for &k in &aux {
            let cell = tree
                .table(k)
                .get(block)
                .map(|d| d.to_string())
                .unwrap_or_default();
            row.push_str(&format!("  {}", lambda(cell)));
        }
        outln!("{row}");
    }
    Ok(true)
}

fn tree(cmd: TreeCommand) -> Outcome {
    match cmd {
        TreeCommand::Validate { file } => {
            let tree = read_tree(&file, None)?;
            outln!(
                "valid: {} source symbols, blocks of {}, {} leaves, {} internal nodes, output alphabet {}",
                tree.source_alphabet(),
                tree.block_len(),
                tree.block_alphabet(),
                tree.component_count(),
                tree.output_alphabet()
            );
        }
        TreeCommand::Show { file } => {
            let tree = read_tree(&file, None)?;
            outln!("{}", tree.pretty());
            for k in 0..tree.component_count() {
                let cells: Vec<String> = tree
                    .table(k)
                    .entries()
                    .iter()
                    .map(|e| e.map_or("λ".to_string(), |d| d.to_string()))
                    .collect();
                outln!("Φ{} {} {}", k + 1, tree.role(k).tag(), cells.join(" "));
            }
        }
    }
    Ok(true)
}
