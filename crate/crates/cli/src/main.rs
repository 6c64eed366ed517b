use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use matgeg::exact::{parse_rational, Rational};

mod commands;

#[derive(Parser)]
#[command(name = "matgeg", version, about = "Exact matrix-valued Gegenbauer polynomials")]
struct Cli {
    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite; exit 1 if any identity fails
    Verify(VerifyArgs),
    /// Emit hatP_n as JSON after cross-checking both constructions
    Hatp(HatpArgs),
    /// Emit the verified generating-function closed form
    Genfun(GenfunArgs),
    /// Zero survey of selected entries, written as CSV (and optional SVG)
    Zeros(ZerosArgs),
}

#[derive(Args, Clone)]
struct Common {
    #[arg(long, default_value_t = 2)]
    two_ell: usize,
    /// Parameter nu as "p/q" or an integer
    #[arg(long, default_value = "1", value_parser = parse_nu)]
    nu: Rational,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum SuiteName {
    Scalar,
    Weight,
    Mvop,
    Connection,
    Operators,
    Genfun,
    All,
}

impl SuiteName {
    fn key(self) -> &'static str {
        match self {
            SuiteName::Scalar => "scalar",
            SuiteName::Weight => "weight",
            SuiteName::Mvop => "mvop",
            SuiteName::Connection => "connection",
            SuiteName::Operators => "operators",
            SuiteName::Genfun => "genfun",
            SuiteName::All => "all",
        }
    }
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    suite: SuiteName,
    #[command(flatten)]
    common: Common,
    #[arg(long, default_value_t = 6)]
    n_max: usize,
    /// Comma-separated nu values; overrides --nu
    #[arg(long, value_delimiter = ',', value_parser = parse_nu)]
    nu_grid: Vec<Rational>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Basis {
    Monomial,
    Gegenbauer,
}

#[derive(Args)]
struct HatpArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value_t = Basis::Monomial)]
    basis: Basis,
    /// Construction whose result is emitted (both are always cross-checked)
    #[arg(long, default_value = "recurrence")]
    builder: String,
}

#[derive(Args)]
struct GenfunArgs {
    #[command(flatten)]
    common: Common,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Requirement {
    /// every root real and inside (-1, 1)
    Real,
    /// every non-real root purely imaginary, every real root inside (-1, 1)
    PureImag,
    /// real roots interlace with the previous degree wherever the predecessor is surveyed
    Interlace,
}

#[derive(Args)]
struct ZerosArgs {
    #[command(flatten)]
    common: Common,
    /// Degrees: "30", "0..30" (inclusive) or "4,8,12"
    #[arg(long, default_value = "30", value_parser = parse_ns)]
    n: NList,
    /// Entries as "i,j"; repeatable
    #[arg(long, value_parser = parse_entry)]
    entry: Vec<(usize, usize)>,
    /// Restrict to entries of this echelon
    #[arg(long)]
    echelon: Option<usize>,
    #[arg(long, default_value_t = 0x5eed)]
    seed: u64,
    /// Classification tolerance
    #[arg(long, default_value_t = matgeg::zeros::TAU)]
    tol: f64,
    /// Directory for one SVG scatter per report
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Assertions that make the exit status nonzero when violated
    #[arg(long, value_enum, value_delimiter = ',')]
    require: Vec<Requirement>,
}

#[derive(Clone, Debug)]
struct NList(Vec<usize>);

fn parse_nu(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn parse_ns(s: &str) -> Result<NList, String> {
    let s = s.trim();
    if let Some((a, b)) = s.split_once("..") {
        let a: usize = a.trim().parse().map_err(|_| format!("bad range start in {s:?}"))?;
        let b: usize = b.trim().parse().map_err(|_| format!("bad range end in {s:?}"))?;
        return Ok(NList((a..=b).collect()));
    }
    s.split(',')
        .map(|x| x.trim().parse().map_err(|_| format!("bad degree {x:?}")))
        .collect::<Result<_, _>>()
        .map(NList)
}

fn parse_entry(s: &str) -> Result<(usize, usize), String> {
    let (i, j) = s.split_once(',').ok_or_else(|| format!("entry must be \"i,j\", got {s:?}"))?;
    Ok((i.trim().parse().map_err(|_| "bad row".to_string())?, j.trim().parse().map_err(|_| "bad column".to_string())?))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(t) = cli.threads {
        pool = pool.num_threads(t);
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let status = pool.install(|| match &cli.cmd {
        Command::Verify(a) => commands::verify(a),
        Command::Hatp(a) => commands::hatp(a),
        Command::Genfun(a) => commands::genfun(a),
        Command::Zeros(a) => commands::zeros(a),
    });
    match status {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(commands::CliError::Config(msg)) => {
            eprintln!("configuration error: {msg}");
            ExitCode::from(2)
        }
        Err(commands::CliError::Failed(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
