mod commands;
mod report;

use std::io;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use tropenum_core::catalog::{CatalogError, Family, Fixtures, Params};
use tropenum_core::census::CensusError;
use tropenum_core::curvecount::CurveError;
use tropenum_core::exactmath::{ExactError, Rational};
use tropenum_core::geometry::GeometryError;
use tropenum_core::mikhalkin::MikhalkinError;

use report::{Format, Report, Timing};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Flags that parse but make no sense together; exit code 2.
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Census(#[from] CensusError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Mikhalkin(#[from] MikhalkinError),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] io::Error),
}

#[derive(Debug, Parser)]
#[command(
    name = "tropenum",
    version,
    about = "Exact tropical floor-plan and lattice-path computations"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, value_enum, default_value = "text", global = true)]
    pub format: Format,
    /// Worker threads; defaults to the number of available cores.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Directory holding the fixture JSON files. Overrides TROPENUM_FIXTURES;
    /// without either the bundled fixtures are used.
    #[arg(long, global = true)]
    pub fixtures: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count δ-nodal degree-d plane curves through floor plans.
    CountCurves(CountCurvesArgs),
    /// Artificial floor-plan census of δ-nodal surfaces.
    Census(CensusArgs),
    /// Contribution of binodal polytopes to the degree-d surface count.
    Contribution(ContributionArgs),
    /// Binodal polytope families.
    #[command(subcommand)]
    Catalog(CatalogCommand),
    /// Lattice paths of a family instance and their feasibility.
    Paths(PathsArgs),
    /// Normal fan of a family instance.
    Fan(InstanceArgs),
    /// Whether two polytopes agree up to an integral unimodular affine map.
    IuaCheck(IuaArgs),
    /// Run every acceptance check.
    VerifyAll(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct CountCurvesArgs {
    #[arg(long)]
    pub degree: u32,
    #[arg(long)]
    pub nodes: u32,
    /// Counts per index tuple.
    #[arg(long)]
    pub breakdown: bool,
    /// Also evaluate the Caporaso-Harris recursion.
    #[arg(long)]
    pub oracle: bool,
    /// Largest accepted node count; enumeration grows quickly beyond it.
    #[arg(long, default_value_t = 6)]
    pub max_nodes: u32,
}

#[derive(Debug, Args)]
pub struct CensusArgs {
    #[arg(long)]
    pub delta: u32,
    /// Print the whole polynomial.
    #[arg(long, conflicts_with = "top_terms")]
    pub exact: bool,
    /// Number of leading terms to print.
    #[arg(long, default_value_t = 2)]
    pub top_terms: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ContributionTarget {
    #[value(name = "10")]
    F10,
    #[value(name = "13")]
    F13,
    #[value(name = "20")]
    F20,
    Total,
}

#[derive(Debug, Args)]
pub struct ContributionArgs {
    #[arg(long)]
    pub degree: i64,
    #[arg(long, value_enum, default_value = "total")]
    pub family: ContributionTarget,
    /// Include brute-force samples and per-family closed forms.
    #[arg(long)]
    pub report: bool,
    /// Brute force is compared with the closed forms on 5..=max(degree, this).
    #[arg(long)]
    pub sample_max: Option<i64>,
}

#[derive(Debug, Subcommand)]
pub enum CatalogCommand {
    /// Every family with its parameters.
    List,
    /// Polytope, degree and path multiplicities of one instance.
    Instantiate(InstanceArgs),
}

fn parse_family(s: &str) -> Result<Family, String> {
    let n: u32 = s
        .trim()
        .parse()
        .map_err(|_| format!("{s:?} is not a family number"))?;
    Family::try_from(n).map_err(|e| e.to_string())
}

#[derive(Debug, Clone, Args)]
pub struct InstanceArgs {
    #[arg(long, value_parser = parse_family)]
    pub family: Family,
    /// Like `a=3,b=1`.
    #[arg(long, default_value = "")]
    pub params: Params,
}

#[derive(Debug, Args)]
pub struct PathsArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    /// List infeasible paths with their obstructions too.
    #[arg(long)]
    pub all: bool,
    /// Lattice points a path may omit.
    #[arg(long, default_value_t = 2)]
    pub skip: usize,
    /// Direction parameter of the point line.
    #[arg(long)]
    pub eta: Option<Rational>,
    /// Comma-separated, strictly increasing, starting at 0.
    #[arg(long, value_delimiter = ',')]
    pub lambdas: Option<Vec<Rational>>,
    #[arg(long)]
    pub escalation_rounds: Option<u32>,
}

#[derive(Debug, Args)]
pub struct IuaArgs {
    #[arg(long, value_parser = parse_family)]
    pub family: Family,
    #[arg(long, default_value = "")]
    pub params: Params,
    #[arg(long, value_parser = parse_family)]
    pub other_family: Option<Family>,
    #[arg(long)]
    pub other_params: Option<Params>,
    /// Compare against these points instead, as `x,y,z;x,y,z;…`.
    #[arg(long, conflicts_with_all = ["other_family", "other_params"])]
    pub points: Option<String>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Run only these check ids.
    #[arg(long, value_delimiter = ',')]
    pub only: Vec<u32>,
}

fn load_fixtures(cli: &Cli) -> Result<Fixtures, CliError> {
    let dir = cli
        .fixtures
        .clone()
        .or_else(|| std::env::var_os("TROPENUM_FIXTURES").map(PathBuf::from));
    Ok(match dir {
        Some(dir) => Fixtures::load_dir(&dir)?,
        None => Fixtures::builtin().clone(),
    })
}

fn run(cli: &Cli, argv: Vec<String>) -> Result<bool, CliError> {
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(CliError::Usage("--threads must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    let fixtures = load_fixtures(cli)?;
    let start = Instant::now();
    let outcome = commands::dispatch(&cli.command, &fixtures)?;
    let report = Report {
        command: argv,
        results: outcome.results.clone(),
        consistency_flags: outcome.flags.clone(),
        timing: Timing {
            elapsed_ms: start.elapsed().as_millis() as u64,
            threads: rayon::current_num_threads(),
        },
    };
    report::emit(&mut io::stdout().lock(), cli.format, &report, &outcome)?;
    Ok(outcome.ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let argv: Vec<String> = std::env::args().skip(1).collect();
    match run(&cli, argv) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        // A closed downstream pipe (`| head`) is not a failure of the computation.
        Err(CliError::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
