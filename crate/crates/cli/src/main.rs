use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use lattice_hull::apartment::{apartment_list_with, assemble_membrane, CoverStrategy};
use lattice_hull::experiment::{run_experiment, ExperimentConfig};
use lattice_hull::hull::{compute_hull, HullJob, HullOptions, Side};
use lattice_hull::io::{matrix_strings, parse_input, to_off, HullReport};
use lattice_hull::oracle::oracle_hull;
use lattice_hull::sa_basis::{sa_basis, SaBasisReport};
use lattice_hull::Error;

#[derive(Parser)]
#[command(name = "lattice-hull", version, about = "Convex hulls of lattice classes in Bruhat-Tits buildings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the convex hull of the input lattices.
    Hull {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Stop after the membrane and image matrix.
        #[arg(long)]
        membrane_only: bool,
        /// Include a lattice basis for every hull point.
        #[arg(long)]
        emit_lattices: bool,
        #[arg(long, value_enum, default_value_t = Cover::Auto)]
        cover: Cover,
        #[arg(long, value_enum, default_value_t = SideArg::Auto)]
        side: SideArg,
    },
    /// SA-basis of the first two input matrices.
    SaBasis {
        #[arg(long)]
        input: PathBuf,
    },
    /// Apartment list and enveloping membrane of the input lattices.
    Membrane {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Cover::Auto)]
        cover: Cover,
    },
    /// Brute-force hull by enumerating scaled intersections.
    Oracle {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        radius: i64,
    },
    /// Membrane sizes for random convex triangles.
    Experiment {
        #[arg(long, default_value_t = 5)]
        d: usize,
        #[arg(long, default_value_t = 3)]
        p: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = -20, allow_hyphen_values = true)]
        exp_min: i64,
        #[arg(long, default_value_t = 20, allow_hyphen_values = true)]
        exp_max: i64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Off,
}

#[derive(Clone, Copy, ValueEnum)]
enum Cover {
    Auto,
    Pairwise,
    Triangle,
}

impl From<Cover> for CoverStrategy {
    fn from(c: Cover) -> Self {
        match c {
            Cover::Auto => CoverStrategy::Auto,
            Cover::Pairwise => CoverStrategy::Pairwise,
            Cover::Triangle => CoverStrategy::Triangle,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Auto,
    Columns,
    Rows,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Self {
        match s {
            SideArg::Auto => Side::Auto,
            SideArg::Columns => Side::Columns,
            SideArg::Rows => Side::Rows,
        }
    }
}

#[derive(Debug)]
enum CliError {
    Io(PathBuf, std::io::Error),
    Lib(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(..) => 2,
            CliError::Lib(e) => e.exit_code() as u8,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Io(path, e) => write!(f, "{}: {e}", path.display()),
            CliError::Lib(e) => write!(f, "{e}"),
        }
    }
}

fn read(path: &PathBuf) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(path.clone(), e))
}

fn emit(text: &str, output: Option<&PathBuf>) -> Result<(), CliError> {
    match output {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Io(path.clone(), e)),
        None => {
            let mut out = std::io::stdout().lock();
            match writeln!(out, "{}", text.trim_end()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(CliError::Io("<stdout>".into(), e)),
                _ => Ok(()),
            }
        }
    }
}

fn pretty(value: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(value).expect("serializable output")
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Hull { input, output, format, membrane_only, emit_lattices, cover, side } => {
            let (ctx, matrices) = parse_input(&read(&input)?)?;
            let mut job = HullJob::new(ctx, matrices);
            job.options = HullOptions { membrane_only, emit_lattices, side: side.into(), strategy: cover.into() };
            let result = compute_hull(&job)?;
            let text = match format {
                Format::Json => HullReport::new(&result).to_json(),
                Format::Off => to_off(&result)?,
            };
            emit(&text, output.as_ref())
        }
        Command::SaBasis { input } => {
            let (_, matrices) = parse_input(&read(&input)?)?;
            let [m1, m2, ..] = matrices.as_slice() else {
                return Err(Error::Invalid("sa-basis needs two matrices".into()).into());
            };
            let sa = sa_basis(m1, m2)?;
            emit(&pretty(&SaBasisReport::from(&sa)), None)
        }
        Command::Membrane { input, cover } => {
            let (ctx, matrices) = parse_input(&read(&input)?)?;
            let list = apartment_list_with(&matrices, cover.into())?;
            let membrane = assemble_membrane(&list.apartments)?;
            let doc = json!({
                "field": ctx,
                "apartments": list.apartments.iter().map(matrix_strings).collect::<Vec<_>>(),
                "membrane": matrix_strings(&membrane.matrix),
                "provenance": membrane.provenance,
                "columns": membrane.n(),
            });
            emit(&pretty(&doc), None)
        }
        Command::Oracle { input, radius } => {
            let (ctx, matrices) = parse_input(&read(&input)?)?;
            let classes = oracle_hull(&matrices, radius)?;
            let doc = json!({
                "field": ctx,
                "radius": radius,
                "classes": classes.len(),
                "representatives": classes.representatives().iter().map(matrix_strings).collect::<Vec<_>>(),
            });
            emit(&pretty(&doc), None)
        }
        Command::Experiment { d, p, count, seed, exp_min, exp_max } => {
            let summary = run_experiment(&ExperimentConfig { d, p, count, seed, exp_min, exp_max })?;
            emit(&pretty(&summary), None)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
