use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use schubert_mult::cli::{self, Format, TableRequest};
use schubert_mult::{Error, GrassmannIndex, Route};

#[derive(Parser)]
#[command(
    name = "schubert",
    version,
    about = "Multiplicities of points on Schubert varieties in Grassmannians"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Multiplicity of X_i along the cell X_j^0.
    Compute {
        #[arg(long)]
        n: usize,
        #[arg(
            long,
            value_delimiter = ',',
            required = true,
            allow_negative_numbers = true
        )]
        i: Vec<i64>,
        #[arg(
            long,
            value_delimiter = ',',
            required = true,
            allow_negative_numbers = true
        )]
        j: Vec<i64>,
        /// Routes to evaluate; all applicable routes when omitted.
        #[arg(long = "route", value_enum)]
        routes: Vec<Route>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Every pair j <= i in I_{d,n}.
    Table {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
        /// Routes to tabulate; the determinant route when omitted.
        #[arg(long = "route", value_enum)]
        routes: Vec<Route>,
        #[command(flatten)]
        output: OutputArgs,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Cross-check all routes on I_{d,n} and run the identity suites.
    Verify {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Time full-table sweeps per route.
    Bench {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
        /// Routes to time; determinant and recurrence when omitted.
        #[arg(long = "route", value_enum)]
        routes: Vec<Route>,
        #[arg(long, default_value_t = 1)]
        reps: usize,
        #[command(flatten)]
        run: RunArgs,
    },
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RunArgs {
    /// Allow n above the size guard.
    #[arg(long)]
    force: bool,
    /// Worker threads; defaults to the number of CPUs.
    #[arg(long)]
    jobs: Option<usize>,
}

enum Failure {
    Lib(Error),
    Io(io::Error),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

fn sink(path: Option<&PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn emit(records: &[schubert_mult::MultiplicityRecord], output: &OutputArgs) -> io::Result<()> {
    let out = sink(output.out.as_ref())?;
    match output.format {
        Format::Csv => cli::write_csv(records, out),
        Format::Json => cli::write_json(records, out),
    }
}

fn with_pool<T>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> T
where
    T: Send,
{
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        builder = builder.num_threads(j.max(1));
    }
    match builder.build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Compute {
            n,
            i,
            j,
            routes,
            output,
        } => {
            let i = GrassmannIndex::new(&i, n)?;
            let j = GrassmannIndex::new(&j, n)?;
            let records = cli::compute_records(&i, &j, &routes)?;
            emit(&records, &output)?;
        }
        Command::Table {
            d,
            n,
            routes,
            output,
            run,
        } => {
            let req = TableRequest {
                d,
                n,
                routes,
                force: run.force,
            };
            let records = with_pool(run.jobs, || cli::build_table(&req))?;
            emit(&records, &output)?;
        }
        Command::Verify {
            d,
            n,
            seed,
            out,
            run,
        } => {
            cli::check_guard(n, run.force)?;
            let report = with_pool(run.jobs, || cli::verify(d, n, seed))?;
            let mut w = sink(out.as_ref())?;
            serde_json::to_writer_pretty(&mut w, &report).map_err(io::Error::from)?;
            writeln!(w)?;
            w.flush()?;
            eprintln!(
                "verify d={d} n={n}: {} pairs, {} mismatches, {} identity suites{}",
                report.pairs_checked,
                report.mismatches.len(),
                report.identities_checked.len(),
                if report.passed() { "" } else { " (FAILED)" }
            );
            if !report.passed() {
                return Err(Failure::Verification);
            }
        }
        Command::Bench {
            d,
            n,
            routes,
            reps,
            run,
        } => {
            let lines = with_pool(run.jobs, || cli::bench(d, n, &routes, reps, run.force))?;
            let mut out = io::stdout().lock();
            for line in lines {
                writeln!(out, "{line}")?;
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let args = Cli::parse();
    match run(args.command) {
        Ok(()) => ExitCode::from(cli::EXIT_OK),
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(cli::exit_code(&e))
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(cli::EXIT_INVALID)
        }
        Err(Failure::Verification) => ExitCode::from(cli::EXIT_MISMATCH),
    }
}
