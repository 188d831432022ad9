use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use qtm::plot::{render, PlotOptions};
use qtm::point::PointReport;
use qtm::sweep::SweepSpec;
use qtm::table::Table;
use qtm::verify::{self, VerifyOptions};
use qtm::{Error, ModelParams};

/// Heat transport through coupled quantum sites between two thermal baths.
#[derive(Parser)]
#[command(name = "qtm", version)]
struct Cli {
    /// Worker threads for sweeps and verification (default: logical cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Relative tolerance of `verify`.
    #[arg(long, global = true, default_value_t = verify::DEFAULT_TOLERANCE)]
    tolerance: f64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full report of one parameter point as JSON.
    Point {
        /// Parameter file, or `-` for stdin.
        params: PathBuf,
    },
    /// Evaluate a sweep spec into a CSV file.
    Sweep {
        spec: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Compare closed forms with the master-equation solver on seeded draws.
    Verify {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        cases: usize,
        /// Also check chains of 2 to 6 sites.
        #[arg(long)]
        chain: bool,
        /// Set g = 0 in the first draw.
        #[arg(long)]
        inject_zero_coupling: bool,
    },
    /// Draw a sweep CSV as SVG.
    Plot {
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        /// Force a log abscissa (default: detected from the grid).
        #[arg(long, conflicts_with = "linear_x")]
        log_x: bool,
        #[arg(long)]
        linear_x: bool,
        #[arg(long)]
        log_y: bool,
    },
}

fn read_input(path: &Path) -> Result<String, Error> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
    }
}

/// 0 success, 1 runtime or numerical failure, 2 usage or schema error.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) | Error::InvalidParameter { .. } => 2,
        _ => 1,
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Point { params } => {
            let p: ModelParams = serde_json::from_str(&read_input(&params)?)?;
            let report = PointReport::compute(&p)?;
            println!("{}", serde_json::to_string_pretty(&report)?);
        }
        Command::Sweep { spec, output } => {
            let spec = SweepSpec::from_json(&read_input(&spec)?)?;
            let out = spec.run()?;
            for e in &out.errors {
                eprintln!("qtm sweep: {e}");
            }
            out.table.write(&output)?;
        }
        Command::Verify {
            seed,
            cases,
            chain,
            inject_zero_coupling,
        } => {
            let opts = VerifyOptions {
                seed,
                cases,
                tolerance: cli.tolerance,
                chain,
                inject_zero_coupling,
            };
            let report = verify::run(&opts)?;
            eprint!("{}", report.to_table());
            println!("{}", report.to_json()?);
            if !report.all_passed() {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Plot {
            input,
            output,
            log_x,
            linear_x,
            log_y,
        } => {
            let table = Table::parse(&read_input(&input)?)?;
            let log_x = match (log_x, linear_x) {
                (true, _) => Some(true),
                (_, true) => Some(false),
                _ => None,
            };
            let svg = render(&table, &PlotOptions { log_x, log_y })?;
            std::fs::write(&output, svg)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build_global()
        {
            eprintln!("qtm: {e}");
            return ExitCode::from(1);
        }
    }
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("qtm: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
