//! Command-line front end: spectra, band structures, bandwidths, sweeps and
//! figure reproduction, driven by a JSON config with flag overrides.
//!
//! Exit codes: 0 success, 1 configuration or validation error, 2 runtime
//! error (I/O, singular solve).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use bomsim::bands::{bloch_bands, finite_chain_bands, Sector};
use bomsim::config::{
    load_config, BandSector, OutputConfig, OutputFormat, RunConfig, SweepAxis, SystemConfig,
    TaskConfig,
};
use bomsim::error::Error;
use bomsim::export::{to_json, Table};
use bomsim::figures::{run_figure, FigureId};
use bomsim::grid::FrequencyGrid;
use bomsim::lattice::build_dynamical_matrix;
use bomsim::metrics::{
    array_isolation_bandwidth, default_reference, sweep_backscatter, sweep_cells, sweep_g,
};
use bomsim::scattering::spectrum_sweep;
use bomsim::single_cavity::{isolation_bandwidth, transmission_spectrum};

#[derive(Parser)]
#[command(
    name = "bomsim",
    version,
    about = "Brillouin optomechanical cavity and array simulator"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct RunArgs {
    /// JSON run configuration (system, task, output).
    #[arg(long)]
    config: PathBuf,
    /// Override the task grid, `lo:hi:n`.
    #[arg(long, allow_hyphen_values = true)]
    grid: Option<FrequencyGrid>,
    /// Override the output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Override the output format.
    #[arg(long, value_parser = ["csv", "json"])]
    format: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Transmission spectra of the four-port single cavity.
    SingleCavity(RunArgs),
    /// Bloch or finite-chain band structure of the array.
    Bands(RunArgs),
    /// Array transmission spectrum T31/T13 with isolation.
    Transmission {
        #[command(flatten)]
        run: RunArgs,
        /// Also dump the dynamical matrix as CSV (row, col, re, im).
        #[arg(long)]
        dump_matrix: Option<PathBuf>,
    },
    /// Isolation bandwidth at the configured threshold.
    Bandwidth(RunArgs),
    /// Parameter sweep (axis taken from the config task block).
    Sweep(RunArgs),
    /// Reproduce a named figure dataset (fig1b .. fig6d).
    Figure {
        /// Figure id, e.g. `fig4c`.
        id: String,
        /// Output directory.
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Parse and validate a config file, reporting every violation.
    Validate { config: PathBuf },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Invalid(_)
        | Error::EmptyGrid
        | Error::BadGrid
        | Error::CoupledSectors
        | Error::Config { .. }
        | Error::Json(_)
        | Error::UnknownFigure(_) => 1,
        Error::SingularSystem | Error::Io(_) => 2,
    }
}

/// Loads the config and checks that its task block matches the subcommand.
fn load_for(args: &RunArgs, expected: &str) -> Result<RunConfig, Error> {
    let config = load_config(&args.config)?;
    let kind = config.task.kind();
    if kind != expected {
        return Err(Error::Config {
            path: args.config.display().to_string(),
            message: format!("task kind `{kind}` does not match subcommand `{expected}`"),
        });
    }
    Ok(config)
}

fn resolve_output(config: &RunConfig, args: &RunArgs) -> OutputConfig {
    let mut out = config.output.clone();
    if let Some(dir) = &args.out {
        out.dir = dir.clone();
    }
    if let Some(fmt) = &args.format {
        out.format = if fmt == "json" {
            OutputFormat::Json
        } else {
            OutputFormat::Csv
        };
    }
    out
}

fn write_output<T: serde::Serialize>(
    out: &OutputConfig,
    stem: &str,
    table: &Table,
    full: &T,
) -> Result<PathBuf, Error> {
    std::fs::create_dir_all(&out.dir)?;
    let path = match out.format {
        OutputFormat::Csv => {
            let path = out.dir.join(format!("{stem}.csv"));
            table.write_csv(&path)?;
            path
        }
        OutputFormat::Json => {
            let path = out.dir.join(format!("{stem}.json"));
            std::fs::write(&path, to_json(full)?)?;
            path
        }
    };
    Ok(path)
}

fn dispatch(command: Command) -> Result<(), Error> {
    match command {
        Command::SingleCavity(args) => {
            let config = load_for(&args, "spectrum")?;
            let SystemConfig::SingleCavity(sc) = &config.system else {
                return Err(Error::Config {
                    path: args.config.display().to_string(),
                    message: "single-cavity expects a single-cavity system".into(),
                });
            };
            let TaskConfig::Spectrum(task) = &config.task else {
                unreachable!()
            };
            let pair = task.pair.expect("validated");
            let grid = args
                .grid
                .or(task.grid)
                .unwrap_or(FrequencyGrid::symmetric(6.0, 2001));
            let spectrum = transmission_spectrum(&sc.to_params(), &grid, pair)?;
            let out = resolve_output(&config, &args);
            let path = write_output(&out, "spectrum", &spectrum.to_table(), &spectrum)?;
            println!("wrote {}", path.display());
            Ok(())
        }
        Command::Transmission {
            run: args,
            dump_matrix,
        } => {
            let config = load_for(&args, "spectrum")?;
            let SystemConfig::Array(sys) = &config.system else {
                return Err(Error::Config {
                    path: args.config.display().to_string(),
                    message: "transmission expects an array system".into(),
                });
            };
            let TaskConfig::Spectrum(task) = &config.task else {
                unreachable!()
            };
            let d = build_dynamical_matrix(&sys.to_params()?)?;
            if let Some(path) = dump_matrix {
                let mut file = std::fs::File::create(&path)?;
                d.write_matrix_csv(&mut file)?;
                println!("wrote {}", path.display());
            }
            let grid = args
                .grid
                .or(task.grid)
                .unwrap_or(FrequencyGrid::symmetric(30.0, 2001));
            let spectrum = spectrum_sweep(&d, &grid)?;
            let out = resolve_output(&config, &args);
            let path = write_output(&out, "transmission", &spectrum.to_table(), &spectrum)?;
            println!("wrote {}", path.display());
            Ok(())
        }
        Command::Bands(args) => {
            let config = load_for(&args, "bands")?;
            let SystemConfig::Array(sys) = &config.system else {
                return Err(Error::Config {
                    path: args.config.display().to_string(),
                    message: "bands expects an array system".into(),
                });
            };
            let TaskConfig::Bands(task) = &config.task else {
                unreachable!()
            };
            let params = sys.to_params()?;
            let bands = if task.chain {
                let sector = match task.sector {
                    BandSector::Ssh => Sector::Ssh,
                    BandSector::Stub => Sector::Stub,
                    BandSector::Full => {
                        return Err(Error::Config {
                            path: args.config.display().to_string(),
                            message:
                                "chain diagonalization is per sector; set sector to stub or ssh"
                                    .into(),
                        })
                    }
                };
                finite_chain_bands(&params, sector)?
            } else {
                let grid = args.grid.or(task.grid).unwrap_or(FrequencyGrid::new(
                    -std::f64::consts::PI,
                    std::f64::consts::PI,
                    201,
                ));
                bloch_bands(&params, &grid)?
            };
            let out = resolve_output(&config, &args);
            let path = write_output(&out, "bands", &bands.to_table(), &bands)?;
            println!("wrote {}", path.display());
            Ok(())
        }
        Command::Bandwidth(args) => {
            let config = load_for(&args, "bandwidth")?;
            let TaskConfig::Bandwidth(task) = &config.task else {
                unreachable!()
            };
            let out = resolve_output(&config, &args);
            match &config.system {
                SystemConfig::SingleCavity(sc) => {
                    let pair = task.pair.expect("validated");
                    let direction = task.direction.expect("validated");
                    let width =
                        isolation_bandwidth(&sc.to_params(), task.threshold_db, pair, direction)?;
                    let mut table = Table::new(["threshold_db", "width"]);
                    table.push_row([task.threshold_db, width]);
                    let full = serde_json::json!({
                        "threshold_db": task.threshold_db,
                        "pair": pair,
                        "direction": direction,
                        "width": width,
                        "params": sc.to_params(),
                    });
                    let path = write_output(&out, "bandwidth", &table, &full)?;
                    println!("bandwidth {width:.6e}");
                    println!("wrote {}", path.display());
                }
                SystemConfig::Array(sys) => {
                    let result = array_isolation_bandwidth(&sys.to_params()?, task.threshold_db)?;
                    let (lo, hi) = result.interval.unwrap_or((0.0, 0.0));
                    let mut table = Table::new(["threshold_db", "omega_lo", "omega_hi", "width"]);
                    table.push_row([result.threshold_db, lo, hi, result.width]);
                    let path = write_output(&out, "bandwidth", &table, &result)?;
                    println!("bandwidth {:.6e}", result.width);
                    println!("wrote {}", path.display());
                }
            }
            Ok(())
        }
        Command::Sweep(args) => {
            let config = load_for(&args, "sweep")?;
            let SystemConfig::Array(sys) = &config.system else {
                return Err(Error::Config {
                    path: args.config.display().to_string(),
                    message: "sweep expects an array system".into(),
                });
            };
            let TaskConfig::Sweep(task) = &config.task else {
                unreachable!()
            };
            let params = sys.to_params()?;
            let result = match task.axis {
                SweepAxis::G => {
                    let grid = task.grid.expect("validated");
                    sweep_g(&params, &grid.points(), task.threshold_db)?
                }
                SweepAxis::Backscatter => {
                    let grid = task.grid.expect("validated");
                    let omega_grid = task
                        .omega_grid
                        .unwrap_or(FrequencyGrid::symmetric(30.0, 2001));
                    sweep_backscatter(&params, &grid.points(), &omega_grid, task.kappa_d)?
                }
                SweepAxis::Cells => {
                    let cells = task.cells.clone().expect("validated");
                    let reference = default_reference(&params);
                    sweep_cells(&params, &cells, task.threshold_db, &reference)?
                }
            };
            let out = resolve_output(&config, &args);
            let path = write_output(&out, "sweep", &result.to_table(), &result)?;
            println!("wrote {}", path.display());
            Ok(())
        }
        Command::Figure { id, out } => {
            let id: FigureId = id.parse()?;
            let manifest = run_figure(id, &out)?;
            for entry in &manifest.files {
                println!(
                    "wrote {} ({} bytes, sha256 {})",
                    entry.name, entry.bytes, entry.sha256
                );
            }
            Ok(())
        }
        Command::Validate { config } => {
            load_config(&config)?;
            println!("ok: {}", config.display());
            Ok(())
        }
    }
}
