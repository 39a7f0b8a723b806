use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gamow_susy::figures::{
    figure_dataset, potential_dataset, state_dataset, Dataset, Format, RunParams, DEFAULT_ELL,
};
use gamow_susy::numerics::RadialGrid;
use gamow_susy::verify::{run_verification, VerifyConfig};
use gamow_susy::{Complex64, Error};

const EXIT_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_IO: u8 = 3;

#[derive(Parser)]
#[command(
    name = "gamow-susy",
    version,
    about = "Complex SUSY partners of the radial Coulomb problem from Gamow vectors"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the dataset of figure 1 to 5.
    Figure {
        #[arg(value_name = "N", value_parser = clap::value_parser!(u8).range(1..=5))]
        figure: u8,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Run the verification suite and write report.json.
    Verify {
        #[command(flatten)]
        run: RunArgs,
    },
    /// Write the partner potential and the bare effective potential.
    Potential {
        #[command(flatten)]
        run: RunArgs,
    },
    /// Write the transformation function and the extra state.
    State {
        #[command(flatten)]
        run: RunArgs,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Args)]
struct RunArgs {
    /// Angular momentum.
    #[arg(long = "l", default_value_t = DEFAULT_ELL)]
    ell: u32,
    #[arg(long, default_value_t = -0.2604, allow_negative_numbers = true)]
    eps_re: f64,
    #[arg(long, default_value_t = 0.104, allow_negative_numbers = true)]
    eps_im: f64,
    /// Defaults to 0, or 1 for figures 4 and 5.
    #[arg(long, allow_negative_numbers = true)]
    xi_re: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    xi_im: Option<f64>,
    /// Use the real wavenumber k > 0 instead of the Gamow branch of the energy.
    #[arg(long)]
    hermitian: Option<f64>,
    #[arg(long, default_value_t = RadialGrid::DEFAULT_R_MIN)]
    rmin: f64,
    /// Defaults to the figure range, or 40.
    #[arg(long)]
    rmax: Option<f64>,
    #[arg(long, default_value_t = RadialGrid::DEFAULT_N_POINTS)]
    n: usize,
    #[arg(long, default_value = ".")]
    out: PathBuf,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
}

impl RunArgs {
    fn params(&self) -> RunParams {
        let xi = match (self.xi_re, self.xi_im) {
            (None, None) => None,
            (re, im) => Some(Complex64::new(re.unwrap_or(0.0), im.unwrap_or(0.0))),
        };
        RunParams {
            ell: self.ell,
            epsilon: Complex64::new(self.eps_re, self.eps_im),
            xi,
            hermitian_k: self.hermitian,
            r_min: self.rmin,
            r_max: self.rmax,
            n_points: self.n,
        }
    }

    fn format(&self) -> Format {
        match self.format {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Io(_) => EXIT_IO,
        Error::Domain(_) | Error::Branch(_) | Error::Classification(_) => EXIT_USAGE,
        _ => EXIT_FAILURE,
    }
}

fn write_dataset(ds: Dataset, run: &RunArgs) -> Result<u8, Error> {
    for path in ds.write(&run.out, run.format())? {
        println!("{}", path.display());
    }
    Ok(0)
}

fn verify(run: &RunArgs) -> Result<u8, Error> {
    let p = run.params();
    let grid = p.grid(RadialGrid::DEFAULT_R_MAX)?;
    let cfg = VerifyConfig {
        spec: p.spec(Complex64::new(0.0, 0.0))?,
        r_min: grid.r_min(),
        r_max: grid.r_max(),
        n_points: grid.len(),
    };
    let report = run_verification(&cfg)?;
    for c in &report.checks {
        let value = c.value.map_or_else(|| "n/a".to_string(), |v| format!("{v:.3e}"));
        let verdict = if c.passed { "PASS" } else { "FAIL" };
        println!("{verdict} {:<24} {value:>11} (tol {:.1e}) {}", c.name, c.tolerance, c.note);
    }
    write_report(&run.out, &report.to_json())?;
    Ok(if report.all_passed { 0 } else { EXIT_FAILURE })
}

fn write_report(dir: &Path, json: &str) -> Result<(), Error> {
    fs::create_dir_all(dir)?;
    let path = dir.join("report.json");
    fs::write(&path, format!("{json}\n"))?;
    println!("{}", path.display());
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Figure { figure, run } => {
            figure_dataset(*figure, &run.params()).and_then(|ds| write_dataset(ds, run))
        }
        Command::Verify { run } => verify(run),
        Command::Potential { run } => {
            potential_dataset(&run.params()).and_then(|ds| write_dataset(ds, run))
        }
        Command::State { run } => {
            state_dataset(&run.params()).and_then(|ds| write_dataset(ds, run))
        }
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
