use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;

use ergogap::bounds::{self, witness, Verdict, DEFAULT_DECISION_TOL};
use ergogap::ergotropy::ergotropic_gap;
use ergogap::io::{self, StateFile, SweepGrid};
use ergogap::ladder::{cumulative_d, slot_table, total_slot_count};
use ergogap::linalg::DEFAULT_TOL;
use ergogap::{DensityMatrix, Family, FamilySpec, LadderSpec};

#[derive(Parser)]
#[command(name = "ergogap", version, about = "Ergotropic-gap entanglement witness for d x d x d states")]
struct Cli {
    /// Decision tolerance: a state is flagged only if gap > bound + tol.
    #[arg(long, global = true, env = "ERGOGAP_TOL", default_value_t = DEFAULT_DECISION_TOL)]
    tol: f64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the witness; exit 0 = Entangled, 2 = Inconclusive, 1 = error.
    Witness(Source),
    /// Print the full ergotropy breakdown.
    Gap(Source),
    /// Sweep p for a one-parameter family and write CSV.
    Sweep(SweepArgs),
    /// Print M(d) and the slot table summary.
    Bounds {
        #[arg(long)]
        d: usize,
    },
    /// Check a state file; exit 0 = valid, 2 = invalid.
    Validate {
        #[arg(long)]
        input: PathBuf,
    },
    /// Write a gallery state as a state file.
    Export {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct FamilyArgs {
    /// State family, e.g. ghz, w, ghz-white-noise, product-mixture.
    #[arg(long)]
    family: Option<Family>,
    #[arg(long, default_value_t = 2)]
    d: usize,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Rank for random-mixed, component count for product-mixture.
    #[arg(long, default_value_t = 2)]
    rank: usize,
}

impl FamilyArgs {
    fn spec(&self) -> Result<FamilySpec> {
        let Some(family) = self.family else {
            bail!("either --input or --family is required");
        };
        let mut spec = FamilySpec::new(family).with_d(self.d).with_seed(self.seed).with_rank(self.rank);
        match (family.uses_p(), self.p) {
            (true, Some(p)) => spec = spec.with_p(p),
            (true, None) => bail!("family '{family}' needs --p"),
            (false, Some(_)) => log::warn!("family '{family}' ignores --p"),
            (false, None) => {}
        }
        Ok(spec)
    }
}

#[derive(Args)]
struct Source {
    /// State file (JSON, dense or pure).
    #[arg(long, conflicts_with = "family")]
    input: Option<PathBuf>,
    #[command(flatten)]
    family: FamilyArgs,
}

impl Source {
    fn load(&self) -> Result<DensityMatrix> {
        match &self.input {
            Some(path) => {
                let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                let file = StateFile::from_json(&text).with_context(|| format!("parsing {}", path.display()))?;
                file.to_density(DEFAULT_TOL)
                    .with_context(|| format!("{} is not a valid density matrix", path.display()))
            }
            None => Ok(self.family.spec()?.build()?),
        }
    }
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    family: Family,
    #[arg(long, default_value_t = 2)]
    d: usize,
    #[arg(long, default_value_t = 0.0)]
    p_start: f64,
    #[arg(long, default_value_t = 1.0)]
    p_end: f64,
    /// Number of intervals; the grid has steps + 1 points.
    #[arg(long, default_value_t = 10)]
    p_steps: usize,
    /// Output path; standard output if omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Serialize)]
struct Tagged<T> {
    units: &'static str,
    #[serde(flatten)]
    body: T,
}

fn print_json<T: Serialize>(body: T) -> Result<()> {
    let text = serde_json::to_string_pretty(&Tagged { units: "E", body })?;
    println!("{text}");
    Ok(())
}

#[derive(Serialize)]
struct BoundsSummary {
    d: usize,
    m_d: f64,
    m_d_polynomial: f64,
    slot_count: usize,
    cumulative_d: Vec<usize>,
    degeneracies: Vec<usize>,
    level_starts: Vec<usize>,
}

fn run(cli: Cli) -> Result<ExitCode> {
    let tol = cli.tol;
    if tol.is_nan() || tol < 0.0 {
        bail!("tolerance must be a nonnegative number, got {tol}");
    }
    match cli.command {
        Command::Witness(source) => {
            let rho = source.load()?;
            let v = witness(&rho, &LadderSpec::unit(rho.d())?, tol)?;
            print_json(v)?;
            Ok(match v.verdict {
                Verdict::Entangled => ExitCode::SUCCESS,
                Verdict::Inconclusive => ExitCode::from(2),
            })
        }
        Command::Gap(source) => {
            let rho = source.load()?;
            print_json(ergotropic_gap(&rho, &LadderSpec::unit(rho.d())?)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Sweep(args) => {
            let family = FamilySpec::new(args.family).with_d(args.d);
            io::check_sweepable(&family)?;
            let grid = SweepGrid::new(args.p_start, args.p_end, args.p_steps)?;
            let rows = grid
                .points()
                .into_par_iter()
                .map(|p| io::sweep_row(&family, p, tol))
                .collect::<ergogap::Result<Vec<_>>>()?;
            let csv = io::sweep_csv_string(&rows);
            match args.out {
                Some(path) => fs::write(&path, csv).with_context(|| format!("writing {}", path.display()))?,
                None => std::io::stdout().write_all(csv.as_bytes())?,
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Bounds { d } => {
            let spec = LadderSpec::unit(d)?;
            let table = slot_table(&spec);
            let m_d = bounds::bound_m(d)?;
            print_json(BoundsSummary {
                d,
                m_d,
                m_d_polynomial: bounds::bound_m_polynomial(d),
                slot_count: total_slot_count(d),
                cumulative_d: (0..=spec.top_level()).map(cumulative_d).collect(),
                degeneracies: table.degeneracies(),
                level_starts: table.level_starts(),
            })?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Validate { input } => {
            let text = fs::read_to_string(&input).with_context(|| format!("reading {}", input.display()))?;
            let file = StateFile::from_json(&text).with_context(|| format!("parsing {}", input.display()))?;
            let report = file.validate(DEFAULT_TOL)?;
            let valid = report.is_valid();
            for problem in &report.problems {
                eprintln!("{}: {problem}", input.display());
            }
            print_json(report)?;
            Ok(if valid { ExitCode::SUCCESS } else { ExitCode::from(2) })
        }
        Command::Export { family, out } => {
            let rho = family.spec()?.build()?;
            let json = StateFile::from_density(&rho).to_json();
            match out {
                Some(path) => fs::write(&path, json + "\n").with_context(|| format!("writing {}", path.display()))?,
                None => println!("{json}"),
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    // Usage errors exit 1, not clap's default 2, which means Inconclusive here.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
