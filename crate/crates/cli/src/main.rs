use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use elections::io::{bundled_dataset, load_dataset, LoadError};
use elections::report::{render_scenario, render_summary};
use elections::runner::run_parallel;
use elections::{PcaReport, START_YEARS, WARN_BELOW_ELECTIONS};
use elections_core::figures::{emit_figure_data, Figure, Table};
use elections_core::montecarlo::RunSummary;
use elections_core::pca::loadings_report;
use elections_core::scenario::{run_scenario, SCENARIOS};
use elections_core::{DatasetError, ElectionDataset, ModelError, OutcomeRecord, PcaModel};

#[derive(Parser)]
#[command(name = "elections", version, about = "Simulate how often the popular-vote winner loses the Electoral College")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fit the principal-components model and print it as JSON.
    Pca {
        #[command(flatten)]
        data: DataArgs,
        /// Print the sorted coefficients of component J as CSV instead.
        #[arg(long, value_name = "J")]
        loadings: Option<usize>,
        /// Write pca.json and loadings_J.csv for every component here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a batch of simulated elections.
    Simulate {
        #[command(flatten)]
        data: DataArgs,
        #[arg(long, default_value_t = 20_000, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Senate electors per state to sweep.
        #[arg(long, value_delimiter = ',', default_value = "0,2,10,100")]
        k: Vec<u32>,
        /// Directory for summary.json and figure CSVs; without it the summary goes to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads (default: all cores).
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        threads: Option<u64>,
        /// Also write trials.csv with one row per trial.
        #[arg(long, requires = "out")]
        emit_trials: bool,
        /// Bin width of the electoral-difference histogram.
        #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u32).range(1..))]
        bins: u32,
    },
    /// Tally the three toy elections and check them against the expected table.
    Scenario,
    /// Render a summary.json as text.
    Report { summary: PathBuf },
}

#[derive(Args)]
struct DataArgs {
    /// Share table (`state,year,dem_share` or `state,year,dem_votes,rep_votes`); bundled data if omitted.
    #[arg(long, requires = "structure")]
    shares: Option<PathBuf>,
    /// Turnout and House electors (`state,turnout_two_party_2008,house_electors`).
    #[arg(long, requires = "shares")]
    structure: Option<PathBuf>,
    /// First election year to fit, 1964 to 2000 in steps of 4.
    #[arg(long, default_value_t = 1964, value_parser = parse_start_year)]
    start_year: u16,
}

fn parse_start_year(s: &str) -> Result<u16, String> {
    let y: u16 = s.parse().map_err(|_| format!("{s:?} is not a year"))?;
    if !START_YEARS.contains(&y) || !(y - START_YEARS.start()).is_multiple_of(4) {
        return Err(format!(
            "must be an election year from {} to {}",
            START_YEARS.start(),
            START_YEARS.end()
        ));
    }
    Ok(y)
}

#[derive(Debug, thiserror::Error)]
enum Failure {
    #[error(transparent)]
    Load(#[from] LoadError),
    #[error(transparent)]
    Dataset(#[from] DatasetError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("{0}")]
    Output(String),
    #[error("{0} of 3 scenarios differ from the expected table")]
    Scenario(usize),
}

impl Failure {
    fn name(&self) -> &'static str {
        match self {
            Failure::Load(e) => e.name(),
            Failure::Dataset(e) => e.name(),
            Failure::Model(e) => e.name(),
            Failure::Output(_) => "Output",
            Failure::Scenario(_) => "ScenarioMismatch",
        }
    }
}

fn output_err(path: &Path, e: impl std::fmt::Display) -> Failure {
    Failure::Output(format!("{}: {}", path.display(), e))
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), Failure> {
    fs::write(path, bytes).map_err(|e| output_err(path, e))
}

fn json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn load(data: &DataArgs) -> Result<ElectionDataset, Failure> {
    let full = match (&data.shares, &data.structure) {
        (Some(s), Some(t)) => load_dataset(s, t)?,
        _ => bundled_dataset(),
    };
    let d = full.since(data.start_year)?;
    if d.years().len() < WARN_BELOW_ELECTIONS {
        eprintln!(
            "warning: only {} elections from {} on; the fitted model has {} components",
            d.years().len(),
            data.start_year,
            d.years().len() - 1
        );
    }
    Ok(d)
}

fn table_csv(t: &Table) -> Vec<u8> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&t.header).expect("in-memory write");
    for row in &t.rows {
        w.write_record(row).expect("in-memory write");
    }
    w.into_inner().expect("in-memory write")
}

fn loadings_csv(model: &PcaModel, j: usize) -> Result<Vec<u8>, Failure> {
    let rows = loadings_report(model, j)?;
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["state", "coefficient"]).expect("in-memory write");
    for (state, c) in rows {
        w.write_record([state.name(), &c.to_string()]).expect("in-memory write");
    }
    Ok(w.into_inner().expect("in-memory write"))
}

fn trials_csv(records: &[OutcomeRecord]) -> Vec<u8> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["trial", "code", "dem_pop", "rep_pop", "H", "S", "diff", "california"])
        .expect("in-memory write");
    for r in records {
        w.write_record([
            r.trial.to_string(),
            r.code.to_string(),
            r.dem_pop.to_string(),
            r.rep_pop.to_string(),
            r.popular_winner_h.to_string(),
            r.popular_winner_s.to_string(),
            r.signed_electoral_diff.to_string(),
            r.carried_california.to_string(),
        ])
        .expect("in-memory write");
    }
    w.into_inner().expect("in-memory write")
}

fn pca(data: &DataArgs, loadings: Option<usize>, out: Option<&Path>) -> Result<(), Failure> {
    let d = load(data)?;
    let model = PcaModel::fit_dataset(&d)?;
    if let Some(j) = loadings {
        std::io::stdout()
            .write_all(&loadings_csv(&model, j)?)
            .map_err(|e| Failure::Output(e.to_string()))?;
        return Ok(());
    }
    let body = json(&PcaReport::new(d.years(), &model));
    match out {
        Some(dir) => {
            fs::create_dir_all(dir).map_err(|e| output_err(dir, e))?;
            write_file(&dir.join("pca.json"), body.as_bytes())?;
            for j in 1..=model.rank() {
                write_file(&dir.join(format!("loadings_{j}.csv")), &loadings_csv(&model, j)?)?;
            }
        }
        None => print!("{body}"),
    }
    Ok(())
}

struct SimulateArgs<'a> {
    data: &'a DataArgs,
    trials: u64,
    seed: u64,
    k: &'a [u32],
    out: Option<&'a Path>,
    threads: Option<usize>,
    emit_trials: bool,
    bins: u32,
}

fn simulate(a: SimulateArgs) -> Result<(), Failure> {
    let d = load(a.data)?;
    let model = PcaModel::fit_dataset(&d)?;
    let keep = a.out.is_some();
    let batch = run_parallel(&model, d.structure(), a.seed, a.trials, a.k, keep, a.threads)?;
    let summary: RunSummary = batch.accumulator.summary(a.seed, a.bins);
    let body = json(&summary);
    let Some(dir) = a.out else {
        print!("{body}");
        return Ok(());
    };
    fs::create_dir_all(dir).map_err(|e| output_err(dir, e))?;
    write_file(&dir.join("summary.json"), body.as_bytes())?;
    if !batch.records.is_empty() {
        for fig in [Figure::ScatterHs, Figure::DiffHistogram { bin_width: a.bins }, Figure::CaliforniaScatter] {
            let t = emit_figure_data(&batch.records, fig).expect("records are nonempty");
            write_file(&dir.join(format!("{}.csv", fig.name())), &table_csv(&t))?;
        }
    }
    if a.emit_trials {
        write_file(&dir.join("trials.csv"), &trials_csv(&batch.records))?;
    }
    eprintln!("wrote {}", dir.display());
    Ok(())
}

fn scenario() -> Result<(), Failure> {
    let mut bad = 0;
    for s in &SCENARIOS {
        let r = run_scenario(s).expect("toy scenarios have no ties");
        if !r.mismatches().is_empty() {
            bad += 1;
        }
        println!("{}", render_scenario(&r));
    }
    if bad > 0 {
        return Err(Failure::Scenario(bad));
    }
    Ok(())
}

fn report(path: &Path) -> Result<(), Failure> {
    let text = fs::read_to_string(path).map_err(|e| output_err(path, e))?;
    let s: RunSummary = serde_json::from_str(&text).map_err(|e| output_err(path, e))?;
    print!("{}", render_summary(&s));
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Pca { data, loadings, out } => pca(data, *loadings, out.as_deref()),
        Command::Simulate {
            data,
            trials,
            seed,
            k,
            out,
            threads,
            emit_trials,
            bins,
        } => simulate(SimulateArgs {
            data,
            trials: *trials,
            seed: *seed,
            k,
            out: out.as_deref(),
            threads: threads.map(|t| t as usize),
            emit_trials: *emit_trials,
            bins: *bins,
        }),
        Command::Scenario => scenario(),
        Command::Report { summary } => report(summary),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}: {}", e.name(), e);
            ExitCode::from(1)
        }
    }
}
