//! `tduno`: evaluate survival predictions, run simulation scenarios,
//! generate synthetic cohorts and summarise replication results.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use tduno::io::{
    read_cohort, read_config, read_grid, read_predictions, read_results, read_step_survival,
    write_cohort, write_metric_records, write_predictions, write_results, write_summaries,
    MetricRecord,
};
use tduno::sim::{replicate_cohort, run_scenario, summarize_records, Metric, ScenarioConfig};
use tduno::{
    antolini_ctd, harrell_fixed_t, reverse_km, td_uno, uno_fixed_t, EstimatorOptions,
    SurvivalMatrix, SurvivalModel, TieMode,
};

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Data(#[from] tduno::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Data(tduno::Error::Config { .. }) => 1,
            CliError::Data(_) => 2,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(
    name = "tduno",
    version,
    about = "Concordance measures for right-censored survival models"
)]
struct Cli {
    /// Worker threads (default: all cores). Output does not depend on it.
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    threads: Option<u16>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a prediction matrix on an observed cohort.
    Evaluate(EvaluateArgs),
    /// Run a simulation scenario and write per-replication and summary records.
    Simulate(SimulateArgs),
    /// Draw one synthetic cohort, optionally with the generating model's curves.
    Datagen(DatagenArgs),
    /// Summarise a per-replication results file.
    Summarize(SummarizeArgs),
}

#[derive(Debug, Args)]
struct EvaluateArgs {
    /// Cohort file with columns id, time, event and covariates.
    #[arg(long)]
    cohort: PathBuf,
    /// Prediction matrix: id column, then one column per time or period.
    #[arg(long)]
    predictions: PathBuf,
    /// Metric to compute; repeatable. Default: harrell_t, uno_t, antolini, td_uno.
    #[arg(long = "metric", value_parser = parse_metric)]
    metrics: Vec<Metric>,
    /// Evaluation time of the fixed-t metrics; repeatable. Default: every
    /// prediction column before the horizon.
    #[arg(long = "t")]
    times: Vec<f64>,
    /// Lower bound applied to the estimated censoring survival.
    #[arg(long, default_value_t = tduno::DEFAULT_EPSILON, value_parser = parse_epsilon)]
    epsilon: f64,
    /// Administrative horizon, in the time units of the cohort file.
    #[arg(long)]
    tmax: Option<f64>,
    /// Discretise the cohort: grid preset (d1..d5) or a file of boundaries.
    #[arg(long)]
    grid: Option<String>,
    /// Scoring of tied predictions.
    #[arg(long, value_enum, default_value_t = TieArg::Strict)]
    tie_mode: TieArg,
    /// Clip increasing prediction rows to their running minimum instead of failing.
    #[arg(long)]
    allow_nonmonotone: bool,
    /// Known censoring survival (time, value table) used by td_uno_true_g.
    #[arg(long)]
    true_g: Option<PathBuf>,
    /// Output file (default: standard output).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, clap::ValueEnum)]
enum TieArg {
    Strict,
    Half,
}

impl From<TieArg> for TieMode {
    fn from(t: TieArg) -> Self {
        match t {
            TieArg::Strict => TieMode::Strict,
            TieArg::Half => TieMode::Half,
        }
    }
}

#[derive(Debug, Args)]
struct SimulateArgs {
    /// `sim1`, `sim2`, `sim3`, or `custom <FILE>` with a TOML scenario config.
    #[arg(long, num_args = 1..=2, value_names = ["NAME", "FILE"], required = true)]
    scenario: Vec<String>,
    /// Replications per censoring level (overrides the scenario).
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    replications: Option<u64>,
    /// Test cohort size (overrides the scenario).
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
    n: Option<u64>,
    /// Master seed (overrides the scenario).
    #[arg(long)]
    seed: Option<u64>,
    /// Per-replication records. Without it, only summaries go to standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Summary records (default: next to --out with a `.summary.csv` suffix).
    #[arg(long)]
    summary: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct DatagenArgs {
    /// Scenario preset (`sim1`, `sim2`, `sim3`) or a TOML scenario config.
    #[arg(long)]
    spec: String,
    /// Number of subjects.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    n: u64,
    /// Seed of the cohort draw and of any censoring tuning.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Censoring level of the scenario, by label (default: the first level).
    #[arg(long)]
    level: Option<f64>,
    /// Cohort file to write.
    #[arg(long)]
    out: PathBuf,
    /// Also write the scenario model's survival curves for the cohort.
    #[arg(long, value_name = "FILE")]
    emit_oracle: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SummarizeArgs {
    /// Per-replication results file written by `simulate --out`.
    #[arg(long = "in")]
    input: PathBuf,
    /// Output file (default: standard output).
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_metric(s: &str) -> Result<Metric, String> {
    Metric::parse(s).ok_or_else(|| {
        let names: Vec<&str> = Metric::ALL.iter().map(|m| m.name()).collect();
        format!("unknown metric `{s}`; expected one of {}", names.join(", "))
    })
}

fn parse_epsilon(s: &str) -> Result<f64, String> {
    let e: f64 = s.parse().map_err(|_| format!("`{s}` is not a number"))?;
    if e > 0.0 && e <= 1.0 {
        Ok(e)
    } else {
        Err(format!("epsilon must lie in (0, 1], got {e}"))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: Cli) -> CliResult<()> {
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(k) = cli.threads {
        pool = pool.num_threads(usize::from(k));
    }
    let pool = pool
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start worker threads: {e}")))?;
    pool.install(|| match cli.command {
        Command::Evaluate(a) => evaluate(a),
        Command::Simulate(a) => simulate(a),
        Command::Datagen(a) => datagen(a),
        Command::Summarize(a) => summarize(a),
    })
}

fn output(path: Option<&Path>) -> CliResult<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(tduno::Error::from)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn evaluate(a: EvaluateArgs) -> CliResult<()> {
    let grid = a.grid.as_deref().map(read_grid).transpose()?;
    let cohort = read_cohort(&a.cohort, a.tmax, grid.as_ref())?;
    let (preds, clipped) = read_predictions(&a.predictions, &cohort, a.allow_nonmonotone)?;
    if clipped > 0 {
        eprintln!("clipped {clipped} increasing prediction entries to the running minimum");
    }
    let metrics = if a.metrics.is_empty() {
        vec![
            Metric::HarrellT,
            Metric::UnoT,
            Metric::Antolini,
            Metric::TdUno,
        ]
    } else {
        a.metrics
    };
    if metrics.contains(&Metric::TdUnoTrueG) && a.true_g.is_none() {
        return Err(CliError::Usage("td_uno_true_g needs --true-g".into()));
    }
    let times = if a.times.is_empty() {
        preds
            .times()
            .iter()
            .copied()
            .filter(|&t| t < cohort.horizon())
            .collect()
    } else {
        a.times
    };
    let opts = EstimatorOptions {
        tie_mode: a.tie_mode.into(),
        ..Default::default()
    };
    let km = reverse_km(&cohort)?.clamp(a.epsilon)?;
    let true_g = a
        .true_g
        .as_deref()
        .map(|p| read_step_survival(p)?.clamp(a.epsilon))
        .transpose()?;

    let mut records = Vec::new();
    for metric in metrics {
        match metric {
            Metric::HarrellT | Metric::UnoT => {
                for &t in &times {
                    let report = if metric == Metric::HarrellT {
                        harrell_fixed_t(&cohort, &preds, t, opts)?
                    } else {
                        uno_fixed_t(&cohort, &preds, t, &km, opts)?
                    };
                    records.push(MetricRecord {
                        metric,
                        t: Some(t),
                        report,
                    });
                }
            }
            Metric::Antolini => records.push(MetricRecord {
                metric,
                t: None,
                report: antolini_ctd(&cohort, &preds, opts)?,
            }),
            Metric::TdUno => records.push(MetricRecord {
                metric,
                t: None,
                report: td_uno(&cohort, &preds, &km, opts)?,
            }),
            Metric::TdUnoTrueG => records.push(MetricRecord {
                metric,
                t: None,
                report: td_uno(&cohort, &preds, true_g.as_ref().unwrap(), opts)?,
            }),
        }
    }
    if records.iter().any(|r| r.report.value.is_none()) {
        eprintln!("some metrics are undefined (no usable pair); see undefined_flag");
    }
    write_metric_records(&records, output(a.out.as_deref())?)?;
    Ok(())
}

fn load_scenario(words: &[String]) -> CliResult<ScenarioConfig> {
    match words {
        [name] if name == "custom" => Err(CliError::Usage(
            "--scenario custom needs a config file".into(),
        )),
        [name] => ScenarioConfig::preset(name).ok_or_else(|| {
            CliError::Usage(format!(
                "unknown scenario `{name}`; expected sim1, sim2, sim3 or custom <FILE>"
            ))
        }),
        [kind, file] if kind == "custom" => Ok(read_config(Path::new(file))?),
        _ => Err(CliError::Usage(format!(
            "unrecognised --scenario {}",
            words.join(" ")
        ))),
    }
}

fn summary_path(out: &Path) -> PathBuf {
    let stem = out
        .file_stem()
        .map_or_else(|| "results".into(), |s| s.to_string_lossy().into_owned());
    out.with_file_name(format!("{stem}.summary.csv"))
}

fn simulate(a: SimulateArgs) -> CliResult<()> {
    let mut config = load_scenario(&a.scenario)?;
    if let Some(r) = a.replications {
        config.replications = r as usize;
    }
    if let Some(n) = a.n {
        config.n_test = n as usize;
    }
    if let Some(s) = a.seed {
        config.seed = s;
    }
    let result = run_scenario(&config)?;

    if let Some(c) = result.reference {
        eprintln!("population concordance of the model: {c:.6}");
    }
    for (level, rate) in result.levels.iter().zip(&result.censoring_rates) {
        eprintln!(
            "level {}: mean realised censoring rate {rate:.4}",
            level.label
        );
    }
    if config.audit_decomposition {
        eprintln!(
            "decomposition identity exact in {} of {} cohorts",
            result.decomposition_checks - result.decomposition_failures,
            result.decomposition_checks
        );
    }
    for w in &result.warnings {
        eprintln!("warning: {w}");
    }
    print_profile(&result);

    let summary_out = match (&a.summary, &a.out) {
        (Some(s), _) => Some(s.clone()),
        (None, Some(o)) => Some(summary_path(o)),
        (None, None) => None,
    };
    if let Some(out) = &a.out {
        write_results(&result.records, output(Some(out))?)?;
    }
    write_summaries(&result.summaries, output(summary_out.as_deref())?)?;
    Ok(())
}

/// Spread of per-period medians for metrics evaluated at several times.
fn print_profile(result: &tduno::sim::ScenarioResult) {
    for metric in Metric::ALL {
        let medians: Vec<f64> = result
            .summaries
            .iter()
            .filter(|s| s.metric == metric && s.t.is_some())
            .filter_map(|s| s.summary.median)
            .collect();
        if medians.len() < 2 {
            continue;
        }
        let lo = medians.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = medians.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        eprintln!(
            "{metric} per-period medians range {lo:.4} to {hi:.4} (spread {:.4})",
            hi - lo
        );
    }
}

fn datagen(a: DatagenArgs) -> CliResult<()> {
    let mut config = match ScenarioConfig::preset(&a.spec) {
        Some(c) => c,
        None => read_config(Path::new(&a.spec))?,
    };
    config.seed = a.seed;
    config.n_test = a.n as usize;
    if let Some(label) = a.level {
        config.levels.retain(|l| l.label == label);
        if config.levels.is_empty() {
            return Err(CliError::Usage(format!("no level with label {label}")));
        }
    }
    config.levels.truncate(1);
    let level = config.resolve_levels()?.remove(0);
    let cohort = replicate_cohort(&config, &level, 0)?;
    write_cohort(&cohort, output(Some(&a.out))?)?;
    if let Some(grid) = cohort.grid() {
        eprintln!(
            "discrete cohort: times are periods 1..={}; evaluate with --tmax {}",
            grid.period_count(),
            grid.period_count()
        );
    }
    eprintln!("censoring rate {:.4}", cohort.censoring_rate());

    if let Some(path) = &a.emit_oracle {
        let model = config.model()?;
        let preds = model.bind(&cohort);
        let last = cohort.horizon().ceil() as usize;
        let times: Vec<f64> = (1..last).map(|k| k as f64).collect();
        let ids = cohort.subjects().iter().map(|s| s.id.clone()).collect();
        let matrix = SurvivalMatrix::sample(preds.as_ref(), ids, times)?;
        write_predictions(&matrix, output(Some(path))?)?;
    }
    Ok(())
}

fn summarize(a: SummarizeArgs) -> CliResult<()> {
    let records = read_results(&a.input)?;
    let (summaries, warnings) = summarize_records(&records, None)?;
    for w in &warnings {
        eprintln!("warning: {w}");
    }
    write_summaries(&summaries, output(a.out.as_deref())?)?;
    Ok(())
}
