//! Replication harness: one fixed model evaluated on many independently drawn
//! test cohorts at several censoring levels.
//!
//! Replication `r` draws its cohort from a ChaCha stream keyed by `r`, the
//! same stream at every level, so levels differ only in their censoring
//! draws. Tasks run in parallel and are gathered in `(level, replication)`
//! order; all estimator reductions are order-fixed, so output does not
//! depend on the number of worker threads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::censoring::{reverse_km, StepSurvival, DEFAULT_EPSILON};
use crate::cohort::Cohort;
use crate::concordance::{
    antolini_ctd, decompose, harrell_fixed_t, population_c, td_uno, uno_fixed_t, EstimatorOptions,
    MetricReport, TieMode,
};
use crate::datagen::{
    sim1_spec, sim2_spec, sim3_spec, tune_weibull_to_rate, CensoringSpec, CohortSpec, GompertzSpec,
    WeibullParams, DISCRETE_CENSORING_TABLE, SIM1_LEVELS,
};
use crate::error::{Error, Result};
use crate::oracle::OracleModel;
use crate::predictions::{Predictions, SurvivalModel};

/// Degradation of the PH oracle that puts its population concordance near 0.75.
pub const SIM1_DEGRADATION: f64 = 0.35;

const TUNING_STREAM: u64 = 0x7475_6e65;
const REFERENCE_STREAM: u64 = 0x7265_6665;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    HarrellT,
    UnoT,
    Antolini,
    TdUno,
    TdUnoTrueG,
}

impl Metric {
    pub const ALL: [Metric; 5] = [
        Metric::HarrellT,
        Metric::UnoT,
        Metric::Antolini,
        Metric::TdUno,
        Metric::TdUnoTrueG,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Metric::HarrellT => "harrell_t",
            Metric::UnoT => "uno_t",
            Metric::Antolini => "antolini",
            Metric::TdUno => "td_uno",
            Metric::TdUnoTrueG => "td_uno_true_g",
        }
    }

    /// Accepts the snake_case name or its kebab-case spelling.
    pub fn parse(s: &str) -> Option<Self> {
        let s = s.replace('-', "_");
        Self::ALL.into_iter().find(|m| m.name() == s)
    }

    pub fn is_fixed_t(self) -> bool {
        matches!(self, Metric::HarrellT | Metric::UnoT)
    }
}

impl std::fmt::Display for Metric {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AllPeriods {
    AllPeriods,
}

/// Evaluation times of the fixed-`t` metrics: a list, or `"all_periods"`
/// for `1..Tmax-1` on a discrete cohort.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FixedTimes {
    Times(Vec<f64>),
    Keyword(AllPeriods),
}

impl Default for FixedTimes {
    fn default() -> Self {
        FixedTimes::Times(Vec::new())
    }
}

/// Censoring of one level. `tuned_weibull` bisects the Weibull scale so the
/// censoring rate matches the level's label.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LevelCensoring {
    None,
    Weibull(WeibullParams),
    DiscreteHazard {
        p: Vec<f64>,
    },
    TunedWeibull {
        shape: f64,
        #[serde(default)]
        location: f64,
        #[serde(default = "default_probe_n")]
        probe_n: usize,
    },
}

fn default_probe_n() -> usize {
    100_000
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LevelSpec {
    /// Nominal censoring rate, used as the level key.
    pub label: f64,
    pub censoring: LevelCensoring,
}

/// The evaluated model: the generator's own curves unless `event` is given,
/// optionally degraded.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSpec {
    #[serde(default)]
    pub event: Option<GompertzSpec>,
    #[serde(default)]
    pub degradation: f64,
    #[serde(default)]
    pub degradation_seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub name: String,
    pub generator: CohortSpec,
    #[serde(default)]
    pub model: ModelSpec,
    pub levels: Vec<LevelSpec>,
    pub n_test: usize,
    pub replications: usize,
    pub seed: u64,
    pub metrics: Vec<Metric>,
    #[serde(default)]
    pub fixed_t: FixedTimes,
    #[serde(default = "default_epsilon")]
    pub epsilon: f64,
    #[serde(default)]
    pub tie_mode: TieMode,
    /// Size of the uncensored cohort behind the population reference; 0 skips it.
    #[serde(default = "default_reference_n")]
    pub reference_n: usize,
    #[serde(default = "default_true")]
    pub audit_decomposition: bool,
}

fn default_epsilon() -> f64 {
    DEFAULT_EPSILON
}

fn default_reference_n() -> usize {
    100_000
}

fn default_true() -> bool {
    true
}

impl ScenarioConfig {
    /// PH data at censoring 0, 4, 25, 45, 62 and 75%, degraded oracle.
    pub fn sim1() -> Self {
        let levels = SIM1_LEVELS
            .iter()
            .map(|&label| LevelSpec {
                label,
                censoring: if label == 0.0 {
                    LevelCensoring::None
                } else {
                    LevelCensoring::TunedWeibull {
                        shape: 1.0,
                        location: 0.0,
                        probe_n: default_probe_n(),
                    }
                },
            })
            .collect();
        Self {
            name: "sim1".into(),
            generator: sim1_spec(),
            model: ModelSpec {
                event: None,
                degradation: SIM1_DEGRADATION,
                degradation_seed: 1,
            },
            levels,
            n_test: 1000,
            replications: 100,
            seed: 20_240_101,
            metrics: vec![Metric::Antolini, Metric::TdUno, Metric::TdUnoTrueG],
            fixed_t: FixedTimes::default(),
            epsilon: DEFAULT_EPSILON,
            tie_mode: TieMode::Strict,
            reference_n: default_reference_n(),
            audit_decomposition: true,
        }
    }

    /// Discrete-time data with shuffled early events and the tabulated
    /// per-period censoring hazards; the model is the unshuffled truth.
    pub fn sim2() -> Self {
        let levels = DISCRETE_CENSORING_TABLE
            .iter()
            .map(|(label, p)| LevelSpec {
                label: *label,
                censoring: LevelCensoring::DiscreteHazard { p: p.to_vec() },
            })
            .collect();
        Self {
            name: "sim2".into(),
            generator: sim2_spec(),
            model: ModelSpec::default(),
            levels,
            n_test: 2000,
            replications: 100,
            seed: 20_240_102,
            metrics: vec![Metric::Antolini, Metric::TdUno, Metric::TdUnoTrueG],
            fixed_t: FixedTimes::default(),
            epsilon: DEFAULT_EPSILON,
            tie_mode: TieMode::Strict,
            reference_n: default_reference_n(),
            audit_decomposition: true,
        }
    }

    /// Non-PH data, uncensored, with Uno's C at every period.
    pub fn sim3() -> Self {
        Self {
            name: "sim3".into(),
            generator: sim3_spec(),
            model: ModelSpec::default(),
            levels: vec![LevelSpec {
                label: 0.0,
                censoring: LevelCensoring::None,
            }],
            n_test: 1000,
            replications: 100,
            seed: 20_240_103,
            metrics: vec![Metric::UnoT, Metric::TdUno],
            fixed_t: FixedTimes::Keyword(AllPeriods::AllPeriods),
            epsilon: DEFAULT_EPSILON,
            tie_mode: TieMode::Strict,
            reference_n: default_reference_n(),
            audit_decomposition: true,
        }
    }

    pub fn preset(name: &str) -> Option<Self> {
        match name {
            "sim1" => Some(Self::sim1()),
            "sim2" => Some(Self::sim2()),
            "sim3" => Some(Self::sim3()),
            _ => None,
        }
    }

    /// Checks the config, reporting the offending field.
    pub fn validate(&self) -> Result<()> {
        let field = |field: &str, message: String| Error::Config {
            field: field.into(),
            message,
        };
        if self.replications < 1 {
            return Err(field("replications", "must be at least 1".into()));
        }
        if self.n_test < 2 {
            return Err(field("n_test", "must be at least 2".into()));
        }
        if self.levels.is_empty() {
            return Err(field("levels", "at least one level is required".into()));
        }
        if self.metrics.is_empty() {
            return Err(field("metrics", "at least one metric is required".into()));
        }
        if !(self.epsilon > 0.0 && self.epsilon <= 1.0) {
            return Err(field(
                "epsilon",
                format!("must lie in (0, 1], got {}", self.epsilon),
            ));
        }
        if !(0.0..=1.0).contains(&self.model.degradation) {
            return Err(field(
                "model.degradation",
                format!("must lie in [0, 1], got {}", self.model.degradation),
            ));
        }
        self.generator
            .validate()
            .map_err(|e| field("generator", e.to_string()))?;
        if let Some(ev) = &self.model.event {
            ev.validate(self.generator.covariates.len())
                .map_err(|e| field("model.event", e.to_string()))?;
        }
        for (i, level) in self.levels.iter().enumerate() {
            if !(0.0..1.0).contains(&level.label) {
                return Err(field(
                    &format!("levels[{i}].label"),
                    format!("must lie in [0, 1), got {}", level.label),
                ));
            }
            let spec = match &level.censoring {
                LevelCensoring::None => CensoringSpec::None,
                LevelCensoring::Weibull(w) => CensoringSpec::Weibull(*w),
                LevelCensoring::DiscreteHazard { p } => {
                    CensoringSpec::DiscreteHazard { p: p.clone() }
                }
                LevelCensoring::TunedWeibull {
                    shape, location, ..
                } => CensoringSpec::Weibull(WeibullParams {
                    shape: *shape,
                    scale: 1.0,
                    location: *location,
                }),
            };
            spec.validate()
                .map_err(|e| field(&format!("levels[{i}].censoring"), e.to_string()))?;
        }
        if self.metrics.iter().any(|m| m.is_fixed_t()) {
            let times = self
                .fixed_times()
                .map_err(|e| field("fixed_t", e.to_string()))?;
            if times.is_empty() {
                return Err(field(
                    "fixed_t",
                    "fixed-t metrics requested but no evaluation times given".into(),
                ));
            }
        }
        Ok(())
    }

    /// The evaluated model.
    pub fn model(&self) -> Result<OracleModel> {
        let event = self
            .model
            .event
            .clone()
            .unwrap_or_else(|| self.generator.event.clone());
        OracleModel::new(event).degrade(self.model.degradation, self.model.degradation_seed)
    }

    /// Times of the fixed-`t` metrics.
    pub fn fixed_times(&self) -> Result<Vec<f64>> {
        match &self.fixed_t {
            FixedTimes::Times(t) => Ok(t.clone()),
            FixedTimes::Keyword(AllPeriods::AllPeriods) => {
                let grid = self.generator.grid.as_ref().ok_or_else(|| {
                    Error::InvalidParameter("\"all_periods\" needs a generator grid".into())
                })?;
                Ok((1..grid.period_count()).map(|k| k as f64).collect())
            }
        }
    }

    /// Resolves tuned levels into concrete censoring specs.
    pub fn resolve_levels(&self) -> Result<Vec<ResolvedLevel>> {
        self.levels
            .iter()
            .enumerate()
            .map(|(i, level)| {
                let (censoring, probe_rate) = match &level.censoring {
                    LevelCensoring::None => (CensoringSpec::None, None),
                    LevelCensoring::Weibull(w) => (CensoringSpec::Weibull(*w), None),
                    LevelCensoring::DiscreteHazard { p } => {
                        (CensoringSpec::DiscreteHazard { p: p.clone() }, None)
                    }
                    LevelCensoring::TunedWeibull { .. } if level.label == 0.0 => {
                        (CensoringSpec::None, Some(0.0))
                    }
                    LevelCensoring::TunedWeibull {
                        shape,
                        location,
                        probe_n,
                    } => {
                        let template = WeibullParams {
                            shape: *shape,
                            scale: 1.0,
                            location: *location,
                        };
                        let seed = derive_seed(self.seed, TUNING_STREAM, i as u64);
                        let tuned = tune_weibull_to_rate(
                            template,
                            level.label,
                            &self.generator,
                            *probe_n,
                            seed,
                        )?;
                        (
                            CensoringSpec::Weibull(tuned.params),
                            Some(tuned.achieved_rate),
                        )
                    }
                };
                Ok(ResolvedLevel {
                    label: level.label,
                    censoring,
                    probe_rate,
                })
            })
            .collect()
    }
}

fn derive_seed(seed: u64, stream: u64, index: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng.set_word_pos(u128::from(index) * 16);
    rng.random()
}

fn replication_rng(seed: u64, replication: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(replication as u64);
    rng
}

/// A level with its censoring spec fixed.
#[derive(Debug, Clone, PartialEq)]
pub struct ResolvedLevel {
    pub label: f64,
    pub censoring: CensoringSpec,
    /// Rate reached on the tuning probe, for tuned levels.
    pub probe_rate: Option<f64>,
}

/// One metric value of one replication.
#[derive(Debug, Clone, PartialEq)]
pub struct ReplicationRecord {
    pub scenario: String,
    pub level: f64,
    pub replication: usize,
    pub metric: Metric,
    pub t: Option<f64>,
    pub value: Option<f64>,
    pub usable_pairs: u64,
}

impl ReplicationRecord {
    pub fn undefined(&self) -> bool {
        self.value.is_none()
    }
}

/// Order statistics of one list of replication values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Summary {
    pub count: usize,
    pub undefined: usize,
    pub median: Option<f64>,
    pub q1: Option<f64>,
    pub q3: Option<f64>,
    pub sd: Option<f64>,
}

/// Median, quartiles (linear interpolation between order statistics) and
/// sample standard deviation of the defined values.
pub fn summarize(values: &[Option<f64>]) -> Result<Summary> {
    if values.is_empty() {
        return Err(Error::InvalidParameter(
            "cannot summarise an empty list".into(),
        ));
    }
    let mut v: Vec<f64> = values.iter().flatten().copied().collect();
    v.sort_by(f64::total_cmp);
    let undefined = values.len() - v.len();
    if v.is_empty() {
        return Ok(Summary {
            count: 0,
            undefined,
            median: None,
            q1: None,
            q3: None,
            sd: None,
        });
    }
    let n = v.len();
    let mean = v.iter().sum::<f64>() / n as f64;
    let sd = if n > 1 {
        (v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64).sqrt()
    } else {
        0.0
    };
    Ok(Summary {
        count: n,
        undefined,
        median: Some(quantile(&v, 0.5)),
        q1: Some(quantile(&v, 0.25)),
        q3: Some(quantile(&v, 0.75)),
        sd: Some(sd),
    })
}

fn quantile(sorted: &[f64], p: f64) -> f64 {
    let h = (sorted.len() - 1) as f64 * p;
    let lo = h.floor() as usize;
    let hi = (lo + 1).min(sorted.len() - 1);
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

/// Summary of one `(metric, level, t)` cell.
#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRecord {
    pub scenario: String,
    pub level: f64,
    pub metric: Metric,
    pub t: Option<f64>,
    pub summary: Summary,
    pub reference: Option<f64>,
}

/// A metric undefined in more than half of the replications at a level.
#[derive(Debug, Clone, PartialEq)]
pub struct Warning {
    pub level: f64,
    pub metric: Metric,
    pub t: Option<f64>,
    pub undefined: usize,
    pub replications: usize,
}

impl std::fmt::Display for Warning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} ", self.metric)?;
        if let Some(t) = self.t {
            write!(f, "at t = {t} ")?;
        }
        write!(
            f,
            "undefined in {} of {} replications at level {}",
            self.undefined, self.replications, self.level
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioResult {
    pub records: Vec<ReplicationRecord>,
    pub summaries: Vec<SummaryRecord>,
    pub warnings: Vec<Warning>,
    /// Population concordance of the model on the uncensored generator.
    pub reference: Option<f64>,
    pub levels: Vec<ResolvedLevel>,
    /// Mean realised pre-horizon censoring rate per level.
    pub censoring_rates: Vec<f64>,
    pub decomposition_checks: usize,
    pub decomposition_failures: usize,
}

impl ScenarioResult {
    pub fn summary(&self, level: f64, metric: Metric, t: Option<f64>) -> Option<&SummaryRecord> {
        self.summaries
            .iter()
            .find(|s| s.level == level && s.metric == metric && s.t == t)
    }

    pub fn values(&self, level: f64, metric: Metric, t: Option<f64>) -> Vec<Option<f64>> {
        self.records
            .iter()
            .filter(|r| r.level == level && r.metric == metric && r.t == t)
            .map(|r| r.value)
            .collect()
    }
}

/// The test cohort of replication `replication` at level `level`.
pub fn replicate_cohort(
    config: &ScenarioConfig,
    level: &ResolvedLevel,
    replication: usize,
) -> Result<Cohort> {
    let mut rng = replication_rng(config.seed, replication);
    config
        .generator
        .generate(config.n_test, &level.censoring, &mut rng)
}

struct TaskOutput {
    records: Vec<ReplicationRecord>,
    censoring_rate: f64,
    decomposition: Option<bool>,
}

/// Runs every `(level, replication)` task and summarises the results.
pub fn run_scenario(config: &ScenarioConfig) -> Result<ScenarioResult> {
    config.validate()?;
    let model = config.model()?;
    let levels = config.resolve_levels()?;
    let times = if config.metrics.iter().any(|m| m.is_fixed_t()) {
        config.fixed_times()?
    } else {
        Vec::new()
    };
    let true_g = if config.metrics.contains(&Metric::TdUnoTrueG) {
        levels
            .iter()
            .map(|l| {
                l.censoring
                    .true_g(config.generator.grid.as_ref())?
                    .clamp(config.epsilon)
                    .map(Some)
            })
            .collect::<Result<Vec<_>>>()?
    } else {
        vec![None; levels.len()]
    };

    let tasks: Vec<(usize, usize)> = (0..levels.len())
        .flat_map(|l| (0..config.replications).map(move |r| (l, r)))
        .collect();
    let outputs: Vec<TaskOutput> = tasks
        .par_iter()
        .map(|&(l, r)| {
            let cohort = replicate_cohort(config, &levels[l], r)?;
            run_task(
                config,
                &model,
                &cohort,
                levels[l].label,
                r,
                &times,
                true_g[l].as_ref(),
            )
        })
        .collect::<Result<_>>()?;

    let reference = if config.reference_n >= 2 {
        let seed = derive_seed(config.seed, REFERENCE_STREAM, 0);
        Some(population_c(
            &model,
            &config.generator,
            config.reference_n,
            seed,
            config.tie_mode,
        )?)
    } else {
        None
    };

    let mut censoring_rates = vec![0.0; levels.len()];
    let mut decomposition_checks = 0;
    let mut decomposition_failures = 0;
    for (&(l, _), out) in tasks.iter().zip(&outputs) {
        censoring_rates[l] += out.censoring_rate / config.replications as f64;
        if let Some(ok) = out.decomposition {
            decomposition_checks += 1;
            decomposition_failures += usize::from(!ok);
        }
    }
    let records: Vec<ReplicationRecord> = outputs.into_iter().flat_map(|o| o.records).collect();
    let (summaries, warnings) = summarize_records(&records, reference)?;
    Ok(ScenarioResult {
        records,
        summaries,
        warnings,
        reference,
        levels,
        censoring_rates,
        decomposition_checks,
        decomposition_failures,
    })
}

fn run_task(
    config: &ScenarioConfig,
    model: &OracleModel,
    cohort: &Cohort,
    level: f64,
    replication: usize,
    times: &[f64],
    true_g: Option<&StepSurvival>,
) -> Result<TaskOutput> {
    let preds = model.bind(cohort);
    let preds: &dyn Predictions = preds.as_ref();
    let opts = EstimatorOptions {
        tie_mode: config.tie_mode,
        ..Default::default()
    };
    let needs_km = config
        .metrics
        .iter()
        .any(|m| matches!(m, Metric::UnoT | Metric::TdUno));
    let km = if needs_km {
        Some(reverse_km(cohort)?.clamp(config.epsilon)?)
    } else {
        None
    };

    let mut records = Vec::new();
    let mut push = |metric: Metric, t: Option<f64>, rep: MetricReport| {
        records.push(ReplicationRecord {
            scenario: config.name.clone(),
            level,
            replication,
            metric,
            t,
            value: rep.value,
            usable_pairs: rep.usable_pairs,
        })
    };
    for &metric in &config.metrics {
        match metric {
            Metric::HarrellT => {
                for &t in times {
                    push(metric, Some(t), harrell_fixed_t(cohort, preds, t, opts)?);
                }
            }
            Metric::UnoT => {
                for &t in times {
                    push(
                        metric,
                        Some(t),
                        uno_fixed_t(cohort, preds, t, km.as_ref().unwrap(), opts)?,
                    );
                }
            }
            Metric::Antolini => push(metric, None, antolini_ctd(cohort, preds, opts)?),
            Metric::TdUno => push(
                metric,
                None,
                td_uno(cohort, preds, km.as_ref().unwrap(), opts)?,
            ),
            Metric::TdUnoTrueG => push(metric, None, td_uno(cohort, preds, true_g.unwrap(), opts)?),
        }
    }
    let decomposition = if config.audit_decomposition {
        let d = decompose(cohort, preds, opts)?;
        Some(d.identity_holds_exactly().unwrap_or(true))
    } else {
        None
    };
    Ok(TaskOutput {
        records,
        censoring_rate: cohort.censoring_rate(),
        decomposition,
    })
}

/// Groups records by `(level, metric, t)` in first-seen order.
pub fn summarize_records(
    records: &[ReplicationRecord],
    reference: Option<f64>,
) -> Result<(Vec<SummaryRecord>, Vec<Warning>)> {
    let mut keys: Vec<(String, f64, Metric, Option<f64>)> = Vec::new();
    let mut cells: Vec<Vec<Option<f64>>> = Vec::new();
    for r in records {
        let key = (r.scenario.clone(), r.level, r.metric, r.t);
        match keys.iter().position(|k| *k == key) {
            Some(i) => cells[i].push(r.value),
            None => {
                keys.push(key);
                cells.push(vec![r.value]);
            }
        }
    }
    let mut summaries = Vec::with_capacity(keys.len());
    let mut warnings = Vec::new();
    for ((scenario, level, metric, t), values) in keys.into_iter().zip(cells) {
        let summary = summarize(&values)?;
        if 2 * summary.undefined > values.len() {
            warnings.push(Warning {
                level,
                metric,
                t,
                undefined: summary.undefined,
                replications: values.len(),
            });
        }
        summaries.push(SummaryRecord {
            scenario,
            level,
            metric,
            t,
            summary,
            reference,
        });
    }
    Ok((summaries, warnings))
}

/// Uno's C at every period `1..Tmax-1` for each replication.
pub fn per_period_profile(config: &ScenarioConfig) -> Result<ScenarioResult> {
    if config.generator.grid.is_none() {
        return Err(Error::InvalidCohort(
            "per-period profile needs a discrete generator".into(),
        ));
    }
    let mut c = config.clone();
    c.metrics = vec![Metric::UnoT];
    c.fixed_t = FixedTimes::Keyword(AllPeriods::AllPeriods);
    run_scenario(&c)
}

/// Random split into train and test parts. With `stratify_by_censoring`
/// censored and uncensored subjects are split separately so both parts keep
/// the cohort's censoring rate.
pub fn split_real_data(
    cohort: &Cohort,
    train_frac: f64,
    stratify_by_censoring: bool,
    seed: u64,
) -> Result<(Cohort, Cohort)> {
    use rand::seq::SliceRandom;
    if !(train_frac > 0.0 && train_frac < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "train fraction must lie in (0, 1), got {train_frac}"
        )));
    }
    let n = cohort.len();
    let strata: Vec<Vec<usize>> = if stratify_by_censoring {
        let (events, censored): (Vec<usize>, Vec<usize>) =
            (0..n).partition(|&i| cohort.subjects()[i].event);
        vec![events, censored]
    } else {
        vec![(0..n).collect()]
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut in_train = vec![false; n];
    for mut s in strata {
        s.shuffle(&mut rng);
        let k = (train_frac * s.len() as f64).round() as usize;
        for &i in &s[..k] {
            in_train[i] = true;
        }
    }
    let pick = |flag: bool| -> Vec<_> {
        (0..n)
            .filter(|&i| in_train[i] == flag)
            .map(|i| cohort.subjects()[i].clone())
            .collect()
    };
    let (train, test) = (pick(true), pick(false));
    if train.is_empty() || test.is_empty() {
        return Err(Error::InvalidCohort(format!(
            "{n} subjects are too few to split at fraction {train_frac}"
        )));
    }
    Ok((cohort.with_subjects(train), cohort.with_subjects(test)))
}
