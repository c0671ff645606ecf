//! Comma-separated file formats and TOML scenario configs.
//!
//! Numbers are written with Rust's shortest round-trip formatting, so every
//! value reads back bit-identical. Undefined values are empty fields.

use std::collections::HashMap;
use std::io::{Read, Write};
use std::path::Path;

use crate::censoring::StepSurvival;
use crate::cohort::{Cohort, Subject, TimeGrid};
use crate::concordance::MetricReport;
use crate::error::{Error, Result};
use crate::predictions::SurvivalMatrix;
use crate::sim::{Metric, ReplicationRecord, ScenarioConfig, Summary, SummaryRecord};

fn parse_err(path: &Path, line: u64, message: impl Into<String>) -> Error {
    Error::Parse {
        path: path.to_path_buf(),
        line,
        message: message.into(),
    }
}

fn reader(path: &Path) -> Result<csv::Reader<std::fs::File>> {
    Ok(csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(path)?)
}

fn line_of(rec: &csv::StringRecord) -> u64 {
    rec.position().map_or(0, |p| p.line())
}

fn parse_f64(path: &Path, line: u64, column: &str, s: &str) -> Result<f64> {
    s.parse::<f64>().map_err(|_| {
        parse_err(
            path,
            line,
            format!("column `{column}`: `{s}` is not a number"),
        )
    })
}

fn parse_opt_f64(path: &Path, line: u64, column: &str, s: &str) -> Result<Option<f64>> {
    if s.is_empty() {
        Ok(None)
    } else {
        parse_f64(path, line, column, s).map(Some)
    }
}

fn parse_u64(path: &Path, line: u64, column: &str, s: &str) -> Result<u64> {
    s.parse::<u64>().map_err(|_| {
        parse_err(
            path,
            line,
            format!("column `{column}`: `{s}` is not a non-negative integer"),
        )
    })
}

fn parse_flag(path: &Path, line: u64, column: &str, s: &str) -> Result<bool> {
    match s {
        "0" => Ok(false),
        "1" => Ok(true),
        _ => Err(parse_err(
            path,
            line,
            format!("column `{column}` must be 0 or 1, got `{s}`"),
        )),
    }
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map_or_else(String::new, |x| x.to_string())
}

/// Column lookup by header name.
struct Columns {
    index: HashMap<String, usize>,
}

impl Columns {
    fn new(path: &Path, headers: &csv::StringRecord, required: &[&str]) -> Result<Self> {
        let index: HashMap<String, usize> = headers
            .iter()
            .enumerate()
            .map(|(i, h)| (h.to_string(), i))
            .collect();
        if let Some(missing) = required.iter().find(|c| !index.contains_key(**c)) {
            return Err(parse_err(path, 1, format!("missing column `{missing}`")));
        }
        Ok(Self { index })
    }

    fn get<'r>(&self, rec: &'r csv::StringRecord, name: &str) -> &'r str {
        rec.get(self.index[name]).unwrap_or("")
    }
}

/// Reads `id, time, event, <covariates...>`; every column other than the
/// first three is a covariate, in file order. Times at or past `horizon` are
/// administratively censored; with a grid the cohort is discretised.
pub fn read_cohort(path: &Path, horizon: Option<f64>, grid: Option<&TimeGrid>) -> Result<Cohort> {
    let horizon = horizon.unwrap_or(f64::INFINITY);
    let mut rdr = reader(path)?;
    let headers = rdr.headers()?.clone();
    let cols = Columns::new(path, &headers, &["id", "time", "event"])?;
    let cov_idx: Vec<usize> = (0..headers.len())
        .filter(|&i| !matches!(&headers[i], "id" | "time" | "event"))
        .collect();
    let mut subjects = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        let line = line_of(&rec);
        if rec.len() != headers.len() {
            return Err(parse_err(
                path,
                line,
                format!("{} fields, header has {}", rec.len(), headers.len()),
            ));
        }
        let id = cols.get(&rec, "id").to_string();
        let time = parse_f64(path, line, "time", cols.get(&rec, "time"))?;
        if !(time >= 0.0) {
            return Err(parse_err(
                path,
                line,
                format!("subject {id}: negative time {time}"),
            ));
        }
        let event = parse_flag(path, line, "event", cols.get(&rec, "event"))?;
        let z = cov_idx
            .iter()
            .map(|&i| parse_f64(path, line, &headers[i], &rec[i]))
            .collect::<Result<Vec<_>>>()?;
        subjects.push(Subject::observed(id, time, event, z, horizon));
    }
    if subjects.is_empty() {
        return Err(Error::EmptyCohort);
    }
    let cohort = Cohort::new(subjects, horizon);
    let violations = cohort.validate();
    if !violations.is_empty() {
        let list: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
        return Err(Error::InvalidCohort(list.join("; ")));
    }
    match grid {
        Some(g) => cohort.discretize(g),
        None => Ok(cohort),
    }
}

/// Writes the observed data `id, time, event, z_1..z_p`.
pub fn write_cohort<W: Write>(cohort: &Cohort, w: W) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(w);
    let mut header = vec!["id".to_string(), "time".into(), "event".into()];
    header.extend((1..=cohort.n_covariates()).map(|k| format!("z_{k}")));
    wtr.write_record(&header)?;
    for s in cohort.subjects() {
        let mut row = vec![
            s.id.clone(),
            s.observed_time.to_string(),
            u8::from(s.event).to_string(),
        ];
        row.extend(s.covariates.iter().map(|z| z.to_string()));
        wtr.write_record(&row)?;
    }
    wtr.flush()?;
    Ok(())
}

/// Reads a prediction matrix (`id, t_1, t_2, ...`) and reorders its rows to
/// match `cohort`. Rows that increase are rejected unless
/// `allow_nonmonotone`, in which case they are replaced by their running
/// minimum; the second value is the number of entries changed.
pub fn read_predictions(
    path: &Path,
    cohort: &Cohort,
    allow_nonmonotone: bool,
) -> Result<(SurvivalMatrix, usize)> {
    let mut rdr = reader(path)?;
    let headers = rdr.headers()?.clone();
    if headers.get(0) != Some("id") {
        return Err(parse_err(path, 1, "first column must be `id`"));
    }
    let times = headers
        .iter()
        .skip(1)
        .map(|h| parse_f64(path, 1, "header", h))
        .collect::<Result<Vec<_>>>()?;
    let position: HashMap<&str, usize> = cohort
        .subjects()
        .iter()
        .enumerate()
        .map(|(i, s)| (s.id.as_str(), i))
        .collect();
    let width = times.len();
    let mut rows: Vec<Option<Vec<f64>>> = vec![None; cohort.len()];
    for rec in rdr.records() {
        let rec = rec?;
        let line = line_of(&rec);
        if rec.len() != width + 1 {
            return Err(parse_err(
                path,
                line,
                format!("{} fields, expected {}", rec.len(), width + 1),
            ));
        }
        let id = &rec[0];
        let &i = position
            .get(id)
            .ok_or_else(|| parse_err(path, line, format!("id `{id}` is not in the cohort")))?;
        if rows[i].is_some() {
            return Err(parse_err(path, line, format!("id `{id}` appears twice")));
        }
        let mut row = Vec::with_capacity(width);
        for (k, field) in rec.iter().skip(1).enumerate() {
            let v = parse_f64(path, line, &headers[k + 1], field)?;
            if !(0.0..=1.0).contains(&v) {
                return Err(parse_err(
                    path,
                    line,
                    format!(
                        "id `{id}`, column `{}`: probability {v} outside [0, 1]",
                        &headers[k + 1]
                    ),
                ));
            }
            if !allow_nonmonotone && k > 0 && v > row[k - 1] {
                return Err(parse_err(
                    path,
                    line,
                    format!(
                        "id `{id}`: survival increases from column `{}` to `{}`",
                        &headers[k],
                        &headers[k + 1]
                    ),
                ));
            }
            row.push(v);
        }
        rows[i] = Some(row);
    }
    if let Some(i) = rows.iter().position(Option::is_none) {
        return Err(parse_err(
            path,
            0,
            format!("no predictions for subject `{}`", cohort.subjects()[i].id),
        ));
    }
    let ids = cohort.subjects().iter().map(|s| s.id.clone()).collect();
    let values = rows.into_iter().flatten().flatten().collect();
    if allow_nonmonotone {
        SurvivalMatrix::new_clipped(times, ids, values)
    } else {
        SurvivalMatrix::new(times, ids, values).map(|m| (m, 0))
    }
}

pub fn write_predictions<W: Write>(m: &SurvivalMatrix, w: W) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(w);
    let mut header = vec!["id".to_string()];
    header.extend(m.times().iter().map(|t| t.to_string()));
    wtr.write_record(&header)?;
    for (id, row) in m.ids().iter().zip(m.rows()) {
        let mut rec = vec![id.clone()];
        rec.extend(row.iter().map(|v| v.to_string()));
        wtr.write_record(&rec)?;
    }
    wtr.flush()?;
    Ok(())
}

const RESULT_HEADER: [&str; 8] = [
    "scenario",
    "level",
    "replication",
    "metric",
    "t",
    "value",
    "usable_pairs",
    "undefined_flag",
];

/// Long format, one row per `(level, replication, metric, t)`.
pub fn write_results<W: Write>(records: &[ReplicationRecord], w: W) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(w);
    wtr.write_record(RESULT_HEADER)?;
    for r in records {
        wtr.write_record([
            r.scenario.clone(),
            r.level.to_string(),
            r.replication.to_string(),
            r.metric.to_string(),
            fmt_opt(r.t),
            fmt_opt(r.value),
            r.usable_pairs.to_string(),
            u8::from(r.undefined()).to_string(),
        ])?;
    }
    wtr.flush()?;
    Ok(())
}

fn parse_metric(path: &Path, line: u64, s: &str) -> Result<Metric> {
    Metric::parse(s).ok_or_else(|| parse_err(path, line, format!("unknown metric `{s}`")))
}

pub fn read_results(path: &Path) -> Result<Vec<ReplicationRecord>> {
    let mut rdr = reader(path)?;
    let cols = Columns::new(path, &rdr.headers()?.clone(), &RESULT_HEADER)?;
    let mut out = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        let line = line_of(&rec);
        let f = |c: &str| cols.get(&rec, c);
        let value = parse_opt_f64(path, line, "value", f("value"))?;
        if parse_flag(path, line, "undefined_flag", f("undefined_flag"))? != value.is_none() {
            return Err(parse_err(path, line, "undefined_flag disagrees with value"));
        }
        out.push(ReplicationRecord {
            scenario: f("scenario").to_string(),
            level: parse_f64(path, line, "level", f("level"))?,
            replication: parse_u64(path, line, "replication", f("replication"))? as usize,
            metric: parse_metric(path, line, f("metric"))?,
            t: parse_opt_f64(path, line, "t", f("t"))?,
            value,
            usable_pairs: parse_u64(path, line, "usable_pairs", f("usable_pairs"))?,
        });
    }
    Ok(out)
}

const SUMMARY_HEADER: [&str; 11] = [
    "scenario",
    "level",
    "metric",
    "t",
    "count",
    "undefined",
    "median",
    "q1",
    "q3",
    "sd",
    "reference",
];

/// Boxplot-ready summaries, one row per `(level, metric, t)`.
pub fn write_summaries<W: Write>(summaries: &[SummaryRecord], w: W) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(w);
    wtr.write_record(SUMMARY_HEADER)?;
    for s in summaries {
        let m = &s.summary;
        wtr.write_record([
            s.scenario.clone(),
            s.level.to_string(),
            s.metric.to_string(),
            fmt_opt(s.t),
            m.count.to_string(),
            m.undefined.to_string(),
            fmt_opt(m.median),
            fmt_opt(m.q1),
            fmt_opt(m.q3),
            fmt_opt(m.sd),
            fmt_opt(s.reference),
        ])?;
    }
    wtr.flush()?;
    Ok(())
}

pub fn read_summaries(path: &Path) -> Result<Vec<SummaryRecord>> {
    let mut rdr = reader(path)?;
    let cols = Columns::new(path, &rdr.headers()?.clone(), &SUMMARY_HEADER)?;
    let mut out = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        let line = line_of(&rec);
        let f = |c: &str| cols.get(&rec, c);
        let opt = |c: &str| parse_opt_f64(path, line, c, f(c));
        out.push(SummaryRecord {
            scenario: f("scenario").to_string(),
            level: parse_f64(path, line, "level", f("level"))?,
            metric: parse_metric(path, line, f("metric"))?,
            t: opt("t")?,
            summary: Summary {
                count: parse_u64(path, line, "count", f("count"))? as usize,
                undefined: parse_u64(path, line, "undefined", f("undefined"))? as usize,
                median: opt("median")?,
                q1: opt("q1")?,
                q3: opt("q3")?,
                sd: opt("sd")?,
            },
            reference: opt("reference")?,
        });
    }
    Ok(out)
}

/// One evaluated metric, as written by `evaluate`.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricRecord {
    pub metric: Metric,
    pub t: Option<f64>,
    pub report: MetricReport,
}

const METRIC_HEADER: [&str; 9] = [
    "metric",
    "t",
    "value",
    "numerator",
    "denominator",
    "usable_pairs",
    "tie_pairs",
    "max_weight",
    "undefined_flag",
];

pub fn write_metric_records<W: Write>(records: &[MetricRecord], w: W) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(w);
    wtr.write_record(METRIC_HEADER)?;
    for r in records {
        let m = &r.report;
        wtr.write_record([
            r.metric.to_string(),
            fmt_opt(r.t),
            fmt_opt(m.value),
            m.numerator.to_string(),
            m.denominator.to_string(),
            m.usable_pairs.to_string(),
            m.tie_pairs.to_string(),
            m.max_weight.to_string(),
            u8::from(m.value.is_none()).to_string(),
        ])?;
    }
    wtr.flush()?;
    Ok(())
}

pub fn read_metric_records(path: &Path) -> Result<Vec<MetricRecord>> {
    let mut rdr = reader(path)?;
    let cols = Columns::new(path, &rdr.headers()?.clone(), &METRIC_HEADER)?;
    let mut out = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        let line = line_of(&rec);
        let f = |c: &str| cols.get(&rec, c);
        let value = parse_opt_f64(path, line, "value", f("value"))?;
        if parse_flag(path, line, "undefined_flag", f("undefined_flag"))? != value.is_none() {
            return Err(parse_err(path, line, "undefined_flag disagrees with value"));
        }
        out.push(MetricRecord {
            metric: parse_metric(path, line, f("metric"))?,
            t: parse_opt_f64(path, line, "t", f("t"))?,
            report: MetricReport {
                value,
                numerator: parse_f64(path, line, "numerator", f("numerator"))?,
                denominator: parse_f64(path, line, "denominator", f("denominator"))?,
                usable_pairs: parse_u64(path, line, "usable_pairs", f("usable_pairs"))?,
                tie_pairs: parse_u64(path, line, "tie_pairs", f("tie_pairs"))?,
                max_weight: parse_f64(path, line, "max_weight", f("max_weight"))?,
            },
        });
    }
    Ok(out)
}

/// Two-column `time, value` table of a step function.
pub fn write_step_survival<W: Write>(g: &StepSurvival, w: W) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(w);
    wtr.write_record(["time", "value"])?;
    for (t, v) in g.to_table() {
        wtr.write_record([t.to_string(), v.to_string()])?;
    }
    wtr.flush()?;
    Ok(())
}

pub fn read_step_survival(path: &Path) -> Result<StepSurvival> {
    let mut rdr = reader(path)?;
    let cols = Columns::new(path, &rdr.headers()?.clone(), &["time", "value"])?;
    let (mut times, mut values) = (Vec::new(), Vec::new());
    for rec in rdr.records() {
        let rec = rec?;
        let line = line_of(&rec);
        let t = parse_f64(path, line, "time", cols.get(&rec, "time"))?;
        let v = parse_f64(path, line, "value", cols.get(&rec, "value"))?;
        if t == 0.0 && v == 1.0 && times.is_empty() {
            continue;
        }
        times.push(t);
        values.push(v);
    }
    StepSurvival::new(times, values)
}

/// Parses a scenario config; errors carry the dotted path of the bad field.
pub fn parse_config(text: &str) -> Result<ScenarioConfig> {
    let de = toml::Deserializer::parse(text).map_err(|e| Error::Config {
        field: String::new(),
        message: e.to_string(),
    })?;
    let config: ScenarioConfig =
        serde_path_to_error::deserialize(de).map_err(|e| Error::Config {
            field: e.path().to_string(),
            message: e.inner().to_string(),
        })?;
    config.validate()?;
    Ok(config)
}

pub fn read_config(path: &Path) -> Result<ScenarioConfig> {
    parse_config(&std::fs::read_to_string(path)?)
}

pub fn config_to_toml(config: &ScenarioConfig) -> Result<String> {
    toml::to_string(config).map_err(|e| Error::Config {
        field: String::new(),
        message: e.to_string(),
    })
}

/// Grid boundaries separated by commas or whitespace; `inf` may close the list.
pub fn parse_grid(text: &str) -> Result<TimeGrid> {
    let values = text
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<f64>()
                .map_err(|_| Error::InvalidGrid(format!("`{s}` is not a number")))
        })
        .collect::<Result<Vec<_>>>()?;
    TimeGrid::new(values)
}

/// A preset name (`d1`..`d5`) or a file of boundaries.
pub fn read_grid(spec: &str) -> Result<TimeGrid> {
    if let Some(g) = TimeGrid::named(spec) {
        return Ok(g);
    }
    let mut text = String::new();
    std::fs::File::open(spec)?.read_to_string(&mut text)?;
    parse_grid(&text)
}
