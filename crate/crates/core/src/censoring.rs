//! Censoring tail distribution `G(t) = P(D > t)`: reverse Kaplan–Meier
//! estimation, clamping into `G_eps`, and the exact `G` of per-period
//! censoring hazards.

use crate::cohort::Cohort;
use crate::error::{Error, Result};

/// Default lower bound for the censoring survival used in IPCW weights.
pub const DEFAULT_EPSILON: f64 = 0.02;

/// Right-continuous, non-increasing step function starting at 1.
#[derive(Debug, Clone, PartialEq)]
pub struct StepSurvival {
    jump_times: Vec<f64>,
    values: Vec<f64>,
    floor: Option<f64>,
}

impl StepSurvival {
    /// The constant function 1.
    pub fn one() -> Self {
        Self {
            jump_times: Vec::new(),
            values: Vec::new(),
            floor: None,
        }
    }

    /// Builds a step function from jump times and the values taken from each
    /// jump onwards.
    pub fn new(jump_times: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if jump_times.len() != values.len() {
            return Err(Error::InvalidParameter(format!(
                "{} jump times but {} values",
                jump_times.len(),
                values.len()
            )));
        }
        if jump_times.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::InvalidParameter(
                "jump times must be strictly increasing".into(),
            ));
        }
        for (index, &value) in values.iter().enumerate() {
            if !(0.0..=1.0).contains(&value) {
                return Err(Error::ProbabilityOutOfRange { index, value });
            }
        }
        if std::iter::once(&1.0)
            .chain(&values)
            .collect::<Vec<_>>()
            .windows(2)
            .any(|w| w[1] > w[0])
        {
            return Err(Error::InvalidParameter(
                "step survival must be non-increasing".into(),
            ));
        }
        Ok(Self {
            jump_times,
            values,
            floor: None,
        })
    }

    pub fn jump_times(&self) -> &[f64] {
        &self.jump_times
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `Some(eps)` once the function has been clamped into `G_eps`.
    pub fn floor(&self) -> Option<f64> {
        self.floor
    }

    /// Right-continuous value `g(t)`.
    pub fn value(&self, t: f64) -> f64 {
        let k = self.jump_times.partition_point(|&s| s <= t);
        if k == 0 {
            1.0
        } else {
            self.values[k - 1]
        }
    }

    /// Left limit `g(t-)`.
    pub fn left_limit(&self, t: f64) -> f64 {
        let k = self.jump_times.partition_point(|&s| s < t);
        if k == 0 {
            1.0
        } else {
            self.values[k - 1]
        }
    }

    /// Pointwise `max(g, eps)`, a member of `G_eps`.
    pub fn clamp(&self, eps: f64) -> Result<Self> {
        if !(eps > 0.0 && eps <= 1.0) {
            return Err(Error::EpsilonOutOfRange(eps));
        }
        Ok(Self {
            jump_times: self.jump_times.clone(),
            values: self.values.iter().map(|v| v.max(eps)).collect(),
            floor: Some(self.floor.map_or(eps, |f| f.max(eps))),
        })
    }

    /// `(time, value)` rows for audit output; the first row is `(0, g(0))`.
    pub fn to_table(&self) -> Vec<(f64, f64)> {
        let mut rows = vec![(0.0, self.value(0.0))];
        rows.extend(
            self.jump_times
                .iter()
                .zip(&self.values)
                .filter(|(&t, _)| t > 0.0)
                .map(|(&t, &v)| (t, v)),
        );
        rows
    }
}

/// Reverse Kaplan–Meier estimate of the censoring survival `G`.
///
/// `G(t) = prod_{s <= t} (1 - c(s) / r(s))` with `c(s)` the censorings at `s`
/// before the horizon and `r(s) = #{X >= s}`. Events at `s` stay in the risk
/// set; administrative censoring at the horizon is not a censoring event.
pub fn reverse_km(cohort: &Cohort) -> Result<StepSurvival> {
    if cohort.is_empty() {
        return Err(Error::EmptyCohort);
    }
    let horizon = cohort.horizon();
    let mut times: Vec<(f64, bool)> = cohort
        .subjects()
        .iter()
        .map(|s| (s.observed_time, !s.event && s.observed_time < horizon))
        .collect();
    times.sort_by(|a, b| a.0.total_cmp(&b.0));

    let n = times.len();
    let mut jump_times = Vec::new();
    let mut values = Vec::new();
    let mut g = 1.0;
    let mut i = 0;
    while i < n {
        let s = times[i].0;
        let at_risk = n - i;
        let mut censored = 0usize;
        while i < n && times[i].0 == s {
            censored += times[i].1 as usize;
            i += 1;
        }
        if censored > 0 {
            g *= (at_risk - censored) as f64 / at_risk as f64;
            jump_times.push(s);
            values.push(g);
        }
    }
    Ok(StepSurvival {
        jump_times,
        values,
        floor: None,
    })
}

/// Exact `G` for per-period censoring hazards `p_1..p_K`:
/// `G(t) = prod_{s=1..t} (1 - p_s)`.
pub fn true_g_discrete(period_hazards: &[f64]) -> Result<StepSurvival> {
    let mut g = 1.0;
    let mut values = Vec::with_capacity(period_hazards.len());
    for (index, &p) in period_hazards.iter().enumerate() {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::ProbabilityOutOfRange { index, value: p });
        }
        g *= 1.0 - p;
        values.push(g);
    }
    let jump_times = (1..=period_hazards.len()).map(|k| k as f64).collect();
    Ok(StepSurvival {
        jump_times,
        values,
        floor: None,
    })
}
