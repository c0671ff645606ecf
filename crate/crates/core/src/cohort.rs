//! Right-censored cohorts, administrative censoring at the horizon and the
//! continuous-to-period mapping used by discrete-time models.
//!
//! A subject carries its observed time `X` and event flag, plus the latent
//! event time `T` and censoring time `D` when they are known (simulated data).
//! Real data only reveals `T` for events and `D` for pre-horizon censorings.
//!
//! Tie rule: the event is observed iff `T < D` strictly, so censoring wins
//! ties. Periods are right-open intervals `[a_{k-1}, a_k)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Partition of `[0, inf)` into right-open periods numbered `1..=period_count`.
///
/// Stored as the finite boundaries `a_0 = 0 < a_1 < ... < a_{K-1}`; the last
/// period `[a_{K-1}, inf)` is where everyone is administratively censored.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct TimeGrid {
    boundaries: Vec<f64>,
}

impl TimeGrid {
    /// Builds a grid from its boundaries. A trailing `+inf` is accepted and dropped.
    pub fn new(mut boundaries: Vec<f64>) -> Result<Self> {
        if boundaries.last() == Some(&f64::INFINITY) {
            boundaries.pop();
        }
        if boundaries.is_empty() {
            return Err(Error::InvalidGrid("no boundaries".into()));
        }
        if boundaries[0] != 0.0 {
            return Err(Error::InvalidGrid(format!(
                "first boundary must be 0, got {}",
                boundaries[0]
            )));
        }
        if boundaries.iter().any(|b| !b.is_finite()) {
            return Err(Error::InvalidGrid("boundaries must be finite".into()));
        }
        if let Some(w) = boundaries.windows(2).find(|w| w[0] >= w[1]) {
            return Err(Error::InvalidGrid(format!(
                "boundaries not strictly increasing at {} >= {}",
                w[0], w[1]
            )));
        }
        Ok(Self { boundaries })
    }

    /// Follow-up grid of the PH simulation: 11 periods, the last starting at 70.
    pub fn d1() -> Self {
        Self::preset(&[0., 5., 10., 15., 20., 25., 30., 40., 50., 60., 70.])
    }

    /// 15 periods over `[0, 35)` used by the discrete-censoring simulation.
    pub fn d2() -> Self {
        Self::preset(&[
            0., 4., 7., 9.5, 11.5, 13., 14., 16., 17., 19., 21., 23., 25., 28., 35.,
        ])
    }

    /// 16 periods over `[0, 150)` used by the non-PH simulation.
    pub fn d3() -> Self {
        Self::preset(&[
            0., 2., 3., 3.5, 3.75, 4., 5., 7.5, 10., 15., 20., 30., 50., 80., 90., 150.,
        ])
    }

    /// 15 periods of 14.25 days (heart-failure follow-up).
    pub fn d4() -> Self {
        Self::preset(&[
            0., 14.25, 28.5, 42.75, 57., 71.25, 85.5, 99.75, 114., 128.25, 142.5, 156.75, 171.,
            185.25, 199.5,
        ])
    }

    /// 11 periods over `[0, 1000)` days (TCGA follow-up).
    pub fn d5() -> Self {
        Self::preset(&[
            0., 74., 152.003, 234.465, 321.928, 415.039, 514.573, 621.488, 736.966, 862.497, 1000.,
        ])
    }

    /// Looks up `d1`..`d5` by name (case-insensitive).
    pub fn named(name: &str) -> Option<Self> {
        match name.to_ascii_lowercase().as_str() {
            "d1" => Some(Self::d1()),
            "d2" => Some(Self::d2()),
            "d3" => Some(Self::d3()),
            "d4" => Some(Self::d4()),
            "d5" => Some(Self::d5()),
            _ => None,
        }
    }

    fn preset(b: &[f64]) -> Self {
        Self {
            boundaries: b.to_vec(),
        }
    }

    pub fn boundaries(&self) -> &[f64] {
        &self.boundaries
    }

    /// Number of periods `Tmax`.
    pub fn period_count(&self) -> usize {
        self.boundaries.len()
    }

    /// Period `k` with `a_{k-1} <= t < a_k`; anything at or past the last
    /// finite boundary (including `+inf`) falls in period `Tmax`.
    pub fn period(&self, t: f64) -> usize {
        debug_assert!(t >= 0.0);
        self.boundaries.partition_point(|&a| a <= t).max(1)
    }

    /// Right end `a_k` of period `k`; `+inf` for the last period.
    pub fn upper_boundary(&self, period: usize) -> f64 {
        self.boundaries
            .get(period)
            .copied()
            .unwrap_or(f64::INFINITY)
    }
}

impl TryFrom<Vec<f64>> for TimeGrid {
    type Error = Error;

    fn try_from(v: Vec<f64>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<TimeGrid> for Vec<f64> {
    fn from(g: TimeGrid) -> Self {
        g.boundaries
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Subject {
    pub id: String,
    /// Latent event time `T`, if known.
    pub event_time: Option<f64>,
    /// Latent censoring time `D` (may be `+inf`), if known.
    pub censor_time: Option<f64>,
    pub covariates: Vec<f64>,
    /// `X = min(T, D, horizon)`.
    pub observed_time: f64,
    /// `T < D` and `T < horizon`.
    pub event: bool,
}

impl Subject {
    /// Subject with fully known latent times.
    pub fn from_latent(
        id: impl Into<String>,
        event_time: f64,
        censor_time: f64,
        covariates: Vec<f64>,
        horizon: f64,
    ) -> Self {
        let (observed_time, event) = observe(event_time, censor_time, horizon);
        Self {
            id: id.into(),
            event_time: Some(event_time),
            censor_time: Some(censor_time),
            covariates,
            observed_time,
            event,
        }
    }

    /// Subject as seen in real data: only `(X, event)` are known.
    ///
    /// An event reveals `T = X`; a censoring reveals `D = X` unless it is
    /// administrative (at or beyond `horizon`), in which case `D` stays unknown.
    pub fn observed(
        id: impl Into<String>,
        time: f64,
        event: bool,
        covariates: Vec<f64>,
        horizon: f64,
    ) -> Self {
        let observed_time = time.min(horizon);
        let event = event && time < horizon;
        let (event_time, censor_time) = if event {
            (Some(observed_time), None)
        } else if observed_time < horizon {
            (None, Some(observed_time))
        } else {
            (None, None)
        };
        Self {
            id: id.into(),
            event_time,
            censor_time,
            covariates,
            observed_time,
            event,
        }
    }

    pub fn has_full_knowledge(&self) -> bool {
        self.event_time.is_some() && self.censor_time.is_some()
    }
}

fn observe(t: f64, d: f64, horizon: f64) -> (f64, bool) {
    (t.min(d).min(horizon), t < d && t < horizon)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Cohort {
    subjects: Vec<Subject>,
    horizon: f64,
    n_covariates: usize,
    grid: Option<TimeGrid>,
}

impl Cohort {
    /// Wraps subjects without checking invariants; see [`Cohort::validate`].
    /// The covariate dimension is taken from the first subject.
    pub fn new(subjects: Vec<Subject>, horizon: f64) -> Self {
        let n_covariates = subjects.first().map_or(0, |s| s.covariates.len());
        Self {
            subjects,
            horizon,
            n_covariates,
            grid: None,
        }
    }

    /// Discrete cohort whose times are periods of `grid`.
    pub fn new_discrete(subjects: Vec<Subject>, grid: TimeGrid) -> Self {
        let mut c = Self::new(subjects, grid.period_count() as f64);
        c.grid = Some(grid);
        c
    }

    pub fn subjects(&self) -> &[Subject] {
        &self.subjects
    }

    pub fn len(&self) -> usize {
        self.subjects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subjects.is_empty()
    }

    pub fn horizon(&self) -> f64 {
        self.horizon
    }

    pub fn n_covariates(&self) -> usize {
        self.n_covariates
    }

    /// The grid this cohort was discretised with, if any.
    pub fn grid(&self) -> Option<&TimeGrid> {
        self.grid.as_ref()
    }

    pub fn is_discrete(&self) -> bool {
        self.grid.is_some()
    }

    pub fn has_full_knowledge(&self) -> bool {
        self.subjects.iter().all(Subject::has_full_knowledge)
    }

    /// Fraction of subjects censored strictly before the horizon.
    pub fn censoring_rate(&self) -> f64 {
        if self.subjects.is_empty() {
            return 0.0;
        }
        let c = self
            .subjects
            .iter()
            .filter(|s| !s.event && s.observed_time < self.horizon)
            .count();
        c as f64 / self.subjects.len() as f64
    }

    /// Same horizon and grid, different subjects.
    pub(crate) fn with_subjects(&self, subjects: Vec<Subject>) -> Self {
        Self {
            subjects,
            horizon: self.horizon,
            n_covariates: self.n_covariates,
            grid: self.grid.clone(),
        }
    }

    /// Maps every time onto the periods of `grid`.
    ///
    /// Latent times map period-wise (`D = inf` goes to `Tmax`), `X` becomes
    /// `min(T, D, Tmax)` and the event flag is recomputed on periods. Subjects
    /// without latent times keep their event flag unless they land in `Tmax`.
    pub fn discretize(&self, grid: &TimeGrid) -> Result<Cohort> {
        let tmax = grid.period_count() as f64;
        let period = |id: &str, t: f64| -> Result<f64> {
            if t.is_nan() || t < 0.0 {
                return Err(Error::NegativeTime {
                    id: id.to_string(),
                    value: t,
                });
            }
            Ok(grid.period(t) as f64)
        };
        let subjects = self
            .subjects
            .iter()
            .map(|s| {
                let event_time = s.event_time.map(|t| period(&s.id, t)).transpose()?;
                let censor_time = s.censor_time.map(|d| period(&s.id, d)).transpose()?;
                let x = period(&s.id, s.observed_time)?;
                let (observed_time, event) = match (event_time, censor_time) {
                    (Some(t), Some(d)) => observe(t, d, tmax),
                    _ => (x, s.event && x < tmax),
                };
                Ok(Subject {
                    id: s.id.clone(),
                    event_time,
                    censor_time,
                    covariates: s.covariates.clone(),
                    observed_time,
                    event,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let mut out = Cohort::new_discrete(subjects, grid.clone());
        out.n_covariates = self.n_covariates;
        Ok(out)
    }

    /// Clips follow-up at `horizon`. Never increases `X` and never turns a
    /// censoring into an event.
    pub fn apply_administrative_censoring(&self, horizon: f64) -> Result<Cohort> {
        if !(horizon > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "horizon must be positive, got {horizon}"
            )));
        }
        let subjects = self
            .subjects
            .iter()
            .map(|s| {
                let mut s = s.clone();
                let t = s.event_time.unwrap_or(s.observed_time);
                s.event = s.event && t < horizon;
                s.observed_time = s.observed_time.min(horizon);
                s
            })
            .collect();
        let mut out = self.with_subjects(subjects);
        out.horizon = horizon.min(self.horizon);
        Ok(out)
    }

    /// Every broken invariant, tagged with the offending subject.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let h = self.horizon;
        for s in &self.subjects {
            let mut push = |kind| {
                out.push(Violation {
                    subject: s.id.clone(),
                    kind,
                })
            };
            if s.covariates.len() != self.n_covariates {
                push(ViolationKind::CovariateLength {
                    expected: self.n_covariates,
                    found: s.covariates.len(),
                });
            }
            let times = [Some(s.observed_time), s.event_time, s.censor_time];
            if times.iter().flatten().any(|t| t.is_nan() || *t < 0.0) {
                push(ViolationKind::NegativeTime);
                continue;
            }
            if s.observed_time > h {
                push(ViolationKind::BeyondHorizon);
            }
            if s.event && s.observed_time >= h {
                push(ViolationKind::EventAtHorizon);
            }
            match (s.event_time, s.censor_time) {
                (Some(t), Some(d)) => {
                    let (x, e) = observe(t, d, h);
                    if x != s.observed_time {
                        push(ViolationKind::ObservedTimeMismatch {
                            expected: x,
                            found: s.observed_time,
                        });
                    }
                    if e != s.event {
                        push(ViolationKind::EventFlagMismatch);
                    }
                }
                (Some(t), None) if s.event && t != s.observed_time => {
                    push(ViolationKind::ObservedTimeMismatch {
                        expected: t,
                        found: s.observed_time,
                    });
                }
                (None, _) if s.event => push(ViolationKind::EventFlagMismatch),
                _ => {}
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub subject: String,
    pub kind: ViolationKind,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ViolationKind {
    CovariateLength { expected: usize, found: usize },
    NegativeTime,
    BeyondHorizon,
    EventAtHorizon,
    ObservedTimeMismatch { expected: f64, found: f64 },
    EventFlagMismatch,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "subject {}: ", self.subject)?;
        match &self.kind {
            ViolationKind::CovariateLength { expected, found } => {
                write!(f, "{found} covariates, expected {expected}")
            }
            ViolationKind::NegativeTime => write!(f, "negative or NaN time"),
            ViolationKind::BeyondHorizon => write!(f, "observed time beyond horizon"),
            ViolationKind::EventAtHorizon => write!(f, "event flagged at the horizon"),
            ViolationKind::ObservedTimeMismatch { expected, found } => {
                write!(
                    f,
                    "observed time {found}, expected min(T, D, Tmax) = {expected}"
                )
            }
            ViolationKind::EventFlagMismatch => {
                write!(f, "event flag inconsistent with latent times")
            }
        }
    }
}
