//! Synthetic cohorts from a Gompertz proportional-hazards model.
//!
//! Event times invert the cumulative hazard
//! `H(t; Z) = (lambda / alpha) * exp(eta) * (exp(alpha * t) - 1)` with
//! `eta = intercept + beta'Z`, i.e.
//! `T = log(1 - alpha * log(v) / (lambda * exp(eta))) / alpha` for `v ~ U(0, 1]`.
//! Censoring is either a three-parameter Weibull in continuous time or a
//! per-period discrete hazard.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal, Weibull};
use serde::{Deserialize, Serialize};

use crate::censoring::{true_g_discrete, StepSurvival};
use crate::cohort::{Cohort, Subject, TimeGrid};
use crate::error::{Error, Result};

/// Marginal distribution of one covariate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CovariateDist {
    Bernoulli { p: f64 },
    Normal { mean: f64, sd: f64 },
}

impl CovariateDist {
    fn validate(&self) -> Result<()> {
        match *self {
            Self::Bernoulli { p } if !(0.0..=1.0).contains(&p) => Err(Error::InvalidParameter(
                format!("bernoulli probability {p} outside [0, 1]"),
            )),
            Self::Normal { mean, sd } if !mean.is_finite() || !(sd >= 0.0 && sd.is_finite()) => {
                Err(Error::InvalidParameter(format!(
                    "normal covariate needs finite mean and sd >= 0, got ({mean}, {sd})"
                )))
            }
            _ => Ok(()),
        }
    }

    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match *self {
            Self::Bernoulli { p } => rng.random_bool(p) as u8 as f64,
            Self::Normal { mean, sd } => {
                let e: f64 = StandardNormal.sample(rng);
                mean + sd * e
            }
        }
    }
}

/// Independent draws from each declared marginal.
pub fn gen_covariates<R: Rng + ?Sized>(dists: &[CovariateDist], rng: &mut R) -> Vec<f64> {
    dists.iter().map(|d| d.sample(rng)).collect()
}

/// The Gompertz `alpha`, either fixed or switched on the sign of `Z4 * Z5`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AlphaRule {
    Constant {
        value: f64,
    },
    /// `at_or_below` when `Z4 * Z5 <= 0`, `above` otherwise (1-based covariate indices).
    Z4z5Switch {
        at_or_below: f64,
        above: f64,
    },
}

impl AlphaRule {
    pub fn constant(value: f64) -> Self {
        Self::Constant { value }
    }

    /// The non-PH rule with `alpha` 0.1 or 0.4.
    pub fn nonph() -> Self {
        Self::Z4z5Switch {
            at_or_below: 0.1,
            above: 0.4,
        }
    }

    pub fn alpha(&self, z: &[f64]) -> f64 {
        match *self {
            Self::Constant { value } => value,
            Self::Z4z5Switch { at_or_below, above } => {
                if z[3] * z[4] <= 0.0 {
                    at_or_below
                } else {
                    above
                }
            }
        }
    }

    fn values(&self) -> Vec<f64> {
        match *self {
            Self::Constant { value } => vec![value],
            Self::Z4z5Switch { at_or_below, above } => vec![at_or_below, above],
        }
    }

    fn min_covariates(&self) -> usize {
        match self {
            Self::Constant { .. } => 0,
            Self::Z4z5Switch { .. } => 5,
        }
    }
}

/// `0.1` if `Z4 * Z5 <= 0`, else `0.4`.
pub fn nonph_alpha(z: &[f64]) -> f64 {
    AlphaRule::nonph().alpha(z)
}

/// Gompertz baseline with a log-linear covariate effect.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GompertzSpec {
    pub alpha: AlphaRule,
    pub lambda: f64,
    #[serde(default)]
    pub intercept: f64,
    pub beta: Vec<f64>,
}

impl GompertzSpec {
    pub fn validate(&self, n_covariates: usize) -> Result<()> {
        if !(self.lambda > 0.0 && self.lambda.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "lambda must be positive, got {}",
                self.lambda
            )));
        }
        if let Some(a) = self
            .alpha
            .values()
            .into_iter()
            .find(|a| *a == 0.0 || !a.is_finite())
        {
            return Err(Error::InvalidParameter(format!(
                "alpha must be finite and nonzero, got {a}"
            )));
        }
        if self.beta.len() != n_covariates {
            return Err(Error::InvalidParameter(format!(
                "{} coefficients for {} covariates",
                self.beta.len(),
                n_covariates
            )));
        }
        if n_covariates < self.alpha.min_covariates() {
            return Err(Error::InvalidParameter(format!(
                "alpha rule needs {} covariates, got {}",
                self.alpha.min_covariates(),
                n_covariates
            )));
        }
        Ok(())
    }

    /// `intercept + beta'Z`.
    pub fn linear_predictor(&self, z: &[f64]) -> f64 {
        self.intercept + self.beta.iter().zip(z).map(|(b, x)| b * x).sum::<f64>()
    }
}

/// Inverts the cumulative hazard at `v`, using the subject's own `alpha`.
pub fn gen_event_time(spec: &GompertzSpec, z: &[f64], v: f64) -> Result<f64> {
    invert(
        spec.alpha.alpha(z),
        spec.lambda,
        spec.linear_predictor(z),
        v,
    )
}

/// Event time with the fixed predictor `5 - 4Z`.
pub fn gen_event_time_sim2(alpha: f64, lambda: f64, z: f64, v: f64) -> Result<f64> {
    invert(alpha, lambda, 5.0 - 4.0 * z, v)
}

fn invert(alpha: f64, lambda: f64, eta: f64, v: f64) -> Result<f64> {
    if !(v > 0.0 && v <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "v must lie in (0, 1], got {v}"
        )));
    }
    let x = -alpha * v.ln() / (lambda * eta.exp());
    if !(1.0 + x > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "log argument {} is not positive (alpha = {alpha}, eta = {eta}, v = {v})",
            1.0 + x
        )));
    }
    Ok(x.ln_1p() / alpha)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeibullParams {
    pub shape: f64,
    pub scale: f64,
    #[serde(default)]
    pub location: f64,
}

impl WeibullParams {
    fn validate(&self) -> Result<()> {
        let ok = self.shape > 0.0
            && self.shape.is_finite()
            && self.scale > 0.0
            && self.scale.is_finite()
            && self.location >= 0.0
            && self.location.is_finite();
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!(
                "weibull needs shape, scale > 0 and location >= 0, got {self:?}"
            )))
        }
    }

    /// `P(D > t)`.
    pub fn sf(&self, t: f64) -> f64 {
        if t <= self.location {
            1.0
        } else {
            (-((t - self.location) / self.scale).powf(self.shape)).exp()
        }
    }
}

/// How censoring times are drawn.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CensoringSpec {
    None,
    /// `D = location + scale * W(shape)` in continuous time.
    Weibull(WeibullParams),
    /// Per-period hazards `p_1..p_K`: `D` is the first period whose
    /// Bernoulli(`p_t`) succeeds, else `K`.
    DiscreteHazard {
        p: Vec<f64>,
    },
}

impl CensoringSpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            Self::None => Ok(()),
            Self::Weibull(w) => w.validate(),
            Self::DiscreteHazard { p } => {
                if p.is_empty() {
                    return Err(Error::InvalidParameter("no censoring hazards".into()));
                }
                match p.iter().position(|v| !(0.0..=1.0).contains(v)) {
                    Some(index) => Err(Error::ProbabilityOutOfRange {
                        index,
                        value: p[index],
                    }),
                    None => Ok(()),
                }
            }
        }
    }

    /// The censoring survival `G` as seen on `grid` (periods) or in
    /// continuous time. Only step-shaped `G` can be represented, so a
    /// continuous-time Weibull needs a grid.
    pub fn true_g(&self, grid: Option<&TimeGrid>) -> Result<StepSurvival> {
        self.validate()?;
        match (self, grid) {
            (Self::None, _) => Ok(StepSurvival::one()),
            (Self::DiscreteHazard { p }, _) => true_g_discrete(p),
            (Self::Weibull(w), Some(grid)) => {
                // D falls after period k iff D >= a_k.
                let k_max = grid.period_count();
                let times = (1..k_max).map(|k| k as f64).collect();
                let values = (1..k_max).map(|k| w.sf(grid.upper_boundary(k))).collect();
                StepSurvival::new(times, values)
            }
            (Self::Weibull(_), None) => Err(Error::InvalidParameter(
                "the true G of a continuous Weibull is not a step function; discretise the cohort"
                    .into(),
            )),
        }
    }
}

/// `n` censoring times (periods for a discrete hazard).
pub fn gen_censoring<R: Rng + ?Sized>(
    spec: &CensoringSpec,
    rng: &mut R,
    n: usize,
) -> Result<Vec<f64>> {
    spec.validate()?;
    Ok(match spec {
        CensoringSpec::None => vec![f64::INFINITY; n],
        CensoringSpec::Weibull(w) => {
            let unit =
                Weibull::new(1.0, w.shape).map_err(|e| Error::InvalidParameter(e.to_string()))?;
            (0..n)
                .map(|_| w.location + w.scale * unit.sample(rng))
                .collect()
        }
        CensoringSpec::DiscreteHazard { p } => (0..n)
            .map(|_| {
                let k = p
                    .iter()
                    .position(|&q| rng.random_bool(q))
                    .unwrap_or(p.len() - 1);
                (k + 1) as f64
            })
            .collect(),
    })
}

/// Full description of a simulated population.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CohortSpec {
    pub event: GompertzSpec,
    pub covariates: Vec<CovariateDist>,
    /// End of follow-up in continuous time; must equal the last finite grid
    /// boundary when a grid is set.
    pub horizon: f64,
    #[serde(default)]
    pub grid: Option<TimeGrid>,
    /// Event periods `<= z` are shuffled among their owners.
    #[serde(default)]
    pub permute_early: Option<usize>,
    /// Draw Weibull censoring times for subjects with `T >= horizon` too,
    /// making censoring independent of `T`. Off by default: only subjects
    /// with an event before the horizon get a censoring time.
    #[serde(default)]
    pub censor_survivors: bool,
}

impl CohortSpec {
    pub fn validate(&self) -> Result<()> {
        self.event.validate(self.covariates.len())?;
        for c in &self.covariates {
            c.validate()?;
        }
        if !(self.horizon > 0.0 && self.horizon.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "horizon must be positive and finite, got {}",
                self.horizon
            )));
        }
        if let Some(grid) = &self.grid {
            let last = *grid.boundaries().last().unwrap();
            if last != self.horizon {
                return Err(Error::InvalidParameter(format!(
                    "horizon {} differs from the last grid boundary {last}",
                    self.horizon
                )));
            }
        }
        if self.permute_early.is_some() && self.grid.is_none() {
            return Err(Error::InvalidParameter(
                "early-event permutation needs a grid".into(),
            ));
        }
        Ok(())
    }

    /// Draws covariates and latent event times (continuous).
    fn draw_events<R: Rng + ?Sized>(
        &self,
        n: usize,
        rng: &mut R,
    ) -> Result<(Vec<Vec<f64>>, Vec<f64>)> {
        let mut zs = Vec::with_capacity(n);
        let mut ts = Vec::with_capacity(n);
        for _ in 0..n {
            let z = gen_covariates(&self.covariates, rng);
            let v = 1.0 - rng.random::<f64>();
            ts.push(gen_event_time(&self.event, &z, v)?);
            zs.push(z);
        }
        Ok((zs, ts))
    }

    /// A cohort of `n` subjects with censoring drawn from `censoring`.
    ///
    /// Weibull censoring times are drawn only for subjects with an event
    /// before the horizon (unless `censor_survivors` is set); everyone else
    /// is administratively censored.
    /// With a grid, times are discretised, early event periods permuted if
    /// requested, and discrete censoring drawn on periods.
    pub fn generate<R: Rng + ?Sized>(
        &self,
        n: usize,
        censoring: &CensoringSpec,
        rng: &mut R,
    ) -> Result<Cohort> {
        self.validate()?;
        censoring.validate()?;
        let (zs, ts) = self.draw_events(n, rng)?;
        let Some(grid) = &self.grid else {
            let ds = match censoring {
                CensoringSpec::DiscreteHazard { .. } => {
                    return Err(Error::InvalidParameter(
                        "discrete censoring hazards need a grid".into(),
                    ))
                }
                _ => self.pre_horizon_censoring(censoring, &ts, self.horizon, rng)?,
            };
            let subjects = build(zs, &ts, &ds, self.horizon);
            return Ok(Cohort::new(subjects, self.horizon));
        };

        let tmax = grid.period_count() as f64;
        if let CensoringSpec::DiscreteHazard { p } = censoring {
            if p.len() != grid.period_count() {
                return Err(Error::InvalidParameter(format!(
                    "{} censoring hazards for {} periods",
                    p.len(),
                    grid.period_count()
                )));
            }
        }
        let mut tp: Vec<f64> = ts.iter().map(|&t| grid.period(t) as f64).collect();
        if let Some(z) = self.permute_early {
            shuffle_early(&mut tp, z, rng);
        }
        let dp = match censoring {
            CensoringSpec::DiscreteHazard { .. } => gen_censoring(censoring, rng, n)?,
            _ => self
                .pre_horizon_censoring(censoring, &tp, tmax, rng)?
                .into_iter()
                .map(|d| {
                    if d.is_finite() {
                        grid.period(d) as f64
                    } else {
                        tmax
                    }
                })
                .collect(),
        };
        Ok(Cohort::new_discrete(
            build(zs, &tp, &dp, tmax),
            grid.clone(),
        ))
    }

    /// Continuous censoring times for subjects with `t < horizon`, `inf` for the rest.
    fn pre_horizon_censoring<R: Rng + ?Sized>(
        &self,
        censoring: &CensoringSpec,
        ts: &[f64],
        horizon: f64,
        rng: &mut R,
    ) -> Result<Vec<f64>> {
        let idx: Vec<usize> = (0..ts.len())
            .filter(|&i| self.censor_survivors || ts[i] < horizon)
            .collect();
        let draws = gen_censoring(censoring, rng, idx.len())?;
        let mut ds = vec![f64::INFINITY; ts.len()];
        for (i, d) in idx.into_iter().zip(draws) {
            ds[i] = d;
        }
        Ok(ds)
    }

    /// Uncensored cohort from `seed`, as used for population references.
    pub fn generate_uncensored(&self, n: usize, seed: u64) -> Result<Cohort> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        self.generate(n, &CensoringSpec::None, &mut rng)
    }
}

fn build(zs: Vec<Vec<f64>>, ts: &[f64], ds: &[f64], horizon: f64) -> Vec<Subject> {
    zs.into_iter()
        .enumerate()
        .map(|(i, z)| Subject::from_latent((i + 1).to_string(), ts[i], ds[i], z, horizon))
        .collect()
}

fn shuffle_early<R: Rng + ?Sized>(periods: &mut [f64], z: usize, rng: &mut R) -> usize {
    let idx: Vec<usize> = (0..periods.len())
        .filter(|&i| periods[i] <= z as f64)
        .collect();
    let mut vals: Vec<f64> = idx.iter().map(|&i| periods[i]).collect();
    vals.shuffle(rng);
    for (&i, v) in idx.iter().zip(vals) {
        periods[i] = v;
    }
    idx.len()
}

/// Shuffles the event periods `<= z` among the subjects that have them;
/// covariates stay in place. Needs latent event periods.
pub fn permute_early_events<R: Rng + ?Sized>(
    cohort: &Cohort,
    z: usize,
    rng: &mut R,
) -> Result<Cohort> {
    if !cohort.is_discrete() {
        return Err(Error::InvalidCohort(
            "permutation needs a discrete cohort".into(),
        ));
    }
    let subjects = cohort.subjects();
    let mut periods = subjects
        .iter()
        .map(|s| {
            s.event_time.ok_or_else(|| {
                Error::InvalidCohort(format!("subject {} has no latent event period", s.id))
            })
        })
        .collect::<Result<Vec<f64>>>()?;
    shuffle_early(&mut periods, z, rng);
    let out = subjects
        .iter()
        .zip(periods)
        .map(|(s, t)| {
            let d = s.censor_time.unwrap_or(f64::INFINITY);
            Subject::from_latent(s.id.clone(), t, d, s.covariates.clone(), cohort.horizon())
        })
        .collect();
    Ok(Cohort::new_discrete(out, cohort.grid().unwrap().clone()))
}

/// Result of [`tune_weibull_to_rate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TunedWeibull {
    pub params: WeibullParams,
    pub achieved_rate: f64,
}

/// Bisects the Weibull scale (shape and location fixed by `template`) until
/// the pre-horizon censoring rate of an `n_probe` cohort is within one
/// percentage point of `target`. The probe reuses the same uniforms at every
/// step, so the rate is monotone in the scale.
pub fn tune_weibull_to_rate(
    template: WeibullParams,
    target: f64,
    spec: &CohortSpec,
    n_probe: usize,
    seed: u64,
) -> Result<TunedWeibull> {
    const TOL: f64 = 0.01;
    if !(0.0..1.0).contains(&target) {
        return Err(Error::InvalidParameter(format!(
            "target censoring rate must lie in [0, 1), got {target}"
        )));
    }
    spec.validate()?;
    template.validate()?;
    if n_probe == 0 {
        return Err(Error::InvalidParameter("probe cohort is empty".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (_, ts) = spec.draw_events(n_probe, &mut rng)?;
    let unit =
        Weibull::new(1.0, template.shape).map_err(|e| Error::InvalidParameter(e.to_string()))?;
    let ws: Vec<f64> = (0..n_probe).map(|_| unit.sample(&mut rng)).collect();

    let rate = |scale: f64| -> f64 {
        let d = |i: usize| template.location + scale * ws[i];
        let censored = match &spec.grid {
            None => (0..n_probe)
                .filter(|&i| {
                    (spec.censor_survivors || ts[i] < spec.horizon)
                        && d(i) <= ts[i]
                        && d(i) < spec.horizon
                })
                .count(),
            Some(g) => {
                let tmax = g.period_count();
                (0..n_probe)
                    .filter(|&i| {
                        let (tp, dp) = (g.period(ts[i]), g.period(d(i)));
                        (spec.censor_survivors || tp < tmax) && dp <= tp && dp < tmax
                    })
                    .count()
            }
        };
        censored as f64 / n_probe as f64
    };

    let mut lo = (spec.horizon * 1e-9).ln();
    let mut hi = (spec.horizon * 1e9).ln();
    let (r_lo, r_hi) = (rate(lo.exp()), rate(hi.exp()));
    for (s, r) in [(hi, r_hi), (lo, r_lo)] {
        if (r - target).abs() <= TOL {
            return Ok(done(template, s.exp(), r));
        }
    }
    if target > r_lo || target < r_hi {
        let achieved = if target > r_lo { r_lo } else { r_hi };
        return Err(Error::UnreachableRate { target, achieved });
    }
    let mut best = (f64::INFINITY, hi, r_hi);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let r = rate(mid.exp());
        if (r - target).abs() < best.0 {
            best = ((r - target).abs(), mid, r);
        }
        if (r - target).abs() <= TOL {
            return Ok(done(template, mid.exp(), r));
        }
        // The rate falls as the scale grows.
        if r > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Err(Error::UnreachableRate {
        target,
        achieved: best.2,
    })
}

fn done(template: WeibullParams, scale: f64, rate: f64) -> TunedWeibull {
    TunedWeibull {
        params: WeibullParams { scale, ..template },
        achieved_rate: rate,
    }
}

/// Per-period censoring probabilities `(p_1..p_15)` of the discrete-time
/// simulation, keyed by their nominal censoring rate, read as hazards.
pub const DISCRETE_CENSORING_TABLE: [(f64, [f64; 15]); 6] = [
    (
        0.0,
        [0., 0., 0., 0., 0., 0., 0., 0., 0., 0., 0., 0., 0., 0., 1.],
    ),
    (
        0.09,
        [
            0.001, 0.009, 0.01, 0.01, 0.05, 0.03, 0.03, 0.01, 0.1, 0.1, 0.1, 0.15, 0.2, 0.2, 0.,
        ],
    ),
    (
        0.40,
        [
            0.001, 0.2, 0.15, 0.1, 0.1, 0.009, 0.01, 0.01, 0.05, 0.03, 0.03, 0.01, 0.1, 0.2, 0.,
        ],
    ),
    (
        0.56,
        [
            0.25, 0.15, 0.15, 0.1, 0.05, 0.03, 0.03, 0.01, 0.01, 0.01, 0.001, 0.009, 0.1, 0.1, 0.,
        ],
    ),
    (
        0.64,
        [
            0.3, 0.2, 0.15, 0.1, 0.05, 0.03, 0.03, 0.01, 0.01, 0.01, 0.001, 0.009, 0.05, 0.05, 0.,
        ],
    ),
    (
        0.73,
        [
            0.4, 0.2, 0.15, 0.1, 0.05, 0.03, 0.01, 0.01, 0.01, 0.01, 0.001, 0.009, 0.01, 0.01, 0.,
        ],
    ),
];

/// Nominal censoring levels of the PH simulation.
pub const SIM1_LEVELS: [f64; 6] = [0.0, 0.04, 0.25, 0.45, 0.62, 0.75];

/// Covariates `Ber(0.1), Ber(0.5), Ber(0.3), N(0, 1), N(0, 0.5)`; the last
/// normal has variance 0.5.
pub fn sim1_covariates() -> Vec<CovariateDist> {
    vec![
        CovariateDist::Bernoulli { p: 0.1 },
        CovariateDist::Bernoulli { p: 0.5 },
        CovariateDist::Bernoulli { p: 0.3 },
        CovariateDist::Normal { mean: 0.0, sd: 1.0 },
        CovariateDist::Normal {
            mean: 0.0,
            sd: 0.5f64.sqrt(),
        },
    ]
}

pub const SIM1_BETA: [f64; 5] = [3.0, 0.5, 0.8, 0.25, 0.95];

/// PH data: `alpha = 0.001`, `lambda = 0.1`, five covariates, `Tmax = 70`, grid `d1`.
pub fn sim1_spec() -> CohortSpec {
    CohortSpec {
        event: GompertzSpec {
            alpha: AlphaRule::constant(0.001),
            lambda: 0.1,
            intercept: 0.0,
            beta: SIM1_BETA.to_vec(),
        },
        covariates: sim1_covariates(),
        horizon: 70.0,
        grid: Some(TimeGrid::d1()),
        permute_early: None,
        censor_survivors: false,
    }
}

/// Discrete-time data: one `Ber(0.5)` covariate, `alpha = 0.0005`,
/// `lambda = 0.3`, grid `d2`, event periods `<= 7` shuffled.
///
/// The linear predictor is `-5 + 4Z`. With `5 - 4Z` almost every event falls
/// in the first period of `d2`, which leaves nothing for the permutation to
/// act on selectively; [`gen_event_time_sim2`] keeps the literal form.
pub fn sim2_spec() -> CohortSpec {
    CohortSpec {
        event: GompertzSpec {
            alpha: AlphaRule::constant(0.0005),
            lambda: 0.3,
            intercept: -5.0,
            beta: vec![4.0],
        },
        covariates: vec![CovariateDist::Bernoulli { p: 0.5 }],
        horizon: 35.0,
        grid: Some(TimeGrid::d2()),
        permute_early: Some(7),
        censor_survivors: false,
    }
}

/// Non-PH data: the PH covariates and coefficients with the `Z4 * Z5`
/// alpha switch, `Tmax = 150`, grid `d3`.
pub fn sim3_spec() -> CohortSpec {
    CohortSpec {
        event: GompertzSpec {
            alpha: AlphaRule::nonph(),
            lambda: 0.1,
            intercept: 0.0,
            beta: SIM1_BETA.to_vec(),
        },
        covariates: sim1_covariates(),
        horizon: 150.0,
        grid: Some(TimeGrid::d3()),
        permute_early: None,
        censor_survivors: false,
    }
}
