//! Concordance estimators for right-censored data.
//!
//! All four estimators share the same ordered-pair structure: subject `i`
//! must be uncensored and `T_i < X_j`. They differ in where the curves are
//! compared (a fixed `t` or the anchor's own `T_i`) and whether each pair is
//! weighted by `G(T_i)^-2`:
//!
//! | estimator          | compared at | weight        | `T_i < Tmax` |
//! |--------------------|-------------|---------------|--------------|
//! | [`harrell_fixed_t`]| `t`         | 1             | no           |
//! | [`uno_fixed_t`]    | `t`         | `G(T_i)^-2`   | yes          |
//! | [`antolini_ctd`]   | `T_i`       | 1             | yes          |
//! | [`td_uno`]         | `T_i`       | `G(T_i)^-2`   | yes          |

mod decompose;
mod kernel;

use serde::{Deserialize, Serialize};

pub use decompose::{decompose, Decomposition};

use crate::censoring::StepSurvival;
use crate::cohort::Cohort;
use crate::datagen::CohortSpec;
use crate::error::{Error, Result};
use crate::predictions::{Predictions, SurvivalModel};
use kernel::{anchor_counts, AnchorCounts, EvalPoint};

/// How pairs with identical predictions are scored.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TieMode {
    /// A tie is not concordant (but stays in the denominator).
    #[default]
    Strict,
    /// A tie earns half a concordant pair.
    Half,
}

/// Where the censoring survival is read for the weight of anchor `i`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightPoint {
    /// `G(T_i)`.
    #[default]
    RightContinuous,
    /// `G(T_i-)`.
    LeftLimit,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EstimatorOptions {
    pub tie_mode: TieMode,
    pub weight_point: WeightPoint,
}

/// Estimator value with the sums behind it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricReport {
    /// `numerator / denominator`; `None` when there is no usable pair.
    pub value: Option<f64>,
    pub numerator: f64,
    pub denominator: f64,
    pub usable_pairs: u64,
    pub tie_pairs: u64,
    /// Largest weight applied to a contributing anchor (1 for unweighted
    /// estimators, 0 when nothing contributed).
    pub max_weight: f64,
}

impl MetricReport {
    pub fn is_defined(&self) -> bool {
        self.value.is_some()
    }
}

/// Harrell's C at a fixed time `t`, comparing `S(t; Z_i) < S(t; Z_j)`.
pub fn harrell_fixed_t<P: Predictions + ?Sized>(
    cohort: &Cohort,
    preds: &P,
    t: f64,
    opts: EstimatorOptions,
) -> Result<MetricReport> {
    let counts = anchor_counts(cohort, preds, EvalPoint::Fixed(t), false)?;
    Ok(reduce(&counts, None, opts.tie_mode))
}

/// Uno's IPCW C at a fixed time `t`; pairs weighted by `G(T_i)^-2`,
/// anchors restricted to `T_i < Tmax`.
pub fn uno_fixed_t<P: Predictions + ?Sized>(
    cohort: &Cohort,
    preds: &P,
    t: f64,
    g: &StepSurvival,
    opts: EstimatorOptions,
) -> Result<MetricReport> {
    let counts = anchor_counts(cohort, preds, EvalPoint::Fixed(t), true)?;
    let w = weights(cohort, &counts, g, opts.weight_point)?;
    Ok(reduce(&counts, Some(&w), opts.tie_mode))
}

/// Antolini's time-dependent concordance, comparing `S(T_i; Z_i) < S(T_i; Z_j)`.
pub fn antolini_ctd<P: Predictions + ?Sized>(
    cohort: &Cohort,
    preds: &P,
    opts: EstimatorOptions,
) -> Result<MetricReport> {
    let counts = anchor_counts(cohort, preds, EvalPoint::AnchorTime, true)?;
    Ok(reduce(&counts, None, opts.tie_mode))
}

/// Time-dependent Uno's C-index: Antolini's comparisons with IPCW weights
/// `G(T_i)^-2`.
pub fn td_uno<P: Predictions + ?Sized>(
    cohort: &Cohort,
    preds: &P,
    g: &StepSurvival,
    opts: EstimatorOptions,
) -> Result<MetricReport> {
    let counts = anchor_counts(cohort, preds, EvalPoint::AnchorTime, true)?;
    let w = weights(cohort, &counts, g, opts.weight_point)?;
    Ok(reduce(&counts, Some(&w), opts.tie_mode))
}

/// Monte-Carlo population concordance
/// `P[S(T_i; Z_i) < S(T_i; Z_j) | T_i < T_j, T_i < Tmax]`, by pair
/// enumeration over an uncensored cohort of size `n` drawn from `generator`.
pub fn population_c<M: SurvivalModel + ?Sized>(
    model: &M,
    generator: &CohortSpec,
    n: usize,
    seed: u64,
    tie_mode: TieMode,
) -> Result<f64> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "population concordance needs n >= 2, got {n}"
        )));
    }
    let cohort = generator.generate_uncensored(n, seed)?;
    let preds = model.bind(&cohort);
    let opts = EstimatorOptions {
        tie_mode,
        ..Default::default()
    };
    antolini_ctd(&cohort, preds.as_ref(), opts)?
        .value
        .ok_or_else(|| Error::Degenerate("no event before the horizon".into()))
}

fn weights(
    cohort: &Cohort,
    counts: &[AnchorCounts],
    g: &StepSurvival,
    point: WeightPoint,
) -> Result<Vec<f64>> {
    cohort
        .subjects()
        .iter()
        .zip(counts)
        .map(|(s, c)| {
            if c.usable == 0 {
                return Ok(0.0);
            }
            let t = s.observed_time;
            let gv = match point {
                WeightPoint::RightContinuous => g.value(t),
                WeightPoint::LeftLimit => g.left_limit(t),
            };
            if gv <= 0.0 {
                return Err(Error::ZeroCensoringWeight {
                    id: s.id.clone(),
                    time: t,
                });
            }
            Ok(1.0 / (gv * gv))
        })
        .collect()
}

/// Weighted sums in subject order.
fn reduce(counts: &[AnchorCounts], weights: Option<&[f64]>, tie_mode: TieMode) -> MetricReport {
    let mut numerator = 0.0;
    let mut denominator = 0.0;
    let mut usable_pairs = 0;
    let mut tie_pairs = 0;
    let mut max_weight: f64 = 0.0;
    for (i, c) in counts.iter().enumerate() {
        if c.usable == 0 {
            continue;
        }
        let w = weights.map_or(1.0, |w| w[i]);
        let credit = match tie_mode {
            TieMode::Strict => c.concordant as f64,
            TieMode::Half => c.concordant as f64 + 0.5 * c.ties as f64,
        };
        numerator += w * credit;
        denominator += w * c.usable as f64;
        usable_pairs += c.usable;
        tie_pairs += c.ties;
        max_weight = max_weight.max(w);
    }
    MetricReport {
        value: (denominator > 0.0).then(|| numerator / denominator),
        numerator,
        denominator,
        usable_pairs,
        tie_pairs,
        max_weight,
    }
}
