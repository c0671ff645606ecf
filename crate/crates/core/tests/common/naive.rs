//! Literal double-loop versions of the estimators, used as test oracles.

#![allow(dead_code, clippy::needless_range_loop)]

use tduno::{Cohort, Predictions};

/// Product-limit estimate of the censoring survival at `t`, by direct
/// product over the distinct censoring times `s <= t` before the horizon.
pub fn censoring_survival(cohort: &Cohort, t: f64) -> f64 {
    let s = cohort.subjects();
    let h = cohort.horizon();
    let mut times: Vec<f64> = s
        .iter()
        .filter(|x| !x.event && x.observed_time < h && x.observed_time <= t)
        .map(|x| x.observed_time)
        .collect();
    times.sort_by(f64::total_cmp);
    times.dedup();
    let mut g = 1.0;
    for u in times {
        let at_risk = s.iter().filter(|x| x.observed_time >= u).count() as f64;
        let censored = s
            .iter()
            .filter(|x| !x.event && x.observed_time == u)
            .count() as f64;
        g *= 1.0 - censored / at_risk;
    }
    g
}

#[derive(Debug, Clone, Copy)]
pub enum Weight {
    None,
    /// `max(G_KM, eps)^-2`.
    Km(f64),
}

/// Sum over all ordered pairs `(i, j)` with `i` uncensored and `X_j > T_i`.
/// `at = None` compares at `T_i`. Returns `None` when no pair is usable.
pub fn concordance<P: Predictions + ?Sized>(
    cohort: &Cohort,
    preds: &P,
    at: Option<f64>,
    weight: Weight,
    restrict_to_horizon: bool,
    half_ties: bool,
) -> Option<f64> {
    let s = cohort.subjects();
    let mut num = 0.0;
    let mut den = 0.0;
    for i in 0..s.len() {
        let ti = s[i].observed_time;
        if !s[i].event || (restrict_to_horizon && ti >= cohort.horizon()) {
            continue;
        }
        let w = match weight {
            Weight::None => 1.0,
            Weight::Km(eps) => censoring_survival(cohort, ti).max(eps).powi(-2),
        };
        for j in 0..s.len() {
            if j == i || s[j].observed_time <= ti {
                continue;
            }
            let t = at.unwrap_or(ti);
            let (si, sj) = (preds.survival(i, t), preds.survival(j, t));
            den += w;
            if si < sj {
                num += w;
            } else if si == sj && half_ties {
                num += 0.5 * w;
            }
        }
    }
    (den > 0.0).then(|| num / den)
}

pub fn harrell<P: Predictions + ?Sized>(c: &Cohort, p: &P, t: f64, half: bool) -> Option<f64> {
    concordance(c, p, Some(t), Weight::None, false, half)
}

pub fn uno<P: Predictions + ?Sized>(
    c: &Cohort,
    p: &P,
    t: f64,
    eps: f64,
    half: bool,
) -> Option<f64> {
    concordance(c, p, Some(t), Weight::Km(eps), true, half)
}

pub fn antolini<P: Predictions + ?Sized>(c: &Cohort, p: &P, half: bool) -> Option<f64> {
    concordance(c, p, None, Weight::None, true, half)
}

pub fn td_uno<P: Predictions + ?Sized>(c: &Cohort, p: &P, eps: f64, half: bool) -> Option<f64> {
    concordance(c, p, None, Weight::Km(eps), true, half)
}
