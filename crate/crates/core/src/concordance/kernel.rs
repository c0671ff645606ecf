//! Per-anchor pair counting shared by all estimators.
//!
//! An anchor is an uncensored subject `i` (optionally with `T_i < Tmax`); its
//! comparators are the subjects with `X_j > T_i`. For each anchor we count the
//! comparators, those predicted to survive longer (`S_i < S_j`) and the ties.
//! Counts are exact integers, so the parallel split over anchor groups cannot
//! change any result.

use rayon::prelude::*;

use crate::cohort::Cohort;
use crate::error::{Error, Result};
use crate::predictions::Predictions;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub(crate) struct AnchorCounts {
    pub usable: u64,
    pub concordant: u64,
    pub ties: u64,
}

#[derive(Debug, Clone, Copy)]
pub(crate) enum EvalPoint {
    /// Compare `S(t; Z_i)` with `S(t; Z_j)` at one fixed `t`.
    Fixed(f64),
    /// Compare at the anchor's own event time, `S(T_i; .)`.
    AnchorTime,
}

/// Counts indexed by subject; non-anchors get zeros.
pub(crate) fn anchor_counts<P: Predictions + ?Sized>(
    cohort: &Cohort,
    preds: &P,
    eval: EvalPoint,
    restrict_to_horizon: bool,
) -> Result<Vec<AnchorCounts>> {
    let subjects = cohort.subjects();
    let n = subjects.len();
    if preds.n_subjects() != n {
        return Err(Error::PredictionLength {
            expected: n,
            found: preds.n_subjects(),
        });
    }
    let horizon = cohort.horizon();

    let mut by_x: Vec<usize> = (0..n).collect();
    by_x.sort_by(|&a, &b| {
        subjects[a]
            .observed_time
            .total_cmp(&subjects[b].observed_time)
    });
    let sorted_x: Vec<f64> = by_x.iter().map(|&i| subjects[i].observed_time).collect();

    let mut anchors: Vec<usize> = (0..n)
        .filter(|&i| {
            subjects[i].event && (!restrict_to_horizon || subjects[i].observed_time < horizon)
        })
        .collect();
    anchors.sort_by(|&a, &b| {
        subjects[a]
            .observed_time
            .total_cmp(&subjects[b].observed_time)
            .then(a.cmp(&b))
    });
    let groups: Vec<&[usize]> = anchors
        .chunk_by(|&a, &b| subjects[a].observed_time == subjects[b].observed_time)
        .collect();

    let fixed_scores = match eval {
        EvalPoint::Fixed(t) => Some(checked_scores(preds, 0..n, t)?),
        EvalPoint::AnchorTime => None,
    };

    let per_group: Vec<Vec<(usize, AnchorCounts)>> = groups
        .par_iter()
        .map(|group| {
            let t = subjects[group[0]].observed_time;
            let start = sorted_x.partition_point(|&x| x <= t);
            let comparators = &by_x[start..];
            let (anchor_scores, comp_scores) = match (&fixed_scores, eval) {
                (Some(s), _) => (
                    group.iter().map(|&i| s[i]).collect::<Vec<_>>(),
                    comparators.iter().map(|&j| s[j]).collect::<Vec<_>>(),
                ),
                (None, EvalPoint::Fixed(_)) => unreachable!(),
                (None, EvalPoint::AnchorTime) => (
                    checked_scores(preds, group.iter().copied(), t)?,
                    checked_scores(preds, comparators.iter().copied(), t)?,
                ),
            };
            Ok(count_group(group, &anchor_scores, comp_scores))
        })
        .collect::<Result<_>>()?;

    let mut out = vec![AnchorCounts::default(); n];
    for (i, c) in per_group.into_iter().flatten() {
        out[i] = c;
    }
    Ok(out)
}

fn checked_scores<P: Predictions + ?Sized>(
    preds: &P,
    idx: impl Iterator<Item = usize>,
    t: f64,
) -> Result<Vec<f64>> {
    idx.map(|i| {
        let s = preds.score(i, t);
        if s.is_nan() {
            Err(Error::InvalidParameter(format!(
                "prediction for subject index {i} at t = {t} is NaN"
            )))
        } else {
            Ok(s)
        }
    })
    .collect()
}

fn count_group(
    group: &[usize],
    anchor_scores: &[f64],
    mut comp_scores: Vec<f64>,
) -> Vec<(usize, AnchorCounts)> {
    let m = comp_scores.len();
    let usable = m as u64;
    // Direct scans cost |group| * m; sorting costs about m * log2(m).
    let sort = group.len() > 4 && group.len() as f64 > (m.max(2) as f64).log2();
    if sort {
        comp_scores.sort_by(f64::total_cmp);
    }
    group
        .iter()
        .zip(anchor_scores)
        .map(|(&i, &s)| {
            let (greater, equal) = if sort {
                let le = comp_scores.partition_point(|&x| x <= s);
                let lt = comp_scores.partition_point(|&x| x < s);
                (m - le, le - lt)
            } else {
                comp_scores.iter().fold((0, 0), |(g, e), &x| {
                    (g + (x > s) as usize, e + (x == s) as usize)
                })
            };
            (
                i,
                AnchorCounts {
                    usable,
                    concordant: greater as u64,
                    ties: equal as u64,
                },
            )
        })
        .collect()
}
