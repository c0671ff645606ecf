//! Split of the population concordance over pairs `T_i < T_j, T_i < Tmax`
//! into pairs whose first event precedes both censorings (`T_i < D_i ^ D_j`,
//! the part Antolini's estimator sees) and the rest:
//! `C = theta * C_td + (1 - theta) * C_tilde`.

use rayon::prelude::*;

use super::{EstimatorOptions, TieMode};
use crate::cohort::Cohort;
use crate::error::{Error, Result};
use crate::predictions::Predictions;

/// Pair counts behind the decomposition. Concordance counts are kept in half
/// units (`2 * concordant + ties`) so both tie modes stay integral.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Decomposition {
    pub pairs: u64,
    pub pairs_td: u64,
    pub pairs_tilde: u64,
    pub half_units_full: u64,
    pub half_units_td: u64,
    pub half_units_tilde: u64,
}

impl Decomposition {
    /// Share of pairs with `T_i < D_i ^ D_j`.
    pub fn theta(&self) -> Option<f64> {
        ratio(self.pairs_td, self.pairs)
    }

    pub fn c_td(&self) -> Option<f64> {
        ratio(self.half_units_td, 2 * self.pairs_td)
    }

    pub fn c_tilde(&self) -> Option<f64> {
        ratio(self.half_units_tilde, 2 * self.pairs_tilde)
    }

    pub fn c_full(&self) -> Option<f64> {
        ratio(self.half_units_full, 2 * self.pairs)
    }

    /// `c_full - theta * c_td - (1 - theta) * c_tilde` in floating point.
    pub fn identity_residual(&self) -> Option<f64> {
        let theta = self.theta()?;
        Some(self.c_full()? - theta * self.c_td()? - (1.0 - theta) * self.c_tilde()?)
    }

    /// Checks the identity in exact rational arithmetic. `None` when one of
    /// the subsets is empty.
    pub fn identity_holds_exactly(&self) -> Option<bool> {
        if self.pairs_td == 0 || self.pairs_tilde == 0 {
            return None;
        }
        // c_full = cf / 2N, theta = nA / N, c_td = cA / 2nA, c_tilde = cB / 2nB.
        // Multiplied through by 2 N nA nB.
        let (n, na, nb) = (
            self.pairs as u128,
            self.pairs_td as u128,
            self.pairs_tilde as u128,
        );
        let (cf, ca, cb) = (
            self.half_units_full as u128,
            self.half_units_td as u128,
            self.half_units_tilde as u128,
        );
        let lhs = cf * na * nb;
        let rhs = ca * na * nb + (n - na) * cb * na;
        Some(lhs == rhs)
    }
}

fn ratio(a: u64, b: u64) -> Option<f64> {
    (b > 0).then(|| a as f64 / b as f64)
}

/// Decomposition over a cohort whose latent `T` and `D` are all known.
pub fn decompose<P: Predictions + ?Sized>(
    cohort: &Cohort,
    preds: &P,
    opts: EstimatorOptions,
) -> Result<Decomposition> {
    if !cohort.has_full_knowledge() {
        return Err(Error::InvalidCohort(
            "decomposition needs latent event and censoring times for every subject".into(),
        ));
    }
    let subjects = cohort.subjects();
    let n = subjects.len();
    if preds.n_subjects() != n {
        return Err(Error::PredictionLength {
            expected: n,
            found: preds.n_subjects(),
        });
    }
    let horizon = cohort.horizon();
    let t_of = |i: usize| subjects[i].event_time.unwrap();
    let d_of = |i: usize| subjects[i].censor_time.unwrap();

    let mut by_t: Vec<usize> = (0..n).collect();
    by_t.sort_by(|&a, &b| t_of(a).total_cmp(&t_of(b)).then(a.cmp(&b)));
    let sorted_t: Vec<f64> = by_t.iter().map(|&i| t_of(i)).collect();
    let anchors: Vec<usize> = by_t
        .iter()
        .copied()
        .filter(|&i| t_of(i) < horizon)
        .collect();
    let groups: Vec<&[usize]> = anchors.chunk_by(|&a, &b| t_of(a) == t_of(b)).collect();

    let half = |s_i: f64, s_j: f64| -> u64 {
        if s_i < s_j {
            2
        } else if s_i == s_j && opts.tie_mode == TieMode::Half {
            1
        } else {
            0
        }
    };

    let parts: Vec<Decomposition> = groups
        .par_iter()
        .map(|group| {
            let t = t_of(group[0]);
            let start = sorted_t.partition_point(|&x| x <= t);
            let comparators = &by_t[start..];
            let comp: Vec<(f64, bool)> = comparators
                .iter()
                .map(|&j| (preds.score(j, t), d_of(j) > t))
                .collect();
            let mut acc = Decomposition::default();
            for &i in group.iter() {
                let s_i = preds.score(i, t);
                let i_uncensored = d_of(i) > t;
                acc.pairs += comp.len() as u64;
                for &(s_j, j_uncensored) in &comp {
                    let h = half(s_i, s_j);
                    if i_uncensored && j_uncensored {
                        acc.pairs_td += 1;
                        acc.half_units_td += h;
                    } else {
                        acc.pairs_tilde += 1;
                        acc.half_units_tilde += h;
                    }
                }
                // Overall concordance counted on its own pass.
                acc.half_units_full += comp.iter().map(|&(s_j, _)| half(s_i, s_j)).sum::<u64>();
            }
            acc
        })
        .collect();

    Ok(parts
        .into_iter()
        .fold(Decomposition::default(), |a, b| Decomposition {
            pairs: a.pairs + b.pairs,
            pairs_td: a.pairs_td + b.pairs_td,
            pairs_tilde: a.pairs_tilde + b.pairs_tilde,
            half_units_full: a.half_units_full + b.half_units_full,
            half_units_td: a.half_units_td + b.half_units_td,
            half_units_tilde: a.half_units_tilde + b.half_units_tilde,
        }))
}
