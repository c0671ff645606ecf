//! Random cohorts and prediction matrices for property tests.

#![allow(dead_code)]

use rand::Rng;
use tduno::{Cohort, Subject, SurvivalMatrix};

/// Observed cohort of `n` subjects. With `integer_times` many times tie.
pub fn cohort<R: Rng>(rng: &mut R, n: usize, censor_prob: f64, integer_times: bool) -> Cohort {
    let horizon = if rng.random_bool(0.5) { 8.0 } else { 100.0 };
    let subjects = (0..n)
        .map(|i| {
            let t = if integer_times {
                rng.random_range(1..=10) as f64
            } else {
                rng.random_range(0.1..10.0)
            };
            let event = !rng.random_bool(censor_prob);
            Subject::observed(format!("s{i}"), t, event, vec![], horizon)
        })
        .collect();
    Cohort::new(subjects, horizon)
}

/// Non-increasing rows on the columns `0.5, 1.0, ..., 12.0`, with values on
/// a coarse lattice so that tied predictions occur.
pub fn matrix<R: Rng>(rng: &mut R, cohort: &Cohort) -> SurvivalMatrix {
    let times: Vec<f64> = (1..=24).map(|k| k as f64 * 0.5).collect();
    let ids: Vec<String> = cohort.subjects().iter().map(|s| s.id.clone()).collect();
    let mut values = Vec::with_capacity(ids.len() * times.len());
    for _ in &ids {
        let mut s = 1.0f64;
        for _ in &times {
            let drop = rng.random_range(0..4) as f64 * 0.025;
            s = (s - drop).max(0.0);
            values.push(s);
        }
    }
    SurvivalMatrix::new(times, ids, values).unwrap()
}
