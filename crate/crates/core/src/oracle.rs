//! Closed-form survival curves of the Gompertz generators, optionally with a
//! noisy linear predictor so the "model" is imperfect.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::cohort::{Cohort, TimeGrid};
use crate::datagen::GompertzSpec;
use crate::error::{Error, Result};
use crate::predictions::{Predictions, SurvivalModel};

/// `S(t; Z) = exp(-(lambda / alpha) * exp(eta) * (exp(alpha * t) - 1))`.
///
/// A degraded model replaces `eta` by `(1 - level) * eta + level * xi(Z)`,
/// where `xi(Z)` is a standard normal fixed by the covariate values and the
/// degradation seed.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleModel {
    spec: GompertzSpec,
    degradation: Option<(f64, u64)>,
}

impl OracleModel {
    pub fn new(spec: GompertzSpec) -> Self {
        Self {
            spec,
            degradation: None,
        }
    }

    pub fn spec(&self) -> &GompertzSpec {
        &self.spec
    }

    /// Degradation level and seed, if any.
    pub fn degradation(&self) -> Option<(f64, u64)> {
        self.degradation
    }

    /// Same curves with a noisier linear predictor. Level 0 is the identity.
    pub fn degrade(&self, level: f64, seed: u64) -> Result<Self> {
        if !(0.0..=1.0).contains(&level) {
            return Err(Error::InvalidParameter(format!(
                "degradation level must lie in [0, 1], got {level}"
            )));
        }
        Ok(Self {
            spec: self.spec.clone(),
            degradation: (level > 0.0).then_some((level, seed)),
        })
    }

    pub fn linear_predictor(&self, z: &[f64]) -> f64 {
        let eta = self.spec.linear_predictor(z);
        match self.degradation {
            None => eta,
            Some((level, seed)) => (1.0 - level) * eta + level * noise(z, seed),
        }
    }

    pub fn cumulative_hazard(&self, t: f64, z: &[f64]) -> f64 {
        let alpha = self.spec.alpha.alpha(z);
        hazard_scale(self.spec.lambda, alpha, self.linear_predictor(z)) * (alpha * t).exp_m1()
    }

    pub fn survival(&self, t: f64, z: &[f64]) -> f64 {
        (-self.cumulative_hazard(t, z)).exp()
    }
}

fn hazard_scale(lambda: f64, alpha: f64, eta: f64) -> f64 {
    lambda / alpha * eta.exp()
}

/// Standard normal keyed on the exact covariate bits and `seed`.
fn noise(z: &[f64], seed: u64) -> f64 {
    let mut h = seed ^ 0x9e37_79b9_7f4a_7c15;
    for x in z {
        h = mix(h ^ x.to_bits());
    }
    StandardNormal.sample(&mut ChaCha8Rng::seed_from_u64(h))
}

fn mix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

impl SurvivalModel for OracleModel {
    fn bind<'a>(&'a self, cohort: &'a Cohort) -> Box<dyn Predictions + 'a> {
        Box::new(OraclePredictions::new(self, cohort))
    }
}

/// An [`OracleModel`] evaluated for the subjects of one cohort.
///
/// On a discrete cohort, time `k` means the end of period `k`, so the curve
/// is read at the upper boundary `a_k` of the grid. Scores are `-H(t)`,
/// which orders exactly like `S(t)` but does not underflow.
#[derive(Debug, Clone)]
pub struct OraclePredictions<'a> {
    alpha: Vec<f64>,
    scale: Vec<f64>,
    grid: Option<&'a TimeGrid>,
}

impl<'a> OraclePredictions<'a> {
    pub fn new(model: &OracleModel, cohort: &'a Cohort) -> Self {
        let (alpha, scale) = cohort
            .subjects()
            .iter()
            .map(|s| {
                let a = model.spec.alpha.alpha(&s.covariates);
                let eta = model.linear_predictor(&s.covariates);
                (a, hazard_scale(model.spec.lambda, a, eta))
            })
            .unzip();
        Self {
            alpha,
            scale,
            grid: cohort.grid(),
        }
    }

    fn time(&self, t: f64) -> f64 {
        match self.grid {
            None => t,
            Some(g) => {
                let k = t.floor();
                if k < 1.0 {
                    0.0
                } else {
                    g.upper_boundary(k as usize)
                }
            }
        }
    }

    fn cumulative_hazard(&self, subject: usize, t: f64) -> f64 {
        let time = self.time(t);
        if time == 0.0 {
            return 0.0;
        }
        self.scale[subject] * (self.alpha[subject] * time).exp_m1()
    }
}

impl Predictions for OraclePredictions<'_> {
    fn n_subjects(&self) -> usize {
        self.alpha.len()
    }

    fn survival(&self, subject: usize, t: f64) -> f64 {
        (-self.cumulative_hazard(subject, t)).exp()
    }

    fn score(&self, subject: usize, t: f64) -> f64 {
        -self.cumulative_hazard(subject, t)
    }
}
