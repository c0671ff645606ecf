//! Sources of predicted survival curves `S(t; Z_i)` for the subjects of a cohort.

use crate::cohort::Cohort;
use crate::error::{Error, Result};

/// Predicted survival curves for the `i`-th subject of a cohort.
///
/// Estimators only compare predictions, so they call [`Predictions::score`],
/// which may return any strictly increasing transform of the survival
/// probability (the same transform at every `t`). Implementations must be
/// safe to call concurrently.
pub trait Predictions: Sync {
    /// Number of subjects covered.
    fn n_subjects(&self) -> usize;

    /// Predicted `P(T_i > t)`.
    fn survival(&self, subject: usize, t: f64) -> f64;

    /// Order-preserving transform of [`Predictions::survival`] used for comparisons.
    fn score(&self, subject: usize, t: f64) -> f64 {
        self.survival(subject, t)
    }
}

/// A fitted model that can produce curves for the subjects of any cohort.
pub trait SurvivalModel: Sync {
    fn bind<'a>(&'a self, cohort: &'a Cohort) -> Box<dyn Predictions + 'a>;
}

/// Survival curves sampled on a shared, strictly increasing time axis.
///
/// Between columns the curve is a left step: `S(t) = S(t_k)` for the largest
/// `t_k <= t`, and `S(t) = 1` before the first column. For discrete cohorts
/// the columns are the periods `1..=m`, so period `k` reads column `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct SurvivalMatrix {
    times: Vec<f64>,
    ids: Vec<String>,
    values: Vec<f64>,
}

impl SurvivalMatrix {
    /// Row-major `ids.len() x times.len()` matrix. Entries must lie in
    /// `[0, 1]` and every row must be non-increasing.
    pub fn new(times: Vec<f64>, ids: Vec<String>, values: Vec<f64>) -> Result<Self> {
        let m = Self::unchecked(times, ids, values)?;
        for (i, row) in m.rows().enumerate() {
            if let Some(k) = row.windows(2).position(|w| w[1] > w[0]) {
                return Err(Error::InvalidParameter(format!(
                    "row {} ({}) increases between columns {} and {}",
                    i,
                    m.ids[i],
                    k,
                    k + 1
                )));
            }
        }
        Ok(m)
    }

    /// Like [`SurvivalMatrix::new`] but replaces every row by its running
    /// minimum. Returns the matrix and the number of entries that changed.
    pub fn new_clipped(
        times: Vec<f64>,
        ids: Vec<String>,
        values: Vec<f64>,
    ) -> Result<(Self, usize)> {
        let mut m = Self::unchecked(times, ids, values)?;
        let width = m.times.len();
        let mut clipped = 0;
        if width > 0 {
            for row in m.values.chunks_mut(width) {
                for k in 1..row.len() {
                    if row[k] > row[k - 1] {
                        row[k] = row[k - 1];
                        clipped += 1;
                    }
                }
            }
        }
        Ok((m, clipped))
    }

    fn unchecked(times: Vec<f64>, ids: Vec<String>, values: Vec<f64>) -> Result<Self> {
        if times.windows(2).any(|w| !(w[0] < w[1])) || times.iter().any(|t| !t.is_finite()) {
            return Err(Error::InvalidParameter(
                "prediction times must be finite and strictly increasing".into(),
            ));
        }
        if values.len() != ids.len() * times.len() {
            return Err(Error::InvalidParameter(format!(
                "expected {} x {} values, got {}",
                ids.len(),
                times.len(),
                values.len()
            )));
        }
        if let Some(index) = values.iter().position(|v| !(0.0..=1.0).contains(v)) {
            return Err(Error::ProbabilityOutOfRange {
                index,
                value: values[index],
            });
        }
        Ok(Self { times, ids, values })
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn row(&self, i: usize) -> &[f64] {
        let w = self.times.len();
        &self.values[i * w..(i + 1) * w]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        (0..self.ids.len()).map(move |i| self.row(i))
    }

    /// Evaluates any prediction source on `times` for every subject.
    pub fn sample<P: Predictions + ?Sized>(
        source: &P,
        ids: Vec<String>,
        times: Vec<f64>,
    ) -> Result<Self> {
        if ids.len() != source.n_subjects() {
            return Err(Error::PredictionLength {
                expected: ids.len(),
                found: source.n_subjects(),
            });
        }
        let values = (0..ids.len())
            .flat_map(|i| times.iter().map(move |&t| source.survival(i, t)))
            .collect();
        Self::new(times, ids, values)
    }
}

impl Predictions for SurvivalMatrix {
    fn n_subjects(&self) -> usize {
        self.ids.len()
    }

    fn survival(&self, subject: usize, t: f64) -> f64 {
        let k = self.times.partition_point(|&s| s <= t);
        if k == 0 {
            1.0
        } else {
            self.row(subject)[k - 1]
        }
    }
}
