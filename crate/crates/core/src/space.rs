use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rng::Rng;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OptError {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("inverted bound at j={0}")]
    InvertedBound(usize),
    #[error("search space must have at least one dimension")]
    EmptySpace,
    #[error("population size {0} is too small (need at least 4)")]
    PopulationTooSmall(usize),
    #[error("non-finite fitness {value} for member {index}")]
    NonFiniteFitness { index: usize, value: f64 },
    #[error("member {0} has not been evaluated")]
    Unevaluated(usize),
    #[error("requested {k} members from a population of {size}")]
    TooMany { k: usize, size: usize },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

/// Axis-aligned box of real decision variables.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchSpace {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl SearchSpace {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self, OptError> {
        if lower.len() != upper.len() {
            return Err(OptError::DimensionMismatch {
                expected: lower.len(),
                actual: upper.len(),
            });
        }
        if lower.is_empty() {
            return Err(OptError::EmptySpace);
        }
        // `!(l < u)` also rejects NaN bounds.
        if let Some(j) = lower.iter().zip(&upper).position(|(l, u)| !(l < u)) {
            return Err(OptError::InvertedBound(j));
        }
        Ok(Self { lower, upper })
    }

    /// The same `[lo, hi]` interval on every one of `dims` axes.
    pub fn uniform(dims: usize, lo: f64, hi: f64) -> Result<Self, OptError> {
        Self::new(vec![lo; dims], vec![hi; dims])
    }

    pub fn dims(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dims()
            && x
                .iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(v, (l, u))| l <= v && v <= u)
    }

    /// Uniform point in the box.
    pub fn sample(&self, rng: &mut Rng) -> Vec<f64> {
        self.lower
            .iter()
            .zip(&self.upper)
            .map(|(&l, &u)| rng.uniform_in(l, u))
            .collect()
    }

    /// Projects `x` onto the box in place.
    pub fn clamp_in_place(&self, x: &mut [f64]) {
        for ((v, &l), &u) in x.iter_mut().zip(&self.lower).zip(&self.upper) {
            *v = v.clamp(l, u);
        }
    }
}

/// Projects each coordinate of `position` into `[lower[j], upper[j]]`.
pub fn clamp(position: &[f64], space: &SearchSpace) -> Result<Vec<f64>, OptError> {
    if position.len() != space.dims() {
        return Err(OptError::DimensionMismatch {
            expected: space.dims(),
            actual: position.len(),
        });
    }
    let mut out = position.to_vec();
    space.clamp_in_place(&mut out);
    Ok(out)
}
