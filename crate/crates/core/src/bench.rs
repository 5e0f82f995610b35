//! Standard test functions with their textbook domains and optima.

use std::f64::consts::{E, TAU};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::objective::Objective;
use crate::space::{OptError, SearchSpace};

#[derive(Debug, Error, Clone, PartialEq)]
#[error("unknown benchmark function '{0}'")]
pub struct UnknownBenchmark(pub String);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BenchmarkFn {
    Sphere,
    Rastrigin,
    Rosenbrock,
    Ackley,
}

impl BenchmarkFn {
    pub const ALL: [BenchmarkFn; 4] = [Self::Sphere, Self::Rastrigin, Self::Rosenbrock, Self::Ackley];

    pub fn name(self) -> &'static str {
        match self {
            Self::Sphere => "sphere",
            Self::Rastrigin => "rastrigin",
            Self::Rosenbrock => "rosenbrock",
            Self::Ackley => "ackley",
        }
    }

    /// Per-axis search interval.
    pub fn bounds(self) -> (f64, f64) {
        match self {
            Self::Sphere | Self::Rastrigin => (-5.12, 5.12),
            Self::Rosenbrock => (-5.0, 10.0),
            Self::Ackley => (-32.768, 32.768),
        }
    }

    pub fn space(self, dims: usize) -> Result<SearchSpace, OptError> {
        let (lo, hi) = self.bounds();
        SearchSpace::uniform(dims, lo, hi)
    }

    /// Location of the global minimum.
    pub fn optimum(self, dims: usize) -> Vec<f64> {
        match self {
            Self::Rosenbrock => vec![1.0; dims],
            _ => vec![0.0; dims],
        }
    }

    pub fn optimum_value(self) -> f64 {
        0.0
    }

    pub fn eval(self, x: &[f64]) -> f64 {
        match self {
            Self::Sphere => x.iter().map(|v| v * v).sum(),
            Self::Rastrigin => {
                10.0 * x.len() as f64
                    + x.iter().map(|v| v * v - 10.0 * (TAU * v).cos()).sum::<f64>()
            }
            Self::Rosenbrock => x
                .windows(2)
                .map(|w| 100.0 * (w[1] - w[0] * w[0]).powi(2) + (1.0 - w[0]).powi(2))
                .sum(),
            Self::Ackley => {
                let n = x.len() as f64;
                let sq = x.iter().map(|v| v * v).sum::<f64>() / n;
                let cs = x.iter().map(|v| (TAU * v).cos()).sum::<f64>() / n;
                -20.0 * (-0.2 * sq.sqrt()).exp() - cs.exp() + 20.0 + E
            }
        }
    }
}

impl fmt::Display for BenchmarkFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BenchmarkFn {
    type Err = UnknownBenchmark;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|b| b.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| UnknownBenchmark(s.to_string()))
    }
}

/// Evaluates the named function at `x`.
pub fn benchmark(name: &str, x: &[f64]) -> Result<f64, UnknownBenchmark> {
    Ok(name.parse::<BenchmarkFn>()?.eval(x))
}

/// A benchmark function bound to a dimension, usable as an [`Objective`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Benchmark {
    pub function: BenchmarkFn,
    pub dims: usize,
}

impl Benchmark {
    pub fn new(function: BenchmarkFn, dims: usize) -> Self {
        Self { function, dims }
    }

    pub fn space(&self) -> Result<SearchSpace, OptError> {
        self.function.space(self.dims)
    }
}

impl Objective for Benchmark {
    fn dims(&self) -> usize {
        self.dims
    }

    fn eval(&self, x: &[f64]) -> f64 {
        self.function.eval(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn optima_evaluate_to_zero() {
        for f in BenchmarkFn::ALL {
            for d in [1, 2, 10] {
                let v = f.eval(&f.optimum(d));
                assert!((v - f.optimum_value()).abs() <= 1e-12, "{f} d={d}: {v}");
                assert!(f.space(d).unwrap().contains(&f.optimum(d)));
            }
        }
    }

    #[test]
    fn rastrigin_hand_value() {
        // 1 + 10 - 10 cos(2π)
        assert!((benchmark("rastrigin", &[1.0, 0.0]).unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(benchmark("sphere", &[0.0; 4]).unwrap(), 0.0);
        assert!(benchmark("ackley", &[0.0, 0.0]).unwrap().abs() < 1e-12);
    }

    #[test]
    fn rosenbrock_hand_value() {
        // 100 (0 - 0)^2 + (1 - 0)^2
        assert_eq!(benchmark("rosenbrock", &[0.0, 0.0]).unwrap(), 1.0);
    }

    #[test]
    fn unknown_name() {
        let err = benchmark("griewank", &[0.0]).unwrap_err();
        assert_eq!(err.to_string(), "unknown benchmark function 'griewank'");
        assert_eq!("Sphere".parse::<BenchmarkFn>().unwrap(), BenchmarkFn::Sphere);
    }
}
