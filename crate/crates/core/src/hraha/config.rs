use serde::{Deserialize, Serialize};

use crate::space::OptError;

/// Tunables of the hybrid optimizer.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct HrahaConfig {
    /// Weight of the fitness-spread term in the scaling factor (vs. the iteration schedule).
    pub omega: f64,
    /// Flight regime thresholds, `0 < a1 < a2 < a3 <= 1`.
    pub alpha_thresholds: [f64; 3],
    /// Local-search scale `a`, in `[0, 0.2]`.
    pub scaling_a: f64,
    /// Step scale λ of territorial foraging. The circle radius is the
    /// member's distance to the current best.
    pub territorial_lambda: f64,
    /// Share of the population replaced by the move-closer step, in `(0, 0.5]`.
    pub worst_fraction: f64,
    /// Minimum number of iterations between migrations. `None` means `2 * pop_size`.
    pub migration_coefficient: Option<usize>,
    /// Chance that a move-closer replacement is a nomad rather than an offspring.
    pub nomad_probability: f64,
    pub max_iters: usize,
    /// Stop as soon as the best fitness is at or below this value.
    pub target_fitness: Option<f64>,
    /// Reinject the previous best when an iteration loses it.
    pub elitism: bool,
}

impl Default for HrahaConfig {
    fn default() -> Self {
        Self {
            omega: 0.5,
            alpha_thresholds: [1.0 / 3.0, 2.0 / 3.0, 1.0],
            scaling_a: 0.2,
            territorial_lambda: 1.0,
            worst_fraction: 0.05,
            migration_coefficient: None,
            nomad_probability: 0.5,
            max_iters: 500,
            target_fitness: None,
            elitism: true,
        }
    }
}

impl HrahaConfig {
    pub fn validate(&self) -> Result<(), OptError> {
        let bad = |msg: &str| Err(OptError::InvalidConfig(msg.to_string()));
        if !(0.0..=1.0).contains(&self.omega) {
            return bad("omega must lie in [0, 1]");
        }
        let [a1, a2, a3] = self.alpha_thresholds;
        if !(0.0 < a1 && a1 < a2 && a2 < a3 && a3 <= 1.0) {
            return bad("alpha thresholds must satisfy 0 < a1 < a2 < a3 <= 1");
        }
        if !(0.0..=0.2).contains(&self.scaling_a) {
            return bad("scaling_a must lie in [0, 0.2]");
        }
        if !(self.territorial_lambda > 0.0 && self.territorial_lambda.is_finite()) {
            return bad("territorial_lambda must be positive");
        }
        if !(self.worst_fraction > 0.0 && self.worst_fraction <= 0.5) {
            return bad("worst_fraction must lie in (0, 0.5]");
        }
        if self.migration_coefficient == Some(0) {
            return bad("migration_coefficient must be positive");
        }
        if !(0.0..=1.0).contains(&self.nomad_probability) {
            return bad("nomad_probability must lie in [0, 1]");
        }
        if self.max_iters == 0 {
            return bad("max_iters must be positive");
        }
        if self.target_fitness.is_some_and(f64::is_nan) {
            return bad("target_fitness must not be NaN");
        }
        Ok(())
    }

    pub fn migration_coefficient_for(&self, pop_size: usize) -> usize {
        self.migration_coefficient.unwrap_or(2 * pop_size)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        let cfg = HrahaConfig::default();
        cfg.validate().unwrap();
        assert_eq!(cfg.migration_coefficient_for(30), 60);
    }

    #[test]
    fn rejects_bad_values() {
        let cases: Vec<Box<dyn Fn(&mut HrahaConfig)>> = vec![
            Box::new(|c| c.omega = 1.5),
            Box::new(|c| c.alpha_thresholds = [0.5, 0.4, 1.0]),
            Box::new(|c| c.alpha_thresholds = [0.0, 0.4, 1.0]),
            Box::new(|c| c.scaling_a = 0.3),
            Box::new(|c| c.territorial_lambda = 0.0),
            Box::new(|c| c.worst_fraction = 0.0),
            Box::new(|c| c.worst_fraction = 0.6),
            Box::new(|c| c.migration_coefficient = Some(0)),
            Box::new(|c| c.nomad_probability = -0.1),
            Box::new(|c| c.max_iters = 0),
        ];
        for mutate in cases {
            let mut cfg = HrahaConfig::default();
            mutate(&mut cfg);
            assert!(cfg.validate().is_err(), "{cfg:?}");
        }
    }

    #[test]
    fn partial_json_fills_defaults() {
        let cfg: HrahaConfig = serde_json::from_str(r#"{"max_iters": 10}"#).unwrap();
        assert_eq!(cfg.max_iters, 10);
        assert_eq!(cfg.worst_fraction, 0.05);
    }
}
