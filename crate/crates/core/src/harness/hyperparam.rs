use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{HarnessError, Result};
use crate::space::SearchSpace;

/// One tunable. Integers occupy `[low − 0.5, high + 0.5]` in the real box
/// and decode by rounding half up; categoricals occupy `[0, n]` and decode
/// by flooring. Both clamp to the valid range.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Dimension {
    Continuous { name: String, low: f64, high: f64 },
    Integer { name: String, low: i64, high: i64 },
    Categorical { name: String, choices: Vec<String> },
}

impl Dimension {
    pub fn name(&self) -> &str {
        match self {
            Self::Continuous { name, .. } | Self::Integer { name, .. } | Self::Categorical { name, .. } => name,
        }
    }

    fn bounds(&self) -> (f64, f64) {
        match self {
            Self::Continuous { low, high, .. } => (*low, *high),
            Self::Integer { low, high, .. } => (*low as f64 - 0.5, *high as f64 + 0.5),
            Self::Categorical { choices, .. } => (0.0, choices.len() as f64),
        }
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(HarnessError::Config(format!("dimension '{}': {msg}", self.name())));
        match self {
            Self::Continuous { low, high, .. } if !(low.is_finite() && high.is_finite() && low <= high) => {
                bad(format!("invalid range [{low}, {high}]"))
            }
            Self::Integer { low, high, .. } if low > high => bad(format!("invalid range [{low}, {high}]")),
            Self::Categorical { choices, .. } if choices.is_empty() => bad("no choices".into()),
            _ => Ok(()),
        }
    }

    fn decode(&self, x: f64) -> HyperValue {
        match self {
            Self::Continuous { low, high, .. } => HyperValue::Real(x.clamp(*low, *high)),
            Self::Integer { low, high, .. } => HyperValue::Int(((x + 0.5).floor() as i64).clamp(*low, *high)),
            Self::Categorical { choices, .. } => {
                HyperValue::Choice((x.floor().max(0.0) as usize).min(choices.len() - 1))
            }
        }
    }

    fn encode(&self, v: &HyperValue) -> Option<f64> {
        match (self, v) {
            (Self::Continuous { low, high, .. }, HyperValue::Real(r)) if (*low..=*high).contains(r) => Some(*r),
            (Self::Integer { low, high, .. }, HyperValue::Int(i)) if (*low..=*high).contains(i) => Some(*i as f64),
            (Self::Categorical { choices, .. }, HyperValue::Choice(k)) if *k < choices.len() => Some(*k as f64 + 0.5),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum HyperValue {
    Int(i64),
    Real(f64),
    Choice(usize),
}

impl HyperValue {
    pub fn as_f64(self) -> f64 {
        match self {
            Self::Int(i) => i as f64,
            Self::Real(r) => r,
            Self::Choice(k) => k as f64,
        }
    }
}

impl fmt::Display for HyperValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Int(i) => write!(f, "{i}"),
            Self::Real(r) => write!(f, "{r}"),
            Self::Choice(k) => write!(f, "#{k}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Dimension>", into = "Vec<Dimension>")]
pub struct HyperparamSpace {
    dims: Vec<Dimension>,
}

impl HyperparamSpace {
    pub fn new(dims: Vec<Dimension>) -> Result<Self> {
        if dims.is_empty() {
            return Err(HarnessError::Config("hyperparameter space has no dimensions".into()));
        }
        let mut names = HashSet::new();
        for d in &dims {
            d.validate()?;
            if !names.insert(d.name()) {
                return Err(HarnessError::Config(format!("duplicate dimension '{}'", d.name())));
            }
        }
        Ok(Self { dims })
    }

    pub fn dimensions(&self) -> &[Dimension] {
        &self.dims
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.dims.iter().position(|d| d.name() == name)
    }

    /// The real box optimizers search.
    pub fn search_space(&self) -> SearchSpace {
        let (lower, upper) = self.dims.iter().map(Dimension::bounds).unzip();
        SearchSpace::new(lower, upper).expect("dimensions validated")
    }

    pub fn decode(&self, x: &[f64]) -> Result<Vec<HyperValue>> {
        if x.len() != self.dims.len() {
            return Err(HarnessError::Config(format!(
                "expected {} coordinates, got {}",
                self.dims.len(),
                x.len()
            )));
        }
        Ok(self.dims.iter().zip(x).map(|(d, &v)| d.decode(v)).collect())
    }

    pub fn encode(&self, values: &[HyperValue]) -> Result<Vec<f64>> {
        if values.len() != self.dims.len() {
            return Err(HarnessError::Config(format!(
                "expected {} values, got {}",
                self.dims.len(),
                values.len()
            )));
        }
        self.dims
            .iter()
            .zip(values)
            .map(|(d, v)| {
                d.encode(v)
                    .ok_or_else(|| HarnessError::Config(format!("value {v} invalid for dimension '{}'", d.name())))
            })
            .collect()
    }
}

impl TryFrom<Vec<Dimension>> for HyperparamSpace {
    type Error = HarnessError;

    fn try_from(dims: Vec<Dimension>) -> Result<Self> {
        Self::new(dims)
    }
}

impl From<HyperparamSpace> for Vec<Dimension> {
    fn from(s: HyperparamSpace) -> Self {
        s.dims
    }
}
