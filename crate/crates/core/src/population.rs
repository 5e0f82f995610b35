use serde::{Deserialize, Serialize};

use crate::objective::Objective;
use crate::rng::Rng;
use crate::space::{OptError, SearchSpace};

/// Smallest population the move-closer step can work with: two parents
/// besides the alpha couple.
pub const MIN_POPULATION: usize = 4;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Individual {
    pub position: Vec<f64>,
    /// `None` until evaluated.
    pub fitness: Option<f64>,
}

impl Individual {
    pub fn new(position: Vec<f64>) -> Self {
        Self {
            position,
            fitness: None,
        }
    }

    pub fn evaluated(position: Vec<f64>, fitness: f64) -> Self {
        Self {
            position,
            fitness: Some(fitness),
        }
    }
}

/// Ordered members plus the index of the best evaluated one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Population {
    members: Vec<Individual>,
    best: Option<usize>,
}

impl Population {
    pub fn from_members(members: Vec<Individual>) -> Self {
        let mut pop = Self {
            members,
            best: None,
        };
        pop.refresh_best();
        pop
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[Individual] {
        &self.members
    }

    pub fn member(&self, i: usize) -> &Individual {
        &self.members[i]
    }

    pub fn into_members(self) -> Vec<Individual> {
        self.members
    }

    /// Index of the minimal-fitness evaluated member (ties: lowest index).
    pub fn best_index(&self) -> Option<usize> {
        self.best
    }

    pub fn best(&self) -> Option<&Individual> {
        self.best.map(|i| &self.members[i])
    }

    pub fn best_fitness(&self) -> Option<f64> {
        self.best().and_then(|m| m.fitness)
    }

    /// Index of the maximal-fitness evaluated member (ties: lowest index).
    pub fn worst_index(&self) -> Option<usize> {
        let mut worst: Option<(usize, f64)> = None;
        for (i, m) in self.members.iter().enumerate() {
            if let Some(f) = m.fitness {
                if worst.is_none_or(|(_, w)| f > w) {
                    worst = Some((i, f));
                }
            }
        }
        worst.map(|(i, _)| i)
    }

    /// Fitness of member `i`; errors if it has not been evaluated.
    pub fn fitness(&self, i: usize) -> Result<f64, OptError> {
        self.members[i].fitness.ok_or(OptError::Unevaluated(i))
    }

    /// All fitness values, failing on the first unevaluated member.
    pub fn fitnesses(&self) -> Result<Vec<f64>, OptError> {
        (0..self.len()).map(|i| self.fitness(i)).collect()
    }

    pub fn is_evaluated(&self) -> bool {
        self.members.iter().all(|m| m.fitness.is_some())
    }

    /// Replaces member `i` and keeps the best index current.
    pub fn replace(&mut self, i: usize, member: Individual) {
        self.members[i] = member;
        self.refresh_best();
    }

    pub fn refresh_best(&mut self) {
        let mut best: Option<(usize, f64)> = None;
        for (i, m) in self.members.iter().enumerate() {
            if let Some(f) = m.fitness {
                if best.is_none_or(|(_, b)| f < b) {
                    best = Some((i, f));
                }
            }
        }
        self.best = best.map(|(i, _)| i);
    }
}

/// Draws `size` members uniformly in the box. All start unevaluated.
pub fn init_population(
    space: &SearchSpace,
    size: usize,
    rng: &mut Rng,
) -> Result<Population, OptError> {
    if size < MIN_POPULATION {
        return Err(OptError::PopulationTooSmall(size));
    }
    let members = (0..size)
        .map(|_| Individual::new(space.sample(rng)))
        .collect();
    Ok(Population::from_members(members))
}

/// Scores one position, rejecting non-finite values.
pub(crate) fn score<O: Objective + ?Sized>(
    obj: &O,
    x: &[f64],
    index: usize,
) -> Result<f64, OptError> {
    let value = obj.eval(x);
    if value.is_finite() {
        Ok(value)
    } else {
        Err(OptError::NonFiniteFitness { index, value })
    }
}

/// Evaluates every member and refreshes the best index.
pub fn evaluate<O: Objective + ?Sized>(
    mut pop: Population,
    obj: &O,
) -> Result<Population, OptError> {
    for (i, m) in pop.members.iter_mut().enumerate() {
        if m.position.len() != obj.dims() {
            return Err(OptError::DimensionMismatch {
                expected: obj.dims(),
                actual: m.position.len(),
            });
        }
        m.fitness = Some(score(obj, &m.position, i)?);
    }
    pop.refresh_best();
    Ok(pop)
}

/// Indices of the `k` best members, ascending by fitness, ties to the lower index.
pub fn rank(pop: &Population, k: usize) -> Result<Vec<usize>, OptError> {
    let fit = pop.fitnesses()?;
    if k > fit.len() {
        return Err(OptError::TooMany { k, size: fit.len() });
    }
    let mut order: Vec<usize> = (0..fit.len()).collect();
    // Stable sort keeps the lower index first among equal fitness.
    order.sort_by(|&a, &b| fit[a].total_cmp(&fit[b]));
    order.truncate(k);
    Ok(order)
}

/// The `k` best members, ascending by fitness.
pub fn select_best(pop: &Population, k: usize) -> Result<Vec<Individual>, OptError> {
    Ok(rank(pop, k)?
        .into_iter()
        .map(|i| pop.members[i].clone())
        .collect())
}
