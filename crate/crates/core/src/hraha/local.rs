//! Local strategies: stay-and-disguise, territorial foraging, migration and
//! the move-closer reproduction step, plus the habitat arithmetic it uses.

use std::f64::consts::TAU;

use crate::hraha::HrahaConfig;
use crate::objective::Objective;
use crate::population::{rank, score, Individual, Population, MIN_POPULATION};
use crate::rng::Rng;
use crate::space::{OptError, SearchSpace};

fn same_len(a: &[f64], b: &[f64]) -> Result<(), OptError> {
    if a.len() == b.len() {
        Ok(())
    } else {
        Err(OptError::DimensionMismatch {
            expected: a.len(),
            actual: b.len(),
        })
    }
}

/// Evaluates `candidate` for member `i` and keeps it if it is no worse.
/// Returns whether the move was accepted. Identical positions are not re-evaluated.
pub fn accept_if_better<O: Objective + ?Sized>(
    pop: &mut Population,
    i: usize,
    candidate: Vec<f64>,
    obj: &O,
) -> Result<bool, OptError> {
    let current = pop.fitness(i)?;
    if candidate == pop.member(i).position {
        return Ok(false);
    }
    let f = score(obj, &candidate, i)?;
    if f <= current {
        pop.replace(i, Individual::evaluated(candidate, f));
        Ok(true)
    } else {
        Ok(false)
    }
}

/// Movement step size δ, uniform on `[0, 1)`.
pub fn draw_delta(rng: &mut Rng) -> f64 {
    rng.uniform()
}

/// Circular move around the current position with radius `nr`.
///
/// With `φ = phis` (one-based in the formulas below, `phis[0] = φ₁`):
/// - `x'₀ = nr·sin φ₁ + x₀`
/// - `x'ₖ = nr·Σ_{j≤k} sin φⱼ + nr·cos φₖ₊₁ + xₖ` for `1 ≤ k ≤ d−2`
/// - `x'_{d−1} = nr·Σ_{j≤d−1} sin φⱼ + x_{d−1}`
///
/// The result is clamped to the box.
pub fn stay_and_disguise(
    x: &[f64],
    nr: f64,
    phis: &[f64],
    space: &SearchSpace,
) -> Result<Vec<f64>, OptError> {
    let d = x.len();
    if d == 0 {
        return Err(OptError::EmptySpace);
    }
    same_len(x, phis)?;
    same_len(x, space.lower())?;
    let mut out = Vec::with_capacity(d);
    out.push(nr * phis[0].sin() + x[0]);
    if d > 1 {
        let mut sin_sum = 0.0;
        for k in 1..d {
            sin_sum += phis[k - 1].sin();
            let step = if k == d - 1 {
                nr * sin_sum
            } else {
                nr * sin_sum + nr * phis[k].cos()
            };
            out.push(x[k] + step);
        }
    }
    space.clamp_in_place(&mut out);
    Ok(out)
}

/// Planar territorial step for one coordinate pair.
///
/// `x' = x + λ·cos φ·(r·cos φ + θ·cos φ₀)`, `y' = y + λ·sin φ·(r·cos φ + θ·cos φ₀)`.
pub fn territorial_pair(
    x: f64,
    y: f64,
    lambda: f64,
    r: f64,
    phi: f64,
    phi0: f64,
    theta: f64,
) -> (f64, f64) {
    let reach = r * phi.cos() + theta * phi0.cos();
    (x + lambda * phi.cos() * reach, y + lambda * phi.sin() * reach)
}

/// Applies [`territorial_pair`] to consecutive coordinate pairs `(2k, 2k+1)`,
/// with one `(φ, φ₀)` per pair. A trailing odd coordinate uses the `x'` rule
/// alone. The result is clamped to the box.
pub fn territorial_foraging(
    x: &[f64],
    lambda: f64,
    r: f64,
    theta: f64,
    angles: &[(f64, f64)],
    space: &SearchSpace,
) -> Result<Vec<f64>, OptError> {
    same_len(x, space.lower())?;
    let pairs = x.len().div_ceil(2);
    if angles.len() != pairs {
        return Err(OptError::DimensionMismatch {
            expected: pairs,
            actual: angles.len(),
        });
    }
    let mut out = x.to_vec();
    for (k, &(phi, phi0)) in angles.iter().enumerate() {
        let j = 2 * k;
        if j + 1 < x.len() {
            let (nx, ny) = territorial_pair(x[j], x[j + 1], lambda, r, phi, phi0, theta);
            out[j] = nx;
            out[j + 1] = ny;
        } else {
            out[j] = territorial_pair(x[j], 0.0, lambda, r, phi, phi0, theta).0;
        }
    }
    space.clamp_in_place(&mut out);
    Ok(out)
}

/// Draws the `(φ, φ₀)` angles for a territorial move in `dims` dimensions.
pub fn draw_pair_angles(dims: usize, rng: &mut Rng) -> Vec<(f64, f64)> {
    (0..dims.div_ceil(2))
        .map(|_| (rng.uniform_in(0.0, TAU), rng.uniform_in(0.0, TAU)))
        .collect()
}

/// `L + r ⊙ (U − L)`.
pub fn migration_position(space: &SearchSpace, r: &[f64]) -> Result<Vec<f64>, OptError> {
    same_len(space.lower(), r)?;
    Ok(space
        .lower()
        .iter()
        .zip(space.upper())
        .zip(r)
        .map(|((&l, &u), &ri)| l + ri * (u - l))
        .collect())
}

/// Tracks when the last migration happened.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MigrationGate {
    pub coefficient: usize,
    pub last: usize,
}

impl MigrationGate {
    pub fn new(coefficient: usize) -> Self {
        Self {
            coefficient,
            last: 0,
        }
    }

    pub fn is_open(&self, iter: usize) -> bool {
        iter.saturating_sub(self.last) >= self.coefficient
    }
}

/// Relocates the worst member to a uniform point of the box when the gate is
/// open. The new position is kept regardless of its fitness.
///
/// Returns the per-dimension draws `r` when a migration happened.
pub fn migrate_worst<O: Objective + ?Sized>(
    pop: &mut Population,
    space: &SearchSpace,
    rng: &mut Rng,
    gate: &mut MigrationGate,
    iter: usize,
    obj: &O,
) -> Result<Option<Vec<f64>>, OptError> {
    if !gate.is_open(iter) {
        return Ok(None);
    }
    pop.fitnesses()?;
    let Some(worst) = pop.worst_index() else {
        return Ok(None);
    };
    let r: Vec<f64> = (0..space.dims()).map(|_| rng.uniform()).collect();
    let position = migration_position(space, &r)?;
    let f = score(obj, &position, worst)?;
    pop.replace(worst, Individual::evaluated(position, f));
    gate.last = iter;
    Ok(Some(r))
}

/// Midpoint of the alpha couple.
pub fn habitat_center(p1: &[f64], p2: &[f64]) -> Result<Vec<f64>, OptError> {
    same_len(p1, p2)?;
    Ok(p1.iter().zip(p2).map(|(a, b)| 0.5 * (a + b)).collect())
}

/// `Σⱼ (p1ⱼ − Cⱼ)² + (p2ⱼ − Cⱼ)²`, which equals `‖p1 − p2‖² / 2`.
pub fn habitat_size(p1: &[f64], p2: &[f64], center: &[f64]) -> Result<f64, OptError> {
    same_len(p1, p2)?;
    same_len(p1, center)?;
    Ok(p1
        .iter()
        .zip(p2)
        .zip(center)
        .map(|((a, b), c)| (a - c).powi(2) + (b - c).powi(2))
        .sum())
}

/// `r1 · (p1 − p2) + p2`, one blend weight for the whole offspring.
///
/// Evaluated as `r1·p1 + (1 − r1)·p2` so both endpoints return a parent exactly.
pub fn crossover(parent1: &[f64], parent2: &[f64], r1: f64) -> Result<Vec<f64>, OptError> {
    same_len(parent1, parent2)?;
    Ok(parent1
        .iter()
        .zip(parent2)
        .map(|(a, b)| r1 * a + (1.0 - r1) * b)
        .collect())
}

/// Pulls `child` toward the habitat center: `x + r2 · (C − x)`, evaluated
/// as `(1 − r2)·x + r2·C`.
pub fn mutate(child: &[f64], center: &[f64], r2: f64) -> Result<Vec<f64>, OptError> {
    same_len(child, center)?;
    Ok(child
        .iter()
        .zip(center)
        .map(|(x, c)| (1.0 - r2) * x + r2 * c)
        .collect())
}

/// Replaces the worst `max(1, ⌊worst_fraction · n⌋)` members with nomads
/// around the alpha couple's habitat or with crossover/mutation offspring of
/// two random non-alpha members.
///
/// The alpha couple (two best members) is never replaced, so the incumbent
/// best always survives this step.
pub fn move_closer_reproduce<O: Objective + ?Sized>(
    mut pop: Population,
    cfg: &HrahaConfig,
    rng: &mut Rng,
    space: &SearchSpace,
    obj: &O,
) -> Result<Population, OptError> {
    let n = pop.len();
    if n < MIN_POPULATION {
        return Err(OptError::PopulationTooSmall(n));
    }
    let order = rank(&pop, n)?;
    let (a1, a2) = (order[0], order[1]);
    let p1 = pop.member(a1).position.clone();
    let p2 = pop.member(a2).position.clone();
    let center = habitat_center(&p1, &p2)?;
    let size = habitat_size(&p1, &p2, &center)?;
    let side = size.sqrt();

    let k = ((cfg.worst_fraction * n as f64).floor() as usize).clamp(1, n - 2);
    let replaced: Vec<usize> = order[n - k..].to_vec();
    let parents: Vec<usize> = order[2..].to_vec();
    let snapshot: Vec<Vec<f64>> = pop.members().iter().map(|m| m.position.clone()).collect();

    for &slot in replaced.iter().rev() {
        let mut child = if rng.bernoulli(cfg.nomad_probability) {
            center
                .iter()
                .zip(space.lower().iter().zip(space.upper()))
                .map(|(&c, (&l, &u))| {
                    let lo = (c - side / 2.0).max(l);
                    let hi = (c + side / 2.0).min(u);
                    rng.uniform_in(lo, hi)
                })
                .collect::<Vec<f64>>()
        } else {
            let pick = rng.distinct(parents.len(), 2);
            let r1 = rng.uniform();
            let r2 = rng.uniform();
            let blended = crossover(&snapshot[parents[pick[0]]], &snapshot[parents[pick[1]]], r1)?;
            mutate(&blended, &center, r2)?
        };
        space.clamp_in_place(&mut child);
        let f = score(obj, &child, slot)?;
        pop.replace(slot, Individual::evaluated(child, f));
    }
    Ok(pop)
}
