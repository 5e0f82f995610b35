//! Global search phase: scaling factor, flight selection and the guided move.

use crate::hraha::local::accept_if_better;
use crate::hraha::FlightKind;
use crate::objective::Objective;
use crate::population::Population;
use crate::rng::Rng;
use crate::space::{OptError, SearchSpace};

/// Guards the spread normalization against a zero-width fitness range.
pub const ALPHA_EPS: f64 = 1e-12;

/// Scaling factor α in `[0, 1]`.
///
/// `α = ω · (f̄ − f*) / (f_worst − f* + ε) + (1 − ω) · (1 − t/T)`, clamped.
/// The first term is the normalized fitness spread, the second decays
/// linearly over the run.
pub fn compute_alpha(pop: &Population, omega: f64, t: usize, max_iters: usize) -> Result<f64, OptError> {
    let fit = pop.fitnesses()?;
    if fit.is_empty() {
        return Err(OptError::Unevaluated(0));
    }
    let best = fit.iter().copied().fold(f64::INFINITY, f64::min);
    let worst = fit.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mean = fit.iter().sum::<f64>() / fit.len() as f64;
    let spread = (mean - best) / (worst - best + ALPHA_EPS);
    let schedule = 1.0 - t as f64 / max_iters.max(1) as f64;
    Ok((omega * spread + (1.0 - omega) * schedule).clamp(0.0, 1.0))
}

/// Maps α onto a flight regime. Values above the last threshold stay diagonal.
pub fn select_flight(alpha: f64, thresholds: [f64; 3]) -> FlightKind {
    if alpha <= thresholds[0] {
        FlightKind::Omnidirectional
    } else if alpha <= thresholds[1] {
        FlightKind::Axial
    } else {
        FlightKind::Diagonal
    }
}

/// Direction mask for one member.
///
/// Omnidirectional activates every axis, axial exactly one, diagonal a random
/// subset of size `2..=dims-1` (all axes when `dims <= 2`).
pub fn flight_mask(kind: FlightKind, dims: usize, rng: &mut Rng) -> Vec<bool> {
    let mut mask = vec![false; dims];
    match kind {
        FlightKind::Omnidirectional => mask.fill(true),
        FlightKind::Axial => mask[rng.index(dims)] = true,
        FlightKind::Diagonal if dims <= 2 => mask.fill(true),
        FlightKind::Diagonal => {
            let size = 2 + rng.index(dims - 2);
            for j in rng.distinct(dims, size) {
                mask[j] = true;
            }
        }
    }
    mask
}

/// `clamp(x + α · g · mask ⊙ (best − x))`.
pub fn flight_candidate(
    x: &[f64],
    best: &[f64],
    alpha: f64,
    g: f64,
    mask: &[bool],
    space: &SearchSpace,
) -> Vec<f64> {
    let mut out: Vec<f64> = x
        .iter()
        .zip(best)
        .zip(mask)
        .map(|((&xi, &bi), &on)| if on { xi + alpha * g * (bi - xi) } else { xi })
        .collect();
    space.clamp_in_place(&mut out);
    out
}

/// Moves every member toward `best` under the chosen flight, keeping a move
/// only when it does not worsen the member's fitness.
#[allow(clippy::too_many_arguments)]
pub fn global_search_step<O: Objective + ?Sized>(
    mut pop: Population,
    best: &[f64],
    alpha: f64,
    flight: FlightKind,
    rng: &mut Rng,
    space: &SearchSpace,
    obj: &O,
) -> Result<Population, OptError> {
    if !pop.is_evaluated() {
        return Err(OptError::Unevaluated(
            pop.members().iter().position(|m| m.fitness.is_none()).unwrap_or(0),
        ));
    }
    for i in 0..pop.len() {
        let mask = flight_mask(flight, space.dims(), rng);
        let g = rng.normal();
        let candidate = flight_candidate(&pop.member(i).position, best, alpha, g, &mask, space);
        accept_if_better(&mut pop, i, candidate, obj)?;
    }
    Ok(pop)
}
