use super::attention::softmax;
use super::KernelError;
use crate::rng::Rng;

/// Draws `softmax((logits + g) / tau)` with standard Gumbel noise `g`, and
/// the one-hot of its argmax (ties to the lowest index).
pub fn gumbel_softmax_st(logits: &[f64], tau: f64, rng: &mut Rng) -> Result<(Vec<f64>, Vec<f64>), KernelError> {
    if !(tau > 0.0 && tau.is_finite()) {
        return Err(KernelError::InvalidParam(format!("temperature {tau} must be positive")));
    }
    if logits.is_empty() {
        return Err(KernelError::InvalidParam("empty logits".into()));
    }
    if logits.iter().any(|l| !l.is_finite()) {
        return Err(KernelError::NonFinite("gumbel_softmax_st"));
    }
    let perturbed: Vec<f64> = logits
        .iter()
        .map(|l| (l - (-rng.open01().ln()).ln()) / tau)
        .collect();
    let soft = softmax(&perturbed);
    let mut arg = 0;
    for (k, v) in soft.iter().enumerate() {
        if *v > soft[arg] {
            arg = k;
        }
    }
    let mut hard = vec![0.0; soft.len()];
    hard[arg] = 1.0;
    Ok((soft, hard))
}
