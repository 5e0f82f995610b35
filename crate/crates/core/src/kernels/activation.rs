use super::KernelError;

pub const DEFAULT_LEAKY_SLOPE: f64 = 0.01;

/// Error function. Backed by `libm` (musl's implementation, < 1 ulp error),
/// which is odd-symmetric by construction.
pub fn erf(x: f64) -> f64 {
    libm::erf(x)
}

/// `0.5 · a · (1 + erf(a / √2))`.
pub fn gelu(a: f64) -> f64 {
    0.5 * a * (1.0 + erf(a / std::f64::consts::SQRT_2))
}

pub fn relu(a: f64) -> f64 {
    if a >= 0.0 {
        a
    } else {
        0.0
    }
}

/// `max(slope · a, a)` for `0 < slope < 1`.
pub fn leaky_relu(a: f64, slope: f64) -> Result<f64, KernelError> {
    if !(slope > 0.0 && slope < 1.0) {
        return Err(KernelError::InvalidParam(format!(
            "leaky slope {slope} outside (0, 1)"
        )));
    }
    Ok(if a >= 0.0 { a } else { slope * a })
}

pub fn sigmoid(x: f64) -> f64 {
    if x >= 0.0 {
        1.0 / (1.0 + (-x).exp())
    } else {
        let e = x.exp();
        e / (1.0 + e)
    }
}
