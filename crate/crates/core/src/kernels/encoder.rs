use serde::{Deserialize, Serialize};

use super::activation::gelu;
use super::attention::multi_head_attention;
use super::{shape_err, AttentionWeights, KernelError, Matrix};

/// Position-wise `gelu(x·W1 + b1)·W2 + b2`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeedForward {
    pub w1: Matrix,
    pub b1: Vec<f64>,
    pub w2: Matrix,
    pub b2: Vec<f64>,
}

impl FeedForward {
    pub fn zeros(d: usize, hidden: usize) -> Self {
        Self {
            w1: Matrix::zeros(d, hidden),
            b1: vec![0.0; hidden],
            w2: Matrix::zeros(hidden, d),
            b2: vec![0.0; d],
        }
    }

    pub fn apply(&self, x: &Matrix) -> Result<Matrix, KernelError> {
        if self.w1.cols() != self.w2.rows() {
            return Err(shape_err(
                "feed_forward",
                format!("w1 {:?} does not chain into w2 {:?}", self.w1.shape(), self.w2.shape()),
            ));
        }
        let hidden = x.matmul(&self.w1)?.add_row(&self.b1)?.map(gelu);
        hidden.matmul(&self.w2)?.add_row(&self.b2)
    }
}

/// `y = x + MHSA(x)`, then `y + FFN(y)`.
pub fn encoder_layer(x: &Matrix, attn: &AttentionWeights, ffn: &FeedForward) -> Result<Matrix, KernelError> {
    let y = x.add(&multi_head_attention(x, attn)?)?;
    let f = ffn.apply(&y)?;
    if f.shape() != y.shape() {
        return Err(shape_err(
            "encoder_layer",
            format!("feed-forward maps {:?} to {:?}", y.shape(), f.shape()),
        ));
    }
    y.add(&f)
}
