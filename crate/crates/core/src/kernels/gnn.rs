use serde::{Deserialize, Serialize};

use super::activation::{leaky_relu, DEFAULT_LEAKY_SLOPE};
use super::{shape_err, KernelError, Matrix};

/// Combine step of one message-passing block: an `e_in × e_out` affine map
/// followed by leaky ReLU.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GnnWeights {
    pub weight: Matrix,
    pub bias: Vec<f64>,
    pub slope: f64,
}

impl GnnWeights {
    pub fn new(weight: Matrix, bias: Vec<f64>) -> Result<Self, KernelError> {
        let w = Self {
            weight,
            bias,
            slope: DEFAULT_LEAKY_SLOPE,
        };
        w.validate()?;
        Ok(w)
    }

    pub fn zeros(e_in: usize, e_out: usize) -> Self {
        Self {
            weight: Matrix::zeros(e_in, e_out),
            bias: vec![0.0; e_out],
            slope: DEFAULT_LEAKY_SLOPE,
        }
    }

    pub fn validate(&self) -> Result<(), KernelError> {
        if self.bias.len() != self.weight.cols() {
            return Err(shape_err(
                "gnn_block",
                format!("bias length {} vs weight cols {}", self.bias.len(), self.weight.cols()),
            ));
        }
        leaky_relu(0.0, self.slope).map(|_| ())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Readout {
    #[default]
    Mean,
    Sum,
}

/// `leaky_relu(adj · d_prev · W + b)`. `adj` should already carry self loops.
pub fn gnn_block(adj: &Matrix, d_prev: &Matrix, w: &GnnWeights) -> Result<Matrix, KernelError> {
    w.validate()?;
    if adj.rows() != adj.cols() {
        return Err(shape_err("gnn_block", format!("adjacency is {:?}", adj.shape())));
    }
    let aggregated = adj.matmul(d_prev)?;
    let combined = aggregated.matmul(&w.weight)?.add_row(&w.bias)?;
    let slope = w.slope;
    Ok(combined.map(|a| if a >= 0.0 { a } else { slope * a }))
}

/// Applies `blocks` in order starting from `d0`, then reduces over nodes.
pub fn gnn_forward(
    adj: &Matrix,
    d0: &Matrix,
    blocks: &[GnnWeights],
    readout: Readout,
) -> Result<Vec<f64>, KernelError> {
    if adj.rows() != d0.rows() {
        return Err(shape_err(
            "gnn_forward",
            format!("{} adjacency rows vs {} nodes", adj.rows(), d0.rows()),
        ));
    }
    let mut d = d0.clone();
    for block in blocks {
        d = gnn_block(adj, &d, block)?;
    }
    let mut out = vec![0.0; d.cols()];
    for row in d.row_iter() {
        for (o, v) in out.iter_mut().zip(row) {
            *o += v;
        }
    }
    if readout == Readout::Mean && d.rows() > 0 {
        let n = d.rows() as f64;
        out.iter_mut().for_each(|o| *o /= n);
    }
    Ok(out)
}
