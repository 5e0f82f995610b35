use serde::{Deserialize, Serialize};

use super::{shape_err, KernelError, Matrix};

/// Max-subtracted softmax of one vector.
pub fn softmax(v: &[f64]) -> Vec<f64> {
    let max = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let exps: Vec<f64> = v.iter().map(|x| (x - max).exp()).collect();
    let sum: f64 = exps.iter().sum();
    exps.into_iter().map(|e| e / sum).collect()
}

/// Row-wise softmax, stabilized by subtracting each row's maximum.
pub fn softmax_rows(m: &Matrix) -> Result<Matrix, KernelError> {
    if !m.is_finite() {
        return Err(KernelError::NonFinite("softmax_rows"));
    }
    let data: Vec<f64> = m.row_iter().flat_map(softmax).collect();
    Matrix::new(m.rows(), m.cols(), data)
}

/// `softmax(qu · keᵀ / √d)`, one row of weights per query.
pub fn attention_weights(qu: &Matrix, ke: &Matrix) -> Result<Matrix, KernelError> {
    if qu.cols() != ke.cols() {
        return Err(shape_err(
            "attention",
            format!("query width {} vs key width {}", qu.cols(), ke.cols()),
        ));
    }
    let scores = qu.matmul(&ke.transpose())?;
    softmax_rows(&scores.scale(1.0 / (ke.cols() as f64).sqrt()))
}

/// Scaled dot-product attention `softmax(qu · keᵀ / √d) · va`.
pub fn attention(qu: &Matrix, ke: &Matrix, va: &Matrix) -> Result<Matrix, KernelError> {
    if ke.rows() != va.rows() {
        return Err(shape_err(
            "attention",
            format!("{} keys vs {} values", ke.rows(), va.rows()),
        ));
    }
    attention_weights(qu, ke)?.matmul(va)
}

/// Per-head projections (`d × d/p` each) and the `d × d` output projection.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AttentionWeights {
    query: Vec<Matrix>,
    key: Vec<Matrix>,
    value: Vec<Matrix>,
    output: Matrix,
}

impl AttentionWeights {
    pub fn new(
        query: Vec<Matrix>,
        key: Vec<Matrix>,
        value: Vec<Matrix>,
        output: Matrix,
    ) -> Result<Self, KernelError> {
        let heads = query.len();
        let d = output.rows();
        if heads == 0 || key.len() != heads || value.len() != heads {
            return Err(shape_err("AttentionWeights", "need the same positive number of q/k/v heads"));
        }
        if d % heads != 0 {
            return Err(KernelError::InvalidParam(format!(
                "model width {d} is not divisible by {heads} heads"
            )));
        }
        let head_shape = (d, d / heads);
        if output.cols() != d {
            return Err(shape_err("AttentionWeights", "output projection must be d x d"));
        }
        if query.iter().chain(&key).chain(&value).any(|m| m.shape() != head_shape) {
            return Err(shape_err(
                "AttentionWeights",
                format!("every head projection must be {head_shape:?}"),
            ));
        }
        Ok(Self {
            query,
            key,
            value,
            output,
        })
    }

    /// One head whose projections are all the identity, with identity output.
    pub fn single_head_identity(d: usize) -> Self {
        let eye = Matrix::identity(d);
        Self {
            query: vec![eye.clone()],
            key: vec![eye.clone()],
            value: vec![eye.clone()],
            output: eye,
        }
    }

    /// All projections zero.
    pub fn zeros(d: usize, heads: usize) -> Result<Self, KernelError> {
        if heads == 0 || d % heads != 0 {
            return Err(KernelError::InvalidParam(format!(
                "model width {d} is not divisible by {heads} heads"
            )));
        }
        let z = Matrix::zeros(d, d / heads);
        Ok(Self {
            query: vec![z.clone(); heads],
            key: vec![z.clone(); heads],
            value: vec![z; heads],
            output: Matrix::zeros(d, d),
        })
    }

    pub fn heads(&self) -> usize {
        self.query.len()
    }

    pub fn width(&self) -> usize {
        self.output.rows()
    }

    pub fn query(&self, h: usize) -> &Matrix {
        &self.query[h]
    }

    pub fn key(&self, h: usize) -> &Matrix {
        &self.key[h]
    }

    pub fn value(&self, h: usize) -> &Matrix {
        &self.value[h]
    }

    pub fn output(&self) -> &Matrix {
        &self.output
    }
}

/// Concatenation of per-head attention over `x`'s projections, then the
/// output projection. Output shape equals input shape.
pub fn multi_head_attention(x: &Matrix, w: &AttentionWeights) -> Result<Matrix, KernelError> {
    if x.cols() != w.width() {
        return Err(shape_err(
            "multi_head_attention",
            format!("input width {} vs model width {}", x.cols(), w.width()),
        ));
    }
    let heads = (0..w.heads())
        .map(|h| {
            attention(
                &x.matmul(w.query(h))?,
                &x.matmul(w.key(h))?,
                &x.matmul(w.value(h))?,
            )
        })
        .collect::<Result<Vec<_>, _>>()?;
    Matrix::hstack(&heads)?.matmul(w.output())
}
