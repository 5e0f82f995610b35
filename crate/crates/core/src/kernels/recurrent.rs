//! Single-step GRU and (bi-directional) LSTM cells.

use serde::{Deserialize, Serialize};

use super::activation::sigmoid;
use super::{shape_err, KernelError, Matrix};

fn check(m: &Matrix, rows: usize, cols: usize, name: &str) -> Result<(), KernelError> {
    if m.shape() == (rows, cols) {
        Ok(())
    } else {
        Err(shape_err(
            "recurrent weights",
            format!("{name} is {:?}, expected {:?}", m.shape(), (rows, cols)),
        ))
    }
}

fn check_vec(v: &[f64], len: usize, name: &str) -> Result<(), KernelError> {
    if v.len() == len {
        Ok(())
    } else {
        Err(shape_err(
            "recurrent weights",
            format!("{name} has length {}, expected {len}", v.len()),
        ))
    }
}

/// `a·x + b·h + bias`, elementwise-combined.
fn affine2(a: &Matrix, x: &[f64], b: &Matrix, h: &[f64], bias: &[f64]) -> Result<Vec<f64>, KernelError> {
    let ax = a.matvec(x)?;
    let bh = b.matvec(h)?;
    Ok(ax.iter().zip(&bh).zip(bias).map(|((p, q), r)| p + q + r).collect())
}

/// GRU parameters. `g_*` act on the input (`hidden × input`), `w_*` on the
/// previous state (`hidden × hidden`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GruWeights {
    pub g_r: Matrix,
    pub w_r: Matrix,
    pub b_r: Vec<f64>,
    pub g_z: Matrix,
    pub w_z: Matrix,
    pub b_z: Vec<f64>,
    pub g_h: Matrix,
    pub w_h: Matrix,
    pub b_h: Vec<f64>,
}

impl GruWeights {
    pub fn zeros(input: usize, hidden: usize) -> Self {
        Self {
            g_r: Matrix::zeros(hidden, input),
            w_r: Matrix::zeros(hidden, hidden),
            b_r: vec![0.0; hidden],
            g_z: Matrix::zeros(hidden, input),
            w_z: Matrix::zeros(hidden, hidden),
            b_z: vec![0.0; hidden],
            g_h: Matrix::zeros(hidden, input),
            w_h: Matrix::zeros(hidden, hidden),
            b_h: vec![0.0; hidden],
        }
    }

    pub fn input_size(&self) -> usize {
        self.g_r.cols()
    }

    pub fn hidden_size(&self) -> usize {
        self.b_r.len()
    }

    pub fn validate(&self) -> Result<(), KernelError> {
        let (i, h) = (self.input_size(), self.hidden_size());
        for (m, name) in [(&self.g_r, "g_r"), (&self.g_z, "g_z"), (&self.g_h, "g_h")] {
            check(m, h, i, name)?;
        }
        for (m, name) in [(&self.w_r, "w_r"), (&self.w_z, "w_z"), (&self.w_h, "w_h")] {
            check(m, h, h, name)?;
        }
        check_vec(&self.b_z, h, "b_z")?;
        check_vec(&self.b_h, h, "b_h")
    }
}

/// New state of a GRU step together with its gate activations.
#[derive(Debug, Clone, PartialEq)]
pub struct GruStep {
    pub h: Vec<f64>,
    pub reset: Vec<f64>,
    pub update: Vec<f64>,
    pub candidate: Vec<f64>,
}

/// ```text
/// r  = σ(G_r x + W_r h + b_r)
/// z  = σ(G_z x + W_z h + b_z)
/// h̃  = tanh(G_h x + W (r ⊙ h) + b_h)
/// h' = (1 − z) ⊙ h + z ⊙ h̃
/// ```
pub fn gru_step(x: &[f64], h_prev: &[f64], w: &GruWeights) -> Result<GruStep, KernelError> {
    w.validate()?;
    check_vec(x, w.input_size(), "x")?;
    check_vec(h_prev, w.hidden_size(), "h_prev")?;
    let reset: Vec<f64> = affine2(&w.g_r, x, &w.w_r, h_prev, &w.b_r)?
        .into_iter()
        .map(sigmoid)
        .collect();
    let update: Vec<f64> = affine2(&w.g_z, x, &w.w_z, h_prev, &w.b_z)?
        .into_iter()
        .map(sigmoid)
        .collect();
    let gated: Vec<f64> = reset.iter().zip(h_prev).map(|(r, h)| r * h).collect();
    let candidate: Vec<f64> = affine2(&w.g_h, x, &w.w_h, &gated, &w.b_h)?
        .into_iter()
        .map(f64::tanh)
        .collect();
    let h = h_prev
        .iter()
        .zip(&update)
        .zip(&candidate)
        .map(|((hp, z), c)| (1.0 - z) * hp + z * c)
        .collect();
    Ok(GruStep {
        h,
        reset,
        update,
        candidate,
    })
}

/// Peephole LSTM parameters. `wx_*` are `hidden × input`, `wh_*` and the
/// cell peepholes `wc_*` are `hidden × hidden`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LstmWeights {
    pub wx_f: Matrix,
    pub wh_f: Matrix,
    pub wc_f: Matrix,
    pub b_f: Vec<f64>,
    pub wx_i: Matrix,
    pub wh_i: Matrix,
    pub wc_i: Matrix,
    pub b_i: Vec<f64>,
    pub wx_o: Matrix,
    pub wh_o: Matrix,
    pub wc_o: Matrix,
    pub b_o: Vec<f64>,
    pub wx_g: Matrix,
    pub wh_g: Matrix,
    pub b_g: Vec<f64>,
}

impl LstmWeights {
    pub fn zeros(input: usize, hidden: usize) -> Self {
        let x = Matrix::zeros(hidden, input);
        let h = Matrix::zeros(hidden, hidden);
        let b = vec![0.0; hidden];
        Self {
            wx_f: x.clone(),
            wh_f: h.clone(),
            wc_f: h.clone(),
            b_f: b.clone(),
            wx_i: x.clone(),
            wh_i: h.clone(),
            wc_i: h.clone(),
            b_i: b.clone(),
            wx_o: x.clone(),
            wh_o: h.clone(),
            wc_o: h.clone(),
            b_o: b.clone(),
            wx_g: x,
            wh_g: h,
            b_g: b,
        }
    }

    pub fn input_size(&self) -> usize {
        self.wx_f.cols()
    }

    pub fn hidden_size(&self) -> usize {
        self.b_f.len()
    }

    pub fn validate(&self) -> Result<(), KernelError> {
        let (i, h) = (self.input_size(), self.hidden_size());
        for (m, name) in [
            (&self.wx_f, "wx_f"),
            (&self.wx_i, "wx_i"),
            (&self.wx_o, "wx_o"),
            (&self.wx_g, "wx_g"),
        ] {
            check(m, h, i, name)?;
        }
        for (m, name) in [
            (&self.wh_f, "wh_f"),
            (&self.wc_f, "wc_f"),
            (&self.wh_i, "wh_i"),
            (&self.wc_i, "wc_i"),
            (&self.wh_o, "wh_o"),
            (&self.wc_o, "wc_o"),
            (&self.wh_g, "wh_g"),
        ] {
            check(m, h, h, name)?;
        }
        for (v, name) in [(&self.b_i, "b_i"), (&self.b_o, "b_o"), (&self.b_g, "b_g")] {
            check_vec(v, h, name)?;
        }
        Ok(())
    }
}

/// Hidden output and cell state of one LSTM direction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LstmState {
    pub h: Vec<f64>,
    pub s: Vec<f64>,
}

impl LstmState {
    pub fn zeros(hidden: usize) -> Self {
        Self {
            h: vec![0.0; hidden],
            s: vec![0.0; hidden],
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LstmStep {
    pub state: LstmState,
    pub forget: Vec<f64>,
    pub input: Vec<f64>,
    pub output: Vec<f64>,
    pub candidate: Vec<f64>,
}

fn gate(wx: &Matrix, wh: &Matrix, wc: &Matrix, b: &[f64], x: &[f64], prev: &LstmState) -> Result<Vec<f64>, KernelError> {
    let pre = affine2(wx, x, wh, &prev.h, b)?;
    let peep = wc.matvec(&prev.s)?;
    Ok(pre.iter().zip(&peep).map(|(p, c)| sigmoid(p + c)).collect())
}

/// ```text
/// f = σ(Wx_f x + Wh_f h + Wc_f s + b_f)    (likewise i, o)
/// S' = tanh(Wx_g x + Wh_g h + b_g)
/// S = f ⊙ s + i ⊙ S'
/// h = o ⊙ tanh(S)
/// ```
pub fn lstm_step(x: &[f64], prev: &LstmState, w: &LstmWeights) -> Result<LstmStep, KernelError> {
    w.validate()?;
    check_vec(x, w.input_size(), "x")?;
    check_vec(&prev.h, w.hidden_size(), "h_prev")?;
    check_vec(&prev.s, w.hidden_size(), "s_prev")?;
    let forget = gate(&w.wx_f, &w.wh_f, &w.wc_f, &w.b_f, x, prev)?;
    let input = gate(&w.wx_i, &w.wh_i, &w.wc_i, &w.b_i, x, prev)?;
    let output = gate(&w.wx_o, &w.wh_o, &w.wc_o, &w.b_o, x, prev)?;
    let candidate: Vec<f64> = affine2(&w.wx_g, x, &w.wh_g, &prev.h, &w.b_g)?
        .into_iter()
        .map(f64::tanh)
        .collect();
    let s: Vec<f64> = (0..candidate.len())
        .map(|k| forget[k] * prev.s[k] + input[k] * candidate[k])
        .collect();
    let h = s.iter().zip(&output).map(|(s, o)| o * s.tanh()).collect();
    Ok(LstmStep {
        state: LstmState { h, s },
        forget,
        input,
        output,
        candidate,
    })
}

/// Both directions after one step, plus `[h_fwd, h_bwd]`.
#[derive(Debug, Clone, PartialEq)]
pub struct BiLstmState {
    pub forward: LstmState,
    pub backward: LstmState,
    pub concat: Vec<f64>,
}

/// Advances the forward and backward cells on the same input `x`.
pub fn bilstm_step(
    x: &[f64],
    forward: &LstmState,
    backward: &LstmState,
    w_forward: &LstmWeights,
    w_backward: &LstmWeights,
) -> Result<BiLstmState, KernelError> {
    let f = lstm_step(x, forward, w_forward)?.state;
    let b = lstm_step(x, backward, w_backward)?.state;
    let concat = [f.h.as_slice(), b.h.as_slice()].concat();
    Ok(BiLstmState {
        forward: f,
        backward: b,
        concat,
    })
}

/// Runs the forward cell over `xs` and the backward cell over `xs` reversed,
/// from zero states. Output `t` is `[h_fwd(t), h_bwd(t)]`, where `h_bwd(t)`
/// has seen `xs[t..]`.
pub fn bilstm_sequence(
    xs: &[Vec<f64>],
    w_forward: &LstmWeights,
    w_backward: &LstmWeights,
) -> Result<Vec<Vec<f64>>, KernelError> {
    let mut fwd = LstmState::zeros(w_forward.hidden_size());
    let mut forward_out = Vec::with_capacity(xs.len());
    for x in xs {
        fwd = lstm_step(x, &fwd, w_forward)?.state;
        forward_out.push(fwd.h.clone());
    }
    let mut bwd = LstmState::zeros(w_backward.hidden_size());
    let mut backward_out = vec![Vec::new(); xs.len()];
    for (t, x) in xs.iter().enumerate().rev() {
        bwd = lstm_step(x, &bwd, w_backward)?.state;
        backward_out[t] = bwd.h.clone();
    }
    Ok(forward_out
        .into_iter()
        .zip(backward_out)
        .map(|(f, b)| [f, b].concat())
        .collect())
}
