//! Forward-only neural building blocks: attention, GRU and LSTM steps,
//! activations, a small GNN, a transformer encoder layer and the
//! straight-through Gumbel-softmax sampler.

mod activation;
mod attention;
mod encoder;
mod gnn;
mod gumbel;
mod matrix;
mod recurrent;

use thiserror::Error;

pub use activation::{erf, gelu, leaky_relu, relu, sigmoid, DEFAULT_LEAKY_SLOPE};
pub use attention::{attention, attention_weights, multi_head_attention, softmax, softmax_rows, AttentionWeights};
pub use encoder::{encoder_layer, FeedForward};
pub use gnn::{gnn_block, gnn_forward, GnnWeights, Readout};
pub use gumbel::gumbel_softmax_st;
pub use matrix::Matrix;
pub use recurrent::{
    bilstm_sequence, bilstm_step, gru_step, lstm_step, BiLstmState, GruStep, GruWeights, LstmState, LstmStep,
    LstmWeights,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum KernelError {
    #[error("shape mismatch in {op}: {detail}")]
    Shape { op: &'static str, detail: String },
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
}

pub(crate) fn shape_err(op: &'static str, detail: impl Into<String>) -> KernelError {
    KernelError::Shape {
        op,
        detail: detail.into(),
    }
}
