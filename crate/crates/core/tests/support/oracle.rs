//! Explicit-loop reference implementations of the forward kernels, used to
//! cross-check the matrix-based versions.
#![allow(dead_code)]

use hraha::kernels::{
    AttentionWeights, FeedForward, GnnWeights, GruWeights, LstmState, LstmWeights, Matrix, Readout,
};
use hraha::Rng;

pub fn random_matrix(rows: usize, cols: usize, rng: &mut Rng) -> Matrix {
    let data = (0..rows * cols).map(|_| rng.uniform_in(-1.0, 1.0)).collect();
    Matrix::new(rows, cols, data).unwrap()
}

pub fn random_vec(n: usize, rng: &mut Rng) -> Vec<f64> {
    (0..n).map(|_| rng.uniform_in(-1.0, 1.0)).collect()
}

fn size(rng: &mut Rng, lo: usize, hi: usize) -> usize {
    lo + rng.index(hi - lo + 1)
}

pub fn matmul(a: &[Vec<f64>], b: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let (n, k, m) = (a.len(), b.len(), b.first().map_or(0, Vec::len));
    let mut out = vec![vec![0.0; m]; n];
    for i in 0..n {
        for j in 0..m {
            let mut s = 0.0;
            for t in 0..k {
                s += a[i][t] * b[t][j];
            }
            out[i][j] = s;
        }
    }
    out
}

pub fn rows(m: &Matrix) -> Vec<Vec<f64>> {
    m.row_iter().map(<[f64]>::to_vec).collect()
}

fn matvec(m: &Matrix, v: &[f64]) -> Vec<f64> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.get(i, j) * v[j]).sum())
        .collect()
}

fn sigmoid(x: f64) -> f64 {
    1.0 / (1.0 + (-x).exp())
}

pub fn softmax(v: &[f64]) -> Vec<f64> {
    let mut max = f64::NEG_INFINITY;
    for &x in v {
        if x > max {
            max = x;
        }
    }
    let mut total = 0.0;
    let mut out = Vec::with_capacity(v.len());
    for &x in v {
        let e = (x - max).exp();
        total += e;
        out.push(e);
    }
    for e in &mut out {
        *e /= total;
    }
    out
}

pub fn attention(q: &[Vec<f64>], k: &[Vec<f64>], v: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let d = k[0].len() as f64;
    let mut out = Vec::with_capacity(q.len());
    for qi in q {
        let scores: Vec<f64> = k
            .iter()
            .map(|kj| qi.iter().zip(kj).map(|(a, b)| a * b).sum::<f64>() / d.sqrt())
            .collect();
        let w = softmax(&scores);
        let mut row = vec![0.0; v[0].len()];
        for (j, wj) in w.iter().enumerate() {
            for c in 0..row.len() {
                row[c] += wj * v[j][c];
            }
        }
        out.push(row);
    }
    out
}

pub fn multi_head(x: &[Vec<f64>], w: &AttentionWeights) -> Vec<Vec<f64>> {
    let mut concat = vec![Vec::new(); x.len()];
    for h in 0..w.heads() {
        let q = matmul(x, &rows(w.query(h)));
        let k = matmul(x, &rows(w.key(h)));
        let v = matmul(x, &rows(w.value(h)));
        for (row, part) in concat.iter_mut().zip(attention(&q, &k, &v)) {
            row.extend(part);
        }
    }
    matmul(&concat, &rows(w.output()))
}

fn gelu(a: f64) -> f64 {
    0.5 * a * (1.0 + hraha::kernels::erf(a / 2f64.sqrt()))
}

pub fn encoder(x: &[Vec<f64>], attn: &AttentionWeights, ffn: &FeedForward) -> Vec<Vec<f64>> {
    let a = multi_head(x, attn);
    let y: Vec<Vec<f64>> = x
        .iter()
        .zip(&a)
        .map(|(r, s)| r.iter().zip(s).map(|(p, q)| p + q).collect())
        .collect();
    let mut hidden = matmul(&y, &rows(&ffn.w1));
    for row in &mut hidden {
        for (c, v) in row.iter_mut().enumerate() {
            *v = gelu(*v + ffn.b1[c]);
        }
    }
    let f = matmul(&hidden, &rows(&ffn.w2));
    y.iter()
        .zip(&f)
        .map(|(r, s)| r.iter().zip(s).zip(&ffn.b2).map(|((p, q), b)| p + q + b).collect())
        .collect()
}

pub fn gru(x: &[f64], h: &[f64], w: &GruWeights) -> Vec<f64> {
    let n = h.len();
    let gx_r = matvec(&w.g_r, x);
    let wh_r = matvec(&w.w_r, h);
    let gx_z = matvec(&w.g_z, x);
    let wh_z = matvec(&w.w_z, h);
    let r: Vec<f64> = (0..n).map(|i| sigmoid(gx_r[i] + wh_r[i] + w.b_r[i])).collect();
    let z: Vec<f64> = (0..n).map(|i| sigmoid(gx_z[i] + wh_z[i] + w.b_z[i])).collect();
    let rh: Vec<f64> = (0..n).map(|i| r[i] * h[i]).collect();
    let gx_h = matvec(&w.g_h, x);
    let wh_h = matvec(&w.w_h, &rh);
    (0..n)
        .map(|i| {
            let c = (gx_h[i] + wh_h[i] + w.b_h[i]).tanh();
            (1.0 - z[i]) * h[i] + z[i] * c
        })
        .collect()
}

pub fn lstm(x: &[f64], prev: &LstmState, w: &LstmWeights) -> LstmState {
    let n = prev.h.len();
    let gate = |wx: &Matrix, wh: &Matrix, wc: &Matrix, b: &[f64]| -> Vec<f64> {
        let a = matvec(wx, x);
        let c = matvec(wh, &prev.h);
        let p = matvec(wc, &prev.s);
        (0..n).map(|i| sigmoid(a[i] + c[i] + p[i] + b[i])).collect()
    };
    let f = gate(&w.wx_f, &w.wh_f, &w.wc_f, &w.b_f);
    let i = gate(&w.wx_i, &w.wh_i, &w.wc_i, &w.b_i);
    let o = gate(&w.wx_o, &w.wh_o, &w.wc_o, &w.b_o);
    let gx = matvec(&w.wx_g, x);
    let gh = matvec(&w.wh_g, &prev.h);
    let s: Vec<f64> = (0..n)
        .map(|k| f[k] * prev.s[k] + i[k] * (gx[k] + gh[k] + w.b_g[k]).tanh())
        .collect();
    let h = (0..n).map(|k| o[k] * s[k].tanh()).collect();
    LstmState { h, s }
}

pub fn gnn(adj: &[Vec<f64>], d0: &[Vec<f64>], blocks: &[GnnWeights], readout: Readout) -> Vec<f64> {
    let mut d = d0.to_vec();
    for b in blocks {
        let agg = matmul(adj, &d);
        let mut next = matmul(&agg, &rows(&b.weight));
        for row in &mut next {
            for (c, v) in row.iter_mut().enumerate() {
                let a = *v + b.bias[c];
                *v = if a >= 0.0 { a } else { b.slope * a };
            }
        }
        d = next;
    }
    let width = blocks.last().map_or(d0[0].len(), |b| b.bias.len());
    let mut out = vec![0.0; width];
    for row in &d {
        for (o, v) in out.iter_mut().zip(row) {
            *o += v;
        }
    }
    if readout == Readout::Mean {
        for o in &mut out {
            *o /= d.len() as f64;
        }
    }
    out
}

fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn max_diff_rows(a: &Matrix, b: &[Vec<f64>]) -> f64 {
    assert_eq!(a.rows(), b.len());
    a.row_iter().zip(b).map(|(x, y)| max_diff(x, y)).fold(0.0, f64::max)
}

fn gru_weights(input: usize, hidden: usize, rng: &mut Rng) -> GruWeights {
    GruWeights {
        g_r: random_matrix(hidden, input, rng),
        w_r: random_matrix(hidden, hidden, rng),
        b_r: random_vec(hidden, rng),
        g_z: random_matrix(hidden, input, rng),
        w_z: random_matrix(hidden, hidden, rng),
        b_z: random_vec(hidden, rng),
        g_h: random_matrix(hidden, input, rng),
        w_h: random_matrix(hidden, hidden, rng),
        b_h: random_vec(hidden, rng),
    }
}

pub fn lstm_weights(input: usize, hidden: usize, rng: &mut Rng) -> LstmWeights {
    let mut x = || random_matrix(hidden, input, rng);
    let (wx_f, wx_i, wx_o, wx_g) = (x(), x(), x(), x());
    let mut h = || random_matrix(hidden, hidden, rng);
    let (wh_f, wc_f, wh_i, wc_i, wh_o, wc_o, wh_g) = (h(), h(), h(), h(), h(), h(), h());
    let mut b = || random_vec(hidden, rng);
    let (b_f, b_i, b_o, b_g) = (b(), b(), b(), b());
    LstmWeights {
        wx_f,
        wh_f,
        wc_f,
        b_f,
        wx_i,
        wh_i,
        wc_i,
        b_i,
        wx_o,
        wh_o,
        wc_o,
        b_o,
        wx_g,
        wh_g,
        b_g,
    }
}

pub fn attention_weights(d: usize, heads: usize, rng: &mut Rng) -> AttentionWeights {
    let mut proj = || (0..heads).map(|_| random_matrix(d, d / heads, rng)).collect::<Vec<_>>();
    let (q, k, v) = (proj(), proj(), proj());
    AttentionWeights::new(q, k, v, random_matrix(d, d, rng)).unwrap()
}

/// Largest absolute deviation between every kernel and its loop oracle over
/// `shapes` random shapes, keyed by kernel name.
pub fn kernel_deviations(seed: u64, shapes: usize) -> Vec<(&'static str, f64)> {
    use hraha::kernels as k;
    let mut rng = Rng::new(seed);
    let mut worst = vec![
        ("matmul", 0.0f64),
        ("softmax", 0.0),
        ("attention", 0.0),
        ("multi_head_attention", 0.0),
        ("encoder_layer", 0.0),
        ("gru_step", 0.0),
        ("lstm_step", 0.0),
        ("bilstm_sequence", 0.0),
        ("gnn_forward", 0.0),
    ];
    let mut note = |name: &str, v: f64| {
        let slot = worst.iter_mut().find(|(n, _)| *n == name).unwrap();
        slot.1 = slot.1.max(v);
    };
    for _ in 0..shapes {
        let (n, m, p) = (size(&mut rng, 1, 6), size(&mut rng, 1, 6), size(&mut rng, 1, 6));
        let a = random_matrix(n, m, &mut rng);
        let b = random_matrix(m, p, &mut rng);
        note("matmul", max_diff_rows(&a.matmul(&b).unwrap(), &matmul(&rows(&a), &rows(&b))));

        let v: Vec<f64> = (0..m).map(|_| rng.uniform_in(-20.0, 20.0)).collect();
        note("softmax", max_diff(&k::softmax(&v), &softmax(&v)));

        let (nq, nk, dk, dv) = (n, size(&mut rng, 1, 6), m, p);
        let q = random_matrix(nq, dk, &mut rng);
        let kk = random_matrix(nk, dk, &mut rng);
        let vv = random_matrix(nk, dv, &mut rng);
        note(
            "attention",
            max_diff_rows(&k::attention(&q, &kk, &vv).unwrap(), &attention(&rows(&q), &rows(&kk), &rows(&vv))),
        );

        let heads = size(&mut rng, 1, 3);
        let d = heads * size(&mut rng, 1, 3);
        let x = random_matrix(n, d, &mut rng);
        let aw = attention_weights(d, heads, &mut rng);
        note(
            "multi_head_attention",
            max_diff_rows(&k::multi_head_attention(&x, &aw).unwrap(), &multi_head(&rows(&x), &aw)),
        );
        let hidden = size(&mut rng, 1, 5);
        let ffn = FeedForward {
            w1: random_matrix(d, hidden, &mut rng),
            b1: random_vec(hidden, &mut rng),
            w2: random_matrix(hidden, d, &mut rng),
            b2: random_vec(d, &mut rng),
        };
        note(
            "encoder_layer",
            max_diff_rows(&k::encoder_layer(&x, &aw, &ffn).unwrap(), &encoder(&rows(&x), &aw, &ffn)),
        );

        let (input, hid) = (size(&mut rng, 1, 5), size(&mut rng, 1, 5));
        let gw = gru_weights(input, hid, &mut rng);
        let xv = random_vec(input, &mut rng);
        let hv = random_vec(hid, &mut rng);
        note("gru_step", max_diff(&k::gru_step(&xv, &hv, &gw).unwrap().h, &gru(&xv, &hv, &gw)));

        let lw = lstm_weights(input, hid, &mut rng);
        let prev = LstmState {
            h: random_vec(hid, &mut rng),
            s: random_vec(hid, &mut rng),
        };
        let got = k::lstm_step(&xv, &prev, &lw).unwrap().state;
        let want = lstm(&xv, &prev, &lw);
        note("lstm_step", max_diff(&got.h, &want.h).max(max_diff(&got.s, &want.s)));

        let lb = lstm_weights(input, hid, &mut rng);
        let xs: Vec<Vec<f64>> = (0..size(&mut rng, 1, 4)).map(|_| random_vec(input, &mut rng)).collect();
        let seq = k::bilstm_sequence(&xs, &lw, &lb).unwrap();
        let mut f = LstmState::zeros(hid);
        let mut fwd = Vec::new();
        for x in &xs {
            f = lstm(x, &f, &lw);
            fwd.push(f.h.clone());
        }
        let mut bk = LstmState::zeros(hid);
        let mut bwd = vec![Vec::new(); xs.len()];
        for t in (0..xs.len()).rev() {
            bk = lstm(&xs[t], &bk, &lb);
            bwd[t] = bk.h.clone();
        }
        for t in 0..xs.len() {
            note("bilstm_sequence", max_diff(&seq[t], &[fwd[t].clone(), bwd[t].clone()].concat()));
        }

        let nodes = size(&mut rng, 1, 5);
        let mut adj = Matrix::identity(nodes);
        for i in 0..nodes {
            for j in 0..i {
                if rng.bernoulli(0.5) {
                    adj.set(i, j, 1.0);
                    adj.set(j, i, 1.0);
                }
            }
        }
        let e0 = size(&mut rng, 1, 4);
        let d0 = random_matrix(nodes, e0, &mut rng);
        let mut blocks = Vec::new();
        let mut width = e0;
        for _ in 0..size(&mut rng, 1, 3) {
            let out = size(&mut rng, 1, 4);
            blocks.push(GnnWeights::new(random_matrix(width, out, &mut rng), random_vec(out, &mut rng)).unwrap());
            width = out;
        }
        for readout in [Readout::Mean, Readout::Sum] {
            note(
                "gnn_forward",
                max_diff(
                    &k::gnn_forward(&adj, &d0, &blocks, readout).unwrap(),
                    &gnn(&rows(&adj), &rows(&d0), &blocks, readout),
                ),
            );
        }
    }
    worst
}
