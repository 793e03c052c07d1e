//! The chain driver: x_i = φ(x_{i−1}, u_i) with strict innovation
//! accounting. An n-step run consumes exactly n·d scalars from the stream —
//! no hidden draws — so that CUD block alignment is preserved, and the
//! estimator θ̂_n(f) = (1/n)Σ f(x_i) always averages over all n states even
//! when the stored trajectory is thinned.

use crate::error::{McqmcError, Result};
use crate::samplers::UpdateFunction;
use crate::streams::InnovationStream;

pub struct TestFunction {
    pub label: String,
    pub f: Box<dyn Fn(&[f64]) -> f64 + Send + Sync>,
}

impl TestFunction {
    pub fn new(label: impl Into<String>, f: impl Fn(&[f64]) -> f64 + Send + Sync + 'static) -> Self {
        TestFunction { label: label.into(), f: Box::new(f) }
    }

    /// Projection onto one state coordinate.
    pub fn coordinate(j: usize) -> Self {
        Self::new(format!("x{j}"), move |x: &[f64]| x[j])
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ChainOptions {
    /// Store every `thin`-th state (1-based: state i is kept when i % thin
    /// == 0). `None` stores nothing.
    pub thin: Option<usize>,
    /// Steps to run and discard before the n counted steps. The discarded
    /// prefix still consumes innovations from the same stream. The starting
    /// point is treated as already post burn-in when this is 0.
    pub discard: usize,
}

#[derive(Debug, Clone)]
pub struct Estimate {
    pub label: String,
    /// None for an empty (n = 0) run.
    pub value: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct ChainRun {
    pub n: usize,
    pub estimates: Vec<Estimate>,
    /// Thinned trajectory, present when `thin` was set.
    pub trajectory: Option<Vec<Vec<f64>>>,
    pub final_state: Vec<f64>,
    pub scalars_consumed: u64,
}

pub fn run_chain(
    update: &dyn UpdateFunction,
    x0: &[f64],
    stream: &mut InnovationStream,
    n: usize,
    fns: &[TestFunction],
    opts: &ChainOptions,
) -> Result<ChainRun> {
    let d = update.innovation_dim();
    if x0.len() != update.state_dim() {
        return Err(McqmcError::DimensionMismatch { expected: update.state_dim(), got: x0.len() });
    }
    let start = stream.emitted();
    let mut x = x0.to_vec();
    let mut u = vec![0.0; d];
    let at_step = |e: McqmcError, i: usize| match e {
        McqmcError::InvalidState { reason, .. } => McqmcError::InvalidState { step: i, reason },
        other => other,
    };
    for i in 1..=opts.discard {
        stream.fill_block(&mut u)?;
        x = update.step(&x, &u).map_err(|e| at_step(e, i))?;
    }
    let mut sums = vec![0.0f64; fns.len()];
    let mut trajectory = opts.thin.map(|_| Vec::new());
    for i in 1..=n {
        stream.fill_block(&mut u)?;
        x = update.step(&x, &u).map_err(|e| at_step(e, opts.discard + i))?;
        for (s, tf) in sums.iter_mut().zip(fns) {
            *s += (tf.f)(&x);
        }
        if let (Some(t), Some(traj)) = (opts.thin, trajectory.as_mut()) {
            if t > 0 && i % t == 0 {
                traj.push(x.clone());
            }
        }
    }
    let estimates = fns
        .iter()
        .zip(&sums)
        .map(|(tf, &s)| Estimate {
            label: tf.label.clone(),
            value: if n > 0 { Some(s / n as f64) } else { None },
        })
        .collect();
    Ok(ChainRun {
        n,
        estimates,
        trajectory,
        final_state: x,
        scalars_consumed: stream.emitted() - start,
    })
}

/// Drive the chain with overlapping scalar windows: step i uses the block
/// (v_i, v_{i+1}, ..., v_{i+d−1}) from `scalars`, indices wrapping
/// cyclically. With n equal to the sequence length, every overlapping
/// d-tuple of the periodic sequence drives exactly one step — the classical
/// way to spend the entire period of a small generator on a d-dimensional
/// update, and the regime in which full-period equidistribution pays off
/// hardest. `scalars_consumed` reports the number of distinct scalars read.
pub fn run_chain_overlapping(
    update: &dyn UpdateFunction,
    x0: &[f64],
    scalars: &[f64],
    n: usize,
    fns: &[TestFunction],
    opts: &ChainOptions,
) -> Result<ChainRun> {
    let d = update.innovation_dim();
    if x0.len() != update.state_dim() {
        return Err(McqmcError::DimensionMismatch { expected: update.state_dim(), got: x0.len() });
    }
    if scalars.len() < d {
        return Err(McqmcError::TooShort { need: d, got: scalars.len() });
    }
    let len = scalars.len();
    let mut x = x0.to_vec();
    let mut u = vec![0.0; d];
    let at_step = |e: McqmcError, i: usize| match e {
        McqmcError::InvalidState { reason, .. } => McqmcError::InvalidState { step: i, reason },
        other => other,
    };
    let mut sums = vec![0.0f64; fns.len()];
    let mut trajectory = opts.thin.map(|_| Vec::new());
    for i in 1..=opts.discard + n {
        let start = (i - 1) % len;
        for (j, slot) in u.iter_mut().enumerate() {
            *slot = scalars[(start + j) % len];
        }
        x = update.step(&x, &u).map_err(|e| at_step(e, i))?;
        if i <= opts.discard {
            continue;
        }
        let counted = i - opts.discard;
        for (s, tf) in sums.iter_mut().zip(fns) {
            *s += (tf.f)(&x);
        }
        if let (Some(t), Some(traj)) = (opts.thin, trajectory.as_mut()) {
            if t > 0 && counted % t == 0 {
                traj.push(x.clone());
            }
        }
    }
    let estimates = fns
        .iter()
        .zip(&sums)
        .map(|(tf, &s)| Estimate {
            label: tf.label.clone(),
            value: if n > 0 { Some(s / n as f64) } else { None },
        })
        .collect();
    Ok(ChainRun {
        n,
        estimates,
        trajectory,
        final_state: x,
        scalars_consumed: (opts.discard + n + d - 1).min(len) as u64,
    })
}
