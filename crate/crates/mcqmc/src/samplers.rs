//! MCMC update functions φ(x, u) and the chain driver.
//!
//! Each sampler is a deterministic map from (current state, block of d
//! uniforms) to the next state. The innovation layout inside a block is part
//! of the contract — proposal uniforms first, acceptance uniform last — and
//! the driver consumes exactly n·d scalars for an n-step run, because the
//! coupling geometry and the CUD alignment both depend on no hidden draws.

pub mod chain;
pub mod gibbs;
pub mod mh;
pub mod slice;

pub use chain::{run_chain, run_chain_overlapping, ChainOptions, ChainRun, TestFunction};
pub use gibbs::{gibbs_step, GibbsBlock, GibbsSpec};
pub use mh::{mh_step, mis_step, rwm_step, MhSpec, MisSpec, RwmSpec};
pub use slice::{slice_step, SliceSpec};

use crate::error::Result;

/// A deterministic Markov chain update x′ = φ(x, u): identical inputs give
/// identical outputs, and the new state stays in the sampler's state space.
pub trait UpdateFunction: Send + Sync {
    fn state_dim(&self) -> usize;
    /// Number of uniforms consumed per step.
    fn innovation_dim(&self) -> usize;
    fn step(&self, x: &[f64], u: &[f64]) -> Result<Vec<f64>>;
    fn kind(&self) -> &'static str;
}
