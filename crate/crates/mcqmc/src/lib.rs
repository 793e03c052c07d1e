//! Markov chain Monte Carlo driven by completely uniformly distributed (CUD)
//! deterministic input streams, with the diagnostics needed to trust it:
//! exact star-discrepancy computation, inversion-based generators, coupling
//! and contraction probes, worked models, and a variance-reduction experiment
//! harness.
//!
//! The crate is organized bottom-up:
//!
//! - [`streams`]: innovation streams — IID reference, and full-period LCG /
//!   Tausworthe-decimated LFSR scalar sequences whose overlapping tuples have
//!   vanishing star discrepancy, plus the mod-1 shift randomization.
//! - [`discrepancy`]: local and star discrepancy (exact where feasible) and
//!   the overlapping/nonoverlapping-window CUD diagnostic.
//! - [`generators`]: inversion generators — high-precision normal quantile,
//!   truncated-normal inversion, gamma quantile, and the inverse Rosenblatt
//!   map for correlated targets.
//! - [`samplers`]: update functions φ(x, u) for Metropolis–Hastings (and its
//!   independence / random-walk forms), systematic-scan Gibbs, and the
//!   inversive slice sampler, plus the chain driver with exact innovation
//!   accounting.
//! - [`coupling`]: coupling-region constructions and empirical probes for the
//!   regularity conditions (contraction, coupling into a point, exact merge).
//! - [`models`]: worked posteriors — bivariate normal Gibbs, probit data
//!   augmentation, and the pump-failure hierarchical model.
//! - [`experiments`]: replicated variance-reduction-factor experiments and
//!   CSV reporting behind the `mcqmc` binary.

pub mod coupling;
pub mod discrepancy;
pub mod error;
pub mod experiments;
pub mod generators;
pub mod models;
pub mod samplers;
pub mod streams;

pub use error::{McqmcError, Result};
