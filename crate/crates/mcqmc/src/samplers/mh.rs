//! Metropolis–Hastings and its two workhorse special cases, the Metropolized
//! independence sampler (proposal ignores the current state) and random-walk
//! Metropolis (proposal is a symmetric increment).
//!
//! A block of d uniforms drives one step: u_1..u_{d−1} generate the proposal,
//! u_d decides acceptance. The special-case steps use the algebraically
//! reduced acceptance ratios and are tested to agree with the generic form.

use crate::error::{McqmcError, Result};
use crate::samplers::UpdateFunction;

type StateFn = Box<dyn Fn(&[f64]) -> f64 + Send + Sync>;
type ProposalFn = Box<dyn Fn(&[f64], &[f64]) -> Result<Vec<f64>> + Send + Sync>;
type PairDensityFn = Box<dyn Fn(&[f64], &[f64]) -> f64 + Send + Sync>;
type MapFn = Box<dyn Fn(&[f64]) -> Result<Vec<f64>> + Send + Sync>;

/// Generic Metropolis–Hastings specification.
pub struct MhSpec {
    pub state_dim: usize,
    /// Total uniforms per step; the proposal consumes the first d−1.
    pub innovation_dim: usize,
    /// log π(x); −∞ encodes zero density.
    pub log_target: StateFn,
    /// ψ_x(u_{1:(d−1)}) — the proposal point.
    pub proposal: ProposalFn,
    /// log p(y | x), arguments in that order.
    pub log_proposal_density: PairDensityFn,
}

fn check_finite_log_density(v: f64, what: &str, step_ctx: &str) -> Result<f64> {
    if v.is_nan() {
        return Err(McqmcError::InvalidState {
            step: 0,
            reason: format!("{what} is NaN during {step_ctx}"),
        });
    }
    Ok(v)
}

/// One MH step. Acceptance uses A = min(1, π(y)p(x|y) / (π(x)p(y|x))),
/// evaluated in log space; accept iff u_d ≤ A.
pub fn mh_step(spec: &MhSpec, x: &[f64], u: &[f64]) -> Result<Vec<f64>> {
    let d = spec.innovation_dim;
    if u.len() != d {
        return Err(McqmcError::DimensionMismatch { expected: d, got: u.len() });
    }
    let lt_x = check_finite_log_density((spec.log_target)(x), "log target at x", "mh_step")?;
    if lt_x == f64::NEG_INFINITY {
        return Err(McqmcError::InvalidState {
            step: 0,
            reason: "target density is zero at the current state".into(),
        });
    }
    let y = (spec.proposal)(x, &u[..d - 1])?;
    let lt_y = check_finite_log_density((spec.log_target)(&y), "log target at proposal", "mh_step")?;
    let accept = if lt_y == f64::NEG_INFINITY {
        false
    } else {
        let lp_yx = check_finite_log_density(
            (spec.log_proposal_density)(&y, x),
            "proposal density p(y|x)",
            "mh_step",
        )?;
        if lp_yx == f64::NEG_INFINITY {
            return Err(McqmcError::InvalidState {
                step: 0,
                reason: "generated proposal has zero proposal density".into(),
            });
        }
        let lp_xy = check_finite_log_density(
            (spec.log_proposal_density)(x, &y),
            "proposal density p(x|y)",
            "mh_step",
        )?;
        let log_a = (lt_y + lp_xy - lt_x - lp_yx).min(0.0);
        u[d - 1] <= log_a.exp()
    };
    Ok(if accept { y } else { x.to_vec() })
}

impl UpdateFunction for MhSpec {
    fn state_dim(&self) -> usize {
        self.state_dim
    }
    fn innovation_dim(&self) -> usize {
        self.innovation_dim
    }
    fn step(&self, x: &[f64], u: &[f64]) -> Result<Vec<f64>> {
        mh_step(self, x, u)
    }
    fn kind(&self) -> &'static str {
        "mh"
    }
}

/// Metropolized independence sampler: the proposal y = ψ(u_{1:(d−1)}) does
/// not look at the current state, and the acceptance ratio reduces to
/// (π(y)p(x)) / (π(x)p(y)).
pub struct MisSpec {
    pub state_dim: usize,
    pub innovation_dim: usize,
    pub log_target: StateFn,
    /// ψ(u_{1:(d−1)}).
    pub proposal_map: MapFn,
    /// log p(y) of the (state-free) proposal density.
    pub log_proposal_density: StateFn,
}

pub fn mis_step(spec: &MisSpec, x: &[f64], u: &[f64]) -> Result<Vec<f64>> {
    let d = spec.innovation_dim;
    if u.len() != d {
        return Err(McqmcError::DimensionMismatch { expected: d, got: u.len() });
    }
    let lt_x = check_finite_log_density((spec.log_target)(x), "log target at x", "mis_step")?;
    if lt_x == f64::NEG_INFINITY {
        return Err(McqmcError::InvalidState {
            step: 0,
            reason: "target density is zero at the current state".into(),
        });
    }
    let lp_x = check_finite_log_density(
        (spec.log_proposal_density)(x),
        "proposal density p(x)",
        "mis_step",
    )?;
    let y = (spec.proposal_map)(&u[..d - 1])?;
    let lt_y = check_finite_log_density((spec.log_target)(&y), "log target at proposal", "mis_step")?;
    let accept = if lt_y == f64::NEG_INFINITY {
        false
    } else {
        let lp_y = check_finite_log_density(
            (spec.log_proposal_density)(&y),
            "proposal density p(y)",
            "mis_step",
        )?;
        if lp_y == f64::NEG_INFINITY {
            return Err(McqmcError::InvalidState {
                step: 0,
                reason: "generated proposal has zero proposal density".into(),
            });
        }
        let log_a = (lt_y + lp_x - lt_x - lp_y).min(0.0);
        u[d - 1] <= log_a.exp()
    };
    Ok(if accept { y } else { x.to_vec() })
}

impl MisSpec {
    /// View as a generic MhSpec, for cross-checking the reduced ratio.
    pub fn as_generic(self: &std::sync::Arc<Self>) -> MhSpec {
        let a = self.clone();
        let b = self.clone();
        let c = self.clone();
        MhSpec {
            state_dim: self.state_dim,
            innovation_dim: self.innovation_dim,
            log_target: Box::new(move |x| (a.log_target)(x)),
            proposal: Box::new(move |_x, u| (b.proposal_map)(u)),
            log_proposal_density: Box::new(move |y, _x| (c.log_proposal_density)(y)),
        }
    }
}

impl UpdateFunction for MisSpec {
    fn state_dim(&self) -> usize {
        self.state_dim
    }
    fn innovation_dim(&self) -> usize {
        self.innovation_dim
    }
    fn step(&self, x: &[f64], u: &[f64]) -> Result<Vec<f64>> {
        mis_step(self, x, u)
    }
    fn kind(&self) -> &'static str {
        "mis"
    }
}

/// Random-walk Metropolis with a symmetric increment: y = x + ψ(u_{1:(d−1)})
/// and A = min(1, π(y)/π(x)).
pub struct RwmSpec {
    pub state_dim: usize,
    pub innovation_dim: usize,
    pub log_target: StateFn,
    /// Increment map ψ(u_{1:(d−1)}); must be symmetric about zero for the
    /// reduced acceptance ratio to be correct.
    pub step_map: MapFn,
}

pub fn rwm_step(spec: &RwmSpec, x: &[f64], u: &[f64]) -> Result<Vec<f64>> {
    let d = spec.innovation_dim;
    if u.len() != d {
        return Err(McqmcError::DimensionMismatch { expected: d, got: u.len() });
    }
    let lt_x = check_finite_log_density((spec.log_target)(x), "log target at x", "rwm_step")?;
    if lt_x == f64::NEG_INFINITY {
        return Err(McqmcError::InvalidState {
            step: 0,
            reason: "target density is zero at the current state".into(),
        });
    }
    let dx = (spec.step_map)(&u[..d - 1])?;
    let y: Vec<f64> = x.iter().zip(&dx).map(|(a, b)| a + b).collect();
    let lt_y = check_finite_log_density((spec.log_target)(&y), "log target at proposal", "rwm_step")?;
    let accept = lt_y > f64::NEG_INFINITY && u[d - 1] <= (lt_y - lt_x).min(0.0).exp();
    Ok(if accept { y } else { x.to_vec() })
}

impl RwmSpec {
    /// View as a generic MhSpec with the increment density folded in; any
    /// symmetric placeholder increment density works since it cancels, but we
    /// use an explicit one so the generic ratio is exercised honestly.
    pub fn as_generic(
        self: &std::sync::Arc<Self>,
        log_increment_density: impl Fn(&[f64]) -> f64 + Send + Sync + 'static,
    ) -> MhSpec {
        let a = self.clone();
        let b = self.clone();
        MhSpec {
            state_dim: self.state_dim,
            innovation_dim: self.innovation_dim,
            log_target: Box::new(move |x| (a.log_target)(x)),
            proposal: Box::new(move |x, u| {
                let dx = (b.step_map)(u)?;
                Ok(x.iter().zip(&dx).map(|(p, q)| p + q).collect())
            }),
            log_proposal_density: Box::new(move |y, x| {
                let diff: Vec<f64> = y.iter().zip(x).map(|(a, b)| a - b).collect();
                log_increment_density(&diff)
            }),
        }
    }
}

impl UpdateFunction for RwmSpec {
    fn state_dim(&self) -> usize {
        self.state_dim
    }
    fn innovation_dim(&self) -> usize {
        self.innovation_dim
    }
    fn step(&self, x: &[f64], u: &[f64]) -> Result<Vec<f64>> {
        rwm_step(self, x, u)
    }
    fn kind(&self) -> &'static str {
        "rwm"
    }
}
