//! Inversive slice sampler on a bounded box: the state is (y, x) with
//! 0 ≤ y ≤ π(x), uniform over the region under the density graph. One step
//! consumes s+1 uniforms: y′ = u₁·π(x), then each coordinate of x is redrawn
//! uniformly on its section of the slice {x : π(x) ≥ y′} by inversion,
//! systematic-scan style (later coordinates see earlier ones updated).
//!
//! The geometry of the sections depends on the target, so the caller supplies
//! the per-coordinate section inversion; helpers cover the common cases.

use crate::error::{McqmcError, Result};
use crate::samplers::UpdateFunction;

type DensityFn = Box<dyn Fn(&[f64]) -> f64 + Send + Sync>;
type SectionFn = Box<dyn Fn(f64, usize, &[f64], f64) -> Result<f64> + Send + Sync>;

pub struct SliceSpec {
    /// Target density π, bounded on the box.
    pub density: DensityFn,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    /// (level y′, coordinate j, current state x, uniform u) → new x_j drawn
    /// uniformly on {t : π(x with x_j = t) ≥ y′} ∩ [lower_j, upper_j] by
    /// inversion. `x` already has coordinates < j updated.
    pub section: SectionFn,
}

impl SliceSpec {
    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    /// Uniform target on the box: every slice section is the whole edge, so
    /// x′ = lower + u·(upper − lower) coordinatewise.
    pub fn uniform_box(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.len() != upper.len() || lower.iter().zip(&upper).any(|(a, b)| a >= b) {
            return Err(McqmcError::InvalidBound("slice box must have lower < upper".into()));
        }
        let (lo, up) = (lower.clone(), upper.clone());
        Ok(SliceSpec {
            density: Box::new(|_| 1.0),
            lower,
            upper,
            section: Box::new(move |_y, j, _x, u| Ok(lo[j] + u * (up[j] - lo[j]))),
        })
    }
}

/// One step. `state` is [y, x_1, ..., x_s]; `u` has length s+1.
pub fn slice_step(spec: &SliceSpec, state: &[f64], u: &[f64]) -> Result<Vec<f64>> {
    let s = spec.dim();
    if state.len() != s + 1 {
        return Err(McqmcError::DimensionMismatch { expected: s + 1, got: state.len() });
    }
    if u.len() != s + 1 {
        return Err(McqmcError::DimensionMismatch { expected: s + 1, got: u.len() });
    }
    let (y, x) = (state[0], &state[1..]);
    let pi_x = (spec.density)(x);
    if !(y >= 0.0 && y <= pi_x) || pi_x.is_nan() {
        return Err(McqmcError::InvalidState {
            step: 0,
            reason: format!("slice level {y} outside [0, pi(x) = {pi_x}]"),
        });
    }
    let y_new = u[0] * pi_x;
    let mut x_new = x.to_vec();
    for j in 0..s {
        x_new[j] = (spec.section)(y_new, j, &x_new, u[j + 1])?;
        if x_new[j] < spec.lower[j] || x_new[j] > spec.upper[j] {
            return Err(McqmcError::InvalidState {
                step: 0,
                reason: format!("section draw {} left the box in coordinate {j}", x_new[j]),
            });
        }
    }
    let mut out = Vec::with_capacity(s + 1);
    out.push(y_new);
    out.extend_from_slice(&x_new);
    Ok(out)
}

impl UpdateFunction for SliceSpec {
    fn state_dim(&self) -> usize {
        self.dim() + 1
    }
    fn innovation_dim(&self) -> usize {
        self.dim() + 1
    }
    fn step(&self, x: &[f64], u: &[f64]) -> Result<Vec<f64>> {
        slice_step(self, x, u)
    }
    fn kind(&self) -> &'static str {
        "slice"
    }
}

/// The 1-d linear density π(x) = 2x on [0,1]: slice sections are [y/2, 1].
pub fn linear_density_slice() -> SliceSpec {
    SliceSpec {
        density: Box::new(|x| 2.0 * x[0]),
        lower: vec![0.0],
        upper: vec![1.0],
        section: Box::new(|y, _j, _x, u| {
            let lo = y / 2.0;
            Ok(lo + u * (1.0 - lo))
        }),
    }
}
