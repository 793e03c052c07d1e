//! Systematic-scan Gibbs: blocks are updated in a fixed order j = 1..s, each
//! block drawn from its full conditional by inversion, seeing components
//! 1..j−1 already updated and j+1..s still old.

use crate::error::{McqmcError, Result};
use crate::samplers::UpdateFunction;

type BlockGenerator = Box<dyn Fn(&[f64], &[f64]) -> Result<Vec<f64>> + Send + Sync>;

/// One Gibbs block: `dim` state components generated from `dim` uniforms by
/// the full-conditional inversion map, given the rest of the state.
pub struct GibbsBlock {
    pub dim: usize,
    /// (full current state, u-block) → new values for this block. The state
    /// passed in already contains the updated earlier blocks.
    pub generator: BlockGenerator,
}

pub struct GibbsSpec {
    blocks: Vec<GibbsBlock>,
    state_dim: usize,
    innovation_dim: usize,
}

impl GibbsSpec {
    pub fn new(blocks: Vec<GibbsBlock>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(McqmcError::Config("GibbsSpec needs at least one block".into()));
        }
        let d: usize = blocks.iter().map(|b| b.dim).sum();
        Ok(GibbsSpec { state_dim: d, innovation_dim: d, blocks })
    }

    pub fn blocks(&self) -> &[GibbsBlock] {
        &self.blocks
    }
}

/// One full scan. Consumes exactly d = Σ k_j uniforms.
pub fn gibbs_step(spec: &GibbsSpec, x: &[f64], u: &[f64]) -> Result<Vec<f64>> {
    if x.len() != spec.state_dim {
        return Err(McqmcError::DimensionMismatch { expected: spec.state_dim, got: x.len() });
    }
    if u.len() != spec.innovation_dim {
        return Err(McqmcError::DimensionMismatch { expected: spec.innovation_dim, got: u.len() });
    }
    let mut state = x.to_vec();
    let mut offset = 0;
    for block in &spec.blocks {
        let new = (block.generator)(&state, &u[offset..offset + block.dim])?;
        if new.len() != block.dim {
            return Err(McqmcError::DimensionMismatch { expected: block.dim, got: new.len() });
        }
        state[offset..offset + block.dim].copy_from_slice(&new);
        offset += block.dim;
    }
    Ok(state)
}

impl UpdateFunction for GibbsSpec {
    fn state_dim(&self) -> usize {
        self.state_dim
    }
    fn innovation_dim(&self) -> usize {
        self.innovation_dim
    }
    fn step(&self, x: &[f64], u: &[f64]) -> Result<Vec<f64>> {
        gibbs_step(self, x, u)
    }
    fn kind(&self) -> &'static str {
        "gibbs"
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::normal_quantile;

    /// Standard bivariate normal with correlation ρ, one block per coordinate:
    /// x_j | x_{−j} ~ N(ρ·x_{−j}, 1 − ρ²).
    fn bivariate_normal(rho: f64) -> GibbsSpec {
        let scale = (1.0 - rho * rho).sqrt();
        let cond = move |other: f64, u: f64| -> Result<f64> {
            Ok(rho * other + scale * normal_quantile(u)?)
        };
        GibbsSpec::new(vec![
            GibbsBlock {
                dim: 1,
                generator: Box::new(move |x, u| Ok(vec![cond(x[1], u[0])?])),
            },
            GibbsBlock {
                dim: 1,
                generator: Box::new(move |x, u| Ok(vec![cond(x[0], u[0])?])),
            },
        ])
        .unwrap()
    }

    #[test]
    fn single_block_is_direct_inversion() {
        let spec = GibbsSpec::new(vec![GibbsBlock {
            dim: 1,
            generator: Box::new(|_, u| Ok(vec![normal_quantile(u[0])?])),
        }])
        .unwrap();
        for u in [0.1, 0.5, 0.9] {
            let x = gibbs_step(&spec, &[123.0], &[u]).unwrap();
            assert_eq!(x[0], normal_quantile(u).unwrap());
        }
    }

    #[test]
    fn bivariate_medians_fix_the_origin() {
        let spec = bivariate_normal(0.5);
        let x = gibbs_step(&spec, &[0.0, 0.0], &[0.5, 0.5]).unwrap();
        assert_eq!(x, vec![0.0, 0.0]);
    }

    #[test]
    fn scan_order_uses_already_updated_components() {
        // from (0, 2) with median uniforms: x1' = 0.5·2 = 1.0, then x2'
        // conditions on the new x1': x2' = 0.5·1.0 = 0.5
        let spec = bivariate_normal(0.5);
        let x = gibbs_step(&spec, &[0.0, 2.0], &[0.5, 0.5]).unwrap();
        assert!((x[0] - 1.0).abs() < 1e-15);
        assert!((x[1] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn dimension_checks() {
        let spec = bivariate_normal(0.3);
        assert!(matches!(
            gibbs_step(&spec, &[0.0], &[0.5, 0.5]),
            Err(McqmcError::DimensionMismatch { .. })
        ));
        assert!(matches!(
            gibbs_step(&spec, &[0.0, 0.0], &[0.5]),
            Err(McqmcError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn generator_domain_error_propagates() {
        let spec = GibbsSpec::new(vec![GibbsBlock {
            dim: 1,
            generator: Box::new(|_, _| Err(McqmcError::DomainError { value: -1.0 })),
        }])
        .unwrap();
        assert!(gibbs_step(&spec, &[0.0], &[0.5]).is_err());
    }
}
