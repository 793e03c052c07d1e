//! Toy Gaussian targets: the standard bivariate normal with correlation ρ as
//! a two-block Gibbs sampler, each full conditional N(ρ·x_other, 1−ρ²) drawn
//! by inversion.

use crate::error::{McqmcError, Result};
use crate::generators::normal_quantile;
use crate::samplers::{GibbsBlock, GibbsSpec};

pub fn bivariate_normal_gibbs(rho: f64) -> Result<GibbsSpec> {
    if !(rho.abs() < 1.0) {
        return Err(McqmcError::DomainError { value: rho });
    }
    let scale = (1.0 - rho * rho).sqrt();
    let cond = move |other: f64, u: f64| -> Result<f64> {
        Ok(rho * other + scale * normal_quantile(u)?)
    };
    GibbsSpec::new(vec![
        GibbsBlock { dim: 1, generator: Box::new(move |x, u| Ok(vec![cond(x[1], u[0])?])) },
        GibbsBlock { dim: 1, generator: Box::new(move |x, u| Ok(vec![cond(x[0], u[0])?])) },
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samplers::{gibbs_step, run_chain, ChainOptions, TestFunction, UpdateFunction};
    use crate::streams::{InnovationStream, StreamSpec};

    #[test]
    fn conditional_mean_hand_value() {
        let spec = bivariate_normal_gibbs(0.5).unwrap();
        let x = gibbs_step(&spec, &[0.0, 2.0], &[0.5, 0.5]).unwrap();
        assert!((x[0] - 1.0).abs() < 1e-15);
        assert!((x[1] - 0.5).abs() < 1e-15);
        assert_eq!(spec.innovation_dim(), 2);
        assert!(bivariate_normal_gibbs(1.0).is_err());
    }

    #[test]
    fn long_run_moments_match_the_target() {
        let spec = bivariate_normal_gibbs(0.7).unwrap();
        let mut stream = InnovationStream::from_spec(&StreamSpec::iid(4)).unwrap();
        let fns = vec![
            TestFunction::coordinate(0),
            TestFunction::new("x0^2", |x: &[f64]| x[0] * x[0]),
            TestFunction::new("x0*x1", |x: &[f64]| x[0] * x[1]),
        ];
        let run = run_chain(
            &spec,
            &[0.0, 0.0],
            &mut stream,
            50_000,
            &fns,
            &ChainOptions { discard: 100, thin: None },
        )
        .unwrap();
        assert!(run.estimates[0].value.unwrap().abs() < 0.05);
        assert!((run.estimates[1].value.unwrap() - 1.0).abs() < 0.1);
        assert!((run.estimates[2].value.unwrap() - 0.7).abs() < 0.1);
    }
}
