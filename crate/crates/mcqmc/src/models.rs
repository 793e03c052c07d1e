//! Worked posteriors for exercising the samplers: toy Gaussian targets, the
//! probit data-augmentation Gibbs model with its contraction apparatus, and
//! the ten-pump failure-rate hierarchy.

pub mod gaussian;
pub mod probit;
pub mod pump;

pub use gaussian::bivariate_normal_gibbs;
pub use probit::{
    probit_beta_update, probit_lambda, probit_lambda_mills, probit_metrics, probit_u_recovery,
    probit_z_update, ProbitMetrics, ProbitModel, ProbitUpdate,
};
pub use pump::{pump_gibbs_update, pump_start, PumpModel, PumpUpdate, PUMPS};
