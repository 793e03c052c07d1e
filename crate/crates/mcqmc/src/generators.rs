//! Nonuniform generation by inversion: normal and gamma quantile functions,
//! truncated-normal inversion, and the inverse Rosenblatt transformation.
//!
//! Everything here is a deterministic map from (0,1)^k — that is what lets a
//! CUD innovation stream drive the samplers without any hidden uniform
//! consumption (acceptance–rejection is deliberately out of scope).

use statrs::function::erf::erfc;
use statrs::function::gamma::{gamma_lr, gamma_ur, ln_gamma};

use crate::error::{McqmcError, Result};

const SQRT_2: f64 = std::f64::consts::SQRT_2;
const INV_SQRT_2PI: f64 = 0.398_942_280_401_432_7;

/// Standard normal CDF via the complementary error function, accurate in
/// both tails.
pub fn normal_cdf(x: f64) -> f64 {
    0.5 * erfc(-x / SQRT_2)
}

/// Standard normal density.
pub fn normal_pdf(x: f64) -> f64 {
    INV_SQRT_2PI * (-0.5 * x * x).exp()
}

/// Standard normal quantile. Rational initial approximation polished by two
/// Halley steps against `normal_cdf`, giving |Φ(result) − u| ≤ 1e−12 across
/// u ∈ [1e−8, 1 − 1e−8].
pub fn normal_quantile(u: f64) -> Result<f64> {
    if !(u > 0.0 && u < 1.0) {
        return Err(McqmcError::DomainError { value: u });
    }
    let mut x = normal_quantile_approx(u);
    // Halley refinement: with f = Φ(x) − u, f'' = −x·f', the update is
    // x − r/(1 + x·r/2) where r = f/f'.
    for _ in 0..2 {
        let f = normal_cdf(x) - u;
        let r = f / normal_pdf(x);
        x -= r / (1.0 + 0.5 * x * r);
    }
    Ok(x)
}

/// Quantile extended to the closed interval: u outside (0,1) clamps to
/// ±`large`; the flag reports whether clamping happened.
pub fn normal_quantile_clamped(u: f64, large: f64) -> (f64, bool) {
    if u <= 0.0 {
        (-large, true)
    } else if u >= 1.0 {
        (large, true)
    } else {
        match normal_quantile(u) {
            Ok(x) => (x, false),
            Err(_) => (if u < 0.5 { -large } else { large }, true),
        }
    }
}

/// Default magnitude for clamped extended-real quantile values.
pub const QUANTILE_CLAMP: f64 = 1e12;

fn normal_quantile_approx(u: f64) -> f64 {
    // Rational minimax approximations on the central region and the tails
    // (relative error ~1e-9, well inside the Halley basin).
    const A: [f64; 6] = [
        -3.969683028665376e+01,
        2.209460984245205e+02,
        -2.759285104469687e+02,
        1.383577518672690e+02,
        -3.066479806614716e+01,
        2.506628277459239e+00,
    ];
    const B: [f64; 5] = [
        -5.447609879822406e+01,
        1.615858368580409e+02,
        -1.556989798598866e+02,
        6.680131188771972e+01,
        -1.328068155288572e+01,
    ];
    const C: [f64; 6] = [
        -7.784894002430293e-03,
        -3.223964580411365e-01,
        -2.400758277161838e+00,
        -2.549732539343734e+00,
        4.374664141464968e+00,
        2.938163982698783e+00,
    ];
    const D: [f64; 4] = [
        7.784695709041462e-03,
        3.224671290700398e-01,
        2.445134137142996e+00,
        3.754408661907416e+00,
    ];
    const P_LOW: f64 = 0.02425;
    if u < P_LOW {
        let q = (-2.0 * u.ln()).sqrt();
        (((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    } else if u <= 1.0 - P_LOW {
        let q = u - 0.5;
        let r = q * q;
        (((((A[0] * r + A[1]) * r + A[2]) * r + A[3]) * r + A[4]) * r + A[5]) * q
            / (((((B[0] * r + B[1]) * r + B[2]) * r + B[3]) * r + B[4]) * r + 1.0)
    } else {
        let q = (-2.0 * (1.0 - u).ln()).sqrt();
        -(((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TruncationSide {
    /// Truncate N(mean, 1) to (0, ∞).
    Positive,
    /// Truncate N(mean, 1) to (−∞, 0].
    Negative,
}

/// Inversion for N(mean, 1) restricted to a half-line:
///
/// - POSITIVE: mean + Φ^{−1}(Φ(−mean) + u·Φ(mean)), always > 0;
/// - NEGATIVE: mean + Φ^{−1}(u·Φ(−mean)), always ≤ 0.
///
/// The POSITIVE branch is evaluated as mean − Φ^{−1}((1−u)·Φ(mean)), which is
/// the same number but keeps the quantile argument away from 1 so the deep
/// upper tail stays accurate. u within 1e−15 of either endpoint is rejected
/// rather than letting the quantile overflow silently.
pub fn truncated_normal_inverse(mean: f64, side: TruncationSide, u: f64) -> Result<f64> {
    if !(u > 0.0 && u < 1.0) {
        return Err(McqmcError::DomainError { value: u });
    }
    if u < 1e-15 || u > 1.0 - 1e-15 {
        return Err(McqmcError::DomainError { value: u });
    }
    match side {
        TruncationSide::Positive => {
            let z = mean - normal_quantile((1.0 - u) * normal_cdf(mean))?;
            Ok(if z > 0.0 { z } else { f64::MIN_POSITIVE })
        }
        TruncationSide::Negative => {
            let z = mean + normal_quantile(u * normal_cdf(-mean))?;
            Ok(if z <= 0.0 { z } else { 0.0 })
        }
    }
}

/// Gamma(shape, 1) quantile: Wilson–Hilferty initial value, then Newton on
/// the regularized lower incomplete gamma with a bisection safeguard.
/// Rate/scale changes are a caller-side rescale.
pub fn gamma_quantile(shape: f64, u: f64) -> Result<f64> {
    if shape <= 0.0 {
        return Err(McqmcError::DomainError { value: shape });
    }
    if !(u > 0.0 && u < 1.0) {
        return Err(McqmcError::DomainError { value: u });
    }
    let z = normal_quantile(u)?;
    let c = 1.0 - 1.0 / (9.0 * shape) + z / (3.0 * shape.sqrt());
    let mut x = if c > 0.0 { shape * c * c * c } else { 0.0 };
    if x <= 0.0 || shape < 0.5 {
        // Small-shape / deep-left start from the leading term of the series
        // P(a, x) ≈ x^a / Γ(a+1).
        x = ((u.ln() + ln_gamma(shape + 1.0)) / shape).exp();
    }
    let log_norm = ln_gamma(shape);
    // Residual P(a,x) − u, evaluated through the upper tail Q(a,x) when
    // u > 1/2 so the subtraction stays well conditioned near u → 1
    // (for u ≥ 1/2 the complement 1 − u is exact in floating point).
    let upper = u > 0.5;
    let uc = 1.0 - u;
    let residual = |x: f64| {
        if upper {
            uc - gamma_ur(shape, x)
        } else {
            gamma_lr(shape, x) - u
        }
    };
    let (mut lo, mut hi) = (0.0f64, f64::INFINITY);
    for _ in 0..64 {
        let err = residual(x);
        if err > 0.0 {
            hi = hi.min(x);
        } else {
            lo = lo.max(x);
        }
        let logpdf = (shape - 1.0) * x.ln() - x - log_norm;
        let mut next = x - err / logpdf.exp();
        if !(next > lo && next < hi) || !next.is_finite() {
            next = if hi.is_finite() { 0.5 * (lo + hi) } else { lo * 2.0 + 1.0 };
        }
        if (next - x).abs() <= 1e-13 * x.abs() {
            return Ok(next);
        }
        x = next;
    }
    if residual(x).abs() <= 1e-9 {
        Ok(x)
    } else {
        Err(McqmcError::QuantileDivergence { shape, u })
    }
}

/// A labelled scalar quantile function, for registering inversion maps with
/// samplers and reports.
pub struct QuantileFn {
    pub label: String,
    pub eval: Box<dyn Fn(f64) -> Result<f64> + Send + Sync>,
}

impl QuantileFn {
    pub fn standard_normal() -> Self {
        QuantileFn { label: "normal".into(), eval: Box::new(normal_quantile) }
    }

    pub fn gamma(shape: f64, rate: f64) -> Self {
        QuantileFn {
            label: format!("gamma(shape={shape}, rate={rate})"),
            eval: Box::new(move |u| Ok(gamma_quantile(shape, u)? / rate)),
        }
    }
}

impl std::fmt::Debug for QuantileFn {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("QuantileFn").field("label", &self.label).finish()
    }
}

/// Conditional quantile F_j^{−1}(u; x_{1:(j−1)}): the slice holds the
/// already-generated coordinates.
pub type ConditionalQuantile = Box<dyn Fn(&[f64], f64) -> Result<f64> + Send + Sync>;

/// The inverse Rosenblatt transformation: x_1 = F_1^{−1}(u_1), then
/// x_j = F_j^{−1}(u_j; x_{1:(j−1)}) sequentially. Pushes U(0,1)^s forward to
/// the joint law encoded by the conditionals; each conditional must be
/// continuous and monotone in u (a caller obligation — it is not mechanically
/// checkable here).
pub struct RosenblattSpec {
    conditionals: Vec<ConditionalQuantile>,
}

impl RosenblattSpec {
    pub fn new(conditionals: Vec<ConditionalQuantile>) -> Result<Self> {
        if conditionals.is_empty() {
            return Err(McqmcError::Config("RosenblattSpec needs at least one conditional".into()));
        }
        Ok(RosenblattSpec { conditionals })
    }

    pub fn dim(&self) -> usize {
        self.conditionals.len()
    }

    /// Standard bivariate normal with correlation ρ:
    /// x_1 = Φ^{−1}(u_1), x_2 = ρ·x_1 + √(1−ρ²)·Φ^{−1}(u_2).
    pub fn bivariate_normal(rho: f64) -> Result<Self> {
        if !(-1.0..=1.0).contains(&rho) || rho.abs() >= 1.0 {
            return Err(McqmcError::DomainError { value: rho });
        }
        let scale = (1.0 - rho * rho).sqrt();
        Self::new(vec![
            Box::new(|_: &[f64], u| normal_quantile(u)),
            Box::new(move |x: &[f64], u| Ok(rho * x[0] + scale * normal_quantile(u)?)),
        ])
    }
}

impl std::fmt::Debug for RosenblattSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RosenblattSpec").field("dim", &self.dim()).finish()
    }
}

pub fn inverse_rosenblatt(spec: &RosenblattSpec, u: &[f64]) -> Result<Vec<f64>> {
    if u.len() != spec.dim() {
        return Err(McqmcError::DimensionMismatch { expected: spec.dim(), got: u.len() });
    }
    let mut x = Vec::with_capacity(u.len());
    for (cond, &uj) in spec.conditionals.iter().zip(u) {
        let xj = cond(&x, uj)?;
        x.push(xj);
    }
    Ok(x)
}
