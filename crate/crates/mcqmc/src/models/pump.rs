//! The ten-pump failure-count hierarchy: counts s_i over exposure times t_i
//! with conjugate gamma conditionals,
//!
//!   λ_i | β ~ Gamma(s_i + α, t_i + β)        (rate parametrization),
//!   β | λ  ~ Gamma(γ + 10α, δ + Σ λ_i),
//!
//! sampled by a systematic scan of gamma-quantile inversions — one uniform
//! per coordinate, d = 11. Data and hyperparameters are the standard
//! benchmark values from the nuclear-pump reliability literature (see
//! data/pump_failures.csv); they are validated against this module's own
//! long-run oracle, not against any external number.

use std::path::Path;

use crate::error::{McqmcError, Result};
use crate::generators::gamma_quantile;
use crate::samplers::UpdateFunction;

pub const PUMPS: usize = 10;

#[derive(Debug, Clone, PartialEq)]
pub struct PumpModel {
    /// Failure counts per pump.
    pub s: [f64; PUMPS],
    /// Exposure times (thousands of hours).
    pub t: [f64; PUMPS],
    /// Shape offset of the per-pump rates.
    pub alpha: f64,
    /// Shape of the hyperparameter prior.
    pub gamma: f64,
    /// Rate of the hyperparameter prior.
    pub delta: f64,
}

impl PumpModel {
    /// The standard benchmark data and hyperparameters.
    pub fn standard() -> Self {
        PumpModel {
            s: [5.0, 1.0, 5.0, 14.0, 3.0, 19.0, 1.0, 1.0, 4.0, 22.0],
            t: [94.32, 15.72, 62.88, 125.76, 5.24, 31.44, 1.048, 1.048, 2.096, 10.48],
            alpha: 1.802,
            gamma: 0.01,
            delta: 1.0,
        }
    }

    pub fn new(s: [f64; PUMPS], t: [f64; PUMPS], alpha: f64, gamma: f64, delta: f64) -> Result<Self> {
        if s.iter().any(|&v| v < 0.0) || t.iter().any(|&v| v <= 0.0) {
            return Err(McqmcError::Config("pump counts must be >= 0 and times > 0".into()));
        }
        if alpha <= 0.0 || gamma <= 0.0 || delta <= 0.0 {
            return Err(McqmcError::Config("pump hyperparameters must be positive".into()));
        }
        Ok(PumpModel { s, t, alpha, gamma, delta })
    }

    /// Load from a CSV with rows `s,t` and hyperparameters in `# key=value`
    /// comment lines.
    pub fn from_csv(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let (mut alpha, mut gamma, mut delta) = (None, None, None);
        let mut s = Vec::new();
        let mut t = Vec::new();
        let mut header_seen = false;
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(comment) = line.strip_prefix('#') {
                for part in comment.split(',') {
                    if let Some((k, v)) = part.split_once('=') {
                        let v: f64 = v.trim().parse().map_err(|e| {
                            McqmcError::Config(format!("bad hyperparameter {part:?}: {e}"))
                        })?;
                        // key is the last word before '=' (comment lines may
                        // carry prose ahead of it)
                        let key = k
                            .trim()
                            .rsplit(|c: char| c.is_whitespace() || c == ':')
                            .next()
                            .unwrap_or("");
                        match key {
                            "alpha" => alpha = Some(v),
                            "gamma" => gamma = Some(v),
                            "delta" => delta = Some(v),
                            _ => {}
                        }
                    }
                }
                continue;
            }
            if !header_seen {
                header_seen = true;
                continue;
            }
            let (sv, tv) = line
                .split_once(',')
                .ok_or_else(|| McqmcError::Config(format!("bad pump CSV row: {line}")))?;
            s.push(sv.trim().parse::<f64>().map_err(|e| McqmcError::Config(e.to_string()))?);
            t.push(tv.trim().parse::<f64>().map_err(|e| McqmcError::Config(e.to_string()))?);
        }
        let s: [f64; PUMPS] = s
            .try_into()
            .map_err(|_| McqmcError::Config(format!("pump CSV must have exactly {PUMPS} rows")))?;
        let t: [f64; PUMPS] = t.try_into().unwrap();
        match (alpha, gamma, delta) {
            (Some(a), Some(g), Some(d)) => Self::new(s, t, a, g, d),
            _ => Err(McqmcError::Config(
                "pump CSV must declare alpha, gamma, delta in comment lines".into(),
            )),
        }
    }

    pub fn state_dim(&self) -> usize {
        PUMPS + 1
    }
}

/// One systematic Gibbs scan on states [λ_1..λ_10, β]: each rate from its
/// gamma conditional given the current β, then β from its conditional given
/// the new rates. Exactly 11 uniforms.
pub fn pump_gibbs_update(model: &PumpModel, state: &[f64], u: &[f64]) -> Result<Vec<f64>> {
    let d = model.state_dim();
    if state.len() != d {
        return Err(McqmcError::DimensionMismatch { expected: d, got: state.len() });
    }
    if u.len() != d {
        return Err(McqmcError::DimensionMismatch { expected: d, got: u.len() });
    }
    if state.iter().any(|&v| v <= 0.0) {
        return Err(McqmcError::InvalidState {
            step: 0,
            reason: "pump state must be strictly positive".into(),
        });
    }
    let beta = state[PUMPS];
    let mut out = vec![0.0; d];
    let mut rate_sum = 0.0;
    for i in 0..PUMPS {
        let lam = gamma_quantile(model.s[i] + model.alpha, u[i])? / (model.t[i] + beta);
        out[i] = lam;
        rate_sum += lam;
    }
    out[PUMPS] = gamma_quantile(model.gamma + PUMPS as f64 * model.alpha, u[PUMPS])?
        / (model.delta + rate_sum);
    Ok(out)
}

pub struct PumpUpdate {
    pub model: PumpModel,
}

impl UpdateFunction for PumpUpdate {
    fn state_dim(&self) -> usize {
        self.model.state_dim()
    }
    fn innovation_dim(&self) -> usize {
        self.model.state_dim()
    }
    fn step(&self, x: &[f64], u: &[f64]) -> Result<Vec<f64>> {
        pump_gibbs_update(&self.model, x, u)
    }
    fn kind(&self) -> &'static str {
        "pump_gibbs"
    }
}

/// A reasonable deterministic starting state: crude rate estimates s_i/t_i
/// (floored away from zero) and β = 1.
pub fn pump_start(model: &PumpModel) -> Vec<f64> {
    let mut x: Vec<f64> = model
        .s
        .iter()
        .zip(&model.t)
        .map(|(&s, &t)| (s / t).max(1e-3))
        .collect();
    x.push(1.0);
    x
}
