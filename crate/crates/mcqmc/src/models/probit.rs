//! Probit regression by data augmentation: the state is (β, Z) with latent
//! Z_i ~ N(x_iᵀβ, 1) truncated to the half-line matching the binary response
//! y_i, and β | Z normal around the least-squares coefficient. Both updates
//! are pure inversions, so one Gibbs step consumes exactly n + p uniforms —
//! u_1..u_n for Z, u_{n+1}..u_{n+p} for β.
//!
//! The module also exposes the contraction apparatus for this sampler: the
//! per-observation derivative factors λ_i ∈ [0,1) (in both their direct and
//! Mill's-ratio forms), the driving-uniform recovery map, and the metrics
//! d₁(β, β′) = ‖X(β−β′)‖ and d₂ = Euclidean on Z under which every step is a
//! strict contraction when the β-parts differ.

use std::path::Path;

use nalgebra::{DMatrix, DVector};

use crate::error::{McqmcError, Result};
use crate::generators::{
    normal_cdf, normal_pdf, normal_quantile, truncated_normal_inverse, TruncationSide,
};
use crate::samplers::UpdateFunction;

pub struct ProbitModel {
    x: DMatrix<f64>,
    y: Vec<bool>,
    xtx: DMatrix<f64>,
    xtx_inv_xt: DMatrix<f64>,
    xtx_inv_sqrt: DMatrix<f64>,
}

impl ProbitModel {
    /// Build from a design matrix and binary responses. X must have full
    /// column rank; the cached factors are verified to reproduce XᵀX to
    /// 1e−10 before the model is accepted.
    pub fn new(x: DMatrix<f64>, y: Vec<bool>) -> Result<Self> {
        let (n, p) = x.shape();
        if n != y.len() {
            return Err(McqmcError::DimensionMismatch { expected: n, got: y.len() });
        }
        if n < p || p == 0 {
            return Err(McqmcError::Config(format!(
                "design must be n x p with n >= p >= 1, got {n} x {p}"
            )));
        }
        let xtx = x.transpose() * &x;
        let xtx_inv = xtx.clone().try_inverse().ok_or_else(|| {
            McqmcError::Config("X'X is singular; the design must have rank p".into())
        })?;
        // symmetric PSD square root of (X'X)^{-1} by eigendecomposition
        let eig = nalgebra::SymmetricEigen::new(xtx_inv.clone());
        if eig.eigenvalues.iter().any(|&v| v <= 0.0) {
            return Err(McqmcError::Config("X'X is not positive definite".into()));
        }
        let sqrt_vals = DMatrix::from_diagonal(&eig.eigenvalues.map(|v| v.sqrt()));
        let xtx_inv_sqrt = &eig.eigenvectors * sqrt_vals * eig.eigenvectors.transpose();
        // verification: the factors must reproduce X'X
        let scale = xtx.norm();
        let id_err = (&xtx_inv * &xtx - DMatrix::<f64>::identity(p, p)).norm();
        let sqrt_err = ((&xtx_inv_sqrt * &xtx_inv_sqrt) - &xtx_inv).norm() * scale;
        if id_err > 1e-10 * scale.max(1.0) || sqrt_err > 1e-10 * scale.max(1.0) {
            return Err(McqmcError::Config(format!(
                "cached factors fail to reproduce X'X (inverse error {id_err:.2e}, sqrt error {sqrt_err:.2e})"
            )));
        }
        let xtx_inv_xt = &xtx_inv * x.transpose();
        Ok(ProbitModel { x, y, xtx, xtx_inv_xt, xtx_inv_sqrt })
    }

    pub fn n(&self) -> usize {
        self.x.nrows()
    }

    pub fn p(&self) -> usize {
        self.x.ncols()
    }

    pub fn design(&self) -> &DMatrix<f64> {
        &self.x
    }

    pub fn responses(&self) -> &[bool] {
        &self.y
    }

    /// Linear predictors Xβ.
    pub fn lin_pred(&self, beta: &[f64]) -> Vec<f64> {
        (&self.x * DVector::from_column_slice(beta)).iter().copied().collect()
    }

    /// Deterministic synthetic dataset (intercept plus p−1 covariates) used
    /// for reproducible contraction tests; also shipped as a CSV.
    pub fn synthetic(n: usize, p: usize, seed: u64) -> Result<Self> {
        use rand::{Rng, SeedableRng};
        use rand_chacha::ChaCha8Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut x = DMatrix::zeros(n, p);
        let beta_true: Vec<f64> =
            (0..p).map(|j| if j == 0 { 0.5 } else { 1.0 - 1.5 * ((j % 2) as f64) }).collect();
        let mut y = Vec::with_capacity(n);
        for i in 0..n {
            x[(i, 0)] = 1.0;
            for j in 1..p {
                x[(i, j)] = rng.random_range(-1.5..1.5);
            }
            let lin: f64 = (0..p).map(|j| x[(i, j)] * beta_true[j]).sum();
            let eps = normal_quantile(rng.random_range(1e-12..1.0))?;
            y.push(lin + eps > 0.0);
        }
        Self::new(x, y)
    }

    /// Load from a CSV with columns x1,...,xp,y (header row required; `#`
    /// lines are comments).
    pub fn from_csv(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let mut rows: Vec<Vec<f64>> = Vec::new();
        let mut y = Vec::new();
        let mut header_seen = false;
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if !header_seen {
                header_seen = true;
                continue;
            }
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() < 2 {
                return Err(McqmcError::Config(format!("bad probit CSV row: {line}")));
            }
            let mut row = Vec::with_capacity(fields.len() - 1);
            for f in &fields[..fields.len() - 1] {
                row.push(f.trim().parse::<f64>().map_err(|e| {
                    McqmcError::Config(format!("bad number {f:?} in probit CSV: {e}"))
                })?);
            }
            let yv = fields[fields.len() - 1].trim();
            y.push(match yv {
                "0" => false,
                "1" => true,
                _ => return Err(McqmcError::Config(format!("bad response {yv:?}, want 0/1"))),
            });
            rows.push(row);
        }
        if rows.is_empty() {
            return Err(McqmcError::Config("empty probit CSV".into()));
        }
        let p = rows[0].len();
        let n = rows.len();
        let x = DMatrix::from_fn(n, p, |i, j| rows[i][j]);
        Self::new(x, y)
    }

    /// Serialize as the CSV format accepted by [`from_csv`](Self::from_csv).
    pub fn to_csv(&self) -> String {
        let (n, p) = self.x.shape();
        let mut out = String::new();
        out.push_str("# synthetic probit design: intercept + uniform(-1.5, 1.5) covariates,\n");
        out.push_str("# responses from the probit link with a fixed coefficient vector\n");
        let header: Vec<String> = (1..=p).map(|j| format!("x{j}")).collect();
        out.push_str(&header.join(","));
        out.push_str(",y\n");
        for i in 0..n {
            for j in 0..p {
                out.push_str(&format!("{:.17e},", self.x[(i, j)]));
            }
            out.push_str(if self.y[i] { "1\n" } else { "0\n" });
        }
        out
    }
}

impl std::fmt::Debug for ProbitModel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ProbitModel").field("n", &self.n()).field("p", &self.p()).finish()
    }
}

/// Latent-variable update: Z_i ~ N(x_iᵀβ, 1) truncated to (0,∞) when
/// y_i = 1 and to (−∞,0] when y_i = 0, each drawn by inversion from u_i.
pub fn probit_z_update(model: &ProbitModel, beta: &[f64], u: &[f64]) -> Result<Vec<f64>> {
    let n = model.n();
    if u.len() != n {
        return Err(McqmcError::DimensionMismatch { expected: n, got: u.len() });
    }
    let lin = model.lin_pred(beta);
    lin.iter()
        .zip(&model.y)
        .zip(u)
        .map(|((&m, &yi), &ui)| {
            let side = if yi { TruncationSide::Positive } else { TruncationSide::Negative };
            truncated_normal_inverse(m, side, ui)
        })
        .collect()
}

/// Coefficient update: β = (XᵀX)^{−1}XᵀZ + (XᵀX)^{−1/2}·Φ^{−1}(u)
/// componentwise on the p-vector u.
pub fn probit_beta_update(model: &ProbitModel, z: &[f64], u: &[f64]) -> Result<Vec<f64>> {
    let p = model.p();
    if u.len() != p {
        return Err(McqmcError::DimensionMismatch { expected: p, got: u.len() });
    }
    if z.len() != model.n() {
        return Err(McqmcError::DimensionMismatch { expected: model.n(), got: z.len() });
    }
    let mean = &model.xtx_inv_xt * DVector::from_column_slice(z);
    let mut noise = DVector::zeros(p);
    for (slot, &ui) in noise.iter_mut().zip(u) {
        *slot = normal_quantile(ui)?;
    }
    Ok((mean + &model.xtx_inv_sqrt * noise).iter().copied().collect())
}

/// The derivative factors λ_i = ∂Z_i/∂(x_iᵀβ) of the Z-update, in the direct
/// density-ratio form. Always in [0, 1).
pub fn probit_lambda(model: &ProbitModel, beta: &[f64], z: &[f64], u: &[f64]) -> Vec<f64> {
    let lin = model.lin_pred(beta);
    lin.iter()
        .zip(&model.y)
        .zip(z.iter().zip(u))
        .map(|((&m, &yi), (&zi, &ui))| {
            if yi {
                1.0 - (1.0 - ui) * normal_pdf(m) / normal_pdf(zi - m)
            } else {
                1.0 - ui * normal_pdf(-m) / normal_pdf(zi - m)
            }
        })
        .collect()
}

/// The same factors through the Mill's-ratio identity
/// 1 − λ_i = τ(x_iᵀβ)/τ(x_iᵀβ − Z_i) (y_i = 1) or
/// τ(−x_iᵀβ)/τ(−x_iᵀβ + Z_i) (y_i = 0), with τ(x) = φ(x)/Φ(x).
/// Used as an independent cross-check of [`probit_lambda`].
pub fn probit_lambda_mills(model: &ProbitModel, beta: &[f64], z: &[f64]) -> Vec<f64> {
    let tau = |x: f64| normal_pdf(x) / normal_cdf(x);
    let lin = model.lin_pred(beta);
    lin.iter()
        .zip(&model.y)
        .zip(z)
        .map(|((&m, &yi), &zi)| {
            if yi {
                1.0 - tau(m) / tau(m - zi)
            } else {
                1.0 - tau(-m) / tau(-m + zi)
            }
        })
        .collect()
}

/// Invert the Z-update: recover the uniforms that would generate `z` from
/// `beta`. Exact inverse of [`probit_z_update`] up to floating point.
pub fn probit_u_recovery(model: &ProbitModel, beta: &[f64], z: &[f64]) -> Vec<f64> {
    let lin = model.lin_pred(beta);
    lin.iter()
        .zip(&model.y)
        .zip(z)
        .map(|((&m, &yi), &zi)| {
            if yi {
                (normal_cdf(zi - m) - normal_cdf(-m)) / normal_cdf(m)
            } else {
                normal_cdf(zi - m) / normal_cdf(-m)
            }
        })
        .collect()
}

/// The metric pair of the contraction argument: d₁ on coefficients through
/// the design (d₁(β,β′)² = (β−β′)ᵀXᵀX(β−β′)), d₂ Euclidean on the latent
/// vector, combined as d = max(d₁, d₂).
pub struct ProbitMetrics {
    xtx: DMatrix<f64>,
}

impl ProbitMetrics {
    pub fn d1(&self, beta: &[f64], beta_prime: &[f64]) -> f64 {
        let diff = DVector::from_column_slice(beta) - DVector::from_column_slice(beta_prime);
        (diff.transpose() * &self.xtx * &diff)[(0, 0)].max(0.0).sqrt()
    }

    pub fn d2(&self, z: &[f64], z_prime: &[f64]) -> f64 {
        z.iter().zip(z_prime).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt()
    }

    /// Combined metric on full states laid out as [β, Z].
    pub fn combined(&self, p: usize, s: &[f64], s_prime: &[f64]) -> f64 {
        self.d1(&s[..p], &s_prime[..p]).max(self.d2(&s[p..], &s_prime[p..]))
    }
}

pub fn probit_metrics(model: &ProbitModel) -> ProbitMetrics {
    ProbitMetrics { xtx: model.xtx.clone() }
}

/// The full Gibbs update as an [`UpdateFunction`] on states [β, Z]:
/// Z′ from (β, u_1..u_n), then β′ from (Z′, u_{n+1}..u_{n+p}).
pub struct ProbitUpdate {
    pub model: std::sync::Arc<ProbitModel>,
}

impl UpdateFunction for ProbitUpdate {
    fn state_dim(&self) -> usize {
        self.model.p() + self.model.n()
    }
    fn innovation_dim(&self) -> usize {
        self.model.n() + self.model.p()
    }
    fn step(&self, x: &[f64], u: &[f64]) -> Result<Vec<f64>> {
        let (n, p) = (self.model.n(), self.model.p());
        if x.len() != n + p {
            return Err(McqmcError::DimensionMismatch { expected: n + p, got: x.len() });
        }
        if u.len() != n + p {
            return Err(McqmcError::DimensionMismatch { expected: n + p, got: u.len() });
        }
        let beta = &x[..p];
        let z_new = probit_z_update(&self.model, beta, &u[..n])?;
        let beta_new = probit_beta_update(&self.model, &z_new, &u[n..])?;
        let mut out = beta_new;
        out.extend_from_slice(&z_new);
        Ok(out)
    }
    fn kind(&self) -> &'static str {
        "probit_gibbs"
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::sync::Arc;

    fn small_model() -> ProbitModel {
        ProbitModel::synthetic(50, 3, 2024).unwrap()
    }

    fn random_valid_state(
        model: &ProbitModel,
        rng: &mut ChaCha8Rng,
    ) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
        let beta: Vec<f64> = (0..model.p()).map(|_| rng.random_range(-1.0..1.0)).collect();
        let u: Vec<f64> = (0..model.n()).map(|_| rng.random_range(0.001..0.999)).collect();
        let z = probit_z_update(model, &beta, &u).unwrap();
        (beta, z, u)
    }

    #[test]
    fn z_update_hand_values_at_zero_predictor() {
        // single observation, x_i'β = 0
        let x = DMatrix::from_row_slice(2, 1, &[1.0, 1.0]);
        let m = ProbitModel::new(x, vec![true, false]).unwrap();
        let z = probit_z_update(&m, &[0.0], &[0.5, 0.5]).unwrap();
        assert!((z[0] - 0.674490).abs() < 1e-5);
        assert!((z[1] + 0.674490).abs() < 1e-5);
    }

    #[test]
    fn z_update_sign_consistency() {
        let m = small_model();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let (_, z, _) = random_valid_state(&m, &mut rng);
            for (zi, &yi) in z.iter().zip(m.responses()) {
                if yi {
                    assert!(*zi > 0.0);
                } else {
                    assert!(*zi <= 0.0);
                }
            }
        }
    }

    #[test]
    fn u_recovery_inverts_the_z_update() {
        let m = small_model();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..100 {
            let (beta, z, u) = random_valid_state(&m, &mut rng);
            let back = probit_u_recovery(&m, &beta, &z);
            for (ui, bi) in u.iter().zip(&back) {
                assert!((ui - bi).abs() < 1e-10, "{ui} vs {bi}");
            }
        }
    }

    #[test]
    fn beta_update_ols_mean_with_median_noise() {
        // X = column of ones, Z = (1,3): β = mean(Z) = 2 when u = 0.5
        let x = DMatrix::from_row_slice(2, 1, &[1.0, 1.0]);
        let m = ProbitModel::new(x, vec![true, true]).unwrap();
        let b = probit_beta_update(&m, &[1.0, 3.0], &[0.5]).unwrap();
        assert!((b[0] - 2.0).abs() < 1e-12);
        // X = identity: β = Z at median noise
        let m = ProbitModel::new(DMatrix::identity(3, 3), vec![true, true, false]).unwrap();
        let b = probit_beta_update(&m, &[0.3, -0.2, 1.4], &[0.5, 0.5, 0.5]).unwrap();
        for (bi, zi) in b.iter().zip([0.3, -0.2, 1.4]) {
            assert!((bi - zi).abs() < 1e-12);
        }
    }

    #[test]
    fn beta_update_noise_covariance_is_xtx_inverse() {
        let m = small_model();
        let p = m.p();
        let z = vec![0.0; m.n()];
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let reps = 10_000;
        let mut sum = vec![0.0; p];
        let mut cov = vec![vec![0.0; p]; p];
        for _ in 0..reps {
            let u: Vec<f64> = (0..p).map(|_| rng.random_range(1e-9..1.0)).collect();
            let b = probit_beta_update(&m, &z, &u).unwrap();
            for i in 0..p {
                sum[i] += b[i];
                for j in 0..p {
                    cov[i][j] += b[i] * b[j];
                }
            }
        }
        let inv = (m.xtx.clone()).try_inverse().unwrap();
        for i in 0..p {
            for j in 0..p {
                let c = cov[i][j] / reps as f64
                    - (sum[i] / reps as f64) * (sum[j] / reps as f64);
                let want = inv[(i, j)];
                assert!(
                    (c - want).abs() <= 0.05 * want.abs().max(inv[(i, i)].max(inv[(j, j)]) * 0.5),
                    "cov[{i}][{j}] = {c} vs {want}"
                );
            }
        }
    }

    #[test]
    fn lambda_hand_value_and_mills_equivalence() {
        let x = DMatrix::from_row_slice(1, 1, &[1.0]);
        let m = ProbitModel::new(x, vec![true]).unwrap();
        let z = probit_z_update(&m, &[0.0], &[0.5]).unwrap();
        let lam = probit_lambda(&m, &[0.0], &z, &[0.5]);
        let want = 1.0 - 0.5 * normal_pdf(0.0) / normal_pdf(0.67449);
        assert!((lam[0] - want).abs() < 1e-4);
        assert!((lam[0] - 0.3723).abs() < 1e-3);
        // Mill's-ratio form agrees on random states of the bigger model
        let m = small_model();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..200 {
            let (beta, z, u) = random_valid_state(&m, &mut rng);
            let a = probit_lambda(&m, &beta, &z, &u);
            let b = probit_lambda_mills(&m, &beta, &z);
            for (ai, bi) in a.iter().zip(&b) {
                assert!((ai - bi).abs() < 1e-10, "{ai} vs {bi}");
            }
        }
    }

    #[test]
    fn lambda_stays_in_unit_interval() {
        let m = small_model();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mut max_seen = 0.0f64;
        for _ in 0..10_000 {
            let (beta, z, u) = random_valid_state(&m, &mut rng);
            for &l in &probit_lambda(&m, &beta, &z, &u) {
                assert!((0.0..1.0).contains(&l), "lambda = {l}");
                max_seen = max_seen.max(l);
            }
        }
        assert!(max_seen < 1.0);
    }

    #[test]
    fn lambda_approaches_one_near_u_one() {
        let x = DMatrix::from_row_slice(1, 1, &[1.0]);
        let m = ProbitModel::new(x, vec![true]).unwrap();
        // λ ≈ 1 − 0.8/Z_i for u near 1, so the approach to 1 is slow but
        // strictly monotone and never reaches 1
        let mut prev = 0.0;
        for &u in &[0.9, 0.99, 0.999, 0.999999, 1.0 - 1e-12] {
            let z = probit_z_update(&m, &[0.0], &[u]).unwrap();
            let l = probit_lambda(&m, &[0.0], &z, &[u])[0];
            assert!(l > prev && l < 1.0);
            prev = l;
        }
        assert!(prev > 0.85);
    }

    #[test]
    fn metric_hand_values() {
        // X'X = diag(4, 9) via X = diag(2, 3)
        let x = DMatrix::from_row_slice(2, 2, &[2.0, 0.0, 0.0, 3.0]);
        let m = ProbitModel::new(x, vec![true, false]).unwrap();
        let met = probit_metrics(&m);
        assert_eq!(met.d1(&[0.7, -0.2], &[0.7, -0.2]), 0.0);
        assert!((met.d1(&[1.0, 1.0], &[0.0, 0.0]) - 13.0f64.sqrt()).abs() < 1e-12);
        assert!((met.d2(&[1.0, 1.0], &[0.0, 0.0]) - 2.0f64.sqrt()).abs() < 1e-12);
        // orthonormal design: d1 is Euclidean
        let m = ProbitModel::new(DMatrix::identity(2, 2), vec![true, false]).unwrap();
        let met = probit_metrics(&m);
        assert!((met.d1(&[3.0, 4.0], &[0.0, 0.0]) - 5.0).abs() < 1e-12);
    }

    #[test]
    fn one_step_contraction_on_random_pairs() {
        let m = Arc::new(small_model());
        let met = probit_metrics(&m);
        let (n, p) = (m.n(), m.p());
        let update = ProbitUpdate { model: m.clone() };
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for _ in 0..1000 {
            let (beta_a, z_a, _) = random_valid_state(&m, &mut rng);
            let (beta_b, z_b, _) = random_valid_state(&m, &mut rng);
            let d1_old = met.d1(&beta_a, &beta_b);
            if d1_old == 0.0 {
                continue;
            }
            let u: Vec<f64> = (0..n + p).map(|_| rng.random_range(0.001..0.999)).collect();
            let mut sa = beta_a.clone();
            sa.extend_from_slice(&z_a);
            let mut sb = beta_b.clone();
            sb.extend_from_slice(&z_b);
            let na = update.step(&sa, &u).unwrap();
            let nb = update.step(&sb, &u).unwrap();
            let d1_ratio = met.d1(&na[..p], &nb[..p]) / d1_old;
            let d2_ratio = met.d2(&na[p..], &nb[p..]) / d1_old;
            assert!(d1_ratio <= 1.0 - 1e-12, "d1 ratio {d1_ratio}");
            assert!(d2_ratio <= 1.0 - 1e-12, "d2 ratio {d2_ratio}");
        }
    }

    #[test]
    fn gibbs_step_consumes_exactly_n_plus_p_uniforms() {
        use crate::samplers::{run_chain, ChainOptions};
        use crate::streams::{InnovationStream, StreamSpec};
        let m = Arc::new(small_model());
        let (n, p) = (m.n(), m.p());
        let update = ProbitUpdate { model: m.clone() };
        let mut stream = InnovationStream::from_spec(&StreamSpec::iid(11)).unwrap();
        let mut x0 = vec![0.0; p];
        x0.extend(m.responses().iter().map(|&b| if b { 0.5 } else { -0.5 }));
        let run = run_chain(&update, &x0, &mut stream, 40, &[], &ChainOptions::default()).unwrap();
        assert_eq!(run.scalars_consumed, 40 * (n + p) as u64);
    }

    #[test]
    fn csv_roundtrip_matches_the_generator() {
        let m = small_model();
        let csv = m.to_csv();
        let dir = std::env::temp_dir().join("mcqmc_probit_test.csv");
        std::fs::write(&dir, &csv).unwrap();
        let m2 = ProbitModel::from_csv(&dir).unwrap();
        std::fs::remove_file(&dir).ok();
        assert_eq!(m.responses(), m2.responses());
        assert!((m.design() - m2.design()).norm() == 0.0);
    }

    #[test]
    fn shipped_dataset_equals_the_generator() {
        let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/probit_synthetic.csv");
        let m = ProbitModel::from_csv(path).unwrap();
        let gen = small_model();
        assert_eq!(m.responses(), gen.responses());
        assert!((m.design() - gen.design()).norm() == 0.0);
    }

    #[test]
    fn rank_deficient_design_is_rejected() {
        // duplicate column
        let x = DMatrix::from_row_slice(3, 2, &[1.0, 1.0, 2.0, 2.0, -1.0, -1.0]);
        assert!(ProbitModel::new(x, vec![true, false, true]).is_err());
    }
}
