//! Executable forms of the coupling machinery: coupling regions for the
//! Metropolized independence sampler and the slice sampler, the
//! Rosenblatt–Chentsov transformation, an empirical coupling probe for pairs
//! of chains on shared innovations, and contraction / B_m-volume estimation.
//!
//! A coupling region C is a box in innovation space with the property that
//! whenever the shared innovation block lands in C, two chains started from
//! arbitrary states have merged exactly (bitwise) after `lag` further steps.
//! Merging is always checked with bitwise equality — couplings are exact
//! events, not tolerance events.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{McqmcError, Result};
use crate::generators::{inverse_rosenblatt, RosenblattSpec};
use crate::samplers::UpdateFunction;
use crate::streams::InnovationStream;

#[derive(Debug, Clone, PartialEq)]
pub struct CouplingRegion {
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    /// Steps until states merge after an innovation block lands in the box:
    /// 1 for MIS, 2 for the slice sampler.
    pub lag: usize,
}

impl CouplingRegion {
    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn volume(&self) -> f64 {
        self.lower.iter().zip(&self.upper).map(|(a, b)| b - a).product()
    }

    pub fn contains(&self, u: &[f64]) -> bool {
        u.len() == self.dim()
            && u.iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(&v, (&a, &b))| v >= a && v <= b)
    }

    /// A uniform draw inside the box.
    pub fn sample(&self, rng: &mut ChaCha8Rng) -> Vec<f64> {
        self.lower
            .iter()
            .zip(&self.upper)
            .map(|(&a, &b)| rng.random_range(a..b))
            .collect()
    }
}

/// Coupling region for the Metropolized independence sampler with proposal
/// uniforms restricted to `[box_lower, box_upper] ⊆ (0,1)^{d−1}` and the
/// acceptance uniform in [0, η/κ], where κ = sup_x π(x)/p(x) and
/// η = inf over the box of π(ψ(u))/p(ψ(u)). Any block in the region makes
/// both chains accept the same proposal, so the lag is 1.
pub fn mis_coupling_region(
    kappa: f64,
    eta: f64,
    box_lower: &[f64],
    box_upper: &[f64],
) -> Result<CouplingRegion> {
    if !kappa.is_finite() || !(eta > 0.0) || eta > kappa {
        return Err(McqmcError::InvalidBound(format!(
            "need 0 < eta <= kappa < infinity, got eta={eta}, kappa={kappa}"
        )));
    }
    if box_lower.len() != box_upper.len()
        || box_lower
            .iter()
            .zip(box_upper)
            .any(|(&a, &b)| !(0.0..1.0).contains(&a) || !(a < b && b <= 1.0))
    {
        return Err(McqmcError::InvalidBound(
            "proposal box must satisfy 0 <= a < b <= 1 in every coordinate".into(),
        ));
    }
    let mut lower = box_lower.to_vec();
    let mut upper = box_upper.to_vec();
    lower.push(0.0);
    upper.push(eta / kappa);
    Ok(CouplingRegion { lower, upper, lag: 1 })
}

/// Coupling region for the inversive slice sampler on a box where
/// 0 < η ≤ π(x) ≤ κ: the region is [0, η/κ] × (0,1)^s in the (u₁, u_{2:s+1})
/// block. When u₁ ≤ η/κ, the level drops below min π, the slice is the whole
/// box, and the x-components of two chains merge; the level component merges
/// one step later, so the lag is 2.
pub fn slice_coupling_check(eta: f64, kappa: f64, s: usize) -> Result<CouplingRegion> {
    if !(eta > 0.0) || !(kappa >= eta) || !kappa.is_finite() || s == 0 {
        return Err(McqmcError::InvalidBound(format!(
            "need 0 < eta <= kappa < infinity and s >= 1, got eta={eta}, kappa={kappa}, s={s}"
        )));
    }
    let mut lower = vec![0.0];
    let mut upper = vec![eta / kappa];
    lower.extend(std::iter::repeat_n(0.0, s));
    upper.extend(std::iter::repeat_n(1.0, s));
    Ok(CouplingRegion { lower, upper, lag: 2 })
}

/// Extremize a density ratio (or density) over a box by dense grid scan;
/// the crude but transparent way to get η and κ for region construction.
pub fn grid_extrema(f: &dyn Fn(&[f64]) -> f64, lower: &[f64], upper: &[f64], per_dim: usize) -> (f64, f64) {
    assert!(per_dim >= 2 && lower.len() == upper.len());
    let dim = lower.len();
    let mut idx = vec![0usize; dim];
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    let mut x = vec![0.0; dim];
    loop {
        for j in 0..dim {
            x[j] = lower[j] + (upper[j] - lower[j]) * idx[j] as f64 / (per_dim - 1) as f64;
        }
        let v = f(&x);
        lo = lo.min(v);
        hi = hi.max(v);
        let mut j = 0;
        loop {
            if j == dim {
                return (lo, hi);
            }
            idx[j] += 1;
            if idx[j] < per_dim {
                break;
            }
            idx[j] = 0;
            j += 1;
        }
    }
}

/// Rosenblatt–Chentsov transformation: the first s coordinates of `u0` seed
/// x₀ through the inverse Rosenblatt map, then each innovation block advances
/// the chain. Returns x₀..x_m.
pub fn rosenblatt_chentsov(
    ros: &RosenblattSpec,
    update: &dyn UpdateFunction,
    u0: &[f64],
    innovations: &[Vec<f64>],
) -> Result<Vec<Vec<f64>>> {
    if u0.len() < ros.dim() {
        return Err(McqmcError::TooShort { need: ros.dim(), got: u0.len() });
    }
    let mut xs = Vec::with_capacity(innovations.len() + 1);
    xs.push(inverse_rosenblatt(ros, &u0[..ros.dim()])?);
    for u in innovations {
        let next = update.step(xs.last().unwrap(), u)?;
        xs.push(next);
    }
    Ok(xs)
}

#[derive(Debug, Clone)]
pub struct CouplingReport {
    pub steps: usize,
    /// First index i (0 = initial states) at which the two chains are
    /// bitwise equal; None if they never merge within the run.
    pub first_merge: Option<usize>,
    /// Innovation blocks landing in each declared region.
    pub region_hits: Vec<u64>,
    /// True when the chains were bitwise equal at every step after the first
    /// merge (vacuously true without a merge).
    pub post_merge_verified: bool,
}

fn bitwise_eq(a: &[f64], b: &[f64]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.to_bits() == y.to_bits())
}

/// Drive two chains from x₀ and x₀′ with the *same* innovation stream and
/// watch them merge.
pub fn coupling_probe(
    update: &dyn UpdateFunction,
    x0: &[f64],
    x0_prime: &[f64],
    stream: &mut InnovationStream,
    n: usize,
    regions: &[CouplingRegion],
) -> Result<CouplingReport> {
    let d = update.innovation_dim();
    let mut x = x0.to_vec();
    let mut xp = x0_prime.to_vec();
    let mut first_merge = if bitwise_eq(&x, &xp) { Some(0) } else { None };
    let mut post_merge_verified = true;
    let mut region_hits = vec![0u64; regions.len()];
    let mut u = vec![0.0; d];
    for i in 1..=n {
        stream.fill_block(&mut u)?;
        for (hits, region) in region_hits.iter_mut().zip(regions) {
            if region.contains(&u) {
                *hits += 1;
            }
        }
        x = update.step(&x, &u)?;
        xp = update.step(&xp, &u)?;
        match (first_merge, bitwise_eq(&x, &xp)) {
            (None, true) => first_merge = Some(i),
            (Some(_), false) => post_merge_verified = false,
            _ => {}
        }
    }
    Ok(CouplingReport { steps: n, first_merge, region_hits, post_merge_verified })
}

/// Region soundness check: `trials` times, draw two states from
/// `state_sampler` and an innovation block uniform in the region, step both
/// chains with it, then `lag − 1` further shared random blocks; count pairs
/// that fail to merge bitwise. A sound region yields zero failures.
pub fn region_soundness_failures(
    update: &dyn UpdateFunction,
    region: &CouplingRegion,
    state_sampler: &dyn Fn(&mut ChaCha8Rng) -> Vec<f64>,
    trials: usize,
    seed: u64,
) -> Result<usize> {
    let d = update.innovation_dim();
    if region.dim() != d {
        return Err(McqmcError::DimensionMismatch { expected: d, got: region.dim() });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0;
    for _ in 0..trials {
        let mut x = state_sampler(&mut rng);
        let mut xp = state_sampler(&mut rng);
        let u = region.sample(&mut rng);
        x = update.step(&x, &u)?;
        xp = update.step(&xp, &u)?;
        for _ in 1..region.lag {
            let u: Vec<f64> = (0..d).map(|_| rng.random_range(1e-12..1.0)).collect();
            x = update.step(&x, &u)?;
            xp = update.step(&xp, &u)?;
        }
        if !bitwise_eq(&x, &xp) {
            failures += 1;
        }
    }
    Ok(failures)
}

pub type Metric = dyn Fn(&[f64], &[f64]) -> f64 + Sync;
pub type StatePairSampler = dyn Fn(&mut ChaCha8Rng) -> (Vec<f64>, Vec<f64>) + Sync;

#[derive(Debug, Clone)]
pub struct ContractionConfig {
    /// Innovation draws used to sample log ℓ(u).
    pub u_samples: usize,
    /// State pairs over which the per-u ratio supremum is taken (a sampled
    /// lower bound on the true supremum).
    pub pairs_per_u: usize,
    /// Chain lengths m at which vol(B_m) is estimated.
    pub m_list: Vec<usize>,
    /// Monte Carlo replicates per B_m estimate.
    pub reps: usize,
    /// Contraction threshold γ; defaults to exp(E[log ℓ]/2).
    pub gamma: Option<f64>,
    pub seed: u64,
}

impl Default for ContractionConfig {
    fn default() -> Self {
        ContractionConfig {
            u_samples: 256,
            pairs_per_u: 64,
            m_list: vec![1, 2, 4, 8],
            reps: 2000,
            gamma: None,
            seed: 0xC0,
        }
    }
}

#[derive(Debug, Clone)]
pub struct BmEstimate {
    pub m: usize,
    /// Estimated volume of B_m = {v : d(φ_m(x,v), φ_m(x̂,v)) > γ^m}.
    pub volume: f64,
    pub std_error: f64,
}

#[derive(Debug, Clone)]
pub struct ContractionReport {
    /// Sampled log ℓ(u) values (per-u sup over sampled state pairs).
    pub log_ratio_samples: Vec<f64>,
    /// Mean of the finite log-ratio samples; −∞ when every ratio is zero.
    pub mean_log_ratio: f64,
    pub se_log_ratio: f64,
    pub gamma: f64,
    pub bm: Vec<BmEstimate>,
    /// Estimated E[log ℓ] < 0.
    pub contracting: bool,
    /// ℓ ≡ 1 (no contraction) or ℓ ≡ 0 (immediate coupling) on all samples.
    pub degenerate: bool,
}

/// Estimate the per-step Lipschitz behaviour and the B_m set volumes of an
/// update under a metric. The ℓ(u) supremum is taken over `pairs_per_u`
/// sampled state pairs plus the distinguished pair (x, x̂), so the reported
/// value is a lower bound on the true Lipschitz ratio.
pub fn contraction_probe(
    update: &dyn UpdateFunction,
    metric: &Metric,
    pair_sampler: &StatePairSampler,
    x: &[f64],
    x_hat: &[f64],
    cfg: &ContractionConfig,
) -> Result<ContractionReport> {
    let d = update.innovation_dim();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut log_samples = Vec::with_capacity(cfg.u_samples);
    for _ in 0..cfg.u_samples {
        let u: Vec<f64> = (0..d).map(|_| rng.random_range(1e-12..1.0)).collect();
        let mut sup = 0.0f64;
        let mut pairs_used = 0;
        let base = (x.to_vec(), x_hat.to_vec());
        for k in 0..=cfg.pairs_per_u {
            let (a, b) = if k == 0 { base.clone() } else { pair_sampler(&mut rng) };
            let dist = metric(&a, &b);
            if dist <= 0.0 {
                continue;
            }
            let ratio = metric(&update.step(&a, &u)?, &update.step(&b, &u)?) / dist;
            sup = sup.max(ratio);
            pairs_used += 1;
        }
        if pairs_used > 0 {
            log_samples.push(sup.ln());
        }
    }
    let finite: Vec<f64> = log_samples.iter().copied().filter(|v| v.is_finite()).collect();
    let (mean_log, se_log) = if finite.is_empty() {
        (f64::NEG_INFINITY, 0.0)
    } else {
        let mean = finite.iter().sum::<f64>() / finite.len() as f64;
        let var = finite.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>()
            / (finite.len().max(2) - 1) as f64;
        (mean, (var / finite.len() as f64).sqrt())
    };
    let all_zero = finite.len() < log_samples.len() && finite.is_empty();
    let all_one = !log_samples.is_empty() && log_samples.iter().all(|&v| v == 0.0);
    let gamma = cfg.gamma.unwrap_or_else(|| {
        if mean_log == f64::NEG_INFINITY {
            0.5
        } else {
            (mean_log / 2.0).exp().min(1.0)
        }
    });
    let d0 = metric(x, x_hat);
    let mut bm = Vec::new();
    for &m in &cfg.m_list {
        let mut hits = 0u64;
        let mut u = vec![0.0; d];
        for _ in 0..cfg.reps {
            let mut a = x.to_vec();
            let mut b = x_hat.to_vec();
            for _ in 0..m {
                for slot in u.iter_mut() {
                    *slot = rng.random_range(1e-12..1.0);
                }
                a = update.step(&a, &u)?;
                b = update.step(&b, &u)?;
            }
            if metric(&a, &b) > gamma.powi(m as i32) {
                hits += 1;
            }
        }
        let p = hits as f64 / cfg.reps as f64;
        bm.push(BmEstimate {
            m,
            volume: p,
            std_error: (p * (1.0 - p) / cfg.reps as f64).sqrt(),
        });
    }
    let _ = d0;
    Ok(ContractionReport {
        log_ratio_samples: log_samples,
        mean_log_ratio: mean_log,
        se_log_ratio: se_log,
        gamma,
        bm,
        contracting: mean_log < 0.0,
        degenerate: all_zero || all_one,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{normal_cdf, normal_quantile};
    use crate::samplers::MisSpec;
    use crate::streams::StreamSpec;

    const SQRT_2: f64 = std::f64::consts::SQRT_2;

    /// MIS with N(0,1) target and N(0,√2) proposal: bounded importance ratio
    /// with κ = sup √2·exp(−x²/4) = √2.
    fn bounded_mis() -> MisSpec {
        MisSpec {
            state_dim: 1,
            innovation_dim: 2,
            log_target: Box::new(|x| -0.5 * x[0] * x[0]),
            proposal_map: Box::new(|u| Ok(vec![SQRT_2 * normal_quantile(u[0])?])),
            log_proposal_density: Box::new(|x| -0.25 * x[0] * x[0] - 0.5 * SQRT_2.ln()),
        }
    }

    /// π/p ratio for `bounded_mis`.
    fn ratio(x: f64) -> f64 {
        SQRT_2 * (-0.25 * x * x).exp()
    }

    fn bounded_mis_region() -> CouplingRegion {
        // proposal box u₁ ∈ [0.3, 0.7]; η by grid minimization of the ratio
        // over proposals from the box, κ = √2 (analytic sup at x = 0)
        let (eta, _) = grid_extrema(
            &|u: &[f64]| ratio(SQRT_2 * normal_quantile(u[0]).unwrap()),
            &[0.3],
            &[0.7],
            2001,
        );
        mis_coupling_region(SQRT_2, eta, &[0.3], &[0.7]).unwrap()
    }

    #[test]
    fn mis_region_arithmetic() {
        // identity sampler: p = π gives the whole cube
        let r = mis_coupling_region(1.0, 1.0, &[0.0 + 1e-12], &[1.0]).unwrap();
        assert!((r.volume() - 1.0).abs() < 1e-9);
        assert_eq!(r.lag, 1);
        // κ=2, η=1 over a box of volume 0.5
        let r = mis_coupling_region(2.0, 1.0, &[0.25], &[0.75]).unwrap();
        assert!((r.volume() - 0.25).abs() < 1e-15);
    }

    #[test]
    fn mis_region_invalid_bounds() {
        assert!(mis_coupling_region(1.0, 2.0, &[0.1], &[0.9]).is_err()); // eta > kappa
        assert!(mis_coupling_region(f64::INFINITY, 1.0, &[0.1], &[0.9]).is_err());
        assert!(mis_coupling_region(1.0, 0.0, &[0.1], &[0.9]).is_err());
        assert!(mis_coupling_region(2.0, 1.0, &[0.9], &[0.1]).is_err()); // empty box
    }

    #[test]
    fn slice_region_shapes() {
        let r = slice_coupling_check(1.0, 1.0, 2).unwrap();
        assert!((r.volume() - 1.0).abs() < 1e-15);
        assert_eq!(r.lag, 2);
        // π(x)=2x on [0.5,1]: inf = 1, sup = 2 (normalization cancels)
        let (eta, kappa) = grid_extrema(&|x: &[f64]| 2.0 * x[0], &[0.5], &[1.0], 101);
        let r = slice_coupling_check(eta, kappa, 1).unwrap();
        assert!((r.volume() - 0.5).abs() < 1e-12);
        assert!(slice_coupling_check(2.0, 1.0, 1).is_err());
        assert!(slice_coupling_check(1.0, 2.0, 0).is_err());
    }

    #[test]
    fn rosenblatt_chentsov_m_zero_and_identity() {
        let ros = RosenblattSpec::bivariate_normal(0.5).unwrap();
        struct Identity;
        impl UpdateFunction for Identity {
            fn state_dim(&self) -> usize {
                2
            }
            fn innovation_dim(&self) -> usize {
                1
            }
            fn step(&self, x: &[f64], _u: &[f64]) -> Result<Vec<f64>> {
                Ok(x.to_vec())
            }
            fn kind(&self) -> &'static str {
                "identity"
            }
        }
        let xs = rosenblatt_chentsov(&ros, &Identity, &[0.975, 0.5], &[]).unwrap();
        assert_eq!(xs.len(), 1);
        assert!((xs[0][0] - 1.95996).abs() < 1e-4);
        let blocks = vec![vec![0.3], vec![0.8], vec![0.1]];
        let xs = rosenblatt_chentsov(&ros, &Identity, &[0.975, 0.5], &blocks).unwrap();
        assert_eq!(xs.len(), 4);
        for x in &xs[1..] {
            assert_eq!(x, &xs[0]);
        }
    }

    #[test]
    fn rosenblatt_chentsov_preserves_stationarity_ks() {
        // MIS with p = π = N(0,1): x₀ ~ π and every proposal is accepted, so
        // x_m ~ π; check the x_m sample against Φ with a KS test at 1%
        let spec = MisSpec {
            state_dim: 1,
            innovation_dim: 2,
            log_target: Box::new(|x| -0.5 * x[0] * x[0]),
            proposal_map: Box::new(|u| Ok(vec![normal_quantile(u[0])?])),
            log_proposal_density: Box::new(|x| -0.5 * x[0] * x[0]),
        };
        let ros = RosenblattSpec::new(vec![Box::new(|_: &[f64], u| normal_quantile(u)) as _])
            .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let n = 10_000;
        let m = 3;
        let mut finals: Vec<f64> = (0..n)
            .map(|_| {
                let u0 = vec![rng.random_range(1e-9..1.0)];
                let blocks: Vec<Vec<f64>> = (0..m)
                    .map(|_| vec![rng.random_range(1e-9..1.0), rng.random()])
                    .collect();
                rosenblatt_chentsov(&ros, &spec, &u0, &blocks).unwrap()[m][0]
            })
            .collect();
        finals.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let mut dstat = 0.0f64;
        for (i, &v) in finals.iter().enumerate() {
            let f = normal_cdf(v);
            dstat = dstat
                .max(((i + 1) as f64 / n as f64 - f).abs())
                .max((f - i as f64 / n as f64).abs());
        }
        let crit = 1.628 / (n as f64).sqrt(); // 1% asymptotic critical value
        assert!(dstat < crit, "KS statistic {dstat} vs critical {crit}");
    }

    #[test]
    fn probe_equal_starts_merge_at_zero() {
        let spec = bounded_mis();
        let mut stream = InnovationStream::from_spec(&StreamSpec::iid(3)).unwrap();
        let rep = coupling_probe(&spec, &[0.4], &[0.4], &mut stream, 50, &[]).unwrap();
        assert_eq!(rep.first_merge, Some(0));
        assert!(rep.post_merge_verified);
    }

    #[test]
    fn probe_hit_rate_matches_region_volume() {
        let spec = bounded_mis();
        let region = bounded_mis_region();
        let v = region.volume();
        let n = 100_000;
        let mut stream = InnovationStream::from_spec(&StreamSpec::iid(8)).unwrap();
        let rep =
            coupling_probe(&spec, &[2.0], &[-1.5], &mut stream, n, &[region.clone()]).unwrap();
        let sigma = (v * (1.0 - v) * n as f64).sqrt();
        assert!(
            (rep.region_hits[0] as f64 - v * n as f64).abs() <= 3.0 * sigma,
            "hits {} vs expected {}",
            rep.region_hits[0],
            v * n as f64
        );
        assert!(rep.first_merge.is_some());
        assert!(rep.post_merge_verified);
    }

    #[test]
    fn mis_region_soundness_zero_failures() {
        let spec = bounded_mis();
        let region = bounded_mis_region();
        let failures = region_soundness_failures(
            &spec,
            &region,
            &|rng| vec![rng.random_range(-4.0..4.0)],
            10_000,
            5,
        )
        .unwrap();
        assert_eq!(failures, 0);
    }

    #[test]
    fn slice_region_soundness_zero_failures() {
        // π(x) = 2x on [0.5, 1] (normalization irrelevant): bounded away
        // from zero with η = 1, κ = 2, so a level u₁ ≤ 1/2 makes the slice
        // the whole interval and the section draw state-independent
        let spec = crate::samplers::SliceSpec {
            density: Box::new(|x| 2.0 * x[0]),
            lower: vec![0.5],
            upper: vec![1.0],
            section: Box::new(|y, _j, _x, u| {
                let lo = (y / 2.0).max(0.5);
                Ok(lo + u * (1.0 - lo))
            }),
        };
        let region = slice_coupling_check(1.0, 2.0, 1).unwrap();
        let failures = region_soundness_failures(
            &spec,
            &region,
            &|rng| {
                let x = rng.random_range(0.5..1.0);
                vec![rng.random_range(0.0..2.0 * x), x]
            },
            10_000,
            6,
        )
        .unwrap();
        assert_eq!(failures, 0);
    }

    struct Contract2d;
    impl UpdateFunction for Contract2d {
        fn state_dim(&self) -> usize {
            1
        }
        fn innovation_dim(&self) -> usize {
            1
        }
        fn step(&self, x: &[f64], u: &[f64]) -> Result<Vec<f64>> {
            Ok(vec![0.5 * x[0] + u[0]])
        }
        fn kind(&self) -> &'static str {
            "contract"
        }
    }

    #[test]
    fn contraction_probe_exact_lipschitz_half() {
        let metric: &Metric = &|a: &[f64], b: &[f64]| (a[0] - b[0]).abs();
        let sampler: &StatePairSampler = &|rng: &mut ChaCha8Rng| {
            (vec![rng.random_range(-2.0..2.0)], vec![rng.random_range(-2.0..2.0)])
        };
        let rep = contraction_probe(
            &Contract2d,
            metric,
            sampler,
            &[1.0],
            &[-1.0],
            &ContractionConfig {
                m_list: vec![1, 2, 3, 8],
                gamma: Some(0.75),
                ..Default::default()
            },
        )
        .unwrap();
        assert!((rep.mean_log_ratio - 0.5f64.ln()).abs() < 1e-12);
        assert!(rep.contracting);
        assert!(!rep.degenerate);
        // distance after m steps is exactly 2·(1/2)^m regardless of the
        // innovations, so with γ = 0.75 the set B_m is the whole cube while
        // 2·(1/2)^m > (3/4)^m, i.e. only for m = 1
        let vols: Vec<f64> = rep.bm.iter().map(|b| b.volume).collect();
        assert_eq!(vols, vec![1.0, 0.0, 0.0, 0.0]);
        // the default γ is exp(E[log ℓ]/2) = 1/√2 here
        let rep_default = contraction_probe(
            &Contract2d,
            metric,
            sampler,
            &[1.0],
            &[-1.0],
            &ContractionConfig { m_list: vec![], ..Default::default() },
        )
        .unwrap();
        assert!((rep_default.gamma - 0.5f64.sqrt()).abs() < 1e-12);
        for w in rep.bm.windows(2) {
            assert!(w[1].volume <= w[0].volume + 3.0 * (w[0].std_error + w[1].std_error));
        }
    }

    #[test]
    fn contraction_probe_identity_flagged_degenerate() {
        struct Identity;
        impl UpdateFunction for Identity {
            fn state_dim(&self) -> usize {
                1
            }
            fn innovation_dim(&self) -> usize {
                1
            }
            fn step(&self, x: &[f64], _u: &[f64]) -> Result<Vec<f64>> {
                Ok(x.to_vec())
            }
            fn kind(&self) -> &'static str {
                "identity"
            }
        }
        let metric: &Metric = &|a: &[f64], b: &[f64]| (a[0] - b[0]).abs();
        let sampler: &StatePairSampler =
            &|rng: &mut ChaCha8Rng| (vec![rng.random::<f64>()], vec![rng.random::<f64>()]);
        let rep = contraction_probe(
            &Identity,
            metric,
            sampler,
            &[0.0],
            &[1.0],
            &ContractionConfig::default(),
        )
        .unwrap();
        assert_eq!(rep.mean_log_ratio, 0.0);
        assert!(!rep.contracting);
        assert!(rep.degenerate);
    }

    #[test]
    fn contraction_probe_constant_update_couples_immediately() {
        struct Constant;
        impl UpdateFunction for Constant {
            fn state_dim(&self) -> usize {
                1
            }
            fn innovation_dim(&self) -> usize {
                1
            }
            fn step(&self, _x: &[f64], u: &[f64]) -> Result<Vec<f64>> {
                Ok(vec![u[0]])
            }
            fn kind(&self) -> &'static str {
                "constant"
            }
        }
        let metric: &Metric = &|a: &[f64], b: &[f64]| (a[0] - b[0]).abs();
        let sampler: &StatePairSampler =
            &|rng: &mut ChaCha8Rng| (vec![rng.random::<f64>()], vec![rng.random::<f64>()]);
        let rep = contraction_probe(
            &Constant,
            metric,
            sampler,
            &[0.0],
            &[1.0],
            &ContractionConfig::default(),
        )
        .unwrap();
        assert_eq!(rep.mean_log_ratio, f64::NEG_INFINITY);
        assert!(rep.degenerate);
        for b in &rep.bm {
            assert_eq!(b.volume, 0.0, "B_{} should be empty", b.m);
        }
    }
}
