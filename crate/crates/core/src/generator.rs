//! Correlated synthetic elections: `μ + Σⱼ zⱼ·√λⱼ·Eⱼ` with independent standard normal `zⱼ`.
//!
//! # Reproducibility
//!
//! Trial `t` under master seed `s` draws from `ChaCha8Rng::seed_from_u64(s)`
//! switched to stream `t` (`set_stream(t)`), so every trial owns an
//! independent 2⁶⁴-block ChaCha stream and its noise depends on `(s, t)` only.
//! Normal variates come from `rand_distr::StandardNormal` (ziggurat). Results
//! are bit-identical within a build regardless of how trials are scheduled;
//! nothing is promised across crate versions or languages.

use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::ModelError;
use crate::pca::PcaModel;

#[derive(Debug, Clone, PartialEq)]
pub struct NoiseVector {
    pub z: Vec<f64>,
    pub seed: u64,
    pub trial_index: u64,
}

/// The per-trial generator. Exposed so tests can check the substream contract.
pub fn trial_rng(seed: u64, trial_index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial_index);
    rng
}

pub fn draw_noise(seed: u64, trial_index: u64, dim: usize) -> NoiseVector {
    let mut rng = trial_rng(seed, trial_index);
    let z = (0..dim).map(|_| StandardNormal.sample(&mut rng)).collect();
    NoiseVector {
        z,
        seed,
        trial_index,
    }
}

/// A simulated share vector before and after clamping to `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SimulatedShares {
    raw: Vec<f64>,
    clamped: Vec<f64>,
}

impl SimulatedShares {
    pub fn from_raw(raw: Vec<f64>) -> SimulatedShares {
        let clamped = raw.iter().map(|x| x.clamp(0.0, 1.0)).collect();
        SimulatedShares { raw, clamped }
    }

    pub fn raw(&self) -> &[f64] {
        &self.raw
    }

    /// What the tally uses.
    pub fn clamped(&self) -> &[f64] {
        &self.clamped
    }

    pub fn len(&self) -> usize {
        self.raw.len()
    }

    pub fn is_empty(&self) -> bool {
        self.raw.is_empty()
    }
}

pub fn generate_shares(model: &PcaModel, noise: &NoiseVector) -> Result<SimulatedShares, ModelError> {
    Ok(SimulatedShares::from_raw(raw_shares(model, &noise.z)?))
}

/// Unclamped `μ + Σⱼ zⱼ·√λⱼ·Eⱼ` for an arbitrary coefficient vector.
pub fn raw_shares(model: &PcaModel, z: &[f64]) -> Result<Vec<f64>, ModelError> {
    if model.rank() == 0 {
        return Err(ModelError::Empty);
    }
    if z.len() != model.rank() {
        return Err(ModelError::DimensionMismatch {
            expected: model.rank(),
            found: z.len(),
        });
    }
    let mut out = model.mean().to_vec();
    for ((zj, lambda), e) in z.iter().zip(model.eigenvalues()).zip(model.eigenvectors()) {
        let w = zj * libm::sqrt(*lambda);
        for (o, c) in out.iter_mut().zip(e) {
            *o += w * c;
        }
    }
    Ok(out)
}
