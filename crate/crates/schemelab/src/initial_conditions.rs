//! Seeded generators for the initial-condition families used throughout:
//! single-mode, multi-mode, and mode-1-plus-offset states.
//!
//! Randomness is keyed on `(seed, sample index, mode index)` so that samples
//! can be produced in any order, or in parallel, with identical results.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::spectral::GridState;

/// A bounded scalar distribution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Law {
    Fixed(f64),
    Uniform { lo: f64, hi: f64 },
}

impl Law {
    fn validate(&self) -> Result<()> {
        match *self {
            Law::Fixed(v) if v.is_finite() => Ok(()),
            Law::Uniform { lo, hi } if lo.is_finite() && hi.is_finite() && lo <= hi => Ok(()),
            _ => Err(Error::Config(format!("invalid distribution law: {self:?}"))),
        }
    }

    fn is_identically_zero(&self) -> bool {
        matches!(self, Law::Fixed(v) if *v == 0.0)
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> f64 {
        match *self {
            Law::Fixed(v) => v,
            Law::Uniform { lo, hi } => {
                if lo == hi {
                    lo
                } else {
                    rng.random_range(lo..hi)
                }
            }
        }
    }
}

/// One active sine mode with laws for its amplitude and phase.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeLaw {
    pub mode: usize,
    pub amplitude: Law,
    pub phase: Law,
}

/// Specification of an initial-condition distribution on an `n`-point grid:
/// `u_i = offset + sum_k c_k sin(2 pi m_k x_i - d_k)`.
#[derive(Debug, Clone, PartialEq)]
pub struct IcSpec {
    n: usize,
    modes: Vec<ModeLaw>,
    offset: Law,
    seed: u64,
}

impl IcSpec {
    pub fn new(n: usize, modes: Vec<ModeLaw>, offset: Law, seed: u64) -> Result<Self> {
        if n < 4 || n % 2 != 0 {
            return Err(Error::Config(format!(
                "grid resolution must be even and >= 4, got {n}"
            )));
        }
        for law in &modes {
            if law.mode < 1 || law.mode > n / 2 {
                return Err(Error::Config(format!(
                    "mode {} outside [1, {}]",
                    law.mode,
                    n / 2
                )));
            }
            law.amplitude.validate()?;
            law.phase.validate()?;
        }
        offset.validate()?;
        if modes.is_empty() && offset.is_identically_zero() {
            return Err(Error::Config(
                "degenerate spec: no modes and an identically zero offset".into(),
            ));
        }
        Ok(Self {
            n,
            modes,
            offset,
            seed,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Deterministic sample states; identical `(spec, count)` pairs always
    /// yield identical output.
    pub fn generate(&self, count: usize) -> Result<Vec<GridState>> {
        if count == 0 {
            return Err(Error::Config("sample count must be positive".into()));
        }
        (0..count).map(|j| self.sample(j)).collect()
    }

    /// The `j`-th sample of the distribution, independent of any other index.
    pub fn sample(&self, j: usize) -> Result<GridState> {
        let n = self.n;
        let offset =
            self.offset
                .sample(&mut keyed_rng(self.seed, j as u64, self.modes.len() as u64));
        let mut values = vec![offset; n];
        for (k, law) in self.modes.iter().enumerate() {
            let mut rng = keyed_rng(self.seed, j as u64, k as u64);
            let c = law.amplitude.sample(&mut rng);
            let d = law.phase.sample(&mut rng);
            let m = law.mode as f64;
            for (i, v) in values.iter_mut().enumerate() {
                let x = i as f64 / n as f64;
                *v += c * (2.0 * std::f64::consts::PI * m * x - d).sin();
            }
        }
        GridState::new(values)
    }
}

/// Independent generator stream for one `(seed, sample, mode)` key.
fn keyed_rng(seed: u64, sample: u64, mode: u64) -> ChaCha8Rng {
    // SplitMix64 avalanche folding each key component in turn
    let mut z = seed;
    for v in [sample, mode] {
        z = z.wrapping_add(0x9e3779b97f4a7c15).wrapping_add(v);
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^= z >> 31;
    }
    ChaCha8Rng::seed_from_u64(z)
}
