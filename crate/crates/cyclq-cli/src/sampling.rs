//! Seeded draws of curve points and spectral parameters, one independent stream per suite.

use cyclq::curve::{sample_modulus, sample_point, CurvePoint, Modulus};
use cyclq::weights::{w_bar, w_hat};
use cyclq::weyl::RootOfUnity;
use cyclq::C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::HarnessError;

/// Rejections allowed before a draw is declared exhausted.
pub const MAX_REJECTIONS: usize = 100;

pub struct Sampler {
    rng: ChaCha8Rng,
    modulus: Option<Modulus>,
    stream: u64,
}

impl Sampler {
    pub fn new(seed: u64, stream: u64, modulus: Option<Modulus>) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Self { rng, modulus, stream }
    }

    pub fn stream(&self) -> u64 {
        self.stream
    }

    /// `count` points on one curve with every ordered pair of distinct points non-degenerate.
    pub fn points(&mut self, root: &RootOfUnity, count: usize) -> Result<Vec<CurvePoint>, HarnessError> {
        for _ in 0..MAX_REJECTIONS {
            let m = self.modulus.unwrap_or_else(|| sample_modulus(&mut self.rng));
            let pts: Result<Vec<_>, _> = (0..count).map(|_| sample_point(&mut self.rng, root, m)).collect();
            let Ok(pts) = pts else { continue };
            let ok = pts.iter().enumerate().all(|(i, a)| {
                pts.iter()
                    .enumerate()
                    .all(|(j, b)| i == j || (w_hat(root, a, b).is_ok() && w_bar(root, a, b).is_ok()))
            });
            if ok {
                return Ok(pts);
            }
        }
        Err(HarnessError::Exhausted(MAX_REJECTIONS))
    }

    /// Modulus in `[0.5, 1.5]`, uniform phase.
    pub fn spectral(&mut self) -> C64 {
        C64::from_polar(self.rng.random_range(0.5..1.5), self.rng.random_range(0.0..std::f64::consts::TAU))
    }

    /// Uniform in the square `[-1, 1]²`.
    pub fn complex(&mut self) -> C64 {
        C64::new(self.rng.random_range(-1.0..1.0), self.rng.random_range(-1.0..1.0))
    }
}

pub fn points_json(pts: &[CurvePoint]) -> Value {
    serde_json::to_value(pts).expect("points serialize")
}

pub fn c_json(z: C64) -> Value {
    json!([z.re, z.im])
}
