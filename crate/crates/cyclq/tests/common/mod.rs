#![allow(dead_code)]

use cyclq::curve::{sample_modulus, sample_point, CurvePoint, Couplings, Modulus};
use cyclq::tensorcore::{c, CMat, C64};
use cyclq::weights::{w_bar, w_hat};
use cyclq::weyl::{RootOfUnity, WeylPair};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn weyl(n: usize, m: i64) -> WeylPair {
    WeylPair::new(RootOfUnity::new(n, m).unwrap())
}

pub fn rand_c<R: Rng>(rng: &mut R) -> C64 {
    c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

pub fn rand_mat<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> CMat {
    CMat::from_fn(rows, cols, |_, _| rand_c(rng))
}

/// Couplings that are not both one.
pub fn skew_couplings() -> Couplings {
    Couplings::new(c(1.3, 0.2), c(0.7, -0.4)).unwrap()
}

/// `count` points on a shared curve whose pairwise weights are all constructible.
pub fn points<R: Rng>(rng: &mut R, root: &RootOfUnity, count: usize) -> (Modulus, Vec<CurvePoint>) {
    'outer: loop {
        let m = sample_modulus(rng);
        let mut pts = Vec::new();
        for _ in 0..count {
            match sample_point(rng, root, m) {
                Ok(p) => pts.push(p),
                Err(_) => continue 'outer,
            }
        }
        for (i, a) in pts.iter().enumerate() {
            for (j, b) in pts.iter().enumerate() {
                if i != j && (w_hat(root, a, b).is_err() || w_bar(root, a, b).is_err()) {
                    continue 'outer;
                }
            }
        }
        return (m, pts);
    }
}

/// Spectral parameter away from zero.
pub fn spectral<R: Rng>(rng: &mut R) -> C64 {
    C64::from_polar(rng.random_range(0.5..1.5), rng.random_range(0.0..std::f64::consts::TAU))
}

pub fn rel(a: &CMat, b: &CMat) -> f64 {
    cyclq::tensorcore::rel_residual(a, b).unwrap()
}
