//! Primitive roots of unity and the clock/shift Weyl pair.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tensorcore::{diag, kron, CMat, C64};

/// `q = exp(2πi m / N)` with `N` odd, `N ≥ 3` and `gcd(m, N) = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RootSpec", into = "RootSpec")]
pub struct RootOfUnity {
    n: usize,
    m: i64,
}

#[derive(Serialize, Deserialize)]
struct RootSpec {
    n: usize,
    m: i64,
}

impl TryFrom<RootSpec> for RootOfUnity {
    type Error = Error;
    fn try_from(s: RootSpec) -> Result<Self> {
        RootOfUnity::new(s.n, s.m)
    }
}

impl From<RootOfUnity> for RootSpec {
    fn from(r: RootOfUnity) -> Self {
        RootSpec { n: r.n, m: r.m }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl RootOfUnity {
    pub fn new(n: usize, m: i64) -> Result<Self> {
        if n < 3 || n.is_multiple_of(2) {
            return Err(Error::Root(format!("order {n} must be odd and at least 3")));
        }
        if n > 1 << 20 {
            return Err(Error::Root(format!("order {n} is too large")));
        }
        if gcd(m.unsigned_abs(), n as u64) != 1 {
            return Err(Error::Root(format!("exponent {m} is not coprime to {n}")));
        }
        Ok(Self { n, m })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn q(&self) -> C64 {
        self.pow(1)
    }

    /// `q^k`, with the exponent reduced mod `N` before evaluation.
    pub fn pow(&self, k: i64) -> C64 {
        let e = (self.m.rem_euclid(self.n as i64) * k.rem_euclid(self.n as i64)) % self.n as i64;
        C64::from_polar(1.0, 2.0 * PI * e as f64 / self.n as f64)
    }

    /// `q^x := exp(2πi m x / N)` for real `x`.
    pub fn pow_real(&self, x: f64) -> C64 {
        C64::from_polar(1.0, 2.0 * PI * self.m as f64 * x / self.n as f64)
    }

    /// `Σ_{p<N} q^{(2α+k)p}` in closed form `(1 - q^{2αN}) / (1 - q^{2α+k})`.
    pub fn twisted_sum(&self, alpha: f64, k: i64) -> C64 {
        let one = C64::new(1.0, 0.0);
        (one - self.pow_real(2.0 * alpha * self.n as f64)) / (one - self.pow_real(2.0 * alpha + k as f64))
    }
}

pub fn make_root(n: usize, m: i64) -> Result<RootOfUnity> {
    RootOfUnity::new(n, m)
}

/// Shift `X e_j = e_{j+1}` and clock `Z = diag(q^j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeylPair {
    root: RootOfUnity,
    x: CMat,
    z: CMat,
    x_inv: CMat,
    z_inv: CMat,
}

impl WeylPair {
    pub fn new(root: RootOfUnity) -> Self {
        Self {
            x: shift_pow(root.n(), 1),
            z: clock_pow(&root, 1),
            x_inv: shift_pow(root.n(), -1),
            z_inv: clock_pow(&root, -1),
            root,
        }
    }

    pub fn root(&self) -> &RootOfUnity {
        &self.root
    }

    pub fn n(&self) -> usize {
        self.root.n()
    }

    pub fn q(&self) -> C64 {
        self.root.q()
    }

    pub fn x(&self) -> &CMat {
        &self.x
    }

    pub fn z(&self) -> &CMat {
        &self.z
    }

    pub fn x_inv(&self) -> &CMat {
        &self.x_inv
    }

    pub fn z_inv(&self) -> &CMat {
        &self.z_inv
    }

    pub fn x_pow(&self, k: i64) -> CMat {
        shift_pow(self.n(), k)
    }

    pub fn z_pow(&self, k: i64) -> CMat {
        clock_pow(&self.root, k)
    }

    pub fn identity(&self) -> CMat {
        CMat::identity(self.n(), self.n())
    }

    /// `χ = X⁻¹ ⊗ X` on `W ⊗ W`.
    pub fn chi(&self) -> CMat {
        kron(&self.x_inv, &self.x)
    }

    /// `Z^{2α} = diag(q^{2αj})` with `q^x = exp(2πi m x / N)` along `j = 0..N-1`.
    pub fn z_frac(&self, two_alpha: f64) -> CMat {
        let v: Vec<C64> = (0..self.n()).map(|j| self.root.pow_real(two_alpha * j as f64)).collect();
        diag(&v)
    }
}

pub fn make_weyl(root: RootOfUnity) -> WeylPair {
    WeylPair::new(root)
}

pub fn chi(wp: &WeylPair) -> CMat {
    wp.chi()
}

fn shift_pow(n: usize, k: i64) -> CMat {
    let mut x = CMat::zeros(n, n);
    for j in 0..n {
        let i = (j as i64 + k).rem_euclid(n as i64) as usize;
        x[(i, j)] = C64::new(1.0, 0.0);
    }
    x
}

fn clock_pow(root: &RootOfUnity, k: i64) -> CMat {
    let v: Vec<C64> = (0..root.n() as i64).map(|j| root.pow(j * k)).collect();
    diag(&v)
}

/// Entrywise principal-branch power of a diagonal matrix.
pub fn diag_frac_power(d: &CMat, alpha: f64) -> Result<CMat> {
    let mut out = CMat::zeros(d.nrows(), d.ncols());
    for j in 0..d.nrows().min(d.ncols()) {
        let v = d[(j, j)];
        if v.norm() == 0.0 {
            return Err(Error::ZeroDiagonal(j));
        }
        out[(j, j)] = (v.ln() * alpha).exp();
    }
    Ok(out)
}
