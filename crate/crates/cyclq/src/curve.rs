//! Points `(x, y, μ)` on the chiral Potts curve and their derived constants.

use std::f64::consts::PI;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tensorcore::C64;
use crate::weyl::RootOfUnity;

/// Relative residual bound for curve membership.
pub const CURVE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Modulus {
    pub k: C64,
    pub kprime: C64,
}

impl Modulus {
    /// `k' = sqrt(1 - k²)` on the principal branch.
    pub fn new(k: C64) -> Result<Self> {
        let m = Self { k, kprime: (C64::new(1.0, 0.0) - k * k).sqrt() };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        let one = C64::new(1.0, 0.0);
        if !finite(self.k) || !finite(self.kprime) {
            return Err(Error::OffCurve("non-finite modulus".into()));
        }
        if self.k.norm() < 1e-12 || self.kprime.norm() < 1e-12 {
            return Err(Error::Degenerate("k or k' vanishes".into()));
        }
        let r = (self.k * self.k + self.kprime * self.kprime - one).norm();
        if r > 1e-12 * (1.0 + self.k.norm_sqr() + self.kprime.norm_sqr()) {
            return Err(Error::OffCurve(format!("k^2 + k'^2 - 1 = {r:.3e}")));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Couplings {
    pub kappa0: C64,
    pub kappa1: C64,
}

impl Couplings {
    pub fn new(kappa0: C64, kappa1: C64) -> Result<Self> {
        if !finite(kappa0) || !finite(kappa1) || kappa0.norm() == 0.0 || kappa1.norm() == 0.0 {
            return Err(Error::Invalid("couplings must be finite and nonzero".into()));
        }
        Ok(Self { kappa0, kappa1 })
    }
}

impl Default for Couplings {
    fn default() -> Self {
        Self { kappa0: C64::new(1.0, 0.0), kappa1: C64::new(1.0, 0.0) }
    }
}

/// Choice between a principal square root and its negative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    #[default]
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn flipped(self, flip: bool) -> Self {
        match (self, flip) {
            (s, false) => s,
            (Sign::Plus, true) => Sign::Minus,
            (Sign::Minus, true) => Sign::Plus,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    #[serde(flatten)]
    pub modulus: Modulus,
    pub x: C64,
    pub y: C64,
    pub mu: C64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveResidual {
    /// `x^N + y^N = k(1 + x^N y^N)`.
    pub curve: f64,
    /// `μ^N = k' / (1 - k x^N)`.
    pub mu_x: f64,
    /// `μ^N = (1 - k y^N) / k'`.
    pub mu_y: f64,
}

impl CurveResidual {
    pub fn max(&self) -> f64 {
        self.curve.max(self.mu_x).max(self.mu_y)
    }

    pub fn pass(&self) -> bool {
        self.max() <= CURVE_TOL
    }
}

fn finite(z: C64) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

fn powu(z: C64, n: usize) -> C64 {
    z.powu(n as u32)
}

impl CurvePoint {
    pub fn validate(&self, root: &RootOfUnity) -> CurveResidual {
        let n = root.n();
        let one = C64::new(1.0, 0.0);
        let Modulus { k, kprime } = self.modulus;
        let (xn, yn, mun) = (powu(self.x, n), powu(self.y, n), powu(self.mu, n));
        let lhs = xn + yn;
        let rhs = k * (one + xn * yn);
        let curve = (lhs - rhs).norm() / (xn.norm() + yn.norm() + rhs.norm()).max(f64::MIN_POSITIVE);
        let mu_x = (mun * (one - k * xn) - kprime).norm() / (mun.norm() * (one - k * xn).norm() + kprime.norm());
        let mu_y = (mun * kprime - (one - k * yn)).norm() / (mun.norm() * kprime.norm() + (one - k * yn).norm());
        let bad = |r: f64| if r.is_finite() { r } else { f64::INFINITY };
        CurveResidual { curve: bad(curve), mu_x: bad(mu_x), mu_y: bad(mu_y) }
    }

    /// Parse `{k, kprime, x, y, mu}` with `[re, im]` pairs and check curve membership.
    pub fn from_json(s: &str, root: &RootOfUnity) -> Result<Self> {
        let p: CurvePoint = serde_json::from_str(s).map_err(|e| Error::Invalid(e.to_string()))?;
        p.checked(root)
    }

    pub fn checked(self, root: &RootOfUnity) -> Result<Self> {
        self.modulus.validate()?;
        if [self.x, self.y, self.mu].iter().any(|v| !finite(*v) || v.norm() == 0.0) {
            return Err(Error::OffCurve("coordinates must be finite and nonzero".into()));
        }
        let r = self.validate(root);
        if !r.pass() {
            return Err(Error::OffCurve(format!("residual {:.3e}", r.max())));
        }
        Ok(self)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("curve point serializes")
    }

    /// `(x q^{±1}, y q^{±1}, μ q^{±1})`.
    pub fn shift(&self, root: &RootOfUnity, sign: i64) -> Self {
        let f = root.pow(sign);
        Self { modulus: self.modulus, x: self.x * f, y: self.y * f, mu: self.mu * f }
    }

    /// Principal `sqrt(x / y)`; invariant under [`CurvePoint::shift`].
    pub fn eta(&self) -> C64 {
        (self.x / self.y).sqrt()
    }
}

/// Solve for `y` and `μ` given `x`, choosing the N-th root branches `q^{branch}`.
pub fn lift_x(root: &RootOfUnity, modulus: Modulus, x: C64, branch_y: i64, branch_mu: i64) -> Result<CurvePoint> {
    let n = root.n();
    let one = C64::new(1.0, 0.0);
    let k = modulus.k;
    let xn = powu(x, n);
    let den = one - k * xn;
    if den.norm() < 1e-12 {
        return Err(Error::Degenerate("1 - k x^N vanishes".into()));
    }
    let yn = (k - xn) / den;
    if yn.norm() < 1e-12 {
        return Err(Error::Degenerate("k - x^N vanishes".into()));
    }
    let mun = modulus.kprime / den;
    let inv = 1.0 / n as f64;
    let y = yn.powf(inv) * root.pow(branch_y);
    let mu = mun.powf(inv) * root.pow(branch_mu);
    CurvePoint { modulus, x, y, mu }.checked(root)
}

/// `c0 = ±q·η_r·η_s`, a square root of `q² x_r x_s / (y_r y_s)`.
pub fn c0(root: &RootOfUnity, r: &CurvePoint, s: &CurvePoint, sign: Sign) -> C64 {
    root.q() * r.eta() * s.eta() * sign.value()
}

/// `z_s = ±sqrt(κ0 κ1 x_s y_s)`.
pub fn z_point(s: &CurvePoint, cc: &Couplings, sign: Sign) -> C64 {
    (cc.kappa0 * cc.kappa1 * s.x * s.y).sqrt() * sign.value()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SesConstants {
    pub c: C64,
    pub c_bar: C64,
    pub d: C64,
}

pub fn ses_constants(root: &RootOfUnity, s: &CurvePoint, cc: &Couplings, zs: C64) -> SesConstants {
    let q = root.q();
    SesConstants {
        c: -cc.kappa0 * s.x * s.mu * q * q / zs,
        c_bar: cc.kappa0 * s.y * q / zs,
        d: cc.kappa0 * s.y / (zs * q),
    }
}

/// `k` with `|k| ∈ [0.2, 0.8]` and uniform phase.
pub fn sample_modulus<R: Rng + ?Sized>(rng: &mut R) -> Modulus {
    loop {
        let k = C64::from_polar(rng.random_range(0.2..=0.8), rng.random_range(0.0..2.0 * PI));
        if let Ok(m) = Modulus::new(k) {
            return m;
        }
    }
}

/// `x` on the annulus `0.5 ≤ |x| ≤ 2` with random root branches.
pub fn sample_point<R: Rng + ?Sized>(rng: &mut R, root: &RootOfUnity, modulus: Modulus) -> Result<CurvePoint> {
    let n = root.n() as i64;
    let mut last = Error::Degenerate("no draw".into());
    for _ in 0..100 {
        let x = C64::from_polar(rng.random_range(0.5..=2.0), rng.random_range(0.0..2.0 * PI));
        match lift_x(root, modulus, x, rng.random_range(0..n), rng.random_range(0..n)) {
            Ok(p) => return Ok(p),
            Err(e) => last = e,
        }
    }
    Err(last)
}
