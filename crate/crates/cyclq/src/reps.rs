//! Generators, coproducts and the concrete cyclic, Borel and evaluation representations.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::curve::{c0 as c0_of, CurvePoint, Couplings, Sign};
use crate::error::{Error, Result};
use crate::tensorcore::{frob, identity, inverse, kron, CMat, C64};
use crate::weyl::{RootOfUnity, WeylPair};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Gen {
    E0,
    E1,
    F0,
    F1,
    T0,
    T0inv,
    T1,
    T1inv,
    Z0,
    Z1,
}

impl Gen {
    pub const ALL: [Gen; 10] =
        [Gen::E0, Gen::E1, Gen::F0, Gen::F1, Gen::T0, Gen::T0inv, Gen::T1, Gen::T1inv, Gen::Z0, Gen::Z1];
    pub const BOREL: [Gen; 8] = [Gen::E0, Gen::E1, Gen::T0, Gen::T0inv, Gen::T1, Gen::T1inv, Gen::Z0, Gen::Z1];

    pub fn index(self) -> usize {
        Self::ALL.iter().position(|g| *g == self).unwrap_or(0)
    }

    pub fn is_borel(self) -> bool {
        !matches!(self, Gen::F0 | Gen::F1)
    }

    pub fn name(self) -> &'static str {
        match self {
            Gen::E0 => "e0",
            Gen::E1 => "e1",
            Gen::F0 => "f0",
            Gen::F1 => "f1",
            Gen::T0 => "t0",
            Gen::T0inv => "t0inv",
            Gen::T1 => "t1",
            Gen::T1inv => "t1inv",
            Gen::Z0 => "z0",
            Gen::Z1 => "z1",
        }
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Full,
    Borel,
}

/// Shape of the `t1` image, used to build fractional twists.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum T1Shape {
    /// `t1 = scalar · Z^power` on `W`.
    Clock { scalar: C64, power: i64 },
    /// `t1 = diag(q, q⁻¹)` on the two-dimensional evaluation module.
    Eval,
}

/// Serializable description of a base representation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "rep", rename_all = "snake_case")]
pub enum RepParams {
    Omega { r: CurvePoint, s: CurvePoint, couplings: Couplings, c0: C64 },
    Rho { r: CurvePoint, couplings: Couplings },
    RhoBar { r: CurvePoint, couplings: Couplings },
    Phi { c: C64 },
    Pi { z: C64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RepLabel {
    pub root: RootOfUnity,
    #[serde(flatten)]
    pub params: RepParams,
}

impl RepLabel {
    pub fn from_json(s: &str) -> Result<Self> {
        let label: RepLabel = serde_json::from_str(s).map_err(|e| Error::Invalid(e.to_string()))?;
        label.build()?;
        Ok(label)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("label serializes")
    }

    /// Rejects orders whose tensor square exceeds the dense budget.
    pub fn build(&self) -> Result<Rep> {
        let n = self.root.n();
        crate::tensorcore::check_budget(n * n)?;
        let wp = WeylPair::new(self.root);
        match &self.params {
            RepParams::Omega { r, s, couplings, c0 } => {
                omega(&wp, &r.checked(&self.root)?, &s.checked(&self.root)?, couplings, *c0)
            }
            RepParams::Rho { r, couplings } => rho(&wp, &r.checked(&self.root)?, couplings),
            RepParams::RhoBar { r, couplings } => rhobar(&wp, &r.checked(&self.root)?, couplings),
            RepParams::Phi { c } => phi(&wp, *c),
            RepParams::Pi { z } => pi(&self.root, *z),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Rep {
    pub dim: usize,
    pub kind: Kind,
    pub label: Option<RepLabel>,
    pub t1_shape: Option<T1Shape>,
    images: Vec<Option<CMat>>,
}

impl Rep {
    fn from_images(kind: Kind, label: Option<RepLabel>, t1_shape: Option<T1Shape>, list: Vec<(Gen, CMat)>) -> Self {
        let dim = list[0].1.nrows();
        let mut images = vec![None; Gen::ALL.len()];
        for (g, m) in list {
            images[g.index()] = Some(m);
        }
        Self { dim, kind, label, t1_shape, images }
    }

    pub fn act(&self, g: Gen) -> Result<&CMat> {
        self.images[g.index()].as_ref().ok_or(Error::NotBorel(g.name()))
    }

    pub fn has(&self, g: Gen) -> bool {
        self.images[g.index()].is_some()
    }

    /// `(a ⊗ b)Δ(g)` for every generator available in both factors.
    pub fn tensor(a: &Rep, b: &Rep) -> Rep {
        Self::tensor_with(a, b, coproduct)
    }

    /// `(a ⊗ b)Δ^op(g)` for every generator available in both factors.
    pub fn tensor_op(a: &Rep, b: &Rep) -> Rep {
        Self::tensor_with(a, b, coproduct_op)
    }

    fn tensor_with(a: &Rep, b: &Rep, f: fn(&Rep, &Rep, Gen) -> Result<CMat>) -> Rep {
        let kind = if a.kind == Kind::Full && b.kind == Kind::Full { Kind::Full } else { Kind::Borel };
        let list = Gen::ALL.iter().filter_map(|g| f(a, b, *g).ok().map(|m| (*g, m))).collect();
        Self::from_images(kind, None, None, list)
    }
}

fn borel_gen_check(a: &Rep, b: &Rep, g: Gen) -> Result<()> {
    if !g.is_borel() && (a.kind == Kind::Borel || b.kind == Kind::Borel) {
        return Err(Error::NotBorel(g.name()));
    }
    Ok(())
}

fn parts(g: Gen) -> (Gen, Gen, Gen) {
    match g {
        Gen::E0 | Gen::F0 => (Gen::T0, Gen::T0inv, Gen::Z0),
        _ => (Gen::T1, Gen::T1inv, Gen::Z1),
    }
}

/// `Δ(e_i) = e_i⊗1 + z_i t_i⊗e_i`, `Δ(f_i) = f_i⊗t_i⁻¹ + z_i⁻¹⊗f_i`, group-like otherwise.
pub fn coproduct(a: &Rep, b: &Rep, g: Gen) -> Result<CMat> {
    borel_gen_check(a, b, g)?;
    let (t, tinv, z) = parts(g);
    Ok(match g {
        Gen::E0 | Gen::E1 => kron(a.act(g)?, &identity(b.dim)) + kron(&(a.act(z)? * a.act(t)?), b.act(g)?),
        Gen::F0 | Gen::F1 => kron(a.act(g)?, b.act(tinv)?) + kron(&inverse(a.act(z)?)?, b.act(g)?),
        _ => kron(a.act(g)?, b.act(g)?),
    })
}

/// Opposite coproduct: the two legs of every term exchanged.
pub fn coproduct_op(a: &Rep, b: &Rep, g: Gen) -> Result<CMat> {
    borel_gen_check(a, b, g)?;
    let (t, tinv, z) = parts(g);
    Ok(match g {
        Gen::E0 | Gen::E1 => kron(&identity(a.dim), b.act(g)?) + kron(a.act(g)?, &(b.act(z)? * b.act(t)?)),
        Gen::F0 | Gen::F1 => kron(a.act(tinv)?, b.act(g)?) + kron(a.act(g)?, &inverse(b.act(z)?)?),
        _ => kron(a.act(g)?, b.act(g)?),
    })
}

/// `max_g ‖map·src(g) − dst(g)·map‖ / ‖map‖`.
pub fn intertwiner_residual(map: &CMat, src: &Rep, dst: &Rep, gens: &[Gen]) -> Result<f64> {
    if map.ncols() != src.dim || map.nrows() != dst.dim {
        return Err(Error::Dimension(format!(
            "map {}x{} between dims {} and {}",
            map.nrows(),
            map.ncols(),
            src.dim,
            dst.dim
        )));
    }
    let norm = frob(map);
    let mut worst: f64 = 0.0;
    for g in gens {
        let r = frob(&(map * src.act(*g)? - dst.act(*g)? * map));
        worst = worst.max(if norm > 0.0 { r / norm } else { r });
    }
    Ok(worst)
}

fn q_minus_qinv(root: &RootOfUnity) -> C64 {
    root.q() - root.pow(-1)
}

pub fn omega(wp: &WeylPair, r: &CurvePoint, s: &CurvePoint, cc: &Couplings, c0: C64) -> Result<Rep> {
    let root = wp.root();
    let q = root.q();
    let target = q * q * r.x * s.x / (r.y * s.y);
    if (c0 * c0 - target).norm() > 1e-9 * target.norm() {
        return Err(Error::Invalid(format!("c0 = {c0} does not square to {target}")));
    }
    let d = q_minus_qinv(root);
    let id = wp.identity();
    let z2 = wp.z_pow(2);
    let zm2 = wp.z_pow(-2);
    let a = wp.x_inv() * (&zm2 * (s.y / (r.x * r.mu * s.mu)) - &id);
    let b = (&z2 * (s.x * r.mu * s.mu / r.y) - &id) * wp.x();
    let t0s = c0 * r.y * s.y / (q * q * r.x * s.x * r.mu * s.mu);
    let label = RepLabel { root: *root, params: RepParams::Omega { r: *r, s: *s, couplings: *cc, c0 } };
    Ok(Rep::from_images(
        Kind::Full,
        Some(label),
        Some(T1Shape::Clock { scalar: 1.0 / t0s, power: 2 }),
        vec![
            (Gen::E0, &a * (cc.kappa0 * r.x / d)),
            (Gen::E1, &b * (cc.kappa1 * r.y / d)),
            (Gen::F0, &b * (c0 * r.y / (q * cc.kappa0 * r.x * s.x * d))),
            (Gen::F1, &a * (c0 / (q * cc.kappa1 * s.x * d))),
            (Gen::T0, &zm2 * t0s),
            (Gen::T0inv, &z2 / t0s),
            (Gen::T1, &z2 / t0s),
            (Gen::T1inv, &zm2 * t0s),
            (Gen::Z0, &id * c0),
            (Gen::Z1, &id / c0),
        ],
    ))
}

/// `Ω_rs` with `c0` chosen by [`crate::curve::c0`].
pub fn omega_signed(wp: &WeylPair, r: &CurvePoint, s: &CurvePoint, cc: &Couplings, sign: Sign) -> Result<Rep> {
    omega(wp, r, s, cc, c0_of(wp.root(), r, s, sign))
}

fn borel_clock(wp: &WeylPair, label: RepLabel, e0: CMat, e1: CMat, t1_scalar: C64) -> Rep {
    let id = wp.identity();
    let z2 = wp.z_pow(2);
    let zm2 = wp.z_pow(-2);
    Rep::from_images(
        Kind::Borel,
        Some(label),
        Some(T1Shape::Clock { scalar: t1_scalar, power: 2 }),
        vec![
            (Gen::E0, e0),
            (Gen::E1, e1),
            (Gen::T0, &zm2 / t1_scalar),
            (Gen::T0inv, &z2 * t1_scalar),
            (Gen::T1, &z2 * t1_scalar),
            (Gen::T1inv, &zm2 / t1_scalar),
            (Gen::Z0, id.clone()),
            (Gen::Z1, id),
        ],
    )
}

pub fn rho(wp: &WeylPair, r: &CurvePoint, cc: &Couplings) -> Result<Rep> {
    let root = wp.root();
    let d = q_minus_qinv(root);
    let label = RepLabel { root: *root, params: RepParams::Rho { r: *r, couplings: *cc } };
    Ok(borel_clock(
        wp,
        label,
        wp.x_inv() * (-cc.kappa0 * r.x / d),
        wp.x() * (-cc.kappa1 * r.y / d),
        root.q() * r.mu,
    ))
}

pub fn rhobar(wp: &WeylPair, r: &CurvePoint, cc: &Couplings) -> Result<Rep> {
    let root = wp.root();
    let d = q_minus_qinv(root);
    let label = RepLabel { root: *root, params: RepParams::RhoBar { r: *r, couplings: *cc } };
    Ok(borel_clock(
        wp,
        label,
        wp.x_inv() * (cc.kappa0 * r.y / (r.mu * d)),
        wp.x() * (cc.kappa1 * r.x * r.mu / d),
        r.mu,
    ))
}

pub fn phi(wp: &WeylPair, c: C64) -> Result<Rep> {
    if c.norm() == 0.0 || !c.re.is_finite() || !c.im.is_finite() {
        return Err(Error::Invalid("phi requires a finite nonzero c".into()));
    }
    let root = wp.root();
    let n = wp.n();
    let label = RepLabel { root: *root, params: RepParams::Phi { c } };
    let mut rep = borel_clock(wp, label, CMat::zeros(n, n), CMat::zeros(n, n), root.q() / c);
    rep.images[Gen::Z0.index()] = Some(wp.identity() / c);
    rep.images[Gen::Z1.index()] = Some(wp.identity() * c);
    Ok(rep)
}

pub fn pi(root: &RootOfUnity, z: C64) -> Result<Rep> {
    if z.norm() == 0.0 || !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::Invalid("pi requires a finite nonzero z".into()));
    }
    let q = root.q();
    let o = C64::new(0.0, 0.0);
    let one = C64::new(1.0, 0.0);
    let m = |a: C64, b: C64, c: C64, d: C64| CMat::from_row_slice(2, 2, &[a, b, c, d]);
    let label = RepLabel { root: *root, params: RepParams::Pi { z } };
    Ok(Rep::from_images(
        Kind::Full,
        Some(label),
        Some(T1Shape::Eval),
        vec![
            (Gen::E0, m(o, o, z, o)),
            (Gen::E1, m(o, z, o, o)),
            (Gen::F0, m(o, one / z, o, o)),
            (Gen::F1, m(o, o, one / z, o)),
            (Gen::T0, m(one / q, o, o, q)),
            (Gen::T0inv, m(q, o, o, one / q)),
            (Gen::T1, m(q, o, o, one / q)),
            (Gen::T1inv, m(one / q, o, o, q)),
            (Gen::Z0, identity(2)),
            (Gen::Z1, identity(2)),
        ],
    ))
}
