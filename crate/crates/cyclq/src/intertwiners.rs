//! Chiral Potts intertwiners, the factorizing polynomials and the fusion maps.

use serde::{Deserialize, Serialize};

use crate::curve::{ses_constants, CurvePoint, Couplings};
use crate::error::{Error, Result};
use crate::tensorcore::{identity, inverse, kron, mat_pow, CMat, C64};
use crate::weights::{w_bar, w_hat, WeightTable};
use crate::weyl::WeylPair;

/// `T = Σ W̄(n) Z^{2n}` from a `W̄` table.
pub fn t_map(wp: &WeylPair, wb: &WeightTable) -> CMat {
    let z2 = wp.z_pow(2);
    let mut acc = CMat::zeros(wp.n(), wp.n());
    let mut p = wp.identity();
    for v in &wb.values {
        acc += &p * *v;
        p = &p * &z2;
    }
    acc
}

/// `S = Σ Ŵ(n) χ^n` from a `Ŵ` table.
pub fn s_map(wp: &WeylPair, wh: &WeightTable) -> CMat {
    let chi = wp.chi();
    let n2 = wp.n() * wp.n();
    let mut acc = CMat::zeros(n2, n2);
    let mut p = identity(n2);
    for v in &wh.values {
        acc += &p * *v;
        p = &p * &chi;
    }
    acc
}

pub fn t_rs(wp: &WeylPair, r: &CurvePoint, s: &CurvePoint) -> Result<CMat> {
    Ok(t_map(wp, &w_bar(wp.root(), r, s)?))
}

pub fn s_rs(wp: &WeylPair, r: &CurvePoint, s: &CurvePoint) -> Result<CMat> {
    Ok(s_map(wp, &w_hat(wp.root(), r, s)?))
}

/// `Ř(rr'; ss') = S_{rs'} (T_{rs} ⊗ T_{r's'}) S_{r's}`.
pub fn r_check(wp: &WeylPair, r: &CurvePoint, rp: &CurvePoint, s: &CurvePoint, sp: &CurvePoint) -> Result<CMat> {
    Ok(s_rs(wp, r, sp)? * kron(&t_rs(wp, r, s)?, &t_rs(wp, rp, sp)?) * s_rs(wp, rp, s)?)
}

/// `B̌_{r'; ss'} = (1 ⊗ T_{r's'}) S_{r's}`.
pub fn b_check(wp: &WeylPair, rp: &CurvePoint, s: &CurvePoint, sp: &CurvePoint) -> Result<CMat> {
    Ok(kron(&wp.identity(), &t_rs(wp, rp, sp)?) * s_rs(wp, rp, s)?)
}

/// `Ǎ_{rr'; s} = S_{rs} (T_{rr'} ⊗ 1)`.
pub fn a_check(wp: &WeylPair, r: &CurvePoint, rp: &CurvePoint, s: &CurvePoint) -> Result<CMat> {
    Ok(s_rs(wp, r, s)? * kron(&t_rs(wp, r, rp)?, &wp.identity()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PolyKind {
    Chi,
    ZSquared,
}

/// `Σ_n a_n G^n` with `G = χ` or `G = Z²`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyOp {
    pub coeffs: Vec<C64>,
    pub kind: PolyKind,
}

impl PolyOp {
    /// `Σ_n a_n λ^n G^n`.
    pub fn eval_scaled(&self, wp: &WeylPair, lambda: C64) -> CMat {
        let g = match self.kind {
            PolyKind::Chi => wp.chi(),
            PolyKind::ZSquared => wp.z_pow(2),
        };
        let d = g.nrows();
        let mut acc = CMat::zeros(d, d);
        let mut p = identity(d);
        let mut l = C64::new(1.0, 0.0);
        for a in &self.coeffs {
            acc += &p * (*a * l);
            p = &p * &g;
            l *= lambda;
        }
        acc
    }

    pub fn eval(&self, wp: &WeylPair) -> CMat {
        self.eval_scaled(wp, C64::new(1.0, 0.0))
    }

    pub fn eval_scalar(&self, x: C64) -> C64 {
        self.coeffs.iter().rev().fold(C64::new(0.0, 0.0), |acc, a| acc * x + a)
    }
}

/// `O(χ)` with `a_n = q^{-n²}`.
pub fn o_poly(wp: &WeylPair) -> PolyOp {
    let root = wp.root();
    let coeffs = (0..wp.n() as i64).map(|n| root.pow(-n * n)).collect();
    PolyOp { coeffs, kind: PolyKind::Chi }
}

/// Inverse of a circulant polynomial through its eigenvalues `O(q^j)`.
pub fn o_inverse(wp: &WeylPair, o: &PolyOp) -> Result<PolyOp> {
    let root = wp.root();
    let n = wp.n() as i64;
    let base = |j: i64| match o.kind {
        PolyKind::Chi => root.pow(j),
        PolyKind::ZSquared => root.pow(2 * j),
    };
    let eig: Vec<C64> = (0..n).map(|j| o.eval_scalar(base(j))).collect();
    if let Some(e) = eig.iter().find(|e| e.norm() < 1e-10) {
        return Err(Error::Singular { smin: e.norm() });
    }
    let coeffs = (0..n)
        .map(|k| (0..n).map(|j| base(-j * k) / eig[j as usize]).sum::<C64>() / n as f64)
        .collect();
    Ok(PolyOp { coeffs, kind: o.kind })
}

/// `P(Z)` with `p_0 = 1` and `p_n = q^{-2(n-1)} p_{n-1}`, so that `P(Z) = Z² P(q⁻¹Z)`.
pub fn p_poly(wp: &WeylPair) -> Result<PolyOp> {
    let root = wp.root();
    let n = wp.n() as i64;
    let mut coeffs = vec![C64::new(1.0, 0.0)];
    for k in 1..n {
        let prev = coeffs[(k - 1) as usize];
        coeffs.push(prev * root.pow(-2 * (k - 1)));
    }
    let around = coeffs[(n - 1) as usize] * root.pow(-2 * (n - 1));
    if (around - C64::new(1.0, 0.0)).norm() > 1e-10 {
        return Err(Error::Degenerate("P(Z) recursion does not close".into()));
    }
    Ok(PolyOp { coeffs, kind: PolyKind::ZSquared })
}

/// `𝔗_rs = O(χ) (T_rs ⊗ 1) O⁻¹(χ)`.
pub fn frak_t(wp: &WeylPair, r: &CurvePoint, s: &CurvePoint) -> Result<CMat> {
    let o = o_poly(wp);
    let oi = o_inverse(wp, &o)?;
    Ok(o.eval(wp) * kron(&t_rs(wp, r, s)?, &wp.identity()) * oi.eval(wp))
}

/// `𝒮_rs = (P(Z)⁻¹ ⊗ 1) S_rs (P(Z) ⊗ 1)`.
pub fn cal_s(wp: &WeylPair, r: &CurvePoint, s: &CurvePoint) -> Result<CMat> {
    let p = p_poly(wp)?.eval(wp);
    let pi = inverse(&p)?;
    let id = wp.identity();
    Ok(kron(&pi, &id) * s_rs(wp, r, s)? * kron(&p, &id))
}

/// The six maps of the three short exact sequences, on `W ⊗ V` with `V` minor.
#[derive(Debug, Clone, PartialEq)]
pub struct SesMaps {
    pub iota: CMat,
    pub tau: CMat,
    pub iota_bar: CMat,
    pub tau_bar: CMat,
    pub i_bar: CMat,
    pub t_bar: CMat,
}

/// Column `W → W ⊗ V` from two `N×N` blocks.
pub fn column_map(top: &CMat, bottom: &CMat) -> CMat {
    let n = top.nrows();
    let mut m = CMat::zeros(2 * n, n);
    for (a, blk) in [top, bottom].into_iter().enumerate() {
        for i in 0..n {
            for j in 0..n {
                m[(2 * i + a, j)] = blk[(i, j)];
            }
        }
    }
    m
}

/// Row `W ⊗ V → W` from two `N×N` blocks.
pub fn row_map(left: &CMat, right: &CMat) -> CMat {
    let n = left.nrows();
    let mut m = CMat::zeros(n, 2 * n);
    for (b, blk) in [left, right].into_iter().enumerate() {
        for i in 0..n {
            for j in 0..n {
                m[(i, 2 * j + b)] = blk[(i, j)];
            }
        }
    }
    m
}

pub fn ses_maps(wp: &WeylPair, s: &CurvePoint, cc: &Couplings, zs: C64) -> Result<SesMaps> {
    let q = wp.q();
    let k = ses_constants(wp.root(), s, cc, zs);
    if [k.c, k.c_bar, k.d].iter().any(|v| !v.re.is_finite() || !v.im.is_finite() || v.norm() == 0.0) {
        return Err(Error::Degenerate("SES constants must be finite and nonzero".into()));
    }
    let id = wp.identity();
    let z = wp.z();
    let xz = wp.x() * wp.z_inv();
    let xz2 = wp.x() * mat_pow(wp.z(), -2)?;
    Ok(SesMaps {
        iota: column_map(&(z * k.c), &xz),
        tau: row_map(&(&xz * (-q / k.c)), z),
        iota_bar: column_map(&(&id * k.c_bar), &xz2),
        tau_bar: row_map(&(&xz2 * (-1.0 / k.c_bar)), &id),
        i_bar: column_map(&(&id * k.d), wp.x()),
        t_bar: row_map(&(-wp.x()), &(&id * k.d)),
    })
}
