//! Twisted-trace transfer matrices and Q-operators on `V^{⊗M}` and `W^{⊗M}`.
//!
//! The auxiliary space is tensor slot 0 and the sites are slots `1..=M`.
//! Monodromies are ordered `L^{0M} ⋯ L^{01}`, so site 1 acts first.

use crate::curve::{c0, CurvePoint, Couplings, Sign};
use crate::error::{Error, Result};
use crate::intertwiners::{a_check, b_check, r_check};
use crate::lops::{l_bold, l_omega, l_phi, l_rho, l_rhobar, l_bar_std, l_std, r6v};
use crate::reps::{omega, phi, rho, rhobar, Rep, T1Shape};
use crate::tensorcore::{
    check_budget, cyclic_shift, diag, embed_pair, identity, kron, mat_pow, partial_trace_first, swap, CMat, C64,
};
use crate::weyl::{RootOfUnity, WeylPair};

/// Insertion of `t1^α` (fractional) or `t1^k` (integer power) in the auxiliary trace.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Twist {
    Frac(f64),
    Power(i64),
}

impl Twist {
    pub fn alpha(&self) -> f64 {
        match *self {
            Twist::Frac(a) => a,
            Twist::Power(k) => k as f64,
        }
    }

    /// Fractional twist; rejects `2α ∈ ℤ`.
    pub fn frac(alpha: f64) -> Result<Self> {
        if !alpha.is_finite() || (2.0 * alpha - (2.0 * alpha).round()).abs() < 1e-12 {
            return Err(Error::IntegerTwist(alpha));
        }
        Ok(Twist::Frac(alpha))
    }
}

pub fn twist_matrix(rep: &Rep, root: &RootOfUnity, twist: Twist) -> Result<CMat> {
    let shape = rep.t1_shape.ok_or_else(|| Error::Invalid("representation has no t1 shape".into()))?;
    match twist {
        Twist::Power(k) => mat_pow(rep.act(crate::reps::Gen::T1)?, k),
        Twist::Frac(alpha) => Ok(match shape {
            T1Shape::Clock { scalar, power } => {
                let s = (scalar.ln() * alpha).exp();
                let v: Vec<C64> = (0..rep.dim).map(|j| s * root.pow_real(power as f64 * alpha * j as f64)).collect();
                diag(&v)
            }
            T1Shape::Eval => diag(&[root.pow_real(alpha), root.pow_real(-alpha)]),
        }),
    }
}

/// `rep(t1^α)`; `2α` must be non-integral.
pub fn twist_insertion(rep: &Rep, root: &RootOfUnity, alpha: f64) -> Result<CMat> {
    twist_matrix(rep, root, Twist::frac(alpha)?)
}

/// `Tr_0((D ⊗ 1) L^{0M} ⋯ L^{01})` for a two-slot operator `L` on `aux ⊗ site`.
pub fn chain_trace(twist: &CMat, l: &CMat, dim_aux: usize, dim_site: usize, sites: usize) -> Result<CMat> {
    let mono = monodromy(l, dim_aux, dim_site, sites)?;
    let rest = dim_site.pow(sites as u32);
    partial_trace_first(&(kron(twist, &identity(rest)) * mono), dim_aux, rest)
}

/// `L^{0M} ⋯ L^{01}` on `aux ⊗ site^{⊗M}`.
pub fn monodromy(l: &CMat, dim_aux: usize, dim_site: usize, sites: usize) -> Result<CMat> {
    if sites == 0 {
        return Err(Error::Invalid("chain needs at least one site".into()));
    }
    let mut dims = vec![dim_site; sites + 1];
    dims[0] = dim_aux;
    let total: usize = dims.iter().product();
    check_budget(total)?;
    let mut mono = identity(total);
    for i in 1..=sites {
        mono = embed_pair(l, &dims, 0, i)? * mono;
    }
    Ok(mono)
}

/// `S_z = Σ σ_z^i`; site basis index 0 is spin up.
pub fn sz_values(sites: usize) -> Vec<i64> {
    (0..1usize << sites)
        .map(|idx| (0..sites).map(|b| if idx >> b & 1 == 0 { 1 } else { -1 }).sum())
        .collect()
}

pub fn sz_operator(sites: usize) -> CMat {
    let v: Vec<C64> = sz_values(sites).into_iter().map(|s| C64::new(s as f64, 0.0)).collect();
    diag(&v)
}

/// Largest entry of `op` between states whose `ΔS_z / 2` is not divisible by `N`.
pub fn charge_leak(op: &CMat, sites: usize, n: usize) -> f64 {
    let sz = sz_values(sites);
    let mut worst: f64 = 0.0;
    for (i, si) in sz.iter().enumerate() {
        for (j, sj) in sz.iter().enumerate() {
            if ((si - sj) / 2).rem_euclid(n as i64) != 0 {
                worst = worst.max(op[(i, j)].norm());
            }
        }
    }
    worst
}

/// Six-vertex transfer matrix on `V^{⊗M}` with `R = P·Ř(z)`.
pub fn t6v(root: &RootOfUnity, z: C64, sites: usize, twist: Twist) -> Result<CMat> {
    let p = crate::reps::pi(root, C64::new(1.0, 0.0))?;
    let d = twist_matrix(&p, root, twist)?;
    chain_trace(&d, &(swap(2, 2) * r6v(root, z)), 2, 2, sites)
}

pub fn q_rho(wp: &WeylPair, cc: &Couplings, r: &CurvePoint, w: C64, sites: usize, twist: Twist) -> Result<CMat> {
    let d = twist_matrix(&rho(wp, r, cc)?, wp.root(), twist)?;
    chain_trace(&d, &l_rho(wp, cc, r, w).matrix(), wp.n(), 2, sites)
}

pub fn q_rhobar(wp: &WeylPair, cc: &Couplings, r: &CurvePoint, w: C64, sites: usize, twist: Twist) -> Result<CMat> {
    let d = twist_matrix(&rhobar(wp, r, cc)?, wp.root(), twist)?;
    chain_trace(&d, &l_rhobar(wp, cc, r, w).matrix(), wp.n(), 2, sites)
}

pub fn t_omega(
    wp: &WeylPair,
    cc: &Couplings,
    r: &CurvePoint,
    s: &CurvePoint,
    c0: C64,
    w: C64,
    sites: usize,
    twist: Twist,
) -> Result<CMat> {
    let d = twist_matrix(&omega(wp, r, s, cc, c0)?, wp.root(), twist)?;
    chain_trace(&d, &l_omega(wp, cc, r, s, w).matrix(), wp.n(), 2, sites)
}

pub fn t_phi(wp: &WeylPair, c: C64, sites: usize, twist: Twist) -> Result<CMat> {
    let d = twist_matrix(&phi(wp, c)?, wp.root(), twist)?;
    chain_trace(&d, &l_phi(wp).matrix(), wp.n(), 2, sites)
}

/// Diagonal of `T_φ = q^{-(S_z+M)/2} (q/c)^α (1 − q^{2αN}) / (1 − q^{2α − S_z})`.
pub fn t_phi_closed_diag(root: &RootOfUnity, c: C64, alpha: f64, sites: usize) -> Vec<C64> {
    let pref = ((root.q() / c).ln() * alpha).exp();
    sz_values(sites)
        .into_iter()
        .map(|s| {
            let up = (s + sites as i64) / 2;
            root.pow(-up) * pref * root.twisted_sum(alpha, -s)
        })
        .collect()
}

pub fn t_phi_closed(root: &RootOfUnity, c: C64, alpha: f64, sites: usize) -> CMat {
    diag(&t_phi_closed_diag(root, c, alpha, sites))
}

/// `T_φ⁻¹` from the closed form, sector by sector.
pub fn t_phi_closed_inverse(root: &RootOfUnity, c: C64, alpha: f64, sites: usize) -> Result<CMat> {
    let d = t_phi_closed_diag(root, c, alpha, sites);
    if let Some(v) = d.iter().find(|v| v.norm() < 1e-13) {
        return Err(Error::Singular { smin: v.norm() });
    }
    let inv: Vec<C64> = d.iter().map(|v| C64::new(1.0, 0.0) / v).collect();
    Ok(diag(&inv))
}

/// Untwisted `Q(z, μ) = Tr_W(L^M(z, μ) ⋯ L^1(z, μ))`.
pub fn q_std(wp: &WeylPair, z: C64, mu: C64, sites: usize) -> Result<CMat> {
    chain_trace(&wp.identity(), &l_std(wp, z, mu).matrix(), wp.n(), 2, sites)
}

pub fn q_bar_std(wp: &WeylPair, z: C64, mu: C64, sites: usize) -> Result<CMat> {
    chain_trace(&wp.identity(), &l_bar_std(wp, z, mu).matrix(), wp.n(), 2, sites)
}

/// `D^{S_z/2} · op · D^{-S_z/2}` on `V^{⊗M}`.
pub fn conjugate_sz(op: &CMat, d: C64, sites: usize) -> CMat {
    let sz = sz_values(sites);
    let mut out = op.clone();
    for (i, si) in sz.iter().enumerate() {
        for (j, sj) in sz.iter().enumerate() {
            out[(i, j)] *= d.powi(((si - sj) / 2) as i32);
        }
    }
    out
}

/// τ2 transfer matrix on `W^{⊗M}`: `Tr_V(π(t1^α) 𝐋^M ⋯ 𝐋^1)` with `𝐋 = P·Ľ_bold`.
pub fn tau2_transfer(
    wp: &WeylPair,
    cc: &Couplings,
    s: &CurvePoint,
    sp: &CurvePoint,
    z: C64,
    sites: usize,
    twist: Twist,
) -> Result<CMat> {
    let p = crate::reps::pi(wp.root(), C64::new(1.0, 0.0))?;
    let d = twist_matrix(&p, wp.root(), twist)?;
    let l = swap(wp.n(), 2) * l_bold(wp, cc, s, sp, z);
    chain_trace(&d, &l, 2, wp.n(), sites)
}

/// Parameters `(r, r'; s, s')` of the W-chain operators, with the `c0` branch of `Ω_{rr'}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quad {
    pub r: CurvePoint,
    pub rp: CurvePoint,
    pub s: CurvePoint,
    pub sp: CurvePoint,
    pub sign: Sign,
}

impl Quad {
    fn aux_twist(&self, wp: &WeylPair, cc: &Couplings, twist: Twist) -> Result<CMat> {
        let rep = omega(wp, &self.r, &self.rp, cc, c0(wp.root(), &self.r, &self.rp, self.sign))?;
        twist_matrix(&rep, wp.root(), twist)
    }

    pub fn with_rp(&self, rp: CurvePoint) -> Self {
        Self { rp, ..*self }
    }
}

/// `𝒬_{r'; ss'} = Tr_{W^0}((Ω_{rr'}(t1^α) ⊗ 1) B^{0M} ⋯ B^{01})` with `B = P·B̌`.
pub fn q_tau2(wp: &WeylPair, cc: &Couplings, quad: &Quad, sites: usize, twist: Twist) -> Result<CMat> {
    let n = wp.n();
    let d = quad.aux_twist(wp, cc, twist)?;
    let b = swap(n, n) * b_check(wp, &quad.rp, &quad.s, &quad.sp)?;
    chain_trace(&d, &b, n, n, sites)
}

/// Chiral Potts transfer matrix from `R = P·Ř(rr'; ss')`.
pub fn cp_transfer(wp: &WeylPair, cc: &Couplings, quad: &Quad, sites: usize, twist: Twist) -> Result<CMat> {
    let n = wp.n();
    let d = quad.aux_twist(wp, cc, twist)?;
    let r = swap(n, n) * r_check(wp, &quad.r, &quad.rp, &quad.s, &quad.sp)?;
    chain_trace(&d, &r, n, n, sites)
}

/// The same operator as `Tr((Ω(t1^α) ⊗ 1) 𝒜_{rs;s'} P^{(M)} ℬ_{r';ss'})`.
pub fn cp_transfer_factorized(
    wp: &WeylPair,
    cc: &Couplings,
    quad: &Quad,
    sites: usize,
    twist: Twist,
) -> Result<CMat> {
    let n = wp.n();
    let d = quad.aux_twist(wp, cc, twist)?;
    let a = swap(n, n) * a_check(wp, &quad.r, &quad.s, &quad.sp)?;
    let b = swap(n, n) * b_check(wp, &quad.rp, &quad.s, &quad.sp)?;
    let big_a = monodromy(&a, n, n, sites)?;
    let big_b = monodromy(&b, n, n, sites)?;
    let rest = n.pow(sites as u32);
    let full = kron(&d, &identity(rest)) * big_a * cyclic_shift(n, sites + 1) * big_b;
    partial_trace_first(&full, n, rest)
}
