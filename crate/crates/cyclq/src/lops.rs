//! L-operators in bracket form, the six-vertex `Ř`, the inverse-normalized bold L and gauge fixing.

use crate::curve::{CurvePoint, Couplings};
use crate::tensorcore::{identity, kron, swap, CMat, C64};
use crate::weyl::{RootOfUnity, WeylPair};

pub type Mat2 = [[C64; 2]; 2];

pub fn mat2(a: C64, b: C64, c: C64, d: C64) -> Mat2 {
    [[a, b], [c, d]]
}

pub fn eye2() -> Mat2 {
    let (o, l) = (C64::new(0.0, 0.0), C64::new(1.0, 0.0));
    mat2(l, o, o, l)
}

pub fn mul2(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = [[C64::new(0.0, 0.0); 2]; 2];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            *v = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

pub fn det2(a: &Mat2) -> C64 {
    a[0][0] * a[1][1] - a[0][1] * a[1][0]
}

/// An operator on `W ⊗ V` stored as a 2×2 array of `N×N` blocks indexed by `V`.
#[derive(Debug, Clone, PartialEq)]
pub struct LOp {
    pub blocks: [[CMat; 2]; 2],
}

impl LOp {
    pub fn n(&self) -> usize {
        self.blocks[0][0].nrows()
    }

    /// The `2N×2N` matrix on `W ⊗ V`.
    pub fn matrix(&self) -> CMat {
        let n = self.n();
        let mut m = CMat::zeros(2 * n, 2 * n);
        for a in 0..2 {
            for b in 0..2 {
                let blk = &self.blocks[a][b];
                for i in 0..n {
                    for j in 0..n {
                        m[(2 * i + a, 2 * j + b)] = blk[(i, j)];
                    }
                }
            }
        }
        m
    }

    /// `Ľ = P·L : W ⊗ V → V ⊗ W`.
    pub fn check(&self) -> CMat {
        swap(self.n(), 2) * self.matrix()
    }
}

fn block_diag(a: &CMat, b: &CMat) -> [[CMat; 2]; 2] {
    let n = a.nrows();
    [[a.clone(), CMat::zeros(n, n)], [CMat::zeros(n, n), b.clone()]]
}

fn block_mul(a: &[[CMat; 2]; 2], b: &[[CMat; 2]; 2]) -> [[CMat; 2]; 2] {
    let e = |i: usize, j: usize| &a[i][0] * &b[0][j] + &a[i][1] * &b[1][j];
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

fn scalar_blocks(wp: &WeylPair, m: &Mat2) -> [[CMat; 2]; 2] {
    let id = wp.identity();
    [[&id * m[0][0], &id * m[0][1]], [&id * m[1][0], &id * m[1][1]]]
}

/// `{A, B} = diag(X⁻¹, 1) · A · diag(Z⁻¹, Z) · B · diag(X, 1)`.
pub fn bracket(a: &Mat2, b: &Mat2, wp: &WeylPair) -> LOp {
    let id = wp.identity();
    let left = block_diag(wp.x_inv(), &id);
    let mid = block_diag(wp.z_inv(), wp.z());
    let right = block_diag(wp.x(), &id);
    let prod = block_mul(
        &block_mul(&block_mul(&block_mul(&left, &scalar_blocks(wp, a)), &mid), &scalar_blocks(wp, b)),
        &right,
    );
    LOp { blocks: prod }
}

pub fn u_mat(r: &CurvePoint, z: C64, cc: &Couplings) -> Mat2 {
    mat2(z, cc.kappa0 * r.x * r.mu, cc.kappa1 * r.y, z * r.mu)
}

pub fn v_mat(root: &RootOfUnity, r: &CurvePoint, z: C64, cc: &Couplings) -> Mat2 {
    let q = root.q();
    mat2(-q * z, cc.kappa0 * r.y, q * cc.kappa1 * r.x * r.mu, -z * r.mu)
}

pub fn l_omega(wp: &WeylPair, cc: &Couplings, r: &CurvePoint, s: &CurvePoint, z: C64) -> LOp {
    bracket(&u_mat(r, z, cc), &v_mat(wp.root(), s, z, cc), wp)
}

pub fn l_rho(wp: &WeylPair, cc: &Couplings, r: &CurvePoint, z: C64) -> LOp {
    bracket(&u_mat(r, z, cc), &eye2(), wp)
}

pub fn l_rhobar(wp: &WeylPair, cc: &Couplings, r: &CurvePoint, z: C64) -> LOp {
    bracket(&v_mat(wp.root(), r, z, cc), &eye2(), wp)
}

pub fn l_phi(wp: &WeylPair) -> LOp {
    bracket(&eye2(), &eye2(), wp)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct R6v {
    pub z: C64,
    pub a: C64,
    pub b: C64,
    pub c: C64,
}

impl R6v {
    pub fn new(root: &RootOfUnity, z: C64) -> Self {
        let q = root.q();
        let one = C64::new(1.0, 0.0);
        Self { z, a: one - q * q * z * z, b: q * (one - z * z), c: z * (one - q * q) }
    }

    /// Rows and columns ordered `00, 01, 10, 11`.
    pub fn matrix(&self) -> CMat {
        let o = C64::new(0.0, 0.0);
        let (a, b, c) = (self.a, self.b, self.c);
        CMat::from_row_slice(4, 4, &[a, o, o, o, o, c, b, o, o, b, c, o, o, o, o, a])
    }
}

pub fn r6v(root: &RootOfUnity, z: C64) -> CMat {
    R6v::new(root, z).matrix()
}

/// Bold `Ľ_{ss'}(z) : V ⊗ W → W ⊗ V`, the inverse of `Ľ_{Ω_{ss'}}(z)` up to [`l_bold_scale`].
pub fn l_bold(wp: &WeylPair, cc: &Couplings, s: &CurvePoint, sp: &CurvePoint, z: C64) -> CMat {
    let n = wp.n();
    let q = wp.q();
    let (k0, k1) = (cc.kappa0, cc.kappa1);
    let (zi, zz) = (wp.z_inv(), wp.z());
    let mm = s.mu * sp.mu;
    let m00 = zi * (s.y * sp.y * k0 * k1) - zz * (q * q * z * z * mm);
    let m01 = (zi * (-sp.y) + zz * (s.x * mm)) * (q * z * k0);
    let m10 = (zi * s.y - zz * (q * q * sp.x * mm)) * (q * z * k1);
    let m11 = (zi * (-z * z) + zz * (s.x * sp.x * k0 * k1 * mm)) * (q * q);
    let blocks = [[m00, wp.x_inv() * m01], [wp.x() * m10, m11]];
    let mut out = CMat::zeros(2 * n, 2 * n);
    for a in 0..2 {
        for b in 0..2 {
            for i in 0..n {
                for j in 0..n {
                    out[(2 * i + a, b * n + j)] = blocks[a][b][(i, j)];
                }
            }
        }
    }
    out
}

/// `q² (z² − z_s²)(z² − z_{s'}²) μ_s μ_{s'}`.
pub fn l_bold_scale(root: &RootOfUnity, cc: &Couplings, s: &CurvePoint, sp: &CurvePoint, z: C64) -> C64 {
    let q = root.q();
    let k = cc.kappa0 * cc.kappa1;
    q * q * (z * z - k * s.x * s.y) * (z * z - k * sp.x * sp.y) * s.mu * sp.mu
}

/// `(Ľ1 ⊗ 1_W)(1_W ⊗ Ľ2) : W ⊗ W ⊗ V → V ⊗ W ⊗ W`.
pub fn chain2(l1: &CMat, l2: &CMat, n: usize) -> CMat {
    let id = identity(n);
    kron(l1, &id) * kron(&id, l2)
}

/// `ℵ_s = diag(1, z_s / (κ0 x_s))`, the square root branch tied to `z_s`.
pub fn gauge_aleph(s: &CurvePoint, cc: &Couplings, zs: C64) -> Mat2 {
    let (o, l) = (C64::new(0.0, 0.0), C64::new(1.0, 0.0));
    mat2(l, o, o, zs / (cc.kappa0 * s.x))
}

/// `ℶ_s = diag(1, z_s / (κ0 y_s))`.
pub fn gauge_beth(s: &CurvePoint, cc: &Couplings, zs: C64) -> Mat2 {
    let (o, l) = (C64::new(0.0, 0.0), C64::new(1.0, 0.0));
    mat2(l, o, o, zs / (cc.kappa0 * s.y))
}

/// `U(z, μ) = [[1, z], [z, 1]] · diag(1, μ)`.
pub fn u_std(z: C64, mu: C64) -> Mat2 {
    let (o, l) = (C64::new(0.0, 0.0), C64::new(1.0, 0.0));
    mul2(&mat2(l, z, z, l), &mat2(l, o, o, mu))
}

/// `V(z, μ) = diag(1, μ) · [[−q, z], [qz, −1]]`.
pub fn v_std(root: &RootOfUnity, z: C64, mu: C64) -> Mat2 {
    let (o, l) = (C64::new(0.0, 0.0), C64::new(1.0, 0.0));
    let q = root.q();
    mul2(&mat2(l, o, o, mu), &mat2(-q, z, q * z, -l))
}

pub fn l_std(wp: &WeylPair, z: C64, mu: C64) -> LOp {
    bracket(&u_std(z, mu), &eye2(), wp)
}

pub fn l_bar_std(wp: &WeylPair, z: C64, mu: C64) -> LOp {
    bracket(&v_std(wp.root(), z, mu), &eye2(), wp)
}

/// `L = w · g · {M(z_s/w, μ_s), 1} · g⁻¹` with `g` acting on `V`.
pub fn gauge_conjugate(wp: &WeylPair, m: &Mat2, g: &Mat2, w: C64) -> LOp {
    let gi = mat2(C64::new(1.0, 0.0) / g[0][0], C64::new(0.0, 0.0), C64::new(0.0, 0.0), C64::new(1.0, 0.0) / g[1][1]);
    let inner = bracket(m, &eye2(), wp).matrix();
    let gm = kron(&wp.identity(), &CMat::from_row_slice(2, 2, &[g[0][0], g[0][1], g[1][0], g[1][1]]));
    let gim = kron(&wp.identity(), &CMat::from_row_slice(2, 2, &[gi[0][0], gi[0][1], gi[1][0], gi[1][1]]));
    let full = gm * inner * gim * w;
    let n = wp.n();
    let mut blocks = [[CMat::zeros(n, n), CMat::zeros(n, n)], [CMat::zeros(n, n), CMat::zeros(n, n)]];
    for (a, row) in blocks.iter_mut().enumerate() {
        for (b, blk) in row.iter_mut().enumerate() {
            for i in 0..n {
                for j in 0..n {
                    blk[(i, j)] = full[(2 * i + a, 2 * j + b)];
                }
            }
        }
    }
    LOp { blocks }
}
