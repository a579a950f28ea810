//! Dense complex matrices and tensor-leg bookkeeping.
//!
//! Tensor products put the first factor on the major index, so
//! `kron(a, b)[(i*db + k, j*db + l)] = a[(i, j)] * b[(k, l)]`. Multi-slot
//! spaces follow the same rule: slot 0 is the most significant digit.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;
pub type CMat = DMatrix<C64>;

/// Largest `dim * dim` accepted for a dense chain operator.
pub const MAX_DENSE_ENTRIES: usize = 4_000_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub rel: f64,
    pub abs: f64,
}

impl Tolerance {
    pub fn new(rel: f64, abs: f64) -> Result<Self> {
        let ok = rel.is_finite() && abs.is_finite() && rel >= 0.0 && abs >= 0.0;
        if !ok || (rel == 0.0 && abs == 0.0) {
            return Err(Error::Tolerance { rel, abs });
        }
        Ok(Self { rel, abs })
    }

    pub fn rel(rel: f64) -> Self {
        Self { rel, abs: 0.0 }
    }

    pub fn abs(abs: f64) -> Self {
        Self { rel: 0.0, abs }
    }

    pub fn bound(&self, scale: f64) -> f64 {
        self.abs + self.rel * scale
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self { rel: 1e-10, abs: 1e-12 }
    }
}

/// Outcome of [`approx_eq`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Comparison {
    pub residual: f64,
    pub scale: f64,
    pub pass: bool,
}

impl Comparison {
    /// Residual divided by the larger operand norm (0 when both vanish).
    pub fn relative(&self) -> f64 {
        if self.scale > 0.0 {
            self.residual / self.scale
        } else {
            self.residual
        }
    }
}

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn identity(n: usize) -> CMat {
    CMat::identity(n, n)
}

pub fn zeros(rows: usize, cols: usize) -> CMat {
    CMat::zeros(rows, cols)
}

pub fn diag(entries: &[C64]) -> CMat {
    CMat::from_diagonal(&nalgebra::DVector::from_column_slice(entries))
}

pub fn frob(a: &CMat) -> f64 {
    a.norm()
}

pub fn kron(a: &CMat, b: &CMat) -> CMat {
    a.kronecker(b)
}

/// Kronecker product of a list of factors, left to right.
pub fn kron_all(factors: &[&CMat]) -> CMat {
    let mut out = identity(1);
    for f in factors {
        out = kron(&out, f);
    }
    out
}

/// Permutation `a ⊗ b ↦ b ⊗ a` from `C^da ⊗ C^db` to `C^db ⊗ C^da`.
pub fn swap(da: usize, db: usize) -> CMat {
    let mut p = zeros(da * db, da * db);
    for i in 0..da {
        for j in 0..db {
            p[(j * da + i, i * db + j)] = C64::new(1.0, 0.0);
        }
    }
    p
}

/// Permutation `a ⊗ b1 ⊗ … ⊗ b_{n-1} ↦ b1 ⊗ … ⊗ b_{n-1} ⊗ a` on `(C^d)^{⊗n}`.
pub fn cyclic_shift(d: usize, count: usize) -> CMat {
    let dim = d.pow(count as u32);
    let mut p = zeros(dim, dim);
    let lead = d.pow(count.saturating_sub(1) as u32);
    for col in 0..dim {
        let a = col / lead;
        let rest = col % lead;
        p[(rest * d + a, col)] = C64::new(1.0, 0.0);
    }
    p
}

/// `Tr_aux(m)` where the auxiliary factor is the first tensor slot.
pub fn partial_trace_first(m: &CMat, da: usize, dr: usize) -> Result<CMat> {
    if m.nrows() != da * dr || m.ncols() != da * dr {
        return Err(Error::Dimension(format!(
            "partial trace of {}x{} over {}x{}",
            m.nrows(),
            m.ncols(),
            da,
            dr
        )));
    }
    let mut out = zeros(dr, dr);
    for a in 0..da {
        out += m.view((a * dr, a * dr), (dr, dr));
    }
    Ok(out)
}

fn digits(mut idx: usize, dims: &[usize], out: &mut [usize]) {
    for k in (0..dims.len()).rev() {
        out[k] = idx % dims[k];
        idx /= dims[k];
    }
}

fn undigits(d: &[usize], dims: &[usize]) -> usize {
    d.iter().zip(dims).fold(0, |acc, (x, n)| acc * n + x)
}

/// Lift `op` acting on slots `(s0, s1)` (in that order) of `dims` to the full space.
pub fn embed_pair(op: &CMat, dims: &[usize], s0: usize, s1: usize) -> Result<CMat> {
    if s0 == s1 || s0 >= dims.len() || s1 >= dims.len() {
        return Err(Error::Dimension(format!("bad slots ({s0}, {s1})")));
    }
    let (d0, d1) = (dims[s0], dims[s1]);
    if op.nrows() != d0 * d1 || op.ncols() != d0 * d1 {
        return Err(Error::Dimension(format!(
            "operator {}x{} on slots of size {d0} and {d1}",
            op.nrows(),
            op.ncols()
        )));
    }
    let total: usize = dims.iter().product();
    check_budget(total)?;
    let mut full = zeros(total, total);
    let mut idx = vec![0; dims.len()];
    for col in 0..total {
        digits(col, dims, &mut idx);
        let cin = idx[s0] * d1 + idx[s1];
        for o0 in 0..d0 {
            for o1 in 0..d1 {
                let v = op[(o0 * d1 + o1, cin)];
                if v == C64::new(0.0, 0.0) {
                    continue;
                }
                let mut out = idx.clone();
                out[s0] = o0;
                out[s1] = o1;
                full[(undigits(&out, dims), col)] += v;
            }
        }
    }
    Ok(full)
}

pub fn check_budget(dim: usize) -> Result<()> {
    match dim.checked_mul(dim) {
        Some(e) if e <= MAX_DENSE_ENTRIES => Ok(()),
        _ => Err(Error::Budget(dim)),
    }
}

pub fn singular_values(a: &CMat) -> Vec<f64> {
    let mut sv: Vec<f64> = a.clone().svd(false, false).singular_values.iter().copied().collect();
    sv.sort_by(|x, y| y.total_cmp(x));
    sv
}

/// Numerical rank: singular values above `rel_cut * σ_max`.
pub fn rank(a: &CMat, rel_cut: f64) -> usize {
    let sv = singular_values(a);
    let top = sv.first().copied().unwrap_or(0.0);
    sv.iter().filter(|s| **s > rel_cut * top).count()
}

pub fn solve(a: &CMat, b: &CMat) -> Result<CMat> {
    if !a.is_square() || a.nrows() != b.nrows() {
        return Err(Error::Dimension(format!(
            "solve {}x{} against {}x{}",
            a.nrows(),
            a.ncols(),
            b.nrows(),
            b.ncols()
        )));
    }
    let smin = singular_values(a).last().copied().unwrap_or(0.0);
    if smin <= 1e-13 * frob(a) {
        return Err(Error::Singular { smin });
    }
    a.clone()
        .lu()
        .solve(b)
        .filter(|x| x.iter().all(|v| v.re.is_finite() && v.im.is_finite()))
        .ok_or(Error::Singular { smin })
}

pub fn inverse(a: &CMat) -> Result<CMat> {
    solve(a, &identity(a.nrows()))
}

pub fn mat_pow(a: &CMat, k: i64) -> Result<CMat> {
    let base = if k < 0 { inverse(a)? } else { a.clone() };
    let mut out = identity(a.nrows());
    for _ in 0..k.unsigned_abs() {
        out = &out * &base;
    }
    Ok(out)
}

pub fn approx_eq(a: &CMat, b: &CMat, tol: Tolerance) -> Result<Comparison> {
    if a.shape() != b.shape() {
        return Err(Error::Dimension(format!("compare {:?} with {:?}", a.shape(), b.shape())));
    }
    let residual = frob(&(a - b));
    let scale = frob(a).max(frob(b));
    Ok(Comparison { residual, scale, pass: residual <= tol.bound(scale) })
}

/// `‖a - b‖ / max(‖a‖, ‖b‖)`, or the absolute residual when both vanish.
pub fn rel_residual(a: &CMat, b: &CMat) -> Result<f64> {
    approx_eq(a, b, Tolerance::default()).map(|c| c.relative())
}

pub fn is_diagonal(a: &CMat, tol: f64) -> bool {
    a.iter().enumerate().all(|(k, v)| {
        let (i, j) = (k % a.nrows(), k / a.nrows());
        i == j || v.norm() <= tol
    })
}

pub fn commutator(a: &CMat, b: &CMat) -> CMat {
    a * b - b * a
}
