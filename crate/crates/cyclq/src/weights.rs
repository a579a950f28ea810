//! The four chiral Potts weight families and their Fourier transforms.

use std::collections::BTreeMap;
use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::curve::CurvePoint;
use crate::error::{Error, Result};
use crate::tensorcore::C64;
use crate::weyl::RootOfUnity;

/// Smallest recursion denominator accepted.
pub const DEGENERACY: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    WHat,
    WBar,
    W,
    WCheck,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::WHat, Family::WBar, Family::W, Family::WCheck];

    pub fn name(self) -> &'static str {
        match self {
            Family::WHat => "w_hat",
            Family::WBar => "w_bar",
            Family::W => "w",
            Family::WCheck => "w_check",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightTable {
    pub family: Family,
    pub values: Vec<C64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<(CurvePoint, CurvePoint)>,
}

/// Defining ratio `F(n) / F(n-1)` of each family.
pub fn ratio(root: &RootOfUnity, family: Family, r: &CurvePoint, s: &CurvePoint, n: i64) -> (C64, C64) {
    let q2n = root.pow(2 * n);
    match family {
        Family::WHat => (
            s.mu * r.y - r.mu * s.y * root.pow(2 * (n - 1)),
            s.mu * s.x - r.mu * r.x * q2n,
        ),
        Family::WBar => (r.mu * s.mu * (r.x * root.pow(2) - s.x * q2n), s.y - r.y * q2n),
        Family::W => (r.mu * (s.y - r.x * q2n), s.mu * (r.y - s.x * q2n)),
        Family::WCheck => (s.y - r.x * q2n * r.mu * s.mu, r.y - s.x * q2n * r.mu * s.mu),
    }
}

fn recurse(root: &RootOfUnity, family: Family, r: &CurvePoint, s: &CurvePoint) -> Result<Vec<C64>> {
    let n = root.n() as i64;
    let mut v = Vec::with_capacity(n as usize);
    v.push(C64::new(1.0, 0.0));
    for k in 1..=n {
        let (num, den) = ratio(root, family, r, s, k);
        if den.norm() < DEGENERACY {
            return Err(Error::Degenerate(format!("{} denominator {:.3e} at n={k}", family.name(), den.norm())));
        }
        if k < n {
            let prev = v[(k - 1) as usize];
            v.push(prev * num / den);
        }
    }
    Ok(v)
}

/// `|Π_{n=1..N} ratio(n) - 1|`.
pub fn cyclic_closure(root: &RootOfUnity, family: Family, r: &CurvePoint, s: &CurvePoint) -> f64 {
    let prod = (1..=root.n() as i64).fold(C64::new(1.0, 0.0), |acc, n| {
        let (num, den) = ratio(root, family, r, s, n);
        acc * num / den
    });
    (prod - C64::new(1.0, 0.0)).norm()
}

pub fn w_hat(root: &RootOfUnity, r: &CurvePoint, s: &CurvePoint) -> Result<WeightTable> {
    let values = recurse(root, Family::WHat, r, s)?;
    Ok(WeightTable { family: Family::WHat, values, points: Some((*r, *s)) })
}

/// `W̄` scaled so that `Σ_m W̄(m) = 1`.
pub fn w_bar(root: &RootOfUnity, r: &CurvePoint, s: &CurvePoint) -> Result<WeightTable> {
    let mut values = recurse(root, Family::WBar, r, s)?;
    let sum: C64 = values.iter().sum();
    let scale = values.iter().map(|v| v.norm()).fold(0.0, f64::max);
    if sum.norm() < DEGENERACY * scale {
        return Err(Error::Degenerate("w_bar sums to zero".into()));
    }
    values.iter_mut().for_each(|v| *v /= sum);
    Ok(WeightTable { family: Family::WBar, values, points: Some((*r, *s)) })
}

/// `out(n) = Σ_m t(m) q^{±2mn}`.
pub fn fourier(root: &RootOfUnity, t: &WeightTable, sign: i64) -> WeightTable {
    let n = t.values.len() as i64;
    let values = (0..n)
        .map(|k| (0..n).map(|m| t.values[m as usize] * root.pow(2 * sign * m * k)).sum())
        .collect();
    let family = match (t.family, sign.signum()) {
        (Family::WHat, -1) => Family::W,
        (Family::W, 1) => Family::WHat,
        (Family::WBar, 1) => Family::WCheck,
        (Family::WCheck, -1) => Family::WBar,
        (f, _) => f,
    };
    WeightTable { family, values, points: t.points }
}

/// `[Ŵ, W̄, W, W̌]` for the pair `(r, s)`.
pub fn all_families(root: &RootOfUnity, r: &CurvePoint, s: &CurvePoint) -> Result<Vec<WeightTable>> {
    let wh = w_hat(root, r, s)?;
    let wb = w_bar(root, r, s)?;
    let w = fourier(root, &wh, -1);
    let wc = fourier(root, &wb, 1);
    Ok(vec![wh, wb, w, wc])
}

#[derive(Debug, Serialize, Deserialize)]
struct CsvRow {
    n: usize,
    family: Family,
    re: f64,
    im: f64,
}

pub fn write_csv<W: Write>(tables: &[WeightTable], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for t in tables {
        for (n, v) in t.values.iter().enumerate() {
            w.serialize(CsvRow { n, family: t.family, re: v.re, im: v.im })
                .map_err(|e| Error::Invalid(e.to_string()))?;
        }
    }
    w.flush().map_err(|e| Error::Invalid(e.to_string()))
}

/// Inverse of [`write_csv`]; rows of a family must cover `n = 0..len` exactly once.
pub fn read_csv<R: Read>(input: R) -> Result<Vec<WeightTable>> {
    let mut rdr = csv::Reader::from_reader(input);
    let mut by_family: BTreeMap<Family, BTreeMap<usize, C64>> = BTreeMap::new();
    let mut order = Vec::new();
    for row in rdr.deserialize::<CsvRow>() {
        let row = row.map_err(|e| Error::Invalid(e.to_string()))?;
        if !row.re.is_finite() || !row.im.is_finite() {
            return Err(Error::Invalid(format!("non-finite entry at n={}", row.n)));
        }
        let entries = by_family.entry(row.family).or_default();
        if entries.is_empty() {
            order.push(row.family);
        }
        if entries.insert(row.n, C64::new(row.re, row.im)).is_some() {
            return Err(Error::Invalid(format!("duplicate row n={} for {}", row.n, row.family.name())));
        }
    }
    order
        .into_iter()
        .map(|family| {
            let entries = &by_family[&family];
            if entries.keys().enumerate().any(|(i, n)| i != *n) {
                return Err(Error::Invalid(format!("rows of {} are not contiguous from 0", family.name())));
            }
            Ok(WeightTable { family, values: entries.values().copied().collect(), points: None })
        })
        .collect()
}

pub fn to_json(tables: &[WeightTable]) -> String {
    serde_json::to_string_pretty(tables).expect("weights serialize")
}

pub fn from_json(s: &str) -> Result<Vec<WeightTable>> {
    let tables: Vec<WeightTable> = serde_json::from_str(s).map_err(|e| Error::Invalid(e.to_string()))?;
    for t in &tables {
        if t.values.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::Invalid(format!("non-finite entry in {}", t.family.name())));
        }
    }
    Ok(tables)
}
