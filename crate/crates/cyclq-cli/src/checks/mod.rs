//! Check suites. Each suite records the worst residual of every check over its random draws.

pub mod curve;
pub mod intertwiners;
pub mod lops;
pub mod transfer;
pub mod weights;
pub mod weyl;

use cyclq::curve::{Couplings, Sign};
use cyclq::reps::{Gen, Rep};
use cyclq::tensorcore::frob;
use cyclq::weyl::WeylPair;
use cyclq::CMat;
use serde_json::{json, Map, Value};

use crate::config::{Config, Suite};
use crate::report::{Bound, Entry};
use crate::sampling::Sampler;
use crate::HarnessError;

/// Everything a suite needs besides its sampler.
pub struct Ctx {
    pub cfg: Config,
    pub wp: WeylPair,
    pub cc: Couplings,
}

impl Ctx {
    pub fn new(cfg: &Config) -> Result<Self, HarnessError> {
        cfg.validate()?;
        Ok(Self { wp: WeylPair::new(cfg.root()?), cc: cfg.couplings()?, cfg: cfg.clone() })
    }

    pub fn n(&self) -> usize {
        self.wp.n()
    }

    pub fn sign_c0(&self) -> Sign {
        Sign::Plus.flipped(self.cfg.flip_c0)
    }

    pub fn sign_zs(&self) -> Sign {
        Sign::Plus.flipped(self.cfg.flip_zs)
    }

    pub fn sampler(&self, suite: Suite) -> Result<Sampler, HarnessError> {
        Ok(Sampler::new(self.cfg.seed, suite as u64, self.cfg.modulus()?))
    }

    /// Parameters shared by every entry of a suite.
    pub fn base_params(&self, suite: Suite) -> Map<String, Value> {
        let c = &self.cfg;
        let mut m = Map::new();
        m.insert("n".into(), json!(c.n));
        m.insert("root_exponent".into(), json!(c.root_exponent));
        m.insert("seed".into(), json!(c.seed));
        m.insert("stream".into(), json!(suite as u64));
        m.insert("kappa0".into(), json!(c.kappa0));
        m.insert("kappa1".into(), json!(c.kappa1));
        if matches!(suite, Suite::Transfer) {
            m.insert("sites".into(), json!(c.sites));
            m.insert("alpha".into(), json!(c.alpha));
        }
        m
    }
}

struct Acc {
    id: String,
    anchor: String,
    tol: f64,
    bound: Bound,
    worst: f64,
    worst_draw: Value,
    count: usize,
}

fn is_worse(new: f64, old: f64, bound: Bound) -> bool {
    if old.is_nan() {
        return false;
    }
    if new.is_nan() {
        return true;
    }
    match bound {
        Bound::Min => new < old,
        _ => new > old,
    }
}

/// Collects residuals; entries come out in first-recorded order.
pub struct Recorder {
    base: Map<String, Value>,
    tol_override: Option<f64>,
    accs: Vec<Acc>,
}

impl Recorder {
    pub fn new(base: Map<String, Value>, tol_override: Option<f64>) -> Self {
        Self { base, tol_override, accs: Vec::new() }
    }

    fn push(&mut self, id: &str, anchor: &str, tol: f64, bound: Bound, residual: f64, draw: &Value) {
        if let Some(a) = self.accs.iter_mut().find(|a| a.id == id) {
            a.count += 1;
            if is_worse(residual, a.worst, bound) {
                a.worst = residual;
                a.worst_draw = draw.clone();
            }
            return;
        }
        let tol = match (bound, self.tol_override) {
            (Bound::Max, Some(t)) => t,
            _ => tol,
        };
        self.accs.push(Acc {
            id: id.into(),
            anchor: anchor.into(),
            tol,
            bound,
            worst: residual,
            worst_draw: draw.clone(),
            count: 1,
        });
    }

    /// Passes iff the worst residual is at most `tol`.
    pub fn max(&mut self, id: &str, anchor: &str, tol: f64, residual: f64, draw: &Value) {
        self.push(id, anchor, tol, Bound::Max, residual, draw);
    }

    /// Passes iff the smallest residual exceeds `tol`.
    pub fn min(&mut self, id: &str, anchor: &str, tol: f64, residual: f64, draw: &Value) {
        self.push(id, anchor, tol, Bound::Min, residual, draw);
    }

    pub fn report(&mut self, id: &str, anchor: &str, residual: f64, draw: &Value) {
        self.push(id, anchor, f64::NAN, Bound::Report, residual, draw);
    }

    pub fn finish(self) -> Vec<Entry> {
        self.accs
            .into_iter()
            .map(|a| {
                let pass = match a.bound {
                    Bound::Max => a.worst <= a.tol,
                    Bound::Min => a.worst > a.tol,
                    Bound::Report => true,
                };
                let mut params = self.base.clone();
                params.insert("draws".into(), json!(a.count));
                params.insert("worst_draw".into(), a.worst_draw);
                Entry {
                    check_id: a.id,
                    anchor: a.anchor,
                    params: Value::Object(params),
                    residual: a.worst.is_finite().then_some(a.worst),
                    tolerance: a.tol.is_finite().then_some(a.tol),
                    bound: a.bound,
                    pass,
                }
            })
            .collect()
    }
}

pub fn rel(a: &CMat, b: &CMat) -> f64 {
    frob(&(a - b)) / frob(a).max(frob(b))
}

/// `‖a − b‖ / max(‖a‖, ‖b‖, floor)`, for sides that may vanish identically.
pub fn rel_floor(a: &CMat, b: &CMat, floor: f64) -> f64 {
    frob(&(a - b)) / frob(a).max(frob(b)).max(floor)
}

/// `‖[a, b]‖ / (‖a‖ ‖b‖)`.
pub fn comm_rel(a: &CMat, b: &CMat) -> f64 {
    frob(&(a * b - b * a)) / (frob(a) * frob(b))
}

/// Worst relative residual of `l · src(g) = dst(g) · l` over `gens`, with `src = aux ⊗ site`.
pub fn hom_residual(l: &CMat, aux: &Rep, site: &Rep, gens: &[Gen]) -> Result<f64, HarnessError> {
    let src = Rep::tensor(aux, site);
    let dst = Rep::tensor(site, aux);
    let mut worst: f64 = 0.0;
    for g in gens {
        worst = worst.max(rel(&(l * src.act(*g)?), &(dst.act(*g)? * l)));
    }
    Ok(worst)
}
