//! Weight-table export for one pair of curve points.

use std::fs;
use std::path::Path;

use cyclq::curve::CurvePoint;
use cyclq::weights::{all_families, to_json, write_csv, WeightTable};

use crate::config::{Config, Suite};
use crate::sampling::Sampler;
use crate::HarnessError;

/// Parse a JSON array of exactly two curve points.
pub fn parse_points(s: &str, cfg: &Config) -> Result<(CurvePoint, CurvePoint), HarnessError> {
    let root = cfg.root()?;
    let pts: Vec<serde_json::Value> =
        serde_json::from_str(s).map_err(|e| HarnessError::Config(format!("points: {e}")))?;
    if pts.len() != 2 {
        return Err(HarnessError::Config(format!("points: expected 2, found {}", pts.len())));
    }
    let p = |v: &serde_json::Value| CurvePoint::from_json(&v.to_string(), &root);
    Ok((p(&pts[0])?, p(&pts[1])?))
}

/// The four families for `(r, s)`, drawn from the seed when not given.
pub fn export_weights(cfg: &Config, points: Option<(CurvePoint, CurvePoint)>) -> Result<Vec<WeightTable>, HarnessError> {
    cfg.validate()?;
    let root = cfg.root()?;
    let (r, s) = match points {
        Some(p) => p,
        None => {
            let pts = Sampler::new(cfg.seed, Suite::Weights as u64, cfg.modulus()?).points(&root, 2)?;
            (pts[0], pts[1])
        }
    };
    Ok(all_families(&root, &r, &s)?)
}

/// Write `weights.csv` and `weights.json` into `dir`.
pub fn write_tables(tables: &[WeightTable], dir: &Path) -> Result<(), HarnessError> {
    fs::create_dir_all(dir)?;
    let mut buf = Vec::new();
    write_csv(tables, &mut buf)?;
    fs::write(dir.join("weights.csv"), buf)?;
    fs::write(dir.join("weights.json"), to_json(tables))?;
    Ok(())
}
