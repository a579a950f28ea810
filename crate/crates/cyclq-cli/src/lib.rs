//! Batch harness for the `cyclq` library: configuration, seeded sampling, check suites, weight
//! export and JSON reports.

pub mod checks;
pub mod config;
pub mod export;
pub mod report;
pub mod sampling;

use std::collections::BTreeMap;
use std::time::Instant;

use checks::{Ctx, Recorder};
use config::{Config, Suite};
use report::{Entry, Meta, Report};

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error("config: {0}")]
    Config(String),
    #[error(transparent)]
    Library(#[from] cyclq::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("numerics: {0}")]
    Numeric(String),
    #[error("no non-degenerate draw after {0} rejections")]
    Exhausted(usize),
}

/// Run one suite on its own sampler stream.
pub fn run_one(ctx: &Ctx, suite: Suite) -> Result<Vec<Entry>, HarnessError> {
    let mut s = ctx.sampler(suite)?;
    let mut rec = Recorder::new(ctx.base_params(suite), ctx.cfg.tol_rel);
    match suite {
        Suite::Weyl => checks::weyl::run(ctx, &mut rec)?,
        Suite::Curve => checks::curve::run(ctx, &mut s, &mut rec)?,
        Suite::Weights => checks::weights::run(ctx, &mut s, &mut rec)?,
        Suite::Intertwiners => checks::intertwiners::run(ctx, &mut s, &mut rec)?,
        Suite::Lops => checks::lops::run(ctx, &mut s, &mut rec)?,
        Suite::Transfer => checks::transfer::run(ctx, &mut s, &mut rec)?,
    }
    Ok(rec.finish())
}

/// Run the selected suites concurrently and assemble their entries in dependency order.
pub fn run_suite(cfg: &Config) -> Result<Report, HarnessError> {
    let ctx = Ctx::new(cfg)?;
    let suites = cfg.ordered_suites();
    let results: Vec<_> = std::thread::scope(|scope| {
        let handles: Vec<_> = suites
            .iter()
            .map(|&suite| {
                let ctx = &ctx;
                scope.spawn(move || {
                    let start = Instant::now();
                    let out = run_one(ctx, suite);
                    (suite, out, start.elapsed().as_millis() as u64)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("suite thread panicked")).collect()
    });
    let mut entries = Vec::new();
    let mut elapsed = BTreeMap::new();
    for (suite, out, ms) in results {
        entries.extend(out?);
        elapsed.insert(suite.name().to_string(), ms);
    }
    Ok(Report::new(cfg.clone(), entries, Meta::now(elapsed)))
}
