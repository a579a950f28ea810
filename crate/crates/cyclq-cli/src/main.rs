use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use cyclq_cli::config::{env_overrides, parse_value, resolve, suite_list, Config, ENV_PREFIX};
use cyclq_cli::export::{export_weights, parse_points, write_tables};
use cyclq_cli::{run_suite, HarnessError};
use toml::{Table, Value};

#[derive(Parser)]
#[command(name = "cyclq", version, about = "Numerical verification of cyclic quantum-group intertwiners and Q-operators")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the check suites and emit a report; exits nonzero if any check fails.
    Verify(Common),
    /// Export the four weight families for a pair of curve points.
    Weights {
        #[command(flatten)]
        common: Common,
        /// JSON array of two curve points; drawn from the seed when omitted.
        #[arg(long)]
        points: Option<PathBuf>,
    },
    /// Print the resolved configuration as TOML.
    ShowConfig(Common),
}

#[derive(Args, Clone, Default)]
struct Common {
    /// TOML configuration file (also `CYCLQ_CONFIG`).
    #[arg(long)]
    config: Option<PathBuf>,
    /// Comma-separated suites: weyl, curve, weights, intertwiners, lops, transfer.
    #[arg(long)]
    suite: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    /// Root of unity order N.
    #[arg(long)]
    n: Option<usize>,
    /// Number of quantum sites M.
    #[arg(long)]
    m: Option<usize>,
    /// Twist exponent; 2*alpha must not be an integer.
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<f64>,
    #[arg(long)]
    json_out: Option<PathBuf>,
    /// Directory for weights.csv and weights.json.
    #[arg(long)]
    csv_out: Option<PathBuf>,
    /// Use the negative square root for c0.
    #[arg(long)]
    flip_c0: bool,
    /// Use the negative square root for z_s.
    #[arg(long)]
    flip_zs: bool,
    /// Replace every relative tolerance.
    #[arg(long)]
    tol_rel: Option<f64>,
}

impl Common {
    fn flags(&self) -> Result<Table, HarnessError> {
        let mut t = Table::new();
        if let Some(s) = &self.suite {
            t.insert("suites".into(), suite_list(s)?);
        }
        let mut put = |k: &str, v: Value| {
            t.insert(k.into(), v);
        };
        if let Some(v) = self.seed {
            put("seed", parse_value(&v.to_string()));
        }
        if let Some(v) = self.n {
            put("n", Value::Integer(v as i64));
        }
        if let Some(v) = self.m {
            put("sites", Value::Integer(v as i64));
        }
        if let Some(v) = self.alpha {
            put("alpha", Value::Float(v));
        }
        if let Some(v) = &self.json_out {
            put("json_out", Value::String(v.display().to_string()));
        }
        if let Some(v) = &self.csv_out {
            put("csv_out", Value::String(v.display().to_string()));
        }
        if self.flip_c0 {
            put("flip_c0", Value::Boolean(true));
        }
        if self.flip_zs {
            put("flip_zs", Value::Boolean(true));
        }
        if let Some(v) = self.tol_rel {
            put("tol_rel", Value::Float(v));
        }
        Ok(t)
    }

    fn resolve(&self) -> Result<Config, HarnessError> {
        let path = self.config.clone().or_else(|| std::env::var_os(format!("{ENV_PREFIX}CONFIG")).map(PathBuf::from));
        let text = path.map(fs::read_to_string).transpose()?;
        resolve(text.as_deref(), env_overrides(std::env::vars())?, self.flags()?)
    }
}

fn verify(c: &Common) -> Result<bool, HarnessError> {
    let cfg = c.resolve()?;
    let report = run_suite(&cfg)?;
    for line in report.lines() {
        println!("{line}");
    }
    let s = &report.summary.all;
    println!("{} checks: {} passed, {} failed", s.total, s.passed, s.failed);
    if let Some(p) = &cfg.json_out {
        fs::write(p, report.to_json())?;
    }
    Ok(report.all_pass())
}

fn weights(c: &Common, points: Option<&PathBuf>) -> Result<(), HarnessError> {
    let cfg = c.resolve()?;
    let pts = points.map(|p| -> Result<_, HarnessError> { parse_points(&fs::read_to_string(p)?, &cfg) }).transpose()?;
    let tables = export_weights(&cfg, pts)?;
    if let Some(dir) = &cfg.csv_out {
        write_tables(&tables, dir)?;
    }
    let json = cyclq::weights::to_json(&tables);
    match &cfg.json_out {
        Some(p) => fs::write(p, json)?,
        None if cfg.csv_out.is_none() => println!("{json}"),
        None => {}
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match &cli.cmd {
        Cmd::Verify(c) => verify(c),
        Cmd::Weights { common, points } => weights(common, points.as_ref()).map(|_| true),
        Cmd::ShowConfig(c) => c.resolve().map(|cfg| {
            print!("{}", cfg.to_toml());
            true
        }),
    };
    match out {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
