//! Harness configuration: defaults, then a TOML file, then `CYCLQ_*` environment variables, then flags.

use std::path::PathBuf;

use cyclq::curve::{Couplings, Modulus};
use cyclq::weyl::RootOfUnity;
use cyclq::C64;
use serde::{Deserialize, Serialize};
use toml::{Table, Value};

use crate::HarnessError;

pub const ENV_PREFIX: &str = "CYCLQ_";

/// Refuse chains with `N^{M+1}` above this.
pub const MAX_CHAIN_DIM: u64 = 2_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Weyl,
    Curve,
    Weights,
    Intertwiners,
    Lops,
    Transfer,
}

impl Suite {
    pub const ALL: [Suite; 6] =
        [Suite::Weyl, Suite::Curve, Suite::Weights, Suite::Intertwiners, Suite::Lops, Suite::Transfer];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Weyl => "weyl",
            Suite::Curve => "curve",
            Suite::Weights => "weights",
            Suite::Intertwiners => "intertwiners",
            Suite::Lops => "lops",
            Suite::Transfer => "transfer",
        }
    }

    pub fn parse(s: &str) -> Result<Self, HarnessError> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s.trim())
            .ok_or_else(|| HarnessError::Config(format!("unknown suite `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    /// Order `N` of the root of unity.
    pub n: usize,
    /// `m` in `q = exp(2πi m / N)`.
    pub root_exponent: i64,
    /// Number of quantum sites `M`.
    pub sites: usize,
    pub seed: u64,
    pub alpha: f64,
    pub kappa0: [f64; 2],
    pub kappa1: [f64; 2],
    /// Fixed modulus; drawn per sample when absent.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<[f64; 2]>,
    /// Random draws per algebraic check.
    pub draws: usize,
    /// Random draws per transfer-matrix check.
    pub chain_draws: usize,
    pub suites: Vec<Suite>,
    pub flip_c0: bool,
    pub flip_zs: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tol_rel: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub json_out: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub csv_out: Option<PathBuf>,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            n: 3,
            root_exponent: 1,
            sites: 2,
            seed: 42,
            alpha: 0.3,
            kappa0: [1.0, 0.0],
            kappa1: [1.0, 0.0],
            k: None,
            draws: 10,
            chain_draws: 2,
            suites: Suite::ALL.to_vec(),
            flip_c0: false,
            flip_zs: false,
            tol_rel: None,
            json_out: None,
            csv_out: None,
        }
    }
}

/// Keys accepted in files, environment and overrides.
pub const KEYS: [&str; 16] = [
    "n",
    "root_exponent",
    "sites",
    "seed",
    "alpha",
    "kappa0",
    "kappa1",
    "k",
    "draws",
    "chain_draws",
    "suites",
    "flip_c0",
    "flip_zs",
    "tol_rel",
    "json_out",
    "csv_out",
];

impl Config {
    pub fn from_toml(s: &str) -> Result<Self, HarnessError> {
        let table: Table = s.parse().map_err(|e: toml::de::Error| HarnessError::Config(e.message().to_string()))?;
        Self::from_table(table)
    }

    pub fn from_table(table: Table) -> Result<Self, HarnessError> {
        let cfg: Config = Value::Table(table)
            .try_into()
            .map_err(|e: toml::de::Error| HarnessError::Config(e.message().to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn root(&self) -> Result<RootOfUnity, HarnessError> {
        RootOfUnity::new(self.n, self.root_exponent).map_err(|e| HarnessError::Config(e.to_string()))
    }

    pub fn couplings(&self) -> Result<Couplings, HarnessError> {
        Couplings::new(cplx(self.kappa0), cplx(self.kappa1)).map_err(|e| HarnessError::Config(e.to_string()))
    }

    pub fn modulus(&self) -> Result<Option<Modulus>, HarnessError> {
        self.k
            .map(|k| Modulus::new(cplx(k)).map_err(|e| HarnessError::Config(format!("k: {e}"))))
            .transpose()
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        let bad = |m: String| Err(HarnessError::Config(m));
        if self.n < 3 || self.n.is_multiple_of(2) {
            return bad(format!("n = {} must be odd and at least 3", self.n));
        }
        self.root()?;
        if cyclq::transfer::Twist::frac(self.alpha).is_err() {
            return bad(format!("alpha = {} is not allowed: 2*alpha must not be an integer", self.alpha));
        }
        if self.sites == 0 {
            return bad("sites must be at least 1".into());
        }
        if self.draws == 0 || self.chain_draws == 0 {
            return bad("draws and chain_draws must be at least 1".into());
        }
        let dim = (self.n as u64).checked_pow(self.sites as u32 + 1);
        if dim.is_none_or(|d| d > MAX_CHAIN_DIM) {
            return bad(format!("n^(sites+1) = {}^{} exceeds the budget {MAX_CHAIN_DIM}", self.n, self.sites + 1));
        }
        self.couplings()?;
        self.modulus()?;
        if let Some(t) = self.tol_rel {
            if !(t.is_finite() && t > 0.0) {
                return bad(format!("tol_rel = {t} must be positive and finite"));
            }
        }
        if self.suites.is_empty() {
            return bad("no suites selected".into());
        }
        Ok(())
    }

    /// Selected suites, deduplicated, in dependency order.
    pub fn ordered_suites(&self) -> Vec<Suite> {
        Suite::ALL.into_iter().filter(|s| self.suites.contains(s)).collect()
    }
}

pub fn cplx(v: [f64; 2]) -> C64 {
    C64::new(v[0], v[1])
}

/// Parse an override value: TOML literal where possible, bare string otherwise.
pub fn parse_value(raw: &str) -> Value {
    let doc = format!("v = {raw}");
    match doc.parse::<Table>() {
        Ok(mut t) => t.remove("v").unwrap_or_else(|| Value::String(raw.into())),
        Err(_) => Value::String(raw.into()),
    }
}

/// Overrides from `CYCLQ_<KEY>` variables; `CYCLQ_SUITES` may be a comma list.
pub fn env_overrides<I: IntoIterator<Item = (String, String)>>(vars: I) -> Result<Table, HarnessError> {
    let mut out = Table::new();
    for (k, v) in vars {
        let Some(key) = k.strip_prefix(ENV_PREFIX) else { continue };
        let key = key.to_ascii_lowercase();
        if key == "config" {
            continue;
        }
        if !KEYS.contains(&key.as_str()) {
            return Err(HarnessError::Config(format!("unknown environment override {k}")));
        }
        let value = if key == "suites" { suite_list(&v)? } else { parse_value(&v) };
        out.insert(key, value);
    }
    Ok(out)
}

pub fn suite_list(raw: &str) -> Result<Value, HarnessError> {
    let v = raw
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| Suite::parse(s).map(|x| Value::String(x.name().into())))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Value::Array(v))
}

/// `base ← file ← env ← flags`, then validate.
pub fn resolve(file: Option<&str>, env: Table, flags: Table) -> Result<Config, HarnessError> {
    let mut table = match file {
        Some(s) => s.parse::<Table>().map_err(|e| HarnessError::Config(e.message().to_string()))?,
        None => Table::new(),
    };
    table.extend(env);
    table.extend(flags);
    Config::from_table(table)
}
