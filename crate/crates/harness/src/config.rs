//! Estimator settings file.
//!
//! A TOML document with a `[cso]` and a `[pso]` table. Keys use the usual
//! parameter names of the two algorithms; missing keys keep their defaults.
//!
//! ```toml
//! [cso]
//! N = 40
//! M = 30
//! SRD = 0.2
//! CDC = 2
//! SPC = true
//! mr = 0.2
//! c = 1.05
//! w = 0.6
//! Iter_max = 300
//! v_frac = 0.2
//!
//! [pso]
//! N = 40
//! c1 = 1.5
//! c2 = 1.5
//! w = 0.7
//! Iter_max = 300
//! v_frac = 0.2
//! ```

use std::fs;
use std::path::Path;

use greyfrac_core::{PsoConfig, SwarmConfig};
use serde::{Deserialize, Serialize};

use crate::error::{HarnessError, Result};

/// Both estimators search the two grey parameters `(a, b)`.
const SEARCH_DIM: usize = 2;

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Config {
    pub cso: SwarmConfig,
    pub pso: PsoConfig,
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    #[serde(default)]
    cso: RawCso,
    #[serde(default)]
    pso: RawPso,
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCso {
    #[serde(rename = "N")]
    n: Option<usize>,
    #[serde(rename = "M")]
    m: Option<usize>,
    #[serde(rename = "SRD")]
    srd: Option<f64>,
    #[serde(rename = "CDC")]
    cdc: Option<usize>,
    #[serde(rename = "SPC")]
    spc: Option<bool>,
    mr: Option<f64>,
    c: Option<f64>,
    w: Option<f64>,
    #[serde(rename = "Iter_max")]
    iter_max: Option<usize>,
    v_frac: Option<f64>,
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPso {
    #[serde(rename = "N")]
    n: Option<usize>,
    c1: Option<f64>,
    c2: Option<f64>,
    w: Option<f64>,
    #[serde(rename = "Iter_max")]
    iter_max: Option<usize>,
    v_frac: Option<f64>,
}

impl RawConfig {
    fn resolve(self) -> Config {
        let (c, p) = (self.cso, self.pso);
        let d = Config::default();
        Config {
            cso: SwarmConfig {
                n_agents: c.n.unwrap_or(d.cso.n_agents),
                smp: c.m.unwrap_or(d.cso.smp),
                srd: c.srd.unwrap_or(d.cso.srd),
                cdc: c.cdc.unwrap_or(d.cso.cdc),
                spc: c.spc.unwrap_or(d.cso.spc),
                mr: c.mr.unwrap_or(d.cso.mr),
                c0: c.c.unwrap_or(d.cso.c0),
                w0: c.w.unwrap_or(d.cso.w0),
                iter_max: c.iter_max.unwrap_or(d.cso.iter_max),
                v_frac: c.v_frac.unwrap_or(d.cso.v_frac),
                seed: d.cso.seed,
            },
            pso: PsoConfig {
                n_particles: p.n.unwrap_or(d.pso.n_particles),
                c1: p.c1.unwrap_or(d.pso.c1),
                c2: p.c2.unwrap_or(d.pso.c2),
                w: p.w.unwrap_or(d.pso.w),
                iter_max: p.iter_max.unwrap_or(d.pso.iter_max),
                v_frac: p.v_frac.unwrap_or(d.pso.v_frac),
                seed: d.pso.seed,
            },
        }
    }
}

pub fn parse_config(text: &str) -> Result<Config> {
    let raw: RawConfig =
        toml::from_str(text).map_err(|e| HarnessError::Usage(format!("config: {e}")))?;
    let config = raw.resolve();
    config.validate()?;
    Ok(config)
}

pub fn load_config(path: &Path) -> Result<Config> {
    let text = fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
    parse_config(&text).map_err(|e| HarnessError::Usage(format!("{}: {e}", path.display())))
}

impl Config {
    pub fn validate(&self) -> Result<()> {
        self.cso
            .validate(SEARCH_DIM)
            .and_then(|_| self.pso.validate())
            .map_err(|e| HarnessError::Usage(format!("config: {e}")))
    }

    /// Every setting written out explicitly.
    pub fn to_toml(&self) -> String {
        let raw = RawConfig {
            cso: RawCso {
                n: Some(self.cso.n_agents),
                m: Some(self.cso.smp),
                srd: Some(self.cso.srd),
                cdc: Some(self.cso.cdc),
                spc: Some(self.cso.spc),
                mr: Some(self.cso.mr),
                c: Some(self.cso.c0),
                w: Some(self.cso.w0),
                iter_max: Some(self.cso.iter_max),
                v_frac: Some(self.cso.v_frac),
            },
            pso: RawPso {
                n: Some(self.pso.n_particles),
                c1: Some(self.pso.c1),
                c2: Some(self.pso.c2),
                w: Some(self.pso.w),
                iter_max: Some(self.pso.iter_max),
                v_frac: Some(self.pso.v_frac),
            },
        };
        toml::to_string(&raw).expect("plain tables serialize")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_document_gives_defaults() {
        assert_eq!(parse_config("").unwrap(), Config::default());
    }

    #[test]
    fn module_doc_example_matches_defaults() {
        let doc = include_str!("config.rs")
            .lines()
            .skip_while(|l| !l.starts_with("//! ```toml"))
            .skip(1)
            .take_while(|l| !l.starts_with("//! ```"))
            .map(|l| l.trim_start_matches("//!").trim_start())
            .collect::<Vec<_>>()
            .join("\n");
        assert_eq!(parse_config(&doc).unwrap(), Config::default());
    }

    #[test]
    fn partial_overrides() {
        let cfg = parse_config("[cso]\nN = 20\nc = 2.05\n[pso]\nw = 0.5\n").unwrap();
        assert_eq!(cfg.cso.n_agents, 20);
        assert_eq!(cfg.cso.c0, 2.05);
        assert_eq!(cfg.cso.smp, 30);
        assert_eq!(cfg.pso.w, 0.5);
        assert_eq!(cfg.pso.n_particles, 40);
    }

    #[test]
    fn rejects_unknown_keys_and_bad_values() {
        assert!(parse_config("[cso]\nn = 20\n").is_err());
        assert!(parse_config("[ga]\nN = 20\n").is_err());
        assert!(parse_config("[cso]\nN = 0\n").is_err());
        assert!(parse_config("[cso]\nmr = 1.5\n").is_err());
        assert!(parse_config("[pso]\nN = \"forty\"\n").is_err());
    }

    #[test]
    fn toml_round_trip() {
        let cfg = parse_config("[cso]\nSRD = 0.35\nSPC = false\n[pso]\nc1 = 2.0\n").unwrap();
        assert_eq!(parse_config(&cfg.to_toml()).unwrap(), cfg);
    }
}
