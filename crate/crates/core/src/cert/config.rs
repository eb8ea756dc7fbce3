use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::CertError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ControlRep {
    Pi,
    Rho,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ControlGenerator {
    A,
    B,
}

/// A deliberate corruption of one input, used to check that verdicts flip.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NegativeControl {
    /// Adds 1 (times the generator's `r`-power for `π`) to one entry.
    Entry {
        rep: ControlRep,
        generator: ControlGenerator,
        row: usize,
        col: usize,
    },
    /// Appends the letter `a` to relator `index` of `Γ`.
    GammaRelator { index: usize },
    /// Appends the letter `a` to relator `index` of the degree-2 presentation.
    Pol2Relator { index: usize },
}

impl fmt::Display for NegativeControl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NegativeControl::Entry { rep, generator, row, col } => {
                let r = if *rep == ControlRep::Pi { "pi" } else { "rho" };
                let g = if *generator == ControlGenerator::A { "a" } else { "b" };
                write!(f, "{r}:{g}:{row},{col}")
            }
            NegativeControl::GammaRelator { index } => write!(f, "relator:gamma:{index}"),
            NegativeControl::Pol2Relator { index } => write!(f, "relator:pol2:{index}"),
        }
    }
}

/// Parses `pi:a:0,1`, `rho:b:2,2`, `relator:gamma:0` or `relator:pol2:3`.
impl FromStr for NegativeControl {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let bad = || format!("bad control `{s}` (expected pi|rho:a|b:ROW,COL or relator:gamma|pol2:N)");
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            ["relator", which, n] => {
                let index = n.parse().map_err(|_| bad())?;
                match *which {
                    "gamma" => Ok(NegativeControl::GammaRelator { index }),
                    "pol2" => Ok(NegativeControl::Pol2Relator { index }),
                    _ => Err(bad()),
                }
            }
            [rep, g, rc] => {
                let rep = match *rep {
                    "pi" => ControlRep::Pi,
                    "rho" => ControlRep::Rho,
                    _ => return Err(bad()),
                };
                let generator = match *g {
                    "a" => ControlGenerator::A,
                    "b" => ControlGenerator::B,
                    _ => return Err(bad()),
                };
                let (r, c) = rc.split_once(',').ok_or_else(bad)?;
                let (row, col) = (r.parse().map_err(|_| bad())?, c.parse().map_err(|_| bad())?);
                if row > 2 || col > 2 {
                    return Err(bad());
                }
                Ok(NegativeControl::Entry { rep, generator, row, col })
            }
            _ => Err(bad()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub coset_limit: usize,
    /// Largest number of candidate tuples a brute-force enumeration may visit.
    pub brute_force_guard: u64,
    /// Largest finite matrix group built by closure.
    pub finite_image_limit: usize,
    pub grading_max_len: usize,
    pub search_max_len: usize,
    pub search_max_degree: usize,
    pub search_max_nodes: usize,
    pub search_budget_ms: Option<u64>,
    pub meet_in_middle: bool,
    pub rho_no_relation_len: usize,
    pub pi_no_relation_len: usize,
    pub nilpotency_levels: Vec<u32>,
    pub nilpotency_pool: usize,
    /// Group-spec files (polymap format) added to the built-in battery.
    pub battery: Vec<PathBuf>,
    pub output: Option<PathBuf>,
    pub negative_control: Option<NegativeControl>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            coset_limit: 100_000,
            brute_force_guard: 10_000_000,
            finite_image_limit: 10_000,
            grading_max_len: 4,
            search_max_len: 20,
            search_max_degree: 4,
            search_max_nodes: 2_000_000,
            search_budget_ms: None,
            meet_in_middle: true,
            rho_no_relation_len: 10,
            pi_no_relation_len: 4,
            nilpotency_levels: vec![2, 3, 4],
            nilpotency_pool: 10,
            battery: Vec::new(),
            output: None,
            negative_control: None,
        }
    }
}

impl RunConfig {
    /// Loads a JSON or TOML file (by extension; anything but `.toml` is JSON).
    pub fn load(path: &Path) -> Result<Self, CertError> {
        let text = std::fs::read_to_string(path)?;
        let cfg: RunConfig = if path.extension().is_some_and(|e| e == "toml") {
            toml::from_str(&text).map_err(|e| CertError::Config(e.to_string()))?
        } else {
            serde_json::from_str(&text).map_err(|e| CertError::Config(e.to_string()))?
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), CertError> {
        let positive = [
            ("coset_limit", self.coset_limit as u128),
            ("brute_force_guard", self.brute_force_guard as u128),
            ("finite_image_limit", self.finite_image_limit as u128),
            ("grading_max_len", self.grading_max_len as u128),
            ("search_max_len", self.search_max_len as u128),
            ("search_max_degree", self.search_max_degree as u128),
            ("search_max_nodes", self.search_max_nodes as u128),
            ("search_budget_ms", self.search_budget_ms.unwrap_or(1) as u128),
            ("rho_no_relation_len", self.rho_no_relation_len as u128),
            ("pi_no_relation_len", self.pi_no_relation_len as u128),
            ("nilpotency_pool", self.nilpotency_pool as u128),
        ];
        if let Some((name, _)) = positive.iter().find(|(_, v)| *v == 0) {
            return Err(CertError::Config(format!("{name} must be positive")));
        }
        if self.nilpotency_levels.iter().any(|&n| n < 2) {
            return Err(CertError::Config("nilpotency levels must be at least 2".into()));
        }
        Ok(())
    }

    /// Digest of the settings that affect the certificate body.
    pub fn digest(&self) -> String {
        let mut v = serde_json::to_value(self).expect("config serializes");
        if let Some(m) = v.as_object_mut() {
            m.remove("output");
        }
        super::digest_json(&v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn control_round_trip() {
        for s in ["pi:a:0,1", "rho:b:2,2", "relator:gamma:0", "relator:pol2:3"] {
            assert_eq!(s.parse::<NegativeControl>().unwrap().to_string(), s);
        }
        assert!("pi:c:0,0".parse::<NegativeControl>().is_err());
        assert!("rho:a:3,0".parse::<NegativeControl>().is_err());
    }

    #[test]
    fn zero_bound_rejected() {
        let cfg = RunConfig {
            search_max_len: 0,
            ..RunConfig::default()
        };
        assert!(cfg.validate().is_err());
        assert!(RunConfig::default().validate().is_ok());
    }

    #[test]
    fn toml_and_json_agree() {
        let dir = std::env::temp_dir();
        let t = dir.join(format!("polcert-cfg-{}.toml", std::process::id()));
        let j = dir.join(format!("polcert-cfg-{}.json", std::process::id()));
        std::fs::write(&t, "search_max_len = 8\nnilpotency_levels = [2, 3]\n").unwrap();
        std::fs::write(&j, r#"{"search_max_len": 8, "nilpotency_levels": [2, 3]}"#).unwrap();
        let (a, b) = (RunConfig::load(&t).unwrap(), RunConfig::load(&j).unwrap());
        assert_eq!(a, b);
        assert_eq!(a.search_max_len, 8);
        std::fs::remove_file(t).ok();
        std::fs::remove_file(j).ok();
    }
}
