//! Run configuration: a single JSON object, validated on load.

use std::path::{Path, PathBuf};

use qwn_core::{KernelMatrix, ModeVector, C64};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::suites::{self, SuiteId};

pub type Complex = [f64; 2];

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    #[error("schema violation at `{path}`: {message}")]
    Schema { path: String, message: String },

    #[error("suite `{suite}` precondition failed: {message}")]
    Precondition { suite: String, message: String },
}

fn default_tolerance() -> f64 {
    1e-10
}

fn default_m_max() -> usize {
    4
}

fn default_orbit_cap() -> usize {
    6
}

fn default_theta_grid() -> Vec<f64> {
    vec![0.1, -0.1, 0.3, -0.3]
}

fn default_suites() -> Vec<String> {
    suites::REGISTRY.iter().map(|s| s.id.name().to_string()).collect()
}

/// Raw schema. Complex entries are `[re, im]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub d: usize,
    #[serde(rename = "M")]
    pub m: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub guard: Option<usize>,
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
    #[serde(default = "default_m_max")]
    pub m_max: usize,
    #[serde(default = "default_orbit_cap")]
    pub orbit_cap: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(rename = "S")]
    pub s: Vec<Vec<Complex>>,
    pub zeta: Vec<Complex>,
    #[serde(rename = "K", default, skip_serializing_if = "Option::is_none")]
    pub k: Option<Vec<Vec<Complex>>>,
    #[serde(rename = "L", default, skip_serializing_if = "Option::is_none")]
    pub l: Option<Vec<Vec<Complex>>>,
    #[serde(default = "default_suites")]
    pub suites: Vec<String>,
    #[serde(default = "default_theta_grid")]
    pub theta_grid: Vec<f64>,
}

fn c(z: Complex) -> C64 {
    C64::new(z[0], z[1])
}

fn matrix_of(rows: &[Vec<Complex>]) -> KernelMatrix {
    let rows: Vec<Vec<C64>> = rows.iter().map(|r| r.iter().copied().map(c).collect()).collect();
    KernelMatrix::from_rows(&rows)
}

fn complex_rows(m: &KernelMatrix) -> Vec<Vec<Complex>> {
    let d = m.dim();
    (0..d).map(|i| (0..d).map(|j| [m.0[(i, j)].re, m.0[(i, j)].im]).collect()).collect()
}

fn schema(path: impl Into<String>, message: impl Into<String>) -> ConfigError {
    ConfigError::Schema {
        path: path.into(),
        message: message.into(),
    }
}

impl RunConfig {
    /// Two modes, `M = 6`, the planar rotation `S = [[0,1],[−1,0]]`,
    /// `ζ = e_0`, `K = L = diag(1,0)`, all suites.
    pub fn default_config() -> Self {
        Self {
            d: 2,
            m: 6,
            guard: None,
            tolerance: default_tolerance(),
            m_max: default_m_max(),
            orbit_cap: default_orbit_cap(),
            seed: Some(20240601),
            s: vec![vec![[0.0, 0.0], [1.0, 0.0]], vec![[-1.0, 0.0], [0.0, 0.0]]],
            zeta: vec![[1.0, 0.0], [0.0, 0.0]],
            k: Some(vec![vec![[1.0, 0.0], [0.0, 0.0]], vec![[0.0, 0.0], [0.0, 0.0]]]),
            l: Some(vec![vec![[1.0, 0.0], [0.0, 0.0]], vec![[0.0, 0.0], [0.0, 0.0]]]),
            suites: default_suites(),
            theta_grid: default_theta_grid(),
        }
    }

    pub fn from_json_str(text: &str) -> Result<Self, ConfigError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let cfg: RunConfig = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            let inner = e.into_inner();
            if inner.is_data() {
                schema(path, inner.to_string())
            } else {
                ConfigError::Parse {
                    line: inner.line(),
                    column: inner.column(),
                    message: inner.to_string(),
                }
            }
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn guard(&self) -> usize {
        self.guard.unwrap_or(qwn_core::fock::DEFAULT_GUARD.min(self.m))
    }

    pub fn s_matrix(&self) -> KernelMatrix {
        matrix_of(&self.s)
    }

    pub fn zeta_vector(&self) -> ModeVector {
        ModeVector::new(self.zeta.iter().copied().map(c).collect())
    }

    /// `K`, defaulting to the projector on the first mode.
    pub fn k_matrix(&self) -> KernelMatrix {
        self.k.as_deref().map(matrix_of).unwrap_or_else(|| first_mode_projector(self.d))
    }

    /// `L`, defaulting to the projector on the first mode.
    pub fn l_matrix(&self) -> KernelMatrix {
        self.l.as_deref().map(matrix_of).unwrap_or_else(|| first_mode_projector(self.d))
    }

    pub fn set_s(&mut self, s: &KernelMatrix) {
        self.s = complex_rows(s);
    }

    /// Requested suites in registry order, with aliases resolved and
    /// duplicates dropped.
    pub fn suite_ids(&self) -> Result<Vec<SuiteId>, ConfigError> {
        let mut wanted = Vec::new();
        for (i, name) in self.suites.iter().enumerate() {
            match SuiteId::parse(name) {
                Some(id) => wanted.push(id),
                None => return Err(schema(format!("suites[{i}]"), format!("unknown suite `{name}`"))),
            }
        }
        Ok(suites::REGISTRY.iter().map(|s| s.id).filter(|id| wanted.contains(id)).collect())
    }

    fn check_square(&self, name: &str, rows: &[Vec<Complex>]) -> Result<(), ConfigError> {
        if rows.len() != self.d {
            return Err(schema(name, format!("expected {} rows, got {}", self.d, rows.len())));
        }
        for (i, r) in rows.iter().enumerate() {
            if r.len() != self.d {
                return Err(schema(format!("{name}[{i}]"), format!("expected {} entries, got {}", self.d, r.len())));
            }
        }
        Ok(())
    }

    /// Shape and range checks, then per-suite preconditions.
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.d == 0 {
            return Err(schema("d", "must be at least 1"));
        }
        if self.m == 0 {
            return Err(schema("M", "must be at least 1"));
        }
        if self.guard() > self.m {
            return Err(schema("guard", format!("guard {} exceeds M = {}", self.guard(), self.m)));
        }
        if !(self.tolerance.is_finite() && self.tolerance >= 0.0) {
            return Err(schema("tolerance", "must be a finite nonnegative number"));
        }
        if !(2..=4).contains(&self.m_max) {
            return Err(schema("m_max", "must lie in 2..=4"));
        }
        if self.orbit_cap == 0 {
            return Err(schema("orbit_cap", "must be at least 1"));
        }
        self.check_square("S", &self.s)?;
        if self.zeta.len() != self.d {
            return Err(schema("zeta", format!("expected {} entries, got {}", self.d, self.zeta.len())));
        }
        if let Some(k) = &self.k {
            self.check_square("K", k)?;
        }
        if let Some(l) = &self.l {
            self.check_square("L", l)?;
        }
        if self.theta_grid.is_empty() || self.theta_grid.iter().any(|t| !t.is_finite()) {
            return Err(schema("theta_grid", "must be a nonempty list of finite reals"));
        }
        let ids = self.suite_ids()?;
        if self.seed.is_none() {
            if let Some(id) = ids.iter().find(|id| id.def().uses_rng) {
                let asked = self
                    .suites
                    .iter()
                    .find(|n| SuiteId::parse(n) == Some(*id))
                    .cloned()
                    .unwrap_or_else(|| id.name().to_string());
                return Err(schema("seed", format!("required by suite `{asked}`")));
            }
        }
        let dev = self.s_matrix().skew_deviation();
        if dev > self.tolerance {
            if let Some(id) = ids.iter().find(|id| id.def().needs_skew) {
                return Err(ConfigError::Precondition {
                    suite: id.name().to_string(),
                    message: format!("S is not skew-symmetric (max |S + Sᵀ| = {dev:e})"),
                });
            }
        }
        Ok(())
    }
}

fn first_mode_projector(d: usize) -> KernelMatrix {
    let mut p = KernelMatrix::zeros(d);
    p.0[(0, 0)] = C64::new(1.0, 0.0);
    p
}

pub fn load_config(path: &Path) -> Result<RunConfig, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    RunConfig::from_json_str(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"{"d":2,"M":6,"seed":1,"S":[[[0,0],[1,0]],[[-1,0],[0,0]]],"zeta":[[1,0],[0,0]],"suites":["ccr"]}"#;

    #[test]
    fn minimal_config_is_valid() {
        let cfg = RunConfig::from_json_str(MINIMAL).unwrap();
        assert_eq!(cfg.guard(), 4);
        assert_eq!(cfg.suite_ids().unwrap(), vec![SuiteId::Ccr]);
    }

    #[test]
    fn missing_seed_is_a_schema_error() {
        let text = MINIMAL.replace(r#""seed":1,"#, "").replace(r#"["ccr"]"#, r#"["commutations"]"#);
        match RunConfig::from_json_str(&text) {
            Err(ConfigError::Schema { path, message }) => {
                assert_eq!(path, "seed");
                assert!(message.contains("commutations"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn non_skew_s_names_the_suite() {
        let text = MINIMAL.replace("[-1,0]", "[1,0]").replace(r#"["ccr"]"#, r#"["rotation"]"#);
        match RunConfig::from_json_str(&text) {
            Err(ConfigError::Precondition { suite, .. }) => assert_eq!(suite, "rotation"),
            other => panic!("unexpected {other:?}"),
        }
        // suites that do not need skew S accept it
        let ok = MINIMAL.replace("[-1,0]", "[1,0]");
        assert!(RunConfig::from_json_str(&ok).is_ok());
    }

    #[test]
    fn unknown_keys_rejected_with_path() {
        let text = MINIMAL.replace(r#""d":2,"#, r#""d":2,"extra":true,"#);
        assert!(matches!(RunConfig::from_json_str(&text), Err(ConfigError::Schema { .. })));
        let text = MINIMAL.replace("[[1,0],[0,0]]", r#"[[1,0],["x",0]]"#);
        match RunConfig::from_json_str(&text) {
            Err(ConfigError::Schema { path, .. }) => assert_eq!(path, "zeta[1][0]"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn parse_errors_carry_line() {
        let text = "{\n  \"d\": 2,\n  \"M\": ,\n}";
        match RunConfig::from_json_str(text) {
            Err(ConfigError::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn shape_errors() {
        let text = MINIMAL.replace(r#""zeta":[[1,0],[0,0]]"#, r#""zeta":[[1,0]]"#);
        assert!(matches!(RunConfig::from_json_str(&text), Err(ConfigError::Schema { path, .. }) if path == "zeta"));
        let text = MINIMAL.replace(r#"["ccr"]"#, r#"["nope"]"#);
        assert!(matches!(RunConfig::from_json_str(&text), Err(ConfigError::Schema { path, .. }) if path == "suites[0]"));
    }

    #[test]
    fn default_config_roundtrips() {
        let cfg = RunConfig::default_config();
        cfg.validate().unwrap();
        let back = RunConfig::from_json_str(&cfg.to_json_string()).unwrap();
        assert_eq!(back, cfg);
    }
}
