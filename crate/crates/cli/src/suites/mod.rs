//! Suite registry, the per-suite recorder, and orchestration.

mod anchors;
mod ccr;
mod dual;
mod fixed_point;
mod ideals;
mod kernels;
mod lie;
mod orbit;
mod qwn;
mod relations;
mod rotation;
mod wick_gate;

use std::collections::BTreeMap;
use std::time::Instant;

use qwn_core::{FockConfig, FockSpace, ModeConfig};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::Value;

use crate::config::RunConfig;
use crate::report::{Anchor, Check, DimensionRow, Status, SuiteResult, VerificationReport};
use crate::rng::named_rng;

pub use anchors::{statement, ANCHORS, IN_SCOPE};
pub use lie::closure_tables;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SuiteId {
    Ccr,
    WickGate,
    Relations,
    KernelCommutators,
    DualImpl,
    Qwn,
    Rotation,
    LieStructure,
    Ideals,
    Semisimple,
    FixedPoint,
    Orbit,
}

impl SuiteId {
    pub fn name(self) -> &'static str {
        match self {
            SuiteId::Ccr => "ccr",
            SuiteId::WickGate => "wick-gate",
            SuiteId::Relations => "relations",
            SuiteId::KernelCommutators => "kernel-commutators",
            SuiteId::DualImpl => "dual-impl",
            SuiteId::Qwn => "qwn",
            SuiteId::Rotation => "rotation",
            SuiteId::LieStructure => "lie-structure",
            SuiteId::Ideals => "ideals",
            SuiteId::Semisimple => "semisimple",
            SuiteId::FixedPoint => "fixed-point",
            SuiteId::Orbit => "orbit",
        }
    }

    /// Registry names plus the alias `commutations` for the kernel
    /// commutators.
    pub fn parse(name: &str) -> Option<Self> {
        if name == "commutations" {
            return Some(SuiteId::KernelCommutators);
        }
        REGISTRY.iter().map(|s| s.id).find(|id| id.name() == name)
    }

    pub fn def(self) -> &'static SuiteDef {
        REGISTRY.iter().find(|s| s.id == self).expect("every id is registered")
    }
}

pub struct SuiteFailure(pub String);

impl From<qwn_core::Error> for SuiteFailure {
    fn from(e: qwn_core::Error) -> Self {
        SuiteFailure(e.to_string())
    }
}

pub type SuiteRun = Result<(), SuiteFailure>;

pub struct SuiteDef {
    pub id: SuiteId,
    pub anchors: &'static [&'static str],
    pub uses_rng: bool,
    pub needs_skew: bool,
    /// Relies on symbolic products, so it runs only after the Wick gate passed.
    pub gated: bool,
    pub run: fn(&Ctx, &mut Recorder) -> SuiteRun,
}

/// Registry order is execution order; the Wick gate precedes every gated
/// suite.
pub static REGISTRY: &[SuiteDef] = &[
    SuiteDef {
        id: SuiteId::Ccr,
        anchors: &["ccr", "number-operator", "gross-laplacian", "annihilation-creation"],
        uses_rng: false,
        needs_skew: false,
        gated: false,
        run: ccr::run,
    },
    SuiteDef {
        id: SuiteId::WickGate,
        anchors: &["normal-ordered-product"],
        uses_rng: true,
        needs_skew: false,
        gated: false,
        run: wick_gate::run,
    },
    SuiteDef {
        id: SuiteId::Relations,
        anchors: &["generalized-ccr", "many-relations", "annihilators-commute", "exponential-vector"],
        uses_rng: true,
        needs_skew: false,
        gated: true,
        run: relations::run,
    },
    SuiteDef {
        id: SuiteId::KernelCommutators,
        anchors: &[
            "kernel-theorem",
            "convolution",
            "conservation-bracket",
            "commutator-identity",
            "quadratic-annihilation-bracket",
            "gross-conservation-bracket",
            "skew-quadratic-bracket",
        ],
        uses_rng: true,
        needs_skew: false,
        gated: true,
        run: kernels::run,
    },
    SuiteDef {
        id: SuiteId::DualImpl,
        anchors: &["wiener-ito-action"],
        uses_rng: true,
        needs_skew: false,
        gated: false,
        run: dual::run,
    },
    SuiteDef {
        id: SuiteId::Qwn,
        anchors: &[
            "qwn-derivatives",
            "conservation-operator",
            "generalized-gross",
            "derivatives-of-conservation-and-gross",
            "iterated-derivatives",
            "iterated-derivative-formulas",
            "orbit-commutation-relations",
        ],
        uses_rng: true,
        needs_skew: true,
        gated: true,
        run: qwn::run,
    },
    SuiteDef {
        id: SuiteId::Rotation,
        anchors: &[
            "second-quantization",
            "differential-second-quantization",
            "skew-generator-kernel",
            "rotation-generator",
            "rotation-operator",
            "rotation-invariance",
        ],
        uses_rng: false,
        needs_skew: true,
        gated: false,
        run: rotation::run,
    },
    SuiteDef {
        id: SuiteId::LieStructure,
        anchors: &["lie-base", "lie-pure-annihilation", "lie-orbit-algebra"],
        uses_rng: true,
        needs_skew: true,
        gated: true,
        run: lie::run_structure,
    },
    SuiteDef {
        id: SuiteId::Ideals,
        anchors: &["ideal-contains-identity"],
        uses_rng: false,
        needs_skew: true,
        gated: true,
        run: ideals::run,
    },
    SuiteDef {
        id: SuiteId::Semisimple,
        anchors: &["not-semisimple"],
        uses_rng: false,
        needs_skew: true,
        gated: true,
        run: lie::run_semisimple,
    },
    SuiteDef {
        id: SuiteId::FixedPoint,
        anchors: &["fixed-point-algebra"],
        uses_rng: false,
        needs_skew: false,
        gated: true,
        run: fixed_point::run,
    },
    SuiteDef {
        id: SuiteId::Orbit,
        anchors: &["finite-rank-orbit"],
        uses_rng: false,
        needs_skew: true,
        gated: true,
        run: orbit::run,
    },
];

/// Immutable inputs shared by every suite.
pub struct Ctx<'a> {
    pub cfg: &'a RunConfig,
    pub mode: ModeConfig,
    pub space: FockSpace,
    suite: SuiteId,
}

impl Ctx<'_> {
    /// A generator seeded from the run seed and the suite name.
    pub fn rng(&self) -> Result<ChaCha8Rng, SuiteFailure> {
        match self.cfg.seed {
            Some(seed) => Ok(named_rng(seed, self.suite.name())),
            None => Err(SuiteFailure("no seed configured".into())),
        }
    }

    /// A Fock space over `d` modes with the run's cutoff and guard band.
    pub fn space_for(&self, d: usize) -> Result<FockSpace, SuiteFailure> {
        let mode = ModeConfig::new(d, self.cfg.tolerance, self.cfg.orbit_cap)?;
        Ok(FockSpace::new(FockConfig::new(mode, self.cfg.m, self.cfg.guard())?))
    }
}

#[derive(Default)]
pub struct Recorder {
    checks: Vec<Check>,
    residuals: BTreeMap<String, f64>,
    dimensions: Vec<DimensionRow>,
    notes: Vec<String>,
    flagged: bool,
}

fn json<T: Serialize>(v: T) -> Value {
    serde_json::to_value(v).unwrap_or(Value::Null)
}

impl Recorder {
    fn push(&mut self, name: impl Into<String>, relation: &str, observed: Value, expected: Value, passed: bool) -> bool {
        self.checks.push(Check {
            name: name.into(),
            relation: relation.into(),
            observed,
            expected,
            passed,
        });
        passed
    }

    /// `value ≤ limit`; NaN fails.
    pub fn le(&mut self, name: impl Into<String>, value: f64, limit: f64) -> bool {
        self.push(name, "<=", json(value), json(limit), value <= limit)
    }

    /// `value > limit`.
    pub fn gt(&mut self, name: impl Into<String>, value: f64, limit: f64) -> bool {
        self.push(name, ">", json(value), json(limit), value > limit)
    }

    pub fn eq<T: Serialize + PartialEq>(&mut self, name: impl Into<String>, got: T, expected: T) -> bool {
        let ok = got == expected;
        self.push(name, "==", json(&got), json(&expected), ok)
    }

    pub fn holds(&mut self, name: impl Into<String>, ok: bool) -> bool {
        self.eq(name, ok, true)
    }

    /// A named number reported without a verdict.
    pub fn value(&mut self, name: impl Into<String>, v: f64) {
        self.residuals.insert(name.into(), v);
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    /// Marks the suite as flagged: all checks may pass, but a stated
    /// formula disagrees with what was computed.
    pub fn flag(&mut self, s: impl Into<String>) {
        self.flagged = true;
        self.notes.push(s.into());
    }

    pub fn dimension(&mut self, row: DimensionRow) {
        self.dimensions.push(row);
    }

    pub fn dimensions(&self) -> &[DimensionRow] {
        &self.dimensions
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct RunOptions {
    pub timing: bool,
}

fn anchors_of(def: &SuiteDef) -> Vec<Anchor> {
    def.anchors
        .iter()
        .map(|id| Anchor {
            id: id.to_string(),
            statement: statement(id).unwrap_or("").to_string(),
        })
        .collect()
}

fn run_one(cfg: &RunConfig, def: &SuiteDef, gate: Option<Status>, opts: RunOptions) -> SuiteResult {
    let start = Instant::now();
    let mut rec = Recorder::default();
    let outcome = prepare(cfg, def, gate).and_then(|ctx| (def.run)(&ctx, &mut rec));
    let status = match &outcome {
        Err(e) => {
            rec.note(format!("error: {}", e.0));
            Status::Error
        }
        Ok(()) if rec.checks.iter().any(|c| !c.passed) => Status::Fail,
        Ok(()) if rec.flagged => Status::Flagged,
        Ok(()) => Status::Pass,
    };
    SuiteResult {
        name: def.id.name().to_string(),
        status,
        anchors: anchors_of(def),
        checks: rec.checks,
        residuals: rec.residuals,
        dimensions: rec.dimensions,
        notes: rec.notes,
        wall_time_ms: opts.timing.then(|| start.elapsed().as_secs_f64() * 1e3),
    }
}

fn prepare<'a>(cfg: &'a RunConfig, def: &SuiteDef, gate: Option<Status>) -> Result<Ctx<'a>, SuiteFailure> {
    if def.gated && gate.is_some_and(|g| g.is_failure()) {
        return Err(SuiteFailure("skipped: the Wick-product gate did not pass".into()));
    }
    if def.uses_rng && cfg.seed.is_none() {
        return Err(SuiteFailure("suite needs a seed".into()));
    }
    let dev = cfg.s_matrix().skew_deviation();
    if def.needs_skew && dev > cfg.tolerance {
        return Err(SuiteFailure(format!("S is not skew-symmetric (max |S + Sᵀ| = {dev:e})")));
    }
    let mode = ModeConfig::new(cfg.d, cfg.tolerance, cfg.orbit_cap)?;
    let space = FockSpace::new(FockConfig::new(mode, cfg.m, cfg.guard())?);
    Ok(Ctx {
        cfg,
        mode,
        space,
        suite: def.id,
    })
}

/// Runs the requested suites in registry order. The Wick gate is added
/// whenever a gated suite is requested. Unknown suite names are skipped;
/// [`RunConfig::validate`] rejects them up front.
pub fn run_suites(cfg: &RunConfig) -> VerificationReport {
    run_suites_with(cfg, RunOptions::default())
}

pub fn run_suites_with(cfg: &RunConfig, opts: RunOptions) -> VerificationReport {
    let mut wanted: Vec<SuiteId> = cfg.suites.iter().filter_map(|n| SuiteId::parse(n)).collect();
    if wanted.iter().any(|id| id.def().gated) {
        wanted.push(SuiteId::WickGate);
    }
    let mut results = Vec::new();
    let mut gate = None;
    for def in REGISTRY.iter().filter(|d| wanted.contains(&d.id)) {
        let r = run_one(cfg, def, gate, opts);
        if def.id == SuiteId::WickGate {
            gate = Some(r.status);
        }
        results.push(r);
    }
    VerificationReport {
        tool: "qwn".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        seed: cfg.seed,
        d: cfg.d,
        m: cfg.m,
        guard: cfg.guard(),
        tolerance: cfg.tolerance,
        summary: VerificationReport::summarize(&results),
        suites: results,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_roundtrip_and_alias() {
        for def in REGISTRY {
            assert_eq!(SuiteId::parse(def.id.name()), Some(def.id));
        }
        assert_eq!(SuiteId::parse("commutations"), Some(SuiteId::KernelCommutators));
        assert_eq!(SuiteId::parse("bogus"), None);
    }

    #[test]
    fn gate_precedes_gated_suites() {
        let gate = REGISTRY.iter().position(|d| d.id == SuiteId::WickGate).unwrap();
        for (i, d) in REGISTRY.iter().enumerate() {
            if d.gated {
                assert!(i > gate, "{}", d.id.name());
            }
        }
    }

    #[test]
    fn every_in_scope_anchor_is_exercised() {
        for id in IN_SCOPE {
            assert!(
                REGISTRY.iter().any(|d| d.anchors.contains(id)),
                "anchor {id} is not covered by any suite"
            );
        }
        for d in REGISTRY {
            for a in d.anchors {
                assert!(statement(a).is_some(), "suite {} names unknown anchor {a}", d.id.name());
            }
        }
    }
}
