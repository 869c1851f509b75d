//! Randomized theorem-checking harness.
//!
//! Each registered check runs on `trials` seeded instances. Everything is
//! exact, so a trial either proves the statement for that instance, fails
//! with a replayable instance attached, or is recorded as a degeneracy when
//! the instance hits a special position the statement does not cover.

mod checks;
pub mod generate;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;
use thiserror::Error;

pub use generate::{generate_qlpair, trial_rng, ATTEMPT_BUDGET};

use crate::conic::Conic;
use crate::sharygin::{g_points_raw, sharygin_curve, QlError, QlPair, PAIRS};
use crate::projective::HPoint;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("invalid trial configuration: {0}")]
    InvalidConfig(String),
    #[error("unknown check '{0}'")]
    UnknownCheck(String),
    #[error("no valid instance found within {ATTEMPT_BUDGET} attempts")]
    ExhaustedAttempts,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrialConfig {
    pub seed: u64,
    pub trials: u64,
    pub coordinate_bound: i64,
    pub omega_mode: bool,
}

impl TrialConfig {
    pub fn new(seed: u64, trials: u64, coordinate_bound: i64, omega_mode: bool) -> Result<Self, VerifyError> {
        if trials < 1 {
            return Err(VerifyError::InvalidConfig("trials must be at least 1".into()));
        }
        if coordinate_bound < 2 {
            return Err(VerifyError::InvalidConfig("coordinate bound must be at least 2".into()));
        }
        if coordinate_bound > 1 << 40 {
            return Err(VerifyError::InvalidConfig("coordinate bound is too large".into()));
        }
        Ok(TrialConfig { seed, trials, coordinate_bound, omega_mode })
    }
}

impl Default for TrialConfig {
    fn default() -> Self {
        TrialConfig { seed: 42, trials: 100, coordinate_bound: 10, omega_mode: false }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Failure {
    pub trial: u64,
    pub clause: String,
    pub instance: Value,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Degeneracy {
    pub trial: u64,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub check_id: String,
    pub passed: bool,
    pub instances_run: u64,
    pub failures: Vec<Failure>,
    pub degeneracies: Vec<Degeneracy>,
}

impl CheckReport {
    /// Compact JSON with a trailing newline.
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("reports serialize") + "\n"
    }

    fn empty(id: &str) -> Self {
        CheckReport {
            check_id: id.to_string(),
            passed: true,
            instances_run: 0,
            failures: Vec::new(),
            degeneracies: Vec::new(),
        }
    }

    fn absorb(&mut self, trial: u64, probe: Probe) {
        self.instances_run += probe.instances;
        self.failures.extend(probe.failures.into_iter().map(|(clause, instance)| Failure {
            trial,
            clause,
            instance,
        }));
        self.degeneracies
            .extend(probe.degeneracies.into_iter().map(|note| Degeneracy { trial, note }));
        self.passed = self.failures.is_empty();
    }
}

/// Names of all registered checks, in execution order.
pub fn check_ids() -> Vec<&'static str> {
    checks::REGISTRY.iter().map(|(id, _)| *id).collect()
}

/// One (q,l)-pair together with the constructions several checks share.
pub struct Bundle {
    pub ql: QlPair,
    pub curves: Vec<Result<Conic, QlError>>,
    pub g_points: [HPoint; 6],
}

impl Bundle {
    pub fn new(ql: QlPair) -> Self {
        let curves = PAIRS.iter().map(|&(i, j)| sharygin_curve(&ql, i, j)).collect();
        let g_points = g_points_raw(&ql);
        Bundle { ql, curves, g_points }
    }

    pub fn instance(&self) -> Value {
        ql_instance(&self.ql)
    }
}

/// A (q,l)-pair as a replayable configuration document.
pub fn ql_instance(ql: &QlPair) -> Value {
    serde_json::json!({
        "format_version": 1,
        "vertices": ql.quad().vertices(),
        "g": ql.g(),
    })
}

/// Per-trial outcome accumulator for one check.
#[derive(Default)]
pub(crate) struct Probe {
    instances: u64,
    failures: Vec<(String, Value)>,
    degeneracies: Vec<String>,
}

impl Probe {
    pub(crate) fn count(&mut self, n: u64) {
        self.instances += n;
    }

    pub(crate) fn fail(&mut self, clause: impl Into<String>, instance: &Value) {
        self.failures.push((clause.into(), instance.clone()));
    }

    pub(crate) fn expect(&mut self, ok: bool, clause: impl FnOnce() -> String, instance: &Value) {
        if !ok {
            self.fail(clause(), instance);
        }
    }

    pub(crate) fn degenerate(&mut self, note: impl Into<String>) {
        self.degeneracies.push(note.into());
    }

    /// Route a construction error: violated postconditions are failures,
    /// everything else is a special position.
    pub(crate) fn error(&mut self, context: &str, e: &QlError, instance: &Value) {
        match e {
            QlError::ConcurrencyViolation(_)
            | QlError::IncidenceViolation(_)
            | QlError::MappingViolation(_)
            | QlError::ThirdPairMismatch => self.fail(format!("{context}: {e}"), instance),
            _ => self.degenerate(format!("{context}: {e}")),
        }
    }
}

/// Lazily built per-trial inputs. The shared bundle is built at most once
/// per trial no matter how many checks use it.
pub(crate) struct Ctx<'a> {
    cfg: &'a TrialConfig,
    trial: u64,
    shared: Option<Result<Bundle, VerifyError>>,
    omega: Option<Result<Bundle, VerifyError>>,
}

impl<'a> Ctx<'a> {
    fn new(cfg: &'a TrialConfig, trial: u64) -> Self {
        Ctx { cfg, trial, shared: None, omega: None }
    }

    pub(crate) fn bound(&self) -> i64 {
        self.cfg.coordinate_bound
    }

    pub(crate) fn trial(&self) -> u64 {
        self.trial
    }

    pub(crate) fn rng(&self, salt: &str) -> rand_chacha::ChaCha8Rng {
        trial_rng(self.cfg.seed, salt, self.trial)
    }

    pub(crate) fn bundle(&mut self) -> Result<&Bundle, VerifyError> {
        let (cfg, trial) = (self.cfg, self.trial);
        let b = self.shared.get_or_insert_with(|| {
            let mut rng = trial_rng(cfg.seed, "", trial);
            generate_qlpair(&mut rng, cfg.coordinate_bound, cfg.omega_mode).map(Bundle::new)
        });
        b.as_ref().map_err(Clone::clone)
    }

    /// A bundle with `g = ω`, shared with [`Ctx::bundle`] in omega mode.
    pub(crate) fn omega_bundle(&mut self) -> Result<&Bundle, VerifyError> {
        if self.cfg.omega_mode {
            return self.bundle();
        }
        let (cfg, trial) = (self.cfg, self.trial);
        let b = self.omega.get_or_insert_with(|| {
            let mut rng = trial_rng(cfg.seed, "omega", trial);
            generate_qlpair(&mut rng, cfg.coordinate_bound, true).map(Bundle::new)
        });
        b.as_ref().map_err(Clone::clone)
    }
}

fn lookup(id: &str) -> Result<checks::CheckFn, VerifyError> {
    checks::REGISTRY
        .iter()
        .find(|(name, _)| *name == id)
        .map(|(_, f)| *f)
        .ok_or_else(|| VerifyError::UnknownCheck(id.to_string()))
}

fn run_selected(ids: &[&str], cfg: &TrialConfig) -> Result<Vec<CheckReport>, VerifyError> {
    let fns: Vec<checks::CheckFn> = ids.iter().map(|id| lookup(id)).collect::<Result<_, _>>()?;
    let per_trial: Vec<Vec<Probe>> = (0..cfg.trials)
        .into_par_iter()
        .map(|trial| {
            let mut ctx = Ctx::new(cfg, trial);
            fns.iter()
                .map(|f| {
                    let mut probe = Probe::default();
                    f(&mut ctx, &mut probe)?;
                    Ok(probe)
                })
                .collect::<Result<Vec<_>, VerifyError>>()
        })
        .collect::<Result<_, _>>()?;
    let mut reports: Vec<CheckReport> = ids.iter().map(|id| CheckReport::empty(id)).collect();
    for (trial, probes) in per_trial.into_iter().enumerate() {
        for (report, probe) in reports.iter_mut().zip(probes) {
            report.absorb(trial as u64, probe);
        }
    }
    Ok(reports)
}

pub fn run_check(check_id: &str, cfg: &TrialConfig) -> Result<CheckReport, VerifyError> {
    Ok(run_selected(&[check_id], cfg)?.remove(0))
}

pub fn run_all(cfg: &TrialConfig) -> Result<Vec<CheckReport>, VerifyError> {
    run_selected(&check_ids(), cfg)
}
