//! Declarative experiments: a JSON config in, a per-round CSV trace and a
//! JSON summary out.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
#[cfg(not(target_arch = "wasm32"))]
use std::time::Instant;
#[cfg(target_arch = "wasm32")]
use web_time::Instant;

use serde::{Deserialize, Serialize, Serializer};
use sha2::{Digest, Sha256};

use crate::algorithms::{GammaMode, ScheduleNumerator, ScheduleOffset, StepSchedule};
use crate::error::OcoError;
use crate::geometry::{DomainSpec, ReferenceFunction};
use crate::harness::{
    bound_curve, composite_regret, dsomd_ledger, ftl_stability_excess, initial_iterate, realized_k,
    regret, regret_curve, run_game, strong_ftrl_ledger, theoretical_bound, AlgorithmConfig,
    AlgorithmKind, BoundKind, BoundParams, BoundReport, RunTrace, LEDGER_TOLERANCE,
};
use crate::losses::{
    certify_relative_lipschitz, certify_relative_strong_convexity, CompositeRegularizer,
    LossFunction, LossStream, RelativeCertificate, StreamKind,
};
use crate::solvers::{comparator_argmin, minimize_sum};
use crate::vector::Vector;

/// Loss stream description; the seed comes from the experiment.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum StreamSpec {
    Fixed {
        loss: LossFunction,
    },
    IidScaled {
        base: LossFunction,
        lo: f64,
        hi: f64,
    },
    AdversarialLinear {
        bound: f64,
        #[serde(default)]
        symmetric: bool,
    },
    Replay {
        losses: Vec<LossFunction>,
    },
}

impl StreamSpec {
    pub fn to_kind(&self, seed: u64, dim: usize) -> StreamKind {
        match self.clone() {
            Self::Fixed { loss } => StreamKind::Fixed { loss },
            Self::IidScaled { base, lo, hi } => StreamKind::IidScaled { base, lo, hi, seed },
            Self::AdversarialLinear { bound, symmetric } => StreamKind::AdversarialLinear {
                dim,
                bound,
                seed,
                symmetric,
            },
            Self::Replay { losses } => StreamKind::Replay { losses },
        }
    }
}

/// Step schedule description; a missing `k` is filled in with the realized
/// comparator constant.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ScheduleSpec {
    SqrtDecay {
        #[serde(default)]
        k: Option<f64>,
        l: f64,
        offset: ScheduleOffset,
        numerator: ScheduleNumerator,
    },
    InverseTm {
        m: f64,
    },
    Constant {
        eta: f64,
    },
}

impl ScheduleSpec {
    pub fn resolve(&self, realized: f64) -> StepSchedule {
        match *self {
            Self::SqrtDecay {
                k,
                l,
                offset,
                numerator,
            } => StepSchedule::SqrtDecay {
                k: k.unwrap_or(realized),
                l,
                offset,
                numerator,
            },
            Self::InverseTm { m } => StepSchedule::InverseTm { m },
            Self::Constant { eta } => StepSchedule::Constant { eta },
        }
    }

    fn explicit_k(&self) -> Option<f64> {
        match *self {
            Self::SqrtDecay { k, .. } => k,
            _ => None,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Constants {
    /// Relative Lipschitz constant of every loss.
    #[serde(default)]
    pub l: Option<f64>,
    /// Relative strong convexity modulus of every loss.
    #[serde(default)]
    pub m: Option<f64>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    #[serde(default)]
    pub csv: Option<String>,
    #[serde(default)]
    pub json: Option<String>,
}

fn default_gamma() -> GammaMode {
    GammaMode::Ratio
}

fn default_grid() -> usize {
    1001
}

fn default_samples() -> usize {
    10_000
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub scenario: String,
    pub algorithm: AlgorithmKind,
    pub dimension: usize,
    pub domain: DomainSpec,
    /// `R` or `Φ`; omitted for follow-the-leader.
    #[serde(default)]
    pub reference: Option<ReferenceFunction>,
    /// Function the constants are relative to, when it differs from
    /// `reference` (follow-the-leader has none).
    #[serde(default)]
    pub relative_to: Option<ReferenceFunction>,
    pub stream: StreamSpec,
    #[serde(default)]
    pub schedule: Option<ScheduleSpec>,
    #[serde(default = "default_gamma")]
    pub gamma: GammaMode,
    #[serde(default)]
    pub extra: CompositeRegularizer,
    #[serde(default)]
    pub constants: Constants,
    pub horizon: usize,
    pub seed: u64,
    #[serde(default)]
    pub initial_point: Option<Vector>,
    #[serde(default = "default_grid")]
    pub comparator_grid: usize,
    #[serde(default = "default_samples")]
    pub certify_samples: usize,
    #[serde(default)]
    pub output: OutputSpec,
}

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("parse error at `{path}`: {message}")]
    Parse { path: String, message: String },
    #[error("invalid config:\n  {}", .0.join("\n  "))]
    Validation(Vec<String>),
}

#[derive(Debug, thiserror::Error)]
pub enum ExperimentError {
    #[error("{0}")]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Run(#[from] OcoError),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

/// A validated config together with non-fatal remarks.
#[derive(Clone, Debug, PartialEq)]
pub struct ParsedConfig {
    pub config: ExperimentConfig,
    pub warnings: Vec<String>,
}

pub fn parse_config(text: &str) -> Result<ParsedConfig, ConfigError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let config: ExperimentConfig =
        serde_path_to_error::deserialize(de).map_err(|e| ConfigError::Parse {
            path: e.path().to_string(),
            message: e.inner().to_string(),
        })?;
    let warnings = config.validate()?;
    Ok(ParsedConfig { config, warnings })
}

impl ExperimentConfig {
    /// Checks every field; returns warnings or the full list of errors.
    pub fn validate(&self) -> Result<Vec<String>, ConfigError> {
        let mut errors = Vec::new();
        let mut warnings = Vec::new();
        let n = self.dimension;
        let mut err = |field: &str, msg: String| errors.push(format!("{field}: {msg}"));
        if n == 0 {
            err("dimension", "must be at least 1".into());
        }
        if self.horizon == 0 {
            err("horizon", "must be at least 1".into());
        }
        if n > 0 {
            if let Err(e) = self.domain.validate(n) {
                err("domain", e.to_string());
            }
        }
        match (&self.reference, self.algorithm) {
            (None, AlgorithmKind::Ftl) => {}
            (Some(_), AlgorithmKind::Ftl) => {
                warnings.push("reference is ignored by ftl; constants use relative_to".into())
            }
            (None, _) => err("reference", "required for this algorithm".into()),
            (Some(r), _) => {
                if let Err(e) = r.validate() {
                    err("reference", e.to_string());
                }
            }
        }
        if let Some(r) = &self.relative_to {
            if let Err(e) = r.validate() {
                err("relative_to", e.to_string());
            }
        }
        let uses_entropy =
            |r: &Option<ReferenceFunction>| matches!(r, Some(ReferenceFunction::NegEntropy));
        if (uses_entropy(&self.reference) || uses_entropy(&self.relative_to))
            && match &self.domain {
                DomainSpec::Simplex => false,
                DomainSpec::Box { lo, .. } => lo.iter().any(|&c| c < 0.0),
                DomainSpec::AllSpace => true,
            }
        {
            err(
                "domain",
                "neg_entropy needs the simplex or a box in the non-negative orthant".into(),
            );
        }
        match (&self.schedule, self.algorithm) {
            (None, AlgorithmKind::Ftl) => {}
            (None, _) => err("schedule", "required for this algorithm".into()),
            (Some(spec), kind) => {
                let probe = spec.resolve(1.0);
                if let Err(OcoError::Param(msg)) = probe.validate() {
                    err("schedule", msg);
                }
                if let Some(k) = spec.explicit_k() {
                    if !(k.is_finite() && k > 0.0) {
                        err("schedule.k", format!("K must be positive, got {k}"));
                    }
                }
                if matches!(spec, ScheduleSpec::Constant { .. })
                    && self.gamma == GammaMode::Ratio
                    && matches!(kind, AlgorithmKind::Dsomd | AlgorithmKind::DsomdComposite)
                {
                    warnings.push(
                        "gamma ratio with a constant schedule gives gamma_t = 1 in every round"
                            .into(),
                    );
                }
            }
        }
        if let Err(e) = self.extra.validate(n) {
            err("extra", e.to_string());
        }
        if self.algorithm == AlgorithmKind::DsomdComposite && self.extra.is_zero() {
            err(
                "extra",
                "dsomd_composite needs a non-zero extra regularizer".into(),
            );
        }
        if self.algorithm == AlgorithmKind::Ftl && !self.extra.is_zero() {
            err("extra", "ftl does not support an extra regularizer".into());
        }
        for (name, v) in [
            ("constants.l", self.constants.l),
            ("constants.m", self.constants.m),
        ] {
            if let Some(v) = v {
                if !(v.is_finite() && v >= 0.0) {
                    err(name, format!("must be finite and non-negative, got {v}"));
                }
            }
        }
        let bound = self.bound_kind();
        match bound {
            Some(bound) if self.constants.l.is_none() => err(
                "constants.l",
                format!("required by the {} bound", bound.name()),
            ),
            Some(_) => {}
            None => warnings.push(
                "no regret bound applies: mirror descent with gamma_t = 1 is only covered \
                 under the inverse_tm schedule without an extra regularizer"
                    .into(),
            ),
        }
        if let Some(bound @ (BoundKind::FtlLog | BoundKind::OmdLog)) = bound {
            if self.constants.m.is_none_or(|m| m <= 0.0) {
                err(
                    "constants.m",
                    format!(
                        "a positive modulus is required by the {} bound",
                        bound.name()
                    ),
                );
            }
        }
        if self.algorithm == AlgorithmKind::Ftl && self.relative_to.is_none() {
            warnings.push("ftl without relative_to: certificates are unavailable".into());
        }
        match &self.stream {
            StreamSpec::Fixed { loss } => {
                if let Err(e) = loss.validate(n) {
                    err("stream.loss", e.to_string());
                }
            }
            StreamSpec::IidScaled { base, lo, hi } => {
                if let Err(e) = base.validate(n) {
                    err("stream.base", e.to_string());
                }
                if !(lo.is_finite() && hi.is_finite() && *lo >= 0.0 && lo <= hi) {
                    err(
                        "stream",
                        format!("scale range must satisfy 0 <= lo <= hi, got [{lo}, {hi}]"),
                    );
                }
            }
            StreamSpec::AdversarialLinear { bound, .. } => {
                if !(bound.is_finite() && *bound >= 0.0) {
                    err("stream.bound", format!("must be non-negative, got {bound}"));
                }
            }
            StreamSpec::Replay { losses } => {
                if losses.len() < self.horizon {
                    err(
                        "stream.losses",
                        format!("{} losses for a horizon of {}", losses.len(), self.horizon),
                    );
                }
                for (i, f) in losses.iter().enumerate() {
                    if let Err(e) = f.validate(n) {
                        err(&format!("stream.losses[{i}]"), e.to_string());
                    }
                }
            }
        }
        if let Some(x) = &self.initial_point {
            if x.dim() != n {
                err(
                    "initial_point",
                    format!("expected dimension {n}, got {}", x.dim()),
                );
            } else if !self.domain.contains(x, crate::geometry::MEMBERSHIP_TOL) {
                err("initial_point", "lies outside the domain".into());
            }
            if matches!(
                self.algorithm,
                AlgorithmKind::Ftrl | AlgorithmKind::Da | AlgorithmKind::Rda
            ) {
                err(
                    "initial_point",
                    "the FTRL family starts at the regularizer's minimizer".into(),
                );
            }
        }
        if self.comparator_grid < 2 {
            err("comparator_grid", "must be at least 2".into());
        }
        if self.certify_samples == 0 {
            err("certify_samples", "must be at least 1".into());
        }
        if errors.is_empty() {
            Ok(warnings)
        } else {
            Err(ConfigError::Validation(errors))
        }
    }

    /// SHA-256 of the canonical JSON serialization.
    pub fn digest(&self) -> String {
        let canonical = serde_json::to_string(self).expect("config serializes");
        hex::encode(Sha256::digest(canonical.as_bytes()))
    }

    pub fn stream(&self) -> Result<LossStream, OcoError> {
        LossStream::new(self.stream.to_kind(self.seed, self.dimension), self.horizon)
    }

    /// Function the stated constants are relative to.
    pub fn certificate_reference(&self) -> Option<&ReferenceFunction> {
        self.relative_to.as_ref().or(self.reference.as_ref())
    }

    fn algorithm_config(&self, schedule: StepSchedule) -> AlgorithmConfig {
        AlgorithmConfig {
            kind: self.algorithm,
            reference: self
                .reference
                .clone()
                .unwrap_or(ReferenceFunction::SquaredL2),
            schedule,
            gamma: self.gamma,
            extra: self.extra.clone(),
            domain: self.domain.clone(),
            dimension: self.dimension,
            initial_point: self.initial_point.clone(),
        }
    }

    /// Bound checked for this run. Mirror descent without stabilization
    /// (`γ_t = 1`) is only covered with `η_t = 1/(tM)` and no `Ψ`.
    pub fn bound_kind(&self) -> Option<BoundKind> {
        let unstabilized = self.algorithm == AlgorithmKind::OmdVanilla
            || (self.algorithm.is_mirror_descent() && self.gamma == GammaMode::One);
        if !unstabilized {
            return Some(BoundKind::for_run(self.algorithm, &self.extra));
        }
        let log_schedule = matches!(self.schedule, Some(ScheduleSpec::InverseTm { .. }));
        (log_schedule && self.extra.is_zero()).then_some(BoundKind::OmdLog)
    }

    fn csv_path(&self) -> String {
        self.output
            .csv
            .clone()
            .unwrap_or_else(|| format!("{}.csv", self.scenario))
    }

    fn json_path(&self) -> String {
        self.output
            .json
            .clone()
            .unwrap_or_else(|| format!("{}.json", self.scenario))
    }
}

/// One CSV row.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TraceRow {
    pub t: usize,
    /// Absent for follow-the-leader, which has no step size.
    pub eta_t: Option<f64>,
    /// Absent for the FTRL family.
    pub gamma_t: Option<f64>,
    /// `f_t(x_t) + Ψ(x_t)`
    pub loss_t: f64,
    pub cum_loss: f64,
    pub comparator_cum_loss: f64,
    pub regret_t: f64,
    /// Absent when no bound applies to the run.
    pub bound_t: Option<f64>,
    pub ledger_slack_t: f64,
}

pub const CSV_HEADER: &str =
    "t,eta_t,gamma_t,loss_t,cum_loss,comparator_cum_loss,regret_t,bound_t,ledger_slack_t";

fn sig12<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(round_significant(*x))
}

fn sig12_opt<S: Serializer>(x: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(v) => s.serialize_some(&round_significant(*v)),
        None => s.serialize_none(),
    }
}

/// Rounds to 12 significant digits; negative zero becomes zero.
pub fn round_significant(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    if !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().expect("formatted float parses")
}

/// `%.12g`-style rendering: 12 significant digits, trailing zeros dropped.
pub fn format_number(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    if (-4..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        let fixed = format!("{x:.decimals$}");
        trim_zeros(&fixed).to_string()
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mantissa), exp.abs())
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundSummary {
    pub kind: BoundKind,
    #[serde(serialize_with = "sig12")]
    pub bound_value: f64,
    #[serde(serialize_with = "sig12_opt")]
    pub closed_form: Option<f64>,
    #[serde(serialize_with = "sig12")]
    pub realized: f64,
    #[serde(serialize_with = "sig12")]
    pub slack: f64,
    #[serde(serialize_with = "sig12")]
    pub tolerance: f64,
    pub satisfied: bool,
}

impl From<&BoundReport> for BoundSummary {
    fn from(r: &BoundReport) -> Self {
        Self {
            kind: r.kind,
            bound_value: r.bound_value,
            closed_form: r.closed_form,
            realized: r.realized,
            slack: r.slack,
            tolerance: r.tolerance,
            satisfied: r.satisfied,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RunStatus {
    Ok,
    Failed,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SummaryRecord {
    pub scenario: String,
    pub algorithm: AlgorithmKind,
    pub status: RunStatus,
    pub error: Option<String>,
    pub seed: u64,
    pub config_digest: String,
    pub horizon: usize,
    pub rounds_completed: usize,
    pub comparator: Option<Vector>,
    #[serde(serialize_with = "sig12_opt")]
    pub k_used: Option<f64>,
    #[serde(serialize_with = "sig12_opt")]
    pub k_realized: Option<f64>,
    #[serde(serialize_with = "sig12_opt")]
    pub regret: Option<f64>,
    #[serde(serialize_with = "sig12_opt")]
    pub composite_regret: Option<f64>,
    pub bounds: Vec<BoundSummary>,
    /// Largest `lhs − rhs` over the run's ledger inequalities; non-positive
    /// when every inequality holds exactly.
    #[serde(serialize_with = "sig12_opt")]
    pub max_ledger_violation: Option<f64>,
    #[serde(serialize_with = "sig12")]
    pub ledger_tolerance: f64,
    pub ledger_holds: bool,
    pub warnings: Vec<String>,
    #[serde(serialize_with = "sig12")]
    pub runtime_seconds: f64,
    pub all_satisfied: bool,
}

/// Everything one experiment produced.
#[derive(Clone, Debug)]
pub struct ExperimentResult {
    pub config: ExperimentConfig,
    pub summary: SummaryRecord,
    pub rows: Vec<TraceRow>,
    pub trace: RunTrace,
}

impl ExperimentResult {
    pub fn csv(&self) -> String {
        let mut out = String::with_capacity(64 * (self.rows.len() + 1));
        out.push_str(CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            let eta = r.eta_t.map(format_number).unwrap_or_default();
            let gamma = r.gamma_t.map(format_number).unwrap_or_default();
            let bound = r.bound_t.map(format_number).unwrap_or_default();
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{}",
                r.t,
                eta,
                gamma,
                format_number(r.loss_t),
                format_number(r.cum_loss),
                format_number(r.comparator_cum_loss),
                format_number(r.regret_t),
                bound,
                format_number(r.ledger_slack_t),
            );
        }
        out
    }

    pub fn summary_json(&self) -> String {
        serde_json::to_string_pretty(&self.summary).expect("summary serializes")
    }
}

/// Runs a validated config end to end. Run errors do not abort: they are
/// recorded in the summary with `status = failed` next to the partial trace.
pub fn run_experiment(parsed: &ParsedConfig) -> ExperimentResult {
    let started = Instant::now();
    let cfg = &parsed.config;
    let mut result = ExperimentResult {
        config: cfg.clone(),
        summary: SummaryRecord {
            scenario: cfg.scenario.clone(),
            algorithm: cfg.algorithm,
            status: RunStatus::Ok,
            error: None,
            seed: cfg.seed,
            config_digest: cfg.digest(),
            horizon: cfg.horizon,
            rounds_completed: 0,
            comparator: None,
            k_used: None,
            k_realized: None,
            regret: None,
            composite_regret: None,
            bounds: Vec::new(),
            max_ledger_violation: None,
            ledger_tolerance: LEDGER_TOLERANCE,
            ledger_holds: false,
            warnings: parsed.warnings.clone(),
            runtime_seconds: 0.0,
            all_satisfied: false,
        },
        rows: Vec::new(),
        trace: RunTrace {
            algorithm: cfg.algorithm,
            initial: Vector::zeros(cfg.dimension),
            rounds: Vec::new(),
            last: Vector::zeros(cfg.dimension),
        },
    };
    if let Err(e) = execute(cfg, &mut result) {
        result.summary.status = RunStatus::Failed;
        result.summary.error = Some(e.to_string());
        result.summary.all_satisfied = false;
    }
    result.summary.rounds_completed = result.trace.horizon();
    result.summary.runtime_seconds = started.elapsed().as_secs_f64();
    result
}

fn execute(cfg: &ExperimentConfig, out: &mut ExperimentResult) -> Result<(), OcoError> {
    let n = cfg.dimension;
    let stream = cfg.stream()?;
    let losses = stream.collect()?;
    let kind = cfg.bound_kind();
    let psi_for_regret = if !cfg.extra.is_zero() {
        cfg.extra.clone()
    } else {
        CompositeRegularizer::Zero
    };
    let z = if cfg.domain.is_bounded() {
        comparator_argmin(
            &losses,
            &psi_for_regret,
            &cfg.domain,
            n,
            cfg.comparator_grid,
        )?
    } else {
        let weight = losses.len() as f64;
        minimize_sum(&losses, &psi_for_regret, weight, None, 0.0, &cfg.domain, n)?.minimizer
    };
    out.summary.comparator = Some(z.clone());

    // x₁ does not depend on K, so probe it with a placeholder schedule.
    let probe = cfg
        .schedule
        .as_ref()
        .map_or(StepSchedule::Constant { eta: 1.0 }, |s| s.resolve(1.0));
    let x1 = initial_iterate(&cfg.algorithm_config(probe))?;
    let reference = cfg
        .reference
        .clone()
        .unwrap_or(ReferenceFunction::SquaredL2);
    let k_realized = realized_k(cfg.algorithm, &reference, &cfg.domain, n, &z, &x1)?;
    let schedule = cfg
        .schedule
        .as_ref()
        .map_or(StepSchedule::Constant { eta: 1.0 }, |s| {
            s.resolve(k_realized)
        });
    let k_used = cfg
        .schedule
        .as_ref()
        .and_then(ScheduleSpec::explicit_k)
        .unwrap_or(k_realized);
    if cfg.algorithm != AlgorithmKind::Ftl {
        out.summary.k_realized = Some(k_realized);
        out.summary.k_used = Some(k_used);
    }

    let algo = cfg.algorithm_config(schedule.clone());
    let (trace, failure) = match run_game(&algo, &stream) {
        Ok(trace) => (trace, None),
        Err(f) => (f.partial, Some(f.error)),
    };
    out.trace = trace;
    let trace = &out.trace;

    let plain = regret(trace, &z);
    let composite = composite_regret(trace, &z, &cfg.extra);
    out.summary.regret = Some(plain);
    out.summary.composite_regret = Some(composite);
    let realized = if cfg.extra.is_zero() {
        plain
    } else {
        composite
    };

    let horizon = trace.horizon();
    let params = BoundParams {
        k: Some(k_used),
        l: cfg.constants.l,
        m: cfg.constants.m,
        horizon: horizon.max(1),
        schedule: Some(schedule.clone()),
    };
    let curve = match kind {
        Some(kind) => Some(bound_curve(kind, &params)?),
        None => None,
    };
    let tolerance = trace.residual_sum() + LEDGER_TOLERANCE;
    out.summary.ledger_tolerance = tolerance;
    if let (Some(kind), None) = (kind, &failure) {
        let value = theoretical_bound(kind, &params)?;
        let report = BoundReport::new(kind, value, realized, tolerance);
        out.summary.bounds.push(BoundSummary::from(&report));
    }

    // Ledger per prefix horizon and the largest violation of any ledger
    // inequality.
    let (prefix_rhs, violation) = if cfg.algorithm.is_mirror_descent() {
        let ledger = dsomd_ledger(
            trace,
            &z,
            &reference,
            &schedule,
            algo.effective_gamma(),
            &psi_for_regret,
            cfg.constants.l,
            cfg.constants.m.unwrap_or(0.0),
        )?;
        let mut v = ledger.regret - ledger.rhs;
        if let Some(e) = ledger.max_round_excess {
            v = v.max(e);
        }
        (ledger.prefix_rhs, v)
    } else {
        let r = (cfg.algorithm != AlgorithmKind::Ftl).then_some(&reference);
        let ledger = strong_ftrl_ledger(trace, &z, r, &schedule, &psi_for_regret)?;
        let mut v = ledger.regret - ledger.rhs;
        // The ledger itself must sit below the analytical bound.
        if let Some(&b) = curve.as_ref().and_then(|c| c.get(horizon.wrapping_sub(1))) {
            v = v.max(ledger.rhs - b);
        }
        if cfg.algorithm == AlgorithmKind::Ftl {
            if let (Some(l), Some(m)) = (cfg.constants.l, cfg.constants.m) {
                v = v.max(ftl_stability_excess(&ledger, l, m));
            }
        }
        (ledger.prefix_rhs, v)
    };
    if horizon > 0 {
        out.summary.max_ledger_violation = Some(violation);
        out.summary.ledger_holds = violation <= tolerance;
    }

    let curve_regret = regret_curve(trace, &z, &psi_for_regret);
    let psi_z = psi_for_regret.value(&z);
    let (mut cum, mut cum_z) = (0.0, 0.0);
    out.rows = trace
        .rounds
        .iter()
        .enumerate()
        .map(|(i, rec)| {
            let loss_t = rec.loss_value + psi_for_regret.value(&rec.x);
            cum += loss_t;
            cum_z += rec.loss.value(&z) + psi_z;
            TraceRow {
                t: rec.t,
                eta_t: (cfg.algorithm != AlgorithmKind::Ftl).then_some(rec.eta),
                gamma_t: rec.gamma,
                loss_t,
                cum_loss: cum,
                comparator_cum_loss: cum_z,
                regret_t: curve_regret[i],
                bound_t: curve.as_ref().map(|c| c[i]),
                ledger_slack_t: prefix_rhs[i] - curve_regret[i],
            }
        })
        .collect();

    out.summary.all_satisfied = failure.is_none() && out.summary.bounds.iter().all(|b| b.satisfied);
    match failure {
        Some(e) => Err(e),
        None => Ok(()),
    }
}

/// Writes the CSV trace and the JSON summary under `dir`.
pub fn emit_outputs(
    result: &ExperimentResult,
    dir: &Path,
) -> Result<(PathBuf, PathBuf), ExperimentError> {
    std::fs::create_dir_all(dir).map_err(|source| ExperimentError::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    let csv = dir.join(result.config.csv_path());
    let json = dir.join(result.config.json_path());
    for (path, body) in [(&csv, result.csv()), (&json, result.summary_json() + "\n")] {
        std::fs::write(path, body).map_err(|source| ExperimentError::Io {
            path: path.clone(),
            source,
        })?;
    }
    Ok((csv, json))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LabeledCertificate {
    pub loss: String,
    pub property: &'static str,
    #[serde(flatten)]
    pub certificate: RelativeCertificate,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CertifyReport {
    pub scenario: String,
    pub certificates: Vec<LabeledCertificate>,
    pub all_valid: bool,
}

/// Number of distinct stream losses sampled by [`certify_config`].
pub const CERTIFIED_STREAM_PREFIX: usize = 32;

/// Checks the config's stated constants against its loss stream by
/// sampling. Scaled streams are certified at the extreme scales: the
/// largest scale for `L` and the smallest for `M`.
pub fn certify_config(cfg: &ExperimentConfig) -> Result<CertifyReport, OcoError> {
    let reference = cfg.certificate_reference().ok_or_else(|| {
        OcoError::Param("certification needs `relative_to` or `reference`".into())
    })?;
    let n = cfg.dimension;
    let (lip_losses, sc_losses): (Vec<LossFunction>, Vec<LossFunction>) = match &cfg.stream {
        StreamSpec::Fixed { loss } => (vec![loss.clone()], vec![loss.clone()]),
        StreamSpec::IidScaled { base, lo, hi } => (vec![base.scaled(*hi)], vec![base.scaled(*lo)]),
        StreamSpec::AdversarialLinear { bound, symmetric } => {
            let stream = cfg.stream()?;
            let mut v: Vec<LossFunction> = (1..=cfg.horizon.min(CERTIFIED_STREAM_PREFIX))
                .map(|t| stream.loss_at(t))
                .collect::<Result<_, _>>()?;
            v.push(LossFunction::Linear {
                g: Vector::filled(n, *bound),
            });
            if *symmetric {
                v.push(LossFunction::Linear {
                    g: Vector::filled(n, -bound),
                });
            }
            (v.clone(), v)
        }
        StreamSpec::Replay { losses } => {
            let mut v: Vec<LossFunction> = Vec::new();
            for f in losses {
                if !v.contains(f) {
                    v.push(f.clone());
                }
                if v.len() == CERTIFIED_STREAM_PREFIX {
                    break;
                }
            }
            (v.clone(), v)
        }
    };
    let mut certificates = Vec::new();
    if let Some(l) = cfg.constants.l {
        for (i, f) in lip_losses.iter().enumerate() {
            let c = certify_relative_lipschitz(
                f,
                reference,
                l,
                &cfg.domain,
                n,
                cfg.certify_samples,
                cfg.seed.wrapping_add(i as u64),
            )?;
            certificates.push(LabeledCertificate {
                loss: f.label(),
                property: "relative_lipschitz",
                certificate: c,
            });
        }
    }
    if let Some(m) = cfg.constants.m {
        for (i, f) in sc_losses.iter().enumerate() {
            let c = certify_relative_strong_convexity(
                f,
                reference,
                m,
                &cfg.domain,
                n,
                cfg.certify_samples,
                cfg.seed.wrapping_add(1_000_003 + i as u64),
            )?;
            certificates.push(LabeledCertificate {
                loss: f.label(),
                property: "relative_strong_convexity",
                certificate: c,
            });
        }
    }
    let all_valid = certificates.iter().all(|c| c.certificate.valid);
    Ok(CertifyReport {
        scenario: cfg.scenario.clone(),
        certificates,
        all_valid,
    })
}
