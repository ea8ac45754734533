//! Game loop, regret accounting, analytical bounds and per-run inequality
//! ledgers.

use serde::{Deserialize, Serialize};

use crate::algorithms::{DsomdState, FtrlState, GammaMode, StepSchedule};
use crate::error::{OcoError, Result};
use crate::geometry::{DomainSpec, ReferenceFunction};
use crate::losses::{CompositeRegularizer, LossFunction, LossStream};
use crate::vector::Vector;

/// Slack allowed on top of accumulated solver residuals.
pub const LEDGER_TOLERANCE: f64 = 1e-6;
/// Slack of the per-round mirror-descent divergence check.
pub const PER_ROUND_TOLERANCE: f64 = 1e-7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AlgorithmKind {
    Ftrl,
    Ftl,
    Da,
    Rda,
    Dsomd,
    DsomdComposite,
    OmdVanilla,
}

impl AlgorithmKind {
    pub fn is_mirror_descent(self) -> bool {
        matches!(self, Self::Dsomd | Self::DsomdComposite | Self::OmdVanilla)
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Ftrl => "ftrl",
            Self::Ftl => "ftl",
            Self::Da => "da",
            Self::Rda => "rda",
            Self::Dsomd => "dsomd",
            Self::DsomdComposite => "dsomd_composite",
            Self::OmdVanilla => "omd_vanilla",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AlgorithmConfig {
    pub kind: AlgorithmKind,
    /// `R` for the FTRL family, `Φ` for mirror descent; ignored by FTL.
    pub reference: ReferenceFunction,
    pub schedule: StepSchedule,
    pub gamma: GammaMode,
    pub extra: CompositeRegularizer,
    pub domain: DomainSpec,
    pub dimension: usize,
    pub initial_point: Option<Vector>,
}

impl AlgorithmConfig {
    /// The mixing mode actually used: vanilla OMD always mixes with `γ = 1`.
    pub fn effective_gamma(&self) -> GammaMode {
        match self.kind {
            AlgorithmKind::OmdVanilla => GammaMode::One,
            _ => self.gamma,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RoundRecord {
    pub t: usize,
    pub x: Vector,
    pub loss: LossFunction,
    /// `f_t(x_t)`
    pub loss_value: f64,
    /// `Ψ(x_t)`
    pub extra_value: f64,
    pub subgradient: Vector,
    pub eta: f64,
    pub gamma: Option<f64>,
    pub residual: f64,
    /// `D_Φ(x_t, w_{t+1})` for mirror descent.
    pub divergence: Option<f64>,
    /// `H_t(x_t)` and `H_t(x_{t+1})` for the FTRL family.
    pub h_current: Option<f64>,
    pub h_next: Option<f64>,
    /// `R(x_t)` for the FTRL family.
    pub reference_value: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunTrace {
    pub algorithm: AlgorithmKind,
    pub initial: Vector,
    pub rounds: Vec<RoundRecord>,
    /// `x_{T+1}`
    pub last: Vector,
}

impl RunTrace {
    pub fn horizon(&self) -> usize {
        self.rounds.len()
    }

    pub fn residual_sum(&self) -> f64 {
        self.rounds.iter().map(|r| r.residual).sum()
    }

    /// `x_{t+1}` for round `t` (1-based).
    pub fn next_iterate(&self, t: usize) -> &Vector {
        self.rounds.get(t).map_or(&self.last, |r| &r.x)
    }
}

/// A run that stopped early; `partial` holds every completed round.
#[derive(Clone, Debug, PartialEq, thiserror::Error)]
#[error("run aborted after {} rounds: {error}", partial.rounds.len())]
pub struct RunFailure {
    pub error: OcoError,
    pub partial: RunTrace,
}

enum Learner {
    Ftrl(FtrlState),
    Mirror(DsomdState),
}

fn build_learner(config: &AlgorithmConfig) -> Result<Learner> {
    let n = config.dimension;
    match config.kind {
        AlgorithmKind::Ftrl | AlgorithmKind::Ftl | AlgorithmKind::Da | AlgorithmKind::Rda => {
            let reference = match config.kind {
                AlgorithmKind::Ftl => None,
                _ => Some(config.reference.clone()),
            };
            FtrlState::init(
                reference,
                config.schedule.clone(),
                config.domain.clone(),
                config.extra.clone(),
                n,
                config.initial_point.clone(),
            )
            .map(Learner::Ftrl)
        }
        AlgorithmKind::Dsomd | AlgorithmKind::DsomdComposite | AlgorithmKind::OmdVanilla => {
            DsomdState::init(
                config.reference.clone(),
                config.schedule.clone(),
                config.effective_gamma(),
                config.domain.clone(),
                config.extra.clone(),
                n,
                config.initial_point.clone(),
            )
            .map(Learner::Mirror)
        }
    }
}

/// The first iterate `x₁` the configured algorithm would play.
pub fn initial_iterate(config: &AlgorithmConfig) -> Result<Vector> {
    Ok(match build_learner(config)? {
        Learner::Ftrl(s) => s.initial().clone(),
        Learner::Mirror(s) => s.initial().clone(),
    })
}

/// Plays `stream` against the configured algorithm for the full horizon.
pub fn run_game(
    config: &AlgorithmConfig,
    stream: &LossStream,
) -> std::result::Result<RunTrace, Box<RunFailure>> {
    let empty = |error: OcoError| {
        Box::new(RunFailure {
            error,
            partial: RunTrace {
                algorithm: config.kind,
                initial: Vector::zeros(config.dimension),
                rounds: Vec::new(),
                last: Vector::zeros(config.dimension),
            },
        })
    };
    let mut learner = build_learner(config).map_err(empty)?;
    let initial = match &learner {
        Learner::Ftrl(s) => s.initial().clone(),
        Learner::Mirror(s) => s.initial().clone(),
    };
    let mut trace = RunTrace {
        algorithm: config.kind,
        initial: initial.clone(),
        rounds: Vec::with_capacity(stream.horizon()),
        last: initial,
    };
    for t in 1..=stream.horizon() {
        match play_round(config, &mut learner, stream, t) {
            Ok(record) => trace.rounds.push(record),
            Err(error) => {
                trace.last = trace
                    .rounds
                    .last()
                    .map_or(trace.initial.clone(), |r| r.x.clone());
                return Err(Box::new(RunFailure {
                    error,
                    partial: trace,
                }));
            }
        }
    }
    trace.last = match &learner {
        Learner::Ftrl(s) => s.current().clone(),
        Learner::Mirror(s) => s.current().clone(),
    };
    Ok(trace)
}

fn play_round(
    config: &AlgorithmConfig,
    learner: &mut Learner,
    stream: &LossStream,
    t: usize,
) -> Result<RoundRecord> {
    let f = stream.loss_at(t)?;
    f.validate(config.dimension)?;
    match learner {
        Learner::Ftrl(state) => {
            let x = state.current().clone();
            let g = f.subgradient(&x);
            let reference_value = state.reference_value(&x)?;
            let step = match config.kind {
                AlgorithmKind::Da => state.da_step(&g)?,
                AlgorithmKind::Rda => state.rda_step(&g)?,
                _ => state.step(&f)?,
            };
            Ok(RoundRecord {
                t,
                loss_value: f.value(&x),
                extra_value: config.extra.value(&x),
                x,
                loss: f,
                subgradient: g,
                eta: step.eta,
                gamma: None,
                residual: step.residual,
                divergence: None,
                h_current: Some(step.h_current),
                h_next: Some(step.h_next),
                reference_value: Some(reference_value),
            })
        }
        Learner::Mirror(state) => {
            let x = state.current().clone();
            let g = f.subgradient(&x);
            let step = state.step(&g)?;
            Ok(RoundRecord {
                t,
                loss_value: f.value(&x),
                extra_value: config.extra.value(&x),
                x,
                loss: f,
                subgradient: g,
                eta: step.eta,
                gamma: Some(step.gamma),
                residual: step.residual,
                divergence: Some(step.divergence),
                h_current: None,
                h_next: None,
                reference_value: None,
            })
        }
    }
}

/// `Σ f_t(x_t) − Σ f_t(z)`.
pub fn regret(trace: &RunTrace, z: &Vector) -> f64 {
    trace
        .rounds
        .iter()
        .map(|r| r.loss_value - r.loss.value(z))
        .sum()
}

/// `Σ (f_t(x_t) + Ψ(x_t)) − Σ (f_t(z) + Ψ(z))`.
pub fn composite_regret(trace: &RunTrace, z: &Vector, psi: &CompositeRegularizer) -> f64 {
    let at_z = psi.value(z);
    trace
        .rounds
        .iter()
        .map(|r| r.loss_value + psi.value(&r.x) - r.loss.value(z) - at_z)
        .sum()
}

/// Prefix regrets `Regret_t(z)` for `t = 1..T`, with `Ψ` on both sides.
pub fn regret_curve(trace: &RunTrace, z: &Vector, psi: &CompositeRegularizer) -> Vec<f64> {
    let at_z = psi.value(z);
    let mut total = 0.0;
    trace
        .rounds
        .iter()
        .map(|r| {
            total += r.loss_value + psi.value(&r.x) - r.loss.value(z) - at_z;
            total
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    /// `K/η_T + Σ L²η_{t−1}/2`, closed form `2L√(K(T+1))`.
    FtrlSqrt,
    /// `L²/(2M) (ln T + 1)` for follow-the-leader.
    FtlLog,
    /// `K/η_{T+1} + Σ η_t L²/2`, closed form `2L√(K(T+1))`.
    DsomdSqrt,
    /// `L²/(2M) (ln T + 1)` for mirror descent with `γ = 1`.
    OmdLog,
    /// `2K/η_T + Σ L²η_{t−1}/2`, closed form `2L√(K(T+1))`.
    CompositeFtrl,
    /// Same shape as `dsomd_sqrt`, for composite regret.
    CompositeDsomd,
}

impl BoundKind {
    pub fn name(self) -> &'static str {
        match self {
            Self::FtrlSqrt => "ftrl_sqrt",
            Self::FtlLog => "ftl_log",
            Self::DsomdSqrt => "dsomd_sqrt",
            Self::OmdLog => "omd_log",
            Self::CompositeFtrl => "composite_ftrl",
            Self::CompositeDsomd => "composite_dsomd",
        }
    }

    /// Bound that applies to an algorithm run.
    pub fn for_run(kind: AlgorithmKind, extra: &CompositeRegularizer) -> Self {
        match kind {
            AlgorithmKind::Ftrl | AlgorithmKind::Da if extra.is_zero() => Self::FtrlSqrt,
            AlgorithmKind::Ftrl | AlgorithmKind::Da | AlgorithmKind::Rda => Self::CompositeFtrl,
            AlgorithmKind::Ftl => Self::FtlLog,
            AlgorithmKind::Dsomd if extra.is_zero() => Self::DsomdSqrt,
            AlgorithmKind::Dsomd | AlgorithmKind::DsomdComposite => Self::CompositeDsomd,
            AlgorithmKind::OmdVanilla => Self::OmdLog,
        }
    }

    pub fn is_composite(self) -> bool {
        matches!(self, Self::CompositeFtrl | Self::CompositeDsomd)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct BoundParams {
    pub k: Option<f64>,
    pub l: Option<f64>,
    pub m: Option<f64>,
    pub horizon: usize,
    pub schedule: Option<StepSchedule>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BoundValue {
    pub schedule_form: f64,
    pub closed_form: Option<f64>,
}

fn need(name: &str, v: Option<f64>) -> Result<f64> {
    match v {
        Some(x) if x.is_finite() && x >= 0.0 => Ok(x),
        Some(x) => Err(OcoError::Param(format!(
            "{name} must be finite and non-negative, got {x}"
        ))),
        None => Err(OcoError::Param(format!("bound needs the constant {name}"))),
    }
}

/// Evaluates a regret bound at horizon `params.horizon`.
pub fn theoretical_bound(kind: BoundKind, params: &BoundParams) -> Result<BoundValue> {
    let curve = bound_curve(kind, params)?;
    let horizon = params.horizon as f64;
    let l = need("L", params.l)?;
    let closed_form = match kind {
        BoundKind::FtlLog | BoundKind::OmdLog => {
            Some(l * l / (2.0 * need("M", params.m)?) * (horizon.ln() + 1.0))
        }
        _ => Some(2.0 * l * (need("K", params.k)? * (horizon + 1.0)).sqrt()),
    };
    Ok(BoundValue {
        schedule_form: *curve.last().expect("horizon is positive"),
        closed_form,
    })
}

/// Schedule-form bound at every prefix horizon `t = 1..=params.horizon`.
pub fn bound_curve(kind: BoundKind, params: &BoundParams) -> Result<Vec<f64>> {
    let t_max = params.horizon;
    if t_max == 0 {
        return Err(OcoError::Param(
            "bound needs a horizon of at least one round".into(),
        ));
    }
    let l = need("L", params.l)?;
    let half_l2 = l * l / 2.0;
    let mut out = Vec::with_capacity(t_max);
    match kind {
        BoundKind::FtlLog | BoundKind::OmdLog => {
            let m = need("M", params.m)?;
            if m == 0.0 {
                return Err(OcoError::Param("M must be positive".into()));
            }
            let mut sum = 0.0;
            for t in 1..=t_max {
                sum += match (&params.schedule, kind) {
                    (Some(s), BoundKind::OmdLog) => half_l2 * s.eta(t),
                    _ => half_l2 / (m * t as f64),
                };
                out.push(sum);
            }
        }
        _ => {
            let k = need("K", params.k)?;
            let s = params
                .schedule
                .as_ref()
                .ok_or_else(|| OcoError::Param("bound needs the step schedule".into()))?;
            let mut sum = 0.0;
            for t in 1..=t_max {
                match kind {
                    BoundKind::FtrlSqrt | BoundKind::CompositeFtrl => {
                        let factor = if kind == BoundKind::CompositeFtrl {
                            2.0
                        } else {
                            1.0
                        };
                        sum += half_l2 * s.eta(t - 1);
                        out.push(factor * k * s.inv_eta(t) + sum);
                    }
                    _ => {
                        sum += half_l2 * s.eta(t);
                        out.push(k * s.inv_eta(t + 1) + sum);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Verdict of one bound against a realized regret.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub kind: BoundKind,
    pub bound_value: f64,
    pub closed_form: Option<f64>,
    pub realized: f64,
    pub slack: f64,
    pub tolerance: f64,
    pub satisfied: bool,
}

impl BoundReport {
    pub fn new(kind: BoundKind, value: BoundValue, realized: f64, tolerance: f64) -> Self {
        Self {
            kind,
            bound_value: value.schedule_form,
            closed_form: value.closed_form,
            realized,
            slack: value.schedule_form - realized,
            tolerance,
            satisfied: realized <= value.schedule_form + tolerance,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FtrlLedger {
    /// Regret (composite when `Ψ` is present).
    pub regret: f64,
    pub rhs: f64,
    pub slack: f64,
    pub tolerance: f64,
    pub holds: bool,
    /// Right-hand side evaluated at every prefix horizon `t`.
    pub prefix_rhs: Vec<f64>,
    /// `H_t(x_t) − H_t(x_{t+1})` per round.
    pub stability_terms: Vec<f64>,
}

/// Both sides of the strong FTRL lemma
/// `Regret ≤ Σ_{t=0}^T (1/η_t − 1/η_{t−1})(R(z) − R(x_t)) + Σ_t (H_t(x_t) − H_t(x_{t+1}))`
/// with `x₀ = x₁` and `1/η_{−1} = 0`. The `t = 0` and `t = 1` terms of the
/// first sum combine into `(R(z) − R(x₁))/η₁`, so `η₀` never enters.
pub fn strong_ftrl_ledger(
    trace: &RunTrace,
    z: &Vector,
    reference: Option<&ReferenceFunction>,
    schedule: &StepSchedule,
    psi: &CompositeRegularizer,
) -> Result<FtrlLedger> {
    let r_z = match reference {
        Some(r) => r.value(z)?,
        None => 0.0,
    };
    let curve = regret_curve(trace, z, psi);
    let mut prefix_rhs = Vec::with_capacity(trace.horizon());
    let mut stability_terms = Vec::with_capacity(trace.horizon());
    let mut total = 0.0;
    for rec in &trace.rounds {
        let (Some(hc), Some(hn), Some(r_x)) = (rec.h_current, rec.h_next, rec.reference_value)
        else {
            return Err(OcoError::Param(format!(
                "round {} carries no FTRL ledger data",
                rec.t
            )));
        };
        if reference.is_some() {
            let weight = schedule.inv_eta(rec.t)
                - if rec.t == 1 {
                    0.0
                } else {
                    schedule.inv_eta(rec.t - 1)
                };
            total += weight * (r_z - r_x);
        }
        total += hc - hn;
        stability_terms.push(hc - hn);
        prefix_rhs.push(total);
    }
    let regret = curve.last().copied().unwrap_or(0.0);
    let tolerance = trace.residual_sum() + LEDGER_TOLERANCE;
    Ok(FtrlLedger {
        regret,
        rhs: total,
        slack: total - regret,
        tolerance,
        holds: regret <= total + tolerance,
        prefix_rhs,
        stability_terms,
    })
}

/// Largest excess of `H_t(x_t) − H_t(x_{t+1})` over `L²/(2Mt)`; non-positive
/// when every follow-the-leader stability term obeys its bound.
pub fn ftl_stability_excess(ledger: &FtrlLedger, l: f64, m: f64) -> f64 {
    ledger
        .stability_terms
        .iter()
        .enumerate()
        .map(|(i, d)| d - l * l / (2.0 * m * (i + 1) as f64))
        .fold(f64::NEG_INFINITY, f64::max)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DsomdLedger {
    pub regret: f64,
    pub rhs: f64,
    pub slack: f64,
    pub tolerance: f64,
    pub holds: bool,
    /// `max_t D_Φ(x_t, w_{t+1}) − η_t²L²/2`, when `L` is known.
    pub max_round_excess: Option<f64>,
    /// Rounds whose excess is above the per-round tolerance.
    pub round_violations: usize,
    pub prefix_rhs: Vec<f64>,
}

/// Aggregate mirror-descent ledger.
///
/// With `γ_t = η_{t+1}/η_t` the right-hand side is
/// `Σ D_Φ(x_t, w_{t+1})/η_t + D_Φ(z, x₁)/η_{T+1}`. With `γ_t = 1` it is the
/// summed per-round inequality
/// `Σ [D_Φ(x_t, w_{t+1}) + D_Φ(z, x_t) − D_Φ(z, x_{t+1})]/η_t − M Σ D_Φ(z, x_t)`.
/// Composite runs are measured with composite regret.
#[allow(clippy::too_many_arguments)]
pub fn dsomd_ledger(
    trace: &RunTrace,
    z: &Vector,
    phi: &ReferenceFunction,
    schedule: &StepSchedule,
    gamma: GammaMode,
    psi: &CompositeRegularizer,
    l: Option<f64>,
    m: f64,
) -> Result<DsomdLedger> {
    let curve = regret_curve(trace, z, psi);
    let d_z = |x: &Vector| phi.bregman_divergence(z, &phi.floor_interior(x));
    let d_start = d_z(&trace.initial)?;
    let mut prefix_rhs = Vec::with_capacity(trace.horizon());
    let mut running = 0.0;
    let mut max_excess: Option<f64> = None;
    let mut round_violations = 0;
    for rec in &trace.rounds {
        let d = rec.divergence.ok_or_else(|| {
            OcoError::Param(format!("round {} carries no mirror-descent data", rec.t))
        })?;
        if let Some(l) = l {
            let excess = d - rec.eta * rec.eta * l * l / 2.0;
            if excess > PER_ROUND_TOLERANCE {
                round_violations += 1;
            }
            max_excess = Some(max_excess.map_or(excess, |e: f64| e.max(excess)));
        }
        let inv = schedule.inv_eta(rec.t);
        match gamma {
            GammaMode::Ratio => {
                running += d * inv;
                prefix_rhs.push(running + d_start * schedule.inv_eta(rec.t + 1));
            }
            GammaMode::One => {
                let now = d_z(&rec.x)?;
                let next = d_z(trace.next_iterate(rec.t))?;
                running += (d + now - next) * inv - m * now;
                prefix_rhs.push(running);
            }
        }
    }
    let rhs = prefix_rhs.last().copied().unwrap_or(0.0);
    let regret = curve.last().copied().unwrap_or(0.0);
    let tolerance = trace.residual_sum() + LEDGER_TOLERANCE;
    Ok(DsomdLedger {
        regret,
        rhs,
        slack: rhs - regret,
        tolerance,
        holds: regret <= rhs + tolerance,
        max_round_excess: max_excess,
        round_violations,
        prefix_rhs,
    })
}

/// `(Σ a_t/√(Σ_{i≤t} a_i), 2√(Σ a_t), lhs ≤ rhs + 1e-12)`.
pub fn sqrt_prefix_sum_check(a: &[f64]) -> Result<(f64, f64, bool)> {
    if a.first().is_none_or(|&a1| a1.is_nan() || a1 <= 0.0) {
        return Err(OcoError::Param(
            "sequence must start with a positive term".into(),
        ));
    }
    if a.iter().any(|&x| !(x >= 0.0 && x.is_finite())) {
        return Err(OcoError::Param(
            "sequence terms must be finite and non-negative".into(),
        ));
    }
    let mut prefix = 0.0;
    let mut lhs = 0.0;
    for &x in a {
        prefix += x;
        lhs += x / prefix.sqrt();
    }
    let rhs = 2.0 * prefix.sqrt();
    Ok((lhs, rhs, lhs <= rhs + 1e-12))
}

/// `f(mean of x_1..x_T) − f(x*)` for a fixed-loss run.
pub fn averaged_iterate_gap(trace: &RunTrace, f: &LossFunction, x_star: &Vector) -> f64 {
    let n = trace.initial.dim();
    let mut mean = Vector::zeros(n);
    for (i, rec) in trace.rounds.iter().enumerate() {
        mean = mean.axpy(1.0 / (i + 1) as f64, &rec.x.sub(&mean));
    }
    f.value(&mean) - f.value(x_star)
}

/// `2L√(2K)/√T`
pub fn averaged_iterate_bound(l: f64, k: f64, horizon: usize) -> f64 {
    2.0 * l * (2.0 * k).sqrt() / (horizon as f64).sqrt()
}

/// Realized `K`: `R(z) − R(x₁)` for the FTRL family, `D_Φ(z, x₁)` for
/// mirror descent. Degenerate values (`≤ 1e-12`, which would make every
/// step size vanish) fall back to the supremum over the domain's extreme
/// points.
pub fn realized_k(
    kind: AlgorithmKind,
    reference: &ReferenceFunction,
    dom: &DomainSpec,
    n: usize,
    z: &Vector,
    x1: &Vector,
) -> Result<f64> {
    let k = if kind.is_mirror_descent() {
        reference.bregman_divergence(z, &reference.floor_interior(x1))?
    } else if kind == AlgorithmKind::Ftl {
        return Ok(0.0);
    } else {
        reference.value(z)? - reference.value(x1)?
    };
    if k > 1e-12 {
        return Ok(k);
    }
    if kind.is_mirror_descent() {
        reference.max_divergence_over(dom, n, x1)
    } else {
        reference.max_gap_over(dom, n, x1)
    }
}
