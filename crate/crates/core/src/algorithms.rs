//! FTRL and its relatives, dual-stabilized online mirror descent, step-size
//! schedules and stabilization coefficients.

use serde::{Deserialize, Serialize};

use crate::error::{OcoError, Result};
use crate::geometry::{
    bregman_project, composite_bregman_prox, DomainSpec, ReferenceFunction, MEMBERSHIP_TOL,
};
use crate::losses::{CompositeRegularizer, LossFunction, LossSum};
use crate::solvers::{minimize_aggregate, minimize_linear_plus_ref, SolveMethod};
use crate::vector::Vector;

/// Tolerance of the `Ψ(x₁) = 0` check.
pub const INITIAL_EXTRA_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScheduleOffset {
    /// `η_t ∝ 1/√t`
    T,
    /// `η_t ∝ 1/√(t+1)`
    #[serde(rename = "t_plus_1")]
    TPlus1,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScheduleNumerator {
    SqrtK,
    Sqrt2k,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StepSchedule {
    /// `η_t = √K / (L √(t + offset))`, or `√(2K)` in the numerator.
    SqrtDecay {
        k: f64,
        l: f64,
        offset: ScheduleOffset,
        numerator: ScheduleNumerator,
    },
    /// `η_t = 1 / (t M)`
    InverseTm {
        m: f64,
    },
    Constant {
        eta: f64,
    },
}

impl StepSchedule {
    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(OcoError::Param(format!("{name} must be positive, got {v}")))
            }
        };
        match *self {
            Self::SqrtDecay { k, l, .. } => {
                positive("K", k)?;
                positive("L", l)
            }
            Self::InverseTm { m } => positive("M", m),
            Self::Constant { eta } => positive("eta", eta),
        }
    }

    /// `1/η_t`; zero where `η_t` is infinite (`t = 0` for schedules that
    /// start at `1/√t` or `1/t`).
    pub fn inv_eta(&self, t: usize) -> f64 {
        let t = t as f64;
        match *self {
            Self::SqrtDecay {
                k,
                l,
                offset,
                numerator,
            } => {
                let shift = match offset {
                    ScheduleOffset::T => 0.0,
                    ScheduleOffset::TPlus1 => 1.0,
                };
                let top = match numerator {
                    ScheduleNumerator::SqrtK => k.sqrt(),
                    ScheduleNumerator::Sqrt2k => (2.0 * k).sqrt(),
                };
                l * (t + shift).sqrt() / top
            }
            Self::InverseTm { m } => t * m,
            Self::Constant { eta } => 1.0 / eta,
        }
    }

    pub fn eta(&self, t: usize) -> f64 {
        1.0 / self.inv_eta(t)
    }

    /// `η_{t+1} / η_t`, which lies in `(0, 1]` for every kind.
    pub fn ratio(&self, t: usize) -> f64 {
        if let Self::Constant { .. } = self {
            return 1.0;
        }
        self.inv_eta(t) / self.inv_eta(t + 1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GammaMode {
    /// `γ_t = η_{t+1} / η_t`
    Ratio,
    /// `γ_t = 1`, classical mirror descent.
    One,
}

/// The stabilization coefficient used at round `t`.
pub fn stabilization_gamma(mode: GammaMode, schedule: &StepSchedule, t: usize) -> f64 {
    match mode {
        GammaMode::Ratio => schedule.ratio(t),
        GammaMode::One => 1.0,
    }
}

fn check_extra_at_start(psi: &CompositeRegularizer, x1: &Vector) -> Result<()> {
    let v = psi.value(x1);
    if v.abs() > INITIAL_EXTRA_TOL {
        return Err(OcoError::Param(format!(
            "extra regularizer must vanish at the initial point {x1}, got {v}"
        )));
    }
    Ok(())
}

/// Outcome of one FTRL-family update.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FtrlStep {
    pub x_next: Vector,
    /// `η_t` used by the update.
    pub eta: f64,
    pub residual: f64,
    pub method: SolveMethod,
    /// `H_t(x_t)` and `H_t(x_{t+1})` with `H_t = F_t + tΨ + R/η_t`.
    pub h_current: f64,
    pub h_next: f64,
}

/// State of FTRL, FTL, dual averaging and regularized dual averaging.
#[derive(Clone, Debug)]
pub struct FtrlState {
    t: usize,
    n: usize,
    reference: Option<ReferenceFunction>,
    schedule: StepSchedule,
    dom: DomainSpec,
    psi: CompositeRegularizer,
    sum: LossSum,
    x: Vector,
    x1: Vector,
}

impl FtrlState {
    /// `x₁ ∈ argmin_X R`. Without a reference function (FTL) every point is
    /// a minimizer; `initial` picks one, otherwise the domain center is used.
    pub fn init(
        reference: Option<ReferenceFunction>,
        schedule: StepSchedule,
        dom: DomainSpec,
        psi: CompositeRegularizer,
        n: usize,
        initial: Option<Vector>,
    ) -> Result<Self> {
        schedule.validate()?;
        dom.validate(n)?;
        psi.validate(n)?;
        if let Some(r) = &reference {
            r.validate()?;
        }
        let x1 = match (&reference, initial) {
            (None, Some(x)) => {
                x.check_dim(n)?;
                dom.check_contains(&x)?;
                x
            }
            (Some(_), Some(_)) => {
                return Err(OcoError::Param(
                    "an initial point can only be chosen when there is no regularizer".into(),
                ))
            }
            (r, None) => {
                minimize_aggregate(
                    &LossSum::new(n),
                    &CompositeRegularizer::Zero,
                    0.0,
                    r.as_ref(),
                    1.0,
                    &psi.fold_domain(&dom)?,
                )?
                .minimizer
            }
        };
        check_extra_at_start(&psi, &x1)?;
        Ok(Self {
            t: 0,
            n,
            reference,
            schedule,
            dom,
            psi,
            sum: LossSum::new(n),
            x: x1.clone(),
            x1,
        })
    }

    /// Number of losses absorbed so far.
    pub fn round(&self) -> usize {
        self.t
    }

    pub fn current(&self) -> &Vector {
        &self.x
    }

    pub fn initial(&self) -> &Vector {
        &self.x1
    }

    pub fn reference(&self) -> Option<&ReferenceFunction> {
        self.reference.as_ref()
    }

    pub fn schedule(&self) -> &StepSchedule {
        &self.schedule
    }

    pub fn extra(&self) -> &CompositeRegularizer {
        &self.psi
    }

    /// `R(x)`, zero for FTL.
    pub fn reference_value(&self, x: &Vector) -> Result<f64> {
        match &self.reference {
            Some(r) => r.value(x),
            None => Ok(0.0),
        }
    }

    /// `H_t(x) = F_t(x) + tΨ(x) + R(x)/η_t` for the current `t`.
    pub fn h_value(&self, x: &Vector) -> Result<f64> {
        let mut v = self.sum.value(x) + self.t as f64 * self.psi.value(x);
        if self.reference.is_some() {
            v += self.schedule.inv_eta(self.t) * self.reference_value(x)?;
        }
        Ok(v)
    }

    fn finish(&mut self, x_next: Vector, residual: f64, method: SolveMethod) -> Result<FtrlStep> {
        let h_current = self.h_value(&self.x)?;
        let h_next = self.h_value(&x_next)?;
        self.x = x_next.clone();
        Ok(FtrlStep {
            x_next,
            eta: self.schedule.eta(self.t),
            residual,
            method,
            h_current,
            h_next,
        })
    }

    /// `x_{t+1} ∈ argmin F_t + tΨ + R/η_t`.
    pub fn step(&mut self, f: &LossFunction) -> Result<FtrlStep> {
        f.validate(self.n)?;
        self.sum.add(f);
        self.t += 1;
        let report = minimize_aggregate(
            &self.sum,
            &self.psi,
            self.t as f64,
            self.reference.as_ref(),
            self.schedule.inv_eta(self.t),
            &self.dom,
        )?;
        self.finish(report.minimizer, report.residual, report.method)
    }

    /// Dual averaging: `x_{t+1} ∈ argmin η_t Σ⟨gᵢ, x⟩ + R`.
    pub fn da_step(&mut self, g: &Vector) -> Result<FtrlStep> {
        g.check_dim(self.n)?;
        let reference = self
            .reference
            .clone()
            .ok_or_else(|| OcoError::Param("dual averaging needs a regularizer".into()))?;
        self.sum.add(&LossFunction::Linear { g: g.clone() });
        self.t += 1;
        let report = minimize_linear_plus_ref(
            self.sum.linear_part(),
            self.schedule.eta(self.t),
            &reference,
            &self.dom,
        )?;
        self.finish(report.minimizer, report.residual, report.method)
    }

    /// Regularized dual averaging: `x_{t+1} ∈ argmin Σ⟨gᵢ, x⟩ + tΨ + R/η_t`.
    pub fn rda_step(&mut self, g: &Vector) -> Result<FtrlStep> {
        self.step(&LossFunction::Linear { g: g.clone() })
    }
}

/// Outcome of one DS-OMD update.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DsomdStep {
    pub x_next: Vector,
    /// `w_{t+1} = ∇Φ*(∇Φ(x_t) − η_t g_t)`
    pub w_next: Vector,
    pub y_next: Vector,
    pub eta: f64,
    pub gamma: f64,
    /// `D_Φ(x_t, w_{t+1})`
    pub divergence: f64,
    pub residual: f64,
}

/// State of dual-stabilized online mirror descent.
#[derive(Clone, Debug)]
pub struct DsomdState {
    t: usize,
    n: usize,
    phi: ReferenceFunction,
    schedule: StepSchedule,
    gamma_mode: GammaMode,
    dom: DomainSpec,
    psi: CompositeRegularizer,
    x: Vector,
    x1: Vector,
    dual_x1: Vector,
}

impl DsomdState {
    /// `x₁` defaults to the projection of `∇Φ*(0)`, the minimizer of `Φ`
    /// over the domain.
    pub fn init(
        phi: ReferenceFunction,
        schedule: StepSchedule,
        gamma_mode: GammaMode,
        dom: DomainSpec,
        psi: CompositeRegularizer,
        n: usize,
        initial: Option<Vector>,
    ) -> Result<Self> {
        phi.validate()?;
        schedule.validate()?;
        dom.validate(n)?;
        psi.validate(n)?;
        let x1 = match initial {
            Some(x) => {
                x.check_dim(n)?;
                if !dom.contains(&x, MEMBERSHIP_TOL) {
                    return Err(OcoError::Param(format!(
                        "initial point {x} lies outside {}",
                        dom.describe()
                    )));
                }
                x
            }
            None => {
                let free = phi.grad_conjugate(&Vector::zeros(n))?;
                bregman_project(&phi, &free, &psi.fold_domain(&dom)?)?.point
            }
        };
        check_extra_at_start(&psi, &x1)?;
        let dual_x1 = phi.gradient(&phi.floor_interior(&x1))?;
        Ok(Self {
            t: 1,
            n,
            phi,
            schedule,
            gamma_mode,
            dom,
            psi,
            x: x1.clone(),
            x1,
            dual_x1,
        })
    }

    /// Index `t` of the current iterate `x_t`.
    pub fn round(&self) -> usize {
        self.t
    }

    pub fn current(&self) -> &Vector {
        &self.x
    }

    pub fn initial(&self) -> &Vector {
        &self.x1
    }

    pub fn mirror_map(&self) -> &ReferenceFunction {
        &self.phi
    }

    pub fn schedule(&self) -> &StepSchedule {
        &self.schedule
    }

    pub fn gamma(&self) -> f64 {
        stabilization_gamma(self.gamma_mode, &self.schedule, self.t)
    }

    /// One round with the subgradient `g_t` taken at `x_t`.
    pub fn step(&mut self, g: &Vector) -> Result<DsomdStep> {
        g.check_dim(self.n)?;
        let t = self.t;
        let eta = self.schedule.eta(t);
        let gamma = self.gamma();
        let xt = self.phi.floor_interior(&self.x);
        let dual = self.phi.gradient(&xt)?;
        let w_hat = dual.axpy(-eta, g);
        let w_next = self.phi.grad_conjugate(&w_hat)?;
        let y_hat = w_hat.scale(gamma).axpy(1.0 - gamma, &self.dual_x1);
        let y_next = self.phi.floor_interior(&self.phi.grad_conjugate(&y_hat)?);
        let projected = if self.psi.is_zero() {
            bregman_project(&self.phi, &y_next, &self.dom)?
        } else {
            composite_bregman_prox(
                &self.phi,
                &y_next,
                &self.psi,
                self.schedule.eta(t + 1),
                &self.dom,
            )?
        };
        let divergence = self.phi.bregman_divergence(&xt, &w_next)?;
        self.x = projected.point.clone();
        self.t += 1;
        Ok(DsomdStep {
            x_next: projected.point,
            w_next,
            y_next,
            eta,
            gamma,
            divergence,
            residual: projected.residual,
        })
    }
}
