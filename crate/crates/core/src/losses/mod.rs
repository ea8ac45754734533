//! Loss families, the composite extra regularizer `Ψ`, deterministic loss
//! streams and sampling-based certification of relative constants.

mod certify;
mod stream;
mod sum;

pub use certify::{
    certify_relative_lipschitz, certify_relative_strong_convexity, sample_point,
    RelativeCertificate, CERTIFICATE_TOLERANCE,
};
pub use stream::{LossStream, StreamKind};
pub use sum::LossSum;

use serde::{Deserialize, Serialize};

use crate::error::{OcoError, Result};
use crate::geometry::DomainSpec;
use crate::vector::Vector;

/// A convex loss `f_t`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LossFunction {
    /// `⟨g, x⟩`
    Linear { g: Vector },
    /// `s ‖x − center‖²`
    ScaledQuadratic { s: f64, center: Vector },
    /// `s ‖x‖^p / p`
    PnormPower { p: f64, s: f64 },
}

impl LossFunction {
    pub fn validate(&self, n: usize) -> Result<()> {
        match self {
            Self::Linear { g } => {
                g.check_dim(n)?;
                if !g.is_finite() {
                    return Err(OcoError::Param(
                        "linear loss has a non-finite gradient".into(),
                    ));
                }
            }
            Self::ScaledQuadratic { s, center } => {
                center.check_dim(n)?;
                if !(s.is_finite() && *s >= 0.0) || !center.is_finite() {
                    return Err(OcoError::Param(
                        "scaled_quadratic needs finite s >= 0 and a finite center".into(),
                    ));
                }
            }
            Self::PnormPower { p, s } => {
                if !(p.is_finite() && *p >= 2.0) {
                    return Err(OcoError::Param(format!(
                        "pnorm_power needs p >= 2, got {p}"
                    )));
                }
                if !(s.is_finite() && *s >= 0.0) {
                    return Err(OcoError::Param(format!(
                        "pnorm_power needs s >= 0, got {s}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn value(&self, x: &Vector) -> f64 {
        match self {
            Self::Linear { g } => g.dot(x),
            Self::ScaledQuadratic { s, center } => s * x.sub(center).norm_sq(),
            Self::PnormPower { p, s } => s * x.norm().powf(*p) / p,
        }
    }

    /// A subgradient at `x`; the zero vector at the minimizer of `pnorm_power`.
    pub fn subgradient(&self, x: &Vector) -> Vector {
        match self {
            Self::Linear { g } => g.clone(),
            Self::ScaledQuadratic { s, center } => x.sub(center).scale(2.0 * s),
            Self::PnormPower { p, s } => {
                let r = x.norm();
                if r == 0.0 {
                    Vector::zeros(x.dim())
                } else {
                    x.scale(s * r.powf(p - 2.0))
                }
            }
        }
    }

    /// `a · f`
    pub fn scaled(&self, a: f64) -> Self {
        match self {
            Self::Linear { g } => Self::Linear { g: g.scale(a) },
            Self::ScaledQuadratic { s, center } => Self::ScaledQuadratic {
                s: s * a,
                center: center.clone(),
            },
            Self::PnormPower { p, s } => Self::PnormPower { p: *p, s: s * a },
        }
    }

    /// Short identifier used in traces.
    pub fn label(&self) -> String {
        match self {
            Self::Linear { .. } => "linear".into(),
            Self::ScaledQuadratic { s, .. } => format!("scaled_quadratic(s={s})"),
            Self::PnormPower { p, s } => format!("pnorm_power(p={p},s={s})"),
        }
    }
}

/// The known extra regularizer `Ψ` of composite losses.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize, Default)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CompositeRegularizer {
    #[default]
    Zero,
    L1 {
        lambda: f64,
    },
    Indicator {
        domain: DomainSpec,
    },
}

impl CompositeRegularizer {
    pub fn validate(&self, n: usize) -> Result<()> {
        match self {
            Self::Zero => Ok(()),
            Self::L1 { lambda } => {
                if lambda.is_finite() && *lambda >= 0.0 {
                    Ok(())
                } else {
                    Err(OcoError::Param(format!(
                        "l1 weight must be >= 0, got {lambda}"
                    )))
                }
            }
            Self::Indicator { domain } => domain.validate(n),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Self::Zero => true,
            Self::L1 { lambda } => *lambda == 0.0,
            Self::Indicator { .. } => false,
        }
    }

    /// `Ψ(x)`; `+∞` outside an indicator's set.
    pub fn value(&self, x: &Vector) -> f64 {
        match self {
            Self::Zero => 0.0,
            Self::L1 { lambda } => lambda * x.iter().map(|c| c.abs()).sum::<f64>(),
            Self::Indicator { domain } => {
                if domain.contains(x, crate::geometry::MEMBERSHIP_TOL) {
                    0.0
                } else {
                    f64::INFINITY
                }
            }
        }
    }

    /// Coefficient of `‖x‖₁` carried by `Ψ`.
    pub fn l1_weight(&self) -> f64 {
        match self {
            Self::L1 { lambda } => *lambda,
            _ => 0.0,
        }
    }

    /// Feasible set after absorbing an indicator into `dom`.
    pub fn fold_domain(&self, dom: &DomainSpec) -> Result<DomainSpec> {
        match self {
            Self::Indicator { domain } => {
                if matches!(dom, DomainSpec::AllSpace) || dom == domain {
                    Ok(domain.clone())
                } else {
                    Err(OcoError::Param(format!(
                        "cannot intersect indicator of {} with {}",
                        domain.describe(),
                        dom.describe()
                    )))
                }
            }
            _ => Ok(dom.clone()),
        }
    }
}
