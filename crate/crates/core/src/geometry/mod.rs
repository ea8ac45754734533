//! Reference functions (regularizers and mirror maps), Bregman divergences
//! and Bregman projections.
//!
//! Three reference functions are supported:
//!
//! * `squared_l2`: `R(x) = ½‖x‖²`, defined on all of `R^n`;
//! * `poly_norm(p, scale)`: `R(x) = scale · ‖x‖^{2p} / (2p)`, so that
//!   `poly_norm(2, 8)` is the one-dimensional `2x⁴`;
//! * `neg_entropy`: `R(x) = Σ xᵢ ln xᵢ` on the non-negative orthant, whose
//!   gradient `1 + ln xᵢ` diverges at the boundary.
//!
//! Divergences are always evaluated from the definition
//! `D_R(x, y) = R(x) − R(y) − ⟨∇R(y), x − y⟩`.

mod domain;
mod projection;

pub use domain::{DomainSpec, MEMBERSHIP_TOL};
pub use projection::{
    bregman_project, composite_bregman_prox, euclidean_simplex_projection, soft_threshold,
    ProjectionResult, PROJECTION_BUDGET, PROJECTION_TOLERANCE,
};

use serde::{Deserialize, Serialize};

use crate::error::{OcoError, Result};
use crate::vector::Vector;

/// Coordinates of neg-entropy iterates are floored here before logarithms.
pub const INTERIOR_FLOOR: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ReferenceFunction {
    SquaredL2,
    PolyNorm { p: u32, scale: f64 },
    NegEntropy,
}

impl ReferenceFunction {
    pub fn poly_norm(p: u32, scale: f64) -> Result<Self> {
        let r = Self::PolyNorm { p, scale };
        r.validate()?;
        Ok(r)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Self::PolyNorm { p, scale } => {
                if p < 2 {
                    return Err(OcoError::Param(format!("poly_norm needs p >= 2, got {p}")));
                }
                if !(scale.is_finite() && scale > 0.0) {
                    return Err(OcoError::Param(format!(
                        "poly_norm scale must be positive, got {scale}"
                    )));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::SquaredL2 => "squared_l2",
            Self::PolyNorm { .. } => "poly_norm",
            Self::NegEntropy => "neg_entropy",
        }
    }

    /// True when `R(x) = Σ rᵢ(xᵢ)` in dimension `n`.
    pub fn is_separable(&self, n: usize) -> bool {
        match self {
            Self::SquaredL2 | Self::NegEntropy => true,
            Self::PolyNorm { .. } => n == 1,
        }
    }

    /// True when `R` is a non-decreasing function of `‖x‖₂`.
    pub fn is_radial(&self) -> bool {
        matches!(self, Self::SquaredL2 | Self::PolyNorm { .. })
    }

    fn check_domain(&self, x: &Vector) -> Result<()> {
        if !x.is_finite() {
            return Err(OcoError::Domain(format!("non-finite point {x}")));
        }
        if matches!(self, Self::NegEntropy) {
            if let Some(i) = x.iter().position(|&c| c < 0.0) {
                return Err(OcoError::Domain(format!(
                    "neg_entropy is undefined at negative coordinate {i} ({})",
                    x[i]
                )));
            }
        }
        Ok(())
    }

    pub fn value(&self, x: &Vector) -> Result<f64> {
        self.check_domain(x)?;
        Ok(match *self {
            Self::SquaredL2 => 0.5 * x.norm_sq(),
            Self::PolyNorm { p, scale } => scale * x.norm_sq().powi(p as i32) / (2.0 * p as f64),
            Self::NegEntropy => x
                .iter()
                .map(|&c| if c > 0.0 { c * c.ln() } else { 0.0 })
                .sum(),
        })
    }

    /// `∇R(x)`; errors on the boundary of the neg-entropy domain.
    pub fn gradient(&self, x: &Vector) -> Result<Vector> {
        self.check_domain(x)?;
        Ok(match *self {
            Self::SquaredL2 => x.clone(),
            Self::PolyNorm { p, scale } => x.scale(scale * x.norm_sq().powi(p as i32 - 1)),
            Self::NegEntropy => {
                if let Some(i) = x.iter().position(|&c| c <= 0.0) {
                    return Err(OcoError::Domain(format!(
                        "neg_entropy gradient diverges at boundary coordinate {i}"
                    )));
                }
                x.map(|c| 1.0 + c.ln())
            }
        })
    }

    /// Derivative of the `i`-th summand of a separable reference function.
    pub(crate) fn coordinate_derivative(&self, c: f64) -> f64 {
        match *self {
            Self::SquaredL2 => c,
            Self::PolyNorm { p, scale } => scale * c.abs().powi(2 * p as i32 - 2) * c,
            Self::NegEntropy => {
                if c <= 0.0 {
                    f64::NEG_INFINITY
                } else {
                    1.0 + c.ln()
                }
            }
        }
    }

    /// Inverse of the gradient map, `∇R*(ĝ)`.
    pub fn grad_conjugate(&self, g_hat: &Vector) -> Result<Vector> {
        if !g_hat.is_finite() {
            return Err(OcoError::Range(format!("non-finite dual point {g_hat}")));
        }
        let x = match *self {
            Self::SquaredL2 => g_hat.clone(),
            Self::PolyNorm { p, scale } => {
                let m = g_hat.norm();
                if m == 0.0 {
                    Vector::zeros(g_hat.dim())
                } else {
                    let radius = (m / scale).powf(1.0 / (2.0 * p as f64 - 1.0));
                    g_hat.scale(radius / m)
                }
            }
            Self::NegEntropy => g_hat.map(|c| (c - 1.0).exp()),
        };
        if !x.is_finite() {
            return Err(OcoError::Range(format!(
                "dual point {g_hat} has no finite preimage under the {} gradient",
                self.name()
            )));
        }
        Ok(x)
    }

    /// `D_R(x, y) = R(x) − R(y) − ⟨∇R(y), x − y⟩`.
    pub fn bregman_divergence(&self, x: &Vector, y: &Vector) -> Result<f64> {
        let grad_y = self.gradient(y)?;
        Ok(self.value(x)? - self.value(y)? - grad_y.dot(&x.sub(y)))
    }

    /// Absolute defect of the three-point identity
    /// `D(x,y) + D(z,x) − D(z,y) = ⟨∇R(x) − ∇R(y), x − z⟩`.
    pub fn three_point_residual(&self, z: &Vector, x: &Vector, y: &Vector) -> Result<f64> {
        let lhs = self.bregman_divergence(x, y)? + self.bregman_divergence(z, x)?
            - self.bregman_divergence(z, y)?;
        let rhs = self.gradient(x)?.sub(&self.gradient(y)?).dot(&x.sub(z));
        Ok((lhs - rhs).abs())
    }

    /// Lifts neg-entropy points off the boundary so `∇R` stays finite.
    pub fn floor_interior(&self, x: &Vector) -> Vector {
        match self {
            Self::NegEntropy => x.map(|c| c.max(INTERIOR_FLOOR)),
            _ => x.clone(),
        }
    }

    /// Largest `R(v) − R(x1)` over the extreme points of a bounded domain.
    pub fn max_gap_over(&self, dom: &DomainSpec, n: usize, x1: &Vector) -> Result<f64> {
        let base = self.value(x1)?;
        let mut best = 0.0f64;
        for v in dom.extreme_points(n)? {
            best = best.max(self.value(&v)? - base);
        }
        Ok(best)
    }

    /// Largest `D_R(v, x1)` over the extreme points of a bounded domain.
    pub fn max_divergence_over(&self, dom: &DomainSpec, n: usize, x1: &Vector) -> Result<f64> {
        let anchor = self.floor_interior(x1);
        let mut best = 0.0f64;
        for v in dom.extreme_points(n)? {
            best = best.max(self.bregman_divergence(&v, &anchor)?);
        }
        Ok(best)
    }
}
