use serde::{Deserialize, Serialize};

use crate::error::{OcoError, Result};
use crate::vector::Vector;

/// Membership tolerance for feasibility checks.
pub const MEMBERSHIP_TOL: f64 = 1e-9;

/// Feasible set `X ⊆ R^n`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DomainSpec {
    AllSpace,
    Box { lo: Vector, hi: Vector },
    Simplex,
}

impl DomainSpec {
    pub fn interval(lo: f64, hi: f64) -> Self {
        Self::Box {
            lo: Vector::from([lo]),
            hi: Vector::from([hi]),
        }
    }

    pub fn cube(n: usize, lo: f64, hi: f64) -> Self {
        Self::Box {
            lo: Vector::filled(n, lo),
            hi: Vector::filled(n, hi),
        }
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        if n == 0 {
            return Err(OcoError::Param("dimension must be positive".into()));
        }
        if let Self::Box { lo, hi } = self {
            lo.check_dim(n)?;
            hi.check_dim(n)?;
            if !lo.is_finite() || !hi.is_finite() {
                return Err(OcoError::Param("box bounds must be finite".into()));
            }
            if lo.iter().zip(hi.iter()).any(|(l, h)| l > h) {
                return Err(OcoError::Param("box needs lo <= hi coordinatewise".into()));
            }
        }
        Ok(())
    }

    pub fn is_bounded(&self) -> bool {
        !matches!(self, Self::AllSpace)
    }

    pub fn contains(&self, x: &Vector, tol: f64) -> bool {
        if !x.is_finite() {
            return false;
        }
        match self {
            Self::AllSpace => true,
            Self::Box { lo, hi } => {
                x.dim() == lo.dim()
                    && x.iter()
                        .zip(lo.iter().zip(hi.iter()))
                        .all(|(&c, (&l, &h))| c >= l - tol && c <= h + tol)
            }
            Self::Simplex => x.iter().all(|&c| c >= -tol) && (x.sum() - 1.0).abs() <= tol,
        }
    }

    pub fn check_contains(&self, x: &Vector) -> Result<()> {
        if self.contains(x, MEMBERSHIP_TOL) {
            Ok(())
        } else {
            Err(OcoError::Domain(format!(
                "point {x} lies outside {}",
                self.describe()
            )))
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Self::AllSpace => "all_space".into(),
            Self::Box { lo, hi } => format!("box({lo}, {hi})"),
            Self::Simplex => "simplex".into(),
        }
    }

    /// Deterministic representative: box midpoint, simplex barycenter or origin.
    pub fn center(&self, n: usize) -> Vector {
        match self {
            Self::AllSpace => Vector::zeros(n),
            Self::Box { lo, hi } => lo.zip_map(hi, |l, h| 0.5 * (l + h)),
            Self::Simplex => Vector::filled(n, 1.0 / n as f64),
        }
    }

    /// Point of smallest Euclidean norm.
    pub fn min_norm_point(&self, n: usize) -> Vector {
        match self {
            Self::AllSpace => Vector::zeros(n),
            Self::Box { .. } => self.clamp(&Vector::zeros(n)),
            Self::Simplex => Vector::filled(n, 1.0 / n as f64),
        }
    }

    /// Coordinatewise clamp onto a box; identity for the other kinds.
    pub fn clamp(&self, x: &Vector) -> Vector {
        match self {
            Self::Box { lo, hi } => Vector::from(
                x.iter()
                    .zip(lo.iter().zip(hi.iter()))
                    .map(|(&c, (&l, &h))| c.clamp(l, h))
                    .collect::<Vec<_>>(),
            ),
            _ => x.clone(),
        }
    }

    /// Per-coordinate bounds; the simplex is reported as `[0, 1]^n`.
    pub fn coordinate_bounds(&self, n: usize, i: usize) -> (f64, f64) {
        match self {
            Self::AllSpace => (f64::NEG_INFINITY, f64::INFINITY),
            Self::Box { lo, hi } => (lo[i], hi[i]),
            Self::Simplex => {
                let _ = n;
                (0.0, 1.0)
            }
        }
    }

    /// Corners of a box or vertices of the simplex.
    pub fn extreme_points(&self, n: usize) -> Result<Vec<Vector>> {
        match self {
            Self::AllSpace => Err(OcoError::UnboundedDomain),
            Self::Simplex => Ok((0..n).map(|i| Vector::basis(n, i)).collect()),
            Self::Box { lo, hi } => {
                if n > 20 {
                    return Err(OcoError::Param(format!(
                        "corner enumeration limited to n <= 20, got {n}"
                    )));
                }
                Ok((0u32..(1u32 << n))
                    .map(|mask| {
                        Vector::from(
                            (0..n)
                                .map(|i| if mask & (1 << i) != 0 { hi[i] } else { lo[i] })
                                .collect::<Vec<_>>(),
                        )
                    })
                    .collect())
            }
        }
    }

    pub fn diameter(&self) -> Option<f64> {
        match self {
            Self::AllSpace => None,
            Self::Box { lo, hi } => Some(hi.sub(lo).norm()),
            Self::Simplex => Some(std::f64::consts::SQRT_2),
        }
    }
}
