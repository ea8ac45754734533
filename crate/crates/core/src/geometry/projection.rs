use serde::Serialize;

use super::{DomainSpec, ReferenceFunction};
use crate::error::{OcoError, Result};
use crate::losses::CompositeRegularizer;
use crate::vector::Vector;

/// Residual target for projections without a closed form.
pub const PROJECTION_TOLERANCE: f64 = 1e-10;
/// Iteration budget of the radial bisection.
pub const PROJECTION_BUDGET: usize = 200;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProjectionResult {
    pub point: Vector,
    pub residual: f64,
    pub iterations: usize,
}

impl ProjectionResult {
    fn exact(point: Vector) -> Self {
        Self {
            point,
            residual: 0.0,
            iterations: 0,
        }
    }
}

/// `argmin_{x ∈ dom} D_Φ(x, y)`.
pub fn bregman_project(
    phi: &ReferenceFunction,
    y: &Vector,
    dom: &DomainSpec,
) -> Result<ProjectionResult> {
    check_interior(phi, y)?;
    let already_inside = match dom {
        DomainSpec::Simplex => dom.contains(y, 1e-12),
        _ => dom.contains(y, 0.0),
    };
    if already_inside {
        return Ok(ProjectionResult::exact(y.clone()));
    }
    prox_point(phi, y, 0.0, dom)
}

/// `argmin_x D_Φ(x, y) + weight · Ψ(x)` with `x` restricted to `dom`.
///
/// An indicator `Ψ` is folded into the feasible set; it must either agree
/// with `dom` or `dom` must be `all_space`.
pub fn composite_bregman_prox(
    phi: &ReferenceFunction,
    y: &Vector,
    psi: &CompositeRegularizer,
    weight: f64,
    dom: &DomainSpec,
) -> Result<ProjectionResult> {
    if !(weight.is_finite() && weight >= 0.0) {
        return Err(OcoError::Param(format!(
            "prox weight must be finite and non-negative, got {weight}"
        )));
    }
    match psi {
        CompositeRegularizer::Zero => bregman_project(phi, y, dom),
        CompositeRegularizer::Indicator { domain } => {
            let effective = psi.fold_domain(dom)?;
            debug_assert!(&effective == domain || dom == domain);
            bregman_project(phi, y, &effective)
        }
        CompositeRegularizer::L1 { lambda } => {
            let shrink = weight * lambda;
            if shrink == 0.0 {
                bregman_project(phi, y, dom)
            } else {
                check_interior(phi, y)?;
                prox_point(phi, y, shrink, dom)
            }
        }
    }
}

fn check_interior(phi: &ReferenceFunction, y: &Vector) -> Result<()> {
    if !y.is_finite() {
        return Err(OcoError::Domain(format!("non-finite projection input {y}")));
    }
    if matches!(phi, ReferenceFunction::NegEntropy) && y.iter().any(|&c| c <= 0.0) {
        return Err(OcoError::Domain(format!(
            "neg_entropy projection needs a strictly positive input, got {y}"
        )));
    }
    Ok(())
}

/// `sign(c) · max(|c| − a, 0)` coordinatewise.
pub fn soft_threshold(v: &Vector, a: f64) -> Vector {
    v.map(|c| c.signum() * (c.abs() - a).max(0.0))
}

/// Euclidean projection onto the probability simplex (sort-and-threshold).
pub fn euclidean_simplex_projection(v: &Vector) -> Vector {
    let mut sorted: Vec<f64> = v.iter().copied().collect();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let mut cumulative = 0.0;
    let mut theta = 0.0;
    for (k, &u) in sorted.iter().enumerate() {
        cumulative += u;
        let candidate = (cumulative - 1.0) / (k + 1) as f64;
        if u - candidate > 0.0 {
            theta = candidate;
        }
    }
    v.map(|c| (c - theta).max(0.0))
}

/// `shrink` is the l1 weight `weight · λ`; it is ignored on the simplex,
/// where `‖x‖₁ = 1`.
fn prox_point(
    phi: &ReferenceFunction,
    y: &Vector,
    shrink: f64,
    dom: &DomainSpec,
) -> Result<ProjectionResult> {
    let n = y.dim();
    if let DomainSpec::Box { lo, .. } = dom {
        lo.check_dim(n)?;
    }
    match (phi, dom) {
        (ReferenceFunction::SquaredL2, DomainSpec::AllSpace) => {
            Ok(ProjectionResult::exact(soft_threshold(y, shrink)))
        }
        (ReferenceFunction::SquaredL2, DomainSpec::Box { .. }) => Ok(ProjectionResult::exact(
            dom.clamp(&soft_threshold(y, shrink)),
        )),
        (ReferenceFunction::SquaredL2, DomainSpec::Simplex) => {
            Ok(ProjectionResult::exact(euclidean_simplex_projection(y)))
        }
        (ReferenceFunction::NegEntropy, DomainSpec::AllSpace) => {
            Ok(ProjectionResult::exact(y.scale((-shrink).exp())))
        }
        (ReferenceFunction::NegEntropy, DomainSpec::Box { lo, .. }) => {
            if lo.iter().any(|&l| l < 0.0) {
                return Err(OcoError::Domain(
                    "neg_entropy projection needs a box inside the non-negative orthant".into(),
                ));
            }
            Ok(ProjectionResult::exact(
                dom.clamp(&y.scale((-shrink).exp())),
            ))
        }
        (ReferenceFunction::NegEntropy, DomainSpec::Simplex) => {
            Ok(ProjectionResult::exact(y.scale(1.0 / y.sum())))
        }
        (ReferenceFunction::PolyNorm { p, scale }, _) => {
            let dual = phi.gradient(y)?;
            match dom {
                DomainSpec::AllSpace => Ok(ProjectionResult::exact(
                    phi.grad_conjugate(&soft_threshold(&dual, shrink))?,
                )),
                DomainSpec::Box { lo, hi } => {
                    let c = soft_threshold(&dual, shrink);
                    let reach = lo.zip_map(hi, |l, h| l.abs().max(h.abs())).norm();
                    let map = |w: f64| -> Vector {
                        let raw = if w == 0.0 {
                            c.map(|ci| {
                                if ci > 0.0 {
                                    f64::INFINITY
                                } else if ci < 0.0 {
                                    f64::NEG_INFINITY
                                } else {
                                    0.0
                                }
                            })
                        } else {
                            c.scale(1.0 / w)
                        };
                        dom.clamp(&raw)
                    };
                    radial_bisection(*p, *scale, map, 0.0, reach)
                }
                DomainSpec::Simplex => {
                    let map = |w: f64| euclidean_simplex_projection(&dual.scale(1.0 / w));
                    radial_bisection(*p, *scale, map, 1.0 / (n as f64).sqrt(), 1.0)
                }
            }
        }
    }
}

/// Solves `‖x(w(r))‖ = r` with `w(r) = scale · r^{2p−2}`.
///
/// `map(w)` must return the minimizer of `w/2 ‖x‖² − ⟨c, x⟩ (+ shrink ‖x‖₁)`
/// over the feasible set; its norm is non-increasing in `w`.
fn radial_bisection(
    p: u32,
    scale: f64,
    map: impl Fn(f64) -> Vector,
    mut r_lo: f64,
    mut r_hi: f64,
) -> Result<ProjectionResult> {
    let weight = |r: f64| scale * r.powi(2 * p as i32 - 2);
    let eval = |r: f64| {
        let x = map(weight(r));
        let gap = x.norm() - r;
        (x, gap)
    };
    let (x, gap) = eval(r_lo);
    if gap.abs() <= PROJECTION_TOLERANCE {
        return Ok(ProjectionResult {
            point: x,
            residual: gap.abs(),
            iterations: 1,
        });
    }
    let (x, gap) = eval(r_hi);
    if gap.abs() <= PROJECTION_TOLERANCE {
        return Ok(ProjectionResult {
            point: x,
            residual: gap.abs(),
            iterations: 2,
        });
    }
    let mut best: Option<(Vector, f64)> = None;
    for it in 1..=PROJECTION_BUDGET {
        let mid = 0.5 * (r_lo + r_hi);
        let (x, gap) = eval(mid);
        let residual = gap.abs();
        if best.as_ref().is_none_or(|(_, b)| residual < *b) {
            best = Some((x.clone(), residual));
        }
        if residual <= PROJECTION_TOLERANCE {
            return Ok(ProjectionResult {
                point: x,
                residual,
                iterations: it + 2,
            });
        }
        if gap > 0.0 {
            r_lo = mid;
        } else {
            r_hi = mid;
        }
        if r_hi - r_lo <= f64::EPSILON * r_hi.max(1e-300) {
            break;
        }
    }
    let residual = best.map_or(f64::INFINITY, |(_, r)| r);
    Err(OcoError::Convergence {
        iterations: PROJECTION_BUDGET,
        residual,
    })
}
