//! Inner minimization oracles behind the FTRL-family updates.

use serde::Serialize;

use crate::error::{OcoError, Result};
use crate::geometry::{
    bregman_project, composite_bregman_prox, euclidean_simplex_projection, DomainSpec,
    ReferenceFunction,
};
use crate::losses::{CompositeRegularizer, LossFunction, LossSum};
use crate::vector::Vector;

/// Target bracket width of the 1-D derivative bisection.
pub const BISECTION_TOLERANCE: f64 = 1e-10;
pub const BISECTION_BUDGET: usize = 200;
pub const SUBGRADIENT_BUDGET: usize = 2000;
/// Grid points evaluated by `comparator_argmin` before the per-axis size is
/// reduced automatically.
pub const COMPARATOR_POINT_LIMIT: usize = 5_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SolveMethod {
    ClosedForm,
    Bisection1d,
    ProjectedSubgradient,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SolveReport {
    pub minimizer: Vector,
    pub objective: f64,
    pub residual: f64,
    pub method: SolveMethod,
    pub iterations: usize,
}

/// Euclidean projection onto `dom`.
pub fn euclidean_project(dom: &DomainSpec, x: &Vector) -> Vector {
    match dom {
        DomainSpec::AllSpace => x.clone(),
        DomainSpec::Box { .. } => dom.clamp(x),
        DomainSpec::Simplex => euclidean_simplex_projection(x),
    }
}

/// `argmin_{x ∈ dom} η ⟨g_sum, x⟩ + R(x)`, computed as `∇R*(−η g_sum)`
/// followed by a Bregman projection.
pub fn minimize_linear_plus_ref(
    g_sum: &Vector,
    eta: f64,
    reference: &ReferenceFunction,
    dom: &DomainSpec,
) -> Result<SolveReport> {
    if !(eta.is_finite() && eta > 0.0) {
        return Err(OcoError::Param(format!("eta must be positive, got {eta}")));
    }
    if !g_sum.is_finite() {
        return Err(OcoError::Param("accumulated gradient is not finite".into()));
    }
    let mut dual = g_sum.scale(-eta);
    if matches!(reference, ReferenceFunction::NegEntropy) && matches!(dom, DomainSpec::Simplex) {
        // The normalization removes any common shift; shifting by the max
        // keeps every exponent non-positive.
        let top = dual.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        dual = dual.map(|c| c - top + 1.0);
    }
    let free = reference.floor_interior(&reference.grad_conjugate(&dual)?);
    let projected = bregman_project(reference, &free, dom)?;
    let x = projected.point;
    let objective = eta * g_sum.dot(&x) + reference.value(&x)?;
    Ok(SolveReport {
        minimizer: x,
        objective,
        residual: projected.residual,
        method: SolveMethod::ClosedForm,
        iterations: projected.iterations,
    })
}

/// `argmin_{x ∈ dom} Σ objectives + extra_weight · Ψ + inv_eta · R`.
pub fn minimize_sum(
    objectives: &[LossFunction],
    extra: &CompositeRegularizer,
    extra_weight: f64,
    reference: Option<&ReferenceFunction>,
    inv_eta: f64,
    dom: &DomainSpec,
    n: usize,
) -> Result<SolveReport> {
    for f in objectives {
        f.validate(n)?;
    }
    let sum = LossSum::from_losses(n, objectives);
    minimize_aggregate(&sum, extra, extra_weight, reference, inv_eta, dom)
}

/// Same as [`minimize_sum`] with the losses already aggregated.
pub fn minimize_aggregate(
    sum: &LossSum,
    extra: &CompositeRegularizer,
    extra_weight: f64,
    reference: Option<&ReferenceFunction>,
    inv_eta: f64,
    dom: &DomainSpec,
) -> Result<SolveReport> {
    let n = sum.dim();
    if !(extra_weight.is_finite() && extra_weight >= 0.0) {
        return Err(OcoError::Param(format!(
            "extra weight must be finite and non-negative, got {extra_weight}"
        )));
    }
    if !(inv_eta.is_finite() && inv_eta >= 0.0) {
        return Err(OcoError::Param(format!(
            "inverse step must be finite and non-negative, got {inv_eta}"
        )));
    }
    let dom = extra.fold_domain(dom)?;
    dom.validate(n)?;
    let reference = reference.filter(|_| inv_eta > 0.0);
    let problem = Problem {
        sum,
        l1: extra_weight * extra.l1_weight(),
        reference,
        inv_eta,
        dom: &dom,
    };
    let (x, residual, method, iterations) = problem.solve()?;
    let objective = problem.objective(&x)?;
    Ok(SolveReport {
        minimizer: x,
        objective,
        residual,
        method,
        iterations,
    })
}

struct Problem<'a> {
    sum: &'a LossSum,
    /// Coefficient of `‖x‖₁`; constant on the simplex.
    l1: f64,
    reference: Option<&'a ReferenceFunction>,
    inv_eta: f64,
    dom: &'a DomainSpec,
}

impl Problem<'_> {
    fn n(&self) -> usize {
        self.sum.dim()
    }

    fn objective(&self, x: &Vector) -> Result<f64> {
        let mut v = self.sum.value(x) + self.l1 * x.iter().map(|c| c.abs()).sum::<f64>();
        if let Some(r) = self.reference {
            v += self.inv_eta * r.value(x)?;
        }
        Ok(v)
    }

    fn solve(&self) -> Result<(Vector, f64, SolveMethod, usize)> {
        let n = self.n();
        let exact = |x: Vector| Ok((x, 0.0, SolveMethod::ClosedForm, 0));
        if let (DomainSpec::Simplex, 1) = (self.dom, n) {
            return exact(Vector::from([1.0]));
        }
        if self.reference.is_none() && self.sum.is_zero() && self.l1 == 0.0 {
            return exact(self.dom.center(n));
        }
        if self.reference.is_none() && self.sum.is_linear() {
            return self
                .linear_program()
                .map(|x| (x, 0.0, SolveMethod::ClosedForm, 0));
        }
        if self.sum.is_centered() && self.reference.is_none_or(|r| r.is_radial()) {
            return exact(self.dom.min_norm_point(n));
        }
        if self.sum.is_separable() && self.reference.is_none_or(|r| r.is_separable(n)) {
            return self.separable();
        }
        if let Some(r) = self.reference {
            if self.sum.is_linear() {
                let y = r.floor_interior(
                    &r.grad_conjugate(&self.sum.linear_part().scale(-1.0 / self.inv_eta))?,
                );
                let psi = CompositeRegularizer::L1 { lambda: self.l1 };
                let prox = composite_bregman_prox(r, &y, &psi, 1.0 / self.inv_eta, self.dom)?;
                return Ok((
                    prox.point,
                    prox.residual,
                    SolveMethod::ClosedForm,
                    prox.iterations,
                ));
            }
        }
        self.projected_subgradient()
    }

    fn linear_program(&self) -> Result<Vector> {
        let b = self.sum.linear_part();
        let n = self.n();
        match self.dom {
            DomainSpec::Simplex => {
                let mut best = 0;
                for i in 1..n {
                    if b[i] < b[best] {
                        best = i;
                    }
                }
                Ok(Vector::basis(n, best))
            }
            _ => {
                let mut x = Vec::with_capacity(n);
                for i in 0..n {
                    let (lo, hi) = self.dom.coordinate_bounds(n, i);
                    let c = if b[i] > self.l1 {
                        lo
                    } else if b[i] < -self.l1 {
                        hi
                    } else if self.l1 > 0.0 {
                        0.0f64.clamp(lo, hi)
                    } else if lo.is_finite() && hi.is_finite() {
                        0.5 * (lo + hi)
                    } else {
                        0.0
                    };
                    if !c.is_finite() {
                        return Err(OcoError::Domain(
                            "linear objective is unbounded below on this domain".into(),
                        ));
                    }
                    x.push(c);
                }
                Ok(Vector::from(x))
            }
        }
    }

    /// Derivative of the smooth part of coordinate `i`.
    fn smooth_derivative(&self, i: usize, c: f64) -> f64 {
        let mut d = self.sum.coordinate_derivative(i, c);
        if let Some(r) = self.reference {
            d += self.inv_eta * r.coordinate_derivative(c);
        }
        d
    }

    /// Minimizes coordinate `i` of the objective plus `shift · c` over
    /// `[lo, hi]`. Returns the minimizer, the final bracket width and the
    /// iteration count.
    fn coordinate_argmin(
        &self,
        i: usize,
        shift: f64,
        lo: f64,
        hi: f64,
    ) -> Result<(f64, f64, usize)> {
        let l1 = if matches!(self.dom, DomainSpec::Simplex) {
            0.0
        } else {
            self.l1
        };
        let right = |c: f64| self.smooth_derivative(i, c) + shift + if c >= 0.0 { l1 } else { -l1 };
        let left = |c: f64| self.smooth_derivative(i, c) + shift + if c > 0.0 { l1 } else { -l1 };
        if lo.is_finite() && right(lo) >= 0.0 {
            return Ok((lo, 0.0, 0));
        }
        if hi.is_finite() && left(hi) <= 0.0 {
            return Ok((hi, 0.0, 0));
        }
        if l1 > 0.0 && lo < 0.0 && hi > 0.0 && left(0.0) <= 0.0 && right(0.0) >= 0.0 {
            return Ok((0.0, 0.0, 0));
        }
        let (mut a, mut b) = (lo, hi);
        let mut iterations = 0;
        let mut step = 1.0;
        while !a.is_finite() {
            iterations += 1;
            let probe = b.min(0.0) - step;
            if right(probe) < 0.0 {
                a = probe;
            } else {
                b = probe;
            }
            step *= 2.0;
            if !step.is_finite() {
                return Err(OcoError::Domain("objective is unbounded below".into()));
            }
        }
        step = 1.0;
        while !b.is_finite() {
            iterations += 1;
            let probe = a.max(0.0) + step;
            if right(probe) >= 0.0 {
                b = probe;
            } else {
                a = probe;
            }
            step *= 2.0;
            if !step.is_finite() {
                return Err(OcoError::Domain("objective is unbounded below".into()));
            }
        }
        // right(a) < 0 <= left-limit at b: the minimizer lies in (a, b].
        for _ in 0..BISECTION_BUDGET {
            let mid = 0.5 * (a + b);
            if mid <= a || mid >= b || b - a <= BISECTION_TOLERANCE * 1e-3 {
                break;
            }
            iterations += 1;
            if right(mid) < 0.0 {
                a = mid;
            } else {
                b = mid;
            }
        }
        let width = b - a;
        if width > BISECTION_TOLERANCE {
            return Err(OcoError::Convergence {
                iterations,
                residual: width,
            });
        }
        Ok((0.5 * (a + b), width, iterations))
    }

    fn separable(&self) -> Result<(Vector, f64, SolveMethod, usize)> {
        let n = self.n();
        if !matches!(self.dom, DomainSpec::Simplex) {
            let mut x = Vec::with_capacity(n);
            let (mut residual, mut iterations) = (0.0f64, 0);
            for i in 0..n {
                let (lo, hi) = self.dom.coordinate_bounds(n, i);
                let (c, w, it) = self.coordinate_argmin(i, 0.0, lo, hi)?;
                x.push(c);
                residual = residual.max(w);
                iterations += it;
            }
            return Ok((
                Vector::from(x),
                residual,
                SolveMethod::Bisection1d,
                iterations,
            ));
        }
        // Simplex: coordinates decouple once the multiplier ν of Σ xᵢ = 1 is
        // fixed, and Σ xᵢ(ν) is non-increasing in ν.
        let total = |nu: f64| -> Result<(Vec<f64>, f64, usize)> {
            let mut x = Vec::with_capacity(n);
            let (mut width, mut its) = (0.0f64, 0);
            for i in 0..n {
                let (c, w, it) = self.coordinate_argmin(i, nu, 0.0, 1.0)?;
                x.push(c);
                width = width.max(w);
                its += it;
            }
            Ok((x, width, its))
        };
        let mut iterations = 0;
        let (mut lo, mut hi) = (-1.0f64, 1.0f64);
        loop {
            let (x, _, it) = total(lo)?;
            iterations += it;
            if x.iter().sum::<f64>() >= 1.0 {
                break;
            }
            lo *= 2.0;
            if lo < -1e300 {
                return Err(OcoError::Convergence {
                    iterations,
                    residual: f64::INFINITY,
                });
            }
        }
        loop {
            let (x, _, it) = total(hi)?;
            iterations += it;
            if x.iter().sum::<f64>() <= 1.0 {
                break;
            }
            hi *= 2.0;
            if hi > 1e300 {
                return Err(OcoError::Convergence {
                    iterations,
                    residual: f64::INFINITY,
                });
            }
        }
        let mut best = None;
        for _ in 0..BISECTION_BUDGET {
            let mid = 0.5 * (lo + hi);
            let (x, width, it) = total(mid)?;
            iterations += it;
            let s: f64 = x.iter().sum();
            let gap = (s - 1.0).abs();
            best = Some((x, width.max(gap)));
            if gap <= BISECTION_TOLERANCE * 1e-2 || mid <= lo || mid >= hi {
                break;
            }
            if s > 1.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let (x, residual) = best.expect("bisection ran at least once");
        // Remove the leftover mass error so the point lies on the simplex.
        let s: f64 = x.iter().sum();
        let x = Vector::from(x.into_iter().map(|c| c / s).collect::<Vec<_>>());
        if residual > BISECTION_TOLERANCE {
            return Err(OcoError::Convergence {
                iterations,
                residual,
            });
        }
        Ok((x, residual, SolveMethod::Bisection1d, iterations))
    }

    fn gradient(&self, x: &Vector) -> Result<Vector> {
        let mut g = self.sum.gradient(x);
        if let Some(r) = self.reference {
            g = g.axpy(self.inv_eta, &r.gradient(&r.floor_interior(x))?);
        }
        if self.l1 > 0.0 && !matches!(self.dom, DomainSpec::Simplex) {
            g = g.add(&x.map(|c| {
                self.l1
                    * if c > 0.0 {
                        1.0
                    } else if c < 0.0 {
                        -1.0
                    } else {
                        0.0
                    }
            }));
        }
        Ok(g)
    }

    fn projected_subgradient(&self) -> Result<(Vector, f64, SolveMethod, usize)> {
        let n = self.n();
        let start = self.dom.center(n);
        let reach = self.dom.diameter().unwrap_or_else(|| 1.0 + start.norm());
        let mut x = start;
        let mut avg = Vector::zeros(n);
        let mut best = (self.objective(&x)?, x.clone());
        // Steps are scaled by the first gradient norm only, so they shrink
        // near a smooth minimizer.
        let mut scale = None;
        for k in 1..=SUBGRADIENT_BUDGET {
            let g = self.gradient(&x)?;
            let gn = g.norm();
            if gn == 0.0 {
                break;
            }
            let g0 = *scale.get_or_insert(gn);
            x = euclidean_project(self.dom, &x.axpy(-reach / (g0 * (k as f64).sqrt()), &g));
            avg = avg.axpy(1.0 / k as f64, &x.sub(&avg));
            let v = self.objective(&x)?;
            if v < best.0 {
                best = (v, x.clone());
            }
        }
        let candidate = if self.objective(&avg)? <= best.0 {
            avg
        } else {
            best.1
        };
        let g = self.gradient(&candidate)?;
        let residual = candidate
            .sub(&euclidean_project(self.dom, &candidate.sub(&g)))
            .norm();
        Ok((
            candidate,
            residual,
            SolveMethod::ProjectedSubgradient,
            SUBGRADIENT_BUDGET,
        ))
    }
}

/// Best point for `Σ losses + T · Ψ` (with `T = losses.len()`) on a bounded
/// domain: a grid search with `grid` points per axis, refined by one
/// [`minimize_aggregate`] call.
pub fn comparator_argmin(
    losses: &[LossFunction],
    extra: &CompositeRegularizer,
    dom: &DomainSpec,
    n: usize,
    grid: usize,
) -> Result<Vector> {
    if !dom.is_bounded() {
        return Err(OcoError::UnboundedDomain);
    }
    dom.validate(n)?;
    let sum = LossSum::from_losses(n, losses);
    let weight = losses.len() as f64;
    let total = |x: &Vector| sum.value(x) + weight * extra.value(x);
    let mut best: Option<(f64, Vector)> = None;
    let mut consider = |x: Vector| {
        let v = total(&x);
        if best.as_ref().is_none_or(|(b, _)| v < *b) {
            best = Some((v, x));
        }
    };
    if n <= 3 && grid >= 2 {
        match dom {
            DomainSpec::Box { lo, hi } => {
                let per_axis = reduce_box_grid(grid, n);
                let mut idx = vec![0usize; n];
                loop {
                    let x: Vec<f64> = (0..n)
                        .map(|i| lo[i] + (hi[i] - lo[i]) * idx[i] as f64 / (per_axis - 1) as f64)
                        .collect();
                    consider(Vector::from(x));
                    if !advance(&mut idx, per_axis) {
                        break;
                    }
                }
            }
            DomainSpec::Simplex => {
                let steps = reduce_simplex_grid(grid - 1, n);
                let mut parts = vec![0usize; n];
                simplex_compositions(&mut parts, 0, steps, &mut |p| {
                    consider(Vector::from(
                        p.iter()
                            .map(|&k| k as f64 / steps as f64)
                            .collect::<Vec<_>>(),
                    ))
                });
            }
            DomainSpec::AllSpace => unreachable!("bounded domain checked above"),
        }
    } else {
        consider(dom.center(n));
        for v in dom.extreme_points(n)? {
            consider(v);
        }
    }
    if let Ok(report) = minimize_aggregate(&sum, extra, weight, None, 0.0, dom) {
        if dom.contains(&report.minimizer, crate::geometry::MEMBERSHIP_TOL) {
            consider(report.minimizer);
        }
    }
    Ok(best.expect("at least one candidate").1)
}

fn advance(idx: &mut [usize], base: usize) -> bool {
    for digit in idx.iter_mut().rev() {
        *digit += 1;
        if *digit < base {
            return true;
        }
        *digit = 0;
    }
    false
}

fn reduce_box_grid(grid: usize, n: usize) -> usize {
    let mut g = grid;
    while g > 2 && (g as f64).powi(n as i32) > COMPARATOR_POINT_LIMIT as f64 {
        g -= 1;
    }
    g
}

fn compositions_count(steps: usize, n: usize) -> f64 {
    // C(steps + n − 1, n − 1)
    let mut c = 1.0;
    for k in 1..n {
        c *= (steps + k) as f64 / k as f64;
    }
    c
}

fn reduce_simplex_grid(steps: usize, n: usize) -> usize {
    let mut s = steps.max(1);
    while s > 1 && compositions_count(s, n) > COMPARATOR_POINT_LIMIT as f64 {
        s -= 1;
    }
    s
}

/// Visits every `parts` with `Σ parts = steps`, in lexicographic order.
fn simplex_compositions(
    parts: &mut [usize],
    i: usize,
    left: usize,
    visit: &mut impl FnMut(&[usize]),
) {
    if i + 1 == parts.len() {
        parts[i] = left;
        visit(parts);
        return;
    }
    for k in 0..=left {
        parts[i] = k;
        simplex_compositions(parts, i + 1, left - k, visit);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quad(s: f64, c: f64) -> LossFunction {
        LossFunction::ScaledQuadratic {
            s,
            center: Vector::from([c]),
        }
    }

    fn two_x4() -> ReferenceFunction {
        ReferenceFunction::poly_norm(2, 8.0).unwrap()
    }

    #[test]
    fn linear_plus_ref_closed_forms() {
        let r = minimize_linear_plus_ref(
            &Vector::from([1.0, 2.0]),
            0.5,
            &ReferenceFunction::SquaredL2,
            &DomainSpec::AllSpace,
        )
        .unwrap();
        assert_eq!(r.minimizer, Vector::from([-0.5, -1.0]));

        let r = minimize_linear_plus_ref(
            &Vector::from([0.0, 1.0]),
            1.0,
            &ReferenceFunction::NegEntropy,
            &DomainSpec::Simplex,
        )
        .unwrap();
        let e = (-1.0f64).exp();
        assert!(
            r.minimizer
                .dist_inf(&Vector::from([1.0 / (1.0 + e), e / (1.0 + e)]))
                < 1e-12
        );
        assert!((r.minimizer[0] - 0.7311).abs() < 1e-4);

        let r = minimize_linear_plus_ref(
            &Vector::from([-8.0]),
            1.0,
            &two_x4(),
            &DomainSpec::interval(-1.0, 1.0),
        )
        .unwrap();
        assert!((r.minimizer[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn entropy_closed_form_matches_grid() {
        let phi = ReferenceFunction::NegEntropy;
        let mut best = (f64::INFINITY, 0.0);
        for i in 1..100_000 {
            let a = i as f64 / 100_000.0;
            let x = Vector::from([a, 1.0 - a]);
            let v = x[1] + phi.value(&x).unwrap();
            if v < best.0 {
                best = (v, a);
            }
        }
        assert!((best.1 - 0.7311).abs() < 1e-4);
    }

    #[test]
    fn rejects_nonpositive_eta() {
        assert!(minimize_linear_plus_ref(
            &Vector::from([1.0]),
            0.0,
            &ReferenceFunction::SquaredL2,
            &DomainSpec::AllSpace
        )
        .is_err());
    }

    #[test]
    fn empty_sum_minimizes_reference() {
        let r = minimize_sum(
            &[],
            &CompositeRegularizer::Zero,
            0.0,
            Some(&ReferenceFunction::SquaredL2),
            1.0,
            &DomainSpec::cube(2, -1.0, 1.0),
            2,
        )
        .unwrap();
        assert_eq!(r.minimizer, Vector::zeros(2));

        let r = minimize_sum(
            &[],
            &CompositeRegularizer::Zero,
            0.0,
            Some(&ReferenceFunction::NegEntropy),
            1.0,
            &DomainSpec::Simplex,
            4,
        )
        .unwrap();
        assert!(r.minimizer.dist_inf(&Vector::filled(4, 0.25)) < 1e-9);
    }

    #[test]
    fn common_minimizer() {
        let r = minimize_sum(
            &[quad(1.0, 0.0), quad(1.0, 0.0)],
            &CompositeRegularizer::Zero,
            0.0,
            Some(&two_x4()),
            2.0,
            &DomainSpec::interval(-1.0, 1.0),
            1,
        )
        .unwrap();
        assert_eq!(r.minimizer, Vector::from([0.0]));
    }

    #[test]
    fn mean_of_centers() {
        let r = minimize_sum(
            &[quad(1.0, 1.0), quad(1.0, 3.0)],
            &CompositeRegularizer::Zero,
            0.0,
            None,
            0.0,
            &DomainSpec::AllSpace,
            1,
        )
        .unwrap();
        assert!((r.minimizer[0] - 2.0).abs() < 1e-9);
        assert_eq!(r.method, SolveMethod::Bisection1d);
    }

    #[test]
    fn bisection_and_subgradient_agree_in_1d() {
        let problem_sum = LossSum::from_losses(1, &[quad(1.0, 0.3), quad(2.0, -0.5)]);
        let r = two_x4();
        let dom = DomainSpec::interval(-1.0, 1.0);
        let p = Problem {
            sum: &problem_sum,
            l1: 0.0,
            reference: Some(&r),
            inv_eta: 0.7,
            dom: &dom,
        };
        let (a, ..) = p.separable().unwrap();
        let (b, ..) = p.projected_subgradient().unwrap();
        assert!(a.dist_inf(&b) < 1e-5, "{a} vs {b}");
    }

    #[test]
    fn l1_produces_exact_zero() {
        let r = minimize_sum(
            &[LossFunction::Linear {
                g: Vector::from([0.3, -2.0]),
            }],
            &CompositeRegularizer::L1 { lambda: 1.0 },
            1.0,
            Some(&ReferenceFunction::SquaredL2),
            1.0,
            &DomainSpec::AllSpace,
            2,
        )
        .unwrap();
        assert_eq!(r.minimizer[0], 0.0);
        assert!((r.minimizer[1] - 1.0).abs() < 1e-9);
    }

    #[test]
    fn comparator_examples() {
        let z = comparator_argmin(
            &[LossFunction::ScaledQuadratic {
                s: 1.0,
                center: Vector::zeros(1),
            }],
            &CompositeRegularizer::Zero,
            &DomainSpec::interval(-1.0, 1.0),
            1,
            101,
        )
        .unwrap();
        assert!(z[0].abs() < 1e-12);

        let z = comparator_argmin(
            &[quad(1.0, 0.3), quad(1.0, 0.5)],
            &CompositeRegularizer::Zero,
            &DomainSpec::interval(0.0, 1.0),
            1,
            1001,
        )
        .unwrap();
        assert!((z[0] - 0.4).abs() < 1e-3);

        let z = comparator_argmin(
            &[LossFunction::Linear {
                g: Vector::from([1.0, -1.0]),
            }],
            &CompositeRegularizer::Zero,
            &DomainSpec::Simplex,
            2,
            1001,
        )
        .unwrap();
        assert_eq!(z, Vector::from([0.0, 1.0]));

        assert_eq!(
            comparator_argmin(
                &[],
                &CompositeRegularizer::Zero,
                &DomainSpec::AllSpace,
                1,
                11
            ),
            Err(OcoError::UnboundedDomain)
        );
    }
}
