use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Exp1, StandardNormal};
use serde::Serialize;

use super::LossFunction;
use crate::error::{OcoError, Result};
use crate::geometry::{DomainSpec, ReferenceFunction};
use crate::vector::Vector;

/// A certificate is valid when the worst sampled violation is at most this.
pub const CERTIFICATE_TOLERANCE: f64 = 1e-7;

/// Empirical check of a relative constant over sampled pairs.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RelativeCertificate {
    pub l: Option<f64>,
    pub m: Option<f64>,
    pub reference: ReferenceFunction,
    pub samples: usize,
    pub max_violation: f64,
    pub valid: bool,
    /// The `(x, y)` pair achieving `max_violation`.
    pub worst_pair: Option<(Vector, Vector)>,
}

/// Uniform on a box, Dirichlet(1, …, 1) on the simplex, standard normal on
/// all of `R^n`.
pub fn sample_point<R: Rng>(dom: &DomainSpec, n: usize, rng: &mut R) -> Vector {
    match dom {
        DomainSpec::AllSpace => Vector::from(
            (0..n)
                .map(|_| rng.sample::<f64, _>(StandardNormal))
                .collect::<Vec<_>>(),
        ),
        DomainSpec::Box { lo, hi } => Vector::from(
            (0..n)
                .map(|i| lo[i] + (hi[i] - lo[i]) * rng.random::<f64>())
                .collect::<Vec<_>>(),
        ),
        DomainSpec::Simplex => {
            let e: Vec<f64> = (0..n).map(|_| rng.sample::<f64, _>(Exp1)).collect();
            let total: f64 = e.iter().sum();
            Vector::from(e.into_iter().map(|c| c / total).collect::<Vec<_>>())
        }
    }
}

fn sweep(
    reference: &ReferenceFunction,
    dom: &DomainSpec,
    n: usize,
    samples: usize,
    seed: u64,
    violation: impl Fn(&Vector, &Vector, f64) -> f64,
) -> Result<(f64, Option<(Vector, Vector)>)> {
    if samples == 0 {
        return Err(OcoError::Param(
            "certification needs at least one sample".into(),
        ));
    }
    dom.validate(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = f64::NEG_INFINITY;
    let mut pair = None;
    for _ in 0..samples {
        let x = reference.floor_interior(&sample_point(dom, n, &mut rng));
        let y = sample_point(dom, n, &mut rng);
        let d = reference.bregman_divergence(&y, &x)?;
        let v = violation(&x, &y, d);
        if v > worst {
            worst = v;
            pair = Some((x, y));
        }
    }
    Ok((worst, pair))
}

/// Checks `⟨g, x − y⟩ ≤ L √(2 D_R(y, x))` on `samples` random pairs.
pub fn certify_relative_lipschitz(
    f: &LossFunction,
    reference: &ReferenceFunction,
    l: f64,
    dom: &DomainSpec,
    n: usize,
    samples: usize,
    seed: u64,
) -> Result<RelativeCertificate> {
    let (max_violation, worst_pair) = sweep(reference, dom, n, samples, seed, |x, y, d| {
        f.subgradient(x).dot(&x.sub(y)) - l * (2.0 * d.max(0.0)).sqrt()
    })?;
    Ok(RelativeCertificate {
        l: Some(l),
        m: None,
        reference: reference.clone(),
        samples,
        max_violation,
        valid: max_violation <= CERTIFICATE_TOLERANCE,
        worst_pair,
    })
}

/// Checks `f(y) ≥ f(x) + ⟨g, y − x⟩ + M D_R(y, x)` on `samples` random pairs.
pub fn certify_relative_strong_convexity(
    f: &LossFunction,
    reference: &ReferenceFunction,
    m: f64,
    dom: &DomainSpec,
    n: usize,
    samples: usize,
    seed: u64,
) -> Result<RelativeCertificate> {
    let (max_violation, worst_pair) = sweep(reference, dom, n, samples, seed, |x, y, d| {
        f.value(x) + f.subgradient(x).dot(&y.sub(x)) + m * d - f.value(y)
    })?;
    Ok(RelativeCertificate {
        l: None,
        m: Some(m),
        reference: reference.clone(),
        samples,
        max_violation,
        valid: max_violation <= CERTIFICATE_TOLERANCE,
        worst_pair,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x_squared() -> LossFunction {
        LossFunction::ScaledQuadratic {
            s: 1.0,
            center: Vector::zeros(1),
        }
    }

    #[test]
    fn x_squared_is_relative_lipschitz_to_2x4() {
        let cert = certify_relative_lipschitz(
            &x_squared(),
            &ReferenceFunction::poly_norm(2, 8.0).unwrap(),
            std::f64::consts::SQRT_2,
            &DomainSpec::interval(-10.0, 10.0),
            1,
            10_000,
            1,
        )
        .unwrap();
        assert!(cert.valid, "max violation {}", cert.max_violation);
    }

    #[test]
    fn x_squared_is_not_classically_lipschitz() {
        let cert = certify_relative_lipschitz(
            &x_squared(),
            &ReferenceFunction::SquaredL2,
            1.0,
            &DomainSpec::interval(-10.0, 10.0),
            1,
            10_000,
            1,
        )
        .unwrap();
        assert!(!cert.valid);
        assert!(cert.max_violation > 0.0);
    }

    #[test]
    fn zero_modulus_is_plain_convexity() {
        let f = LossFunction::PnormPower { p: 3.0, s: 2.0 };
        let cert = certify_relative_strong_convexity(
            &f,
            &ReferenceFunction::SquaredL2,
            0.0,
            &DomainSpec::cube(3, -2.0, 2.0),
            3,
            2_000,
            5,
        )
        .unwrap();
        assert!(cert.valid);
    }

    #[test]
    fn quartic_not_classically_strongly_convex() {
        let cert = certify_relative_strong_convexity(
            &LossFunction::PnormPower { p: 4.0, s: 1.0 },
            &ReferenceFunction::SquaredL2,
            0.1,
            &DomainSpec::cube(2, -1.0, 1.0),
            2,
            10_000,
            9,
        )
        .unwrap();
        assert!(!cert.valid);
    }

    #[test]
    fn needs_samples() {
        assert!(certify_relative_lipschitz(
            &x_squared(),
            &ReferenceFunction::SquaredL2,
            1.0,
            &DomainSpec::interval(-1.0, 1.0),
            1,
            0,
            0
        )
        .is_err());
    }
}
