use super::LossFunction;
use crate::vector::Vector;

/// Running sum `F = Σ fᵢ` kept in closed form:
/// `quad ‖x‖² + ⟨lin, x⟩ + constant + Σ_k s_k ‖x‖^{p_k} / p_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct LossSum {
    quad: f64,
    lin: Vector,
    constant: f64,
    radial: Vec<(f64, f64)>,
    count: usize,
}

impl LossSum {
    pub fn new(n: usize) -> Self {
        Self {
            quad: 0.0,
            lin: Vector::zeros(n),
            constant: 0.0,
            radial: Vec::new(),
            count: 0,
        }
    }

    pub fn from_losses(n: usize, losses: &[LossFunction]) -> Self {
        let mut sum = Self::new(n);
        for f in losses {
            sum.add(f);
        }
        sum
    }

    pub fn dim(&self) -> usize {
        self.lin.dim()
    }

    /// Number of losses absorbed so far.
    pub fn count(&self) -> usize {
        self.count
    }

    pub fn add(&mut self, f: &LossFunction) {
        self.count += 1;
        match f {
            LossFunction::Linear { g } => self.lin = self.lin.add(g),
            LossFunction::ScaledQuadratic { s, center } => {
                self.quad += s;
                self.lin = self.lin.axpy(-2.0 * s, center);
                self.constant += s * center.norm_sq();
            }
            LossFunction::PnormPower { p, s } => {
                if *p == 2.0 {
                    self.quad += 0.5 * s;
                } else if let Some(entry) = self.radial.iter_mut().find(|(q, _)| q == p) {
                    entry.1 += s;
                } else {
                    self.radial.push((*p, *s));
                }
            }
        }
    }

    /// Accumulated linear coefficient.
    pub fn linear_part(&self) -> &Vector {
        &self.lin
    }

    pub fn value(&self, x: &Vector) -> f64 {
        let r = x.norm();
        self.quad * x.norm_sq()
            + self.lin.dot(x)
            + self.constant
            + self
                .radial
                .iter()
                .map(|(p, s)| s * r.powf(*p) / p)
                .sum::<f64>()
    }

    pub fn gradient(&self, x: &Vector) -> Vector {
        let r = x.norm();
        let radial: f64 = if r == 0.0 {
            0.0
        } else {
            self.radial.iter().map(|(p, s)| s * r.powf(p - 2.0)).sum()
        };
        x.scale(2.0 * self.quad + radial).add(&self.lin)
    }

    pub fn is_zero(&self) -> bool {
        self.quad == 0.0 && self.is_centered() && self.radial.iter().all(|(_, s)| *s == 0.0)
    }

    /// Only the linear part is present.
    pub fn is_linear(&self) -> bool {
        self.quad == 0.0 && self.radial.iter().all(|(_, s)| *s == 0.0)
    }

    /// No linear part, so the sum depends on `x` only through `‖x‖`.
    pub fn is_centered(&self) -> bool {
        self.lin.iter().all(|&c| c == 0.0)
    }

    /// Has a strictly convex component.
    pub fn is_strictly_convex(&self) -> bool {
        self.quad > 0.0 || self.radial.iter().any(|(_, s)| *s > 0.0)
    }

    pub fn is_separable(&self) -> bool {
        self.dim() == 1 || self.radial.iter().all(|(_, s)| *s == 0.0)
    }

    /// Derivative of the `i`-th coordinate summand; valid when separable.
    pub(crate) fn coordinate_derivative(&self, i: usize, c: f64) -> f64 {
        let mut d = 2.0 * self.quad * c + self.lin[i];
        if self.dim() == 1 {
            for (p, s) in &self.radial {
                d += s * c.abs().powf(p - 2.0) * c;
            }
        }
        d
    }
}
