use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::LossFunction;
use crate::error::{OcoError, Result};
use crate::vector::Vector;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StreamKind {
    Fixed {
        loss: LossFunction,
    },
    /// `s_t · base` with `s_t` uniform on `[lo, hi]`.
    IidScaled {
        base: LossFunction,
        lo: f64,
        hi: f64,
        seed: u64,
    },
    /// Linear losses with coordinates uniform on `[0, bound]`
    /// (`[−bound, bound]` when `symmetric`).
    AdversarialLinear {
        dim: usize,
        bound: f64,
        seed: u64,
        #[serde(default)]
        symmetric: bool,
    },
    Replay {
        losses: Vec<LossFunction>,
    },
}

/// An oblivious adversary: the loss of round `t` is a pure function of
/// `(kind, seed, t)`, so streams can be replayed from any round.
#[derive(Clone, Debug, PartialEq)]
pub struct LossStream {
    kind: StreamKind,
    horizon: usize,
}

impl LossStream {
    pub fn new(kind: StreamKind, horizon: usize) -> Result<Self> {
        match &kind {
            StreamKind::IidScaled { lo, hi, .. } => {
                if !(lo.is_finite() && hi.is_finite() && *lo >= 0.0 && lo <= hi) {
                    return Err(OcoError::Param(format!(
                        "iid_scaled needs 0 <= lo <= hi, got [{lo}, {hi}]"
                    )));
                }
            }
            StreamKind::AdversarialLinear { dim, bound, .. } => {
                if *dim == 0 || !(bound.is_finite() && *bound >= 0.0) {
                    return Err(OcoError::Param(
                        "adversarial_linear needs dim > 0 and bound >= 0".into(),
                    ));
                }
            }
            StreamKind::Replay { losses } => {
                if losses.len() < horizon {
                    return Err(OcoError::Param(format!(
                        "replay stream holds {} losses but horizon is {horizon}",
                        losses.len()
                    )));
                }
            }
            StreamKind::Fixed { .. } => {}
        }
        Ok(Self { kind, horizon })
    }

    pub fn kind(&self) -> &StreamKind {
        &self.kind
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    fn round_rng(seed: u64, t: usize) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(t as u64);
        rng
    }

    /// Loss played at round `t` (1-based).
    pub fn loss_at(&self, t: usize) -> Result<LossFunction> {
        if t == 0 || t > self.horizon {
            return Err(OcoError::HorizonExceeded {
                t,
                horizon: self.horizon,
            });
        }
        Ok(match &self.kind {
            StreamKind::Fixed { loss } => loss.clone(),
            StreamKind::IidScaled { base, lo, hi, seed } => {
                let mut rng = Self::round_rng(*seed, t);
                let s = if lo == hi {
                    *lo
                } else {
                    rng.random_range(*lo..=*hi)
                };
                base.scaled(s)
            }
            StreamKind::AdversarialLinear {
                dim,
                bound,
                seed,
                symmetric,
            } => {
                let mut rng = Self::round_rng(*seed, t);
                let lo = if *symmetric { -bound } else { 0.0 };
                let g: Vec<f64> = (0..*dim)
                    .map(|_| lo + (bound - lo) * rng.random::<f64>())
                    .collect();
                LossFunction::Linear { g: Vector::from(g) }
            }
            StreamKind::Replay { losses } => losses[t - 1].clone(),
        })
    }

    /// All losses of the horizon, in order.
    pub fn collect(&self) -> Result<Vec<LossFunction>> {
        (1..=self.horizon).map(|t| self.loss_at(t)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base() -> LossFunction {
        LossFunction::PnormPower { p: 4.0, s: 1.0 }
    }

    #[test]
    fn fixed_stream_repeats() {
        let s = LossStream::new(StreamKind::Fixed { loss: base() }, 5).unwrap();
        assert_eq!(s.loss_at(1).unwrap(), base());
        assert_eq!(s.loss_at(5).unwrap(), base());
    }

    #[test]
    fn iid_scaled_is_deterministic_and_in_range() {
        let kind = StreamKind::IidScaled {
            base: base(),
            lo: 0.5,
            hi: 1.0,
            seed: 7,
        };
        let a = LossStream::new(kind.clone(), 100).unwrap();
        let b = LossStream::new(kind, 100).unwrap();
        assert_eq!(a.loss_at(1).unwrap(), b.loss_at(1).unwrap());
        for t in 1..=100 {
            match a.loss_at(t).unwrap() {
                LossFunction::PnormPower { s, .. } => assert!((0.5..=1.0).contains(&s)),
                other => panic!("unexpected loss {other:?}"),
            }
        }
        assert_ne!(a.loss_at(1).unwrap(), a.loss_at(2).unwrap());
    }

    #[test]
    fn adversarial_linear_bounded() {
        for symmetric in [false, true] {
            let s = LossStream::new(
                StreamKind::AdversarialLinear {
                    dim: 3,
                    bound: 1.0,
                    seed: 3,
                    symmetric,
                },
                10_000,
            )
            .unwrap();
            for t in 1..=10_000 {
                let LossFunction::Linear { g } = s.loss_at(t).unwrap() else {
                    panic!("expected linear loss")
                };
                assert!(g.max_abs() <= 1.0);
                if !symmetric {
                    assert!(g.iter().all(|&c| c >= 0.0));
                }
            }
        }
    }

    #[test]
    fn horizon_exceeded() {
        let s = LossStream::new(StreamKind::Fixed { loss: base() }, 3).unwrap();
        assert!(matches!(
            s.loss_at(4),
            Err(OcoError::HorizonExceeded { t: 4, horizon: 3 })
        ));
        assert!(s.loss_at(0).is_err());
    }
}
