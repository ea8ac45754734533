use oco_core::algorithms::{GammaMode, ScheduleNumerator, ScheduleOffset, StepSchedule};
use oco_core::geometry::{DomainSpec, ReferenceFunction};
use oco_core::harness::{
    averaged_iterate_bound, averaged_iterate_gap, regret, run_game, AlgorithmConfig, AlgorithmKind,
    LEDGER_TOLERANCE,
};
use oco_core::losses::{CompositeRegularizer, LossFunction, LossStream, StreamKind};
use oco_core::solvers::comparator_argmin;
use oco_core::Vector;

fn dsomd(k: f64, l: f64, domain: DomainSpec, n: usize) -> AlgorithmConfig {
    AlgorithmConfig {
        kind: AlgorithmKind::Dsomd,
        reference: ReferenceFunction::SquaredL2,
        schedule: StepSchedule::SqrtDecay {
            k,
            l,
            offset: ScheduleOffset::T,
            numerator: ScheduleNumerator::SqrtK,
        },
        gamma: GammaMode::Ratio,
        extra: CompositeRegularizer::Zero,
        domain,
        dimension: n,
        initial_point: None,
    }
}

#[test]
fn averaged_iterate_converges_at_the_stated_rate() {
    let cases = [
        (
            LossFunction::Linear {
                g: Vector::from(vec![0.6, -0.8]),
            },
            // ½‖z − x₁‖² with z = (−1, 1) and x₁ = 0.
            1.0,
            1.0,
            Vector::from(vec![-1.0, 1.0]),
        ),
        (
            LossFunction::ScaledQuadratic {
                s: 0.5,
                center: Vector::from(vec![0.3, 0.2]),
            },
            0.5 * (0.09 + 0.04),
            2.0,
            Vector::from(vec![0.3, 0.2]),
        ),
    ];
    for (f, k, l, x_star) in cases {
        for horizon in [10, 100, 1000] {
            let stream = LossStream::new(StreamKind::Fixed { loss: f.clone() }, horizon).unwrap();
            let trace = run_game(&dsomd(k, l, DomainSpec::cube(2, -1.0, 1.0), 2), &stream).unwrap();
            let gap = averaged_iterate_gap(&trace, &f, &x_star);
            let bound = averaged_iterate_bound(l, k, horizon);
            assert!(
                gap <= bound + trace.residual_sum() + LEDGER_TOLERANCE,
                "{} T={horizon}: {gap} > {bound}",
                f.label()
            );
        }
    }
}

#[test]
fn no_iterate_beats_the_comparator() {
    for seed in 0..10 {
        let stream = LossStream::new(
            StreamKind::IidScaled {
                base: LossFunction::ScaledQuadratic {
                    s: 1.0,
                    center: Vector::from(vec![0.4, -0.7]),
                },
                lo: 0.1,
                hi: 1.0,
                seed,
            },
            50,
        )
        .unwrap();
        let dom = DomainSpec::cube(2, -1.0, 1.0);
        let losses = stream.collect().unwrap();
        let z = comparator_argmin(&losses, &CompositeRegularizer::Zero, &dom, 2, 201).unwrap();
        let trace = run_game(&dsomd(1.0, 3.0, dom, 2), &stream).unwrap();
        let best = regret(&trace, &z);
        for rec in &trace.rounds {
            assert!(regret(&trace, &rec.x) <= best + 1e-9);
        }
    }
}
