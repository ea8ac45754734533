//! End-to-end acceptance checks. Every criterion prints one PASS/FAIL line;
//! runs labeled `supplementary` exercise the same bounds on streams whose
//! iterates actually move (several criterion streams keep every iterate at
//! the origin, where regret is identically zero).

use std::time::Instant;

use oco_core::algorithms::{GammaMode, ScheduleNumerator, ScheduleOffset, StepSchedule};
use oco_core::experiment::{parse_config, run_experiment, ExperimentResult, RunStatus};
use oco_core::geometry::{composite_bregman_prox, DomainSpec, ReferenceFunction};
use oco_core::harness::{
    dsomd_ledger, run_game, sqrt_prefix_sum_check, AlgorithmConfig, AlgorithmKind,
    PER_ROUND_TOLERANCE,
};
use oco_core::losses::{
    certify_relative_lipschitz, certify_relative_strong_convexity, CompositeRegularizer,
    LossFunction, LossStream, StreamKind,
};
use oco_core::Vector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

/// Modulus of `(1/p)‖x‖^p` relative to `(1/(2p))‖x‖^{2p}` on `[−α, α]^n`
/// for `n = 2`, `p = 4`, `α = 1`: `(p−1)/((2p−1)(√n α)^p)`.
const POLY_M: f64 = 3.0 / 28.0;
/// The i.i.d. scales lie in `[0.5, 1]`, so the certified modulus halves.
const SCALED_M: f64 = 0.5 * POLY_M;

struct Verdicts {
    lines: Vec<(String, bool)>,
}

impl Verdicts {
    fn new() -> Self {
        Self { lines: Vec::new() }
    }

    fn record(&mut self, label: &str, pass: bool, detail: String) {
        let line = format!("{} {label}: {detail}", if pass { "PASS" } else { "FAIL" });
        println!("{line}");
        self.lines.push((line, pass));
    }

    fn finish(self) {
        let failed: Vec<&String> = self
            .lines
            .iter()
            .filter(|(_, p)| !p)
            .map(|(l, _)| l)
            .collect();
        assert!(
            failed.is_empty(),
            "failed checks:\n{}",
            failed
                .iter()
                .map(|s| s.as_str())
                .collect::<Vec<_>>()
                .join("\n")
        );
    }
}

fn run(config: Value) -> ExperimentResult {
    let parsed = parse_config(&config.to_string()).unwrap_or_else(|e| panic!("{e}"));
    let result = run_experiment(&parsed);
    assert_eq!(
        result.summary.status,
        RunStatus::Ok,
        "{:?}",
        result.summary.error
    );
    result
}

/// `(realized, bound, tolerance)` of the run's single bound report.
fn bound_of(result: &ExperimentResult) -> (f64, f64, Option<f64>, f64) {
    let b = &result.summary.bounds[0];
    (b.realized, b.bound_value, b.closed_form, b.tolerance)
}

fn ftrl_criterion_config(horizon: usize) -> Value {
    json!({
        "scenario": format!("ftrl_quartic_{horizon}"),
        "algorithm": "ftrl",
        "dimension": 1,
        "domain": {"kind": "box", "lo": [-2.0], "hi": [2.0]},
        "reference": {"kind": "poly_norm", "p": 2, "scale": 8.0},
        "stream": {"kind": "fixed", "loss": {"kind": "scaled_quadratic", "s": 1.0, "center": [0.0]}},
        "schedule": {"kind": "sqrt_decay", "l": 2f64.sqrt(), "offset": "t_plus_1", "numerator": "sqrt_k"},
        "constants": {"l": 2f64.sqrt()},
        "horizon": horizon,
        "seed": 1
    })
}

fn scaled_power_stream() -> Value {
    json!({"kind": "iid_scaled", "base": {"kind": "pnorm_power", "p": 4.0, "s": 1.0}, "lo": 0.5, "hi": 1.0})
}

fn square() -> Value {
    json!({"kind": "box", "lo": [-1.0, -1.0], "hi": [1.0, 1.0]})
}

fn log_bound(l: f64, m: f64, horizon: usize) -> f64 {
    l * l / (2.0 * m) * ((horizon as f64).ln() + 1.0)
}

fn sqrt_bound(l: f64, k: f64, horizon: usize) -> f64 {
    2.0 * l * (k * (horizon as f64 + 1.0)).sqrt()
}

/// Ledger dominance `regret ≤ ledger ≤ bound` of every FTRL-family run.
fn dominance(result: &ExperimentResult) -> bool {
    result.summary.ledger_holds
}

#[test]
fn acceptance() {
    let mut v = Verdicts::new();
    let mut ftrl_runs: Vec<(String, bool)> = Vec::new();

    // 1: FTRL with R = 2x⁴ on f = x².
    let started = Instant::now();
    let mut ratios = Vec::new();
    let mut ok = true;
    let mut detail = Vec::new();
    for horizon in [100, 1_000, 10_000] {
        let r = run(ftrl_criterion_config(horizon));
        let (realized, _, _, tol) = bound_of(&r);
        let k = r.summary.k_used.unwrap();
        let bound = sqrt_bound(2f64.sqrt(), k, horizon);
        ok &= realized <= bound + tol;
        ratios.push(realized / (horizon as f64).sqrt());
        detail.push(format!("T={horizon} regret {realized:.3e} <= {bound:.3}"));
        ftrl_runs.push((r.summary.scenario.clone(), dominance(&r)));
    }
    let monotone = ratios.windows(2).all(|w| w[1] <= w[0] + 1e-12);
    let secs = started.elapsed().as_secs_f64();
    v.record(
        "criterion 1 (FTRL sqrt bound, R = 2x^4)",
        ok && monotone && secs < 30.0,
        format!(
            "{}; regret/sqrt(T) non-increasing: {monotone}; {secs:.2}s (< 30s)",
            detail.join(", ")
        ),
    );

    // Supplementary: iterates that move, squared_l2 FTRL on symmetric linear losses.
    for horizon in [100, 1_000, 10_000] {
        let r = run(json!({
            "scenario": format!("ftrl_linear_{horizon}"),
            "algorithm": "ftrl", "dimension": 3,
            "domain": {"kind": "box", "lo": [-1.0, -1.0, -1.0], "hi": [1.0, 1.0, 1.0]},
            "reference": {"kind": "squared_l2"},
            "stream": {"kind": "adversarial_linear", "bound": 1.0, "symmetric": true},
            "schedule": {"kind": "sqrt_decay", "l": 3f64.sqrt(), "offset": "t_plus_1", "numerator": "sqrt_k"},
            "constants": {"l": 3f64.sqrt()},
            "horizon": horizon, "seed": 11
        }));
        let (realized, _, closed, tol) = bound_of(&r);
        let closed = closed.unwrap();
        v.record(
            &format!("  supplementary 1 (FTRL, squared_l2, linear, T={horizon})"),
            realized <= closed + tol,
            format!("regret {realized:.4} <= {closed:.4}"),
        );
        ftrl_runs.push((r.summary.scenario.clone(), dominance(&r)));
    }

    // 2: FTL on scaled (1/4)‖x‖⁴.
    let started = Instant::now();
    let ftl = |initial: Option<[f64; 2]>| {
        let mut cfg = json!({
            "scenario": "ftl_power", "algorithm": "ftl", "dimension": 2,
            "domain": square(),
            "relative_to": {"kind": "poly_norm", "p": 4, "scale": 1.0},
            "stream": scaled_power_stream(),
            "constants": {"l": 1.0, "m": SCALED_M},
            "horizon": 10_000, "seed": 2
        });
        if let Some(x) = initial {
            cfg["initial_point"] = json!(x);
        }
        run(cfg)
    };
    let r = ftl(None);
    let secs = started.elapsed().as_secs_f64();
    let (realized, _, _, tol) = bound_of(&r);
    let bound = log_bound(1.0, SCALED_M, 10_000);
    v.record(
        "criterion 2 (FTL log bound)",
        realized <= bound + tol && secs < 60.0,
        format!("T=10000 regret {realized:.3e} <= {bound:.4}; {secs:.2}s (< 60s)"),
    );
    let r = ftl(Some([0.9, -0.6]));
    let (realized, _, _, tol) = bound_of(&r);
    v.record(
        "  supplementary 2 (FTL from x1 = (0.9, -0.6))",
        realized <= bound + tol && r.summary.ledger_holds,
        format!(
            "regret {realized:.4} <= {bound:.4}; per-round stability within L^2/(2Mt): {}",
            r.summary.ledger_holds
        ),
    );

    // 3: DS-OMD with entropy on the simplex.
    let started = Instant::now();
    let k = 10f64.ln();
    let mut ok = true;
    let mut worst_round = f64::NEG_INFINITY;
    let mut worst_ratio: f64 = 0.0;
    let mut k_covers = true;
    for seed in 0..5u64 {
        let r = run(json!({
            "scenario": "dsomd_entropy", "algorithm": "dsomd", "dimension": 10,
            "domain": {"kind": "simplex"},
            "reference": {"kind": "neg_entropy"},
            "stream": {"kind": "adversarial_linear", "bound": 1.0, "symmetric": true},
            "schedule": {"kind": "sqrt_decay", "k": k, "l": 1.0, "offset": "t", "numerator": "sqrt_k"},
            "gamma": "ratio",
            "constants": {"l": 1.0},
            "horizon": 10_000, "seed": 300 + seed
        }));
        let (realized, _, _, tol) = bound_of(&r);
        let bound = sqrt_bound(1.0, k, 10_000);
        ok &= realized <= bound + tol;
        worst_ratio = worst_ratio.max(realized / bound);
        k_covers &= r.summary.k_realized.unwrap() <= k + 1e-9;
        let z = r.summary.comparator.clone().unwrap();
        let schedule = StepSchedule::SqrtDecay {
            k,
            l: 1.0,
            offset: ScheduleOffset::T,
            numerator: ScheduleNumerator::SqrtK,
        };
        let ledger = dsomd_ledger(
            &r.trace,
            &z,
            &ReferenceFunction::NegEntropy,
            &schedule,
            GammaMode::Ratio,
            &CompositeRegularizer::Zero,
            Some(1.0),
            0.0,
        )
        .unwrap();
        ok &= ledger.round_violations == 0;
        worst_round = worst_round.max(ledger.max_round_excess.unwrap());
    }
    let secs = started.elapsed().as_secs_f64();
    v.record(
        "criterion 3 (DS-OMD sqrt bound, entropy, 5 seeds)",
        ok && k_covers && worst_round <= PER_ROUND_TOLERANCE && secs < 60.0,
        format!(
            "max regret/bound {worst_ratio:.3}; K = ln 10 covers D(z, x1): {k_covers}; \
             max D(x_t, w_t+1) - eta_t^2 L^2/2 = {worst_round:.2e} (<= 1e-7); {secs:.2}s (< 60s)"
        ),
    );

    // 4: OMD with γ = 1 and η_t = 1/(tM).
    let omd = |initial: Option<[f64; 2]>| {
        let mut cfg = json!({
            "scenario": "omd_power", "algorithm": "omd_vanilla", "dimension": 2,
            "domain": square(),
            "reference": {"kind": "poly_norm", "p": 4, "scale": 1.0},
            "stream": scaled_power_stream(),
            "schedule": {"kind": "inverse_tm", "m": SCALED_M},
            "gamma": "one",
            "constants": {"l": 1.0, "m": SCALED_M},
            "horizon": 10_000, "seed": 4
        });
        if let Some(x) = initial {
            cfg["initial_point"] = json!(x);
        }
        run(cfg)
    };
    let r = omd(None);
    let (realized, _, _, tol) = bound_of(&r);
    v.record(
        "criterion 4 (OMD log bound)",
        realized <= bound + tol,
        format!("T=10000 regret {realized:.3e} <= {bound:.4}"),
    );
    let r = omd(Some([0.9, -0.6]));
    let (realized, _, _, tol) = bound_of(&r);
    v.record(
        "  supplementary 4 (OMD from x1 = (0.9, -0.6))",
        realized <= bound + tol && r.summary.ledger_holds,
        format!(
            "regret {realized:.4} <= {bound:.4}; ledger holds: {}",
            r.summary.ledger_holds
        ),
    );

    // 5: RDA with 0.05‖·‖₁ on the linearized quadratic.
    let mut cfg = ftrl_criterion_config(1_000);
    cfg["algorithm"] = json!("rda");
    cfg["extra"] = json!({"kind": "l1", "lambda": 0.05});
    cfg["schedule"]["numerator"] = json!("sqrt2k");
    let r = run(cfg);
    let (realized, _, _, tol) = bound_of(&r);
    let bound = sqrt_bound(2f64.sqrt(), r.summary.k_used.unwrap(), 1_000);
    let zeros = exact_zero_rounds(&r);
    v.record(
        "criterion 5 (RDA composite sqrt bound, l1)",
        realized <= bound + tol && zeros > 0,
        format!("T=1000 composite regret {realized:.3e} <= {bound:.3}; rounds with an exact zero: {zeros}"),
    );
    ftrl_runs.push((r.summary.scenario.clone(), dominance(&r)));
    let r = run(json!({
        "scenario": "rda_linear", "algorithm": "rda", "dimension": 5,
        "domain": {"kind": "box", "lo": vec![-1.0; 5], "hi": vec![1.0; 5]},
        "reference": {"kind": "squared_l2"},
        "stream": {"kind": "adversarial_linear", "bound": 1.0, "symmetric": true},
        "schedule": {"kind": "sqrt_decay", "l": 5f64.sqrt(), "offset": "t_plus_1", "numerator": "sqrt2k"},
        "extra": {"kind": "l1", "lambda": 0.05},
        "constants": {"l": 5f64.sqrt()},
        "horizon": 1_000, "seed": 5
    }));
    let (realized, _, _, tol) = bound_of(&r);
    let bound = sqrt_bound(5f64.sqrt(), r.summary.k_used.unwrap(), 1_000);
    let zeros = exact_zero_rounds(&r);
    v.record(
        "  supplementary 5 (RDA, squared_l2, symmetric linear)",
        realized <= bound + tol && zeros > 0,
        format!("composite regret {realized:.4} <= {bound:.4}; rounds with an exact zero: {zeros}"),
    );
    ftrl_runs.push((r.summary.scenario.clone(), dominance(&r)));

    // 6: composite DS-OMD with λ‖·‖₁ on a box.
    let r = run(json!({
        "scenario": "composite_dsomd", "algorithm": "dsomd_composite", "dimension": 5,
        "domain": {"kind": "box", "lo": vec![-1.0; 5], "hi": vec![1.0; 5]},
        "reference": {"kind": "squared_l2"},
        "stream": {"kind": "adversarial_linear", "bound": 1.0, "symmetric": true},
        "schedule": {"kind": "sqrt_decay", "l": 5f64.sqrt(), "offset": "t", "numerator": "sqrt_k"},
        "gamma": "ratio",
        "extra": {"kind": "l1", "lambda": 0.1},
        "constants": {"l": 5f64.sqrt()},
        "horizon": 1_000, "seed": 16
    }));
    let (realized, bound, _, tol) = bound_of(&r);
    v.record(
        "criterion 6 (composite DS-OMD schedule-form bound)",
        realized <= bound + tol,
        format!(
            "T=1000 composite regret {realized:.4} <= K/eta_T+1 + sum eta_t L^2/2 = {bound:.4}"
        ),
    );

    // 7: DA and FTRL on linear losses.
    let worst = da_ftrl_gap();
    v.record(
        "criterion 7 (DA = FTRL on 20 linear streams, T=100)",
        worst <= 1e-7,
        format!("max l_inf iterate gap {worst:.2e} (<= 1e-7)"),
    );

    // 8: property suites.
    let three_point = three_point_worst();
    let round_trip = round_trip_worst();
    let (a1_violations, a1_total) = sqrt_prefix_sum_sweep();
    let prox = prox_inequality_worst();
    let certs = worked_example_certificates();
    let dominated = ftrl_runs.iter().all(|(_, ok)| *ok);
    let failing: Vec<&str> = ftrl_runs
        .iter()
        .filter(|(_, ok)| !ok)
        .map(|(s, _)| s.as_str())
        .collect();
    v.record(
        "criterion 8 (property suites)",
        three_point <= 1e-9
            && round_trip <= 1e-8
            && a1_violations == 0
            && prox <= 1e-7
            && certs.iter().all(|(_, ok)| *ok)
            && dominated,
        format!(
            "three-point {three_point:.1e} (<= 1e-9); conjugate round trip {round_trip:.1e} (<= 1e-8); \
             prefix-sum inequality {a1_violations}/{a1_total} violations; prox inequality {prox:.1e} (<= 1e-7); \
             certificates [{}]; FTRL ledger dominance on {} runs{}",
            certs.iter().map(|(l, ok)| format!("{l}: {ok}")).collect::<Vec<_>>().join(", "),
            ftrl_runs.len(),
            if failing.is_empty() { String::new() } else { format!(", failing {failing:?}") },
        ),
    );

    v.finish();
}

/// Rounds whose played iterate has a coordinate equal to zero exactly.
fn exact_zero_rounds(r: &ExperimentResult) -> usize {
    r.trace
        .rounds
        .iter()
        .filter(|rec| rec.x.iter().any(|&c| c == 0.0))
        .count()
}

fn da_ftrl_gap() -> f64 {
    let geometries = [
        (
            ReferenceFunction::SquaredL2,
            DomainSpec::cube(3, -1.0, 1.0),
            3,
        ),
        (ReferenceFunction::NegEntropy, DomainSpec::Simplex, 4),
        (
            ReferenceFunction::PolyNorm { p: 2, scale: 8.0 },
            DomainSpec::interval(-2.0, 2.0),
            1,
        ),
    ];
    let mut worst: f64 = 0.0;
    for seed in 0..20u64 {
        let (reference, domain, n) = geometries[seed as usize % 3].clone();
        let stream = LossStream::new(
            StreamKind::AdversarialLinear {
                dim: n,
                bound: 1.0,
                seed: 700 + seed,
                symmetric: true,
            },
            100,
        )
        .unwrap();
        let config = |kind| AlgorithmConfig {
            kind,
            reference: reference.clone(),
            schedule: StepSchedule::SqrtDecay {
                k: 1.0,
                l: 1.0,
                offset: ScheduleOffset::TPlus1,
                numerator: ScheduleNumerator::SqrtK,
            },
            gamma: GammaMode::Ratio,
            extra: CompositeRegularizer::Zero,
            domain: domain.clone(),
            dimension: n,
            initial_point: None,
        };
        let da = run_game(&config(AlgorithmKind::Da), &stream).unwrap();
        let ftrl = run_game(&config(AlgorithmKind::Ftrl), &stream).unwrap();
        for (a, b) in da.rounds.iter().zip(&ftrl.rounds) {
            worst = worst.max(a.x.dist_inf(&b.x));
        }
        worst = worst.max(da.last.dist_inf(&ftrl.last));
    }
    worst
}

fn uniform(rng: &mut ChaCha8Rng, n: usize, lo: f64, hi: f64) -> Vector {
    Vector::from((0..n).map(|_| rng.random_range(lo..hi)).collect::<Vec<_>>())
}

fn simplex_interior(rng: &mut ChaCha8Rng, n: usize) -> Vector {
    let raw = uniform(rng, n, 0.05, 1.0);
    let s = raw.sum();
    raw.scale(1.0 / s)
}

fn three_point_worst() -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(81);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let sq = ReferenceFunction::SquaredL2;
        let (z, x, y) = (
            uniform(&mut rng, 3, -2.0, 2.0),
            uniform(&mut rng, 3, -2.0, 2.0),
            uniform(&mut rng, 3, -2.0, 2.0),
        );
        worst = worst.max(sq.three_point_residual(&z, &x, &y).unwrap());
        let poly = ReferenceFunction::PolyNorm { p: 2, scale: 8.0 };
        let (z, x, y) = (
            uniform(&mut rng, 2, -1.0, 1.0),
            uniform(&mut rng, 2, -1.0, 1.0),
            uniform(&mut rng, 2, -1.0, 1.0),
        );
        worst = worst.max(poly.three_point_residual(&z, &x, &y).unwrap());
        let ent = ReferenceFunction::NegEntropy;
        let (z, x, y) = (
            simplex_interior(&mut rng, 4),
            simplex_interior(&mut rng, 4),
            simplex_interior(&mut rng, 4),
        );
        worst = worst.max(ent.three_point_residual(&z, &x, &y).unwrap());
    }
    worst
}

fn round_trip_worst() -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(82);
    let kinds = [
        (ReferenceFunction::SquaredL2, -3.0, 3.0),
        (ReferenceFunction::PolyNorm { p: 2, scale: 8.0 }, -2.0, 2.0),
        (ReferenceFunction::PolyNorm { p: 4, scale: 1.0 }, -1.0, 1.0),
        (ReferenceFunction::NegEntropy, 0.01, 3.0),
    ];
    let mut worst: f64 = 0.0;
    for (r, lo, hi) in &kinds {
        for _ in 0..1000 {
            let x = uniform(&mut rng, 3, *lo, *hi);
            let back = r.grad_conjugate(&r.gradient(&x).unwrap()).unwrap();
            worst = worst.max(back.dist_inf(&x));
        }
    }
    worst
}

fn sqrt_prefix_sum_sweep() -> (usize, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(83);
    let total = 10_000;
    let mut violations = 0;
    for _ in 0..total {
        let len = rng.random_range(1..60);
        let mut a: Vec<f64> = (0..len)
            .map(|_| {
                if rng.random_bool(0.2) {
                    0.0
                } else {
                    rng.random_range(0.0..10.0)
                }
            })
            .collect();
        a[0] = rng.random_range(1e-6..10.0);
        let (_, _, holds) = sqrt_prefix_sum_check(&a).unwrap();
        violations += usize::from(!holds);
    }
    (violations, total)
}

/// Worst `D(x,ȳ) + D(ȳ,y) − D(x,y) − α(Ψ(x) − Ψ(ȳ))` for `ȳ` the composite
/// prox of `y` and sampled feasible `x`.
fn prox_inequality_worst() -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(84);
    let mut worst = f64::NEG_INFINITY;
    for i in 0..1000 {
        let (phi, dom, n, y) = match i % 3 {
            0 => (
                ReferenceFunction::SquaredL2,
                DomainSpec::cube(3, -1.0, 1.0),
                3,
                uniform(&mut rng, 3, -2.0, 2.0),
            ),
            1 => (
                ReferenceFunction::PolyNorm { p: 2, scale: 1.0 },
                DomainSpec::cube(2, -1.0, 1.0),
                2,
                uniform(&mut rng, 2, -2.0, 2.0),
            ),
            _ => (
                ReferenceFunction::NegEntropy,
                DomainSpec::Simplex,
                4,
                uniform(&mut rng, 4, 0.05, 2.0),
            ),
        };
        let psi = CompositeRegularizer::L1 {
            lambda: rng.random_range(0.0..0.5),
        };
        let alpha = rng.random_range(0.0..1.0);
        let y_bar = composite_bregman_prox(&phi, &y, &psi, alpha, &dom)
            .unwrap()
            .point;
        let x = match dom {
            DomainSpec::Simplex => simplex_interior(&mut rng, n),
            _ => uniform(&mut rng, n, -1.0, 1.0),
        };
        let d = |a: &Vector, b: &Vector| phi.bregman_divergence(a, &phi.floor_interior(b)).unwrap();
        let gap =
            d(&x, &y_bar) + d(&y_bar, &y) - d(&x, &y) - alpha * (psi.value(&x) - psi.value(&y_bar));
        worst = worst.max(gap);
    }
    worst
}

fn worked_example_certificates() -> Vec<(&'static str, bool)> {
    let quad = LossFunction::ScaledQuadratic {
        s: 1.0,
        center: Vector::zeros(1),
    };
    let quartic = ReferenceFunction::PolyNorm { p: 2, scale: 8.0 };
    let interval = DomainSpec::interval(-2.0, 2.0);
    let lip =
        certify_relative_lipschitz(&quad, &quartic, 2f64.sqrt(), &interval, 1, 10_000, 91).unwrap();

    let power = LossFunction::PnormPower { p: 4.0, s: 1.0 };
    let octic = ReferenceFunction::PolyNorm { p: 4, scale: 1.0 };
    let square = DomainSpec::cube(2, -1.0, 1.0);
    let poly_lip = certify_relative_lipschitz(&power, &octic, 1.0, &square, 2, 10_000, 92).unwrap();
    let poly_sc =
        certify_relative_strong_convexity(&power, &octic, POLY_M, &square, 2, 10_000, 93).unwrap();
    vec![
        ("x^2 vs 2x^4 at L = sqrt 2", lip.valid),
        ("(1/4)|x|^4 vs (1/8)|x|^8 at L = 1", poly_lip.valid),
        ("(1/4)|x|^4 vs (1/8)|x|^8 at M = 3/28", poly_sc.valid),
    ]
}
