//! One line per acceptance criterion; the test fails if any criterion fails.

mod common;

use std::time::Instant;

use common::identities::{self, Check};
use diagdisc::channels::{
    commutes_with_pi, fig2a, fig2b, fig2c, qubit_mu_commuting_condition, random_isotropic,
    QuantumChannel,
};
use diagdisc::experiments::{
    rows_csv, run_channel_classification, run_continuity_check, run_monotonicity,
    run_xstate_comparison, summary_csv, ClassificationConfig, ContinuityConfig, ExperimentRecord,
    MonotonicityConfig, XStateConfig, DEFAULT_SEED,
};
use diagdisc::linalg::random::{haar_unitary, RandomSource};
use diagdisc::linalg::{ComplexMatrix, C64};
use diagdisc::states::{
    generator_trace_product, sample_x_params, sample_x_params_counted, x_state_from_params,
    XStateParams,
};
use proptest::test_runner::{Config, TestCaseError, TestRunner};

type Criterion = (&'static str, fn() -> (bool, String));
type Rendered = Box<dyn Fn(usize) -> String>;

fn threads() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn summary(rec: &ExperimentRecord, key: &str) -> f64 {
    rec.summary_value(key)
        .unwrap_or_else(|| panic!("`{}` lacks `{key}`", rec.experiment_id))
}

fn monotonicity() -> (bool, String) {
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, channel) in [("fig2a", fig2a()), ("fig2b", fig2b()), ("fig2c", fig2c())] {
        let mut cfg = MonotonicityConfig::new(channel, name, 1000, DEFAULT_SEED);
        cfg.threads = threads();
        let rec = run_monotonicity(&cfg).unwrap();
        let v = summary(&rec, "violation_count");
        ok &= v == 0.0 && rec.rows.len() == 1000;
        parts.push(format!(
            "{name}: {v} violations, max increase {:.3e}",
            summary(&rec, "max_delta")
        ));
    }
    (ok, parts.join("; "))
}

fn xstate() -> (bool, String) {
    let mut cfg = XStateConfig::new(10_000, DEFAULT_SEED);
    cfg.threads = threads();
    let rec = run_xstate_comparison(&cfg).unwrap();
    let ordering = summary(&rec, "ordering_violations");
    let frac = summary(&rec, "match_fraction");
    let ok = ordering == 0.0 && (0.29..=0.35).contains(&frac) && rec.rows.len() == 10_000;
    (
        ok,
        format!(
            "ordering violations {ordering}, match fraction {frac:.4}, min D̄ - D {:.3e}",
            summary(&rec, "min_difference")
        ),
    )
}

fn qubit_condition() -> (bool, String) {
    let e0 = vec![C64::new(1.0, 0.0), C64::new(0.0, 0.0)];
    let e1 = vec![C64::new(0.0, 0.0), C64::new(1.0, 0.0)];
    let v = qubit_mu_commuting_condition(&fig2a(), &e0, &e1).unwrap();
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let expected = (5f64.sqrt() - 1.0) / (3.0 * (1.0 + g * g));
    let mut ok = (v - expected).abs() <= 1e-10;

    let mut rng = RandomSource::from_seed(DEFAULT_SEED);
    let mut channels = vec![QuantumChannel::isotropic(1.0, ComplexMatrix::identity(2)).unwrap()];
    for _ in 0..20 {
        let gamma = rng.uniform(0.0, 1.0);
        channels.push(random_isotropic(&mut rng, 2, gamma, false).unwrap());
    }
    let mut worst: f64 = 0.0;
    for ch in &channels {
        for _ in 0..100 {
            let basis = haar_unitary(&mut rng, 2);
            worst = worst
                .max(qubit_mu_commuting_condition(ch, &basis.column(0), &basis.column(1)).unwrap());
        }
    }
    ok &= worst <= 1e-10;
    (
        ok,
        format!("Hadamard mix {v:.15} (expected {expected:.15}); worst over {} isotropic channels {worst:.2e}", channels.len()),
    )
}

fn isotropic_commute() -> (bool, String) {
    let mut rng = RandomSource::from_seed(DEFAULT_SEED + 1);
    let mut ok = true;
    let mut worst: f64 = 0.0;
    let mut evaluated = 0;
    for d in 2..=4 {
        for antiunitary in [false, true] {
            for _ in 0..3 {
                let gamma = rng.uniform(0.0, 1.0);
                let ch = random_isotropic(&mut rng, d, gamma, antiunitary).unwrap();
                let r = commutes_with_pi(&ch, 200, &mut rng);
                ok &= r.max_deviation <= 1e-9 && r.evaluated() > 0;
                worst = worst.max(r.max_deviation);
                evaluated += r.evaluated();
            }
        }
    }
    (
        ok,
        format!("max deviation {worst:.2e} over {evaluated} evaluated trials (18 channels)"),
    )
}

fn continuity() -> (bool, String) {
    let mut ok = true;
    let mut parts = Vec::new();
    for (da, db) in [(2, 2), (2, 3)] {
        let mut cfg = ContinuityConfig::new(da, db, 200, vec![1e-3, 1e-4], DEFAULT_SEED);
        cfg.threads = threads();
        let rec = run_continuity_check(&cfg).unwrap();
        let (slack, viol) = (summary(&rec, "min_slack"), summary(&rec, "violation_count"));
        let (sslack, sviol) = (
            summary(&rec, "min_schatten_slack"),
            summary(&rec, "schatten_violation_count"),
        );
        ok &= slack >= 0.0 && viol == 0.0 && sslack >= 0.0 && sviol == 0.0;
        parts.push(format!(
            "{da}x{db}: min slack {slack:.3e}, Schatten-2 min slack {sslack:.3e}"
        ));
    }
    (ok, parts.join("; "))
}

type Property = (&'static str, u32, fn(u64) -> Check);

fn run_property(cases: u32, check: fn(u64) -> Check) -> Result<(), String> {
    let mut runner = TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    });
    runner
        .run(&proptest::num::u64::ANY, |seed| {
            check(seed).map_err(TestCaseError::fail)
        })
        .map_err(|e| e.to_string())
}

fn identity_suite() -> (bool, String) {
    let checks: [Property; 5] = [
        (
            "relative entropy",
            1000,
            identities::relative_entropy_identity,
        ),
        (
            "idempotence/marginals",
            1000,
            identities::idempotent_and_marginal_preserving,
        ),
        (
            "faithfulness",
            1000,
            identities::faithful_on_classical_quantum,
        ),
        ("ordering", 300, identities::optimized_below_diagonal),
        ("covariance", 1000, identities::local_unitary_covariance),
    ];
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, cases, check) in checks {
        match run_property(cases, check) {
            Ok(()) => parts.push(format!("{name} ({cases})")),
            Err(e) => {
                ok = false;
                parts.push(format!("{name} FAILED: {e}"));
            }
        }
    }
    (ok, parts.join(", "))
}

fn geometry() -> (bool, String) {
    let mut exact = true;
    for i in 1..=15 {
        for j in 1..=15 {
            let expected = C64::new(if i == j { 2.0 } else { 0.0 }, 0.0);
            exact &= generator_trace_product(i, j) == expected;
        }
    }
    let mut rng = RandomSource::from_seed(DEFAULT_SEED);
    let mut round_trip: f64 = 0.0;
    for _ in 0..10_000 {
        let p = sample_x_params(&mut rng);
        let back = XStateParams::from_matrix(x_state_from_params(&p).unwrap().rho());
        for (a, b) in p.as_array().iter().zip(back.as_array()) {
            round_trip = round_trip.max((a - b).abs());
        }
    }
    let oracle_n = 1_000_000;
    let p = common::x_state_volume_fraction(oracle_n, DEFAULT_SEED + 100);
    let accepted = 100_000;
    let draws: u64 = (0..accepted)
        .map(|_| sample_x_params_counted(&mut rng).1)
        .sum();
    let rate = accepted as f64 / draws as f64;
    let sigma = (p * (1.0 - p) * (1.0 / draws as f64 + 1.0 / oracle_n as f64)).sqrt();
    let z = (rate - p) / sigma;
    let ok = exact && round_trip <= 1e-12 && z.abs() < 4.0;
    (
        ok,
        format!(
            "Gram exact: {exact}; round-trip error {round_trip:.1e}; acceptance {rate:.5} vs oracle {p:.5} ({z:+.2} sigma)"
        ),
    )
}

fn render(rec: ExperimentRecord) -> String {
    format!("{}{}", rows_csv(&rec), summary_csv(&rec))
}

fn determinism() -> (bool, String) {
    let runs: Vec<(&str, Rendered)> = vec![
        (
            "monotonicity",
            Box::new(|t| {
                let mut cfg = MonotonicityConfig::new(fig2c(), "fig2c", 200, 11);
                cfg.threads = t;
                render(run_monotonicity(&cfg).unwrap())
            }),
        ),
        (
            "xstate",
            Box::new(|t| {
                let mut cfg = XStateConfig::new(100, 12);
                cfg.threads = t;
                render(run_xstate_comparison(&cfg).unwrap())
            }),
        ),
        (
            "continuity",
            Box::new(|t| {
                let mut cfg = ContinuityConfig::new(2, 3, 40, vec![1e-3, 1e-4], 13);
                cfg.threads = t;
                render(run_continuity_check(&cfg).unwrap())
            }),
        ),
        (
            "classify-sweep",
            Box::new(|t| {
                let mut cfg = ClassificationConfig::new(2, 3, 20, 14);
                cfg.threads = t;
                render(run_channel_classification(&cfg).unwrap())
            }),
        ),
    ];
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, run) in &runs {
        let first = run(1);
        let same = first == run(1) && first == run(threads().max(2));
        ok &= same;
        parts.push(format!(
            "{name}: {}",
            if same { "identical" } else { "DIFFERS" }
        ));
    }
    (ok, parts.join(", "))
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 8] = [
        ("1 monotonicity of the three qubit channels", monotonicity),
        ("2 X-state optimized vs diagonal discord", xstate),
        ("3 qubit mixed-unitary commuting condition", qubit_condition),
        (
            "4 isotropic channels commute with dephasing",
            isotropic_commute,
        ),
        ("5 continuity bounds", continuity),
        ("6 identity suite", identity_suite),
        ("7 X-state geometry and sampler", geometry),
        ("8 determinism of CSV output", determinism),
    ];
    let mut failed = Vec::new();
    for (name, check) in criteria {
        let start = Instant::now();
        let (ok, detail) = check();
        let verdict = if ok { "PASS" } else { "FAIL" };
        println!(
            "[{verdict}] {name} ({:.1}s): {detail}",
            start.elapsed().as_secs_f64()
        );
        if !ok {
            failed.push(name);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
