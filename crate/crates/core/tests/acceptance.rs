//! Acceptance criteria, run in order with one PASS/FAIL line each.
//! Criteria run sequentially so the timing limits are not skewed by other
//! tests sharing the machine.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use nalgebra::{DMatrix, Vector3};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use twirl_core::nmr::experiments::{
    run_experiment1, run_experiment2, Experiment1Config, Experiment2Config,
};
use twirl_core::nmr::sequence::{parse_sequence, ParseErrorKind};
use twirl_core::nmr::system::SpinSystemParams;
use twirl_core::quantum::linalg::max_abs_diff;
use twirl_core::quantum::{
    bell_state, is_werner, random_state, singlet_fidelity, BellKind, TwoQubit, WernerParams,
};
use twirl_core::rotations::{Axis, RotationSetSpec, Variant};
use twirl_core::twirl::{average, bloch_shrink, superoperator, Mode};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn spec(text: &str) -> RotationSetSpec {
    text.parse().unwrap_or_else(|e| panic!("{text}: {e}"))
}

fn within(elapsed: Duration, limit_s: f64) -> bool {
    elapsed.as_secs_f64() < limit_s
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let s = bloch_shrink(&spec("random-axis:quad:64")).unwrap();
    let elapsed = start.elapsed();
    let ok = s.iter().all(|v| (v - 1.0 / 3.0).abs() <= 1e-3);
    outcome(ok && within(elapsed, 5.0), format!("singular values {s:?}, {elapsed:.2?} (limit 5 s)"))
}

fn criterion_2() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for text in ["euler", "two-axis", "axis120"] {
        let s = bloch_shrink(&spec(text)).unwrap();
        let worst = s.iter().cloned().fold(0.0, f64::max);
        pass &= worst <= 1e-3;
        parts.push(format!("{text} max {worst:.1e}"));
    }
    outcome(pass, parts.join(", "))
}

fn criterion_3() -> Outcome {
    let p4 = RotationSetSpec::pauli4();
    let shrink = bloch_shrink(&p4).unwrap();
    let worst = shrink.iter().cloned().fold(0.0, f64::max);
    let phi_plus = TwoQubit::pure(&bell_state(BellKind::PhiPlus));
    let out = average(&phi_plus, &p4, Mode::Bilateral).unwrap();
    let moved = max_abs_diff(out.matrix(), phi_plus.matrix());
    outcome(
        worst <= 1e-12 && moved <= 1e-12,
        format!("local shrink {worst:.1e}, bilateral change of |Phi+><Phi+| {moved:.1e}"),
    )
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let reference = superoperator(&RotationSetSpec::bennett12(), Mode::Bilateral).unwrap();
    let mut pass = true;
    let mut parts = Vec::new();
    for text in ["discrete27", "discrete18a", "discrete18b"] {
        let d = superoperator(&spec(text), Mode::Bilateral).unwrap().max_abs_diff(&reference);
        pass &= d <= 1e-12;
        parts.push(format!("{text} {d:.1e}"));
    }
    let d = superoperator(&spec("euler"), Mode::Bilateral).unwrap().max_abs_diff(&reference);
    pass &= d <= 1e-3;
    parts.push(format!("euler quadrature {d:.1e}"));
    let elapsed = start.elapsed();
    outcome(
        pass && within(elapsed, 10.0),
        format!("max deviation from bennett12: {}; {elapsed:.2?} (limit 10 s)", parts.join(", ")),
    )
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let set = RotationSetSpec::bennett12();
    let (mut failures, mut worst_f, mut worst_eps) = (0usize, 0.0f64, 0.0f64);
    for _ in 0..1000 {
        let rho: TwoQubit = random_state(&mut rng);
        let f = singlet_fidelity(&rho);
        let out = average(&rho, &set, Mode::Bilateral).unwrap();
        worst_f = worst_f.max((singlet_fidelity(&out) - f).abs());
        match is_werner(&out, 1e-9) {
            Some(p) => worst_eps = worst_eps.max((p.epsilon() - WernerParams::epsilon_from_fidelity(f)).abs()),
            None => failures += 1,
        }
    }
    outcome(
        failures == 0 && worst_f <= 1e-12 && worst_eps <= 1e-12,
        format!("non-Werner outputs {failures}/1000, max fidelity drift {worst_f:.1e}, max epsilon error {worst_eps:.1e}"),
    )
}

/// Transfer matrix of the continuous single-qubit average about `n`: the
/// identity component is kept and the Bloch vector is projected onto `n`.
fn axis_average_ptm(n: Vector3<f64>) -> DMatrix<f64> {
    DMatrix::from_fn(4, 4, |r, c| match (r, c) {
        (0, 0) => 1.0,
        (0, _) | (_, 0) => 0.0,
        _ => n[r - 1] * n[c - 1],
    })
}

fn criterion_6() -> Outcome {
    let axes = [
        Vector3::x(),
        Vector3::y(),
        Vector3::z(),
        Vector3::new(1.0, 1.0, 1.0),
        Vector3::new(0.3, -1.2, 0.55),
    ];
    let mut worst = 0.0f64;
    let mut worst_quad = 0.0f64;
    for n in axes {
        let axis = Axis::vector(n).unwrap();
        let n = axis.unit();
        let cyclic = superoperator(&RotationSetSpec::cyclic(3, axis), Mode::Local).unwrap();
        let oracle = axis_average_ptm(n);
        worst = worst.max((cyclic.matrix() - &oracle).amax());
        let quad = superoperator(&RotationSetSpec::new(Variant::AxisSpin(axis)), Mode::Local).unwrap();
        worst_quad = worst_quad.max((quad.matrix() - &oracle).amax());
    }
    // Order 2 agrees on single-qubit operators but not on two-qubit ones:
    // a bilateral π rotation leaves σx⊗σx in place.
    let z = Axis::Cartesian(twirl_core::rotations::Cartesian::Z);
    let c2 = superoperator(&RotationSetSpec::cyclic(2, z), Mode::Bilateral).unwrap();
    let cont = superoperator(&RotationSetSpec::new(Variant::AxisSpin(z)), Mode::Bilateral).unwrap();
    let c2_gap = c2.max_abs_diff(&cont);
    let c3 = superoperator(&RotationSetSpec::cyclic(3, z), Mode::Bilateral).unwrap();
    let c3_gap = c3.max_abs_diff(&cont);
    outcome(
        worst <= 1e-12 && worst_quad <= 1e-12 && c2_gap > 1e-3,
        format!(
            "cyclic(3) vs continuous {worst:.1e} (quadrature route {worst_quad:.1e}); \
             bilateral cyclic(2) gap {c2_gap:.2}, cyclic(3) gap {c3_gap:.2}"
        ),
    )
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let r = run_experiment1(&Experiment1Config::new(SpinSystemParams::default())).unwrap();
    let elapsed = start.elapsed();
    let m = r.metrics();
    let crushed = m[1].relative_direct_power;
    let b2 = m[2].bell_populations;
    let phi_gap = (b2.phi_plus - b2.phi_minus).abs();
    let unequal = (m[2].i_antiphase + m[2].s_antiphase).abs() / m[2].i_antiphase.abs().max(m[2].s_antiphase.abs());
    let werner = m[3].werner_residual;
    let balance = (m[3].i_antiphase + m[3].s_antiphase).abs() / m[3].i_antiphase.abs().max(m[3].s_antiphase.abs());
    let opposite = m[3].i_antiphase * m[3].s_antiphase < 0.0;
    let pass = crushed <= 1e-10
        && phi_gap <= 1e-10
        && unequal > 0.02
        && werner <= 1e-9
        && opposite
        && balance <= 0.02
        && within(elapsed, 30.0);
    outcome(
        pass,
        format!(
            "stage1 power {crushed:.1e}; stage2 |pPhi+ - pPhi-| {phi_gap:.1e}, doublet mismatch {unequal:.2}; \
             stage3 Werner residual {werner:.1e}, doublets {:.4}/{:.4}; {elapsed:.2?} (limit 30 s)",
            m[3].i_antiphase, m[3].s_antiphase
        ),
    )
}

fn criterion_8() -> Outcome {
    let start = Instant::now();
    let config = Experiment2Config::new(SpinSystemParams::default());
    let r = run_experiment2(&config).unwrap();
    let elapsed = start.elapsed();
    let period = r.fit.period_steps;
    let pass = config.n_steps == 30
        && (period - 10.0).abs() <= 0.1
        && r.max_relative_error <= 0.02
        && within(elapsed, 120.0);
    outcome(
        pass,
        format!(
            "period {period:.4} steps, max relative error {:.1e}; {elapsed:.2?} (limit 120 s)",
            r.max_relative_error
        ),
    )
}

fn criterion_9() -> Outcome {
    let p = SpinSystemParams::default();
    let residual = |k: f64| {
        let r = run_experiment1(&Experiment1Config::new(p).with_grad_k(k)).unwrap();
        r.stages[3].metrics.bell_populations.max_off_diagonal
    };
    let (good, bad) = (residual(2.0), residual(2.37));
    outcome(good < 1e-9 && bad > 1e-3, format!("k/delta residual {good:.1e}, (k+0.37)/delta residual {bad:.1e}"))
}

fn criterion_10() -> Outcome {
    let programs = [
        "",
        "pulse I 60 y; delay 0.0693; pulse S 30 y",
        "pulse both 90 x\nacquire 4096 0.000273",
        "# twirl\ngrad 0.002184 ; pulse both 90 x ; grad 0.002184\npulse both magic x\ngrad 0.002184",
        "pulse both 90 45; delay 0.000273; pulse both 90 180; acquire 16 1e-3",
        "pulse S 12.5 -y\n\n   delay 1e-5   # comment\npulse I -30 -x",
    ];
    let mut round_trip_failures = Vec::new();
    for text in programs {
        let first = parse_sequence(text).unwrap();
        let printed = first.to_string();
        let second = parse_sequence(&printed).unwrap();
        if first != second || second.to_string() != printed {
            round_trip_failures.push(text);
        }
    }
    let malformed: [(&str, ParseErrorKind, usize, usize); 9] = [
        ("pulse I 60", ParseErrorKind::MissingArgument { command: "pulse", expected: "phase" }, 1, 11),
        ("pulse Q 60 x", ParseErrorKind::InvalidTarget("Q".into()), 1, 7),
        ("delay -1", ParseErrorKind::Negative("delay"), 1, 7),
        ("delay abc", ParseErrorKind::InvalidNumber("abc".into()), 1, 7),
        ("pulse I 60 z", ParseErrorKind::InvalidPhase("z".into()), 1, 12),
        ("delay 1\nwait 2", ParseErrorKind::UnknownCommand("wait".into()), 2, 1),
        ("grad 0.1 0.2", ParseErrorKind::UnexpectedToken("0.2".into()), 1, 10),
        ("acquire 1 0.001", ParseErrorKind::BadAcquisition, 1, 1),
        ("acquire 8 0.001; delay 1", ParseErrorKind::AcquireNotLast, 1, 1),
    ];
    let mut diagnostic_failures = Vec::new();
    for (text, kind, line, column) in &malformed {
        match parse_sequence(text) {
            Err(e) if e.line == *line && e.column == *column && std::mem::discriminant(&e.kind) == std::mem::discriminant(kind) => {}
            other => diagnostic_failures.push(format!("{text:?} -> {other:?}")),
        }
    }
    outcome(
        round_trip_failures.is_empty() && diagnostic_failures.is_empty(),
        format!(
            "{} programs round-trip, {} malformed inputs located{}",
            programs.len() - round_trip_failures.len(),
            malformed.len() - diagnostic_failures.len(),
            if diagnostic_failures.is_empty() { String::new() } else { format!("; failures: {diagnostic_failures:?}") }
        ),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("Bloch shrink of random-axis rotations is 1/3", criterion_1),
        ("continuous sets average a single qubit", criterion_2),
        ("pauli4 averages one qubit but fixes Phi+", criterion_3),
        ("discrete twirls match bennett12", criterion_4),
        ("twirl of 1000 random states", criterion_5),
        ("cyclic(3) equals the continuous axis average", criterion_6),
        ("experiment 1 stage ladder", criterion_7),
        ("experiment 2 modulation", criterion_8),
        ("gradient refocusing", criterion_9),
        ("pulse-program parser", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        if !o.pass {
            failed += 1;
        }
        println!("criterion {:>2} [{}] {name}: {}", i + 1, if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
