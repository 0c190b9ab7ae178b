use std::fs;
use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use twirl_core::nmr::acquisition::{acquire, spectrum, DEFAULT_POINTS};
use twirl_core::nmr::ensemble::{execute, EnsembleState};
use twirl_core::nmr::experiments::{
    run_experiment1, run_experiment2, Experiment1Config, Experiment2Config,
};
use twirl_core::nmr::sequence::parse_sequence;
use twirl_core::quantum::{
    bell_diagonal_populations, bell_state, is_werner, product_operator_decomposition, random_state,
    singlet_fidelity, werner, werner_residual, BellKind, BellPopulations, TwoQubit, WernerParams,
};
use twirl_core::twirl::{average, bloch_shrink, classify_with_tolerance, default_tolerance, Mode};

use crate::config::{to_json, write_file, RunConfig};
use crate::error::{CliError, CliResult};

pub fn classify(cfg: &RunConfig, spec: &str, tolerance: Option<f64>, json: bool) -> CliResult<String> {
    let spec = cfg.rotation_set(spec)?;
    let report = classify_with_tolerance(&spec, tolerance.unwrap_or_else(|| default_tolerance(&spec)))?;
    Ok(if json { to_json(&report) } else { report.to_key_value() })
}

pub fn shrink(cfg: &RunConfig, spec: &str) -> CliResult<String> {
    let spec = cfg.rotation_set(spec)?;
    let s = bloch_shrink(&spec)?;
    Ok(format!("{} {} {}\n", s[0], s[1], s[2]))
}

/// Input state of the `twirl` demo: `random`, `werner:EPS` or
/// `bell:psi-|psi+|phi-|phi+`.
fn demo_state(cfg: &RunConfig, text: &str) -> CliResult<TwoQubit> {
    let bad = || CliError::Usage(format!("unknown state '{text}' (random, werner:EPS or bell:NAME)"));
    match text.split_once(':') {
        None if text == "random" => Ok(random_state(&mut ChaCha8Rng::seed_from_u64(cfg.seed()))),
        Some(("werner", eps)) => {
            let eps: f64 = eps.parse().map_err(|_| bad())?;
            Ok(werner(WernerParams::new(eps)?))
        }
        Some(("bell", name)) => {
            let kind = match name {
                "psi-" => BellKind::PsiMinus,
                "psi+" => BellKind::PsiPlus,
                "phi-" => BellKind::PhiMinus,
                "phi+" => BellKind::PhiPlus,
                _ => return Err(bad()),
            };
            Ok(TwoQubit::pure(&bell_state(kind)))
        }
        _ => Err(bad()),
    }
}

#[derive(Serialize)]
struct StateSummary {
    singlet_fidelity: f64,
    bell_populations: BellPopulations,
    werner_residual: f64,
}

impl StateSummary {
    fn of(rho: &TwoQubit) -> Self {
        Self {
            singlet_fidelity: singlet_fidelity(rho),
            bell_populations: bell_diagonal_populations(rho),
            werner_residual: werner_residual(rho),
        }
    }
}

#[derive(Serialize)]
struct TwirlDemo {
    spec: String,
    state: String,
    input: StateSummary,
    output: StateSummary,
    /// Werner parameter of the output, when it is a Werner state to 1e-9.
    werner_epsilon: Option<f64>,
}

pub fn twirl(cfg: &RunConfig, spec: &str, state: &str) -> CliResult<String> {
    let set = cfg.rotation_set(spec)?;
    let rho = demo_state(cfg, state)?;
    let out = average(&rho, &set, Mode::Bilateral)?;
    let demo = TwirlDemo {
        spec: set.to_string(),
        state: state.to_string(),
        input: StateSummary::of(&rho),
        output: StateSummary::of(&out),
        werner_epsilon: is_werner(&out, 1e-9).map(|p| p.epsilon()),
    };
    Ok(to_json(&demo))
}

#[derive(Serialize)]
struct Decomposition<'a> {
    program: &'a str,
    gradient_phase_count: usize,
    ensemble_members: usize,
    coefficients: twirl_core::quantum::ProductOperatorCoefficients,
}

/// Runs a pulse program on the thermal state. Writes the final-state
/// decomposition and, when the program acquires, the spectrum.
pub fn run(cfg: &RunConfig, program: &Path, line_broadening: f64) -> CliResult<Vec<String>> {
    let text = fs::read_to_string(program).map_err(|e| CliError::io(program, e))?;
    let sequence = parse_sequence(&text).map_err(|e| CliError::Usage(format!("{}: {e}", program.display())))?;
    let thermal = EnsembleState::thermal(cfg.gradient_phase_count)?;
    let (state, acquisition) = execute(&thermal, &cfg.params, &sequence)?;
    for w in state.warnings() {
        eprintln!("warning: {w}");
    }
    let dir = cfg.output_dir()?;
    let mut written = Vec::new();
    let decomposition = Decomposition {
        program: &program.to_string_lossy(),
        gradient_phase_count: cfg.gradient_phase_count,
        ensemble_members: state.len(),
        coefficients: product_operator_decomposition(&state.mean()),
    };
    written.push(write_file(dir, "decomposition.json", &to_json(&decomposition))?);
    if let Some((points, dwell)) = acquisition {
        let spec = spectrum(&acquire(&state, &cfg.params, points, dwell)?, line_broadening);
        written.push(write_file(dir, "spectrum.csv", &spec.to_csv())?);
    }
    Ok(written.iter().map(|p| p.display().to_string()).collect())
}

#[derive(Serialize)]
struct Experiment1Metrics<'a> {
    config: &'a Experiment1Config,
    prepared_singlet_coefficient: f64,
    stages: Vec<&'a twirl_core::nmr::experiments::StageMetrics>,
    /// Stage 3 is a Werner state to 1e-9.
    final_state_is_werner: bool,
}

pub fn experiment1(cfg: &RunConfig, tau: Option<f64>, points: Option<usize>) -> CliResult<Vec<String>> {
    let mut config = Experiment1Config::new(cfg.params).with_grad_k(cfg.grad_k);
    config.gradient_phase_count = cfg.gradient_phase_count;
    if let Some(tau) = tau {
        config.tau = tau;
    }
    config.acquisition.points = points.unwrap_or(DEFAULT_POINTS);
    let result = run_experiment1(&config)?;
    let dir = cfg.output_dir()?;
    let mut written = Vec::new();
    for stage in &result.stages {
        for w in &stage.metrics.warnings {
            eprintln!("warning: stage {}: {w}", stage.metrics.stage);
        }
        let k = stage.metrics.stage;
        written.push(write_file(dir, &format!("stage{k}_direct.csv"), &stage.direct.to_csv())?);
        written.push(write_file(dir, &format!("stage{k}_detected.csv"), &stage.detected.to_csv())?);
    }
    let metrics = Experiment1Metrics {
        config: &config,
        prepared_singlet_coefficient: singlet_fidelity(&result.prepared),
        stages: result.metrics(),
        final_state_is_werner: result.stages[3].metrics.werner_residual <= 1e-9,
    };
    written.push(write_file(dir, "metrics.json", &to_json(&metrics))?);
    Ok(written.iter().map(|p| p.display().to_string()).collect())
}

#[derive(Serialize)]
struct Experiment2Summary<'a> {
    config: &'a Experiment2Config,
    fit: twirl_core::nmr::experiments::SineFit,
    proportionality: f64,
    max_relative_error: f64,
}

pub fn experiment2(
    cfg: &RunConfig,
    tau0: Option<f64>,
    dtau: Option<f64>,
    steps: Option<usize>,
) -> CliResult<Vec<String>> {
    let mut config = Experiment2Config::new(cfg.params).with_grad_k(cfg.grad_k);
    config.gradient_phase_count = cfg.gradient_phase_count;
    if let Some(t) = tau0 {
        config.tau0 = t;
    }
    if let Some(d) = dtau {
        config.dtau = d;
    }
    if let Some(n) = steps {
        config.n_steps = n;
    }
    let result = run_experiment2(&config)?;
    for w in &result.warnings {
        eprintln!("warning: {w}");
    }
    let dir = cfg.output_dir()?;
    let mut csv = String::from("step,tau_s,integral,formula\n");
    for p in &result.points {
        csv.push_str(&format!("{},{},{},{}\n", p.step, p.tau, p.integral, p.formula));
    }
    let summary = Experiment2Summary {
        config: &config,
        fit: result.fit,
        proportionality: result.proportionality,
        max_relative_error: result.max_relative_error,
    };
    let written = [
        write_file(dir, "experiment2_integrals.csv", &csv)?,
        write_file(dir, "experiment2_fit.json", &to_json(&summary))?,
    ];
    Ok(written.iter().map(|p| p.display().to_string()).collect())
}
