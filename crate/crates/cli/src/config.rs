use std::fs;
use std::path::{Path, PathBuf};

use twirl_core::nmr::ensemble::DEFAULT_GRADIENT_PHASES;
use twirl_core::nmr::experiments::DEFAULT_GRAD_K;
use twirl_core::nmr::system::SpinSystemParams;
use twirl_core::rotations::set::DEFAULT_SEED;
use twirl_core::rotations::{RotationSetSpec, Sampling};

use crate::error::{CliError, CliResult};

/// Settings shared by every subcommand, resolved from the global flags.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub params: SpinSystemParams,
    pub out: PathBuf,
    /// Set only when `--seed` was given.
    pub seed: Option<u64>,
    pub gradient_phase_count: usize,
    pub grad_k: f64,
}

impl RunConfig {
    pub fn resolve(
        config: Option<&Path>,
        out: PathBuf,
        seed: Option<u64>,
        ng: Option<usize>,
        grad_k: Option<f64>,
    ) -> CliResult<Self> {
        let params = match config {
            Some(path) => {
                let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
                text.parse::<SpinSystemParams>()
                    .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?
            }
            None => SpinSystemParams::default(),
        };
        let gradient_phase_count = ng.unwrap_or(DEFAULT_GRADIENT_PHASES);
        if gradient_phase_count == 0 {
            return Err(CliError::Usage("--ng must be at least 1".into()));
        }
        let grad_k = grad_k.unwrap_or(DEFAULT_GRAD_K);
        if !(grad_k >= 0.0 && grad_k.is_finite()) {
            return Err(CliError::Usage("--grad-k must be a non-negative number".into()));
        }
        Ok(Self { params, out, seed, gradient_phase_count, grad_k })
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(DEFAULT_SEED)
    }

    /// Parses a rotation-set spec; `--seed` replaces the seed of a
    /// Monte Carlo spec.
    pub fn rotation_set(&self, text: &str) -> CliResult<RotationSetSpec> {
        let mut spec: RotationSetSpec = text.parse()?;
        if let (Sampling::MonteCarlo { n, .. }, Some(seed)) = (spec.sampling, self.seed) {
            spec.sampling = Sampling::MonteCarlo { n, seed };
        }
        Ok(spec)
    }

    pub fn output_dir(&self) -> CliResult<&Path> {
        fs::create_dir_all(&self.out).map_err(|e| CliError::io(&self.out, e))?;
        Ok(&self.out)
    }
}

pub fn write_file(dir: &Path, name: &str, contents: &str) -> CliResult<PathBuf> {
    let path = dir.join(name);
    fs::write(&path, contents).map_err(|e| CliError::io(&path, e))?;
    Ok(path)
}

pub fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}
