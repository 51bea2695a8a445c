use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;

use daqc_core::noise::{NoiseConfig, Protocol};

/// Everything needed to regenerate a CSV bit for bit.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub version: &'static str,
    pub seed: u64,
    pub timestamp_unix: u64,
    pub protocols: Vec<Protocol>,
    pub qubits: Vec<usize>,
    pub shots: usize,
    pub betas: Vec<f64>,
    pub error_scales: Vec<f64>,
    pub noise: NoiseConfig,
}

impl RunManifest {
    pub fn new(command: &str, noise: &NoiseConfig) -> Self {
        Self {
            command: command.to_string(),
            version: env!("CARGO_PKG_VERSION"),
            seed: noise.seed,
            timestamp_unix: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
            protocols: Vec::new(),
            qubits: Vec::new(),
            shots: 0,
            betas: Vec::new(),
            error_scales: Vec::new(),
            noise: noise.clone(),
        }
    }
}

/// `out.csv` -> `out.manifest.json`.
pub fn manifest_path(csv: &Path) -> PathBuf {
    csv.with_extension("manifest.json")
}
