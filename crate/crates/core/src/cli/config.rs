//! Run configurations: JSON text, strict schema, validated on load.
//!
//! ```json
//! {
//!   "task": "aa_phase",
//!   "dimension": 2,
//!   "generator": {
//!     "preset": "spin_half_rotating_field",
//!     "params": { "B": 1.0, "theta_c": 1.0471975511965976, "omega": 1.0 }
//!   },
//!   "time": { "steps": 4000 },
//!   "tolerances": { "cyclic_tol": 1e-6 },
//!   "output": { "report_path": "report.json", "samples_path": "samples.csv" }
//! }
//! ```
//!
//! A generator is exactly one of `preset` (+ `params`), `matrix` (rows of
//! `[re, im]` pairs) or `matrix_file` (a JSON file holding such a matrix,
//! resolved relative to the config file). States are lists of `[re, im]` pairs.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use num_complex::Complex64 as C64;
use serde::Deserialize;

use crate::evolution::{GeneratorSpec, CYCLIC_TOL};
use crate::matrix::ComplexMatrix;
use crate::presets::{
    build_preset, spin_half_from_params, SpinHalfRotatingField, SPIN_HALF_ROTATING_FIELD,
};
use crate::state::{StateVector, ORTHOGONALITY_TOL};

pub const DEFAULT_SAMPLES: usize = 2000;
pub const DEFAULT_TRIALS: usize = 100;
pub const DEFAULT_REFINEMENT: usize = 64;
pub const DEFAULT_BOUNDARY_SAMPLES: usize = 4097;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Task {
    AaPhase,
    Pancharatnam,
    GeodesicTable,
    StokesCheck,
    GaugeAudit,
}

impl Task {
    pub fn as_str(&self) -> &'static str {
        match self {
            Task::AaPhase => "aa_phase",
            Task::Pancharatnam => "pancharatnam",
            Task::GeodesicTable => "geodesic_table",
            Task::StokesCheck => "stokes_check",
            Task::GaugeAudit => "gauge_audit",
        }
    }
}

pub type ComplexPair = [f64; 2];

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorConfig {
    #[serde(default)]
    pub preset: Option<String>,
    #[serde(default)]
    pub params: Option<BTreeMap<String, f64>>,
    #[serde(default)]
    pub matrix: Option<Vec<Vec<ComplexPair>>>,
    #[serde(default)]
    pub matrix_file: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimeConfig {
    /// Defaults to one period for periodic presets.
    #[serde(default)]
    pub t_final: Option<f64>,
    pub steps: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    #[serde(default = "default_cyclic_tol")]
    pub cyclic_tol: f64,
    #[serde(default = "default_orthogonality_tol")]
    pub orthogonality_tol: f64,
}

fn default_cyclic_tol() -> f64 {
    CYCLIC_TOL
}

fn default_orthogonality_tol() -> f64 {
    ORTHOGONALITY_TOL
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            cyclic_tol: CYCLIC_TOL,
            orthogonality_tol: ORTHOGONALITY_TOL,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    #[serde(default)]
    pub report_path: Option<PathBuf>,
    #[serde(default)]
    pub samples_path: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PatchShape {
    Octant,
    Hemisphere,
    Cap,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PatchConfig {
    pub shape: PatchShape,
    #[serde(default = "default_refinement")]
    pub refinement: usize,
    /// Polar angle of the cap boundary; only for `cap`.
    #[serde(default)]
    pub theta_max: Option<f64>,
    #[serde(default = "default_boundary_samples")]
    pub boundary_samples: usize,
}

fn default_refinement() -> usize {
    DEFAULT_REFINEMENT
}

fn default_boundary_samples() -> usize {
    DEFAULT_BOUNDARY_SAMPLES
}

/// A parsed and validated run configuration.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub task: Task,
    pub dimension: usize,
    #[serde(default)]
    pub generator: Option<GeneratorConfig>,
    #[serde(default)]
    pub initial_state: Option<Vec<ComplexPair>>,
    /// Endpoint states for `pancharatnam` and `geodesic_table`.
    #[serde(default)]
    pub states: Option<Vec<Vec<ComplexPair>>>,
    #[serde(default)]
    pub time: Option<TimeConfig>,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default)]
    pub output: OutputConfig,
    #[serde(default)]
    pub seed: u64,
    /// Grid size along geodesics and audit loops.
    #[serde(default)]
    pub samples: Option<usize>,
    #[serde(default)]
    pub patch: Option<PatchConfig>,
    /// Number of random gauges for `gauge_audit`.
    #[serde(default)]
    pub trials: Option<usize>,
    /// Directory of the config file; relative paths resolve against it.
    #[serde(skip)]
    pub base_dir: PathBuf,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ConfigError {
    Io {
        path: PathBuf,
        message: String,
    },
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    Invalid {
        field: String,
        constraint: String,
    },
}

impl ConfigError {
    fn invalid(field: &str, constraint: impl Into<String>) -> Self {
        ConfigError::Invalid {
            field: field.to_string(),
            constraint: constraint.into(),
        }
    }
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigError::Io { path, message } => {
                write!(f, "cannot read {}: {message}", path.display())
            }
            ConfigError::Parse {
                line,
                column,
                message,
            } => write!(f, "parse error at line {line}, column {column}: {message}"),
            ConfigError::Invalid { field, constraint } => {
                write!(f, "invalid field `{field}`: {constraint}")
            }
        }
    }
}

impl std::error::Error for ConfigError {}

fn parse_error(e: serde_json::Error) -> ConfigError {
    ConfigError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

/// Read, parse and validate a config file.
pub fn load_config(path: &Path) -> Result<RunConfig, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;
    let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
    parse_config(&text, &base)
}

/// Parse and validate config text; relative paths resolve against `base_dir`.
pub fn parse_config(text: &str, base_dir: &Path) -> Result<RunConfig, ConfigError> {
    let mut cfg: RunConfig = serde_json::from_str(text).map_err(parse_error)?;
    cfg.base_dir = base_dir.to_path_buf();
    cfg.validate()?;
    Ok(cfg)
}

fn to_state(field: &str, pairs: &[ComplexPair], dim: usize) -> Result<StateVector, ConfigError> {
    if pairs.len() != dim {
        return Err(ConfigError::invalid(
            field,
            format!(
                "dimension mismatch: {} components, dimension is {dim}",
                pairs.len()
            ),
        ));
    }
    StateVector::new(pairs.iter().map(|p| C64::new(p[0], p[1])).collect())
        .map_err(|e| ConfigError::invalid(field, e.to_string()))
}

fn to_matrix(
    field: &str,
    rows: &[Vec<ComplexPair>],
    dim: usize,
) -> Result<ComplexMatrix, ConfigError> {
    if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
        return Err(ConfigError::invalid(
            field,
            format!("dimension mismatch: matrix must be {dim}×{dim}"),
        ));
    }
    let m = ComplexMatrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|p| C64::new(p[0], p[1])).collect())
            .collect(),
    )
    .map_err(|e| ConfigError::invalid(field, e.to_string()))?;
    if !m.is_finite() {
        return Err(ConfigError::invalid(field, "entries must be finite"));
    }
    Ok(m)
}

impl RunConfig {
    fn require_generator(&self) -> Result<&GeneratorConfig, ConfigError> {
        self.generator.as_ref().ok_or_else(|| {
            ConfigError::invalid(
                "generator",
                format!("required for task {}", self.task.as_str()),
            )
        })
    }

    /// Check every schema constraint that is not expressed by the types.
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.dimension < 2 {
            return Err(ConfigError::invalid("dimension", "dimension ≥ 2"));
        }
        let t = &self.tolerances;
        if !(t.cyclic_tol.is_finite() && t.cyclic_tol > 0.0) {
            return Err(ConfigError::invalid(
                "tolerances.cyclic_tol",
                "must be finite and > 0",
            ));
        }
        if !(t.orthogonality_tol.is_finite() && t.orthogonality_tol >= 0.0) {
            return Err(ConfigError::invalid(
                "tolerances.orthogonality_tol",
                "must be finite and ≥ 0",
            ));
        }
        if let Some(time) = &self.time {
            if time.steps < 2 {
                return Err(ConfigError::invalid("time.steps", "steps ≥ 2"));
            }
            if let Some(tf) = time.t_final {
                if !(tf.is_finite() && tf > 0.0) {
                    return Err(ConfigError::invalid("time.t_final", "t_final > 0"));
                }
            }
        }
        if self.generator.is_some() {
            self.generator_spec()?;
        }
        if self.initial_state.is_some() {
            self.initial_state_vector()?;
        }
        if let Some(states) = &self.states {
            for (i, s) in states.iter().enumerate() {
                to_state(&format!("states[{i}]"), s, self.dimension)?;
            }
        }
        match self.task {
            Task::AaPhase => {
                self.require_generator()?;
                if self.time.is_none() {
                    return Err(ConfigError::invalid("time", "required for task aa_phase"));
                }
                self.resolved_initial_state()?;
                self.resolved_t_final()?;
            }
            Task::Pancharatnam | Task::GeodesicTable => {
                let n = self.states.as_ref().map_or(0, Vec::len);
                if n != 2 {
                    return Err(ConfigError::invalid(
                        "states",
                        format!("exactly 2 states required, got {n}"),
                    ));
                }
                let min = if self.task == Task::Pancharatnam {
                    64
                } else {
                    2
                };
                if self.sample_count() < min {
                    return Err(ConfigError::invalid("samples", format!("samples ≥ {min}")));
                }
            }
            Task::StokesCheck => {
                if self.dimension != 2 {
                    return Err(ConfigError::invalid(
                        "dimension",
                        "stokes_check runs on the Bloch sphere: dimension = 2",
                    ));
                }
                let patch = self.patch.as_ref().ok_or_else(|| {
                    ConfigError::invalid("patch", "required for task stokes_check")
                })?;
                if patch.refinement < 1 {
                    return Err(ConfigError::invalid("patch.refinement", "refinement ≥ 1"));
                }
                if patch.boundary_samples < 16 {
                    return Err(ConfigError::invalid(
                        "patch.boundary_samples",
                        "boundary_samples ≥ 16",
                    ));
                }
                match (patch.shape, patch.theta_max) {
                    (PatchShape::Cap, Some(th)) if th > 0.0 && th < std::f64::consts::PI => {}
                    (PatchShape::Cap, _) => {
                        return Err(ConfigError::invalid(
                            "patch.theta_max",
                            "cap needs 0 < theta_max < π",
                        ))
                    }
                    (_, Some(_)) => {
                        return Err(ConfigError::invalid(
                            "patch.theta_max",
                            "only allowed for shape cap",
                        ))
                    }
                    _ => {}
                }
            }
            Task::GaugeAudit => {
                if self.trial_count() < 1 {
                    return Err(ConfigError::invalid("trials", "trials ≥ 1"));
                }
                if self.sample_count() < 64 {
                    return Err(ConfigError::invalid("samples", "samples ≥ 64"));
                }
                if self.generator.is_some() {
                    if self.time.is_none() {
                        return Err(ConfigError::invalid(
                            "time",
                            "required when gauge_audit uses a generator",
                        ));
                    }
                    self.resolved_initial_state()?;
                    self.resolved_t_final()?;
                } else if self.dimension != 2 {
                    return Err(ConfigError::invalid(
                        "dimension",
                        "gauge_audit without a generator uses a Bloch-sphere loop: dimension = 2",
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn sample_count(&self) -> usize {
        self.samples.unwrap_or(DEFAULT_SAMPLES)
    }

    pub fn trial_count(&self) -> usize {
        self.trials.unwrap_or(DEFAULT_TRIALS)
    }

    fn spin_preset(&self) -> Option<SpinHalfRotatingField> {
        let g = self.generator.as_ref()?;
        if g.preset.as_deref() != Some(SPIN_HALF_ROTATING_FIELD) {
            return None;
        }
        spin_half_from_params(g.params.as_ref()?).ok()
    }

    /// Resolve the generator source into a [`GeneratorSpec`].
    pub fn generator_spec(&self) -> Result<GeneratorSpec, ConfigError> {
        let g = self.require_generator()?;
        let sources = [
            g.preset.is_some(),
            g.matrix.is_some(),
            g.matrix_file.is_some(),
        ]
        .iter()
        .filter(|&&b| b)
        .count();
        if sources != 1 {
            return Err(ConfigError::invalid(
                "generator",
                "exactly one of preset, matrix, matrix_file is required",
            ));
        }
        if g.params.is_some() && g.preset.is_none() {
            return Err(ConfigError::invalid(
                "generator.params",
                "only allowed with a preset",
            ));
        }
        if let Some(name) = &g.preset {
            let empty = BTreeMap::new();
            let spec = build_preset(name, g.params.as_ref().unwrap_or(&empty))
                .map_err(|e| ConfigError::invalid("generator.preset", e.to_string()))?;
            if spec.dimension() != self.dimension {
                return Err(ConfigError::invalid(
                    "generator.preset",
                    format!(
                        "dimension mismatch: preset is {}-dimensional",
                        spec.dimension()
                    ),
                ));
            }
            return Ok(spec);
        }
        let matrix = if let Some(rows) = &g.matrix {
            to_matrix("generator.matrix", rows, self.dimension)?
        } else {
            let rel = g.matrix_file.as_ref().unwrap();
            let path = self.base_dir.join(rel);
            let text = std::fs::read_to_string(&path).map_err(|e| {
                ConfigError::invalid(
                    "generator.matrix_file",
                    format!("cannot read {}: {e}", path.display()),
                )
            })?;
            let rows: Vec<Vec<ComplexPair>> = serde_json::from_str(&text)
                .map_err(|e| ConfigError::invalid("generator.matrix_file", e.to_string()))?;
            to_matrix("generator.matrix_file", &rows, self.dimension)?
        };
        Ok(GeneratorSpec::constant(matrix))
    }

    pub fn initial_state_vector(&self) -> Result<StateVector, ConfigError> {
        let pairs = self
            .initial_state
            .as_ref()
            .ok_or_else(|| ConfigError::invalid("initial_state", "missing"))?;
        to_state("initial_state", pairs, self.dimension)
    }

    /// The configured initial state, or the adapted state of the rotating-field preset.
    pub fn resolved_initial_state(&self) -> Result<StateVector, ConfigError> {
        if self.initial_state.is_some() {
            return self.initial_state_vector();
        }
        self.spin_preset()
            .map(|p| p.adapted_state())
            .ok_or_else(|| {
                ConfigError::invalid(
                    "initial_state",
                    "required unless the generator is the spin_half_rotating_field preset",
                )
            })
    }

    /// The configured `t_final`, or one period of the rotating-field preset.
    pub fn resolved_t_final(&self) -> Result<f64, ConfigError> {
        if let Some(tf) = self.time.as_ref().and_then(|t| t.t_final) {
            return Ok(tf);
        }
        self.spin_preset().map(|p| p.period()).ok_or_else(|| {
            ConfigError::invalid(
                "time.t_final",
                "required unless the generator is the spin_half_rotating_field preset",
            )
        })
    }

    pub fn endpoint_states(&self) -> Result<(StateVector, StateVector), ConfigError> {
        let states = self
            .states
            .as_ref()
            .ok_or_else(|| ConfigError::invalid("states", "missing"))?;
        if states.len() != 2 {
            return Err(ConfigError::invalid("states", "exactly 2 states required"));
        }
        Ok((
            to_state("states[0]", &states[0], self.dimension)?,
            to_state("states[1]", &states[1], self.dimension)?,
        ))
    }
}
