//! Scenario configuration. One JSON file fully describes a run: what to
//! check, the region source, the comparison disk, and every tolerance.
//! Parsing is strict: unknown keys are rejected with the path to the
//! offending key, and a region may come from a file or a named fixture but
//! not both.
//!
//! Defaults: dt = 0.01, t_end = 10, n = 512, h = 0.005, samples = 10^6,
//! seed = 42. Remeshing is off unless a spacing band is given.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use vortexpatch_core::geometry::{
    ellipse_ngon, perturbed_circle_ngon, regular_ngon, square_region,
};
use vortexpatch_core::{Disk, PatchRegion, Point};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Moments,
    Lemma1,
    Lemma2,
    Prelim,
    Bound,
    Evolve,
    Verify,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Moments => "moments",
            Kind::Lemma1 => "lemma1",
            Kind::Lemma2 => "lemma2",
            Kind::Prelim => "prelim",
            Kind::Bound => "bound",
            Kind::Evolve => "evolve",
            Kind::Verify => "verify",
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub kind: Kind,
    pub region: RegionSource,
    #[serde(default)]
    pub disk: DiskConfig,
    #[serde(default)]
    pub evolution: EvolutionConfig,
    #[serde(default)]
    pub oracle: OracleConfig,
    #[serde(default)]
    pub tolerances: ToleranceConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out_dir: Option<PathBuf>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegionSource {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub file: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fixture: Option<Fixture>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Fixture {
    Circle(CircleFixture),
    Ellipse(EllipseFixture),
    Square(SquareFixture),
    EqualityCase(EqualityCaseFixture),
    PerturbedCircle(PerturbedCircleFixture),
}

fn default_n() -> usize {
    512
}
fn default_r() -> f64 {
    1.0
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CircleFixture {
    #[serde(default = "default_n")]
    pub n: usize,
    #[serde(default = "default_r")]
    pub r: f64,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EllipseFixture {
    #[serde(default = "default_n")]
    pub n: usize,
    pub a: f64,
    pub b: f64,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SquareFixture {
    pub s: f64,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EqualityCaseFixture {
    #[serde(default = "default_r")]
    pub r: f64,
    pub a: f64,
    #[serde(default = "default_n")]
    pub n: usize,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PerturbedCircleFixture {
    #[serde(default = "default_n")]
    pub n: usize,
    #[serde(default = "default_r")]
    pub r: f64,
    pub k: u32,
    pub eps: f64,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiskConfig {
    #[serde(default = "default_r")]
    pub r: f64,
    #[serde(default)]
    pub x0: [f64; 2],
}

impl Default for DiskConfig {
    fn default() -> Self {
        DiskConfig {
            r: 1.0,
            x0: [0.0, 0.0],
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EvolutionConfig {
    #[serde(default = "default_dt")]
    pub dt: f64,
    #[serde(default = "default_t_end")]
    pub t_end: f64,
    /// Remesh band; leave both unset to evolve the initial marker set
    /// untouched.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s_min: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s_max: Option<f64>,
    #[serde(default = "default_stride")]
    pub output_stride: usize,
    /// Region snapshots every this many emitted samples; 0 disables.
    #[serde(default)]
    pub snapshot_stride: usize,
    #[serde(default = "default_conservation_tol")]
    pub conservation_tol: f64,
}

fn default_dt() -> f64 {
    0.01
}
fn default_t_end() -> f64 {
    10.0
}
fn default_stride() -> usize {
    10
}
fn default_conservation_tol() -> f64 {
    1e-4
}

impl Default for EvolutionConfig {
    fn default() -> Self {
        EvolutionConfig {
            dt: default_dt(),
            t_end: default_t_end(),
            s_min: None,
            s_max: None,
            output_stride: default_stride(),
            snapshot_stride: 0,
            conservation_tol: default_conservation_tol(),
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleConfig {
    #[serde(default = "default_h")]
    pub h: f64,
    #[serde(default = "default_samples")]
    pub samples: u64,
    #[serde(default = "default_seed")]
    pub seed: u64,
}

fn default_h() -> f64 {
    0.005
}
fn default_samples() -> u64 {
    1_000_000
}
fn default_seed() -> u64 {
    42
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            h: default_h(),
            samples: default_samples(),
            seed: default_seed(),
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToleranceConfig {
    /// Relative slack granted to exact inequalities against rounding.
    #[serde(default = "default_ineq_slack")]
    pub ineq_slack: f64,
    /// Monte Carlo agreement window, in standard errors.
    #[serde(default = "default_mc_sigmas")]
    pub mc_sigmas: f64,
    /// Multiplier on the first-order h * perimeter error envelope of the
    /// grid oracles.
    #[serde(default = "default_oracle_factor")]
    pub oracle_factor: f64,
}

fn default_ineq_slack() -> f64 {
    1e-9
}
fn default_mc_sigmas() -> f64 {
    4.0
}
fn default_oracle_factor() -> f64 {
    4.0
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        ToleranceConfig {
            ineq_slack: default_ineq_slack(),
            mc_sigmas: default_mc_sigmas(),
            oracle_factor: default_oracle_factor(),
        }
    }
}

/// Strict parse with the JSON path of the offending key on failure.
pub fn parse_config(text: &str) -> Result<ScenarioConfig, CliError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let config: ScenarioConfig = serde_path_to_error::deserialize(de)
        .map_err(|e| CliError::Parse(format!("config error at `{}`: {}", e.path(), e.inner())))?;
    match (&config.region.file, &config.region.fixture) {
        (Some(_), Some(_)) => Err(CliError::Parse(
            "config error at `region`: both `file` and `fixture` given (ambiguous)".into(),
        )),
        (None, None) => Err(CliError::Parse(
            "config error at `region`: one of `file` or `fixture` is required".into(),
        )),
        _ => Ok(config),
    }
}

impl ScenarioConfig {
    pub fn build_region(&self) -> Result<PatchRegion, CliError> {
        if let Some(path) = &self.region.file {
            let text = std::fs::read_to_string(path).map_err(|e| {
                CliError::Parse(format!("cannot read region file {}: {e}", path.display()))
            })?;
            return PatchRegion::from_json_str(&text).map_err(|e| match e {
                vortexpatch_core::Error::RegionFormat(msg) => {
                    CliError::Parse(format!("region file {}: {msg}", path.display()))
                }
                other => CliError::Validation(other.to_string()),
            });
        }
        let fixture = self.region.fixture.as_ref().expect("validated in parse");
        let built = match fixture {
            Fixture::Circle(f) => {
                regular_ngon(f.n, &core_disk(f.r, [0.0, 0.0])?, true)
            }
            Fixture::Ellipse(f) => ellipse_ngon(f.n, f.a, f.b, true),
            Fixture::Square(f) => Ok(square_region(f.s)),
            Fixture::EqualityCase(f) => {
                vortexpatch_core::stability::equality_case_region(f.r, f.a, f.n)
            }
            Fixture::PerturbedCircle(f) => perturbed_circle_ngon(f.n, f.r, f.k, f.eps),
        };
        built.map_err(|e| CliError::Validation(e.to_string()))
    }

    pub fn build_disk(&self) -> Result<Disk, CliError> {
        core_disk(self.disk.r, self.disk.x0)
    }
}

fn core_disk(r: f64, x0: [f64; 2]) -> Result<Disk, CliError> {
    Disk::new(Point::new(x0[0], x0[1]), r).map_err(|e| CliError::Validation(e.to_string()))
}
