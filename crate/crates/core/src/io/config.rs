//! Run configuration read from TOML.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::correction::CorrectionSettings;
use crate::error::{Error, Result};
use crate::horizon::Segment;
use crate::material::{Material, PlaneMode};
use crate::mesh::{read_msh, Mesh};
use crate::model::ModelConfig;
use crate::solver::{Dof, FragmentPolicy, LoadProgram, Schedule};

/// Everything needed to reproduce a run. Missing optional keys take the
/// defaults documented on each field; the snapshot written next to the
/// results lists them all explicitly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// Gmsh file. A relative path is taken relative to the config file.
    pub mesh: PathBuf,
    pub material: MaterialBlock,
    pub model: ModelBlock,
    #[serde(default)]
    pub slots: Vec<Segment>,
    #[serde(default)]
    pub boundary: Vec<BoundaryBlock>,
    #[serde(default)]
    pub loads: Vec<BoundaryBlock>,
    #[serde(default)]
    pub program: ProgramBlock,
    #[serde(default)]
    pub output: OutputBlock,
    #[serde(default)]
    pub sweep: Option<SweepBlock>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MaterialBlock {
    pub youngs_modulus: f64,
    pub poisson_ratio: f64,
    pub tensile_strength: f64,
    #[serde(default = "one")]
    pub thickness: f64,
    #[serde(default = "plane_stress")]
    pub plane: PlaneMode,
}

fn one() -> f64 {
    1.0
}

fn plane_stress() -> PlaneMode {
    PlaneMode::Stress
}

impl MaterialBlock {
    pub fn material(&self) -> Material {
        Material {
            youngs_modulus: self.youngs_modulus,
            poisson_ratio: self.poisson_ratio,
            tensile_strength: self.tensile_strength,
            thickness: self.thickness,
            plane: self.plane,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelBlock {
    pub lambda: f64,
    #[serde(default)]
    pub correction: CorrectionSettings,
}

/// A group of mesh nodes with one dof driven by a schedule. In `boundary`
/// the schedule is a displacement, in `loads` a total force shared evenly by
/// the group's nodes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundaryBlock {
    pub group: String,
    pub dof: Dof,
    pub schedule: Schedule,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonitorBlock {
    pub group: String,
    pub dof: Dof,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ProgramBlock {
    pub steps: usize,
    pub batch_size: usize,
    pub tolerance: f64,
    pub max_iterations: usize,
    pub max_break_rounds: usize,
    pub fragment_policy: FragmentPolicy,
    pub stop_below_peak: Option<f64>,
    /// Defaults to the first boundary block.
    pub monitor: Option<MonitorBlock>,
}

impl Default for ProgramBlock {
    fn default() -> Self {
        let p = LoadProgram::new(1);
        ProgramBlock {
            steps: 1,
            batch_size: p.batch_size,
            tolerance: p.tolerance,
            max_iterations: p.max_iterations,
            max_break_rounds: p.max_break_rounds,
            fragment_policy: p.fragment_policy,
            stop_below_peak: None,
            monitor: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FieldFormat {
    #[default]
    Vtk,
    None,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputBlock {
    /// Relative to the working directory. `--out` overrides it.
    pub dir: PathBuf,
    pub fields: FieldFormat,
    /// Write a field file every this many steps; the last step is always
    /// written. Zero writes only the last step.
    pub field_every: usize,
    /// Peak load used to normalize reported peaks, if any.
    pub reference_peak: Option<f64>,
}

impl Default for OutputBlock {
    fn default() -> Self {
        OutputBlock { dir: PathBuf::from("out"), fields: FieldFormat::Vtk, field_every: 0, reference_peak: None }
    }
}

/// λ values to repeat the run over. With `adjust_strength` the tensile
/// strength of the material block is read as the value at `base_lambda` and
/// scaled by `(3 λ_base − 1) / (3 λ − 1)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepBlock {
    pub lambdas: Vec<f64>,
    #[serde(default = "three")]
    pub base_lambda: f64,
    #[serde(default = "yes")]
    pub adjust_strength: bool,
}

fn three() -> f64 {
    3.0
}

fn yes() -> bool {
    true
}

/// Strength ratio `F_t^eq / F_t = (3λ − 1) / 8` of the fitted λ law.
pub fn strength_factor(lambda: f64) -> f64 {
    (3.0 * lambda - 1.0) / 8.0
}

/// Input strength at `lambda` giving the same equivalent strength as
/// `base_strength` at `base_lambda`.
pub fn adjusted_strength(base_strength: f64, base_lambda: f64, lambda: f64) -> f64 {
    base_strength * strength_factor(base_lambda) / strength_factor(lambda)
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<RunConfig> {
        toml::from_str(text).map_err(|e| {
            let line = e.span().map_or(0, |s| text[..s.start].lines().count().max(1));
            Error::Config { field: format!("line {line}"), message: e.message().to_string() }
        })
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn material(&self) -> Material {
        self.material.material()
    }

    pub fn model_config(&self) -> ModelConfig {
        ModelConfig::new(self.material(), self.model.lambda)
    }

    /// Checks every numeric constraint that does not need the mesh.
    pub fn validate(&self) -> Result<()> {
        self.material().validate()?;
        self.model_config().validate()?;
        self.model.correction.validate()?;
        let p = &self.program;
        if p.steps == 0 {
            return Err(Error::config("program.steps", "must be at least 1"));
        }
        if p.batch_size == 0 {
            return Err(Error::config("program.batch_size", "must be at least 1"));
        }
        if !(p.tolerance > 0.0 && p.tolerance.is_finite()) {
            return Err(Error::config("program.tolerance", "must be positive"));
        }
        if p.max_iterations == 0 {
            return Err(Error::config("program.max_iterations", "must be at least 1"));
        }
        if p.max_break_rounds == 0 {
            return Err(Error::config("program.max_break_rounds", "must be at least 1"));
        }
        if let Some(f) = p.stop_below_peak {
            if !(0.0..1.0).contains(&f) {
                return Err(Error::config("program.stop_below_peak", "must lie in [0, 1)"));
            }
        }
        for (i, b) in self.boundary.iter().chain(&self.loads).enumerate() {
            if let Schedule::Table { values } = &b.schedule {
                if values.len() != p.steps {
                    return Err(Error::config(
                        format!("boundary[{i}].schedule.values"),
                        format!("{} values for {} steps", values.len(), p.steps),
                    ));
                }
            }
        }
        if let Some(r) = self.output.reference_peak {
            if !(r > 0.0) {
                return Err(Error::config("output.reference_peak", "must be positive"));
            }
        }
        if let Some(s) = &self.sweep {
            if s.lambdas.is_empty() {
                return Err(Error::config("sweep.lambdas", "must not be empty"));
            }
            for &l in s.lambdas.iter().chain([&s.base_lambda]) {
                if !(l >= 1.0) {
                    return Err(Error::config("sweep.lambdas", format!("λ = {l} is below 1")));
                }
            }
        }
        Ok(())
    }

    /// Checks that every group named by a boundary, load or monitor block
    /// exists in `mesh`.
    pub fn validate_groups(&self, mesh: &Mesh) -> Result<()> {
        let named = self
            .boundary
            .iter()
            .map(|b| ("boundary", &b.group))
            .chain(self.loads.iter().map(|b| ("loads", &b.group)))
            .chain(self.program.monitor.iter().map(|m| ("program.monitor", &m.group)));
        for (field, group) in named {
            if mesh.group(group).is_none() {
                let known: Vec<&str> = mesh.groups().iter().map(|g| g.name.as_str()).collect();
                return Err(Error::config(
                    format!("{field}.group"),
                    format!("unknown physical group `{group}` (mesh has {known:?})"),
                ));
            }
        }
        Ok(())
    }

    /// The monitored group and dof: the explicit one, else the first
    /// boundary block, else the first load block.
    pub fn monitor(&self) -> Option<MonitorBlock> {
        self.program.monitor.clone().or_else(|| {
            self.boundary
                .first()
                .or(self.loads.first())
                .map(|b| MonitorBlock { group: b.group.clone(), dof: b.dof })
        })
    }

    /// Builds the load program over the points of `groups`.
    pub fn load_program(&self, groups: &std::collections::BTreeMap<String, Vec<usize>>) -> Result<LoadProgram> {
        let dofs = |group: &str, dof: Dof| -> Result<Vec<usize>> {
            let points = groups
                .get(group)
                .ok_or_else(|| Error::config("group", format!("unknown physical group `{group}`")))?;
            Ok(points.iter().map(|&p| dof.of(p)).collect())
        };
        let p = &self.program;
        let mut program = LoadProgram::new(p.steps);
        for b in &self.boundary {
            program = program.prescribe(dofs(&b.group, b.dof)?, b.schedule.clone());
        }
        for b in &self.loads {
            program = program.load(dofs(&b.group, b.dof)?, b.schedule.clone());
        }
        if let Some(m) = self.monitor() {
            program = program.monitor(dofs(&m.group, m.dof)?);
        }
        program.batch_size = p.batch_size;
        program.tolerance = p.tolerance;
        program.max_iterations = p.max_iterations;
        program.max_break_rounds = p.max_break_rounds;
        program.fragment_policy = p.fragment_policy;
        program.stop_below_peak = p.stop_below_peak;
        Ok(program)
    }

    /// Same run at another λ, with the strength adjusted when the sweep asks
    /// for it.
    pub fn at_lambda(&self, lambda: f64) -> RunConfig {
        let mut c = self.clone();
        c.model.lambda = lambda;
        if let Some(s) = &self.sweep {
            if s.adjust_strength {
                c.material.tensile_strength = adjusted_strength(self.material.tensile_strength, s.base_lambda, lambda);
            }
        }
        c.sweep = None;
        c
    }
}

/// Reads, resolves and fully validates a config, including the mesh groups
/// it references.
pub fn load_config(path: impl AsRef<Path>) -> Result<RunConfig> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| Error::File { path: path.to_owned(), source })?;
    let mut config = RunConfig::from_toml(&text)?;
    if config.mesh.is_relative() {
        let base = path.parent().unwrap_or(Path::new("."));
        config.mesh = base.join(&config.mesh);
    }
    config.validate()?;
    let mesh = read_msh(&config.mesh)?;
    config.validate_groups(&mesh)?;
    Ok(config)
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"
mesh = "disk.msh"
[material]
youngs_modulus = 30e9
poisson_ratio = 0.2
tensile_strength = 3.81e6
[model]
lambda = 3.0
"#;

    #[test]
    fn minimal_config_takes_defaults() {
        let c = RunConfig::from_toml(MINIMAL).unwrap();
        c.validate().unwrap();
        assert_eq!(c.model.correction.probe_strain, 1e-3);
        assert_eq!(c.model.correction.tolerance, 1e-3);
        assert_eq!(c.program.tolerance, 1e-4);
        assert_eq!(c.program.batch_size, 10);
        assert_eq!(c.material.thickness, 1.0);
        assert_eq!(c.material.plane, PlaneMode::Stress);
        assert!(c.slots.is_empty() && c.boundary.is_empty());
    }

    #[test]
    fn snapshot_round_trips() {
        let c = RunConfig::from_toml(MINIMAL).unwrap();
        let again = RunConfig::from_toml(&c.to_toml()).unwrap();
        assert_eq!(c, again);
    }

    #[test]
    fn small_lambda_is_rejected() {
        let c = RunConfig::from_toml(&MINIMAL.replace("lambda = 3.0", "lambda = 0.5")).unwrap();
        assert!(matches!(c.validate(), Err(Error::Config { field, .. }) if field == "lambda"));
    }

    #[test]
    fn unknown_key_names_the_line() {
        let err = RunConfig::from_toml(&format!("{MINIMAL}\nbogus = 1\n")).unwrap_err();
        assert!(matches!(err, Error::Config { .. }), "{err}");
    }

    #[test]
    fn missing_key_is_reported() {
        let err = RunConfig::from_toml(&MINIMAL.replace("poisson_ratio = 0.2\n", "")).unwrap_err();
        assert!(err.to_string().contains("poisson_ratio"), "{err}");
    }

    #[test]
    fn sweep_strengths() {
        let mut c = RunConfig::from_toml(MINIMAL).unwrap();
        c.sweep = Some(SweepBlock { lambdas: vec![2.5, 3.0, 3.5], base_lambda: 3.0, adjust_strength: true });
        let ft: Vec<f64> = [2.5, 3.0, 3.5].iter().map(|&l| c.at_lambda(l).material.tensile_strength).collect();
        assert!((ft[0] - 4.69e6).abs() < 0.01e6);
        assert_eq!(ft[1], 3.81e6);
        assert!((ft[2] - 3.21e6).abs() < 0.01e6);
    }
}
