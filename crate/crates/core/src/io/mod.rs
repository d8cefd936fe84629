//! Config-driven scenarios: `info`, `correct`, `run` and `sweep`, plus the
//! files they write.
//!
//! A run directory holds `config.toml` (the effective config with every
//! default spelled out), `correction.csv`, `history.csv` and, when enabled,
//! `fields/step_NNNN.vtk`. Each file starts with comment lines carrying λ,
//! the tensile strength and the correction convention.

pub mod config;
pub mod vtk;

use std::fmt::{self, Write as _};
use std::path::{Path, PathBuf};
use std::time::Instant;

pub use config::{adjusted_strength, load_config, strength_factor, RunConfig};
pub use vtk::{write_fields, PointFields};

use crate::correction::{probe_densities, run_correction, target_energy_density, CorrectionReport, Probe};
use crate::damage::assign_critical_stretches;
use crate::error::{Error, Result};
use crate::mesh::read_msh;
use crate::model::{Model, ModelConfig, ModelStats};
use crate::solver::{run_with, History, StepView};
use config::FieldFormat;

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> Error + '_ {
    move |source| Error::File { path: path.to_owned(), source }
}

fn create_dir(path: &Path) -> Result<()> {
    std::fs::create_dir_all(path).map_err(io_err(path))
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(io_err(path))
}

/// Comment lines identifying the run that produced a file.
pub fn provenance(config: &RunConfig) -> Vec<String> {
    vec![
        format!("lambda = {}", config.model.lambda),
        format!("tensile_strength = {:e}", config.material.tensile_strength),
        format!("correction = {}", config.model.correction.convention.as_str()),
        format!("plane = {}", config.material.plane.as_str()),
    ]
}

fn commented(header: &[String], prefix: &str) -> String {
    header.iter().map(|h| format!("{prefix} {h}\n")).collect()
}

/// Reads the mesh and builds the bond graph, without correction.
pub fn build_model(config: &RunConfig) -> Result<Model> {
    let mesh = read_msh(&config.mesh)?;
    config.validate_groups(&mesh)?;
    Model::from_mesh(&mesh, &config.model_config(), &config.slots)
}

/// Builds the model, runs the domain correction and assigns critical
/// stretches.
pub fn prepare(config: &RunConfig) -> Result<(Model, CorrectionReport)> {
    let mut model = build_model(config)?;
    let report = run_correction(&mut model, &config.model.correction)?;
    assign_critical_stretches(&mut model)?;
    Ok((model, report))
}

/// The effective config, with the mesh path made absolute so the snapshot
/// can be replayed from anywhere.
pub fn snapshot(config: &RunConfig) -> String {
    let mut c = config.clone();
    if let Ok(abs) = std::fs::canonicalize(&c.mesh) {
        c.mesh = abs;
    }
    let mut s = commented(&provenance(config), "#");
    s.push_str("# effective configuration, defaults included\n");
    s.push_str(&c.to_toml());
    s
}

pub fn history_csv(history: &History, header: &[String]) -> String {
    let mut s = commented(header, "#");
    if history.stopped_early {
        s.push_str("# stopped early: reaction fell below the configured fraction of its peak\n");
    }
    s.push_str("step,displacement,reaction,broken_total,broken_in_step,energy,iterations,break_rounds\n");
    for r in &history.records {
        let _ = writeln!(
            s,
            "{},{:e},{:e},{},{},{:e},{},{}",
            r.step, r.displacement, r.reaction, r.broken_total, r.broken_in_step, r.energy, r.iterations, r.break_rounds
        );
    }
    s
}

/// Relative deviation of the corrected probe densities from the target.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbeError {
    pub max: f64,
    /// Fraction of points within 2%.
    pub within_2pct: f64,
}

pub fn probe_error(model: &Model, probe: Probe, strain: f64) -> Result<ProbeError> {
    let target = target_energy_density(model.material(), strain)?;
    let errors: Vec<f64> = probe_densities(model, probe, strain)
        .iter()
        .enumerate()
        .filter(|(p, _)| !model.incident(*p).is_empty())
        .map(|(_, e)| (e / target - 1.0).abs())
        .collect();
    let max = errors.iter().copied().fold(0.0, f64::max);
    let within = errors.iter().filter(|&&e| e <= 0.02).count() as f64 / errors.len().max(1) as f64;
    Ok(ProbeError { max, within_2pct: within })
}

pub fn correction_csv(report: &CorrectionReport, probes: [ProbeError; 2], header: &[String]) -> String {
    let mut s = commented(header, "#");
    let _ = writeln!(s, "# passes = {}", report.passes);
    let _ = writeln!(s, "# omega = [{:e}, {:e}]", report.omega_min, report.omega_max);
    for (axis, p) in ['x', 'y'].iter().zip(probes) {
        let _ = writeln!(s, "# probe {axis}: max relative error {:e}, {:.4} of points within 2%", p.max, p.within_2pct);
    }
    s.push_str("pass,change_sum\n");
    for (i, r) in report.residuals.iter().enumerate() {
        let _ = writeln!(s, "{},{r:e}", i + 1);
    }
    s
}

/// Mesh and bond statistics, including bond counts over a λ list.
#[derive(Debug, Clone)]
pub struct InfoReport {
    pub mesh: PathBuf,
    pub nodes: usize,
    pub triangles: usize,
    pub area: f64,
    pub groups: Vec<(String, usize)>,
    pub stats: ModelStats,
    pub lambda: f64,
    /// `(λ, bonds, seconds to build)`.
    pub bonds_by_lambda: Vec<(f64, usize, f64)>,
}

impl fmt::Display for InfoReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = &self.stats;
        writeln!(f, "mesh {}", self.mesh.display())?;
        writeln!(f, "  nodes {}, triangles {}, area {:.6e}", self.nodes, self.triangles, self.area)?;
        for (name, n) in &self.groups {
            writeln!(f, "  group {name}: {n} nodes")?;
        }
        writeln!(f, "model at lambda = {}", self.lambda)?;
        writeln!(f, "  points {}, bonds {}, mean bonds per point {:.2}", s.points, s.bonds, s.mean_bonds_per_point)?;
        writeln!(f, "  nearest distance [{:.4e}, {:.4e}]", s.d_min[0], s.d_min[1])?;
        writeln!(f, "  horizon [{:.4e}, {:.4e}]", s.horizon[0], s.horizon[1])?;
        writeln!(f, "  total volume {:.6e}", s.total_volume)?;
        writeln!(f, "  isolated points {}, bonds removed by slots {}", s.isolated, s.slot_bonds_removed)?;
        writeln!(f, "lambda,bonds,build_seconds")?;
        for (l, n, t) in &self.bonds_by_lambda {
            writeln!(f, "{l},{n},{t:.3}")?;
        }
        Ok(())
    }
}

pub fn info(config: &RunConfig, lambdas: &[f64]) -> Result<InfoReport> {
    let mesh = read_msh(&config.mesh)?;
    config.validate_groups(&mesh)?;
    let model = Model::from_mesh(&mesh, &config.model_config(), &config.slots)?;
    let mut bonds_by_lambda = Vec::new();
    for &lambda in lambdas {
        let started = Instant::now();
        let m = Model::from_mesh(&mesh, &ModelConfig::new(config.material(), lambda), &config.slots)?;
        bonds_by_lambda.push((lambda, m.bonds().len(), started.elapsed().as_secs_f64()));
    }
    Ok(InfoReport {
        mesh: config.mesh.clone(),
        nodes: mesh.nodes().len(),
        triangles: mesh.triangles().len(),
        area: mesh.total_area(),
        groups: mesh.groups().iter().map(|g| (g.name.clone(), g.nodes.len())).collect(),
        stats: model.stats(),
        lambda: config.model.lambda,
        bonds_by_lambda,
    })
}

#[derive(Debug, Clone)]
pub struct CorrectionOutcome {
    pub report: CorrectionReport,
    pub probes: [ProbeError; 2],
    pub seconds: f64,
}

/// Runs the domain correction only and writes `correction.csv` to `out`.
pub fn correct(config: &RunConfig, out: &Path) -> Result<CorrectionOutcome> {
    create_dir(out)?;
    write_file(&out.join("config.toml"), &snapshot(config))?;
    let started = Instant::now();
    let mut model = build_model(config)?;
    let report = run_correction(&mut model, &config.model.correction)?;
    let seconds = started.elapsed().as_secs_f64();
    let eps = config.model.correction.probe_strain;
    let probes = [probe_error(&model, Probe::X, eps)?, probe_error(&model, Probe::Y, eps)?];
    write_file(&out.join("correction.csv"), &correction_csv(&report, probes, &provenance(config)))?;
    Ok(CorrectionOutcome { report, probes, seconds })
}

/// Outcome of one simulation.
#[derive(Debug, Clone)]
pub struct RunSummary {
    pub lambda: f64,
    pub tensile_strength: f64,
    pub points: usize,
    pub bonds: usize,
    pub correction_passes: usize,
    pub steps: usize,
    pub stopped_early: bool,
    pub peak_reaction: f64,
    pub peak_displacement: f64,
    pub normalized_peak: Option<f64>,
    pub broken: usize,
    pub seconds: f64,
    pub history: History,
    pub dir: PathBuf,
}

fn field_due(config: &RunConfig, step: usize) -> bool {
    let every = config.output.field_every;
    config.output.fields == FieldFormat::Vtk && (step == config.program.steps || (every > 0 && step % every == 0))
}

/// Full simulation into `out`. A failing run still leaves its partial
/// history behind.
pub fn run(config: &RunConfig, out: &Path) -> Result<RunSummary> {
    let started = Instant::now();
    create_dir(out)?;
    let header = provenance(config);
    write_file(&out.join("config.toml"), &snapshot(config))?;
    log::info!("effective configuration written to {}", out.join("config.toml").display());

    let (mut model, report) = prepare(config)?;
    let eps = config.model.correction.probe_strain;
    let probes = [probe_error(&model, Probe::X, eps)?, probe_error(&model, Probe::Y, eps)?];
    write_file(&out.join("correction.csv"), &correction_csv(&report, probes, &header))?;

    let program = config.load_program(model.groups())?;
    let fields_dir = out.join("fields");
    if config.output.fields == FieldFormat::Vtk {
        create_dir(&fields_dir)?;
    }
    let title = format!("nhpd {}", header.join(", "));
    let (points, bonds) = (model.points().len(), model.bonds().len());
    let field_path = |step: usize| fields_dir.join(format!("step_{step:04}.vtk"));
    // the last completed step is always written, also when the run stops early
    let mut last: Option<(usize, PointFields, bool)> = None;
    let observe = |view: &StepView<'_>| -> Result<()> {
        let step = view.record.step;
        let fields = PointFields::capture(view.model, view.displacements);
        let due = field_due(config, step);
        if due {
            write_fields(&field_path(step), &fields, &format!("{title}, step {step}"))?;
        }
        last = Some((step, fields, due));
        Ok(())
    };
    let outcome = run_with(&mut model, program, observe);
    if let (FieldFormat::Vtk, Some((step, fields, false))) = (config.output.fields, &last) {
        write_fields(&field_path(*step), fields, &format!("{title}, step {step}"))?;
    }
    let history = match &outcome {
        Ok(h) => h,
        Err(f) => &f.history,
    };
    write_file(&out.join("history.csv"), &history_csv(history, &header))?;
    let history = match outcome {
        Ok(h) => h,
        Err(failure) => return Err(failure.error),
    };
    let peak = history.peak();
    let peak_reaction = peak.map_or(0.0, |r| r.reaction.abs());
    Ok(RunSummary {
        lambda: config.model.lambda,
        tensile_strength: config.material.tensile_strength,
        points,
        bonds,
        correction_passes: report.passes,
        steps: history.records.len(),
        stopped_early: history.stopped_early,
        peak_reaction,
        peak_displacement: peak.map_or(0.0, |r| r.displacement),
        normalized_peak: config.output.reference_peak.map(|r| peak_reaction / r),
        broken: model.broken_count(),
        seconds: started.elapsed().as_secs_f64(),
        history,
        dir: out.to_owned(),
    })
}

/// One sweep entry: the run summary or the error that stopped it.
pub type SweepEntry = (f64, f64, Result<RunSummary>);

/// Repeats `run` for every λ of the sweep block, each into
/// `out/lambda_<λ>`, then writes `out/summary.csv`.
pub fn sweep(config: &RunConfig, out: &Path) -> Result<Vec<SweepEntry>> {
    let block = config.sweep.as_ref().ok_or_else(|| Error::config("sweep", "the config has no [sweep] block"))?;
    create_dir(out)?;
    let mut entries = Vec::new();
    for &lambda in &block.lambdas {
        let c = config.at_lambda(lambda);
        log::info!("sweep: lambda = {lambda}, tensile strength = {:e}", c.material.tensile_strength);
        let result = run(&c, &out.join(format!("lambda_{lambda}")));
        if let Err(e) = &result {
            log::error!("sweep: lambda = {lambda} failed: {e}");
        }
        entries.push((lambda, c.material.tensile_strength, result));
    }
    write_file(&out.join("summary.csv"), &sweep_csv(config, &entries))?;
    Ok(entries)
}

pub fn sweep_csv(config: &RunConfig, entries: &[SweepEntry]) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# base tensile_strength = {:e}", config.material.tensile_strength);
    if let Some(b) = &config.sweep {
        let _ = writeln!(s, "# base_lambda = {}, adjust_strength = {}", b.base_lambda, b.adjust_strength);
    }
    let _ = writeln!(s, "# correction = {}", config.model.correction.convention.as_str());
    if let Some(r) = config.output.reference_peak {
        let _ = writeln!(s, "# reference_peak = {r:e}");
    }
    s.push_str("lambda,tensile_strength,bonds,peak_reaction,peak_displacement,normalized_peak,broken,seconds,status\n");
    for (lambda, ft, result) in entries {
        match result {
            Ok(r) => {
                let norm = r.normalized_peak.map_or(String::new(), |v| format!("{v:.6}"));
                let _ = writeln!(
                    s,
                    "{lambda},{ft:e},{},{:e},{:e},{norm},{},{:.2},ok",
                    r.bonds, r.peak_reaction, r.peak_displacement, r.broken, r.seconds
                );
            }
            Err(e) => {
                let msg = e.to_string().replace([',', '\n'], " ");
                let _ = writeln!(s, "{lambda},{ft:e},,,,,,,failed: {msg}");
            }
        }
    }
    s
}
