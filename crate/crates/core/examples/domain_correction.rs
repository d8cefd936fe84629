//! Iterative domain correction on a graded mesh, checked against the
//! closed-form energy density of both affine probes.
//!
//! `cargo run --release --example domain_correction -- [mesh.msh] [lambda]`

use std::path::PathBuf;

use nhpd::correction::{probe_densities, run_correction, target_energy_density, CorrectionSettings, Probe};
use nhpd::mesh::read_msh;
use nhpd::{Material, Model, ModelConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let path = args
        .next()
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("meshes/square_graded.msh"));
    let lambda: f64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(3.0);
    let material = Material::plane_stress(30e9, 0.2, 3.81e6);
    let mut model = Model::from_mesh(&read_msh(&path)?, &ModelConfig::new(material, lambda), &[])?;
    let settings = CorrectionSettings::default();
    let eps = settings.probe_strain;
    let target = target_energy_density(&material, eps)?;

    let spread = |model: &Model, probe| {
        let e = probe_densities(model, probe, eps);
        let lo = e.iter().copied().fold(f64::INFINITY, f64::min) / target;
        let hi = e.iter().copied().fold(0.0, f64::max) / target;
        (lo, hi)
    };
    println!("before: x probe density / target in {:.3?}", spread(&model, Probe::X));
    let report = run_correction(&mut model, &settings)?;
    println!("{} passes, omega in [{:.3}, {:.3}]", report.passes, report.omega_min, report.omega_max);
    for (i, r) in report.residuals.iter().enumerate().step_by(10) {
        println!("  pass {:>3}: sum |dOmega| = {r:.3e}", i + 1);
    }
    println!("after:  x probe density / target in {:.6?}", spread(&model, Probe::X));
    println!("after:  y probe density / target in {:.6?}", spread(&model, Probe::Y));
    Ok(())
}
