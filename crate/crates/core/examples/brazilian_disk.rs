//! Diametral compression of an intact disk through rigid platens on the two
//! loading arcs, printing the load curve.
//!
//! `cargo run --release --example brazilian_disk -- [mesh.msh] [lambda]`

use std::path::PathBuf;

use nhpd::correction::{run_correction, CorrectionSettings};
use nhpd::damage::assign_critical_stretches;
use nhpd::mesh::read_msh;
use nhpd::solver::{run, Dof, LoadProgram, Schedule};
use nhpd::{Material, Model, ModelConfig};

/// πDF_t/2 for D = 0.1 m and F_t = 3.81 MPa, per unit thickness.
const REFERENCE_PEAK: f64 = 598.47e3;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    env_logger::init();
    let mut args = std::env::args().skip(1);
    let mesh_path = args
        .next()
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("meshes/disk_mesh1.msh"));
    let lambda: f64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(3.0);

    let started = std::time::Instant::now();
    let material = Material::plane_stress(30e9, 0.2, 3.81e6);
    let mut model = Model::from_mesh(&read_msh(&mesh_path)?, &ModelConfig::new(material, lambda), &[])?;
    let report = run_correction(&mut model, &CorrectionSettings { max_passes: 1000, ..Default::default() })?;
    assign_critical_stretches(&mut model)?;
    println!(
        "{} points, {} bonds, correction {} passes, omega in [{:.3}, {:.3}]",
        model.points().len(),
        model.bonds().len(),
        report.passes,
        report.omega_min,
        report.omega_max
    );

    let dofs = |group: &str, dof: Dof| -> Vec<usize> { model.group(group).unwrap().iter().map(|&p| dof.of(p)).collect() };
    let mut program = LoadProgram::new(80)
        .prescribe(dofs("top", Dof::Uy), Schedule::Linear { total: -1.6e-4 })
        .prescribe(dofs("bottom", Dof::Uy), Schedule::Fixed { value: 0.0 })
        .prescribe(dofs("top", Dof::Ux), Schedule::Fixed { value: 0.0 })
        .prescribe(dofs("bottom", Dof::Ux), Schedule::Fixed { value: 0.0 })
        .monitor(dofs("top", Dof::Uy));
    program.stop_below_peak = Some(0.9);

    let history = run(&mut model, program)?;
    println!("step,displacement_m,reaction_N,broken");
    for r in &history.records {
        println!("{},{:.6e},{:.6e},{}", r.step, r.displacement, r.reaction, r.broken_total);
    }
    let peak = history.peak_reaction();
    println!(
        "peak {:.2} kN per m, {:.3} of the analytical {:.2} kN, {:.1} s",
        peak / 1e3,
        peak / REFERENCE_PEAK,
        REFERENCE_PEAK / 1e3,
        started.elapsed().as_secs_f64()
    );
    Ok(())
}
