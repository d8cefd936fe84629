//! Critical energy density, per-bond critical stretch and point damage.
//!
//! `cargo run --release --example damage_criterion`

use std::path::PathBuf;

use nhpd::correction::{run_correction, CorrectionSettings};
use nhpd::damage::{assign_critical_stretches, critical_energy_density, damage_field};
use nhpd::mesh::read_msh;
use nhpd::solver::{run, Dof, FragmentPolicy, LoadProgram, Schedule};
use nhpd::{Material, Model, ModelConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let material = Material::plane_stress(30e9, 0.2, 3.81e6);
    println!("plane stress e0 = {:.3} J/m^3", critical_energy_density(&material)?);
    let strain = Material::plane_strain(30e9, 0.2, 3.81e6);
    println!("plane strain e0 = {:.3} J/m^3", critical_energy_density(&strain)?);

    let mesh = read_msh(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("meshes/disk_coarse.msh"))?;
    let mut model = Model::from_mesh(&mesh, &ModelConfig::new(material, 3.0), &[])?;
    run_correction(&mut model, &CorrectionSettings::default())?;
    assign_critical_stretches(&mut model)?;
    let mut s0: Vec<f64> = model.bonds().iter().map(|b| b.s0).collect();
    s0.sort_by(f64::total_cmp);
    let ft_over_e = material.tensile_strength / material.youngs_modulus;
    println!(
        "critical stretch: min {:.3e}, median {:.3e}, max {:.3e} (Ft/E = {ft_over_e:.3e})",
        s0[0],
        s0[s0.len() / 2],
        s0[s0.len() - 1]
    );

    // pull a graded square apart and look at the damage it leaves
    let mesh = read_msh(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("meshes/square_graded.msh"))?;
    let mut plate = Model::from_mesh(&mesh, &ModelConfig::new(material, 3.0), &[])?;
    run_correction(&mut plate, &CorrectionSettings::default())?;
    assign_critical_stretches(&mut plate)?;
    let dofs = |group: &str, dof: Dof| -> Vec<usize> { plate.group(group).unwrap().iter().map(|&p| dof.of(p)).collect() };
    let mut program = LoadProgram::new(40)
        .prescribe(dofs("right", Dof::Ux), Schedule::Linear { total: 4e-5 })
        .prescribe(dofs("left", Dof::Ux), Schedule::Fixed { value: 0.0 })
        .prescribe(dofs("left", Dof::Uy)[..1].to_vec(), Schedule::Fixed { value: 0.0 })
        .monitor(dofs("right", Dof::Ux));
    program.stop_below_peak = Some(0.2);
    program.fragment_policy = FragmentPolicy::Pin;
    let history = run(&mut plate, program)?;
    let peak = history.peak().expect("at least one step");
    println!("plate peak {:.4e} N at step {}, {} bonds broken", peak.reaction, peak.step, plate.broken_count());
    let phi = damage_field(&plate);
    for (lo, hi) in [(0.0, 0.0), (0.0, 0.25), (0.25, 0.5), (0.5, 1.0)] {
        let n = phi.iter().filter(|&&d| if hi == 0.0 { d == 0.0 } else { d > lo && d <= hi }).count();
        println!("  damage in ({lo}, {hi}]: {n} points");
    }
    Ok(())
}
