//! Elastic step on the coarse disk written as a legacy VTK point field.
//!
//! `cargo run --release --example field_output -- [out.vtk]`

use std::path::PathBuf;

use nhpd::correction::{run_correction, CorrectionSettings};
use nhpd::io::{write_fields, PointFields};
use nhpd::mesh::read_msh;
use nhpd::solver::{Dof, LoadProgram, Schedule, Solver};
use nhpd::{Material, Model, ModelConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(|| std::env::temp_dir().join("disk_elastic.vtk"));
    let mesh = read_msh(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("meshes/disk_coarse.msh"))?;
    let mut model = Model::from_mesh(&mesh, &ModelConfig::new(Material::plane_stress(30e9, 0.2, 3.81e6), 3.0), &[])?;
    run_correction(&mut model, &CorrectionSettings::default())?;
    // critical stretches are left infinite, so the step stays elastic

    let dofs = |group: &str, dof: Dof| -> Vec<usize> { model.group(group).unwrap().iter().map(|&p| dof.of(p)).collect() };
    let program = LoadProgram::new(1)
        .prescribe(dofs("top", Dof::Uy), Schedule::Fixed { value: -5e-5 })
        .prescribe(dofs("bottom", Dof::Uy), Schedule::Fixed { value: 0.0 })
        .prescribe(dofs("top", Dof::Ux), Schedule::Fixed { value: 0.0 })
        .prescribe(dofs("bottom", Dof::Ux), Schedule::Fixed { value: 0.0 })
        .monitor(dofs("top", Dof::Uy));
    let mut solver = Solver::new(&mut model, program)?;
    let record = solver.step(1)?;
    let fields = PointFields::capture(solver.model(), solver.displacements());
    write_fields(&out, &fields, "nhpd elastic disk, lambda = 3")?;
    println!("reaction {:.4e} N, {} points written to {}", record.reaction, fields.position.len(), out.display());
    Ok(())
}
