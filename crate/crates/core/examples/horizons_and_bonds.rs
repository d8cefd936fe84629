//! Point-dependent horizons, bond construction and slot removal.
//!
//! `cargo run --example horizons_and_bonds`

use std::collections::BTreeMap;
use std::path::PathBuf;

use nhpd::mesh::read_msh;
use nhpd::{Material, MaterialPoint, Model, ModelConfig, Segment};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let material = Material::plane_stress(30e9, 0.2, 3.81e6);

    // three collinear points one unit apart: h = 1.5 reaches only neighbours
    let pt = |x: f64, id| MaterialPoint { node_id: id, x, y: 0.0, volume: 1.0, d_min: 0.0, horizon: 0.0 };
    let toy = Model::from_points(
        vec![pt(0.0, 1), pt(1.0, 2), pt(2.0, 3)],
        BTreeMap::new(),
        &ModelConfig::new(material, 1.5),
        &[],
    )?;
    for b in toy.bonds() {
        println!("toy bond {}-{}: length {}, horizon {}, alpha {:.3}", b.a, b.b, b.length, b.horizon, b.alpha);
    }

    let mesh = read_msh(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("meshes/disk_mesh1.msh"))?;
    println!("\nlambda  bonds  per point");
    for lambda in [1.5, 2.0, 2.5, 3.0, 3.5, 4.0] {
        let model = Model::from_mesh(&mesh, &ModelConfig::new(material, lambda), &[])?;
        let s = model.stats();
        println!("{lambda:>6}  {:>5}  {:>9.2}", s.bonds, s.mean_bonds_per_point);
    }

    let slot = Segment::centred([0.0, 0.0], 0.015, 30.0);
    let slotted = Model::from_mesh(&mesh, &ModelConfig::new(material, 3.0), &[slot])?;
    println!("\na 30 mm slot at 30 degrees removes {} bonds", slotted.slot_bonds_removed());
    Ok(())
}
