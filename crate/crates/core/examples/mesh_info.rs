//! Reads a Gmsh mesh, lumps it into material points and prints what the
//! model will see.
//!
//! `cargo run --example mesh_info -- [mesh.msh]`

use std::path::PathBuf;

use nhpd::mesh::{lump_volumes, read_msh};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("meshes/disk_coarse.msh"));
    let mesh = read_msh(&path)?;
    println!("{}: {} nodes, {} triangles", path.display(), mesh.nodes().len(), mesh.triangles().len());
    for g in mesh.groups() {
        println!("  group {:>8} (dim {}, tag {}): {} nodes", g.name, g.dim, g.tag, g.nodes.len());
    }
    let points = lump_volumes(&mesh, 1.0)?;
    let total: f64 = points.iter().map(|p| p.volume).sum();
    let (lo, hi) = points.iter().fold((f64::INFINITY, 0.0f64), |(lo, hi), p| (lo.min(p.volume), hi.max(p.volume)));
    println!("lumped volume {total:.6e} (mesh area {:.6e})", mesh.total_area());
    println!("point volumes in [{lo:.3e}, {hi:.3e}]");
    Ok(())
}
