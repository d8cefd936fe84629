//! Legacy ASCII VTK point fields.

use std::fmt::Write as _;
use std::path::Path;

use crate::damage::damage_field;
use crate::error::{Error, Result};
use crate::model::Model;

/// Per-point arrays written to a field file.
#[derive(Debug, Clone, PartialEq)]
pub struct PointFields {
    pub position: Vec<[f64; 2]>,
    pub displacement: Vec<[f64; 2]>,
    pub rotation: Vec<f64>,
    pub damage: Vec<f64>,
    pub volume: Vec<f64>,
    pub horizon: Vec<f64>,
}

impl PointFields {
    /// Gathers the fields of `model` under the displacement vector `u`.
    pub fn capture(model: &Model, u: &[f64]) -> PointFields {
        let pts = model.points();
        PointFields {
            position: pts.iter().map(|p| [p.x, p.y]).collect(),
            displacement: (0..pts.len()).map(|i| [u[3 * i], u[3 * i + 1]]).collect(),
            rotation: (0..pts.len()).map(|i| u[3 * i + 2]).collect(),
            damage: damage_field(model),
            volume: pts.iter().map(|p| p.volume).collect(),
            horizon: pts.iter().map(|p| p.horizon).collect(),
        }
    }
}

/// Renders `fields` as a POLYDATA file of vertices. `title` goes on the
/// header line and must be a single line. Values use Rust's shortest
/// round-trip formatting, so reading them back is exact.
pub fn render(fields: &PointFields, title: &str) -> String {
    let n = fields.position.len();
    let mut s = String::with_capacity(160 * n + 512);
    let title: String = title.chars().filter(|c| *c != '\n').take(255).collect();
    s.push_str("# vtk DataFile Version 3.0\n");
    s.push_str(&title);
    s.push_str("\nASCII\nDATASET POLYDATA\n");
    let _ = writeln!(s, "POINTS {n} double");
    for p in &fields.position {
        let _ = writeln!(s, "{:e} {:e} 0", p[0], p[1]);
    }
    let _ = writeln!(s, "VERTICES {n} {}", 2 * n);
    for i in 0..n {
        let _ = writeln!(s, "1 {i}");
    }
    let _ = writeln!(s, "POINT_DATA {n}");
    s.push_str("VECTORS displacement double\n");
    for d in &fields.displacement {
        let _ = writeln!(s, "{:e} {:e} 0", d[0], d[1]);
    }
    for (name, values) in [
        ("rotation", &fields.rotation),
        ("damage", &fields.damage),
        ("volume", &fields.volume),
        ("horizon", &fields.horizon),
    ] {
        let _ = writeln!(s, "SCALARS {name} double 1\nLOOKUP_TABLE default");
        for v in values {
            let _ = writeln!(s, "{v:e}");
        }
    }
    s
}

pub fn write_fields(path: &Path, fields: &PointFields, title: &str) -> Result<()> {
    std::fs::write(path, render(fields, title)).map_err(|source| Error::File { path: path.to_owned(), source })
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::model::{square_lattice, ModelConfig};
    use crate::Material;

    #[test]
    fn undamaged_and_failed_points() {
        let cfg = ModelConfig::new(Material::plane_stress(30e9, 0.2, 3e6), 1.5);
        let mut model = crate::Model::from_points(square_lattice(3, 1, 1.0, 1.0), BTreeMap::new(), &cfg, &[]).unwrap();
        let u = vec![0.0; model.n_dofs()];
        let text = render(&PointFields::capture(&model, &u), "t");
        assert!(text.contains("SCALARS damage double 1\nLOOKUP_TABLE default\n0e0\n0e0\n0e0\n"));
        model.break_bond(0);
        let fields = PointFields::capture(&model, &u);
        assert_eq!(fields.damage, vec![1.0, 0.5, 0.0]);
        assert!(render(&fields, "t").contains("LOOKUP_TABLE default\n1e0\n5e-1\n0e0\n"));
    }
}
