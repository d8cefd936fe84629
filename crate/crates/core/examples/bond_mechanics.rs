//! Stiffness, deformation measures and energy of a single beam-like bond.
//!
//! `cargo run --example bond_mechanics`

use nalgebra::SymmetricEigen;
use nhpd::bond::{bond_deformation, bond_energy, element_stiffness, stack, stiffness_factors};
use nhpd::{Bond, Material, MaterialPoint};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let material = Material::plane_stress(30e9, 0.2, 3.81e6);
    let pt = |x, y, id| MaterialPoint { node_id: id, x, y, volume: 1e-6, d_min: 5e-3, horizon: 1.5e-2 };
    let points = [pt(0.0, 0.0, 1), pt(3e-3, 4e-3, 2)];
    let bond = Bond::new(&points, 0, 1)?;
    let f = stiffness_factors(&material, bond.horizon, bond.length)?;
    println!("length {:.4e}, c {:.4e}, d {:.4e}", bond.length, f.c, f.d);

    let k = element_stiffness(&bond, &f, 1e-6, 1e-6);
    let eig = SymmetricEigen::new(k);
    let mut values: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    values.sort_by(f64::total_cmp);
    let shown: Vec<String> = values.iter().map(|v| format!("{v:.3e}")).collect();
    println!("eigenvalues of K: {}", shown.join(" "));

    // stretch the bond by 1e-4 along its axis, then add a rigid rotation
    let [a, b] = bond.direction;
    let s = 1e-4 * bond.length;
    let ua = [0.0, 0.0, 0.0];
    let ub = [a * s, b * s, 0.0];
    let def = bond_deformation(ua, ub, &bond);
    println!("axial: s = {:.3e}, gamma = {:.3e}, rotation = {:.3e}", def.stretch, def.shear, def.rotation);
    let energy = bond_energy(ua, ub, &bond, &f, 1e-6, 1e-6);
    let u = stack(ua, ub);
    println!("energy {energy:.6e} = half u.K.u {:.6e}", 0.5 * u.dot(&(k * u)));

    let w = 1e-3;
    let (dx, dy) = (points[1].x - points[0].x, points[1].y - points[0].y);
    let spin = bond_deformation([0.0, 0.0, w], [w * dy, -w * dx, w], &bond);
    println!("rigid rotation: s = {:.1e}, gamma = {:.1e}, rotation = {:.1e}", spin.stretch, spin.shear, spin.rotation);
    Ok(())
}
