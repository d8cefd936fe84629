//! Energy-density failure criterion and point damage.

use crate::bond::{BondDeformation, SpringFactors};
use crate::error::{Error, Result};
use crate::horizon::Bond;
use crate::material::{Material, PlaneMode};
use crate::model::Model;

/// Critical strain energy density under uniaxial tension at the tensile
/// strength.
pub fn critical_energy_density(material: &Material) -> Result<f64> {
    let (e, nu, ft) = (material.youngs_modulus, material.poisson_ratio, material.tensile_strength);
    match material.plane {
        PlaneMode::Stress => {
            let den = 2.0 * e * (1.0 - nu * nu);
            if den == 0.0 {
                return Err(Error::SingularMaterial(format!("plane stress with nu = {nu}")));
            }
            Ok(ft * ft / den)
        }
        PlaneMode::Strain => {
            let den = 2.0 * e * (1.0 - 2.0 * nu);
            if den == 0.0 {
                return Err(Error::SingularMaterial(format!("plane strain with nu = {nu}")));
            }
            Ok(ft * ft * (1.0 - nu * nu) * (1.0 - nu).powi(2) / den)
        }
    }
}

/// Contribution of a bond stretched by `s` to the energy density at either
/// endpoint, `Ω α V_A V_B c l s² / (V_A + V_B)`.
pub fn energy_dedication(bond: &Bond, factors: &SpringFactors, v_a: f64, v_b: f64, stretch: f64) -> f64 {
    bond.omega * bond.alpha * v_a * v_b * factors.c * bond.length * stretch * stretch / (v_a + v_b)
}

/// Stretch at which the dedication reaches `e0`.
pub fn critical_stretch(bond: &Bond, factors: &SpringFactors, e0: f64, v_a: f64, v_b: f64) -> Result<f64> {
    let den = bond.omega * bond.alpha * v_a * v_b * factors.c * bond.length;
    if !(den > 0.0 && den.is_finite()) || !(e0 > 0.0) {
        return Err(Error::InvalidBond {
            bond: usize::MAX,
            message: format!("cannot form a critical stretch from e0 = {e0} and Ω α V_A V_B c l = {den}"),
        });
    }
    Ok((e0 * (v_a + v_b) / den).sqrt())
}

/// Fills `s0` on every bond from the current Ω.
pub fn assign_critical_stretches(model: &mut Model) -> Result<f64> {
    let e0 = critical_energy_density(model.material())?;
    let s0: Vec<f64> = (0..model.bonds().len())
        .map(|k| {
            let b = &model.bonds()[k];
            let (va, vb) = (model.points()[b.a].volume, model.points()[b.b].volume);
            critical_stretch(b, model.factors(k), e0, va, vb).map_err(|e| match e {
                Error::InvalidBond { message, .. } => Error::InvalidBond { bond: k, message },
                other => other,
            })
        })
        .collect::<Result<_>>()?;
    for (b, s) in model.bonds_mut().iter_mut().zip(s0) {
        b.s0 = s;
    }
    Ok(e0)
}

/// Ranking margin `s − s0`; the bond breaks when it is non-negative.
pub fn breakage_margin(bond: &Bond, deformation: &BondDeformation) -> f64 {
    deformation.stretch - bond.s0
}

/// Weighted fraction of broken bonds at a point, or `None` for a point
/// without bonds.
pub fn point_damage(model: &Model, point: usize) -> Option<f64> {
    let (mut intact, mut total) = (0.0, 0.0);
    for &k in model.incident(point) {
        let b = &model.bonds()[k];
        let w = b.omega * b.alpha;
        total += w;
        if !b.broken {
            intact += w;
        }
    }
    if model.incident(point).is_empty() {
        None
    } else {
        Some((1.0 - intact / total).clamp(0.0, 1.0))
    }
}

/// Damage of every point. Points without bonds report 1.
pub fn damage_field(model: &Model) -> Vec<f64> {
    (0..model.points().len()).map(|p| point_damage(model, p).unwrap_or(1.0)).collect()
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use approx::assert_relative_eq;

    use super::*;
    use crate::mesh::MaterialPoint;
    use crate::model::ModelConfig;

    fn bond(omega: f64, alpha: f64) -> Bond {
        Bond {
            a: 0,
            b: 1,
            length: 0.01,
            horizon: 0.03,
            direction: [1.0, 0.0],
            alpha,
            omega,
            s0: f64::INFINITY,
            broken: false,
        }
    }

    #[test]
    fn critical_density_values() {
        let m = Material::plane_stress(1.0, 0.0, 1.0);
        assert_relative_eq!(critical_energy_density(&m).unwrap(), 0.5);
        let m = Material::plane_stress(30e9, 0.2, 3.81e6);
        assert_relative_eq!(critical_energy_density(&m).unwrap(), 3.81e6f64.powi(2) / (2.0 * 30e9 * 0.96));
        assert!((critical_energy_density(&m).unwrap() - 252.0).abs() < 0.1);
        let m2 = m.with_tensile_strength(2.0 * 3.81e6);
        assert_relative_eq!(
            critical_energy_density(&m2).unwrap(),
            4.0 * critical_energy_density(&m).unwrap(),
            max_relative = 1e-14
        );
    }

    #[test]
    fn stretch_at_threshold_dedicates_e0() {
        let m = Material::plane_stress(30e9, 0.2, 3.81e6);
        let b = bond(1.3, 0.8);
        let f = crate::bond::stiffness_factors(&m, b.horizon, b.length).unwrap();
        let e0 = critical_energy_density(&m).unwrap();
        let (va, vb) = (2e-5, 3e-5);
        let s0 = critical_stretch(&b, &f, e0, va, vb).unwrap();
        assert_relative_eq!(energy_dedication(&b, &f, va, vb, s0), e0, max_relative = 1e-10);
        assert_relative_eq!(s0, critical_stretch(&b, &f, e0, vb, va).unwrap(), max_relative = 1e-15);
        let equal = critical_stretch(&b, &f, e0, va, va).unwrap();
        assert_relative_eq!(equal, (2.0 * e0 / (1.3 * 0.8 * va * f.c * b.length)).sqrt(), max_relative = 1e-14);
        assert_relative_eq!(critical_stretch(&b, &f, 4.0 * e0, va, vb).unwrap(), 2.0 * s0, max_relative = 1e-14);
        let zero = bond(0.0, 0.8);
        assert!(matches!(critical_stretch(&zero, &f, e0, va, vb), Err(Error::InvalidBond { .. })));
    }

    #[test]
    fn margins() {
        let mut b = bond(1.0, 1.0);
        b.s0 = 1e-4;
        let at = |s| BondDeformation { stretch: s, shear: 0.0, rotation: 0.0 };
        assert_eq!(breakage_margin(&b, &at(0.0)), -1e-4);
        assert_eq!(breakage_margin(&b, &at(1e-4)), 0.0);
        assert!(breakage_margin(&b, &at(-1.0)) < 0.0);
    }

    #[test]
    fn weighted_point_damage() {
        let pt = |x, y, id| MaterialPoint { node_id: id, x, y, volume: 1.0, d_min: 0.0, horizon: 0.0 };
        let pts = vec![pt(0.0, 0.0, 1), pt(1.0, 0.0, 2), pt(0.0, 1.0, 3)];
        let cfg = ModelConfig::new(Material::plane_stress(1.0, 0.2, 1.0), 1.2);
        let mut model = Model::from_points(pts.clone(), BTreeMap::new(), &cfg, &[]).unwrap();
        assert_eq!(model.bonds().len(), 2);
        assert_eq!(damage_field(&model), vec![0.0, 0.0, 0.0]);
        model.set_domain_corrections(&[2.0 / model.bonds()[0].alpha, 1.0 / model.bonds()[1].alpha]).unwrap();
        model.break_bond(0);
        assert_relative_eq!(point_damage(&model, 0).unwrap(), 2.0 / 3.0, max_relative = 1e-14);
        model.break_bond(1);
        assert_eq!(point_damage(&model, 0), Some(1.0));

        // λ = 1 with strict coverage leaves every point without bonds
        let bare = Model::from_points(pts, BTreeMap::new(), &ModelConfig { lambda: 1.0, ..cfg }, &[]).unwrap();
        assert_eq!(point_damage(&bare, 0), None);
        assert_eq!(damage_field(&bare), vec![1.0; 3]);
    }
}
