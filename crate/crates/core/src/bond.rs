//! Beam-like bond kinematics and stiffness.
//!
//! Each point carries three degrees of freedom `[u_x, u_y, m]`. A bond maps
//! the six end values to a normal stretch `s`, a shear measure `γ` and a
//! relative rotation `ϑ` through `Bᵀ R`, and its 6×6 stiffness is
//! `Ω α V_A V_B Rᵀ B L D Bᵀ R` with `L = diag(l, l, 1)`.
//!
//! The rotation dof follows the sign convention of the kinematic matrix: a
//! rigid rotation of the pair by `ω` (counterclockwise) is `m = -ω`.

use nalgebra::{Matrix3x6, SMatrix, SVector};

use crate::error::{Error, Result};
use crate::horizon::Bond;
use crate::material::{Material, PlaneMode};

pub type Mat6 = SMatrix<f64, 6, 6>;
pub type Vec6 = SVector<f64, 6>;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct BondDeformation {
    /// Normal stretch s.
    pub stretch: f64,
    /// Shear measure γ.
    pub shear: f64,
    /// Relative rotation ϑ.
    pub rotation: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct BondForces {
    pub normal: f64,
    pub shear: f64,
    pub moment: f64,
}

/// Spring factors of one bond: `k_n = c`, `k_t = 12 d / l²`, `k_ϑ = d / l`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpringFactors {
    pub c: f64,
    pub d: f64,
    pub normal: f64,
    pub shear: f64,
    pub rotational: f64,
}

/// Block-diagonal rotation for a bond with direction cosines `(a, b)`.
pub fn rotation_matrix(direction: [f64; 2]) -> Mat6 {
    let [a, b] = direction;
    let mut r = Mat6::zeros();
    for k in [0, 3] {
        r[(k, k)] = a;
        r[(k, k + 1)] = b;
        r[(k + 1, k)] = -b;
        r[(k + 1, k + 1)] = a;
        r[(k + 2, k + 2)] = 1.0;
    }
    r
}

/// Rotation matrix of the bond from `from` to `to`.
pub fn rotation_between(from: [f64; 2], to: [f64; 2]) -> Result<Mat6> {
    let (dx, dy) = (to[0] - from[0], to[1] - from[1]);
    let l = (dx * dx + dy * dy).sqrt();
    if !(l > 0.0) {
        return Err(Error::DegenerateBond);
    }
    Ok(rotation_matrix([dx / l, dy / l]))
}

/// The 3×6 matrix `Bᵀ` mapping local end dofs to `(s, γ, ϑ)`.
pub fn kinematic_matrix(length: f64) -> Matrix3x6<f64> {
    let l = length;
    #[rustfmt::skip]
    let bt = Matrix3x6::new(
        -1.0, 0.0, 0.0,     1.0, 0.0, 0.0,
        0.0, -1.0, l / 2.0, 0.0, 1.0, l / 2.0,
        0.0, 0.0, -l,       0.0, 0.0, l,
    );
    bt / l
}

pub fn stiffness_factors(material: &Material, horizon: f64, length: f64) -> Result<SpringFactors> {
    let (e, nu, t) = (material.youngs_modulus, material.poisson_ratio, material.thickness);
    let pi = std::f64::consts::PI;
    let h = horizon;
    let (c, d, limit) = match material.plane {
        PlaneMode::Stress => {
            if (1.0 - nu) == 0.0 || (1.0 - nu * nu) == 0.0 {
                return Err(Error::SingularMaterial(format!("plane stress with nu = {nu}")));
            }
            let c = 6.0 * e / (pi * t * h.powi(3) * (1.0 - nu));
            let d = e * (1.0 - 3.0 * nu) / (6.0 * pi * t * h * (1.0 - nu * nu));
            (c, d, 1.0 / 3.0)
        }
        PlaneMode::Strain => {
            let den = (1.0 - 2.0 * nu) * (1.0 + nu);
            if den == 0.0 {
                return Err(Error::SingularMaterial(format!("plane strain with nu = {nu}")));
            }
            let c = 6.0 * e / (pi * t * h.powi(3) * den);
            let d = e * (1.0 - 4.0 * nu) / (6.0 * pi * t * h * den);
            (c, d, 0.25)
        }
    };
    if d < 0.0 {
        return Err(Error::NegativeRotationalStiffness { nu, limit, mode: material.plane.as_str() });
    }
    Ok(SpringFactors {
        c,
        d,
        normal: c,
        shear: 12.0 * d / (length * length),
        rotational: d / length,
    })
}

fn correction_term(length: f64, min: f64, max: f64) -> f64 {
    if max == min {
        1.0
    } else {
        ((min - length) / (max - min)).exp()
    }
}

/// Length correction α_AB from the shortest and longest bonds at each end.
pub fn length_correction(length: f64, a_min: f64, a_max: f64, b_min: f64, b_max: f64) -> f64 {
    0.5 * (correction_term(length, a_min, a_max) + correction_term(length, b_min, b_max))
}

/// Fills `alpha` on every bond from the current bond list.
pub fn assign_length_corrections(n_points: usize, bonds: &mut [Bond]) {
    let mut lo = vec![f64::INFINITY; n_points];
    let mut hi = vec![0.0f64; n_points];
    for b in bonds.iter() {
        for p in [b.a, b.b] {
            lo[p] = lo[p].min(b.length);
            hi[p] = hi[p].max(b.length);
        }
    }
    for b in bonds.iter_mut() {
        b.alpha = length_correction(b.length, lo[b.a], hi[b.a], lo[b.b], hi[b.b]);
    }
}

/// `Rᵀ B L D Bᵀ R` for a bond, without the `Ω α V_A V_B` prefactor.
pub fn unit_stiffness(bond: &Bond, factors: &SpringFactors) -> Mat6 {
    let bt = kinematic_matrix(bond.length) * rotation_matrix(bond.direction);
    let l = bond.length;
    let weights = nalgebra::Matrix3::from_diagonal(&nalgebra::Vector3::new(
        l * factors.normal,
        l * factors.shear,
        factors.rotational,
    ));
    bt.transpose() * weights * bt
}

/// Elemental stiffness `K_AB` acting on `[u_xA, u_yA, m_A, u_xB, u_yB, m_B]`.
pub fn element_stiffness(bond: &Bond, factors: &SpringFactors, v_a: f64, v_b: f64) -> Mat6 {
    let mut k = unit_stiffness(bond, factors) * (bond.omega * bond.alpha * v_a * v_b);
    // symmetrize away round-off from the triple product
    for i in 0..6 {
        for j in i + 1..6 {
            let m = 0.5 * (k[(i, j)] + k[(j, i)]);
            k[(i, j)] = m;
            k[(j, i)] = m;
        }
    }
    k
}

pub fn bond_deformation(u_a: [f64; 3], u_b: [f64; 3], bond: &Bond) -> BondDeformation {
    let [a, b] = bond.direction;
    let l = bond.length;
    let (dx, dy) = (u_b[0] - u_a[0], u_b[1] - u_a[1]);
    BondDeformation {
        stretch: (a * dx + b * dy) / l,
        shear: (-b * dx + a * dy) / l + 0.5 * (u_a[2] + u_b[2]),
        rotation: u_b[2] - u_a[2],
    }
}

pub fn bond_forces(def: &BondDeformation, bond: &Bond, factors: &SpringFactors) -> BondForces {
    let scale = bond.omega * bond.alpha;
    BondForces {
        normal: scale * factors.normal * def.stretch,
        shear: scale * factors.shear * def.shear,
        moment: scale * factors.rotational * def.rotation,
    }
}

/// Energy of a bond from its deformation, `½ Ω α V_A V_B (l f_n s + l f_t γ + m_ϑ ϑ) / (Ω α)`.
pub fn deformation_energy(def: &BondDeformation, bond: &Bond, factors: &SpringFactors, v_a: f64, v_b: f64) -> f64 {
    let f = bond_forces(def, bond, factors);
    let l = bond.length;
    0.5 * v_a * v_b * (l * f.normal * def.stretch + l * f.shear * def.shear + f.moment * def.rotation)
}

/// `E_AB = ½ [u_A u_B] K_AB [u_A u_B]ᵀ`.
pub fn bond_energy(
    u_a: [f64; 3],
    u_b: [f64; 3],
    bond: &Bond,
    factors: &SpringFactors,
    v_a: f64,
    v_b: f64,
) -> f64 {
    deformation_energy(&bond_deformation(u_a, u_b, bond), bond, factors, v_a, v_b)
}

pub fn stack(u_a: [f64; 3], u_b: [f64; 3]) -> Vec6 {
    Vec6::new(u_a[0], u_a[1], u_a[2], u_b[0], u_b[1], u_b[2])
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn bond_along(direction: [f64; 2], length: f64) -> Bond {
        Bond {
            a: 0,
            b: 1,
            length,
            horizon: 1.0,
            direction,
            alpha: 1.0,
            omega: 1.0,
            s0: f64::INFINITY,
            broken: false,
        }
    }

    #[test]
    fn axis_aligned_rotation_is_identity() {
        assert_eq!(rotation_between([0.0, 0.0], [1.0, 0.0]).unwrap(), Mat6::identity());
        let r = rotation_between([0.0, 0.0], [0.0, 2.0]).unwrap();
        assert_eq!((r[(0, 0)], r[(0, 1)]), (0.0, 1.0));
        assert!(matches!(rotation_between([1.0, 1.0], [1.0, 1.0]), Err(Error::DegenerateBond)));
    }

    #[test]
    fn rotation_is_orthonormal() {
        for k in 0..12 {
            let t = 0.37 + k as f64 * 0.53;
            let r = rotation_matrix([t.cos(), t.sin()]);
            let err = (r.transpose() * r - Mat6::identity()).abs().max();
            assert!(err < 1e-14);
        }
    }

    #[test]
    fn kinematics_of_simple_motions() {
        let bond = bond_along([1.0, 0.0], 2.0);
        let d = bond_deformation([0.3, -0.2, 0.0], [0.3, -0.2, 0.0], &bond);
        assert_eq!(d, BondDeformation::default());
        let d = bond_deformation([0.0; 3], [0.01, 0.0, 0.0], &bond);
        assert_relative_eq!(d.stretch, 0.005);
        // rigid rotation under this sign convention
        let w = 0.02;
        let d = bond_deformation([0.0, 0.0, w], [0.0, -w * 2.0, w], &bond);
        assert_relative_eq!(d.shear, 0.0);
        assert_relative_eq!(d.rotation, 0.0);
    }

    #[test]
    fn matrix_and_direct_kinematics_agree() {
        let bond = bond_along([0.6, 0.8], 1.7);
        let (ua, ub) = ([0.1, -0.3, 0.05], [-0.2, 0.4, -0.01]);
        let m = kinematic_matrix(bond.length) * rotation_matrix(bond.direction) * stack(ua, ub);
        let d = bond_deformation(ua, ub, &bond);
        assert_relative_eq!(m[0], d.stretch, epsilon = 1e-15);
        assert_relative_eq!(m[1], d.shear, epsilon = 1e-15);
        assert_relative_eq!(m[2], d.rotation, epsilon = 1e-15);
    }

    #[test]
    fn spring_factor_substitutions() {
        let third = Material::plane_stress(1.0, 1.0 / 3.0, 1.0);
        let f = stiffness_factors(&third, 1.0, 0.5).unwrap();
        assert_relative_eq!(f.c, 9.0 / std::f64::consts::PI, max_relative = 1e-14);
        assert_eq!(f.shear, 0.0);
        assert_eq!(f.rotational, 0.0);

        let zero = Material::plane_stress(1.0, 0.0, 1.0);
        let f = stiffness_factors(&zero, 1.0, 0.5).unwrap();
        assert_relative_eq!(f.c, 6.0 / std::f64::consts::PI, max_relative = 1e-14);
        assert_relative_eq!(f.d, 1.0 / (6.0 * std::f64::consts::PI), max_relative = 1e-14);
        assert_relative_eq!(f.shear, 12.0 * f.d / 0.25, max_relative = 1e-14);
        assert_relative_eq!(f.rotational, f.d / 0.5, max_relative = 1e-14);

        let half = stiffness_factors(&zero, 0.5, 0.5).unwrap();
        assert_relative_eq!(half.c, 8.0 * f.c, max_relative = 1e-14);
        assert_relative_eq!(half.d, 2.0 * f.d, max_relative = 1e-14);
    }

    #[test]
    fn poisson_limits() {
        let m = Material::plane_stress(1.0, 0.4, 1.0);
        assert!(matches!(stiffness_factors(&m, 1.0, 0.5), Err(Error::NegativeRotationalStiffness { .. })));
        let m = Material::plane_strain(1.0, 0.3, 1.0);
        assert!(matches!(stiffness_factors(&m, 1.0, 0.5), Err(Error::NegativeRotationalStiffness { .. })));
        let m = Material::plane_strain(1.0, 0.5, 1.0);
        assert!(matches!(stiffness_factors(&m, 1.0, 0.5), Err(Error::SingularMaterial(_))));
        let m = Material::plane_stress(1.0, 1.0, 1.0);
        assert!(matches!(stiffness_factors(&m, 1.0, 0.5), Err(Error::SingularMaterial(_))));
    }

    #[test]
    fn length_correction_values() {
        assert_eq!(length_correction(1.0, 1.0, 2.0, 1.0, 3.0), 1.0);
        assert_relative_eq!(length_correction(2.0, 1.0, 2.0, 1.0, 2.0), (-1.0f64).exp());
        assert_eq!(length_correction(1.5, 1.5, 1.5, 1.5, 1.5), 1.0);
        // shorter bonds weigh more
        assert!(length_correction(1.2, 1.0, 2.0, 1.0, 2.0) > length_correction(1.8, 1.0, 2.0, 1.0, 2.0));
    }

    #[test]
    fn stiffness_is_linear_in_omega() {
        let m = Material::plane_stress(30e9, 0.2, 3e6);
        let mut bond = bond_along([0.28, 0.96], 0.003);
        bond.alpha = 0.8;
        let f = stiffness_factors(&m, 0.006, bond.length).unwrap();
        let k1 = element_stiffness(&bond, &f, 2e-6, 3e-6);
        bond.omega = 2.0;
        let k2 = element_stiffness(&bond, &f, 2e-6, 3e-6);
        assert!((k2 - 2.0 * k1).abs().max() <= 1e-12 * k1.abs().max());
    }

    #[test]
    fn axial_energy_closed_form() {
        let m = Material::plane_stress(10.0, 0.1, 1.0);
        let mut bond = bond_along([0.0, 1.0], 0.5);
        bond.omega = 1.3;
        bond.alpha = 0.7;
        let f = stiffness_factors(&m, 1.2, bond.length).unwrap();
        let (va, vb, delta) = (0.2, 0.3, 1e-3);
        let e = bond_energy([0.0; 3], [0.0, delta, 0.0], &bond, &f, va, vb);
        let expect = 0.5 * 1.3 * 0.7 * va * vb * f.normal * delta * delta / bond.length;
        assert_relative_eq!(e, expect, max_relative = 1e-14);
        let e2 = bond_energy([0.0; 3], [0.0, 2.0 * delta, 0.0], &bond, &f, va, vb);
        assert_relative_eq!(e2, 4.0 * e, max_relative = 1e-14);
    }

    #[test]
    fn forces_scale_with_omega() {
        let m = Material::plane_stress(1.0, 0.2, 1.0);
        let mut bond = bond_along([1.0, 0.0], 1.0);
        let f = stiffness_factors(&m, 2.0, 1.0).unwrap();
        let def = BondDeformation { stretch: 0.1, shear: -0.2, rotation: 0.05 };
        let f1 = bond_forces(&def, &bond, &f);
        bond.omega = 2.0;
        let f2 = bond_forces(&def, &bond, &f);
        assert_relative_eq!(f2.normal, 2.0 * f1.normal);
        assert_relative_eq!(f2.shear, 2.0 * f1.shear);
        assert_relative_eq!(f2.moment, 2.0 * f1.moment);
        assert_eq!(bond_forces(&BondDeformation::default(), &bond, &f), BondForces::default());
    }
}
