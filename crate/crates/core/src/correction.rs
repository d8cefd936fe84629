//! Iterative domain correction of the bond stiffness.
//!
//! Two affine probes, `u_x = εx` and `u_y = εy`, are applied analytically to
//! every point. The trial energy density they produce at each point is
//! compared with the classical value and every bond's Ω is rescaled until the
//! sum of changes falls below the threshold.

use serde::{Deserialize, Serialize};

use crate::bond::{self, BondDeformation};
use crate::error::{Error, Result};
use crate::horizon::Bond;
use crate::material::{Material, PlaneMode};
use crate::model::Model;

/// How the ratio `p` between target and trial densities is formed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RatioConvention {
    /// `p = ½ (e/ẽ_A + e/ẽ_B)`.
    #[default]
    Energy,
    /// `p = ½ (ε/ẽ_A + ε/ẽ_B)`, kept for compatibility. Not dimensionless.
    Literal,
}

impl RatioConvention {
    pub fn as_str(self) -> &'static str {
        match self {
            RatioConvention::Energy => "energy",
            RatioConvention::Literal => "literal",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CorrectionSettings {
    pub probe_strain: f64,
    /// Stop once Σ|ΔΩ| over all bonds drops below this.
    pub tolerance: f64,
    pub max_passes: usize,
    pub convention: RatioConvention,
}

impl Default for CorrectionSettings {
    fn default() -> Self {
        CorrectionSettings { probe_strain: 1e-3, tolerance: 1e-3, max_passes: 100, convention: RatioConvention::Energy }
    }
}

impl CorrectionSettings {
    pub fn validate(&self) -> Result<()> {
        if !(self.probe_strain > 0.0 && self.probe_strain.is_finite()) {
            return Err(Error::config("correction.probe_strain", "must be positive"));
        }
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return Err(Error::config("correction.tolerance", "must be positive"));
        }
        if self.max_passes == 0 {
            return Err(Error::config("correction.max_passes", "must be at least 1"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Probe {
    X,
    Y,
}

impl Probe {
    pub fn axis(self) -> char {
        match self {
            Probe::X => 'x',
            Probe::Y => 'y',
        }
    }
}

/// Classical strain energy density under a uniaxial strain `ε`.
pub fn target_energy_density(material: &Material, strain: f64) -> Result<f64> {
    let (e, nu) = (material.youngs_modulus, material.poisson_ratio);
    match material.plane {
        PlaneMode::Stress => {
            let den = 1.0 - nu * nu;
            if den == 0.0 {
                return Err(Error::SingularMaterial(format!("plane stress with nu = {nu}")));
            }
            Ok(e * strain * strain / (2.0 * den))
        }
        PlaneMode::Strain => {
            let den = (1.0 + nu) * (1.0 - 2.0 * nu);
            if den == 0.0 {
                return Err(Error::SingularMaterial(format!("plane strain with nu = {nu}")));
            }
            Ok(e * (1.0 - nu) * strain * strain / (2.0 * den))
        }
    }
}

/// Deformation of a bond under an affine probe, rotations zero.
pub fn probe_deformation(bond: &Bond, probe: Probe, strain: f64) -> BondDeformation {
    let [a, b] = bond.direction;
    match probe {
        Probe::X => BondDeformation { stretch: strain * a * a, shear: -strain * a * b, rotation: 0.0 },
        Probe::Y => BondDeformation { stretch: strain * b * b, shear: strain * a * b, rotation: 0.0 },
    }
}

/// Displacement field of an affine probe, `[u_x, u_y, m]` per point.
pub fn probe_field(model: &Model, probe: Probe, strain: f64) -> Vec<f64> {
    let mut u = vec![0.0; model.n_dofs()];
    for (i, p) in model.points().iter().enumerate() {
        match probe {
            Probe::X => u[3 * i] = strain * p.x,
            Probe::Y => u[3 * i + 1] = strain * p.y,
        }
    }
    u
}

/// Trial energy density at one point for an arbitrary displacement field,
/// `ẽ_A = ¼ Σ_B uᵀ K_AB u / V_A` over the intact incident bonds.
pub fn trial_energy_density(model: &Model, point: usize, u: &[f64]) -> f64 {
    let v = model.points()[point].volume;
    model
        .incident(point)
        .iter()
        .filter(|&&k| !model.bonds()[k].broken)
        .map(|&k| 2.0 * model.bond_energy(k, u))
        .sum::<f64>()
        / (4.0 * v)
}

/// Trial densities of every point under one probe, from the closed-form
/// probe deformations.
pub fn probe_densities(model: &Model, probe: Probe, strain: f64) -> Vec<f64> {
    let points = model.points();
    let mut dens = vec![0.0; points.len()];
    for (k, b) in model.bonds().iter().enumerate() {
        if b.broken {
            continue;
        }
        let def = probe_deformation(b, probe, strain);
        let (va, vb) = (points[b.a].volume, points[b.b].volume);
        let e2 = 2.0 * bond::deformation_energy(&def, b, model.factors(k), va, vb);
        dens[b.a] += e2 / (4.0 * va);
        dens[b.b] += e2 / (4.0 * vb);
    }
    dens
}

fn ratio(numerator: f64, trial_a: f64, trial_b: f64) -> f64 {
    0.5 * (numerator / trial_a + numerator / trial_b)
}

/// One correction pass. All densities are taken from the current Ω before
/// any bond is updated. Returns Σ|ΔΩ|.
pub fn correction_pass(model: &mut Model, settings: &CorrectionSettings) -> Result<f64> {
    let eps = settings.probe_strain;
    let numerator = match settings.convention {
        RatioConvention::Energy => target_energy_density(model.material(), eps)?,
        RatioConvention::Literal => eps,
    };
    let dx = probe_densities(model, Probe::X, eps);
    let dy = probe_densities(model, Probe::Y, eps);
    let mut change = 0.0;
    for b in model.bonds_mut().iter_mut() {
        let [ca, cb] = b.direction;
        let mut denom = 0.0;
        for (cos, dens, probe) in [(ca, &dx, Probe::X), (cb, &dy, Probe::Y)] {
            if cos == 0.0 {
                continue;
            }
            for p in [b.a, b.b] {
                if !(dens[p] > 0.0) {
                    return Err(Error::CorrectionSingularity { point: p, axis: probe.axis() });
                }
            }
            let p = ratio(numerator, dens[b.a], dens[b.b]);
            denom += (cos / p).powi(2);
        }
        let updated = b.omega / denom.sqrt();
        change += (updated - b.omega).abs();
        b.omega = updated;
    }
    Ok(change)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorrectionReport {
    pub passes: usize,
    /// Σ|ΔΩ| after each pass.
    pub residuals: Vec<f64>,
    pub omega_min: f64,
    pub omega_max: f64,
    pub convention: RatioConvention,
}

/// Runs passes until the change sum drops below the tolerance. Ω is left at
/// the last pass's values.
pub fn run_correction(model: &mut Model, settings: &CorrectionSettings) -> Result<CorrectionReport> {
    settings.validate()?;
    let mut residuals: Vec<f64> = Vec::new();
    loop {
        let r = correction_pass(model, settings)?;
        residuals.push(r);
        log::debug!("correction pass {}: sum |dOmega| = {r:e}", residuals.len());
        if !r.is_finite() {
            return Err(Error::CorrectionDiverged { residuals });
        }
        if r < settings.tolerance {
            break;
        }
        let n = residuals.len();
        if n > 5 && r > 10.0 * residuals[n - 6] {
            return Err(Error::CorrectionDiverged { residuals });
        }
        if n >= settings.max_passes {
            return Err(Error::CorrectionNotConverged { residuals });
        }
    }
    let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
    for b in model.bonds() {
        lo = lo.min(b.omega);
        hi = hi.max(b.omega);
    }
    let report = CorrectionReport {
        passes: residuals.len(),
        residuals,
        omega_min: lo,
        omega_max: hi,
        convention: settings.convention,
    };
    log::info!(
        "domain correction converged in {} passes, omega in [{:.4}, {:.4}]",
        report.passes,
        report.omega_min,
        report.omega_max
    );
    Ok(report)
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use approx::assert_relative_eq;

    use super::*;
    use crate::mesh::MaterialPoint;
    use crate::model::{square_lattice, ModelConfig};

    fn pair(dx: f64, dy: f64) -> Model {
        let pt = |x, y, id| MaterialPoint { node_id: id, x, y, volume: 0.5, d_min: 0.0, horizon: 0.0 };
        let pts = vec![pt(0.0, 0.0, 1), pt(dx, dy, 2)];
        let cfg = ModelConfig::new(Material::plane_stress(2.0, 0.1, 1.0), 1.5);
        Model::from_points(pts, BTreeMap::new(), &cfg, &[]).unwrap()
    }

    #[test]
    fn target_density_values() {
        let m = Material::plane_stress(1.0, 0.0, 1.0);
        assert_relative_eq!(target_energy_density(&m, 1.0).unwrap(), 0.5);
        let m = Material::plane_stress(30e9, 0.2, 1.0);
        assert_relative_eq!(target_energy_density(&m, 1e-3).unwrap(), 15625.0, max_relative = 1e-12);
        let e1 = target_energy_density(&m, 1e-3).unwrap();
        assert_relative_eq!(target_energy_density(&m, 2e-3).unwrap(), 4.0 * e1, max_relative = 1e-14);
        let s = Material::plane_strain(1.0, 0.25, 1.0);
        assert_relative_eq!(target_energy_density(&s, 1.0).unwrap(), 0.75 / (2.0 * 1.25 * 0.5));
    }

    #[test]
    fn probe_closed_form_matches_field() {
        let model = pair(0.6, 0.8);
        for probe in [Probe::X, Probe::Y] {
            let u = probe_field(&model, probe, 1e-3);
            let from_field = model.bond_deformation(0, &u);
            let closed = probe_deformation(&model.bonds()[0], probe, 1e-3);
            assert_relative_eq!(from_field.stretch, closed.stretch, max_relative = 1e-12);
            assert_relative_eq!(from_field.shear, closed.shear, max_relative = 1e-12);
            let dens = probe_densities(&model, probe, 1e-3);
            assert_relative_eq!(dens[0], trial_energy_density(&model, 0, &u), max_relative = 1e-12);
        }
    }

    #[test]
    fn single_x_bond_density() {
        let model = pair(1.0, 0.0);
        let b = &model.bonds()[0];
        let f = model.factors(0);
        let eps = 1e-3;
        let dens = probe_densities(&model, Probe::X, eps);
        let expect = 0.25 * b.omega * b.alpha * 0.5 * f.normal * b.length * eps * eps;
        assert_relative_eq!(dens[0], expect, max_relative = 1e-12);
        assert_eq!(probe_densities(&model, Probe::Y, eps)[0], 0.0);
    }

    #[test]
    fn single_bond_converges_in_two_passes() {
        let mut model = pair(1.0, 0.0);
        let settings = CorrectionSettings::default();
        let report = run_correction(&mut model, &settings).unwrap();
        assert!(report.passes <= 2, "{report:?}");
        let target = target_energy_density(model.material(), settings.probe_strain).unwrap();
        let dens = probe_densities(&model, Probe::X, settings.probe_strain);
        assert_relative_eq!(dens[0], target, max_relative = 1e-12);
    }

    #[test]
    fn twice_the_target_halves_omega() {
        let mut model = pair(1.0, 0.0);
        let settings = CorrectionSettings::default();
        let target = target_energy_density(model.material(), settings.probe_strain).unwrap();
        let dens = probe_densities(&model, Probe::X, settings.probe_strain)[0];
        model.set_domain_corrections(&[2.0 * target / dens]).unwrap();
        let before = model.bonds()[0].omega;
        correction_pass(&mut model, &settings).unwrap();
        assert_relative_eq!(model.bonds()[0].omega, 0.5 * before, max_relative = 1e-12);
    }

    #[test]
    fn fixed_point_has_zero_change() {
        let mut model = pair(1.0, 0.0);
        let settings = CorrectionSettings::default();
        correction_pass(&mut model, &settings).unwrap();
        assert!(correction_pass(&mut model, &settings).unwrap() < 1e-12);
    }

    #[test]
    fn omega_is_independent_of_probe_magnitude() {
        let cfg = ModelConfig::new(Material::plane_stress(1.0, 0.2, 1.0), 2.5);
        let build = || Model::from_points(square_lattice(6, 5, 0.1, 1.0), BTreeMap::new(), &cfg, &[]).unwrap();
        let (mut m1, mut m2) = (build(), build());
        let s1 = CorrectionSettings::default();
        let s2 = CorrectionSettings { probe_strain: 0.05, ..s1 };
        run_correction(&mut m1, &s1).unwrap();
        run_correction(&mut m2, &s2).unwrap();
        for (a, b) in m1.bonds().iter().zip(m2.bonds()) {
            assert_relative_eq!(a.omega, b.omega, max_relative = 1e-9);
        }
    }

    #[test]
    fn literal_mode_runs() {
        let mut model = pair(1.0, 0.0);
        let settings = CorrectionSettings { convention: RatioConvention::Literal, ..Default::default() };
        run_correction(&mut model, &settings).unwrap();
        let dens = probe_densities(&model, Probe::X, settings.probe_strain);
        assert_relative_eq!(dens[0], settings.probe_strain, max_relative = 1e-12);
    }
}
