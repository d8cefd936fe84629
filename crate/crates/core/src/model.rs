//! The assembled point set, bond graph and material on which correction and
//! solving run.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::bond::{self, BondDeformation, Mat6, SpringFactors};
use crate::error::{Error, Result};
use crate::horizon::{self, Bond, Segment};
use crate::material::Material;
use crate::mesh::{self, MaterialPoint, Mesh};

/// Degrees of freedom carried by every point.
pub const DOFS_PER_POINT: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelConfig {
    pub material: Material,
    /// Non-local factor λ, horizon = λ·d_min.
    pub lambda: f64,
}

impl ModelConfig {
    pub fn new(material: Material, lambda: f64) -> Self {
        ModelConfig { material, lambda }
    }

    pub fn validate(&self) -> Result<()> {
        self.material.validate()?;
        if !(self.lambda >= 1.0 && self.lambda.is_finite()) {
            return Err(Error::config("lambda", format!("must be at least 1, got {}", self.lambda)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct Model {
    material: Material,
    lambda: f64,
    points: Vec<MaterialPoint>,
    bonds: Vec<Bond>,
    factors: Vec<SpringFactors>,
    incident_start: Vec<usize>,
    incident: Vec<usize>,
    groups: BTreeMap<String, Vec<usize>>,
    isolated: Vec<usize>,
    slot_bonds_removed: usize,
}

impl Model {
    /// Lumps the mesh into points and builds the bond graph.
    pub fn from_mesh(mesh: &Mesh, config: &ModelConfig, slots: &[Segment]) -> Result<Model> {
        config.validate()?;
        let points = mesh::lump_volumes(mesh, config.material.thickness)?;
        let groups = mesh.groups().iter().map(|g| (g.name.clone(), g.nodes.clone())).collect();
        Model::from_points(points, groups, config, slots)
    }

    /// Builds a model from points with positions and volumes already set.
    /// Nearest distances and horizons are recomputed.
    pub fn from_points(
        mut points: Vec<MaterialPoint>,
        groups: BTreeMap<String, Vec<usize>>,
        config: &ModelConfig,
        slots: &[Segment],
    ) -> Result<Model> {
        config.validate()?;
        for (i, p) in points.iter().enumerate() {
            if !(p.volume > 0.0 && p.volume.is_finite()) {
                return Err(Error::MeshIntegrity(format!("point {i} has non-positive volume {}", p.volume)));
            }
        }
        for (name, members) in &groups {
            if let Some(&bad) = members.iter().find(|&&i| i >= points.len()) {
                return Err(Error::MeshIntegrity(format!("group `{name}` references point {bad}")));
            }
        }
        horizon::nearest_distances(&mut points)?;
        horizon::assign_horizons(&mut points, config.lambda)?;
        let mut bonds = horizon::build_bonds(&points)?;
        let slot_bonds_removed = horizon::remove_slot_bonds(&points, &mut bonds, slots);
        bond::assign_length_corrections(points.len(), &mut bonds);
        let factors = bonds
            .iter()
            .map(|b| bond::stiffness_factors(&config.material, b.horizon, b.length))
            .collect::<Result<Vec<_>>>()?;

        let mut incident_start = vec![0usize; points.len() + 1];
        for b in &bonds {
            incident_start[b.a + 1] += 1;
            incident_start[b.b + 1] += 1;
        }
        for i in 0..points.len() {
            incident_start[i + 1] += incident_start[i];
        }
        let mut fill = incident_start.clone();
        let mut incident = vec![0usize; incident_start[points.len()]];
        for (k, b) in bonds.iter().enumerate() {
            for p in [b.a, b.b] {
                incident[fill[p]] = k;
                fill[p] += 1;
            }
        }
        let isolated = horizon::isolated_points(points.len(), &bonds);
        if !isolated.is_empty() {
            log::warn!("{} point(s) have no bonds, their dofs will be pinned", isolated.len());
        }
        Ok(Model {
            material: config.material,
            lambda: config.lambda,
            points,
            bonds,
            factors,
            incident_start,
            incident,
            groups,
            isolated,
            slot_bonds_removed,
        })
    }

    pub fn material(&self) -> &Material {
        &self.material
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn points(&self) -> &[MaterialPoint] {
        &self.points
    }

    pub fn bonds(&self) -> &[Bond] {
        &self.bonds
    }

    pub fn factors(&self, bond: usize) -> &SpringFactors {
        &self.factors[bond]
    }

    /// Ids of the bonds attached to `point`, in increasing order.
    pub fn incident(&self, point: usize) -> &[usize] {
        &self.incident[self.incident_start[point]..self.incident_start[point + 1]]
    }

    pub fn group(&self, name: &str) -> Option<&[usize]> {
        self.groups.get(name).map(Vec::as_slice)
    }

    pub fn groups(&self) -> &BTreeMap<String, Vec<usize>> {
        &self.groups
    }

    /// Points without any bond.
    pub fn isolated(&self) -> &[usize] {
        &self.isolated
    }

    pub fn slot_bonds_removed(&self) -> usize {
        self.slot_bonds_removed
    }

    pub fn n_dofs(&self) -> usize {
        DOFS_PER_POINT * self.points.len()
    }

    pub fn broken_count(&self) -> usize {
        self.bonds.iter().filter(|b| b.broken).count()
    }

    pub(crate) fn bonds_mut(&mut self) -> &mut [Bond] {
        &mut self.bonds
    }

    /// Replaces every domain correction factor. Critical stretches must be
    /// reassigned afterwards.
    pub fn set_domain_corrections(&mut self, omegas: &[f64]) -> Result<()> {
        if omegas.len() != self.bonds.len() {
            return Err(Error::config("omega", format!("expected {} values, got {}", self.bonds.len(), omegas.len())));
        }
        if let Some(k) = omegas.iter().position(|w| !(*w > 0.0 && w.is_finite())) {
            return Err(Error::InvalidBond { bond: k, message: format!("domain correction {} is not positive", omegas[k]) });
        }
        for (b, &w) in self.bonds.iter_mut().zip(omegas) {
            b.omega = w;
        }
        Ok(())
    }

    /// Marks every bond as intact again.
    pub fn reset_damage(&mut self) {
        self.bonds.iter_mut().for_each(|b| b.broken = false);
    }

    /// Marks one bond as broken, e.g. to seed damage before a run.
    pub fn break_bond(&mut self, bond: usize) {
        self.bonds[bond].broken = true;
    }

    fn end_dofs(&self, bond: usize, u: &[f64]) -> ([f64; 3], [f64; 3]) {
        let b = &self.bonds[bond];
        let at = |p: usize| [u[3 * p], u[3 * p + 1], u[3 * p + 2]];
        (at(b.a), at(b.b))
    }

    /// Global dof indices of a bond, in element matrix order.
    pub fn bond_dofs(&self, bond: usize) -> [usize; 6] {
        let b = &self.bonds[bond];
        [3 * b.a, 3 * b.a + 1, 3 * b.a + 2, 3 * b.b, 3 * b.b + 1, 3 * b.b + 2]
    }

    pub fn element_stiffness(&self, bond: usize) -> Mat6 {
        let b = &self.bonds[bond];
        bond::element_stiffness(b, &self.factors[bond], self.points[b.a].volume, self.points[b.b].volume)
    }

    pub fn bond_deformation(&self, bond: usize, u: &[f64]) -> BondDeformation {
        let (ua, ub) = self.end_dofs(bond, u);
        bond::bond_deformation(ua, ub, &self.bonds[bond])
    }

    /// Energy stored in one bond, regardless of its broken flag.
    pub fn bond_energy(&self, bond: usize, u: &[f64]) -> f64 {
        let b = &self.bonds[bond];
        let (ua, ub) = self.end_dofs(bond, u);
        bond::bond_energy(ua, ub, b, &self.factors[bond], self.points[b.a].volume, self.points[b.b].volume)
    }

    /// Total elastic energy, summed over intact bonds.
    pub fn total_energy(&self, u: &[f64]) -> f64 {
        (0..self.bonds.len()).filter(|&k| !self.bonds[k].broken).map(|k| self.bond_energy(k, u)).sum()
    }

    pub fn stats(&self) -> ModelStats {
        let n = self.points.len();
        let (mut h_min, mut h_max) = (f64::INFINITY, 0.0f64);
        let (mut d_min, mut d_max) = (f64::INFINITY, 0.0f64);
        for p in &self.points {
            h_min = h_min.min(p.horizon);
            h_max = h_max.max(p.horizon);
            d_min = d_min.min(p.d_min);
            d_max = d_max.max(p.d_min);
        }
        ModelStats {
            points: n,
            bonds: self.bonds.len(),
            broken: self.broken_count(),
            mean_bonds_per_point: 2.0 * self.bonds.len() as f64 / n.max(1) as f64,
            d_min: [d_min, d_max],
            horizon: [h_min, h_max],
            total_volume: self.points.iter().map(|p| p.volume).sum(),
            isolated: self.isolated.len(),
            slot_bonds_removed: self.slot_bonds_removed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModelStats {
    pub points: usize,
    pub bonds: usize,
    pub broken: usize,
    pub mean_bonds_per_point: f64,
    /// Smallest and largest nearest-neighbour distance.
    pub d_min: [f64; 2],
    /// Smallest and largest point horizon.
    pub horizon: [f64; 2],
    pub total_volume: f64,
    pub isolated: usize,
    pub slot_bonds_removed: usize,
}

/// Points on a regular square lattice, each carrying `spacing² · thickness`.
pub fn square_lattice(nx: usize, ny: usize, spacing: f64, thickness: f64) -> Vec<MaterialPoint> {
    let mut points = Vec::with_capacity(nx * ny);
    for j in 0..ny {
        for i in 0..nx {
            points.push(MaterialPoint {
                node_id: (j * nx + i + 1) as u64,
                x: i as f64 * spacing,
                y: j as f64 * spacing,
                volume: spacing * spacing * thickness,
                d_min: 0.0,
                horizon: 0.0,
            });
        }
    }
    points
}
