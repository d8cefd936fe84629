//! Global stiffness over `3N` dofs, stored as the lower triangle in
//! compressed-column form.
//!
//! The pattern covers every bond of the model, broken or not, plus the full
//! diagonal, so it never changes during a run. Broken bonds simply stop
//! contributing values.

use nalgebra::DMatrix;

use crate::bond::Mat6;
use crate::model::Model;

const NO_SLOT: u32 = u32::MAX;

#[derive(Debug, Clone)]
pub struct GlobalStiffness {
    n: usize,
    col_ptr: Vec<usize>,
    row_idx: Vec<usize>,
    values: Vec<f64>,
    /// Per bond, the value slot of each of the 36 element entries that lands
    /// in the lower triangle. Mirror entries above the diagonal are skipped.
    slots: Vec<[u32; 36]>,
}

impl GlobalStiffness {
    /// Builds the pattern for `model` with all values zero.
    pub fn new(model: &Model) -> Self {
        let np = model.points().len();
        let n = 3 * np;
        let mut neighbours: Vec<Vec<usize>> = (0..np).map(|p| vec![p]).collect();
        for b in model.bonds() {
            let (lo, hi) = if b.a < b.b { (b.a, b.b) } else { (b.b, b.a) };
            neighbours[lo].push(hi);
        }
        for list in &mut neighbours {
            list.sort_unstable();
            list.dedup();
        }
        let mut col_ptr = Vec::with_capacity(n + 1);
        let mut row_idx = Vec::new();
        col_ptr.push(0);
        for p in 0..np {
            for kc in 0..3 {
                for &q in &neighbours[p] {
                    let first = if q == p { kc } else { 0 };
                    for kr in first..3 {
                        row_idx.push(3 * q + kr);
                    }
                }
                col_ptr.push(row_idx.len());
            }
        }
        let mut k = GlobalStiffness { n, col_ptr, row_idx, values: Vec::new(), slots: Vec::new() };
        k.values = vec![0.0; k.row_idx.len()];
        k.slots = (0..model.bonds().len())
            .map(|bond| {
                let dofs = model.bond_dofs(bond);
                let mut slots = [NO_SLOT; 36];
                for r in 0..6 {
                    for c in 0..6 {
                        if dofs[r] >= dofs[c] {
                            let slot = k.slot(dofs[r], dofs[c]).expect("pattern covers every bond");
                            slots[6 * r + c] = slot as u32;
                        }
                    }
                }
                slots
            })
            .collect();
        k
    }

    fn slot(&self, row: usize, col: usize) -> Option<usize> {
        let range = self.col_ptr[col]..self.col_ptr[col + 1];
        self.row_idx[range.clone()].binary_search(&row).ok().map(|i| range.start + i)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn col_ptr(&self) -> &[usize] {
        &self.col_ptr
    }

    pub fn row_idx(&self) -> &[usize] {
        &self.row_idx
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Entry `(i, j)` of the full symmetric matrix.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        let (r, c) = if i >= j { (i, j) } else { (j, i) };
        self.slot(r, c).map_or(0.0, |s| self.values[s])
    }

    /// Sums the element matrices of all intact bonds, bond by bond in id
    /// order. `elements[k]` is the stiffness of bond `k`.
    pub fn assemble(&mut self, model: &Model, elements: &[Mat6]) {
        self.values.iter_mut().for_each(|v| *v = 0.0);
        for (k, b) in model.bonds().iter().enumerate() {
            if b.broken {
                continue;
            }
            let ke = &elements[k];
            for (flat, &slot) in self.slots[k].iter().enumerate() {
                if slot != NO_SLOT {
                    // nalgebra storage is column-major, flat = 6 r + c
                    self.values[slot as usize] += ke[(flat / 6, flat % 6)];
                }
            }
        }
    }

    /// `K u` using the symmetric lower storage.
    pub fn mul(&self, u: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.n];
        for j in 0..self.n {
            for s in self.col_ptr[j]..self.col_ptr[j + 1] {
                let i = self.row_idx[s];
                let v = self.values[s];
                out[i] += v * u[j];
                if i != j {
                    out[j] += v * u[i];
                }
            }
        }
        out
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.n).map(|j| self.values[self.col_ptr[j]]).collect()
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let mut d = DMatrix::zeros(self.n, self.n);
        for j in 0..self.n {
            for s in self.col_ptr[j]..self.col_ptr[j + 1] {
                let i = self.row_idx[s];
                d[(i, j)] = self.values[s];
                d[(j, i)] = self.values[s];
            }
        }
        d
    }
}

/// Assembles the global stiffness of the intact bonds.
pub fn assemble(model: &Model) -> GlobalStiffness {
    let elements: Vec<Mat6> = (0..model.bonds().len()).map(|k| model.element_stiffness(k)).collect();
    let mut k = GlobalStiffness::new(model);
    k.assemble(model, &elements);
    k
}

/// Dense reference assembly, scattering every full element matrix.
pub fn assemble_dense(model: &Model) -> DMatrix<f64> {
    let n = model.n_dofs();
    let mut k = DMatrix::zeros(n, n);
    for (bond, b) in model.bonds().iter().enumerate() {
        if b.broken {
            continue;
        }
        let ke = model.element_stiffness(bond);
        let dofs = model.bond_dofs(bond);
        for r in 0..6 {
            for c in 0..6 {
                k[(dofs[r], dofs[c])] += ke[(r, c)];
            }
        }
    }
    k
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::material::Material;
    use crate::mesh::MaterialPoint;
    use crate::model::{square_lattice, ModelConfig};

    fn lattice() -> Model {
        let cfg = ModelConfig::new(Material::plane_stress(30e9, 0.2, 3e6), 2.2);
        Model::from_points(square_lattice(4, 3, 0.01, 1.0), BTreeMap::new(), &cfg, &[]).unwrap()
    }

    #[test]
    fn single_bond_matches_element() {
        let pt = |x, id| MaterialPoint { node_id: id, x, y: 0.0, volume: 1.0, d_min: 0.0, horizon: 0.0 };
        let cfg = ModelConfig::new(Material::plane_stress(1.0, 0.2, 1.0), 1.5);
        let model = Model::from_points(vec![pt(0.0, 1), pt(1.0, 2)], BTreeMap::new(), &cfg, &[]).unwrap();
        let k = assemble(&model).to_dense();
        let ke = model.element_stiffness(0);
        for r in 0..6 {
            for c in 0..6 {
                assert_eq!(k[(r, c)], ke[(r, c)]);
            }
        }
    }

    #[test]
    fn sparse_equals_dense() {
        let model = lattice();
        let sparse = assemble(&model).to_dense();
        let dense = assemble_dense(&model);
        let scale = dense.amax();
        assert!((sparse - dense).amax() <= 1e-12 * scale);
    }

    #[test]
    fn product_matches_dense() {
        let model = lattice();
        let k = assemble(&model);
        let u: Vec<f64> = (0..k.dim()).map(|i| ((i * 7919) % 13) as f64 * 1e-4 - 6e-4).collect();
        let ku = k.mul(&u);
        let dense = k.to_dense() * nalgebra::DVector::from_column_slice(&u);
        for i in 0..k.dim() {
            assert!((ku[i] - dense[i]).abs() <= 1e-9 * dense.amax());
        }
    }

    #[test]
    fn all_broken_is_zero() {
        let mut model = lattice();
        for k in 0..model.bonds().len() {
            model.break_bond(k);
        }
        assert!(assemble(&model).values().iter().all(|&v| v == 0.0));
    }
}
