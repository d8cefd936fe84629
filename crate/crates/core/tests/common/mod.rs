#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::PathBuf;

use nhpd::horizon::Bond;
use nhpd::{Material, MaterialPoint, Model, ModelConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn mesh_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("meshes").join(name)
}

pub fn config_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("configs").join(name)
}

pub fn concrete() -> Material {
    Material::plane_stress(30e9, 0.2, 3.81e6)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform random points in the unit square with random volumes.
pub fn random_points(n: usize, seed: u64) -> Vec<MaterialPoint> {
    let mut r = rng(seed);
    (0..n)
        .map(|i| MaterialPoint {
            node_id: i as u64 + 1,
            x: r.gen(),
            y: r.gen(),
            volume: r.gen_range(0.5..1.5) * 1e-3,
            d_min: 0.0,
            horizon: 0.0,
        })
        .collect()
}

pub fn model_from(points: Vec<MaterialPoint>, lambda: f64) -> Model {
    Model::from_points(points, BTreeMap::new(), &ModelConfig::new(concrete(), lambda), &[]).unwrap()
}

/// All-pairs nearest distance.
pub fn brute_nearest(points: &[MaterialPoint]) -> Vec<f64> {
    points
        .iter()
        .enumerate()
        .map(|(i, p)| {
            points
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, q)| p.distance(q))
                .fold(f64::INFINITY, f64::min)
        })
        .collect()
}

/// All-pairs bond list as sorted `(a, b)` pairs with `a < b`.
pub fn brute_pairs(points: &[MaterialPoint]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let d = points[i].distance(&points[j]);
            if d < points[i].horizon.max(points[j].horizon) {
                out.push((i, j));
            }
        }
    }
    out
}

pub fn pairs(bonds: &[Bond]) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = bonds.iter().map(|b| (b.a.min(b.b), b.a.max(b.b))).collect();
    out.sort_unstable();
    out
}
