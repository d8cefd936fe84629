mod common;

use common::{model_from, random_points};
use nhpd::solver::{assemble, assemble_dense};

#[test]
fn sparse_assembly_equals_dense_on_small_models() {
    for (n, seed) in [(12, 10), (30, 11), (50, 12)] {
        let mut model = model_from(random_points(n, seed), 2.5);
        let omegas: Vec<f64> = (0..model.bonds().len()).map(|k| 0.5 + (k % 7) as f64 * 0.3).collect();
        model.set_domain_corrections(&omegas).unwrap();
        let dense = assemble_dense(&model);
        let sparse = assemble(&model).to_dense();
        let scale = dense.amax();
        for i in 0..dense.nrows() {
            for j in 0..dense.ncols() {
                assert!((dense[(i, j)] - sparse[(i, j)]).abs() <= 1e-12 * scale, "entry ({i}, {j})");
            }
        }
    }
}

#[test]
fn global_stiffness_has_three_rigid_modes() {
    let model = model_from(random_points(25, 13), 3.0);
    let k = assemble_dense(&model);
    let eig = nalgebra::SymmetricEigen::new(k).eigenvalues;
    let top = eig.amax();
    assert!(eig.iter().all(|&v| v >= -1e-9 * top));
    assert_eq!(eig.iter().filter(|v| v.abs() <= 1e-9 * top).count(), 3);
}
