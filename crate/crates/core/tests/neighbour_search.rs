mod common;

use common::{brute_nearest, brute_pairs, pairs, random_points};
use nhpd::horizon::{assign_horizons, build_bonds, nearest_distances};

#[test]
fn grid_matches_all_pairs_on_random_clouds() {
    for (n, seed) in [(500, 1), (1000, 2)] {
        let mut points = random_points(n, seed);
        nearest_distances(&mut points).unwrap();
        let brute = brute_nearest(&points);
        for (p, d) in points.iter().zip(&brute) {
            assert_eq!(p.d_min, *d);
        }
        for lambda in [1.5, 3.0] {
            assign_horizons(&mut points, lambda).unwrap();
            let bonds = build_bonds(&points).unwrap();
            assert_eq!(pairs(&bonds), brute_pairs(&points), "n = {n}, lambda = {lambda}");
        }
    }
}

#[test]
fn clustered_cloud_with_very_different_spacings() {
    // a dense cluster next to a sparse one stresses the ring search
    let mut points = random_points(300, 3);
    for (i, p) in points.iter_mut().enumerate() {
        if i % 2 == 0 {
            p.x *= 0.01;
            p.y *= 0.01;
        }
    }
    nearest_distances(&mut points).unwrap();
    for (p, d) in points.iter().zip(brute_nearest(&points)) {
        assert_eq!(p.d_min, d);
    }
    assign_horizons(&mut points, 2.5).unwrap();
    assert_eq!(pairs(&build_bonds(&points).unwrap()), brute_pairs(&points));
}
