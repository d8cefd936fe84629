//! Point-dependent horizons and construction of the pairwise bond graph.
//!
//! Every point gets its own horizon `h = λ · d_min`. Two points are joined
//! by a bond whenever at least one of them holds the other strictly inside
//! its horizon, and the bond receives its own horizon `H_AB` from the two
//! endpoint horizons. Bonds are built once per unordered pair, so the
//! resulting forces are pairwise-balanced whatever the horizon contrast.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mesh::MaterialPoint;
use crate::spatial::UniformGrid;

/// A beam-like connector between points `a < b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bond {
    pub a: usize,
    pub b: usize,
    /// Reference length l_AB [m].
    pub length: f64,
    /// Bond horizon H_AB [m].
    pub horizon: f64,
    /// Direction cosines `(x_B - x_A) / l` and `(y_B - y_A) / l`.
    pub direction: [f64; 2],
    /// Length correction α_AB.
    pub alpha: f64,
    /// Domain correction Ω_AB.
    pub omega: f64,
    /// Critical stretch s₀ (infinite until strengths are assigned).
    pub s0: f64,
    pub broken: bool,
}

impl Bond {
    pub fn new(points: &[MaterialPoint], a: usize, b: usize) -> Result<Bond> {
        let (pa, pb) = (&points[a], &points[b]);
        let length = pa.distance(pb);
        if !(length > 0.0) {
            return Err(Error::DegenerateBond);
        }
        let horizon = bond_horizon(pa.horizon, pb.horizon, length)?;
        Ok(Bond {
            a,
            b,
            length,
            horizon,
            direction: [(pb.x - pa.x) / length, (pb.y - pa.y) / length],
            alpha: 1.0,
            omega: 1.0,
            s0: f64::INFINITY,
            broken: false,
        })
    }

    pub fn other(&self, point: usize) -> usize {
        if point == self.a {
            self.b
        } else {
            self.a
        }
    }
}

/// Fills `d_min` with the distance from each point to its nearest neighbour.
pub fn nearest_distances(points: &mut [MaterialPoint]) -> Result<()> {
    let n = points.len();
    if n < 2 {
        return Err(Error::MeshIntegrity("at least two material points are required".into()));
    }
    let coords: Vec<[f64; 2]> = points.iter().map(|p| [p.x, p.y]).collect();
    let grid = UniformGrid::new(&coords, nominal_spacing(&coords));
    let cell = grid.cell_size();
    let mut d_min = vec![f64::INFINITY; n];
    for (i, c) in coords.iter().enumerate() {
        let home = grid.cell_of(c);
        let mut best = f64::INFINITY;
        let mut hit = None;
        for ring in 0.. {
            let inside = grid.for_each_on_ring(home, ring, |j| {
                if j != i {
                    let d = points[i].distance(&points[j]);
                    if d < best {
                        best = d;
                        hit = Some(j);
                    }
                }
            });
            // anything beyond this ring is at least `ring * cell` away
            if !inside || best <= ring as f64 * cell {
                break;
            }
        }
        if best == 0.0 {
            let j = hit.expect("a zero distance comes from a neighbour");
            return Err(Error::DuplicatePoint { first: i.min(j), second: i.max(j) });
        }
        d_min[i] = best;
    }
    for (p, d) in points.iter_mut().zip(d_min) {
        p.d_min = d;
    }
    Ok(())
}

fn nominal_spacing(coords: &[[f64; 2]]) -> f64 {
    let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
    for p in coords {
        for k in 0..2 {
            lo[k] = lo[k].min(p[k]);
            hi[k] = hi[k].max(p[k]);
        }
    }
    let (w, h) = (hi[0] - lo[0], hi[1] - lo[1]);
    let n = coords.len() as f64;
    let s = if w > 0.0 && h > 0.0 { (w * h / n).sqrt() } else { w.max(h) / n };
    if s > 0.0 && s.is_finite() {
        s
    } else {
        1.0
    }
}

/// Sets `h = λ · d_min` on every point.
pub fn assign_horizons(points: &mut [MaterialPoint], lambda: f64) -> Result<()> {
    if !(lambda >= 1.0 && lambda.is_finite()) {
        return Err(Error::config("lambda", format!("non-local factor must be >= 1, got {lambda}")));
    }
    for p in points {
        p.horizon = lambda * p.d_min;
    }
    Ok(())
}

/// Horizon of a bond of length `length` between points with horizons
/// `h_a` and `h_b`: the mean when both cover the bond, otherwise the one
/// that does.
pub fn bond_horizon(h_a: f64, h_b: f64, length: f64) -> Result<f64> {
    match (h_a > length, h_b > length) {
        (true, true) => Ok(0.5 * (h_a + h_b)),
        (true, false) => Ok(h_a),
        (false, true) => Ok(h_b),
        (false, false) => Err(Error::NoBond { h_a, h_b, length }),
    }
}

/// Builds one bond for every unordered pair closer than the larger of the
/// two horizons. Bonds come out sorted by `(a, b)`.
pub fn build_bonds(points: &[MaterialPoint]) -> Result<Vec<Bond>> {
    let reach = points.iter().map(|p| p.horizon).fold(0.0, f64::max);
    if !(reach > 0.0) {
        return Err(Error::config("lambda", "horizons must be assigned before building bonds"));
    }
    let coords: Vec<[f64; 2]> = points.iter().map(|p| [p.x, p.y]).collect();
    let grid = UniformGrid::new(&coords, reach);
    let mut bonds = Vec::new();
    let mut partners = Vec::new();
    for (i, c) in coords.iter().enumerate() {
        partners.clear();
        grid.for_each_near(grid.cell_of(c), 1, |j| {
            if j > i && points[i].distance(&points[j]) < points[i].horizon.max(points[j].horizon) {
                partners.push(j);
            }
        });
        partners.sort_unstable();
        for &j in &partners {
            bonds.push(Bond::new(points, i, j)?);
        }
    }
    Ok(bonds)
}

/// Indices of points that no bond touches.
pub fn isolated_points(n_points: usize, bonds: &[Bond]) -> Vec<usize> {
    let mut touched = vec![false; n_points];
    for b in bonds {
        touched[b.a] = true;
        touched[b.b] = true;
    }
    (0..n_points).filter(|&i| !touched[i]).collect()
}

/// A zero-width pre-existing crack.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    pub from: [f64; 2],
    pub to: [f64; 2],
}

impl Segment {
    pub fn new(from: [f64; 2], to: [f64; 2]) -> Self {
        Segment { from, to }
    }

    /// Segment of half-length `half` centred at `centre`, inclined at
    /// `angle_deg` from the x axis.
    pub fn centred(centre: [f64; 2], half: f64, angle_deg: f64) -> Self {
        let (s, c) = angle_deg.to_radians().sin_cos();
        Segment {
            from: [centre[0] - half * c, centre[1] - half * s],
            to: [centre[0] + half * c, centre[1] + half * s],
        }
    }
}

const COLLINEAR_TOL: f64 = 1e-12;

fn side(a: [f64; 2], b: [f64; 2], p: [f64; 2]) -> i8 {
    let len = ((b[0] - a[0]).powi(2) + (b[1] - a[1]).powi(2)).sqrt();
    if len == 0.0 {
        return 0;
    }
    let dist = ((b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0])) / len;
    if dist > COLLINEAR_TOL {
        1
    } else if dist < -COLLINEAR_TOL {
        -1
    } else {
        0
    }
}

fn within_box(a: [f64; 2], b: [f64; 2], p: [f64; 2]) -> bool {
    (0..2).all(|k| p[k] >= a[k].min(b[k]) - COLLINEAR_TOL && p[k] <= a[k].max(b[k]) + COLLINEAR_TOL)
}

/// Closed-segment intersection: touching at an endpoint counts.
pub fn segments_intersect(p: &Segment, q: &Segment) -> bool {
    let o1 = side(p.from, p.to, q.from);
    let o2 = side(p.from, p.to, q.to);
    let o3 = side(q.from, q.to, p.from);
    let o4 = side(q.from, q.to, p.to);
    if o1 * o2 < 0 && o3 * o4 < 0 {
        return true;
    }
    (o1 == 0 && within_box(p.from, p.to, q.from))
        || (o2 == 0 && within_box(p.from, p.to, q.to))
        || (o3 == 0 && within_box(q.from, q.to, p.from))
        || (o4 == 0 && within_box(q.from, q.to, p.to))
}

/// Deletes every bond crossing (or touching) one of `slots`. Returns the
/// number of bonds removed.
pub fn remove_slot_bonds(points: &[MaterialPoint], bonds: &mut Vec<Bond>, slots: &[Segment]) -> usize {
    if slots.is_empty() {
        return 0;
    }
    let before = bonds.len();
    bonds.retain(|b| {
        let seg = Segment::new([points[b.a].x, points[b.a].y], [points[b.b].x, points[b.b].y]);
        !slots.iter().any(|s| segments_intersect(&seg, s))
    });
    before - bonds.len()
}
