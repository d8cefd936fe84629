//! Uniform bucket grid over a 2D point cloud.

/// Points binned into square cells covering their bounding box. Cell
/// contents are stored contiguously, in increasing point index.
#[derive(Debug, Clone)]
pub struct UniformGrid {
    origin: [f64; 2],
    cell: f64,
    nx: usize,
    ny: usize,
    starts: Vec<usize>,
    entries: Vec<usize>,
}

impl UniformGrid {
    /// `cell_size` must be positive. Very small cells relative to the cloud
    /// extent are coarsened so the grid never holds more than ~4 cells per
    /// point.
    pub fn new(points: &[[f64; 2]], cell_size: f64) -> Self {
        assert!(cell_size > 0.0 && cell_size.is_finite(), "cell size must be positive");
        let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
        for p in points {
            for k in 0..2 {
                lo[k] = lo[k].min(p[k]);
                hi[k] = hi[k].max(p[k]);
            }
        }
        if points.is_empty() {
            lo = [0.0; 2];
            hi = [0.0; 2];
        }
        let max_cells = 4 * points.len().max(1);
        let mut cell = cell_size;
        let count = |c: f64| {
            let nx = ((hi[0] - lo[0]) / c).floor() as usize + 1;
            let ny = ((hi[1] - lo[1]) / c).floor() as usize + 1;
            (nx, ny)
        };
        let (mut nx, mut ny) = count(cell);
        while nx.saturating_mul(ny) > max_cells {
            cell *= 2.0;
            (nx, ny) = count(cell);
        }
        let mut grid = UniformGrid { origin: lo, cell, nx, ny, starts: vec![0; nx * ny + 1], entries: vec![0; points.len()] };
        let keys: Vec<usize> = points.iter().map(|p| grid.key(grid.cell_of(p))).collect();
        for &k in &keys {
            grid.starts[k + 1] += 1;
        }
        for i in 0..nx * ny {
            grid.starts[i + 1] += grid.starts[i];
        }
        let mut fill = grid.starts.clone();
        for (i, &k) in keys.iter().enumerate() {
            grid.entries[fill[k]] = i;
            fill[k] += 1;
        }
        grid
    }

    pub fn cell_size(&self) -> f64 {
        self.cell
    }

    pub fn cell_of(&self, p: &[f64; 2]) -> (usize, usize) {
        let ix = ((p[0] - self.origin[0]) / self.cell).floor().max(0.0) as usize;
        let iy = ((p[1] - self.origin[1]) / self.cell).floor().max(0.0) as usize;
        (ix.min(self.nx - 1), iy.min(self.ny - 1))
    }

    fn key(&self, (ix, iy): (usize, usize)) -> usize {
        iy * self.nx + ix
    }

    pub fn cell_entries(&self, ix: usize, iy: usize) -> &[usize] {
        let k = self.key((ix, iy));
        &self.entries[self.starts[k]..self.starts[k + 1]]
    }

    /// Calls `f` for every point in cells within Chebyshev distance `reach`
    /// of cell `(cx, cy)`.
    pub fn for_each_near(&self, (cx, cy): (usize, usize), reach: usize, mut f: impl FnMut(usize)) {
        let x0 = cx.saturating_sub(reach);
        let y0 = cy.saturating_sub(reach);
        let x1 = (cx + reach).min(self.nx - 1);
        let y1 = (cy + reach).min(self.ny - 1);
        for iy in y0..=y1 {
            for ix in x0..=x1 {
                for &i in self.cell_entries(ix, iy) {
                    f(i);
                }
            }
        }
    }

    /// Calls `f` for every point in the cells exactly at Chebyshev distance
    /// `ring` from `(cx, cy)`. Returns false once the ring lies entirely
    /// outside the grid.
    pub fn for_each_on_ring(&self, (cx, cy): (usize, usize), ring: usize, mut f: impl FnMut(usize)) -> bool {
        if ring == 0 {
            self.cell_entries(cx, cy).iter().for_each(|&i| f(i));
            return true;
        }
        let (cx, cy, r) = (cx as isize, cy as isize, ring as isize);
        let (nx, ny) = (self.nx as isize, self.ny as isize);
        if cx - r < 0 && cy - r < 0 && cx + r >= nx && cy + r >= ny {
            return false;
        }
        let mut visit = |ix: isize, iy: isize| {
            if ix >= 0 && iy >= 0 && ix < nx && iy < ny {
                for &i in self.cell_entries(ix as usize, iy as usize) {
                    f(i);
                }
            }
        };
        for ix in cx - r..=cx + r {
            visit(ix, cy - r);
            visit(ix, cy + r);
        }
        for iy in cy - r + 1..cy + r {
            visit(cx - r, iy);
            visit(cx + r, iy);
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_point_lands_in_exactly_one_cell() {
        let pts: Vec<[f64; 2]> = (0..50).map(|i| [(i % 7) as f64 * 0.3, (i / 7) as f64 * 0.45]).collect();
        let grid = UniformGrid::new(&pts, 0.5);
        let mut seen = vec![0; pts.len()];
        grid.for_each_near((0, 0), 100, |i| seen[i] += 1);
        assert!(seen.iter().all(|&c| c == 1));
    }

    #[test]
    fn rings_partition_the_neighbourhood() {
        let pts: Vec<[f64; 2]> = (0..100).map(|i| [(i % 10) as f64, (i / 10) as f64]).collect();
        let grid = UniformGrid::new(&pts, 1.0);
        let centre = grid.cell_of(&[4.0, 4.0]);
        let mut from_rings = Vec::new();
        for r in 0..=2 {
            grid.for_each_on_ring(centre, r, |i| from_rings.push(i));
        }
        let mut block = Vec::new();
        grid.for_each_near(centre, 2, |i| block.push(i));
        from_rings.sort();
        block.sort();
        assert_eq!(from_rings, block);
        assert!(!grid.for_each_on_ring(centre, 20, |_| {}));
    }

    #[test]
    fn tiny_cells_are_coarsened() {
        let pts = [[0.0, 0.0], [1000.0, 1000.0]];
        let grid = UniformGrid::new(&pts, 1e-3);
        assert!(grid.cell_size() > 1e-3);
    }
}
