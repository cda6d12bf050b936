//! Level-set extraction by marching squares.
//!
//! Crossings are linearly interpolated along cell edges and stitched into
//! polylines through the edges they share, so the topology never depends on
//! floating-point comparisons of coordinates. Saddle cells are resolved by
//! the mean of their four corners.

use crate::explore::sweep::{AxisKind, SweepGrid};
use crate::scalar::Real;

/// Polylines of one level set, in axis units.
#[derive(Debug, Clone, PartialEq)]
pub struct ContourSet<T> {
    pub level: T,
    pub x_kind: AxisKind,
    pub y_kind: AxisKind,
    /// Closed loops repeat their first vertex at the end.
    pub polylines: Vec<Vec<(T, T)>>,
}

impl<T> ContourSet<T> {
    pub fn is_empty(&self) -> bool {
        self.polylines.is_empty()
    }
}

const NONE: usize = usize::MAX;

struct Edges {
    nx: usize,
    ny: usize,
}

impl Edges {
    fn horizontal(&self, i: usize, j: usize) -> usize {
        j * (self.nx - 1) + i
    }

    fn vertical(&self, i: usize, j: usize) -> usize {
        self.ny * (self.nx - 1) + j * self.nx + i
    }

    fn count(&self) -> usize {
        self.ny * (self.nx - 1) + (self.ny - 1) * self.nx
    }

    /// Grid nodes joined by an edge.
    fn ends(&self, e: usize) -> ((usize, usize), (usize, usize)) {
        let h = self.ny * (self.nx - 1);
        if e < h {
            let (i, j) = (e % (self.nx - 1), e / (self.nx - 1));
            ((i, j), (i + 1, j))
        } else {
            let e = e - h;
            let (i, j) = (e % self.nx, e / self.nx);
            ((i, j), (i, j + 1))
        }
    }
}

/// Extracts the `level` set of `grid`. A level outside the open range of
/// grid values yields an empty set.
pub fn extract_contour<T: Real>(grid: &SweepGrid<T>, level: T) -> ContourSet<T> {
    let mut out = ContourSet {
        level,
        x_kind: grid.x.kind,
        y_kind: grid.y.kind,
        polylines: Vec::new(),
    };
    let (nx, ny) = (grid.nx(), grid.ny());
    if nx < 2 || ny < 2 || !level.is_finite() {
        return out;
    }
    let edges = Edges { nx, ny };
    let above = |i: usize, j: usize| grid.at(i, j) > level;

    // Each edge takes part in at most two segments (one per adjacent cell).
    let mut links = vec![[NONE, NONE]; edges.count()];
    let mut connect = |a: usize, b: usize| {
        for (from, to) in [(a, b), (b, a)] {
            let slot = &mut links[from];
            if slot[0] == NONE {
                slot[0] = to;
            } else {
                slot[1] = to;
            }
        }
    };

    for j in 0..ny - 1 {
        for i in 0..nx - 1 {
            let corners = [
                above(i, j),
                above(i + 1, j),
                above(i + 1, j + 1),
                above(i, j + 1),
            ];
            // bottom, right, top, left
            let sides = [
                edges.horizontal(i, j),
                edges.vertical(i + 1, j),
                edges.horizontal(i, j + 1),
                edges.vertical(i, j),
            ];
            let crossed: Vec<usize> = (0..4)
                .filter(|&s| corners[s] != corners[(s + 1) % 4])
                .collect();
            match crossed.len() {
                2 => connect(sides[crossed[0]], sides[crossed[1]]),
                4 => {
                    let center = (grid.at(i, j)
                        + grid.at(i + 1, j)
                        + grid.at(i + 1, j + 1)
                        + grid.at(i, j + 1))
                        / T::lit(4.0);
                    if (center > level) == corners[0] {
                        // Diagonal through corners 0 and 2 is connected;
                        // cut off corners 1 and 3.
                        connect(sides[0], sides[1]);
                        connect(sides[2], sides[3]);
                    } else {
                        connect(sides[3], sides[0]);
                        connect(sides[1], sides[2]);
                    }
                }
                _ => {}
            }
        }
    }

    let point = |e: usize| -> (T, T) {
        let ((ia, ja), (ib, jb)) = edges.ends(e);
        let (va, vb) = (grid.at(ia, ja), grid.at(ib, jb));
        let t = (level - va) / (vb - va);
        let (xa, ya) = (grid.x.values[ia], grid.y.values[ja]);
        let (xb, yb) = (grid.x.values[ib], grid.y.values[jb]);
        (xa + t * (xb - xa), ya + t * (yb - ya))
    };

    let mut visited = vec![false; links.len()];
    let trace = |start: usize, visited: &mut Vec<bool>| -> Vec<(T, T)> {
        let mut line = vec![point(start)];
        visited[start] = true;
        let (mut prev, mut cur) = (NONE, start);
        loop {
            let next = links[cur].into_iter().find(|&n| n != NONE && n != prev);
            match next {
                Some(n) if !visited[n] => {
                    visited[n] = true;
                    line.push(point(n));
                    prev = cur;
                    cur = n;
                }
                Some(n) if n == start && line.len() > 2 => {
                    line.push(line[0]);
                    break;
                }
                _ => break,
            }
        }
        line
    };

    // Open polylines start at boundary edges (one link), then closed loops.
    for e in 0..links.len() {
        let degree = links[e].iter().filter(|&&n| n != NONE).count();
        if degree == 1 && !visited[e] {
            out.polylines.push(trace(e, &mut visited));
        }
    }
    for e in 0..links.len() {
        if links[e][0] != NONE && !visited[e] {
            out.polylines.push(trace(e, &mut visited));
        }
    }
    out
}

/// Bilinear interpolation of `grid` at `(x, y)`, clamped to the grid.
pub fn bilinear<T: Real>(grid: &SweepGrid<T>, x: T, y: T) -> T {
    fn locate<T: Real>(axis: &[T], v: T) -> (usize, T) {
        let n = axis.len();
        if n < 2 {
            return (0, T::zero());
        }
        let mut k = axis.partition_point(|&a| a <= v).saturating_sub(1);
        k = k.min(n - 2);
        let t = (v - axis[k]) / (axis[k + 1] - axis[k]);
        (k, t.max(T::zero()).min(T::one()))
    }
    let (i, tx) = locate(&grid.x.values, x);
    let (j, ty) = locate(&grid.y.values, y);
    let i1 = (i + 1).min(grid.nx() - 1);
    let j1 = (j + 1).min(grid.ny() - 1);
    let one = T::one();
    grid.at(i, j) * (one - tx) * (one - ty)
        + grid.at(i1, j) * tx * (one - ty)
        + grid.at(i1, j1) * tx * ty
        + grid.at(i, j1) * (one - tx) * ty
}
