//! Marching squares on a [`ScanGrid`].
//!
//! A node is "inside" when its value is strictly above the level, so a
//! constant grid produces no contour at its own value. Cells with an absent
//! corner are skipped, which leaves contours open where they meet such
//! cells. Saddle cells are resolved with the mean of the four corners.

use std::collections::HashMap;

use serde::Serialize;

use super::{scan, Axis, Quantity, ScanGrid, ScanOptions};
use crate::error::Result;

/// One iso-level curve in the `(ω, α)` plane.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Polyline {
    pub level: f64,
    pub points: Vec<(f64, f64)>,
    /// First and last points coincide.
    pub closed: bool,
}

impl Polyline {
    /// Even-odd point-in-polygon test; always false for open curves.
    pub fn encloses(&self, omega: f64, alpha: f64) -> bool {
        if !self.closed {
            return false;
        }
        let mut inside = false;
        for pair in self.points.windows(2) {
            let ((x0, y0), (x1, y1)) = (pair[0], pair[1]);
            if (y0 > alpha) != (y1 > alpha) {
                let x = x0 + (alpha - y0) * (x1 - x0) / (y1 - y0);
                if omega < x {
                    inside = !inside;
                }
            }
        }
        inside
    }
}

/// Grid edge carrying a crossing: `Omega(i, j)` joins nodes `(i, j)` and
/// `(i + 1, j)`, `Alpha(i, j)` joins `(i, j)` and `(i, j + 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum EdgeKey {
    Omega(usize, usize),
    Alpha(usize, usize),
}

fn crossing(grid: &ScanGrid, key: EdgeKey, level: f64) -> (f64, f64) {
    let ((i0, j0), (i1, j1)) = match key {
        EdgeKey::Omega(i, j) => ((i, j), (i + 1, j)),
        EdgeKey::Alpha(i, j) => ((i, j), (i, j + 1)),
    };
    let v0 = grid.get(i0, j0).expect("present corner");
    let v1 = grid.get(i1, j1).expect("present corner");
    let t = ((level - v0) / (v1 - v0)).clamp(0.0, 1.0);
    let lerp = |a: f64, b: f64| a + t * (b - a);
    (
        lerp(grid.omega_axis[i0], grid.omega_axis[i1]),
        lerp(grid.alpha_axis[j0], grid.alpha_axis[j1]),
    )
}

fn cell_segments(grid: &ScanGrid, i: usize, j: usize, level: f64, out: &mut Vec<(EdgeKey, EdgeKey)>) {
    let corners = [(i, j), (i + 1, j), (i + 1, j + 1), (i, j + 1)];
    let mut values = [0.0; 4];
    for (slot, &(a, b)) in values.iter_mut().zip(&corners) {
        match grid.get(a, b) {
            Some(v) => *slot = v,
            None => return,
        }
    }
    let above = values.map(|v| v > level);
    // Cell edges, counter-clockwise from the bottom; corner c touches edges
    // c and c + 3 (mod 4).
    let edges = [
        EdgeKey::Omega(i, j),
        EdgeKey::Alpha(i + 1, j),
        EdgeKey::Omega(i, j + 1),
        EdgeKey::Alpha(i, j),
    ];
    let crossed: Vec<usize> = (0..4).filter(|&e| above[e] != above[(e + 1) % 4]).collect();
    match crossed.len() {
        2 => out.push((edges[crossed[0]], edges[crossed[1]])),
        4 => {
            let centre_above = values.iter().sum::<f64>() / 4.0 > level;
            for c in 0..4 {
                if above[c] != centre_above {
                    out.push((edges[(c + 3) % 4], edges[c]));
                }
            }
        }
        _ => {}
    }
}

fn link(grid: &ScanGrid, level: f64, segments: &[(EdgeKey, EdgeKey)]) -> Vec<Polyline> {
    let mut by_edge: HashMap<EdgeKey, Vec<usize>> = HashMap::new();
    for (s, &(a, b)) in segments.iter().enumerate() {
        by_edge.entry(a).or_default().push(s);
        by_edge.entry(b).or_default().push(s);
    }
    let mut used = vec![false; segments.len()];
    let mut lines = Vec::new();

    let trace = |start_seg: usize, start_edge: EdgeKey, used: &mut [bool]| {
        let mut keys = vec![start_edge];
        let mut seg = start_seg;
        let mut at = start_edge;
        loop {
            used[seg] = true;
            let (a, b) = segments[seg];
            let next = if a == at { b } else { a };
            keys.push(next);
            at = next;
            match by_edge[&at].iter().find(|&&s| !used[s]) {
                Some(&s) => seg = s,
                None => break,
            }
        }
        let closed = keys.len() > 2 && keys.first() == keys.last();
        let points = keys.iter().map(|&k| crossing(grid, k, level)).collect();
        Polyline { level, points, closed }
    };

    // Open curves start at an edge used by a single segment.
    for s in 0..segments.len() {
        if used[s] {
            continue;
        }
        let (a, b) = segments[s];
        if by_edge[&a].len() == 1 {
            lines.push(trace(s, a, &mut used));
        } else if by_edge[&b].len() == 1 {
            lines.push(trace(s, b, &mut used));
        }
    }
    for s in 0..segments.len() {
        if !used[s] {
            lines.push(trace(s, segments[s].0, &mut used));
        }
    }
    lines
}

/// Iso-level polylines for each requested level, in level order. A level
/// outside the grid's value range yields nothing.
pub fn contour(grid: &ScanGrid, levels: &[f64]) -> Vec<Polyline> {
    let (rows, cols) = (grid.rows(), grid.cols());
    let mut out = Vec::new();
    if rows < 2 || cols < 2 {
        return out;
    }
    for &level in levels {
        let mut segments = Vec::new();
        for i in 0..rows - 1 {
            for j in 0..cols - 1 {
                cell_segments(grid, i, j, level, &mut segments);
            }
        }
        out.extend(link(grid, level, &segments));
    }
    out
}

/// The curve `cos θ_k = −1/2` separating FST-feasible from forbidden
/// configurations for skip `k`.
pub fn fst_boundary(k: usize, omega: &Axis, alpha: &Axis) -> Result<Vec<Polyline>> {
    let grid = scan(Quantity::CosTheta(k), omega, alpha, &ScanOptions::default())?;
    Ok(contour(&grid, &[-0.5]))
}
