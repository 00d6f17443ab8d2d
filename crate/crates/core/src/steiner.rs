//! Steiner trees with the 3-sausage topology.
//!
//! Terminal `i` of an `n`-point helix hangs off Steiner point `s = i − 1`
//! for the interior terminals `1..=n−2`; Steiner points form a chain, and the
//! two end terminals attach to the first and last Steiner point. Steiner
//! points are indexed from 0, so Steiner point `s` lies next to terminal
//! `s + 1`.

use std::f64::consts::FRAC_PI_3;

use serde::Serialize;

use crate::error::{domain, Result};
use crate::helix::{a_k, helix_points, HelixParams};
use crate::point::Point3;
use crate::spanning::mst_oracle;
use crate::tree::{TreeEmbedding, VertexId};

const TWO_PI_3: f64 = 2.0 * FRAC_PI_3;

/// `A_1` values at or below this count as zero.
pub(crate) const A1_EPS: f64 = 1e-14;

/// The caterpillar topology shared by every tree in this module.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SausageTopology {
    n: usize,
}

impl SausageTopology {
    pub fn new(n: usize) -> Result<Self> {
        if n < 3 {
            return domain(format!("sausage topology needs n >= 3 terminals, got {n}"));
        }
        Ok(Self { n })
    }

    pub fn terminal_count(&self) -> usize {
        self.n
    }

    pub fn steiner_count(&self) -> usize {
        self.n - 2
    }

    /// Spokes first, then the Steiner chain, then the two end edges;
    /// `2n − 3` edges in all.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        use VertexId::{Steiner, Terminal};
        let m = self.steiner_count();
        let spokes = (0..m).map(|s| (Steiner(s), Terminal(s + 1)));
        let links = (0..m.saturating_sub(1)).map(|s| (Steiner(s), Steiner(s + 1)));
        let ends = [(Steiner(0), Terminal(0)), (Steiner(m - 1), Terminal(self.n - 1))];
        spokes.chain(links).chain(ends).collect()
    }

    /// The three neighbours of Steiner point `s`, in a fixed order.
    pub fn neighbors(&self, s: usize) -> [VertexId; 3] {
        use VertexId::{Steiner, Terminal};
        let m = self.steiner_count();
        let below = if s == 0 { Terminal(0) } else { Steiner(s - 1) };
        let above = if s + 1 == m { Terminal(self.n - 1) } else { Steiner(s + 1) };
        [below, Terminal(s + 1), above]
    }
}

pub(crate) fn require_a1_positive(omega: f64) -> Result<f64> {
    let a1 = a_k(omega, 1);
    if a1.is_nan() || a1 <= A1_EPS {
        return domain(format!(
            "A_1 = 1 - 2cos(omega) = {a1} must be positive (pi/3 < omega < 5pi/3), omega = {omega}"
        ));
    }
    Ok(a1)
}

pub(crate) fn require_alpha(alpha: f64) -> Result<()> {
    if !alpha.is_finite() || alpha < 0.0 {
        return domain(format!("alpha = {alpha} must be finite and non-negative"));
    }
    Ok(())
}

/// Radius `αω / √(A_1(A_1 + 1))` of the helix carrying the Steiner points.
pub fn steiner_radius(omega: f64, alpha: f64) -> Result<f64> {
    let a1 = require_a1_positive(omega)?;
    require_alpha(alpha)?;
    Ok(alpha * omega / (a1 * (a1 + 1.0)).sqrt())
}

fn sausage_radius(params: &HelixParams) -> Result<f64> {
    SausageTopology::new(params.n())?;
    let r = steiner_radius(params.omega(), params.alpha())?;
    if r >= 1.0 {
        return domain(format!("Steiner helix radius r = {r} must be below the terminal radius 1"));
    }
    Ok(r)
}

/// Length of the helical sausage tree:
/// `(n−2)(1−r) + (n−3)·αω·√((A_1+1)/A_1) + 2·√(α²ω² + (1−r)² + r(A_1+1))`.
pub fn sausage_length_closed(params: &HelixParams) -> Result<f64> {
    let r = sausage_radius(params)?;
    let n = params.n() as f64;
    let aw = params.alpha() * params.omega();
    let a1 = a_k(params.omega(), 1);
    let spokes = (n - 2.0) * (1.0 - r);
    let links = (n - 3.0) * aw * ((a1 + 1.0) / a1).sqrt();
    let ends = 2.0 * (aw * aw + (1.0 - r).powi(2) + r * (a1 + 1.0)).sqrt();
    Ok(spokes + links + ends)
}

/// Steiner point `s` placed at helix angle `(s + 1)ω` on the radius-`r`
/// helix of the same pitch.
pub fn sausage_embedding(params: &HelixParams) -> Result<TreeEmbedding> {
    let r = sausage_radius(params)?;
    let topology = SausageTopology::new(params.n())?;
    let steiner = (1..=topology.steiner_count())
        .map(|i| params.point_at_radius(i, r))
        .collect();
    Ok(TreeEmbedding::new(helix_points(params), steiner, topology.edges()))
}

/// Large-n Steiner length `n·(1 + αω·√(A_1/(A_1 + 1)))`.
pub fn smt_length_asymptotic(omega: f64, alpha: f64, n: usize) -> Result<f64> {
    let a1 = require_a1_positive(omega)?;
    require_alpha(alpha)?;
    Ok(n as f64 * (1.0 + alpha * omega * (a1 / (a1 + 1.0)).sqrt()))
}

fn interior_angle(at: Point3, p: Point3, q: Point3) -> f64 {
    // Coincident vertices count as a straight angle: the point is optimal.
    (p - at).angle_to(q - at).unwrap_or(std::f64::consts::PI)
}

/// The point minimising the summed distance to `a`, `b` and `c`.
///
/// When some triangle angle reaches 120° that vertex is the answer.
/// Otherwise the first isogonic centre is returned through its barycentric
/// coordinates `a·csc(A + π/3) : b·csc(B + π/3) : c·csc(C + π/3)`.
pub fn fermat_point(a: Point3, b: Point3, c: Point3) -> Point3 {
    let angle_a = interior_angle(a, b, c);
    let angle_b = interior_angle(b, c, a);
    let angle_c = interior_angle(c, a, b);
    if angle_a >= TWO_PI_3 {
        return a;
    }
    if angle_b >= TWO_PI_3 {
        return b;
    }
    if angle_c >= TWO_PI_3 {
        return c;
    }
    let wa = b.distance(c) / (angle_a + FRAC_PI_3).sin();
    let wb = c.distance(a) / (angle_b + FRAC_PI_3).sin();
    let wc = a.distance(b) / (angle_c + FRAC_PI_3).sin();
    (a * wa + b * wb + c * wc) * (1.0 / (wa + wb + wc))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelaxOptions {
    pub max_iter: usize,
    pub tol: f64,
}

impl Default for RelaxOptions {
    fn default() -> Self {
        Self { max_iter: 10_000, tol: 1e-10 }
    }
}

/// Outcome of a fixed-topology relaxation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RelaxationReport {
    #[serde(skip)]
    pub embedding: TreeEmbedding,
    #[serde(rename = "length")]
    pub total_length: f64,
    pub iterations: usize,
    /// Largest Steiner displacement in the final sweep.
    pub final_move: f64,
    #[serde(rename = "max_angle_violation_deg")]
    pub angle_violation_deg: f64,
    #[serde(rename = "degenerate")]
    pub degenerate_vertices: Vec<usize>,
    /// Whether the helical embedding seeded the sweeps.
    #[serde(skip)]
    pub helical_start: bool,
    /// Tree length before the first sweep and after each sweep.
    #[serde(skip)]
    pub sweep_lengths: Vec<f64>,
    /// Pairwise meeting angles at each non-degenerate Steiner point.
    #[serde(skip)]
    pub meeting_angles_deg: Vec<Option<[f64; 3]>>,
    #[serde(skip)]
    pub degenerate_epsilon: f64,
}

impl RelaxationReport {
    pub fn converged(&self, tol: f64) -> bool {
        self.final_move < tol
    }

    /// Largest meeting-angle deviation over Steiner points `from..to`.
    pub fn angle_violation_in(&self, range: std::ops::Range<usize>) -> f64 {
        self.meeting_angles_deg[range]
            .iter()
            .flatten()
            .flat_map(|angles| angles.iter().map(|a| (a - 120.0).abs()))
            .fold(0.0, f64::max)
    }
}

fn local_length(at: Point3, nbrs: &[Point3; 3]) -> f64 {
    nbrs.iter().map(|&p| at.distance(p)).sum()
}

fn fallback_start(params: &HelixParams, m: usize) -> Vec<Point3> {
    (1..=m)
        .map(|i| Point3::centroid(&[params.point(i - 1), params.point(i), params.point(i + 1)]))
        .collect()
}

/// Relaxes the Steiner points of the sausage topology with the topology held
/// fixed.
///
/// Each sweep visits Steiner points in order and moves each to the Fermat
/// point of its three current neighbours; a move is kept only when it does
/// not lengthen the three incident edges, so the tree length never grows.
/// Sweeps stop once the largest move falls below `tol` or after `max_iter`
/// sweeps. The helical embedding seeds the sweeps when it exists; otherwise
/// each Steiner point starts at the centroid of its terminal and the two
/// neighbouring terminals.
pub fn relax_fixed_topology(params: &HelixParams, options: RelaxOptions) -> Result<RelaxationReport> {
    let topology = SausageTopology::new(params.n())?;
    let m = topology.steiner_count();
    let terminals = helix_points(params);
    let (steiner, helical_start) = match sausage_embedding(params) {
        Ok(tree) => (tree.steiner_points, true),
        Err(_) => (fallback_start(params, m), false),
    };
    let mut tree = TreeEmbedding::new(terminals, steiner, topology.edges());

    let mut sweep_lengths = vec![tree.total_length];
    let mut iterations = 0;
    let mut final_move = 0.0;
    while iterations < options.max_iter {
        iterations += 1;
        let mut max_move: f64 = 0.0;
        for s in 0..m {
            let nbrs = topology.neighbors(s).map(|v| tree.position(v));
            let current = tree.steiner_points[s];
            let target = fermat_point(nbrs[0], nbrs[1], nbrs[2]);
            if local_length(target, &nbrs) <= local_length(current, &nbrs) {
                max_move = max_move.max(current.distance(target));
                tree.steiner_points[s] = target;
            }
        }
        tree.refresh_length();
        sweep_lengths.push(tree.total_length);
        final_move = max_move;
        if max_move < options.tol {
            break;
        }
    }

    let mean_chord = tree.terminals.windows(2).map(|w| w[0].distance(w[1])).sum::<f64>()
        / (tree.terminals.len() - 1) as f64;
    let degenerate_epsilon = 1e-6 * mean_chord;
    let mut degenerate_vertices = Vec::new();
    let mut meeting_angles_deg = Vec::with_capacity(m);
    for s in 0..m {
        let at = tree.steiner_points[s];
        let nbrs = topology.neighbors(s).map(|v| tree.position(v));
        let shortest = nbrs.iter().map(|&p| at.distance(p)).fold(f64::INFINITY, f64::min);
        if shortest < degenerate_epsilon {
            degenerate_vertices.push(s);
            meeting_angles_deg.push(None);
            continue;
        }
        let d = nbrs.map(|p| p - at);
        let angle = |u: Point3, v: Point3| u.angle_to(v).map_or(0.0, f64::to_degrees);
        meeting_angles_deg.push(Some([angle(d[0], d[1]), angle(d[1], d[2]), angle(d[0], d[2])]));
    }

    let mut report = RelaxationReport {
        total_length: tree.total_length,
        embedding: tree,
        iterations,
        final_move,
        angle_violation_deg: 0.0,
        degenerate_vertices,
        helical_start,
        sweep_lengths,
        meeting_angles_deg,
        degenerate_epsilon,
    };
    report.angle_violation_deg = report.angle_violation_in(0..m);
    Ok(report)
}

/// Relaxed sausage-tree length over the exact MST length for a finite
/// configuration. Can exceed 1 where the fixed topology is a poor fit.
pub fn finite_steiner_ratio(params: &HelixParams, options: RelaxOptions) -> Result<f64> {
    let relaxed = relax_fixed_topology(params, options)?;
    let mst = mst_oracle(&relaxed.embedding.terminals)?;
    Ok(relaxed.total_length / mst.total_length)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::helix::{sausage_alpha, sausage_omega};
    use std::f64::consts::PI;

    /// Plain Weiszfeld iteration; the reference for `fermat_point`.
    fn weiszfeld(pts: &[Point3; 3]) -> Point3 {
        let mut x = Point3::centroid(pts);
        for _ in 0..200_000 {
            let (mut num, mut den) = (Point3::default(), 0.0);
            for &p in pts {
                let d = x.distance(p);
                if d < 1e-300 {
                    return p;
                }
                num = num + p * (1.0 / d);
                den += 1.0 / d;
            }
            x = num * (1.0 / den);
        }
        x
    }

    /// Non-increasing up to summation rounding of the total.
    fn non_increasing(lengths: &[f64]) -> bool {
        lengths.windows(2).all(|w| w[1] <= w[0] * (1.0 + 4.0 * f64::EPSILON))
    }

    #[test]
    fn topology_counts() {
        let t = SausageTopology::new(23).unwrap();
        let edges = t.edges();
        assert_eq!(edges.len(), 43);
        let tree = TreeEmbedding::new(vec![Point3::default(); 23], vec![Point3::default(); 21], edges);
        assert!(tree.is_tree());
        for s in 0..21 {
            assert_eq!(tree.degree(VertexId::Steiner(s)), 3);
        }
        assert!(SausageTopology::new(2).is_err());
        let three = SausageTopology::new(3).unwrap();
        assert_eq!(three.edges().len(), 3);
    }

    #[test]
    fn radius_examples() {
        let r = steiner_radius(sausage_omega(), sausage_alpha()).unwrap();
        let expected = 3.0 * (30f64.sqrt() / 9.0) / 70f64.sqrt();
        assert!((r - expected).abs() < 1e-12);
        assert!((r - 0.2182179).abs() < 1e-7);
        let unit = steiner_radius(PI, 12f64.sqrt() / PI).unwrap();
        assert!((unit - 1.0).abs() < 1e-12);
        assert!(matches!(steiner_radius(PI / 3.0, 0.5), Err(crate::Error::Domain(_))));
        assert!(steiner_radius(0.5, 0.5).is_err());
    }

    #[test]
    fn closed_length_three_points() {
        let p = HelixParams::sausage(3).unwrap();
        let r = steiner_radius(p.omega(), p.alpha()).unwrap();
        let expected = (1.0 - r) + 2.0 * (30.0 / 81.0 + (1.0 - r).powi(2) + r * 10.0 / 3.0).sqrt();
        assert!((sausage_length_closed(&p).unwrap() - expected).abs() < 1e-12);
        let tree = sausage_embedding(&p).unwrap();
        assert_eq!(tree.edges.len(), 3);
        assert!((tree.edge_length(tree.edges[0]) - 0.7817821).abs() < 1e-7);
    }

    #[test]
    fn closed_length_near_unit_radius() {
        // r → 1⁻ removes the spoke term.
        let w = PI;
        let alpha = (12f64.sqrt() - 1e-9) / w;
        let p = HelixParams::new(w, alpha, 3).unwrap();
        let r = steiner_radius(w, alpha).unwrap();
        assert!(r < 1.0 && 1.0 - r < 1e-9);
        let len = sausage_length_closed(&p).unwrap();
        let limit = 2.0 * (12.0f64 + 4.0).sqrt();
        assert!((len - limit).abs() < 1e-8);
        let over = HelixParams::new(w, 12f64.sqrt() / w * 1.01, 5).unwrap();
        assert!(sausage_length_closed(&over).is_err());
    }

    #[test]
    fn embedding_families_are_uniform() {
        let p = HelixParams::sausage(23).unwrap();
        let tree = sausage_embedding(&p).unwrap();
        assert_eq!(tree.edges.len(), 43);
        let lens: Vec<f64> = tree.edge_lengths().collect();
        let (spokes, rest) = lens.split_at(21);
        let (links, ends) = rest.split_at(20);
        assert_eq!(ends.len(), 2);
        for family in [spokes, links, ends] {
            for x in family {
                assert!((x - family[0]).abs() < 1e-12);
            }
        }
        let closed = sausage_length_closed(&p).unwrap();
        assert!((tree.total_length - closed).abs() <= 1e-12 * closed);
    }

    #[test]
    fn asymptotic_steiner_length() {
        let (w, a) = (sausage_omega(), sausage_alpha());
        let one = smt_length_asymptotic(w, a, 1).unwrap();
        assert!((one - (1.0 + 30f64.sqrt() / 9.0 * 0.7f64.sqrt())).abs() < 1e-12);
        assert!((one - 1.5091751).abs() < 1e-7);
        assert!((smt_length_asymptotic(2.0, 1e-12, 1).unwrap() - 1.0).abs() < 1e-11);
        assert!((smt_length_asymptotic(w, a, 40).unwrap() - 40.0 * one).abs() < 1e-12);
        assert!(smt_length_asymptotic(1.0, 0.2, 1).is_err());
    }

    #[test]
    fn per_point_sausage_length_approaches_limit() {
        let (w, a) = (sausage_omega(), sausage_alpha());
        let limit = smt_length_asymptotic(w, a, 1).unwrap();
        let gap = |n: usize| {
            (sausage_length_closed(&HelixParams::new(w, a, n).unwrap()).unwrap() / n as f64 - limit).abs()
        };
        let gaps: Vec<f64> = (20..=200).step_by(20).map(gap).collect();
        assert!(gaps.windows(2).all(|g| g[1] < g[0]), "{gaps:?}");
    }

    #[test]
    fn fermat_point_matches_weiszfeld() {
        let tris = [
            [Point3::new(0.0, 0.0, 0.0), Point3::new(1.0, 0.0, 0.0), Point3::new(0.3, 0.9, 0.2)],
            [Point3::new(-1.0, 2.0, 0.5), Point3::new(2.0, -1.0, 1.0), Point3::new(0.5, 0.5, -2.0)],
            [Point3::new(0.0, 0.0, 0.0), Point3::new(2.0, 0.0, 0.0), Point3::new(1.0, 1.7320508, 0.0)],
        ];
        for t in &tris {
            let f = fermat_point(t[0], t[1], t[2]);
            let w = weiszfeld(t);
            assert!(f.distance(w) < 1e-7, "{f:?} vs {w:?}");
            let d = t.map(|p| p - f);
            for (u, v) in [(d[0], d[1]), (d[1], d[2]), (d[0], d[2])] {
                assert!((u.angle_to(v).unwrap().to_degrees() - 120.0).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn fermat_point_obtuse_and_coincident() {
        let a = Point3::new(0.0, 0.0, 0.0);
        let b = Point3::new(1.0, 0.0, 0.0);
        let c = Point3::new(-1.0, 0.1, 0.0);
        assert_eq!(fermat_point(a, b, c), a);
        assert_eq!(fermat_point(b, a, c), a);
        assert_eq!(fermat_point(b, b, c), b);
        // Exactly 120° at the vertex.
        let c = Point3::new(-0.5, 3f64.sqrt() / 2.0, 0.0);
        assert!(fermat_point(b, c, a).distance(a) < 1e-12);
    }

    #[test]
    fn three_terminals_relax_to_fermat_point() {
        for &(w, a) in &[(2.0, 0.3), (sausage_omega(), sausage_alpha()), (4.0, 0.1), (5.0, 0.02)] {
            let p = HelixParams::new(w, a, 3).unwrap();
            let rep = relax_fixed_topology(&p, RelaxOptions::default()).unwrap();
            assert_eq!(rep.embedding.steiner_points.len(), 1);
            assert!(rep.degenerate_vertices.is_empty(), "{w} {a} {rep:?}");
            assert!(rep.angle_violation_deg < 0.1, "{}", rep.angle_violation_deg);
            let t = &rep.embedding.terminals;
            assert!(rep.embedding.steiner_points[0].distance(weiszfeld(&[t[0], t[1], t[2]])) < 1e-7);
        }
    }

    #[test]
    fn sausage_relaxation_quality() {
        let p = HelixParams::sausage(23).unwrap();
        let rep = relax_fixed_topology(&p, RelaxOptions::default()).unwrap();
        let closed = sausage_length_closed(&p).unwrap();
        assert!(rep.helical_start);
        assert!(rep.total_length <= closed + 1e-12);
        assert!((closed - rep.total_length) / closed < 1e-2);
        assert!(rep.angle_violation_in(1..20) < 1.0);
        assert!(non_increasing(&rep.sweep_lengths));
        assert!(rep.converged(1e-10), "final move {}", rep.final_move);
    }

    #[test]
    fn steep_helix_degenerates() {
        // r > 1 here, so the centroid start is used and Steiner points
        // collapse onto terminals.
        let p = HelixParams::new(1.2, 1.0, 23).unwrap();
        assert!(sausage_embedding(&p).is_err());
        let rep = relax_fixed_topology(&p, RelaxOptions::default()).unwrap();
        assert!(!rep.helical_start);
        assert!(!rep.degenerate_vertices.is_empty());
        assert!(rep.degenerate_vertices.windows(2).all(|w| w[0] < w[1]));
        assert!(non_increasing(&rep.sweep_lengths));
    }

    #[test]
    fn nonconvergence_is_reported_not_raised() {
        let p = HelixParams::sausage(23).unwrap();
        let rep = relax_fixed_topology(&p, RelaxOptions { max_iter: 1, tol: 0.0 }).unwrap();
        assert_eq!(rep.iterations, 1);
        assert!(!rep.converged(0.0));
    }

    #[test]
    fn finite_ratio_examples() {
        let s = finite_steiner_ratio(&HelixParams::sausage(23).unwrap(), RelaxOptions::default()).unwrap();
        assert!(s > 0.78 && s < 0.80, "{s}");

        let eq = HelixParams::new(2.0 * PI / 3.0, 1e-9, 3).unwrap();
        let s = finite_steiner_ratio(&eq, RelaxOptions::default()).unwrap();
        assert!((s - 3f64.sqrt() / 2.0).abs() < 1e-6, "{s}");

        let flat = HelixParams::new(3.1, 0.05, 23).unwrap();
        assert!(finite_steiner_ratio(&flat, RelaxOptions::default()).unwrap() > 1.0);
    }
}
