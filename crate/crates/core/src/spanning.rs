//! Spanning-tree lengths of helical configurations: the closed form for the
//! skip-k union trees, its large-n limit, and an exact Euclidean MST over
//! arbitrary points used as the reference for both.

use std::cmp::Ordering;

use crate::error::{domain, Error, Result};
use crate::helix::{chord_squared, helix_points, union_sequence, HelixParams};
use crate::point::Point3;
use crate::tree::TreeEmbedding;

/// `(n − k)·√(k²α²ω² + A_k + 1) + (k − 1)·√(α²ω² + A_1 + 1)`: the length of
/// the union tree built by [`union_sequence`].
pub fn spanning_length_closed(params: &HelixParams, k: usize) -> Result<f64> {
    let n = params.n();
    if k == 0 || k >= n {
        return domain(format!("skip k = {k} must satisfy 1 <= k <= n - 1 = {}", n - 1));
    }
    let (w, a) = (params.omega(), params.alpha());
    let skip = chord_squared(w, a, k).sqrt();
    let unit = chord_squared(w, a, 1).sqrt();
    Ok((n - k) as f64 * skip + (k - 1) as f64 * unit)
}

/// The union tree for skip `k` as an explicit embedding.
pub fn union_embedding(params: &HelixParams, k: usize) -> Result<TreeEmbedding> {
    let union = union_sequence(params, k)?;
    Ok(TreeEmbedding::spanning(helix_points(params), &union.edges()))
}

/// Large-n spanning length `n·√(k²α²ω² + A_k + 1)`.
pub fn mst_length_asymptotic(omega: f64, alpha: f64, k: usize, n: usize) -> Result<f64> {
    if k == 0 {
        return domain("skip k must be at least 1");
    }
    Ok(n as f64 * chord_squared(omega, alpha, k).sqrt())
}

/// Dense Prim's algorithm over the complete Euclidean graph.
///
/// Edges are totally ordered by `(length, min index, max index)`, which makes
/// the MST unique even when many chords have equal length.
#[derive(Debug, Clone, Copy)]
pub struct MstOracle {
    pub max_points: usize,
}

impl Default for MstOracle {
    fn default() -> Self {
        Self { max_points: 5000 }
    }
}

#[derive(Clone, Copy)]
struct Candidate {
    length: f64,
    lo: usize,
    hi: usize,
}

impl Candidate {
    fn new(length: f64, a: usize, b: usize) -> Self {
        Self { length, lo: a.min(b), hi: a.max(b) }
    }

    fn cmp(&self, other: &Candidate) -> Ordering {
        self.length
            .total_cmp(&other.length)
            .then(self.lo.cmp(&other.lo))
            .then(self.hi.cmp(&other.hi))
    }
}

impl MstOracle {
    pub fn run(&self, points: &[Point3]) -> Result<TreeEmbedding> {
        let n = points.len();
        if n < 2 {
            return Err(Error::Input(format!("MST needs at least 2 points, got {n}")));
        }
        if n > self.max_points {
            return Err(Error::Input(format!(
                "{n} points exceeds the oracle cap of {}",
                self.max_points
            )));
        }
        if let Some(i) = points.iter().position(|p| !p.is_finite()) {
            return Err(Error::Input(format!("point {i} has a non-finite coordinate")));
        }

        let mut in_tree = vec![false; n];
        let mut best: Vec<Option<Candidate>> = vec![None; n];
        let mut edges = Vec::with_capacity(n - 1);
        let mut current = 0;
        in_tree[0] = true;
        for _ in 1..n {
            let mut next: Option<(usize, Candidate)> = None;
            for v in 0..n {
                if in_tree[v] {
                    continue;
                }
                let offer = Candidate::new(points[current].distance(points[v]), current, v);
                let slot = &mut best[v];
                if slot.is_none_or(|c| offer.cmp(&c) == Ordering::Less) {
                    *slot = Some(offer);
                }
                let cand = slot.expect("just set");
                if next.is_none_or(|(_, c)| cand.cmp(&c) == Ordering::Less) {
                    next = Some((v, cand));
                }
            }
            let (v, cand) = next.expect("a vertex remains outside the tree");
            in_tree[v] = true;
            edges.push((cand.lo, cand.hi));
            current = v;
        }
        Ok(TreeEmbedding::spanning(points.to_vec(), &edges))
    }
}

/// Exact Euclidean MST with the default point cap.
pub fn mst_oracle(points: &[Point3]) -> Result<TreeEmbedding> {
    MstOracle::default().run(points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::helix::{sausage_alpha, sausage_omega};
    use std::f64::consts::FRAC_PI_2;

    /// Kruskal over a sorted explicit edge list; independent of the Prim path.
    fn kruskal_length(points: &[Point3]) -> f64 {
        let n = points.len();
        let mut e = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                e.push((points[i].distance(points[j]), i, j));
            }
        }
        e.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut Vec<usize>, x: usize) -> usize {
            if p[x] != x {
                let r = find(p, p[x]);
                p[x] = r;
            }
            p[x]
        }
        let mut total = 0.0;
        for (d, i, j) in e {
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                parent[a] = b;
                total += d;
            }
        }
        total
    }

    #[test]
    fn closed_form_examples() {
        let s = HelixParams::sausage(23).unwrap();
        let unit = (300.0f64 / 81.0).sqrt();
        assert!((spanning_length_closed(&s, 1).unwrap() - 22.0 * unit).abs() < 1e-9);
        assert!((spanning_length_closed(&s, 1).unwrap() - 42.339019).abs() < 1e-6);
        assert!((spanning_length_closed(&s, 2).unwrap() - 22.0 * unit).abs() < 1e-9);
        assert!((spanning_length_closed(&s, 3).unwrap() - 22.0 * unit).abs() < 1e-9);

        let two = HelixParams::new(FRAC_PI_2, 1.0, 2).unwrap();
        let expected = (std::f64::consts::PI.powi(2) / 4.0 + 2.0).sqrt();
        assert!((spanning_length_closed(&two, 1).unwrap() - expected).abs() < 1e-14);
        assert!(spanning_length_closed(&two, 2).is_err());
        assert!(spanning_length_closed(&two, 0).is_err());
    }

    #[test]
    fn closed_form_matches_union_edge_sum() {
        for &(w, a, n) in &[(0.7, 0.1, 10), (2.0, 0.5, 40), (4.5, 1.3, 57), (sausage_omega(), sausage_alpha(), 23)] {
            let p = HelixParams::new(w, a, n).unwrap();
            for k in 1..n.min(8) {
                let closed = spanning_length_closed(&p, k).unwrap();
                let tree = union_embedding(&p, k).unwrap();
                assert!(tree.is_tree());
                assert!((closed - tree.total_length).abs() <= 1e-10 * closed, "{w} {a} {n} {k}");
            }
        }
    }

    #[test]
    fn asymptotic_values() {
        let (w, a) = (sausage_omega(), sausage_alpha());
        let one = mst_length_asymptotic(w, a, 1, 1).unwrap();
        assert!((one - (300.0f64 / 81.0).sqrt()).abs() < 1e-12);
        assert!((one - 1.9245009).abs() < 1e-7);
        assert!((mst_length_asymptotic(w, a, 2, 17).unwrap() - 17.0 * mst_length_asymptotic(w, a, 2, 1).unwrap()).abs() < 1e-12);
        // A_2 + 1 = 0 at ω = π, leaving only the axial term 2αω.
        let pi = std::f64::consts::PI;
        let tiny = mst_length_asymptotic(pi, 1e-6, 2, 1).unwrap();
        assert!((tiny - 2e-6 * pi).abs() < 1e-9);
        assert!(mst_length_asymptotic(w, a, 0, 1).is_err());
    }

    #[test]
    fn oracle_small_cases() {
        let two = [Point3::new(0.0, 0.0, 0.0), Point3::new(3.0, 4.0, 0.0)];
        let t = mst_oracle(&two).unwrap();
        assert_eq!(t.edges.len(), 1);
        assert_eq!(t.total_length, 5.0);
        assert!(mst_oracle(&two[..1]).is_err());
        assert!(mst_oracle(&[two[0], Point3::new(f64::NAN, 0.0, 0.0)]).is_err());
        let capped = MstOracle { max_points: 1 };
        assert!(capped.run(&two).is_err());
    }

    #[test]
    fn oracle_matches_kruskal() {
        for &(w, a, n) in &[(0.3, 0.05, 60), (1.9, 0.4, 80), (3.1, 0.05, 23), (5.5, 2.0, 45)] {
            let pts = helix_points(&HelixParams::new(w, a, n).unwrap());
            let prim = mst_oracle(&pts).unwrap();
            assert!(prim.is_tree());
            assert!((prim.total_length - kruskal_length(&pts)).abs() < 1e-10);
        }
    }

    #[test]
    fn oracle_on_sausage_is_minimum_chord_path() {
        let pts = helix_points(&HelixParams::sausage(100).unwrap());
        let t = mst_oracle(&pts).unwrap();
        assert!((t.total_length - 99.0 * (300.0f64 / 81.0).sqrt()).abs() < 1e-9);
    }

    #[test]
    fn oracle_is_deterministic_under_ties() {
        let pts = helix_points(&HelixParams::sausage(30).unwrap());
        assert_eq!(mst_oracle(&pts).unwrap().edges, mst_oracle(&pts).unwrap().edges);
    }

    #[test]
    fn steep_helix_mst_is_consecutive_path() {
        let pts = helix_points(&HelixParams::new(0.01, 100.0, 10).unwrap());
        let t = mst_oracle(&pts).unwrap();
        let mut pairs: Vec<_> = t
            .edges
            .iter()
            .map(|&(a, b)| match (a, b) {
                (crate::VertexId::Terminal(a), crate::VertexId::Terminal(b)) => (a.min(b), a.max(b)),
                _ => unreachable!(),
            })
            .collect();
        pairs.sort();
        assert_eq!(pairs, (0..9).map(|i| (i, i + 1)).collect::<Vec<_>>());
    }
}
