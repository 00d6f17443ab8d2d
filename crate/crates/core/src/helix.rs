//! Evenly spaced points on the unit right circular helix and their
//! skip-k subsequences.
//!
//! Point `i` of a configuration sits at `(cos iω, sin iω, α·i·ω)`, so the
//! helix has unit radius and pitch `2πα`. A skip-k subsequence starting at
//! offset `j` visits `j, j + k, j + 2k, ...` while the index stays below `n`.

use std::f64::consts::{PI, TAU};

use serde::Serialize;

use crate::error::{domain, Result};
use crate::point::Point3;

/// Angular step of the helix whose points are vertices of face-glued
/// regular tetrahedra: `π − arccos(2/3)`.
pub fn sausage_omega() -> f64 {
    PI - (2.0f64 / 3.0).acos()
}

/// Pitch parameter of the tetrahedral helix: `√30 / (9·ω)`.
pub fn sausage_alpha() -> f64 {
    30f64.sqrt() / (9.0 * sausage_omega())
}

/// `A_k = 1 − 2 cos(kω)`.
///
/// Every squared chord of the helix is built from this term: the distance
/// between points `i` and `i + k` is `√(k²α²ω² + A_k + 1)`.
pub fn a_k(omega: f64, k: usize) -> f64 {
    1.0 - 2.0 * (k as f64 * omega).cos()
}

/// Squared length of a skip-k chord, `k²α²ω² + A_k + 1`.
pub fn chord_squared(omega: f64, alpha: f64, k: usize) -> f64 {
    let kaw = k as f64 * alpha * omega;
    kaw * kaw + a_k(omega, k) + 1.0
}

/// The `(ω, α, n)` triple of a helical point configuration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HelixParams {
    omega: f64,
    alpha: f64,
    n: usize,
}

impl HelixParams {
    /// Validates `n ≥ 2`, `ω ∈ (0, 2π)` and a finite `α ≥ 0`.
    pub fn new(omega: f64, alpha: f64, n: usize) -> Result<Self> {
        if n < 2 {
            return domain(format!("need at least 2 points, got n = {n}"));
        }
        if !omega.is_finite() || omega <= 0.0 || omega >= TAU {
            return domain(format!("omega = {omega} outside the open interval (0, 2pi)"));
        }
        if !alpha.is_finite() || alpha < 0.0 {
            return domain(format!("alpha = {alpha} must be finite and non-negative"));
        }
        Ok(Self { omega, alpha, n })
    }

    /// The tetrahedral 3-sausage configuration with `n` points.
    pub fn sausage(n: usize) -> Result<Self> {
        Self::new(sausage_omega(), sausage_alpha(), n)
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Point `i` of the configuration. `i` may exceed `n − 1`; callers that
    /// care about the configuration bounds check it themselves.
    pub fn point(&self, i: usize) -> Point3 {
        let t = i as f64 * self.omega;
        Point3::new(t.cos(), t.sin(), self.alpha * t)
    }

    /// Same as [`point`](Self::point) on a coaxial helix of the given radius.
    pub fn point_at_radius(&self, i: usize, radius: f64) -> Point3 {
        let t = i as f64 * self.omega;
        Point3::new(radius * t.cos(), radius * t.sin(), self.alpha * t)
    }

    fn check_skip(&self, k: usize) -> Result<()> {
        if k == 0 || k >= self.n {
            return domain(format!("skip k = {k} must satisfy 1 <= k <= n - 1 = {}", self.n - 1));
        }
        Ok(())
    }
}

pub fn helix_points(params: &HelixParams) -> Vec<Point3> {
    (0..params.n).map(|i| params.point(i)).collect()
}

/// The points `j, j + k, ..., j + l_max·k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SkipSequence {
    pub j: usize,
    pub k: usize,
    pub l_max: usize,
    pub indices: Vec<usize>,
}

impl SkipSequence {
    pub fn first(&self) -> usize {
        self.j
    }

    pub fn last(&self) -> usize {
        self.j + self.l_max * self.k
    }

    /// Consecutive index pairs along the subsequence.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.indices.windows(2).map(|w| (w[0], w[1]))
    }
}

pub fn subsequence(params: &HelixParams, j: usize, k: usize) -> Result<SkipSequence> {
    params.check_skip(k)?;
    if j >= k {
        return domain(format!("offset j = {j} must be below k = {k}"));
    }
    let l_max = (params.n - j - 1) / k;
    let indices = (0..=l_max).map(|l| j + l * k).collect();
    Ok(SkipSequence { j, k, l_max, indices })
}

/// All `k` subsequences of a configuration joined by `k − 1` unit-step
/// connector edges into one spanning tree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnionSequence {
    pub n: usize,
    pub k: usize,
    pub subsequences: Vec<SkipSequence>,
    pub connectors: Vec<(usize, usize)>,
}

impl UnionSequence {
    /// Skip edges followed by connectors; always `n − 1` pairs.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.subsequences
            .iter()
            .flat_map(SkipSequence::edges)
            .chain(self.connectors.iter().copied())
            .collect()
    }

    /// Subsequence offset `j` owning each point index.
    pub fn membership(&self) -> Vec<usize> {
        (0..self.n).map(|i| i % self.k).collect()
    }
}

/// Builds the union of the `k` subsequences.
///
/// Subsequence `j` is joined to subsequence `j + 1` through its top end
/// `e = j + l_max(j)·k` and the point `e + 1`; when `e + 1` is past the end
/// of the configuration the bottom ends `j` and `j + 1` are joined instead.
/// Either way the connector is a unit-step chord.
pub fn union_sequence(params: &HelixParams, k: usize) -> Result<UnionSequence> {
    params.check_skip(k)?;
    let subsequences = (0..k)
        .map(|j| subsequence(params, j, k))
        .collect::<Result<Vec<_>>>()?;
    let connectors = subsequences
        .windows(2)
        .map(|pair| {
            let top = pair[0].last();
            if top + 1 < params.n {
                (top, top + 1)
            } else {
                (pair[0].first(), pair[1].first())
            }
        })
        .collect();
    Ok(UnionSequence { n: params.n, k, subsequences, connectors })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    fn p23() -> HelixParams {
        HelixParams::new(1.0, 0.3, 23).unwrap()
    }

    #[test]
    fn rejects_single_point_and_bad_omega() {
        assert!(matches!(HelixParams::new(1.0, 1.0, 1), Err(crate::Error::Domain(_))));
        assert!(HelixParams::new(0.0, 1.0, 5).is_err());
        assert!(HelixParams::new(TAU, 1.0, 5).is_err());
        assert!(HelixParams::new(f64::NAN, 1.0, 5).is_err());
        assert!(HelixParams::new(1.0, -0.1, 5).is_err());
    }

    #[test]
    fn quarter_turn_points() {
        let pts = helix_points(&HelixParams::new(FRAC_PI_2, 1.0, 3).unwrap());
        let expected = [(1.0, 0.0, 0.0), (0.0, 1.0, FRAC_PI_2), (-1.0, 0.0, PI)];
        assert_eq!(pts.len(), 3);
        for (p, (x, y, z)) in pts.iter().zip(expected) {
            assert!((p.x - x).abs() < 1e-15 && (p.y - y).abs() < 1e-15 && (p.z - z).abs() < 1e-15);
        }
    }

    #[test]
    fn tetrahedral_helix_has_equal_pairwise_distances() {
        let pts = helix_points(&HelixParams::new(2.30052398302, 0.26454000216, 4).unwrap());
        let mut d = Vec::new();
        for i in 0..4 {
            for j in i + 1..4 {
                d.push(pts[i].distance(pts[j]));
            }
        }
        for x in &d {
            assert!((x - d[0]).abs() < 1e-9, "{d:?}");
        }
    }

    #[test]
    fn sausage_constants() {
        assert!((sausage_omega() - 2.30052398302).abs() < 1e-10);
        assert!((sausage_alpha() - 0.26454000216).abs() < 1e-10);
    }

    #[test]
    fn subsequence_examples() {
        let s = subsequence(&p23(), 0, 2).unwrap();
        assert_eq!(s.l_max, 11);
        assert_eq!(s.indices, (0..=22).step_by(2).collect::<Vec<_>>());
        let s = subsequence(&p23(), 1, 2).unwrap();
        assert_eq!((s.l_max, s.last()), (10, 21));

        let l: Vec<_> = (0..3).map(|j| subsequence(&p23(), j, 3).unwrap()).collect();
        assert_eq!(l.iter().map(|s| s.l_max).collect::<Vec<_>>(), [7, 7, 6]);
        assert_eq!(l.iter().map(|s| s.last()).collect::<Vec<_>>(), [21, 22, 20]);

        let full = subsequence(&p23(), 0, 1).unwrap();
        assert_eq!(full.l_max, 22);
        assert_eq!(full.indices, (0..23).collect::<Vec<_>>());
    }

    #[test]
    fn subsequence_errors() {
        assert!(subsequence(&p23(), 2, 2).is_err());
        assert!(subsequence(&p23(), 0, 23).is_err());
        assert!(subsequence(&p23(), 0, 0).is_err());
    }

    #[test]
    fn union_examples() {
        let u = union_sequence(&p23(), 1).unwrap();
        assert_eq!((u.subsequences.len(), u.connectors.len(), u.edges().len()), (1, 0, 22));

        let u = union_sequence(&p23(), 2).unwrap();
        let sizes: Vec<_> = u.subsequences.iter().map(|s| s.indices.len()).collect();
        assert_eq!(sizes, [12, 11]);
        assert_eq!(u.connectors, vec![(0, 1)]);
        assert_eq!(u.edges().len(), 22);

        let u = union_sequence(&p23(), 3).unwrap();
        let sizes: Vec<_> = u.subsequences.iter().map(|s| s.indices.len()).collect();
        assert_eq!(sizes, [8, 8, 7]);
        assert_eq!(u.connectors, vec![(21, 22), (1, 2)]);
        assert_eq!(u.edges().len(), 22);
    }

    #[test]
    fn a_k_values() {
        assert!((a_k(FRAC_PI_2, 1) - 1.0).abs() < 1e-15);
        assert!(a_k(PI / 3.0, 1).abs() < 1e-15);
        assert!((a_k(2.30052398302, 1) - 7.0 / 3.0).abs() < 1e-9);
    }
}
