//! Scalar functionals on the `(ω, α)` plane: the Steiner ratio function and
//! its k = 1 restriction, contiguous-edge angles and full-Steiner-tree
//! feasibility, the chirality measure and the constrained objective.
//!
//! Everything here except [`cos_theta`] needs `A_1 = 1 − 2cos ω > 0`, that is
//! `π/3 < ω < 5π/3`; outside that band a [`Error::Domain`] is returned.

use std::f64::consts::TAU;

use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::helix::{a_k, chord_squared, HelixParams};
use crate::steiner::{require_a1_positive, require_alpha, steiner_radius};

/// Relative slack under which two k-denominators count as tied.
pub const TIE_RTOL: f64 = 1e-12;

/// Numerator shared by ρ and ρ₁: the per-point Steiner length.
fn steiner_per_point(omega: f64, alpha: f64) -> Result<f64> {
    let a1 = require_a1_positive(omega)?;
    require_alpha(alpha)?;
    Ok(1.0 + alpha * omega * (a1 / (a1 + 1.0)).sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RhoValue {
    pub value: f64,
    /// Skip period whose spanning chord attains the minimum.
    pub argmin_k: usize,
}

/// The Steiner ratio function: Steiner length per point over the shortest
/// skip-k chord for `k = 1..=k_max`. Near-ties go to the smaller `k`.
pub fn rho(omega: f64, alpha: f64, k_max: usize) -> Result<RhoValue> {
    if k_max == 0 {
        return Err(Error::Config("k_max must be at least 1".into()));
    }
    let num = steiner_per_point(omega, alpha)?;
    let dens: Vec<f64> = (1..=k_max).map(|k| chord_squared(omega, alpha, k).sqrt()).collect();
    let min = dens.iter().copied().fold(f64::INFINITY, f64::min);
    let idx = dens
        .iter()
        .position(|&d| d <= min * (1.0 + TIE_RTOL))
        .expect("k_max >= 1");
    Ok(RhoValue { value: num / dens[idx], argmin_k: idx + 1 })
}

/// The ratio restricted to the consecutive-point spanning tree (k = 1).
pub fn rho1(omega: f64, alpha: f64) -> Result<f64> {
    let num = steiner_per_point(omega, alpha)?;
    Ok(num / chord_squared(omega, alpha, 1).sqrt())
}

/// Cosine of the angle between contiguous edges of a skip-k subsequence,
/// `−1 + (A_k + 1)² / (2(k²α²ω² + A_k + 1))`.
pub fn cos_theta(omega: f64, alpha: f64, k: usize) -> Result<f64> {
    if k == 0 {
        return domain("skip k must be at least 1");
    }
    let d = chord_squared(omega, alpha, k);
    if d.is_nan() || d <= 0.0 {
        return domain(format!("skip-{k} chord has zero length at omega = {omega}, alpha = {alpha}"));
    }
    let ak1 = a_k(omega, k) + 1.0;
    Ok(-1.0 + ak1 * ak1 / (2.0 * d))
}

/// The same cosine measured on explicit points `P_{j+lk}`, `P_{j+(l+1)k}`,
/// `P_{j+(l+2)k}` of a configuration, as the normalised dot product of the
/// two edges meeting at the middle point.
pub fn contiguous_edge_cosine(params: &HelixParams, j: usize, k: usize, l: usize) -> Result<f64> {
    if k == 0 {
        return domain("skip k must be at least 1");
    }
    let i0 = j + l * k;
    let last = i0 + 2 * k;
    if last >= params.n() {
        return domain(format!("index {last} past the end of an n = {} configuration", params.n()));
    }
    let (p0, p1, p2) = (params.point(i0), params.point(i0 + k), params.point(last));
    let u = p1 - p0;
    let v = p1 - p2;
    let denom = u.norm() * v.norm();
    if denom == 0.0 {
        return domain("contiguous edges have zero length");
    }
    Ok(u.dot(v) / denom)
}

/// Full-Steiner-tree admissibility: `cos θ_k ≥ −1/2`.
pub fn fst_feasible(omega: f64, alpha: f64, k: usize) -> Result<bool> {
    Ok(cos_theta(omega, alpha, k)? >= -0.5)
}

/// Lower bounds on the Euclidean Steiner ratio that fix an admissible ω band.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    /// ρ ≥ 1/2.
    Moore,
    /// ρ ≥ √3/3.
    DuHwang,
}

impl Bound {
    pub fn value(self) -> f64 {
        match self {
            Bound::Moore => 0.5,
            Bound::DuHwang => 3f64.sqrt() / 3.0,
        }
    }
}

/// ω band on which the k = 1 ratio can reach down to the bound as α → ∞:
/// `[arccos c, 2π − arccos c]` with `c = 1/3` (Moore) or `1/4` (Du–Hwang).
pub fn omega_interval(bound: Bound) -> (f64, f64) {
    let c: f64 = match bound {
        Bound::Moore => 1.0 / 3.0,
        Bound::DuHwang => 0.25,
    };
    let low = c.acos();
    (low, TAU - low)
}

/// Chirality measure
/// `φ = (1/6)·αω·sin ω·((A_1 + 1)/A_1)·(α²ω² − A_1(A_1 + 1))`.
///
/// Odd in α; vanishes at ω = π and where the Steiner radius equals 1.
pub fn chirality(omega: f64, alpha: f64) -> Result<f64> {
    let a1 = a_k(omega, 1);
    if a1.abs() <= crate::steiner::A1_EPS || !alpha.is_finite() {
        return domain(format!("chirality undefined at omega = {omega} (A_1 = {a1}), alpha = {alpha}"));
    }
    let aw = alpha * omega;
    Ok(aw * omega.sin() * ((a1 + 1.0) / a1) * (aw * aw - a1 * (a1 + 1.0)) / 6.0)
}

/// `H = (1 + λ)ρ₁ − λφ`.
pub fn constrained_h(omega: f64, alpha: f64, lambda: f64) -> Result<f64> {
    let r1 = rho1(omega, alpha)?;
    let phi = chirality(omega, alpha)?;
    Ok((1.0 + lambda) * r1 - lambda * phi)
}

/// All functionals at one point of the plane.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SrfSample {
    pub omega: f64,
    pub alpha: f64,
    pub rho: f64,
    pub argmin_k: usize,
    pub rho1: f64,
    pub r: f64,
    /// `cos θ_k` for `k = 1..=k_max`.
    pub cos_theta: Vec<f64>,
    pub fst_feasible: Vec<bool>,
    pub phi: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h: Option<f64>,
}

impl SrfSample {
    pub fn evaluate(omega: f64, alpha: f64, k_max: usize, lambda: Option<f64>) -> Result<Self> {
        let rho = rho(omega, alpha, k_max)?;
        let cos_theta = (1..=k_max)
            .map(|k| cos_theta(omega, alpha, k))
            .collect::<Result<Vec<_>>>()?;
        let fst_feasible = cos_theta.iter().map(|&c| c >= -0.5).collect();
        Ok(Self {
            omega,
            alpha,
            rho: rho.value,
            argmin_k: rho.argmin_k,
            rho1: rho1(omega, alpha)?,
            r: steiner_radius(omega, alpha)?,
            cos_theta,
            fst_feasible,
            phi: chirality(omega, alpha)?,
            h: lambda.map(|l| constrained_h(omega, alpha, l)).transpose()?,
        })
    }

    pub fn csv_header(k_max: usize, with_h: bool) -> String {
        let mut cols = vec!["omega", "alpha", "rho", "argmin_k", "rho1", "r"]
            .into_iter()
            .map(String::from)
            .collect::<Vec<_>>();
        cols.extend((1..=k_max).map(|k| format!("cos_theta_{k}")));
        cols.extend((1..=k_max).map(|k| format!("fst_{k}")));
        cols.push("phi".into());
        if with_h {
            cols.push("h".into());
        }
        cols.join(",")
    }

    pub fn csv_row(&self) -> String {
        let mut cols = vec![
            self.omega.to_string(),
            self.alpha.to_string(),
            self.rho.to_string(),
            self.argmin_k.to_string(),
            self.rho1.to_string(),
            self.r.to_string(),
        ];
        cols.extend(self.cos_theta.iter().map(f64::to_string));
        cols.extend(self.fst_feasible.iter().map(bool::to_string));
        cols.push(self.phi.to_string());
        if let Some(h) = self.h {
            cols.push(h.to_string());
        }
        cols.join(",")
    }
}
