//! Scanning and minimising the ratio functionals over a rectangle of the
//! `(ω, α)` plane, plus level-curve extraction on the scanned grids.

mod contour;
mod simplex;

use std::f64::consts::PI;
use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

pub use contour::{contour, fst_boundary, Polyline};
pub use simplex::{nelder_mead, SimplexOptions, SimplexResult};

use crate::error::{config, Error, Result};
use crate::srf::{chirality, constrained_h, cos_theta, fst_feasible, rho, rho1};

/// A functional that can be scanned.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(into = "String")]
pub enum Quantity {
    Rho,
    Rho1,
    H,
    Phi,
    CosTheta(usize),
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quantity::Rho => write!(f, "rho"),
            Quantity::Rho1 => write!(f, "rho1"),
            Quantity::H => write!(f, "h"),
            Quantity::Phi => write!(f, "phi"),
            Quantity::CosTheta(k) => write!(f, "cos_theta_{k}"),
        }
    }
}

impl From<Quantity> for String {
    fn from(q: Quantity) -> String {
        q.to_string()
    }
}

impl FromStr for Quantity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rho" => Ok(Quantity::Rho),
            "rho1" => Ok(Quantity::Rho1),
            "h" => Ok(Quantity::H),
            "phi" => Ok(Quantity::Phi),
            other => match other.strip_prefix("cos_theta_").map(str::parse::<usize>) {
                Some(Ok(k)) if k >= 1 => Ok(Quantity::CosTheta(k)),
                _ => config(format!(
                    "unknown quantity '{s}' (expected rho, rho1, h, phi or cos_theta_K)"
                )),
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScanOptions {
    pub k_max: usize,
    pub lambda: f64,
    /// Drop points where consecutive-point edges cannot carry a full Steiner
    /// tree (`cos θ_1 < −1/2`).
    pub fst_restrict: bool,
}

impl Default for ScanOptions {
    fn default() -> Self {
        Self { k_max: 3, lambda: 0.0, fst_restrict: false }
    }
}

impl Quantity {
    /// Value at `(ω, α)`, `None` outside the domain or the FST-feasible set.
    pub fn evaluate(self, omega: f64, alpha: f64, opts: &ScanOptions) -> Option<f64> {
        if opts.fst_restrict && !fst_feasible(omega, alpha, 1).ok()? {
            return None;
        }
        let value = match self {
            Quantity::Rho => rho(omega, alpha, opts.k_max).map(|r| r.value),
            Quantity::Rho1 => rho1(omega, alpha),
            Quantity::H => constrained_h(omega, alpha, opts.lambda),
            Quantity::Phi => chirality(omega, alpha),
            Quantity::CosTheta(k) => cos_theta(omega, alpha, k),
        };
        value.ok().filter(|v| v.is_finite())
    }
}

/// Evenly spaced nodes from `lo` to `hi` inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Axis {
    pub lo: f64,
    pub hi: f64,
    pub steps: usize,
}

impl Axis {
    /// `steps == 1` is a single node and needs `lo == hi`; otherwise
    /// `steps ≥ 2` and `lo < hi`.
    pub fn new(lo: f64, hi: f64, steps: usize) -> Result<Self> {
        if !lo.is_finite() || !hi.is_finite() {
            return config(format!("range bounds must be finite, got {lo}:{hi}"));
        }
        match steps {
            0 => config("a range needs at least one node"),
            1 if lo != hi => config(format!(
                "a single-node range needs equal bounds, got {lo}:{hi}; use at least 2 steps"
            )),
            1 => Ok(Self { lo, hi, steps }),
            _ if lo >= hi => config(format!("empty range {lo}:{hi}")),
            _ => Ok(Self { lo, hi, steps }),
        }
    }

    pub fn nodes(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.lo];
        }
        let last = (self.steps - 1) as f64;
        (0..self.steps)
            .map(|i| if i + 1 == self.steps { self.hi } else { self.lo + (self.hi - self.lo) * i as f64 / last })
            .collect()
    }

    pub fn spacing(&self) -> f64 {
        if self.steps < 2 {
            0.0
        } else {
            (self.hi - self.lo) / (self.steps - 1) as f64
        }
    }

    pub fn contains(&self, x: f64) -> bool {
        x >= self.lo && x <= self.hi
    }
}

impl FromStr for Axis {
    type Err = Error;

    /// `LO:HI:STEPS`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let [lo, hi, steps] = parts.as_slice() else {
            return config(format!("range '{s}' must look like LO:HI:STEPS"));
        };
        let num = |t: &str| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| Error::Config(format!("bad number '{t}' in range '{s}'")))
        };
        let steps = steps
            .trim()
            .parse::<usize>()
            .map_err(|_| Error::Config(format!("bad step count '{steps}' in range '{s}'")))?;
        Axis::new(num(lo)?, num(hi)?, steps)
    }
}

/// Default scan window: `ω ∈ [π/3 + 0.01, 5π/3 − 0.01]`, `α ∈ [0.01, 1]`.
pub fn default_window(resolution: usize) -> Result<(Axis, Axis)> {
    Ok((
        Axis::new(PI / 3.0 + 0.01, 5.0 * PI / 3.0 - 0.01, resolution)?,
        Axis::new(0.01, 1.0, resolution)?,
    ))
}

/// A functional sampled on a rectangular grid. `values` is row-major with
/// ω as the row index: the node `(i, j)` sits at `(omega_axis[i],
/// alpha_axis[j])`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanGrid {
    pub quantity: Quantity,
    pub omega_axis: Vec<f64>,
    pub alpha_axis: Vec<f64>,
    pub values: Vec<Option<f64>>,
}

impl ScanGrid {
    pub fn rows(&self) -> usize {
        self.omega_axis.len()
    }

    pub fn cols(&self) -> usize {
        self.alpha_axis.len()
    }

    pub fn get(&self, i: usize, j: usize) -> Option<f64> {
        self.values[i * self.cols() + j]
    }

    pub fn present(&self) -> usize {
        self.values.iter().flatten().count()
    }

    /// Smallest present value and its node, first in row-major order on ties.
    pub fn best(&self) -> Option<((usize, usize), f64)> {
        let mut best: Option<(usize, f64)> = None;
        for (idx, v) in self.values.iter().enumerate() {
            if let Some(v) = *v {
                if best.is_none_or(|(_, b)| v < b) {
                    best = Some((idx, v));
                }
            }
        }
        best.map(|(idx, v)| ((idx / self.cols(), idx % self.cols()), v))
    }

    /// Long format `omega,alpha,value`; absent values are left empty.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "omega,alpha,value")?;
        for (i, w) in self.omega_axis.iter().enumerate() {
            for (j, a) in self.alpha_axis.iter().enumerate() {
                match self.get(i, j) {
                    Some(v) => writeln!(out, "{w},{a},{v}")?,
                    None => writeln!(out, "{w},{a},")?,
                }
            }
        }
        Ok(())
    }
}

/// Evaluates `quantity` at every grid node (in parallel; the result does not
/// depend on the evaluation order).
pub fn scan(quantity: Quantity, omega: &Axis, alpha: &Axis, opts: &ScanOptions) -> Result<ScanGrid> {
    if opts.k_max == 0 {
        return config("k_max must be at least 1");
    }
    let omega_axis = omega.nodes();
    let alpha_axis = alpha.nodes();
    let cols = alpha_axis.len();
    let values = (0..omega_axis.len() * cols)
        .into_par_iter()
        .map(|idx| quantity.evaluate(omega_axis[idx / cols], alpha_axis[idx % cols], opts))
        .collect();
    Ok(ScanGrid { quantity, omega_axis, alpha_axis, values })
}

/// Location and value of a minimum found by [`minimize`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MinimumReport {
    pub quantity: Quantity,
    pub omega: f64,
    pub alpha: f64,
    pub value: f64,
    pub refined: bool,
    pub restricted: bool,
    pub grid_cell: (usize, usize),
    pub grid_value: f64,
}

/// Grid scan followed by simplex refinement from the best node.
///
/// The simplex starts at the best node with edges of one grid spacing and
/// is confined to the scan rectangle; points outside it, outside the
/// functional's domain or (with `fst_restrict`) FST-infeasible count as
/// `+∞`. The reported value never exceeds the best grid value.
pub fn minimize(quantity: Quantity, omega: &Axis, alpha: &Axis, opts: &ScanOptions) -> Result<MinimumReport> {
    let grid = scan(quantity, omega, alpha, opts)?;
    let Some(((i, j), grid_value)) = grid.best() else {
        return Err(Error::Domain(format!(
            "{quantity} is undefined on every node of the scanned domain"
        )));
    };
    let (w0, a0) = (grid.omega_axis[i], grid.alpha_axis[j]);

    // Refine only along axes with more than one node.
    let free: Vec<bool> = vec![omega.steps > 1, alpha.steps > 1];
    let objective = |x: &[f64]| {
        let mut it = x.iter();
        let w = if free[0] { *it.next().unwrap() } else { w0 };
        let a = if free[1] { *it.next().unwrap() } else { a0 };
        if !omega.contains(w) || !alpha.contains(a) {
            return f64::INFINITY;
        }
        quantity.evaluate(w, a, opts).unwrap_or(f64::INFINITY)
    };
    let mut start = Vec::new();
    let mut step = Vec::new();
    for (is_free, x0, axis) in [(free[0], w0, omega), (free[1], a0, alpha)] {
        if is_free {
            start.push(x0);
            // Step inward so the initial simplex stays inside the rectangle.
            let h = axis.spacing();
            step.push(if x0 + h <= axis.hi { h } else { -h });
        }
    }
    let refined = !start.is_empty();
    let (w, a, value) = if refined {
        let result = nelder_mead(objective, &start, &step, &SimplexOptions::default());
        let mut it = result.x.iter();
        let w = if free[0] { *it.next().unwrap() } else { w0 };
        let a = if free[1] { *it.next().unwrap() } else { a0 };
        (w, a, result.f)
    } else {
        (w0, a0, grid_value)
    };
    Ok(MinimumReport {
        quantity,
        omega: w,
        alpha: a,
        value,
        refined,
        restricted: opts.fst_restrict,
        grid_cell: (i, j),
        grid_value,
    })
}
