//! Self-contained acceptance checks.
//!
//! Every check is deterministic: random samples come from a fixed-seed
//! ChaCha stream and nothing touches the network or the filesystem. The
//! `fast` flag shrinks sample counts and grids for a quick smoke run; the
//! tolerances never change.

use std::f64::consts::{PI, TAU};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::helix::{a_k, chord_squared, helix_points, sausage_alpha, sausage_omega, HelixParams};
use crate::optimize::{default_window, minimize, scan, Axis, Quantity, ScanOptions};
use crate::spanning::{mst_oracle, spanning_length_closed};
use crate::srf::{
    chirality, constrained_h, contiguous_edge_cosine, cos_theta, omega_interval, rho, rho1, Bound,
};
use crate::steiner::{
    finite_steiner_ratio, relax_fixed_topology, sausage_embedding, sausage_length_closed,
    RelaxOptions,
};

pub const OMEGA_R: f64 = 2.30052398302;
pub const ALPHA_R: f64 = 0.26454000216;
pub const RHO_R: f64 = 0.78419037337;

const SEED: u64 = 0x5eed_2024;

#[derive(Debug, Clone)]
pub struct CriterionResult {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
    /// Runtime budget; reported alongside the result, never enforced.
    pub budget: Duration,
}

type Check = fn(bool) -> Result<String, String>;

struct Criterion {
    id: u8,
    title: &'static str,
    budget_ms: u64,
    check: Check,
}

const CRITERIA: [Criterion; 12] = [
    Criterion { id: 1, title: "sausage constants", budget_ms: 100, check: sausage_constants },
    Criterion { id: 2, title: "Steiner ratio at the sausage point", budget_ms: 100, check: sausage_ratio },
    Criterion { id: 3, title: "equal-edge tie of the k-denominators", budget_ms: 100, check: equal_edge_tie },
    Criterion { id: 4, title: "helical embedding length identity", budget_ms: 5_000, check: embedding_identity },
    Criterion { id: 5, title: "MST oracle dominance and sausage path", budget_ms: 10_000, check: mst_dominance },
    Criterion { id: 6, title: "fixed-topology relaxation quality", budget_ms: 5_000, check: relaxation_quality },
    Criterion { id: 7, title: "ratio above one near the half turn", budget_ms: 5_000, check: half_turn_anomaly },
    Criterion { id: 8, title: "contiguous-edge cosine agreement", budget_ms: 2_000, check: cosine_agreement },
    Criterion { id: 9, title: "rho1 bounds on the Moore interval", budget_ms: 5_000, check: rho1_bounds },
    Criterion { id: 10, title: "dominance and FST restriction ordering", budget_ms: 30_000, check: restriction_ordering },
    Criterion { id: 11, title: "chirality antisymmetry and zeros", budget_ms: 2_000, check: chirality_properties },
    Criterion { id: 12, title: "H at lambda = 0 equals rho1", budget_ms: 100, check: h_consistency },
];

/// Runs every criterion in order.
pub fn run_all(fast: bool) -> Vec<CriterionResult> {
    CRITERIA.iter().map(|c| run_one(c, fast)).collect()
}

/// Runs a single criterion by number (1-based).
pub fn run(id: u8, fast: bool) -> Option<CriterionResult> {
    CRITERIA.iter().find(|c| c.id == id).map(|c| run_one(c, fast))
}

fn run_one(c: &Criterion, fast: bool) -> CriterionResult {
    let start = Instant::now();
    let outcome = (c.check)(fast);
    let elapsed = start.elapsed();
    let (passed, detail) = match outcome {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    CriterionResult {
        id: c.id,
        title: c.title,
        passed,
        detail,
        elapsed,
        budget: Duration::from_millis(c.budget_ms),
    }
}

impl CriterionResult {
    /// One line: `[PASS] 01 title (12.3 ms / budget 100 ms): detail`.
    pub fn line(&self) -> String {
        format!(
            "[{}] {:02} {} ({:.1} ms / budget {} ms): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.elapsed.as_secs_f64() * 1e3,
            self.budget.as_millis(),
            self.detail
        )
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: crate::Error) -> String {
    e.to_string()
}

fn samples(fast: bool, full: usize) -> usize {
    if fast {
        (full / 10).max(10)
    } else {
        full
    }
}

fn sausage_constants(_fast: bool) -> Result<String, String> {
    let (w, a) = (sausage_omega(), sausage_alpha());
    ensure((w - OMEGA_R).abs() <= 1e-10, || format!("omega_R = {w}"))?;
    ensure((a - ALPHA_R).abs() <= 1e-10, || format!("alpha_R = {a}"))?;
    Ok(format!("omega_R = {w:.12}, alpha_R = {a:.12}"))
}

fn sausage_ratio(_fast: bool) -> Result<String, String> {
    let (w, a) = (sausage_omega(), sausage_alpha());
    let closed = (3.0 * 3f64.sqrt() + 7f64.sqrt()) / 10.0;
    let r = rho(w, a, 3).map_err(err)?.value;
    let r1 = rho1(w, a).map_err(err)?;
    for (name, v) in [("rho", r), ("rho1", r1)] {
        ensure((v - closed).abs() <= 1e-9 && (v - RHO_R).abs() <= 1e-9, || {
            format!("{name} = {v}, expected (3*sqrt3 + sqrt7)/10 = {closed}")
        })?;
    }
    Ok(format!("rho = {r:.12}, rho1 = {r1:.12}"))
}

fn equal_edge_tie(_fast: bool) -> Result<String, String> {
    let (w, a) = (sausage_omega(), sausage_alpha());
    let exact = (300.0f64 / 81.0).sqrt();
    let d: Vec<f64> = (1..=3).map(|k| chord_squared(w, a, k).sqrt()).collect();
    let mut worst: f64 = 0.0;
    for i in 0..3 {
        for j in i + 1..3 {
            worst = worst.max((d[i] - d[j]).abs());
        }
        ensure((d[i] - exact).abs() <= 1e-12, || format!("k = {} chord {} vs sqrt(300/81) = {exact}", i + 1, d[i]))?;
    }
    ensure(worst <= 1e-12, || format!("pairwise spread {worst:e}"))?;
    Ok(format!("max pairwise difference {worst:.2e}"))
}

/// Random valid sausage configuration: `ω` inside the A_1 > 0 band and `α`
/// keeping the Steiner radius below 1.
fn random_sausage_params(rng: &mut ChaCha8Rng, n_range: std::ops::RangeInclusive<usize>) -> HelixParams {
    let w = rng.random_range(PI / 3.0 + 0.05..5.0 * PI / 3.0 - 0.05);
    let a1 = a_k(w, 1);
    let alpha_max = (a1 * (a1 + 1.0)).sqrt() / w;
    let alpha = alpha_max * rng.random_range(0.02..0.98);
    HelixParams::new(w, alpha, rng.random_range(n_range)).expect("sampled inside the domain")
}

fn embedding_identity(fast: bool) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let cases = samples(fast, 100);
    let mut worst: f64 = 0.0;
    for _ in 0..cases {
        let p = random_sausage_params(&mut rng, 3..=100);
        let tree = sausage_embedding(&p).map_err(err)?;
        let closed = sausage_length_closed(&p).map_err(err)?;
        let rel = (tree.total_length - closed).abs() / closed;
        worst = worst.max(rel);
        ensure(rel <= 1e-12 && tree.is_tree(), || format!("{p:?}: edge sum {} vs closed {closed}", tree.total_length))?;
    }
    Ok(format!("{cases} cases, worst relative gap {worst:.2e}"))
}

fn mst_dominance(fast: bool) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 5);
    let cases = samples(fast, 500);
    let mut tightest = f64::INFINITY;
    for _ in 0..cases {
        let w = rng.random_range(0.1..TAU - 0.1);
        let alpha = rng.random_range(0.05..=2.0);
        let n = rng.random_range(2..=200usize);
        let p = HelixParams::new(w, alpha, n).map_err(err)?;
        let mst = mst_oracle(&helix_points(&p)).map_err(err)?.total_length;
        for k in 1..=5usize.min(n - 1) {
            let closed = spanning_length_closed(&p, k).map_err(err)?;
            tightest = tightest.min(closed - mst);
            ensure(mst <= closed + 1e-9, || format!("{p:?} k = {k}: MST {mst} > closed {closed}"))?;
        }
    }
    let p = HelixParams::sausage(100).map_err(err)?;
    let mst = mst_oracle(&helix_points(&p)).map_err(err)?.total_length;
    let expected = 99.0 * (300.0f64 / 81.0).sqrt();
    ensure((mst - expected).abs() <= 1e-9, || format!("sausage n = 100 MST {mst} vs {expected}"))?;
    Ok(format!("{cases} cases, min slack {tightest:.2e}; sausage n=100 MST = {mst:.12}"))
}

fn relaxation_quality(_fast: bool) -> Result<String, String> {
    let p = HelixParams::sausage(23).map_err(err)?;
    let rep = relax_fixed_topology(&p, RelaxOptions::default()).map_err(err)?;
    let closed = sausage_length_closed(&p).map_err(err)?;
    let gap = (closed - rep.total_length) / closed;
    let m = rep.embedding.steiner_points.len();
    let interior = rep.angle_violation_in(1..m - 1);
    let monotone = rep
        .sweep_lengths
        .windows(2)
        .all(|w| w[1] <= w[0] * (1.0 + 4.0 * f64::EPSILON));
    ensure(rep.total_length <= closed, || format!("relaxed {} above closed {closed}", rep.total_length))?;
    ensure(gap < 1e-2, || format!("relative gap {gap}"))?;
    ensure(interior < 1.0, || format!("interior angle violation {interior} deg"))?;
    ensure(monotone, || "sweep lengths increased".into())?;
    Ok(format!(
        "gap {gap:.3e}, interior angle violation {interior:.2e} deg, {} sweeps",
        rep.iterations
    ))
}

fn half_turn_anomaly(_fast: bool) -> Result<String, String> {
    let r = rho(PI, 0.05, 3).map_err(err)?.value;
    let p = HelixParams::new(3.1, 0.05, 23).map_err(err)?;
    let finite = finite_steiner_ratio(&p, RelaxOptions::default()).map_err(err)?;
    ensure(r > 1.0, || format!("rho(pi, 0.05) = {r}"))?;
    ensure(finite > 1.0, || format!("finite ratio at omega = 3.1 is {finite}"))?;
    Ok(format!("rho(pi, 0.05) = {r:.6}, finite ratio(n=23, 3.1, 0.05) = {finite:.6}"))
}

fn cosine_agreement(fast: bool) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 8);
    let cases = samples(fast, 1000);
    let mut worst: f64 = 0.0;
    for _ in 0..cases {
        let w = rng.random_range(0.1..TAU - 0.1);
        let alpha = rng.random_range(0.05..=2.0);
        let k = rng.random_range(1..=5usize);
        let j = rng.random_range(0..k);
        let l = rng.random_range(0..5usize);
        let p = HelixParams::new(w, alpha, j + (l + 2) * k + 1).map_err(err)?;
        let formula = cos_theta(w, alpha, k).map_err(err)?;
        let direct = contiguous_edge_cosine(&p, j, k, l).map_err(err)?;
        worst = worst.max((formula - direct).abs());
        ensure((formula - direct).abs() <= 1e-12, || {
            format!("omega {w} alpha {alpha} k {k} j {j} l {l}: {formula} vs {direct}")
        })?;
    }
    let c1 = cos_theta(sausage_omega(), sausage_alpha(), 1).map_err(err)?;
    ensure((c1 - 0.5).abs() <= 1e-12, || format!("cos theta_1 at the sausage point = {c1}"))?;
    Ok(format!("{cases} samples, worst difference {worst:.2e}; cos theta_1(R) = {c1:.15}"))
}

fn rho1_bounds(fast: bool) -> Result<String, String> {
    let res = if fast { 50 } else { 200 };
    let (lo, hi) = omega_interval(Bound::Moore);
    let w = Axis::new(lo, hi, res).map_err(err)?;
    let a = Axis::new(0.01, 10.0, res).map_err(err)?;
    let grid = scan(Quantity::Rho1, &w, &a, &ScanOptions::default()).map_err(err)?;
    ensure(grid.present() == res * res, || "rho1 undefined on part of the Moore interval".into())?;
    let (mut min, mut max) = (f64::INFINITY, f64::NEG_INFINITY);
    for v in grid.values.iter().flatten() {
        min = min.min(*v);
        max = max.max(*v);
    }
    ensure(min >= 0.5 - 1e-9 && max <= 1.0 + 1e-9, || format!("rho1 range [{min}, {max}]"))?;
    Ok(format!("{res}x{res} grid, rho1 in [{min:.9}, {max:.9}]"))
}

fn restriction_ordering(fast: bool) -> Result<String, String> {
    let res = if fast { 50 } else { 200 };
    let (w, a) = default_window(res).map_err(err)?;
    let opts = ScanOptions::default();
    let full = scan(Quantity::Rho, &w, &a, &opts).map_err(err)?;
    let single = scan(Quantity::Rho1, &w, &a, &opts).map_err(err)?;
    for (idx, (r, r1)) in full.values.iter().zip(&single.values).enumerate() {
        let (Some(r), Some(r1)) = (r, r1) else {
            return Err(format!("node {idx} outside the domain"));
        };
        ensure(r >= r1, || format!("node {idx}: rho {r} < rho1 {r1}"))?;
    }
    let (w, a) = default_window(if fast { 64 } else { 256 }).map_err(err)?;
    let unrestricted = minimize(Quantity::Rho, &w, &a, &opts).map_err(err)?;
    let restricted = minimize(
        Quantity::Rho1,
        &w,
        &a,
        &ScanOptions { fst_restrict: true, ..opts },
    )
    .map_err(err)?;
    ensure(unrestricted.value <= RHO_R + 1e-9, || format!("global rho minimum {} above the sausage value", unrestricted.value))?;
    ensure(restricted.value > unrestricted.value, || {
        format!("restricted rho1 min {} <= rho min {}", restricted.value, unrestricted.value)
    })?;
    Ok(format!(
        "min rho = {:.9} at ({:.6}, {:.6}); FST-restricted min rho1 = {:.9} at ({:.6}, {:.6})",
        unrestricted.value, unrestricted.omega, unrestricted.alpha, restricted.value, restricted.omega, restricted.alpha
    ))
}

fn chirality_properties(fast: bool) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 11);
    let cases = samples(fast, 1000);
    for _ in 0..cases {
        let w = rng.random_range(PI / 3.0 + 0.1..5.0 * PI / 3.0 - 0.1);
        let alpha = rng.random_range(0.01..5.0);
        let (pos, neg) = (chirality(w, alpha).map_err(err)?, chirality(w, -alpha).map_err(err)?);
        ensure((pos + neg).abs() <= 1e-12, || format!("phi({w}, +-{alpha}) = {pos}, {neg}"))?;

        let a1 = a_k(w, 1);
        let on_locus = (a1 * (a1 + 1.0)).sqrt() / w;
        let z = chirality(w, on_locus).map_err(err)?;
        ensure(z.abs() <= 1e-12, || format!("phi on the r = 1 locus at omega {w}: {z}"))?;

        let at_pi = chirality(PI, rng.random_range(0.01..2.0)).map_err(err)?;
        ensure(at_pi.abs() <= 1e-12, || format!("phi at omega = pi: {at_pi}"))?;
    }
    Ok(format!("{cases} samples"))
}

fn h_consistency(fast: bool) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 12);
    let cases = samples(fast, 1000);
    let mut worst: f64 = 0.0;
    for _ in 0..cases {
        let w = rng.random_range(PI / 3.0 + 0.01..5.0 * PI / 3.0 - 0.01);
        let alpha = rng.random_range(0.01..5.0);
        let d = (constrained_h(w, alpha, 0.0).map_err(err)? - rho1(w, alpha).map_err(err)?).abs();
        worst = worst.max(d);
        ensure(d <= 1e-15, || format!("H - rho1 = {d} at ({w}, {alpha})"))?;
    }
    Ok(format!("{cases} samples, worst difference {worst:.1e}"))
}
