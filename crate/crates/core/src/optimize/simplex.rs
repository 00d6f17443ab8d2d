//! Derivative-free simplex refinement (Nelder–Mead) in a handful of
//! dimensions. Infeasible points are expressed as `f = +∞`.

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimplexOptions {
    pub reflection: f64,
    pub expansion: f64,
    pub contraction: f64,
    pub shrink: f64,
    /// Stop once the largest vertex-to-vertex distance drops below this.
    pub diameter_tol: f64,
    pub max_iter: usize,
}

impl Default for SimplexOptions {
    fn default() -> Self {
        Self {
            reflection: 1.0,
            expansion: 2.0,
            contraction: 0.5,
            shrink: 0.5,
            diameter_tol: 1e-10,
            max_iter: 20_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimplexResult {
    pub x: Vec<f64>,
    pub f: f64,
    pub iterations: usize,
    pub diameter: f64,
}

fn diameter(simplex: &[(Vec<f64>, f64)]) -> f64 {
    let mut d: f64 = 0.0;
    for (i, (a, _)) in simplex.iter().enumerate() {
        for (b, _) in &simplex[i + 1..] {
            let s: f64 = a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum();
            d = d.max(s.sqrt());
        }
    }
    d
}

fn lerp(from: &[f64], to: &[f64], t: f64) -> Vec<f64> {
    from.iter().zip(to).map(|(a, b)| a + t * (b - a)).collect()
}

/// Minimises `f` starting from `start` with one extra vertex per axis at
/// `start + step[i]·e_i`. The best vertex never gets worse, so the result is
/// at most `f(start)`.
pub fn nelder_mead<F>(f: F, start: &[f64], step: &[f64], opts: &SimplexOptions) -> SimplexResult
where
    F: Fn(&[f64]) -> f64,
{
    let dim = start.len();
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(dim + 1);
    simplex.push((start.to_vec(), f(start)));
    for i in 0..dim {
        let mut x = start.to_vec();
        x[i] += step[i];
        let fx = f(&x);
        simplex.push((x, fx));
    }

    let mut iterations = 0;
    while iterations < opts.max_iter {
        // Stable sort keeps earlier (older) vertices first among equal values.
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        if dim == 0 || diameter(&simplex) < opts.diameter_tol {
            break;
        }
        iterations += 1;

        let worst = simplex[dim].clone();
        let centroid: Vec<f64> = (0..dim)
            .map(|c| simplex[..dim].iter().map(|(x, _)| x[c]).sum::<f64>() / dim as f64)
            .collect();

        let reflected = lerp(&centroid, &worst.0, -opts.reflection);
        let fr = f(&reflected);
        if fr < simplex[0].1 {
            let expanded = lerp(&centroid, &worst.0, -opts.expansion);
            let fe = f(&expanded);
            simplex[dim] = if fe < fr { (expanded, fe) } else { (reflected, fr) };
            continue;
        }
        if fr < simplex[dim - 1].1 {
            simplex[dim] = (reflected, fr);
            continue;
        }
        let (toward, ft) = if fr < worst.1 { (reflected, fr) } else { (worst.0.clone(), worst.1) };
        let contracted = lerp(&centroid, &toward, opts.contraction);
        let fc = f(&contracted);
        if fc < ft {
            simplex[dim] = (contracted, fc);
            continue;
        }
        let best = simplex[0].0.clone();
        for vertex in simplex.iter_mut().skip(1) {
            let x = lerp(&best, &vertex.0, opts.shrink);
            let fx = f(&x);
            *vertex = (x, fx);
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    let d = diameter(&simplex);
    let (x, fx) = simplex.swap_remove(0);
    SimplexResult { x, f: fx, iterations, diameter: d }
}
