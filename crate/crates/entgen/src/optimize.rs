//! Derivative-free minimization: a compact Nelder–Mead simplex search.
//!
//! The criterion landscapes are smooth low-degree trigonometric polynomials
//! over four angles, so a plain downhill simplex with standard coefficients
//! (reflection 1, expansion 2, contraction 1/2, shrink 1/2) converges fast
//! and deterministically. Multi-start orchestration lives in the caller.

/// Result of one simplex run.
#[derive(Debug, Clone)]
pub struct OptimOutcome {
    /// Best point found.
    pub x: Vec<f64>,
    /// Objective value at `x`.
    pub value: f64,
    /// Iterations consumed.
    pub iters: usize,
    /// Whether the convergence test was met before the iteration cap.
    pub converged: bool,
}

/// Minimize `f` from `x0` with an axis-aligned initial simplex of edge
/// `step`. Converged when both the function-value spread and the simplex
/// diameter fall below `tol` (relative to the best value / point scale).
pub fn nelder_mead(
    f: impl Fn(&[f64]) -> f64,
    x0: &[f64],
    step: f64,
    max_iter: usize,
    tol: f64,
) -> OptimOutcome {
    let dim = x0.len();
    assert!(dim >= 1, "objective needs at least one coordinate");

    let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(dim + 1);
    simplex.push(x0.to_vec());
    for i in 0..dim {
        let mut v = x0.to_vec();
        v[i] += step;
        simplex.push(v);
    }
    let mut values: Vec<f64> = simplex.iter().map(|p| f(p)).collect();

    let order = |simplex: &mut Vec<Vec<f64>>, values: &mut Vec<f64>| {
        let mut idx: Vec<usize> = (0..values.len()).collect();
        idx.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).expect("finite objective"));
        *simplex = idx.iter().map(|&i| simplex[i].clone()).collect();
        *values = idx.iter().map(|&i| values[i]).collect();
    };

    let mut iters = 0;
    let mut converged = false;
    while iters < max_iter {
        order(&mut simplex, &mut values);

        let spread = values[dim] - values[0];
        let diameter = simplex[1..]
            .iter()
            .map(|p| {
                p.iter()
                    .zip(&simplex[0])
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum::<f64>()
                    .sqrt()
            })
            .fold(0.0_f64, f64::max);
        if spread <= tol * (1.0 + values[0].abs()) && diameter <= tol.sqrt() {
            converged = true;
            break;
        }

        // Centroid of all points except the worst.
        let centroid: Vec<f64> = (0..dim)
            .map(|i| simplex[..dim].iter().map(|p| p[i]).sum::<f64>() / dim as f64)
            .collect();
        let at = |coef: f64| -> Vec<f64> {
            (0..dim)
                .map(|i| centroid[i] + coef * (centroid[i] - simplex[dim][i]))
                .collect()
        };

        let reflected = at(1.0);
        let f_reflected = f(&reflected);
        if f_reflected < values[0] {
            let expanded = at(2.0);
            let f_expanded = f(&expanded);
            if f_expanded < f_reflected {
                simplex[dim] = expanded;
                values[dim] = f_expanded;
            } else {
                simplex[dim] = reflected;
                values[dim] = f_reflected;
            }
        } else if f_reflected < values[dim - 1] {
            simplex[dim] = reflected;
            values[dim] = f_reflected;
        } else {
            let contracted = if f_reflected < values[dim] { at(0.5) } else { at(-0.5) };
            let f_contracted = f(&contracted);
            if f_contracted < values[dim].min(f_reflected) {
                simplex[dim] = contracted;
                values[dim] = f_contracted;
            } else {
                // Shrink toward the best vertex.
                let best = simplex[0].clone();
                for i in 1..=dim {
                    for (c, b) in simplex[i].iter_mut().zip(&best) {
                        *c = b + 0.5 * (*c - b);
                    }
                    values[i] = f(&simplex[i]);
                }
            }
        }
        iters += 1;
    }

    order(&mut simplex, &mut values);
    OptimOutcome { x: simplex[0].clone(), value: values[0], iters, converged }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_bowl_minimum_is_found() {
        let f = |x: &[f64]| (x[0] - 1.5).powi(2) + 3.0 * (x[1] + 0.5).powi(2);
        let out = nelder_mead(f, &[0.0, 0.0], 0.5, 500, 1e-12);
        assert!(out.converged);
        assert!((out.x[0] - 1.5).abs() < 1e-5);
        assert!((out.x[1] + 0.5).abs() < 1e-5);
        assert!(out.value < 1e-9);
    }

    #[test]
    fn trigonometric_objective_converges_to_the_known_minimum() {
        // min of −cos(x)·cos(y) near the origin is −1 at (0, 0).
        let f = |x: &[f64]| -x[0].cos() * x[1].cos();
        let out = nelder_mead(f, &[0.8, -0.6], 0.3, 500, 1e-12);
        assert!((out.value + 1.0).abs() < 1e-9);
    }

    #[test]
    fn iteration_cap_is_respected() {
        let f = |x: &[f64]| x[0].powi(2);
        let out = nelder_mead(f, &[5.0], 0.1, 3, 1e-15);
        assert!(!out.converged);
        assert!(out.iters <= 3);
    }

    #[test]
    fn runs_are_deterministic() {
        let f = |x: &[f64]| (x[0] + 0.3).powi(2) + (x[1] * x[1] - 1.0).powi(2);
        let a = nelder_mead(&f, &[1.0, 1.0], 0.4, 200, 1e-10);
        let b = nelder_mead(&f, &[1.0, 1.0], 0.4, 200, 1e-10);
        assert_eq!(a.x, b.x);
        assert_eq!(a.value, b.value);
        assert_eq!(a.iters, b.iters);
    }
}
