//! Nelder–Mead simplex maximizer for smooth unconstrained objectives.

use crate::error::Result;

#[derive(Debug, Clone, Copy)]
pub struct NelderMeadOptions {
    /// Budget of simplex iterations, shared across polishing rounds.
    pub max_iterations: usize,
    /// Spread of objective values across the simplex that counts as converged.
    pub tolerance: f64,
    /// Edge length of the initial simplex along each coordinate.
    pub initial_step: f64,
}

impl Default for NelderMeadOptions {
    fn default() -> Self {
        Self {
            max_iterations: 500,
            tolerance: 1e-8,
            initial_step: 0.4,
        }
    }
}

#[derive(Debug, Clone)]
pub struct NelderMeadOutcome {
    pub x: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
    pub evaluations: usize,
    pub converged: bool,
}

const REFLECT: f64 = 1.0;
const EXPAND: f64 = 2.0;
const CONTRACT: f64 = 0.5;
const SHRINK: f64 = 0.5;
const MAX_POLISH_ROUNDS: usize = 4;

struct Simplex {
    points: Vec<Vec<f64>>,
    values: Vec<f64>,
}

impl Simplex {
    /// Sorts vertices best (largest value) first.
    fn sort(&mut self) {
        let mut idx: Vec<usize> = (0..self.values.len()).collect();
        idx.sort_by(|&a, &b| self.values[b].total_cmp(&self.values[a]));
        self.points = idx.iter().map(|&i| self.points[i].clone()).collect();
        self.values = idx.iter().map(|&i| self.values[i]).collect();
    }

    fn spread(&self) -> f64 {
        self.values[0] - self.values[self.values.len() - 1]
    }
}

fn affine(a: &[f64], b: &[f64], t: f64) -> Vec<f64> {
    // a + t (b - a)
    a.iter().zip(b).map(|(x, y)| x + t * (y - x)).collect()
}

/// Maximizes `f` from `x0`. After the simplex collapses it is rebuilt around
/// the best vertex; convergence is declared only once a rebuilt simplex
/// fails to improve by more than the tolerance.
pub fn maximize<F>(f: F, x0: &[f64], options: &NelderMeadOptions) -> Result<NelderMeadOutcome>
where
    F: Fn(&[f64]) -> Result<f64>,
{
    let dim = x0.len();
    let mut evaluations = 0usize;
    let mut eval = |x: &[f64]| -> Result<f64> {
        evaluations += 1;
        f(x)
    };

    let mut best_x = x0.to_vec();
    let mut best_value = eval(&best_x)?;
    let mut iterations = 0usize;
    let mut converged = false;
    let mut step = options.initial_step;

    if dim == 0 {
        return Ok(NelderMeadOutcome {
            x: best_x,
            value: best_value,
            iterations,
            evaluations,
            converged: true,
        });
    }

    for round in 0..MAX_POLISH_ROUNDS {
        let start_value = best_value;
        let mut simplex = Simplex {
            points: vec![best_x.clone()],
            values: vec![best_value],
        };
        for i in 0..dim {
            let mut p = best_x.clone();
            p[i] += step;
            let v = eval(&p)?;
            simplex.points.push(p);
            simplex.values.push(v);
        }
        simplex.sort();

        let mut collapsed = false;
        while iterations < options.max_iterations {
            if simplex.spread() <= options.tolerance {
                collapsed = true;
                break;
            }
            iterations += 1;
            let worst = dim;
            let centroid: Vec<f64> = (0..dim)
                .map(|j| simplex.points[..worst].iter().map(|p| p[j]).sum::<f64>() / dim as f64)
                .collect();
            let reflected = affine(&centroid, &simplex.points[worst], -REFLECT);
            let fr = eval(&reflected)?;
            if fr > simplex.values[0] {
                let expanded = affine(&centroid, &simplex.points[worst], -EXPAND);
                let fe = eval(&expanded)?;
                if fe > fr {
                    simplex.points[worst] = expanded;
                    simplex.values[worst] = fe;
                } else {
                    simplex.points[worst] = reflected;
                    simplex.values[worst] = fr;
                }
            } else if fr > simplex.values[worst - 1] {
                simplex.points[worst] = reflected;
                simplex.values[worst] = fr;
            } else {
                let outside = fr > simplex.values[worst];
                let contracted = if outside {
                    affine(&centroid, &reflected, CONTRACT)
                } else {
                    affine(&centroid, &simplex.points[worst], CONTRACT)
                };
                let fc = eval(&contracted)?;
                let accept = if outside { fc >= fr } else { fc > simplex.values[worst] };
                if accept {
                    simplex.points[worst] = contracted;
                    simplex.values[worst] = fc;
                } else {
                    let anchor = simplex.points[0].clone();
                    for i in 1..=dim {
                        simplex.points[i] = affine(&anchor, &simplex.points[i], SHRINK);
                        simplex.values[i] = eval(&simplex.points[i])?;
                    }
                }
            }
            simplex.sort();
        }

        if simplex.values[0] >= best_value {
            best_value = simplex.values[0];
            best_x = simplex.points[0].clone();
        }
        if !collapsed {
            break;
        }
        if best_value - start_value <= options.tolerance && round > 0 {
            converged = true;
            break;
        }
        step *= 0.1;
    }

    Ok(NelderMeadOutcome {
        x: best_x,
        value: best_value,
        iterations,
        evaluations,
        converged,
    })
}
