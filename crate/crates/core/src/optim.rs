//! Derivative-free minimization over a small number of angles.

/// Result of a local search.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Minimum<const N: usize> {
    pub point: [f64; N],
    pub value: f64,
    pub iterations: usize,
}

/// Evaluates `f` on the grid `xs × ys` and returns the best point.
pub fn grid_search_2d(f: &mut impl FnMut([f64; 2]) -> f64, xs: &[f64], ys: &[f64]) -> Minimum<2> {
    let mut best = Minimum {
        point: [xs[0], ys[0]],
        value: f64::INFINITY,
        iterations: 0,
    };
    for &x in xs {
        for &y in ys {
            let v = f([x, y]);
            best.iterations += 1;
            if v < best.value {
                best.value = v;
                best.point = [x, y];
            }
        }
    }
    best
}

/// `n` evenly spaced points on `[lo, hi]` (endpoints included) or `[lo, hi)`.
pub fn linspace(lo: f64, hi: f64, n: usize, include_end: bool) -> Vec<f64> {
    let steps = if include_end {
        n.saturating_sub(1).max(1)
    } else {
        n
    };
    (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / steps as f64)
        .collect()
}

/// Nelder-Mead simplex search started from `start` with initial edge lengths `step`.
/// Stops once every vertex lies within `xtol` of the best one (in max norm)
/// or after `max_iter` iterations.
pub fn nelder_mead<const N: usize>(
    f: &mut impl FnMut([f64; N]) -> f64,
    start: [f64; N],
    step: [f64; N],
    xtol: f64,
    max_iter: usize,
) -> Minimum<N> {
    const ALPHA: f64 = 1.0;
    const GAMMA: f64 = 2.0;
    const RHO: f64 = 0.5;
    const SIGMA: f64 = 0.5;

    let mut simplex: Vec<([f64; N], f64)> = Vec::with_capacity(N + 1);
    simplex.push((start, f(start)));
    for k in 0..N {
        let mut p = start;
        p[k] += step[k];
        simplex.push((p, f(p)));
    }

    let mut iterations = 0;
    while iterations < max_iter {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let best = simplex[0].0;
        let spread = simplex[1..]
            .iter()
            .flat_map(|(p, _)| p.iter().zip(&best).map(|(a, b)| (a - b).abs()))
            .fold(0.0, f64::max);
        if spread <= xtol {
            break;
        }
        iterations += 1;

        let mut centroid = [0.0; N];
        for (p, _) in &simplex[..N] {
            for k in 0..N {
                centroid[k] += p[k] / N as f64;
            }
        }
        let along = |t: f64| -> [f64; N] {
            let worst = simplex[N].0;
            std::array::from_fn(|k| centroid[k] + t * (worst[k] - centroid[k]))
        };

        let reflected = along(-ALPHA);
        let fr = f(reflected);
        if fr < simplex[0].1 {
            let expanded = along(-GAMMA);
            let fe = f(expanded);
            simplex[N] = if fe < fr {
                (expanded, fe)
            } else {
                (reflected, fr)
            };
            continue;
        }
        if fr < simplex[N - 1].1 {
            simplex[N] = (reflected, fr);
            continue;
        }
        let (contracted, fc) = if fr < simplex[N].1 {
            let c = along(-RHO);
            (c, f(c))
        } else {
            let c = along(RHO);
            (c, f(c))
        };
        if fc < simplex[N].1.min(fr) {
            simplex[N] = (contracted, fc);
            continue;
        }
        for vertex in simplex.iter_mut().skip(1) {
            let p: [f64; N] = std::array::from_fn(|k| best[k] + SIGMA * (vertex.0[k] - best[k]));
            *vertex = (p, f(p));
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    Minimum {
        point: simplex[0].0,
        value: simplex[0].1,
        iterations,
    }
}
