//! Largest adjacency eigenvalue, eigendrop, and exact closed-walk traces.

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

pub const DEFAULT_TOL: f64 = 1e-9;
pub const DEFAULT_MAX_ITER: usize = 10_000;

/// Largest vertex count accepted by [`trace_power`].
pub const TRACE_GUARD: usize = 2048;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PowerIteration {
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for PowerIteration {
    fn default() -> Self {
        PowerIteration {
            tol: DEFAULT_TOL,
            max_iter: DEFAULT_MAX_ITER,
        }
    }
}

impl PowerIteration {
    pub fn with_tol(tol: f64) -> Self {
        PowerIteration {
            tol,
            ..Default::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectralResult {
    pub lambda1: f64,
    /// Nonnegative, unit length (empty when `n == 0`).
    pub eigvec: Vec<f64>,
    pub iterations: usize,
    /// `‖A x − λ₁ x‖₂` at the returned vector.
    pub residual: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EigendropReport {
    pub lambda_before: f64,
    pub lambda_after: f64,
    pub drop: f64,
    pub drop_pct: f64,
}

impl EigendropReport {
    pub fn new(lambda_before: f64, lambda_after: f64) -> Self {
        let drop = lambda_before - lambda_after;
        let drop_pct = if lambda_before > 0.0 {
            100.0 * drop / lambda_before
        } else {
            0.0
        };
        EigendropReport {
            lambda_before,
            lambda_after,
            drop,
            drop_pct,
        }
    }
}

/// `y = (A + I) x`
fn shifted_matvec(g: &Graph, x: &[f64], y: &mut [f64]) {
    for (v, yv) in y.iter_mut().enumerate() {
        *yv = x[v] + g.neighbors(v).iter().map(|&w| x[w]).sum::<f64>();
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Largest adjacency eigenvalue by power iteration on `A + I`.
///
/// The shift makes `λ₁ + 1` strictly dominant in magnitude, so bipartite
/// graphs do not oscillate. Starting from the normalized all-ones vector
/// reaches every component's Perron vector, so disconnected graphs report
/// the global maximum. Iteration stops once successive Rayleigh quotients
/// differ by less than `opts.tol`.
pub fn lambda1(g: &Graph, opts: PowerIteration) -> Result<SpectralResult> {
    if opts.tol.is_nan() || opts.tol <= 0.0 || opts.max_iter == 0 {
        return Err(Error::Argument(
            "power iteration needs tol > 0 and max_iter >= 1".into(),
        ));
    }
    let n = g.n();
    if n == 0 {
        return Ok(SpectralResult {
            lambda1: 0.0,
            eigvec: Vec::new(),
            iterations: 0,
            residual: 0.0,
        });
    }
    let start = 1.0 / (n as f64).sqrt();
    let mut x = vec![start; n];
    if g.m() == 0 {
        return Ok(SpectralResult {
            lambda1: 0.0,
            eigvec: x,
            iterations: 0,
            residual: 0.0,
        });
    }

    let mut y = vec![0.0; n];
    let mut prev = f64::NEG_INFINITY;
    let mut rq = 0.0;
    for iter in 1..=opts.max_iter {
        shifted_matvec(g, &x, &mut y);
        rq = dot(&x, &y);
        let norm = dot(&y, &y).sqrt();
        let converged = (rq - prev).abs() < opts.tol;
        prev = rq;
        for (xv, yv) in x.iter_mut().zip(&y) {
            *xv = yv / norm;
        }
        if converged {
            return Ok(SpectralResult {
                lambda1: rq - 1.0,
                residual: residual(g, &x, rq - 1.0, &mut y),
                eigvec: x,
                iterations: iter,
            });
        }
    }
    Err(Error::NonConvergence {
        estimate: rq - 1.0,
        residual: residual(g, &x, rq - 1.0, &mut y),
        iterations: opts.max_iter,
    })
}

fn residual(g: &Graph, x: &[f64], lambda: f64, scratch: &mut [f64]) -> f64 {
    shifted_matvec(g, x, scratch);
    scratch
        .iter()
        .zip(x)
        .map(|(y, x)| {
            let r = y - x - lambda * x;
            r * r
        })
        .sum::<f64>()
        .sqrt()
}

/// Drop in `λ₁` after deleting `s`, both sides computed with the same options.
pub fn eigendrop(g: &Graph, s: &VertexSet, opts: PowerIteration) -> Result<EigendropReport> {
    let before = lambda1(g, opts)?.lambda1;
    let after = lambda1(&g.remove_vertices(s)?, opts)?.lambda1;
    Ok(EigendropReport::new(before, after))
}

/// Exact `tr(A^p)` for even `p`, i.e. the number of closed `p`-walks.
///
/// Builds `B = A^{p/2}` densely and returns `‖B‖_F²`, which equals
/// `tr(A^p)` because `B` is symmetric. Each step multiplies the dense
/// block by the sparse adjacency, `O(n·m)` per power.
pub fn trace_power(g: &Graph, p: usize) -> Result<u128> {
    if p < 2 || !p.is_multiple_of(2) {
        return Err(Error::Argument(format!(
            "trace power needs an even p >= 2, got {p}"
        )));
    }
    let n = g.n();
    if n > TRACE_GUARD {
        return Err(Error::Capability(format!(
            "dense trace on {n} vertices exceeds the limit of {TRACE_GUARD}"
        )));
    }
    let half = walk_matrix(g, p / 2)?;
    half.iter()
        .try_fold(0u128, |acc, &x| acc.checked_add(x.checked_mul(x)?))
        .ok_or_else(|| overflow(p))
}

/// Dense `A^q` in row-major order with overflow checks.
pub(crate) fn walk_matrix(g: &Graph, q: usize) -> Result<Vec<u128>> {
    let n = g.n();
    let mut cur = vec![0u128; n * n];
    for v in 0..n {
        for &w in g.neighbors(v) {
            cur[v * n + w] = 1;
        }
    }
    let mut next = vec![0u128; n * n];
    for _ in 1..q {
        for i in 0..n {
            let row = &cur[i * n..(i + 1) * n];
            for j in 0..n {
                let mut acc = 0u128;
                for &k in g.neighbors(j) {
                    acc = acc.checked_add(row[k]).ok_or_else(|| overflow(2 * q))?;
                }
                next[i * n + j] = acc;
            }
        }
        std::mem::swap(&mut cur, &mut next);
    }
    Ok(cur)
}

fn overflow(p: usize) -> Error {
    Error::Capability(format!("closed {p}-walk count overflows 128 bits"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> Graph {
        let mut e = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                e.push((i, j));
            }
        }
        Graph::from_edges(n, &e)
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn edgeless_is_zero() {
        let r = lambda1(&Graph::empty(5), PowerIteration::default()).unwrap();
        assert_eq!(r.lambda1, 0.0);
        assert_eq!(r.eigvec.len(), 5);
        assert_eq!(
            lambda1(&Graph::empty(0), Default::default())
                .unwrap()
                .lambda1,
            0.0
        );
    }

    #[test]
    fn small_complete_graphs() {
        let opts = PowerIteration::default();
        assert!(close(
            lambda1(&complete(2), opts).unwrap().lambda1,
            1.0,
            1e-8
        ));
        assert!(close(
            lambda1(&complete(3), opts).unwrap().lambda1,
            2.0,
            1e-8
        ));
    }

    #[test]
    fn bipartite_converges() {
        // Path on 2 edges: λ₁ = √2, with −√2 also in the spectrum.
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]);
        let r = lambda1(&g, Default::default()).unwrap();
        assert!(close(r.lambda1, 2f64.sqrt(), 1e-8), "{}", r.lambda1);
        assert!(r.eigvec.iter().all(|&x| x >= 0.0));
        assert!(r.residual < 1e-3);
    }

    #[test]
    fn disconnected_takes_largest_component() {
        // K₂ plus K₃ on disjoint vertices.
        let g = Graph::from_edges(5, &[(0, 1), (2, 3), (3, 4), (2, 4)]);
        let r = lambda1(&g, Default::default()).unwrap();
        assert!(close(r.lambda1, 2.0, 1e-8), "{}", r.lambda1);
    }

    #[test]
    fn non_convergence_is_reported() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]);
        let err = lambda1(
            &g,
            PowerIteration {
                tol: 1e-15,
                max_iter: 2,
            },
        )
        .unwrap_err();
        match err {
            Error::NonConvergence {
                estimate,
                iterations,
                ..
            } => {
                assert_eq!(iterations, 2);
                assert!(estimate > 1.0 && estimate <= 2f64.sqrt() + 1e-12);
            }
            e => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn bad_options() {
        let g = complete(2);
        assert!(lambda1(
            &g,
            PowerIteration {
                tol: 0.0,
                max_iter: 10
            }
        )
        .is_err());
        assert!(lambda1(
            &g,
            PowerIteration {
                tol: 1e-9,
                max_iter: 0
            }
        )
        .is_err());
    }

    #[test]
    fn eigendrop_examples() {
        let opts = PowerIteration::default();
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]);
        let r = eigendrop(&star, &[0].into_iter().collect(), opts).unwrap();
        assert!(close(r.lambda_before, 3f64.sqrt(), 1e-8));
        assert_eq!(r.lambda_after, 0.0);
        assert!(close(r.drop_pct, 100.0, 1e-9));

        let r = eigendrop(&star, &VertexSet::new(), opts).unwrap();
        assert_eq!(r.drop, 0.0);

        let r = eigendrop(&complete(3), &[2].into_iter().collect(), opts).unwrap();
        assert!(close(r.lambda_before, 2.0, 1e-8));
        assert!(close(r.lambda_after, 1.0, 1e-8));
        assert!(close(r.drop, 1.0, 1e-8));
    }

    #[test]
    fn report_zero_baseline() {
        let r = EigendropReport::new(0.0, 0.0);
        assert_eq!(r.drop_pct, 0.0);
    }

    #[test]
    fn traces() {
        assert_eq!(trace_power(&complete(2), 2).unwrap(), 2);
        assert_eq!(trace_power(&complete(3), 4).unwrap(), 18);
        assert_eq!(trace_power(&Graph::empty(4), 6).unwrap(), 0);
        // tr(A²) = 2m
        assert_eq!(trace_power(&complete(5), 2).unwrap(), 20);
        assert!(matches!(
            trace_power(&complete(3), 3),
            Err(Error::Argument(_))
        ));
        assert!(matches!(
            trace_power(&complete(3), 0),
            Err(Error::Argument(_))
        ));
        assert!(matches!(
            trace_power(&Graph::empty(TRACE_GUARD + 1), 2),
            Err(Error::Capability(_))
        ));
    }
}
