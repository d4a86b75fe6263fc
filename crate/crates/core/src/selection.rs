//! k-vertex immunization strategies.
//!
//! [`greedy3`] is the linear-time closed-walk score greedy. The rest are
//! references and baselines: exact-eigendrop greedy, general-`p` trace
//! greedy, exhaustive search, static and updated max-degree, and NetShield.
//! Every method is deterministic and breaks ties toward the lowest index.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::spectral::{lambda1, trace_power, PowerIteration};
use crate::walkscore::ScoreState;

/// `k · n` limit for [`greedy1`].
pub const GREEDY1_GUARD: usize = 200_000;
/// Limit on `C(n, k)` for [`brute_force_optimal`].
pub const BRUTE_GUARD: u128 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Greedy3,
    Greedy1,
    Greedy2,
    NetShield,
    MaxDegree,
    UpdatedMaxDegree,
    BruteForce,
}

impl Method {
    pub const ALL: [Method; 7] = [
        Method::Greedy3,
        Method::Greedy1,
        Method::Greedy2,
        Method::NetShield,
        Method::MaxDegree,
        Method::UpdatedMaxDegree,
        Method::BruteForce,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Greedy3 => "greedy3",
            Method::Greedy1 => "greedy1",
            Method::Greedy2 => "greedy2",
            Method::NetShield => "netshield",
            Method::MaxDegree => "maxdeg",
            Method::UpdatedMaxDegree => "updmaxdeg",
            Method::BruteForce => "brute",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Method::ALL.iter().map(|m| m.name()).collect();
                Error::Argument(format!(
                    "unknown method `{s}` (expected one of {})",
                    names.join(", ")
                ))
            })
    }
}

/// One greedy round: the chosen vertex and the value that won it.
///
/// The value is method specific: score′ for greedy3, residual `λ₁` for
/// greedy1 and brute force, walk-count marginal for greedy2, degree for the
/// degree baselines, shield-value marginal for NetShield.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Step {
    pub vertex: usize,
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Selection {
    pub method: Method,
    pub picks: Vec<usize>,
    pub per_step: Vec<Step>,
    pub wall_time: Duration,
}

impl Selection {
    fn new(method: Method) -> Self {
        Selection {
            method,
            picks: Vec::new(),
            per_step: Vec::new(),
            wall_time: Duration::ZERO,
        }
    }

    fn push(&mut self, vertex: usize, value: f64) {
        self.picks.push(vertex);
        self.per_step.push(Step { vertex, value });
    }

    pub fn as_set(&self) -> VertexSet {
        self.picks.iter().copied().collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SelectOptions {
    /// Walk length for greedy2.
    pub p: usize,
    pub power: PowerIteration,
}

impl Default for SelectOptions {
    fn default() -> Self {
        SelectOptions {
            p: 4,
            power: PowerIteration::default(),
        }
    }
}

/// Runs `method` with budget `k` (clamped to `n`).
pub fn select(g: &Graph, method: Method, k: usize, opts: &SelectOptions) -> Result<Selection> {
    match method {
        Method::Greedy3 => Ok(greedy3(g, k)),
        Method::Greedy1 => greedy1(g, k, opts.power),
        Method::Greedy2 => greedy2(g, k, opts.p),
        Method::NetShield => netshield(g, k, opts.power),
        Method::MaxDegree => Ok(max_degree(g, k)),
        Method::UpdatedMaxDegree => Ok(updated_max_degree(g, k)),
        Method::BruteForce => brute_force_optimal(g, k, opts.power),
    }
}

/// Lowest-index candidate whose value is within `eps` of the minimum.
/// Candidates must be in ascending index order.
fn argmin_within(cands: &[(usize, f64)], eps: f64) -> Option<(usize, f64)> {
    let best = cands.iter().map(|c| c.1).fold(f64::INFINITY, f64::min);
    cands.iter().copied().find(|c| c.1 <= best + eps)
}

fn argmax_within(cands: &[(usize, f64)], eps: f64) -> Option<(usize, f64)> {
    let best = cands.iter().map(|c| c.1).fold(f64::NEG_INFINITY, f64::max);
    cands.iter().copied().find(|c| c.1 >= best - eps)
}

/// Closed-walk score greedy: one `O(m)` score pass, then `k` rounds of
/// extract-max and incremental update.
pub fn greedy3(g: &Graph, k: usize) -> Selection {
    let start = Instant::now();
    let mut sel = Selection::new(Method::Greedy3);
    let mut st = ScoreState::compute(g);
    for _ in 0..k.min(g.n()) {
        let (v, s) = st.peek_max().expect("alive vertices remain");
        sel.push(v, s as f64);
        st.update(g, v).expect("peeked vertex is alive");
    }
    sel.wall_time = start.elapsed();
    sel
}

/// Exact-eigendrop greedy: each round deletes the vertex whose removal
/// leaves the smallest `λ₁`.
pub fn greedy1(g: &Graph, k: usize, opts: PowerIteration) -> Result<Selection> {
    let start = Instant::now();
    let k = k.min(g.n());
    if k.saturating_mul(g.n()) > GREEDY1_GUARD {
        return Err(Error::Capability(format!(
            "greedy1 needs k·n <= {GREEDY1_GUARD} eigensolves (k = {k}, n = {})",
            g.n()
        )));
    }
    let mut sel = Selection::new(Method::Greedy1);
    let mut removed = vec![false; g.n()];
    for _ in 0..k {
        let cands: Vec<usize> = (0..g.n()).filter(|&v| !removed[v]).collect();
        let values = cands
            .par_iter()
            .map(|&v| {
                let mut mask = removed.clone();
                mask[v] = true;
                let (h, _) = g.induced(&mask);
                lambda1(&h, opts).map(|r| (v, r.lambda1))
            })
            .collect::<Result<Vec<_>>>()?;
        let (v, lam) = argmin_within(&values, 2.0 * opts.tol).unwrap();
        removed[v] = true;
        sel.push(v, lam);
    }
    sel.wall_time = start.elapsed();
    Ok(sel)
}

/// Trace greedy: each round deletes the vertex on the most closed
/// `p`-walks of the current residual graph.
pub fn greedy2(g: &Graph, k: usize, p: usize) -> Result<Selection> {
    let start = Instant::now();
    let k = k.min(g.n());
    let mut sel = Selection::new(Method::Greedy2);
    let mut removed = vec![false; g.n()];
    // Validates p and the size guard even when k = 0.
    let mut current = trace_power(g, p)?;
    for _ in 0..k {
        let cands: Vec<usize> = (0..g.n()).filter(|&v| !removed[v]).collect();
        let traces = cands
            .par_iter()
            .map(|&v| {
                let mut mask = removed.clone();
                mask[v] = true;
                trace_power(&g.induced(&mask).0, p).map(|t| (v, t))
            })
            .collect::<Result<Vec<_>>>()?;
        // Exact integers: max marginal, first index wins.
        let (v, t) = traces
            .iter()
            .copied()
            .fold(None, |best: Option<(usize, u128)>, c| match best {
                Some(b) if b.1 <= c.1 => Some(b),
                _ => Some(c),
            })
            .unwrap();
        removed[v] = true;
        sel.push(v, (current - t) as f64);
        current = t;
    }
    sel.wall_time = start.elapsed();
    Ok(sel)
}

fn binomial(n: usize, k: usize) -> u128 {
    let k = k.min(n - k);
    let mut c: u128 = 1;
    for i in 0..k {
        c = c.saturating_mul((n - i) as u128) / (i as u128 + 1);
        if c > u64::MAX as u128 {
            return u128::MAX;
        }
    }
    c
}

/// Lexicographic k-subsets of `0..n`.
struct Combinations {
    n: usize,
    cur: Vec<usize>,
    first: bool,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        Combinations {
            n,
            cur: (0..k).collect(),
            first: true,
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let k = self.cur.len();
        if self.first {
            self.first = false;
            return (k <= self.n).then(|| self.cur.clone());
        }
        let mut i = k;
        while i > 0 {
            i -= 1;
            if self.cur[i] < self.n - k + i {
                self.cur[i] += 1;
                for j in i + 1..k {
                    self.cur[j] = self.cur[j - 1] + 1;
                }
                return Some(self.cur.clone());
            }
        }
        None
    }
}

/// Exhaustive search over all k-subsets for the smallest residual `λ₁`.
///
/// Ties within `2·tol` go to the lexicographically smallest subset.
pub fn brute_force_optimal(g: &Graph, k: usize, opts: PowerIteration) -> Result<Selection> {
    let start = Instant::now();
    let n = g.n();
    let k = k.min(n);
    let count = binomial(n, k);
    if count > BRUTE_GUARD {
        return Err(Error::Capability(format!(
            "exhaustive search over C({n}, {k}) subsets exceeds {BRUTE_GUARD}"
        )));
    }
    const CHUNK: usize = 4096;
    let mut values = Vec::with_capacity(count as usize);
    let mut combos = Combinations::new(n, k);
    loop {
        let chunk: Vec<Vec<usize>> = combos.by_ref().take(CHUNK).collect();
        if chunk.is_empty() {
            break;
        }
        let vals = chunk
            .par_iter()
            .map(|c| {
                let mut mask = vec![false; n];
                for &v in c {
                    mask[v] = true;
                }
                lambda1(&g.induced(&mask).0, opts).map(|r| r.lambda1)
            })
            .collect::<Result<Vec<_>>>()?;
        values.extend(vals);
    }
    let best = values.iter().copied().fold(f64::INFINITY, f64::min);
    let idx = values
        .iter()
        .position(|&v| v <= best + 2.0 * opts.tol)
        .unwrap();
    let subset = Combinations::new(n, k).nth(idx).unwrap();

    let mut sel = Selection::new(Method::BruteForce);
    for v in subset {
        sel.push(v, values[idx]);
    }
    sel.wall_time = start.elapsed();
    Ok(sel)
}

/// Top-k vertices by degree in the original graph.
pub fn max_degree(g: &Graph, k: usize) -> Selection {
    let start = Instant::now();
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.deg(v)), v));
    let mut sel = Selection::new(Method::MaxDegree);
    for &v in order.iter().take(k) {
        sel.push(v, g.deg(v) as f64);
    }
    sel.wall_time = start.elapsed();
    sel
}

/// Repeatedly deletes the current maximum-degree vertex.
pub fn updated_max_degree(g: &Graph, k: usize) -> Selection {
    let start = Instant::now();
    let mut deg: Vec<usize> = (0..g.n()).map(|v| g.deg(v)).collect();
    let mut alive = vec![true; g.n()];
    let mut sel = Selection::new(Method::UpdatedMaxDegree);
    for _ in 0..k.min(g.n()) {
        let v = (0..g.n())
            .filter(|&v| alive[v])
            .max_by_key(|&v| (deg[v], std::cmp::Reverse(v)))
            .unwrap();
        sel.push(v, deg[v] as f64);
        alive[v] = false;
        for &w in g.neighbors(v) {
            if alive[w] {
                deg[w] -= 1;
            }
        }
    }
    sel.wall_time = start.elapsed();
    sel
}

/// NetShield: greedily grows `S` maximizing the shield value
/// `Sv(S) = Σ_{i∈S} 2λ·u(i)² − Σ_{i,j∈S} A(i,j)·u(i)·u(j)`, where `u` is the
/// principal eigenvector.
pub fn netshield(g: &Graph, k: usize, opts: PowerIteration) -> Result<Selection> {
    let start = Instant::now();
    let spec = lambda1(g, opts)?;
    let (lam, u) = (spec.lambda1, spec.eigvec);
    let n = g.n();
    let self_score: Vec<f64> = u.iter().map(|x| 2.0 * lam * x * x).collect();
    // b[i] = Σ_{j∈S} A(i,j)·u(j)
    let mut b = vec![0.0; n];
    let mut chosen = vec![false; n];
    let mut sel = Selection::new(Method::NetShield);
    for _ in 0..k.min(n) {
        let cands: Vec<(usize, f64)> = (0..n)
            .filter(|&i| !chosen[i])
            .map(|i| (i, self_score[i] - 2.0 * b[i] * u[i]))
            .collect();
        let (v, gain) = argmax_within(&cands, 2.0 * opts.tol).unwrap();
        chosen[v] = true;
        sel.push(v, gain);
        for &w in g.neighbors(v) {
            b[w] += u[v];
        }
    }
    sel.wall_time = start.elapsed();
    Ok(sel)
}
