//! Closed-walk counting and the degree/codegree vertex scores.
//!
//! The number of closed 4-walks through `v` has the closed form
//! `2·d(v)² + 4·Σ_{u≠v} d(u,v)²`. Replacing the sum of squared codegrees by
//! the square of the codegree sum gives `score′(v) = 2·d(v)² + 4·(Σ d(u,v))²`,
//! and since `Σ_{u≠v} d(u,v) = Σ_{w∈N(v)} (d(w) − 1)` that surrogate only
//! needs degrees of neighbors. [`ScoreState`] keeps those tables and patches
//! them in `O(Σ_{w∈N(v)} d(w))` when a vertex is deleted.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::spectral::trace_power;

/// Largest graph accepted by [`cw_brute`].
pub const BRUTE_MAX_N: usize = 12;
/// Longest walk accepted by [`cw_brute`].
pub const BRUTE_MAX_P: usize = 8;

/// `(Σ_{u≠v} d(u,v), Σ_{u≠v} d(u,v)²)`.
///
/// Marks `N(v)` in a characteristic vector, then scans every other vertex's
/// adjacency list counting marked entries. `O(n + m)`.
pub fn codegree_moments(g: &Graph, v: usize) -> Result<(u64, u64)> {
    g.check_vertex(v)?;
    let mut chi = vec![false; g.n()];
    for &w in g.neighbors(v) {
        chi[w] = true;
    }
    let (mut sum, mut sum_sq) = (0u64, 0u64);
    for u in (0..g.n()).filter(|&u| u != v) {
        let c = g.neighbors(u).iter().filter(|&&x| chi[x]).count() as u64;
        sum += c;
        sum_sq += c * c;
    }
    Ok((sum, sum_sq))
}

/// Exact number of closed 4-walks that visit `v`.
pub fn cw4_vertex(g: &Graph, v: usize) -> Result<u64> {
    let (_, sum_sq) = codegree_moments(g, v)?;
    let d = g.deg(v) as u64;
    Ok(2 * d * d + 4 * sum_sq)
}

/// [`cw4_vertex`] for every vertex. `O(n·m)`.
pub fn cw4_all(g: &Graph) -> Vec<u64> {
    (0..g.n()).map(|v| cw4_vertex(g, v).unwrap()).collect()
}

/// Counts closed `p`-walks visiting `v` by enumerating every vertex sequence.
///
/// A closed walk is `v₀ v₁ … v_p` with `v₀ = v_p`; different starting
/// positions of the same cycle are different walks, matching `tr(A^p)`.
pub fn cw_brute(g: &Graph, v: usize, p: usize) -> Result<u64> {
    g.check_vertex(v)?;
    if p < 2 || !p.is_multiple_of(2) {
        return Err(Error::Argument(format!(
            "walk length must be even and >= 2, got {p}"
        )));
    }
    if g.n() > BRUTE_MAX_N || p > BRUTE_MAX_P {
        return Err(Error::Capability(format!(
            "closed-walk enumeration limited to n <= {BRUTE_MAX_N}, p <= {BRUTE_MAX_P} \
             (got n = {}, p = {p})",
            g.n()
        )));
    }

    fn extend(g: &Graph, start: usize, cur: usize, left: usize, target: usize, seen: bool) -> u64 {
        if left == 0 {
            return u64::from(cur == start && seen);
        }
        g.neighbors(cur)
            .iter()
            .map(|&next| extend(g, start, next, left - 1, target, seen || next == target))
            .sum()
    }

    Ok((0..g.n())
        .map(|start| extend(g, start, start, p, v, start == v))
        .sum())
}

/// `g_p(S) = tr(A^p) − tr(A₋S^p)`: closed `p`-walks meeting `s`.
pub fn gp_set(g: &Graph, s: &VertexSet, p: usize) -> Result<u128> {
    let full = trace_power(g, p)?;
    let rest = trace_power(&g.remove_vertices(s)?, p)?;
    Ok(full - rest)
}

/// Mutable per-vertex degree, codegree-sum and score tables with a
/// max-priority index over alive vertices.
///
/// Scores are `u64`; `codeg_sum[v] ≤ 2m`, so they cannot overflow below
/// about 2³⁰ edges.
#[derive(Clone, Debug)]
pub struct ScoreState {
    deg: Vec<u64>,
    codeg_sum: Vec<u64>,
    score: Vec<u64>,
    alive: Vec<bool>,
    // Lazy max-heap; entries whose key no longer matches `score` are stale.
    heap: BinaryHeap<(u64, Reverse<usize>)>,
}

impl PartialEq for ScoreState {
    fn eq(&self, other: &Self) -> bool {
        self.deg == other.deg
            && self.codeg_sum == other.codeg_sum
            && self.score == other.score
            && self.alive == other.alive
    }
}

#[inline]
fn score_of(deg: u64, codeg_sum: u64) -> u64 {
    2 * deg * deg + 4 * codeg_sum * codeg_sum
}

impl ScoreState {
    /// Builds all tables in `O(n + m)`.
    pub fn compute(g: &Graph) -> Self {
        let n = g.n();
        let deg: Vec<u64> = (0..n).map(|v| g.deg(v) as u64).collect();
        let mut codeg_sum = vec![0u64; n];
        for (v, &dv) in deg.iter().enumerate() {
            for &w in g.neighbors(v) {
                codeg_sum[w] += dv - 1;
            }
        }
        let score: Vec<u64> = (0..n).map(|v| score_of(deg[v], codeg_sum[v])).collect();
        let heap = score
            .iter()
            .enumerate()
            .map(|(v, &s)| (s, Reverse(v)))
            .collect::<Vec<_>>()
            .into();
        ScoreState {
            deg,
            codeg_sum,
            score,
            alive: vec![true; n],
            heap,
        }
    }

    pub fn deg(&self) -> &[u64] {
        &self.deg
    }

    pub fn codeg_sum(&self) -> &[u64] {
        &self.codeg_sum
    }

    pub fn score(&self) -> &[u64] {
        &self.score
    }

    pub fn alive(&self) -> &[bool] {
        &self.alive
    }

    pub fn is_alive(&self, v: usize) -> bool {
        self.alive[v]
    }

    /// Alive vertex with the highest score, lowest index on ties.
    pub fn peek_max(&mut self) -> Option<(usize, u64)> {
        while let Some(&(s, Reverse(v))) = self.heap.peek() {
            if self.alive[v] && self.score[v] == s {
                return Some((v, s));
            }
            self.heap.pop();
        }
        None
    }

    /// Deletes `v` and patches the tables of its neighbors and their
    /// neighbors so they match a fresh [`ScoreState::compute`] on `G − v`.
    pub fn update(&mut self, g: &Graph, v: usize) -> Result<()> {
        g.check_vertex(v)?;
        if !self.alive[v] {
            return Err(Error::DeadVertex(v));
        }
        let dv = self.deg[v];
        self.alive[v] = false;
        for &w in g.neighbors(v) {
            if !self.alive[w] {
                continue;
            }
            self.deg[w] -= 1;
            // v contributed d(v) − 1 to each neighbor's codegree sum.
            self.codeg_sum[w] -= dv - 1;
            // d(w) dropped by one, which every other alive neighbor of w saw.
            for &x in g.neighbors(w) {
                if self.alive[x] {
                    self.codeg_sum[x] -= 1;
                }
            }
        }
        self.deg[v] = 0;
        self.codeg_sum[v] = 0;
        self.score[v] = 0;

        for &w in g.neighbors(v) {
            if !self.alive[w] {
                continue;
            }
            self.rescore(w);
            for &x in g.neighbors(w) {
                if self.alive[x] {
                    self.rescore(x);
                }
            }
        }
        Ok(())
    }

    fn rescore(&mut self, v: usize) {
        let s = score_of(self.deg[v], self.codeg_sum[v]);
        if s != self.score[v] {
            self.score[v] = s;
            self.heap.push((s, Reverse(v)));
        }
    }
}

pub fn compute_scores(g: &Graph) -> ScoreState {
    ScoreState::compute(g)
}

pub fn update_scores(st: &mut ScoreState, g: &Graph, v: usize) -> Result<()> {
    st.update(g, v)
}
