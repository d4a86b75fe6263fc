//! Small deterministic families and seeded random graphs.

use rand::Rng;

use crate::graph::Graph;

pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_edges(n, &edges)
}

pub fn cycle(n: usize) -> Graph {
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(n, &edges)
}

/// `K_{1,leaves}` with the center at index 0.
pub fn star(leaves: usize) -> Graph {
    let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
    Graph::from_edges(leaves + 1, &edges)
}

pub fn complete(n: usize) -> Graph {
    let mut edges = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            edges.push((i, j));
        }
    }
    Graph::from_edges(n, &edges)
}

/// G(n, p): each pair independently with probability `p`.
pub fn erdos_renyi<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(n, &edges)
}

/// Preferential attachment: each new vertex links to `attach` distinct
/// earlier vertices chosen proportionally to degree. Starts from a clique
/// on `attach + 1` vertices, so `m = C(attach+1, 2) + (n − attach − 1)·attach`.
pub fn barabasi_albert<R: Rng>(n: usize, attach: usize, rng: &mut R) -> Graph {
    assert!(attach >= 1, "attach must be positive");
    let seed = (attach + 1).min(n);
    let mut edges = Vec::with_capacity(n * attach);
    // Every edge endpoint, so a uniform pick is degree-proportional.
    let mut ends = Vec::with_capacity(2 * n * attach);
    for i in 0..seed {
        for j in i + 1..seed {
            edges.push((i, j));
            ends.push(i);
            ends.push(j);
        }
    }
    let mut targets = Vec::with_capacity(attach);
    for v in seed..n {
        targets.clear();
        while targets.len() < attach {
            let t = ends[rng.gen_range(0..ends.len())];
            if !targets.contains(&t) {
                targets.push(t);
            }
        }
        for &t in &targets {
            edges.push((v, t));
            ends.push(v);
            ends.push(t);
        }
    }
    Graph::from_edges(n, &edges)
}
