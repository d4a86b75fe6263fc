#![allow(dead_code)]

use std::path::{Path, PathBuf};

use immunet::Graph;
use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn data_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/data")
}

pub fn karate_path() -> PathBuf {
    data_dir().join("karate.txt")
}

pub fn karate() -> Graph {
    Graph::load(karate_path()).unwrap()
}

/// The Oregon AS graph is not redistributed here. Point `IMMUNET_OREGON` at
/// SNAP's `oregon1_010331.txt[.gz]` or drop it into `crates/core/data/`.
pub fn oregon_path() -> Option<PathBuf> {
    if let Some(p) = std::env::var_os("IMMUNET_OREGON") {
        return Some(PathBuf::from(p));
    }
    ["oregon1_010331.txt", "oregon1_010331.txt.gz"]
        .iter()
        .map(|f| data_dir().join(f))
        .find(|p| p.exists())
}

pub fn random_graph<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
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

/// Random spanning tree plus extra random edges.
pub fn random_connected<R: Rng>(n: usize, extra: f64, rng: &mut R) -> Graph {
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.gen_range(0..v), v));
    }
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(extra) {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(n, &edges)
}

pub fn dense(g: &Graph) -> DMatrix<f64> {
    let n = g.n();
    let mut a = DMatrix::zeros(n, n);
    for (u, v) in g.edges() {
        a[(u, v)] = 1.0;
        a[(v, u)] = 1.0;
    }
    a
}

pub fn eigenvalues(g: &Graph) -> Vec<f64> {
    if g.n() == 0 {
        return Vec::new();
    }
    SymmetricEigen::new(dense(g))
        .eigenvalues
        .iter()
        .copied()
        .collect()
}

/// Largest eigenvalue from a full dense eigensolve.
pub fn dense_lambda1(g: &Graph) -> f64 {
    eigenvalues(g).into_iter().fold(0.0, f64::max)
}

pub fn dense_lambda1_without(g: &Graph, removed: &[usize]) -> f64 {
    let keep: Vec<usize> = (0..g.n()).filter(|v| !removed.contains(v)).collect();
    let a = dense(g);
    let sub = DMatrix::from_fn(keep.len(), keep.len(), |i, j| a[(keep[i], keep[j])]);
    if keep.is_empty() {
        return 0.0;
    }
    SymmetricEigen::new(sub)
        .eigenvalues
        .iter()
        .copied()
        .fold(0.0, f64::max)
}

/// Boolean adjacency matrix with rows and columns of `removed` zeroed.
pub fn naive_degrees_after(g: &Graph, removed: &[usize]) -> Vec<usize> {
    let n = g.n();
    let mut m = vec![vec![false; n]; n];
    for (u, v) in g.edges() {
        m[u][v] = true;
        m[v][u] = true;
    }
    for &r in removed {
        for i in 0..n {
            m[r][i] = false;
            m[i][r] = false;
        }
    }
    (0..n)
        .filter(|v| !removed.contains(v))
        .map(|v| m[v].iter().filter(|&&b| b).count())
        .collect()
}

/// Closed `p`-walks by explicit enumeration over all `n^p` sequences.
/// Returns the total and, per vertex, the number of walks visiting it.
/// Independent of the library implementation.
pub fn enumerate_closed_walks(g: &Graph, p: usize) -> (u64, Vec<u64>) {
    let n = g.n();
    let mut total = 0;
    let mut per_vertex = vec![0u64; n];
    if n == 0 {
        return (0, per_vertex);
    }
    let mut seq = vec![0usize; p];
    let mut seen = vec![false; n];
    for code in 0..n.pow(p as u32) {
        let mut c = code;
        for slot in seq.iter_mut() {
            *slot = c % n;
            c /= n;
        }
        if (0..p).all(|i| g.has_edge(seq[i], seq[(i + 1) % p])) {
            total += 1;
            seen.iter_mut().for_each(|s| *s = false);
            for &v in &seq {
                seen[v] = true;
            }
            for v in 0..n {
                per_vertex[v] += u64::from(seen[v]);
            }
        }
    }
    (total, per_vertex)
}
