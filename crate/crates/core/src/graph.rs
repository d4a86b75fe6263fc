//! Simple undirected graphs in compressed adjacency form.

use std::collections::{BTreeSet, HashMap};
use std::fs::File;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

use flate2::read::GzDecoder;

use crate::error::{Error, Result};

/// Immutable simple undirected graph.
///
/// Vertices are dense indices `0..n`. Each vertex carries the external label
/// it was read with; labels are assigned in first-appearance order when
/// parsing, so the same input bytes always produce the same indexing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<usize>,
    labels: Vec<String>,
    index: HashMap<String, usize>,
}

/// Ordered set of dense vertex indices.
///
/// Remembers insertion order so greedy traces can be replayed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VertexSet {
    members: BTreeSet<usize>,
    order: Vec<usize>,
}

impl VertexSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns `false` if `v` was already present.
    pub fn insert(&mut self, v: usize) -> bool {
        if self.members.insert(v) {
            self.order.push(v);
            true
        } else {
            false
        }
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.contains(&v)
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Members in insertion order.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// Members in ascending order.
    pub fn sorted(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn check(&self, n: usize) -> Result<()> {
        match self.members.iter().next_back() {
            Some(&v) if v >= n => Err(Error::VertexOutOfRange { vertex: v, n }),
            _ => Ok(()),
        }
    }

    /// Membership as a dense mask of length `n`. Assumes `check(n)` passed.
    pub fn mask(&self, n: usize) -> Vec<bool> {
        let mut mask = vec![false; n];
        for &v in &self.members {
            mask[v] = true;
        }
        mask
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::new();
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = &'a usize;
    type IntoIter = std::slice::Iter<'a, usize>;

    fn into_iter(self) -> Self::IntoIter {
        self.order.iter()
    }
}

impl Graph {
    /// Graph on `n` vertices labelled `"0".."n-1"`.
    ///
    /// Self-loops are dropped and duplicate edges collapsed. Panics if an
    /// endpoint is `>= n`.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let labels = (0..n).map(|i| i.to_string()).collect();
        Self::with_labels(labels, edges)
    }

    /// Builds a graph from explicit labels and dense-index edges.
    pub fn with_labels(labels: Vec<String>, edges: &[(usize, usize)]) -> Self {
        let n = labels.len();
        let mut deg = vec![0usize; n];
        for &(u, v) in edges {
            assert!(u < n && v < n, "edge ({u}, {v}) out of range for n = {n}");
            if u != v {
                deg[u] += 1;
                deg[v] += 1;
            }
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &deg {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill = offsets[..n].to_vec();
        let mut targets = vec![0usize; offsets[n]];
        for &(u, v) in edges {
            if u != v {
                targets[fill[u]] = v;
                fill[u] += 1;
                targets[fill[v]] = u;
                fill[v] += 1;
            }
        }

        // Sort and dedup each neighbor list, then compact.
        let mut compact = Vec::with_capacity(targets.len());
        let mut new_offsets = Vec::with_capacity(n + 1);
        new_offsets.push(0);
        for v in 0..n {
            let row = &mut targets[offsets[v]..offsets[v + 1]];
            row.sort_unstable();
            let start = compact.len();
            for &w in row.iter() {
                if compact.len() == start || *compact.last().unwrap() != w {
                    compact.push(w);
                }
            }
            new_offsets.push(compact.len());
        }
        compact.shrink_to_fit();

        let index = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i))
            .collect();
        Graph {
            offsets: new_offsets,
            targets: compact,
            labels,
            index,
        }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_edges(n, &[])
    }

    /// Parses a whitespace-separated edge list.
    ///
    /// Lines starting with `#` or `%` and blank lines are skipped. Every
    /// other line must hold exactly two labels.
    pub fn parse_edge_list<R: BufRead>(reader: R) -> Result<Self> {
        let mut labels: Vec<String> = Vec::new();
        let mut index: HashMap<String, usize> = HashMap::new();
        let mut edges = Vec::new();

        let mut intern = |label: &str, labels: &mut Vec<String>| -> usize {
            if let Some(&i) = index.get(label) {
                return i;
            }
            let i = labels.len();
            labels.push(label.to_owned());
            index.insert(label.to_owned(), i);
            i
        };

        for (lineno, line) in reader.lines().enumerate() {
            let line = line?;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') || trimmed.starts_with('%') {
                continue;
            }
            let mut tokens = trimmed.split_whitespace();
            let (a, b) = match (tokens.next(), tokens.next(), tokens.next()) {
                (Some(a), Some(b), None) => (a, b),
                _ => {
                    return Err(Error::Parse {
                        line: lineno + 1,
                        message: format!("expected two vertex labels, found `{trimmed}`"),
                    })
                }
            };
            let u = intern(a, &mut labels);
            let v = intern(b, &mut labels);
            edges.push((u, v));
        }
        Ok(Self::with_labels(labels, &edges))
    }

    /// Reads an edge list from disk; `.gz` files are decompressed.
    pub fn load<P: AsRef<Path>>(path: P) -> Result<Self> {
        let path = path.as_ref();
        let file = File::open(path)?;
        let reader: Box<dyn Read> = if path.extension().is_some_and(|e| e == "gz") {
            Box::new(GzDecoder::new(file))
        } else {
            Box::new(file)
        };
        Self::parse_edge_list(BufReader::new(reader))
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn m(&self) -> usize {
        self.targets.len() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn degree(&self, v: usize) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.offsets[v + 1] - self.offsets[v])
    }

    /// Degree without bounds checking beyond the slice index.
    #[inline]
    pub fn deg(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n()).map(|v| self.deg(v)).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    /// Number of common neighbors. `codegree(v, v)` is `degree(v)`.
    pub fn codegree(&self, u: usize, v: usize) -> Result<usize> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Ok(self.deg(v));
        }
        // Both lists are sorted: merge.
        let (a, b) = (self.neighbors(u), self.neighbors(v));
        let (mut i, mut j, mut common) = (0, 0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    common += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        Ok(common)
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n(),
            })
        }
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    /// Resolves external labels to dense indices.
    pub fn resolve<'a, I>(&self, labels: I) -> Result<VertexSet>
    where
        I: IntoIterator<Item = &'a str>,
    {
        labels
            .into_iter()
            .map(|l| {
                self.index_of(l)
                    .ok_or_else(|| Error::UnknownLabel(l.to_owned()))
            })
            .collect()
    }

    /// Each undirected edge once, as `(u, v)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n()).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    /// Induced subgraph on `V \ s`. Surviving vertices keep their labels.
    pub fn remove_vertices(&self, s: &VertexSet) -> Result<Graph> {
        self.remove_vertices_mapped(s).map(|(g, _)| g)
    }

    /// Like [`Graph::remove_vertices`], also returning for each new vertex
    /// its index in `self`.
    pub fn remove_vertices_mapped(&self, s: &VertexSet) -> Result<(Graph, Vec<usize>)> {
        s.check(self.n())?;
        let removed = s.mask(self.n());
        Ok(self.induced(&removed))
    }

    pub(crate) fn induced(&self, removed: &[bool]) -> (Graph, Vec<usize>) {
        let n = self.n();
        let mut new_index = vec![usize::MAX; n];
        let mut original = Vec::with_capacity(n);
        for v in 0..n {
            if !removed[v] {
                new_index[v] = original.len();
                original.push(v);
            }
        }
        let mut offsets = Vec::with_capacity(original.len() + 1);
        offsets.push(0);
        let mut targets = Vec::new();
        for &v in &original {
            // Relabelling preserves order, so rows stay sorted.
            targets.extend(
                self.neighbors(v)
                    .iter()
                    .filter(|&&w| !removed[w])
                    .map(|&w| new_index[w]),
            );
            offsets.push(targets.len());
        }
        let labels: Vec<String> = original.iter().map(|&v| self.labels[v].clone()).collect();
        let index = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i))
            .collect();
        (
            Graph {
                offsets,
                targets,
                labels,
                index,
            },
            original,
        )
    }

    /// Writes one `label label` line per edge.
    pub fn write_edge_list<W: Write>(&self, mut out: W) -> Result<()> {
        for (u, v) in self.edges() {
            writeln!(out, "{} {}", self.labels[u], self.labels[v])?;
        }
        Ok(())
    }

    /// Writes the `.ids` sidecar: line `i` holds the label of dense index `i`.
    pub fn write_ids<W: Write>(&self, mut out: W) -> Result<()> {
        for l in &self.labels {
            writeln!(out, "{l}")?;
        }
        Ok(())
    }
}

impl std::str::FromStr for Graph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse_edge_list(s.as_bytes())
    }
}
