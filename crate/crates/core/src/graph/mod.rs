//! Simple undirected graphs and the transformations used by the reductions:
//! S-clones, k-clones, pendant paths, combs and vertex deletion.
//!
//! Every transformation returns a fresh graph with a fixed, documented
//! vertex numbering so that results can be compared edge-for-edge.

mod generate;
mod io;

pub use generate::{graphs_up_to_isomorphism, random_graph};
pub use io::{parse_graph, parse_graph_dimacs, parse_graph_json, GraphJson};

use std::collections::BTreeSet;
use std::fmt;

use crate::cnf::Literal;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    vertex_count: usize,
    /// Sorted, each pair stored as `(u, v)` with `u < v`.
    edges: Vec<(usize, usize)>,
    labels: Option<Vec<Literal>>,
}

impl Graph {
    /// Builds a graph, rejecting self-loops, duplicate edges and
    /// out-of-range endpoints.
    pub fn new(
        vertex_count: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u >= vertex_count || v >= vertex_count {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u}, {v}) has an endpoint outside 0..{vertex_count}"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {u}")));
            }
            if !set.insert((u.min(v), u.max(v))) {
                return Err(Error::InvalidGraph(format!("duplicate edge ({u}, {v})")));
            }
        }
        Ok(Graph {
            vertex_count,
            edges: set.into_iter().collect(),
            labels: None,
        })
    }

    /// For constructions that may produce the same edge more than once.
    pub(crate) fn from_edge_set(vertex_count: usize, edges: BTreeSet<(usize, usize)>) -> Self {
        debug_assert!(edges.iter().all(|&(u, v)| u < v && v < vertex_count));
        Graph {
            vertex_count,
            edges: edges.into_iter().collect(),
            labels: None,
        }
    }

    pub fn with_labels(mut self, labels: Vec<Literal>) -> Result<Self> {
        if labels.len() != self.vertex_count {
            return Err(Error::InvalidGraph(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.vertex_count
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn edgeless(n: usize) -> Self {
        Graph {
            vertex_count: n,
            edges: Vec::new(),
            labels: None,
        }
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        Graph::from_edge_set(n, edges)
    }

    /// The path on `n` vertices.
    pub fn path(n: usize) -> Self {
        let edges = (1..n).map(|v| (v - 1, v)).collect();
        Graph::from_edge_set(n, edges)
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a simple cycle needs at least 3 vertices");
        let mut edges: BTreeSet<_> = (1..n).map(|v| (v - 1, v)).collect();
        edges.insert((0, n - 1));
        Graph::from_edge_set(n, edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn labels(&self) -> Option<&[Literal]> {
        self.labels.as_deref()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.binary_search(&(u.min(v), u.max(v))).is_ok()
    }

    /// Sorted neighbor lists.
    pub fn neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertex_count];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.vertex_count {
            return Err(Error::InvalidGraph(format!(
                "vertex {v} does not exist (graph has {} vertices)",
                self.vertex_count
            )));
        }
        Ok(())
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", io::to_dimacs(self))
    }
}

/// A multiset of nonnegative path lengths, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CloneSpec {
    entries: Vec<u32>,
}

impl CloneSpec {
    pub fn new(mut entries: Vec<u32>) -> Self {
        entries.sort_unstable();
        CloneSpec { entries }
    }

    /// `k` copies of zero: the k-clone.
    pub fn zeros(k: usize) -> Self {
        CloneSpec {
            entries: vec![0; k],
        }
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn sum(&self) -> u64 {
        self.entries.iter().map(|&s| u64::from(s)).sum()
    }

    /// Vertices contributed per original vertex, `sum + len`.
    pub fn block_size(&self) -> usize {
        self.sum() as usize + self.len()
    }
}

impl fmt::Display for CloneSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(u32::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl std::str::FromStr for CloneSpec {
    type Err = Error;

    /// Comma separated, e.g. `0,2,3`. Braces are optional.
    fn from_str(text: &str) -> Result<Self> {
        let inner = text.trim().trim_start_matches('{').trim_end_matches('}');
        if inner.trim().is_empty() {
            return Ok(CloneSpec::new(Vec::new()));
        }
        inner
            .split(',')
            .map(|part| {
                part.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::InvalidArgument(format!("bad clone entry {part:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(CloneSpec::new)
    }
}

/// Position of an S-clone vertex relative to the graph it was built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClonePosition {
    pub original: usize,
    /// Index into the sorted entries of the spec.
    pub clone: usize,
    /// 0 for the clone itself, `1..=s` along its pendant path.
    pub path_position: usize,
}

/// Vertex numbering of an S-clone.
///
/// Original vertex `a` owns the block `a*B .. (a+1)*B` with
/// `B = sum(S) + |S|`. Within a block the `|S|` clones come first, in the
/// sorted order of `S`, followed by the pendant path of clone 0, then the
/// path of clone 1, and so on, each path listed from the clone outward.
#[derive(Debug, Clone)]
pub struct CloneLayout {
    spec: CloneSpec,
    path_offsets: Vec<usize>,
}

impl CloneLayout {
    pub fn new(spec: &CloneSpec) -> Self {
        let mut offset = spec.len();
        let path_offsets = spec
            .entries()
            .iter()
            .map(|&s| {
                let start = offset;
                offset += s as usize;
                start
            })
            .collect();
        CloneLayout {
            spec: spec.clone(),
            path_offsets,
        }
    }

    pub fn block_size(&self) -> usize {
        self.spec.block_size()
    }

    pub fn vertex(&self, pos: ClonePosition) -> usize {
        let base = pos.original * self.block_size();
        if pos.path_position == 0 {
            base + pos.clone
        } else {
            debug_assert!(pos.path_position <= self.spec.entries()[pos.clone] as usize);
            base + self.path_offsets[pos.clone] + pos.path_position - 1
        }
    }

    pub fn locate(&self, v: usize) -> ClonePosition {
        let block = self.block_size();
        let original = v / block;
        let local = v % block;
        if local < self.spec.len() {
            return ClonePosition {
                original,
                clone: local,
                path_position: 0,
            };
        }
        let clone = self.path_offsets.partition_point(|&start| start <= local) - 1;
        ClonePosition {
            original,
            clone,
            path_position: local - self.path_offsets[clone] + 1,
        }
    }
}

/// Replaces every vertex by `|S|` pairwise non-adjacent clones, joins the
/// clone classes of adjacent vertices completely, and hangs a path of
/// length `s_i` off the `i`-th clone. See [`CloneLayout`] for the numbering.
pub fn s_clone(g: &Graph, spec: &CloneSpec) -> Graph {
    let layout = CloneLayout::new(spec);
    let n = g.vertex_count * layout.block_size();
    let mut edges = BTreeSet::new();
    let k = spec.len();
    let at = |original, clone, path_position| {
        layout.vertex(ClonePosition {
            original,
            clone,
            path_position,
        })
    };
    for &(a, b) in &g.edges {
        for i in 0..k {
            for j in 0..k {
                let (u, v) = (at(a, i, 0), at(b, j, 0));
                edges.insert((u.min(v), u.max(v)));
            }
        }
    }
    for a in 0..g.vertex_count {
        for (i, &s) in spec.entries().iter().enumerate() {
            for p in 1..=s as usize {
                edges.insert((
                    at(a, i, p - 1).min(at(a, i, p)),
                    at(a, i, p - 1).max(at(a, i, p)),
                ));
            }
        }
    }
    Graph::from_edge_set(n, edges)
}

pub fn k_clone(g: &Graph, k: usize) -> Result<Graph> {
    if k == 0 {
        return Err(Error::InvalidArgument("k-clone needs k >= 1".into()));
    }
    Ok(s_clone(g, &CloneSpec::zeros(k)))
}

/// Appends vertices `n..n+k` forming a path `v, n, n+1, ..., n+k-1`.
pub fn attach_path(g: &Graph, v: usize, k: usize) -> Result<Graph> {
    g.check_vertex(v)?;
    let n = g.vertex_count;
    let mut edges: BTreeSet<_> = g.edges.iter().copied().collect();
    let mut prev = v;
    for next in n..n + k {
        edges.insert((prev.min(next), prev.max(next)));
        prev = next;
    }
    Ok(Graph::from_edge_set(n + k, edges))
}

/// Gives every vertex `k` pendant leaves. Leaf `j` of vertex `v` is
/// numbered `n + v*k + j`.
pub fn comb(g: &Graph, k: usize) -> Graph {
    let n = g.vertex_count;
    let mut edges: BTreeSet<_> = g.edges.iter().copied().collect();
    for v in 0..n {
        for j in 0..k {
            edges.insert((v, n + v * k + j));
        }
    }
    Graph::from_edge_set(n * (k + 1), edges)
}

/// Removes `v`; vertices above `v` shift down by one. Labels follow.
pub fn delete_vertex(g: &Graph, v: usize) -> Result<Graph> {
    g.check_vertex(v)?;
    let shift = |u: usize| if u > v { u - 1 } else { u };
    let edges = g
        .edges
        .iter()
        .filter(|&&(a, b)| a != v && b != v)
        .map(|&(a, b)| (shift(a), shift(b)))
        .collect();
    let mut out = Graph::from_edge_set(g.vertex_count - 1, edges);
    if let Some(labels) = &g.labels {
        let mut labels = labels.clone();
        labels.remove(v);
        out.labels = Some(labels);
    }
    Ok(out)
}
