//! Partitions, the graphs `G(λ, n)` built from them, and the derived graphs
//! used by the volume and face computations.
//!
//! Vertices are 1-based as in the usual flow-polytope notation: a graph on
//! `n + 1` vertices has sink `n + 1`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weakly decreasing sequence of positive integers (never empty).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidPartition("empty partition".into()));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!(
                "{parts:?} has a zero part"
            )));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!(
                "{parts:?} is not weakly decreasing"
            )));
        }
        Ok(Partition { parts })
    }

    /// The staircase `(k, k-1, ..., 1)`.
    pub fn staircase(k: usize) -> Result<Self> {
        Self::new((1..=k).rev().collect())
    }

    /// All partitions of `size` (`size >= 1`), in reverse lexicographic order.
    pub fn all_of_size(size: usize) -> Vec<Partition> {
        fn rec(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rem == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            for p in (1..=rem.min(max)).rev() {
                cur.push(p);
                rec(rem - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if size > 0 {
            rec(size, size, &mut Vec::new(), &mut out);
        }
        out
    }

    /// All partitions with `1 <= |λ| <= max_size`.
    pub fn all_up_to(max_size: usize) -> Vec<Partition> {
        (1..=max_size).flat_map(Self::all_of_size).collect()
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of parts, ℓ(λ).
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// |λ|.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn largest(&self) -> usize {
        self.parts[0]
    }

    /// `λ_i` for 1-based `i`, 0 past the last row.
    pub fn part(&self, i: usize) -> usize {
        i.checked_sub(1)
            .and_then(|k| self.parts.get(k))
            .copied()
            .unwrap_or(0)
    }

    /// Smallest `n` with `n - i >= λ_i` for every row.
    pub fn min_admissible_n(&self) -> usize {
        self.parts
            .iter()
            .enumerate()
            .map(|(k, &p)| p + k + 1)
            .max()
            .unwrap_or(1)
    }

    /// `λ_1 + ℓ(λ)`, from which on the polytopes are all integrally equivalent.
    pub fn stabilization_index(&self) -> usize {
        self.largest() + self.len()
    }

    pub fn check_admissible(&self, n: usize) -> Result<()> {
        for (k, &p) in self.parts.iter().enumerate() {
            let row = k + 1;
            let room = n as i64 - row as i64;
            if room < p as i64 {
                return Err(Error::Inadmissible {
                    row,
                    part: p,
                    n,
                    room,
                });
            }
        }
        Ok(())
    }

    pub fn check_limiting(&self, n: usize) -> Result<()> {
        let required = self.stabilization_index();
        if n < required {
            return Err(Error::NotLimiting { n, required });
        }
        Ok(())
    }

    pub fn is_staircase(&self) -> bool {
        self.parts
            .iter()
            .enumerate()
            .all(|(k, &p)| p == self.len() - k)
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Comma-separated decreasing integers, e.g. `4,3,2,1`.
    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|e| Error::InvalidPartition(format!("bad part {t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(usize::to_string).collect();
        write!(f, "{}", s.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Partition({self})")
    }
}

/// Positive netflow `a_1, ..., a_n`; the sink entry `-Σ a_i` is implicit.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NetflowVector {
    entries: Vec<u64>,
}

impl NetflowVector {
    pub fn new(entries: Vec<u64>) -> Result<Self> {
        if let Some(pos) = entries.iter().position(|&a| a == 0) {
            return Err(Error::InvalidNetflow(format!(
                "entry {} is 0; netflow entries must be positive",
                pos + 1
            )));
        }
        Ok(NetflowVector { entries })
    }

    pub fn ones(n: usize) -> Self {
        NetflowVector {
            entries: vec![1; n],
        }
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `a_i` for 1-based `i`.
    pub fn get(&self, i: usize) -> u64 {
        self.entries[i - 1]
    }

    pub fn total(&self) -> u64 {
        self.entries.iter().sum()
    }

    /// The first `n` entries.
    pub fn truncated(&self, n: usize) -> Result<Self> {
        if self.entries.len() < n {
            return Err(Error::InvalidNetflow(format!(
                "need {n} entries, got {}",
                self.entries.len()
            )));
        }
        Ok(NetflowVector {
            entries: self.entries[..n].to_vec(),
        })
    }

    /// Full signed vector `(a_1, ..., a_n, -Σ a_i)`.
    pub fn with_sink(&self) -> Result<Vec<i64>> {
        let mut out = Vec::with_capacity(self.entries.len() + 1);
        let mut total: i64 = 0;
        for &a in &self.entries {
            let a = i64::try_from(a).map_err(|_| Error::Overflow(format!("netflow entry {a}")))?;
            total = total
                .checked_add(a)
                .ok_or_else(|| Error::Overflow("netflow sum".into()))?;
            out.push(a);
        }
        out.push(-total);
        Ok(out)
    }

    /// Signed target `(t·a_1, ..., t·a_n, -t·Σ a_i)` of the `t`-th dilation.
    pub fn scaled_target(&self, t: u64) -> Result<Vec<i64>> {
        let t = i64::try_from(t).map_err(|_| Error::Overflow(format!("dilation {t}")))?;
        self.with_sink()?
            .into_iter()
            .map(|b| {
                b.checked_mul(t)
                    .ok_or_else(|| Error::Overflow(format!("dilation {t} of entry {b}")))
            })
            .collect()
    }
}

impl FromStr for NetflowVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let entries = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u64>()
                    .map_err(|e| Error::InvalidNetflow(format!("bad entry {t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        NetflowVector::new(entries)
    }
}

/// Loopless directed graph on `[vertex_count]` with every edge `(i, j)`, `i < j`.
///
/// Edges are kept in canonical order: edges not into the last vertex sorted
/// lexicographically, then the edges into the last vertex ("sink edges") by
/// source. Flows and incidence columns index into this order.
#[derive(Clone, PartialEq, Eq)]
pub struct FlowGraph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
    index: BTreeMap<(usize, usize), usize>,
    out: Vec<Vec<usize>>,
    inc: Vec<Vec<usize>>,
}

impl FlowGraph {
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::InvalidGraph(
                "graph needs at least one vertex".into(),
            ));
        }
        for &(i, j) in &edges {
            if i == 0 || j > vertex_count {
                return Err(Error::InvalidGraph(format!(
                    "edge ({i}, {j}) outside vertices 1..={vertex_count}"
                )));
            }
            if i >= j {
                return Err(Error::InvalidGraph(format!(
                    "edge ({i}, {j}) is not forward"
                )));
            }
        }
        let sink = vertex_count;
        let mut inner: Vec<(usize, usize)> =
            edges.iter().copied().filter(|e| e.1 != sink).collect();
        let mut sinks: Vec<(usize, usize)> =
            edges.iter().copied().filter(|e| e.1 == sink).collect();
        inner.sort_unstable();
        sinks.sort_unstable();
        let ordered: Vec<(usize, usize)> = inner.into_iter().chain(sinks).collect();

        let mut index = BTreeMap::new();
        let mut out = vec![Vec::new(); vertex_count + 1];
        let mut inc = vec![Vec::new(); vertex_count + 1];
        for (k, &(i, j)) in ordered.iter().enumerate() {
            if index.insert((i, j), k).is_some() {
                return Err(Error::InvalidGraph(format!("duplicate edge ({i}, {j})")));
            }
            out[i].push(k);
            inc[j].push(k);
        }
        Ok(FlowGraph {
            vertex_count,
            edges: ordered,
            index,
            out,
            inc,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Number of non-sink vertices, `n`.
    pub fn n(&self) -> usize {
        self.vertex_count - 1
    }

    pub fn sink(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Number of edges, `N`.
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edge_index(&self, i: usize, j: usize) -> Option<usize> {
        self.index.get(&(i, j)).copied()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.index.contains_key(&(i, j))
    }

    /// Indices of edges leaving `v`, in canonical order.
    pub fn out_edges(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    /// Indices of edges entering `v`, in canonical order.
    pub fn in_edges(&self, v: usize) -> &[usize] {
        &self.inc[v]
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out[v].len()
    }

    pub fn is_sink_edge(&self, k: usize) -> bool {
        self.edges[k].1 == self.sink()
    }

    /// Edge list with every edge reversed. The result is no longer a forward
    /// graph, so it is returned as a plain list.
    pub fn reversed_edges(&self) -> Vec<(usize, usize)> {
        self.edges.iter().map(|&(i, j)| (j, i)).collect()
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            n: self.n(),
            edges: self.edges.iter().map(|&(i, j)| [i, j]).collect(),
        }
    }

    pub fn from_json(g: &GraphJson) -> Result<Self> {
        let graph = FlowGraph::new(g.n + 1, g.edges.iter().map(|e| (e[0], e[1])).collect())?;
        if graph
            .edges
            .iter()
            .zip(&g.edges)
            .any(|(a, b)| a.0 != b[0] || a.1 != b[1])
        {
            return Err(Error::Parse(
                "graph edges are not in canonical order".into(),
            ));
        }
        Ok(graph)
    }
}

impl fmt::Debug for FlowGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FlowGraph")
            .field("vertex_count", &self.vertex_count)
            .field("edges", &self.edges)
            .finish()
    }
}

/// Graph file format: `{"n": int, "edges": [[i, j], ...]}` in canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

/// `G(λ, n)`: the Young diagram of λ placed flush top-right in the strict upper
/// triangle of an `n × n` matrix, plus an edge from every `i ∈ [n]` to the sink.
/// Row `i` occupies columns `n - λ_i + 1 ..= n`.
pub fn build_graph(lambda: &Partition, n: usize) -> Result<FlowGraph> {
    lambda.check_admissible(n)?;
    let mut edges = Vec::with_capacity(n + lambda.size());
    for (k, &p) in lambda.parts().iter().enumerate() {
        let row = k + 1;
        edges.extend((n - p + 1..=n).map(|col| (row, col)));
    }
    edges.extend((1..=n).map(|i| (i, n + 1)));
    FlowGraph::new(n + 1, edges)
}

/// `G_i`: the edges of `G` leaving `i`, together with every sink edge `(j, n+1)`.
pub fn subgraph_gi(g: &FlowGraph, i: usize) -> Result<FlowGraph> {
    let n = g.n();
    if i == 0 || i > n {
        return Err(Error::VertexOutOfRange { vertex: i, max: n });
    }
    let sink = g.sink();
    let mut edges: Vec<(usize, usize)> = g
        .out_edges(i)
        .iter()
        .map(|&k| g.edges()[k])
        .filter(|e| e.1 != sink)
        .collect();
    edges.extend((1..=n).map(|j| (j, sink)));
    FlowGraph::new(g.vertex_count(), edges)
}

/// `G'`: drop the sink vertex and every edge into it.
pub fn restrict_to_sources(g: &FlowGraph) -> FlowGraph {
    let sink = g.sink();
    let edges = g.edges().iter().copied().filter(|e| e.1 != sink).collect();
    match FlowGraph::new(g.n().max(1), edges) {
        Ok(r) => r,
        Err(e) => unreachable!("restriction of a valid graph is valid: {e}"),
    }
}

/// `t_i = outdeg(i) - 1` for every non-sink vertex.
pub fn outdegree_shift(g: &FlowGraph) -> Result<Vec<i64>> {
    (1..=g.n())
        .map(|v| match g.out_degree(v) {
            0 => Err(Error::NoOutEdge(v)),
            d => Ok(d as i64 - 1),
        })
        .collect()
}
