//! Flows on a [`FlowGraph`], vertices of flow polytopes via spanning trees with
//! one out-edge per vertex, and the maps that split the limiting polytope into
//! a product of scaled simplices.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_math::{affine_rank, format_rat, parse_rat, ExactRat};
use crate::partition_graph::{subgraph_gi, FlowGraph, NetflowVector, Partition};

/// Edge values parallel to a graph's canonical edge order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Flow {
    pub values: Vec<ExactRat>,
}

impl Flow {
    pub fn new(values: Vec<ExactRat>) -> Self {
        Flow { values }
    }

    pub fn from_ints<I: IntoIterator<Item = i64>>(values: I) -> Self {
        Flow {
            values: values
                .into_iter()
                .map(|v| BigRational::from_integer(v.into()))
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Value on edge `(i, j)`, zero if the edge is absent.
    pub fn on(&self, g: &FlowGraph, i: usize, j: usize) -> ExactRat {
        g.edge_index(i, j)
            .map_or_else(BigRational::zero, |k| self.values[k].clone())
    }

    pub fn is_integral(&self) -> bool {
        self.values.iter().all(|v| v.is_integer())
    }

    pub fn to_json(&self, g: &FlowGraph) -> FlowJson {
        FlowJson {
            edges: g.edges().iter().map(|&(i, j)| [i, j]).collect(),
            values: self.values.iter().map(format_rat).collect(),
        }
    }

    pub fn from_json(g: &FlowGraph, json: &FlowJson) -> Result<Self> {
        if json.edges.len() != g.edge_count() || json.values.len() != g.edge_count() {
            return Err(Error::LengthMismatch {
                expected: g.edge_count(),
                got: json.values.len(),
            });
        }
        let mut values = vec![BigRational::zero(); g.edge_count()];
        for (e, v) in json.edges.iter().zip(&json.values) {
            let k = g
                .edge_index(e[0], e[1])
                .ok_or(Error::NotSubgraph(e[0], e[1]))?;
            values[k] = parse_rat(v)?;
        }
        Ok(Flow { values })
    }
}

/// Flow file format: `{"edges": [[i, j], ...], "values": ["num/den", ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlowJson {
    pub edges: Vec<[usize; 2]>,
    pub values: Vec<String>,
}

/// The `(n+1) × N` matrix with column `e_i - e_j` for edge `(i, j)`.
#[derive(Clone, Debug)]
pub struct IncidenceMatrix {
    rows: usize,
    columns: Vec<(usize, usize)>,
}

impl IncidenceMatrix {
    pub fn new(g: &FlowGraph) -> Self {
        IncidenceMatrix {
            rows: g.vertex_count(),
            columns: g.edges().to_vec(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, k: usize) -> Vec<i64> {
        let (i, j) = self.columns[k];
        let mut c = vec![0; self.rows];
        c[i - 1] = 1;
        c[j - 1] = -1;
        c
    }

    pub fn dense(&self) -> Vec<Vec<i64>> {
        let mut m = vec![vec![0; self.cols()]; self.rows];
        for (k, &(i, j)) in self.columns.iter().enumerate() {
            m[i - 1][k] = 1;
            m[j - 1][k] = -1;
        }
        m
    }

    /// `M · x`.
    pub fn apply(&self, x: &[ExactRat]) -> Vec<ExactRat> {
        let mut out = vec![BigRational::zero(); self.rows];
        for (&(i, j), v) in self.columns.iter().zip(x) {
            out[i - 1] += v;
            out[j - 1] -= v;
        }
        out
    }
}

/// One chosen out-edge (an index into the canonical edge list) for every
/// non-sink vertex `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SpanningChoice {
    edges: Vec<usize>,
}

impl SpanningChoice {
    pub fn new(g: &FlowGraph, edges: Vec<usize>) -> Result<Self> {
        if edges.len() != g.n() {
            return Err(Error::InvalidChoice(format!(
                "{} choices for {} non-sink vertices",
                edges.len(),
                g.n()
            )));
        }
        for (k, &e) in edges.iter().enumerate() {
            if !g.out_edges(k + 1).contains(&e) {
                return Err(Error::InvalidChoice(format!(
                    "edge index {e} does not leave vertex {}",
                    k + 1
                )));
            }
        }
        Ok(SpanningChoice { edges })
    }

    /// From the chosen heads: vertex `v` uses edge `(v, heads[v-1])`.
    pub fn from_heads(g: &FlowGraph, heads: &[usize]) -> Result<Self> {
        let edges = heads
            .iter()
            .enumerate()
            .map(|(k, &h)| g.edge_index(k + 1, h).ok_or(Error::NotSubgraph(k + 1, h)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(g, edges)
    }

    /// The `index`-th choice in mixed-radix order: vertex 1 most significant,
    /// each digit ranging over the vertex's out-edges in canonical order.
    pub fn from_index(g: &FlowGraph, mut index: usize) -> Result<Self> {
        let mut edges = vec![0; g.n()];
        for v in (1..=g.n()).rev() {
            let outs = g.out_edges(v);
            if outs.is_empty() {
                return Err(Error::NoOutEdge(v));
            }
            edges[v - 1] = outs[index % outs.len()];
            index /= outs.len();
        }
        Ok(SpanningChoice { edges })
    }

    pub fn edges(&self) -> &[usize] {
        &self.edges
    }
}

fn check_netflow(g: &FlowGraph, a: &NetflowVector) -> Result<()> {
    if a.len() != g.n() {
        return Err(Error::LengthMismatch {
            expected: g.n(),
            got: a.len(),
        });
    }
    Ok(())
}

fn target(a: &NetflowVector) -> Result<Vec<ExactRat>> {
    Ok(a.with_sink()?
        .into_iter()
        .map(|x| BigRational::from_integer(x.into()))
        .collect())
}

/// Whether `f` is a nonnegative flow with `outflow - inflow = a_v` everywhere
/// (the sink absorbing `Σ a`).
pub fn validate_flow(g: &FlowGraph, a: &NetflowVector, f: &Flow) -> Result<bool> {
    check_netflow(g, a)?;
    if f.len() != g.edge_count() {
        return Err(Error::LengthMismatch {
            expected: g.edge_count(),
            got: f.len(),
        });
    }
    if f.values.iter().any(|v| v.is_negative()) {
        return Ok(false);
    }
    Ok(IncidenceMatrix::new(g).apply(&f.values) == target(a)?)
}

/// The unique `a`-flow supported on the tree of a spanning choice. Vertices
/// are settled in increasing order: each pushes `a_v` plus its inflow along
/// its chosen edge.
pub fn tree_flow(g: &FlowGraph, a: &NetflowVector, choice: &SpanningChoice) -> Result<Flow> {
    check_netflow(g, a)?;
    let mut inflow = vec![BigInt::zero(); g.vertex_count() + 1];
    let mut values = vec![BigRational::zero(); g.edge_count()];
    for v in 1..=g.n() {
        let k = choice.edges[v - 1];
        let amount = BigInt::from(a.get(v)) + &inflow[v];
        inflow[g.edges()[k].1] += &amount;
        values[k] = BigRational::from_integer(amount);
    }
    Ok(Flow { values })
}

/// Number of spanning choices, `∏ outdeg(v)`.
pub fn choice_count(g: &FlowGraph) -> Result<usize> {
    (1..=g.n()).try_fold(1usize, |acc, v| match g.out_degree(v) {
        0 => Err(Error::NoOutEdge(v)),
        d => acc
            .checked_mul(d)
            .ok_or_else(|| Error::TooLarge("spanning choice count overflows".into())),
    })
}

/// All vertices of `F_G(a)`: one tree flow per spanning choice, in
/// mixed-radix order of the choices.
pub fn enumerate_vertices(g: &FlowGraph, a: &NetflowVector) -> Result<Vec<Flow>> {
    check_netflow(g, a)?;
    let total = choice_count(g)?;
    (0..total)
        .into_par_iter()
        .map(|idx| tree_flow(g, a, &SpanningChoice::from_index(g, idx)?))
        .collect()
}

/// Unique flow on an arbitrary spanning tree (edge indices), by peeling leaves.
/// Values may come out negative.
pub fn spanning_tree_flow(g: &FlowGraph, a: &NetflowVector, tree: &[usize]) -> Result<Flow> {
    check_netflow(g, a)?;
    let vc = g.vertex_count();
    if tree.len() + 1 != vc {
        return Err(Error::InvalidGraph(format!(
            "{} edges cannot span {vc} vertices as a tree",
            tree.len()
        )));
    }
    let mut demand: Vec<BigInt> = std::iter::once(BigInt::zero())
        .chain(a.with_sink()?.into_iter().map(BigInt::from))
        .collect();
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); vc + 1];
    for &k in tree {
        let (i, j) = g.edges()[k];
        incident[i].push(k);
        incident[j].push(k);
    }
    let mut values = vec![BigRational::zero(); g.edge_count()];
    let mut alive = vec![true; g.edge_count()];
    let mut stack: Vec<usize> = (1..=vc).filter(|&v| incident[v].len() == 1).collect();
    let mut settled = 0;
    while let Some(v) = stack.pop() {
        let live: Vec<usize> = incident[v].iter().copied().filter(|&k| alive[k]).collect();
        let [k] = live[..] else { continue };
        alive[k] = false;
        settled += 1;
        let (i, j) = g.edges()[k];
        let (amount, other) = if i == v {
            (demand[v].clone(), j)
        } else {
            (-demand[v].clone(), i)
        };
        demand[v] = BigInt::zero();
        if i == v {
            demand[other] += &amount;
        } else {
            demand[other] -= &amount;
        }
        values[k] = BigRational::from_integer(amount);
        if incident[other].iter().filter(|&&e| alive[e]).count() == 1 {
            stack.push(other);
        }
    }
    if settled != tree.len() {
        return Err(Error::InvalidGraph(
            "edge set is not a spanning tree".into(),
        ));
    }
    Ok(Flow { values })
}

/// Every spanning tree of `G` (as sorted edge-index lists) whose unique
/// `a`-flow is nonnegative, together with that flow.
pub fn regular_spanning_trees(g: &FlowGraph, a: &NetflowVector) -> Result<Vec<(Vec<usize>, Flow)>> {
    check_netflow(g, a)?;
    let vc = g.vertex_count();
    let need = vc - 1;

    fn find(parent: &[usize], mut x: usize) -> usize {
        while parent[x] != x {
            x = parent[x];
        }
        x
    }

    fn rec(
        g: &FlowGraph,
        next: usize,
        need: usize,
        parent: &mut Vec<usize>,
        chosen: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if chosen.len() == need {
            out.push(chosen.clone());
            return;
        }
        let missing = need - chosen.len();
        for k in next..g.edge_count() {
            if g.edge_count() - k < missing {
                break;
            }
            let (i, j) = g.edges()[k];
            let (ri, rj) = (find(parent, i), find(parent, j));
            if ri == rj {
                continue;
            }
            parent[ri] = rj;
            chosen.push(k);
            rec(g, k + 1, need, parent, chosen, out);
            chosen.pop();
            parent[ri] = ri;
        }
    }

    let mut trees = Vec::new();
    let mut parent: Vec<usize> = (0..=vc).collect();
    rec(g, 0, need, &mut parent, &mut Vec::new(), &mut trees);
    let mut out = Vec::new();
    for t in trees {
        let f = spanning_tree_flow(g, a, &t)?;
        if f.values.iter().all(|v| !v.is_negative()) {
            out.push((t, f));
        }
    }
    Ok(out)
}

/// `a` is generic for `G` when no flow is the unique flow of two distinct
/// regular spanning trees. Checked exhaustively.
pub fn is_generic(g: &FlowGraph, a: &NetflowVector) -> Result<bool> {
    let trees = regular_spanning_trees(g, a)?;
    let mut seen = HashSet::with_capacity(trees.len());
    Ok(trees.into_iter().all(|(_, f)| seen.insert(f)))
}

/// Dimension of the affine hull of a set of flows.
pub fn affine_dimension(flows: &[Flow]) -> Option<usize> {
    let pts: Vec<Vec<ExactRat>> = flows.iter().map(|f| f.values.clone()).collect();
    affine_rank(&pts)
}

/// Splits a flow on `G(λ, n)`, `n >= λ_1 + ℓ(λ)`, into flows on `G_1, ..., G_n`.
///
/// On `G_i`: edges leaving `i` keep their value except the sink edge, which
/// takes `a_i` minus the other out-flow of `i`; a sink edge `(p, n+1)` with
/// `(i, p)` in `G` carries `a_p + f(i, p)`; every other sink edge carries `a_p`.
pub fn product_map(
    g: &FlowGraph,
    lambda: &Partition,
    a: &NetflowVector,
    f: &Flow,
) -> Result<Vec<Flow>> {
    lambda.check_limiting(g.n())?;
    if !validate_flow(g, a, f)? {
        return Err(Error::InvalidFlow("not an a-flow on the graph".into()));
    }
    let sink = g.sink();
    (1..=g.n())
        .map(|i| {
            let gi = subgraph_gi(g, i)?;
            let own: ExactRat = g
                .out_edges(i)
                .iter()
                .filter(|&&k| !g.is_sink_edge(k))
                .map(|&k| f.values[k].clone())
                .sum();
            let values = gi
                .edges()
                .iter()
                .map(|&(p, q)| {
                    let ap = BigRational::from_integer(a.get(p).into());
                    if q != sink {
                        f.on(g, p, q)
                    } else if p == i {
                        ap - &own
                    } else if g.has_edge(i, p) {
                        ap + f.on(g, i, p)
                    } else {
                        ap
                    }
                })
                .collect();
            Ok(Flow { values })
        })
        .collect()
}

/// Inverse of [`product_map`]: non-sink edges `(p, q)` read `f_p(p, q)`; the
/// sink edge of `p` reads `f_p(p, n+1)` plus the inflow into `p`.
pub fn product_map_inverse(g: &FlowGraph, lambda: &Partition, factors: &[Flow]) -> Result<Flow> {
    lambda.check_limiting(g.n())?;
    if factors.len() != g.n() {
        return Err(Error::LengthMismatch {
            expected: g.n(),
            got: factors.len(),
        });
    }
    let graphs = (1..=g.n())
        .map(|i| subgraph_gi(g, i))
        .collect::<Result<Vec<_>>>()?;
    let sink = g.sink();
    let values = g
        .edges()
        .iter()
        .map(|&(p, q)| {
            let own = factors[p - 1].on(&graphs[p - 1], p, q);
            if q != sink {
                return own;
            }
            g.in_edges(p).iter().fold(own, |acc, &k| {
                let (r, _) = g.edges()[k];
                acc + factors[r - 1].on(&graphs[r - 1], r, p)
            })
        })
        .collect();
    Ok(Flow { values })
}

/// Coordinates `v_j = f_i(i, n + 2 - j)`, `j = 1..=λ_i + 1`, a point of the
/// scaled simplex `a_i Δ_{λ_i}`. Rows past ℓ(λ) give the empty point.
pub fn simplex_projection(
    gi: &FlowGraph,
    lambda: &Partition,
    i: usize,
    fi: &Flow,
) -> Result<Vec<ExactRat>> {
    let n = gi.n();
    if i == 0 || i > n {
        return Err(Error::VertexOutOfRange { vertex: i, max: n });
    }
    if i > lambda.len() {
        return Ok(Vec::new());
    }
    (1..=lambda.part(i) + 1)
        .map(|j| {
            let head = n + 2 - j;
            gi.edge_index(i, head)
                .map(|k| fi.values[k].clone())
                .ok_or(Error::NotSubgraph(i, head))
        })
        .collect()
}

/// Inverse of [`simplex_projection`]: rebuilds the flow on `G_i` from a point
/// of `a_i Δ_{λ_i}`.
pub fn simplex_lift(
    gi: &FlowGraph,
    lambda: &Partition,
    a: &NetflowVector,
    i: usize,
    point: &[ExactRat],
) -> Result<Flow> {
    check_netflow(gi, a)?;
    let n = gi.n();
    let width = if i > lambda.len() {
        0
    } else {
        lambda.part(i) + 1
    };
    if point.len() != width {
        return Err(Error::LengthMismatch {
            expected: width,
            got: point.len(),
        });
    }
    let sink = gi.sink();
    let on_own = |head: usize| -> Option<ExactRat> {
        (width > 0 && head + width >= n + 2 && head <= n + 1).then(|| point[n + 1 - head].clone())
    };
    let values = gi
        .edges()
        .iter()
        .map(|&(p, q)| {
            let ap = BigRational::from_integer(a.get(p).into());
            if p == i {
                on_own(q).unwrap_or(ap)
            } else if q == sink {
                ap + on_own(p).unwrap_or_else(BigRational::zero)
            } else {
                BigRational::zero()
            }
        })
        .collect();
    Ok(Flow { values })
}
