//! Kostant partition functions and lattice-point counts of flow polytopes.
//!
//! `K_G(b)` counts nonnegative integer edge labelings `c` with `M_G c = b`,
//! where the column of edge `(i, j)` is `e_i - e_j`. Equivalently: integer
//! flows with `outflow(v) - inflow(v) = b_v` at every vertex.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact_math::{interpolate, ExactInt, ExactPolynomial};
use crate::partition_graph::{FlowGraph, NetflowVector};

/// Integer vector indexed by the vertices of a graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KostantTarget(pub Vec<i64>);

impl KostantTarget {
    pub fn new(b: Vec<i64>) -> Self {
        KostantTarget(b)
    }

    pub fn is_balanced(&self) -> bool {
        self.0.iter().map(|&x| x as i128).sum::<i128>() == 0
    }

    pub fn negated(&self) -> Self {
        KostantTarget(self.0.iter().map(|x| -x).collect())
    }
}

/// Memoized evaluator for `K_G`.
///
/// Vertices are processed in increasing order. The state after vertex `v - 1`
/// is the vector of residual demands `r_w = b_w + inflow(w)` for `w >= v`; the
/// supply `r_v` of vertex `v` is split over its out-edges. The memo is keyed on
/// `(v, r_v..)`, which does not depend on the original target, so one engine
/// can be reused across many targets on the same graph.
pub struct KostantEngine<'g> {
    graph: &'g FlowGraph,
    heads: Vec<Vec<usize>>,
    memo: HashMap<(usize, Vec<i64>), BigInt>,
}

impl<'g> KostantEngine<'g> {
    pub fn new(graph: &'g FlowGraph) -> Self {
        let heads = (0..=graph.vertex_count())
            .map(|v| {
                if v == 0 {
                    Vec::new()
                } else {
                    graph
                        .out_edges(v)
                        .iter()
                        .map(|&k| graph.edges()[k].1)
                        .collect()
                }
            })
            .collect();
        KostantEngine {
            graph,
            heads,
            memo: HashMap::new(),
        }
    }

    pub fn graph(&self) -> &FlowGraph {
        self.graph
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    /// `K_G(b)`; 0 for unbalanced or wrong-length targets.
    pub fn count(&mut self, b: &KostantTarget) -> ExactInt {
        if b.0.len() != self.graph.vertex_count() || !b.is_balanced() {
            return BigInt::zero();
        }
        self.solve(1, &b.0)
    }

    fn solve(&mut self, v: usize, residual: &[i64]) -> BigInt {
        let Some((&supply, rest)) = residual.split_first() else {
            return BigInt::one();
        };
        if supply < 0 {
            return BigInt::zero();
        }
        // Inflow only grows, so a later vertex with no way out is dead once positive.
        for (offset, &r) in rest.iter().enumerate() {
            if r > 0 && self.heads[v + 1 + offset].is_empty() {
                return BigInt::zero();
            }
        }
        if self.heads[v].is_empty() {
            return if supply == 0 {
                self.solve(v + 1, rest)
            } else {
                BigInt::zero()
            };
        }
        let key = (v, residual.to_vec());
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        let heads = self.heads[v].clone();
        let mut scratch = rest.to_vec();
        let total = self.distribute(v, &heads, 0, supply, &mut scratch);
        self.memo.insert(key, total.clone());
        total
    }

    fn distribute(
        &mut self,
        v: usize,
        heads: &[usize],
        k: usize,
        remaining: i64,
        scratch: &mut Vec<i64>,
    ) -> BigInt {
        let slot = heads[k] - v - 1;
        if k + 1 == heads.len() {
            scratch[slot] += remaining;
            let res = self.solve(v + 1, scratch);
            scratch[slot] -= remaining;
            return res;
        }
        let mut acc = BigInt::zero();
        for c in 0..=remaining {
            scratch[slot] += c;
            acc += self.distribute(v, heads, k + 1, remaining - c, scratch);
            scratch[slot] -= c;
        }
        acc
    }
}

/// `K_G(b)` with a fresh engine.
pub fn kostant_count(g: &FlowGraph, b: &KostantTarget) -> ExactInt {
    KostantEngine::new(g).count(b)
}

/// Direct enumeration of all labelings, for arbitrary edge directions.
///
/// Each label is bounded by the total positive demand. Edges are visited
/// ordered by source and a vertex is checked as soon as its last incident
/// edge has been labelled.
pub fn kostant_count_brute(vertex_count: usize, edges: &[(usize, usize)], b: &[i64]) -> ExactInt {
    if b.len() != vertex_count || b.iter().sum::<i64>() != 0 {
        return BigInt::zero();
    }
    let mut order: Vec<(usize, usize)> = edges.to_vec();
    order.sort_by_key(|e| e.0);
    let mut last_touch: Vec<Option<usize>> = vec![None; vertex_count + 1];
    for (p, &(i, j)) in order.iter().enumerate() {
        last_touch[i] = Some(p);
        last_touch[j] = Some(p);
    }
    if (1..=vertex_count).any(|v| last_touch[v].is_none() && b[v - 1] != 0) {
        return BigInt::zero();
    }
    let mut closes: Vec<Vec<usize>> = vec![Vec::new(); order.len()];
    for (v, touch) in last_touch.iter().enumerate().skip(1) {
        if let Some(p) = touch {
            closes[*p].push(v);
        }
    }
    let bound: i64 = b.iter().filter(|&&x| x > 0).sum();

    struct Search<'a> {
        order: &'a [(usize, usize)],
        closes: &'a [Vec<usize>],
        b: &'a [i64],
        bound: i64,
        net: Vec<i64>,
        found: u128,
    }
    impl Search<'_> {
        fn go(&mut self, p: usize) {
            if p == self.order.len() {
                self.found += 1;
                return;
            }
            let (i, j) = self.order[p];
            for c in 0..=self.bound {
                self.net[i] += c;
                self.net[j] -= c;
                if self.closes[p].iter().all(|&v| self.net[v] == self.b[v - 1]) {
                    self.go(p + 1);
                }
                self.net[i] -= c;
                self.net[j] += c;
            }
        }
    }
    if order.is_empty() {
        return BigInt::one();
    }
    let mut s = Search {
        order: &order,
        closes: &closes,
        b,
        bound,
        net: vec![0; vertex_count + 1],
        found: 0,
    };
    s.go(0);
    BigInt::from(s.found)
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

/// Number of integer points of `F_G(a)`, i.e. `K_G(a_1, ..., a_n, -Σa)`.
pub fn lattice_points(g: &FlowGraph, a: &NetflowVector) -> Result<ExactInt> {
    check_netflow(g, a)?;
    Ok(kostant_count(g, &KostantTarget(a.with_sink()?)))
}

/// Lattice points by direct enumeration; the independent check for [`lattice_points`].
pub fn lattice_points_brute(g: &FlowGraph, a: &NetflowVector) -> Result<ExactInt> {
    check_netflow(g, a)?;
    Ok(kostant_count_brute(
        g.vertex_count(),
        g.edges(),
        &a.with_sink()?,
    ))
}

/// Lattice-point counts of the dilations `t·F_G(a)` for `t = 0..=t_max`.
pub fn ehrhart_values(g: &FlowGraph, a: &NetflowVector, t_max: u64) -> Result<Vec<ExactInt>> {
    check_netflow(g, a)?;
    let mut engine = KostantEngine::new(g);
    (0..=t_max)
        .map(|t| Ok(engine.count(&KostantTarget(a.scaled_target(t)?))))
        .collect()
}

/// Dimension of `F_G(a)` for a forward graph where every non-sink vertex has an out-edge.
pub fn flow_polytope_dim(g: &FlowGraph) -> usize {
    g.edge_count() - g.n()
}

/// Ehrhart polynomial, interpolated from `dim + 1` dilations and checked
/// against one extra dilation.
pub fn ehrhart_polynomial(g: &FlowGraph, a: &NetflowVector) -> Result<ExactPolynomial> {
    let dim = flow_polytope_dim(g);
    let values = ehrhart_values(g, a, dim as u64 + 1)?;
    let points: Vec<(ExactInt, ExactInt)> = values
        .iter()
        .enumerate()
        .map(|(t, v)| (BigInt::from(t), v.clone()))
        .collect();
    let poly = interpolate(&points[..=dim])?;
    let extra = &points[dim + 1];
    if poly.eval_int(dim as i64 + 1) != num_rational::BigRational::from_integer(extra.1.clone()) {
        return Err(Error::InternalConsistency(format!(
            "Ehrhart interpolant {poly} disagrees with the count {} at t = {}",
            extra.1,
            dim + 1
        )));
    }
    if poly.degree() != Some(dim) {
        return Err(Error::InternalConsistency(format!(
            "Ehrhart polynomial {poly} does not have degree {dim}"
        )));
    }
    Ok(poly)
}
