//! Lidskii-type formulas for the normalized volume and the lattice-point count
//! of a flow polytope, as sums over weak compositions weighted by Kostant
//! partition function values on the graph with its sink removed.
//!
//! For a graph `G` on `[n+1]` with `N` edges, `t_i = outdeg(i) - 1` and
//! `G'` the restriction to `[n]`:
//!
//! ```text
//! vol F_G(a)  = Σ_{i ⊨ N-n} multinomial(N-n; i) · ∏ a_j^{i_j} · K_{G'}(i - t)
//! #F_G(a) ∩ Z = Σ_{i ⊨ N-n} ∏ C(a_j + t_j, i_j)        · K_{G'}(i - t)
//! ```

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact_math::{binomial, multinomial, ExactInt};
use crate::kostant::{KostantEngine, KostantTarget};
use crate::partition_graph::{outdegree_shift, restrict_to_sources, FlowGraph, NetflowVector};

/// Nonnegative parts `i_1, ..., i_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeakComposition(pub Vec<i64>);

/// Weak compositions of `total` into `length` parts, first part descending:
/// `(2,0), (1,1), (0,2)`.
pub struct Compositions {
    current: Option<Vec<i64>>,
}

impl Iterator for Compositions {
    type Item = WeakComposition;

    fn next(&mut self) -> Option<WeakComposition> {
        let out = self.current.clone()?;
        let c = self.current.as_mut()?;
        let len = c.len();
        match (0..len.saturating_sub(1)).rev().find(|&k| c[k] > 0) {
            Some(k) => {
                let tail: i64 = c[k + 1..].iter().sum();
                c[k] -= 1;
                c[k + 1] = tail + 1;
                c[k + 2..].iter_mut().for_each(|x| *x = 0);
            }
            None => self.current = None,
        }
        Some(WeakComposition(out))
    }
}

pub fn enumerate_compositions(total: i64, length: usize) -> Compositions {
    if total < 0 || length == 0 {
        return Compositions { current: None };
    }
    let mut first = vec![0; length];
    first[0] = total;
    Compositions {
        current: Some(first),
    }
}

/// Whether to skip compositions whose Kostant factor is zero for a cheap
/// structural reason (a vertex of `G'` with no in-edges needing negative
/// supply, or one with no out-edges needing positive supply).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pruning {
    Cheap,
    Off,
}

struct Setup {
    restricted: FlowGraph,
    shift: Vec<i64>,
    total: i64,
    no_in: Vec<bool>,
    no_out: Vec<bool>,
}

fn setup(g: &FlowGraph, a: &NetflowVector) -> Result<Setup> {
    if a.len() != g.n() {
        return Err(Error::LengthMismatch {
            expected: g.n(),
            got: a.len(),
        });
    }
    let shift = outdegree_shift(g)?;
    let restricted = restrict_to_sources(g);
    let total = (g.edge_count() - g.n()) as i64;
    let n = g.n();
    let no_in = (1..=n).map(|v| restricted.in_edges(v).is_empty()).collect();
    let no_out = (1..=n).map(|v| restricted.out_degree(v) == 0).collect();
    Ok(Setup {
        restricted,
        shift,
        total,
        no_in,
        no_out,
    })
}

fn lidskii_sum<W>(g: &FlowGraph, a: &NetflowVector, pruning: Pruning, weight: W) -> Result<ExactInt>
where
    W: Fn(&[i64]) -> Result<ExactInt> + Sync,
{
    let s = setup(g, a)?;
    let n = g.n();
    let first_parts: Vec<i64> = if n == 1 {
        vec![s.total]
    } else {
        (0..=s.total).rev().collect()
    };
    let partials = first_parts
        .into_par_iter()
        .map(|first| -> Result<ExactInt> {
            let mut engine = KostantEngine::new(&s.restricted);
            let mut acc = BigInt::zero();
            let mut comp = vec![0i64; n];
            comp[0] = first;
            let mut target = vec![0i64; n];
            for rest in enumerate_compositions(s.total - first, n - 1)
                .chain((n == 1).then(|| WeakComposition(Vec::new())))
            {
                comp[1..].copy_from_slice(&rest.0);
                let mut skip = false;
                for j in 0..n {
                    target[j] = comp[j] - s.shift[j];
                    if pruning == Pruning::Cheap
                        && ((s.no_in[j] && target[j] < 0) || (s.no_out[j] && target[j] > 0))
                    {
                        skip = true;
                        break;
                    }
                }
                if skip {
                    continue;
                }
                let k = engine.count(&KostantTarget(target.clone()));
                if k.is_zero() {
                    continue;
                }
                acc += weight(&comp)? * k;
            }
            Ok(acc)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(partials.into_iter().sum())
}

/// Normalized volume of `F_G(a)`.
pub fn lidskii_volume(g: &FlowGraph, a: &NetflowVector) -> Result<ExactInt> {
    lidskii_volume_with(g, a, Pruning::Cheap)
}

pub fn lidskii_volume_with(g: &FlowGraph, a: &NetflowVector, pruning: Pruning) -> Result<ExactInt> {
    let total = (g.edge_count() - g.n()) as i64;
    let entries = a.entries().to_vec();
    lidskii_sum(g, a, pruning, |comp| {
        let m = multinomial(total, comp)?;
        Ok(comp.iter().zip(&entries).fold(m, |acc, (&i, &aj)| {
            acc * Pow::pow(BigInt::from(aj), i as u64)
        }))
    })
}

/// Number of integer points of `F_G(a)`.
pub fn lidskii_points(g: &FlowGraph, a: &NetflowVector) -> Result<ExactInt> {
    lidskii_points_with(g, a, Pruning::Cheap)
}

pub fn lidskii_points_with(g: &FlowGraph, a: &NetflowVector, pruning: Pruning) -> Result<ExactInt> {
    let shift = outdegree_shift(g)?;
    let entries = a.entries().to_vec();
    lidskii_sum(g, a, pruning, |comp| {
        Ok(comp
            .iter()
            .zip(entries.iter().zip(&shift))
            .fold(BigInt::one(), |acc, (&i, (&aj, &tj))| {
                acc * binomial(BigInt::from(aj) + tj, i)
            }))
    })
}
