//! Faces of `F_{G(λ,n)}(a)`.
//!
//! Faces correspond to regular subgraphs (at least one out-edge at every
//! non-sink vertex), and those correspond to box subsets of the augmented
//! diagram `Y(λ̄)`, `λ̄ = (λ_1+1, …, λ_ℓ+1)`, meeting every row. Box `(i, j)`
//! maps to edge `(i, n+2-j)`, so column 1 is the sink edge. The combinatorial
//! type is that of `Δ_{λ_1} × ⋯ × Δ_{λ_ℓ}`, whatever `n` and `a` are.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact_math::{affine_rank, binomial, ExactInt, ExactPolynomial, ExactRat};
use crate::flow_core::regular_spanning_trees;
use crate::partition_graph::{build_graph, FlowGraph, NetflowVector, Partition};

/// Enumeration stops above this many faces.
pub const MAX_FACES: usize = 1 << 20;

/// Box subset of `Y(λ̄)`: `rows[i-1]` has bit `j-1` set when box `(i, j)` is in.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FaceDescriptor {
    rows: Vec<u64>,
}

impl FaceDescriptor {
    pub fn new(lambda: &Partition, rows: Vec<u64>) -> Result<Self> {
        if rows.len() != lambda.len() {
            return Err(Error::LengthMismatch {
                expected: lambda.len(),
                got: rows.len(),
            });
        }
        for (i, &mask) in rows.iter().enumerate() {
            let width = lambda.part(i + 1) + 1;
            if width < 64 && mask >> width != 0 {
                let col = 64 - mask.leading_zeros() as usize;
                return Err(Error::BoxOutOfRange { row: i + 1, col });
            }
            if mask == 0 {
                return Err(Error::RowNotCovered(i + 1));
            }
        }
        Ok(FaceDescriptor { rows })
    }

    pub fn from_boxes(lambda: &Partition, boxes: &[(usize, usize)]) -> Result<Self> {
        let mut rows = vec![0u64; lambda.len()];
        for &(i, j) in boxes {
            check_box(lambda, i, j)?;
            rows[i - 1] |= 1 << (j - 1);
        }
        Self::new(lambda, rows)
    }

    /// Every box of `Y(λ̄)`.
    pub fn full(lambda: &Partition) -> Self {
        FaceDescriptor {
            rows: lambda.parts().iter().map(|&p| row_mask(p + 1)).collect(),
        }
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn boxes(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, &mask) in self.rows.iter().enumerate() {
            for j in 0..64 {
                if mask >> j & 1 == 1 {
                    out.push((i + 1, j + 1));
                }
            }
        }
        out
    }

    /// `Σ_i (|row i| - 1)`
    pub fn dim(&self) -> usize {
        self.rows.iter().map(|m| m.count_ones() as usize - 1).sum()
    }

    pub fn is_subset_of(&self, other: &FaceDescriptor) -> bool {
        self.rows.len() == other.rows.len()
            && self.rows.iter().zip(&other.rows).all(|(a, b)| a & !b == 0)
    }

    /// All rows laid end to end (row `r` starting at bit `Σ_{s<r} (λ_s+1)`),
    /// printed as one hexadecimal number.
    pub fn to_hex(&self, lambda: &Partition) -> String {
        let mut bits = Vec::new();
        for (i, &mask) in self.rows.iter().enumerate() {
            for j in 0..=lambda.part(i + 1) {
                bits.push(mask >> j & 1 == 1);
            }
        }
        let mut s = String::new();
        for chunk in (0..bits.len().div_ceil(4)).rev() {
            let nibble = (0..4).fold(0u32, |acc, b| {
                let k = chunk * 4 + b;
                acc | ((k < bits.len() && bits[k]) as u32) << b
            });
            let _ = write!(s, "{nibble:x}");
        }
        let trimmed = s.trim_start_matches('0');
        format!("0x{}", if trimmed.is_empty() { "0" } else { trimmed })
    }
}

fn row_mask(width: usize) -> u64 {
    if width >= 64 {
        u64::MAX
    } else {
        (1u64 << width) - 1
    }
}

fn check_box(lambda: &Partition, i: usize, j: usize) -> Result<()> {
    if i == 0 || i > lambda.len() || j == 0 || j > lambda.part(i) + 1 {
        return Err(Error::BoxOutOfRange { row: i, col: j });
    }
    Ok(())
}

/// Subgraph given by sorted indices into the canonical edge list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RegularSubgraph {
    edges: Vec<usize>,
}

impl RegularSubgraph {
    pub fn edges(&self) -> &[usize] {
        &self.edges
    }

    pub fn edge_pairs(&self, g: &FlowGraph) -> Vec<(usize, usize)> {
        self.edges.iter().map(|&k| g.edges()[k]).collect()
    }

    pub fn contains_edge(&self, k: usize) -> bool {
        self.edges.binary_search(&k).is_ok()
    }

    pub fn is_subgraph_of(&self, other: &RegularSubgraph) -> bool {
        self.edges.iter().all(|&k| other.contains_edge(k))
    }
}

fn edge_indices(g: &FlowGraph, h: &[(usize, usize)]) -> Result<Vec<usize>> {
    let mut idx = h
        .iter()
        .map(|&(i, j)| g.edge_index(i, j).ok_or(Error::NotSubgraph(i, j)))
        .collect::<Result<Vec<_>>>()?;
    idx.sort_unstable();
    idx.dedup();
    Ok(idx)
}

/// Whether `H` supports an `a`-flow vanishing off `H`; with `a > 0` this
/// means every non-sink vertex keeps an out-edge.
pub fn is_regular(g: &FlowGraph, h: &[(usize, usize)], a: &NetflowVector) -> Result<bool> {
    if a.len() != g.n() {
        return Err(Error::LengthMismatch {
            expected: g.n(),
            got: a.len(),
        });
    }
    let idx = edge_indices(g, h)?;
    Ok((1..=g.n()).all(|v| g.out_edges(v).iter().any(|k| idx.binary_search(k).is_ok())))
}

pub fn regular_subgraph(
    g: &FlowGraph,
    h: &[(usize, usize)],
    a: &NetflowVector,
) -> Result<RegularSubgraph> {
    if !is_regular(g, h, a)? {
        return Err(Error::InvalidGraph(
            "subgraph leaves a non-sink vertex without out-edges".into(),
        ));
    }
    Ok(RegularSubgraph {
        edges: edge_indices(g, h)?,
    })
}

/// `φ_n(i, j) = (i, n+2-j)`
pub fn box_to_edge(lambda: &Partition, n: usize, (i, j): (usize, usize)) -> Result<(usize, usize)> {
    check_box(lambda, i, j)?;
    lambda.check_admissible(n)?;
    Ok((i, n + 2 - j))
}

/// `C ↦ φ_n(C) ∪ {(i, n+1) : i > ℓ(λ)}`
pub fn face_from_boxes(
    lambda: &Partition,
    n: usize,
    c: &FaceDescriptor,
) -> Result<RegularSubgraph> {
    let c = FaceDescriptor::new(lambda, c.rows.clone())?;
    let g = build_graph(lambda, n)?;
    let mut pairs = c
        .boxes()
        .into_iter()
        .map(|b| box_to_edge(lambda, n, b))
        .collect::<Result<Vec<_>>>()?;
    pairs.extend((lambda.len() + 1..=n).map(|i| (i, n + 1)));
    Ok(RegularSubgraph {
        edges: edge_indices(&g, &pairs)?,
    })
}

fn check_face_count(count: Option<usize>) -> Result<usize> {
    match count {
        Some(c) if c <= MAX_FACES => Ok(c),
        _ => Err(Error::TooLarge(format!("more than {MAX_FACES} faces"))),
    }
}

/// All box subsets meeting every row.
pub fn all_face_descriptors(lambda: &Partition) -> Result<Vec<FaceDescriptor>> {
    let widths: Vec<usize> = lambda.parts().iter().map(|p| p + 1).collect();
    check_face_count(widths.iter().try_fold(1usize, |acc, &w| {
        let per_row = 1usize.checked_shl(w as u32)?.checked_sub(1)?;
        acc.checked_mul(per_row)
    }))?;
    let mut out = vec![Vec::new()];
    for &w in &widths {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<u64>| {
                (1..=row_mask(w)).map(move |m| {
                    let mut next = prefix.clone();
                    next.push(m);
                    next
                })
            })
            .collect();
    }
    Ok(out
        .into_iter()
        .map(|rows| FaceDescriptor { rows })
        .collect())
}

/// All regular subgraphs of `g`: a nonempty set of out-edges at each
/// non-sink vertex, read off the graph itself.
pub fn regular_subgraphs(g: &FlowGraph) -> Result<Vec<RegularSubgraph>> {
    let outs: Vec<&[usize]> = (1..=g.n()).map(|v| g.out_edges(v)).collect();
    if let Some(v) = outs.iter().position(|o| o.is_empty()) {
        return Err(Error::NoOutEdge(v + 1));
    }
    let radices: Vec<usize> = outs
        .iter()
        .map(|o| {
            1usize
                .checked_shl(o.len() as u32)
                .map_or(usize::MAX, |x| x - 1)
        })
        .collect();
    let total = check_face_count(
        radices
            .iter()
            .try_fold(1usize, |acc, &r| acc.checked_mul(r)),
    )?;
    Ok((0..total)
        .into_par_iter()
        .map(|mut idx| {
            let mut edges = Vec::new();
            for v in (0..outs.len()).rev() {
                let mask = idx % radices[v] + 1;
                idx /= radices[v];
                edges.extend(
                    outs[v]
                        .iter()
                        .enumerate()
                        .filter(|(b, _)| mask >> b & 1 == 1)
                        .map(|(_, &k)| k),
                );
            }
            edges.sort_unstable();
            RegularSubgraph { edges }
        })
        .collect())
}

/// f-vector of `Δ_{λ_1} × ⋯ × Δ_{λ_ℓ}`: `f_d = Σ_{d_1+⋯+d_ℓ=d} ∏ C(λ_i+1, d_i+1)`.
pub fn f_vector(lambda: &Partition) -> Vec<ExactInt> {
    let mut f = vec![BigInt::one()];
    for &m in lambda.parts() {
        let simplex: Vec<ExactInt> = (0..=m as i64)
            .map(|d| binomial(m as i64 + 1, d + 1))
            .collect();
        let mut next = vec![BigInt::zero(); f.len() + m];
        for (i, x) in f.iter().enumerate() {
            for (j, y) in simplex.iter().enumerate() {
                next[i + j] += x * y;
            }
        }
        f = next;
    }
    f
}

/// Faces of `F_{G(λ,n)}(a)` counted by dimension, where the face of a
/// regular subgraph `H` has the affine dimension of the vertices it contains
/// (flows of regular spanning trees inside `H`), measured on Y-edge coordinates.
pub fn f_vector_from_poset(
    lambda: &Partition,
    n: usize,
    a: &NetflowVector,
) -> Result<Vec<ExactInt>> {
    let g = build_graph(lambda, n)?;
    let subgraphs = regular_subgraphs(&g)?;
    let trees = regular_spanning_trees(&g, a)?;
    let y_edges: Vec<usize> = (0..g.edge_count())
        .filter(|&k| !g.is_sink_edge(k))
        .collect();
    let vertices: Vec<(BTreeSet<usize>, Vec<ExactRat>)> = trees
        .into_iter()
        .map(|(tree, flow)| {
            let coords = y_edges.iter().map(|&k| flow.values[k].clone()).collect();
            (tree.into_iter().collect(), coords)
        })
        .collect();
    let dims = subgraphs
        .par_iter()
        .map(|h| {
            let pts: Vec<Vec<ExactRat>> = vertices
                .iter()
                .filter(|(tree, _)| tree.iter().all(|&k| h.contains_edge(k)))
                .map(|(_, c)| c.clone())
                .collect();
            affine_rank(&pts).ok_or_else(|| {
                Error::InternalConsistency(format!(
                    "regular subgraph {:?} contains no vertex",
                    h.edges
                ))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let top = dims.iter().copied().max().unwrap_or(0);
    let mut f = vec![BigInt::zero(); top + 1];
    for d in dims {
        f[d] += 1;
    }
    Ok(f)
}

/// `∏ [λ_i+1]_x`, with `[m]_x = 1 + x + ⋯ + x^{m-1}`.
pub fn h_polynomial(lambda: &Partition) -> ExactPolynomial {
    lambda
        .parts()
        .iter()
        .fold(ExactPolynomial::one(), |acc, &m| {
            &acc * &ExactPolynomial::from_ints(std::iter::repeat_n(1, m + 1))
        })
}

/// Coefficients of `Σ_d f_d (x-1)^d`.
pub fn h_from_f(f: &[ExactInt]) -> Vec<ExactInt> {
    let mut h = vec![BigInt::zero(); f.len()];
    for (d, fd) in f.iter().enumerate() {
        for (i, hi) in h.iter_mut().enumerate().take(d + 1) {
            let sign = if (d - i) % 2 == 0 { 1 } else { -1 };
            *hi += fd * binomial(d as i64, i as i64) * sign;
        }
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_math::{int, rat};
    use crate::flow_core::{enumerate_vertices, SpanningChoice};

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn ints(v: &[i64]) -> Vec<ExactInt> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn regularity() {
        let g = build_graph(&p("2,1"), 3).unwrap();
        let a = NetflowVector::ones(3);
        assert!(is_regular(&g, g.edges(), &a).unwrap());
        let tree: Vec<_> = SpanningChoice::from_index(&g, 0)
            .unwrap()
            .edges()
            .iter()
            .map(|&k| g.edges()[k])
            .collect();
        assert!(is_regular(&g, &tree, &a).unwrap());
        let no_vertex_one: Vec<_> = g.edges().iter().copied().filter(|e| e.0 != 1).collect();
        assert!(!is_regular(&g, &no_vertex_one, &a).unwrap());
        assert_eq!(
            is_regular(&g, &[(1, 2), (3, 1)], &a),
            Err(Error::NotSubgraph(3, 1))
        );
        assert!(regular_subgraph(&g, &no_vertex_one, &a).is_err());
    }

    #[test]
    fn box_map_examples() {
        let l = p("2,1");
        assert_eq!(box_to_edge(&l, 3, (1, 1)).unwrap(), (1, 4));
        assert_eq!(box_to_edge(&l, 3, (1, 3)).unwrap(), (1, 2));
        assert_eq!(box_to_edge(&l, 5, (1, 3)).unwrap(), (1, 4));
        assert_eq!(
            box_to_edge(&l, 3, (2, 3)),
            Err(Error::BoxOutOfRange { row: 2, col: 3 })
        );
        assert!(box_to_edge(&l, 3, (3, 1)).is_err());
        assert!(box_to_edge(&l, 3, (1, 0)).is_err());
    }

    #[test]
    fn descriptors() {
        let l = p("2,1");
        assert_eq!(
            FaceDescriptor::new(&l, vec![1, 0]),
            Err(Error::RowNotCovered(2))
        );
        assert_eq!(
            FaceDescriptor::new(&l, vec![8, 1]),
            Err(Error::BoxOutOfRange { row: 1, col: 4 })
        );
        let c = FaceDescriptor::from_boxes(&l, &[(1, 1), (1, 3), (2, 2)]).unwrap();
        assert_eq!(c.rows(), &[0b101, 0b10]);
        assert_eq!(c.dim(), 1);
        // bits 0..3 for row 1, 3..5 for row 2: 0b10_101
        assert_eq!(c.to_hex(&l), "0x15");
        assert_eq!(FaceDescriptor::full(&l).to_hex(&l), "0x1f");
        assert!(c.is_subset_of(&FaceDescriptor::full(&l)));
        assert!(!FaceDescriptor::full(&l).is_subset_of(&c));
    }

    #[test]
    fn top_face_and_vertices() {
        let l = p("2,1");
        let g = build_graph(&l, 3).unwrap();
        let top = face_from_boxes(&l, 3, &FaceDescriptor::full(&l)).unwrap();
        assert_eq!(top.edges(), (0..g.edge_count()).collect::<Vec<_>>());
        let a = NetflowVector::ones(3);
        let trees: BTreeSet<Vec<usize>> = regular_spanning_trees(&g, &a)
            .unwrap()
            .into_iter()
            .map(|(mut t, _)| {
                t.sort_unstable();
                t
            })
            .collect();
        for c in all_face_descriptors(&l).unwrap() {
            if c.dim() == 0 {
                let h = face_from_boxes(&l, 3, &c).unwrap();
                assert!(trees.contains(h.edges()));
            }
        }
    }

    #[test]
    fn bijection_onto_regular_subgraphs() {
        for (l, n) in [("2,1", 3), ("2,1", 5), ("1,1", 4), ("3", 4), ("2,2", 5)] {
            let l = p(l);
            let g = build_graph(&l, n).unwrap();
            let cs = all_face_descriptors(&l).unwrap();
            let images: Vec<_> = cs
                .iter()
                .map(|c| face_from_boxes(&l, n, c).unwrap())
                .collect();
            let image_set: BTreeSet<_> = images.iter().cloned().collect();
            let direct: BTreeSet<_> = regular_subgraphs(&g).unwrap().into_iter().collect();
            assert_eq!(image_set.len(), cs.len());
            assert_eq!(image_set, direct);
            for (c1, h1) in cs.iter().zip(&images) {
                for (c2, h2) in cs.iter().zip(&images) {
                    assert_eq!(c1.is_subset_of(c2), h1.is_subgraph_of(h2));
                }
            }
        }
        assert_eq!(all_face_descriptors(&p("2,1")).unwrap().len(), 21);
    }

    #[test]
    fn f_vector_examples() {
        assert_eq!(f_vector(&p("2,1")), ints(&[6, 9, 5, 1]));
        assert_eq!(f_vector(&p("1")), ints(&[2, 1]));
        assert_eq!(f_vector(&p("2,1")).iter().sum::<BigInt>(), int(21));
    }

    #[test]
    fn poset_f_vectors() {
        assert_eq!(
            f_vector_from_poset(&p("2,1"), 3, &NetflowVector::ones(3)).unwrap(),
            ints(&[6, 9, 5, 1])
        );
        let a = NetflowVector::new(vec![1, 1, 2, 1, 1]).unwrap();
        assert_eq!(
            f_vector_from_poset(&p("2,1"), 5, &a).unwrap(),
            ints(&[6, 9, 5, 1])
        );
        assert_eq!(
            f_vector_from_poset(&p("1,1"), 4, &NetflowVector::ones(4)).unwrap(),
            ints(&[4, 4, 1])
        );
    }

    #[test]
    fn face_containment_matches_subgraph_containment() {
        let l = p("2,1");
        for n in [3, 4] {
            let g = build_graph(&l, n).unwrap();
            let a = NetflowVector::new((0..n as u64).map(|k| 1 + k % 2).collect()).unwrap();
            let verts = enumerate_vertices(&g, &a).unwrap();
            let subs = regular_subgraphs(&g).unwrap();
            let vertex_sets: Vec<BTreeSet<usize>> = subs
                .iter()
                .map(|h| {
                    (0..verts.len())
                        .filter(|&v| {
                            (0..g.edge_count())
                                .all(|k| h.contains_edge(k) || verts[v].values[k].is_zero())
                        })
                        .collect()
                })
                .collect();
            for (i, h) in subs.iter().enumerate() {
                assert!(!vertex_sets[i].is_empty());
                for (j, k) in subs.iter().enumerate() {
                    assert_eq!(
                        h.is_subgraph_of(k),
                        vertex_sets[i].is_subset(&vertex_sets[j])
                    );
                    if h != k && h.is_subgraph_of(k) {
                        assert!(vertex_sets[i] != vertex_sets[j]);
                    }
                }
            }
        }
    }

    #[test]
    fn h_polynomials() {
        assert_eq!(
            h_polynomial(&p("2,1")),
            ExactPolynomial::from_ints([1, 2, 2, 1])
        );
        assert_eq!(
            h_polynomial(&p("3,2,1")),
            ExactPolynomial::from_ints([1, 3, 5, 6, 5, 3, 1])
        );
        assert_eq!(h_from_f(&f_vector(&p("2,1"))), ints(&[1, 2, 2, 1]));
        for lambda in Partition::all_up_to(7) {
            let h = h_polynomial(&lambda);
            let coeffs = h.integer_coeffs().unwrap();
            assert_eq!(h_from_f(&f_vector(&lambda)), coeffs);
            let mut rev = coeffs.clone();
            rev.reverse();
            assert_eq!(rev, coeffs);
            let verts: usize = lambda.parts().iter().map(|p| p + 1).product();
            assert_eq!(h.eval_int(1), rat(verts as i64, 1));
        }
    }

    #[test]
    fn too_many_faces() {
        assert!(matches!(
            all_face_descriptors(&p("25")),
            Err(Error::TooLarge(_))
        ));
        let g = build_graph(&p("25"), 26).unwrap();
        assert!(matches!(regular_subgraphs(&g), Err(Error::TooLarge(_))));
    }
}
