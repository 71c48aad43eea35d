//! The constant-term identity
//!
//! ```text
//! CT_{x_n} ⋯ CT_{x_1} (a_1 x_1 + ⋯ + a_n x_n)^L ∏_{(i,j) ∈ E(G')} (x_i - x_j)^{-1}
//!     = L! ∏ a_i^{λ_i} / λ_i!
//! ```
//!
//! for `n >= λ_1 + ℓ(λ)`, `L = |λ|` and `G'` the restriction of `G(λ,n)` to
//! `[n]`. Each `(x_i - x_j)^{-1}`, `i < j`, is expanded as
//! `x_i^{-1} Σ_{k=0}^{D} (x_j / x_i)^k`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};
use rayon::prelude::*;

use crate::closed_forms::limiting_volume;
use crate::error::{Error, Result};
use crate::exact_math::{multinomial, ExactInt};
use crate::kostant::{KostantEngine, KostantTarget};
use crate::lidskii::enumerate_compositions;
use crate::partition_graph::{build_graph, restrict_to_sources, NetflowVector, Partition};

/// Products with fewer terms than this stay on one thread.
const PAR_THRESHOLD: usize = 2048;

/// Finitely many terms of a Laurent series in `x_1, …, x_n` with integer
/// coefficients. Geometric expansions are cut off after `x^D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedLaurentSeries {
    nvars: usize,
    bound: u32,
    terms: HashMap<Vec<i32>, BigInt>,
}

impl TruncatedLaurentSeries {
    pub fn zero(nvars: usize, bound: u32) -> Self {
        TruncatedLaurentSeries {
            nvars,
            bound,
            terms: HashMap::new(),
        }
    }

    pub fn one(nvars: usize, bound: u32) -> Self {
        Self::monomial(nvars, bound, vec![0; nvars], BigInt::one())
    }

    pub fn monomial(nvars: usize, bound: u32, exps: Vec<i32>, coeff: BigInt) -> Self {
        assert_eq!(exps.len(), nvars);
        let mut s = Self::zero(nvars, bound);
        if !coeff.is_zero() {
            s.terms.insert(exps, coeff);
        }
        s
    }

    /// `Σ a_j x_j` (variables 1-based).
    pub fn linear_form(a: &[u64], bound: u32) -> Self {
        let mut s = Self::zero(a.len(), bound);
        for (j, &aj) in a.iter().enumerate() {
            let mut e = vec![0; a.len()];
            e[j] = 1;
            s.terms.insert(e, BigInt::from(aj));
        }
        s
    }

    /// `x_i^{-shift} Σ_{k=0}^{D} (x_j / x_i)^k`; with `shift = 1` this expands
    /// `(x_i - x_j)^{-1}`, with `shift = 0` it expands `(1 - x_j x_i^{-1})^{-1}`.
    pub fn geometric(nvars: usize, bound: u32, i: usize, j: usize, shift: i32) -> Self {
        let mut s = Self::zero(nvars, bound);
        for k in 0..=bound as i32 {
            let mut e = vec![0; nvars];
            e[i - 1] -= shift + k;
            e[j - 1] += k;
            s.terms.insert(e, BigInt::one());
        }
        s
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[i32]) -> BigInt {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.mul_filtered(other, |_| true)
    }

    /// Product keeping only the monomials accepted by `keep`.
    pub fn mul_filtered<F>(&self, other: &Self, keep: F) -> Self
    where
        F: Fn(&[i32]) -> bool + Sync,
    {
        assert_eq!(self.nvars, other.nvars);
        let rhs: Vec<(&Vec<i32>, &BigInt)> = other.terms.iter().collect();
        let step = |mut acc: HashMap<Vec<i32>, BigInt>, (e1, c1): (&Vec<i32>, &BigInt)| {
            for &(e2, c2) in &rhs {
                let e: Vec<i32> = e1.iter().zip(e2).map(|(x, y)| x + y).collect();
                if keep(&e) {
                    *acc.entry(e).or_default() += c1 * c2;
                }
            }
            acc
        };
        let merge = |mut a: HashMap<Vec<i32>, BigInt>, b: HashMap<Vec<i32>, BigInt>| {
            for (e, c) in b {
                *a.entry(e).or_default() += c;
            }
            a
        };
        let mut terms = if self.terms.len() * rhs.len() >= PAR_THRESHOLD {
            self.terms
                .par_iter()
                .fold(HashMap::new, step)
                .reduce(HashMap::new, merge)
        } else {
            self.terms.iter().fold(HashMap::new(), step)
        };
        terms.retain(|_, c| !c.is_zero());
        TruncatedLaurentSeries {
            nvars: self.nvars,
            bound: self.bound.max(other.bound),
            terms,
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(self.nvars, self.bound), |acc, _| acc.mul(self))
    }

    /// Terms with exponent 0 in `x_var`.
    pub fn constant_term_in(&self, var: usize) -> Self {
        TruncatedLaurentSeries {
            nvars: self.nvars,
            bound: self.bound,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e[var - 1] == 0)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// `CT_{x_n} ⋯ CT_{x_1}`.
    pub fn iterated_constant_term(&self) -> BigInt {
        let s = (1..=self.nvars).fold(self.clone(), |s, v| s.constant_term_in(v));
        s.coeff(&vec![0; self.nvars])
    }
}

/// Drop monomials that cannot return to exponent 0 in some variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesPruning {
    Reachability,
    Off,
}

pub fn default_truncation(lambda: &Partition) -> u32 {
    (lambda.size() + lambda.largest() + 2) as u32
}

fn min_truncation(lambda: &Partition) -> u32 {
    (lambda.size() + lambda.largest() + 1) as u32
}

fn check_inputs(lambda: &Partition, n: usize, a: &NetflowVector) -> Result<()> {
    lambda.check_admissible(n)?;
    if a.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: a.len(),
        });
    }
    Ok(())
}

/// One evaluation of the left-hand side at truncation `d`, without the
/// doubling check.
pub fn ct_series_once(
    lambda: &Partition,
    n: usize,
    a: &NetflowVector,
    d: u32,
    pruning: SeriesPruning,
) -> Result<ExactInt> {
    check_inputs(lambda, n, a)?;
    let required = min_truncation(lambda);
    if d < required {
        return Err(Error::TruncationTooSmall { bound: d, required });
    }
    let edges = restrict_to_sources(&build_graph(lambda, n)?)
        .edges()
        .to_vec();
    let mut series = TruncatedLaurentSeries::linear_form(a.entries(), d).pow(lambda.size() as u32);

    // rem_src[v] / rem_tgt[v]: factors still to come that lower / raise x_v
    let mut rem_src = vec![0i64; n];
    let mut rem_tgt = vec![0i64; n];
    for &(i, j) in &edges {
        rem_src[i - 1] += 1;
        rem_tgt[j - 1] += 1;
    }
    let d64 = d as i64;
    for &(i, j) in &edges {
        rem_src[i - 1] -= 1;
        rem_tgt[j - 1] -= 1;
        let factor = TruncatedLaurentSeries::geometric(n, d, i, j, 1);
        series = match pruning {
            SeriesPruning::Off => series.mul(&factor),
            SeriesPruning::Reachability => series.mul_filtered(&factor, |e| {
                e.iter().enumerate().all(|(v, &x)| {
                    let x = x as i64;
                    x - rem_src[v] + d64 * rem_tgt[v] >= 0 && x - (1 + d64) * rem_src[v] <= 0
                })
            }),
        };
    }
    Ok(series.iterated_constant_term())
}

/// Left-hand side by series expansion at truncation `d`; rejected if
/// evaluating again at `2d` gives a different value.
pub fn ct_lhs_series(lambda: &Partition, n: usize, a: &NetflowVector, d: u32) -> Result<ExactInt> {
    let first = ct_series_once(lambda, n, a, d, SeriesPruning::Reachability)?;
    let doubled = ct_series_once(lambda, n, a, 2 * d, SeriesPruning::Reachability)?;
    if first != doubled {
        return Err(Error::TruncationTooSmall {
            bound: d,
            required: 2 * d,
        });
    }
    Ok(first)
}

/// `Σ_{i ⊨ L} multinomial(L; i) ∏ a_j^{i_j} K_{G'}(i - λ̄)`, where
/// `λ̄ = (λ_1, …, λ_ℓ, 0, …, 0)`.
pub fn ct_lhs_lidskii(lambda: &Partition, n: usize, a: &NetflowVector) -> Result<ExactInt> {
    check_inputs(lambda, n, a)?;
    let restricted = restrict_to_sources(&build_graph(lambda, n)?);
    let mut engine = KostantEngine::new(&restricted);
    let total = lambda.size() as i64;
    let mut sum = BigInt::zero();
    for comp in enumerate_compositions(total, n) {
        let target: Vec<i64> = comp
            .0
            .iter()
            .enumerate()
            .map(|(j, &c)| c - lambda.part(j + 1) as i64)
            .collect();
        let k = engine.count(&KostantTarget(target));
        if k.is_zero() {
            continue;
        }
        let weight = comp
            .0
            .iter()
            .zip(a.entries())
            .fold(multinomial(total, &comp.0)?, |acc, (&i, &aj)| {
                acc * Pow::pow(BigInt::from(aj), i as u64)
            });
        sum += weight * k;
    }
    Ok(sum)
}

/// Whether the series, the Lidskii sum and the closed form all agree.
pub fn ct_identity_check(lambda: &Partition, n: usize, a: &NetflowVector) -> Result<bool> {
    check_inputs(lambda, n, a)?;
    lambda.check_limiting(n)?;
    let series = ct_lhs_series(lambda, n, a, default_truncation(lambda))?;
    let lidskii = ct_lhs_lidskii(lambda, n, a)?;
    let closed = limiting_volume(lambda, a)?;
    Ok(series == lidskii && lidskii == closed)
}

/// Coefficient of `x^b` in `∏_{(i,j) ∈ edges} (1 - x_j x_i^{-1})^{-1}`, each
/// factor cut off after degree `d`.
pub fn kostant_series_coefficient(
    vertex_count: usize,
    edges: &[(usize, usize)],
    b: &[i64],
    d: u32,
) -> Result<ExactInt> {
    if b.len() != vertex_count {
        return Err(Error::LengthMismatch {
            expected: vertex_count,
            got: b.len(),
        });
    }
    let target = b
        .iter()
        .map(|&x| i32::try_from(x).map_err(|_| Error::Overflow(format!("exponent {x}"))))
        .collect::<Result<Vec<_>>>()?;
    let series = edges.iter().fold(
        TruncatedLaurentSeries::one(vertex_count, d),
        |acc, &(i, j)| acc.mul(&TruncatedLaurentSeries::geometric(vertex_count, d, i, j, 0)),
    );
    Ok(series.coeff(&target))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_math::int;
    use crate::kostant::kostant_count_brute;
    use crate::lidskii::lidskii_volume;
    use proptest::prelude::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn nf(v: &[u64]) -> NetflowVector {
        NetflowVector::new(v.to_vec()).unwrap()
    }

    fn series(l: &str, n: usize, a: &[u64]) -> ExactInt {
        let l = p(l);
        ct_lhs_series(&l, n, &nf(a), default_truncation(&l)).unwrap()
    }

    #[test]
    fn series_examples() {
        assert_eq!(series("1", 2, &[2, 5]), int(2));
        assert_eq!(series("1,1", 3, &[1, 1, 1]), int(2));
        assert_eq!(series("2", 3, &[3, 1, 1]), int(9));
        assert_eq!(series("1,1", 4, &[2, 3, 1, 1]), int(12));
        assert_eq!(series("2,1", 4, &[1, 1, 1, 1]), int(3));
        assert_eq!(series("4,3,2,1", 8, &[1; 8]), int(12600));
    }

    #[test]
    fn lidskii_examples() {
        assert_eq!(
            ct_lhs_lidskii(&p("4,3,2,1"), 8, &NetflowVector::ones(8)).unwrap(),
            int(12600)
        );
        assert_eq!(ct_lhs_lidskii(&p("1"), 2, &nf(&[3, 1])).unwrap(), int(3));
        assert_eq!(
            ct_lhs_lidskii(&p("2,1"), 4, &NetflowVector::ones(4)).unwrap(),
            int(3)
        );
        // below the stabilization index the sum is the volume of K_4, not the limit
        assert_eq!(
            ct_lhs_lidskii(&p("2,1"), 3, &NetflowVector::ones(3)).unwrap(),
            int(4)
        );
    }

    #[test]
    fn identity_examples() {
        assert!(ct_identity_check(&p("1"), 2, &nf(&[1, 1])).unwrap());
        assert!(ct_identity_check(&p("2,1"), 4, &NetflowVector::ones(4)).unwrap());
        assert!(ct_identity_check(&p("1,1"), 4, &nf(&[2, 3, 1, 1])).unwrap());
        assert_eq!(
            ct_identity_check(&p("2,1"), 3, &NetflowVector::ones(3)),
            Err(Error::NotLimiting { n: 3, required: 4 })
        );
    }

    #[test]
    fn series_matches_volume_below_stabilization() {
        for lambda in Partition::all_up_to(3) {
            for n in lambda.min_admissible_n()..lambda.stabilization_index() {
                let a = NetflowVector::new((0..n as u64).map(|k| 1 + k % 3).collect()).unwrap();
                let g = build_graph(&lambda, n).unwrap();
                let vol = lidskii_volume(&g, &a).unwrap();
                assert_eq!(
                    ct_lhs_series(&lambda, n, &a, default_truncation(&lambda)).unwrap(),
                    vol
                );
                assert_eq!(ct_lhs_lidskii(&lambda, n, &a).unwrap(), vol);
            }
        }
    }

    #[test]
    fn pruning_and_truncation_do_not_matter() {
        for lambda in Partition::all_up_to(3) {
            let n = lambda.stabilization_index();
            let a = NetflowVector::new((0..n as u64).map(|k| 1 + (k * 2) % 3).collect()).unwrap();
            let d = default_truncation(&lambda);
            let base = ct_series_once(&lambda, n, &a, d, SeriesPruning::Reachability).unwrap();
            assert_eq!(
                ct_series_once(&lambda, n, &a, d, SeriesPruning::Off).unwrap(),
                base
            );
            assert_eq!(
                ct_series_once(&lambda, n, &a, 2 * d, SeriesPruning::Off).unwrap(),
                base
            );
            assert_eq!(
                ct_series_once(&lambda, n, &a, d - 1, SeriesPruning::Reachability).unwrap(),
                base
            );
        }
    }

    #[test]
    fn truncation_floor() {
        let l = p("2,1");
        assert_eq!(
            ct_series_once(&l, 4, &NetflowVector::ones(4), 3, SeriesPruning::Off),
            Err(Error::TruncationTooSmall {
                bound: 3,
                required: 6
            })
        );
        assert!(ct_lhs_series(&l, 4, &NetflowVector::ones(3), 6).is_err());
        assert!(ct_lhs_series(&l, 2, &NetflowVector::ones(2), 6).is_err());
    }

    #[test]
    fn hand_expansion_of_segment() {
        // (a1 x1 + a2 x2)(x1 - x2)^{-1}: only a1 x1 · x1^{-1} survives
        let d = 4;
        let s = TruncatedLaurentSeries::linear_form(&[2, 5], d)
            .mul(&TruncatedLaurentSeries::geometric(2, d, 1, 2, 1));
        assert_eq!(s.len(), d as usize + 2);
        assert_eq!(s.coeff(&[0, 0]), int(2));
        assert_eq!(s.coeff(&[-1, 1]), int(2 + 5));
        assert_eq!(s.constant_term_in(1).len(), 1);
        assert_eq!(s.iterated_constant_term(), int(2));
    }

    #[test]
    fn products_associate_and_commute() {
        let d = 3;
        let f1 = TruncatedLaurentSeries::geometric(3, d, 1, 2, 1);
        let f2 = TruncatedLaurentSeries::geometric(3, d, 1, 3, 1);
        let f3 = TruncatedLaurentSeries::linear_form(&[1, 2, 3], d).pow(2);
        let left = f1.mul(&f2).mul(&f3);
        let right = f1.mul(&f2.mul(&f3));
        let swapped = f3.mul(&f1).mul(&f2);
        assert_eq!(left, right);
        assert_eq!(left, swapped);
        assert_eq!(f3.mul(&TruncatedLaurentSeries::one(3, d)), f3);
        assert!(f3.mul(&TruncatedLaurentSeries::zero(3, d)).is_empty());
    }

    #[test]
    fn parallel_product_matches_serial() {
        let d = 6;
        let big = TruncatedLaurentSeries::linear_form(&[1, 2, 3, 1], d).pow(12);
        let f = TruncatedLaurentSeries::geometric(4, d, 2, 4, 1);
        assert!(big.len() * f.len() >= PAR_THRESHOLD);
        let mut serial = TruncatedLaurentSeries::zero(4, d);
        for (e1, c1) in &big.terms {
            for (e2, c2) in &f.terms {
                let e: Vec<i32> = e1.iter().zip(e2).map(|(x, y)| x + y).collect();
                *serial.terms.entry(e).or_default() += c1 * c2;
            }
        }
        serial.terms.retain(|_, c| !c.is_zero());
        assert_eq!(big.mul(&f), serial);
    }

    fn small_graph() -> impl Strategy<Value = (usize, Vec<(usize, usize)>, Vec<i64>)> {
        (2usize..=4).prop_flat_map(|nv| {
            let pairs: Vec<(usize, usize)> = (1..=nv)
                .flat_map(|i| (i + 1..=nv).map(move |j| (i, j)))
                .collect();
            (
                Just(nv),
                proptest::sample::subsequence(pairs.clone(), 0..=pairs.len().min(4)),
                proptest::collection::vec(-3i64..=3, nv),
            )
        })
    }

    proptest! {
        #[test]
        fn generating_series_counts_reversed_flows((nv, edges, mut b) in small_graph()) {
            let s: i64 = b.iter().sum();
            b[nv - 1] -= s;
            let reversed: Vec<(usize, usize)> = edges.iter().map(|&(i, j)| (j, i)).collect();
            let expected = kostant_count_brute(nv, &reversed, &b);
            let d = b.iter().map(|x| x.unsigned_abs()).sum::<u64>() as u32 + 1;
            prop_assert_eq!(kostant_series_coefficient(nv, &edges, &b, d).unwrap(), expected);
        }
    }
}
