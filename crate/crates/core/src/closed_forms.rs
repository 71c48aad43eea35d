//! Product formulas: the limiting volume, the Tesler volume in both of its
//! forms, and the Ehrhart polynomial of a product of scaled simplices.

use num_bigint::BigInt;
use num_traits::{One, Pow};

use crate::error::{Error, Result};
use crate::exact_math::{
    catalan, factorial, multinomial, rat, rat_from_int, ExactInt, ExactPolynomial,
};
use crate::partition_graph::{NetflowVector, Partition};

/// `a_1 Δ_{λ_1} × ⋯ × a_ℓ Δ_{λ_ℓ}`, one factor per row of `λ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaledSimplexProduct {
    factors: Vec<(u64, usize)>,
}

impl ScaledSimplexProduct {
    pub fn new(factors: Vec<(u64, usize)>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidPartition(
                "a product needs at least one factor".into(),
            ));
        }
        if let Some(&(a, d)) = factors.iter().find(|&&(a, d)| a == 0 || d == 0) {
            return Err(Error::InvalidPartition(format!(
                "factor {a}Δ_{d} needs a positive scale and dimension"
            )));
        }
        Ok(ScaledSimplexProduct { factors })
    }

    /// Pairs row `i` of `λ` with `a_i`; entries of `a` past `ℓ(λ)` are unused.
    pub fn from_partition(lambda: &Partition, a: &NetflowVector) -> Result<Self> {
        if a.len() < lambda.len() {
            return Err(Error::LengthMismatch {
                expected: lambda.len(),
                got: a.len(),
            });
        }
        Self::new(
            lambda
                .parts()
                .iter()
                .enumerate()
                .map(|(i, &d)| (a.get(i + 1), d))
                .collect(),
        )
    }

    pub fn factors(&self) -> &[(u64, usize)] {
        &self.factors
    }

    pub fn dim(&self) -> usize {
        self.factors.iter().map(|f| f.1).sum()
    }

    /// `dim! ∏ a_i^{d_i} / d_i!`
    pub fn normalized_volume(&self) -> ExactInt {
        let dims: Vec<i64> = self.factors.iter().map(|f| f.1 as i64).collect();
        let m = multinomial(self.dim() as i64, &dims).expect("parts sum to the total");
        self.factors
            .iter()
            .fold(m, |acc, &(a, d)| acc * Pow::pow(BigInt::from(a), d as u64))
    }

    /// `∏ C(a_i t + d_i, d_i)` as a polynomial in `t`.
    pub fn ehrhart(&self) -> ExactPolynomial {
        let mut p = ExactPolynomial::one();
        for &(a, d) in &self.factors {
            for k in 1..=d as i64 {
                // (a t + k) / k
                p = &p * &ExactPolynomial::linear(rat(1, 1), rat(a as i64, k));
            }
        }
        p
    }
}

pub fn limiting_volume(lambda: &Partition, a: &NetflowVector) -> Result<ExactInt> {
    Ok(ScaledSimplexProduct::from_partition(lambda, a)?.normalized_volume())
}

pub fn product_ehrhart(lambda: &Partition, a: &NetflowVector) -> Result<ExactPolynomial> {
    Ok(ScaledSimplexProduct::from_partition(lambda, a)?.ehrhart())
}

fn check_n(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::InvalidPartition("n must be at least 1".into()));
    }
    Ok(n * (n - 1) / 2)
}

/// `C(n,2)! · 2^{C(n,2)} / ∏_{i=1}^n i!`
pub fn tesler_volume(n: u64) -> Result<ExactInt> {
    let m = check_n(n)?;
    let num = factorial(m) * Pow::pow(BigInt::from(2), m);
    let den = (1..=n).fold(BigInt::one(), |acc, i| acc * factorial(i));
    Ok(num / den)
}

/// Standard Young tableaux of shape `λ`, by the hook length formula.
pub fn syt_count(lambda: &Partition) -> ExactInt {
    let parts = lambda.parts();
    let mut hooks = BigInt::one();
    for (i, &row) in parts.iter().enumerate() {
        for j in 0..row {
            let arm = row - j - 1;
            let leg = parts[i + 1..].iter().take_while(|&&r| r > j).count();
            hooks *= arm + leg + 1;
        }
    }
    factorial(lambda.size() as u64) / hooks
}

/// `|SYT_{(n-1,…,1)}| · ∏_{i=0}^{n-1} C_i`
pub fn tesler_volume_catalan_form(n: u64) -> Result<ExactInt> {
    check_n(n)?;
    let syt = if n == 1 {
        BigInt::one()
    } else {
        syt_count(&Partition::staircase(n as usize - 1)?)
    };
    Ok((0..n).fold(syt, |acc, i| acc * catalan(i)))
}

/// `tesler(n) · n! = 2^{C(n,2)} · limiting_volume((n-1,…,1), 1)`
pub fn corollary_ratio_check(n: u64) -> Result<bool> {
    if n < 2 {
        return Err(Error::InvalidPartition(
            "the ratio identity needs n >= 2".into(),
        ));
    }
    let m = check_n(n)?;
    let lhs = tesler_volume(n)? * factorial(n);
    let stair = Partition::staircase(n as usize - 1)?;
    let rhs =
        Pow::pow(BigInt::from(2), m) * limiting_volume(&stair, &NetflowVector::ones(stair.len()))?;
    Ok(lhs == rhs)
}

/// Leading coefficient of an Ehrhart polynomial times `deg!`.
pub fn normalized_leading(p: &ExactPolynomial) -> Option<ExactInt> {
    let d = p.degree()?;
    let v = p.leading_coeff() * rat_from_int(factorial(d as u64));
    v.is_integer().then(|| v.to_integer())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_math::int;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    // Fill cells with 1..|λ| one at a time, each new entry at an outer corner.
    fn syt_brute(shape: &[usize]) -> u64 {
        fn go(target: &[usize], filled: &mut Vec<usize>, left: usize) -> u64 {
            if left == 0 {
                return 1;
            }
            let mut total = 0;
            for r in 0..target.len() {
                let ok_row = filled[r] < target[r];
                let ok_above = r == 0 || filled[r - 1] > filled[r];
                if ok_row && ok_above {
                    filled[r] += 1;
                    total += go(target, filled, left - 1);
                    filled[r] -= 1;
                }
            }
            total
        }
        go(shape, &mut vec![0; shape.len()], shape.iter().sum())
    }

    #[test]
    fn limiting_volume_examples() {
        assert_eq!(
            limiting_volume(&p("4,3,2,1"), &NetflowVector::ones(8)).unwrap(),
            int(12600)
        );
        assert_eq!(
            limiting_volume(&p("2,1"), &NetflowVector::ones(2)).unwrap(),
            int(3)
        );
        let a = NetflowVector::new(vec![5]).unwrap();
        assert_eq!(limiting_volume(&p("3"), &a).unwrap(), int(125));
        assert!(limiting_volume(&p("2,1"), &NetflowVector::ones(1)).is_err());
    }

    #[test]
    fn tesler_values() {
        let vals: Vec<_> = (1..=5).map(|n| tesler_volume(n).unwrap()).collect();
        assert_eq!(vals, [1, 1, 4, 160, 107520].map(int));
        assert!(tesler_volume(0).is_err());
    }

    #[test]
    fn hook_length_matches_brute_force() {
        assert_eq!(syt_count(&p("2,1")), int(2));
        assert_eq!(syt_count(&p("3,2,1")), int(16));
        assert_eq!(syt_count(&p("1")), int(1));
        for size in 1..=7 {
            for lambda in Partition::all_of_size(size) {
                assert_eq!(
                    syt_count(&lambda),
                    int(syt_brute(lambda.parts()) as i64),
                    "{lambda}"
                );
            }
        }
    }

    #[test]
    fn catalan_form_agrees() {
        assert_eq!(tesler_volume_catalan_form(4).unwrap(), int(160));
        assert_eq!(tesler_volume_catalan_form(3).unwrap(), int(4));
        assert_eq!(tesler_volume_catalan_form(1).unwrap(), int(1));
        for n in 1..=10 {
            assert_eq!(
                tesler_volume_catalan_form(n).unwrap(),
                tesler_volume(n).unwrap()
            );
        }
    }

    #[test]
    fn ratio_identity() {
        for n in 2..=8 {
            assert!(corollary_ratio_check(n).unwrap(), "n={n}");
        }
        assert!(corollary_ratio_check(1).is_err());
    }

    #[test]
    fn product_ehrhart_examples() {
        let seg = product_ehrhart(&p("1"), &NetflowVector::ones(1)).unwrap();
        assert_eq!(seg, ExactPolynomial::from_ints([1, 1]));
        let dil = product_ehrhart(&p("1"), &NetflowVector::new(vec![3]).unwrap()).unwrap();
        assert_eq!(dil, ExactPolynomial::from_ints([1, 3]));
        let e = product_ehrhart(&p("2,1"), &NetflowVector::ones(2)).unwrap();
        // C(t+2,2)(t+1) = (t^3 + 4t^2 + 5t + 2)/2
        assert_eq!(e.coeffs(), &[rat(1, 1), rat(5, 2), rat(2, 1), rat(1, 2)]);
        assert_eq!(normalized_leading(&e), Some(int(3)));
    }

    #[test]
    fn ehrhart_at_one_counts_product_points() {
        for lambda in Partition::all_up_to(5) {
            let a =
                NetflowVector::new((0..lambda.len() as u64).map(|k| 1 + k % 3).collect()).unwrap();
            let s = ScaledSimplexProduct::from_partition(&lambda, &a).unwrap();
            let direct = s.factors().iter().fold(int(1), |acc, &(ai, d)| {
                acc * crate::exact_math::binomial(int(ai as i64 + d as i64), d as i64)
            });
            assert_eq!(s.ehrhart().eval_int(1), rat_from_int(direct));
            assert_eq!(
                normalized_leading(&s.ehrhart()),
                Some(s.normalized_volume())
            );
        }
    }

    #[test]
    fn bad_factors() {
        assert!(ScaledSimplexProduct::new(vec![]).is_err());
        assert!(ScaledSimplexProduct::new(vec![(0, 1)]).is_err());
        assert!(ScaledSimplexProduct::new(vec![(1, 0)]).is_err());
    }
}
