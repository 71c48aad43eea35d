//! Exact integers, rationals and univariate polynomials.
//!
//! Integers are [`num_bigint::BigInt`] and rationals [`num_rational::BigRational`];
//! nothing in the crate touches floating point.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type ExactInt = BigInt;
pub type ExactRat = BigRational;

pub fn int(v: i64) -> ExactInt {
    BigInt::from(v)
}

pub fn rat(num: i64, den: i64) -> ExactRat {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_from_int(v: ExactInt) -> ExactRat {
    BigRational::from_integer(v)
}

/// `n!` for small `n`.
pub fn factorial(n: u64) -> ExactInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Binomial coefficient `C(n, k)`.
///
/// Returns 0 for `k < 0`, for `k > n`, and for any negative `n` (the generalized
/// upper-negative form is deliberately not used).
pub fn binomial(n: impl Into<ExactInt>, k: i64) -> ExactInt {
    let n: ExactInt = n.into();
    if k < 0 || n.is_negative() {
        return BigInt::zero();
    }
    let kb = BigInt::from(k);
    if kb > n {
        return BigInt::zero();
    }
    let complement = &n - &kb;
    let steps = if complement < kb {
        match complement.to_u64() {
            Some(c) => c,
            None => unreachable!("complement is smaller than an i64"),
        }
    } else {
        k as u64
    };
    let mut acc = BigInt::one();
    for i in 0..steps {
        acc = acc * (&n - i) / (i + 1);
    }
    acc
}

/// `total! / prod(parts_i!)`.
pub fn multinomial(total: i64, parts: &[i64]) -> Result<ExactInt> {
    if parts.iter().any(|&p| p < 0) || parts.iter().sum::<i64>() != total {
        return Err(Error::BadMultinomial {
            total,
            parts: parts.to_vec(),
        });
    }
    // Product of binomials avoids the large intermediate factorial.
    let mut acc = BigInt::one();
    let mut running = 0i64;
    for &p in parts {
        running += p;
        acc *= binomial(running, p);
    }
    Ok(acc)
}

/// The `i`-th Catalan number `C(2i, i) / (i + 1)`.
pub fn catalan(i: u64) -> ExactInt {
    binomial(BigInt::from(2 * i), i as i64) / (i + 1)
}

/// Univariate polynomial with exact rational coefficients, `coeffs[d]` is the
/// coefficient of `t^d`. The highest stored coefficient is always nonzero; the
/// zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ExactPolynomial {
    coeffs: Vec<ExactRat>,
}

impl ExactPolynomial {
    pub fn new(coeffs: Vec<ExactRat>) -> Self {
        let mut p = ExactPolynomial { coeffs };
        p.normalize();
        p
    }

    pub fn from_ints<I: IntoIterator<Item = i64>>(coeffs: I) -> Self {
        Self::new(coeffs.into_iter().map(|c| rat(c, 1)).collect())
    }

    pub fn zero() -> Self {
        ExactPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: ExactRat) -> Self {
        Self::new(vec![c])
    }

    /// `c0 + c1 t`.
    pub fn linear(c0: ExactRat, c1: ExactRat) -> Self {
        Self::new(vec![c0, c1])
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[ExactRat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, d: usize) -> ExactRat {
        self.coeffs
            .get(d)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn leading_coeff(&self) -> ExactRat {
        self.coeffs
            .last()
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn eval(&self, t: &ExactRat) -> ExactRat {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * t + c)
    }

    pub fn eval_int(&self, t: i64) -> ExactRat {
        self.eval(&rat(t, 1))
    }

    /// Coefficients as integers, if they all are.
    pub fn integer_coeffs(&self) -> Option<Vec<ExactInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Substitute `t -> t + shift`.
    pub fn shift(&self, shift: &ExactRat) -> Self {
        let lin = Self::linear(shift.clone(), BigRational::one());
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| {
            &(&acc * &lin) + &Self::constant(c.clone())
        })
    }
}

impl Add for &ExactPolynomial {
    type Output = ExactPolynomial;
    fn add(self, rhs: &ExactPolynomial) -> ExactPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        ExactPolynomial::new((0..len).map(|d| self.coeff(d) + rhs.coeff(d)).collect())
    }
}

impl Sub for &ExactPolynomial {
    type Output = ExactPolynomial;
    fn sub(self, rhs: &ExactPolynomial) -> ExactPolynomial {
        self + &(-rhs)
    }
}

impl Neg for &ExactPolynomial {
    type Output = ExactPolynomial;
    fn neg(self) -> ExactPolynomial {
        ExactPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &ExactPolynomial {
    type Output = ExactPolynomial;
    fn mul(self, rhs: &ExactPolynomial) -> ExactPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return ExactPolynomial::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ExactPolynomial::new(out)
    }
}

impl fmt::Debug for ExactPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExactPolynomial({self})")
    }
}

impl fmt::Display for ExactPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            let show_coeff = d == 0 || !mag.is_one();
            if show_coeff {
                if mag.is_integer() {
                    write!(f, "{mag}")?;
                } else {
                    write!(f, "({mag})")?;
                }
            }
            match d {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{d}")?,
            }
        }
        Ok(())
    }
}

/// Unique polynomial of degree at most `points.len() - 1` through the points,
/// by Newton divided differences.
pub fn interpolate(points: &[(ExactInt, ExactInt)]) -> Result<ExactPolynomial> {
    let xs: Vec<ExactRat> = points
        .iter()
        .map(|(x, _)| rat_from_int(x.clone()))
        .collect();
    for (i, x) in xs.iter().enumerate() {
        if xs[..i].contains(x) {
            return Err(Error::DuplicateAbscissa(x.to_string()));
        }
    }
    let mut table: Vec<ExactRat> = points
        .iter()
        .map(|(_, y)| rat_from_int(y.clone()))
        .collect();
    let m = table.len();
    for level in 1..m {
        for i in (level..m).rev() {
            table[i] = (&table[i] - &table[i - 1]) / (&xs[i] - &xs[i - level]);
        }
    }
    // Horner over the Newton basis.
    let mut poly = ExactPolynomial::zero();
    for i in (0..m).rev() {
        let factor = ExactPolynomial::linear(-xs[i].clone(), BigRational::one());
        poly = &(&poly * &factor) + &ExactPolynomial::constant(table[i].clone());
    }
    Ok(poly)
}

/// Rank of a set of rational row vectors.
pub fn rank(rows: &[Vec<ExactRat>]) -> usize {
    let mut m: Vec<Vec<ExactRat>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(pivot) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pivot);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let factor = row[c].clone();
                for (x, p) in row[c..cols].iter_mut().zip(&pivot_row[c..cols]) {
                    *x -= &factor * p;
                }
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// Dimension of the affine hull of a point set (−1 for the empty set, as an `Option`).
pub fn affine_rank(points: &[Vec<ExactRat>]) -> Option<usize> {
    let (base, rest) = points.split_first()?;
    let diffs: Vec<Vec<ExactRat>> = rest
        .iter()
        .map(|p| p.iter().zip(base).map(|(x, y)| x - y).collect())
        .collect();
    Some(rank(&diffs))
}

/// Formats a rational as `num/den`, always with an explicit denominator.
pub fn format_rat(r: &ExactRat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `num/den` or a bare integer.
pub fn parse_rat(s: &str) -> Result<ExactRat> {
    let s = s.trim();
    let parse_int = |t: &str| {
        t.trim()
            .parse::<BigInt>()
            .map_err(|e| Error::Parse(format!("bad integer {t:?}: {e}")))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(BigRational::new(parse_int(n)?, d))
        }
        None => Ok(rat_from_int(parse_int(s)?)),
    }
}

pub fn parse_int(s: &str) -> Result<ExactInt> {
    s.trim()
        .parse::<BigInt>()
        .map_err(|e| Error::Parse(format!("bad integer {s:?}: {e}")))
}

/// Exact integer quotient, or `None` if it does not divide.
pub fn exact_div(a: &ExactInt, b: &ExactInt) -> Option<ExactInt> {
    let (q, r) = a.div_rem(b);
    r.is_zero().then_some(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(4, 2), int(6));
        assert_eq!(binomial(3, 0), int(1));
        assert_eq!(binomial(2, 3), int(0));
        assert_eq!(binomial(5, -1), int(0));
        assert_eq!(binomial(-3, 2), int(0));
        assert_eq!(
            binomial(60, 30),
            "118264581564861424".parse::<BigInt>().unwrap()
        );
    }

    #[test]
    fn multinomial_values() {
        assert_eq!(multinomial(3, &[1, 1, 1]).unwrap(), int(6));
        assert_eq!(multinomial(5, &[5]).unwrap(), int(1));
        // 10! / (4! 3! 2! 1!) by direct factorial arithmetic
        let direct = factorial(10) / (factorial(4) * factorial(3) * factorial(2) * factorial(1));
        assert_eq!(direct, int(12600));
        assert_eq!(multinomial(10, &[4, 3, 2, 1]).unwrap(), direct);
        assert!(multinomial(4, &[1, 2]).is_err());
        assert!(multinomial(1, &[2, -1]).is_err());
    }

    #[test]
    fn catalan_values() {
        assert_eq!(catalan(0), int(1));
        assert_eq!(catalan(3), int(5));
        assert_eq!(catalan(4), int(14));
        assert_eq!(catalan(10), int(16796));
    }

    #[test]
    fn catalan_always_integral() {
        for i in 0..=30u64 {
            let num = binomial(2 * i as i64, i as i64);
            assert!(exact_div(&num, &BigInt::from(i + 1)).is_some(), "C_{i}");
        }
    }

    #[test]
    fn interpolation_examples() {
        let p = interpolate(&[(int(0), int(1)), (int(1), int(2))]).unwrap();
        assert_eq!(p, ExactPolynomial::from_ints([1, 1]));
        let p = interpolate(&[(int(0), int(1)), (int(1), int(3)), (int(2), int(6))]).unwrap();
        assert_eq!(
            p,
            ExactPolynomial::new(vec![rat(1, 1), rat(3, 2), rat(1, 2)])
        );
        let p = interpolate(&[(int(0), int(5))]).unwrap();
        assert_eq!(p, ExactPolynomial::from_ints([5]));
        assert!(matches!(
            interpolate(&[(int(1), int(1)), (int(1), int(2))]),
            Err(Error::DuplicateAbscissa(_))
        ));
    }

    #[test]
    fn polynomial_display_and_shift() {
        let p = ExactPolynomial::new(vec![rat(1, 1), rat(3, 2), rat(1, 2)]);
        assert_eq!(p.to_string(), "(1/2)t^2 + (3/2)t + 1");
        // (t+1)^2 shifted by -1 is t^2
        let q = ExactPolynomial::from_ints([1, 2, 1]).shift(&rat(-1, 1));
        assert_eq!(q, ExactPolynomial::from_ints([0, 0, 1]));
        assert_eq!(ExactPolynomial::zero().degree(), None);
    }

    #[test]
    fn rank_basics() {
        let rows = vec![
            vec![rat(1, 1), rat(2, 1)],
            vec![rat(2, 1), rat(4, 1)],
            vec![rat(0, 1), rat(1, 3)],
        ];
        assert_eq!(rank(&rows), 2);
        assert_eq!(affine_rank(&rows), Some(2));
        let line = vec![
            vec![rat(0, 1), rat(0, 1)],
            vec![rat(1, 1), rat(2, 1)],
            vec![rat(2, 1), rat(4, 1)],
        ];
        assert_eq!(affine_rank(&line), Some(1));
        assert_eq!(affine_rank(&[]), None);
    }

    #[test]
    fn rat_format_roundtrip() {
        let r = rat(-6, 4);
        assert_eq!(format_rat(&r), "-3/2");
        assert_eq!(parse_rat("-3/2").unwrap(), r);
        assert_eq!(parse_rat("7").unwrap(), rat(7, 1));
        assert!(parse_rat("1/0").is_err());
    }

    #[test]
    fn multinomial_two_parts_is_binomial() {
        for n in 0..=20i64 {
            for k in 0..=n {
                assert_eq!(multinomial(n, &[k, n - k]).unwrap(), binomial(n, k));
            }
        }
    }

    proptest! {
        #[test]
        fn interpolation_reproduces_samples(ys in proptest::collection::vec(-50i64..50, 1..7), start in -5i64..5) {
            let pts: Vec<(ExactInt, ExactInt)> = ys.iter().enumerate()
                .map(|(i, &y)| (int(start + 2 * i as i64), int(y)))
                .collect();
            let p = interpolate(&pts).unwrap();
            prop_assert!(p.degree().is_none_or(|d| d < pts.len()));
            for (x, y) in &pts {
                prop_assert_eq!(p.eval(&rat_from_int(x.clone())), rat_from_int(y.clone()));
            }
        }
    }
}
