//! Truncated formal power series with exact rational coefficients.
//!
//! A [`TruncatedSeries`] of order `N` stores the coefficients of
//! `x^0 .. x^N`. Everything above `N` is unknown and never read or written.
//! Binary operations require both operands to share the same order.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncatedSeries {
    coeffs: Vec<Rational>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        TruncatedSeries { coeffs: vec![Rational::zero(); order + 1] }
    }

    /// The neutral element of the Cauchy product, `1 + 0x + 0x^2 + ...`.
    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = Rational::one();
        s
    }

    /// Builds a series from an explicit coefficient list; the order is
    /// `coeffs.len() - 1`.
    ///
    /// Panics on an empty list, which would have no constant term.
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series needs at least the constant term");
        TruncatedSeries { coeffs }
    }

    /// Integer coefficients, zero-padded or truncated to `order`.
    pub fn from_integers(values: &[i64], order: usize) -> Self {
        let mut s = Self::zero(order);
        for (c, &v) in s.coeffs.iter_mut().zip(values) {
            *c = Rational::from_integer(BigInt::from(v));
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `x^n`. Panics above the truncation order.
    pub fn coeff(&self, n: usize) -> &Rational {
        assert!(n <= self.order(), "x^{n} is above the truncation order {}", self.order());
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        TruncatedSeries { coeffs: self.coeffs.iter().map(|c| c * factor).collect() }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_orders(self, other)?;
        Ok(TruncatedSeries {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    /// Every coefficient as an integer, or an error naming the first
    /// coefficient that is not one.
    pub fn to_integers(&self) -> Result<Vec<BigInt>> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| {
                if c.is_integer() {
                    Ok(c.to_integer())
                } else {
                    Err(Error::NotIntegral(format!("{c} at x^{n}")))
                }
            })
            .collect()
    }

    /// Same coefficients at a different order, zero-padding when growing.
    pub fn with_order(&self, order: usize) -> Self {
        let mut coeffs: Vec<Rational> = self.coeffs.iter().take(order + 1).cloned().collect();
        coeffs.resize(order + 1, Rational::zero());
        TruncatedSeries { coeffs }
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match n {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}x")?,
                _ => write!(f, "{c}x^{n}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(x^{})", self.order() + 1)
    }
}

fn check_orders(a: &TruncatedSeries, b: &TruncatedSeries) -> Result<()> {
    if a.order() != b.order() {
        return Err(Error::OrderMismatch { left: a.order(), right: b.order() });
    }
    Ok(())
}

/// `g(x) = x^2 / (1 - x)^2`: the coefficient of `x^n` is the number of
/// choices `1 <= m <= n - 1` for a single class of `n` players.
pub fn make_g(order: usize) -> TruncatedSeries {
    let coeffs = (0..=order)
        .map(|n| Rational::from_integer(BigInt::from(n.saturating_sub(1))))
        .collect();
    TruncatedSeries { coeffs }
}

/// Cauchy product, truncated to the common order.
pub fn multiply(a: &TruncatedSeries, b: &TruncatedSeries) -> Result<TruncatedSeries> {
    check_orders(a, b)?;
    let order = a.order();
    let mut out = TruncatedSeries::zero(order);
    for (i, ai) in a.coeffs.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.coeffs[..=order - i].iter().enumerate() {
            if !bj.is_zero() {
                out.coeffs[i + j] += ai * bj;
            }
        }
    }
    Ok(out)
}

pub fn power(s: &TruncatedSeries, exponent: usize) -> TruncatedSeries {
    let mut acc = TruncatedSeries::one(s.order());
    for _ in 0..exponent {
        acc = multiply(&acc, s).expect("orders agree by construction");
    }
    acc
}

/// `s(x) -> s(x^a)`.
pub fn power_substitute(s: &TruncatedSeries, a: usize) -> TruncatedSeries {
    assert!(a > 0, "substitution exponent must be positive");
    let order = s.order();
    let mut out = TruncatedSeries::zero(order);
    for (n, c) in s.coeffs.iter().enumerate() {
        match n.checked_mul(a) {
            Some(m) if m <= order => out.coeffs[m] = c.clone(),
            _ => break,
        }
    }
    out
}

/// Expands `numerator / prod (1 - x^k)^e` up to `order` by multiplying the
/// numerator polynomial with one geometric series per factor.
pub fn expand_rational(numerator: &[i64], denominator_factors: &[(usize, usize)], order: usize) -> TruncatedSeries {
    let mut acc = TruncatedSeries::from_integers(numerator, order);
    let geometric = TruncatedSeries::from_integers(&vec![1; order + 1], order);
    for &(k, e) in denominator_factors {
        let factor = power_substitute(&geometric, k);
        for _ in 0..e {
            acc = multiply(&acc, &factor).expect("orders agree by construction");
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(s: &TruncatedSeries) -> Vec<i64> {
        s.to_integers().unwrap().iter().map(|v| i64::try_from(v).unwrap()).collect()
    }

    #[test]
    fn g_coefficients() {
        assert_eq!(ints(&make_g(7)), vec![0, 0, 1, 2, 3, 4, 5, 6]);
        assert_eq!(ints(&make_g(0)), vec![0]);
        assert_eq!(ints(&make_g(2)), vec![0, 0, 1]);
    }

    #[test]
    fn cauchy_product_of_g() {
        let g = make_g(8);
        let gg = multiply(&g, &g).unwrap();
        assert_eq!(ints(&gg)[4], 1);
        assert_eq!(ints(&gg)[5], 4);
        let one = TruncatedSeries::one(8);
        assert_eq!(multiply(&g, &one).unwrap(), g);
    }

    #[test]
    fn mismatched_orders_are_rejected() {
        let err = multiply(&make_g(3), &make_g(4)).unwrap_err();
        assert_eq!(err, Error::OrderMismatch { left: 3, right: 4 });
        assert!(make_g(3).add(&make_g(5)).is_err());
    }

    #[test]
    fn powers_of_g() {
        let g = make_g(10);
        assert_eq!(power(&g, 0), TruncatedSeries::one(10));
        assert_eq!(ints(&power(&g, 2))[5], 4);
        assert_eq!(ints(&power(&g, 3))[9], 56);
    }

    #[test]
    fn substitution() {
        let g = make_g(9);
        let g2 = power_substitute(&g, 2);
        assert_eq!(ints(&g2)[6], 2);
        assert_eq!(ints(&g2)[7], 0);
        assert_eq!(power_substitute(&g, 1), g);
        assert_eq!(ints(&power_substitute(&g, 3))[7], 0);
        assert_eq!(ints(&power_substitute(&g, 3))[9], 2);
    }

    #[test]
    fn rational_expansions() {
        let geo = expand_rational(&[1], &[(1, 1)], 12);
        assert!(ints(&geo).iter().all(|&c| c == 1));

        let f2 = expand_rational(&[0, 0, 1, 2, 1, -2], &[(1, 2), (2, 2)], 9);
        assert_eq!(ints(&f2)[9], 92);

        let f3 = expand_rational(&[0, 0, 0, 0, 1, 4, 4, 2, -3, 0, -2], &[(1, 2), (2, 2), (3, 2)], 9);
        assert_eq!(ints(&f3)[9], 146);
    }

    #[test]
    fn non_integer_coefficients_are_reported() {
        let half = Rational::new(BigInt::from(1), BigInt::from(2));
        let s = make_g(3).scale(&half);
        assert!(matches!(s.to_integers(), Err(Error::NotIntegral(_))));
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(make_g(3).to_string(), "1x^2 + 2x^3 + O(x^4)");
        assert_eq!(TruncatedSeries::zero(1).to_string(), "0 + O(x^2)");
    }
}
