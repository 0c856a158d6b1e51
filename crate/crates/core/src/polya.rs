//! Integer partitions, cycle indices of symmetric groups, and Pólya
//! substitution of a base series into a cycle index.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::series::{multiply, power, power_substitute, Rational, TruncatedSeries};

/// A partition of `t` stored as multiplicities `j_1..j_t`, where `j_k` is
/// the number of parts (cycles) of length `k`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct IntegerPartition {
    multiplicities: Vec<usize>,
}

impl IntegerPartition {
    pub fn from_multiplicities(multiplicities: Vec<usize>) -> Self {
        IntegerPartition { multiplicities }
    }

    /// `j_1..j_t`; index 0 holds `j_1`.
    pub fn multiplicities(&self) -> &[usize] {
        &self.multiplicities
    }

    /// `j_k`, zero when `k` is beyond the stored range.
    pub fn multiplicity(&self, k: usize) -> usize {
        assert!(k > 0, "part sizes start at 1");
        self.multiplicities.get(k - 1).copied().unwrap_or(0)
    }

    /// The partitioned integer, `sum k * j_k`.
    pub fn total(&self) -> usize {
        self.multiplicities.iter().enumerate().map(|(i, j)| (i + 1) * j).sum()
    }

    pub fn part_count(&self) -> usize {
        self.multiplicities.iter().sum()
    }

    /// Parts in non-increasing order.
    pub fn parts(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.part_count());
        for (i, &j) in self.multiplicities.iter().enumerate().rev() {
            out.extend(std::iter::repeat_n(i + 1, j));
        }
        out
    }

    /// `prod_k k^{j_k} j_k!`, the size of the centralizer of a permutation
    /// with this cycle type.
    pub fn centralizer_order(&self) -> BigInt {
        let mut acc = BigInt::one();
        for (i, &j) in self.multiplicities.iter().enumerate() {
            let k = BigInt::from(i + 1);
            for r in 1..=j {
                acc *= &k;
                acc *= BigInt::from(r);
            }
        }
        acc
    }

    fn padded(&self, len: usize) -> Vec<usize> {
        let mut m = self.multiplicities.clone();
        m.resize(len.max(m.len()), 0);
        m
    }
}

impl fmt::Display for IntegerPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &j) in self.multiplicities.iter().enumerate() {
            if j == 0 {
                continue;
            }
            if !first {
                write!(f, " ")?;
            }
            first = false;
            write!(f, "a{}", i + 1)?;
            if j > 1 {
                write!(f, "^{j}")?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// Every partition of `t` exactly once, ordered lexicographically by the
/// multiplicity vector `(j_1, .., j_t)`.
pub fn partitions(t: usize) -> Vec<IntegerPartition> {
    fn go(remaining: usize, max_part: usize, mult: &mut Vec<usize>, out: &mut Vec<IntegerPartition>) {
        if remaining == 0 {
            out.push(IntegerPartition::from_multiplicities(mult.clone()));
            return;
        }
        for part in (1..=max_part.min(remaining)).rev() {
            mult[part - 1] += 1;
            go(remaining - part, part, mult, out);
            mult[part - 1] -= 1;
        }
    }
    let mut out = Vec::new();
    let mut mult = vec![0; t];
    go(t, t, &mut mult, &mut out);
    out.sort();
    out
}

/// Cycle index of a permutation group of the given degree: a weighted sum of
/// cycle-type monomials.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CycleIndex {
    degree: usize,
    terms: Vec<(IntegerPartition, Rational)>,
}

impl CycleIndex {
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Terms sorted by partition.
    pub fn terms(&self) -> &[(IntegerPartition, Rational)] {
        &self.terms
    }

    pub fn coefficient(&self, p: &IntegerPartition) -> Rational {
        self.terms
            .iter()
            .find(|(q, _)| q == p)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn coefficient_sum(&self) -> Rational {
        self.terms.iter().map(|(_, c)| c).sum()
    }
}

impl fmt::Display for CycleIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (p, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}·{p}")?;
        }
        Ok(())
    }
}

static SYMMETRIC_MEMO: OnceLock<Mutex<Vec<CycleIndex>>> = OnceLock::new();

/// `Z(S_t)` via `Z(S_t) = (1/t) sum_k a_k Z(S_{t-k})`, `Z(S_0) = 1`.
///
/// Lower degrees are memoized process-wide.
pub fn cycle_index_symmetric(t: usize) -> CycleIndex {
    let memo = SYMMETRIC_MEMO.get_or_init(|| {
        Mutex::new(vec![CycleIndex {
            degree: 0,
            terms: vec![(IntegerPartition::from_multiplicities(Vec::new()), Rational::one())],
        }])
    });
    let mut memo = memo.lock().unwrap_or_else(|e| e.into_inner());
    while memo.len() <= t {
        let degree = memo.len();
        let mut acc: BTreeMap<Vec<usize>, Rational> = BTreeMap::new();
        for k in 1..=degree {
            for (p, c) in &memo[degree - k].terms {
                let mut m = p.padded(degree);
                m[k - 1] += 1;
                *acc.entry(m).or_insert_with(Rational::zero) += c;
            }
        }
        let scale = Rational::from_integer(BigInt::from(degree));
        let terms = acc
            .into_iter()
            .map(|(m, c)| (IntegerPartition::from_multiplicities(m), c / &scale))
            .collect();
        memo.push(CycleIndex { degree, terms });
    }
    memo[t].clone()
}

/// `Z(base(x), base(x^2), base(x^3), ..)`: replaces each `a_k` by
/// `base(x^k)` and sums the weighted products. Factors with `j_k = 0` are
/// skipped.
pub fn substitute_series(z: &CycleIndex, base: &TruncatedSeries) -> TruncatedSeries {
    let order = base.order();
    let mut total = TruncatedSeries::zero(order);
    for (p, c) in &z.terms {
        let mut product = TruncatedSeries::one(order);
        for (i, &j) in p.multiplicities().iter().enumerate() {
            if j == 0 {
                continue;
            }
            let factor = power(&power_substitute(base, i + 1), j);
            product = multiply(&product, &factor).expect("orders agree by construction");
        }
        total = total.add(&product.scale(c)).expect("orders agree by construction");
    }
    total
}
