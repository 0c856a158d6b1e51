//! Closed-form and recursive counts of games with minimum.
//!
//! Notation: `nnnv(n, t)` is the number of non-isomorphic games with `n`
//! players, `t` equi-desirability classes, one minimal winning vector and
//! neither null nor veto players. Games that may contain null or veto
//! players are built from these by attaching at most one null class and at
//! most one veto class.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::polya::{cycle_index_symmetric, partitions, substitute_series};
use crate::series::{make_g, TruncatedSeries};
use crate::Allow;

/// A non-negative exact count.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Count(BigUint);

impl Count {
    pub fn zero() -> Self {
        Count(BigUint::zero())
    }

    pub fn value(&self) -> &BigUint {
        &self.0
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl From<u64> for Count {
    fn from(v: u64) -> Self {
        Count(BigUint::from(v))
    }
}

impl From<BigUint> for Count {
    fn from(v: BigUint) -> Self {
        Count(v)
    }
}

impl PartialEq<u64> for Count {
    fn eq(&self, other: &u64) -> bool {
        self.to_u64() == Some(*other)
    }
}

impl fmt::Display for Count {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl std::iter::Sum for Count {
    fn sum<I: Iterator<Item = Count>>(iter: I) -> Self {
        Count(iter.map(|c| c.0).sum())
    }
}

// Plain JSON numbers whenever the value fits; decimal strings beyond u64.
impl Serialize for Count {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.to_u64() {
            Some(v) => s.serialize_u64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

/// `C(n, k)` with the combinatorial convention that it vanishes for
/// `k < 0`, `n < 0` or `k > n`.
pub fn binomial(n: i64, k: i64) -> BigUint {
    if n < 0 || k < 0 || k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k) as u64;
    let n = n as u64;
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Which route evaluates `nnnv(n, t)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Method {
    /// Coefficient extraction from `Z(S_t)` evaluated at `g(x), g(x^2), ..`.
    Polya,
    /// The `(1/t) sum_l sum_k` recursion in `n` and `t`.
    Recursive,
}

/// Largest possible number of classes for `n` players: `floor(n/2)` without
/// null or veto players, one more when both kinds are allowed.
pub fn max_classes(n: usize, allow_null_veto: bool) -> usize {
    if allow_null_veto {
        n / 2 + 1
    } else {
        n / 2
    }
}

/// Labeled count without null or veto players: `C(n-1, 2t-1)`.
pub fn labeled_count_nnnv(n: usize, t: usize) -> Count {
    Count(binomial(n as i64 - 1, 2 * t as i64 - 1))
}

fn integral(value: BigRational, context: impl FnOnce() -> String) -> Result<BigUint> {
    if !value.is_integer() || value.is_negative() {
        return Err(Error::NotIntegral(format!("{value} for {}", context())));
    }
    Ok(value.to_integer().to_biguint().expect("checked non-negative"))
}

static POLYA_MEMO: OnceLock<Mutex<HashMap<usize, TruncatedSeries>>> = OnceLock::new();

/// `f(x; t)` truncated at some order `>= n`, memoized per `t`.
fn polya_series(t: usize, n: usize) -> TruncatedSeries {
    let memo = POLYA_MEMO.get_or_init(|| Mutex::new(HashMap::new()));
    let mut memo = memo.lock().unwrap_or_else(|e| e.into_inner());
    if let Some(s) = memo.get(&t) {
        if s.order() >= n {
            return s.clone();
        }
    }
    let cached = memo.get(&t).map_or(0, |s| s.order());
    let order = n.max(2 * cached).max(32);
    let s = substitute_series(&cycle_index_symmetric(t), &make_g(order));
    memo.insert(t, s.clone());
    s
}

pub fn count_nnnv_polya(n: usize, t: usize) -> Result<Count> {
    let series = polya_series(t, n);
    let c = series.coeff(n).clone();
    integral(c, || format!("nnnv({n},{t}) via cycle index")).map(Count)
}

static RECURSIVE_MEMO: OnceLock<Mutex<HashMap<(usize, usize), BigUint>>> = OnceLock::new();

fn recursive_cell(memo: &mut HashMap<(usize, usize), BigUint>, n: usize, t: usize) -> Result<BigUint> {
    if t == 0 {
        return Ok(if n == 0 { BigUint::one() } else { BigUint::zero() });
    }
    if let Some(v) = memo.get(&(n, t)) {
        return Ok(v.clone());
    }
    let mut sum = BigUint::zero();
    for l in 1..=t {
        for k in (l..=n).step_by(l) {
            let weight = k / l - 1;
            if weight == 0 {
                continue;
            }
            let below = recursive_cell(memo, n - k, t - l)?;
            sum += below * weight;
        }
    }
    let (q, r) = sum.div_rem(&BigUint::from(t));
    if !r.is_zero() {
        return Err(Error::NotIntegral(format!("{sum}/{t} for nnnv({n},{t}) via recursion")));
    }
    memo.insert((n, t), q.clone());
    Ok(q)
}

pub fn count_nnnv_recursive(n: usize, t: usize) -> Result<Count> {
    let memo = RECURSIVE_MEMO.get_or_init(|| Mutex::new(HashMap::new()));
    let mut memo = memo.lock().unwrap_or_else(|e| e.into_inner());
    recursive_cell(&mut memo, n, t).map(Count)
}

/// The convolution form of the Pólya count: for each partition of `t`,
/// convolve the binomial sequences `C((m/k - 1) [k | m], 2 j_k - 1)` over
/// the cycle lengths `k` present, weight by `1 / prod k^{j_k} j_k!`, and
/// read off position `n`. Uses no series arithmetic.
pub fn count_nnnv_convolution(n: usize, t: usize) -> Result<Count> {
    let mut total = BigRational::zero();
    for p in partitions(t) {
        let mut conv: Vec<BigInt> = vec![BigInt::zero(); n + 1];
        conv[0] = BigInt::one();
        for k in 1..=t {
            let j = p.multiplicity(k);
            if j == 0 {
                continue;
            }
            let seq: Vec<BigInt> = (0..=n)
                .map(|m| {
                    let top = if m % k == 0 { (m / k) as i64 - 1 } else { 0 };
                    BigInt::from(binomial(top, 2 * j as i64 - 1))
                })
                .collect();
            let mut next = vec![BigInt::zero(); n + 1];
            for (a, ca) in conv.iter().enumerate() {
                if ca.is_zero() {
                    continue;
                }
                for (b, cb) in seq[..=n - a].iter().enumerate() {
                    next[a + b] += ca * cb;
                }
            }
            conv = next;
        }
        total += BigRational::new(conv[n].clone(), p.centralizer_order());
    }
    integral(total, || format!("nnnv({n},{t}) via convolution")).map(Count)
}

pub fn count_nnnv(n: usize, t: usize, method: Method) -> Result<Count> {
    match method {
        Method::Polya => count_nnnv_polya(n, t),
        Method::Recursive => count_nnnv_recursive(n, t),
    }
}

fn nnnv_big(n: usize, t: usize, method: Method) -> Result<BigUint> {
    count_nnnv(n, t, method).map(|c| c.0)
}

/// `SG(n, t)`: all games with minimum, null and veto players allowed,
/// composed from `nnnv` values evaluated by `method`.
pub fn count_all_with(n: usize, t: usize, method: Method) -> Result<Count> {
    if n == 0 || t == 0 || t > max_classes(n, true) {
        return Ok(Count::zero());
    }
    if t == 1 {
        return Ok(Count(BigUint::from(n)));
    }
    let mut total = nnnv_big(n, t, method)?;
    let mut one_side = BigUint::zero();
    for i in 1..=n.saturating_sub(2) {
        one_side += nnnv_big(n - i, t - 1, method)?;
    }
    total += one_side * 2u32;
    if t == 2 {
        total += BigUint::from(n - 1);
    } else {
        for i in 2..=n.saturating_sub(2) {
            total += nnnv_big(n - i, t - 2, method)? * (i - 1);
        }
    }
    Ok(Count(total))
}

/// `SG(n, t)` evaluated through the memoized recursion.
pub fn count_all(n: usize, t: usize) -> Count {
    count_all_with(n, t, Method::Recursive).expect("recursive counts are integral")
}

/// Counts for any combination of allowed player kinds. With both kinds
/// allowed this is [`count_all_with`]; otherwise the single-kind
/// compositions are used: a null class needs at least one other class,
/// while a veto class may stand alone (the unanimity game).
pub fn count_with_flags(n: usize, t: usize, allow: Allow, method: Method) -> Result<Count> {
    if allow.null && allow.veto {
        return count_all_with(n, t, method);
    }
    if n == 0 || t == 0 {
        return Ok(Count::zero());
    }
    let mut total = nnnv_big(n, t, method)?;
    let attach_one = allow.veto || (allow.null && t >= 2);
    if attach_one {
        for i in 1..=n {
            total += nnnv_big(n - i, t - 1, method)?;
        }
    }
    Ok(Count(total))
}

/// `(numerator coefficients, (k, e) denominator factors)`.
pub type RationalForm = (Vec<i64>, Vec<(usize, usize)>);

/// Closed rational form `numerator / prod (1 - x^k)^e` of `sum_n SG(n, t) x^n`
/// for `t <= 4`, as (numerator coefficients, `(k, e)` factors).
pub fn rational_generating_function(t: usize) -> Option<RationalForm> {
    let shifted = |shift: usize, poly: &[i64]| -> Vec<i64> {
        let mut v = vec![0; shift];
        v.extend_from_slice(poly);
        v
    };
    match t {
        1 => Some((vec![0, 1], vec![(1, 2)])),
        2 => Some((shifted(2, &[1, 2, 1, -2]), vec![(1, 2), (2, 2)])),
        3 => Some((shifted(4, &[1, 4, 4, 2, -3, 0, -2]), vec![(1, 2), (2, 2), (3, 2)])),
        4 => Some((
            shifted(6, &[1, 4, 7, 8, 11, 6, 3, -2, -7, -6, 0, -2, 1]),
            vec![(1, 2), (2, 2), (3, 2), (4, 2)],
        )),
        _ => None,
    }
}

/// `sum_t SG(n, t)` over `1 <= t <= floor(n/2) + 1`.
pub fn total_all(n: usize) -> Count {
    (1..=max_classes(n, true)).map(|t| count_all(n, t)).sum()
}

/// `sum_t nnnv(n, t)` over `1 <= t <= floor(n/2)`.
pub fn total_nnnv(n: usize) -> Count {
    (1..=max_classes(n, false))
        .map(|t| count_nnnv_recursive(n, t).expect("recursive counts are integral"))
        .sum()
}
