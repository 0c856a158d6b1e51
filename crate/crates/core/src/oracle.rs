//! Brute-force recomputation of the counts at desk scale.
//!
//! Nothing here relies on the counting formulas or on the catalog's sorting
//! rule: labeled counts walk every composition and every minimum vector,
//! the naive proper count compares against every class-size-preserving
//! column permutation, and the isomorphism oracle builds the winning
//! coalitions of each game and minimizes over all player permutations.

use std::collections::{BTreeMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::enumerate_proper;
use crate::counting::{
    count_all, count_nnnv_convolution, count_with_flags, labeled_count_nnnv, max_classes,
    rational_generating_function, total_all, Count, Method,
};
use crate::error::{Error, Result};
use crate::games::{GameSpec, DEFAULT_BRUTE_BOUND};
use crate::series::expand_rational;
use crate::Allow;

/// Largest player count the isomorphism oracle supports (coalition
/// families are 128-bit sets).
pub const ISOMORPHISM_MAX_N: usize = 7;

/// Capacity limits for every exhaustive loop.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub labeled_max_n: usize,
    pub labeled_max_t: usize,
    /// Bound on `n` for the permutation-based proper count.
    pub brute_bound: usize,
    pub naive_max_t: usize,
    pub isomorphism_max_n: usize,
    /// Bound on `n` for direct enumeration inside [`cross_check`].
    pub enumerate_max_n: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            labeled_max_n: 30,
            labeled_max_t: 8,
            brute_bound: DEFAULT_BRUTE_BOUND,
            naive_max_t: 8,
            isomorphism_max_n: ISOMORPHISM_MAX_N,
            enumerate_max_n: 25,
        }
    }
}

impl Limits {
    pub fn with_brute_bound(mut self, bound: usize) -> Self {
        self.brute_bound = bound;
        self
    }
}

fn capacity(what: &'static str, size: usize, bound: usize) -> Result<()> {
    if size > bound {
        return Err(Error::Capacity { what, size, bound });
    }
    Ok(())
}

/// Ordered compositions of `n` into `t` positive parts.
fn compositions(n: usize, t: usize) -> Vec<Vec<usize>> {
    fn go(remaining: usize, slots: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if slots == 0 {
            if remaining == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for part in 1..=remaining {
            cur.push(part);
            go(remaining - part, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, t, &mut Vec::new(), &mut out);
    out
}

/// Every vector with `lo[i] <= v[i] <= hi[i]`, visited in lexicographic order.
fn for_each_box(lo: &[usize], hi: &[usize], mut f: impl FnMut(&[usize])) {
    if lo.iter().zip(hi).any(|(l, h)| l > h) {
        return;
    }
    let mut v = lo.to_vec();
    loop {
        f(&v);
        let mut i = v.len();
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if v[i] < hi[i] {
                v[i] += 1;
                break;
            }
            v[i] = lo[i];
        }
    }
}

/// Number of `(n̄, m̄)` with `n̄` a composition of `n` into `t` parts and
/// `1 <= m_i <= n_i - 1`, counted one solution at a time.
pub fn oracle_labeled(n: usize, t: usize, limits: &Limits) -> Result<Count> {
    capacity("labeled oracle n", n, limits.labeled_max_n)?;
    capacity("labeled oracle t", t, limits.labeled_max_t)?;
    let mut total = 0u64;
    for parts in compositions(n, t) {
        let lo = vec![1; t];
        let hi: Vec<usize> = parts.iter().map(|p| p.saturating_sub(1)).collect();
        if hi.contains(&0) {
            continue;
        }
        for_each_box(&lo, &hi, |_| total += 1);
    }
    Ok(Count::from(total))
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn go(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for x in 0..used.len() {
            if !used[x] {
                used[x] = true;
                cur.push(x);
                go(cur, used, out);
                cur.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::with_capacity(k), &mut vec![false; k], &mut out);
    out
}

/// Proper representations found by literal comparison against every
/// permutation of the class columns that fixes `n̄`.
pub fn oracle_proper_naive_list(n: usize, t: usize, allow: Allow, limits: &Limits) -> Result<Vec<GameSpec>> {
    capacity("naive proper oracle n", n, limits.brute_bound)?;
    capacity("naive proper oracle t", t, limits.naive_max_t)?;
    let perms = permutations(t);
    let mut out = Vec::new();
    for classes in compositions(n, t) {
        if classes.windows(2).any(|w| w[0] < w[1]) {
            continue;
        }
        let stabilizer: Vec<&Vec<usize>> =
            perms.iter().filter(|p| p.iter().enumerate().all(|(k, &src)| classes[src] == classes[k])).collect();
        for_each_box(&vec![0; t], &classes, |m| {
            let nulls = m.iter().filter(|&&x| x == 0).count();
            let vetoes = m.iter().zip(&classes).filter(|(x, c)| x == c).count();
            if nulls == t || nulls > 1 || vetoes > 1 {
                return;
            }
            if (nulls > 0 && !allow.null) || (vetoes > 0 && !allow.veto) {
                return;
            }
            let maximal = stabilizer.iter().all(|p| {
                let permuted: Vec<usize> = p.iter().map(|&src| m[src]).collect();
                m >= permuted.as_slice()
            });
            if maximal {
                out.push(GameSpec { classes: classes.clone(), minwin: m.to_vec() });
            }
        });
    }
    Ok(out)
}

pub fn oracle_proper_naive(n: usize, t: usize, allow: Allow, limits: &Limits) -> Result<Count> {
    oracle_proper_naive_list(n, t, allow, limits).map(|v| Count::from(v.len() as u64))
}

/// `table[p][mask]`: the image of coalition `mask` under player permutation
/// `p`.
fn permutation_tables(n: usize) -> Vec<Vec<u8>> {
    permutations(n)
        .into_iter()
        .map(|p| {
            (0..1usize << n)
                .map(|mask| {
                    (0..n).filter(|&i| mask >> i & 1 == 1).fold(0u8, |acc, i| acc | 1 << p[i])
                })
                .collect()
        })
        .collect()
}

fn apply(table: &[u8], mut family: u128) -> u128 {
    let mut out = 0u128;
    while family != 0 {
        let s = family.trailing_zeros();
        family &= family - 1;
        out |= 1u128 << table[s as usize];
    }
    out
}

fn wins(family: u128, mask: usize) -> bool {
    family >> mask & 1 == 1
}

/// Isbell: `a ≿ b` iff swapping `b` out for `a` keeps every winning
/// coalition that contains `b` winning.
fn desirable(family: u128, n: usize, a: usize, b: usize) -> bool {
    (0..1usize << n)
        .filter(|&s| s >> b & 1 == 1 && wins(family, s))
        .all(|s| s >> a & 1 == 1 || wins(family, s ^ (1 << b) ^ (1 << a)))
}

fn class_count(family: u128, n: usize) -> usize {
    let mut reps: Vec<usize> = Vec::new();
    for p in 0..n {
        if !reps.iter().any(|&r| desirable(family, n, r, p) && desirable(family, n, p, r)) {
            reps.push(p);
        }
    }
    reps.len()
}

/// Non-isomorphic games with a unique minimal winning vector on `n`
/// players, grouped by their true number of equi-desirability classes.
///
/// Every ordered class-size vector and every non-zero minimum vector yields
/// a labeled game; games are identified up to player permutation by the
/// lexicographically smallest image of their winning family.
pub fn oracle_isomorphism_count(n: usize, limits: &Limits) -> Result<BTreeMap<usize, Count>> {
    capacity("isomorphism oracle n", n, limits.isomorphism_max_n.min(ISOMORPHISM_MAX_N))?;
    let mut families: HashSet<u128> = HashSet::new();
    for t in 1..=n {
        for classes in compositions(n, t) {
            let mut class_masks = vec![0usize; t];
            let mut next = 0;
            for (c, &size) in classes.iter().enumerate() {
                for _ in 0..size {
                    class_masks[c] |= 1 << next;
                    next += 1;
                }
            }
            for_each_box(&vec![0; t], &classes, |m| {
                if m.iter().all(|&x| x == 0) {
                    return;
                }
                let family = (0..1usize << n)
                    .filter(|&s| class_masks.iter().zip(m).all(|(cm, &k)| (s & cm).count_ones() as usize >= k))
                    .fold(0u128, |f, s| f | 1u128 << s);
                families.insert(family);
            });
        }
    }
    let tables = permutation_tables(n);
    let canonical: HashSet<u128> = families
        .into_par_iter()
        .map(|f| tables.iter().map(|t| apply(t, f)).min().expect("at least the identity"))
        .collect();
    let mut by_t: BTreeMap<usize, u64> = BTreeMap::new();
    for f in canonical {
        *by_t.entry(class_count(f, n)).or_default() += 1;
    }
    Ok(by_t.into_iter().map(|(t, c)| (t, Count::from(c))).collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckEntry {
    pub check: String,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub flags: Option<String>,
    pub values: BTreeMap<String, Count>,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CrossCheckReport {
    pub max_n: usize,
    pub success: bool,
    pub entries: Vec<CheckEntry>,
}

impl CrossCheckReport {
    pub fn failures(&self) -> impl Iterator<Item = &CheckEntry> {
        self.entries.iter().filter(|e| !e.pass)
    }
}

fn flag_name(allow: Allow) -> String {
    match (allow.null, allow.veto) {
        (false, false) => "none",
        (true, false) => "null",
        (false, true) => "veto",
        (true, true) => "all",
    }
    .to_string()
}

fn entry(check: &str, n: usize, t: Option<usize>, flags: Option<String>, values: Vec<(&str, Result<Count>)>) -> CheckEntry {
    let mut map = BTreeMap::new();
    let mut pass = true;
    for (name, v) in values {
        match v {
            Ok(c) => {
                map.insert(name.to_string(), c);
            }
            Err(_) => pass = false,
        }
    }
    let mut distinct = map.values();
    if let Some(first) = distinct.next() {
        pass &= distinct.all(|v| v == first);
    }
    CheckEntry { check: check.to_string(), n, t, flags, values: map, pass }
}

/// Runs every oracle-versus-formula comparison for `1 <= n <= max_n`
/// within `limits`.
pub fn cross_check(max_n: usize, limits: &Limits) -> CrossCheckReport {
    let mut entries = Vec::new();

    for n in 1..=max_n.min(14).min(limits.labeled_max_n) {
        for t in 1..=6.min(limits.labeled_max_t) {
            entries.push(entry(
                "labeled",
                n,
                Some(t),
                None,
                vec![("binomial", Ok(labeled_count_nnnv(n, t))), ("oracle", oracle_labeled(n, t, limits))],
            ));
        }
    }

    for n in 1..=max_n {
        for t in 1..=max_classes(n, true) {
            for allow in Allow::combinations() {
                let mut values = vec![
                    ("polya", count_with_flags(n, t, allow, Method::Polya)),
                    ("recursive", count_with_flags(n, t, allow, Method::Recursive)),
                ];
                if allow == Allow::NONE {
                    values.push(("convolution", count_nnnv_convolution(n, t)));
                }
                if n <= limits.enumerate_max_n {
                    values.push(("enumerate", Ok(Count::from(enumerate_proper(n, t, allow).len() as u64))));
                }
                if n <= limits.brute_bound && t <= limits.naive_max_t {
                    values.push(("naive", oracle_proper_naive(n, t, allow, limits)));
                }
                entries.push(entry("counts", n, Some(t), Some(flag_name(allow)), values));
            }
        }
    }

    for t in 1..=4 {
        let (num, den) = rational_generating_function(t).expect("closed forms exist for t <= 4");
        let series = expand_rational(&num, &den, max_n);
        for n in 1..=max_n {
            let c = series.coeff(n);
            let gf = if c.is_integer() && c.numer().sign() != num_bigint::Sign::Minus {
                Ok(Count::from(c.to_integer().to_biguint().expect("non-negative")))
            } else {
                Err(Error::NotIntegral(c.to_string()))
            };
            entries.push(entry("gf", n, Some(t), None, vec![("rational", gf), ("count_all", Ok(count_all(n, t)))]));
        }
    }

    for n in 1..=max_n.min(limits.isomorphism_max_n).min(ISOMORPHISM_MAX_N) {
        match oracle_isomorphism_count(n, limits) {
            Ok(by_t) => {
                for t in 1..=max_classes(n, true).max(by_t.keys().copied().max().unwrap_or(0)) {
                    let oracle = by_t.get(&t).cloned().unwrap_or_default();
                    entries.push(entry(
                        "isomorphism",
                        n,
                        Some(t),
                        None,
                        vec![("oracle", Ok(oracle)), ("count_all", Ok(count_all(n, t)))],
                    ));
                }
                let total: Count = by_t.values().cloned().sum();
                entries.push(entry("isomorphism", n, None, None, vec![("oracle", Ok(total)), ("total_all", Ok(total_all(n)))]));
            }
            Err(e) => entries.push(entry("isomorphism", n, None, None, vec![("oracle", Err(e))])),
        }
    }

    let success = entries.iter().all(|e| e.pass);
    CrossCheckReport { max_n, success, entries }
}
