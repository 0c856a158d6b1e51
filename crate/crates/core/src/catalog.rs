//! Canonical representations of games with minimum and their direct
//! enumeration.
//!
//! A representation `(n̄, m̄)` is proper when
//!
//! - (a) class sizes are positive and non-increasing,
//! - (b) `0 <= m_i <= n_i`,
//! - (c) `m̄` is lexicographically maximal among all column permutations
//!   that fix `n̄`, which for a single minimal winning vector means the
//!   `m_i` are non-increasing inside every block of equal class sizes,
//!
//! and, since equi-desirable players share a class, at most one class is
//! null (`m_i = 0`), at most one is veto (`m_i = n_i`), and `m̄ ≠ 0̄`.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::games::GameSpec;
use crate::Allow;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Violation {
    LengthMismatch { classes: usize, minwin: usize },
    NoClasses,
    EmptyClass { index: usize },
    MinwinOutOfRange { index: usize, minwin: usize, size: usize },
    EmptyCoalitionWins,
    /// (a): `n_index < n_{index+1}`.
    ClassSizesNotSorted { index: usize },
    /// (c): equal class sizes at `index`, `index+1` with increasing `m`.
    BlockNotMaximal { index: usize },
    MultipleNullClasses { indices: Vec<usize> },
    MultipleVetoClasses { indices: Vec<usize> },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::LengthMismatch { classes, minwin } => {
                write!(f, "{classes} class sizes but {minwin} minimum entries")
            }
            Violation::NoClasses => write!(f, "no classes"),
            Violation::EmptyClass { index } => write!(f, "class {index} is empty"),
            Violation::MinwinOutOfRange { index, minwin, size } => {
                write!(f, "(b) minimum {minwin} exceeds size {size} of class {index}")
            }
            Violation::EmptyCoalitionWins => write!(f, "all minima are zero, so the empty coalition wins"),
            Violation::ClassSizesNotSorted { index } => {
                write!(f, "(a) class sizes increase between classes {index} and {}", index + 1)
            }
            Violation::BlockNotMaximal { index } => {
                write!(f, "(c) minima increase inside an equal-size block at classes {index} and {}", index + 1)
            }
            Violation::MultipleNullClasses { indices } => write!(f, "null classes {indices:?} would merge"),
            Violation::MultipleVetoClasses { indices } => write!(f, "veto classes {indices:?} would merge"),
        }
    }
}

fn merge_violations(spec: &GameSpec) -> Vec<Violation> {
    let nulls: Vec<usize> = (0..spec.classes.len()).filter(|&i| spec.minwin[i] == 0).collect();
    let vetoes: Vec<usize> = (0..spec.classes.len()).filter(|&i| spec.minwin[i] == spec.classes[i]).collect();
    let mut out = Vec::new();
    if nulls.len() > 1 {
        out.push(Violation::MultipleNullClasses { indices: nulls });
    }
    if vetoes.len() > 1 {
        out.push(Violation::MultipleVetoClasses { indices: vetoes });
    }
    out
}

/// Checks every condition and reports each violation found.
pub fn is_proper(spec: &GameSpec) -> std::result::Result<(), Vec<Violation>> {
    let mut out = spec.basic_violations();
    if matches!(out.first(), Some(Violation::LengthMismatch { .. } | Violation::NoClasses)) {
        return Err(out);
    }
    for i in 0..spec.classes.len().saturating_sub(1) {
        if spec.classes[i] < spec.classes[i + 1] {
            out.push(Violation::ClassSizesNotSorted { index: i });
        }
        if spec.classes[i] == spec.classes[i + 1] && spec.minwin[i] < spec.minwin[i + 1] {
            out.push(Violation::BlockNotMaximal { index: i });
        }
    }
    out.extend(merge_violations(spec));
    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

/// A representation that satisfies every properness condition.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
#[serde(transparent)]
pub struct ProperRepresentation(GameSpec);

impl ProperRepresentation {
    pub fn new(spec: GameSpec) -> Result<Self> {
        is_proper(&spec).map_err(Error::InvalidSpec)?;
        Ok(ProperRepresentation(spec))
    }

    pub fn spec(&self) -> &GameSpec {
        &self.0
    }

    pub fn into_spec(self) -> GameSpec {
        self.0
    }

    pub fn classes(&self) -> &[usize] {
        &self.0.classes
    }

    pub fn minwin(&self) -> &[usize] {
        &self.0.minwin
    }

    pub fn player_count(&self) -> usize {
        self.0.player_count()
    }

    pub fn class_count(&self) -> usize {
        self.0.class_count()
    }

    pub fn null_class(&self) -> Option<usize> {
        (0..self.class_count()).find(|&i| self.minwin()[i] == 0)
    }

    pub fn veto_class(&self) -> Option<usize> {
        (0..self.class_count()).find(|&i| self.minwin()[i] == self.classes()[i])
    }
}

/// Sorts the class columns by `(n_i, m_i)` in non-increasing order.
pub fn canonicalize(spec: &GameSpec) -> Result<ProperRepresentation> {
    let mut v = spec.basic_violations();
    if v.is_empty() {
        v = merge_violations(spec);
    }
    if !v.is_empty() {
        return Err(Error::InvalidSpec(v));
    }
    let mut cols: Vec<(usize, usize)> = spec.classes.iter().copied().zip(spec.minwin.iter().copied()).collect();
    cols.sort_unstable_by(|a, b| b.cmp(a));
    let (classes, minwin) = cols.into_iter().unzip();
    ProperRepresentation::new(GameSpec { classes, minwin })
}

/// Partitions of `n` into exactly `t` positive parts, each non-increasing,
/// in reverse lexicographic order.
pub fn class_size_partitions(n: usize, t: usize) -> Vec<Vec<usize>> {
    fn go(remaining: usize, slots: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if slots == 0 {
            if remaining == 0 {
                out.push(cur.clone());
            }
            return;
        }
        if remaining < slots {
            return;
        }
        let hi = max.min(remaining - (slots - 1));
        let lo = remaining.div_ceil(slots);
        for part in (lo..=hi).rev() {
            cur.push(part);
            go(remaining - part, slots - 1, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if t == 0 {
        if n == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    go(n, t, n, &mut Vec::with_capacity(t), &mut out);
    out
}

fn minima_for(classes: &[usize], allow: Allow, out: &mut Vec<ProperRepresentation>) {
    struct Walk<'a> {
        classes: &'a [usize],
        allow: Allow,
        cur: Vec<usize>,
    }
    impl Walk<'_> {
        fn go(&mut self, i: usize, null_used: bool, veto_used: bool, out: &mut Vec<ProperRepresentation>) {
            let t = self.classes.len();
            if i == t {
                if self.cur.iter().any(|&m| m > 0) {
                    let spec = GameSpec { classes: self.classes.to_vec(), minwin: self.cur.clone() };
                    out.push(ProperRepresentation(spec));
                }
                return;
            }
            let n = self.classes[i];
            let mut hi = n;
            if i > 0 && self.classes[i - 1] == n {
                hi = hi.min(self.cur[i - 1]);
            }
            for m in (0..=hi).rev() {
                let is_null = m == 0;
                let is_veto = m == n;
                if (is_null && (!self.allow.null || null_used)) || (is_veto && (!self.allow.veto || veto_used)) {
                    continue;
                }
                self.cur.push(m);
                self.go(i + 1, null_used || is_null, veto_used || is_veto, out);
                self.cur.pop();
            }
        }
    }
    let mut walk = Walk { classes, allow, cur: Vec::with_capacity(classes.len()) };
    walk.go(0, false, false, out);
}

/// Every proper representation with `n` players and `t` classes whose
/// null and veto classes are permitted by `allow`, without duplicates:
/// class-size partitions in reverse lexicographic order, then minima in
/// reverse lexicographic order.
pub fn enumerate_proper(n: usize, t: usize, allow: Allow) -> Vec<ProperRepresentation> {
    class_size_partitions(n, t)
        .par_iter()
        .map(|classes| {
            let mut reps = Vec::new();
            minima_for(classes, allow, &mut reps);
            reps
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(c: &[usize], m: &[usize]) -> GameSpec {
        GameSpec { classes: c.to_vec(), minwin: m.to_vec() }
    }

    #[test]
    fn properness_reports_each_condition() {
        assert_eq!(
            is_proper(&spec(&[3, 4, 4], &[1, 2, 2])),
            Err(vec![Violation::ClassSizesNotSorted { index: 0 }])
        );
        assert_eq!(is_proper(&spec(&[4, 4], &[1, 2])), Err(vec![Violation::BlockNotMaximal { index: 0 }]));
        assert_eq!(is_proper(&spec(&[5, 2, 2], &[4, 1, 1])), Ok(()));
        assert_eq!(
            is_proper(&spec(&[2, 2], &[2, 2])),
            Err(vec![Violation::MultipleVetoClasses { indices: vec![0, 1] }])
        );
        assert_eq!(
            is_proper(&spec(&[3, 2, 1], &[2, 0, 0])),
            Err(vec![Violation::MultipleNullClasses { indices: vec![1, 2] }])
        );
        let errs = is_proper(&spec(&[1, 2], &[2, 0])).unwrap_err();
        assert!(errs.contains(&Violation::ClassSizesNotSorted { index: 0 }));
        assert!(errs.contains(&Violation::MinwinOutOfRange { index: 0, minwin: 2, size: 1 }));
        assert_eq!(is_proper(&spec(&[2], &[0])), Err(vec![Violation::EmptyCoalitionWins]));
    }

    #[test]
    fn canonical_forms() {
        let c = canonicalize(&spec(&[3, 4, 4], &[1, 2, 2])).unwrap();
        assert_eq!(c.spec(), &spec(&[4, 4, 3], &[2, 2, 1]));
        let a = canonicalize(&spec(&[2, 3, 4, 3], &[1, 1, 2, 1])).unwrap();
        let b = canonicalize(&spec(&[2, 3, 3, 4], &[1, 1, 1, 2])).unwrap();
        assert_eq!(a, b);
        assert_eq!(canonicalize(a.spec()).unwrap(), a);
        assert!(matches!(canonicalize(&spec(&[2, 2], &[2, 2])), Err(Error::InvalidSpec(_))));
    }

    #[test]
    fn partitions_into_t_parts() {
        assert_eq!(class_size_partitions(9, 3).len(), 7);
        assert_eq!(class_size_partitions(9, 3)[0], vec![7, 1, 1]);
        assert_eq!(class_size_partitions(9, 3)[6], vec![3, 3, 3]);
        assert_eq!(class_size_partitions(3, 4), Vec::<Vec<usize>>::new());
        assert_eq!(class_size_partitions(0, 0), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn nine_players_three_classes() {
        let reps = enumerate_proper(9, 3, Allow::NONE);
        assert_eq!(reps.len(), 14);
        assert_eq!(reps[0].spec(), &spec(&[5, 2, 2], &[4, 1, 1]));
        for r in &reps {
            assert!(r.minwin().iter().zip(r.classes()).all(|(&m, &n)| 1 <= m && m < n));
        }
    }

    #[test]
    fn small_listings() {
        assert_eq!(enumerate_proper(4, 2, Allow::ALL).len(), 10);
        let three: Vec<GameSpec> = enumerate_proper(3, 2, Allow::ALL).into_iter().map(|r| r.into_spec()).collect();
        let mut got = three.clone();
        got.sort();
        let mut want = vec![spec(&[2, 1], &[1, 0]), spec(&[2, 1], &[0, 1]), spec(&[2, 1], &[2, 0]), spec(&[2, 1], &[1, 1])];
        want.sort();
        assert_eq!(got, want);
        assert_eq!(
            enumerate_proper(2, 2, Allow::ALL).into_iter().map(|r| r.into_spec()).collect::<Vec<_>>(),
            vec![spec(&[1, 1], &[1, 0])]
        );
        assert!(enumerate_proper(3, 2, Allow::NONE).is_empty());
    }

    #[test]
    fn enumeration_is_sorted_and_proper() {
        for allow in Allow::combinations() {
            let reps = enumerate_proper(10, 4, allow);
            for w in reps.windows(2) {
                let key = |r: &ProperRepresentation| (r.classes().to_vec(), r.minwin().to_vec());
                assert!(key(&w[0]) > key(&w[1]));
            }
            for r in &reps {
                assert_eq!(is_proper(r.spec()), Ok(()));
                assert!(allow.null || r.null_class().is_none());
                assert!(allow.veto || r.veto_class().is_none());
            }
        }
    }
}
