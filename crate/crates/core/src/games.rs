//! Explicit realizations of games with minimum.
//!
//! A [`GameSpec`] `(n̄, m̄)` describes the game in which a coalition wins
//! iff it contains at least `m_i` players of every class `i`. An
//! [`ExplicitGame`] assigns concrete players to the classes so that
//! coalition-level notions (desirability, equi-desirability, intersections
//! of weighted games) can be checked exhaustively.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::catalog::Violation;
use crate::error::{Error, Result};

/// Upper bound on the player count for loops over all `2^n` coalitions.
pub const DEFAULT_BRUTE_BOUND: usize = 16;

/// Hard ceiling imposed by the 64-bit coalition masks.
const MASK_LIMIT: usize = 63;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct GameSpec {
    pub classes: Vec<usize>,
    pub minwin: Vec<usize>,
}

impl GameSpec {
    /// Builds a spec and checks that it describes a simple game.
    pub fn new(classes: Vec<usize>, minwin: Vec<usize>) -> Result<Self> {
        let spec = GameSpec { classes, minwin };
        spec.check()?;
        Ok(spec)
    }

    pub fn player_count(&self) -> usize {
        self.classes.iter().sum()
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// Violations that make `(n̄, m̄)` fail to describe any simple game.
    pub fn basic_violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.classes.len() != self.minwin.len() {
            out.push(Violation::LengthMismatch { classes: self.classes.len(), minwin: self.minwin.len() });
            return out;
        }
        if self.classes.is_empty() {
            out.push(Violation::NoClasses);
            return out;
        }
        for (i, (&n, &m)) in self.classes.iter().zip(&self.minwin).enumerate() {
            if n == 0 {
                out.push(Violation::EmptyClass { index: i });
            }
            if m > n {
                out.push(Violation::MinwinOutOfRange { index: i, minwin: m, size: n });
            }
        }
        if self.minwin.iter().all(|&m| m == 0) {
            out.push(Violation::EmptyCoalitionWins);
        }
        out
    }

    pub fn check(&self) -> Result<()> {
        let v = self.basic_violations();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidSpec(v))
        }
    }
}

/// Per-class member counts `(|S ∩ N_1|, .., |S ∩ N_t|)` of a coalition.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CoalitionVector(pub Vec<usize>);

impl CoalitionVector {
    pub fn entries(&self) -> &[usize] {
        &self.0
    }
}

/// All vectors `0 <= s <= bounds` componentwise, in lexicographic order.
pub fn lattice(bounds: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    let mut next = Some(vec![0; bounds.len()]);
    std::iter::from_fn(move || {
        let current = next.take()?;
        let mut succ = current.clone();
        for i in (0..bounds.len()).rev() {
            if succ[i] < bounds[i] {
                succ[i] += 1;
                next = Some(succ);
                break;
            }
            succ[i] = 0;
        }
        Some(current)
    })
}

fn check_vector(spec: &GameSpec, s: &CoalitionVector) -> Result<()> {
    if s.0.len() != spec.classes.len() {
        return Err(Error::DimensionMismatch { expected: spec.classes.len(), got: s.0.len() });
    }
    for (i, (&v, &n)) in s.0.iter().zip(&spec.classes).enumerate() {
        if v > n {
            return Err(Error::CoordinateOutOfRange { index: i, value: v, size: n });
        }
    }
    Ok(())
}

pub fn is_winning_vector(spec: &GameSpec, s: &CoalitionVector) -> Result<bool> {
    check_vector(spec, s)?;
    Ok(dominates(&s.0, &spec.minwin))
}

fn dominates(s: &[usize], m: &[usize]) -> bool {
    s.iter().zip(m).all(|(a, b)| a >= b)
}

/// Minimal winning vectors of an arbitrary monotone vector predicate over
/// the lattice `0..=classes`: winning vectors whose every single-coordinate
/// decrement loses.
pub fn minimal_winning_vectors_of<F>(classes: &[usize], wins: F) -> BTreeSet<CoalitionVector>
where
    F: Fn(&[usize]) -> bool,
{
    let mut out = BTreeSet::new();
    for s in lattice(classes) {
        if !wins(&s) {
            continue;
        }
        let mut below = s.clone();
        let minimal = (0..s.len()).filter(|&i| s[i] > 0).all(|i| {
            below[i] -= 1;
            let w = wins(&below);
            below[i] += 1;
            !w
        });
        if minimal {
            out.insert(CoalitionVector(s));
        }
    }
    out
}

/// Maximal losing vectors of a monotone vector predicate: losing vectors
/// whose every single-coordinate increment wins.
pub fn maximal_losing_vectors_of<F>(classes: &[usize], wins: F) -> BTreeSet<CoalitionVector>
where
    F: Fn(&[usize]) -> bool,
{
    let mut out = BTreeSet::new();
    for s in lattice(classes) {
        if wins(&s) {
            continue;
        }
        let mut above = s.clone();
        let maximal = (0..s.len()).filter(|&i| s[i] < classes[i]).all(|i| {
            above[i] += 1;
            let w = wins(&above);
            above[i] -= 1;
            w
        });
        if maximal {
            out.insert(CoalitionVector(s));
        }
    }
    out
}

/// Brute-force minimal winning vectors of the game; `{m̄}` for every valid
/// spec.
pub fn minimal_winning_vectors(spec: &GameSpec) -> BTreeSet<CoalitionVector> {
    minimal_winning_vectors_of(&spec.classes, |s| dominates(s, &spec.minwin))
}

/// One maximal losing vector per class with `m_i >= 1`: that class one short
/// of its minimum, every other class complete.
pub fn maximal_losing_vectors(spec: &GameSpec) -> BTreeSet<CoalitionVector> {
    (0..spec.classes.len())
        .filter(|&i| spec.minwin[i] >= 1)
        .map(|i| {
            let mut l = spec.classes.clone();
            l[i] = spec.minwin[i] - 1;
            CoalitionVector(l)
        })
        .collect()
}

pub fn maximal_losing_vectors_brute(spec: &GameSpec) -> BTreeSet<CoalitionVector> {
    maximal_losing_vectors_of(&spec.classes, |s| dominates(s, &spec.minwin))
}

/// Class indices whose players are null (`m_i = 0`).
pub fn null_classes(spec: &GameSpec) -> BTreeSet<usize> {
    (0..spec.minwin.len()).filter(|&i| spec.minwin[i] == 0).collect()
}

/// Class indices whose players are vetoers (`m_i = n_i`).
pub fn veto_classes(spec: &GameSpec) -> BTreeSet<usize> {
    (0..spec.minwin.len()).filter(|&i| spec.minwin[i] == spec.classes[i]).collect()
}

/// Outcome of comparing two players under the desirability preorder.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Desirability {
    More,
    Less,
    Equal,
    Incomparable,
}

#[derive(Clone, Debug)]
pub struct ExplicitGame {
    spec: GameSpec,
    class_of: Vec<usize>,
    class_masks: Vec<u64>,
    brute_bound: usize,
}

impl ExplicitGame {
    /// Contiguous realization: class 0 gets players `0..n_1`, class 1 the
    /// next `n_2`, and so on.
    pub fn from_spec(spec: &GameSpec) -> Result<Self> {
        let class_of = contiguous_assignment(&spec.classes);
        Self::with_assignment(spec, class_of)
    }

    pub fn with_assignment(spec: &GameSpec, class_of: Vec<usize>) -> Result<Self> {
        spec.check()?;
        let t = spec.classes.len();
        let mut sizes = vec![0; t];
        for &c in &class_of {
            if c >= t {
                return Err(Error::DimensionMismatch { expected: t, got: c + 1 });
            }
            sizes[c] += 1;
        }
        if sizes != spec.classes {
            return Err(Error::Verification(format!(
                "assignment class sizes {sizes:?} differ from {:?}",
                spec.classes
            )));
        }
        let class_masks = if class_of.len() <= MASK_LIMIT {
            let mut masks = vec![0u64; t];
            for (p, &c) in class_of.iter().enumerate() {
                masks[c] |= 1 << p;
            }
            masks
        } else {
            Vec::new()
        };
        Ok(ExplicitGame { spec: spec.clone(), class_of, class_masks, brute_bound: DEFAULT_BRUTE_BOUND })
    }

    /// Overrides the player-count bound for exhaustive coalition loops.
    pub fn with_bound(mut self, bound: usize) -> Self {
        self.brute_bound = bound;
        self
    }

    pub fn spec(&self) -> &GameSpec {
        &self.spec
    }

    pub fn player_count(&self) -> usize {
        self.class_of.len()
    }

    pub fn class_of(&self) -> &[usize] {
        &self.class_of
    }

    /// Players of each declared class, ascending.
    pub fn declared_classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.spec.classes.len()];
        for (p, &c) in self.class_of.iter().enumerate() {
            out[c].push(p);
        }
        out
    }

    pub fn coalition_vector(&self, players: &[usize]) -> CoalitionVector {
        let mut s = vec![0; self.spec.classes.len()];
        let mut seen = BTreeSet::new();
        for &p in players {
            if seen.insert(p) {
                s[self.class_of[p]] += 1;
            }
        }
        CoalitionVector(s)
    }

    pub fn is_winning(&self, players: &[usize]) -> bool {
        dominates(&self.coalition_vector(players).0, &self.spec.minwin)
    }

    /// Lowest-indexed players of each class realizing `s`.
    pub fn canonical_coalition(&self, s: &CoalitionVector) -> Result<Vec<usize>> {
        check_vector(&self.spec, s)?;
        let mut out = Vec::new();
        for (members, &k) in self.declared_classes().iter().zip(&s.0) {
            out.extend_from_slice(&members[..k]);
        }
        out.sort_unstable();
        Ok(out)
    }

    fn require_exhaustive(&self, what: &'static str) -> Result<()> {
        let n = self.player_count();
        let bound = self.brute_bound.min(MASK_LIMIT);
        if n > bound {
            return Err(Error::Capacity { what, size: n, bound });
        }
        Ok(())
    }

    fn wins_mask(&self, mask: u64) -> bool {
        self.class_masks
            .iter()
            .zip(&self.spec.minwin)
            .all(|(cm, &m)| (mask & cm).count_ones() as usize >= m)
    }

    /// `a ≿ b`: replacing `b` by `a` in any winning coalition that contains
    /// `b` but not `a` keeps it winning.
    fn at_least_as_desirable(&self, a: usize, b: usize) -> bool {
        let (abit, bbit) = (1u64 << a, 1u64 << b);
        (0..1u64 << self.player_count())
            .filter(|m| m & bbit != 0 && m & abit == 0)
            .all(|m| !self.wins_mask(m) || self.wins_mask(m ^ bbit ^ abit))
    }

    pub fn desirability_compare(&self, a: usize, b: usize) -> Result<Desirability> {
        self.require_exhaustive("desirability check")?;
        let n = self.player_count();
        if a >= n || b >= n || a == b {
            return Err(Error::Verification(format!("invalid player pair ({a}, {b}) for {n} players")));
        }
        Ok(match (self.at_least_as_desirable(a, b), self.at_least_as_desirable(b, a)) {
            (true, true) => Desirability::Equal,
            (true, false) => Desirability::More,
            (false, true) => Desirability::Less,
            (false, false) => Desirability::Incomparable,
        })
    }

    /// The partition of players into equi-desirability classes, each block
    /// ascending and blocks ordered by their smallest player.
    pub fn equivalence_classes(&self) -> Result<Vec<Vec<usize>>> {
        self.require_exhaustive("equi-desirability classes")?;
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        'players: for p in 0..self.player_count() {
            for block in blocks.iter_mut() {
                if self.desirability_compare(block[0], p)? == Desirability::Equal {
                    block.push(p);
                    continue 'players;
                }
            }
            blocks.push(vec![p]);
        }
        Ok(blocks)
    }
}

pub(crate) fn contiguous_assignment(classes: &[usize]) -> Vec<usize> {
    classes.iter().enumerate().flat_map(|(c, &n)| std::iter::repeat_n(c, n)).collect()
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct WeightedGame {
    pub weights: Vec<u64>,
    pub quota: u64,
}

impl WeightedGame {
    /// A weighted game `[q; w_1, .., w_n]` with `0 < q <= sum w`.
    pub fn new(weights: Vec<u64>, quota: u64) -> Result<Self> {
        let total: u64 = weights.iter().sum();
        if quota == 0 {
            return Err(Error::InvalidWeightedGame("quota must be positive".into()));
        }
        if quota > total {
            return Err(Error::InvalidWeightedGame(format!("quota {quota} exceeds total weight {total}")));
        }
        Ok(WeightedGame { weights, quota })
    }

    pub fn player_count(&self) -> usize {
        self.weights.len()
    }

    pub fn weight_of(&self, players: &[usize]) -> u64 {
        let distinct: BTreeSet<usize> = players.iter().copied().collect();
        distinct.iter().map(|&p| self.weights[p]).sum()
    }

    pub fn accepts(&self, players: &[usize]) -> bool {
        self.weight_of(players) >= self.quota
    }

    fn accepts_mask(&self, mask: u64) -> bool {
        let w: u64 = self.weights.iter().enumerate().filter(|(p, _)| mask >> p & 1 == 1).map(|(_, w)| w).sum();
        w >= self.quota
    }

    /// Per-class weights if every class has a single weight under
    /// `class_of`.
    pub fn class_weights(&self, class_of: &[usize], class_count: usize) -> Option<Vec<u64>> {
        let mut out: Vec<Option<u64>> = vec![None; class_count];
        for (p, &c) in class_of.iter().enumerate() {
            match out[c] {
                None => out[c] = Some(self.weights[p]),
                Some(w) if w != self.weights[p] => return None,
                Some(_) => {}
            }
        }
        Some(out.into_iter().map(|w| w.unwrap_or(0)).collect())
    }
}

fn check_parts(parts: &[WeightedGame], n: usize) -> Result<()> {
    for (i, part) in parts.iter().enumerate() {
        if part.player_count() != n {
            return Err(Error::InvalidWeightedGame(format!(
                "part {i} has {} weights for {n} players",
                part.player_count()
            )));
        }
    }
    Ok(())
}

/// Whether the intersection of `parts` is exactly the game `spec` realized
/// by `assignment`.
///
/// With class-uniform weights every coalition's acceptance depends only on
/// its coalition vector, so the `(n_1+1)..(n_t+1)` lattice is checked.
/// Otherwise every one of the `2^n` coalitions is checked, subject to
/// [`DEFAULT_BRUTE_BOUND`].
pub fn intersection_equals(spec: &GameSpec, parts: &[WeightedGame], assignment: &[usize]) -> Result<bool> {
    intersection_equals_with_bound(spec, parts, assignment, DEFAULT_BRUTE_BOUND)
}

pub fn intersection_equals_with_bound(
    spec: &GameSpec,
    parts: &[WeightedGame],
    assignment: &[usize],
    bound: usize,
) -> Result<bool> {
    let game = ExplicitGame::with_assignment(spec, assignment.to_vec())?.with_bound(bound);
    check_parts(parts, game.player_count())?;
    let t = spec.classes.len();
    let uniform: Option<Vec<Vec<u64>>> = parts.iter().map(|p| p.class_weights(assignment, t)).collect();
    match uniform {
        Some(class_weights) => Ok(lattice(&spec.classes).all(|s| {
            let accepted = parts.iter().zip(&class_weights).all(|(part, cw)| {
                let w: u64 = s.iter().zip(cw).map(|(&k, &w)| k as u64 * w).sum();
                w >= part.quota
            });
            accepted == dominates(&s, &spec.minwin)
        })),
        None => intersection_equals_exhaustive(&game, parts),
    }
}

/// Coalition-by-coalition comparison over all `2^n` coalitions.
pub fn intersection_equals_exhaustive(game: &ExplicitGame, parts: &[WeightedGame]) -> Result<bool> {
    game.require_exhaustive("intersection check")?;
    check_parts(parts, game.player_count())?;
    Ok((0..1u64 << game.player_count())
        .all(|mask| parts.iter().all(|p| p.accepts_mask(mask)) == game.wins_mask(mask)))
}
