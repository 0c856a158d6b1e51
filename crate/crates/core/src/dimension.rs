//! Dimension of games with minimum.
//!
//! The dimension depends only on the number of classes `t` and on which
//! special classes are present:
//!
//! | null | veto | dimension        |
//! |------|------|------------------|
//! | no   | no   | `t`              |
//! | yes  | no   | `t - 1`          |
//! | no   | yes  | `max(t - 1, 1)`  |
//! | yes  | yes  | `max(t - 2, 1)`  |
//!
//! The upper bound comes from an explicit decomposition into weighted
//! games, the lower bound from pairs of losing coalitions that trade two
//! players into two winning ones.

use serde::Serialize;

use crate::catalog::ProperRepresentation;
use crate::error::{Error, Result};
use crate::games::{contiguous_assignment, intersection_equals, ExplicitGame, WeightedGame};

pub fn dimension_of(rep: &ProperRepresentation) -> usize {
    let t = rep.class_count();
    match (rep.null_class().is_some(), rep.veto_class().is_some()) {
        (false, false) => t,
        (true, false) => t - 1,
        (false, true) => t.saturating_sub(1).max(1),
        (true, true) => t.saturating_sub(2).max(1),
    }
}

/// Weighted games whose intersection is the game, on the contiguous player
/// assignment.
///
/// Without a veto class every non-null class `i` contributes `[m_i; 1 on
/// N_i]`. With a veto class `V`, every other non-null class `i` contributes
/// a game in which each member of `V` weighs `n_i - m_i + 1`, each member of
/// `N_i` weighs 1, and the quota is `(n_i - m_i + 1) n_V + m_i`; the heavier
/// veto weight stops `N_i` from compensating for an absent vetoer. If no
/// other non-null class exists the unanimity game on `V` remains.
pub fn decompose(rep: &ProperRepresentation) -> Vec<WeightedGame> {
    let classes = rep.classes();
    let minwin = rep.minwin();
    let assignment = contiguous_assignment(classes);
    let weights_for = |f: &dyn Fn(usize) -> u64| -> Vec<u64> { assignment.iter().map(|&c| f(c)).collect() };
    let game = |weights: Vec<u64>, quota: u64| WeightedGame::new(weights, quota).expect("quota within total weight");

    match rep.veto_class() {
        None => (0..classes.len())
            .filter(|&i| minwin[i] >= 1)
            .map(|i| game(weights_for(&|c| u64::from(c == i)), minwin[i] as u64))
            .collect(),
        Some(v) => {
            let others: Vec<usize> = (0..classes.len()).filter(|&i| i != v && minwin[i] >= 1).collect();
            if others.is_empty() {
                return vec![game(weights_for(&|c| u64::from(c == v)), classes[v] as u64)];
            }
            others
                .into_iter()
                .map(|i| {
                    let heavy = (classes[i] - minwin[i] + 1) as u64;
                    let weights = weights_for(&|c| match c {
                        c if c == v => heavy,
                        c if c == i => 1,
                        _ => 0,
                    });
                    game(weights, heavy * classes[v] as u64 + minwin[i] as u64)
                })
                .collect()
        }
    }
}

/// Two maximal losing coalitions of classes `i < j` and the players `a ∈
/// N_j`, `b ∈ N_i` whose exchange turns both into winning coalitions.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct LowerPair {
    pub i: usize,
    pub j: usize,
    pub l_i: Vec<usize>,
    pub l_j: Vec<usize>,
    pub a: usize,
    pub b: usize,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct DimensionCertificate {
    pub dimension: usize,
    pub parts: Vec<WeightedGame>,
    pub lower_pairs: Vec<LowerPair>,
}

fn fail(what: impl Into<String>) -> Error {
    Error::Verification(what.into())
}

fn swap(coalition: &[usize], out: usize, inn: usize) -> Vec<usize> {
    let mut c: Vec<usize> = coalition.iter().copied().filter(|&p| p != out).collect();
    c.push(inn);
    c.sort_unstable();
    c
}

/// Classes that are neither null nor veto; the lower-bound pairs range
/// over these.
fn trading_classes(rep: &ProperRepresentation) -> Vec<usize> {
    (0..rep.class_count())
        .filter(|&i| rep.minwin()[i] >= 1 && rep.minwin()[i] < rep.classes()[i])
        .collect()
}

fn lower_pair(game: &ExplicitGame, rep: &ProperRepresentation, i: usize, j: usize) -> LowerPair {
    let members = game.declared_classes();
    let losing_for = |k: usize| -> Vec<usize> {
        let mut l: Vec<usize> = (0..game.player_count())
            .filter(|&p| game.class_of()[p] != k || members[k][..rep.minwin()[k] - 1].contains(&p))
            .collect();
        l.sort_unstable();
        l
    };
    let l_i = losing_for(i);
    let l_j = losing_for(j);
    // lowest-indexed eligible players
    let a = *members[j].iter().find(|p| l_i.contains(p) && !l_j.contains(p)).expect("N_j ⊄ L_j");
    let b = *members[i].iter().find(|p| l_j.contains(p) && !l_i.contains(p)).expect("N_i ⊄ L_i");
    LowerPair { i, j, l_i, l_j, a, b }
}

fn check_pair(game: &ExplicitGame, parts: &[WeightedGame], pair: &LowerPair) -> Result<()> {
    let LowerPair { i, j, l_i, l_j, a, b } = pair;
    let tag = format!("lower pair ({i}, {j})");
    if game.class_of()[*a] != *j || !l_i.contains(a) || l_j.contains(a) {
        return Err(fail(format!("{tag}: witness a={a} is not in (L_i \\ L_j) ∩ N_j")));
    }
    if game.class_of()[*b] != *i || !l_j.contains(b) || l_i.contains(b) {
        return Err(fail(format!("{tag}: witness b={b} is not in (L_j \\ L_i) ∩ N_i")));
    }
    if game.is_winning(l_i) || game.is_winning(l_j) {
        return Err(fail(format!("{tag}: L_i or L_j wins")));
    }
    let traded_i = swap(l_i, *a, *b);
    let traded_j = swap(l_j, *b, *a);
    if !game.is_winning(&traded_i) || !game.is_winning(&traded_j) {
        return Err(fail(format!("{tag}: a traded coalition loses")));
    }
    // same players before and after the trade, so any weights give
    // w(L_i) + w(L_j) = w(traded_i) + w(traded_j)
    let mut before: Vec<usize> = l_i.iter().chain(l_j).copied().collect();
    let mut after: Vec<usize> = traded_i.iter().chain(&traded_j).copied().collect();
    before.sort_unstable();
    after.sort_unstable();
    if before != after {
        return Err(fail(format!("{tag}: the trade does not preserve the multiset of players")));
    }
    for (k, part) in parts.iter().enumerate() {
        if !part.accepts(l_i) && !part.accepts(l_j) {
            return Err(fail(format!("{tag}: part {k} rejects both L_i and L_j")));
        }
    }
    Ok(())
}

/// Builds the decomposition and the lower-bound pairs and checks all of
/// them:
///
/// - the number of parts equals [`dimension_of`],
/// - the intersection of the parts is the game on the full vector lattice,
/// - dropping any single part changes the intersection,
/// - every pair consists of two losing coalitions that become winning after
///   exchanging `a` and `b`.
pub fn verify_certificate(rep: &ProperRepresentation) -> Result<DimensionCertificate> {
    let spec = rep.spec();
    let dimension = dimension_of(rep);
    let parts = decompose(rep);
    if parts.len() != dimension {
        return Err(fail(format!("decomposition has {} parts, dimension is {dimension}", parts.len())));
    }
    let assignment = contiguous_assignment(&spec.classes);
    if !intersection_equals(spec, &parts, &assignment)? {
        return Err(fail("intersection of the decomposition differs from the game"));
    }
    for k in 0..parts.len() {
        let mut rest = parts.clone();
        rest.remove(k);
        if intersection_equals(spec, &rest, &assignment)? {
            return Err(fail(format!("part {k} is redundant")));
        }
    }

    let game = ExplicitGame::from_spec(spec)?;
    let mut lower_pairs = Vec::new();
    if dimension >= 2 {
        let trading = trading_classes(rep);
        if trading.len() != dimension {
            return Err(fail(format!("{} trading classes for dimension {dimension}", trading.len())));
        }
        for (x, &i) in trading.iter().enumerate() {
            for &j in &trading[x + 1..] {
                let pair = lower_pair(&game, rep, i, j);
                check_pair(&game, &parts, &pair)?;
                lower_pairs.push(pair);
            }
        }
    }
    Ok(DimensionCertificate { dimension, parts, lower_pairs })
}
