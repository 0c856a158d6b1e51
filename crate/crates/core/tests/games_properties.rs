use std::collections::BTreeSet;

use minwin_core::games::{
    intersection_equals, intersection_equals_exhaustive, lattice, maximal_losing_vectors, maximal_losing_vectors_brute,
    minimal_winning_vectors, minimal_winning_vectors_of, null_classes, veto_classes,
};
use minwin_core::{CoalitionVector, ExplicitGame, GameSpec, WeightedGame};
use proptest::prelude::*;

/// Any valid `(n̄, m̄)`, sorted or not, with at most `max_n` players.
fn any_spec(max_n: usize) -> impl Strategy<Value = GameSpec> {
    prop::collection::vec(1usize..5, 1..5)
        .prop_filter("player bound", move |c| c.iter().sum::<usize>() <= max_n)
        .prop_flat_map(|classes| {
            let ms: Vec<_> = classes.iter().map(|&n| 0..=n).collect();
            (Just(classes), ms)
        })
        .prop_filter_map("empty coalition wins", |(classes, minwin)| GameSpec::new(classes, minwin).ok())
}

fn members(mask: u32, n: usize) -> Vec<usize> {
    (0..n).filter(|p| mask >> p & 1 == 1).collect()
}

proptest! {
    #[test]
    fn winning_is_monotone(spec in any_spec(12), seed in any::<u32>()) {
        let game = ExplicitGame::from_spec(&spec).unwrap();
        let n = game.player_count();
        let mask = seed & ((1u32 << n) - 1);
        if game.is_winning(&members(mask, n)) {
            for p in 0..n {
                prop_assert!(game.is_winning(&members(mask | 1 << p, n)));
            }
        }
        prop_assert!(game.is_winning(&(0..n).collect::<Vec<_>>()));
        prop_assert!(!game.is_winning(&[]));
    }

    #[test]
    fn the_minimum_is_the_only_minimal_winning_vector(spec in any_spec(12)) {
        let expected: BTreeSet<_> = [CoalitionVector(spec.minwin.clone())].into();
        prop_assert_eq!(&minimal_winning_vectors(&spec), &expected);
        let game = ExplicitGame::from_spec(&spec).unwrap();
        let via_players = minimal_winning_vectors_of(&spec.classes, |s| {
            game.is_winning(&game.canonical_coalition(&CoalitionVector(s.to_vec())).unwrap())
        });
        prop_assert_eq!(via_players, expected);
    }

    #[test]
    fn null_and_veto_classes(spec in any_spec(12)) {
        let nulls: BTreeSet<usize> = (0..spec.class_count()).filter(|&i| spec.minwin[i] == 0).collect();
        let vetoes: BTreeSet<usize> = (0..spec.class_count()).filter(|&i| spec.minwin[i] == spec.classes[i]).collect();
        prop_assert_eq!(null_classes(&spec), nulls);
        prop_assert_eq!(veto_classes(&spec), vetoes);
    }

    #[test]
    fn uniform_intersection_shortcut_is_sound(
        spec in any_spec(10),
        raw in prop::collection::vec((prop::collection::vec(0u64..4, 4), 1u64..12), 1..4),
    ) {
        let t = spec.class_count();
        let game = ExplicitGame::from_spec(&spec).unwrap();
        let parts: Vec<WeightedGame> = raw
            .into_iter()
            .filter_map(|(cw, q)| {
                let weights: Vec<u64> = game.class_of().iter().map(|&c| cw[c % t.min(4)]).collect();
                let total: u64 = weights.iter().sum();
                WeightedGame::new(weights, q.min(total.max(1))).ok()
            })
            .collect();
        prop_assume!(!parts.is_empty());
        let shortcut = intersection_equals(&spec, &parts, game.class_of()).unwrap();
        prop_assert_eq!(shortcut, intersection_equals_exhaustive(&game, &parts).unwrap());
    }
}

/// All specs with the given number of players, sorted or not.
fn all_specs(n: usize) -> Vec<GameSpec> {
    fn compositions(n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for first in 1..=n {
            cur.push(first);
            compositions(n - first, cur, out);
            cur.pop();
        }
    }
    let mut comps = Vec::new();
    compositions(n, &mut Vec::new(), &mut comps);
    comps
        .into_iter()
        .filter(|c| c.len() <= 5)
        .flat_map(|classes| {
            lattice(&classes)
                .filter_map(|m| GameSpec::new(classes.clone(), m).ok())
                .collect::<Vec<_>>()
        })
        .collect()
}

#[test]
fn maximal_losing_closed_form_matches_brute_force() {
    for n in 1..=10 {
        for spec in all_specs(n) {
            assert_eq!(maximal_losing_vectors(&spec), maximal_losing_vectors_brute(&spec), "{spec:?}");
        }
    }
}

#[test]
fn declared_classes_merge_only_repeated_null_or_veto_classes() {
    for n in 1..=7 {
        for spec in all_specs(n) {
            let nulls = null_classes(&spec).len();
            let vetoes = veto_classes(&spec).len();
            let game = ExplicitGame::from_spec(&spec).unwrap();
            let found = game.equivalence_classes().unwrap();
            let merges = nulls > 1 || vetoes > 1;
            let mut declared = game.declared_classes();
            declared.sort();
            let mut found_sorted = found.clone();
            found_sorted.sort();
            assert_eq!(found_sorted == declared, !merges, "{spec:?}");
        }
    }
}
