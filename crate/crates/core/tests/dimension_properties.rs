use minwin_core::{canonicalize, decompose, dimension_of, enumerate_proper, verify_certificate, Allow, GameSpec};

fn expected_dimension(t: usize, null: bool, veto: bool) -> usize {
    match (null, veto) {
        (false, false) => t,
        (true, false) => t - 1,
        (false, true) => (t - 1).max(1),
        (true, true) => t.saturating_sub(2).max(1),
    }
}

#[test]
fn every_small_representation_has_a_valid_certificate() {
    for n in 1..=9 {
        for t in 1..=n {
            for rep in enumerate_proper(n, t, Allow::ALL) {
                let c = verify_certificate(&rep).unwrap_or_else(|e| panic!("{rep:?}: {e}"));
                let expected = expected_dimension(t, rep.null_class().is_some(), rep.veto_class().is_some());
                assert_eq!(c.dimension, expected, "{rep:?}");
                assert_eq!(c.parts.len(), expected);
                let trading = (0..t).filter(|&i| rep.minwin()[i] >= 1 && rep.minwin()[i] < rep.classes()[i]).count();
                if expected >= 2 {
                    assert_eq!(c.lower_pairs.len(), trading * (trading - 1) / 2);
                }
            }
        }
    }
}

#[test]
fn dimension_ignores_column_order() {
    for n in 1..=9 {
        for t in 1..=n {
            for rep in enumerate_proper(n, t, Allow::ALL) {
                let mut classes = rep.classes().to_vec();
                let mut minwin = rep.minwin().to_vec();
                classes.reverse();
                minwin.reverse();
                let back = canonicalize(&GameSpec { classes, minwin }).unwrap();
                assert_eq!(dimension_of(&back), dimension_of(&rep));
                assert_eq!(decompose(&back), decompose(&rep));
            }
        }
    }
}
