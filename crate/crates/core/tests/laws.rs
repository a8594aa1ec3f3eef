//! The algebra laws over seeded random oracles, and the differential and
//! evaluation invariants over the shipped fixtures.

use proptest::prelude::*;
use symhom::laws::run_suite;
use symhom::verify::fixture_generators;
use symhom::{fixtures, Engine, Oracle};

fn shipped() -> Vec<Box<dyn Oracle>> {
    vec![
        Box::new(fixtures::t_ml().unwrap()),
        Box::new(fixtures::t_mm().unwrap()),
        Box::new(fixtures::t_mm_w_in_b1().unwrap()),
        Box::new(fixtures::triple().unwrap()),
    ]
}

#[test]
fn shipped_oracles_satisfy_every_law() {
    let oracles = shipped();
    let refs: Vec<&dyn Oracle> = oracles.iter().map(|o| o.as_ref()).collect();
    let r = run_suite(&refs, 0, 30, 7).unwrap();
    assert!(r.failures.is_empty(), "{:?}", r.failures.first());
    assert!(r.checked.iter().all(|(_, n)| *n > 0), "{:?}", r.checked);
}

/// The boundary of a generator is zero or a sum of generator words with
/// the same inward and outward profiles.
#[test]
fn differential_stays_among_generator_words() {
    for o in shipped() {
        let eng = Engine::new(o.as_ref());
        for g in fixture_generators(&eng).unwrap() {
            let x = eng.generator(&g).unwrap();
            let d = eng.diff(&x).unwrap();
            assert!(!d.is_omega(), "{g}");
            if d.is_empty() {
                continue;
            }
            assert_eq!(d.profiles(), x.profiles(), "{g}");
            for (w, _) in d.terms() {
                assert!(w.last().is_some_and(|f| f.out_index().is_some()), "{g}: {w:?}");
            }
        }
    }
}

#[test]
fn evaluation_kills_boundaries() {
    for o in shipped() {
        let eng = Engine::new(o.as_ref());
        for g in fixture_generators(&eng).unwrap() {
            if g.space().dimension() != 1 {
                continue;
            }
            let d = eng.diff(&eng.generator(&g).unwrap()).unwrap();
            let ev = eng.ev(&d).unwrap();
            assert!(ev.is_zero() || ev.map().is_some_and(|m| m.mat.is_zero()), "{g}: {ev}");
        }
    }
}

#[test]
fn floer_complexes_square_to_zero() {
    use symhom::{Flavor, Label};
    let (a, b) = (Label::new("a").unwrap(), Label::new("b").unwrap());
    for o in shipped().iter().take(3) {
        let eng = Engine::new(o.as_ref());
        for f in [Flavor::Hat, Flavor::KnotHat, Flavor::U] {
            assert!(eng.build_floer_complex(&a, &b, f).unwrap().squares_to_zero());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_oracles_satisfy_every_law(seed in any::<u64>()) {
        let r = run_suite(&[], 1, 10, seed).unwrap();
        prop_assert!(r.failures.is_empty(), "{:?}", r.failures.first());
    }
}
