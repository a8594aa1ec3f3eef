//! Oracle backends: domain enumeration, relabeling, table loading and end
//! bookkeeping.

use std::collections::BTreeMap;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use symhom::laws::random_oracle;
use symhom::semialgebra::pointed_query;
use symhom::{
    check_oracle, fixtures, DeclarativeOracle, Deco, Error, Filtration, Label, Oracle, PreGenerator, TorusDiagram,
    TorusOracle,
};

fn lab(s: &str) -> Label {
    Label::new(s).unwrap()
}

#[test]
fn canceling_pair_has_two_embedded_bigons() {
    for (o, strata) in [
        (fixtures::t_mm().unwrap(), vec![0, 0]),
        (fixtures::t_mm_w_in_b1().unwrap(), vec![0, 1]),
    ] {
        let d = o.diagram();
        let (a, b) = (lab("a"), lab("b"));
        let pts = o.points(&a, &b);
        let (xi, yi) = (d.point_index(&pts[0]).unwrap(), d.point_index(&pts[1]).unwrap());
        let mut found: Vec<u32> = d
            .domains(&a, &b, &pts[0], &pts[1], o.bound())
            .unwrap()
            .into_iter()
            .filter(|dom| d.is_embedded_bigon(dom, xi, yi))
            .map(|dom| dom.n_w)
            .collect();
        found.sort_unstable();
        assert_eq!(found, strata);
        let back = d.domains(&a, &b, &pts[1], &pts[0], o.bound()).unwrap();
        assert!(back.iter().all(|dom| !d.is_embedded_bigon(dom, yi, xi)));
    }
}

/// Every index-zero and index-one bigon query of a two-label oracle, built
/// from slot decorations so the same description works after relabeling.
fn bigon_counts(o: &dyn Oracle, a: &Label, b: &Label, ids: &BTreeMap<String, String>) -> Vec<(String, bool)> {
    let pts = o.points(a, b);
    let mut out = Vec::new();
    for mu in 0..=1 {
        for f in [Filtration::Unfiltered, Filtration::Nw(0), Filtration::Nw(1)] {
            for x in &pts {
                for y in &pts {
                    let g = PreGenerator::from_slots(
                        &[a.clone(), b.clone()],
                        mu,
                        f,
                        vec![Deco::Pointed(x.clone()), Deco::Pointed(y.clone())],
                    )
                    .unwrap();
                    let q = pointed_query(&g).unwrap();
                    let name = |p: &symhom::Point| ids.get(p.id()).cloned().unwrap_or_else(|| p.id().to_string());
                    out.push((
                        format!("{mu} {f:?} {} {}", name(x), name(y)),
                        o.query_count(&q).unwrap().count,
                    ));
                }
            }
        }
    }
    out.sort();
    out
}

#[test]
fn counts_are_invariant_under_relabeling() {
    for text in [fixtures::T_ML, fixtures::T_MM, fixtures::T_MM_W_IN_B1] {
        let d = TorusDiagram::from_json(text).unwrap();
        let labels: BTreeMap<Label, Label> = [(lab("a"), lab("q")), (lab("b"), lab("p"))].into();
        let ids: BTreeMap<String, String> = d
            .points
            .iter()
            .map(|p| (p.id().to_string(), format!("{}r", p.id())))
            .collect();
        let back: BTreeMap<String, String> = ids.iter().map(|(k, v)| (v.clone(), k.clone())).collect();
        let r = TorusOracle::new(d.relabeled(&labels, &ids).unwrap());
        let o = TorusOracle::new(d);
        assert_eq!(
            bigon_counts(&o, &lab("a"), &lab("b"), &BTreeMap::new()),
            bigon_counts(&r, &lab("q"), &lab("p"), &back)
        );
    }
}

#[test]
fn tables_reject_malformed_input() {
    assert!(matches!(DeclarativeOracle::from_json("{"), Err(Error::Parse(_))));
    assert!(matches!(TorusDiagram::from_json("[]"), Err(Error::Parse(_))));
    assert!(DeclarativeOracle::from_json(fixtures::EX2).is_ok());
}

#[test]
fn dropping_any_end_of_the_triangle_is_detected() {
    let clean = fixtures::triple().unwrap();
    assert!(check_oracle(&clean).unwrap().is_clean());
    let entries: Vec<_> = clean.entries().map(|(q, _)| q.clone()).collect();
    let mut dropped = 0;
    for q in entries {
        for k in 0..clean.query_ends(&q).map(|e| e.len()).unwrap_or(0) {
            let mut o = fixtures::triple().unwrap();
            o.drop_end(&q, k).unwrap();
            assert!(!check_oracle(&o).unwrap().violations.is_empty(), "{q} end {k}");
            dropped += 1;
        }
    }
    assert_eq!(dropped, 4);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ends_are_additive(seed in any::<u64>()) {
        let o = random_oracle(&mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert!(check_oracle(&o).unwrap().is_clean());
        for q in o.scope().unwrap() {
            if q.space.dimension() != 1 {
                continue;
            }
            let decos: Vec<Deco> = q.points.iter().cloned().map(Deco::Pointed).collect();
            for e in o.query_ends(&q).unwrap() {
                let (p, r) = e.pieces(&q.space, &decos).unwrap();
                prop_assert_eq!(p.space.maslov() + r.space.maslov(), q.space.maslov());
                prop_assert_eq!(p.space.dimension() + r.space.dimension() + 1, q.space.dimension());
                if let (Some((n1, n2)), Some(k)) = (e.nw, q.space.filtration().stratum()) {
                    prop_assert_eq!(n1 + n2, k);
                }
            }
        }
    }
}
