//! Boundary conditions, decorations, K-operators and multiplicity profiles.

use proptest::prelude::*;
use symhom::types::Pointing;
use symhom::{
    canonical_boundary, classify, labels, multiplicity_profiles, Deco, Error, Filtration, Kind, Label, Point,
    PolygonSymbol, PreGenerator, Vertex,
};

fn lab(s: &str) -> Label {
    Label::new(s).unwrap()
}

#[test]
fn boundary_rejects_degenerate_words() {
    assert!(matches!(
        canonical_boundary(&labels(&["a"]).unwrap()),
        Err(Error::ShortWord(1))
    ));
    assert!(matches!(
        canonical_boundary(&labels(&["a", "a", "b"]).unwrap()),
        Err(Error::AdjacentRepeat(_))
    ));
    assert!(matches!(
        canonical_boundary(&labels(&["a", "b", "a", "b"]).unwrap()),
        Err(Error::RepeatedVertex(..))
    ));
}

#[test]
fn vertices_follow_the_word() {
    let b = canonical_boundary(&labels(&["g", "b", "a"]).unwrap()).unwrap();
    assert_eq!(b.to_string(), "(a,g,b)");
    let v: Vec<String> = b.vertices().iter().map(ToString::to_string).collect();
    assert_eq!(v, ["(a,g)", "(g,b)", "(b,a)"]);
    assert_eq!(b.index_of(&Vertex::new(lab("b"), lab("a")).unwrap()), Some(2));
    assert_eq!(b.index_of(&Vertex::new(lab("a"), lab("b")).unwrap()), None);
}

#[test]
fn slots_run_backwards_through_the_word() {
    let (a, b) = (lab("a"), lab("b"));
    let x = Point::new("x", a.clone(), b.clone()).unwrap();
    let y = Point::new("y", a.clone(), b.clone()).unwrap();
    let g = PreGenerator::from_slots(
        &[a.clone(), b.clone()],
        0,
        Filtration::Unfiltered,
        vec![Deco::Pointed(x.clone()), Deco::FlowOut(y.clone())],
    )
    .unwrap();
    // Slot 1 is vertex (b,a), slot 2 is vertex (a,b).
    assert_eq!(g.decos()[1], Deco::Pointed(x));
    assert_eq!(g.decos()[0], Deco::FlowOut(y));
    assert_eq!(g.to_string(), "M[0;(a,b)](.x,^y)");
}

#[test]
fn maslov_and_dimension() {
    let bigon = canonical_boundary(&labels(&["a", "b"]).unwrap()).unwrap();
    assert!(PolygonSymbol::new(bigon.clone(), 0, Filtration::Unfiltered)
        .unwrap()
        .is_constant_bigon());
    assert_eq!(
        PolygonSymbol::new(bigon, 2, Filtration::Unfiltered)
            .unwrap()
            .dimension(),
        1
    );
    let tri = canonical_boundary(&labels(&["a", "b", "g"]).unwrap()).unwrap();
    assert_eq!(
        PolygonSymbol::new(tri.clone(), 0, Filtration::Unfiltered)
            .unwrap()
            .dimension(),
        0
    );
    assert_eq!(
        PolygonSymbol::new(tri.clone(), 1, Filtration::Unfiltered)
            .unwrap()
            .dimension(),
        1
    );
    assert!(PolygonSymbol::new(tri, 2, Filtration::Unfiltered).is_err());
}

#[test]
fn points_must_fit_their_vertex() {
    let (a, b, g) = (lab("a"), lab("b"), lab("g"));
    let x = Point::new("x", a.clone(), g.clone()).unwrap();
    let space = PolygonSymbol::new(canonical_boundary(&[a, b]).unwrap(), 0, Filtration::Unfiltered).unwrap();
    assert!(matches!(
        PreGenerator::new(space, vec![Deco::Pointed(x.clone()), Deco::FlowIn]),
        Err(Error::PointMismatch { .. })
    ));
    assert!(Point::new("v", lab("a"), lab("b")).is_err());
    assert!(Point::new("x", lab("a"), lab("a")).is_err());
}

#[test]
fn k_down_needs_an_open_flow_in() {
    let (a, b) = (lab("a"), lab("b"));
    let x = Point::new("x", a.clone(), b.clone()).unwrap();
    let g = PreGenerator::from_slots(
        &[a.clone(), b.clone()],
        0,
        Filtration::Unfiltered,
        vec![Deco::Pointed(x.clone()), Deco::FlowOut(x.clone())],
    )
    .unwrap();
    let q = Pointing::new(Vertex::new(b, a).unwrap(), x).unwrap();
    assert!(matches!(g.k_down(&[q]), Err(Error::MissingFlowIn(_))));
}

const NAMES: [&str; 4] = ["a", "b", "c", "d"];

fn word() -> impl Strategy<Value = Vec<Label>> {
    prop::collection::vec(0..NAMES.len(), 2..6)
        .prop_map(|v| v.into_iter().map(|i| lab(NAMES[i])).collect::<Vec<_>>())
        .prop_filter("valid boundary word", |w| canonical_boundary(w).is_ok())
}

/// A decorated pre-generator: each vertex gets a pointing, a flow-in or a
/// flow-out, with point ids drawn from two per label pair.
fn pregen() -> impl Strategy<Value = PreGenerator> {
    (word(), prop::collection::vec((0..3u8, 0..2u8), 6)).prop_map(|(w, choice)| {
        let b = canonical_boundary(&w).unwrap();
        let space = PolygonSymbol::new(b.clone(), 0, Filtration::Unfiltered).unwrap();
        let decos = b
            .vertices()
            .iter()
            .zip(&choice)
            .map(|(v, &(kind, id))| {
                let p = Point::new(&format!("p{id}"), v.incoming.clone(), v.outgoing.clone()).unwrap();
                match kind {
                    0 => Deco::Pointed(p),
                    1 => Deco::FlowIn,
                    _ => Deco::FlowOut(p),
                }
            })
            .collect();
        PreGenerator::new(space, decos).unwrap()
    })
}

proptest! {
    #[test]
    fn canonical_boundary_is_rotation_invariant(w in word(), k in 0usize..6) {
        let c = canonical_boundary(&w).unwrap();
        let mut r = w.clone();
        r.rotate_left(k % w.len());
        prop_assert_eq!(canonical_boundary(&r).unwrap(), c.clone());
        prop_assert_eq!(canonical_boundary(c.labels()).unwrap(), c);
    }

    #[test]
    fn classify_is_a_partition(g in pregen()) {
        let ins = g.flow_in().len();
        let outs = g.flow_out().len();
        let generator = ins >= 1 && outs == 1;
        let pointed = ins == 0 && outs == 0;
        let kind = classify(&g);
        prop_assert_eq!(kind == Kind::Generator, generator);
        prop_assert_eq!(kind == Kind::FullyPointed, pointed);
        prop_assert_eq!(kind == Kind::Other, !generator && !pointed);
    }

    #[test]
    fn k_operators_commute_on_disjoint_vertices(g in pregen(), pick in 0usize..6, id in 0u8..2) {
        let ins = g.flow_in();
        prop_assume!(!ins.is_empty());
        let v = ins[pick % ins.len()].clone();
        let p = Point::new(&format!("p{id}"), v.incoming.clone(), v.outgoing.clone()).unwrap();
        let q = [Pointing::new(v, p).unwrap()];
        let left = g.k_up().k_down(&q).unwrap();
        let right = g.k_down(&q).unwrap().k_up();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn multiplicity_profiles_are_additive(x in prop::collection::vec(pregen(), 0..3), y in prop::collection::vec(pregen(), 0..3)) {
        let (xi, xo) = multiplicity_profiles(&x);
        let (yi, yo) = multiplicity_profiles(&y);
        let xy: Vec<PreGenerator> = x.iter().chain(&y).cloned().collect();
        let (i, o) = multiplicity_profiles(&xy);
        prop_assert_eq!(i, xi.merged(&yi));
        prop_assert_eq!(o, xo.merged(&yo));
    }
}
