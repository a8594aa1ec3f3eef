//! The semialgebra operations, the differential and evaluation on the
//! shipped fixtures.

use symhom::semialgebra::syntax::parse_factor;
use symhom::{fixtures, mor_comp, Element, Engine, Flavor, Label, MorElement, Poly2};

fn lab(s: &str) -> Label {
    Label::new(s).unwrap()
}

#[test]
fn cube_of_the_constant_generator_is_its_square() {
    let o = fixtures::t_ml().unwrap();
    let eng = Engine::new(&o);
    let x = eng.parse("M[0;(a,b)](.v,^x)").unwrap();
    let x2 = eng.product(&[x.clone(), x.clone()]).unwrap();
    let x3 = eng.product(&[x2.clone(), x.clone()]).unwrap();
    assert_eq!(x2.max_word_len(), 2);
    assert_eq!(x3, x2);
    assert_ne!(x2, x);
}

#[test]
fn omega_absorbs_and_zero_is_neutral() {
    let o = fixtures::t_mm().unwrap();
    let eng = Engine::new(&o);
    let x = eng.parse("M[0;(a,b)](.v,^x1)").unwrap();
    let y = eng.parse("M[0;(a,b)](^x1,.v)").unwrap();
    let mixed = x.boxplus(&y);
    assert!(mixed.is_omega());
    assert!(mixed.boxplus(&x).is_omega());
    assert_eq!(Element::zero().boxplus(&x), x);
    assert!(eng.boxtimes(&Element::Omega, &x).unwrap().is_omega());
    assert!(eng.boxtimes(&Element::zero(), &Element::Omega).unwrap().is_zero());
    assert!(eng.parse("Omega").unwrap().is_omega());
}

#[test]
fn cancelled_sums_remember_their_profile() {
    let o = fixtures::t_mm().unwrap();
    let eng = Engine::new(&o);
    let x = eng.parse("M[0;(a,b)](.v,^x1)").unwrap();
    let y = eng.parse("M[0;(a,b)](^x1,.v)").unwrap();
    let z = x.boxplus(&x);
    assert!(z.is_zero());
    assert_eq!(z, Element::zero());
    assert!(z.boxplus(&y).is_omega());
    assert_eq!(z.boxplus(&x), x);
}

#[test]
fn display_round_trips() {
    let o = fixtures::triple().unwrap();
    let eng = Engine::new(&o);
    for text in [
        "M[0;(a,b)](.v,^x1)",
        "M[0;(a,g,b)](.v,.v,^w1) + M[0;(a,g,b)](.v,.v,^w2)",
        "0",
        "Omega",
    ] {
        let x = eng.parse(text).unwrap();
        assert_eq!(eng.parse(&x.to_string()).unwrap(), x, "{text}");
    }
}

#[test]
fn coefficient_relations() {
    let o = fixtures::t_mm().unwrap();
    let eng = Engine::new(&o);
    let atom = |t: &str| eng.coeff_atom(&parse_factor(t).unwrap()).unwrap();
    // Two bigons from x1 to x2: a free variable that counts zero.
    let m = atom("M[1;(a,b)](.x1,.x2)");
    assert!(!m.is_zero() && !m.is_one());
    assert_eq!(eng.ct(&m).unwrap(), Poly2::ZERO);
    // The constant disk is one and an empty space is zero.
    assert!(atom("M[0;(a,b)](.x1,.x1)").is_one());
    assert!(atom("M[1;(a,b)](.x2,.x1)").is_zero());
    assert!(eng.parse("M[1;(a,b)](.x2,^x1)").unwrap().is_zero());
}

#[test]
fn differential_squares_to_zero_on_the_triangle() {
    let o = fixtures::triple().unwrap();
    let eng = Engine::new(&o);
    let t = eng.parse("M[1;(a,g,b)](.v,.v,^w2)").unwrap();
    let dt = eng.diff(&t).unwrap();
    assert_eq!(dt.len(), 2);
    assert!(eng.diff(&dt).unwrap().is_zero());
    assert!(eng.diff(&eng.parse("M[0;(a,b)](.v,^x1)").unwrap()).unwrap().is_zero());
}

#[test]
fn evaluation_of_constant_symbols() {
    let o = fixtures::t_mm().unwrap();
    let eng = Engine::new(&o);
    let x1 = eng.parse("M[0;(a,b)](.v,^x1)").unwrap();
    let m = eng.ev(&x1).unwrap();
    let map = m.map().unwrap();
    assert_eq!(map.src.len(), 1);
    assert_eq!(map.mat.inline(), "[1 0; 0 0]");
    let sq = eng.ev(&eng.product(&[x1.clone(), x1.clone()]).unwrap()).unwrap();
    assert_eq!(sq, mor_comp(&m, &m).unwrap());
    let cf = eng.build_floer_complex(&lab("a"), &lab("b"), Flavor::U).unwrap();
    assert_eq!(cf.rank(), 2);
    assert!(cf.squares_to_zero());
}

#[test]
fn composition_of_mismatched_maps_is_omega() {
    let o = fixtures::triple().unwrap();
    let eng = Engine::new(&o);
    let ab = eng.ev(&eng.parse("M[0;(a,b)](.v,^x1)").unwrap()).unwrap();
    let ag = eng.ev(&eng.parse("M[0;(a,g)](.v,^w1)").unwrap()).unwrap();
    assert!(mor_comp(&ag, &ab).unwrap().is_omega());
    assert!(mor_comp(&MorElement::Omega, &ab).unwrap().is_omega());
}
