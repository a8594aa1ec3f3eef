//! Filtering morphisms, property polynomials and unit symbols.

use symhom::laws::element_pool;
use symhom::verify::{chain_map_property, triangle_family};
use symhom::{fixtures, Element, Engine, Filtration, FiniteComplex, Label, Oracle, Transport};

fn lab(s: &str) -> Label {
    Label::new(s).unwrap()
}

#[test]
fn filtering_respects_sum_and_product() {
    let t_mm_w = fixtures::t_mm_w_in_b1().unwrap();
    let triple = fixtures::triple().unwrap();
    for o in [&t_mm_w as &dyn Oracle, &triple] {
        let eng = Engine::new(o);
        let (pool, _) = element_pool(&eng, &[Filtration::Unfiltered]).unwrap();
        let pool: Vec<Element> = pool.into_iter().take(24).collect();
        for kind in [Transport::Filter, Transport::FilterU] {
            let f = |x: &Element| eng.transport(x, kind, 8).unwrap();
            for x in &pool {
                for y in &pool {
                    let sum = x.boxplus(y);
                    if !sum.is_omega() {
                        assert_eq!(f(&sum), f(x).boxplus(&f(y)), "{x} + {y}");
                    }
                    let prod = eng.boxtimes(x, y).unwrap();
                    let fprod = eng.boxtimes(&f(x), &f(y)).unwrap();
                    if !prod.is_omega() && !fprod.is_omega() {
                        assert_eq!(f(&prod), fprod, "{x} * {y}");
                    }
                }
            }
        }
    }
}

#[test]
fn roots_transport_to_every_flavor() {
    let o = fixtures::triple().unwrap();
    let eng = Engine::new(&o);
    let p = chain_map_property(&eng, Filtration::Unfiltered).unwrap();
    let s = triangle_family(&eng, 0, Filtration::Unfiltered).unwrap();
    let t = triangle_family(&eng, 1, Filtration::Unfiltered).unwrap();
    for kind in [Transport::Filter, Transport::FilterU, Transport::Unit] {
        let pt = eng.transport_property(&p, kind, 8).unwrap();
        let st = eng.transport(&s, kind, 8).unwrap();
        let tt = eng.transport(&t, kind, 8).unwrap();
        let val = eng.eval_property(&pt, &st).unwrap();
        let mut c = FiniteComplex::closure(&eng, &[tt], 4, 8).unwrap();
        assert!(c.is_boundary(&eng, &val).unwrap(), "{kind:?}: {val}");
    }
}

#[test]
fn a_non_root_stays_a_non_root_after_the_unit() {
    let o = fixtures::triple().unwrap();
    let eng = Engine::new(&o);
    let p = chain_map_property(&eng, Filtration::Unfiltered).unwrap();
    let s = triangle_family(&eng, 0, Filtration::Unfiltered).unwrap();
    let (w, c) = s.terms().next().unwrap();
    let half = eng.term(c, w).unwrap();
    let t = triangle_family(&eng, 1, Filtration::Unfiltered).unwrap();
    let mut c = FiniteComplex::closure(&eng, std::slice::from_ref(&t), 4, 0).unwrap();
    let val = eng.eval_property(&p, &half).unwrap();
    assert!(!c.is_boundary(&eng, &val).unwrap());
    let pu = eng.transport_property(&p, Transport::Unit, 0).unwrap();
    let vu = eng.eval_property(&pu, &eng.with_unit(&half).unwrap()).unwrap();
    let tu = eng.with_unit(&t).unwrap();
    let mut cu = FiniteComplex::closure(&eng, &[tu], 4, 0).unwrap();
    assert!(!cu.is_boundary(&eng, &vu).unwrap());
}

#[test]
fn unit_symbol_is_a_right_identity() {
    for o in [
        Box::new(fixtures::t_mm().unwrap()) as Box<dyn Oracle>,
        Box::new(fixtures::triple().unwrap()),
    ] {
        let eng = Engine::new(o.as_ref());
        let (a, b) = (lab("a"), lab("b"));
        let s = eng.canonical_differential(&a, &b, Filtration::Unfiltered).unwrap();
        let x = eng.unit_symbol(&a, &b, Filtration::Unfiltered).unwrap();
        let unit = eng.unit_symbol(&a, &b, Filtration::Unfiltered).unwrap();
        for (l, r) in [(&s, &x), (&x, &s), (&s, &s)] {
            let with = eng.product(&[l.clone(), unit.clone(), r.clone()]).unwrap();
            let without = eng.boxtimes(l, r).unwrap();
            assert_eq!(with, without, "{l} | {r}");
        }
    }
}
