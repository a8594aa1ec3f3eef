//! Finite complexes, relations, matrix models and Floer recovery.

use symhom::homology::{matrix_model_check, relation_set_check, rewrite, Rule};
use symhom::verify::{ex2_generators, ex2_model, ex2_rules};
use symhom::{fixtures, Element, Engine, FiniteComplex, Flavor, Label, Mat, MatrixModel, Poly2, Variant};

fn lab(s: &str) -> Label {
    Label::new(s).unwrap()
}

#[test]
fn empty_seeds_give_an_empty_complex() {
    let o = fixtures::t_ml().unwrap();
    let eng = Engine::new(&o);
    let mut c = FiniteComplex::closure(&eng, &[], 4, 0).unwrap();
    assert!(c.is_empty());
    assert_eq!(c.homology_rank(), 0);
    assert!(c.is_boundary(&eng, &Element::zero()).unwrap());
}

#[test]
fn single_generator_homology() {
    let o = fixtures::t_ml().unwrap();
    let eng = Engine::new(&o);
    let x = eng.parse("M[0;(a,b)](.v,^x)").unwrap();
    let x2 = eng.product(&[x.clone(), x.clone()]).unwrap();
    let mut c = FiniteComplex::closure(&eng, std::slice::from_ref(&x), 4, 0).unwrap();
    assert_eq!(c.len(), 2);
    assert_eq!(c.homology_rank(), 2);
    assert!(c.squares_to_zero());
    assert!(c.is_cycle(&eng, &x2).unwrap());
    assert!(!c.verify_relation(&eng, &x2, &x).unwrap());
    assert!(c
        .verify_relation(&eng, &x2, &eng.product(&[x2.clone(), x.clone()]).unwrap())
        .unwrap());
    let rules: Vec<Rule> = vec![(vec![0, 0, 0], Some(vec![0, 0]))];
    assert!(relation_set_check(&eng, &[x], &["X"], &rules, 4).unwrap().exact());
}

#[test]
fn a_missing_relation_is_reported() {
    let o = fixtures::t_mm().unwrap();
    let eng = Engine::new(&o);
    let gens = ex2_generators(&eng).unwrap();
    let mut rules = ex2_rules();
    rules.retain(|(l, _)| l != &vec![2, 2]);
    let r = relation_set_check(&eng, &gens, &["X01", "X02", "X12"], &rules, 3).unwrap();
    assert!(!r.exact());
    assert!(relation_set_check(&eng, &gens, &["X01", "X02", "X12"], &ex2_rules(), 4)
        .unwrap()
        .exact());
}

#[test]
fn rewriting_to_normal_form() {
    let rules = ex2_rules();
    assert_eq!(rewrite(&[0, 0, 0, 0], &rules), Some(vec![0, 0]));
    assert_eq!(rewrite(&[2, 1, 1, 1], &rules), Some(vec![2, 1]));
    assert_eq!(rewrite(&[0, 2, 1], &rules), Some(vec![0, 2, 1]));
    assert_eq!(rewrite(&[0, 1, 2], &rules), None);
}

#[test]
fn corrupted_matrix_entry_is_reported() {
    let o = fixtures::t_mm().unwrap();
    let eng = Engine::new(&o);
    let gens = ex2_generators(&eng).unwrap();
    let clean = matrix_model_check(&eng, &gens, &ex2_model(), 3).unwrap();
    assert!(clean.failed_relations.is_empty());
    let mut bad = ex2_model();
    bad.mats[2].set(0, 2, Poly2::ZERO);
    bad.mats[2].set(3, 0, Poly2::ONE);
    let r = matrix_model_check(&eng, &gens, &bad, 3).unwrap();
    assert!(!r.failed_relations.is_empty());
}

#[test]
fn matrix_model_of_a_nilpotent_generator() {
    let o = fixtures::t_ml().unwrap();
    let eng = Engine::new(&o);
    let x = eng.parse("M[0;(a,b)](.v,^x)").unwrap();
    let wrong = MatrixModel {
        names: vec!["X".into()],
        mats: vec![Mat::from_bits(&[&[0, 1], &[0, 0]])],
    };
    let r = matrix_model_check(&eng, &[x], &wrong, 3).unwrap();
    assert!(!r.passes());
    assert_eq!(r.symbol_dims, vec![1, 2, 2]);
    assert_eq!(r.matrix_dims, vec![1, 1, 1]);
}

#[test]
fn recovery_is_a_bijection_on_generators() {
    for o in [
        fixtures::t_ml().unwrap(),
        fixtures::t_mm().unwrap(),
        fixtures::t_mm_w_in_b1().unwrap(),
    ] {
        let eng = Engine::new(&o);
        for v in [Variant::Homology, Variant::Cohomology] {
            for f in [Flavor::Hat, Flavor::KnotHat] {
                let r = eng.recover_cf(&lab("a"), &lab("b"), v, f).unwrap();
                assert!(r.commutes(), "{r}");
                assert!(r.bijective);
            }
        }
    }
}

#[test]
fn recovery_sees_a_nonzero_differential() {
    let o = fixtures::triple().unwrap();
    let eng = Engine::new(&o);
    let fc = eng.build_floer_complex(&lab("a"), &lab("b"), Flavor::Hat).unwrap();
    assert!(!fc.d.is_zero());
    let r = eng
        .recover_cf(&lab("a"), &lab("b"), Variant::Homology, Flavor::Hat)
        .unwrap();
    assert_eq!(r.symbol, fc.d);
    let r = eng
        .recover_cf(&lab("a"), &lab("b"), Variant::Cohomology, Flavor::Hat)
        .unwrap();
    assert_eq!(r.symbol, fc.d.transpose());
}
