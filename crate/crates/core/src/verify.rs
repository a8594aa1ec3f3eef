//! Reproducible checks on the shipped fixtures, reported as
//! `CHECK <name> PASS|FAIL <detail>` lines.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::evaluation::{mor_comp, mor_sum, Flavor, MorElement, MorMap};
use crate::fixtures;
use crate::homology::{matrix_model_check, relation_set_check, FiniteComplex, MatrixModel, Rule, Variant};
use crate::laws;
use crate::morphisms::{PItem, PropertyPolynomial, Transport};
use crate::oracle::{check_oracle, Oracle, TorusOracle};
use crate::poly::Mat;
use crate::semialgebra::{Element, Engine};
use crate::types::{BoundaryCondition, Deco, Filtration, Label, Point, PolygonSymbol, PreGenerator};

/// One line of a report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

/// An ordered list of checks.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn push(&mut self, name: &str, pass: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.to_string(),
            pass,
            detail: detail.into(),
        });
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let verdict = if c.pass { "PASS" } else { "FAIL" };
            writeln!(f, "CHECK {} {verdict} {}", c.name, c.detail)?;
        }
        Ok(())
    }
}

/// Boundary conditions on distinct labels of the oracle, up to `max_arity`.
pub fn boundary_conditions(o: &dyn Oracle, max_arity: usize) -> Result<Vec<BoundaryCondition>> {
    let labels = o.labels();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut stack: Vec<Vec<Label>> = labels.iter().map(|l| vec![l.clone()]).collect();
    while let Some(seq) = stack.pop() {
        if seq.len() >= 2 {
            let bc = BoundaryCondition::new(&seq)?;
            if seen.insert(bc.labels().to_vec()) {
                out.push(bc);
            }
        }
        if seq.len() < max_arity {
            for l in labels.iter().filter(|l| !seq.contains(l)) {
                let mut next = seq.clone();
                next.push(l.clone());
                stack.push(next);
            }
        }
    }
    out.sort_by(|a, b| a.labels().cmp(b.labels()));
    Ok(out)
}

/// Every decoration of `space` in which each vertex gets one of the options
/// produced by `options` for its points.
fn decorations(
    eng: &Engine,
    space: &PolygonSymbol,
    options: impl Fn(&[Point]) -> Vec<Deco>,
) -> Result<Vec<PreGenerator>> {
    let mut partial: Vec<Vec<Deco>> = vec![Vec::new()];
    for v in space.boundary().vertices() {
        let opts = options(&eng.oracle().points(&v.incoming, &v.outgoing));
        partial = partial
            .into_iter()
            .flat_map(|p| {
                opts.iter().map(move |d| {
                    let mut q = p.clone();
                    q.push(d.clone());
                    q
                })
            })
            .collect();
    }
    partial
        .into_iter()
        .map(|d| PreGenerator::new(space.clone(), d))
        .collect()
}

/// All fully pointed pre-generators of a space.
pub fn fully_pointed(eng: &Engine, space: &PolygonSymbol) -> Result<Vec<PreGenerator>> {
    decorations(eng, space, |pts| pts.iter().cloned().map(Deco::Pointed).collect())
}

/// All generators of a space: one flow-out, at least one flow-in, the other
/// vertices pointed.
pub fn generators(eng: &Engine, space: &PolygonSymbol) -> Result<Vec<PreGenerator>> {
    let all = decorations(eng, space, |pts| {
        let mut opts = vec![Deco::FlowIn];
        for p in pts {
            opts.push(Deco::Pointed(p.clone()));
            opts.push(Deco::FlowOut(p.clone()));
        }
        opts
    })?;
    Ok(all
        .into_iter()
        .filter(|g| g.kind() == crate::types::Kind::Generator)
        .collect())
}

/// Fully pointed zero-dimensional symbols up to Maslov index `max_maslov`
/// that reduce to neither 0 nor 1.
pub fn free_atoms(eng: &Engine, max_arity: usize, max_maslov: u32) -> Result<Vec<PreGenerator>> {
    let mut out = Vec::new();
    for bc in boundary_conditions(eng.oracle(), max_arity)? {
        for mu in 0..=max_maslov {
            let Ok(space) = PolygonSymbol::new(bc.clone(), mu, Filtration::Unfiltered) else {
                continue;
            };
            if space.dimension() != 0 {
                continue;
            }
            for g in fully_pointed(eng, &space)? {
                let c = eng.coeff_atom(&g)?;
                if !c.is_zero() && !c.is_one() {
                    out.push(g);
                }
            }
        }
    }
    Ok(out)
}

fn label(name: &str) -> Result<Label> {
    Label::new(name)
}

fn point(o: &dyn Oracle, a: &Label, b: &Label, id: &str) -> Result<Point> {
    o.points(a, b)
        .into_iter()
        .find(|p| p.id() == id)
        .ok_or_else(|| Error::Unsupported(format!("no point {id} on ({a},{b})")))
}

/// `M^mu(flow-in, y flow-out)` for the pair `(a, b)`.
fn bigon_generator(eng: &Engine, a: &Label, b: &Label, mu: u32, y: &Point) -> Result<Element> {
    eng.generator(&PreGenerator::from_slots(
        &[a.clone(), b.clone()],
        mu,
        Filtration::Unfiltered,
        vec![Deco::FlowIn, Deco::FlowOut(y.clone())],
    )?)
}

fn power(eng: &Engine, x: &Element, k: usize) -> Result<Element> {
    eng.product(&vec![x.clone(); k])
}

fn dims(v: &[usize]) -> String {
    format!("({})", v.iter().map(usize::to_string).collect::<Vec<_>>().join(","))
}

/// The single-generator example on a meridian and a longitude.
pub fn verify_ex1(o: &dyn Oracle, max_len: usize) -> Result<Report> {
    let eng = Engine::new(o);
    let mut rep = Report::default();
    let (a, b) = (label("a")?, label("b")?);
    let atoms = free_atoms(&eng, 2, 2)?;
    rep.push(
        "ex1.coefficients",
        atoms.is_empty(),
        format!("{} free atoms", atoms.len()),
    );

    let x = bigon_generator(&eng, &a, &b, 0, &point(o, &a, &b, "x")?)?;
    let x2 = power(&eng, &x, 2)?;
    let x3 = power(&eng, &x, 3)?;
    let sum = x3.boxplus(&x2);
    rep.push("ex1.cube-equals-square", sum.is_zero(), format!("X^3 + X^2 = {sum}"));

    let seeds = [x.clone()];
    let mut c = FiniteComplex::closure(&eng, &seeds, max_len, 0)?;
    let h = c.homology_rank();
    rep.push(
        "ex1.homology-rank",
        h == 2 && c.rank_d() == 0,
        format!("rank {h}, rank d {}, basis {}", c.rank_d(), c.len()),
    );
    let rel = c.verify_relation(&eng, &x3, &x2)?;
    rep.push("ex1.relation", rel, "X^3 = X^2");
    let bogus = c.verify_relation(&eng, &x2, &x)?;
    rep.push("ex1.non-relation", !bogus, "X^2 = X does not hold");

    let model = MatrixModel {
        names: vec!["X".into()],
        mats: vec![Mat::from_bits(&[&[1, 1, 0], &[0, 0, 1], &[0, 0, 0]])],
    };
    let m = matrix_model_check(&eng, &seeds, &model, 6)?;
    rep.push(
        "ex1.matrix-model",
        m.passes(),
        format!("symbol {} matrix {}", dims(&m.symbol_dims), dims(&m.matrix_dims)),
    );
    let rules: Vec<Rule> = vec![(vec![0, 0, 0], Some(vec![0, 0]))];
    let r = relation_set_check(&eng, &seeds, &["X"], &rules, max_len)?;
    rep.push(
        "ex1.relation-set",
        r.exact(),
        format!(
            "{} violated, {} normal forms, {} independent",
            r.violated.len(),
            r.normal_forms,
            r.independent
        ),
    );
    Ok(rep)
}

/// Generators of the canceling-pair example, in the order `X01, X02, X12`.
pub fn ex2_generators(eng: &Engine) -> Result<Vec<Element>> {
    let (a, b) = (label("a")?, label("b")?);
    let x1 = point(eng.oracle(), &a, &b, "x1")?;
    let x2 = point(eng.oracle(), &a, &b, "x2")?;
    Ok(vec![
        bigon_generator(eng, &a, &b, 0, &x1)?,
        bigon_generator(eng, &a, &b, 0, &x2)?,
        bigon_generator(eng, &a, &b, 1, &x2)?,
    ])
}

/// The nine stated relations of the canceling-pair example.
pub fn ex2_rules() -> Vec<Rule> {
    vec![
        (vec![0, 0, 0], Some(vec![0, 0])),
        (vec![1, 1, 1], Some(vec![1, 1])),
        (vec![2, 2], None),
        (vec![2, 0], None),
        (vec![1, 0], None),
        (vec![0, 1], None),
        (vec![2, 1, 1], Some(vec![2, 1])),
        (vec![0, 0, 2], Some(vec![0, 2])),
        (vec![1, 2], None),
    ]
}

/// The 6x6 matrices `B`, `C`, `D` of the canceling-pair example.
pub fn ex2_model() -> MatrixModel {
    let a = [[1u8, 1, 0], [0, 0, 1], [0, 0, 0]];
    let mut b = vec![vec![0u8; 6]; 6];
    let mut c = vec![vec![0u8; 6]; 6];
    for i in 0..3 {
        for j in 0..3 {
            b[i][j] = a[i][j];
            c[i + 3][j + 3] = a[i][j];
        }
    }
    let mut d = vec![vec![0u8; 6]; 6];
    for (i, j) in [(1, 3), (4, 4), (4, 5), (4, 6), (5, 4), (5, 5), (5, 6)] {
        d[i - 1][j - 1] = 1;
    }
    let mat = |m: &[Vec<u8>]| Mat::from_bits(&m.iter().map(Vec::as_slice).collect::<Vec<_>>());
    MatrixModel {
        names: vec!["X01".into(), "X02".into(), "X12".into()],
        mats: vec![mat(&b), mat(&c), mat(&d)],
    }
}

/// The three-generator example on two meridians.
pub fn verify_ex2(o: &dyn Oracle, max_len: usize) -> Result<Report> {
    let eng = Engine::new(o);
    let mut rep = Report::default();
    let atoms = free_atoms(&eng, 2, 2)?;
    rep.push(
        "ex2.coefficients",
        atoms.len() == 1,
        format!(
            "{} free atoms: {}",
            atoms.len(),
            atoms.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
        ),
    );
    let gens = ex2_generators(&eng)?;
    let names = ["X01", "X02", "X12"];
    let mut c = FiniteComplex::closure(&eng, &gens, max_len, 0)?;
    let mut held = 0;
    let rules = ex2_rules();
    for (lhs, rhs) in &rules {
        let l = eng.product(&lhs.iter().map(|&k| gens[k].clone()).collect::<Vec<_>>())?;
        let r = match rhs {
            Some(s) => eng.product(&s.iter().map(|&k| gens[k].clone()).collect::<Vec<_>>())?,
            None => Element::zero(),
        };
        if c.verify_relation(&eng, &l, &r)? {
            held += 1;
        }
    }
    rep.push(
        "ex2.relations",
        held == rules.len(),
        format!("{held} of {} hold", rules.len()),
    );

    let model = ex2_model();
    let mut mat_held = 0;
    for (lhs, rhs) in &rules {
        let l = model.word(lhs);
        let r = rhs.as_ref().map_or_else(|| Mat::zeros(6, 6), |s| model.word(s));
        if l == r {
            mat_held += 1;
        }
    }
    rep.push(
        "ex2.matrix-relations",
        mat_held == rules.len(),
        format!("{mat_held} of {} hold for B, C, D", rules.len()),
    );
    let m = matrix_model_check(&eng, &gens, &model, 3)?;
    rep.push(
        "ex2.matrix-model",
        m.passes(),
        format!(
            "symbol {} matrix {}; {} relation(s) failing for the matrices{}",
            dims(&m.symbol_dims),
            dims(&m.matrix_dims),
            m.failed_relations.len(),
            m.failed_relations
                .first()
                .map_or(String::new(), |f| format!(", e.g. {f}"))
        ),
    );
    let r = relation_set_check(&eng, &gens, &names, &rules, max_len)?;
    rep.push(
        "ex2.relation-set",
        r.exact(),
        format!(
            "{} violated, {} normal forms, {} independent",
            r.violated.len(),
            r.normal_forms,
            r.independent
        ),
    );
    Ok(rep)
}

/// Floer complexes of the torus diagrams.
pub fn verify_floer(t_ml: &TorusOracle, t_mm: &TorusOracle, u_bound: u32) -> Result<Report> {
    let mut rep = Report::default();
    let (a, b) = (label("a")?, label("b")?);
    let ml = Engine::new(t_ml).build_floer_complex(&a, &b, Flavor::Hat)?;
    rep.push(
        "floer.t_ml",
        ml.rank() == 1 && ml.d.is_zero(),
        format!("rank {}, d zero: {}", ml.rank(), ml.d.is_zero()),
    );
    let eng = Engine::new(t_mm);
    let mm = eng.build_floer_complex(&a, &b, Flavor::Hat)?;
    let diagram = t_mm.diagram();
    let (x1, x2) = (point(t_mm, &a, &b, "x1")?, point(t_mm, &a, &b, "x2")?);
    let xi = diagram.point_index(&x1).expect("point of the diagram");
    let yi = diagram.point_index(&x2).expect("point of the diagram");
    let bigons = diagram
        .domains(&a, &b, &x1, &x2, t_mm.bound())?
        .into_iter()
        .filter(|d| diagram.is_embedded_bigon(d, xi, yi))
        .count();
    rep.push(
        "floer.t_mm",
        mm.rank() == 2 && mm.d.is_zero() && bigons == 2,
        format!(
            "rank {}, d zero: {}, embedded bigons x1 -> x2: {bigons}",
            mm.rank(),
            mm.d.is_zero()
        ),
    );
    let u = eng.build_floer_complex(&a, &b, Flavor::U)?;
    let (free, torsion) = u.homology(u_bound)?;
    rep.push(
        "floer.t_mm-u",
        free == 2 && torsion.is_empty() && u.rank() == 2,
        format!("free rank {free}, torsion {}", torsion.len()),
    );
    Ok(rep)
}

/// Every generator of the oracle's bigon and triangle spaces up to Maslov
/// index 2.
pub fn fixture_generators(eng: &Engine) -> Result<Vec<PreGenerator>> {
    let mut out = Vec::new();
    for bc in boundary_conditions(eng.oracle(), 3)? {
        for mu in 0..=2 {
            let Ok(space) = PolygonSymbol::new(bc.clone(), mu, Filtration::Unfiltered) else {
                continue;
            };
            if space.dimension() > 1 {
                continue;
            }
            out.extend(generators(eng, &space)?);
        }
    }
    Ok(out)
}

/// The filtering morphisms commute with the differential on every generator.
pub fn verify_filter_commutes(name: &str, o: &dyn Oracle, u_bound: u32) -> Result<Report> {
    let eng = Engine::new(o);
    let mut rep = Report::default();
    let (mut checked, mut bad_w, mut bad_u) = (0, Vec::new(), Vec::new());
    for g in fixture_generators(&eng)? {
        let x = match eng.generator(&g) {
            Ok(x) => x,
            Err(Error::Unsupported(_)) => continue,
            Err(e) => return Err(e),
        };
        if x.is_zero() {
            continue;
        }
        checked += 1;
        let dx = eng.diff(&x)?;
        if eng.filter_w(&dx)? != eng.diff(&eng.filter_w(&x)?)? {
            bad_w.push(g.to_string());
        }
        if eng.filter_u(&dx, u_bound)? != eng.diff(&eng.filter_u(&x, u_bound)?)? {
            bad_u.push(g.to_string());
        }
    }
    let show = |v: &[String]| v.first().map_or(String::new(), |s| format!(", first {s}"));
    rep.push(
        &format!("filter.{name}.w"),
        bad_w.is_empty(),
        format!("{checked} generators, {} mismatches{}", bad_w.len(), show(&bad_w)),
    );
    rep.push(
        &format!("filter.{name}.u"),
        bad_u.is_empty(),
        format!("{checked} generators, {} mismatches{}", bad_u.len(), show(&bad_u)),
    );
    Ok(rep)
}

/// Per-stratum counts of the filtered bigon symbols against the domains
/// enumerated on the diagram.
pub fn verify_strata(o: &TorusOracle, u_bound: u32) -> Result<Report> {
    let eng = Engine::new(o);
    let mut rep = Report::default();
    let (a, b) = (label("a")?, label("b")?);
    let diagram = o.diagram();
    let pts = o.points(&a, &b);
    let mut mismatches = Vec::new();
    let mut compared = 0;
    for x in &pts {
        for y in &pts {
            let (xi, yi) = (
                diagram.point_index(x).expect("point of the diagram"),
                diagram.point_index(y).expect("point of the diagram"),
            );
            let mut expected = vec![0u32; u_bound as usize + 1];
            for d in diagram.domains(&a, &b, x, y, o.bound())? {
                if diagram.is_embedded_bigon(&d, xi, yi) && (d.n_w as usize) < expected.len() {
                    expected[d.n_w as usize] += 1;
                }
            }
            let g = PreGenerator::from_slots(
                &[a.clone(), b.clone()],
                1,
                Filtration::Unfiltered,
                vec![Deco::Pointed(x.clone()), Deco::FlowOut(y.clone())],
            )?;
            let sym = eng.generator(&g)?;
            let filtered = eng.filter_u(&sym, u_bound)?;
            let mut found = vec![0u32; expected.len()];
            for (w, c) in filtered.terms() {
                let k = match w.first().map(|f| f.space().filtration()) {
                    Some(Filtration::Nw(k)) => k,
                    _ => continue,
                };
                let count = eng.ct(c)?;
                if (k as usize) < found.len() && !count.is_zero() {
                    found[k as usize] += 1;
                }
            }
            let parity: Vec<u32> = expected.iter().map(|e| e % 2).collect();
            compared += 1;
            if parity != found {
                mismatches.push(format!("{x}->{y}: domains {expected:?}, symbol {found:?}"));
            }
            let w = eng.filter_w(&sym)?;
            let w_count = w.terms().count() as u32;
            if w_count != parity[0] {
                mismatches.push(format!("{x}->{y}: w-filtered {w_count}, domains {}", parity[0]));
            }
        }
    }
    rep.push(
        "filter.strata",
        mismatches.is_empty(),
        if mismatches.is_empty() {
            format!("{compared} pairs match the enumerated strata")
        } else {
            mismatches.join("; ")
        },
    );
    Ok(rep)
}

/// Recovery of Floer differentials from symbols on one torus diagram.
pub fn verify_recovery(name: &str, o: &dyn Oracle) -> Result<Report> {
    let eng = Engine::new(o);
    let mut rep = Report::default();
    let (a, b) = (label("a")?, label("b")?);
    for (variant, tag) in [(Variant::Homology, "homology"), (Variant::Cohomology, "cohomology")] {
        let r = eng.recover_cf(&a, &b, variant, Flavor::Hat)?;
        rep.push(&format!("recover.{name}.{tag}"), r.commutes(), r.to_string());
    }
    Ok(rep)
}

/// `⊞_q` over the points of the output vertex of the triangle `(a, g, b)`
/// with flow-ins at the other two vertices.
pub fn triangle_family(eng: &Engine, mu: u32, f: Filtration) -> Result<Element> {
    let (a, b, g) = (label("a")?, label("b")?, label("g")?);
    let template = PreGenerator::from_slots(
        &[a.clone(), g.clone(), b.clone()],
        mu,
        f,
        vec![Deco::FlowIn, Deco::FlowIn, Deco::FlowIn],
    )?;
    let space = template.space().clone();
    let out = space
        .boundary()
        .index_of(&crate::types::Vertex::new(a, g)?)
        .expect("vertex of the triangle");
    let mut decos = template.decos().to_vec();
    let q = eng
        .oracle()
        .points(
            &space.boundary().vertex(out).incoming,
            &space.boundary().vertex(out).outgoing,
        )
        .into_iter()
        .next()
        .ok_or_else(|| Error::Unsupported("no output points".into()))?;
    decos[out] = Deco::FlowOut(q);
    eng.family(&PreGenerator::new(space, decos)?)
}

/// The chain-map property `X ⊠ s_ag ⊞ s_ab ⊠ X ⊞ s_bg ⊠ X`.
pub fn chain_map_property(eng: &Engine, f: Filtration) -> Result<PropertyPolynomial> {
    let (a, b, g) = (label("a")?, label("b")?, label("g")?);
    let s = |p: &Label, q: &Label| eng.canonical_differential(p, q, f).map(PItem::Elem);
    Ok(PropertyPolynomial::new(vec![
        vec![PItem::Var, s(&a, &g)?],
        vec![s(&a, &b)?, PItem::Var],
        vec![s(&b, &g)?, PItem::Var],
    ]))
}

/// Floer-side residual `∂_ag F + F (∂_ab ⊗ 1) + F (1 ⊗ ∂_bg)` of a map
/// `F: CF(b, g) ⊗ CF(a, b) -> CF(a, g)`.
pub fn chain_map_residual(eng: &Engine, fmap: &MorElement, flavor: Flavor) -> Result<MorElement> {
    let (a, b, g) = (label("a")?, label("b")?, label("g")?);
    let d = |p: &Label, q: &Label| -> Result<MorElement> {
        let fc = eng.build_floer_complex(p, q, flavor)?;
        Ok(MorElement::Map(MorMap {
            src: vec![fc.complex.clone()],
            dst: Some(fc.complex),
            mat: fc.d,
        }))
    };
    let t1 = mor_comp(&d(&a, &g)?, fmap)?;
    let t2 = mor_comp(fmap, &d(&a, &b)?)?;
    let t3 = mor_comp(fmap, &d(&b, &g)?)?;
    Ok(mor_sum(&mor_sum(&t1, &t2), &t3))
}

fn mor_zero(m: &MorElement) -> bool {
    match m {
        MorElement::Zero => true,
        MorElement::Map(f) => f.mat.is_zero(),
        MorElement::Omega => false,
    }
}

/// The triangle chain-map pipeline on the triple-diagram table.
pub fn verify_triangle(o: &dyn Oracle, max_len: usize, u_bound: u32) -> Result<Report> {
    let eng = Engine::new(o);
    let mut rep = Report::default();
    let t1 = triangle_family(&eng, 1, Filtration::Unfiltered)?;
    let s = triangle_family(&eng, 0, Filtration::Unfiltered)?;
    let p = chain_map_property(&eng, Filtration::Unfiltered)?;
    let ps = eng.eval_property(&p, &s)?;
    let dt = eng.diff(&t1)?;
    rep.push(
        "triangle.boundary",
        !dt.is_zero() && dt == ps,
        format!("d(T1) = {dt}; P(s) = {ps}"),
    );
    let mut c = FiniteComplex::closure(&eng, std::slice::from_ref(&t1), max_len, u_bound)?;
    let root = c.is_boundary(&eng, &ps)?;
    rep.push("triangle.root", root, "P(s) is a boundary");

    let ev = eng.ev(&dt)?;
    rep.push("triangle.ev-boundary", mor_zero(&ev), format!("ev(d(T1)) = {ev}"));
    let fmap = eng.ev(&s)?;
    let res = chain_map_residual(&eng, &fmap, Flavor::Hat)?;
    rep.push("triangle.hat-identity", mor_zero(&res), format!("residual {res}"));
    let ev_ps = eng.ev(&ps)?;
    rep.push(
        "triangle.hat-ev",
        ev_ps == res,
        "ev(P(s)) equals the Floer-side residual",
    );

    for (kind, tag, flavor) in [
        (Transport::Filter, "knot-hat", Flavor::KnotHat),
        (Transport::FilterU, "u", Flavor::U),
    ] {
        let pt = eng.transport_property(&p, kind, u_bound)?;
        let st = eng.transport(&s, kind, u_bound)?;
        let tt = eng.transport(&t1, kind, u_bound)?;
        let val = eng.eval_property(&pt, &st)?;
        let dtt = eng.diff(&tt)?;
        rep.push(
            &format!("triangle.{tag}.boundary"),
            !val.is_omega() && val == dtt,
            format!(
                "transported P at transported s equals d of the transported family: {}",
                val == dtt
            ),
        );
        let fmap = eng.ev(&st)?;
        let res = chain_map_residual(&eng, &fmap, flavor)?;
        let ev_val = eng.ev(&val)?;
        rep.push(
            &format!("triangle.{tag}.identity"),
            mor_zero(&res) && mor_zero(&ev_val),
            format!("residual {res}; ev of transported P(s) {ev_val}"),
        );
    }
    let r = eng.recover_map(&s)?;
    rep.push("triangle.recover-map", r.commutes(), r.to_string());
    Ok(rep)
}

/// `check-oracle` on every shipped fixture and the corrupted table.
pub fn verify_oracles() -> Result<Report> {
    let mut rep = Report::default();
    let t_ml = fixtures::t_ml()?;
    let t_mm = fixtures::t_mm()?;
    let t_mm_w = fixtures::t_mm_w_in_b1()?;
    let triple = fixtures::triple()?;
    let ex1 = fixtures::ex1()?;
    let ex2 = fixtures::ex2()?;
    let shipped: [(&str, &dyn Oracle); 6] = [
        ("t_ml", &t_ml),
        ("t_mm", &t_mm),
        ("t_mm_w_in_b1", &t_mm_w),
        ("triple", &triple),
        ("ex1", &ex1),
        ("ex2", &ex2),
    ];
    for (name, o) in shipped {
        let r = check_oracle(o)?;
        rep.push(
            &format!("oracle.{name}"),
            r.is_clean(),
            format!(
                "{} spaces, {} ends, {} violations",
                r.spaces,
                r.ends,
                r.violations.len()
            ),
        );
    }
    let r = check_oracle(&fixtures::corrupted()?)?;
    rep.push(
        "oracle.corrupted",
        r.violations.len() == 1,
        format!("{} violation(s): {}", r.violations.len(), r.violations.join("; ")),
    );
    Ok(rep)
}

/// The law suite over the torus fixtures and random tables.
pub fn verify_axioms(random: usize, samples: usize, seed: u64) -> Result<Report> {
    let t_ml = fixtures::t_ml()?;
    let t_mm = fixtures::t_mm()?;
    let t_mm_w = fixtures::t_mm_w_in_b1()?;
    let triple = fixtures::triple()?;
    let r = laws::run_suite(&[&t_ml, &t_mm, &t_mm_w, &triple], random, samples, seed)?;
    let mut rep = Report::default();
    for (law, n) in &r.checked {
        let fails: Vec<_> = r.failures.iter().filter(|f| f.law == *law).collect();
        rep.push(
            &format!("axiom.{law}"),
            fails.is_empty(),
            match fails.first() {
                None => format!("{n} instances"),
                Some(f) => format!("{} of {n} failed, first: {}", fails.len(), f.detail),
            },
        );
    }
    Ok(rep)
}
