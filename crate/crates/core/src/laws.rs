//! Seeded random oracles and the algebraic law suite.
//!
//! Random oracles live on one pair of labels with up to three points. Every
//! nonempty index-one bigon gets a parity and an `n_w` stratum in `{0, 1}`;
//! index-two bigons carry every broken pair as an end. Samples whose
//! differential does not square to zero in some stratum are rejected, so
//! every generated table is consistent.

use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::evaluation::{mor_comp, mor_sum, Flavor, MorElement};
use crate::oracle::{DeclarativeOracle, EndRecord, Oracle, PointedQuery};
use crate::semialgebra::{Coeff, Element, Engine};
use crate::types::{
    multiplicity_profiles, BoundaryCondition, Deco, Filtration, Label, Point, PolygonSymbol, PreGenerator, Vertex,
};

/// One violated law instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawFailure {
    pub law: &'static str,
    pub detail: String,
}

impl fmt::Display for LawFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.law, self.detail)
    }
}

/// Tally of checked instances per law.
#[derive(Clone, Debug, Default)]
pub struct LawReport {
    pub checked: std::collections::BTreeMap<&'static str, usize>,
    pub failures: Vec<LawFailure>,
}

impl LawReport {
    fn check(&mut self, law: &'static str, ok: bool, detail: impl FnOnce() -> String) {
        *self.checked.entry(law).or_insert(0) += 1;
        if !ok {
            self.failures.push(LawFailure { law, detail: detail() });
        }
    }

    pub fn merge(&mut self, other: LawReport) {
        for (k, v) in other.checked {
            *self.checked.entry(k).or_insert(0) += v;
        }
        self.failures.extend(other.failures);
    }
}

/// Names of the laws in report order.
pub const LAWS: [&str; 12] = [
    "plus-commutative",
    "plus-associative",
    "times-associative",
    "times-left-distributive",
    "times-right-distributive",
    "scalar-compatible",
    "multiplicity-additive",
    "diff-squared",
    "leibniz-sum",
    "leibniz-product",
    "ev-of-boundary",
    "ev-morphism",
];

fn bigon(a: &Label, b: &Label, mu: u32, f: Filtration) -> PolygonSymbol {
    let bc = BoundaryCondition::new(&[a.clone(), b.clone()]).expect("distinct labels");
    PolygonSymbol::new(bc, mu, f).expect("bigon index at most two")
}

/// Pointed bigon query with `x` at `(b, a)` and `y` at `(a, b)`.
fn bigon_query(a: &Label, b: &Label, mu: u32, f: Filtration, x: &Point, y: &Point) -> PointedQuery {
    let g = PreGenerator::from_slots(
        &[a.clone(), b.clone()],
        mu,
        f,
        vec![Deco::Pointed(x.clone()), Deco::Pointed(y.clone())],
    )
    .expect("points lie on the pair");
    crate::semialgebra::pointed_query(&g).expect("fully pointed")
}

/// A random consistent bigon oracle with `n_w` strata `0` and `1`.
pub fn random_oracle(rng: &mut impl Rng) -> DeclarativeOracle {
    let a = Label::new("a").expect("label");
    let b = Label::new("b").expect("label");
    loop {
        let n = rng.gen_range(1..=3);
        let pts: Vec<Point> = (1..=n)
            .map(|i| Point::new(&format!("x{i}"), a.clone(), b.clone()).expect("point"))
            .collect();
        // edge[x][y] = Some((count, stratum)) for the bigon x -> y; x < y keeps it acyclic.
        let mut edge = vec![vec![None; n]; n];
        for (x, row) in edge.iter_mut().enumerate() {
            for cell in row.iter_mut().skip(x + 1) {
                if rng.gen_bool(0.6) {
                    *cell = Some((rng.gen_bool(0.6), rng.gen_range(0..=1u32)));
                }
            }
        }
        let mut consistent = true;
        for x in 0..n {
            for y in 0..n {
                let mut parity = [false; 3];
                for (w, row) in edge.iter().enumerate() {
                    if let (Some((c1, n1)), Some((c2, n2))) = (edge[x][w], row[y]) {
                        parity[(n1 + n2) as usize] ^= c1 && c2;
                    }
                }
                consistent &= parity.iter().all(|p| !p);
            }
        }
        if !consistent {
            continue;
        }
        let mut o = DeclarativeOracle::new(vec![a.clone(), b.clone()], pts.clone());
        o.set_max_stratum(1);
        for x in 0..n {
            for y in 0..n {
                if let Some((c, k)) = edge[x][y] {
                    for f in [Filtration::Unfiltered, Filtration::Nw(k)] {
                        o.declare_count(bigon_query(&a, &b, 1, f, &pts[x], &pts[y]), c)
                            .expect("fresh entry");
                    }
                }
                for f in [
                    Filtration::Unfiltered,
                    Filtration::Nw(0),
                    Filtration::Nw(1),
                    Filtration::Nw(2),
                ] {
                    let mut ends = Vec::new();
                    for w in 0..n {
                        if let (Some((_, n1)), Some((_, n2))) = (edge[x][w], edge[w][y]) {
                            let nw = match f {
                                Filtration::Nw(k) if n1 + n2 != k => continue,
                                Filtration::Nw(_) => Some((n2, n1)),
                                _ => None,
                            };
                            ends.push(EndRecord {
                                cut: (0, 1),
                                point: pts[w].clone(),
                                maslov: (1, 1),
                                nw,
                            });
                        }
                    }
                    if !ends.is_empty() {
                        o.declare_ends(bigon_query(&a, &b, 2, f, &pts[x], &pts[y]), ends)
                            .expect("fresh entry");
                    }
                }
            }
        }
        return o;
    }
}

/// Generators, chain and cochain symbols and coefficient atoms of a bigon
/// oracle, over the given filtrations.
pub fn element_pool(eng: &Engine, filtrations: &[Filtration]) -> Result<(Vec<Element>, Vec<Coeff>)> {
    let o = eng.oracle();
    let labels = o.labels();
    let mut elems = Vec::new();
    let mut coeffs = vec![Coeff::one(), Coeff::u_pow(1)];
    for (i, a) in labels.iter().enumerate() {
        for b in &labels[i + 1..] {
            let pts = o.points(a, b);
            for &f in filtrations {
                for mu in 0..=2 {
                    for (p, q) in [(a, b), (b, a)] {
                        let v = Vertex::new(p.clone(), q.clone())?;
                        let bc = BoundaryCondition::new(&[p.clone(), q.clone()])?;
                        let out = bc.index_of(&v).expect("own vertex");
                        let space = bigon(p, q, mu, f);
                        for y in &pts {
                            for (din, dout) in [
                                (Deco::FlowIn, Deco::FlowOut(y.clone())),
                                (Deco::FlowIn, Deco::Pointed(y.clone())),
                            ] {
                                if !dout.is_output() && space.dimension() > 0 {
                                    continue;
                                }
                                let mut decos = vec![din.clone(); 2];
                                decos[out] = dout;
                                let g = PreGenerator::new(space.clone(), decos)?;
                                let x = eng.generator(&g)?;
                                if !x.is_zero() {
                                    elems.push(x);
                                }
                            }
                            for x in &pts {
                                let mut decos = vec![Deco::Pointed(x.clone()); 2];
                                decos[out] = Deco::FlowOut(y.clone());
                                let e = eng.generator(&PreGenerator::new(space.clone(), decos.clone())?)?;
                                if !e.is_zero() {
                                    elems.push(e);
                                }
                                decos[out] = Deco::Pointed(y.clone());
                                let c = eng.coeff_atom(&PreGenerator::new(space.clone(), decos)?)?;
                                if !c.is_zero() && !c.is_one() {
                                    coeffs.push(c);
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok((elems, coeffs))
}

fn random_element(eng: &Engine, rng: &mut impl Rng, pool: &[Element], coeffs: &[Coeff]) -> Result<Element> {
    let Some(first) = pool.choose(rng) else {
        return Ok(Element::zero());
    };
    let r: f64 = rng.gen();
    let mut x = first.clone();
    if r < 0.1 {
        return Ok(Element::zero());
    }
    if r < 0.5 {
        // A ⊞-sum of pool items sharing a profile.
        for _ in 0..rng.gen_range(0..3) {
            let y = pool.choose(rng).expect("nonempty").clone();
            let s = x.boxplus(&y);
            if !s.is_omega() || rng.gen_bool(0.1) {
                x = s;
            }
        }
    } else if r < 0.8 {
        let y = pool.choose(rng).expect("nonempty");
        let p = eng.boxtimes(&x, y)?;
        if !p.is_omega() || rng.gen_bool(0.1) {
            x = p;
        }
    }
    if rng.gen_bool(0.3) {
        let c = coeffs.choose(rng).expect("nonempty");
        x = eng.scalar(c, &x)?;
    }
    Ok(x)
}

fn defined(x: &MorElement) -> bool {
    !x.is_omega()
}

/// Runs every law on `samples` random triples drawn from the oracle's pool.
pub fn check_laws(eng: &Engine, rng: &mut impl Rng, samples: usize) -> Result<LawReport> {
    let mut rep = LawReport::default();
    let filtrations = [Filtration::Unfiltered, Filtration::Nw(0), Filtration::Nw(1)];
    let (pool, coeffs) = element_pool(eng, &filtrations)?;
    if pool.is_empty() {
        return Ok(rep);
    }
    for _ in 0..samples {
        let x = random_element(eng, rng, &pool, &coeffs)?;
        let y = random_element(eng, rng, &pool, &coeffs)?;
        let z = random_element(eng, rng, &pool, &coeffs)?;
        let c = coeffs.choose(rng).expect("nonempty").clone();

        rep.check("plus-commutative", x.boxplus(&y) == y.boxplus(&x), || {
            format!("{x} | {y}")
        });
        rep.check(
            "plus-associative",
            x.boxplus(&y).boxplus(&z) == x.boxplus(&y.boxplus(&z)),
            || format!("{x} | {y} | {z}"),
        );
        let xy = eng.boxtimes(&x, &y)?;
        let yz = eng.boxtimes(&y, &z)?;
        let (l, r) = (eng.boxtimes(&xy, &z)?, eng.boxtimes(&x, &yz)?);
        rep.check("times-associative", l == r, || format!("{x} | {y} | {z}: {l} vs {r}"));
        let ypz = y.boxplus(&z);
        if !ypz.is_omega() {
            let l = eng.boxtimes(&x, &ypz)?;
            let r = xy.boxplus(&eng.boxtimes(&x, &z)?);
            let skip = l.is_omega() || r.is_omega();
            rep.check("times-left-distributive", skip || l == r, || {
                format!("{x} | {y} | {z}: {l} vs {r}")
            });
            let l = eng.boxtimes(&ypz, &x)?;
            let r = eng.boxtimes(&y, &x)?.boxplus(&eng.boxtimes(&z, &x)?);
            let skip = l.is_omega() || r.is_omega();
            rep.check("times-right-distributive", skip || l == r, || {
                format!("{x} | {y} | {z}: {l} vs {r}")
            });
        }
        let cx = eng.scalar(&c, &x)?;
        let cy = eng.scalar(&c, &y)?;
        let cxy = eng.scalar(&c, &xy)?;
        rep.check(
            "scalar-compatible",
            eng.boxtimes(&cx, &y)? == cxy && eng.boxtimes(&x, &cy)? == cxy,
            || format!("{c} | {x} | {y}"),
        );
        for (w1, _) in x.terms() {
            for (w2, _) in y.terms() {
                let joined: Vec<PreGenerator> = w1.iter().chain(w2).cloned().collect();
                let (i1, o1) = multiplicity_profiles(w1);
                let (i2, o2) = multiplicity_profiles(w2);
                let (i, o) = multiplicity_profiles(&joined);
                rep.check(
                    "multiplicity-additive",
                    i == i1.merged(&i2) && o == o1.merged(&o2),
                    || format!("{w1:?} | {w2:?}"),
                );
            }
        }
        let dx = eng.diff(&x)?;
        rep.check("diff-squared", dx.is_omega() || eng.diff(&dx)?.is_zero(), || {
            format!("{x}")
        });
        if !ypz.is_omega() {
            let l = eng.diff(&ypz)?;
            let r = eng.diff(&y)?.boxplus(&eng.diff(&z)?);
            rep.check("leibniz-sum", l == r, || format!("{y} | {z}: {l} vs {r}"));
        }
        if !xy.is_omega() {
            let l = eng.diff(&xy)?;
            let r = eng.boxtimes(&dx, &y)?.boxplus(&eng.boxtimes(&x, &eng.diff(&y)?)?);
            rep.check("leibniz-product", l == r, || format!("{x} | {y}: {l} vs {r}"));
        }
        for g in [&x, &y] {
            if is_generator_sum(g)
                && one_flavor(g)
                && g.terms().any(|(w, _)| w.iter().any(|f| f.space().dimension() == 1))
            {
                let d = eng.diff(g)?;
                if !d.is_omega() && all_zero_dim(&d) {
                    let e = eng.ev(&d)?;
                    rep.check("ev-of-boundary", e.is_zero(), || format!("{g}: {e}"));
                }
            }
        }
        if is_generator_sum(&x)
            && is_generator_sum(&y)
            && all_zero_dim(&x)
            && all_zero_dim(&y)
            && one_flavor(&x)
            && one_flavor(&y)
        {
            let (ex, ey) = (eng.ev(&x)?, eng.ev(&y)?);
            let s = x.boxplus(&y);
            if !s.is_omega() {
                let l = eng.ev(&s)?;
                let r = mor_sum(&ex, &ey);
                if defined(&l) && defined(&r) {
                    rep.check("ev-morphism", l == r, || format!("sum {x} | {y}"));
                }
            }
            if !xy.is_omega() {
                let l = eng.ev(&xy)?;
                let r = mor_comp(&ey, &ex)?;
                if defined(&l) && defined(&r) {
                    rep.check("ev-morphism", l == r, || format!("product {x} | {y}: {l} vs {r}"));
                }
            }
        }
    }
    Ok(rep)
}

/// Every factor of every word has exactly one output or is linked.
fn is_generator_sum(x: &Element) -> bool {
    !x.is_omega()
        && x.terms().all(|(w, _)| {
            w.last().is_some_and(|g| !g.flow_out().is_empty())
                && w.iter().enumerate().all(|(i, g)| {
                    g.decos().iter().filter(|d| d.is_output()).count() == 1
                        && g.decos().iter().any(Deco::is_input)
                        && (i == 0 || g.has_linked_in())
                })
        })
}

/// Every factor of every term evaluates in the same flavor.
fn one_flavor(x: &Element) -> bool {
    let mut flavors = x
        .terms()
        .flat_map(|(w, _)| w.iter().map(|g| Flavor::of(g.space().filtration())));
    flavors.next().map_or(true, |f| flavors.all(|g| g == f))
}

fn all_zero_dim(x: &Element) -> bool {
    x.terms().all(|(w, _)| w.iter().all(|g| g.space().dimension() == 0))
}

/// The full suite: the given oracles plus `random` seeded random oracles.
pub fn run_suite(oracles: &[&dyn Oracle], random: usize, samples: usize, seed: u64) -> Result<LawReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = LawReport::default();
    for o in oracles {
        rep.merge(check_laws(&Engine::new(*o), &mut rng, samples)?);
    }
    for _ in 0..random {
        let o = random_oracle(&mut rng);
        rep.merge(check_laws(&Engine::new(&o), &mut rng, samples)?);
    }
    Ok(rep)
}
