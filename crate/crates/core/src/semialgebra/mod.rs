//! The coefficient algebra and the semialgebra of decorated symbols.
//!
//! An [`Element`] is either the absorbing element `Omega` or a finite GF(2)
//! combination of coefficient-scaled ⊠-words. Words hold only pre-generators
//! that are not fully pointed; fully pointed factors live in the commutative
//! coefficient [`Coeff`]. All terms of an element share their inward and
//! outward multiplicity profiles; the empty sum is zero and matches any profile.

pub mod syntax;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::Result;
use crate::oracle::{completions, Oracle, PointedQuery};
use crate::types::{multiplicity_profiles, MultiplicityProfile, Pointing, PreGenerator};

/// An ordered ⊠-word of pre-generators.
pub type Word = Vec<PreGenerator>;

/// A product of fully pointed atoms (with repetition) and a power of `U`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    /// Sorted atoms, each fully pointed with plain pointings.
    pub atoms: Vec<PreGenerator>,
    pub u: u32,
}

impl Monomial {
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut atoms = self.atoms.clone();
        atoms.extend(other.atoms.iter().cloned());
        atoms.sort();
        Monomial {
            atoms,
            u: self.u + other.u,
        }
    }

    pub fn is_one(&self) -> bool {
        self.atoms.is_empty() && self.u == 0
    }
}

/// Element of the coefficient ring: a GF(2) sum of monomials.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coeff {
    monomials: BTreeSet<Monomial>,
}

impl Coeff {
    pub fn zero() -> Coeff {
        Coeff::default()
    }

    pub fn one() -> Coeff {
        Coeff::monomial(Monomial::default())
    }

    pub fn monomial(m: Monomial) -> Coeff {
        Coeff {
            monomials: BTreeSet::from([m]),
        }
    }

    /// A free atom; callers are responsible for applying the relations.
    pub fn atom(g: PreGenerator) -> Coeff {
        Coeff::monomial(Monomial { atoms: vec![g], u: 0 })
    }

    pub fn u_pow(k: u32) -> Coeff {
        Coeff::monomial(Monomial {
            atoms: Vec::new(),
            u: k,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.monomials.len() == 1 && self.monomials.iter().all(Monomial::is_one)
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.monomials.iter()
    }

    pub fn add_monomial(&mut self, m: Monomial) {
        if !self.monomials.remove(&m) {
            self.monomials.insert(m);
        }
    }

    pub fn add(&self, other: &Coeff) -> Coeff {
        let mut out = self.clone();
        for m in &other.monomials {
            out.add_monomial(m.clone());
        }
        out
    }

    pub fn mul(&self, other: &Coeff) -> Coeff {
        let mut out = Coeff::zero();
        for a in &self.monomials {
            for b in &other.monomials {
                out.add_monomial(a.mul(b));
            }
        }
        out
    }

    /// Largest power of `U` occurring.
    pub fn u_degree(&self) -> u32 {
        self.monomials.iter().map(|m| m.u).max().unwrap_or(0)
    }
}

type Class = (MultiplicityProfile, MultiplicityProfile);

/// A formal ⊞-sum of words. Words whose coefficient vanished stay behind as
/// ghosts so that the sum keeps its matching data; only the empty sum with no
/// ghosts matches everything. Equality, order and hashing ignore ghosts.
#[derive(Clone, Default)]
pub struct Terms {
    map: BTreeMap<Word, Coeff>,
    ghosts: BTreeSet<Word>,
}

impl Terms {
    fn class(&self) -> Option<Class> {
        self.map
            .keys()
            .chain(&self.ghosts)
            .next()
            .map(|w| multiplicity_profiles(w))
    }

    fn is_void(&self) -> bool {
        self.map.is_empty() && self.ghosts.is_empty()
    }

    /// Live terms with their coefficients, then ghosts with coefficient zero.
    fn all(&self) -> impl Iterator<Item = (&Word, Coeff)> {
        self.map
            .iter()
            .map(|(w, c)| (w, c.clone()))
            .chain(self.ghosts.iter().map(|w| (w, Coeff::zero())))
    }
}

impl PartialEq for Terms {
    fn eq(&self, other: &Self) -> bool {
        self.map == other.map
    }
}

impl Eq for Terms {}

impl PartialOrd for Terms {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Terms {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.map.cmp(&other.map)
    }
}

impl std::hash::Hash for Terms {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.map.hash(state);
    }
}

/// An element of the symbol semialgebra.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Element {
    Omega,
    Sum(Terms),
}

impl Default for Element {
    fn default() -> Self {
        Element::zero()
    }
}

impl Element {
    /// The empty sum, neutral for ⊞ and absorbing for ⊠.
    pub fn zero() -> Element {
        Element::Sum(Terms::default())
    }

    /// The zero `0 • word`, which keeps the matching data of `word`.
    pub fn zero_like(word: &[PreGenerator]) -> Element {
        Element::Sum(Terms {
            map: BTreeMap::new(),
            ghosts: BTreeSet::from([word.to_vec()]),
        })
    }

    pub fn is_omega(&self) -> bool {
        matches!(self, Element::Omega)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Element::Sum(t) if t.map.is_empty())
    }

    /// Terms as `(word, coefficient)` pairs; empty for `Omega`.
    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Coeff)> {
        let map = match self {
            Element::Sum(t) => Some(&t.map),
            Element::Omega => None,
        };
        map.into_iter().flat_map(|t| t.iter())
    }

    pub fn len(&self) -> usize {
        self.terms().count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Profile class; `None` for the empty sum and `Omega`.
    pub fn profiles(&self) -> Option<Class> {
        match self {
            Element::Sum(t) => t.class(),
            Element::Omega => None,
        }
    }

    /// The same element without ghosts.
    pub fn forget_ghosts(&self) -> Element {
        match self {
            Element::Sum(t) => Element::Sum(Terms {
                map: t.map.clone(),
                ghosts: BTreeSet::new(),
            }),
            Element::Omega => Element::Omega,
        }
    }

    /// Longest word length among the terms.
    pub fn max_word_len(&self) -> usize {
        self.terms().map(|(w, _)| w.len()).max().unwrap_or(0)
    }

    pub(crate) fn single(word: Word, c: Coeff) -> Element {
        if c.is_zero() {
            return Element::zero_like(&word);
        }
        Element::Sum(Terms {
            map: BTreeMap::from([(word, c)]),
            ghosts: BTreeSet::new(),
        })
    }

    /// ⊞: `Omega` absorbs, the empty sum is neutral, and otherwise the sum
    /// exists iff the profile classes agree.
    pub fn boxplus(&self, other: &Element) -> Element {
        let (Element::Sum(a), Element::Sum(b)) = (self, other) else {
            return Element::Omega;
        };
        if let (Some(p), Some(q)) = (a.class(), b.class()) {
            if p != q {
                return Element::Omega;
            }
        }
        let mut map = a.map.clone();
        let mut ghosts: BTreeSet<Word> = a.ghosts.union(&b.ghosts).cloned().collect();
        for (w, c) in &b.map {
            let s = map.get(w).map_or_else(|| c.clone(), |d| d.add(c));
            if s.is_zero() {
                map.remove(w);
                ghosts.insert(w.clone());
            } else {
                map.insert(w.clone(), s);
            }
        }
        ghosts.retain(|w| !map.contains_key(w));
        Element::Sum(Terms { map, ghosts })
    }

    /// Scalar action `f • x`.
    pub fn scalar(&self, f: &Coeff) -> Element {
        match self {
            Element::Omega => Element::Omega,
            Element::Sum(t) => {
                let mut out = Terms {
                    map: BTreeMap::new(),
                    ghosts: t.ghosts.clone(),
                };
                for (w, c) in &t.map {
                    let c = c.mul(f);
                    if c.is_zero() {
                        out.ghosts.insert(w.clone());
                    } else {
                        out.map.insert(w.clone(), c);
                    }
                }
                Element::Sum(out)
            }
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&syntax::show_element(self))
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&syntax::show_coeff(self))
    }
}

/// Juxtaposes two words, matching the flow-outs of the last factor of `x`
/// with flow-ins of the first factor of `y`. `None` is `Omega`.
pub fn word_product(x: &[PreGenerator], y: &[PreGenerator]) -> Option<Word> {
    let Some((a, xs)) = x.split_last() else {
        return Some(y.to_vec());
    };
    let outs = a.flow_out();
    if outs.is_empty() {
        return Some(x.iter().chain(y).cloned().collect());
    }
    let Some((b, ys)) = y.split_first() else {
        return Some(x.to_vec());
    };
    let q: Vec<Pointing> = outs
        .into_iter()
        .map(|p| Pointing {
            vertex: p.vertex.reversed(),
            point: p.point,
        })
        .collect();
    let b = b.k_down(&q).ok()?;
    let mut w: Word = xs.to_vec();
    w.push(a.k_up());
    w.push(b);
    w.extend(ys.iter().cloned());
    Some(w)
}

/// Pointed query of a fully decorated pre-generator whose vertices all carry points.
pub fn pointed_query(g: &PreGenerator) -> Option<PointedQuery> {
    let pts = g
        .decos()
        .iter()
        .map(|d| d.point().cloned())
        .collect::<Option<Vec<_>>>()?;
    PointedQuery::new(g.space().clone(), pts).ok()
}

/// Algebra operations that need oracle data.
#[derive(Clone, Copy)]
pub struct Engine<'a> {
    oracle: &'a dyn Oracle,
}

impl<'a> Engine<'a> {
    pub fn new(oracle: &'a dyn Oracle) -> Self {
        Engine { oracle }
    }

    pub fn oracle(&self) -> &'a dyn Oracle {
        self.oracle
    }

    /// Applies the coefficient relations to one fully pointed space: constant
    /// disks are 1, empty spaces are 0, anything else is a free variable.
    pub fn coeff_atom(&self, g: &PreGenerator) -> Result<Coeff> {
        let g = g.forget_links();
        let q =
            pointed_query(&g).ok_or_else(|| crate::Error::IncompleteDecoration(format!("{g} is not fully pointed")))?;
        if q.space.is_constant_bigon() && q.points[0] == q.points[1] && q.space.filtration().stratum().unwrap_or(0) == 0
        {
            return Ok(Coeff::one());
        }
        if self.oracle.is_empty(&q)? {
            return Ok(Coeff::zero());
        }
        Ok(Coeff::atom(g))
    }

    /// Reduces a raw product of fully pointed spaces.
    pub fn coeff_reduce(&self, atoms: &[PreGenerator]) -> Result<Coeff> {
        let mut c = Coeff::one();
        for a in atoms {
            c = c.mul(&self.coeff_atom(a)?);
            if c.is_zero() {
                break;
            }
        }
        Ok(c)
    }

    /// Re-reduces every atom of a coefficient.
    pub fn reduce_coeff(&self, c: &Coeff) -> Result<Coeff> {
        let mut out = Coeff::zero();
        for m in c.monomials() {
            let r = self.coeff_reduce(&m.atoms)?.mul(&Coeff::u_pow(m.u));
            out = out.add(&r);
        }
        Ok(out)
    }

    /// Whether a word factor is empty for every choice of its open inputs.
    pub fn factor_empty(&self, g: &PreGenerator) -> Result<bool> {
        let fixed: Vec<_> = g.decos().iter().map(|d| d.point().cloned()).collect();
        for pts in completions(self.oracle, g.space(), &fixed) {
            if !self.oracle.is_empty(&PointedQuery::new(g.space().clone(), pts)?)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Builds `c • word`, moving interior fully pointed factors into the
    /// coefficient and dropping the term if any factor is empty.
    pub fn term(&self, c: &Coeff, word: &[PreGenerator]) -> Result<Element> {
        let mut c = c.clone();
        let mut w = Vec::with_capacity(word.len());
        let last = word.len().saturating_sub(1);
        // `reach`: the output link of the last kept factor is carried through
        // the factors absorbed since. A linked input survives only if it
        // receives that link; otherwise it becomes a plain pointing.
        let mut reach = false;
        for (i, g) in word.iter().enumerate() {
            let arrived = reach && g.has_linked_in();
            if i > 0 && i < last && g.is_fully_pointed() {
                if !c.is_zero() {
                    c = c.mul(&self.coeff_atom(g)?);
                }
                reach = arrived && g.has_linked_out();
            } else {
                w.push(if g.has_linked_in() && !arrived {
                    g.unlink()
                } else {
                    g.clone()
                });
                reach = g.has_linked_out();
            }
        }
        if c.is_zero() {
            return Ok(Element::zero_like(&w));
        }
        for g in &w {
            if self.factor_empty(g)? {
                return Ok(Element::zero_like(&w));
            }
        }
        Ok(Element::single(w, c))
    }

    /// The element consisting of one pre-generator.
    pub fn generator(&self, g: &PreGenerator) -> Result<Element> {
        self.term(&Coeff::one(), std::slice::from_ref(g))
    }

    /// A pure coefficient.
    pub fn coeff(&self, c: &Coeff) -> Result<Element> {
        Ok(Element::single(Vec::new(), self.reduce_coeff(c)?))
    }

    /// ⊞ of a sequence of elements.
    pub fn sum<I: IntoIterator<Item = Element>>(items: I) -> Element {
        items.into_iter().fold(Element::zero(), |acc, x| acc.boxplus(&x))
    }

    pub fn boxplus(&self, x: &Element, y: &Element) -> Element {
        x.boxplus(y)
    }

    /// ⊠, extended bilinearly; any `Omega` pair makes the product `Omega`.
    /// The empty sum absorbs even `Omega`; zero terms still take part in
    /// matching.
    pub fn boxtimes(&self, x: &Element, y: &Element) -> Result<Element> {
        let (a, b) = match (x, y) {
            (Element::Sum(a), _) if a.is_void() => return Ok(Element::zero()),
            (_, Element::Sum(b)) if b.is_void() => return Ok(Element::zero()),
            (Element::Sum(a), Element::Sum(b)) => (a, b),
            _ => return Ok(Element::Omega),
        };
        let mut out = Element::zero();
        for (w1, c1) in a.all() {
            for (w2, c2) in b.all() {
                let Some(w) = word_product(w1, w2) else {
                    return Ok(Element::Omega);
                };
                let t = self.term(&c1.mul(&c2), &w)?;
                out = out.boxplus(&t);
                if out.is_omega() {
                    return Ok(out);
                }
            }
        }
        Ok(out)
    }

    /// ⊠ of a sequence, left to right.
    pub fn product(&self, items: &[Element]) -> Result<Element> {
        let Some((first, rest)) = items.split_first() else {
            return self.coeff(&Coeff::one());
        };
        let mut acc = first.clone();
        for x in rest {
            acc = self.boxtimes(&acc, x)?;
        }
        Ok(acc)
    }

    pub fn scalar(&self, f: &Coeff, x: &Element) -> Result<Element> {
        Ok(x.scalar(&self.reduce_coeff(f)?))
    }

    /// Re-applies every relation; idempotent.
    pub fn normalize(&self, x: &Element) -> Result<Element> {
        let Element::Sum(t) = x else {
            return Ok(Element::Omega);
        };
        let mut out = Element::zero();
        for (w, c) in t.all() {
            out = out.boxplus(&self.term(&self.reduce_coeff(&c)?, w)?);
        }
        Ok(out)
    }

    /// Parses the textual element syntax and normalizes the result.
    pub fn parse(&self, text: &str) -> Result<Element> {
        let raw = syntax::parse(text)?;
        let Some(terms) = raw else {
            return Ok(Element::Omega);
        };
        let mut out = Element::zero();
        for (c, w) in terms {
            let mut coeff = Coeff::zero();
            for (atoms, u) in c {
                coeff = coeff.add(&self.coeff_reduce(&atoms)?.mul(&Coeff::u_pow(u)));
            }
            out = out.boxplus(&self.term(&coeff, &w)?);
        }
        Ok(out)
    }
}
