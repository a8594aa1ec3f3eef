//! The w-filtering morphism, the U-equivariant morphism, canonical symbols
//! and property polynomials.

use crate::error::{Error, Result};
use crate::semialgebra::{Coeff, Element, Engine, Word};
use crate::types::{BoundaryCondition, Deco, Filtration, Label, PolygonSymbol, PreGenerator, Vertex};

/// How a property polynomial is transported to another flavor.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Transport {
    /// Apply the w-filtering morphism to every coefficient.
    Filter,
    /// Apply the U-equivariant morphism to every coefficient.
    FilterU,
    /// Multiply every coefficient from the right by the unit symbol of its
    /// output vertex.
    Unit,
}

/// An item of a monomial of a property polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PItem {
    Elem(Element),
    Var,
}

/// A noncommutative polynomial in one variable `X` with symbol coefficients;
/// each term is a ⊠-product of items, and terms are ⊞-summed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PropertyPolynomial {
    pub terms: Vec<Vec<PItem>>,
}

impl PropertyPolynomial {
    pub fn new(terms: Vec<Vec<PItem>>) -> Self {
        PropertyPolynomial { terms }
    }
}

fn map_word(w: &[PreGenerator], f: impl Fn(&PreGenerator) -> PreGenerator) -> Word {
    w.iter().map(f).collect()
}

fn w_filtered(g: &PreGenerator) -> PreGenerator {
    match g.space().filtration() {
        Filtration::Unfiltered => g.with_filtration(Filtration::WFiltered),
        _ => g.clone(),
    }
}

impl<'a> Engine<'a> {
    /// The w-filtering morphism: every unfiltered symbol is restricted to
    /// polygons with `n_w = 0`.
    pub fn filter_w(&self, x: &Element) -> Result<Element> {
        if x.is_omega() {
            return Ok(Element::Omega);
        }
        let mut acc = Element::zero();
        for (w, c) in x.terms() {
            let mut fc = Coeff::zero();
            for m in c.monomials() {
                let atoms: Vec<PreGenerator> = m.atoms.iter().map(w_filtered).collect();
                fc = fc.add(&self.coeff_reduce(&atoms)?.mul(&Coeff::u_pow(m.u)));
            }
            acc = acc.boxplus(&self.term(&fc, &map_word(w, w_filtered))?);
        }
        Ok(acc)
    }

    fn strata(&self) -> Result<u32> {
        Ok(self.oracle().max_stratum())
    }

    /// Image of one unfiltered coefficient atom: `Σ_i U^i A^i`.
    fn filter_u_atom(&self, a: &PreGenerator, top: u32) -> Result<Coeff> {
        if a.space().filtration() != Filtration::Unfiltered {
            return self.coeff_atom(a);
        }
        let mut out = Coeff::zero();
        for i in 0..=top {
            let c = self.coeff_atom(&a.with_filtration(Filtration::Nw(i)))?;
            out = out.add(&c.mul(&Coeff::u_pow(i)));
        }
        Ok(out)
    }

    /// The U-equivariant morphism: every unfiltered symbol becomes the sum of
    /// its `n_w` strata weighted by powers of `U`, up to `bound`.
    pub fn filter_u(&self, x: &Element, bound: u32) -> Result<Element> {
        if x.is_omega() {
            return Ok(Element::Omega);
        }
        let top = self.strata()?;
        if top > bound {
            return Err(Error::StratumBound { found: top, bound });
        }
        let mut acc = Element::zero();
        for (w, c) in x.terms() {
            let mut fc = Coeff::zero();
            for m in c.monomials() {
                let mut p = Coeff::u_pow(m.u);
                for a in &m.atoms {
                    p = p.mul(&self.filter_u_atom(a, top)?);
                }
                fc = fc.add(&p);
            }
            if fc.is_zero() {
                continue;
            }
            // Expand the word over all stratum choices.
            let mut partial: Vec<(u32, Word)> = vec![(0, Vec::new())];
            for g in w {
                let mut next = Vec::new();
                for (deg, prefix) in &partial {
                    if g.space().filtration() != Filtration::Unfiltered {
                        let mut p = prefix.clone();
                        p.push(g.clone());
                        next.push((*deg, p));
                        continue;
                    }
                    for i in 0..=top {
                        let gi = g.with_filtration(Filtration::Nw(i));
                        if self.factor_empty(&gi)? {
                            continue;
                        }
                        let mut p = prefix.clone();
                        p.push(gi);
                        next.push((deg + i, p));
                    }
                }
                partial = next;
            }
            for (deg, word) in partial {
                acc = acc.boxplus(&self.term(&fc.mul(&Coeff::u_pow(deg)), &word)?);
            }
        }
        Ok(acc)
    }

    /// `⊞_y M(flow-in at v.reversed(), y flow-out at v)` over the points of `v`.
    fn bigon_family(&self, v: &Vertex, maslov: u32, f: Filtration) -> Result<Element> {
        let bc = BoundaryCondition::new(&[v.incoming.clone(), v.outgoing.clone()])?;
        let space = PolygonSymbol::new(bc.clone(), maslov, f)?;
        let out = bc.index_of(v).expect("vertex of its own bigon");
        let mut acc = Element::zero();
        for y in self.oracle().points(&v.incoming, &v.outgoing) {
            let mut decos = vec![Deco::FlowIn; 2];
            decos[out] = Deco::FlowOut(y);
            acc = acc.boxplus(&self.generator(&PreGenerator::new(space.clone(), decos)?)?);
        }
        Ok(acc)
    }

    /// Canonical symbol of the differential of `CF(a, b)`.
    pub fn canonical_differential(&self, a: &Label, b: &Label, f: Filtration) -> Result<Element> {
        self.bigon_family(&Vertex::new(a.clone(), b.clone())?, 1, f)
    }

    /// The unit symbol `⊞_y M^0(flow-in, y flow-out)` with output at `(a, b)`.
    pub fn unit_symbol(&self, a: &Label, b: &Label, f: Filtration) -> Result<Element> {
        self.bigon_family(&Vertex::new(a.clone(), b.clone())?, 0, f)
    }

    /// `⊞_q` over the points of the output vertex of a pre-generator whose
    /// output decoration is replaced by a flow-out at `q`.
    pub fn family(&self, template: &PreGenerator) -> Result<Element> {
        let out = template
            .decos()
            .iter()
            .position(Deco::is_output)
            .ok_or_else(|| Error::Unsupported(format!("{template} has no output vertex")))?;
        let v = template.vertex(out);
        let mut acc = Element::zero();
        for q in self.oracle().points(&v.incoming, &v.outgoing) {
            let mut decos = template.decos().to_vec();
            decos[out] = Deco::FlowOut(q);
            acc = acc.boxplus(&self.generator(&PreGenerator::new(template.space().clone(), decos)?)?);
        }
        Ok(acc)
    }

    /// Output vertex shared by the terms of an element.
    fn output_vertex(x: &Element) -> Option<Vertex> {
        let (_, outward) = x.profiles()?;
        let mut it = outward.iter();
        match (it.next(), it.next()) {
            (Some((v, &1)), None) => Some(v.clone()),
            _ => None,
        }
    }

    /// Right multiplication by the unit symbol of the element's output.
    pub fn with_unit(&self, x: &Element) -> Result<Element> {
        if x.is_omega() || x.is_zero() {
            return Ok(x.clone());
        }
        let v = Self::output_vertex(x).ok_or_else(|| Error::Unsupported(format!("{x} has no single output vertex")))?;
        let f = x
            .terms()
            .flat_map(|(w, _)| w.last())
            .map(|g| match g.space().filtration() {
                Filtration::Nw(_) => Filtration::Nw(0),
                f => f,
            })
            .next()
            .unwrap_or(Filtration::Unfiltered);
        let unit = self.unit_symbol(&v.incoming, &v.outgoing, f)?;
        self.boxtimes(x, &unit)
    }

    /// Literal evaluation `P(s)`.
    pub fn eval_property(&self, p: &PropertyPolynomial, s: &Element) -> Result<Element> {
        let mut acc = Element::zero();
        for t in &p.terms {
            let items: Vec<Element> = t
                .iter()
                .map(|i| match i {
                    PItem::Elem(e) => e.clone(),
                    PItem::Var => s.clone(),
                })
                .collect();
            acc = acc.boxplus(&self.product(&items)?);
        }
        Ok(acc)
    }

    /// Maps every coefficient of a property polynomial; `X` is fixed.
    pub fn transport_property(
        &self,
        p: &PropertyPolynomial,
        kind: Transport,
        u_bound: u32,
    ) -> Result<PropertyPolynomial> {
        let terms = p
            .terms
            .iter()
            .map(|t| {
                t.iter()
                    .map(|i| match i {
                        PItem::Var => Ok(PItem::Var),
                        PItem::Elem(e) => Ok(PItem::Elem(match kind {
                            Transport::Filter => self.filter_w(e)?,
                            Transport::FilterU => self.filter_u(e, u_bound)?,
                            Transport::Unit => self.with_unit(e)?,
                        })),
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PropertyPolynomial { terms })
    }

    /// Applies a transport to an element (the root candidate).
    pub fn transport(&self, x: &Element, kind: Transport, u_bound: u32) -> Result<Element> {
        match kind {
            Transport::Filter => self.filter_w(x),
            Transport::FilterU => self.filter_u(x, u_bound),
            Transport::Unit => self.with_unit(x),
        }
    }
}
