//! The differential on symbols and on coefficients.
//!
//! Each end of a one-dimensional factor splits it into the piece carrying the
//! output vertex and the other piece. If the other piece has an input, the
//! two are linked into a ⊠-pair; otherwise the other piece is fully pointed
//! and becomes a coefficient. The differential extends to words by the
//! Leibniz rule and to coefficients by the Leibniz rule over products.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::oracle::{completions, EndRecord, Piece, PointedQuery};
use crate::semialgebra::{pointed_query, Coeff, Element, Engine, Monomial, Word};
use crate::types::{Deco, PreGenerator};

/// One summand of the boundary of a factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoundaryTerm {
    /// Both pieces carry an input: the word `first * second`.
    Nice { first: PreGenerator, second: PreGenerator },
    /// The piece without the output is fully pointed and acts as a scalar.
    NotNice { coeff: PreGenerator, factor: PreGenerator },
    /// The linked input of the factor landed in the piece with the output,
    /// so the broken pair cannot sit in the surrounding word.
    Undefined,
}

impl<'a> Engine<'a> {
    /// Distinct ends over every completion of the open inputs of `g`.
    fn ends_of(&self, g: &PreGenerator) -> Result<Vec<EndRecord>> {
        let fixed: Vec<_> = g.decos().iter().map(|d| d.point().cloned()).collect();
        let mut all = BTreeSet::new();
        for pts in completions(self.oracle(), g.space(), &fixed) {
            let q = PointedQuery::new(g.space().clone(), pts)?;
            let ends = self.oracle().query_ends(&q)?;
            let mut seen = BTreeSet::new();
            for e in ends {
                if !seen.insert(e.clone()) {
                    return Err(Error::DuplicateEnd(format!("{q}: {e:?}")));
                }
                all.insert(e);
            }
        }
        Ok(all.into_iter().collect())
    }

    /// Boundary summands of a single factor, read off the oracle's ends.
    pub fn boundary_terms(&self, g: &PreGenerator) -> Result<Vec<BoundaryTerm>> {
        if g.space().dimension() == 0 {
            return Ok(Vec::new());
        }
        let out = g
            .out_index()
            .ok_or_else(|| Error::Unsupported(format!("differential of {g} needs an output vertex")))?;
        let mut terms = Vec::new();
        for e in self.ends_of(g)? {
            let (p, q) = e.pieces(g.space(), g.decos())?;
            let (first, second): (&Piece, &Piece) = if p.parent_vertices.contains(&out) {
                (&q, &p)
            } else {
                (&p, &q)
            };
            let has_input = first.parent_vertices.iter().any(|&k| g.decos()[k].is_input());
            let t = if has_input {
                let linked_late = second
                    .parent_vertices
                    .iter()
                    .any(|&k| matches!(g.decos()[k], Deco::LinkedIn(_)));
                if linked_late {
                    BoundaryTerm::Undefined
                } else {
                    BoundaryTerm::Nice {
                        first: first.finish(Deco::LinkedOut(e.point.clone()))?,
                        second: second.finish(Deco::LinkedIn(e.point.clone()))?,
                    }
                }
            } else {
                BoundaryTerm::NotNice {
                    coeff: first.finish(Deco::Pointed(e.point.clone()))?,
                    factor: second.finish(Deco::Pointed(e.point.clone()))?,
                }
            };
            terms.push(t);
        }
        Ok(terms)
    }

    /// Boundary of a single pre-generator as an element.
    pub fn diff_generator(&self, g: &PreGenerator) -> Result<Element> {
        let x = self.generator(g)?;
        self.diff(&x)
    }

    /// `∂_F` of one fully pointed atom: the sum over its ends of the product
    /// of the two pieces.
    fn diff_atom(&self, a: &PreGenerator) -> Result<Coeff> {
        if a.space().dimension() == 0 {
            return Ok(Coeff::zero());
        }
        let q = pointed_query(a).ok_or_else(|| Error::IncompleteDecoration(format!("{a} is not fully pointed")))?;
        let mut out = Coeff::zero();
        let mut seen = BTreeSet::new();
        for e in self.oracle().query_ends(&q)? {
            if !seen.insert(e.clone()) {
                return Err(Error::DuplicateEnd(format!("{q}: {e:?}")));
            }
            let (p, r) = e.pieces(a.space(), a.decos())?;
            let cp = self.coeff_atom(&p.finish(Deco::Pointed(e.point.clone()))?)?;
            let cr = self.coeff_atom(&r.finish(Deco::Pointed(e.point.clone()))?)?;
            out = out.add(&cp.mul(&cr));
        }
        Ok(out)
    }

    /// `∂_F` on coefficients, extended by linearity and the Leibniz rule.
    pub fn diff_coeff(&self, c: &Coeff) -> Result<Coeff> {
        let mut out = Coeff::zero();
        for m in c.monomials() {
            for i in 0..m.atoms.len() {
                let d = self.diff_atom(&m.atoms[i])?;
                if d.is_zero() {
                    continue;
                }
                let mut rest = m.atoms.clone();
                rest.remove(i);
                let rest = Coeff::monomial(Monomial { atoms: rest, u: m.u });
                out = out.add(&d.mul(&rest));
            }
        }
        self.reduce_coeff(&out)
    }

    /// The differential: `∂(f • w) = ∂_F(f) • w ⊞ f • Σ_k w_<k * ∂(w_k) * w_>k`.
    pub fn diff(&self, x: &Element) -> Result<Element> {
        let mut acc = Element::zero();
        for (w, c) in x.terms() {
            let dc = self.diff_coeff(c)?;
            if !dc.is_zero() {
                acc = acc.boxplus(&self.term(&dc, w)?);
            }
            for k in 0..w.len() {
                for t in self.boundary_terms(&w[k])? {
                    let (coeff, mid): (Coeff, Word) = match t {
                        BoundaryTerm::Undefined => return Ok(Element::Omega),
                        BoundaryTerm::Nice { first, second } => (c.clone(), vec![first, second]),
                        BoundaryTerm::NotNice { coeff, factor } => (c.mul(&self.coeff_atom(&coeff)?), vec![factor]),
                    };
                    let word: Word = w[..k]
                        .iter()
                        .cloned()
                        .chain(mid)
                        .chain(w[k + 1..].iter().cloned())
                        .collect();
                    acc = acc.boxplus(&self.term(&coeff, &word)?);
                }
            }
            if acc.is_omega() {
                return Ok(acc);
            }
        }
        Ok(acc)
    }
}
