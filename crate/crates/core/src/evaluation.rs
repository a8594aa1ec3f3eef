//! Floer chain complexes, maps between their tensor products, the counting
//! map on coefficients and the evaluation of symbols to maps.
//!
//! A flow-out at vertex `(u, v)` is an output in `CF(u, v)`; a flow-in at
//! `(u, v)` is an input from `CF(v, u)`. The inputs of a factor are ordered
//! by boundary traversal starting just after its output vertex. Source
//! bases of tensor products are ordered lexicographically, first tensor
//! factor most significant.

use std::fmt;

use crate::error::{Error, Result};
use crate::oracle::PointedQuery;
use crate::poly::{Mat, Poly2};
use crate::semialgebra::{Coeff, Element, Engine, Monomial};
use crate::types::{Deco, Filtration, Label, Point, PreGenerator, Vertex};

/// Coefficient ring and counting rule of a chain complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Flavor {
    /// All bigons with `n_z = 0`, over GF(2).
    Hat,
    /// Bigons with `n_z = n_w = 0`, over GF(2).
    KnotHat,
    /// Bigons weighted by `U^{n_w}`, over GF(2)[U].
    U,
}

impl Flavor {
    pub fn of(f: Filtration) -> Flavor {
        match f {
            Filtration::Unfiltered => Flavor::Hat,
            Filtration::WFiltered => Flavor::KnotHat,
            Filtration::Nw(_) => Flavor::U,
        }
    }
}

/// The chain module `CF(alpha, beta)` of a flavor, with its basis size.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Complex {
    pub alpha: Label,
    pub beta: Label,
    pub flavor: Flavor,
    pub dim: usize,
}

impl fmt::Display for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.flavor {
            Flavor::Hat => "hat",
            Flavor::KnotHat => "knot-hat",
            Flavor::U => "U",
        };
        write!(f, "CF({},{})[{tag}]", self.alpha, self.beta)
    }
}

/// A linear map from a tensor product of complexes to a complex (or to the
/// ground ring when `dst` is `None`).
#[derive(Clone, Debug)]
pub struct MorMap {
    pub src: Vec<Complex>,
    pub dst: Option<Complex>,
    /// `rows = |dst basis|` (1 for the ground ring), `cols = Π |src basis|`.
    pub mat: Mat,
}

/// Element of the semialgebra of maps.
#[derive(Clone, Debug)]
pub enum MorElement {
    Omega,
    Zero,
    Map(MorMap),
}

impl MorElement {
    pub fn is_omega(&self) -> bool {
        matches!(self, MorElement::Omega)
    }

    /// Whether this is zero (the neutral element or any zero matrix).
    pub fn is_zero(&self) -> bool {
        match self {
            MorElement::Zero => true,
            MorElement::Map(m) => m.mat.is_zero(),
            MorElement::Omega => false,
        }
    }

    pub fn map(&self) -> Option<&MorMap> {
        match self {
            MorElement::Map(m) => Some(m),
            _ => None,
        }
    }

    /// Multiplies every entry by `c`.
    pub fn scale(&self, c: Poly2) -> MorElement {
        match self {
            MorElement::Map(m) => {
                let mut mat = m.mat.clone();
                for i in 0..mat.rows() {
                    for j in 0..mat.cols() {
                        mat.set(i, j, mat.get(i, j) * c);
                    }
                }
                MorElement::Map(MorMap { mat, ..m.clone() })
            }
            other => other.clone(),
        }
    }
}

impl PartialEq for MorElement {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (MorElement::Omega, MorElement::Omega) => true,
            (MorElement::Omega, _) | (_, MorElement::Omega) => false,
            (a, b) if a.is_zero() || b.is_zero() => a.is_zero() && b.is_zero(),
            (MorElement::Map(a), MorElement::Map(b)) => a.src == b.src && a.dst == b.dst && a.mat == b.mat,
            _ => false,
        }
    }
}

impl fmt::Display for MorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MorElement::Omega => write!(f, "Omega"),
            MorElement::Zero => write!(f, "0"),
            MorElement::Map(m) => {
                let src: Vec<String> = m.src.iter().map(Complex::to_string).collect();
                let dst = m.dst.as_ref().map_or("ground".to_string(), Complex::to_string);
                let src = if src.is_empty() {
                    "ground".into()
                } else {
                    src.join(" x ")
                };
                write!(f, "{src} -> {dst} {}", m.mat.inline())
            }
        }
    }
}

/// Sum of maps; sources and destinations must agree.
pub fn mor_sum(f: &MorElement, g: &MorElement) -> MorElement {
    match (f, g) {
        (MorElement::Omega, _) | (_, MorElement::Omega) => MorElement::Omega,
        (MorElement::Zero, x) | (x, MorElement::Zero) => x.clone(),
        (MorElement::Map(a), MorElement::Map(b)) => {
            if a.src != b.src || a.dst != b.dst {
                return MorElement::Omega;
            }
            match a.mat.sum(&b.mat) {
                Some(mat) => MorElement::Map(MorMap { mat, ..a.clone() }),
                None => MorElement::Omega,
            }
        }
    }
}

/// `g ∘̂ f`: plain composition when `f` lands in the whole source of `g`,
/// otherwise insertion into the unique source slot of `g` matching the
/// destination of `f`.
pub fn mor_comp(g: &MorElement, f: &MorElement) -> Result<MorElement> {
    let (g, f) = match (g, f) {
        (MorElement::Omega, _) | (_, MorElement::Omega) => return Ok(MorElement::Omega),
        (MorElement::Zero, _) | (_, MorElement::Zero) => return Ok(MorElement::Zero),
        (MorElement::Map(g), MorElement::Map(f)) => (g, f),
    };
    let Some(fd) = &f.dst else {
        return Ok(MorElement::Omega);
    };
    if g.src.len() == 1 && &g.src[0] == fd {
        let mat = g.mat.mul(&f.mat).expect("dimensions follow the bases");
        return Ok(MorElement::Map(MorMap {
            src: f.src.clone(),
            dst: g.dst.clone(),
            mat,
        }));
    }
    let slots: Vec<usize> = (0..g.src.len()).filter(|&k| &g.src[k] == fd).collect();
    let k = match slots.as_slice() {
        [] => return Ok(MorElement::Omega),
        [k] => *k,
        _ => {
            return Err(Error::AmbiguousSlot(format!(
                "{fd} occurs {} times in the source",
                slots.len()
            )))
        }
    };
    let dims = |cs: &[Complex]| -> usize { cs.iter().map(|c| c.dim).product() };
    let pre = dims(&g.src[..k]);
    let post = dims(&g.src[k + 1..]);
    let (m, j) = (f.mat.rows(), f.mat.cols());
    // id ⊗ f ⊗ id as a (pre*m*post) x (pre*j*post) matrix.
    let mut big = Mat::zeros(pre * m * post, pre * j * post);
    for i in 0..pre {
        for r in 0..m {
            for c in 0..j {
                let v = f.mat.get(r, c);
                if v.is_zero() {
                    continue;
                }
                for s in 0..post {
                    big.set((i * m + r) * post + s, (i * j + c) * post + s, v);
                }
            }
        }
    }
    let mat = g
        .mat
        .mul(&big)
        .ok_or_else(|| Error::Unsupported("basis size mismatch in composition".into()))?;
    let mut src = g.src[..k].to_vec();
    src.extend(f.src.iter().cloned());
    src.extend(g.src[k + 1..].iter().cloned());
    Ok(MorElement::Map(MorMap {
        src,
        dst: g.dst.clone(),
        mat,
    }))
}

/// A Floer chain complex built from oracle counts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FloerComplex {
    pub complex: Complex,
    pub basis: Vec<Point>,
    /// `d[y][x]` is the coefficient of `y` in `∂x`.
    pub d: Mat,
}

impl FloerComplex {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn squares_to_zero(&self) -> bool {
        self.d.mul(&self.d).is_some_and(|m| m.is_zero())
    }

    /// Homology over the coefficient ring: free rank and torsion orders.
    /// Over GF(2) the torsion list is empty.
    pub fn homology(&self, u_bound: u32) -> Result<(usize, Vec<Poly2>)> {
        match self.complex.flavor {
            Flavor::U => {
                let inv = self.d.invariant_factors(u_bound)?;
                let torsion = inv.iter().copied().filter(|p| p.degree() != Some(0)).collect();
                Ok((self.rank() - 2 * inv.len(), torsion))
            }
            _ => Ok((self.rank() - 2 * self.d.rank_gf2(), Vec::new())),
        }
    }
}

/// `(∂ x, y)`-coefficient query for the bigon with `x` at `(beta, alpha)`
/// and `y` at `(alpha, beta)`.
fn bigon(alpha: &Label, beta: &Label, mu: u32, f: Filtration, x: &Point, y: &Point) -> Result<PreGenerator> {
    PreGenerator::from_slots(
        &[alpha.clone(), beta.clone()],
        mu,
        f,
        vec![Deco::Pointed(x.clone()), Deco::Pointed(y.clone())],
    )
}

impl<'a> Engine<'a> {
    /// The complex `CF(alpha, beta)` of the oracle's diagram.
    pub fn complex(&self, alpha: &Label, beta: &Label, flavor: Flavor) -> Complex {
        Complex {
            alpha: alpha.clone(),
            beta: beta.clone(),
            flavor,
            dim: self.oracle().points(alpha, beta).len(),
        }
    }

    /// Sorted basis of a complex.
    pub fn basis(&self, c: &Complex) -> Vec<Point> {
        self.oracle().points(&c.alpha, &c.beta)
    }

    /// Complex receiving the output at vertex `v`.
    pub fn output_complex(&self, v: &Vertex, flavor: Flavor) -> Complex {
        self.complex(&v.incoming, &v.outgoing, flavor)
    }

    /// Complex feeding the input at vertex `v`.
    pub fn input_complex(&self, v: &Vertex, flavor: Flavor) -> Complex {
        self.complex(&v.outgoing, &v.incoming, flavor)
    }

    fn count(&self, g: &PreGenerator) -> Result<bool> {
        let q = crate::semialgebra::pointed_query(&g.forget_links())
            .ok_or_else(|| Error::IncompleteDecoration(format!("{g} is not fully pointed")))?;
        Ok(self.oracle().query_count(&q)?.count)
    }

    /// The Floer complex of the ordered pair `(alpha, beta)`.
    pub fn build_floer_complex(&self, alpha: &Label, beta: &Label, flavor: Flavor) -> Result<FloerComplex> {
        let complex = self.complex(alpha, beta, flavor);
        let basis = self.basis(&complex);
        let n = basis.len();
        let mut d = Mat::zeros(n, n);
        for (j, x) in basis.iter().enumerate() {
            for (i, y) in basis.iter().enumerate() {
                let v = match flavor {
                    Flavor::Hat => {
                        Poly2::from_bool(self.count(&bigon(alpha, beta, 1, Filtration::Unfiltered, x, y)?)?)
                    }
                    Flavor::KnotHat => {
                        Poly2::from_bool(self.count(&bigon(alpha, beta, 1, Filtration::WFiltered, x, y)?)?)
                    }
                    Flavor::U => {
                        let mut p = Poly2::ZERO;
                        for k in 0..=self.oracle().max_stratum() {
                            if self.count(&bigon(alpha, beta, 1, Filtration::Nw(k), x, y)?)? {
                                p += Poly2::u_pow(k);
                            }
                        }
                        p
                    }
                };
                d.set(i, j, v);
            }
        }
        Ok(FloerComplex { complex, basis, d })
    }

    /// The counting map on coefficients.
    pub fn ct(&self, c: &Coeff) -> Result<Poly2> {
        let mut out = Poly2::ZERO;
        for m in c.monomials() {
            out += self.ct_monomial(m)?;
        }
        Ok(out)
    }

    fn ct_monomial(&self, m: &Monomial) -> Result<Poly2> {
        for a in &m.atoms {
            // Positive-dimensional spaces have no point count; they count as zero.
            if a.space().dimension() > 0 || !self.count(a)? {
                return Ok(Poly2::ZERO);
            }
        }
        if m.u > 63 {
            return Err(Error::UDegree { found: m.u, bound: 63 });
        }
        Ok(Poly2::u_pow(m.u))
    }

    /// Evaluates one zero-dimensional factor: the map from its inputs to its
    /// output, with linked and pointed vertices held at their points.
    pub fn ev_factor(&self, g: &PreGenerator) -> Result<MorMap> {
        let dim = g.space().dimension();
        if dim != 0 {
            return Err(Error::DimensionMismatch {
                expected: 0,
                found: dim,
            });
        }
        let n = g.space().arity();
        let flavor = Flavor::of(g.space().filtration());
        let outs: Vec<usize> = (0..n).filter(|&k| g.decos()[k].is_output()).collect();
        if outs.len() > 1 {
            return Err(Error::Unsupported(format!("{g} has several outputs")));
        }
        let out = outs.first().copied();
        let start = out.map_or(0, |o| o + 1);
        let inputs: Vec<usize> = (0..n)
            .map(|t| (start + t) % n)
            .filter(|&k| g.decos()[k].is_input())
            .collect();
        let src: Vec<Complex> = inputs
            .iter()
            .map(|&k| self.input_complex(&g.vertex(k), flavor))
            .collect();
        let dst = out.map(|o| self.output_complex(&g.vertex(o), flavor));
        let src_bases: Vec<Vec<Point>> = src.iter().map(|c| self.basis(c)).collect();
        let dst_basis = dst.as_ref().map(|c| self.basis(c));
        let rows = dst_basis.as_ref().map_or(1, Vec::len);
        let cols: usize = src_bases.iter().map(Vec::len).product();
        let mut mat = Mat::zeros(rows, cols);
        for col in 0..cols {
            // Mixed-radix digits, first source most significant.
            let mut rem = col;
            let mut digits = vec![0; inputs.len()];
            for t in (0..inputs.len()).rev() {
                digits[t] = rem % src_bases[t].len();
                rem /= src_bases[t].len();
            }
            let mut pts: Vec<Option<Point>> = g.decos().iter().map(|d| d.point().cloned()).collect();
            let mut ok = true;
            for (t, &k) in inputs.iter().enumerate() {
                let x = &src_bases[t][digits[t]];
                match &pts[k] {
                    Some(p) if p != x => ok = false,
                    _ => pts[k] = Some(x.clone()),
                }
            }
            if !ok {
                continue;
            }
            let pts: Vec<Point> = pts.into_iter().map(|p| p.expect("every vertex pointed")).collect();
            let row = match (out, &dst_basis) {
                (Some(o), Some(b)) => b.iter().position(|p| *p == pts[o]).expect("output point in basis"),
                _ => 0,
            };
            let q = PointedQuery::new(g.space().clone(), pts)?;
            if self.oracle().query_count(&q)?.count {
                mat.set(row, col, Poly2::ONE);
            }
        }
        Ok(MorMap { src, dst, mat })
    }

    /// Evaluates a word: the composition of its factor maps, last factor outermost.
    pub fn ev_word(&self, w: &[PreGenerator]) -> Result<MorElement> {
        let Some((first, rest)) = w.split_first() else {
            return Ok(MorElement::Map(MorMap {
                src: Vec::new(),
                dst: None,
                mat: Mat::identity(1),
            }));
        };
        let mut m = MorElement::Map(self.ev_factor(first)?);
        let mut prev = first;
        for g in rest {
            let out = prev.decos().iter().find_map(|d| match d {
                Deco::LinkedOut(p) => Some(p),
                _ => None,
            });
            let inp = g.decos().iter().find_map(|d| match d {
                Deco::LinkedIn(p) => Some(p),
                _ => None,
            });
            let (Some(p), Some(q)) = (out, inp) else {
                return Err(Error::NotAGeneratorWord(format!(
                    "{g} does not consume the previous output"
                )));
            };
            // A constant factor moved into the coefficient can join different
            // points: the previous output is read off at `p` and fed in at `q`.
            if let (MorElement::Map(f), true) = (&mut m, p != q) {
                if let Some(dst) = &f.dst {
                    let basis = self.basis(dst);
                    let i = basis.iter().position(|b| b == p);
                    let j = basis.iter().position(|b| b == q);
                    if let (Some(i), Some(j)) = (i, j) {
                        f.mat.swap_rows(i, j);
                    }
                }
            }
            m = mor_comp(&MorElement::Map(self.ev_factor(g)?), &m)?;
            if m.is_omega() {
                return Ok(m);
            }
            prev = g;
        }
        Ok(m)
    }

    /// Evaluation morphism into the maps between Floer complexes.
    pub fn ev(&self, x: &Element) -> Result<MorElement> {
        if x.is_omega() {
            return Ok(MorElement::Omega);
        }
        let mut acc = MorElement::Zero;
        for (w, c) in x.terms() {
            let m = self.ev_word(w)?.scale(self.ct(c)?);
            acc = mor_sum(&acc, &m);
            if acc.is_omega() {
                break;
            }
        }
        Ok(acc)
    }
}
