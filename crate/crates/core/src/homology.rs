//! Finite ∂-closures, homology over GF(2), relation checks, matrix models and
//! the recovery of Floer complexes from symbols.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::evaluation::Flavor;
use crate::linalg::{BitRow, Echelon, TrackedEchelon};
use crate::poly::{Mat, Poly2};
use crate::semialgebra::{Coeff, Element, Engine, Monomial, Word};
use crate::types::{Deco, Filtration, Label, Point, PreGenerator};

/// A basis vector of a closure: one monomial times one word.
pub type BasisTerm = (Monomial, Word);

/// The span of finitely many normalized terms, closed under ∂.
#[derive(Clone, Debug)]
pub struct FiniteComplex {
    max_len: usize,
    u_bound: u32,
    basis: Vec<BasisTerm>,
    index: BTreeMap<BasisTerm, usize>,
    /// `d[i]` lists the basis indices of `∂(basis[i])`.
    d: Vec<Vec<usize>>,
}

impl FiniteComplex {
    /// An empty closure truncated at word length `max_len` and `U`-degree `u_bound`.
    pub fn new(max_len: usize, u_bound: u32) -> Self {
        FiniteComplex {
            max_len,
            u_bound,
            basis: Vec::new(),
            index: BTreeMap::new(),
            d: Vec::new(),
        }
    }

    /// Closure of the seeds: all ⊠-products of up to `max_len` seeds whose
    /// words stay within `max_len`, closed under ∂.
    pub fn closure(eng: &Engine, seeds: &[Element], max_len: usize, u_bound: u32) -> Result<Self> {
        let mut c = FiniteComplex::new(max_len, u_bound);
        let mut level: Vec<Element> = Vec::new();
        for s in seeds {
            if s.is_omega() {
                return Err(Error::OmegaInClosure);
            }
            if s.max_word_len() <= max_len {
                c.add(eng, s)?;
                level.push(s.clone());
            }
        }
        for _ in 1..max_len {
            let mut next = Vec::new();
            for x in &level {
                for s in seeds {
                    let p = eng.boxtimes(x, s)?;
                    if p.is_omega() || p.is_zero() || p.max_word_len() > max_len {
                        continue;
                    }
                    c.add(eng, &p)?;
                    next.push(p);
                }
            }
            level = next;
        }
        Ok(c)
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[BasisTerm] {
        &self.basis
    }

    /// The basis term `i` as an element.
    pub fn element(&self, i: usize) -> Element {
        let (m, w) = &self.basis[i];
        Element::single(w.clone(), Coeff::monomial(m.clone()))
    }

    fn register(&mut self, t: BasisTerm, queue: &mut Vec<usize>) -> Result<usize> {
        if let Some(&i) = self.index.get(&t) {
            return Ok(i);
        }
        if t.1.len() > self.max_len {
            return Err(Error::ClosureEscape {
                len: t.1.len(),
                max: self.max_len,
            });
        }
        if t.0.u > self.u_bound {
            return Err(Error::UDegree {
                found: t.0.u,
                bound: self.u_bound,
            });
        }
        let i = self.basis.len();
        self.index.insert(t.clone(), i);
        self.basis.push(t);
        self.d.push(Vec::new());
        queue.push(i);
        Ok(i)
    }

    /// Adds the terms of `x` and closes under ∂.
    pub fn add(&mut self, eng: &Engine, x: &Element) -> Result<()> {
        let mut queue = Vec::new();
        for t in split(x)? {
            self.register(t, &mut queue)?;
        }
        while let Some(i) = queue.pop() {
            let dx = eng.diff(&self.element(i))?;
            if dx.is_omega() {
                return Err(Error::OmegaInClosure);
            }
            let mut row = Vec::new();
            for t in split(&dx)? {
                row.push(self.register(t, &mut queue)?);
            }
            self.d[i] = row;
        }
        Ok(())
    }

    /// Coordinates of `x`, extending the closure if needed.
    pub fn coords(&mut self, eng: &Engine, x: &Element) -> Result<BitRow> {
        self.add(eng, x)?;
        let idx: Vec<usize> = split(x)?.into_iter().map(|t| self.index[&t]).collect();
        Ok(BitRow::from_indices(self.len(), idx))
    }

    fn row(&self, i: usize) -> BitRow {
        BitRow::from_indices(self.len(), self.d[i].iter().copied())
    }

    /// Echelon basis of the image of ∂.
    pub fn boundaries(&self) -> Echelon {
        let mut e = Echelon::new();
        for i in 0..self.len() {
            e.insert(&self.row(i));
        }
        e
    }

    pub fn rank_d(&self) -> usize {
        self.boundaries().rank()
    }

    /// Whether ∂ ∘ ∂ vanishes on the basis.
    pub fn squares_to_zero(&self) -> bool {
        (0..self.len()).all(|i| {
            let mut acc = BitRow::zeros(self.len());
            for &j in &self.d[i] {
                acc.xor(&self.row(j));
            }
            acc.is_zero()
        })
    }

    /// Cycles of the basis: a basis of the kernel of ∂.
    pub fn cycles(&self) -> Vec<BitRow> {
        let n = self.len();
        let mut e = TrackedEchelon::new(n);
        (0..n).filter_map(|i| e.insert(i, &self.row(i))).collect()
    }

    /// Representatives of a basis of homology.
    pub fn homology_basis(&self) -> Vec<Element> {
        let mut e = self.boundaries();
        let mut out = Vec::new();
        for z in self.cycles() {
            if e.insert(&z) {
                out.push(self.vector_element(&z));
            }
        }
        out
    }

    /// Dimension of homology.
    pub fn homology_rank(&self) -> usize {
        self.cycles().len() - self.rank_d()
    }

    /// The element with the given coordinates.
    pub fn vector_element(&self, v: &BitRow) -> Element {
        let mut acc = Element::zero();
        for i in (0..self.len()).filter(|&i| v.get(i)) {
            acc = acc.boxplus(&self.element(i));
        }
        acc
    }

    /// Whether `x` is a boundary.
    pub fn is_boundary(&mut self, eng: &Engine, x: &Element) -> Result<bool> {
        if x.is_omega() {
            return Err(Error::IllFormedRelation);
        }
        let v = self.coords(eng, x)?;
        Ok(self.boundaries().contains(&v))
    }

    /// Whether `x` is a cycle.
    pub fn is_cycle(&mut self, eng: &Engine, x: &Element) -> Result<bool> {
        let v = self.coords(eng, x)?;
        let mut acc = BitRow::zeros(self.len());
        for i in (0..self.len()).filter(|&i| v.get(i)) {
            acc.xor(&self.row(i));
        }
        Ok(acc.is_zero())
    }

    /// `lhs = rhs` in homology: their sum is zero or a boundary.
    pub fn verify_relation(&mut self, eng: &Engine, lhs: &Element, rhs: &Element) -> Result<bool> {
        let s = lhs.boxplus(rhs);
        if s.is_omega() {
            return Err(Error::IllFormedRelation);
        }
        self.is_boundary(eng, &s)
    }

    /// Dimension of the span of `elems` modulo boundaries.
    pub fn span_dim(&mut self, eng: &Engine, elems: &[Element]) -> Result<usize> {
        let rows = elems.iter().map(|x| self.coords(eng, x)).collect::<Result<Vec<_>>>()?;
        let mut e = self.boundaries();
        let base = e.rank();
        for r in &rows {
            e.insert(&r.resized(self.len()));
        }
        Ok(e.rank() - base)
    }
}

/// Splits an element into basis terms.
pub fn split(x: &Element) -> Result<Vec<BasisTerm>> {
    if x.is_omega() {
        return Err(Error::OmegaInClosure);
    }
    let mut out = Vec::new();
    for (w, c) in x.terms() {
        for m in c.monomials() {
            out.push((m.clone(), w.clone()));
        }
    }
    Ok(out)
}

/// All index sequences of length `1..=max_len` over `n` letters, shortest first.
pub fn sequences(n: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut level: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for s in &level {
            for k in 0..n {
                let mut t = s.clone();
                t.push(k);
                next.push(t);
            }
        }
        out.extend(next.iter().cloned());
        level = next;
    }
    out
}

/// The ⊠-product of the generators named by a sequence.
pub fn word_of(eng: &Engine, gens: &[Element], seq: &[usize]) -> Result<Element> {
    let items: Vec<Element> = seq.iter().map(|&k| gens[k].clone()).collect();
    eng.product(&items)
}

/// Matrices standing for symbol generators; a word maps to the product of
/// its matrices in order.
#[derive(Clone, Debug)]
pub struct MatrixModel {
    pub names: Vec<String>,
    pub mats: Vec<Mat>,
}

impl MatrixModel {
    pub fn word(&self, seq: &[usize]) -> Mat {
        let mut m = self.mats[seq[0]].clone();
        for &k in &seq[1..] {
            m = m.mul(&self.mats[k]).expect("square matrices of one size");
        }
        m
    }

    fn show(&self, seq: &[usize]) -> String {
        seq.iter()
            .map(|&k| self.names[k].as_str())
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// Outcome of comparing symbol words with a matrix model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelReport {
    /// Span dimensions of words of length at most `k`, for `k = 1..=L`.
    pub symbol_dims: Vec<usize>,
    pub matrix_dims: Vec<usize>,
    /// Symbol relations that fail for the matrices.
    pub failed_relations: Vec<String>,
    /// Number of independent symbol relations found.
    pub relations: usize,
}

impl ModelReport {
    pub fn passes(&self) -> bool {
        self.failed_relations.is_empty() && self.symbol_dims == self.matrix_dims
    }
}

fn mat_bits(m: &Mat) -> Vec<usize> {
    let mut out = Vec::new();
    for (k, p) in m.entries().iter().enumerate() {
        for b in 0..64 {
            if p.0 >> b & 1 == 1 {
                out.push(k * 64 + b);
            }
        }
    }
    out
}

/// Compares the relations and span dimensions of symbol words over `gens`
/// with those of the matrix model, for words of length at most `max_len`.
pub fn matrix_model_check(eng: &Engine, gens: &[Element], model: &MatrixModel, max_len: usize) -> Result<ModelReport> {
    let mut c = FiniteComplex::closure(eng, gens, max_len, 0)?;
    let seqs = sequences(gens.len(), max_len);
    let words = seqs.iter().map(|s| word_of(eng, gens, s)).collect::<Result<Vec<_>>>()?;
    let mut coords = Vec::new();
    for w in &words {
        if w.is_omega() {
            return Err(Error::IllFormedRelation);
        }
        coords.push(c.coords(eng, w)?);
    }
    let n = c.len();
    let widen = |r: &BitRow| r.resized(n);
    let mats: Vec<Mat> = seqs.iter().map(|s| model.word(s)).collect();
    let mat_len = mats.first().map_or(0, |m| m.rows() * m.cols() * 64);

    // Symbol relations: eliminate while tracking which words were combined.
    let m_count = seqs.len();
    let bnd = c.boundaries();
    let mut tracked = TrackedEchelon::new(m_count);
    let mut failed = Vec::new();
    let mut relations = 0;
    let mut sym_e = c.boundaries();
    let base = sym_e.rank();
    let mut mat_e = Echelon::new();
    let mut symbol_dims = vec![0; max_len];
    let mut matrix_dims = vec![0; max_len];
    for (k, s) in seqs.iter().enumerate() {
        let v = widen(&coords[k]);
        if let Some(comb) = tracked.insert(k, &bnd.reduce(&v)) {
            relations += 1;
            let mut sum = Mat::zeros(mats[k].rows(), mats[k].cols());
            let mut names = Vec::new();
            for j in (0..m_count).filter(|&j| comb.get(j)) {
                sum = sum.sum(&mats[j]).expect("same size");
                names.push(model.show(&seqs[j]));
            }
            if !sum.is_zero() {
                failed.push(format!("{} = 0", names.join(" + ")));
            }
        }
        sym_e.insert(&v);
        mat_e.insert(&BitRow::from_indices(mat_len, mat_bits(&mats[k])));
        for d in s.len()..=max_len {
            symbol_dims[d - 1] = sym_e.rank() - base;
            matrix_dims[d - 1] = mat_e.rank();
        }
    }
    Ok(ModelReport {
        symbol_dims,
        matrix_dims,
        failed_relations: failed,
        relations,
    })
}

/// A rewriting rule on generator sequences; `None` rewrites to zero.
pub type Rule = (Vec<usize>, Option<Vec<usize>>);

/// Normal form of a sequence under rules that shorten words.
pub fn rewrite(seq: &[usize], rules: &[Rule]) -> Option<Vec<usize>> {
    let mut s = seq.to_vec();
    'outer: loop {
        for (lhs, rhs) in rules {
            if lhs.len() > s.len() {
                continue;
            }
            for at in 0..=s.len() - lhs.len() {
                if s[at..at + lhs.len()] == lhs[..] {
                    let rhs = rhs.as_ref()?;
                    let mut t = s[..at].to_vec();
                    t.extend(rhs);
                    t.extend(&s[at + lhs.len()..]);
                    s = t;
                    continue 'outer;
                }
            }
        }
        return Some(s);
    }
}

/// Comparison of the engine's relations with a stated relation set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationReport {
    /// Words whose value differs from the value of their normal form.
    pub violated: Vec<String>,
    /// Distinct nonzero normal forms.
    pub normal_forms: usize,
    /// Rank of the normal forms modulo boundaries.
    pub independent: usize,
}

impl RelationReport {
    /// The stated relations hold and imply every relation the engine finds.
    pub fn exact(&self) -> bool {
        self.violated.is_empty() && self.independent == self.normal_forms
    }
}

/// Checks that the engine's relations among words of length at most
/// `max_len` are exactly those generated by `rules`.
pub fn relation_set_check(
    eng: &Engine,
    gens: &[Element],
    names: &[&str],
    rules: &[Rule],
    max_len: usize,
) -> Result<RelationReport> {
    let mut c = FiniteComplex::closure(eng, gens, max_len, 0)?;
    let show = |s: &[usize]| s.iter().map(|&k| names[k]).collect::<Vec<_>>().join("*");
    let mut violated = Vec::new();
    let mut forms: BTreeMap<Vec<usize>, Element> = BTreeMap::new();
    for s in sequences(gens.len(), max_len) {
        let w = word_of(eng, gens, &s)?;
        let nf = rewrite(&s, rules);
        let target = match &nf {
            Some(t) if !t.is_empty() => word_of(eng, gens, t)?,
            _ => Element::zero(),
        };
        if !c.verify_relation(eng, &w, &target)? {
            violated.push(format!("{} = {}", show(&s), nf.as_deref().map_or("0".into(), show)));
        }
        if let Some(t) = nf {
            forms.entry(t).or_insert(target);
        }
    }
    let elems: Vec<Element> = forms.into_values().collect();
    let independent = c.span_dim(eng, &elems)?;
    Ok(RelationReport {
        violated,
        normal_forms: elems.len(),
        independent,
    })
}

/// Plain form of an element: links are forgotten and every fully pointed
/// factor, including the first and last, moves into the coefficient.
pub fn forget_links(eng: &Engine, x: &Element) -> Result<Element> {
    if x.is_omega() {
        return Ok(Element::Omega);
    }
    let mut acc = Element::zero();
    for (w, c) in x.terms() {
        let mut c = c.clone();
        let mut plain = Word::new();
        for g in w {
            if g.is_fully_pointed() {
                c = c.mul(&eng.coeff_atom(g)?);
            } else {
                plain.push(g.forget_links());
            }
        }
        acc = acc.boxplus(&eng.term(&c, &plain)?);
    }
    Ok(acc)
}

/// Which side the canonical differential acts from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    Homology,
    Cohomology,
}

/// Result of a recovery check: the symbol-side matrix against the Floer one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecoveryReport {
    pub symbol: Mat,
    pub floer: Mat,
    /// Terms of the products that are not basis symbols.
    pub stray_terms: usize,
    /// Whether the basis symbols are pairwise distinct.
    pub bijective: bool,
}

impl RecoveryReport {
    pub fn commutes(&self) -> bool {
        self.symbol == self.floer && self.stray_terms == 0 && self.bijective
    }
}

impl fmt::Display for RecoveryReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "symbol {} floer {} ", self.symbol.inline(), self.floer.inline())?;
        write!(f, "stray {} bijective {}", self.stray_terms, self.bijective)
    }
}

fn bigon_gen(a: &Label, b: &Label, f: Filtration, at_ba: Deco, at_ab: Deco) -> Result<PreGenerator> {
    PreGenerator::from_slots(&[a.clone(), b.clone()], 0, f, vec![at_ba, at_ab])
}

impl<'a> Engine<'a> {
    /// The chain symbol `X_x` of a generator `x` of `CF(a, b)`.
    pub fn chain_symbol(&self, a: &Label, b: &Label, x: &Point, f: Filtration) -> Result<Element> {
        self.generator(&bigon_gen(a, b, f, Deco::Pointed(x.clone()), Deco::FlowOut(x.clone()))?)
    }

    /// The cochain symbol `Y_x` dual to a generator `x` of `CF(a, b)`.
    pub fn cochain_symbol(&self, a: &Label, b: &Label, x: &Point, f: Filtration) -> Result<Element> {
        self.generator(&bigon_gen(a, b, f, Deco::FlowIn, Deco::Pointed(x.clone()))?)
    }

    /// Reads `Σ c_k • B_k` against a basis of symbols; returns the column
    /// of counts and the number of terms outside the basis.
    fn read_off(&self, x: &Element, basis: &[Element]) -> Result<(Vec<Poly2>, usize)> {
        let x = forget_links(self, x)?;
        let keys: Vec<Word> = basis
            .iter()
            .map(|b| b.terms().next().map(|(w, _)| w.clone()).unwrap_or_default())
            .collect();
        let mut col = vec![Poly2::ZERO; basis.len()];
        let mut stray = 0;
        for (w, c) in x.terms() {
            match keys.iter().position(|k| k == w) {
                Some(i) => col[i] += self.ct(c)?,
                None => {
                    if !self.ct(c)?.is_zero() {
                        stray += 1;
                    }
                }
            }
        }
        Ok((col, stray))
    }

    /// Recovers the differential of `CF(a, b)` from symbols: right
    /// multiplication by `s ⊠ 𝕆` on chain symbols (homology) or left
    /// multiplication by `𝕆 ⊠ s` on cochain symbols (cohomology).
    pub fn recover_cf(&self, a: &Label, b: &Label, variant: Variant, flavor: Flavor) -> Result<RecoveryReport> {
        let f = match flavor {
            Flavor::Hat => Filtration::Unfiltered,
            Flavor::KnotHat => Filtration::WFiltered,
            Flavor::U => return Err(Error::Unsupported("recovery is implemented for hat flavors".into())),
        };
        let fc = self.build_floer_complex(a, b, flavor)?;
        let s = self.canonical_differential(a, b, f)?;
        let unit = self.unit_symbol(a, b, f)?;
        let n = fc.basis.len();
        let mut symbol = Mat::zeros(n, n);
        let mut stray = 0;
        let basis: Vec<Element> = fc
            .basis
            .iter()
            .map(|x| match variant {
                Variant::Homology => self.chain_symbol(a, b, x, f),
                Variant::Cohomology => self.cochain_symbol(a, b, x, f),
            })
            .collect::<Result<_>>()?;
        let forgotten = basis
            .iter()
            .map(|x| forget_links(self, x))
            .collect::<Result<Vec<_>>>()?;
        for (j, x) in basis.iter().enumerate() {
            let img = match variant {
                Variant::Homology => self.product(&[x.clone(), s.clone(), unit.clone()])?,
                Variant::Cohomology => self.product(&[unit.clone(), s.clone(), x.clone()])?,
            };
            if img.is_omega() {
                return Err(Error::IllFormedRelation);
            }
            let (col, st) = self.read_off(&img, &forgotten)?;
            stray += st;
            for (i, v) in col.into_iter().enumerate() {
                symbol.set(i, j, v);
            }
        }
        let floer = match variant {
            Variant::Homology => fc.d.clone(),
            Variant::Cohomology => fc.d.transpose(),
        };
        let mut distinct = forgotten.clone();
        distinct.sort();
        distinct.dedup();
        let bijective = distinct.len() == n && forgotten.iter().all(|x| x.len() == 1);
        Ok(RecoveryReport {
            symbol,
            floer,
            stray_terms: stray,
            bijective,
        })
    }

    /// Map transport: the first input is fed in as a chain symbol through
    /// `X ⊠ s ⊠ 𝕆`, any further inputs are pinned to basis points, and the
    /// output symbols are read off. The result is compared with `ev(s)`.
    pub fn recover_map(&self, s: &Element) -> Result<RecoveryReport> {
        let ev = self.ev(s)?;
        let m = ev
            .map()
            .ok_or_else(|| Error::Unsupported(format!("ev of {s} is not a map")))?
            .clone();
        let dst = m
            .dst
            .clone()
            .ok_or_else(|| Error::Unsupported(format!("{s} has no output")))?;
        let Some(first) = m.src.first() else {
            return Err(Error::Unsupported(format!("{s} has no inputs")));
        };
        let f = filtration_of(dst.flavor);
        let out_basis = self.basis(&dst);
        let outputs = out_basis
            .iter()
            .map(|w| self.chain_symbol(&dst.alpha, &dst.beta, w, f))
            .collect::<Result<Vec<_>>>()?;
        let forgotten = outputs
            .iter()
            .map(|x| forget_links(self, x))
            .collect::<Result<Vec<_>>>()?;
        let unit = self.unit_symbol(&dst.alpha, &dst.beta, f)?;
        let bases: Vec<Vec<Point>> = m.src.iter().map(|c| self.basis(c)).collect();
        let cols: usize = bases.iter().map(Vec::len).product();
        let mut symbol = Mat::zeros(out_basis.len(), cols);
        let mut stray = 0;
        for col in 0..cols {
            let mut rem = col;
            let mut digits = vec![0; bases.len()];
            for t in (0..bases.len()).rev() {
                digits[t] = rem % bases[t].len();
                rem /= bases[t].len();
            }
            let pins: Vec<Point> = (1..bases.len()).map(|t| bases[t][digits[t]].clone()).collect();
            let pinned = self.pin_inputs(s, &pins)?;
            let x = self.chain_symbol(&first.alpha, &first.beta, &bases[0][digits[0]], f)?;
            let acc = self.product(&[x, pinned, unit.clone()])?;
            if acc.is_omega() {
                return Err(Error::IllFormedRelation);
            }
            let (v, st) = self.read_off(&acc, &forgotten)?;
            stray += st;
            for (i, p) in v.into_iter().enumerate() {
                symbol.set(i, col, p);
            }
        }
        let mut distinct = forgotten.clone();
        distinct.sort();
        distinct.dedup();
        Ok(RecoveryReport {
            symbol,
            floer: m.mat,
            stray_terms: stray,
            bijective: distinct.len() == out_basis.len(),
        })
    }

    /// Points every input after the first of each single-factor term, in
    /// the source order used by evaluation. Terms whose existing points
    /// disagree with the pins drop out.
    fn pin_inputs(&self, s: &Element, pins: &[Point]) -> Result<Element> {
        let mut acc = Element::zero();
        for (w, c) in s.terms() {
            let [g] = w.as_slice() else {
                return Err(Error::Unsupported(format!(
                    "map transport needs single factors, got {s}"
                )));
            };
            let n = g.space().arity();
            let start = g.decos().iter().position(Deco::is_output).map_or(0, |o| o + 1);
            let inputs: Vec<usize> = (0..n)
                .map(|t| (start + t) % n)
                .filter(|&k| g.decos()[k].is_input())
                .collect();
            if inputs.len() != pins.len() + 1 {
                return Err(Error::Unsupported(format!("{g} does not match the source arity")));
            }
            let mut decos = g.decos().to_vec();
            for (&k, p) in inputs[1..].iter().zip(pins) {
                decos[k] = Deco::Pointed(p.clone());
            }
            let pinned = PreGenerator::new(g.space().clone(), decos)?;
            acc = acc.boxplus(&self.term(c, &[pinned])?);
        }
        Ok(acc)
    }
}

fn filtration_of(f: Flavor) -> Filtration {
    match f {
        Flavor::Hat => Filtration::Unfiltered,
        Flavor::KnotHat => Filtration::WFiltered,
        Flavor::U => Filtration::Nw(0),
    }
}
