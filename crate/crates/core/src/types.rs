//! Boundary conditions, vertices, points, decorations and pre-generators.
//!
//! A boundary word is stored in its lexicographically least rotation. Vertex
//! `i` of a word `w` is the ordered pair `(w[i], w[i+1 mod n])`. Words that
//! repeat an ordered vertex pair are rejected, so a vertex pair names a unique
//! corner and decorations can be carried across rotations by pair lookup.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Name of one set of attaching circles.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label(Arc<str>);

impl Label {
    /// Builds a label; names must be nonempty and free of grammar separators.
    pub fn new(name: &str) -> Result<Self> {
        let ok = !name.is_empty() && name.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '\'');
        if ok {
            Ok(Label(Arc::from(name)))
        } else {
            Err(Error::BadLabel(name.to_string()))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Convenience constructor for label lists in tests and fixtures.
pub fn labels(names: &[&str]) -> Result<Vec<Label>> {
    names.iter().map(|n| Label::new(n)).collect()
}

/// A corner of a polygon: the edge label arriving and the edge label leaving.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex {
    pub incoming: Label,
    pub outgoing: Label,
}

impl Vertex {
    pub fn new(incoming: Label, outgoing: Label) -> Result<Self> {
        if incoming == outgoing {
            return Err(Error::DegenerateVertex(incoming.to_string()));
        }
        Ok(Vertex { incoming, outgoing })
    }

    /// The same label pair traversed the other way; a flow-out at `v` feeds a
    /// flow-in at `v.reversed()`.
    pub fn reversed(&self) -> Vertex {
        Vertex {
            incoming: self.outgoing.clone(),
            outgoing: self.incoming.clone(),
        }
    }

    /// Unordered label pair, smaller label first.
    pub fn pair(&self) -> (Label, Label) {
        sorted_pair(&self.incoming, &self.outgoing)
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.incoming, self.outgoing)
    }
}

impl fmt::Debug for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub(crate) fn sorted_pair(a: &Label, b: &Label) -> (Label, Label) {
    if a <= b {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    }
}

/// An intersection generator of two attaching sets.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    id: Arc<str>,
    pair: (Label, Label),
}

impl Point {
    pub fn new(id: &str, a: Label, b: Label) -> Result<Self> {
        // "v" is reserved for flow-in slots in the text syntax.
        if id.is_empty() || id == "v" || id.contains(|c: char| c.is_whitespace() || ",()[];{}+*^.<>•".contains(c)) {
            return Err(Error::Parse(format!("bad point id {id:?}")));
        }
        if a == b {
            return Err(Error::DegenerateVertex(a.to_string()));
        }
        Ok(Point {
            id: Arc::from(id),
            pair: sorted_pair(&a, &b),
        })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn pair(&self) -> &(Label, Label) {
        &self.pair
    }

    /// Whether the point may decorate `v` (unordered label pairs agree).
    pub fn fits(&self, v: &Vertex) -> bool {
        self.pair == v.pair()
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id)
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id)
    }
}

/// A vertex together with the point it is required to map to.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pointing {
    pub vertex: Vertex,
    pub point: Point,
}

impl Pointing {
    pub fn new(vertex: Vertex, point: Point) -> Result<Self> {
        if !point.fits(&vertex) {
            return Err(Error::PointMismatch {
                point: point.to_string(),
                vertex: vertex.to_string(),
            });
        }
        Ok(Pointing { vertex, point })
    }
}

/// Rotation class of a cyclic label word, stored in canonical rotation.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BoundaryCondition {
    word: Vec<Label>,
}

impl BoundaryCondition {
    /// Canonicalizes `labels`, returning the class and the rotation offset:
    /// canonical index `k` corresponds to input index `(k + offset) % n`.
    pub fn with_offset(labels: &[Label]) -> Result<(Self, usize)> {
        let n = labels.len();
        if n < 2 {
            return Err(Error::ShortWord(n));
        }
        let show = || {
            let parts: Vec<&str> = labels.iter().map(Label::as_str).collect();
            format!("({})", parts.join(","))
        };
        if (0..n).any(|i| labels[i] == labels[(i + 1) % n]) {
            return Err(Error::AdjacentRepeat(show()));
        }
        let mut seen = std::collections::BTreeSet::new();
        for i in 0..n {
            let v = (&labels[i], &labels[(i + 1) % n]);
            if !seen.insert(v) {
                return Err(Error::RepeatedVertex(show(), format!("({},{})", v.0, v.1)));
            }
        }
        let rotation = |k: usize| (0..n).map(move |i| &labels[(i + k) % n]);
        let best = (0..n).min_by(|&a, &b| rotation(a).cmp(rotation(b))).unwrap_or(0);
        let word = rotation(best).cloned().collect();
        Ok((BoundaryCondition { word }, best))
    }

    pub fn new(labels: &[Label]) -> Result<Self> {
        Self::with_offset(labels).map(|(b, _)| b)
    }

    pub fn arity(&self) -> usize {
        self.word.len()
    }

    pub fn labels(&self) -> &[Label] {
        &self.word
    }

    pub fn vertex(&self, i: usize) -> Vertex {
        let n = self.word.len();
        Vertex {
            incoming: self.word[i % n].clone(),
            outgoing: self.word[(i + 1) % n].clone(),
        }
    }

    pub fn vertices(&self) -> Vec<Vertex> {
        (0..self.arity()).map(|i| self.vertex(i)).collect()
    }

    /// Position of the vertex `v` in traversal order.
    pub fn index_of(&self, v: &Vertex) -> Option<usize> {
        let n = self.word.len();
        (0..n).find(|&i| self.word[i] == v.incoming && self.word[(i + 1) % n] == v.outgoing)
    }
}

impl fmt::Display for BoundaryCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<&str> = self.word.iter().map(Label::as_str).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Debug for BoundaryCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Canonical rotation class of a label sequence.
pub fn canonical_boundary(labels: &[Label]) -> Result<BoundaryCondition> {
    BoundaryCondition::new(labels)
}

/// Vertices of a boundary condition in traversal order.
pub fn vertices_of(b: &BoundaryCondition) -> Vec<Vertex> {
    b.vertices()
}

/// Which polygons of a moduli space are counted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Filtration {
    /// All polygons with `n_z = 0`.
    Unfiltered,
    /// Polygons with `n_z = n_w = 0`.
    WFiltered,
    /// Polygons with `n_z = 0` and `n_w = i`.
    Nw(u32),
}

impl Filtration {
    /// The `n_w` stratum an oracle has to answer for; w-filtered spaces are
    /// the zeroth stratum.
    pub fn stratum(self) -> Option<u32> {
        match self {
            Filtration::Unfiltered => None,
            Filtration::WFiltered => Some(0),
            Filtration::Nw(i) => Some(i),
        }
    }
}

/// An undecorated moduli space: boundary word, Maslov index, filtration.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PolygonSymbol {
    boundary: BoundaryCondition,
    maslov: u32,
    filtration: Filtration,
}

impl PolygonSymbol {
    pub fn new(boundary: BoundaryCondition, maslov: u32, filtration: Filtration) -> Result<Self> {
        let arity = boundary.arity();
        let limit = if arity == 2 { 2 } else { 1 };
        if maslov > limit {
            return Err(Error::InvalidMaslov { arity, maslov });
        }
        Ok(PolygonSymbol {
            boundary,
            maslov,
            filtration,
        })
    }

    pub fn boundary(&self) -> &BoundaryCondition {
        &self.boundary
    }

    pub fn maslov(&self) -> u32 {
        self.maslov
    }

    pub fn filtration(&self) -> Filtration {
        self.filtration
    }

    pub fn arity(&self) -> usize {
        self.boundary.arity()
    }

    /// Formal dimension: `mu` for polygons, `max(mu - 1, 0)` for bigons.
    pub fn dimension(&self) -> usize {
        formal_dimension(self.arity(), self.maslov)
    }

    pub fn with_filtration(&self, filtration: Filtration) -> PolygonSymbol {
        PolygonSymbol {
            filtration,
            ..self.clone()
        }
    }

    /// True for the constant-disk spaces `M^0` of bigons.
    pub fn is_constant_bigon(&self) -> bool {
        self.arity() == 2 && self.maslov == 0
    }
}

/// Formal dimension of a space of the given arity and Maslov index.
pub fn formal_dimension(arity: usize, maslov: u32) -> usize {
    if arity == 2 {
        maslov.saturating_sub(1) as usize
    } else {
        maslov as usize
    }
}

impl fmt::Display for PolygonSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};{}", self.maslov, self.boundary)?;
        match self.filtration {
            Filtration::Unfiltered => Ok(()),
            Filtration::WFiltered => write!(f, ";w"),
            Filtration::Nw(i) => write!(f, ";nw={i}"),
        }
    }
}

impl fmt::Debug for PolygonSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Decoration of a single vertex.
///
/// `LinkedIn` and `LinkedOut` are pointed vertices that remember they were
/// produced by a product: `LinkedIn` was a flow-in filled by the preceding
/// factor, `LinkedOut` was a flow-out consumed by the following factor.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Deco {
    Pointed(Point),
    FlowIn,
    FlowOut(Point),
    LinkedIn(Point),
    LinkedOut(Point),
}

impl Deco {
    pub fn point(&self) -> Option<&Point> {
        match self {
            Deco::FlowIn => None,
            Deco::Pointed(p) | Deco::FlowOut(p) | Deco::LinkedIn(p) | Deco::LinkedOut(p) => Some(p),
        }
    }

    /// Inputs of the map a factor represents: open or linked flow-ins.
    pub fn is_input(&self) -> bool {
        matches!(self, Deco::FlowIn | Deco::LinkedIn(_))
    }

    /// Outputs of the map a factor represents: open or linked flow-outs.
    pub fn is_output(&self) -> bool {
        matches!(self, Deco::FlowOut(_) | Deco::LinkedOut(_))
    }

    /// Counts as pointed for classification.
    pub fn is_pointed(&self) -> bool {
        matches!(self, Deco::Pointed(_) | Deco::LinkedIn(_) | Deco::LinkedOut(_))
    }
}

/// Classification of a fully decorated pre-generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Generator,
    FullyPointed,
    Other,
}

/// A moduli space with one decoration per vertex (indexed like
/// [`BoundaryCondition::vertices`]).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PreGenerator {
    space: PolygonSymbol,
    decos: Vec<Deco>,
}

impl PreGenerator {
    pub fn new(space: PolygonSymbol, decos: Vec<Deco>) -> Result<Self> {
        if decos.len() != space.arity() {
            return Err(Error::IncompleteDecoration(format!(
                "{} decorations for {} vertices",
                decos.len(),
                space.arity()
            )));
        }
        for (i, d) in decos.iter().enumerate() {
            if let Some(p) = d.point() {
                let v = space.boundary().vertex(i);
                if !p.fits(&v) {
                    return Err(Error::PointMismatch {
                        point: p.to_string(),
                        vertex: v.to_string(),
                    });
                }
            }
        }
        Ok(PreGenerator { space, decos })
    }

    /// Builds from the three decoration sets; every vertex must occur exactly once.
    pub fn from_sets(
        space: PolygonSymbol,
        pointed: &[Pointing],
        flow_in: &[Vertex],
        flow_out: &[Pointing],
    ) -> Result<Self> {
        let b = space.boundary().clone();
        let mut decos: Vec<Option<Deco>> = vec![None; b.arity()];
        let mut place = |v: &Vertex, d: Deco| -> Result<()> {
            let i = b
                .index_of(v)
                .ok_or_else(|| Error::IncompleteDecoration(format!("{v} is not a vertex of {b}")))?;
            if decos[i].is_some() {
                return Err(Error::IncompleteDecoration(format!("{v} decorated twice")));
            }
            decos[i] = Some(d);
            Ok(())
        };
        for p in pointed {
            place(&p.vertex, Deco::Pointed(p.point.clone()))?;
        }
        for v in flow_in {
            place(v, Deco::FlowIn)?;
        }
        for p in flow_out {
            place(&p.vertex, Deco::FlowOut(p.point.clone()))?;
        }
        let decos = decos
            .into_iter()
            .enumerate()
            .map(|(i, d)| d.ok_or_else(|| Error::IncompleteDecoration(format!("{} undecorated", b.vertex(i)))))
            .collect::<Result<Vec<_>>>()?;
        PreGenerator::new(space, decos)
    }

    pub fn space(&self) -> &PolygonSymbol {
        &self.space
    }

    pub fn decos(&self) -> &[Deco] {
        &self.decos
    }

    pub fn vertex(&self, i: usize) -> Vertex {
        self.space.boundary().vertex(i)
    }

    pub fn kind(&self) -> Kind {
        let ins = self.decos.iter().filter(|d| **d == Deco::FlowIn).count();
        let outs = self.decos.iter().filter(|d| matches!(d, Deco::FlowOut(_))).count();
        match (ins, outs) {
            (0, 0) => Kind::FullyPointed,
            (i, 1) if i > 0 => Kind::Generator,
            _ => Kind::Other,
        }
    }

    pub fn is_fully_pointed(&self) -> bool {
        self.kind() == Kind::FullyPointed
    }

    /// Pointed set (linked vertices count as pointed).
    pub fn pointed(&self) -> Vec<Pointing> {
        self.collect(|d| if d.is_pointed() { d.point().cloned() } else { None })
    }

    /// Open flow-in vertices.
    pub fn flow_in(&self) -> Vec<Vertex> {
        (0..self.decos.len())
            .filter(|&i| self.decos[i] == Deco::FlowIn)
            .map(|i| self.vertex(i))
            .collect()
    }

    /// Open flow-out pointings.
    pub fn flow_out(&self) -> Vec<Pointing> {
        self.collect(|d| match d {
            Deco::FlowOut(p) => Some(p.clone()),
            _ => None,
        })
    }

    fn collect(&self, f: impl Fn(&Deco) -> Option<Point>) -> Vec<Pointing> {
        self.decos
            .iter()
            .enumerate()
            .filter_map(|(i, d)| {
                f(d).map(|point| Pointing {
                    vertex: self.vertex(i),
                    point,
                })
            })
            .collect()
    }

    /// Index of the (open or linked) output vertex, if any.
    pub fn out_index(&self) -> Option<usize> {
        self.decos.iter().position(Deco::is_output)
    }

    /// Moves the open flow-outs into the pointed set.
    pub fn k_up(&self) -> PreGenerator {
        let decos = self
            .decos
            .iter()
            .map(|d| match d {
                Deco::FlowOut(p) => Deco::LinkedOut(p.clone()),
                d => d.clone(),
            })
            .collect();
        PreGenerator {
            space: self.space.clone(),
            decos,
        }
    }

    /// Points the flow-in vertices named by `q` with the supplied points.
    pub fn k_down(&self, q: &[Pointing]) -> Result<PreGenerator> {
        let mut decos = self.decos.clone();
        for p in q {
            let i = self
                .space
                .boundary()
                .index_of(&p.vertex)
                .filter(|&i| decos[i] == Deco::FlowIn)
                .ok_or_else(|| Error::MissingFlowIn(p.vertex.to_string()))?;
            if !p.point.fits(&p.vertex) {
                return Err(Error::PointMismatch {
                    point: p.point.to_string(),
                    vertex: p.vertex.to_string(),
                });
            }
            decos[i] = Deco::LinkedIn(p.point.clone());
        }
        Ok(PreGenerator {
            space: self.space.clone(),
            decos,
        })
    }

    /// Replaces linked decorations by plain pointings.
    pub fn forget_links(&self) -> PreGenerator {
        let decos = self
            .decos
            .iter()
            .map(|d| match d {
                Deco::LinkedIn(p) | Deco::LinkedOut(p) => Deco::Pointed(p.clone()),
                d => d.clone(),
            })
            .collect();
        PreGenerator {
            space: self.space.clone(),
            decos,
        }
    }

    /// Turns linked inputs into plain pointings.
    pub fn unlink(&self) -> PreGenerator {
        let decos = self
            .decos
            .iter()
            .map(|d| match d {
                Deco::LinkedIn(p) => Deco::Pointed(p.clone()),
                d => d.clone(),
            })
            .collect();
        PreGenerator {
            space: self.space.clone(),
            decos,
        }
    }

    pub fn has_linked_in(&self) -> bool {
        self.decos.iter().any(|d| matches!(d, Deco::LinkedIn(_)))
    }

    pub fn has_linked_out(&self) -> bool {
        self.decos.iter().any(|d| matches!(d, Deco::LinkedOut(_)))
    }

    pub fn with_space(&self, space: PolygonSymbol) -> Result<PreGenerator> {
        if space.boundary() != self.space.boundary() {
            return Err(Error::Unsupported(format!(
                "cannot move decorations from {} to {}",
                self.space, space
            )));
        }
        Ok(PreGenerator {
            space,
            decos: self.decos.clone(),
        })
    }

    pub fn with_filtration(&self, filtration: Filtration) -> PreGenerator {
        PreGenerator {
            space: self.space.with_filtration(filtration),
            decos: self.decos.clone(),
        }
    }

    /// Builds a pre-generator from decorations listed in slot order, where slot
    /// `j` (1-based) of a word of arity `n` sits at vertex `n - j` of `labels`
    /// as given (before canonical rotation).
    pub fn from_slots(labels: &[Label], maslov: u32, filtration: Filtration, slots: Vec<Deco>) -> Result<Self> {
        let n = labels.len();
        if slots.len() != n {
            return Err(Error::IncompleteDecoration(format!(
                "{} slots for arity {n}",
                slots.len()
            )));
        }
        let (boundary, offset) = BoundaryCondition::with_offset(labels)?;
        let mut decos = vec![Deco::FlowIn; n];
        for (j, d) in slots.into_iter().enumerate() {
            let raw = n - 1 - j;
            let canon = (raw + n - offset) % n;
            decos[canon] = d;
        }
        PreGenerator::new(PolygonSymbol::new(boundary, maslov, filtration)?, decos)
    }

    /// Decorations in slot order for the canonical word.
    pub fn slots(&self) -> Vec<&Deco> {
        self.decos.iter().rev().collect()
    }
}

impl fmt::Debug for PreGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::semialgebra::syntax::show_factor(self))
    }
}

impl fmt::Display for PreGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::semialgebra::syntax::show_factor(self))
    }
}

/// Classifies a fully decorated pre-generator.
pub fn classify(g: &PreGenerator) -> Kind {
    g.kind()
}

/// Vertex counts with finite support.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiplicityProfile {
    counts: BTreeMap<Vertex, u32>,
}

impl MultiplicityProfile {
    pub fn add(&mut self, v: Vertex, k: u32) {
        if k > 0 {
            *self.counts.entry(v).or_insert(0) += k;
        }
    }

    pub fn get(&self, v: &Vertex) -> u32 {
        self.counts.get(v).copied().unwrap_or(0)
    }

    pub fn merged(&self, other: &MultiplicityProfile) -> MultiplicityProfile {
        let mut out = self.clone();
        for (v, k) in &other.counts {
            out.add(v.clone(), *k);
        }
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vertex, &u32)> {
        self.counts.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }
}

/// Inward (open flow-ins) and outward (open flow-outs) profiles of a word.
pub fn multiplicity_profiles(word: &[PreGenerator]) -> (MultiplicityProfile, MultiplicityProfile) {
    let mut inward = MultiplicityProfile::default();
    let mut outward = MultiplicityProfile::default();
    for g in word {
        for (i, d) in g.decos.iter().enumerate() {
            match d {
                Deco::FlowIn => inward.add(g.vertex(i), 1),
                Deco::FlowOut(_) => outward.add(g.vertex(i), 1),
                _ => {}
            }
        }
    }
    (inward, outward)
}
