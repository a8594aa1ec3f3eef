//! Oracles supply what the algebra cannot compute: emptiness and mod-2 counts
//! of pointed moduli spaces, and the broken configurations at the ends of
//! one-dimensional spaces.

pub mod check;
pub mod declarative;
pub mod torus;

use std::fmt;

use crate::error::{Error, Result};
use crate::types::{
    formal_dimension, BoundaryCondition, Deco, Filtration, Label, Point, PolygonSymbol, PreGenerator, Vertex,
};

pub use check::{check_oracle, CheckReport};
pub use declarative::DeclarativeOracle;
pub use torus::{TorusDiagram, TorusOracle};

/// A space with every vertex assigned a point (indexed by canonical vertex).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PointedQuery {
    pub space: PolygonSymbol,
    pub points: Vec<Point>,
}

impl PointedQuery {
    pub fn new(space: PolygonSymbol, points: Vec<Point>) -> Result<Self> {
        if points.len() != space.arity() {
            return Err(Error::IncompleteDecoration(format!(
                "{} points for arity {}",
                points.len(),
                space.arity()
            )));
        }
        for (i, p) in points.iter().enumerate() {
            let v = space.boundary().vertex(i);
            if !p.fits(&v) {
                return Err(Error::PointMismatch {
                    point: p.to_string(),
                    vertex: v.to_string(),
                });
            }
        }
        Ok(PointedQuery { space, points })
    }

    /// The fully pointed pre-generator with these pointings.
    pub fn to_pregenerator(&self) -> PreGenerator {
        let decos = self.points.iter().cloned().map(Deco::Pointed).collect();
        PreGenerator::new(self.space.clone(), decos).expect("validated query")
    }
}

impl fmt::Display for PointedQuery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_pregenerator())
    }
}

/// Emptiness and mod-2 count of a zero-dimensional pointed space.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CountRecord {
    pub empty: bool,
    pub count: bool,
}

/// One broken configuration at the end of a one-dimensional space.
///
/// The cut runs between edges `i < j` of the canonical word. Piece `P` keeps
/// edges `i..=j` and gains the vertex `(w[j], w[i])`; piece `Q` keeps edges
/// `j..=i` (cyclically) and gains `(w[i], w[j])`. Both new vertices map to
/// `point`. Old vertex `k` belongs to `P` iff `i <= k < j`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EndRecord {
    pub cut: (usize, usize),
    pub point: Point,
    pub maslov: (u32, u32),
    /// `n_w` of `(P, Q)`; absent for oracles without a w basepoint.
    pub nw: Option<(u32, u32)>,
}

/// A piece of a broken polygon with inherited decorations.
#[derive(Clone, Debug)]
pub struct Piece {
    pub space: PolygonSymbol,
    /// Decorations by canonical vertex of the piece; the new vertex is `None`.
    pub decos: Vec<Option<Deco>>,
    /// Canonical index of the new vertex.
    pub new_vertex: usize,
    /// Old vertices of the parent that landed in this piece.
    pub parent_vertices: Vec<usize>,
}

impl Piece {
    pub fn new_vertex_label(&self) -> Vertex {
        self.space.boundary().vertex(self.new_vertex)
    }

    /// Fills the new vertex and returns the decorated pre-generator.
    pub fn finish(&self, d: Deco) -> Result<PreGenerator> {
        let decos = self
            .decos
            .iter()
            .enumerate()
            .map(|(i, x)| {
                if i == self.new_vertex {
                    d.clone()
                } else {
                    x.clone().expect("old vertex")
                }
            })
            .collect();
        PreGenerator::new(self.space.clone(), decos)
    }
}

impl EndRecord {
    /// Splits a decorated parent into its two pieces `(P, Q)`, validating
    /// the cut, Maslov additivity, dimensions and `n_w` bookkeeping.
    pub fn pieces(&self, parent: &PolygonSymbol, decos: &[Deco]) -> Result<(Piece, Piece)> {
        let b = parent.boundary();
        let n = b.arity();
        let (i, j) = self.cut;
        let w = b.labels();
        let bad = |msg: String| Error::MalformedEnd(format!("{parent} cut {:?}: {msg}", self.cut));
        if !(i < j && j < n) {
            return Err(bad("edge indices out of order".into()));
        }
        if w[i] == w[j] {
            return Err(bad("cut joins edges with equal labels".into()));
        }
        if self.maslov.0 + self.maslov.1 != parent.maslov() {
            return Err(bad(format!(
                "Maslov indices {}+{} do not sum to {}",
                self.maslov.0,
                self.maslov.1,
                parent.maslov()
            )));
        }
        let new_p = Vertex::new(w[j].clone(), w[i].clone())?;
        if !self.point.fits(&new_p) {
            return Err(bad(format!("point {} is not on {new_p}", self.point)));
        }
        let (fp, fq) = match (parent.filtration(), self.nw) {
            (Filtration::Unfiltered, _) => (Filtration::Unfiltered, Filtration::Unfiltered),
            (Filtration::WFiltered, None | Some((0, 0))) => (Filtration::WFiltered, Filtration::WFiltered),
            (Filtration::Nw(0), None) => (Filtration::Nw(0), Filtration::Nw(0)),
            (Filtration::Nw(k), Some((a, c))) if a + c == k => (Filtration::Nw(a), Filtration::Nw(c)),
            (f, nw) => return Err(bad(format!("n_w split {nw:?} does not fit {f:?}"))),
        };
        // P: edges i..=j; vertices i..j-1 then the new vertex.
        let p_labels: Vec<Label> = (i..=j).map(|k| w[k].clone()).collect();
        let p_old: Vec<usize> = (i..j).collect();
        // Q: edges j..=i cyclically; vertices j..i-1 then the new vertex.
        let q_len = n - (j - i) + 1;
        let q_labels: Vec<Label> = (0..q_len).map(|k| w[(j + k) % n].clone()).collect();
        let q_old: Vec<usize> = (0..q_len - 1).map(|k| (j + k) % n).collect();
        let make = |labels: Vec<Label>, old: Vec<usize>, mu: u32, f: Filtration| -> Result<Piece> {
            let (bc, offset) = BoundaryCondition::with_offset(&labels).map_err(|e| bad(e.to_string()))?;
            let space = PolygonSymbol::new(bc, mu, f).map_err(|e| bad(e.to_string()))?;
            let m = labels.len();
            let mut pd = vec![None; m];
            let canon = |raw: usize| (raw + m - offset) % m;
            for (raw, &pv) in old.iter().enumerate() {
                pd[canon(raw)] = Some(decos[pv].clone());
            }
            Ok(Piece {
                space,
                decos: pd,
                new_vertex: canon(m - 1),
                parent_vertices: old,
            })
        };
        let p = make(p_labels, p_old, self.maslov.0, fp)?;
        let q = make(q_labels, q_old, self.maslov.1, fq)?;
        if p.space.dimension() + q.space.dimension() + 1 != parent.dimension() {
            return Err(bad(format!(
                "dimensions {}+{} do not sum to {}-1",
                p.space.dimension(),
                q.space.dimension(),
                parent.dimension()
            )));
        }
        Ok((p, q))
    }

    /// Locates the cut named by an ordered label pair `(a, b)`: the piece
    /// gaining vertex `(a, b)` is the first entry of `maslov`.
    pub fn from_pair(
        parent: &PolygonSymbol,
        a: &Label,
        b: &Label,
        point: Point,
        maslov: (u32, u32),
        nw: Option<(u32, u32)>,
    ) -> Result<EndRecord> {
        let w = parent.boundary().labels();
        let find = |l: &Label| -> Result<usize> {
            let hits: Vec<usize> = (0..w.len()).filter(|&k| &w[k] == l).collect();
            match hits.as_slice() {
                [k] => Ok(*k),
                [] => Err(Error::MalformedEnd(format!("label {l} not in {parent}"))),
                _ => Err(Error::MalformedEnd(format!("label {l} repeats in {parent}"))),
            }
        };
        let (pa, pb) = (find(a)?, find(b)?);
        if pa == pb {
            return Err(Error::MalformedEnd(format!("pair ({a},{b}) is degenerate")));
        }
        // P gains (w[j], w[i]) with i < j.
        if pb < pa {
            Ok(EndRecord {
                cut: (pb, pa),
                point,
                maslov,
                nw,
            })
        } else {
            Ok(EndRecord {
                cut: (pa, pb),
                point,
                maslov: (maslov.1, maslov.0),
                nw: nw.map(|(x, y)| (y, x)),
            })
        }
    }
}

/// Source of analytic data for the engine.
pub trait Oracle: Send + Sync {
    /// Attaching-set labels known to the oracle.
    fn labels(&self) -> Vec<Label>;

    /// Intersection points of the sets `a` and `b`, sorted by id.
    fn points(&self, a: &Label, b: &Label) -> Vec<Point>;

    /// Whether the pointed space has no elements (any dimension).
    fn is_empty(&self, q: &PointedQuery) -> Result<bool>;

    /// Emptiness and mod-2 count of a zero-dimensional pointed space.
    fn query_count(&self, q: &PointedQuery) -> Result<CountRecord>;

    /// Ends of a one-dimensional pointed space.
    fn query_ends(&self, q: &PointedQuery) -> Result<Vec<EndRecord>>;

    /// Largest `n_w` stratum the oracle can report.
    fn max_stratum(&self) -> u32;

    /// Pointed spaces the oracle vouches for; the scope of consistency checks.
    fn scope(&self) -> Result<Vec<PointedQuery>>;

    /// Queries answered by default (undeclared), for reporting.
    fn defaulted(&self) -> Vec<String> {
        Vec::new()
    }
}

/// Checks the dimension precondition of a query.
pub(crate) fn expect_dim(q: &PointedQuery, d: usize) -> Result<()> {
    let found = formal_dimension(q.space.arity(), q.space.maslov());
    if found != d {
        return Err(Error::DimensionMismatch { expected: d, found });
    }
    Ok(())
}

/// All points of the pair carried by vertex `v`.
pub fn points_on(o: &dyn Oracle, v: &Vertex) -> Vec<Point> {
    o.points(&v.incoming, &v.outgoing)
}

/// Enumerates every full pointing of `space` extending the fixed entries.
pub fn completions(o: &dyn Oracle, space: &PolygonSymbol, fixed: &[Option<Point>]) -> Vec<Vec<Point>> {
    let b = space.boundary();
    let choices: Vec<Vec<Point>> = (0..b.arity())
        .map(|i| match &fixed[i] {
            Some(p) => vec![p.clone()],
            None => points_on(o, &b.vertex(i)),
        })
        .collect();
    let mut out = vec![Vec::new()];
    for c in choices {
        let mut next = Vec::with_capacity(out.len() * c.len());
        for prefix in &out {
            for p in &c {
                let mut v = prefix.clone();
                v.push(p.clone());
                next.push(v);
            }
        }
        out = next;
    }
    out
}
