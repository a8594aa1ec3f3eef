//! Oracle backed by an explicit table of counts and end lists.
//!
//! Undeclared pointed spaces are empty; every such default is recorded so a
//! report can surface typos. Constant bigons `M^0(x, x)` are nonempty with
//! count one unless declared otherwise.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use super::{expect_dim, CountRecord, EndRecord, Oracle, PointedQuery};
use crate::error::{Error, Result};
use crate::types::{BoundaryCondition, Filtration, Label, Point, PolygonSymbol};

/// Declared answer for one pointed space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Answer {
    /// Nonempty zero-dimensional space with the given parity.
    Count(bool),
    /// Nonempty one-dimensional space with the given ends.
    Ends(Vec<EndRecord>),
}

/// Table-driven oracle.
#[derive(Debug, Default)]
pub struct DeclarativeOracle {
    labels: Vec<Label>,
    points: BTreeMap<(Label, Label), Vec<Point>>,
    table: BTreeMap<PointedQuery, Answer>,
    max_nw: u32,
    defaulted: Mutex<BTreeSet<String>>,
}

impl Clone for DeclarativeOracle {
    fn clone(&self) -> Self {
        DeclarativeOracle {
            labels: self.labels.clone(),
            points: self.points.clone(),
            table: self.table.clone(),
            max_nw: self.max_nw,
            defaulted: Mutex::new(self.defaulted.lock().expect("poisoned").clone()),
        }
    }
}

/// Lookup key: w-filtered spaces share the table of the zeroth stratum.
fn key(q: &PointedQuery) -> PointedQuery {
    match q.space.filtration() {
        Filtration::WFiltered => PointedQuery {
            space: q.space.with_filtration(Filtration::Nw(0)),
            points: q.points.clone(),
        },
        _ => q.clone(),
    }
}

impl DeclarativeOracle {
    pub fn new(labels: Vec<Label>, points: Vec<Point>) -> Self {
        let mut by_pair: BTreeMap<(Label, Label), Vec<Point>> = BTreeMap::new();
        for p in points {
            by_pair.entry(p.pair().clone()).or_default().push(p);
        }
        for v in by_pair.values_mut() {
            v.sort();
            v.dedup();
        }
        DeclarativeOracle {
            labels,
            points: by_pair,
            ..Default::default()
        }
    }

    pub fn set_max_stratum(&mut self, k: u32) {
        self.max_nw = self.max_nw.max(k);
    }

    /// Declares a zero-dimensional space as nonempty with parity `count`.
    pub fn declare_count(&mut self, q: PointedQuery, count: bool) -> Result<()> {
        expect_dim(&q, 0)?;
        self.insert(q, Answer::Count(count))
    }

    /// Declares a one-dimensional space as nonempty with the given ends.
    pub fn declare_ends(&mut self, q: PointedQuery, ends: Vec<EndRecord>) -> Result<()> {
        expect_dim(&q, 1)?;
        let mut seen = BTreeSet::new();
        for e in &ends {
            if !seen.insert(e) {
                return Err(Error::DuplicateEnd(format!("{q}: {e:?}")));
            }
        }
        self.insert(q, Answer::Ends(ends))
    }

    fn insert(&mut self, q: PointedQuery, a: Answer) -> Result<()> {
        if let Some(k) = q.space.filtration().stratum() {
            self.max_nw = self.max_nw.max(k);
        }
        let k = key(&q);
        if self.table.insert(k, a).is_some() {
            return Err(Error::Parse(format!("space {q} declared twice")));
        }
        Ok(())
    }

    /// Declared entries in table order.
    pub fn entries(&self) -> impl Iterator<Item = (&PointedQuery, &Answer)> {
        self.table.iter()
    }

    /// Removes one end from a declared space; used to build negative controls.
    pub fn drop_end(&mut self, q: &PointedQuery, index: usize) -> Option<EndRecord> {
        match self.table.get_mut(&key(q)) {
            Some(Answer::Ends(v)) if index < v.len() => Some(v.remove(index)),
            _ => None,
        }
    }

    fn lookup(&self, q: &PointedQuery) -> Option<&Answer> {
        self.table.get(&key(q))
    }

    fn flag(&self, q: &PointedQuery) {
        self.defaulted.lock().expect("poisoned").insert(q.to_string());
    }

    /// Constant-disk rule for undeclared `M^0` bigons.
    fn constant(&self, q: &PointedQuery) -> Option<bool> {
        if !q.space.is_constant_bigon() {
            return None;
        }
        let unit = q.points[0] == q.points[1] && q.space.filtration().stratum().unwrap_or(0) == 0;
        Some(unit)
    }

    /// Parses the JSON fixture format.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: FileFormat = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        file.build()
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }
}

impl Oracle for DeclarativeOracle {
    fn labels(&self) -> Vec<Label> {
        self.labels.clone()
    }

    fn points(&self, a: &Label, b: &Label) -> Vec<Point> {
        let k = crate::types::sorted_pair(a, b);
        self.points.get(&k).cloned().unwrap_or_default()
    }

    fn is_empty(&self, q: &PointedQuery) -> Result<bool> {
        if self.lookup(q).is_some() {
            return Ok(false);
        }
        if let Some(unit) = self.constant(q) {
            return Ok(!unit);
        }
        self.flag(q);
        Ok(true)
    }

    fn query_count(&self, q: &PointedQuery) -> Result<CountRecord> {
        expect_dim(q, 0)?;
        match self.lookup(q) {
            Some(Answer::Count(c)) => Ok(CountRecord {
                empty: false,
                count: *c,
            }),
            Some(Answer::Ends(_)) => Err(Error::DimensionMismatch { expected: 0, found: 1 }),
            None => {
                if let Some(unit) = self.constant(q) {
                    return Ok(CountRecord {
                        empty: !unit,
                        count: unit,
                    });
                }
                self.flag(q);
                Ok(CountRecord {
                    empty: true,
                    count: false,
                })
            }
        }
    }

    fn query_ends(&self, q: &PointedQuery) -> Result<Vec<EndRecord>> {
        expect_dim(q, 1)?;
        match self.lookup(q) {
            Some(Answer::Ends(e)) => Ok(e.clone()),
            Some(Answer::Count(_)) => Err(Error::DimensionMismatch { expected: 1, found: 0 }),
            None => {
                self.flag(q);
                Ok(Vec::new())
            }
        }
    }

    fn max_stratum(&self) -> u32 {
        self.max_nw
    }

    fn scope(&self) -> Result<Vec<PointedQuery>> {
        Ok(self.table.keys().cloned().collect())
    }

    fn defaulted(&self) -> Vec<String> {
        self.defaulted.lock().expect("poisoned").iter().cloned().collect()
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileFormat {
    labels: Vec<String>,
    points: Vec<PointSpec>,
    #[serde(default)]
    max_nw: Option<u32>,
    spaces: Vec<SpaceSpec>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PointSpec {
    id: String,
    labels: [String; 2],
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum FiltrationSpec {
    Name(String),
    Stratum { nw: u32 },
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpaceSpec {
    boundary: Vec<String>,
    maslov: u32,
    filtration: FiltrationSpec,
    pointings: BTreeMap<String, String>,
    #[serde(default)]
    count: Option<u8>,
    #[serde(default)]
    ends: Option<Vec<EndSpec>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EndSpec {
    pair: [String; 2],
    point: String,
    maslov_split: [u32; 2],
    #[serde(default)]
    nw_split: Option<[u32; 2]>,
}

impl FileFormat {
    fn build(self) -> Result<DeclarativeOracle> {
        let labels: Vec<Label> = self.labels.iter().map(|l| Label::new(l)).collect::<Result<_>>()?;
        let known: BTreeSet<&Label> = labels.iter().collect();
        let label = |s: &str| -> Result<Label> {
            let l = Label::new(s)?;
            if known.contains(&l) {
                Ok(l)
            } else {
                Err(Error::Parse(format!("unknown label {s}")))
            }
        };
        let mut points = BTreeMap::new();
        for p in &self.points {
            let pt = Point::new(&p.id, label(&p.labels[0])?, label(&p.labels[1])?)?;
            if points.insert(p.id.clone(), pt).is_some() {
                return Err(Error::Parse(format!("point {} declared twice", p.id)));
            }
        }
        let point = |id: &str| -> Result<Point> {
            points
                .get(id)
                .cloned()
                .ok_or_else(|| Error::Parse(format!("unknown point {id}")))
        };
        let mut o = DeclarativeOracle::new(labels.clone(), points.values().cloned().collect());
        if let Some(k) = self.max_nw {
            o.set_max_stratum(k);
        }
        for s in &self.spaces {
            let word: Vec<Label> = s.boundary.iter().map(|l| label(l)).collect::<Result<_>>()?;
            let bc = BoundaryCondition::new(&word)?;
            let filtration = match &s.filtration {
                FiltrationSpec::Name(n) if n == "none" => Filtration::Unfiltered,
                FiltrationSpec::Name(n) if n == "w0" => Filtration::WFiltered,
                FiltrationSpec::Name(n) => return Err(Error::Parse(format!("unknown filtration {n}"))),
                FiltrationSpec::Stratum { nw } => Filtration::Nw(*nw),
            };
            let space = PolygonSymbol::new(bc.clone(), s.maslov, filtration)?;
            let mut pts: Vec<Option<Point>> = vec![None; bc.arity()];
            for (v, id) in &s.pointings {
                let (a, b) = v
                    .split_once(',')
                    .ok_or_else(|| Error::Parse(format!("vertex key {v:?} must be \"a,b\"")))?;
                let vx = crate::types::Vertex::new(label(a.trim())?, label(b.trim())?)?;
                let i = bc
                    .index_of(&vx)
                    .ok_or_else(|| Error::Parse(format!("{vx} is not a vertex of {bc}")))?;
                if pts[i].replace(point(id)?).is_some() {
                    return Err(Error::Parse(format!("vertex {vx} pointed twice")));
                }
            }
            let pts = pts
                .into_iter()
                .enumerate()
                .map(|(i, p)| p.ok_or_else(|| Error::Parse(format!("{bc}: vertex {} unpointed", bc.vertex(i)))))
                .collect::<Result<Vec<_>>>()?;
            let q = PointedQuery::new(space.clone(), pts)?;
            match (s.count, &s.ends) {
                (Some(c), None) if c <= 1 => o.declare_count(q, c == 1)?,
                (None, Some(ends)) => {
                    let ends = ends
                        .iter()
                        .map(|e| {
                            EndRecord::from_pair(
                                &space,
                                &label(&e.pair[0])?,
                                &label(&e.pair[1])?,
                                point(&e.point)?,
                                (e.maslov_split[0], e.maslov_split[1]),
                                e.nw_split.map(|[a, b]| (a, b)),
                            )
                        })
                        .collect::<Result<Vec<_>>>()?;
                    o.declare_ends(q, ends)?;
                }
                _ => {
                    return Err(Error::Parse(format!(
                        "{space}: exactly one of count (0|1) or ends is required"
                    )))
                }
            }
        }
        Ok(o)
    }
}
