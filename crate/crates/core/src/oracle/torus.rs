//! Combinatorial bigon counting on genus-one Heegaard diagrams.
//!
//! A diagram is given by its regions: Euler characteristic, oriented boundary
//! arcs, corner quadrants at intersection points, and basepoint occupancy.
//! Domains are nonnegative integer combinations of regions avoiding `z`.
//! A domain `D` from `x` to `y` (for the ordered pair `(alpha, beta)`)
//! satisfies `d(dD ∩ alpha) = y - x` and `d(dD ∩ beta) = x - y`; its Maslov
//! index is `e(D) + n_x(D) + n_y(D)`. Embedded index-one bigons count once;
//! any other contributing domain is reported as undecidable.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use super::{expect_dim, CountRecord, EndRecord, Oracle, PointedQuery};
use crate::error::{Error, Result};
use crate::types::{sorted_pair, BoundaryCondition, Filtration, Label, Point, PolygonSymbol};

/// Default bound on region multiplicities during enumeration.
pub const DEFAULT_MULTIPLICITY_BOUND: u32 = 4;

/// An oriented boundary arc of a region.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arc {
    pub id: String,
    pub label: Label,
    pub from: usize,
    pub to: usize,
}

/// A face of the diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Region {
    pub id: String,
    pub chi: i32,
    pub boundary: Vec<Arc>,
    /// `(point index, quadrant)` pairs.
    pub corners: Vec<(usize, u8)>,
    pub has_z: bool,
    pub has_w: bool,
}

/// Validated genus-one diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusDiagram {
    pub labels: Vec<Label>,
    pub points: Vec<Point>,
    pub regions: Vec<Region>,
}

/// A positive domain from one point to another.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Domain {
    pub multiplicities: Vec<u32>,
    /// Maslov index times four.
    pub maslov4: i64,
    pub n_w: u32,
}

impl TorusDiagram {
    /// Parses and validates the JSON diagram format.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: DiagramFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        file.build()
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn point_index(&self, p: &Point) -> Option<usize> {
        self.points.iter().position(|q| q == p)
    }

    /// Quadrant multiplicities of `d` at point `k`, in quadrant order.
    fn quadrants(&self, d: &[u32], k: usize) -> [u32; 4] {
        let mut q = [0; 4];
        for (r, region) in self.regions.iter().enumerate() {
            for &(p, quad) in &region.corners {
                if p == k {
                    q[quad as usize] += d[r];
                }
            }
        }
        q
    }

    /// `4 * e(R)` for each region.
    fn euler4(&self, r: usize) -> i64 {
        let region = &self.regions[r];
        4 * region.chi as i64 - region.corners.len() as i64
    }

    /// Boundary of `dD ∩ label` as a point vector.
    fn arc_boundary(&self, d: &[u32], label: &Label) -> Vec<i64> {
        let mut v = vec![0i64; self.points.len()];
        for (r, region) in self.regions.iter().enumerate() {
            if d[r] == 0 {
                continue;
            }
            for arc in region.boundary.iter().filter(|a| &a.label == label) {
                v[arc.to] += d[r] as i64;
                v[arc.from] -= d[r] as i64;
            }
        }
        v
    }

    /// All positive domains with `n_z = 0` from `x` to `y` for the ordered
    /// pair `(alpha, beta)`, multiplicities bounded by `bound`.
    pub fn domains(&self, alpha: &Label, beta: &Label, x: &Point, y: &Point, bound: u32) -> Result<Vec<Domain>> {
        let xi = self
            .point_index(x)
            .ok_or_else(|| Error::Unsupported(format!("unknown point {x}")))?;
        let yi = self
            .point_index(y)
            .ok_or_else(|| Error::Unsupported(format!("unknown point {y}")))?;
        let free: Vec<usize> = (0..self.regions.len()).filter(|&r| !self.regions[r].has_z).collect();
        let mut target = vec![0i64; self.points.len()];
        target[yi] += 1;
        target[xi] -= 1;
        let neg: Vec<i64> = target.iter().map(|t| -t).collect();
        let mut out = Vec::new();
        let mut d = vec![0u32; self.regions.len()];
        loop {
            if self.arc_boundary(&d, alpha) == target && self.arc_boundary(&d, beta) == neg {
                let e4: i64 = (0..d.len()).map(|r| d[r] as i64 * self.euler4(r)).sum();
                let nx: i64 = self.quadrants(&d, xi).iter().map(|&m| m as i64).sum();
                let ny: i64 = self.quadrants(&d, yi).iter().map(|&m| m as i64).sum();
                let n_w = (0..d.len()).filter(|&r| self.regions[r].has_w).map(|r| d[r]).sum();
                out.push(Domain {
                    multiplicities: d.clone(),
                    maslov4: e4 + nx + ny,
                    n_w,
                });
            }
            // Odometer over the free regions.
            let mut k = 0;
            loop {
                if k == free.len() {
                    return Ok(out);
                }
                let r = free[k];
                if d[r] < bound {
                    d[r] += 1;
                    break;
                }
                d[r] = 0;
                k += 1;
            }
        }
    }

    /// Whether `d` is an embedded bigon from `x` to `y`.
    pub fn is_embedded_bigon(&self, d: &Domain, xi: usize, yi: usize) -> bool {
        let m = &d.multiplicities;
        if xi == yi || m.iter().any(|&k| k > 1) || d.maslov4 != 4 {
            return false;
        }
        let e4: i64 = (0..m.len()).map(|r| m[r] as i64 * self.euler4(r)).sum();
        if e4 != 2 {
            return false;
        }
        for k in 0..self.points.len() {
            let q = self.quadrants(m, k);
            let covered = q.iter().filter(|&&c| c > 0).count();
            let ok = if k == xi || k == yi {
                covered == 1
            } else {
                match covered {
                    0 | 4 => true,
                    2 => (0..4).any(|s| q[s] > 0 && q[(s + 1) % 4] > 0),
                    _ => false,
                }
            };
            if !ok {
                return false;
            }
        }
        self.connected(m)
    }

    fn connected(&self, m: &[u32]) -> bool {
        let support: Vec<usize> = (0..m.len()).filter(|&r| m[r] > 0).collect();
        let Some(&start) = support.first() else {
            return false;
        };
        let arcs: Vec<BTreeSet<&str>> = self
            .regions
            .iter()
            .map(|r| r.boundary.iter().map(|a| a.id.as_str()).collect())
            .collect();
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(r) = stack.pop() {
            for &s in &support {
                if !seen.contains(&s) && !arcs[r].is_disjoint(&arcs[s]) {
                    seen.insert(s);
                    stack.push(s);
                }
            }
        }
        seen.len() == support.len()
    }

    /// Returns a copy with labels and point ids renamed.
    pub fn relabeled(
        &self,
        labels: &BTreeMap<Label, Label>,
        points: &BTreeMap<String, String>,
    ) -> Result<TorusDiagram> {
        let lab = |l: &Label| labels.get(l).cloned().unwrap_or_else(|| l.clone());
        let pts = self
            .points
            .iter()
            .map(|p| {
                let id = points.get(p.id()).cloned().unwrap_or_else(|| p.id().to_string());
                Point::new(&id, lab(&p.pair().0), lab(&p.pair().1))
            })
            .collect::<Result<Vec<_>>>()?;
        let regions = self
            .regions
            .iter()
            .map(|r| Region {
                boundary: r
                    .boundary
                    .iter()
                    .map(|a| Arc {
                        label: lab(&a.label),
                        ..a.clone()
                    })
                    .collect(),
                ..r.clone()
            })
            .collect();
        Ok(TorusDiagram {
            labels: self.labels.iter().map(lab).collect(),
            points: pts,
            regions,
        })
    }
}

/// Oracle answering bigon queries by domain enumeration.
#[derive(Debug)]
pub struct TorusOracle {
    diagram: TorusDiagram,
    bound: u32,
    cache: Mutex<HashMap<DomainKey, Vec<Domain>>>,
}

/// Cache key: label pair and the indices of the start and end points.
type DomainKey = (Label, Label, usize, usize);

impl TorusOracle {
    pub fn new(diagram: TorusDiagram) -> Self {
        Self::with_bound(diagram, DEFAULT_MULTIPLICITY_BOUND)
    }

    pub fn with_bound(diagram: TorusDiagram, bound: u32) -> Self {
        TorusOracle {
            diagram,
            bound,
            cache: Mutex::new(HashMap::new()),
        }
    }

    /// Bound on region multiplicities used during enumeration.
    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn diagram(&self) -> &TorusDiagram {
        &self.diagram
    }

    /// Domains for a bigon query: `(x, y)` are the points at vertices
    /// `(beta, alpha)` and `(alpha, beta)` of the canonical word `(alpha, beta)`.
    fn bigon_domains(&self, q: &PointedQuery) -> Result<(usize, usize, Vec<Domain>)> {
        if q.space.arity() != 2 {
            return Err(Error::Unsupported(format!(
                "torus backend handles bigons only, got {}",
                q.space.boundary()
            )));
        }
        let w = q.space.boundary().labels();
        let (alpha, beta) = (&w[0], &w[1]);
        let (x, y) = (&q.points[1], &q.points[0]);
        let xi = self
            .diagram
            .point_index(x)
            .ok_or_else(|| Error::Unsupported(format!("unknown point {x}")))?;
        let yi = self
            .diagram
            .point_index(y)
            .ok_or_else(|| Error::Unsupported(format!("unknown point {y}")))?;
        let key = (alpha.clone(), beta.clone(), xi, yi);
        let all = {
            let mut cache = self.cache.lock().expect("poisoned");
            match cache.get(&key) {
                Some(v) => v.clone(),
                None => {
                    let v = self.diagram.domains(alpha, beta, x, y, self.bound)?;
                    cache.insert(key, v.clone());
                    v
                }
            }
        };
        let mu4 = 4 * q.space.maslov() as i64;
        let stratum = q.space.filtration().stratum();
        let keep = all
            .into_iter()
            .filter(|d| d.maslov4 == mu4 && stratum.map_or(true, |k| d.n_w == k))
            .collect();
        Ok((xi, yi, keep))
    }
}

impl Oracle for TorusOracle {
    fn labels(&self) -> Vec<Label> {
        self.diagram.labels.clone()
    }

    fn points(&self, a: &Label, b: &Label) -> Vec<Point> {
        let k = sorted_pair(a, b);
        let mut v: Vec<Point> = self.diagram.points.iter().filter(|p| *p.pair() == k).cloned().collect();
        v.sort();
        v
    }

    fn is_empty(&self, q: &PointedQuery) -> Result<bool> {
        Ok(self.bigon_domains(q)?.2.is_empty())
    }

    fn query_count(&self, q: &PointedQuery) -> Result<CountRecord> {
        expect_dim(q, 0)?;
        let (xi, yi, ds) = self.bigon_domains(q)?;
        let mut count = false;
        for d in &ds {
            let constant = d.multiplicities.iter().all(|&m| m == 0);
            let ok = if q.space.maslov() == 0 {
                constant
            } else {
                self.diagram.is_embedded_bigon(d, xi, yi)
            };
            if !ok {
                return Err(Error::NonEmbeddedDomain(format!("{q}: {:?}", d.multiplicities)));
            }
            count ^= true;
        }
        Ok(CountRecord {
            empty: ds.is_empty(),
            count,
        })
    }

    fn query_ends(&self, q: &PointedQuery) -> Result<Vec<EndRecord>> {
        expect_dim(q, 1)?;
        let (xi, yi, ds) = self.bigon_domains(q)?;
        let w = q.space.boundary().labels();
        let (alpha, beta) = (&w[0], &w[1]);
        let stratified = q.space.filtration() != Filtration::Unfiltered;
        let mut ends = BTreeSet::new();
        for d in &ds {
            for wp in &self.diagram.points {
                if *wp.pair() != sorted_pair(alpha, beta) {
                    continue;
                }
                let first = self
                    .diagram
                    .domains(alpha, beta, &self.diagram.points[xi], wp, self.bound)?;
                for d1 in first.iter().filter(|d1| d1.maslov4 == 4) {
                    if d1.multiplicities.iter().zip(&d.multiplicities).any(|(a, b)| a > b) {
                        continue;
                    }
                    let rest: Vec<u32> = d
                        .multiplicities
                        .iter()
                        .zip(&d1.multiplicities)
                        .map(|(a, b)| a - b)
                        .collect();
                    let second = self
                        .diagram
                        .domains(alpha, beta, wp, &self.diagram.points[yi], self.bound)?;
                    if let Some(d2) = second.iter().find(|d2| d2.multiplicities == rest && d2.maslov4 == 4) {
                        // P holds vertex (alpha, beta), i.e. the piece from w to y.
                        ends.insert(EndRecord {
                            cut: (0, 1),
                            point: wp.clone(),
                            maslov: (1, 1),
                            nw: stratified.then_some((d2.n_w, d1.n_w)),
                        });
                    }
                }
            }
        }
        Ok(ends.into_iter().collect())
    }

    fn max_stratum(&self) -> u32 {
        if self.diagram.regions.iter().any(|r| r.has_w) {
            self.bound
        } else {
            0
        }
    }

    fn scope(&self) -> Result<Vec<PointedQuery>> {
        let mut out = Vec::new();
        let labels = &self.diagram.labels;
        let mut filtrations = vec![Filtration::Unfiltered, Filtration::WFiltered];
        filtrations.extend((0..=self.max_stratum()).map(Filtration::Nw));
        for (i, a) in labels.iter().enumerate() {
            for b in &labels[i + 1..] {
                let bc = BoundaryCondition::new(&[a.clone(), b.clone()])?;
                let pts = self.points(a, b);
                for mu in 0..=2 {
                    for &f in &filtrations {
                        let space = PolygonSymbol::new(bc.clone(), mu, f)?;
                        for p0 in &pts {
                            for p1 in &pts {
                                let q = PointedQuery::new(space.clone(), vec![p0.clone(), p1.clone()])?;
                                if !self.is_empty(&q)? {
                                    out.push(q);
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(out)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DiagramFile {
    labels: Vec<String>,
    points: Vec<PointSpec>,
    regions: Vec<RegionSpec>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PointSpec {
    id: String,
    labels: [String; 2],
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RegionSpec {
    id: String,
    chi: i32,
    boundary: Vec<ArcSpec>,
    corners: Vec<CornerSpec>,
    contains: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ArcSpec {
    arc: String,
    label: String,
    from: String,
    to: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CornerSpec {
    point: String,
    quadrant: u8,
}

impl DiagramFile {
    fn build(self) -> Result<TorusDiagram> {
        let parse = |m: String| Error::Parse(m);
        let labels: Vec<Label> = self.labels.iter().map(|l| Label::new(l)).collect::<Result<_>>()?;
        let label = |s: &str| -> Result<Label> {
            labels
                .iter()
                .find(|l| l.as_str() == s)
                .cloned()
                .ok_or_else(|| parse(format!("unknown label {s}")))
        };
        let mut points = Vec::new();
        for p in &self.points {
            if points.iter().any(|q: &Point| q.id() == p.id) {
                return Err(parse(format!("point {} declared twice", p.id)));
            }
            points.push(Point::new(&p.id, label(&p.labels[0])?, label(&p.labels[1])?)?);
        }
        let point = |s: &str| -> Result<usize> {
            points
                .iter()
                .position(|p| p.id() == s)
                .ok_or_else(|| parse(format!("unknown point {s}")))
        };
        let mut regions = Vec::new();
        let mut quadrant_owner: BTreeMap<(usize, u8), String> = BTreeMap::new();
        let mut arc_uses: BTreeMap<String, Vec<(Label, usize, usize)>> = BTreeMap::new();
        for r in &self.regions {
            let mut boundary = Vec::new();
            for a in &r.boundary {
                let l = label(&a.label)?;
                let (from, to) = (point(&a.from)?, point(&a.to)?);
                for &p in &[from, to] {
                    let pr = points[p].pair();
                    if pr.0 != l && pr.1 != l {
                        return Err(parse(format!(
                            "arc {} on {l} ends at {} off the curve",
                            a.arc, points[p]
                        )));
                    }
                }
                arc_uses.entry(a.arc.clone()).or_default().push((l.clone(), from, to));
                boundary.push(Arc {
                    id: a.arc.clone(),
                    label: l,
                    from,
                    to,
                });
            }
            let mut corners = Vec::new();
            for c in &r.corners {
                if c.quadrant > 3 {
                    return Err(parse(format!("quadrant {} out of range", c.quadrant)));
                }
                let p = point(&c.point)?;
                if let Some(other) = quadrant_owner.insert((p, c.quadrant), r.id.clone()) {
                    return Err(Error::InconsistentComplex(format!(
                        "quadrant {} of {} claimed by {other} and {}",
                        c.quadrant, c.point, r.id
                    )));
                }
                corners.push((p, c.quadrant));
            }
            for c in &r.contains {
                if c != "z" && c != "w" {
                    return Err(parse(format!("unknown basepoint {c}")));
                }
            }
            regions.push(Region {
                id: r.id.clone(),
                chi: r.chi,
                boundary,
                corners,
                has_z: r.contains.iter().any(|c| c == "z"),
                has_w: r.contains.iter().any(|c| c == "w"),
            });
        }
        let zs = regions.iter().filter(|r| r.has_z).count();
        if zs != 1 {
            return Err(parse(format!("basepoint z must lie in exactly one region, found {zs}")));
        }
        if regions.iter().filter(|r| r.has_w).count() > 1 {
            return Err(parse("basepoint w lies in more than one region".into()));
        }
        for (p, point) in points.iter().enumerate() {
            for q in 0..4u8 {
                if !quadrant_owner.contains_key(&(p, q)) {
                    return Err(Error::InconsistentComplex(format!("quadrant {q} of {point} unclaimed")));
                }
            }
        }
        for (id, uses) in &arc_uses {
            let ok = uses.len() == 2 && uses[0].0 == uses[1].0 && uses[0].1 == uses[1].2 && uses[0].2 == uses[1].1;
            if !ok {
                return Err(Error::InconsistentComplex(format!(
                    "arc {id} must bound two sides with opposite orientations"
                )));
            }
        }
        let v = points.len() as i64;
        let e = arc_uses.len() as i64;
        let chi: i64 = regions.iter().map(|r| r.chi as i64).sum();
        if v - e + chi != 0 {
            return Err(Error::InconsistentComplex(format!(
                "V - E + sum(chi) = {v} - {e} + {chi} != 0 for a torus"
            )));
        }
        Ok(TorusDiagram {
            labels,
            points,
            regions,
        })
    }
}
