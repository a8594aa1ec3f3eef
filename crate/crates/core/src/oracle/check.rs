//! Consistency checks on oracle data.
//!
//! For every one-dimensional space in scope, each end must split the parent
//! word correctly with additive Maslov indices, and the broken configurations
//! must pair up: the compactified space is a compact one-manifold, so the
//! number of its ends, counted as `#P * #Q` per record, is even.

use std::fmt;

use super::{EndRecord, Oracle, Piece, PointedQuery};
use crate::error::Result;
use crate::types::Deco;

/// Outcome of [`check_oracle`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckReport {
    /// Number of one-dimensional spaces examined.
    pub spaces: usize,
    /// Number of end records examined.
    pub ends: usize,
    pub violations: Vec<String>,
    /// Informational lines, e.g. defaulted queries.
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.violations {
            writeln!(f, "CHECK oracle-consistency FAIL {v}")?;
        }
        if self.is_clean() {
            writeln!(
                f,
                "CHECK oracle-consistency PASS {} spaces, {} ends",
                self.spaces, self.ends
            )?;
        }
        for n in &self.notes {
            writeln!(f, "NOTE {n}")?;
        }
        Ok(())
    }
}

/// The fully pointed space of a piece whose new vertex maps to `end.point`.
pub fn piece_query(piece: &Piece, end: &EndRecord) -> Result<PointedQuery> {
    let g = piece.finish(Deco::Pointed(end.point.clone()))?;
    let points = g
        .decos()
        .iter()
        .map(|d| d.point().cloned().expect("fully pointed"))
        .collect();
    PointedQuery::new(g.space().clone(), points)
}

/// Checks every one-dimensional space in the oracle's scope.
pub fn check_oracle(o: &dyn Oracle) -> Result<CheckReport> {
    let mut report = CheckReport::default();
    for q in o.scope()? {
        if q.space.dimension() != 1 {
            continue;
        }
        report.spaces += 1;
        let ends = o.query_ends(&q)?;
        report.ends += ends.len();
        let decos: Vec<Deco> = q.points.iter().cloned().map(Deco::Pointed).collect();
        let mut parity = false;
        let mut broken = false;
        for e in &ends {
            let (p, r) = match e.pieces(&q.space, &decos) {
                Ok(x) => x,
                Err(err) => {
                    report.violations.push(format!("{q}: {err}"));
                    broken = true;
                    continue;
                }
            };
            let cp = o.query_count(&piece_query(&p, e)?)?;
            let cr = o.query_count(&piece_query(&r, e)?)?;
            parity ^= cp.count && cr.count;
        }
        if parity && !broken {
            report.violations.push(format!(
                "{q}: odd number of broken configurations across {} ends (unmatched end)",
                ends.len()
            ));
        }
    }
    report.notes = o
        .defaulted()
        .into_iter()
        .map(|d| format!("defaulted to empty: {d}"))
        .collect();
    Ok(report)
}
