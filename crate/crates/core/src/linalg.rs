//! Exact Gaussian elimination over GF(2) on packed bit rows.

/// A row of bits packed into 64-bit words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitRow {
    words: Vec<u64>,
}

impl BitRow {
    pub fn zeros(len: usize) -> BitRow {
        BitRow {
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn from_indices(len: usize, ones: impl IntoIterator<Item = usize>) -> BitRow {
        let mut r = BitRow::zeros(len);
        for i in ones {
            r.flip(i);
        }
        r
    }

    /// A copy padded (or truncated) to hold `len` bits.
    pub fn resized(&self, len: usize) -> BitRow {
        let mut words = self.words.clone();
        words.resize(len.div_ceil(64), 0);
        BitRow { words }
    }

    pub fn get(&self, i: usize) -> bool {
        self.words.get(i / 64).is_some_and(|w| w >> (i % 64) & 1 == 1)
    }

    pub fn flip(&mut self, i: usize) {
        self.words[i / 64] ^= 1 << (i % 64);
    }

    pub fn xor(&mut self, other: &BitRow) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    pub fn leading(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, w)| **w != 0)
            .map(|(k, w)| k * 64 + w.trailing_zeros() as usize)
    }
}

/// Incremental echelon basis of a GF(2) subspace.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<BitRow>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new() -> Echelon {
        Echelon::default()
    }

    /// Reduces `v` against the basis.
    pub fn reduce(&self, v: &BitRow) -> BitRow {
        let mut v = v.clone();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v.get(p) {
                v.xor(row);
            }
        }
        v
    }

    /// Inserts `v`; returns whether it enlarged the span.
    pub fn insert(&mut self, v: &BitRow) -> bool {
        let r = self.reduce(v);
        let Some(p) = r.leading() else {
            return false;
        };
        for row in &mut self.rows {
            if row.get(p) {
                row.xor(&r);
            }
        }
        self.rows.push(r);
        self.pivots.push(p);
        true
    }

    pub fn contains(&self, v: &BitRow) -> bool {
        self.reduce(v).is_zero()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }
}

/// Rank of a GF(2) matrix given as boolean rows.
pub fn rank(rows: Vec<Vec<bool>>, cols: usize) -> usize {
    let mut e = Echelon::new();
    for row in rows {
        let r = BitRow::from_indices(cols, row.iter().enumerate().filter(|(_, b)| **b).map(|(i, _)| i));
        e.insert(&r);
    }
    e.rank()
}

/// Echelon basis that records, for each row, which inserted vectors it
/// combines; dependent insertions return their combination.
#[derive(Clone, Debug)]
pub struct TrackedEchelon {
    count: usize,
    rows: Vec<(usize, BitRow, BitRow)>,
}

impl TrackedEchelon {
    /// `count` bounds the number of insertions.
    pub fn new(count: usize) -> TrackedEchelon {
        TrackedEchelon {
            count,
            rows: Vec::new(),
        }
    }

    /// Inserts `v` as insertion number `k`. Returns `None` if `v` enlarged
    /// the span, otherwise the set of insertions summing to zero.
    pub fn insert(&mut self, k: usize, v: &BitRow) -> Option<BitRow> {
        let mut v = v.clone();
        let mut comb = BitRow::from_indices(self.count, [k]);
        for (p, r, c) in &self.rows {
            if v.get(*p) {
                v.xor(r);
                comb.xor(c);
            }
        }
        let Some(p) = v.leading() else {
            return Some(comb);
        };
        for (_, r, c) in &mut self.rows {
            if r.get(p) {
                r.xor(&v);
                c.xor(&comb);
            }
        }
        self.rows.push((p, v, comb));
        None
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn echelon_membership() {
        let mut e = Echelon::new();
        let a = BitRow::from_indices(4, [0, 1]);
        let b = BitRow::from_indices(4, [1, 2]);
        assert!(e.insert(&a));
        assert!(e.insert(&b));
        let mut c = a.clone();
        c.xor(&b);
        assert!(e.contains(&c));
        assert!(!e.insert(&c));
        assert!(!e.contains(&BitRow::from_indices(4, [3])));
        assert_eq!(e.rank(), 2);
    }

    #[test]
    fn tracked_echelon_reports_dependencies() {
        let mut e = TrackedEchelon::new(3);
        assert!(e.insert(0, &BitRow::from_indices(3, [0, 1])).is_none());
        assert!(e.insert(1, &BitRow::from_indices(3, [1, 2])).is_none());
        let dep = e.insert(2, &BitRow::from_indices(3, [0, 2])).unwrap();
        assert_eq!(dep, BitRow::from_indices(3, [0, 1, 2]));
    }

    #[test]
    fn rank_of_boolean_rows() {
        let rows = vec![
            vec![true, false, true],
            vec![false, true, true],
            vec![true, true, false],
        ];
        assert_eq!(rank(rows, 3), 2);
        assert_eq!(rank(Vec::new(), 3), 0);
    }
}
