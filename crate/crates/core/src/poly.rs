//! GF(2)[U] scalars and dense matrices over them.
//!
//! A [`Poly2`] stores coefficients as bits of a `u64` (bit `i` is `U^i`).
//! Plain GF(2) is the subring of constants.

use std::fmt;
use std::ops::{Add, AddAssign, Mul};

use crate::error::{Error, Result};

/// Polynomial in `U` over GF(2), degree at most 63.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Poly2(pub u64);

impl Poly2 {
    pub const ZERO: Poly2 = Poly2(0);
    pub const ONE: Poly2 = Poly2(1);

    pub fn u_pow(k: u32) -> Poly2 {
        assert!(k < 64, "U-degree {k} out of range");
        Poly2(1 << k)
    }

    pub fn from_bool(b: bool) -> Poly2 {
        Poly2(b as u64)
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn degree(self) -> Option<u32> {
        (self.0 != 0).then(|| 63 - self.0.leading_zeros())
    }

    /// Checked product; fails instead of wrapping past degree 63.
    pub fn checked_mul(self, rhs: Poly2) -> Option<Poly2> {
        match (self.degree(), rhs.degree()) {
            (Some(a), Some(b)) if a + b > 63 => None,
            _ => {
                let mut acc = 0u64;
                let mut r = rhs.0;
                let mut i = 0;
                while r != 0 {
                    if r & 1 == 1 {
                        acc ^= self.0 << i;
                    }
                    r >>= 1;
                    i += 1;
                }
                Some(Poly2(acc))
            }
        }
    }

    /// Euclidean division: `(q, r)` with `self = q * d + r`, `deg r < deg d`.
    pub fn div_rem(self, d: Poly2) -> (Poly2, Poly2) {
        let dd = d.degree().expect("division by zero polynomial");
        let mut q = 0u64;
        let mut r = self.0;
        while let Some(dr) = Poly2(r).degree() {
            if dr < dd {
                break;
            }
            let s = dr - dd;
            q ^= 1 << s;
            r ^= d.0 << s;
        }
        (Poly2(q), Poly2(r))
    }

    /// Evaluation at `U = 0`.
    pub fn constant(self) -> bool {
        self.0 & 1 == 1
    }
}

// Addition in characteristic two is XOR.
#[allow(clippy::suspicious_arithmetic_impl)]
impl Add for Poly2 {
    type Output = Poly2;
    fn add(self, rhs: Poly2) -> Poly2 {
        Poly2(self.0 ^ rhs.0)
    }
}

#[allow(clippy::suspicious_op_assign_impl)]
impl AddAssign for Poly2 {
    fn add_assign(&mut self, rhs: Poly2) {
        self.0 ^= rhs.0;
    }
}

impl Mul for Poly2 {
    type Output = Poly2;
    fn mul(self, rhs: Poly2) -> Poly2 {
        self.checked_mul(rhs).expect("GF(2)[U] product exceeds degree 63")
    }
}

impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return f.write_str("0");
        }
        let mut parts = Vec::new();
        for i in 0..64 {
            if self.0 >> i & 1 == 1 {
                parts.push(match i {
                    0 => "1".to_string(),
                    1 => "U".to_string(),
                    _ => format!("U^{i}"),
                });
            }
        }
        f.write_str(&parts.join("+"))
    }
}

impl fmt::Debug for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Dense row-major matrix over GF(2)[U].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Poly2>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Mat {
        Mat {
            rows,
            cols,
            data: vec![Poly2::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Mat {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Poly2::ONE);
        }
        m
    }

    /// Builds a GF(2) matrix from 0/1 rows.
    pub fn from_bits(rows: &[&[u8]]) -> Mat {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Mat::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged matrix");
            for (j, &b) in row.iter().enumerate() {
                m.set(i, j, Poly2(b as u64 & 1));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Poly2 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Poly2) {
        self.data[i * self.cols + j] = v;
    }

    pub fn add_at(&mut self, i: usize, j: usize, v: Poly2) {
        self.data[i * self.cols + j] += v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|p| p.is_zero())
    }

    pub fn entries(&self) -> &[Poly2] {
        &self.data
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn sum(&self, other: &Mat) -> Option<Mat> {
        if self.rows != other.rows || self.cols != other.cols {
            return None;
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| *a + *b).collect();
        Some(Mat {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &Mat) -> Option<Mat> {
        if self.cols != other.rows {
            return None;
        }
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.add_at(i, j, a * b);
                    }
                }
            }
        }
        Some(out)
    }

    /// Largest U-degree among the entries.
    pub fn max_degree(&self) -> Option<u32> {
        self.data.iter().filter_map(|p| p.degree()).max()
    }

    /// Rank over GF(2) of a constant matrix.
    pub fn rank_gf2(&self) -> usize {
        let rows: Vec<Vec<bool>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).constant()).collect())
            .collect();
        crate::linalg::rank(rows, self.cols)
    }

    /// Smith normal form diagonal over the PID GF(2)[U]: the nonzero
    /// invariant factors in divisibility order.
    pub fn invariant_factors(&self, bound: u32) -> Result<Vec<Poly2>> {
        let mut a = self.clone();
        let (m, n) = (a.rows, a.cols);
        let mut out = Vec::new();
        for t in 0..m.min(n) {
            loop {
                let pivot = (t..m)
                    .flat_map(|i| (t..n).map(move |j| (i, j)))
                    .filter(|&(i, j)| !a.get(i, j).is_zero())
                    .min_by_key(|&(i, j)| a.get(i, j).degree());
                let Some((pi, pj)) = pivot else {
                    return Ok(out);
                };
                a.swap_rows(t, pi);
                a.swap_cols(t, pj);
                let p = a.get(t, t);
                let mut rest = false;
                for i in t + 1..m {
                    let (q, r) = a.get(i, t).div_rem(p);
                    if !q.is_zero() {
                        a.row_axpy(i, t, q, bound)?;
                    }
                    rest |= !r.is_zero();
                }
                for j in t + 1..n {
                    let (q, r) = a.get(t, j).div_rem(p);
                    if !q.is_zero() {
                        a.col_axpy(j, t, q, bound)?;
                    }
                    rest |= !r.is_zero();
                }
                if rest {
                    continue;
                }
                // The pivot must divide the remaining block.
                let bad = (t + 1..m)
                    .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                    .find(|&(i, j)| !a.get(i, j).div_rem(p).1.is_zero());
                match bad {
                    Some((i, _)) => a.row_axpy(t, i, Poly2::ONE, bound)?,
                    None => break,
                }
            }
            out.push(a.get(t, t));
        }
        Ok(out)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row[dst] += q * row[src]`.
    fn row_axpy(&mut self, dst: usize, src: usize, q: Poly2, bound: u32) -> Result<()> {
        for j in 0..self.cols {
            let v = checked(self.get(src, j), q, bound)?;
            self.add_at(dst, j, v);
        }
        Ok(())
    }

    /// `col[dst] += q * col[src]`.
    fn col_axpy(&mut self, dst: usize, src: usize, q: Poly2, bound: u32) -> Result<()> {
        for i in 0..self.rows {
            let v = checked(self.get(i, src), q, bound)?;
            self.add_at(i, dst, v);
        }
        Ok(())
    }
}

fn checked(a: Poly2, b: Poly2, bound: u32) -> Result<Poly2> {
    let p = a.checked_mul(b).ok_or(Error::UDegree { found: 64, bound })?;
    match p.degree() {
        Some(d) if d > bound => Err(Error::UDegree { found: d, bound }),
        _ => Ok(p),
    }
}

impl Mat {
    /// One-line form `[r1; r2; ...]` with entries separated by spaces.
    pub fn inline(&self) -> String {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.get(i, j).to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        format!("[{}]", rows.join("; "))
    }
}

impl fmt::Display for Mat {
    /// Row-major text: one line per row, entries separated by spaces.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}\n{}", self.rows, self.cols, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_division_invert() {
        let a = Poly2(0b1011);
        let d = Poly2(0b110);
        let p = a.checked_mul(d).unwrap();
        assert_eq!(p.div_rem(d), (a, Poly2::ZERO));
        let (q, r) = Poly2(0b10011).div_rem(d);
        assert_eq!(q.checked_mul(d).unwrap() + r, Poly2(0b10011));
        assert!(r.degree() < d.degree());
    }

    #[test]
    fn product_refuses_to_overflow() {
        assert_eq!(Poly2::u_pow(40).checked_mul(Poly2::u_pow(30)), None);
        assert_eq!(Poly2::u_pow(30).checked_mul(Poly2::u_pow(33)), Some(Poly2::u_pow(63)));
    }

    #[test]
    fn display() {
        assert_eq!(Poly2::ZERO.to_string(), "0");
        assert_eq!(Poly2::ONE.to_string(), "1");
        let m = Mat::from_bits(&[&[1, 0], &[1, 1]]);
        assert_eq!(m.inline(), "[1 0; 1 1]");
    }

    #[test]
    fn matrix_cube_equals_square() {
        let a = Mat::from_bits(&[&[1, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        let a2 = a.mul(&a).unwrap();
        assert_eq!(a2.mul(&a).unwrap(), a2);
        assert_eq!(a.rank_gf2(), 2);
        assert_eq!(a.transpose().transpose(), a);
        assert_eq!(a.sum(&a).unwrap(), Mat::zeros(3, 3));
        assert!(a.mul(&Mat::zeros(2, 2)).is_none());
    }

    #[test]
    fn invariant_factors_of_u_differential() {
        // d = [[U, 0], [0, 0]]: one torsion summand GF(2)[U]/U.
        let mut d = Mat::zeros(2, 2);
        d.set(0, 0, Poly2::u_pow(1));
        assert_eq!(d.invariant_factors(8).unwrap(), vec![Poly2::u_pow(1)]);
        let mut e = Mat::zeros(2, 2);
        e.set(0, 1, Poly2(0b11));
        e.set(1, 0, Poly2::u_pow(1));
        let f = e.invariant_factors(8).unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(f[0], Poly2::ONE);
        assert_eq!(f[1], Poly2(0b110));
    }
}
