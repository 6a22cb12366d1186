//! Exact linear algebra over ℚ.
//!
//! Rank of large sparse systems goes through [`SparseEchelon`], an
//! incremental fraction-free eliminator on integer rows kept primitive.
//! Small dense problems (kernels, particular solutions) use reduced row
//! echelon form over the rationals.

use std::collections::BTreeMap;

use num::{BigInt, Integer, One, Signed, Zero};

use crate::symbolic::Q;

type IntRow = Vec<(usize, BigInt)>;

/// Clears denominators of a rational row and divides by the content, so
/// the first entry is positive.
fn primitive_int_row(row: &[(usize, Q)]) -> IntRow {
    let mut lcm = BigInt::one();
    for (_, v) in row {
        lcm = lcm.lcm(v.denom());
    }
    let ints: IntRow = row
        .iter()
        .filter(|(_, v)| !v.is_zero())
        .map(|(c, v)| (*c, v.numer() * (&lcm / v.denom())))
        .collect();
    make_primitive(ints)
}

fn make_primitive(mut row: IntRow) -> IntRow {
    let mut g = BigInt::zero();
    for (_, v) in &row {
        g = g.gcd(v);
        if g.is_one() {
            break;
        }
    }
    if row.first().map(|(_, v)| v.is_negative()).unwrap_or(false) {
        g = -g;
    }
    if !g.is_zero() && !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v = &*v / &g;
        }
    }
    row
}

/// `a * row - b * pivot`, dropping zeros; both sorted by column.
fn combine(a: &BigInt, row: &IntRow, b: &BigInt, pivot: &IntRow) -> IntRow {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let ci = row.get(i).map(|e| e.0).unwrap_or(usize::MAX);
        let cj = pivot.get(j).map(|e| e.0).unwrap_or(usize::MAX);
        let (col, v) = if ci < cj {
            i += 1;
            (ci, a * &row[i - 1].1)
        } else if cj < ci {
            j += 1;
            (cj, -(b * &pivot[j - 1].1))
        } else {
            i += 1;
            j += 1;
            (ci, a * &row[i - 1].1 - b * &pivot[j - 1].1)
        };
        if !v.is_zero() {
            out.push((col, v));
        }
    }
    out
}

/// Row echelon form built one row at a time with fraction-free updates.
#[derive(Default, Debug, Clone)]
pub struct SparseEchelon {
    pivots: BTreeMap<usize, IntRow>,
}

impl SparseEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    /// Inserts a row given as `(column, value)` pairs; returns whether it was
    /// independent of the rows inserted so far.
    pub fn insert(&mut self, row: &[(usize, Q)]) -> bool {
        let mut sorted: Vec<(usize, Q)> = row.iter().filter(|(_, v)| !v.is_zero()).cloned().collect();
        sorted.sort_by_key(|e| e.0);
        let mut r = primitive_int_row(&sorted);
        while let Some((lead, lv)) = r.first().cloned() {
            match self.pivots.get(&lead) {
                Some(p) => {
                    let pv = &p[0].1;
                    let g = pv.gcd(&lv);
                    let a = pv / &g;
                    let b = &lv / &g;
                    r = make_primitive(combine(&a, &r, &b, p));
                }
                None => {
                    self.pivots.insert(lead, r);
                    return true;
                }
            }
        }
        false
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Rank of a sparse matrix given by rows (or columns; rank is symmetric).
pub fn sparse_rank<'a, I>(rows: I) -> usize
where
    I: IntoIterator<Item = &'a Vec<(usize, Q)>>,
{
    let mut e = SparseEchelon::new();
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

/// Dense rational matrix stored row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Q>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![Q::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Q>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(Vec::len).unwrap_or(0);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        QMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn get(&self, i: usize, j: usize) -> &Q {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Q) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Q] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul_vec(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = QMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + a * b;
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (QMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m.get(r, c).recip();
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..m.cols {
                    let v = m.get(i, j) - &f * m.get(r, j);
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        let rows: Vec<Vec<(usize, Q)>> = (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(j, v)| (j, v.clone()))
                    .collect()
            })
            .collect();
        sparse_rank(&rows)
    }

    /// Basis of `{v : self · v = 0}`, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<Q>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Q::zero(); self.cols];
                v[f] = Q::one();
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r.get(i, f).clone();
                }
                v
            })
            .collect()
    }

    /// A solution of `self · v = rhs`, or `None` if the system is inconsistent.
    pub fn solve(&self, rhs: &[Q]) -> Option<Vec<Q>> {
        assert_eq!(rhs.len(), self.rows);
        let mut aug = QMatrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, rhs[i].clone());
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut v = vec![Q::zero(); self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = r.get(i, self.cols).clone();
        }
        Some(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::{q, qr};

    fn m(rows: &[&[i64]]) -> QMatrix {
        QMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect())
    }

    #[test]
    fn rank_and_kernel() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        let ker = a.nullspace();
        assert_eq!(ker.len(), 1);
        assert!(a.mul_vec(&ker[0]).iter().all(Zero::is_zero));
    }

    #[test]
    fn rational_entries() {
        let a = QMatrix::from_rows(vec![vec![qr(1, 2), qr(1, 3)], vec![qr(3, 2), q(1)]]);
        assert_eq!(a.rank(), 1);
    }

    #[test]
    fn solve_consistent_and_not() {
        let a = m(&[&[0, -2], &[2, 0]]);
        assert_eq!(a.solve(&[q(1), q(0)]), Some(vec![q(0), qr(-1, 2)]));
        let s = m(&[&[1, 1], &[1, 1]]);
        assert_eq!(s.solve(&[q(1), q(2)]), None);
    }

    #[test]
    fn sparse_echelon_detects_dependence() {
        let mut e = SparseEchelon::new();
        assert!(e.insert(&[(0, q(2)), (3, q(4))]));
        assert!(e.insert(&[(3, q(1)), (5, q(1))]));
        assert!(!e.insert(&[(0, q(1)), (3, q(3)), (5, q(1))]));
        assert!(e.insert(&[(5, qr(1, 7))]));
        assert_eq!(e.rank(), 3);
    }
}
