//! Dense square and rectangular matrices over a finite field, stored as codes.

use crate::ffield::FieldCtx;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<u64>]) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Matrix { rows: r, cols: c, data: rows.concat() }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn to_rows(&self) -> Vec<Vec<u64>> {
        self.data.chunks(self.cols.max(1)).map(<[u64]>::to_vec).take(self.rows).collect()
    }

    pub fn mul(&self, other: &Matrix, f: &FieldCtx) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b != 0 {
                        let cur = out.get(i, j);
                        out.set(i, j, f.add(cur, f.mul(a, b)));
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix, f: &FieldCtx) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    /// Rank by Gaussian elimination.
    pub fn rank(&self, f: &FieldCtx) -> usize {
        let mut m = self.clone();
        m.row_reduce(f, None)
    }

    pub fn is_invertible(&self, f: &FieldCtx) -> bool {
        self.rows == self.cols && self.rank(f) == self.rows
    }

    /// Gauss-Jordan inverse, or `None` when singular.
    pub fn inverse(&self, f: &FieldCtx) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut inv = Matrix::identity(n);
        (m.row_reduce(f, Some(&mut inv)) == n).then_some(inv)
    }

    /// Reduces to reduced row echelon form, mirroring row operations on
    /// `companion`; returns the rank.
    fn row_reduce(&mut self, f: &FieldCtx, mut companion: Option<&mut Matrix>) -> usize {
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(piv) = (rank..self.rows).find(|&r| self.get(r, col) != 0) else { continue };
            self.swap_rows(piv, rank);
            if let Some(c) = companion.as_deref_mut() {
                c.swap_rows(piv, rank);
            }
            let inv = f.inv(self.get(rank, col)).expect("nonzero pivot");
            self.scale_row(rank, inv, f);
            if let Some(c) = companion.as_deref_mut() {
                c.scale_row(rank, inv, f);
            }
            for r in 0..self.rows {
                if r != rank {
                    let factor = self.get(r, col);
                    if factor != 0 {
                        let neg = f.neg(factor);
                        self.axpy_row(r, rank, neg, f);
                        if let Some(c) = companion.as_deref_mut() {
                            c.axpy_row(r, rank, neg, f);
                        }
                    }
                }
            }
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        rank
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn scale_row(&mut self, r: usize, s: u64, f: &FieldCtx) {
        for j in 0..self.cols {
            let v = self.get(r, j);
            self.set(r, j, f.mul(v, s));
        }
    }

    /// row[dst] += s · row[src]
    fn axpy_row(&mut self, dst: usize, src: usize, s: u64, f: &FieldCtx) {
        for j in 0..self.cols {
            let v = self.get(src, j);
            if v != 0 {
                let cur = self.get(dst, j);
                self.set(dst, j, f.add(cur, f.mul(s, v)));
            }
        }
    }
}

/// Incremental row-echelon basis of a subspace of `F_q^n`, used to reduce
/// vectors modulo the subspace.
#[derive(Clone, Debug, Default)]
pub struct EchelonBasis {
    /// Rows normalized to have a leading 1 at `pivots[i]`.
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl EchelonBasis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Canonical representative of `v` modulo the span.
    pub fn reduce(&self, v: &[u64], f: &FieldCtx) -> Vec<u64> {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = v[p];
            if c != 0 {
                let neg = f.neg(c);
                for (x, &y) in v.iter_mut().zip(row) {
                    if y != 0 {
                        *x = f.add(*x, f.mul(neg, y));
                    }
                }
            }
        }
        v
    }

    /// Adds `v` to the span; returns `false` if it was already there.
    pub fn insert(&mut self, v: &[u64], f: &FieldCtx) -> bool {
        let mut r = self.reduce(v, f);
        let Some(p) = r.iter().position(|&x| x != 0) else { return false };
        let inv = f.inv(r[p]).unwrap();
        for x in r.iter_mut() {
            *x = f.mul(*x, inv);
        }
        // keep existing rows reduced at the new pivot
        for row in self.rows.iter_mut() {
            let c = row[p];
            if c != 0 {
                let neg = f.neg(c);
                for (x, &y) in row.iter_mut().zip(&r) {
                    *x = f.add(*x, f.mul(neg, y));
                }
            }
        }
        self.rows.push(r);
        self.pivots.push(p);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::field_make;

    #[test]
    fn inverse_and_rank() {
        let f = field_make(5, 1, None).unwrap();
        let m = Matrix::from_rows(&[vec![1, 2], vec![3, 4]]);
        let inv = m.inverse(&f).unwrap();
        assert_eq!(m.mul(&inv, &f), Matrix::identity(2));
        let s = Matrix::from_rows(&[vec![1, 2], vec![2, 4]]);
        assert_eq!(s.rank(&f), 1);
        assert!(s.inverse(&f).is_none());
    }

    #[test]
    fn gl2_f2_has_six_elements() {
        let f = field_make(2, 1, None).unwrap();
        let count = (0..16u64)
            .filter(|&c| {
                let m = Matrix { rows: 2, cols: 2, data: (0..4).map(|i| (c >> i) & 1).collect() };
                m.is_invertible(&f)
            })
            .count();
        assert_eq!(count, 6);
    }

    #[test]
    fn echelon_reduction_is_canonical() {
        let f = field_make(3, 1, None).unwrap();
        let mut b = EchelonBasis::new();
        assert!(b.insert(&[1, 2, 0], &f));
        assert!(b.insert(&[0, 1, 1], &f));
        assert!(!b.insert(&[1, 0, 1], &f));
        // v and v + (basis vector) share a representative
        let v = [2, 2, 2];
        let w = [0, 1, 2];
        assert_eq!(b.reduce(&v, &f), b.reduce(&w, &f));
        assert_eq!(b.dim(), 2);
    }
}
