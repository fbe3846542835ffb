//! Semimagic squares: `n × n` matrices whose row and column sums all equal
//! one constant `σ(A)`.
//!
//! Coordinates are the `(n−1)²` entries of the top-left block followed by
//! `σ`; the last row and column are then forced. For `n = 1` the only
//! coordinate is `σ` itself.

use std::sync::Arc;

use super::EnumerableRing;
use crate::error::{Error, Result};
use crate::ffield::FieldCtx;
use crate::matrix::Matrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemimagicElem {
    entries: Matrix,
    sigma: u64,
}

impl SemimagicElem {
    /// Validates the common row/column sum.
    pub fn new(entries: Matrix, field: &FieldCtx) -> Result<SemimagicElem> {
        let n = entries.rows;
        if n == 0 || entries.cols != n {
            return Err(Error::InvalidArgument("semimagic squares are square and nonempty".into()));
        }
        let row = |i: usize| (0..n).fold(0, |acc, j| field.add(acc, entries.get(i, j)));
        let col = |j: usize| (0..n).fold(0, |acc, i| field.add(acc, entries.get(i, j)));
        let sigma = row(0);
        if (0..n).any(|i| row(i) != sigma || col(i) != sigma) {
            return Err(Error::NotInSubring("semimagic".into()));
        }
        Ok(SemimagicElem { entries, sigma })
    }

    pub fn sigma(&self) -> u64 {
        self.sigma
    }

    pub fn entries(&self) -> &Matrix {
        &self.entries
    }
}

/// `SM_n(F_q)`.
pub struct SemimagicRing {
    pub n: usize,
    pub field: Arc<FieldCtx>,
}

pub fn semimagic_ring(n: usize, field: &Arc<FieldCtx>) -> Result<SemimagicRing> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    Ok(SemimagicRing { n, field: Arc::clone(field) })
}

impl SemimagicRing {
    /// The square with the given coordinates.
    pub fn square(&self, coords: &[u64]) -> Matrix {
        let (n, f) = (self.n, &*self.field);
        let sigma = coords[coords.len() - 1];
        let mut m = Matrix::zeros(n, n);
        if n == 1 {
            m.set(0, 0, sigma);
            return m;
        }
        let k = n - 1;
        for i in 0..k {
            for j in 0..k {
                m.set(i, j, coords[i * k + j]);
            }
        }
        for i in 0..k {
            let row: u64 = (0..k).fold(0, |acc, j| f.add(acc, m.get(i, j)));
            m.set(i, k, f.sub(sigma, row));
            let col: u64 = (0..k).fold(0, |acc, r| f.add(acc, m.get(r, i)));
            m.set(k, i, f.sub(sigma, col));
        }
        let last_row: u64 = (0..k).fold(0, |acc, j| f.add(acc, m.get(k, j)));
        m.set(k, k, f.sub(sigma, last_row));
        m
    }

    /// Coordinates of a semimagic square.
    pub fn coords(&self, m: &Matrix) -> Vec<u64> {
        let n = self.n;
        let sigma = (0..n).fold(0, |acc, j| self.field.add(acc, m.get(0, j)));
        let k = n - 1;
        let mut v = Vec::with_capacity(k * k + 1);
        for i in 0..k {
            for j in 0..k {
                v.push(m.get(i, j));
            }
        }
        v.push(sigma);
        v
    }
}

impl EnumerableRing for SemimagicRing {
    fn label(&self) -> String {
        format!("SM{}({})", self.n, self.field.label())
    }

    fn field(&self) -> &Arc<FieldCtx> {
        &self.field
    }

    fn dim(&self) -> usize {
        if self.n == 1 {
            1
        } else {
            (self.n - 1) * (self.n - 1) + 1
        }
    }

    fn one(&self) -> Vec<u64> {
        self.coords(&Matrix::identity(self.n))
    }

    fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        self.coords(&self.square(a).mul(&self.square(b), &self.field))
    }

    fn matrix(&self, a: &[u64]) -> Matrix {
        self.square(a)
    }

    fn format(&self, a: &[u64]) -> String {
        let m = self.square(a);
        let rows: Vec<String> = m
            .to_rows()
            .iter()
            .map(|r| r.iter().map(|&c| self.field.format(c)).collect::<Vec<_>>().join(" "))
            .collect();
        format!("[{}]", rows.join("; "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::EchelonBasis;
    use crate::oracle::{coords_of_index, enumerate_units, ring_size, DEFAULT_CAP};

    fn ring(n: usize, q: u64) -> SemimagicRing {
        semimagic_ring(n, &FieldCtx::parse_spec(&format!("F{q}")).unwrap()).unwrap()
    }

    #[test]
    fn dimensions_from_a_basis() {
        for n in 1..=4 {
            let r = ring(n, 3);
            let expected = if n == 1 { 1 } else { n * n - 2 * n + 2 };
            assert_eq!(r.dim(), expected);
            let mut basis = EchelonBasis::new();
            for k in 0..r.dim() {
                let mut e = vec![0; r.dim()];
                e[k] = 1;
                let m = r.square(&e);
                assert!(SemimagicElem::new(m.clone(), &r.field).is_ok());
                assert!(basis.insert(&m.data, &r.field));
            }
            assert_eq!(basis.dim(), expected);
        }
    }

    #[test]
    fn closed_under_products() {
        let r = ring(3, 3);
        let size = ring_size(&r).unwrap();
        for i in (0..size).step_by(97) {
            for j in (0..size).step_by(131) {
                let a = coords_of_index(i, 3, r.dim());
                let b = coords_of_index(j, 3, r.dim());
                let prod = r.square(&a).mul(&r.square(&b), &r.field);
                let elem = SemimagicElem::new(prod.clone(), &r.field).unwrap();
                assert_eq!(r.square(&r.coords(&prod)), prod);
                let sa = SemimagicElem::new(r.square(&a), &r.field).unwrap().sigma();
                let sb = SemimagicElem::new(r.square(&b), &r.field).unwrap().sigma();
                assert_eq!(elem.sigma(), r.field.mul(sa, sb));
            }
        }
    }

    #[test]
    fn unit_counts() {
        assert_eq!(enumerate_units(&ring(3, 2), DEFAULT_CAP).unwrap(), 6);
        assert_eq!(ring_size(&ring(3, 2)), Some(32));
        assert_eq!(enumerate_units(&ring(2, 2), DEFAULT_CAP).unwrap(), 2);
        assert_eq!(enumerate_units(&ring(1, 5), DEFAULT_CAP).unwrap(), 4);
    }

    #[test]
    fn rejects_non_semimagic() {
        let f = FieldCtx::parse_spec("F3").unwrap();
        let m = Matrix::from_rows(&[vec![1, 0], vec![1, 0]]);
        assert!(SemimagicElem::new(m, &f).is_err());
    }
}
