//! Dense matrices of polynomials. Columns are the generators or relations
//! they represent; vectors are plain `Vec<Poly>`.

use crate::field::PrimeField;
use crate::poly::Poly;

/// An element of a free module, one polynomial per coordinate.
pub type Vector = Vec<Poly>;

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Poly>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Poly::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, Poly::constant(1));
        }
        m
    }

    /// Builds from row vectors; all rows must have the same length.
    pub fn from_rows(rows: Vec<Vec<Poly>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Builds from column vectors of length `rows`.
    pub fn from_columns(rows: usize, cols: &[Vector]) -> Self {
        let mut m = Matrix::zero(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, p) in col.iter().enumerate() {
                m.set(i, j, p.clone());
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

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly) {
        self.data[i * self.cols + j] = p;
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn row(&self, i: usize) -> Vector {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn row_vectors(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix, f: &PrimeField) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Matrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Poly::zero();
                for k in 0..self.cols {
                    let (a, b) = (self.get(i, k), other.get(k, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add(&a.mul(b, f), f);
                    }
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn apply(&self, v: &[Poly], f: &PrimeField) -> Vector {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = Poly::zero();
                for (k, x) in v.iter().enumerate() {
                    let a = self.get(i, k);
                    if !a.is_zero() && !x.is_zero() {
                        acc = acc.add(&a.mul(x, f), f);
                    }
                }
                acc
            })
            .collect()
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hcat(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let mut cols = self.columns();
        cols.extend(other.columns());
        Matrix::from_columns(self.rows, &cols)
    }

    pub fn select_columns(&self, idx: &[usize]) -> Matrix {
        let cols: Vec<Vector> = idx.iter().map(|&j| self.column(j)).collect();
        Matrix::from_columns(self.rows, &cols)
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        Matrix::from_rows(idx.iter().map(|&i| self.row(i)).collect())
    }

    /// Kronecker product `self ⊗ I_n`.
    pub fn kron_identity(&self, n: usize) -> Matrix {
        let mut out = Matrix::zero(self.rows * n, self.cols * n);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..n {
                    out.set(i * n + k, j * n + k, a.clone());
                }
            }
        }
        out
    }

    /// Kronecker product `I_n ⊗ self`.
    pub fn identity_kron(&self, n: usize) -> Matrix {
        let mut out = Matrix::zero(self.rows * n, self.cols * n);
        for k in 0..n {
            for i in 0..self.rows {
                for j in 0..self.cols {
                    out.set(k * self.rows + i, k * self.cols + j, self.get(i, j).clone());
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Poly::is_zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = &Poly> {
        self.data.iter()
    }

    /// True if no entry has a nonzero constant term.
    pub fn is_minimal(&self) -> bool {
        self.data.iter().all(|p| !p.is_unit())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::Monomial;

    fn c(k: u32) -> Poly {
        Poly::constant(k)
    }

    #[test]
    fn kronecker_layouts() {
        let f = PrimeField::new(7).unwrap();
        let a = Matrix::from_rows(vec![vec![c(1), c(2)], vec![c(3), c(4)]]);
        let k = a.kron_identity(2);
        assert_eq!(k.get(2, 0), &c(3));
        assert_eq!(k.get(3, 1), &c(3));
        let l = a.identity_kron(2);
        assert_eq!(l.get(3, 3), &c(4));
        assert_eq!(l.get(0, 2), &Poly::zero());
        let id = Matrix::identity(2);
        assert_eq!(a.mul(&id, &f), a);
    }

    #[test]
    fn transpose_and_apply() {
        let f = PrimeField::new(7).unwrap();
        let x = Poly::term(Monomial::variable(0, &[1]), 1);
        let a = Matrix::from_rows(vec![vec![x.clone(), c(1)]]);
        assert_eq!(a.transpose().rows(), 2);
        let v = a.apply(&[c(2), x.clone()], &f);
        assert_eq!(v, vec![x.scale(3, &f)]);
        assert!(!a.is_minimal());
    }
}
