use std::fmt;

use super::{Rational, Scalar, SparseVec};
use crate::error::{Error, Result};

/// Dense rational matrix, `rows × cols`.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

/// A linear map is stored as its matrix, codomain × domain.
pub type LinearMap = Matrix;

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn diagonal(d: &[Rational]) -> Self {
        let mut m = Matrix::zeros(d.len(), d.len());
        for (i, c) in d.iter().enumerate() {
            m.set(i, i, c.clone());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged matrix rows".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rational::from_int(x)).collect())
                .collect(),
        )
        .expect("rectangular literal")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows)
            .map(|r| self.data[r * self.cols..(r + 1) * self.cols].to_vec())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rational::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn neg(&self) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| -x).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn add(&self, o: &Matrix) -> Result<Matrix> {
        self.same_shape(o)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, o: &Matrix) -> Result<Matrix> {
        self.same_shape(o)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect(),
        })
    }

    fn same_shape(&self, o: &Matrix) -> Result<()> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(Error::Dimension(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        Ok(())
    }

    pub fn mul(&self, o: &Matrix) -> Result<Matrix> {
        if self.cols != o.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let mut m = Matrix::zeros(self.rows, o.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..o.cols {
                    let b = o.get(k, c);
                    if !b.is_zero() {
                        let v = m.get(r, c) + &(a * b);
                        m.set(r, c, v);
                    }
                }
            }
        }
        Ok(m)
    }

    pub fn pow(&self, e: usize) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::Dimension("power of a non-square matrix".into()));
        }
        let mut acc = Matrix::identity(self.rows);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Writes `block` with its top-left corner at `(r0, c0)`.
    pub fn put_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.set(r0 + r, c0 + c, block.get(r, c).clone());
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        let mut m = Matrix::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.set(r, c, self.get(r0 + r, c0 + c).clone());
            }
        }
        m
    }

    /// Block matrix from a grid of equally sized blocks.
    pub fn from_blocks(grid: &[&[&Matrix]]) -> Result<Matrix> {
        let br = grid.len();
        let bc = grid.first().map_or(0, |r| r.len());
        let (h, w) = grid
            .first()
            .and_then(|r| r.first())
            .map_or((0, 0), |b| (b.rows, b.cols));
        let mut m = Matrix::zeros(br * h, bc * w);
        for (i, row) in grid.iter().enumerate() {
            if row.len() != bc {
                return Err(Error::Dimension("ragged block grid".into()));
            }
            for (j, b) in row.iter().enumerate() {
                if b.rows != h || b.cols != w {
                    return Err(Error::Dimension("unequal blocks".into()));
                }
                m.put_block(i * h, j * w, b);
            }
        }
        Ok(m)
    }

    pub fn column(&self, c: usize) -> SparseVec<Rational> {
        (0..self.rows).map(|r| (r, self.get(r, c).clone())).collect()
    }

    /// `M v` for a vector with coefficients in any scalar ring.
    pub fn apply<S: Scalar>(&self, v: &SparseVec<S>) -> SparseVec<S> {
        let mut out = SparseVec::new();
        for (c, x) in v.iter() {
            for r in 0..self.rows {
                let a = self.get(r, c);
                if !a.is_zero() {
                    out.add_at(r, &x.scaled(a));
                }
            }
        }
        out
    }

    pub fn commutes_with(&self, o: &Matrix) -> Result<bool> {
        Ok(self.mul(o)? == o.mul(self)?)
    }

    /// True when some power `M^m` with `1 <= m <= max` vanishes.
    pub fn nilpotent_within(&self, max: usize) -> Result<bool> {
        let mut acc = self.clone();
        for _ in 0..max {
            if acc.is_zero() {
                return Ok(true);
            }
            acc = acc.mul(self)?;
        }
        Ok(false)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_rows()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn products_and_blocks() {
        let a = Matrix::from_ints(&[&[1, 2], &[3, 4]]);
        let i = Matrix::identity(2);
        assert_eq!(a.mul(&i).unwrap(), a);
        assert_eq!(a.transpose().transpose(), a);
        let z = Matrix::zeros(2, 2);
        let b = Matrix::from_blocks(&[&[&a, &z], &[&z, &i]]).unwrap();
        assert_eq!(b.block(0, 0, 2, 2), a);
        assert_eq!(b.block(2, 2, 2, 2), i);
        assert_eq!(a.pow(2).unwrap(), Matrix::from_ints(&[&[7, 10], &[15, 22]]));
    }

    #[test]
    fn nilpotency() {
        let n = Matrix::from_ints(&[&[0, 1], &[0, 0]]);
        assert!(n.nilpotent_within(2).unwrap());
        assert!(!n.nilpotent_within(1).unwrap());
        assert!(!Matrix::identity(2).nilpotent_within(5).unwrap());
    }
}
