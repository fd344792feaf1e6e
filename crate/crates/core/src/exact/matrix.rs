//! Dense matrices over ℚ(ζ_N).

use std::fmt;

use super::field::FieldScalar;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<FieldScalar>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, data: vec![FieldScalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, FieldScalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<FieldScalar>>, cols: usize) -> Self {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r);
        }
        ExactMatrix { rows: nrows, cols, data }
    }

    pub fn from_ints(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| FieldScalar::from_int(x)).collect()).collect(), cols)
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldScalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldScalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[FieldScalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[FieldScalar]> {
        self.data.chunks(self.cols.max(1)).take(self.rows)
    }

    pub fn to_rows(&self) -> Vec<Vec<FieldScalar>> {
        self.rows().map(|r| r.to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!("{}x{} * {}x{}", self.rows, self.cols, other.rows, other.cols)));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a - b)
    }

    fn zip(&self, other: &Self, f: impl Fn(&FieldScalar, &FieldScalar) -> FieldScalar) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension("shape mismatch".into()));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect();
        Ok(ExactMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, c: &FieldScalar) -> Self {
        ExactMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Stacks the rows of `other` below `self`.
    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::Dimension("column counts differ".into()));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(ExactMatrix { rows: self.rows + other.rows, cols: self.cols, data })
    }

    /// Reduced row echelon form together with the pivot columns. Pivots are
    /// taken in the leftmost nonzero column from the first nonzero row.
    pub fn rref_with_pivots(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else { continue };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m.get(r, c).inv().expect("nonzero pivot");
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let s = m.get(r, j);
                    if !s.is_zero() {
                        let v = m.get(i, j) - &(&f * s);
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rref(&self) -> Self {
        self.rref_with_pivots().0
    }

    pub fn rank(&self) -> usize {
        self.rref_with_pivots().1.len()
    }

    /// The nonzero rows of the RREF: a canonical basis of the row space.
    pub fn row_basis(&self) -> Self {
        let (r, p) = self.rref_with_pivots();
        ExactMatrix { rows: p.len(), cols: self.cols, data: r.data[..p.len() * self.cols].to_vec() }
    }

    pub fn rowspace_equal(&self, other: &Self) -> Result<bool> {
        if self.cols != other.cols {
            return Err(Error::Dimension(format!("{} vs {} columns", self.cols, other.cols)));
        }
        Ok(self.row_basis() == other.row_basis())
    }

    /// Is `v` in the row space?
    pub fn contains_row(&self, v: &[FieldScalar]) -> bool {
        let extra = ExactMatrix::from_rows(vec![v.to_vec()], self.cols);
        let stacked = self.vstack(&extra).expect("same width");
        stacked.rank() == self.rank()
    }

    /// Basis of {x : M x = 0}.
    pub fn nullspace(&self) -> Vec<Vec<FieldScalar>> {
        let (r, pivots) = self.rref_with_pivots();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![FieldScalar::zero(); self.cols];
            v[free] = FieldScalar::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -r.get(i, free);
            }
            basis.push(v);
        }
        basis
    }

    /// Basis of {y : yᵀ M = 0}.
    pub fn left_nullspace(&self) -> Vec<Vec<FieldScalar>> {
        self.transpose().nullspace()
    }

    pub fn determinant(&self) -> Result<FieldScalar> {
        if self.rows != self.cols {
            return Err(Error::Dimension("determinant of a non-square matrix".into()));
        }
        let mut m = self.clone();
        let n = self.rows;
        let mut det = FieldScalar::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else { return Ok(FieldScalar::zero()) };
            if p != c {
                for j in 0..n {
                    m.data.swap(p * n + j, c * n + j);
                }
                det = -det;
            }
            let piv = m.get(c, c).clone();
            det *= &piv;
            let inv = piv.inv()?;
            for i in c + 1..n {
                let f = m.get(i, c) * &inv;
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = m.get(i, j) - &(&f * m.get(c, j));
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }

    pub fn is_lower_unitriangular(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                self.get(i, i).is_one() && (i + 1..self.cols).all(|j| self.get(i, j).is_zero())
            })
    }

    pub fn is_upper_unitriangular(&self) -> bool {
        self.transpose().is_lower_unitriangular()
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{}]", self.rows, self.cols)?;
        for r in self.rows() {
            let cells: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_examples() {
        assert_eq!(ExactMatrix::identity(3).rref(), ExactMatrix::identity(3));
        let m = ExactMatrix::from_ints(&[vec![1, 2], vec![2, 4]]);
        assert_eq!(m.rref(), ExactMatrix::from_ints(&[vec![1, 2], vec![0, 0]]));
        assert_eq!(m.rank(), 1);
        let a = ExactMatrix::from_ints(&[vec![1, 3, 0], vec![0, 1, 1]]);
        let b = ExactMatrix::from_ints(&[vec![0, 1, 1], vec![1, 3, 0]]);
        assert_eq!(a.rref(), b.rref());
    }

    #[test]
    fn rowspace_equality_examples() {
        let a = ExactMatrix::from_ints(&[vec![1, 2, 3], vec![0, 1, 5]]);
        assert!(a.rowspace_equal(&a.scale(&FieldScalar::from_int(3))).unwrap());
        let e1 = ExactMatrix::from_ints(&[vec![1, 0]]);
        let e2 = ExactMatrix::from_ints(&[vec![0, 1]]);
        assert!(!e1.rowspace_equal(&e2).unwrap());
        let s = ExactMatrix::from_ints(&[vec![1, 1], vec![0, 1]]);
        assert!(s.rowspace_equal(&ExactMatrix::identity(2)).unwrap());
        assert!(e1.rowspace_equal(&ExactMatrix::identity(3)).is_err());
    }

    #[test]
    fn kernels_and_determinant() {
        let m = ExactMatrix::from_ints(&[vec![1, 2, 3], vec![2, 4, 6]]);
        for v in m.nullspace() {
            let col = ExactMatrix::from_rows(v.iter().map(|x| vec![x.clone()]).collect(), 1);
            assert!(m.mul(&col).unwrap().is_zero());
        }
        assert_eq!(m.nullspace().len(), 2);
        assert_eq!(m.left_nullspace().len(), 1);
        let d = ExactMatrix::from_ints(&[vec![0, 2], vec![3, 1]]);
        assert_eq!(d.determinant().unwrap(), FieldScalar::from_int(-6));
    }
}
