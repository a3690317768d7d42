//! Dense matrices over a [`Field`] with exact Gaussian elimination.

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::scalar::Field;

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Column vector.
    pub fn column(v: &[F]) -> Self {
        Matrix { rows: v.len(), cols: 1, data: v.to_vec() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Row-major entries.
    pub fn as_slice(&self) -> &[F] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(F::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a.clone() * b.clone();
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[F]) -> Result<Vec<F>> {
        if self.cols != v.len() {
            return Err(Error::Dimension(format!("{}x{} times vector of {}", self.rows, self.cols, v.len())));
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = F::zero();
                for (a, x) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !x.is_zero() {
                        acc += a.clone() * x.clone();
                    }
                }
                acc
            })
            .collect())
    }

    fn zip_with(&self, other: &Self, op: impl Fn(F, F) -> F) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| op(a.clone(), b.clone())).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, s: &F) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a.clone() * s.clone()).collect() }
    }

    /// Kronecker product, `(A ⊗ B)[(i,k),(j,l)] = A[i,j] B[k,l]`.
    pub fn kron(&self, other: &Self) -> Self {
        Self::from_fn(self.rows * other.rows, self.cols * other.cols, |r, c| {
            let (i, k) = (r / other.rows, r % other.rows);
            let (j, l) = (c / other.cols, c % other.cols);
            self[(i, j)].clone() * other[(k, l)].clone()
        })
    }

    pub fn trace(&self) -> F {
        let mut acc = F::zero();
        for i in 0..self.rows.min(self.cols) {
            acc += self[(i, i)].clone();
        }
        acc
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].inv().expect("pivot is nonzero");
            for j in c..m.cols {
                let v = m[(r, j)].clone() * inv.clone();
                m[(r, j)] = v;
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    if !m[(r, j)].is_zero() {
                        let v = m[(r, j)].clone() * f.clone();
                        m[(i, j)] -= v;
                    }
                }
                m[(i, c)] = F::zero();
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Basis of `{x : A x = 0}`, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![F::zero(); self.cols];
                v[f] = F::one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = -r[(row, f)].clone();
                }
                v
            })
            .collect()
    }

    /// Basis of `{y : yᵀ A = 0}`.
    pub fn left_nullspace(&self) -> Vec<Vec<F>> {
        self.transpose().nullspace()
    }

    /// One solution of `A x = b` (free variables set to zero), if any.
    pub fn solve(&self, b: &[F]) -> Result<Option<Vec<F>>> {
        if b.len() != self.rows {
            return Err(Error::Dimension(format!("{} rows, rhs of {}", self.rows, b.len())));
        }
        let aug = Self::from_fn(self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                b[i].clone()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![F::zero(); self.cols];
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = r[(row, self.cols)].clone();
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Dimension("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(self.clone());
        }
        let aug = Self::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else if j - n == i {
                F::one()
            } else {
                F::zero()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        Ok(Self::from_fn(n, n, |i, j| r[(i, j + n)].clone()))
    }

    pub fn det(&self) -> Result<F> {
        if !self.is_square() {
            return Err(Error::Dimension("determinant of a non-square matrix".into()));
        }
        let mut m = self.clone();
        let n = self.rows;
        let mut det = F::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return Ok(F::zero());
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let piv = m[(c, c)].clone();
            let inv = piv.inv()?;
            det *= piv;
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone() * inv.clone();
                for j in c..n {
                    let v = m[(c, j)].clone() * f.clone();
                    m[(i, j)] -= v;
                }
            }
        }
        Ok(det)
    }

    /// Matrix power for square matrices; negative exponents invert.
    pub fn pow(&self, e: i64) -> Result<Self> {
        let mut base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            base = base.mul(&base)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Block-diagonal concatenation.
    pub fn direct_sum(&self, other: &Self) -> Self {
        Self::from_fn(self.rows + other.rows, self.cols + other.cols, |i, j| {
            if i < self.rows && j < self.cols {
                self[(i, j)].clone()
            } else if i >= self.rows && j >= self.cols {
                other[(i - self.rows, j - self.cols)].clone()
            } else {
                F::zero()
            }
        })
    }

    /// Row-major vectorisation.
    pub fn vec(&self) -> Vec<F> {
        self.data.clone()
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<F>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!("{} entries for {}x{}", data.len(), rows, cols)));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }
}

impl<F> Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (i, j): (usize, usize)) -> &F {
        &self.data[i * self.cols + j]
    }
}

impl<F> IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        &mut self.data[i * self.cols + j]
    }
}

impl<F: Field> fmt::Display for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// `Σ a_i b_i`.
pub fn dot<F: Field>(a: &[F], b: &[F]) -> F {
    let mut acc = F::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x.clone() * y.clone();
        }
    }
    acc
}

/// `a + s·b` in place.
pub fn axpy<F: Field>(a: &mut [F], s: &F, b: &[F]) {
    if s.is_zero() {
        return;
    }
    for (x, y) in a.iter_mut().zip(b) {
        if !y.is_zero() {
            *x += s.clone() * y.clone();
        }
    }
}

/// Rank of a family of vectors.
pub fn rank_of<F: Field>(vectors: &[Vec<F>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Matrix::from_rows(vectors.to_vec()).map_or(0, |m| m.rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{ComplexFloat, Cyclotomic};
    use proptest::prelude::*;

    type Q = Cyclotomic;

    fn m(rows: &[&[i64]]) -> Matrix<Q> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| Q::from_i64(x)).collect()).collect()).unwrap()
    }

    #[test]
    fn inverse_and_det() {
        let a = m(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert_eq!(a.det().unwrap(), Q::from_i64(18));
        let ai = a.inverse().unwrap();
        assert_eq!(a.mul(&ai).unwrap(), Matrix::identity(3));
        assert_eq!(m(&[&[1, 2], &[2, 4]]).inverse(), Err(Error::Singular));
    }

    #[test]
    fn nullspace_and_solve() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6]]);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(a.mul_vec(v).unwrap().iter().all(Q::is_zero));
        }
        assert!(a.solve(&[Q::one(), Q::zero()]).unwrap().is_none());
        let x = a.solve(&[Q::from_i64(6), Q::from_i64(12)]).unwrap().unwrap();
        assert_eq!(a.mul_vec(&x).unwrap(), vec![Q::from_i64(6), Q::from_i64(12)]);
    }

    #[test]
    fn complex_rank_tolerates_noise() {
        let a = Matrix::from_rows(vec![
            vec![ComplexFloat::new(1.0, 0.0), ComplexFloat::new(2.0, 0.0)],
            vec![ComplexFloat::new(2.0, 0.0), ComplexFloat::new(4.0 + 1e-13, 0.0)],
        ])
        .unwrap();
        assert_eq!(a.rank(), 1);
    }

    fn arb_matrix(r: usize, c: usize) -> impl Strategy<Value = Matrix<Q>> {
        prop::collection::vec(-3i64..=3, r * c)
            .prop_map(move |v| Matrix::from_vec(r, c, v.into_iter().map(Q::from_i64).collect()).unwrap())
    }

    proptest! {
        #[test]
        fn kron_is_index_reshape(a in arb_matrix(2, 3), b in arb_matrix(3, 2)) {
            // Oracle: entry-by-entry definition.
            let k = a.kron(&b);
            for i in 0..2 { for j in 0..3 { for p in 0..3 { for q in 0..2 {
                prop_assert_eq!(&k[(i * 3 + p, j * 2 + q)], &(a[(i, j)].clone() * b[(p, q)].clone()));
            }}}}
        }

        #[test]
        fn kron_mixed_product(a in arb_matrix(2, 2), b in arb_matrix(2, 2), c in arb_matrix(2, 2), d in arb_matrix(2, 2)) {
            let lhs = a.kron(&b).mul(&c.kron(&d)).unwrap();
            let rhs = a.mul(&c).unwrap().kron(&b.mul(&d).unwrap());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn rank_nullity(a in arb_matrix(3, 5)) {
            let ns = a.nullspace();
            prop_assert_eq!(a.rank() + ns.len(), 5);
            for v in &ns {
                prop_assert!(a.mul_vec(v).unwrap().iter().all(Q::is_zero));
            }
            prop_assert_eq!(rank_of(&ns), ns.len());
        }

        #[test]
        fn det_multiplicative(a in arb_matrix(3, 3), b in arb_matrix(3, 3)) {
            let ab = a.mul(&b).unwrap();
            prop_assert_eq!(ab.det().unwrap(), a.det().unwrap() * b.det().unwrap());
            prop_assert_eq!(a.transpose().det().unwrap(), a.det().unwrap());
        }
    }
}
