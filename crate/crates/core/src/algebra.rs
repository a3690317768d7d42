//! Finite-dimensional algebras given by structure constants.

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::residual::Residual;
use crate::scalar::Field;

/// Dense tensor `c^k_{ij}` with `e_i · e_j = Σ_k c^k_{ij} e_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureConstants<F> {
    dim: usize,
    c: Vec<F>,
    pub label: Option<String>,
}

/// Two products on one space.
#[derive(Clone, Debug, PartialEq)]
pub struct Pencil<F> {
    pub star: StructureConstants<F>,
    pub circle: StructureConstants<F>,
}

impl<F: Field> Pencil<F> {
    pub fn new(star: StructureConstants<F>, circle: StructureConstants<F>) -> Result<Self> {
        if star.dim() != circle.dim() {
            return Err(Error::Dimension(format!("star has dim {}, circle {}", star.dim(), circle.dim())));
        }
        Ok(Pencil { star, circle })
    }

    pub fn dim(&self) -> usize {
        self.star.dim()
    }
}

impl<F: Field> StructureConstants<F> {
    pub fn zero(dim: usize) -> Self {
        StructureConstants { dim, c: vec![F::zero(); dim * dim * dim], label: None }
    }

    /// Builds the tensor from `f(i, j) = e_i · e_j`.
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Vec<F>) -> Result<Self> {
        let mut sc = Self::zero(dim);
        for i in 0..dim {
            for j in 0..dim {
                let v = f(i, j);
                if v.len() != dim {
                    return Err(Error::Dimension(format!("product of length {} in dim {}", v.len(), dim)));
                }
                sc.c[(i * dim + j) * dim..(i * dim + j + 1) * dim].clone_from_slice(&v);
            }
        }
        Ok(sc)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Coordinates of `e_i · e_j`.
    pub fn product(&self, i: usize, j: usize) -> &[F] {
        let d = self.dim;
        &self.c[(i * d + j) * d..(i * d + j + 1) * d]
    }

    pub fn get(&self, k: usize, i: usize, j: usize) -> &F {
        &self.c[(i * self.dim + j) * self.dim + k]
    }

    pub fn set(&mut self, k: usize, i: usize, j: usize, v: F) {
        let d = self.dim;
        self.c[(i * d + j) * d + k] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(F::is_zero)
    }

    fn check_len(&self, v: &[F]) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::Dimension(format!("vector of length {} in dim {}", v.len(), self.dim)));
        }
        Ok(())
    }

    /// `x · y` in coordinates.
    pub fn multiply(&self, x: &[F], y: &[F]) -> Result<Vec<F>> {
        self.check_len(x)?;
        self.check_len(y)?;
        Ok(self.mul_unchecked(x, y))
    }

    pub(crate) fn mul_unchecked(&self, x: &[F], y: &[F]) -> Vec<F> {
        let d = self.dim;
        let mut out = vec![F::zero(); d];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let s = xi.clone() * yj.clone();
                crate::linalg::axpy(&mut out, &s, self.product(i, j));
            }
        }
        out
    }

    /// `e_i · v`.
    fn mul_basis_left(&self, i: usize, v: &[F]) -> Vec<F> {
        let mut out = vec![F::zero(); self.dim];
        for (j, vj) in v.iter().enumerate() {
            crate::linalg::axpy(&mut out, vj, self.product(i, j));
        }
        out
    }

    /// `v · e_j`.
    fn mul_basis_right(&self, v: &[F], j: usize) -> Vec<F> {
        let mut out = vec![F::zero(); self.dim];
        for (i, vi) in v.iter().enumerate() {
            crate::linalg::axpy(&mut out, vi, self.product(i, j));
        }
        out
    }

    /// Residual of `(e_i e_j) e_k − e_i (e_j e_k)` over all basis triples.
    pub fn associator_residual(&self) -> Residual {
        mixed_associator(self, self, "associativity")
    }

    pub fn is_associative(&self) -> bool {
        self.associator_residual().is_zero()
    }

    /// Matrix of `v ↦ x · v`.
    pub fn left_mult(&self, x: &[F]) -> Matrix<F> {
        let d = self.dim;
        let mut m = Matrix::zeros(d, d);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for j in 0..d {
                for (k, c) in self.product(i, j).iter().enumerate() {
                    if !c.is_zero() {
                        m[(k, j)] += xi.clone() * c.clone();
                    }
                }
            }
        }
        m
    }

    /// Matrix of `v ↦ v · x`.
    pub fn right_mult(&self, x: &[F]) -> Matrix<F> {
        let d = self.dim;
        let mut m = Matrix::zeros(d, d);
        for (j, xj) in x.iter().enumerate() {
            if xj.is_zero() {
                continue;
            }
            for i in 0..d {
                for (k, c) in self.product(i, j).iter().enumerate() {
                    if !c.is_zero() {
                        m[(k, i)] += xj.clone() * c.clone();
                    }
                }
            }
        }
        m
    }

    /// The two-sided unity, if one exists and is unique.
    pub fn find_unity(&self) -> Option<Vec<F>> {
        let d = self.dim;
        if d == 0 {
            return None;
        }
        // Unknowns u_i; equations u·e_j = e_j and e_j·u = e_j.
        let mut rows = Vec::with_capacity(2 * d * d);
        let mut rhs = Vec::with_capacity(2 * d * d);
        for j in 0..d {
            for k in 0..d {
                let delta = if j == k { F::one() } else { F::zero() };
                rows.push((0..d).map(|i| self.get(k, i, j).clone()).collect());
                rhs.push(delta.clone());
                rows.push((0..d).map(|i| self.get(k, j, i).clone()).collect());
                rhs.push(delta);
            }
        }
        let a = Matrix::from_rows(rows).ok()?;
        if a.rank() < d {
            return None;
        }
        a.solve(&rhs).ok().flatten()
    }

    /// Gram matrix `tr(L_{e_i} L_{e_j})` of the left regular representation.
    pub fn trace_form(&self) -> Matrix<F> {
        let d = self.dim;
        let ls: Vec<Matrix<F>> = (0..d).map(|i| self.left_mult(&unit::<F>(d, i))).collect();
        Matrix::from_fn(d, d, |i, j| {
            let mut acc = F::zero();
            for a in 0..d {
                for b in 0..d {
                    let x = &ls[i][(a, b)];
                    let y = &ls[j][(b, a)];
                    if !x.is_zero() && !y.is_zero() {
                        acc += x.clone() * y.clone();
                    }
                }
            }
            acc
        })
    }

    /// Nondegeneracy of the trace form; requires an associative algebra with unity.
    pub fn is_semisimple(&self) -> Result<bool> {
        let r = self.associator_residual();
        if !r.is_zero() {
            return Err(Error::Precondition(format!("algebra is not associative: {r}")));
        }
        if self.find_unity().is_none() {
            return Err(Error::Precondition("algebra has no unity".into()));
        }
        Ok(self.trace_form().rank() == self.dim)
    }

    /// Dimension of `{z : z e_i = e_i z for all i}`.
    pub fn center_dimension(&self) -> usize {
        let d = self.dim;
        let mut rows = Vec::with_capacity(d * d);
        for j in 0..d {
            for k in 0..d {
                rows.push((0..d).map(|i| self.get(k, i, j).clone() - self.get(k, j, i).clone()).collect());
            }
        }
        match Matrix::from_rows(rows) {
            Ok(m) if d > 0 => d - m.rank(),
            _ => d,
        }
    }

    /// `x · y` in the opposite algebra.
    pub fn opposite(&self) -> Self {
        let mut o = Self::from_fn(self.dim, |i, j| self.product(j, i).to_vec()).expect("square");
        o.label = self.label.clone();
        o
    }

    /// `a·self + b·other`.
    pub fn lincomb(&self, a: &F, other: &Self, b: &F) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::Dimension(format!("{} vs {}", self.dim, other.dim)));
        }
        let c = self.c.iter().zip(&other.c).map(|(x, y)| a.clone() * x.clone() + b.clone() * y.clone()).collect();
        Ok(StructureConstants { dim: self.dim, c, label: None })
    }

    /// Product on `span(e_0) ⊕ V` with `e_0` the new unity.
    pub fn adjoin_unity(&self) -> Self {
        let d = self.dim + 1;
        Self::from_fn(d, |i, j| {
            let mut v = vec![F::zero(); d];
            match (i, j) {
                (0, j) => v[j] = F::one(),
                (i, 0) => v[i] = F::one(),
                (i, j) => v[1..].clone_from_slice(self.product(i - 1, j - 1)),
            }
            v
        })
        .expect("consistent dims")
    }

    /// Images of all basis vectors under an invertible change of basis.
    ///
    /// Column `i` of `p` holds the old coordinates of the new basis vector `f_i`.
    pub fn change_basis(&self, p: &Matrix<F>) -> Result<Self> {
        let pinv = p.inverse()?;
        let d = self.dim;
        Self::from_fn(d, |i, j| {
            let prod = self.mul_unchecked(&p.col(i), &p.col(j));
            pinv.mul_vec(&prod).expect("square")
        })
    }
}

/// Standard basis vector.
pub fn unit<F: Field>(d: usize, i: usize) -> Vec<F> {
    let mut v = vec![F::zero(); d];
    v[i] = F::one();
    v
}

/// `(x·y)∘z + (x∘y)·z − x·(y∘z) − x∘(y·z)` over basis triples, with `·` from `a`
/// and `∘` from `b`. Passing the same tensor twice gives the plain associator.
fn mixed_associator<F: Field>(a: &StructureConstants<F>, b: &StructureConstants<F>, label: &str) -> Residual {
    let d = a.dim;
    let same = std::ptr::eq(a, b);
    let mut res = Residual::new(label);
    for i in 0..d {
        for j in 0..d {
            let ab = a.product(i, j);
            let bb = b.product(i, j);
            for k in 0..d {
                let mut r = b.mul_basis_right(ab, k);
                if !same {
                    let t = a.mul_basis_right(bb, k);
                    crate::linalg::axpy(&mut r, &F::one(), &t);
                }
                let rhs1 = a.mul_basis_left(i, b.product(j, k));
                crate::linalg::axpy(&mut r, &-F::one(), &rhs1);
                if !same {
                    let rhs2 = b.mul_basis_left(i, a.product(j, k));
                    crate::linalg::axpy(&mut r, &-F::one(), &rhs2);
                }
                res.record_vec(&[i, j, k], &r);
            }
        }
    }
    res
}

pub(crate) fn mixed_residual<F: Field>(star: &StructureConstants<F>, circle: &StructureConstants<F>) -> Residual {
    mixed_associator(star, circle, "mixed associator")
}

/// `Mat_n` with basis `E_{ab}` at index `a*n + b`.
pub fn matrix_algebra<F: Field>(n: usize) -> StructureConstants<F> {
    let d = n * n;
    StructureConstants::from_fn(d, |x, y| {
        let (a, b) = (x / n, x % n);
        let (c, e) = (y / n, y % n);
        let mut v = vec![F::zero(); d];
        if b == c {
            v[a * n + e] = F::one();
        }
        v
    })
    .expect("consistent dims")
    .with_label(format!("Mat_{n}"))
}

/// Block-diagonal direct sum; basis of the first summand comes first.
pub fn direct_sum<F: Field>(x: &StructureConstants<F>, y: &StructureConstants<F>) -> StructureConstants<F> {
    let (dx, dy) = (x.dim(), y.dim());
    StructureConstants::from_fn(dx + dy, |i, j| {
        let mut v = vec![F::zero(); dx + dy];
        if i < dx && j < dx {
            v[..dx].clone_from_slice(x.product(i, j));
        } else if i >= dx && j >= dx {
            v[dx..].clone_from_slice(y.product(i - dx, j - dx));
        }
        v
    })
    .expect("consistent dims")
}

/// Product on `Mat_n(V)`: basis `e_i ⊗ E_{lm}` at index `i*n² + l*n + m`.
pub fn matn_lift_sc<F: Field>(sc: &StructureConstants<F>, n: usize) -> StructureConstants<F> {
    let d = sc.dim();
    let nn = n * n;
    let dim = d * nn;
    StructureConstants::from_fn(dim, |x, y| {
        let (i, l1, m1) = (x / nn, (x % nn) / n, x % n);
        let (j, l2, m2) = (y / nn, (y % nn) / n, y % n);
        let mut v = vec![F::zero(); dim];
        if m1 == l2 {
            for (k, c) in sc.product(i, j).iter().enumerate() {
                v[k * nn + l1 * n + m2] = c.clone();
            }
        }
        v
    })
    .expect("consistent dims")
}

pub fn matn_lift<F: Field>(p: &Pencil<F>, n: usize) -> Pencil<F> {
    Pencil { star: matn_lift_sc(&p.star, n), circle: matn_lift_sc(&p.circle, n) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Cyclotomic;
    use proptest::prelude::*;

    type Q = Cyclotomic;

    fn q(n: i64) -> Q {
        Q::from_i64(n)
    }

    /// Componentwise `e_i e_j = δ_ij e_i`.
    fn idempotents(m: usize) -> StructureConstants<Q> {
        StructureConstants::from_fn(m, |i, j| if i == j { unit(m, i) } else { vec![Q::zero(); m] }).unwrap()
    }

    #[test]
    fn matrix_units() {
        let m2 = matrix_algebra::<Q>(2);
        // E12 · E21 = E11
        assert_eq!(m2.multiply(&unit(4, 1), &unit(4, 2)).unwrap(), unit(4, 0));
        assert!(m2.multiply(&unit(4, 1), &unit(3, 0)).is_err());
    }

    #[test]
    fn matrix_algebras_are_associative() {
        for n in 1..=4 {
            assert!(matrix_algebra::<Q>(n).is_associative(), "n = {n}");
        }
    }

    #[test]
    fn perturbed_constants_are_caught() {
        let mut m2 = matrix_algebra::<Q>(2);
        let v = m2.get(0, 1, 2).clone() + Q::one();
        m2.set(0, 1, 2, v);
        let r = m2.associator_residual();
        assert!(!r.is_zero());
        assert!(r.witness.is_some());
    }

    #[test]
    fn unity() {
        let m3 = matrix_algebra::<Q>(3);
        let u = m3.find_unity().unwrap();
        assert_eq!(u, vec![q(1), q(0), q(0), q(0), q(1), q(0), q(0), q(0), q(1)]);
        assert_eq!(idempotents(3).find_unity().unwrap(), vec![q(1); 3]);
        assert!(StructureConstants::<Q>::zero(2).find_unity().is_none());
    }

    #[test]
    fn semisimplicity_and_center() {
        let s = direct_sum(&matrix_algebra::<Q>(2), &matrix_algebra::<Q>(1));
        assert!(s.is_semisimple().unwrap());
        assert_eq!(s.center_dimension(), 2);
        assert_eq!(matrix_algebra::<Q>(2).center_dimension(), 1);
        // span{1, x} with x² = 0
        let dual = StructureConstants::from_fn(1, |_, _| vec![q(0)]).unwrap().adjoin_unity();
        assert!(!dual.is_semisimple().unwrap());
        assert!(StructureConstants::<Q>::zero(2).is_semisimple().is_err());
    }

    #[test]
    fn lift_of_scalar_pair() {
        let star = StructureConstants::from_fn(1, |_, _| vec![q(0)]).unwrap();
        let circle = StructureConstants::from_fn(1, |_, _| vec![q(1)]).unwrap();
        let lifted = matn_lift(&Pencil::new(star, circle).unwrap(), 2);
        assert!(lifted.star.is_zero());
        assert_eq!(lifted.circle, matrix_algebra::<Q>(2).with_label_none());
    }

    impl<F: Field> StructureConstants<F> {
        fn with_label_none(mut self) -> Self {
            self.label = None;
            self
        }
    }

    fn arb_sc(d: usize) -> impl Strategy<Value = StructureConstants<Q>> {
        prop::collection::vec(-2i64..=2, d * d * d).prop_map(move |v| {
            let mut it = v.into_iter();
            StructureConstants::from_fn(d, |_, _| (0..d).map(|_| q(it.next().unwrap())).collect()).unwrap()
        })
    }

    proptest! {
        #[test]
        fn multiply_matches_triple_loop(sc in arb_sc(3), x in prop::collection::vec(-3i64..=3, 3), y in prop::collection::vec(-3i64..=3, 3)) {
            let x: Vec<Q> = x.into_iter().map(q).collect();
            let y: Vec<Q> = y.into_iter().map(q).collect();
            let mut expect = vec![Q::zero(); 3];
            for k in 0..3 { for i in 0..3 { for j in 0..3 {
                expect[k] += x[i].clone() * y[j].clone() * sc.get(k, i, j).clone();
            }}}
            prop_assert_eq!(sc.multiply(&x, &y).unwrap(), expect.clone());
            prop_assert_eq!(sc.left_mult(&x).mul_vec(&y).unwrap(), expect.clone());
            prop_assert_eq!(sc.right_mult(&y).mul_vec(&x).unwrap(), expect);
        }

        #[test]
        fn basis_change_preserves_associativity(entries in prop::collection::vec(-2i64..=2, 4)) {
            let p = Matrix::from_vec(2, 2, entries.into_iter().map(q).collect()).unwrap()
                .add(&Matrix::identity(2).scale(&q(7))).unwrap();
            let m2 = matrix_algebra::<Q>(2);
            let big = p.kron(&Matrix::identity(2));
            let changed = m2.change_basis(&big).unwrap();
            prop_assert!(changed.is_associative());
            prop_assert_eq!(changed.center_dimension(), 1);
        }
    }
}
