//! Cyclic structure: `𝒜` and `ℬ` generated by `A`, `B` with `A^{p+1} = B^{p+1} = 1`.

use super::MPresentation;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::matrix_ops::RPresentation;
use crate::pmstructure::{normalize, Gen, RawStructure};
use crate::scalar::{root_power, Field};

/// Raw data on the basis `A^1..A^p`, `B^1..B^p` (powers), with `ε = ζ_{p+1}`
/// and all exponents taken modulo `p + 1`.
pub fn cyclic_raw<F: Field>(p: usize) -> Result<RawStructure<F>> {
    if p == 0 {
        return Err(Error::InvalidParameters("the cyclic example needs p ≥ 1".into()));
    }
    let n = p + 1;
    let eps = |i: i64| -> F { root_power(n as u32, i) };
    let inv = |x: F| x.inv().expect("ε^i ≠ 1 for i ≢ 0");
    let one = F::one;
    let mut raw = RawStructure::new(1, vec![(0, 0); p], vec![(0, 0); p]);
    for i in 1..n {
        let (ii, x) = (i as i64, i - 1);
        // (B^i, A^{−i}) = ε^i − 1
        raw.pairing[(n - i - 1, x)] = eps(ii) - one();
        raw.ca[x].add_to(Gen::A(x), inv(one() - eps(ii)));
        raw.ca[x].add_to(Gen::B(x), inv(eps(ii) - one()));
        raw.bc[x].add_to(Gen::A(x), inv(eps(-ii) - one()));
        raw.bc[x].add_to(Gen::B(x), inv(one() - eps(-ii)));
        for j in 1..n {
            let (jj, y) = (j as i64, j - 1);
            let s = (i + j) % n;
            if s == 0 {
                raw.aa[x][y].add_to(Gen::E(0), one());
                raw.bb[x][y].add_to(Gen::E(0), one());
                raw.ba[x][y].add_to(Gen::E(0), one());
                raw.ba[x][y].add_to(Gen::C(0), eps(ii) - one());
            } else {
                let z = s - 1;
                raw.aa[x][y].add_to(Gen::A(z), one());
                raw.bb[x][y].add_to(Gen::B(z), one());
                let ca = (eps(-jj) - one()) * inv(eps(-ii - jj) - one());
                let cb = (eps(ii) - one()) * inv(eps(ii + jj) - one());
                raw.ba[x][y].add_to(Gen::A(z), ca);
                raw.ba[x][y].add_to(Gen::B(z), cb);
            }
        }
    }
    Ok(raw)
}

/// The cyclic M-structure in the basis `A_I = A^{I+1}` and its dual.
pub fn example_cyclic<F: Field>(p: usize) -> Result<MPresentation<F>> {
    MPresentation::from_pm(normalize(&cyclic_raw(p)?)?.into_checked()?)
}

/// `A → a`, `B → (εt − 1)(t − 1)^{−1} a`, `C → t(t − 1)^{−1}` with `a` the
/// `(p+1)`-cycle and `t = s·diag(1, ε, …, ε^p)`, expressed in the normalised basis.
pub fn cyclic_representation<F: Field>(p: usize, s: &F) -> Result<RPresentation<F>> {
    let raw = cyclic_raw::<F>(p)?;
    let n = p + 1;
    let a = Matrix::from_fn(n, n, |r, c| if (r + 1) % n == c { F::one() } else { F::zero() });
    let t = Matrix::from_fn(n, n, |r, c| if r == c { s.clone() * root_power(n as u32, r as i64) } else { F::zero() });
    let id = Matrix::identity(n);
    let resolvent = t
        .sub(&id)?
        .inverse()
        .map_err(|_| Error::Precondition("t − 1 is not invertible (s ε^i = 1 for some i)".into()))?;
    let eps: F = root_power(n as u32, 1);
    let b = t.scale(&eps).sub(&id)?.mul(&resolvent)?.mul(&a)?;
    let c = t.mul(&resolvent)?;
    let a_raw: Vec<Matrix<F>> = (1..n).map(|i| a.pow(i as i64)).collect::<Result<_>>()?;
    let b_raw: Vec<Matrix<F>> = (1..n).map(|i| b.pow(i as i64)).collect::<Result<_>>()?;
    let rep = normalize(&raw)?.representation(vec![n], a_raw, &b_raw, &[c])?;
    let c = rep.c.into_iter().next().expect("one block");
    Ok(RPresentation { n, a: rep.a, b: rep.b, c })
}
