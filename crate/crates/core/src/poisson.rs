//! Linear Poisson brackets on `Mat_n(V)` induced by an associative product on `V`.
//!
//! With `e_i ⋆ e_j = p^k_ij e_k` and coordinates `f_{i,l,m}`,
//!
//! ```text
//! {f_{i,l1,m1}, f_{j,l2,m2}} = δ_{m1,l2} p^k_ij f_{k,l1,m2} − δ_{m2,l1} p^k_ji f_{k,l2,m1}
//! ```
//!
//! Coordinates are indexed `i·n² + l·n + m`, as in [`crate::algebra::matn_lift_sc`].

use crate::algebra::StructureConstants;
use crate::error::{Error, Result};
use crate::residual::{Report, Residual};
use crate::scalar::Field;

/// Largest coordinate count accepted by the Jacobi scans.
pub const MAX_COORDINATES: usize = 40;

/// `{f_a, f_b} = Σ_c Γ^c_ab f_c`, stored as a tensor with `get(c, a, b) = Γ^c_ab`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearPoissonBracket<F> {
    gamma: StructureConstants<F>,
}

impl<F: Field> LinearPoissonBracket<F> {
    pub fn from_tensor(gamma: StructureConstants<F>) -> Self {
        LinearPoissonBracket { gamma }
    }

    pub fn dim(&self) -> usize {
        self.gamma.dim()
    }

    pub fn tensor(&self) -> &StructureConstants<F> {
        &self.gamma
    }

    pub fn get(&self, c: usize, a: usize, b: usize) -> &F {
        self.gamma.get(c, a, b)
    }

    pub fn set(&mut self, c: usize, a: usize, b: usize, v: F) {
        self.gamma.set(c, a, b, v);
    }

    /// `{f_a, f_b}` as a coordinate vector.
    pub fn bracket(&self, a: usize, b: usize) -> &[F] {
        self.gamma.product(a, b)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Ok(LinearPoissonBracket { gamma: self.gamma.lincomb(&F::one(), &other.gamma, &F::one())? })
    }
}

/// The bracket on `Mat_n(V)` of the product `sc`.
pub fn build_bracket<F: Field>(sc: &StructureConstants<F>, n: usize) -> LinearPoissonBracket<F> {
    let d = sc.dim();
    let nn = n * n;
    let dim = d * nn;
    let gamma = StructureConstants::from_fn(dim, |x, y| {
        let (i, l1, m1) = (x / nn, (x % nn) / n, x % n);
        let (j, l2, m2) = (y / nn, (y % nn) / n, y % n);
        let mut v = vec![F::zero(); dim];
        if m1 == l2 {
            for (k, c) in sc.product(i, j).iter().enumerate() {
                let at = k * nn + l1 * n + m2;
                v[at] = v[at].clone() + c.clone();
            }
        }
        if m2 == l1 {
            for (k, c) in sc.product(j, i).iter().enumerate() {
                let at = k * nn + l2 * n + m1;
                v[at] = v[at].clone() - c.clone();
            }
        }
        v
    })
    .expect("consistent dims");
    LinearPoissonBracket { gamma }
}

fn guard(d: usize) -> Result<()> {
    if d > MAX_COORDINATES {
        return Err(Error::TooLarge(format!("{d} coordinates exceed the limit of {MAX_COORDINATES}")));
    }
    Ok(())
}

/// `{ {f_a, f_b}_x, f_c }_y` for a vector `v = {f_a, f_b}_x`.
fn bracket_with<F: Field>(v: &[F], c: usize, y: &LinearPoissonBracket<F>, out: &mut [F]) {
    for (d, coef) in v.iter().enumerate() {
        if coef.is_zero() {
            continue;
        }
        for (e, g) in y.bracket(d, c).iter().enumerate() {
            if !g.is_zero() {
                out[e] = out[e].clone() + coef.clone() * g.clone();
            }
        }
    }
}

/// `Σ_cyc {{f_a, f_b}_x, f_c}_y` over all coordinate triples, summed over the
/// given `(x, y)` pairs.
fn jacobiator<F: Field>(label: &str, pairs: &[(&LinearPoissonBracket<F>, &LinearPoissonBracket<F>)]) -> Result<Residual> {
    let d = pairs[0].0.dim();
    guard(d)?;
    let mut r = Residual::new(label);
    for a in 0..d {
        for b in 0..d {
            for c in 0..d {
                let mut out = vec![F::zero(); d];
                for (x, y) in pairs {
                    for (p, q, s) in [(a, b, c), (b, c, a), (c, a, b)] {
                        bracket_with(x.bracket(p, q), s, y, &mut out);
                    }
                }
                r.record_vec(&[a, b, c], &out);
            }
        }
    }
    Ok(r)
}

/// `Γ^c_ab + Γ^c_ba`.
pub fn antisymmetry_residual<F: Field>(b: &LinearPoissonBracket<F>) -> Residual {
    let d = b.dim();
    let mut r = Residual::new("antisymmetry");
    for x in 0..d {
        for y in 0..d {
            let v: Vec<F> = b.bracket(x, y).iter().zip(b.bracket(y, x)).map(|(p, q)| p.clone() + q.clone()).collect();
            r.record_vec(&[x, y], &v);
        }
    }
    r
}

/// The Jacobi identity on every coordinate triple; the witness names the triple.
pub fn jacobi_residual<F: Field>(b: &LinearPoissonBracket<F>) -> Result<Residual> {
    jacobiator("Jacobi", &[(b, b)])
}

/// Jacobi of `b1 + b2` minus the Jacobi terms of `b1` and of `b2`.
pub fn poisson_compatibility<F: Field>(b1: &LinearPoissonBracket<F>, b2: &LinearPoissonBracket<F>) -> Result<Residual> {
    if b1.dim() != b2.dim() {
        return Err(Error::Dimension(format!("brackets on {} and {} coordinates", b1.dim(), b2.dim())));
    }
    jacobiator("mixed Jacobi", &[(b1, b2), (b2, b1)])
}

/// Both brackets of a pencil on `Mat_n(V)`: antisymmetry, Jacobi, and compatibility.
pub fn poisson_report<F: Field>(
    star: &StructureConstants<F>,
    circle: &StructureConstants<F>,
    n: usize,
) -> Result<Report> {
    guard(star.dim() * n * n)?;
    let b1 = build_bracket(star, n);
    let b2 = build_bracket(circle, n);
    let mut report = Report::default();
    for (name, b) in [("first", &b1), ("second", &b2)] {
        let mut r = antisymmetry_residual(b);
        r.label = format!("{name} bracket antisymmetry");
        report.push(r);
        let mut r = jacobi_residual(b)?;
        r.label = format!("{name} bracket Jacobi");
        report.push(r);
    }
    report.push(poisson_compatibility(&b1, &b2)?);
    Ok(report)
}
