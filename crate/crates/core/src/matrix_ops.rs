//! Operators on `Mat_n` written as `R(x) = Σ a_i x b^i + c x`, the second products
//! they induce, and the tensors that govern associativity of those products.

use crate::algebra::{matrix_algebra, StructureConstants};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::pencil::{product_from_fn, LinearOperator};
use crate::residual::{Report, Residual};
use crate::scalar::Field;

/// `R(x) = a_1 x b^1 + … + a_p x b^p + c x`.
#[derive(Clone, Debug, PartialEq)]
pub struct RPresentation<F> {
    pub n: usize,
    pub a: Vec<Matrix<F>>,
    pub b: Vec<Matrix<F>>,
    pub c: Matrix<F>,
}

/// Structure tensors of a presentation:
/// `a_i a_j = φ^k_{ij} a_k + μ_{ij}`, `b^i b^j = ψ^{ij}_k b^k + λ^{ij}`,
/// `b^i a_j = ψ^{ki}_j a_k + φ^i_{jk} b^k + t^i_j + δ^i_j c`.
///
/// Storage: `phi[k][i][j] = φ^k_{ij}`, `psi[i][j][k] = ψ^{ij}_k`, `t[i][j] = t^i_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct MTensors<F> {
    pub p: usize,
    pub phi: Vec<Vec<Vec<F>>>,
    pub mu: Vec<Vec<F>>,
    pub psi: Vec<Vec<Vec<F>>>,
    pub lambda: Vec<Vec<F>>,
    pub t: Vec<Vec<F>>,
}

impl<F: Field> MTensors<F> {
    pub fn zero(p: usize) -> Self {
        let t3 = vec![vec![vec![F::zero(); p]; p]; p];
        let t2 = vec![vec![F::zero(); p]; p];
        MTensors { p, phi: t3.clone(), mu: t2.clone(), psi: t3, lambda: t2.clone(), t: t2 }
    }
}


impl<F: Field> RPresentation<F> {
    pub fn new(a: Vec<Matrix<F>>, b: Vec<Matrix<F>>, c: Matrix<F>) -> Result<Self> {
        let n = c.rows();
        if !c.is_square() || a.len() != b.len() || a.iter().chain(&b).any(|m| m.rows() != n || m.cols() != n) {
            return Err(Error::Dimension("presentation needs p matrices a, p matrices b and c, all n×n".into()));
        }
        Ok(RPresentation { n, a, b, c })
    }

    pub fn p(&self) -> usize {
        self.a.len()
    }

    /// `Σ a_i x b^i + c x`.
    pub fn apply(&self, x: &Matrix<F>) -> Result<Matrix<F>> {
        if x.rows() != self.n || x.cols() != self.n {
            return Err(Error::Dimension(format!("argument is {}x{}, presentation has n = {}", x.rows(), x.cols(), self.n)));
        }
        let mut out = self.c.mul(x)?;
        for (a, b) in self.a.iter().zip(&self.b) {
            out = out.add(&a.mul(x)?.mul(b)?)?;
        }
        Ok(out)
    }

    /// Dense operator on row-major coordinates: `Σ a_i ⊗ (b^i)ᵀ + c ⊗ 1`.
    pub fn operator(&self) -> LinearOperator<F> {
        let mut r = self.c.kron(&Matrix::identity(self.n));
        for (a, b) in self.a.iter().zip(&self.b) {
            r = r.add(&a.kron(&b.transpose())).expect("same size");
        }
        r
    }

    /// `x∘y = a_i x b^i y + x a_i y b^i − a_i x y b^i + x c y`.
    pub fn second_product(&self) -> StructureConstants<F> {
        product_from_fn(self.n, |x, y| {
            let mut out = x.mul(&self.c).unwrap().mul(y).unwrap();
            for (a, b) in self.a.iter().zip(&self.b) {
                let t1 = a.mul(x).unwrap().mul(b).unwrap().mul(y).unwrap();
                let t2 = x.mul(a).unwrap().mul(y).unwrap().mul(b).unwrap();
                let t3 = a.mul(x).unwrap().mul(y).unwrap().mul(b).unwrap();
                out = out.add(&t1).unwrap().add(&t2).unwrap().sub(&t3).unwrap();
            }
            out
        })
    }
}

/// `Σ a_i x b^i + c x`.
pub fn r_apply<F: Field>(pres: &RPresentation<F>, x: &Matrix<F>) -> Result<Matrix<F>> {
    pres.apply(x)
}

pub fn second_product<F: Field>(pres: &RPresentation<F>) -> StructureConstants<F> {
    pres.second_product()
}

/// Outcome of a linear independence test.
#[derive(Clone, Debug, PartialEq)]
pub struct Independence<F> {
    pub independent: bool,
    /// Coefficients of a vanishing combination (identity last when appended).
    pub witness: Option<Vec<F>>,
}

/// Rank test on vectorised matrices, optionally with the identity appended.
pub fn check_independence<F: Field>(mats: &[Matrix<F>], include_unity: bool) -> Independence<F> {
    let mut vecs: Vec<Vec<F>> = mats.iter().map(Matrix::vec).collect();
    if include_unity {
        if let Some(m) = mats.first() {
            vecs.push(Matrix::<F>::identity(m.rows()).vec());
        }
    }
    if vecs.is_empty() {
        return Independence { independent: true, witness: None };
    }
    let cols = Matrix::from_rows(vecs).expect("equal sizes").transpose();
    let ns = cols.nullspace();
    match ns.into_iter().next() {
        None => Independence { independent: true, witness: None },
        Some(w) => Independence { independent: false, witness: Some(w) },
    }
}

/// Minimal presentation of a dense operator together with the shift `v` such that
/// `apply(pres) = R + ad_v`.
#[derive(Clone, Debug, PartialEq)]
pub struct Minimized<F> {
    pub pres: RPresentation<F>,
    pub shift: Matrix<F>,
}

/// Rewrites a dense operator on `Mat_n` with the smallest possible `p` in its class.
pub fn minimize_presentation<F: Field>(r: &LinearOperator<F>, n: usize) -> Result<Minimized<F>> {
    let d = n * n;
    if r.rows() != d || r.cols() != d {
        return Err(Error::Dimension(format!("operator is {}x{}, expected {d}x{d}", r.rows(), r.cols())));
    }
    // T[(r,p),(q,s)] = R[(r,s),(p,q)]: rows index a, columns index b.
    let t = Matrix::from_fn(d, d, |row, col| {
        let (rr, pp) = (row / n, row % n);
        let (qq, ss) = (col / n, col % n);
        r[(rr * n + ss, pp * n + qq)].clone()
    });
    let inv_n = F::from_i64(n as i64).inv()?;
    let unit_vec = Matrix::<F>::identity(n).vec();
    // P = 1 − Q with Q the projection onto the identity along traceless matrices.
    let q_proj = Matrix::from_fn(d, d, |i, j| unit_vec[i].clone() * unit_vec[j].clone() * inv_n.clone());
    let p_proj = Matrix::identity(d).sub(&q_proj)?;
    let t_pp = p_proj.mul(&t)?.mul(&p_proj.transpose())?;
    // (Q ⊗ 1) T = 1 ⊗ v  and  (P ⊗ Q) T = z ⊗ 1, read off via traces.
    let v_vec: Vec<F> = (0..d)
        .map(|col| (0..n).fold(F::zero(), |acc, k| acc + t[(k * n + k, col)].clone()) * inv_n.clone())
        .collect();
    let pt = p_proj.mul(&t)?;
    let z_vec: Vec<F> = (0..d)
        .map(|row| (0..n).fold(F::zero(), |acc, k| acc + pt[(row, k * n + k)].clone()) * inv_n.clone())
        .collect();
    let (rref, pivots) = t_pp.rref();
    let a: Vec<Matrix<F>> =
        pivots.iter().map(|&c| Matrix::from_vec(n, n, t_pp.col(c)).expect("n² entries")).collect();
    let b: Vec<Matrix<F>> =
        (0..pivots.len()).map(|i| Matrix::from_vec(n, n, rref.row(i).to_vec()).expect("n² entries")).collect();
    let v = Matrix::from_vec(n, n, v_vec)?;
    let z = Matrix::from_vec(n, n, z_vec)?;
    let c = z.add(&v)?;
    Ok(Minimized { pres: RPresentation::new(a, b, c)?, shift: v })
}

/// Result of reading the structure tensors off a presentation.
#[derive(Clone, Debug, PartialEq)]
pub struct Extracted<F> {
    pub tensors: MTensors<F>,
    /// The presentation the tensors refer to (minimized when the input was not).
    pub pres: RPresentation<F>,
    /// Residuals of the `b^i a_j` relation and the two `c` relations.
    pub report: Report,
}

fn solve_in_span<F: Field>(basis: &Matrix<F>, target: &Matrix<F>) -> Option<Vec<F>> {
    basis.solve(&target.vec()).ok().flatten()
}

fn try_extract<F: Field>(pres: &RPresentation<F>) -> Result<Extracted<F>> {
    let p = pres.p();
    let n = pres.n;
    for (name, mats) in [("a", &pres.a), ("b", &pres.b)] {
        let ind = check_independence(mats, true);
        if !ind.independent {
            return Err(Error::Precondition(format!("{{1, {name}_i}} is linearly dependent: {:?}", ind.witness)));
        }
    }
    let one = Matrix::<F>::identity(n);
    let span = |mats: &[Matrix<F>]| {
        let mut cols: Vec<Vec<F>> = mats.iter().map(Matrix::vec).collect();
        cols.push(one.vec());
        Matrix::from_rows(cols).expect("equal sizes").transpose()
    };
    let span_a = span(&pres.a);
    let span_b = span(&pres.b);
    let mut t = MTensors::zero(p);
    for i in 0..p {
        for j in 0..p {
            let aa = pres.a[i].mul(&pres.a[j])?;
            let x = solve_in_span(&span_a, &aa).ok_or_else(|| {
                Error::Unsupported(format!("a_{} a_{} is outside span{{a_k, 1}}", i + 1, j + 1))
            })?;
            for k in 0..p {
                t.phi[k][i][j] = x[k].clone();
            }
            t.mu[i][j] = x[p].clone();
            let bb = pres.b[i].mul(&pres.b[j])?;
            let y = solve_in_span(&span_b, &bb).ok_or_else(|| {
                Error::Unsupported(format!("b^{} b^{} is outside span{{b^k, 1}}", i + 1, j + 1))
            })?;
            for k in 0..p {
                t.psi[i][j][k] = y[k].clone();
            }
            t.lambda[i][j] = y[p].clone();
        }
    }
    let mut report = Report::default();
    // (!!): b^i a_j − ψ^{ki}_j a_k − φ^i_{jk} b^k − δ^i_j c must be scalar.
    let mut rel2 = Residual::new("(!!)");
    for i in 0..p {
        for j in 0..p {
            let mut x = pres.b[i].mul(&pres.a[j])?;
            for k in 0..p {
                x = x.sub(&pres.a[k].scale(&t.psi[k][i][j]))?;
                x = x.sub(&pres.b[k].scale(&t.phi[i][j][k]))?;
            }
            if i == j {
                x = x.sub(&pres.c)?;
            }
            let s = x.trace() * F::from_i64(n as i64).inv()?;
            t.t[i][j] = s.clone();
            let off = x.sub(&one.scale(&s))?;
            rel2.record_vec(&[i, j], off.as_slice());
        }
    }
    report.push(rel2);
    let (bc, ca) = c_relation_residuals(pres, &t)?;
    report.push(bc);
    report.push(ca);
    Ok(Extracted { tensors: t, pres: pres.clone(), report })
}

/// Residuals of `b^i c = …` and `c a_j = …`.
fn c_relation_residuals<F: Field>(pres: &RPresentation<F>, t: &MTensors<F>) -> Result<(Residual, Residual)> {
    let p = pres.p();
    let one = Matrix::<F>::identity(pres.n);
    let mut bc = Residual::new("(!!!) first identity");
    let mut ca = Residual::new("(!!!) second identity");
    for i in 0..p {
        // b^i c = λ^{ki} a_k − t^i_k b^k − φ^i_{kl}ψ^{lk}_s b^s − φ^i_{kl}λ^{lk}
        let mut x = pres.b[i].mul(&pres.c)?;
        for k in 0..p {
            x = x.sub(&pres.a[k].scale(&t.lambda[k][i]))?;
            x = x.add(&pres.b[k].scale(&t.t[i][k]))?;
            for l in 0..p {
                for s in 0..p {
                    x = x.add(&pres.b[s].scale(&(t.phi[i][k][l].clone() * t.psi[l][k][s].clone())))?;
                }
                x = x.add(&one.scale(&(t.phi[i][k][l].clone() * t.lambda[l][k].clone())))?;
            }
        }
        bc.record_vec(&[i], x.as_slice());
        // c a_j = μ_{jk} b^k − t^k_j a_k − φ^s_{kl}ψ^{lk}_j a_s − μ_{kl}ψ^{lk}_j
        let j = i;
        let mut y = pres.c.mul(&pres.a[j])?;
        for k in 0..p {
            y = y.sub(&pres.b[k].scale(&t.mu[j][k]))?;
            y = y.add(&pres.a[k].scale(&t.t[k][j]))?;
            for l in 0..p {
                for s in 0..p {
                    y = y.add(&pres.a[s].scale(&(t.phi[s][k][l].clone() * t.psi[l][k][j].clone())))?;
                }
                y = y.add(&one.scale(&(t.mu[k][l].clone() * t.psi[l][k][j].clone())))?;
            }
        }
        ca.record_vec(&[j], y.as_slice());
    }
    Ok((bc, ca))
}

/// Reads `φ, μ, ψ, λ, t` off a presentation and checks the `c` relations.
///
/// A presentation whose products leave the spans is retried once after
/// minimization before the error is returned.
pub fn extract_m_tensors<F: Field>(pres: &RPresentation<F>) -> Result<Extracted<F>> {
    match try_extract(pres) {
        Ok(e) => Ok(e),
        Err(first) => {
            let m = minimize_presentation(&pres.operator(), pres.n)?;
            if m.pres.p() == pres.p() && m.pres == *pres {
                return Err(not_m_structure(first));
            }
            try_extract(&m.pres).map_err(not_m_structure)
        }
    }
}

fn not_m_structure(e: Error) -> Error {
    match e {
        Error::Unsupported(msg) | Error::Precondition(msg) => {
            Error::Unsupported(format!("not an M-structure representation: {msg}"))
        }
        other => other,
    }
}

/// Residuals of the quadratic identities among `φ, μ, ψ, λ, t`.
pub fn verify_theorem21<F: Field>(t: &MTensors<F>) -> Report {
    let p = t.p;
    let (phi, mu, psi, lam, tt) = (&t.phi, &t.mu, &t.psi, &t.lambda, &t.t);
    let sum = |f: &dyn Fn(usize) -> F| (0..p).fold(F::zero(), |acc, s| acc + f(s));
    let mut e1 = Residual::new("(!!!!) first identity");
    let mut e2 = Residual::new("(!!!!) second identity");
    let mut e3 = Residual::new("(!!!!!) first identity");
    let mut e4 = Residual::new("(!!!!!) second identity");
    let mut e5 = Residual::new("(!!!!!) third identity");
    let mut e6 = Residual::new("(!!!!!!) first identity");
    let mut e7 = Residual::new("(!!!!!!) second identity");
    for i in 0..p {
        for j in 0..p {
            for k in 0..p {
                // φ^s_{jk}μ_{is} − φ^s_{ij}μ_{sk}
                let v = sum(&|s| phi[s][j][k].clone() * mu[i][s].clone() - phi[s][i][j].clone() * mu[s][k].clone());
                e2.record(&[i, j, k], 0, &v);
                // ψ^{ij}_sλ^{sk} − ψ^{jk}_sλ^{is}
                let v = sum(&|s| psi[i][j][s].clone() * lam[s][k].clone() - psi[j][k][s].clone() * lam[i][s].clone());
                e4.record(&[i, j, k], 0, &v);
                // φ^s_{jk}t^i_s − ψ^{si}_jμ_{sk} − φ^i_{js}t^s_k + δ^i_jψ^{sr}_kμ_{rs}
                let mut v = sum(&|s| {
                    phi[s][j][k].clone() * tt[i][s].clone()
                        - psi[s][i][j].clone() * mu[s][k].clone()
                        - phi[i][j][s].clone() * tt[s][k].clone()
                });
                if i == j {
                    v += sum(&|s| sum(&|r| psi[s][r][k].clone() * mu[r][s].clone()));
                }
                e6.record(&[i, j, k], 0, &v);
                // ψ^{ki}_s t^s_j − φ^i_{js}λ^{ks} − ψ^{si}_j t^k_s + δ^i_jφ^k_{sr}λ^{rs}
                let mut v = sum(&|s| {
                    psi[k][i][s].clone() * tt[s][j].clone()
                        - phi[i][j][s].clone() * lam[k][s].clone()
                        - psi[s][i][j].clone() * tt[k][s].clone()
                });
                if i == j {
                    v += sum(&|s| sum(&|r| phi[k][s][r].clone() * lam[r][s].clone()));
                }
                e7.record(&[i, j, k], 0, &v);
                for l in 0..p {
                    // φ^s_{jk}φ^i_{sl} + μ_{jk}δ^i_l − φ^i_{js}φ^s_{kl} − δ^i_jμ_{kl}
                    let mut v = sum(&|s| phi[s][j][k].clone() * phi[i][s][l].clone() - phi[i][j][s].clone() * phi[s][k][l].clone());
                    if i == l {
                        v += mu[j][k].clone();
                    }
                    if i == j {
                        v -= mu[k][l].clone();
                    }
                    e1.record(&[i, j, k, l], 0, &v);
                    // ψ^{ij}_sψ^{sk}_l + δ^k_lλ^{ij} − ψ^{jk}_sψ^{is}_l − δ^i_lλ^{jk}
                    let mut v = sum(&|s| psi[i][j][s].clone() * psi[s][k][l].clone() - psi[j][k][s].clone() * psi[i][s][l].clone());
                    if k == l {
                        v += lam[i][j].clone();
                    }
                    if i == l {
                        v -= lam[j][k].clone();
                    }
                    e3.record(&[i, j, k, l], 0, &v);
                    // φ^s_{jk}ψ^{li}_s − φ^l_{sk}ψ^{si}_j − φ^i_{js}ψ^{ls}_k − δ^l_k t^i_j + δ^i_j t^l_k + δ^i_j φ^l_{sr}ψ^{rs}_k
                    let mut v = sum(&|s| {
                        phi[s][j][k].clone() * psi[l][i][s].clone()
                            - phi[l][s][k].clone() * psi[s][i][j].clone()
                            - phi[i][j][s].clone() * psi[l][s][k].clone()
                    });
                    if l == k {
                        v -= tt[i][j].clone();
                    }
                    if i == j {
                        v += tt[l][k].clone();
                        v += sum(&|s| sum(&|r| phi[l][s][r].clone() * psi[r][s][k].clone()));
                    }
                    e5.record(&[i, j, k, l], 0, &v);
                }
            }
        }
    }
    Report { items: vec![e1, e2, e3, e4, e5, e6, e7] }
}

/// `S(x) = μ_{ji}(b^i x b^j − ψ^{ij}_k x b^k − λ^{ij} x)` as a dense operator.
pub fn s_operator<F: Field>(pres: &RPresentation<F>, t: &MTensors<F>) -> Result<LinearOperator<F>> {
    let p = pres.p();
    if t.p != p {
        return Err(Error::Dimension(format!("tensors of size {}, presentation of size {p}", t.p)));
    }
    let n = pres.n;
    let id = Matrix::<F>::identity(n);
    let mut s = Matrix::zeros(n * n, n * n);
    for i in 0..p {
        for j in 0..p {
            let m = &t.mu[j][i];
            if m.is_zero() {
                continue;
            }
            let mut term = pres.b[i].kron(&pres.b[j].transpose());
            for k in 0..p {
                term = term.sub(&id.kron(&pres.b[k].transpose()).scale(&t.psi[i][j][k]))?;
            }
            term = term.sub(&Matrix::identity(n * n).scale(&t.lambda[i][j]))?;
            s = s.add(&term.scale(m))?;
        }
    }
    Ok(s)
}

/// The standard product on `Mat_n`, for pairing with [`second_product`].
pub fn standard_product<F: Field>(n: usize) -> StructureConstants<F> {
    matrix_algebra(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pencil::{deform_by_r, ad};
    use crate::random::Rng;
    use crate::scalar::Cyclotomic;
    use proptest::prelude::*;

    type Q = Cyclotomic;

    fn mat(n: usize, v: &[i64]) -> Matrix<Q> {
        Matrix::from_vec(n, n, v.iter().map(|&x| Q::from_i64(x)).collect()).unwrap()
    }

    fn e(n: usize, i: usize, j: usize) -> Matrix<Q> {
        let mut m = Matrix::zeros(n, n);
        m[(i, j)] = Q::one();
        m
    }

    #[test]
    fn apply_forms() {
        let x = mat(2, &[1, 2, 3, 4]);
        let id = RPresentation::new(vec![], vec![], Matrix::identity(2)).unwrap();
        assert_eq!(id.apply(&x).unwrap(), x);
        let a = mat(2, &[1, 0, 2, -1]);
        let b = mat(2, &[0, 3, 1, 1]);
        let pres = RPresentation::new(vec![a.clone()], vec![b.clone()], a.mul(&b).unwrap().scale(&-Q::one())).unwrap();
        let expect = a.mul(&x.mul(&b).unwrap().sub(&b.mul(&x).unwrap()).unwrap()).unwrap();
        assert_eq!(pres.apply(&x).unwrap(), expect);
    }

    #[test]
    fn independence() {
        let ind = check_independence(&[e(2, 0, 1), e(2, 1, 0)], true);
        assert!(ind.independent);
        let one = Matrix::<Q>::identity(2);
        let ind = check_independence(&[one.clone(), one], false);
        assert!(!ind.independent);
        let w = ind.witness.unwrap();
        assert_eq!(w[0].clone() + w[1].clone(), Q::zero());
    }

    #[test]
    fn minimize_left_multiplication() {
        let a = mat(2, &[1, 2, 3, 5]);
        let r = crate::pencil::example_1_1_operator(&a);
        let m = minimize_presentation(&r, 2).unwrap();
        assert_eq!(m.pres.p(), 0);
        assert_eq!(m.pres.c, a);
    }

    #[test]
    fn minimize_recovers_p() {
        let a1 = mat(3, &[0, 1, 0, 0, 0, 2, 1, 0, 0]);
        let a2 = mat(3, &[1, 0, 0, 0, -1, 0, 0, 0, 0]);
        let b1 = mat(3, &[0, 0, 1, 1, 0, 0, 0, 3, 0]);
        let b2 = mat(3, &[0, 1, 0, 0, 0, 0, 0, 0, 1]);
        let c = mat(3, &[1, 1, 0, 0, 2, 0, 1, 0, 0]);
        let pres = RPresentation::new(vec![a1.clone(), a2], vec![b1.clone(), b2], c.clone()).unwrap();
        let m = minimize_presentation(&pres.operator(), 3).unwrap();
        assert_eq!(m.pres.p(), 2);
        let shifted = pres.operator().add(&ad(&m.shift.vec(), &matrix_algebra(3)).unwrap()).unwrap();
        assert_eq!(m.pres.operator(), shifted);
        let redundant = RPresentation::new(vec![a1.clone(), a1.clone()], vec![b1.clone(), b1.scale(&Q::from_i64(2))], c).unwrap();
        assert_eq!(minimize_presentation(&redundant.operator(), 3).unwrap().pres.p(), 1);
    }

    #[test]
    fn empty_presentation_has_empty_tensors() {
        let pres = RPresentation::new(vec![], vec![], mat(2, &[1, 2, 0, 1])).unwrap();
        let ex = extract_m_tensors(&pres).unwrap();
        assert_eq!(ex.tensors.p, 0);
        assert!(ex.report.passed());
        assert!(verify_theorem21(&ex.tensors).passed());
        assert!(s_operator(&pres, &ex.tensors).unwrap().is_zero());
    }

    #[test]
    fn generic_matrices_do_not_close() {
        let a = mat(3, &[0, 1, 2, 0, 0, 1, 3, 0, 0]);
        let b = mat(3, &[1, 0, 0, 2, 0, 1, 0, 1, 0]);
        let pres = RPresentation::new(vec![a], vec![b], Matrix::zeros(3, 3)).unwrap();
        match extract_m_tensors(&pres) {
            Err(Error::Unsupported(msg)) => assert!(msg.contains("not an M-structure")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn quadratic_identities_detect_inconsistent_mu() {
        assert!(verify_theorem21(&MTensors::<Q>::zero(3)).passed());
        let mut t = MTensors::<Q>::zero(2);
        for i in 0..2 {
            t.phi[i][i][i] = Q::one();
        }
        t.mu[0][1] = Q::from_i64(3);
        let r = verify_theorem21(&t);
        assert!(!r.get("(!!!!) second identity").unwrap().is_zero());
    }

    proptest! {
        #[test]
        fn operator_matches_apply(seed in any::<u64>()) {
            let mut rng = Rng::seeded(seed);
            let n = 2 + rng.below(2);
            let p = rng.below(3);
            let a = (0..p).map(|_| rng.matrix(n, 3)).collect();
            let b = (0..p).map(|_| rng.matrix(n, 3)).collect();
            let pres = RPresentation::new(a, b, rng.matrix(n, 3)).unwrap();
            let x: Matrix<Q> = rng.matrix(n, 3);
            let dense = pres.operator().mul_vec(&x.vec()).unwrap();
            prop_assert_eq!(dense, pres.apply(&x).unwrap().vec());
            prop_assert_eq!(pres.second_product(), deform_by_r(&matrix_algebra(n), &pres.operator()).unwrap());
        }

        #[test]
        fn equivalence_transformations_keep_the_product(seed in any::<u64>()) {
            let mut rng = Rng::seeded(seed);
            let n = 2;
            let a: Vec<Matrix<Q>> = (0..2).map(|_| rng.matrix(n, 2)).collect();
            let b: Vec<Matrix<Q>> = (0..2).map(|_| rng.matrix(n, 2)).collect();
            let c = rng.matrix(n, 2);
            let pres = RPresentation::new(a.clone(), b.clone(), c.clone()).unwrap();
            let u: Vec<Q> = (0..2).map(|_| rng.small_rational(2)).collect();
            let v: Vec<Q> = (0..2).map(|_| rng.small_rational(2)).collect();
            let one = Matrix::identity(n);
            let a2: Vec<_> = a.iter().zip(&u).map(|(x, s)| x.add(&one.scale(s)).unwrap()).collect();
            let b2: Vec<_> = b.iter().zip(&v).map(|(x, s)| x.add(&one.scale(s)).unwrap()).collect();
            let mut c2 = c;
            for i in 0..2 {
                c2 = c2.sub(&b[i].scale(&u[i])).unwrap().sub(&a[i].scale(&v[i])).unwrap()
                    .sub(&one.scale(&(u[i].clone() * v[i].clone()))).unwrap();
            }
            let affine = RPresentation::new(a2, b2, c2).unwrap();
            prop_assert_eq!(pres.second_product(), affine.second_product());
            // a_i → g_i^k a_k, b^i → h^i_k b^k with h = g^{-1}.
            let g = Matrix::from_rows(vec![vec![Q::from_i64(2), Q::one()], vec![Q::one(), Q::one()]]).unwrap();
            let h = g.inverse().unwrap();
            let ga: Vec<_> = (0..2).map(|i| a[0].scale(&g[(i, 0)]).add(&a[1].scale(&g[(i, 1)])).unwrap()).collect();
            let hb: Vec<_> = (0..2).map(|i| b[0].scale(&h[(0, i)]).add(&b[1].scale(&h[(1, i)])).unwrap()).collect();
            let based = RPresentation::new(ga, hb, pres.c.clone()).unwrap();
            prop_assert_eq!(pres.second_product(), based.second_product());
        }
    }
}
