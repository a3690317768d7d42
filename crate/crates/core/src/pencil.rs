//! Compatibility of product pairs, deformations by an operator `R`, and the
//! polynomial extension of a compatible pair.

use crate::algebra::{matrix_algebra, mixed_residual, unit, Pencil, StructureConstants};
use crate::error::{Error, Result};
use crate::linalg::{axpy, Matrix};
use crate::residual::{Report, Residual};
use crate::scalar::Field;

/// Operator on the coordinate space; column `i` is the image of `e_i`.
pub type LinearOperator<F> = Matrix<F>;

/// Associators of both products and of their mixed term.
pub fn check_compatibility<F: Field>(p: &Pencil<F>) -> Report {
    let mut star = p.star.associator_residual();
    star.label = "star associativity".into();
    let mut circle = p.circle.associator_residual();
    circle.label = "circle associativity".into();
    let mixed = mixed_residual(&p.star, &p.circle);
    Report { items: vec![star, circle, mixed] }
}

fn check_operator<F: Field>(r: &LinearOperator<F>, d: usize) -> Result<()> {
    if r.rows() != d || r.cols() != d {
        return Err(Error::Dimension(format!("operator is {}x{}, algebra has dim {}", r.rows(), r.cols(), d)));
    }
    Ok(())
}

/// `X∘Y = R(X)⋆Y + X⋆R(Y) − R(X⋆Y)`. The result is not checked for associativity.
pub fn deform_by_r<F: Field>(star: &StructureConstants<F>, r: &LinearOperator<F>) -> Result<StructureConstants<F>> {
    let d = star.dim();
    check_operator(r, d)?;
    StructureConstants::from_fn(d, |i, j| {
        let mut v = star.mul_unchecked(&r.col(i), &unit(d, j));
        axpy(&mut v, &F::one(), &star.mul_unchecked(&unit(d, i), &r.col(j)));
        let rp = r.mul_vec(star.product(i, j)).expect("square");
        axpy(&mut v, &-F::one(), &rp);
        v
    })
}

/// [`deform_by_r`] followed by an associativity and compatibility scan.
pub fn verified_deform<F: Field>(
    star: &StructureConstants<F>,
    r: &LinearOperator<F>,
) -> Result<(StructureConstants<F>, Report)> {
    let circle = deform_by_r(star, r)?;
    let report = check_compatibility(&Pencil { star: star.clone(), circle: circle.clone() });
    Ok((circle, report))
}

/// `R(R(X)⋆Y + X⋆R(Y)) − R(X)⋆R(Y) − R²(X⋆Y) − S(X)⋆Y − X⋆S(Y) + S(X⋆Y)` on basis pairs.
pub fn yang_rs_residual<F: Field>(
    r: &LinearOperator<F>,
    s: &LinearOperator<F>,
    star: &StructureConstants<F>,
) -> Result<Residual> {
    let d = star.dim();
    check_operator(r, d)?;
    check_operator(s, d)?;
    let r2 = r.mul(r)?;
    let mut res = Residual::new("yangRS");
    for i in 0..d {
        let (ri, si) = (r.col(i), s.col(i));
        let ei = unit::<F>(d, i);
        for j in 0..d {
            let (rj, sj) = (r.col(j), s.col(j));
            let ej = unit::<F>(d, j);
            let xy = star.product(i, j);
            let mut inner = star.mul_unchecked(&ri, &ej);
            axpy(&mut inner, &F::one(), &star.mul_unchecked(&ei, &rj));
            let mut v = r.mul_vec(&inner)?;
            axpy(&mut v, &-F::one(), &star.mul_unchecked(&ri, &rj));
            axpy(&mut v, &-F::one(), &r2.mul_vec(xy)?);
            axpy(&mut v, &-F::one(), &star.mul_unchecked(&si, &ej));
            axpy(&mut v, &-F::one(), &star.mul_unchecked(&ei, &sj));
            axpy(&mut v, &F::one(), &s.mul_vec(xy)?);
            res.record_vec(&[i, j], &v);
        }
    }
    Ok(res)
}

/// [`yang_rs_residual`] with `S = 0`.
pub fn yang_rr_residual<F: Field>(r: &LinearOperator<F>, star: &StructureConstants<F>) -> Result<Residual> {
    let zero = Matrix::zeros(star.dim(), star.dim());
    let mut res = yang_rs_residual(r, &zero, star)?;
    res.label = "yangRR".into();
    Ok(res)
}

/// `v ↦ a⋆v − v⋆a`.
pub fn ad<F: Field>(a: &[F], star: &StructureConstants<F>) -> Result<LinearOperator<F>> {
    if a.len() != star.dim() {
        return Err(Error::Dimension(format!("vector of length {} in dim {}", a.len(), star.dim())));
    }
    star.left_mult(a).sub(&star.right_mult(a))
}

/// `R + ad_a`, which defines the same second product.
pub fn equivalent_shift<F: Field>(
    r: &LinearOperator<F>,
    a: &[F],
    star: &StructureConstants<F>,
) -> Result<LinearOperator<F>> {
    check_operator(r, star.dim())?;
    r.add(&ad(a, star)?)
}

/// Componentwise product `e_i e_j = δ_ij e_i` on `m` idempotents.
pub fn idempotent_algebra<F: Field>(m: usize) -> StructureConstants<F> {
    StructureConstants::from_fn(m, |i, j| if i == j { unit(m, i) } else { vec![F::zero(); m] }).expect("square")
}

/// The matrix `r_ij` of the rational family on `m` idempotents.
pub fn example_1_3_r<F: Field>(p: &[F], q: &[F], q0: &F) -> Result<Matrix<F>> {
    let m = p.len();
    if q.len() != m {
        return Err(Error::Dimension(format!("{} values of p, {} of q", m, q.len())));
    }
    let mut r = Matrix::zeros(m, m);
    for i in 0..m {
        for j in 0..m {
            if i != j {
                let den = p[i].clone() - p[j].clone();
                if den.is_zero() {
                    return Err(Error::InvalidParameters(format!("p_{} = p_{}", i + 1, j + 1)));
                }
                r[(i, j)] = q[i].clone() * p[j].clone() * den.inv()?;
            }
        }
    }
    for i in 0..m {
        let mut d = q0.clone();
        for k in 0..m {
            if k != i {
                d -= r[(k, i)].clone();
            }
        }
        r[(i, i)] = d;
    }
    Ok(r)
}

/// Idempotent product with the second product `e_i∘e_j = r_ij e_j + r_ji e_i − δ_ij Σ_k r_ik e_k`.
pub fn example_1_3<F: Field>(p: &[F], q: &[F], q0: &F) -> Result<Pencil<F>> {
    let r = example_1_3_r(p, q, q0)?;
    let m = p.len();
    let circle = StructureConstants::from_fn(m, |i, j| {
        let mut v = vec![F::zero(); m];
        v[j] += r[(i, j)].clone();
        v[i] += r[(j, i)].clone();
        if i == j {
            for k in 0..m {
                v[k] -= r[(i, k)].clone();
            }
        }
        v
    })?;
    Pencil::new(idempotent_algebra(m), circle)
}

/// Operator generating [`example_1_3`]: `R(e_i) = Σ_k r_ik e_k`.
pub fn example_1_3_operator<F: Field>(p: &[F], q: &[F], q0: &F) -> Result<LinearOperator<F>> {
    Ok(example_1_3_r(p, q, q0)?.transpose())
}

fn mat_vec<F: Field>(x: &Matrix<F>) -> Vec<F> {
    x.vec()
}

fn vec_mat<F: Field>(n: usize, v: &[F]) -> Matrix<F> {
    Matrix::from_vec(n, n, v.to_vec()).expect("n² entries")
}

/// Dense operator on `Mat_n` (row-major coordinates) from a matrix map.
pub fn operator_from_fn<F: Field>(n: usize, f: impl Fn(&Matrix<F>) -> Matrix<F>) -> LinearOperator<F> {
    let d = n * n;
    let cols: Vec<Vec<F>> = (0..d).map(|i| mat_vec(&f(&vec_mat(n, &unit(d, i))))).collect();
    Matrix::from_fn(d, d, |k, i| cols[i][k].clone())
}

/// Product on `Mat_n` from a bilinear matrix map.
pub fn product_from_fn<F: Field>(n: usize, f: impl Fn(&Matrix<F>, &Matrix<F>) -> Matrix<F>) -> StructureConstants<F> {
    let d = n * n;
    StructureConstants::from_fn(d, |i, j| mat_vec(&f(&vec_mat(n, &unit(d, i)), &vec_mat(n, &unit(d, j))))).expect("square")
}

fn commutator<F: Field>(a: &Matrix<F>, x: &Matrix<F>) -> Matrix<F> {
    a.mul(x).unwrap().sub(&x.mul(a).unwrap()).unwrap()
}

/// `X∘Y = X a Y` on `Mat_n`.
pub fn example_1_1<F: Field>(a: &Matrix<F>) -> StructureConstants<F> {
    product_from_fn(a.rows(), |x, y| x.mul(a).unwrap().mul(y).unwrap())
}

/// Left multiplication by `a`, the operator behind [`example_1_1`].
pub fn example_1_1_operator<F: Field>(a: &Matrix<F>) -> LinearOperator<F> {
    operator_from_fn(a.rows(), |x| a.mul(x).unwrap())
}

/// `X∘Y = (aX − Xa)(bY − Yb)` on `Mat_n`.
pub fn example_1_2<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> StructureConstants<F> {
    product_from_fn(a.rows(), |x, y| commutator(a, x).mul(&commutator(b, y)).unwrap())
}

/// `R(X) = a(Xb − bX)`, the operator behind [`example_1_2`].
pub fn example_1_2_operator<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> LinearOperator<F> {
    operator_from_fn(a.rows(), |x| a.mul(&commutator(b, x).scale(&-F::one())).unwrap())
}

/// Which of the two standard families reproduces a second product on `Mat_2`.
#[derive(Clone, Debug, PartialEq)]
pub enum Mat2Family<F> {
    /// `X∘Y = X a Y`.
    LeftRight { a: Matrix<F> },
    /// `X∘Y = (aX − Xa)(bY − Yb)`.
    Commutators { a: Matrix<F>, b: Matrix<F> },
}

/// Tries to write `circle` on `Mat_2` in one of the two standard forms.
pub fn match_mat2_family<F: Field>(circle: &StructureConstants<F>) -> Option<Mat2Family<F>> {
    if circle.dim() != 4 {
        return None;
    }
    let basis: Vec<Matrix<F>> = (0..4).map(|i| vec_mat(2, &unit(4, i))).collect();
    // Linear in a: coefficient of a_t in (e_i e_j)_k is (E_i E_t E_j)_k.
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for i in 0..4 {
        for j in 0..4 {
            let imgs: Vec<Vec<F>> = (0..4).map(|t| basis[i].mul(&basis[t]).unwrap().mul(&basis[j]).unwrap().vec()).collect();
            for k in 0..4 {
                rows.push((0..4).map(|t| imgs[t][k].clone()).collect());
                rhs.push(circle.get(k, i, j).clone());
            }
        }
    }
    let sys = Matrix::from_rows(rows).ok()?;
    if let Ok(Some(a)) = sys.solve(&rhs) {
        return Some(Mat2Family::LeftRight { a: vec_mat(2, &a) });
    }
    // Left kernel {X : X∘· = 0} is the centralizer span{1, a}.
    let left = Matrix::from_fn(16, 4, |r, i| circle.get(r % 4, i, r / 4).clone());
    let right = Matrix::from_fn(16, 4, |r, j| circle.get(r % 4, r / 4, j).clone());
    let pick = |ker: Vec<Vec<F>>| -> Option<Matrix<F>> {
        if ker.len() != 2 {
            return None;
        }
        ker.into_iter().map(|v| vec_mat(2, &v)).find(|m| !commutator(m, &basis[1]).is_zero() || !commutator(m, &basis[2]).is_zero())
    };
    let a = pick(left.nullspace())?;
    let b = pick(right.nullspace())?;
    let base = example_1_2(&a, &b);
    // circle = κ · base
    let (pos, val) = (0..4 * 4 * 4).find_map(|x| {
        let (k, i, j) = (x % 4, (x / 4) % 4, x / 16);
        let v = base.get(k, i, j);
        (!v.is_zero()).then(|| ((k, i, j), v.clone()))
    })?;
    let kappa = circle.get(pos.0, pos.1, pos.2).clone() * val.inv().ok()?;
    let scaled = base.lincomb(&kappa, &base, &F::zero()).ok()?;
    if scaled.lincomb(&F::one(), circle, &-F::one()).ok()?.is_zero() {
        Some(Mat2Family::Commutators { a: a.scale(&kappa), b })
    } else {
        None
    }
}

/// `D_e(u,v) = (q(u)v^e − q(v)u^e)/(u − v)` evaluated at `u ≠ v`.
fn divided_term<F: Field>(q: &[F], e: usize, u: &F, v: &F) -> Result<F> {
    let qu = horner(q, u);
    let qv = horner(q, v);
    let num = qu * v.pow(e as i64)? - qv * u.pow(e as i64)?;
    Ok(num * (u.clone() - v.clone()).inv()?)
}

fn horner<F: Field>(q: &[F], x: &F) -> F {
    q.iter().rev().fold(F::zero(), |acc, c| acc * x.clone() + c.clone())
}

fn vandermonde<F: Field>(nodes: &[F]) -> Matrix<F> {
    Matrix::from_fn(nodes.len(), nodes.len(), |r, c| nodes[r].pow(c as i64).expect("non-negative"))
}

/// Coefficients `[a][b]` of `u^a v^b` in `D_e`, for `e = 0..=m`, via Vandermonde solves.
fn divided_coefficients<F: Field>(q: &[F]) -> Result<Vec<Matrix<F>>> {
    let m = q.len() - 1;
    let us: Vec<F> = (0..m).map(|a| F::from_i64(a as i64)).collect();
    let vs: Vec<F> = (0..m).map(|b| F::from_i64((m + b) as i64)).collect();
    let vu_inv = vandermonde(&us).inverse()?;
    let vw_inv_t = vandermonde(&vs).transpose().inverse()?;
    (0..=m)
        .map(|e| {
            let vals = Matrix::from_fn(m, m, |a, b| divided_term(q, e, &us[a], &vs[b]).expect("distinct nodes"));
            vu_inv.mul(&vals)?.mul(&vw_inv_t)
        })
        .collect()
}

fn extend_unchecked<F: Field>(p: &Pencil<F>, q: &[F]) -> Result<StructureConstants<F>> {
    let d = p.dim();
    let m = q.len().saturating_sub(1);
    if m == 0 {
        return Err(Error::InvalidParameters("polynomial must have degree at least 1".into()));
    }
    let coef = divided_coefficients(q)?;
    StructureConstants::from_fn(d * m, |x, y| {
        let (a, i) = (x / d, x % d);
        let (b, j) = (y / d, y % d);
        let w = p.star.product(i, j);
        let s = p.circle.product(i, j);
        let mut out = vec![F::zero(); d * m];
        for c in 0..m {
            axpy(&mut out[c * d..(c + 1) * d], &coef[c][(a, b)], w);
            axpy(&mut out[c * d..(c + 1) * d], &coef[c + 1][(a, b)], s);
        }
        out
    })
}

/// Product on `V ⊗ F_m`, `m = deg q`, from the generating identity
/// `x(u)y(v) = (q(u)g(v) − q(v)g(u))/(u − v)` with `g(u) = (x⋆y)(u) + u(x∘y)(u)`.
///
/// `x ⊗ t^a` for basis vector `e_i` sits at index `a*d + i`. Coefficients are
/// ascending: `qcoeffs[j]` multiplies `u^j`.
pub fn extend_polynomial<F: Field>(p: &Pencil<F>, qcoeffs: &[F]) -> Result<StructureConstants<F>> {
    match qcoeffs.last() {
        None => Err(Error::InvalidParameters("empty polynomial".into())),
        Some(c) if c.is_zero() => Err(Error::InvalidParameters("leading coefficient is zero".into())),
        _ => extend_unchecked(p, qcoeffs),
    }
}

/// The `m + 1` products for `q = u^j`, `j = 0..=m`: each associative and all pairwise compatible.
pub fn extension_family_report<F: Field>(p: &Pencil<F>, m: usize) -> Result<Report> {
    let mut prods = Vec::with_capacity(m + 1);
    for j in 0..=m {
        let mut q = vec![F::zero(); m + 1];
        q[j] = F::one();
        prods.push(extend_unchecked(p, &q)?);
    }
    let mut report = Report::default();
    for (j, a) in prods.iter().enumerate() {
        let mut r = a.associator_residual();
        r.label = format!("associativity of u^{j}");
        report.push(r);
        for (l, b) in prods.iter().enumerate().skip(j + 1) {
            let mut r = mixed_residual(a, b);
            r.label = format!("compatibility of u^{j} and u^{l}");
            report.push(r);
        }
    }
    Ok(report)
}

pub fn extension_family_compatible<F: Field>(p: &Pencil<F>, m: usize) -> Result<bool> {
    Ok(extension_family_report(p, m)?.passed())
}

/// Monic polynomial with the given roots, ascending coefficients.
pub fn poly_from_roots<F: Field>(roots: &[F]) -> Vec<F> {
    let mut q = vec![F::one()];
    for b in roots {
        let mut next = vec![F::zero(); q.len() + 1];
        for (k, c) in q.iter().enumerate() {
            next[k + 1] += c.clone();
            next[k] -= c.clone() * b.clone();
        }
        q = next;
    }
    q
}

/// Splits the extension for `q = Π(u − b_i)` into the products `x⋆y + b_i x∘y`.
///
/// The `i`-th embedding sends `x` to `Σ_a b_i^a/q'(b_i) · x ⊗ t^a`.
pub fn extension_decompose_report<F: Field>(p: &Pencil<F>, roots: &[F]) -> Result<Report> {
    let m = roots.len();
    for i in 0..m {
        for j in i + 1..m {
            if (roots[i].clone() - roots[j].clone()).is_zero() {
                return Err(Error::InvalidParameters(format!("roots {} and {} coincide", i + 1, j + 1)));
            }
        }
    }
    let q = poly_from_roots(roots);
    let ext = extend_polynomial(p, &q)?;
    let d = p.dim();
    let dq: Vec<F> = q.iter().enumerate().skip(1).map(|(k, c)| c.clone() * F::from_i64(k as i64)).collect();
    let embed = |i: usize, x: &[F]| -> Vec<F> {
        let s = horner(&dq, &roots[i]).inv().expect("simple roots");
        let mut out = vec![F::zero(); d * m];
        let mut pw = s;
        for a in 0..m {
            axpy(&mut out[a * d..(a + 1) * d], &pw, x);
            pw *= roots[i].clone();
        }
        out
    };
    let mut report = Report::default();
    let images: Vec<Vec<F>> = (0..m).flat_map(|i| (0..d).map(move |j| (i, j))).map(|(i, j)| embed(i, &unit(d, j))).collect();
    let mut span = Residual::new("embedded images span");
    let rank = crate::linalg::rank_of(&images);
    span.record(&[], 0, &F::from_i64((d * m - rank) as i64));
    report.push(span);
    let mut cross = Residual::new("components annihilate each other");
    let mut iso = Residual::new("component products");
    for i in 0..m {
        let target = p.star.lincomb(&F::one(), &p.circle, &roots[i])?;
        for x in 0..d {
            for y in 0..d {
                let ex = embed(i, &unit(d, x));
                for l in 0..m {
                    let ey = embed(l, &unit(d, y));
                    let prod = ext.mul_unchecked(&ex, &ey);
                    if l == i {
                        let mut diff = prod;
                        axpy(&mut diff, &-F::one(), &embed(i, target.product(x, y)));
                        iso.record_vec(&[i, x, y], &diff);
                    } else {
                        cross.record_vec(&[i, l, x, y], &prod);
                    }
                }
            }
        }
    }
    report.push(cross);
    report.push(iso);
    Ok(report)
}

pub fn extension_decompose_check<F: Field>(p: &Pencil<F>, roots: &[F]) -> Result<bool> {
    Ok(extension_decompose_report(p, roots)?.passed())
}

/// Pencil `(Mat_n, circle)` for a circle given on matrices.
pub fn mat_pencil<F: Field>(n: usize, circle: StructureConstants<F>) -> Result<Pencil<F>> {
    Pencil::new(matrix_algebra(n), circle)
}
