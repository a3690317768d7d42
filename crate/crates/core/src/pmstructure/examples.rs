//! Structures given in a non-normalised basis, and the families built that way.

use super::representation::PMRepresentation;
use super::{CRelations, Gen, LVec, PMPresentation};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::matrix_ops::MTensors;
use crate::pencil::LinearOperator;
use crate::residual::{Report, Residual};
use crate::scalar::{root_power, Field};

/// Weak PM data in an arbitrary basis `e_α, A_i, B_k, C_α` of `L`.
///
/// Products are stored as elements of `L` in the same basis. The normalised
/// element is `C′_α = c_scale[α]·C_α + c_shift[α]·e_α`; the shift fixes
/// `(C′_α, C′_α)`, which the module structure does not determine.
#[derive(Clone, Debug)]
pub struct RawStructure<F> {
    pub m: usize,
    pub a_blocks: Vec<(usize, usize)>,
    pub b_blocks: Vec<(usize, usize)>,
    /// `pairing[(i, k)] = (A_i, B_k)`.
    pub pairing: Matrix<F>,
    pub c_scale: Vec<F>,
    pub c_shift: Vec<F>,
    /// `aa[i][j] = A_i A_j`.
    pub aa: Vec<Vec<LVec<F>>>,
    /// `bb[k][l] = B_k B_l`.
    pub bb: Vec<Vec<LVec<F>>>,
    /// `ba[k][j] = B_k A_j`.
    pub ba: Vec<Vec<LVec<F>>>,
    /// `ca[j] = C_α A_j` with `α` the left block of `A_j`.
    pub ca: Vec<LVec<F>>,
    /// `bc[k] = B_k C_β` with `β` the right block of `B_k`.
    pub bc: Vec<LVec<F>>,
}

impl<F: Field> RawStructure<F> {
    /// All products zero, pairing zero, `C′ = C`.
    pub fn new(m: usize, a_blocks: Vec<(usize, usize)>, b_blocks: Vec<(usize, usize)>) -> Self {
        let p = a_blocks.len();
        let z = LVec::zero(m, p);
        RawStructure {
            m,
            a_blocks,
            b_blocks,
            pairing: Matrix::zeros(p, p),
            c_scale: vec![F::one(); m],
            c_shift: vec![F::zero(); m],
            aa: vec![vec![z.clone(); p]; p],
            bb: vec![vec![z.clone(); p]; p],
            ba: vec![vec![z.clone(); p]; p],
            ca: vec![z.clone(); p],
            bc: vec![z; p],
        }
    }
}

/// Result of [`normalize`]: the presentation in the dual basis plus the data
/// needed to carry representations along.
#[derive(Clone, Debug)]
pub struct Normalized<F> {
    pub presentation: PMPresentation<F>,
    /// Residuals of the raw relations against the relations of the presentation.
    pub report: Report,
    /// `B^I = Σ_k dual[(I, k)] B_k`.
    pub dual: Matrix<F>,
    c_scale: Vec<F>,
    c_shift: Vec<F>,
}

/// Passes to the basis `A_I`, `B^I` with `(A_I, B^J) = δ` and to `C′_α`, then
/// reads off the tensors.
pub fn normalize<F: Field>(raw: &RawStructure<F>) -> Result<Normalized<F>> {
    let (m, p) = (raw.m, raw.a_blocks.len());
    if raw.b_blocks.len() != p || raw.pairing.rows() != p || raw.pairing.cols() != p {
        return Err(Error::Dimension("raw structure needs as many B as A generators and a square pairing".into()));
    }
    if raw.c_scale.len() != m || raw.c_shift.len() != m || raw.c_scale.iter().any(F::is_zero) {
        return Err(Error::InvalidParameters("C normalisation needs m nonzero scales".into()));
    }
    let dual = raw
        .pairing
        .transpose()
        .inverse()
        .map_err(|_| Error::Precondition("the pairing between A and B is degenerate".into()))?;
    let pairing = &raw.pairing;
    // B_k = Σ_J (A_J, B_k) B^J and C_α = (C′_α − shift·e_α) / scale.
    let conv = |v: &LVec<F>| -> LVec<F> {
        let mut w = LVec::zero(m, p);
        w.a.clone_from(&v.a);
        for (k, x) in v.b.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for j in 0..p {
                w.b[j] += x.clone() * pairing[(j, k)].clone();
            }
        }
        for a in 0..m {
            let inv = raw.c_scale[a].inv().expect("checked nonzero");
            w.c[a] = v.c[a].clone() * inv.clone();
            w.e[a] = v.e[a].clone() - v.c[a].clone() * raw.c_shift[a].clone() * inv;
        }
        w
    };
    let dual_sum = |i: usize, f: &dyn Fn(usize) -> LVec<F>| -> LVec<F> {
        let mut out = LVec::zero(m, p);
        for k in 0..p {
            let x = &dual[(i, k)];
            if !x.is_zero() {
                out.axpy(x, &f(k));
            }
        }
        out
    };
    let aa: Vec<Vec<LVec<F>>> = raw.aa.iter().map(|r| r.iter().map(conv).collect()).collect();
    let cbb: Vec<Vec<LVec<F>>> = raw.bb.iter().map(|r| r.iter().map(conv).collect()).collect();
    let cba: Vec<Vec<LVec<F>>> = raw.ba.iter().map(|r| r.iter().map(conv).collect()).collect();
    let bb: Vec<Vec<LVec<F>>> = (0..p)
        .map(|i| {
            let row: Vec<LVec<F>> = (0..p).map(|l| dual_sum(i, &|k| cbb[k][l].clone())).collect();
            (0..p).map(|j| dual_sum(j, &|l| row[l].clone())).collect()
        })
        .collect();
    let ba: Vec<Vec<LVec<F>>> = (0..p).map(|i| (0..p).map(|j| dual_sum(i, &|k| cba[k][j].clone())).collect()).collect();
    let ca: Vec<LVec<F>> = (0..p)
        .map(|j| {
            let a = raw.a_blocks[j].0;
            let mut v = LVec::zero(m, p);
            v.axpy(&raw.c_scale[a], &conv(&raw.ca[j]));
            v.axpy(&raw.c_shift[a], &LVec::unit(m, p, Gen::A(j)));
            v
        })
        .collect();
    let bc: Vec<LVec<F>> = (0..p)
        .map(|i| {
            dual_sum(i, &|k| {
                let b = raw.b_blocks[k].1;
                let mut v = LVec::zero(m, p);
                v.axpy(&raw.c_scale[b], &conv(&raw.bc[k]));
                v.axpy(&raw.c_shift[b], &conv(&LVec::unit(m, p, Gen::B(k))));
                v
            })
        })
        .collect();

    let blocks = raw.a_blocks.clone();
    let (s, t) = (|i: usize| blocks[i].0, |i: usize| blocks[i].1);
    let mut ten = MTensors::zero(p);
    let mut c = CRelations { u: vec![vec![F::zero(); p]; p], p: vec![F::zero(); p], q: vec![F::zero(); p] };
    for i in 0..p {
        for j in 0..p {
            for k in 0..p {
                ten.phi[k][i][j] = aa[i][j].a[k].clone();
                ten.psi[i][j][k] = bb[i][j].b[k].clone();
            }
            ten.mu[i][j] = aa[i][j].e[s(i)].clone();
            ten.lambda[i][j] = bb[i][j].e[t(i)].clone();
            ten.t[i][j] = ba[i][j].e[t(i)].clone();
            c.u[j][i] = ca[i].a[j].clone();
        }
        c.q[i] = ca[i].e[s(i)].clone();
        c.p[i] = bc[i].e[t(i)].clone();
    }
    let pm = PMPresentation::new(m, blocks.clone(), ten, Some(c))?;

    let mut report = Report::default();
    let mut check = |label: &str, got: &dyn Fn(usize, usize) -> LVec<F>, want: &dyn Fn(usize, usize) -> LVec<F>, two: bool| {
        let mut r = Residual::new(label);
        for i in 0..p {
            for j in 0..if two { p } else { 1 } {
                let mut d = got(i, j);
                d.axpy(&-F::one(), &want(i, j));
                r.record_vec(&[i, j], &d.flat());
            }
        }
        report.push(r);
    };
    check("A products", &|i, j| aa[i][j].clone(), &|i, j| pm.act_right(Gen::A(i), Gen::A(j)), true);
    check("B products", &|i, j| bb[i][j].clone(), &|i, j| pm.act_left(Gen::B(i), Gen::B(j)), true);
    check("B·A", &|i, j| ba[i][j].clone(), &|i, j| pm.act_left(Gen::B(i), Gen::A(j)), true);
    check("C·A", &|i, _| ca[i].clone(), &|i, _| pm.act_right(Gen::C(s(i)), Gen::A(i)), false);
    check("B·C", &|i, _| bc[i].clone(), &|i, _| pm.act_left(Gen::B(i), Gen::C(s(i))), false);
    Ok(Normalized { presentation: pm, report, dual, c_scale: raw.c_scale.clone(), c_shift: raw.c_shift.clone() })
}

impl<F: Field> Normalized<F> {
    /// Fails with the first residual when the raw relations are not of PM shape.
    pub fn into_checked(self) -> Result<PMPresentation<F>> {
        match self.report.first_failure() {
            Some(r) => Err(Error::Precondition(format!("raw relations are not of PM shape: {r}"))),
            None => Ok(self.presentation),
        }
    }

    /// Carries images of the raw generators to the normalised ones.
    pub fn representation(
        &self,
        dims: Vec<usize>,
        a_raw: Vec<Matrix<F>>,
        b_raw: &[Matrix<F>],
        c_raw: &[Matrix<F>],
    ) -> Result<PMRepresentation<F>> {
        let p = self.presentation.p();
        if b_raw.len() != p || c_raw.len() != self.presentation.m() {
            return Err(Error::Dimension("one image per raw generator expected".into()));
        }
        let mut b = Vec::with_capacity(p);
        for i in 0..p {
            let mut acc: Option<Matrix<F>> = None;
            for (k, bk) in b_raw.iter().enumerate() {
                let x = &self.dual[(i, k)];
                if x.is_zero() {
                    continue;
                }
                let term = bk.scale(x);
                acc = Some(match acc {
                    None => term,
                    Some(s) => s.add(&term)?,
                });
            }
            b.push(acc.unwrap_or_else(|| Matrix::zeros(b_raw[i].rows(), b_raw[i].cols())));
        }
        let c = c_raw
            .iter()
            .enumerate()
            .map(|(a, ca)| ca.scale(&self.c_scale[a]).add(&Matrix::identity(ca.rows()).scale(&self.c_shift[a])))
            .collect::<Result<Vec<_>>>()?;
        PMRepresentation::new(dims, self.presentation.blocks().to_vec(), a_raw, b, c)
    }
}

/// One-dimensional off-diagonal blocks `A_{α,β}`, `B_{α,β}` (α ≠ β).
///
/// Generators are ordered row-major in `(α, β)`.
pub fn example_3_1<F: Field>(u: &[F], t: &[F]) -> Result<PMPresentation<F>> {
    normalize(&example_3_1_raw(u, t)?)?.into_checked()
}

/// One-dimensional representation `A → 1`, `B_{α,β} → u_β/u_α`, `C_α → 1/u_α`.
pub fn example_3_1_representation<F: Field>(u: &[F], t: &[F]) -> Result<PMRepresentation<F>> {
    if u.iter().any(F::is_zero) {
        return Err(Error::InvalidParameters("every u_α must be nonzero".into()));
    }
    let raw = example_3_1_raw(u, t)?;
    let one = |x: F| Matrix::from_fn(1, 1, |_, _| x.clone());
    let a = raw.a_blocks.iter().map(|_| one(F::one())).collect();
    let b: Vec<Matrix<F>> = raw.b_blocks.iter().map(|&(x, y)| one(u[y].clone() * u[x].inv().expect("nonzero"))).collect();
    let c: Vec<Matrix<F>> = u.iter().map(|x| one(x.inv().expect("nonzero"))).collect();
    normalize(&raw)?.representation(vec![1; u.len()], a, &b, &c)
}

/// Raw data of the one-dimensional block structure with `C′_α = t_α C_α − Σ_{β≠α} t_β/(u_α − u_β) e_α`.
pub fn example_3_1_raw<F: Field>(u: &[F], t: &[F]) -> Result<RawStructure<F>> {
    let m = u.len();
    if t.len() != m {
        return Err(Error::Dimension("u and t must have the same length".into()));
    }
    if t.iter().any(F::is_zero) {
        return Err(Error::InvalidParameters("every t_α must be nonzero".into()));
    }
    for a in 0..m {
        for b in 0..a {
            if u[a] == u[b] {
                return Err(Error::InvalidParameters(format!("u_{a} = u_{b}")));
            }
        }
    }
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|a| (0..m).filter(move |&b| b != a).map(move |b| (a, b))).collect();
    let idx = |a: usize, b: usize| pairs.iter().position(|&x| x == (a, b)).expect("off-diagonal pair");
    let inv = |x: F| x.inv().expect("generic parameters");
    let p = pairs.len();
    let mut raw = RawStructure::new(m, pairs.clone(), pairs.clone());
    for (i, &(a, b)) in pairs.iter().enumerate() {
        // (A_{α,β}, B_{β,α}) = (u_α − u_β)/t_β
        raw.pairing[(i, idx(b, a))] = (u[a].clone() - u[b].clone()) * inv(t[b].clone());
        raw.ca[i].add_to(Gen::A(i), inv(u[a].clone() - u[b].clone()));
        raw.ca[i].add_to(Gen::B(i), inv(u[b].clone() - u[a].clone()));
        raw.bc[i].add_to(Gen::A(i), inv(u[a].clone() - u[b].clone()));
        raw.bc[i].add_to(Gen::B(i), inv(u[b].clone() - u[a].clone()));
        for (j, &(b2, g)) in pairs.iter().enumerate() {
            if b2 != b {
                continue;
            }
            if a == g {
                raw.aa[i][j].add_to(Gen::E(a), F::one());
                raw.bb[i][j].add_to(Gen::E(a), F::one());
                raw.ba[i][j].add_to(Gen::E(a), F::one());
                raw.ba[i][j].add_to(Gen::C(a), u[b].clone() - u[a].clone());
            } else {
                let k = idx(a, g);
                raw.aa[i][j].add_to(Gen::A(k), F::one());
                raw.bb[i][j].add_to(Gen::B(k), F::one());
                let ca = (u[b].clone() - u[g].clone()) * inv(u[a].clone() - u[g].clone());
                let cb = (u[b].clone() - u[a].clone()) * inv(u[g].clone() - u[a].clone());
                raw.ba[i][j].add_to(Gen::A(k), ca);
                raw.ba[i][j].add_to(Gen::B(k), cb);
            }
        }
    }
    for a in 0..m {
        raw.c_scale[a] = t[a].clone();
        let mut shift = F::zero();
        for b in (0..m).filter(|&b| b != a) {
            shift -= t[b].clone() * inv(u[a].clone() - u[b].clone());
        }
        raw.c_shift[a] = shift;
    }
    debug_assert_eq!(raw.aa.len(), p);
    Ok(raw)
}

/// The PM-structure attached to the affine diagram `Ã_{2k−1}` with parameters
/// `λ_α`, `t_α`; `ε` is a primitive `k`-th root of unity.
#[derive(Clone, Debug)]
pub struct A2k1<F> {
    pub k: usize,
    pub lambda: Vec<F>,
    pub t: Vec<F>,
}

impl<F: Field> A2k1<F> {
    pub fn new(k: usize, lambda: Vec<F>, t: Vec<F>) -> Result<Self> {
        let m = lambda.len();
        if k == 0 || m == 0 || t.len() != m {
            return Err(Error::InvalidParameters("need k ≥ 1 and one λ and one t per block".into()));
        }
        if t.iter().any(F::is_zero) {
            return Err(Error::InvalidParameters("every t_α must be nonzero".into()));
        }
        if k > 1 && lambda.iter().any(F::is_zero) {
            return Err(Error::InvalidParameters("every λ_α must be nonzero".into()));
        }
        let kk = k as i64;
        for a in 0..m {
            for b in 0..a {
                if lambda[a].pow(kk)? == lambda[b].pow(kk)? {
                    return Err(Error::InvalidParameters(format!("λ_{a}^k = λ_{b}^k")));
                }
            }
        }
        Ok(A2k1 { k, lambda, t })
    }

    pub fn m(&self) -> usize {
        self.lambda.len()
    }

    fn eps(&self, i: i64) -> F {
        root_power(self.k as u32, i)
    }

    /// Raw generators `(i, α, β)`, `i ∈ ℤ/k`, excluding `i = 0` on the diagonal.
    pub fn generators(&self) -> Vec<(usize, usize, usize)> {
        let (k, m) = (self.k, self.m());
        let mut out = Vec::new();
        for a in 0..m {
            for b in 0..m {
                for i in 0..k {
                    if i != 0 || a != b {
                        out.push((i, a, b));
                    }
                }
            }
        }
        out
    }

    /// `(ε^i λ_α − λ_β)`.
    fn gap(&self, i: i64, a: usize, b: usize) -> F {
        self.eps(i) * self.lambda[a].clone() - self.lambda[b].clone()
    }

    /// `κ_α = −Σ_{(i,β)≠(0,α)} t_β ε^i / (ε^i λ_β − λ_α)`.
    pub fn kappa(&self, a: usize) -> F {
        let mut s = F::zero();
        for b in 0..self.m() {
            for i in 0..self.k as i64 {
                if i != 0 || a != b {
                    s -= self.t[b].clone() * self.eps(i) * self.gap(i, b, a).inv().expect("generic");
                }
            }
        }
        s
    }

    pub fn raw(&self) -> RawStructure<F> {
        let (k, m) = (self.k, self.m());
        let gens = self.generators();
        let idx = |i: usize, a: usize, b: usize| gens.iter().position(|&g| g == (i % k, a, b)).expect("generator");
        let blocks: Vec<(usize, usize)> = gens.iter().map(|&(_, a, b)| (a, b)).collect();
        let inv = |x: F| x.inv().expect("generic parameters");
        let mut raw = RawStructure::new(m, blocks.clone(), blocks);
        for (x, &(i, a, b)) in gens.iter().enumerate() {
            let ii = i as i64;
            // (B^i_{αβ}, A^{−i}_{βα}) = (ε^i λ_α − λ_β)/t_α
            let y = idx((k - i) % k, b, a);
            raw.pairing[(y, x)] = self.gap(ii, a, b) * inv(self.t[a].clone());
            let ca = inv(self.eps(-ii) * self.lambda[b].clone() - self.lambda[a].clone());
            let cb = inv(self.gap(ii, a, b));
            raw.ca[x].add_to(Gen::A(x), ca.clone());
            raw.ca[x].add_to(Gen::B(x), cb.clone());
            raw.bc[x].add_to(Gen::A(x), ca);
            raw.bc[x].add_to(Gen::B(x), cb);
            for (z, &(j, b2, g)) in gens.iter().enumerate() {
                if b2 != b {
                    continue;
                }
                let s = (i + j) % k;
                let jj = j as i64;
                if s == 0 && a == g {
                    raw.aa[x][z].add_to(Gen::E(a), F::one());
                    raw.bb[x][z].add_to(Gen::E(a), F::one());
                    raw.ba[x][z].add_to(Gen::E(a), self.eps(ii));
                    raw.ba[x][z].add_to(Gen::C(a), self.gap(ii, a, b));
                } else {
                    let w = idx(s, a, g);
                    let ss = s as i64;
                    raw.aa[x][z].add_to(Gen::A(w), F::one());
                    raw.bb[x][z].add_to(Gen::B(w), F::one());
                    let coef_a = self.gap(-jj, g, b) * inv(self.gap(-ss, g, a));
                    let coef_b = self.gap(ii, a, b) * inv(self.gap(ss, a, g));
                    raw.ba[x][z].add_to(Gen::A(w), coef_a);
                    raw.ba[x][z].add_to(Gen::B(w), coef_b);
                }
            }
        }
        for a in 0..m {
            raw.c_scale[a] = self.t[a].clone();
            raw.c_shift[a] = self.kappa(a);
        }
        raw
    }

    pub fn normalized(&self) -> Result<Normalized<F>> {
        normalize(&self.raw())
    }

    pub fn build(&self) -> Result<PMPresentation<F>> {
        self.normalized()?.into_checked()
    }

    /// Base operators on `ℂ^k`: the cycle `a` and `t = s·diag(1, ε, …, ε^{k−1})`,
    /// so that `a^k = 1` and `a t = ε t a`.
    pub fn base_operators(&self, s: &F) -> (Matrix<F>, Matrix<F>) {
        let k = self.k;
        let a = Matrix::from_fn(k, k, |r, c| if (r + 1) % k == c { F::one() } else { F::zero() });
        let t = Matrix::from_fn(k, k, |r, c| if r == c { s.clone() * self.eps(r as i64) } else { F::zero() });
        (a, t)
    }

    /// `(t − λ_α)^{−1}` for the base operator `t`.
    fn resolvent(&self, t: &Matrix<F>, a: usize) -> Result<Matrix<F>> {
        let shifted = t.sub(&Matrix::identity(self.k).scale(&self.lambda[a]))?;
        shifted
            .inverse()
            .map_err(|_| Error::Precondition(format!("t − λ_{a} is not invertible (s ε^i = λ_{a} for some i)")))
    }

    /// Images of the raw generators: `A^i → a^i`,
    /// `B^i_{αβ} → (ε^i t − λ_β)(t − λ_α)^{−1} a^i`, `C_α → (t − λ_α)^{−1}`.
    #[allow(clippy::type_complexity)]
    pub fn raw_images(&self, s: &F) -> Result<(Vec<Matrix<F>>, Vec<Matrix<F>>, Vec<Matrix<F>>)> {
        let k = self.k;
        let (a, t) = self.base_operators(s);
        let res: Vec<Matrix<F>> = (0..self.m()).map(|x| self.resolvent(&t, x)).collect::<Result<_>>()?;
        let id = Matrix::identity(k);
        let mut av = Vec::new();
        let mut bv = Vec::new();
        for (i, x, y) in self.generators() {
            let ai = a.pow(i as i64)?;
            let num = t.scale(&self.eps(i as i64)).sub(&id.scale(&self.lambda[y]))?;
            bv.push(num.mul(&res[x])?.mul(&ai)?);
            av.push(ai);
        }
        Ok((av, bv, res))
    }

    /// Representation on `V_α = ℂ^k` for every block.
    pub fn representation(&self, s: &F) -> Result<PMRepresentation<F>> {
        let (a, b, c) = self.raw_images(s)?;
        self.normalized()?.representation(vec![self.k; self.m()], a, &b, &c)
    }

    /// The operator `R` on `⊕ Mat_k` assembled from the block components
    /// `R_{β,α}(x_α) = Σ_i t_α/(ε^i λ_α − λ_β) a^{−i} x_α b^i_{α,β}` (α ≠ β) and
    /// `R_{α,α}(x_α) = t_α c_α x_α + Σ_{i≠0} t_α/(ε^i λ_α − λ_α) a^{−i} x_α b^i_{α,α} + κ_α x_α`.
    ///
    /// The constant `κ_α` collects the `−ε^i` terms of all pairs `(i, β) ≠ (0, α)`.
    pub fn r_operator(&self, s: &F) -> Result<LinearOperator<F>> {
        self.r_operator_with(s, false)
    }

    /// Same as [`Self::r_operator`] but with the diagonal component read literally:
    /// the sum of `a^{−i} x_α b^i_{β,α}` runs over all `(i, β) ≠ (0, α)`.
    pub fn r_operator_literal(&self, s: &F) -> Result<LinearOperator<F>> {
        self.r_operator_with(s, true)
    }

    fn r_operator_with(&self, s: &F, literal: bool) -> Result<LinearOperator<F>> {
        let (k, m) = (self.k, self.m());
        let kk = k * k;
        let (a, t) = self.base_operators(s);
        let res: Vec<Matrix<F>> = (0..m).map(|x| self.resolvent(&t, x)).collect::<Result<_>>()?;
        let id = Matrix::identity(k);
        // b^i_{α,β}
        let b = |i: usize, x: usize, y: usize| -> Result<Matrix<F>> {
            let num = t.scale(&self.eps(i as i64)).sub(&id.scale(&self.lambda[y]))?;
            num.mul(&res[x])?.mul(&a.pow(i as i64)?)
        };
        let d = m * kk;
        let mut r = Matrix::zeros(d, d);
        for col in 0..d {
            let (alpha, e) = (col / kk, col % kk);
            let x = Matrix::from_fn(k, k, |p, q| if p * k + q == e { F::one() } else { F::zero() });
            for beta in 0..m {
                let mut y = Matrix::zeros(k, k);
                if beta != alpha {
                    for i in 0..k {
                        let coef = self.t[alpha].clone() * self.gap(i as i64, alpha, beta).inv()?;
                        y = y.add(&a.pow(-(i as i64))?.mul(&x)?.mul(&b(i, alpha, beta)?)?.scale(&coef))?;
                    }
                } else {
                    y = y.add(&res[alpha].mul(&x)?.scale(&self.t[alpha]))?;
                    for g in 0..m {
                        if g != alpha && !literal {
                            continue;
                        }
                        for i in 0..k {
                            if i == 0 && g == alpha {
                                continue;
                            }
                            let coef = self.t[g].clone() * self.gap(i as i64, g, alpha).inv()?;
                            let term = a.pow(-(i as i64))?.mul(&x)?.mul(&b(i, g, alpha)?)?;
                            y = y.add(&term.scale(&coef))?;
                        }
                    }
                    y = y.add(&x.scale(&self.kappa(alpha)))?;
                }
                for (q, v) in y.vec().into_iter().enumerate() {
                    r[(beta * kk + q, col)] = v;
                }
            }
        }
        Ok(r)
    }
}

/// [`A2k1::build`] with the block count checked against `λ` and `t`.
pub fn a2k1_build<F: Field>(k: usize, m: usize, lambda: &[F], t: &[F]) -> Result<PMPresentation<F>> {
    if lambda.len() != m || t.len() != m {
        return Err(Error::Dimension(format!("m = {m} but {} λ and {} t given", lambda.len(), t.len())));
    }
    A2k1::new(k, lambda.to_vec(), t.to_vec())?.build()
}
