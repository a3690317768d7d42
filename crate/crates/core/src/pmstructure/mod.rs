//! Block presentations of PM-structures.
//!
//! Generators are numbered by one flat index. `A_I` lies in the block
//! `𝒜_{α,β}` recorded as `blocks[I] = (α, β)`, and its dual `B^I` lies in
//! `ℬ_{β,α}`. With this numbering every relation keeps the shape of the single
//! block case:
//!
//! ```text
//! A_I A_J   = φ^K_{IJ} A_K + μ_{IJ} e_α
//! B^I B^J   = ψ^{IJ}_K B^K + λ^{IJ} e_α
//! B^I A_J   = ψ^{KI}_J A_K + φ^I_{JK} B^K + t^I_J e_α + δ^I_J C_α
//! C_α A_J   = μ_{JK} B^K + u^K_J A_K + q_J e_α
//! B^I C_β   = λ^{KI} A_K + u^I_K B^K + p^I e_α
//! ```
//!
//! where `e_α` is the idempotent of the block the left-hand side lives in.
//! An M-structure is the case `m = 1`.

mod examples;
mod representation;
mod ualgebra;

pub use examples::{a2k1_build, example_3_1, example_3_1_raw, example_3_1_representation, normalize, Normalized, A2k1, RawStructure};
pub use representation::{
    block_matrix_algebra, pm_second_product, pm_validate_representation, PMRepresentation, RelationLabels,
};
pub use ualgebra::{pm_check_k_central, pm_u_multiply, random_element, Mono, UAlgebra, UElement};

use crate::error::{Error, Result};
use crate::linalg::{axpy, rank_of, Matrix};
use crate::matrix_ops::MTensors;
use crate::residual::{Report, Residual};
use crate::scalar::Field;

/// Relations of the elements `C_α`: `u[k][j] = u^k_j`, `p[i] = p^i`, `q[j] = q_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct CRelations<F> {
    pub u: Vec<Vec<F>>,
    pub p: Vec<F>,
    pub q: Vec<F>,
}

/// Basis element of `L`: idempotent, generator of 𝒜, generator of ℬ, or `C_α`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Gen {
    E(usize),
    A(usize),
    B(usize),
    C(usize),
}

/// Element of `L` in the basis `e_α, A_I, B^I, C_α`.
#[derive(Clone, Debug, PartialEq)]
pub struct LVec<F> {
    pub e: Vec<F>,
    pub a: Vec<F>,
    pub b: Vec<F>,
    pub c: Vec<F>,
}

impl<F: Field> LVec<F> {
    pub fn zero(m: usize, p: usize) -> Self {
        LVec { e: vec![F::zero(); m], a: vec![F::zero(); p], b: vec![F::zero(); p], c: vec![F::zero(); m] }
    }

    pub fn unit(m: usize, p: usize, g: Gen) -> Self {
        let mut v = Self::zero(m, p);
        *v.slot(g) = F::one();
        v
    }

    fn slot(&mut self, g: Gen) -> &mut F {
        match g {
            Gen::E(i) => &mut self.e[i],
            Gen::A(i) => &mut self.a[i],
            Gen::B(i) => &mut self.b[i],
            Gen::C(i) => &mut self.c[i],
        }
    }

    pub fn get(&self, g: Gen) -> &F {
        match g {
            Gen::E(i) => &self.e[i],
            Gen::A(i) => &self.a[i],
            Gen::B(i) => &self.b[i],
            Gen::C(i) => &self.c[i],
        }
    }

    /// `self += s·other`.
    pub fn axpy(&mut self, s: &F, other: &Self) {
        axpy(&mut self.e, s, &other.e);
        axpy(&mut self.a, s, &other.a);
        axpy(&mut self.b, s, &other.b);
        axpy(&mut self.c, s, &other.c);
    }

    pub fn add_to(&mut self, g: Gen, s: F) {
        *self.slot(g) += s;
    }

    /// Nonzero coordinates in the order `e, A, B, C`.
    pub fn support(&self) -> impl Iterator<Item = (Gen, &F)> {
        let e = self.e.iter().enumerate().map(|(i, x)| (Gen::E(i), x));
        let a = self.a.iter().enumerate().map(|(i, x)| (Gen::A(i), x));
        let b = self.b.iter().enumerate().map(|(i, x)| (Gen::B(i), x));
        let c = self.c.iter().enumerate().map(|(i, x)| (Gen::C(i), x));
        e.chain(a).chain(b).chain(c).filter(|(_, x)| !x.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.support().next().is_none()
    }

    /// Coordinates concatenated as `e, A, B, C`.
    pub fn flat(&self) -> Vec<F> {
        self.e.iter().chain(&self.a).chain(&self.b).chain(&self.c).cloned().collect()
    }
}

/// PM-structure with flat generator numbering (see the module docs).
#[derive(Clone, Debug, PartialEq)]
pub struct PMPresentation<F> {
    m: usize,
    blocks: Vec<(usize, usize)>,
    tensors: MTensors<F>,
    c_rel: CRelations<F>,
}

impl<F: Field> PMPresentation<F> {
    /// Without explicit `C` relations the ones forced by centrality of `K` are used.
    pub fn new(m: usize, blocks: Vec<(usize, usize)>, tensors: MTensors<F>, c_rel: Option<CRelations<F>>) -> Result<Self> {
        let p = blocks.len();
        if m == 0 {
            return Err(Error::InvalidParameters("a PM-structure needs at least one block".into()));
        }
        if blocks.iter().any(|&(a, b)| a >= m || b >= m) {
            return Err(Error::Dimension(format!("block index out of range for m = {m}")));
        }
        check_tensor_shape(&tensors, p)?;
        let c_rel = match c_rel {
            Some(c) => {
                if c.p.len() != p || c.q.len() != p || c.u.len() != p || c.u.iter().any(|r| r.len() != p) {
                    return Err(Error::Dimension("C relations do not match the generator count".into()));
                }
                c
            }
            None => derived_c_relations(&tensors),
        };
        Ok(PMPresentation { m, blocks, tensors, c_rel })
    }

    /// The zero structure with no blocks, neutral for [`pm_direct_sum`].
    pub fn empty() -> Self {
        let tensors = MTensors::zero(0);
        let c_rel = derived_c_relations(&tensors);
        PMPresentation { m: 0, blocks: Vec::new(), tensors, c_rel }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Number of generators `A_I` (equal to the number of `B^I`).
    pub fn p(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[(usize, usize)] {
        &self.blocks
    }

    pub fn tensors(&self) -> &MTensors<F> {
        &self.tensors
    }

    pub fn c_relations(&self) -> &CRelations<F> {
        &self.c_rel
    }

    /// `dims[α][β] = dim ℬ_{α,β} = dim 𝒜_{β,α}`, not counting `e_α`.
    pub fn dims(&self) -> Vec<Vec<usize>> {
        let mut d = vec![vec![0; self.m]; self.m];
        for &(s, t) in &self.blocks {
            d[t][s] += 1;
        }
        d
    }

    /// Block `(left, right)` of a basis element of `L`.
    pub fn block_of(&self, g: Gen) -> (usize, usize) {
        match g {
            Gen::E(a) | Gen::C(a) => (a, a),
            Gen::A(i) => self.blocks[i],
            Gen::B(i) => (self.blocks[i].1, self.blocks[i].0),
        }
    }

    /// Basis of `L` in the order `e, A, B, C`.
    pub fn l_basis(&self) -> Vec<Gen> {
        let (m, p) = (self.m, self.p());
        (0..m)
            .map(Gen::E)
            .chain((0..p).map(Gen::A))
            .chain((0..p).map(Gen::B))
            .chain((0..m).map(Gen::C))
            .collect()
    }

    fn zero_l(&self) -> LVec<F> {
        LVec::zero(self.m, self.p())
    }

    fn unit_l(&self, g: Gen) -> LVec<F> {
        LVec::unit(self.m, self.p(), g)
    }

    /// `B^i A_j` in `L`.
    fn ba(&self, i: usize, j: usize) -> LVec<F> {
        let t = &self.tensors;
        let mut v = self.zero_l();
        if self.blocks[i].0 != self.blocks[j].0 {
            return v;
        }
        for k in 0..self.p() {
            v.b[k] += t.phi[i][j][k].clone();
            v.a[k] += t.psi[k][i][j].clone();
        }
        let alpha = self.blocks[i].1;
        v.e[alpha] += t.t[i][j].clone();
        if i == j {
            v.c[alpha] += F::one();
        }
        v
    }

    /// Left action of a generator of ℬ (`E` or `B`) on a basis element of `L`.
    pub fn act_left(&self, g: Gen, v: Gen) -> LVec<F> {
        let t = &self.tensors;
        let (left, right) = self.block_of(g);
        if self.block_of(v).0 != right {
            return self.zero_l();
        }
        match g {
            Gen::E(_) => self.unit_l(v),
            Gen::B(i) => match v {
                Gen::E(_) => self.unit_l(g),
                Gen::A(j) => self.ba(i, j),
                Gen::B(j) => {
                    let mut out = self.zero_l();
                    out.b.clone_from(&t.psi[i][j]);
                    out.e[left] += t.lambda[i][j].clone();
                    out
                }
                Gen::C(_) => {
                    let mut out = self.zero_l();
                    for k in 0..self.p() {
                        out.a[k] += t.lambda[k][i].clone();
                        out.b[k] += self.c_rel.u[i][k].clone();
                    }
                    out.e[left] += self.c_rel.p[i].clone();
                    out
                }
            },
            _ => panic!("{g:?} is not a generator of the algebra B"),
        }
    }

    /// Right action of a generator of 𝒜 (`E` or `A`) on a basis element of `L`.
    pub fn act_right(&self, v: Gen, g: Gen) -> LVec<F> {
        let t = &self.tensors;
        let (left, _) = self.block_of(g);
        if self.block_of(v).1 != left {
            return self.zero_l();
        }
        match g {
            Gen::E(_) => self.unit_l(v),
            Gen::A(j) => match v {
                Gen::E(_) => self.unit_l(g),
                Gen::A(i) => {
                    let mut out = self.zero_l();
                    for k in 0..self.p() {
                        out.a[k] += t.phi[k][i][j].clone();
                    }
                    out.e[self.blocks[i].0] += t.mu[i][j].clone();
                    out
                }
                Gen::B(i) => self.ba(i, j),
                Gen::C(alpha) => {
                    let mut out = self.zero_l();
                    for k in 0..self.p() {
                        out.b[k] += t.mu[j][k].clone();
                        out.a[k] += self.c_rel.u[k][j].clone();
                    }
                    out.e[alpha] += self.c_rel.q[j].clone();
                    out
                }
            },
            _ => panic!("{g:?} is not a generator of the algebra A"),
        }
    }

    /// Left action of an element of ℬ; only its `e` and `B` coordinates are used.
    pub fn act_left_vec(&self, b: &LVec<F>, v: &LVec<F>) -> LVec<F> {
        let mut out = self.zero_l();
        for (g, x) in b.support().filter(|(g, _)| matches!(g, Gen::E(_) | Gen::B(_))) {
            for (h, y) in v.support() {
                out.axpy(&(x.clone() * y.clone()), &self.act_left(g, h));
            }
        }
        out
    }

    /// Right action of an element of 𝒜; only its `e` and `A` coordinates are used.
    pub fn act_right_vec(&self, v: &LVec<F>, a: &LVec<F>) -> LVec<F> {
        let mut out = self.zero_l();
        for (h, y) in v.support() {
            for (g, x) in a.support().filter(|(g, _)| matches!(g, Gen::E(_) | Gen::A(_))) {
                out.axpy(&(x.clone() * y.clone()), &self.act_right(h, g));
            }
        }
        out
    }

    fn b_gens(&self) -> Vec<Gen> {
        (0..self.m).map(Gen::E).chain((0..self.p()).map(Gen::B)).collect()
    }

    fn a_gens(&self) -> Vec<Gen> {
        (0..self.m).map(Gen::E).chain((0..self.p()).map(Gen::A)).collect()
    }

    /// Position of a basis element in [`Self::l_basis`].
    pub fn l_index(&self, g: Gen) -> usize {
        let (m, p) = (self.m, self.p());
        match g {
            Gen::E(i) => i,
            Gen::A(i) => m + i,
            Gen::B(i) => m + p + i,
            Gen::C(i) => m + 2 * p + i,
        }
    }

    /// `C_α → C_α + κ_α e_α` for every block.
    pub fn shift_c(&self, kappa: &[F]) -> Result<Self> {
        if kappa.len() != self.m {
            return Err(Error::Dimension(format!("{} shifts for {} blocks", kappa.len(), self.m)));
        }
        let mut out = self.clone();
        for i in 0..self.p() {
            let (s, t) = self.blocks[i];
            out.tensors.t[i][i] -= kappa[t].clone();
            out.c_rel.u[i][i] += kappa[s].clone();
        }
        Ok(out)
    }
}

fn check_tensor_shape<F>(t: &MTensors<F>, p: usize) -> Result<()> {
    let sq = |v: &Vec<Vec<F>>| v.len() == p && v.iter().all(|r| r.len() == p);
    let cube = |v: &Vec<Vec<Vec<F>>>| v.len() == p && v.iter().all(sq);
    if t.p != p || !cube(&t.phi) || !cube(&t.psi) || !sq(&t.mu) || !sq(&t.lambda) || !sq(&t.t) {
        return Err(Error::Dimension(format!("tensors do not have p = {p}")));
    }
    Ok(())
}

/// The `C` relations forced by centrality of `K`:
/// `p^i = −φ^i_{kl} λ^{lk}`, `q_i = −ψ^{kl}_i μ_{lk}`, `u^j_i = −t^j_i − φ^j_{kl} ψ^{lk}_i`.
pub fn derived_c_relations<F: Field>(t: &MTensors<F>) -> CRelations<F> {
    let p = t.p;
    let mut out = CRelations { u: vec![vec![F::zero(); p]; p], p: vec![F::zero(); p], q: vec![F::zero(); p] };
    for i in 0..p {
        for k in 0..p {
            for l in 0..p {
                out.p[i] -= t.phi[i][k][l].clone() * t.lambda[l][k].clone();
                out.q[i] -= t.psi[k][l][i].clone() * t.mu[l][k].clone();
            }
        }
    }
    for j in 0..p {
        for i in 0..p {
            let mut v = -t.t[j][i].clone();
            for k in 0..p {
                for l in 0..p {
                    v -= t.phi[j][k][l].clone() * t.psi[l][k][i].clone();
                }
            }
            out.u[j][i] = v;
        }
    }
    out
}

/// Axioms of the weak structure on basis triples: the left ℬ-action and the right
/// 𝒜-action are actions, and they commute.
pub fn pm_check_consistency<F: Field>(pm: &PMPresentation<F>) -> Report {
    let basis = pm.l_basis();
    let (bg, ag) = (pm.b_gens(), pm.a_gens());
    let idx = |g: Gen| pm.l_index(g);
    let mut left = Residual::new("left B-action");
    for &g1 in &bg {
        for &g2 in &bg {
            let prod = pm.act_left(g1, g2);
            for &v in &basis {
                let mut r = pm.act_left_vec(&prod, &pm.unit_l(v));
                r.axpy(&-F::one(), &pm.act_left_vec(&pm.unit_l(g1), &pm.act_left(g2, v)));
                left.record_vec(&[idx(g1), idx(g2), idx(v)], &r.flat());
            }
        }
    }
    let mut right = Residual::new("right A-action");
    for &v in &basis {
        for &g1 in &ag {
            let va = pm.act_right(v, g1);
            for &g2 in &ag {
                let mut r = pm.act_right_vec(&pm.unit_l(v), &pm.act_right(g1, g2));
                r.axpy(&-F::one(), &pm.act_right_vec(&va, &pm.unit_l(g2)));
                right.record_vec(&[idx(v), idx(g1), idx(g2)], &r.flat());
            }
        }
    }
    let mut commute = Residual::new("actions commute");
    for &g in &bg {
        for &v in &basis {
            let bv = pm.act_left(g, v);
            for &a in &ag {
                let mut r = pm.act_right_vec(&bv, &pm.unit_l(a));
                r.axpy(&-F::one(), &pm.act_left_vec(&pm.unit_l(g), &pm.act_right(v, a)));
                commute.record_vec(&[idx(g), idx(v), idx(a)], &r.flat());
            }
        }
    }
    let mut report = Report::default();
    report.push(left);
    report.push(right);
    report.push(commute);
    report
}

/// Block-diagonal sum; generators of the second summand follow those of the first.
pub fn pm_direct_sum<F: Field>(x: &PMPresentation<F>, y: &PMPresentation<F>) -> PMPresentation<F> {
    let (px, py) = (x.p(), y.p());
    let p = px + py;
    let mut t = MTensors::zero(p);
    let mut c = CRelations { u: vec![vec![F::zero(); p]; p], p: vec![F::zero(); p], q: vec![F::zero(); p] };
    for (src, off) in [(x, 0), (y, px)] {
        let (s, r) = (&src.tensors, &src.c_rel);
        let n = src.p();
        for i in 0..n {
            c.p[off + i] = r.p[i].clone();
            c.q[off + i] = r.q[i].clone();
            for j in 0..n {
                t.mu[off + i][off + j] = s.mu[i][j].clone();
                t.lambda[off + i][off + j] = s.lambda[i][j].clone();
                t.t[off + i][off + j] = s.t[i][j].clone();
                c.u[off + i][off + j] = r.u[i][j].clone();
                for k in 0..n {
                    t.phi[off + i][off + j][off + k] = s.phi[i][j][k].clone();
                    t.psi[off + i][off + j][off + k] = s.psi[i][j][k].clone();
                }
            }
        }
    }
    let blocks = x.blocks.iter().copied().chain(y.blocks.iter().map(|&(a, b)| (a + x.m, b + x.m))).collect();
    PMPresentation { m: x.m + y.m, blocks, tensors: t, c_rel: c }
}

/// Opposite structure: the new 𝒜 is ℬ with the opposite product and vice versa.
/// The new `A_I` is the old `B^I` and the new `B^I` is the old `A_I`.
pub fn pm_opposite<F: Field>(x: &PMPresentation<F>) -> PMPresentation<F> {
    let p = x.p();
    let (s, r) = (&x.tensors, &x.c_rel);
    let mut t = MTensors::zero(p);
    let mut c = CRelations { u: vec![vec![F::zero(); p]; p], p: r.q.clone(), q: r.p.clone() };
    for i in 0..p {
        for j in 0..p {
            t.mu[i][j] = s.lambda[j][i].clone();
            t.lambda[i][j] = s.mu[j][i].clone();
            t.t[i][j] = s.t[j][i].clone();
            c.u[i][j] = r.u[j][i].clone();
            for k in 0..p {
                t.phi[k][i][j] = s.psi[j][i][k].clone();
                t.psi[i][j][k] = s.phi[k][j][i].clone();
            }
        }
    }
    // the old B^I lies in e_t L e_s, which the opposite actions read as block (s, t)
    PMPresentation { m: x.m, blocks: x.blocks.clone(), tensors: t, c_rel: c }
}

/// Dimensions of the blocks `L_{α,β} = e_α L e_β` and of `𝒜_{α,β}`, `ℬ_{α,β}`,
/// computed from the actions of the idempotents.
#[derive(Clone, Debug, PartialEq)]
pub struct WeakDecomposition {
    pub l: Vec<Vec<usize>>,
    pub a: Vec<Vec<usize>>,
    pub b: Vec<Vec<usize>>,
    /// `dim(𝒜_{α,α} ∩ ℬ_{α,α})` per block.
    pub intersection: Vec<usize>,
    pub report: Report,
}

/// Splits `L` by the idempotents `e_α` and checks the block axioms: the blocks
/// exhaust `L`, `𝒜_{α,α} ∩ ℬ_{α,α}` is one-dimensional, and `L_{α,β} ⊥ L_{β′,α′}`
/// unless `(β′, α′) = (β, α)`.
pub fn pm_weak_decompose<F: Field>(pm: &PMPresentation<F>) -> WeakDecomposition {
    let m = pm.m;
    let basis = pm.l_basis();
    let n = basis.len();
    let project = |v: &LVec<F>, a: usize, b: usize| {
        let left = pm.act_left_vec(&pm.unit_l(Gen::E(a)), v);
        pm.act_right_vec(&left, &pm.unit_l(Gen::E(b))).flat()
    };
    let span = |gens: &[Gen], a: usize, b: usize| -> Vec<Vec<F>> {
        gens.iter().map(|&g| project(&pm.unit_l(g), a, b)).collect()
    };
    let a_gens = pm.a_gens();
    let b_gens = pm.b_gens();
    let mut out = WeakDecomposition {
        l: vec![vec![0; m]; m],
        a: vec![vec![0; m]; m],
        b: vec![vec![0; m]; m],
        intersection: vec![0; m],
        report: Report::default(),
    };
    let mut blocks = vec![vec![Vec::new(); m]; m];
    for a in 0..m {
        for b in 0..m {
            let l = span(&basis, a, b);
            out.l[a][b] = rank_of(&l);
            let av = span(&a_gens, a, b);
            let bv = span(&b_gens, a, b);
            out.a[a][b] = rank_of(&av);
            out.b[a][b] = rank_of(&bv);
            if a == b {
                let both: Vec<Vec<F>> = av.iter().chain(&bv).cloned().collect();
                out.intersection[a] = out.a[a][b] + out.b[a][b] - rank_of(&both);
            }
            blocks[a][b] = l;
        }
    }
    let mut total = Residual::new("blocks span L");
    let sum: usize = out.l.iter().flatten().sum();
    total.record(&[], 0, &F::from_i64(sum as i64 - n as i64));
    let mut inter = Residual::new("A∩B per diagonal block");
    for (a, d) in out.intersection.iter().enumerate() {
        inter.record(&[a], 0, &F::from_i64(*d as i64 - 1));
    }
    let gram = pairing_matrix(pm);
    let mut orth = Residual::new("block orthogonality");
    for a in 0..m {
        for b in 0..m {
            for a2 in 0..m {
                for b2 in 0..m {
                    if (a2, b2) == (b, a) {
                        continue;
                    }
                    for (x, u) in blocks[a][b].iter().enumerate() {
                        for (y, v) in blocks[a2][b2].iter().enumerate() {
                            let gv = gram.mul_vec(v).expect("square");
                            orth.record(&[a, b, a2, b2, x, y], 0, &crate::linalg::dot(u, &gv));
                        }
                    }
                }
            }
        }
    }
    out.report.push(total);
    out.report.push(inter);
    out.report.push(orth);
    out
}

/// Gram matrix of the invariant form on the basis of [`PMPresentation::l_basis`]:
/// `(A_I, B^J) = δ`, `(e_α, C_β) = δ`, all other pairs zero.
pub fn pairing_matrix<F: Field>(pm: &PMPresentation<F>) -> Matrix<F> {
    let basis = pm.l_basis();
    Matrix::from_fn(basis.len(), basis.len(), |x, y| match (basis[x], basis[y]) {
        (Gen::A(i), Gen::B(j)) | (Gen::B(j), Gen::A(i)) if i == j => F::one(),
        (Gen::E(a), Gen::C(b)) | (Gen::C(b), Gen::E(a)) if a == b => F::one(),
        _ => F::zero(),
    })
}

/// Matrix of multiplicities from primitive central idempotents of 𝒜 and ℬ,
/// given as coordinates over `e_α, A_I` and `e_α, B^I`.
///
/// `a_{ij} = dim(f_j L g_i) / (m_i n_j)` with `m_i² = dim g_i 𝒜`, `n_j² = dim f_j ℬ`.
pub fn multiplicity_matrix<F: Field>(
    pm: &PMPresentation<F>,
    a_idempotents: &[Vec<F>],
    b_idempotents: &[Vec<F>],
) -> Result<Vec<Vec<usize>>> {
    let (m, p) = (pm.m, pm.p());
    let lift = |v: &Vec<F>, first: fn(usize) -> Gen| -> Result<LVec<F>> {
        if v.len() != m + p {
            return Err(Error::Dimension(format!("idempotent has {} coordinates, expected {}", v.len(), m + p)));
        }
        let mut out = pm.zero_l();
        for (k, x) in v.iter().enumerate() {
            let g = if k < m { Gen::E(k) } else { first(k - m) };
            out.add_to(g, x.clone());
        }
        Ok(out)
    };
    let gs: Vec<LVec<F>> = a_idempotents.iter().map(|v| lift(v, Gen::A)).collect::<Result<_>>()?;
    let fs: Vec<LVec<F>> = b_idempotents.iter().map(|v| lift(v, Gen::B)).collect::<Result<_>>()?;
    let basis = pm.l_basis();
    let side = |dim: usize, what: &str| -> Result<usize> {
        let r = (dim as f64).sqrt().round() as usize;
        if r * r != dim {
            return Err(Error::Precondition(format!("{what} block of dimension {dim} is not a full matrix algebra")));
        }
        Ok(r)
    };
    let ms: Vec<usize> = gs
        .iter()
        .map(|g| {
            let vs: Vec<Vec<F>> = pm.a_gens().iter().map(|&x| pm.act_right_vec(g, &pm.unit_l(x)).flat()).collect();
            side(rank_of(&vs), "A")
        })
        .collect::<Result<_>>()?;
    let ns: Vec<usize> = fs
        .iter()
        .map(|f| {
            let vs: Vec<Vec<F>> = pm.b_gens().iter().map(|&x| pm.act_left_vec(&pm.unit_l(x), f).flat()).collect();
            side(rank_of(&vs), "B")
        })
        .collect::<Result<_>>()?;
    let mut out = vec![vec![0; fs.len()]; gs.len()];
    for (i, g) in gs.iter().enumerate() {
        for (j, f) in fs.iter().enumerate() {
            let vs: Vec<Vec<F>> = basis
                .iter()
                .map(|&v| pm.act_right_vec(&pm.act_left_vec(f, &pm.unit_l(v)), g).flat())
                .collect();
            let d = rank_of(&vs);
            let unit = ms[i] * ns[j];
            if unit == 0 || !d.is_multiple_of(unit) {
                return Err(Error::Precondition(format!("block ({i}, {j}) has dimension {d}, not a multiple of {unit}")));
            }
            out[i][j] = d / unit;
        }
    }
    Ok(out)
}
