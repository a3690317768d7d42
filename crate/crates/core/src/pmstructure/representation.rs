//! Representations of PM-algebras on `⊕ V_α` and the second product they induce
//! on `⊕ Mat_{n_α}`.

use super::{Gen, LVec, PMPresentation};
use crate::algebra::{direct_sum, matrix_algebra, Pencil, StructureConstants};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::matrix_ops::{check_independence, RPresentation};
use crate::pencil::{check_compatibility, deform_by_r, LinearOperator};
use crate::residual::{Report, Residual};
use crate::scalar::Field;

/// Images of the generators. `a[I]` is `n_s × n_t` and `b[I]` is `n_t × n_s` for
/// `blocks[I] = (s, t)`; `c[α]` is `n_α × n_α`.
#[derive(Clone, Debug, PartialEq)]
pub struct PMRepresentation<F> {
    pub dims: Vec<usize>,
    pub blocks: Vec<(usize, usize)>,
    pub a: Vec<Matrix<F>>,
    pub b: Vec<Matrix<F>>,
    pub c: Vec<Matrix<F>>,
}

impl<F: Field> PMRepresentation<F> {
    pub fn new(
        dims: Vec<usize>,
        blocks: Vec<(usize, usize)>,
        a: Vec<Matrix<F>>,
        b: Vec<Matrix<F>>,
        c: Vec<Matrix<F>>,
    ) -> Result<Self> {
        let m = dims.len();
        if a.len() != blocks.len() || b.len() != blocks.len() || c.len() != m {
            return Err(Error::Dimension("one a and one b per generator and one c per block expected".into()));
        }
        for (i, &(s, t)) in blocks.iter().enumerate() {
            if s >= m || t >= m {
                return Err(Error::Dimension(format!("generator {i} has block ({s}, {t}) outside {m} blocks")));
            }
            if (a[i].rows(), a[i].cols()) != (dims[s], dims[t]) || (b[i].rows(), b[i].cols()) != (dims[t], dims[s]) {
                return Err(Error::Dimension(format!("generator {i}: image sizes do not match block ({s}, {t})")));
            }
        }
        for (x, cx) in c.iter().enumerate() {
            if cx.rows() != dims[x] || cx.cols() != dims[x] {
                return Err(Error::Dimension(format!("c_{x} must be {0}x{0}", dims[x])));
            }
        }
        Ok(PMRepresentation { dims, blocks, a, b, c })
    }

    /// The `m = 1` case: every generator in the single block.
    pub fn from_m(rep: &RPresentation<F>) -> Result<Self> {
        let p = rep.a.len();
        Self::new(vec![rep.n], vec![(0, 0); p], rep.a.clone(), rep.b.clone(), vec![rep.c.clone()])
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    fn offsets(&self) -> Vec<usize> {
        let mut off = Vec::with_capacity(self.dims.len());
        let mut acc = 0;
        for &d in &self.dims {
            off.push(acc);
            acc += d;
        }
        off
    }

    /// Places `x` at block `(r, c)` of an `N × N` zero matrix.
    pub fn embed(&self, r: usize, c: usize, x: &Matrix<F>) -> Matrix<F> {
        let off = self.offsets();
        let n = self.total_dim();
        let mut big = Matrix::zeros(n, n);
        for i in 0..x.rows() {
            for j in 0..x.cols() {
                big[(off[r] + i, off[c] + j)] = x[(i, j)].clone();
            }
        }
        big
    }

    /// Block `(r, c)` of an `N × N` matrix.
    pub fn extract(&self, r: usize, c: usize, big: &Matrix<F>) -> Matrix<F> {
        let off = self.offsets();
        Matrix::from_fn(self.dims[r], self.dims[c], |i, j| big[(off[r] + i, off[c] + j)].clone())
    }

    /// Image of a generator in `Mat_N`.
    pub fn image_gen(&self, g: Gen) -> Matrix<F> {
        match g {
            Gen::E(x) => self.embed(x, x, &Matrix::identity(self.dims[x])),
            Gen::A(i) => self.embed(self.blocks[i].0, self.blocks[i].1, &self.a[i]),
            Gen::B(i) => self.embed(self.blocks[i].1, self.blocks[i].0, &self.b[i]),
            Gen::C(x) => self.embed(x, x, &self.c[x]),
        }
    }

    /// Image of an element of `L` in `Mat_N`.
    pub fn image(&self, v: &LVec<F>) -> Matrix<F> {
        let n = self.total_dim();
        let mut out = Matrix::zeros(n, n);
        for (g, x) in v.support() {
            out = out.add(&self.image_gen(g).scale(x)).expect("same size");
        }
        out
    }

    /// The operator `X ↦ Σ a_I X b^I + c X` on `Mat_N`.
    pub fn to_r_presentation(&self) -> RPresentation<F> {
        let p = self.blocks.len();
        let a = (0..p).map(|i| self.image_gen(Gen::A(i))).collect();
        let b = (0..p).map(|i| self.image_gen(Gen::B(i))).collect();
        let n = self.total_dim();
        let mut c = Matrix::zeros(n, n);
        for x in 0..self.dims.len() {
            c = c.add(&self.image_gen(Gen::C(x))).expect("same size");
        }
        RPresentation { n, a, b, c }
    }

    /// Basis of `⊕ Mat_{n_α}`: block by block, row-major within a block.
    fn diag_basis(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for (x, &d) in self.dims.iter().enumerate() {
            for i in 0..d {
                for j in 0..d {
                    out.push((x, i, j));
                }
            }
        }
        out
    }

    /// `R` restricted to block-diagonal matrices.
    pub fn r_operator(&self) -> Result<LinearOperator<F>> {
        let rp = self.to_r_presentation();
        let basis = self.diag_basis();
        let d = basis.len();
        let off = self.offsets();
        let mut r = Matrix::zeros(d, d);
        for (col, &(x, i, j)) in basis.iter().enumerate() {
            let n = self.total_dim();
            let mut e = Matrix::zeros(n, n);
            e[(off[x] + i, off[x] + j)] = F::one();
            let y = rp.apply(&e)?;
            for (row, &(z, k, l)) in basis.iter().enumerate() {
                r[(row, col)] = y[(off[z] + k, off[z] + l)].clone();
            }
        }
        Ok(r)
    }
}

/// `⊕ Mat_{n_α}` with the basis order of [`PMRepresentation::r_operator`].
pub fn block_matrix_algebra<F: Field>(dims: &[usize]) -> StructureConstants<F> {
    let mut out = StructureConstants::zero(0);
    for &d in dims {
        out = direct_sum(&out, &matrix_algebra(d));
    }
    out.with_label(format!("⊕Mat{dims:?}"))
}

/// `x∘y = R(x)y + xR(y) − R(xy)` on `⊕ Mat_{n_α}`.
pub fn pm_second_product<F: Field>(rep: &PMRepresentation<F>) -> Result<StructureConstants<F>> {
    deform_by_r(&block_matrix_algebra(&rep.dims), &rep.r_operator()?)
}

/// Report labels for the five relation families.
#[derive(Clone, Debug)]
pub struct RelationLabels {
    pub aa: String,
    pub bb: String,
    pub ba: String,
    pub ca: String,
    pub bc: String,
}

impl RelationLabels {
    pub fn m() -> Self {
        RelationLabels {
            aa: "(walg) A products".into(),
            bb: "(walg) B products".into(),
            ba: "(walg1)".into(),
            ca: "(walg2) C·A".into(),
            bc: "(walg2) B·C".into(),
        }
    }

    pub fn pm() -> Self {
        RelationLabels {
            aa: "(rel1) A products".into(),
            bb: "(rel1) B products".into(),
            ba: "(rel2)".into(),
            ca: "(rel3)".into(),
            bc: "(rel4)".into(),
        }
    }
}

fn independence_residual<F: Field>(label: &str, sets: Vec<(usize, usize, Vec<Matrix<F>>, bool)>) -> Residual {
    let mut r = Residual::new(label);
    for (x, y, mats, unity) in sets {
        let ind = check_independence(&mats, unity);
        r.record(&[x, y], 0, &if ind.independent { F::zero() } else { F::one() });
    }
    r
}

/// Relations of `U(L)` on the images, non-degeneracy, and the associativity and
/// compatibility of the induced second product.
pub fn pm_validate_representation<F: Field>(
    pm: &PMPresentation<F>,
    rep: &PMRepresentation<F>,
    labels: &RelationLabels,
) -> Result<Report> {
    let (m, p) = (pm.m(), pm.p());
    if rep.dims.len() != m || rep.blocks != pm.blocks() {
        return Err(Error::Dimension("representation blocks do not match the presentation".into()));
    }
    let mut report = Report::default();
    let img = |g: Gen| rep.image_gen(g);
    let mut rel = |label: &str, pairs: &mut dyn Iterator<Item = (Gen, Gen, LVec<F>)>| -> Result<()> {
        let mut r = Residual::new(label);
        for (g, h, want) in pairs {
            let d = img(g).mul(&img(h))?.sub(&rep.image(&want))?;
            r.record_vec(&[pm.l_index(g), pm.l_index(h)], &d.vec());
        }
        report.push(r);
        Ok(())
    };
    let all = || (0..p).flat_map(move |i| (0..p).map(move |j| (i, j)));
    rel(&labels.aa, &mut all().map(|(i, j)| (Gen::A(i), Gen::A(j), pm.act_right(Gen::A(i), Gen::A(j)))))?;
    rel(&labels.bb, &mut all().map(|(i, j)| (Gen::B(i), Gen::B(j), pm.act_left(Gen::B(i), Gen::B(j)))))?;
    rel(&labels.ba, &mut all().map(|(i, j)| (Gen::B(i), Gen::A(j), pm.act_left(Gen::B(i), Gen::A(j)))))?;
    let blocks = pm.blocks().to_vec();
    rel(
        &labels.ca,
        &mut (0..p).map(|j| {
            let c = Gen::C(blocks[j].0);
            (c, Gen::A(j), pm.act_right(c, Gen::A(j)))
        }),
    )?;
    rel(
        &labels.bc,
        &mut (0..p).map(|i| {
            let c = Gen::C(blocks[i].0);
            (Gen::B(i), c, pm.act_left(Gen::B(i), c))
        }),
    )?;

    let mut a_sets = Vec::new();
    let mut b_sets = Vec::new();
    for x in 0..m {
        for y in 0..m {
            let ids: Vec<usize> = (0..p).filter(|&i| blocks[i] == (x, y)).collect();
            let a: Vec<Matrix<F>> = ids.iter().map(|&i| rep.a[i].clone()).collect();
            let b: Vec<Matrix<F>> = ids.iter().map(|&i| rep.b[i].clone()).collect();
            a_sets.push((x, y, a, x == y));
            b_sets.push((y, x, b, x == y));
        }
    }
    report.push(independence_residual("non-degenerate a", a_sets));
    report.push(independence_residual("non-degenerate b", b_sets));

    let star = block_matrix_algebra(&rep.dims);
    let circle = pm_second_product(rep)?;
    for r in check_compatibility(&Pencil::new(star, circle)?).items {
        report.push(r);
    }
    Ok(report)
}
