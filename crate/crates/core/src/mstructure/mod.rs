//! M-structures: the single-block case of the PM engine, the cyclic structure, and
//! M-structures whose algebra 𝒜 is commutative and semisimple.
//!
//! The relations of `U(L)` are
//!
//! ```text
//! A_i A_j = φ^k_ij A_k + μ_ij        B^i B^j = ψ^ij_k B^k + λ^ij
//! B^i A_j = ψ^ki_j A_k + φ^i_jk B^k + t^i_j + δ^i_j C
//! B^i C   = λ^ki A_k + u^i_k B^k + p^i
//! C A_j   = μ_jk B^k + u^k_j A_k + q_j
//! ```
//!
//! and `K = A_i B^i + C` is central exactly for M-structures.

mod comma;
mod cyclic;

pub use comma::{
    classify_comma, comma_build, comma_conditions, comma_identities, random_comma_solution, CommA, CommAClass,
};
pub use cyclic::{cyclic_raw, cyclic_representation, example_cyclic};

use crate::error::{Error, Result};
use crate::matrix_ops::{verify_theorem21, MTensors, RPresentation};
use crate::pmstructure::{
    derived_c_relations, pm_check_consistency, pm_check_k_central, pm_u_multiply, pm_validate_representation,
    CRelations, PMPresentation, PMRepresentation, RelationLabels, UElement,
};
use crate::residual::{Report, Residual};
use crate::scalar::Field;

/// Presentation of a weak M-structure by its tensors and the `C` relations.
#[derive(Clone, Debug, PartialEq)]
pub struct MPresentation<F>(PMPresentation<F>);

impl<F: Field> MPresentation<F> {
    /// `C` relations derived from the tensors.
    pub fn from_tensors(t: MTensors<F>) -> Result<Self> {
        Self::with_c_relations(t, None)
    }

    /// `C` relations given explicitly, or derived when `None`.
    pub fn with_c_relations(t: MTensors<F>, c: Option<CRelations<F>>) -> Result<Self> {
        let p = t.p;
        Ok(MPresentation(PMPresentation::new(1, vec![(0, 0); p], t, c)?))
    }

    pub fn from_pm(pm: PMPresentation<F>) -> Result<Self> {
        if pm.m() != 1 {
            return Err(Error::InvalidParameters(format!("an M-structure has one block, not {}", pm.m())));
        }
        Ok(MPresentation(pm))
    }

    pub fn p(&self) -> usize {
        self.0.p()
    }

    pub fn tensors(&self) -> &MTensors<F> {
        self.0.tensors()
    }

    pub fn c_relations(&self) -> &CRelations<F> {
        self.0.c_relations()
    }

    pub fn as_pm(&self) -> &PMPresentation<F> {
        &self.0
    }

    pub fn into_pm(self) -> PMPresentation<F> {
        self.0
    }

    /// `C → C + κ`.
    pub fn shift_c(&self, kappa: &F) -> Result<Self> {
        Ok(MPresentation(self.0.shift_c(std::slice::from_ref(kappa))?))
    }
}

/// The quadratic tensor identities, the stored `C` relations against the ones
/// derived from the tensors, and the weak axioms.
pub fn check_consistency<F: Field>(m: &MPresentation<F>) -> Report {
    let mut report = verify_theorem21(m.tensors());
    let derived = derived_c_relations(m.tensors());
    let stored = m.c_relations();
    let p = m.p();
    let mut rp = Residual::new("derived p");
    let mut rq = Residual::new("derived q");
    let mut ru = Residual::new("derived u");
    for i in 0..p {
        rp.record(&[i], 0, &(stored.p[i].clone() - derived.p[i].clone()));
        rq.record(&[i], 0, &(stored.q[i].clone() - derived.q[i].clone()));
        for j in 0..p {
            ru.record(&[i, j], 0, &(stored.u[i][j].clone() - derived.u[i][j].clone()));
        }
    }
    for r in [rp, rq, ru].into_iter().chain(pm_check_consistency(m.as_pm()).items) {
        report.push(r);
    }
    report
}

pub fn u_multiply<F: Field>(x: &UElement<F>, y: &UElement<F>, m: &MPresentation<F>) -> Result<UElement<F>> {
    pm_u_multiply(x, y, m.as_pm())
}

/// Residuals of `K A_i − A_i K` and `K B^j − B^j K` in normal form.
pub fn check_k_central<F: Field>(m: &MPresentation<F>) -> Residual {
    pm_check_k_central(m.as_pm())
}

/// Relations (walg)–(walg2) on the matrices, non-degeneracy, and the
/// associativity and compatibility of the induced second product on `Mat_n`.
pub fn validate_representation<F: Field>(m: &MPresentation<F>, rep: &RPresentation<F>) -> Result<Report> {
    pm_validate_representation(m.as_pm(), &PMRepresentation::from_m(rep)?, &RelationLabels::m())
}
