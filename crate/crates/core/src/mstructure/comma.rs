//! M-structures with `A_i A_j = δ_ij A_i`.
//!
//! Up to a shift of the `B^i`, `ℬ` is given by
//! `B^i B^j = (u_i − q_ij) B^i + q_ij B^j + v_i` (i ≠ j) and `(B^i)² = u_i B^i + v_i`.

use super::MPresentation;
use crate::algebra::StructureConstants;
use crate::error::{Error, Result};
use crate::matrix_ops::MTensors;
use crate::pmstructure::CRelations;
use crate::random::Rng;
use crate::residual::{Report, Residual};
use crate::scalar::Field;

/// The algebras `𝒜 = span{1, A_i}` and `ℬ = span{1, B^i}` (unit first) and
/// the presentation of `U(L)`.
#[derive(Clone, Debug)]
pub struct CommA<F> {
    pub a_algebra: StructureConstants<F>,
    pub b_algebra: StructureConstants<F>,
    pub presentation: MPresentation<F>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum CommAClass<F> {
    /// `q_ij = u_i + τ`, `v_i = τ² + u_i τ`; `τ` is `None` for `p ≤ 1`.
    Regular { tau: Option<F> },
    /// `u`, `v` constant and `q_ij + q_ji = u`.
    Commutative,
    /// All `u_i` equal. `q` takes the values `−τ` and `u + τ`; `classes` are the
    /// `≈`-classes and `q_values[a][b]` is `q_ij` for `i ∈ K_a`, `j ∈ K_b`, `i ≠ j`.
    M1Family { u: F, tau: F, classes: Vec<Vec<usize>>, q_values: Vec<Vec<Option<F>>> },
    /// Two values of `u`; `τ = (v_2 − v_1)/(u_2 − u_1)`.
    M2Family { tau: F, classes: Vec<Vec<usize>> },
    /// `p = 3`, pairwise distinct `u_i` and the column-constant pattern.
    Mat2,
    /// None of the above.
    Unrecognized,
}

impl<F> CommAClass<F> {
    pub fn tag(&self) -> &'static str {
        match self {
            CommAClass::Regular { .. } => "regular",
            CommAClass::Commutative => "commutative",
            CommAClass::M1Family { .. } => "m1-family",
            CommAClass::M2Family { .. } => "m2-family",
            CommAClass::Mat2 => "Mat2",
            CommAClass::Unrecognized => "unrecognized",
        }
    }
}

fn check_shape<F>(u: &[F], v: &[F], q: &[Vec<F>]) -> Result<usize> {
    let p = u.len();
    if v.len() != p || q.len() != p || q.iter().any(|r| r.len() != p) {
        return Err(Error::Dimension(format!("u has {p} entries; v and q must match")));
    }
    Ok(p)
}

fn distinct3(p: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (0..p).flat_map(move |i| {
        (0..p).flat_map(move |j| (0..p).filter(move |&k| i != j && j != k && i != k).map(move |k| (i, j, k)))
    })
}

fn pairs(p: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..p).flat_map(move |i| (0..p).filter(move |&j| j != i).map(move |j| (i, j)))
}

/// Residuals of (BB3), (BB4) and (BB5).
pub fn comma_conditions<F: Field>(u: &[F], v: &[F], q: &[Vec<F>]) -> Result<Report> {
    let p = check_shape(u, v, q)?;
    let mut bb3 = Residual::new("(BB3)");
    let mut bb4 = Residual::new("(BB4)");
    let mut bb5 = Residual::new("(BB5)");
    for (i, j) in pairs(p) {
        let x = q[i][j].clone();
        bb3.record(&[i, j], 0, &(x.clone() * x.clone() - u[i].clone() * x.clone() - v[i].clone()));
        let y = u[i].clone() - x;
        bb4.record(&[i, j], 0, &(y.clone() * y.clone() - u[j].clone() * y - v[j].clone()));
    }
    for (i, j, k) in distinct3(p) {
        let r = (q[i][k].clone() - q[j][k].clone()) * (q[i][k].clone() - q[i][j].clone());
        bb5.record(&[i, j, k], 0, &r);
    }
    let mut report = Report::default();
    report.push(bb3);
    report.push(bb4);
    report.push(bb5);
    Ok(report)
}

/// Residuals of the consequences (qijk), (uvij) and (qij) of (BB3)–(BB5).
pub fn comma_identities<F: Field>(u: &[F], v: &[F], q: &[Vec<F>]) -> Result<Report> {
    let p = check_shape(u, v, q)?;
    let mut qijk = Residual::new("(qijk)");
    let mut uvij = Residual::new("(uvij)");
    let mut qij = Residual::new("(qij)");
    for (i, j, k) in distinct3(p) {
        let r = (q[k][i].clone() - q[k][j].clone()) * (q[k][i].clone() + q[k][j].clone() - u[k].clone());
        qijk.record(&[i, j, k], 0, &r);
    }
    for (i, j) in pairs(p) {
        let du = u[i].clone() - u[j].clone();
        let r = (q[i][j].clone() - u[i].clone()) * du.clone() - (v[i].clone() - v[j].clone());
        uvij.record(&[i, j], 0, &r);
        let r = (q[i][j].clone() - q[j][i].clone() - u[i].clone() + u[j].clone()) * du;
        qij.record(&[i, j], 0, &r);
    }
    let mut report = Report::default();
    report.push(qijk);
    report.push(uvij);
    report.push(qij);
    Ok(report)
}

fn require_conditions<F: Field>(u: &[F], v: &[F], q: &[Vec<F>]) -> Result<usize> {
    let report = comma_conditions(u, v, q)?;
    if let Some(r) = report.first_failure() {
        return Err(Error::Precondition(format!("{r}")));
    }
    Ok(u.len())
}

/// Builds `𝒜`, `ℬ` and the presentation with
/// `B^i A_j = (u_j − q_ji) A_j` (i ≠ j), `B^i A_i = u_i A_i + Σ_{k≠i} q_ki A_k + B^i + C`,
/// `B^i C = Σ_k v_k A_k − u_i B^i − v_i`, `C A_j = −u_j A_j`.
pub fn comma_build<F: Field>(u: &[F], v: &[F], q: &[Vec<F>]) -> Result<CommA<F>> {
    let p = require_conditions(u, v, q)?;
    let mut t = MTensors::zero(p);
    let mut c = CRelations { u: vec![vec![F::zero(); p]; p], p: vec![F::zero(); p], q: vec![F::zero(); p] };
    for i in 0..p {
        t.phi[i][i][i] = F::one();
        t.psi[i][i][i] = u[i].clone();
        c.u[i][i] = -u[i].clone();
        c.p[i] = -v[i].clone();
        for j in 0..p {
            t.lambda[i][j] = v[i].clone();
            if j != i {
                t.psi[i][j][i] = u[i].clone() - q[i][j].clone();
                t.psi[i][j][j] = q[i][j].clone();
            }
        }
    }
    let presentation = MPresentation::with_c_relations(t.clone(), Some(c))?;
    let report = super::check_consistency(&presentation);
    if let Some(r) = report.first_failure() {
        return Err(Error::Precondition(format!("presentation is inconsistent: {r}")));
    }
    let a_algebra = StructureConstants::from_fn(p, |i, j| {
        let mut x = vec![F::zero(); p];
        if i == j {
            x[i] = F::one();
        }
        x
    })?
    .adjoin_unity();
    let b_algebra = StructureConstants::from_fn(p + 1, |i, j| {
        let mut x = vec![F::zero(); p + 1];
        match (i, j) {
            (0, j) => x[j] = F::one(),
            (i, 0) => x[i] = F::one(),
            (i, j) => {
                x[0] = t.lambda[i - 1][j - 1].clone();
                for k in 0..p {
                    x[k + 1] = t.psi[i - 1][j - 1][k].clone();
                }
            }
        }
        x
    })?;
    Ok(CommA { a_algebra, b_algebra, presentation })
}

/// Classes of `0..p` under an equivalence given as a predicate on pairs,
/// in order of first element.
fn classes(p: usize, same: impl Fn(usize, usize) -> bool) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    for i in 0..p {
        match out.iter_mut().find(|c| same(c[0], i)) {
            Some(c) => c.push(i),
            None => out.push(vec![i]),
        }
    }
    out
}

fn is_regular<F: Field>(u: &[F], v: &[F], q: &[Vec<F>]) -> Option<F> {
    let tau = q[0][1].clone() - u[0].clone();
    let ok_q = pairs(u.len()).all(|(i, j)| q[i][j] == u[i].clone() + tau.clone());
    let ok_v = (0..u.len()).all(|i| v[i] == tau.clone() * tau.clone() + u[i].clone() * tau.clone());
    (ok_q && ok_v).then_some(tau)
}

fn is_mat2_pattern<F: Field>(u: &[F], v: &[F], q: &[Vec<F>]) -> bool {
    if u.len() != 3 {
        return false;
    }
    let column_constant = (0..3).all(|j| {
        let rows: Vec<usize> = (0..3).filter(|&i| i != j).collect();
        q[rows[0]][j] == q[rows[1]][j]
    });
    column_constant
        && (0..3).all(|i| {
            let o: Vec<usize> = (0..3).filter(|&j| j != i).collect();
            u[i] == q[i][o[0]].clone() + q[i][o[1]].clone() && v[i] == -(q[i][o[0]].clone() * q[i][o[1]].clone())
        })
}

/// Case analysis by the number of distinct `u_i`.
pub fn classify_comma<F: Field>(u: &[F], v: &[F], q: &[Vec<F>]) -> Result<CommAClass<F>> {
    let p = require_conditions(u, v, q)?;
    if p <= 1 {
        return Ok(CommAClass::Regular { tau: None });
    }
    if let Some(tau) = is_regular(u, v, q) {
        return Ok(CommAClass::Regular { tau: Some(tau) });
    }
    let sim = classes(p, |i, j| u[i] == u[j]);
    match sim.len() {
        1 => {
            let commutative = pairs(p).all(|(i, j)| q[i][j].clone() + q[j][i].clone() == u[i]);
            if commutative {
                return Ok(CommAClass::Commutative);
            }
            let approx = classes(p, |i, j| i == j || q[i][j] == q[j][i]);
            let q_values = approx
                .iter()
                .map(|ka| {
                    approx
                        .iter()
                        .map(|kb| {
                            ka.iter()
                                .flat_map(|&i| kb.iter().map(move |&j| (i, j)))
                                .find(|&(i, j)| i != j)
                                .map(|(i, j)| q[i][j].clone())
                        })
                        .collect()
                })
                .collect();
            Ok(CommAClass::M1Family { u: u[0].clone(), tau: -q[0][1].clone(), classes: approx, q_values })
        }
        2 => {
            let (a, b) = (sim[0][0], sim[1][0]);
            let tau = (v[b].clone() - v[a].clone()) * (u[b].clone() - u[a].clone()).inv()?;
            Ok(CommAClass::M2Family { tau, classes: sim })
        }
        _ if p == 3 && is_mat2_pattern(u, v, q) => Ok(CommAClass::Mat2),
        _ => Ok(CommAClass::Unrecognized),
    }
}

/// A random solution of (BB3)–(BB5) with at least `min_classes` distinct `u_i`.
///
/// Each `i` gets two distinct small integer roots `α_i`, `β_i` with
/// `u_i = α_i + β_i`, `v_i = −α_i β_i`. Then `q_ij` is chosen among the roots of `i`
/// so that `u_i − q_ij` is a root of `j`. Returns `None` after `attempts` rejections.
#[allow(clippy::type_complexity)]
pub fn random_comma_solution<F: Field>(
    rng: &mut Rng,
    p: usize,
    min_classes: usize,
    attempts: usize,
) -> Option<(Vec<F>, Vec<F>, Vec<Vec<F>>)> {
    'outer: for _ in 0..attempts {
        let roots: Vec<(i64, i64)> = (0..p)
            .map(|_| loop {
                let (a, b) = (rng.int(3), rng.int(3));
                if a != b {
                    break (a, b);
                }
            })
            .collect();
        let us: Vec<i64> = roots.iter().map(|&(a, b)| a + b).collect();
        let mut distinct = us.clone();
        distinct.sort_unstable();
        distinct.dedup();
        if distinct.len() < min_classes {
            continue;
        }
        let mut q = vec![vec![0i64; p]; p];
        for (i, j) in pairs(p) {
            let (a, b) = roots[i];
            let cands: Vec<i64> =
                [a, b].into_iter().filter(|&c| us[i] - c == roots[j].0 || us[i] - c == roots[j].1).collect();
            if cands.is_empty() {
                continue 'outer;
            }
            q[i][j] = cands[rng.below(cands.len())];
        }
        let u: Vec<F> = us.iter().map(|&x| F::from_i64(x)).collect();
        let v: Vec<F> = roots.iter().map(|&(a, b)| F::from_i64(-a * b)).collect();
        let q: Vec<Vec<F>> = q.iter().map(|r| r.iter().map(|&x| F::from_i64(x)).collect()).collect();
        if comma_conditions(&u, &v, &q).map(|r| r.passed()).unwrap_or(false) {
            return Some((u, v, q));
        }
    }
    None
}
