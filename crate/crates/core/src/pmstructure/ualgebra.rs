//! Normal forms in `U(L)`.
//!
//! `C_α` is eliminated through `C_α = K e_α − Σ_{s(L)=α} A_L B^L`, so every
//! element is a combination of `e_α`, `A_I`, `B^I` and `A_I B^J` with
//! coefficients that are polynomials in the central element `K`.

use std::collections::BTreeMap;
use std::fmt;

use super::{pm_check_consistency, Gen, LVec, PMPresentation};
use crate::error::{Error, Result};
use crate::random::Rng;
use crate::residual::Residual;
use crate::scalar::Field;

/// Normal-form monomial. `AB(i, j)` is `A_i B^j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mono {
    E(usize),
    A(usize),
    B(usize),
    AB(usize, usize),
}

/// `Σ mono · f(K)`; each coefficient list is `[f_0, f_1, …]` for `f_0 + f_1 K + …`.
#[derive(Clone, Debug, PartialEq)]
pub struct UElement<F> {
    terms: BTreeMap<Mono, Vec<F>>,
}

impl<F: Field> Default for UElement<F> {
    fn default() -> Self {
        UElement { terms: BTreeMap::new() }
    }
}

fn trim<F: Field>(v: &mut Vec<F>) {
    while v.last().is_some_and(F::is_zero) {
        v.pop();
    }
}

fn poly_mul<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    let mut out = vec![F::zero(); (a.len() + b.len()).saturating_sub(1)];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x.clone() * y.clone();
        }
    }
    out
}

impl<F: Field> UElement<F> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn mono(m: Mono) -> Self {
        Self::term(m, 0, F::one())
    }

    /// `coeff · m · K^power`.
    pub fn term(m: Mono, power: usize, coeff: F) -> Self {
        let mut x = Self::zero();
        x.add_term(m, power, coeff);
        x
    }

    pub fn add_term(&mut self, m: Mono, power: usize, coeff: F) {
        if coeff.is_zero() {
            return;
        }
        let poly = self.terms.entry(m).or_default();
        if poly.len() <= power {
            poly.resize(power + 1, F::zero());
        }
        poly[power] += coeff;
        trim(poly);
        if poly.is_empty() {
            self.terms.remove(&m);
        }
    }

    /// `self += f(K) · other`.
    pub fn add_scaled(&mut self, f: &[F], other: &Self) {
        for (m, poly) in &other.terms {
            for (s, c) in poly_mul(f, poly).into_iter().enumerate() {
                self.add_term(*m, s, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(&[F::one()], other);
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(&[-F::one()], other);
        out
    }

    pub fn scale(&self, s: &F) -> Self {
        let mut out = Self::zero();
        out.add_scaled(std::slice::from_ref(s), self);
        out
    }

    /// Multiplication by `K^s`.
    pub fn times_k(&self, s: usize) -> Self {
        let mut f = vec![F::zero(); s];
        f.push(F::one());
        let mut out = Self::zero();
        out.add_scaled(&f, self);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &[F])> {
        self.terms.iter().map(|(m, p)| (m, p.as_slice()))
    }

    /// Coefficient of `m · K^s`.
    pub fn coefficient(&self, m: Mono, s: usize) -> F {
        self.terms.get(&m).and_then(|p| p.get(s)).cloned().unwrap_or_else(F::zero)
    }

    /// Highest power of `K` present.
    pub fn k_degree(&self) -> Option<usize> {
        self.terms.values().map(|p| p.len() - 1).max()
    }
}

impl<F: Field> fmt::Display for UElement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, poly) in &self.terms {
            for (s, c) in poly.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                if !first {
                    f.write_str(" + ")?;
                }
                first = false;
                let name = match m {
                    Mono::E(a) => format!("e{a}"),
                    Mono::A(i) => format!("A{i}"),
                    Mono::B(i) => format!("B{i}"),
                    Mono::AB(i, j) => format!("A{i}B{j}"),
                };
                write!(f, "({c})·{name}")?;
                if s > 0 {
                    write!(f, "·K^{s}")?;
                }
            }
        }
        Ok(())
    }
}

/// Multiplication in `U(L)` for one presentation.
#[derive(Clone, Copy, Debug)]
pub struct UAlgebra<'a, F> {
    pm: &'a PMPresentation<F>,
}

impl<'a, F: Field> UAlgebra<'a, F> {
    /// Checks the weak-structure axioms and centrality of `K` first.
    pub fn new(pm: &'a PMPresentation<F>) -> Result<Self> {
        let report = pm_check_consistency(pm);
        if let Some(r) = report.first_failure() {
            return Err(Error::Precondition(format!("inconsistent presentation: {r}")));
        }
        let k = pm_check_k_central(pm);
        if !k.is_zero() {
            return Err(Error::Precondition(format!("K is not central: {k}")));
        }
        Ok(UAlgebra { pm })
    }

    /// No checks; products are only meaningful for consistent presentations.
    pub fn unchecked(pm: &'a PMPresentation<F>) -> Self {
        UAlgebra { pm }
    }

    pub fn presentation(&self) -> &PMPresentation<F> {
        self.pm
    }

    /// `1 = Σ e_α`.
    pub fn unit(&self) -> UElement<F> {
        let mut x = UElement::zero();
        for a in 0..self.pm.m() {
            x.add_term(Mono::E(a), 0, F::one());
        }
        x
    }

    /// `K = Σ K e_α`.
    pub fn k(&self) -> UElement<F> {
        self.unit().times_k(1)
    }

    /// `C_α` in normal form.
    pub fn c(&self, alpha: usize) -> UElement<F> {
        let mut x = UElement::term(Mono::E(alpha), 1, F::one());
        for (l, &(s, _)) in self.pm.blocks().iter().enumerate() {
            if s == alpha {
                x.add_term(Mono::AB(l, l), 0, -F::one());
            }
        }
        x
    }

    /// Normal form of an element of `L`.
    pub fn from_l(&self, v: &LVec<F>) -> UElement<F> {
        let mut out = UElement::zero();
        for (g, x) in v.support() {
            match g {
                Gen::E(a) => out.add_term(Mono::E(a), 0, x.clone()),
                Gen::A(i) => out.add_term(Mono::A(i), 0, x.clone()),
                Gen::B(i) => out.add_term(Mono::B(i), 0, x.clone()),
                Gen::C(a) => out.add_scaled(std::slice::from_ref(x), &self.c(a)),
            }
        }
        out
    }

    /// Block `(left, right)` of a monomial; `None` for `A_i B^j` with mismatched middle.
    pub fn block_of(&self, m: Mono) -> Option<(usize, usize)> {
        let b = self.pm.blocks();
        match m {
            Mono::E(a) => Some((a, a)),
            Mono::A(i) => Some(b[i]),
            Mono::B(i) => Some((b[i].1, b[i].0)),
            Mono::AB(i, j) => (b[i].1 == b[j].1).then_some((b[i].0, b[j].0)),
        }
    }

    fn is_valid(&self, m: Mono) -> bool {
        let (mm, p) = (self.pm.m(), self.pm.p());
        let ok = match m {
            Mono::E(a) => a < mm,
            Mono::A(i) | Mono::B(i) => i < p,
            Mono::AB(i, j) => i < p && j < p,
        };
        ok && self.block_of(m).is_some()
    }

    /// All normal-form monomials.
    pub fn monomials(&self) -> Vec<Mono> {
        let (m, p) = (self.pm.m(), self.pm.p());
        let mut out: Vec<Mono> = (0..m).map(Mono::E).collect();
        out.extend((0..p).map(Mono::A));
        out.extend((0..p).map(Mono::B));
        for i in 0..p {
            for j in 0..p {
                if self.is_valid(Mono::AB(i, j)) {
                    out.push(Mono::AB(i, j));
                }
            }
        }
        out
    }

    fn ba(&self, i: usize, j: usize) -> UElement<F> {
        self.from_l(&self.pm.ba(i, j))
    }

    /// Product of two monomials.
    pub fn mono_mul(&self, x: Mono, y: Mono) -> UElement<F> {
        let (Some(bx), Some(by)) = (self.block_of(x), self.block_of(y)) else {
            return UElement::zero();
        };
        if bx.1 != by.0 {
            return UElement::zero();
        }
        let one = UElement::mono;
        match (x, y) {
            (Mono::E(_), _) => one(y),
            (_, Mono::E(_)) => one(x),
            (Mono::A(i), Mono::A(j)) => self.from_l(&self.pm.act_right(Gen::A(i), Gen::A(j))),
            (Mono::A(i), Mono::B(j)) => one(Mono::AB(i, j)),
            (Mono::A(_), Mono::AB(j, l)) => self.mul(&self.mono_mul(x, Mono::A(j)), &one(Mono::B(l))),
            (Mono::B(i), Mono::A(j)) => self.ba(i, j),
            (Mono::B(i), Mono::B(j)) => self.from_l(&self.pm.act_left(Gen::B(i), Gen::B(j))),
            (Mono::B(i), Mono::AB(j, l)) => self.mul(&self.ba(i, j), &one(Mono::B(l))),
            (Mono::AB(i, j), Mono::A(l)) => self.mul(&one(Mono::A(i)), &self.ba(j, l)),
            (Mono::AB(i, j), Mono::B(l)) => {
                let bb = self.mono_mul(Mono::B(j), Mono::B(l));
                self.mul(&one(Mono::A(i)), &bb)
            }
            (Mono::AB(..), Mono::AB(k, l)) => self.mul(&self.mono_mul(x, Mono::A(k)), &one(Mono::B(l))),
        }
    }

    pub fn mul(&self, x: &UElement<F>, y: &UElement<F>) -> UElement<F> {
        let mut out = UElement::zero();
        for (mx, px) in x.terms() {
            for (my, py) in y.terms() {
                let prod = self.mono_mul(*mx, *my);
                if !prod.is_zero() {
                    out.add_scaled(&poly_mul(px, py), &prod);
                }
            }
        }
        out
    }

    fn check(&self, x: &UElement<F>) -> Result<()> {
        match x.terms().find(|(m, _)| !self.is_valid(**m)) {
            Some((m, _)) => Err(Error::Dimension(format!("{m:?} is not a normal-form monomial here"))),
            None => Ok(()),
        }
    }
}

/// Product in `U(L)` after checking consistency and centrality of `K`.
pub fn pm_u_multiply<F: Field>(x: &UElement<F>, y: &UElement<F>, pm: &PMPresentation<F>) -> Result<UElement<F>> {
    let u = UAlgebra::new(pm)?;
    u.check(x)?;
    u.check(y)?;
    Ok(u.mul(x, y))
}

fn mono_index(m: usize, p: usize, x: Mono) -> usize {
    match x {
        Mono::E(a) => a,
        Mono::A(i) => m + i,
        Mono::B(i) => m + p + i,
        Mono::AB(i, j) => m + 2 * p + i * p + j,
    }
}

/// `K g − g K` for every generator `g`, with `K = Σ C_α + Σ A_L B^L` multiplied out
/// through the stated `C` relations and `g K` taken formally.
///
/// `K A_j` is expanded on the left and `B^j K` on the right, the only sides on
/// which `C` relations are given.
pub fn pm_check_k_central<F: Field>(pm: &PMPresentation<F>) -> Residual {
    let u = UAlgebra::unchecked(pm);
    let (m, p) = (pm.m(), pm.p());
    let mut res = Residual::new("K central");
    let mut record = |g: Gen, diff: &UElement<F>| {
        if diff.is_zero() {
            res.record(&[pm.l_index(g)], 0, &F::zero());
        }
        for (mono, poly) in diff.terms() {
            for (s, c) in poly.iter().enumerate() {
                res.record(&[pm.l_index(g), s], mono_index(m, p, *mono), c);
            }
        }
    };
    for j in 0..p {
        let alpha = pm.blocks()[j].0;
        let mut lhs = u.from_l(&pm.act_right(Gen::C(alpha), Gen::A(j)));
        for l in 0..p {
            lhs = lhs.add(&u.mul(&UElement::mono(Mono::A(l)), &u.ba(l, j)));
        }
        let rhs = UElement::term(Mono::A(j), 1, F::one());
        record(Gen::A(j), &lhs.sub(&rhs));
    }
    for j in 0..p {
        let beta = pm.blocks()[j].0;
        let mut lhs = u.from_l(&pm.act_left(Gen::B(j), Gen::C(beta)));
        for l in 0..p {
            lhs = lhs.add(&u.mul(&u.ba(j, l), &UElement::mono(Mono::B(l))));
        }
        let rhs = UElement::term(Mono::B(j), 1, F::one());
        record(Gen::B(j), &lhs.sub(&rhs));
    }
    res
}

/// Random combination of `terms` normal-form monomials with `K`-degree at most
/// `max_degree` and small rational coefficients.
pub fn random_element<F: Field>(pm: &PMPresentation<F>, rng: &mut Rng, terms: usize, max_degree: usize) -> UElement<F> {
    let monos = UAlgebra::unchecked(pm).monomials();
    let mut x = UElement::zero();
    for _ in 0..terms {
        let m = monos[rng.below(monos.len())];
        let s = rng.below(max_degree + 1);
        x.add_term(m, s, rng.nonzero_rational(4));
    }
    x
}
