//! Admissible matrices of multiplicities and the simply-laced affine Dynkin
//! diagrams they correspond to.
//!
//! A nonnegative integral `r × s` matrix `A` is admissible when it is
//! indecomposable and
//!
//! ```text
//! 2 m_i = Σ_j a_ij n_j        2 n_j = Σ_i a_ij m_i
//! ```
//!
//! has a solution in positive integers. Such a matrix is the bipartite
//! adjacency matrix of an affine diagram whose imaginary root is `(m, n)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Cyclotomic;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiplicityMatrix {
    r: usize,
    s: usize,
    entries: Vec<u32>,
}

impl MultiplicityMatrix {
    pub fn new(rows: Vec<Vec<u32>>) -> Result<Self> {
        let r = rows.len();
        let s = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != s) {
            return Err(Error::Dimension("rows of a multiplicity matrix must have equal length".into()));
        }
        Ok(MultiplicityMatrix { r, s, entries: rows.concat() })
    }

    pub fn from_fn(r: usize, s: usize, mut f: impl FnMut(usize, usize) -> u32) -> Self {
        let entries = (0..r).flat_map(|i| (0..s).map(move |j| (i, j))).map(|(i, j)| f(i, j)).collect();
        MultiplicityMatrix { r, s, entries }
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.s + j]
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        (0..self.r).map(|i| self.entries[i * self.s..(i + 1) * self.s].to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.s, self.r, |i, j| self.get(j, i))
    }

    /// `B[i][j] = A[rows[i]][cols[j]]`.
    pub fn permute(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(self.r, self.s, |i, j| self.get(rows[i], cols[j]))
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Self) -> Self {
        Self::from_fn(self.r + other.r, self.s + other.s, |i, j| match (i < self.r, j < self.s) {
            (true, true) => self.get(i, j),
            (false, false) => other.get(i - self.r, j - self.s),
            _ => 0,
        })
    }
}

/// Rows and columns of one connected component; the rest forms the other part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

/// `Some` witness when the bipartite graph with an edge `(i, j)` for
/// `a_ij > 0` is disconnected.
pub fn is_decomposable(a: &MultiplicityMatrix) -> Option<Partition> {
    let comps = components(a);
    if comps.len() <= 1 {
        return None;
    }
    let (rows, cols) = comps.into_iter().next().expect("nonempty");
    Some(Partition { rows, cols })
}

/// Connected components as (rows, cols), ordered by first node.
fn components(a: &MultiplicityMatrix) -> Vec<(Vec<usize>, Vec<usize>)> {
    let (r, s) = (a.r, a.s);
    let mut seen = vec![false; r + s];
    let mut out = Vec::new();
    for start in 0..r + s {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut stack = vec![start];
        let (mut rows, mut cols) = (Vec::new(), Vec::new());
        while let Some(v) = stack.pop() {
            let next: Vec<usize> = if v < r {
                rows.push(v);
                (0..s).filter(|&j| a.get(v, j) > 0).map(|j| r + j).collect()
            } else {
                cols.push(v - r);
                (0..r).filter(|&i| a.get(i, v - r) > 0).collect()
            };
            for w in next {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        rows.sort_unstable();
        cols.sort_unstable();
        out.push((rows, cols));
    }
    out
}

/// `[[2I, −A], [−Aᵀ, 2I]]`.
pub fn gram_matrix(a: &MultiplicityMatrix) -> Vec<Vec<i64>> {
    let (r, n) = (a.r, a.r + a.s);
    (0..n)
        .map(|x| {
            (0..n)
                .map(|y| match (x < r, y < r) {
                    _ if x == y => 2,
                    (true, true) | (false, false) => 0,
                    (true, false) => -i64::from(a.get(x, y - r)),
                    (false, true) => -i64::from(a.get(y, x - r)),
                })
                .collect()
        })
        .collect()
}

fn rational_matrix(g: &[Vec<i64>]) -> Matrix<Cyclotomic> {
    let n = g.len();
    Matrix::from_fn(n, n, |i, j| Cyclotomic::rational(BigRational::from_integer(g[i][j].into())))
}

/// Primitive integer vector on the ray of `v`, sign chosen so that the first
/// nonzero entry is positive.
fn primitive(v: &[BigRational]) -> Vec<BigInt> {
    let den = v.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * BigRational::from_integer(den.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    let sign = match ints.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => -BigInt::one(),
        _ => BigInt::one(),
    };
    ints.into_iter().map(|x| sign.clone() * x / g.clone()).collect()
}

/// The primitive positive solution of (adm) on one connected component, if the
/// kernel there is a line spanned by a positive vector.
fn component_solution(a: &MultiplicityMatrix, rows: &[usize], cols: &[usize]) -> Option<Vec<u64>> {
    let sub = MultiplicityMatrix::from_fn(rows.len(), cols.len(), |i, j| a.get(rows[i], cols[j]));
    let kernel = rational_matrix(&gram_matrix(&sub)).nullspace();
    if kernel.len() != 1 {
        return None;
    }
    let v: Vec<BigRational> = kernel[0].iter().map(|x| x.as_rational().expect("rational input")).collect();
    let p = primitive(&v);
    if p.iter().any(|x| !x.is_positive()) {
        return None;
    }
    p.iter().map(ToPrimitive::to_u64).collect()
}

/// Positive integer solution `(m, n)` of (adm) with gcd 1.
///
/// On an indecomposable matrix this is the primitive positive kernel vector of
/// the Gram matrix. On a decomposable one each component must carry such a
/// vector and their concatenation is returned.
pub fn solve_adm(a: &MultiplicityMatrix) -> Option<(Vec<u64>, Vec<u64>)> {
    if a.r + a.s == 0 {
        return None;
    }
    let (mut m, mut n) = (vec![0; a.r], vec![0; a.s]);
    for (rows, cols) in components(a) {
        let v = component_solution(a, &rows, &cols)?;
        for (k, &i) in rows.iter().enumerate() {
            m[i] = v[k];
        }
        for (k, &j) in cols.iter().enumerate() {
            n[j] = v[rows.len() + k];
        }
    }
    Some((m, n))
}

pub fn is_admissible(a: &MultiplicityMatrix) -> bool {
    is_decomposable(a).is_none() && solve_adm(a).is_some()
}

/// Leading principal minors of a symmetric integer matrix, exactly.
pub fn leading_minors(g: &[Vec<i64>]) -> Vec<BigInt> {
    (1..=g.len())
        .map(|k| {
            let sub: Vec<Vec<i64>> = g[..k].iter().map(|row| row[..k].to_vec()).collect();
            let d = rational_matrix(&sub).det().expect("square");
            d.as_rational().expect("rational input").to_integer()
        })
        .collect()
}

/// Exact positive semidefiniteness by symmetric elimination with diagonal
/// pivoting: a positive pivot is eliminated, and once no positive diagonal
/// entry remains the rest must vanish.
pub fn is_psd(g: &[Vec<i64>]) -> bool {
    let n = g.len();
    let mut m: Vec<Vec<BigRational>> =
        g.iter().map(|row| row.iter().map(|&x| BigRational::from_integer(x.into())).collect()).collect();
    let mut alive: Vec<usize> = (0..n).collect();
    while let Some(pos) = alive.iter().position(|&k| m[k][k].is_positive()) {
        let k = alive.swap_remove(pos);
        let pivot = m[k][k].clone();
        for &i in &alive {
            let f = m[i][k].clone() / pivot.clone();
            if f.is_zero() {
                continue;
            }
            for &j in &alive {
                let d = f.clone() * m[k][j].clone();
                m[i][j] -= d;
            }
        }
    }
    alive.iter().all(|&i| alive.iter().all(|&j| m[i][j].is_zero()))
}

/// Rank of the Gram matrix over `Q`.
pub fn gram_rank(a: &MultiplicityMatrix) -> usize {
    rational_matrix(&gram_matrix(a)).rank()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// `Ã₁`
    A1,
    /// `Ã_{2k−1}`, `k ≥ 2`
    A2k1,
    /// `D̃₄`
    D4,
    /// `D̃_{2k}`, `k ≥ 3`
    D2k,
    /// `D̃_{2k−1}`, `k ≥ 3`
    D2k1,
    /// `Ẽ₆`
    E6,
    /// `Ẽ₇`
    E7,
    /// `Ẽ₈`
    E8,
}

impl Family {
    pub const ALL: [Family; 8] =
        [Family::A1, Family::A2k1, Family::D4, Family::D2k, Family::D2k1, Family::E6, Family::E7, Family::E8];

    pub fn tag(self) -> &'static str {
        match self {
            Family::A1 => "A1",
            Family::A2k1 => "A2k-1",
            Family::D4 => "D4",
            Family::D2k => "D2k",
            Family::D2k1 => "D2k-1",
            Family::E6 => "E6",
            Family::E7 => "E7",
            Family::E8 => "E8",
        }
    }

    /// Whether the family carries a parameter `k`.
    pub fn has_k(self) -> bool {
        matches!(self, Family::A2k1 | Family::D2k | Family::D2k1)
    }

    pub fn min_k(self) -> Option<usize> {
        match self {
            Family::A2k1 => Some(2),
            Family::D2k | Family::D2k1 => Some(3),
            _ => None,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::A1 => "Ã₁",
            Family::A2k1 => "Ã_{2k−1}",
            Family::D4 => "D̃₄",
            Family::D2k => "D̃_{2k}",
            Family::D2k1 => "D̃_{2k−1}",
            Family::E6 => "Ẽ₆",
            Family::E7 => "Ẽ₇",
            Family::E8 => "Ẽ₈",
        })
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key: String = s.chars().filter(|c| c.is_ascii_alphanumeric()).collect::<String>().to_ascii_uppercase();
        Ok(match key.as_str() {
            "A1" => Family::A1,
            "A2K1" => Family::A2k1,
            "D4" => Family::D4,
            "D2K" => Family::D2k,
            "D2K1" => Family::D2k1,
            "E6" => Family::E6,
            "E7" => Family::E7,
            "E8" => Family::E8,
            _ => {
                return Err(Error::InvalidParameters(format!(
                    "unknown family {s:?}; expected one of A1, A2k-1, D4, D2k, D2k-1, E6, E7, E8"
                )))
            }
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DiagramID {
    pub family: Family,
    pub k: Option<usize>,
    /// The matrix matches the transpose of the catalog entry.
    pub transposed: bool,
}

impl DiagramID {
    /// Name with the index filled in, e.g. `D̃₆` reads `D̃_6`.
    pub fn name(&self) -> String {
        match (self.family, self.k) {
            (Family::A2k1, Some(k)) => format!("Ã_{}", 2 * k - 1),
            (Family::D2k, Some(k)) => format!("D̃_{}", 2 * k),
            (Family::D2k1, Some(k)) => format!("D̃_{}", 2 * k - 1),
            (f, _) => f.to_string(),
        }
    }
}

impl fmt::Display for DiagramID {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())?;
        if self.transposed {
            f.write_str(" (transposed)")?;
        }
        Ok(())
    }
}

/// A catalog matrix with its dimension vectors at scale 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub id: DiagramID,
    pub matrix: MultiplicityMatrix,
    pub m: Vec<u64>,
    pub n: Vec<u64>,
}

fn rows_of(r: usize, s: usize, ones: &[(usize, usize)]) -> MultiplicityMatrix {
    // 1-based positions
    MultiplicityMatrix::from_fn(r, s, |i, j| u32::from(ones.contains(&(i + 1, j + 1))))
}

/// The matrix of the family with its vectors `(m_i)`, `(n_j)`.
pub fn catalog(family: Family, k: Option<usize>) -> Result<CatalogEntry> {
    let k = match (family.min_k(), k) {
        (Some(lo), Some(k)) if k >= lo => Some(k),
        (Some(lo), Some(k)) => {
            return Err(Error::InvalidParameters(format!("{family} needs k ≥ {lo}, got {k}")));
        }
        (Some(_), None) => return Err(Error::InvalidParameters(format!("{family} needs a parameter k"))),
        (None, Some(_)) => return Err(Error::InvalidParameters(format!("{family} takes no parameter k"))),
        (None, None) => None,
    };
    let (matrix, m, n) = match family {
        Family::A1 => (MultiplicityMatrix::new(vec![vec![2]])?, vec![1], vec![1]),
        Family::A2k1 => {
            let k = k.expect("checked");
            let a = MultiplicityMatrix::from_fn(k, k, |i, j| u32::from(j == i || j == (i + 1) % k));
            (a, vec![1; k], vec![1; k])
        }
        Family::D4 => (MultiplicityMatrix::new(vec![vec![1, 1, 1, 1]])?, vec![2], vec![1; 4]),
        Family::D2k => {
            let k = k.expect("checked");
            let (r, s) = (k - 1, k + 2);
            let mut ones = vec![(1, 1), (1, 2), (1, 3)];
            for i in 2..=k - 2 {
                ones.extend([(i, i + 1), (i, i + 2)]);
            }
            ones.extend([(k - 1, k), (k - 1, k + 1), (k - 1, k + 2)]);
            let n = (1..=s).map(|j| if (3..=k).contains(&j) { 2 } else { 1 }).collect();
            (rows_of(r, s, &ones), vec![2; r], n)
        }
        Family::D2k1 => {
            let k = k.expect("checked");
            let mut ones = vec![(1, 1), (1, 2), (1, 3)];
            for i in 2..=k - 2 {
                ones.extend([(i, i + 1), (i, i + 2)]);
            }
            ones.extend([(k - 1, k), (k, k)]);
            let m = (1..=k).map(|i| if i <= k - 2 { 2 } else { 1 }).collect();
            let n = (1..=k).map(|j| if j >= 3 { 2 } else { 1 }).collect();
            (rows_of(k, k, &ones), m, n)
        }
        Family::E6 => (
            MultiplicityMatrix::new(vec![vec![1, 1, 0, 0], vec![1, 0, 1, 0], vec![1, 0, 0, 1]])?,
            vec![2, 2, 2],
            vec![3, 1, 1, 1],
        ),
        Family::E7 => (
            MultiplicityMatrix::new(vec![vec![1, 1, 0, 0, 0], vec![0, 1, 1, 1, 0], vec![0, 0, 0, 1, 1]])?,
            vec![2, 4, 2],
            vec![1, 3, 2, 3, 1],
        ),
        Family::E8 => (
            MultiplicityMatrix::new(vec![
                vec![1, 0, 0, 0, 0],
                vec![1, 1, 1, 0, 0],
                vec![0, 0, 1, 1, 0],
                vec![0, 0, 0, 1, 1],
            ])?,
            vec![2, 6, 4, 2],
            vec![4, 3, 5, 3, 1],
        ),
    };
    Ok(CatalogEntry { id: DiagramID { family, k, transposed: false }, matrix, m, n })
}

/// Catalog entries whose shape is `r × s` or `s × r`.
fn candidates(r: usize, s: usize) -> Vec<CatalogEntry> {
    let mut out = Vec::new();
    for family in Family::ALL {
        let ks: Vec<Option<usize>> = match family {
            Family::A2k1 | Family::D2k1 => vec![Some(r.max(s))],
            Family::D2k => vec![Some(r.min(s) + 1)],
            _ => vec![None],
        };
        for k in ks {
            if let Ok(e) = catalog(family, k) {
                let shape = (e.matrix.r, e.matrix.s);
                if shape == (r, s) || shape == (s, r) {
                    out.push(e);
                }
            }
        }
    }
    out
}

/// Whether `b` is `a` with rows and columns permuted.
///
/// Rows of `a` are assigned to rows of `b` one at a time; after each step the
/// multiset of partial columns must agree.
pub fn equivalent(a: &MultiplicityMatrix, b: &MultiplicityMatrix) -> bool {
    if (a.r, a.s) != (b.r, b.s) {
        return false;
    }
    let sig = |m: &MultiplicityMatrix, i: usize| {
        let mut row: Vec<u32> = (0..m.s).map(|j| m.get(i, j)).collect();
        row.sort_unstable();
        row
    };
    let sig_b: Vec<Vec<u32>> = (0..b.r).map(|i| sig(b, i)).collect();
    let sig_a: Vec<Vec<u32>> = (0..a.r).map(|i| sig(a, i)).collect();
    let mut used = vec![false; a.r];
    let mut chosen = Vec::with_capacity(a.r);
    search(a, b, &sig_a, &sig_b, &mut used, &mut chosen)
}

fn column_prefixes(m: &MultiplicityMatrix, rows: &[usize]) -> Vec<Vec<u32>> {
    let mut cols: Vec<Vec<u32>> = (0..m.s).map(|j| rows.iter().map(|&i| m.get(i, j)).collect()).collect();
    cols.sort_unstable();
    cols
}

fn search(
    a: &MultiplicityMatrix,
    b: &MultiplicityMatrix,
    sig_a: &[Vec<u32>],
    sig_b: &[Vec<u32>],
    used: &mut [bool],
    chosen: &mut Vec<usize>,
) -> bool {
    let t = chosen.len();
    if t == b.r {
        return true;
    }
    let b_rows: Vec<usize> = (0..=t).collect();
    let target = column_prefixes(b, &b_rows);
    for i in 0..a.r {
        if used[i] || sig_a[i] != sig_b[t] {
            continue;
        }
        chosen.push(i);
        if column_prefixes(a, chosen) == target {
            used[i] = true;
            if search(a, b, sig_a, sig_b, used, chosen) {
                return true;
            }
            used[i] = false;
        }
        chosen.pop();
    }
    false
}

/// The catalog entry equivalent to `a` or to its transpose, preferring the
/// untransposed orientation; `None` unless `a` is admissible.
pub fn classify(a: &MultiplicityMatrix) -> Option<DiagramID> {
    if !is_admissible(a) {
        return None;
    }
    let found = candidates(a.r, a.s);
    let at = a.transpose();
    for transposed in [false, true] {
        let target = if transposed { &at } else { a };
        for e in &found {
            if equivalent(&e.matrix, target) {
                return Some(DiagramID { transposed, ..e.id });
            }
        }
    }
    None
}
