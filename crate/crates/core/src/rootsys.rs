//! Root systems of the classical families (and products of them), realized
//! with integer coordinates so that everything downstream can be exact.
//!
//! Realizations:
//!
//! * `A_n`: the sum-zero hyperplane of `R^{n+1}`, written in the basis of simple
//!   roots `ε_i - ε_{i+1}`; the Gram matrix is the Cartan matrix.
//! * `B_n`, `C_n`, `D_n`: the standard `ε`-basis of `R^n` with Gram matrix `I`.
//! * products: orthogonal direct sums, blocks concatenated in order.
//!
//! The space `V` is identified with its dual through the Gram matrix. A root
//! is stored as a vector; the corresponding functional is `x ↦ ⟨α, x⟩`.

use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exact::{self, QVec, Rat};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootSystemError {
    #[error("invalid root system type `{0}`")]
    InvalidType(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("vector is not a root of the system")]
    NotARoot,
    #[error("functional is not regular: (α_{index}, l) = {value}")]
    NotRegular { index: usize, value: String },
}

impl RootSystemError {
    pub fn code(&self) -> &'static str {
        match self {
            Self::InvalidType(_) => "rootsys.invalid_type",
            Self::DimensionMismatch { .. } => "rootsys.dimension_mismatch",
            Self::NotARoot => "rootsys.not_a_root",
            Self::NotRegular { .. } => "rootsys.not_regular",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    A,
    B,
    C,
    D,
}

/// One irreducible factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Component {
    pub family: Family,
    pub rank: usize,
}

impl Component {
    fn validate(&self) -> Result<(), RootSystemError> {
        let ok = match self.family {
            Family::A => self.rank >= 1,
            Family::B | Family::C => self.rank >= 2,
            Family::D => self.rank >= 3,
        };
        if ok {
            Ok(())
        } else {
            Err(RootSystemError::InvalidType(self.to_string()))
        }
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

/// A (possibly reducible) type tag such as `A2`, `B3` or `A1xA1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct CartanType(pub Vec<Component>);

impl CartanType {
    pub fn rank(&self) -> usize {
        self.0.iter().map(|c| c.rank).sum()
    }

    pub fn is_irreducible(&self) -> bool {
        self.0.len() == 1
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join("x"))
    }
}

impl FromStr for CartanType {
    type Err = RootSystemError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || RootSystemError::InvalidType(s.to_string());
        let mut comps = Vec::new();
        for part in s.split(['x', 'X', '×']) {
            let part = part.trim();
            let mut chars = part.chars();
            let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
                Some('A') => Family::A,
                Some('B') => Family::B,
                Some('C') => Family::C,
                Some('D') => Family::D,
                _ => return Err(bad()),
            };
            let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
            let comp = Component { family, rank };
            comp.validate()?;
            comps.push(comp);
        }
        if comps.is_empty() {
            return Err(bad());
        }
        Ok(CartanType(comps))
    }
}

type IVec = Vec<i64>;

fn idot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[derive(Debug, Clone)]
pub struct RootSystem {
    cartan_type: CartanType,
    rank: usize,
    gram: Vec<IVec>,
    simple_roots: Vec<IVec>,
    simple_coroots: Vec<IVec>,
    roots: Vec<IVec>,
    positive: Vec<usize>,
    root_coeffs: Vec<IVec>,
    cartan: Vec<IVec>,
}

/// Which reflection to apply.
#[derive(Debug, Clone, Copy)]
pub enum RootRef<'a> {
    Simple(usize),
    Vector(&'a [i64]),
}

fn component_data(c: Component) -> (Vec<IVec>, Vec<IVec>) {
    let n = c.rank;
    let e = |i: usize| {
        let mut v = vec![0; n];
        v[i] = 1;
        v
    };
    match c.family {
        Family::A => {
            let gram = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| match i.abs_diff(j) {
                            0 => 2,
                            1 => -1,
                            _ => 0,
                        })
                        .collect()
                })
                .collect();
            (gram, (0..n).map(e).collect())
        }
        Family::B | Family::C | Family::D => {
            let gram = (0..n).map(e).collect();
            let mut simple: Vec<IVec> = (0..n - 1)
                .map(|i| {
                    let mut v = vec![0; n];
                    v[i] = 1;
                    v[i + 1] = -1;
                    v
                })
                .collect();
            let last = match c.family {
                Family::B => e(n - 1),
                Family::C => {
                    let mut v = e(n - 1);
                    v[n - 1] = 2;
                    v
                }
                _ => {
                    let mut v = vec![0; n];
                    v[n - 2] = 1;
                    v[n - 1] = 1;
                    v
                }
            };
            simple.push(last);
            (gram, simple)
        }
    }
}

/// Builds the root system of the given type in its standard realization.
pub fn build_root_system(cartan_type: &CartanType) -> Result<RootSystem, RootSystemError> {
    for c in &cartan_type.0 {
        c.validate()?;
    }
    let n = cartan_type.rank();
    let mut gram = vec![vec![0i64; n]; n];
    let mut simple = Vec::with_capacity(n);
    let mut offset = 0;
    for &c in &cartan_type.0 {
        let (g, s) = component_data(c);
        for i in 0..c.rank {
            for j in 0..c.rank {
                gram[offset + i][offset + j] = g[i][j];
            }
            let mut v = vec![0; n];
            v[offset..offset + c.rank].copy_from_slice(&s[i]);
            simple.push(v);
        }
        offset += c.rank;
    }
    let ip = |a: &[i64], b: &[i64]| -> i64 {
        (0..n).map(|i| a[i] * idot(&gram[i], b)).sum()
    };
    let coroot = |a: &[i64]| -> IVec {
        let nn = ip(a, a);
        a.iter().map(|x| 2 * x / nn).collect()
    };
    let simple_coroots: Vec<IVec> = simple.iter().map(|a| coroot(a)).collect();

    // closure of the simple roots under simple reflections
    let mut roots: Vec<IVec> = simple.clone();
    let mut i = 0;
    while i < roots.len() {
        for (a, ac) in simple.iter().zip(&simple_coroots) {
            let r = &roots[i];
            let p = ip(a, r);
            let img: IVec = r.iter().zip(ac).map(|(x, c)| x - p * c).collect();
            if !roots.contains(&img) {
                roots.push(img);
            }
        }
        i += 1;
    }
    roots.sort();

    let basis: Vec<QVec> = exact::transpose(
        &simple.iter().map(|v| exact::from_ints(v)).collect::<Vec<_>>(),
    );
    let basis_inv = exact::inverse(&basis).expect("simple roots are a basis");
    let root_coeffs: Vec<IVec> = roots
        .iter()
        .map(|r| {
            exact::mat_vec(&basis_inv, &exact::from_ints(r))
                .iter()
                .map(|c| {
                    debug_assert!(c.is_integer());
                    c.to_integer().try_into().expect("small coefficients")
                })
                .collect()
        })
        .collect();
    let positive = (0..roots.len())
        .filter(|&k| root_coeffs[k].iter().all(|&c| c >= 0))
        .collect();
    let cartan = (0..n)
        .map(|i| (0..n).map(|j| ip(&simple_coroots[i], &simple[j])).collect())
        .collect();

    Ok(RootSystem {
        cartan_type: cartan_type.clone(),
        rank: n,
        gram,
        simple_roots: simple,
        simple_coroots,
        roots,
        positive,
        root_coeffs,
        cartan,
    })
}

impl RootSystem {
    pub fn from_tag(tag: &str) -> Result<Self, RootSystemError> {
        build_root_system(&tag.parse()?)
    }

    pub fn cartan_type(&self) -> &CartanType {
        &self.cartan_type
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn gram(&self) -> &[IVec] {
        &self.gram
    }

    pub fn simple_roots(&self) -> &[IVec] {
        &self.simple_roots
    }

    pub fn simple_coroots(&self) -> &[IVec] {
        &self.simple_coroots
    }

    pub fn roots(&self) -> &[IVec] {
        &self.roots
    }

    pub fn positive_roots(&self) -> impl Iterator<Item = &IVec> + '_ {
        self.positive.iter().map(move |&k| &self.roots[k])
    }

    pub fn num_positive_roots(&self) -> usize {
        self.positive.len()
    }

    /// Coefficients of each positive root in the basis of simple roots.
    pub fn positive_root_coeffs(&self) -> impl Iterator<Item = &IVec> + '_ {
        self.positive.iter().map(move |&k| &self.root_coeffs[k])
    }

    /// Entry `(i, j)` is `⟨α_i^∨, α_j⟩`.
    pub fn cartan_matrix(&self) -> &[IVec] {
        &self.cartan
    }

    pub fn inner(&self, a: &[i64], b: &[i64]) -> i64 {
        (0..self.rank).map(|i| a[i] * idot(&self.gram[i], b)).sum()
    }

    pub fn inner_q(&self, a: &[Rat], b: &[Rat]) -> Rat {
        exact::dot(a, &self.gram_times_q(b))
    }

    pub fn inner_f64(&self, a: &[f64], b: &[f64]) -> f64 {
        let mut s = 0.0;
        for i in 0..self.rank {
            for j in 0..self.rank {
                s += a[i] * self.gram[i][j] as f64 * b[j];
            }
        }
        s
    }

    pub fn norm_f64(&self, a: &[f64]) -> f64 {
        self.inner_f64(a, a).max(0.0).sqrt()
    }

    fn gram_times_q(&self, v: &[Rat]) -> QVec {
        self.gram
            .iter()
            .map(|row| row.iter().zip(v).fold(Rat::zero(), |acc, (g, x)| acc + x * Rat::from_integer((*g).into())))
            .collect()
    }

    /// Coefficient row of the functional `x ↦ ⟨v, x⟩`.
    pub fn functional_of(&self, v: &[i64]) -> IVec {
        self.gram.iter().map(|row| idot(row, v)).collect()
    }

    pub fn functional_of_q(&self, v: &[Rat]) -> QVec {
        self.gram_times_q(v)
    }

    /// Rows of the simple-root functionals `α_i`.
    pub fn simple_root_rows(&self) -> Vec<QVec> {
        self.simple_roots.iter().map(|a| exact::from_ints(&self.functional_of(a))).collect()
    }

    pub fn simple_root_rows_f64(&self) -> Vec<Vec<f64>> {
        self.simple_roots
            .iter()
            .map(|a| self.functional_of(a).iter().map(|&x| x as f64).collect())
            .collect()
    }

    /// Value `α_i(x)`.
    pub fn alpha(&self, i: usize, x: &[Rat]) -> Rat {
        self.inner_q(&exact::from_ints(&self.simple_roots[i]), x)
    }

    pub fn alpha_f64(&self, i: usize, x: &[f64]) -> f64 {
        let a: Vec<f64> = self.simple_roots[i].iter().map(|&v| v as f64).collect();
        self.inner_f64(&a, x)
    }

    pub fn is_root(&self, v: &[i64]) -> bool {
        self.roots.iter().any(|r| r.as_slice() == v)
    }

    pub fn coroot(&self, root: &[i64]) -> IVec {
        let nn = self.inner(root, root);
        root.iter().map(|x| 2 * x / nn).collect()
    }

    fn check_dim(&self, len: usize) -> Result<(), RootSystemError> {
        if len != self.rank {
            return Err(RootSystemError::DimensionMismatch { expected: self.rank, got: len });
        }
        Ok(())
    }

    fn resolve(&self, root: RootRef<'_>) -> Result<(IVec, IVec), RootSystemError> {
        match root {
            RootRef::Simple(i) => {
                if i >= self.rank {
                    return Err(RootSystemError::NotARoot);
                }
                Ok((self.simple_roots[i].clone(), self.simple_coroots[i].clone()))
            }
            RootRef::Vector(v) => {
                self.check_dim(v.len())?;
                if !self.is_root(v) {
                    return Err(RootSystemError::NotARoot);
                }
                Ok((v.to_vec(), self.coroot(v)))
            }
        }
    }

    /// `s_α(x) = x − ⟨α, x⟩ α^∨`.
    pub fn reflect(&self, root: RootRef<'_>, x: &[Rat]) -> Result<QVec, RootSystemError> {
        self.check_dim(x.len())?;
        let (a, ac) = self.resolve(root)?;
        let p = self.inner_q(&exact::from_ints(&a), x);
        Ok(x.iter().zip(&ac).map(|(xi, c)| xi - &p * Rat::from_integer((*c).into())).collect())
    }

    pub fn reflect_f64(&self, root: RootRef<'_>, x: &[f64]) -> Result<Vec<f64>, RootSystemError> {
        self.check_dim(x.len())?;
        let (a, ac) = self.resolve(root)?;
        let af: Vec<f64> = a.iter().map(|&v| v as f64).collect();
        let p = self.inner_f64(&af, x);
        Ok(x.iter().zip(&ac).map(|(xi, &c)| xi - p * c as f64).collect())
    }

    /// Integer matrix (row-major rows) of the simple reflection `s_i`.
    pub fn simple_reflection_matrix(&self, i: usize) -> Vec<IVec> {
        self.reflection_matrix(&self.simple_roots[i])
    }

    pub fn reflection_matrix(&self, root: &[i64]) -> Vec<IVec> {
        let n = self.rank;
        let row = self.functional_of(root);
        let ac = self.coroot(root);
        (0..n)
            .map(|r| (0..n).map(|c| i64::from(r == c) - ac[r] * row[c]).collect())
            .collect()
    }

    /// Closed chamber test `α_i(x) ≥ −tol`.
    pub fn in_chamber_f64(&self, x: &[f64], tol: f64) -> bool {
        (0..self.rank).all(|i| self.alpha_f64(i, x) >= -tol)
    }

    pub fn in_chamber(&self, x: &[Rat]) -> bool {
        (0..self.rank).all(|i| !self.alpha(i, x).is_negative())
    }

    /// Vectors `v_i` with `α_j(v_i) = δ_ij`; they span the rays of the chamber.
    pub fn fundamental_coweights(&self) -> Vec<QVec> {
        let inv = exact::inverse(&self.simple_root_rows()).expect("simple roots independent");
        exact::transpose(&inv)
    }

    /// Rows `ϖ_i` with `ϖ_i(α_j^∨) = δ_ij`.
    pub fn fundamental_weight_rows(&self) -> Vec<QVec> {
        let cor: Vec<QVec> = self.simple_coroots.iter().map(|c| exact::from_ints(c)).collect();
        // rows ϖ satisfy ϖ · C^T = I where C has coroots as rows
        exact::inverse(&exact::transpose(&cor)).expect("coroots independent")
    }

    /// Indices `[start, end)` of each irreducible block.
    pub fn blocks(&self) -> Vec<std::ops::Range<usize>> {
        let mut out = Vec::new();
        let mut off = 0;
        for c in &self.cartan_type.0 {
            out.push(off..off + c.rank);
            off += c.rank;
        }
        out
    }

    pub fn info(&self) -> RootSystemInfo {
        let q = |v: &IVec| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        RootSystemInfo {
            cartan_type: self.cartan_type.to_string(),
            rank: self.rank,
            num_roots: self.roots.len(),
            num_positive_roots: self.positive.len(),
            gram: self.gram.clone(),
            cartan_matrix: self.cartan.clone(),
            simple_roots: self.simple_roots.iter().map(q).collect(),
            simple_coroots: self.simple_coroots.iter().map(q).collect(),
            positive_roots: self.positive_roots().map(q).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RootSystemInfo {
    pub cartan_type: String,
    pub rank: usize,
    pub num_roots: usize,
    pub num_positive_roots: usize,
    pub gram: Vec<IVec>,
    pub cartan_matrix: Vec<IVec>,
    pub simple_roots: Vec<Vec<String>>,
    pub simple_coroots: Vec<Vec<String>>,
    pub positive_roots: Vec<Vec<String>>,
}

/// A linear functional `l` on `V`, stored as its coefficient row.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FinslerFunctional {
    row: QVec,
    regular: bool,
}

impl FinslerFunctional {
    pub fn from_row(rs: &RootSystem, row: QVec) -> Result<Self, RootSystemError> {
        rs.check_dim(row.len())?;
        let regular = rs
            .simple_coroots
            .iter()
            .all(|c| exact::dot(&row, &exact::from_ints(c)).is_positive());
        Ok(Self { row, regular })
    }

    /// `l = Σ c_i ϖ_i` in terms of fundamental weights; regular iff all `c_i > 0`.
    pub fn from_weight_coords(rs: &RootSystem, coords: &[Rat]) -> Result<Self, RootSystemError> {
        rs.check_dim(coords.len())?;
        let rows = rs.fundamental_weight_rows();
        let row = exact::vec_mat(coords, &rows);
        Self::from_row(rs, row)
    }

    /// The functional `⟨v, ·⟩` dual to a vector of `V`.
    pub fn from_vector(rs: &RootSystem, v: &[Rat]) -> Result<Self, RootSystemError> {
        rs.check_dim(v.len())?;
        Self::from_row(rs, rs.functional_of_q(v))
    }

    /// The sum of the fundamental weights (the functional `ρ`).
    pub fn rho(rs: &RootSystem) -> Self {
        Self::from_weight_coords(rs, &vec![exact::int(1); rs.rank()]).expect("rank matches")
    }

    pub fn row(&self) -> &[Rat] {
        &self.row
    }

    pub fn row_f64(&self) -> Vec<f64> {
        exact::vec_to_f64(&self.row)
    }

    pub fn is_regular(&self) -> bool {
        self.regular
    }

    pub fn eval(&self, x: &[Rat]) -> Rat {
        exact::dot(&self.row, x)
    }

    /// Gradient vector of `l` in `V` (the direction `θ̄` up to scale).
    pub fn gradient(&self, rs: &RootSystem) -> QVec {
        let g: Vec<QVec> = rs.gram.iter().map(|r| exact::from_ints(r)).collect();
        exact::solve(&g, &self.row).expect("Gram matrix invertible")
    }

    pub fn scaled(&self, s: &Rat) -> Self {
        Self { row: exact::scale(&self.row, s), regular: self.regular && s.is_positive() }
    }

    /// Simple-root indices `i` with `(α_i, l) > 0`: the face type spanned by `θ̄`.
    pub fn support(&self, rs: &RootSystem) -> Vec<usize> {
        (0..rs.rank)
            .filter(|&i| exact::dot(&self.row, &exact::from_ints(&rs.simple_coroots[i])).is_positive())
            .collect()
    }
}

/// The vertices `ω_i` of `Δ ∩ {l ≤ 1}` other than the origin:
/// `α_j(ω_i) = 0` for `j ≠ i`, `l(ω_i) = 1`.
pub fn fundamental_vertices(rs: &RootSystem, l: &FinslerFunctional) -> Result<Vec<QVec>, RootSystemError> {
    let n = rs.rank();
    let alphas = rs.simple_root_rows();
    if let Some(i) = (0..n).find(|&i| !exact::dot(l.row(), &exact::from_ints(&rs.simple_coroots[i])).is_positive()) {
        let value = exact::dot(l.row(), &exact::from_ints(&rs.simple_coroots[i]));
        return Err(RootSystemError::NotRegular { index: i + 1, value: exact::format_rat(&value) });
    }
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut a: Vec<QVec> = (0..n).filter(|&j| j != i).map(|j| alphas[j].clone()).collect();
        a.push(l.row().to_vec());
        let mut b = exact::zeros(n);
        b[n - 1] = exact::int(1);
        let w = exact::solve(&a, &b).expect("regular functional gives a nondegenerate system");
        out.push(w);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, ratio};

    fn rs(tag: &str) -> RootSystem {
        RootSystem::from_tag(tag).unwrap()
    }

    #[test]
    fn root_counts() {
        assert_eq!(rs("A2").roots().len(), 6);
        assert_eq!(rs("A2").num_positive_roots(), 3);
        assert_eq!(rs("B2").roots().len(), 8);
        assert_eq!(rs("A1xA1").roots().len(), 4);
        assert_eq!(rs("B3").roots().len(), 18);
        assert_eq!(rs("C3").roots().len(), 18);
        assert_eq!(rs("D4").roots().len(), 24);
        assert_eq!(rs("A3").roots().len(), 12);
    }

    #[test]
    fn cartan_matrices() {
        assert_eq!(rs("B2").cartan_matrix(), &[vec![2, -1], vec![-2, 2]]);
        assert_eq!(rs("A2").cartan_matrix(), &[vec![2, -1], vec![-1, 2]]);
        assert_eq!(rs("A1xA1").cartan_matrix(), &[vec![2, 0], vec![0, 2]]);
        assert_eq!(rs("C2").cartan_matrix(), &[vec![2, -2], vec![-1, 2]]);
    }

    #[test]
    fn product_roots_are_orthogonal_pairs() {
        let r = rs("A1xA1");
        assert_eq!(r.roots(), &[vec![-1, 0], vec![0, -1], vec![0, 1], vec![1, 0]]);
        assert_eq!(r.inner(&[1, 0], &[0, 1]), 0);
    }

    #[test]
    fn invalid_types_rejected() {
        for bad in ["D2", "B1", "E6", "A0", "", "Ax", "A2xQ1"] {
            assert!(RootSystem::from_tag(bad).is_err(), "{bad}");
        }
        assert_eq!(RootSystem::from_tag("D2").unwrap_err().code(), "rootsys.invalid_type");
    }

    #[test]
    fn reflection_basics() {
        let r = rs("B3");
        for root in r.roots() {
            let x = exact::from_ints(root);
            let img = r.reflect(RootRef::Vector(root), &x).unwrap();
            assert_eq!(img, exact::neg(&x));
        }
        // wall fixed: ε_3 is orthogonal to ε_1 − ε_2
        let x = exact::from_ints(&[0, 0, 1]);
        assert_eq!(r.reflect(RootRef::Simple(0), &x).unwrap(), x);
        assert!(r.reflect(RootRef::Vector(&[1, 1, 1]), &x).is_err());
        assert!(r.reflect(RootRef::Simple(0), &exact::from_ints(&[1, 1])).is_err());
    }

    #[test]
    fn a2_coxeter_relation() {
        let r = rs("A2");
        let mut x = vec![ratio(3, 7), ratio(-5, 11)];
        let start = x.clone();
        for _ in 0..3 {
            x = r.reflect(RootRef::Simple(1), &x).unwrap();
            x = r.reflect(RootRef::Simple(0), &x).unwrap();
        }
        assert_eq!(x, start);
        // (s1 s2)^1 is not the identity on a generic vector
        let y = r.reflect(RootRef::Simple(0), &r.reflect(RootRef::Simple(1), &start).unwrap()).unwrap();
        assert_ne!(y, start);
    }

    #[test]
    fn fundamental_vertices_a2_rho() {
        let r = rs("A2");
        let l = FinslerFunctional::rho(&r);
        assert!(l.is_regular());
        let w = fundamental_vertices(&r, &l).unwrap();
        // hand solution of α_2(x) = 0, l(x) = 1 and α_1(x) = 0, l(x) = 1
        assert_eq!(w[0], vec![ratio(2, 3), ratio(1, 3)]);
        assert_eq!(w[1], vec![ratio(1, 3), ratio(2, 3)]);
        let w2 = fundamental_vertices(&r, &l.scaled(&int(2))).unwrap();
        assert_eq!(w2[0], exact::scale(&w[0], &ratio(1, 2)));
    }

    #[test]
    fn fundamental_vertices_defining_equations() {
        for tag in ["A1", "A2", "A3", "B2", "B3", "C3", "D4", "A1xA1", "A2xB2"] {
            let r = rs(tag);
            let coords: Vec<Rat> = (0..r.rank()).map(|i| ratio(i as i64 + 2, 3)).collect();
            let l = FinslerFunctional::from_weight_coords(&r, &coords).unwrap();
            let w = fundamental_vertices(&r, &l).unwrap();
            for i in 0..r.rank() {
                assert_eq!(l.eval(&w[i]), int(1));
                for j in 0..r.rank() {
                    let a = r.alpha(j, &w[i]);
                    if i == j {
                        assert!(a.is_positive(), "{tag}");
                    } else {
                        assert!(a.is_zero(), "{tag}");
                    }
                }
            }
        }
    }

    #[test]
    fn singular_functional_has_no_vertices() {
        let r = rs("A2");
        let l = FinslerFunctional::from_weight_coords(&r, &[int(1), int(0)]).unwrap();
        assert!(!l.is_regular());
        assert_eq!(l.support(&r), vec![0]);
        assert_eq!(fundamental_vertices(&r, &l).unwrap_err().code(), "rootsys.not_regular");
    }

    #[test]
    fn weight_coordinates_pair_with_coroots() {
        let r = rs("B3");
        let rows = r.fundamental_weight_rows();
        for (i, row) in rows.iter().enumerate() {
            for (j, c) in r.simple_coroots().iter().enumerate() {
                assert_eq!(exact::dot(row, &exact::from_ints(c)), int(i64::from(i == j)));
            }
        }
        let cw = r.fundamental_coweights();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(r.alpha(j, &cw[i]), int(i64::from(i == j)));
            }
        }
    }
}
