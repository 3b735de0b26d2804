//! Numerical layer for `X = SL(n,ℝ)/SO(n)`: Cartan projections, `Δ`-valued
//! and Finsler distances, regularity of sequences, flags and limit sets.

pub mod flags;
pub mod limitset;
pub mod psl3;

use nalgebra::{DMatrix, DVector};
use serde::Serialize;
use thiserror::Error;

use crate::exact;
use crate::rootsys::FinslerFunctional;
use crate::weyl::FaceType;

pub use flags::{flag_limit, relative_position_flags, Flag, FlagLimit, FlagLimitOptions};
pub use limitset::{limit_set_sample, LimitSetOptions, LimitSetSample};

/// Relative singular-value threshold below which a rank is deficient.
pub const RANK_TOL: f64 = 1e-8;
/// Upper end of the ambiguity band for rank and incidence decisions.
pub const AMBIGUITY_TOL: f64 = 1e-6;
/// Flags closer than this (sum of principal angles) are identified.
pub const MERGE_TOL: f64 = 1e-6;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SymspaceError {
    #[error("matrix is not square or sizes disagree: {0}")]
    Shape(String),
    #[error("matrix is singular or too ill-conditioned")]
    Singular,
    #[error("matrix entries overflow double precision")]
    Overflow,
    #[error("not a point of the symmetric space: {0}")]
    NotSymPoint(String),
    #[error("sequence needs at least {needed} terms, got {got}")]
    TooShort { needed: usize, got: usize },
    #[error("sequence is not regular for face type {0}")]
    NotRegular(String),
    #[error("flag frames do not converge: last step {last_step:e}")]
    NotConverged { last_step: f64 },
    #[error("rank decision ambiguous at ({i}, {j}): singular value {value:e} in the ambiguity band")]
    Ambiguous { i: usize, j: usize, value: f64 },
    #[error("incidence decision ambiguous: distance {0:e} in the ambiguity band")]
    AmbiguousIncidence(f64),
    #[error("invalid flag: {0}")]
    BadFlag(String),
    #[error("predicates disagree: {0}")]
    Disagreement(String),
    #[error("{0}")]
    Domain(String),
}

impl SymspaceError {
    pub fn code(&self) -> &'static str {
        match self {
            Self::Shape(_) => "symspace.shape",
            Self::Singular => "symspace.singular",
            Self::Overflow => "symspace.overflow",
            Self::NotSymPoint(_) => "symspace.not_sym_point",
            Self::TooShort { .. } => "symspace.too_short",
            Self::NotRegular(_) => "symspace.not_regular",
            Self::NotConverged { .. } => "symspace.not_converged",
            Self::Ambiguous { .. } => "symspace.ambiguous_rank",
            Self::AmbiguousIncidence(_) => "symspace.ambiguous_incidence",
            Self::BadFlag(_) => "symspace.bad_flag",
            Self::Disagreement(_) => "symspace.disagreement",
            Self::Domain(_) => "symspace.domain",
        }
    }
}

/// An element of `SL(n,ℝ)` stored with its inverse, so that both ends of
/// the singular spectrum are computed from the dominant directions of
/// `g` and `g⁻¹` respectively.
#[derive(Debug, Clone)]
pub struct SlMatrix {
    mat: DMatrix<f64>,
    inv: DMatrix<f64>,
}

impl SlMatrix {
    /// Normalizes `|det g| = 1`.
    pub fn new(g: DMatrix<f64>) -> Result<Self, SymspaceError> {
        if !g.is_square() {
            return Err(SymspaceError::Shape(format!("{}x{}", g.nrows(), g.ncols())));
        }
        if g.iter().any(|x| !x.is_finite()) {
            return Err(SymspaceError::Overflow);
        }
        let n = g.nrows();
        let det = g.determinant();
        if !det.is_finite() || det.abs() < 1e-300 {
            return Err(SymspaceError::Singular);
        }
        let g = g / det.abs().powf(1.0 / n as f64);
        let inv = g.clone().try_inverse().ok_or(SymspaceError::Singular)?;
        if inv.iter().any(|x| !x.is_finite()) {
            return Err(SymspaceError::Singular);
        }
        Ok(Self { mat: g, inv })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self, SymspaceError> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(SymspaceError::Shape("rows of unequal length".into()));
        }
        Self::new(DMatrix::from_fn(n, n, |i, j| rows[i][j]))
    }

    /// Parses entries given as decimals or exact rationals `p/q`.
    pub fn parse_rows(rows: &[Vec<String>]) -> Result<Self, SymspaceError> {
        let vals: Vec<Vec<f64>> = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|s| {
                        exact::parse_rat(s)
                            .map(|q| exact::to_f64(&q))
                            .or_else(|| s.trim().parse::<f64>().ok())
                            .ok_or_else(|| SymspaceError::Shape(format!("bad entry `{s}`")))
                    })
                    .collect()
            })
            .collect::<Result<_, _>>()?;
        Self::from_rows(&vals)
    }

    pub fn identity(n: usize) -> Self {
        Self { mat: DMatrix::identity(n, n), inv: DMatrix::identity(n, n) }
    }

    pub fn diag(entries: &[f64]) -> Result<Self, SymspaceError> {
        Self::new(DMatrix::from_diagonal(&DVector::from_column_slice(entries)))
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.mat
    }

    pub fn inverse_matrix(&self) -> &DMatrix<f64> {
        &self.inv
    }

    pub fn inverse(&self) -> Self {
        Self { mat: self.inv.clone(), inv: self.mat.clone() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self { mat: &self.mat * &other.mat, inv: &other.inv * &self.inv }
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Self::identity(self.dim());
        for _ in 0..k.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// `h g h⁻¹`
    pub fn conjugate_by(&self, h: &Self) -> Self {
        h.mul(self).mul(&h.inverse())
    }

    pub fn is_finite(&self) -> bool {
        self.mat.iter().chain(self.inv.iter()).all(|x| x.is_finite())
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.dim()).map(|i| (0..self.dim()).map(|j| self.mat[(i, j)]).collect()).collect()
    }
}

/// Singular values sorted nonincreasing with matching left singular vectors.
/// The vectors come from a symmetric eigen-solve of the scaled `m mᵀ`; the
/// SVD iteration loses them when the spectrum spans many orders of
/// magnitude. Only the leading vectors are accurate.
pub(crate) fn sorted_svd(m: &DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let mut vals: Vec<f64> = m.clone().svd(false, false).singular_values.iter().copied().collect();
    vals.sort_by(|a, b| b.total_cmp(a));
    let s = m.amax();
    let scaled = if s > 0.0 { m / s } else { m.clone() };
    let gram = &scaled * scaled.transpose();
    let eig = nalgebra::SymmetricEigen::new((&gram + gram.transpose()) * 0.5);
    let mut idx: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    idx.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let cols: Vec<DVector<f64>> = idx.iter().map(|&i| eig.eigenvectors.column(i).into_owned()).collect();
    (vals, DMatrix::from_columns(&cols))
}

/// A vector of `n` reals, nonincreasing and summing to zero.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DeltaVector(pub Vec<f64>);

impl DeltaVector {
    /// Sorts and recenters.
    pub fn new(mut v: Vec<f64>) -> Self {
        v.sort_by(|a, b| b.total_cmp(a));
        let mean = v.iter().sum::<f64>() / v.len() as f64;
        Self(v.into_iter().map(|x| x - mean).collect())
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    /// `α_i(δ) = δ_i − δ_{i+1}` (0-based `i`).
    pub fn alpha(&self, i: usize) -> f64 {
        self.0[i] - self.0[i + 1]
    }

    /// Coordinates in the simple-root basis of `A_{n−1}`: `c_k = δ_1 + … + δ_k`.
    pub fn root_coords(&self) -> Vec<f64> {
        let n = self.0.len();
        (1..n).map(|k| self.0[..k].iter().sum()).collect()
    }

    /// `−reverse(δ)`, the projection of the inverse.
    pub fn flip(&self) -> Self {
        Self(self.0.iter().rev().map(|x| -x).collect())
    }

    pub fn distance(&self, other: &Self) -> f64 {
        self.0.iter().zip(&other.0).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt()
    }
}

/// Sorted logarithms of the singular values. The upper half of the
/// spectrum is read off `g`, the lower half off `g⁻¹`, and for odd `n` the
/// middle value comes from `det g = 1`.
pub fn cartan_projection(g: &SlMatrix) -> DeltaVector {
    let n = g.dim();
    let (top, _) = sorted_svd(&g.mat);
    let (bottom, _) = sorted_svd(&g.inv);
    let half = n / 2;
    let mut v = vec![0.0; n];
    for k in 0..half {
        v[k] = top[k].ln();
        v[n - 1 - k] = -bottom[k].ln();
    }
    if n % 2 == 1 {
        v[half] = -v.iter().sum::<f64>();
    }
    DeltaVector::new(v)
}

/// A positive-definite symmetric matrix of determinant one.
#[derive(Debug, Clone)]
pub struct SymPoint {
    mat: DMatrix<f64>,
}

impl SymPoint {
    pub fn new(m: DMatrix<f64>) -> Result<Self, SymspaceError> {
        if !m.is_square() {
            return Err(SymspaceError::Shape(format!("{}x{}", m.nrows(), m.ncols())));
        }
        let scale = m.amax().max(1.0);
        if (&m - m.transpose()).amax() > 1e-12 * scale {
            return Err(SymspaceError::NotSymPoint("not symmetric".into()));
        }
        let eig = nalgebra::SymmetricEigen::new(m.clone());
        if eig.eigenvalues.iter().any(|&e| e <= 0.0) {
            return Err(SymspaceError::NotSymPoint("not positive definite".into()));
        }
        let logdet: f64 = eig.eigenvalues.iter().map(|e| e.ln()).sum();
        if logdet.abs() > 1e-9 {
            return Err(SymspaceError::NotSymPoint(format!("determinant {:e}", logdet.exp())));
        }
        Ok(Self { mat: m })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self, SymspaceError> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(SymspaceError::Shape("rows of unequal length".into()));
        }
        Self::new(DMatrix::from_fn(n, n, |i, j| rows[i][j]))
    }

    /// The basepoint `o = I`.
    pub fn origin(n: usize) -> Self {
        Self { mat: DMatrix::identity(n, n) }
    }

    /// `g · o = g gᵀ`.
    pub fn from_group(g: &SlMatrix) -> Self {
        let m = &g.mat * g.mat.transpose();
        Self { mat: (&m + m.transpose()) * 0.5 }
    }

    /// The point `diag(e^{2a})` of the diagonal flat, `a` in `ε`-coordinates
    /// (recentered to sum zero).
    pub fn from_flat(a: &[f64]) -> Self {
        let mean = a.iter().sum::<f64>() / a.len() as f64;
        let d: Vec<f64> = a.iter().map(|x| (2.0 * (x - mean)).exp()).collect();
        Self { mat: DMatrix::from_diagonal(&DVector::from_vec(d)) }
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.mat
    }

    /// `g x gᵀ`
    pub fn transform(&self, g: &SlMatrix) -> Self {
        let m = &g.mat * &self.mat * g.mat.transpose();
        Self { mat: (&m + m.transpose()) * 0.5 }
    }
}

/// `d_Δ(x, y) = ½ · sorted log eig(L⁻¹ y L⁻ᵀ)` with `x = L Lᵀ`.
pub fn delta_distance(x: &SymPoint, y: &SymPoint) -> Result<DeltaVector, SymspaceError> {
    if x.dim() != y.dim() {
        return Err(SymspaceError::Shape(format!("{} vs {}", x.dim(), y.dim())));
    }
    let chol = nalgebra::Cholesky::new(x.mat.clone()).ok_or(SymspaceError::NotSymPoint("not positive definite".into()))?;
    let linv = chol.l().try_inverse().ok_or(SymspaceError::Singular)?;
    let m = &linv * &y.mat * linv.transpose();
    let m = (&m + m.transpose()) * 0.5;
    let eig = nalgebra::SymmetricEigen::new(m);
    if eig.eigenvalues.iter().any(|&e| e <= 0.0) {
        return Err(SymspaceError::Singular);
    }
    Ok(DeltaVector::new(eig.eigenvalues.iter().map(|e| 0.5 * e.ln()).collect()))
}

/// Riemannian distance `|d_Δ(x, y)|`.
pub fn riemannian_distance(x: &SymPoint, y: &SymPoint) -> Result<f64, SymspaceError> {
    Ok(delta_distance(x, y)?.norm())
}

/// `d^θ̄(x, y) = l(d_Δ(x, y))` for a functional on `A_{n−1}` in simple-root
/// coordinates.
pub fn finsler_distance_sym(x: &SymPoint, y: &SymPoint, l: &FinslerFunctional) -> Result<f64, SymspaceError> {
    let d = delta_distance(x, y)?;
    let row = l.row_f64();
    if row.len() + 1 != x.dim() {
        return Err(SymspaceError::Shape(format!("functional of rank {} on SL({})", row.len(), x.dim())));
    }
    Ok(row.iter().zip(d.root_coords()).map(|(a, b)| a * b).sum())
}

#[derive(Debug, Clone, Serialize)]
pub struct RegularityTerm {
    pub index: usize,
    pub delta: Vec<f64>,
    pub norm: f64,
    /// `α_i(δ)` for every simple root.
    pub alphas: Vec<f64>,
    /// `min_{i∈I} α_i(δ)`: distance-like gap from the walls of the star.
    pub gap: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct RegularityReport {
    pub face: String,
    pub terms: Vec<RegularityTerm>,
    /// All verdicts describe the finite sample only.
    pub sample_note: &'static str,
    pub regular: bool,
    pub uniformly_regular: bool,
    pub pure: bool,
    /// `min` over the tail of `gap / |δ|`.
    pub linear_rate: f64,
    /// `max` over the sample of `α_j(δ)` for `j ∉ I`.
    pub tube_radius: f64,
}

/// Finite-sample regularity verdicts. A sequence is reported regular when
/// the gaps are nondecreasing over the second half and grow by at least one
/// unit across it, uniformly regular when additionally `gap ≥ c|δ|` there
/// with `c ≥ 10⁻³`, and pure when the remaining simple roots stay bounded
/// (second-half maximum at most first-half maximum plus one).
pub fn regularity_stats(seq: &[SlMatrix], face: FaceType) -> Result<RegularityReport, SymspaceError> {
    if seq.len() < 3 {
        return Err(SymspaceError::TooShort { needed: 3, got: seq.len() });
    }
    let n = seq[0].dim();
    if face.rank() + 1 != n {
        return Err(SymspaceError::Shape(format!("face type of rank {} on SL({n})", face.rank())));
    }
    let verts = face.vertices();
    let others = face.stabilizer_generators();
    let terms: Vec<RegularityTerm> = seq
        .iter()
        .enumerate()
        .map(|(k, g)| {
            let d = cartan_projection(g);
            let alphas: Vec<f64> = (0..n - 1).map(|i| d.alpha(i)).collect();
            let gap = verts.iter().map(|&i| alphas[i]).fold(f64::INFINITY, f64::min);
            RegularityTerm { index: k, norm: d.norm(), delta: d.0, alphas, gap }
        })
        .collect();
    let mid = terms.len() / 2;
    let tail = &terms[mid..];
    let nondecreasing = tail.windows(2).all(|w| w[1].gap >= w[0].gap - 1e-9);
    let grows = tail.last().expect("nonempty").gap >= tail[0].gap + 1.0;
    let regular = nondecreasing && grows;
    let linear_rate = tail.iter().map(|t| if t.norm > 0.0 { t.gap / t.norm } else { 0.0 }).fold(f64::INFINITY, f64::min);
    let uniformly_regular = regular && linear_rate >= 1e-3;
    let other_max = |ts: &[RegularityTerm]| ts.iter().flat_map(|t| others.iter().map(|&j| t.alphas[j])).fold(0.0, f64::max);
    let tube_radius = other_max(&terms);
    let pure = regular && other_max(tail) <= other_max(&terms[..mid.max(1)]) + 1.0;
    Ok(RegularityReport {
        face: face.to_string(),
        terms,
        sample_note: "verdicts describe the finite sample only",
        regular,
        uniformly_regular,
        pure,
        linear_rate,
        tube_radius,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::RootSystem;

    fn diag_seq(rates: [f64; 3], len: usize) -> Vec<SlMatrix> {
        (1..=len).map(|k| SlMatrix::diag(&rates.map(|r| (r * k as f64).exp())).unwrap()).collect()
    }

    #[test]
    fn cartan_projection_basics() {
        let id = SlMatrix::identity(3);
        assert!(cartan_projection(&id).norm() < 1e-15);
        let t: f64 = 0.7;
        let g = SlMatrix::diag(&[t.exp(), (-t).exp()]).unwrap();
        let d = cartan_projection(&g);
        assert!((d.0[0] - t).abs() < 1e-14 && (d.0[1] + t).abs() < 1e-14);
    }

    #[test]
    fn inverse_flips_projection() {
        let g = SlMatrix::from_rows(&[vec![2.0, 1.0, 0.0], vec![0.5, 1.0, 3.0], vec![1.0, 0.0, 1.0]]).unwrap();
        let a = cartan_projection(&g).flip();
        let b = cartan_projection(&g.inverse());
        assert!(a.distance(&b) < 1e-12);
    }

    #[test]
    fn extreme_powers_keep_small_singular_values() {
        let g = SlMatrix::diag(&[(3.0f64).exp(), 1.0, (-3.0f64).exp()]).unwrap();
        let h = SlMatrix::from_rows(&[vec![1.0, 0.3, 0.1], vec![0.2, 1.0, 0.4], vec![0.0, 0.5, 1.0]]).unwrap();
        let c = g.conjugate_by(&h).pow(60);
        let d = cartan_projection(&c);
        assert!((d.0[1]).abs() < 1.0, "{:?}", d.0);
        assert!((d.0[0] - 180.0).abs() < 2.0 && (d.0[2] + 180.0).abs() < 2.0);
    }

    #[test]
    fn sym_point_validation() {
        assert!(SymPoint::new(DMatrix::from_row_slice(2, 2, &[2.0, 0.0, 0.0, 0.5])).is_ok());
        assert!(SymPoint::new(DMatrix::from_row_slice(2, 2, &[2.0, 0.1, 0.0, 0.5])).is_err());
        assert!(SymPoint::new(DMatrix::from_row_slice(2, 2, &[2.0, 0.0, 0.0, 1.0])).is_err());
        assert!(SymPoint::new(DMatrix::from_row_slice(2, 2, &[-1.0, 0.0, 0.0, -1.0])).is_err());
    }

    #[test]
    fn delta_distance_invariance() {
        let g = SlMatrix::from_rows(&[vec![1.0, 2.0, 0.0], vec![0.0, 1.0, 0.5], vec![0.3, 0.0, 1.0]]).unwrap();
        let h = SlMatrix::from_rows(&[vec![0.5, 0.0, 1.0], vec![1.0, 1.0, 0.0], vec![0.0, 2.0, 1.0]]).unwrap();
        let x = SymPoint::from_group(&g);
        let y = SymPoint::from_group(&h);
        let a = delta_distance(&x, &y).unwrap();
        let b = delta_distance(&x.transform(&h), &y.transform(&h)).unwrap();
        assert!(a.distance(&b) < 1e-10);
        let o = SymPoint::origin(3);
        assert!(delta_distance(&o, &x).unwrap().distance(&cartan_projection(&g)) < 1e-12);
        assert!(delta_distance(&x, &x).unwrap().norm() < 1e-12);
    }

    #[test]
    fn finsler_on_diagonal_flat() {
        let rs = RootSystem::from_tag("A2").unwrap();
        let l = FinslerFunctional::rho(&rs);
        let a = [0.3, -0.1, -0.2];
        let b = [-0.5, 0.9, -0.4];
        let x = SymPoint::from_flat(&a);
        let y = SymPoint::from_flat(&b);
        let d = finsler_distance_sym(&x, &y, &l).unwrap();
        let diff = DeltaVector::new(b.iter().zip(&a).map(|(p, q)| p - q).collect());
        let expected: f64 = l.row_f64().iter().zip(diff.root_coords()).map(|(r, c)| r * c).sum();
        assert!((d - expected).abs() < 1e-12);
        assert!(finsler_distance_sym(&x, &x, &l).unwrap().abs() < 1e-12);
    }

    #[test]
    fn regularity_examples() {
        let a = diag_seq([2.0, 1.0, -3.0], 12);
        let r = regularity_stats(&a, FaceType::chamber(2)).unwrap();
        assert!(r.regular && r.uniformly_regular && r.pure);

        let b = diag_seq([1.0, 1.0, -2.0], 12);
        let r = regularity_stats(&b, FaceType::new(2, &[1]).unwrap()).unwrap();
        assert!(r.regular && r.uniformly_regular && r.pure);
        assert!(r.tube_radius < 1e-9);
        let r = regularity_stats(&b, FaceType::chamber(2)).unwrap();
        assert!(!r.regular);

        let bounded: Vec<SlMatrix> = (0..12).map(|k| SlMatrix::diag(&[1.0 + 0.1 * (k % 2) as f64, 1.0, 1.0]).unwrap()).collect();
        for f in FaceType::all(2) {
            assert!(!regularity_stats(&bounded, f).unwrap().regular);
        }
        assert!(matches!(regularity_stats(&a[..2], FaceType::chamber(2)), Err(SymspaceError::TooShort { .. })));
    }
}
