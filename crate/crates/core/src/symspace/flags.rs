//! Partial and full flags in `ℝⁿ`, their relative position, flag limits of
//! regular sequences and contraction diagnostics.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

use super::{regularity_stats, sorted_svd, SlMatrix, SymspaceError, AMBIGUITY_TOL, RANK_TOL};
use crate::weyl::{Elem, FaceType, RelativePosition, WeylGroup};

/// Orthonormal basis of the column span (first `d` columns span level `d`).
fn orthonormalize(m: &DMatrix<f64>) -> DMatrix<f64> {
    let qr = m.clone().qr();
    qr.q().columns(0, m.ncols()).into_owned()
}

/// Orthonormal basis of the orthogonal complement of orthonormal columns `q`.
pub(crate) fn complement(q: &DMatrix<f64>) -> DMatrix<f64> {
    let n = q.nrows();
    let k = q.ncols();
    let p = DMatrix::identity(n, n) - q * q.transpose();
    let eig = SymmetricEigen::new((&p + p.transpose()) * 0.5);
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let cols: Vec<DVector<f64>> = idx[..n - k].iter().map(|&i| eig.eigenvectors.column(i).into_owned()).collect();
    if cols.is_empty() {
        return DMatrix::zeros(n, 0);
    }
    orthonormalize(&DMatrix::from_columns(&cols))
}

fn hcat(a: &DMatrix<f64>, b: &DMatrix<f64>) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(a.nrows(), a.ncols() + b.ncols());
    m.columns_mut(0, a.ncols()).copy_from(a);
    m.columns_mut(a.ncols(), b.ncols()).copy_from(b);
    m
}

fn singular_values(m: &DMatrix<f64>) -> Vec<f64> {
    let mut s: Vec<f64> = m.clone().svd(false, false).singular_values.iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

/// Largest principal angle between subspaces of equal dimension.
pub fn subspace_angle(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    let r = a - b * (b.transpose() * a);
    let s = singular_values(&r).first().copied().unwrap_or(0.0);
    s.clamp(0.0, 1.0).asin()
}

/// A flag of subspaces of `ℝⁿ` with the given increasing dimensions; each
/// level is held as an orthonormal basis.
#[derive(Debug, Clone)]
pub struct Flag {
    n: usize,
    levels: Vec<(usize, DMatrix<f64>)>,
}

impl Flag {
    /// Level `d` is the span of the first `d` columns of `m`.
    pub fn from_columns(m: &DMatrix<f64>, dims: &[usize]) -> Result<Self, SymspaceError> {
        let n = m.nrows();
        check_dims(n, dims)?;
        let top = *dims.last().expect("nonempty");
        if m.ncols() < top {
            return Err(SymspaceError::BadFlag(format!("{} columns for a level of dimension {top}", m.ncols())));
        }
        let sv = singular_values(&m.columns(0, top).into_owned());
        if sv.last().copied().unwrap_or(0.0) < RANK_TOL * sv[0].max(1e-300) {
            return Err(SymspaceError::BadFlag("spanning columns are dependent".into()));
        }
        let q = orthonormalize(&m.columns(0, top).into_owned());
        Ok(Self { n, levels: dims.iter().map(|&d| (d, q.columns(0, d).into_owned())).collect() })
    }

    /// Like [`Flag::from_columns`] with the matrix given row by row.
    pub fn from_rows(rows: &[Vec<f64>], dims: &[usize]) -> Result<Self, SymspaceError> {
        let n = rows.len();
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(SymspaceError::Shape("rows of unequal length".into()));
        }
        Self::from_columns(&DMatrix::from_fn(n, cols, |i, j| rows[i][j]), dims)
    }

    /// From orthonormal (or arbitrary full-rank) bases of each level; nesting
    /// is checked to `10⁻⁸`.
    pub fn from_levels(n: usize, levels: Vec<(usize, DMatrix<f64>)>) -> Result<Self, SymspaceError> {
        let dims: Vec<usize> = levels.iter().map(|(d, _)| *d).collect();
        check_dims(n, &dims)?;
        let mut out = Vec::with_capacity(levels.len());
        for (d, m) in levels {
            if m.nrows() != n || m.ncols() != d {
                return Err(SymspaceError::BadFlag(format!("level {d} has shape {}x{}", m.nrows(), m.ncols())));
            }
            out.push((d, orthonormalize(&m)));
        }
        for w in out.windows(2) {
            let (small, big) = (&w[0].1, &w[1].1);
            let r = small - big * (big.transpose() * small);
            if r.amax() > 1e-8 {
                return Err(SymspaceError::BadFlag(format!("level {} is not contained in level {}", w[0].0, w[1].0)));
            }
        }
        Ok(Self { n, levels: out })
    }

    /// `⟨e_1⟩ ⊂ ⟨e_1, e_2⟩ ⊂ …`
    pub fn standard(n: usize, dims: &[usize]) -> Result<Self, SymspaceError> {
        Self::from_columns(&DMatrix::identity(n, n), dims)
    }

    /// `⟨e_n⟩ ⊂ ⟨e_n, e_{n−1}⟩ ⊂ …`
    pub fn reverse_standard(n: usize, dims: &[usize]) -> Result<Self, SymspaceError> {
        let m = DMatrix::from_fn(n, n, |i, j| f64::from(i + j == n - 1));
        Self::from_columns(&m, dims)
    }

    pub fn full_dims(n: usize) -> Vec<usize> {
        (1..n).collect()
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn dims(&self) -> Vec<usize> {
        self.levels.iter().map(|(d, _)| *d).collect()
    }

    pub fn is_full(&self) -> bool {
        self.levels.len() + 1 == self.n
    }

    pub fn level(&self, d: usize) -> Option<&DMatrix<f64>> {
        self.levels.iter().find(|(k, _)| *k == d).map(|(_, m)| m)
    }

    pub fn levels(&self) -> &[(usize, DMatrix<f64>)] {
        &self.levels
    }

    /// The face type (vertex set `{d − 1 : d ∈ dims}`) of this flag.
    pub fn face_type(&self) -> FaceType {
        let v: Vec<usize> = self.dims().iter().map(|d| d - 1).collect();
        FaceType::new(self.n - 1, &v).expect("valid dims")
    }

    pub fn truncate(&self, dims: &[usize]) -> Result<Self, SymspaceError> {
        let levels = dims
            .iter()
            .map(|&d| self.level(d).cloned().map(|m| (d, m)).ok_or_else(|| SymspaceError::BadFlag(format!("no level {d}"))))
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_levels(self.n, levels)
    }

    /// Refines to a full flag using a deterministic completion.
    pub fn extend_to_full(&self) -> Self {
        let mut basis = DMatrix::zeros(self.n, 0);
        for (_, m) in &self.levels {
            let proj = m - &basis * (basis.transpose() * m);
            let extra = leading_directions(&proj, m.ncols() - basis.ncols());
            basis = hcat(&basis, &extra);
            basis = orthonormalize(&basis);
        }
        let rest = complement(&basis);
        let full = hcat(&basis, &rest);
        Self::from_columns(&full, &Self::full_dims(self.n)).expect("orthonormal completion")
    }

    /// `g · F`. Levels up to `n/2` are pushed forward by `g`; larger levels
    /// are computed as complements of `g⁻ᵀ` applied to their complements.
    pub fn transform(&self, g: &SlMatrix) -> Self {
        let n = self.n;
        let levels = self
            .levels
            .iter()
            .map(|(d, m)| {
                let img = if 2 * d <= n {
                    orthonormalize(&(g.matrix() * m))
                } else {
                    let c = complement(m);
                    complement(&orthonormalize(&(g.inverse_matrix().transpose() * c)))
                };
                (*d, img)
            })
            .collect();
        Self { n, levels }
    }

    /// Sum over common levels of the largest principal angle.
    pub fn distance(&self, other: &Self) -> f64 {
        self.levels
            .iter()
            .filter_map(|(d, a)| other.level(*d).map(|b| subspace_angle(a, b)))
            .sum()
    }

    /// Smallest singular value witnessing generic position over all pairs of
    /// levels: `rank [F_d | G_e] = min(n, d + e)`.
    pub fn transversality_margin(&self, other: &Self) -> f64 {
        let mut margin = f64::INFINITY;
        for (d, a) in &self.levels {
            for (e, b) in &other.levels {
                let k = (d + e).min(self.n);
                let sv = singular_values(&hcat(a, b));
                margin = margin.min(sv[k - 1]);
            }
        }
        margin
    }

    pub fn is_transverse(&self, other: &Self) -> bool {
        self.transversality_margin(other) > AMBIGUITY_TOL
    }

    /// Basis vectors of the largest level, row by row per column.
    pub fn basis_columns(&self) -> Vec<Vec<f64>> {
        let (_, m) = self.levels.last().expect("nonempty");
        (0..m.ncols()).map(|c| m.column(c).iter().copied().collect()).collect()
    }

    pub fn export(&self) -> FlagExport {
        FlagExport {
            dims: self.dims(),
            levels: self
                .levels
                .iter()
                .map(|(_, m)| (0..m.ncols()).map(|c| m.column(c).iter().map(|x| clean(*x)).collect()).collect())
                .collect(),
        }
    }
}

fn clean(x: f64) -> f64 {
    if x.abs() < 1e-14 {
        0.0
    } else {
        x
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FlagExport {
    pub dims: Vec<usize>,
    /// Orthonormal basis of each level, as a list of column vectors.
    pub levels: Vec<Vec<Vec<f64>>>,
}

fn leading_directions(m: &DMatrix<f64>, k: usize) -> DMatrix<f64> {
    if k == 0 {
        return DMatrix::zeros(m.nrows(), 0);
    }
    let (_, u) = sorted_svd(m);
    u.columns(0, k).into_owned()
}

fn check_dims(n: usize, dims: &[usize]) -> Result<(), SymspaceError> {
    if dims.is_empty() || dims.windows(2).any(|w| w[0] >= w[1]) || dims[0] == 0 || *dims.last().unwrap() >= n {
        return Err(SymspaceError::BadFlag(format!("dimensions {dims:?} in ℝ^{n}")));
    }
    Ok(())
}

/// Dimensions of a flag of face type `I`: `{i + 1 : i ∈ I}`.
pub fn dims_of(face: FaceType) -> Vec<usize> {
    face.vertices().iter().map(|i| i + 1).collect()
}

/// `dim(A ∩ B)` for orthonormal bases, with an ambiguity band.
fn intersection_dim(a: &DMatrix<f64>, b: &DMatrix<f64>, at: (usize, usize)) -> Result<usize, SymspaceError> {
    let sv = singular_values(&hcat(a, b));
    let mut rank = 0;
    for &s in &sv {
        if s > AMBIGUITY_TOL {
            rank += 1;
        } else if s >= RANK_TOL {
            return Err(SymspaceError::Ambiguous { i: at.0, j: at.1, value: s });
        }
    }
    Ok(a.ncols() + b.ncols() - rank)
}

/// Table `D[i][j] = dim(σ_i ∩ σ₀_j)` for full flags, `0 ≤ i, j ≤ n`.
pub fn dimension_table(sigma: &Flag, sigma0: &Flag) -> Result<Vec<Vec<usize>>, SymspaceError> {
    let n = sigma.n;
    let mut t = vec![vec![0; n + 1]; n + 1];
    for i in 0..=n {
        for j in 0..=n {
            t[i][j] = if i == 0 || j == 0 {
                0
            } else if i == n {
                j
            } else if j == n {
                i
            } else {
                intersection_dim(sigma.level(i).expect("full"), sigma0.level(j).expect("full"), (i, j))?
            };
        }
    }
    Ok(t)
}

/// The permutation (one-line, 1-based) encoded by a dimension table:
/// `w(k) = j` where `D[k][j] − D[k−1][j] − D[k][j−1] + D[k−1][j−1] = 1`.
pub fn permutation_from_table(t: &[Vec<usize>]) -> Result<Vec<usize>, SymspaceError> {
    let n = t.len() - 1;
    let mut perm = Vec::with_capacity(n);
    for k in 1..=n {
        let hits: Vec<usize> = (1..=n)
            .filter(|&j| t[k][j] as i64 - t[k - 1][j] as i64 - t[k][j - 1] as i64 + t[k - 1][j - 1] as i64 == 1)
            .collect();
        if hits.len() != 1 {
            return Err(SymspaceError::BadFlag(format!("inconsistent dimension table at row {k}")));
        }
        perm.push(hits[0]);
    }
    let mut seen = perm.clone();
    seen.sort();
    if seen != (1..=n).collect::<Vec<_>>() {
        return Err(SymspaceError::BadFlag("dimension table is not a permutation".into()));
    }
    Ok(perm)
}

/// Reduced word (0-based generators) with `w = s_{i₁} ∘ … ∘ s_{i_l}`, where
/// `s_i` swaps the values at positions `i + 1` and `i + 2`.
pub fn permutation_word(perm: &[usize]) -> Vec<usize> {
    let mut w = perm.to_vec();
    let mut rev = Vec::new();
    while let Some(k) = (0..w.len().saturating_sub(1)).find(|&k| w[k] > w[k + 1]) {
        w.swap(k, k + 1);
        rev.push(k);
    }
    rev.reverse();
    rev
}

pub fn permutation_to_elem(group: &WeylGroup, perm: &[usize]) -> Result<Elem, SymspaceError> {
    if group.rank() + 1 != perm.len() {
        return Err(SymspaceError::Shape(format!("permutation of {} in a group of rank {}", perm.len(), group.rank())));
    }
    group
        .from_word(&permutation_word(perm))
        .ok_or_else(|| SymspaceError::Shape("permutation word out of range".into()))
}

/// Relative position of a full flag `σ` with respect to `σ₀` as a
/// permutation. A partial `σ₀` is first refined to a full flag; the result
/// is then meaningful only up to the left `W_J` action (see
/// [`relative_position`]).
pub fn relative_position_flags(sigma: &Flag, sigma0: &Flag) -> Result<Vec<usize>, SymspaceError> {
    if !sigma.is_full() {
        return Err(SymspaceError::BadFlag("relative position needs a full flag".into()));
    }
    if sigma.n != sigma0.n {
        return Err(SymspaceError::Shape(format!("ℝ^{} vs ℝ^{}", sigma.n, sigma0.n)));
    }
    let reference = if sigma0.is_full() { sigma0.clone() } else { sigma0.extend_to_full() };
    permutation_from_table(&dimension_table(sigma, &reference)?)
}

/// `pos(σ, τ)` as a coset `W_J · w` for the face type of `τ`.
pub fn relative_position(group: &WeylGroup, sigma: &Flag, tau: &Flag) -> Result<RelativePosition, SymspaceError> {
    let perm = relative_position_flags(sigma, tau)?;
    let w = permutation_to_elem(group, &perm)?;
    Ok(RelativePosition::new(group, tau.face_type(), w))
}

/// The attracting flag of type `dims` of `g`: levels from the leading left
/// singular vectors of `g`, or as complements of those of `g⁻ᵀ`.
pub fn attracting_flag(g: &SlMatrix, dims: &[usize]) -> Result<Flag, SymspaceError> {
    let n = g.dim();
    check_dims(n, dims)?;
    let (_, u) = sorted_svd(g.matrix());
    let (_, uinv) = sorted_svd(&g.inverse_matrix().transpose());
    let levels = dims
        .iter()
        .map(|&d| {
            let m = if 2 * d <= n {
                u.columns(0, d).into_owned()
            } else {
                complement(&uinv.columns(0, n - d).into_owned())
            };
            (d, m)
        })
        .collect();
    Ok(Flag { n, levels })
}

#[derive(Debug, Clone, Copy)]
pub struct FlagLimitOptions {
    /// Last-step tolerance for declaring the frames converged.
    pub conv_tol: f64,
    /// Number of test flags in the contraction mesh.
    pub mesh_size: usize,
    pub seed: u64,
}

impl Default for FlagLimitOptions {
    fn default() -> Self {
        Self { conv_tol: 1e-7, mesh_size: 1000, seed: 0 }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ContractionReport {
    pub mesh_size: usize,
    /// `grid` (full flags) or `random` (partial flags, seeded).
    pub mesh_kind: &'static str,
    /// Term index whose action is sampled.
    pub term: usize,
    /// Largest flag distance from `g_term · F` to the forward limit.
    pub radius: f64,
    pub note: &'static str,
}

#[derive(Debug, Clone)]
pub struct FlagLimit {
    pub forward: Flag,
    pub backward: Flag,
    /// Flag distances between consecutive forward frames.
    pub forward_steps: Vec<f64>,
    pub backward_steps: Vec<f64>,
    pub transverse: bool,
    pub transversality_margin: f64,
    pub contraction: ContractionReport,
}

fn frame_limit(seq: &[SlMatrix], dims: &[usize], tol: f64) -> Result<(Flag, Vec<f64>), SymspaceError> {
    let frames = seq.iter().map(|g| attracting_flag(g, dims)).collect::<Result<Vec<_>, _>>()?;
    let steps: Vec<f64> = frames.windows(2).map(|w| w[0].distance(&w[1])).collect();
    let last = steps.last().copied().unwrap_or(f64::INFINITY);
    if last > tol {
        return Err(SymspaceError::NotConverged { last_step: last });
    }
    Ok((frames.last().expect("nonempty").clone(), steps))
}

/// Forward and backward flag limits of a regular sequence with contraction
/// diagnostics on a mesh of flags transverse to the backward limit.
pub fn flag_limit(seq: &[SlMatrix], face: FaceType, opts: FlagLimitOptions) -> Result<FlagLimit, SymspaceError> {
    let report = regularity_stats(seq, face)?;
    if !report.regular {
        return Err(SymspaceError::NotRegular(face.to_string()));
    }
    let n = seq[0].dim();
    let dims = dims_of(face);
    let opp: Vec<usize> = dims.iter().rev().map(|d| n - d).collect();
    let (forward, forward_steps) = frame_limit(seq, &dims, opts.conv_tol)?;
    let inverses: Vec<SlMatrix> = seq.iter().map(SlMatrix::inverse).collect();
    let (backward, backward_steps) = frame_limit(&inverses, &opp, opts.conv_tol)?;
    let margin = forward.transversality_margin(&backward);
    let last = seq.last().expect("nonempty");
    let (mesh, kind) = if forward.is_full() {
        (grid_mesh(&forward, &backward, opts.mesh_size)?, "grid")
    } else {
        (random_mesh(&backward, &dims, opts.mesh_size, opts.seed)?, "random")
    };
    let radius = mesh.iter().map(|f| f.transform(last).distance(&forward)).fold(0.0, f64::max);
    Ok(FlagLimit {
        forward,
        backward,
        forward_steps,
        backward_steps,
        transverse: margin > AMBIGUITY_TOL,
        transversality_margin: margin,
        contraction: ContractionReport {
            mesh_size: mesh.len(),
            mesh_kind: kind,
            term: seq.len() - 1,
            radius,
            note: "finite-sample evidence",
        },
    })
}

/// Line `A ∩ B` for subspaces with `dim A + dim B = n + 1`.
fn intersection_line(a: &DMatrix<f64>, b: &DMatrix<f64>) -> DVector<f64> {
    let m = hcat(a, &(-b));
    let eig = SymmetricEigen::new(m.transpose() * &m);
    let i = (0..eig.eigenvalues.len()).min_by(|&x, &y| eig.eigenvalues[x].total_cmp(&eig.eigenvalues[y])).expect("nonempty");
    let c = eig.eigenvectors.column(i);
    let v = a * c.rows(0, a.ncols());
    &v / v.norm()
}

/// Full flags `b · L` with `b_k = τ₊_k ∩ τ₋_{n+1−k}` and `L` lower
/// unitriangular with entries on a uniform grid in `[−1, 1]`.
fn grid_mesh(forward: &Flag, backward: &Flag, size: usize) -> Result<Vec<Flag>, SymspaceError> {
    let n = forward.n;
    let lines: Vec<DVector<f64>> = (1..=n)
        .map(|k| {
            let plus = if k == n { DMatrix::identity(n, n) } else { forward.level(k).expect("full").clone() };
            let minus = if k == 1 { DMatrix::identity(n, n) } else { backward.level(n + 1 - k).expect("full").clone() };
            intersection_line(&plus, &minus)
        })
        .collect();
    let b = DMatrix::from_columns(&lines);
    let params = n * (n - 1) / 2;
    let q = ((size as f64).powf(1.0 / params as f64).round() as usize).max(2);
    let grid: Vec<f64> = (0..q).map(|i| -1.0 + 2.0 * i as f64 / (q - 1) as f64).collect();
    let total = q.pow(params as u32);
    let dims = Flag::full_dims(n);
    let mut out = Vec::with_capacity(total);
    for code in 0..total {
        let mut l = DMatrix::identity(n, n);
        let mut c = code;
        for col in 0..n {
            for row in col + 1..n {
                l[(row, col)] = grid[c % q];
                c /= q;
            }
        }
        out.push(Flag::from_columns(&(&b * l), &dims)?);
    }
    Ok(out)
}

/// Seeded Gaussian flags with transversality margin at least `0.05` to `opp`.
fn random_mesh(opp: &Flag, dims: &[usize], size: usize, seed: u64) -> Result<Vec<Flag>, SymspaceError> {
    let n = opp.n;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(size);
    let mut attempts = 0;
    while out.len() < size {
        attempts += 1;
        if attempts > 100 * size + 100 {
            return Err(SymspaceError::Domain("could not sample transverse test flags".into()));
        }
        let m = DMatrix::from_fn(n, n, |_, _| StandardNormal.sample(&mut rng));
        let Ok(f) = Flag::from_columns(&m, dims) else { continue };
        if f.transversality_margin(opp) >= 0.05 {
            out.push(f);
        }
    }
    Ok(out)
}
