//! Sampled flag limit sets of finitely generated subgroups of `SL(n,ℝ)`.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::Serialize;

use super::flags::{attracting_flag, dims_of, Flag, FlagExport};
use super::{cartan_projection, SlMatrix, SymspaceError, MERGE_TOL};
use crate::weyl::FaceType;

#[derive(Debug, Clone, Copy)]
pub struct LimitSetOptions {
    /// Keep elements with `|μ(g)| ≥ frac · max |μ|` over the ball.
    pub norm_fraction: f64,
    /// Keep elements with `α_i(μ(g)) ≥ min_gap · |μ(g)|` for all `i ∈ I`.
    pub min_gap: f64,
    /// Hard cap on the word-ball size.
    pub max_elements: usize,
}

impl Default for LimitSetOptions {
    fn default() -> Self {
        Self { norm_fraction: 0.3, min_gap: 0.05, max_elements: 200_000 }
    }
}

#[derive(Debug, Clone)]
pub struct LimitSetSample {
    pub face: FaceType,
    pub radius: usize,
    pub ball_size: usize,
    pub selected: usize,
    pub flags: Vec<Flag>,
    /// Number of selected elements merged into each flag.
    pub weights: Vec<usize>,
    /// Pairwise transversality margins (smallest relevant singular value).
    pub transversality: Vec<Vec<f64>>,
    pub warnings: Vec<String>,
}

impl LimitSetSample {
    pub fn is_transverse(&self, i: usize, j: usize) -> bool {
        self.transversality[i][j] > super::AMBIGUITY_TOL
    }

    /// Whether all distinct sampled flags are pairwise transverse.
    pub fn is_antipodal(&self) -> bool {
        let m = self.flags.len();
        (0..m).all(|i| (0..m).all(|j| i == j || self.is_transverse(i, j)))
    }

    /// Index of a sampled flag within the merge tolerance of `f`.
    pub fn find(&self, f: &Flag) -> Option<usize> {
        self.flags.iter().position(|g| g.distance(f) < MERGE_TOL)
    }

    pub fn export(&self) -> LimitSetExport {
        LimitSetExport {
            face: self.face.to_string(),
            radius: self.radius,
            ball_size: self.ball_size,
            selected: self.selected,
            merge_tol: MERGE_TOL,
            flags: self.flags.iter().map(Flag::export).collect(),
            weights: self.weights.clone(),
            transverse: (0..self.flags.len())
                .map(|i| (0..self.flags.len()).map(|j| i != j && self.is_transverse(i, j)).collect())
                .collect(),
            antipodal: self.is_antipodal(),
            warnings: self.warnings.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LimitSetExport {
    pub face: String,
    pub radius: usize,
    pub ball_size: usize,
    pub selected: usize,
    pub merge_tol: f64,
    pub flags: Vec<FlagExport>,
    pub weights: Vec<usize>,
    pub transverse: Vec<Vec<bool>>,
    pub antipodal: bool,
    pub warnings: Vec<String>,
}

/// Entries rounded to nine significant digits relative to the largest one.
fn matrix_key(g: &SlMatrix) -> Vec<i64> {
    let m = g.matrix();
    let scale = m.amax();
    let exp = scale.log2().floor() as i64;
    let unit = 2f64.powi(exp as i32);
    let mut key = vec![exp];
    key.extend(m.iter().map(|x| (x / unit * 1e9).round() as i64));
    key
}

/// Breadth-first ball of the given word radius over generators and inverses.
pub fn word_ball(gens: &[SlMatrix], radius: usize, max_elements: usize) -> Result<Vec<(usize, SlMatrix)>, SymspaceError> {
    let n = gens.first().ok_or_else(|| SymspaceError::Domain("no generators".into()))?.dim();
    if gens.iter().any(|g| g.dim() != n) {
        return Err(SymspaceError::Shape("generators of different sizes".into()));
    }
    let alphabet: Vec<SlMatrix> = gens.iter().flat_map(|g| [g.clone(), g.inverse()]).collect();
    let id = SlMatrix::identity(n);
    let mut seen: HashSet<Vec<i64>> = HashSet::from([matrix_key(&id)]);
    let mut ball = vec![(0, id)];
    let mut frontier = vec![0usize];
    for r in 1..=radius {
        let mut next = Vec::new();
        for &i in &frontier {
            for a in &alphabet {
                let g = ball[i].1.mul(a);
                if !g.is_finite() {
                    return Err(SymspaceError::Overflow);
                }
                if seen.insert(matrix_key(&g)) {
                    ball.push((r, g));
                    next.push(ball.len() - 1);
                    if ball.len() > max_elements {
                        return Err(SymspaceError::Domain(format!("word ball exceeds {max_elements} elements")));
                    }
                }
            }
        }
        frontier = next;
    }
    Ok(ball)
}

/// Attracting flags of type `I` of the long, `I`-regular elements of the
/// word ball, merged at [`MERGE_TOL`].
pub fn limit_set_sample(
    gens: &[SlMatrix],
    radius: usize,
    face: FaceType,
    opts: LimitSetOptions,
) -> Result<LimitSetSample, SymspaceError> {
    if radius == 0 {
        return Err(SymspaceError::Domain("radius must be at least 1".into()));
    }
    let ball = word_ball(gens, radius, opts.max_elements)?;
    let n = ball[0].1.dim();
    if face.rank() + 1 != n {
        return Err(SymspaceError::Shape(format!("face type of rank {} on SL({n})", face.rank())));
    }
    let verts = face.vertices();
    let dims = dims_of(face);
    let stats: Vec<(f64, f64)> = ball
        .par_iter()
        .map(|(_, g)| {
            let d = cartan_projection(g);
            let gap = verts.iter().map(|&i| d.alpha(i)).fold(f64::INFINITY, f64::min);
            (d.norm(), gap)
        })
        .collect();
    let max_norm = stats.iter().map(|s| s.0).fold(0.0, f64::max);
    let mut chosen: Vec<usize> = (0..ball.len())
        .filter(|&i| {
            let (norm, gap) = stats[i];
            norm > 0.0 && norm >= opts.norm_fraction * max_norm && gap >= opts.min_gap * norm
        })
        .collect();
    chosen.sort_by(|&a, &b| stats[b].0.total_cmp(&stats[a].0).then(a.cmp(&b)));
    let frames: Vec<Flag> =
        chosen.par_iter().map(|&i| attracting_flag(&ball[i].1, &dims)).collect::<Result<_, _>>()?;

    let mut flags: Vec<Flag> = Vec::new();
    let mut weights: Vec<usize> = Vec::new();
    for f in frames {
        match flags.iter().position(|g| g.distance(&f) < MERGE_TOL) {
            Some(k) => weights[k] += 1,
            None => {
                flags.push(f);
                weights.push(1);
            }
        }
    }

    let mut warnings = Vec::new();
    let best_gap = chosen.iter().map(|&i| stats[i].1).fold(0.0, f64::max);
    if chosen.len() < 2 || best_gap < 1.0 {
        warnings.push(format!(
            "word ball of radius {radius} is too small to exhibit regularity (largest gap {best_gap:.3})"
        ));
    }
    let transversality = flags
        .iter()
        .map(|a| flags.iter().map(|b| a.transversality_margin(b)).collect())
        .collect();
    Ok(LimitSetSample {
        face,
        radius,
        ball_size: ball.len(),
        selected: chosen.len(),
        flags,
        weights,
        transversality,
        warnings,
    })
}
