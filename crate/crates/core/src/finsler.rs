//! Polyhedral Finsler geometry on the model flat `V`: distances, positivity,
//! Weyl cones and diamonds, Busemann functions of the flat and the cube
//! coordinates of the compactified chamber.

use serde::Serialize;
use thiserror::Error;

use crate::exact::{self, QVec};
use crate::rootsys::{FinslerFunctional, RootSystem};
use crate::thickening::angle;
use crate::weyl::{Elem, FaceType, WeylGroup};

/// Tolerance on distances and wall tests.
pub const DIST_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FinslerError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("segment is not regular for face type {face}: simple root {index} takes {value:e} on its chamber representative")]
    NotRegular { face: String, index: usize, value: f64 },
    #[error("point lies outside the closed chamber: α_{index} = {value:e}")]
    OutsideChamber { index: usize, value: f64 },
    #[error("empty sequence")]
    EmptySequence,
}

impl FinslerError {
    pub fn code(&self) -> &'static str {
        match self {
            Self::DimensionMismatch { .. } => "finsler.dimension_mismatch",
            Self::NotRegular { .. } => "finsler.not_regular",
            Self::OutsideChamber { .. } => "finsler.outside_chamber",
            Self::EmptySequence => "finsler.empty_sequence",
        }
    }
}

/// A chamber-anchored face of the model flat: the face `w · τ_I`, with `w`
/// reduced to its minimal representative in `w W_J`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Placement {
    pub anchor: Elem,
    pub face: FaceType,
}

impl Placement {
    pub fn new(group: &WeylGroup, anchor: Elem, face: FaceType) -> Self {
        // minimal element of the left coset w W_J = (W_J w⁻¹)⁻¹
        let j = face.stabilizer_generators();
        let rep = crate::weyl::min_coset_rep(group, &j, group.inverse(anchor));
        Self { anchor: group.inverse(rep), face }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Distance {
    pub value: f64,
    /// Group elements `w` with `l_w(y − x)` within tolerance of the maximum.
    pub witnesses: Vec<Elem>,
}

/// The Finsler norm `‖v‖ = max_w l_w(v)`, `l_w = l ∘ w⁻¹`, on the model flat.
#[derive(Debug, Clone)]
pub struct FinslerFlat<'a> {
    rs: &'a RootSystem,
    group: &'a WeylGroup,
    functional: FinslerFunctional,
    rows: Vec<Vec<f64>>,
}

impl<'a> FinslerFlat<'a> {
    pub fn new(rs: &'a RootSystem, group: &'a WeylGroup, l: &FinslerFunctional) -> Self {
        let rows = group.elements().map(|w| exact::vec_to_f64(&group.dual_act_q(w, l.row()))).collect();
        Self { rs, group, functional: l.clone(), rows }
    }

    pub fn root_system(&self) -> &RootSystem {
        self.rs
    }

    pub fn group(&self) -> &WeylGroup {
        self.group
    }

    pub fn functional(&self) -> &FinslerFunctional {
        &self.functional
    }

    fn check(&self, v: &[f64]) -> Result<(), FinslerError> {
        if v.len() != self.rs.rank() {
            return Err(FinslerError::DimensionMismatch { expected: self.rs.rank(), got: v.len() });
        }
        Ok(())
    }

    /// `l_w(v)`
    pub fn eval(&self, w: Elem, v: &[f64]) -> f64 {
        self.rows[w.index()].iter().zip(v).map(|(a, b)| a * b).sum()
    }

    pub fn norm(&self, v: &[f64]) -> f64 {
        self.rows.iter().map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum::<f64>()).fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn distance(&self, x: &[f64], y: &[f64]) -> Result<Distance, FinslerError> {
        self.check(x)?;
        self.check(y)?;
        let v: Vec<f64> = y.iter().zip(x).map(|(a, b)| a - b).collect();
        let vals: Vec<f64> = self.group.elements().map(|w| self.eval(w, &v)).collect();
        let value = vals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let witnesses = self.group.elements().filter(|w| vals[w.index()] >= value - DIST_TOL).collect();
        Ok(Distance { value, witnesses })
    }

    pub fn dist(&self, x: &[f64], y: &[f64]) -> f64 {
        let v: Vec<f64> = y.iter().zip(x).map(|(a, b)| a - b).collect();
        self.norm(&v)
    }

    /// The chamber representative `d ∈ Δ` of `v` and an element `u` with `v = u d`.
    pub fn chamber_rep(&self, v: &[f64]) -> (Vec<f64>, Elem) {
        to_chamber(self.rs, self.group, v)
    }

    /// `x ∈ base + ⋃_{u ∈ W_J} (w u) Δ`, decided by the root inequalities
    /// `α(w⁻¹(x − base)) ≥ 0` for positive roots `α` whose support meets `I`.
    pub fn cone_membership(&self, base: &[f64], placement: Placement, x: &[f64]) -> Result<bool, FinslerError> {
        self.check(base)?;
        self.check(x)?;
        let v: Vec<f64> = x.iter().zip(base).map(|(a, b)| a - b).collect();
        Ok(in_star(self.rs, self.group, placement, &v, DIST_TOL))
    }

    /// Face type spanned by the gradient direction of `l`.
    pub fn face_type(&self) -> FaceType {
        let s = self.functional.support(self.rs);
        FaceType::new(self.rs.rank(), &s).expect("nonzero functional has nonempty support")
    }

    /// The placement of the face `τ₊` of the segment `xy`, if the segment is
    /// regular for the face type of `l`.
    pub fn segment_placement(&self, x: &[f64], y: &[f64]) -> Result<Placement, FinslerError> {
        self.check(x)?;
        self.check(y)?;
        let face = self.face_type();
        let v: Vec<f64> = y.iter().zip(x).map(|(a, b)| a - b).collect();
        let (d, u) = self.chamber_rep(&v);
        let scale = norm2(&v).max(1.0);
        for i in face.vertices() {
            let a = self.rs.alpha_f64(i, &d);
            if a <= DIST_TOL * scale {
                return Err(FinslerError::NotRegular { face: face.to_string(), index: i + 1, value: a });
            }
        }
        Ok(Placement::new(self.group, u, face))
    }

    /// `z ∈ V(x, st(τ₊)) ∩ V(y, st(τ₋))`.
    pub fn diamond_membership(&self, x: &[f64], y: &[f64], z: &[f64]) -> Result<bool, FinslerError> {
        let p = self.segment_placement(x, y)?;
        self.check(z)?;
        let zx: Vec<f64> = z.iter().zip(x).map(|(a, b)| a - b).collect();
        let yz: Vec<f64> = y.iter().zip(z).map(|(a, b)| a - b).collect();
        let scale = norm2(&zx).max(norm2(&yz)).max(1.0);
        Ok(in_star(self.rs, self.group, p, &zx, DIST_TOL * scale) && in_star(self.rs, self.group, p, &yz, DIST_TOL * scale))
    }

    /// The functional `ι l = l ∘ (−w₀)`.
    pub fn iota_functional(&self) -> FinslerFunctional {
        let row = exact::neg(&self.group.pullback_row_q(self.functional.row(), self.group.w0()));
        FinslerFunctional::from_row(self.rs, row).expect("same rank")
    }

    /// Mixed Busemann function `b_{τ,p}(y) = max_{u ∈ W_J} l_{wu}(p − y)`.
    pub fn busemann(&self, h: &HoroPointFlat, y: &[f64]) -> f64 {
        let d: Vec<f64> = h.basepoint.iter().zip(y).map(|(a, b)| a - b).collect();
        h.coset(self.group).into_iter().map(|w| self.eval(w, &d)).fold(f64::NEG_INFINITY, f64::max)
    }

    /// `b_{τ,p}(y) − b_{τ,p}(o)`.
    pub fn horofunction(&self, h: &HoroPointFlat, y: &[f64], o: &[f64]) -> Result<f64, FinslerError> {
        self.check(y)?;
        self.check(o)?;
        self.check(&h.basepoint)?;
        Ok(self.busemann(h, y) - self.busemann(h, o))
    }

    /// `y ↦ d(y, x) − d(o, x)`.
    pub fn normalized_distance(&self, x: &[f64], y: &[f64], o: &[f64]) -> f64 {
        self.dist(y, x) - self.dist(o, x)
    }

    /// A direction in the interior of the placed face: `w Σ_{i∈I} ω_i`.
    pub fn face_interior_direction(&self, placement: Placement) -> Vec<f64> {
        let omegas = crate::rootsys::fundamental_vertices(self.rs, &self.functional)
            .unwrap_or_else(|_| self.rs.fundamental_coweights());
        let mut v: QVec = exact::zeros(self.rs.rank());
        for i in placement.face.vertices() {
            v = exact::add(&v, &omegas[i]);
        }
        exact::vec_to_f64(&self.group.act_q(placement.anchor, &v))
    }

    /// Sup over `ball` of `|d_{x_k}(y) − d_{x_k}(o) − (b(y) − b(o))|` for
    /// `x_k = p + k·v`, `v` interior to the placed face, `k = 1..=steps`.
    pub fn horofunction_convergence(&self, h: &HoroPointFlat, o: &[f64], ball: &[Vec<f64>], steps: usize) -> Vec<f64> {
        let v = self.face_interior_direction(h.placement);
        let limits: Vec<f64> = ball.iter().map(|y| self.busemann(h, y) - self.busemann(h, o)).collect();
        (1..=steps)
            .map(|k| {
                let xk: Vec<f64> = h.basepoint.iter().zip(&v).map(|(p, d)| p + k as f64 * d).collect();
                ball.iter()
                    .zip(&limits)
                    .map(|(y, b)| (self.normalized_distance(&xk, y, o) - b).abs())
                    .fold(0.0, f64::max)
            })
            .collect()
    }
}

fn norm2(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Folds `v` into the closed chamber by simple reflections.
pub fn to_chamber(rs: &RootSystem, group: &WeylGroup, v: &[f64]) -> (Vec<f64>, Elem) {
    let mut d = v.to_vec();
    let mut u = group.identity();
    let scale = norm2(v).max(1.0);
    for _ in 0..=4 * group.length(group.w0()) + 4 {
        let Some(i) = (0..rs.rank()).find(|&i| rs.alpha_f64(i, &d) < -1e-14 * scale) else { break };
        d = group.act_f64(group.generator(i), &d);
        u = group.right_mul_gen(u, i);
    }
    (d, u)
}

fn in_star(rs: &RootSystem, group: &WeylGroup, p: Placement, v: &[f64], tol: f64) -> bool {
    let local = group.act_f64(group.inverse(p.anchor), v);
    rs.positive_root_coeffs().zip(rs.positive_roots()).all(|(coeffs, root)| {
        if !p.face.vertices().iter().any(|&i| coeffs[i] != 0) {
            return true;
        }
        let r: Vec<f64> = root.iter().map(|&x| x as f64).collect();
        rs.inner_f64(&r, &local) >= -tol
    })
}

/// A point of the horofunction boundary of the flat: placed face plus a
/// basepoint, meaningful modulo the span of the face's sector.
#[derive(Debug, Clone)]
pub struct HoroPointFlat {
    pub placement: Placement,
    pub basepoint: Vec<f64>,
}

impl HoroPointFlat {
    pub fn new(placement: Placement, basepoint: Vec<f64>) -> Self {
        Self { placement, basepoint }
    }

    /// The chambers `w u Δ`, `u ∈ W_J`, containing the placed face.
    pub fn coset(&self, group: &WeylGroup) -> Vec<Elem> {
        let j = self.placement.face.stabilizer_generators();
        crate::weyl::coset_elements(group, &j, group.identity())
            .into_iter()
            .map(|u| group.mul(self.placement.anchor, u))
            .collect()
    }

    /// Spanning vectors of `span V(0, τ)`.
    pub fn sector_span(&self, rs: &RootSystem, group: &WeylGroup) -> Vec<Vec<f64>> {
        let rays = rs.fundamental_coweights();
        self.placement
            .face
            .vertices()
            .iter()
            .map(|&i| exact::vec_to_f64(&group.act_q(self.placement.anchor, &rays[i])))
            .collect()
    }

    /// Same face and basepoints congruent modulo the sector span.
    pub fn equivalent(&self, other: &Self, rs: &RootSystem, group: &WeylGroup) -> bool {
        if self.placement != other.placement {
            return false;
        }
        let diff: Vec<f64> = self.basepoint.iter().zip(&other.basepoint).map(|(a, b)| a - b).collect();
        residual_after_projection(&self.sector_span(rs, group), &diff) < 1e-9 * norm2(&diff).max(1.0)
    }
}

/// Norm of the component of `v` orthogonal (Euclidean coordinates) to the span.
fn residual_after_projection(span: &[Vec<f64>], v: &[f64]) -> f64 {
    let n = v.len();
    let k = span.len();
    let a = nalgebra::DMatrix::from_fn(n, k, |r, c| span[c][r]);
    let b = nalgebra::DVector::from_column_slice(v);
    let svd = a.clone().svd(true, true);
    match svd.solve(&b, 1e-12) {
        Ok(x) => (a * x - b).norm(),
        Err(_) => b.norm(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PositivityReport {
    /// `‖v‖ > 0` for all `v ≠ 0`.
    pub metric: bool,
    /// `max_i ∠(θ̄, v_i)` over the chamber rays `v_i`.
    pub chamber_radius: f64,
    /// `max_w ∠(w θ̄, θ̄)`.
    pub orbit_max_angle: f64,
    /// The radius criterion `chamber_radius < π/2`.
    pub radius_criterion: bool,
    /// Basis of `{v : ‖v‖ = 0}` (common kernel of all `l_w`).
    pub degenerate_subspace: Vec<Vec<String>>,
}

/// Decides whether `‖·‖` is a norm or only a seminorm.
pub fn check_metric_positivity(rs: &RootSystem, group: &WeylGroup, l: &FinslerFunctional) -> PositivityReport {
    let theta = exact::vec_to_f64(&l.gradient(rs));
    let rays: Vec<Vec<f64>> = rs.fundamental_coweights().iter().map(|r| exact::vec_to_f64(r)).collect();
    let chamber_radius = rays.iter().map(|r| angle(rs, &theta, r)).fold(0.0, f64::max);
    let orbit_max_angle = group.elements().map(|w| angle(rs, &group.act_f64(w, &theta), &theta)).fold(0.0, f64::max);
    let mut rows: Vec<QVec> = group.elements().map(|w| group.dual_act_q(w, l.row())).collect();
    rows.sort();
    rows.dedup();
    let kernel = exact::nullspace(&rows, rs.rank());
    PositivityReport {
        metric: kernel.is_empty(),
        chamber_radius,
        orbit_max_angle,
        radius_criterion: chamber_radius < std::f64::consts::FRAC_PI_2 - 1e-12,
        degenerate_subspace: kernel.iter().map(|v| v.iter().map(exact::format_rat).collect()).collect(),
    }
}

/// A coordinate of the compactified chamber `[0, ∞]^n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "lowercase")]
pub enum Coord {
    Finite(f64),
    Infinite,
    /// The sample neither settles nor grows steadily.
    Undetermined,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompactifiedCoords {
    pub coords: Vec<Coord>,
}

impl CompactifiedCoords {
    pub fn is_interior(&self) -> bool {
        self.coords.iter().all(|c| matches!(c, Coord::Finite(_)))
    }

    pub fn is_determined(&self) -> bool {
        !self.coords.iter().any(|c| matches!(c, Coord::Undetermined))
    }

    /// Equality of limit points to tolerance; undetermined coordinates never agree.
    pub fn same_limit(&self, other: &Self, tol: f64) -> bool {
        self.coords.len() == other.coords.len()
            && self.coords.iter().zip(&other.coords).all(|(a, b)| match (a, b) {
                (Coord::Finite(x), Coord::Finite(y)) => (x - y).abs() <= tol * x.abs().max(y.abs()).max(1.0),
                (Coord::Infinite, Coord::Infinite) => true,
                _ => false,
            })
    }
}

fn alpha_coords(rs: &RootSystem, x: &[f64]) -> Result<Vec<f64>, FinslerError> {
    if x.len() != rs.rank() {
        return Err(FinslerError::DimensionMismatch { expected: rs.rank(), got: x.len() });
    }
    let scale = norm2(x).max(1.0);
    (0..rs.rank())
        .map(|i| {
            let a = rs.alpha_f64(i, x);
            if a < -DIST_TOL * scale {
                Err(FinslerError::OutsideChamber { index: i + 1, value: a })
            } else {
                Ok(a.max(0.0))
            }
        })
        .collect()
}

/// `α⃗(x) = (α_1(x), …, α_n(x))` for a point of the closed chamber.
pub fn compactified_coords(rs: &RootSystem, x: &[f64]) -> Result<CompactifiedCoords, FinslerError> {
    Ok(CompactifiedCoords { coords: alpha_coords(rs, x)?.into_iter().map(Coord::Finite).collect() })
}

/// Tail verdict for each coordinate of a sequence in the closed chamber.
///
/// A coordinate converges when its last step is below `tol` (relative) and
/// the tail steps do not grow; it diverges when the tail is increasing with
/// steps that stay bounded below by half the first tail step.
pub fn sequence_limit(rs: &RootSystem, seq: &[Vec<f64>], tol: f64) -> Result<CompactifiedCoords, FinslerError> {
    if seq.is_empty() {
        return Err(FinslerError::EmptySequence);
    }
    let values: Vec<Vec<f64>> = seq.iter().map(|x| alpha_coords(rs, x)).collect::<Result<_, _>>()?;
    let m = values.len();
    let start = m / 2;
    let coords = (0..rs.rank())
        .map(|i| {
            let tail: Vec<f64> = values[start..].iter().map(|v| v[i]).collect();
            let last = *tail.last().expect("nonempty");
            if tail.len() < 2 {
                return Coord::Undetermined;
            }
            let steps: Vec<f64> = tail.windows(2).map(|w| w[1] - w[0]).collect();
            let last_step = steps.last().copied().unwrap_or(0.0).abs();
            let steps_shrink = steps.windows(2).all(|w| w[1].abs() <= w[0].abs() + tol);
            if last_step <= tol * last.abs().max(1.0) && steps_shrink {
                Coord::Finite(last)
            } else if steps.iter().all(|&s| s > 0.0) && steps.iter().all(|&s| s >= 0.5 * steps[0]) {
                Coord::Infinite
            } else {
                Coord::Undetermined
            }
        })
        .collect();
    Ok(CompactifiedCoords { coords })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;
    use crate::weyl::enumerate_weyl;
    use std::f64::consts::FRAC_PI_2;

    fn setup(tag: &str) -> (RootSystem, WeylGroup) {
        let rs = RootSystem::from_tag(tag).unwrap();
        let g = enumerate_weyl(&rs).unwrap();
        (rs, g)
    }

    #[test]
    fn distance_to_fundamental_vertex() {
        let (rs, g) = setup("A2");
        let l = FinslerFunctional::rho(&rs);
        let f = FinslerFlat::new(&rs, &g, &l);
        let w = crate::rootsys::fundamental_vertices(&rs, &l).unwrap();
        let w1 = exact::vec_to_f64(&w[0]);
        let d = f.distance(&[0.0, 0.0], &w1).unwrap();
        assert!((d.value - 1.0).abs() < 1e-12);
        assert!(d.witnesses.contains(&g.identity()));
        assert_eq!(f.distance(&w1, &w1).unwrap().value, 0.0);
    }

    #[test]
    fn positivity_verdicts() {
        let (rs, g) = setup("A2");
        let r = check_metric_positivity(&rs, &g, &FinslerFunctional::rho(&rs));
        assert!(r.metric && r.radius_criterion);
        assert!(r.degenerate_subspace.is_empty());

        let (rs, g) = setup("A1xA1");
        let l = FinslerFunctional::from_weight_coords(&rs, &[int(1), int(0)]).unwrap();
        let r = check_metric_positivity(&rs, &g, &l);
        assert!(!r.metric && !r.radius_criterion);
        assert!((r.chamber_radius - FRAC_PI_2).abs() < 1e-12);
        assert_eq!(r.degenerate_subspace, vec![vec!["0".to_string(), "1".to_string()]]);

        // irreducible, singular direction: still a metric
        let (rs, g) = setup("B2");
        let l = FinslerFunctional::from_weight_coords(&rs, &[int(0), int(1)]).unwrap();
        let r = check_metric_positivity(&rs, &g, &l);
        assert!(r.metric && r.radius_criterion);
    }

    #[test]
    fn cone_tip_and_chambers() {
        let (rs, g) = setup("A2");
        let f = FinslerFlat::new(&rs, &g, &FinslerFunctional::rho(&rs));
        let face = FaceType::new(2, &[0]).unwrap();
        for w in g.elements() {
            let p = Placement::new(&g, w, face);
            let base = [0.3, -0.2];
            assert!(f.cone_membership(&base, p, &base).unwrap());
            // an interior point of w Δ
            let inner = g.act_f64(w, &[1.0, 1.0]);
            let x: Vec<f64> = base.iter().zip(&inner).map(|(a, b)| a + b).collect();
            assert!(f.cone_membership(&base, p, &x).unwrap());
        }
    }

    #[test]
    fn placement_normalizes_anchor() {
        let (_, g) = setup("A2");
        let face = FaceType::new(2, &[0]).unwrap();
        let s2 = g.generator(1);
        assert_eq!(Placement::new(&g, s2, face).anchor, g.identity());
    }

    #[test]
    fn diamond_endpoints_and_midpoint() {
        let (rs, g) = setup("A2");
        let f = FinslerFlat::new(&rs, &g, &FinslerFunctional::rho(&rs));
        let x = [0.1, 0.2];
        let y = [2.0, 1.5];
        for z in [x, y, [1.05, 0.85]] {
            assert!(f.diamond_membership(&x, &y, &z).unwrap());
        }
        assert!(!f.diamond_membership(&x, &y, &[3.0, 0.0]).unwrap());
        // y − x on a wall
        assert!(matches!(f.diamond_membership(&x, &[1.1, 0.7], &x), Err(FinslerError::NotRegular { .. })));
    }

    #[test]
    fn chamber_folding() {
        let (rs, g) = setup("B3");
        let v = [-0.3, 1.7, -2.2];
        let (d, u) = to_chamber(&rs, &g, &v);
        assert!(rs.in_chamber_f64(&d, 1e-12));
        let back = g.act_f64(u, &d);
        for (a, b) in back.iter().zip(&v) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn busemann_of_chamber_is_linear() {
        let (rs, g) = setup("A2");
        let f = FinslerFlat::new(&rs, &g, &FinslerFunctional::rho(&rs));
        let h = HoroPointFlat::new(Placement::new(&g, g.identity(), FaceType::chamber(2)), vec![0.0, 0.0]);
        let o = [0.0, 0.0];
        let a = f.horofunction(&h, &[1.0, 0.0], &o).unwrap();
        let b = f.horofunction(&h, &[0.0, 1.0], &o).unwrap();
        let c = f.horofunction(&h, &[2.0, 3.0], &o).unwrap();
        assert!((c - (2.0 * a + 3.0 * b)).abs() < 1e-12);
    }

    #[test]
    fn busemann_shift_along_sector() {
        let (rs, g) = setup("A2");
        let f = FinslerFlat::new(&rs, &g, &FinslerFunctional::rho(&rs));
        let face = FaceType::new(2, &[0]).unwrap();
        let pl = Placement::new(&g, g.generator(0), face);
        let h = HoroPointFlat::new(pl, vec![0.2, -0.4]);
        let span = h.sector_span(&rs, &g);
        let shifted: Vec<f64> = h.basepoint.iter().zip(&span[0]).map(|(p, s)| p + 1.7 * s).collect();
        let h2 = HoroPointFlat::new(pl, shifted);
        assert!(h.equivalent(&h2, &rs, &g));
        let ys = [[0.0, 0.0], [1.0, -2.0], [3.5, 0.25]];
        let diffs: Vec<f64> = ys.iter().map(|y| f.busemann(&h2, y) - f.busemann(&h, y)).collect();
        for d in &diffs {
            assert!((d - diffs[0]).abs() < 1e-12);
        }
        let h3 = HoroPointFlat::new(pl, vec![1.2, 0.0]);
        assert!(!h.equivalent(&h3, &rs, &g));
    }

    #[test]
    fn sector_sequence_converges() {
        let (rs, g) = setup("A2");
        let f = FinslerFlat::new(&rs, &g, &FinslerFunctional::rho(&rs));
        let ball: Vec<Vec<f64>> = (0..40)
            .map(|k| {
                let t = k as f64 * std::f64::consts::TAU / 40.0;
                vec![3.0 * t.cos(), 3.0 * t.sin()]
            })
            .collect();
        let face = FaceType::new(2, &[1]).unwrap();
        let h = HoroPointFlat::new(Placement::new(&g, g.w0(), face), vec![0.0, 0.0]);
        let disc = f.horofunction_convergence(&h, &[0.0, 0.0], &ball, 30);
        assert!(disc.windows(2).all(|w| w[1] <= w[0] + 1e-12));
        assert!(*disc.last().unwrap() < 1e-9);
    }

    #[test]
    fn coords_of_points_and_sequences() {
        let (rs, _) = setup("A2");
        let c = compactified_coords(&rs, &[1.0, 1.0]).unwrap();
        assert!(c.is_interior());
        assert!(compactified_coords(&rs, &[1.0, -1.0]).is_err());

        let l = FinslerFunctional::rho(&rs);
        let w = crate::rootsys::fundamental_vertices(&rs, &l).unwrap();
        let w1 = exact::vec_to_f64(&w[0]);
        let w2 = exact::vec_to_f64(&w[1]);
        let seq = |extra: f64, decay: bool| -> Vec<Vec<f64>> {
            (1..=60)
                .map(|k| {
                    let k = k as f64;
                    let e = if decay { extra + 1.0 / (k * k * k) } else { extra };
                    vec![k * w1[0] + e * w2[0], k * w1[1] + e * w2[1]]
                })
                .collect()
        };
        let a = sequence_limit(&rs, &seq(0.0, false), 1e-6).unwrap();
        assert_eq!(a.coords, vec![Coord::Infinite, Coord::Finite(0.0)]);
        let b = sequence_limit(&rs, &seq(1.0, false), 1e-6).unwrap();
        let b2 = sequence_limit(&rs, &seq(1.0, true), 1e-6).unwrap();
        assert!(b.same_limit(&b2, 1e-4));
        assert!(!a.same_limit(&b, 1e-4));
    }
}
