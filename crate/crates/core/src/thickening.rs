//! Thickenings: ideals of the Bruhat order on `W`, their fat/slim/balanced
//! classification, complements, metric thickenings and balanced enumeration.

use std::f64::consts::FRAC_PI_2;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1};
use serde::Serialize;
use thiserror::Error;

use crate::exact;
use crate::rootsys::RootSystem;
use crate::weyl::{Elem, FaceType, WeylError, WeylGroup};

/// Genericity tolerance on angles.
pub const ANGLE_TOL: f64 = 1e-9;
/// Largest group order handled by exhaustive balanced enumeration.
pub const EXHAUSTIVE_BUDGET: usize = 48;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ThickeningError {
    #[error("subset is not an ideal of the Bruhat order (missing {missing} below {member})")]
    NotIdeal { member: String, missing: String },
    #[error("face type {0} is not ι-invariant")]
    NotIotaInvariant(String),
    #[error("invalid direction: {0}")]
    InvalidDirection(String),
    #[error("radius {0} outside [0, π]")]
    InvalidRadius(f64),
    #[error("a seed is required for sampling mode (|W| = {0} exceeds the exhaustive budget)")]
    SeedRequired(usize),
    #[error(transparent)]
    Weyl(#[from] WeylError),
}

impl ThickeningError {
    pub fn code(&self) -> &'static str {
        match self {
            Self::NotIdeal { .. } => "thickening.not_ideal",
            Self::NotIotaInvariant(_) => "thickening.not_iota_invariant",
            Self::InvalidDirection(_) => "thickening.invalid_direction",
            Self::InvalidRadius(_) => "thickening.invalid_radius",
            Self::SeedRequired(_) => "thickening.seed_required",
            Self::Weyl(e) => e.code(),
        }
    }
}

/// A subset of an enumerated Weyl group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Thickening {
    members: Vec<bool>,
}

impl Thickening {
    pub fn empty(group: &WeylGroup) -> Self {
        Self { members: vec![false; group.order()] }
    }

    pub fn full(group: &WeylGroup) -> Self {
        Self { members: vec![true; group.order()] }
    }

    pub fn from_elements(group: &WeylGroup, elems: impl IntoIterator<Item = Elem>) -> Self {
        let mut t = Self::empty(group);
        for e in elems {
            t.members[e.index()] = true;
        }
        t
    }

    pub fn from_words<S: AsRef<str>>(group: &WeylGroup, words: &[S]) -> Result<Self, ThickeningError> {
        let elems = words.iter().map(|w| group.parse_word(w.as_ref())).collect::<Result<Vec<_>, _>>()?;
        Ok(Self::from_elements(group, elems))
    }

    pub fn contains(&self, w: Elem) -> bool {
        self.members[w.index()]
    }

    pub fn len(&self) -> usize {
        self.members.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn elements(&self) -> Vec<Elem> {
        (0..self.members.len()).filter(|&i| self.members[i]).map(Elem::from_index).collect()
    }

    /// Members sorted by length, then by canonical word.
    pub fn sorted_elements(&self, group: &WeylGroup) -> Vec<Elem> {
        let mut els = self.elements();
        els.sort_by(|&a, &b| (group.length(a), group.word(a)).cmp(&(group.length(b), group.word(b))));
        els
    }

    pub fn words(&self, group: &WeylGroup) -> Vec<String> {
        self.sorted_elements(group).into_iter().map(|w| group.format_word(w)).collect()
    }

    /// `w₀ · Th`
    pub fn translate_by_w0(&self, group: &WeylGroup) -> Self {
        Self::from_elements(group, self.elements().into_iter().map(|w| group.mul(group.w0(), w)))
    }

    pub fn format(&self, group: &WeylGroup) -> String {
        format!("{{{}}}", self.words(group).join(", "))
    }
}

/// Bruhat lower covers of every element, used for ideal checks.
#[derive(Debug, Clone)]
pub struct BruhatCovers {
    lower: Vec<Vec<Elem>>,
    upper: Vec<Vec<Elem>>,
}

impl BruhatCovers {
    pub fn new(group: &WeylGroup) -> Self {
        let lower = group.lower_covers();
        let mut upper = vec![Vec::new(); group.order()];
        for (w, covers) in lower.iter().enumerate() {
            for c in covers {
                upper[c.index()].push(Elem::from_index(w));
            }
        }
        Self { lower, upper }
    }

    pub fn lower(&self, w: Elem) -> &[Elem] {
        &self.lower[w.index()]
    }

    pub fn upper(&self, w: Elem) -> &[Elem] {
        &self.upper[w.index()]
    }
}

/// First `(member, missing)` pair violating downward closure.
pub fn ideal_violation(covers: &BruhatCovers, th: &Thickening) -> Option<(Elem, Elem)> {
    th.elements()
        .into_iter()
        .find_map(|w| covers.lower(w).iter().find(|c| !th.contains(**c)).map(|&c| (w, c)))
}

pub fn is_left_invariant(group: &WeylGroup, th: &Thickening, face: FaceType) -> bool {
    let gens = face.stabilizer_generators();
    th.elements().into_iter().all(|w| gens.iter().all(|&j| th.contains(group.left_mul_gen(j, w))))
}

#[derive(Debug, Clone, Serialize)]
pub struct FaceInvariance {
    pub face: String,
    pub left_invariant: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Classification {
    pub elements: Vec<String>,
    pub size: usize,
    pub ideal: bool,
    pub fat: bool,
    pub slim: bool,
    pub balanced: bool,
    /// Present when the subset is not an ideal: `[member, missing]`.
    pub ideal_counterexample: Option<[String; 2]>,
    pub invariance: Vec<FaceInvariance>,
}

pub fn validate_thickening(group: &WeylGroup, th: &Thickening) -> Classification {
    let covers = BruhatCovers::new(group);
    classify_with(group, &covers, th)
}

pub fn classify_with(group: &WeylGroup, covers: &BruhatCovers, th: &Thickening) -> Classification {
    let violation = ideal_violation(covers, th);
    let w0th = th.translate_by_w0(group);
    let fat = group.elements().all(|w| th.contains(w) || w0th.contains(w));
    let slim = group.elements().all(|w| !(th.contains(w) && w0th.contains(w)));
    let ideal = violation.is_none();
    let invariance = FaceType::all(group.rank())
        .into_iter()
        .filter(|f| f.is_iota_invariant(group))
        .map(|f| FaceInvariance { face: f.to_string(), left_invariant: is_left_invariant(group, th, f) })
        .collect();
    Classification {
        elements: th.words(group),
        size: th.len(),
        ideal,
        fat,
        slim,
        balanced: ideal && fat && slim,
        ideal_counterexample: violation.map(|(m, c)| [group.format_word(m), group.format_word(c)]),
        invariance,
    }
}

/// `Th^c := w₀ (W − Th)`.
pub fn complement(group: &WeylGroup, th: &Thickening) -> Result<Thickening, ThickeningError> {
    let covers = BruhatCovers::new(group);
    if let Some((m, c)) = ideal_violation(&covers, th) {
        return Err(ThickeningError::NotIdeal { member: group.format_word(m), missing: group.format_word(c) });
    }
    Ok(Thickening::from_elements(
        group,
        group.elements().filter(|&w| !th.contains(w)).map(|w| group.mul(group.w0(), w)),
    ))
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundaryWarning {
    pub element: String,
    pub angle: f64,
}

#[derive(Debug, Clone)]
pub struct MetricThickening {
    pub thickening: Thickening,
    /// Elements whose angle lies within [`ANGLE_TOL`] of the radius.
    pub warnings: Vec<(Elem, f64)>,
    pub angles: Vec<f64>,
}

fn normalized_chamber_vector(rs: &RootSystem, v: &[f64], name: &str) -> Result<Vec<f64>, ThickeningError> {
    if v.len() != rs.rank() {
        return Err(ThickeningError::InvalidDirection(format!("{name} has {} coordinates, expected {}", v.len(), rs.rank())));
    }
    let norm = rs.norm_f64(v);
    if !(norm > 1e-12) || !norm.is_finite() {
        return Err(ThickeningError::InvalidDirection(format!("{name} is zero")));
    }
    let u: Vec<f64> = v.iter().map(|x| x / norm).collect();
    if !rs.in_chamber_f64(&u, ANGLE_TOL) {
        return Err(ThickeningError::InvalidDirection(format!("{name} lies outside the closed chamber")));
    }
    Ok(u)
}

/// Spherical angle between two vectors of `V`.
pub fn angle(rs: &RootSystem, a: &[f64], b: &[f64]) -> f64 {
    let c = rs.inner_f64(a, b) / (rs.norm_f64(a) * rs.norm_f64(b));
    c.clamp(-1.0, 1.0).acos()
}

/// `Th = {w : ∠(w θ̃, θ̃₀) ≤ r}`. Both directions must lie in the closed
/// chamber; they are normalized here.
pub fn metric_thickening(
    rs: &RootSystem,
    group: &WeylGroup,
    theta0: &[f64],
    theta: &[f64],
    r: f64,
) -> Result<MetricThickening, ThickeningError> {
    if !(0.0..=std::f64::consts::PI).contains(&r) {
        return Err(ThickeningError::InvalidRadius(r));
    }
    let t0 = normalized_chamber_vector(rs, theta0, "theta0")?;
    let t = normalized_chamber_vector(rs, theta, "theta")?;
    let angles: Vec<f64> = group.elements().map(|w| angle(rs, &group.act_f64(w, &t), &t0)).collect();
    let thickening = Thickening::from_elements(
        group,
        group.elements().filter(|w| angles[w.index()] <= r),
    );
    let warnings = group
        .elements()
        .filter(|w| (angles[w.index()] - r).abs() < ANGLE_TOL)
        .map(|w| (w, angles[w.index()]))
        .collect();
    Ok(MetricThickening { thickening, warnings, angles })
}

/// An ι-invariant direction in the open face `τ_I`: the normalized sum of
/// `v_i + v_ι(i)` over `i ∈ I`, where `v_i` are the chamber rays.
pub fn face_direction(rs: &RootSystem, group: &WeylGroup, face: FaceType) -> Vec<f64> {
    let rays = rs.fundamental_coweights();
    let mut v = exact::zeros(rs.rank());
    for i in face.vertices() {
        v = exact::add(&v, &rays[i]);
        v = exact::add(&v, &rays[group.iota()[i]]);
    }
    let f = exact::vec_to_f64(&v);
    let n = rs.norm_f64(&f);
    f.iter().map(|x| x / n).collect()
}

/// A random direction in the open chamber: positive exponential weights on
/// the chamber rays.
pub fn random_chamber_direction<R: rand::Rng>(rs: &RootSystem, rng: &mut R) -> Vec<f64> {
    let rays: Vec<Vec<f64>> = rs.fundamental_coweights().iter().map(|r| exact::vec_to_f64(r)).collect();
    let mut v = vec![0.0; rs.rank()];
    for ray in &rays {
        let n = rs.norm_f64(ray);
        let c: f64 = Exp1.sample(rng);
        for (x, r) in v.iter_mut().zip(ray) {
            *x += c * r / n;
        }
    }
    let n = rs.norm_f64(&v);
    v.iter().map(|x| x / n).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EnumerationMode {
    Exhaustive,
    Sampled,
}

#[derive(Debug, Clone)]
pub struct BalancedEnumeration {
    pub mode: EnumerationMode,
    pub thickenings: Vec<Thickening>,
    /// Sampling attempts discarded because of a near-`π/2` angle.
    pub degenerate_samples: usize,
}

#[derive(Debug, Clone, Copy)]
pub struct BalancedOptions {
    pub seed: Option<u64>,
    pub samples: usize,
}

impl Default for BalancedOptions {
    fn default() -> Self {
        Self { seed: None, samples: 200 }
    }
}

/// All `W_J`-left-invariant balanced thickenings for an ι-invariant face type.
///
/// Exhaustive for `|W| ≤ 48`; otherwise samples generic metric thickenings
/// at `r = π/2` (requires a seed).
pub fn enumerate_balanced(
    rs: &RootSystem,
    group: &WeylGroup,
    face: FaceType,
    opts: BalancedOptions,
) -> Result<BalancedEnumeration, ThickeningError> {
    if !face.is_iota_invariant(group) {
        return Err(ThickeningError::NotIotaInvariant(face.to_string()));
    }
    if group.order() <= EXHAUSTIVE_BUDGET {
        let covers = BruhatCovers::new(group);
        let thickenings = balanced_search(group, &covers, face);
        return Ok(BalancedEnumeration { mode: EnumerationMode::Exhaustive, thickenings, degenerate_samples: 0 });
    }
    let seed = opts.seed.ok_or(ThickeningError::SeedRequired(group.order()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let theta0 = face_direction(rs, group, face);
    let mut found: Vec<Thickening> = Vec::new();
    let mut degenerate = 0;
    for _ in 0..opts.samples {
        let theta = random_chamber_direction(rs, &mut rng);
        let m = metric_thickening(rs, group, &theta0, &theta, FRAC_PI_2)?;
        if !m.warnings.is_empty() {
            degenerate += 1;
            continue;
        }
        if !found.contains(&m.thickening) {
            found.push(m.thickening);
        }
    }
    found.sort();
    Ok(BalancedEnumeration { mode: EnumerationMode::Sampled, thickenings: found, degenerate_samples: degenerate })
}

/// Depth-first search over membership assignments. Each branch fixes one
/// undecided element and propagates the forced consequences: downward
/// closure, exactly one of `w` and `w₀w`, and left `W_J`-invariance.
fn balanced_search(group: &WeylGroup, covers: &BruhatCovers, face: FaceType) -> Vec<Thickening> {
    let gens = face.stabilizer_generators();
    let mut order: Vec<Elem> = group.elements().collect();
    order.sort_by_key(|&w| (group.length(w), w));
    let mut out = Vec::new();
    let state = vec![None; group.order()];
    search(group, covers, &gens, &order, state, &mut out);
    out.sort();
    out
}

fn propagate(
    group: &WeylGroup,
    covers: &BruhatCovers,
    gens: &[usize],
    state: &mut [Option<bool>],
    start: Elem,
    value: bool,
) -> bool {
    let mut stack = vec![(start, value)];
    while let Some((w, v)) = stack.pop() {
        match state[w.index()] {
            Some(cur) if cur == v => continue,
            Some(_) => return false,
            None => state[w.index()] = Some(v),
        }
        stack.push((group.mul(group.w0(), w), !v));
        for &j in gens {
            stack.push((group.left_mul_gen(j, w), v));
        }
        let next = if v { covers.lower(w) } else { covers.upper(w) };
        stack.extend(next.iter().map(|&c| (c, v)));
    }
    true
}

fn search(
    group: &WeylGroup,
    covers: &BruhatCovers,
    gens: &[usize],
    order: &[Elem],
    state: Vec<Option<bool>>,
    out: &mut Vec<Thickening>,
) {
    let Some(&w) = order.iter().find(|w| state[w.index()].is_none()) else {
        out.push(Thickening::from_elements(group, group.elements().filter(|w| state[w.index()] == Some(true))));
        return;
    };
    for v in [true, false] {
        let mut s = state.clone();
        if propagate(group, covers, gens, &mut s, w, v) {
            search(group, covers, gens, order, s, out);
        }
    }
}

/// Searches for a metric realization of `th` at `r = π/2` with `θ̃₀`
/// ι-invariant in the closed chamber and `θ̃` random in the open chamber.
/// Returns `(θ̃₀, θ̃)` on success.
pub fn find_metric_realization(
    rs: &RootSystem,
    group: &WeylGroup,
    th: &Thickening,
    tries: usize,
    seed: u64,
) -> Option<(Vec<f64>, Vec<f64>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rays: Vec<Vec<f64>> = rs.fundamental_coweights().iter().map(|r| exact::vec_to_f64(r)).collect();
    let faces: Vec<FaceType> = FaceType::all(rs.rank()).into_iter().filter(|f| f.is_iota_invariant(group)).collect();
    for k in 0..tries {
        let face = faces[k % faces.len()];
        let mut t0 = vec![0.0; rs.rank()];
        for i in face.vertices() {
            let c: f64 = Exp1.sample(&mut rng);
            for j in [i, group.iota()[i]] {
                let n = rs.norm_f64(&rays[j]);
                for (x, r) in t0.iter_mut().zip(&rays[j]) {
                    *x += c * r / n;
                }
            }
        }
        let theta = random_chamber_direction(rs, &mut rng);
        let Ok(m) = metric_thickening(rs, group, &t0, &theta, FRAC_PI_2) else { continue };
        if m.warnings.is_empty() && m.thickening == *th {
            return Some((t0, theta));
        }
    }
    None
}
