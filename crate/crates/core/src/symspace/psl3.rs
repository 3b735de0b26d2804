//! The rank-two diagonal subgroup `ℤ² < PSL(3,ℝ)`: its limit sets and the
//! domain obtained by removing the Furstenberg thickening of the limit set.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use super::flags::{complement, relative_position, Flag};
use super::limitset::LimitSetSample;
use super::{SlMatrix, SymspaceError, AMBIGUITY_TOL, RANK_TOL};
use crate::rootsys::RootSystem;
use crate::thickening::{complement as thickening_complement, Thickening};
use crate::weyl::{cosets, enumerate_weyl, FaceType, WeylGroup};

/// `a = diag(2, 1, 1/2)` and `b = diag(1, 3, 1/3)`.
pub fn generators() -> Vec<SlMatrix> {
    vec![
        SlMatrix::diag(&[2.0, 1.0, 0.5]).expect("invertible"),
        SlMatrix::diag(&[1.0, 3.0, 1.0 / 3.0]).expect("invertible"),
    ]
}

pub fn point_type() -> FaceType {
    FaceType::new(2, &[0]).expect("valid")
}

pub fn line_type() -> FaceType {
    FaceType::new(2, &[1]).expect("valid")
}

fn basis(cols: &[usize]) -> DMatrix<f64> {
    DMatrix::from_fn(3, cols.len(), |r, c| f64::from(r == cols[c]))
}

/// `p_i = [e_i]` (0-based `i`).
pub fn point(i: usize) -> Flag {
    Flag::from_columns(&basis(&[i]), &[1]).expect("valid")
}

/// `l_j`, the coordinate line not containing `p_j`.
pub fn line(j: usize) -> Flag {
    let others: Vec<usize> = (0..3).filter(|&k| k != j).collect();
    Flag::from_columns(&basis(&others), &[2]).expect("valid")
}

/// The full flag `(p_i, l_j)`, `i ≠ j`.
pub fn full_flag(i: usize, j: usize) -> Flag {
    assert_ne!(i, j, "p_i lies on l_j only for i ≠ j");
    let k = 3 - i - j;
    Flag::from_columns(&basis(&[i, k, j]), &[1, 2]).expect("valid")
}

/// Limit flags of the three types.
#[derive(Debug, Clone)]
pub struct LimitData {
    pub points: Vec<Flag>,
    pub lines: Vec<Flag>,
    pub full: Vec<Flag>,
}

impl LimitData {
    /// `{p₁,p₂,p₃}`, `{l₁,l₂,l₃}` and `{(p_i, l_j) : i ≠ j}`.
    pub fn expected() -> Self {
        Self {
            points: (0..3).map(point).collect(),
            lines: (0..3).map(line).collect(),
            full: (0..3).flat_map(|i| (0..3).filter(move |&j| j != i).map(move |j| full_flag(i, j))).collect(),
        }
    }

    pub fn from_samples(points: &LimitSetSample, lines: &LimitSetSample, full: &LimitSetSample) -> Self {
        Self { points: points.flags.clone(), lines: lines.flags.clone(), full: full.flags.clone() }
    }

    /// Whether every sampled set equals the expected one at merge tolerance.
    pub fn matches(&self, other: &Self) -> bool {
        let same = |a: &[Flag], b: &[Flag]| {
            a.len() == b.len()
                && a.iter().all(|f| b.iter().any(|g| f.distance(g) < super::MERGE_TOL))
                && b.iter().all(|f| a.iter().any(|g| f.distance(g) < super::MERGE_TOL))
        };
        same(&self.points, &other.points) && same(&self.lines, &other.lines) && same(&self.full, &other.full)
    }
}

/// Thickenings used for each simplex type: the balanced thickening for
/// chambers, the union of `W_J`-cosets it contains for points, and the
/// complement of that for lines.
#[derive(Debug, Clone)]
pub struct Psl3Thickenings {
    pub chamber: Thickening,
    pub point: Thickening,
    pub line: Thickening,
}

impl Psl3Thickenings {
    pub fn from_balanced(group: &WeylGroup, balanced: &Thickening) -> Result<Self, SymspaceError> {
        let inner: Vec<_> = cosets(group, point_type())
            .into_iter()
            .filter(|c| c.elements(group).iter().all(|&w| balanced.contains(w)))
            .flat_map(|c| c.elements(group))
            .collect();
        let point = Thickening::from_elements(group, inner);
        let line = thickening_complement(group, &point).map_err(|e| SymspaceError::Domain(e.to_string()))?;
        Ok(Self { chamber: balanced.clone(), point, line })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Removed,
    InDomain,
}

#[derive(Debug, Clone, Serialize)]
pub struct DomainCheck {
    pub verdict: Verdict,
    /// First limit simplex whose thickening contains the flag.
    pub witness: Option<String>,
    /// `min_j |⟨n_j, p⟩|` over unit normals of the limit lines.
    pub incidence_distance: f64,
}

/// The A₂ example with its Weyl group, thickenings and limit data.
#[derive(Debug, Clone)]
pub struct Psl3Example {
    pub group: WeylGroup,
    pub thickenings: Psl3Thickenings,
    pub limits: LimitData,
}

impl Psl3Example {
    pub fn new(limits: LimitData) -> Result<Self, SymspaceError> {
        let rs = RootSystem::from_tag("A2").expect("valid tag");
        let group = enumerate_weyl(&rs).map_err(|e| SymspaceError::Domain(e.to_string()))?;
        let balanced = Thickening::from_words(&group, &["e", "s1", "s2"]).expect("valid words");
        let thickenings = Psl3Thickenings::from_balanced(&group, &balanced)?;
        Ok(Self { group, thickenings, limits })
    }

    /// Membership of a full flag `(p, l)`, decided twice: by relative
    /// positions against every limit simplex and by incidence of `p` with
    /// the limit lines. Disagreement is an error.
    pub fn membership(&self, sigma: &Flag) -> Result<DomainCheck, SymspaceError> {
        if !sigma.is_full() || sigma.ambient_dim() != 3 {
            return Err(SymspaceError::BadFlag("expected a full flag in ℝ³".into()));
        }
        let witness = self.thickening_witness(sigma)?;
        let dist = self.incidence_distance(sigma);
        let on_line = if dist < RANK_TOL {
            true
        } else if dist <= AMBIGUITY_TOL {
            return Err(SymspaceError::AmbiguousIncidence(dist));
        } else {
            false
        };
        if witness.is_some() != on_line {
            return Err(SymspaceError::Disagreement(format!(
                "thickening says {}, incidence distance {dist:e}",
                if witness.is_some() { "removed" } else { "in domain" }
            )));
        }
        Ok(DomainCheck {
            verdict: if on_line { Verdict::Removed } else { Verdict::InDomain },
            witness,
            incidence_distance: dist,
        })
    }

    fn thickening_witness(&self, sigma: &Flag) -> Result<Option<String>, SymspaceError> {
        let g = &self.group;
        let th = &self.thickenings;
        let families: [(&str, &[Flag], &Thickening); 3] =
            [("point", &self.limits.points, &th.point), ("line", &self.limits.lines, &th.line), ("flag", &self.limits.full, &th.chamber)];
        for (kind, limits, t) in families {
            for (k, tau) in limits.iter().enumerate() {
                let pos = relative_position(g, sigma, tau)?;
                if pos.elements(g).iter().all(|&w| t.contains(w)) {
                    return Ok(Some(format!("{kind} {} at {}", k + 1, pos.format(g))));
                }
            }
        }
        Ok(None)
    }

    fn incidence_distance(&self, sigma: &Flag) -> f64 {
        let p = sigma.level(1).expect("full").column(0).into_owned();
        self.limits
            .lines
            .iter()
            .map(|l| {
                let n = complement(l.level(2).expect("line"));
                n.column(0).dot(&p).abs()
            })
            .fold(f64::INFINITY, f64::min)
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct SweepReport {
    pub samples: usize,
    pub removed: usize,
    pub in_domain: usize,
    /// Flags inside the declared incidence or rank ambiguity band.
    pub ambiguous: usize,
    pub disagreements: usize,
    pub seed: u64,
}

fn unit(v: DVector<f64>) -> DVector<f64> {
    let n = v.norm();
    v / n
}

/// A random full flag; about a third have `p` on a coordinate line and a
/// further ninth have `p` equal to a coordinate point.
pub fn random_flag<R: Rng>(rng: &mut R) -> Flag {
    loop {
        let mut p = DVector::from_fn(3, |_, _| rng.sample::<f64, _>(StandardNormal));
        match rng.random_range(0..9) {
            0..=2 => p[rng.random_range(0..3)] = 0.0,
            3 => {
                let i = rng.random_range(0..3);
                p = DVector::from_fn(3, |r, _| f64::from(r == i));
            }
            _ => {}
        }
        let v = DVector::from_fn(3, |_, _| rng.sample::<f64, _>(StandardNormal));
        if p.norm() < 1e-3 {
            continue;
        }
        let m = DMatrix::from_columns(&[unit(p), v]);
        if let Ok(f) = Flag::from_columns(&m, &[1]).and_then(|_| Flag::from_columns(&m, &[1, 2])) {
            return f;
        }
    }
}

/// Checks the two membership predicates on `samples` seeded random flags.
pub fn domain_sweep(example: &Psl3Example, samples: usize, seed: u64) -> SweepReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = SweepReport { samples, seed, ..Default::default() };
    for _ in 0..samples {
        let f = random_flag(&mut rng);
        match example.membership(&f) {
            Ok(c) if c.verdict == Verdict::Removed => report.removed += 1,
            Ok(_) => report.in_domain += 1,
            Err(SymspaceError::Ambiguous { .. } | SymspaceError::AmbiguousIncidence(_)) => report.ambiguous += 1,
            Err(_) => report.disagreements += 1,
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example() -> Psl3Example {
        Psl3Example::new(LimitData::expected()).unwrap()
    }

    fn flag(p: [f64; 3], q: [f64; 3]) -> Flag {
        let m = DMatrix::from_columns(&[DVector::from_row_slice(&p), DVector::from_row_slice(&q)]);
        Flag::from_columns(&m, &[1, 2]).unwrap()
    }

    #[test]
    fn derived_thickenings() {
        let ex = example();
        let g = &ex.group;
        assert_eq!(ex.thickenings.point.format(g), Thickening::from_words(g, &["e", "s2"]).unwrap().format(g));
        let line = Thickening::from_words(g, &["e", "s1", "s2", "s1 s2"]).unwrap();
        assert_eq!(ex.thickenings.line.format(g), line.format(g));
    }

    #[test]
    fn generic_point_is_in_domain() {
        let ex = example();
        let c = ex.membership(&flag([1.0, 1.0, 1.0], [1.0, 2.0, -0.5])).unwrap();
        assert_eq!(c.verdict, Verdict::InDomain);
        assert!(c.witness.is_none());
    }

    #[test]
    fn point_on_coordinate_line_is_removed() {
        let ex = example();
        let c = ex.membership(&flag([1.0, 1.0, 0.0], [0.2, -1.0, 1.0])).unwrap();
        assert_eq!(c.verdict, Verdict::Removed);
        assert!(c.witness.unwrap().starts_with("line"));
        let c = ex.membership(&flag([0.0, 1.0, 0.0], [1.0, 0.3, 1.0])).unwrap();
        assert_eq!(c.verdict, Verdict::Removed);
    }

    #[test]
    fn near_incidence_is_ambiguous() {
        let ex = example();
        let r = ex.membership(&flag([1.0, 1.0, 1e-7], [0.2, -1.0, 1.0]));
        assert!(matches!(r, Err(SymspaceError::AmbiguousIncidence(_)) | Err(SymspaceError::Ambiguous { .. })));
    }

    #[test]
    fn sampled_limit_sets_match() {
        use crate::symspace::limitset::{limit_set_sample, LimitSetOptions};
        let gens = generators();
        let opts = LimitSetOptions::default();
        let p = limit_set_sample(&gens, 8, point_type(), opts).unwrap();
        let l = limit_set_sample(&gens, 8, line_type(), opts).unwrap();
        let f = limit_set_sample(&gens, 8, FaceType::chamber(2), opts).unwrap();
        assert_eq!((p.flags.len(), l.flags.len(), f.flags.len()), (3, 3, 6));
        assert!(LimitData::from_samples(&p, &l, &f).matches(&LimitData::expected()));
        assert!(p.is_antipodal());
    }

    #[test]
    fn small_sweep_agrees() {
        let r = domain_sweep(&example(), 300, 7);
        assert_eq!(r.disagreements, 0);
        assert!(r.removed > 50 && r.in_domain > 50);
    }
}
