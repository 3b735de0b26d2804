//! Exact polytopes: the `W`-invariant unit ball `B`, its dual `B*`, face
//! lattices, the duality map `⋆`, and the cube structure of `Δ* ∩ B*`.

use std::collections::{BTreeSet, HashMap, HashSet};

use itertools::Itertools;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exact::{self, QVec, Rat};
use crate::rootsys::{fundamental_vertices, FinslerFunctional, RootSystem, RootSystemError};
use crate::weyl::{Elem, WeylGroup};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PolytopeError {
    #[error(transparent)]
    RootSystem(#[from] RootSystemError),
    #[error("polytope is unbounded or not full-dimensional")]
    Degenerate,
    #[error("origin is not an interior point")]
    OriginNotInterior,
    #[error("vertex and half-space descriptions disagree: {0}")]
    CrossValidation(String),
}

impl PolytopeError {
    pub fn code(&self) -> &'static str {
        match self {
            Self::RootSystem(e) => e.code(),
            Self::Degenerate => "polytope.degenerate",
            Self::OriginNotInterior => "polytope.origin_not_interior",
            Self::CrossValidation(_) => "polytope.cross_validation",
        }
    }
}

/// `normal · x ≤ offset`
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Halfspace {
    pub normal: QVec,
    pub offset: Rat,
}

impl Halfspace {
    pub fn new(normal: QVec, offset: Rat) -> Self {
        Self { normal, offset }
    }

    pub fn slack(&self, x: &[Rat]) -> Rat {
        &self.offset - exact::dot(&self.normal, x)
    }
}

/// A full-dimensional bounded polytope with both descriptions.
#[derive(Debug, Clone)]
pub struct Polytope {
    dim: usize,
    facets: Vec<Halfspace>,
    /// Index of each facet in the half-space list it was built from.
    source: Vec<usize>,
    vertices: Vec<QVec>,
    /// `incidence[f]` = sorted vertex indices on facet `f`.
    incidence: Vec<Vec<usize>>,
}

/// Vertices of `{x : h.normal · x ≤ h.offset ∀h}` by intersecting every
/// `dim`-subset of hyperplanes and keeping the feasible points.
pub fn enumerate_vertices(dim: usize, hs: &[Halfspace]) -> Vec<QVec> {
    let mut seen: HashSet<QVec> = HashSet::new();
    let mut out = Vec::new();
    for combo in (0..hs.len()).combinations(dim) {
        let a: Vec<QVec> = combo.iter().map(|&i| hs[i].normal.clone()).collect();
        let b: Vec<Rat> = combo.iter().map(|&i| hs[i].offset.clone()).collect();
        let Some(x) = exact::solve(&a, &b) else { continue };
        if seen.contains(&x) {
            continue;
        }
        if hs.iter().all(|h| h.slack(&x) >= Rat::zero()) {
            seen.insert(x.clone());
            out.push(x);
        }
    }
    out.sort();
    out
}

impl Polytope {
    /// Builds from an H-representation; redundant inequalities are dropped.
    pub fn from_halfspaces(dim: usize, hs: &[Halfspace]) -> Result<Self, PolytopeError> {
        let vertices = enumerate_vertices(dim, hs);
        Self::from_parts(dim, hs, vertices)
    }

    /// Builds from an H-representation together with a claimed vertex set;
    /// every claimed vertex is certified (feasible with `dim` independent
    /// tight constraints).
    pub fn from_certified_vertices(dim: usize, hs: &[Halfspace], vertices: Vec<QVec>) -> Result<Self, PolytopeError> {
        for v in &vertices {
            if let Some(h) = hs.iter().find(|h| h.slack(v) < Rat::zero()) {
                return Err(PolytopeError::CrossValidation(format!(
                    "claimed vertex {} violates {}",
                    fmt_vec(v),
                    fmt_vec(&h.normal)
                )));
            }
            let tight: Vec<QVec> = hs.iter().filter(|h| h.slack(v).is_zero()).map(|h| h.normal.clone()).collect();
            if exact::rank(&tight) != dim {
                return Err(PolytopeError::CrossValidation(format!("{} is not a vertex", fmt_vec(v))));
            }
        }
        let mut vertices = vertices;
        vertices.sort();
        vertices.dedup();
        Self::from_parts(dim, hs, vertices)
    }

    fn from_parts(dim: usize, hs: &[Halfspace], vertices: Vec<QVec>) -> Result<Self, PolytopeError> {
        let refs: Vec<&QVec> = vertices.iter().collect();
        if vertices.len() <= dim || exact::affine_dim(&refs) != dim as isize {
            return Err(PolytopeError::Degenerate);
        }
        let mut facets = Vec::new();
        let mut source = Vec::new();
        let mut incidence = Vec::new();
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        for (k, h) in hs.iter().enumerate() {
            let tight: Vec<usize> = (0..vertices.len()).filter(|&v| h.slack(&vertices[v]).is_zero()).collect();
            let pts: Vec<&QVec> = tight.iter().map(|&v| &vertices[v]).collect();
            if exact::affine_dim(&pts) == dim as isize - 1 && seen.insert(tight.clone()) {
                facets.push(h.clone());
                source.push(k);
                incidence.push(tight);
            }
        }
        Ok(Self { dim, facets, source, vertices, incidence })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn facets(&self) -> &[Halfspace] {
        &self.facets
    }

    pub fn facet_source(&self) -> &[usize] {
        &self.source
    }

    pub fn vertices(&self) -> &[QVec] {
        &self.vertices
    }

    pub fn incidence(&self) -> &[Vec<usize>] {
        &self.incidence
    }

    pub fn vertex_index(&self, v: &[Rat]) -> Option<usize> {
        self.vertices.iter().position(|x| x.as_slice() == v)
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        self.facets.iter().all(|h| h.slack(x) >= Rat::zero())
    }

    pub fn contains_strictly(&self, x: &[Rat]) -> bool {
        self.facets.iter().all(|h| h.slack(x) > Rat::zero())
    }

    /// Each vertex lies on exactly `dim` facets.
    pub fn is_simple(&self) -> bool {
        (0..self.vertices.len()).all(|v| self.incidence.iter().filter(|f| f.contains(&v)).count() == self.dim)
    }

    /// Each facet has exactly `dim` vertices.
    pub fn is_simplicial(&self) -> bool {
        self.incidence.iter().all(|f| f.len() == self.dim)
    }

    pub fn face_lattice(&self) -> FaceLattice {
        FaceLattice::new(self)
    }

    pub fn export(&self) -> PolytopeExport {
        PolytopeExport {
            dim: self.dim,
            facets: self
                .facets
                .iter()
                .map(|h| FacetExport { normal: h.normal.iter().map(exact::format_rat).collect(), offset: exact::format_rat(&h.offset) })
                .collect(),
            vertices: self.vertices.iter().map(|v| v.iter().map(exact::format_rat).collect()).collect(),
            incidence: self.incidence.clone(),
        }
    }
}

fn fmt_vec(v: &[Rat]) -> String {
    format!("({})", v.iter().map(exact::format_rat).join(", "))
}

#[derive(Debug, Clone, Serialize)]
pub struct FacetExport {
    pub normal: Vec<String>,
    pub offset: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct PolytopeExport {
    pub dim: usize,
    pub facets: Vec<FacetExport>,
    pub vertices: Vec<Vec<String>>,
    pub incidence: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    /// Sorted vertex indices.
    pub vertices: Vec<usize>,
    /// Sorted indices of the facets containing the face.
    pub facets: Vec<usize>,
    pub dim: isize,
}

/// All faces, including the empty face and the polytope itself, sorted by
/// dimension and then vertex set.
#[derive(Debug, Clone)]
pub struct FaceLattice {
    dim: usize,
    faces: Vec<Face>,
    index: HashMap<Vec<usize>, usize>,
}

impl FaceLattice {
    fn new(p: &Polytope) -> Self {
        let all: Vec<usize> = (0..p.vertices.len()).collect();
        let mut sets: BTreeSet<Vec<usize>> = BTreeSet::new();
        sets.insert(all.clone());
        let mut frontier = vec![all];
        while let Some(f) = frontier.pop() {
            for facet in &p.incidence {
                let g: Vec<usize> = f.iter().copied().filter(|v| facet.binary_search(v).is_ok()).collect();
                if sets.insert(g.clone()) {
                    frontier.push(g);
                }
            }
        }
        let mut faces: Vec<Face> = sets
            .into_iter()
            .map(|vs| {
                let pts: Vec<&QVec> = vs.iter().map(|&v| &p.vertices[v]).collect();
                let facets = (0..p.incidence.len())
                    .filter(|&k| vs.iter().all(|v| p.incidence[k].binary_search(v).is_ok()))
                    .collect();
                Face { dim: exact::affine_dim(&pts), vertices: vs, facets }
            })
            .collect();
        faces.sort_by(|a, b| (a.dim, &a.vertices).cmp(&(b.dim, &b.vertices)));
        let index = faces.iter().enumerate().map(|(i, f)| (f.vertices.clone(), i)).collect();
        Self { dim: p.dim, faces, index }
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn find(&self, vertices: &[usize]) -> Option<usize> {
        self.index.get(vertices).copied()
    }

    /// `f_k` for `k = 0..=dim`.
    pub fn f_vector(&self) -> Vec<usize> {
        (0..=self.dim as isize).map(|k| self.faces.iter().filter(|f| f.dim == k).count()).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector().iter().enumerate().map(|(k, &f)| if k % 2 == 0 { f as i64 } else { -(f as i64) }).sum()
    }

    pub fn is_subface(&self, a: usize, b: usize) -> bool {
        let (fa, fb) = (&self.faces[a], &self.faces[b]);
        fa.vertices.iter().all(|v| fb.vertices.binary_search(v).is_ok())
    }

    /// Covering pairs `(a, b)`: `a ⊂ b` with `dim b = dim a + 1`.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.faces.len() {
            for b in 0..self.faces.len() {
                if self.faces[b].dim == self.faces[a].dim + 1 && self.is_subface(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Graded: every maximal chain passes through every dimension.
    pub fn is_graded(&self) -> bool {
        self.faces.iter().enumerate().all(|(a, fa)| {
            fa.dim == self.dim as isize
                || self.faces.iter().enumerate().any(|(b, fb)| fb.dim == fa.dim + 1 && self.is_subface(a, b))
        })
    }
}

/// `B = ⋂_w {l_w ≤ 1}` with `l_w = l ∘ w⁻¹`.
#[derive(Debug, Clone)]
pub struct UnitBall {
    pub polytope: Polytope,
    /// Facet index of `l_w`, indexed by group element.
    pub facet_of: Vec<usize>,
    pub fundamental_vertices: Vec<QVec>,
}

pub fn build_unit_ball(rs: &RootSystem, group: &WeylGroup, l: &FinslerFunctional) -> Result<UnitBall, PolytopeError> {
    let omegas = fundamental_vertices(rs, l)?;
    let n = rs.rank();
    let functionals: Vec<QVec> = group.elements().map(|w| group.dual_act_q(w, l.row())).collect();
    let mut distinct: Vec<QVec> = functionals.clone();
    distinct.sort();
    distinct.dedup();
    let hs: Vec<Halfspace> = distinct.iter().map(|f| Halfspace::new(f.clone(), Rat::one())).collect();
    let mut orbit: Vec<QVec> = group.elements().flat_map(|w| omegas.iter().map(move |o| (w, o))).map(|(w, o)| group.act_q(w, o)).collect();
    orbit.sort();
    orbit.dedup();

    let polytope = if hs.len() <= 64 {
        let p = Polytope::from_halfspaces(n, &hs)?;
        if p.vertices != orbit {
            return Err(PolytopeError::CrossValidation(format!(
                "{} vertices from half-spaces, {} in the orbit of the fundamental vertices",
                p.vertices.len(),
                orbit.len()
            )));
        }
        p
    } else {
        Polytope::from_certified_vertices(n, &hs, orbit)?
    };
    if polytope.facets.len() != hs.len() {
        return Err(PolytopeError::CrossValidation("some l_w does not define a facet".into()));
    }
    let facet_of = functionals
        .iter()
        .map(|f| polytope.facets.iter().position(|h| &h.normal == f).expect("facet present"))
        .collect();
    Ok(UnitBall { polytope, facet_of, fundamental_vertices: omegas })
}

/// `B*` together with the face lattices of both polytopes and `⋆`.
#[derive(Debug, Clone)]
pub struct DualBall {
    pub polytope: Polytope,
    pub primal_lattice: FaceLattice,
    pub dual_lattice: FaceLattice,
    /// Dual vertex index of each primal facet functional.
    pub vertex_of_facet: Vec<usize>,
    /// `star[i]` = dual-lattice index of the dual face of primal face `i`.
    pub star: Vec<usize>,
}

/// `B* = {λ : λ(v) ≤ 1 for all vertices v of B}`; its vertices are recomputed
/// from this description and matched against the facet functionals of `B`.
pub fn dual_ball(b: &Polytope) -> Result<DualBall, PolytopeError> {
    if b.facets.iter().any(|h| h.offset <= Rat::zero()) {
        return Err(PolytopeError::OriginNotInterior);
    }
    let n = b.dim;
    let hs: Vec<Halfspace> = b.vertices.iter().map(|v| Halfspace::new(v.clone(), Rat::one())).collect();
    let claimed: Vec<QVec> = b.facets.iter().map(|h| exact::scale(&h.normal, &h.offset.recip())).collect();
    let dual = if hs.len() <= 64 {
        let d = Polytope::from_halfspaces(n, &hs)?;
        let mut sorted = claimed.clone();
        sorted.sort();
        if d.vertices != sorted {
            return Err(PolytopeError::CrossValidation("dual vertices differ from facet functionals".into()));
        }
        d
    } else {
        Polytope::from_certified_vertices(n, &hs, claimed.clone())?
    };
    let vertex_of_facet: Vec<usize> = claimed.iter().map(|c| dual.vertex_index(c).expect("matched")).collect();
    let primal_lattice = b.face_lattice();
    let dual_lattice = dual.face_lattice();
    let mut star = Vec::with_capacity(primal_lattice.faces.len());
    for f in &primal_lattice.faces {
        let mut vs: Vec<usize> = f.facets.iter().map(|&k| vertex_of_facet[k]).collect();
        vs.sort();
        let idx = dual_lattice
            .find(&vs)
            .ok_or_else(|| PolytopeError::CrossValidation(format!("no dual face for primal face {:?}", f.vertices)))?;
        star.push(idx);
    }
    Ok(DualBall { polytope: dual, primal_lattice, dual_lattice, vertex_of_facet, star })
}

#[derive(Debug, Clone, Serialize)]
pub struct DualityReport {
    pub bijective: bool,
    pub complementary_dimensions: bool,
    pub inclusion_reversing: bool,
    pub dual_simple: bool,
}

impl DualBall {
    pub fn check(&self) -> DualityReport {
        let n = self.polytope.dim as isize;
        let mut image = self.star.clone();
        image.sort();
        image.dedup();
        let bijective = image.len() == self.star.len() && image.len() == self.dual_lattice.faces.len();
        let complementary_dimensions = self
            .star
            .iter()
            .enumerate()
            .all(|(i, &j)| self.primal_lattice.faces[i].dim + self.dual_lattice.faces[j].dim == n - 1);
        let m = self.star.len();
        let inclusion_reversing = (0..m).all(|a| {
            (0..m).all(|b| self.primal_lattice.is_subface(a, b) == self.dual_lattice.is_subface(self.star[b], self.star[a]))
        });
        DualityReport { bijective, complementary_dimensions, inclusion_reversing, dual_simple: self.polytope.is_simple() }
    }

    /// Checks `⋆(w φ) = w* ⋆(φ)` for every group element and face, where `B`
    /// and `B*` are the unit ball and its dual.
    pub fn is_equivariant(&self, group: &WeylGroup, ball: &Polytope) -> bool {
        group.elements().all(|w| {
            let Some(pv) = vertex_permutation(ball.vertices(), |x| group.act_q(w, x)) else { return false };
            let Some(dv) = vertex_permutation(self.polytope.vertices(), |x| group.dual_act_q(w, x)) else { return false };
            self.primal_lattice.faces.iter().enumerate().all(|(i, f)| {
                let mut moved: Vec<usize> = f.vertices.iter().map(|&v| pv[v]).collect();
                moved.sort();
                let Some(j) = self.primal_lattice.find(&moved) else { return false };
                let mut dual_moved: Vec<usize> = self.dual_lattice.faces[self.star[i]].vertices.iter().map(|&v| dv[v]).collect();
                dual_moved.sort();
                self.dual_lattice.faces[self.star[j]].vertices == dual_moved
            })
        })
    }
}

fn vertex_permutation(vertices: &[QVec], f: impl Fn(&[Rat]) -> QVec) -> Option<Vec<usize>> {
    vertices.iter().map(|v| {
        let img = f(v);
        vertices.iter().position(|u| *u == img)
    }).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct ClauseResult {
    pub clause: String,
    pub pass: bool,
    pub counterexample: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CubeReport {
    pub cartan_type: String,
    pub rank: usize,
    pub f_vector: Vec<usize>,
    pub expected_f_vector: Vec<usize>,
    pub clauses: Vec<ClauseResult>,
    pub pass: bool,
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// f-vector `(C(n,k) 2^{n−k})_{k=0..n}` of the `n`-cube.
pub fn cube_f_vector(n: usize) -> Vec<usize> {
    (0..=n).map(|k| binomial(n, k) << (n - k)).collect()
}

fn fmt_label(bits: u32, prefix: char, n: usize) -> String {
    let idx: Vec<String> = (0..n).filter(|i| bits >> i & 1 == 1).map(|i| (i + 1).to_string()).collect();
    format!("{prefix}{{{}}}", idx.join(","))
}

/// Computes `Δ*_{B*} = Δ* ∩ B*`, labels its facets `E_i = {λ(ω_i) = 1}` and
/// `F_j = {λ(α_j^∨) = 0}`, and certifies the cube structure.
pub fn verify_cube_structure(rs: &RootSystem, group: &WeylGroup, l: &FinslerFunctional) -> Result<CubeReport, PolytopeError> {
    let n = rs.rank();
    let ball = build_unit_ball(rs, group, l)?;
    let omegas = &ball.fundamental_vertices;
    let coroots: Vec<QVec> = rs.simple_coroots().iter().map(|c| exact::from_ints(c)).collect();

    let mut hs: Vec<Halfspace> = ball.polytope.vertices().iter().map(|v| Halfspace::new(v.clone(), Rat::one())).collect();
    hs.extend(coroots.iter().map(|c| Halfspace::new(exact::neg(c), Rat::zero())));
    let cell = Polytope::from_halfspaces(n, &hs)?;
    let lattice = cell.face_lattice();

    let tight_set = |h: &Halfspace| -> Vec<usize> {
        (0..cell.vertices.len()).filter(|&v| h.slack(&cell.vertices[v]).is_zero()).collect()
    };
    let e_sets: Vec<Vec<usize>> = omegas.iter().map(|o| tight_set(&Halfspace::new(o.clone(), Rat::one()))).collect();
    let f_sets: Vec<Vec<usize>> = coroots.iter().map(|c| tight_set(&Halfspace::new(exact::neg(c), Rat::zero()))).collect();

    let mut clauses = Vec::new();

    // labels: the facets are exactly E_1..E_n, F_1..F_n
    let mut facet_sets: Vec<Vec<usize>> = cell.incidence.clone();
    facet_sets.sort();
    let mut labelled: Vec<Vec<usize>> = e_sets.iter().chain(&f_sets).cloned().collect();
    labelled.sort();
    let labels_ok = facet_sets == labelled && labelled.windows(2).all(|w| w[0] != w[1]);
    clauses.push(ClauseResult {
        clause: "facets are E_1..E_n, F_1..F_n".into(),
        pass: labels_ok,
        counterexample: (!labels_ok).then(|| format!("{} facets, {} labelled sets", facet_sets.len(), labelled.len())),
    });

    let inter = |i_bits: u32, j_bits: u32| -> Vec<usize> {
        (0..cell.vertices.len())
            .filter(|v| {
                (0..n).all(|i| i_bits >> i & 1 == 0 || e_sets[i].binary_search(v).is_ok())
                    && (0..n).all(|j| j_bits >> j & 1 == 0 || f_sets[j].binary_search(v).is_ok())
            })
            .collect()
    };

    // (a) every face is an E_I ∩ F_J
    let mut cex_a = None;
    for f in lattice.faces().iter().filter(|f| f.dim >= 0) {
        let i_bits = (0..n).filter(|&i| f.vertices.iter().all(|v| e_sets[i].binary_search(v).is_ok())).fold(0u32, |b, i| b | 1 << i);
        let j_bits = (0..n).filter(|&j| f.vertices.iter().all(|v| f_sets[j].binary_search(v).is_ok())).fold(0u32, |b, j| b | 1 << j);
        if inter(i_bits, j_bits) != f.vertices {
            cex_a = Some(format!("face with vertices {:?}", f.vertices));
            break;
        }
    }
    clauses.push(ClauseResult { clause: "(a) every face is some E_I ∩ F_J".into(), pass: cex_a.is_none(), counterexample: cex_a });

    // (b) nonempty iff I ∩ J = ∅
    let full = (1u32 << n) - 1;
    let mut cex_b = None;
    let mut by_label: HashMap<Vec<usize>, (u32, u32)> = HashMap::new();
    let mut cex_c = None;
    for i_bits in 0..=full {
        for j_bits in 0..=full {
            let s = inter(i_bits, j_bits);
            let nonempty = !s.is_empty();
            if nonempty != (i_bits & j_bits == 0) && cex_b.is_none() {
                cex_b = Some(format!("{} ∩ {} nonempty = {nonempty}", fmt_label(i_bits, 'E', n), fmt_label(j_bits, 'F', n)));
            }
            if nonempty && i_bits & j_bits == 0 {
                if let Some(&(i2, j2)) = by_label.get(&s) {
                    if cex_c.is_none() {
                        cex_c = Some(format!(
                            "{}∩{} = {}∩{}",
                            fmt_label(i_bits, 'E', n),
                            fmt_label(j_bits, 'F', n),
                            fmt_label(i2, 'E', n),
                            fmt_label(j2, 'F', n)
                        ));
                    }
                } else {
                    by_label.insert(s, (i_bits, j_bits));
                }
            }
        }
    }
    clauses.push(ClauseResult { clause: "(b) E_I ∩ F_J nonempty iff I ∩ J = ∅".into(), pass: cex_b.is_none(), counterexample: cex_b });
    clauses.push(ClauseResult { clause: "(c) labels are unique".into(), pass: cex_c.is_none(), counterexample: cex_c });

    // (d) f-vector
    let f_vector = lattice.f_vector();
    let expected = cube_f_vector(n);
    clauses.push(ClauseResult {
        clause: "(d) f-vector equals the n-cube's".into(),
        pass: f_vector == expected,
        counterexample: (f_vector != expected).then(|| format!("{f_vector:?}")),
    });

    // (e) E_I ∩ F_J ↦ cube face {x_i = 1 (i∈I), x_j = 0 (j∈J)} is a poset isomorphism
    let labels: Vec<(Vec<usize>, (u32, u32))> = by_label.into_iter().collect();
    let mut cex_e = None;
    if labels.len() != lattice.faces().iter().filter(|f| f.dim >= 0).count() {
        cex_e = Some(format!("{} labelled faces vs {} lattice faces", labels.len(), lattice.faces().len() - 1));
    }
    for (s, (i, j)) in &labels {
        let Some(idx) = lattice.find(s) else {
            cex_e.get_or_insert_with(|| format!("{}∩{} is not a face", fmt_label(*i, 'E', n), fmt_label(*j, 'F', n)));
            continue;
        };
        if lattice.faces()[idx].dim != n as isize - (i.count_ones() + j.count_ones()) as isize {
            cex_e.get_or_insert_with(|| format!("dimension of {}∩{}", fmt_label(*i, 'E', n), fmt_label(*j, 'F', n)));
        }
        for (t, (i2, j2)) in &labels {
            let sub = s.iter().all(|v| t.binary_search(v).is_ok());
            let cube_sub = (i & i2) == *i2 && (j & j2) == *j2;
            if sub != cube_sub {
                cex_e.get_or_insert_with(|| {
                    format!(
                        "{}∩{} vs {}∩{}",
                        fmt_label(*i, 'E', n),
                        fmt_label(*j, 'F', n),
                        fmt_label(*i2, 'E', n),
                        fmt_label(*j2, 'F', n)
                    )
                });
            }
        }
    }
    clauses.push(ClauseResult { clause: "(e) face poset isomorphic to the cube's".into(), pass: cex_e.is_none(), counterexample: cex_e });

    let pass = clauses.iter().all(|c| c.pass);
    Ok(CubeReport { cartan_type: rs.cartan_type().to_string(), rank: n, f_vector, expected_f_vector: expected, clauses, pass })
}

/// Facet functional indices grouped by group element, for reporting.
pub fn facet_functionals(group: &WeylGroup, ball: &UnitBall) -> Vec<(Elem, QVec)> {
    group.elements().map(|w| (w, ball.polytope.facets()[ball.facet_of[w.index()]].normal.clone())).collect()
}
