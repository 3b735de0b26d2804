//! Weyl group enumeration, Bruhat (folding) order and the induced order on
//! cosets `W_J \ W`.

use std::collections::HashMap;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exact::{self, QVec, Rat};
use crate::rootsys::RootSystem;

pub const DEFAULT_BUDGET: usize = 100_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeylError {
    #[error("group order exceeds the enumeration budget of {0}")]
    BudgetExceeded(usize),
    #[error("malformed word `{0}`")]
    BadWord(String),
    #[error("malformed coset `{0}`")]
    BadCoset(String),
    #[error("face types differ: {0} vs {1}")]
    FaceMismatch(String, String),
    #[error("invalid face type `{0}`")]
    BadFace(String),
}

impl WeylError {
    pub fn code(&self) -> &'static str {
        match self {
            Self::BudgetExceeded(_) => "weyl.budget_exceeded",
            Self::BadWord(_) => "weyl.bad_word",
            Self::BadCoset(_) => "weyl.bad_coset",
            Self::FaceMismatch(..) => "weyl.face_mismatch",
            Self::BadFace(_) => "weyl.bad_face",
        }
    }
}

/// Index of an element inside its [`WeylGroup`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Elem(u32);

impl Elem {
    pub const IDENTITY: Elem = Elem(0);

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn from_index(i: usize) -> Self {
        Elem(i as u32)
    }
}

type IMat = Vec<i64>;

fn mat_mul(a: &[i64], b: &[i64], n: usize) -> IMat {
    let mut out = vec![0; n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            if aik == 0 {
                continue;
            }
            for j in 0..n {
                out[i * n + j] += aik * b[k * n + j];
            }
        }
    }
    out
}

/// A finite Weyl group, fully enumerated. Elements are identified by their
/// integer action matrices on `V`.
#[derive(Debug, Clone)]
pub struct WeylGroup {
    rank: usize,
    mats: Vec<IMat>,
    index: HashMap<IMat, u32>,
    words: Vec<Vec<u8>>,
    lengths: Vec<u32>,
    left: Vec<Vec<u32>>,
    right: Vec<Vec<u32>>,
    inverse: Vec<u32>,
    w0: Elem,
    iota: Vec<usize>,
}

/// Breadth-first enumeration; each element receives its lexicographically
/// minimal reduced word.
pub fn enumerate_weyl(rs: &RootSystem) -> Result<WeylGroup, WeylError> {
    enumerate_weyl_with_budget(rs, DEFAULT_BUDGET)
}

pub fn enumerate_weyl_with_budget(rs: &RootSystem, budget: usize) -> Result<WeylGroup, WeylError> {
    let n = rs.rank();
    let gens: Vec<IMat> = (0..n)
        .map(|i| rs.simple_reflection_matrix(i).into_iter().flatten().collect())
        .collect();
    let id: IMat = (0..n * n).map(|k| i64::from(k / n == k % n)).collect();

    let mut mats = vec![id.clone()];
    let mut words: Vec<Vec<u8>> = vec![vec![]];
    let mut lengths = vec![0u32];
    let mut index: HashMap<IMat, u32> = HashMap::from([(id, 0)]);
    let mut level: Vec<u32> = vec![0];
    let mut len = 0u32;
    while !level.is_empty() {
        len += 1;
        let mut next: Vec<u32> = Vec::new();
        for &x in &level {
            for (s, g) in gens.iter().enumerate() {
                let m = mat_mul(&mats[x as usize], g, n);
                let mut word = words[x as usize].clone();
                word.push(s as u8);
                match index.get(&m) {
                    Some(&y) => {
                        if lengths[y as usize] == len && word < words[y as usize] {
                            words[y as usize] = word;
                        }
                    }
                    None => {
                        if mats.len() >= budget {
                            return Err(WeylError::BudgetExceeded(budget));
                        }
                        let y = mats.len() as u32;
                        index.insert(m.clone(), y);
                        mats.push(m);
                        words.push(word);
                        lengths.push(len);
                        next.push(y);
                    }
                }
            }
        }
        level = next;
    }

    let size = mats.len();
    let lookup = |m: &IMat| index[m];
    let left: Vec<Vec<u32>> = gens
        .iter()
        .map(|g| (0..size).map(|x| lookup(&mat_mul(g, &mats[x], n))).collect())
        .collect();
    let right: Vec<Vec<u32>> = gens
        .iter()
        .map(|g| (0..size).map(|x| lookup(&mat_mul(&mats[x], g, n))).collect())
        .collect();
    let inverse = (0..size)
        .map(|x| words[x].iter().fold(0u32, |acc, &s| left[s as usize][acc as usize]))
        .collect();
    let w0 = (0..size).max_by_key(|&x| lengths[x]).unwrap_or(0);

    // ι: −w0 α_i = α_{ι(i)}
    let w0m = &mats[w0];
    let iota = rs
        .simple_roots()
        .iter()
        .map(|a| {
            let img: Vec<i64> = (0..n).map(|r| -(0..n).map(|c| w0m[r * n + c] * a[c]).sum::<i64>()).collect();
            rs.simple_roots().iter().position(|b| *b == img).expect("−w0 permutes simple roots")
        })
        .collect();

    Ok(WeylGroup {
        rank: n,
        mats,
        index,
        words,
        lengths,
        left,
        right,
        inverse,
        w0: Elem(w0 as u32),
        iota,
    })
}

impl WeylGroup {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> usize {
        self.mats.len()
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.mats.len() as u32).map(Elem)
    }

    pub fn identity(&self) -> Elem {
        Elem::IDENTITY
    }

    pub fn w0(&self) -> Elem {
        self.w0
    }

    /// The opposition involution as a permutation of simple-root indices.
    pub fn iota(&self) -> &[usize] {
        &self.iota
    }

    pub fn length(&self, w: Elem) -> usize {
        self.lengths[w.index()] as usize
    }

    /// Lexicographically minimal reduced word (0-based generator indices).
    pub fn word(&self, w: Elem) -> &[u8] {
        &self.words[w.index()]
    }

    pub fn generator(&self, i: usize) -> Elem {
        Elem(self.right[i][0])
    }

    /// Row-major integer action matrix on `V`.
    pub fn matrix(&self, w: Elem) -> &[i64] {
        &self.mats[w.index()]
    }

    pub fn matrix_f64(&self, w: Elem) -> Vec<f64> {
        self.mats[w.index()].iter().map(|&x| x as f64).collect()
    }

    pub fn find(&self, matrix: &[i64]) -> Option<Elem> {
        self.index.get(matrix).map(|&i| Elem(i))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.words[b.index()].iter().fold(a.0, |acc, &s| self.right[s as usize][acc as usize]))
    }

    pub fn inverse(&self, w: Elem) -> Elem {
        Elem(self.inverse[w.index()])
    }

    /// `s_i · w`
    pub fn left_mul_gen(&self, i: usize, w: Elem) -> Elem {
        Elem(self.left[i][w.index()])
    }

    /// `w · s_i`
    pub fn right_mul_gen(&self, w: Elem, i: usize) -> Elem {
        Elem(self.right[i][w.index()])
    }

    pub fn from_word(&self, word: &[usize]) -> Option<Elem> {
        word.iter()
            .try_fold(0u32, |acc, &s| (s < self.rank).then(|| self.right[s][acc as usize]))
            .map(Elem)
    }

    pub fn act_q(&self, w: Elem, x: &[Rat]) -> QVec {
        let n = self.rank;
        let m = &self.mats[w.index()];
        (0..n)
            .map(|r| (0..n).fold(Rat::zero(), |acc, c| acc + &x[c] * exact::int(m[r * n + c])))
            .collect()
    }

    pub fn act_f64(&self, w: Elem, x: &[f64]) -> Vec<f64> {
        let n = self.rank;
        let m = &self.mats[w.index()];
        (0..n).map(|r| (0..n).map(|c| m[r * n + c] as f64 * x[c]).sum()).collect()
    }

    /// Pull back a functional row: `λ ∘ w`.
    pub fn pullback_row_q(&self, row: &[Rat], w: Elem) -> QVec {
        let n = self.rank;
        let m = &self.mats[w.index()];
        (0..n)
            .map(|c| (0..n).fold(Rat::zero(), |acc, r| acc + &row[r] * exact::int(m[r * n + c])))
            .collect()
    }

    /// The dual action `w*λ = λ ∘ w⁻¹`.
    pub fn dual_act_q(&self, w: Elem, row: &[Rat]) -> QVec {
        self.pullback_row_q(row, self.inverse(w))
    }

    pub fn dual_act_f64(&self, w: Elem, row: &[f64]) -> Vec<f64> {
        let n = self.rank;
        let m = &self.mats[self.inverse(w).index()];
        (0..n).map(|c| (0..n).map(|r| row[r] * m[r * n + c] as f64).sum()).collect()
    }

    pub fn is_left_descent(&self, i: usize, w: Elem) -> bool {
        self.lengths[self.left[i][w.index()] as usize] < self.lengths[w.index()]
    }

    pub fn is_right_descent(&self, w: Elem, i: usize) -> bool {
        self.lengths[self.right[i][w.index()] as usize] < self.lengths[w.index()]
    }

    /// Strong Bruhat order `u ⪯ w`, decided by descent recursion: for a left
    /// descent `s` of `w`, `u ⪯ w` iff `min(u, su) ⪯ sw`.
    pub fn bruhat_leq(&self, u: Elem, w: Elem) -> bool {
        let (mut u, mut w) = (u.0, w.0);
        loop {
            let (lu, lw) = (self.lengths[u as usize], self.lengths[w as usize]);
            if lu == 0 {
                return true;
            }
            if lu >= lw {
                return u == w;
            }
            let s = (0..self.rank)
                .find(|&s| self.lengths[self.left[s][w as usize] as usize] < lw)
                .expect("non-identity element has a descent");
            let su = self.left[s][u as usize];
            if self.lengths[su as usize] < lu {
                u = su;
            }
            w = self.left[s][w as usize];
        }
    }

    /// The reflections of `W` (conjugates of simple reflections).
    pub fn reflections(&self) -> Vec<Elem> {
        let mut out: Vec<Elem> = Vec::new();
        for w in self.elements() {
            for i in 0..self.rank {
                let t = self.mul(self.left_mul_gen(i, w), self.inverse(w));
                if !out.contains(&t) {
                    out.push(t);
                }
            }
        }
        out.sort();
        out
    }

    /// Bruhat lower covers `{wt : t reflection, ℓ(wt) = ℓ(w) − 1}` of every element.
    pub fn lower_covers(&self) -> Vec<Vec<Elem>> {
        let refl = self.reflections();
        self.elements()
            .map(|w| {
                let lw = self.length(w);
                let mut covers: Vec<Elem> = refl
                    .iter()
                    .map(|&t| self.mul(w, t))
                    .filter(|&v| self.length(v) + 1 == lw)
                    .collect();
                covers.sort();
                covers.dedup();
                covers
            })
            .collect()
    }

    pub fn format_word(&self, w: Elem) -> String {
        format_word(self.word(w))
    }

    pub fn parse_word(&self, s: &str) -> Result<Elem, WeylError> {
        let word = parse_word(s)?;
        self.from_word(&word).ok_or_else(|| WeylError::BadWord(s.to_string()))
    }

    /// Number of positive roots sent to negative roots.
    pub fn inversion_count(&self, rs: &RootSystem, w: Elem) -> usize {
        let xi: QVec = rs
            .fundamental_coweights()
            .into_iter()
            .fold(exact::zeros(rs.rank()), |acc, v| exact::add(&acc, &v));
        rs.positive_roots()
            .filter(|r| rs.inner_q(&self.act_q(w, &exact::from_ints(r)), &xi).is_negative())
            .count()
    }
}

pub fn format_word(word: &[u8]) -> String {
    if word.is_empty() {
        return "e".to_string();
    }
    word.iter().map(|s| format!("s{}", s + 1)).collect::<Vec<_>>().join(" ")
}

/// Parses `"s1 s2 s1"`, `"s1s2"`, `"1 2 1"` or `"e"` into 0-based indices.
pub fn parse_word(s: &str) -> Result<Vec<usize>, WeylError> {
    let bad = || WeylError::BadWord(s.to_string());
    let t = s.trim();
    if t.is_empty() || t == "e" {
        return Ok(vec![]);
    }
    let mut out = Vec::new();
    for tok in t.split(|c: char| c.is_whitespace() || c == 's' || c == ',' || c == '*').filter(|x| !x.is_empty()) {
        let k: usize = tok.parse().map_err(|_| bad())?;
        if k == 0 {
            return Err(bad());
        }
        out.push(k - 1);
    }
    Ok(out)
}

/// A face of the model chamber, given by its vertex types `I ⊆ [n]`.
/// Its stabilizer is `W_J = ⟨s_j : j ∉ I⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FaceType {
    rank: u8,
    vertices: u32,
}

impl FaceType {
    /// `vertices` are 0-based simple-root indices.
    pub fn new(rank: usize, vertices: &[usize]) -> Result<Self, WeylError> {
        let mut mask = 0u32;
        for &v in vertices {
            if v >= rank {
                return Err(WeylError::BadFace(format!("{vertices:?}")));
            }
            mask |= 1 << v;
        }
        if mask == 0 {
            return Err(WeylError::BadFace("empty vertex set".into()));
        }
        Ok(Self { rank: rank as u8, vertices: mask })
    }

    /// The whole chamber `σ_mod`.
    pub fn chamber(rank: usize) -> Self {
        Self { rank: rank as u8, vertices: (1u32 << rank) - 1 }
    }

    /// All nonempty faces, in a fixed order.
    pub fn all(rank: usize) -> Vec<Self> {
        (1u32..(1 << rank)).map(|m| Self { rank: rank as u8, vertices: m }).collect()
    }

    pub fn rank(&self) -> usize {
        self.rank as usize
    }

    pub fn vertices(&self) -> Vec<usize> {
        (0..self.rank()).filter(|&i| self.vertices & (1 << i) != 0).collect()
    }

    pub fn contains_vertex(&self, i: usize) -> bool {
        self.vertices & (1 << i) != 0
    }

    /// Generators of the stabilizer `W_J`.
    pub fn stabilizer_generators(&self) -> Vec<usize> {
        (0..self.rank()).filter(|&i| self.vertices & (1 << i) == 0).collect()
    }

    pub fn is_chamber(&self) -> bool {
        self.stabilizer_generators().is_empty()
    }

    pub fn iota_image(&self, group: &WeylGroup) -> Self {
        let verts: Vec<usize> = self.vertices().iter().map(|&i| group.iota()[i]).collect();
        Self::new(self.rank(), &verts).expect("ι permutes indices")
    }

    pub fn is_iota_invariant(&self, group: &WeylGroup) -> bool {
        self.iota_image(group) == *self
    }

    /// Parses `"{1,2}"`, `"1,2"` or `"12"` (1-based).
    pub fn parse(rank: usize, s: &str) -> Result<Self, WeylError> {
        let t = s.trim().trim_start_matches(['{', '[']).trim_end_matches(['}', ']']);
        let mut verts = Vec::new();
        let toks: Vec<&str> = if t.contains([',', ' ']) {
            t.split([',', ' ']).filter(|x| !x.is_empty()).collect()
        } else {
            t.split("").filter(|x| !x.is_empty()).collect()
        };
        for tok in toks {
            let k: usize = tok.parse().map_err(|_| WeylError::BadFace(s.to_string()))?;
            if k == 0 {
                return Err(WeylError::BadFace(s.to_string()));
            }
            verts.push(k - 1);
        }
        Self::new(rank, &verts).map_err(|_| WeylError::BadFace(s.to_string()))
    }
}

impl fmt::Display for FaceType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.vertices().iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "{{{}}}", v.join(","))
    }
}

/// A coset `W_J · w`, stored through its minimal-length representative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RelativePosition {
    face: FaceType,
    rep: Elem,
}

impl RelativePosition {
    pub fn new(group: &WeylGroup, face: FaceType, w: Elem) -> Self {
        Self { face, rep: min_coset_rep(group, &face.stabilizer_generators(), w) }
    }

    pub fn face(&self) -> FaceType {
        self.face
    }

    pub fn rep(&self) -> Elem {
        self.rep
    }

    pub fn elements(&self, group: &WeylGroup) -> Vec<Elem> {
        coset_elements(group, &self.face.stabilizer_generators(), self.rep)
    }

    pub fn contains(&self, group: &WeylGroup, w: Elem) -> bool {
        min_coset_rep(group, &self.face.stabilizer_generators(), w) == self.rep
    }

    /// `"[J]:word"` with 1-based indices.
    pub fn format(&self, group: &WeylGroup) -> String {
        let j: Vec<String> = self.face.stabilizer_generators().iter().map(|i| (i + 1).to_string()).collect();
        format!("[{}]:{}", j.join(","), group.format_word(self.rep))
    }

    pub fn parse(group: &WeylGroup, s: &str) -> Result<Self, WeylError> {
        let bad = || WeylError::BadCoset(s.to_string());
        let (j, word) = s.trim().split_once(':').ok_or_else(bad)?;
        let j = j.trim().strip_prefix('[').and_then(|x| x.strip_suffix(']')).ok_or_else(bad)?;
        let mut js = Vec::new();
        for tok in j.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let k: usize = tok.parse().map_err(|_| bad())?;
            if k == 0 || k > group.rank() {
                return Err(bad());
            }
            js.push(k - 1);
        }
        let verts: Vec<usize> = (0..group.rank()).filter(|i| !js.contains(i)).collect();
        let face = FaceType::new(group.rank(), &verts).map_err(|_| bad())?;
        let w = group.parse_word(word)?;
        Ok(Self::new(group, face, w))
    }
}

/// Minimal-length element of `W_J · w`.
pub fn min_coset_rep(group: &WeylGroup, j: &[usize], w: Elem) -> Elem {
    let mut w = w;
    while let Some(&s) = j.iter().find(|&&s| group.is_left_descent(s, w)) {
        w = group.left_mul_gen(s, w);
    }
    w
}

pub fn coset_elements(group: &WeylGroup, j: &[usize], w: Elem) -> Vec<Elem> {
    let mut out = vec![w];
    let mut i = 0;
    while i < out.len() {
        for &s in j {
            let y = group.left_mul_gen(s, out[i]);
            if !out.contains(&y) {
                out.push(y);
            }
        }
        i += 1;
    }
    out.sort();
    out
}

/// All cosets `W_J \ W` of a face type, sorted by representative.
pub fn cosets(group: &WeylGroup, face: FaceType) -> Vec<RelativePosition> {
    let mut reps: Vec<RelativePosition> =
        group.elements().map(|w| RelativePosition::new(group, face, w)).collect();
    reps.sort();
    reps.dedup();
    reps
}

/// Folding order on cosets: `c₁ ≼ c₂` iff some representatives satisfy
/// `w₁ ⪯ w₂`. Decided by scanning representative pairs.
pub fn coset_folding_leq(group: &WeylGroup, c1: &RelativePosition, c2: &RelativePosition) -> Result<bool, WeylError> {
    if c1.face != c2.face {
        return Err(WeylError::FaceMismatch(c1.face.to_string(), c2.face.to_string()));
    }
    let a = c1.elements(group);
    let b = c2.elements(group);
    Ok(a.iter().any(|&u| b.iter().any(|&w| group.bruhat_leq(u, w))))
}

/// `c-pos := w₀ · pos`, a coset for the face type `ι(τ)`.
pub fn complementary_position(group: &WeylGroup, c: &RelativePosition) -> RelativePosition {
    let face = c.face.iota_image(group);
    RelativePosition::new(group, face, group.mul(group.w0(), c.rep))
}

#[derive(Debug, Clone, Serialize)]
pub struct WeylSummary {
    pub cartan_type: String,
    pub order: usize,
    pub longest_element: String,
    pub longest_length: usize,
    pub iota: Vec<usize>,
    pub elements: Vec<ElementSummary>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ElementSummary {
    pub word: String,
    pub length: usize,
    pub matrix: Vec<i64>,
}

impl WeylGroup {
    pub fn summary(&self, rs: &RootSystem) -> WeylSummary {
        WeylSummary {
            cartan_type: rs.cartan_type().to_string(),
            order: self.order(),
            longest_element: self.format_word(self.w0),
            longest_length: self.length(self.w0),
            iota: self.iota.iter().map(|i| i + 1).collect(),
            elements: self
                .elements()
                .map(|w| ElementSummary { word: self.format_word(w), length: self.length(w), matrix: self.matrix(w).to_vec() })
                .collect(),
        }
    }
}
