//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::HashSet;

use finsler_core::rootsys::RootSystem;
use finsler_core::weyl::{enumerate_weyl, Elem, WeylGroup};

pub const SMALL_TYPES: [&str; 4] = ["A2", "B2", "A3", "B3"];

pub fn setup(tag: &str) -> (RootSystem, WeylGroup) {
    let rs = RootSystem::from_tag(tag).unwrap();
    let group = enumerate_weyl(&rs).unwrap();
    (rs, group)
}

pub fn mat_mul(a: &[i64], b: &[i64], n: usize) -> Vec<i64> {
    (0..n * n).map(|k| (0..n).map(|t| a[k / n * n + t] * b[t * n + k % n]).sum()).collect()
}

pub fn mat_vec(m: &[i64], v: &[i64]) -> Vec<i64> {
    let n = v.len();
    (0..n).map(|r| (0..n).map(|c| m[r * n + c] * v[c]).sum()).collect()
}

pub fn identity(n: usize) -> Vec<i64> {
    (0..n * n).map(|k| i64::from(k / n == k % n)).collect()
}

/// Simple reflections built straight from the Cartan data: `s_i(x) = x − α_i(x) α_i^∨`.
pub fn simple_reflections(rs: &RootSystem) -> Vec<Vec<i64>> {
    (0..rs.rank()).map(|i| rs.simple_reflection_matrix(i).into_iter().flatten().collect()).collect()
}

/// `ℓ(w) = #{β > 0 : wβ < 0}` computed from the matrix of `w`.
pub fn inversion_length(rs: &RootSystem, m: &[i64]) -> usize {
    let pos: HashSet<Vec<i64>> = rs.positive_roots().cloned().collect();
    pos.iter()
        .filter(|b| {
            let img: Vec<i64> = mat_vec(m, b).into_iter().map(|x| -x).collect();
            pos.contains(&img)
        })
        .count()
}

/// Elements `u` admitting a reduced word that is a subword of the stored
/// reduced word of `w`.
pub fn subword_interval(rs: &RootSystem, group: &WeylGroup, w: Elem) -> Vec<bool> {
    let n = rs.rank();
    let gens = simple_reflections(rs);
    let word = group.word(w);
    let mut below = vec![false; group.order()];
    for mask in 0u32..(1 << word.len()) {
        let mut m = identity(n);
        let mut k = 0;
        for (pos, &s) in word.iter().enumerate() {
            if mask >> pos & 1 == 1 {
                m = mat_mul(&m, &gens[s as usize], n);
                k += 1;
            }
        }
        if inversion_length(rs, &m) == k {
            below[group.find(&m).expect("product lies in W").index()] = true;
        }
    }
    below
}

/// Angle between two vectors under the Gram form of `rs`.
pub fn angle(rs: &RootSystem, a: &[f64], b: &[f64]) -> f64 {
    let c = rs.inner_f64(a, b) / (rs.inner_f64(a, a) * rs.inner_f64(b, b)).sqrt();
    c.clamp(-1.0, 1.0).acos()
}
