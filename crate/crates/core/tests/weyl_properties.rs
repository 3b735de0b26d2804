mod common;

use common::{inversion_length, mat_mul, mat_vec, setup, subword_interval};
use finsler_core::weyl::{coset_elements, min_coset_rep, FaceType};
use proptest::prelude::*;

const TYPES: [&str; 7] = ["A1xA1", "A2", "B2", "A3", "B3", "C3", "D4"];

#[test]
fn conjugated_reflection_is_reflection_of_image() {
    for tag in TYPES {
        let (rs, group) = setup(tag);
        let n = rs.rank();
        for w in group.elements() {
            let m = group.matrix(w);
            let minv = group.matrix(group.inverse(w));
            for a in rs.roots() {
                let r: Vec<i64> = rs.reflection_matrix(a).into_iter().flatten().collect();
                let lhs = mat_mul(&mat_mul(m, &r, n), minv, n);
                let wa = mat_vec(m, a);
                assert!(rs.is_root(&wa), "{tag}");
                let rhs: Vec<i64> = rs.reflection_matrix(&wa).into_iter().flatten().collect();
                assert_eq!(lhs, rhs, "{tag}: w = {}", group.format_word(w));
            }
        }
    }
}

#[test]
fn length_is_inversion_count() {
    for tag in TYPES {
        let (rs, group) = setup(tag);
        for w in group.elements() {
            assert_eq!(group.length(w), inversion_length(&rs, group.matrix(w)), "{tag}");
            assert_eq!(group.length(w), group.word(w).len());
        }
        assert_eq!(group.length(group.w0()), rs.num_positive_roots());
    }
}

#[test]
fn bruhat_matches_subword_oracle() {
    for tag in ["A1xA1", "A2", "B2", "A3", "B3", "C3"] {
        let (rs, group) = setup(tag);
        for w in group.elements() {
            let below = subword_interval(&rs, &group, w);
            for u in group.elements() {
                assert_eq!(group.bruhat_leq(u, w), below[u.index()], "{tag}: {} vs {}", group.format_word(u), group.format_word(w));
            }
        }
    }
}

#[test]
fn w0_reverses_bruhat_order() {
    for tag in ["A2", "B2", "A3", "B3"] {
        let (_, group) = setup(tag);
        let w0 = group.w0();
        for u in group.elements() {
            assert_eq!(group.length(group.mul(w0, u)), group.length(w0) - group.length(u));
            for w in group.elements() {
                assert_eq!(group.bruhat_leq(u, w), group.bruhat_leq(group.mul(w0, w), group.mul(w0, u)));
                assert_eq!(group.bruhat_leq(u, w), group.bruhat_leq(group.inverse(u), group.inverse(w)));
            }
        }
    }
}

#[test]
fn min_coset_reps_factor_lengths() {
    for tag in ["A2", "B2", "A3", "B3"] {
        let (rs, group) = setup(tag);
        for face in FaceType::all(rs.rank()) {
            let j = face.stabilizer_generators();
            let parabolic = coset_elements(&group, &j, group.identity());
            for w in group.elements() {
                let rep = min_coset_rep(&group, &j, w);
                let coset = coset_elements(&group, &j, w);
                assert!(coset.contains(&w) && coset.contains(&rep));
                assert_eq!(coset.len(), parabolic.len());
                for &x in &coset {
                    assert!(group.length(rep) <= group.length(x));
                }
                for &v in &parabolic {
                    assert_eq!(group.length(group.mul(v, rep)), group.length(v) + group.length(rep));
                }
            }
        }
    }
}

fn type_and_point() -> impl Strategy<Value = (&'static str, Vec<f64>)> {
    prop::sample::select(&TYPES[..]).prop_flat_map(|tag| {
        let n = finsler_core::rootsys::RootSystem::from_tag(tag).unwrap().rank();
        (Just(tag), prop::collection::vec(-5.0..5.0f64, n))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generic_orbit_meets_open_chamber_once((tag, x) in type_and_point()) {
        let (rs, group) = setup(tag);
        let generic = rs.roots().iter().all(|a| {
            let f: Vec<f64> = rs.functional_of(a).iter().map(|&c| c as f64).collect();
            f.iter().zip(&x).map(|(a, b)| a * b).sum::<f64>().abs() > 1e-6
        });
        prop_assume!(generic);
        let hits = group.elements()
            .filter(|&w| {
                let y = group.act_f64(w, &x);
                (0..rs.rank()).all(|i| rs.alpha_f64(i, &y) > 0.0)
            })
            .count();
        prop_assert_eq!(hits, 1);
    }

    #[test]
    fn action_preserves_gram_form((tag, x) in type_and_point(), k in 0usize..10_000) {
        let (rs, group) = setup(tag);
        let w = finsler_core::weyl::Elem::from_index(k % group.order());
        let y = group.act_f64(w, &x);
        prop_assert!((rs.inner_f64(&x, &x) - rs.inner_f64(&y, &y)).abs() < 1e-9);
    }
}
