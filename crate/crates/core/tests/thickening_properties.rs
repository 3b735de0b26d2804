mod common;

use std::f64::consts::FRAC_PI_2;

use common::{setup, subword_interval, SMALL_TYPES};
use finsler_core::thickening::{
    classify_with, complement, face_direction, ideal_violation, is_left_invariant, metric_thickening,
    random_chamber_direction, BruhatCovers, Thickening,
};
use finsler_core::weyl::FaceType;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Downward closure of the chosen generators, computed with the subword oracle.
fn ideal_from(tag: &str, picks: &[usize]) -> (finsler_core::weyl::WeylGroup, Thickening) {
    let (rs, group) = setup(tag);
    let mut inside = vec![false; group.order()];
    for &p in picks {
        let w = finsler_core::weyl::Elem::from_index(p % group.order());
        for (k, b) in subword_interval(&rs, &group, w).into_iter().enumerate() {
            inside[k] |= b;
        }
    }
    let elems = group.elements().filter(|w| inside[w.index()]);
    let th = Thickening::from_elements(&group, elems);
    (group, th)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn complement_sizes_add_up(tag in prop::sample::select(&SMALL_TYPES[..]), picks in prop::collection::vec(0usize..1000, 0..4)) {
        let (group, th) = ideal_from(tag, &picks);
        let covers = BruhatCovers::new(&group);
        prop_assert!(ideal_violation(&covers, &th).is_none());
        let c = complement(&group, &th).unwrap();
        prop_assert_eq!(th.len() + c.len(), group.order());
        prop_assert!(ideal_violation(&covers, &c).is_none());
        prop_assert_eq!(complement(&group, &c).unwrap(), th);
    }

    #[test]
    fn complement_swaps_invariance_under_iota(tag in prop::sample::select(&SMALL_TYPES[..]), picks in prop::collection::vec(0usize..1000, 1..4)) {
        let (group, th) = ideal_from(tag, &picks);
        let c = complement(&group, &th).unwrap();
        for face in FaceType::all(group.rank()) {
            if is_left_invariant(&group, &th, face) {
                prop_assert!(is_left_invariant(&group, &c, face.iota_image(&group)));
            }
        }
    }

    #[test]
    fn metric_thickenings_are_ideals(tag in prop::sample::select(&SMALL_TYPES[..]), seed in any::<u64>(), r in 0.0..std::f64::consts::PI) {
        let (rs, group) = setup(tag);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t0 = random_chamber_direction(&rs, &mut rng);
        let t = random_chamber_direction(&rs, &mut rng);
        let m = metric_thickening(&rs, &group, &t0, &t, r).unwrap();
        let covers = BruhatCovers::new(&group);
        prop_assert!(ideal_violation(&covers, &m.thickening).is_none());
        prop_assert!(m.thickening.contains(group.identity()) || m.angles[0] > r);
    }

    #[test]
    fn generic_right_angle_thickenings_are_balanced(tag in prop::sample::select(&SMALL_TYPES[..]), seed in any::<u64>(), k in 0usize..8) {
        let (rs, group) = setup(tag);
        let faces: Vec<FaceType> = FaceType::all(rs.rank()).into_iter().filter(|f| f.is_iota_invariant(&group)).collect();
        let face = faces[k % faces.len()];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = random_chamber_direction(&rs, &mut rng);
        let m = metric_thickening(&rs, &group, &face_direction(&rs, &group, face), &t, FRAC_PI_2).unwrap();
        prop_assume!(m.warnings.is_empty());
        let c = classify_with(&group, &BruhatCovers::new(&group), &m.thickening);
        prop_assert!(c.balanced);
        prop_assert_eq!(m.thickening.len() * 2, group.order());
        prop_assert!(is_left_invariant(&group, &m.thickening, face));
    }
}
