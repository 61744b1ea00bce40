use std::f64::consts::PI;

use proptest::prelude::*;

use bloch_geometry::distances::{
    bures_distance, bures_distance_general, euclid_distance, sjoqvist_distance,
    sjoqvist_distance_wrapped, taxicab_distance,
};
use bloch_geometry::rotations::reduce_to_xz_plane;
use bloch_geometry::states::{bloch_to_density, BlochVector, PlanarState};

fn planar() -> impl Strategy<Value = PlanarState> {
    (1e-6..=1.0f64, 0.0..=PI).prop_map(|(r, theta)| PlanarState { r, theta })
}

fn bloch() -> impl Strategy<Value = BlochVector> {
    (0.0..=1.0f64, 0.0..=PI, 0.0..2.0 * PI).prop_map(|(p, t, f)| BlochVector {
        px: p * t.sin() * f.cos(),
        py: p * t.sin() * f.sin(),
        pz: p * t.cos(),
    })
}

proptest! {
    #[test]
    fn distances_are_symmetric(a in planar(), b in planar()) {
        prop_assert!((bures_distance(&a, &b).unwrap() - bures_distance(&b, &a).unwrap()).abs() < 1e-14);
        prop_assert!((sjoqvist_distance(&a, &b).unwrap() - sjoqvist_distance(&b, &a).unwrap()).abs() < 1e-14);
    }

    #[test]
    fn euclid_below_taxicab(a in prop::array::uniform2(-1.0..1.0f64), b in prop::array::uniform2(-1.0..1.0f64)) {
        prop_assert!(euclid_distance(a, b) <= taxicab_distance(a, b) + 1e-15);
    }

    #[test]
    fn bures_below_sjoqvist(a in planar(), b in planar()) {
        let (lb, ls) = (bures_distance(&a, &b).unwrap(), sjoqvist_distance(&a, &b).unwrap());
        prop_assert!(lb >= 0.0 && lb <= ls + 1e-15);
        prop_assert!(sjoqvist_distance_wrapped(&a, &b).unwrap() <= ls + 1e-15);
    }

    #[test]
    fn reduction_keeps_norms_and_distance(a in bloch(), b in bloch()) {
        let red = reduce_to_xz_plane(&a, &b).unwrap();
        prop_assert!((red.p1_new.norm() - a.norm()).abs() < 1e-12);
        prop_assert!((red.p2_new.norm() - b.norm()).abs() < 1e-12);
        prop_assert!(red.p1_new.py.abs() < 1e-12 && red.p2_new.py.abs() < 1e-12);
        let (pa, pb) = red.planar_pair();
        let general = bures_distance_general(&bloch_to_density(&a).unwrap(), &bloch_to_density(&b).unwrap()).unwrap();
        prop_assert!((bures_distance(&pa, &pb).unwrap() - general).abs() < 1e-10);
    }
}
