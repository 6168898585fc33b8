use unitri::dilation::{quasi_standard_face, triangulate, BoundaryStyle};
use unitri::empty_simplex::delta_prime;
use unitri::formats::{read_polytope, read_triangulation};
use unitri::lattice_core::{ConvexRegion, LatticePoint, Triangulation};
use unitri::verifier::*;

fn text(name: &str) -> String {
    std::fs::read_to_string(format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

fn region(name: &str) -> ConvexRegion {
    read_polytope(&text(name)).unwrap().to_polytope().unwrap().region().clone()
}

#[test]
fn overlapping_cells() {
    let t = read_triangulation(&text("overlap.json")).unwrap();
    let r = verify_complex(&t, &region("overlap.region.json"));
    let c = r.check("intersections").unwrap();
    assert!(!c.passed);
    assert_eq!(c.counterexample.len(), 1);
}

#[test]
fn improper_faces() {
    let t = read_triangulation(&text("face_mismatch.json")).unwrap();
    let r = verify_complex(&t, &region("face_mismatch.region.json"));
    assert_eq!(r.failures(), vec!["faces"]);
    assert!(verify_unimodular(&t).passed());
}

#[test]
fn missing_cell() {
    let t = read_triangulation(&text("volume_deficit.json")).unwrap();
    let r = verify_complex(&t, &region("volume_deficit.region.json"));
    assert_eq!(r.failures(), vec!["volume", "faces"]);
}

#[test]
fn stored_triangulation_passes() {
    let t = read_triangulation(&text("tetragonal_2_3.json")).unwrap();
    let r = verify_complex(&t, &ConvexRegion::from_points(&delta_prime(3, 2)).unwrap())
        .merge(verify_unimodular(&t))
        .merge(verify_boundary(&t, &delta_prime(3, 1), 2, BoundaryStyle::Standard));
    assert!(r.passed(), "{:?}", r.failures());
    assert_eq!(r.counts.cells, 24);
    assert_eq!(r.counts.nonstandard_edges, 0);
}

#[test]
fn degenerate_and_outside_cells() {
    let p = |x, y, z| LatticePoint::new(x, y, z);
    let unit = [p(0, 0, 0), p(1, 0, 0), p(0, 1, 0), p(0, 0, 1)];
    let flat = [p(0, 0, 0), p(1, 0, 0), p(0, 1, 0), p(1, 1, 0)];
    let t = Triangulation::from_cells(
        unitri::lattice_core::AmbientLattice::integer(),
        &[unit, flat],
        BoundaryStyle::Unconstrained,
        Default::default(),
    );
    let r = verify_complex(&t, &ConvexRegion::from_points(&unit).unwrap());
    assert!(!r.check("positive_volume").unwrap().passed);
    assert!(!r.check("vertices").unwrap().passed);
}

#[test]
fn non_unimodular_cell() {
    let t = Triangulation::from_cells(
        unitri::lattice_core::AmbientLattice::integer(),
        &[delta_prime(2, 1)],
        BoundaryStyle::Unconstrained,
        Default::default(),
    );
    assert!(verify_complex(&t, &ConvexRegion::from_points(&delta_prime(2, 1)).unwrap()).passed());
    assert!(!verify_unimodular(&t).passed());
}

#[test]
fn quasi_face_derivations_agree() {
    for k in 7..=13 {
        assert_eq!(quasi_standard_face(k).unwrap().edges, expected_quasi_face(k), "k={k}");
    }
}

#[test]
fn standard_triangulation_fails_quasi_check() {
    let t = triangulate(2, 5, 8, BoundaryStyle::Standard).unwrap();
    let r = verify_boundary(&t, &delta_prime(5, 1), 8, BoundaryStyle::QuasiStandard);
    assert!(!r.passed());
}

#[test]
fn small_oracles() {
    let r = oracle_white(12, 2);
    assert!(r.passed(), "{:?}", r.failures());
    let r = oracle_k2(15);
    assert!(r.passed(), "{:?}", r.failures());
}

#[test]
fn dilate_point_counts() {
    assert_eq!(count_dilate_points(2, 5, 2), 14);
    assert_eq!(count_dilate_points(0, 1, 3), 20);
}

#[test]
fn triangle_multiplicity_map() {
    let t = triangulate(0, 1, 2, BoundaryStyle::Standard).unwrap();
    let m = triangle_multiplicities(&t);
    let ones = m.values().filter(|n| **n == 1).count();
    let twos = m.values().filter(|n| **n == 2).count();
    assert_eq!(ones + 2 * twos, 4 * t.len());
    assert_eq!(ones, 16);
}
