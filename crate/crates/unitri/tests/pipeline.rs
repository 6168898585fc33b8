use std::collections::BTreeSet;

use unitri::dilation::BoundaryStyle;
use unitri::formats::read_polytope;
use unitri::lattice_core::LatticePoint;
use unitri::polytope_pipeline::*;
use unitri::verifier::{verify_complex, verify_unimodular};

fn load(name: &str) -> LatticePolytope {
    let path = format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    read_polytope(&std::fs::read_to_string(path).unwrap()).unwrap().to_polytope().unwrap()
}

fn opts(k: i64, style: BoundaryStyle) -> PipelineOptions {
    PipelineOptions { k, style, dissection: false }
}

#[test]
fn initial_triangulation_covers_the_polytope() {
    for name in ["cube.json", "six_vertex.json", "two_cell.json"] {
        let p = load(name);
        let c = initial_empty_triangulation(&p).unwrap();
        let total: i64 = c.classes.iter().map(|cls| cls.q).sum();
        assert_eq!(total as i128, p.normalized_volume(), "{name}");
        assert_eq!(c.tetrahedra.len(), c.classes.len());
    }
    let six = initial_empty_triangulation(&load("six_vertex.json")).unwrap();
    assert!(six.classes.iter().any(|c| c.q > 2), "fixture should contain a non-tetragonal cell");
}

#[test]
fn vertices_are_all_lattice_points() {
    let p = load("six_vertex.json");
    let t = triangulate_dilation(&p, opts(4, BoundaryStyle::Standard)).unwrap();
    let used: BTreeSet<LatticePoint> = t.vertices.iter().copied().collect();
    let all: BTreeSet<LatticePoint> = p.dilate(4).unwrap().lattice_points().into_iter().collect();
    assert_eq!(used, all);
}

#[test]
fn shared_faces_follow_the_contract() {
    let p = load("six_vertex.json");
    let c = initial_empty_triangulation(&p).unwrap();
    for (k, style) in [(4, BoundaryStyle::Standard), (7, BoundaryStyle::QuasiStandard)] {
        let t = triangulate_dilation(&p, opts(k, style)).unwrap();
        let mut shared = 0;
        for i in 0..c.tetrahedra.len() {
            for j in i + 1..c.tetrahedra.len() {
                let (a, b) = (c.cell(i), c.cell(j));
                let Ok(contract) = shared_face_contract(&a, &b, k, style) else { continue };
                shared += 1;
                let got = face_edges(&t, &contract.vertices, k);
                assert_eq!(got, contract.edges, "k={k} face {:?}", contract.vertices);
            }
        }
        assert!(shared > 0);
    }
}

#[test]
fn dilations_verify() {
    for (name, k) in [("cube.json", 4), ("six_vertex.json", 6), ("two_cell.json", 8)] {
        let p = load(name);
        let t = triangulate_dilation(&p, opts(k, BoundaryStyle::Standard)).unwrap();
        let r = verify_complex(&t, p.dilate(k).unwrap().region()).merge(verify_unimodular(&t));
        assert!(r.passed(), "{name} k={k}: {:?}", r.failures());
        assert_eq!(t.len() as i128, (k * k * k) as i128 * p.normalized_volume());
    }
}

#[test]
fn independent_dissection_breaks_faces() {
    let p = load("two_cell.json");
    let t = triangulate_dilation(&p, PipelineOptions { k: 2, style: BoundaryStyle::Standard, dissection: true }).unwrap();
    let r = verify_complex(&t, p.dilate(2).unwrap().region());
    assert_eq!(r.failures(), vec!["faces"]);
}

#[test]
fn impossible_dilations_are_refused() {
    let p = load("two_cell.json");
    for (k, style) in [(2, BoundaryStyle::Standard), (7, BoundaryStyle::Standard), (4, BoundaryStyle::Unconstrained)] {
        assert!(triangulate_dilation(&p, opts(k, style)).is_err(), "k={k} {style:?}");
    }
    let cube = load("cube.json");
    assert!(triangulate_dilation(&cube, opts(2, BoundaryStyle::Standard)).is_ok());
}

#[test]
fn contract_rejects_non_neighbours() {
    let p = |x, y, z| LatticePoint::new(x, y, z);
    let a = [p(0, 0, 0), p(1, 0, 0), p(0, 1, 0), p(0, 0, 1)];
    let b = [p(0, 0, 0), p(1, 0, 0), p(0, 1, 0), p(0, 0, -1)];
    let c = [p(0, 0, 0), p(1, 0, 0), p(0, -1, 0), p(0, 0, -1)];
    assert!(shared_face_contract(&a, &b, 4, BoundaryStyle::Standard).is_ok());
    assert!(shared_face_contract(&a, &c, 4, BoundaryStyle::Standard).is_err());
    assert!(shared_face_contract(&a, &b, 4, BoundaryStyle::Unconstrained).is_err());
}
