use std::collections::BTreeSet;

use proptest::prelude::*;
use unitri::dilation::{triangulate, BoundaryStyle};
use unitri::empty_simplex::{canonical_p, classify, delta, delta_prime};
use unitri::formats::{read_triangulation, write_triangulation};
use unitri::fundamental_square::{paths_compatible, SquareContext};
use unitri::lattice_core::*;
use unitri::polytope_pipeline::{shared_face_contract, triangulate_dilation, LatticePolytope, PipelineOptions};
use unitri::verifier::{verify_complex, verify_unimodular};

fn coprime() -> impl Strategy<Value = (i64, i64)> {
    (2i64..40).prop_flat_map(|q| (Just(q), 1..q)).prop_filter("coprime", |(q, p)| gcd(*p, *q) == 1).prop_map(|(q, p)| (p, q))
}

/// Product of elementary matrices with small entries.
fn unimodular() -> impl Strategy<Value = Mat3> {
    prop::collection::vec((0usize..3, 0usize..3, -2i64..=2, any::<bool>()), 0..6).prop_map(|ops| {
        let mut m: Mat3 = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
        for (i, j, a, neg) in ops {
            let mut e: Mat3 = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
            if i != j {
                e[i][j] = a;
            } else if neg {
                e[i][i] = -1;
            }
            m = mat_mul(&e, &m);
        }
        m
    })
}

fn affine() -> impl Strategy<Value = AffineLatticeMap> {
    (unimodular(), -5i64..5, -5i64..5, -5i64..5)
        .prop_map(|(m, x, y, z)| AffineLatticeMap { linear: m, translation: LatticePoint::new(x, y, z) })
}

fn mapped(t: &Triangulation, f: &AffineLatticeMap) -> Triangulation {
    let cells: Vec<[LatticePoint; 4]> = t.cells().map(|c| c.map(|v| f.apply(v))).collect();
    let basis = t.lattice.basis().map(|b| mat_vec(&f.linear, b));
    let lattice = AmbientLattice::new(basis).unwrap();
    Triangulation::from_cells(lattice, &cells, t.boundary_style, t.meta.clone())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn classification_is_affine_invariant((p, q) in coprime(), f in affine()) {
        let v = delta(p, q).map(|x| f.apply(x));
        let s = LatticeSimplex::in_integer_lattice(v).unwrap();
        let c = classify(&s).unwrap();
        prop_assert_eq!(c.q, q);
        prop_assert_eq!(canonical_p(c.p, c.q).unwrap(), canonical_p(p, q).unwrap());
        let image: BTreeSet<LatticePoint> = v.iter().map(|x| c.to_canonical.apply(*x)).collect();
        let target: BTreeSet<LatticePoint> = delta(c.p, c.q).into_iter().collect();
        prop_assert_eq!(image, target);
    }

    #[test]
    fn canonical_p_is_an_orbit_invariant((p, q) in coprime()) {
        let inv = mod_inverse(p, q).unwrap();
        let cp = canonical_p(p, q).unwrap();
        for other in [q - p, inv, (q - inv) % q] {
            prop_assert_eq!(canonical_p(other, q).unwrap(), cp);
        }
        prop_assert!(cp <= p && cp <= q / 2);
    }

    #[test]
    fn dilate_point_count((p, q) in coprime(), k in 1i64..7) {
        let l = AmbientLattice::lambda(p, q).unwrap();
        let n = lattice_points_in(&delta_prime(q, k), &l).len() as i64;
        prop_assert_eq!(n, binomial(k + 3, 3) + binomial(k + 1, 3) * (q - 1));
    }

    #[test]
    fn square_compatibility((p, q) in coprime()) {
        let ctx = SquareContext::new(p, q).unwrap();
        prop_assert_eq!(paths_compatible(&ctx).unwrap(), p == 1 || p == q - 1);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn standard_dilations_verify((p, q) in coprime().prop_filter("small", |(_, q)| *q <= 11),
                                 k in prop::sample::select(vec![4i64, 6, 8, 9])) {
        let t = triangulate(p, q, k, BoundaryStyle::Standard).unwrap();
        prop_assert_eq!(t.len() as i64, k * k * k * q);
        prop_assert_eq!(t.vertices.len() as i64, binomial(k + 3, 3) + binomial(k + 1, 3) * (q - 1));
        let r = verify_complex(&t, &ConvexRegion::from_points(&delta_prime(q, k)).unwrap()).merge(verify_unimodular(&t));
        prop_assert!(r.passed(), "{:?}", r.failures());
    }

    #[test]
    fn verification_survives_unimodular_maps((p, q) in coprime().prop_filter("small", |(_, q)| *q <= 7), f in affine()) {
        let t = triangulate(p, q, 4, BoundaryStyle::Standard).unwrap();
        // Translate by a vector of the lattice so vertices stay lattice points.
        let f = AffineLatticeMap { linear: f.linear, translation: mat_vec(&f.linear, t.lattice.from_coords(f.translation)) };
        let g = mapped(&t, &f);
        let region: Vec<LatticePoint> = delta_prime(q, 4).iter().map(|v| f.apply(*v)).collect();
        let r = verify_complex(&g, &ConvexRegion::from_points(&region).unwrap()).merge(verify_unimodular(&g));
        prop_assert!(r.passed(), "{:?}", r.failures());
    }

    #[test]
    fn verification_ignores_labels((p, q) in coprime().prop_filter("small", |(_, q)| *q <= 7), seed in any::<u64>()) {
        let t = triangulate(p, q, 4, BoundaryStyle::Standard).unwrap();
        let n = t.vertices.len();
        let perm: Vec<usize> = {
            let mut idx: Vec<(u64, usize)> = (0..n).map(|i| ((i as u64 ^ seed).wrapping_mul(0x9e37_79b9_7f4a_7c15), i)).collect();
            idx.sort_unstable();
            idx.into_iter().map(|(_, i)| i).collect()
        };
        let mut relabelled = t.clone();
        for (new, old) in perm.iter().enumerate() {
            relabelled.vertices[new] = t.vertices[*old];
        }
        let mut inverse = vec![0u32; n];
        for (new, old) in perm.iter().enumerate() {
            inverse[*old] = new as u32;
        }
        for c in relabelled.tetrahedra.iter_mut() {
            *c = c.map(|i| inverse[i as usize]);
        }
        let region = ConvexRegion::from_points(&delta_prime(q, 4)).unwrap();
        let a = verify_complex(&t, &region);
        let b = verify_complex(&relabelled, &region);
        prop_assert!(b.passed());
        prop_assert_eq!(a.counts, b.counts);
    }

    #[test]
    fn json_round_trip((p, q) in coprime().prop_filter("small", |(_, q)| *q <= 7)) {
        let t = triangulate(p, q, 4, BoundaryStyle::Standard).unwrap();
        let back = read_triangulation(&write_triangulation(&t)).unwrap();
        prop_assert_eq!(back, t);
    }

    #[test]
    fn random_polytopes(points in prop::collection::vec((0i64..3, 0i64..3, 0i64..3), 4..8)) {
        let pts: Vec<LatticePoint> = points.iter().map(|(x, y, z)| LatticePoint::new(*x, *y, *z)).collect();
        let p = LatticePolytope::new(&pts);
        prop_assume!(p.is_ok());
        let p = p.unwrap();
        let t = triangulate_dilation(&p, PipelineOptions { k: 4, style: BoundaryStyle::Standard, dissection: false }).unwrap();
        let kp = p.dilate(4).unwrap();
        let r = verify_complex(&t, kp.region()).merge(verify_unimodular(&t));
        prop_assert!(r.passed(), "{:?}", r.failures());
        prop_assert_eq!(t.len() as i128, 64 * p.normalized_volume());
        let used: BTreeSet<LatticePoint> = t.vertices.iter().copied().collect();
        let all: BTreeSet<LatticePoint> = kp.lattice_points().into_iter().collect();
        prop_assert_eq!(used, all);
    }

    #[test]
    fn face_contract_ignores_vertex_order(f in affine(), ra in 0usize..24, rb in 0usize..24,
                                          k in prop::sample::select(vec![4i64, 6, 7, 8])) {
        let o = LatticePoint::new;
        let a = [o(0, 0, 0), o(1, 0, 0), o(0, 1, 0), o(0, 0, 1)].map(|v| f.apply(v));
        let b = [o(0, 0, 0), o(1, 0, 0), o(0, 1, 0), o(1, 1, -3)].map(|v| f.apply(v));
        let perm = |c: [LatticePoint; 4], r: usize| {
            let mut v = c.to_vec();
            let mut out = Vec::new();
            let mut r = r;
            while !v.is_empty() {
                out.push(v.remove(r % v.len()));
                r /= 4;
            }
            [out[0], out[1], out[2], out[3]]
        };
        let style = if k == 7 { BoundaryStyle::QuasiStandard } else { BoundaryStyle::Standard };
        let x = shared_face_contract(&a, &b, k, style).unwrap();
        let y = shared_face_contract(&perm(b, rb), &perm(a, ra), k, style).unwrap();
        prop_assert_eq!(x, y);
    }
}
