//! Empty lattice tetrahedra: emptiness, widths, White normal form.

use serde::{Deserialize, Serialize};

use crate::error::{domain, internal, Error, Result};
use crate::lattice_core::{
    adjugate, ext_gcd, from_cols, gcd, lattice_points_in, mat_det, mat_mul, mat_vec, mod_inverse,
    AffineLatticeMap, AmbientLattice, LatticePoint, LatticeSimplex, Mat3, IDENTITY,
};

/// One of the three ways to split four vertices into two disjoint edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OppositeEdgePair(u8);

impl OppositeEdgePair {
    pub const ALL: [OppositeEdgePair; 3] = [OppositeEdgePair(0), OppositeEdgePair(1), OppositeEdgePair(2)];

    pub fn new(index: u8) -> Result<Self> {
        if index > 2 {
            return domain(format!("opposite edge pair index {index} is not in 0..=2"));
        }
        Ok(OppositeEdgePair(index))
    }

    pub fn index(self) -> u8 {
        self.0
    }

    /// Vertex indices `((a, b), (c, d))` of the two edges.
    pub fn edges(self) -> ((usize, usize), (usize, usize)) {
        match self.0 {
            0 => ((0, 1), (2, 3)),
            1 => ((0, 2), (1, 3)),
            _ => ((0, 3), (1, 2)),
        }
    }
}

/// White parameters `(p, q)` and a map onto `Δ(p, q)`.
///
/// `to_canonical` acts on lattice coordinates of the input (coordinates with
/// respect to the basis of the simplex's lattice); for simplices over `Z^3`
/// these are the ordinary coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmptyClass {
    pub p: i64,
    pub q: i64,
    pub to_canonical: AffineLatticeMap,
}

impl EmptyClass {
    /// Class with the identity map, for when only `(p, q)` matters.
    pub fn from_pq(p: i64, q: i64) -> Result<Self> {
        if q < 1 {
            return domain(format!("q = {q} must be positive"));
        }
        if gcd(p, q) != 1 {
            return domain(format!("gcd({p}, {q}) is not 1"));
        }
        Ok(EmptyClass { p: p.rem_euclid(q), q, to_canonical: AffineLatticeMap::identity() })
    }
}

/// `conv{(0,0,0), (1,0,0), (0,0,1), (p,q,1)}` over `Z^3`.
pub fn delta(p: i64, q: i64) -> [LatticePoint; 4] {
    [
        LatticePoint::new(0, 0, 0),
        LatticePoint::new(1, 0, 0),
        LatticePoint::new(0, 0, 1),
        LatticePoint::new(p, q, 1),
    ]
}

/// Vertices of `k Δ'(p, q) = k conv{(0,0,0), (q,0,0), (0,0,1), (0,q,1)}`.
pub fn delta_prime(q: i64, k: i64) -> [LatticePoint; 4] {
    [
        LatticePoint::new(0, 0, 0),
        LatticePoint::new(k * q, 0, 0),
        LatticePoint::new(0, 0, k),
        LatticePoint::new(0, k * q, k),
    ]
}

/// The map `(x, y, z) -> (q x - p y, y, z)`, carrying `Z^3` onto `Λ_{p,q}`.
pub fn ell(p: i64, q: i64) -> AffineLatticeMap {
    AffineLatticeMap::linear([[q, -p, 0], [0, 1, 0], [0, 0, 1]])
}

pub fn is_empty(s: &LatticeSimplex) -> bool {
    match s.lattice_coords() {
        Ok(c) => lattice_points_in(&c, &AmbientLattice::integer()).len() == 4,
        Err(_) => false,
    }
}

fn pair_data(c: &[LatticePoint; 4], pair: OppositeEdgePair) -> (LatticePoint, i64) {
    let ((a, b), (cc, d)) = pair.edges();
    let n = (c[b] - c[a]).cross(c[d] - c[cc]).primitive();
    (n, n.dot(c[cc] - c[a]))
}

pub fn width_wrt_opposite_edges(s: &LatticeSimplex, pair: OppositeEdgePair) -> Result<u64> {
    let c = s.lattice_coords()?;
    let (n, w) = pair_data(&c, pair);
    if n.is_zero() {
        return domain("opposite edges are parallel");
    }
    Ok(w.unsigned_abs())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeWidth {
    pub width: u64,
    /// Minimizing functional, in coordinates dual to the lattice basis.
    pub functional: LatticePoint,
    /// Whether the coefficient bound provably contains every functional of smaller width.
    pub certified: bool,
}

/// Brute-force lattice width over functionals with coefficients in `[-bound, bound]`.
pub fn lattice_width(vertices: &[LatticePoint], lattice: &AmbientLattice, search_bound: i64) -> Result<LatticeWidth> {
    let mut coords = Vec::with_capacity(vertices.len());
    for v in vertices {
        match lattice.coords(*v) {
            Some(c) => coords.push(c),
            None => return domain(format!("vertex {v} is not a lattice point")),
        }
    }
    let base = full_dimensional_simplex(&coords).ok_or_else(|| Error::Domain("polytope is not full-dimensional".into()))?;
    let b = search_bound.max(1);
    let mut best: Option<(u64, LatticePoint)> = None;
    for x in -b..=b {
        for y in -b..=b {
            for z in -b..=b {
                let g = LatticePoint::new(x, y, z);
                if g.is_zero() || g.content() != 1 || !leading_positive(g) {
                    continue;
                }
                let vals = coords.iter().map(|v| g.dot(*v));
                let (lo, hi) = vals.fold((i64::MAX, i64::MIN), |(lo, hi), t| (lo.min(t), hi.max(t)));
                let w = (hi - lo) as u64;
                if best.is_none_or(|(bw, _)| w < bw) {
                    best = Some((w, g));
                }
            }
        }
    }
    let (width, functional) = best.expect("bound admits at least one functional");
    // Any functional of width < `width` is bounded by (width-1) times the rows of E^{-T}.
    let e = from_cols(base[1] - base[0], base[2] - base[0], base[3] - base[0]);
    let det = mat_det(&e).unsigned_abs();
    let adj = adjugate(&e);
    let max_row: u128 = (0..3)
        .map(|j| (0..3).map(|i| adj[j][i].unsigned_abs() as u128).sum::<u128>())
        .max()
        .unwrap_or(0);
    let certified = width <= 1 || (width as u128 - 1) * max_row <= b as u128 * det;
    Ok(LatticeWidth { width, functional, certified })
}

fn leading_positive(g: LatticePoint) -> bool {
    if g.x != 0 {
        g.x > 0
    } else if g.y != 0 {
        g.y > 0
    } else {
        g.z > 0
    }
}

fn full_dimensional_simplex(pts: &[LatticePoint]) -> Option<[LatticePoint; 4]> {
    let n = pts.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                for l in k + 1..n {
                    let s = [pts[i], pts[j], pts[k], pts[l]];
                    if crate::lattice_core::tet_det(&s) != 0 {
                        return Some(s);
                    }
                }
            }
        }
    }
    None
}

/// Unimodular `C` with `n · C = e1` for a primitive row vector `n`.
fn complete_functional(n: LatticePoint) -> Mat3 {
    let mut r = n.to_array();
    let mut c = IDENTITY;
    loop {
        let nz: Vec<usize> = (0..3).filter(|&i| r[i] != 0).collect();
        if nz.len() <= 1 {
            break;
        }
        let piv = *nz.iter().min_by_key(|&&i| r[i].abs()).unwrap();
        for &j in &nz {
            if j != piv {
                let m = r[j].div_euclid(r[piv]);
                r[j] -= m * r[piv];
                for row in c.iter_mut() {
                    row[j] -= m * row[piv];
                }
            }
        }
    }
    let piv = (0..3).find(|&i| r[i] != 0).expect("nonzero functional");
    if piv != 0 {
        r.swap(0, piv);
        for row in c.iter_mut() {
            row.swap(0, piv);
        }
    }
    if r[0] < 0 {
        for row in c.iter_mut() {
            row[0] = -row[0];
        }
    }
    c
}

/// Inverse of an integer matrix with determinant ±1.
pub(crate) fn unimodular_inverse(m: &Mat3) -> Option<Mat3> {
    AffineLatticeMap::linear(*m).inverse().map(|a| a.linear)
}

/// White normal form.
pub fn classify(s: &LatticeSimplex) -> Result<EmptyClass> {
    if !is_empty(s) {
        return domain("simplex is not empty");
    }
    classify_empty(s)
}

/// As [`classify`], trusting the caller that the simplex is empty.
pub fn classify_empty(s: &LatticeSimplex) -> Result<EmptyClass> {
    let c = s.lattice_coords()?;
    let pair = OppositeEdgePair::ALL
        .into_iter()
        .find(|pr| pair_data(&c, *pr).1.abs() == 1)
        .ok_or_else(|| Error::Internal("no opposite edge pair of width one".into()))?;
    let ((ia, ib), (ic, id)) = pair.edges();
    let (a, b, cc, d) = (c[ia], c[ib], c[ic], c[id]);
    let (mut n, w) = pair_data(&c, pair);
    if w < 0 {
        n = -n;
    }
    let u = b - a;
    let cmat = complete_functional(n);
    let cinv = unimodular_inverse(&cmat).ok_or_else(|| Error::Internal("column reduction not unimodular".into()))?;
    let uu = mat_vec(&cinv, u);
    if uu.x != 0 {
        return internal("edge direction not in the kernel of the width functional");
    }
    let (g, s1, t1) = ext_gcd(uu.y, uu.z);
    if g != 1 {
        return domain("simplex edge is not primitive");
    }
    // alpha*delta - beta*gamma = 1 with delta = s1, gamma = -t1.
    let f2 = LatticePoint::new(0, -t1, s1);
    let f2 = mat_vec(&cmat, f2);
    let qm = from_cols(u, f2, cc - a);
    let mut gm = unimodular_inverse(&qm).ok_or_else(|| Error::Internal("frame is not unimodular".into()))?;
    let img = mat_vec(&gm, d - a);
    if img.z != 1 {
        return internal("fourth vertex not at height one");
    }
    let (mut pp, mut qq) = (img.x, img.y);
    if qq < 0 {
        gm = mat_mul(&[[1, 0, 0], [0, -1, 0], [0, 0, 1]], &gm);
        qq = -qq;
    }
    if qq == 0 {
        return internal("degenerate simplex");
    }
    let f = pp.div_euclid(qq);
    gm = mat_mul(&[[1, -f, 0], [0, 1, 0], [0, 0, 1]], &gm);
    pp -= f * qq;
    let t = -mat_vec(&gm, a);
    let map = AffineLatticeMap { linear: gm, translation: t };
    // Vertices other than the pair's are permuted; record the images for checking.
    debug_assert_eq!(map.apply(a), LatticePoint::new(0, 0, 0));
    debug_assert_eq!(map.apply(b), LatticePoint::new(1, 0, 0));
    debug_assert_eq!(map.apply(cc), LatticePoint::new(0, 0, 1));
    debug_assert_eq!(map.apply(d), LatticePoint::new(pp, qq, 1));
    let p = if qq == 1 { 0 } else { pp };
    Ok(EmptyClass { p, q: qq, to_canonical: map })
}

pub fn canonical_p(p: i64, q: i64) -> Result<i64> {
    if q < 1 {
        return domain(format!("q = {q} must be positive"));
    }
    if q == 1 {
        return Ok(0);
    }
    let inv = mod_inverse(p, q)?;
    let orbit = [p.rem_euclid(q), (-p).rem_euclid(q), inv, (-inv).rem_euclid(q)];
    Ok(*orbit.iter().min().unwrap())
}

/// `Δ'(p, q)` over `Λ_{p,q}` together with `ℓ_{p,q} ∘ to_canonical`.
pub fn to_right_angled(cls: &EmptyClass) -> Result<(LatticeSimplex, AffineLatticeMap)> {
    let lattice = AmbientLattice::lambda(cls.p, cls.q)?;
    let s = LatticeSimplex::new(delta_prime(cls.q, 1), lattice)?;
    Ok((s, ell(cls.p, cls.q).compose(&cls.to_canonical)))
}

pub fn is_tetragonal(cls: &EmptyClass) -> bool {
    matches!(canonical_p(cls.p, cls.q), Ok(0) | Ok(1))
}

/// An affine map carrying lattice `la` onto `lb` and simplex `a` onto simplex `b`, if one exists.
pub fn find_lattice_iso(
    a: &[LatticePoint; 4],
    la: &AmbientLattice,
    b: &[LatticePoint; 4],
    lb: &AmbientLattice,
) -> Option<AffineLatticeMap> {
    let sa = from_cols(a[1] - a[0], a[2] - a[0], a[3] - a[0]);
    let det = mat_det(&sa);
    if det == 0 {
        return None;
    }
    let adj = adjugate(&sa);
    let det = det as i64;
    for perm in permutations4() {
        let tb = [b[perm[0]], b[perm[1]], b[perm[2]], b[perm[3]]];
        let sb = from_cols(tb[1] - tb[0], tb[2] - tb[0], tb[3] - tb[0]);
        let num = mat_mul(&sb, &adj);
        if num.iter().flatten().any(|e| e % det != 0) {
            continue;
        }
        let mut lin = num;
        for e in lin.iter_mut().flatten() {
            *e /= det;
        }
        let t = tb[0] - mat_vec(&lin, a[0]);
        let m = AffineLatticeMap { linear: lin, translation: t };
        if m.is_unimodular_between(la, lb) {
            return Some(m);
        }
    }
    None
}

fn permutations4() -> Vec<[usize; 4]> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    if a != b && a != c && a != d && b != c && b != d && c != d {
                        out.push([a, b, c, d]);
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64, y: i64, z: i64) -> LatticePoint {
        LatticePoint::new(x, y, z)
    }

    #[test]
    fn functional_completion() {
        for n in [p(3, 5, 7), p(0, 0, -1), p(6, 10, 15), p(-4, 1, 0)] {
            let c = complete_functional(n);
            assert_eq!(mat_det(&c).abs(), 1);
            let row = [0, 1, 2].map(|j| n.x * c[0][j] + n.y * c[1][j] + n.z * c[2][j]);
            assert_eq!(row, [1, 0, 0]);
        }
    }

    #[test]
    fn classify_white_form() {
        let s = LatticeSimplex::in_integer_lattice(delta(5, 13)).unwrap();
        let c = classify(&s).unwrap();
        assert_eq!((c.p, c.q), (5, 13));
        let s = LatticeSimplex::in_integer_lattice(delta(0, 1)).unwrap();
        assert_eq!(classify(&s).unwrap().q, 1);
    }
}
