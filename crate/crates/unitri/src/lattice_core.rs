//! Exact integer linear algebra and lattice primitives.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::dilation::BoundaryStyle;
use crate::error::{domain, internal, Result};

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Returns `(g, s, t)` with `s*a + t*b = g = gcd(a, b) >= 0`.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i64, 0i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let qt = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - qt * r1);
        (s0, s1) = (s1, s0 - qt * s1);
        (t0, t1) = (t1, t0 - qt * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

pub fn mod_inverse(a: i64, q: i64) -> Result<i64> {
    if q < 2 {
        return domain(format!("mod_inverse: modulus {q} must be at least 2"));
    }
    let a = a.rem_euclid(q);
    let (g, s, _) = ext_gcd(a, q);
    if g != 1 {
        return domain(format!("mod_inverse: gcd({a}, {q}) = {g} is not 1"));
    }
    Ok(s.rem_euclid(q))
}

pub fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || n < k {
        return 0;
    }
    let mut r: i64 = 1;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(from = "[i64; 3]", into = "[i64; 3]")]
pub struct LatticePoint {
    pub x: i64,
    pub y: i64,
    pub z: i64,
}

impl fmt::Debug for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl From<[i64; 3]> for LatticePoint {
    fn from(a: [i64; 3]) -> Self {
        LatticePoint::new(a[0], a[1], a[2])
    }
}

impl From<LatticePoint> for [i64; 3] {
    fn from(p: LatticePoint) -> Self {
        [p.x, p.y, p.z]
    }
}

impl LatticePoint {
    pub const ORIGIN: LatticePoint = LatticePoint { x: 0, y: 0, z: 0 };

    pub const fn new(x: i64, y: i64, z: i64) -> Self {
        LatticePoint { x, y, z }
    }

    pub fn to_array(self) -> [i64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn dot(self, o: LatticePoint) -> i64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn cross(self, o: LatticePoint) -> LatticePoint {
        LatticePoint::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    pub fn is_zero(self) -> bool {
        self.x == 0 && self.y == 0 && self.z == 0
    }

    /// Gcd of the coordinates (0 for the zero vector).
    pub fn content(self) -> i64 {
        gcd(gcd(self.x, self.y), self.z)
    }

    /// Divides out the content; the zero vector is returned unchanged.
    pub fn primitive(self) -> LatticePoint {
        let g = self.content();
        if g == 0 {
            self
        } else {
            LatticePoint::new(self.x / g, self.y / g, self.z / g)
        }
    }
}

impl Add for LatticePoint {
    type Output = LatticePoint;
    fn add(self, o: LatticePoint) -> LatticePoint {
        LatticePoint::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for LatticePoint {
    type Output = LatticePoint;
    fn sub(self, o: LatticePoint) -> LatticePoint {
        LatticePoint::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for LatticePoint {
    type Output = LatticePoint;
    fn neg(self) -> LatticePoint {
        LatticePoint::new(-self.x, -self.y, -self.z)
    }
}

impl Mul<LatticePoint> for i64 {
    type Output = LatticePoint;
    fn mul(self, p: LatticePoint) -> LatticePoint {
        LatticePoint::new(self * p.x, self * p.y, self * p.z)
    }
}

/// Row-major 3×3 integer matrix.
pub type Mat3 = [[i64; 3]; 3];

pub const IDENTITY: Mat3 = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];

pub fn det3(a: LatticePoint, b: LatticePoint, c: LatticePoint) -> i128 {
    let (a0, a1, a2) = (a.x as i128, a.y as i128, a.z as i128);
    let (b0, b1, b2) = (b.x as i128, b.y as i128, b.z as i128);
    let (c0, c1, c2) = (c.x as i128, c.y as i128, c.z as i128);
    a0 * (b1 * c2 - b2 * c1) - a1 * (b0 * c2 - b2 * c0) + a2 * (b0 * c1 - b1 * c0)
}

/// Signed volume determinant of a tetrahedron (six times its Euclidean volume).
pub fn tet_det(v: &[LatticePoint; 4]) -> i128 {
    det3(v[1] - v[0], v[2] - v[0], v[3] - v[0])
}

pub fn mat_det(m: &Mat3) -> i128 {
    det3(row(m, 0), row(m, 1), row(m, 2))
}

pub fn row(m: &Mat3, i: usize) -> LatticePoint {
    LatticePoint::new(m[i][0], m[i][1], m[i][2])
}

pub fn col(m: &Mat3, j: usize) -> LatticePoint {
    LatticePoint::new(m[0][j], m[1][j], m[2][j])
}

pub fn from_cols(a: LatticePoint, b: LatticePoint, c: LatticePoint) -> Mat3 {
    [[a.x, b.x, c.x], [a.y, b.y, c.y], [a.z, b.z, c.z]]
}

pub fn mat_vec(m: &Mat3, v: LatticePoint) -> LatticePoint {
    LatticePoint::new(row(m, 0).dot(v), row(m, 1).dot(v), row(m, 2).dot(v))
}

pub fn mat_mul(a: &Mat3, b: &Mat3) -> Mat3 {
    let mut r = [[0i64; 3]; 3];
    for (i, ri) in r.iter_mut().enumerate() {
        for (j, rij) in ri.iter_mut().enumerate() {
            *rij = (0..3).map(|t| a[i][t] * b[t][j]).sum();
        }
    }
    r
}

/// Adjugate: `adj(m) * m = det(m) * I`.
pub fn adjugate(m: &Mat3) -> Mat3 {
    let c = |r0: usize, r1: usize, c0: usize, c1: usize| m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
    [
        [c(1, 2, 1, 2), -c(0, 2, 1, 2), c(0, 1, 1, 2)],
        [-c(1, 2, 0, 2), c(0, 2, 0, 2), -c(0, 1, 0, 2)],
        [c(1, 2, 0, 1), -c(0, 2, 0, 1), c(0, 1, 0, 1)],
    ]
}

/// Rank-3 lattice spanned by three integer basis vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AmbientLattice {
    basis: [LatticePoint; 3],
    det: i64,
    adj: Mat3,
}

impl AmbientLattice {
    pub fn new(basis: [LatticePoint; 3]) -> Result<Self> {
        let m = from_cols(basis[0], basis[1], basis[2]);
        let det = mat_det(&m);
        if det == 0 {
            return domain("lattice basis is singular");
        }
        let det = i64::try_from(det).map_err(|_| crate::Error::Domain("lattice covolume overflows".into()))?;
        Ok(AmbientLattice { basis, det, adj: adjugate(&m) })
    }

    pub fn integer() -> Self {
        AmbientLattice::new([
            LatticePoint::new(1, 0, 0),
            LatticePoint::new(0, 1, 0),
            LatticePoint::new(0, 0, 1),
        ])
        .expect("identity basis")
    }

    /// The lattice `qZ x qZ x Z + Z(p', 1, 0)` with `p' = -p mod q`.
    pub fn lambda(p: i64, q: i64) -> Result<Self> {
        if q < 1 {
            return domain(format!("q = {q} must be positive"));
        }
        if gcd(p, q) != 1 {
            return domain(format!("gcd({p}, {q}) is not 1"));
        }
        let pp = (-p).rem_euclid(q);
        AmbientLattice::new([
            LatticePoint::new(q, 0, 0),
            LatticePoint::new(pp, 1, 0),
            LatticePoint::new(0, 0, 1),
        ])
    }

    pub fn basis(&self) -> [LatticePoint; 3] {
        self.basis
    }

    pub fn basis_matrix(&self) -> Mat3 {
        from_cols(self.basis[0], self.basis[1], self.basis[2])
    }

    pub fn covolume(&self) -> i64 {
        self.det.abs()
    }

    /// Coordinates of `v` in the basis, if `v` is a lattice point.
    pub fn coords(&self, v: LatticePoint) -> Option<LatticePoint> {
        let w = mat_vec(&self.adj, v);
        let d = self.det;
        if w.x % d != 0 || w.y % d != 0 || w.z % d != 0 {
            return None;
        }
        Some(LatticePoint::new(w.x / d, w.y / d, w.z / d))
    }

    pub fn from_coords(&self, c: LatticePoint) -> LatticePoint {
        c.x * self.basis[0] + c.y * self.basis[1] + c.z * self.basis[2]
    }

    pub fn contains(&self, v: LatticePoint) -> bool {
        self.coords(v).is_some()
    }
}

impl Serialize for AmbientLattice {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.basis.serialize(s)
    }
}

impl<'de> Deserialize<'de> for AmbientLattice {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let basis = <[LatticePoint; 3]>::deserialize(d)?;
        AmbientLattice::new(basis).map_err(serde::de::Error::custom)
    }
}

pub fn lattice_contains(l: &AmbientLattice, v: LatticePoint) -> bool {
    l.contains(v)
}

/// `x -> linear * x + translation`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineLatticeMap {
    pub linear: Mat3,
    pub translation: LatticePoint,
}

impl AffineLatticeMap {
    pub fn identity() -> Self {
        AffineLatticeMap { linear: IDENTITY, translation: LatticePoint::ORIGIN }
    }

    pub fn linear(m: Mat3) -> Self {
        AffineLatticeMap { linear: m, translation: LatticePoint::ORIGIN }
    }

    pub fn translation(t: LatticePoint) -> Self {
        AffineLatticeMap { linear: IDENTITY, translation: t }
    }

    pub fn apply(&self, v: LatticePoint) -> LatticePoint {
        mat_vec(&self.linear, v) + self.translation
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AffineLatticeMap) -> AffineLatticeMap {
        AffineLatticeMap {
            linear: mat_mul(&self.linear, &other.linear),
            translation: self.apply(other.translation),
        }
    }

    pub fn det(&self) -> i128 {
        mat_det(&self.linear)
    }

    /// Integer inverse; exists iff the linear part has determinant ±1.
    pub fn inverse(&self) -> Option<AffineLatticeMap> {
        let d = self.det();
        if d != 1 && d != -1 {
            return None;
        }
        let mut inv = adjugate(&self.linear);
        if d == -1 {
            for r in inv.iter_mut() {
                for e in r.iter_mut() {
                    *e = -*e;
                }
            }
        }
        let t = -mat_vec(&inv, self.translation);
        Some(AffineLatticeMap { linear: inv, translation: t })
    }

    /// Whether the map carries `from` bijectively onto `to`.
    pub fn is_unimodular_between(&self, from: &AmbientLattice, to: &AmbientLattice) -> bool {
        if !to.contains(self.translation) {
            return false;
        }
        if from.basis().iter().any(|b| !to.contains(mat_vec(&self.linear, *b))) {
            return false;
        }
        self.det().abs() * from.covolume() as i128 == to.covolume() as i128
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LatticeSimplex {
    pub vertices: [LatticePoint; 4],
    pub lattice: AmbientLattice,
}

impl LatticeSimplex {
    pub fn new(vertices: [LatticePoint; 4], lattice: AmbientLattice) -> Result<Self> {
        if tet_det(&vertices) == 0 {
            return domain("simplex vertices are affinely dependent");
        }
        Ok(LatticeSimplex { vertices, lattice })
    }

    pub fn in_integer_lattice(vertices: [LatticePoint; 4]) -> Result<Self> {
        LatticeSimplex::new(vertices, AmbientLattice::integer())
    }

    /// Vertices expressed in lattice coordinates, so that the lattice becomes Z^3.
    pub fn lattice_coords(&self) -> Result<[LatticePoint; 4]> {
        let mut out = [LatticePoint::ORIGIN; 4];
        for (o, v) in out.iter_mut().zip(self.vertices.iter()) {
            *o = match self.lattice.coords(*v) {
                Some(c) => c,
                None => return domain(format!("vertex {v} is not a lattice point")),
            };
        }
        Ok(out)
    }
}

pub fn normalized_volume(s: &LatticeSimplex) -> Result<u64> {
    let c = s.lattice_coords()?;
    Ok(tet_det(&c).unsigned_abs() as u64)
}

/// Convex hull of finitely many integer points as exact linear constraints.
#[derive(Clone, Debug)]
pub struct ConvexRegion {
    dim: usize,
    vertices: Vec<LatticePoint>,
    equalities: Vec<(LatticePoint, i64)>,
    /// `n·x <= c`.
    facets: Vec<(LatticePoint, i64)>,
}

impl ConvexRegion {
    pub fn from_points(points: &[LatticePoint]) -> Result<Self> {
        let mut pts: Vec<LatticePoint> = points.to_vec();
        pts.sort();
        pts.dedup();
        if pts.is_empty() {
            return domain("empty point set");
        }
        let p0 = pts[0];
        let dirs: Vec<LatticePoint> = pts.iter().map(|v| *v - p0).collect();
        let u = dirs.iter().copied().find(|d| !d.is_zero());
        let mut region = ConvexRegion { dim: 0, vertices: Vec::new(), equalities: Vec::new(), facets: Vec::new() };
        let Some(u) = u else {
            region.equalities = vec![
                (LatticePoint::new(1, 0, 0), p0.x),
                (LatticePoint::new(0, 1, 0), p0.y),
                (LatticePoint::new(0, 0, 1), p0.z),
            ];
            region.vertices = pts;
            return Ok(region);
        };
        let plane = dirs.iter().map(|d| u.cross(*d)).find(|n| !n.is_zero());
        let Some(n) = plane else {
            let u = u.primitive();
            let axis = [LatticePoint::new(1, 0, 0), LatticePoint::new(0, 1, 0), LatticePoint::new(0, 0, 1)]
                .into_iter()
                .find(|e| !u.cross(*e).is_zero())
                .expect("nonzero direction");
            let n1 = u.cross(axis).primitive();
            let n2 = u.cross(n1).primitive();
            region.dim = 1;
            region.equalities = vec![(n1, n1.dot(p0)), (n2, n2.dot(p0))];
            let lo = pts.iter().map(|v| u.dot(*v)).min().unwrap();
            let hi = pts.iter().map(|v| u.dot(*v)).max().unwrap();
            region.facets = vec![(u, hi), (-u, -lo)];
            region.vertices = pts
                .iter()
                .copied()
                .filter(|v| u.dot(*v) == lo || u.dot(*v) == hi)
                .collect();
            return Ok(region);
        };
        let n = n.primitive();
        let full = dirs.iter().any(|d| n.dot(*d) != 0);
        if !full {
            region.dim = 2;
            region.equalities = vec![(n, n.dot(p0))];
            for (i, a) in pts.iter().enumerate() {
                for b in pts.iter().skip(i + 1) {
                    let m = n.cross(*b - *a).primitive();
                    push_supporting(&mut region.facets, &pts, m, m.dot(*a));
                }
            }
        } else {
            region.dim = 3;
            for (i, a) in pts.iter().enumerate() {
                for (j, b) in pts.iter().enumerate().skip(i + 1) {
                    for c in pts.iter().skip(j + 1) {
                        let m = (*b - *a).cross(*c - *a).primitive();
                        if m.is_zero() {
                            continue;
                        }
                        push_supporting(&mut region.facets, &pts, m, m.dot(*a));
                    }
                }
            }
        }
        region.facets.sort();
        region.vertices = pts
            .iter()
            .copied()
            .filter(|v| is_extreme(&pts, *v, &region))
            .collect();
        Ok(region)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    /// Facet inequalities `n·x <= c` (within the affine hull when not full-dimensional).
    pub fn facets(&self) -> &[(LatticePoint, i64)] {
        &self.facets
    }

    pub fn equalities(&self) -> &[(LatticePoint, i64)] {
        &self.equalities
    }

    pub fn contains(&self, v: LatticePoint) -> bool {
        self.equalities.iter().all(|(n, c)| n.dot(v) == *c) && self.facets.iter().all(|(n, c)| n.dot(v) <= *c)
    }

    pub fn contains_in_interior(&self, v: LatticePoint) -> bool {
        self.equalities.iter().all(|(n, c)| n.dot(v) == *c) && self.facets.iter().all(|(n, c)| n.dot(v) < *c)
    }

    /// Index of a facet whose plane contains every given point.
    pub fn common_facet(&self, pts: &[LatticePoint]) -> Option<usize> {
        self.facets.iter().position(|(n, c)| pts.iter().all(|v| n.dot(*v) == *c))
    }

    /// Six times the Euclidean volume; zero unless full-dimensional.
    pub fn volume6(&self) -> i128 {
        if self.dim < 3 {
            return 0;
        }
        let o = self.vertices[0];
        let mut total: i128 = 0;
        for (n, c) in &self.facets {
            if n.dot(o) == *c {
                continue;
            }
            let face: Vec<LatticePoint> = self.vertices.iter().copied().filter(|v| n.dot(*v) == *c).collect();
            let apex = face[0];
            let mut rest: Vec<LatticePoint> = face[1..].to_vec();
            rest.sort_by(|a, b| {
                let s = n.dot((*a - apex).cross(*b - apex));
                0.cmp(&s).then_with(|| (*a - apex).dot(*a - apex).cmp(&(*b - apex).dot(*b - apex)))
            });
            for w in rest.windows(2) {
                total += det3(apex - o, w[0] - o, w[1] - o).abs();
            }
        }
        total
    }

    pub fn bounding_box(&self) -> (LatticePoint, LatticePoint) {
        let mut lo = self.vertices[0];
        let mut hi = self.vertices[0];
        for v in &self.vertices {
            lo = LatticePoint::new(lo.x.min(v.x), lo.y.min(v.y), lo.z.min(v.z));
            hi = LatticePoint::new(hi.x.max(v.x), hi.y.max(v.y), hi.z.max(v.z));
        }
        (lo, hi)
    }
}

fn push_supporting(out: &mut Vec<(LatticePoint, i64)>, pts: &[LatticePoint], m: LatticePoint, c: i64) {
    if m.is_zero() {
        return;
    }
    let le = pts.iter().all(|v| m.dot(*v) <= c);
    let ge = pts.iter().all(|v| m.dot(*v) >= c);
    let entry = if le {
        (m, c)
    } else if ge {
        (-m, -c)
    } else {
        return;
    };
    if !out.contains(&entry) {
        out.push(entry);
    }
}

fn is_extreme(pts: &[LatticePoint], v: LatticePoint, region: &ConvexRegion) -> bool {
    // A point is a vertex iff the tight facets cut it out within the affine hull.
    let tight: Vec<LatticePoint> = region.facets.iter().filter(|(n, c)| n.dot(v) == *c).map(|(n, _)| *n).collect();
    pts.iter()
        .filter(|w| **w != v)
        .all(|w| tight.iter().any(|n| n.dot(*w) != n.dot(v)))
}

/// All points of `lattice` in the convex hull of `vertices`, in lexicographic order.
pub fn lattice_points_in(vertices: &[LatticePoint], lattice: &AmbientLattice) -> Vec<LatticePoint> {
    let Ok(region) = ConvexRegion::from_points(vertices) else {
        return Vec::new();
    };
    lattice_points_in_region(&region, lattice)
}

pub fn lattice_points_in_region(region: &ConvexRegion, lattice: &AmbientLattice) -> Vec<LatticePoint> {
    let (lo, hi) = region.bounding_box();
    let mut out = Vec::new();
    for x in lo.x..=hi.x {
        for y in lo.y..=hi.y {
            for z in lo.z..=hi.z {
                let v = LatticePoint::new(x, y, z);
                if lattice.contains(v) && region.contains(v) {
                    out.push(v);
                }
            }
        }
    }
    out
}

/// Shared vertex list plus tetrahedra as sorted index quadruples.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Triangulation {
    pub lattice: AmbientLattice,
    pub vertices: Vec<LatticePoint>,
    pub tetrahedra: Vec<[u32; 4]>,
    pub boundary_style: BoundaryStyle,
    pub meta: TriangulationMeta,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangulationMeta {
    pub p: i64,
    pub q: i64,
    pub k: i64,
    pub method: String,
}

impl Triangulation {
    /// Builds a triangulation with lexicographically sorted vertices and sorted cells.
    pub fn from_cells(
        lattice: AmbientLattice,
        cells: &[[LatticePoint; 4]],
        boundary_style: BoundaryStyle,
        meta: TriangulationMeta,
    ) -> Triangulation {
        let mut vertices: Vec<LatticePoint> = cells.iter().flat_map(|c| c.iter().copied()).collect();
        vertices.sort();
        vertices.dedup();
        let index: HashMap<LatticePoint, u32> = vertices.iter().enumerate().map(|(i, v)| (*v, i as u32)).collect();
        let mut tetrahedra: Vec<[u32; 4]> = cells
            .iter()
            .map(|c| {
                let mut t = [index[&c[0]], index[&c[1]], index[&c[2]], index[&c[3]]];
                t.sort_unstable();
                t
            })
            .collect();
        tetrahedra.sort_unstable();
        Triangulation { lattice, vertices, tetrahedra, boundary_style, meta }
    }

    pub fn len(&self) -> usize {
        self.tetrahedra.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tetrahedra.is_empty()
    }

    pub fn cell(&self, i: usize) -> [LatticePoint; 4] {
        let t = self.tetrahedra[i];
        [
            self.vertices[t[0] as usize],
            self.vertices[t[1] as usize],
            self.vertices[t[2] as usize],
            self.vertices[t[3] as usize],
        ]
    }

    pub fn cells(&self) -> impl Iterator<Item = [LatticePoint; 4]> + '_ {
        (0..self.tetrahedra.len()).map(|i| self.cell(i))
    }

    /// Checks that indices are in range.
    pub fn validate_indices(&self) -> Result<()> {
        let n = self.vertices.len() as u32;
        if let Some(t) = self.tetrahedra.iter().find(|t| t.iter().any(|i| *i >= n)) {
            return internal(format!("tetrahedron {t:?} references a missing vertex"));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64, y: i64, z: i64) -> LatticePoint {
        LatticePoint::new(x, y, z)
    }

    #[test]
    fn mod_inverse_examples() {
        assert_eq!(mod_inverse(5, 13).unwrap(), 8);
        assert_eq!(mod_inverse(1, 7).unwrap(), 1);
        assert_eq!(mod_inverse(12, 13).unwrap(), 12);
        assert!(mod_inverse(4, 8).is_err());
        assert!(mod_inverse(3, 1).is_err());
    }

    #[test]
    fn unit_volumes() {
        let s = LatticeSimplex::in_integer_lattice([p(0, 0, 0), p(1, 0, 0), p(0, 1, 0), p(0, 0, 1)]).unwrap();
        assert_eq!(normalized_volume(&s).unwrap(), 1);
        let s = LatticeSimplex::in_integer_lattice([p(1, 0, 0), p(0, 1, 0), p(0, 0, 1), p(1, 1, 1)]).unwrap();
        assert_eq!(normalized_volume(&s).unwrap(), 2);
    }

    #[test]
    fn right_angled_volume() {
        let l = AmbientLattice::lambda(5, 13).unwrap();
        let s = LatticeSimplex::new([p(0, 0, 0), p(13, 0, 0), p(0, 0, 1), p(0, 13, 1)], l).unwrap();
        assert_eq!(normalized_volume(&s).unwrap(), 13);
    }

    #[test]
    fn lambda_membership() {
        let l = AmbientLattice::lambda(5, 13).unwrap();
        assert!(l.contains(p(8, 1, 0)));
        assert!(!l.contains(p(1, 1, 0)));
        assert!(l.contains(p(0, 0, 0)));
        assert_eq!(l.covolume(), 13);
    }

    #[test]
    fn region_and_points() {
        let l = AmbientLattice::lambda(5, 13).unwrap();
        let v = [p(0, 0, 0), p(26, 0, 0), p(0, 0, 2), p(0, 26, 2)];
        assert_eq!(lattice_points_in(&v, &l).len(), 22);
        let seg = lattice_points_in(&[p(0, 0, 0), p(1, 0, 0)], &AmbientLattice::integer());
        assert_eq!(seg, vec![p(0, 0, 0), p(1, 0, 0)]);
        let cube: Vec<LatticePoint> =
            (0..8).map(|i| p(i & 1, (i >> 1) & 1, (i >> 2) & 1)).collect();
        let r = ConvexRegion::from_points(&cube).unwrap();
        assert_eq!(r.facets().len(), 6);
        assert_eq!(r.volume6(), 6);
        assert_eq!(r.vertices().len(), 8);
    }

    #[test]
    fn lower_dimensional_regions() {
        let z = AmbientLattice::integer();
        let tri = lattice_points_in(&[p(0, 0, 0), p(2, 0, 0), p(0, 2, 0)], &z);
        assert_eq!(tri.len(), 6);
        let pt = lattice_points_in(&[p(1, 2, 3)], &z);
        assert_eq!(pt, vec![p(1, 2, 3)]);
    }

    #[test]
    fn affine_inverse_roundtrip() {
        let m = AffineLatticeMap { linear: [[1, 2, 0], [0, 1, 0], [3, 0, 1]], translation: p(1, -2, 5) };
        let inv = m.inverse().unwrap();
        let v = p(4, -7, 2);
        assert_eq!(inv.apply(m.apply(v)), v);
        let z = AmbientLattice::integer();
        assert!(m.is_unimodular_between(&z, &z));
    }

    #[test]
    fn ell_map_is_unimodular_between() {
        let (pp, q) = (5, 13);
        let ell = AffineLatticeMap::linear([[q, -pp, 0], [0, 1, 0], [0, 0, 1]]);
        let l = AmbientLattice::lambda(pp, q).unwrap();
        assert!(ell.is_unimodular_between(&AmbientLattice::integer(), &l));
        assert_eq!(ell.apply(p(1, 1, 0)), p(8, 1, 0));
    }
}
