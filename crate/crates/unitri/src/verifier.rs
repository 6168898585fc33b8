//! Independent checks for triangulations and small-case oracles.

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dilation::BoundaryStyle;
use crate::lattice_core::{gcd, lattice_points_in, AmbientLattice, ConvexRegion, LatticePoint, Triangulation};

const MAX_EXAMPLES: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    /// Offending cells, triangles or edges, at most a handful.
    pub counterexample: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub cells: usize,
    pub vertices: usize,
    pub boundary_triangles: usize,
    pub boundary_edges: usize,
    pub nonstandard_edges: usize,
    pub candidate_pairs: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub checks: Vec<CheckResult>,
    pub counts: Counts,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect()
    }

    pub fn merge(mut self, other: VerificationReport) -> VerificationReport {
        self.checks.extend(other.checks);
        let c = &mut self.counts;
        let o = other.counts;
        c.cells = c.cells.max(o.cells);
        c.vertices = c.vertices.max(o.vertices);
        c.boundary_triangles = c.boundary_triangles.max(o.boundary_triangles);
        c.boundary_edges = c.boundary_edges.max(o.boundary_edges);
        c.nonstandard_edges = c.nonstandard_edges.max(o.nonstandard_edges);
        c.candidate_pairs = c.candidate_pairs.max(o.candidate_pairs);
        self
    }

    fn push(&mut self, name: &str, detail: String, counterexample: Vec<String>) {
        let passed = counterexample.is_empty();
        self.checks.push(CheckResult { name: name.to_string(), passed, detail, counterexample });
    }
}

type V3 = [i64; 3];

fn sub(a: V3, b: V3) -> V3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn cross(a: V3, b: V3) -> [i128; 3] {
    let (a0, a1, a2) = (a[0] as i128, a[1] as i128, a[2] as i128);
    let (b0, b1, b2) = (b[0] as i128, b[1] as i128, b[2] as i128);
    [a1 * b2 - a2 * b1, a2 * b0 - a0 * b2, a0 * b1 - a1 * b0]
}

fn dot(n: [i128; 3], v: V3) -> i128 {
    n[0] * v[0] as i128 + n[1] * v[1] as i128 + n[2] * v[2] as i128
}

fn det(c: &[V3; 4]) -> i128 {
    dot(cross(sub(c[1], c[0]), sub(c[2], c[0])), sub(c[3], c[0]))
}

/// Integer type for separating-axis arithmetic; `i64` suffices for small coordinates.
trait Num: Copy + Ord + Send + Sync + From<i64> + std::ops::Add<Output = Self> + std::ops::Sub<Output = Self> + std::ops::Mul<Output = Self> {}
impl Num for i64 {}
impl Num for i128 {}

/// Coordinates up to this bound keep every product below in `i64`.
const I64_SAFE: i64 = 1 << 18;

type W3<T> = [T; 3];

fn wsub<T: Num>(a: W3<T>, b: W3<T>) -> W3<T> {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn wcross<T: Num>(a: W3<T>, b: W3<T>) -> W3<T> {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn wdot<T: Num>(a: W3<T>, b: W3<T>) -> T {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

struct Cell<T> {
    v: [W3<T>; 4],
    normals: [W3<T>; 4],
    /// Projection of the cell itself onto each of its face normals.
    own: [(T, T); 4],
    edges: [W3<T>; 6],
    lo: V3,
    hi: V3,
}

impl<T: Num> Cell<T> {
    fn new(c: [LatticePoint; 4]) -> Cell<T> {
        let raw = c.map(|p| p.to_array());
        let v = raw.map(|p| p.map(T::from));
        let normals = [
            wcross(wsub(v[2], v[1]), wsub(v[3], v[1])),
            wcross(wsub(v[2], v[0]), wsub(v[3], v[0])),
            wcross(wsub(v[1], v[0]), wsub(v[3], v[0])),
            wcross(wsub(v[1], v[0]), wsub(v[2], v[0])),
        ];
        let own = normals.map(|n| project(n, &v));
        let edges = [
            wsub(v[1], v[0]),
            wsub(v[2], v[0]),
            wsub(v[3], v[0]),
            wsub(v[2], v[1]),
            wsub(v[3], v[1]),
            wsub(v[3], v[2]),
        ];
        let mut lo = raw[0];
        let mut hi = raw[0];
        for p in &raw[1..] {
            for i in 0..3 {
                lo[i] = lo[i].min(p[i]);
                hi[i] = hi[i].max(p[i]);
            }
        }
        Cell { v, normals, own, edges, lo, hi }
    }
}

fn project<T: Num>(n: W3<T>, v: &[W3<T>; 4]) -> (T, T) {
    let mut lo = wdot(n, v[0]);
    let mut hi = lo;
    for p in &v[1..] {
        let d = wdot(n, *p);
        lo = lo.min(d);
        hi = hi.max(d);
    }
    (lo, hi)
}

fn separated<T: Num>((alo, ahi): (T, T), (blo, bhi): (T, T)) -> bool {
    ahi <= blo || bhi <= alo
}

/// Whether two non-degenerate tetrahedra have disjoint interiors: some face normal or
/// edge-edge cross product weakly separates them.
fn interiors_disjoint<T: Num>(a: &Cell<T>, b: &Cell<T>) -> bool {
    for i in 0..4 {
        if separated(a.own[i], project(a.normals[i], &b.v)) || separated(project(b.normals[i], &a.v), b.own[i]) {
            return true;
        }
    }
    let zero = [T::from(0); 3];
    for e in &a.edges {
        for f in &b.edges {
            let n = wcross(*e, *f);
            if n != zero && separated(project(n, &a.v), project(n, &b.v)) {
                return true;
            }
        }
    }
    false
}

fn overlaps<T>(a: &Cell<T>, b: &Cell<T>) -> bool {
    (0..3).all(|i| a.lo[i] < b.hi[i] && b.lo[i] < a.hi[i])
}

/// Overlapping pairs among the given cells, by original index, and the number of pairs tested.
fn overlapping_cells(cells: &[[LatticePoint; 4]], live: &[usize]) -> (Vec<(usize, usize)>, usize) {
    let small = live.iter().all(|i| cells[*i].iter().all(|p| p.to_array().iter().all(|c| c.abs() < I64_SAFE)));
    let (pairs, tested) = if small {
        overlapping_pairs(&live.iter().map(|i| Cell::<i64>::new(cells[*i])).collect::<Vec<_>>())
    } else {
        overlapping_pairs(&live.iter().map(|i| Cell::<i128>::new(cells[*i])).collect::<Vec<_>>())
    };
    (pairs.into_iter().map(|(a, b)| (live[a], live[b])).collect(), tested)
}

/// Pairs of cells with overlapping interiors, among pairs whose closed bounding boxes meet.
fn overlapping_pairs<T: Num>(cells: &[Cell<T>]) -> (Vec<(usize, usize)>, usize) {
    if cells.is_empty() {
        return (Vec::new(), 0);
    }
    let mut ext: [Vec<i64>; 3] = Default::default();
    for c in cells {
        for i in 0..3 {
            ext[i].push(c.hi[i] - c.lo[i]);
        }
    }
    let size: Vec<i64> = ext
        .iter_mut()
        .map(|e| {
            e.sort_unstable();
            e[e.len() / 2].max(1)
        })
        .collect();
    let bin = |v: i64, i: usize| v.div_euclid(size[i]);
    let mut entries: Vec<((i64, i64, i64), u32)> = Vec::new();
    for (id, c) in cells.iter().enumerate() {
        for x in bin(c.lo[0], 0)..=bin(c.hi[0], 0) {
            for y in bin(c.lo[1], 1)..=bin(c.hi[1], 1) {
                for z in bin(c.lo[2], 2)..=bin(c.hi[2], 2) {
                    entries.push(((x, y, z), id as u32));
                }
            }
        }
    }
    entries.par_sort_unstable();
    let mut groups: Vec<(usize, usize)> = Vec::new();
    let mut s = 0;
    for i in 1..=entries.len() {
        if i == entries.len() || entries[i].0 != entries[s].0 {
            groups.push((s, i));
            s = i;
        }
    }
    let results: Vec<(Vec<(usize, usize)>, usize)> = groups
        .par_iter()
        .map(|&(s, e)| {
            let key = entries[s].0;
            let mut bad = Vec::new();
            let mut tested = 0;
            for i in s..e {
                let a = entries[i].1 as usize;
                for j in i + 1..e {
                    let b = entries[j].1 as usize;
                    let (ca, cb) = (&cells[a], &cells[b]);
                    if !overlaps(ca, cb) {
                        continue;
                    }
                    // Count each pair once, in the lowest bin of the box intersection.
                    let first = (
                        bin(ca.lo[0].max(cb.lo[0]), 0),
                        bin(ca.lo[1].max(cb.lo[1]), 1),
                        bin(ca.lo[2].max(cb.lo[2]), 2),
                    );
                    if first != key {
                        continue;
                    }
                    tested += 1;
                    if !interiors_disjoint(ca, cb) {
                        bad.push((a.min(b), a.max(b)));
                    }
                }
            }
            (bad, tested)
        })
        .collect();
    let mut bad: Vec<(usize, usize)> = results.iter().flat_map(|r| r.0.iter().copied()).collect();
    bad.sort_unstable();
    (bad, results.iter().map(|r| r.1).sum())
}

fn fmt_cell(c: &[LatticePoint; 4]) -> String {
    format!("[{}, {}, {}, {}]", c[0], c[1], c[2], c[3])
}

fn tri_key(t: [u32; 3]) -> u128 {
    let mut s = t;
    s.sort_unstable();
    ((s[0] as u128) << 64) | ((s[1] as u128) << 32) | s[2] as u128
}

fn unkey(k: u128) -> [u32; 3] {
    [(k >> 64) as u32, (k >> 32) as u32, k as u32]
}

/// Triangles with their multiplicity, sorted.
fn triangle_counts(t: &Triangulation) -> Vec<(u128, usize)> {
    let mut keys: Vec<u128> = Vec::with_capacity(4 * t.tetrahedra.len());
    for c in &t.tetrahedra {
        for skip in 0..4 {
            let mut f = [0u32; 3];
            let mut m = 0;
            for (i, v) in c.iter().enumerate() {
                if i != skip {
                    f[m] = *v;
                    m += 1;
                }
            }
            keys.push(tri_key(f));
        }
    }
    keys.par_sort_unstable();
    let mut out: Vec<(u128, usize)> = Vec::new();
    for k in keys {
        match out.last_mut() {
            Some((last, n)) if *last == k => *n += 1,
            _ => out.push((k, 1)),
        }
    }
    out
}

/// Checks that `t` is a triangulation of `region`: nonzero volumes, exact total volume,
/// face multiplicities, pairwise disjoint interiors and vertex membership.
pub fn verify_complex(t: &Triangulation, region: &ConvexRegion) -> VerificationReport {
    let mut r = VerificationReport::default();
    r.counts.cells = t.len();
    r.counts.vertices = t.vertices.len();
    if let Err(e) = t.validate_indices() {
        r.push("indices", e.to_string(), vec![e.to_string()]);
        return r;
    }
    let cells: Vec<[LatticePoint; 4]> = t.cells().collect();
    let dets: Vec<i128> = cells.par_iter().map(|c| det(&c.map(|p| p.to_array()))).collect();

    let flat: Vec<String> = cells
        .iter()
        .zip(&dets)
        .filter(|(_, d)| **d == 0)
        .take(MAX_EXAMPLES)
        .map(|(c, _)| fmt_cell(c))
        .collect();
    let n_flat = dets.iter().filter(|d| **d == 0).count();
    r.push("positive_volume", format!("{n_flat} degenerate cells"), flat);

    let total: i128 = dets.iter().map(|d| d.abs()).sum();
    let expected = region.volume6();
    let cov = t.lattice.covolume() as i128;
    let detail = format!(
        "sum of |det| = {total}, region = {expected} (normalized {} vs {})",
        total as f64 / cov as f64,
        expected as f64 / cov as f64
    );
    let ce = if total == expected { vec![] } else { vec![format!("{total} != {expected}")] };
    r.push("volume", detail, ce);

    let counts = triangle_counts(t);
    let on_boundary = |k: u128| {
        let ids = unkey(k);
        let pts = ids.map(|i| t.vertices[i as usize]);
        region.common_facet(&pts).is_some()
    };
    let mut bad_faces = Vec::new();
    let mut n_boundary = 0;
    let mut n_bad = 0;
    for (k, n) in &counts {
        let bnd = on_boundary(*k);
        if bnd && *n == 1 {
            n_boundary += 1;
        }
        let ok = if bnd { *n == 1 } else { *n == 2 };
        if !ok {
            n_bad += 1;
            if bad_faces.len() < MAX_EXAMPLES {
                let pts = unkey(*k).map(|i| t.vertices[i as usize]);
                let side = if bnd { "boundary" } else { "interior" };
                bad_faces.push(format!("{side} triangle [{}, {}, {}] in {n} cells", pts[0], pts[1], pts[2]));
            }
        }
    }
    r.counts.boundary_triangles = n_boundary;
    r.push("faces", format!("{} triangles, {n_bad} with wrong multiplicity", counts.len()), bad_faces);

    let live: Vec<usize> = (0..cells.len()).filter(|i| dets[*i] != 0).collect();
    let (bad_pairs, tested) = overlapping_cells(&cells, &live);
    r.counts.candidate_pairs = tested;
    let ce = bad_pairs
        .iter()
        .take(MAX_EXAMPLES)
        .map(|(a, b)| format!("{} x {}", fmt_cell(&cells[*a]), fmt_cell(&cells[*b])))
        .collect();
    r.push("intersections", format!("{tested} candidate pairs, {} with overlapping interiors", bad_pairs.len()), ce);

    let outside: Vec<String> = t
        .vertices
        .iter()
        .filter(|v| !t.lattice.contains(**v) || !region.contains(**v))
        .take(MAX_EXAMPLES)
        .map(|v| v.to_string())
        .collect();
    r.push("vertices", "vertices are lattice points of the region".into(), outside);
    r
}

/// Every cell has determinant equal to the covolume of the lattice.
pub fn verify_unimodular(t: &Triangulation) -> VerificationReport {
    let mut r = VerificationReport::default();
    r.counts.cells = t.len();
    r.counts.vertices = t.vertices.len();
    let cov = t.lattice.covolume() as i128;
    let bad: Vec<(usize, i128)> = t
        .cells()
        .enumerate()
        .map(|(i, c)| (i, det(&c.map(|p| p.to_array())).abs()))
        .filter(|(_, d)| *d != cov)
        .collect();
    let ce = bad
        .iter()
        .take(MAX_EXAMPLES)
        .map(|(i, d)| format!("{} has volume {}", fmt_cell(&t.cell(*i)), *d as f64 / cov as f64))
        .collect();
    r.push("unimodular", format!("{} of {} cells not unimodular", bad.len(), t.len()), ce);
    r
}

fn facets_of(delta: &[LatticePoint; 4], k: i64) -> Vec<([LatticePoint; 3], LatticePoint, i64)> {
    (0..4)
        .map(|skip| {
            let f: Vec<LatticePoint> = (0..4).filter(|i| *i != skip).map(|i| delta[i]).collect();
            let n = (f[1] - f[0]).cross(f[2] - f[0]);
            ([f[0], f[1], f[2]], n, k * n.dot(f[0]))
        })
        .collect()
}

/// Barycentric coordinates of `x` on the `k`-th dilate of triangle `f`.
fn barycentric(f: &[LatticePoint; 3], k: i64, x: LatticePoint) -> Option<[i64; 3]> {
    let e1 = f[1] - f[0];
    let e2 = f[2] - f[0];
    let n = e1.cross(e2);
    let nn = n.dot(n);
    let d = x - k * f[0];
    let b1 = d.cross(e2).dot(n);
    let b2 = e1.cross(d).dot(n);
    if b1 % nn != 0 || b2 % nn != 0 {
        return None;
    }
    let (b1, b2) = (b1 / nn, b2 / nn);
    Some([k - b1 - b2, b1, b2])
}

/// The quasi-standard pattern on a dilated triangle, derived from unit rhombi of the standard one.
pub fn expected_quasi_face(k: i64) -> BTreeSet<([i64; 3], [i64; 3])> {
    let pts: Vec<[i64; 3]> = (0..=k).flat_map(|a| (0..=k - a).map(move |b| [a, b, k - a - b])).collect();
    let adjacent = |u: [i64; 3], v: [i64; 3]| {
        let d = [u[0] - v[0], u[1] - v[1], u[2] - v[2]];
        d.iter().map(|x| x.abs()).sum::<i64>() == 2
    };
    let ord = |u: [i64; 3], v: [i64; 3]| if u < v { (u, v) } else { (v, u) };
    let mut edges: BTreeSet<([i64; 3], [i64; 3])> = BTreeSet::new();
    for (i, u) in pts.iter().enumerate() {
        for v in &pts[i + 1..] {
            if adjacent(*u, *v) {
                edges.insert(ord(*u, *v));
            }
        }
    }
    if k < 7 {
        return edges;
    }
    let base = [1, 5, 2 * k - 6];
    let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let mut flips = Vec::new();
    for p in perms {
        let m = [base[p[0]], base[p[1]], base[p[2]]];
        let old = *edges
            .iter()
            .find(|(u, v)| (0..3).all(|i| u[i] + v[i] == m[i]))
            .expect("standard diagonal through midpoint");
        let ws: Vec<[i64; 3]> = pts
            .iter()
            .copied()
            .filter(|w| edges.contains(&ord(*w, old.0)) && edges.contains(&ord(*w, old.1)))
            .collect();
        flips.push((old, ord(ws[0], ws[1])));
    }
    for (old, new) in flips {
        edges.remove(&old);
        edges.insert(new);
    }
    edges
}

/// Boundary check for a triangulation of `kΔ`.
pub fn verify_boundary(t: &Triangulation, delta: &[LatticePoint; 4], k: i64, style: BoundaryStyle) -> VerificationReport {
    let mut r = VerificationReport::default();
    r.counts.cells = t.len();
    r.counts.vertices = t.vertices.len();
    let facets = facets_of(delta, k);
    let mut per_facet: Vec<BTreeSet<(LatticePoint, LatticePoint)>> = vec![BTreeSet::new(); 4];
    let mut n_tri = 0;
    for c in t.cells() {
        for skip in 0..4 {
            let f: Vec<LatticePoint> = (0..4).filter(|i| *i != skip).map(|i| c[i]).collect();
            for (fi, (_, n, b)) in facets.iter().enumerate() {
                if f.iter().all(|v| n.dot(*v) == *b) {
                    n_tri += 1;
                    for (a, b) in [(f[0], f[1]), (f[1], f[2]), (f[0], f[2])] {
                        per_facet[fi].insert(if a < b { (a, b) } else { (b, a) });
                    }
                }
            }
        }
    }
    r.counts.boundary_triangles = n_tri;
    let all: BTreeSet<(LatticePoint, LatticePoint)> = per_facet.iter().flatten().copied().collect();
    r.counts.boundary_edges = all.len();
    let dirs: Vec<LatticePoint> = (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j))).map(|(i, j)| delta[j] - delta[i]).collect();
    let nonstd: Vec<(LatticePoint, LatticePoint)> =
        all.iter().copied().filter(|(a, b)| !dirs.iter().any(|d| d.cross(*b - *a).is_zero())).collect();
    r.counts.nonstandard_edges = nonstd.len();
    let listed: Vec<String> = nonstd.iter().take(MAX_EXAMPLES).map(|(a, b)| format!("{a}-{b}")).collect();
    let lbl = format!("{} boundary edges, {} non-standard", all.len(), nonstd.len());
    match style {
        BoundaryStyle::Standard => r.push("boundary_standard", lbl, listed),
        BoundaryStyle::Unconstrained => {
            r.checks.push(CheckResult { name: "boundary_unconstrained".into(), passed: true, detail: lbl, counterexample: listed })
        }
        BoundaryStyle::QuasiStandard => {
            let expected = expected_quasi_face(k);
            let mut ce = Vec::new();
            for (fi, (f, _, _)) in facets.iter().enumerate() {
                let mut got = BTreeSet::new();
                for (a, b) in &per_facet[fi] {
                    match (barycentric(f, k, *a), barycentric(f, k, *b)) {
                        (Some(x), Some(y)) => {
                            got.insert(if x < y { (x, y) } else { (y, x) });
                        }
                        _ => ce.push(format!("facet {fi}: edge {a}-{b} has non-lattice barycentric coordinates")),
                    }
                }
                if got != expected {
                    let extra = got.difference(&expected).count();
                    let missing = expected.difference(&got).count();
                    ce.push(format!("facet {fi}: {extra} unexpected and {missing} missing edges"));
                }
            }
            r.push("boundary_quasi_standard", lbl, ce);
        }
    }
    r
}

/// Width of a tetrahedron with respect to the functional vanishing on two opposite edges.
fn pair_width(v: &[LatticePoint; 4], e: (usize, usize), f: (usize, usize)) -> i64 {
    let n = (v[e.1] - v[e.0]).cross(v[f.1] - v[f.0]).primitive();
    let vals: Vec<i64> = v.iter().map(|p| n.dot(*p)).collect();
    vals.iter().max().unwrap() - vals.iter().min().unwrap()
}

fn empty_by_enumeration(v: &[LatticePoint; 4]) -> bool {
    lattice_points_in(v, &AmbientLattice::integer()).len() == 4
}

/// Every `Δ(p,q)` with `q <= q_max` is empty of width one, classification recovers the
/// canonical parameter under unimodular changes of frame, and all empty tetrahedra in a box classify.
pub fn oracle_white(q_max: i64, box_side: i64) -> VerificationReport {
    use crate::empty_simplex::{canonical_p, classify, delta};
    use crate::lattice_core::LatticeSimplex;
    let mut r = VerificationReport::default();
    let pairs = [((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2))];
    let mut ce_empty = Vec::new();
    let mut ce_width = Vec::new();
    let mut ce_orbit = Vec::new();
    let mut ce_frame = Vec::new();
    let mut n = 0;
    let frames = [
        ([[1, 0, 0], [0, 1, 0], [0, 0, 1]], LatticePoint::new(0, 0, 0)),
        ([[1, 2, -1], [0, 1, 3], [0, 0, 1]], LatticePoint::new(4, -1, 2)),
        ([[0, 1, 0], [1, 1, 1], [2, 1, 3]], LatticePoint::new(-3, 5, 7)),
    ];
    for q in 1..=q_max {
        for p in 0..q.max(1) {
            if gcd(p, q) != 1 {
                continue;
            }
            n += 1;
            let v = delta(p, q);
            if !empty_by_enumeration(&v) {
                ce_empty.push(format!("Δ({p},{q})"));
            }
            if !pairs.iter().any(|(e, f)| pair_width(&v, *e, *f) == 1) {
                ce_width.push(format!("Δ({p},{q})"));
            }
            let cp = canonical_p(p, q);
            if q > 1 {
                let inv = (1..q).find(|x| (x * p).rem_euclid(q) == 1).unwrap();
                for other in [q - p, inv, q - inv] {
                    if canonical_p(other % q, q) != cp {
                        ce_orbit.push(format!("canonical_p({other},{q}) != canonical_p({p},{q})"));
                    }
                }
            }
            for (m, t) in &frames {
                let mapped = v.map(|x| crate::lattice_core::mat_vec(m, x) + *t);
                let ok = LatticeSimplex::in_integer_lattice(mapped)
                    .and_then(|s| classify(&s))
                    .map(|c| c.q == q && canonical_p(c.p, c.q).ok() == cp.as_ref().ok().copied())
                    .unwrap_or(false);
                if !ok {
                    ce_frame.push(format!("Δ({p},{q}) under {m:?}"));
                }
            }
        }
    }
    let cap = |mut v: Vec<String>| {
        v.truncate(MAX_EXAMPLES);
        v
    };
    r.push("white_empty", format!("{n} pairs (p,q)"), cap(ce_empty));
    r.push("white_width_one", format!("{n} pairs (p,q)"), cap(ce_width));
    r.push("canonical_p_orbits", format!("{n} pairs (p,q)"), cap(ce_orbit));
    r.push("classify_frames", format!("{n} pairs (p,q), {} frames", frames.len()), cap(ce_frame));

    let pts: Vec<LatticePoint> = (0..box_side.pow(3))
        .map(|i| LatticePoint::new(i % box_side, (i / box_side) % box_side, i / (box_side * box_side)))
        .filter(|p| !p.is_zero())
        .collect();
    let mut found = 0;
    let mut ce_box = Vec::new();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            for l in j + 1..pts.len() {
                let v = [LatticePoint::ORIGIN, pts[i], pts[j], pts[l]];
                if det(&v.map(|p| p.to_array())) == 0 || !empty_by_enumeration(&v) {
                    continue;
                }
                found += 1;
                let ok = LatticeSimplex::in_integer_lattice(v).and_then(|s| classify(&s)).is_ok()
                    && pairs.iter().any(|(e, f)| pair_width(&v, *e, *f) == 1);
                if !ok && ce_box.len() < MAX_EXAMPLES {
                    ce_box.push(fmt_cell(&v));
                }
            }
        }
    }
    r.push("box_enumeration", format!("{found} empty tetrahedra in a box of side {box_side}"), ce_box);
    r
}

/// Maximal Y-path of the fundamental square: interior points sorted by `y`.
fn max_y_path(p: i64, q: i64) -> Vec<(i64, i64)> {
    let pp = (-p).rem_euclid(q);
    (1..q).map(|y| ((pp * y).rem_euclid(q), y)).collect()
}

/// `2Δ'(p,q)` has compatible maximal paths exactly when `p ≡ ±1 (mod q)`; tetragonal cases
/// triangulate with `8q` unimodular cells and standard boundary, others show a crossing.
pub fn oracle_k2(q_max: i64) -> VerificationReport {
    use crate::dilation::{triangulate, triangulate_tetragonal_2};
    use crate::empty_simplex::delta_prime;
    use crate::fundamental_square::{paths_compatible, SquareContext};
    let mut r = VerificationReport::default();
    let mut ce_iff = Vec::new();
    let mut ce_tri = Vec::new();
    let mut ce_obs = Vec::new();
    let mut n = 0;
    for q in 2..=q_max {
        for p in 1..q {
            if gcd(p, q) != 1 {
                continue;
            }
            n += 1;
            let tet = (p - 1) % q == 0 || (p + 1) % q == 0;
            let compat = SquareContext::new(p, q).and_then(|c| paths_compatible(&c));
            if compat.as_ref().ok() != Some(&tet) {
                ce_iff.push(format!("({p},{q}): compatible = {compat:?}, tetragonal = {tet}"));
            }
            if tet {
                let t = if p == 1 { triangulate_tetragonal_2(q) } else { triangulate(p, q, 2, BoundaryStyle::Standard) };
                match t {
                    Ok(t) => {
                        let region = ConvexRegion::from_points(&delta_prime(q, 2)).unwrap();
                        let rep = verify_complex(&t, &region)
                            .merge(verify_unimodular(&t))
                            .merge(verify_boundary(&t, &delta_prime(q, 1), 2, BoundaryStyle::Standard));
                        if t.len() as i64 != 8 * q || !rep.passed() {
                            ce_tri.push(format!("({p},{q}): {} cells, failed {:?}", t.len(), rep.failures()));
                        }
                    }
                    Err(e) => ce_tri.push(format!("({p},{q}): {e}")),
                }
            } else if !crossing_obstruction(p, q) {
                ce_obs.push(format!("({p},{q})"));
            }
        }
    }
    let cap = |mut v: Vec<String>| {
        v.truncate(MAX_EXAMPLES);
        v
    };
    r.push("k2_compatible_iff_tetragonal", format!("{n} pairs (p,q)"), cap(ce_iff));
    r.push("k2_tetragonal_triangulations", "8q unimodular cells, standard boundary".into(), cap(ce_tri));
    r.push("k2_crossing_obstruction", "points a, b, c, d with ab, cd on the Y-path and ad on the X-path".into(), cap(ce_obs));
    r
}

/// Exhibits `a, b, c, d` with `ab, cd` consecutive on the maximal Y-path, `ad` consecutive on
/// the maximal X-path, and the Y-path from `b` to `c` crossing `ad`.
fn crossing_obstruction(p: i64, q: i64) -> bool {
    // Reflect x ↦ q - x if needed so that p' < q/2.
    let pp0 = (-p).rem_euclid(q);
    let p = if 2 * pp0 < q { p } else { q - p };
    let pp = (-p).rem_euclid(q);
    let inv = match (1..q).find(|x| (x * p).rem_euclid(q) == 1) {
        Some(v) => v,
        None => return false,
    };
    let pdd = (-inv).rem_euclid(q);
    let a = (pp, 1);
    let b = (2 * pp, 2);
    let c = (1, pdd);
    let d = (pp + 1, pdd + 1);
    let inside = |v: (i64, i64)| 0 < v.0 && v.0 < q && 0 < v.1 && v.1 < q && (v.0 - pp * v.1).rem_euclid(q) == 0;
    if ![a, b, c, d].iter().all(|v| inside(*v)) {
        return false;
    }
    let ypath = max_y_path(p, q);
    let mut xpath = ypath.clone();
    xpath.sort();
    let consecutive = |path: &[(i64, i64)], u, v| path.windows(2).any(|w| (w[0] == u && w[1] == v) || (w[0] == v && w[1] == u));
    if !consecutive(&ypath, a, b) || !consecutive(&ypath, c, d) || !consecutive(&xpath, a, d) {
        return false;
    }
    let o = |p: (i64, i64), q: (i64, i64), r: (i64, i64)| ((q.0 - p.0) * (r.1 - p.1) - (q.1 - p.1) * (r.0 - p.0)).signum();
    let crosses = |s: ((i64, i64), (i64, i64)), t: ((i64, i64), (i64, i64))| {
        o(s.0, s.1, t.0) * o(s.0, s.1, t.1) < 0 && o(t.0, t.1, s.0) * o(t.0, t.1, s.1) < 0
    };
    let (ib, ic) = (b.1 as usize - 1, c.1 as usize - 1);
    let (lo, hi) = (ib.min(ic), ib.max(ic));
    ypath[lo..=hi].windows(2).any(|w| crosses((w[0], w[1]), (a, d)))
}

/// Lattice points of the `k`-th dilate of `Δ'(p,q)`, counted by enumeration.
pub fn count_dilate_points(p: i64, q: i64, k: i64) -> usize {
    let l = AmbientLattice::lambda(p, q).expect("coprime");
    lattice_points_in(&crate::empty_simplex::delta_prime(q, k), &l).len()
}

/// Multiplicity table of triangles, keyed by sorted vertex triples; used for face-mismatch diagnostics.
pub fn triangle_multiplicities(t: &Triangulation) -> HashMap<[LatticePoint; 3], usize> {
    triangle_counts(t)
        .into_iter()
        .map(|(k, n)| (unkey(k).map(|i| t.vertices[i as usize]), n))
        .collect()
}
