//! Triangulations of dilated empty tetrahedra `kΔ'(p,q)`.

use std::collections::{BTreeSet, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::empty_simplex::{canonical_p, classify_empty, delta_prime, find_lattice_iso, EmptyClass};
use crate::error::{domain, internal, Error, Result};
use crate::fundamental_square::{SquareContext, SquareKind};
use crate::lattice_core::{
    gcd, mat_vec, tet_det, AffineLatticeMap, AmbientLattice, LatticePoint, LatticeSimplex, Triangulation,
    TriangulationMeta,
};
use crate::layered::{Assembly, GridPattern, HeightMode, HeightSpec, LayerSpec, Target};
use crate::prism_builder::{standard_bottom_pattern, Direction};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BoundaryStyle {
    Unconstrained,
    Standard,
    QuasiStandard,
}

impl BoundaryStyle {
    pub fn name(self) -> &'static str {
        match self {
            BoundaryStyle::Unconstrained => "unconstrained",
            BoundaryStyle::Standard => "standard",
            BoundaryStyle::QuasiStandard => "quasi-standard",
        }
    }
}

impl std::str::FromStr for BoundaryStyle {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "standard" => Ok(BoundaryStyle::Standard),
            "quasi" | "quasi-standard" | "quasistandard" => Ok(BoundaryStyle::QuasiStandard),
            "free" | "unconstrained" => Ok(BoundaryStyle::Unconstrained),
            _ => domain(format!("unknown boundary style {s:?}")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Method {
    Tetragonal2,
    TetragonalK,
    NonStandardK { c: i64 },
    TetragonalCells,
    Composite { k1: i64, k2: i64 },
    Sum { k1: i64, k2: i64 },
    QuasiStandardK,
    Dissection,
}

impl Method {
    pub fn tag(&self) -> String {
        match self {
            Method::Tetragonal2 => "tetragonal-2".into(),
            Method::TetragonalK => "tetragonal-k".into(),
            Method::NonStandardK { c } => format!("nonstandard(c={c})"),
            Method::TetragonalCells => "tetragonal-cells".into(),
            Method::Composite { k1, k2 } => format!("composite({k1}x{k2})"),
            Method::Sum { k1, k2 } => format!("sum({k1}+{k2})"),
            Method::QuasiStandardK => "quasi-standard".into(),
            Method::Dissection => "dissection".into(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DilationPlan {
    pub p: i64,
    pub q: i64,
    pub k: i64,
    pub style: BoundaryStyle,
    pub method: Method,
}

fn check_pq(p: i64, q: i64) -> Result<()> {
    if q < 1 {
        return domain(format!("q = {q} must be positive"));
    }
    if gcd(p, q) != 1 {
        return domain(format!("gcd({p}, {q}) is not 1"));
    }
    Ok(())
}

fn tetragonal(p: i64, q: i64) -> bool {
    matches!(canonical_p(p, q), Ok(0) | Ok(1))
}

fn finish(p: i64, q: i64, k: i64, cells: &[[LatticePoint; 4]], style: BoundaryStyle, method: &Method) -> Result<Triangulation> {
    let lattice = AmbientLattice::lambda(p, q)?;
    let meta = TriangulationMeta { p: p.rem_euclid(q), q, k, method: method.tag() };
    Ok(Triangulation::from_cells(lattice, cells, style, meta))
}

/// Separator patterns of the four facets of `kΔ'` for layer `c`, standard.
fn standard_target(n_bottom: i64, n_top: i64) -> Target {
    Target::Fixed(standard_bottom_pattern(n_bottom, n_top))
}

/// Layers `0..c` in X and `c..k` in Y over the whole of `kΔ'`.
fn split_layers(k: i64, c: i64, first: impl Fn(i64, Direction) -> Target, last: impl Fn(i64, Direction) -> Target) -> Vec<LayerSpec> {
    (0..k)
        .map(|h| {
            if h < c {
                let d = Direction::X;
                LayerSpec {
                    height: h,
                    direction: d,
                    start: (0, 0),
                    end: (h, h + 1),
                    n_bottom: k - h,
                    n_top: k - h - 1,
                    first: first(h, d),
                    last: last(h, d),
                    protect: Vec::new(),
                }
            } else {
                let d = Direction::Y;
                LayerSpec {
                    height: h,
                    direction: d,
                    start: (0, 0),
                    end: (k - h, k - h - 1),
                    n_bottom: h,
                    n_top: h + 1,
                    first: first(h, d),
                    last: last(h, d),
                    protect: Vec::new(),
                }
            }
        })
        .collect()
}

fn standard_layers(k: i64, c: i64) -> Vec<LayerSpec> {
    let t = |h: i64, d: Direction| match d {
        Direction::X => standard_target(k - h, k - h - 1),
        Direction::Y => standard_target(h, h + 1),
    };
    split_layers(k, c, t, t)
}

fn build_tetragonal_k(p: i64, q: i64, k: i64) -> Result<Vec<[LatticePoint; 4]>> {
    if k == 1 {
        if q != 1 {
            return domain("Δ'(p,q) with q > 1 is not unimodular, so k = 1 has no unimodular triangulation");
        }
        return Ok(vec![delta_prime(1, 1)]);
    }
    let ctx = SquareContext::new(p, q)?;
    let heights = |_h: i64| HeightSpec::same(HeightMode::Grid(GridPattern::Uniform(SquareKind::Both)));
    let c = (k + 1) / 2;
    Assembly { ctx, layers: standard_layers(k, c), heights: &heights, priority: None }.build()
}

/// `2Δ'(1,q)` by joining the diagonal of the middle square to an octagon, then four flips.
pub fn triangulate_tetragonal_2(q: i64) -> Result<Triangulation> {
    check_pq(1, q)?;
    let cells = tetragonal_2_cells(q)?;
    finish(1, q, 2, &cells, BoundaryStyle::Standard, &Method::Tetragonal2)
}

fn tetragonal_2_cells(q: i64) -> Result<Vec<[LatticePoint; 4]>> {
    let lp = LatticePoint::new;
    let a: Vec<LatticePoint> = (0..=q).map(|i| lp(q - i, i, 1)).collect();
    let b = [
        lp(2 * q, 0, 0),
        lp(q, q, 1),
        lp(0, 2 * q, 2),
        lp(0, q, 2),
        lp(0, 0, 2),
        lp(0, 0, 1),
        lp(0, 0, 0),
        lp(q, 0, 0),
    ];
    let bj = |j: usize| b[(j - 1) % 8];
    let mut cells: Vec<[LatticePoint; 4]> = Vec::with_capacity(8 * q as usize);
    for i in 0..q as usize {
        for j in 1..=8 {
            cells.push([a[i], a[i + 1], bj(j), bj(j + 1)]);
        }
    }
    let qq = q as usize;
    let flips = [
        ([a[0], a[1], bj(2), bj(3)], [a[0], a[1], bj(3), bj(4)], [a[0], a[1], bj(2), bj(4)], [a[1], bj(2), bj(3), bj(4)]),
        (
            [a[qq - 1], a[qq], bj(4), bj(5)],
            [a[qq - 1], a[qq], bj(5), bj(6)],
            [a[qq - 1], a[qq], bj(4), bj(6)],
            [a[qq - 1], bj(4), bj(5), bj(6)],
        ),
        ([a[0], a[1], bj(6), bj(7)], [a[0], a[1], bj(7), bj(8)], [a[0], a[1], bj(6), bj(8)], [a[1], bj(6), bj(7), bj(8)]),
        (
            [a[qq - 1], a[qq], bj(8), bj(1)],
            [a[qq - 1], a[qq], bj(1), bj(2)],
            [a[qq - 1], a[qq], bj(8), bj(2)],
            [a[qq - 1], bj(8), bj(1), bj(2)],
        ),
    ];
    for (old1, old2, new1, new2) in flips {
        replace_cells(&mut cells, &[old1, old2], &[new1, new2])?;
    }
    Ok(cells)
}

fn sorted4(mut c: [LatticePoint; 4]) -> [LatticePoint; 4] {
    c.sort();
    c
}

fn replace_cells(cells: &mut Vec<[LatticePoint; 4]>, old: &[[LatticePoint; 4]], new: &[[LatticePoint; 4]]) -> Result<()> {
    for o in old {
        let key = sorted4(*o);
        let pos = cells
            .iter()
            .position(|c| sorted4(*c) == key)
            .ok_or_else(|| Error::Internal(format!("cell {o:?} missing for flip")))?;
        cells.swap_remove(pos);
    }
    cells.extend_from_slice(new);
    Ok(())
}

/// Replaces boundary edge `uv` by `w1 w2`, where `u v w1` and `u v w2` are boundary
/// triangles whose cells share their fourth vertex.
fn flip_boundary_edge(
    cells: &mut [[LatticePoint; 4]],
    u: LatticePoint,
    v: LatticePoint,
    w1: LatticePoint,
    w2: LatticePoint,
) -> Result<()> {
    let find = |cells: &[[LatticePoint; 4]], w: LatticePoint| {
        cells.iter().position(|c| [u, v, w].iter().all(|x| c.contains(x)))
    };
    let (Some(i1), Some(i2)) = (find(cells, w1), find(cells, w2)) else {
        return internal(format!("no cells on boundary triangles at edge {u}-{v}"));
    };
    let other = |c: &[LatticePoint; 4], w: LatticePoint| *c.iter().find(|x| **x != u && **x != v && **x != w).unwrap();
    let (x1, x2) = (other(&cells[i1], w1), other(&cells[i2], w2));
    if x1 != x2 {
        return internal(format!("boundary triangles at edge {u}-{v} are joined to different points {x1} and {x2}"));
    }
    cells[i1] = [w1, w2, u, x1];
    cells[i2] = [w1, w2, v, x1];
    Ok(())
}

fn map_cells(cells: &[[LatticePoint; 4]], m: &AffineLatticeMap) -> Vec<[LatticePoint; 4]> {
    cells.iter().map(|c| c.map(|v| m.apply(v))).collect()
}

/// Cells of `kΔ'(p,q)` for `p ≡ ±1 (mod q)` (or `q = 1`), standard boundary.
fn tetragonal_cells_k(p: i64, q: i64, k: i64) -> Result<Vec<[LatticePoint; 4]>> {
    if k == 2 && q > 1 {
        let base = tetragonal_2_cells(q)?;
        if (p - 1).rem_euclid(q) == 0 {
            return Ok(base);
        }
        let src = AmbientLattice::lambda(1, q)?;
        let dst = AmbientLattice::lambda(p, q)?;
        let tri = delta_prime(q, 1);
        let m = find_lattice_iso(&tri, &src, &tri, &dst)
            .ok_or_else(|| Error::Internal(format!("no lattice isomorphism from Δ'(1,{q}) to Δ'({p},{q})")))?;
        let scaled = AffineLatticeMap { linear: m.linear, translation: 2 * m.translation };
        return Ok(map_cells(&base, &scaled));
    }
    build_tetragonal_k(p, q, k)
}

/// Unimodular triangulation of `kΔ'(1,q)` with standard boundary.
pub fn triangulate_tetragonal_k(q: i64, k: i64) -> Result<Triangulation> {
    check_pq(1, q)?;
    if k < 1 {
        return domain(format!("k = {k} must be positive"));
    }
    let cells = build_tetragonal_k(1, q, k)?;
    finish(1, q, k, &cells, BoundaryStyle::Standard, &Method::TetragonalK)
}

/// Unimodular triangulation of `kΔ'(p,q)`, `k >= 4`, with at most four non-standard boundary edges.
pub fn triangulate_nonstandard(p: i64, q: i64, k: i64) -> Result<Triangulation> {
    triangulate_nonstandard_with(p, q, k, (k + 1) / 2)
}

pub fn triangulate_nonstandard_with(p: i64, q: i64, k: i64, c: i64) -> Result<Triangulation> {
    check_pq(p, q)?;
    if k < 4 {
        return domain(format!("k = {k} is below 4"));
    }
    if !(2..=k - 2).contains(&c) {
        return domain(format!("interface height {c} is not in [2, {}]", k - 2));
    }
    let cells = nonstandard_cells(p, q, k, c)?;
    finish(p, q, k, &cells, BoundaryStyle::Unconstrained, &Method::NonStandardK { c })
}

fn nonstandard_cells(p: i64, q: i64, k: i64, c: i64) -> Result<Vec<[LatticePoint; 4]>> {
    let ctx = SquareContext::new(p, q)?;
    let tet = ctx.is_tetragonal();
    let heights = move |h: i64| {
        HeightSpec::same(if h < c {
            HeightMode::Rows
        } else if h > c {
            HeightMode::Cols
        } else if tet {
            HeightMode::Grid(GridPattern::Uniform(SquareKind::Both))
        } else {
            HeightMode::Grid(GridPattern::Checkerboard { even: SquareKind::ChainY, odd: SquareKind::ChainX })
        })
    };
    let layers = split_layers(k, c, |_, _| Target::Prefer, |_, _| Target::Prefer);
    Assembly { ctx, layers, heights: &heights, priority: Some(c) }.build()
}

/// Triangulation of `kΔ'(p,q)` into tetragonal cells with standard boundary.
pub fn triangulate_tetragonal_cells(p: i64, q: i64, k: i64) -> Result<Triangulation> {
    check_pq(p, q)?;
    let cells = tetragonal_cell_cells(p, q, k)?;
    finish(p, q, k, &cells, BoundaryStyle::Standard, &Method::TetragonalCells)
}

fn tetragonal_cell_cells(p: i64, q: i64, k: i64) -> Result<Vec<[LatticePoint; 4]>> {
    if k < 1 {
        return domain(format!("k = {k} must be positive"));
    }
    if k == 1 {
        if tetragonal(p, q) {
            return Ok(vec![delta_prime(q, 1)]);
        }
        return domain("Δ'(p,q) has no lattice points besides its vertices, so it cannot be cut into tetragonal cells");
    }
    let ctx = SquareContext::new(p, q)?;
    let heights = |_h: i64| HeightSpec::same(HeightMode::Grid(GridPattern::Uniform(SquareKind::Both)));
    Assembly { ctx, layers: standard_layers(k, (k + 1) / 2), heights: &heights, priority: None }.build()
}

/// Unimodular triangulation of `(k1 k2)Δ'(p,q)` with standard boundary, refining tetragonal cells.
pub fn triangulate_composite(p: i64, q: i64, k1: i64, k2: i64) -> Result<Triangulation> {
    check_pq(p, q)?;
    if k1 < 2 || k2 < 2 {
        return domain(format!("factors {k1} and {k2} must both be at least 2"));
    }
    let cells = composite_cells(p, q, k1, k2)?;
    finish(p, q, k1 * k2, &cells, BoundaryStyle::Standard, &Method::Composite { k1, k2 })
}

fn composite_cells(p: i64, q: i64, k1: i64, k2: i64) -> Result<Vec<[LatticePoint; 4]>> {
    let lattice = AmbientLattice::lambda(p, q)?;
    let coarse = tetragonal_cell_cells(p, q, k1)?;
    let basis = lattice.basis_matrix();
    let mut cache: HashMap<(i64, i64), Vec<[LatticePoint; 4]>> = HashMap::new();
    let mut out = Vec::with_capacity((k1 * k1 * k1 * k2 * k2 * k2 * q) as usize);
    for cell in &coarse {
        let s = LatticeSimplex::new(*cell, lattice)?;
        let cls = classify_empty(&s)?;
        let (pc, qc) = (cls.p, cls.q);
        if !(qc == 1 || pc == 1 || pc == qc - 1) {
            return internal(format!("cell {cell:?} is not tetragonal (p = {pc}, q = {qc})"));
        }
        if let std::collections::hash_map::Entry::Vacant(e) = cache.entry((pc, qc)) {
            e.insert(tetragonal_cells_k(pc, qc, k2)?);
        }
        for fine in &cache[&(pc, qc)] {
            let mut mapped = [LatticePoint::ORIGIN; 4];
            for (o, y) in mapped.iter_mut().zip(fine.iter()) {
                *o = mat_vec(&basis, from_canonical(&cls, k2, *y)?);
            }
            out.push(mapped);
        }
    }
    Ok(out)
}

/// Lattice coordinates of the point of `kΔ'(p_c, q_c)` at `y`, pulled back along the
/// canonical map of `cls` dilated by `k`.
pub fn from_canonical(cls: &EmptyClass, k: i64, y: LatticePoint) -> Result<LatticePoint> {
    let (pc, qc) = (cls.p, cls.q);
    let num = y.x + pc * y.y;
    if num % qc != 0 {
        return internal(format!("point {y} is not in the lattice of Δ'({pc},{qc})"));
    }
    let u = LatticePoint::new(num / qc, y.y, y.z);
    let g = &cls.to_canonical;
    let ginv = g.inverse().ok_or_else(|| Error::Internal("canonical map is not invertible".into()))?;
    Ok(mat_vec(&ginv.linear, u - k * g.translation))
}

/// Glues standard triangulations of `k1Δ'` at the origin and `k2Δ'` at `(k1 q, 0, 0)` across the middle region.
pub fn triangulate_sum(p: i64, q: i64, k1: i64, k2: i64, sub1: &Triangulation, sub2: &Triangulation) -> Result<Triangulation> {
    check_pq(p, q)?;
    if k1 < 1 || k2 < 1 {
        return domain("summands must be positive");
    }
    for (sub, kk) in [(sub1, k1), (sub2, k2)] {
        if sub.boundary_style != BoundaryStyle::Standard {
            return domain("sub-triangulations must have standard boundary");
        }
        if sub.meta.q != q || sub.meta.k != kk || (sub.meta.p - p).rem_euclid(q) != 0 {
            return domain(format!("sub-triangulation is for ({}, {}, {}), not ({p}, {q}, {kk})", sub.meta.p, sub.meta.q, sub.meta.k));
        }
        let cells: Vec<_> = sub.cells().collect();
        if let Some(e) = first_nonstandard_edge(&cells, q, kk) {
            return domain(format!("sub-triangulation has non-standard boundary edge {}-{}", e.0, e.1));
        }
    }
    let c1: Vec<_> = sub1.cells().collect();
    let c2: Vec<_> = sub2.cells().collect();
    let cells = sum_cells(p, q, k1, k2, &c1, &c2)?;
    finish(p, q, k1 + k2, &cells, BoundaryStyle::Standard, &Method::Sum { k1, k2 })
}

fn sum_cells(
    p: i64,
    q: i64,
    k1: i64,
    k2: i64,
    sub1: &[[LatticePoint; 4]],
    sub2: &[[LatticePoint; 4]],
) -> Result<Vec<[LatticePoint; 4]>> {
    let k = k1 + k2;
    let ctx = SquareContext::new(p, q)?;
    let x_lo = |h: i64| (k1 - h).max(0);
    let x_hi = |h: i64| k1.min(k - h);
    let mut layers = Vec::new();
    for h in 0..k {
        let start = (x_lo(h), x_lo(h + 1));
        let end = (x_hi(h), x_hi(h + 1));
        if start == end {
            continue;
        }
        let t = standard_target(h, h + 1);
        layers.push(LayerSpec {
            height: h,
            direction: Direction::Y,
            start,
            end,
            n_bottom: h,
            n_top: h + 1,
            first: t.clone(),
            last: t,
            protect: Vec::new(),
        });
    }
    let heights = |_h: i64| HeightSpec::same(HeightMode::Grid(GridPattern::Uniform(SquareKind::ChainX)));
    let mut cells = Assembly { ctx, layers, heights: &heights, priority: None }.build()?;
    cells.extend_from_slice(sub1);
    let shift = LatticePoint::new(k1 * q, 0, 0);
    cells.extend(sub2.iter().map(|c| c.map(|v| v + shift)));
    Ok(cells)
}

/// Edges of the undilated `Δ'(p,q)`.
fn delta_prime_directions(q: i64) -> [LatticePoint; 6] {
    let v = delta_prime(q, 1);
    [v[1] - v[0], v[2] - v[0], v[3] - v[0], v[2] - v[1], v[3] - v[1], v[3] - v[2]]
}

/// First boundary edge of `kΔ'` not parallel to an edge of `Δ'`, if any.
fn first_nonstandard_edge(cells: &[[LatticePoint; 4]], q: i64, k: i64) -> Option<(LatticePoint, LatticePoint)> {
    let planes = facet_planes(q, k);
    let dirs = delta_prime_directions(q);
    for c in cells {
        for skip in 0..4 {
            let f: Vec<LatticePoint> = (0..4).filter(|&i| i != skip).map(|i| c[i]).collect();
            if !planes.iter().any(|(n, b)| f.iter().all(|v| n.dot(*v) == *b)) {
                continue;
            }
            for (a, b) in [(f[0], f[1]), (f[1], f[2]), (f[0], f[2])] {
                if !dirs.iter().any(|d| d.cross(b - a).is_zero()) {
                    return Some((a, b));
                }
            }
        }
    }
    None
}

/// Supporting planes `n·x = b` of the four facets of `kΔ'`.
fn facet_planes(q: i64, k: i64) -> Vec<(LatticePoint, i64)> {
    let lp = LatticePoint::new;
    vec![(lp(0, 1, 0), 0), (lp(1, 0, 0), 0), (lp(0, 1, -q), 0), (lp(1, 0, q), k * q)]
}

/// Barycentric coordinates `(b0, b1, b2)` with `b0 + b1 + b2 = k`.
pub type Bary = [i64; 3];

/// Edge set of the quasi-standard triangulation of the `k`-th dilate of a unimodular triangle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuasiFace {
    pub k: i64,
    pub edges: BTreeSet<(Bary, Bary)>,
    /// The six replaced edges and their replacements.
    pub flips: Vec<((Bary, Bary), (Bary, Bary))>,
}

fn bary_edge(a: Bary, b: Bary) -> (Bary, Bary) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Standard edges of the `k`-th dilate of a triangle in barycentric coordinates.
pub fn standard_face_edges(k: i64) -> BTreeSet<(Bary, Bary)> {
    let mut out = BTreeSet::new();
    let steps: [[i64; 3]; 3] = [[-1, 1, 0], [-1, 0, 1], [0, -1, 1]];
    for b0 in 0..=k {
        for b1 in 0..=k - b0 {
            let a = [b0, b1, k - b0 - b1];
            for s in steps {
                let b = [a[0] + s[0], a[1] + s[1], a[2] + s[2]];
                if b.iter().all(|x| *x >= 0) {
                    out.insert(bary_edge(a, b));
                }
            }
        }
    }
    out
}

pub fn quasi_standard_face(k: i64) -> Result<QuasiFace> {
    if k < 7 {
        return domain(format!("quasi-standard faces need k >= 7, got {k}"));
    }
    let mut edges = standard_face_edges(k);
    let mut flips = Vec::new();
    for even in 0..3 {
        let (i, j) = match even {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        for (lo, hi) in [(i, j), (j, i)] {
            // Midpoint has 1/2 at `lo`, 5/2 at `hi` and k-3 at `even`.
            let mut u = [0; 3];
            let mut v = [0; 3];
            u[lo] = 0;
            u[hi] = 3;
            v[lo] = 1;
            v[hi] = 2;
            u[even] = k - 3;
            v[even] = k - 3;
            let mut w1 = [0; 3];
            let mut w2 = [0; 3];
            w1[lo] = 0;
            w1[hi] = 2;
            w1[even] = k - 2;
            w2[lo] = 1;
            w2[hi] = 3;
            w2[even] = k - 4;
            let old = bary_edge(u, v);
            if !edges.remove(&old) {
                return internal(format!("edge {old:?} is not standard"));
            }
            let new = bary_edge(w1, w2);
            edges.insert(new);
            flips.push((old, new));
        }
    }
    Ok(QuasiFace { k, edges, flips })
}

/// The four facets of `Δ'(p,q)` as vertex triples; a barycentric point `b` sits at `Σ b_i V_i`.
fn facet_frames(q: i64) -> [(Direction, bool, [LatticePoint; 3]); 4] {
    let lp = LatticePoint::new;
    [
        (Direction::X, false, [lp(0, 0, 0), lp(q, 0, 0), lp(0, 0, 1)]),
        (Direction::X, true, [lp(0, 0, 0), lp(q, 0, 0), lp(0, q, 1)]),
        (Direction::Y, false, [lp(0, 0, 0), lp(0, 0, 1), lp(0, q, 1)]),
        (Direction::Y, true, [lp(q, 0, 0), lp(0, 0, 1), lp(0, q, 1)]),
    ]
}

fn bary_point(v: &[LatticePoint; 3], b: Bary) -> LatticePoint {
    b[0] * v[0] + b[1] * v[1] + b[2] * v[2]
}

/// Unimodular triangulation of `kΔ'(p,q)`, `k >= 7`, whose facets all carry the quasi-standard pattern.
pub fn triangulate_quasi_standard(p: i64, q: i64, k: i64) -> Result<Triangulation> {
    check_pq(p, q)?;
    let cells = quasi_cells(p, q, k)?;
    finish(p, q, k, &cells, BoundaryStyle::QuasiStandard, &Method::QuasiStandardK)
}

fn quasi_cells(p: i64, q: i64, k: i64) -> Result<Vec<[LatticePoint; 4]>> {
    let face = quasi_standard_face(k)?;
    let ctx = SquareContext::new(p, q)?;
    let frames = facet_frames(q);
    // Flips whose old edge is horizontal on the facet are applied after assembly.
    let horizontal = |dir: Direction, old: &(Bary, Bary)| match dir {
        Direction::X => old.0[2] == old.1[2],
        Direction::Y => old.0[0] == old.1[0],
    };
    let mut face_xyz: Vec<HashSet<(LatticePoint, LatticePoint)>> = Vec::new();
    for (dir, _, v) in &frames {
        let mut edges = standard_face_edges(k);
        for (old, new) in &face.flips {
            if !horizontal(*dir, old) {
                edges.remove(old);
                edges.insert(*new);
            }
        }
        face_xyz.push(
            edges
                .iter()
                .flat_map(|(a, b)| {
                    let (x, y) = (bary_point(v, *a), bary_point(v, *b));
                    [(x, y), (y, x)]
                })
                .collect(),
        );
    }
    let target = |h: i64, dir: Direction, last: bool| -> Target {
        let fi = frames.iter().position(|(d, l, _)| *d == dir && *l == last).unwrap();
        let (nb, nt) = match dir {
            Direction::X => (k - h, k - h - 1),
            Direction::Y => (h, h + 1),
        };
        let pt = |a: i64, z: i64| match (dir, last) {
            (Direction::X, false) => LatticePoint::new(a * q, 0, z),
            (Direction::X, true) => LatticePoint::new(a * q, z * q, z),
            (Direction::Y, false) => LatticePoint::new(0, a * q, z),
            (Direction::Y, true) => LatticePoint::new((k - z) * q, a * q, z),
        };
        let set = &face_xyz[fi];
        let apex = (0..nb)
            .map(|i| {
                (0..=nt)
                    .find(|&t| set.contains(&(pt(i, h), pt(t, h + 1))) && set.contains(&(pt(i + 1, h), pt(t, h + 1))))
                    .unwrap_or(-1)
            })
            .collect();
        Target::Fixed(apex)
    };
    let c = 3;
    let mut layers = split_layers(k, c, |h, d| target(h, d, false), |h, d| target(h, d, true));
    for l in &mut layers {
        if let Target::Fixed(v) = &l.first {
            if v.contains(&-1) {
                return internal(format!("quasi-standard face does not split at height {}", l.height));
            }
        }
        if l.height == 2 {
            l.protect = vec![(3, 0), (3, 2)];
        }
        if l.height == k - 4 || l.height == k - 3 {
            l.protect = vec![(k - 3, 0), (k - 3, 2)];
        }
    }
    let heights = move |h: i64| {
        HeightSpec::same(if h < c {
            HeightMode::Rows
        } else if h > c {
            HeightMode::Cols
        } else {
            HeightMode::Grid(GridPattern::QuasiInterface { k })
        })
    };
    let mut cells = Assembly { ctx, layers, heights: &heights, priority: Some(c) }.build()?;
    for (dir, _, v) in &frames {
        for (old, new) in &face.flips {
            if horizontal(*dir, old) {
                let (u, w) = (bary_point(v, old.0), bary_point(v, old.1));
                let (w1, w2) = (bary_point(v, new.0), bary_point(v, new.1));
                flip_boundary_edge(&mut cells, u, w, w1, w2)?;
            }
        }
    }
    Ok(cells)
}

/// Unimodular dissection of `kΔ'(p,q)`, `k >= 2`: layers are triangulated independently.
pub fn triangulate_dissection(p: i64, q: i64, k: i64) -> Result<Triangulation> {
    check_pq(p, q)?;
    let cells = dissection_cells(p, q, k)?;
    finish(p, q, k, &cells, BoundaryStyle::Unconstrained, &Method::Dissection)
}

fn dissection_cells(p: i64, q: i64, k: i64) -> Result<Vec<[LatticePoint; 4]>> {
    if k < 2 {
        return domain(format!("dissections need k >= 2, got {k}"));
    }
    if tetragonal(p, q) {
        return build_tetragonal_k(canonical_rep(p, q), q, k);
    }
    let ctx = SquareContext::new(p, q)?;
    let c = (k + 1) / 2;
    let heights = move |h: i64| {
        if h < c {
            HeightSpec::same(HeightMode::Rows)
        } else if h > c {
            HeightSpec::same(HeightMode::Cols)
        } else {
            HeightSpec { below: HeightMode::Rows, above: HeightMode::Cols }
        }
    };
    let layers = split_layers(k, c, |_, _| Target::Prefer, |_, _| Target::Prefer);
    Assembly { ctx, layers, heights: &heights, priority: None }.build()
}

fn canonical_rep(p: i64, q: i64) -> i64 {
    if q == 1 {
        0
    } else {
        p.rem_euclid(q)
    }
}

fn is_composite(k: i64) -> bool {
    k >= 4 && (2..k).take_while(|d| d * d <= k).any(|d| k % d == 0)
}

/// Message for `k` with no standard construction.
fn no_standard(p: i64, q: i64, k: i64) -> Error {
    match k {
        2 => Error::Domain(format!(
            "k=2 is impossible for Δ'({p},{q}): 2Δ' has a unimodular triangulation only when p ≡ ±1 (mod q)"
        )),
        7 | 11 => Error::Domain(format!(
            "k={k} requires quasi-standard boundary: standard boundary is not provided for k in {{1,2,3,5,7,11}}"
        )),
        _ => Error::Domain(format!(
            "k={k} with standard boundary is not provided by the available constructions (k in {{1,2,3,5,7,11}})"
        )),
    }
}

pub fn dispatch(p: i64, q: i64, k: i64, style: BoundaryStyle) -> Result<DilationPlan> {
    check_pq(p, q)?;
    if k < 1 {
        return domain(format!("k = {k} must be positive"));
    }
    let tet = tetragonal(p, q);
    let plan = |method| Ok(DilationPlan { p: canonical_rep(p, q), q, k, style, method });
    if k == 1 && q > 1 {
        return domain(format!("k=1 is impossible for Δ'({p},{q}): it is empty but not unimodular"));
    }
    if k == 2 && !tet {
        return Err(no_standard(p, q, 2));
    }
    match style {
        BoundaryStyle::Standard => {
            if tet {
                if k == 2 && q > 1 {
                    plan(Method::Tetragonal2)
                } else {
                    plan(Method::TetragonalK)
                }
            } else if is_composite(k) {
                let k1 = (2..k).find(|d| k % d == 0).unwrap();
                plan(Method::Composite { k1, k2: k / k1 })
            } else if let Some(k1) = (4..k).find(|&a| is_composite(a) && is_composite(k - a)) {
                plan(Method::Sum { k1, k2: k - k1 })
            } else {
                Err(no_standard(p, q, k))
            }
        }
        BoundaryStyle::QuasiStandard => {
            if k >= 7 {
                plan(Method::QuasiStandardK)
            } else {
                domain(format!("quasi-standard boundary needs k >= 7, got k={k}"))
            }
        }
        BoundaryStyle::Unconstrained => {
            if tet && k <= 3 {
                plan(Method::TetragonalK)
            } else if k >= 4 {
                plan(Method::NonStandardK { c: (k + 1) / 2 })
            } else {
                domain(format!("k={k} with unconstrained boundary is not provided for non-tetragonal Δ'({p},{q}); need k >= 4"))
            }
        }
    }
}

/// Runs a plan, returning cells of `kΔ'(p,q)` over `Λ_{p,q}`.
pub fn execute_cells(plan: &DilationPlan) -> Result<Vec<[LatticePoint; 4]>> {
    let DilationPlan { p, q, k, method, .. } = *plan;
    match method {
        Method::Tetragonal2 | Method::TetragonalK => tetragonal_cells_k(p, q, k),
        Method::NonStandardK { c } => nonstandard_cells(p, q, k, c),
        Method::TetragonalCells => tetragonal_cell_cells(p, q, k),
        Method::Composite { k1, k2 } => composite_cells(p, q, k1, k2),
        Method::Sum { k1, k2 } => {
            let sub = |kk: i64| execute_cells(&dispatch(p, q, kk, BoundaryStyle::Standard)?);
            sum_cells(p, q, k1, k2, &sub(k1)?, &sub(k2)?)
        }
        Method::QuasiStandardK => quasi_cells(p, q, k),
        Method::Dissection => dissection_cells(p, q, k),
    }
}

pub fn execute(plan: &DilationPlan) -> Result<Triangulation> {
    let cells = execute_cells(plan)?;
    finish(plan.p, plan.q, plan.k, &cells, plan.style, &plan.method)
}

/// Dispatches and runs.
pub fn triangulate(p: i64, q: i64, k: i64, style: BoundaryStyle) -> Result<Triangulation> {
    execute(&dispatch(p, q, k, style)?)
}

/// Sum of `|det|` over cells, in units of the covolume of `Λ_{p,q}`.
pub fn normalized_volume_sum(cells: &[[LatticePoint; 4]], q: i64) -> i128 {
    cells.iter().map(|c| tet_det(c).abs()).sum::<i128>() / q as i128
}
