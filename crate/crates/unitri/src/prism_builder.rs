//! Layers of `kΔ'(p,q)`, toblerone prisms, and the prism triangulation engine.
//!
//! A prism is described in band coordinates `(A, B)`: `A` runs along the prism
//! direction, `B` across it. Its rectangle is a band of fundamental squares
//! `A ∈ [0, c q]`, `B ∈ [band q, (band+1) q]` at one height; its edge is the
//! segment `A ∈ [0, d q]` at `B = edge_b q` on the adjacent height.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::lattice_core::LatticePoint;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    X,
    Y,
}

/// The slab `c <= z <= c+1` of `kΔ'`, with its cross-sections in squares.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayerInfo {
    pub c: i64,
    /// Squares in x and y at `z = c`.
    pub bottom: (i64, i64),
    /// Squares in x and y at `z = c + 1`.
    pub top: (i64, i64),
}

pub fn decompose_layers(k: i64) -> Result<Vec<LayerInfo>> {
    if k < 1 {
        return domain(format!("k = {k} must be positive"));
    }
    Ok((0..k).map(|c| LayerInfo { c, bottom: (k - c, c), top: (k - c - 1, c + 1) }).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PieceKind {
    /// Rectangle on the upper height, edge on the lower one.
    TopRect,
    /// Rectangle on the lower height, edge on the upper one.
    BottomRect,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Toblerone {
    pub direction: Direction,
    pub kind: PieceKind,
    /// Rectangle length in squares.
    pub c: i64,
    /// Edge length in segments.
    pub d: i64,
    /// `B` index of the rectangle's band.
    pub band: i64,
    /// `B` coordinate of the edge, in units of `q`.
    pub edge_b: i64,
    /// Lower height of the slab.
    pub height: i64,
}

impl Toblerone {
    pub fn z_rect(&self) -> i64 {
        match self.kind {
            PieceKind::TopRect => self.height + 1,
            PieceKind::BottomRect => self.height,
        }
    }

    pub fn z_edge(&self) -> i64 {
        match self.kind {
            PieceKind::TopRect => self.height,
            PieceKind::BottomRect => self.height + 1,
        }
    }

    pub fn point(&self, a: i64, b: i64, z: i64) -> LatticePoint {
        match self.direction {
            Direction::X => LatticePoint::new(a, b, z),
            Direction::Y => LatticePoint::new(b, a, z),
        }
    }

    /// First vertex of the edge.
    pub fn anchor(&self, q: i64) -> LatticePoint {
        self.point(0, self.edge_b * q, self.z_edge())
    }

    pub fn edge_point(&self, q: i64, i: i64) -> LatticePoint {
        self.point(i * q, self.edge_b * q, self.z_edge())
    }

    fn b_range(&self, q: i64) -> (i64, i64) {
        (self.band * q, (self.band + 1) * q)
    }

    /// Segment counts on the lower and upper rows of the prism's side faces.
    pub fn row_lengths(&self) -> (i64, i64) {
        match self.kind {
            PieceKind::TopRect => (self.d, self.c),
            PieceKind::BottomRect => (self.c, self.d),
        }
    }

    /// Standard side pattern in edge perspective: start corner of each path.
    pub fn standard_pattern(&self) -> Vec<i64> {
        let (nb, nt) = self.row_lengths();
        let bottom = standard_bottom_pattern(nb, nt);
        match self.kind {
            PieceKind::TopRect => bottom,
            PieceKind::BottomRect => flip_pattern(&bottom, nt),
        }
    }
}

/// Standard apex index of each lower-row segment on a side face.
pub fn standard_bottom_pattern(n_bottom: i64, n_top: i64) -> Vec<i64> {
    if n_bottom == n_top + 1 {
        (0..n_bottom).collect()
    } else {
        (0..n_bottom).map(|i| i + 1).collect()
    }
}

/// Converts a side pattern between the two row perspectives.
///
/// `pattern[i]` is the apex (on the other row) of segment `i`; the result
/// gives, for each of the `n_other` segments of the other row, its apex.
pub fn flip_pattern(pattern: &[i64], n_other: i64) -> Vec<i64> {
    (0..n_other).map(|j| pattern.iter().filter(|&&a| a <= j).count() as i64).collect()
}

/// Sequence of prisms between two separators `(b, t)` of a layer.
///
/// A separator is the side face at `B = b q` on the lower height and `B = t q` on the upper one.
pub fn staircase(direction: Direction, start: (i64, i64), end: (i64, i64)) -> Result<Vec<PieceKind>> {
    let ok = |(b, t): (i64, i64)| match direction {
        Direction::X => t - b == 0 || t - b == 1,
        Direction::Y => t - b == 0 || t - b == -1,
    };
    if !ok(start) || !ok(end) {
        return domain(format!("separators {start:?} and {end:?} do not bound a layer"));
    }
    let (mut b, mut t) = start;
    let mut out = Vec::new();
    while (b, t) != end {
        let top_step = match direction {
            Direction::X => t == b,
            Direction::Y => t != b,
        };
        if top_step {
            out.push(PieceKind::TopRect);
            t += 1;
        } else {
            out.push(PieceKind::BottomRect);
            b += 1;
        }
        if b > end.0 || t > end.1 {
            return domain(format!("separators {start:?} and {end:?} do not bound a layer"));
        }
    }
    Ok(out)
}

/// Prisms of one layer, given the staircase endpoints and the `A`-lengths of both rows.
pub fn layer_pieces(
    direction: Direction,
    height: i64,
    start: (i64, i64),
    end: (i64, i64),
    n_bottom: i64,
    n_top: i64,
) -> Result<Vec<Toblerone>> {
    let kinds = staircase(direction, start, end)?;
    let (mut b, mut t) = start;
    let mut out = Vec::with_capacity(kinds.len());
    for kind in kinds {
        let piece = match kind {
            PieceKind::TopRect => {
                let p = Toblerone { direction, kind, c: n_top, d: n_bottom, band: t, edge_b: b, height };
                t += 1;
                p
            }
            PieceKind::BottomRect => {
                let p = Toblerone { direction, kind, c: n_bottom, d: n_top, band: b, edge_b: t, height };
                b += 1;
                p
            }
        };
        if piece.c < 1 {
            return domain(format!("layer at height {height} cannot be cut in direction {direction:?}"));
        }
        out.push(piece);
    }
    Ok(out)
}

/// Prisms of layer `c` (slab `c <= z <= c+1`) of `kΔ'` in the given direction.
pub fn decompose_layer(k: i64, c: i64, direction: Direction) -> Result<Vec<Toblerone>> {
    if !(0..k).contains(&c) {
        return domain(format!("layer {c} is not in 0..{k}"));
    }
    match direction {
        Direction::X => layer_pieces(direction, c, (0, 0), (c, c + 1), k - c, k - c - 1),
        Direction::Y => layer_pieces(direction, c, (0, 0), (k - c, k - c - 1), c, c + 1),
    }
}

/// Monotone paths across a prism's rectangle, one per edge segment, in band coordinates.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathAssignment {
    pub paths: Vec<Vec<(i64, i64)>>,
}

impl PathAssignment {
    /// Start corner index (in units of `q`) of each path on the low side.
    pub fn starts(&self, q: i64) -> Vec<i64> {
        self.paths.iter().map(|p| p[0].0 / q).collect()
    }

    pub fn ends(&self, q: i64) -> Vec<i64> {
        self.paths.iter().map(|p| p[p.len() - 1].0 / q).collect()
    }
}

/// `A` coordinate of `path` at height `sb / 3` compared against `sa / 3`: true if the path is strictly smaller.
fn path_left_of(path: &[(i64, i64)], sa: i64, sb: i64) -> bool {
    // First point with 3 B >= sb.
    let idx = path.partition_point(|p| 3 * p.1 < sb);
    let j = idx.clamp(1, path.len() - 1);
    let (a1, b1) = path[j - 1];
    let (a2, b2) = path[j];
    3 * a1 * (b2 - b1) + (a2 - a1) * (sb - 3 * b1) < sa * (b2 - b1)
}

/// Number of paths strictly to the left of the triangle's centroid.
fn zone(paths: &[Vec<(i64, i64)>], tri: &[(i64, i64); 3]) -> usize {
    let sa = tri[0].0 + tri[1].0 + tri[2].0;
    let sb = tri[0].1 + tri[1].1 + tri[2].1;
    paths.partition_point(|p| path_left_of(p, sa, sb))
}

/// Emits the cells of a prism without validating the inputs.
pub(crate) fn emit_prism(
    t: &Toblerone,
    q: i64,
    triangles: &[[(i64, i64); 3]],
    paths: &PathAssignment,
    out: &mut Vec<[LatticePoint; 4]>,
) {
    emit_path_cells(t, q, paths, out);
    emit_cone_cells(t, q, triangles, paths, out);
}

/// Each edge segment joined to its path.
pub(crate) fn emit_path_cells(t: &Toblerone, q: i64, paths: &PathAssignment, out: &mut Vec<[LatticePoint; 4]>) {
    let zr = t.z_rect();
    for (i, path) in paths.paths.iter().enumerate() {
        let (e0, e1) = (t.edge_point(q, i as i64), t.edge_point(q, i as i64 + 1));
        for w in path.windows(2) {
            out.push([e0, e1, t.point(w[0].0, w[0].1, zr), t.point(w[1].0, w[1].1, zr)]);
        }
    }
}

/// Each rectangle triangle joined to the edge point between its neighbouring paths.
pub(crate) fn emit_cone_cells(
    t: &Toblerone,
    q: i64,
    triangles: &[[(i64, i64); 3]],
    paths: &PathAssignment,
    out: &mut Vec<[LatticePoint; 4]>,
) {
    let zr = t.z_rect();
    for tri in triangles {
        let e = t.edge_point(q, cone_index(paths, tri) as i64);
        out.push([e, t.point(tri[0].0, tri[0].1, zr), t.point(tri[1].0, tri[1].1, zr), t.point(tri[2].0, tri[2].1, zr)]);
    }
}

/// Number of paths strictly to the left of the triangle's centroid.
pub(crate) fn cone_index(paths: &PathAssignment, tri: &[(i64, i64); 3]) -> usize {
    zone(&paths.paths, tri)
}

/// Cells of a prism from its rectangle triangulation and a path family.
pub fn triangulate_prism(
    t: &Toblerone,
    q: i64,
    triangles: &[[(i64, i64); 3]],
    paths: &PathAssignment,
) -> Result<Vec<[LatticePoint; 4]>> {
    validate_paths(t, q, triangles, paths)?;
    let mut out = Vec::new();
    emit_prism(t, q, triangles, paths, &mut out);
    Ok(out)
}

fn validate_paths(t: &Toblerone, q: i64, triangles: &[[(i64, i64); 3]], paths: &PathAssignment) -> Result<()> {
    if t.c < 1 || t.d < 0 {
        return domain("prism needs a rectangle of positive length");
    }
    if paths.paths.len() as i64 != t.d {
        return domain(format!("{} paths given for an edge of {} segments", paths.paths.len(), t.d));
    }
    let mut edges: HashSet<((i64, i64), (i64, i64))> = HashSet::new();
    for tri in triangles {
        for (u, v) in [(tri[0], tri[1]), (tri[1], tri[2]), (tri[0], tri[2])] {
            edges.insert((u.min(v), u.max(v)));
        }
    }
    let (lo, hi) = t.b_range(q);
    for (i, p) in paths.paths.iter().enumerate() {
        if p.len() < 2 {
            return domain(format!("path {i} has fewer than two points"));
        }
        let (s, e) = (p[0], p[p.len() - 1]);
        if s.1 != lo || e.1 != hi || s.0 % q != 0 || e.0 % q != 0 {
            return domain(format!("path {i} does not join square corners on opposite sides"));
        }
        if !(0..=t.c * q).contains(&s.0) || !(0..=t.c * q).contains(&e.0) {
            return domain(format!("path {i} leaves the rectangle"));
        }
        for w in p.windows(2) {
            if w[1].1 <= w[0].1 {
                return domain(format!("path {i} is not monotone"));
            }
            if !edges.contains(&(w[0].min(w[1]), w[0].max(w[1]))) {
                return domain(format!("path {i} uses {:?}-{:?}, which is not a triangulation edge", w[0], w[1]));
            }
        }
    }
    for (i, w) in paths.paths.windows(2).enumerate() {
        let mirrored: Vec<(i64, i64)> = w[0].iter().map(|&(a, b)| (-a, b)).collect();
        let crosses_left = w[1].iter().any(|pt| path_left_of(&mirrored, -3 * pt.0, 3 * pt.1));
        let crosses_right = w[0].iter().any(|pt| path_left_of(&w[1], 3 * pt.0, 3 * pt.1));
        if crosses_left || crosses_right {
            return domain(format!("paths {i} and {} are not weakly ordered", i + 1));
        }
    }
    Ok(())
}

/// Constraint on one side face of a prism, in edge perspective.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SideSpec {
    Fixed(Vec<i64>),
    /// Standard where possible.
    Prefer,
}

/// Monotone paths available in a rectangle band, in band coordinates.
#[derive(Clone, Debug)]
pub enum BandPaths {
    /// Per square, the chain of interior points crossing it, if any.
    Grid(Vec<Option<Vec<(i64, i64)>>>),
    /// One chain in the first square reachable from every corner on both sides.
    Universal(Vec<(i64, i64)>),
    /// `q = 1`: per square, its diagonal if fixed (`true` = increasing in both coordinates).
    Unit { diag: Vec<Option<bool>>, protect_ends: bool },
}

#[derive(Clone, Copy, Debug)]
struct Cand {
    x: i64,
    xp: i64,
    /// Grid square, or diagonal square for unit bands.
    group: i64,
}

/// Chooses a path family realizing the side constraints with the fewest non-standard corners.
///
/// Returns the paths and the number of non-standard corners on `Prefer` sides.
pub fn select_paths(
    t: &Toblerone,
    q: i64,
    band: &BandPaths,
    low: &SideSpec,
    high: &SideSpec,
) -> Result<(PathAssignment, usize)> {
    let d = t.d as usize;
    let std = t.standard_pattern();
    for (name, s) in [("low", low), ("high", high)] {
        if let SideSpec::Fixed(v) = s {
            if v.len() != d || v.windows(2).any(|w| w[0] > w[1]) || v.iter().any(|x| !(0..=t.c).contains(x)) {
                return domain(format!("{name} side pattern {v:?} is not valid for this prism"));
            }
        }
    }
    let cost = |spec: &SideSpec, i: usize, x: i64| -> Option<usize> {
        match spec {
            SideSpec::Fixed(v) => (v[i] == x).then_some(0),
            SideSpec::Prefer => Some(usize::from(std[i] != x)),
        }
    };
    let (lo, hi) = t.b_range(q);
    if let BandPaths::Universal(chain) = band {
        let mut total = 0;
        let mut paths = Vec::with_capacity(d);
        for i in 0..d {
            let pick = |spec: &SideSpec| match spec {
                SideSpec::Fixed(v) => v[i],
                SideSpec::Prefer => std[i],
            };
            let (x, xp) = (pick(low), pick(high));
            total += cost(low, i, x).unwrap() + cost(high, i, xp).unwrap();
            let mut p = Vec::with_capacity(chain.len() + 2);
            p.push((x * q, lo));
            p.extend(chain.iter().copied());
            p.push((xp * q, hi));
            paths.push(p);
        }
        return Ok((PathAssignment { paths }, total));
    }
    let mut cands: Vec<Cand> = Vec::new();
    match band {
        BandPaths::Grid(squares) => {
            for (s, ch) in squares.iter().enumerate() {
                if ch.is_some() {
                    let s = s as i64;
                    for (lc, hc) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
                        cands.push(Cand { x: s + lc, xp: s + hc, group: s });
                    }
                }
            }
        }
        BandPaths::Unit { diag, protect_ends } => {
            for x in 0..=t.c {
                if *protect_ends && (x == 0 || x == t.c) {
                    continue;
                }
                cands.push(Cand { x, xp: x, group: -1 });
            }
            for (s, dg) in diag.iter().enumerate() {
                let s = s as i64;
                if *dg != Some(false) {
                    cands.push(Cand { x: s, xp: s + 1, group: s });
                }
                if *dg != Some(true) {
                    cands.push(Cand { x: s + 1, xp: s, group: s });
                }
            }
            cands.sort_by_key(|c| (c.x + c.xp, c.x));
        }
        BandPaths::Universal(_) => unreachable!(),
    }
    let before = |a: &Cand, b: &Cand| -> bool {
        match band {
            BandPaths::Grid(_) => a.group < b.group || (a.group == b.group && a.x <= b.x && a.xp <= b.xp),
            _ => a.x <= b.x && a.xp <= b.xp,
        }
    };
    const INF: usize = usize::MAX / 4;
    let nc = cands.len();
    let mut dp: Vec<Vec<usize>> = vec![vec![INF; nc]; d];
    let mut from: Vec<Vec<usize>> = vec![vec![usize::MAX; nc]; d];
    let grid = matches!(band, BandPaths::Grid(_));
    for i in 0..d {
        // Best predecessor among strictly earlier groups (grid bands only).
        let mut prefix = (INF, usize::MAX);
        let mut group_start = 0;
        for (ci, c) in cands.iter().enumerate() {
            if grid && i > 0 && c.group != cands[group_start].group {
                for pj in group_start..ci {
                    if dp[i - 1][pj] < prefix.0 {
                        prefix = (dp[i - 1][pj], pj);
                    }
                }
                group_start = ci;
            }
            let (Some(a), Some(b)) = (cost(low, i, c.x), cost(high, i, c.xp)) else { continue };
            let own = a + b;
            if i == 0 {
                dp[0][ci] = own;
                continue;
            }
            let (mut best, mut arg) = if grid { prefix } else { (INF, usize::MAX) };
            let range = if grid { group_start..cands.len() } else { 0..cands.len() };
            for pj in range {
                let pc = &cands[pj];
                if grid && pc.group != c.group {
                    break;
                }
                if before(pc, c) && dp[i - 1][pj] < best {
                    best = dp[i - 1][pj];
                    arg = pj;
                }
            }
            if best < INF {
                dp[i][ci] = best + own;
                from[i][ci] = arg;
            }
        }
    }
    if d == 0 {
        return Ok((PathAssignment::default(), 0));
    }
    let (mut ci, &total) = dp[d - 1]
        .iter()
        .enumerate()
        .min_by_key(|(_, v)| **v)
        .ok_or_else(|| crate::Error::Domain("no path candidates in band".into()))?;
    if total >= INF {
        return domain(format!("side patterns {low:?} / {high:?} cannot be realized in this band"));
    }
    let mut chosen = vec![0usize; d];
    for i in (0..d).rev() {
        chosen[i] = ci;
        ci = from[i][ci];
    }
    let paths = chosen
        .iter()
        .map(|&ci| {
            let c = cands[ci];
            let mut p = vec![(c.x * q, lo)];
            if let BandPaths::Grid(squares) = band {
                p.extend(squares[c.group as usize].as_ref().unwrap().iter().copied());
            }
            p.push((c.xp * q, hi));
            p
        })
        .collect();
    Ok((PathAssignment { paths }, total))
}

/// Paths giving standard sides wherever the band allows, with the non-standard side corners listed.
pub fn standard_boundary_paths(t: &Toblerone, q: i64, band: &BandPaths) -> Result<(PathAssignment, Vec<(usize, bool)>)> {
    let (paths, _) = select_paths(t, q, band, &SideSpec::Prefer, &SideSpec::Prefer)?;
    let std = t.standard_pattern();
    let mut exceptional = Vec::new();
    for (i, (s, e)) in paths.starts(q).into_iter().zip(paths.ends(q)).enumerate() {
        if s != std[i] {
            exceptional.push((i, false));
        }
        if e != std[i] {
            exceptional.push((i, true));
        }
    }
    Ok((paths, exceptional))
}

/// Paths realizing the requested side patterns exactly.
pub fn free_boundary_paths(t: &Toblerone, q: i64, band: &BandPaths, low: &[i64], high: &[i64]) -> Result<PathAssignment> {
    let (paths, _) = select_paths(t, q, band, &SideSpec::Fixed(low.to_vec()), &SideSpec::Fixed(high.to_vec()))?;
    Ok(paths)
}
