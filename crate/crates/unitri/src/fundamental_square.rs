//! Lattice combinatorics of the fundamental square `[0,q]^2` at a fixed height.
//!
//! Interior points satisfy `x ≡ p'·y (mod q)`.

use std::collections::{BTreeSet, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{domain, internal, Result};
use crate::lattice_core::{gcd, mod_inverse};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SquareContext {
    pub q: i64,
    pub p_prime: i64,
    pub p_dprime: i64,
    pub p_tprime: i64,
}

impl SquareContext {
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if q < 1 {
            return domain(format!("q = {q} must be positive"));
        }
        if gcd(p, q) != 1 {
            return domain(format!("gcd({p}, {q}) is not 1"));
        }
        if q == 1 {
            return Ok(SquareContext { q, p_prime: 0, p_dprime: 0, p_tprime: 0 });
        }
        let inv = mod_inverse(p, q)?;
        Ok(SquareContext {
            q,
            p_prime: (-p).rem_euclid(q),
            p_dprime: (-inv).rem_euclid(q),
            p_tprime: inv,
        })
    }

    /// Context of the transposed square, where the roles of `x` and `y` swap.
    pub fn transposed(&self) -> SquareContext {
        SquareContext { q: self.q, p_prime: self.p_dprime, p_dprime: self.p_prime, p_tprime: (self.q - self.p_prime) % self.q }
    }

    pub fn is_tetragonal(&self) -> bool {
        self.q <= 2 || self.p_prime == 1 || self.p_prime == self.q - 1
    }

    pub fn corners(&self) -> [SquarePoint; 4] {
        let q = self.q;
        [SquarePoint::new(0, 0), SquarePoint::new(q, 0), SquarePoint::new(0, q), SquarePoint::new(q, q)]
    }

    /// Corners followed by interior points.
    pub fn all_points(&self) -> Vec<SquarePoint> {
        let mut v = self.corners().to_vec();
        v.extend(interior_points(self));
        v
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct SquarePoint {
    pub x: i64,
    pub y: i64,
}

impl SquarePoint {
    pub const fn new(x: i64, y: i64) -> Self {
        SquarePoint { x, y }
    }

    pub fn along(self, axis: Axis) -> i64 {
        match axis {
            Axis::X => self.x,
            Axis::Y => self.y,
        }
    }

    pub fn transposed(self) -> SquarePoint {
        SquarePoint::new(self.y, self.x)
    }
}

impl std::fmt::Debug for SquarePoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Axis {
    X,
    Y,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonotonePath {
    pub axis: Axis,
    pub points: Vec<SquarePoint>,
}

impl MonotonePath {
    pub fn edges(&self) -> impl Iterator<Item = (SquarePoint, SquarePoint)> + '_ {
        self.points.windows(2).map(|w| (w[0], w[1]))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquareTriangulation {
    pub points: Vec<SquarePoint>,
    pub triangles: Vec<[u32; 3]>,
    pub forced: Vec<(SquarePoint, SquarePoint)>,
}

impl SquareTriangulation {
    pub fn triangle_points(&self) -> impl Iterator<Item = [SquarePoint; 3]> + '_ {
        self.triangles.iter().map(|t| t.map(|i| self.points[i as usize]))
    }

    pub fn edges(&self) -> BTreeSet<(SquarePoint, SquarePoint)> {
        let mut out = BTreeSet::new();
        for t in self.triangle_points() {
            for (a, b) in [(t[0], t[1]), (t[1], t[2]), (t[0], t[2])] {
                out.insert(if a < b { (a, b) } else { (b, a) });
            }
        }
        out
    }
}

pub fn interior_points(ctx: &SquareContext) -> Vec<SquarePoint> {
    (1..ctx.q).map(|i| SquarePoint::new((i * ctx.p_prime).rem_euclid(ctx.q), i)).collect()
}

pub fn maximal_path(ctx: &SquareContext, axis: Axis) -> Result<MonotonePath> {
    if ctx.q < 2 {
        return domain("maximal paths need q >= 2");
    }
    let mut points = interior_points(ctx);
    points.sort_by_key(|p| p.along(axis));
    Ok(MonotonePath { axis, points })
}

pub(crate) fn orient(a: SquarePoint, b: SquarePoint, c: SquarePoint) -> i64 {
    (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
}

fn on_closed_segment(a: SquarePoint, b: SquarePoint, c: SquarePoint) -> bool {
    orient(a, b, c) == 0 && a.x.min(b.x) <= c.x && c.x <= a.x.max(b.x) && a.y.min(b.y) <= c.y && c.y <= a.y.max(b.y)
}

/// True when two segments meet anywhere other than at a shared endpoint.
pub fn segments_cross(s: (SquarePoint, SquarePoint), t: (SquarePoint, SquarePoint)) -> bool {
    let (a, b) = s;
    let (c, d) = t;
    if (a == c && b == d) || (a == d && b == c) {
        return false;
    }
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    if o1.signum() * o2.signum() < 0 && o3.signum() * o4.signum() < 0 {
        return true;
    }
    let shared = [a, b].iter().filter(|p| **p == c || **p == d).count();
    if shared == 1 {
        // Collinear segments sharing an endpoint overlap iff they point the same way.
        if o1 == 0 && o2 == 0 {
            let (p, u, v) = if a == c || a == d { (a, b, if a == c { d } else { c }) } else { (b, a, if b == c { d } else { c }) };
            return (u.x - p.x) * (v.x - p.x) + (u.y - p.y) * (v.y - p.y) > 0;
        }
        return false;
    }
    on_closed_segment(a, b, c) || on_closed_segment(a, b, d) || on_closed_segment(c, d, a) || on_closed_segment(c, d, b)
}

fn is_corner(p: SquarePoint, q: i64) -> bool {
    (p.x == 0 || p.x == q) && (p.y == 0 || p.y == q)
}

pub fn paths_compatible(ctx: &SquareContext) -> Result<bool> {
    let x = maximal_path(ctx, Axis::X)?;
    let y = maximal_path(ctx, Axis::Y)?;
    Ok(edge_sets_compatible(&x.edges().collect::<Vec<_>>(), &y.edges().collect::<Vec<_>>()))
}

fn edge_sets_compatible(a: &[(SquarePoint, SquarePoint)], b: &[(SquarePoint, SquarePoint)]) -> bool {
    a.iter().all(|e| b.iter().all(|f| !segments_cross(*e, *f)))
}

pub fn latitude_direction(ctx: &SquareContext) -> Result<(i64, i64)> {
    if ctx.q < 2 {
        return domain("latitudes need q >= 2");
    }
    Ok(if 2 * ctx.p_prime < ctx.q { (ctx.p_prime, 1) } else { (ctx.p_prime - ctx.q, 1) })
}

pub fn longitude_direction(ctx: &SquareContext) -> Result<(i64, i64)> {
    if ctx.q < 2 {
        return domain("longitudes need q >= 2");
    }
    Ok(if 2 * ctx.p_dprime < ctx.q { (1, ctx.p_dprime) } else { (1, ctx.p_dprime - ctx.q) })
}

fn latitude_index(ctx: &SquareContext, p: SquarePoint) -> i64 {
    let (a, _) = latitude_direction(ctx).expect("q >= 2");
    (p.x - a * p.y).div_euclid(ctx.q)
}

fn longitude_index(ctx: &SquareContext, p: SquarePoint) -> i64 {
    let (_, r) = longitude_direction(ctx).expect("q >= 2");
    (p.y - r * p.x).div_euclid(ctx.q)
}

fn is_lattice_point(ctx: &SquareContext, p: SquarePoint) -> bool {
    (0..=ctx.q).contains(&p.x) && (0..=ctx.q).contains(&p.y) && (p.x - ctx.p_prime * p.y).rem_euclid(ctx.q) == 0
}

/// No lattice point of the square lies strictly inside the segment.
fn primitive_segment(ctx: &SquareContext, a: SquarePoint, b: SquarePoint) -> bool {
    let g = gcd(b.x - a.x, b.y - a.y);
    (1..g).all(|t| {
        let p = SquarePoint::new(a.x + (b.x - a.x) / g * t, a.y + (b.y - a.y) / g * t);
        !is_lattice_point(ctx, p)
    })
}

fn quasi_step(ctx: &SquareContext, axis: Axis, a: SquarePoint, b: SquarePoint) -> bool {
    if b.along(axis) <= a.along(axis) {
        return false;
    }
    let adjacent = match axis {
        Axis::X => (longitude_index(ctx, b) - longitude_index(ctx, a)).abs() == 1,
        Axis::Y => (latitude_index(ctx, b) - latitude_index(ctx, a)).abs() == 1,
    };
    (b.along(axis) == a.along(axis) + 1 || adjacent) && primitive_segment(ctx, a, b)
}

pub fn is_quasi_maximal(ctx: &SquareContext, path: &MonotonePath) -> bool {
    if ctx.q < 2 {
        return path.points.is_empty();
    }
    let pts: Vec<SquarePoint> = path.points.iter().copied().filter(|p| !is_corner(*p, ctx.q)).collect();
    if pts.is_empty() || pts.iter().any(|p| !is_lattice_point(ctx, *p)) {
        return false;
    }
    let axis = path.axis;
    if pts[0].along(axis) != 1 || pts[pts.len() - 1].along(axis) != ctx.q - 1 {
        return false;
    }
    pts.windows(2).all(|w| quasi_step(ctx, axis, w[0], w[1]))
}

const QUASI_SEARCH_LIMIT: usize = 1_000_000;

/// A quasi-maximal X-path and Y-path whose edges meet properly.
pub fn compatible_quasi_maximal_pair(ctx: &SquareContext) -> Result<(MonotonePath, MonotonePath)> {
    if ctx.q < 2 {
        return domain("quasi-maximal paths need q >= 2");
    }
    if ctx.is_tetragonal() {
        return Ok((maximal_path(ctx, Axis::X)?, maximal_path(ctx, Axis::Y)?));
    }
    let ys = maximal_path(ctx, Axis::Y)?.points;
    let xs = maximal_path(ctx, Axis::X)?.points;
    let successors = |order: &[SquarePoint], axis: Axis| -> HashMap<SquarePoint, Vec<SquarePoint>> {
        order
            .iter()
            .map(|a| (*a, order.iter().copied().filter(|b| quasi_step(ctx, axis, *a, *b)).collect()))
            .collect()
    };
    let ynext = successors(&ys, Axis::Y);
    let xnext = successors(&xs, Axis::X);
    let (ystart, yend) = (ys[0], ys[ys.len() - 1]);
    let (xstart, xend) = (xs[0], xs[xs.len() - 1]);

    // Reachability of the X-path end through edges that avoid the given Y-path.
    let xsearch = |ypath: &[SquarePoint]| -> Option<Vec<SquarePoint>> {
        let yedges: Vec<_> = ypath.windows(2).map(|w| (w[0], w[1])).collect();
        let mut parent: HashMap<SquarePoint, Option<SquarePoint>> = HashMap::new();
        parent.insert(xstart, None);
        for a in &xs {
            if !parent.contains_key(a) {
                continue;
            }
            for b in &xnext[a] {
                if !parent.contains_key(b) && yedges.iter().all(|f| !segments_cross((*a, *b), *f)) {
                    parent.insert(*b, Some(*a));
                }
            }
        }
        parent.get(&xend)?;
        let mut out = vec![xend];
        while let Some(Some(prev)) = parent.get(out.last().unwrap()) {
            out.push(*prev);
        }
        out.reverse();
        Some(out)
    };

    let mut stack: Vec<(SquarePoint, usize)> = vec![(ystart, 0)];
    let mut path = vec![ystart];
    let mut complete = 0usize;
    while let Some((node, next)) = stack.pop() {
        if node == yend {
            complete += 1;
            if let Some(xp) = xsearch(&path) {
                return Ok((MonotonePath { axis: Axis::X, points: xp }, MonotonePath { axis: Axis::Y, points: path }));
            }
            if complete > QUASI_SEARCH_LIMIT {
                break;
            }
            path.pop();
            continue;
        }
        let succ = &ynext[&node];
        if next < succ.len() {
            stack.push((node, next + 1));
            stack.push((succ[next], 0));
            path.push(succ[next]);
        } else {
            path.pop();
        }
    }
    internal(format!(
        "no compatible quasi-maximal pair found for p' = {}, q = {} after {complete} Y-paths",
        ctx.p_prime, ctx.q
    ))
}

/// Greedy completion of `forced` to a triangulation of the square's lattice points.
pub fn complete_square_triangulation(
    ctx: &SquareContext,
    forced: &[(SquarePoint, SquarePoint)],
) -> Result<SquareTriangulation> {
    let points = ctx.all_points();
    let index: HashMap<SquarePoint, u32> = points.iter().enumerate().map(|(i, p)| (*p, i as u32)).collect();
    let mut edges: Vec<(SquarePoint, SquarePoint)> = Vec::new();
    let mut seen: HashSet<(SquarePoint, SquarePoint)> = HashSet::new();
    let norm = |a: SquarePoint, b: SquarePoint| if a < b { (a, b) } else { (b, a) };
    for &(a, b) in forced {
        if a == b || !index.contains_key(&a) || !index.contains_key(&b) {
            return domain(format!("forced edge {a:?}-{b:?} does not join two lattice points of the square"));
        }
        if !primitive_segment(ctx, a, b) {
            return domain(format!("forced edge {a:?}-{b:?} passes through a lattice point"));
        }
        let e = norm(a, b);
        if seen.contains(&e) {
            continue;
        }
        if let Some(f) = edges.iter().find(|f| segments_cross(e, **f)) {
            return domain(format!("forced edges {:?}-{:?} and {:?}-{:?} cross", e.0, e.1, f.0, f.1));
        }
        seen.insert(e);
        edges.push(e);
    }
    let mut cand: Vec<(SquarePoint, SquarePoint)> = Vec::new();
    for (i, a) in points.iter().enumerate() {
        for b in &points[i + 1..] {
            let e = norm(*a, *b);
            if !seen.contains(&e) && primitive_segment(ctx, e.0, e.1) {
                cand.push(e);
            }
        }
    }
    cand.sort_by_key(|(a, b)| ((b.x - a.x).pow(2) + (b.y - a.y).pow(2), *a, *b));
    for e in cand {
        if edges.iter().all(|f| !segments_cross(e, *f)) {
            edges.push(e);
        }
    }
    let mut adj: Vec<BTreeSet<u32>> = vec![BTreeSet::new(); points.len()];
    for (a, b) in &edges {
        let (i, j) = (index[a], index[b]);
        adj[i as usize].insert(j);
        adj[j as usize].insert(i);
    }
    let mut triangles = Vec::new();
    for i in 0..points.len() as u32 {
        for &j in adj[i as usize].range(i + 1..) {
            for &k in adj[j as usize].range(j + 1..) {
                if adj[i as usize].contains(&k)
                    && orient(points[i as usize], points[j as usize], points[k as usize]).abs() == ctx.q
                {
                    triangles.push([i, j, k]);
                }
            }
        }
    }
    if triangles.len() as i64 != 2 * ctx.q {
        return internal(format!("square completion produced {} triangles, expected {}", triangles.len(), 2 * ctx.q));
    }
    Ok(SquareTriangulation { points, triangles, forced: forced.to_vec() })
}

/// How a square is triangulated, in terms of which monotone chains it carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SquareKind {
    /// Contains the maximal Y-path.
    ChainY,
    /// Contains the maximal X-path.
    ChainX,
    /// Contains a compatible quasi-maximal pair.
    Both,
}

/// A square triangulation plus the monotone chains it supports.
#[derive(Clone, Debug)]
pub struct SquareModel {
    pub triangles: Vec<[SquarePoint; 3]>,
    /// Interior points of a Y-monotone chain from `y = 1` to `y = q-1`.
    pub ychain: Option<Vec<SquarePoint>>,
    pub xchain: Option<Vec<SquarePoint>>,
}

impl SquareModel {
    pub fn transposed(&self) -> SquareModel {
        let tr = |v: &Vec<SquarePoint>| v.iter().map(|p| p.transposed()).collect::<Vec<_>>();
        SquareModel {
            triangles: self.triangles.iter().map(|t| t.map(SquarePoint::transposed)).collect(),
            ychain: self.xchain.as_ref().map(tr),
            xchain: self.ychain.as_ref().map(tr),
        }
    }
}

fn corner_edges(path: &[SquarePoint], axis: Axis, q: i64) -> Vec<(SquarePoint, SquarePoint)> {
    let (first, last) = (path[0], path[path.len() - 1]);
    let o = SquarePoint::new;
    match axis {
        Axis::Y => vec![(first, o(0, 0)), (first, o(q, 0)), (last, o(0, q)), (last, o(q, q))],
        Axis::X => vec![(first, o(0, 0)), (first, o(0, q)), (last, o(q, 0)), (last, o(q, q))],
    }
}

pub fn square_model(ctx: &SquareContext, kind: SquareKind) -> Result<SquareModel> {
    let q = ctx.q;
    if q == 1 {
        let t = complete_square_triangulation(ctx, &[])?;
        return Ok(SquareModel { triangles: t.triangle_points().collect(), ychain: Some(vec![]), xchain: Some(vec![]) });
    }
    let (xpath, ypath) = match kind {
        SquareKind::ChainY => (None, Some(maximal_path(ctx, Axis::Y)?.points)),
        SquareKind::ChainX => (Some(maximal_path(ctx, Axis::X)?.points), None),
        SquareKind::Both => {
            let (x, y) = compatible_quasi_maximal_pair(ctx)?;
            (Some(x.points), Some(y.points))
        }
    };
    let mut forced = Vec::new();
    if let Some(y) = &ypath {
        forced.extend(y.windows(2).map(|w| (w[0], w[1])));
        forced.extend(corner_edges(y, Axis::Y, q));
    }
    if let Some(x) = &xpath {
        forced.extend(x.windows(2).map(|w| (w[0], w[1])));
        forced.extend(corner_edges(x, Axis::X, q));
    }
    let t = complete_square_triangulation(ctx, &forced)?;
    Ok(SquareModel { triangles: t.triangle_points().collect(), ychain: ypath, xchain: xpath })
}

/// Horizontal position of a Y-monotone polyline at height `y`, scaled by 3 for centroid tests.
fn polyline_x3(poly: &[SquarePoint], y3: i64) -> (i64, i64) {
    // Returns x as a fraction (num, den) with den > 0, for the segment containing y3/3.
    for w in poly.windows(2) {
        let (a, b) = (w[0], w[1]);
        if 3 * a.y <= y3 && y3 <= 3 * b.y && a.y != b.y {
            // x = a.x + (b.x-a.x)*(y3/3 - a.y)/(b.y-a.y)
            let den = 3 * (b.y - a.y);
            let num = 3 * a.x * (b.y - a.y) + (b.x - a.x) * (y3 - 3 * a.y);
            return (num, den);
        }
    }
    unreachable!("height outside the polyline")
}

fn centroid_left_of(t: &[SquarePoint; 3], poly: &[SquarePoint]) -> bool {
    let x3 = t[0].x + t[1].x + t[2].x;
    let y3 = t[0].y + t[1].y + t[2].y;
    let (num, den) = polyline_x3(poly, y3);
    x3 * den < 3 * num
}

/// Triangulation of a row of `m` squares `[0, mq] x [0, q]` containing every
/// monotone path that follows the maximal Y-chain of the first square.
///
/// Returns the triangles and the chain.
pub fn row_band(ctx: &SquareContext, m: i64) -> Result<(Vec<[SquarePoint; 3]>, Vec<SquarePoint>)> {
    let q = ctx.q;
    if q < 2 || m < 1 {
        return domain("row bands need q >= 2 and at least one square");
    }
    let base = square_model(ctx, SquareKind::ChainY)?;
    let chain = base.ychain.clone().expect("chain kind");
    let o = SquarePoint::new;
    let shift = |p: SquarePoint, t: i64| o(p.x + t * q, p.y);
    let mut tris: Vec<[SquarePoint; 3]> = Vec::new();
    let (c1, cl) = (chain[0], chain[chain.len() - 1]);
    for t in 0..m {
        tris.push([o(t * q, 0), o((t + 1) * q, 0), c1]);
        tris.push([o(t * q, q), o((t + 1) * q, q), cl]);
    }
    let mut left = vec![o(0, 0)];
    left.extend(chain.iter().copied());
    left.push(o(0, q));
    let mut right = vec![o(q, 0)];
    right.extend(chain.iter().copied());
    right.push(o(q, q));
    for tri in &base.triangles {
        if centroid_left_of(tri, &left) && !tri.iter().any(|p| p.x == q && (p.y == 0 || p.y == q)) {
            tris.push(*tri);
        }
        if !centroid_left_of(tri, &right) && !tri.iter().any(|p| p.x == 0 && (p.y == 0 || p.y == q)) {
            tris.push(tri.map(|p| shift(p, m - 1)));
        }
    }
    for t in 0..m - 1 {
        for j in 0..chain.len() - 1 {
            let (a, b) = (shift(chain[j], t), shift(chain[j + 1], t));
            let (c, d) = (shift(chain[j], t + 1), shift(chain[j + 1], t + 1));
            tris.push([a, c, d]);
            tris.push([a, b, d]);
        }
        tris.push([o(m * q, 0), shift(c1, t), shift(c1, t + 1)]);
        tris.push([o(m * q, q), shift(cl, t), shift(cl, t + 1)]);
    }
    if tris.len() as i64 != 2 * m * q || tris.iter().any(|t| orient(t[0], t[1], t[2]).abs() != q) {
        return internal(format!("row band for p' = {}, q = {q}, m = {m} is inconsistent", ctx.p_prime));
    }
    Ok((tris, chain))
}

/// Checks that triangles tile the rectangle `[0, w] x [0, h]` using all its lattice points.
pub fn is_rectangle_triangulation(ctx: &SquareContext, tris: &[[SquarePoint; 3]], w: i64, h: i64) -> Result<()> {
    let q = ctx.q;
    let area2: i64 = tris.iter().map(|t| orient(t[0], t[1], t[2]).abs()).sum();
    if area2 != 2 * w * h {
        return internal(format!("triangles cover area {area2}/2, expected {}", w * h));
    }
    if tris.iter().any(|t| orient(t[0], t[1], t[2]).abs() != q) {
        return internal("triangle is not unimodular");
    }
    let mut count: HashMap<(SquarePoint, SquarePoint), u32> = HashMap::new();
    for t in tris {
        for (a, b) in [(t[0], t[1]), (t[1], t[2]), (t[0], t[2])] {
            *count.entry(if a < b { (a, b) } else { (b, a) }).or_default() += 1;
        }
    }
    for ((a, b), c) in &count {
        let on_boundary = (a.x == b.x && (a.x == 0 || a.x == w)) || (a.y == b.y && (a.y == 0 || a.y == h));
        let want = if on_boundary { 1 } else { 2 };
        if *c != want {
            return internal(format!("edge {a:?}-{b:?} is used {c} times"));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quasi_pair_small() {
        for q in 2..=13 {
            for p in 1..q {
                if gcd(p, q) != 1 {
                    continue;
                }
                let ctx = SquareContext::new(p, q).unwrap();
                let (x, y) = compatible_quasi_maximal_pair(&ctx).unwrap();
                assert!(is_quasi_maximal(&ctx, &x) && is_quasi_maximal(&ctx, &y));
                let m = square_model(&ctx, SquareKind::Both).unwrap();
                is_rectangle_triangulation(&ctx, &m.triangles, q, q).unwrap();
            }
        }
    }

    #[test]
    fn row_bands_tile() {
        for (p, q) in [(5, 13), (2, 5), (1, 4), (3, 7), (1, 2)] {
            let ctx = SquareContext::new(p, q).unwrap();
            for m in 1..5 {
                let (tris, _) = row_band(&ctx, m).unwrap();
                is_rectangle_triangulation(&ctx, &tris, m * q, q).unwrap();
            }
        }
    }
}
