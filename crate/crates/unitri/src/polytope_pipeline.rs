//! Unimodular triangulations of dilated lattice 3-polytopes.

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dilation::{dispatch, execute_cells, from_canonical, quasi_standard_face, standard_face_edges, BoundaryStyle, DilationPlan, Method};
use crate::empty_simplex::{classify, EmptyClass};
use crate::error::{domain, internal, Error, Result};
use crate::lattice_core::{
    lattice_points_in_region, tet_det, AmbientLattice, ConvexRegion, LatticePoint, LatticeSimplex, Triangulation,
    TriangulationMeta,
};

/// A full-dimensional lattice polytope, given by points whose convex hull it is.
#[derive(Clone, Debug)]
pub struct LatticePolytope {
    region: ConvexRegion,
    lattice: AmbientLattice,
}

impl LatticePolytope {
    pub fn new(points: &[LatticePoint]) -> Result<Self> {
        Self::in_lattice(points, AmbientLattice::integer())
    }

    pub fn in_lattice(points: &[LatticePoint], lattice: AmbientLattice) -> Result<Self> {
        if let Some(v) = points.iter().find(|v| !lattice.contains(**v)) {
            return domain(format!("vertex {v} is not a lattice point"));
        }
        let region = ConvexRegion::from_points(points)?;
        if region.dim() != 3 {
            return domain(format!("polytope is {}-dimensional, not 3-dimensional", region.dim()));
        }
        Ok(LatticePolytope { region, lattice })
    }

    pub fn vertices(&self) -> &[LatticePoint] {
        self.region.vertices()
    }

    pub fn lattice(&self) -> &AmbientLattice {
        &self.lattice
    }

    pub fn region(&self) -> &ConvexRegion {
        &self.region
    }

    /// The `k`-th dilate about the origin.
    pub fn dilate(&self, k: i64) -> Result<LatticePolytope> {
        if k < 1 {
            return domain(format!("k = {k} must be positive"));
        }
        let pts: Vec<LatticePoint> = self.vertices().iter().map(|v| k * *v).collect();
        Self::in_lattice(&pts, self.lattice)
    }

    /// Normalized volume with respect to the lattice.
    pub fn normalized_volume(&self) -> i128 {
        self.region.volume6() / self.lattice.covolume() as i128
    }

    pub fn lattice_points(&self) -> Vec<LatticePoint> {
        lattice_points_in_region(&self.region, &self.lattice)
    }
}

/// Triangulation into empty tetrahedra, each tagged with its class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellComplex {
    pub vertices: Vec<LatticePoint>,
    pub tetrahedra: Vec<[u32; 4]>,
    pub classes: Vec<EmptyClass>,
}

impl CellComplex {
    pub fn cell(&self, i: usize) -> [LatticePoint; 4] {
        self.tetrahedra[i].map(|j| self.vertices[j as usize])
    }
}

fn faces(c: &[usize; 4]) -> [[usize; 3]; 4] {
    let f = |a: usize, b: usize, d: usize| {
        let mut t = [c[a], c[b], c[d]];
        t.sort_unstable();
        t
    };
    [f(1, 2, 3), f(0, 2, 3), f(0, 1, 3), f(0, 1, 2)]
}

fn orient(pts: &[LatticePoint], f: &[usize; 3], v: LatticePoint) -> i128 {
    tet_det(&[pts[f[0]], pts[f[1]], pts[f[2]], v])
}

/// Placing triangulation of all points in lexicographic order; points that land inside the
/// current hull are inserted by stellar subdivision of the cells containing them.
fn placing(pts: &[LatticePoint]) -> Result<Vec<[usize; 4]>> {
    let n = pts.len();
    let mut seed = vec![0usize];
    for (i, v) in pts.iter().enumerate().skip(1) {
        let ok = match seed.len() {
            1 => *v != pts[seed[0]],
            2 => !(pts[seed[1]] - pts[seed[0]]).cross(*v - pts[seed[0]]).is_zero(),
            3 => tet_det(&[pts[seed[0]], pts[seed[1]], pts[seed[2]], *v]) != 0,
            _ => false,
        };
        if ok {
            seed.push(i);
        }
        if seed.len() == 4 {
            break;
        }
    }
    if seed.len() < 4 {
        return domain("points are not full-dimensional");
    }
    let mut cells = vec![[seed[0], seed[1], seed[2], seed[3]]];
    for i in (0..n).filter(|i| !seed.contains(i)) {
        let v = pts[i];
        let containing: Vec<usize> = (0..cells.len())
            .filter(|&c| {
                let cell = cells[c];
                let opp = faces(&cell);
                (0..4).all(|j| {
                    let s = orient(pts, &opp[j], v);
                    s == 0 || s.signum() == orient(pts, &opp[j], pts[cell[j]]).signum()
                })
            })
            .collect();
        if !containing.is_empty() {
            let mut next = Vec::with_capacity(cells.len() + 3 * containing.len());
            for (ci, cell) in cells.iter().enumerate() {
                if !containing.contains(&ci) {
                    next.push(*cell);
                    continue;
                }
                for f in faces(cell) {
                    if orient(pts, &f, v) != 0 {
                        next.push([f[0], f[1], f[2], i]);
                    }
                }
            }
            cells = next;
            continue;
        }
        let mut count: HashMap<[usize; 3], (usize, usize)> = HashMap::new();
        for cell in &cells {
            for (j, f) in faces(cell).iter().enumerate() {
                let e = count.entry(*f).or_insert((0, cell[j]));
                e.0 += 1;
            }
        }
        let mut boundary: Vec<([usize; 3], usize)> =
            count.into_iter().filter(|(_, (m, _))| *m == 1).map(|(f, (_, o))| (f, o)).collect();
        boundary.sort_unstable();
        for (f, opposite) in boundary {
            let s = orient(pts, &f, v);
            if s != 0 && s.signum() != orient(pts, &f, pts[opposite]).signum() {
                cells.push([f[0], f[1], f[2], i]);
            }
        }
    }
    Ok(cells)
}

/// Triangulation of `P` into empty tetrahedra using all of its lattice points.
pub fn initial_empty_triangulation(p: &LatticePolytope) -> Result<CellComplex> {
    let z3 = AmbientLattice::integer();
    let coords: Vec<LatticePoint> = p
        .lattice_points()
        .iter()
        .map(|v| p.lattice.coords(*v).expect("lattice point"))
        .collect();
    let mut order: Vec<usize> = (0..coords.len()).collect();
    order.sort_by_key(|i| coords[*i]);
    let sorted: Vec<LatticePoint> = order.iter().map(|i| coords[*i]).collect();
    let cells = placing(&sorted)?;
    let mut used: Vec<usize> = cells.iter().flatten().copied().collect();
    used.sort_unstable();
    used.dedup();
    let index: HashMap<usize, u32> = used.iter().enumerate().map(|(j, i)| (*i, j as u32)).collect();
    let mut tetrahedra: Vec<[u32; 4]> = cells
        .iter()
        .map(|c| {
            let mut t = c.map(|i| index[&i]);
            t.sort_unstable();
            t
        })
        .collect();
    tetrahedra.sort_unstable();
    let local: Vec<LatticePoint> = used.iter().map(|i| sorted[*i]).collect();
    let mut classes = Vec::with_capacity(tetrahedra.len());
    for t in &tetrahedra {
        let s = LatticeSimplex::new(t.map(|i| local[i as usize]), z3)?;
        classes.push(classify(&s).map_err(|e| Error::Internal(format!("placing produced a non-empty cell: {e}")))?);
    }
    let vertices = local.iter().map(|c| p.lattice.from_coords(*c)).collect();
    Ok(CellComplex { vertices, tetrahedra, classes })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineOptions {
    pub k: i64,
    pub style: BoundaryStyle,
    /// Triangulate cells independently; faces may then meet improperly.
    pub dissection: bool,
}

/// Unimodular triangulation (or dissection) of `kP`, refining the initial empty triangulation.
pub fn triangulate_dilation(p: &LatticePolytope, opts: PipelineOptions) -> Result<Triangulation> {
    let PipelineOptions { k, style, dissection } = opts;
    if k < 1 {
        return domain(format!("k = {k} must be positive"));
    }
    if !dissection && style == BoundaryStyle::Unconstrained {
        return domain("cells must share a boundary style; choose standard or quasi-standard");
    }
    let complex = initial_empty_triangulation(p)?;
    let mut plans: Vec<((i64, i64), DilationPlan)> = Vec::new();
    for cls in &complex.classes {
        let key = (cls.p, cls.q);
        if plans.iter().any(|(k0, _)| *k0 == key) {
            continue;
        }
        let plan = if dissection {
            if k < 2 && cls.q > 1 {
                return domain(format!("cell Δ({},{}): dissections need k >= 2", cls.p, cls.q));
            }
            if k == 1 {
                dispatch(cls.p, cls.q, 1, BoundaryStyle::Standard)?
            } else {
                DilationPlan { p: cls.p, q: cls.q, k, style: BoundaryStyle::Unconstrained, method: Method::Dissection }
            }
        } else {
            dispatch(cls.p, cls.q, k, style).map_err(|e| Error::Domain(format!("cell Δ({},{}): {e}", cls.p, cls.q)))?
        };
        plans.push((key, plan));
    }
    let built: Vec<Result<((i64, i64), Vec<[LatticePoint; 4]>)>> =
        plans.par_iter().map(|(key, plan)| execute_cells(plan).map(|c| (*key, c))).collect();
    let mut cache: HashMap<(i64, i64), Vec<[LatticePoint; 4]>> = HashMap::new();
    for b in built {
        let (key, cells) = b?;
        cache.insert(key, cells);
    }
    let mut out: Vec<[LatticePoint; 4]> = Vec::new();
    for cls in &complex.classes {
        let fine = &cache[&(cls.p, cls.q)];
        for c in fine {
            let mut m = [LatticePoint::ORIGIN; 4];
            for (o, y) in m.iter_mut().zip(c) {
                *o = p.lattice.from_coords(from_canonical(cls, k, *y)?);
            }
            out.push(m);
        }
    }
    let out_style = if dissection { BoundaryStyle::Unconstrained } else { style };
    let method = if dissection { "polytope-dissection".to_string() } else { format!("polytope-{}", style.name()) };
    let meta = TriangulationMeta { p: 0, q: 1, k, method };
    let t = Triangulation::from_cells(p.lattice, &out, out_style, meta);
    let expected = k * k * k * p.normalized_volume() as i64;
    if !dissection && t.len() as i64 != expected {
        return internal(format!("{} cells, expected {expected}", t.len()));
    }
    Ok(t)
}

/// Triangulation of a shared triangle of two cells, computed from the triangle alone.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceTriangulation {
    /// Undilated vertices, sorted.
    pub vertices: [LatticePoint; 3],
    pub k: i64,
    pub edges: BTreeSet<(LatticePoint, LatticePoint)>,
}

pub fn shared_face_contract(
    a: &[LatticePoint; 4],
    b: &[LatticePoint; 4],
    k: i64,
    style: BoundaryStyle,
) -> Result<FaceTriangulation> {
    let mut common: Vec<LatticePoint> = a.iter().copied().filter(|v| b.contains(v)).collect();
    if common.len() != 3 {
        return domain(format!("cells share {} vertices, not a triangle", common.len()));
    }
    common.sort();
    let v = [common[0], common[1], common[2]];
    let bary = match style {
        BoundaryStyle::Standard => standard_face_edges(k),
        BoundaryStyle::QuasiStandard => quasi_standard_face(k)?.edges,
        BoundaryStyle::Unconstrained => return domain("unconstrained boundaries have no canonical face triangulation"),
    };
    let pt = |c: [i64; 3]| c[0] * v[0] + c[1] * v[1] + c[2] * v[2];
    let edges = bary
        .iter()
        .map(|(x, y)| {
            let (s, t) = (pt(*x), pt(*y));
            if s < t {
                (s, t)
            } else {
                (t, s)
            }
        })
        .collect();
    Ok(FaceTriangulation { vertices: v, k, edges })
}

/// Edges of `t` lying in the dilated triangle `k·conv(face)`.
pub fn face_edges(t: &Triangulation, face: &[LatticePoint; 3], k: i64) -> BTreeSet<(LatticePoint, LatticePoint)> {
    let n = (face[1] - face[0]).cross(face[2] - face[0]);
    let c = k * n.dot(face[0]);
    let inside = |x: LatticePoint| {
        if n.dot(x) != c {
            return false;
        }
        (0..3).all(|i| {
            let (a, b, o) = (k * face[i], k * face[(i + 1) % 3], k * face[(i + 2) % 3]);
            let s = (b - a).cross(x - a).dot(n);
            let so = (b - a).cross(o - a).dot(n);
            s == 0 || s.signum() == so.signum()
        })
    };
    let mut out = BTreeSet::new();
    for cell in t.cells() {
        for i in 0..4 {
            for j in i + 1..4 {
                let (x, y) = (cell[i], cell[j]);
                if inside(x) && inside(y) {
                    out.insert(if x < y { (x, y) } else { (y, x) });
                }
            }
        }
    }
    out
}
