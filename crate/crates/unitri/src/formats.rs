//! JSON and OFF input/output.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::lattice_core::{tet_det, AmbientLattice, ConvexRegion, LatticePoint, Triangulation};
use crate::polytope_pipeline::LatticePolytope;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeFile {
    pub vertices: Vec<[i64; 3]>,
    /// Basis vectors of the lattice; the integer lattice when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lattice: Option<[[i64; 3]; 3]>,
}

impl PolytopeFile {
    pub fn lattice(&self) -> Result<AmbientLattice> {
        match self.lattice {
            None => Ok(AmbientLattice::integer()),
            Some(b) => AmbientLattice::new(b.map(LatticePoint::from)),
        }
    }

    pub fn points(&self) -> Vec<LatticePoint> {
        self.vertices.iter().map(|v| LatticePoint::from(*v)).collect()
    }

    pub fn to_polytope(&self) -> Result<LatticePolytope> {
        if self.vertices.len() < 4 {
            return domain(format!("a polytope needs at least 4 vertices, got {}", self.vertices.len()));
        }
        LatticePolytope::in_lattice(&self.points(), self.lattice()?)
    }
}

fn json_err(e: serde_json::Error) -> Error {
    Error::Domain(format!("invalid JSON: {e}"))
}

pub fn read_polytope(text: &str) -> Result<PolytopeFile> {
    serde_json::from_str(text).map_err(json_err)
}

pub fn read_triangulation(text: &str) -> Result<Triangulation> {
    let t: Triangulation = serde_json::from_str(text).map_err(json_err)?;
    t.validate_indices().map_err(|e| Error::Domain(e.to_string()))?;
    Ok(t)
}

/// Pretty JSON with one point or cell per line, stable across runs.
pub fn write_triangulation(t: &Triangulation) -> String {
    let mut s = String::new();
    let b = t.lattice.basis();
    s.push_str("{\n");
    let _ = writeln!(
        s,
        "  \"lattice\": [[{}, {}, {}], [{}, {}, {}], [{}, {}, {}]],",
        b[0].x, b[0].y, b[0].z, b[1].x, b[1].y, b[1].z, b[2].x, b[2].y, b[2].z
    );
    s.push_str("  \"vertices\": [");
    for (i, v) in t.vertices.iter().enumerate() {
        let sep = if i + 1 < t.vertices.len() { "," } else { "" };
        let _ = write!(s, "\n    [{}, {}, {}]{sep}", v.x, v.y, v.z);
    }
    s.push_str("\n  ],\n  \"tetrahedra\": [");
    for (i, c) in t.tetrahedra.iter().enumerate() {
        let sep = if i + 1 < t.tetrahedra.len() { "," } else { "" };
        let _ = write!(s, "\n    [{}, {}, {}, {}]{sep}", c[0], c[1], c[2], c[3]);
    }
    s.push_str("\n  ],\n");
    let _ = writeln!(s, "  \"boundary_style\": {},", serde_json::to_string(&t.boundary_style).unwrap());
    let _ = writeln!(s, "  \"meta\": {}", serde_json::to_string(&t.meta).unwrap());
    s.push_str("}\n");
    s
}

/// Boundary surface as OFF: triangles that belong to exactly one cell, oriented outward.
pub fn boundary_off(t: &Triangulation) -> String {
    let mut count: HashMap<[u32; 3], (u32, u32)> = HashMap::new();
    for c in &t.tetrahedra {
        for skip in 0..4 {
            let f: Vec<u32> = (0..4).filter(|i| *i != skip).map(|i| c[i]).collect();
            let mut key = [f[0], f[1], f[2]];
            key.sort_unstable();
            count.entry(key).or_insert((0, c[skip])).0 += 1;
        }
    }
    let v = |i: u32| t.vertices[i as usize];
    let mut tris: Vec<[u32; 3]> = count
        .iter()
        .filter(|(_, (n, _))| *n == 1)
        .map(|(&[a, b, c], &(_, o))| {
            if tet_det(&[v(a), v(b), v(c), v(o)]) > 0 {
                [a, c, b]
            } else {
                [a, b, c]
            }
        })
        .collect();
    tris.sort_unstable();
    let mut used: Vec<u32> = tris.iter().flatten().copied().collect();
    used.sort_unstable();
    used.dedup();
    let index: HashMap<u32, usize> = used.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let mut s = String::new();
    let _ = writeln!(s, "OFF\n{} {} 0", used.len(), tris.len());
    for v in &used {
        let p = t.vertices[*v as usize];
        let _ = writeln!(s, "{} {} {}", p.x, p.y, p.z);
    }
    for tri in &tris {
        let _ = writeln!(s, "3 {} {} {}", index[&tri[0]], index[&tri[1]], index[&tri[2]]);
    }
    s
}

/// Region description accepted on the command line: `dilate:p,q,k` for `kΔ'(p,q)`,
/// or points `x,y,z;x,y,z;...` whose convex hull is the region.
pub fn parse_region(spec: &str) -> Result<ConvexRegion> {
    if let Some(rest) = spec.strip_prefix("dilate:") {
        let nums: Vec<i64> = rest
            .split(',')
            .map(|x| x.trim().parse::<i64>().map_err(|e| Error::Domain(format!("bad number {x:?}: {e}"))))
            .collect::<Result<_>>()?;
        let [_, q, k] = nums[..] else {
            return domain(format!("expected dilate:p,q,k, got {spec:?}"));
        };
        return ConvexRegion::from_points(&crate::empty_simplex::delta_prime(q, k));
    }
    let pts: Vec<LatticePoint> = spec
        .split(';')
        .filter(|s| !s.trim().is_empty())
        .map(|p| {
            let c: Vec<i64> = p
                .split(',')
                .map(|x| x.trim().parse::<i64>().map_err(|e| Error::Domain(format!("bad number {x:?}: {e}"))))
                .collect::<Result<_>>()?;
            match c[..] {
                [x, y, z] => Ok(LatticePoint::new(x, y, z)),
                _ => domain(format!("expected x,y,z, got {p:?}")),
            }
        })
        .collect::<Result<_>>()?;
    ConvexRegion::from_points(&pts)
}
