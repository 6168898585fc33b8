//! Assembly of a region of `kΔ'` from layers of prisms with shared side patterns.

use std::collections::HashMap;

use crate::error::{domain, internal, Result};
use crate::fundamental_square::{row_band, square_model, SquareContext, SquareKind, SquareModel, SquarePoint};
use crate::lattice_core::LatticePoint;
use crate::prism_builder::{
    cone_index, emit_cone_cells, emit_path_cells, emit_prism, flip_pattern, layer_pieces, select_paths, BandPaths, Direction, PathAssignment, PieceKind, SideSpec,
    Toblerone,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum GridPattern {
    Uniform(SquareKind),
    /// Squares with `i + j` even get `even`.
    Checkerboard { even: SquareKind, odd: SquareKind },
    /// The `(k-3) x 3` interface of the quasi-standard construction.
    QuasiInterface { k: i64 },
}

impl GridPattern {
    fn kind(&self, i: i64, j: i64) -> SquareKind {
        match *self {
            GridPattern::Uniform(k) => k,
            GridPattern::Checkerboard { even, odd } => {
                if (i + j) % 2 == 0 {
                    even
                } else {
                    odd
                }
            }
            GridPattern::QuasiInterface { k } => {
                let last = k - 4;
                let x_chain = if j == 1 { (1..last).contains(&i) } else { i == 0 || i == last };
                if x_chain {
                    SquareKind::ChainX
                } else {
                    SquareKind::ChainY
                }
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum HeightMode {
    Grid(GridPattern),
    /// Row bands sharing one maximal Y-chain; only for heights between X layers.
    Rows,
    /// Column bands sharing one maximal X-chain; only for heights between Y layers.
    Cols,
}

/// Triangulation of a height as seen from the layer below and from the layer above.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct HeightSpec {
    pub below: HeightMode,
    pub above: HeightMode,
}

impl HeightSpec {
    pub fn same(mode: HeightMode) -> Self {
        HeightSpec { below: mode, above: mode }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Target {
    /// Apex index on the upper row for each lower-row segment.
    Fixed(Vec<i64>),
    Prefer,
}

#[derive(Clone, Debug)]
pub(crate) struct LayerSpec {
    pub height: i64,
    pub direction: Direction,
    pub start: (i64, i64),
    pub end: (i64, i64),
    pub n_bottom: i64,
    pub n_top: i64,
    pub first: Target,
    pub last: Target,
    /// `(rectangle height, band)` of prisms that must not run a path along either end of the rectangle (`q = 1` only).
    pub protect: Vec<(i64, i64)>,
}

pub(crate) struct Assembly<'a> {
    pub ctx: SquareContext,
    pub layers: Vec<LayerSpec>,
    pub heights: &'a dyn Fn(i64) -> HeightSpec,
    /// Prisms whose rectangle lies at this height are built first.
    pub priority: Option<i64>,
}

struct Band {
    triangles: Vec<[(i64, i64); 3]>,
    paths: BandPaths,
}

/// A square pyramid over a unit square whose diagonal is chosen at the end.
struct Pending {
    apex: LatticePoint,
    square: (i64, i64, i64),
}

struct Caches {
    squares: HashMap<SquareKind, SquareModel>,
    rows: HashMap<(bool, i64), (Vec<[SquarePoint; 3]>, Vec<SquarePoint>)>,
}

impl Assembly<'_> {
    pub fn build(&self) -> Result<Vec<[LatticePoint; 4]>> {
        let q = self.ctx.q;
        let mut pieces: Vec<Vec<Toblerone>> = Vec::with_capacity(self.layers.len());
        let mut seps: Vec<Vec<Option<Vec<i64>>>> = Vec::with_capacity(self.layers.len());
        for l in &self.layers {
            let ps = layer_pieces(l.direction, l.height, l.start, l.end, l.n_bottom, l.n_top)?;
            let mut s = vec![None; ps.len() + 1];
            if let Target::Fixed(v) = &l.first {
                s[0] = Some(v.clone());
            }
            if let Target::Fixed(v) = &l.last {
                s[ps.len()] = Some(v.clone());
            }
            pieces.push(ps);
            seps.push(s);
        }
        let mut order: Vec<(usize, usize)> = Vec::new();
        if let Some(h) = self.priority {
            for (li, ps) in pieces.iter().enumerate() {
                for (pi, p) in ps.iter().enumerate() {
                    if p.z_rect() == h {
                        order.push((li, pi));
                    }
                }
            }
        }
        for (li, ps) in pieces.iter().enumerate() {
            for (pi, p) in ps.iter().enumerate() {
                if self.priority != Some(p.z_rect()) {
                    order.push((li, pi));
                }
            }
        }
        let mut caches = Caches { squares: HashMap::new(), rows: HashMap::new() };
        let mut diag: HashMap<(i64, i64, i64), bool> = HashMap::new();
        let mut pending: Vec<Pending> = Vec::new();
        let mut cells: Vec<[LatticePoint; 4]> = Vec::new();
        for (li, pi) in order {
            let layer = &self.layers[li];
            let t = pieces[li][pi];
            let spec = (self.heights)(t.z_rect());
            let mode = match t.kind {
                PieceKind::TopRect => spec.below,
                PieceKind::BottomRect => spec.above,
            };
            let protect = layer.protect.contains(&(t.z_rect(), t.band));
            let band = self.band(&t, mode, protect, &diag, &mut caches)?;
            let to_edge = |bottom: &Vec<i64>| match t.kind {
                PieceKind::TopRect => bottom.clone(),
                PieceKind::BottomRect => flip_pattern(bottom, layer.n_top),
            };
            let side = |s: &Option<Vec<i64>>| match s {
                Some(v) => SideSpec::Fixed(to_edge(v)),
                None => SideSpec::Prefer,
            };
            let low = side(&seps[li][pi]);
            let high = side(&seps[li][pi + 1]);
            let (paths, _) = select_paths(&t, q, &band.paths, &low, &high).map_err(|e| {
                crate::Error::Internal(format!(
                    "prism {pi} of layer at height {} ({:?}) has no admissible paths: {e}",
                    layer.height, layer.direction
                ))
            })?;
            let to_bottom = |edge: Vec<i64>| match t.kind {
                PieceKind::TopRect => edge,
                PieceKind::BottomRect => flip_pattern(&edge, layer.n_bottom),
            };
            for (slot, pattern) in [(pi, to_bottom(paths.starts(q))), (pi + 1, to_bottom(paths.ends(q)))] {
                match &seps[li][slot] {
                    Some(v) if *v != pattern => {
                        return internal(format!("side pattern mismatch at separator {slot} of height {}", layer.height))
                    }
                    _ => seps[li][slot] = Some(pattern),
                }
            }
            if q == 1 {
                self.emit_unit(&t, &paths, &mut diag, &mut pending, &mut cells);
            } else {
                emit_prism(&t, q, &band.triangles, &paths, &mut cells);
            }
        }
        for p in pending {
            let (h, i, j) = p.square;
            let c = |a: i64, b: i64| LatticePoint::new(i + a, j + b, h);
            let tris = if *diag.get(&p.square).unwrap_or(&true) {
                [[c(0, 0), c(1, 0), c(1, 1)], [c(0, 0), c(0, 1), c(1, 1)]]
            } else {
                [[c(0, 0), c(1, 0), c(0, 1)], [c(1, 0), c(1, 1), c(0, 1)]]
            };
            for t in tris {
                cells.push([p.apex, t[0], t[1], t[2]]);
            }
        }
        Ok(cells)
    }

    fn square_index(t: &Toblerone, s: i64) -> (i64, i64) {
        match t.direction {
            Direction::X => (s, t.band),
            Direction::Y => (t.band, s),
        }
    }

    fn band(
        &self,
        t: &Toblerone,
        mode: HeightMode,
        protect: bool,
        diag: &HashMap<(i64, i64, i64), bool>,
        caches: &mut Caches,
    ) -> Result<Band> {
        let q = self.ctx.q;
        let h = t.z_rect();
        if q == 1 {
            let d = (0..t.c)
                .map(|s| {
                    let (i, j) = Self::square_index(t, s);
                    diag.get(&(h, i, j)).copied()
                })
                .collect();
            return Ok(Band { triangles: Vec::new(), paths: BandPaths::Unit { diag: d, protect_ends: protect } });
        }
        let b0 = t.band * q;
        match (mode, t.direction) {
            (HeightMode::Grid(pattern), _) => {
                let mut triangles = Vec::with_capacity((2 * q * t.c) as usize);
                let mut chains = Vec::with_capacity(t.c as usize);
                for s in 0..t.c {
                    let (i, j) = Self::square_index(t, s);
                    let kind = pattern.kind(i, j);
                    if let std::collections::hash_map::Entry::Vacant(e) = caches.squares.entry(kind) {
                        e.insert(square_model(&self.ctx, kind)?);
                    }
                    let m = &caches.squares[&kind];
                    let (ox, oy) = (i * q, j * q);
                    let ab = |p: &SquarePoint| match t.direction {
                        Direction::X => (p.x + ox, p.y + oy),
                        Direction::Y => (p.y + oy, p.x + ox),
                    };
                    triangles.extend(m.triangles.iter().map(|tri| [ab(&tri[0]), ab(&tri[1]), ab(&tri[2])]));
                    let chain = match t.direction {
                        Direction::X => &m.ychain,
                        Direction::Y => &m.xchain,
                    };
                    chains.push(chain.as_ref().map(|c| c.iter().map(ab).collect()));
                }
                Ok(Band { triangles, paths: BandPaths::Grid(chains) })
            }
            (HeightMode::Rows, Direction::X) | (HeightMode::Cols, Direction::Y) => {
                let transposed = t.direction == Direction::Y;
                let key = (transposed, t.c);
                if let std::collections::hash_map::Entry::Vacant(e) = caches.rows.entry(key) {
                    let ctx = if transposed { self.ctx.transposed() } else { self.ctx };
                    e.insert(row_band(&ctx, t.c)?);
                }
                let (tris, chain) = &caches.rows[&key];
                let ab = |p: &SquarePoint| (p.x, p.y + b0);
                Ok(Band {
                    triangles: tris.iter().map(|tri| [ab(&tri[0]), ab(&tri[1]), ab(&tri[2])]).collect(),
                    paths: BandPaths::Universal(chain.iter().map(ab).collect()),
                })
            }
            _ => domain(format!("height {h} mode {mode:?} does not fit a prism in direction {:?}", t.direction)),
        }
    }

    fn emit_unit(
        &self,
        t: &Toblerone,
        paths: &PathAssignment,
        diag: &mut HashMap<(i64, i64, i64), bool>,
        pending: &mut Vec<Pending>,
        cells: &mut Vec<[LatticePoint; 4]>,
    ) {
        let h = t.z_rect();
        let (lo, hi) = (t.band, t.band + 1);
        let mut cut = vec![false; t.c as usize];
        for p in &paths.paths {
            let (x, xp) = (p[0].0, p[p.len() - 1].0);
            if x != xp {
                let s = x.min(xp);
                let (i, j) = Self::square_index(t, s);
                diag.insert((h, i, j), xp > x);
                cut[s as usize] = true;
            }
        }
        emit_path_cells(t, 1, paths, cells);
        let mut triangles = Vec::new();
        for s in 0..t.c {
            let (i, j) = Self::square_index(t, s);
            if cut[s as usize] {
                if diag[&(h, i, j)] {
                    triangles.push([(s, lo), (s + 1, lo), (s + 1, hi)]);
                    triangles.push([(s, lo), (s, hi), (s + 1, hi)]);
                } else {
                    triangles.push([(s, lo), (s + 1, lo), (s, hi)]);
                    triangles.push([(s + 1, lo), (s + 1, hi), (s, hi)]);
                }
            } else {
                // Both halves of an uncut square share one apex, whichever diagonal is chosen later.
                let zone = cone_index(paths, &[(s, lo), (s + 1, lo), (s + 1, hi)]);
                pending.push(Pending { apex: t.edge_point(1, zone as i64), square: (h, i, j) });
            }
        }
        emit_cone_cells(t, 1, &triangles, paths, cells);
    }
}
