use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::strings::{StringKind, StringSpec};
use crate::algebra::check_dim;
use crate::error::{Error, Result};

pub type Point = (i32, i32);

/// Edge identity on the global integer grid.
///
/// `H(x, y)` runs from `(x, y)` to `(x+1, y)`, `V(x, y)` from `(x, y)` to
/// `(x, y+1)`. Dangling boundary edges are ordinary `V` edges whose outer end
/// carries no stabilizer. `Free` labels edges of hand-written geometries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EdgeKey {
    H(i32, i32),
    V(i32, i32),
    Free(u32),
}

impl EdgeKey {
    pub fn endpoints(self) -> Option<(Point, Point)> {
        match self {
            EdgeKey::H(x, y) => Some(((x, y), (x + 1, y))),
            EdgeKey::V(x, y) => Some(((x, y), (x, y + 1))),
            EdgeKey::Free(_) => None,
        }
    }
}

/// Orientation sign of `edge` in the boundary of the unit cell whose lower
/// left corner is `cell`: `+1` along the clockwise flow, `-1` against it,
/// `None` when the edge is not on that cell.
pub fn cell_edge_sign(cell: Point, edge: EdgeKey) -> Option<i64> {
    let (x, y) = cell;
    match edge {
        EdgeKey::V(ex, ey) if ey == y && ex == x => Some(1),
        EdgeKey::V(ex, ey) if ey == y && ex == x + 1 => Some(-1),
        EdgeKey::H(ex, ey) if ex == x && ey == y + 1 => Some(1),
        EdgeKey::H(ex, ey) if ex == x && ey == y => Some(-1),
        _ => None,
    }
}

/// Incidence sign of `edge` at vertex `v`: `+1` pointing away, `-1` toward.
pub fn vertex_edge_sign(v: Point, edge: EdgeKey) -> Option<i64> {
    let (tail, head) = edge.endpoints()?;
    if tail == v {
        Some(1)
    } else if head == v {
        Some(-1)
    } else {
        None
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SiteKind {
    Vertex,
    Face,
}

/// A stabilizer site: the edges it touches and a sign per edge.
///
/// For vertices the sign is `+1` for edges pointing away; for faces it is
/// `+1` for edges along the clockwise flow.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Site {
    pub kind: SiteKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pos: Option<Point>,
    pub edges: Vec<(usize, i64)>,
}

impl Site {
    pub fn weight(&self) -> usize {
        self.edges.len()
    }

    pub fn sign_of(&self, edge: usize) -> Option<i64> {
        self.edges.iter().find(|(e, _)| *e == edge).map(|(_, s)| *s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SiteId {
    pub kind: SiteKind,
    pub index: usize,
}

impl SiteId {
    pub fn vertex(index: usize) -> Self {
        SiteId { kind: SiteKind::Vertex, index }
    }

    pub fn face(index: usize) -> Self {
        SiteId { kind: SiteKind::Face, index }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Boundary {
    Rough,
    Smooth,
}

/// Boundary types of the four sides `[top, bottom, left, right]`.
pub const PATCH_BOUNDARIES: [Boundary; 4] = [Boundary::Rough, Boundary::Rough, Boundary::Smooth, Boundary::Smooth];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridShape {
    pub rows: usize,
    pub cols: usize,
    pub origin: Point,
}

impl GridShape {
    pub fn x_range(&self) -> std::ops::RangeInclusive<i32> {
        self.origin.0..=self.origin.0 + self.cols as i32
    }

    pub fn y_range(&self) -> std::ops::RangeInclusive<i32> {
        self.origin.1..=self.origin.1 + self.rows as i32
    }

    pub fn top(&self) -> i32 {
        self.origin.1 + self.rows as i32
    }

    pub fn right(&self) -> i32 {
        self.origin.0 + self.cols as i32
    }
}

/// A patch: edges (qudits), stabilizer sites and the two logical strings.
#[derive(Clone, Debug)]
pub struct PatchGeometry {
    d: usize,
    edges: Vec<EdgeKey>,
    vertices: Vec<Site>,
    faces: Vec<Site>,
    x_logical: StringSpec,
    z_logical: StringSpec,
    shape: Option<GridShape>,
    boundaries: [Boundary; 4],
    lookup: HashMap<EdgeKey, usize>,
}

impl PartialEq for PatchGeometry {
    fn eq(&self, other: &Self) -> bool {
        self.d == other.d
            && self.edges == other.edges
            && self.vertices == other.vertices
            && self.faces == other.faces
            && self.x_logical == other.x_logical
            && self.z_logical == other.z_logical
    }
}

/// Default rectangular patch with its lower-left grid vertex at the origin.
pub fn build_patch(d: usize, rows: usize, cols: usize) -> Result<PatchGeometry> {
    PatchGeometry::grid(d, rows, cols, (0, 0))
}

impl PatchGeometry {
    /// Rectangular patch: rough top/bottom, smooth left/right.
    ///
    /// Vertices sit at `(x, y)` for `x ∈ [ox, ox+cols]`, `y ∈ [oy, oy+rows]`;
    /// every grid vertex also has one dangling edge above (top row) or below
    /// (bottom row). Sites touching a single edge carry no stabilizer.
    pub fn grid(d: usize, rows: usize, cols: usize, origin: Point) -> Result<Self> {
        check_dim(d)?;
        if cols == 0 {
            return Err(Error::DegeneratePatch(format!("rows={rows}, cols=0: a patch needs at least one column")));
        }
        let shape = GridShape { rows, cols, origin };
        let (ox, oy) = origin;
        let (r, c) = (rows as i32, cols as i32);
        let mut edges = Vec::new();
        for y in oy..=oy + r {
            for x in ox..ox + c {
                edges.push(EdgeKey::H(x, y));
            }
        }
        for x in ox..=ox + c {
            for y in oy - 1..=oy + r {
                edges.push(EdgeKey::V(x, y));
            }
        }
        let lookup: HashMap<EdgeKey, usize> = edges.iter().enumerate().map(|(i, e)| (*e, i)).collect();

        let mut vertices = Vec::new();
        for y in oy..=oy + r {
            for x in ox..=ox + c {
                let v = (x, y);
                let mut es: Vec<(usize, i64)> =
                    edges.iter().enumerate().filter_map(|(i, e)| vertex_edge_sign(v, *e).map(|s| (i, s))).collect();
                es.sort();
                if es.len() >= 2 {
                    vertices.push(Site { kind: SiteKind::Vertex, pos: Some(v), edges: es });
                }
            }
        }
        let mut faces = Vec::new();
        for y in oy - 1..=oy + r {
            for x in ox..ox + c {
                let cell = (x, y);
                let mut es: Vec<(usize, i64)> =
                    edges.iter().enumerate().filter_map(|(i, e)| cell_edge_sign(cell, *e).map(|s| (i, s))).collect();
                es.sort();
                if es.len() >= 2 {
                    faces.push(Site { kind: SiteKind::Face, pos: Some(cell), edges: es });
                }
            }
        }
        let mut g = PatchGeometry {
            d,
            edges,
            vertices,
            faces,
            x_logical: StringSpec::empty(StringKind::X),
            z_logical: StringSpec::empty(StringKind::Z),
            shape: Some(shape),
            boundaries: PATCH_BOUNDARIES,
            lookup,
        };
        let cells: Vec<Point> = (ox - 1..=ox + c).map(|x| (x, oy)).collect();
        g.x_logical = StringSpec::x_path(&g, &cells)?;
        let points: Vec<Point> = (oy - 1..=oy + r + 1).map(|y| (ox, y)).collect();
        g.z_logical = StringSpec::z_path(&g, &points)?;
        Ok(g)
    }

    /// Geometry from explicit incidence lists.
    pub fn custom(
        d: usize,
        edges: Vec<EdgeKey>,
        vertices: Vec<Site>,
        faces: Vec<Site>,
        x_logical: StringSpec,
        z_logical: StringSpec,
    ) -> Result<Self> {
        check_dim(d)?;
        let lookup: HashMap<EdgeKey, usize> = edges.iter().enumerate().map(|(i, e)| (*e, i)).collect();
        if lookup.len() != edges.len() {
            return Err(Error::Geometry("duplicate edge keys".into()));
        }
        let n = edges.len();
        for s in vertices.iter().chain(&faces) {
            if let Some((e, _)) = s.edges.iter().find(|(e, _)| *e >= n) {
                return Err(Error::Support { index: *e, edges: n });
            }
        }
        for s in [&x_logical, &z_logical] {
            if let Some((e, _)) = s.crossings.iter().find(|(e, _)| *e >= n) {
                return Err(Error::Support { index: *e, edges: n });
            }
        }
        if x_logical.kind != StringKind::X || z_logical.kind != StringKind::Z {
            return Err(Error::InvalidString("logical strings must be one X-type and one Z-type".into()));
        }
        Ok(PatchGeometry { d, edges, vertices, faces, x_logical, z_logical, shape: None, boundaries: PATCH_BOUNDARIES, lookup })
    }

    /// The geometry seen after a transversal Fourier transform: vertices and
    /// faces exchange roles and the logical strings exchange type.
    ///
    /// New vertex signs are the negated old face signs and new face signs
    /// are the old vertex signs, so every projector `P(j)` maps to the
    /// projector with the same label. The new logical X-string is the old
    /// Z-string with negated signs, the new logical Z-string the old X-string
    /// with negated signs.
    pub fn rotated(&self) -> PatchGeometry {
        let negate = |es: &[(usize, i64)]| es.iter().map(|(e, s)| (*e, -s)).collect::<Vec<_>>();
        let vertices = self.faces.iter().map(|f| Site { kind: SiteKind::Vertex, pos: f.pos, edges: negate(&f.edges) }).collect();
        let faces = self.vertices.iter().map(|v| Site { kind: SiteKind::Face, pos: v.pos, edges: v.edges.clone() }).collect();
        let x_logical = StringSpec { kind: StringKind::X, crossings: negate(&self.z_logical.crossings), endpoints: None, closed: false };
        let z_logical = StringSpec { kind: StringKind::Z, crossings: negate(&self.x_logical.crossings), endpoints: None, closed: false };
        PatchGeometry {
            d: self.d,
            edges: self.edges.clone(),
            vertices,
            faces,
            x_logical,
            z_logical,
            shape: None,
            boundaries: [self.boundaries[2], self.boundaries[3], self.boundaries[0], self.boundaries[1]],
            lookup: self.lookup.clone(),
        }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn edges(&self) -> &[EdgeKey] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edge_index(&self, key: EdgeKey) -> Option<usize> {
        self.lookup.get(&key).copied()
    }

    pub fn vertices(&self) -> &[Site] {
        &self.vertices
    }

    pub fn faces(&self) -> &[Site] {
        &self.faces
    }

    pub fn site(&self, id: SiteId) -> Option<&Site> {
        match id.kind {
            SiteKind::Vertex => self.vertices.get(id.index),
            SiteKind::Face => self.faces.get(id.index),
        }
    }

    pub fn site_ids(&self) -> impl Iterator<Item = SiteId> + '_ {
        (0..self.vertices.len()).map(SiteId::vertex).chain((0..self.faces.len()).map(SiteId::face))
    }

    /// Site at a grid position (a vertex point or a face cell).
    pub fn site_at(&self, kind: SiteKind, pos: Point) -> Option<SiteId> {
        let list = match kind {
            SiteKind::Vertex => &self.vertices,
            SiteKind::Face => &self.faces,
        };
        list.iter().position(|s| s.pos == Some(pos)).map(|index| SiteId { kind, index })
    }

    pub fn x_logical(&self) -> &StringSpec {
        &self.x_logical
    }

    pub fn z_logical(&self) -> &StringSpec {
        &self.z_logical
    }

    pub fn shape(&self) -> Option<GridShape> {
        self.shape
    }

    pub fn boundaries(&self) -> [Boundary; 4] {
        self.boundaries
    }

    /// Replace every site list (used to build deliberately broken geometries).
    pub fn with_sites(mut self, vertices: Vec<Site>, faces: Vec<Site>) -> Self {
        self.vertices = vertices;
        self.faces = faces;
        self
    }

    pub fn with_logicals(mut self, x_logical: StringSpec, z_logical: StringSpec) -> Self {
        self.x_logical = x_logical;
        self.z_logical = z_logical;
        self
    }
}

/// Plain-text patch description: either a rectangle or explicit incidence.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PatchFile {
    Grid {
        d: usize,
        rows: usize,
        cols: usize,
        #[serde(default)]
        origin: Option<Point>,
    },
    Explicit {
        d: usize,
        edges: usize,
        vertices: Vec<Vec<(usize, i64)>>,
        faces: Vec<Vec<(usize, i64)>>,
        x_logical: Vec<(usize, i64)>,
        z_logical: Vec<(usize, i64)>,
    },
}

impl PatchFile {
    pub fn d(&self) -> usize {
        match self {
            PatchFile::Grid { d, .. } | PatchFile::Explicit { d, .. } => *d,
        }
    }

    pub fn build(&self) -> Result<PatchGeometry> {
        match self {
            PatchFile::Grid { d, rows, cols, origin } => PatchGeometry::grid(*d, *rows, *cols, origin.unwrap_or((0, 0))),
            PatchFile::Explicit { d, edges, vertices, faces, x_logical, z_logical } => {
                let site = |kind, es: &Vec<(usize, i64)>| Site { kind, pos: None, edges: es.clone() };
                PatchGeometry::custom(
                    *d,
                    (0..*edges as u32).map(EdgeKey::Free).collect(),
                    vertices.iter().map(|v| site(SiteKind::Vertex, v)).collect(),
                    faces.iter().map(|f| site(SiteKind::Face, f)).collect(),
                    StringSpec::from_crossings(StringKind::X, x_logical.clone()),
                    StringSpec::from_crossings(StringKind::Z, z_logical.clone()),
                )
            }
        }
    }

    /// Explicit-incidence description of an existing geometry.
    pub fn explicit(g: &PatchGeometry) -> PatchFile {
        PatchFile::Explicit {
            d: g.d,
            edges: g.edges.len(),
            vertices: g.vertices.iter().map(|s| s.edges.clone()).collect(),
            faces: g.faces.iter().map(|s| s.edges.clone()).collect(),
            x_logical: g.x_logical.crossings.clone(),
            z_logical: g.z_logical.crossings.clone(),
        }
    }
}
