use serde::{Deserialize, Serialize};

use super::geometry::{cell_edge_sign, EdgeKey, PatchGeometry, Point};
use super::operator::{Action, LocalOperator};
use crate::algebra::modd;
use crate::error::{Error, Result};
use crate::linalg::{ONE, ZERO};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StringKind {
    /// Product of shifts along a dual path of faces.
    X,
    /// Product of clock phases along a primal path of vertices.
    Z,
}

/// A string operator: one signed exponent per crossed edge.
///
/// With label `i`, an X-string acts as `∏ X^{i c_e}` and a Z-string as
/// `∏ Z^{i s_e}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StringSpec {
    pub kind: StringKind,
    pub crossings: Vec<(usize, i64)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub endpoints: Option<(Point, Point)>,
    #[serde(default)]
    pub closed: bool,
}

fn adjacent(a: Point, b: Point) -> Option<(i32, i32)> {
    let (dx, dy) = (b.0 - a.0, b.1 - a.1);
    (dx.abs() + dy.abs() == 1).then_some((dx, dy))
}

impl StringSpec {
    pub fn empty(kind: StringKind) -> Self {
        StringSpec { kind, crossings: Vec::new(), endpoints: None, closed: false }
    }

    pub fn from_crossings(kind: StringKind, crossings: Vec<(usize, i64)>) -> Self {
        StringSpec { kind, crossings, endpoints: None, closed: false }
    }

    /// X-type string through a sequence of adjacent cells.
    ///
    /// Crossing edge `e` out of cell `c` contributes the sign that `e` has in
    /// the boundary of `c`, so the start cell's face syndrome moves by `+i`
    /// and the end cell's by `-i`.
    pub fn x_path(g: &PatchGeometry, cells: &[Point]) -> Result<Self> {
        if cells.len() < 2 {
            return Err(Error::InvalidString("an X path needs at least two cells".into()));
        }
        let mut crossings = Vec::with_capacity(cells.len() - 1);
        for w in cells.windows(2) {
            let (a, b) = (w[0], w[1]);
            let (dx, dy) = adjacent(a, b).ok_or_else(|| Error::InvalidString(format!("cells {a:?} and {b:?} are not adjacent")))?;
            let key = match (dx, dy) {
                (1, 0) => EdgeKey::V(a.0 + 1, a.1),
                (-1, 0) => EdgeKey::V(a.0, a.1),
                (0, 1) => EdgeKey::H(a.0, a.1 + 1),
                _ => EdgeKey::H(a.0, a.1),
            };
            let e = g.edge_index(key).ok_or_else(|| Error::InvalidString(format!("crossing {key:?} is not an edge of the patch")))?;
            let s = cell_edge_sign(a, key).expect("crossed edge borders the cell");
            crossings.push((e, s));
        }
        Ok(StringSpec {
            kind: StringKind::X,
            crossings,
            endpoints: Some((cells[0], cells[cells.len() - 1])),
            closed: cells[0] == cells[cells.len() - 1],
        })
    }

    /// Z-type string along a sequence of adjacent grid points; each edge is
    /// signed `+1` when it points along the direction of travel.
    pub fn z_path(g: &PatchGeometry, points: &[Point]) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::InvalidString("a Z path needs at least two points".into()));
        }
        let mut crossings = Vec::with_capacity(points.len() - 1);
        for w in points.windows(2) {
            let (a, b) = (w[0], w[1]);
            let (dx, dy) = adjacent(a, b).ok_or_else(|| Error::InvalidString(format!("points {a:?} and {b:?} are not adjacent")))?;
            let (key, s) = match (dx, dy) {
                (1, 0) => (EdgeKey::H(a.0, a.1), 1),
                (-1, 0) => (EdgeKey::H(b.0, b.1), -1),
                (0, 1) => (EdgeKey::V(a.0, a.1), 1),
                _ => (EdgeKey::V(b.0, b.1), -1),
            };
            let e = g.edge_index(key).ok_or_else(|| Error::InvalidString(format!("step along {key:?} is not an edge of the patch")))?;
            crossings.push((e, s));
        }
        Ok(StringSpec {
            kind: StringKind::Z,
            crossings,
            endpoints: Some((points[0], points[points.len() - 1])),
            closed: points[0] == points[points.len() - 1],
        })
    }

    pub fn reversed(&self) -> Self {
        StringSpec {
            kind: self.kind,
            crossings: self.crossings.iter().map(|(e, s)| (*e, -s)).collect(),
            endpoints: self.endpoints.map(|(a, b)| (b, a)),
            closed: self.closed,
        }
    }

    /// Exponent of this string on `edge` (summing repeated crossings).
    pub fn exponent(&self, edge: usize) -> i64 {
        self.crossings.iter().filter(|(e, _)| *e == edge).map(|(_, s)| s).sum()
    }

    /// The string operator with label `label`.
    pub fn operator(&self, d: usize, label: i64) -> LocalOperator {
        let mut support: Vec<usize> = self.crossings.iter().map(|(e, _)| *e).collect();
        support.sort();
        support.dedup();
        let signs: Vec<i64> = support.iter().map(|e| modd(label * self.exponent(*e), d) as i64).collect();
        let action = match self.kind {
            StringKind::X => Action::shift_by(d, 1),
            StringKind::Z => Action::clock(d, 1),
        };
        LocalOperator::new(d, support, signs, action)
    }
}

impl StringSpec {
    /// Z-string in the δ basis: the projector onto `Σ s_e a_e = h`, equal to
    /// `(1/d) Σ_m q^{-mh}` times the label-`m` string.
    pub fn delta_operator(&self, d: usize, h: i64) -> Result<LocalOperator> {
        if self.kind != StringKind::Z {
            return Err(Error::InvalidString("δ-basis labels need a Z-type string".into()));
        }
        let mut support: Vec<usize> = self.crossings.iter().map(|(e, _)| *e).collect();
        support.sort();
        support.dedup();
        let signs: Vec<i64> = support.iter().map(|e| self.exponent(*e)).collect();
        let hh = modd(h, d);
        let values = (0..d).map(|t| if t == hh { ONE } else { ZERO }).collect();
        Ok(LocalOperator::new(d, support, signs, Action::PhaseBySum(values)))
    }
}
