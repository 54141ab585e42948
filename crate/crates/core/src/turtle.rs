//! Lattice turtle: turns a word into a unit-step polygonal line on `Z^2`.
//!
//! Conventions: the turtle starts at the origin heading East with the y-axis
//! pointing up, draws one unit segment, then for each letter turns a quarter
//! turn (`L` counterclockwise, `R` clockwise) and draws another. A word of
//! length `m` therefore yields `m + 1` segments.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::words::{self, TurnLetter, TurnWord, WordCaps};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Heading {
    East,
    North,
    West,
    South,
}

impl Heading {
    pub fn left(self) -> Self {
        match self {
            Heading::East => Heading::North,
            Heading::North => Heading::West,
            Heading::West => Heading::South,
            Heading::South => Heading::East,
        }
    }

    pub fn right(self) -> Self {
        match self {
            Heading::East => Heading::South,
            Heading::South => Heading::West,
            Heading::West => Heading::North,
            Heading::North => Heading::East,
        }
    }

    pub fn turn(self, letter: TurnLetter) -> Self {
        match letter {
            TurnLetter::L => self.left(),
            TurnLetter::R => self.right(),
        }
    }

    pub fn step(self) -> (i64, i64) {
        match self {
            Heading::East => (1, 0),
            Heading::North => (0, 1),
            Heading::West => (-1, 0),
            Heading::South => (0, -1),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LatticePoint {
    pub x: i64,
    pub y: i64,
}

impl LatticePoint {
    pub const ORIGIN: LatticePoint = LatticePoint { x: 0, y: 0 };

    pub const fn new(x: i64, y: i64) -> Self {
        LatticePoint { x, y }
    }
}

impl From<(i64, i64)> for LatticePoint {
    fn from((x, y): (i64, i64)) -> Self {
        LatticePoint { x, y }
    }
}

/// A polygonal line of unit axis-aligned segments between lattice vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct LatticePath {
    vertices: Vec<LatticePoint>,
}

impl LatticePath {
    /// Checks that there are at least two vertices and that consecutive
    /// vertices are one unit step apart.
    pub fn from_vertices(vertices: Vec<LatticePoint>) -> Result<Self> {
        if vertices.len() < 2 {
            return Err(Error::PathTooShort);
        }
        for (i, w) in vertices.windows(2).enumerate() {
            let d = (w[1].x - w[0].x).abs() + (w[1].y - w[0].y).abs();
            if d != 1 {
                return Err(Error::NotUnitStep { index: i });
            }
        }
        Ok(LatticePath { vertices })
    }

    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    pub fn segment_count(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn first(&self) -> LatticePoint {
        self.vertices[0]
    }

    pub fn last(&self) -> LatticePoint {
        self.vertices[self.vertices.len() - 1]
    }

    pub fn is_closed(&self) -> bool {
        self.first() == self.last()
    }

    /// Mirror image across the x-axis.
    pub fn reflect_x(&self) -> LatticePath {
        LatticePath {
            vertices: self
                .vertices
                .iter()
                .map(|p| LatticePoint::new(p.x, -p.y))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PathClass {
    pub closed: bool,
    pub non_intersecting: bool,
}

impl PathClass {
    pub fn is_simple_closed(&self) -> bool {
        self.closed && self.non_intersecting
    }
}

pub fn trace(word: &TurnWord) -> LatticePath {
    let mut vertices = Vec::with_capacity(word.len() + 2);
    let mut heading = Heading::East;
    let mut at = LatticePoint::ORIGIN;
    vertices.push(at);
    let mut advance = |heading: Heading, at: &mut LatticePoint| {
        let (dx, dy) = heading.step();
        at.x += dx;
        at.y += dy;
        vertices.push(*at);
    };
    advance(heading, &mut at);
    for &letter in word.letters() {
        heading = heading.turn(letter);
        advance(heading, &mut at);
    }
    LatticePath { vertices }
}

/// Closed iff the extremities coincide. Non-intersecting iff no vertex is
/// visited twice, except the shared extremity of a closed path.
pub fn classify(path: &LatticePath) -> PathClass {
    let closed = path.is_closed();
    let vs = path.vertices();
    let body = if closed { &vs[..vs.len() - 1] } else { vs };
    let mut seen = HashSet::with_capacity(body.len());
    let non_intersecting = body.iter().all(|p| seen.insert(*p));
    PathClass {
        closed,
        non_intersecting,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BoundingBox {
    pub min: LatticePoint,
    pub max: LatticePoint,
}

impl BoundingBox {
    pub fn width(&self) -> i64 {
        self.max.x - self.min.x
    }

    pub fn height(&self) -> i64 {
        self.max.y - self.min.y
    }

    pub fn is_square(&self) -> bool {
        self.width() == self.height()
    }
}

pub fn bounding_box(path: &LatticePath) -> BoundingBox {
    let first = path.first();
    let (mut min, mut max) = (first, first);
    for p in path.vertices() {
        min.x = min.x.min(p.x);
        min.y = min.y.min(p.y);
        max.x = max.x.max(p.x);
        max.y = max.y.max(p.y);
    }
    BoundingBox { min, max }
}

/// The snowflake polygon of order `n`, under the default caps.
pub fn snowflake_path(n: u32) -> Result<LatticePath> {
    snowflake_path_with(n, WordCaps::default())
}

pub fn snowflake_path_with(n: u32, caps: WordCaps) -> Result<LatticePath> {
    Ok(trace(&words::snowflake_word_with(n, caps)?))
}
