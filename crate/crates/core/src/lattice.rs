//! Points and triangles of the integer lattice.
//!
//! Everything here is exact: coordinates are arbitrary-precision integers and
//! every predicate reduces to integer sign tests. A [`LatticeTriangle`] can only
//! be built from three non-collinear points, so the operations on it never see
//! a degenerate input.

use std::fmt;
use std::ops::{Add, Mul, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePoint {
    pub x: BigInt,
    pub y: BigInt,
}

impl LatticePoint {
    pub fn new(x: impl Into<BigInt>, y: impl Into<BigInt>) -> Self {
        LatticePoint {
            x: x.into(),
            y: y.into(),
        }
    }

    pub fn origin() -> Self {
        LatticePoint::new(0, 0)
    }

    pub fn dot(&self, other: &LatticePoint) -> BigInt {
        &self.x * &other.x + &self.y * &other.y
    }

    /// z-component of the 2d cross product.
    pub fn cross(&self, other: &LatticePoint) -> BigInt {
        &self.x * &other.y - &self.y * &other.x
    }

    pub fn norm_squared(&self) -> BigInt {
        self.dot(self)
    }

    pub fn scale(&self, n: &BigInt) -> LatticePoint {
        LatticePoint {
            x: &self.x * n,
            y: &self.y * n,
        }
    }

    pub fn parity(&self) -> Parity {
        parity(self)
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// Parses `x,y`, optionally wrapped in parentheses.
impl FromStr for LatticePoint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::ParsePoint(s.to_string());
        let t = s.trim();
        let t = t
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .unwrap_or(t);
        let (x, y) = t.split_once(',').ok_or_else(bad)?;
        let x = x.trim().parse::<BigInt>().map_err(|_| bad())?;
        let y = y.trim().parse::<BigInt>().map_err(|_| bad())?;
        Ok(LatticePoint { x, y })
    }
}

impl Add for &LatticePoint {
    type Output = LatticePoint;
    fn add(self, rhs: &LatticePoint) -> LatticePoint {
        LatticePoint {
            x: &self.x + &rhs.x,
            y: &self.y + &rhs.y,
        }
    }
}

impl Sub for &LatticePoint {
    type Output = LatticePoint;
    fn sub(self, rhs: &LatticePoint) -> LatticePoint {
        LatticePoint {
            x: &self.x - &rhs.x,
            y: &self.y - &rhs.y,
        }
    }
}

impl Mul<&LatticePoint> for &BigInt {
    type Output = LatticePoint;
    fn mul(self, rhs: &LatticePoint) -> LatticePoint {
        rhs.scale(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ShapeClass {
    Acute,
    Right,
    Obtuse,
}

impl ShapeClass {
    pub const ALL: [ShapeClass; 3] = [ShapeClass::Acute, ShapeClass::Obtuse, ShapeClass::Right];

    pub fn as_str(self) -> &'static str {
        match self {
            ShapeClass::Acute => "acute",
            ShapeClass::Right => "right",
            ShapeClass::Obtuse => "obtuse",
        }
    }
}

impl fmt::Display for ShapeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ShapeClass {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "acute" => Ok(ShapeClass::Acute),
            "right" => Ok(ShapeClass::Right),
            "obtuse" => Ok(ShapeClass::Obtuse),
            other => Err(format!("unknown shape `{other}` (acute|obtuse|right)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
    Mixed,
}

pub fn parity(p: &LatticePoint) -> Parity {
    match (p.x.is_even(), p.y.is_even()) {
        (true, true) => Parity::Even,
        (false, false) => Parity::Odd,
        _ => Parity::Mixed,
    }
}

/// Number of lattice points on the closed segment `pq`, minus one.
/// The degenerate segment has length zero.
pub fn lattice_length(p: &LatticePoint, q: &LatticePoint) -> BigInt {
    let dx = (&q.x - &p.x).abs();
    let dy = (&q.y - &p.y).abs();
    dx.gcd(&dy)
}

/// A triangle with lattice-point vertices, stored in the order given.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticeTriangle {
    v: [LatticePoint; 3],
}

impl LatticeTriangle {
    pub fn new(v0: LatticePoint, v1: LatticePoint, v2: LatticePoint) -> Result<Self> {
        let a = &v1 - &v0;
        let b = &v2 - &v0;
        if a.cross(&b).is_zero() {
            return Err(Error::Degenerate);
        }
        Ok(LatticeTriangle { v: [v0, v1, v2] })
    }

    /// Convenience constructor from small integer coordinates.
    pub fn from_coords(c: [(i64, i64); 3]) -> Result<Self> {
        let [p, q, r] = c.map(|(x, y)| LatticePoint::new(x, y));
        LatticeTriangle::new(p, q, r)
    }

    pub fn vertices(&self) -> &[LatticePoint; 3] {
        &self.v
    }

    pub fn vertex(&self, i: usize) -> &LatticePoint {
        &self.v[i % 3]
    }

    /// `2 * signed area`; positive for counter-clockwise order.
    pub fn signed_twice_area(&self) -> BigInt {
        (&self.v[1] - &self.v[0]).cross(&(&self.v[2] - &self.v[0]))
    }

    pub fn twice_area(&self) -> BigInt {
        self.signed_twice_area().abs()
    }

    /// Lattice length of the side opposite each vertex, indexed by vertex.
    pub fn opposite_lengths(&self) -> [BigInt; 3] {
        [0, 1, 2].map(|i| lattice_length(self.vertex(i + 1), self.vertex(i + 2)))
    }

    /// Side lattice lengths in non-decreasing order.
    pub fn side_lengths(&self) -> [BigInt; 3] {
        let mut s = self.opposite_lengths();
        s.sort();
        s
    }

    pub fn lattice_perimeter(&self) -> BigInt {
        self.opposite_lengths().iter().sum()
    }

    /// Dot product of the two edge vectors leaving each vertex. Its sign is the
    /// sign of the cosine of the interior angle there.
    pub fn vertex_dots(&self) -> [BigInt; 3] {
        [0, 1, 2].map(|i| {
            let p = self.vertex(i);
            (self.vertex(i + 1) - p).dot(&(self.vertex(i + 2) - p))
        })
    }

    pub fn classify_shape(&self) -> ShapeClass {
        let dots = self.vertex_dots();
        // At most one angle of a triangle can be right or obtuse.
        if dots.iter().any(|d| d.is_negative()) {
            ShapeClass::Obtuse
        } else if dots.iter().any(|d| d.is_zero()) {
            ShapeClass::Right
        } else {
            ShapeClass::Acute
        }
    }

    /// Interior lattice points, from Pick's theorem `K = l/2 + g - 1`.
    pub fn genus(&self) -> BigInt {
        let g2 = self.twice_area() - self.lattice_perimeter() + BigInt::from(2);
        debug_assert!(g2.is_even() && !g2.is_negative());
        g2 / 2
    }

    pub fn translate(&self, by: &LatticePoint) -> LatticeTriangle {
        LatticeTriangle {
            v: self.v.clone().map(|p| &p + by),
        }
    }

    pub fn scale(&self, n: &BigInt) -> Result<LatticeTriangle> {
        LatticeTriangle::new(
            self.v[0].scale(n),
            self.v[1].scale(n),
            self.v[2].scale(n),
        )
    }

    /// Image under the integer matrix `[[a, b], [c, d]]`; fails when the
    /// matrix is singular on this triangle.
    pub fn transform(&self, m: [[i64; 2]; 2]) -> Result<LatticeTriangle> {
        let [[a, b], [c, d]] = m.map(|r| r.map(BigInt::from));
        let map = |p: &LatticePoint| LatticePoint {
            x: &a * &p.x + &b * &p.y,
            y: &c * &p.x + &d * &p.y,
        };
        LatticeTriangle::new(map(&self.v[0]), map(&self.v[1]), map(&self.v[2]))
    }

    /// The unimodular shear `(x, y) -> (x - k y, y)`.
    pub fn shear(&self, k: &BigInt) -> LatticeTriangle {
        let map = |p: &LatticePoint| LatticePoint {
            x: &p.x - k * &p.y,
            y: p.y.clone(),
        };
        LatticeTriangle {
            v: [map(&self.v[0]), map(&self.v[1]), map(&self.v[2])],
        }
    }
}

impl fmt::Display for LatticeTriangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.v[0], self.v[1], self.v[2])
    }
}
