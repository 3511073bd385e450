//! Circumcenter, centroid and orthocenter as exact rational points.
//!
//! With the triangle translated so that `v0` is the origin and the other two
//! vertices are `A = (x1, y1)`, `B = (x2, y2)`:
//!
//! ```text
//! G = (A + B) / 3
//! H = (x1 x2 + y1 y2) / (x1 y2 - x2 y1) * (y2 - y1, x1 - x2)
//! F = (3G - H) / 2                      (Euler line: 2F + H = 3G)
//! ```
//!
//! The perpendicular-bisector route to `F` is only used as a post-check.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{lattice_length, LatticePoint, LatticeTriangle, ShapeClass};

/// A point with exact rational coordinates; `BigRational` keeps them reduced
/// with positive denominators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalPoint {
    pub x: BigRational,
    pub y: BigRational,
}

impl RationalPoint {
    pub fn new(x: BigRational, y: BigRational) -> Self {
        RationalPoint { x, y }
    }

    pub fn from_lattice(p: &LatticePoint) -> Self {
        RationalPoint {
            x: BigRational::from_integer(p.x.clone()),
            y: BigRational::from_integer(p.y.clone()),
        }
    }

    pub fn is_lattice(&self) -> bool {
        self.x.is_integer() && self.y.is_integer()
    }

    pub fn to_lattice(&self) -> Option<LatticePoint> {
        self.is_lattice()
            .then(|| LatticePoint::new(self.x.to_integer(), self.y.to_integer()))
    }

    pub fn distance_squared(&self, other: &RationalPoint) -> BigRational {
        let dx = &self.x - &other.x;
        let dy = &self.y - &other.y;
        &dx * &dx + &dy * &dy
    }

    pub fn distance_squared_to(&self, p: &LatticePoint) -> BigRational {
        self.distance_squared(&RationalPoint::from_lattice(p))
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// Which centers are required to be lattice points. `I` is the incenter,
/// which is not rational in general and is handled by [`crate::incenter`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Condition {
    F,
    G,
    H,
    GH,
    FGH,
    I,
}

impl Condition {
    pub const RATIONAL: [Condition; 5] = [
        Condition::F,
        Condition::G,
        Condition::H,
        Condition::GH,
        Condition::FGH,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Condition::F => "F",
            Condition::G => "G",
            Condition::H => "H",
            Condition::GH => "GH",
            Condition::FGH => "FGH",
            Condition::I => "I",
        }
    }

    pub fn needs_f(self) -> bool {
        matches!(self, Condition::F | Condition::FGH)
    }

    pub fn needs_g(self) -> bool {
        matches!(self, Condition::G | Condition::GH | Condition::FGH)
    }

    /// F lattice already forces H lattice, so `F` counts here too.
    pub fn needs_h(self) -> bool {
        matches!(
            self,
            Condition::H | Condition::F | Condition::GH | Condition::FGH
        )
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Condition {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_uppercase().as_str() {
            "F" => Ok(Condition::F),
            "G" => Ok(Condition::G),
            "H" => Ok(Condition::H),
            "GH" => Ok(Condition::GH),
            "FGH" => Ok(Condition::FGH),
            "I" => Ok(Condition::I),
            other => Err(format!("unknown condition `{other}` (F|G|H|GH|FGH|I)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CenterReport {
    pub circumcenter: RationalPoint,
    pub centroid: RationalPoint,
    pub orthocenter: RationalPoint,
    pub f_lattice: bool,
    pub g_lattice: bool,
    pub h_lattice: bool,
    pub shape: ShapeClass,
    pub perimeter: BigInt,
}

impl CenterReport {
    /// `None` for the incenter condition, which this report cannot decide.
    pub fn satisfies(&self, condition: Condition) -> Option<bool> {
        let (f, g, h) = (self.f_lattice, self.g_lattice, self.h_lattice);
        Some(match condition {
            Condition::F => f,
            Condition::G => g,
            Condition::H => h,
            Condition::GH => g && h,
            Condition::FGH => f && g && h,
            Condition::I => return None,
        })
    }
}

fn ratio(n: BigInt, d: BigInt) -> BigRational {
    BigRational::new(n, d)
}

pub fn centroid(t: &LatticeTriangle) -> RationalPoint {
    let [a, b, c] = t.vertices();
    let three = BigInt::from(3);
    RationalPoint {
        x: ratio(&a.x + &b.x + &c.x, three.clone()),
        y: ratio(&a.y + &b.y + &c.y, three),
    }
}

pub fn orthocenter(t: &LatticeTriangle) -> RationalPoint {
    let [v0, v1, v2] = t.vertices();
    let a = v1 - v0;
    let b = v2 - v0;
    let cross = a.cross(&b);
    // non-zero by construction of LatticeTriangle
    let k = ratio(a.dot(&b), cross);
    let h = RationalPoint {
        x: BigRational::from_integer(v0.x.clone()) + &k * BigRational::from_integer(&b.y - &a.y),
        y: BigRational::from_integer(v0.y.clone()) + &k * BigRational::from_integer(&a.x - &b.x),
    };
    for i in 0..3 {
        let v = RationalPoint::from_lattice(t.vertex(i));
        let opp = t.vertex(i + 1) - t.vertex(i + 2);
        let dot = (&h.x - &v.x) * BigRational::from_integer(opp.x)
            + (&h.y - &v.y) * BigRational::from_integer(opp.y);
        assert!(dot.is_zero(), "orthocenter off the altitude from vertex {i}");
    }
    h
}

pub fn circumcenter(t: &LatticeTriangle) -> RationalPoint {
    circumcenter_from(t, &orthocenter(t))
}

fn circumcenter_from(t: &LatticeTriangle, h: &RationalPoint) -> RationalPoint {
    let [a, b, c] = t.vertices();
    let half = ratio(BigInt::one(), BigInt::from(2));
    let f = RationalPoint {
        x: (BigRational::from_integer(&a.x + &b.x + &c.x) - &h.x) * &half,
        y: (BigRational::from_integer(&a.y + &b.y + &c.y) - &h.y) * &half,
    };
    let r0 = f.distance_squared_to(a);
    assert!(
        r0 == f.distance_squared_to(b) && r0 == f.distance_squared_to(c),
        "circumcenter is not equidistant from the vertices"
    );
    f
}

/// Circumcenter as the intersection of two perpendicular bisectors. Kept as an
/// independent check on the Euler-line route.
pub fn circumcenter_by_bisectors(t: &LatticeTriangle) -> RationalPoint {
    let [v0, v1, v2] = t.vertices();
    let a = v1 - v0;
    let b = v2 - v0;
    // Solve 2 a.X = |a|^2, 2 b.X = |b|^2 for X relative to v0.
    let det = BigInt::from(2) * a.cross(&b);
    let (na, nb) = (a.norm_squared(), b.norm_squared());
    let x = ratio(&na * &b.y - &nb * &a.y, det.clone());
    let y = ratio(&nb * &a.x - &na * &b.x, det);
    RationalPoint {
        x: x + BigRational::from_integer(v0.x.clone()),
        y: y + BigRational::from_integer(v0.y.clone()),
    }
}

pub fn center_report(t: &LatticeTriangle) -> CenterReport {
    let g = centroid(t);
    let h = orthocenter(t);
    let f = circumcenter_from(t, &h);
    CenterReport {
        f_lattice: f.is_lattice(),
        g_lattice: g.is_lattice(),
        h_lattice: h.is_lattice(),
        circumcenter: f,
        centroid: g,
        orthocenter: h,
        shape: t.classify_shape(),
        perimeter: t.lattice_perimeter(),
    }
}

/// For an acute triangle with a lattice orthocenter `H`, the lattice length
/// `m` of each segment `V H`. The angle at `V` then satisfies
/// `tan(theta) = l / m` with `l` the lattice length of the opposite side;
/// that identity is checked exactly before returning.
pub fn orthic_m_values(t: &LatticeTriangle) -> Result<[BigInt; 3]> {
    let h = orthocenter(t);
    let h = h
        .to_lattice()
        .ok_or_else(|| Error::OrthocenterNotLattice(h.to_string()))?;
    let opposite = t.opposite_lengths();
    let mut m = [BigInt::zero(), BigInt::zero(), BigInt::zero()];
    for i in 0..3 {
        let v = t.vertex(i);
        let e1 = t.vertex(i + 1) - v;
        let e2 = t.vertex(i + 2) - v;
        let dot = e1.dot(&e2);
        if !dot.is_positive() {
            return Err(Error::NotAcute(i));
        }
        let mi = lattice_length(v, &h);
        // tan(theta) = |cross| / dot must equal l / m
        let cross = e1.cross(&e2).abs();
        assert_eq!(&cross * &mi, &opposite[i] * &dot, "tan identity fails at vertex {i}");
        m[i] = mi;
    }
    Ok(m)
}

/// `true` when `n` divides both coordinates of `p`.
pub fn divides_point(n: &BigInt, p: &LatticePoint) -> bool {
    p.x.is_multiple_of(n) && p.y.is_multiple_of(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tri(c: [(i64, i64); 3]) -> LatticeTriangle {
        LatticeTriangle::from_coords(c).unwrap()
    }

    fn lp(x: i64, y: i64) -> RationalPoint {
        RationalPoint::from_lattice(&LatticePoint::new(x, y))
    }

    fn rp(x: (i64, i64), y: (i64, i64)) -> RationalPoint {
        RationalPoint::new(
            ratio(x.0.into(), x.1.into()),
            ratio(y.0.into(), y.1.into()),
        )
    }

    #[test]
    fn centroid_examples() {
        assert_eq!(centroid(&tri([(0, 0), (9, 3), (0, 6)])), lp(3, 3));
        assert_eq!(centroid(&tri([(0, 0), (1, 2), (2, 1)])), lp(1, 1));
        assert_eq!(centroid(&tri([(0, 0), (3, 0), (0, 3)])), lp(1, 1));
    }

    #[test]
    fn orthocenter_examples() {
        assert_eq!(orthocenter(&tri([(0, 0), (9, 3), (0, 6)])), lp(1, 3));
        assert_eq!(orthocenter(&tri([(0, 0), (3, 0), (1, 2)])), lp(1, 1));
        assert_eq!(orthocenter(&tri([(0, 0), (6, 3), (3, 6)])), lp(4, 4));
        // vertex order and translation do not matter
        assert_eq!(orthocenter(&tri([(10, 6), (1, 3), (1, 9)])), lp(2, 6));
    }

    #[test]
    fn circumcenter_examples() {
        assert_eq!(circumcenter(&tri([(0, 0), (9, 3), (0, 6)])), lp(4, 3));
        assert_eq!(circumcenter(&tri([(0, 0), (6, 0), (4, 4)])), lp(3, 1));
        assert_eq!(circumcenter(&tri([(0, 0), (4, 0), (3, 3)])), lp(2, 1));
    }

    #[test]
    fn bisector_route_agrees() {
        for c in [
            [(0, 0), (9, 3), (0, 6)],
            [(0, 0), (3, 0), (1, 2)],
            [(2, -7), (5, 11), (-4, 1)],
        ] {
            let t = tri(c);
            assert_eq!(circumcenter(&t), circumcenter_by_bisectors(&t));
        }
    }

    #[test]
    fn report_flags() {
        let r = center_report(&tri([(0, 0), (9, 3), (0, 6)]));
        assert!(r.f_lattice && r.g_lattice && r.h_lattice);
        assert_eq!(r.shape, ShapeClass::Acute);
        assert_eq!(r.perimeter, 12.into());

        let r = center_report(&tri([(0, 0), (3, 0), (1, 2)]));
        assert!(r.h_lattice && !r.g_lattice);
        assert_eq!(r.centroid, rp((4, 3), (2, 3)));

        let r = center_report(&tri([(0, 0), (1, 0), (0, 1)]));
        assert!(r.h_lattice);
        assert_eq!(r.orthocenter, lp(0, 0));
        assert_eq!(r.satisfies(Condition::I), None);
        assert_eq!(r.satisfies(Condition::GH), Some(false));
    }

    #[test]
    fn orthic_m_examples() {
        let t = tri([(0, 0), (9, 3), (0, 6)]);
        let m = orthic_m_values(&t).unwrap();
        // H = (1,3): |OH| has lattice length 1, and tan(angle at O) = 3 / 1
        assert_eq!(m[0], 1.into());
        assert_eq!(t.opposite_lengths()[0], 3.into());

        assert_eq!(
            orthic_m_values(&tri([(0, 0), (3, 0), (0, 1)])),
            Err(Error::NotAcute(0))
        );
        assert!(matches!(
            orthic_m_values(&tri([(0, 0), (2, 0), (1, 2)])),
            Err(Error::OrthocenterNotLattice(_))
        ));
    }
}
