//! Witness triangles for every achievable (condition, shape, perimeter) cell.
//!
//! Each family builds `O, A, B` from closed-form coordinates, then recomputes
//! the shape, lattice perimeter and centers from scratch. A family whose
//! output disagrees with what it promises returns [`Error::Verification`]
//! instead of a witness. Requests outside a family's range come back as
//! [`Error::ProvenImpossible`] when the exclusion filters settle them, and
//! [`Error::OutOfDomain`] otherwise.

use num_bigint::BigInt;
use num_traits::Pow;
use serde::Serialize;

use crate::centers::{center_report, CenterReport, Condition, RationalPoint};
use crate::error::{Error, Result};
use crate::feasibility::{exclusion_report, ExclusionReport};
use crate::lattice::{LatticePoint, LatticeTriangle, ShapeClass};

/// Upper limit on the `3^k` exponent and the shear parameter.
pub const SEARCH_CAP: u32 = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    #[serde(serialize_with = "serialize_triangle")]
    pub triangle: LatticeTriangle,
    #[serde(skip)]
    pub report: CenterReport,
    pub family: String,
}

fn serialize_triangle<S: serde::Serializer>(
    t: &LatticeTriangle,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(3))?;
    for v in t.vertices() {
        seq.serialize_element(&v.to_string())?;
    }
    seq.end()
}

#[derive(Clone, Copy, Debug)]
enum Center {
    F,
    G,
    H,
}

fn pt(x: impl Into<BigInt>, y: impl Into<BigInt>) -> LatticePoint {
    LatticePoint::new(x, y)
}

fn oab(a: LatticePoint, b: LatticePoint) -> Result<LatticeTriangle> {
    LatticeTriangle::new(LatticePoint::origin(), a, b)
}

fn check(
    t: &LatticeTriangle,
    condition: Condition,
    shape: ShapeClass,
    l: u64,
    family: &str,
) -> Result<CenterReport> {
    let report = center_report(t);
    let fail = |reason: String| Error::Verification {
        family: family.to_string(),
        reason,
    };
    if report.perimeter != BigInt::from(l) {
        return Err(fail(format!(
            "{t} has lattice perimeter {}, wanted {l}",
            report.perimeter
        )));
    }
    if report.shape != shape {
        return Err(fail(format!("{t} is {}, wanted {shape}", report.shape)));
    }
    if report.satisfies(condition) != Some(true) {
        return Err(fail(format!("{t} does not have {condition} on the lattice")));
    }
    Ok(report)
}

fn verified(
    t: LatticeTriangle,
    condition: Condition,
    shape: ShapeClass,
    l: u64,
    family: &str,
    stated: &[(Center, (i64, i64))],
) -> Result<Witness> {
    let report = check(&t, condition, shape, l, family)?;
    for &(which, (x, y)) in stated {
        let got = match which {
            Center::F => &report.circumcenter,
            Center::G => &report.centroid,
            Center::H => &report.orthocenter,
        };
        if *got != RationalPoint::from_lattice(&pt(x, y)) {
            return Err(Error::Verification {
                family: family.to_string(),
                reason: format!("{which:?} of {t} is {got}, expected ({x},{y})"),
            });
        }
    }
    Ok(Witness {
        triangle: t,
        report,
        family: family.to_string(),
    })
}

/// Rejects a request outside a family's range, citing exclusion
/// certificates when they exist.
fn reject(
    condition: Condition,
    shape: ShapeClass,
    l: u64,
    family: &'static str,
    constraint: &'static str,
) -> Error {
    if l >= 3 {
        if let ExclusionReport::ProvenImpossible(certificates) =
            exclusion_report(l, condition, shape)
        {
            return Error::ProvenImpossible {
                perimeter: l,
                certificates,
            };
        }
    }
    Error::OutOfDomain {
        family,
        constraint,
        value: l.to_string(),
    }
}

fn i(l: u64) -> i64 {
    i64::try_from(l).expect("perimeter fits in i64")
}

/// Multiplies every vertex by `n`.
pub fn scale(t: &LatticeTriangle, n: u64) -> LatticeTriangle {
    assert!(n >= 1, "scale factor must be positive");
    t.scale(&BigInt::from(n))
        .expect("scaling by a positive integer keeps a triangle non-degenerate")
}

pub fn acute_h(l: u64) -> Result<Witness> {
    let (c, s) = (Condition::H, ShapeClass::Acute);
    if l < 6 || l == 7 {
        return Err(reject(c, s, l, "acute-H", "perimeter must be 6 or at least 8"));
    }
    let n = i(l);
    if l % 2 == 0 {
        let h = n / 2;
        let t = oab(pt(h, 0), pt(1, h - 1))?;
        verified(t, c, s, l, "acute-H/even", &[(Center::H, (1, 1))])
    } else if l % 4 == 1 {
        let t = oab(pt((n + 1) / 2, 0), pt(2, (n - 3) / 2))?;
        verified(t, c, s, l, "acute-H/1mod4", &[(Center::H, (2, 2))])
    } else {
        let t = oab(pt((n + 3) / 2, 0), pt(6, 3 * (n - 9) / 2))?;
        verified(t, c, s, l, "acute-H/3mod4", &[(Center::H, (6, 2))])
    }
}

pub fn acute_f(l: u64) -> Result<Witness> {
    let (c, s) = (Condition::F, ShapeClass::Acute);
    if l % 2 == 1 || l < 8 || l == 10 {
        return Err(reject(
            c,
            s,
            l,
            "acute-F",
            "perimeter must be even and 8 or at least 12",
        ));
    }
    let explicit = |a: (i64, i64), b: (i64, i64), f: (i64, i64)| {
        let t = oab(pt(a.0, a.1), pt(b.0, b.1))?;
        verified(t, c, s, l, "acute-F/explicit", &[(Center::F, f)])
    };
    match l {
        8 => return explicit((4, 0), (3, 3), (2, 1)),
        14 => return explicit((8, 0), (3, 5), (4, 1)),
        16 => return explicit((8, 0), (1, 7), (4, 3)),
        _ => {}
    }
    let n = i(l);
    if l % 8 == 4 {
        let k = (n - 4) / 8;
        let t = oab(pt(4 * k + 2, 0), pt(4, 8 * k - 4))?;
        verified(t, c, s, l, "acute-F/4mod8", &[(Center::F, (2 * k + 1, 4 * k - 3))])
    } else if l % 8 == 6 {
        let k = (n - 6) / 8;
        let t = oab(pt(2 * k + 1, 1), pt(0, 6 * k + 4))?;
        verified(t, c, s, l, "acute-F/6mod8", &[(Center::F, (k - 1, 3 * k + 2))])
    } else {
        // l = 4k + 2 with k even, or l = 4k + 4 with k odd
        let k = if l % 8 == 2 { (n - 2) / 4 } else { (n - 4) / 4 };
        let t = oab(pt(2 * k + 2, 0), pt(4, 2 * k - 2))?;
        verified(t, c, s, l, "acute-F/0or2mod8", &[(Center::F, (k + 1, k - 3))])
    }
}

/// Smallest prime divisor of `n` congruent to 5 mod 6.
pub fn delta(n: u64) -> Option<u64> {
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            if p % 6 == 5 {
                return Some(p);
            }
            while m % p == 0 {
                m /= p;
            }
        }
        p += 1;
    }
    (m > 1 && m % 6 == 5).then_some(m)
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|p| p * p <= n).all(|p| n % p != 0)
}

/// `O, (z, 0), (x, y0 * 3^k)` for the least `k >= 1` that makes it acute.
fn model_triangle(l: u64, z: u64, x: u64, y0: u64, family: &str) -> Result<Witness> {
    for k in 1..=SEARCH_CAP {
        let y = BigInt::from(y0) * Pow::pow(BigInt::from(3u8), k);
        let t = oab(pt(z, 0), pt(x, y))?;
        if t.classify_shape() == ShapeClass::Acute {
            return verified(t, Condition::G, ShapeClass::Acute, l, family, &[]);
        }
    }
    Err(Error::Verification {
        family: family.to_string(),
        reason: format!("no k <= {SEARCH_CAP} makes the triangle acute"),
    })
}

pub fn acute_g(l: u64) -> Result<Witness> {
    let (c, s) = (Condition::G, ShapeClass::Acute);
    if l < 3 || l == 5 || l == 11 {
        return Err(reject(c, s, l, "acute-G", "perimeter must be at least 3, not 5 or 11"));
    }
    let base = || oab(pt(1, 2), pt(2, 1));
    if l == 3 {
        return verified(base()?, c, s, l, "acute-G/base", &[(Center::G, (1, 1))]);
    }
    if l % 3 == 0 {
        let t = scale(&base()?, l / 3);
        return verified(t, c, s, l, "acute-G/base-scaled", &[]);
    }
    match l % 6 {
        1 => model_triangle(l, l - 2, 4, l - 2, "acute-G/i"),
        4 => model_triangle(l, l / 2, 1, (l - 2) / 2, "acute-G/ii"),
        2 => {
            let w = acute_g(l / 2)?;
            let t = scale(&w.triangle, 2);
            verified(t, c, s, l, &format!("{}x2", w.family), &[])
        }
        _ => {
            if !is_prime(l) {
                let p = delta(l).expect("a number = 5 mod 6 has a prime factor = 5 mod 6");
                let w = model_triangle(l / p, l / p - 2, 4, l / p - 2, "acute-G/i")?;
                let t = scale(&w.triangle, p);
                return verified(t, c, s, l, &format!("acute-G/ix{p}"), &[]);
            }
            let (shift, x, tag) = match l % 18 {
                5 => (8, 7, "acute-G/iii"),
                11 => (14, 13, "acute-G/iv"),
                _ => (2, 1, "acute-G/v"),
            };
            let d = delta(l - shift).expect("(l - shift)/3 = 5 mod 6 has such a divisor");
            model_triangle(l, l - 1 - d, x, d, tag)
        }
    }
}

pub fn obtuse_h(l: u64) -> Result<Witness> {
    let (c, s) = (Condition::H, ShapeClass::Obtuse);
    if l < 3 {
        return Err(reject(c, s, l, "obtuse-H", "perimeter must be at least 3"));
    }
    let n = i(l);
    let t = oab(pt(1, 0), pt(2 - n, n - 2))?;
    verified(t, c, s, l, "obtuse-H", &[(Center::H, (2 - n, 1 - n))])
}

pub fn right_h(l: u64) -> Result<Witness> {
    let (c, s) = (Condition::H, ShapeClass::Right);
    if l < 3 {
        return Err(reject(c, s, l, "right-H", "perimeter must be at least 3"));
    }
    let t = oab(pt(l - 2, 0), pt(0, 1))?;
    verified(t, c, s, l, "right-H", &[(Center::H, (0, 0))])
}

pub fn obtuse_f(l: u64) -> Result<Witness> {
    let (c, s) = (Condition::F, ShapeClass::Obtuse);
    if l % 2 == 1 || l < 4 {
        return Err(reject(c, s, l, "obtuse-F", "perimeter must be even and at least 4"));
    }
    let n = i(l);
    let t = oab(pt(2, 0), pt(3 - n, n - 3))?;
    verified(t, c, s, l, "obtuse-F", &[(Center::F, (1, n - 2))])
}

pub fn right_f(l: u64) -> Result<Witness> {
    let (c, s) = (Condition::F, ShapeClass::Right);
    if l % 2 == 1 || l < 4 {
        return Err(reject(c, s, l, "right-F", "perimeter must be even and at least 4"));
    }
    let n = i(l);
    let t = oab(pt(1, 1), pt(3 - n, n - 3))?;
    verified(t, c, s, l, "right-F", &[(Center::F, ((4 - n) / 2, (n - 2) / 2))])
}

pub fn obtuse_g(l: u64) -> Result<Witness> {
    let (c, s) = (Condition::G, ShapeClass::Obtuse);
    if l < 3 || l == 5 || l == 11 {
        return Err(reject(c, s, l, "obtuse-G", "perimeter must be at least 3, not 5 or 11"));
    }
    if l == 3 {
        let t = oab(pt(1, 0), pt(-1, 3))?;
        return verified(t, c, s, l, "obtuse-G/base", &[(Center::G, (0, 1))]);
    }
    let acute = acute_g(l)?;
    for k in 1..=SEARCH_CAP {
        let t = acute.triangle.shear(&BigInt::from(k));
        if t.classify_shape() == ShapeClass::Obtuse {
            return verified(t, c, s, l, &format!("{} sheared k={k}", acute.family), &[]);
        }
    }
    Err(Error::Verification {
        family: "obtuse-G".to_string(),
        reason: format!("no shear k <= {SEARCH_CAP} makes {} obtuse", acute.triangle),
    })
}

pub fn right_g(l: u64) -> Result<Witness> {
    let (c, s) = (Condition::G, ShapeClass::Right);
    if l % 3 != 0 || l < 9 {
        return Err(reject(
            c,
            s,
            l,
            "right-G",
            "perimeter must be a multiple of 3 and at least 9",
        ));
    }
    let n = i(l - 6) / 3;
    let t = oab(pt(3 * n, 0), pt(0, 3))?;
    verified(t, c, s, l, "right-G", &[(Center::G, (n, 1))])
}

fn tripled(
    inner: Witness,
    condition: Condition,
    shape: ShapeClass,
    l: u64,
) -> Result<Witness> {
    let t = scale(&inner.triangle, 3);
    verified(t, condition, shape, l, &format!("{}x3", inner.family), &[])
}

pub fn gh(shape: ShapeClass, l: u64) -> Result<Witness> {
    let c = Condition::GH;
    if l % 3 != 0 || l < 9 {
        return Err(reject(
            c,
            shape,
            l,
            "GH",
            "perimeter must be a multiple of 3 and at least 9",
        ));
    }
    let explicit = |a: (i64, i64), b: (i64, i64), g: (i64, i64), h: (i64, i64)| {
        let t = oab(pt(a.0, a.1), pt(b.0, b.1))?;
        verified(t, c, shape, l, "acute-GH/explicit", &[(Center::G, g), (Center::H, h)])
    };
    match shape {
        ShapeClass::Acute => match l {
            9 => explicit((6, 3), (3, 6), (3, 3), (4, 4)),
            12 => explicit((6, 0), (3, 9), (3, 3), (3, 1)),
            15 => explicit((9, 0), (3, 9), (4, 3), (3, 2)),
            21 => explicit((15, 0), (3, 9), (6, 3), (3, 4)),
            _ => tripled(acute_h(l / 3)?, c, shape, l),
        },
        ShapeClass::Obtuse => tripled(obtuse_h(l / 3)?, c, shape, l),
        ShapeClass::Right => tripled(right_h(l / 3)?, c, shape, l),
    }
}

pub fn fgh(shape: ShapeClass, l: u64) -> Result<Witness> {
    let c = Condition::FGH;
    if l % 6 != 0 || l < 12 {
        return Err(reject(
            c,
            shape,
            l,
            "FGH",
            "perimeter must be a multiple of 6 and at least 12",
        ));
    }
    let explicit = |a: (i64, i64), b: (i64, i64), f: (i64, i64), g: (i64, i64), h: (i64, i64)| {
        let t = oab(pt(a.0, a.1), pt(b.0, b.1))?;
        let stated = [(Center::F, f), (Center::G, g), (Center::H, h)];
        verified(t, c, shape, l, "acute-FGH/explicit", &stated)
    };
    match shape {
        ShapeClass::Acute => match l {
            12 => explicit((6, 0), (3, 9), (3, 4), (3, 3), (3, 1)),
            18 => explicit((12, 6), (6, 12), (5, 5), (6, 6), (8, 8)),
            30 => explicit((18, 0), (6, 18), (9, 7), (8, 6), (6, 4)),
            _ => tripled(acute_f(l / 3)?, c, shape, l),
        },
        ShapeClass::Obtuse => tripled(obtuse_f(l / 3)?, c, shape, l),
        ShapeClass::Right => tripled(right_f(l / 3)?, c, shape, l),
    }
}

/// Dispatches to the family for a cell.
pub fn construct(condition: Condition, shape: ShapeClass, l: u64) -> Result<Witness> {
    use ShapeClass::*;
    match (condition, shape) {
        (Condition::H, Acute) => acute_h(l),
        (Condition::H, Obtuse) => obtuse_h(l),
        (Condition::H, Right) => right_h(l),
        (Condition::F, Acute) => acute_f(l),
        (Condition::F, Obtuse) => obtuse_f(l),
        (Condition::F, Right) => right_f(l),
        (Condition::G, Acute) => acute_g(l),
        (Condition::G, Obtuse) => obtuse_g(l),
        (Condition::G, Right) => right_g(l),
        (Condition::GH, s) => gh(s, l),
        (Condition::FGH, s) => fgh(s, l),
        (Condition::I, _) => Err(Error::OutOfDomain {
            family: "construct",
            constraint: "no construction is known for a lattice incenter",
            value: l.to_string(),
        }),
    }
}
