//! Lattice incenters, decided without square roots.
//!
//! The incenter is the interior point equidistant from the three side lines.
//! Writing side `i` as `n_i . X + c_i = 0` with integer `n_i`, `c_i`, a point
//! `P` is equidistant from sides `i` and `j` exactly when
//! `(n_i . P + c_i)^2 |n_j|^2 = (n_j . P + c_j)^2 |n_i|^2`, an identity in
//! integers. Candidate points come from the triangle's interior, narrowed by
//! a floating-point estimate when the interior is large.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use std::collections::BTreeMap;

use serde::Serialize;

use crate::centers::RationalPoint;
use crate::enumerator::canonical::SmallKey;
use crate::enumerator::{fold_orbits, SearchConfig};
use crate::error::{Error, Result};
use crate::lattice::{LatticePoint, LatticeTriangle, ShapeClass};

/// Interiors with at most this many bounding-box points are scanned in full.
const FULL_SCAN_POINTS: u64 = 256;

/// The line through `p` and `q`, as `(n, c)` with `n . X + c = 0`.
fn line(p: &LatticePoint, q: &LatticePoint) -> (LatticePoint, BigInt) {
    let n = LatticePoint::new(-(&q.y - &p.y), &q.x - &p.x);
    let c = -n.dot(p);
    (n, c)
}

/// Side lines in the order `v0v1`, `v1v2`, `v2v0`, each paired with the
/// vertex it does not pass through.
fn side_lines(t: &LatticeTriangle) -> [(LatticePoint, BigInt, &LatticePoint); 3] {
    let v = t.vertices();
    [0, 1, 2].map(|i| {
        let (n, c) = line(&v[i], &v[(i + 1) % 3]);
        (n, c, &v[(i + 2) % 3])
    })
}

fn eval(n: &LatticePoint, c: &BigInt, p: &LatticePoint) -> BigInt {
    n.dot(p) + c
}

/// Exact test that `p` is the incenter of `t`.
pub fn is_incenter(t: &LatticeTriangle, p: &LatticePoint) -> bool {
    let sides = side_lines(t);
    let mut values = Vec::with_capacity(3);
    for (n, c, opposite) in &sides {
        let e = eval(n, c, p);
        if e.is_zero() || e.sign() != eval(n, c, opposite).sign() {
            return false;
        }
        values.push((e, n.norm_squared()));
    }
    let (e0, m0) = &values[0];
    values[1..]
        .iter()
        .all(|(e, m)| e0 * e0 * m == e * e * m0)
}

/// Floating-point incenter `(a A + b B + c C) / (a + b + c)`.
pub fn approximate_incenter(t: &LatticeTriangle) -> (f64, f64) {
    let v = t.vertices();
    let f = |p: &LatticePoint| (p.x.to_f64().unwrap_or(f64::NAN), p.y.to_f64().unwrap_or(f64::NAN));
    let p = [f(&v[0]), f(&v[1]), f(&v[2])];
    let len = |i: usize, j: usize| ((p[i].0 - p[j].0).powi(2) + (p[i].1 - p[j].1).powi(2)).sqrt();
    let w = [len(1, 2), len(2, 0), len(0, 1)];
    let s = w[0] + w[1] + w[2];
    (
        (w[0] * p[0].0 + w[1] * p[1].0 + w[2] * p[2].0) / s,
        (w[0] * p[0].1 + w[1] * p[1].1 + w[2] * p[2].1) / s,
    )
}

/// The incenter of `t` if it is a lattice point.
pub fn lattice_incenter(t: &LatticeTriangle) -> Option<LatticePoint> {
    let v = t.vertices();
    let min_x = v.iter().map(|p| &p.x).min().expect("three vertices");
    let max_x = v.iter().map(|p| &p.x).max().expect("three vertices");
    let min_y = v.iter().map(|p| &p.y).min().expect("three vertices");
    let max_y = v.iter().map(|p| &p.y).max().expect("three vertices");
    let points = (max_x - min_x + 1u8) * (max_y - min_y + 1u8);
    if points <= BigInt::from(FULL_SCAN_POINTS) {
        let mut found = None;
        let mut x = min_x.clone();
        while &x <= max_x {
            let mut y = min_y.clone();
            while &y <= max_y {
                let p = LatticePoint::new(x.clone(), y.clone());
                if is_incenter(t, &p) {
                    assert!(found.is_none(), "two lattice points pass the incenter test");
                    found = Some(p);
                }
                y += 1;
            }
            x += 1;
        }
        return found;
    }
    let (ix, iy) = approximate_incenter(t);
    let (cx, cy) = (BigInt::from(ix.round() as i64), BigInt::from(iy.round() as i64));
    for dx in -2..=2 {
        for dy in -2..=2 {
            let p = LatticePoint::new(&cx + dx, &cy + dy);
            if is_incenter(t, &p) {
                return Some(p);
            }
        }
    }
    None
}

/// Incenter test on small coordinates, for search loops. Uses the float
/// estimate to pick one candidate, then decides it exactly.
pub fn lattice_incenter_small(v: &[(i64, i64); 3]) -> Option<(i64, i64)> {
    let f = v.map(|(x, y)| (x as f64, y as f64));
    let len = |i: usize, j: usize| ((f[i].0 - f[j].0).powi(2) + (f[i].1 - f[j].1).powi(2)).sqrt();
    let w = [len(1, 2), len(2, 0), len(0, 1)];
    let s = w[0] + w[1] + w[2];
    let ix = (w[0] * f[0].0 + w[1] * f[1].0 + w[2] * f[2].0) / s;
    let iy = (w[0] * f[0].1 + w[1] * f[1].1 + w[2] * f[2].1) / s;
    let (rx, ry) = (ix.round(), iy.round());
    if (ix - rx).abs() > 1e-6 || (iy - ry).abs() > 1e-6 {
        return None;
    }
    let p = (rx as i64, ry as i64);
    let mut first: Option<(i128, i128)> = None;
    for i in 0..3 {
        let (a, b, opp) = (v[i], v[(i + 1) % 3], v[(i + 2) % 3]);
        let n = (-((b.1 - a.1) as i128), (b.0 - a.0) as i128);
        let c = -(n.0 * a.0 as i128 + n.1 * a.1 as i128);
        let e = n.0 * p.0 as i128 + n.1 * p.1 as i128 + c;
        let eo = n.0 * opp.0 as i128 + n.1 * opp.1 as i128 + c;
        if e == 0 || e.signum() != eo.signum() {
            return None;
        }
        let m = n.0 * n.0 + n.1 * n.1;
        match first {
            None => first = Some((e, m)),
            Some((e0, m0)) => {
                if e0 * e0 * m != e * e * m0 {
                    return None;
                }
            }
        }
    }
    Some(p)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncenterReport {
    pub incenter: LatticePoint,
    pub inradius_squared: BigRational,
    /// Feet of the perpendiculars on sides `v0v1`, `v1v2`, `v2v0`.
    pub touch_points: [RationalPoint; 3],
    pub touch_lattice: [bool; 3],
}

impl IncenterReport {
    pub fn inradius_is_rational(&self) -> bool {
        is_rational_square(&self.inradius_squared)
    }
}

fn is_square(n: &BigInt) -> bool {
    !n.is_negative() && {
        let r = n.sqrt();
        &r * &r == *n
    }
}

/// Whether a non-negative rational is the square of a rational.
pub fn is_rational_square(q: &BigRational) -> bool {
    is_square(q.numer()) && is_square(q.denom())
}

pub fn incenter_report(t: &LatticeTriangle, incenter: &LatticePoint) -> Result<IncenterReport> {
    if !is_incenter(t, incenter) {
        return Err(Error::NotIncenter(incenter.to_string()));
    }
    let i = RationalPoint::from_lattice(incenter);
    let sides = side_lines(t);
    let mut r2 = None;
    let touch_points = sides.clone().map(|(n, c, _)| {
        let e = eval(&n, &c, incenter);
        let m = n.norm_squared();
        let k = BigRational::new(e.clone(), m.clone());
        let foot = RationalPoint::new(
            &i.x - &k * BigRational::from_integer(n.x.clone()),
            &i.y - &k * BigRational::from_integer(n.y.clone()),
        );
        let d = BigRational::new(&e * &e, m);
        match &r2 {
            None => r2 = Some(d),
            Some(r) => assert_eq!(*r, d, "equidistance already checked"),
        }
        foot
    });
    let inradius_squared = r2.expect("three sides");
    for (f, (n, c, _)) in touch_points.iter().zip(&sides) {
        debug_assert!(
            (BigRational::from_integer(n.x.clone()) * &f.x + BigRational::from_integer(n.y.clone()) * &f.y
                + BigRational::from_integer(c.clone()))
            .is_zero()
        );
        debug_assert_eq!(i.distance_squared(f), inradius_squared);
    }
    let touch_lattice = touch_points.clone().map(|p| p.is_lattice());
    Ok(IncenterReport {
        incenter: incenter.clone(),
        inradius_squared,
        touch_points,
        touch_lattice,
    })
}

const FIXED_BITS: u32 = 80;

/// Evaluates `(a A + b B + c C) / (a + b + c)` with side lengths in 80-bit
/// fixed point and checks that it lies within `1e-15` of `incenter` in each
/// coordinate.
pub fn formula_agrees(t: &LatticeTriangle, incenter: &LatticePoint) -> bool {
    let v = t.vertices();
    let fixed_sqrt = |n: BigInt| (n << (2 * FIXED_BITS)).sqrt();
    let w = [
        fixed_sqrt((&v[1] - &v[2]).norm_squared()),
        fixed_sqrt((&v[2] - &v[0]).norm_squared()),
        fixed_sqrt((&v[0] - &v[1]).norm_squared()),
    ];
    let total: BigInt = w.iter().sum();
    let coordinate = |get: fn(&LatticePoint) -> &BigInt| {
        let num: BigInt = w.iter().zip(v).map(|(wi, p)| wi * get(p)).sum();
        let diff = (num - get(incenter) * &total).abs();
        // |diff| / total < 1e-15
        diff * BigInt::from(10u64.pow(15)) < total
    };
    coordinate(|p| &p.x) && coordinate(|p| &p.y)
}

/// One observed (shape, perimeter) cell of an incenter scan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanRow {
    pub shape: ShapeClass,
    pub perimeter: u64,
    /// Orbits in the box with a lattice incenter.
    pub count: u64,
    pub witness: SmallKey,
    pub incenter: (i64, i64),
    pub inradius_squared: String,
    /// Least witness whose inradius is irrational, if any.
    pub irrational_witness: Option<SmallKey>,
}

/// Lattice-incenter triangles found by search. Absence of a cell says
/// nothing about impossibility.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IncenterScan {
    pub box_radius: i64,
    pub l_max: u64,
    pub rows: Vec<ScanRow>,
}

#[derive(Default)]
struct ScanCell {
    count: u64,
    first: Option<(SmallKey, (i64, i64))>,
    irrational: Option<SmallKey>,
}

fn small_inradius_squared(v: &SmallKey, i: (i64, i64)) -> (i128, i128) {
    let (a, b) = (v[0], v[1]);
    let n = (-((b.1 - a.1) as i128), (b.0 - a.0) as i128);
    let e = n.0 * (i.0 - a.0) as i128 + n.1 * (i.1 - a.1) as i128;
    (e * e, n.0 * n.0 + n.1 * n.1)
}

pub fn incenter_scan(config: &SearchConfig) -> Result<IncenterScan> {
    config.validate()?;
    let shapes = config.normalized().shapes;
    let cells = fold_orbits(
        config.box_radius,
        config.l_max,
        config.shard_count,
        BTreeMap::<(ShapeClass, u64), ScanCell>::new,
        |acc, t| {
            let Some(i) = t.incenter() else { return };
            let shape = t.shape();
            if !shapes.contains(&shape) {
                return;
            }
            let cell = acc.entry((shape, t.perimeter as u64)).or_default();
            cell.count += 1;
            if cell.first.is_none() {
                cell.first = Some((t.v, i));
            }
            if cell.irrational.is_none() {
                let (num, den) = small_inradius_squared(&t.v, i);
                let r2 = BigRational::new(num.into(), den.into());
                if !is_rational_square(&r2) {
                    cell.irrational = Some(t.v);
                }
            }
        },
        |mut a, b| {
            for (k, c) in b {
                let e = a.entry(k).or_default();
                e.count += c.count;
                e.first = match (e.first, c.first) {
                    (Some(x), Some(y)) => Some(x.min(y)),
                    (x, y) => x.or(y),
                };
                e.irrational = match (e.irrational, c.irrational) {
                    (Some(x), Some(y)) => Some(x.min(y)),
                    (x, y) => x.or(y),
                };
            }
            a
        },
    );
    let mut rows = Vec::new();
    for ((shape, perimeter), c) in cells {
        let (witness, i) = c.first.expect("a counted cell has a witness");
        let t = LatticeTriangle::from_coords(witness)?;
        let incenter = LatticePoint::new(i.0, i.1);
        let report = incenter_report(&t, &incenter)?;
        assert_eq!(lattice_incenter(&t), Some(incenter), "scan witness does not replay");
        rows.push(ScanRow {
            shape,
            perimeter,
            count: c.count,
            witness,
            incenter: i,
            inradius_squared: report.inradius_squared.to_string(),
            irrational_witness: c.irrational,
        });
    }
    Ok(IncenterScan {
        box_radius: config.box_radius,
        l_max: config.l_max,
        rows,
    })
}

fn key_string(v: &SmallKey) -> String {
    v.iter()
        .map(|(x, y)| format!("({x},{y})"))
        .collect::<Vec<_>>()
        .join(" ")
}

impl IncenterScan {
    /// CSV with columns `shape,perimeter,witness_vertices,inradius_squared`,
    /// preceded by a comment line stating the search bound.
    pub fn to_csv(&self) -> String {
        let mut out = format!(
            "# empirical: box radius {}, lattice perimeter <= {}; a missing row is not evidence of impossibility\n",
            self.box_radius, self.l_max
        );
        out.push_str("shape,perimeter,witness_vertices,inradius_squared\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},\"{}\",{}\n",
                r.shape,
                r.perimeter,
                key_string(&r.witness),
                r.inradius_squared
            ));
        }
        out
    }

    /// Observed perimeters per shape.
    pub fn achieved(&self, shape: ShapeClass) -> Vec<u64> {
        self.rows
            .iter()
            .filter(|r| r.shape == shape)
            .map(|r| r.perimeter)
            .collect()
    }
}
