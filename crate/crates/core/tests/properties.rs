//! Randomized identities over lattice triangles, checked exactly.

use lattice_centers::centers::{
    center_report, centroid, circumcenter, circumcenter_by_bisectors, orthic_m_values, orthocenter,
};
use lattice_centers::enumerator::fold_orbits;
use lattice_centers::{LatticeTriangle, ShapeClass};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SAMPLES: usize = 10_000;

fn random_triangles(seed: u64, radius: i64, count: usize) -> Vec<LatticeTriangle> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let v = std::array::from_fn(|_| (rng.gen_range(-radius..=radius), rng.gen_range(-radius..=radius)));
        if let Ok(t) = LatticeTriangle::from_coords(v) {
            out.push(t);
        }
    }
    out
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

#[test]
fn euler_line_relation() {
    for t in random_triangles(1, 60, SAMPLES) {
        let (f, g, h) = (circumcenter(&t), centroid(&t), orthocenter(&t));
        assert_eq!(&f.x * q(2) + &h.x, &g.x * q(3), "{t}");
        assert_eq!(&f.y * q(2) + &h.y, &g.y * q(3), "{t}");
        assert_eq!(f, circumcenter_by_bisectors(&t));
    }
}

/// Interior points by testing every point of the bounding box against the
/// three edge functions.
fn interior_count(t: &LatticeTriangle) -> i64 {
    let v: Vec<(i64, i64)> = t
        .vertices()
        .iter()
        .map(|p| (p.x.clone().try_into().unwrap(), p.y.clone().try_into().unwrap()))
        .collect();
    let edge = |a: (i64, i64), b: (i64, i64), p: (i64, i64)| (b.0 - a.0) * (p.1 - a.1) - (b.1 - a.1) * (p.0 - a.0);
    let orient = edge(v[0], v[1], v[2]).signum();
    let (x0, x1) = (v.iter().map(|p| p.0).min().unwrap(), v.iter().map(|p| p.0).max().unwrap());
    let (y0, y1) = (v.iter().map(|p| p.1).min().unwrap(), v.iter().map(|p| p.1).max().unwrap());
    let mut n = 0;
    for x in x0..=x1 {
        for y in y0..=y1 {
            let p = (x, y);
            if (0..3).all(|i| edge(v[i], v[(i + 1) % 3], p).signum() == orient) {
                n += 1;
            }
        }
    }
    n
}

#[test]
fn pick_genus_matches_direct_count() {
    for t in random_triangles(2, 15, SAMPLES) {
        assert_eq!(t.genus(), BigInt::from(interior_count(&t)), "{t}");
    }
}

#[test]
fn gcd_lemma() {
    for t in random_triangles(3, 60, SAMPLES) {
        let [a, b, c] = t.side_lengths();
        let all = a.gcd(&b).gcd(&c);
        assert_eq!(a.gcd(&b), all);
        assert_eq!(a.gcd(&c), all);
        assert_eq!(b.gcd(&c), all);
    }
}

fn check_f_consequences(t: &LatticeTriangle) -> bool {
    let r = center_report(t);
    if !r.f_lattice {
        return false;
    }
    assert!(r.h_lattice, "{t}");
    assert!(r.perimeter.is_even(), "{t}");
    assert!(t.twice_area().is_even(), "{t}");
    true
}

fn check_gh_consequences(t: &LatticeTriangle) -> bool {
    let r = center_report(t);
    if !(r.g_lattice && r.h_lattice) {
        return false;
    }
    for l in t.side_lengths() {
        assert!((l % 3u8) == BigInt::from(0), "{t}");
    }
    true
}

#[test]
fn lattice_circumcenter_consequences() {
    let mut seen = 0;
    for t in random_triangles(4, 60, SAMPLES) {
        seen += check_f_consequences(&t) as usize;
    }
    // every F-lattice orbit of small perimeter
    seen += fold_orbits(
        12,
        40,
        1,
        || 0usize,
        |n, s| {
            if s.circumcenter_lattice() {
                *n += check_f_consequences(&s.to_triangle()) as usize;
            }
        },
        |a, b| a + b,
    );
    assert!(seen > 100, "only {seen} F-lattice triangles examined");
}

#[test]
fn centroid_and_orthocenter_force_multiples_of_three() {
    let mut seen = 0;
    for t in random_triangles(5, 60, SAMPLES) {
        seen += check_gh_consequences(&t) as usize;
    }
    seen += fold_orbits(
        12,
        45,
        1,
        || 0usize,
        |n, s| {
            if s.centroid_lattice() && s.orthocenter().is_some() {
                *n += check_gh_consequences(&s.to_triangle()) as usize;
            }
        },
        |a, b| a + b,
    );
    assert!(seen > 20, "only {seen} G,H-lattice triangles examined");
}

#[test]
fn angle_tangents_at_lattice_orthocenter() {
    let mut seen = 0;
    for t in random_triangles(6, 30, 50 * SAMPLES) {
        let r = center_report(&t);
        if r.shape != ShapeClass::Acute || !r.h_lattice {
            continue;
        }
        // orthic_m_values checks |cross| m = l dot at each vertex internally
        let m = orthic_m_values(&t).unwrap();
        assert!(m.iter().all(|v| v > &BigInt::from(0)));
        seen += 1;
    }
    assert!(seen > 50, "only {seen} acute H-lattice triangles examined");
}
