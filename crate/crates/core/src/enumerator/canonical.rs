//! Canonical representatives of triangles up to translation, the eight
//! lattice symmetries fixing the origin, and vertex order.
//!
//! The key is the lexicographically least sorted vertex triple among the
//! eight images, each translated so its least vertex is the origin. All of
//! these maps are Euclidean isometries that preserve the lattice, so shape,
//! lattice lengths and every center predicate are constant on an orbit.

use num_bigint::BigInt;

use crate::lattice::{LatticePoint, LatticeTriangle};

pub type SmallKey = [(i64, i64); 3];

/// The eight maps `(x, y) -> (+-x, +-y)` and `(+-y, +-x)`.
pub const D4: [fn((i64, i64)) -> (i64, i64); 8] = [
    |(x, y)| (x, y),
    |(x, y)| (-x, y),
    |(x, y)| (x, -y),
    |(x, y)| (-x, -y),
    |(x, y)| (y, x),
    |(x, y)| (-y, x),
    |(x, y)| (y, -x),
    |(x, y)| (-y, -x),
];

/// Sorts the vertices and translates the least one to the origin.
pub fn normalize_small(mut v: SmallKey) -> SmallKey {
    v.sort_unstable();
    let o = v[0];
    v.map(|(x, y)| (x - o.0, y - o.1))
}

pub fn canonical_key_small(v: &SmallKey) -> SmallKey {
    D4.iter()
        .map(|g| normalize_small(v.map(g)))
        .min()
        .expect("eight images")
}

/// Whether `v` is already its own canonical key.
pub fn is_canonical_small(v: &SmallKey) -> bool {
    let own = normalize_small(*v);
    own == *v && D4[1..].iter().all(|g| normalize_small(v.map(g)) >= own)
}

/// Canonical key of an arbitrary-precision triangle.
pub fn canonical_key(t: &LatticeTriangle) -> [LatticePoint; 3] {
    let maps: [fn(&BigInt, &BigInt) -> (BigInt, BigInt); 8] = [
        |x, y| (x.clone(), y.clone()),
        |x, y| (-x, y.clone()),
        |x, y| (x.clone(), -y),
        |x, y| (-x, -y),
        |x, y| (y.clone(), x.clone()),
        |x, y| (-y, x.clone()),
        |x, y| (y.clone(), -x),
        |x, y| (-y, -x),
    ];
    maps.iter()
        .map(|g| {
            let mut v = t.vertices().clone().map(|p| {
                let (x, y) = g(&p.x, &p.y);
                LatticePoint::new(x, y)
            });
            v.sort();
            let o = v[0].clone();
            v.map(|p| &p - &o)
        })
        .min()
        .expect("eight images")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn key(c: [(i64, i64); 3]) -> [LatticePoint; 3] {
        canonical_key(&LatticeTriangle::from_coords(c).unwrap())
    }

    #[test]
    fn examples() {
        assert_eq!(key([(0, 0), (1, 0), (0, 1)]), key([(0, 0), (0, 1), (1, 0)]));
        assert_eq!(key([(0, 0), (9, 3), (0, 6)]), key([(0, 0), (-3, 9), (-6, 0)]));
        assert_eq!(key([(0, 0), (1, 0), (0, 2)]), key([(0, 0), (2, 0), (0, 1)]));
        assert_ne!(key([(0, 0), (1, 0), (0, 2)]), key([(0, 0), (1, 0), (0, 3)]));
    }

    #[test]
    fn small_and_big_agree() {
        let v = [(5, -2), (1, 7), (-3, 0)];
        let small = canonical_key_small(&v);
        let big = key(v);
        for (s, b) in small.iter().zip(&big) {
            assert_eq!(LatticePoint::new(s.0, s.1), *b);
        }
        assert!(is_canonical_small(&small));
        assert!(!is_canonical_small(&normalize_small(v)) || normalize_small(v) == small);
    }
}
