use lattice_centers::enumerator::SearchConfig;
use lattice_centers::incenter::{
    formula_agrees, incenter_report, incenter_scan, is_incenter, lattice_incenter, lattice_incenter_small,
};
use lattice_centers::{LatticePoint, LatticeTriangle, ShapeClass};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn tri(c: [(i64, i64); 3]) -> LatticeTriangle {
    LatticeTriangle::from_coords(c).unwrap()
}

#[test]
fn scan_witnesses_replay_and_match_formula() {
    let scan = incenter_scan(&SearchConfig::new(20, 20).with_shards(2)).unwrap();
    assert!(!scan.rows.is_empty());
    assert!(scan.rows.iter().any(|r| r.irrational_witness.is_some()));
    for row in &scan.rows {
        let t = tri(row.witness);
        let i = LatticePoint::new(row.incenter.0, row.incenter.1);
        assert_eq!(lattice_incenter(&t), Some(i.clone()));
        assert!(formula_agrees(&t, &i));
        assert_eq!(t.classify_shape(), row.shape);
        assert_eq!(t.lattice_perimeter(), BigInt::from(row.perimeter));
    }
    let single = incenter_scan(&SearchConfig::new(20, 20)).unwrap();
    assert_eq!(single, scan);
}

#[test]
fn three_four_five_family() {
    let scan = incenter_scan(&SearchConfig::new(24, 48)).unwrap();
    let right = scan.achieved(ShapeClass::Right);
    for k in 1..=6i64 {
        let t = tri([(0, 0), (4 * k, 0), (4 * k, 3 * k)]);
        assert_eq!(t.lattice_perimeter(), BigInt::from(8 * k));
        assert_eq!(lattice_incenter(&t), Some(LatticePoint::new(3 * k, k)));
        assert!(right.contains(&(8 * k as u64)), "{k}");
    }
}

#[test]
fn scaling_and_touch_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let mut found = 0;
    while found < 200 {
        let v = [(0, 0), (rng.gen_range(-25..=25), rng.gen_range(-25..=25)), (rng.gen_range(-25..=25), rng.gen_range(-25..=25))];
        let Ok(t) = LatticeTriangle::from_coords(v) else { continue };
        let exact = lattice_incenter(&t);
        assert_eq!(exact.as_ref().map(|p| (i64::try_from(&p.x).unwrap(), i64::try_from(&p.y).unwrap())), lattice_incenter_small(&v));
        let Some(i) = exact else { continue };
        found += 1;
        let r = incenter_report(&t, &i).unwrap();
        let vs = t.vertices();
        for (k, foot) in r.touch_points.iter().enumerate() {
            let (a, b) = (&vs[k], &vs[(k + 1) % 3]);
            let dx = BigRational::from_integer(&b.x - &a.x);
            let dy = BigRational::from_integer(&b.y - &a.y);
            let ix = BigRational::from_integer(i.x.clone());
            let iy = BigRational::from_integer(i.y.clone());
            assert!(((&foot.x - &ix) * &dx + (&foot.y - &iy) * &dy).is_zero());
            let s = if dx.is_zero() {
                (&foot.y - BigRational::from_integer(a.y.clone())) / &dy
            } else {
                (&foot.x - BigRational::from_integer(a.x.clone())) / &dx
            };
            assert!(s >= BigRational::zero() && s <= BigRational::from_integer(1.into()));
        }
        for n in 2..=4 {
            let scaled = t.scale(&BigInt::from(n)).unwrap();
            assert_eq!(lattice_incenter(&scaled), Some(i.scale(&BigInt::from(n))));
        }
    }
}

#[test]
fn uniqueness_in_full_scans() {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    for _ in 0..3000 {
        let v = std::array::from_fn(|_| (rng.gen_range(-12..=12), rng.gen_range(-12..=12)));
        let Ok(t) = LatticeTriangle::from_coords(v) else { continue };
        let mut hits = 0;
        for x in -12..=12 {
            for y in -12..=12 {
                hits += is_incenter(&t, &LatticePoint::new(x, y)) as u32;
            }
        }
        assert!(hits <= 1);
        assert_eq!(hits == 1, lattice_incenter(&t).is_some());
    }
}
