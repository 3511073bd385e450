use std::collections::HashSet;

use lattice_centers::centers::{center_report, Condition};
use lattice_centers::enumerator::atlas::AtlasDocument;
use lattice_centers::enumerator::canonical::{canonical_key, canonical_key_small, normalize_small, D4};
use lattice_centers::enumerator::table::{compare_atlas, verify_results_table, Verdict};
use lattice_centers::enumerator::{
    build_atlas, enumerate, fold_orbits, run_search, CellStatus, SearchConfig, SmallTriangle,
};
use lattice_centers::{LatticeTriangle, ShapeClass};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn results_table_matches_at_24() {
    let report = verify_results_table(24, 40, 2).unwrap();
    assert_eq!(report.rows.len(), 15);
    for row in &report.rows {
        assert_eq!(row.verdict, Verdict::Match, "{:?}/{:?}: {:?}", row.condition, row.shape, row.perimeters);
    }
}

#[test]
fn rows_at_30() {
    let mut config = SearchConfig::new(40, 30);
    config.conditions = vec![Condition::H, Condition::F, Condition::FGH];
    let atlas = enumerate(&config).unwrap();
    let witnessed = |c, s| -> Vec<u64> {
        (3..=30)
            .filter(|&l| atlas.status(c, s, l).unwrap().is_witness())
            .collect()
    };
    let h: Vec<u64> = std::iter::once(6).chain(8..=30).collect();
    assert_eq!(witnessed(Condition::H, ShapeClass::Acute), h);
    let f: Vec<u64> = std::iter::once(8).chain((12..=30).step_by(2)).collect();
    assert_eq!(witnessed(Condition::F, ShapeClass::Acute), f);
    for s in ShapeClass::ALL {
        assert_eq!(witnessed(Condition::FGH, s), vec![12, 18, 24, 30]);
    }
}

/// Brute force over every triangle with canonical key in the region, no
/// filters and no dedup shortcuts.
fn naive_orbits(b: i64, l_max: i64) -> HashSet<[(i64, i64); 3]> {
    let mut keys = HashSet::new();
    for x1 in -b..=b {
        for y1 in -b..=b {
            for x2 in -b..=b {
                for y2 in -b..=b {
                    if x1 * y2 == x2 * y1 {
                        continue;
                    }
                    let v = [(0, 0), (x1, y1), (x2, y2)];
                    let t = SmallTriangle::new(v);
                    if t.perimeter > l_max {
                        continue;
                    }
                    let k = canonical_key_small(&v);
                    if k.iter().all(|&(x, y)| x.abs() <= b && y.abs() <= b) {
                        keys.insert(k);
                    }
                }
            }
        }
    }
    keys
}

#[test]
fn each_orbit_visited_once() {
    let (b, l_max) = (5, 14);
    let visited = fold_orbits(
        b,
        l_max,
        3,
        Vec::new,
        |acc: &mut Vec<[(i64, i64); 3]>, t| acc.push(t.v),
        |mut a, b| {
            a.extend(b);
            a
        },
    );
    let unique: HashSet<_> = visited.iter().copied().collect();
    assert_eq!(unique.len(), visited.len(), "an orbit was visited twice");
    assert_eq!(unique, naive_orbits(b, l_max as i64));
}

#[test]
fn predicates_constant_on_orbits() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..500 {
        let v: [(i64, i64); 3] = std::array::from_fn(|_| (rng.gen_range(-30..=30), rng.gen_range(-30..=30)));
        let Ok(t) = LatticeTriangle::from_coords(v) else { continue };
        let base = center_report(&t);
        let key = canonical_key(&t);
        for g in D4 {
            let shift = (rng.gen_range(-50..=50), rng.gen_range(-50..=50));
            let mut w = v.map(|p| {
                let q = g(p);
                (q.0 + shift.0, q.1 + shift.1)
            });
            w.swap(0, rng.gen_range(0..3));
            let u = LatticeTriangle::from_coords(w).unwrap();
            let r = center_report(&u);
            assert_eq!(
                (r.shape, &r.perimeter, r.f_lattice, r.g_lattice, r.h_lattice),
                (base.shape, &base.perimeter, base.f_lattice, base.g_lattice, base.h_lattice)
            );
            assert_eq!(u.side_lengths(), t.side_lengths());
            assert_eq!(canonical_key(&u), key);
            let s = SmallTriangle::new(normalize_small(w));
            assert_eq!(s.satisfies(Condition::I), SmallTriangle::new(normalize_small(v)).satisfies(Condition::I));
        }
    }
}

#[test]
fn fast_path_agrees_with_exact_centers() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut checked = 0;
    while checked < 3000 {
        let v = [(0, 0), (rng.gen_range(-60..=60), rng.gen_range(-60..=60)), (rng.gen_range(-60..=60), rng.gen_range(-60..=60))];
        let Ok(t) = LatticeTriangle::from_coords(v) else { continue };
        let s = SmallTriangle::new(v);
        let r = center_report(&t);
        assert_eq!(s.shape(), r.shape);
        assert_eq!(r.perimeter, s.perimeter.into());
        for c in Condition::RATIONAL {
            assert_eq!(Some(s.satisfies(c)), r.satisfies(c), "{c} on {t}");
        }
        checked += 1;
    }
}

#[test]
fn atlas_monotone_in_box() {
    let small = enumerate(&SearchConfig::new(4, 14)).unwrap();
    let large = enumerate(&SearchConfig::new(8, 14)).unwrap();
    for (k, s) in &small.cells {
        let l = &large.cells[k];
        if s.is_witness() {
            assert!(l.is_witness(), "{k:?}");
        }
        assert_eq!(s.is_proven_impossible(), l.is_proven_impossible(), "{k:?}");
    }
    assert!(large.search.orbits > small.search.orbits);
}

#[test]
fn atlas_document_round_trip_and_determinism() {
    let mut config = SearchConfig::new(10, 16);
    config.conditions.push(Condition::I);
    let one = AtlasDocument::from_atlas(&enumerate(&config).unwrap()).to_json();
    let four = AtlasDocument::from_atlas(&enumerate(&config.clone().with_shards(4)).unwrap()).to_json();
    assert_eq!(one, four);
    let doc = AtlasDocument::from_json(&one).unwrap();
    assert_eq!(doc.to_json(), one);
    let table = compare_atlas(&enumerate(&config).unwrap());
    assert_eq!(table.rows.len(), 15);

    let tampered = one.replacen("\"witness_vertices\": [\n        \"(0,0)\"", "\"witness_vertices\": [\n        \"(0,1)\"", 1);
    assert_ne!(tampered, one);
    assert!(AtlasDocument::from_json(&tampered).is_err());
}

#[test]
fn incenter_cells_never_claim_impossibility() {
    let mut config = SearchConfig::new(12, 16);
    config.conditions = vec![Condition::I];
    let atlas = enumerate(&config).unwrap();
    assert!(atlas.cells.values().all(|s| !s.is_proven_impossible()));
    assert!(matches!(
        atlas.status(Condition::I, ShapeClass::Right, 8),
        Some(CellStatus::Witness { .. })
    ));
}

#[test]
fn checkpoint_resume() {
    let dir = tempfile::tempdir().unwrap();
    let config = SearchConfig::new(8, 12).with_shards(3);
    let fresh = run_search(&config, Some(dir.path())).unwrap();
    let log = std::fs::read_to_string(dir.path().join("checkpoint.ndjson")).unwrap();
    assert_eq!(log.lines().count(), 3);
    let resumed = run_search(&config, Some(dir.path())).unwrap();
    assert_eq!(fresh, resumed);
    assert_eq!(std::fs::read_to_string(dir.path().join("checkpoint.ndjson")).unwrap(), log);
    let atlas = build_atlas(&config, Some(dir.path())).unwrap();
    assert_eq!(atlas.search, fresh);
}
