//! Exhaustive search over lattice triangles, one per symmetry orbit.
//!
//! The search region is a box: an orbit is visited when its canonical
//! representative (see [`canonical`]) has every coordinate in `[-B, B]`.
//! Since that representative has its least vertex at the origin, the loop
//! runs over ordered pairs `0 < v1 < v2` of box points with `x >= 0` and keeps
//! only pairs that are already canonical. Enlarging `B` only adds orbits.
//!
//! Work is split by the index of `v1`, round-robin over shards. Each shard
//! returns its own partial result and the merge is a fold in shard order
//! whose outcome does not depend on the number of shards.

pub mod atlas;
pub mod canonical;
pub mod checkpoint;
pub mod table;

use std::collections::{BTreeMap, HashMap};
use std::path::Path;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::centers::{center_report, Condition};
use crate::constructions::construct;
use crate::error::{Error, Result};
use crate::feasibility::{
    check_multiset, exclusion_report, ExclusionCertificate, ExclusionReport, SideMultiset,
};
use crate::incenter::{lattice_incenter, lattice_incenter_small};
use crate::lattice::{LatticeTriangle, ShapeClass};

use canonical::{is_canonical_small, SmallKey};

/// Largest box radius for which the `i64` arithmetic below cannot overflow.
pub const MAX_BOX_RADIUS: i64 = 100_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub box_radius: i64,
    pub l_max: u64,
    pub conditions: Vec<Condition>,
    pub shapes: Vec<ShapeClass>,
    pub shard_count: usize,
}

impl SearchConfig {
    /// All five rational conditions, all shapes, one shard.
    pub fn new(box_radius: i64, l_max: u64) -> Self {
        SearchConfig {
            box_radius,
            l_max,
            conditions: Condition::RATIONAL.to_vec(),
            shapes: ShapeClass::ALL.to_vec(),
            shard_count: 1,
        }
    }

    pub fn with_shards(mut self, shard_count: usize) -> Self {
        self.shard_count = shard_count;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.box_radius < 2 || self.box_radius > MAX_BOX_RADIUS {
            return Err(Error::Config(format!(
                "box radius must be in [2, {MAX_BOX_RADIUS}], got {}",
                self.box_radius
            )));
        }
        if self.l_max < 3 {
            return Err(Error::Config(format!("l_max must be at least 3, got {}", self.l_max)));
        }
        if self.shard_count == 0 {
            return Err(Error::Config("shard count must be positive".into()));
        }
        if self.conditions.is_empty() || self.shapes.is_empty() {
            return Err(Error::Config("need at least one condition and one shape".into()));
        }
        Ok(())
    }

    /// Conditions and shapes deduplicated and sorted, so that equivalent
    /// configurations describe the same cells.
    pub fn normalized(&self) -> SearchConfig {
        let mut c = self.clone();
        c.conditions.sort();
        c.conditions.dedup();
        c.shapes.sort();
        c.shapes.dedup();
        c
    }

    /// Hex SHA-256 of the normalized configuration, shard count included.
    pub fn hash(&self) -> String {
        let json = serde_json::to_vec(&self.normalized()).expect("config serializes");
        hex::encode(Sha256::digest(json))
    }
}

/// A triangle with `v[0]` at the origin and small coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SmallTriangle {
    pub v: SmallKey,
    /// Lattice length of the side opposite each vertex.
    pub lengths: [i64; 3],
    pub perimeter: i64,
}

fn gcd_len(p: (i64, i64)) -> i64 {
    p.0.gcd(&p.1)
}

impl SmallTriangle {
    pub fn new(v: SmallKey) -> Self {
        let side = |i: usize, j: usize| gcd_len((v[j].0 - v[i].0, v[j].1 - v[i].1));
        let lengths = [side(1, 2), side(2, 0), side(0, 1)];
        SmallTriangle {
            v,
            lengths,
            perimeter: lengths.iter().sum(),
        }
    }

    pub fn shape(&self) -> ShapeClass {
        let v = &self.v;
        let mut right = false;
        for i in 0..3 {
            let (p, q, r) = (v[i], v[(i + 1) % 3], v[(i + 2) % 3]);
            let d = (q.0 - p.0) as i128 * (r.0 - p.0) as i128 + (q.1 - p.1) as i128 * (r.1 - p.1) as i128;
            if d < 0 {
                return ShapeClass::Obtuse;
            }
            right |= d == 0;
        }
        if right {
            ShapeClass::Right
        } else {
            ShapeClass::Acute
        }
    }

    pub fn side_multiset(&self) -> SideMultiset {
        let [a, b, c] = self.lengths.map(|l| l as u64);
        SideMultiset::new(a, b, c).expect("sides are positive")
    }

    pub fn centroid_lattice(&self) -> bool {
        let [_, a, b] = self.v;
        (a.0 + b.0) % 3 == 0 && (a.1 + b.1) % 3 == 0
    }

    /// The orthocenter, when it is a lattice point.
    pub fn orthocenter(&self) -> Option<(i64, i64)> {
        let [_, a, b] = self.v.map(|(x, y)| (x as i128, y as i128));
        let cross = a.0 * b.1 - a.1 * b.0;
        let dot = a.0 * b.0 + a.1 * b.1;
        let (nx, ny) = (dot * (b.1 - a.1), dot * (a.0 - b.0));
        (nx % cross == 0 && ny % cross == 0).then(|| ((nx / cross) as i64, (ny / cross) as i64))
    }

    /// Circumcenter is a lattice point: `F = (S - H) / 2` with `S` the vertex
    /// sum.
    pub fn circumcenter_lattice(&self) -> bool {
        let [_, a, b] = self.v;
        self.orthocenter()
            .is_some_and(|h| (a.0 + b.0 - h.0) % 2 == 0 && (a.1 + b.1 - h.1) % 2 == 0)
    }

    pub fn incenter(&self) -> Option<(i64, i64)> {
        lattice_incenter_small(&self.v)
    }

    pub fn satisfies(&self, condition: Condition) -> bool {
        match condition {
            Condition::F => self.circumcenter_lattice(),
            Condition::G => self.centroid_lattice(),
            Condition::H => self.orthocenter().is_some(),
            Condition::GH => self.centroid_lattice() && self.orthocenter().is_some(),
            Condition::FGH => self.centroid_lattice() && self.circumcenter_lattice(),
            Condition::I => self.incenter().is_some(),
        }
    }

    pub fn to_triangle(&self) -> LatticeTriangle {
        LatticeTriangle::from_coords(self.v).expect("search triangles are non-degenerate")
    }
}

/// Box points `(x, y)` with `0 <= x <= B`, `|y| <= B`, lexicographically
/// after the origin, in increasing order.
fn half_box(b: i64) -> Vec<(i64, i64)> {
    let mut pts = Vec::new();
    for x in 0..=b {
        let y0 = if x == 0 { 1 } else { -b };
        for y in y0..=b {
            pts.push((x, y));
        }
    }
    pts
}

/// Calls `visit` on every canonical triangle of lattice perimeter at most
/// `l_max` handled by shard `shard` of `shards`, in increasing key order.
pub fn visit_shard(
    box_radius: i64,
    l_max: u64,
    shards: usize,
    shard: usize,
    mut visit: impl FnMut(&SmallTriangle),
) {
    let l_max = l_max as i64;
    let pts = half_box(box_radius);
    let lens: Vec<i64> = pts.iter().map(|&p| gcd_len(p)).collect();
    for i in (shard..pts.len()).step_by(shards) {
        let (a, la) = (pts[i], lens[i]);
        if la + 2 > l_max {
            continue;
        }
        for j in i + 1..pts.len() {
            let (b, lb) = (pts[j], lens[j]);
            if la + lb + 1 > l_max || a.0 * b.1 == a.1 * b.0 {
                continue;
            }
            let lc = gcd_len((b.0 - a.0, b.1 - a.1));
            if la + lb + lc > l_max {
                continue;
            }
            let v = [(0, 0), a, b];
            if is_canonical_small(&v) {
                visit(&SmallTriangle {
                    v,
                    lengths: [lc, lb, la],
                    perimeter: la + lb + lc,
                });
            }
        }
    }
}

/// Runs `visit` over all shards on scoped threads and folds the per-shard
/// states in shard order.
pub fn fold_orbits<T, I, V, M>(
    box_radius: i64,
    l_max: u64,
    shards: usize,
    init: I,
    visit: V,
    merge: M,
) -> T
where
    T: Send,
    I: Fn() -> T + Sync,
    V: Fn(&mut T, &SmallTriangle) + Sync,
    M: Fn(T, T) -> T,
{
    let shards = shards.max(1);
    let parts: Vec<T> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..shards)
            .map(|shard| {
                let (init, visit) = (&init, &visit);
                s.spawn(move || {
                    let mut state = init();
                    visit_shard(box_radius, l_max, shards, shard, |t| visit(&mut state, t));
                    state
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("search worker panicked"))
            .collect()
    });
    let mut it = parts.into_iter();
    let first = it.next().expect("at least one shard");
    it.fold(first, merge)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CellKey {
    pub condition: Condition,
    pub shape: ShapeClass,
    pub perimeter: u64,
}

/// Search hits for one cell: the least canonical key found, and how many
/// orbits qualified.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellHit {
    pub witness: SmallKey,
    pub count: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchResult {
    pub orbits: u64,
    #[serde(with = "cell_list")]
    pub cells: BTreeMap<CellKey, CellHit>,
}

mod cell_list {
    use super::{CellHit, CellKey};
    use serde::{Deserialize, Deserializer, Serialize, Serializer};
    use std::collections::BTreeMap;

    pub fn serialize<S: Serializer>(
        m: &BTreeMap<CellKey, CellHit>,
        s: S,
    ) -> Result<S::Ok, S::Error> {
        m.iter().collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> Result<BTreeMap<CellKey, CellHit>, D::Error> {
        Ok(Vec::<(CellKey, CellHit)>::deserialize(d)?.into_iter().collect())
    }
}

impl SearchResult {
    pub fn merge(mut self, other: SearchResult) -> SearchResult {
        self.orbits += other.orbits;
        for (k, hit) in other.cells {
            self.cells
                .entry(k)
                .and_modify(|h| {
                    h.count += hit.count;
                    h.witness = h.witness.min(hit.witness);
                })
                .or_insert(hit);
        }
        self
    }
}

/// For each side multiset up to `l_max`, a bit per (condition, shape) cell
/// that the exclusion filters leave open.
struct FilterMask {
    bits: HashMap<SideMultiset, u64>,
    conditions: Vec<Condition>,
    shapes: Vec<ShapeClass>,
}

impl FilterMask {
    fn new(config: &SearchConfig) -> Self {
        let mut bits = HashMap::new();
        for l in 3..=config.l_max {
            for s in crate::feasibility::partitions(l).expect("l >= 3") {
                let mut mask = 0u64;
                for (ci, &c) in config.conditions.iter().enumerate() {
                    for (si, &sh) in config.shapes.iter().enumerate() {
                        if check_multiset(&s, c, sh).is_ok() {
                            mask |= 1 << (ci * config.shapes.len() + si);
                        }
                    }
                }
                bits.insert(s, mask);
            }
        }
        FilterMask {
            bits,
            conditions: config.conditions.clone(),
            shapes: config.shapes.clone(),
        }
    }

    fn open(&self, s: &SideMultiset, ci: usize, si: usize) -> bool {
        self.bits[s] >> (ci * self.shapes.len() + si) & 1 == 1
    }
}

fn search_shard(config: &SearchConfig, mask: &FilterMask, shard: usize) -> SearchResult {
    let mut result = SearchResult::default();
    visit_shard(
        config.box_radius,
        config.l_max,
        config.shard_count,
        shard,
        |t| {
            result.orbits += 1;
            let shape = t.shape();
            let Some(si) = mask.shapes.iter().position(|&s| s == shape) else {
                return;
            };
            let ms = t.side_multiset();
            for (ci, &c) in mask.conditions.iter().enumerate() {
                if mask.open(&ms, ci, si) && t.satisfies(c) {
                    let key = CellKey {
                        condition: c,
                        shape,
                        perimeter: t.perimeter as u64,
                    };
                    result
                        .cells
                        .entry(key)
                        .and_modify(|h| h.count += 1)
                        .or_insert(CellHit {
                            witness: t.v,
                            count: 1,
                        });
                }
            }
        },
    );
    result
}

/// Searches every shard, reusing and recording completed shards in
/// `checkpoint_dir` when one is given.
pub fn run_search(config: &SearchConfig, checkpoint_dir: Option<&Path>) -> Result<SearchResult> {
    config.validate()?;
    let config = config.normalized();
    let mask = FilterMask::new(&config);
    let log = checkpoint_dir
        .map(|d| checkpoint::CheckpointLog::open(d, &config))
        .transpose()?;
    let mut parts: Vec<Option<SearchResult>> = (0..config.shard_count)
        .map(|shard| log.as_ref().and_then(|l| l.load(shard)))
        .collect();
    let todo: Vec<usize> = (0..config.shard_count).filter(|&s| parts[s].is_none()).collect();
    let computed: Vec<(usize, SearchResult)> = std::thread::scope(|s| {
        let handles: Vec<_> = todo
            .iter()
            .map(|&shard| {
                let (config, mask) = (&config, &mask);
                s.spawn(move || (shard, search_shard(config, mask, shard)))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("search worker panicked"))
            .collect()
    });
    for (shard, result) in computed {
        if let Some(l) = &log {
            l.record(shard, &result)?;
        }
        parts[shard] = Some(result);
    }
    Ok(parts
        .into_iter()
        .map(|p| p.expect("every shard done"))
        .fold(SearchResult::default(), SearchResult::merge))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessSource {
    Construction,
    Search,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CellStatus {
    Witness {
        triangle: LatticeTriangle,
        family: String,
        source: WitnessSource,
    },
    ProvenImpossible(Vec<ExclusionCertificate>),
    /// No witness inside the searched box; not a claim of impossibility.
    OpenEmpirical,
}

impl CellStatus {
    pub fn is_witness(&self) -> bool {
        matches!(self, CellStatus::Witness { .. })
    }

    pub fn is_proven_impossible(&self) -> bool {
        matches!(self, CellStatus::ProvenImpossible(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AchievabilityAtlas {
    pub config: SearchConfig,
    pub cells: BTreeMap<CellKey, CellStatus>,
    pub search: SearchResult,
}

impl AchievabilityAtlas {
    pub fn status(&self, condition: Condition, shape: ShapeClass, perimeter: u64) -> Option<&CellStatus> {
        self.cells.get(&CellKey {
            condition,
            shape,
            perimeter,
        })
    }
}

/// Exact re-check of a search hit before it is published.
fn confirm(key: &CellKey, t: &LatticeTriangle) -> Result<()> {
    let ok = t.lattice_perimeter() == key.perimeter.into()
        && t.classify_shape() == key.shape
        && match key.condition {
            Condition::I => lattice_incenter(t).is_some(),
            c => center_report(t).satisfies(c) == Some(true),
        };
    if ok {
        Ok(())
    } else {
        Err(Error::Verification {
            family: "search".into(),
            reason: format!("{t} does not belong to {key:?}"),
        })
    }
}

/// Classifies every (condition, shape, perimeter) cell of the configuration:
/// certificates first, then constructions, then search hits.
pub fn build_atlas(config: &SearchConfig, checkpoint_dir: Option<&Path>) -> Result<AchievabilityAtlas> {
    let search = run_search(config, checkpoint_dir)?;
    let config = config.normalized();
    let mut cells = BTreeMap::new();
    for &condition in &config.conditions {
        for &shape in &config.shapes {
            for perimeter in 3..=config.l_max {
                let key = CellKey {
                    condition,
                    shape,
                    perimeter,
                };
                let hit = search.cells.get(&key);
                let status = match exclusion_report(perimeter, condition, shape) {
                    ExclusionReport::ProvenImpossible(certs) => {
                        if let Some(h) = hit {
                            return Err(Error::Contradiction(format!(
                                "{:?} is certified impossible but the search found {:?}",
                                key, h.witness
                            )));
                        }
                        CellStatus::ProvenImpossible(certs)
                    }
                    ExclusionReport::Unknown(_) => match construct(condition, shape, perimeter) {
                        Ok(w) => CellStatus::Witness {
                            triangle: w.triangle,
                            family: w.family,
                            source: WitnessSource::Construction,
                        },
                        Err(_) => match hit {
                            Some(h) => {
                                let t = LatticeTriangle::from_coords(h.witness)?;
                                confirm(&key, &t)?;
                                CellStatus::Witness {
                                    triangle: t,
                                    family: "search".into(),
                                    source: WitnessSource::Search,
                                }
                            }
                            None => CellStatus::OpenEmpirical,
                        },
                    },
                };
                cells.insert(key, status);
            }
        }
    }
    Ok(AchievabilityAtlas {
        config,
        cells,
        search,
    })
}

/// [`build_atlas`] without checkpointing.
pub fn enumerate(config: &SearchConfig) -> Result<AchievabilityAtlas> {
    build_atlas(config, None)
}
