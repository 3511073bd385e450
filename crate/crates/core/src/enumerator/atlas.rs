//! JSON form of an [`AchievabilityAtlas`].
//!
//! ```json
//! {
//!   "schema_version": 1,
//!   "config": {"box_radius": 40, "l_max": 24, "conditions": ["F"], "shapes": ["acute"]},
//!   "orbits_searched": 12345,
//!   "entries": [
//!     {"condition": "F", "shape": "acute", "perimeter": 8, "status": "witness",
//!      "witness_vertices": ["(0,0)", "(4,0)", "(3,3)"], "family": "acute-F/explicit",
//!      "source": "construction"},
//!     {"condition": "F", "shape": "acute", "perimeter": 10, "status": "proven_impossible",
//!      "certificate": [{"rule": "Mid3", ...}]},
//!     {"condition": "I", "shape": "obtuse", "perimeter": 5, "status": "open_empirical"}
//!   ]
//! }
//! ```
//!
//! The shard count is deliberately absent, so documents from runs that differ
//! only in parallelism are byte-identical. Loading re-verifies every witness
//! and replays every certificate.

use serde::{Deserialize, Serialize};

use super::{AchievabilityAtlas, CellKey, CellStatus, WitnessSource};
use crate::centers::{center_report, Condition};
use crate::error::{Error, Result};
use crate::feasibility::{ExclusionCertificate, Subject};
use crate::incenter::lattice_incenter;
use crate::lattice::{LatticePoint, LatticeTriangle, ShapeClass};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub box_radius: i64,
    pub l_max: u64,
    pub conditions: Vec<Condition>,
    pub shapes: Vec<ShapeClass>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EntryStatus {
    Witness,
    ProvenImpossible,
    OpenEmpirical,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtlasEntry {
    pub condition: Condition,
    pub shape: ShapeClass,
    pub perimeter: u64,
    pub status: EntryStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness_vertices: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<WitnessSource>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Vec<ExclusionCertificate>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtlasDocument {
    pub schema_version: u32,
    pub config: ConfigEcho,
    pub orbits_searched: u64,
    pub entries: Vec<AtlasEntry>,
}

impl AtlasDocument {
    pub fn from_atlas(atlas: &AchievabilityAtlas) -> Self {
        let entries = atlas
            .cells
            .iter()
            .map(|(key, status)| {
                let mut e = AtlasEntry {
                    condition: key.condition,
                    shape: key.shape,
                    perimeter: key.perimeter,
                    status: EntryStatus::OpenEmpirical,
                    witness_vertices: None,
                    family: None,
                    source: None,
                    certificate: None,
                };
                match status {
                    CellStatus::Witness {
                        triangle,
                        family,
                        source,
                    } => {
                        e.status = EntryStatus::Witness;
                        e.witness_vertices =
                            Some(triangle.vertices().iter().map(|v| v.to_string()).collect());
                        e.family = Some(family.clone());
                        e.source = Some(*source);
                    }
                    CellStatus::ProvenImpossible(certs) => {
                        e.status = EntryStatus::ProvenImpossible;
                        e.certificate = Some(certs.clone());
                    }
                    CellStatus::OpenEmpirical => {}
                }
                e
            })
            .collect();
        AtlasDocument {
            schema_version: SCHEMA_VERSION,
            config: ConfigEcho {
                box_radius: atlas.config.box_radius,
                l_max: atlas.config.l_max,
                conditions: atlas.config.conditions.clone(),
                shapes: atlas.config.shapes.clone(),
            },
            orbits_searched: atlas.search.orbits,
            entries,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("atlas serializes");
        s.push('\n');
        s
    }

    /// Parses and verifies a document.
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: AtlasDocument = serde_json::from_str(text)?;
        doc.verify()?;
        Ok(doc)
    }

    pub fn verify(&self) -> Result<()> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::Atlas(format!(
                "unsupported schema version {}",
                self.schema_version
            )));
        }
        for e in &self.entries {
            verify_entry(e)?;
        }
        Ok(())
    }
}

fn verify_entry(e: &AtlasEntry) -> Result<()> {
    let key = CellKey {
        condition: e.condition,
        shape: e.shape,
        perimeter: e.perimeter,
    };
    let bad = |why: String| Err(Error::Atlas(format!("{key:?}: {why}")));
    match e.status {
        EntryStatus::Witness => {
            let Some(vs) = &e.witness_vertices else {
                return bad("witness entry without vertices".into());
            };
            let pts = vs
                .iter()
                .map(|s| s.parse::<LatticePoint>())
                .collect::<Result<Vec<_>>>()?;
            let [a, b, c]: [LatticePoint; 3] = pts
                .try_into()
                .map_err(|_| Error::Atlas(format!("{key:?}: need three vertices")))?;
            let t = LatticeTriangle::new(a, b, c)?;
            if t.lattice_perimeter() != e.perimeter.into() || t.classify_shape() != e.shape {
                return bad(format!("{t} has the wrong perimeter or shape"));
            }
            let holds = match e.condition {
                Condition::I => lattice_incenter(&t).is_some(),
                c => center_report(&t).satisfies(c) == Some(true),
            };
            if !holds {
                return bad(format!("{t} does not satisfy {}", e.condition));
            }
        }
        EntryStatus::ProvenImpossible => {
            let Some(certs) = &e.certificate else {
                return bad("impossibility without certificates".into());
            };
            for c in certs {
                let subject_ok = match c.subject {
                    Subject::Perimeter(l) => l == e.perimeter,
                    Subject::Multiset(s) => s.perimeter() == e.perimeter,
                };
                let scope_ok = c.scope.condition == e.condition
                    && c.scope.shape.is_none_or(|s| s == e.shape);
                if !(subject_ok && scope_ok && c.replay()) {
                    return bad(format!("certificate does not replay: {c}"));
                }
            }
            let multisets = certs
                .iter()
                .filter(|c| matches!(c.subject, Subject::Multiset(_)))
                .count();
            let whole = certs.iter().any(|c| matches!(c.subject, Subject::Perimeter(_)));
            let needed = crate::feasibility::partitions(e.perimeter).map_or(0, |p| p.len());
            if !whole && multisets != needed {
                return bad(format!(
                    "{multisets} certificates cover {needed} side multisets"
                ));
            }
        }
        EntryStatus::OpenEmpirical => {}
    }
    Ok(())
}
