//! Comparison of an atlas against the known answer for the fifteen rational
//! cells.
//!
//! | centers | acute | obtuse | right |
//! |---|---|---|---|
//! | F | 2N \ {2,4,6,10} | 2N \ {2} | 2N \ {2} |
//! | G | N \ {1,2,5,11} | N \ {1,2,5,11} | 3N \ {3,6} |
//! | H | N \ {1,2,3,4,5,7} | N \ {1,2} | N \ {1,2} |
//! | G,H | 3N \ {3,6} | 3N \ {3,6} | 3N \ {3,6} |
//! | F,G,H | 6N \ {6} | 6N \ {6} | 6N \ {6} |

use std::fmt::Write;

use serde::Serialize;

use super::{build_atlas, AchievabilityAtlas, CellStatus, SearchConfig};
use crate::centers::Condition;
use crate::error::Result;
use crate::lattice::ShapeClass;

/// Whether perimeter `l` is achievable in the cell.
pub fn expected(condition: Condition, shape: ShapeClass, l: u64) -> bool {
    use ShapeClass::*;
    if l < 3 {
        return false;
    }
    match (condition, shape) {
        (Condition::F, Acute) => l % 2 == 0 && ![4, 6, 10].contains(&l),
        (Condition::F, _) => l % 2 == 0,
        (Condition::G, Right) => l % 3 == 0 && l >= 9,
        (Condition::G, _) => l != 5 && l != 11,
        (Condition::H, Acute) => ![3, 4, 5, 7].contains(&l),
        (Condition::H, _) => true,
        (Condition::GH, _) => l % 3 == 0 && l >= 9,
        (Condition::FGH, _) => l % 6 == 0 && l >= 12,
        (Condition::I, _) => false,
    }
}

pub fn expression(condition: Condition, shape: ShapeClass) -> &'static str {
    use ShapeClass::*;
    match (condition, shape) {
        (Condition::F, Acute) => "2N \\ {2,4,6,10}",
        (Condition::F, _) => "2N \\ {2}",
        (Condition::G, Right) => "3N \\ {3,6}",
        (Condition::G, _) => "N \\ {1,2,5,11}",
        (Condition::H, Acute) => "N \\ {1,2,3,4,5,7}",
        (Condition::H, _) => "N \\ {1,2}",
        (Condition::GH, _) => "3N \\ {3,6}",
        (Condition::FGH, _) => "6N \\ {6}",
        (Condition::I, _) => "unknown",
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Match,
    Mismatch,
    /// Expected achievable, but no witness was found in the box.
    Open,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellRow {
    pub condition: Condition,
    pub shape: ShapeClass,
    pub expression: &'static str,
    pub perimeters: Vec<(u64, Verdict)>,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableReport {
    pub l_max: u64,
    pub box_radius: i64,
    pub rows: Vec<CellRow>,
}

impl TableReport {
    pub fn all_match(&self) -> bool {
        self.rows.iter().all(|r| r.verdict == Verdict::Match)
    }

    pub fn row(&self, condition: Condition, shape: ShapeClass) -> Option<&CellRow> {
        self.rows
            .iter()
            .find(|r| r.condition == condition && r.shape == shape)
    }

    pub fn render(&self) -> String {
        let mut out = format!(
            "achievable lattice perimeters, 3 <= l <= {}, search box {}\n",
            self.l_max, self.box_radius
        );
        for r in &self.rows {
            let marks: String = r
                .perimeters
                .iter()
                .map(|(_, v)| match v {
                    Verdict::Match => '.',
                    Verdict::Open => '?',
                    Verdict::Mismatch => 'X',
                })
                .collect();
            let _ = writeln!(
                out,
                "{:<4} {:<7} {:<20} {:<9} {}",
                r.condition.as_str(),
                r.shape.as_str(),
                r.expression,
                format!("{:?}", r.verdict),
                marks
            );
        }
        out
    }
}

fn verdict_for(expected: bool, status: Option<&CellStatus>) -> Verdict {
    match (expected, status) {
        (true, Some(CellStatus::Witness { .. })) => Verdict::Match,
        (false, Some(CellStatus::ProvenImpossible(_))) => Verdict::Match,
        (true, Some(CellStatus::OpenEmpirical)) => Verdict::Open,
        _ => Verdict::Mismatch,
    }
}

/// Compares every rational cell of the atlas with [`expected`].
pub fn compare_atlas(atlas: &AchievabilityAtlas) -> TableReport {
    let mut rows = Vec::new();
    for &condition in &atlas.config.conditions {
        if condition == Condition::I {
            continue;
        }
        for &shape in &atlas.config.shapes {
            let perimeters: Vec<(u64, Verdict)> = (3..=atlas.config.l_max)
                .map(|l| {
                    let v = verdict_for(expected(condition, shape, l), atlas.status(condition, shape, l));
                    (l, v)
                })
                .collect();
            let verdict = if perimeters.iter().any(|(_, v)| *v == Verdict::Mismatch) {
                Verdict::Mismatch
            } else if perimeters.iter().any(|(_, v)| *v == Verdict::Open) {
                Verdict::Open
            } else {
                Verdict::Match
            };
            rows.push(CellRow {
                condition,
                shape,
                expression: expression(condition, shape),
                perimeters,
                verdict,
            });
        }
    }
    TableReport {
        l_max: atlas.config.l_max,
        box_radius: atlas.config.box_radius,
        rows,
    }
}

pub fn verify_results_table(l_max: u64, box_radius: i64, shards: usize) -> Result<TableReport> {
    let config = SearchConfig::new(box_radius, l_max).with_shards(shards);
    Ok(compare_atlas(&build_atlas(&config, None)?))
}
