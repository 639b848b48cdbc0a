//! Independent checks of total weightings.
//!
//! Weighted degrees are recomputed here from the forest and the labels alone;
//! nothing from the constructor's bookkeeping is reused.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::classify::ClassTable;
use crate::error::LabelingError;
use crate::forest::{Forest, Mode};
use crate::labeler::{resolve_mode, TotalWeighting};

/// `w(v)` plus the labels of all edges at `v`, for every vertex.
pub fn weighted_degrees(f: &Forest, tw: &TotalWeighting) -> Result<Vec<u64>, LabelingError> {
    if tw.vertex_labels.len() != f.n() {
        return Err(LabelingError::VertexCount {
            expected: f.n(),
            found: tw.vertex_labels.len(),
        });
    }
    if tw.edge_labels.len() != f.m() {
        return Err(LabelingError::EdgeCount {
            expected: f.m(),
            found: tw.edge_labels.len(),
        });
    }
    let mut totals: Vec<u64> = tw.vertex_labels.iter().map(|&w| u64::from(w)).collect();
    for (&(u, v), &w) in f.edges().iter().zip(&tw.edge_labels) {
        totals[u] += u64::from(w);
        totals[v] += u64::from(w);
    }
    Ok(totals)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Collision {
    pub u: usize,
    pub v: usize,
    pub total: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OutOfRange {
    Edge { u: usize, v: usize, label: u32 },
    Vertex { v: usize, label: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub valid: bool,
    pub s_claimed: u32,
    pub s_used: u32,
    pub weighted_degrees: Vec<u64>,
    pub collisions: Vec<Collision>,
    pub out_of_range: Vec<OutOfRange>,
}

/// Checks that every label lies in `1..=s_claimed` and that all weighted
/// degrees are pairwise distinct.
pub fn verify(
    f: &Forest,
    tw: &TotalWeighting,
    s_claimed: u32,
) -> Result<Certificate, LabelingError> {
    let totals = weighted_degrees(f, tw)?;
    let in_range = |w: u32| (1..=s_claimed).contains(&w);
    let mut out_of_range = Vec::new();
    for (&(u, v), &label) in f.edges().iter().zip(&tw.edge_labels) {
        if !in_range(label) {
            out_of_range.push(OutOfRange::Edge { u, v, label });
        }
    }
    for (v, &label) in tw.vertex_labels.iter().enumerate() {
        if !in_range(label) {
            out_of_range.push(OutOfRange::Vertex { v, label });
        }
    }

    let mut by_total: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
    for (v, &t) in totals.iter().enumerate() {
        by_total.entry(t).or_default().push(v);
    }
    let mut collisions = Vec::new();
    for (&total, vs) in &by_total {
        for (i, &u) in vs.iter().enumerate() {
            for &v in &vs[i + 1..] {
                collisions.push(Collision { u, v, total });
            }
        }
    }
    collisions.sort_by_key(|c| (c.u, c.v));

    Ok(Certificate {
        valid: collisions.is_empty() && out_of_range.is_empty(),
        s_claimed,
        s_used: tw.max_label(),
        weighted_degrees: totals,
        collisions,
        out_of_range,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub mode: Mode,
    pub checks: Vec<AuditCheck>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed(&self) -> Vec<&'static str> {
        self.checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name)
            .collect()
    }

    pub fn check(&self, name: &str) -> Option<&AuditCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Audits the structural properties a constructed weighting is expected to
/// have, beyond plain irregularity.
///
/// Check names: `labels_in_range`, `strength_matches_pendants`,
/// `non_pendant_edges_s`, `distinct_pool_values`, `pool_pairs_sum_to_s`,
/// `pendant_totals_low`, `inner_totals_high`, `reserved_total`,
/// `low_pendant_count`, `irregular`.
pub fn audit_construction(
    f: &Forest,
    tw: &TotalWeighting,
    table: &ClassTable,
    mode: Mode,
) -> Result<AuditReport, LabelingError> {
    let mode = match mode {
        Mode::Any => resolve_mode(f),
        m => m,
    };
    let totals = weighted_degrees(f, tw)?;
    let s = tw.s;
    let s64 = u64::from(s);
    let degrees = f.degrees();
    let label_of = |u: usize, v: usize| tw.edge_labels[f.edge_index(u, v).expect("edge")];
    let mut checks = Vec::new();
    let mut push = |name: &'static str, failures: Vec<String>| {
        checks.push(AuditCheck {
            name,
            passed: failures.is_empty(),
            detail: failures.join("; "),
        });
    };

    let bad: Vec<String> = f
        .edges()
        .iter()
        .zip(&tw.edge_labels)
        .filter(|(_, &w)| !(1..=s).contains(&w))
        .map(|(&(u, v), w)| format!("edge ({u}, {v}) = {w}"))
        .chain(
            tw.vertex_labels
                .iter()
                .enumerate()
                .filter(|(_, &w)| !(1..=s).contains(&w))
                .map(|(v, w)| format!("vertex {v} = {w}")),
        )
        .collect();
    push("labels_in_range", bad);

    let n1 = table.n1() as u32;
    let expected = (n1 + 1).div_ceil(2);
    push(
        "strength_matches_pendants",
        if s == expected {
            vec![]
        } else {
            vec![format!(
                "s = {s}, expected {expected} for {n1} pendant vertices"
            )]
        },
    );

    let bad = f
        .edges()
        .iter()
        .zip(&tw.edge_labels)
        .filter(|(&(u, v), &w)| degrees[u] > 1 && degrees[v] > 1 && w != s)
        .map(|(&(u, v), w)| format!("edge ({u}, {v}) = {w}"))
        .collect();
    push("non_pendant_edges_s", bad);

    // Small labels on pendant edges that are not isolated edges.
    let mut seen: BTreeMap<u32, (usize, usize)> = BTreeMap::new();
    let mut bad = Vec::new();
    for &(u, v) in &table.pendant_edges {
        if degrees[u] == 1 && degrees[v] == 1 {
            continue;
        }
        let w = label_of(u, v);
        if w < s {
            if let Some((a, b)) = seen.insert(w, (u, v)) {
                bad.push(format!("value {w} on ({a}, {b}) and ({u}, {v})"));
            }
        }
    }
    let low_edges = seen.len() + bad.len();
    push("distinct_pool_values", bad);

    let mut bad = Vec::new();
    for v in 0..f.n() {
        if degrees[v] < 2 {
            continue;
        }
        let mut small: Vec<u32> = f
            .neighbors(v)
            .iter()
            .filter(|&&w| degrees[w] == 1)
            .map(|&w| label_of(v, w))
            .filter(|&w| w < s)
            .collect();
        small.sort_unstable();
        let mut unmatched = 0;
        let (mut lo, mut hi) = (0usize, small.len());
        while lo < hi {
            if hi - lo >= 2 && small[lo] + small[hi - 1] == s {
                lo += 1;
                hi -= 1;
            } else {
                unmatched += 1;
                if small[lo] + small[hi - 1] < s {
                    lo += 1;
                } else {
                    hi -= 1;
                }
            }
        }
        if unmatched > 1 {
            bad.push(format!(
                "vertex {v}: {small:?} leaves {unmatched} values unpaired"
            ));
        }
    }
    push("pool_pairs_sum_to_s", bad);

    let bad = (0..f.n())
        .filter(|&v| degrees[v] == 1 && !(2..=2 * s64).contains(&totals[v]))
        .map(|v| format!("pendant {v} has total {}", totals[v]))
        .collect();
    push("pendant_totals_low", bad);

    let bad = (0..f.n())
        .filter(|&v| degrees[v] >= 3 && totals[v] < 2 * s64 + 2)
        .map(|v| format!("vertex {v} has total {}", totals[v]))
        .collect();
    push("inner_totals_high", bad);

    let reserved = 2 * s64 + 1;
    let holders: Vec<usize> = (0..f.n()).filter(|&v| totals[v] == reserved).collect();
    let degree_two: Vec<usize> = (0..f.n()).filter(|&v| degrees[v] == 2).collect();
    let bad = match mode {
        Mode::Theorem2 if holders != degree_two || holders.len() != 1 => vec![format!(
            "total {reserved} held by {holders:?}, degree-2 vertices {degree_two:?}"
        )],
        Mode::Theorem1 | Mode::Any if !holders.is_empty() => {
            vec![format!("total {reserved} used by {holders:?}")]
        }
        _ => vec![],
    };
    push("reserved_total", bad);

    // Pendant vertices whose edge is below s; isolated edges count twice.
    let low_pendants = low_edges
        + 2 * table
            .isolated_edges
            .iter()
            .filter(|&&(u, v)| label_of(u, v) < s)
            .count();
    let bad = if low_pendants + 2 == s as usize || low_pendants + 1 == s as usize {
        vec![]
    } else {
        vec![format!("{low_pendants} pendant vertices below s = {s}")]
    };
    push("low_pendant_count", bad);

    let mut sorted = totals.clone();
    sorted.sort_unstable();
    let bad = sorted
        .windows(2)
        .filter(|w| w[0] == w[1])
        .map(|w| format!("total {} repeated", w[0]))
        .collect();
    push("irregular", bad);

    Ok(AuditReport { mode, checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::classify;

    fn claw() -> Forest {
        Forest::new(4, [(0, 1), (0, 2), (0, 3)]).unwrap()
    }

    #[test]
    fn k2_weighted_degrees() {
        let f = Forest::new(2, [(0, 1)]).unwrap();
        let tw = TotalWeighting {
            s: 2,
            edge_labels: vec![2],
            vertex_labels: vec![1, 2],
        };
        assert_eq!(weighted_degrees(&f, &tw).unwrap(), vec![3, 4]);
        assert!(verify(&f, &tw, 2).unwrap().valid);
    }

    #[test]
    fn all_ones_claw_collides() {
        let tw = TotalWeighting {
            s: 1,
            edge_labels: vec![1; 3],
            vertex_labels: vec![1; 4],
        };
        assert_eq!(weighted_degrees(&claw(), &tw).unwrap(), vec![4, 2, 2, 2]);
        let cert = verify(&claw(), &tw, 1).unwrap();
        assert!(!cert.valid);
        assert_eq!(cert.collisions.len(), 3);
        assert_eq!(
            cert.collisions[0],
            Collision {
                u: 1,
                v: 2,
                total: 2
            }
        );
    }

    #[test]
    fn out_of_range_labels_are_listed() {
        let tw = TotalWeighting {
            s: 3,
            edge_labels: vec![3, 1, 0],
            vertex_labels: vec![1, 1, 1, 4],
        };
        let cert = verify(&claw(), &tw, 3).unwrap();
        assert!(!cert.valid);
        assert_eq!(
            cert.out_of_range,
            vec![
                OutOfRange::Edge {
                    u: 0,
                    v: 3,
                    label: 0
                },
                OutOfRange::Vertex { v: 3, label: 4 }
            ]
        );
        assert_eq!(cert.s_used, 4);
    }

    #[test]
    fn missing_labels_are_errors() {
        let tw = TotalWeighting {
            s: 2,
            edge_labels: vec![1, 1],
            vertex_labels: vec![1; 4],
        };
        assert_eq!(
            weighted_degrees(&claw(), &tw),
            Err(LabelingError::EdgeCount {
                expected: 3,
                found: 2
            })
        );
    }

    #[test]
    fn audit_flags_small_non_pendant_edge() {
        let f = Forest::new(6, [(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)]).unwrap();
        let (_, table) = classify(&f);
        let tw = TotalWeighting {
            s: 3,
            edge_labels: vec![1, 3, 2, 3, 1],
            vertex_labels: vec![1, 1, 1, 1, 3, 1],
        };
        let report = audit_construction(&f, &tw, &table, Mode::Theorem1).unwrap();
        assert!(report.failed().contains(&"non_pendant_edges_s"));
    }
}
