//! Optimal irregular total weightings for forests with no isolated vertices
//! and at most one vertex of degree two.
//!
//! Every non-pendant edge carries the top label `s`. Pendant edges carry
//! either `s` or a value drawn from a [`ValueList`], so the label sum at a
//! non-pendant vertex is `B * s + t` where `t` is zero or one single pool
//! value (its [`BaseDecomposition`]). Weighted degrees are then placed in
//! disjoint bands:
//!
//! * pendant vertices in `[2, 2s]`;
//! * the degree-2 vertex, if any, at exactly `2s + 1`;
//! * vertices with `B = 2` in `[2s + 2, 3s]`, with overflow at `3s + t`;
//! * vertices with `B = 3` and `t = 0` in `[3s + 1, 4s]`;
//! * vertices with `B = 3` and `t > 0` at `4s + t`;
//! * everything else greedily inside its own window `[base + 1, base + s]`.

mod value_list;
mod variants;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::classify::{classify, strength_target, ClassTable};
use crate::error::{ConstructionError, LabelingError};
use crate::forest::{Forest, Mode};
use crate::verify::weighted_degrees;

pub use value_list::{PoolExhausted, ValueList};
pub use variants::{select_variants, Variant, VariantPlan};

/// Construction stage, reported when a stage cannot complete.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Phase {
    Validation,
    Variants,
    EdgeLabels,
    PendantVertices,
    DegreeTwo,
    MidRange,
    HighRange,
    TopRange,
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Phase::Validation => "validation",
            Phase::Variants => "variants",
            Phase::EdgeLabels => "edge_labels",
            Phase::PendantVertices => "pendant_vertices",
            Phase::DegreeTwo => "degree_two",
            Phase::MidRange => "mid_range",
            Phase::HighRange => "high_range",
            Phase::TopRange => "top_range",
        })
    }
}

/// Labels for every edge (indexed like [`Forest::edges`]) and every vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TotalWeighting {
    pub s: u32,
    pub edge_labels: Vec<u32>,
    pub vertex_labels: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct EdgeLabelJson {
    u: usize,
    v: usize,
    w: u32,
}

#[derive(Serialize, Deserialize)]
struct LabelingJson {
    s: u32,
    edge_labels: Vec<EdgeLabelJson>,
    vertex_labels: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    weighted_degrees: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    mode: Option<Mode>,
}

impl TotalWeighting {
    pub fn max_label(&self) -> u32 {
        self.edge_labels
            .iter()
            .chain(&self.vertex_labels)
            .copied()
            .max()
            .unwrap_or(0)
    }

    /// Labeling document: `s`, labeled edges, vertex labels, weighted degrees
    /// and (optionally) the construction mode.
    pub fn to_json(&self, f: &Forest, mode: Option<Mode>) -> String {
        let doc = LabelingJson {
            s: self.s,
            edge_labels: f
                .edges()
                .iter()
                .zip(&self.edge_labels)
                .map(|(&(u, v), &w)| EdgeLabelJson { u, v, w })
                .collect(),
            vertex_labels: self.vertex_labels.clone(),
            weighted_degrees: weighted_degrees(f, self).ok(),
            mode,
        };
        serde_json::to_string(&doc).expect("labeling serializes")
    }

    /// Reads a labeling document and matches its edges against `f`.
    pub fn from_json(text: &str, f: &Forest) -> Result<Self, LabelingError> {
        let doc: LabelingJson =
            serde_json::from_str(text).map_err(|e| LabelingError::Syntax(e.to_string()))?;
        if doc.vertex_labels.len() != f.n() {
            return Err(LabelingError::VertexCount {
                expected: f.n(),
                found: doc.vertex_labels.len(),
            });
        }
        let mut edge_labels: Vec<Option<u32>> = vec![None; f.m()];
        for e in &doc.edge_labels {
            let idx = f
                .edge_index(e.u, e.v)
                .ok_or(LabelingError::UnknownEdge(e.u, e.v))?;
            if edge_labels[idx].replace(e.w).is_some() {
                return Err(LabelingError::DuplicateEdge(e.u, e.v));
            }
        }
        let edge_labels = edge_labels
            .into_iter()
            .zip(f.edges())
            .map(|(w, &(u, v))| w.ok_or(LabelingError::MissingEdge(u, v)))
            .collect::<Result<_, _>>()?;
        Ok(TotalWeighting {
            s: doc.s,
            edge_labels,
            vertex_labels: doc.vertex_labels,
        })
    }
}

/// Label sum of the edges at a non-pendant vertex, written as
/// `multiples * s + tail`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BaseDecomposition {
    pub multiples: u32,
    /// The single pool value drawn for this vertex, if any.
    pub tail: Option<u32>,
}

impl BaseDecomposition {
    pub fn base(&self, s: u32) -> u32 {
        self.multiples * s + self.tail.unwrap_or(0)
    }
}

/// `Theorem1` when the forest has no degree-2 vertex, `Theorem2` otherwise.
pub fn resolve_mode(f: &Forest) -> Mode {
    if f.degrees().contains(&2) {
        Mode::Theorem2
    } else {
        Mode::Theorem1
    }
}

/// Builds an irregular total weighting with labels in `1..=s`,
/// `s = ceil((n1 + 1) / 2)`. [`Mode::Any`] picks the mode from the degree-2
/// count.
pub fn construct(f: &Forest, mode: Mode) -> Result<TotalWeighting, ConstructionError> {
    let mut state = LabelingState::new(f, mode)?;
    state.assign_edge_labels()?;
    state.weight_pendant_vertices()?;
    for v in state.degree_two_vertices() {
        state.weight_degree_two_vertex(v)?;
    }
    state.weight_midrange()?;
    state.weight_highrange()?;
    state.weight_toprange()?;
    state.finish()
}

/// Intermediate state of the construction; each phase is a method.
#[derive(Debug, Clone)]
pub struct LabelingState<'a> {
    forest: &'a Forest,
    table: ClassTable,
    mode: Mode,
    s: u32,
    plan: VariantPlan,
    pool: ValueList,
    edge_labels: Vec<Option<u32>>,
    vertex_labels: Vec<Option<u32>>,
    decomposition: Vec<Option<BaseDecomposition>>,
    used: BTreeSet<u32>,
}

impl<'a> LabelingState<'a> {
    /// Validates the forest, classifies it and selects variants.
    pub fn new(forest: &'a Forest, mode: Mode) -> Result<Self, ConstructionError> {
        let mode = match mode {
            Mode::Any => resolve_mode(forest),
            m => m,
        };
        let report = forest.validate(mode);
        if !report.ok {
            return Err(ConstructionError::OutOfScope(report));
        }
        let (_, table) = classify(forest);
        let s = strength_target(table.n1())
            .map_err(|e| ConstructionError::infeasible(Phase::Validation, e.to_string()))?;
        let plan = select_variants(forest, &table, s)?;
        Ok(LabelingState {
            forest,
            mode,
            s,
            plan,
            pool: ValueList::new(s).expect("s >= 2"),
            edge_labels: vec![None; forest.m()],
            vertex_labels: vec![None; forest.n()],
            decomposition: vec![None; forest.n()],
            used: BTreeSet::new(),
            table,
        })
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn plan(&self) -> &VariantPlan {
        &self.plan
    }

    pub fn pool(&self) -> &ValueList {
        &self.pool
    }

    pub fn table(&self) -> &ClassTable {
        &self.table
    }

    pub fn decomposition(&self, v: usize) -> Option<BaseDecomposition> {
        self.decomposition[v]
    }

    pub fn edge_label(&self, u: usize, v: usize) -> Option<u32> {
        self.forest
            .edge_index(u, v)
            .and_then(|i| self.edge_labels[i])
    }

    pub fn vertex_label(&self, v: usize) -> Option<u32> {
        self.vertex_labels[v]
    }

    /// Weighted degree of `v`, once all its labels are set.
    pub fn total(&self, v: usize) -> Option<u32> {
        let w = self.vertex_labels[v]?;
        Some(w + self.edge_sum(v)?)
    }

    pub fn degree_two_vertices(&self) -> Vec<usize> {
        (0..self.forest.n())
            .filter(|&v| self.forest.degree(v) == 2)
            .collect()
    }

    fn edge_sum(&self, v: usize) -> Option<u32> {
        self.forest
            .neighbors(v)
            .iter()
            .map(|&w| self.edge_label(v, w))
            .sum()
    }

    fn set_edge(&mut self, u: usize, v: usize, w: u32) {
        let idx = self.forest.edge_index(u, v).expect("edge exists");
        self.edge_labels[idx] = Some(w);
    }

    /// Gives `v` the weighted degree `total`.
    fn place(&mut self, v: usize, total: u32, phase: Phase) -> Result<(), ConstructionError> {
        let sum = self.edge_sum(v).ok_or_else(|| {
            ConstructionError::infeasible(phase, format!("vertex {v} has unlabeled edges"))
        })?;
        if total <= sum || total - sum > self.s {
            return Err(ConstructionError::infeasible(
                phase,
                format!("vertex {v}: total {total} unreachable from edge sum {sum}"),
            ));
        }
        if !self.used.insert(total) {
            return Err(ConstructionError::infeasible(
                phase,
                format!("vertex {v}: total {total} already taken"),
            ));
        }
        self.vertex_labels[v] = Some(total - sum);
        Ok(())
    }

    /// Gives `v` the smallest free total in `lo..=hi`.
    fn place_lowest_free(
        &mut self,
        v: usize,
        lo: u32,
        hi: u32,
        phase: Phase,
    ) -> Result<u32, ConstructionError> {
        let total = (lo..=hi).find(|t| !self.used.contains(t)).ok_or_else(|| {
            ConstructionError::infeasible(
                phase,
                format!("vertex {v}: no free total in [{lo}, {hi}]"),
            )
        })?;
        self.place(v, total, phase)?;
        Ok(total)
    }

    /// Labels all edges: non-pendant and forced edges get `s`, isolated edges
    /// are split between `1` and `s`, and the remaining pendant edges at each
    /// vertex get `s`, then front pairs, then at most one tail value.
    pub fn assign_edge_labels(&mut self) -> Result<(), ConstructionError> {
        let s = self.s;
        let f = self.forest;
        for &(u, v) in f.edges() {
            if !f.is_pendant(u) && !f.is_pendant(v) {
                self.set_edge(u, v, s);
            }
        }
        for (u, v) in self.plan.forced_s_edges.clone() {
            self.set_edge(u, v, s);
        }
        let q = self.table.isolated_edges.len();
        for (i, (u, v)) in self.table.isolated_edges.clone().into_iter().enumerate() {
            self.set_edge(u, v, if i < q / 2 { 1 } else { s });
        }

        for v in 0..f.n() {
            let (k, j) = self.table.class_of[v];
            if k < 2 {
                continue;
            }
            if j == 0 || self.plan.is_forced(v) {
                let multiples = f.neighbors(v).len() as u32;
                self.decomposition[v] = Some(BaseDecomposition {
                    multiples,
                    tail: None,
                });
                continue;
            }
            let pendants: Vec<usize> = f
                .neighbors(v)
                .iter()
                .copied()
                .filter(|&w| f.is_pendant(w))
                .collect();
            let a = self.plan.s_edges_at(v, j);
            let rest = j - a;
            let (pairs, single) = (rest / 2, rest % 2 == 1);
            let mut labels = vec![s; a];
            for _ in 0..pairs {
                let (x, y) = self.pool.take_pair().map_err(|e| {
                    ConstructionError::infeasible(Phase::EdgeLabels, format!("vertex {v}: {e}"))
                })?;
                labels.extend([x, y]);
            }
            let tail = if single {
                Some(self.pool.take_tail().map_err(|e| {
                    ConstructionError::infeasible(Phase::EdgeLabels, format!("vertex {v}: {e}"))
                })?)
            } else {
                None
            };
            labels.extend(tail);
            for (&w, label) in pendants.iter().zip(labels) {
                self.set_edge(v, w, label);
            }
            self.decomposition[v] = Some(BaseDecomposition {
                multiples: ((k - j) + a + pairs) as u32,
                tail,
            });
        }

        if let Some(idx) = self.edge_labels.iter().position(Option::is_none) {
            let (u, v) = f.edges()[idx];
            return Err(ConstructionError::infeasible(
                Phase::EdgeLabels,
                format!("edge ({u}, {v}) left unlabeled"),
            ));
        }
        Ok(())
    }

    /// Pendant vertices on pool-labeled edges get label 1; the rest take the
    /// smallest free total reachable from their edge label, in ascending
    /// order of that label.
    pub fn weight_pendant_vertices(&mut self) -> Result<(), ConstructionError> {
        let s = self.s;
        let mut rest = Vec::new();
        for p in self.table.pendant_vertices.clone() {
            let w = self.forest.neighbors(p)[0];
            let label = self.edge_label(p, w).expect("edges labeled");
            let isolated = self.forest.is_pendant(w);
            if !isolated && label < s {
                self.place(p, label + 1, Phase::PendantVertices)?;
            } else {
                rest.push((label, p));
            }
        }
        rest.sort_unstable();
        for (label, p) in rest {
            self.place_lowest_free(p, (label + 1).max(2), label + s, Phase::PendantVertices)?;
        }
        Ok(())
    }

    /// Sets the total of a degree-2 vertex to `2s + 1`.
    pub fn weight_degree_two_vertex(&mut self, v: usize) -> Result<(), ConstructionError> {
        if self.mode != Mode::Theorem2 {
            return Err(ConstructionError::infeasible(
                Phase::DegreeTwo,
                format!("degree-2 vertex {v} outside theorem2 mode"),
            ));
        }
        let count = self.degree_two_vertices().len();
        if count != 1 || self.forest.degree(v) != 2 {
            return Err(ConstructionError::infeasible(
                Phase::DegreeTwo,
                format!("vertex {v} is not the unique degree-2 vertex ({count} present)"),
            ));
        }
        self.place(v, 2 * self.s + 1, Phase::DegreeTwo)
    }

    fn band(&self, multiples: u32, min_degree: usize) -> Vec<(usize, Option<u32>)> {
        (0..self.forest.n())
            .filter(|&v| self.forest.degree(v) >= min_degree)
            .filter_map(|v| self.decomposition[v].map(|d| (v, d)))
            .filter(|(_, d)| d.multiples == multiples)
            .map(|(v, d)| (v, d.tail))
            .collect()
    }

    /// Vertices whose edge sum is `2s + t`: those with a tail get totals
    /// `2s + t + 1` as long as room remains (the largest tails overflow to
    /// `3s + t`); pure `2s` vertices fill the free totals in `[2s + 2, 3s]`.
    pub fn weight_midrange(&mut self) -> Result<(), ConstructionError> {
        let s = self.s;
        let band = self.band(2, 3);
        let pairs: Vec<usize> = band
            .iter()
            .filter(|(_, t)| t.is_none())
            .map(|&(v, _)| v)
            .collect();
        let mut tails: Vec<(u32, usize)> = band
            .iter()
            .filter_map(|&(v, t)| t.map(|t| (t, v)))
            .collect();
        let capacity = s as usize - 1;
        if pairs.len() > capacity {
            return Err(ConstructionError::infeasible(
                Phase::MidRange,
                format!("{} flexible vertices for {capacity} totals", pairs.len()),
            ));
        }
        let kept = tails.len().min(capacity - pairs.len());
        tails.sort_unstable_by(|a, b| b.cmp(a));
        let overflow = tails.len() - kept;
        for (i, &(t, v)) in tails.iter().enumerate() {
            let total = if i < overflow {
                3 * s + t
            } else {
                2 * s + 1 + t
            };
            self.place(v, total, Phase::MidRange)?;
        }
        for v in pairs {
            self.place_lowest_free(v, 2 * s + 2, 3 * s, Phase::MidRange)?;
        }
        Ok(())
    }

    /// Vertices whose edge sum is `3s + t`: with a tail they take label `s`
    /// (total `4s + t`), without one they fill free totals in `[3s + 1, 4s]`.
    pub fn weight_highrange(&mut self) -> Result<(), ConstructionError> {
        let s = self.s;
        let band = self.band(3, 3);
        for &(v, t) in &band {
            if let Some(t) = t {
                self.place(v, 4 * s + t, Phase::HighRange)?;
            }
        }
        for &(v, t) in &band {
            if t.is_none() {
                self.place_lowest_free(v, 3 * s + 1, 4 * s, Phase::HighRange)?;
            }
        }
        Ok(())
    }

    /// Every remaining vertex, by ascending edge sum, takes the smallest free
    /// total in `[base + 1, base + s]`.
    pub fn weight_toprange(&mut self) -> Result<(), ConstructionError> {
        let s = self.s;
        let mut rest: Vec<(u32, usize)> = (0..self.forest.n())
            .filter(|&v| self.vertex_labels[v].is_none())
            .filter_map(|v| self.decomposition[v].map(|d| (d.base(s), v)))
            .collect();
        rest.sort_unstable();
        for (base, v) in rest {
            self.place_lowest_free(v, base + 1, base + s, Phase::TopRange)?;
        }
        Ok(())
    }

    pub fn finish(self) -> Result<TotalWeighting, ConstructionError> {
        let edge_labels = self
            .edge_labels
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| {
                ConstructionError::infeasible(Phase::EdgeLabels, "unlabeled edge at finish")
            })?;
        let vertex_labels = match self.vertex_labels.iter().position(Option::is_none) {
            Some(v) => {
                return Err(ConstructionError::infeasible(
                    Phase::TopRange,
                    format!("vertex {v} left unlabeled"),
                ))
            }
            None => self.vertex_labels.into_iter().flatten().collect(),
        };
        Ok(TotalWeighting {
            s: self.s,
            edge_labels,
            vertex_labels,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::verify;

    fn star(leaves: usize) -> Forest {
        Forest::new(leaves + 1, (1..=leaves).map(|v| (0, v))).unwrap()
    }

    fn k2() -> Forest {
        Forest::new(2, [(0, 1)]).unwrap()
    }

    fn p3() -> Forest {
        Forest::new(3, [(0, 1), (1, 2)]).unwrap()
    }

    /// Vertices 0 and 1 adjacent; 0 has leaves 2, 3 and 1 has leaves 4, 5.
    fn double_star() -> Forest {
        Forest::new(6, [(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)]).unwrap()
    }

    fn spider() -> Forest {
        Forest::new(
            10,
            [
                (0, 1),
                (0, 2),
                (0, 3),
                (1, 4),
                (1, 5),
                (2, 6),
                (2, 7),
                (3, 8),
                (3, 9),
            ],
        )
        .unwrap()
    }

    fn run_through(state: &mut LabelingState<'_>, last: Phase) {
        state.assign_edge_labels().unwrap();
        if last == Phase::EdgeLabels {
            return;
        }
        state.weight_pendant_vertices().unwrap();
        if last == Phase::PendantVertices {
            return;
        }
        for v in state.degree_two_vertices() {
            state.weight_degree_two_vertex(v).unwrap();
        }
        state.weight_midrange().unwrap();
        if last == Phase::MidRange {
            return;
        }
        state.weight_highrange().unwrap();
        if last == Phase::HighRange {
            return;
        }
        state.weight_toprange().unwrap();
    }

    fn totals(f: &Forest, mode: Mode) -> Vec<u64> {
        let tw = construct(f, mode).unwrap();
        let mut t = verify(f, &tw, tw.s).unwrap().weighted_degrees;
        t.sort_unstable();
        t
    }

    #[test]
    fn variants_for_stars() {
        let f = star(5);
        let state = LabelingState::new(&f, Mode::Theorem1).unwrap();
        assert_eq!(state.s(), 3);
        assert_eq!(state.plan().variants.get(&0), Some(&Variant::More));
        assert_eq!(state.plan().pendant_s_count, 3);

        let f = star(3);
        let state = LabelingState::new(&f, Mode::Theorem1).unwrap();
        assert_eq!(state.s(), 2);
        assert_eq!(state.plan().variants.get(&0), Some(&Variant::More));
        assert_eq!(state.plan().pendant_s_count, 2);

        let f = double_star();
        let state = LabelingState::new(&f, Mode::Theorem1).unwrap();
        assert!(state.plan().variants.is_empty());
        assert_eq!(state.plan().pendant_s_count, 2);
    }

    #[test]
    fn edge_labels_double_star() {
        let f = double_star();
        let mut state = LabelingState::new(&f, Mode::Theorem1).unwrap();
        run_through(&mut state, Phase::EdgeLabels);
        assert_eq!(state.edge_label(0, 1), Some(3));
        assert_eq!(
            (state.edge_label(0, 2), state.edge_label(0, 3)),
            (Some(3), Some(2))
        );
        assert_eq!(
            (state.edge_label(1, 4), state.edge_label(1, 5)),
            (Some(3), Some(1))
        );
        assert_eq!(
            state.decomposition(0),
            Some(BaseDecomposition {
                multiples: 2,
                tail: Some(2)
            })
        );
    }

    #[test]
    fn edge_labels_k14_use_a_front_pair() {
        let f = star(4);
        let mut state = LabelingState::new(&f, Mode::Theorem1).unwrap();
        run_through(&mut state, Phase::EdgeLabels);
        let labels: Vec<u32> = (1..=4).map(|v| state.edge_label(0, v).unwrap()).collect();
        assert_eq!(labels, vec![3, 3, 1, 2]);
        assert_eq!(state.decomposition(0).unwrap().base(3), 9);
    }

    #[test]
    fn isolated_edges_do_not_touch_the_pool() {
        let f = k2().disjoint_union(&k2()).disjoint_union(&k2());
        let mut state = LabelingState::new(&f, Mode::Theorem1).unwrap();
        assert_eq!(state.s(), 4);
        run_through(&mut state, Phase::EdgeLabels);
        let labels: Vec<u32> = f
            .edges()
            .iter()
            .map(|&(u, v)| state.edge_label(u, v).unwrap())
            .collect();
        assert_eq!(labels, vec![1, 4, 4]);
        assert_eq!(state.pool().remaining(), 3);
    }

    #[test]
    fn pendant_totals() {
        let f = double_star();
        let mut state = LabelingState::new(&f, Mode::Theorem1).unwrap();
        run_through(&mut state, Phase::PendantVertices);
        // Leaves 3 and 5 sit on pool values 2 and 1; leaves 2 and 4 on s-edges.
        let t: Vec<u32> = [5, 3, 2, 4]
            .iter()
            .map(|&v| state.total(v).unwrap())
            .collect();
        assert_eq!(t, vec![2, 3, 4, 5]);

        let f = k2();
        let mut state = LabelingState::new(&f, Mode::Theorem1).unwrap();
        run_through(&mut state, Phase::PendantVertices);
        assert_eq!((state.total(0), state.total(1)), (Some(3), Some(4)));
        assert_eq!(
            (state.vertex_label(0), state.vertex_label(1)),
            (Some(1), Some(2))
        );
    }

    #[test]
    fn claw_plus_k2_uses_a_front_pair() {
        let f = star(3).disjoint_union(&k2());
        let mut state = LabelingState::new(&f, Mode::Theorem1).unwrap();
        assert_eq!(state.s(), 3);
        assert_eq!(state.plan().variants.get(&0), Some(&Variant::Fewer));
        // One s-edge at the centre and both ends of the isolated edge.
        assert_eq!(state.plan().pendant_s_count, 3);
        run_through(&mut state, Phase::TopRange);
        let t: Vec<u32> = (0..6).map(|v| state.total(v).unwrap()).collect();
        assert_eq!(t, vec![8, 4, 2, 3, 5, 6]);
    }

    #[test]
    fn midrange_examples() {
        let f = double_star();
        let mut state = LabelingState::new(&f, Mode::Theorem1).unwrap();
        run_through(&mut state, Phase::MidRange);
        assert_eq!((state.total(0), state.total(1)), (Some(9), Some(8)));

        let f = star(3);
        let mut state = LabelingState::new(&f, Mode::Theorem1).unwrap();
        run_through(&mut state, Phase::MidRange);
        assert_eq!(state.decomposition(0).unwrap().base(2), 5);
        assert_eq!(state.total(0), Some(6));

        // Three claws, s = 5: the first centre takes a front pair and fills
        // 2s + 2 with label 2; the others carry tails 3 and 2.
        let f = star(3).disjoint_union(&star(3)).disjoint_union(&star(3));
        let mut state = LabelingState::new(&f, Mode::Theorem1).unwrap();
        assert_eq!(state.s(), 5);
        run_through(&mut state, Phase::MidRange);
        assert_eq!(state.decomposition(0).unwrap().tail, None);
        assert_eq!((state.total(0), state.vertex_label(0)), (Some(12), Some(2)));
        assert_eq!((state.total(4), state.total(8)), (Some(14), Some(13)));
    }

    #[test]
    fn midrange_totals_stay_in_band_or_overflow_slot() {
        // Every 2s-base total lies in [2s + 2, 3s] or equals 3s + tail.
        let f = spider()
            .disjoint_union(&double_star())
            .disjoint_union(&star(3));
        let mut state = LabelingState::new(&f, Mode::Theorem1).unwrap();
        let s = state.s();
        run_through(&mut state, Phase::MidRange);
        for v in 0..f.n() {
            let Some(d) = state.decomposition(v) else {
                continue;
            };
            if d.multiples != 2 || f.degree(v) != 3 {
                continue;
            }
            let t = state.total(v).unwrap();
            let in_band = (2 * s + 2..=3 * s).contains(&t);
            let overflow = d.tail.is_some_and(|e| t == 3 * s + e);
            assert!(in_band || overflow, "vertex {v} total {t}");
        }
    }

    #[test]
    fn highrange_examples() {
        let f = spider();
        let mut state = LabelingState::new(&f, Mode::Theorem1).unwrap();
        assert_eq!(state.s(), 4);
        run_through(&mut state, Phase::HighRange);
        assert_eq!(state.decomposition(0).unwrap().base(4), 12);
        assert_eq!(state.total(0), Some(13));

        let f = star(4);
        let mut state = LabelingState::new(&f, Mode::Theorem1).unwrap();
        run_through(&mut state, Phase::HighRange);
        assert_eq!(state.total(0), Some(10));

        // Centres 0 and 1 of degree 4 with two leaves each: each has one tail
        // value t and lands at 4s + t with label s.
        let f = Forest::new(
            10,
            [
                (0, 1),
                (0, 2),
                (0, 4),
                (0, 5),
                (1, 3),
                (1, 6),
                (1, 7),
                (2, 8),
                (2, 9),
            ],
        );
        let f = f.unwrap();
        let mut state = LabelingState::new(&f, Mode::Any).unwrap();
        run_through(&mut state, Phase::HighRange);
        let s = state.s();
        for v in [0, 1] {
            let d = state.decomposition(v).unwrap();
            assert_eq!(d.multiples, 3);
            let t = d.tail.unwrap();
            assert_eq!(state.vertex_label(v), Some(s));
            assert_eq!(state.total(v), Some(4 * s + t));
        }
    }

    #[test]
    fn toprange_examples() {
        let f = star(5);
        let mut state = LabelingState::new(&f, Mode::Theorem1).unwrap();
        run_through(&mut state, Phase::TopRange);
        assert_eq!(state.decomposition(0).unwrap().base(3), 12);
        assert_eq!(state.total(0), Some(13));

        let f = star(7);
        let mut state = LabelingState::new(&f, Mode::Theorem1).unwrap();
        assert_eq!(state.s(), 4);
        run_through(&mut state, Phase::TopRange);
        assert_eq!(state.decomposition(0).unwrap().base(4), 22);
        assert_eq!(state.total(0), Some(23));
    }

    #[test]
    fn toprange_skips_taken_totals() {
        // Vertex 10 has four non-pendant neighbours (base 4s); vertex 0 sorts
        // first with the same base and takes 4s + 1.
        let f = Forest::parse(
            r#"{"n":15,"edges":[[0,1],[0,4],[0,10],[0,11],[0,13],[2,5],[3,8],[3,10],[3,12],[5,6],[5,10],[7,14],[9,14],[10,14]]}"#,
            crate::forest::Format::Json,
        )
        .unwrap();
        let mut state = LabelingState::new(&f, Mode::Theorem1).unwrap();
        assert_eq!(state.s(), 6);
        run_through(&mut state, Phase::TopRange);
        assert_eq!(state.table().class_of[10], (4, 0));
        assert_eq!(state.decomposition(10).unwrap().base(6), 24);
        assert_eq!(state.total(0), Some(25));
        assert_eq!(state.total(10), Some(26));
    }

    #[test]
    fn degree_two_vertex_gets_reserved_total() {
        let f = p3();
        let mut state = LabelingState::new(&f, Mode::Theorem2).unwrap();
        assert_eq!(state.plan().forced_s_edges, vec![(0, 1), (1, 2)]);
        run_through(&mut state, Phase::TopRange);
        assert_eq!(
            (state.edge_label(0, 1), state.edge_label(1, 2)),
            (Some(2), Some(2))
        );
        assert_eq!((state.vertex_label(1), state.total(1)), (Some(1), Some(5)));
        assert_eq!((state.total(0), state.total(2)), (Some(3), Some(4)));

        // A degree-2 vertex with one pendant neighbour: 0 - 1 - claw centre 2.
        let f = Forest::new(6, [(0, 1), (1, 2), (2, 3), (2, 4), (2, 5)]).unwrap();
        let mut state = LabelingState::new(&f, Mode::Theorem2).unwrap();
        assert_eq!(state.plan().forced_s_edges, vec![(0, 1)]);
        run_through(&mut state, Phase::TopRange);
        let s = state.s();
        assert_eq!(state.edge_label(0, 1), Some(s));
        assert_eq!(state.total(1), Some(2 * s + 1));
    }

    #[test]
    fn degree_two_falls_back_when_forcing_overflows() {
        let f = p3().disjoint_union(&k2());
        let mut state = LabelingState::new(&f, Mode::Theorem2).unwrap();
        assert_eq!(state.s(), 3);
        assert!(state.plan().forced_s_edges.is_empty());
        run_through(&mut state, Phase::TopRange);
        assert_eq!(state.total(1), Some(7));
        let tw = state.finish().unwrap();
        assert!(verify(&f, &tw, 3).unwrap().valid);
    }

    #[test]
    fn degree_two_phase_rejects_wrong_mode() {
        let f = star(3);
        let mut state = LabelingState::new(&f, Mode::Theorem1).unwrap();
        state.assign_edge_labels().unwrap();
        assert!(matches!(
            state.weight_degree_two_vertex(0),
            Err(ConstructionError::Infeasible {
                phase: Phase::DegreeTwo,
                ..
            })
        ));
    }

    #[test]
    fn golden_constructions() {
        assert_eq!(totals(&double_star(), Mode::Any), vec![2, 3, 4, 5, 8, 9]);
        assert_eq!(totals(&star(4), Mode::Any), vec![2, 3, 4, 5, 10]);
        assert_eq!(totals(&p3(), Mode::Any), vec![3, 4, 5]);
        assert_eq!(
            totals(&spider(), Mode::Any),
            vec![2, 3, 4, 5, 6, 7, 10, 11, 12, 13]
        );
    }

    #[test]
    fn scope_violations() {
        assert!(matches!(
            construct(&p3(), Mode::Theorem1),
            Err(ConstructionError::OutOfScope(_))
        ));
        let p4 = Forest::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert!(matches!(
            construct(&p4, Mode::Any),
            Err(ConstructionError::OutOfScope(_))
        ));
        let with_isolated = Forest::new(5, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert!(matches!(
            construct(&with_isolated, Mode::Any),
            Err(ConstructionError::OutOfScope(_))
        ));
    }

    #[test]
    fn labeling_json_round_trip() {
        let f = double_star();
        let tw = construct(&f, Mode::Any).unwrap();
        let text = tw.to_json(&f, Some(Mode::Theorem1));
        let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(doc["s"], 3);
        assert_eq!(doc["mode"], "theorem1");
        assert_eq!(
            doc["edge_labels"][0],
            serde_json::json!({"u": 0, "v": 1, "w": 3})
        );
        assert_eq!(TotalWeighting::from_json(&text, &f).unwrap(), tw);

        let missing =
            r#"{"s":3,"edge_labels":[{"u":0,"v":1,"w":3}],"vertex_labels":[1,1,1,1,1,1]}"#;
        assert_eq!(
            TotalWeighting::from_json(missing, &f),
            Err(LabelingError::MissingEdge(0, 2))
        );
        let unknown =
            r#"{"s":3,"edge_labels":[{"u":2,"v":3,"w":3}],"vertex_labels":[1,1,1,1,1,1]}"#;
        assert_eq!(
            TotalWeighting::from_json(unknown, &f),
            Err(LabelingError::UnknownEdge(2, 3))
        );
    }
}
