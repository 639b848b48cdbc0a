//! Exhaustive backtracking for the exact total vertex irregularity strength
//! of small forests. Shares nothing with the constructor beyond [`Forest`].

use crate::classify::bounds;
use crate::error::SolverError;
use crate::forest::Forest;
use crate::labeler::TotalWeighting;

pub const DEFAULT_GUARD: usize = 14;

#[derive(Debug, Clone, Copy)]
enum Step {
    /// Label edge `idx` to child `child`. `sibling` is the edge index of the
    /// previous leaf sibling, whose label bounds this one from below.
    Edge {
        idx: usize,
        child: usize,
        sibling: Option<usize>,
    },
    /// Label vertex `v`; all its edges are labeled by now. `sibling` is the
    /// previous leaf sibling and the pair's shared parent edges.
    Vertex {
        v: usize,
        sibling: Option<(usize, usize, usize)>,
    },
}

/// Search order: components smallest first, each in DFS preorder from a
/// non-leaf root; a vertex's child edges are labeled before the vertex.
fn schedule(f: &Forest) -> Vec<Step> {
    let mut parts = f.components();
    parts.sort_by_key(|p| (p.len(), p[0]));
    let mut steps = Vec::with_capacity(f.n() + f.m());
    for part in parts {
        let root = part
            .iter()
            .copied()
            .find(|&v| f.degree(v) >= 2)
            .unwrap_or(part[0]);
        let mut stack = vec![(root, usize::MAX, None)];
        while let Some((v, parent, vertex_sibling)) = stack.pop() {
            steps.push(Step::Vertex {
                v,
                sibling: vertex_sibling,
            });
            // Child edges go before the vertex itself.
            let children: Vec<usize> = f
                .neighbors(v)
                .iter()
                .copied()
                .filter(|&w| w != parent)
                .collect();
            let mut edge_steps = Vec::new();
            let mut prev_leaf: Option<(usize, usize)> = None;
            let mut pushes = Vec::new();
            for &c in &children {
                let idx = f.edge_index(v, c).expect("edge");
                let is_leaf = f.degree(c) == 1;
                let sibling = if is_leaf {
                    prev_leaf.map(|(_, e)| e)
                } else {
                    None
                };
                edge_steps.push(Step::Edge {
                    idx,
                    child: c,
                    sibling,
                });
                let vs = if is_leaf {
                    prev_leaf.map(|(pv, pe)| (pv, pe, idx))
                } else {
                    None
                };
                pushes.push((c, v, vs));
                if is_leaf {
                    prev_leaf = Some((c, idx));
                }
            }
            let vertex_step = steps.pop().expect("just pushed");
            steps.extend(edge_steps);
            steps.push(vertex_step);
            for p in pushes.into_iter().rev() {
                stack.push(p);
            }
        }
    }
    steps
}

struct Search<'a> {
    f: &'a Forest,
    s: u32,
    steps: Vec<Step>,
    edge: Vec<u32>,
    vertex: Vec<u32>,
    sum: Vec<u32>,
    used: Vec<bool>,
}

impl Search<'_> {
    fn run(&mut self, at: usize) -> bool {
        let Some(&step) = self.steps.get(at) else {
            return true;
        };
        match step {
            Step::Edge {
                idx,
                child,
                sibling,
            } => {
                let (u, v) = self.f.edges()[idx];
                let lo = sibling.map_or(1, |e| self.edge[e]);
                let leaf = self.f.degree(child) == 1;
                for label in lo..=self.s {
                    // A leaf child's total ranges over label+1..=label+s.
                    if leaf && (label + 1..=label + self.s).all(|t| self.used[t as usize]) {
                        continue;
                    }
                    self.edge[idx] = label;
                    self.sum[u] += label;
                    self.sum[v] += label;
                    let found = self.run(at + 1);
                    self.sum[u] -= label;
                    self.sum[v] -= label;
                    if found {
                        return true;
                    }
                }
                self.edge[idx] = 0;
                false
            }
            Step::Vertex { v, sibling } => {
                let lo = match sibling {
                    Some((pv, pe, e)) if self.edge[pe] == self.edge[e] => self.vertex[pv] + 1,
                    _ => 1,
                };
                for label in lo..=self.s {
                    let total = (self.sum[v] + label) as usize;
                    if self.used[total] {
                        continue;
                    }
                    self.used[total] = true;
                    self.vertex[v] = label;
                    if self.run(at + 1) {
                        return true;
                    }
                    self.used[total] = false;
                }
                self.vertex[v] = 0;
                false
            }
        }
    }
}

/// Backtracking solver with an instance-size guard.
#[derive(Debug, Clone, Copy)]
pub struct Solver {
    pub guard: usize,
}

impl Default for Solver {
    fn default() -> Self {
        Solver {
            guard: DEFAULT_GUARD,
        }
    }
}

impl Solver {
    pub fn new(guard: usize) -> Self {
        Solver { guard }
    }

    /// An irregular total weighting with labels in `1..=s`, if one exists.
    pub fn feasible(&self, f: &Forest, s: u32) -> Result<Option<TotalWeighting>, SolverError> {
        if f.n() > self.guard {
            return Err(SolverError::TooLarge {
                n: f.n(),
                guard: self.guard,
            });
        }
        if s == 0 {
            return Ok(None);
        }
        let max_total = (f.degrees().into_iter().max().unwrap_or(0) as u32 + 1) * s;
        let mut search = Search {
            f,
            s,
            steps: schedule(f),
            edge: vec![0; f.m()],
            vertex: vec![0; f.n()],
            sum: vec![0; f.n()],
            used: vec![false; max_total as usize + s as usize + 2],
        };
        let found = search.run(0);
        Ok(found.then_some(TotalWeighting {
            s,
            edge_labels: search.edge,
            vertex_labels: search.vertex,
        }))
    }

    /// Smallest `s` with a witness, searching upward from the known lower
    /// bounds. `cap` defaults to the general upper bound `n + Delta - 2 delta + 1`.
    pub fn exact_tvs(
        &self,
        f: &Forest,
        cap: Option<u32>,
    ) -> Result<(u32, TotalWeighting), SolverError> {
        let start = start_bound(f);
        let cap = cap.unwrap_or_else(|| bounds(f).upper_general);
        self.search_from(f, start, cap)
    }

    /// Smallest `s` in `start..=cap` with a witness.
    pub fn search_from(
        &self,
        f: &Forest,
        start: u32,
        cap: u32,
    ) -> Result<(u32, TotalWeighting), SolverError> {
        for s in start.max(1)..=cap {
            if let Some(w) = self.feasible(f, s)? {
                return Ok((s, w));
            }
        }
        Err(SolverError::CapExceeded { cap })
    }
}

/// The general lower bound, raised to the pendant bound when the forest has
/// no isolated vertex and at most one vertex of degree two.
pub fn start_bound(f: &Forest) -> u32 {
    let b = bounds(f);
    let degrees = f.degrees();
    let in_scope = !degrees.contains(&0) && degrees.iter().filter(|&&d| d == 2).count() <= 1;
    if in_scope {
        b.lower_general.max(b.lower_pendant)
    } else {
        b.lower_general
    }
}

pub fn feasible(f: &Forest, s: u32) -> Result<Option<TotalWeighting>, SolverError> {
    Solver::default().feasible(f, s)
}

pub fn exact_tvs(f: &Forest, cap: Option<u32>) -> Result<(u32, TotalWeighting), SolverError> {
    Solver::default().exact_tvs(f, cap)
}
