//! Degree census, pendant-neighbour classes and the known bounds on the
//! total vertex irregularity strength.

use std::collections::BTreeMap;

use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

use crate::error::ClassifyError;
use crate::forest::Forest;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeCensus {
    /// Degree -> vertices of that degree, ascending.
    pub by_degree: BTreeMap<usize, Vec<usize>>,
    pub max_degree: usize,
    pub min_degree: usize,
}

impl DegreeCensus {
    /// Number of vertices of degree `d`.
    pub fn count(&self, d: usize) -> usize {
        self.by_degree.get(&d).map_or(0, Vec::len)
    }

    pub fn vertices(&self, d: usize) -> &[usize] {
        self.by_degree.get(&d).map_or(&[], Vec::as_slice)
    }
}

/// Vertices grouped by `(degree, number of pendant neighbours)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassTable {
    /// `(k, j)` -> vertices of degree `k` with exactly `j` pendant neighbours.
    pub classes: BTreeMap<(usize, usize), Vec<usize>>,
    /// `(k, j)` of every vertex, indexed by vertex id.
    pub class_of: Vec<(usize, usize)>,
    pub pendant_vertices: Vec<usize>,
    /// Edges with at least one pendant endpoint.
    pub pendant_edges: Vec<(usize, usize)>,
    /// `K2` components; both endpoints are pendant.
    pub isolated_edges: Vec<(usize, usize)>,
}

impl ClassTable {
    pub fn n1(&self) -> usize {
        self.pendant_vertices.len()
    }

    pub fn count(&self, k: usize, j: usize) -> usize {
        self.classes.get(&(k, j)).map_or(0, Vec::len)
    }

    pub fn class(&self, k: usize, j: usize) -> &[usize] {
        self.classes.get(&(k, j)).map_or(&[], Vec::as_slice)
    }

    pub fn is_isolated_edge(&self, u: usize, v: usize) -> bool {
        self.class_of[u] == (1, 1) && self.class_of[v] == (1, 1)
    }
}

impl Serialize for ClassTable {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        struct Classes<'a>(&'a BTreeMap<(usize, usize), Vec<usize>>);
        impl Serialize for Classes<'_> {
            fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
                let mut map = serializer.serialize_map(Some(self.0.len()))?;
                for ((k, j), vs) in self.0 {
                    map.serialize_entry(&format!("{k},{j}"), vs)?;
                }
                map.end()
            }
        }
        let mut map = serializer.serialize_map(Some(3))?;
        map.serialize_entry("n1", &self.n1())?;
        map.serialize_entry("classes", &Classes(&self.classes))?;
        map.serialize_entry("isolated_edges", &self.isolated_edges)?;
        map.end()
    }
}

pub fn classify(f: &Forest) -> (DegreeCensus, ClassTable) {
    let degrees = f.degrees();
    let mut by_degree: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (v, &d) in degrees.iter().enumerate() {
        by_degree.entry(d).or_default().push(v);
    }
    let census = DegreeCensus {
        max_degree: degrees.iter().copied().max().unwrap_or(0),
        min_degree: degrees.iter().copied().min().unwrap_or(0),
        by_degree,
    };

    let mut classes: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    let mut class_of = Vec::with_capacity(f.n());
    for v in 0..f.n() {
        let j = f.neighbors(v).iter().filter(|&&w| degrees[w] == 1).count();
        let key = (degrees[v], j);
        class_of.push(key);
        if degrees[v] > 0 {
            classes.entry(key).or_default().push(v);
        }
    }
    let pendant_vertices = census.vertices(1).to_vec();
    let pendant_edges: Vec<(usize, usize)> = f
        .edges()
        .iter()
        .copied()
        .filter(|&(u, v)| degrees[u] == 1 || degrees[v] == 1)
        .collect();
    let isolated_edges = pendant_edges
        .iter()
        .copied()
        .filter(|&(u, v)| degrees[u] == 1 && degrees[v] == 1)
        .collect();
    let table = ClassTable {
        classes,
        class_of,
        pendant_vertices,
        pendant_edges,
        isolated_edges,
    };
    (census, table)
}

/// Smallest admissible label bound for a forest with `n1` pendant vertices:
/// `ceil((n1 + 1) / 2)`.
pub fn strength_target(n1: usize) -> Result<u32, ClassifyError> {
    if n1 < 2 {
        return Err(ClassifyError::TooFewPendants(n1));
    }
    Ok((n1 + 1).div_ceil(2) as u32)
}

fn ceil_div(a: usize, b: usize) -> usize {
    a.div_ceil(b)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    /// Number of pendant vertices.
    pub pendants: usize,
    /// `2 + sum_{d >= 3} (d - 2) * n_d`.
    pub predicted: usize,
    pub holds: bool,
}

/// Pendant count of a tree against `2 + sum (d - 2) n_d` over degrees `d >= 3`.
pub fn degree_identity_check(tree: &Forest) -> Result<IdentityCheck, ClassifyError> {
    if tree.n() < 2 || !tree.is_tree() {
        return Err(ClassifyError::NotATree);
    }
    let degrees = tree.degrees();
    let pendants = degrees.iter().filter(|&&d| d == 1).count();
    let predicted = 2 + degrees
        .iter()
        .filter(|&&d| d >= 3)
        .map(|&d| d - 2)
        .sum::<usize>();
    Ok(IdentityCheck {
        pendants,
        predicted,
        holds: pendants == predicted,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StructuralCheck {
    /// `2 n30 + n43 + 2 n44`.
    pub lhs: i64,
    pub n1: i64,
    /// `lhs <= n1 - 2`.
    pub weak_holds: bool,
    /// `lhs <= n1 - 3`.
    pub strict_holds: bool,
    /// The forest is `K_{1,4}` or `P_3`.
    pub equality_case: bool,
}

/// Evaluates `2 n30 + n43 + 2 n44` against `n1 - 2` and `n1 - 3`.
///
/// Requires `n >= 3`, at most one vertex of degree two and no isolated
/// vertices.
pub fn structural_inequality_check(f: &Forest) -> Result<StructuralCheck, ClassifyError> {
    let (census, table) = classify(f);
    if f.n() < 3 {
        return Err(ClassifyError::Precondition(format!("n = {} < 3", f.n())));
    }
    if census.count(2) > 1 {
        return Err(ClassifyError::Precondition(format!(
            "{} vertices of degree two",
            census.count(2)
        )));
    }
    if census.count(0) > 0 {
        return Err(ClassifyError::Precondition(
            "isolated vertex present".into(),
        ));
    }
    let lhs = (2 * table.count(3, 0) + table.count(4, 3) + 2 * table.count(4, 4)) as i64;
    let n1 = table.n1() as i64;
    let mut degree_sequence = f.degrees();
    degree_sequence.sort_unstable();
    // Among forests, K_{1,4} and P_3 are determined by vertex count and degree multiset.
    let equality_case = degree_sequence == [1, 1, 1, 1, 4] || degree_sequence == [1, 1, 2];
    Ok(StructuralCheck {
        lhs,
        n1,
        weak_holds: lhs <= n1 - 2,
        strict_holds: lhs <= n1 - 3,
        equality_case,
    })
}

/// Known bounds on `tvs`. Bounds whose hypotheses fail are `None`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    /// `ceil((n + delta) / (Delta + 1))`, valid for every graph.
    pub lower_general: u32,
    /// `n + Delta - 2 delta + 1`, valid for every graph.
    pub upper_general: u32,
    /// `ceil(3n / delta) + 1`, needs `delta >= 1`.
    pub upper_min_degree: Option<u32>,
    /// `ceil((n1 + 1) / 2)`: pendant weighted degrees lie in `[2, 2s]`.
    pub lower_pendant: u32,
    /// `n1`, for trees on at least two vertices without degree-2 vertices.
    pub upper_tree: Option<u32>,
}

pub fn bounds(f: &Forest) -> BoundsReport {
    let (census, table) = classify(f);
    let n = f.n();
    let (max_d, min_d) = (census.max_degree, census.min_degree);
    let n1 = table.n1();
    BoundsReport {
        lower_general: ceil_div(n + min_d, max_d + 1) as u32,
        upper_general: (n + max_d + 1 - 2 * min_d) as u32,
        upper_min_degree: (min_d >= 1).then(|| (ceil_div(3 * n, min_d) + 1) as u32),
        lower_pendant: ceil_div(n1 + 1, 2) as u32,
        upper_tree: (f.is_tree() && n >= 2 && census.count(2) == 0).then_some(n1 as u32),
    }
}
