//! Forest representation, parsing and validation.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{ForestError, ParseError};

/// Input/output text formats for forests.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Edgelist,
}

impl Format {
    /// Guesses the format from the first non-blank character.
    pub fn detect(text: &str) -> Format {
        match text.trim_start().chars().next() {
            Some('{') => Format::Json,
            _ => Format::Edgelist,
        }
    }
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(Format::Json),
            "edgelist" => Ok(Format::Edgelist),
            other => Err(format!("unknown format `{other}`")),
        }
    }
}

/// Which hypothesis set a forest is checked against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// No isolated vertices and no vertices of degree two.
    Theorem1,
    /// No isolated vertices and at most one vertex of degree two.
    Theorem2,
    /// Forest-ness only.
    Any,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Theorem1 => "theorem1",
            Mode::Theorem2 => "theorem2",
            Mode::Any => "any",
        })
    }
}

/// A simple acyclic undirected graph on vertices `0..n`.
///
/// Edges are stored normalized as `(u, v)` with `u < v` and sorted
/// lexicographically, so edge indices are stable for a given edge set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Forest {
    n: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct ForestJson {
    n: usize,
    edges: Vec<[usize; 2]>,
}

impl Forest {
    pub fn new(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, ForestError> {
        if n == 0 {
            return Err(ForestError::Empty);
        }
        let mut normalized = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(ForestError::VertexOutOfRange { u, v, n });
            }
            if u == v {
                return Err(ForestError::SelfLoop(u));
            }
            normalized.push((u.min(v), u.max(v)));
        }

        // Union-find in input order so the reported cycle edge is the first
        // one that closes a cycle.
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut seen = std::collections::HashSet::with_capacity(normalized.len());
        for &(u, v) in &normalized {
            if !seen.insert((u, v)) {
                return Err(ForestError::DuplicateEdge(u, v));
            }
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            if ru == rv {
                return Err(ForestError::Cycle(u, v));
            }
            parent[ru] = rv;
        }

        normalized.sort_unstable();
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in &normalized {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Forest {
            n,
            edges: normalized,
            adjacency,
        })
    }

    pub fn parse(text: &str, format: Format) -> Result<Self, ParseError> {
        match format {
            Format::Json => Self::parse_json(text),
            Format::Edgelist => Self::parse_edgelist(text),
        }
    }

    fn parse_json(text: &str) -> Result<Self, ParseError> {
        let raw: ForestJson = serde_json::from_str(text).map_err(|e| ParseError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        Ok(Forest::new(
            raw.n,
            raw.edges.into_iter().map(|[u, v]| (u, v)),
        )?)
    }

    fn parse_edgelist(text: &str) -> Result<Self, ParseError> {
        let mut header: Option<usize> = None;
        let mut edges = Vec::new();
        for (idx, raw_line) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = match raw_line.find('#') {
                Some(pos) => &raw_line[..pos],
                None => raw_line,
            };
            let trimmed = line.trim();
            if trimmed.is_empty() {
                continue;
            }
            let column = line.len() - line.trim_start().len() + 1;
            let syntax = |message: String| ParseError::Syntax {
                line: line_no,
                column,
                message,
            };
            if let Some(rest) = trimmed.strip_prefix("n=") {
                if header.is_some() {
                    return Err(syntax("repeated `n=` header".into()));
                }
                let n = rest
                    .trim()
                    .parse::<usize>()
                    .map_err(|e| syntax(format!("bad vertex count `{}`: {e}", rest.trim())))?;
                header = Some(n);
                continue;
            }
            let fields: Vec<&str> = trimmed.split_whitespace().collect();
            if fields.len() != 2 {
                return Err(syntax(format!("expected `u v`, found `{trimmed}`")));
            }
            let mut ids = [0usize; 2];
            for (slot, field) in ids.iter_mut().zip(&fields) {
                *slot = field
                    .parse()
                    .map_err(|_| syntax(format!("`{field}` is not a vertex id")))?;
            }
            edges.push((ids[0], ids[1]));
        }
        let n = match header {
            Some(n) => n,
            None => edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0),
        };
        Ok(Forest::new(n, edges)?)
    }

    pub fn to_json(&self) -> String {
        let raw = ForestJson {
            n: self.n,
            edges: self.edges.iter().map(|&(u, v)| [u, v]).collect(),
        };
        serde_json::to_string(&raw).expect("forest serializes")
    }

    /// Edge list with an explicit `n=` header, so trailing isolated vertices
    /// survive a round trip.
    pub fn to_edgelist(&self) -> String {
        let mut out = format!("n={}\n", self.n);
        for (u, v) in &self.edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    pub fn serialize(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Edgelist => self.to_edgelist(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub(crate) fn adjacency(&self) -> &[Vec<usize>] {
        &self.adjacency
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    pub fn is_pendant(&self, v: usize) -> bool {
        self.degree(v) == 1
    }

    /// Index of the edge `{u, v}` in [`Forest::edges`].
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.binary_search(&(u.min(v), u.max(v))).ok()
    }

    /// Vertex sets of the connected components, each sorted ascending, ordered
    /// by smallest vertex id.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut parts = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut part = vec![start];
            let mut stack = vec![start];
            while let Some(u) = stack.pop() {
                for &w in &self.adjacency[u] {
                    if !seen[w] {
                        seen[w] = true;
                        part.push(w);
                        stack.push(w);
                    }
                }
            }
            part.sort_unstable();
            parts.push(part);
        }
        parts
    }

    pub fn is_tree(&self) -> bool {
        self.m() + 1 == self.n
    }

    /// The subforest induced by `vertices`, relabeled to `0..vertices.len()`
    /// in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Forest {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| index[u] != usize::MAX && index[v] != usize::MAX)
            .map(|&(u, v)| (index[u], index[v]));
        Forest::new(vertices.len(), edges).expect("induced subgraph of a forest is a forest")
    }

    /// Disjoint union; the vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Forest) -> Forest {
        let shift = self.n;
        let edges = self
            .edges
            .iter()
            .copied()
            .chain(other.edges.iter().map(|&(u, v)| (u + shift, v + shift)));
        Forest::new(self.n + other.n, edges).expect("union of forests is a forest")
    }

    /// Relabels vertex `v` to `perm[v]`.
    pub fn relabeled(&self, perm: &[usize]) -> Forest {
        assert_eq!(perm.len(), self.n, "permutation length");
        Forest::new(self.n, self.edges.iter().map(|&(u, v)| (perm[u], perm[v])))
            .expect("relabeling preserves forest-ness")
    }

    pub fn validate(&self, mode: Mode) -> ValidationReport {
        let degrees = self.degrees();
        let isolated: Vec<usize> = (0..self.n).filter(|&v| degrees[v] == 0).collect();
        let degree_two: Vec<usize> = (0..self.n).filter(|&v| degrees[v] == 2).collect();
        let mut violations = Vec::new();
        let allowed_degree_two = match mode {
            Mode::Any => None,
            Mode::Theorem1 => Some(0),
            Mode::Theorem2 => Some(1),
        };
        if let Some(allowed) = allowed_degree_two {
            if !isolated.is_empty() {
                violations.push(Violation::IsolatedVertices(isolated));
            }
            if degree_two.len() > allowed {
                violations.push(Violation::DegreeTwo {
                    vertices: degree_two,
                    allowed,
                });
            }
        }
        ValidationReport {
            mode,
            ok: violations.is_empty(),
            violations,
        }
    }
}

impl fmt::Display for Forest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_json())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "code", rename_all = "snake_case")]
pub enum Violation {
    IsolatedVertices(Vec<usize>),
    DegreeTwo {
        vertices: Vec<usize>,
        allowed: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::IsolatedVertices(vs) => write!(f, "isolated vertices {vs:?}"),
            Violation::DegreeTwo { vertices, allowed } => write!(
                f,
                "{} vertices of degree two {vertices:?} (at most {allowed} allowed)",
                vertices.len()
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub mode: Mode,
    pub ok: bool,
    pub violations: Vec<Violation>,
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok {
            return write!(f, "valid for {}", self.mode);
        }
        write!(f, "invalid for {}: ", self.mode)?;
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}
