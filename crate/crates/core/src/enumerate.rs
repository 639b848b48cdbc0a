//! Test instance generation: exhaustive non-isomorphic trees via Prüfer
//! sequences, binary trees, and seeded random forests.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::GeneratorError;
use crate::forest::Forest;

pub const MIN_ENUMERATION_SIZE: usize = 2;
pub const MAX_ENUMERATION_SIZE: usize = 10;

/// Constraint on the number of degree-2 vertices of a generated instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DegreeTwo {
    Any,
    None,
    AtMostOne,
    ExactlyOne,
}

impl DegreeTwo {
    pub fn admits(self, count: usize) -> bool {
        match self {
            DegreeTwo::Any => true,
            DegreeTwo::None => count == 0,
            DegreeTwo::AtMostOne => count <= 1,
            DegreeTwo::ExactlyOne => count == 1,
        }
    }
}

/// The labeled tree on `0..n` with Prüfer sequence `seq` (length `n - 2`).
pub fn decode_prufer(seq: &[usize], n: usize) -> Result<Forest, GeneratorError> {
    if n < 2 {
        return Err(GeneratorError::Prufer(format!("n = {n} < 2")));
    }
    if seq.len() != n - 2 {
        return Err(GeneratorError::Prufer(format!(
            "length {} for n = {n}, expected {}",
            seq.len(),
            n - 2
        )));
    }
    if let Some(&bad) = seq.iter().find(|&&x| x >= n) {
        return Err(GeneratorError::Prufer(format!(
            "entry {bad} outside 0..{n}"
        )));
    }
    let mut edges = Vec::with_capacity(n - 1);
    let mut degree = Vec::with_capacity(n);
    prufer_edges(seq, n, &mut degree, &mut edges);
    Forest::new(n, edges).map_err(|e| GeneratorError::Prufer(e.to_string()))
}

/// Decodes a well-formed sequence into `edges`, reusing `degree` as scratch.
fn prufer_edges(seq: &[usize], n: usize, degree: &mut Vec<usize>, edges: &mut Vec<(usize, usize)>) {
    degree.clear();
    degree.resize(n, 1);
    edges.clear();
    for &x in seq {
        degree[x] += 1;
    }
    // Linear-time decoding: `ptr` scans for the next leaf, `leaf` is the current one.
    let mut ptr = 0;
    while degree[ptr] != 1 {
        ptr += 1;
    }
    let mut leaf = ptr;
    for &x in seq {
        edges.push((leaf, x));
        degree[x] -= 1;
        if x < ptr && degree[x] == 1 {
            leaf = x;
        } else {
            ptr += 1;
            while degree[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    edges.push((leaf, n - 1));
}

/// Isomorphism-invariant code of a tree or forest.
///
/// Each component is rooted at its centroid (for two centroids, the smaller
/// of the two rooted codes wins) and encoded as nested parentheses with
/// children sorted. Component codes are sorted and joined with `,`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TreeCode(pub String);

impl fmt::Display for TreeCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

pub fn canonical_form(f: &Forest) -> TreeCode {
    let mut codes: Vec<String> = f
        .components()
        .iter()
        .map(|part| component_code(f.adjacency(), part))
        .collect();
    codes.sort_unstable();
    TreeCode(codes.join(","))
}

fn component_code(adj: &[Vec<usize>], part: &[usize]) -> String {
    centroids(adj, part)
        .into_iter()
        .map(|c| rooted_code(adj, c, usize::MAX))
        .min()
        .expect("component has a centroid")
}

fn centroids(adj: &[Vec<usize>], part: &[usize]) -> Vec<usize> {
    let size = part.len();
    if size <= 2 {
        return part.to_vec();
    }
    // Iterative DFS order with parents, then subtree sizes bottom-up.
    let mut order = Vec::with_capacity(size);
    let mut parent = vec![usize::MAX; adj.len()];
    let mut stack = vec![part[0]];
    while let Some(u) = stack.pop() {
        order.push(u);
        for &w in &adj[u] {
            if w != parent[u] {
                parent[w] = u;
                stack.push(w);
            }
        }
    }
    let mut sub = vec![1usize; adj.len()];
    for &u in order.iter().rev() {
        if parent[u] != usize::MAX {
            sub[parent[u]] += sub[u];
        }
    }
    let mut result: Vec<usize> = order
        .iter()
        .copied()
        .filter(|&u| {
            let largest = adj[u]
                .iter()
                .map(|&w| {
                    if w == parent[u] {
                        size - sub[u]
                    } else {
                        sub[w]
                    }
                })
                .max()
                .unwrap_or(0);
            2 * largest <= size
        })
        .collect();
    result.sort_unstable();
    result
}

fn rooted_code(adj: &[Vec<usize>], v: usize, parent: usize) -> String {
    let mut children: Vec<String> = adj[v]
        .iter()
        .filter(|&&w| w != parent)
        .map(|&w| rooted_code(adj, w, v))
        .collect();
    children.sort_unstable();
    let mut code = String::with_capacity(2 + children.iter().map(String::len).sum::<usize>());
    code.push('(');
    for c in children {
        code.push_str(&c);
    }
    code.push(')');
    code
}

/// Every tree on `n` vertices up to isomorphism, subject to `degree_two`,
/// in order of first appearance among Prüfer sequences.
pub fn enumerate_trees(n: usize, degree_two: DegreeTwo) -> Result<Vec<Forest>, GeneratorError> {
    if !(MIN_ENUMERATION_SIZE..=MAX_ENUMERATION_SIZE).contains(&n) {
        return Err(GeneratorError::SizeGuard {
            n,
            min: MIN_ENUMERATION_SIZE,
            max: MAX_ENUMERATION_SIZE,
        });
    }
    let mut seen = HashSet::new();
    let mut trees = Vec::new();
    let mut seq = vec![0usize; n - 2];
    let mut counts = vec![0usize; n];
    counts[0] = n - 2;
    let all: Vec<usize> = (0..n).collect();
    let mut adj: Vec<Vec<usize>> = vec![Vec::with_capacity(n); n];
    let (mut degree, mut edges) = (Vec::with_capacity(n), Vec::with_capacity(n));
    loop {
        // Vertex degree is one plus its number of occurrences.
        let twos = counts.iter().filter(|&&c| c == 1).count();
        if degree_two.admits(twos) {
            prufer_edges(&seq, n, &mut degree, &mut edges);
            for list in adj.iter_mut() {
                list.clear();
            }
            for &(u, v) in &edges {
                adj[u].push(v);
                adj[v].push(u);
            }
            if seen.insert(component_code(&adj, &all)) {
                trees.push(Forest::new(n, edges.iter().copied()).expect("decoded tree"));
            }
        }
        // Odometer increment.
        let mut i = 0;
        loop {
            if i == seq.len() {
                return Ok(trees);
            }
            counts[seq[i]] -= 1;
            seq[i] += 1;
            if seq[i] < n {
                counts[seq[i]] += 1;
                break;
            }
            seq[i] = 0;
            counts[0] += 1;
            i += 1;
        }
    }
}

/// A rooted shape: vertex count and edges, with the root at 0.
type Shape = (usize, Vec<(usize, usize)>);

/// Trees whose internal vertices all have degree 3, except possibly one of
/// degree 2, on at most `max_n` vertices (`K2` included).
pub fn binary_trees(max_n: usize) -> Vec<Forest> {
    // Unordered rooted full binary shapes by leaf count, as (n, edges) with root 0.
    let max_leaves = max_n.div_ceil(2).max(1);
    let mut shapes: Vec<Vec<Shape>> = vec![Vec::new(); max_leaves + 1];
    shapes[1].push((1, Vec::new()));
    for leaves in 2..=max_leaves {
        let mut out = Vec::new();
        for a in 1..=leaves / 2 {
            let b = leaves - a;
            for (i, x) in shapes[a].iter().enumerate() {
                for (k, y) in shapes[b].iter().enumerate() {
                    if a == b && k < i {
                        continue;
                    }
                    out.push(join_shapes(x, y));
                }
            }
        }
        shapes[leaves] = out;
    }
    let mut seen = BTreeSet::new();
    let mut trees = Vec::new();
    for (n, edges) in shapes.iter().flatten() {
        let mut candidates = Vec::new();
        if *n >= 2 {
            candidates.push((*n, edges.clone()));
        }
        let mut with_leaf = edges.clone();
        with_leaf.push((0, *n));
        candidates.push((n + 1, with_leaf));
        for (n, edges) in candidates {
            if n > max_n {
                continue;
            }
            let tree = Forest::new(n, edges).expect("shape is a tree");
            if seen.insert(canonical_form(&tree)) {
                trees.push(tree);
            }
        }
    }
    trees.sort_by_key(|t| t.n());
    trees
}

fn join_shapes(x: &Shape, y: &Shape) -> Shape {
    let (nx, ex) = x;
    let (ny, ey) = y;
    let mut edges = vec![(0, 1), (0, 1 + nx)];
    edges.extend(ex.iter().map(|&(u, v)| (u + 1, v + 1)));
    edges.extend(ey.iter().map(|&(u, v)| (u + 1 + nx, v + 1 + nx)));
    (1 + nx + ny, edges)
}

/// Parameters for [`random_forest`]. Ranges are inclusive.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneratorSpec {
    pub components: (usize, usize),
    pub sizes: (usize, usize),
    pub max_total: Option<usize>,
    pub degree_two: DegreeTwo,
    pub allow_isolated_edges: bool,
    pub seed: u64,
    pub retry_budget: usize,
}

impl Default for GeneratorSpec {
    fn default() -> Self {
        GeneratorSpec {
            components: (1, 1),
            sizes: (4, 10),
            max_total: None,
            degree_two: DegreeTwo::None,
            allow_isolated_edges: true,
            seed: 0,
            retry_budget: 1000,
        }
    }
}

/// A random forest meeting `spec`; identical specs give identical forests.
///
/// Components occupy consecutive id blocks in generation order, with ids
/// shuffled inside each block.
pub fn random_forest(spec: &GeneratorSpec) -> Result<Forest, GeneratorError> {
    let (cmin, cmax) = spec.components;
    let (smin, smax) = spec.sizes;
    if cmin == 0 || cmin > cmax || smin == 0 || smin > smax {
        return Err(GeneratorError::Spec(format!(
            "components {cmin}..={cmax}, sizes {smin}..={smax}"
        )));
    }
    if spec.degree_two == DegreeTwo::ExactlyOne && smax < 3 {
        return Err(GeneratorError::Spec(
            "a degree-2 vertex needs a component with at least 3 vertices".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    for _ in 0..spec.retry_budget {
        if let Some(f) = attempt(spec, &mut rng) {
            return Ok(f);
        }
    }
    Err(GeneratorError::RetryBudget(spec.retry_budget))
}

fn attempt(spec: &GeneratorSpec, rng: &mut ChaCha8Rng) -> Option<Forest> {
    let count = rng.gen_range(spec.components.0..=spec.components.1);
    let sizes: Vec<usize> = (0..count)
        .map(|_| rng.gen_range(spec.sizes.0..=spec.sizes.1))
        .collect();
    if spec
        .max_total
        .is_some_and(|cap| sizes.iter().sum::<usize>() > cap)
    {
        return None;
    }
    let host = match spec.degree_two {
        DegreeTwo::ExactlyOne => Some(rng.gen_range(0..count)),
        DegreeTwo::AtMostOne if rng.gen_bool(0.5) => Some(rng.gen_range(0..count)),
        _ => None,
    };

    let mut forest: Option<Forest> = None;
    for (i, &size) in sizes.iter().enumerate() {
        let component = match spec.degree_two {
            DegreeTwo::Any => random_labeled_tree(size, rng),
            _ if host == Some(i) => with_one_degree_two(size, rng)?,
            _ => without_degree_two(size, rng)?,
        };
        if size == 2 && !spec.allow_isolated_edges {
            return None;
        }
        let mut perm: Vec<usize> = (0..size).collect();
        perm.shuffle(rng);
        let component = component.relabeled(&perm);
        forest = Some(match forest {
            None => component,
            Some(f) => f.disjoint_union(&component),
        });
    }
    let forest = forest?;
    let degrees = forest.degrees();
    let twos = degrees.iter().filter(|&&d| d == 2).count();
    if !spec.degree_two.admits(twos) {
        return None;
    }
    if spec.degree_two != DegreeTwo::Any && degrees.contains(&0) {
        return None;
    }
    Some(forest)
}

fn random_labeled_tree(size: usize, rng: &mut ChaCha8Rng) -> Forest {
    if size == 1 {
        return Forest::new(1, []).expect("single vertex");
    }
    let seq: Vec<usize> = (0..size - 2).map(|_| rng.gen_range(0..size)).collect();
    decode_prufer(&seq, size).expect("random sequence is well-formed")
}

/// Grows a tree with no degree-2 vertex from a claw, either hanging a leaf on
/// an internal vertex or turning a leaf into a cherry.
fn without_degree_two(size: usize, rng: &mut ChaCha8Rng) -> Option<Forest> {
    match size {
        2 => return Some(Forest::new(2, [(0, 1)]).expect("K2")),
        0 | 1 | 3 => return None,
        _ => {}
    }
    let mut edges = vec![(0, 1), (0, 2), (0, 3)];
    let mut internal = vec![0];
    let mut leaves = vec![1, 2, 3];
    let mut n = 4;
    while n < size {
        if size - n == 1 || rng.gen_bool(0.5) {
            let u = *internal.choose(rng).expect("internal vertex");
            edges.push((u, n));
            leaves.push(n);
            n += 1;
        } else {
            let idx = rng.gen_range(0..leaves.len());
            let u = leaves.swap_remove(idx);
            internal.push(u);
            edges.extend([(u, n), (u, n + 1)]);
            leaves.extend([n, n + 1]);
            n += 2;
        }
    }
    Some(Forest::new(size, edges).expect("grown tree"))
}

/// A tree with exactly one degree-2 vertex: subdivides one edge of a tree
/// without degree-2 vertices.
fn with_one_degree_two(size: usize, rng: &mut ChaCha8Rng) -> Option<Forest> {
    if size == 3 {
        return Some(Forest::new(3, [(0, 1), (1, 2)]).expect("P3"));
    }
    if size < 5 {
        return None;
    }
    let base = without_degree_two(size - 1, rng)?;
    let mut edges = base.edges().to_vec();
    let (u, v) = edges.swap_remove(rng.gen_range(0..edges.len()));
    let mid = size - 1;
    edges.extend([(u, mid), (mid, v)]);
    Some(Forest::new(size, edges).expect("subdivided tree"))
}
