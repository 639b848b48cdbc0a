use std::collections::BTreeMap;

use serde::Serialize;

use crate::classify::ClassTable;
use crate::error::ConstructionError;
use crate::forest::Forest;

use super::Phase;

/// How many pendant edges of an odd-`j` vertex receive the label `s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    /// `(j - 1) / 2` edges labeled `s`.
    Fewer,
    /// `(j + 1) / 2` edges labeled `s`.
    More,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VariantPlan {
    /// Variant of every vertex with an odd number of pendant neighbours that
    /// draws from the value pool.
    pub variants: BTreeMap<usize, Variant>,
    /// Pendant edges at degree-2 vertices that are fixed to `s` up front.
    pub forced_s_edges: Vec<(usize, usize)>,
    /// Pendant vertices whose incident edge will carry `s`. Both endpoints
    /// of an isolated edge count.
    pub pendant_s_count: usize,
}

impl VariantPlan {
    /// Number of pendant edges at `v` labeled `s` given its pendant count `j`.
    pub fn s_edges_at(&self, v: usize, j: usize) -> usize {
        match self.variants.get(&v) {
            Some(Variant::Fewer) => (j - 1) / 2,
            Some(Variant::More) => j.div_ceil(2),
            None => j / 2,
        }
    }

    pub fn is_forced(&self, v: usize) -> bool {
        self.forced_s_edges.iter().any(|&(a, b)| a == v || b == v)
    }

    pub fn count(&self, vertices: &[usize], variant: Variant) -> usize {
        vertices
            .iter()
            .filter(|v| self.variants.get(v) == Some(&variant))
            .count()
    }
}

/// Order in which odd-`j` vertices are switched from [`Variant::More`] to
/// [`Variant::Fewer`]. Lower keys are switched first.
///
/// `C31` goes first: as `Fewer` it joins the `2s` base band where it may
/// overflow into `[3s+1, 4s]`, as `More` it lands there for certain. `C43` goes
/// last: as `Fewer` it needs a flexible slot in `[3s+1, 4s]`, as `More` its
/// total `4s + w(e)` is fixed above that range. At most half of `C33` is
/// switched before `C43`.
fn flip_key(
    k: usize,
    j: usize,
    v: usize,
    c33_rank: usize,
    c33_half: usize,
) -> (u8, i64, i64, usize) {
    let k_desc = -(k as i64);
    let j_desc = -(j as i64);
    match (k, j) {
        (3, 1) => (0, 0, 0, v),
        (2, 1) => (1, 0, 0, v),
        (3, 3) if c33_rank < c33_half => (3, 0, 0, v),
        (3, 3) => (5, 0, 0, v),
        (4, 3) => (4, 0, 0, v),
        _ => (2, k_desc, j_desc, v),
    }
}

/// Chooses variants so that the number of pendant vertices on `s`-labeled
/// edges is as large as possible without exceeding `s`.
///
/// Pendant edges at degree-2 vertices are fixed to `s` unless that alone
/// pushes the count above `s`; in that case they are handled like any other
/// pendant edges.
pub fn select_variants(
    f: &Forest,
    table: &ClassTable,
    s: u32,
) -> Result<VariantPlan, ConstructionError> {
    let s = s as usize;
    let q = table.isolated_edges.len();
    let isolated_s = 2 * (q - q / 2);

    let degree_two: Vec<usize> = table
        .classes
        .iter()
        .filter(|(&(k, j), _)| k == 2 && j >= 1)
        .flat_map(|(_, vs)| vs.iter().copied())
        .collect();

    let drawing = |include_degree_two: bool| {
        table
            .classes
            .iter()
            .filter(move |(&(k, j), _)| j >= 1 && (k >= 3 || (k == 2 && include_degree_two)))
            .flat_map(|(&(k, j), vs)| vs.iter().map(move |&v| (k, j, v)))
    };
    let minimum = |include_degree_two: bool| -> usize {
        drawing(include_degree_two).map(|(_, j, _)| j / 2).sum()
    };

    let forced_pendants: usize = degree_two.iter().map(|&v| table.class_of[v].1).sum();
    let (force, fixed) = if minimum(false) + isolated_s + forced_pendants <= s {
        (true, minimum(false) + isolated_s + forced_pendants)
    } else {
        (false, minimum(true) + isolated_s)
    };
    if fixed > s {
        return Err(ConstructionError::infeasible(
            Phase::Variants,
            format!("at least {fixed} pendant vertices need label-s edges but s = {s}"),
        ));
    }

    let mut odd: Vec<(usize, usize, usize)> =
        drawing(!force).filter(|&(_, j, _)| j % 2 == 1).collect();
    let c33_half = table.count(3, 3) / 2;
    let c33: Vec<usize> = table.class(3, 3).to_vec();
    odd.sort_by_key(|&(k, j, v)| {
        let rank = c33.binary_search(&v).unwrap_or(usize::MAX);
        flip_key(k, j, v, rank, c33_half)
    });

    let maximum = fixed + odd.len();
    let target = maximum.min(s);
    let fewer = maximum - target;
    let variants = odd
        .iter()
        .enumerate()
        .map(|(i, &(_, _, v))| {
            (
                v,
                if i < fewer {
                    Variant::Fewer
                } else {
                    Variant::More
                },
            )
        })
        .collect();

    let forced_s_edges = if force {
        degree_two
            .iter()
            .flat_map(|&v| {
                f.neighbors(v)
                    .iter()
                    .filter(|&&w| f.is_pendant(w))
                    .map(move |&w| (v.min(w), v.max(w)))
            })
            .collect()
    } else {
        Vec::new()
    };

    let plan = VariantPlan {
        variants,
        forced_s_edges,
        pendant_s_count: target,
    };

    let low = table.n1() - target;
    if low + 2 < s || low + 1 > s {
        return Err(ConstructionError::infeasible(
            Phase::Variants,
            format!("{low} pendant edges below s, expected s-2 or s-1 with s = {s}"),
        ));
    }
    Ok(plan)
}
