use std::fmt::Write;
use std::path::Path;

use clap::Args;
use rayon::prelude::*;
use tvs_core::enumerate::{enumerate_trees, random_forest, DegreeTwo, GeneratorSpec};
use tvs_core::exact::Solver;
use tvs_core::{audit_construction, classify, construct, strength_target, verify, Forest, Mode};

use crate::error::CliError;
use crate::{emit, parse_range};

/// Oracle limit for sweeps; proving infeasibility one below the target gets
/// expensive beyond this size.
const SWEEP_GUARD: usize = 10;

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Enumerate every tree with 2..=max-n vertices (at most 10; use 1 to skip).
    #[arg(long, default_value_t = 9)]
    max_n: usize,
    /// Number of degree-2 vertices in every instance.
    #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u8).range(0..=1))]
    n2: u8,
    /// Cross-check the strength with the exact solver on instances within the guard.
    #[arg(long)]
    oracle: bool,
    /// Vertex limit for oracle checks; larger instances are constructed and verified only.
    #[arg(long, default_value_t = SWEEP_GUARD)]
    guard: usize,
    /// Additional seeded random forests (K2 components allowed).
    #[arg(long, default_value_t = 0)]
    random: usize,
    /// Component count of the random forests, `k` or `lo..hi`.
    #[arg(long, default_value = "2..6", value_parser = parse_range)]
    components: (usize, usize),
    /// Component sizes of the random forests, `k` or `lo..hi`.
    #[arg(long, default_value = "2..10", value_parser = parse_range)]
    sizes: (usize, usize),
    /// Cap on the vertex count of each random forest.
    #[arg(long, default_value_t = 60)]
    max_total: usize,
    /// Seed of the first random forest; the rest use consecutive seeds.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Outcome {
    Pass { oracle_checked: bool },
    Infeasible,
    Failed,
}

#[derive(Debug, Default, Clone, Copy)]
struct Row {
    instances: usize,
    passed: usize,
    infeasible: usize,
    failed: usize,
    oracle_checked: usize,
}

impl Row {
    fn add(&mut self, outcome: Outcome) {
        self.instances += 1;
        match outcome {
            Outcome::Pass { oracle_checked } => {
                self.passed += 1;
                self.oracle_checked += usize::from(oracle_checked);
            }
            Outcome::Infeasible => self.infeasible += 1,
            Outcome::Failed => self.failed += 1,
        }
    }

    fn merge(&mut self, other: &Row) {
        self.instances += other.instances;
        self.passed += other.passed;
        self.infeasible += other.infeasible;
        self.failed += other.failed;
        self.oracle_checked += other.oracle_checked;
    }
}

/// Construct, verify at the target strength, audit, and optionally compare with the oracle.
fn check(f: &Forest, oracle: Option<&Solver>, guard: usize) -> Outcome {
    let (_, table) = classify(f);
    let Ok(target) = strength_target(table.n1()) else {
        return Outcome::Failed;
    };
    let tw = match construct(f, Mode::Any) {
        Ok(tw) => tw,
        Err(tvs_core::ConstructionError::Infeasible { .. }) => return Outcome::Infeasible,
        Err(_) => return Outcome::Failed,
    };
    let verified = verify(f, &tw, target).is_ok_and(|c| c.valid && c.s_used == target);
    let audited = audit_construction(f, &tw, &table, Mode::Any).is_ok_and(|a| a.passed());
    if !(verified && audited) {
        return Outcome::Failed;
    }
    match oracle {
        Some(solver) if f.n() <= guard => match solver.exact_tvs(f, Some(target)) {
            Ok((s, _)) if s == target => Outcome::Pass {
                oracle_checked: true,
            },
            _ => Outcome::Failed,
        },
        _ => Outcome::Pass {
            oracle_checked: false,
        },
    }
}

pub fn run(args: &SweepArgs, output: Option<&Path>) -> Result<String, CliError> {
    let degree_two = if args.n2 == 0 {
        DegreeTwo::None
    } else {
        DegreeTwo::ExactlyOne
    };
    let mut labels = Vec::new();
    let mut instances: Vec<(usize, Forest)> = Vec::new();
    for n in 2..=args.max_n {
        let row = labels.len();
        labels.push(format!("trees n={n}"));
        instances.extend(
            enumerate_trees(n, degree_two)?
                .into_iter()
                .map(|t| (row, t)),
        );
    }
    if args.random > 0 {
        let row = labels.len();
        labels.push(format!("random seed={}..", args.seed));
        for i in 0..args.random {
            let spec = GeneratorSpec {
                components: args.components,
                sizes: args.sizes,
                max_total: Some(args.max_total),
                degree_two,
                allow_isolated_edges: true,
                seed: args.seed.wrapping_add(i as u64),
                ..GeneratorSpec::default()
            };
            instances.push((row, random_forest(&spec)?));
        }
    }

    let solver = Solver::new(args.guard);
    let oracle = args.oracle.then_some(&solver);
    let outcomes: Vec<Outcome> = instances
        .par_iter()
        .map(|(_, f)| check(f, oracle, args.guard))
        .collect();
    let mut rows = vec![Row::default(); labels.len()];
    for ((row, _), outcome) in instances.iter().zip(&outcomes) {
        rows[*row].add(*outcome);
    }
    let mut total = Row::default();
    rows.iter().for_each(|r| total.merge(r));

    let mut table = format!(
        "{:<22} {:>9} {:>7} {:>10} {:>7} {:>7}  status\n",
        "set", "instances", "passed", "infeasible", "failed", "oracle"
    );
    let mut line = |label: &str, row: &Row| {
        let status = if row.passed == row.instances {
            "PASS"
        } else {
            "FAIL"
        };
        writeln!(
            table,
            "{:<22} {:>9} {:>7} {:>10} {:>7} {:>7}  {status}",
            label, row.instances, row.passed, row.infeasible, row.failed, row.oracle_checked
        )
        .unwrap();
    };
    for (label, row) in labels.iter().zip(&rows) {
        line(label, row);
    }
    line("total", &total);

    if total.infeasible > 0 {
        emit(&table, output)?;
        Err(CliError::Infeasible(format!(
            "{} instances",
            total.infeasible
        )))
    } else if total.failed > 0 {
        emit(&table, output)?;
        Err(CliError::Verification(format!(
            "{} instances",
            total.failed
        )))
    } else {
        Ok(table)
    }
}
