use std::fmt::Write;

use tvs_core::{weighted_degrees, Forest, TotalWeighting};

use crate::error::CliError;

/// DOT text with each edge labeled by its weight and each vertex by `w|wt`.
pub fn render(f: &Forest, tw: &TotalWeighting) -> Result<String, CliError> {
    let totals = weighted_degrees(f, tw)?;
    let mut out = String::from("graph {\n");
    for (&(u, v), w) in f.edges().iter().zip(&tw.edge_labels) {
        writeln!(out, "  {u} -- {v} [label=\"{w}\"];").unwrap();
    }
    for (v, (w, wt)) in tw.vertex_labels.iter().zip(&totals).enumerate() {
        writeln!(out, "  {v} [label=\"{w}|{wt}\"];").unwrap();
    }
    out.push_str("}\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use tvs_core::{construct, Mode};

    #[test]
    fn star_renders_edges_then_vertices() {
        let f = Forest::new(5, [(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        let tw = construct(&f, Mode::Any).unwrap();
        let dot = render(&f, &tw).unwrap();
        let lines: Vec<&str> = dot.lines().collect();
        assert_eq!(lines.first(), Some(&"graph {"));
        assert_eq!(lines.last(), Some(&"}"));
        assert_eq!(lines.len(), 2 + 4 + 5);
        assert!(lines[1].starts_with("  0 -- 1 [label=\""));
        assert_eq!(
            lines[5],
            format!("  0 [label=\"{}|10\"];", tw.vertex_labels[0])
        );
    }
}
