//! DOT rendering of the poset and lattice Hasse diagrams.
//!
//! Edges point from the covered element to the covering one and the graphs
//! are laid out bottom to top. Nodes are written in (rank, label) order.

use std::fmt::Write as _;

use closure_lattice::{LcLattice, Poset};
use serde_json::json;

use crate::report::{build_lattice, Report};
use crate::{CliError, DotTarget, Settings};

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Length of the longest chain ending at each element.
fn heights(p: &Poset) -> Vec<usize> {
    let mut height = vec![0; p.len()];
    for x in p.linear_extension() {
        for y in p.covers_of(x) {
            height[y] = height[y].max(height[x] + 1);
        }
    }
    height
}

pub fn poset_dot(p: &Poset) -> String {
    let height = heights(p);
    let mut order: Vec<usize> = (0..p.len()).collect();
    order.sort_by(|&a, &b| (height[a], p.label(a)).cmp(&(height[b], p.label(b))));
    let mut out = String::from("digraph poset {\n  rankdir=BT;\n");
    for &x in &order {
        let _ = writeln!(out, "  {};", quote(p.label(x)));
    }
    for &x in &order {
        let mut uppers: Vec<usize> = p.covers_of(x).iter().collect();
        uppers.sort_by_key(|&y| order.iter().position(|&z| z == y));
        for y in uppers {
            let _ = writeln!(out, "  {} -> {};", quote(p.label(x)), quote(p.label(y)));
        }
    }
    out.push_str("}\n");
    out
}

pub fn lattice_dot(p: &Poset, lattice: &LcLattice, mu: bool) -> String {
    let label = |n: usize| p.format_set(lattice.closed_set(n));
    let mut order: Vec<usize> = (0..lattice.len()).collect();
    order.sort_by_cached_key(|&n| (lattice.rank(n), label(n)));
    let mut out = String::from("digraph lattice {\n  rankdir=BT;\n");
    for &n in &order {
        let text = if mu {
            format!("{}\\nμ = {}", label(n), lattice.mobius()[n])
        } else {
            label(n)
        };
        let _ = writeln!(out, "  n{n} [label={}];", quote(&text).replace("\\\\n", "\\n"));
    }
    for &n in &order {
        let mut uppers: Vec<usize> = lattice.upper_covers(n).collect();
        uppers.sort_by_key(|&m| order.iter().position(|&z| z == m));
        for m in uppers {
            let _ = writeln!(out, "  n{n} -> n{m};");
        }
    }
    out.push_str("}\n");
    out
}

pub fn render(p: &Poset, settings: Settings, target: DotTarget, mu: bool) -> Result<Report, CliError> {
    let mut human = String::new();
    if matches!(target, DotTarget::Poset | DotTarget::Both) {
        human.push_str(&poset_dot(p));
    }
    if matches!(target, DotTarget::Lattice | DotTarget::Both) {
        let lattice = build_lattice(p, settings)?;
        human.push_str(&lattice_dot(p, &lattice, mu));
    }
    Ok(Report {
        json: json!({ "dot": human }),
        human,
        violation: None,
    })
}
