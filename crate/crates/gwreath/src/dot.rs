//! Graphviz output for downset lattices and kernel chains.

use crate::poset::DownSet;

fn node_label(ds: &DownSet, annotation: Option<&str>) -> String {
    match annotation {
        Some(a) => format!("{ds}\\n{a}"),
        None => ds.to_string(),
    }
}

/// A DOT digraph of downsets ordered by inclusion, with edges on the cover
/// relation. `entries` must already be in canonical order; annotations (for
/// example subgroup orders) are rendered on a second label line.
pub fn downset_lattice(name: &str, entries: &[(DownSet, Option<String>)]) -> String {
    let mut out = String::new();
    out.push_str(&format!("digraph {name} {{\n"));
    out.push_str("  rankdir=BT;\n  node [shape=box];\n");
    for (i, (ds, ann)) in entries.iter().enumerate() {
        out.push_str(&format!(
            "  n{i} [label=\"{}\"];\n",
            node_label(ds, ann.as_deref())
        ));
    }
    for (i, (a, _)) in entries.iter().enumerate() {
        for (j, (b, _)) in entries.iter().enumerate() {
            if i == j || !a.is_subset_of(b) || a == b {
                continue;
            }
            // cover edge: no third entry strictly between
            let covered = entries.iter().enumerate().any(|(k, (c, _))| {
                k != i && k != j && a.is_subset_of(c) && c.is_subset_of(b) && c != a && c != b
            });
            if !covered {
                out.push_str(&format!("  n{i} -> n{j};\n"));
            }
        }
    }
    out.push_str("}\n");
    out
}
