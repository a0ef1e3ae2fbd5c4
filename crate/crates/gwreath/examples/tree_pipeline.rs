//! Tree to group, end to end: parse a finite tree, linearize it with the
//! Kleene–Brouwer order, verify a declared branch descends, and analyze the
//! resulting group.

use gwreath::reduction::{kb_order, tree_to_group, BranchRule, Tree, TruncatedTree};
use gwreath::{FiniteGroup, RunConfig};
use std::sync::Arc;

fn main() {
    let tree = Tree::parse_json("[[], [0], [1], [0,0], [0,0,0]]").expect("tree");
    println!("tree with {} nodes", tree.len());

    let kb = kb_order(&tree).expect("linearization");
    let ascending: Vec<String> = kb.ascending().iter().map(|n| format!("{n:?}")).collect();
    println!("Kleene-Brouwer order, ascending: {}", ascending.join(" < "));

    // the leftmost branch gives a strictly descending sequence
    let tt = TruncatedTree {
        tree,
        depth: 3,
        branch: Some(BranchRule::parse("/0").expect("rule")),
    };
    let config = RunConfig::default();
    let z2 = Arc::new(FiniteGroup::builtin("Z2").expect("builtin"));
    let report = tree_to_group(&tt, &z2, &config).expect("pipeline");

    println!("reduction: {}", report.reduction);
    println!(
        "descending witness: {:?}",
        report.descending_witness.as_ref().unwrap()
    );
    println!(
        "group of the linearized order: degree {}, order {}",
        report.hopf.degree, report.hopf.group_order
    );
    println!(
        "hopfian {} by {:?}",
        report.hopf.hopfian.hopfian, report.hopf.hopfian.methods
    );
    println!("\nfull report:\n{}", serde_json::to_string_pretty(&report).unwrap());
}
