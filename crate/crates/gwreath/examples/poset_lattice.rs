//! Finite posets and their downset lattices: chains, antichains, opposites,
//! restriction, and Graphviz output for the lattice of downward-closed sets.

use gwreath::dot::downset_lattice;
use gwreath::poset::{DownSet, Poset};

fn main() {
    let chain = Poset::chain(3).expect("chain");
    println!("chain(3): {}", chain.describe());
    println!("  linear: {}", chain.is_linear());
    let downsets = chain.downsets().expect("downsets");
    println!(
        "  downsets ({}): {}",
        downsets.len(),
        downsets
            .iter()
            .map(|d| d.to_string())
            .collect::<Vec<_>>()
            .join(" ⊂ ")
    );

    let anti = Poset::antichain(3).expect("antichain");
    println!("antichain(3): {}", anti.describe());
    println!("  downsets: {} (the full power set)", anti.downsets().unwrap().len());

    // the opposite order flips the relation; downsets become complements of
    // the original upward-closed sets
    let op = chain.opposite();
    println!("opposite of chain(3): {}", op.describe());

    // restriction keeps the induced order and re-indexes
    let sub = chain.restrict(&[0, 2]).expect("restrict");
    println!("chain(3) restricted to {{0,2}}: {}", sub.describe());

    // a poset from named elements and covering pairs
    let (diamond, names) = Poset::from_json(
        r#"{"elements": ["bottom", "left", "right", "top"],
            "covers": [["bottom","left"], ["bottom","right"],
                       ["left","top"], ["right","top"]]}"#,
    )
    .expect("diamond");
    println!("diamond on {names:?}: {}", diamond.describe());

    let entries: Vec<(DownSet, Option<String>)> = diamond
        .downsets()
        .expect("downsets")
        .into_iter()
        .map(|d| (d, None))
        .collect();
    println!("\n{}", downset_lattice("diamond_downsets", &entries));
}
