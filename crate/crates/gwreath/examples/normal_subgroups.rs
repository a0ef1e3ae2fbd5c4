//! Matching brute-force normal subgroups against the kernels D_Γ.
//!
//! With a simple non-abelian factor the kernels exhaust the normal
//! subgroups; with an abelian factor they cannot, and the report shows the
//! gap. Pass `--full` to also run the order-3600 positive instance
//! (antichain(2) with alternating factors; takes a few seconds).

use gwreath::poset::Poset;
use gwreath::wreath::{uniform_space, WreathGroup};
use gwreath::{FiniteGroup, RunConfig};
use std::sync::Arc;

fn builtin(name: &str) -> Arc<FiniteGroup> {
    Arc::new(FiniteGroup::builtin(name).expect("builtin"))
}

fn report(poset: Poset, factor: &str) {
    let config = RunConfig::default();
    let w = WreathGroup::new(uniform_space(poset.clone(), &builtin(factor), &config).unwrap())
        .unwrap();
    let r = w.classify_normal_subgroups().expect("classification");
    println!(
        "{} with {factor}: order {}, {} normal subgroups vs {} downsets",
        poset.describe(),
        r.group_order,
        r.normal_subgroup_count,
        r.downset_count
    );
    for m in &r.matched {
        println!("  matched: D_{{{:?}}} of order {}", m.downset, m.order);
    }
    for order in &r.unmatched_normal_orders {
        println!("  unmatched normal subgroup of order {order}");
    }
}

fn main() {
    // simple factor, one element: the two kernels are the whole story
    report(Poset::chain(1).unwrap(), "A5");

    // abelian factor: three kernels cannot cover six normal subgroups
    report(Poset::chain(2).unwrap(), "Z2");

    if std::env::args().any(|a| a == "--full") {
        // non-abelian simple factors on an antichain: exactly the kernels
        report(Poset::antichain(2).unwrap(), "A5");
    } else {
        println!("\n(run with --full for the order-3600 antichain(2)/A5 instance)");
    }
}
