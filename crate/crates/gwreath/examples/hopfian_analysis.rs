//! The full analysis of one finite linear order: the kernel chain of the
//! group over the opposite order, initial-segment quotients, and the
//! Hopfian verdict by both available methods.

use gwreath::hopf::hopfian_report;
use gwreath::poset::Poset;
use gwreath::{FiniteGroup, RunConfig};
use std::sync::Arc;

fn main() {
    let config = RunConfig::default();
    let z2 = Arc::new(FiniteGroup::builtin("Z2").expect("builtin"));
    let w = Poset::chain(3).expect("chain");

    let report = hopfian_report(&w, &z2, &config).expect("analysis");
    println!("W = {} with factor {}", report.order_description, report.factor);
    println!("group degree {} and order {}", report.degree, report.group_order);
    println!(
        "kernel chain ({} members, {}):",
        report.chain_length, report.count_convention
    );
    for link in &report.chain {
        println!("  {{{:?}}} -> order {}", link.downset, link.order);
    }
    println!("segment quotient checks:");
    for s in &report.segment_checks {
        println!("  k={}: ok={}", s.k, s.ok);
    }
    println!(
        "hopfian: {} by {:?}",
        report.hopfian.hopfian, report.hopfian.methods
    );
    if let Some(oracle) = &report.hopfian.oracle {
        println!(
            "  oracle: {} endomorphisms, {} surjective, all injective: {}",
            oracle.endomorphism_count,
            oracle.surjective_count,
            oracle.all_surjective_injective
        );
    }
    println!("\nkernel chain as DOT:\n{}", report.chain_dot);
}
