//! Quotients by congruence kernels: acting on the classes of ∼_Γ is the
//! same as acting in the wreath group over Λ ∖ Γ, generator by generator.
//! Initial segments of a linear order reproduce the group of the segment.

use gwreath::hopf::segment_quotient_check;
use gwreath::poset::Poset;
use gwreath::wreath::{uniform_space, WreathGroup};
use gwreath::{FiniteGroup, RunConfig};
use std::sync::Arc;

fn main() {
    let config = RunConfig::default();
    let z2 = Arc::new(FiniteGroup::builtin("Z2").expect("builtin"));

    let poset = Poset::chain(3).expect("chain");
    let w = WreathGroup::new(uniform_space(poset.clone(), &z2, &config).expect("space"))
        .expect("wreath");
    println!("chain(3) with Z2 factors, degree {}:", w.space().total());
    for ds in poset.downsets().expect("downsets") {
        let iso = w.quotient_iso_check(&ds).expect("check");
        println!(
            "  gamma {ds}: {} classes, quotient matches the wreath group over the rest: {}",
            iso.class_count, iso.ok
        );
        assert!(iso.ok);
    }

    println!("\ninitial segments of W = chain(3):");
    for k in 0..=3 {
        let check = segment_quotient_check(&poset, k, &z2, &config).expect("segment");
        println!(
            "  first {k} elements: quotient has {} classes, matches the independently built group: {}",
            check.class_count, check.ok
        );
        assert!(check.ok);
    }
}
