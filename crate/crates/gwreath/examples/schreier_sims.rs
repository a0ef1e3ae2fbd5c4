//! The permutation-group engine on its own: membership without element
//! enumeration, exact orders, and normal closures.

use gwreath::bsgs::{normal_closure, GroupHandle};
use gwreath::{Perm, RunConfig};

fn main() {
    // A5 on 5 points from its standard generators
    let gens = vec![
        Perm::parse_cycles("(0 1 2 3 4)", 5).unwrap(),
        Perm::parse_cycles("(0 1 2)", 5).unwrap(),
    ];
    let a5 = GroupHandle::new(gens, 5).expect("handle");
    println!("A5: order {}", a5.order().unwrap());
    println!("  base points: {:?}", a5.base().unwrap());
    let transposition = Perm::parse_cycles("(0 1)", 5).unwrap();
    println!(
        "  contains the odd permutation (0 1): {}",
        a5.contains(&transposition).unwrap()
    );
    let three_cycle = Perm::parse_cycles("(1 2 4)", 5).unwrap();
    println!("  contains (1 2 4): {}", a5.contains(&three_cycle).unwrap());

    // a bigger symmetric group
    let s8 = GroupHandle::new(
        vec![
            Perm::parse_cycles("(0 1)", 8).unwrap(),
            Perm::parse_cycles("(0 1 2 3 4 5 6 7)", 8).unwrap(),
        ],
        8,
    )
    .expect("handle");
    println!("S8: order {}", s8.order().unwrap());

    // normal closure of a double transposition in S4 is the Klein four-group
    let ambient = vec![
        Perm::parse_cycles("(0 1)", 4).unwrap(),
        Perm::parse_cycles("(0 1 2 3)", 4).unwrap(),
    ];
    let seed = Perm::parse_cycles("(0 1)(2 3)", 4).unwrap();
    let nc = normal_closure(&ambient, &[seed], 4, &RunConfig::default()).expect("closure");
    println!(
        "normal closure of (0 1)(2 3) in S4: order {}, generators:",
        nc.handle.order().unwrap()
    );
    for g in &nc.generators {
        println!("  {g}");
    }
}
