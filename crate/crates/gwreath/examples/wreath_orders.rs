//! The degenerate shapes of the construction: an antichain gives the direct
//! sum of the factors, a two-element chain gives the restricted wreath
//! product. Orders come from the stabilizer-chain engine and are checked
//! against closure enumeration where that is feasible.
//!
//! For the 60^61 headline instance see `big_wreath_order`.

use gwreath::finite_group::closure_elements;
use gwreath::poset::Poset;
use gwreath::wreath::{uniform_space, ConfigSpace, WreathGroup};
use gwreath::{FiniteGroup, RunConfig};
use num_bigint::BigUint;
use std::sync::Arc;

fn builtin(name: &str) -> Arc<FiniteGroup> {
    Arc::new(FiniteGroup::builtin(name).expect("builtin"))
}

fn main() {
    let config = RunConfig::default();

    // antichain: no freezing ever fires, so the group is the direct sum
    for (n, factors) in [(2, vec!["Z2", "Z2"]), (3, vec!["Z2", "Z3", "S3"])] {
        let fs: Vec<_> = factors.iter().map(|f| builtin(f)).collect();
        let space = ConfigSpace::new(Poset::antichain(n).unwrap(), fs, &config).unwrap();
        let w = WreathGroup::new(space).unwrap();
        let product: usize = w.space().factors().iter().map(|f| f.size()).product();
        let order = w.order().unwrap();
        assert_eq!(order, BigUint::from(product));
        println!(
            "antichain({n}) with {:?}: order {order} = product of factor orders",
            factors
        );
    }

    // chain(2)/Z2: the dihedral group of order 8, checked by enumeration
    let w = WreathGroup::new(
        uniform_space(Poset::chain(2).unwrap(), &builtin("Z2"), &config).unwrap(),
    )
    .unwrap();
    let order = w.order().unwrap();
    let enumerated = closure_elements(w.generators(), w.space().total(), 100)
        .unwrap()
        .len();
    assert_eq!(order, BigUint::from(enumerated));
    println!("chain(2) with Z2: order {order} (enumeration agrees: {enumerated})");

    // chain(3)/Z2: the engine resolves how longer chains associate — the
    // order matches the bottom-up iterated restricted wreath product
    let w = WreathGroup::new(
        uniform_space(Poset::chain(3).unwrap(), &builtin("Z2"), &config).unwrap(),
    )
    .unwrap();
    let order = w.order().unwrap();
    let enumerated = closure_elements(w.generators(), w.space().total(), 1000)
        .unwrap()
        .len();
    assert_eq!(order, BigUint::from(enumerated));
    println!("chain(3) with Z2: order {order} = |(Z2 wr Z2) wr Z2|");
}
