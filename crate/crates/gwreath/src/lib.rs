//! Generalized wreath products over finite posets.
//!
//! A poset `Λ` and one finite group per element determine a configuration
//! space `S` (tuples with one coordinate per poset element) and a family of
//! coordinate generators acting on `S` with a freezing rule: a generator at
//! `λ` only touches configurations whose coordinates strictly above `λ` are
//! all trivial. The permutation group these generate is the generalized
//! wreath product. For a two-element chain it is the usual restricted wreath
//! product; for an antichain it is the direct sum of the factors.
//!
//! What this crate computes:
//!
//! - [`poset`]: finite partial orders, opposites, restriction, and the
//!   lattice of downward-closed subsets.
//! - [`perm`]: dense permutations with cycle notation.
//! - [`finite_group`]: small groups as multiplication tables, plus
//!   brute-force oracles (conjugacy classes, all normal subgroups,
//!   endomorphism enumeration, Hopfian certificates).
//! - [`bsgs`]: a deterministic Schreier–Sims engine — membership, exact
//!   orders as big integers, normal closures.
//! - [`wreath`]: the wreath construction itself — coordinate generators,
//!   the subgroups `H_Γ`, the congruences `∼_Γ`, the kernels `D_Γ`, and the
//!   quotient isomorphism onto the wreath product over `Λ ∖ Γ`.
//! - [`hopf`]: for a finite linear order `W`, the group `G_W` built over the
//!   opposite order, its totally ordered kernel chain, initial-segment
//!   quotients, and Hopfian verdicts (by brute-force oracle where feasible,
//!   by the chain-length argument always).
//! - [`reduction`]: finite trees, the Kleene–Brouwer linearization, and the
//!   end-to-end tree → linear order → group pipeline.
//!
//! The `examples/` directory has one runnable program per capability:
//!
//! - `poset_lattice` — posets, downsets, and the lattice as DOT
//! - `xi_generators` — the coordinate generators and the freezing rule
//! - `schreier_sims` — membership, orders, normal closures
//! - `wreath_orders` — direct-sum and restricted-wreath degenerate cases
//! - `big_wreath_order` — the 60^61 instance under the default budget
//! - `normal_subgroups` — kernels vs brute-force normal subgroups
//! - `quotient_isomorphism` — congruence quotients and initial segments
//! - `hopfian_analysis` — the kernel chain and the Hopfian verdict
//! - `tree_pipeline` — tree to linear order to group, end to end
//!
//! ```bash
//! cargo run --release --example poset_lattice
//! cargo run --release --example big_wreath_order
//! ```
//!
//! A thin `gwreath` binary exposes the same operations as subcommands
//! emitting JSON reports (`wreath`, `hopf`, `reduce`, `oracle`).

pub mod bsgs;
pub mod cli;
pub mod config;
pub mod dot;
pub mod error;
pub mod finite_group;
pub mod hopf;
pub mod perm;
pub mod poset;
pub mod reduction;
pub mod wreath;

pub use config::RunConfig;
pub use error::{Error, Result};
pub use finite_group::FiniteGroup;
pub use perm::Perm;
pub use poset::{DownSet, Poset};
pub use wreath::{ConfigSpace, WreathGroup};
