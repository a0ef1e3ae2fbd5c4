//! Acceptance suite: one test per criterion, each printing a PASS or FAIL
//! line (visible with `cargo test --test acceptance -- --nocapture`).
//!
//! Everything here is exact — integer equalities, set equalities, pointwise
//! permutation comparisons — with wall-clock bounds where stated.

use gwreath::bsgs::GroupHandle;
use gwreath::finite_group::closure_elements;
use gwreath::hopf::{hopfian_report, segment_quotient_check};
use gwreath::poset::{DownSet, Poset};
use gwreath::reduction::{descending_witness, kb_order, kb_less, BranchRule, Tree, TruncatedTree};
use gwreath::wreath::{uniform_space, ConfigSpace, KernelVerification, WreathGroup};
use gwreath::{FiniteGroup, RunConfig};
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;
use std::time::Instant;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)*) => {
        if !($cond) {
            return Err(format!($($msg)*));
        }
    };
}

fn criterion(n: u32, what: &str, f: impl FnOnce() -> Result<(), String>) {
    let start = Instant::now();
    match f() {
        Ok(()) => println!(
            "PASS criterion {n}: {what} ({:.1}s)",
            start.elapsed().as_secs_f64()
        ),
        Err(e) => {
            println!("FAIL criterion {n}: {what}: {e}");
            panic!("criterion {n} failed: {e}");
        }
    }
}

fn builtin(name: &str) -> Arc<FiniteGroup> {
    Arc::new(FiniteGroup::builtin(name).expect("builtin"))
}

fn wreath_over(poset: Poset, factors: &[&str]) -> WreathGroup {
    let factors: Vec<Arc<FiniteGroup>> = factors.iter().map(|f| builtin(f)).collect();
    let space = ConfigSpace::new(poset, factors, &RunConfig::default()).expect("space");
    WreathGroup::new(space).expect("wreath group")
}

fn uniform(poset: Poset, factor: &str) -> WreathGroup {
    let space =
        uniform_space(poset, &builtin(factor), &RunConfig::default()).expect("space");
    WreathGroup::new(space).expect("wreath group")
}

#[test]
fn criterion_01_xi_homomorphism_and_locality() {
    criterion(
        1,
        "xi homomorphism law and locality on chain(2)/antichain(2) over Z2, S3, A5",
        || {
            let start = Instant::now();
            for poset in [Poset::chain(2).unwrap(), Poset::antichain(2).unwrap()] {
                for factor in ["Z2", "S3", "A5"] {
                    let w = uniform(poset.clone(), factor);
                    let size = w.space().factors()[0].size();
                    for lam in 0..2 {
                        let f = &w.space().factors()[lam];
                        // exhaustive over all pairs, A5 included (degree 3600)
                        for h in 0..size {
                            for h2 in 0..size {
                                let lhs = w
                                    .xi(lam, h)
                                    .unwrap()
                                    .compose(w.xi(lam, h2).unwrap())
                                    .unwrap();
                                ensure!(
                                    &lhs == w.xi(lam, f.mul(h, h2)).unwrap(),
                                    "homomorphism law fails at {factor} lam={lam} h={h} h'={h2}"
                                );
                            }
                            let g = w.xi(lam, h).unwrap();
                            for idx in 0..w.space().total() {
                                let image = g.apply(idx as u32) as usize;
                                for mu in 0..2 {
                                    if mu != lam {
                                        ensure!(
                                            w.space().coord(image, mu) == w.space().coord(idx, mu),
                                            "locality fails at {factor} lam={lam} h={h} idx={idx}"
                                        );
                                    }
                                }
                            }
                        }
                    }
                }
            }
            ensure!(
                start.elapsed().as_secs() < 60,
                "exceeded the 60 s bound: {:?}",
                start.elapsed()
            );
            Ok(())
        },
    );
}

#[test]
fn criterion_02_degenerate_case_orders() {
    criterion(
        2,
        "antichain orders are factor products; chain(2)/Z2 = 8; chain(2)/A5 = 60^61",
        || {
            // antichains up to 3 elements with factor sizes up to 60
            let antichain_instances: &[(usize, &[&str])] = &[
                (1, &["A5"]),
                (2, &["A5", "A5"]),
                (2, &["Z2", "Z3"]),
                (3, &["Z2", "Z3", "Z4"]),
                (3, &["S3", "S3", "S3"]),
                (3, &["A5", "Z2", "Z3"]),
            ];
            for (n, factors) in antichain_instances {
                let w = wreath_over(Poset::antichain(*n).unwrap(), factors);
                let product = factors
                    .iter()
                    .map(|f| BigUint::from(builtin(f).size()))
                    .product::<BigUint>();
                let order = w.order().map_err(|e| e.to_string())?;
                ensure!(
                    order == product,
                    "antichain({n})/{factors:?}: engine order {order} != product {product}"
                );
            }

            let w = uniform(Poset::chain(2).unwrap(), "Z2");
            ensure!(
                w.order().unwrap() == BigUint::from(8u32),
                "chain(2)/Z2 order is not 8"
            );

            let start = Instant::now();
            let w = uniform(Poset::chain(2).unwrap(), "A5");
            let order = w.order().map_err(|e| e.to_string())?;
            let formula = BigUint::from(60u32).pow(60) * BigUint::from(60u32);
            ensure!(
                order == formula,
                "chain(2)/A5 engine order differs from the restricted-wreath formula"
            );
            ensure!(
                start.elapsed().as_secs() < 600,
                "chain(2)/A5 build exceeded 10 minutes: {:?}",
                start.elapsed()
            );
            Ok(())
        },
    );
}

#[test]
fn criterion_03_normal_closure_identity() {
    criterion(
        3,
        "on chain(2)/A5: closure of the bottom subgroup is the 60^60 kernel; the subgroup itself is not normal",
        || {
            let poset = Poset::chain(2).unwrap();
            let w = uniform(poset.clone(), "A5");
            let gamma = DownSet::new(&poset, &[0]).unwrap();

            let d = w.d_gamma_group(&gamma).map_err(|e| e.to_string())?;
            let order = d.handle.order().unwrap();
            ensure!(
                order == BigUint::from(60u32).pow(60),
                "closure order is not 60^60: {order}"
            );
            for g in &d.generators {
                ensure!(
                    w.d_gamma_membership(g, &gamma),
                    "a closure generator violates the coordinate-fixing predicate"
                );
            }

            let bottom_gens = w.subgroup_h_gamma(&[0]);
            let h = GroupHandle::new(bottom_gens.clone(), w.space().total())
                .unwrap()
                .with_config(*w.space().run_config());
            ensure!(
                h.order().unwrap() == BigUint::from(60u32),
                "H at the bottom must have order 60"
            );
            let top = w.xi(1, 1).unwrap();
            let conjugate = bottom_gens[0].conjugate(top).unwrap();
            ensure!(
                !h.contains(&conjugate).unwrap(),
                "a conjugated generator unexpectedly stayed in the subgroup"
            );
            Ok(())
        },
    );
}

#[test]
fn criterion_04_kernel_oracle_equivalence() {
    criterion(
        4,
        "element-scan kernel equals the normal closure on every downset, all posets of size <= 3, factors Z2/Z3/S3, orders <= 10^4",
        || {
            let names = ["Z2", "Z3", "S3"];
            let cap = RunConfig::default().oracle_order_cap;
            let mut instances = 0usize;
            let mut downsets_checked = 0usize;
            for n in 1..=3usize {
                let posets = Poset::all_posets(n).unwrap();
                let mut assignment = vec![0usize; n];
                loop {
                    for poset in &posets {
                        let factors: Vec<&str> =
                            assignment.iter().map(|&i| names[i]).collect();
                        let w = wreath_over(poset.clone(), &factors);
                        let order = w.order().map_err(|e| e.to_string())?;
                        if order > BigUint::from(cap) {
                            continue;
                        }
                        instances += 1;
                        let elements =
                            closure_elements(w.generators(), w.space().total(), cap)
                                .map_err(|e| e.to_string())?;
                        ensure!(
                            BigUint::from(elements.len()) == order,
                            "enumeration disagrees with the engine order"
                        );
                        for ds in poset.downsets().unwrap() {
                            let d = w.d_gamma_group(&ds).map_err(|e| e.to_string())?;
                            ensure!(
                                d.verification == KernelVerification::OracleExact,
                                "expected oracle-exact verification at this scale"
                            );
                            for e in &elements {
                                ensure!(
                                    w.d_gamma_membership(e, &ds)
                                        == d.handle.contains(e).unwrap(),
                                    "kernel scan and closure disagree on {} for gamma {ds} over {}",
                                    e,
                                    poset.describe()
                                );
                            }
                            downsets_checked += 1;
                        }
                    }
                    // next factor assignment
                    let mut i = 0;
                    while i < n {
                        assignment[i] += 1;
                        if assignment[i] < names.len() {
                            break;
                        }
                        assignment[i] = 0;
                        i += 1;
                    }
                    if i == n {
                        break;
                    }
                }
            }
            ensure!(
                instances > 100 && downsets_checked > 300,
                "sweep unexpectedly small: {instances} instances, {downsets_checked} downsets"
            );
            Ok(())
        },
    );
}

#[test]
fn criterion_05_quotient_isomorphisms() {
    criterion(
        5,
        "quotient isomorphism for every downset and every initial segment on the stated instances",
        || {
            for (poset, factor) in [
                (Poset::chain(2).unwrap(), "A5"),
                (Poset::chain(3).unwrap(), "Z2"),
                (Poset::antichain(3).unwrap(), "Z2"),
            ] {
                let w = uniform(poset.clone(), factor);
                for ds in poset.downsets().unwrap() {
                    let iso = w.quotient_iso_check(&ds).map_err(|e| e.to_string())?;
                    ensure!(
                        iso.ok,
                        "quotient mismatch at gamma {ds} on {} with {factor}: {:?}",
                        poset.describe(),
                        iso.mismatch
                    );
                }
            }
            let cfg = RunConfig::default();
            for n in 1..=3usize {
                let w = Poset::chain(n).unwrap();
                for k in 0..=n {
                    let check = segment_quotient_check(&w, k, &builtin("Z2"), &cfg)
                        .map_err(|e| e.to_string())?;
                    ensure!(check.ok, "segment k={k} failed on chain({n})/Z2");
                }
            }
            for k in 0..=2usize {
                let check =
                    segment_quotient_check(&Poset::chain(2).unwrap(), k, &builtin("A5"), &cfg)
                        .map_err(|e| e.to_string())?;
                ensure!(check.ok, "segment k={k} failed on chain(2)/A5");
            }
            Ok(())
        },
    );
}

#[test]
fn criterion_06_silcock_instances() {
    criterion(
        6,
        "antichain(2)/A5 has exactly the 4 kernels as normal subgroups; chain(2)/Z2 has 6 with 3 unmatched",
        || {
            let w = uniform(Poset::antichain(2).unwrap(), "A5");
            let report = w.classify_normal_subgroups().map_err(|e| e.to_string())?;
            ensure!(
                report.normal_subgroup_count == 4,
                "antichain(2)/A5: expected 4 normal subgroups, got {}",
                report.normal_subgroup_count
            );
            ensure!(report.downset_count == 4, "expected 4 downsets");
            ensure!(
                report.matched.len() == 4 && report.unmatched_normal_orders.is_empty(),
                "antichain(2)/A5: kernels must exhaust the normal subgroups"
            );
            ensure!(
                report.kernel_collisions.is_empty(),
                "kernels must be pairwise distinct"
            );

            let w = uniform(Poset::chain(2).unwrap(), "Z2");
            let report = w.classify_normal_subgroups().map_err(|e| e.to_string())?;
            ensure!(
                report.normal_subgroup_count == 6,
                "chain(2)/Z2: expected 6 normal subgroups, got {}",
                report.normal_subgroup_count
            );
            ensure!(report.downset_count == 3, "expected 3 downsets");
            ensure!(
                report.matched.len() == 3 && report.unmatched_normal_orders.len() == 3,
                "chain(2)/Z2: exactly 3 normal subgroups must match no kernel"
            );
            Ok(())
        },
    );
}

#[test]
fn criterion_07_kernel_chain_and_hopfian_verdicts() {
    criterion(
        7,
        "strictly increasing kernel chains of length |W|+1; hopfian by chain argument, and by oracle where the order allows",
        || {
            let cfg = RunConfig::default();
            // every linear order on <= 3 elements up to labeling: the chains,
            // plus one scrambled labeling to keep the pipeline label-honest
            let (scrambled, _) = Poset::from_json(
                r#"{"elements": ["a","b","c"], "covers": [["c","a"],["a","b"]]}"#,
            )
            .unwrap();
            let mut orders = vec![
                Poset::chain(1).unwrap(),
                Poset::chain(2).unwrap(),
                Poset::chain(3).unwrap(),
            ];
            orders.push(scrambled);
            for w in &orders {
                let report = hopfian_report(w, &builtin("Z2"), &cfg).map_err(|e| e.to_string())?;
                ensure!(
                    report.chain_length == w.len() + 1,
                    "chain length must be |W|+1 on {}",
                    w.describe()
                );
                ensure!(report.strictly_increasing, "chain not strictly increasing");
                ensure!(report.hopfian.hopfian, "hopfian verdict must be true");
                ensure!(
                    report.hopfian.methods.contains(&"chain-argument"),
                    "chain argument missing"
                );
                ensure!(
                    report.hopfian.methods.contains(&"oracle"),
                    "oracle must run at these orders"
                );
                let oracle = report.hopfian.oracle.as_ref().unwrap();
                ensure!(
                    oracle.all_surjective_injective,
                    "oracle found a non-injective surjection"
                );
            }

            // chain(2)/A5: order 60^61 is far beyond the oracle cap
            let report =
                hopfian_report(&Poset::chain(2).unwrap(), &builtin("A5"), &cfg)
                    .map_err(|e| e.to_string())?;
            ensure!(report.chain_length == 3, "expected a 3-member chain");
            let expected = [
                BigUint::from(1u32).to_string(),
                BigUint::from(60u32).pow(60).to_string(),
                (BigUint::from(60u32).pow(60) * BigUint::from(60u32)).to_string(),
            ];
            for (link, want) in report.chain.iter().zip(&expected) {
                ensure!(
                    &link.order == want,
                    "kernel order mismatch: got {} want {want}",
                    link.order
                );
            }
            ensure!(report.hopfian.hopfian, "hopfian verdict must be true");
            ensure!(
                report.hopfian.methods == vec!["chain-argument"],
                "only the chain argument applies at 60^61"
            );
            ensure!(report.hopfian.oracle.is_none(), "oracle must not run");
            Ok(())
        },
    );
}

#[test]
fn criterion_08_hopfian_oracle_sanity() {
    criterion(
        8,
        "surjective-endomorphism certificates for Z4, V4, D4, S3, A5",
        || {
            let start = Instant::now();
            // surjective endomorphisms of a finite group are exactly its
            // automorphisms; the counts below are the classical |Aut| values
            let expected_aut: &[(&str, usize)] =
                &[("Z4", 2), ("V4", 6), ("D4", 8), ("S3", 6), ("A5", 120)];
            for (name, aut) in expected_aut {
                let g = FiniteGroup::builtin(name).unwrap();
                let cert = g
                    .hopfian_bruteforce(&g.greedy_generators())
                    .map_err(|e| e.to_string())?;
                ensure!(cert.hopfian, "{name} must be hopfian");
                ensure!(
                    cert.surjective.len() == *aut,
                    "{name}: expected {aut} surjective endomorphisms, got {}",
                    cert.surjective.len()
                );
                // the certificate really is a list of bijective homomorphisms
                for phi in &cert.surjective {
                    let mut seen = vec![false; g.size()];
                    for &v in phi {
                        ensure!(!seen[v as usize], "{name}: certificate map not injective");
                        seen[v as usize] = true;
                    }
                }
                let identity: Vec<u16> = (0..g.size() as u16).collect();
                ensure!(
                    cert.surjective.contains(&identity),
                    "{name}: identity map missing from the certificate"
                );
            }
            ensure!(
                start.elapsed().as_secs() < 60,
                "exceeded the 60 s bound: {:?}",
                start.elapsed()
            );
            Ok(())
        },
    );
}

#[test]
fn criterion_09_reduction_pipeline() {
    criterion(
        9,
        "Kleene-Brouwer totality and monotonicity on 200 random trees; descending witnesses; byte-identical reduce runs",
        || {
            let mut rng = ChaCha8Rng::seed_from_u64(9);
            for round in 0..200 {
                let mut nodes: Vec<Vec<u32>> = vec![vec![]];
                while nodes.len() < 10 {
                    let parent = nodes[rng.gen_range(0..nodes.len())].clone();
                    let mut child = parent;
                    child.push(rng.gen_range(0..3u32));
                    if !nodes.contains(&child) {
                        nodes.push(child);
                    }
                }
                let tree = Tree::new(nodes).map_err(|e| e.to_string())?;
                let kb = kb_order(&tree).map_err(|e| e.to_string())?;
                ensure!(kb.poset.is_linear(), "round {round}: order not total");
                for (i, a) in kb.nodes.iter().enumerate() {
                    for (j, b) in kb.nodes.iter().enumerate() {
                        if a.len() > b.len() && a[..b.len()] == b[..] {
                            ensure!(
                                kb.poset.lt(i, j) && kb_less(a, b),
                                "round {round}: extension {a:?} of {b:?} must precede it"
                            );
                        }
                    }
                }
            }

            for (nodes, rule, depth) in [
                (
                    vec![vec![], vec![0], vec![0, 0], vec![0, 0, 0]],
                    "/0",
                    3usize,
                ),
                (
                    vec![vec![], vec![1], vec![1, 0], vec![1, 0, 0]],
                    "1/0",
                    3usize,
                ),
            ] {
                let tt = TruncatedTree {
                    tree: Tree::new(nodes).unwrap(),
                    depth,
                    branch: Some(BranchRule::parse(rule).unwrap()),
                };
                let witness = descending_witness(&tt).map_err(|e| e.to_string())?;
                ensure!(witness.len() == depth, "witness length mismatch");
                for pair in witness.windows(2) {
                    ensure!(
                        kb_less(&pair[1], &pair[0]),
                        "witness must strictly descend"
                    );
                }
            }

            // reduce tree [[],[0]] with Z2: byte-identical across runs and
            // matching the chain(2)/Z2 analysis
            let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
            let tree_path = dir.path().join("two.json");
            std::fs::write(&tree_path, "[[],[0]]").map_err(|e| e.to_string())?;
            let run = |extra: &[&str]| -> Result<Vec<u8>, String> {
                let out = std::process::Command::new(env!("CARGO_BIN_EXE_gwreath"))
                    .args([
                        "reduce",
                        "tree",
                        "--in",
                        tree_path.to_str().unwrap(),
                        "--factor",
                        "Z2",
                    ])
                    .args(extra)
                    .output()
                    .map_err(|e| e.to_string())?;
                ensure!(out.status.success(), "reduce tree failed: {out:?}");
                Ok(out.stdout)
            };
            let first = run(&[])?;
            let second = run(&[])?;
            ensure!(first == second, "reduce tree output differs between runs");
            let parsed: serde_json::Value =
                serde_json::from_slice(&first).map_err(|e| e.to_string())?;
            ensure!(
                parsed["reduction"] == "kleene-brouwer (stand-in)",
                "reduction marker missing"
            );
            ensure!(
                parsed["hopf"]["group_order"] == "8",
                "pipeline group order must match chain(2)/Z2"
            );
            let chain_orders: Vec<&str> = parsed["hopf"]["chain"]
                .as_array()
                .unwrap()
                .iter()
                .map(|l| l["order"].as_str().unwrap())
                .collect();
            ensure!(
                chain_orders == vec!["1", "4", "8"],
                "pipeline kernel chain must match chain(2)/Z2: {chain_orders:?}"
            );
            ensure!(
                parsed["hopf"]["hopfian"]["hopfian"] == true,
                "pipeline hopfian verdict must be true"
            );
            Ok(())
        },
    );
}

#[test]
fn criterion_10_cli_determinism() {
    criterion(
        10,
        "every CLI report is byte-identical across runs and across --threads values",
        || {
            let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
            let tree_path = dir.path().join("tree.json");
            std::fs::write(&tree_path, "[[],[0],[1]]").map_err(|e| e.to_string())?;
            let tree = tree_path.to_str().unwrap();
            let commands: Vec<Vec<&str>> = vec![
                vec!["hopf", "analyze", "--order", "chain:3", "--factor", "Z2"],
                vec!["wreath", "order", "--poset", "chain:2", "--factor", "Z2"],
                vec![
                    "wreath",
                    "normal-subgroups",
                    "--poset",
                    "antichain:2",
                    "--factor",
                    "Z3",
                ],
                vec![
                    "wreath",
                    "quotient-check",
                    "--poset",
                    "chain:3",
                    "--factor",
                    "Z2",
                ],
                vec!["oracle", "group", "--name", "S3"],
                vec!["reduce", "tree", "--in", tree, "--factor", "Z2"],
                vec![
                    "hopf",
                    "analyze",
                    "--order",
                    "chain:3",
                    "--factor",
                    "Z2",
                    "--format",
                    "dot",
                ],
            ];
            for cmd in &commands {
                let run = |threads: &str| -> Result<Vec<u8>, String> {
                    let out = std::process::Command::new(env!("CARGO_BIN_EXE_gwreath"))
                        .args(cmd)
                        .args(["--threads", threads])
                        .output()
                        .map_err(|e| e.to_string())?;
                    ensure!(
                        out.status.success(),
                        "command {cmd:?} failed: {}",
                        String::from_utf8_lossy(&out.stderr)
                    );
                    Ok(out.stdout)
                };
                let a = run("1")?;
                let b = run("1")?;
                let c = run("2")?;
                ensure!(a == b, "non-deterministic output for {cmd:?}");
                ensure!(a == c, "thread count changed the output of {cmd:?}");
            }
            Ok(())
        },
    );
}
