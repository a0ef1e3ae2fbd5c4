//! Finite trees, the Kleene–Brouwer linearization, and the end-to-end
//! tree → linear order → group pipeline.
//!
//! The linearization step is the Kleene–Brouwer order, a stand-in chosen
//! because it is the textbook tree linearization with the one property that
//! is testable at this scale: a declared infinite branch yields a strictly
//! descending sequence. Reports carry an explicit `reduction` marker so the
//! output cannot be mistaken for anything stronger.

use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::finite_group::FiniteGroup;
use crate::hopf::{hopfian_report, HopfAnalysis};
use crate::poset::Poset;
use serde::Serialize;
use std::cmp::Ordering;
use std::sync::Arc;

/// Largest tree the linearization will accept.
pub const KB_NODE_LIMIT: usize = 20;

/// A finite prefix-closed set of finite sequences of naturals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tree {
    /// Sorted canonically: prefixes before extensions, then lexicographic.
    nodes: Vec<Vec<u32>>,
}

fn sequence_cmp(a: &[u32], b: &[u32]) -> Ordering {
    for (x, y) in a.iter().zip(b.iter()) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    a.len().cmp(&b.len())
}

impl Tree {
    /// Validate prefix closure; missing prefixes are an error, never filled
    /// in silently.
    pub fn new(mut nodes: Vec<Vec<u32>>) -> Result<Tree> {
        nodes.sort_by(|a, b| sequence_cmp(a, b));
        for pair in nodes.windows(2) {
            if pair[0] == pair[1] {
                return Err(Error::Parse(format!("duplicate node {:?}", pair[0])));
            }
        }
        let tree = Tree { nodes };
        for node in &tree.nodes {
            if !node.is_empty() {
                let parent = &node[..node.len() - 1];
                if !tree.contains(parent) {
                    return Err(Error::NotPrefixClosed {
                        missing: format!("{parent:?}"),
                    });
                }
            }
        }
        if !tree.contains(&[]) {
            return Err(Error::NotPrefixClosed {
                missing: "[]".into(),
            });
        }
        Ok(tree)
    }

    /// Parse a JSON list of integer sequences.
    pub fn parse_json(text: &str) -> Result<Tree> {
        let raw: Vec<Vec<i64>> = serde_json::from_str(text)?;
        let mut nodes = Vec::with_capacity(raw.len());
        for seq in raw {
            let mut node = Vec::with_capacity(seq.len());
            for v in seq {
                if !(0..=u32::MAX as i64).contains(&v) {
                    return Err(Error::Parse(format!("negative or huge entry {v}")));
                }
                node.push(v as u32);
            }
            nodes.push(node);
        }
        Tree::new(nodes)
    }

    pub fn contains(&self, node: &[u32]) -> bool {
        self.nodes
            .binary_search_by(|probe| sequence_cmp(probe, node))
            .is_ok()
    }

    pub fn nodes(&self) -> &[Vec<u32>] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// An eventually-periodic branch description: `prefix` then `period`
/// repeated forever.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchRule {
    pub prefix: Vec<u32>,
    pub period: Vec<u32>,
}

impl BranchRule {
    pub fn value_at(&self, i: usize) -> u32 {
        if i < self.prefix.len() {
            self.prefix[i]
        } else {
            self.period[(i - self.prefix.len()) % self.period.len()]
        }
    }

    /// Parse `"p1,p2/q1,q2"`: comma-separated prefix, slash, comma-separated
    /// period. The prefix may be empty; the period may not.
    pub fn parse(text: &str) -> Result<BranchRule> {
        let (prefix_text, period_text) = text
            .split_once('/')
            .ok_or_else(|| Error::Parse("branch rule needs prefix/period".into()))?;
        let parse_list = |t: &str| -> Result<Vec<u32>> {
            t.split(',')
                .filter(|s| !s.trim().is_empty())
                .map(|s| {
                    s.trim()
                        .parse::<u32>()
                        .map_err(|_| Error::Parse(format!("bad branch entry {s:?}")))
                })
                .collect()
        };
        let prefix = parse_list(prefix_text)?;
        let period = parse_list(period_text)?;
        if period.is_empty() {
            return Err(Error::Parse("branch period must be non-empty".into()));
        }
        Ok(BranchRule { prefix, period })
    }
}

/// A tree truncated at `depth`, optionally with a declared branch whose
/// prefixes witness ill-foundedness at truncation scale.
#[derive(Debug, Clone)]
pub struct TruncatedTree {
    pub tree: Tree,
    pub depth: usize,
    pub branch: Option<BranchRule>,
}

/// Kleene–Brouwer comparison: `s` precedes `t` when `s` properly extends
/// `t`, or when `s` is smaller at the first index where they differ.
pub fn kb_less(s: &[u32], t: &[u32]) -> bool {
    for (a, b) in s.iter().zip(t.iter()) {
        match a.cmp(b) {
            Ordering::Less => return true,
            Ordering::Greater => return false,
            Ordering::Equal => {}
        }
    }
    s.len() > t.len()
}

/// The Kleene–Brouwer order on a tree's nodes as a linear poset, plus the
/// node list indexed by poset element.
#[derive(Debug, Clone)]
pub struct KbOrder {
    pub poset: Poset,
    /// `nodes[i]` is the node behind poset element `i`.
    pub nodes: Vec<Vec<u32>>,
}

impl KbOrder {
    /// Nodes listed ascending in the order.
    pub fn ascending(&self) -> Vec<&Vec<u32>> {
        self.poset
            .sorted_by_order()
            .into_iter()
            .map(|i| &self.nodes[i])
            .collect()
    }
}

pub fn kb_order(tree: &Tree) -> Result<KbOrder> {
    if tree.len() > KB_NODE_LIMIT {
        return Err(Error::SizeGuard {
            what: "Kleene-Brouwer linearization",
            limit: KB_NODE_LIMIT,
            actual: tree.len(),
        });
    }
    let n = tree.len();
    let mut leq = vec![false; n * n];
    for i in 0..n {
        for j in 0..n {
            leq[i * n + j] = i == j || kb_less(&tree.nodes[i], &tree.nodes[j]);
        }
    }
    let poset = Poset::new(n, leq)?;
    debug_assert!(poset.is_linear());
    Ok(KbOrder {
        poset,
        nodes: tree.nodes.clone(),
    })
}

/// The branch prefixes of lengths `1..=depth`, verified to be nodes and
/// strictly descending in the Kleene–Brouwer order.
pub fn descending_witness(tt: &TruncatedTree) -> Result<Vec<Vec<u32>>> {
    let rule = tt.branch.as_ref().ok_or(Error::BranchMissing)?;
    let mut out = Vec::with_capacity(tt.depth);
    let mut prefix = Vec::new();
    for i in 0..tt.depth {
        prefix.push(rule.value_at(i));
        if !tt.tree.contains(&prefix) {
            return Err(Error::BranchLeavesTree {
                prefix: prefix.clone(),
            });
        }
        out.push(prefix.clone());
    }
    for pair in out.windows(2) {
        assert!(
            kb_less(&pair[1], &pair[0]),
            "an extension must be Kleene-Brouwer smaller"
        );
    }
    Ok(out)
}

/// Caps that were in force while a pipeline report was produced.
#[derive(Debug, Clone, Serialize)]
pub struct CapProvenance {
    pub degree_cap: usize,
    pub oracle_order_cap: u64,
    pub memory_budget_bytes: u64,
}

/// End-to-end report: tree, its linearization, the witness if a branch was
/// declared, and the group analysis of the resulting order.
#[derive(Debug, Clone, Serialize)]
pub struct PipelineReport {
    pub reduction: &'static str,
    pub tree_nodes: Vec<Vec<u32>>,
    /// Nodes listed ascending in the Kleene-Brouwer order.
    pub kb_ascending: Vec<Vec<u32>>,
    pub descending_witness: Option<Vec<Vec<u32>>>,
    pub caps: CapProvenance,
    pub hopf: HopfAnalysis,
}

/// Tree to group: linearize, then run the full order analysis. `witness`
/// data is included when the input carries a declared branch.
pub fn tree_to_group(
    tt: &TruncatedTree,
    factor: &Arc<FiniteGroup>,
    config: &RunConfig,
) -> Result<PipelineReport> {
    let kb = kb_order(&tt.tree)?;
    let witness = match &tt.branch {
        Some(_) => Some(descending_witness(tt)?),
        None => None,
    };
    let hopf = hopfian_report(&kb.poset, factor, config)?;
    Ok(PipelineReport {
        reduction: "kleene-brouwer (stand-in)",
        tree_nodes: tt.tree.nodes.clone(),
        kb_ascending: kb.ascending().into_iter().cloned().collect(),
        descending_witness: witness,
        caps: CapProvenance {
            degree_cap: config.degree_cap,
            oracle_order_cap: config.oracle_order_cap,
            memory_budget_bytes: config.memory_budget,
        },
        hopf,
    })
}
