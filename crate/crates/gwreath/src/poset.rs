//! Finite partial orders and their downward-closed subsets.
//!
//! Elements are always `0..n-1`; loaders that accept named elements re-index
//! on the way in. Every constructor validates the three order axioms.

use crate::error::{Error, Result};
use serde::Deserialize;
use serde::Serialize;

/// Largest poset for which `downsets` will enumerate (2^n subsets scanned).
pub const DOWNSET_ENUM_LIMIT: usize = 20;
/// Largest poset for which backtracking isomorphism testing is offered.
pub const ISO_LIMIT: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    n: usize,
    /// Row-major truth table: `leq[i * n + j]` iff `i <= j`.
    leq: Vec<bool>,
}

impl Poset {
    /// Validates reflexivity, antisymmetry and transitivity.
    pub fn new(n: usize, leq: Vec<bool>) -> Result<Poset> {
        if leq.len() != n * n {
            return Err(Error::InvalidPoset(format!(
                "relation table has {} entries, expected {}",
                leq.len(),
                n * n
            )));
        }
        let p = Poset { n, leq };
        for i in 0..n {
            if !p.leq(i, i) {
                return Err(Error::InvalidPoset(format!("not reflexive at {i}")));
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && p.leq(i, j) && p.leq(j, i) {
                    return Err(Error::InvalidPoset(format!(
                        "not antisymmetric: {i} <= {j} and {j} <= {i}"
                    )));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if !p.leq(i, j) {
                    continue;
                }
                for k in 0..n {
                    if p.leq(j, k) && !p.leq(i, k) {
                        return Err(Error::InvalidPoset(format!(
                            "not transitive: {i} <= {j} <= {k} but not {i} <= {k}"
                        )));
                    }
                }
            }
        }
        Ok(p)
    }

    /// Linear order `0 < 1 < … < n-1`.
    pub fn chain(n: usize) -> Result<Poset> {
        if n == 0 {
            return Err(Error::InvalidPoset("chain of 0 elements".into()));
        }
        let mut leq = vec![false; n * n];
        for i in 0..n {
            for j in i..n {
                leq[i * n + j] = true;
            }
        }
        Ok(Poset { n, leq })
    }

    /// No two distinct elements comparable.
    pub fn antichain(n: usize) -> Result<Poset> {
        if n == 0 {
            return Err(Error::InvalidPoset("antichain of 0 elements".into()));
        }
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        Ok(Poset { n, leq })
    }

    /// The empty poset; configuration spaces over it have exactly one point.
    pub fn empty() -> Poset {
        Poset { n: 0, leq: vec![] }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.n + j]
    }

    /// Strict comparison.
    #[inline]
    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq(i, j)
    }

    /// `leq'(i, j) = leq(j, i)`; an involution.
    pub fn opposite(&self) -> Poset {
        let n = self.n;
        let mut leq = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                leq[i * n + j] = self.leq[j * n + i];
            }
        }
        Poset { n, leq }
    }

    pub fn is_linear(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| self.leq(i, j) || self.leq(j, i)))
    }

    /// Elements sorted ascending by the order relation (only meaningful when
    /// linear; ties broken by index otherwise).
    pub fn sorted_by_order(&self) -> Vec<usize> {
        let mut elems: Vec<usize> = (0..self.n).collect();
        elems.sort_by_key(|&i| ((0..self.n).filter(|&j| self.lt(j, i)).count(), i));
        elems
    }

    /// Induced order on `members`, re-indexed to `0..k-1` preserving the
    /// relative order of the original indices.
    pub fn restrict(&self, members: &[usize]) -> Result<Poset> {
        let mut sorted: Vec<usize> = members.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        for &m in &sorted {
            if m >= self.n {
                return Err(Error::BadIndex {
                    what: "poset element",
                    index: m,
                    bound: self.n,
                });
            }
        }
        let k = sorted.len();
        let mut leq = vec![false; k * k];
        for (a, &i) in sorted.iter().enumerate() {
            for (b, &j) in sorted.iter().enumerate() {
                leq[a * k + b] = self.leq(i, j);
            }
        }
        Ok(Poset { n: k, leq })
    }

    pub fn is_down_closed(&self, members: &[usize]) -> bool {
        let mut mask = 0u32;
        for &m in members {
            if m >= self.n {
                return false;
            }
            mask |= 1 << m;
        }
        self.is_down_closed_mask(mask)
    }

    pub(crate) fn is_down_closed_mask(&self, mask: u32) -> bool {
        for j in 0..self.n {
            if mask >> j & 1 == 1 {
                for i in 0..self.n {
                    if self.leq(i, j) && mask >> i & 1 == 0 {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// All downward-closed subsets, sorted by the canonical key
    /// (cardinality, then membership mask read as a binary number).
    /// Always contains the empty set and the full set.
    pub fn downsets(&self) -> Result<Vec<DownSet>> {
        if self.n > DOWNSET_ENUM_LIMIT {
            return Err(Error::SizeGuard {
                what: "downset enumeration",
                limit: DOWNSET_ENUM_LIMIT,
                actual: self.n,
            });
        }
        // Down-closed iff each member's predecessor set is included.
        let pred: Vec<u32> = (0..self.n)
            .map(|j| {
                (0..self.n)
                    .filter(|&i| self.leq(i, j))
                    .fold(0u32, |m, i| m | 1 << i)
            })
            .collect();
        let mut out = Vec::new();
        for mask in 0..(1u32 << self.n) {
            let ok = (0..self.n)
                .all(|j| mask >> j & 1 == 0 || pred[j] & !mask == 0);
            if ok {
                out.push(DownSet { mask, n: self.n });
            }
        }
        out.sort_by_key(|d| d.canonical_key());
        Ok(out)
    }

    /// The full element set as a downset.
    pub fn full_downset(&self) -> DownSet {
        DownSet {
            mask: if self.n == 0 { 0 } else { (1u32 << self.n) - 1 },
            n: self.n,
        }
    }

    pub fn empty_downset(&self) -> DownSet {
        DownSet { mask: 0, n: self.n }
    }

    /// Maximal elements of `members` under this order.
    pub fn maximal_elements(&self, members: &[usize]) -> Vec<usize> {
        members
            .iter()
            .copied()
            .filter(|&i| !members.iter().any(|&j| self.lt(i, j)))
            .collect()
    }

    /// Backtracking isomorphism test, guarded to tiny inputs.
    pub fn is_isomorphic(&self, other: &Poset) -> Result<bool> {
        let limit = ISO_LIMIT;
        if self.n > limit || other.n > limit {
            return Err(Error::SizeGuard {
                what: "poset isomorphism",
                limit,
                actual: self.n.max(other.n),
            });
        }
        if self.n != other.n {
            return Ok(false);
        }
        let n = self.n;
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        fn extend(
            a: &Poset,
            b: &Poset,
            map: &mut Vec<usize>,
            used: &mut Vec<bool>,
            depth: usize,
        ) -> bool {
            let n = a.n;
            if depth == n {
                return true;
            }
            'cand: for c in 0..n {
                if used[c] {
                    continue;
                }
                for (prev, &mapped) in map.iter().enumerate().take(depth) {
                    if a.leq(prev, depth) != b.leq(mapped, c)
                        || a.leq(depth, prev) != b.leq(c, mapped)
                    {
                        continue 'cand;
                    }
                }
                map[depth] = c;
                used[c] = true;
                if extend(a, b, map, used, depth + 1) {
                    return true;
                }
                used[c] = false;
            }
            false
        }
        Ok(extend(self, other, &mut map, &mut used, 0))
    }

    /// Rows of the relation as bit strings, for compact reporting.
    pub fn relation_rows(&self) -> Vec<String> {
        (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| if self.leq(i, j) { '1' } else { '0' })
                    .collect()
            })
            .collect()
    }

    /// Human-readable description: `"0<1<2"` for linear orders, otherwise a
    /// cover-pair listing.
    pub fn describe(&self) -> String {
        if self.n == 0 {
            return "empty".into();
        }
        if self.is_linear() {
            return self
                .sorted_by_order()
                .iter()
                .map(|e| e.to_string())
                .collect::<Vec<_>>()
                .join("<");
        }
        let mut covers = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                if self.lt(i, j) && !(0..self.n).any(|k| self.lt(i, k) && self.lt(k, j)) {
                    covers.push(format!("{i}<{j}"));
                }
            }
        }
        if covers.is_empty() {
            format!("antichain on {} elements", self.n)
        } else {
            covers.join(", ")
        }
    }

    /// Load from JSON `{"elements": [names...], "covers": [[a,b],...]}`;
    /// covering pairs mean `a < b`. The reflexive-transitive closure is
    /// computed and the result validated, so cyclic cover data is rejected.
    /// Returns the poset together with the element names in index order.
    pub fn from_json(text: &str) -> Result<(Poset, Vec<String>)> {
        #[derive(Deserialize)]
        struct File {
            elements: Vec<String>,
            #[serde(default)]
            covers: Vec<(String, String)>,
        }
        let file: File = serde_json::from_str(text)?;
        let n = file.elements.len();
        if n == 0 {
            return Err(Error::InvalidPoset("no elements".into()));
        }
        let index_of = |name: &str| -> Result<usize> {
            file.elements
                .iter()
                .position(|e| e == name)
                .ok_or_else(|| Error::InvalidPoset(format!("unknown element {name:?}")))
        };
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for (a, b) in &file.covers {
            leq[index_of(a)? * n + index_of(b)?] = true;
        }
        // Floyd–Warshall closure.
        for k in 0..n {
            for i in 0..n {
                if leq[i * n + k] {
                    for j in 0..n {
                        if leq[k * n + j] {
                            leq[i * n + j] = true;
                        }
                    }
                }
            }
        }
        Ok((Poset::new(n, leq)?, file.elements))
    }

    /// All labeled posets on `n` elements, by brute force over strict-pair
    /// masks. Guarded to `n <= 5`; meant for exhaustive small-instance tests.
    pub fn all_posets(n: usize) -> Result<Vec<Poset>> {
        if n > 5 {
            return Err(Error::SizeGuard {
                what: "poset enumeration",
                limit: 5,
                actual: n,
            });
        }
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .collect();
        let mut out = Vec::new();
        for mask in 0u32..1 << pairs.len() {
            let mut leq = vec![false; n * n];
            for i in 0..n {
                leq[i * n + i] = true;
            }
            for (b, &(i, j)) in pairs.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    leq[i * n + j] = true;
                }
            }
            if let Ok(p) = Poset::new(n, leq) {
                out.push(p);
            }
        }
        Ok(out)
    }
}

/// A downward-closed subset of a poset's elements, stored as a bit mask.
///
/// Construction through [`DownSet::new`] validates closure; the enumeration
/// in [`Poset::downsets`] produces only valid sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DownSet {
    mask: u32,
    n: usize,
}

impl DownSet {
    pub fn new(poset: &Poset, members: &[usize]) -> Result<DownSet> {
        if poset.len() > 32 {
            return Err(Error::SizeGuard {
                what: "downset mask",
                limit: 32,
                actual: poset.len(),
            });
        }
        let mut mask = 0u32;
        for &m in members {
            if m >= poset.len() {
                return Err(Error::BadIndex {
                    what: "downset member",
                    index: m,
                    bound: poset.len(),
                });
            }
            mask |= 1 << m;
        }
        for j in 0..poset.len() {
            if mask >> j & 1 == 1 {
                for i in 0..poset.len() {
                    if poset.leq(i, j) && mask >> i & 1 == 0 {
                        return Err(Error::NotDownwardClosed { below: i, above: j });
                    }
                }
            }
        }
        Ok(DownSet {
            mask,
            n: poset.len(),
        })
    }

    pub fn contains(&self, elem: usize) -> bool {
        elem < self.n && self.mask >> elem & 1 == 1
    }

    pub fn members(&self) -> Vec<usize> {
        (0..self.n).filter(|&i| self.contains(i)).collect()
    }

    pub fn complement(&self) -> Vec<usize> {
        (0..self.n).filter(|&i| !self.contains(i)).collect()
    }

    pub fn cardinality(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn mask(&self) -> u32 {
        self.mask
    }

    pub fn is_subset_of(&self, other: &DownSet) -> bool {
        self.n == other.n && self.mask & !other.mask == 0
    }

    /// Sort key: cardinality first, then the mask as a binary number.
    pub fn canonical_key(&self) -> (usize, u32) {
        (self.cardinality(), self.mask)
    }
}

impl std::fmt::Display for DownSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{{{}}}",
            self.members()
                .iter()
                .map(|m| m.to_string())
                .collect::<Vec<_>>()
                .join(",")
        )
    }
}

impl Serialize for DownSet {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        self.members().serialize(serializer)
    }
}
