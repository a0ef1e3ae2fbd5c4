//! Small finite groups as multiplication tables, plus the brute-force
//! oracles used to cross-check the permutation-group engine: conjugacy
//! classes, the full list of normal subgroups, endomorphism enumeration and
//! Hopfian certificates.
//!
//! The identity always sits at index 0. Groups derived from permutations are
//! indexed lexicographically by image tuple, which makes indices reproducible
//! across runs (the identity's image tuple is lexicographically least, so it
//! lands at 0 automatically).

use crate::error::{Error, Result};
use crate::perm::Perm;
use serde::Deserialize;
use std::collections::HashMap;

/// Largest group order the element-level oracles will touch.
pub const ORACLE_SIZE_LIMIT: usize = 10_000;
/// Largest conjugacy-class count for normal-subgroup enumeration.
pub const CLASS_LIMIT: usize = 25;
/// Assignment-space guard for endomorphism search: `size^gens`.
pub const ENDO_SEARCH_LIMIT: f64 = 1e8;
/// Orders up to this get exhaustive associativity validation.
const ASSOC_EXHAUSTIVE_LIMIT: usize = 200;

#[derive(Debug, Clone)]
pub struct FiniteGroup {
    label: String,
    size: usize,
    mul: Vec<u16>,
    inv: Vec<u16>,
}

/// Membership flags over a group's element indices; closed under product and
/// inverse by construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupSet {
    flags: Vec<bool>,
}

impl SubgroupSet {
    pub fn contains(&self, elem: usize) -> bool {
        self.flags[elem]
    }

    pub fn size(&self) -> usize {
        self.flags.iter().filter(|&&f| f).count()
    }

    pub fn members(&self) -> Vec<usize> {
        (0..self.flags.len()).filter(|&i| self.flags[i]).collect()
    }
}

/// A table group together with the permutations it was built from.
#[derive(Debug, Clone)]
pub struct PermGroupTable {
    pub group: FiniteGroup,
    /// Element `i` of the table is `elements[i]`, sorted by image tuple.
    pub elements: Vec<Perm>,
}

impl PermGroupTable {
    /// Table index of a permutation, if it belongs to the group.
    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.elements.binary_search(p).ok()
    }
}

/// Outcome of the surjective-endomorphism scan.
#[derive(Debug, Clone)]
pub struct HopfianCertificate {
    /// True iff every surjective endomorphism found is injective.
    pub hopfian: bool,
    pub endomorphism_count: usize,
    /// Every surjective endomorphism, as an element-index map.
    pub surjective: Vec<Vec<u16>>,
}

impl FiniteGroup {
    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.size + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub const IDENTITY: usize = 0;

    /// One of `A5, Z2, Z3, Z4, S3, V4, D4`.
    pub fn builtin(name: &str) -> Result<FiniteGroup> {
        match name {
            "Z2" => Self::cyclic("Z2", 2),
            "Z3" => Self::cyclic("Z3", 3),
            "Z4" => Self::cyclic("Z4", 4),
            "V4" => {
                let mul = (0..16).map(|i| ((i / 4) ^ (i % 4)) as u16).collect();
                Self::from_table_raw("V4".into(), 4, mul)
            }
            "S3" => {
                let gens = [
                    Perm::parse_cycles("(0 1 2)", 3)?,
                    Perm::parse_cycles("(0 1)", 3)?,
                ];
                Ok(Self::from_permutations("S3", &gens, 10)?.group)
            }
            "D4" => {
                let gens = [
                    Perm::parse_cycles("(0 1 2 3)", 4)?,
                    Perm::parse_cycles("(1 3)", 4)?,
                ];
                Ok(Self::from_permutations("D4", &gens, 10)?.group)
            }
            "A5" => {
                let gens = [
                    Perm::parse_cycles("(0 1 2 3 4)", 5)?,
                    Perm::parse_cycles("(0 1 2)", 5)?,
                ];
                Ok(Self::from_permutations("A5", &gens, 100)?.group)
            }
            other => Err(Error::UnknownGroup(other.to_string())),
        }
    }

    pub const BUILTIN_NAMES: [&'static str; 7] = ["A5", "Z2", "Z3", "Z4", "S3", "V4", "D4"];

    fn cyclic(label: &str, n: usize) -> Result<FiniteGroup> {
        let mul = (0..n * n).map(|i| ((i / n + i % n) % n) as u16).collect();
        Self::from_table_raw(label.into(), n, mul)
    }

    /// Validate and wrap an explicit multiplication table. Index 0 must be
    /// the identity; associativity is checked exhaustively up to order 200
    /// and on a fixed deterministic sample above that.
    pub fn from_table(label: String, table: &[Vec<usize>]) -> Result<FiniteGroup> {
        let size = table.len();
        if size == 0 || size > u16::MAX as usize {
            return Err(Error::Parse(format!("group size {size} unsupported")));
        }
        let mut mul = vec![0u16; size * size];
        for (i, row) in table.iter().enumerate() {
            if row.len() != size {
                return Err(Error::Parse(format!("row {i} has length {}", row.len())));
            }
            for (j, &v) in row.iter().enumerate() {
                if v >= size {
                    return Err(Error::BadIndex {
                        what: "table entry",
                        index: v,
                        bound: size,
                    });
                }
                mul[i * size + j] = v as u16;
            }
        }
        Self::from_table_raw(label, size, mul)
    }

    fn from_table_raw(label: String, size: usize, mul: Vec<u16>) -> Result<FiniteGroup> {
        let mut g = FiniteGroup {
            label,
            size,
            mul,
            inv: vec![0; size],
        };
        for i in 0..size {
            if g.mul(0, i) != i || g.mul(i, 0) != i {
                return Err(Error::Parse("index 0 is not the identity".into()));
            }
        }
        for i in 0..size {
            let mut found = None;
            for j in 0..size {
                if g.mul(i, j) == 0 {
                    if g.mul(j, i) != 0 {
                        return Err(Error::Parse(format!("one-sided inverse at {i}")));
                    }
                    found = Some(j);
                    break;
                }
            }
            g.inv[i] = found.ok_or_else(|| Error::Parse(format!("no inverse for {i}")))? as u16;
        }
        // Latin-square check: every row and column is a bijection.
        let mut seen = vec![false; size];
        for i in 0..size {
            seen.iter_mut().for_each(|s| *s = false);
            for j in 0..size {
                let v = g.mul(i, j);
                if seen[v] {
                    return Err(Error::Parse(format!("row {i} repeats {v}")));
                }
                seen[v] = true;
            }
        }
        if size <= ASSOC_EXHAUSTIVE_LIMIT {
            for a in 0..size {
                for b in 0..size {
                    let ab = g.mul(a, b);
                    for c in 0..size {
                        if g.mul(ab, c) != g.mul(a, g.mul(b, c)) {
                            return Err(Error::Parse(format!(
                                "not associative at ({a},{b},{c})"
                            )));
                        }
                    }
                }
            }
        } else {
            let mut state = 0x9e37_79b9_7f4a_7c15u64;
            let mut next = move || {
                state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
                let mut z = state;
                z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
                z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
                z ^ (z >> 31)
            };
            for _ in 0..1_000_000 {
                let a = (next() % size as u64) as usize;
                let b = (next() % size as u64) as usize;
                let c = (next() % size as u64) as usize;
                if g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)) {
                    return Err(Error::Parse(format!("not associative at ({a},{b},{c})")));
                }
            }
        }
        Ok(g)
    }

    /// Close the generators, sort the elements by image tuple and build the
    /// table. Errors if the closure exceeds `cap` elements.
    pub fn from_permutations(label: &str, gens: &[Perm], cap: u64) -> Result<PermGroupTable> {
        let degree = gens.first().map(|g| g.degree()).unwrap_or(1);
        for g in gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: g.degree(),
                });
            }
        }
        let elements = closure_elements(gens, degree, cap)?;
        let size = elements.len();

        // A short list of points whose images distinguish all elements.
        let base = distinguishing_points(&elements);
        let mut index_by_key: HashMap<Vec<u32>, u16> = HashMap::with_capacity(size);
        for (i, e) in elements.iter().enumerate() {
            let key: Vec<u32> = base.iter().map(|&b| e.apply(b)).collect();
            index_by_key.insert(key, i as u16);
        }

        let mut mul = vec![0u16; size * size];
        let mut key = vec![0u32; base.len()];
        for i in 0..size {
            for j in 0..size {
                for (slot, &b) in key.iter_mut().zip(base.iter()) {
                    *slot = elements[i].apply(elements[j].apply(b));
                }
                mul[i * size + j] = *index_by_key
                    .get(&key)
                    .expect("product of group elements stays in the closure");
            }
        }
        let group = Self::from_table_raw(label.to_string(), size, mul)?;
        debug_assert!(elements[0].is_identity());
        Ok(PermGroupTable { group, elements })
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.size).all(|i| (0..self.size).all(|j| self.mul(i, j) == self.mul(j, i)))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut n = 1;
        while x != 0 {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }

    /// Smallest subgroup containing `seed`, as membership flags.
    pub fn subgroup_closure(&self, seed: &[usize]) -> SubgroupSet {
        let mut flags = vec![false; self.size];
        flags[0] = true;
        let mut members = vec![0usize];
        let mut queue: Vec<usize> = Vec::new();
        for &s in seed {
            if !flags[s] {
                flags[s] = true;
                members.push(s);
                queue.push(s);
            }
        }
        while let Some(x) = queue.pop() {
            // products with everything already in, both sides
            let snapshot = members.clone();
            for y in snapshot {
                for p in [self.mul(x, y), self.mul(y, x)] {
                    if !flags[p] {
                        flags[p] = true;
                        members.push(p);
                        queue.push(p);
                    }
                }
            }
            let ix = self.inv(x);
            if !flags[ix] {
                flags[ix] = true;
                members.push(ix);
                queue.push(ix);
            }
        }
        SubgroupSet { flags }
    }

    /// A short deterministic generating sequence: scan elements in index
    /// order and keep each one that enlarges the generated subgroup.
    pub fn greedy_generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut closure = self.subgroup_closure(&[]);
        for i in 1..self.size {
            if closure.size() == self.size {
                break;
            }
            if !closure.contains(i) {
                gens.push(i);
                closure = self.subgroup_closure(&gens);
            }
        }
        gens
    }

    /// Orbits of the conjugation action, each sorted ascending, the list
    /// sorted by least element (so the identity's singleton class is first).
    pub fn conjugacy_classes(&self) -> Result<Vec<Vec<usize>>> {
        if self.size > ORACLE_SIZE_LIMIT {
            return Err(Error::SizeGuard {
                what: "conjugacy classes",
                limit: ORACLE_SIZE_LIMIT,
                actual: self.size,
            });
        }
        let mut assigned = vec![false; self.size];
        let mut classes = Vec::new();
        for x in 0..self.size {
            if assigned[x] {
                continue;
            }
            let mut class = Vec::new();
            let mut queue = vec![x];
            assigned[x] = true;
            while let Some(y) = queue.pop() {
                class.push(y);
                for g in 0..self.size {
                    let c = self.mul(self.mul(g, y), self.inv(g));
                    if !assigned[c] {
                        assigned[c] = true;
                        queue.push(c);
                    }
                }
            }
            class.sort_unstable();
            classes.push(class);
        }
        classes.sort_by_key(|c| c[0]);
        Ok(classes)
    }

    /// Every normal subgroup, by closing unions of conjugacy classes.
    ///
    /// Walks the lattice upward from the trivial subgroup: the closure of a
    /// normal subgroup together with one more conjugacy class is again
    /// normal, and every normal subgroup is reached this way. Results are
    /// sorted by size, then by membership.
    pub fn normal_subgroups(&self) -> Result<Vec<SubgroupSet>> {
        if self.size > ORACLE_SIZE_LIMIT {
            return Err(Error::SizeGuard {
                what: "normal subgroup enumeration",
                limit: ORACLE_SIZE_LIMIT,
                actual: self.size,
            });
        }
        let classes = self.conjugacy_classes()?;
        if classes.len() > CLASS_LIMIT {
            return Err(Error::SizeGuard {
                what: "normal subgroup enumeration (conjugacy classes)",
                limit: CLASS_LIMIT,
                actual: classes.len(),
            });
        }
        let trivial = self.subgroup_closure(&[]);
        let mut seen = std::collections::BTreeSet::new();
        seen.insert(trivial.members());
        let mut found = vec![trivial];
        let mut frontier = vec![0usize];
        while let Some(i) = frontier.pop() {
            let current = found[i].clone();
            for class in &classes {
                if class.iter().all(|&e| current.contains(e)) {
                    continue;
                }
                let mut seed = current.members();
                seed.extend_from_slice(class);
                let bigger = self.subgroup_closure(&seed);
                if seen.insert(bigger.members()) {
                    found.push(bigger);
                    frontier.push(found.len() - 1);
                }
            }
        }
        found.sort_by_key(|s| (s.size(), s.members()));
        Ok(found)
    }

    /// All homomorphisms of the group into itself, found by assigning images
    /// to `gens` with immediate consistency checking while the partial map is
    /// extended over the generated subgroup. Each returned map is re-verified
    /// multiplicative over all pairs. Maps are element-index vectors, sorted.
    pub fn endomorphisms(&self, gens: &[usize]) -> Result<Vec<Vec<u16>>> {
        let search_space = (self.size as f64).powi(gens.len() as i32);
        if search_space > ENDO_SEARCH_LIMIT {
            return Err(Error::SizeGuard {
                what: "endomorphism search space",
                limit: ENDO_SEARCH_LIMIT as usize,
                actual: search_space as usize,
            });
        }
        if self.subgroup_closure(gens).size() != self.size {
            return Err(Error::GeneratorsDoNotGenerate);
        }
        let gen_orders: Vec<usize> = gens.iter().map(|&g| self.element_order(g)).collect();
        let orders: Vec<usize> = (0..self.size).map(|x| self.element_order(x)).collect();

        let mut results = Vec::new();
        let mut images = vec![0usize; gens.len()];
        self.assign(gens, &gen_orders, &orders, 0, &mut images, &mut results);
        for phi in &results {
            for a in 0..self.size {
                for b in 0..self.size {
                    debug_assert_eq!(
                        phi[self.mul(a, b)] as usize,
                        self.mul(phi[a] as usize, phi[b] as usize)
                    );
                    if phi[self.mul(a, b)] as usize
                        != self.mul(phi[a] as usize, phi[b] as usize)
                    {
                        unreachable!("extension produced a non-homomorphism");
                    }
                }
            }
        }
        results.sort_unstable();
        Ok(results)
    }

    fn assign(
        &self,
        gens: &[usize],
        gen_orders: &[usize],
        orders: &[usize],
        depth: usize,
        images: &mut Vec<usize>,
        results: &mut Vec<Vec<u16>>,
    ) {
        if depth == gens.len() {
            if let Some(full) = self.extend_map(gens, images, gens.len()) {
                results.push(full.into_iter().map(|x| x as u16).collect());
            }
            return;
        }
        for t in 0..self.size {
            // a homomorphism cannot raise element order
            if !gen_orders[depth].is_multiple_of(orders[t]) {
                continue;
            }
            images[depth] = t;
            if self.extend_map(gens, images, depth + 1).is_some() {
                self.assign(gens, gen_orders, orders, depth + 1, images, results);
            }
        }
    }

    /// Extend a partial generator-image assignment over the subgroup the
    /// first `upto` generators generate; `None` on any inconsistency. When
    /// all generators are assigned the result is total.
    fn extend_map(&self, gens: &[usize], images: &[usize], upto: usize) -> Option<Vec<usize>> {
        const UNSET: usize = usize::MAX;
        let mut phi = vec![UNSET; self.size];
        phi[0] = 0;
        let mut queue = vec![0usize];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for k in 0..upto {
                let y = self.mul(x, gens[k]);
                let img = self.mul(phi[x], images[k]);
                if phi[y] == UNSET {
                    phi[y] = img;
                    queue.push(y);
                } else if phi[y] != img {
                    return None;
                }
            }
        }
        Some(phi)
    }

    /// Scan all endomorphisms: Hopfian iff every surjective one is injective.
    /// The surjective maps are returned as the certificate.
    pub fn hopfian_bruteforce(&self, gens: &[usize]) -> Result<HopfianCertificate> {
        let endos = self.endomorphisms(gens)?;
        let mut surjective = Vec::new();
        let mut hopfian = true;
        for phi in &endos {
            let mut hit = vec![false; self.size];
            for &v in phi {
                hit[v as usize] = true;
            }
            if hit.iter().all(|&h| h) {
                let mut distinct = std::collections::BTreeSet::new();
                let injective = phi.iter().all(|&v| distinct.insert(v));
                if !injective {
                    hopfian = false;
                }
                surjective.push(phi.clone());
            }
        }
        Ok(HopfianCertificate {
            hopfian,
            endomorphism_count: endos.len(),
            surjective,
        })
    }

    /// Load `{"builtin": "A5"}` or `{"table": [[...]]}`.
    pub fn from_json_spec(text: &str) -> Result<FiniteGroup> {
        #[derive(Deserialize)]
        struct Spec {
            builtin: Option<String>,
            table: Option<Vec<Vec<usize>>>,
        }
        let spec: Spec = serde_json::from_str(text)?;
        match (spec.builtin, spec.table) {
            (Some(name), None) => Self::builtin(&name),
            (None, Some(table)) => Self::from_table("table".into(), &table),
            _ => Err(Error::Parse(
                "group spec needs exactly one of \"builtin\" or \"table\"".into(),
            )),
        }
    }
}

/// Breadth-first closure of the generators under composition, sorted by
/// image tuple. Errors when the element count would exceed `cap`.
pub fn closure_elements(gens: &[Perm], degree: usize, cap: u64) -> Result<Vec<Perm>> {
    let mut by_print: HashMap<u64, Vec<usize>> = HashMap::new();
    let mut elements = vec![Perm::identity(degree)];
    by_print.insert(elements[0].fingerprint(), vec![0]);
    let mut head = 0;
    while head < elements.len() {
        let current = elements[head].clone();
        head += 1;
        for g in gens {
            let next = g.compose(&current)?;
            let fp = next.fingerprint();
            let bucket = by_print.entry(fp).or_default();
            if bucket.iter().any(|&i| elements[i] == next) {
                continue;
            }
            if elements.len() as u64 + 1 > cap {
                return Err(Error::OrderGuard {
                    cap,
                    order: format!("> {}", elements.len()),
                });
            }
            bucket.push(elements.len());
            elements.push(next);
        }
    }
    elements.sort_unstable();
    Ok(elements)
}

/// Incrementally pick points whose image vectors separate all elements.
fn distinguishing_points(elements: &[Perm]) -> Vec<u32> {
    if elements.len() <= 1 {
        return vec![];
    }
    let degree = elements[0].degree();
    let mut points: Vec<u32> = Vec::new();
    // groups of element indices not yet separated
    let mut groups: Vec<Vec<usize>> = vec![(0..elements.len()).collect()];
    for p in 0..degree as u32 {
        if groups.is_empty() {
            break;
        }
        let mut next_groups = Vec::new();
        let mut split_any = false;
        for g in &groups {
            let mut by_image: HashMap<u32, Vec<usize>> = HashMap::new();
            for &i in g {
                by_image.entry(elements[i].apply(p)).or_default().push(i);
            }
            if by_image.len() > 1 {
                split_any = true;
            }
            for (_, sub) in by_image {
                if sub.len() > 1 {
                    next_groups.push(sub);
                }
            }
        }
        if split_any {
            points.push(p);
            groups = next_groups;
        }
    }
    assert!(groups.is_empty(), "distinct permutations must differ somewhere");
    points
}
