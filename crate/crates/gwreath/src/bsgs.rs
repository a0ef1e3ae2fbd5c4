//! Generated permutation groups backed by a base and strong generating set.
//!
//! The stabilizer chain is built by a deterministic Schreier–Sims procedure:
//! no randomization anywhere, so orders like 60^61 are reproducible bit for
//! bit. Transversals are stored as explicit permutation arrays (together
//! with their inverses) under a memory budget; blowing the budget is a
//! structured error rather than a trip into swap.
//!
//! Level `i` keeps the strong generators known to fix the first `i` base
//! points. Processing verifies Schreier's lemma level by level from the
//! bottom up: every Schreier generator of level `i` must sift to the
//! identity through the levels below, and any non-trivial residue is adopted
//! as a new strong generator where it fails. Base points are the least point
//! moved by the generator that forces each level into existence.

use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::perm::{compose_into, Perm};
use num_bigint::BigUint;
use once_cell::sync::OnceCell;
use std::collections::{HashMap, HashSet, VecDeque};

/// A generated permutation group with a lazily built stabilizer chain.
///
/// Construction stores the generators; the chain is built on the first call
/// that needs it and shared afterwards, so a built handle supports concurrent
/// membership queries.
#[derive(Debug)]
pub struct GroupHandle {
    degree: usize,
    gens: Vec<Perm>,
    config: RunConfig,
    chain: OnceCell<Chain>,
}

impl GroupHandle {
    pub fn new(gens: Vec<Perm>, degree: usize) -> Result<GroupHandle> {
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: g.degree(),
                });
            }
        }
        Ok(GroupHandle {
            degree,
            gens,
            config: RunConfig::default(),
            chain: OnceCell::new(),
        })
    }

    pub fn with_config(mut self, config: RunConfig) -> GroupHandle {
        self.config = config;
        self
    }

    fn from_built(gens: Vec<Perm>, chain: Chain, config: RunConfig) -> GroupHandle {
        let handle = GroupHandle {
            degree: chain.degree,
            gens,
            config,
            chain: OnceCell::new(),
        };
        let _ = handle.chain.set(chain);
        handle
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.gens
    }

    fn chain(&self) -> Result<&Chain> {
        self.chain.get_or_try_init(|| {
            let mut chain = Chain::new(self.degree, &self.config);
            for g in &self.gens {
                chain.insert(g.clone())?;
            }
            Ok(chain)
        })
    }

    /// Exact group order.
    pub fn order(&self) -> Result<BigUint> {
        Ok(self.chain()?.order())
    }

    /// Membership by sifting; no element enumeration.
    pub fn contains(&self, p: &Perm) -> Result<bool> {
        if p.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree,
                right: p.degree(),
            });
        }
        Ok(self.chain()?.contains(p))
    }

    pub fn is_trivial(&self) -> Result<bool> {
        Ok(self.chain()?.levels.is_empty())
    }

    /// Base points of the stabilizer chain, in order.
    pub fn base(&self) -> Result<Vec<u32>> {
        Ok(self.chain()?.levels.iter().map(|l| l.base).collect())
    }

    /// Mutual generator membership, confirmed by equal orders.
    pub fn same_subgroup(&self, other: &GroupHandle) -> Result<bool> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree,
                right: other.degree,
            });
        }
        for g in &self.gens {
            if !other.contains(g)? {
                return Ok(false);
            }
        }
        for g in &other.gens {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(self.order()? == other.order()?)
    }
}

/// Result of a normal-closure computation: the generator list (seeds plus
/// the adopted conjugates) and a handle whose chain is already built.
#[derive(Debug)]
pub struct NormalClosure {
    pub generators: Vec<Perm>,
    pub handle: GroupHandle,
}

/// Smallest subgroup containing `seeds` that is stable under conjugation by
/// `ambient`. Fixed-point loop: adopt any conjugate of an adopted generator
/// that fails membership, until stable. Conjugates of generators that were
/// already members need no processing (conjugation is an automorphism, so
/// stability of the adopted generators covers them).
pub fn normal_closure(
    ambient: &[Perm],
    seeds: &[Perm],
    degree: usize,
    config: &RunConfig,
) -> Result<NormalClosure> {
    for g in ambient.iter().chain(seeds.iter()) {
        if g.degree() != degree {
            return Err(Error::DegreeMismatch {
                left: degree,
                right: g.degree(),
            });
        }
    }
    let mut chain = Chain::new(degree, config);
    let mut adopted: Vec<Perm> = Vec::new();
    let mut queue: VecDeque<Perm> = seeds.iter().cloned().collect();
    while let Some(g) = queue.pop_front() {
        if g.is_identity() || chain.contains(&g) {
            continue;
        }
        chain.insert(g.clone())?;
        for a in ambient {
            queue.push_back(g.conjugate(a)?);
        }
        adopted.push(g);
    }
    let handle = GroupHandle::from_built(adopted.clone(), chain, *config);
    Ok(NormalClosure {
        generators: adopted,
        handle,
    })
}

enum Outcome {
    Clean,
    Added(usize),
}

#[derive(Debug)]
struct Chain {
    degree: usize,
    budget: u64,
    bytes: u64,
    /// Strong generator pool; levels reference entries by index.
    pool: Vec<Perm>,
    pool_prints: HashMap<u64, Vec<u32>>,
    levels: Vec<Level>,
}

#[derive(Debug)]
struct Level {
    base: u32,
    gens: Vec<u32>,
    gen_set: HashSet<u32>,
    /// Orbit of `base` in discovery order; `orbit[0] == base`.
    orbit: Vec<u32>,
    /// point -> orbit position + 1; 0 means not in the orbit.
    orbit_pos: Vec<u32>,
    /// `transversal[k]` maps `base` to `orbit[k]`; entry 0 is the identity.
    transversal: Vec<Perm>,
    transversal_inv: Vec<Perm>,
    /// Per orbit position: generators already applied for orbit extension.
    orbit_done: Vec<u32>,
    /// Per orbit position: generators already processed for Schreier pairs.
    schreier_done: Vec<u32>,
}

impl Chain {
    fn new(degree: usize, config: &RunConfig) -> Chain {
        Chain {
            degree,
            budget: config.memory_budget,
            bytes: 0,
            pool: Vec::new(),
            pool_prints: HashMap::new(),
            levels: Vec::new(),
        }
    }

    fn charge(&mut self, bytes: u64, context: &str) -> Result<()> {
        if self.bytes + bytes > self.budget {
            return Err(Error::MemoryBudget {
                budget: self.budget,
                required: self.bytes + bytes - self.budget,
                context: format!("{context} at degree {}", self.degree),
            });
        }
        self.bytes += bytes;
        Ok(())
    }

    fn perm_bytes(&self) -> u64 {
        self.degree as u64 * 4
    }

    fn order(&self) -> BigUint {
        let mut order = BigUint::from(1u32);
        for level in &self.levels {
            order *= BigUint::from(level.orbit.len());
        }
        order
    }

    fn contains(&self, p: &Perm) -> bool {
        let (residue, level) = self.sift_from(p.clone(), 0);
        level == self.levels.len() && residue.is_identity()
    }

    /// Peel transversal representatives starting at `start`. Returns the
    /// residue and the level where sifting stopped (`levels.len()` if it ran
    /// through every level).
    fn sift_from(&self, p: Perm, start: usize) -> (Perm, usize) {
        let mut images = p.images().to_vec();
        let mut scratch = vec![0u32; self.degree];
        for (i, level) in self.levels.iter().enumerate().skip(start) {
            let target = images[level.base as usize];
            let pos_plus = level.orbit_pos[target as usize];
            if pos_plus == 0 {
                return (Perm::from_images(images).expect("valid"), i);
            }
            let pos = (pos_plus - 1) as usize;
            if pos != 0 {
                compose_into(&mut scratch, level.transversal_inv[pos].images(), &images);
                std::mem::swap(&mut images, &mut scratch);
            }
        }
        (Perm::from_images(images).expect("valid"), self.levels.len())
    }

    /// Find `p` in the pool without inserting.
    fn find_pooled(&self, p: &Perm) -> Option<u32> {
        self.pool_prints
            .get(&p.fingerprint())?
            .iter()
            .copied()
            .find(|&i| self.pool[i as usize] == *p)
    }

    fn intern(&mut self, p: Perm) -> Result<u32> {
        if let Some(idx) = self.find_pooled(&p) {
            return Ok(idx);
        }
        self.charge(self.perm_bytes(), "strong generator pool")?;
        let idx = self.pool.len() as u32;
        self.pool_prints.entry(p.fingerprint()).or_default().push(idx);
        self.pool.push(p);
        Ok(idx)
    }

    fn add_gen_to_level(&mut self, level: usize, pool_idx: u32) -> bool {
        let lvl = &mut self.levels[level];
        if lvl.gen_set.insert(pool_idx) {
            lvl.gens.push(pool_idx);
            true
        } else {
            false
        }
    }

    fn push_level(&mut self, base: u32) -> Result<()> {
        // orbit_pos plus the two identity transversal slots
        self.charge(self.degree as u64 * 4 + 2 * self.perm_bytes(), "new level")?;
        let mut orbit_pos = vec![0u32; self.degree];
        orbit_pos[base as usize] = 1;
        self.levels.push(Level {
            base,
            gens: Vec::new(),
            gen_set: HashSet::new(),
            orbit: vec![base],
            orbit_pos,
            transversal: vec![Perm::identity(self.degree)],
            transversal_inv: vec![Perm::identity(self.degree)],
            orbit_done: vec![0],
            schreier_done: vec![0],
        });
        Ok(())
    }

    /// Add one generator of the represented group; sift-redundant inputs are
    /// dropped so the level-0 generating set stays small.
    fn insert(&mut self, g: Perm) -> Result<bool> {
        debug_assert_eq!(g.degree(), self.degree);
        if g.is_identity() {
            return Ok(false);
        }
        if self.levels.is_empty() {
            let base = g.least_moved().expect("non-identity");
            self.push_level(base)?;
            let idx = self.intern(g)?;
            self.add_gen_to_level(0, idx);
            return self.complete().map(|_| true);
        }
        let (residue, stop) = self.sift_from(g.clone(), 0);
        let fail_level = if stop == self.levels.len() {
            if residue.is_identity() {
                return Ok(false);
            }
            let base = residue.least_moved().expect("non-identity");
            self.push_level(base)?;
            self.levels.len() - 1
        } else {
            stop
        };
        let g_idx = self.intern(g)?;
        self.add_gen_to_level(0, g_idx);
        if fail_level >= 1 {
            // the residue fixes the first `fail_level` base points, so it is
            // a legal (and useful) strong generator on the way down
            let r_idx = self.intern(residue)?;
            for l in 1..=fail_level {
                self.add_gen_to_level(l, r_idx);
            }
        }
        self.complete().map(|_| true)
    }

    /// Bottom-up Schreier verification; restarts at any level that receives
    /// a new strong generator.
    fn complete(&mut self) -> Result<()> {
        if self.levels.is_empty() {
            return Ok(());
        }
        let mut i = self.levels.len() - 1;
        loop {
            match self.process_level(i)? {
                Outcome::Clean => {
                    if i == 0 {
                        return Ok(());
                    }
                    i -= 1;
                }
                Outcome::Added(j) => {
                    i = j;
                }
            }
        }
    }

    /// Apply pending generators to pending orbit points until the orbit is
    /// closed, recording transversal representatives and their inverses.
    fn extend_orbit(&mut self, li: usize) -> Result<()> {
        let mut pos = 0;
        while pos < self.levels[li].orbit.len() {
            let done = self.levels[li].orbit_done[pos] as usize;
            let total = self.levels[li].gens.len();
            for gi in done..total {
                let gen_idx = self.levels[li].gens[gi];
                let point = self.levels[li].orbit[pos];
                let image = self.pool[gen_idx as usize].apply(point);
                if self.levels[li].orbit_pos[image as usize] != 0 {
                    continue;
                }
                self.charge(2 * self.perm_bytes(), "transversal")?;
                let rep = if pos == 0 {
                    self.pool[gen_idx as usize].clone()
                } else {
                    self.pool[gen_idx as usize]
                        .compose(&self.levels[li].transversal[pos])
                        .expect("equal degrees")
                };
                let rep_inv = rep.inverse();
                let lvl = &mut self.levels[li];
                lvl.orbit.push(image);
                lvl.orbit_pos[image as usize] = lvl.orbit.len() as u32;
                lvl.transversal.push(rep);
                lvl.transversal_inv.push(rep_inv);
                lvl.orbit_done.push(0);
                lvl.schreier_done.push(0);
            }
            self.levels[li].orbit_done[pos] = total as u32;
            pos += 1;
        }
        Ok(())
    }

    /// One pass over the pending Schreier pairs of level `li`. Returns at
    /// the first adopted residue so the caller can re-verify deeper levels.
    fn process_level(&mut self, li: usize) -> Result<Outcome> {
        self.extend_orbit(li)?;
        let mut pos = 0;
        while pos < self.levels[li].orbit.len() {
            let total = self.levels[li].gens.len();
            let mut gi = self.levels[li].schreier_done[pos] as usize;
            while gi < total {
                self.levels[li].schreier_done[pos] = gi as u32 + 1;
                let gen_idx = self.levels[li].gens[gi];
                gi += 1;
                let level = &self.levels[li];
                let point = level.orbit[pos];
                let image = self.pool[gen_idx as usize].apply(point);
                let image_pos = (level.orbit_pos[image as usize] - 1) as usize;
                // Schreier generator u_{g·γ}⁻¹ ∘ g ∘ u_γ; identity slots skipped.
                let g = &self.pool[gen_idx as usize];
                let mut s_images = vec![0u32; self.degree];
                if pos == 0 {
                    s_images.copy_from_slice(g.images());
                } else {
                    compose_into(&mut s_images, g.images(), level.transversal[pos].images());
                }
                if image_pos != 0 {
                    let mut out = vec![0u32; self.degree];
                    compose_into(
                        &mut out,
                        level.transversal_inv[image_pos].images(),
                        &s_images,
                    );
                    s_images = out;
                }
                let schreier = Perm::from_images(s_images).expect("valid");
                if schreier.is_identity() {
                    continue;
                }
                // already a strong generator one level down → certified there
                if li + 1 < self.levels.len() {
                    if let Some(idx) = self.find_pooled(&schreier) {
                        if self.levels[li + 1].gen_set.contains(&idx) {
                            continue;
                        }
                    }
                }
                let (residue, stop) = self.sift_from(schreier, li + 1);
                let fail_level = if stop == self.levels.len() {
                    if residue.is_identity() {
                        continue;
                    }
                    let base = residue.least_moved().expect("non-identity");
                    self.push_level(base)?;
                    self.levels.len() - 1
                } else {
                    stop
                };
                let r_idx = self.intern(residue)?;
                let mut added = false;
                for l in li + 1..=fail_level {
                    added |= self.add_gen_to_level(l, r_idx);
                }
                if added {
                    return Ok(Outcome::Added(fail_level));
                }
            }
            pos += 1;
        }
        Ok(Outcome::Clean)
    }
}
