//! The generalized wreath product over a finite poset.
//!
//! Configurations assign one factor element to each poset element; they are
//! indexed in mixed radix with poset element 0 as the least significant
//! digit. The coordinate generator at `(λ, h)` left-multiplies coordinate
//! `λ` by `h`, but only on configurations whose coordinates strictly above
//! `λ` are all the identity — otherwise the configuration is frozen. The
//! group these permutations generate specializes to the restricted wreath
//! product on a two-element chain and to the direct sum on an antichain.
//!
//! For a downward-closed `Γ`, configurations agreeing outside `Γ` form a
//! congruence; the kernel of the action on its classes is the normal
//! closure of the subgroup generated at `Γ`, and the quotient acts exactly
//! like the wreath product over the restriction to `Λ ∖ Γ`.

use crate::bsgs::{normal_closure, GroupHandle};
use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::finite_group::FiniteGroup;
use crate::perm::Perm;
use crate::poset::{DownSet, Poset};
use num_bigint::BigUint;
use serde::Serialize;
use std::sync::Arc;

/// The configuration space: poset, one factor group per element, and the
/// mixed-radix indexing of all configurations.
#[derive(Debug, Clone)]
pub struct ConfigSpace {
    poset: Poset,
    factors: Vec<Arc<FiniteGroup>>,
    strides: Vec<usize>,
    total: usize,
    config: RunConfig,
}

impl ConfigSpace {
    /// One factor per poset element; the product of the factor sizes must
    /// stay within the degree cap.
    pub fn new(
        poset: Poset,
        factors: Vec<Arc<FiniteGroup>>,
        config: &RunConfig,
    ) -> Result<ConfigSpace> {
        if factors.len() != poset.len() {
            return Err(Error::Parse(format!(
                "{} factors for a poset of {} elements",
                factors.len(),
                poset.len()
            )));
        }
        let mut strides = vec![1usize; poset.len()];
        let mut total: usize = 1;
        for (i, f) in factors.iter().enumerate() {
            strides[i] = total;
            total = total.saturating_mul(f.size());
            if total > config.degree_cap {
                let product = factors
                    .iter()
                    .map(|f| f.size().to_string())
                    .collect::<Vec<_>>()
                    .join(" * ");
                return Err(Error::DegreeCap {
                    cap: config.degree_cap,
                    detail: format!("configuration space size {product}"),
                });
            }
        }
        Ok(ConfigSpace {
            poset,
            factors,
            strides,
            total,
            config: *config,
        })
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn factors(&self) -> &[Arc<FiniteGroup>] {
        &self.factors
    }

    pub fn total(&self) -> usize {
        self.total
    }

    pub fn run_config(&self) -> &RunConfig {
        &self.config
    }

    #[inline]
    pub fn coord(&self, idx: usize, lam: usize) -> usize {
        idx / self.strides[lam] % self.factors[lam].size()
    }

    pub fn encode(&self, coords: &[usize]) -> usize {
        coords
            .iter()
            .zip(&self.strides)
            .map(|(&c, &s)| c * s)
            .sum()
    }

    pub fn decode(&self, idx: usize) -> Vec<usize> {
        (0..self.poset.len()).map(|l| self.coord(idx, l)).collect()
    }
}

/// The `∼_Γ` partition: configurations agreeing outside `Γ`.
///
/// Class indices follow the mixed radix over the outside coordinates, which
/// coincides with ordering classes by their least member (the member whose
/// `Γ`-coordinates are all zero).
#[derive(Debug, Clone)]
pub struct Classes {
    members: Vec<usize>,
    outside: Vec<usize>,
    class_of: Vec<u32>,
    reps: Vec<u32>,
}

impl Classes {
    pub fn count(&self) -> usize {
        self.reps.len()
    }

    pub fn class_of(&self, config: usize) -> usize {
        self.class_of[config] as usize
    }

    /// Least configuration of each class.
    pub fn representatives(&self) -> &[u32] {
        &self.reps
    }

    /// Elements outside the defining subset, ascending.
    pub fn outside(&self) -> &[usize] {
        &self.outside
    }
}

/// How a kernel subgroup was verified against its defining predicate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum KernelVerification {
    /// Ambient order small enough: element-by-element scan matched exactly.
    OracleExact,
    /// Closure generators pass the predicate, and the closure order equals
    /// an independently derived kernel order.
    InclusionAndOrder,
    /// Only closure ⊆ kernel was verifiable at this scale.
    InclusionOnly,
}

/// The kernel `D_Γ` as a generated group.
#[derive(Debug)]
pub struct DGammaGroup {
    pub gamma: DownSet,
    pub generators: Vec<Perm>,
    pub handle: GroupHandle,
    pub verification: KernelVerification,
}

/// Witness of one generator failing the quotient comparison.
#[derive(Debug, Clone, Serialize)]
pub struct QuotientMismatch {
    pub lam: usize,
    pub h: usize,
    pub config: usize,
}

/// Outcome of the quotient isomorphism check for one downset.
#[derive(Debug, Clone, Serialize)]
pub struct QuotientIso {
    pub ok: bool,
    pub class_count: usize,
    /// Witness relabeling: class `k` of the congruence corresponds to
    /// configuration `k` of the restricted space; entry `k` is the least
    /// member of that class in the big space.
    pub relabeling: Vec<u32>,
    pub mismatch: Option<QuotientMismatch>,
}

#[derive(Debug, Clone, Serialize)]
pub struct MatchedNormal {
    pub downset: Vec<usize>,
    pub order: String,
}

/// Comparison of the brute-force normal subgroup list against `{D_Γ}`.
#[derive(Debug, Clone, Serialize)]
pub struct ClassifyReport {
    pub group_order: String,
    pub normal_subgroup_count: usize,
    pub downset_count: usize,
    pub matched: Vec<MatchedNormal>,
    pub unmatched_normal_orders: Vec<usize>,
    /// Groups of distinct downsets whose kernels coincide.
    pub kernel_collisions: Vec<Vec<Vec<usize>>>,
}

/// The wreath group: the configuration space, the full table of coordinate
/// generators (index 0 of each row is the identity), and a handle over the
/// non-identity generators.
#[derive(Debug)]
pub struct WreathGroup {
    space: ConfigSpace,
    xi: Vec<Vec<Perm>>,
    gens: Vec<Perm>,
    gen_labels: Vec<(usize, usize)>,
    handle: GroupHandle,
}

impl WreathGroup {
    pub fn new(space: ConfigSpace) -> Result<WreathGroup> {
        let n = space.poset.len();
        let total = space.total;
        let mut xi: Vec<Vec<Perm>> = Vec::with_capacity(n);
        let mut gens = Vec::new();
        let mut gen_labels = Vec::new();
        for lam in 0..n {
            let size = space.factors[lam].size();
            let stride = space.strides[lam];
            let above: Vec<usize> = (0..n).filter(|&e| space.poset.lt(lam, e)).collect();
            // per configuration: its λ-coordinate, and whether it is frozen
            let mut coord = vec![0u32; total];
            let mut frozen = vec![false; total];
            for idx in 0..total {
                coord[idx] = space.coord(idx, lam) as u32;
                frozen[idx] = above.iter().any(|&e| space.coord(idx, e) != 0);
            }
            let mut row = Vec::with_capacity(size);
            row.push(Perm::identity(total));
            for h in 1..size {
                let mut images = vec![0u32; total];
                for idx in 0..total {
                    images[idx] = if frozen[idx] {
                        idx as u32
                    } else {
                        let c = coord[idx] as usize;
                        (idx - c * stride + space.factors[lam].mul(h, c) * stride) as u32
                    };
                }
                let p = Perm::from_images(images)?;
                gens.push(p.clone());
                gen_labels.push((lam, h));
                row.push(p);
            }
            debug_assert!(row[0].is_identity());
            xi.push(row);
        }
        let handle = GroupHandle::new(gens.clone(), total)?.with_config(space.config);
        Ok(WreathGroup {
            space,
            xi,
            gens,
            gen_labels,
            handle,
        })
    }

    pub fn space(&self) -> &ConfigSpace {
        &self.space
    }

    /// The permutation acting as `h` at coordinate `lam`.
    pub fn xi(&self, lam: usize, h: usize) -> Result<&Perm> {
        let row = self.xi.get(lam).ok_or(Error::BadIndex {
            what: "poset element",
            index: lam,
            bound: self.xi.len(),
        })?;
        row.get(h).ok_or(Error::BadIndex {
            what: "factor element",
            index: h,
            bound: row.len(),
        })
    }

    /// Non-identity generators, in `(λ ascending, h ascending)` order.
    pub fn generators(&self) -> &[Perm] {
        &self.gens
    }

    /// `(λ, h)` for each generator, parallel to [`Self::generators`].
    pub fn generator_labels(&self) -> &[(usize, usize)] {
        &self.gen_labels
    }

    pub fn handle(&self) -> &GroupHandle {
        &self.handle
    }

    pub fn order(&self) -> Result<BigUint> {
        self.handle.order()
    }

    /// Generators of `H_Γ` for an arbitrary subset (not necessarily
    /// downward closed).
    pub fn subgroup_h_gamma(&self, members: &[usize]) -> Vec<Perm> {
        self.gens
            .iter()
            .zip(&self.gen_labels)
            .filter(|(_, (lam, _))| members.contains(lam))
            .map(|(g, _)| g.clone())
            .collect()
    }

    /// The congruence classes for a validated downset.
    pub fn classes(&self, gamma: &DownSet) -> Result<Classes> {
        if gamma.ground_size() != self.space.poset.len() {
            return Err(Error::BadIndex {
                what: "downset ground set",
                index: gamma.ground_size(),
                bound: self.space.poset.len(),
            });
        }
        // reject early: the action contract below needs downward closure
        let members = gamma.members();
        if !self.space.poset.is_down_closed(&members) {
            let culprit = members
                .iter()
                .find_map(|&j| {
                    (0..self.space.poset.len())
                        .find(|&i| self.space.poset.leq(i, j) && !members.contains(&i))
                        .map(|i| (i, j))
                })
                .unwrap_or((0, 0));
            return Err(Error::NotDownwardClosed {
                below: culprit.0,
                above: culprit.1,
            });
        }
        Ok(self.classes_raw(&members))
    }

    /// The agreement-outside-`members` partition without the closure
    /// precondition; the induced action is only well defined for downward
    /// closed subsets, and [`Self::quotient_action`] detects violations.
    pub fn classes_raw(&self, members: &[usize]) -> Classes {
        let n = self.space.poset.len();
        let outside: Vec<usize> = (0..n).filter(|e| !members.contains(e)).collect();
        let mut ostrides = vec![1usize; outside.len()];
        let mut count = 1usize;
        for (k, &e) in outside.iter().enumerate() {
            ostrides[k] = count;
            count *= self.space.factors[e].size();
        }
        let mut class_of = vec![0u32; self.space.total];
        for (idx, slot) in class_of.iter_mut().enumerate() {
            let mut c = 0usize;
            for (k, &e) in outside.iter().enumerate() {
                c += self.space.coord(idx, e) * ostrides[k];
            }
            *slot = c as u32;
        }
        let mut reps = vec![0u32; count];
        for (k, rep) in reps.iter_mut().enumerate() {
            let mut idx = 0usize;
            for (j, &e) in outside.iter().enumerate() {
                idx += (k / ostrides[j] % self.space.factors[e].size()) * self.space.strides[e];
            }
            *rep = idx as u32;
        }
        Classes {
            members: members.to_vec(),
            outside,
            class_of,
            reps,
        }
    }

    /// The permutation `g` induces on the classes. Every member of a class
    /// must land in a single class; a split is reported, not assumed away.
    pub fn quotient_action(&self, g: &Perm, classes: &Classes) -> Result<Perm> {
        if g.degree() != self.space.total {
            return Err(Error::DegreeMismatch {
                left: self.space.total,
                right: g.degree(),
            });
        }
        let mut images = vec![0u32; classes.count()];
        for (k, &rep) in classes.reps.iter().enumerate() {
            images[k] = classes.class_of[g.apply(rep) as usize];
        }
        for idx in 0..self.space.total {
            let class = classes.class_of[idx] as usize;
            if classes.class_of[g.apply(idx as u32) as usize] != images[class] {
                return Err(Error::WellDefinednessViolation {
                    gamma: classes.members.clone(),
                    generator: g.to_string(),
                    config_a: classes.reps[class] as usize,
                    config_b: idx,
                });
            }
        }
        Perm::from_images(images)
    }

    /// True iff `g` fixes every coordinate outside `gamma` on every
    /// configuration — the kernel predicate for `D_Γ`.
    pub fn d_gamma_membership(&self, g: &Perm, gamma: &DownSet) -> bool {
        let outside = gamma.complement();
        (0..self.space.total).all(|idx| {
            let image = g.apply(idx as u32) as usize;
            outside
                .iter()
                .all(|&e| self.space.coord(image, e) == self.space.coord(idx, e))
        })
    }

    /// Independently derived kernel order, where a product formula exists:
    /// antichains (direct sums) and the two-element chain (the restricted
    /// wreath product).
    pub fn independent_kernel_order(&self, gamma: &DownSet) -> Option<BigUint> {
        let p = &self.space.poset;
        let members = gamma.members();
        if members.is_empty() {
            return Some(BigUint::from(1u32));
        }
        let is_antichain = (0..p.len()).all(|i| (0..p.len()).all(|j| !p.lt(i, j)));
        if is_antichain {
            let mut order = BigUint::from(1u32);
            for &e in &members {
                order *= BigUint::from(self.space.factors[e].size());
            }
            return Some(order);
        }
        if p.len() == 2 {
            let (bottom, top) = if p.lt(0, 1) { (0, 1) } else { (1, 0) };
            let base = BigUint::from(self.space.factors[bottom].size())
                .pow(self.space.factors[top].size() as u32);
            if members == vec![bottom] {
                return Some(base);
            }
            if members.len() == 2 {
                return Some(base * BigUint::from(self.space.factors[top].size()));
            }
        }
        None
    }

    /// The kernel `D_Γ` as the normal closure of `H_Γ`, with the strongest
    /// verification feasible at this scale.
    pub fn d_gamma_group(&self, gamma: &DownSet) -> Result<DGammaGroup> {
        // reject non-downsets early, as for classes()
        let _ = self.classes(gamma)?;
        let seeds = self.subgroup_h_gamma(&gamma.members());
        let nc = normal_closure(&self.gens, &seeds, self.space.total, &self.space.config)?;
        for g in &nc.generators {
            assert!(
                self.d_gamma_membership(g, gamma),
                "normal closure left the kernel: generator {g} violates the predicate for {gamma}"
            );
        }
        let ambient_order = self.handle.order()?;
        let verification = if ambient_order <= BigUint::from(self.space.config.oracle_order_cap) {
            let elements = crate::finite_group::closure_elements(
                &self.gens,
                self.space.total,
                self.space.config.oracle_order_cap,
            )?;
            let mut scan_count = 0u64;
            for e in &elements {
                let in_kernel = self.d_gamma_membership(e, gamma);
                if in_kernel {
                    scan_count += 1;
                }
                assert!(
                    in_kernel == nc.handle.contains(e)?,
                    "kernel scan disagrees with the normal closure at {e} for {gamma}"
                );
            }
            assert_eq!(BigUint::from(scan_count), nc.handle.order()?);
            KernelVerification::OracleExact
        } else if let Some(expected) = self.independent_kernel_order(gamma) {
            assert_eq!(
                expected,
                nc.handle.order()?,
                "closure order differs from the independent kernel order for {gamma}"
            );
            KernelVerification::InclusionAndOrder
        } else {
            KernelVerification::InclusionOnly
        };
        Ok(DGammaGroup {
            gamma: *gamma,
            generators: nc.generators,
            handle: nc.handle,
            verification,
        })
    }

    /// Verify that the action on `S/∼_Γ` is the wreath product over the
    /// restriction to `Λ ∖ Γ`: generators at `Γ` must become trivial and
    /// every other generator must match its counterpart, pointwise.
    pub fn quotient_iso_check(&self, gamma: &DownSet) -> Result<QuotientIso> {
        let classes = self.classes(gamma)?;
        let restricted = self.space.poset.restrict(&classes.outside)?;
        let factors: Vec<Arc<FiniteGroup>> = classes
            .outside
            .iter()
            .map(|&e| Arc::clone(&self.space.factors[e]))
            .collect();
        let small = WreathGroup::new(ConfigSpace::new(restricted, factors, &self.space.config)?)?;
        debug_assert_eq!(small.space.total, classes.count());

        let mut ok = true;
        let mut mismatch = None;
        'generators: for (g, &(lam, h)) in self.gens.iter().zip(&self.gen_labels) {
            let q = self.quotient_action(g, &classes)?;
            let expected = match classes.outside.iter().position(|&e| e == lam) {
                None => None, // λ ∈ Γ: the quotient action must be trivial
                Some(lam_small) => Some(small.xi(lam_small, h)?),
            };
            let matches = match expected {
                None => q.is_identity(),
                Some(e) => q == *e,
            };
            if !matches {
                let witness = (0..classes.count())
                    .find(|&k| {
                        let got = q.apply(k as u32);
                        match expected {
                            None => got != k as u32,
                            Some(e) => got != e.apply(k as u32),
                        }
                    })
                    .unwrap_or(0);
                ok = false;
                mismatch = Some(QuotientMismatch {
                    lam,
                    h,
                    config: classes.reps[witness] as usize,
                });
                break 'generators;
            }
        }
        Ok(QuotientIso {
            ok,
            class_count: classes.count(),
            relabeling: classes.reps.clone(),
            mismatch,
        })
    }

    /// Enumerate all normal subgroups by brute force and match them against
    /// the kernels `{D_Γ}`. Only feasible when the whole group fits under
    /// the oracle order cap.
    pub fn classify_normal_subgroups(&self) -> Result<ClassifyReport> {
        let order = self.handle.order()?;
        let cap = self.space.config.oracle_order_cap;
        if order > BigUint::from(cap) {
            return Err(Error::OrderGuard {
                cap,
                order: order.to_string(),
            });
        }
        let table =
            FiniteGroup::from_permutations("wreath", &self.gens, cap)?;
        let normals = table.group.normal_subgroups()?;
        let downsets = self.space.poset.downsets()?;

        // member sets of each kernel, as sorted element-index lists
        let mut kernel_members: Vec<(DownSet, Vec<usize>)> = Vec::new();
        for ds in &downsets {
            let members: Vec<usize> = (0..table.elements.len())
                .filter(|&i| self.d_gamma_membership(&table.elements[i], ds))
                .collect();
            kernel_members.push((*ds, members));
        }

        let mut kernel_collisions: Vec<Vec<Vec<usize>>> = Vec::new();
        for (i, (dsa, ma)) in kernel_members.iter().enumerate() {
            let mut group = vec![dsa.members()];
            for (dsb, mb) in kernel_members.iter().skip(i + 1) {
                if ma == mb {
                    group.push(dsb.members());
                }
            }
            if group.len() > 1
                && !kernel_collisions
                    .iter()
                    .any(|g: &Vec<Vec<usize>>| g.contains(&group[0]))
            {
                kernel_collisions.push(group);
            }
        }

        let mut matched = Vec::new();
        let mut unmatched = Vec::new();
        for n in &normals {
            let members = n.members();
            match kernel_members.iter().find(|(_, m)| *m == members) {
                Some((ds, _)) => matched.push(MatchedNormal {
                    downset: ds.members(),
                    order: members.len().to_string(),
                }),
                None => unmatched.push(members.len()),
            }
        }
        Ok(ClassifyReport {
            group_order: order.to_string(),
            normal_subgroup_count: normals.len(),
            downset_count: downsets.len(),
            matched,
            unmatched_normal_orders: unmatched,
            kernel_collisions,
        })
    }
}

/// Convenience constructor: same factor at every element.
pub fn uniform_space(
    poset: Poset,
    factor: &Arc<FiniteGroup>,
    config: &RunConfig,
) -> Result<ConfigSpace> {
    let factors = vec![Arc::clone(factor); poset.len()];
    ConfigSpace::new(poset, factors, config)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_group::closure_elements;

    fn builtin(name: &str) -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::builtin(name).unwrap())
    }

    fn wreath(poset: Poset, factor: &str) -> WreathGroup {
        let space = uniform_space(poset, &builtin(factor), &RunConfig::default()).unwrap();
        WreathGroup::new(space).unwrap()
    }

    #[test]
    fn space_sizes() {
        let cfg = RunConfig::default();
        let s = uniform_space(Poset::chain(2).unwrap(), &builtin("A5"), &cfg).unwrap();
        assert_eq!(s.total(), 3600);
        let s = uniform_space(Poset::antichain(3).unwrap(), &builtin("Z2"), &cfg).unwrap();
        assert_eq!(s.total(), 8);
        let s = uniform_space(Poset::chain(3).unwrap(), &builtin("A5"), &cfg).unwrap();
        assert_eq!(s.total(), 216_000);
    }

    #[test]
    fn degree_cap_names_the_product() {
        let cfg = RunConfig::default().with_degree_cap(100);
        let err = uniform_space(Poset::chain(2).unwrap(), &builtin("A5"), &cfg).unwrap_err();
        match err {
            Error::DegreeCap { cap, detail } => {
                assert_eq!(cap, 100);
                assert!(detail.contains("60 * 60"), "got {detail}");
            }
            other => panic!("wrong error {other:?}"),
        }
    }

    #[test]
    fn encode_decode_round_trip() {
        let s = ConfigSpace::new(
            Poset::chain(3).unwrap(),
            vec![builtin("Z2"), builtin("S3"), builtin("Z3")],
            &RunConfig::default(),
        )
        .unwrap();
        assert_eq!(s.total(), 36);
        for idx in 0..s.total() {
            assert_eq!(s.encode(&s.decode(idx)), idx);
        }
        // element 0 is the least significant digit
        assert_eq!(s.decode(1), vec![1, 0, 0]);
    }

    #[test]
    fn xi_identity_row() {
        let w = wreath(Poset::chain(2).unwrap(), "Z2");
        assert!(w.xi(0, 0).unwrap().is_identity());
        assert!(w.xi(1, 0).unwrap().is_identity());
    }

    #[test]
    fn xi_freezing_on_the_chain() {
        // chain(2)/Z2, bottom generator: (x0=0, x1=1) is frozen, (0,0) -> (1,0)
        let w = wreath(Poset::chain(2).unwrap(), "Z2");
        let bottom = w.xi(0, 1).unwrap();
        // configs indexed x0 + 2*x1: bottom swaps 0<->1, fixes 2 and 3
        assert_eq!(bottom.images(), &[1, 0, 2, 3]);
        let top = w.xi(1, 1).unwrap();
        assert_eq!(top.images(), &[2, 3, 0, 1]);
    }

    #[test]
    fn xi_never_frozen_on_the_antichain() {
        let w = wreath(Poset::antichain(2).unwrap(), "Z2");
        let left = w.xi(0, 1).unwrap();
        assert_eq!(left.images(), &[1, 0, 3, 2]);
    }

    #[test]
    fn xi_homomorphism_and_locality_small() {
        for poset in [Poset::chain(2).unwrap(), Poset::antichain(2).unwrap()] {
            let w = wreath(poset, "S3");
            let size = 6;
            for lam in 0..2 {
                for h in 0..size {
                    for h2 in 0..size {
                        let prod = w.space().factors()[lam].mul(h, h2);
                        let composed = w.xi(lam, h).unwrap().compose(w.xi(lam, h2).unwrap()).unwrap();
                        assert_eq!(&composed, w.xi(lam, prod).unwrap());
                    }
                    // locality: only coordinate lam changes
                    let g = w.xi(lam, h).unwrap();
                    for idx in 0..w.space().total() {
                        let im = g.apply(idx as u32) as usize;
                        for mu in 0..2 {
                            if mu != lam {
                                assert_eq!(w.space().coord(im, mu), w.space().coord(idx, mu));
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn freezing_condition_exhaustive_small() {
        let w = wreath(Poset::chain(3).unwrap(), "Z2");
        for lam in 0..3 {
            let g = w.xi(lam, 1).unwrap();
            for idx in 0..w.space().total() {
                let above_nontrivial =
                    (0..3).any(|e| w.space().poset().lt(lam, e) && w.space().coord(idx, e) != 0);
                let moved = g.apply(idx as u32) as usize != idx;
                if above_nontrivial {
                    assert!(!moved, "frozen config moved");
                } else {
                    assert!(moved, "free config must move at h=1");
                }
            }
        }
    }

    #[test]
    fn small_orders_match_closure_enumeration() {
        // chain(2)/Z2: the order-8 dihedral group
        let w = wreath(Poset::chain(2).unwrap(), "Z2");
        assert_eq!(w.order().unwrap(), BigUint::from(8u32));
        assert_eq!(closure_elements(w.generators(), 4, 100).unwrap().len(), 8);
        // non-abelian
        let a = &w.generators()[0];
        let b = &w.generators()[1];
        assert_ne!(a.compose(b).unwrap(), b.compose(a).unwrap());

        // antichain(2)/Z2: direct sum, order 4
        let w = wreath(Poset::antichain(2).unwrap(), "Z2");
        assert_eq!(w.order().unwrap(), BigUint::from(4u32));

        // chain(3)/Z2: order 128 by closure enumeration (the iterated
        // restricted wreath product associates bottom-up)
        let w = wreath(Poset::chain(3).unwrap(), "Z2");
        assert_eq!(closure_elements(w.generators(), 8, 1000).unwrap().len(), 128);
        assert_eq!(w.order().unwrap(), BigUint::from(128u32));
    }

    #[test]
    fn h_gamma_edges() {
        let w = wreath(Poset::chain(2).unwrap(), "Z2");
        assert!(w.subgroup_h_gamma(&[]).is_empty());
        let whole = GroupHandle::new(w.subgroup_h_gamma(&[0, 1]), 4).unwrap();
        assert!(whole.same_subgroup(w.handle()).unwrap());
    }

    #[test]
    fn h_gamma_bottom_of_a5_chain_is_not_normal() {
        // degree 3600, but only tiny subgroups get chains built here
        let w = wreath(Poset::chain(2).unwrap(), "A5");
        let bottom_gens = w.subgroup_h_gamma(&[0]);
        assert_eq!(bottom_gens.len(), 59);
        let h = GroupHandle::new(bottom_gens.clone(), 3600)
            .unwrap()
            .with_config(*w.space().run_config());
        assert_eq!(h.order().unwrap(), BigUint::from(60u32));
        // conjugating a bottom generator by a top generator leaves H_Γ
        let top = w.xi(1, 1).unwrap();
        let conjugate = bottom_gens[0].conjugate(top).unwrap();
        assert!(!h.contains(&conjugate).unwrap());
    }

    #[test]
    fn classes_examples() {
        let w = wreath(Poset::chain(2).unwrap(), "Z2");
        let poset = w.space().poset().clone();
        // gamma = {} : all classes singletons
        let c = w.classes(&poset.empty_downset()).unwrap();
        assert_eq!(c.count(), 4);
        // gamma = full : one class
        let c = w.classes(&poset.full_downset()).unwrap();
        assert_eq!(c.count(), 1);
        // gamma = {bottom} : two classes of size two
        let c = w.classes(&DownSet::new(&poset, &[0]).unwrap()).unwrap();
        assert_eq!(c.count(), 2);
        let mut sizes = vec![0usize; 2];
        for idx in 0..4 {
            sizes[c.class_of(idx)] += 1;
        }
        assert_eq!(sizes, vec![2, 2]);
        // rejected early when not downward closed
        assert!(matches!(
            DownSet::new(&poset, &[1]),
            Err(Error::NotDownwardClosed { .. })
        ));
    }

    #[test]
    fn quotient_action_edges() {
        let w = wreath(Poset::chain(2).unwrap(), "Z2");
        let poset = w.space().poset().clone();
        let empty = w.classes(&poset.empty_downset()).unwrap();
        let full = w.classes(&poset.full_downset()).unwrap();
        for g in w.generators() {
            // gamma = {}: the quotient action is g itself
            assert_eq!(&w.quotient_action(g, &empty).unwrap(), g);
            // gamma = full: everything collapses to the identity on one class
            assert!(w.quotient_action(g, &full).unwrap().is_identity());
        }
    }

    #[test]
    fn quotient_action_of_top_factor_is_translation() {
        // chain(2)/A5, gamma={bottom}: top generators act on the 60 classes
        // exactly as left translation by h on the factor's element indices.
        let w = wreath(Poset::chain(2).unwrap(), "A5");
        let poset = w.space().poset().clone();
        let classes = w.classes(&DownSet::new(&poset, &[0]).unwrap()).unwrap();
        assert_eq!(classes.count(), 60);
        let a5 = &w.space().factors()[1];
        for h in [1usize, 7, 59] {
            let q = w.quotient_action(w.xi(1, h).unwrap(), &classes).unwrap();
            let expected: Vec<u32> = (0..60).map(|c| a5.mul(h, c) as u32).collect();
            assert_eq!(q.images(), &expected[..]);
        }
    }

    #[test]
    fn non_downclosed_subset_breaks_well_definedness() {
        let w = wreath(Poset::chain(2).unwrap(), "Z2");
        let classes = w.classes_raw(&[1]); // {top} is not downward closed
        let bottom = w.xi(0, 1).unwrap();
        assert!(matches!(
            w.quotient_action(bottom, &classes),
            Err(Error::WellDefinednessViolation { .. })
        ));
    }

    #[test]
    fn d_gamma_membership_examples() {
        let w = wreath(Poset::chain(2).unwrap(), "Z2");
        let poset = w.space().poset().clone();
        let bottom_ds = DownSet::new(&poset, &[0]).unwrap();
        let id = Perm::identity(4);
        assert!(w.d_gamma_membership(&id, &bottom_ds));
        assert!(w.d_gamma_membership(&id, &poset.empty_downset()));
        // bottom generator only touches coordinate 0 ∈ gamma
        assert!(w.d_gamma_membership(w.xi(0, 1).unwrap(), &bottom_ds));
        // top generator moves coordinate 1 ∉ gamma
        assert!(!w.d_gamma_membership(w.xi(1, 1).unwrap(), &bottom_ds));
    }

    #[test]
    fn d_gamma_groups_on_the_small_chain() {
        let w = wreath(Poset::chain(2).unwrap(), "Z2");
        let poset = w.space().poset().clone();
        let trivial = w.d_gamma_group(&poset.empty_downset()).unwrap();
        assert_eq!(trivial.handle.order().unwrap(), BigUint::from(1u32));
        let bottom = w
            .d_gamma_group(&DownSet::new(&poset, &[0]).unwrap())
            .unwrap();
        assert_eq!(bottom.handle.order().unwrap(), BigUint::from(4u32));
        assert_eq!(bottom.verification, KernelVerification::OracleExact);
        let full = w.d_gamma_group(&poset.full_downset()).unwrap();
        assert_eq!(full.handle.order().unwrap(), BigUint::from(8u32));
    }

    #[test]
    fn quotient_iso_on_small_instances() {
        for (poset, factor) in [
            (Poset::chain(2).unwrap(), "Z2"),
            (Poset::chain(3).unwrap(), "Z2"),
            (Poset::antichain(3).unwrap(), "Z2"),
        ] {
            let w = wreath(poset.clone(), factor);
            for ds in poset.downsets().unwrap() {
                let iso = w.quotient_iso_check(&ds).unwrap();
                assert!(iso.ok, "quotient mismatch at {ds} with {factor}");
            }
        }
    }

    #[test]
    fn classify_on_the_silcock_counterexample() {
        // chain(2)/Z2: abelian factors, so kernels cannot exhaust the
        // normal subgroups — 6 normal subgroups vs 3 downsets.
        let w = wreath(Poset::chain(2).unwrap(), "Z2");
        let report = w.classify_normal_subgroups().unwrap();
        assert_eq!(report.normal_subgroup_count, 6);
        assert_eq!(report.downset_count, 3);
        assert_eq!(report.matched.len(), 3);
        assert_eq!(report.unmatched_normal_orders, vec![2, 4, 4]);
        assert!(report.kernel_collisions.is_empty());
    }

    #[test]
    fn classify_on_a_simple_factor() {
        // chain(1)/A5: simplicity gives exactly the two kernels
        let w = wreath(Poset::chain(1).unwrap(), "A5");
        let report = w.classify_normal_subgroups().unwrap();
        assert_eq!(report.normal_subgroup_count, 2);
        assert_eq!(report.downset_count, 2);
        assert_eq!(report.matched.len(), 2);
        assert!(report.unmatched_normal_orders.is_empty());
    }

    #[test]
    fn d_gamma_is_conjugation_stable() {
        let mixed = ConfigSpace::new(
            Poset::chain(2).unwrap(),
            vec![builtin("Z3"), builtin("Z2")],
            &RunConfig::default(),
        )
        .unwrap();
        for w in [wreath(Poset::chain(3).unwrap(), "Z2"), WreathGroup::new(mixed).unwrap()] {
            for ds in w.space().poset().downsets().unwrap() {
                let d = w.d_gamma_group(&ds).unwrap();
                for g in &d.generators {
                    for a in w.generators() {
                        assert!(d.handle.contains(&g.conjugate(a).unwrap()).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn kernel_scan_equivalence_small() {
        // mirror of the full acceptance sweep, on one mixed instance
        let space = ConfigSpace::new(
            Poset::chain(2).unwrap(),
            vec![builtin("Z3"), builtin("Z2")],
            &RunConfig::default(),
        )
        .unwrap();
        let w = WreathGroup::new(space).unwrap();
        let elements = closure_elements(w.generators(), 6, 10_000).unwrap();
        for ds in w.space().poset().downsets().unwrap() {
            let d = w.d_gamma_group(&ds).unwrap();
            assert_eq!(d.verification, KernelVerification::OracleExact);
            let scan: Vec<&Perm> = elements
                .iter()
                .filter(|e| w.d_gamma_membership(e, &ds))
                .collect();
            assert_eq!(BigUint::from(scan.len()), d.handle.order().unwrap());
        }
    }
}
