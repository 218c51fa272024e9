//! The explicit finite-group carrier: a sorted element vector plus
//! generators, with lazily cached invariants.

use std::sync::OnceLock;

use rustc_hash::FxHashSet;
use thiserror::Error;

use super::element::{GroupElement, SignedPerm};

#[derive(Debug, Error)]
pub enum GroupError {
    #[error("generation exceeded the bound of {bound} elements")]
    BoundExceeded { bound: usize },
    #[error("element set is not closed under the group operation")]
    NotClosed,
    #[error("element set does not contain the identity")]
    MissingIdentity,
    #[error("subgroup is not normal in the ambient group")]
    NotNormal,
    #[error("subgroup elements are not all members of the ambient group")]
    NotASubgroup,
    #[error("quotient index {index} exceeds the permutation degree limit")]
    QuotientTooLarge { index: usize },
    #[error("search budget of {budget} nodes exceeded")]
    SearchBudgetExceeded { budget: u64 },
    #[error("generator images do not extend to a homomorphism")]
    NotAHomomorphism,
    #[error("declared generators span a proper subgroup of the element set")]
    GeneratorsIncomplete,
}

#[derive(Default)]
pub(crate) struct Caches {
    pub(crate) classes: OnceLock<Vec<Vec<u32>>>,
    pub(crate) exponent: OnceLock<u64>,
    pub(crate) abelian: OnceLock<bool>,
    pub(crate) derived_order: OnceLock<u64>,
    pub(crate) normals: OnceLock<std::sync::Arc<Vec<std::sync::Arc<FiniteGroup>>>>,
}

pub struct FiniteGroup {
    /// Sorted, deduplicated.
    elements: Vec<GroupElement>,
    generators: Vec<GroupElement>,
    identity: GroupElement,
    pub(crate) caches: Caches,
}

impl FiniteGroup {
    /// Generate the closure of `generators` (products only; inverses arise as
    /// powers in a finite group). Fails once more than `bound` elements appear.
    pub fn generate(
        identity: GroupElement,
        generators: Vec<GroupElement>,
        bound: usize,
    ) -> Result<FiniteGroup, GroupError> {
        debug_assert!(identity.is_identity());
        for g in &generators {
            debug_assert_eq!(g.shape(), identity.shape(), "generator shape mismatch");
        }
        let mut elements = bfs_closure(&identity, &generators, bound)?;
        elements.sort_unstable();
        let generators = generators.into_iter().filter(|g| !g.is_identity()).collect();
        Ok(FiniteGroup { elements, generators, identity, caches: Caches::default() })
    }

    /// Build from an explicit element list. Closure is checked in full up to
    /// 10,000 elements and on 10,000 deterministically sampled pairs above
    /// that.
    pub fn from_elements(
        mut elements: Vec<GroupElement>,
        generators: Vec<GroupElement>,
    ) -> Result<FiniteGroup, GroupError> {
        elements.sort_unstable();
        elements.dedup();
        let identity = elements
            .iter()
            .find(|e| e.is_identity())
            .cloned()
            .ok_or(GroupError::MissingIdentity)?;
        let g = FiniteGroup { elements, generators, identity, caches: Caches::default() };
        g.validate()?;
        if !g.generators.is_empty() || g.elements.len() == 1 {
            let span = bfs_closure(&g.identity, &g.generators, g.elements.len())?;
            if span.len() != g.elements.len() {
                return Err(GroupError::GeneratorsIncomplete);
            }
        } else {
            return Err(GroupError::GeneratorsIncomplete);
        }
        Ok(g)
    }

    /// Internal constructor for element sets already known to be subgroups
    /// (kernels, centers, closure results). Sorts; samples closure in debug.
    pub(crate) fn from_parts_unchecked(
        mut elements: Vec<GroupElement>,
        generators: Vec<GroupElement>,
        identity: GroupElement,
    ) -> FiniteGroup {
        elements.sort_unstable();
        elements.dedup();
        let g = FiniteGroup { elements, generators, identity, caches: Caches::default() };
        debug_assert!(g.validate_sampled().is_ok(), "unchecked construction is not a subgroup");
        g
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn element(&self, idx: u32) -> &GroupElement {
        &self.elements[idx as usize]
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    pub fn identity(&self) -> &GroupElement {
        &self.identity
    }

    /// The group operation (left-to-right application: `b` acts first).
    pub fn op(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        a.compose(b)
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.elements.binary_search(g).is_ok()
    }

    pub fn index_of(&self, g: &GroupElement) -> Option<u32> {
        self.elements.binary_search(g).ok().map(|i| i as u32)
    }

    /// Membership for every element of `other` (subgroup test without normality).
    pub fn contains_all(&self, other: &FiniteGroup) -> bool {
        other.elements.iter().all(|e| self.contains(e))
    }

    pub fn same_element_set(&self, other: &FiniteGroup) -> bool {
        self.elements == other.elements
    }

    pub fn is_abelian(&self) -> bool {
        *self.caches.abelian.get_or_init(|| {
            self.generators
                .iter()
                .enumerate()
                .all(|(i, a)| self.generators[i + 1..].iter().all(|b| a.compose(b) == b.compose(a)))
        })
    }

    /// lcm of element orders, folded over the full element list.
    pub fn exponent(&self) -> u64 {
        *self.caches.exponent.get_or_init(|| {
            self.elements.iter().fold(1u64, |acc, e| lcm(acc, e.order()))
        })
    }

    /// Conjugacy classes as sorted index lists; classes appear in order of
    /// their least element index, so the identity's class is first.
    pub fn conjugacy_classes(&self) -> &[Vec<u32>] {
        self.caches.classes.get_or_init(|| {
            let n = self.elements.len();
            let gen_pairs: Vec<(GroupElement, GroupElement)> =
                self.generators.iter().map(|g| (g.clone(), g.inverse())).collect();
            let mut assigned = vec![false; n];
            let mut classes = Vec::new();
            for start in 0..n {
                if assigned[start] {
                    continue;
                }
                let mut orbit = vec![start as u32];
                assigned[start] = true;
                let mut q = 0;
                while q < orbit.len() {
                    let x = self.elements[orbit[q] as usize].clone();
                    q += 1;
                    for (g, ginv) in &gen_pairs {
                        let y = g.compose(&x).compose(ginv);
                        let j = self
                            .index_of(&y)
                            .expect("conjugate escaped the group; carrier not closed")
                            as usize;
                        if !assigned[j] {
                            assigned[j] = true;
                            orbit.push(j as u32);
                        }
                    }
                }
                orbit.sort_unstable();
                classes.push(orbit);
            }
            classes
        })
    }

    /// Multiset of (class size, element order) pairs — an isomorphism invariant.
    pub fn class_signature(&self) -> Vec<(u64, u64)> {
        let mut sig: Vec<(u64, u64)> = self
            .conjugacy_classes()
            .iter()
            .map(|c| (c.len() as u64, self.elements[c[0] as usize].order()))
            .collect();
        sig.sort_unstable();
        sig
    }

    pub fn center(&self) -> FiniteGroup {
        let central: Vec<GroupElement> = self
            .elements
            .iter()
            .filter(|x| self.generators.iter().all(|g| g.compose(x) == x.compose(g)))
            .cloned()
            .collect();
        let gens = central.iter().filter(|e| !e.is_identity()).cloned().collect();
        FiniteGroup::from_parts_unchecked(central, gens, self.identity.clone())
    }

    /// Closure / identity / inverse spot-checks: full product table up to
    /// 10,000 elements, 10,000 pseudo-random pairs above.
    pub fn validate(&self) -> Result<(), GroupError> {
        if !self.contains(&self.identity) || !self.identity.is_identity() {
            return Err(GroupError::MissingIdentity);
        }
        for g in &self.generators {
            if !self.contains(g) {
                return Err(GroupError::NotClosed);
            }
        }
        if self.elements.len() <= 10_000 {
            for a in &self.elements {
                for b in &self.elements {
                    if !self.contains(&a.compose(b)) {
                        return Err(GroupError::NotClosed);
                    }
                }
            }
            for e in &self.elements {
                if !self.contains(&e.inverse()) {
                    return Err(GroupError::NotClosed);
                }
            }
            Ok(())
        } else {
            self.validate_sampled()
        }
    }

    /// Closure check on 10,000 deterministically sampled pairs plus inverses
    /// on a bounded prefix.
    pub(crate) fn validate_sampled(&self) -> Result<(), GroupError> {
        if !self.contains(&self.identity) {
            return Err(GroupError::MissingIdentity);
        }
        let n = self.elements.len();
        let mut state = 0x9e3779b97f4a7c15u64 ^ (n as u64);
        let mut step = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 33) as usize % n
        };
        for _ in 0..10_000 {
            let (i, j) = (step(), step());
            if !self.contains(&self.elements[i].compose(&self.elements[j])) {
                return Err(GroupError::NotClosed);
            }
        }
        for e in self.elements.iter().take(1_000) {
            if !self.contains(&e.inverse()) {
                return Err(GroupError::NotClosed);
            }
        }
        Ok(())
    }

    /// Replace a long generator list with a short one generating the same
    /// group (greedy, highest element order first). Used after normal-closure
    /// constructions whose seed lists grow.
    pub(crate) fn reduce_generators(&mut self) {
        if self.generators.len() <= 6 {
            return;
        }
        let mut cands = self.generators.clone();
        cands.sort_by_key(|g| std::cmp::Reverse(g.order()));
        let mut kept: Vec<GroupElement> = Vec::new();
        let mut have: Vec<GroupElement> = vec![self.identity.clone()];
        have.sort_unstable();
        for g in cands {
            if have.binary_search(&g).is_ok() {
                continue;
            }
            kept.push(g);
            let mut closed = bfs_closure(&self.identity, &kept, self.elements.len())
                .expect("closure of kept generators exceeded the group");
            closed.sort_unstable();
            have = closed;
            if have.len() == self.elements.len() {
                break;
            }
        }
        debug_assert_eq!(have.len(), self.elements.len());
        self.generators = kept;
    }
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FiniteGroup(order {}, {} gens)", self.order(), self.generators.len())
    }
}

/// Breadth-first closure under right multiplication by the generators.
/// Signed-permutation carriers use a packed 60-bit key to keep the visited
/// set compact on multi-million-element groups.
pub(crate) fn bfs_closure(
    identity: &GroupElement,
    generators: &[GroupElement],
    bound: usize,
) -> Result<Vec<GroupElement>, GroupError> {
    match identity {
        GroupElement::Signed(id) => {
            let gens: Vec<SignedPerm> = generators
                .iter()
                .map(|g| match g {
                    GroupElement::Signed(s) => *s,
                    _ => panic!("mixed element kinds in one group"),
                })
                .collect();
            let mut seen = FxHashSet::default();
            seen.insert(id.pack());
            let mut out = vec![*id];
            let mut q = 0;
            while q < out.len() {
                let cur = out[q];
                q += 1;
                for g in &gens {
                    let next = cur.compose(g);
                    if seen.insert(next.pack()) {
                        if out.len() >= bound {
                            return Err(GroupError::BoundExceeded { bound });
                        }
                        out.push(next);
                    }
                }
            }
            Ok(out.into_iter().map(GroupElement::Signed).collect())
        }
        _ => {
            let mut seen: FxHashSet<GroupElement> = FxHashSet::default();
            seen.insert(identity.clone());
            let mut out = vec![identity.clone()];
            let mut q = 0;
            while q < out.len() {
                let cur = out[q].clone();
                q += 1;
                for g in generators {
                    let next = cur.compose(g);
                    if seen.insert(next.clone()) {
                        if out.len() >= bound {
                            return Err(GroupError::BoundExceeded { bound });
                        }
                        out.push(next);
                    }
                }
            }
            Ok(out)
        }
    }
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / super::element::gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::super::element::Mat;
    use super::*;

    fn sp(images: &[usize], flips: &[bool]) -> GroupElement {
        GroupElement::Signed(SignedPerm::new(images, flips))
    }

    fn signed_id(n: usize) -> GroupElement {
        GroupElement::Signed(SignedPerm::identity(n))
    }

    #[test]
    fn s3_from_transpositions() {
        let g = FiniteGroup::generate(
            signed_id(3),
            vec![sp(&[1, 0, 2], &[false; 3]), sp(&[0, 2, 1], &[false; 3])],
            100,
        )
        .unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g.exponent(), 6);
        assert!(!g.is_abelian());
        // class sizes 1, 2, 3
        let mut sizes: Vec<usize> = g.conjugacy_classes().iter().map(|c| c.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2, 3]);
        assert_eq!(g.center().order(), 1);
        g.validate().unwrap();
    }

    #[test]
    fn b2_signed_perms() {
        // W(B_2): reflections e1<->e2 and e2 -> -e2; dihedral of order 8
        let g = FiniteGroup::generate(
            signed_id(2),
            vec![sp(&[1, 0], &[false, false]), sp(&[0, 1], &[false, true])],
            100,
        )
        .unwrap();
        assert_eq!(g.order(), 8);
        assert_eq!(g.exponent(), 4);
        assert_eq!(g.conjugacy_classes().len(), 5);
        assert_eq!(g.center().order(), 2);
    }

    #[test]
    fn bound_exceeded_is_reported() {
        let err = FiniteGroup::generate(
            signed_id(3),
            vec![sp(&[1, 0, 2], &[false; 3]), sp(&[0, 2, 1], &[false; 3])],
            5,
        )
        .unwrap_err();
        match err {
            GroupError::BoundExceeded { bound } => assert_eq!(bound, 5),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn matrix_group_closure() {
        // reflections of B_2 as doubled matrices
        let s1 = GroupElement::Mat(Mat::from_doubled(2, &[0, 2, 2, 0]));
        let s2 = GroupElement::Mat(Mat::from_doubled(2, &[2, 0, 0, -2]));
        let id = GroupElement::Mat(Mat::identity(2));
        let g = FiniteGroup::generate(id, vec![s1, s2], 100).unwrap();
        assert_eq!(g.order(), 8);
        assert_eq!(g.exponent(), 4);
    }

    #[test]
    fn from_elements_rejects_non_closed() {
        let a = sp(&[1, 0, 2], &[false; 3]);
        let err = FiniteGroup::from_elements(vec![signed_id(3), a.clone(), sp(&[0, 2, 1], &[false; 3])], vec![a])
            .unwrap_err();
        assert!(matches!(err, GroupError::NotClosed));
    }
}
