//! Normal-subgroup machinery: closures, enumeration via conjugacy-class
//! joins, quotients on cosets, and derived series.

use super::element::GroupElement;
use super::group::{bfs_closure, FiniteGroup, GroupError};

impl FiniteGroup {
    /// Rebuild this group as an owned value with fresh caches.
    pub fn duplicate(&self) -> FiniteGroup {
        FiniteGroup::from_parts_unchecked(
            self.elements().to_vec(),
            self.generators().to_vec(),
            self.identity().clone(),
        )
    }

    /// The trivial subgroup {e}.
    pub fn trivial_subgroup(&self) -> FiniteGroup {
        FiniteGroup::from_parts_unchecked(
            vec![self.identity().clone()],
            Vec::new(),
            self.identity().clone(),
        )
    }

    /// Wrap an element set already expected to be a subgroup (an
    /// intersection, a kernel, a coset-stable slice), choosing generators
    /// greedily. Errors with `NotClosed` if the set is not in fact closed.
    pub fn subgroup_from_set(
        &self,
        mut elements: Vec<GroupElement>,
    ) -> Result<FiniteGroup, GroupError> {
        elements.sort_unstable();
        elements.dedup();
        if elements.binary_search(self.identity()).is_err() {
            return Err(GroupError::MissingIdentity);
        }
        let mut gens: Vec<GroupElement> = Vec::new();
        let mut closure = vec![self.identity().clone()];
        for x in &elements {
            if closure.binary_search(x).is_err() {
                gens.push(x.clone());
                closure = bfs_closure(self.identity(), &gens, elements.len())
                    .map_err(|_| GroupError::NotClosed)?;
                closure.sort_unstable();
            }
        }
        // Everything in `elements` entered the closure and the closure never
        // outgrew `elements`, so the two sets coincide.
        debug_assert_eq!(closure.len(), elements.len());
        Ok(FiniteGroup::from_parts_unchecked(elements, gens, self.identity().clone()))
    }

    /// Smallest normal subgroup containing `seed`: alternately close under
    /// multiplication and adjoin escaping conjugates of the generating set.
    pub fn normal_closure(&self, seed: &[GroupElement]) -> FiniteGroup {
        self.normal_closure_bounded(seed, self.elements().len())
            .expect("normal closure is bounded by the ambient order")
    }

    /// As `normal_closure`, but gives up (returns None) once the closure
    /// would exceed `abort_over` elements. Paired with Lagrange: a closure
    /// past |G|/2 can only be G itself.
    pub fn normal_closure_bounded(
        &self,
        seed: &[GroupElement],
        abort_over: usize,
    ) -> Option<FiniteGroup> {
        let mut gens: Vec<GroupElement> =
            seed.iter().filter(|e| !e.is_identity()).cloned().collect();
        gens.sort_unstable();
        gens.dedup();
        if gens.is_empty() {
            return Some(self.trivial_subgroup());
        }
        let gen_pairs: Vec<(GroupElement, GroupElement)> =
            self.generators().iter().map(|g| (g.clone(), g.inverse())).collect();
        loop {
            let mut elements = match bfs_closure(self.identity(), &gens, abort_over) {
                Ok(v) => v,
                Err(_) => return None,
            };
            elements.sort_unstable();
            let mut escaped: Vec<GroupElement> = Vec::new();
            for t in &gens {
                for (g, ginv) in &gen_pairs {
                    let c = g.compose(t).compose(ginv);
                    if elements.binary_search(&c).is_err() {
                        escaped.push(c);
                    }
                }
            }
            if escaped.is_empty() {
                let mut out =
                    FiniteGroup::from_parts_unchecked(elements, gens, self.identity().clone());
                out.reduce_generators();
                return Some(out);
            }
            gens.extend(escaped);
            gens.sort_unstable();
            gens.dedup();
        }
    }

    /// True when `h`'s elements all lie in `self` and conjugation by every
    /// generator of `self` maps `h`'s generators into `h`.
    pub fn is_normal_subgroup(&self, h: &FiniteGroup) -> bool {
        if !self.contains_all(h) {
            return false;
        }
        let hgens: &[GroupElement] =
            if h.generators().is_empty() { h.elements() } else { h.generators() };
        self.generators()
            .iter()
            .all(|g| {
                let ginv = g.inverse();
                hgens.iter().all(|t| h.contains(&g.compose(t).compose(&ginv)))
            })
    }

    /// Derived subgroup [G, G]: normal closure of the generator commutators.
    pub fn derived_subgroup(&self) -> FiniteGroup {
        let gens = self.generators();
        let mut comms = Vec::new();
        for (i, a) in gens.iter().enumerate() {
            let ainv = a.inverse();
            for b in gens.iter().skip(i + 1) {
                // [a, b] = a b a^{-1} b^{-1}
                comms.push(a.compose(b).compose(&ainv).compose(&b.inverse()));
            }
        }
        self.normal_closure(&comms)
    }

    /// [G^(1), ..., G^(k)], stopping early once a term is trivial or the
    /// series stabilizes (perfect tail). Every term is normal in G.
    pub fn derived_series(&self, depth: usize) -> Vec<FiniteGroup> {
        let mut out: Vec<FiniteGroup> = Vec::new();
        for k in 0..depth {
            let prev: &FiniteGroup = if k == 0 { self } else { &out[k - 1] };
            let next = prev.derived_subgroup();
            let stop = next.order() <= 1 || next.order() == prev.order();
            out.push(next);
            if stop {
                break;
            }
        }
        out
    }

    /// Length of the derived series until trivial, or None if it stabilizes
    /// nontrivially (not solvable) within `depth`.
    pub fn derived_length(&self, depth: usize) -> Option<usize> {
        let series = self.derived_series(depth);
        for (k, term) in series.iter().enumerate() {
            if term.order() == 1 {
                return Some(k + 1);
            }
        }
        None
    }

    /// |G / [G,G]|. The derived order is cached: surjection prunes ask
    /// repeatedly.
    pub fn abelianization_order(&self) -> u64 {
        let d = *self.caches.derived_order.get_or_init(|| self.derived_subgroup().order());
        self.order() / d
    }

    /// [`normal_subgroups`](Self::normal_subgroups) behind a per-group
    /// cache. The first successful scan is kept for the group's lifetime;
    /// `bound` only gates whether a fresh scan may start, so a cached list
    /// is returned even to callers holding a smaller bound.
    pub fn normal_subgroups_shared(
        &self,
        bound: usize,
    ) -> Result<std::sync::Arc<Vec<std::sync::Arc<FiniteGroup>>>, GroupError> {
        if let Some(v) = self.caches.normals.get() {
            return Ok(v.clone());
        }
        let v = std::sync::Arc::new(
            self.normal_subgroups(bound)?
                .into_iter()
                .map(std::sync::Arc::new)
                .collect::<Vec<_>>(),
        );
        // a racing scan computed the identical list; either stays
        let _ = self.caches.normals.set(v);
        Ok(self.caches.normals.get().expect("just set").clone())
    }

    /// All normal subgroups, as joins of conjugacy-class normal closures,
    /// sorted by (order, element list). Refuses groups larger than `bound`.
    pub fn normal_subgroups(&self, bound: usize) -> Result<Vec<FiniteGroup>, GroupError> {
        if self.elements().len() > bound {
            return Err(GroupError::BoundExceeded { bound });
        }
        let mut found: Vec<FiniteGroup> = vec![self.trivial_subgroup()];
        let push_if_new = |found: &mut Vec<FiniteGroup>, g: FiniteGroup| -> bool {
            if found.iter().any(|h| h.same_element_set(&g)) {
                false
            } else {
                found.push(g);
                true
            }
        };
        for class in self.conjugacy_classes() {
            let rep = self.element(class[0]).clone();
            if rep.is_identity() {
                continue;
            }
            let n = self.normal_closure(&[rep]);
            push_if_new(&mut found, n);
        }
        // join closure: every normal subgroup is a join of class closures
        loop {
            let mut grew = false;
            let snapshot = found.len();
            for i in 0..snapshot {
                for j in (i + 1)..snapshot {
                    if found[i].contains_all(&found[j]) || found[j].contains_all(&found[i]) {
                        continue;
                    }
                    let mut gens = found[i].generators().to_vec();
                    gens.extend_from_slice(found[j].generators());
                    let elements = bfs_closure(self.identity(), &gens, self.elements().len())
                        .expect("join bounded by ambient order");
                    let join =
                        FiniteGroup::from_parts_unchecked(elements, gens, self.identity().clone());
                    if push_if_new(&mut found, join) {
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        found.sort_by(|a, b| {
            a.order().cmp(&b.order()).then_with(|| a.elements().cmp(b.elements()))
        });
        Ok(found)
    }

    /// G/N acting on its own cosets, with coset 0 the one containing the
    /// identity. Errors: NotASubgroup / NotNormal / QuotientTooLarge.
    pub fn quotient(&self, n: &FiniteGroup) -> Result<FiniteGroup, GroupError> {
        if !self.contains_all(n) {
            return Err(GroupError::NotASubgroup);
        }
        if !self.is_normal_subgroup(n) {
            return Err(GroupError::NotNormal);
        }
        let order = self.elements().len();
        let nsize = n.elements().len();
        let index = order / nsize;
        if index > u16::MAX as usize + 1 {
            return Err(GroupError::QuotientTooLarge { index });
        }
        const UNASSIGNED: u16 = u16::MAX;
        // cosets are numbered in order of their least element
        let mut coset_of = vec![UNASSIGNED; order];
        let mut reps: Vec<u32> = Vec::with_capacity(index);
        for idx in 0..order {
            if coset_of[idx] != UNASSIGNED {
                continue;
            }
            let c = reps.len() as u16;
            reps.push(idx as u32);
            let rep = self.element(idx as u32);
            for m in n.elements() {
                let x = rep.compose(m);
                let k = self.index_of(&x).expect("coset member escaped the group") as usize;
                debug_assert_eq!(coset_of[k], UNASSIGNED);
                coset_of[k] = c;
            }
        }
        debug_assert_eq!(reps.len(), index);
        // identity's coset must be coset of index containing elements[?]; renumber so
        // that the identity's coset is 0 for a well-defined identity element.
        let id_coset = coset_of[self.index_of(self.identity()).unwrap() as usize];
        let relabel = |c: u16| -> u16 {
            if c == id_coset {
                0
            } else if c == 0 {
                id_coset
            } else {
                c
            }
        };
        let image_of = |g: &GroupElement, coset_of: &[u16], reps: &[u32]| -> GroupElement {
            let mut img = vec![0u16; index];
            for (c, &rep_idx) in reps.iter().enumerate() {
                let x = g.compose(self.element(rep_idx));
                let target = coset_of[self.index_of(&x).expect("left action escaped") as usize];
                img[relabel(c as u16) as usize] = relabel(target);
            }
            GroupElement::Perm(img.into_boxed_slice())
        };
        let gen_images: Vec<GroupElement> = self
            .generators()
            .iter()
            .map(|g| image_of(g, &coset_of, &reps))
            .filter(|p| !p.is_identity())
            .collect();
        let identity = GroupElement::Perm((0..index as u16).collect::<Vec<_>>().into_boxed_slice());
        let q = FiniteGroup::generate(identity, gen_images, index)
            .expect("quotient closure bounded by index");
        debug_assert_eq!(q.order() as usize, index);
        Ok(q)
    }
}

#[cfg(test)]
mod tests {
    use super::super::element::SignedPerm;
    use super::*;

    fn sp(images: &[usize], flips: &[bool]) -> GroupElement {
        GroupElement::Signed(SignedPerm::new(images, flips))
    }

    fn symmetric(n: usize) -> FiniteGroup {
        let id = GroupElement::Signed(SignedPerm::identity(n));
        let gens = (0..n - 1)
            .map(|i| {
                let mut images: Vec<usize> = (0..n).collect();
                images.swap(i, i + 1);
                sp(&images, &vec![false; n])
            })
            .collect();
        FiniteGroup::generate(id, gens, 5_000_000).unwrap()
    }

    #[test]
    fn s4_normal_subgroups() {
        let s4 = symmetric(4);
        let normals = s4.normal_subgroups(10_000).unwrap();
        let orders: Vec<u64> = normals.iter().map(|n| n.order()).collect();
        assert_eq!(orders, vec![1, 4, 12, 24]); // {e}, V4, A4, S4
        for n in &normals {
            assert!(s4.is_normal_subgroup(n));
        }
    }

    #[test]
    fn s4_derived_series() {
        let s4 = symmetric(4);
        let series = s4.derived_series(5);
        let orders: Vec<u64> = series.iter().map(|g| g.order()).collect();
        assert_eq!(orders, vec![12, 4, 1]); // A4, K4, 1
        assert_eq!(s4.derived_length(5), Some(3));
        for term in &series {
            assert!(s4.is_normal_subgroup(term));
        }
    }

    #[test]
    fn s4_quotient_by_v4_is_s3() {
        let s4 = symmetric(4);
        let normals = s4.normal_subgroups(10_000).unwrap();
        let v4 = &normals[1];
        assert_eq!(v4.order(), 4);
        let q = s4.quotient(v4).unwrap();
        assert_eq!(q.order(), 6);
        assert_eq!(q.exponent(), 6);
        assert!(!q.is_abelian()); // S_3, not Z/6
    }

    #[test]
    fn quotient_rejects_non_normal() {
        let s4 = symmetric(4);
        // <(1 2)> is not normal in S_4
        let h = FiniteGroup::generate(
            s4.identity().clone(),
            vec![sp(&[1, 0, 2, 3], &[false; 4])],
            10,
        )
        .unwrap();
        assert!(matches!(s4.quotient(&h), Err(GroupError::NotNormal)));
    }

    #[test]
    fn normal_closure_of_transposition_is_whole_s4() {
        let s4 = symmetric(4);
        let n = s4.normal_closure(&[sp(&[1, 0, 2, 3], &[false; 4])]);
        assert_eq!(n.order(), 24);
        // and of a double transposition: the Klein four-group
        let k = s4.normal_closure(&[sp(&[1, 0, 3, 2], &[false; 4])]);
        assert_eq!(k.order(), 4);
        assert!(k.is_abelian());
    }

    #[test]
    fn bounded_closure_aborts() {
        let s4 = symmetric(4);
        let r = s4.normal_closure_bounded(&[sp(&[1, 0, 2, 3], &[false; 4])], 12);
        assert!(r.is_none());
    }
}
