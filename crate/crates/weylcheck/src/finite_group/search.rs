//! Homomorphism search: does a surjection G -> H exist?
//!
//! The search assigns images to a reduced generating set of G and maintains
//! the graph closure of the partial assignment inside G x H. A partial
//! assignment is consistent iff the closure never maps one element of G to
//! two elements of H; a full consistent assignment is a homomorphism, and it
//! is a surjection iff the images generate H. The first generator's image
//! only ranges over conjugacy-class representatives of H: composing a
//! surjection with an inner automorphism of H is again a surjection, so one
//! candidate per class suffices at the top level.
//!
//! Exhausting the tree therefore PROVES no surjection exists; running out of
//! budget proves nothing, and is reported as an error distinct from `None`.

use super::element::GroupElement;
use super::group::{bfs_closure, FiniteGroup, GroupError};

pub const DEFAULT_SEARCH_BUDGET: u64 = 5_000_000;

/// A homomorphism certificate: generator/image pairs. Everything else about
/// the map is recomputable, so this is what reports carry.
#[derive(Clone, Debug)]
pub struct Homomorphism {
    pub pairs: Vec<(GroupElement, GroupElement)>,
}

impl Homomorphism {
    /// Re-derive the graph closure and confirm this really is a surjective
    /// homomorphism from `g` onto `h`. Independent of the search that
    /// produced the certificate.
    pub fn verify_surjective(&self, g: &FiniteGroup, h: &FiniteGroup) -> Result<(), GroupError> {
        let mut graph = GraphCloser::new(g, h, u64::MAX);
        let assigned: Vec<(u32, u32)> = self
            .pairs
            .iter()
            .map(|(a, b)| {
                let ga = g.index_of(a).ok_or(GroupError::NotAHomomorphism)?;
                let hb = h.index_of(b).ok_or(GroupError::NotAHomomorphism)?;
                Ok((ga, hb))
            })
            .collect::<Result<_, GroupError>>()?;
        // The certificate must cover a generating set of G.
        let gen_elements: Vec<GroupElement> =
            self.pairs.iter().map(|(a, _)| a.clone()).collect();
        let span = bfs_closure(g.identity(), &gen_elements, g.elements().len())
            .map_err(|_| GroupError::NotAHomomorphism)?;
        if span.len() != g.elements().len() {
            return Err(GroupError::NotAHomomorphism);
        }
        let mut budget = u64::MAX;
        if !graph.close(&assigned, &mut budget)? {
            return Err(GroupError::NotAHomomorphism);
        }
        let images: Vec<GroupElement> = self.pairs.iter().map(|(_, b)| b.clone()).collect();
        let image_span = bfs_closure(h.identity(), &images, h.elements().len())
            .map_err(|_| GroupError::NotAHomomorphism)?;
        if image_span.len() != h.elements().len() {
            return Err(GroupError::NotAHomomorphism);
        }
        Ok(())
    }
}

/// Graph closure of a partial generator assignment, reusable across branches
/// via epoch-stamped slots instead of reallocation.
struct GraphCloser<'a> {
    g: &'a FiniteGroup,
    h: &'a FiniteGroup,
    image: Vec<u32>,
    stamp: Vec<u32>,
    epoch: u32,
    worklist: Vec<u32>,
    g_identity: u32,
    h_identity: u32,
    budget_total: u64,
}

impl<'a> GraphCloser<'a> {
    fn new(g: &'a FiniteGroup, h: &'a FiniteGroup, budget_total: u64) -> Self {
        let g_identity = g.index_of(g.identity()).expect("identity indexed");
        let h_identity = h.index_of(h.identity()).expect("identity indexed");
        GraphCloser {
            g,
            h,
            image: vec![0; g.elements().len()],
            stamp: vec![0; g.elements().len()],
            epoch: 0,
            worklist: Vec::new(),
            g_identity,
            h_identity,
            budget_total,
        }
    }

    /// Close the assignment; `Ok(false)` means the map is inconsistent (some
    /// element of G would need two images). Budget is decremented per newly
    /// mapped element.
    fn close(&mut self, assigned: &[(u32, u32)], budget: &mut u64) -> Result<bool, GroupError> {
        self.epoch += 1;
        self.worklist.clear();
        self.insert(self.g_identity, self.h_identity, budget)?;
        let mut cursor = 0;
        // Seed with the assigned pairs themselves.
        for &(a, b) in assigned {
            match self.lookup(a) {
                Some(existing) if existing != b => return Ok(false),
                Some(_) => {}
                None => {
                    self.insert(a, b, budget)?;
                }
            }
        }
        while cursor < self.worklist.len() {
            let x = self.worklist[cursor];
            cursor += 1;
            let y = self.image[x as usize];
            let xe = self.g.element(x);
            let ye = self.h.element(y);
            for &(a, b) in assigned {
                let nx = xe.compose(self.g.element(a));
                let ny = ye.compose(self.h.element(b));
                let nxi = self.g.index_of(&nx).expect("product stays in the group") as u32;
                let nyi = self.h.index_of(&ny).expect("product stays in the group") as u32;
                match self.lookup(nxi) {
                    Some(existing) => {
                        if existing != nyi {
                            return Ok(false);
                        }
                    }
                    None => {
                        self.insert(nxi, nyi, budget)?;
                    }
                }
            }
        }
        Ok(true)
    }

    fn lookup(&self, x: u32) -> Option<u32> {
        (self.stamp[x as usize] == self.epoch).then(|| self.image[x as usize])
    }

    /// Returns Ok(true) if the pair was newly inserted.
    fn insert(&mut self, x: u32, y: u32, budget: &mut u64) -> Result<bool, GroupError> {
        if self.stamp[x as usize] == self.epoch {
            return Ok(false);
        }
        if *budget == 0 {
            return Err(GroupError::SearchBudgetExceeded { budget: self.budget_total });
        }
        *budget -= 1;
        self.stamp[x as usize] = self.epoch;
        self.image[x as usize] = y;
        self.worklist.push(x);
        Ok(true)
    }
}

/// Search for a surjective homomorphism from `g` onto `h`.
///
/// `Ok(None)` is a proof of non-existence (the tree was exhausted);
/// `Err(SearchBudgetExceeded)` is not.
pub fn surjection_exists(
    g: &FiniteGroup,
    h: &FiniteGroup,
    budget: u64,
) -> Result<Option<Homomorphism>, GroupError> {
    if h.order() == 1 {
        return Ok(Some(Homomorphism { pairs: vec![] }));
    }
    // Invariants any quotient must satisfy.
    if g.order() % h.order() != 0 {
        return Ok(None);
    }
    // The other two prunes touch every element (exponent) or run a
    // commutator closure (abelianization); on six-figure domains they cost
    // more than they save. Skipping them drops a shortcut only — the
    // descent itself stays exhaustive either way.
    if g.order() <= 20_000 {
        if g.exponent() % h.exponent() != 0 {
            return Ok(None);
        }
        if g.abelianization_order() % h.abelianization_order() != 0 {
            return Ok(None);
        }
    }

    let mut gens: Vec<GroupElement> = g.generators().to_vec();
    gens.sort_unstable();
    gens.dedup();
    // Most-constrained first: high-order generators admit fewer images.
    gens.sort_by_key(|e| std::cmp::Reverse(e.order()));
    let gen_orders: Vec<u64> = gens.iter().map(|e| e.order()).collect();

    let h_orders: Vec<u64> = h.elements().iter().map(|e| e.order()).collect();
    // Image candidates: level 0 sees one representative per conjugacy class,
    // deeper levels see every element of compatible order.
    let mut candidates: Vec<Vec<u32>> = Vec::with_capacity(gens.len());
    for (lvl, &go) in gen_orders.iter().enumerate() {
        if lvl == 0 {
            candidates.push(
                h.conjugacy_classes()
                    .iter()
                    .map(|c| c[0])
                    .filter(|&i| go % h_orders[i as usize] == 0)
                    .collect(),
            );
        } else {
            candidates.push(
                (0..h.elements().len() as u32)
                    .filter(|&i| go % h_orders[i as usize] == 0)
                    .collect(),
            );
        }
    }

    let mut closer = GraphCloser::new(g, h, budget);
    let gen_indices: Vec<u32> = gens
        .iter()
        .map(|e| g.index_of(e).expect("generator indexed"))
        .collect();
    let mut assigned: Vec<(u32, u32)> = Vec::with_capacity(gens.len());
    let mut budget_left = budget;

    fn spans(assigned: &[(u32, u32)], h: &FiniteGroup) -> bool {
        let images: Vec<GroupElement> =
            assigned.iter().map(|&(_, b)| h.element(b).clone()).collect();
        let span = bfs_closure(h.identity(), &images, h.elements().len())
            .expect("image closure stays within H");
        span.len() == h.elements().len()
    }

    fn descend(
        level: usize,
        gen_indices: &[u32],
        candidates: &[Vec<u32>],
        assigned: &mut Vec<(u32, u32)>,
        closer: &mut GraphCloser<'_>,
        h: &FiniteGroup,
        budget: &mut u64,
        span_first: bool,
    ) -> Result<Option<Vec<(u32, u32)>>, GroupError> {
        if level == gen_indices.len() {
            // Total map; accept iff the images generate all of H.
            if spans(assigned, h) {
                return Ok(Some(assigned.clone()));
            }
            return Ok(None);
        }
        let final_level = level + 1 == gen_indices.len();
        for &img in &candidates[level] {
            assigned.push((gen_indices[level], img));
            // Closing the full graph costs |G| insertions once every
            // generator has an image; when G dwarfs H, ruling out
            // non-generating image tuples by a |H|-sized span walk first is
            // the difference between milliseconds and minutes.
            if final_level && span_first && !spans(assigned, h) {
                assigned.pop();
                continue;
            }
            let consistent = closer.close(assigned, budget)?;
            if consistent {
                if let Some(hit) = descend(
                    level + 1,
                    gen_indices,
                    candidates,
                    assigned,
                    closer,
                    h,
                    budget,
                    span_first,
                )? {
                    return Ok(Some(hit));
                }
            }
            assigned.pop();
        }
        Ok(None)
    }

    let span_first = g.order() >= 8 * h.order();
    let found = descend(
        0,
        &gen_indices,
        &candidates,
        &mut assigned,
        &mut closer,
        h,
        &mut budget_left,
        span_first,
    )?;
    Ok(found.map(|pairs| Homomorphism {
        pairs: pairs
            .into_iter()
            .map(|(a, b)| (g.element(a).clone(), h.element(b).clone()))
            .collect(),
    }))
}

/// Isomorphism test: invariant prunes, then a surjection search (equal orders
/// make any surjection bijective).
pub fn is_isomorphic(a: &FiniteGroup, b: &FiniteGroup, budget: u64) -> Result<bool, GroupError> {
    if a.order() != b.order() {
        return Ok(false);
    }
    if a.order() == 1 {
        return Ok(true);
    }
    if a.is_abelian() != b.is_abelian() {
        return Ok(false);
    }
    if a.exponent() != b.exponent() {
        return Ok(false);
    }
    if a.abelianization_order() != b.abelianization_order() {
        return Ok(false);
    }
    if a.class_signature() != b.class_signature() {
        return Ok(false);
    }
    Ok(surjection_exists(a, b, budget)?.is_some())
}

/// Enumerate every isomorphism from `a` onto `b`, as certificates.
///
/// Unlike `surjection_exists`, the top level must range over whole conjugacy
/// classes: two isomorphisms differing by an inner automorphism are distinct
/// set maps, and the subdirect-product enumeration needs each one (distinct
/// gluing maps produce distinct subgroups of the product). Exhaustive, so the
/// result being complete is a theorem of the run, budget exceptions aside.
pub fn all_isomorphisms(
    a: &FiniteGroup,
    b: &FiniteGroup,
    budget: u64,
) -> Result<Vec<Homomorphism>, GroupError> {
    if a.order() != b.order()
        || a.is_abelian() != b.is_abelian()
        || a.exponent() != b.exponent()
        || a.abelianization_order() != b.abelianization_order()
        || a.class_signature() != b.class_signature()
    {
        return Ok(vec![]);
    }
    if a.order() == 1 {
        return Ok(vec![Homomorphism { pairs: vec![] }]);
    }

    let mut gens: Vec<GroupElement> = a.generators().to_vec();
    gens.sort_unstable();
    gens.dedup();
    gens.sort_by_key(|e| std::cmp::Reverse(e.order()));
    let b_orders: Vec<u64> = b.elements().iter().map(|e| e.order()).collect();
    // Bijections preserve order exactly, so candidates match order, not just
    // divide it.
    let candidates: Vec<Vec<u32>> = gens
        .iter()
        .map(|gen| {
            let go = gen.order();
            (0..b.elements().len() as u32).filter(|&i| b_orders[i as usize] == go).collect()
        })
        .collect();

    let gen_indices: Vec<u32> =
        gens.iter().map(|e| a.index_of(e).expect("generator indexed")).collect();
    let mut closer = GraphCloser::new(a, b, budget);
    let mut assigned: Vec<(u32, u32)> = Vec::with_capacity(gens.len());
    let mut budget_left = budget;
    let mut found: Vec<Vec<(u32, u32)>> = Vec::new();

    fn collect(
        level: usize,
        gen_indices: &[u32],
        candidates: &[Vec<u32>],
        assigned: &mut Vec<(u32, u32)>,
        closer: &mut GraphCloser<'_>,
        b: &FiniteGroup,
        budget: &mut u64,
        found: &mut Vec<Vec<(u32, u32)>>,
    ) -> Result<(), GroupError> {
        if level == gen_indices.len() {
            let images: Vec<GroupElement> =
                assigned.iter().map(|&(_, y)| b.element(y).clone()).collect();
            let span = bfs_closure(b.identity(), &images, b.elements().len())
                .expect("image closure stays within the target");
            if span.len() == b.elements().len() {
                // Consistent total map with generating images and equal
                // orders: a bijective homomorphism.
                found.push(assigned.clone());
            }
            return Ok(());
        }
        for &img in &candidates[level] {
            assigned.push((gen_indices[level], img));
            if closer.close(assigned, budget)? {
                collect(level + 1, gen_indices, candidates, assigned, closer, b, budget, found)?;
            }
            assigned.pop();
        }
        Ok(())
    }

    collect(
        0,
        &gen_indices,
        &candidates,
        &mut assigned,
        &mut closer,
        b,
        &mut budget_left,
        &mut found,
    )?;
    Ok(found
        .into_iter()
        .map(|pairs| Homomorphism {
            pairs: pairs
                .into_iter()
                .map(|(x, y)| (a.element(x).clone(), b.element(y).clone()))
                .collect(),
        })
        .collect())
}

/// Check that `phi` is a bijective homomorphism from `a` onto `b`, given as
/// an elementwise formula. Used when an isomorphism is claimed in closed form
/// rather than found by search.
pub fn explicit_isomorphism_holds(
    a: &FiniteGroup,
    b: &FiniteGroup,
    phi: impl Fn(&GroupElement) -> GroupElement,
) -> bool {
    if a.order() != b.order() {
        return false;
    }
    let mut hit = vec![false; b.elements().len()];
    let mut images = Vec::with_capacity(a.elements().len());
    for x in a.elements() {
        let Some(ix) = b.index_of(&phi(x)) else {
            return false;
        };
        if hit[ix as usize] {
            return false;
        }
        hit[ix as usize] = true;
        images.push(ix);
    }
    // Homomorphism law against a generating set suffices once the map is total.
    for (xi, x) in a.elements().iter().enumerate() {
        for gen in a.generators() {
            let lhs = phi(&x.compose(gen));
            let gi = a.index_of(gen).expect("generator belongs to the group");
            let rhs = b.element(images[xi]).compose(b.element(images[gi as usize]));
            if lhs != rhs {
                return false;
            }
        }
    }
    true
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
        FiniteGroup::generate(id, gens, 100_000).unwrap()
    }

    fn cyclic(n: usize) -> FiniteGroup {
        let mut images: Vec<usize> = (1..n).collect();
        images.push(0);
        let id = GroupElement::Signed(SignedPerm::identity(n));
        FiniteGroup::generate(id, vec![sp(&images, &vec![false; n])], n + 1).unwrap()
    }

    #[test]
    fn s4_surjects_onto_s3_but_not_c4() {
        let s4 = symmetric(4);
        let s3 = symmetric(3);
        let hom = surjection_exists(&s4, &s3, DEFAULT_SEARCH_BUDGET)
            .unwrap()
            .expect("kernel V4 gives S4 -> S3");
        hom.verify_surjective(&s4, &s3).unwrap();
        // no surjection S4 -> Z/4: the abelianization is Z/2
        let c4 = cyclic(4);
        assert!(surjection_exists(&s4, &c4, DEFAULT_SEARCH_BUDGET).unwrap().is_none());
    }

    #[test]
    fn a4_has_no_order2_quotient() {
        let s4 = symmetric(4);
        let evens: Vec<GroupElement> = s4
            .elements()
            .iter()
            .filter(|e| match e {
                GroupElement::Signed(p) => {
                    let mut seen = [false; 4];
                    let mut parity = false;
                    for i in 0..4 {
                        if !seen[i] {
                            let mut j = i;
                            let mut len = 0;
                            while !seen[j] {
                                seen[j] = true;
                                j = p.image(j);
                                len += 1;
                            }
                            parity ^= len % 2 == 0;
                        }
                    }
                    !parity
                }
                _ => unreachable!(),
            })
            .cloned()
            .collect();
        let a4 = FiniteGroup::from_elements(
            evens,
            vec![sp(&[1, 2, 0, 3], &[false; 4]), sp(&[1, 0, 3, 2], &[false; 4])],
        )
        .unwrap();
        assert_eq!(a4.order(), 12);
        let c2 = cyclic(2);
        assert!(surjection_exists(&a4, &c2, DEFAULT_SEARCH_BUDGET).unwrap().is_none());
        let c3 = cyclic(3);
        assert!(surjection_exists(&a4, &c3, DEFAULT_SEARCH_BUDGET).unwrap().is_some());
    }

    #[test]
    fn iso_distinguishes_same_order_groups() {
        // |S3| = |Z/6| = 6
        let s3 = symmetric(3);
        let c6 = {
            let g = sp(&[1, 2, 0, 3], &[false, false, false, true]);
            FiniteGroup::generate(GroupElement::Signed(SignedPerm::identity(4)), vec![g], 10)
                .unwrap()
        };
        assert_eq!(c6.order(), 6);
        assert!(!is_isomorphic(&s3, &c6, DEFAULT_SEARCH_BUDGET).unwrap());
        let s3_again = symmetric(3);
        assert!(is_isomorphic(&s3, &s3_again, DEFAULT_SEARCH_BUDGET).unwrap());
    }

    #[test]
    fn explicit_identity_map_verifies() {
        let s4 = symmetric(4);
        assert!(explicit_isomorphism_holds(&s4, &s4, |x| x.clone()));
        // a broken map: swap two non-conjugate elements
        assert!(!explicit_isomorphism_holds(&s4, &s4, |x| {
            if x.is_identity() {
                s4.elements()[5].clone()
            } else if *x == s4.elements()[5] {
                s4.identity().clone()
            } else {
                x.clone()
            }
        }));
    }

    #[test]
    fn isomorphism_counts_match_automorphism_groups() {
        // |Aut(S3)| = |Inn(S3)| = 6
        let s3 = symmetric(3);
        let isos = all_isomorphisms(&s3, &symmetric(3), DEFAULT_SEARCH_BUDGET).unwrap();
        assert_eq!(isos.len(), 6);
        for iso in &isos {
            iso.verify_surjective(&s3, &symmetric(3)).unwrap();
        }
        // |Aut(Z/2 x Z/2)| = |GL(2, F2)| = 6
        let k4 = super::super::products::klein_four_group();
        let k4_again = super::super::products::klein_four_group();
        assert_eq!(all_isomorphisms(&k4, &k4_again, DEFAULT_SEARCH_BUDGET).unwrap().len(), 6);
        // |Aut(Z/3)| = 2, and non-isomorphic groups give the empty list
        let c3 = cyclic(3);
        assert_eq!(all_isomorphisms(&c3, &cyclic(3), DEFAULT_SEARCH_BUDGET).unwrap().len(), 2);
        assert!(all_isomorphisms(&s3, &cyclic(6), DEFAULT_SEARCH_BUDGET).unwrap().is_empty());
    }

    #[test]
    fn budget_exhaustion_is_distinguished() {
        let s4 = symmetric(4);
        let s3 = symmetric(3);
        match surjection_exists(&s4, &s3, 3) {
            Err(GroupError::SearchBudgetExceeded { .. }) => {}
            other => panic!("expected budget error, got {other:?}"),
        }
    }
}
