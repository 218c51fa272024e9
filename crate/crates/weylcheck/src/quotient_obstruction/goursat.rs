//! Subdirect products of two groups, enumerated completely.
//!
//! Goursat's correspondence: subgroups U <= A x B with surjective
//! projections biject with triples (M_A normal in A, M_B normal in B,
//! phi: A/M_A -> B/M_B an isomorphism), via U = {(a, b) : phi([a]) = [b]}.
//! Distinct triples give distinct subgroups, so enumerating triples gives
//! each subdirect product exactly once — completeness is structural, not a
//! deduplication afterthought.

use std::sync::Arc;

use rustc_hash::FxHashSet;

use crate::finite_group::{
    all_isomorphisms, FiniteGroup, GroupElement, GroupError, Homomorphism, DEFAULT_SEARCH_BUDGET,
};

/// A subdirect product presented concretely: the factor groups and a
/// carrier whose elements are block sums of one element per factor
/// (left-associated: ((f0 + f1) + f2) + ...).
#[derive(Debug)]
pub struct Compositum {
    pub factors: Vec<Arc<FiniteGroup>>,
    pub factor_labels: Vec<String>,
    pub carrier: Arc<FiniteGroup>,
}

impl Compositum {
    /// Split a carrier element into its per-factor coordinates.
    pub fn project(&self, e: &GroupElement) -> Vec<GroupElement> {
        let ids: Vec<GroupElement> =
            self.factors.iter().map(|f| f.identity().clone()).collect();
        let mut prefix: Vec<GroupElement> = Vec::with_capacity(ids.len());
        for id in &ids {
            prefix.push(match prefix.last() {
                Some(p) => p.block_sum(id),
                None => id.clone(),
            });
        }
        let mut parts = Vec::with_capacity(ids.len());
        let mut cur = e.clone();
        for k in (1..ids.len()).rev() {
            let (rest, part) = cur.split_block(&prefix[k - 1], &ids[k]);
            parts.push(part);
            cur = rest;
        }
        parts.push(cur);
        parts.reverse();
        parts
    }

    /// Re-check the two defining invariants from scratch: every coordinate
    /// projection is surjective onto its factor, and the carrier order
    /// divides the product of the factor orders.
    pub fn validate(&self) -> bool {
        let total: u64 = self.factors.iter().map(|f| f.order()).product();
        if self.carrier.order() == 0 || total % self.carrier.order() != 0 {
            return false;
        }
        let mut seen: Vec<FxHashSet<u32>> =
            self.factors.iter().map(|_| FxHashSet::default()).collect();
        for e in self.carrier.elements() {
            for (k, part) in self.project(e).into_iter().enumerate() {
                match self.factors[k].index_of(&part) {
                    Some(i) => {
                        seen[k].insert(i);
                    }
                    None => return false,
                }
            }
        }
        seen.iter()
            .zip(&self.factors)
            .all(|(s, f)| s.len() as u64 == f.order())
    }
}

/// Left-coset partition of a group by a normal subgroup, with the quotient
/// materialized as permutations of the cosets (left translation) so that
/// quotient elements compose like any other group elements.
pub(crate) struct SidePartition {
    /// element index -> coset id; the identity's coset is 0
    pub proj: Vec<u32>,
    /// coset id -> sorted element indices of that coset
    pub buckets: Vec<Vec<u32>>,
    pub quotient: FiniteGroup,
    /// quotient element index -> coset id it maps coset 0 to
    pub coset_of_q: Vec<u32>,
    /// coset id -> quotient element index (inverse of `coset_of_q`)
    pub coset_to_q: Vec<u32>,
}

pub(crate) fn side_partition(
    g: &FiniteGroup,
    m: &FiniteGroup,
) -> Result<SidePartition, GroupError> {
    if !g.contains_all(m) {
        return Err(GroupError::NotASubgroup);
    }
    if !g.is_normal_subgroup(m) {
        return Err(GroupError::NotNormal);
    }
    let n = g.elements().len();
    let index = n / m.elements().len();
    if index > u16::MAX as usize + 1 {
        return Err(GroupError::QuotientTooLarge { index });
    }
    let m_idx: Vec<u32> = m
        .elements()
        .iter()
        .map(|e| g.index_of(e).expect("kernel elements lie in the group"))
        .collect();
    let id_idx = g.index_of(g.identity()).expect("identity indexed");

    let mut proj = vec![u32::MAX; n];
    let mut buckets: Vec<Vec<u32>> = Vec::new();
    let mut reps: Vec<u32> = Vec::new();
    for start in std::iter::once(id_idx).chain((0..n as u32).filter(|&i| i != id_idx)) {
        if proj[start as usize] != u32::MAX {
            continue;
        }
        let cid = buckets.len() as u32;
        let x = g.element(start);
        let mut bucket = Vec::with_capacity(m_idx.len());
        for &mi in &m_idx {
            let y = x.compose(g.element(mi));
            let yi = g.index_of(&y).expect("coset stays inside the group");
            debug_assert_eq!(proj[yi as usize], u32::MAX, "cosets partition the group");
            proj[yi as usize] = cid;
            bucket.push(yi);
        }
        bucket.sort_unstable();
        buckets.push(bucket);
        reps.push(start);
    }

    // x acts on cosets by left translation: c -> [x . rep_c]. This is a
    // homomorphism into the symmetric group on cosets with kernel exactly M.
    let as_perm = |x: &GroupElement| -> GroupElement {
        let images: Vec<u16> = reps
            .iter()
            .map(|&r| {
                let y = x.compose(g.element(r));
                proj[g.index_of(&y).expect("product stays in the group") as usize] as u16
            })
            .collect();
        GroupElement::Perm(images.into_boxed_slice())
    };
    let q_id = GroupElement::Perm((0..buckets.len() as u16).collect::<Vec<u16>>().into_boxed_slice());
    let q_gens: Vec<GroupElement> = g.generators().iter().map(&as_perm).collect();
    let quotient = FiniteGroup::generate(q_id, q_gens, buckets.len())?;

    let coset_of_q: Vec<u32> = quotient
        .elements()
        .iter()
        .map(|e| match e {
            GroupElement::Perm(p) => p[0] as u32,
            _ => unreachable!("quotient elements are coset permutations"),
        })
        .collect();
    let mut coset_to_q = vec![u32::MAX; buckets.len()];
    for (qi, &cid) in coset_of_q.iter().enumerate() {
        coset_to_q[cid as usize] = qi as u32;
    }
    Ok(SidePartition { proj, buckets, quotient, coset_of_q, coset_to_q })
}

/// Expand a generator-pair certificate phi: QA -> QB into a total map on
/// element indices of QA, by closing under right multiplication.
pub(crate) fn hom_full_table(
    qa: &FiniteGroup,
    qb: &FiniteGroup,
    phi: &Homomorphism,
) -> Vec<u32> {
    let n = qa.elements().len();
    let mut table = vec![u32::MAX; n];
    let ida = qa.index_of(qa.identity()).expect("identity indexed");
    table[ida as usize] = qb.index_of(qb.identity()).expect("identity indexed");
    let pairs: Vec<(u32, u32)> = phi
        .pairs
        .iter()
        .map(|(a, b)| {
            (
                qa.index_of(a).expect("certificate generator lies in the source"),
                qb.index_of(b).expect("certificate image lies in the target"),
            )
        })
        .collect();
    let mut work = vec![ida];
    while let Some(x) = work.pop() {
        let y = table[x as usize];
        for &(ga, gb) in &pairs {
            let nx = qa.element(x).compose(qa.element(ga));
            let nxi = qa.index_of(&nx).expect("product stays in the group");
            if table[nxi as usize] == u32::MAX {
                let ny = qb.element(y).compose(qb.element(gb));
                table[nxi as usize] = qb.index_of(&ny).expect("product stays in the group");
                work.push(nxi);
            }
        }
    }
    debug_assert!(
        table.iter().all(|&v| v != u32::MAX),
        "certificate generators span the source quotient"
    );
    table
}

/// Materialize the subdirect product of a Goursat triple: all pairs (a, b)
/// with phi([a]) = [b], as block-sum elements with verified generators.
pub(crate) fn assemble_carrier(
    a: &FiniteGroup,
    sa: &SidePartition,
    b: &FiniteGroup,
    sb: &SidePartition,
    table: &[u32],
    mb: &FiniteGroup,
) -> Result<FiniteGroup, GroupError> {
    let b_bucket_of_a = |ai: u32| -> &Vec<u32> {
        let qa_el = sa.coset_to_q[sa.proj[ai as usize] as usize];
        let qb_el = table[qa_el as usize];
        &sb.buckets[sb.coset_of_q[qb_el as usize] as usize]
    };

    let mut elements =
        Vec::with_capacity(a.elements().len() * mb.elements().len());
    for (ai, ae) in a.elements().iter().enumerate() {
        for &bi in b_bucket_of_a(ai as u32) {
            elements.push(ae.block_sum(b.element(bi)));
        }
    }

    // Generators: each generator of A paired with one lift of its phi-image,
    // plus the B-side kernel alone. Products of the first kind realize every
    // A-coordinate; differences of two elements over the same A-coordinate
    // land in 1 x M_B, which the second kind fills out. That argument also
    // shows the fiber is closed, so the checked constructor's closure walk
    // would only re-derive it at full carrier cost.
    let mut gens = Vec::with_capacity(a.generators().len() + mb.generators().len());
    for gen in a.generators() {
        let gi = a.index_of(gen).expect("generator indexed");
        let lift = b.element(b_bucket_of_a(gi)[0]);
        gens.push(gen.block_sum(lift));
    }
    for m in mb.generators() {
        gens.push(a.identity().block_sum(m));
    }
    let identity = a.identity().block_sum(b.identity());
    Ok(FiniteGroup::from_parts_unchecked(elements, gens, identity))
}

/// Every subgroup of `a x b` projecting onto both factors, materialized.
///
/// Refuses products larger than `product_bound`. The returned list is
/// deterministic: triples are visited in sorted normal-subgroup order, and
/// results are then sorted by (carrier order, element list).
pub fn goursat_subdirect(
    a: &Arc<FiniteGroup>,
    b: &Arc<FiniteGroup>,
    product_bound: u64,
) -> Result<Vec<Compositum>, GroupError> {
    if a.order().saturating_mul(b.order()) > product_bound {
        return Err(GroupError::BoundExceeded { bound: product_bound as usize });
    }
    let nas = a.normal_subgroups_shared(a.elements().len())?;
    let nbs = b.normal_subgroups_shared(b.elements().len())?;
    let mut out: Vec<Compositum> = Vec::new();
    for ma in nas.iter() {
        let q_order = a.order() / ma.order();
        let sa = side_partition(a, ma)?;
        for mb in nbs.iter() {
            if b.order() / mb.order() != q_order {
                continue;
            }
            let sb = side_partition(b, mb)?;
            let isos = all_isomorphisms(&sa.quotient, &sb.quotient, DEFAULT_SEARCH_BUDGET)?;
            for phi in &isos {
                let table = hom_full_table(&sa.quotient, &sb.quotient, phi);
                let carrier = assemble_carrier(a, &sa, b, &sb, &table, mb)?;
                out.push(Compositum {
                    factors: vec![a.clone(), b.clone()],
                    factor_labels: vec![
                        format!("left (order {})", a.order()),
                        format!("right (order {})", b.order()),
                    ],
                    carrier: Arc::new(carrier),
                });
            }
        }
    }
    out.sort_by(|x, y| {
        x.carrier
            .order()
            .cmp(&y.carrier.order())
            .then_with(|| x.carrier.elements().cmp(y.carrier.elements()))
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_group::{
        cyclic_group, jh_set, klein_four_group, symmetric_group, SimpleFactor,
    };

    fn arc(g: FiniteGroup) -> Arc<FiniteGroup> {
        Arc::new(g)
    }

    #[test]
    fn klein_times_klein_has_two_subdirect_products() {
        // Z/2 x Z/2 as factors: the full product and the diagonal.
        let a = arc(cyclic_group(2));
        let b = arc(cyclic_group(2));
        let subs = goursat_subdirect(&a, &b, 1_000_000).unwrap();
        let orders: Vec<u64> = subs.iter().map(|c| c.carrier.order()).collect();
        assert_eq!(orders, [2, 4]);
        for c in &subs {
            assert!(c.validate(), "subdirect invariants for order {}", c.carrier.order());
        }
    }

    #[test]
    fn s3_times_s3_has_eight_subdirect_products() {
        // 1 full product, 6 graphs of the six automorphisms, 1 gluing over
        // the sign quotient.
        let a = arc(symmetric_group(3));
        let b = arc(symmetric_group(3));
        let subs = goursat_subdirect(&a, &b, 1_000_000).unwrap();
        assert_eq!(subs.len(), 8);
        let mut orders: Vec<u64> = subs.iter().map(|c| c.carrier.order()).collect();
        orders.sort_unstable();
        assert_eq!(orders, [6, 6, 6, 6, 6, 6, 18, 36]);
        for c in &subs {
            assert!(c.validate());
        }
    }

    #[test]
    fn s3_times_c3_has_only_the_full_product() {
        // No common nontrivial quotient: S3's quotients are 1, Z/2, S3 and
        // Z/3's are 1, Z/3.
        let a = arc(symmetric_group(3));
        let b = arc(cyclic_group(3));
        let subs = goursat_subdirect(&a, &b, 1_000_000).unwrap();
        assert_eq!(subs.len(), 1);
        assert_eq!(subs[0].carrier.order(), 18);
        assert!(subs[0].validate());
    }

    #[test]
    fn subdirect_exponent_divides_lcm_of_factor_exponents() {
        let a = arc(symmetric_group(4));
        let b = arc(symmetric_group(3));
        let lcm = {
            let (x, y) = (a.exponent(), b.exponent());
            x / gcd(x, y) * y
        };
        for c in goursat_subdirect(&a, &b, 1_000_000).unwrap() {
            assert_eq!(lcm % c.carrier.exponent(), 0);
        }
    }

    #[test]
    fn subdirect_derived_subgroup_embeds_in_factor_derived_product() {
        let a = arc(symmetric_group(4));
        let b = arc(klein_four_group());
        for c in goursat_subdirect(&a, &b, 1_000_000).unwrap() {
            let da = a.derived_subgroup();
            let db = b.derived_subgroup();
            for k in c.carrier.derived_subgroup().elements() {
                let parts = c.project(k);
                assert!(da.index_of(&parts[0]).is_some());
                assert!(db.index_of(&parts[1]).is_some());
            }
        }
    }

    #[test]
    fn jh_factors_of_subdirect_products_come_from_the_factors() {
        let a = arc(symmetric_group(4));
        let b = arc(symmetric_group(3));
        let allowed: Vec<SimpleFactor> = {
            let mut u = jh_set(&a);
            u.extend(jh_set(&b));
            u.sort_unstable();
            u.dedup();
            u
        };
        for c in goursat_subdirect(&a, &b, 1_000_000).unwrap() {
            for f in jh_set(&c.carrier) {
                assert!(allowed.contains(&f), "factor {f:?} outside the union");
            }
        }
    }

    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 { a } else { gcd(b, a % b) }
    }
}
