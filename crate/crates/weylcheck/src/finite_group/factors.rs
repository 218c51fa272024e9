//! Composition factors by walking a maximal-normal chain.
//!
//! Factors are identified by (order, abelian?): abelian simple groups are
//! exactly the prime-order ones, and distinct nonabelian simple groups of
//! equal order (the classic order coincidences) are deliberately not
//! distinguished here — callers that care must disambiguate themselves.
//!
//! The chain step never materializes a large quotient: for non-perfect G a
//! maximal normal subgroup above [G,G] is cut out of the small abelianization
//! directly, and for perfect G a maximal normal subgroup is grown from
//! conjugacy-class closures, with closures aborted past |G|/2 (by Lagrange
//! they can then only be G itself). Jordan–Hölder makes the resulting factor
//! multiset independent of every choice; the tie-break knob exists so tests
//! can confirm that.

use super::element::GroupElement;
use super::group::FiniteGroup;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct SimpleFactor {
    pub order: u64,
    pub abelian: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum TieBreak {
    /// Prefer large primes / large candidate subgroups first.
    #[default]
    LargestFirst,
    /// The reverse order; exists to exercise chain-independence.
    SmallestFirst,
}

/// Jordan–Hölder factor multiset, sorted ascending.
pub fn composition_factors(g: &FiniteGroup, tb: TieBreak) -> Vec<SimpleFactor> {
    let mut out = Vec::new();
    factor_into(g, tb, &mut out);
    out.sort_unstable();
    out
}

/// The distinct simple factors (the JH "support" set).
pub fn jh_set(g: &FiniteGroup) -> Vec<SimpleFactor> {
    let mut v = composition_factors(g, TieBreak::LargestFirst);
    v.dedup();
    v
}

fn factor_into(g: &FiniteGroup, tb: TieBreak, out: &mut Vec<SimpleFactor>) {
    if g.order() == 1 {
        return;
    }
    if g.is_abelian() {
        for p in prime_factors(g.order()) {
            out.push(SimpleFactor { order: p, abelian: true });
        }
        return;
    }
    let d = g.derived_subgroup();
    let next = if d.order() < g.order() {
        descend_through_abelianization(g, d, tb, out)
    } else {
        descend_perfect(g, tb, out)
    };
    factor_into(&next, tb, out);
}

/// For non-perfect G: pick a maximal normal subgroup N ⊇ [G,G] (index a
/// prime p chosen by tie-break among divisors of |G/[G,G]|), emit Z/p, and
/// return N.
fn descend_through_abelianization(
    g: &FiniteGroup,
    derived: FiniteGroup,
    tb: TieBreak,
    out: &mut Vec<SimpleFactor>,
) -> FiniteGroup {
    let k = (g.order() / derived.order()) as usize;
    debug_assert!(k >= 2);
    // Coset representatives of [G,G]: BFS over generator multiplication.
    let coset_of = |x: &GroupElement, reps: &[GroupElement]| -> Option<usize> {
        reps.iter().position(|r| derived.contains(&r.inverse().compose(x)))
    };
    let mut reps: Vec<GroupElement> = vec![g.identity().clone()];
    let mut q = 0;
    while q < reps.len() {
        let cur = reps[q].clone();
        q += 1;
        for gen in g.generators() {
            let x = cur.compose(gen);
            if coset_of(&x, &reps).is_none() {
                reps.push(x);
            }
        }
    }
    assert_eq!(reps.len(), k, "coset count disagrees with the index");
    assert!(k <= 256, "abelianization of order {k} is larger than this chain step supports");
    let mut primes = prime_factors(k as u64);
    primes.dedup();
    let p = match tb {
        TieBreak::LargestFirst => *primes.last().unwrap(),
        TieBreak::SmallestFirst => primes[0],
    } as usize;

    // Work in Q = G/[G,G] on rep indices. R = <p-th powers and p'-elements>;
    // Q/R is elementary abelian of exponent p, and any maximal subgroup of Q
    // containing R has index exactly p. Grow one greedily.
    let mul = |a: usize, b: usize, reps: &[GroupElement]| -> usize {
        coset_of(&reps[a].compose(&reps[b]), reps).expect("coset product escaped")
    };
    let order_in_q = |a: usize, reps: &[GroupElement]| -> usize {
        let mut t = a;
        let mut ord = 1;
        while t != 0 {
            t = mul(t, a, reps);
            ord += 1;
        }
        ord
    };
    let close = |seed: &[usize], reps: &[GroupElement]| -> Vec<bool> {
        let mut inside = vec![false; k];
        inside[0] = true;
        let mut list = vec![0usize];
        let mut q = 0;
        let mut seeds: Vec<usize> = seed.to_vec();
        seeds.retain(|&s| s != 0);
        while q < list.len() {
            let cur = list[q];
            q += 1;
            for &s in &seeds {
                let nxt = mul(cur, s, reps);
                if !inside[nxt] {
                    inside[nxt] = true;
                    list.push(nxt);
                }
            }
        }
        inside
    };
    let mut r_seed: Vec<usize> = Vec::new();
    for a in 1..k {
        let ord = order_in_q(a, &reps);
        if ord % p != 0 {
            r_seed.push(a);
        } else {
            // p-th power
            let mut t = a;
            for _ in 1..p {
                t = mul(t, a, &reps);
            }
            r_seed.push(t);
        }
    }
    let mut member = close(&r_seed, &reps);
    let mut m_seed = r_seed;
    for a in 1..k {
        if member[a] {
            continue;
        }
        let mut trial = m_seed.clone();
        trial.push(a);
        let trial_member = close(&trial, &reps);
        if trial_member.iter().filter(|&&b| b).count() < k {
            m_seed = trial;
            member = trial_member;
        }
    }
    let m_size = member.iter().filter(|&&b| b).count();
    assert_eq!(m_size, k / p, "maximal subgroup of the abelianization has wrong index");

    out.push(SimpleFactor { order: p as u64, abelian: true });

    // N = union of the [G,G]-cosets lying in the chosen maximal subgroup.
    let mut elements: Vec<GroupElement> =
        Vec::with_capacity(m_size * derived.order() as usize);
    let mut gens = derived.generators().to_vec();
    for (i, rep) in reps.iter().enumerate() {
        if !member[i] {
            continue;
        }
        if i != 0 {
            gens.push(rep.clone());
        }
        for d_el in derived.elements() {
            elements.push(rep.compose(d_el));
        }
    }
    let mut n = FiniteGroup::from_parts_unchecked(elements, gens, g.identity().clone());
    n.reduce_generators();
    n
}

/// For perfect G: grow a maximal proper normal subgroup from conjugacy-class
/// closures; if every class generates G, G is simple.
fn descend_perfect(g: &FiniteGroup, tb: TieBreak, out: &mut Vec<SimpleFactor>) -> FiniteGroup {
    let half = g.elements().len() / 2;
    let mut class_reps: Vec<(usize, u32)> = g
        .conjugacy_classes()
        .iter()
        .filter(|c| !g.element(c[0]).is_identity())
        .map(|c| (c.len(), c[0]))
        .collect();
    // Examine small classes first: their closures are cheap and likely proper.
    class_reps.sort_unstable();
    let mut current: Option<FiniteGroup> = None;
    for &(_, rep_idx) in &class_reps {
        let rep = g.element(rep_idx).clone();
        if let Some(n) = g.normal_closure_bounded(&[rep], half) {
            current = Some(n);
            break;
        }
    }
    let Some(mut n) = current else {
        // simple (and nonabelian: a perfect group has no Z/p quotient)
        out.push(SimpleFactor { order: g.order(), abelian: false });
        return g.trivial_subgroup();
    };
    // Grow to maximality: adjoin class reps while the closure stays proper.
    let ordered: Vec<u32> = match tb {
        TieBreak::LargestFirst => class_reps.iter().rev().map(|&(_, i)| i).collect(),
        TieBreak::SmallestFirst => class_reps.iter().map(|&(_, i)| i).collect(),
    };
    loop {
        let mut grew = false;
        for &rep_idx in &ordered {
            let rep = g.element(rep_idx).clone();
            if n.contains(&rep) {
                continue;
            }
            let mut seed = n.generators().to_vec();
            seed.push(rep);
            if let Some(bigger) = g.normal_closure_bounded(&seed, half) {
                debug_assert!(bigger.order() > n.order());
                n = bigger;
                grew = true;
                break;
            }
        }
        if !grew {
            break;
        }
    }
    let q = g.order() / n.order();
    debug_assert!(q > 1);
    out.push(SimpleFactor { order: q, abelian: false });
    n
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        while n % d == 0 {
            out.push(d);
            n /= d;
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
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

    fn f(order: u64, abelian: bool) -> SimpleFactor {
        SimpleFactor { order, abelian }
    }

    #[test]
    fn s4_factors() {
        // S_4: Z/2 (sign), Z/3 and Z/2 x Z/2 below
        let got = composition_factors(&symmetric(4), TieBreak::LargestFirst);
        assert_eq!(got, vec![f(2, true), f(2, true), f(2, true), f(3, true)]);
    }

    #[test]
    fn s5_factors_include_a5() {
        let got = composition_factors(&symmetric(5), TieBreak::LargestFirst);
        assert_eq!(got, vec![f(2, true), f(60, false)]);
    }

    #[test]
    fn s6_factors_both_tiebreaks() {
        let s6 = symmetric(6);
        let a = composition_factors(&s6, TieBreak::LargestFirst);
        let b = composition_factors(&s6, TieBreak::SmallestFirst);
        assert_eq!(a, vec![f(2, true), f(360, false)]);
        assert_eq!(a, b);
    }

    #[test]
    fn abelian_chain() {
        // cyclic of order 6: a 3-cycle together with a sign flip on a fixed axis
        let g = FiniteGroup::generate(
            GroupElement::Signed(SignedPerm::identity(4)),
            vec![sp(&[1, 2, 0, 3], &[false, false, false, true])],
            20,
        )
        .unwrap();
        assert_eq!(g.order(), 6);
        let got = composition_factors(&g, TieBreak::LargestFirst);
        assert_eq!(got, vec![f(2, true), f(3, true)]);
    }

    #[test]
    fn jh_set_dedups() {
        let s = jh_set(&symmetric(4));
        assert_eq!(s, vec![f(2, true), f(3, true)]);
    }
}
