//! Direct products and a handful of stock groups used as fixtures and as
//! independent comparison points in tests.

use super::element::{GroupElement, SignedPerm, MAX_SIGNED_RANK};
use super::group::FiniteGroup;

/// A × B on block-diagonal carriers. Elements are enumerated directly — no
/// closure pass — so this is O(|A|·|B|) composes.
pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
    let id = a.identity().block_sum(b.identity());
    let mut elements = Vec::with_capacity(a.elements().len() * b.elements().len());
    for x in a.elements() {
        for y in b.elements() {
            elements.push(x.block_sum(y));
        }
    }
    let mut gens: Vec<GroupElement> =
        a.generators().iter().map(|g| g.block_sum(b.identity())).collect();
    gens.extend(b.generators().iter().map(|g| a.identity().block_sum(g)));
    FiniteGroup::from_parts_unchecked(elements, gens, id)
}

pub fn trivial_group() -> FiniteGroup {
    let id = GroupElement::Signed(SignedPerm::identity(1));
    FiniteGroup::generate(id, vec![], 1).expect("trivial group")
}

fn perm_identity(n: usize) -> GroupElement {
    if n <= MAX_SIGNED_RANK {
        GroupElement::Signed(SignedPerm::identity(n))
    } else {
        GroupElement::Perm((0..n as u16).collect::<Vec<_>>().into_boxed_slice())
    }
}

fn perm_from_images(images: &[usize]) -> GroupElement {
    if images.len() <= MAX_SIGNED_RANK {
        GroupElement::Signed(SignedPerm::new(images, &vec![false; images.len()]))
    } else {
        GroupElement::Perm(images.iter().map(|&i| i as u16).collect::<Vec<_>>().into_boxed_slice())
    }
}

/// Z/n as an n-cycle.
pub fn cyclic_group(n: usize) -> FiniteGroup {
    assert!(n >= 1);
    if n == 1 {
        return trivial_group();
    }
    let mut images: Vec<usize> = (1..n).collect();
    images.push(0);
    FiniteGroup::generate(perm_identity(n), vec![perm_from_images(&images)], n)
        .expect("cyclic group closure")
}

/// S_n from adjacent transpositions.
pub fn symmetric_group(n: usize) -> FiniteGroup {
    assert!(n >= 1);
    if n == 1 {
        return trivial_group();
    }
    let gens = (0..n - 1)
        .map(|i| {
            let mut images: Vec<usize> = (0..n).collect();
            images.swap(i, i + 1);
            perm_from_images(&images)
        })
        .collect();
    let order: usize = (2..=n).product();
    FiniteGroup::generate(perm_identity(n), gens, order).expect("symmetric group closure")
}

/// A_n from a 3-cycle and a long even cycle.
pub fn alternating_group(n: usize) -> FiniteGroup {
    assert!(n >= 3);
    let three: Vec<usize> =
        [1, 2, 0].iter().copied().chain(3..n).collect();
    let long: Vec<usize> = if n % 2 == 1 {
        (1..n).chain([0]).collect() // full n-cycle, even for odd n
    } else {
        [0].into_iter().chain(2..n).chain([1]).collect() // (n-1)-cycle fixing 0
    };
    let order: usize = (2..=n).product::<usize>() / 2;
    FiniteGroup::generate(
        perm_identity(n),
        vec![perm_from_images(&three), perm_from_images(&long)],
        order,
    )
    .expect("alternating group closure")
}

/// Dihedral group of order 2n (symmetries of the n-gon), n ≥ 3.
pub fn dihedral_group(n: usize) -> FiniteGroup {
    assert!(n >= 3);
    let mut rot: Vec<usize> = (1..n).collect();
    rot.push(0);
    let refl: Vec<usize> = (0..n).map(|i| n - 1 - i).collect();
    FiniteGroup::generate(
        perm_identity(n),
        vec![perm_from_images(&rot), perm_from_images(&refl)],
        2 * n,
    )
    .expect("dihedral group closure")
}

/// (Z/2)² as sign flips on two axes.
pub fn klein_four_group() -> FiniteGroup {
    let id = GroupElement::Signed(SignedPerm::identity(2));
    let f1 = GroupElement::Signed(SignedPerm::new(&[0, 1], &[true, false]));
    let f2 = GroupElement::Signed(SignedPerm::new(&[0, 1], &[false, true]));
    FiniteGroup::generate(id, vec![f1, f2], 4).expect("klein four closure")
}

#[cfg(test)]
mod tests {
    use super::super::factors::{composition_factors, SimpleFactor, TieBreak};
    use super::*;

    #[test]
    fn stock_orders() {
        assert_eq!(trivial_group().order(), 1);
        assert_eq!(cyclic_group(12).order(), 12);
        assert_eq!(cyclic_group(17).order(), 17); // plain-perm carrier
        assert_eq!(symmetric_group(5).order(), 120);
        assert_eq!(alternating_group(5).order(), 60);
        assert_eq!(alternating_group(6).order(), 360);
        assert_eq!(dihedral_group(6).order(), 12);
        assert_eq!(klein_four_group().order(), 4);
    }

    #[test]
    fn a5_is_simple_and_perfect() {
        let a5 = alternating_group(5);
        assert_eq!(a5.derived_subgroup().order(), 60);
        let fs = composition_factors(&a5, TieBreak::LargestFirst);
        assert_eq!(fs, vec![SimpleFactor { order: 60, abelian: false }]);
    }

    #[test]
    fn product_carries_both_factors() {
        let p = direct_product(&symmetric_group(3), &cyclic_group(4));
        assert_eq!(p.order(), 24);
        assert_eq!(p.exponent(), 12);
        assert!(!p.is_abelian());
        assert_eq!(p.center().order(), 4);
        let fs = composition_factors(&p, TieBreak::LargestFirst);
        assert_eq!(
            fs,
            vec![
                SimpleFactor { order: 2, abelian: true },
                SimpleFactor { order: 2, abelian: true },
                SimpleFactor { order: 2, abelian: true },
                SimpleFactor { order: 3, abelian: true },
            ]
        );
    }

    #[test]
    fn dihedral_relations() {
        let d = dihedral_group(5);
        assert_eq!(d.order(), 10);
        assert_eq!(d.exponent(), 10);
        assert_eq!(d.abelianization_order(), 2);
    }
}
