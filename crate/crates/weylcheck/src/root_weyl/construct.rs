//! Weyl group construction with a process-wide cache.
//!
//! Groups are generated once per (group-isomorphism) type and shared as
//! `Arc`s so that the lazily cached invariants — conjugacy classes on a
//! 10-million-element group are expensive — are computed once no matter how
//! many callers ask. B and C share one entry.

use std::sync::{Arc, Mutex, OnceLock};

use rustc_hash::FxHashMap;

use crate::finite_group::{FiniteGroup, GroupElement, SignedPerm};

use super::roots::{carrier_identity, simple_reflections};
use super::{CartanType, WeylError};

type Cell = Arc<OnceLock<Arc<FiniteGroup>>>;

static CACHE: OnceLock<Mutex<FxHashMap<CartanType, Cell>>> = OnceLock::new();

/// The full Weyl group, generated from simple reflections. Refuses types
/// whose order is beyond enumeration (E7, E8, high ranks) — see
/// [`CartanType::enumerable`].
pub fn weyl_group(t: CartanType) -> Result<Arc<FiniteGroup>, WeylError> {
    if !t.enumerable() {
        return Err(WeylError::EnumerationUnsupported { t, order: t.order() });
    }
    let key = t.group_key();
    let cell: Cell = {
        let map = CACHE.get_or_init(|| Mutex::new(FxHashMap::default()));
        let mut locked = map.lock().expect("weyl cache poisoned");
        locked.entry(key).or_default().clone()
    };
    let group = cell.get_or_init(|| {
        let g = FiniteGroup::generate(
            carrier_identity(key),
            simple_reflections(key),
            key.order() as usize,
        )
        .expect("Weyl group closure stays within its known order");
        debug_assert_eq!(g.order(), key.order());
        Arc::new(g)
    });
    Ok(Arc::clone(group))
}

/// -Id on n axes (the longest element of W(B_n); lies in W(D_n) iff n is even).
pub fn minus_identity(n: usize) -> GroupElement {
    GroupElement::Signed(SignedPerm::new(&(0..n).collect::<Vec<_>>(), &vec![true; n]))
}

/// {±Id} on n axes.
pub fn delta_subgroup(n: usize) -> FiniteGroup {
    let id = GroupElement::Signed(SignedPerm::identity(n));
    FiniteGroup::from_parts_unchecked(vec![id.clone(), minus_identity(n)], vec![minus_identity(n)], id)
}

/// The full sign group (Z/2)^n of axis flips inside W(B_n).
pub fn sign_subgroup(n: usize) -> FiniteGroup {
    let identity = GroupElement::Signed(SignedPerm::identity(n));
    let images: Vec<usize> = (0..n).collect();
    let elements: Vec<GroupElement> = (0..1u32 << n)
        .map(|mask| {
            let flips: Vec<bool> = (0..n).map(|i| mask >> i & 1 == 1).collect();
            GroupElement::Signed(SignedPerm::new(&images, &flips))
        })
        .collect();
    let gens = (0..n)
        .map(|i| {
            let mut flips = vec![false; n];
            flips[i] = true;
            GroupElement::Signed(SignedPerm::new(&images, &flips))
        })
        .collect();
    FiniteGroup::from_parts_unchecked(elements, gens, identity)
}

/// The even-sign subgroup (Z/2)^{n-1} — flips of evenly many axes, the sign
/// part of W(D_n).
pub fn even_sign_subgroup(n: usize) -> FiniteGroup {
    let identity = GroupElement::Signed(SignedPerm::identity(n));
    let images: Vec<usize> = (0..n).collect();
    let elements: Vec<GroupElement> = (0..1u32 << n)
        .filter(|mask| mask.count_ones() % 2 == 0)
        .map(|mask| {
            let flips: Vec<bool> = (0..n).map(|i| mask >> i & 1 == 1).collect();
            GroupElement::Signed(SignedPerm::new(&images, &flips))
        })
        .collect();
    let gens = (0..n - 1)
        .map(|i| {
            let mut flips = vec![false; n];
            flips[i] = true;
            flips[i + 1] = true;
            GroupElement::Signed(SignedPerm::new(&images, &flips))
        })
        .collect();
    FiniteGroup::from_parts_unchecked(elements, gens, identity)
}

#[cfg(test)]
mod tests {
    use super::super::roots::{reflection_in_root, roots};
    use super::*;

    fn t(s: &str) -> CartanType {
        s.parse().unwrap()
    }

    #[test]
    fn small_weyl_orders() {
        let cases =
            [("A_1", 2), ("A_2", 6), ("A_3", 24), ("B_2", 8), ("B_3", 48), ("D_3", 24), ("D_4", 192), ("G_2", 12), ("F_4", 1152)];
        for (name, order) in cases {
            let w = weyl_group(t(name)).unwrap();
            assert_eq!(w.order(), order, "{name}");
        }
    }

    #[test]
    fn b_and_c_share_one_group() {
        let b = weyl_group(t("B_3")).unwrap();
        let c = weyl_group(t("C_3")).unwrap();
        assert!(Arc::ptr_eq(&b, &c));
    }

    #[test]
    fn enumeration_refusals() {
        assert!(weyl_group(t("E_7")).is_err());
        assert!(weyl_group(t("E_8")).is_err());
        assert!(weyl_group(t("B_9")).is_err());
        assert!(weyl_group(t("A_10")).is_err());
    }

    #[test]
    fn all_root_reflections_lie_in_the_group() {
        for name in ["B_3", "D_4", "F_4", "G_2"] {
            let ty = t(name);
            let w = weyl_group(ty).unwrap();
            for r in &roots(ty).roots {
                assert!(w.contains(&reflection_in_root(ty, r)), "{name} root {r:?}");
            }
        }
    }

    #[test]
    fn sign_subgroups_sit_inside_weyl_groups() {
        let b3 = weyl_group(t("B_3")).unwrap();
        let v = sign_subgroup(3);
        assert_eq!(v.order(), 8);
        assert!(b3.is_normal_subgroup(&v));
        let ve = even_sign_subgroup(3);
        assert_eq!(ve.order(), 4);
        assert!(b3.is_normal_subgroup(&ve));
        let d4 = weyl_group(t("D_4")).unwrap();
        assert!(d4.is_normal_subgroup(&even_sign_subgroup(4)));
        assert!(d4.is_normal_subgroup(&delta_subgroup(4)));
        // -Id has odd sign count on odd ranks: not a W(D_3) element
        let d3 = weyl_group(t("D_3")).unwrap();
        assert!(!d3.contains(&minus_identity(3)));
        assert!(b3.contains(&minus_identity(3)));
    }

    #[test]
    fn weyl_exponents_match_closed_forms() {
        for name in ["A_2", "A_3", "B_2", "B_3", "B_4", "D_4", "G_2", "F_4"] {
            let ty = t(name);
            let w = weyl_group(ty).unwrap();
            assert_eq!(
                Some(w.exponent()),
                super::super::static_facts(ty).exponent,
                "{name}"
            );
        }
    }
}
