//! Exponents of the signed-permutation Weyl groups versus the symmetric
//! group: doubling holds except for the even-sign group at 2-power rank.

use serde_json::json;

use super::{Verdict, VerifyError};
use crate::finite_group::{symmetric_group, GroupElement, SignedPerm};
use crate::root_weyl::{static_facts, weyl_group, CartanType, Series};

/// Check, for `3 <= n <= 8`, that brute-force exponents satisfy: when `n` is
/// a power of two, `e(W(D_n)) = e(S_n)` and `e(W(B_n)) = 2·e(S_n)`;
/// otherwise both Weyl exponents equal `2·e(S_n)`. The closed forms come
/// from the static table, the brute-force values from full order scans, and
/// in the doubling case the order-`2^{l+1}` element that forces the doubling
/// is constructed explicitly and its order re-checked.
pub fn verify_exponent_orthogonal(n: usize) -> Result<Verdict, VerifyError> {
    if !(3..=8).contains(&n) {
        return Err(VerifyError::Unsupported(format!(
            "exponent comparison enumerates ranks 3..=8, got {n}"
        )));
    }
    let b = weyl_group(CartanType { series: Series::B, rank: n })?;
    let d = weyl_group(CartanType { series: Series::D, rank: n })?;
    let sym = symmetric_group(n);

    Ok(Verdict::build("exponent-orthogonal", json!({ "n": n }), || {
        let e_sym = sym.exponent();
        let e_b = b.exponent();
        let e_d = d.exponent();
        let closed_sym = static_facts(CartanType { series: Series::A, rank: n - 1 })
            .exponent
            .expect("symmetric-group exponent is tabulated");
        let closed_b = static_facts(CartanType { series: Series::B, rank: n })
            .exponent
            .expect("hyperoctahedral exponent is tabulated");
        let closed_d = static_facts(CartanType { series: Series::D, rank: n })
            .exponent
            .expect("even-sign exponent is tabulated");

        let power_of_two = n.is_power_of_two();
        let branch_ok = if power_of_two {
            e_d == e_sym && e_b == 2 * e_sym
        } else {
            e_b == 2 * e_sym && e_d == 2 * e_sym
        };
        let closed_ok = e_sym == closed_sym && e_b == closed_b && e_d == closed_d;

        let mut witness = json!({
            "e_sym": e_sym,
            "e_b": e_b,
            "e_d": e_d,
            "closed_forms": { "sym": closed_sym, "b": closed_b, "d": closed_d },
            "branch": if power_of_two { "power-of-two" } else { "doubling" },
        });

        let mut element_ok = true;
        if !power_of_two {
            // The doubling witness: a 2^l-cycle carrying a single flip, with
            // a second flip parked on a fixed axis to keep the count even.
            let l = n.trailing_zeros();
            let cycle = 1usize << l;
            let mut images: Vec<usize> = (0..n).collect();
            for i in 0..cycle {
                images[i] = (i + 1) % cycle;
            }
            let mut flips = vec![false; n];
            flips[0] = true;
            flips[n - 1] = true;
            let elt = GroupElement::Signed(SignedPerm::new(&images, &flips));
            let want = 1u64 << (l + 1);
            let got = elt.order();
            element_ok = d.contains(&elt) && got == want;
            witness["doubling_element"] = json!({
                "cycle_length": cycle,
                "flip_axes": [0, n - 1],
                "order": got,
                "expected_order": want,
                "in_even_sign_group": d.contains(&elt),
            });
        }

        (branch_ok && closed_ok && element_ok, witness)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_branches_hold() {
        for n in [3, 4, 5, 6] {
            let v = verify_exponent_orthogonal(n).unwrap();
            assert!(v.holds, "n = {n}: {:?}", v.witness);
        }
        let v = verify_exponent_orthogonal(4).unwrap();
        assert_eq!(v.witness["e_d"], 12);
        assert_eq!(v.witness["e_b"], 24);
        assert_eq!(v.witness["branch"], "power-of-two");
        let v = verify_exponent_orthogonal(6).unwrap();
        assert_eq!(v.witness["e_d"], 120);
        assert_eq!(v.witness["doubling_element"]["order"], 4);
    }

    #[test]
    fn rank_gate() {
        assert!(verify_exponent_orthogonal(2).is_err());
        assert!(verify_exponent_orthogonal(9).is_err());
    }
}
