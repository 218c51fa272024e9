//! Invariant subspaces of the flip space `F_2^n` under permutation
//! subgroups: for the symmetric and alternating actions only the diagonal
//! line and the even-weight hyperplane survive.

use serde_json::{json, Value};

use super::f2::{all_ones, all_subspaces, bits_string, invariant_subspaces, LinMap, Subspace};
use super::{Verdict, VerifyError};

/// Which subgroup of the coordinate permutations acts.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PermSubgroup {
    Symmetric,
    Alternating,
    /// The normal 2,2-cycle four-group; only meaningful at n = 4.
    Klein,
}

impl PermSubgroup {
    fn label(self, n: usize) -> String {
        match self {
            PermSubgroup::Symmetric => format!("S_{n}"),
            PermSubgroup::Alternating => format!("A_{n}"),
            PermSubgroup::Klein => "K_4".to_owned(),
        }
    }

    /// Generators as coordinate permutations (images of 0..n).
    pub(crate) fn generators(self, n: usize) -> Vec<Vec<usize>> {
        match self {
            PermSubgroup::Symmetric => {
                let mut swap: Vec<usize> = (0..n).collect();
                swap.swap(0, 1);
                let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
                vec![swap, cycle]
            }
            PermSubgroup::Alternating => {
                let mut three: Vec<usize> = (0..n).collect();
                three[0] = 1;
                three[1] = 2;
                three[2] = 0;
                // Odd n: full cycle. Even n: (n-1)-cycle fixing axis 0.
                let long: Vec<usize> = if n % 2 == 1 {
                    (0..n).map(|i| (i + 1) % n).collect()
                } else {
                    (0..n).map(|i| if i == 0 { 0 } else { i % (n - 1) + 1 }).collect()
                };
                vec![three, long]
            }
            PermSubgroup::Klein => vec![vec![1, 0, 3, 2], vec![2, 3, 0, 1]],
        }
    }
}

fn subspace_json(s: &Subspace, n: usize) -> Value {
    let mut v = json!({
        "dim": s.dim(),
        "basis": s.basis().iter().map(|&r| bits_string(r, n)).collect::<Vec<_>>(),
    });
    if s.dim() <= 6 {
        v["elements"] =
            json!(s.elements().iter().map(|&e| bits_string(e, n)).collect::<Vec<_>>());
    }
    v
}

/// Enumerate every subspace of `F_2^n` invariant under the named permutation
/// subgroup and compare the proper nonzero ones with {diagonal line,
/// even-weight hyperplane}. Dimensions up to 6 filter the full subspace
/// lattice; beyond that the orbit-span route is used (the two routes are
/// cross-checked against each other at n = 5).
pub fn verify_invariant_subspaces(
    n: usize,
    h: PermSubgroup,
) -> Result<Verdict, VerifyError> {
    if !(3..=10).contains(&n) {
        return Err(VerifyError::Unsupported(format!(
            "subspace enumeration covers 3 <= n <= 10, got {n}"
        )));
    }
    if h == PermSubgroup::Klein && n != 4 {
        return Err(VerifyError::Unsupported(
            "the 2,2-cycle four-group only acts at n = 4".to_owned(),
        ));
    }
    let params = json!({ "n": n, "subgroup": h.label(n) });
    Ok(Verdict::build("invariant-subspaces", params, || {
        let gens: Vec<LinMap> =
            h.generators(n).iter().map(|p| LinMap::from_perm(p)).collect();

        let (mut found, strategy) = if n <= 6 {
            let all: Vec<Subspace> = all_subspaces(n)
                .into_iter()
                .filter(|s| s.is_invariant(&gens))
                .collect();
            (all, "lattice-filter")
        } else {
            (invariant_subspaces(n, &gens), "orbit-spans")
        };
        let mut routes_agree = true;
        if n == 5 {
            routes_agree = found == invariant_subspaces(n, &gens);
        }
        found.retain(|s| s.dim() > 0 && s.dim() < n);

        let diagonal = Subspace::from_vectors([all_ones(n)]);
        let even: Subspace =
            Subspace::from_vectors((0..n - 1).map(|i| (1u16 << i) | (1u16 << (i + 1))));
        let mut expected = vec![diagonal, even];
        expected.sort();

        let holds = found == expected && routes_agree;
        let witness = json!({
            "strategy": strategy,
            "routes_agree_at_5": if n == 5 { Value::Bool(routes_agree) } else { Value::Null },
            "proper_invariant_subspaces":
                found.iter().map(|s| subspace_json(s, n)).collect::<Vec<_>>(),
            "expected":
                expected.iter().map(|s| subspace_json(s, n)).collect::<Vec<_>>(),
        });
        (holds, witness)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_subspace_claim_holds_for_transitive_actions() {
        for n in [3, 4, 5, 7] {
            for h in [PermSubgroup::Symmetric, PermSubgroup::Alternating] {
                let v = verify_invariant_subspaces(n, h).unwrap();
                assert!(v.holds, "n = {n}, {h:?}: {}", v.witness);
            }
        }
    }

    #[test]
    fn klein_case_refutes_with_explicit_planes() {
        let v = verify_invariant_subspaces(4, PermSubgroup::Klein).unwrap();
        assert!(!v.holds);
        let found = v.witness["proper_invariant_subspaces"].as_array().unwrap();
        assert_eq!(found.len(), 5);
        // The three extra planes pair each weight-2 vector with its
        // complement, e.g. {0000, 1100, 0011, 1111}.
        let planes: Vec<_> = found.iter().filter(|s| s["dim"] == 2).collect();
        assert_eq!(planes.len(), 3);
        for p in planes {
            let elems: Vec<&str> =
                p["elements"].as_array().unwrap().iter().map(|e| e.as_str().unwrap()).collect();
            assert!(elems.contains(&"1111"), "{elems:?}");
        }
    }

    #[test]
    fn klein_outside_rank_four_is_rejected() {
        assert!(verify_invariant_subspaces(5, PermSubgroup::Klein).is_err());
    }
}
