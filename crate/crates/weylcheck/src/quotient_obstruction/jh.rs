//! Composition-factor containment across compositums: every subdirect
//! product assembled from the given factors has its simple factors inside
//! the union of the factors' own, and the full product attains the union
//! exactly. Verified by enumerating the subdirect products and running the
//! chief-series factorization on each carrier independently.

use std::sync::Arc;

use serde_json::{json, Value};

use crate::finite_group::{jh_set, FiniteGroup, SimpleFactor};
use crate::weyl_structure::{Verdict, VerifyError};

use super::goursat::goursat_subdirect;

/// How many two-factor gluings are expanded against a third factor before
/// the three-factor enumeration switches to sampling.
const TRIPLE_SAMPLE: usize = 24;

fn factor_json(v: &[SimpleFactor]) -> Value {
    Value::Array(v.iter().map(|s| json!({ "order": s.order, "abelian": s.abelian })).collect())
}

pub fn verify_jh_compositum(
    factors: &[Arc<FiniteGroup>],
    labels: &[String],
    product_bound: u64,
) -> Result<Verdict, VerifyError> {
    if factors.is_empty() {
        return Err(VerifyError::Unsupported("at least one factor is required".into()));
    }
    if factors.len() > 3 {
        return Err(VerifyError::Unsupported(format!(
            "at most 3 factors are enumerable; got {}",
            factors.len()
        )));
    }
    assert_eq!(factors.len(), labels.len(), "one label per factor");

    let full_order: u64 = factors.iter().map(|f| f.order()).product();
    let mut sampled = false;
    let mut carriers: Vec<Arc<FiniteGroup>> = Vec::new();
    match factors {
        [a] => carriers.push(a.clone()),
        [a, b] => {
            for c in goursat_subdirect(a, b, product_bound)? {
                carriers.push(c.carrier);
            }
        }
        [a, b, c] => {
            let seconds = goursat_subdirect(a, b, product_bound)?;
            if seconds.len() > TRIPLE_SAMPLE {
                sampled = true;
            }
            for v in seconds.iter().take(TRIPLE_SAMPLE) {
                if v.carrier.order().saturating_mul(c.order()) > product_bound {
                    sampled = true;
                    continue;
                }
                for w in goursat_subdirect(&v.carrier, c, product_bound)? {
                    carriers.push(w.carrier);
                }
            }
        }
        _ => unreachable!("length checked above"),
    }

    let params = json!({
        "factors": labels,
        "factor_orders": factors.iter().map(|f| f.order()).collect::<Vec<_>>(),
        "max_product": product_bound,
    });
    let factor_sets: Vec<Vec<SimpleFactor>> = factors.iter().map(|f| jh_set(f)).collect();

    Ok(Verdict::build("jh-compositum", params, move || {
        let mut union: Vec<SimpleFactor> = factor_sets.iter().flatten().copied().collect();
        union.sort_unstable();
        union.dedup();

        let mut violations: Vec<Value> = Vec::new();
        let mut seen_sets: Vec<Vec<SimpleFactor>> = Vec::new();
        let mut full_matches: Option<bool> = None;
        for c in &carriers {
            let s = jh_set(c);
            let outside: Vec<SimpleFactor> =
                s.iter().filter(|f| !union.contains(*f)).copied().collect();
            if !outside.is_empty() {
                violations.push(json!({
                    "carrier_order": c.order(),
                    "jh": factor_json(&s),
                    "outside_union": factor_json(&outside),
                }));
            }
            if c.order() == full_order {
                full_matches = Some(s == union);
            }
            if !seen_sets.contains(&s) {
                seen_sets.push(s);
            }
        }
        seen_sets.sort_unstable();

        let holds = violations.is_empty() && full_matches != Some(false);
        let witness = json!({
            "union": factor_json(&union),
            "compositums_checked": carriers.len(),
            "carrier_orders": carriers.iter().map(|c| c.order()).collect::<Vec<_>>(),
            "distinct_jh_sets": seen_sets.iter().map(|s| factor_json(s)).collect::<Vec<_>>(),
            "full_product_attains_union": full_matches,
            "sampled": sampled,
            "violations": violations,
        });
        (holds, witness)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_group::{alternating_group, klein_four_group, symmetric_group};

    fn arcs(gs: Vec<FiniteGroup>) -> (Vec<Arc<FiniteGroup>>, Vec<String>) {
        let labels = (0..gs.len()).map(|i| format!("factor {i}")).collect();
        (gs.into_iter().map(Arc::new).collect(), labels)
    }

    #[test]
    fn two_symmetric_factors_stay_inside_the_union() {
        let (fs, ls) = arcs(vec![symmetric_group(3), symmetric_group(3)]);
        let v = verify_jh_compositum(&fs, &ls, 1_000_000).unwrap();
        assert!(v.holds, "{}", v.witness);
        assert_eq!(v.witness["compositums_checked"], 8);
        assert_eq!(v.witness["full_product_attains_union"], true);
    }

    #[test]
    fn s4_with_a4_glues_only_as_the_full_product() {
        // S_4 and A_4 share no nontrivial common quotient, so the only
        // subdirect product is S_4 x A_4 itself.
        let (fs, ls) = arcs(vec![symmetric_group(4), alternating_group(4)]);
        let v = verify_jh_compositum(&fs, &ls, 1_000_000).unwrap();
        assert!(v.holds, "{}", v.witness);
        assert_eq!(v.witness["compositums_checked"], 1);
        assert_eq!(v.witness["carrier_orders"][0], 288);
    }

    #[test]
    fn single_factor_is_its_own_compositum() {
        let (fs, ls) = arcs(vec![klein_four_group()]);
        let v = verify_jh_compositum(&fs, &ls, 1_000).unwrap();
        assert!(v.holds);
        assert_eq!(v.witness["compositums_checked"], 1);
    }

    #[test]
    fn three_factors_enumerate_with_sampling_flag() {
        let (fs, ls) = arcs(vec![symmetric_group(3), symmetric_group(3), klein_four_group()]);
        let v = verify_jh_compositum(&fs, &ls, 1_000_000).unwrap();
        assert!(v.holds, "{}", v.witness);
        assert!(v.witness["compositums_checked"].as_u64().unwrap() > 8);
    }

    #[test]
    fn four_factors_are_rejected() {
        let (fs, ls) = arcs(vec![
            klein_four_group(),
            klein_four_group(),
            klein_four_group(),
            klein_four_group(),
        ]);
        assert!(matches!(
            verify_jh_compositum(&fs, &ls, 1_000),
            Err(VerifyError::Unsupported(_))
        ));
    }
}
