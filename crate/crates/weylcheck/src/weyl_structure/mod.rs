//! Closed-form structure facts about Weyl groups, each re-checked against
//! the brute-force engine and returned as a structured [`Verdict`].
//!
//! Every verifier recomputes the claimed data from the group itself (never
//! from the static tables alone) and reports `holds = false` with an
//! explicit, re-checkable witness whenever the computation disagrees with
//! the closed form.

mod exponent;
mod f2;
mod f4;
mod isotrivial;
mod normal_d;
mod product;
mod subspaces;

pub use exponent::verify_exponent_orthogonal;
pub use f4::verify_f4_structure;
pub use isotrivial::{is_isotrivial_pair, verify_isotrivial_pair};
pub use normal_d::verify_normal_subgroups_d;
pub use product::verify_product_decomposition;
pub use subspaces::{verify_invariant_subspaces, PermSubgroup};

use std::fmt;
use std::time::Instant;

use serde::Serialize;
use serde_json::{Map, Value};
use thiserror::Error;

use crate::finite_group::{GroupError, SimpleFactor};
use crate::root_weyl::{static_facts, CartanType, WeylError};

/// Outcome of one verifier run: the claim checked, the parameters it was
/// checked at, whether the computation matched the closed form, and enough
/// witness data to re-verify a refutation without rerunning the enumeration.
#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub claim_id: String,
    pub params: Map<String, Value>,
    pub holds: bool,
    pub witness: Value,
    pub elapsed_ms: u64,
}

impl Verdict {
    /// Run `body` under a timer and wrap its result.
    pub(crate) fn build(
        claim_id: &str,
        params: Value,
        body: impl FnOnce() -> (bool, Value),
    ) -> Verdict {
        let params = match params {
            Value::Object(m) => m,
            _ => panic!("verdict parameters must be a JSON object"),
        };
        let start = Instant::now();
        let (holds, witness) = body();
        Verdict {
            claim_id: claim_id.to_owned(),
            params,
            holds,
            witness,
            elapsed_ms: start.elapsed().as_millis() as u64,
        }
    }
}

#[derive(Debug, Error)]
pub enum VerifyError {
    /// Parameter outside the range the verifier enumerates.
    #[error("unsupported parameter: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Weyl(#[from] WeylError),
}

/// Coarse classification of a Weyl group by its simple composition factors.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum JhType {
    /// Z/2 is the only simple factor.
    TwoOnly,
    /// Solvable with both Z/2 and Z/3 among the factors.
    ThreeSolvable,
    /// Z/2 plus the alternating group of the tagged degree.
    Alternating(u32),
    /// Z/2 plus one of the three exceptional simple factors.
    Exceptional,
}

impl fmt::Display for JhType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            JhType::TwoOnly => write!(f, "Z/2"),
            JhType::ThreeSolvable => write!(f, "Z/3"),
            JhType::Alternating(n) => write!(f, "A_{n}"),
            JhType::Exceptional => write!(f, "E"),
        }
    }
}

impl Serialize for JhType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Degree of the alternating group of the given order, if it is one.
fn alternating_degree(order: u64) -> Option<u32> {
    const TABLE: [(u64, u32); 6] =
        [(60, 5), (360, 6), (2520, 7), (20160, 8), (181440, 9), (1814400, 10)];
    TABLE.iter().find(|&&(o, _)| o == order).map(|&(_, d)| d)
}

/// Classify a composition-factor multiset.
pub(crate) fn jh_type_of_factors(factors: &[SimpleFactor]) -> JhType {
    if let Some(f) = factors.iter().find(|f| !f.abelian) {
        match alternating_degree(f.order) {
            Some(d) => JhType::Alternating(d),
            None => JhType::Exceptional,
        }
    } else if factors.iter().any(|f| f.order == 3) {
        JhType::ThreeSolvable
    } else {
        JhType::TwoOnly
    }
}

/// The JH type of `W(t)`, from the static factor table.
///
/// For enumerable types the table itself is cross-checked against
/// `composition_factors` by the verifier test suite.
pub fn jh_type(t: CartanType) -> JhType {
    jh_type_of_factors(&static_facts(t).jh)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_group::{composition_factors, jh_set, TieBreak};
    use crate::root_weyl::weyl_group;

    #[test]
    fn jh_type_table() {
        let expect = [
            ("A_1", JhType::TwoOnly),
            ("B_2", JhType::TwoOnly),
            ("C_2", JhType::TwoOnly),
            ("A_2", JhType::ThreeSolvable),
            ("A_3", JhType::ThreeSolvable),
            ("B_3", JhType::ThreeSolvable),
            ("B_4", JhType::ThreeSolvable),
            ("D_4", JhType::ThreeSolvable),
            ("F_4", JhType::ThreeSolvable),
            ("G_2", JhType::ThreeSolvable),
            ("A_4", JhType::Alternating(5)),
            ("B_5", JhType::Alternating(5)),
            ("D_5", JhType::Alternating(5)),
            ("D_6", JhType::Alternating(6)),
            ("A_9", JhType::Alternating(10)),
            ("E_6", JhType::Exceptional),
            ("E_7", JhType::Exceptional),
            ("E_8", JhType::Exceptional),
        ];
        for (name, tag) in expect {
            assert_eq!(jh_type(name.parse().unwrap()), tag, "{name}");
        }
    }

    #[test]
    fn computed_factors_give_the_same_tag() {
        for name in ["A_1", "A_2", "A_4", "B_2", "B_3", "B_5", "D_4", "F_4", "G_2"] {
            let t: CartanType = name.parse().unwrap();
            let w = weyl_group(t).unwrap();
            let factors = composition_factors(&w, TieBreak::default());
            assert_eq!(jh_type_of_factors(&factors), jh_type(t), "{name}");
            assert_eq!(jh_set(&w), jh_set_of(&static_facts(t).jh), "{name} set");
        }
    }

    fn jh_set_of(factors: &[SimpleFactor]) -> Vec<SimpleFactor> {
        let mut v = factors.to_vec();
        v.sort();
        v.dedup();
        v
    }
}
