//! Can one Weyl group be a quotient of a compositum built from another?
//!
//! The decision problem: given types t1 and t2, can W(t1) arise as a
//! quotient of a subdirect product of at most `max_r` normal subgroups of
//! W(t2)? Four invariant rules answer most pairs from closed-form data
//! alone — composition factors, exponent divisibility, derived length, and
//! the abelian-kernel shape — and an exhaustive Goursat enumeration of
//! subdirect products settles the rest. Every positive answer carries a
//! surjection certificate that re-verifies independently of the search;
//! every negative answer records the search transcript that exhausted the
//! space.

mod decide;
mod goursat;
mod jh;
mod matrix;

pub use decide::{decide_pair, DecideOptions};
pub use goursat::{goursat_subdirect, Compositum};
pub use jh::verify_jh_compositum;
pub use matrix::{default_types, nonquotient_matrix, CellOutcome, MatrixCell, MatrixReport};

use std::fmt;

use serde::Serialize;
use serde_json::{json, Value};

use crate::finite_group::Homomorphism;
use crate::root_weyl::CartanType;

/// Which stage of the obstruction ladder settled a pair.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    /// A composition factor of W(t1) is missing from W(t2).
    Jh,
    /// The exponent of W(t1) does not divide the exponent of W(t2).
    Exponent,
    /// The derived series of W(t2) terminates before W(t1)'s does.
    DerivedLength,
    /// W(t2)'s normal subgroups all contain its unique simple factor with
    /// abelian cofactor, and W(t1) has no compatible normal shape.
    AbelianKernel,
    /// No invariant rule applies; the subdirect-product search exhausted
    /// every compositum within the bounds without finding a surjection.
    BruteForce,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::Jh => "JH",
            Rule::Exponent => "Exponent",
            Rule::DerivedLength => "DerivedLength",
            Rule::AbelianKernel => "AbelianKernel",
            Rule::BruteForce => "BruteForce",
        })
    }
}

/// The resource limits a decision ran under; part of every report so a
/// negative answer states what it was exhaustive relative to.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Budgets {
    pub search_budget: u64,
    pub product_bound: u64,
    pub normal_bound: usize,
}

/// Result of one directed decision.
#[derive(Debug)]
pub enum Outcome {
    /// W(t1) is provably not a quotient of any compositum in range.
    Obstructed { rule: Rule, witness: Value },
    /// A concrete compositum and surjection were found and re-verified.
    QuotientExists { compositum: Compositum, hom: Homomorphism },
    /// Neither a proof nor a counterexample within the budgets.
    Undecided { reason: String },
}

#[derive(Debug)]
pub struct ObstructionReport {
    pub pair: (CartanType, CartanType),
    pub outcome: Outcome,
    pub max_r: u32,
    pub budgets: Budgets,
    pub elapsed_ms: u64,
}

impl ObstructionReport {
    pub fn rule(&self) -> Option<Rule> {
        match &self.outcome {
            Outcome::Obstructed { rule, .. } => Some(*rule),
            _ => None,
        }
    }

    pub fn is_obstructed(&self) -> bool {
        matches!(self.outcome, Outcome::Obstructed { .. })
    }

    pub fn to_json(&self) -> Value {
        let (outcome, rule, witness) = match &self.outcome {
            Outcome::Obstructed { rule, witness } => {
                ("obstructed", json!(rule), witness.clone())
            }
            Outcome::QuotientExists { compositum, hom } => {
                let images: Vec<Value> = hom
                    .pairs
                    .iter()
                    .map(|(g, h)| json!([format!("{g:?}"), format!("{h:?}")]))
                    .collect();
                (
                    "quotient-exists",
                    Value::Null,
                    json!({
                        "factors": compositum.factor_labels,
                        "factor_orders": compositum.factors.iter().map(|f| f.order()).collect::<Vec<_>>(),
                        "carrier_order": compositum.carrier.order(),
                        "generator_images": images,
                    }),
                )
            }
            Outcome::Undecided { reason } => {
                ("undecided", Value::Null, json!({ "reason": reason }))
            }
        };
        json!({
            "pair": [self.pair.0.to_string(), self.pair.1.to_string()],
            "outcome": outcome,
            "rule": rule,
            "witness": witness,
            "max_r": self.max_r,
            "budgets": self.budgets,
            "elapsed_ms": self.elapsed_ms,
        })
    }

    /// One-line rendering for terminal output.
    pub fn summary_line(&self) -> String {
        let (t1, t2) = self.pair;
        match &self.outcome {
            Outcome::Obstructed { rule, .. } => {
                format!("W({t1}) <= compositum of W({t2})-normals: Obstructed({rule})")
            }
            Outcome::QuotientExists { compositum, .. } => format!(
                "W({t1}) <= compositum of W({t2})-normals: QuotientExists via [{}]",
                compositum.factor_labels.join(" x ")
            ),
            Outcome::Undecided { reason } => {
                format!("W({t1}) <= compositum of W({t2})-normals: Undecided ({reason})")
            }
        }
    }
}
