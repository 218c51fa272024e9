//! The pairwise obstruction matrix: for every unordered pair of types in
//! the input list, decide whether one of the two Weyl groups fails to be a
//! quotient of every admissible compositum built from the other. Pairs
//! with isomorphic groups (B/C partners, A_3/D_3, and the classified
//! isomorphic pairs) are skipped; every other cell is settled by the
//! cheapest sufficient stage: invariant rules in either direction first,
//! the exhaustive search only where no rule applies.

use std::time::Instant;

use serde_json::{json, Value};

use crate::root_weyl::{CartanType, Series};
use crate::weyl_structure::{is_isotrivial_pair, VerifyError};

use super::decide::{decide_pair, decide_staged, DecideOptions};
use super::{ObstructionReport, Rule};

/// The simple types whose Weyl groups the survey covers by default.
pub fn default_types() -> Vec<CartanType> {
    [
        (Series::A, 1),
        (Series::A, 2),
        (Series::A, 3),
        (Series::B, 2),
        (Series::B, 3),
        (Series::B, 4),
        (Series::D, 4),
        (Series::F, 4),
        (Series::G, 2),
    ]
    .into_iter()
    .map(|(s, r)| CartanType::new(s, r).expect("fixed list is valid"))
    .collect()
}

#[derive(Debug)]
pub enum CellOutcome {
    /// The two types name the same Weyl group outright.
    SkippedAlias,
    /// The groups are abstractly isomorphic by the classification.
    SkippedIsoTrivial,
    /// At least one direction is obstructed.
    Obstructed {
        winner: (CartanType, CartanType),
        rule: Rule,
        reports: Vec<ObstructionReport>,
    },
    /// Neither direction produced an obstruction.
    NotObstructed { reports: Vec<ObstructionReport> },
}

#[derive(Debug)]
pub struct MatrixCell {
    pub pair: (CartanType, CartanType),
    pub outcome: CellOutcome,
}

#[derive(Debug)]
pub struct MatrixReport {
    pub types: Vec<CartanType>,
    pub cells: Vec<MatrixCell>,
    pub elapsed_ms: u64,
}

fn same_group(a: CartanType, b: CartanType) -> bool {
    let a3d3 = |x: CartanType, y: CartanType| {
        x.series == Series::A && x.rank == 3 && y.series == Series::D && y.rank == 3
    };
    a.isogenous(b) || a3d3(a, b) || a3d3(b, a)
}

pub fn nonquotient_matrix(
    types: &[CartanType],
    opts: &DecideOptions,
) -> Result<MatrixReport, VerifyError> {
    let start = Instant::now();
    let mut cells = Vec::new();
    for i in 0..types.len() {
        for j in i + 1..types.len() {
            let (ti, tj) = (types[i], types[j]);
            let outcome = evaluate_cell(ti, tj, opts)?;
            cells.push(MatrixCell { pair: (ti, tj), outcome });
        }
    }
    Ok(MatrixReport {
        types: types.to_vec(),
        cells,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

fn evaluate_cell(
    ti: CartanType,
    tj: CartanType,
    opts: &DecideOptions,
) -> Result<CellOutcome, VerifyError> {
    if same_group(ti, tj) {
        return Ok(CellOutcome::SkippedAlias);
    }
    if is_isotrivial_pair(ti, tj) {
        return Ok(CellOutcome::SkippedIsoTrivial);
    }
    let mut reports: Vec<ObstructionReport> = Vec::new();
    // Invariant rules in both directions before any search starts: a cell
    // like {A_3, D_4} is settled by derived length alone, and running the
    // search first would instead surface an uninformative surjection.
    for (a, b) in [(ti, tj), (tj, ti)] {
        if let Some(rep) = decide_staged(a, b, opts, true)? {
            let rule = rep.rule();
            let obstructed = rep.is_obstructed();
            reports.push(rep);
            if obstructed {
                let rule = rule.expect("obstructed report names its rule");
                return Ok(CellOutcome::Obstructed { winner: (a, b), rule, reports });
            }
        }
    }
    // Search stage, cheaper side first: the brute expands W(b)'s normal
    // lattice into Goursat classes, so the direction with the smaller b
    // settles an all-search cell at a fraction of the cost.
    let mut directions = [(ti, tj), (tj, ti)];
    directions.sort_by_key(|&(_, b)| b.order());
    for (a, b) in directions {
        let rep = decide_pair(a, b, opts)?;
        let rule = rep.rule();
        let obstructed = rep.is_obstructed();
        reports.push(rep);
        if obstructed {
            let rule = rule.expect("obstructed report names its rule");
            return Ok(CellOutcome::Obstructed { winner: (a, b), rule, reports });
        }
    }
    Ok(CellOutcome::NotObstructed { reports })
}

impl CellOutcome {
    fn glyph(&self) -> char {
        match self {
            CellOutcome::SkippedAlias => '=',
            CellOutcome::SkippedIsoTrivial => '~',
            CellOutcome::Obstructed { rule, .. } => match rule {
                Rule::Jh => 'J',
                Rule::Exponent => 'E',
                Rule::DerivedLength => 'D',
                Rule::AbelianKernel => 'A',
                Rule::BruteForce => 'B',
            },
            CellOutcome::NotObstructed { .. } => '!',
        }
    }

    fn status(&self) -> &'static str {
        match self {
            CellOutcome::SkippedAlias => "skipped-alias",
            CellOutcome::SkippedIsoTrivial => "skipped-isomorphic",
            CellOutcome::Obstructed { .. } => "obstructed",
            CellOutcome::NotObstructed { .. } => "not-obstructed",
        }
    }
}

impl MatrixReport {
    pub fn cell(&self, a: CartanType, b: CartanType) -> Option<&MatrixCell> {
        self.cells
            .iter()
            .find(|c| c.pair == (a, b) || c.pair == (b, a))
    }

    /// True when every pair of distinct, non-isomorphic groups is
    /// obstructed in at least one direction.
    pub fn all_non_skipped_obstructed(&self) -> bool {
        self.cells.iter().all(|c| {
            !matches!(c.outcome, CellOutcome::NotObstructed { .. })
        })
    }

    pub fn render_text(&self) -> String {
        let names: Vec<String> = self.types.iter().map(|t| t.to_string()).collect();
        let w = names.iter().map(|n| n.len()).max().unwrap_or(3).max(3) + 1;
        let mut out = String::new();
        out.push_str(&" ".repeat(w));
        for n in &names {
            out.push_str(&format!("{n:>w$}"));
        }
        out.push('\n');
        for (i, n) in names.iter().enumerate() {
            out.push_str(&format!("{n:>w$}"));
            for j in 0..names.len() {
                let ch = if i == j {
                    '·'
                } else {
                    let (a, b) = (self.types[i.min(j)], self.types[i.max(j)]);
                    self.cell(a, b).map_or('?', |c| c.outcome.glyph())
                };
                out.push_str(&format!("{ch:>w$}"));
            }
            out.push('\n');
        }
        out.push('\n');
        out.push_str(
            "J composition factors   E exponent   D derived length\n\
             A abelian kernel        B exhaustive search\n\
             = same group            ~ isomorphic groups   ! no obstruction\n",
        );
        let verdict = if self.all_non_skipped_obstructed() {
            "every non-isomorphic pair is obstructed in at least one direction"
        } else {
            "some non-isomorphic pair admits quotients in both directions"
        };
        out.push_str(&format!("\n{verdict}\n"));
        out
    }

    pub fn to_json(&self) -> Value {
        let cells: Vec<Value> = self
            .cells
            .iter()
            .map(|c| {
                let (winner, rule): (Value, Value) = match &c.outcome {
                    CellOutcome::Obstructed { winner, rule, .. } => (
                        json!([winner.0.to_string(), winner.1.to_string()]),
                        json!(rule),
                    ),
                    _ => (Value::Null, Value::Null),
                };
                let reports: Vec<Value> = match &c.outcome {
                    CellOutcome::Obstructed { reports, .. }
                    | CellOutcome::NotObstructed { reports } => {
                        reports.iter().map(|r| r.to_json()).collect()
                    }
                    _ => Vec::new(),
                };
                json!({
                    "pair": [c.pair.0.to_string(), c.pair.1.to_string()],
                    "status": c.outcome.status(),
                    "winner": winner,
                    "rule": rule,
                    "reports": reports,
                })
            })
            .collect();
        json!({
            "types": self.types.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
            "cells": cells,
            "all_non_skipped_obstructed": self.all_non_skipped_obstructed(),
            "elapsed_ms": self.elapsed_ms,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ct(s: Series, r: usize) -> CartanType {
        CartanType::new(s, r).unwrap()
    }

    #[test]
    fn small_survey_settles_by_rules_alone() {
        let types = [ct(Series::A, 1), ct(Series::A, 2), ct(Series::B, 2)];
        let m = nonquotient_matrix(&types, &DecideOptions::default()).unwrap();
        assert_eq!(m.cells.len(), 3);
        assert!(m.all_non_skipped_obstructed());

        let c = m.cell(ct(Series::A, 1), ct(Series::A, 2)).unwrap();
        match &c.outcome {
            CellOutcome::Obstructed { winner, rule, .. } => {
                // Z/2 is a quotient of S_3; the obstruction is the reverse arrow
                assert_eq!(*winner, (ct(Series::A, 2), ct(Series::A, 1)));
                assert_eq!(*rule, Rule::Jh);
            }
            other => panic!("unexpected outcome {other:?}"),
        }
        let c = m.cell(ct(Series::A, 1), ct(Series::B, 2)).unwrap();
        match &c.outcome {
            CellOutcome::Obstructed { winner, rule, .. } => {
                assert_eq!(*winner, (ct(Series::B, 2), ct(Series::A, 1)));
                assert_eq!(*rule, Rule::Exponent);
            }
            other => panic!("unexpected outcome {other:?}"),
        }
    }

    #[test]
    fn aliases_and_isomorphic_pairs_are_skipped() {
        let types = [ct(Series::B, 2), ct(Series::C, 2), ct(Series::A, 2), ct(Series::G, 2)];
        let m = nonquotient_matrix(&types, &DecideOptions::default()).unwrap();
        assert!(matches!(
            m.cell(ct(Series::B, 2), ct(Series::C, 2)).unwrap().outcome,
            CellOutcome::SkippedAlias
        ));
        assert!(matches!(
            m.cell(ct(Series::A, 2), ct(Series::G, 2)).unwrap().outcome,
            CellOutcome::SkippedIsoTrivial
        ));
        let text = m.render_text();
        assert!(text.contains('='), "{text}");
        assert!(text.contains('~'), "{text}");
    }

    #[test]
    fn rank_three_symmetric_and_hyperoctahedral_admit_quotients_both_ways() {
        // W(B_3) = S_4 x Z/2 splits off its rotation copy of S_4, and
        // V_4 x S_4 built from normal subgroups of W(A_3) covers W(B_3);
        // neither direction is obstructed.
        let types = [ct(Series::A, 3), ct(Series::B, 3)];
        let m = nonquotient_matrix(&types, &DecideOptions::default()).unwrap();
        let c = m.cell(ct(Series::A, 3), ct(Series::B, 3)).unwrap();
        match &c.outcome {
            CellOutcome::NotObstructed { reports } => assert_eq!(reports.len(), 2),
            other => panic!("unexpected outcome {other:?}"),
        }
        assert!(!m.all_non_skipped_obstructed());
        assert!(m.render_text().contains('!'));
    }
}
