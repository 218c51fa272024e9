//! Scratch probe: per-direction timing for every default-survey cell.

use std::time::Instant;

use weylcheck::quotient_obstruction::{decide_pair, default_types, DecideOptions};
use weylcheck::weyl_structure::is_isotrivial_pair;

fn main() {
    let opts = DecideOptions::default();
    let types = default_types();
    let total = Instant::now();
    for i in 0..types.len() {
        for j in i + 1..types.len() {
            let (a, b) = (types[i], types[j]);
            if a.isogenous(b) || is_isotrivial_pair(a, b) {
                println!("{{{a}, {b}}}: skipped");
                continue;
            }
            for (x, y) in [(a, b), (b, a)] {
                let t = Instant::now();
                let r = decide_pair(x, y, &opts).unwrap();
                println!("({x} <= {y}): {} [{:?}]", r.summary_line(), t.elapsed());
            }
        }
    }
    println!("total: {:?}", total.elapsed());
}
