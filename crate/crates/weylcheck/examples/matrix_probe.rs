//! Scratch: staged matrix timing.
use std::time::Instant;
use weylcheck::quotient_obstruction::{default_types, nonquotient_matrix, DecideOptions};

fn main() {
    let t = Instant::now();
    let m = nonquotient_matrix(&default_types(), &DecideOptions::default()).unwrap();
    println!("total: {:?}", t.elapsed());
    println!("{}", m.render_text());
}
