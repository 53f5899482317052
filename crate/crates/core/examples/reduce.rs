//! Rewriting a higher-order system in semiexplicit first-order form.
//!
//! ```text
//! cargo run --example reduce
//! ```

use dnss::decide::decide;
use dnss::reduce::{to_first_order, GeneralSystem};
use dnss::text::parse;

const SYSTEM: &str = "\
states x1
diff: x1'' - x1
diff: x1 - 1
";

fn main() {
    let doc = parse(SYSTEM).expect("valid input");
    let general = GeneralSystem::from_document(&doc);
    let (semi, back) = to_first_order(&general).expect("reducible");
    println!("order {} system in {} states", general.order(), semi.states.len());
    for (x, j, z) in &back.entries {
        println!("  {z} = {}", x.jet(*j));
    }
    println!("original: {}", decide(&doc.generators(), 6));
    println!("reduced:  {}", decide(&semi.generators(), 6));
}
