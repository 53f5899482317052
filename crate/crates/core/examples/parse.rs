//! Reading input documents and reporting parse errors with positions.
//!
//! ```text
//! cargo run --example parse -- path/to/system.dnss
//! ```

use dnss::text::parse;

const SAMPLE: &str = "\
# a pendulum-like toy
states x1, x2; controls u1
ode: x1' = x2
ode: x2' = -x1 + u1
eq: x1^2 + x2^2 - 1
claim: u1*x2
";

fn main() {
    let text = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(path).expect("readable file"),
        None => SAMPLE.to_string(),
    };
    match parse(&text) {
        Ok(doc) => {
            println!("{doc}");
            for g in doc.generators() {
                println!("  generator: {g}");
            }
        }
        Err(e) => println!("{:?} error at {}:{}: {}", e.kind, e.line, e.col, e.message),
    }
    let bad = "states x1\neq: 2x1\n";
    if let Err(e) = parse(bad) {
        println!("{bad:?} -> {e}");
    }
}
