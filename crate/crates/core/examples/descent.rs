//! The ideal chain of a semiexplicit system, with `ε_i`, `k_i` and the
//! reconstructed order `L = k₀·ε₀`.
//!
//! ```text
//! cargo run --example descent
//! ```

use dnss::descent::{build_chain, populate, reconstruct_l, DEFAULT_CAP};
use dnss::reduce::SemiexplicitSystem;
use dnss::text::parse;

const SYSTEM: &str = "\
states x1, x2, x3
ode: x1' = x2
ode: x2' = x3
ode: x3' = 1
eq: x1
";

fn main() {
    let sys = SemiexplicitSystem::from_document(&parse(SYSTEM).expect("valid input")).expect("semiexplicit");
    let mut chain = build_chain(&sys, 8).expect("dimension drops");
    populate(&mut chain, DEFAULT_CAP, DEFAULT_CAP);
    for (i, s) in chain.stages.iter().enumerate() {
        let gens: Vec<String> = s.generators.iter().map(ToString::to_string).collect();
        println!("I{i}: dim {}, eps {:?}, k {:?}, ({})", s.dim, s.eps, s.k, gens.join(", "));
    }
    let report = reconstruct_l(&chain).expect("populated");
    for c in &report.checks {
        println!("k{} = {} <= 1 + {}*{}: {}", c.i - 1, c.k_prev, c.eps_i, c.k_i, c.holds);
    }
    println!("L = {}, 1 in the ideal at L: {}", report.l, report.unit_at_l);
}
