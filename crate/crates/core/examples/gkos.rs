//! The GKOS family `ẋ₁ = 1, u_m = x₁², u_{m−1} = u_m², …, u₁² = 0`, whose
//! minimal prolongation order is `2^(m+1)`.
//!
//! ```text
//! cargo run --release --example gkos -- 2
//! ```

use std::time::Instant;

use dnss::decide::{decide, verify_certificate, Verdict};
use dnss::ring::DiffPoly;
use dnss::text::parse_poly;

fn gkos(m: u32) -> Vec<DiffPoly> {
    let mut eqs = vec!["x1' - 1".to_string(), format!("u{m} - x1^2")];
    for k in (1..m).rev() {
        eqs.push(format!("u{k} - u{}^2", k + 1));
    }
    eqs.push("u1^2".to_string());
    eqs.iter().map(|s| parse_poly(s).expect("valid")).collect()
}

fn main() {
    let m: u32 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1);
    let sys = gkos(m);
    for f in &sys {
        println!("  {f} = 0");
    }
    let start = Instant::now();
    let verdict = decide(&sys, 2u32.pow(m + 1) + 2);
    println!("{verdict}  [{:.2?}]", start.elapsed());
    if let Verdict::Inconsistent { certificate, .. } = verdict {
        let ok = verify_certificate(&certificate, &sys).expect("well formed");
        println!(
            "certificate: {} terms, max term degree {}, verifies: {ok}",
            certificate.entries.len(),
            certificate.max_term_degree(&sys)
        );
    }
}
