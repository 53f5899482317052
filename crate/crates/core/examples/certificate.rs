//! Strong Nullstellensatz certificates: `f^M` in the order-`L` prolongation.
//!
//! ```text
//! cargo run --example certificate
//! ```

use dnss::decide::{decide, strong_nss, verify_certificate, Certificate};
use dnss::reduce::rabinowitsch;
use dnss::text::parse_poly;

fn main() {
    let sys = vec![parse_poly("x1' - 1").unwrap(), parse_poly("x1^2 - x1").unwrap()];
    let f = parse_poly("2*x1 - 1").unwrap();
    let (l, m, cert) = strong_nss(&sys, &f, 4, 8).expect("well formed").expect("f vanishes on all solutions");
    println!("({f})^{m} at order {l}");
    let json = cert.to_json();
    println!("{}", serde_json::to_string_pretty(&json).unwrap());

    let back = Certificate::from_json(&json).expect("round trip");
    println!("verifies: {}", verify_certificate(&back, &sys).unwrap());

    let (rab, y) = rabinowitsch(&sys, &f).unwrap();
    println!("with 1 - {y}*f adjoined: {}", decide(&rab, 4));
}
