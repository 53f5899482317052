//! Prolongation-order bounds for a system profile.
//!
//! ```text
//! cargo run --example bounds -- 1 1 2
//! ```
//! Arguments are `n m d`: states, controls and maximal degree.

use dnss::bounds::{
    bezout_degree, bound_cert_degree, bound_eps0, bound_l_semiexplicit, bound_l_syntactic, bound_m, SystemProfile,
    DEFAULT_CAP_BITS,
};

fn main() {
    let args: Vec<u64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let (n, m, d) = match args[..] {
        [n, m, d, ..] => (n, m, d),
        _ => (1, 1, 2),
    };
    for r in 0..=(n + m).min(3) {
        let big_d = bezout_degree(&d.into(), d, n + m - r, DEFAULT_CAP_BITS);
        let p = SystemProfile::new(n, m, 1, d).with_dim(r).with_variety_degree(big_d.value().cloned().unwrap_or_default());
        let l = bound_l_semiexplicit(&p);
        println!("dim {r}: D = {big_d}, eps0 <= {}, L <= {l}", bound_eps0(&p));
        println!("        M <= {}, certificate degree <= {}", bound_m(&p, &l), bound_cert_degree(&p, &l));
    }
    let general = SystemProfile::new(n + m, 0, 1, d);
    println!("syntactic: L <= {}", bound_l_syntactic(&general));
}
