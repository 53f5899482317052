//! Closed-form bounds of the effective differential Nullstellensatz.
//!
//! Every formula is evaluated exactly through [`TowerInt`]. The universal
//! constant `c` is a plain runtime parameter (default 1); it is not a
//! certified constant, and each formula's `c` is independent in principle.

mod tower;

use num_bigint::BigUint;
use serde_json::{json, Value};

pub use tower::{TowerInt, DEFAULT_CAP_BITS};

/// Shape parameters of a system, as they enter the bounds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystemProfile {
    /// Number of state variables.
    pub n: u64,
    /// Number of control variables.
    pub m: u64,
    /// Maximal derivative order.
    pub e: u64,
    /// Maximal total degree, at least 1.
    pub d: u64,
    /// Dimension of the constraint variety, if known.
    pub r: Option<u64>,
    /// Degree of the constraint variety; `None` means the Bézout surrogate
    /// `d^(n+m)`.
    pub variety_degree: Option<BigUint>,
    /// The universal constant, at least 1.
    pub c: u64,
    pub cap_bits: u64,
}

impl SystemProfile {
    pub fn new(n: u64, m: u64, e: u64, d: u64) -> Self {
        SystemProfile { n, m, e, d: d.max(1), r: None, variety_degree: None, c: 1, cap_bits: DEFAULT_CAP_BITS }
    }

    pub fn with_dim(mut self, r: u64) -> Self {
        self.r = Some(r);
        self
    }

    pub fn with_variety_degree(mut self, big_d: impl Into<BigUint>) -> Self {
        self.variety_degree = Some(big_d.into());
        self
    }

    pub fn with_c(mut self, c: u64) -> Self {
        self.c = c.max(1);
        self
    }

    pub fn with_cap_bits(mut self, cap_bits: u64) -> Self {
        self.cap_bits = cap_bits;
        self
    }

    /// `ε = max(2, e)`.
    pub fn epsilon(&self) -> u64 {
        self.e.max(2)
    }

    /// `ν = max(1, r)`, with `r` defaulting to the trivial bound `n + m`.
    pub fn nu(&self) -> u64 {
        self.dim_bound().max(1)
    }

    fn dim_bound(&self) -> u64 {
        self.r.unwrap_or(self.n + self.m)
    }

    /// `D`, or the Bézout surrogate `d^(n+m)`.
    pub fn big_d(&self) -> TowerInt {
        match &self.variety_degree {
            Some(v) => TowerInt::exact(v.clone()),
            None => self.t(self.d).pow(&self.t(self.n + self.m), self.cap_bits),
        }
    }

    fn t(&self, v: u64) -> TowerInt {
        TowerInt::from(v)
    }

    fn pow(&self, b: &TowerInt, e: &TowerInt) -> TowerInt {
        b.pow(e, self.cap_bits)
    }

    fn mul(&self, a: &TowerInt, b: &TowerInt) -> TowerInt {
        a.mul(b, self.cap_bits)
    }

    /// `2^(c·k)`.
    fn two_pow_c(&self, k: u64) -> TowerInt {
        let k = self.mul(&self.t(self.c), &self.t(k));
        self.pow(&self.t(2), &k)
    }
}

/// `ε₀ ≤ D^(n+m)`.
pub fn bound_eps0(p: &SystemProfile) -> TowerInt {
    p.pow(&p.big_d(), &p.t(p.n + p.m))
}

/// `ε_i ≤ ((n+m)D)^(2^(c·i·r·(n+m)))` for `i ≥ 1`.
pub fn bound_eps_i(p: &SystemProfile, i: u64) -> TowerInt {
    let base = p.mul(&p.t(p.n + p.m), &p.big_d());
    let k = i.saturating_mul(p.dim_bound()).saturating_mul(p.n + p.m);
    p.pow(&base, &p.two_pow_c(k))
}

/// `L ≤ ((n+m)D)^(2^(c·ν²·(n+m)))` for semiexplicit systems.
pub fn bound_l_semiexplicit(p: &SystemProfile) -> TowerInt {
    let base = p.mul(&p.t(p.n + p.m), &p.big_d());
    let nu = p.nu();
    p.pow(&base, &p.two_pow_c(nu * nu * (p.n + p.m)))
}

/// For a zero-dimensional constraint variety `k₀ = 1`, so `L ≤ ε₀ ≤ D^(n+m)`.
pub fn bound_l_zero_dim(p: &SystemProfile) -> Option<TowerInt> {
    (p.r == Some(0)).then(|| bound_eps0(p))
}

/// `L ≤ (n(e+1)d)^(2^(c·(n(e+1))³))`, from the order-reduced system.
pub fn bound_l_syntactic(p: &SystemProfile) -> TowerInt {
    let ne = p.n * (p.e + 1);
    let base = p.t(ne * p.d);
    p.pow(&base, &p.two_pow_c(ne.pow(3)))
}

/// `M = d^(n(ε+L+1))`.
pub fn bound_m(p: &SystemProfile, l: &TowerInt) -> TowerInt {
    let inner = l.add_small(p.epsilon() + 1, p.cap_bits);
    p.pow(&p.t(p.d), &p.mul(&p.t(p.n), &inner))
}

/// `deg(p_ij · f_i^(j)) ≤ 2·d^(n(e+L+1))` for a representation of 1 with
/// prolongation order `L`.
pub fn bound_cert_degree(p: &SystemProfile, l: &TowerInt) -> TowerInt {
    let inner = l.add_small(p.e + 1, p.cap_bits);
    let d_pow = p.pow(&p.t(p.d), &p.mul(&p.t(p.n), &inner));
    p.mul(&p.t(2), &d_pow)
}

/// The order-free form `d^((nεd)^(2^(c(nε)³)))` of the certificate degree.
pub fn bound_cert_degree_syntactic(p: &SystemProfile) -> TowerInt {
    let ne = p.n * p.epsilon();
    let inner = p.pow(&p.t(ne * p.d), &p.two_pow_c(ne.pow(3)));
    p.pow(&p.t(p.d), &inner)
}

/// `k₀ ≤ (μ+1)·ε₁⋯ε_μ`.
pub fn bound_k0(eps: &[u64], mu: usize) -> TowerInt {
    let prod = eps.iter().take(mu).fold(BigUint::from(mu as u64 + 1), |acc, &e| acc * e);
    TowerInt::exact(prod)
}

/// `deg(V ∩ V(f₁..f_s)) ≤ D·d^r`.
pub fn bezout_degree(big_d: &TowerInt, d: u64, r: u64, cap_bits: u64) -> TowerInt {
    big_d.mul(&TowerInt::from(d).pow(&TowerInt::from(r), cap_bits), cap_bits)
}

/// `(√I)^(d^n) ⊆ I` for `I` generated by polynomials of degree `≤ d` in
/// `n` variables.
pub fn bound_radical_power(d: u64, n: u64, cap_bits: u64) -> TowerInt {
    TowerInt::from(d.max(1)).pow(&TowerInt::from(n), cap_bits)
}

/// Informational only: degree bound `(s·d)^(2^(c·ν·n))` for generators of
/// `√I`, with the hidden exponent exposed as `c`.
pub fn bound_radical_generators(s: u64, d: u64, nu: u64, n: u64, c: u64, cap_bits: u64) -> TowerInt {
    let e = TowerInt::from(2).pow(&TowerInt::from(c.max(1) * nu.max(1) * n), cap_bits);
    TowerInt::from(s.max(1) * d.max(1)).pow(&e, cap_bits)
}

impl TowerInt {
    /// `{"value": <rendering>, "exact": bool, "approx_log2_log2": <float>}`;
    /// the estimate is omitted for exact values.
    pub fn to_json(&self) -> Value {
        let mut v = json!({ "value": self.to_string(), "exact": self.is_exact() });
        if !self.is_exact() {
            v["approx_log2_log2"] = json!(self.log2_log2());
        }
        v
    }
}

/// Every bound for a profile, as JSON. `l_for_m` feeds `M` and the
/// certificate degree (defaults to the semiexplicit or syntactic `L`).
pub fn report(p: &SystemProfile, l_for_m: Option<u64>) -> Value {
    let l_sem = bound_l_semiexplicit(p);
    let l_syn = bound_l_syntactic(p);
    let l_used = match l_for_m {
        Some(l) => TowerInt::from(l),
        None => bound_l_zero_dim(p).unwrap_or_else(|| l_syn.clone()),
    };
    let eps_i: Vec<Value> = (1..=3).map(|i| json!({ "i": i.to_string(), "bound": bound_eps_i(p, i).to_json() })).collect();
    let mut out = json!({
        "profile": {
            "n": p.n.to_string(),
            "m": p.m.to_string(),
            "e": p.e.to_string(),
            "d": p.d.to_string(),
            "epsilon": p.epsilon().to_string(),
            "r": p.r.map(|r| r.to_string()),
            "nu": p.nu().to_string(),
            "D": p.big_d().to_json(),
            "D_source": if p.variety_degree.is_some() { "given" } else { "bezout d^(n+m)" },
            "c": p.c.to_string(),
            "c_note": "not a certified constant",
            "tower_cap_bits": p.cap_bits.to_string(),
        },
        "eps0": bound_eps0(p).to_json(),
        "eps_i": eps_i,
        "L_semiexplicit": l_sem.to_json(),
        "L_syntactic": l_syn.to_json(),
        "L_used_for_M": l_used.to_json(),
        "M": bound_m(p, &l_used).to_json(),
        "cert_degree": bound_cert_degree(p, &l_used).to_json(),
        "cert_degree_syntactic": bound_cert_degree_syntactic(p).to_json(),
        "bezout_degree": bezout_degree(&p.big_d(), p.d, p.dim_bound(), p.cap_bits).to_json(),
        "radical_power": bound_radical_power(p.d, p.n + p.m, p.cap_bits).to_json(),
    });
    if let Some(l0) = bound_l_zero_dim(p) {
        out["L_zero_dim"] = l0.to_json();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prof(n: u64, m: u64, d: u64) -> SystemProfile {
        SystemProfile::new(n, m, 1, d)
    }

    #[test]
    fn eps0_examples() {
        assert_eq!(bound_eps0(&prof(1, 1, 1).with_variety_degree(2u32)).to_u64(), Some(4));
        assert_eq!(bound_eps0(&prof(3, 2, 1).with_variety_degree(1u32)).to_u64(), Some(1));
        assert_eq!(bound_eps0(&prof(2, 1, 1).with_variety_degree(3u32)).to_u64(), Some(27));
    }

    #[test]
    fn semiexplicit_examples() {
        // ν = 1, so the exponent is 2^(1·1·2) = 4
        let p = prof(1, 1, 1).with_variety_degree(2u32).with_dim(0);
        assert_eq!(bound_l_semiexplicit(&p).to_u64(), Some(256));
        assert_eq!(bound_l_zero_dim(&p).unwrap().to_u64(), Some(4));
        let p = prof(1, 1, 1).with_variety_degree(2u32).with_dim(1);
        assert_eq!(bound_eps_i(&p, 1).to_u64(), Some(256));
    }

    #[test]
    fn syntactic_and_m() {
        let p = SystemProfile::new(1, 0, 1, 2);
        assert_eq!(bound_l_syntactic(&p).value().unwrap(), &(BigUint::from(1u32) << 512u32));
        let p = SystemProfile::new(1, 0, 2, 2);
        assert_eq!(bound_m(&p, &TowerInt::from(4)).to_u64(), Some(128));
        let p = SystemProfile::new(3, 0, 2, 1);
        assert_eq!(bound_m(&p, &TowerInt::from(4)).to_u64(), Some(1));
    }

    #[test]
    fn small_formulas() {
        assert_eq!(bound_k0(&[3, 2], 2).to_u64(), Some(18));
        assert_eq!(bound_k0(&[], 0).to_u64(), Some(1));
        assert_eq!(bezout_degree(&TowerInt::from(4), 3, 2, DEFAULT_CAP_BITS).to_u64(), Some(36));
        let p = SystemProfile::new(1, 0, 1, 2);
        assert_eq!(bound_cert_degree(&p, &TowerInt::from(1)).to_u64(), Some(16));
    }

    #[test]
    fn huge_bounds_stay_symbolic() {
        let p = SystemProfile::new(3, 0, 2, 3);
        let l = bound_l_syntactic(&p);
        assert!(!l.is_exact());
        let m = bound_m(&p, &l);
        assert!(m > l);
        assert!(report(&p, None)["M"]["exact"] == json!(false));
    }
}
