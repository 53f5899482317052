//! Consistency verdicts, the strong Nullstellensatz search and certificate
//! checking.

use std::fmt;

use serde_json::{json, Value};

use crate::bounds::{bound_l_syntactic, SystemProfile, TowerInt, DEFAULT_CAP_BITS};
use crate::diffcore::{max_order, nth_derivative, prolong, ProlongedFamily};
use crate::error::{Error, Result};
use crate::groebner::{buchberger_in, contains_one, macaulay_membership, min_power_in_basis, MembershipWitness};
use crate::ring::{DiffPoly, DiffVar, MonomialOrder};
use crate::text::parse_poly;

pub const DEFAULT_L_CAP: u32 = 16;
pub const DEFAULT_M_CAP: u32 = 64;

/// One term `p_ij · f_i^(j)` of a certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertEntry {
    pub gen: usize,
    pub j: u32,
    pub cofactor: DiffPoly,
}

/// `target = Σ cofactor · F[gen]^(j)` with every `j ≤ l`; `target` is 1, or
/// `f^m` for a strong Nullstellensatz certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub target: DiffPoly,
    pub entries: Vec<CertEntry>,
    pub l: u32,
    pub m: Option<u32>,
}

impl Certificate {
    fn from_witness(fam: &ProlongedFamily, w: MembershipWitness, m: Option<u32>) -> Self {
        let entries = fam
            .labels()
            .into_iter()
            .zip(w.cofactors)
            .filter(|(_, c)| !c.is_zero())
            .map(|((gen, j), cofactor)| CertEntry { gen, j, cofactor })
            .collect();
        Certificate { target: w.member, entries, l: fam.order(), m }
    }

    /// `max deg(p_ij · f_i^(j))`, to set against the degree bounds.
    pub fn max_term_degree(&self, sys: &[DiffPoly]) -> u32 {
        self.entries
            .iter()
            .filter_map(|e| sys.get(e.gen).map(|f| e.cofactor.degree() + f.degree()))
            .max()
            .unwrap_or(0)
    }

    /// `{"L", "M"?, "target", "entries": [{"gen", "j", "cofactor"}]}`, numbers
    /// as decimal strings and polynomials in the text grammar.
    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = self
            .entries
            .iter()
            .map(|e| json!({ "gen": e.gen.to_string(), "j": e.j.to_string(), "cofactor": e.cofactor.to_string() }))
            .collect();
        let mut v = json!({ "L": self.l.to_string(), "target": self.target.to_string(), "entries": entries });
        if let Some(m) = self.m {
            v["M"] = json!(m.to_string());
        }
        v
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |what: &str| Error::InvalidCertificate(format!("malformed field `{what}`"));
        fn num(v: Option<&Value>) -> Option<u64> {
            match v? {
                Value::String(s) => s.parse().ok(),
                Value::Number(n) => n.as_u64(),
                _ => None,
            }
        }
        let l = num(v.get("L")).and_then(|l| u32::try_from(l).ok()).ok_or_else(|| bad("L"))?;
        let m = match v.get("M") {
            None | Some(Value::Null) => None,
            some => Some(num(some).and_then(|m| u32::try_from(m).ok()).ok_or_else(|| bad("M"))?),
        };
        let target = parse_poly(v.get("target").and_then(Value::as_str).ok_or_else(|| bad("target"))?)?;
        let mut entries = Vec::new();
        for e in v.get("entries").and_then(Value::as_array).ok_or_else(|| bad("entries"))? {
            let gen = num(e.get("gen")).ok_or_else(|| bad("gen"))? as usize;
            let j = num(e.get("j")).and_then(|j| u32::try_from(j).ok()).ok_or_else(|| bad("j"))?;
            let cofactor = parse_poly(e.get("cofactor").and_then(Value::as_str).ok_or_else(|| bad("cofactor"))?)?;
            entries.push(CertEntry { gen, j, cofactor });
        }
        Ok(Certificate { target, entries, l, m })
    }
}

#[derive(Clone, Debug)]
pub enum Verdict {
    Inconsistent { l_min: u32, certificate: Certificate },
    ConsistentUpTo { l_cap: u32 },
    /// `l_cap` reached the order bound, which is only as trustworthy as the
    /// constant `c` it was computed with.
    CertifiedConsistent { l_cap: u32, threshold: TowerInt },
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Inconsistent { l_min, .. } => write!(f, "inconsistent (L_min = {l_min})"),
            Verdict::ConsistentUpTo { l_cap } => write!(f, "no certificate up to order {l_cap}"),
            Verdict::CertifiedConsistent { l_cap, threshold } => {
                write!(f, "consistent (order {l_cap} >= bound {threshold})")
            }
        }
    }
}

/// Settings for the bound that upgrades a negative answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DecideConfig {
    pub c: u64,
    pub cap_bits: u64,
}

impl Default for DecideConfig {
    fn default() -> Self {
        DecideConfig { c: 1, cap_bits: DEFAULT_CAP_BITS }
    }
}

/// `(n, m=0, e, d)` of a general system: every differential variable
/// counts as an unknown.
pub fn profile_of(sys: &[DiffPoly], config: &DecideConfig) -> SystemProfile {
    let vars: std::collections::BTreeSet<DiffVar> = sys.iter().flat_map(|p| p.variables()).map(|v| v.var()).collect();
    let d = sys.iter().map(DiffPoly::degree).max().unwrap_or(1);
    SystemProfile::new(vars.len() as u64, 0, max_order(sys) as u64, d as u64)
        .with_c(config.c)
        .with_cap_bits(config.cap_bits)
}

pub fn decide(sys: &[DiffPoly], l_cap: u32) -> Verdict {
    decide_with(sys, l_cap, &DecideConfig::default())
}

/// Tests `1 ∈ (F^[k])` for `k = 0, 1, …, l_cap` and stops at the first hit.
pub fn decide_with(sys: &[DiffPoly], l_cap: u32, config: &DecideConfig) -> Verdict {
    let mut fam = prolong(sys, 0);
    for k in 0..=l_cap {
        if k > 0 {
            fam.extend();
        }
        if let Some(w) = contains_one(&fam.polys()) {
            return Verdict::Inconsistent { l_min: k, certificate: Certificate::from_witness(&fam, w, None) };
        }
    }
    let threshold = bound_l_syntactic(&profile_of(sys, config));
    if TowerInt::from(u64::from(l_cap)) >= threshold {
        Verdict::CertifiedConsistent { l_cap, threshold }
    } else {
        Verdict::ConsistentUpTo { l_cap }
    }
}

/// Smallest `L ≤ l_cap` for which some `M ≤ m_cap` has `f^M ∈ (F^[L])`,
/// with the least such `M` and a certificate.
pub fn strong_nss(sys: &[DiffPoly], f: &DiffPoly, l_cap: u32, m_cap: u32) -> Result<Option<(u32, u32, Certificate)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial("strong Nullstellensatz search"));
    }
    let order = MonomialOrder::degrevlex();
    let mut fam = prolong(sys, 0);
    for l in 0..=l_cap {
        if l > 0 {
            fam.extend();
        }
        let untracked = buchberger_in(&fam.polys(), &f.variables(), &order, false);
        let Some(m) = min_power_in_basis(f, &untracked, m_cap) else { continue };
        let gb = buchberger_in(&fam.polys(), &f.variables(), &order, true);
        let w = gb.witness(&f.pow(m)).expect("power reduces to zero");
        return Ok(Some((l, m, Certificate::from_witness(&fam, w, Some(m)))));
    }
    Ok(None)
}

/// Re-derives every `F[gen]^(j)` and compares `Σ p_ij·F[gen]^(j)` with the
/// target exactly. Out-of-range indices, `j > L`, or a target other than 1
/// without `M` are errors rather than `false`.
pub fn verify_certificate(cert: &Certificate, sys: &[DiffPoly]) -> Result<bool> {
    if cert.m.is_none() && !cert.target.is_one() {
        return Err(Error::InvalidCertificate("a certificate without M must target 1".into()));
    }
    let mut sum = DiffPoly::zero();
    for e in &cert.entries {
        let f = sys
            .get(e.gen)
            .ok_or_else(|| Error::InvalidCertificate(format!("generator index {} out of range", e.gen)))?;
        if e.j > cert.l {
            return Err(Error::InvalidCertificate(format!("derivative order {} exceeds L = {}", e.j, cert.l)));
        }
        sum += &(&e.cofactor * &nth_derivative(f, e.j));
    }
    Ok(sum == cert.target)
}

/// `L_min` by the Macaulay oracle alone: at order `k` the cofactor degree
/// cap is `max deg F + k + slack`.
pub fn macaulay_l_min(sys: &[DiffPoly], l_cap: u32, slack: u32) -> Option<u32> {
    let d = sys.iter().map(DiffPoly::degree).max().unwrap_or(0);
    let mut fam = prolong(sys, 0);
    for k in 0..=l_cap {
        if k > 0 {
            fam.extend();
        }
        if macaulay_membership(&DiffPoly::one(), &fam.polys(), d + k + slack).is_some() {
            return Some(k);
        }
    }
    None
}
