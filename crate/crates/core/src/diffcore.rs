//! The differential structure on jet polynomials.
//!
//! The ambient ring is never fixed: jets `v^(j+1)` come into existence the
//! first time a derivative needs them.

use std::collections::BTreeMap;

use crate::ring::{DiffPoly, DiffVar, JetVar, Monomial};

/// Total derivative `δ`, the derivation sending `v^(j)` to `v^(j+1)`.
///
/// Computed term by term with Leibniz: for `c·∏ v_i^{e_i}` the result is
/// `Σ_i c·e_i·v_i^{e_i−1}·v_i' · ∏_{k≠i} v_k^{e_k}`.
pub fn total_derivative(p: &DiffPoly) -> DiffPoly {
    let mut out = DiffPoly::zero();
    for (m, c) in p.terms() {
        for &(v, e) in m.factors() {
            let (_, rest) = m.without_one(v).expect("factor present");
            let coeff = c * crate::ring::rat(e as i64);
            out.add_term(rest.mul(&Monomial::var(v.derivative())), coeff);
        }
    }
    out
}

/// `p^(k)`.
pub fn nth_derivative(p: &DiffPoly, k: u32) -> DiffPoly {
    let mut q = p.clone();
    for _ in 0..k {
        q = total_derivative(&q);
    }
    q
}

/// `h^{[k]}`: each generator together with its first `k` total derivatives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProlongedFamily {
    /// `derivatives[i][j]` is `h_i^(j)`, `0 <= j <= k`.
    derivatives: Vec<Vec<DiffPoly>>,
    k: u32,
}

impl ProlongedFamily {
    pub fn order(&self) -> u32 {
        self.k
    }

    pub fn generator_count(&self) -> usize {
        self.derivatives.len()
    }

    pub fn get(&self, generator: usize, j: u32) -> Option<&DiffPoly> {
        self.derivatives.get(generator)?.get(j as usize)
    }

    /// All `(k+1)·|h|` polynomials, generator-major: `h_0, h_0', …, h_1, …`.
    pub fn polys(&self) -> Vec<DiffPoly> {
        self.derivatives.iter().flatten().cloned().collect()
    }

    /// `(generator index, derivative order)` for each entry of [`Self::polys`].
    pub fn labels(&self) -> Vec<(usize, u32)> {
        (0..self.derivatives.len())
            .flat_map(|i| (0..=self.k).map(move |j| (i, j)))
            .collect()
    }

    /// Extends the family by one more derivative of every generator.
    pub fn extend(&mut self) {
        for ders in &mut self.derivatives {
            let next = total_derivative(ders.last().expect("nonempty"));
            ders.push(next);
        }
        self.k += 1;
    }
}

pub fn prolong(h: &[DiffPoly], k: u32) -> ProlongedFamily {
    let mut fam = ProlongedFamily {
        derivatives: h.iter().map(|p| vec![p.clone()]).collect(),
        k: 0,
    };
    for _ in 0..k {
        fam.extend();
    }
    fam
}

/// Maximal derivative order in `p`, optionally restricted to jets of one
/// base variable. Constants (and absent variables) have order 0.
pub fn order_of(p: &DiffPoly, v: Option<DiffVar>) -> u32 {
    p.variables()
        .into_iter()
        .filter(|j| v.is_none_or(|v| j.var() == v))
        .map(JetVar::der_order)
        .max()
        .unwrap_or(0)
}

/// Maximal order over a family.
pub fn max_order(ps: &[DiffPoly]) -> u32 {
    ps.iter().map(|p| order_of(p, None)).max().unwrap_or(0)
}

/// Simultaneous substitution; variables missing from `map` stay unchanged.
pub fn substitute(p: &DiffPoly, map: &BTreeMap<JetVar, DiffPoly>) -> DiffPoly {
    let mut out = DiffPoly::zero();
    for (m, c) in p.terms() {
        let mut term = DiffPoly::constant(c.clone());
        let mut kept = Vec::new();
        for &(v, e) in m.factors() {
            match map.get(&v) {
                Some(q) => term = &term * &q.pow(e),
                None => kept.push((v, e)),
            }
        }
        if !kept.is_empty() {
            term = term.mul_term(&crate::ring::rat(1), &Monomial::from_factors(kept));
        }
        out += &term;
    }
    out
}
