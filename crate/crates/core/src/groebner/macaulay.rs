//! Membership by brute force: the Macaulay linear system.
//!
//! Unknowns are the coefficients of cofactors `c_j` with
//! `deg c_j ≤ cap − deg g_j`; equations match the coefficients of
//! `Σ c_j·g_j` with those of `p`. Shares nothing with the Buchberger route
//! beyond the polynomial type.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;

use super::linsolve::solve;
use super::MembershipWitness;
use crate::ring::{DiffPoly, JetVar, Monomial, Rational};

/// All monomials in `vars` of total degree at most `max_deg`.
pub(crate) fn monomials_up_to(vars: &[JetVar], max_deg: u32) -> Vec<Monomial> {
    fn rec(vars: &[JetVar], budget: u32, acc: &mut Vec<(JetVar, u32)>, out: &mut Vec<Monomial>) {
        let Some((&v, rest)) = vars.split_first() else {
            out.push(Monomial::from_factors(acc.iter().copied()));
            return;
        };
        for e in 0..=budget {
            if e > 0 {
                acc.push((v, e));
            }
            rec(rest, budget - e, acc, out);
            if e > 0 {
                acc.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(vars, max_deg, &mut Vec::new(), &mut out);
    out
}

/// Decides `p ∈ (gens)` with cofactor degrees bounded by `deg_cap`; a
/// witness is returned iff the linear system is solvable at this cap.
pub fn macaulay_membership(p: &DiffPoly, gens: &[DiffPoly], deg_cap: u32) -> Option<MembershipWitness> {
    let mut vars: BTreeSet<JetVar> = p.variables();
    for g in gens {
        vars.extend(g.variables());
    }
    let vars: Vec<JetVar> = vars.into_iter().collect();

    // unknown k ↦ (generator, multiplier monomial)
    let mut unknowns: Vec<(usize, Monomial)> = Vec::new();
    let mut rows: BTreeMap<Monomial, BTreeMap<usize, Rational>> = BTreeMap::new();
    for (j, g) in gens.iter().enumerate() {
        if g.is_zero() || g.degree() > deg_cap {
            continue;
        }
        for m in monomials_up_to(&vars, deg_cap - g.degree()) {
            let k = unknowns.len();
            for (gm, c) in g.terms() {
                rows.entry(gm.mul(&m)).or_default().insert(k, c.clone());
            }
            unknowns.push((j, m));
        }
    }
    for (m, _) in p.terms() {
        rows.entry(m.clone()).or_default();
    }

    let (mats, rhs): (Vec<_>, Vec<_>) = rows.into_iter().map(|(m, row)| (row, p.coefficient(&m))).unzip();
    let y = solve(&mats, &rhs, unknowns.len())?;

    let mut cofactors = vec![DiffPoly::zero(); gens.len()];
    for ((j, m), c) in unknowns.into_iter().zip(y) {
        if !c.is_zero() {
            cofactors[j].add_term(m, c);
        }
    }
    Some(MembershipWitness { member: p.clone(), cofactors })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::DiffVar;

    fn x() -> DiffPoly {
        DiffPoly::var(DiffVar::state(1).jet(0))
    }
    fn u() -> DiffPoly {
        DiffPoly::var(DiffVar::control(1).jet(0))
    }

    #[test]
    fn monomial_count() {
        let vars = [DiffVar::state(1).jet(0), DiffVar::control(1).jet(0), DiffVar::state(1).jet(1)];
        // C(3+3, 3) = 20
        assert_eq!(monomials_up_to(&vars, 3).len(), 20);
    }

    #[test]
    fn examples() {
        let gens = [x(), DiffPoly::one() - x()];
        let w = macaulay_membership(&DiffPoly::one(), &gens, 1).unwrap();
        assert!(w.verify(&gens));
        assert!(macaulay_membership(&DiffPoly::one(), &[x()], 5).is_none());
        let gens = [u() - x().pow(2), u().pow(2)];
        let w = macaulay_membership(&x().pow(4), &gens, 4).unwrap();
        assert!(w.verify(&gens));
        assert!(macaulay_membership(&x().pow(3), &gens, 8).is_none());
    }
}
