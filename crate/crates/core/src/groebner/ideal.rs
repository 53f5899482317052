//! Elimination, dimension, radicals and powers built on Buchberger.

use std::collections::BTreeSet;

use super::{buchberger_in, GroebnerBasis};
use crate::error::{Error, Result};
use crate::ring::{DiffPoly, JetVar, MonomialOrder, Univariate};

/// Generators of `(gens) ∩ ℚ[vars ∖ drop]`, read off a Gröbner basis for
/// the block order that ranks `drop` above everything else.
pub fn eliminate(gens: &[DiffPoly], drop: &BTreeSet<JetVar>) -> Vec<DiffPoly> {
    let order = MonomialOrder::eliminating(drop.iter().copied());
    let gb = buchberger_in(gens, drop, &order, false);
    gb.basis()
        .iter()
        .filter(|p| p.variables().is_disjoint(drop))
        .cloned()
        .collect()
}

/// Krull dimension of `V(gens)` inside affine space over `ambient` (extended
/// by any variable occurring in `gens`); −1 for the unit ideal.
///
/// This is the largest set of variables containing the support of no
/// leading monomial of a Gröbner basis.
pub fn dimension(gens: &[DiffPoly], ambient: &BTreeSet<JetVar>) -> i64 {
    let gb = buchberger_in(gens, ambient, &MonomialOrder::degrevlex(), false);
    dimension_of(&gb)
}

pub(crate) fn dimension_of(gb: &GroebnerBasis) -> i64 {
    if gb.is_unit() {
        return -1;
    }
    let vars: Vec<JetVar> = gb.ambient().into_iter().collect();
    let masks: Vec<Vec<bool>> = gb
        .leading_monomials()
        .iter()
        .map(|m| vars.iter().map(|v| m.exponent(*v) > 0).collect())
        .collect();

    fn blocked(masks: &[Vec<bool>], chosen: &[bool]) -> bool {
        masks.iter().any(|m| m.iter().zip(chosen).all(|(&need, &have)| !need || have))
    }
    fn search(k: usize, chosen: &mut Vec<bool>, size: usize, best: &mut usize, masks: &[Vec<bool>]) {
        let n = chosen.len();
        if size + (n - k) <= *best {
            return;
        }
        if k == n {
            *best = size;
            return;
        }
        chosen[k] = true;
        if !blocked(masks, chosen) {
            search(k + 1, chosen, size + 1, best, masks);
        }
        chosen[k] = false;
        search(k + 1, chosen, size, best, masks);
    }

    let mut best = 0;
    search(0, &mut vec![false; vars.len()], 0, &mut best, &masks);
    best as i64
}

/// The generator of `(gens) ∩ ℚ[v]`, or `None` if that ideal is zero.
pub(crate) fn univariate_eliminant(gens: &[DiffPoly], ambient: &BTreeSet<JetVar>, v: JetVar) -> Option<Univariate> {
    let mut all = ambient.clone();
    for g in gens {
        all.extend(g.variables());
    }
    all.remove(&v);
    let elim = eliminate(gens, &all);
    let h = elim.into_iter().find(|p| !p.is_zero())?;
    Univariate::from_poly(&h, v)
}

/// Adjoins the squarefree part of every nonzero univariate eliminant.
/// Returns the reduced generators and whether every ambient variable had an
/// eliminant (in which case the result is radical by Seidenberg's criterion).
pub fn squarefree_eliminant_closure(gens: &[DiffPoly], ambient: &BTreeSet<JetVar>) -> (Vec<DiffPoly>, bool) {
    let base = buchberger_in(gens, ambient, &MonomialOrder::degrevlex(), false);
    if base.is_unit() {
        return (vec![DiffPoly::one()], true);
    }
    let mut out: Vec<DiffPoly> = base.basis().to_vec();
    let mut all_found = true;
    for &v in &base.ambient() {
        match univariate_eliminant(base.basis(), ambient, v) {
            Some(h) => out.push(h.squarefree_part().to_poly(v)),
            None => all_found = false,
        }
    }
    let closed = buchberger_in(&out, ambient, &MonomialOrder::degrevlex(), false);
    (closed.basis().to_vec(), all_found)
}

/// Generators of `√(gens)` for a zero-dimensional (or unit) ideal.
pub fn zero_dim_radical(gens: &[DiffPoly], ambient: &BTreeSet<JetVar>) -> Result<Vec<DiffPoly>> {
    let dim = dimension(gens, ambient);
    if dim > 0 {
        return Err(Error::PositiveDimension(dim));
    }
    let (closed, all_found) = squarefree_eliminant_closure(gens, ambient);
    debug_assert!(all_found);
    Ok(closed)
}

/// Seidenberg's criterion: every univariate eliminant exists and is
/// squarefree.
pub fn is_radical_zero_dim(gens: &[DiffPoly], ambient: &BTreeSet<JetVar>) -> bool {
    let mut all = ambient.clone();
    for g in gens {
        all.extend(g.variables());
    }
    all.iter().all(|&v| univariate_eliminant(gens, ambient, v).is_some_and(|h| h.is_squarefree()))
}

/// Least `M ≤ cap` with `p^M ∈ (gens)`.
pub fn min_power_in_ideal(p: &DiffPoly, gens: &[DiffPoly], cap: u32) -> Option<u32> {
    let gb = buchberger_in(gens, &p.variables(), &MonomialOrder::degrevlex(), false);
    min_power_in_basis(p, &gb, cap)
}

pub(crate) fn min_power_in_basis(p: &DiffPoly, gb: &GroebnerBasis, cap: u32) -> Option<u32> {
    let r = gb.reduce(p);
    let mut cur = r.clone();
    for m in 1..=cap {
        if cur.is_zero() {
            return Some(m);
        }
        cur = gb.reduce(&(&cur * &r));
    }
    None
}

/// Gröbner basis of `gens` in the default order, as a convenience for callers
/// that test many polynomials against the same ideal.
#[cfg(test)]
pub(crate) fn basis_of(gens: &[DiffPoly]) -> GroebnerBasis {
    super::buchberger(gens, &MonomialOrder::degrevlex(), false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::DiffVar;

    fn xv() -> JetVar {
        DiffVar::state(1).jet(0)
    }
    fn uv() -> JetVar {
        DiffVar::control(1).jet(0)
    }
    fn x() -> DiffPoly {
        DiffPoly::var(xv())
    }
    fn u() -> DiffPoly {
        DiffPoly::var(uv())
    }
    fn ambient() -> BTreeSet<JetVar> {
        [xv(), uv()].into()
    }

    #[test]
    fn elimination_examples() {
        let ud = DiffVar::control(1).jet(1);
        let gens = [DiffPoly::var(ud) - x(), DiffPoly::var(ud)];
        let e = eliminate(&gens, &[ud].into());
        assert!(super::super::is_member(&x(), &e).is_some());

        assert!(eliminate(&[x().pow(2) - u()], &[uv()].into()).is_empty());

        let t = DiffVar::aux(1).jet(0);
        let gens = [x() - DiffPoly::var(t), u() - DiffPoly::var(t).pow(2)];
        let e = eliminate(&gens, &[t].into());
        assert_eq!(e.len(), 1);
        let target = u() - x().pow(2);
        assert!(e[0] == target || e[0] == -target);
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(dimension(&[DiffPoly::one()], &ambient()), -1);
        assert_eq!(dimension(&[x(), u()], &ambient()), 0);
        assert_eq!(dimension(&[u() - x().pow(2)], &ambient()), 1);
        assert_eq!(dimension(&[], &ambient()), 2);
    }

    #[test]
    fn radical_examples() {
        let r = zero_dim_radical(&[x().pow(2)], &[xv()].into()).unwrap();
        assert_eq!(r, vec![x()]);
        let g = x().pow(2) - x();
        assert_eq!(zero_dim_radical(&[g.clone()], &[xv()].into()).unwrap(), vec![g]);
        let r = zero_dim_radical(&[u() - x().pow(2), u().pow(2)], &ambient()).unwrap();
        let gb = basis_of(&r);
        assert!(gb.contains(&x()) && gb.contains(&u()));
        assert!(is_radical_zero_dim(&r, &ambient()));
        assert!(!is_radical_zero_dim(&[u() - x().pow(2), u().pow(2)], &ambient()));
        assert!(zero_dim_radical(&[x()], &ambient()).is_err());
    }

    #[test]
    fn min_power_examples() {
        assert_eq!(min_power_in_ideal(&x(), &[x().pow(2)], 10), Some(2));
        assert_eq!(min_power_in_ideal(&x(), &[u()], 10), None);
    }
}
