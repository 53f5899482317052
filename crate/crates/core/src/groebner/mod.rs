//! Ideal-theoretic engine over ℚ.
//!
//! Two independent routes decide membership: [`buchberger`] followed by
//! division (with cofactor tracking), and [`macaulay_membership`], a
//! brute-force linear system in the unknown cofactor coefficients. The
//! second exists to cross-check the first.

mod dense;
mod engine;
mod ideal;
mod linsolve;
mod macaulay;

use std::collections::BTreeSet;

use crate::ring::{DiffPoly, JetVar, MonomialOrder};
use dense::{Poly, Ring};
use engine::{divide, Engine};

pub use ideal::{
    dimension, eliminate, is_radical_zero_dim, min_power_in_ideal, squarefree_eliminant_closure, zero_dim_radical,
};
pub use macaulay::macaulay_membership;
pub(crate) use ideal::min_power_in_basis;

/// `member = Σ cofactors[j] · generators[j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipWitness {
    pub member: DiffPoly,
    pub cofactors: Vec<DiffPoly>,
}

impl MembershipWitness {
    /// Re-expands the combination exactly.
    pub fn verify(&self, gens: &[DiffPoly]) -> bool {
        if gens.len() != self.cofactors.len() {
            return false;
        }
        let mut sum = DiffPoly::zero();
        for (c, g) in self.cofactors.iter().zip(gens) {
            sum += &(c * g);
        }
        sum == self.member
    }
}

/// A reduced Gröbner basis, optionally with the matrix expressing each
/// basis element in the input generators.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    order: MonomialOrder,
    inputs: Vec<DiffPoly>,
    basis: Vec<DiffPoly>,
    transform: Option<Vec<Vec<DiffPoly>>>,
    ring: Ring,
    dense: Vec<Poly>,
}

impl GroebnerBasis {
    pub fn basis(&self) -> &[DiffPoly] {
        &self.basis
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn inputs(&self) -> &[DiffPoly] {
        &self.inputs
    }

    /// `transform[i][j]`: coefficient of input `j` in basis element `i`.
    pub fn transform(&self) -> Option<&[Vec<DiffPoly>]> {
        self.transform.as_deref()
    }

    pub fn ambient(&self) -> BTreeSet<JetVar> {
        self.ring.vars.iter().copied().collect()
    }

    pub fn is_unit(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].is_constant() && !self.basis[0].is_zero()
    }

    pub fn leading_monomials(&self) -> Vec<crate::ring::Monomial> {
        self.dense.iter().map(|p| self.ring.monomial_of(&p.lead().exp)).collect()
    }

    fn ring_for(&self, p: &DiffPoly) -> (Ring, Vec<Poly>) {
        if self.ring.has_vars_of(p) {
            return (self.ring.clone(), self.dense.clone());
        }
        let mut vars = self.ambient();
        vars.extend(p.variables());
        let ring = Ring::new(&vars, &self.order);
        let dense = self.basis.iter().map(|b| ring.to_dense(b)).collect();
        (ring, dense)
    }

    /// Division by the basis: `p = Σ quotients[i]·basis[i] + remainder`, with
    /// no remainder term divisible by a leading monomial of the basis.
    pub fn normal_form(&self, p: &DiffPoly) -> (DiffPoly, Vec<DiffPoly>) {
        let (ring, dense) = self.ring_for(p);
        let (r, qs) = divide(&ring, &ring.to_dense(p), &dense);
        (ring.to_sparse(&r), qs.iter().map(|q| ring.to_sparse(q)).collect())
    }

    pub fn reduce(&self, p: &DiffPoly) -> DiffPoly {
        self.normal_form(p).0
    }

    pub fn contains(&self, p: &DiffPoly) -> bool {
        self.reduce(p).is_zero()
    }

    /// Membership with cofactors over the inputs. Requires tracking.
    pub fn witness(&self, p: &DiffPoly) -> Option<MembershipWitness> {
        let transform = self.transform.as_ref()?;
        let (r, qs) = self.normal_form(p);
        if !r.is_zero() {
            return None;
        }
        let mut cofactors = vec![DiffPoly::zero(); self.inputs.len()];
        for (q, row) in qs.iter().zip(transform) {
            if q.is_zero() {
                continue;
            }
            for (c, t) in cofactors.iter_mut().zip(row) {
                *c += &(q * t);
            }
        }
        Some(MembershipWitness { member: p.clone(), cofactors })
    }
}

fn collect_vars(gens: &[DiffPoly], extra: &BTreeSet<JetVar>) -> BTreeSet<JetVar> {
    let mut vars: BTreeSet<JetVar> = extra.clone();
    for g in gens {
        vars.extend(g.variables());
    }
    vars
}

/// Reduced Gröbner basis of `(gens)` under `order`.
pub fn buchberger(gens: &[DiffPoly], order: &MonomialOrder, track: bool) -> GroebnerBasis {
    buchberger_in(gens, &BTreeSet::new(), order, track)
}

/// As [`buchberger`], with the ambient ring enlarged by `extra` variables.
pub fn buchberger_in(
    gens: &[DiffPoly],
    extra: &BTreeSet<JetVar>,
    order: &MonomialOrder,
    track: bool,
) -> GroebnerBasis {
    let ring = Ring::new(&collect_vars(gens, extra), order);
    let inputs: Vec<Poly> = gens.iter().map(|g| ring.to_dense(g)).collect();
    let mut engine = Engine::new(&ring);
    let computed = engine.run(&inputs);
    let dense: Vec<Poly> = computed.basis.iter().map(|&e| engine.poly(e).clone()).collect();
    let transform = track.then(|| {
        engine
            .expand(&computed.basis)
            .into_iter()
            .map(|row| row.iter().map(|q| ring.to_sparse(q)).collect())
            .collect()
    });
    let basis = dense.iter().map(|p| ring.to_sparse(p)).collect();
    GroebnerBasis { order: order.clone(), inputs: gens.to_vec(), basis, transform, ring, dense }
}

/// A witness for `1 ∈ (gens)`, if the ideal is the unit ideal.
pub fn contains_one(gens: &[DiffPoly]) -> Option<MembershipWitness> {
    let order = MonomialOrder::degrevlex();
    let ring = Ring::new(&collect_vars(gens, &BTreeSet::new()), &order);
    let inputs: Vec<Poly> = gens.iter().map(|g| ring.to_dense(g)).collect();
    let mut engine = Engine::new(&ring);
    let computed = engine.run(&inputs);
    let [unit] = computed.basis[..] else { return None };
    if !engine.poly(unit).is_constant() {
        return None;
    }
    let row = engine.expand(&[unit]).pop().expect("one row");
    let cofactors = row.iter().map(|q| ring.to_sparse(q)).collect();
    Some(MembershipWitness { member: DiffPoly::one(), cofactors })
}

/// Whether `1 ∈ (gens)`, without building a witness.
pub fn is_unit_ideal(gens: &[DiffPoly]) -> bool {
    buchberger(gens, &MonomialOrder::degrevlex(), false).is_unit()
}

/// A witness for `p ∈ (gens)`, if membership holds.
pub fn is_member(p: &DiffPoly, gens: &[DiffPoly]) -> Option<MembershipWitness> {
    if p.is_zero() {
        return Some(MembershipWitness { member: p.clone(), cofactors: vec![DiffPoly::zero(); gens.len()] });
    }
    let gb = buchberger_in(gens, &p.variables(), &MonomialOrder::degrevlex(), true);
    gb.witness(p)
}
