//! The dimension-descending chain of a semiexplicit system.
//!
//! `I₀ = √(g)`, `I_{i+1} = √((g_i, g̃_i) ∩ ℚ[x, u])`, where `g̃` is the
//! total derivative with `ẋ` replaced by `f`. The chain stops at the first
//! stage of dimension `≤ 0`. On top of it sit the exact invariants
//! `ε_i` (how far `I_i` is from the previous prolonged ideal) and `k_i`
//! (the prolongation order that makes stage `i` inconsistent), and the
//! order bound `L = k₀·ε₀` rebuilt from them.

use std::collections::BTreeSet;

use rayon::prelude::*;
use thiserror::Error;

use crate::diffcore::{order_of, prolong, total_derivative};
use crate::error::{Error, Result};
use crate::groebner::{
    buchberger_in, dimension, eliminate, is_unit_ideal, squarefree_eliminant_closure, zero_dim_radical, GroebnerBasis,
};
use crate::reduce::SemiexplicitSystem;
use crate::ring::{DiffPoly, JetVar, MonomialOrder};

pub const DEFAULT_CAP: u32 = 64;

/// `∂h/∂x · f + ∂h/∂u · u̇` for an order-0 `h`.
pub fn tilde(h: &DiffPoly, sys: &SemiexplicitSystem) -> Result<DiffPoly> {
    let order = order_of(h, None);
    if order > 0 {
        return Err(Error::PositiveOrder(order));
    }
    let mut out = DiffPoly::zero();
    for (x, f) in sys.states.iter().zip(&sys.rhs) {
        let dh = h.partial_derivative(x.jet(0));
        if !dh.is_zero() {
            out += &(&dh * f);
        }
    }
    for u in &sys.controls {
        let dh = h.partial_derivative(u.jet(0));
        if !dh.is_zero() {
            out += &(&dh * &DiffPoly::var(u.jet(1)));
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RadicalStatus {
    /// Zero-dimensional (or unit) with squarefree univariate eliminants.
    CertifiedRadical,
    /// Positive-dimensional: squarefree-eliminant closure, not certified.
    BestEffort,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stage {
    pub generators: Vec<DiffPoly>,
    /// Krull dimension in `ℚ[x, u]`; −1 for the unit ideal.
    pub dim: i64,
    pub radical: RadicalStatus,
    pub eps: Option<u32>,
    pub k: Option<u32>,
}

#[derive(Clone, Debug)]
pub struct DescentChain {
    pub system: SemiexplicitSystem,
    pub stages: Vec<Stage>,
}

#[derive(Debug, Error)]
#[error("{error}")]
pub struct ChainError {
    pub error: Error,
    pub partial: DescentChain,
}

impl DescentChain {
    /// First stage of dimension `≤ 0`.
    pub fn rho(&self) -> Option<usize> {
        self.stages.iter().position(|s| s.dim <= 0)
    }

    pub fn dims(&self) -> Vec<i64> {
        self.stages.iter().map(|s| s.dim).collect()
    }

    /// `max{i : k_i ≠ 0}`, once every `k_i` is known.
    pub fn mu(&self) -> Option<usize> {
        let ks: Option<Vec<u32>> = self.stages.iter().map(|s| s.k).collect();
        ks?.iter().rposition(|&k| k != 0)
    }
}

fn radicalize(gens: &[DiffPoly], ambient: &BTreeSet<JetVar>) -> (Vec<DiffPoly>, i64, RadicalStatus) {
    let dim = dimension(gens, ambient);
    if dim <= 0 {
        let rad = zero_dim_radical(gens, ambient).expect("dimension <= 0");
        (rad, dim, RadicalStatus::CertifiedRadical)
    } else {
        let (closed, _) = squarefree_eliminant_closure(gens, ambient);
        (closed, dim, RadicalStatus::BestEffort)
    }
}

/// Builds `I₀ ⊂ I₁ ⊂ …` until the dimension reaches `≤ 0`. Fails, with the
/// partial chain, if a stage does not lower the dimension or more than
/// `max_stages` stages would be needed.
pub fn build_chain(sys: &SemiexplicitSystem, max_stages: usize) -> std::result::Result<DescentChain, ChainError> {
    let ambient = sys.algebraic_vars();
    let udots: BTreeSet<JetVar> = sys.controls.iter().map(|u| u.jet(1)).collect();
    let mut chain = DescentChain { system: sys.clone(), stages: Vec::new() };
    let (gens, dim, radical) = radicalize(&sys.constraints, &ambient);
    chain.stages.push(Stage { generators: gens, dim, radical, eps: None, k: None });
    loop {
        let last = chain.stages.last().expect("stage 0");
        if last.dim <= 0 {
            return Ok(chain);
        }
        if chain.stages.len() >= max_stages.max(1) {
            return Err(ChainError { error: Error::StageLimit(max_stages), partial: chain });
        }
        let mut widened = last.generators.clone();
        for h in &last.generators {
            widened.push(tilde(h, sys).expect("stage generators have order 0"));
        }
        let projected = eliminate(&widened, &udots);
        let (gens, dim, radical) = radicalize(&projected, &ambient);
        let prev = last.dim;
        chain.stages.push(Stage { generators: gens, dim, radical, eps: None, k: None });
        if dim >= prev {
            let stage = chain.stages.len() - 1;
            return Err(ChainError { error: Error::DimensionDidNotDrop { stage, prev, dim }, partial: chain });
        }
    }
}

/// The ideal `I_i^ε` must land in: `(g)` for `i = 0`, otherwise
/// `(ẋ − f, g_{i−1}, ġ_{i−1})`.
fn eps_target(chain: &DescentChain, i: usize) -> Vec<DiffPoly> {
    let sys = &chain.system;
    if i == 0 {
        return sys.constraints.clone();
    }
    let prev = &chain.stages[i - 1].generators;
    let mut target: Vec<DiffPoly> = sys.generators()[..sys.states.len()].to_vec();
    target.extend(prev.iter().cloned());
    target.extend(prev.iter().map(total_derivative));
    target
}

/// Whether every product of `depth` generators (times `acc`) reduces to 0.
fn all_products_vanish(gens: &[DiffPoly], gb: &GroebnerBasis, acc: &DiffPoly, from: usize, depth: u32) -> bool {
    if depth == 0 {
        return acc.is_zero();
    }
    if acc.is_zero() {
        return true;
    }
    (from..gens.len()).all(|j| {
        let next = gb.reduce(&(acc * &gens[j]));
        all_products_vanish(gens, gb, &next, j, depth - 1)
    })
}

/// Least `ε ≤ cap` with `I_i^ε` inside the target ideal, found by first
/// taking the largest minimal power of a single generator and then testing
/// every product of `ε` generators.
pub fn exact_eps(chain: &DescentChain, i: usize, cap: u32) -> Option<u32> {
    let gens = &chain.stages.get(i)?.generators;
    let target = eps_target(chain, i);
    let mut extra = chain.system.algebraic_vars();
    for g in gens {
        extra.extend(g.variables());
    }
    let gb = buchberger_in(&target, &extra, &MonomialOrder::degrevlex(), false);
    let mut lower = 1;
    for h in gens {
        lower = lower.max(crate::groebner::min_power_in_basis(h, &gb, cap)?);
    }
    (lower..=cap).find(|&eps| all_products_vanish(gens, &gb, &DiffPoly::one(), 0, eps))
}

/// Least `k ≤ cap` with `1 ∈ ((ẋ − f)^[k], g_i^[k])`.
pub fn exact_k(sys: &SemiexplicitSystem, chain: &DescentChain, i: usize, cap: u32) -> Option<u32> {
    let mut family: Vec<DiffPoly> = sys.generators()[..sys.states.len()].to_vec();
    family.extend(chain.stages.get(i)?.generators.iter().cloned());
    let mut fam = prolong(&family, 0);
    for k in 0..=cap {
        if k > 0 {
            fam.extend();
        }
        if is_unit_ideal(&fam.polys()) {
            return Some(k);
        }
    }
    None
}

/// Fills in `ε_i` and `k_i` for every stage, stages in parallel.
pub fn populate(chain: &mut DescentChain, eps_cap: u32, k_cap: u32) {
    let snapshot = chain.clone();
    let values: Vec<(Option<u32>, Option<u32>)> = (0..snapshot.stages.len())
        .into_par_iter()
        .map(|i| (exact_eps(&snapshot, i, eps_cap), exact_k(&snapshot.system, &snapshot, i, k_cap)))
        .collect();
    for (stage, (eps, k)) in chain.stages.iter_mut().zip(values) {
        stage.eps = eps;
        stage.k = k;
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaCheck {
    pub i: usize,
    pub k_prev: u32,
    pub eps_i: u32,
    pub k_i: u32,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LReport {
    /// `k₀·ε₀`.
    pub l: u32,
    pub mu: usize,
    /// `k_{i−1} ≤ 1 + ε_i·k_i` for `1 ≤ i ≤ μ`.
    pub checks: Vec<LemmaCheck>,
    pub k_mu_is_one: bool,
    /// Whether `1 ∈ ((ẋ − f)^[L], g^[L])`.
    pub unit_at_l: bool,
}

/// `L = k₀·ε₀`, with the lemma inequalities checked on every populated
/// stage up to `μ` and the membership at order `L` confirmed.
pub fn reconstruct_l(chain: &DescentChain) -> Result<LReport> {
    let missing = |what: &str, i: usize| Error::Undetermined(format!("{what}_{i}"));
    let s0 = &chain.stages[0];
    let eps0 = s0.eps.ok_or_else(|| missing("eps", 0))?;
    let k0 = s0.k.ok_or_else(|| missing("k", 0))?;
    let mu = chain.mu().ok_or_else(|| missing("k", chain.stages.iter().position(|s| s.k.is_none()).unwrap_or(0)))?;
    let mut checks = Vec::new();
    for i in 1..=mu {
        let eps_i = chain.stages[i].eps.ok_or_else(|| missing("eps", i))?;
        let (k_prev, k_i) = (chain.stages[i - 1].k.expect("mu known"), chain.stages[i].k.expect("mu known"));
        checks.push(LemmaCheck { i, k_prev, eps_i, k_i, holds: k_prev <= 1 + eps_i * k_i });
    }
    let k_mu_is_one = chain.stages[mu].k == Some(1);
    if let Some(c) = checks.iter().find(|c| !c.holds) {
        return Err(Error::LemmaViolation(format!(
            "k_{} = {} > 1 + {}*{} at stage {}",
            c.i - 1,
            c.k_prev,
            c.eps_i,
            c.k_i,
            c.i
        )));
    }
    if !k_mu_is_one {
        return Err(Error::LemmaViolation(format!("k_mu = {:?} at mu = {mu}", chain.stages[mu].k)));
    }
    let l = k0 * eps0;
    let unit_at_l = is_unit_ideal(&prolong(&chain.system.generators(), l).polys());
    Ok(LReport { l, mu, checks, k_mu_is_one, unit_at_l })
}
