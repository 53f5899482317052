//! Buchberger's algorithm with lazily expanded cofactor recipes.
//!
//! Every polynomial the engine creates is stored in an arena together with a
//! recipe `scale · Σ coef · x^m · source` over earlier arena entries and the
//! input generators. Recipes cost one push per reduction step; cofactor
//! vectors in terms of the inputs are only expanded for the elements a caller
//! asks about.

use std::collections::HashMap;

use num_traits::One;

use super::dense::{coprime, div_exp, divides, lcm_exp, Exp, Poly, Ring, Term};
use crate::ring::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub(crate) enum Src {
    Input(usize),
    Elem(usize),
}

#[derive(Clone, Debug)]
pub(crate) struct Recipe {
    scale: Rational,
    parts: Vec<(Src, Rational, Exp)>,
}

impl Recipe {
    fn single(src: Src, one: Exp) -> Self {
        Recipe { scale: Rational::one(), parts: vec![(src, Rational::one(), one)] }
    }
}

struct Elem {
    poly: Poly,
    recipe: Recipe,
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Exp,
}

pub(crate) struct Engine<'r> {
    pub ring: &'r Ring,
    elems: Vec<Elem>,
    ninputs: usize,
}

/// Outcome of a basis computation: arena indices of the reduced basis,
/// ascending by leading monomial.
pub(crate) struct Computed {
    pub basis: Vec<usize>,
}

impl<'r> Engine<'r> {
    pub fn new(ring: &'r Ring) -> Self {
        Engine { ring, elems: Vec::new(), ninputs: 0 }
    }

    pub fn poly(&self, e: usize) -> &Poly {
        &self.elems[e].poly
    }

    fn push(&mut self, poly: Poly, recipe: Recipe) -> usize {
        self.elems.push(Elem { poly, recipe });
        self.elems.len() - 1
    }

    /// Fully reduces `p` (with its recipe) modulo the arena elements `by`,
    /// which must be monic.
    fn reduce(&self, mut p: Poly, mut recipe: Recipe, by: &[usize]) -> (Poly, Recipe) {
        let mut i = 0;
        while i < p.terms.len() {
            let lead = &p.terms[i];
            let divisor = by.iter().copied().find(|&g| divides(&self.elems[g].poly.lead().exp, &lead.exp));
            match divisor {
                None => i += 1,
                Some(g) => {
                    let gp = &self.elems[g].poly;
                    let c = lead.coef.clone();
                    let m = div_exp(&lead.exp, &gp.lead().exp);
                    let tail = self.ring.add_scaled(&p.terms[i + 1..], &(-&c), &m, &gp.terms[1..]);
                    p.terms.truncate(i);
                    p.terms.extend(tail);
                    recipe.parts.push((Src::Elem(g), -(c / &recipe.scale), m));
                }
            }
        }
        (p, recipe)
    }

    /// Reduced Gröbner basis of the inputs. Stops early, returning the single
    /// constant element, as soon as the ideal is found to be the unit ideal.
    pub fn run(&mut self, inputs: &[Poly]) -> Computed {
        self.ninputs = inputs.len();
        let mut basis: Vec<usize> = Vec::new();
        let mut pairs: Vec<Pair> = Vec::new();

        let mut order: Vec<usize> = (0..inputs.len()).filter(|&i| !inputs[i].is_zero()).collect();
        order.sort_by(|&a, &b| self.ring.cmp(&inputs[a].lead().exp, &inputs[b].lead().exp));
        for i in order {
            let recipe = Recipe::single(Src::Input(i), self.ring.one_exp());
            let (p, r) = self.reduce(inputs[i].clone(), recipe, &basis);
            if let Some(unit) = self.insert(p, r, &mut basis, &mut pairs) {
                return Computed { basis: vec![unit] };
            }
        }

        while let Some(pair) = self.take_pair(&mut pairs) {
            let (fi, gi) = (&self.elems[pair.i].poly, &self.elems[pair.j].poly);
            let mf = div_exp(&pair.lcm, &fi.lead().exp);
            let mg = div_exp(&pair.lcm, &gi.lead().exp);
            let one = Rational::one();
            let s_terms = self.ring.add_scaled(
                &self.ring.mul_term(&Poly { terms: fi.terms[1..].to_vec() }, &one, &mf).terms,
                &(-&one),
                &mg,
                &gi.terms[1..],
            );
            let recipe = Recipe {
                scale: Rational::one(),
                parts: vec![(Src::Elem(pair.i), one.clone(), mf), (Src::Elem(pair.j), -one, mg)],
            };
            let (p, r) = self.reduce(Poly { terms: s_terms }, recipe, &basis);
            if let Some(unit) = self.insert(p, r, &mut basis, &mut pairs) {
                return Computed { basis: vec![unit] };
            }
        }

        self.interreduce(basis)
    }

    /// Normal strategy: the pair with the smallest lcm.
    fn take_pair(&self, pairs: &mut Vec<Pair>) -> Option<Pair> {
        if pairs.is_empty() {
            return None;
        }
        let mut best = 0;
        for k in 1..pairs.len() {
            if self.ring.cmp(&pairs[k].lcm, &pairs[best].lcm).is_lt() {
                best = k;
            }
        }
        Some(pairs.swap_remove(best))
    }

    /// Adds a nonzero reduced polynomial and updates the pair set with the
    /// Gebauer–Möller criteria. Returns the element if it is a constant.
    fn insert(&mut self, mut p: Poly, mut r: Recipe, basis: &mut Vec<usize>, pairs: &mut Vec<Pair>) -> Option<usize> {
        if p.is_zero() {
            return None;
        }
        let lc = p.make_monic();
        r.scale /= lc;
        let constant = p.is_constant();
        let h = self.push(p, r);
        if constant {
            return Some(h);
        }
        let lh = self.elems[h].poly.lead().exp.clone();

        // new pairs (g, h); drop those whose lcm is a proper multiple of another new lcm
        let mut cand: Vec<(usize, Exp, bool)> = basis
            .iter()
            .map(|&g| {
                let lg = &self.elems[g].poly.lead().exp;
                (g, lcm_exp(lg, &lh), coprime(lg, &lh))
            })
            .collect();
        let mut keep = vec![true; cand.len()];
        for a in 0..cand.len() {
            for b in 0..cand.len() {
                if a == b || !keep[b] {
                    continue;
                }
                let (la, lb) = (&cand[a].1, &cand[b].1);
                if divides(lb, la) && (la != lb || b < a) {
                    keep[a] = false;
                    break;
                }
            }
        }
        // coprime leading monomials: the pair reduces to zero (first criterion)
        let mut fresh: Vec<Pair> = Vec::new();
        for (k, (g, l, cop)) in cand.drain(..).enumerate() {
            if keep[k] && !cop {
                fresh.push(Pair { i: g, j: h, lcm: l });
            }
        }
        // chain criterion on old pairs
        pairs.retain(|p| {
            let li = &self.elems[p.i].poly.lead().exp;
            let lj = &self.elems[p.j].poly.lead().exp;
            !(divides(&lh, &p.lcm) && lcm_exp(li, &lh) != p.lcm && lcm_exp(lj, &lh) != p.lcm)
        });
        pairs.extend(fresh);
        basis.retain(|&g| !divides(&lh, &self.elems[g].poly.lead().exp));
        basis.push(h);
        None
    }

    fn interreduce(&mut self, mut basis: Vec<usize>) -> Computed {
        basis.sort_by(|&a, &b| self.ring.cmp(&self.elems[a].poly.lead().exp, &self.elems[b].poly.lead().exp));
        let mut done: Vec<usize> = Vec::with_capacity(basis.len());
        for g in basis {
            let lead = self.elems[g].poly.lead().clone();
            let tail = Poly { terms: self.elems[g].poly.terms[1..].to_vec() };
            let needs = tail.terms.iter().any(|t| {
                done.iter().any(|&d| divides(&self.elems[d].poly.lead().exp, &t.exp))
            });
            if !needs {
                done.push(g);
                continue;
            }
            let recipe = Recipe::single(Src::Elem(g), self.ring.one_exp());
            let (t, r) = self.reduce(tail, recipe, &done);
            let mut terms = vec![lead];
            terms.extend(t.terms);
            let h = self.push(Poly { terms }, r);
            done.push(h);
        }
        Computed { basis: done }
    }

    /// Cofactors of each requested element with respect to the inputs:
    /// `elem = Σ_j cof[j] · input[j]`.
    pub fn expand(&self, wanted: &[usize]) -> Vec<Vec<Poly>> {
        // reachable elements; recipes only reference earlier entries
        let mut needed = vec![false; self.elems.len()];
        let mut stack: Vec<usize> = wanted.to_vec();
        while let Some(e) = stack.pop() {
            if needed[e] {
                continue;
            }
            needed[e] = true;
            for (src, _, _) in &self.elems[e].recipe.parts {
                if let Src::Elem(k) = *src {
                    if !needed[k] {
                        stack.push(k);
                    }
                }
            }
        }
        let mut uses: HashMap<usize, usize> = HashMap::new();
        for e in (0..self.elems.len()).filter(|&e| needed[e]) {
            for (src, _, _) in &self.elems[e].recipe.parts {
                if let Src::Elem(k) = *src {
                    *uses.entry(k).or_default() += 1;
                }
            }
        }
        for &w in wanted {
            *uses.entry(w).or_default() += 1;
        }

        let mut memo: HashMap<usize, Vec<Poly>> = HashMap::new();
        for e in (0..self.elems.len()).filter(|&e| needed[e]) {
            let recipe = &self.elems[e].recipe;
            let mut cof = vec![Poly::zero(); self.ninputs];
            for (src, c, m) in &recipe.parts {
                match *src {
                    Src::Input(i) => {
                        let unit = Poly { terms: vec![Term { exp: m.clone(), coef: c.clone() }] };
                        cof[i] = Poly { terms: self.ring.add_scaled(&cof[i].terms, &Rational::one(), &self.ring.one_exp(), &unit.terms) };
                    }
                    Src::Elem(k) => {
                        let sub = &memo[&k];
                        for (j, q) in sub.iter().enumerate() {
                            self.ring.add_assign_scaled(&mut cof[j], c, m, q);
                        }
                    }
                }
            }
            if !recipe.scale.is_one() {
                for q in &mut cof {
                    q.scale(&recipe.scale);
                }
            }
            for (src, _, _) in &recipe.parts {
                if let Src::Elem(k) = *src {
                    let n = uses.get_mut(&k).expect("counted");
                    *n -= 1;
                    if *n == 0 {
                        memo.remove(&k);
                    }
                }
            }
            memo.insert(e, cof);
        }
        wanted.iter().map(|w| memo[w].clone()).collect()
    }
}

/// Division of `p` by the (monic-led or not) polynomials `by`, returning the
/// remainder and one quotient per divisor.
pub(crate) fn divide(ring: &Ring, p: &Poly, by: &[Poly]) -> (Poly, Vec<Poly>) {
    let mut p = p.clone();
    let mut quotients = vec![Poly::zero(); by.len()];
    let mut i = 0;
    while i < p.terms.len() {
        let lead = &p.terms[i];
        match by.iter().position(|g| !g.is_zero() && divides(&g.lead().exp, &lead.exp)) {
            None => i += 1,
            Some(k) => {
                let g = &by[k];
                let c = &lead.coef / &g.lead().coef;
                let m = div_exp(&lead.exp, &g.lead().exp);
                let tail = ring.add_scaled(&p.terms[i + 1..], &(-&c), &m, &g.terms[1..]);
                p.terms.truncate(i);
                p.terms.extend(tail);
                let t = Poly { terms: vec![Term { exp: m, coef: c }] };
                quotients[k] = Poly {
                    terms: ring.add_scaled(&quotients[k].terms, &Rational::one(), &ring.one_exp(), &t.terms),
                };
            }
        }
    }
    (p, quotients)
}
