//! Dense-exponent polynomials over a fixed, ranked variable list.
//!
//! The Gröbner engine converts its inputs into this representation once:
//! exponent vectors indexed by rank make comparisons and divisibility tests
//! cheap compared to the sparse [`DiffPoly`] maps.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};

use num_traits::{One, Zero};

use crate::ring::{cmp_kind, DiffPoly, JetVar, Monomial, MonomialOrder, OrderKind, Rational};

pub(crate) type Exp = Box<[u16]>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Term {
    pub exp: Exp,
    pub coef: Rational,
}

/// Terms sorted strictly descending under the ring's order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub(crate) struct Poly {
    pub terms: Vec<Term>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> &Term {
        &self.terms[0]
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].exp.iter().all(|&e| e == 0)
    }

    pub fn scale(&mut self, c: &Rational) {
        for t in &mut self.terms {
            t.coef *= c;
        }
    }

    /// Divides by the leading coefficient; returns that coefficient.
    pub fn make_monic(&mut self) -> Rational {
        let lc = self.terms[0].coef.clone();
        if !lc.is_one() {
            let inv = lc.recip();
            self.scale(&inv);
        }
        lc
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Ring {
    pub vars: Vec<JetVar>,
    index: HashMap<JetVar, usize>,
    kind: OrderKind,
    split: usize,
}

impl Ring {
    pub fn new(vars: &BTreeSet<JetVar>, order: &MonomialOrder) -> Self {
        let (ranked, split) = order.arrange(vars);
        let index = ranked.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let kind = match &order.kind {
            OrderKind::Block { inner, .. } => (**inner).clone(),
            k => k.clone(),
        };
        let split = match &order.kind {
            OrderKind::Block { .. } => split,
            _ => 0,
        };
        Ring { vars: ranked, index, kind, split }
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn cmp(&self, a: &[u16], b: &[u16]) -> Ordering {
        if self.split == 0 {
            cmp_kind(&self.kind, a, b)
        } else {
            let s = self.split;
            cmp_kind(&self.kind, &a[..s], &b[..s])
                .then_with(|| cmp_kind(&self.kind, &a[s..], &b[s..]))
        }
    }

    pub fn one_exp(&self) -> Exp {
        vec![0u16; self.nvars()].into_boxed_slice()
    }

    pub fn has_vars_of(&self, p: &DiffPoly) -> bool {
        p.variables().iter().all(|v| self.index.contains_key(v))
    }

    pub fn exp_of(&self, m: &Monomial) -> Exp {
        let mut e = self.one_exp();
        for &(v, k) in m.factors() {
            let i = *self.index.get(&v).expect("variable outside the ring");
            e[i] = u16::try_from(k).expect("exponent overflow");
        }
        e
    }

    pub fn monomial_of(&self, e: &[u16]) -> Monomial {
        Monomial::from_factors(
            e.iter().enumerate().filter(|(_, &k)| k > 0).map(|(i, &k)| (self.vars[i], k as u32)),
        )
    }

    pub fn to_dense(&self, p: &DiffPoly) -> Poly {
        let mut terms: Vec<Term> =
            p.terms().map(|(m, c)| Term { exp: self.exp_of(m), coef: c.clone() }).collect();
        terms.sort_by(|a, b| self.cmp(&b.exp, &a.exp));
        Poly { terms }
    }

    pub fn to_sparse(&self, p: &Poly) -> DiffPoly {
        DiffPoly::from_terms(p.terms.iter().map(|t| (self.monomial_of(&t.exp), t.coef.clone())))
    }

    /// `c · x^m · q`.
    pub fn mul_term(&self, q: &Poly, c: &Rational, m: &[u16]) -> Poly {
        Poly {
            terms: q
                .terms
                .iter()
                .map(|t| Term { exp: mul_exp(&t.exp, m), coef: &t.coef * c })
                .collect(),
        }
    }

    /// `p + c · x^m · q`, merging sorted term lists.
    pub fn add_scaled(&self, p: &[Term], c: &Rational, m: &[u16], q: &[Term]) -> Vec<Term> {
        let mut out = Vec::with_capacity(p.len() + q.len());
        let mut i = 0;
        let mut qi = q.iter().map(|t| Term { exp: mul_exp(&t.exp, m), coef: &t.coef * c }).peekable();
        while i < p.len() {
            let Some(next) = qi.peek() else { break };
            match self.cmp(&p[i].exp, &next.exp) {
                Ordering::Greater => {
                    out.push(p[i].clone());
                    i += 1;
                }
                Ordering::Less => out.push(qi.next().expect("peeked")),
                Ordering::Equal => {
                    let t = qi.next().expect("peeked");
                    let s = &p[i].coef + t.coef;
                    if !s.is_zero() {
                        out.push(Term { exp: t.exp, coef: s });
                    }
                    i += 1;
                }
            }
        }
        out.extend_from_slice(&p[i..]);
        out.extend(qi);
        out
    }

    pub fn add_assign_scaled(&self, p: &mut Poly, c: &Rational, m: &[u16], q: &Poly) {
        if c.is_zero() || q.is_zero() {
            return;
        }
        p.terms = self.add_scaled(&p.terms, c, m, &q.terms);
    }

    #[cfg(test)]
    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        let mut out = Poly::zero();
        for t in &a.terms {
            self.add_assign_scaled(&mut out, &t.coef, &t.exp, b);
        }
        out
    }
}

pub(crate) fn mul_exp(a: &[u16], b: &[u16]) -> Exp {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub(crate) fn divides(a: &[u16], b: &[u16]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// `b / a`, assuming `a | b`.
pub(crate) fn div_exp(b: &[u16], a: &[u16]) -> Exp {
    b.iter().zip(a).map(|(y, x)| y - x).collect()
}

pub(crate) fn lcm_exp(a: &[u16], b: &[u16]) -> Exp {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

pub(crate) fn coprime(a: &[u16], b: &[u16]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}
