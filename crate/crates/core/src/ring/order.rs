//! Monomial orders over jet variables.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use super::jet::JetVar;
use super::monomial::Monomial;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrderKind {
    DegRevLex,
    Lex,
    /// Elimination order: monomials are compared on `eliminate` first,
    /// then on the remaining variables, both with `inner`.
    Block {
        eliminate: BTreeSet<JetVar>,
        inner: Box<OrderKind>,
    },
}

/// A monomial order together with a total ranking of the variables.
///
/// Variables listed in `priority` rank above all others, earlier entries
/// higher; everything else follows the default [`JetVar`] ranking.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialOrder {
    pub kind: OrderKind,
    pub priority: Vec<JetVar>,
}

impl Default for MonomialOrder {
    fn default() -> Self {
        MonomialOrder::degrevlex()
    }
}

impl MonomialOrder {
    pub fn degrevlex() -> Self {
        MonomialOrder { kind: OrderKind::DegRevLex, priority: Vec::new() }
    }

    pub fn lex() -> Self {
        MonomialOrder { kind: OrderKind::Lex, priority: Vec::new() }
    }

    /// Block order eliminating `drop`, DegRevLex inside each block.
    pub fn eliminating<I: IntoIterator<Item = JetVar>>(drop: I) -> Self {
        MonomialOrder {
            kind: OrderKind::Block {
                eliminate: drop.into_iter().collect(),
                inner: Box::new(OrderKind::DegRevLex),
            },
            priority: Vec::new(),
        }
    }

    pub fn with_priority(mut self, priority: Vec<JetVar>) -> Self {
        self.priority = priority;
        self
    }

    /// Compares two variables in the ranking; `Greater` means `a` ranks higher.
    pub fn var_cmp(&self, a: JetVar, b: JetVar) -> Ordering {
        let pa = self.priority.iter().position(|&v| v == a);
        let pb = self.priority.iter().position(|&v| v == b);
        match (pa, pb) {
            (Some(i), Some(j)) => j.cmp(&i),
            (Some(_), None) => Ordering::Greater,
            (None, Some(_)) => Ordering::Less,
            (None, None) => a.cmp(&b),
        }
    }

    /// Sorts variables from highest to lowest rank, placing eliminated
    /// variables of a block order in front. The returned split index marks
    /// the end of the eliminated block (0 for non-block orders).
    pub fn arrange(&self, vars: &BTreeSet<JetVar>) -> (Vec<JetVar>, usize) {
        let mut sorted: Vec<JetVar> = vars.iter().copied().collect();
        sorted.sort_by(|&a, &b| self.var_cmp(b, a));
        match &self.kind {
            OrderKind::Block { eliminate, .. } => {
                let (mut front, back): (Vec<_>, Vec<_>) =
                    sorted.into_iter().partition(|v| eliminate.contains(v));
                let split = front.len();
                front.extend(back);
                (front, split)
            }
            _ => (sorted, 0),
        }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let vars: BTreeSet<JetVar> = a.vars().chain(b.vars()).collect();
        let (ranked, split) = self.arrange(&vars);
        let ea: Vec<u32> = ranked.iter().map(|&v| a.exponent(v)).collect();
        let eb: Vec<u32> = ranked.iter().map(|&v| b.exponent(v)).collect();
        match &self.kind {
            OrderKind::Block { inner, .. } => {
                cmp_kind(inner, &ea[..split], &eb[..split])
                    .then_with(|| cmp_kind(inner, &ea[split..], &eb[split..]))
            }
            kind => cmp_kind(kind, &ea, &eb),
        }
    }
}

/// Compares exponent vectors whose entries run from highest to lowest ranked
/// variable.
pub(crate) fn cmp_kind<E: Copy + Ord + Into<u64>>(kind: &OrderKind, a: &[E], b: &[E]) -> Ordering {
    match kind {
        OrderKind::Lex => a.cmp(b),
        OrderKind::DegRevLex => {
            let da: u64 = a.iter().map(|&e| e.into()).sum();
            let db: u64 = b.iter().map(|&e| e.into()).sum();
            da.cmp(&db).then_with(|| {
                for (x, y) in a.iter().zip(b).rev() {
                    if x != y {
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            })
        }
        // nested blocks are flattened to their inner order
        OrderKind::Block { inner, .. } => cmp_kind(inner, a, b),
    }
}
