use std::fmt;

use super::jet::JetVar;

/// A power product of jet variables. Factors are kept sorted by variable
/// with strictly positive exponents, so structural equality is equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    factors: Vec<(JetVar, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { factors: Vec::new() }
    }

    pub fn var(v: JetVar) -> Self {
        Monomial { factors: vec![(v, 1)] }
    }

    pub fn var_pow(v: JetVar, e: u32) -> Self {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial { factors: vec![(v, e)] }
        }
    }

    /// Builds a monomial from arbitrary factors; repeated variables are
    /// merged and zero exponents dropped.
    pub fn from_factors<I: IntoIterator<Item = (JetVar, u32)>>(it: I) -> Self {
        let mut factors: Vec<(JetVar, u32)> = it.into_iter().filter(|&(_, e)| e > 0).collect();
        factors.sort_by_key(|&(v, _)| v);
        let mut merged: Vec<(JetVar, u32)> = Vec::with_capacity(factors.len());
        for (v, e) in factors {
            match merged.last_mut() {
                Some((w, f)) if *w == v => *f += e,
                _ => merged.push((v, e)),
            }
        }
        Monomial { factors: merged }
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn factors(&self) -> &[(JetVar, u32)] {
        &self.factors
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, v: JetVar) -> u32 {
        self.factors
            .binary_search_by_key(&v, |&(w, _)| w)
            .map(|i| self.factors[i].1)
            .unwrap_or(0)
    }

    pub fn vars(&self) -> impl Iterator<Item = JetVar> + '_ {
        self.factors.iter().map(|&(v, _)| v)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.factors, &other.factors);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial { factors: out }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.factors.iter().all(|&(v, e)| other.exponent(v) >= e)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial::from_factors(
            other.factors.iter().map(|&(v, e)| (v, e - self.exponent(v))),
        ))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut f: Vec<(JetVar, u32)> = self.factors.clone();
        for &(v, e) in &other.factors {
            match f.binary_search_by_key(&v, |&(w, _)| w) {
                Ok(i) => f[i].1 = f[i].1.max(e),
                Err(i) => f.insert(i, (v, e)),
            }
        }
        Monomial { factors: f }
    }

    /// Removes `v` once; `None` if `v` does not occur.
    pub fn without_one(&self, v: JetVar) -> Option<(u32, Monomial)> {
        let i = self.factors.binary_search_by_key(&v, |&(w, _)| w).ok()?;
        let e = self.factors[i].1;
        let mut factors = self.factors.clone();
        if e == 1 {
            factors.remove(i);
        } else {
            factors[i].1 -= 1;
        }
        Some((e, Monomial { factors }))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        // print greatest variable first so the output reads naturally
        for (k, &(v, e)) in self.factors.iter().rev().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}
