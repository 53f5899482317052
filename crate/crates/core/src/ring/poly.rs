//! Sparse polynomials with exact rational coefficients in jet variables.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::jet::JetVar;
use super::monomial::Monomial;
use super::order::MonomialOrder;
use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// A differential polynomial: a finite map from monomials to nonzero
/// rationals. `BigRational` keeps every coefficient reduced with a positive
/// denominator, so two polynomials are equal iff their maps are equal.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct DiffPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl DiffPoly {
    pub fn zero() -> Self {
        DiffPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        DiffPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        DiffPoly::term(c, Monomial::one())
    }

    pub fn int(n: i64) -> Self {
        DiffPoly::constant(rat(n))
    }

    pub fn var(v: JetVar) -> Self {
        DiffPoly::term(Rational::one(), Monomial::var(v))
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        DiffPoly { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(it: I) -> Self {
        let mut p = DiffPoly::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    /// `Some(c)` when the polynomial is the constant `c` (including 0).
    pub fn constant_value(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.constant_value().is_some()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Total degree; 0 for constants and for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn variables(&self) -> BTreeSet<JetVar> {
        self.terms.keys().flat_map(|m| m.vars()).collect()
    }

    /// Greatest term under `order`. The zero polynomial has no leading term.
    pub fn leading_term(&self, order: &MonomialOrder) -> Result<(Monomial, Rational)> {
        let (m, c) = self
            .terms
            .iter()
            .max_by(|a, b| order.cmp(a.0, b.0))
            .ok_or(Error::ZeroPolynomial("leading_term"))?;
        Ok((m.clone(), c.clone()))
    }

    pub fn leading_monomial(&self, order: &MonomialOrder) -> Result<Monomial> {
        self.leading_term(order).map(|(m, _)| m)
    }

    /// Terms sorted from greatest to smallest under `order`.
    pub fn sorted_terms(&self, order: &MonomialOrder) -> Vec<(Monomial, Rational)> {
        let mut v: Vec<(Monomial, Rational)> =
            self.terms.iter().map(|(m, c)| (m.clone(), c.clone())).collect();
        v.sort_by(|a, b| order.cmp(&b.0, &a.0));
        v
    }

    pub fn scale(&self, c: &Rational) -> DiffPoly {
        if c.is_zero() {
            return DiffPoly::zero();
        }
        DiffPoly {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_term(&self, c: &Rational, m: &Monomial) -> DiffPoly {
        if c.is_zero() {
            return DiffPoly::zero();
        }
        DiffPoly {
            terms: self.terms.iter().map(|(n, a)| (n.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> DiffPoly {
        let mut result = DiffPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Formal partial derivative with respect to a single jet variable.
    pub fn partial_derivative(&self, v: JetVar) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (m, c) in &self.terms {
            if let Some((e, rest)) = m.without_one(v) {
                out.add_term(rest, c * rat(e as i64));
            }
        }
        out
    }

    /// Divides by the leading coefficient under `order`.
    pub fn monic(&self, order: &MonomialOrder) -> DiffPoly {
        match self.leading_term(order) {
            Ok((_, c)) => self.scale(&c.recip()),
            Err(_) => DiffPoly::zero(),
        }
    }

    /// Exact division by a constant.
    pub fn div_const(&self, c: &Rational) -> DiffPoly {
        self.scale(&c.recip())
    }
}

impl From<JetVar> for DiffPoly {
    fn from(v: JetVar) -> Self {
        DiffPoly::var(v)
    }
}

impl From<i64> for DiffPoly {
    fn from(n: i64) -> Self {
        DiffPoly::int(n)
    }
}

impl<'a> Add<&'a DiffPoly> for &'a DiffPoly {
    type Output = DiffPoly;
    fn add(self, rhs: &DiffPoly) -> DiffPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<'a> Sub<&'a DiffPoly> for &'a DiffPoly {
    type Output = DiffPoly;
    fn sub(self, rhs: &DiffPoly) -> DiffPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<'a> Mul<&'a DiffPoly> for &'a DiffPoly {
    type Output = DiffPoly;
    fn mul(self, rhs: &DiffPoly) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (m, a) in &self.terms {
            for (n, b) in &rhs.terms {
                out.add_term(m.mul(n), a * b);
            }
        }
        out
    }
}

impl Neg for &DiffPoly {
    type Output = DiffPoly;
    fn neg(self) -> DiffPoly {
        DiffPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for DiffPoly {
    type Output = DiffPoly;
    fn neg(self) -> DiffPoly {
        -&self
    }
}

impl AddAssign<&DiffPoly> for DiffPoly {
    fn add_assign(&mut self, rhs: &DiffPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&DiffPoly> for DiffPoly {
    fn sub_assign(&mut self, rhs: &DiffPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<DiffPoly> for DiffPoly {
            type Output = DiffPoly;
            fn $f(self, rhs: DiffPoly) -> DiffPoly {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&DiffPoly> for DiffPoly {
            type Output = DiffPoly;
            fn $f(self, rhs: &DiffPoly) -> DiffPoly {
                (&self).$f(rhs)
            }
        }
        impl $tr<DiffPoly> for &DiffPoly {
            type Output = DiffPoly;
            fn $f(self, rhs: DiffPoly) -> DiffPoly {
                self.$f(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

pub(crate) fn fmt_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Canonical text form: terms from greatest to smallest in the default
/// DegRevLex order, `*` between factors, rational coefficients as `a/b`.
impl fmt::Display for DiffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let order = MonomialOrder::degrevlex();
        for (k, (m, c)) in self.sorted_terms(&order).into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{}", fmt_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", fmt_rational(&abs))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::jet::DiffVar;

    fn x1() -> DiffPoly {
        DiffPoly::var(DiffVar::state(1).jet(0))
    }
    fn u1() -> DiffPoly {
        DiffPoly::var(DiffVar::control(1).jet(0))
    }

    #[test]
    fn cancellation() {
        let p = (&x1() + &DiffPoly::one()) + (-x1());
        assert_eq!(p, DiffPoly::one());
    }

    #[test]
    fn difference_of_squares() {
        let p = (&x1() - &u1()) * (&x1() + &u1());
        assert_eq!(p, x1().pow(2) - u1().pow(2));
    }

    #[test]
    fn rational_product() {
        let a = x1().pow(2).scale(&ratio(1, 2));
        let b = x1().scale(&ratio(2, 3));
        assert_eq!(&a * &b, x1().pow(3).scale(&ratio(1, 3)));
    }

    #[test]
    fn partial_derivatives() {
        let x = DiffVar::state(1).jet(0);
        let p = x1().pow(2) * u1();
        assert_eq!(p.partial_derivative(x), (x1() * u1()).scale(&rat(2)));
        assert!(u1().pow(3).partial_derivative(x).is_zero());
        let x2 = DiffPoly::var(DiffVar::state(1).jet(2));
        assert_eq!((&x2 * &x1()).partial_derivative(DiffVar::state(1).jet(2)), x1());
    }

    #[test]
    fn degree_and_leading_term() {
        assert_eq!((x1().pow(2) * u1() + x1()).degree(), 3);
        assert_eq!(DiffPoly::int(7).degree(), 0);
        let order = MonomialOrder::degrevlex()
            .with_priority(vec![DiffVar::control(1).jet(0), DiffVar::state(1).jet(0)]);
        let (m, c) = (x1() + u1().pow(2)).leading_term(&order).unwrap();
        assert_eq!(m, Monomial::var_pow(DiffVar::control(1).jet(0), 2));
        assert!(c.is_one());
        assert!(DiffPoly::zero().leading_term(&order).is_err());
    }

    #[test]
    fn display() {
        let p = x1().pow(2).scale(&ratio(3, 2)) - u1() + DiffPoly::int(-4);
        assert_eq!(p.to_string(), "3/2*x1^2 - u1 - 4");
        assert_eq!(DiffPoly::zero().to_string(), "0");
    }
}
