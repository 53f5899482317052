//! Dense univariate polynomials over the rationals, used for eliminants.

use num_traits::{One, Zero};

use super::jet::JetVar;
use super::monomial::Monomial;
use super::poly::{rat, DiffPoly, Rational};

/// Coefficients from constant term upward, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Univariate {
    coeffs: Vec<Rational>,
}

impl Univariate {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Univariate { coeffs }
    }

    /// `None` if `p` involves any variable other than `v`.
    pub fn from_poly(p: &DiffPoly, v: JetVar) -> Option<Self> {
        let mut coeffs = vec![Rational::zero(); p.degree() as usize + 1];
        for (m, c) in p.terms() {
            let e = m.exponent(v);
            if m.degree() != e {
                return None;
            }
            coeffs[e as usize] = c.clone();
        }
        Some(Univariate::new(coeffs))
    }

    pub fn to_poly(&self, v: JetVar) -> DiffPoly {
        DiffPoly::from_terms(
            self.coeffs.iter().enumerate().map(|(e, c)| (Monomial::var_pow(v, e as u32), c.clone())),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; −1 for the zero polynomial.
    pub fn degree(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    fn lead(&self) -> &Rational {
        self.coeffs.last().expect("nonzero")
    }

    pub fn derivative(&self) -> Univariate {
        Univariate::new(
            self.coeffs.iter().enumerate().skip(1).map(|(e, c)| c * rat(e as i64)).collect(),
        )
    }

    pub fn monic(&self) -> Univariate {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.lead().clone();
        Univariate::new(self.coeffs.iter().map(|c| c / &l).collect())
    }

    /// Euclidean division: `(q, r)` with `self = q*d + r`, `deg r < deg d`.
    pub fn div_rem(&self, d: &Univariate) -> (Univariate, Univariate) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut r = self.coeffs.clone();
        let dd = d.coeffs.len();
        if r.len() < dd {
            return (Univariate::new(vec![]), self.clone());
        }
        let mut q = vec![Rational::zero(); r.len() - dd + 1];
        let lead = d.lead();
        for k in (0..q.len()).rev() {
            let c = &r[k + dd - 1] / lead;
            if !c.is_zero() {
                for (i, dc) in d.coeffs.iter().enumerate() {
                    r[k + i] -= &c * dc;
                }
            }
            q[k] = c;
        }
        r.truncate(dd - 1);
        (Univariate::new(q), Univariate::new(r))
    }

    pub fn gcd(&self, other: &Univariate) -> Univariate {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `h / gcd(h, h')`, monic.
    pub fn squarefree_part(&self) -> Univariate {
        if self.degree() <= 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    pub fn is_squarefree(&self) -> bool {
        self.degree() <= 0 || self.gcd(&self.derivative()).degree() == 0
    }
}

impl One for Univariate {
    fn one() -> Self {
        Univariate::new(vec![Rational::one()])
    }
}

impl std::ops::Mul for Univariate {
    type Output = Univariate;
    fn mul(self, rhs: Univariate) -> Univariate {
        if self.is_zero() || rhs.is_zero() {
            return Univariate::new(vec![]);
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Univariate::new(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(c: &[i64]) -> Univariate {
        Univariate::new(c.iter().map(|&n| rat(n)).collect())
    }

    #[test]
    fn squarefree() {
        // x^2 -> x
        assert_eq!(u(&[0, 0, 1]).squarefree_part(), u(&[0, 1]));
        // x^2 - x already squarefree
        assert_eq!(u(&[0, -1, 1]).squarefree_part(), u(&[0, -1, 1]));
        // (x-1)^2 (x+2) -> (x-1)(x+2) = x^2 + x - 2
        let p = u(&[-1, 1]) * u(&[-1, 1]) * u(&[2, 1]);
        assert_eq!(p.squarefree_part(), u(&[-2, 1, 1]));
        assert!(!p.is_squarefree());
    }

    #[test]
    fn division() {
        let (q, r) = u(&[1, 0, 1]).div_rem(&u(&[1, 1]));
        assert_eq!(q, u(&[-1, 1]));
        assert_eq!(r, u(&[2]));
    }
}
