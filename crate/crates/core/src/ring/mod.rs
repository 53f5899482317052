//! Exact multivariate polynomial arithmetic over ℚ in jet variables.

mod jet;
mod monomial;
mod order;
mod poly;
mod univariate;

pub use jet::{DiffVar, Family, JetVar};
pub use monomial::Monomial;
pub use order::{MonomialOrder, OrderKind};
pub(crate) use order::cmp_kind;
pub use poly::{rat, ratio, DiffPoly, Rational};
pub use univariate::Univariate;
