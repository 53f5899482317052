//! Differential indeterminates and their jets.

use std::fmt;

/// The three kinds of differential variables. Declaration order is the
/// default ranking: `Aux > Control > State`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// `x<k>`: variables governed by an explicit ODE.
    State,
    /// `u<k>`: algebraic inputs.
    Control,
    /// `y<k>`: auxiliary variables created by transforms.
    Aux,
}

impl Family {
    pub fn prefix(self) -> char {
        match self {
            Family::State => 'x',
            Family::Control => 'u',
            Family::Aux => 'y',
        }
    }

    pub fn from_prefix(c: char) -> Option<Self> {
        match c {
            'x' => Some(Family::State),
            'u' => Some(Family::Control),
            'y' => Some(Family::Aux),
            _ => None,
        }
    }
}

/// A differential variable such as `x1` or `u3`, independent of derivative order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DiffVar {
    pub family: Family,
    pub index: u32,
}

impl DiffVar {
    pub const fn new(family: Family, index: u32) -> Self {
        DiffVar { family, index }
    }

    pub const fn state(index: u32) -> Self {
        DiffVar::new(Family::State, index)
    }

    pub const fn control(index: u32) -> Self {
        DiffVar::new(Family::Control, index)
    }

    pub const fn aux(index: u32) -> Self {
        DiffVar::new(Family::Aux, index)
    }

    /// The jet `self^(order)`.
    pub const fn jet(self, order: u32) -> JetVar {
        JetVar { order, var: self }
    }
}

impl fmt::Display for DiffVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.prefix(), self.index)
    }
}

/// A jet variable `v^(j)`: an independent polynomial indeterminate.
///
/// The derived ordering is the default ranking used by every monomial
/// order: higher derivative order first, then family, then base index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JetVar {
    order: u32,
    var: DiffVar,
}

impl JetVar {
    pub const fn new(var: DiffVar, order: u32) -> Self {
        JetVar { order, var }
    }

    pub const fn var(self) -> DiffVar {
        self.var
    }

    pub const fn family(self) -> Family {
        self.var.family
    }

    pub const fn base_index(self) -> u32 {
        self.var.index
    }

    pub const fn der_order(self) -> u32 {
        self.order
    }

    /// The next derivative, `v^(j+1)`.
    pub const fn derivative(self) -> JetVar {
        JetVar { order: self.order + 1, var: self.var }
    }
}

impl fmt::Display for JetVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.order {
            0 => write!(f, "{}", self.var),
            1 => write!(f, "{}'", self.var),
            j => write!(f, "{}^({})", self.var, j),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_ranking() {
        let x1 = DiffVar::state(1);
        let u1 = DiffVar::control(1);
        let y1 = DiffVar::aux(1);
        // higher derivative order dominates everything
        assert!(x1.jet(1) > u1.jet(0));
        assert!(x1.jet(2) > y1.jet(1));
        // then family
        assert!(y1.jet(0) > u1.jet(0));
        assert!(u1.jet(0) > x1.jet(0));
        // then index
        assert!(DiffVar::state(2).jet(0) > x1.jet(0));
    }

    #[test]
    fn display() {
        assert_eq!(DiffVar::state(1).jet(0).to_string(), "x1");
        assert_eq!(DiffVar::control(2).jet(1).to_string(), "u2'");
        assert_eq!(DiffVar::aux(3).jet(4).to_string(), "y3^(4)");
    }
}
