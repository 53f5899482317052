//! Order reduction to first-order semiexplicit form, and the Rabinowitsch
//! transform.

use std::collections::{BTreeMap, BTreeSet};

use crate::diffcore::{max_order, order_of, substitute};
use crate::error::{Error, Result};
use crate::ring::{DiffPoly, DiffVar, Family, JetVar};
use crate::text::{Equation, InputDocument};

/// `f₁ = … = f_s = 0` in the differential variables `vars`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralSystem {
    pub vars: Vec<DiffVar>,
    pub equations: Vec<DiffPoly>,
}

impl GeneralSystem {
    /// Every declared variable is treated as an unknown.
    pub fn from_document(doc: &InputDocument) -> Self {
        let vars = doc.states.iter().chain(&doc.controls).chain(&doc.aux).copied().collect();
        GeneralSystem { vars, equations: doc.generators() }
    }

    pub fn order(&self) -> u32 {
        max_order(&self.equations)
    }
}

/// `ẋ = f(x, u)`, `g(x, u) = 0`, with `rhs[i]` the right side for `states[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemiexplicitSystem {
    pub states: Vec<DiffVar>,
    pub controls: Vec<DiffVar>,
    pub rhs: Vec<DiffPoly>,
    pub constraints: Vec<DiffPoly>,
}

impl SemiexplicitSystem {
    pub fn new(
        states: Vec<DiffVar>,
        controls: Vec<DiffVar>,
        rhs: Vec<DiffPoly>,
        constraints: Vec<DiffPoly>,
    ) -> Result<Self> {
        if states.len() != rhs.len() {
            return Err(Error::NotSemiexplicit(format!("{} states but {} right sides", states.len(), rhs.len())));
        }
        let known: BTreeSet<DiffVar> = states.iter().chain(&controls).copied().collect();
        for p in rhs.iter().chain(&constraints) {
            let order = order_of(p, None);
            if order > 0 {
                return Err(Error::PositiveOrder(order));
            }
            if let Some(v) = p.variables().into_iter().find(|v| !known.contains(&v.var())) {
                return Err(Error::NotSemiexplicit(format!("`{v}` is neither a state nor a control")));
            }
        }
        Ok(SemiexplicitSystem { states, controls, rhs, constraints })
    }

    /// Requires one `ode:` line per state and no `diff:` lines. Auxiliary
    /// variables count as controls.
    pub fn from_document(doc: &InputDocument) -> Result<Self> {
        let mut rhs = BTreeMap::new();
        let mut constraints = Vec::new();
        for eq in &doc.equations {
            match eq {
                Equation::Ode(x, f) => {
                    rhs.insert(*x, f.clone());
                }
                Equation::Eq(g) => constraints.push(g.clone()),
                Equation::Diff(_) => return Err(Error::NotSemiexplicit("`diff:` lines present".into())),
            }
        }
        let mut rhs_vec = Vec::new();
        for x in &doc.states {
            match rhs.remove(x) {
                Some(f) => rhs_vec.push(f),
                None => return Err(Error::NotSemiexplicit(format!("state `{x}` has no ode line"))),
            }
        }
        let controls = doc.controls.iter().chain(&doc.aux).copied().collect();
        SemiexplicitSystem::new(doc.states.clone(), controls, rhs_vec, constraints)
    }

    /// `ẋ_i − f_i` for each state, then the constraints.
    pub fn generators(&self) -> Vec<DiffPoly> {
        let mut out: Vec<DiffPoly> =
            self.states.iter().zip(&self.rhs).map(|(x, f)| &DiffPoly::var(x.jet(1)) - f).collect();
        out.extend(self.constraints.iter().cloned());
        out
    }

    /// The order-0 variables `x, u`.
    pub fn algebraic_vars(&self) -> BTreeSet<JetVar> {
        self.states.iter().chain(&self.controls).map(|v| v.jet(0)).collect()
    }

    pub fn degree(&self) -> u32 {
        self.generators().iter().map(DiffPoly::degree).max().unwrap_or(0)
    }
}

/// Names for the reduction variables: `z_{i,j}` stands for `x_i^(j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BackMap {
    /// `(original variable, j, z variable)`.
    pub entries: Vec<(DiffVar, u32, DiffVar)>,
    pub order: u32,
}

impl BackMap {
    pub fn z(&self, x: DiffVar, j: u32) -> Option<DiffVar> {
        self.entries.iter().find(|(v, jj, _)| *v == x && *jj == j).map(|e| e.2)
    }

    /// `z_{i,j}^(k) ↦ x_i^(j+k)`; other jets are left alone.
    pub fn map_jet(&self, v: JetVar) -> JetVar {
        match self.entries.iter().find(|e| e.2 == v.var()) {
            Some(&(x, j, _)) => x.jet(j + v.der_order()),
            None => v,
        }
    }

    pub fn map_poly(&self, p: &DiffPoly) -> DiffPoly {
        let map: BTreeMap<JetVar, DiffPoly> =
            p.variables().into_iter().map(|v| (v, DiffPoly::var(self.map_jet(v)))).collect();
        substitute(p, &map)
    }
}

/// Rewrites an order-`e` system (`e ≥ 1`) in the `n(e+1)` variables
/// `z_{i,j} = x_i^(j)`: odes `ż_{i,j} = z_{i,j+1}` for `j < e` and the
/// constraints `f(z)`. The `z` are fresh auxiliary variables; `z_{i,e}`
/// play the role of controls.
pub fn to_first_order(sys: &GeneralSystem) -> Result<(SemiexplicitSystem, BackMap)> {
    let e = sys.order();
    if e == 0 {
        return Err(Error::ZeroOrderSystem);
    }
    let mut entries = Vec::new();
    let mut next = sys.vars.iter().filter(|v| v.family == Family::Aux).map(|v| v.index).max().unwrap_or(0) + 1;
    for &x in &sys.vars {
        for j in 0..=e {
            entries.push((x, j, DiffVar::aux(next)));
            next += 1;
        }
    }
    let back = BackMap { entries, order: e };
    let forward: BTreeMap<JetVar, DiffPoly> =
        back.entries.iter().map(|&(x, j, z)| (x.jet(j), DiffPoly::var(z.jet(0)))).collect();
    let constraints = sys
        .equations
        .iter()
        .map(|f| {
            if let Some(v) = f.variables().into_iter().find(|v| !sys.vars.contains(&v.var())) {
                return Err(Error::NotSemiexplicit(format!("`{v}` is not a system variable")));
            }
            Ok(substitute(f, &forward))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut states = Vec::new();
    let mut controls = Vec::new();
    let mut rhs = Vec::new();
    for &x in &sys.vars {
        for j in 0..e {
            states.push(back.z(x, j).expect("allocated"));
            rhs.push(DiffPoly::var(back.z(x, j + 1).expect("allocated").jet(0)));
        }
        controls.push(back.z(x, e).expect("allocated"));
    }
    Ok((SemiexplicitSystem { states, controls, rhs, constraints }, back))
}

/// `F ∪ {1 − y·f}` with `y` a fresh auxiliary variable, indexed above
/// every auxiliary variable already present.
pub fn rabinowitsch(sys: &[DiffPoly], f: &DiffPoly) -> Result<(Vec<DiffPoly>, DiffVar)> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial("Rabinowitsch transform"));
    }
    let top = sys
        .iter()
        .chain(std::iter::once(f))
        .flat_map(|p| p.variables())
        .filter(|v| v.family() == Family::Aux)
        .map(|v| v.base_index())
        .max()
        .unwrap_or(0);
    let y = DiffVar::aux(top + 1);
    let mut out = sys.to_vec();
    out.push(&DiffPoly::one() - &(&DiffPoly::var(y.jet(0)) * f));
    Ok((out, y))
}
