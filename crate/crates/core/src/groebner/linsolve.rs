//! Exact sparse linear solving over ℚ by fraction-free elimination.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::ring::Rational;

type Row = BTreeMap<usize, BigInt>;

/// Integer row with the same solution set as a rational row.
fn integral(row: &BTreeMap<usize, Rational>) -> Row {
    let l = row.values().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    row.iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(&k, c)| (k, c.numer() * (&l / c.denom())))
        .collect()
}

fn primitive(row: &mut Row) {
    let g = row.values().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if !g.is_zero() && !g.is_one() {
        for c in row.values_mut() {
            *c /= &g;
        }
    }
}

/// `a·r − b·p`, dropping zeros.
fn combine(r: &Row, a: &BigInt, p: &Row, b: &BigInt) -> Row {
    let mut out: Row = r.iter().map(|(&k, c)| (k, c * a)).collect();
    for (&k, c) in p {
        let e = out.entry(k).or_insert_with(BigInt::zero);
        *e -= c * b;
        if e.is_zero() {
            out.remove(&k);
        }
    }
    out
}

/// Solves `Σ_j rows[i][j] · y_j = rhs[i]` for `ncols` unknowns. Returns one
/// solution (free unknowns set to zero) or `None` if inconsistent.
pub(crate) fn solve(rows: &[BTreeMap<usize, Rational>], rhs: &[Rational], ncols: usize) -> Option<Vec<Rational>> {
    let rhs_col = ncols;
    let mut pivots: HashMap<usize, Row> = HashMap::new();
    for (row, b) in rows.iter().zip(rhs) {
        let mut aug = row.clone();
        if !b.is_zero() {
            aug.insert(rhs_col, b.clone());
        }
        let mut r = integral(&aug);
        loop {
            let Some((&lead, _)) = r.iter().next() else { break };
            if lead == rhs_col {
                return None;
            }
            match pivots.get(&lead) {
                Some(p) => {
                    let (a, b) = (&p[&lead], &r[&lead]);
                    let g = a.gcd(b);
                    r = combine(&r, &(a / &g), p, &(b / &g));
                    primitive(&mut r);
                }
                None => {
                    primitive(&mut r);
                    pivots.insert(lead, r);
                    break;
                }
            }
        }
    }
    let mut cols: Vec<usize> = pivots.keys().copied().collect();
    cols.sort_unstable_by(|a, b| b.cmp(a));
    let mut y = vec![Rational::zero(); ncols];
    for c in cols {
        let p = &pivots[&c];
        let mut acc = p.get(&rhs_col).map(|v| Rational::from_integer(v.clone())).unwrap_or_else(Rational::zero);
        for (&k, v) in p.range(c + 1..rhs_col) {
            if !y[k].is_zero() {
                acc -= &y[k] * Rational::from_integer(v.clone());
            }
        }
        y[c] = acc / Rational::from_integer(p[&c].clone());
    }
    debug_assert!(y.iter().all(|v| !v.denom().is_negative()));
    Some(y)
}
