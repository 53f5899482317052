#![allow(dead_code)]

use std::path::PathBuf;

use dnss::groebner::{buchberger, contains_one, macaulay_membership, GroebnerBasis};
use dnss::reduce::SemiexplicitSystem;
use dnss::ring::{DiffPoly, DiffVar, JetVar, Monomial, MonomialOrder, Rational};
use dnss::text::{parse, parse_poly, InputDocument};
use proptest::prelude::*;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn corpus_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/corpus").join(format!("{name}.dnss"))
}

pub fn corpus(name: &str) -> InputDocument {
    parse(&std::fs::read_to_string(corpus_path(name)).expect("corpus file")).expect("corpus parses")
}

pub const ALL_CORPUS: [&str; 12] = [
    "chain2",
    "chain3",
    "circle",
    "claim",
    "control_axis",
    "gkos1",
    "gkos2",
    "harmonic",
    "idempotent",
    "pendulum_fixed",
    "second_order",
    "square",
];

/// `(name, L_min)`, `None` for systems with a solution.
pub const DECIDE_EXPECTED: [(&str, Option<u32>); 11] = [
    ("chain2", Some(2)),
    ("chain3", Some(3)),
    ("circle", None),
    ("claim", Some(1)),
    ("control_axis", None),
    ("gkos1", Some(4)),
    ("gkos2", Some(8)),
    ("harmonic", None),
    ("idempotent", Some(1)),
    ("pendulum_fixed", Some(1)),
    ("second_order", Some(2)),
];

pub fn p(s: &str) -> DiffPoly {
    parse_poly(s).expect("valid polynomial")
}

pub fn ps(v: &[&str]) -> Vec<DiffPoly> {
    v.iter().map(|s| p(s)).collect()
}

/// `ẋ₁ = 1, u_m = x₁², u_{k} = u_{k+1}², u₁² = 0`.
pub fn gkos(m: u32) -> Vec<DiffPoly> {
    let mut eqs = vec!["x1' - 1".to_string(), format!("u{m} - x1^2")];
    for k in (1..m).rev() {
        eqs.push(format!("u{k} - u{}^2", k + 1));
    }
    eqs.push("u1^2".to_string());
    eqs.iter().map(|s| p(s)).collect()
}

fn semi(states: u32, controls: u32, rhs: &[&str], g: &[&str]) -> SemiexplicitSystem {
    SemiexplicitSystem::new(
        (1..=states).map(DiffVar::state).collect(),
        (1..=controls).map(DiffVar::control).collect(),
        ps(rhs),
        ps(g),
    )
    .expect("semiexplicit")
}

/// Systems whose constraints define a radical zero-dimensional ideal with
/// no point where the vector field vanishes.
pub fn zero_dim_suite() -> Vec<SemiexplicitSystem> {
    vec![
        semi(1, 0, &["1"], &["x1^2 - x1"]),
        semi(1, 0, &["2"], &["x1^3 - x1"]),
        semi(1, 0, &["x1 + 5"], &["x1^2 - 1"]),
        semi(1, 0, &["x1^2 + 1"], &["x1^4 - 5*x1^2 + 4"]),
        semi(2, 0, &["x2", "1"], &["x1^2 - 1", "x2^2 - 4"]),
        semi(2, 0, &["x1 - x2", "x1"], &["x1^2 - 1", "x2"]),
        semi(1, 1, &["u1"], &["u1^2 - 1", "x1^3 - x1"]),
        semi(1, 1, &["u1 + x1"], &["u1 - 1", "x1^2 - x1"]),
        semi(2, 1, &["u1", "x1*u1"], &["u1^2 - 4", "x1 - u1", "x2^2 - 1"]),
        semi(1, 2, &["u1*u2"], &["u1^2 - 1", "u2^2 - 9", "x1 + 1/2"]),
    ]
}

/// A random ideal in at most three variables, degree at most three, with
/// at most three generators; about a third are made inconsistent on purpose.
pub fn random_instance(rng: &mut ChaCha8Rng) -> Vec<DiffPoly> {
    let pool = [DiffVar::state(1).jet(0), DiffVar::state(2).jet(0), DiffVar::control(1).jet(0)];
    let nvars = rng.gen_range(1..=3);
    let vars = &pool[..nvars];
    let rand_poly = |rng: &mut ChaCha8Rng, deg: u32| {
        let mut q = DiffPoly::zero();
        for _ in 0..rng.gen_range(1..=3) {
            let mut m = Monomial::one();
            let d = rng.gen_range(0..=deg);
            for _ in 0..d {
                m = m.mul(&Monomial::var(vars[rng.gen_range(0..vars.len())]));
            }
            let c = loop {
                let c: i64 = rng.gen_range(-3..=3);
                if c != 0 {
                    break c;
                }
            };
            q.add_term(m, Rational::from_integer(c.into()));
        }
        q
    };
    let ngens = rng.gen_range(1..=3);
    if ngens >= 2 && rng.gen_bool(0.35) {
        let g1 = rand_poly(rng, 2);
        let g2 = rand_poly(rng, 2);
        let a = rand_poly(rng, 1);
        let b = rand_poly(rng, 1);
        let c = DiffPoly::int(rng.gen_range(1..=4));
        let last = &(&c - &(&a * &g1)) - &(&b * &g2);
        let mut out = vec![g1, g2];
        if !last.is_zero() {
            out.push(last);
        }
        return out;
    }
    (0..ngens).map(|_| rand_poly(rng, 3)).filter(|q| !q.is_zero()).collect()
}

pub struct OracleTally {
    pub cases: usize,
    pub units: usize,
    pub disagreements: Vec<String>,
}

/// Runs both membership routes for `1` on `n` random instances.
pub fn oracle_equivalence(seed: u64, n: usize) -> OracleTally {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tally = OracleTally { cases: 0, units: 0, disagreements: Vec::new() };
    while tally.cases < n {
        let gens = random_instance(&mut rng);
        if gens.is_empty() {
            continue;
        }
        tally.cases += 1;
        let cap = gens.iter().map(DiffPoly::degree).max().unwrap_or(0) + 4;
        let ours = contains_one(&gens);
        let theirs = macaulay_membership(&DiffPoly::one(), &gens, cap);
        if let Some(w) = &ours {
            tally.units += 1;
            if !w.verify(&gens) {
                tally.disagreements.push(format!("witness does not verify: {gens:?}"));
            }
        }
        if let Some(w) = &theirs {
            if !w.verify(&gens) {
                tally.disagreements.push(format!("oracle witness does not verify: {gens:?}"));
            }
        }
        if ours.is_some() != theirs.is_some() {
            let shown: Vec<String> = gens.iter().map(ToString::to_string).collect();
            tally.disagreements.push(format!(
                "[{}]: buchberger {} / macaulay {} at cap {cap}",
                shown.join(", "),
                ours.is_some(),
                theirs.is_some()
            ));
        }
    }
    tally
}

// ---- property-test strategies and checks ----

pub fn arb_jet() -> impl Strategy<Value = JetVar> {
    (0u32..3, 1u32..3, 0u32..3).prop_map(|(fam, idx, ord)| {
        let v = match fam {
            0 => DiffVar::state(idx),
            1 => DiffVar::control(idx),
            _ => DiffVar::aux(idx),
        };
        v.jet(ord)
    })
}

pub fn arb_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

pub fn arb_monomial(vars: impl Strategy<Value = JetVar>) -> impl Strategy<Value = Monomial> {
    prop::collection::vec((vars, 1u32..3), 0..3)
        .prop_map(|fs| fs.into_iter().fold(Monomial::one(), |m, (v, e)| m.mul(&Monomial::var_pow(v, e))))
}

pub fn arb_poly() -> impl Strategy<Value = DiffPoly> {
    prop::collection::vec((arb_monomial(arb_jet()), arb_rational()), 0..5).prop_map(DiffPoly::from_terms)
}

/// Polynomials in `x1, x2, u1` of low degree, for Gröbner properties.
pub fn arb_alg_poly() -> impl Strategy<Value = DiffPoly> {
    let vars = prop::sample::select(vec![
        DiffVar::state(1).jet(0),
        DiffVar::state(2).jet(0),
        DiffVar::control(1).jet(0),
    ]);
    prop::collection::vec((arb_monomial(vars), arb_rational()), 1..4).prop_map(DiffPoly::from_terms)
}

pub fn arb_ideal() -> impl Strategy<Value = Vec<DiffPoly>> {
    prop::collection::vec(arb_alg_poly(), 1..4)
}

pub fn s_polynomial(f: &DiffPoly, g: &DiffPoly, order: &MonomialOrder) -> DiffPoly {
    let (mf, cf) = f.leading_term(order).expect("nonzero");
    let (mg, cg) = g.leading_term(order).expect("nonzero");
    let l = mf.lcm(&mg);
    let one = Rational::from_integer(1.into());
    let a = f.mul_term(&(&one / &cf), &mf.quotient_of(&l).expect("divides"));
    let b = g.mul_term(&(&one / &cg), &mg.quotient_of(&l).expect("divides"));
    &a - &b
}

pub fn check_groebner(gens: &[DiffPoly]) -> Result<GroebnerBasis, TestCaseError> {
    let order = MonomialOrder::degrevlex();
    let gb = buchberger(gens, &order, true);
    let basis = gb.basis();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let s = s_polynomial(&basis[i], &basis[j], &order);
            prop_assert!(gb.reduce(&s).is_zero(), "S({i},{j}) does not reduce to zero");
        }
    }
    for g in gens {
        prop_assert!(gb.contains(g), "input {g} not in its own ideal");
    }
    let transform = gb.transform().expect("tracked");
    for (b, row) in basis.iter().zip(transform) {
        let mut sum = DiffPoly::zero();
        for (c, g) in row.iter().zip(gens) {
            sum += &(c * g);
        }
        prop_assert_eq!(&sum, b);
    }
    Ok(gb)
}

pub fn check_ring_axioms(a: &DiffPoly, b: &DiffPoly, c: &DiffPoly) -> Result<(), TestCaseError> {
    prop_assert_eq!(a + b, b + a);
    prop_assert_eq!(a * b, b * a);
    prop_assert_eq!(&(a + b) + c, a + &(b + c));
    prop_assert_eq!(&(a * b) * c, a * &(b * c));
    prop_assert_eq!(a * &(b + c), &(a * b) + &(a * c));
    prop_assert_eq!(a + &DiffPoly::zero(), a.clone());
    prop_assert_eq!(a * &DiffPoly::one(), a.clone());
    prop_assert!((a - a).is_zero());
    prop_assert_eq!(&(-a) + a, DiffPoly::zero());
    Ok(())
}

pub fn check_leibniz(a: &DiffPoly, b: &DiffPoly, v: JetVar) -> Result<(), TestCaseError> {
    use dnss::diffcore::total_derivative as d;
    prop_assert_eq!(d(&(a * b)), &(&d(a) * b) + &(a * &d(b)));
    prop_assert_eq!(d(&(a + b)), &d(a) + &d(b));
    let pd = |q: &DiffPoly| q.partial_derivative(v);
    prop_assert_eq!(pd(&(a * b)), &(&pd(a) * b) + &(a * &pd(b)));
    Ok(())
}

pub fn check_round_trip(a: &DiffPoly) -> Result<(), TestCaseError> {
    let text = a.to_string();
    let back = parse_poly(&text).map_err(|e| TestCaseError::fail(format!("{text}: {e}")))?;
    prop_assert_eq!(&back, a);
    Ok(())
}

pub fn arb_document() -> impl Strategy<Value = InputDocument> {
    use dnss::text::Equation;
    let alg_poly = || {
        let alg = prop::sample::select(vec![DiffVar::state(1).jet(0), DiffVar::state(2).jet(0), DiffVar::control(1).jet(0)]);
        prop::collection::vec((arb_monomial(alg), arb_rational()), 0..4).prop_map(DiffPoly::from_terms)
    };
    let any = prop::sample::select(vec![
        DiffVar::state(1).jet(0),
        DiffVar::state(1).jet(2),
        DiffVar::state(2).jet(1),
        DiffVar::control(1).jet(3),
    ]);
    let diff_poly = prop::collection::vec((arb_monomial(any), arb_rational()), 0..4).prop_map(DiffPoly::from_terms);
    (alg_poly(), alg_poly(), prop::collection::vec(diff_poly, 0..3), prop::option::of(alg_poly())).prop_map(
        |(f1, g, diffs, claim)| {
            let mut equations = vec![Equation::Ode(DiffVar::state(1), f1), Equation::Eq(g)];
            equations.extend(diffs.into_iter().map(Equation::Diff));
            InputDocument {
                states: vec![DiffVar::state(1), DiffVar::state(2)],
                controls: vec![DiffVar::control(1)],
                aux: Vec::new(),
                equations,
                claim,
            }
        },
    )
}

pub fn check_document_round_trip(doc: &InputDocument) -> Result<(), TestCaseError> {
    let text = doc.to_string();
    let back = parse(&text).map_err(|e| TestCaseError::fail(format!("{text}: {e}")))?;
    prop_assert_eq!(&back, doc);
    Ok(())
}
