//! The `dnss` command line: `decide`, `certify`, `verify`, `bound`,
//! `descend` and `reduce`.
//!
//! Results go to stdout as JSON (text for `reduce`); failures go to stderr
//! as `{"error": {...}}`. Exit codes: 0 success, 1 usage or I/O, 2 parse
//! error, 3 cap exhausted or precondition failed.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;
use serde_json::{json, Value};

use crate::bounds::{self, SystemProfile, DEFAULT_CAP_BITS};
use crate::decide::{
    decide_with, macaulay_l_min, strong_nss, verify_certificate, Certificate, DecideConfig, Verdict, DEFAULT_L_CAP,
    DEFAULT_M_CAP,
};
use crate::descent::{build_chain, populate, reconstruct_l, DescentChain, RadicalStatus, DEFAULT_CAP};
use crate::error::Error;
use crate::reduce::{to_first_order, GeneralSystem, SemiexplicitSystem};
use crate::ring::{DiffPoly, DiffVar, JetVar};
use crate::text::{parse, parse_poly, InputDocument, ParseErrorKind};

#[derive(Parser, Debug)]
#[command(name = "dnss", version, about = "Consistency of polynomial DAE systems by bounded prolongation")]
struct Cli {
    /// The universal constant in the bounds (not a certified value).
    #[arg(long, global = true, default_value_t = 1)]
    c: u64,
    /// Bit length above which bound values are kept symbolic.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP_BITS)]
    tower_cap_bits: u64,
    /// Worker threads for per-stage computations (0: all cores).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Search the least order L with 1 in the ideal of F, F', ..., F^(L).
    Decide {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_L_CAP)]
        max_order: u32,
        /// Recompute L_min with the Macaulay-matrix oracle.
        #[arg(long)]
        oracle_check: bool,
        /// Extra cofactor degree for the oracle.
        #[arg(long, default_value_t = 4)]
        oracle_slack: u32,
    },
    /// Emit a certificate: for 1, or for f^M when a claim f is given.
    Certify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_L_CAP)]
        max_order: u32,
        #[arg(long, default_value_t = DEFAULT_M_CAP)]
        max_power: u32,
        /// Overrides the document's `claim:` line.
        #[arg(long)]
        claim: Option<String>,
    },
    /// Check a certificate against the system it was issued for.
    Verify {
        #[arg(long)]
        cert: PathBuf,
        #[arg(long)]
        input: PathBuf,
    },
    /// Evaluate every closed-form bound.
    Bound(BoundArgs),
    /// Build the descent chain of a semiexplicit system.
    Descend {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 16)]
        max_stages: usize,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        eps_cap: u32,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        k_cap: u32,
    },
    /// Rewrite a higher-order system in first-order semiexplicit form.
    Reduce {
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Args, Debug)]
struct BoundArgs {
    /// Number of states.
    #[arg(long)]
    n: u64,
    /// Number of controls.
    #[arg(long, default_value_t = 0)]
    m: u64,
    /// Maximal total degree d.
    #[arg(long)]
    degree: u64,
    /// Maximal derivative order e.
    #[arg(long, default_value_t = 1)]
    order: u64,
    /// Dimension r of the constraint variety.
    #[arg(long)]
    dim: Option<u64>,
    /// Degree D of the constraint variety (defaults to d).
    #[arg(long)]
    variety_degree: Option<u64>,
    /// Prolongation order fed to M and the certificate degree.
    #[arg(long)]
    l: Option<u64>,
}

struct Failure {
    code: i32,
    body: Value,
}

impl Failure {
    fn new(code: i32, kind: &str, message: impl Into<String>) -> Self {
        Failure { code, body: json!({ "error": { "kind": kind, "message": message.into() } }) }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(p) => {
                let kind = match p.kind {
                    ParseErrorKind::Lexical => "lexical",
                    ParseErrorKind::Syntax => "syntax",
                    ParseErrorKind::Undeclared => "undeclared",
                    ParseErrorKind::NonSemiexplicit => "non_semiexplicit",
                };
                Failure {
                    code: 2,
                    body: json!({ "error": {
                        "kind": kind,
                        "line": p.line.to_string(),
                        "col": p.col.to_string(),
                        "message": p.message,
                    }}),
                }
            }
            other => Failure::new(3, "precondition", other.to_string()),
        }
    }
}

type Outcome = Result<String, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::new(1, "io", format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<InputDocument, Failure> {
    parse(&read(path)?).map_err(|e| Failure::from(Error::from(e)))
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json") + "\n"
}

fn config_json(cli: &Cli) -> Value {
    json!({ "c": cli.c.to_string(), "tower_cap_bits": cli.tower_cap_bits.to_string() })
}

fn cmd_decide(cli: &Cli, input: &Path, max_order: u32, oracle: bool, slack: u32) -> Outcome {
    let sys = load(input)?.generators();
    if sys.is_empty() {
        return Err(Failure::new(3, "precondition", "the system has no equations"));
    }
    let config = DecideConfig { c: cli.c, cap_bits: cli.tower_cap_bits };
    let verdict = decide_with(&sys, max_order, &config);
    let mut out = match &verdict {
        Verdict::Inconsistent { l_min, certificate } => json!({
            "status": "inconsistent",
            "L_min": l_min.to_string(),
            "certificate": certificate.to_json(),
        }),
        Verdict::ConsistentUpTo { l_cap } => json!({ "status": "consistent_up_to", "L_cap": l_cap.to_string() }),
        Verdict::CertifiedConsistent { l_cap, threshold } => json!({
            "status": "certified_consistent",
            "L_cap": l_cap.to_string(),
            "threshold": threshold.to_json(),
        }),
    };
    if oracle {
        let found = macaulay_l_min(&sys, max_order, slack);
        let ours = match &verdict {
            Verdict::Inconsistent { l_min, .. } => Some(*l_min),
            _ => None,
        };
        out["oracle"] = json!({
            "L_min": found.map(|l| l.to_string()),
            "degree_slack": slack.to_string(),
            "agrees": found == ours,
        });
    }
    out["config"] = config_json(cli);
    Ok(pretty(&out))
}

fn cmd_certify(input: &Path, max_order: u32, max_power: u32, claim: Option<&str>) -> Outcome {
    let doc = load(input)?;
    let sys = doc.generators();
    let claim = match claim {
        Some(text) => Some(parse_poly(text).map_err(|e| Failure::from(Error::from(e)))?),
        None => doc.claim.clone(),
    };
    let cert = match claim {
        Some(f) => match strong_nss(&sys, &f, max_order, max_power)? {
            Some((_, _, cert)) => cert,
            None => {
                return Err(Failure::new(
                    3,
                    "cap_exhausted",
                    format!("no power f^M (M <= {max_power}) at order <= {max_order}"),
                ))
            }
        },
        None => match decide_with(&sys, max_order, &DecideConfig::default()) {
            Verdict::Inconsistent { certificate, .. } => certificate,
            _ => return Err(Failure::new(3, "cap_exhausted", format!("1 not reached at order <= {max_order}"))),
        },
    };
    Ok(pretty(&cert.to_json()))
}

fn cmd_verify(cert: &Path, input: &Path) -> Outcome {
    let sys = load(input)?.generators();
    let raw: Value = serde_json::from_str(&read(cert)?).map_err(|e| Failure::new(2, "json", e.to_string()))?;
    let cert = Certificate::from_json(&raw)?;
    let valid = verify_certificate(&cert, &sys)?;
    let mut out = json!({ "valid": valid, "L": cert.l.to_string(), "target": cert.target.to_string() });
    if valid {
        out["max_term_degree"] = json!(cert.max_term_degree(&sys).to_string());
    }
    Ok(pretty(&out))
}

fn cmd_bound(cli: &Cli, a: &BoundArgs) -> Outcome {
    let mut p = SystemProfile::new(a.n, a.m, a.order, a.degree).with_c(cli.c).with_cap_bits(cli.tower_cap_bits);
    if let Some(r) = a.dim {
        p = p.with_dim(r);
    }
    let bezout = p.clone();
    p = p.with_variety_degree(BigUint::from(a.variety_degree.unwrap_or(a.degree.max(1))));
    let mut out = bounds::report(&p, a.l);
    out["bezout_surrogate"] = bounds::report(&bezout, a.l);
    out["k0_note"] = json!("k0 <= (mu+1)*eps_1*...*eps_mu; see `descend` for exact values");
    Ok(pretty(&out))
}

fn chain_json(chain: &DescentChain) -> Value {
    let stages: Vec<Value> = chain
        .stages
        .iter()
        .enumerate()
        .map(|(i, s)| {
            json!({
                "index": i.to_string(),
                "dim": s.dim.to_string(),
                "radical": match s.radical {
                    RadicalStatus::CertifiedRadical => "certified",
                    RadicalStatus::BestEffort => "best_effort",
                },
                "generators": s.generators.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "eps": s.eps.map(|e| e.to_string()),
                "k": s.k.map(|k| k.to_string()),
            })
        })
        .collect();
    json!({
        "stages": stages,
        "rho": chain.rho().map(|r| r.to_string()),
        "mu": chain.mu().map(|m| m.to_string()),
    })
}

fn cmd_descend(cli: &Cli, input: &Path, max_stages: usize, eps_cap: u32, k_cap: u32) -> Outcome {
    let sys = SemiexplicitSystem::from_document(&load(input)?)?;
    let mut chain = build_chain(&sys, max_stages).map_err(|e| {
        let mut f = Failure::from(e.error);
        f.body["error"]["partial_chain"] = chain_json(&e.partial);
        f
    })?;
    populate(&mut chain, eps_cap, k_cap);
    let mut out = chain_json(&chain);
    let n = sys.states.len() as u64;
    let m = sys.controls.len() as u64;
    let profile = SystemProfile::new(n, m, 1, u64::from(sys.degree().max(1)))
        .with_c(cli.c)
        .with_cap_bits(cli.tower_cap_bits)
        .with_dim(chain.stages[0].dim.max(0) as u64);
    out["bezout_D"] = profile.big_d().to_json();
    out["bound_L_semiexplicit"] = bounds::bound_l_semiexplicit(&profile).to_json();
    out["config"] = config_json(cli);
    match reconstruct_l(&chain) {
        Ok(r) => {
            let eps: Vec<u64> = chain.stages[1..=r.mu].iter().map(|s| u64::from(s.eps.unwrap_or(0))).collect();
            out["reconstruction"] = json!({
                "L": r.l.to_string(),
                "unit_at_L": r.unit_at_l,
                "k_mu_is_one": r.k_mu_is_one,
                "k0_bound": bounds::bound_k0(&eps, r.mu).to_json(),
                "lemma_checks": r.checks.iter().map(|c| json!({
                    "i": c.i.to_string(),
                    "k_prev": c.k_prev.to_string(),
                    "eps_i": c.eps_i.to_string(),
                    "k_i": c.k_i.to_string(),
                    "holds": c.holds,
                })).collect::<Vec<_>>(),
            });
            Ok(pretty(&out))
        }
        Err(e) => {
            out["reconstruction"] = json!({ "error": e.to_string() });
            let mut f = Failure::from(e);
            f.body["error"]["report"] = out;
            Err(f)
        }
    }
}

fn cmd_reduce(input: &Path) -> Outcome {
    let doc = load(input)?;
    let general = GeneralSystem::from_document(&doc);
    let (semi, back) = to_first_order(&general)?;
    // z_{i,j} with j < e become states, z_{i,e} controls
    let rename: Vec<(DiffVar, DiffVar)> = semi
        .states
        .iter()
        .enumerate()
        .map(|(k, z)| (*z, DiffVar::state(k as u32 + 1)))
        .chain(semi.controls.iter().enumerate().map(|(k, z)| (*z, DiffVar::control(k as u32 + 1))))
        .collect();
    let relabel = |p: &DiffPoly| {
        let map = rename.iter().map(|(z, v)| (z.jet(0), DiffPoly::var(v.jet(0)))).collect();
        crate::diffcore::substitute(p, &map)
    };
    let new_doc = InputDocument {
        states: rename[..semi.states.len()].iter().map(|r| r.1).collect(),
        controls: rename[semi.states.len()..].iter().map(|r| r.1).collect(),
        aux: Vec::new(),
        equations: semi
            .rhs
            .iter()
            .enumerate()
            .map(|(k, f)| crate::text::Equation::Ode(DiffVar::state(k as u32 + 1), relabel(f)))
            .chain(semi.constraints.iter().map(|g| crate::text::Equation::Eq(relabel(g))))
            .collect(),
        claim: None,
    };
    let mut out = format!("# first-order form of order-{} system\n", back.order);
    for (z, v) in &rename {
        let original: JetVar = back.map_jet(z.jet(0));
        out.push_str(&format!("# {v} = {original}\n"));
    }
    out.push_str(&new_doc.to_string());
    Ok(out)
}

fn dispatch(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Decide { input, max_order, oracle_check, oracle_slack } => {
            cmd_decide(cli, input, *max_order, *oracle_check, *oracle_slack)
        }
        Command::Certify { input, max_order, max_power, claim } => {
            cmd_certify(input, *max_order, *max_power, claim.as_deref())
        }
        Command::Verify { cert, input } => cmd_verify(cert, input),
        Command::Bound(a) => cmd_bound(cli, a),
        Command::Descend { input, max_stages, eps_cap, k_cap } => {
            cmd_descend(cli, input, *max_stages, *eps_cap, *k_cap)
        }
        Command::Reduce { input } => cmd_reduce(input),
    }
}

/// Runs the command line with explicit output streams; returns the exit code.
pub fn run_with(argv: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return 1;
            }
            let _ = write!(out, "{e}");
            return 0;
        }
    };
    let result = match rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build() {
        Ok(pool) => pool.install(|| dispatch(&cli)),
        Err(e) => Err(Failure::new(1, "threads", e.to_string())),
    };
    match result {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            0
        }
        Err(f) => {
            let _ = err.write_all(pretty(&f.body).as_bytes());
            f.code
        }
    }
}

pub fn run(argv: Vec<String>) -> i32 {
    run_with(&argv, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}
