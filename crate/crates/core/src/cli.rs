//! The `mfn` command line. [`run`] does all the work and returns the exit
//! status and output text, so it can be driven from tests.
//!
//! Exit status: 0 when the computation succeeds, 1 when the mathematics says
//! no (a failed verification, an unstable oracle, a failed check), 2 for bad
//! usage or unreadable input.

use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::census::{hom_table_with, DEFAULT_BUDGET};
use crate::doc::{poly_matrix_value, poly_value, DocError, Document, Payload};
use crate::error::Error;
use crate::field::FieldSpec;
use crate::mf::{cone, shift, twist, twist_morphism, MatrixFactorization, MfMorphism};
use crate::normal_form::DegreeGuard;
use crate::oracle::oracle_stable_hom_dim;
use crate::random::{random_factorization, random_morphism, rng, RandomSpec};
use crate::root::{check_four_term, cone_splitting_check, ext1_cyclic, ext_via_resolution, skyscraper};
use crate::stable::{is_stably_zero_guarded, stable_hom_dim_guarded};

pub const MAX_DEGREE_ENV: &str = "MFN_MAX_DEGREE";

#[derive(Parser, Debug)]
#[command(name = "mfn", version, about = "Multi-step matrix factorizations over k[x]")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Number of slots for generated instances.
    #[arg(long, default_value_t = 2)]
    n: usize,
    /// Exponent of W = x^k for generated instances.
    #[arg(long, default_value_t = 2)]
    k: usize,
    /// `Q` or a prime p (also accepted as `Fp`/`F_p` prefixed).
    #[arg(long, default_value = "Q", value_parser = parse_field_flag)]
    field: FieldSpec,
    /// Draw a random instance from this seed when no input file is given.
    #[arg(long)]
    seed: Option<u64>,
    /// Degree guard for normal forms; defaults to $MFN_MAX_DEGREE, else 512.
    #[arg(long)]
    max_degree: Option<usize>,
    /// Write the output document here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check that a factorization (or morphism) satisfies its defining identities.
    Verify {
        input: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Rotate slots cyclically.
    Twist {
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        by: i64,
        #[command(flatten)]
        common: Common,
    },
    /// Suspension: cokernel of the unit into the injective hull.
    Shift {
        input: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Mapping cone of a morphism.
    Cone {
        input: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Stable Hom dimension between two factorizations.
    Shom {
        source: Option<PathBuf>,
        target: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Whether a factorization vanishes in the stable category.
    Stablyzero {
        input: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Rank-one monomial factorizations of x^k and their stable Hom table.
    Census {
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Four-term sequence, cone splitting and Ext table for the model root stack.
    RootstackCheck {
        #[command(flatten)]
        common: Common,
    },
    /// Stable Hom dimension by truncated-degree linear algebra.
    OracleShom {
        source: Option<PathBuf>,
        target: Option<PathBuf>,
        /// Truncation degree; the check also runs at bound + 1.
        #[arg(long)]
        bound: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
}

fn parse_field_flag(s: &str) -> Result<FieldSpec, String> {
    if s == "Q" || s == "q" {
        return Ok(FieldSpec::Rationals);
    }
    let digits = s.trim_start_matches("Fp").trim_start_matches("F_").trim_start_matches('F');
    let p: u64 = digits.parse().map_err(|_| format!("expected Q or a prime, got {s:?}"))?;
    FieldSpec::prime(p).map_err(|e| e.to_string())
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Math(String),
}

impl From<DocError> for Failure {
    fn from(e: DocError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Malformed(_) | Error::PotentialMismatch | Error::InvalidPotential(_) | Error::SlotOutOfRange { .. } => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Math(e.to_string()),
        }
    }
}

struct Emit {
    doc: Document,
    success: bool,
    note: String,
}

pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let common = common_of(&cli.command).clone();
    match dispatch(cli.command, &common) {
        Ok(emit) => {
            let text = emit.doc.serialize();
            let stdout = match &common.out {
                Some(path) => {
                    if let Err(e) = fs::write(path, &text) {
                        return Outcome { code: 2, stdout: String::new(), stderr: format!("cannot write {}: {e}\n", path.display()) };
                    }
                    String::new()
                }
                None => text,
            };
            Outcome { code: if emit.success { 0 } else { 1 }, stdout, stderr: emit.note }
        }
        Err(Failure::Usage(msg)) => Outcome { code: 2, stdout: String::new(), stderr: format!("error: {msg}\n") },
        Err(Failure::Math(msg)) => Outcome { code: 1, stdout: String::new(), stderr: format!("error: {msg}\n") },
    }
}

fn common_of(c: &Command) -> &Common {
    match c {
        Command::Verify { common, .. }
        | Command::Twist { common, .. }
        | Command::Shift { common, .. }
        | Command::Cone { common, .. }
        | Command::Shom { common, .. }
        | Command::Stablyzero { common, .. }
        | Command::Census { common, .. }
        | Command::RootstackCheck { common }
        | Command::OracleShom { common, .. } => common,
    }
}

fn guard(common: &Common) -> Result<DegreeGuard, Failure> {
    if let Some(d) = common.max_degree {
        return Ok(DegreeGuard::new(d));
    }
    match std::env::var(MAX_DEGREE_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map(DegreeGuard::new)
            .map_err(|_| Failure::Usage(format!("{MAX_DEGREE_ENV} must be a nonnegative integer, got {v:?}"))),
        Err(_) => Ok(DegreeGuard::default()),
    }
}

fn random_spec(common: &Common) -> RandomSpec {
    RandomSpec { field: common.field, n: common.n, k: common.k, max_rank: 2, max_degree: 2 }
}

fn read_doc(path: &PathBuf) -> Result<Document, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    Document::parse(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

/// A verified factorization from a file, or a random one from `--seed`.
fn load_factorization(input: &Option<PathBuf>, common: &Common, stream: u64) -> Result<(MatrixFactorization, String), Failure> {
    match input {
        Some(path) => match read_doc(path)?.payload {
            Payload::Factorization(m) => {
                if let Err(v) = m.verify() {
                    return Err(Failure::Math(format!("{}: {v}", path.display())));
                }
                Ok((m, path.display().to_string()))
            }
            _ => Err(Failure::Usage(format!("{}: expected a factorization document", path.display()))),
        },
        None => {
            let seed = common.seed.ok_or_else(|| Failure::Usage("give an input file or --seed".into()))?;
            let mut r = rng(seed);
            let mut m = random_factorization(&mut r, &random_spec(common))?;
            for _ in 0..stream {
                m = random_factorization(&mut r, &random_spec(common))?;
            }
            Ok((m, format!("seed {seed}, draw {stream}")))
        }
    }
}

fn load_morphism(input: &Option<PathBuf>, common: &Common) -> Result<MfMorphism, Failure> {
    match input {
        Some(path) => match read_doc(path)?.payload {
            Payload::Morphism(f) => {
                for (obj, what) in [(f.source(), "source"), (f.target(), "target")] {
                    if let Err(v) = obj.verify() {
                        return Err(Failure::Math(format!("{}: {what}: {v}", path.display())));
                    }
                }
                if let Some(slot) = f.failing_square() {
                    return Err(Failure::Math(format!("{}: square at slot {slot} does not commute", path.display())));
                }
                Ok(f)
            }
            _ => Err(Failure::Usage(format!("{}: expected a morphism document", path.display()))),
        },
        None => {
            let seed = common.seed.ok_or_else(|| Failure::Usage("give an input file or --seed".into()))?;
            let mut r = rng(seed);
            let m = random_factorization(&mut r, &random_spec(common))?;
            let n = random_factorization(&mut r, &random_spec(common))?;
            Ok(random_morphism(&mut r, &m, &n)?)
        }
    }
}

fn report(field: FieldSpec, kind: &str, body: Value) -> Document {
    let mut v = json!({ "kind": kind });
    if let (Value::Object(dst), Value::Object(src)) = (&mut v, body) {
        dst.extend(src);
    }
    Document::report(field, v)
}

fn ok(doc: Document) -> Result<Emit, Failure> {
    Ok(Emit { doc, success: true, note: String::new() })
}

fn dispatch(command: Command, common: &Common) -> Result<Emit, Failure> {
    let g = guard(common)?;
    match command {
        Command::Verify { input, common } => verify(&input, &common),
        Command::Twist { input, by, common } => {
            if let Some(path) = &input {
                if let Payload::Morphism(_) = read_doc(path)?.payload {
                    return ok(Document::morphism(&twist_morphism(&load_morphism(&input, &common)?, by)));
                }
            }
            let (m, _) = load_factorization(&input, &common, 0)?;
            ok(Document::factorization(&twist(&m, by)))
        }
        Command::Shift { input, common } => {
            let (m, _) = load_factorization(&input, &common, 0)?;
            ok(Document::factorization(&shift(&m)?))
        }
        Command::Cone { input, common } => {
            let f = load_morphism(&input, &common)?;
            ok(Document::factorization(&cone(&f)?.cone))
        }
        Command::Shom { source, target, common } => {
            let (m, m_id) = load_factorization(&source, &common, 0)?;
            let (n, n_id) = match &target {
                Some(_) => load_factorization(&target, &common, 0)?,
                None if source.is_some() => (m.clone(), m_id.clone()),
                None => load_factorization(&None, &common, 1)?,
            };
            let r = stable_hom_dim_guarded(&m, &n, g)?;
            let dim = r.dim.finite().ok_or_else(|| Failure::Math("stable Hom is infinite-dimensional".into()))?;
            let generators: Vec<Value> = r
                .generators
                .iter()
                .map(|gen| {
                    json!({
                        "annihilator": poly_value(&gen.annihilator),
                        "components": gen.morphism.comps().iter().map(poly_matrix_value).collect::<Vec<_>>(),
                    })
                })
                .collect();
            ok(report(
                m.field(),
                "shom",
                json!({
                    "source": m_id,
                    "target": n_id,
                    "ambient_rank": r.ambient_rank,
                    "null_generators": r.null_generators,
                    "invariant_factors": r.invariant_factors.iter().map(poly_value).collect::<Vec<_>>(),
                    "dim": dim,
                    "generators": generators,
                }),
            ))
        }
        Command::Stablyzero { input, common } => {
            let (m, id) = load_factorization(&input, &common, 0)?;
            let z = is_stably_zero_guarded(&m, g)?;
            ok(report(m.field(), "stablyzero", json!({ "input": id, "stably_zero": z })))
        }
        Command::Census { budget, common } => {
            let r = hom_table_with(common.field, common.n, common.k, budget)?;
            let agree = r.trivial == r.stably_zero;
            let expected = crate::census::binomial(common.k + common.n - 1, common.n - 1) - common.n;
            let body = serde_json::to_value(&r).expect("census serializes");
            Ok(Emit {
                doc: report(common.field, "census", json!({ "census": body, "expected_nontrivial": expected, "trivial_matches_stably_zero": agree })),
                success: agree && r.summary.nontrivial == expected,
                note: r.render_text(),
            })
        }
        Command::RootstackCheck { common } => rootstack(&common),
        Command::OracleShom { source, target, bound, common } => {
            let (m, m_id) = load_factorization(&source, &common, 0)?;
            let (n, n_id) = match &target {
                Some(_) => load_factorization(&target, &common, 0)?,
                None if source.is_some() => (m.clone(), m_id.clone()),
                None => load_factorization(&None, &common, 1)?,
            };
            let t = oracle_stable_hom_dim(&m, &n, bound)?;
            let stable = t.stable();
            Ok(Emit {
                doc: report(
                    m.field(),
                    "oracle-shom",
                    json!({
                        "source": m_id,
                        "target": n_id,
                        "bound": t.bound,
                        "at_bound": t.at_bound,
                        "at_next": t.at_next,
                        "dim": stable,
                    }),
                ),
                success: stable.is_some(),
                note: if stable.is_some() { String::new() } else { "truncations disagree; raise --bound\n".into() },
            })
        }
    }
}

fn verify(input: &Option<PathBuf>, common: &Common) -> Result<Emit, Failure> {
    let doc = match input {
        Some(path) => read_doc(path)?,
        None => Document::factorization(&load_factorization(input, common, 0)?.0),
    };
    let field = doc.field;
    let (body, success) = match &doc.payload {
        Payload::Factorization(m) => match m.verify() {
            Ok(()) => (json!({ "object": "factorization", "ok": true, "ranks": m.ranks() }), true),
            Err(v) => (json!({ "object": "factorization", "ok": false, "violation": { "index": v.index(), "message": v.to_string() } }), false),
        },
        Payload::Morphism(f) => {
            let bad_object = [f.source(), f.target()].iter().find_map(|o| o.verify().err());
            match (bad_object, f.failing_square()) {
                (Some(v), _) => (json!({ "object": "morphism", "ok": false, "violation": { "index": v.index(), "message": v.to_string() } }), false),
                (None, Some(slot)) => (json!({ "object": "morphism", "ok": false, "violation": { "index": slot + 1, "message": format!("square at index {} does not commute", slot + 1) } }), false),
                (None, None) => (json!({ "object": "morphism", "ok": true }), true),
            }
        }
        Payload::GradedModule(g) => (json!({ "object": "graded_module", "ok": true, "torsion_at_zero": g.is_torsion_at_zero() }), true),
        Payload::Report(_) => return Err(Failure::Usage("nothing to verify in a report".into())),
    };
    Ok(Emit { doc: report(field, "verify", body), success, note: String::new() })
}

fn rootstack(common: &Common) -> Result<Emit, Failure> {
    let n = common.n;
    let four = check_four_term(n)?;
    let split = cone_splitting_check(n)?;
    let mut table = Vec::with_capacity(n);
    let mut table_matches = true;
    for a in 0..n {
        let mut row = Vec::with_capacity(n);
        for b in 0..n {
            let e = ext1_cyclic(n, a, b)?;
            let (_, via) = ext_via_resolution(a, &skyscraper(FieldSpec::Rationals, n, b)?)?;
            table_matches &= e == via;
            row.push(e);
        }
        table.push(row);
    }
    let success = four.is_ok() && split.holds() && table_matches;
    let body = json!({
        "n": n,
        "four_term": match four { Ok(()) => json!({ "exact": true }), Err(f) => json!({ "exact": false, "node": f.node, "weight": f.weight }) },
        "cone_splitting": serde_json::to_value(&split).expect("serializes"),
        "cone_splits": split.holds(),
        "ext1_table": table,
        "ext1_matches_resolution": table_matches,
    });
    Ok(Emit { doc: report(FieldSpec::Rationals, "rootstack-check", body), success, note: String::new() })
}
