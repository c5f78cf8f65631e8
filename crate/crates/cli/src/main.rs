//! `degencheck`: catalog listing, identity checks, invariants, derivation
//! dimensions and certificate verification.
//!
//! Exit status is 0 when every requested check passes, 1 when a check fails
//! (reports are still printed) and 2 on usage or input errors.

use std::collections::BTreeMap;
use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use degencheck::algebra::{annihilator_dimension, is_nilpotent, lcs_dimensions, AlgebraStructure, Identity};
use degencheck::arith::{parse_rational, Rational, Symbol};
use degencheck::catalog::{builtin, parse_algebras, parse_certificates, Catalog};
use degencheck::degeneration::{
    summarize, verify_certificate_at, DegenerationCertificate, DegenerationError, VerificationReport,
};
use degencheck::derivations::derivation_analysis;
use degencheck::exec::{configure_threads, threads_from_env, Execution};
use serde::Serialize;
use serde_json::{json, Value};

const SCHEMA: u32 = 1;

/// Parameter values applied to an algebra, echoed in JSON output.
type ParamEcho = BTreeMap<String, String>;

#[derive(Parser, Debug)]
#[command(name = "degencheck", version, about = "Exact checks for anticommutative algebras and their degenerations")]
struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Parameter value, e.g. `alpha=-1/2`. Repeatable.
    #[arg(long = "param", value_name = "SYM=RATIONAL", global = true)]
    params: Vec<String>,
    /// Extra algebras and certificates to load. Repeatable.
    #[arg(long = "file", value_name = "PATH", global = true)]
    files: Vec<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List algebras and certificates.
    List,
    /// Check polynomial identities.
    Identities {
        names: Vec<String>,
        /// Comma-separated identities (tortkara, malcev, jacobi, metabelian).
        #[arg(long, value_delimiter = ',')]
        check: Vec<String>,
    },
    /// Dimension of the derivation algebra.
    Derdim { names: Vec<String> },
    /// Lower central series, annihilator and derivation dimensions.
    Invariants { names: Vec<String> },
    /// Verify the named certificates (`SOURCE->TARGET`), or those from `--file`.
    Verify { ids: Vec<String> },
    /// Verify every certificate in the catalog.
    VerifyAll,
}

struct Usage(String);

impl<E: std::fmt::Display> From<E> for Usage {
    fn from(e: E) -> Self {
        Usage(e.to_string())
    }
}

struct Ctx {
    catalog: Catalog,
    file_certificates: Vec<String>,
    values: BTreeMap<Symbol, Rational>,
    json: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = threads_from_env() {
        if let Err(e) = configure_threads(n) {
            eprintln!("warning: {e}");
        }
    }
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<bool, Usage> {
    let mut ctx =
        Ctx { catalog: builtin(), file_certificates: Vec::new(), values: parse_params(&cli.params)?, json: cli.json };
    for path in &cli.files {
        load_file(&mut ctx, path)?;
    }
    match cli.command {
        Command::List => list(&ctx),
        Command::Identities { names, check } => identities(&ctx, &names, &check),
        Command::Derdim { names } => derdim(&ctx, &names),
        Command::Invariants { names } => invariants(&ctx, &names),
        Command::Verify { ids } => {
            let ids = if ids.is_empty() { ctx.file_certificates.clone() } else { ids };
            if ids.is_empty() {
                return Err(Usage("verify needs certificate ids or a --file with certificates".into()));
            }
            let certs = ids
                .iter()
                .map(|id| ctx.catalog.certificate(id).cloned().ok_or_else(|| Usage(format!("no certificate '{id}'"))))
                .collect::<Result<Vec<_>, _>>()?;
            verify(&ctx, "verify", &certs)
        }
        Command::VerifyAll => {
            let certs = ctx.catalog.certificates().to_vec();
            verify(&ctx, "verify-all", &certs)
        }
    }
}

fn parse_params(raw: &[String]) -> Result<BTreeMap<Symbol, Rational>, Usage> {
    let mut out = BTreeMap::new();
    for p in raw {
        let (s, v) = p.split_once('=').ok_or_else(|| Usage(format!("--param '{p}': expected SYM=RATIONAL")))?;
        let sym = Symbol::from_name(s.trim());
        if sym.is_t() {
            return Err(Usage("t is the degeneration variable and cannot be bound".into()));
        }
        let v = parse_rational(v.trim()).ok_or_else(|| Usage(format!("--param '{p}': '{v}' is not a rational")))?;
        out.insert(sym, v);
    }
    Ok(out)
}

/// Loads a file holding algebra and certificate blocks in any order.
fn load_file(ctx: &mut Ctx, path: &str) -> Result<(), Usage> {
    let text = std::fs::read_to_string(path).map_err(|e| Usage(format!("{path}: {e}")))?;
    // Split into two texts of the same line count so errors keep their lines.
    let (mut algebras, mut certificates) = (String::new(), String::new());
    let mut in_cert = false;
    for line in text.lines() {
        let head = line.trim_start();
        if head.starts_with("algebra ") {
            in_cert = false;
        } else if head.starts_with("degeneration ") {
            in_cert = true;
        }
        let (keep, blank) =
            if in_cert { (&mut certificates, &mut algebras) } else { (&mut algebras, &mut certificates) };
        keep.push_str(line);
        keep.push('\n');
        blank.push('\n');
    }
    for a in parse_algebras(&algebras).map_err(|e| Usage(format!("{path}: {e}")))? {
        ctx.catalog.add_algebra(a).map_err(|e| Usage(format!("{path}: {e}")))?;
    }
    for c in parse_certificates(&certificates, &ctx.catalog).map_err(|e| Usage(format!("{path}: {e}")))? {
        ctx.file_certificates.push(c.id());
        ctx.catalog.add_certificate(c).map_err(|e| Usage(format!("{path}: {e}")))?;
    }
    Ok(())
}

fn emit(ctx: &Ctx, command: &str, body: Value, text: impl FnOnce() -> String) {
    let out = if ctx.json {
        let mut v = json!({ "schema": SCHEMA, "command": command });
        if let (Value::Object(m), Value::Object(b)) = (&mut v, body) {
            m.extend(b);
        }
        serde_json::to_string_pretty(&v).expect("serializable") + "\n"
    } else {
        text()
    };
    // A closed pipe (e.g. `| head`) is not an error worth reporting.
    let _ = std::io::stdout().lock().write_all(out.as_bytes());
}

fn params_json(a: &AlgebraStructure, values: &BTreeMap<Symbol, Rational>) -> ParamEcho {
    values.iter().filter(|(s, _)| a.params().contains(s)).map(|(s, v)| (s.name().to_string(), v.to_string())).collect()
}

/// Resolves names (all algebras when empty) and applies `--param` values.
fn algebras(ctx: &Ctx, names: &[String]) -> Result<Vec<(AlgebraStructure, ParamEcho)>, Usage> {
    let list: Vec<&AlgebraStructure> = if names.is_empty() {
        ctx.catalog.algebras().iter().collect()
    } else {
        names.iter().map(|n| ctx.catalog.get(n)).collect::<Result<_, _>>()?
    };
    list.into_iter()
        .map(|a| {
            let values: BTreeMap<Symbol, Rational> = ctx
                .values
                .iter()
                .filter(|(s, _)| a.params().contains(s))
                .map(|(s, v)| (s.clone(), v.clone()))
                .collect();
            Ok((a.specialize(&values)?, params_json(a, &ctx.values)))
        })
        .collect()
}

fn list(ctx: &Ctx) -> Result<bool, Usage> {
    let algs: Vec<Value> = ctx
        .catalog
        .algebras()
        .iter()
        .map(|a| {
            json!({
                "name": a.name(),
                "dim": a.dim(),
                "params": a.params().iter().map(|p| p.name()).collect::<Vec<_>>(),
                "products": a.constants().len(),
            })
        })
        .collect();
    let certs: Vec<Value> = ctx
        .catalog
        .certificates()
        .iter()
        .map(|c| json!({ "id": c.id(), "source": c.source, "target": c.target }))
        .collect();
    emit(ctx, "list", json!({ "algebras": algs, "certificates": certs }), || {
        let mut s = String::from("algebras:\n");
        for a in ctx.catalog.algebras() {
            let ps: Vec<&str> = a.params().iter().map(|p| p.name()).collect();
            let ps = if ps.is_empty() { String::new() } else { format!(" ({})", ps.join(", ")) };
            s.push_str(&format!("  {}{ps}  dim {}\n", a.name(), a.dim()));
        }
        s.push_str("certificates:\n");
        for c in ctx.catalog.certificates() {
            s.push_str(&format!("  {}\n", c.id()));
        }
        s
    });
    Ok(true)
}

#[derive(Serialize)]
struct CheckResult {
    identity: Identity,
    passed: bool,
    witness: Option<Witness>,
}

#[derive(Serialize)]
struct Witness {
    indices: Vec<usize>,
    residual: String,
}

fn identities(ctx: &Ctx, names: &[String], check: &[String]) -> Result<bool, Usage> {
    let ids: Vec<Identity> = if check.is_empty() {
        Identity::ALL.to_vec()
    } else {
        check
            .iter()
            .map(|c| Identity::from_name(c).ok_or_else(|| Usage(format!("unknown identity '{c}'"))))
            .collect::<Result<_, _>>()?
    };
    let algs = algebras(ctx, names)?;
    let mut all = true;
    let mut results = Vec::new();
    let mut text = String::new();
    for (a, params) in &algs {
        let checks: Vec<CheckResult> = ids
            .iter()
            .map(|&id| {
                let o = id.check(a, Execution::Sequential);
                CheckResult {
                    identity: id,
                    passed: o.passed(),
                    witness: o
                        .witness()
                        .map(|w| Witness { indices: w.indices.clone(), residual: w.residual.to_string() }),
                }
            })
            .collect();
        let prefix = if algs.len() > 1 { format!("{} ", a.name()) } else { String::new() };
        for (c, id) in checks.iter().zip(&ids) {
            all &= c.passed;
            let status = if c.passed { "pass" } else { "fail" };
            text.push_str(&format!("{prefix}{id}: {status}"));
            if let Some(w) = &c.witness {
                let vars: Vec<String> =
                    id.variables().iter().zip(&w.indices).map(|(v, i)| format!("{v}=e{i}")).collect();
                text.push_str(&format!("  ({}; residual {})", vars.join(", "), w.residual));
            }
            text.push('\n');
        }
        results.push(json!({ "algebra": a.name(), "params": params, "checks": checks }));
    }
    emit(ctx, "identities", json!({ "results": results }), || text);
    Ok(all)
}

fn derdim(ctx: &Ctx, names: &[String]) -> Result<bool, Usage> {
    let algs = algebras(ctx, names)?;
    let mut results = Vec::new();
    let mut text = String::new();
    for (a, params) in &algs {
        let d = derivation_analysis(a);
        let assumed: Vec<String> = d.assumed_nonzero.iter().map(|e| e.to_string()).collect();
        if algs.len() == 1 {
            text.push_str(&format!("{}\n", d.dim));
        } else {
            text.push_str(&format!("{} {}\n", a.name(), d.dim));
        }
        results.push(
            json!({ "algebra": a.name(), "params": params, "derivation_dimension": d.dim, "assumed_nonzero": assumed }),
        );
    }
    emit(ctx, "derdim", json!({ "results": results }), || text);
    Ok(true)
}

fn invariants(ctx: &Ctx, names: &[String]) -> Result<bool, Usage> {
    let algs = algebras(ctx, names)?;
    let mut results = Vec::new();
    let mut text = String::new();
    for (a, params) in &algs {
        let lcs = lcs_dimensions(a);
        let ann = annihilator_dimension(a);
        let der = derivation_analysis(a).dim;
        let nil = is_nilpotent(a);
        text.push_str(&format!(
            "{}  dim {}  lcs {:?}  annihilator {ann}  derivations {der}  nilpotent {nil}\n",
            a.name(),
            a.dim(),
            lcs
        ));
        results.push(json!({
            "algebra": a.name(),
            "params": params,
            "dim": a.dim(),
            "lcs_dimensions": lcs,
            "annihilator_dimension": ann,
            "derivation_dimension": der,
            "nilpotent": nil,
        }));
    }
    emit(ctx, "invariants", json!({ "results": results }), || text);
    Ok(true)
}

fn verify(ctx: &Ctx, command: &str, certs: &[DegenerationCertificate]) -> Result<bool, Usage> {
    // Assumption violations are input errors, reported before any work.
    for c in certs {
        if let Err(e @ DegenerationError::ExcludedParameter { .. }) = c.family.specialize(&ctx.values) {
            return Err(Usage(format!("{}: {e}", c.id())));
        }
    }
    let run = |c: &DegenerationCertificate| -> VerificationReport {
        verify_certificate_at(c, &ctx.catalog, &ctx.values).unwrap_or_else(|e| VerificationReport::from_error(c, &e))
    };
    let reports = Execution::Parallel.map(certs, run);
    let summary = summarize(&reports);
    emit(ctx, command, json!({ "summary": summary, "reports": reports }), || {
        let mut s: String = reports.iter().map(|r| format!("{r}\n")).collect();
        s.push_str(&format!("{}/{} verified\n", summary.verified, summary.total));
        s
    });
    Ok(summary.failed == 0)
}
