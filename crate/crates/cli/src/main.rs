//! `qbij`: verify q-series identities, check partition bijections and
//! evaluate q-series expressions.
//!
//! Exit codes: 0 success or equal, 1 verified false, 2 usage or parse error.

mod demo;

use std::collections::BTreeMap;
use std::fmt::Display;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use qbij_core::bijections::{check_bijection, BijectionError, BijectionParams, BijectionReport, BIJECTIONS};
use qbij_core::dsl::{eval, parse, EvalError, ParseError};
use qbij_core::identities::{
    count_table, verify, verify_combinatorial, IdentityError, IdentityParams, Kind, VerifyReport, REGISTRY,
};
use qbij_core::series::Mismatch;
use qbij_core::MultiSeries;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "qbij", version, about = "Exact q-series identities and partition bijections")]
struct Cli {
    /// Report format on stdout.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Compare both sides of a registered identity up to q^trunc.
    Verify {
        id: String,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(i64).range(1..))]
        trunc: i64,
        /// Also compare the enumerated generating functions, up to weight `cap`.
        #[arg(long)]
        combinatorial: bool,
        #[arg(long, default_value_t = 30)]
        cap: u64,
    },
    /// Exhaustively check a bijection, or trace one input with --demo.
    Bijection {
        name: String,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        k: Option<u32>,
        /// For nu3: sweep every 1 <= n+k <= max-nk.
        #[arg(long)]
        max_nk: Option<u32>,
        /// Weight cap for the infinite families.
        #[arg(long, default_value_t = 30)]
        cap: u64,
        /// Input element, e.g. "(5,3)|(2,2,2,1,1)" or "{-4,-2,-1,0,2,4,5}".
        #[arg(long)]
        demo: Option<String>,
    },
    /// Expand an expression, or compare two.
    Eval {
        lhs: String,
        rhs: Option<String>,
        /// Integer binding, repeatable: --bind n=4.
        #[arg(long = "bind", value_parser = parse_binding)]
        bindings: Vec<(String, i64)>,
        #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(i64).range(1..))]
        trunc: i64,
    },
    /// Tabulate p_omega and p_nu against the z=1 coefficients of ay1 and ay2.
    Table {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        max_n: u32,
    },
    /// List identity ids and bijection names.
    List,
}

fn parse_binding(s: &str) -> Result<(String, i64), String> {
    let (name, value) = s.split_once('=').ok_or("expected name=value")?;
    let value = value.trim().parse().map_err(|_| format!("{value:?} is not an integer"))?;
    Ok((name.trim().to_string(), value))
}

/// An error that ends the run with the given exit code.
struct Fail {
    code: u8,
    message: String,
}

fn usage(e: impl Display) -> Fail {
    Fail { code: 2, message: e.to_string() }
}

fn failed(e: impl Display) -> Fail {
    Fail { code: 1, message: e.to_string() }
}

type Run = Result<bool, Fail>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let fmt = cli.format;
    let result = match cli.command {
        Command::Verify { id, n, trunc, combinatorial, cap } => cmd_verify(fmt, &id, n, trunc, combinatorial, cap),
        Command::Bijection { name, n, k, max_nk, cap, demo } => match demo {
            Some(input) => demo::run(fmt, &name, n, k, &input),
            None => cmd_bijection(fmt, &name, BijectionParams { n, k, max_nk }, cap),
        },
        Command::Eval { lhs, rhs, bindings, trunc } => cmd_eval(fmt, &lhs, rhs.as_deref(), bindings, trunc),
        Command::Table { max_n } => cmd_table(fmt, max_n),
        Command::List => cmd_list(fmt),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Fail { code, message }) => {
            eprintln!("qbij: {message}");
            ExitCode::from(code)
        }
    }
}

fn identity_error(e: IdentityError) -> Fail {
    match e {
        IdentityError::Series(_) => failed(e),
        _ => usage(e),
    }
}

fn mismatch_json(m: &Mismatch) -> Value {
    json!({
        "monomial": m.monomial.to_string(),
        "exponent": m.exponent,
        "lhs": m.lhs.to_string(),
        "rhs": m.rhs.to_string(),
    })
}

fn mismatch_text(m: &Mismatch) -> String {
    let at = if m.monomial.is_one() { String::new() } else { format!("{} ", m.monomial) };
    format!("first mismatch at {at}q^{}: lhs {} rhs {}", m.exponent, m.lhs, m.rhs)
}

fn params_json(p: &IdentityParams) -> Value {
    match p.n {
        Some(n) => json!({ "n": n }),
        None => json!({}),
    }
}

fn report_json(r: &VerifyReport) -> Value {
    json!({
        "id": r.id,
        "params": params_json(&r.params),
        "trunc": r.trunc,
        "equal": r.equal,
        "first_mismatch": r.first_mismatch.as_ref().map(mismatch_json),
    })
}

fn report_text(label: &str, r: &VerifyReport) -> String {
    let verdict =
        if r.equal { "equal".to_string() } else { r.first_mismatch.as_ref().map_or_else(String::new, mismatch_text) };
    format!("{} {} {label}trunc={}: {verdict}", r.id, r.params, r.trunc)
}

fn cmd_verify(fmt: Format, id: &str, n: Option<u32>, trunc: i64, combinatorial: bool, cap: u64) -> Run {
    let params = IdentityParams { n };
    let mut reports = vec![("", verify(id, &params, trunc).map_err(identity_error)?)];
    if combinatorial {
        let t = trunc.min(i64::try_from(cap).unwrap_or(i64::MAX - 1) + 1);
        reports.push(("combinatorial ", verify_combinatorial(id, &params, t).map_err(identity_error)?));
    }
    let equal = reports.iter().all(|(_, r)| r.equal);
    match fmt {
        Format::Json if reports.len() == 1 => println!("{}", report_json(&reports[0].1)),
        Format::Json => println!("{}", Value::Array(reports.iter().map(|(_, r)| report_json(r)).collect())),
        Format::Text => {
            for (label, r) in &reports {
                println!("{}", report_text(label, r));
            }
        }
    }
    Ok(equal)
}

fn bijection_error(e: BijectionError) -> Fail {
    match e {
        BijectionError::UnknownBijection(_) | BijectionError::MissingParam(_) => usage(e),
        _ => failed(e),
    }
}

pub(crate) fn bijection_report_json(name: &str, r: &BijectionReport) -> Value {
    json!({
        "name": name,
        "passed": r.passed(),
        "domain_size": r.domain_size,
        "codomain_size": r.codomain_size,
        "roundtrip_failures": r.roundtrip_failures,
        "weight_violations": r.weight_violations,
        "image_violations": r.image_violations,
        "collisions": r.collisions,
        "weight_multiset_match": r.weight_multiset_match,
        "witness": r.witness,
    })
}

fn cmd_bijection(fmt: Format, name: &str, params: BijectionParams, cap: u64) -> Run {
    let r = check_bijection(name, &params, Some(cap)).map_err(bijection_error)?;
    match fmt {
        Format::Json => println!("{}", bijection_report_json(name, &r)),
        Format::Text => {
            println!("{name}: {}", if r.passed() { "ok" } else { "FAILED" });
            println!("  domain {} codomain {}", r.domain_size, r.codomain_size);
            println!(
                "  roundtrip failures {} weight violations {} image violations {} collisions {}",
                r.roundtrip_failures, r.weight_violations, r.image_violations, r.collisions
            );
            println!("  weight multisets match: {}", r.weight_multiset_match);
            if let Some(w) = &r.witness {
                println!("  witness: {w}");
            }
        }
    }
    Ok(r.passed())
}

/// Render a parse error with a caret under the offending column.
fn parse_error(src: &str, e: &ParseError) -> Fail {
    let line = src.lines().nth(e.line.saturating_sub(1)).unwrap_or("");
    let caret = " ".repeat(e.column.saturating_sub(1));
    usage(format!("parse error at {e}\n  {line}\n  {caret}^"))
}

fn evaluate(src: &str, bind: &BTreeMap<String, i64>, trunc: i64) -> Result<MultiSeries, Fail> {
    let expr = parse(src).map_err(|e| parse_error(src, &e))?;
    eval(&expr, bind, trunc).map_err(|e: EvalError| usage(format!("cannot evaluate {src:?}: {e}")))
}

/// Coefficients of each auxiliary monomial from its lowest exponent (or 0)
/// up to the truncation order, or to the last term of an exact series.
fn coefficient_rows(s: &MultiSeries) -> Vec<(String, i64, Vec<String>)> {
    let mut rows = Vec::new();
    for (m, qs) in s.entries() {
        let lo = qs.min_exp().unwrap_or(0).min(0);
        let hi = if s.is_exact() { qs.max_exp().unwrap_or(0) } else { s.trunc() - 1 };
        rows.push((m.to_string(), lo, (lo..=hi).map(|e| qs.coeff(e).to_string()).collect()));
    }
    if rows.is_empty() {
        let hi = if s.is_exact() { 0 } else { s.trunc() - 1 };
        rows.push(("1".to_string(), 0, (0..=hi).map(|_| "0".to_string()).collect()));
    }
    rows
}

fn cmd_eval(fmt: Format, lhs: &str, rhs: Option<&str>, bindings: Vec<(String, i64)>, trunc: i64) -> Run {
    let bind: BTreeMap<String, i64> = bindings.into_iter().collect();
    let a = evaluate(lhs, &bind, trunc)?;
    let Some(rhs) = rhs else {
        let rows = coefficient_rows(&a);
        match fmt {
            Format::Json => {
                let rows: Vec<Value> =
                    rows.iter().map(|(m, lo, cs)| json!({ "monomial": m, "from": lo, "coefficients": cs })).collect();
                println!("{}", json!({ "series": a.to_string(), "trunc": a.trunc(), "terms": rows }));
            }
            Format::Text => {
                println!("{a}");
                for (m, lo, cs) in rows {
                    println!("{m} from q^{lo}: [{}]", cs.join(", "));
                }
            }
        }
        return Ok(true);
    };
    let b = evaluate(rhs, &bind, trunc)?;
    let m = a.first_mismatch(&b);
    let t = a.trunc().min(b.trunc());
    match fmt {
        Format::Json => println!(
            "{}",
            json!({
                "id": "eval",
                "params": bind,
                "trunc": t,
                "equal": m.is_none(),
                "first_mismatch": m.as_ref().map(mismatch_json),
            })
        ),
        Format::Text => match &m {
            None => println!("equal up to q^{t}"),
            Some(m) => println!("{}", mismatch_text(m)),
        },
    }
    Ok(m.is_none())
}

fn cmd_table(fmt: Format, max_n: u32) -> Run {
    let rows = count_table(max_n).map_err(identity_error)?;
    let agree = rows.iter().all(|r| r.omega_agrees() && r.nu_agrees());
    match fmt {
        Format::Json => {
            let rows: Vec<Value> = rows
                .iter()
                .map(|r| {
                    json!({
                        "n": r.n,
                        "p_omega": r.p_omega,
                        "ay1": r.ay1.to_string(),
                        "p_nu": r.p_nu,
                        "ay2": r.ay2.to_string(),
                        "omega_agrees": r.omega_agrees(),
                        "nu_agrees": r.nu_agrees(),
                    })
                })
                .collect();
            println!("{}", json!({ "rows": rows, "agree": agree }));
        }
        Format::Text => {
            println!("{:>4} {:>10} {:>10} {:>10} {:>10}", "N", "p_omega", "ay1", "p_nu", "ay2");
            for r in &rows {
                let flag = match (r.omega_agrees(), r.nu_agrees()) {
                    (true, true) => "",
                    (false, true) => "  omega differs",
                    (true, false) => "  nu differs",
                    (false, false) => "  omega and nu differ",
                };
                println!("{:>4} {:>10} {:>10} {:>10} {:>10}{flag}", r.n, r.p_omega, r.ay1, r.p_nu, r.ay2);
            }
        }
    }
    if !agree {
        eprintln!("qbij: counts disagree with the series coefficients");
    }
    Ok(agree)
}

fn kind_name(k: Kind) -> &'static str {
    match k {
        Kind::PolynomialExact => "polynomial",
        Kind::TruncatedSeries => "series",
        Kind::Integer => "integer",
    }
}

fn cmd_list(fmt: Format) -> Run {
    match fmt {
        Format::Json => {
            let ids: Vec<Value> = REGISTRY
                .iter()
                .map(|c| {
                    json!({
                        "id": c.id,
                        "takes_n": c.takes_n,
                        "kind": kind_name(c.kind),
                        "families": c.families,
                        "statement": c.statement,
                    })
                })
                .collect();
            println!("{}", json!({ "identities": ids, "bijections": BIJECTIONS }));
        }
        Format::Text => {
            println!("identities:");
            for c in &REGISTRY {
                let n = if c.takes_n { "--n" } else { "" };
                println!("  {:<11} {:<3} {:<10} {}", c.id, n, kind_name(c.kind), c.statement);
            }
            println!("bijections:");
            for b in BIJECTIONS {
                println!("  {b}");
            }
        }
    }
    Ok(true)
}
