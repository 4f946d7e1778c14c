//! `bijection <name> --demo <input>`: push one element through a map,
//! print every stage, and confirm the inverse recovers the input.

use qbij_core::bijections::{
    durfee_merge, durfee_split, nu3_inverse, nu3_trace, phi, phi_inv, psi, psi_inv, rho, rho_inv, tau, tau_inv,
    BijectionError,
};
use qbij_core::partitions::{parse_signed_set, B1Pair, DistinctPartition, Partition, RectanglePair};
use serde_json::json;

use crate::{failed, usage, Fail, Format, Run};

struct Trace {
    stages: Vec<(&'static str, String)>,
    roundtrip: bool,
    /// Partitions worth drawing, with their labels.
    diagrams: Vec<(&'static str, Partition)>,
}

fn need(v: Option<u32>, flag: &str, name: &str) -> Result<u32, Fail> {
    v.ok_or_else(|| usage(format!("{name} --demo needs {flag}")))
}

fn map_error(e: BijectionError) -> Fail {
    match e {
        BijectionError::InvariantBroken { .. } => failed(e),
        _ => usage(e),
    }
}

fn ferrers(p: &Partition) -> String {
    if p.is_empty() {
        return "    (empty)".to_string();
    }
    p.parts().iter().map(|&r| format!("    {}", "*".repeat(r as usize))).collect::<Vec<_>>().join("\n")
}

fn trace(name: &str, n: Option<u32>, k: Option<u32>, input: &str) -> Result<Trace, Fail> {
    let syntax = |e| usage(format!("cannot read {input:?}: {e}"));
    let t = match name {
        "phi" => {
            let n = need(n, "--n", name)?;
            let (l, p) = input.split_once('|').ok_or_else(|| usage("phi input is \"(lambda)|(pi)\""))?;
            let pair = B1Pair {
                lambda: l.parse::<DistinctPartition>().map_err(syntax)?,
                pi: p.parse::<Partition>().map_err(syntax)?,
            };
            let out = phi(n, &pair).map_err(map_error)?;
            Trace {
                stages: vec![
                    ("lambda", pair.lambda.to_string()),
                    ("pi", pair.pi.to_string()),
                    ("weight", pair.weight().to_string()),
                    ("t", out.t.to_string()),
                    ("mu", out.mu().to_string()),
                    ("nu", out.nu.to_string()),
                    ("weight", out.weight().to_string()),
                ],
                roundtrip: phi_inv(n, &out).map_err(map_error)? == pair,
                diagrams: vec![("pi", pair.pi.clone()), ("nu", out.nu.clone())],
            }
        }
        "psi" => {
            let n = need(n, "--n", name)?;
            let set = parse_signed_set(n, input).map_err(syntax)?;
            let out = psi(n, &set).map_err(map_error)?;
            Trace {
                stages: vec![
                    ("input", set.to_string()),
                    ("weight", set.weight().to_string()),
                    ("lambda", out.to_string()),
                ],
                roundtrip: psi_inv(n, &out).map_err(map_error)? == set,
                diagrams: vec![("lambda", out.as_partition())],
            }
        }
        "tau" => {
            let n = need(n, "--n", name)?;
            let set = parse_signed_set(n, input).map_err(syntax)?;
            let out = tau(n, &set).map_err(map_error)?;
            Trace {
                stages: vec![
                    ("input", set.to_string()),
                    ("weight", set.weight().to_string()),
                    ("output", out.to_string()),
                    ("weight", out.weight().to_string()),
                ],
                roundtrip: tau_inv(n, &out).map_err(map_error)? == set,
                diagrams: Vec::new(),
            }
        }
        "rho" => {
            let n = need(n, "--n", name)?;
            let set = parse_signed_set(n, input).map_err(syntax)?;
            let out = rho(n, &set).map_err(map_error)?;
            Trace {
                stages: vec![
                    ("input", set.to_string()),
                    ("weight", set.weight().to_string()),
                    ("t", out.t.to_string()),
                    ("mu", out.mu().to_string()),
                    ("nu", out.nu.to_string()),
                    ("weight", out.weight().to_string()),
                ],
                roundtrip: rho_inv(n, &out).map_err(map_error)? == set,
                diagrams: vec![("nu", out.nu.clone())],
            }
        }
        "durfee_split" => {
            let lam: Partition = input.parse().map_err(syntax)?;
            let out = durfee_split(&lam).map_err(map_error)?;
            Trace {
                stages: vec![
                    ("lambda", lam.to_string()),
                    ("durfee", lam.durfee_size().to_string()),
                    ("mu", format!("({})", out.mu)),
                    ("nu", out.nu.to_string()),
                ],
                roundtrip: durfee_merge(&out).map_err(map_error)? == lam,
                diagrams: vec![("lambda", lam.clone())],
            }
        }
        "nu3" => {
            let n = need(n, "--n", name)?;
            let pi: Partition = input.parse().map_err(syntax)?;
            let k = k.unwrap_or(pi.len() as u32);
            let pair = RectanglePair { n, pi };
            let tr = nu3_trace(n, k, &pair).map_err(map_error)?;
            let hook = qbij_core::partitions::HookPair { mu: tr.mu, nu: tr.nu.clone() };
            Trace {
                stages: vec![
                    ("lambda", pair.rectangle().to_string()),
                    ("pi", pair.pi.to_string()),
                    ("nu*", tr.nu_star.to_string()),
                    ("mu", format!("({})", tr.mu)),
                    ("nu'", tr.nu_prime.to_string()),
                    ("nu", tr.nu.to_string()),
                ],
                roundtrip: nu3_inverse(n, k, &hook).map_err(map_error)? == pair,
                diagrams: vec![("nu*", tr.nu_star.clone()), ("nu'", tr.nu_prime.clone())],
            }
        }
        other => return Err(usage(BijectionError::UnknownBijection(other.to_string()))),
    };
    Ok(t)
}

pub(crate) fn run(fmt: Format, name: &str, n: Option<u32>, k: Option<u32>, input: &str) -> Run {
    let t = trace(name, n, k, input)?;
    match fmt {
        Format::Json => {
            let stages: Vec<_> = t.stages.iter().map(|(l, v)| json!({ "stage": l, "value": v })).collect();
            println!("{}", json!({ "name": name, "stages": stages, "roundtrip": t.roundtrip }));
        }
        Format::Text => {
            for (label, value) in &t.stages {
                println!("{label:>7} = {value}");
            }
            for (label, p) in &t.diagrams {
                println!("{label}:\n{}", ferrers(p));
            }
            println!("inverse recovers input: {}", t.roundtrip);
        }
    }
    Ok(t.roundtrip)
}
