//! Command implementations shared by the binary and the acceptance suite.
//! Every command is a pure function from a parsed configuration to an
//! output string; rendering is deterministic (sorted keys, canonical
//! element order) so outputs are byte-identical across runs.

use std::fmt::Write as _;
use std::sync::Arc;

use serde_json::{json, Value};
use wzs_core::group::{FiniteAbelianGroup, GSubset, WeightSet};
use wzs_core::monoid::{theorem62_prediction, LengthSet, MonoidHandle};
use wzs_core::qform::{
    admissible, in_rcirc_via_transfer, lengths_in_rcirc, represents_principal_bruteforce,
    theta_prime, Discriminant, FormClassGroup,
};
use wzs_core::sequence::Sequence;
use wzs_core::structure::{is_seminormal, ClassSemigroup};
use wzs_core::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl std::str::FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "text" => Ok(Format::Text),
            other => Err(format!("unknown format {other:?} (expected json|csv|text)")),
        }
    }
}

/// Parses a comma-separated invariant factor list, e.g. "3" or "2,4".
pub fn parse_group(spec: &str) -> Result<Arc<FiniteAbelianGroup>> {
    let factors: Vec<u64> = spec
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<u64>()
                .map_err(|e| Error::Parse(format!("group factor {p:?}: {e}")))
        })
        .collect::<Result<_>>()?;
    FiniteAbelianGroup::new(&factors)
}

/// Parses a weight-set name: id, pm, or aut.
pub fn parse_weights(spec: &str, group: &Arc<FiniteAbelianGroup>) -> Result<WeightSet> {
    match spec {
        "id" => Ok(WeightSet::identity(group)),
        "pm" => Ok(WeightSet::plus_minus(group)),
        "aut" => WeightSet::full_aut(group),
        other => Err(Error::Parse(format!(
            "unknown weight set {other:?} (expected id|pm|aut)"
        ))),
    }
}

fn group_label(group: &FiniteAbelianGroup) -> String {
    group.to_string()
}

fn lengths_json(l: &LengthSet) -> Value {
    json!(l.iter().copied().collect::<Vec<u32>>())
}

fn lengths_text(l: &LengthSet) -> String {
    let parts: Vec<String> = l.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

fn subset_text(group: &FiniteAbelianGroup, s: GSubset) -> String {
    let parts: Vec<String> = s
        .iter()
        .map(|e| {
            let coords: Vec<String> = group.coords(e).iter().map(|c| c.to_string()).collect();
            format!("({})", coords.join(","))
        })
        .collect();
    format!("{{{}}}", parts.join(","))
}

fn render(format: Format, report: &Value, text: String) -> String {
    match format {
        Format::Json => {
            let mut out = serde_json::to_string_pretty(report).expect("serializable");
            out.push('\n');
            out
        }
        // CSV is reserved for sweeps; other commands fall back to text
        Format::Csv | Format::Text => text,
    }
}

pub fn cmd_atoms(
    group: &Arc<FiniteAbelianGroup>,
    weights: &str,
    format: Format,
) -> Result<String> {
    let gamma = parse_weights(weights, group)?;
    let handle = MonoidHandle::new(group.clone(), gamma);
    let atoms: Vec<String> = handle.atoms().iter().map(|a| a.to_string()).collect();
    let report = json!({
        "group": group_label(group),
        "weights": weights,
        "atom_count": atoms.len(),
        "davenport_large": handle.davenport_large(),
        "davenport_small": handle.davenport_small(),
        "atoms": atoms,
    });
    let mut text = format!(
        "atoms of B_{weights}({}) [{} atoms, D = {}, d = {}]\n",
        group_label(group),
        atoms.len(),
        handle.davenport_large(),
        handle.davenport_small()
    );
    for a in &atoms {
        let _ = writeln!(text, "  {a}");
    }
    Ok(render(format, &report, text))
}

pub fn cmd_invariants(
    group: &Arc<FiniteAbelianGroup>,
    weights: &str,
    length_bound: u32,
    omega_cap: u32,
    k_max: u32,
    format: Format,
) -> Result<String> {
    let gamma = parse_weights(weights, group)?;
    let handle = MonoidHandle::new(group.clone(), gamma);
    let d_large = handle.davenport_large();
    let d_small = handle.davenport_small();
    let delta = handle.delta_set(length_bound);
    let (cat, cat_exact) = handle.catenary_degree(length_bound)?;
    let (omega, omega_exact) = handle.omega_monoid(omega_cap)?;
    let mut k_rows = Vec::new();
    for k in 2..=k_max {
        let (uk, uk_exact) = handle.unions_uk(k, length_bound);
        let (rho, rho_exact) = handle.rho_k(k, length_bound)?;
        let (lam, lam_exact) = handle.lambda_k(k, length_bound)?;
        let prediction = theorem62_prediction(group, k)
            .ok()
            .map(|(lo, hi)| json!({"lo": lo, "hi": hi}));
        k_rows.push(json!({
            "k": k,
            "u_k": uk.iter().copied().collect::<Vec<u32>>(),
            "u_k_exact": uk_exact,
            "rho_k": rho,
            "rho_k_exact": rho_exact,
            "lambda_k": lam,
            "lambda_k_exact": lam_exact,
            "interval_prediction": prediction,
        }));
    }
    let report = json!({
        "group": group_label(group),
        "weights": weights,
        "length_bound": length_bound,
        "omega_cap": omega_cap,
        "davenport_large": d_large,
        "davenport_small": d_small,
        "delta_at_bound": delta.iter().copied().collect::<Vec<u32>>(),
        "catenary_at_bound": cat,
        "catenary_exact": cat_exact,
        "omega_at_cap": omega,
        "omega_exact": omega_exact,
        "unions": k_rows,
    });
    let mut text = format!(
        "invariants of B_{weights}({}) [length bound {length_bound}, omega cap {omega_cap}]\n",
        group_label(group)
    );
    let _ = writeln!(text, "  D = {d_large}, d = {d_small}");
    let delta_parts: Vec<String> = delta.iter().map(|x| x.to_string()).collect();
    let _ = writeln!(text, "  delta@{length_bound} = {{{}}}", delta_parts.join(","));
    let _ = writeln!(
        text,
        "  catenary@{length_bound} = {cat} (exact: {cat_exact})"
    );
    let _ = writeln!(text, "  omega@{omega_cap} = {omega} (exact: {omega_exact})");
    for row in &report["unions"].as_array().cloned().unwrap_or_default() {
        let _ = writeln!(
            text,
            "  k={} U_k={} exact={} rho={} lambda={} prediction={}",
            row["k"],
            row["u_k"],
            row["u_k_exact"],
            row["rho_k"],
            row["lambda_k"],
            row["interval_prediction"]
        );
    }
    Ok(render(format, &report, text))
}

pub fn cmd_lengths(
    group: &Arc<FiniteAbelianGroup>,
    weights: &str,
    seq_literal: &str,
    format: Format,
) -> Result<String> {
    let gamma = parse_weights(weights, group)?;
    let handle = MonoidHandle::new(group.clone(), gamma);
    let s = Sequence::parse(group.clone(), seq_literal)?;
    let lengths = handle.set_of_lengths(&s)?;
    let report = json!({
        "group": group_label(group),
        "weights": weights,
        "sequence": s.to_string(),
        "lengths": lengths_json(&lengths),
    });
    let text = format!(
        "L({}) over B_{weights}({}) = {}\n",
        s,
        group_label(group),
        lengths_text(&lengths)
    );
    Ok(render(format, &report, text))
}

pub fn cmd_seminormal(
    group: &Arc<FiniteAbelianGroup>,
    weights: &str,
    length_bound: u32,
    format: Format,
) -> Result<String> {
    let gamma = parse_weights(weights, group)?;
    let r = is_seminormal(group, &gamma, length_bound)?;
    let report = json!({
        "group": group_label(group),
        "weights": weights,
        "length_bound": length_bound,
        "seminormal": r.seminormal,
        "predicted": r.predicted_seminormal,
        "witness": r.witness.as_ref().map(|w| w.to_string()),
    });
    let text = format!(
        "B_{weights}({}) seminormal@{length_bound}: {} (predicted: {}){}\n",
        group_label(group),
        r.seminormal,
        r.predicted_seminormal
            .map_or("n/a".to_string(), |p| p.to_string()),
        r.witness
            .as_ref()
            .map_or(String::new(), |w| format!(", witness {w}"))
    );
    Ok(render(format, &report, text))
}

pub fn cmd_class_semigroup(
    group: &Arc<FiniteAbelianGroup>,
    weights: &str,
    format: Format,
) -> Result<String> {
    let gamma = parse_weights(weights, group)?;
    let cs = ClassSemigroup::new(group.clone(), &gamma)?;
    let elements: Vec<String> = cs
        .elements
        .iter()
        .map(|&s| subset_text(group, s))
        .collect();
    let constituents: Vec<Value> = cs
        .idempotents
        .iter()
        .map(|&e| {
            json!({
                "idempotent": elements[e],
                "size": cs.constituent(e).len(),
                "elementary_2": cs.constituent_is_elementary_2(e),
            })
        })
        .collect();
    let report = json!({
        "group": group_label(group),
        "weights": weights,
        "size": cs.elements.len(),
        "elements": elements,
        "idempotent_count": cs.idempotents.len(),
        "clifford": cs.is_clifford(),
        "constituents": constituents,
    });
    let mut text = format!(
        "class semigroup of B_{weights}({}): {} elements, {} idempotents, clifford: {}\n",
        group_label(group),
        cs.elements.len(),
        cs.idempotents.len(),
        cs.is_clifford()
    );
    for c in &constituents {
        let _ = writeln!(
            text,
            "  idempotent {} -> constituent of size {} (elementary 2: {})",
            c["idempotent"].as_str().unwrap_or_default(),
            c["size"],
            c["elementary_2"]
        );
    }
    Ok(render(format, &report, text))
}

pub fn cmd_qform_classgroup(disc: i64, format: Format) -> Result<String> {
    let d = Discriminant::new(disc)?;
    let cg = FormClassGroup::new(d)?;
    let forms: Vec<String> = cg.forms.iter().map(|f| f.to_string()).collect();
    let report = json!({
        "disc": disc,
        "fundamental": d.fundamental,
        "conductor": d.conductor,
        "h": cg.h,
        "invariant_factors": cg.group.invariant_factors(),
        "principal": forms[cg.principal],
        "forms": forms,
    });
    let mut text = format!(
        "class group of discriminant {disc} (fundamental {}, conductor {}): h = {}, structure {}\n",
        d.fundamental,
        d.conductor,
        cg.h,
        cg.group
    );
    for f in &forms {
        let _ = writeln!(text, "  {f}");
    }
    Ok(render(format, &report, text))
}

pub fn cmd_qform_check(disc: i64, n: u64, format: Format) -> Result<String> {
    let d = Discriminant::new(disc)?;
    let cg = FormClassGroup::new(d)?;
    let adm = admissible(&cg, n);
    let transfer = if adm {
        Some(in_rcirc_via_transfer(&cg, n)?)
    } else {
        None
    };
    let brute = represents_principal_bruteforce(&d, n);
    let lengths = match transfer {
        Some(true) => Some(lengths_in_rcirc(&cg, n)?),
        _ => None,
    };
    let report = json!({
        "disc": disc,
        "n": n,
        "admissible": adm,
        "transfer_member": transfer,
        "principal_represents": brute,
        "lengths": lengths.as_ref().map(lengths_json),
    });
    let verdict = match transfer {
        Some(true) => "represented (principal class)",
        Some(false) => "not represented",
        None => "not admissible (inert prime factor or conductor)",
    };
    let text = format!(
        "disc {disc}, n = {n}: {verdict}; direct search: {}{}\n",
        brute,
        lengths
            .as_ref()
            .map_or(String::new(), |l| format!("; lengths {}", lengths_text(l)))
    );
    Ok(render(format, &report, text))
}

fn prime_signature(n: u64) -> String {
    let mut parts = Vec::new();
    let mut n = n;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            parts.push(if e == 1 {
                p.to_string()
            } else {
                format!("{p}^{e}")
            });
        }
        p += 1;
    }
    if n > 1 {
        parts.push(n.to_string());
    }
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

fn lengths_csv(l: &LengthSet) -> String {
    let parts: Vec<String> = l.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", parts.join(";"))
}

/// CSV sweep over all admissible n up to the bound: transfer verdict,
/// brute-force verdict, and both length computations for members.
pub fn cmd_qform_sweep(disc: i64, max_n: u64, _format: Format) -> Result<String> {
    let d = Discriminant::new(disc)?;
    let cg = FormClassGroup::new(d)?;
    let handle = MonoidHandle::new(cg.group.clone(), WeightSet::plus_minus(&cg.group));
    let mut out = String::from(
        "n,prime_signature,transfer_verdict,bruteforce_verdict,lengths_monoid,lengths_sequences\n",
    );
    for n in 1..=max_n {
        if !admissible(&cg, n) {
            continue;
        }
        let transfer = in_rcirc_via_transfer(&cg, n)?;
        let brute = represents_principal_bruteforce(&d, n);
        let (lm, ls) = if transfer {
            let seq = theta_prime(&cg, n)?;
            (
                lengths_csv(&lengths_in_rcirc(&cg, n)?),
                lengths_csv(&handle.set_of_lengths(&seq)?),
            )
        } else {
            (String::new(), String::new())
        };
        let _ = writeln!(
            out,
            "{n},{},{transfer},{brute},{lm},{ls}",
            prime_signature(n)
        );
    }
    Ok(out)
}
