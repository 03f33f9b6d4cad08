//! Text renderings of reports, tables, criteria and oracle runs.

use std::fmt::Write as _;

use einstab::criteria::{CasimirRow, CriterionResult};
use einstab::exact::Rational;
use einstab::oracle::OracleReport;
use einstab::spaces::report::{CriteriaReport, CriterionReport};
use einstab::spaces::{FieldStatus, Report, RowComparison, TableId};
use serde::Serialize;

use crate::Format;

/// The serde name of a unit enum value.
fn tag<T: Serialize>(v: &T) -> String {
    match serde_json::to_value(v) {
        Ok(serde_json::Value::String(s)) => s,
        Ok(other) => other.to_string(),
        Err(_) => String::new(),
    }
}

fn opt<T: ToString>(v: Option<&T>) -> String {
    v.map_or_else(|| "—".to_string(), ToString::to_string)
}

fn json<T: Serialize + ?Sized>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("output serializes");
    s.push('\n');
    s
}

fn csv_text(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
}

fn md_cell(s: &str) -> String {
    s.replace('|', "\\|").replace('\n', " ")
}

fn md_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = format!("| {} |\n|{}\n", header.join(" | "), "---|".repeat(header.len()));
    for r in rows {
        let cells: Vec<String> = r.iter().map(|c| md_cell(c)).collect();
        let _ = writeln!(out, "| {} |", cells.join(" | "));
    }
    out
}

fn spectrum_text(report: &Report) -> Option<String> {
    let entries = report.spectrum.as_ref()?;
    Some(entries.iter().map(|e| format!("{}×{}", e.value, e.mult)).collect::<Vec<_>>().join(", "))
}

fn criterion_text(c: &CriterionReport) -> String {
    let mut s = format!("{} ({}: {})", c.flag, c.part, c.conclusion.describe());
    if let Some(p) = c.implied_by {
        let _ = write!(s, ", implied by {p}");
    }
    if let Some((lo, hi)) = &c.bound_interval {
        let _ = write!(s, "; [λ_p, λ_p^max] ⊂ [{lo}, {hi}]");
    }
    if let Some((t1, t3)) = &c.thresholds {
        let _ = write!(s, "; thresholds {t1}, {t3}");
    }
    s
}

/// `(field, value)` pairs in a fixed order.
fn report_fields(r: &Report) -> Vec<(&'static str, String)> {
    let mut f = vec![
        ("spec", r.spec.clone()),
        ("space", r.title.clone()),
        ("algebra", r.algebra.clone()),
        ("dim_g", r.dim_g.to_string()),
        ("dim_k", r.dim_k.to_string()),
        ("r", r.r.to_string()),
        ("multiplicity_free", r.multiplicity_free.to_string()),
        ("rho", opt(r.rho.as_ref())),
    ];
    let routes = [
        ("killing-ratios", &r.rho_routes.killing_ratios),
        ("structural-constants", &r.rho_routes.structural_constants),
        ("casimir", &r.rho_routes.casimir),
    ];
    let routes: Vec<String> = routes.iter().filter_map(|(n, v)| v.as_ref().map(|v| format!("{n} {v}"))).collect();
    f.push(("rho_routes", routes.join(", ")));
    f.push(("lambda_p", opt(r.lambda_p.as_ref())));
    f.push(("lambda_p_mid", opt(r.lambda_p_mid.as_ref())));
    f.push(("lambda_p_max", opt(r.lambda_p_max.as_ref())));
    f.push(("spectrum", spectrum_text(r).unwrap_or_else(|| "—".into())));
    match &r.verdict {
        Some(v) => {
            f.push(("verdict", v.kind.to_string()));
            f.push(("coindex", opt(v.coindex.as_ref())));
            f.push(("nullity", opt(v.nullity.as_ref())));
            f.push(("conclusive", v.conclusive.to_string()));
            f.push(("nondegenerate", opt(v.nondegenerate.as_ref())));
            f.push(("source", tag(&v.source)));
            f.push(("implied", v.implied.iter().map(tag).collect::<Vec<_>>().join(", ")));
        }
        None => f.push(("verdict", "open".into())),
    }
    if let Some(CriteriaReport { c1, c2 }) = &r.criteria {
        f.push(("C1", c1.as_ref().map_or_else(|| "—".into(), criterion_text)));
        f.push(("C2", criterion_text(c2)));
    }
    if let Some(t) = &r.two_summand {
        f.push((
            "two_summand",
            format!("a = {}, b = {}; {} Einstein metrics; Killing metric {}", t.curve.a, t.curve.b, t.einstein_count, t.role),
        ));
    }
    if let Some(d) = &r.dichotomy {
        f.push(("dichotomy", d.statement.clone()));
    }
    if let Some(s) = &r.som {
        f.push((
            "som",
            format!(
                "m = {}, l = {}, l1 = {}, l2 = {}, κ = {}, factors {}, coindex ≥ {}, eigenvectors {}",
                s.m,
                s.l,
                s.l1,
                s.l2,
                s.kappa,
                s.factors.join(" "),
                s.coindex_bound,
                opt(s.eigenvectors_verified.as_ref())
            ),
        ));
    }
    for n in &r.notes {
        f.push(("note", n.clone()));
    }
    for e in &r.errata {
        f.push(("erratum", e.clone()));
    }
    for row in &r.table_rows {
        f.push(("table_row", format!("{} {}: {}", row.table, row.id, row.status)));
    }
    f
}

pub fn report(r: &Report, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = r.to_json();
            s.push('\n');
            s
        }
        Format::Csv => {
            let rows: Vec<Vec<String>> = report_fields(r).into_iter().map(|(k, v)| vec![k.to_string(), v]).collect();
            csv_text(&["field", "value"], &rows)
        }
        Format::Markdown => {
            let rows: Vec<Vec<String>> = report_fields(r).into_iter().map(|(k, v)| vec![k.to_string(), v]).collect();
            format!("## {} (`{}`)\n\n{}", r.title, r.spec, md_table(&["field", "value"], &rows))
        }
    }
}

fn check_cells(row: &RowComparison) -> Vec<Vec<String>> {
    row.checks
        .iter()
        .map(|c| {
            vec![
                row.table.to_string(),
                row.id.clone(),
                row.spec.clone().unwrap_or_default(),
                row.status.to_string(),
                c.field.to_string(),
                c.expected.clone(),
                c.computed.clone().unwrap_or_default(),
                tag(&c.status),
            ]
        })
        .collect()
}

pub fn table(which: TableId, rows: &[RowComparison], format: Format) -> String {
    match format {
        Format::Json => json(rows),
        Format::Csv => {
            let cells: Vec<Vec<String>> = rows.iter().flat_map(check_cells).collect();
            csv_text(&["table", "row", "spec", "row_status", "field", "expected", "computed", "field_status"], &cells)
        }
        Format::Markdown => {
            let cells: Vec<Vec<String>> = rows
                .iter()
                .map(|row| {
                    let notes: Vec<String> = row
                        .checks
                        .iter()
                        .filter(|c| c.status != FieldStatus::Match)
                        .map(|c| {
                            format!(
                                "{}: expected {}, computed {} ({})",
                                c.field,
                                c.expected,
                                c.computed.as_deref().unwrap_or("—"),
                                tag(&c.status)
                            )
                        })
                        .collect();
                    let matched: Vec<String> = row
                        .checks
                        .iter()
                        .filter(|c| c.status == FieldStatus::Match)
                        .map(|c| format!("{} {}", c.field, c.expected))
                        .collect();
                    vec![
                        row.id.clone(),
                        row.spec.clone().unwrap_or_else(|| "—".into()),
                        row.status.to_string(),
                        matched.join("; "),
                        notes.join("; "),
                    ]
                })
                .collect();
            format!("## Table {which}\n\n{}", md_table(&["row", "space", "status", "matched", "differences"], &cells))
        }
    }
}

#[derive(Serialize)]
struct CriteriaOutput<'a> {
    algebra: String,
    dim_g: u64,
    lambda_tau: &'a Rational,
    #[serde(skip_serializing_if = "Option::is_none")]
    lambda_tau_mid: Option<&'a Rational>,
    lambda_tau_max: &'a Rational,
    thresholds: (Rational, Rational),
    #[serde(skip_serializing_if = "Option::is_none")]
    dim_k: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    structural: Option<&'a CriterionResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rho: Option<&'a Rational>,
    #[serde(skip_serializing_if = "Option::is_none")]
    einstein: Option<&'a CriterionResult>,
}

fn structural_line(dim_k: u64, c: &CriterionResult) -> String {
    let (t1, t3) = c.thresholds.clone().expect("structural results carry thresholds");
    let k = dim_k.to_string();
    let comparison = match c.applied.as_str() {
        "sc2-i" => format!("{k} < {t1}"),
        "sc2-ii" => format!("{k} = {t1}"),
        "sc2-iii" => format!("{k} > {t3}"),
        "sc2-iv" => format!("{k} = {t3}"),
        _ => format!("{t1} < {k} < {t3}"),
    };
    if c.applied.as_str() == "none" {
        format!("no part fires: {comparison}")
    } else {
        format!("{} fires: {comparison} → {}", c.applied, c.conclusion.outcome())
    }
}

fn einstein_line(rho: &Rational, row: &CasimirRow, c: &CriterionResult) -> String {
    let x = Rational::int(8) * rho - Rational::one();
    let (lt, lm) = (&row.lambda_tau, row.max());
    let comparison = match c.applied.as_str() {
        "sc1-i" => format!("8ρ − 1 = {x} < λ_τ = {lt}"),
        "sc1-ii" => format!("8ρ − 1 = {x} = λ_τ"),
        "sc1-iii" => format!("8ρ − 1 = {x} > λ_τ^max = {lm}"),
        "sc1-iv" => format!("8ρ − 1 = {x} = λ_τ^max"),
        _ => format!("λ_τ = {lt} < 8ρ − 1 = {x} < λ_τ^max = {lm}"),
    };
    let mut s = if c.applied.as_str() == "none" {
        format!("no part fires: {comparison}")
    } else {
        format!("{} fires: {comparison} → {}", c.applied, c.conclusion.outcome())
    };
    if let Some((lo, hi)) = &c.bound_interval {
        let _ = write!(s, "; [λ_p, λ_p^max] ⊂ [{lo}, {hi}]");
    }
    s
}

pub fn criteria(
    row: &CasimirRow,
    dim_k: Option<u64>,
    structural: Option<&CriterionResult>,
    rho: Option<&Rational>,
    einstein: Option<&CriterionResult>,
    format: Format,
) -> String {
    let thresholds = einstab::criteria::structural_thresholds(row);
    let mut fields = vec![
        ("algebra", row.algebra.to_string()),
        ("dim_g", row.dim_g.to_string()),
        ("lambda_tau", row.lambda_tau.to_string()),
        ("lambda_tau_mid", opt(row.lambda_tau_mid.as_ref())),
        ("lambda_tau_max", row.max().to_string()),
        ("thresholds", format!("{} and {}", thresholds.0, thresholds.1)),
    ];
    if let (Some(k), Some(c)) = (dim_k, structural) {
        fields.push(("C2", structural_line(k, c)));
    }
    if let (Some(r), Some(c)) = (rho, einstein) {
        fields.push(("C1", einstein_line(r, row, c)));
    }
    match format {
        Format::Json => json(&CriteriaOutput {
            algebra: row.algebra.to_string(),
            dim_g: row.dim_g,
            lambda_tau: &row.lambda_tau,
            lambda_tau_mid: row.lambda_tau_mid.as_ref(),
            lambda_tau_max: row.max(),
            thresholds,
            dim_k,
            structural,
            rho,
            einstein,
        }),
        Format::Csv => {
            let rows: Vec<Vec<String>> = fields.into_iter().map(|(k, v)| vec![k.to_string(), v]).collect();
            csv_text(&["field", "value"], &rows)
        }
        Format::Markdown => {
            let rows: Vec<Vec<String>> = fields.into_iter().map(|(k, v)| vec![k.to_string(), v]).collect();
            format!("## Criteria for {}\n\n{}", row.algebra, md_table(&["field", "value"], &rows))
        }
    }
}

fn check_rows(r: &OracleReport) -> Vec<Vec<String>> {
    r.checks
        .iter()
        .map(|c| {
            vec![
                r.target.clone(),
                c.name.clone(),
                if c.pass { "pass" } else { "FAIL" }.to_string(),
                c.observed.clone(),
                c.expected.clone().unwrap_or_default(),
                format!("{:.3e}", c.deviation),
                if c.tolerance == 0.0 { "exact".to_string() } else { format!("{:.0e}", c.tolerance) },
            ]
        })
        .collect()
}

pub fn oracle(reports: &[OracleReport], format: Format) -> String {
    match format {
        Format::Json => json(reports),
        Format::Csv => {
            let rows: Vec<Vec<String>> = reports.iter().flat_map(check_rows).collect();
            csv_text(&["target", "check", "result", "observed", "expected", "deviation", "tolerance"], &rows)
        }
        Format::Markdown => {
            let mut out = String::new();
            for r in reports {
                let dims: Vec<String> = r.summands.iter().map(|(l, d)| format!("{l}:{d}")).collect();
                let _ = writeln!(
                    out,
                    "## {} — {}\n\nso({}), dim k = {}, summands {}\n",
                    r.target,
                    if r.passed() { "all pass" } else { "FAILED" },
                    r.m,
                    r.dim_k,
                    dims.join(" ")
                );
                let constants: Vec<String> = r
                    .constants
                    .iter()
                    .map(|c| {
                        let q = c.rational.as_ref().map_or_else(|| "?".to_string(), ToString::to_string);
                        format!("[{} {} {}] ≈ {:.12} ≈ {q}", c.triple[0], c.triple[1], c.triple[2], c.value)
                    })
                    .collect();
                if !constants.is_empty() {
                    let _ = writeln!(out, "constants: {}\n", constants.join(", "));
                }
                let spectrum: Vec<String> = r.spectrum.iter().map(|x| format!("{x:.10}")).collect();
                let _ = writeln!(out, "spectrum: {}\n", spectrum.join(", "));
                let rows: Vec<Vec<String>> = check_rows(r).into_iter().map(|mut v| v.split_off(1)).collect();
                out.push_str(&md_table(&["check", "result", "observed", "expected", "deviation", "tolerance"], &rows));
                if let Some(c) = &r.conclusion {
                    let _ = writeln!(out, "\n{c}");
                }
                out.push('\n');
            }
            out
        }
    }
}
