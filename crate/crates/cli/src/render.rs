//! Text and JSON output.

use std::fmt::Write;

use serde_json::{json, Value};

use twisted_homology::catalog::SurfaceSpec;
use twisted_homology::homology::{H1Result, KernelCheckReport};
use twisted_homology::linalg::AbelianGroupStructure;
use twisted_homology::representation::RepReport;

pub fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("values serialize")
}

/// Torsion coefficients as JSON integers of any size.
pub fn torsion_json(h: &AbelianGroupStructure) -> Value {
    Value::Array(
        h.torsion
            .iter()
            .map(|t| serde_json::from_str(&t.to_string()).expect("integer literal"))
            .collect(),
    )
}

pub fn h1_text(r: &H1Result) -> String {
    let d = &r.diagnostics;
    let mut out = String::new();
    writeln!(out, "H1 = {}", r.invariants).unwrap();
    writeln!(out, "kernel rank: {}", r.kernel_rank).unwrap();
    writeln!(
        out,
        "generators: {}, relations: {}, chain dimension: {}, boundary chains: {}",
        d.num_generators, d.num_relations, d.chain_dim, r.num_relation_vectors
    )
    .unwrap();
    out
}

pub fn table_text<'a>(rows: impl Iterator<Item = (SurfaceSpec, &'a AbelianGroupStructure, &'a AbelianGroupStructure)>) -> String {
    let rows: Vec<(String, String, String, &str)> = rows
        .map(|(spec, got, want)| {
            let status = if got == want { "ok" } else { "MISMATCH" };
            (spec.to_string(), got.to_string(), want.to_string(), status)
        })
        .collect();
    let w0 = rows.iter().map(|r| r.0.chars().count()).max().unwrap_or(0).max("surface".len());
    let w1 = rows.iter().map(|r| r.1.chars().count()).max().unwrap_or(0).max("H1".len());
    let w2 = rows.iter().map(|r| r.2.chars().count()).max().unwrap_or(0).max("expected".len());
    let mut out = String::new();
    let line = |out: &mut String, a: &str, b: &str, c: &str, d: &str| {
        let pad = |s: &str, w: usize| format!("{s}{}", " ".repeat(w - s.chars().count()));
        writeln!(out, "{}  {}  {}  {d}", pad(a, w0), pad(b, w1), pad(c, w2)).unwrap();
    };
    line(&mut out, "surface", "H1", "expected", "status");
    for r in &rows {
        line(&mut out, &r.0, &r.1, &r.2, r.3);
    }
    out
}

fn relation_name(index: usize, label: &Option<String>) -> String {
    label.clone().unwrap_or_else(|| format!("#{index}"))
}

fn status(exact: bool, in_module: bool) -> &'static str {
    match (exact, in_module) {
        (true, _) => "ok",
        (false, true) => "ok modulo L",
        (false, false) => "FAIL",
    }
}

pub fn action_text(spec: &SurfaceSpec, report: &RepReport, compatible: bool) -> String {
    let mut out = String::new();
    writeln!(out, "{spec}: action on H1").unwrap();
    for r in &report.relations {
        writeln!(out, "  {:<24} {}", relation_name(r.index, &r.label), status(r.exact, r.in_module)).unwrap();
    }
    for g in &report.generators {
        if !(g.inverse_ok && g.unimodular) {
            writeln!(out, "  generator {}: inverse or unimodularity FAIL", g.name).unwrap();
        }
    }
    let exact = report.relations.iter().filter(|r| r.exact).count();
    let modulo = report.relations.iter().filter(|r| !r.exact && r.in_module).count();
    let failed = report.relations.len() - exact - modulo;
    writeln!(out, "relations: {exact} exact, {modulo} modulo L, {failed} failed").unwrap();
    writeln!(out, "module compatibility: {}", if compatible { "ok" } else { "FAIL" }).unwrap();
    writeln!(out, "result: {}", if report.passed && compatible { "PASS" } else { "FAIL" }).unwrap();
    out
}

pub fn action_json(spec: &SurfaceSpec, report: &RepReport, compatible: bool) -> Value {
    let relations: Vec<Value> = report
        .relations
        .iter()
        .map(|r| {
            json!({
                "index": r.index,
                "label": relation_name(r.index, &r.label),
                "exact": r.exact,
                "in_module": r.in_module,
            })
        })
        .collect();
    let generators: Vec<Value> = report
        .generators
        .iter()
        .map(|g| json!({"name": g.name, "inverse_ok": g.inverse_ok, "unimodular": g.unimodular}))
        .collect();
    json!({
        "genus": spec.genus(),
        "boundary": spec.boundary(),
        "relations": relations,
        "generators": generators,
        "module_compatible": compatible,
        "passed": report.passed && compatible,
    })
}

fn kernel_line(name: &str, r: &KernelCheckReport) -> String {
    let yes = |b: bool| if b { "yes" } else { "no" };
    let independence = match r.independence {
        Some(b) => yes(b),
        None => "n/a",
    };
    format!(
        "  {name:<6} candidates {}, membership {} ({} outside), generation {}, independence {independence}",
        r.candidate_count,
        yes(r.membership),
        r.non_members.len(),
        yes(r.generation),
    )
}

pub fn kernel_text(spec: &SurfaceSpec, winner: Option<&str>, reports: &[(String, KernelCheckReport)]) -> String {
    let mut out = String::new();
    let rank = reports.first().map_or(0, |(_, r)| r.kernel_rank);
    writeln!(out, "{spec}: cycle lattice of rank {rank}").unwrap();
    for (name, r) in reports {
        writeln!(out, "{}", kernel_line(name, r)).unwrap();
    }
    match winner {
        Some(w) => writeln!(out, "result: PASS with the {w} sign").unwrap(),
        None => writeln!(out, "result: FAIL, no sign variant generates the cycle lattice").unwrap(),
    }
    out
}

pub fn kernel_json(spec: &SurfaceSpec, winner: Option<&str>, reports: &[(String, KernelCheckReport)]) -> Value {
    let variants: Vec<Value> = reports
        .iter()
        .map(|(name, r)| {
            json!({
                "sign": name,
                "candidates": r.candidate_count,
                "membership": r.membership,
                "non_members": r.non_members,
                "generation": r.generation,
                "independence": r.independence,
                "passed": r.passed(),
            })
        })
        .collect();
    json!({
        "genus": spec.genus(),
        "boundary": spec.boundary(),
        "kernel_rank": reports.first().map_or(0, |(_, r)| r.kernel_rank),
        "variants": variants,
        "winner": winner,
        "passed": winner.is_some(),
    })
}
