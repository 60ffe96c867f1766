use std::fmt::Write as _;
use std::str::FromStr;

use serde_json::{json, Value};

use super::{Entry, GroupExpr, KsstReport, LedgerResult, Slot};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Table,
    Json,
}

#[derive(Debug, thiserror::Error)]
#[error("unknown format '{0}' (expected table or json)")]
pub struct UnknownFormat(pub String);

impl FromStr for Format {
    type Err = UnknownFormat;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "table" => Ok(Format::Table),
            "json" => Ok(Format::Json),
            other => Err(UnknownFormat(other.to_string())),
        }
    }
}

fn trace_text(e: &Entry) -> String {
    if e.trace.is_empty() {
        "unresolved".to_string()
    } else {
        format!("via {}", e.trace_strings().join(" ; "))
    }
}

fn row(label: &str, width: usize, value: GroupExpr, n: usize, tail: &str) -> String {
    let mut parts = vec![value.to_string()];
    if let Some(d) = value.dim(n) {
        parts.push(format!("dim {d}"));
    }
    parts.push(tail.to_string());
    format!("{label:>width$} → {}", parts.join(", "))
}

pub fn ledger_table(r: &LedgerResult) -> String {
    let n = r.n();
    let mut out = format!("ledger n={} assumptions={}\n", n, r.assumptions());
    let labels: Vec<String> = r.entries().map(|(s, _)| s.to_string()).collect();
    let width = labels.iter().map(|l| l.chars().count()).max().unwrap_or(0);
    for (label, (_, e)) in labels.iter().zip(r.entries()) {
        out.push_str(&row(label, width, e.value, n, &trace_text(e)));
        out.push('\n');
    }
    out.push_str("cycle-class images\n");
    for ((p, k), e) in r.tgroups() {
        let label = GroupExpr::Tgroup(*p, *k).to_string();
        out.push_str(&row(&label, width, e.value, n, &trace_text(e)));
        out.push('\n');
    }
    let unknown = r.unknown_slots();
    let _ = writeln!(out, "{} slots, {} unresolved", r.len(), unknown.len());
    out
}

fn value_json(v: GroupExpr) -> Value {
    json!({ "tag": v.tag(), "params": v.params() })
}

fn with_dim(mut obj: Value, v: GroupExpr, n: usize) -> Value {
    if let Some(d) = v.dim(n) {
        obj["dim"] = json!(d);
    }
    obj
}

pub fn ledger_json(r: &LedgerResult) -> String {
    let n = r.n();
    let slots: Vec<Value> = r
        .entries()
        .map(|(Slot { p, k, s }, e)| {
            let obj = json!({
                "p": p, "k": k, "s": s,
                "value": value_json(e.value),
                "trace": e.trace_strings(),
            });
            with_dim(obj, e.value, n)
        })
        .collect();
    let tgroups: Vec<Value> = r
        .tgroups()
        .iter()
        .map(|((p, k), e)| {
            let obj = json!({
                "p": p, "k": k,
                "value": value_json(e.value),
                "trace": e.trace_strings(),
            });
            with_dim(obj, e.value, n)
        })
        .collect();
    let doc = json!({
        "n": n,
        "assumptions": r.assumptions().name(),
        "slots": slots,
        "tgroups": tgroups,
    });
    serde_json::to_string_pretty(&doc).expect("plain JSON") + "\n"
}

pub fn ksst_table(report: &KsstReport, r: &LedgerResult) -> String {
    let n = report.n;
    let mut out = format!(
        "ksst n={} j={} assumptions={}\n",
        n,
        report.j,
        r.assumptions()
    );
    let labels: Vec<String> = report
        .summands()
        .map(|t| format!("q={} c={} s={} {}", t.q, t.degree, t.s, t.slot))
        .collect();
    let width = labels.iter().map(|l| l.chars().count()).max().unwrap_or(0);
    for (label, t) in labels.iter().zip(report.summands()) {
        let tail = r
            .entry(t.slot)
            .map_or("via R-range".to_string(), trace_text);
        out.push_str(&row(label, width, t.value, n, &tail));
        out.push('\n');
    }
    if labels.is_empty() {
        out.push_str("(zero)\n");
    }
    match report.total_dim() {
        Some(d) => {
            let _ = writeln!(out, "total dim {d}");
        }
        None => out.push_str("total dim unknown\n"),
    }
    out
}

pub fn ksst_json(report: &KsstReport, r: &LedgerResult) -> String {
    let n = report.n;
    let summands: Vec<Value> = report
        .summands()
        .map(|t| {
            let obj = json!({
                "q": t.q, "c": t.degree, "s": t.s,
                "slot": [t.slot.p, t.slot.k, t.slot.s],
                "value": value_json(t.value),
            });
            with_dim(obj, t.value, n)
        })
        .collect();
    let doc = json!({
        "n": n,
        "j": report.j,
        "assumptions": r.assumptions().name(),
        "summands": summands,
        "total_dim": report.total_dim(),
    });
    serde_json::to_string_pretty(&doc).expect("plain JSON") + "\n"
}
