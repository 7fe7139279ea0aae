use std::fmt::Write as _;

use rbj_core::rbindex::Census;
use rbj_core::rbop::Flag;
use rbj_core::RBReport;
use serde::Serialize;

pub fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable output") + "\n"
}

pub fn csv<T: Serialize>(rows: &[T]) -> anyhow::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

fn flag(f: Flag) -> &'static str {
    match f {
        Flag::Pass => "pass",
        Flag::Fail => "fail",
        Flag::NotApplicable => "n/a",
    }
}

fn index(i: Option<usize>) -> String {
    i.map_or_else(|| "none".to_string(), |s| s.to_string())
}

pub fn report_text(r: &RBReport) -> String {
    let mut out = String::new();
    writeln!(out, "is_rb: {}", if r.is_rb { "yes" } else { "no" }).unwrap();
    writeln!(out, "weight: {}", r.weight).unwrap();
    let pairs: Vec<String> = r.failing_pairs.iter().map(|(a, b)| format!("({a},{b})")).collect();
    writeln!(out, "failing_pairs: {}", if pairs.is_empty() { "none".into() } else { pairs.join(" ") }).unwrap();
    writeln!(out, "nilpotency_index: {}", index(r.nilpotency_index)).unwrap();
    writeln!(out, "lemma_flags:").unwrap();
    for (name, f) in r.lemma_flags.iter() {
        writeln!(out, "  {name}: {}", flag(f)).unwrap();
    }
    out
}

pub fn census_text(c: &Census) -> String {
    let mut out = String::new();
    writeln!(out, "p: {}", c.p).unwrap();
    writeln!(out, "form: {}", c.form).unwrap();
    writeln!(out, "certified: {}", c.certification).unwrap();
    writeln!(out, "complete: {}", c.complete).unwrap();
    writeln!(out, "candidates_checked: {}", c.candidates_checked).unwrap();
    for (i, n) in &c.by_index {
        writeln!(out, "index {i}: {n}").unwrap();
    }
    writeln!(out, "non_nilpotent: {}", c.non_nilpotent).unwrap();
    writeln!(out, "total: {}", c.total()).unwrap();
    out
}
