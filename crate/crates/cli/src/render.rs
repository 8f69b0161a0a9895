use std::fmt::Write as _;

use clap::ValueEnum;
use semireg_core::verify::PropositionReport;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Text,
}

/// Rebuilds every object with its keys in sorted order.
pub fn canonicalize(v: Value) -> Value {
    match v {
        Value::Object(m) => {
            let mut entries: Vec<(String, Value)> = m.into_iter().collect();
            entries.sort_by(|a, b| a.0.cmp(&b.0));
            let mut out = Map::new();
            for (k, v) in entries {
                out.insert(k, canonicalize(v));
            }
            Value::Object(out)
        }
        Value::Array(a) => Value::Array(a.into_iter().map(canonicalize).collect()),
        other => other,
    }
}

/// The report as a canonical JSON value. `elapsed_ms` is only added when
/// `timings` is set, so that default output is reproducible byte for byte.
pub fn report_value(report: &PropositionReport, timings: bool) -> Value {
    let mut v = serde_json::to_value(report).expect("reports serialize");
    if timings {
        if let Value::Object(m) = &mut v {
            m.insert(
                "elapsed_ms".to_string(),
                Value::from(report.elapsed().as_millis() as u64),
            );
        }
    }
    canonicalize(v)
}

pub fn render_report(report: &PropositionReport, format: Format, timings: bool) -> Vec<u8> {
    let v = report_value(report, timings);
    match format {
        Format::Json => render_json(&v),
        Format::Text => render_report_text(&v).into_bytes(),
    }
}

pub fn render_json(v: &Value) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(v).expect("values serialize");
    out.push(b'\n');
    out
}

fn inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn aligned(out: &mut String, indent: &str, pairs: &[(String, String)]) {
    let w = pairs.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
    for (k, v) in pairs {
        let _ = writeln!(out, "{indent}{k:<w$}  {v}");
    }
}

/// Key/value lines for a flat object, nested values inlined as JSON.
pub fn render_value_text(v: &Value) -> String {
    let mut out = String::new();
    match v {
        Value::Object(m) => {
            let pairs: Vec<(String, String)> = m.iter().map(|(k, v)| (k.clone(), inline(v))).collect();
            aligned(&mut out, "", &pairs);
        }
        other => {
            let _ = writeln!(out, "{}", inline(other));
        }
    }
    out
}

/// Human-readable form of a report value (as produced by [`report_value`] or
/// read back from a report file).
pub fn render_report_text(v: &Value) -> String {
    let get = |k: &str| v.get(k).map(inline).unwrap_or_default();
    let mut out = String::new();
    let subject = match (v.get("family"), v.get("n")) {
        (Some(f), Some(n)) => format!("{} n={}", inline(f), inline(n)),
        _ => String::new(),
    };
    let _ = writeln!(
        out,
        "{} {} [{}] {}",
        get("prop_id"),
        subject,
        get("mode"),
        get("status").to_uppercase()
    );
    let mut head = Vec::new();
    for k in ["seed", "elapsed_ms", "tool_version"] {
        if let Some(x) = v.get(k) {
            head.push((k.to_string(), inline(x)));
        }
    }
    aligned(&mut out, "  ", &head);
    if let Some(Value::Object(c)) = v.get("counts") {
        let _ = writeln!(out, "  counts");
        let pairs: Vec<(String, String)> = c.iter().map(|(k, v)| (k.clone(), inline(v))).collect();
        aligned(&mut out, "    ", &pairs);
    }
    match v.get("witnesses") {
        Some(Value::Array(w)) if !w.is_empty() => {
            let _ = writeln!(out, "  witnesses");
            for x in w {
                let _ = writeln!(out, "    {}", inline(x));
            }
        }
        _ => {
            let _ = writeln!(out, "  witnesses  none");
        }
    }
    if let Some(Value::Array(notes)) = v.get("notes") {
        let _ = writeln!(out, "  notes");
        for x in notes {
            let _ = writeln!(out, "    {}", inline(x));
        }
    }
    if let Some(Value::Array(rows)) = v.get("rows") {
        out.push_str(&rows_table(rows));
    }
    out
}

fn rows_table(rows: &[Value]) -> String {
    let mut cols: Vec<String> = Vec::new();
    for r in rows {
        if let Value::Object(m) = r {
            for k in m.keys() {
                if !cols.contains(k) {
                    cols.push(k.clone());
                }
            }
        }
    }
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| cols.iter().map(|c| r.get(c).map(inline).unwrap_or_default()).collect())
        .collect();
    let widths: Vec<usize> = cols
        .iter()
        .enumerate()
        .map(|(i, c)| cells.iter().map(|r| r[i].len()).chain([c.len()]).max().unwrap_or(0))
        .collect();
    let line = |vals: &[String]| {
        let mut s = String::from("   ");
        for (v, w) in vals.iter().zip(&widths) {
            let _ = write!(s, " {v:>w$}");
        }
        s.push('\n');
        s
    };
    let mut out = String::from("  rows\n");
    out.push_str(&line(&cols));
    for r in &cells {
        out.push_str(&line(r));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use semireg_core::groups::Family;
    use semireg_core::verify::{Mode, Recorder, Witness};

    fn sample(fail: bool) -> PropositionReport {
        let mut r = Recorder::new("demo", Some(Family::Psl2), Some(5), Mode::Exhaustive);
        r.count("zeta", 1u64);
        r.count("alpha", u64::MAX);
        if fail {
            r.witness(Witness::new("c", "broken").element(4usize));
        }
        r.finish()
    }

    #[test]
    fn json_keys_sorted_and_big_ints_quoted() {
        let s = String::from_utf8(render_report(&sample(false), Format::Json, false)).unwrap();
        assert!(s.find("\"alpha\"").unwrap() < s.find("\"zeta\"").unwrap());
        assert!(s.contains("\"18446744073709551615\""));
        assert!(!s.contains("elapsed_ms"));
        fn no_floats(v: &Value) -> bool {
            match v {
                Value::Number(n) => !n.is_f64(),
                Value::Array(a) => a.iter().all(no_floats),
                Value::Object(m) => m.values().all(no_floats),
                _ => true,
            }
        }
        assert!(no_floats(&serde_json::from_str(&s).unwrap()));
    }

    #[test]
    fn rendering_is_deterministic() {
        let a = render_report(&sample(true), Format::Json, false);
        let b = render_report(&sample(true), Format::Json, false);
        assert_eq!(a, b);
    }

    #[test]
    fn text_has_witness_section_on_failure() {
        let t = String::from_utf8(render_report(&sample(true), Format::Text, false)).unwrap();
        assert!(t.starts_with("demo psl2 n=5 [exhaustive] FAIL"));
        assert!(t.contains("  witnesses\n"));
        let t = String::from_utf8(render_report(&sample(false), Format::Text, false)).unwrap();
        assert!(t.contains("witnesses  none"));
    }

    #[test]
    fn timings_are_opt_in() {
        let s = String::from_utf8(render_report(&sample(false), Format::Json, true)).unwrap();
        assert!(s.contains("\"elapsed_ms\""));
    }
}
