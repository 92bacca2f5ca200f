//! Text renderings of tables, reports and degeneration pictures.

use std::fmt::Write;

use serde::Serialize;

use logtangent_core::aggregate::ContributionTable;
use logtangent_core::conjecture::{DegenerationPicture, ReportEntry};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Md,
}

#[derive(Serialize)]
struct JsonRow {
    mdeg: [u32; 3],
    value: String,
}

fn compact<T: Serialize + ?Sized>(v: &T) -> String {
    serde_json::to_string(v).expect("serialisable")
}

pub fn table(t: &ContributionTable, format: Format) -> String {
    match format {
        Format::Json => table_json(t),
        Format::Csv => table_csv(t),
        Format::Md => table_md(t),
    }
}

/// Pretty JSON with one row object per line.
pub fn table_json(t: &ContributionTable) -> String {
    let mut s = String::from("{\n");
    writeln!(s, "  \"degree\": {},", t.degree()).unwrap();
    writeln!(s, "  \"mode\": {},", compact(&t.mode().to_string())).unwrap();
    s.push_str("  \"rows\": [");
    for (i, (m, v)) in t.rows_descending().enumerate() {
        let row = JsonRow {
            mdeg: m.parts(),
            value: v.to_string(),
        };
        s.push_str(if i == 0 { "\n    " } else { ",\n    " });
        s.push_str(&compact(&row));
    }
    s.push_str(if t.rows().is_empty() { "],\n" } else { "\n  ],\n" });
    writeln!(s, "  \"total\": {}", compact(&t.total().to_string())).unwrap();
    s.push_str("}\n");
    s
}

fn table_csv(t: &ContributionTable) -> String {
    let mut s = String::from("d0,d1,d2,value\n");
    for (m, v) in t.rows_descending() {
        let [a, b, c] = m.parts();
        writeln!(s, "{a},{b},{c},{v}").unwrap();
    }
    s
}

fn table_md(t: &ContributionTable) -> String {
    let mut s = format!("Degree {} ({})\n\n| Multi-degree | Contribution |\n|---|---|\n", t.degree(), t.mode());
    for (m, v) in t.rows_descending() {
        writeln!(s, "| {m} | {v} |").unwrap();
    }
    writeln!(s, "| Total | {} |", t.total()).unwrap();
    s
}

#[derive(Serialize)]
struct JsonEntry {
    check: &'static str,
    degree: u32,
    status: String,
    lhs: String,
    rhs: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    mdeg: Option<[u32; 3]>,
}

pub fn report_json(entries: &[ReportEntry]) -> String {
    let doc: Vec<JsonEntry> = entries
        .iter()
        .map(|e| JsonEntry {
            check: e.check.name(),
            degree: e.degree,
            status: e.status.to_string(),
            lhs: e.lhs.to_string(),
            rhs: e.rhs.to_string(),
            mdeg: e.mdeg.map(|m| m.parts()),
        })
        .collect();
    let mut s = serde_json::to_string_pretty(&doc).expect("serialisable");
    s.push('\n');
    s
}

pub fn degeneration(p: &DegenerationPicture) -> String {
    let mut s = format!("degree {}\ngeneral fibre:\n", p.degree);
    for (label, n) in &p.general_fibre_counts {
        writeln!(s, "  {label}: {n}").unwrap();
    }
    s.push_str("arrows:\n");
    for (source, targets) in &p.arrows {
        for (m, n) in targets.iter().rev() {
            writeln!(s, "  {source} -> {m}: {n}").unwrap();
        }
    }
    s.push_str("balance:\n");
    for row in &p.balance {
        writeln!(s, "  {}: {row}", row.mdeg).unwrap();
    }
    writeln!(s, "total: {}", p.total()).unwrap();
    s
}
