//! Serialization of report documents.
//!
//! Structured output is pretty-printed JSON. Tabular output is CSV with a
//! header row, `\n` line endings and Rust's locale-independent shortest
//! round-trip float formatting.

use std::fmt::Write;

use super::report::{CommandResult, ErrorDocument, ReportDocument};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Structured,
    Tabular,
}

pub fn emit(doc: &ReportDocument, format: Format) -> String {
    match format {
        Format::Structured => to_json(doc),
        Format::Tabular => tabular(&doc.result),
    }
}

pub fn emit_error(doc: &ErrorDocument) -> String {
    to_json(doc)
}

fn to_json<T: serde::Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("report documents serialize");
    s.push('\n');
    s
}

fn tabular(result: &CommandResult) -> String {
    let mut out = String::new();
    match result {
        CommandResult::Run(r) => {
            out.push_str("outcome,probability\n");
            for o in &r.outcomes {
                writeln!(out, "{},{}", o.outcome, o.probability).unwrap();
            }
        }
        CommandResult::Relabel(r) => coefficient_rows(&mut out, &r.first.coefficients, &r.second.coefficients),
        CommandResult::Distill(r) => coefficient_rows(&mut out, &r.first.coefficients, &r.second.coefficients),
        CommandResult::Report(r) => {
            let t = &r.overlap_table;
            writeln!(out, "row,{},{}", t.columns[0], t.columns[1]).unwrap();
            for (name, values) in t.rows.iter().zip(&t.values) {
                writeln!(out, "{name},{},{}", values[0], values[1]).unwrap();
            }
        }
    }
    out
}

fn coefficient_rows(out: &mut String, first: &[[f64; 2]], second: &[[f64; 2]]) {
    out.push_str("index,first_re,first_im,second_re,second_im\n");
    for (k, (a, b)) in first.iter().zip(second).enumerate() {
        writeln!(out, "{k},{},{},{},{}", a[0], a[1], b[0], b[1]).unwrap();
    }
}
