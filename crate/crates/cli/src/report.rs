use std::io::Write;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use tropenum_core::census::ConsistencyFlag;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub elapsed_ms: u64,
    pub threads: usize,
}

/// Everything a command prints in JSON mode.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    /// The arguments after the program name.
    pub command: Vec<String>,
    pub results: Value,
    pub consistency_flags: Vec<ConsistencyFlag>,
    pub timing: Timing,
}

/// Header and rows for CSV output; every cell is already a string.
#[derive(Debug, Default)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        Table {
            header: header.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }
}

/// What a command hands back to `main`.
#[derive(Debug)]
pub struct Outcome {
    pub results: Value,
    pub flags: Vec<ConsistencyFlag>,
    pub table: Table,
    pub text: Vec<String>,
    /// False when the command ran but found a failure it must report.
    pub ok: bool,
}

impl Outcome {
    pub fn new(results: impl Serialize, table: Table, text: Vec<String>) -> Result<Self, CliError> {
        Ok(Outcome {
            results: serde_json::to_value(results)?,
            flags: Vec::new(),
            table,
            text,
            ok: true,
        })
    }
}

pub fn emit(
    out: &mut impl Write,
    format: Format,
    report: &Report,
    outcome: &Outcome,
) -> Result<(), CliError> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, report)?;
            writeln!(out)?;
        }
        Format::Text => {
            for line in &outcome.text {
                writeln!(out, "{line}")?;
            }
            for f in &report.consistency_flags {
                writeln!(
                    out,
                    "flag: {}: published {}, computed {}",
                    f.location, f.paper_value, f.computed_value
                )?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(&outcome.table.header)?;
            for row in &outcome.table.rows {
                w.write_record(row)?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn json_round_trip() {
        let report = Report {
            command: vec!["census".into(), "--delta".into(), "3".into()],
            results: json!({ "top_terms": [{ "exponent": 9, "coefficient": "32/3" }] }),
            consistency_flags: vec![ConsistencyFlag {
                location: "census delta=3, coefficient of d^8".into(),
                paper_value: "-1341/35".into(),
                computed_value: "-192/5".into(),
            }],
            timing: Timing {
                elapsed_ms: 4,
                threads: 1,
            },
        };
        let outcome = Outcome {
            results: report.results.clone(),
            flags: vec![],
            table: Table::default(),
            text: vec![],
            ok: true,
        };
        let mut buf = Vec::new();
        emit(&mut buf, Format::Json, &report, &outcome).unwrap();
        let back: Report = serde_json::from_slice(&buf).unwrap();
        assert_eq!(back, report);
    }

    #[test]
    fn csv_quotes_cells() {
        let mut table = Table::new(&["tuple", "count"]);
        table.push(vec!["(4,1) (3,1)".into(), "20".into()]);
        let report = Report {
            command: vec![],
            results: Value::Null,
            consistency_flags: vec![],
            timing: Timing {
                elapsed_ms: 0,
                threads: 1,
            },
        };
        let outcome = Outcome {
            results: Value::Null,
            flags: vec![],
            table,
            text: vec![],
            ok: true,
        };
        let mut buf = Vec::new();
        emit(&mut buf, Format::Csv, &report, &outcome).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "tuple,count\n\"(4,1) (3,1)\",20\n"
        );
    }
}
