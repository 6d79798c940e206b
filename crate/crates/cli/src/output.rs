//! Row emission. CSV cells carry numbers in scientific notation with 17
//! significant digits so every `f64` survives a round trip; JSON is a flat
//! array of objects keyed by the CSV column names.

use std::io::Write;

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::Value;

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

fn csv_cell(v: &Value) -> Result<String> {
    Ok(match v {
        Value::Null => String::new(),
        Value::Bool(b) => b.to_string(),
        Value::Number(n) => {
            let x = n
                .as_f64()
                .ok_or_else(|| CliError::usage(format!("unrepresentable number {n}")))?;
            format!("{x:.16e}")
        }
        Value::String(s) => s.clone(),
        Value::Array(_) | Value::Object(_) => {
            return Err(CliError::usage("nested values cannot be written as CSV"))
        }
    })
}

/// Writes `rows` as CSV. `columns` is used for the header when `rows` is empty.
pub fn write_csv<R: Serialize, W: Write>(rows: &[R], columns: &[&str], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::CRLF).from_writer(out);
    w.write_record(columns)?;
    for row in rows {
        let Value::Object(map) = serde_json::to_value(row)? else {
            return Err(CliError::usage("rows must serialise to flat objects"));
        };
        debug_assert!(map.keys().map(String::as_str).eq(columns.iter().copied()));
        let cells = map.values().map(csv_cell).collect::<Result<Vec<_>>>()?;
        w.write_record(&cells)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_json<R: Serialize, W: Write>(rows: &[R], mut out: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, rows)?;
    out.write_all(b"\n")?;
    Ok(())
}

pub fn emit<R: Serialize, W: Write>(rows: &[R], columns: &[&str], format: Format, out: W) -> Result<()> {
    match format {
        Format::Csv => write_csv(rows, columns, out),
        Format::Json => write_json(rows, out),
    }
}

pub fn parse_csv<R: DeserializeOwned>(text: &str) -> Result<Vec<R>> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    Ok(r.deserialize().collect::<std::result::Result<Vec<R>, _>>()?)
}

pub fn parse_json<R: DeserializeOwned>(text: &str) -> Result<Vec<R>> {
    Ok(serde_json::from_str(text)?)
}

/// CSV header line as written (without terminator).
pub fn csv_header(text: &str) -> &str {
    text.lines().next().unwrap_or("").trim_end_matches('\r')
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde::Deserialize;

    #[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
    struct Row {
        x: f64,
        label: String,
        flag: bool,
        maybe: Option<f64>,
    }

    const COLS: [&str; 4] = ["x", "label", "flag", "maybe"];

    fn rows() -> Vec<Row> {
        vec![
            Row { x: 0.1 + 0.2, label: "a".into(), flag: true, maybe: Some(-3.25e-300) },
            Row { x: -1.0 / 3.0, label: "b,c".into(), flag: false, maybe: None },
        ]
    }

    #[test]
    fn csv_uses_scientific_notation() {
        let mut buf = Vec::new();
        write_csv(&rows(), &COLS, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(csv_header(&text), "x,label,flag,maybe");
        assert!(text.contains("3.0000000000000004e-1,a,true,-3.2499999999999999e-300\r\n"));
        assert!(text.contains("\"b,c\",false,\r\n"));
    }

    #[test]
    fn csv_and_json_round_trip() {
        let mut buf = Vec::new();
        write_csv(&rows(), &COLS, &mut buf).unwrap();
        assert_eq!(parse_csv::<Row>(std::str::from_utf8(&buf).unwrap()).unwrap(), rows());
        let mut buf = Vec::new();
        write_json(&rows(), &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.contains("\"x\": 0.30000000000000004"));
        assert_eq!(parse_json::<Row>(&text).unwrap(), rows());
    }

    #[test]
    fn empty_table_still_has_header() {
        let mut buf = Vec::new();
        write_csv::<Row, _>(&[], &COLS, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "x,label,flag,maybe\r\n");
    }
}
