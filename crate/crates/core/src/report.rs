//! Tabular reports with CSV, JSON and pretty renderings.
//!
//! Every rendering is a pure function of the report, so equal reports render
//! byte-identically. CSV carries the rows only; JSON is one object with
//! `"config"`, `"rows"` and `"verdicts"`; the pretty form appends verdicts and
//! notes after the table.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Number, Value as Json};

use crate::{Error, Result};

/// A table cell. Floats are fixed at six decimals, and that text is what
/// both CSV and JSON carry.
#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Int(i128),
    /// An integer too large for JSON numbers, kept as decimal text.
    Big(String),
    /// An exact rational as `a/b`.
    Ratio(String),
    Float(f64),
    Text(String),
    Bool(bool),
    Empty,
}

impl Cell {
    pub fn big(n: impl Into<BigInt>) -> Cell {
        let n: BigInt = n.into();
        match n.to_i64() {
            Some(v) => Cell::Int(v as i128),
            None => Cell::Big(n.to_string()),
        }
    }

    pub fn ratio(r: &BigRational) -> Cell {
        Cell::Ratio(format!("{}/{}", r.numer(), r.denom()))
    }

    pub fn float_of(r: &BigRational) -> Cell {
        Cell::Float(r.to_f64().unwrap_or(f64::NAN))
    }

    pub fn text(s: impl Into<String>) -> Cell {
        Cell::Text(s.into())
    }

    fn to_json(&self) -> Json {
        match self {
            Cell::Int(v) => Json::Number(Number::from(*v as i64)),
            Cell::Big(s) | Cell::Ratio(s) | Cell::Text(s) => Json::String(s.clone()),
            Cell::Float(_) => {
                let text = self.to_string();
                text.parse::<f64>().ok().and_then(Number::from_f64).map(Json::Number).unwrap_or(Json::String(text))
            }
            Cell::Bool(b) => Json::Bool(*b),
            Cell::Empty => Json::Null,
        }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Int(v) => write!(f, "{v}"),
            Cell::Big(s) | Cell::Ratio(s) | Cell::Text(s) => f.write_str(s),
            Cell::Float(v) => write!(f, "{v:.6}"),
            Cell::Bool(b) => write!(f, "{b}"),
            Cell::Empty => Ok(()),
        }
    }
}

/// One named pass/fail line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Verdict {
    pub fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Verdict { name: name.into(), pass, detail: detail.into() }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}: {}", if self.pass { "PASS" } else { "FAIL" }, self.name, self.detail)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
    Pretty,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            "pretty" => Ok(Format::Pretty),
            _ => Err(Error::InvalidArgument(format!("unknown format {s:?}; expected csv, json or pretty"))),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    pub config: BTreeMap<String, String>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    pub verdicts: Vec<Verdict>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(config: BTreeMap<String, String>, columns: &[&str]) -> Self {
        Report { config, columns: columns.iter().map(|c| c.to_string()).collect(), ..Default::default() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn all_pass(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
            Format::Pretty => Ok(self.to_pretty()),
        }
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        let io = |e: csv::Error| Error::InvalidArgument(format!("csv: {e}"));
        w.write_record(&self.columns).map_err(io)?;
        for row in &self.rows {
            w.write_record(row.iter().map(|c| c.to_string())).map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::InvalidArgument(format!("csv: {e}")))?;
        String::from_utf8(bytes).map_err(|e| Error::InvalidArgument(format!("csv: {e}")))
    }

    pub fn to_json(&self) -> Result<String> {
        let config: Map<String, Json> = self.config.iter().map(|(k, v)| (k.clone(), Json::String(v.clone()))).collect();
        let rows: Vec<Json> = self
            .rows
            .iter()
            .map(|row| Json::Object(self.columns.iter().cloned().zip(row.iter().map(Cell::to_json)).collect()))
            .collect();
        let verdicts: Vec<Json> = self.verdicts.iter().map(|v| json!({"name": v.name, "pass": v.pass, "detail": v.detail})).collect();
        let mut doc = json!({"config": config, "rows": rows, "verdicts": verdicts});
        if !self.notes.is_empty() {
            doc["notes"] = json!(self.notes);
        }
        let mut s = serde_json::to_string_pretty(&doc).map_err(|e| Error::InvalidArgument(format!("json: {e}")))?;
        s.push('\n');
        Ok(s)
    }

    pub fn to_pretty(&self) -> String {
        let text: Vec<Vec<String>> = self.rows.iter().map(|r| r.iter().map(|c| c.to_string()).collect()).collect();
        let mut widths: Vec<usize> = self.columns.iter().map(|c| c.chars().count()).collect();
        for row in &text {
            for (w, c) in widths.iter_mut().zip(row) {
                *w = (*w).max(c.chars().count());
            }
        }
        let line = |cells: &[String]| {
            let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
            padded.join("  ").trim_end().to_string() + "\n"
        };
        let mut out = line(&self.columns);
        out += &line(&widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>());
        for row in &text {
            out += &line(row);
        }
        if !self.verdicts.is_empty() {
            out.push('\n');
            for v in &self.verdicts {
                out += &format!("{v}\n");
            }
        }
        for n in &self.notes {
            out += &format!("note: {n}\n");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let mut r = Report::new(BTreeMap::from([("q".to_string(), "5".to_string())]), &["q", "label", "ratio", "x"]);
        r.push(vec![Cell::Int(5), Cell::text("PS {chi,chi^-1}"), Cell::Ratio("3/8".into()), Cell::Float(0.375)]);
        r.verdicts.push(Verdict::new("check", true, "ok"));
        r
    }

    #[test]
    fn csv_quotes_commas_and_uses_lf() {
        let csv = sample().to_csv().unwrap();
        assert_eq!(csv, "q,label,ratio,x\n5,\"PS {chi,chi^-1}\",3/8,0.375000\n");
    }

    #[test]
    fn json_has_the_three_sections_and_same_numbers() {
        let j: Json = serde_json::from_str(&sample().to_json().unwrap()).unwrap();
        assert_eq!(j["config"]["q"], "5");
        assert_eq!(j["rows"][0]["q"], 5);
        assert_eq!(j["rows"][0]["ratio"], "3/8");
        assert_eq!(j["rows"][0]["x"].as_f64(), Some(0.375));
        assert_eq!(j["verdicts"][0]["pass"], true);
    }

    #[test]
    fn pretty_aligns() {
        let p = sample().to_pretty();
        assert!(p.starts_with("q  label            ratio  x\n"));
        assert!(p.contains("[PASS] check: ok"));
    }
}
