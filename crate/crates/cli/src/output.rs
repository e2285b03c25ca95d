// Copyright 2026 The brickqec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Records and their CSV / JSON-lines encodings.

use std::io::Write;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Jsonl,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Str(String),
    Bool(bool),
    Empty,
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Str(v.to_owned())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Str(v)
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Self {
        v.map_or(Cell::Empty, Into::into)
    }
}

/// An ordered list of named cells; every record of one run shares its keys.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Record(pub Vec<(&'static str, Cell)>);

impl Record {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, key: &'static str, value: impl Into<Cell>) -> Self {
        self.0.push((key, value.into()));
        self
    }

    pub fn push(&mut self, key: &'static str, value: impl Into<Cell>) {
        self.0.push((key, value.into()));
    }

    pub fn get(&self, key: &str) -> Option<&Cell> {
        self.0.iter().find(|(k, _)| *k == key).map(|(_, v)| v)
    }

    pub fn keys(&self) -> Vec<&'static str> {
        self.0.iter().map(|(k, _)| *k).collect()
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// `%.17g`: 17 significant digits, fixed notation for exponents in
/// `[-5, 17)`, trailing zeros dropped. Non-finite values print as
/// `inf`, `-inf` or `nan`.
pub fn fmt_float(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.into();
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-5..17).contains(&exp) {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_fraction(mantissa), exp.abs())
    } else {
        let decimals = (16 - exp).max(0) as usize;
        trim_fraction(&format!("{x:.decimals$}")).to_owned()
    }
}

fn csv_text(cell: &Cell) -> String {
    match cell {
        Cell::Int(v) => v.to_string(),
        Cell::Float(v) => fmt_float(*v),
        Cell::Str(s) => s.clone(),
        Cell::Bool(b) => b.to_string(),
        Cell::Empty => String::new(),
    }
}

fn json_text(cell: &Cell) -> String {
    match cell {
        Cell::Int(v) => v.to_string(),
        Cell::Float(v) if v.is_finite() => fmt_float(*v),
        Cell::Float(v) => serde_json::to_string(&fmt_float(*v)).expect("string"),
        Cell::Str(s) => serde_json::to_string(s).expect("string"),
        Cell::Bool(b) => b.to_string(),
        Cell::Empty => "null".into(),
    }
}

pub fn json_line(record: &Record) -> String {
    let body: Vec<String> = record
        .0
        .iter()
        .map(|(k, v)| format!("{}:{}", serde_json::to_string(k).expect("key"), json_text(v)))
        .collect();
    format!("{{{}}}", body.join(","))
}

pub fn write_records(records: &[Record], format: Format, out: &mut dyn Write) -> Result<(), CliError> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            if let Some(first) = records.first() {
                w.write_record(first.keys())?;
            }
            for r in records {
                w.write_record(r.0.iter().map(|(_, v)| csv_text(v)))?;
            }
            w.flush()?;
        }
        Format::Jsonl => {
            for r in records {
                writeln!(out, "{}", json_line(r))?;
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits() {
        assert_eq!(fmt_float(5.76), "5.7599999999999998");
        assert_eq!(fmt_float(1.0), "1");
        assert_eq!(fmt_float(0.5), "0.5");
        assert_eq!(fmt_float(80.0 / 17.0), "4.7058823529411766");
        assert_eq!(fmt_float(1e20), "1e+20");
        assert_eq!(fmt_float(1.5e-7), "1.4999999999999999e-07");
        assert_eq!(fmt_float(f64::INFINITY), "inf");
        assert_eq!(fmt_float(-0.0), "0");
        for x in [0.1, 2.0 / 3.0, 1e-300, 123456789.123, -7.25e18] {
            assert_eq!(fmt_float(x).parse::<f64>().unwrap(), x);
        }
    }

    #[test]
    fn encodings() {
        let r = Record::new()
            .with("n", 4usize)
            .with("Z", 5.76)
            .with("w", "aqec")
            .with("bound", Option::<f64>::None)
            .with("big", f64::INFINITY);
        assert_eq!(
            json_line(&r),
            r#"{"n":4,"Z":5.7599999999999998,"w":"aqec","bound":null,"big":"inf"}"#
        );
        let mut buf = Vec::new();
        write_records(&[r], Format::Csv, &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "n,Z,w,bound,big\n4,5.7599999999999998,aqec,,inf\n"
        );
    }
}
