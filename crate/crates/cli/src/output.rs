use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Renders like C's `%.17g`: 17 significant digits, fixed notation for
/// decimal exponents in `[-4, 17)`, trailing zeros dropped.
pub fn fmt_g17(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let sci = format!("{x:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..17).contains(&exp) {
        let fixed = format!("{:.*}", (16 - exp) as usize, x);
        trim_zeros(&fixed).to_string()
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mantissa), exp.abs())
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Num(x) => fmt_g17(*x),
            Cell::Int(i) => i.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Cell::Num(x) => serde_json::Number::from_f64(*x).map_or(Value::Null, Value::Number),
            Cell::Int(i) => Value::from(*i),
            Cell::Text(s) => Value::from(s.as_str()),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<usize> for Cell {
    fn from(i: usize) -> Self {
        Cell::Int(i as i64)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.into())
    }
}

#[derive(Debug, Clone, Default)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::render).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| Value::Array(r.iter().map(Cell::to_json).collect()))
            .collect();
        serde_json::json!({ "columns": self.columns, "rows": rows })
    }
}

/// What a subcommand produced: a table, headline numbers, run diagnostics.
#[derive(Debug, Clone, Default)]
pub struct Report {
    pub table: Table,
    pub summary: BTreeMap<String, Value>,
    pub diagnostics: BTreeMap<String, Value>,
    /// Set when the output is complete but a convergence contract failed; the
    /// run still writes its results and then exits with the convergence code.
    pub convergence_failure: Option<String>,
}

impl Report {
    pub fn new(table: Table) -> Self {
        Report {
            table,
            ..Default::default()
        }
    }

    pub fn summary(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.summary.insert(key.into(), value.into());
        self
    }

    pub fn diagnostic(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.diagnostics.insert(key.into(), value.into());
        self
    }
}

/// The `--json` document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunEnvelope {
    pub command: String,
    pub params: BTreeMap<String, String>,
    pub results: BTreeMap<String, Value>,
    pub diagnostics: BTreeMap<String, Value>,
}

impl RunEnvelope {
    pub fn new(command: &str, params: BTreeMap<String, String>, report: &Report) -> Self {
        let mut results = report.summary.clone();
        results.insert("table".into(), report.table.to_json());
        RunEnvelope {
            command: command.into(),
            params,
            results,
            diagnostics: report.diagnostics.clone(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("envelope is plain data");
        s.push('\n');
        s
    }

    #[cfg(test)]
    pub fn parse(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g17_matches_printf() {
        // Reference strings from C printf("%.17g").
        let cases = [
            (0.1, "0.10000000000000001"),
            (1.0, "1"),
            (-0.70710678118654757, "-0.70710678118654757"),
            (1e20, "1e+20"),
            (1.5e-7, "1.4999999999999999e-07"),
            (123456.0, "123456"),
            (0.0001, "0.0001"),
            (2.5e16, "25000000000000000"),
            (1e17, "1e+17"),
            (0.0, "0"),
        ];
        for (x, want) in cases {
            assert_eq!(fmt_g17(x), want, "{x:e}");
        }
        for x in [std::f64::consts::PI, -1.0 / 3.0, 6.02214076e23, 5e-324] {
            assert_eq!(fmt_g17(x).parse::<f64>().unwrap(), x);
        }
    }

    #[test]
    fn envelope_round_trips() {
        let mut t = Table::new(&["k", "x"]);
        t.push(vec![0usize.into(), 0.1.into()]);
        let report = Report::new(t).summary("J", 3.0).diagnostic("iterations", 4);
        let params = BTreeMap::from([("n".to_string(), "3".to_string())]);
        let env = RunEnvelope::new("quantize", params, &report);
        let text = env.to_text();
        let back = RunEnvelope::parse(&text).unwrap();
        assert_eq!(back, env);
        assert_eq!(back.to_text(), text);
    }
}
