use crate::config::{Format, RunConfig};
use serde::Serialize;
use std::io::Write;

pub const SCHEMA: &str = "fraccal-report/1";

/// Package version with `git describe` output when built from a checkout.
pub const VERSION: &str = env!("FRACCAL_VERSION");

pub fn version() -> String {
    VERSION.to_string()
}

/// One verified relation or check.
#[derive(Clone, Debug, Serialize)]
pub struct Case {
    pub suite: String,
    pub name: String,
    /// `None` for checks that are not residual-based.
    pub residual: Option<f64>,
    pub pass: bool,
    pub detail: serde_json::Value,
}

impl Case {
    pub fn residual(suite: &str, name: impl Into<String>, residual: f64, tol: f64) -> Self {
        Case { suite: suite.into(), name: name.into(), residual: Some(residual), pass: residual <= tol, detail: serde_json::Value::Null }
    }

    pub fn with_detail(mut self, detail: serde_json::Value) -> Self {
        self.detail = detail;
        self
    }

    pub fn error(suite: &str, name: impl Into<String>, e: &fraccal::Error) -> Self {
        Case { suite: suite.into(), name: name.into(), residual: None, pass: false, detail: serde_json::json!({ "error": e.to_string() }) }
    }
}

#[derive(Serialize)]
pub struct VerifyReport<'a> {
    pub schema: &'static str,
    pub version: String,
    pub command: &'static str,
    pub suite: String,
    pub seed: u64,
    pub config: &'a RunConfig,
    pub cases: Vec<Case>,
    pub max_residual: f64,
    pub pass: bool,
}

impl<'a> VerifyReport<'a> {
    pub fn new(suite: &str, config: &'a RunConfig, cases: Vec<Case>) -> Self {
        let max_residual = cases.iter().filter_map(|c| c.residual).fold(0.0, f64::max);
        let pass = !cases.is_empty() && cases.iter().all(|c| c.pass);
        VerifyReport { schema: SCHEMA, version: version(), command: "verify", suite: suite.into(), seed: config.seed, config, cases, max_residual, pass }
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("suite,case,residual,pass\n");
        for c in &self.cases {
            let r = c.residual.map(|x| format!("{x:e}")).unwrap_or_default();
            s.push_str(&format!("{},{},{},{}\n", c.suite, csv_field(&c.name), r, c.pass));
        }
        s
    }
}

/// A rectangular table with a header row.
#[derive(Serialize)]
pub struct Table {
    pub schema: &'static str,
    pub version: String,
    pub command: &'static str,
    pub table: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<serde_json::Value>>,
}

impl Table {
    pub fn new(table: &str, columns: &[&str]) -> Self {
        Table {
            schema: SCHEMA,
            version: version(),
            command: "table",
            table: table.into(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<serde_json::Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut s = self.columns.join(",");
        s.push('\n');
        for r in &self.rows {
            let cells: Vec<String> = r
                .iter()
                .map(|v| match v {
                    serde_json::Value::String(x) => csv_field(x),
                    serde_json::Value::Null => String::new(),
                    serde_json::Value::Number(n) => n.as_f64().map(|x| x.to_string()).unwrap_or_else(|| n.to_string()),
                    other => other.to_string(),
                })
                .collect();
            s.push_str(&cells.join(","));
            s.push('\n');
        }
        s
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serialization");
    s.push('\n');
    s
}

/// Writes to `--out` or stdout.
pub fn emit(config: &RunConfig, json: impl FnOnce() -> String, csv: impl FnOnce() -> String) -> std::io::Result<()> {
    let text = match config.format {
        Format::Json => json(),
        Format::Csv => csv(),
    };
    match &config.out {
        Some(p) => std::fs::write(p, text),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()
        }
    }
}
