use std::io::Write;
use std::process::ExitCode;

use clap::ValueEnum;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, thiserror::Error)]
pub enum Failure {
    #[error(transparent)]
    Lib(#[from] tdkit::Error),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
}

impl Failure {
    fn kind(&self) -> &'static str {
        use tdkit::Error as E;
        match self {
            Failure::Usage(_) => "usage",
            Failure::Io(_) => "io",
            Failure::Lib(e) => match e {
                E::Parse { .. } | E::SelfLoop { .. } => "parse",
                E::VertexOutOfRange { .. } => "vertex_out_of_range",
                E::UnknownGraph(_) => "unknown_graph",
                E::SizeLimit { .. } => "size_limit",
                E::BudgetExceeded { .. } => "budget_exceeded",
                E::InvalidArgument(_) => "invalid_argument",
                E::Verification(_) => "verification",
                E::Overflow(_) => "overflow",
            },
        }
    }

    fn code(&self) -> u8 {
        use tdkit::Error as E;
        match self {
            Failure::Usage(_) | Failure::Io(_) => 2,
            Failure::Lib(e) => match e {
                E::Verification(_) => 1,
                E::SizeLimit { .. } | E::BudgetExceeded { .. } | E::Overflow(_) => 3,
                _ => 2,
            },
        }
    }
}

/// Single-line JSON on stderr.
pub fn report_failure(f: &Failure) -> ExitCode {
    let code = f.code();
    let body = json!({ "error": f.kind(), "message": f.to_string(), "exit_code": code });
    eprintln!("{body}");
    ExitCode::from(code)
}

pub enum Payload {
    /// Object rendered per `--format`.
    Json(Value),
    /// Preformatted CSV; `--format json` uses the value.
    Csv { csv: String, json: Value },
    /// Preformatted text (edge lists); `--format json` uses the value.
    Raw { text: String, json: Value },
}

pub struct Output {
    pub payload: Payload,
    pub code: u8,
}

impl Output {
    pub fn ok(payload: Payload) -> Self {
        Output { payload, code: 0 }
    }

    pub fn with_code(payload: Payload, code: u8) -> Self {
        Output { payload, code }
    }

    pub fn emit(self, format: Option<Format>) -> ExitCode {
        match render(self.payload, format) {
            Ok(s) => {
                let mut out = std::io::stdout().lock();
                if out.write_all(s.as_bytes()).and_then(|_| out.flush()).is_err() {
                    return report_failure(&Failure::Io("cannot write to stdout".into()));
                }
                ExitCode::from(self.code)
            }
            Err(f) => report_failure(&f),
        }
    }
}

fn render(payload: Payload, format: Option<Format>) -> Result<String, Failure> {
    match payload {
        Payload::Json(v) => match format.unwrap_or(Format::Json) {
            Format::Json => Ok(format!("{v}\n")),
            Format::Text => Ok(text_lines(&v)),
            Format::Csv => csv_rows(&[v]),
        },
        Payload::Csv { csv, json } => match format.unwrap_or(Format::Csv) {
            Format::Json => Ok(format!("{json}\n")),
            Format::Csv | Format::Text => Ok(csv),
        },
        Payload::Raw { text, json } => match format.unwrap_or(Format::Text) {
            Format::Json => Ok(format!("{json}\n")),
            Format::Text => Ok(text),
            Format::Csv => Err(Failure::Usage("csv output is not available for this command".into())),
        },
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

/// `key: value` per top-level field, keys sorted.
fn text_lines(v: &Value) -> String {
    match v {
        Value::Object(map) => map.iter().map(|(k, x)| format!("{k}: {}\n", scalar(x))).collect(),
        other => format!("{}\n", scalar(other)),
    }
}

/// Header from the first row's keys; nested values are inlined as JSON.
fn csv_rows(rows: &[Value]) -> Result<String, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let keys: Vec<String> = match rows.first() {
        Some(Value::Object(m)) => m.keys().cloned().collect(),
        Some(_) => return Err(Failure::Usage("csv output needs object rows".into())),
        None => Vec::new(),
    };
    let io = |e: csv::Error| Failure::Io(e.to_string());
    if !keys.is_empty() {
        w.write_record(&keys).map_err(io)?;
    }
    for row in rows {
        let rec: Vec<String> = keys.iter().map(|k| row.get(k).map(scalar).unwrap_or_default()).collect();
        w.write_record(&rec).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Failure::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Failure::Io(e.to_string()))
}
