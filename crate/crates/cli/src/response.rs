use std::fmt;

use betweenness_core::reports::round_significant;
use serde::Serialize;
use serde_json::Value;

/// Digits kept in floats unless `--full-precision` is given.
pub const DEFAULT_DIGITS: i32 = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    Refuted,
    Inconclusive,
    Error,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok | Status::Refuted => 0,
            Status::Inconclusive => 2,
            Status::Error => 1,
        }
    }
}

/// What a command produced before it is wrapped into a [`Response`].
#[derive(Debug)]
pub struct Reply {
    pub status: Status,
    pub payload: Value,
    pub diagnostics: Vec<String>,
}

impl Reply {
    pub fn ok(payload: Value) -> Self {
        Self::with_status(Status::Ok, payload)
    }

    pub fn with_status(status: Status, payload: Value) -> Self {
        Self {
            status,
            payload,
            diagnostics: Vec::new(),
        }
    }

    pub fn note(mut self, msg: impl Into<String>) -> Self {
        self.diagnostics.push(msg.into());
        self
    }
}

#[derive(Debug, Serialize)]
pub struct ErrorInfo {
    pub code: String,
    pub message: String,
}

#[derive(Debug, Serialize)]
pub struct Response {
    pub command: String,
    pub status: Status,
    pub payload: Value,
    pub diagnostics: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorInfo>,
}

impl Response {
    pub fn from_reply(command: &str, reply: Reply, full_precision: bool) -> Self {
        let mut payload = reply.payload;
        if !full_precision {
            round_significant(&mut payload, DEFAULT_DIGITS);
        }
        Self {
            command: command.to_owned(),
            status: reply.status,
            payload,
            diagnostics: reply.diagnostics,
            error: None,
        }
    }

    pub fn from_error(command: &str, err: &anyhow::Error) -> Self {
        let (code, message) = describe(err);
        Self {
            command: command.to_owned(),
            status: Status::Error,
            payload: Value::Null,
            diagnostics: err.chain().skip(1).map(|c| c.to_string()).collect(),
            error: Some(ErrorInfo { code, message }),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("response serializes") + "\n"
    }
}

/// An error with a stable machine-readable code.
#[derive(Debug)]
pub struct CodedError {
    pub code: &'static str,
    pub message: String,
}

impl CodedError {
    pub fn new(code: &'static str, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }
}

impl fmt::Display for CodedError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CodedError {}

fn describe(err: &anyhow::Error) -> (String, String) {
    if let Some(e) = err.downcast_ref::<CodedError>() {
        return (e.code.to_owned(), e.message.clone());
    }
    if let Some(e) = err.downcast_ref::<betweenness_core::Error>() {
        return (e.code().to_owned(), e.to_string());
    }
    if let Some(e) = err.downcast_ref::<std::io::Error>() {
        return ("io".to_owned(), e.to_string());
    }
    ("internal".to_owned(), err.to_string())
}

/// Format a float for CSV output with the same precision policy as JSON.
pub fn format_float(x: f64, full_precision: bool) -> String {
    if full_precision {
        return x.to_string();
    }
    let mut v = serde_json::json!(x);
    round_significant(&mut v, DEFAULT_DIGITS);
    v.as_f64().map_or_else(|| v.to_string(), |r| r.to_string())
}
