use monocat::Error;
use serde_json::{json, Value};

/// Exit status of one run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Holds,
    Fails,
    Invalid,
    Inconclusive,
}

impl Status {
    pub fn code(self) -> i32 {
        match self {
            Status::Holds => 0,
            Status::Fails => 1,
            Status::Invalid => 2,
            Status::Inconclusive => 3,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Status::Holds => "holds",
            Status::Fails => "fails",
            Status::Invalid => "invalid",
            Status::Inconclusive => "inconclusive",
        }
    }

    pub fn of(ok: bool) -> Status {
        if ok {
            Status::Holds
        } else {
            Status::Fails
        }
    }
}

pub struct Report {
    pub status: Status,
    pub summary: String,
    pub witness: Option<Value>,
    pub data: Value,
    /// Extra lines for the text format.
    pub lines: Vec<String>,
}

impl Report {
    pub fn new(status: Status, summary: impl Into<String>) -> Report {
        Report { status, summary: summary.into(), witness: None, data: Value::Null, lines: Vec::new() }
    }

    pub fn with_data(mut self, data: Value) -> Report {
        self.data = data;
        self
    }

    pub fn with_witness(mut self, w: Option<Value>) -> Report {
        self.witness = w;
        self
    }

    pub fn with_lines(mut self, lines: Vec<String>) -> Report {
        self.lines = lines;
        self
    }

    pub fn from_error(e: &Error) -> Report {
        match e {
            Error::Inconclusive(m) => Report::new(Status::Inconclusive, m.clone()),
            Error::Input(m) => Report::new(Status::Invalid, m.clone()),
            Error::Internal(m) => Report::new(Status::Invalid, format!("internal error: {m}")),
        }
    }

    pub fn to_json(&self, command: &str, invocation: &[String]) -> Value {
        json!({
            "command": command,
            "invocation": invocation,
            "status": self.status.label(),
            "exit": self.status.code(),
            "summary": self.summary,
            "witness": self.witness,
            "data": self.data,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}: {}\n", self.status.label(), self.summary);
        for l in &self.lines {
            out.push_str(l);
            out.push('\n');
        }
        if let Some(w) = &self.witness {
            out.push_str(&format!("witness: {w}\n"));
        }
        out
    }
}
