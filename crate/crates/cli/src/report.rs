//! JSON run reports and exit-code mapping.

use serde::Serialize;
use serde_json::Value;
use subelect::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    NotFound,
    BudgetExceeded,
}

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: Value,
    pub result: Value,
    pub wall_time_ms: f64,
    pub status: Status,
    /// Printed verbatim instead of the JSON (`generate` without `--out`).
    #[serde(skip)]
    pub raw: Option<String>,
}

impl RunReport {
    pub fn render(&self) -> String {
        match &self.raw {
            Some(text) => text.trim_end().to_string(),
            None => serde_json::to_string_pretty(self).expect("report serializes"),
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self.status {
            Status::Ok | Status::NotFound => 0,
            Status::BudgetExceeded => 4,
        }
    }
}

/// A run that produced no report.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }

    pub fn invalid(message: impl Into<String>) -> Self {
        Self {
            code: 3,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let code = match err {
            Error::MalformedHeader(_)
            | Error::MalformedLine { .. }
            | Error::NotAPermutation(_)
            | Error::UnknownCandidate(_)
            | Error::DuplicateLabel(_)
            | Error::LpParse { .. } => 2,
            Error::EmptySelection
            | Error::IndexOutOfRange { .. }
            | Error::BadWidth { .. }
            | Error::BadVoterCount { .. }
            | Error::OddVoterCount(_)
            | Error::InvalidSpec(_) => 3,
            Error::BudgetExceeded { .. } | Error::NotOptimal => 4,
        };
        Self {
            code,
            message: err.to_string(),
        }
    }
}

/// Counts that fit in a u64 become JSON numbers, larger ones strings.
pub fn count_value(count: impl ToString) -> Value {
    let text = count.to_string();
    match text.parse::<u64>() {
        Ok(n) => Value::from(n),
        Err(_) => Value::String(text),
    }
}
