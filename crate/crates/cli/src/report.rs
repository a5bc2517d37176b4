use noether::Error;
use serde_json::Value;

pub const OK: i32 = 0;
pub const NEGATIVE: i32 = 1;
pub const VERIFICATION: i32 = 2;
pub const USAGE: i32 = 64;

/// A finished command: text for humans, JSON for scripts, and the exit code.
#[derive(Debug)]
pub struct Report {
    pub text: String,
    pub json: Value,
    pub code: i32,
}

impl Report {
    pub fn new(text: String, json: Value, code: i32) -> Self {
        Report { text, json, code }
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            serde_json::to_string_pretty(&self.json).expect("report values are plain JSON")
        } else {
            self.text.trim_end().to_string()
        }
    }
}

#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub msg: String,
}

impl Failure {
    pub fn usage(msg: impl Into<String>) -> Self {
        Failure {
            code: USAGE,
            msg: msg.into(),
        }
    }

    pub fn verification(msg: impl Into<String>) -> Self {
        Failure {
            code: VERIFICATION,
            msg: msg.into(),
        }
    }

    pub fn usage_from(e: Error) -> Self {
        Failure::usage(e.to_string())
    }

    /// Engine errors raised while evaluating: a failed check is a
    /// verification failure, anything else is bad input.
    pub fn from_engine(e: Error) -> Self {
        match e {
            Error::VerificationFailed { .. } | Error::NotEquivalent { .. } => {
                Failure::verification(e.to_string())
            }
            e => Failure::usage(e.to_string()),
        }
    }
}
