//! The "feqlab/1" JSON report written to standard output.

use std::collections::BTreeMap;

use feqlab_core::Error;
use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const SCHEMA: &str = "feqlab/1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub schema: String,
    pub command: String,
    /// Echo of the parameters as understood after parsing.
    pub params: BTreeMap<String, Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub result: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorBody>,
    pub exit_code: u8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ErrorKind {
    Usage,
    Syntax,
    Domain,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ErrorBody {
    pub kind: ErrorKind,
    pub message: String,
    /// Byte offset into the offending expression, for syntax errors.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub offset: Option<usize>,
}

impl From<&Error> for ErrorBody {
    fn from(e: &Error) -> Self {
        match e {
            Error::Syntax { offset, message } => ErrorBody {
                kind: ErrorKind::Syntax,
                message: message.clone(),
                offset: Some(*offset),
            },
            Error::Domain(message) => ErrorBody {
                kind: ErrorKind::Domain,
                message: message.clone(),
                offset: None,
            },
        }
    }
}

/// Tri-state process status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Positive,
    Negative,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Positive
        } else {
            Verdict::Negative
        }
    }

    pub fn exit_code(self) -> u8 {
        match self {
            Verdict::Positive => 0,
            Verdict::Negative => 1,
        }
    }
}

impl Report {
    pub fn success(
        command: &str,
        params: BTreeMap<String, Value>,
        result: Value,
        verdict: Verdict,
    ) -> Self {
        Report {
            schema: SCHEMA.to_string(),
            command: command.to_string(),
            params,
            result: Some(result),
            error: None,
            exit_code: verdict.exit_code(),
        }
    }

    pub fn failure(command: &str, params: BTreeMap<String, Value>, error: ErrorBody) -> Self {
        Report {
            schema: SCHEMA.to_string(),
            command: command.to_string(),
            params,
            result: None,
            error: Some(error),
            exit_code: 2,
        }
    }
}
