//! Small helpers shared by the JSON input schemas.

use serde::Deserialize;

/// A label that may be written as a JSON string or as a bare number;
/// numbers are canonicalized to their decimal strings.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum Label {
    Str(String),
    Int(i64),
}

impl Label {
    pub fn into_string(self) -> String {
        match self {
            Label::Str(s) => s,
            Label::Int(n) => n.to_string(),
        }
    }
}
