//! Machine-readable certificates.
//!
//! A certificate records the command, the model files it read (with content
//! hashes), named exact results, verdicts and notes.  Every numeric result is
//! stored as a `p/q` string and parses back to the same rational.  The
//! `digest` field hashes the canonical JSON of everything except the digest
//! and the optional timestamp, so identical inputs give identical digests.

use std::fmt::Write as _;

use exactkernel::Rational;
use serde::{Deserialize, Serialize};

use crate::manifest::{sha256_hex, ModelRef};

/// A named exact value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedValue {
    /// Name of the quantity.
    pub name: String,
    /// The value; a `p/q` string for numeric results.
    pub value: String,
    /// Reference-table key, for values that are tracked by the golden suite.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub anchor: Option<String>,
}

/// A certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    /// The command line (without the program name).
    pub command: String,
    /// Model files read.
    pub models: Vec<ModelRef>,
    /// Exact numeric results.
    pub results: Vec<NamedValue>,
    /// Non-numeric outcomes (types, pass/fail verdicts).
    pub verdicts: Vec<NamedValue>,
    /// Remarks, including disagreements with reference values.
    pub notes: Vec<String>,
    /// Structured output of the underlying computation.
    pub detail: serde_json::Value,
    /// SHA-256 of the certificate body.
    #[serde(default)]
    pub digest: String,
    /// Creation time in seconds since the epoch; not part of the digest.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<u64>,
}

impl Certificate {
    /// An empty certificate for `command`.
    pub fn new(command: impl Into<String>) -> Self {
        Certificate {
            command: command.into(),
            models: Vec::new(),
            results: Vec::new(),
            verdicts: Vec::new(),
            notes: Vec::new(),
            detail: serde_json::Value::Null,
            digest: String::new(),
            timestamp: None,
        }
    }

    /// Adds a numeric result.
    pub fn result(&mut self, name: impl Into<String>, value: &Rational) {
        self.results.push(NamedValue { name: name.into(), value: value.to_string(), anchor: None });
    }

    /// Adds a numeric result tracked by the golden table.
    pub fn anchored(&mut self, name: impl Into<String>, value: &Rational, anchor: impl Into<String>) {
        self.results.push(NamedValue { name: name.into(), value: value.to_string(), anchor: Some(anchor.into()) });
    }

    /// Adds a verdict.
    pub fn verdict(&mut self, name: impl Into<String>, value: impl Into<String>, anchor: Option<String>) {
        self.verdicts.push(NamedValue { name: name.into(), value: value.into(), anchor });
    }

    /// Looks up a numeric result by name.
    pub fn rational(&self, name: &str) -> Option<Rational> {
        self.results.iter().find(|v| v.name == name).and_then(|v| v.value.parse().ok())
    }

    /// Looks up a result or verdict by name.
    pub fn value(&self, name: &str) -> Option<&str> {
        self.results.iter().chain(&self.verdicts).find(|v| v.name == name).map(|v| v.value.as_str())
    }

    /// All anchored values (results and verdicts).
    pub fn anchored_values(&self) -> impl Iterator<Item = &NamedValue> {
        self.results.iter().chain(&self.verdicts).filter(|v| v.anchor.is_some())
    }

    fn body_json(&self) -> String {
        let mut body = self.clone();
        body.digest = String::new();
        body.timestamp = None;
        serde_json::to_string(&body).expect("serializable")
    }

    /// Fills in the digest.
    pub fn seal(&mut self) {
        self.digest = sha256_hex(self.body_json().as_bytes());
    }

    /// Whether the digest matches the body.
    pub fn digest_is_valid(&self) -> bool {
        self.digest == sha256_hex(self.body_json().as_bytes())
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    /// Generic human-readable rendering.
    pub fn table(&self) -> String {
        let mut out = String::new();
        let width = self
            .results
            .iter()
            .chain(&self.verdicts)
            .map(|v| v.name.chars().count())
            .max()
            .unwrap_or(0);
        for v in self.results.iter().chain(&self.verdicts) {
            let _ = writeln!(out, "{:<width$}  {}", v.name, v.value);
        }
        for n in &self.notes {
            let _ = writeln!(out, "note: {n}");
        }
        out
    }
}
