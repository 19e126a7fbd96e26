//! Verification reports.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

use crate::config::{Format, RunConfig};

/// One checked statement.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Claim {
    pub citation: String,
    pub expected: Value,
    pub observed: Value,
    pub pass: bool,
    pub residual: Option<f64>,
}

impl Claim {
    pub fn equal<T: Serialize + PartialEq>(citation: &str, expected: T, observed: T) -> Self {
        let pass = expected == observed;
        Self { citation: citation.into(), expected: json(&expected), observed: json(&observed), pass, residual: None }
    }

    /// `observed < bound`.
    pub fn below(citation: &str, bound: f64, observed: f64) -> Self {
        Self {
            citation: citation.into(),
            expected: Value::String(format!("< {bound:e}")),
            observed: json(&observed),
            pass: observed < bound,
            residual: Some(observed),
        }
    }

    /// `observed > bound`.
    pub fn above(citation: &str, bound: f64, observed: f64) -> Self {
        Self {
            citation: citation.into(),
            expected: Value::String(format!("> {bound:e}")),
            observed: json(&observed),
            pass: observed > bound,
            residual: Some(observed),
        }
    }
}

fn json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).unwrap_or(Value::Null)
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub config: RunConfig,
    pub result: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<Value>,
    /// Conjunction of all claims.
    pub pass: bool,
    pub claims: Vec<Claim>,
    /// Supporting data not part of the headline result.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub details: Option<Value>,
    /// Tabular rendering used by the text format.
    #[serde(skip)]
    pub table: Option<String>,
}

impl Report {
    pub fn new<T: Serialize>(command: &str, config: &RunConfig, result: &T, claims: Vec<Claim>) -> Self {
        let pass = claims.iter().all(|c| c.pass);
        Self {
            command: command.into(),
            config: config.clone(),
            result: json(result),
            expected: None,
            pass,
            claims,
            details: None,
            table: None,
        }
    }

    pub fn with_expected<T: Serialize>(mut self, expected: &T) -> Self {
        self.expected = Some(json(expected));
        self
    }

    pub fn with_details<T: Serialize>(mut self, details: &T) -> Self {
        self.details = Some(json(details));
        self
    }

    pub fn passed(&self) -> bool {
        self.pass
    }

    pub fn render(&self) -> String {
        match self.config.format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("report serializes");
                s.push('\n');
                s
            }
            Format::Text => self.render_text(),
        }
    }

    fn render_text(&self) -> String {
        let mut s = String::new();
        let c = &self.config;
        let _ = writeln!(s, "command: {}", self.command);
        let _ = writeln!(s, "tau = {} + {}i, n = {}, seed = {}", c.tau[0], c.tau[1], c.n, c.seed);
        match &self.table {
            Some(t) => s.push_str(t),
            None => {
                let _ = writeln!(s, "result: {}", self.result);
                if let Some(e) = &self.expected {
                    let _ = writeln!(s, "expected: {e}");
                }
            }
        }
        for claim in &self.claims {
            let tag = if claim.pass { "PASS" } else { "FAIL" };
            let _ = write!(s, "[{tag}] {}: observed {}, expected {}", claim.citation, claim.observed, claim.expected);
            if let Some(r) = claim.residual {
                let _ = write!(s, " (residual {r:e})");
            }
            s.push('\n');
        }
        s
    }
}
