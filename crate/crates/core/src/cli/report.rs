//! The structured document emitted by every command.

use std::fmt::Write as _;

use serde::Serialize;

use crate::criteria::{Certificate, Criterion, Outcome};
use crate::oracle::{OracleConfig, OracleResult};
use crate::tensor::SymmetricTensor;
use crate::vacuum::{Route, StabilityReport, Z3Params};

use super::document::TensorDocument;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InputSummary {
    Tensor {
        order: usize,
        dim: usize,
        entries: std::collections::BTreeMap<String, f64>,
    },
    Z3 {
        params: Z3Params,
    },
}

impl InputSummary {
    pub fn tensor(t: &SymmetricTensor) -> Self {
        let doc = TensorDocument::from_tensor(t);
        InputSummary::Tensor {
            order: doc.order,
            dim: doc.dim,
            entries: doc.entries,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConfigEcho {
    pub strict: bool,
    pub criteria: Vec<Criterion>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleConfig>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub route: Option<Route>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rho_scan: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub tool: &'static str,
    pub tool_version: &'static str,
    pub command: &'static str,
    pub input: InputSummary,
    pub config: ConfigEcho,
    pub certificates: Vec<Certificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vacuum: Option<StabilityReport>,
    pub aggregate: Outcome,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports always serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        match &self.input {
            InputSummary::Tensor { order, dim, entries } => {
                let _ = writeln!(out, "tensor: order {order}, dim {dim}, {} nonzero entries", entries.len());
            }
            InputSummary::Z3 { params } => {
                let _ = writeln!(
                    out,
                    "z3 couplings: l1={} l2={} l3={} l4={} ls={} ls1={} ls2={} |ls12|={} rho={}",
                    params.l1,
                    params.l2,
                    params.l3,
                    params.l4,
                    params.ls,
                    params.ls1,
                    params.ls2,
                    params.abs_ls12,
                    params.rho
                );
            }
        }
        for cert in &self.certificates {
            let _ = write!(out, "{:<12} {}", cert.criterion.id(), outcome_word(cert.outcome));
            if !cert.fired.is_empty() {
                let _ = write!(out, " via {}", cert.fired.join(", "));
            }
            out.push('\n');
            for c in &cert.conditions {
                let mark = if c.satisfied { "ok" } else { "--" };
                let branch = c.branch.as_deref().map(|b| format!("{b} ")).unwrap_or_default();
                let _ = writeln!(out, "    [{mark}] {branch}{}  (margin {})", c.description, c.value);
            }
            if let Some(note) = &cert.note {
                let _ = writeln!(out, "    note: {note}");
            }
        }
        if let Some(v) = &self.vacuum {
            let _ = writeln!(out, "theorem route: {} (worst rho {})", outcome_word(v.theorem_verdict), v.worst_rho);
            let _ = writeln!(
                out,
                "as-printed route: {} (worst rho {})",
                outcome_word(v.printed_verdict),
                v.worst_rho_printed
            );
            if v.samples.len() == 1 {
                let s = &v.samples[0];
                for verdict in [&s.theorem, &s.printed] {
                    let _ = writeln!(out, "  {} conditions at rho {}:", verdict.route.id(), verdict.rho);
                    for c in &verdict.conditions {
                        let mark = if c.satisfied { "ok" } else { "--" };
                        let _ = writeln!(out, "    [{mark}] {}  (margin {})", c.description, c.value);
                    }
                }
            }
        }
        if let Some(o) = &self.oracle {
            let point: Vec<String> = o.argmin.iter().map(|x| x.to_string()).collect();
            let _ = writeln!(
                out,
                "oracle: min {} at ({}) on grid {}: {}",
                o.min_value,
                point.join(", "),
                o.resolution_used,
                classification_word(o.classification)
            );
        }
        let _ = writeln!(out, "aggregate: {}", outcome_word(self.aggregate));
        out
    }
}

pub fn outcome_word(o: Outcome) -> &'static str {
    match o {
        Outcome::Certified => "certified",
        Outcome::Refuted => "refuted",
        Outcome::Unknown => "unknown",
    }
}

fn classification_word(c: crate::oracle::Classification) -> &'static str {
    use crate::oracle::Classification::*;
    match c {
        CopositiveUpToBand => "copositive up to band",
        NotCopositive => "not copositive",
        Indeterminate => "indeterminate",
    }
}
