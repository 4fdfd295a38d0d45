//! `key: value` reports with a stable line order.

use std::fmt;

use crate::field::FieldElem;
use crate::groups::{ClassificationReport, Connected, HypersurfaceGroup, IdentityCheck};
use crate::ppoly::{Stage, ZeroDecision};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub lines: Vec<(String, String)>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl fmt::Display) {
        self.lines.push((key.into(), value.to_string()));
    }

    pub fn extend(&mut self, other: Report) {
        self.lines.extend(other.lines);
    }

    /// Value of the first line with this key.
    pub fn get(&self, key: &str) -> Option<&str> {
        self.lines.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in &self.lines {
            writeln!(f, "{k}: {v}")?;
        }
        Ok(())
    }
}

/// `(x1,x2,...)` in the element grammar.
pub fn tuple_string(xs: &[FieldElem]) -> String {
    let parts: Vec<String> = xs.iter().map(FieldElem::to_string).collect();
    format!("({})", parts.join(","))
}

/// `certified`, `certified (<stage>)`, `refuted, witness=(..)` or `unknown, ...`.
pub fn wound_string(d: &ZeroDecision) -> String {
    match d {
        ZeroDecision::NoZero(c) if c.stage == Stage::EqualExponent => "certified".into(),
        ZeroDecision::NoZero(c) => format!("certified ({})", c.stage),
        ZeroDecision::Zero { witness, .. } => format!("refuted, witness={}", tuple_string(witness)),
        ZeroDecision::Unknown { bound, explored } => {
            format!("unknown, no witness of coefficient degree <= {bound} among {explored} candidates")
        }
    }
}

pub fn holds_string(holds: bool) -> &'static str {
    if holds {
        "holds"
    } else {
        "fails"
    }
}

pub fn check_line(report: &mut Report, c: &IdentityCheck) {
    report.push(c.label.clone(), holds_string(c.holds));
}

/// Every field of a classification, certificate included.
pub fn classification(g: &HypersurfaceGroup, r: &ClassificationReport) -> Report {
    let mut out = Report::new();
    out.push("group", g.statement());
    out.push("smooth", r.smooth);
    match (r.connected, r.connected_via) {
        (Connected::Yes, Some(v)) => out.push("connected", format!("yes (projection away from {})", g.vars()[v])),
        (c, _) => out.push("connected", c),
    }
    out.push("dimension", r.dimension);
    out.push("principal-part", r.principal_part.display_with(g.vars()));
    out.push("wound", wound_string(&r.wound));
    match &r.wound {
        ZeroDecision::NoZero(c) => {
            out.push("certificate-stage", c.stage);
            out.push("certificate-exponent", c.exponent);
            out.push("certificate-scale", &c.scale);
            for (i, row) in c.matrix.iter().enumerate() {
                out.push(format!("certificate-row-{i}"), tuple_string(row));
            }
            let cols: Vec<String> = c.minor_columns.iter().map(usize::to_string).collect();
            out.push("certificate-minor-columns", cols.join(","));
            out.push("certificate-minor-determinant", &c.minor_determinant);
            out.push("certificate-verified", c.verify());
        }
        ZeroDecision::Zero { stage, .. } => out.push("witness-stage", stage),
        ZeroDecision::Unknown { .. } => {}
    }
    out
}
