//! Flat `key=value` machine reports.

use std::fmt;

use brauer_core::abelian::{FinAbGroup, Int};
use brauer_core::curve::{BrauerReport, BrauerResult};
use sha2::{Digest, Sha256};

use crate::error::CliError;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Status {
    Determined,
    Partial,
    Error,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Determined => 0,
            Status::Error => 1,
            Status::Partial => 2,
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Determined => "determined",
            Status::Partial => "partial",
            Status::Error => "error",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReportDocument {
    pub status: Status,
    entries: Vec<(String, String)>,
}

pub fn sha256_hex(text: &str) -> String {
    Sha256::digest(text.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

fn flag(v: Option<bool>) -> String {
    match v {
        Some(b) => b.to_string(),
        None => "unknown".into(),
    }
}

fn coords(x: &[Int]) -> String {
    if x.is_empty() {
        "none".into()
    } else {
        x.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
    }
}

fn one_line(s: &str) -> String {
    s.replace(['\n', '\r'], " ")
}

impl ReportDocument {
    fn new(command: &str, input_hash: &str, status: Status) -> Self {
        let mut doc = ReportDocument { status, entries: Vec::new() };
        doc.push("format_version", FORMAT_VERSION);
        doc.push("command", command);
        doc.push("input_sha256", input_hash);
        doc.push("status", status);
        doc
    }

    fn push(&mut self, key: impl Into<String>, value: impl fmt::Display) {
        self.entries.push((key.into(), one_line(&value.to_string())));
    }

    pub fn error(command: &str, input_hash: &str, err: &CliError) -> Self {
        let mut doc = Self::new(command, input_hash, Status::Error);
        doc.push("error_code", err.code());
        doc.push("error_message", err);
        doc
    }

    pub fn brauer(input_hash: &str, report: &BrauerReport, verify: &str) -> Self {
        let status = if report.result.is_determined() { Status::Determined } else { Status::Partial };
        let mut doc = Self::new("brauer", input_hash, status);
        doc.push("r", report.r);
        doc.push("path", report.path);
        doc.push("splitting", report.splitting);
        match &report.result {
            BrauerResult::Determined(g) => {
                doc.push("result", g);
                doc.push("subgroup", "none");
                doc.push("quotient_bound", "none");
            }
            BrauerResult::Partial { subgroup, quotient_bound } => {
                doc.push("result", "partial");
                doc.push("subgroup", subgroup);
                doc.push("quotient_bound", quotient_bound);
            }
        }
        doc.push("left_term", &report.left_term);
        doc.push("left_kernel", &report.left_kernel);
        doc.push("left_image", &report.left_image);
        doc.push("right_term", &report.right_term);
        doc.push("right_term_source", report.right_term_source);
        match &report.coarse_h1 {
            Some((g, src)) => {
                doc.push("coarse_h1", g);
                doc.push("coarse_h1_source", src);
            }
            None => {
                doc.push("coarse_h1", "none");
                doc.push("coarse_h1_source", "none");
            }
        }
        doc.push("is_root_gerbe", report.is_root_gerbe);
        doc.push("right_exact", flag(report.right_exact));
        doc.push("verify", verify);
        doc.push("fibers", report.fibers.len());
        for f in &report.fibers {
            let d = &f.diagnostics;
            let key = |k: &str| format!("fiber.{}.{k}", f.name);
            doc.push(key("base_order"), d.extension.base().order());
            doc.push(key("total_order"), d.extension.total().order());
            doc.push(key("h2_units_base"), &d.h2_units_base);
            doc.push(
                key("h2_units_total"),
                d.h2_units_total.as_ref().map_or_else(|| "unknown".to_string(), FinAbGroup::to_string),
            );
            doc.push(key("bockstein_class"), coords(&d.bockstein_class));
            doc.push(key("is_root_gerbe"), d.is_root_gerbe);
            doc.push(key("root_gerbe_via_inflation"), flag(d.root_gerbe_via_inflation));
            doc.push(key("h3_inflation_injective"), flag(d.h3_inflation_injective));
            doc.push(key("h2_section_exists"), flag(d.h2_section_exists));
        }
        doc
    }

    pub fn cohomology(
        input_hash: &str,
        group: &str,
        degree: usize,
        coeff: &str,
        value: &FinAbGroup,
        verify: &str,
    ) -> Self {
        let mut doc = Self::new("cohomology", input_hash, Status::Determined);
        doc.push("group", group);
        doc.push("degree", degree);
        doc.push("coeff", coeff);
        doc.push("value", value);
        doc.push("verify", verify);
        doc
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn entries(&self) -> &[(String, String)] {
        &self.entries
    }
}

impl fmt::Display for ReportDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in &self.entries {
            writeln!(f, "{k}={v}")?;
        }
        Ok(())
    }
}

/// Parses a rendered report back into its entries.
pub fn parse_report(text: &str) -> Option<Vec<(String, String)>> {
    text.lines().map(|l| l.split_once('=').map(|(k, v)| (k.to_string(), v.to_string()))).collect()
}
