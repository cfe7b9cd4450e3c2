//! The `brauer` and `cohomology` commands.

use std::fmt::Write as _;
use std::path::Path;

use brauer_core::abelian::FinAbGroup;
use brauer_core::cohomology::{check_tame, cohomology, Coefficients};
use brauer_core::curve::{brauer_report, BrauerReport, BrauerResult};
use brauer_core::groups::FiniteGroup;
use brauer_core::oracle::{cyclic_closed_form, full_bar_cohomology, OracleResult};
use brauer_core::{Error, Limits};

use crate::error::CliError;
use crate::input::parse_input;
use crate::report::{sha256_hex, ReportDocument};
use crate::spec::GroupSpec;

#[derive(Clone, Copy, Debug, Default)]
pub struct RunOptions {
    pub limits: Limits,
    /// Overrides the characteristic given in the input.
    pub characteristic: Option<u64>,
    pub verify: bool,
}

/// A finished command: the machine report and a short human summary.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub report: ReportDocument,
    pub summary: String,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        self.report.status.exit_code()
    }
}

fn failed(command: &str, hash: &str, err: CliError) -> Outcome {
    let summary = format!("error [{}]: {err}\n", err.code());
    Outcome { report: ReportDocument::error(command, hash, &err), summary }
}

/// Runs oracle checks on one computed value. Checks the oracles cannot
/// afford are skipped; returns how many ran.
fn cross_check(
    what: &str,
    value: &FinAbGroup,
    oracles: impl IntoIterator<Item = brauer_core::Result<OracleResult>>,
) -> Result<usize, CliError> {
    let mut ran = 0;
    for o in oracles {
        match o {
            Ok(o) if &o.value == value => ran += 1,
            Ok(o) => {
                return Err(CliError::OracleMismatch(format!(
                    "{what}: engine gives {value}, {} oracle gives {} ({})",
                    o.method, o.value, o.description
                )))
            }
            Err(Error::ResourceCap { .. }) => {}
            Err(e) => return Err(e.into()),
        }
    }
    Ok(ran)
}

fn oracles_for(
    g: &FiniteGroup,
    cyclic: Option<u64>,
    n: usize,
    coeff: Coefficients,
) -> Vec<brauer_core::Result<OracleResult>> {
    let mut v = vec![full_bar_cohomology(g, n, coeff)];
    if let Some(k) = cyclic {
        v.push(cyclic_closed_form(k, n, coeff));
    }
    v
}

fn verify_brauer(report: &BrauerReport) -> Result<String, CliError> {
    let mut ran = 0;
    for f in &report.fibers {
        let g = f.diagnostics.extension.base();
        let cyclic = g.is_cyclic().then_some(g.order() as u64);
        let what = format!("H^2(G, k^x) at point {}", f.name);
        ran += cross_check(&what, &f.diagnostics.h2_units_base, oracles_for(g, cyclic, 2, Coefficients::Units))?;
    }
    let sum = FinAbGroup::sum_all(report.fibers.iter().map(|f| &f.diagnostics.h2_units_base));
    if sum != report.left_term {
        return Err(CliError::OracleMismatch(format!(
            "left term {} is not the sum of the fibers {sum}",
            report.left_term
        )));
    }
    report.check_invariants()?;
    Ok(format!("passed:{ran}"))
}

fn summarize_brauer(report: &BrauerReport) -> String {
    let mut s = String::new();
    match &report.result {
        BrauerResult::Determined(g) => writeln!(s, "Brauer group: {g}").unwrap(),
        BrauerResult::Partial { subgroup, quotient_bound } => {
            writeln!(s, "Brauer group: partial; contains {subgroup}, quotient embeds in {quotient_bound}").unwrap()
        }
    }
    writeln!(s, "  path: {}, splitting: {}", report.path, report.splitting).unwrap();
    writeln!(
        s,
        "  left term: {} (kernel {}), right term: {} ({})",
        report.left_term, report.left_kernel, report.right_term, report.right_term_source
    )
    .unwrap();
    s
}

/// `brauer`: the Brauer group of the gerbe described by `text`. Relative
/// file references are resolved against `base`.
pub fn run_brauer(text: &str, base: &Path, opts: &RunOptions) -> Outcome {
    let hash = sha256_hex(text);
    let computed = (|| {
        let doc = parse_input(text)?;
        let curve = doc.resolve(base, opts.characteristic)?;
        let report = brauer_report(&curve, doc.r, &opts.limits)?;
        let verify = if opts.verify { verify_brauer(&report)? } else { "off".to_string() };
        Ok::<_, CliError>((report, verify))
    })();
    match computed {
        Ok((report, verify)) => {
            Outcome { report: ReportDocument::brauer(&hash, &report, &verify), summary: summarize_brauer(&report) }
        }
        Err(e) => failed("brauer", &hash, e),
    }
}

pub fn parse_coefficients(s: &str) -> Result<Coefficients, String> {
    match s {
        "Z" => Ok(Coefficients::Integers),
        "units" => Ok(Coefficients::Units),
        _ => match s.strip_prefix("Z/").map(str::parse::<u64>) {
            Some(Ok(m)) if m >= 1 => Ok(Coefficients::Mod(m)),
            _ => Err(format!("coefficients must be Z, Z/<m> with m >= 1, or units; found {s:?}")),
        },
    }
}

/// `cohomology`: `H^degree(group, coeff)` in canonical form.
pub fn run_cohomology(group: &str, degree: usize, coeff: &str, base: &Path, opts: &RunOptions) -> Outcome {
    let canonical = format!("group={group}\ndegree={degree}\ncoeff={coeff}\n");
    let hash = sha256_hex(&canonical);
    let computed = (|| {
        let spec: GroupSpec = group.parse().map_err(|message| CliError::Syntax {
            line: 0,
            column: 0,
            key: Some("group".into()),
            message,
        })?;
        let c = parse_coefficients(coeff).map_err(|message| CliError::Syntax {
            line: 0,
            column: 0,
            key: Some("coeff".into()),
            message,
        })?;
        let g = spec.build(base)?;
        if c == Coefficients::Units {
            if degree == 0 {
                return Err(Error::DimensionMismatch("units cohomology is only modelled in degrees >= 1".into()).into());
            }
            check_tame(&g, opts.characteristic)?;
        }
        let value = cohomology(&g, degree, c, &opts.limits)?.value().clone();
        let verify = if opts.verify {
            let cyclic = match spec {
                GroupSpec::Cyclic(n) => Some(n),
                _ => None,
            };
            let ran =
                cross_check(&format!("H^{degree}({group}, {coeff})"), &value, oracles_for(&g, cyclic, degree, c))?;
            format!("passed:{ran}")
        } else {
            "off".to_string()
        };
        Ok::<_, CliError>((value, verify))
    })();
    match computed {
        Ok((value, verify)) => Outcome {
            summary: format!("H^{degree}({group}, {coeff}) = {value}\n"),
            report: ReportDocument::cohomology(&hash, group, degree, coeff, &value, &verify),
        },
        Err(e) => failed("cohomology", &hash, e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts(verify: bool) -> RunOptions {
        RunOptions { verify, ..Default::default() }
    }

    #[test]
    fn cohomology_examples() {
        for (g, n, c, want) in
            [("cyclic:6", 3, "units", "Z/6"), ("semidirect_z2:4:3", 2, "units", "Z/2"), ("cyclic:5", 2, "units", "0")]
        {
            let out = run_cohomology(g, n, c, Path::new("."), &opts(true));
            assert_eq!(out.report.get("value"), Some(want), "{}", out.report);
            assert!(out.report.get("verify").unwrap().starts_with("passed:"));
            assert_eq!(out.exit_code(), 0);
        }
    }

    #[test]
    fn cohomology_errors() {
        let out = run_cohomology("cyclic:4", 0, "units", Path::new("."), &opts(false));
        assert_eq!(out.report.get("error_code"), Some("dimension-mismatch"));
        let out = run_cohomology("cyclic:4", 1, "Q", Path::new("."), &opts(false));
        assert_eq!(out.report.get("error_code"), Some("syntax"));
        let out = run_cohomology(
            "cyclic:4",
            2,
            "units",
            Path::new("."),
            &RunOptions { characteristic: Some(2), ..opts(false) },
        );
        assert_eq!(out.report.get("error_code"), Some("tameness"));
        let out = run_cohomology(
            "semidirect_z2:8:7",
            5,
            "Z",
            Path::new("."),
            &RunOptions { limits: Limits::new(1000), ..opts(false) },
        );
        assert_eq!(out.report.get("error_code"), Some("resource-cap"));
        assert_eq!(out.exit_code(), 1);
    }

    #[test]
    fn brauer_examples() {
        let text = "[curve]\nsmooth=true\nproper=true\ngenus=2\n[gerbe]\nr=2\n";
        let out = run_brauer(text, Path::new("."), &opts(true));
        assert_eq!(out.report.get("result"), Some("Z/2 + Z/2 + Z/2 + Z/2"), "{}", out.report);
        assert_eq!(out.exit_code(), 0);

        let text = "[curve]\nsmooth=false\nproper=true\nh1_stack=0\n[gerbe]\nr=2\n[point.node]\ngroup=semidirect_z2:4:3\nsingular=true\n";
        let out = run_brauer(text, Path::new("."), &opts(true));
        assert_eq!(out.report.get("result"), Some("Z/2"), "{}", out.report);
        assert_eq!(out.report.get("verify"), Some("passed:1"));

        let text =
            "[curve]\nsmooth=false\nproper=true\n[gerbe]\nr=2\n[point.node]\ngroup=semidirect_z2:4:3\nsingular=true\n";
        let out = run_brauer(text, Path::new("."), &opts(false));
        assert_eq!(out.report.get("error_code"), Some("missing-h1"));
        assert_eq!(out.exit_code(), 1);
    }

    #[test]
    fn reports_are_byte_stable() {
        let text = "[curve]\nsmooth=true\nproper=true\ngenus=1\n[gerbe]\nr=2\n[point.a]\ngroup=cyclic:2\n[point.b]\ngroup=cyclic:3\n";
        let a = run_brauer(text, Path::new("."), &opts(false)).report.to_string();
        let b = run_brauer(text, Path::new("."), &opts(false)).report.to_string();
        assert_eq!(a, b);
    }
}
