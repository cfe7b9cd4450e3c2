//! The sectioned `key=value` input format.
//!
//! ```text
//! [curve]
//! smooth=true
//! proper=true
//! genus=2
//!
//! [gerbe]
//! r=2
//!
//! [point.p]
//! group=cyclic:3
//! ```

use std::fmt::{self, Write as _};
use std::path::Path;

use brauer_core::abelian::FinAbGroup;
use brauer_core::curve::{CurveSpec, PointExtension, StabilizerPoint};

use crate::error::CliError;
use crate::spec::{load_cocycle, ExtensionSpec, GroupSpec};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveSection {
    pub smooth: bool,
    pub proper: bool,
    pub connected: bool,
    pub genus: Option<u64>,
    pub characteristic: u64,
    /// Invariant factors; empty for the trivial group.
    pub h1_coarse: Option<Vec<u64>>,
    pub h1_stack: Option<Vec<u64>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSection {
    pub name: String,
    pub group: GroupSpec,
    pub singular: bool,
    pub extension: ExtensionSpec,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputDocument {
    pub curve: CurveSection,
    pub r: u64,
    pub points: Vec<PointSection>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    Curve,
    Gerbe,
    Point(usize),
}

#[derive(Default)]
struct CurveDraft {
    smooth: Option<bool>,
    proper: Option<bool>,
    connected: Option<bool>,
    genus: Option<u64>,
    characteristic: Option<u64>,
    h1_coarse: Option<Vec<u64>>,
    h1_stack: Option<Vec<u64>>,
}

struct PointDraft {
    name: String,
    line: usize,
    group: Option<GroupSpec>,
    singular: Option<bool>,
    extension: Option<ExtensionSpec>,
}

struct Line<'a> {
    number: usize,
    key: &'a str,
    key_col: usize,
    value: &'a str,
    value_col: usize,
}

impl Line<'_> {
    fn error(&self, message: impl Into<String>) -> CliError {
        CliError::Syntax {
            line: self.number,
            column: self.value_col,
            key: Some(self.key.to_string()),
            message: message.into(),
        }
    }

    fn bool(&self) -> Result<bool, CliError> {
        match self.value {
            "true" => Ok(true),
            "false" => Ok(false),
            _ => Err(self.error(format!("expected true or false, found {:?}", self.value))),
        }
    }

    fn u64(&self) -> Result<u64, CliError> {
        self.value.parse().map_err(|_| self.error(format!("expected a non-negative integer, found {:?}", self.value)))
    }

    fn factors(&self) -> Result<Vec<u64>, CliError> {
        if self.value == "0" {
            return Ok(Vec::new());
        }
        self.value
            .split(',')
            .map(|t| match t.trim().parse::<u64>() {
                Ok(n) if n >= 2 => Ok(n),
                _ => Err(self.error(format!("invariant factors must be integers >= 2, found {t:?}"))),
            })
            .collect()
    }
}

fn set<T>(slot: &mut Option<T>, v: T, line: &Line) -> Result<(), CliError> {
    if slot.is_some() {
        return Err(CliError::Syntax {
            line: line.number,
            column: line.key_col,
            key: Some(line.key.to_string()),
            message: "duplicate key".into(),
        });
    }
    *slot = Some(v);
    Ok(())
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> CliError {
    CliError::Syntax { line, column, key: None, message: message.into() }
}

fn valid_name(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
}

pub fn parse_input(text: &str) -> Result<InputDocument, CliError> {
    let mut curve: Option<CurveDraft> = None;
    let mut curve_line = 0;
    let mut r: Option<u64> = None;
    let mut gerbe_seen = false;
    let mut points: Vec<PointDraft> = Vec::new();
    let mut section: Option<Section> = None;

    for (i, raw) in text.lines().enumerate() {
        let number = i + 1;
        let indent = raw.len() - raw.trim_start().len();
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        if let Some(inner) = trimmed.strip_prefix('[') {
            let head =
                inner.strip_suffix(']').ok_or_else(|| syntax(number, indent + 1, "unterminated section header"))?;
            section = Some(match head {
                "curve" if curve.is_none() => {
                    curve = Some(CurveDraft::default());
                    curve_line = number;
                    Section::Curve
                }
                "gerbe" if !gerbe_seen => {
                    gerbe_seen = true;
                    Section::Gerbe
                }
                "curve" | "gerbe" => return Err(syntax(number, indent + 2, format!("duplicate section [{head}]"))),
                _ => match head.strip_prefix("point.") {
                    Some(name) if valid_name(name) => {
                        if points.iter().any(|p| p.name == name) {
                            return Err(syntax(number, indent + 2, format!("duplicate point {name:?}")));
                        }
                        points.push(PointDraft {
                            name: name.to_string(),
                            line: number,
                            group: None,
                            singular: None,
                            extension: None,
                        });
                        Section::Point(points.len() - 1)
                    }
                    Some(name) => return Err(syntax(number, indent + 8, format!("invalid point name {name:?}"))),
                    None => return Err(syntax(number, indent + 2, format!("unknown section [{head}]"))),
                },
            });
            continue;
        }
        let eq = raw.find('=').ok_or_else(|| syntax(number, indent + 1, "expected `key=value`"))?;
        let key = raw[..eq].trim();
        let value_raw = &raw[eq + 1..];
        let value = value_raw.trim();
        let value_col = eq + 2 + (value_raw.len() - value_raw.trim_start().len());
        let line = Line { number, key, key_col: indent + 1, value, value_col };
        let Some(sec) = section else {
            return Err(syntax(number, indent + 1, "key outside of any section"));
        };
        match sec {
            Section::Curve => {
                let c = curve.as_mut().expect("curve section open");
                match key {
                    "smooth" => set(&mut c.smooth, line.bool()?, &line)?,
                    "proper" => set(&mut c.proper, line.bool()?, &line)?,
                    "connected" => set(&mut c.connected, line.bool()?, &line)?,
                    "genus" => set(&mut c.genus, line.u64()?, &line)?,
                    "characteristic" => set(&mut c.characteristic, line.u64()?, &line)?,
                    "h1_coarse" => set(&mut c.h1_coarse, line.factors()?, &line)?,
                    "h1_stack" => set(&mut c.h1_stack, line.factors()?, &line)?,
                    _ => return Err(unknown_key(&line, "curve")),
                }
            }
            Section::Gerbe => match key {
                "r" => {
                    let v = line.u64()?;
                    if v == 0 {
                        return Err(line.error("r must be positive"));
                    }
                    set(&mut r, v, &line)?
                }
                _ => return Err(unknown_key(&line, "gerbe")),
            },
            Section::Point(p) => {
                let pt = &mut points[p];
                match key {
                    "group" => set(&mut pt.group, value.parse::<GroupSpec>().map_err(|e| line.error(e))?, &line)?,
                    "singular" => set(&mut pt.singular, line.bool()?, &line)?,
                    "extension" => {
                        set(&mut pt.extension, value.parse::<ExtensionSpec>().map_err(|e| line.error(e))?, &line)?
                    }
                    _ => return Err(unknown_key(&line, "point")),
                }
            }
        }
    }

    let end = text.lines().count() + 1;
    let c = curve.ok_or_else(|| syntax(end, 1, "missing [curve] section"))?;
    let missing = |what: &str, line: usize| syntax(line, 1, format!("missing required key `{what}`"));
    let curve = CurveSection {
        smooth: c.smooth.ok_or_else(|| missing("smooth", curve_line))?,
        proper: c.proper.ok_or_else(|| missing("proper", curve_line))?,
        connected: c.connected.unwrap_or(true),
        genus: c.genus,
        characteristic: c.characteristic.unwrap_or(0),
        h1_coarse: c.h1_coarse,
        h1_stack: c.h1_stack,
    };
    if !gerbe_seen {
        return Err(syntax(end, 1, "missing [gerbe] section"));
    }
    let r = r.ok_or_else(|| syntax(end, 1, "missing required key `r` in [gerbe]"))?;
    let points = points
        .into_iter()
        .map(|p| {
            Ok(PointSection {
                group: p.group.ok_or_else(|| missing("group", p.line))?,
                singular: p.singular.unwrap_or(false),
                extension: p.extension.unwrap_or(ExtensionSpec::Split),
                name: p.name,
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(InputDocument { curve, r, points })
}

fn unknown_key(line: &Line, section: &str) -> CliError {
    CliError::Syntax {
        line: line.number,
        column: line.key_col,
        key: Some(line.key.to_string()),
        message: format!("unknown key in [{section}]"),
    }
}

fn factors_text(f: &[u64]) -> String {
    if f.is_empty() {
        "0".into()
    } else {
        f.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
    }
}

impl fmt::Display for InputDocument {
    /// Canonical text form; parsing it gives back the same document.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.curve;
        let mut s = String::new();
        writeln!(s, "[curve]")?;
        writeln!(s, "smooth={}", c.smooth)?;
        writeln!(s, "proper={}", c.proper)?;
        writeln!(s, "connected={}", c.connected)?;
        if let Some(g) = c.genus {
            writeln!(s, "genus={g}")?;
        }
        writeln!(s, "characteristic={}", c.characteristic)?;
        if let Some(h) = &c.h1_coarse {
            writeln!(s, "h1_coarse={}", factors_text(h))?;
        }
        if let Some(h) = &c.h1_stack {
            writeln!(s, "h1_stack={}", factors_text(h))?;
        }
        writeln!(s, "\n[gerbe]\nr={}", self.r)?;
        for p in &self.points {
            writeln!(s, "\n[point.{}]", p.name)?;
            writeln!(s, "group={}", p.group)?;
            writeln!(s, "singular={}", p.singular)?;
            writeln!(s, "extension={}", p.extension)?;
        }
        f.write_str(&s)
    }
}

fn factors_group(f: &[u64]) -> FinAbGroup {
    FinAbGroup::from_u64_orders(f)
}

impl InputDocument {
    /// Builds and validates the curve. Relative paths are resolved against
    /// `base`; `characteristic` overrides the document's value.
    pub fn resolve(&self, base: &Path, characteristic: Option<u64>) -> Result<CurveSpec, CliError> {
        let mut points = Vec::with_capacity(self.points.len());
        for p in &self.points {
            let context = format!("point {}", p.name);
            let group = p.group.build(base).map_err(|e| match e {
                CliError::Core(source) => CliError::Semantic { context: context.clone(), source },
                other => other,
            })?;
            let extension = match &p.extension {
                ExtensionSpec::Split => PointExtension::Split,
                ExtensionSpec::Cocycle(path) => {
                    PointExtension::Cocycle(load_cocycle(&base.join(path), &group, self.r).map_err(|e| match e {
                        CliError::Core(source) => CliError::Semantic { context: context.clone(), source },
                        other => other,
                    })?)
                }
            };
            points.push(StabilizerPoint { name: p.name.clone(), group, singular: p.singular, extension });
        }
        let c = &self.curve;
        let curve = CurveSpec {
            smooth: c.smooth,
            proper: c.proper,
            connected: c.connected,
            genus: c.genus,
            characteristic: characteristic.unwrap_or(c.characteristic),
            points,
            h1_coarse: c.h1_coarse.as_deref().map(factors_group),
            h1_stack: c.h1_stack.as_deref().map(factors_group),
        };
        curve.validate(Some(self.r)).map_err(|source| CliError::Semantic { context: "curve".into(), source })?;
        Ok(curve)
    }
}
