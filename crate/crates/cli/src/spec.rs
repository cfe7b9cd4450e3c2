//! Group and extension specs, and the table and cocycle files they refer
//! to.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use brauer_core::groups::{direct_product, Cocycle2, FiniteGroup};

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(u64),
    /// `product:<left>*<right>`. The left factor is never itself a product,
    /// so the text form splits at the first `*`.
    Product(Box<GroupSpec>, Box<GroupSpec>),
    Semidirect {
        n: u64,
        a: u64,
    },
    Table(PathBuf),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExtensionSpec {
    Split,
    Cocycle(PathBuf),
}

fn number(s: &str, what: &str) -> Result<u64, String> {
    s.parse::<u64>().map_err(|_| format!("expected a non-negative integer for {what}, found {s:?}"))
}

impl FromStr for GroupSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (kind, rest) = s.split_once(':').ok_or_else(|| format!("group spec {s:?} has no kind prefix"))?;
        match kind {
            "cyclic" => {
                let n = number(rest, "the cyclic order")?;
                if n == 0 {
                    return Err("cyclic order must be positive".into());
                }
                Ok(GroupSpec::Cyclic(n))
            }
            "product" => {
                let (left, right) = rest
                    .split_once('*')
                    .ok_or_else(|| format!("product spec {s:?} needs two factors joined by '*'"))?;
                let left: GroupSpec = left.parse()?;
                let right: GroupSpec = right.parse()?;
                Ok(GroupSpec::Product(Box::new(left), Box::new(right)))
            }
            "semidirect_z2" => {
                let (n, a) = rest.split_once(':').ok_or_else(|| format!("semidirect spec {s:?} needs n and a"))?;
                Ok(GroupSpec::Semidirect { n: number(n, "n")?, a: number(a, "a")? })
            }
            "table" => {
                if rest.is_empty() {
                    return Err("table spec needs a path".into());
                }
                Ok(GroupSpec::Table(PathBuf::from(rest)))
            }
            other => Err(format!("unknown group kind {other:?}")),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "cyclic:{n}"),
            GroupSpec::Product(a, b) => write!(f, "product:{a}*{b}"),
            GroupSpec::Semidirect { n, a } => write!(f, "semidirect_z2:{n}:{a}"),
            GroupSpec::Table(p) => write!(f, "table:{}", p.display()),
        }
    }
}

impl FromStr for ExtensionSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "split" {
            return Ok(ExtensionSpec::Split);
        }
        match s.strip_prefix("cocycle:") {
            Some(p) if !p.is_empty() => Ok(ExtensionSpec::Cocycle(PathBuf::from(p))),
            _ => Err(format!("extension spec must be `split` or `cocycle:<path>`, found {s:?}")),
        }
    }
}

impl fmt::Display for ExtensionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtensionSpec::Split => write!(f, "split"),
            ExtensionSpec::Cocycle(p) => write!(f, "cocycle:{}", p.display()),
        }
    }
}

impl GroupSpec {
    /// Files the spec refers to.
    pub fn paths(&self) -> Vec<&Path> {
        match self {
            GroupSpec::Table(p) => vec![p.as_path()],
            GroupSpec::Product(a, b) => {
                let mut v = a.paths();
                v.extend(b.paths());
                v
            }
            _ => Vec::new(),
        }
    }

    /// Builds the group; relative table paths are resolved against `base`.
    pub fn build(&self, base: &Path) -> Result<FiniteGroup, CliError> {
        match self {
            GroupSpec::Cyclic(n) => Ok(FiniteGroup::cyclic(*n as usize)),
            GroupSpec::Product(a, b) => Ok(direct_product(&a.build(base)?, &b.build(base)?).group),
            GroupSpec::Semidirect { n, a } => Ok(FiniteGroup::semidirect_cyclic_by_z2(*n, *a)?),
            GroupSpec::Table(p) => {
                let path = base.join(p);
                let rows = read_table(&path)?;
                let rows: Vec<Vec<usize>> =
                    rows.into_iter().map(|r| r.into_iter().map(|x| x as usize).collect()).collect();
                Ok(FiniteGroup::from_table(&rows)?)
            }
        }
    }
}

/// Reads a whitespace-separated table of non-negative integers. Blank
/// lines and `#` comments are ignored.
pub fn read_table(path: &Path) -> Result<Vec<Vec<u64>>, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io { path: path.to_path_buf(), source: e })?;
    parse_table(&text).map_err(|(line, message)| CliError::File { path: path.to_path_buf(), line, message })
}

pub fn parse_table(text: &str) -> Result<Vec<Vec<u64>>, (usize, String)> {
    let mut rows = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let row = line
            .split_whitespace()
            .map(|t| t.parse::<u64>().map_err(|_| (i + 1, format!("not a non-negative integer: {t:?}"))))
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    Ok(rows)
}

/// Loads a cocycle file: an `|G| x |G|` table of residues mod `r`, rows
/// and columns in the group's element order.
pub fn load_cocycle(path: &Path, group: &FiniteGroup, r: u64) -> Result<Cocycle2, CliError> {
    let rows = read_table(path)?;
    Ok(Cocycle2::new(group.clone(), r, rows)?)
}
