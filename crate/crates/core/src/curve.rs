//! Stacky curves with finitely many stabilizer points, `mu_r`-gerbes over
//! them, and the exact sequence
//!
//! `sum_i H^2(G_i, k^x) -> H^2(gerbe, G_m) -> H^1(curve, Z/r)`
//!
//! assembled from per-stabilizer data.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::abelian::{cokernel, hom_to_cyclic, FinAbGroup, Int, IntegerMatrix};
use crate::cohomology::{cohomology, Coefficients};
use crate::error::{Error, Limits, Result};
use crate::fiber::{analyze_fiber, FiberDiagnostics};
use crate::groups::{CentralExtension, Cocycle2, FiniteGroup};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum PointExtension {
    Split,
    Cocycle(Cocycle2),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StabilizerPoint {
    pub name: String,
    pub group: FiniteGroup,
    pub singular: bool,
    pub extension: PointExtension,
}

impl StabilizerPoint {
    pub fn extension_for(&self, r: u64) -> Result<CentralExtension> {
        match &self.extension {
            PointExtension::Split => Ok(CentralExtension::split(&self.group, r)),
            PointExtension::Cocycle(c) => {
                if c.modulus() != r {
                    return Err(Error::InvalidCocycle(format!(
                        "point {}: cocycle is taken mod {} but the gerbe has r = {r}",
                        self.name,
                        c.modulus()
                    )));
                }
                if c.base().table_rows() != self.group.table_rows() {
                    return Err(Error::InvalidCocycle(format!("point {}: cocycle is on a different group", self.name)));
                }
                CentralExtension::new(c.clone())
            }
        }
    }
}

/// A connected reduced stacky curve, described by its coarse space and its
/// points with non-trivial stabilizers.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CurveSpec {
    pub smooth: bool,
    pub proper: bool,
    pub connected: bool,
    /// Genus of the coarse space; needed when the curve is smooth and
    /// proper.
    pub genus: Option<u64>,
    /// Zero or a prime.
    pub characteristic: u64,
    pub points: Vec<StabilizerPoint>,
    /// `H^1(C, Z/r)` of the coarse space.
    pub h1_coarse: Option<FinAbGroup>,
    /// `H^1(curve, Z/r)` of the stack.
    pub h1_stack: Option<FinAbGroup>,
}

impl CurveSpec {
    pub fn characteristic(&self) -> Option<u64> {
        (self.characteristic > 1).then_some(self.characteristic)
    }

    /// Structural checks, plus tameness against `r` when given.
    pub fn validate(&self, r: Option<u64>) -> Result<()> {
        if !self.connected {
            return Err(Error::InvalidCurve("disconnected curves are not supported".into()));
        }
        if self.smooth && self.proper && self.genus.is_none() {
            return Err(Error::InvalidCurve("a smooth proper curve needs its coarse genus".into()));
        }
        let p = self.characteristic;
        if p == 1 {
            return Err(Error::InvalidCurve("characteristic must be 0 or a prime".into()));
        }
        for (i, pt) in self.points.iter().enumerate() {
            if self.points[..i].iter().any(|q| q.name == pt.name) {
                return Err(Error::InvalidCurve(format!("duplicate point name {}", pt.name)));
            }
            if self.smooth && pt.singular {
                return Err(Error::InvalidCurve(format!("point {} is singular on a smooth curve", pt.name)));
            }
            if !pt.singular && !pt.group.is_cyclic() {
                return Err(Error::InvalidCurve(format!("non-cyclic stabilizer at smooth point {}", pt.name)));
            }
            if pt.group.order() == 1 {
                return Err(Error::InvalidCurve(format!("point {} has trivial stabilizer", pt.name)));
            }
            if p > 1 && pt.group.order() as u64 % p == 0 {
                return Err(Error::Tameness { characteristic: p, order: pt.group.order() as u64 });
            }
        }
        if let Some(r) = r {
            if r == 0 {
                return Err(Error::InvalidCurve("gerbe order r must be positive".into()));
            }
            if p > 1 && r % p == 0 {
                return Err(Error::Tameness { characteristic: p, order: r });
            }
        }
        Ok(())
    }
}

/// `H^k(curve, G_m) = sum_i H^k(G_i, k^x)` for `k >= 2`.
pub fn stacky_units_cohomology(c: &CurveSpec, k: usize, limits: &Limits) -> Result<FinAbGroup> {
    if k < 2 {
        return Err(Error::DimensionMismatch("stacky units cohomology is computed for k >= 2".into()));
    }
    c.validate(None)?;
    let mut parts = Vec::with_capacity(c.points.len());
    for pt in &c.points {
        parts.push(cohomology(&pt.group, k, Coefficients::Units, limits)?.value().clone());
    }
    Ok(FinAbGroup::sum_all(&parts))
}

/// `Hom(A, Z/r)` for the orbifold abelianization
/// `A = Z^{2g} + <gamma_i | n_i gamma_i = 0, sum gamma_i = 0>`.
pub fn orbifold_h1(genus: u64, orders: &[u64], r: u64, limits: &Limits) -> Result<FinAbGroup> {
    let g2 = 2 * genus as usize;
    let n = orders.len();
    let mut trip = Vec::new();
    for (i, &o) in orders.iter().enumerate() {
        trip.push((g2 + i, i, Int::from(o)));
    }
    if n > 0 {
        for i in 0..n {
            trip.push((g2 + i, n, Int::ONE));
        }
    }
    let cols = if n > 0 { n + 1 } else { 0 };
    let a = cokernel(&IntegerMatrix::from_triplets(g2 + n, cols, trip), limits)?;
    Ok(hom_to_cyclic(&a, r))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum H1Source {
    /// Computed from genus and stabilizer orders.
    Derived,
    /// Supplied with the curve.
    Supplied,
}

impl fmt::Display for H1Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            H1Source::Derived => "derived",
            H1Source::Supplied => "supplied",
        })
    }
}

/// `H^1(curve, Z/r)` and where it came from.
pub fn h1_stack_zr_with_source(c: &CurveSpec, r: u64, limits: &Limits) -> Result<(FinAbGroup, H1Source)> {
    if c.smooth && c.proper {
        let genus =
            c.genus.ok_or_else(|| Error::InvalidCurve("a smooth proper curve needs its coarse genus".into()))?;
        let orders: Vec<u64> = c.points.iter().map(|p| p.group.order() as u64).collect();
        let h = orbifold_h1(genus, &orders, r, limits)?;
        if let Some(given) = &c.h1_stack {
            if given != &h {
                return Err(Error::InvalidCurve(format!(
                    "supplied h1_stack {given} contradicts the computed value {h}"
                )));
            }
        }
        return Ok((h, H1Source::Derived));
    }
    match &c.h1_stack {
        Some(h) => Ok((h.clone(), H1Source::Supplied)),
        None => Err(Error::MissingH1("H^1(curve, Z/r) must be supplied for singular or non-proper curves".into())),
    }
}

pub fn h1_stack_zr(c: &CurveSpec, r: u64, limits: &Limits) -> Result<FinAbGroup> {
    Ok(h1_stack_zr_with_source(c, r, limits)?.0)
}

/// `H^1(C, Z/r)` of the coarse space, when known.
pub fn h1_coarse_zr(c: &CurveSpec, r: u64) -> Option<(FinAbGroup, H1Source)> {
    if let Some(h) = &c.h1_coarse {
        return Some((h.clone(), H1Source::Supplied));
    }
    match (c.smooth && c.proper, c.genus) {
        (true, Some(g)) => Some((hom_to_cyclic(&FinAbGroup::free(2 * g as usize), r), H1Source::Derived)),
        _ => None,
    }
}

/// `sum_i H^2(G_i, Z/r)`, the possible local gerbe data.
pub fn local_gerbe_classification(c: &CurveSpec, r: u64, limits: &Limits) -> Result<FinAbGroup> {
    let mut parts = Vec::with_capacity(c.points.len());
    for pt in &c.points {
        parts.push(cohomology(&pt.group, 2, Coefficients::Mod(r), limits)?.value().clone());
    }
    Ok(FinAbGroup::sum_all(&parts))
}

/// Presentation of `sum_i H^2(G_i, k^x)` on the concatenated canonical
/// generators of the summands.
fn left_presentation(parts: &[(&FinAbGroup, &[Int])]) -> (usize, Vec<(usize, usize, Int)>, Vec<Int>) {
    let total: usize = parts.iter().map(|(g, _)| g.ngens()).sum();
    let mut rel = Vec::new();
    let mut tuple = vec![Int::ZERO; total];
    let mut off = 0;
    let mut col = 0;
    for (g, class) in parts {
        for i in 0..g.ngens() {
            let d = g.gen_order(i);
            if !d.is_zero() {
                rel.push((off + i, col, d));
                col += 1;
            }
            tuple[off + i] = class[i].clone();
        }
        off += g.ngens();
    }
    (col, rel, tuple)
}

/// Kernel of the left map: the cyclic subgroup generated by the tuple of
/// Bockstein classes, and the resulting image `left_term / left_kernel`.
fn left_kernel_and_image(parts: &[(&FinAbGroup, &[Int])], limits: &Limits) -> Result<(FinAbGroup, FinAbGroup)> {
    let mut order = Int::ONE;
    for (g, class) in parts {
        let o = g
            .element_order(class)
            .ok_or_else(|| Error::InvariantViolation("Bockstein class has infinite order".into()))?;
        order = order.lcm(&o);
    }
    let kernel = FinAbGroup::from_orders(&[order]);
    let (ncols, mut rel, tuple) = left_presentation(parts);
    for (i, x) in tuple.iter().enumerate() {
        if !x.is_zero() {
            rel.push((i, ncols, x.clone()));
        }
    }
    let image = cokernel(&IntegerMatrix::from_triplets(tuple.len(), ncols + 1, rel), limits)?;
    Ok((kernel, image))
}

/// `left_kernel` for a curve and gerbe order.
pub fn left_kernel(c: &CurveSpec, r: u64, limits: &Limits) -> Result<FinAbGroup> {
    c.validate(Some(r))?;
    let mut classes = Vec::with_capacity(c.points.len());
    for pt in &c.points {
        let e = pt.extension_for(r)?;
        let h = cohomology(e.base(), 2, Coefficients::Units, limits)?;
        let x = crate::cohomology::bockstein(&h, r, &e.cocycle().normalized_values())?;
        classes.push((h.value().clone(), x));
    }
    let parts: Vec<(&FinAbGroup, &[Int])> = classes.iter().map(|(g, x)| (g, &x[..])).collect();
    Ok(left_kernel_and_image(&parts, limits)?.0)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Splitting {
    /// Every stabilizer order is prime to `r`.
    Coprime,
    /// Every fiber has a section of the degree-2 inflation.
    Sections,
    /// Smooth curve with every degree-3 inflation injective: the left term
    /// vanishes and the right map is onto.
    SmoothShortcut,
    Unknown,
}

impl fmt::Display for Splitting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Splitting::Coprime => "coprime",
            Splitting::Sections => "sections",
            Splitting::SmoothShortcut => "smooth-shortcut",
            Splitting::Unknown => "unknown",
        })
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ReportPath {
    SmoothShortcut,
    CoprimeShortcut,
    General,
}

impl fmt::Display for ReportPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReportPath::SmoothShortcut => "smooth-shortcut",
            ReportPath::CoprimeShortcut => "coprime-shortcut",
            ReportPath::General => "general",
        })
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum BrauerResult {
    Determined(FinAbGroup),
    /// The Brauer group contains `subgroup`, and its quotient by it is a
    /// subgroup of `quotient_bound` (all of it when the sequence is known
    /// to be right exact).
    Partial {
        subgroup: FinAbGroup,
        quotient_bound: FinAbGroup,
    },
}

impl BrauerResult {
    pub fn is_determined(&self) -> bool {
        matches!(self, BrauerResult::Determined(_))
    }
}

#[derive(Clone, Debug)]
pub struct FiberReport {
    pub name: String,
    pub diagnostics: FiberDiagnostics,
}

#[derive(Clone, Debug)]
pub struct BrauerReport {
    pub r: u64,
    /// `sum_i H^2(G_i, k^x)`.
    pub left_term: FinAbGroup,
    pub left_kernel: FinAbGroup,
    pub left_image: FinAbGroup,
    /// `H^1(curve, Z/r)`.
    pub right_term: FinAbGroup,
    pub right_term_source: H1Source,
    /// The `H^1` summand used by the coprime splitting, when that path ran.
    pub coarse_h1: Option<(FinAbGroup, H1Source)>,
    pub fibers: Vec<FiberReport>,
    pub is_root_gerbe: bool,
    /// `None` when some fiber exceeded the resource cap.
    pub right_exact: Option<bool>,
    pub splitting: Splitting,
    pub path: ReportPath,
    pub result: BrauerResult,
}

impl BrauerReport {
    /// The consistency conditions every report must satisfy.
    pub fn check_invariants(&self) -> Result<()> {
        let all_root = self.fibers.iter().all(|f| f.diagnostics.is_root_gerbe);
        if self.is_root_gerbe != all_root || self.is_root_gerbe != self.left_kernel.is_trivial() {
            return Err(Error::InvariantViolation("root-gerbe flags disagree".into()));
        }
        if self.right_exact != conjunction(self.fibers.iter().map(|f| f.diagnostics.h3_inflation_injective)) {
            return Err(Error::InvariantViolation("right exactness is not the conjunction of fiber flags".into()));
        }
        for f in &self.fibers {
            let d = &f.diagnostics;
            if d.root_gerbe_via_inflation.is_some_and(|v| v != d.is_root_gerbe) {
                return Err(Error::InvariantViolation(format!("root-gerbe detectors disagree at {}", f.name)));
            }
            if d.h2_section_exists == Some(true) && d.root_gerbe_via_inflation == Some(false) {
                return Err(Error::InvariantViolation(format!("split injection is not injective at {}", f.name)));
            }
        }
        Ok(())
    }
}

/// `Some(false)` if any flag is false, `None` if any is unknown, else
/// `Some(true)`.
fn conjunction(flags: impl Iterator<Item = Option<bool>>) -> Option<bool> {
    let mut unknown = false;
    for f in flags {
        match f {
            Some(false) => return Some(false),
            None => unknown = true,
            Some(true) => {}
        }
    }
    if unknown {
        None
    } else {
        Some(true)
    }
}

/// Options for [`brauer_report`].
#[derive(Clone, Copy, Debug, Default)]
pub struct ReportOptions {
    /// Skip the smooth and coprime shortcuts.
    pub general_only: bool,
}

pub fn brauer_report(c: &CurveSpec, r: u64, limits: &Limits) -> Result<BrauerReport> {
    brauer_report_with(c, r, ReportOptions::default(), limits)
}

pub fn brauer_report_with(c: &CurveSpec, r: u64, opts: ReportOptions, limits: &Limits) -> Result<BrauerReport> {
    c.validate(Some(r))?;
    let (right_term, right_term_source) = h1_stack_zr_with_source(c, r, limits)?;
    let mut fibers = Vec::with_capacity(c.points.len());
    for pt in &c.points {
        let e = pt.extension_for(r)?;
        fibers.push(FiberReport { name: pt.name.clone(), diagnostics: analyze_fiber(&e, c.characteristic(), limits)? });
    }
    let diags: Vec<FiberDiagnostics> = fibers.iter().map(|f| f.diagnostics.clone()).collect();
    let left_term = FinAbGroup::sum_all(diags.iter().map(|d| &d.h2_units_base));
    let parts: Vec<(&FinAbGroup, &[Int])> = diags.iter().map(|d| (&d.h2_units_base, &d.bockstein_class[..])).collect();
    let (left_kernel, left_image) = left_kernel_and_image(&parts, limits)?;
    let is_root_gerbe = diags.iter().all(|d| d.is_root_gerbe);
    let right_exact = conjunction(diags.iter().map(|d| d.h3_inflation_injective));
    let sections = conjunction(diags.iter().map(|d| d.h2_section_exists));
    let coprime = c.points.iter().all(|p| num_integer::gcd(p.group.order() as u64, r) == 1);

    let mut report = BrauerReport {
        r,
        left_term: left_term.clone(),
        left_kernel,
        left_image: left_image.clone(),
        right_term: right_term.clone(),
        right_term_source,
        coarse_h1: None,
        fibers,
        is_root_gerbe,
        right_exact,
        splitting: Splitting::Unknown,
        path: ReportPath::General,
        result: BrauerResult::Partial { subgroup: left_image.clone(), quotient_bound: right_term.clone() },
    };
    report.check_invariants()?;

    // The smooth shortcut only applies once every degree-3 inflation is
    // known to be injective: cyclic stabilizers alone do not guarantee it.
    if !opts.general_only && c.smooth && right_exact == Some(true) {
        if !left_term.is_trivial() {
            return Err(Error::InvariantViolation("smooth curve with nonzero stacky Brauer group".into()));
        }
        report.splitting = Splitting::SmoothShortcut;
        report.path = ReportPath::SmoothShortcut;
        report.result = BrauerResult::Determined(right_term);
        return Ok(report);
    }
    if !opts.general_only && coprime {
        let agrees = |v: Option<bool>| v != Some(false);
        if !is_root_gerbe || !agrees(right_exact) || !agrees(sections) {
            return Err(Error::InvariantViolation("coprime stabilizers but a fiber test failed".into()));
        }
        let (h1, src) = match h1_coarse_zr(c, r) {
            Some(x) => x,
            // With coprime stabilizers the stack and the coarse space have
            // the same H^1 with Z/r coefficients.
            None => (right_term.clone(), right_term_source),
        };
        report.result = BrauerResult::Determined(h1.direct_sum(&left_term));
        report.coarse_h1 = Some((h1, src));
        report.splitting = Splitting::Coprime;
        report.path = ReportPath::CoprimeShortcut;
        return Ok(report);
    }
    if is_root_gerbe && right_exact == Some(true) && sections == Some(true) {
        report.splitting = Splitting::Sections;
        report.result = BrauerResult::Determined(left_term.direct_sum(&right_term));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::direct_product;
    use alloc::string::ToString;

    fn lim() -> Limits {
        Limits::default()
    }

    fn point(name: &str, group: FiniteGroup, singular: bool, extension: PointExtension) -> StabilizerPoint {
        StabilizerPoint { name: name.to_string(), group, singular, extension }
    }

    fn smooth_curve(genus: u64, orders: &[usize]) -> CurveSpec {
        CurveSpec {
            smooth: true,
            proper: true,
            connected: true,
            genus: Some(genus),
            characteristic: 0,
            points: orders
                .iter()
                .enumerate()
                .map(|(i, &n)| point(&format!("p{i}"), FiniteGroup::cyclic(n), false, PointExtension::Split))
                .collect(),
            h1_coarse: None,
            h1_stack: None,
        }
    }

    fn node(group: FiniteGroup, extension: PointExtension, h1: FinAbGroup) -> CurveSpec {
        CurveSpec {
            smooth: false,
            proper: true,
            connected: true,
            genus: Some(0),
            characteristic: 0,
            points: vec![point("node", group, true, extension)],
            h1_coarse: None,
            h1_stack: Some(h1),
        }
    }

    #[test]
    fn orbifold_h1_examples() {
        assert_eq!(orbifold_h1(2, &[], 3, &lim()).unwrap(), FinAbGroup::from_u64_orders(&[3, 3, 3, 3]));
        assert!(orbifold_h1(0, &[2, 2], 3, &lim()).unwrap().is_trivial());
        assert_eq!(orbifold_h1(0, &[4, 4], 2, &lim()).unwrap(), FinAbGroup::cyclic(2));
        assert_eq!(orbifold_h1(2, &[3, 3], 2, &lim()).unwrap(), FinAbGroup::from_u64_orders(&[2, 2, 2, 2]));
    }

    #[test]
    fn smooth_genus_two() {
        let rep = brauer_report(&smooth_curve(2, &[3, 3]), 2, &lim()).unwrap();
        assert_eq!(rep.result, BrauerResult::Determined(FinAbGroup::from_u64_orders(&[2, 2, 2, 2])));
        assert_eq!(rep.path, ReportPath::SmoothShortcut);
    }

    #[test]
    fn dihedral_node() {
        let d8 = FiniteGroup::semidirect_cyclic_by_z2(4, 3).unwrap();
        let c = node(d8, PointExtension::Split, FinAbGroup::trivial());
        assert_eq!(stacky_units_cohomology(&c, 2, &lim()).unwrap(), FinAbGroup::cyclic(2));
        let rep = brauer_report(&c, 2, &lim()).unwrap();
        assert_eq!(rep.result, BrauerResult::Determined(FinAbGroup::cyclic(2)));
        assert_eq!(rep.splitting, Splitting::Sections);
    }

    #[test]
    fn quaternion_node_is_partial() {
        let z2 = FiniteGroup::cyclic(2);
        let v4 = direct_product(&z2, &z2).group;
        let c = node(v4, PointExtension::Cocycle(Cocycle2::quaternion()), FinAbGroup::trivial());
        assert_eq!(left_kernel(&c, 2, &lim()).unwrap(), FinAbGroup::cyclic(2));
        let rep = brauer_report(&c, 2, &lim()).unwrap();
        assert!(!rep.is_root_gerbe);
        assert!(rep.left_image.is_trivial());
        assert!(!rep.result.is_determined());
        assert_eq!(local_gerbe_classification(&c, 2, &lim()).unwrap(), FinAbGroup::from_u64_orders(&[2, 2, 2]));
    }

    #[test]
    fn missing_h1_and_validation() {
        let d8 = FiniteGroup::semidirect_cyclic_by_z2(4, 3).unwrap();
        let mut c = node(d8, PointExtension::Split, FinAbGroup::trivial());
        c.h1_stack = None;
        assert_eq!(brauer_report(&c, 2, &lim()).unwrap_err().code(), "missing-h1");
        c.points[0].singular = false;
        assert_eq!(c.validate(None).unwrap_err().code(), "invalid-curve");
        let mut t = smooth_curve(1, &[4]);
        t.characteristic = 2;
        assert_eq!(t.validate(Some(3)).unwrap_err().code(), "tameness");
    }

    #[test]
    fn empty_curve_trivial_gerbe() {
        let rep = brauer_report(&smooth_curve(0, &[]), 1, &lim()).unwrap();
        assert_eq!(rep.result, BrauerResult::Determined(FinAbGroup::trivial()));
    }

    #[test]
    fn nonsplit_cyclic_fiber_blocks_smooth_shortcut() {
        let z2 = FiniteGroup::cyclic(2);
        let c4 = Cocycle2::new(z2.clone(), 2, vec![vec![0, 0], vec![0, 1]]).unwrap();
        let mut c = smooth_curve(1, &[]);
        c.points.push(point("p", z2, false, PointExtension::Cocycle(c4)));
        let rep = brauer_report(&c, 2, &lim()).unwrap();
        assert_eq!(rep.right_exact, Some(false));
        assert_eq!(rep.path, ReportPath::General);
        assert_eq!(
            rep.result,
            BrauerResult::Partial { subgroup: FinAbGroup::trivial(), quotient_bound: rep.right_term.clone() }
        );
    }
}
