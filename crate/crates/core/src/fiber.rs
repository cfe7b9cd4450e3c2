//! Diagnostics for one stabilizer: the central extension
//! `0 -> Z/r -> E -> G -> 0` seen as the fiber `BE -> BG` of a gerbe.

use alloc::format;
use alloc::vec::Vec;

use crate::abelian::{FinAbGroup, Int};
use crate::cohomology::{bockstein, check_tame, cohomology, induced_on_cohomology, Coefficients, CohomologyGroup};
use crate::error::{Error, Limits, Result};
use crate::groups::CentralExtension;

#[derive(Clone, Debug)]
pub struct FiberDiagnostics {
    pub extension: CentralExtension,
    /// `H^2(G, k^x)`.
    pub h2_units_base: FinAbGroup,
    /// `H^2(E, k^x)`; `None` when `E` is too large for the resource cap.
    pub h2_units_total: Option<FinAbGroup>,
    /// Coordinates of the Bockstein of the extension class in
    /// `h2_units_base`.
    pub bockstein_class: Vec<Int>,
    pub is_root_gerbe: bool,
    pub root_gerbe_via_inflation: Option<bool>,
    pub h3_inflation_injective: Option<bool>,
    /// `Some(false)` only means no splitting was found, never that the
    /// global sequence is non-split.
    pub h2_section_exists: Option<bool>,
}

impl FiberDiagnostics {
    /// Every flag was computed within the resource cap.
    pub fn is_complete(&self) -> bool {
        self.root_gerbe_via_inflation.is_some()
            && self.h3_inflation_injective.is_some()
            && self.h2_section_exists.is_some()
    }
}

fn tameness(e: &CentralExtension, characteristic: Option<u64>) -> Result<()> {
    check_tame(e.base(), characteristic)?;
    check_tame(e.total(), characteristic)
}

fn units(e: &CentralExtension, n: usize, limits: &Limits) -> Result<(CohomologyGroup, CohomologyGroup)> {
    let base = cohomology(e.base(), n, Coefficients::Units, limits)?;
    let total = cohomology(e.total(), n, Coefficients::Units, limits)?;
    Ok((base, total))
}

fn capped<T>(r: Result<T>) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::ResourceCap { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Whether the pushforward of the extension class to `H^2(G, k^x)`
/// vanishes.
pub fn fiber_is_root_gerbe(e: &CentralExtension, limits: &Limits) -> Result<bool> {
    let h = cohomology(e.base(), 2, Coefficients::Units, limits)?;
    let x = bockstein(&h, e.modulus(), &e.cocycle().normalized_values())?;
    Ok(h.value().is_zero_element(&x))
}

/// Whether inflation `H^2(G, k^x) -> H^2(E, k^x)` is injective.
pub fn fiber_is_root_gerbe_via_inflation(e: &CentralExtension, limits: &Limits) -> Result<bool> {
    let (base, total) = units(e, 2, limits)?;
    induced_on_cohomology(e.projection(), &base, &total, limits)?.is_injective(limits)
}

/// Whether inflation `H^3(G, k^x) -> H^3(E, k^x)` is injective.
pub fn h3_inflation_injective(e: &CentralExtension, limits: &Limits) -> Result<bool> {
    let (base, total) = units(e, 3, limits)?;
    induced_on_cohomology(e.projection(), &base, &total, limits)?.is_injective(limits)
}

/// Whether inflation `H^2(G, k^x) -> H^2(E, k^x)` is a split injection.
pub fn h2_section_exists(e: &CentralExtension, limits: &Limits) -> Result<bool> {
    let (base, total) = units(e, 2, limits)?;
    induced_on_cohomology(e.projection(), &base, &total, limits)?.is_split_injection(limits)
}

/// Runs both root-gerbe detectors and the two inflation tests. Checks that
/// involve `E` and exceed the resource cap are left undetermined; the
/// Bockstein route only needs `G`, so its failures are errors.
pub fn analyze_fiber(e: &CentralExtension, characteristic: Option<u64>, limits: &Limits) -> Result<FiberDiagnostics> {
    tameness(e, characteristic)?;
    let base2 = cohomology(e.base(), 2, Coefficients::Units, limits)?;
    let bockstein_class = bockstein(&base2, e.modulus(), &e.cocycle().normalized_values())?;
    let is_root_gerbe = base2.value().is_zero_element(&bockstein_class);

    let inf2 = capped(
        cohomology(e.total(), 2, Coefficients::Units, limits)
            .and_then(|total| Ok((induced_on_cohomology(e.projection(), &base2, &total, limits)?, total))),
    )?;
    let (h2_units_total, root_gerbe_via_inflation, h2_section_exists) = match inf2 {
        Some((map, total)) => {
            (Some(total.value().clone()), Some(map.is_injective(limits)?), Some(map.is_split_injection(limits)?))
        }
        None => (None, None, None),
    };
    if let Some(via) = root_gerbe_via_inflation {
        if via != is_root_gerbe {
            return Err(Error::InvariantViolation(format!(
                "Bockstein test says root gerbe = {is_root_gerbe} but inflation test says {via}"
            )));
        }
    }
    let h3_inflation_injective = capped(h3_inflation_injective(e, limits))?;
    Ok(FiberDiagnostics {
        extension: e.clone(),
        h2_units_base: base2.value().clone(),
        h2_units_total,
        bockstein_class,
        is_root_gerbe,
        root_gerbe_via_inflation,
        h3_inflation_injective,
        h2_section_exists,
    })
}
