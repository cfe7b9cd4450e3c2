//! Cohomology of finite groups with trivial coefficients, computed on the
//! normalized bar complex.
//!
//! A normalized `n`-cochain is a function on `n`-tuples of non-identity
//! elements. Tuples are indexed lexicographically by the positions of their
//! entries in `FiniteGroup::non_identity`, first entry most significant.
//! Coefficients `Z/m` are handled through the mapping cone of
//! multiplication by `m`, and `k^x` through `H^n(G, k^x) = H^{n+1}(G, Z)`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::abelian::{
    cone_differential, cone_homotopy, homology_at, homology_at_certified, induced_chain_map, AbGroupMap, FinAbGroup,
    Int, IntegerMatrix, Subquotient, TorsionCertificate,
};
use crate::error::{Error, Limits, Result};
use crate::groups::{Cocycle2, FiniteGroup, GroupHom};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Coefficients {
    Integers,
    Mod(u64),
    /// Multiplicative group of an algebraically closed field whose
    /// characteristic does not divide the group order.
    Units,
}

impl fmt::Display for Coefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficients::Integers => write!(f, "Z"),
            Coefficients::Mod(m) => write!(f, "Z/{m}"),
            Coefficients::Units => write!(f, "units"),
        }
    }
}

fn dim(k: usize, n: isize) -> usize {
    if n < 0 {
        0
    } else {
        k.pow(n as u32)
    }
}

fn checked_dim(k: usize, n: usize, limits: &Limits) -> Result<usize> {
    let d = (k as u64).checked_pow(n as u32).ok_or(Error::ResourceCap {
        what: "cochain dimension",
        requested: u64::MAX,
        limit: limits.max_entries,
    })?;
    limits.check("cochain dimension", d)?;
    Ok(d as usize)
}

/// Normalized bar differential `d: C^n -> C^{n+1}` with integer
/// coefficients:
///
/// `df(g_1..g_{n+1}) = f(g_2..) + sum_i (-1)^i f(..g_i g_{i+1}..) + (-1)^{n+1} f(..g_n)`,
///
/// with faces containing the identity dropped.
pub fn bar_differential(g: &FiniteGroup, n: usize, limits: &Limits) -> Result<IntegerMatrix> {
    let k = g.order() - 1;
    let rows = checked_dim(k, n + 1, limits)?;
    let cols = dim(k, n as isize);
    limits.check("bar differential entries", (rows as u64).saturating_mul(n as u64 + 2))?;
    let elems = g.non_identity();
    let mut pos = vec![usize::MAX; g.order()];
    for (i, &x) in elems.iter().enumerate() {
        pos[x] = i;
    }
    let index = |digits: &mut dyn Iterator<Item = usize>| digits.fold(0usize, |acc, d| acc * k + d);
    let mut trip = Vec::with_capacity(rows * (n + 2));
    let mut digits = vec![0usize; n + 1];
    let one = Int::ONE;
    let minus = Int::from(-1);
    for r in 0..rows {
        trip.push((r, index(&mut digits[1..].iter().copied()), one.clone()));
        for i in 1..=n {
            let prod = g.mul(elems[digits[i - 1]], elems[digits[i]]);
            if prod == g.identity() {
                continue;
            }
            let merged = digits[..i - 1]
                .iter()
                .copied()
                .chain(core::iter::once(pos[prod]))
                .chain(digits[i + 1..].iter().copied());
            let c = index(&mut merged.into_iter());
            trip.push((r, c, if i % 2 == 0 { one.clone() } else { minus.clone() }));
        }
        let last = index(&mut digits[..n].iter().copied());
        trip.push((r, last, if (n + 1) % 2 == 0 { one.clone() } else { minus.clone() }));
        for d in digits.iter_mut().rev() {
            *d += 1;
            if *d < k {
                break;
            }
            *d = 0;
        }
    }
    Ok(IntegerMatrix::from_triplets(rows, cols, trip))
}

/// `H: C^n -> C^{n-1}`, `(Hf)(g_1..g_{n-1}) = (-1)^n sum_g f(g_1..g_{n-1}, g)`,
/// a null-homotopy of `|G| id` on the normalized complex in degrees `n >= 1`.
fn contracting_homotopy(k: usize, n: usize) -> IntegerMatrix {
    let cols = dim(k, n as isize);
    let rows = dim(k, n as isize - 1);
    let sign = if n % 2 == 0 { Int::ONE } else { Int::from(-1) };
    let t = (0..cols).map(|c| (c / k, c, sign.clone())).collect();
    IntegerMatrix::from_triplets(rows, cols, t)
}

fn differential_or_zero(g: &FiniteGroup, n: isize, limits: &Limits) -> Result<IntegerMatrix> {
    if n < 0 {
        Ok(IntegerMatrix::zero(dim(g.order() - 1, n + 1), 0))
    } else {
        bar_differential(g, n as usize, limits)
    }
}

/// The two differentials around one degree of the complex computing
/// `H^n(G, coeff)` (for `k^x`, the integral complex one degree up).
#[derive(Clone, Debug)]
pub struct CochainSlice {
    pub group: FiniteGroup,
    pub degree: usize,
    pub coefficients: Coefficients,
    pub d_out: IntegerMatrix,
    pub d_in: IntegerMatrix,
    certificate: Option<TorsionCertificate>,
    /// `d^n` on the plain cochains, kept for `Z/m` so that a mod-`m`
    /// cocycle can be turned into a cone cocycle.
    base_d: Option<IntegerMatrix>,
}

impl CochainSlice {
    pub fn new(g: &FiniteGroup, n: usize, coeff: Coefficients, limits: &Limits) -> Result<Self> {
        let k = g.order() - 1;
        let ni = n as isize;
        match coeff {
            Coefficients::Integers => {
                let d_out = bar_differential(g, n, limits)?;
                let d_in = differential_or_zero(g, ni - 1, limits)?;
                let certificate = (n >= 1).then(|| TorsionCertificate {
                    annihilator: Int::from(g.order()),
                    h_in: contracting_homotopy(k, n),
                    h_out: contracting_homotopy(k, n + 1),
                });
                Ok(CochainSlice {
                    group: g.clone(),
                    degree: n,
                    coefficients: coeff,
                    d_out,
                    d_in,
                    certificate,
                    base_d: None,
                })
            }
            Coefficients::Mod(m) => {
                if m == 0 {
                    return Err(Error::InvalidCocycle("coefficient modulus must be positive".into()));
                }
                let mm = Int::from(m);
                let d_prev = differential_or_zero(g, ni - 1, limits)?;
                let d_n = bar_differential(g, n, limits)?;
                let d_next = bar_differential(g, n + 1, limits)?;
                let d_out = cone_differential(&mm, &d_n, &d_next);
                let d_in = cone_differential(&mm, &d_prev, &d_n);
                let certificate = Some(TorsionCertificate {
                    annihilator: mm,
                    h_in: cone_homotopy(dim(k, ni + 1), dim(k, ni), dim(k, ni - 1)),
                    h_out: cone_homotopy(dim(k, ni + 2), dim(k, ni + 1), dim(k, ni)),
                });
                Ok(CochainSlice {
                    group: g.clone(),
                    degree: n,
                    coefficients: coeff,
                    d_out,
                    d_in,
                    certificate,
                    base_d: Some(d_n),
                })
            }
            Coefficients::Units => {
                if n == 0 {
                    return Err(Error::DimensionMismatch("units cohomology is only modelled in degrees >= 1".into()));
                }
                let mut s = Self::new(g, n + 1, Coefficients::Integers, limits)?;
                s.degree = n;
                s.coefficients = coeff;
                Ok(s)
            }
        }
    }
}

/// `H^n(G, coeff)` with one normalized cocycle per canonical generator.
#[derive(Clone, Debug)]
pub struct CohomologyGroup {
    group: FiniteGroup,
    degree: usize,
    coefficients: Coefficients,
    value: FinAbGroup,
    representatives: Vec<Vec<Int>>,
    homology: Subquotient,
    base_d: Option<IntegerMatrix>,
}

impl CohomologyGroup {
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coefficients(&self) -> Coefficients {
        self.coefficients
    }

    pub fn value(&self) -> &FinAbGroup {
        &self.value
    }

    /// Normalized cocycles, one per canonical generator: integral for `Z`,
    /// residues in `[0, m)` for `Z/m`, and integral of degree `n + 1` for
    /// `k^x`.
    pub fn representatives(&self) -> &[Vec<Int>] {
        &self.representatives
    }

    pub fn subquotient(&self) -> &Subquotient {
        &self.homology
    }

    /// Canonical coordinates of the class of a cocycle given in the same
    /// form as [`Self::representatives`].
    pub fn class_of(&self, cocycle: &[Int]) -> Result<Vec<Int>> {
        match (&self.coefficients, &self.base_d) {
            (Coefficients::Mod(m), Some(d)) => {
                let cone = cone_lift(*m, d, cocycle)?;
                self.homology.coordinates(&cone)
            }
            _ => self.homology.coordinates(cocycle),
        }
    }
}

/// `(-(d b)/m, b)` for a mod-`m` cocycle `b` lifted to `[0, m)`.
fn cone_lift(m: u64, d: &IntegerMatrix, b: &[Int]) -> Result<Vec<Int>> {
    if b.len() != d.cols() {
        return Err(Error::DimensionMismatch(format!("cochain has {} entries, expected {}", b.len(), d.cols())));
    }
    let mm = Int::from(m);
    let b: Vec<Int> = b.iter().map(|x| x.rem_euclid(&mm)).collect();
    let db = d.mul_vec(&b);
    let mut out = Vec::with_capacity(db.len() + b.len());
    for x in &db {
        let q =
            x.exact_div(&mm).ok_or_else(|| Error::NotChainCompatible(format!("cochain is not a cocycle mod {m}")))?;
        out.push(-q);
    }
    out.extend(b);
    Ok(out)
}

pub fn cohomology(g: &FiniteGroup, n: usize, coeff: Coefficients, limits: &Limits) -> Result<CohomologyGroup> {
    let slice = CochainSlice::new(g, n, coeff, limits)?;
    let homology = match &slice.certificate {
        Some(cert) => homology_at_certified(&slice.d_out, &slice.d_in, cert, limits)?,
        None => homology_at(&slice.d_out, &slice.d_in, limits)?,
    };
    let value = homology.quotient().clone();
    let representatives = match coeff {
        Coefficients::Mod(m) => {
            let mm = Int::from(m);
            let split = dim(g.order() - 1, n as isize + 1);
            homology.lifts().iter().map(|l| l[split..].iter().map(|x| x.rem_euclid(&mm)).collect()).collect()
        }
        _ => homology.lifts().to_vec(),
    };
    Ok(CohomologyGroup {
        group: g.clone(),
        degree: n,
        coefficients: coeff,
        value,
        representatives,
        homology,
        base_d: slice.base_d,
    })
}

pub fn cohomology_z(g: &FiniteGroup, n: usize, limits: &Limits) -> Result<CohomologyGroup> {
    cohomology(g, n, Coefficients::Integers, limits)
}

pub fn cohomology_zm(g: &FiniteGroup, n: usize, m: u64, limits: &Limits) -> Result<CohomologyGroup> {
    cohomology(g, n, Coefficients::Mod(m), limits)
}

/// Rejects groups whose order is divisible by the (nonzero)
/// characteristic.
pub fn check_tame(g: &FiniteGroup, characteristic: Option<u64>) -> Result<()> {
    match characteristic {
        Some(p) if p > 1 && g.order() as u64 % p == 0 => {
            Err(Error::Tameness { characteristic: p, order: g.order() as u64 })
        }
        _ => Ok(()),
    }
}

/// `H^n(G, k^x)` for `n >= 1`.
pub fn cohomology_units(
    g: &FiniteGroup,
    n: usize,
    characteristic: Option<u64>,
    limits: &Limits,
) -> Result<CohomologyGroup> {
    check_tame(g, characteristic)?;
    cohomology(g, n, Coefficients::Units, limits)
}

/// Pullback of normalized `n`-cochains along a homomorphism `f: A -> B`,
/// as a matrix `C^n(B) -> C^n(A)`. A tuple whose image contains the
/// identity pulls back to zero.
pub fn pullback_matrix(f: &GroupHom, n: usize, limits: &Limits) -> Result<IntegerMatrix> {
    let a = f.source();
    let b = f.target();
    let ka = a.order() - 1;
    let kb = b.order() - 1;
    let rows = checked_dim(ka, n, limits)?;
    let cols = dim(kb, n as isize);
    let ea = a.non_identity();
    let mut posb = vec![usize::MAX; b.order()];
    for (i, x) in b.non_identity().into_iter().enumerate() {
        posb[x] = i;
    }
    let img: Vec<usize> = ea.iter().map(|&x| posb[f.apply(x)]).collect();
    let mut trip = Vec::with_capacity(rows);
    let mut digits = vec![0usize; n];
    'rows: for r in 0..rows {
        let mut c = 0usize;
        for &d in &digits {
            let p = img[d];
            if p == usize::MAX {
                advance(&mut digits, ka);
                continue 'rows;
            }
            c = c * kb + p;
        }
        trip.push((r, c, Int::ONE));
        advance(&mut digits, ka);
    }
    Ok(IntegerMatrix::from_triplets(rows, cols, trip))
}

fn advance(digits: &mut [usize], k: usize) {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < k {
            return;
        }
        *d = 0;
    }
}

fn pullback_in_degree(f: &GroupHom, n: isize, limits: &Limits) -> Result<IntegerMatrix> {
    if n < 0 {
        Ok(IntegerMatrix::zero(0, 0))
    } else {
        pullback_matrix(f, n as usize, limits)
    }
}

/// Ambient map between the complexes of `src` (on `f.target()`) and `dst`
/// (on `f.source()`) induced by pulling back along `f`, in cohomological
/// degree `n` (possibly `-1`).
fn ambient_pullback(f: &GroupHom, coeff: Coefficients, n: isize, limits: &Limits) -> Result<IntegerMatrix> {
    match coeff {
        Coefficients::Integers => pullback_in_degree(f, n, limits),
        Coefficients::Units => pullback_in_degree(f, n + 1, limits),
        Coefficients::Mod(_) => {
            let hi = pullback_in_degree(f, n + 1, limits)?;
            let lo = pullback_in_degree(f, n, limits)?;
            let tr = IntegerMatrix::zero(hi.rows(), lo.cols());
            let bl = IntegerMatrix::zero(lo.rows(), hi.cols());
            Ok(IntegerMatrix::block(&hi, &tr, &bl, &lo))
        }
    }
}

/// The map `H^n(B) -> H^n(A)` induced by `f: A -> B`, between already
/// computed cohomology groups.
pub fn induced_on_cohomology(
    f: &GroupHom,
    src: &CohomologyGroup,
    dst: &CohomologyGroup,
    limits: &Limits,
) -> Result<AbGroupMap> {
    if src.group() != f.target() || dst.group() != f.source() {
        return Err(Error::DimensionMismatch("cohomology groups do not match the homomorphism".into()));
    }
    if src.degree != dst.degree || src.coefficients != dst.coefficients {
        return Err(Error::DimensionMismatch("cohomology groups differ in degree or coefficients".into()));
    }
    let n = src.degree as isize;
    let p = ambient_pullback(f, src.coefficients, n, limits)?;
    let p_prev = ambient_pullback(f, src.coefficients, n - 1, limits)?;
    induced_chain_map(&p, &p_prev, &src.homology, &dst.homology)
}

/// Inflation `H^n(G) -> H^n(E)` along a surjection `q: E -> G`.
pub fn inflation_map(q: &GroupHom, n: usize, coeff: Coefficients, limits: &Limits) -> Result<AbGroupMap> {
    if !q.is_surjective() {
        return Err(Error::NotSurjective);
    }
    let src = cohomology(q.target(), n, coeff, limits)?;
    let dst = cohomology(q.source(), n, coeff, limits)?;
    induced_on_cohomology(q, &src, &dst, limits)
}

/// Restriction `H^n(G) -> H^n(H)` along an injection `i: H -> G`.
pub fn restriction_map(i: &GroupHom, n: usize, coeff: Coefficients, limits: &Limits) -> Result<AbGroupMap> {
    if !i.is_injective() {
        return Err(Error::NotInjective);
    }
    let src = cohomology(i.target(), n, coeff, limits)?;
    let dst = cohomology(i.source(), n, coeff, limits)?;
    induced_on_cohomology(i, &src, &dst, limits)
}

/// Bockstein of the multiplication-by-`r` sequence, `H^n(G, Z/r) ->
/// H^{n+1}(G, Z)`: lift to `[0, r)`, apply `d`, divide by `r`. `target` is
/// `H^{n+1}(G, Z)` (or equivalently `H^n(G, k^x)`); the result is in its
/// canonical coordinates.
pub fn bockstein(target: &CohomologyGroup, r: u64, cocycle: &[Int]) -> Result<Vec<Int>> {
    let deg = match target.coefficients {
        Coefficients::Integers => target.degree,
        Coefficients::Units => target.degree + 1,
        Coefficients::Mod(_) => {
            return Err(Error::DimensionMismatch("Bockstein lands in integral cohomology".into()));
        }
    };
    if deg == 0 || r == 0 {
        return Err(Error::DimensionMismatch("Bockstein needs a positive degree and modulus".into()));
    }
    let d = target.homology.d_in();
    let rr = Int::from(r);
    if cocycle.len() != d.cols() {
        return Err(Error::DimensionMismatch(format!("cochain has {} entries, expected {}", cocycle.len(), d.cols())));
    }
    let lift: Vec<Int> = cocycle.iter().map(|x| x.rem_euclid(&rr)).collect();
    let image: Option<Vec<Int>> = d.mul_vec(&lift).iter().map(|x| x.exact_div(&rr)).collect();
    let image =
        image.ok_or_else(|| Error::InvariantViolation(format!("coboundary of the lift is not divisible by {r}")))?;
    target.homology.coordinates(&image)
}

/// Class of `beta_r(c)` in `H^2(G, k^x) = H^3(G, Z)`, together with that
/// group.
pub fn bockstein_r(g: &FiniteGroup, c: &Cocycle2, limits: &Limits) -> Result<(CohomologyGroup, Vec<Int>)> {
    if c.base() != g {
        return Err(Error::InvalidCocycle("cocycle lives on a different group".into()));
    }
    let h = cohomology(g, 2, Coefficients::Units, limits)?;
    let x = bockstein(&h, c.modulus(), &c.normalized_values())?;
    Ok((h, x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::direct_product;

    fn lim() -> Limits {
        Limits::default()
    }

    fn grp(s: &str) -> FinAbGroup {
        s.parse().unwrap()
    }

    #[test]
    fn first_differential_of_z2() {
        let d = bar_differential(&FiniteGroup::cyclic(2), 1, &lim()).unwrap();
        assert_eq!(d, IntegerMatrix::from_rows(&[vec![2]]));
        let d0 = bar_differential(&FiniteGroup::cyclic(5), 0, &lim()).unwrap();
        assert!(d0.is_zero());
        assert_eq!((d0.rows(), d0.cols()), (4, 1));
    }

    #[test]
    fn differentials_compose_to_zero() {
        let v4 = direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2)).group;
        let s3 = FiniteGroup::dihedral(3).unwrap();
        for g in [FiniteGroup::cyclic(4), v4, s3] {
            for n in 0..3 {
                let a = bar_differential(&g, n, &lim()).unwrap();
                let b = bar_differential(&g, n + 1, &lim()).unwrap();
                assert!(b.mul(&a).is_zero(), "d^{} d^{n} != 0", n + 1);
            }
        }
    }

    #[test]
    fn cyclic_integral_cohomology() {
        for n in 1..=6usize {
            let g = FiniteGroup::cyclic(n);
            assert_eq!(cohomology_z(&g, 0, &lim()).unwrap().value(), &FinAbGroup::free(1));
            assert!(cohomology_z(&g, 1, &lim()).unwrap().value().is_trivial());
            assert_eq!(cohomology_z(&g, 2, &lim()).unwrap().value(), &FinAbGroup::cyclic(n as u64));
            assert!(cohomology_z(&g, 3, &lim()).unwrap().value().is_trivial());
        }
    }

    #[test]
    fn mod_coefficients() {
        let z2 = FiniteGroup::cyclic(2);
        assert_eq!(cohomology_zm(&z2, 1, 2, &lim()).unwrap().value(), &FinAbGroup::cyclic(2));
        assert_eq!(cohomology_zm(&z2, 0, 4, &lim()).unwrap().value(), &FinAbGroup::cyclic(4));
        let v4 = direct_product(&z2, &z2).group;
        assert_eq!(cohomology_zm(&v4, 2, 2, &lim()).unwrap().value(), &grp("Z/2 + Z/2 + Z/2"));
        let s3 = FiniteGroup::dihedral(3).unwrap();
        assert_eq!(cohomology_zm(&s3, 2, 2, &lim()).unwrap().value(), &FinAbGroup::cyclic(2));
        assert_eq!(cohomology_zm(&FiniteGroup::cyclic(4), 1, 6, &lim()).unwrap().value(), &FinAbGroup::cyclic(2));
    }

    #[test]
    fn units_cohomology() {
        let v4 = direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2)).group;
        assert_eq!(cohomology_units(&v4, 2, None, &lim()).unwrap().value(), &FinAbGroup::cyclic(2));
        let d8 = FiniteGroup::dihedral(4).unwrap();
        assert_eq!(cohomology_units(&d8, 2, None, &lim()).unwrap().value(), &FinAbGroup::cyclic(2));
        assert!(cohomology_units(&FiniteGroup::trivial(), 3, None, &lim()).unwrap().value().is_trivial());
        let e = cohomology_units(&FiniteGroup::cyclic(6), 1, Some(3), &lim()).unwrap_err();
        assert_eq!(e, Error::Tameness { characteristic: 3, order: 6 });
        assert!(cohomology_units(&FiniteGroup::cyclic(6), 1, Some(5), &lim()).is_ok());
    }

    #[test]
    fn representatives_are_cocycles() {
        let v4 = direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2)).group;
        let h = cohomology_zm(&v4, 2, 2, &lim()).unwrap();
        for rep in h.representatives() {
            let c = Cocycle2::from_normalized(&v4, 2, rep).unwrap();
            assert_eq!(h.class_of(&c.normalized_values()).unwrap().len(), 3);
        }
        let coords: Vec<Vec<Int>> = h.representatives().iter().map(|r| h.class_of(r).unwrap()).collect();
        for (i, c) in coords.iter().enumerate() {
            for (j, x) in c.iter().enumerate() {
                assert_eq!(x, &Int::from((i == j) as i64));
            }
        }
    }

    #[test]
    fn bockstein_examples() {
        let z2 = FiniteGroup::cyclic(2);
        let c = Cocycle2::new(z2.clone(), 2, vec![vec![0, 0], vec![0, 1]]).unwrap();
        let (h, x) = bockstein_r(&z2, &c, &lim()).unwrap();
        assert!(h.value().is_zero_element(&x));
        let q = Cocycle2::quaternion();
        let (h, x) = bockstein_r(q.base(), &q, &lim()).unwrap();
        assert_eq!(h.value(), &FinAbGroup::cyclic(2));
        assert!(!h.value().is_zero_element(&x));
        let split = Cocycle2::zero(q.base(), 2);
        let (h, x) = bockstein_r(q.base(), &split, &lim()).unwrap();
        assert!(h.value().is_zero_element(&x));
    }

    #[test]
    fn inflation_identity_and_restriction() {
        let g = FiniteGroup::cyclic(4);
        let id = GroupHom::identity(&g);
        let f = inflation_map(&id, 2, Coefficients::Integers, &lim()).unwrap();
        assert_eq!(f, AbGroupMap::identity(&FinAbGroup::cyclic(4)));
        let z2 = FiniteGroup::cyclic(2);
        let i = GroupHom::new(z2.clone(), g.clone(), vec![0, 2]).unwrap();
        // Every homomorphism Z/4 -> Z/2 kills 2, so this restriction is zero.
        let res = restriction_map(&i, 1, Coefficients::Mod(2), &lim()).unwrap();
        assert!(res.matrix().is_zero());
        assert_eq!(res.source(), &FinAbGroup::cyclic(2));
        let v4 = direct_product(&z2, &z2);
        let first = GroupHom::new(z2.clone(), v4.group.clone(), vec![0, 2]).unwrap();
        let res = restriction_map(&first, 1, Coefficients::Mod(2), &lim()).unwrap();
        assert!(res.is_surjective(&lim()).unwrap());
        let t = GroupHom::new(FiniteGroup::trivial(), g.clone(), vec![0]).unwrap();
        let res = restriction_map(&t, 2, Coefficients::Integers, &lim()).unwrap();
        assert!(res.target().is_trivial());
        let q = GroupHom::new(g.clone(), z2, vec![0, 1, 0, 1]).unwrap();
        assert_eq!(restriction_map(&q, 1, Coefficients::Integers, &lim()).unwrap_err(), Error::NotInjective);
        assert_eq!(inflation_map(&i, 1, Coefficients::Integers, &lim()).unwrap_err(), Error::NotSurjective);
    }

    #[test]
    fn cap_is_enforced() {
        let g = FiniteGroup::cyclic(40);
        let e = cohomology_z(&g, 4, &lim()).unwrap_err();
        assert_eq!(e.code(), "resource-cap");
    }
}
