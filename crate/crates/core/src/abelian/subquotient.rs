//! Homology `ker(d_out) / im(d_in)` of a three-term integer complex.
//!
//! `d_in` is diagonalized with its row transform `U` recorded. In the
//! coordinates `y = U z`, the boundaries are `{y_r in s_r Z}` on pivot rows
//! and zero elsewhere, and because `d_out d_in = 0`, the cycle condition only
//! involves the non-pivot rows. Torsion classes therefore come straight from
//! the pivots of `d_in`; the free part is the kernel of `d_out U^{-1}`
//! restricted to non-pivot rows, which is skipped entirely when a verified
//! null-homotopy of some nonzero multiple of the identity proves the homology
//! is torsion.

use alloc::vec;
use alloc::vec::Vec;

use super::finab::FinAbGroup;
use super::int::Int;
use super::map::AbGroupMap;
use super::matrix::IntegerMatrix;
use super::snf::Reduction;
use crate::error::{Error, Limits, Result};

/// Maps `h_in: C^n -> C^{n-1}` and `h_out: C^{n+1} -> C^n` with
/// `d_in h_in + h_out d_out = annihilator * id`. Its existence shows the
/// homology at `C^n` is killed by `annihilator`, hence has no free part.
#[derive(Clone, Debug)]
pub struct TorsionCertificate {
    pub annihilator: Int,
    pub h_in: IntegerMatrix,
    pub h_out: IntegerMatrix,
}

#[derive(Clone, Debug)]
struct FreePart {
    free_rows: Vec<usize>,
    kernel: Reduction,
    positions: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct Subquotient {
    ambient_dim: usize,
    d_out: IntegerMatrix,
    d_in: IntegerMatrix,
    reduction: Reduction,
    torsion_rows: Vec<(usize, Int)>,
    free: Option<FreePart>,
    quotient: FinAbGroup,
    lifts: Vec<Vec<Int>>,
}

fn check_composition(d_out: &IntegerMatrix, d_in: &IntegerMatrix) -> Result<()> {
    if d_out.cols() != d_in.rows() {
        return Err(Error::DimensionMismatch(alloc::format!(
            "d_out has {} columns but d_in has {} rows",
            d_out.cols(),
            d_in.rows()
        )));
    }
    if !d_out.mul(d_in).is_zero() {
        return Err(Error::CompositionNonzero);
    }
    Ok(())
}

/// `ker(d_out) / im(d_in)` with generator lifts.
pub fn homology_at(d_out: &IntegerMatrix, d_in: &IntegerMatrix, limits: &Limits) -> Result<Subquotient> {
    check_composition(d_out, d_in)?;
    let reduction = Reduction::compute(d_in, true, false, limits)?;
    let free_rows = reduction.free_rows();
    let n = d_in.rows();
    let mut wcols = Vec::with_capacity(free_rows.len());
    let mut ucols = Vec::with_capacity(free_rows.len());
    for &f in &free_rows {
        let mut e = vec![Int::ZERO; n];
        e[f] = Int::ONE;
        reduction.apply_u_inv(&mut e);
        wcols.push(d_out.mul_vec(&e));
        ucols.push(e);
    }
    let w = IntegerMatrix::from_columns(d_out.rows(), &wcols);
    let kernel = Reduction::compute(&w, false, true, limits)?;
    let positions = kernel.free_cols();
    let mut free_lifts = Vec::with_capacity(positions.len());
    for &c in &positions {
        let mut v = vec![Int::ZERO; free_rows.len()];
        v[c] = Int::ONE;
        kernel.apply_v(&mut v);
        let mut lift = vec![Int::ZERO; n];
        for (coef, u) in v.iter().zip(&ucols) {
            if coef.is_zero() {
                continue;
            }
            for (l, x) in lift.iter_mut().zip(u) {
                *l += &(coef * x);
            }
        }
        free_lifts.push(lift);
    }
    let free = FreePart { free_rows, kernel, positions };
    Ok(assemble(d_out, d_in, reduction, Some(free), free_lifts))
}

/// Like [`homology_at`], but the free part is ruled out by a null-homotopy
/// that is verified here instead of computing the rank of `d_out`.
pub fn homology_at_certified(
    d_out: &IntegerMatrix,
    d_in: &IntegerMatrix,
    cert: &TorsionCertificate,
    limits: &Limits,
) -> Result<Subquotient> {
    check_composition(d_out, d_in)?;
    let n = d_in.rows();
    if cert.annihilator.is_zero()
        || cert.h_in.rows() != d_in.cols()
        || cert.h_in.cols() != n
        || cert.h_out.rows() != n
        || cert.h_out.cols() != d_out.rows()
    {
        return Err(Error::InvariantViolation("torsion certificate has the wrong shape".into()));
    }
    let lhs = d_in.mul(&cert.h_in).add(&cert.h_out.mul(d_out));
    if lhs != IntegerMatrix::scalar(n, &cert.annihilator) {
        return Err(Error::InvariantViolation("torsion certificate is not a null-homotopy".into()));
    }
    let reduction = Reduction::compute(d_in, true, false, limits)?;
    Ok(assemble(d_out, d_in, reduction, None, Vec::new()))
}

fn assemble(
    d_out: &IntegerMatrix,
    d_in: &IntegerMatrix,
    reduction: Reduction,
    free: Option<FreePart>,
    free_lifts: Vec<Vec<Int>>,
) -> Subquotient {
    let n = d_in.rows();
    let torsion_rows: Vec<(usize, Int)> =
        reduction.pivots().iter().filter(|p| !p.value.is_one()).map(|p| (p.row, p.value.clone())).collect();
    let mut lifts = Vec::with_capacity(torsion_rows.len() + free_lifts.len());
    for (r, _) in &torsion_rows {
        let mut e = vec![Int::ZERO; n];
        e[*r] = Int::ONE;
        reduction.apply_u_inv(&mut e);
        lifts.push(e);
    }
    let free_rank = free_lifts.len();
    lifts.extend(free_lifts);
    let mut orders: Vec<Int> = torsion_rows.iter().map(|(_, d)| d.clone()).collect();
    orders.extend(core::iter::repeat_n(Int::ZERO, free_rank));
    let quotient = FinAbGroup::from_orders(&orders);
    debug_assert_eq!(
        quotient.invariant_factors(),
        &torsion_rows.iter().map(|(_, d)| d.clone()).collect::<Vec<_>>()[..]
    );
    Subquotient {
        ambient_dim: n,
        d_out: d_out.clone(),
        d_in: d_in.clone(),
        reduction,
        torsion_rows,
        free,
        quotient,
        lifts,
    }
}

impl Subquotient {
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn quotient(&self) -> &FinAbGroup {
        &self.quotient
    }

    /// One ambient cycle per canonical generator of the quotient.
    pub fn lifts(&self) -> &[Vec<Int>] {
        &self.lifts
    }

    /// Columns spanning the boundaries.
    pub fn boundary_basis(&self) -> &IntegerMatrix {
        &self.d_in
    }

    /// Columns spanning the cycles: the generator lifts followed by the
    /// boundary spanning set.
    pub fn cycle_basis(&self) -> IntegerMatrix {
        let lifts = IntegerMatrix::from_columns(self.ambient_dim, &self.lifts);
        IntegerMatrix::hstack(&lifts, &self.d_in)
    }

    pub fn d_out(&self) -> &IntegerMatrix {
        &self.d_out
    }

    pub fn d_in(&self) -> &IntegerMatrix {
        &self.d_in
    }

    pub fn is_cycle(&self, z: &[Int]) -> bool {
        z.len() == self.ambient_dim && self.d_out.mul_vec(z).iter().all(Int::is_zero)
    }

    pub fn is_boundary(&self, z: &[Int]) -> bool {
        if z.len() != self.ambient_dim {
            return false;
        }
        let mut y = z.to_vec();
        self.reduction.apply_u(&mut y);
        let pivots_ok = self.reduction.pivots().iter().all(|p| p.value.divides(&y[p.row]));
        pivots_ok && self.reduction.free_rows().iter().all(|&r| y[r].is_zero())
    }

    /// Canonical coordinates of the class of a cycle.
    pub fn coordinates(&self, z: &[Int]) -> Result<Vec<Int>> {
        if !self.is_cycle(z) {
            return Err(Error::NotChainCompatible("vector is not a cycle".into()));
        }
        let mut y = z.to_vec();
        self.reduction.apply_u(&mut y);
        let mut out: Vec<Int> = self.torsion_rows.iter().map(|(r, d)| y[*r].rem_euclid(d)).collect();
        match &self.free {
            Some(free) => {
                let mut yf: Vec<Int> = free.free_rows.iter().map(|&r| y[r].clone()).collect();
                free.kernel.apply_v_inv(&mut yf);
                out.extend(free.positions.iter().map(|&c| yf[c].clone()));
            }
            None => {
                if self.reduction.free_rows().iter().any(|&r| !y[r].is_zero()) {
                    return Err(Error::InvariantViolation("cycle has a free component in a torsion homology".into()));
                }
            }
        }
        Ok(out)
    }
}

/// The map on homology induced by an ambient map `f` (columns indexed by the
/// source ambient basis). Verifies that generator lifts go to cycles and
/// boundaries go to boundaries, which together imply `f` is compatible.
pub fn induced_map(f: &IntegerMatrix, src: &Subquotient, dst: &Subquotient) -> Result<AbGroupMap> {
    check_ambient(f, src, dst)?;
    for j in 0..src.d_in.cols() {
        let img = f.mul_vec(&src.d_in.column_dense(j));
        if !dst.is_boundary(&img) {
            return Err(Error::NotChainCompatible(alloc::format!("boundary column {j} does not map to a boundary")));
        }
    }
    map_lifts(f, src, dst)
}

/// Like [`induced_map`], with boundaries handled by the chain-map identity
/// `f d_in = d_in' f_prev` instead of one membership test per column.
pub fn induced_chain_map(
    f: &IntegerMatrix,
    f_prev: &IntegerMatrix,
    src: &Subquotient,
    dst: &Subquotient,
) -> Result<AbGroupMap> {
    check_ambient(f, src, dst)?;
    if f_prev.cols() != src.d_in.cols() || f_prev.rows() != dst.d_in.cols() {
        return Err(Error::DimensionMismatch("previous ambient map does not match the subquotients".into()));
    }
    if f.mul(&src.d_in) != dst.d_in.mul(f_prev) {
        return Err(Error::NotChainCompatible("ambient maps do not commute with the differentials".into()));
    }
    map_lifts(f, src, dst)
}

fn check_ambient(f: &IntegerMatrix, src: &Subquotient, dst: &Subquotient) -> Result<()> {
    if f.cols() != src.ambient_dim || f.rows() != dst.ambient_dim {
        return Err(Error::DimensionMismatch("ambient map does not match the subquotients".into()));
    }
    Ok(())
}

fn map_lifts(f: &IntegerMatrix, src: &Subquotient, dst: &Subquotient) -> Result<AbGroupMap> {
    let mut cols = Vec::with_capacity(src.lifts.len());
    for lift in &src.lifts {
        let img = f.mul_vec(lift);
        cols.push(dst.coordinates(&img).map_err(|e| match e {
            Error::NotChainCompatible(_) => Error::NotChainCompatible("a cycle does not map to a cycle".into()),
            other => other,
        })?);
    }
    let m = IntegerMatrix::from_columns(dst.quotient.ngens(), &cols);
    AbGroupMap::new(src.quotient.clone(), dst.quotient.clone(), m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> IntegerMatrix {
        IntegerMatrix::from_rows(rows)
    }

    #[test]
    fn cyclic_quotient() {
        let sq = homology_at(&m(&[vec![0]]), &m(&[vec![5]]), &Limits::default()).unwrap();
        assert_eq!(sq.quotient(), &FinAbGroup::cyclic(5));
        assert_eq!(sq.coordinates(&[Int::from(7)]).unwrap(), vec![Int::from(2)]);
    }

    #[test]
    fn injective_outgoing_kills_everything() {
        let sq = homology_at(&m(&[vec![2]]), &IntegerMatrix::zero(1, 1), &Limits::default()).unwrap();
        assert!(sq.quotient().is_trivial());
    }

    #[test]
    fn free_part_detected() {
        let sq = homology_at(&IntegerMatrix::zero(0, 2), &m(&[vec![2], vec![0]]), &Limits::default()).unwrap();
        assert_eq!(sq.quotient(), &FinAbGroup::from_u64_orders(&[2, 0]));
        let c = sq.coordinates(&[Int::from(3), Int::from(-4)]).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c[0], Int::ONE);
        assert_eq!(c[1].abs(), Int::from(4));
    }

    #[test]
    fn nonzero_composition_rejected() {
        let err = homology_at(&m(&[vec![1]]), &m(&[vec![1]]), &Limits::default()).unwrap_err();
        assert_eq!(err, Error::CompositionNonzero);
    }

    #[test]
    fn induced_identity_and_scaling() {
        let lim = Limits::default();
        let sq = homology_at(&m(&[vec![0]]), &m(&[vec![6]]), &lim).unwrap();
        let id = induced_map(&IntegerMatrix::identity(1), &sq, &sq).unwrap();
        assert_eq!(id, AbGroupMap::identity(sq.quotient()));
        let three = induced_map(&IntegerMatrix::scalar(1, &Int::from(3)), &sq, &sq).unwrap();
        assert_eq!(three, AbGroupMap::multiplication(sq.quotient(), 3));
        let scale = IntegerMatrix::scalar(1, &Int::from(3));
        assert_eq!(induced_chain_map(&scale, &scale, &sq, &sq).unwrap(), three);
        let wrong = IntegerMatrix::scalar(1, &Int::from(2));
        assert!(induced_chain_map(&scale, &wrong, &sq, &sq).is_err());
    }

    #[test]
    fn certificate_must_hold() {
        let cert = TorsionCertificate { annihilator: Int::from(4), h_in: m(&[vec![1]]), h_out: m(&[vec![0]]) };
        // d_in = [4]: 4 * 1 + 0 = 4, fine.
        let sq = homology_at_certified(&m(&[vec![0]]), &m(&[vec![4]]), &cert, &Limits::default()).unwrap();
        assert_eq!(sq.quotient(), &FinAbGroup::cyclic(4));
        let bad = TorsionCertificate { annihilator: Int::from(3), ..cert };
        assert!(homology_at_certified(&m(&[vec![0]]), &m(&[vec![4]]), &bad, &Limits::default()).is_err());
    }
}
