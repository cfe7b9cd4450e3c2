//! Small exact lattice computations over `Z^n`.

use alloc::vec;
use alloc::vec::Vec;

use super::finab::{cokernel, FinAbGroup};
use super::int::Int;
use super::matrix::IntegerMatrix;
use super::snf::Reduction;
use crate::error::{Error, Limits, Result};

/// Columns forming a basis of the integer kernel of `m`.
pub fn kernel_basis(m: &IntegerMatrix, limits: &Limits) -> Result<IntegerMatrix> {
    let red = Reduction::compute(m, false, true, limits)?;
    let cols: Vec<Vec<Int>> = red
        .free_cols()
        .into_iter()
        .map(|c| {
            let mut e = vec![Int::ZERO; m.cols()];
            e[c] = Int::ONE;
            red.apply_v(&mut e);
            e
        })
        .collect();
    Ok(IntegerMatrix::from_columns(m.cols(), &cols))
}

/// `span(spanning) / span(sub)`; `sub` must lie in the span of `spanning`.
pub fn lattice_quotient(spanning: &IntegerMatrix, sub: &IntegerMatrix, limits: &Limits) -> Result<FinAbGroup> {
    if spanning.rows() != sub.rows() {
        return Err(Error::DimensionMismatch("lattice quotient ambient dimensions differ".into()));
    }
    let red = Reduction::compute(spanning, true, false, limits)?;
    let free_rows = red.free_rows();
    let mut coords = Vec::with_capacity(sub.cols());
    for j in 0..sub.cols() {
        let mut y = sub.column_dense(j);
        red.apply_u(&mut y);
        if free_rows.iter().any(|&r| !y[r].is_zero()) {
            return Err(Error::NotWellDefined("sublattice is not contained in the lattice".into()));
        }
        let mut c = Vec::with_capacity(red.rank());
        for p in red.pivots() {
            c.push(
                y[p.row]
                    .exact_div(&p.value)
                    .ok_or_else(|| Error::NotWellDefined("sublattice is not contained in the lattice".into()))?,
            );
        }
        coords.push(c);
    }
    let cm = IntegerMatrix::from_columns(red.rank(), &coords);
    cokernel(&cm, limits)
}

/// Whether `a x = b` has an integer solution.
pub fn is_solvable(a: &IntegerMatrix, b: &[Int], limits: &Limits) -> Result<bool> {
    assert_eq!(a.rows(), b.len());
    let red = Reduction::compute(a, true, false, limits)?;
    let mut y = b.to_vec();
    red.apply_u(&mut y);
    if red.free_rows().iter().any(|&r| !y[r].is_zero()) {
        return Ok(false);
    }
    Ok(red.pivots().iter().all(|p| p.value.divides(&y[p.row])))
}
