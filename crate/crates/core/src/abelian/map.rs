use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::finab::{cokernel, FinAbGroup};
use super::int::Int;
use super::lattice::{is_solvable, kernel_basis, lattice_quotient};
use super::matrix::IntegerMatrix;
use crate::error::{Error, Limits, Result};

/// Homomorphism between finitely generated abelian groups, written on their
/// canonical generators: column `j` holds the image of source generator `j`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AbGroupMap {
    source: FinAbGroup,
    target: FinAbGroup,
    matrix: IntegerMatrix,
}

impl AbGroupMap {
    /// Validates that every source relation lands in the target relations.
    /// Entries on torsion rows are reduced to their canonical residues.
    pub fn new(source: FinAbGroup, target: FinAbGroup, matrix: IntegerMatrix) -> Result<Self> {
        if matrix.rows() != target.ngens() || matrix.cols() != source.ngens() {
            return Err(Error::DimensionMismatch(format!(
                "map matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.ngens(),
                source.ngens()
            )));
        }
        let t = matrix
            .triplets()
            .map(|(i, j, v)| {
                let o = target.gen_order(i);
                let v = if o.is_zero() { v.clone() } else { v.rem_euclid(&o) };
                (i, j, v)
            })
            .collect();
        let matrix = IntegerMatrix::from_triplets(target.ngens(), source.ngens(), t);
        for (i, j, v) in matrix.triplets() {
            let a = source.gen_order(j);
            let d = target.gen_order(i);
            let ok = if a.is_zero() {
                true
            } else if d.is_zero() {
                v.is_zero()
            } else {
                d.divides(&(&a * v))
            };
            if !ok {
                return Err(Error::NotWellDefined(format!(
                    "generator {j} of order {a} maps to an element of larger order"
                )));
            }
        }
        Ok(AbGroupMap { source, target, matrix })
    }

    pub fn identity(g: &FinAbGroup) -> Self {
        AbGroupMap { source: g.clone(), target: g.clone(), matrix: IntegerMatrix::identity(g.ngens()) }
    }

    pub fn zero(source: &FinAbGroup, target: &FinAbGroup) -> Self {
        AbGroupMap {
            source: source.clone(),
            target: target.clone(),
            matrix: IntegerMatrix::zero(target.ngens(), source.ngens()),
        }
    }

    /// Multiplication by `m` on a group.
    pub fn multiplication(g: &FinAbGroup, m: i64) -> Self {
        Self::new(g.clone(), g.clone(), IntegerMatrix::scalar(g.ngens(), &Int::from(m)))
            .expect("multiplication is always well defined")
    }

    pub fn source(&self) -> &FinAbGroup {
        &self.source
    }

    pub fn target(&self) -> &FinAbGroup {
        &self.target
    }

    pub fn matrix(&self) -> &IntegerMatrix {
        &self.matrix
    }

    pub fn apply(&self, x: &[Int]) -> Vec<Int> {
        self.target.reduce(&self.matrix.mul_vec(x))
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &AbGroupMap) -> Result<AbGroupMap> {
        if first.target != self.source {
            return Err(Error::DimensionMismatch("composition of incompatible maps".into()));
        }
        AbGroupMap::new(first.source.clone(), self.target.clone(), self.matrix.mul(&first.matrix))
    }

    fn with_target_relations(&self) -> IntegerMatrix {
        IntegerMatrix::hstack(&self.matrix, &self.target.relation_matrix())
    }

    pub fn cokernel(&self, limits: &Limits) -> Result<FinAbGroup> {
        cokernel(&self.with_target_relations(), limits)
    }

    pub fn image(&self, limits: &Limits) -> Result<FinAbGroup> {
        lattice_quotient(&self.with_target_relations(), &self.target.relation_matrix(), limits)
    }

    pub fn kernel(&self, limits: &Limits) -> Result<FinAbGroup> {
        let s = self.source.ngens();
        let k = kernel_basis(&self.with_target_relations(), limits)?;
        let proj = k.select_rows(&(0..s).collect::<Vec<_>>());
        lattice_quotient(&proj, &self.source.relation_matrix(), limits)
    }

    pub fn is_injective(&self, limits: &Limits) -> Result<bool> {
        Ok(self.kernel(limits)?.is_trivial())
    }

    pub fn is_surjective(&self, limits: &Limits) -> Result<bool> {
        Ok(self.cokernel(limits)?.is_trivial())
    }

    /// Whether some `g: target -> source` satisfies `g ∘ self = id`.
    ///
    /// Each source coordinate gives an independent system of congruences in
    /// the corresponding row of `g`, constrained so that `g` respects the
    /// target relations.
    pub fn is_split_injection(&self, limits: &Limits) -> Result<bool> {
        let s = self.source.ngens();
        let t = self.target.ngens();
        for j in 0..s {
            let a = self.source.gen_order(j);
            // Unknown g[j][i] = scale_i * x_i; scale 0 means forced to zero.
            let scale: Vec<Int> = (0..t)
                .map(|i| {
                    let b = self.target.gen_order(i);
                    if b.is_zero() {
                        Int::ONE
                    } else if a.is_zero() {
                        Int::ZERO
                    } else {
                        a.exact_div(&a.gcd(&b)).expect("gcd divides")
                    }
                })
                .collect();
            let mut trip = Vec::new();
            for (i, k, v) in self.matrix.triplets() {
                if !scale[i].is_zero() {
                    trip.push((k, i, &scale[i] * v));
                }
            }
            if !a.is_zero() {
                for k in 0..s {
                    trip.push((k, t + k, a.clone()));
                }
            }
            let ncols = if a.is_zero() { t } else { t + s };
            let system = IntegerMatrix::from_triplets(s, ncols, trip);
            let mut rhs = vec![Int::ZERO; s];
            rhs[j] = Int::ONE;
            if !is_solvable(&system, &rhs, limits)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
