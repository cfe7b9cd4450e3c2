//! Exact integer linear algebra: Smith normal form, finitely generated
//! abelian groups, homomorphisms between them, and homology of integer
//! complexes.

mod finab;
mod int;
mod lattice;
mod map;
mod matrix;
mod snf;
mod subquotient;

pub use finab::{cokernel, hom_to_cyclic, FinAbGroup};
pub use int::Int;
pub use lattice::{is_solvable, kernel_basis, lattice_quotient};
pub use map::AbGroupMap;
pub use matrix::IntegerMatrix;
pub use snf::{smith_normal_form, Pivot, Reduction};
pub use subquotient::{
    homology_at, homology_at_certified, induced_chain_map, induced_map, Subquotient, TorsionCertificate,
};

/// One differential of the mapping cone of multiplication by `m`.
///
/// With `K^k = C^{k+1} + C^k` and `d(a, b) = (-d a, m a + d b)`, the cone of
/// a complex of free modules computes the cohomology of `C / m`. Takes
/// `d_lo: C^k -> C^{k+1}` and `d_hi: C^{k+1} -> C^{k+2}` and returns
/// `K^k -> K^{k+1}`. A cone cocycle `(a, b)` corresponds to the mod-`m`
/// cocycle `b`, with `a = -(d b) / m`.
pub fn cone_differential(m: &Int, d_lo: &IntegerMatrix, d_hi: &IntegerMatrix) -> IntegerMatrix {
    assert_eq!(d_lo.rows(), d_hi.cols(), "cone differentials do not compose");
    let top_right = IntegerMatrix::zero(d_hi.rows(), d_lo.cols());
    let m_id = IntegerMatrix::scalar(d_hi.cols(), m);
    IntegerMatrix::block(&d_hi.scale(&Int::from(-1)), &top_right, &m_id, d_lo)
}

/// `(a, b) -> (b, 0)` from `K^k = C^{k+1} + C^k` to `K^{k-1} = C^k + C^{k-1}`;
/// a null-homotopy of `m * id` on the cone of multiplication by `m`.
pub fn cone_homotopy(dim_above: usize, dim_k: usize, dim_below: usize) -> IntegerMatrix {
    let t = (0..dim_k).map(|i| (i, dim_above + i, Int::ONE)).collect();
    IntegerMatrix::from_triplets(dim_k + dim_below, dim_above + dim_k, t)
}
