use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use super::int::Int;
use super::matrix::IntegerMatrix;
use super::snf::Reduction;
use crate::error::{Error, Limits, Result};

/// A finitely generated abelian group `Z^free_rank + Z/d_1 + ... + Z/d_k`
/// in canonical form: every `d_i >= 2` and `d_i | d_{i+1}`.
///
/// Canonical generators are ordered torsion first (in the order of the
/// invariant factors), then the free generators.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct FinAbGroup {
    free_rank: usize,
    torsion: Vec<Int>,
}

impl FinAbGroup {
    pub fn trivial() -> Self {
        FinAbGroup::default()
    }

    pub fn free(rank: usize) -> Self {
        FinAbGroup { free_rank: rank, torsion: Vec::new() }
    }

    pub fn cyclic(n: u64) -> Self {
        match n {
            0 => Self::free(1),
            1 => Self::trivial(),
            _ => FinAbGroup { free_rank: 0, torsion: alloc::vec![Int::from(n)] },
        }
    }

    /// Canonicalizes an arbitrary list of cyclic orders. Zero stands for a
    /// copy of `Z`; ones are dropped.
    pub fn from_orders(orders: &[Int]) -> Self {
        let mut free = 0;
        let mut finite = Vec::new();
        for d in orders {
            if d.is_zero() {
                free += 1;
            } else if !d.abs().is_one() {
                finite.push(d.abs());
            }
        }
        // Pairwise gcd/lcm turns any list into a divisibility chain.
        for a in 0..finite.len() {
            for b in a + 1..finite.len() {
                let g = finite[a].gcd(&finite[b]);
                let l = finite[a].lcm(&finite[b]);
                finite[a] = g;
                finite[b] = l;
            }
        }
        finite.retain(|d| !d.is_one());
        finite.sort();
        FinAbGroup { free_rank: free, torsion: finite }
    }

    pub fn from_u64_orders(orders: &[u64]) -> Self {
        let v: Vec<Int> = orders.iter().map(|&o| Int::from(o)).collect();
        Self::from_orders(&v)
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn invariant_factors(&self) -> &[Int] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Number of canonical generators.
    pub fn ngens(&self) -> usize {
        self.torsion.len() + self.free_rank
    }

    /// Order of generator `i`: its invariant factor, or zero for a free
    /// generator.
    pub fn gen_order(&self, i: usize) -> Int {
        self.torsion.get(i).cloned().unwrap_or(Int::ZERO)
    }

    pub fn order(&self) -> Option<Int> {
        if self.free_rank > 0 {
            return None;
        }
        Some(self.torsion.iter().fold(Int::ONE, |acc, d| &acc * d))
    }

    /// Exponent of a finite group (1 for the trivial group).
    pub fn exponent(&self) -> Option<Int> {
        if self.free_rank > 0 {
            return None;
        }
        Some(self.torsion.last().cloned().unwrap_or(Int::ONE))
    }

    pub fn direct_sum(&self, other: &FinAbGroup) -> FinAbGroup {
        let mut orders = self.torsion.clone();
        orders.extend(other.torsion.iter().cloned());
        let mut g = Self::from_orders(&orders);
        g.free_rank = self.free_rank + other.free_rank;
        g
    }

    pub fn sum_all<'a>(groups: impl IntoIterator<Item = &'a FinAbGroup>) -> FinAbGroup {
        groups.into_iter().fold(FinAbGroup::trivial(), |acc, g| acc.direct_sum(g))
    }

    /// Reduces a coordinate vector to its canonical representative.
    pub fn reduce(&self, x: &[Int]) -> Vec<Int> {
        assert_eq!(x.len(), self.ngens(), "coordinate length mismatch");
        x.iter()
            .enumerate()
            .map(|(i, v)| match self.torsion.get(i) {
                Some(d) => v.rem_euclid(d),
                None => v.clone(),
            })
            .collect()
    }

    pub fn is_zero_element(&self, x: &[Int]) -> bool {
        self.reduce(x).iter().all(Int::is_zero)
    }

    /// Order of an element, `None` when it has infinite order.
    pub fn element_order(&self, x: &[Int]) -> Option<Int> {
        let x = self.reduce(x);
        let mut ord = Int::ONE;
        for (i, v) in x.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let d = self.torsion.get(i)?;
            let o = d.exact_div(&v.gcd(d)).expect("gcd divides");
            ord = ord.lcm(&o);
        }
        Some(ord)
    }

    /// Relation matrix: columns `d_i e_i` for the torsion generators.
    pub fn relation_matrix(&self) -> IntegerMatrix {
        let t = self.torsion.iter().enumerate().map(|(i, d)| (i, i, d.clone())).collect();
        IntegerMatrix::from_triplets(self.ngens(), self.torsion.len(), t)
    }

    pub fn to_canonical_string(&self) -> String {
        alloc::format!("{self}")
    }
}

/// `Z^rows / column span(M)` in canonical form.
pub fn cokernel(m: &IntegerMatrix, limits: &Limits) -> Result<FinAbGroup> {
    let red = Reduction::compute(m, false, false, limits)?;
    let mut g = FinAbGroup::from_orders(&red.nonunit_values());
    g.free_rank = m.rows() - red.rank();
    Ok(g)
}

/// `Hom(A, Z/r)`: `(Z/r)^free + sum_i Z/gcd(d_i, r)`.
pub fn hom_to_cyclic(a: &FinAbGroup, r: u64) -> FinAbGroup {
    assert!(r >= 1, "modulus must be positive");
    let rr = Int::from(r);
    let mut orders: Vec<Int> = a.torsion.iter().map(|d| d.gcd(&rr)).collect();
    orders.extend(core::iter::repeat_n(rr, a.free_rank));
    FinAbGroup::from_orders(&orders)
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut first = true;
        let mut sep = |f: &mut fmt::Formatter<'_>| -> fmt::Result {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            Ok(())
        };
        match self.free_rank {
            0 => {}
            1 => {
                sep(f)?;
                write!(f, "Z")?;
            }
            k => {
                sep(f)?;
                write!(f, "Z^{k}")?;
            }
        }
        for d in &self.torsion {
            sep(f)?;
            write!(f, "Z/{d}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinAbGroup({self})")
    }
}

impl FromStr for FinAbGroup {
    type Err = Error;

    /// Parses the canonical text form, e.g. `0`, `Z/2 + Z/4`, `Z^2 + Z/3`.
    /// Non-canonical inputs such as `Z/2 + Z/3` are accepted and normalized.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidGroup(alloc::format!("cannot parse abelian group '{s}'"));
        let s = s.trim();
        if s == "0" {
            return Ok(FinAbGroup::trivial());
        }
        let mut orders = Vec::new();
        for part in s.split('+') {
            let part = part.trim();
            if part == "Z" {
                orders.push(Int::ZERO);
            } else if let Some(k) = part.strip_prefix("Z^") {
                let k: usize = k.parse().map_err(|_| bad())?;
                orders.extend(core::iter::repeat_n(Int::ZERO, k));
            } else if let Some(d) = part.strip_prefix("Z/") {
                let d = Int::parse(d).ok_or_else(bad)?;
                if d.is_zero() || d.is_negative() {
                    return Err(bad());
                }
                orders.push(d);
            } else {
                return Err(bad());
            }
        }
        Ok(FinAbGroup::from_orders(&orders))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn canonical_form() {
        let g = FinAbGroup::from_u64_orders(&[6, 4, 1]);
        assert_eq!(g.to_canonical_string(), "Z/2 + Z/12");
        assert_eq!(FinAbGroup::from_u64_orders(&[2, 3]), FinAbGroup::cyclic(6));
        assert_eq!(FinAbGroup::from_u64_orders(&[0, 3, 0]).to_canonical_string(), "Z^2 + Z/3");
        assert_eq!("Z/2 + Z/3".parse::<FinAbGroup>().unwrap(), FinAbGroup::cyclic(6));
        assert_eq!("0".parse::<FinAbGroup>().unwrap(), FinAbGroup::trivial());
    }

    #[test]
    fn hom_to_cyclic_examples() {
        assert_eq!(hom_to_cyclic(&FinAbGroup::cyclic(6), 4), FinAbGroup::cyclic(2));
        let a = FinAbGroup::from_u64_orders(&[0, 0, 3]);
        assert_eq!(hom_to_cyclic(&a, 3), FinAbGroup::from_u64_orders(&[3, 3, 3]));
        assert_eq!(hom_to_cyclic(&FinAbGroup::trivial(), 7), FinAbGroup::trivial());
    }

    #[test]
    fn cokernel_examples() {
        let lim = Limits::default();
        assert_eq!(cokernel(&IntegerMatrix::from_rows(&[vec![5]]), &lim).unwrap(), FinAbGroup::cyclic(5));
        let m = IntegerMatrix::from_rows(&[vec![2, 0, 1], vec![0, 2, 1]]);
        assert_eq!(cokernel(&m, &lim).unwrap(), FinAbGroup::cyclic(2));
        assert_eq!(cokernel(&IntegerMatrix::zero(2, 0), &lim).unwrap(), FinAbGroup::free(2));
    }

    #[test]
    fn element_orders() {
        let g = FinAbGroup::from_u64_orders(&[2, 4]);
        assert_eq!(g.element_order(&[Int::from(1), Int::from(2)]), Some(Int::from(2)));
        assert_eq!(g.element_order(&[Int::from(0), Int::from(3)]), Some(Int::from(4)));
        assert_eq!(g.element_order(&[Int::from(2), Int::from(4)]), Some(Int::ONE));
    }
}
