//! Independent computations used to cross-check the cohomology engine:
//! the un-normalized bar complex, closed forms for cyclic groups, and
//! direct enumeration of low-degree cocycles. Nothing here reuses the
//! engine's differentials.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::abelian::{kernel_basis, lattice_quotient, FinAbGroup, Int, IntegerMatrix, Reduction};
use crate::cohomology::Coefficients;
use crate::error::{Error, Limits, Result};
use crate::groups::FiniteGroup;

/// Largest cochain dimension the oracle will build.
pub const ORACLE_CAP: u64 = 1 << 16;

/// Largest number of cochains `brute_cocycles` enumerates one by one.
pub const EXHAUSTIVE_CAP: u64 = 1 << 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleMethod {
    FullBar,
    PeriodicCyclic,
    BruteCocycle,
}

impl fmt::Display for OracleMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OracleMethod::FullBar => "full-bar",
            OracleMethod::PeriodicCyclic => "periodic-cyclic",
            OracleMethod::BruteCocycle => "brute-cocycle",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResult {
    pub description: String,
    pub value: FinAbGroup,
    pub method: OracleMethod,
}

fn cap_error(requested: u64) -> Error {
    Error::ResourceCap { what: "oracle cochain dimension", requested, limit: ORACLE_CAP }
}

fn full_dim(order: usize, n: usize) -> Result<usize> {
    let d = (order as u64).checked_pow(n as u32).ok_or(cap_error(u64::MAX))?;
    if d > ORACLE_CAP {
        return Err(cap_error(d));
    }
    Ok(d as usize)
}

/// `d: C^n -> C^{n+1}` on all functions `G^n -> Z`. Tuples are encoded in
/// base `|G|` with the last entry least significant.
fn full_differential(g: &FiniteGroup, n: usize) -> Result<IntegerMatrix> {
    let q = g.order();
    let rows = full_dim(q, n + 1)?;
    let cols = full_dim(q, n)?;
    let mut trip = Vec::new();
    let mut t = vec![0usize; n + 1];
    for r in 0..rows {
        let mut x = r;
        for slot in t.iter_mut().rev() {
            *slot = x % q;
            x /= q;
        }
        let encode = |s: &[usize]| s.iter().fold(0usize, |a, &v| a * q + v);
        trip.push((r, encode(&t[1..]), Int::ONE));
        for i in 0..n {
            let mut face = Vec::with_capacity(n);
            face.extend_from_slice(&t[..i]);
            face.push(g.mul(t[i], t[i + 1]));
            face.extend_from_slice(&t[i + 2..]);
            let sign: i64 = if i % 2 == 0 { -1 } else { 1 };
            trip.push((r, encode(&face), Int::from(sign)));
        }
        let sign: i64 = if n % 2 == 0 { -1 } else { 1 };
        trip.push((r, encode(&t[..n]), Int::from(sign)));
    }
    Ok(IntegerMatrix::from_triplets(rows, cols, trip))
}

struct IntegralData {
    /// Torsion of `C^n / im d^{n-1}`: exactly the torsion of `H^n`.
    torsion: Vec<Int>,
    free_rank: usize,
}

/// `H^n(G, Z)` from ranks and the cokernel of `d^{n-1}`: `ker d^n` is
/// saturated and contains `im d^{n-1}`, so the torsion of `H^n` is the
/// torsion of the cokernel and the free rank is `dim C^n - rk d^n -
/// rk d^{n-1}`.
fn integral(g: &FiniteGroup, n: usize, need_rank: bool) -> Result<IntegralData> {
    let limits = Limits::default();
    let dim_n = full_dim(g.order(), n)?;
    let (torsion, rank_in) = if n == 0 {
        (Vec::new(), 0)
    } else {
        let red = Reduction::compute(&full_differential(g, n - 1)?, false, false, &limits)?;
        (red.nonunit_values(), red.rank())
    };
    let free_rank = if need_rank {
        let rank_out = Reduction::compute(&full_differential(g, n)?, false, false, &limits)?.rank();
        dim_n - rank_out - rank_in
    } else {
        0
    };
    Ok(IntegralData { torsion, free_rank })
}

fn integral_group(d: &IntegralData) -> FinAbGroup {
    let mut orders = d.torsion.clone();
    orders.extend(core::iter::repeat_n(Int::ZERO, d.free_rank));
    FinAbGroup::from_orders(&orders)
}

/// `H^n(G, coeff)` through the full (un-normalized) bar complex. Mod `m`
/// values come from the universal coefficient sequence
/// `H^n(Z) (x) Z/m + Tor(H^{n+1}(Z), Z/m)`.
pub fn full_bar_cohomology(g: &FiniteGroup, n: usize, coeff: Coefficients) -> Result<OracleResult> {
    let value = match coeff {
        Coefficients::Integers => integral_group(&integral(g, n, true)?),
        Coefficients::Units => {
            if n == 0 {
                return Err(Error::DimensionMismatch("units cohomology is only modelled in degrees >= 1".into()));
            }
            integral_group(&integral(g, n + 1, true)?)
        }
        Coefficients::Mod(m) => {
            if m == 0 {
                return Err(Error::InvalidCocycle("coefficient modulus must be positive".into()));
            }
            let mm = Int::from(m);
            let here = integral(g, n, true)?;
            let next = integral(g, n + 1, false)?;
            let mut orders: Vec<Int> = here.torsion.iter().map(|d| d.gcd(&mm)).collect();
            orders.extend(core::iter::repeat_n(mm.clone(), here.free_rank));
            orders.extend(next.torsion.iter().map(|d| d.gcd(&mm)));
            FinAbGroup::from_orders(&orders)
        }
    };
    Ok(OracleResult {
        description: format!("H^{n}(G, {coeff}) for |G| = {} via the full bar complex", g.order()),
        value,
        method: OracleMethod::FullBar,
    })
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Closed-form cohomology of `Z/n` with trivial coefficients.
pub fn cyclic_closed_form(n: u64, degree: usize, coeff: Coefficients) -> Result<OracleResult> {
    if n == 0 {
        return Err(Error::InvalidGroup("cyclic group order must be positive".into()));
    }
    let value = match coeff {
        Coefficients::Integers => match degree {
            0 => FinAbGroup::free(1),
            d if d % 2 == 1 => FinAbGroup::trivial(),
            _ => FinAbGroup::cyclic(n),
        },
        Coefficients::Units => match degree {
            0 => return Err(Error::DimensionMismatch("units cohomology is only modelled in degrees >= 1".into())),
            d if d % 2 == 1 => FinAbGroup::cyclic(n),
            _ => FinAbGroup::trivial(),
        },
        Coefficients::Mod(m) => {
            if m == 0 {
                return Err(Error::InvalidCocycle("coefficient modulus must be positive".into()));
            }
            if degree == 0 {
                FinAbGroup::cyclic(m)
            } else {
                FinAbGroup::cyclic(gcd(n, m))
            }
        }
    };
    Ok(OracleResult {
        description: format!("H^{degree}(Z/{n}, {coeff}) in closed form"),
        value,
        method: OracleMethod::PeriodicCyclic,
    })
}

/// Normalized cochains of degree `n <= 2` as explicit tables over `Z/m`.
struct Tables<'a> {
    g: &'a FiniteGroup,
    n: usize,
    m: u64,
    /// Position of each element among the non-identity elements.
    pos: Vec<Option<usize>>,
    k: usize,
}

impl<'a> Tables<'a> {
    fn new(g: &'a FiniteGroup, n: usize, m: u64) -> Self {
        let mut pos = vec![None; g.order()];
        for (i, x) in g.non_identity().into_iter().enumerate() {
            pos[x] = Some(i);
        }
        Tables { g, n, m, pos, k: g.order() - 1 }
    }

    fn len(&self, n: usize) -> usize {
        self.k.pow(n as u32)
    }

    /// Value of a normalized cochain at a tuple; zero if any entry is the
    /// identity.
    fn at(&self, f: &[u64], args: &[usize]) -> u64 {
        let mut idx = 0;
        for &a in args {
            match self.pos[a] {
                Some(p) => idx = idx * self.k + p,
                None => return 0,
            }
        }
        f[idx]
    }

    fn elements(&self) -> Vec<usize> {
        self.g.non_identity()
    }

    /// Linear conditions (as rows of integer coefficients) that cut out
    /// cocycles among normalized `n`-cochains.
    fn cocycle_conditions(&self) -> Vec<Vec<(usize, i64)>> {
        let e = self.elements();
        let mut out = Vec::new();
        let idx = |args: &[usize]| -> Option<usize> {
            let mut i = 0;
            for &a in args {
                i = i * self.k + self.pos[a]?;
            }
            Some(i)
        };
        match self.n {
            1 => {
                // f(gh) = f(g) + f(h)
                for &a in &e {
                    for &b in &e {
                        let mut row = Vec::new();
                        if let Some(i) = idx(&[self.g.mul(a, b)]) {
                            row.push((i, 1));
                        }
                        row.push((idx(&[a]).expect("non-identity"), -1));
                        row.push((idx(&[b]).expect("non-identity"), -1));
                        out.push(row);
                    }
                }
            }
            2 => {
                // f(b,c) - f(ab,c) + f(a,bc) - f(a,b) = 0
                for &a in &e {
                    for &b in &e {
                        for &c in &e {
                            let mut row = Vec::new();
                            let terms: [(&[usize], i64); 4] = [
                                (&[b, c], 1),
                                (&[self.g.mul(a, b), c], -1),
                                (&[a, self.g.mul(b, c)], 1),
                                (&[a, b], -1),
                            ];
                            for (args, s) in terms {
                                if let Some(i) = idx(args) {
                                    row.push((i, s));
                                }
                            }
                            out.push(row);
                        }
                    }
                }
            }
            _ => {}
        }
        out
    }

    /// Coboundaries of the normalized `(n-1)`-cochain basis vectors.
    fn coboundary_columns(&self) -> Vec<Vec<i64>> {
        if self.n != 2 {
            // Trivial action: the coboundary of a constant is zero.
            return Vec::new();
        }
        let e = self.elements();
        (0..self.k)
            .map(|j| {
                let mut c = vec![0u64; self.k];
                c[j] = 1;
                let mut col = Vec::with_capacity(self.len(2));
                for &a in &e {
                    for &b in &e {
                        let v = self.at(&c, &[b]) as i64 - self.at(&c, &[self.g.mul(a, b)]) as i64
                            + self.at(&c, &[a]) as i64;
                        col.push(v);
                    }
                }
                col
            })
            .collect()
    }

    fn is_cocycle(&self, f: &[u64], conditions: &[Vec<(usize, i64)>]) -> bool {
        let m = self.m as i64;
        conditions.iter().all(|row| row.iter().map(|&(i, s)| s * f[i] as i64).sum::<i64>().rem_euclid(m) == 0)
    }
}

fn advance_mod(v: &mut [u64], m: u64) -> bool {
    for x in v.iter_mut().rev() {
        *x += 1;
        if *x < m {
            return true;
        }
        *x = 0;
    }
    false
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Structure of a finite abelian group `A = Z/B` from the sizes of its
/// `p^j`-torsion subgroups, counted over explicit elements.
fn structure_from_counts(cocycles: &[Vec<u64>], boundaries: &BTreeSet<Vec<u64>>, m: u64) -> Result<FinAbGroup> {
    let nb = boundaries.len() as u64;
    if cocycles.len() as u64 % nb != 0 {
        return Err(Error::InvariantViolation("coboundaries do not divide the cocycles evenly".into()));
    }
    let order = cocycles.len() as u64 / nb;
    let killed = |k: u64| -> u64 {
        let c =
            cocycles.iter().filter(|z| boundaries.contains(&z.iter().map(|&x| x * k % m).collect::<Vec<_>>())).count()
                as u64;
        c / nb
    };
    let mut orders = Vec::new();
    for p in prime_factors(order) {
        let mut full = 0u32;
        let mut o = order;
        while o % p == 0 {
            o /= p;
            full += 1;
        }
        // a_j = log_p |A[p^j]|; the number of cyclic factors of order at
        // least p^j is a_j - a_{j-1}.
        let mut prev = 0u32;
        let mut j = 1u32;
        let mut parts: Vec<u32> = Vec::new();
        while prev < full {
            let size = killed(p.pow(j));
            let a = size.ilog(p);
            if p.pow(a) != size {
                return Err(Error::InvariantViolation("torsion subgroup size is not a prime power".into()));
            }
            parts.push(a - prev);
            prev = a;
            j += 1;
        }
        // parts[j-1] = #factors of exponent >= j.
        for (j, w) in parts.iter().enumerate() {
            let next = parts.get(j + 1).copied().unwrap_or(0);
            for _ in 0..(w - next) {
                orders.push(Int::from(p.pow(j as u32 + 1)));
            }
        }
    }
    let g = FinAbGroup::from_orders(&orders);
    if g.order() != Some(Int::from(order)) {
        return Err(Error::InvariantViolation("counted structure disagrees with |Z| / |B|".into()));
    }
    Ok(g)
}

/// `H^n(G, Z/m)` for `n <= 2` from explicit normalized cochain tables:
/// every cochain is enumerated when there are few enough, otherwise the
/// cocycle and coboundary lattices are solved for directly.
pub fn brute_cocycles(g: &FiniteGroup, n: usize, m: u64) -> Result<OracleResult> {
    if m == 0 {
        return Err(Error::InvalidCocycle("coefficient modulus must be positive".into()));
    }
    if n > 2 {
        return Err(Error::DimensionMismatch("brute-force enumeration is limited to degree 2".into()));
    }
    let done = |value: FinAbGroup, how: &str| OracleResult {
        description: format!("H^{n}(G, Z/{m}) for |G| = {} by {how} cocycle enumeration", g.order()),
        value,
        method: OracleMethod::BruteCocycle,
    };
    if n == 0 {
        return Ok(done(FinAbGroup::cyclic(m), "exhaustive"));
    }
    let t = Tables::new(g, n, m);
    let len = t.len(n);
    if len as u64 > ORACLE_CAP {
        return Err(cap_error(len as u64));
    }
    let conditions = t.cocycle_conditions();
    let boundary_cols = t.coboundary_columns();
    let count = (m as u128).checked_pow(len as u32);
    if count.is_some_and(|c| c <= EXHAUSTIVE_CAP as u128) {
        let mut cocycles = Vec::new();
        let mut f = vec![0u64; len];
        loop {
            if t.is_cocycle(&f, &conditions) {
                cocycles.push(f.clone());
            }
            if !advance_mod(&mut f, m) {
                break;
            }
        }
        let mut boundaries = BTreeSet::new();
        let mut c = vec![0u64; boundary_cols.len()];
        loop {
            let mut b = vec![0i64; len];
            for (coef, col) in c.iter().zip(&boundary_cols) {
                for (x, v) in b.iter_mut().zip(col) {
                    *x += *coef as i64 * v;
                }
            }
            boundaries.insert(b.iter().map(|x| x.rem_euclid(m as i64) as u64).collect::<Vec<_>>());
            if !advance_mod(&mut c, m) {
                break;
            }
        }
        return Ok(done(structure_from_counts(&cocycles, &boundaries, m)?, "exhaustive"));
    }
    // Z = {x : D x = 0 mod m} is the projection of ker [D | m I]; B is
    // spanned by the coboundaries and m Z^len.
    let limits = Limits::default();
    let nrows = conditions.len();
    let mut trip = Vec::new();
    for (r, row) in conditions.iter().enumerate() {
        for &(i, s) in row {
            trip.push((r, i, Int::from(s)));
        }
        trip.push((r, len + r, Int::from(m)));
    }
    let stacked = IntegerMatrix::from_triplets(nrows, len + nrows, trip);
    let ker = kernel_basis(&stacked, &limits)?;
    let zcols: Vec<Vec<Int>> = (0..ker.cols()).map(|j| ker.column_dense(j)[..len].to_vec()).collect();
    let z = IntegerMatrix::from_columns(len, &zcols);
    let mut bcols: Vec<Vec<Int>> = boundary_cols.iter().map(|c| c.iter().map(|&v| Int::from(v)).collect()).collect();
    for i in 0..len {
        let mut e = vec![Int::ZERO; len];
        e[i] = Int::from(m);
        bcols.push(e);
    }
    let b = IntegerMatrix::from_columns(len, &bcols);
    let value = lattice_quotient(&z, &b, &limits)?;
    Ok(done(value, "solved"))
}
