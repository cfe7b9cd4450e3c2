//! Finite groups as multiplication tables, homomorphisms, normalized
//! 2-cocycles and the central extensions they define.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::abelian::Int;
use crate::cohomology::{cohomology, Coefficients};
use crate::error::{Error, Limits, Result};

/// A finite group given by a validated multiplication table.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    identity: usize,
    inverse: Vec<usize>,
    labels: Option<Vec<String>>,
}

impl FiniteGroup {
    /// Validates closure, identity, inverses and associativity.
    pub fn from_table(rows: &[Vec<usize>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        let mut table = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidGroup(format!("row {i} has {} entries, expected {n}", row.len())));
            }
            for &x in row {
                if x >= n {
                    return Err(Error::InvalidGroup(format!("entry {x} out of range in row {i}")));
                }
                table.push(x as u32);
            }
        }
        Self::from_flat(n, table)
    }

    fn from_flat(n: usize, table: Vec<u32>) -> Result<Self> {
        let at = |a: usize, b: usize| table[a * n + b] as usize;
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| at(e, x) == x && at(x, e) == x))
            .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        let inverse = (0..n)
            .map(|a| {
                (0..n)
                    .find(|&b| at(a, b) == identity && at(b, a) == identity)
                    .ok_or_else(|| Error::InvalidGroup(format!("element {a} has no inverse")))
            })
            .collect::<Result<Vec<usize>>>()?;
        for a in 0..n {
            for b in 0..n {
                let ab = at(a, b);
                for c in 0..n {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(Error::InvalidGroup(format!("associativity fails at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        Ok(FiniteGroup { order: n, table, identity, inverse, labels: None })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.order);
        self.labels = Some(labels);
        self
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        (0..self.order).map(|a| (0..self.order).map(|b| self.mul(a, b)).collect()).collect()
    }

    /// Elements other than the identity, ascending.
    pub fn non_identity(&self) -> Vec<usize> {
        (0..self.order).filter(|&g| g != self.identity).collect()
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_cyclic(&self) -> bool {
        (0..self.order).any(|a| self.element_order(a) == self.order)
    }

    pub fn exponent(&self) -> u64 {
        (0..self.order).fold(1u64, |acc, a| num_integer::lcm(acc, self.element_order(a) as u64))
    }

    /// Stable digest of the table, usable as a cache key.
    pub fn fingerprint(&self) -> u64 {
        // FNV-1a over the table.
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for x in core::iter::once(self.order as u32).chain(self.table.iter().copied()) {
            for b in x.to_le_bytes() {
                h ^= b as u64;
                h = h.wrapping_mul(0x0100_0000_01b3);
            }
        }
        h
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1, "cyclic group order must be positive");
        let table = (0..n).flat_map(|a| (0..n).map(move |b| ((a + b) % n) as u32)).collect();
        FiniteGroup { order: n, table, identity: 0, inverse: (0..n).map(|a| (n - a) % n).collect(), labels: None }
    }

    /// `Z/n ⋊ Z/2` with the generator of `Z/2` acting by `t -> a t`.
    /// Element `(t, s)` has index `s * n + t`.
    pub fn semidirect_cyclic_by_z2(n: u64, a: u64) -> Result<Self> {
        if n == 0 || a == 0 || a > n || (a * a) % n != 1 % n {
            return Err(Error::InvalidAction { n, a });
        }
        let nn = n as usize;
        let order = 2 * nn;
        let mut table = Vec::with_capacity(order * order);
        for x in 0..order {
            let (t1, s1) = (x % nn, x / nn);
            for y in 0..order {
                let (t2, s2) = (y % nn, y / nn);
                let twisted = if s1 == 1 { (a as usize * t2) % nn } else { t2 };
                let t = (t1 + twisted) % nn;
                let s = (s1 + s2) % 2;
                table.push((s * nn + t) as u32);
            }
        }
        Self::from_flat(order, table)
    }

    pub fn dihedral(n: u64) -> Result<Self> {
        Self::semidirect_cyclic_by_z2(n, n.saturating_sub(1).max(1))
    }

    /// Quaternion group of order 8, built as the central extension of
    /// `Z/2 x Z/2` by the quaternion cocycle.
    pub fn quaternion() -> Self {
        let c = Cocycle2::quaternion();
        CentralExtension::new(c).expect("quaternion cocycle is valid").total().clone()
    }
}

/// `G x H` with its two projections. Element `(g, h)` has index
/// `g * |H| + h`.
#[derive(Clone, Debug)]
pub struct DirectProduct {
    pub group: FiniteGroup,
    pub first: GroupHom,
    pub second: GroupHom,
}

pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> DirectProduct {
    let (m, n) = (g.order(), h.order());
    let order = m * n;
    let mut table = Vec::with_capacity(order * order);
    for x in 0..order {
        for y in 0..order {
            let (g1, h1) = (x / n, x % n);
            let (g2, h2) = (y / n, y % n);
            table.push((g.mul(g1, g2) * n + h.mul(h1, h2)) as u32);
        }
    }
    let group = FiniteGroup::from_flat(order, table).expect("product of groups is a group");
    let first = GroupHom { source: group.clone(), target: g.clone(), image: (0..order).map(|x| x / n).collect() };
    let second = GroupHom { source: group.clone(), target: h.clone(), image: (0..order).map(|x| x % n).collect() };
    DirectProduct { group, first, second }
}

/// A homomorphism of finite groups, stored as the image of each element.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroupHom {
    source: FiniteGroup,
    target: FiniteGroup,
    image: Vec<usize>,
}

impl GroupHom {
    pub fn new(source: FiniteGroup, target: FiniteGroup, image: Vec<usize>) -> Result<Self> {
        if image.len() != source.order() || image.iter().any(|&x| x >= target.order()) {
            return Err(Error::InvalidHomomorphism("image list has the wrong shape".into()));
        }
        for a in 0..source.order() {
            for b in 0..source.order() {
                if image[source.mul(a, b)] != target.mul(image[a], image[b]) {
                    return Err(Error::InvalidHomomorphism(format!("not multiplicative at ({a}, {b})")));
                }
            }
        }
        Ok(GroupHom { source, target, image })
    }

    pub fn identity(g: &FiniteGroup) -> Self {
        GroupHom { source: g.clone(), target: g.clone(), image: (0..g.order()).collect() }
    }

    pub fn source(&self) -> &FiniteGroup {
        &self.source
    }

    pub fn target(&self) -> &FiniteGroup {
        &self.target
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn apply(&self, g: usize) -> usize {
        self.image[g]
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &GroupHom) -> Result<GroupHom> {
        if first.target != self.source {
            return Err(Error::InvalidHomomorphism("composition of incompatible homomorphisms".into()));
        }
        let image = first.image.iter().map(|&x| self.image[x]).collect();
        Ok(GroupHom { source: first.source.clone(), target: self.target.clone(), image })
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target.order()];
        for &x in &self.image {
            hit[x] = true;
        }
        hit.into_iter().all(|b| b)
    }

    pub fn is_injective(&self) -> bool {
        let e = self.target.identity();
        self.image.iter().enumerate().all(|(g, &x)| x != e || g == self.source.identity())
    }

    /// Elements of the source mapping to the identity.
    pub fn kernel(&self) -> Vec<usize> {
        let e = self.target.identity();
        (0..self.source.order()).filter(|&g| self.image[g] == e).collect()
    }
}

/// A normalized 2-cocycle `G x G -> Z/r` for the trivial action.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Cocycle2 {
    base: FiniteGroup,
    modulus: u64,
    values: Vec<u64>,
}

impl Cocycle2 {
    /// Checks ranges, normalization and the cocycle identity
    /// `c(g,h) + c(gh,k) = c(h,k) + c(g,hk)` on every triple.
    pub fn new(base: FiniteGroup, modulus: u64, values: Vec<Vec<u64>>) -> Result<Self> {
        let n = base.order();
        if modulus == 0 {
            return Err(Error::InvalidCocycle("modulus must be positive".into()));
        }
        if values.len() != n || values.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidCocycle(format!("cocycle table must be {n}x{n}")));
        }
        let flat: Vec<u64> = values.into_iter().flatten().collect();
        if let Some(v) = flat.iter().find(|&&v| v >= modulus) {
            return Err(Error::InvalidCocycle(format!("value {v} is not a residue mod {modulus}")));
        }
        let c = Cocycle2 { base, modulus, values: flat };
        c.validate()?;
        Ok(c)
    }

    fn validate(&self) -> Result<()> {
        let g = &self.base;
        let n = g.order();
        let e = g.identity();
        let r = self.modulus;
        for x in 0..n {
            if self.get(e, x) != 0 || self.get(x, e) != 0 {
                return Err(Error::InvalidCocycle(format!("not normalized at element {x}")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = g.mul(a, b);
                for c in 0..n {
                    let lhs = (self.get(a, b) + self.get(ab, c)) % r;
                    let rhs = (self.get(b, c) + self.get(a, g.mul(b, c))) % r;
                    if lhs != rhs {
                        return Err(Error::InvalidCocycle(format!("cocycle identity fails at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn zero(base: &FiniteGroup, modulus: u64) -> Self {
        assert!(modulus >= 1);
        Cocycle2 { base: base.clone(), modulus, values: vec![0; base.order() * base.order()] }
    }

    /// Builds a cocycle from its values on pairs of non-identity elements
    /// (row-major in element order), as produced by the normalized cochain
    /// basis.
    pub(crate) fn from_normalized(base: &FiniteGroup, modulus: u64, values: &[Int]) -> Result<Self> {
        let ne = base.non_identity();
        let k = ne.len();
        assert_eq!(values.len(), k * k);
        let m = Int::from(modulus);
        let mut table = vec![vec![0u64; base.order()]; base.order()];
        for (i, &g) in ne.iter().enumerate() {
            for (j, &h) in ne.iter().enumerate() {
                table[g][h] = values[i * k + j].rem_euclid(&m).to_u64().expect("residue fits");
            }
        }
        Cocycle2::new(base.clone(), modulus, table)
    }

    /// The quaternion cocycle on `Z/2 x Z/2` (as built by
    /// [`direct_product`] of two copies of `Z/2`), recording the sign in
    /// `s(x) s(y) = ± s(xy)` for the section `(1,0) -> i`, `(0,1) -> j`,
    /// `(1,1) -> k`.
    pub fn quaternion() -> Self {
        let v4 = direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2)).group;
        // index: 0 = 1, 1 = (0,1) = j, 2 = (1,0) = i, 3 = (1,1) = k
        // sign[x][y] = 1 when s(x)s(y) = -s(xy).
        let sign = [
            [0, 0, 0, 0],
            [0, 1, 1, 0], // j*j = -1, j*i = -k, j*k = i
            [0, 0, 1, 1], // i*j = k, i*i = -1, i*k = -j
            [0, 1, 0, 1], // k*j = -i, k*i = j, k*k = -1
        ];
        let values = sign.iter().map(|r| r.to_vec()).collect();
        Cocycle2::new(v4, 2, values).expect("quaternion signs form a cocycle")
    }

    pub fn base(&self) -> &FiniteGroup {
        &self.base
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn get(&self, g: usize, h: usize) -> u64 {
        self.values[g * self.base.order() + h]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    pub fn table_rows(&self) -> Vec<Vec<u64>> {
        let n = self.base.order();
        self.values.chunks(n).map(|c| c.to_vec()).collect()
    }

    /// Values on pairs of non-identity elements, in normalized cochain
    /// basis order.
    pub fn normalized_values(&self) -> Vec<Int> {
        let ne = self.base.non_identity();
        let mut out = Vec::with_capacity(ne.len() * ne.len());
        for &g in &ne {
            for &h in &ne {
                out.push(Int::from(self.get(g, h)));
            }
        }
        out
    }
}

/// `0 -> Z/r -> E -> G -> 0` with `E = G x Z/r` as a set and
/// `(g, s)(h, t) = (gh, s + t + c(g, h))`. Element `(g, t)` has index
/// `g * r + t`.
#[derive(Clone, Debug)]
pub struct CentralExtension {
    cocycle: Cocycle2,
    total: FiniteGroup,
    projection: GroupHom,
    kernel_embedding: GroupHom,
}

impl CentralExtension {
    pub fn new(cocycle: Cocycle2) -> Result<Self> {
        cocycle.validate()?;
        let g = cocycle.base().clone();
        let r = cocycle.modulus() as usize;
        let n = g.order();
        let order = n * r;
        let mut table = Vec::with_capacity(order * order);
        for x in 0..order {
            let (g1, s) = (x / r, x % r);
            for y in 0..order {
                let (g2, t) = (y / r, y % r);
                let fiber = (s + t + cocycle.get(g1, g2) as usize) % r;
                table.push((g.mul(g1, g2) * r + fiber) as u32);
            }
        }
        let labels = (0..order).map(|x| format!("({},{})", x / r, x % r)).collect();
        let total = FiniteGroup::from_flat(order, table)?.with_labels(labels);
        let projection = GroupHom::new(total.clone(), g.clone(), (0..order).map(|x| x / r).collect())?;
        let zr = FiniteGroup::cyclic(r);
        let e = g.identity();
        let kernel_embedding = GroupHom::new(zr, total.clone(), (0..r).map(|t| e * r + t).collect())?;
        let ext = CentralExtension { cocycle, total, projection, kernel_embedding };
        ext.check_central_kernel()?;
        Ok(ext)
    }

    /// The kernel of the projection is exactly the embedded `Z/r`, and it
    /// commutes with everything.
    fn check_central_kernel(&self) -> Result<()> {
        let mut ker = self.projection.kernel();
        ker.sort_unstable();
        let mut emb: Vec<usize> = self.kernel_embedding.image().to_vec();
        emb.sort_unstable();
        if ker != emb {
            return Err(Error::InvariantViolation("kernel of the projection is not the embedded Z/r".into()));
        }
        let e = &self.total;
        if !ker.iter().all(|&z| (0..e.order()).all(|x| e.mul(z, x) == e.mul(x, z))) {
            return Err(Error::InvariantViolation("extension kernel is not central".into()));
        }
        Ok(())
    }

    /// The split extension `G x Z/r`.
    pub fn split(g: &FiniteGroup, r: u64) -> Self {
        Self::new(Cocycle2::zero(g, r)).expect("zero cocycle is valid")
    }

    pub fn cocycle(&self) -> &Cocycle2 {
        &self.cocycle
    }

    pub fn base(&self) -> &FiniteGroup {
        self.cocycle.base()
    }

    pub fn modulus(&self) -> u64 {
        self.cocycle.modulus()
    }

    pub fn total(&self) -> &FiniteGroup {
        &self.total
    }

    pub fn projection(&self) -> &GroupHom {
        &self.projection
    }

    pub fn kernel_embedding(&self) -> &GroupHom {
        &self.kernel_embedding
    }
}

/// `central_extension(G, r, c)`: `G` and `r` must match the cocycle.
pub fn central_extension(g: &FiniteGroup, r: u64, c: &Cocycle2) -> Result<CentralExtension> {
    if c.base() != g || c.modulus() != r {
        return Err(Error::InvalidCocycle("cocycle base group or modulus does not match".into()));
    }
    CentralExtension::new(c.clone())
}

/// One normalized cocycle per class of `H^2(G, Z/r)`, the zero class
/// first. Classes are listed in lexicographic order of their coordinates on
/// the canonical generators.
pub fn enumerate_extension_classes(g: &FiniteGroup, r: u64, limits: &Limits) -> Result<Vec<Cocycle2>> {
    if r == 0 {
        return Err(Error::InvalidCocycle("modulus must be positive".into()));
    }
    let n = g.order() as u64;
    limits.check("extension class enumeration", n * n * (64 - r.leading_zeros() as u64).max(1))?;
    let h2 = cohomology(g, 2, Coefficients::Mod(r), limits)?;
    let value = h2.value().clone();
    let order = value
        .order()
        .and_then(|o| o.to_u64())
        .ok_or_else(|| Error::InvariantViolation("H^2(G, Z/r) is not finite".into()))?;
    limits.check("extension class enumeration", order)?;
    let orders: Vec<u64> = value.invariant_factors().iter().map(|d| d.to_u64().expect("small factor")).collect();
    let reps = h2.representatives();
    let dim = reps.first().map_or((g.order() - 1).pow(2), Vec::len);
    let mut out = Vec::with_capacity(order as usize);
    let mut digits = vec![0u64; orders.len()];
    loop {
        let mut vals = vec![Int::ZERO; dim];
        for (d, rep) in digits.iter().zip(reps) {
            if *d == 0 {
                continue;
            }
            let k = Int::from(*d);
            for (v, x) in vals.iter_mut().zip(rep) {
                *v += &(&k * x);
            }
        }
        out.push(Cocycle2::from_normalized(g, r, &vals)?);
        // Odometer over the coordinates, last coordinate fastest.
        let mut i = orders.len();
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < orders[i] {
                break;
            }
            digits[i] = 0;
        }
    }
}

/// Brute-force isomorphism test for small groups (order at most 16 in
/// practice): maps a greedy generating set onto every order-compatible tuple
/// and checks the extension is a bijective homomorphism.
pub fn is_isomorphic(g: &FiniteGroup, h: &FiniteGroup) -> bool {
    if g.order() != h.order() {
        return false;
    }
    let mut og: Vec<usize> = (0..g.order()).map(|x| g.element_order(x)).collect();
    let mut oh: Vec<usize> = (0..h.order()).map(|x| h.element_order(x)).collect();
    let gens = generating_set(g);
    let orders_g: Vec<usize> = gens.iter().map(|&x| og[x]).collect();
    og.sort_unstable();
    oh.sort_unstable();
    if og != oh || g.is_abelian() != h.is_abelian() {
        return false;
    }
    let mut images = Vec::with_capacity(gens.len());
    search(g, h, &gens, &orders_g, &mut images)
}

fn generating_set(g: &FiniteGroup) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut span = vec![false; g.order()];
    span[g.identity()] = true;
    // Prefer high-order elements to keep the generating set short.
    let mut cand: Vec<usize> = (0..g.order()).collect();
    cand.sort_by_key(|&x| core::cmp::Reverse(g.element_order(x)));
    for x in cand {
        if span[x] {
            continue;
        }
        gens.push(x);
        span = closure(g, &gens);
    }
    gens
}

fn closure(g: &FiniteGroup, gens: &[usize]) -> Vec<bool> {
    let mut seen = vec![false; g.order()];
    let mut queue = VecDeque::new();
    seen[g.identity()] = true;
    queue.push_back(g.identity());
    while let Some(x) = queue.pop_front() {
        for &s in gens {
            let y = g.mul(x, s);
            if !seen[y] {
                seen[y] = true;
                queue.push_back(y);
            }
        }
    }
    seen
}

fn search(g: &FiniteGroup, h: &FiniteGroup, gens: &[usize], orders: &[usize], images: &mut Vec<usize>) -> bool {
    if images.len() == gens.len() {
        return extends_to_isomorphism(g, h, gens, images);
    }
    let want = orders[images.len()];
    for y in 0..h.order() {
        if h.element_order(y) != want {
            continue;
        }
        images.push(y);
        if search(g, h, gens, orders, images) {
            return true;
        }
        images.pop();
    }
    false
}

fn extends_to_isomorphism(g: &FiniteGroup, h: &FiniteGroup, gens: &[usize], images: &[usize]) -> bool {
    let mut map = vec![usize::MAX; g.order()];
    map[g.identity()] = h.identity();
    let mut queue = VecDeque::from([g.identity()]);
    while let Some(x) = queue.pop_front() {
        for (&s, &t) in gens.iter().zip(images) {
            let y = g.mul(x, s);
            let img = h.mul(map[x], t);
            if map[y] == usize::MAX {
                map[y] = img;
                queue.push_back(y);
            } else if map[y] != img {
                return false;
            }
        }
    }
    let mut hit = vec![false; h.order()];
    for &y in &map {
        if y == usize::MAX || hit[y] {
            return false;
        }
        hit[y] = true;
    }
    (0..g.order()).all(|a| (0..g.order()).all(|b| map[g.mul(a, b)] == h.mul(map[a], map[b])))
}
