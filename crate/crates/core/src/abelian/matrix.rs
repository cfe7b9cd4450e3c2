use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::int::Int;

/// Sparse integer matrix stored column by column. Each column is a list of
/// `(row, value)` pairs sorted by row with no explicit zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntegerMatrix {
    rows: usize,
    cols: Vec<Vec<(usize, Int)>>,
}

impl IntegerMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntegerMatrix { rows, cols: vec![Vec::new(); cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, &Int::ONE)
    }

    pub fn scalar(n: usize, s: &Int) -> Self {
        let mut m = Self::zero(n, n);
        if !s.is_zero() {
            for (j, col) in m.cols.iter_mut().enumerate() {
                col.push((j, s.clone()));
            }
        }
        m
    }

    /// Builds a matrix from `(row, col, value)` triplets; duplicates are
    /// summed and zeros dropped.
    pub fn from_triplets(rows: usize, cols: usize, triplets: Vec<(usize, usize, Int)>) -> Self {
        let mut counts = vec![0usize; cols];
        for (r, c, _) in &triplets {
            assert!(*r < rows && *c < cols, "triplet ({r}, {c}) out of bounds");
            counts[*c] += 1;
        }
        let mut buckets: Vec<Vec<(usize, Int)>> = counts.iter().map(|&n| Vec::with_capacity(n)).collect();
        for (r, c, v) in triplets {
            buckets[c].push((r, v));
        }
        let mut m = Self::zero(rows, cols);
        for (bucket, col) in buckets.iter_mut().zip(&mut m.cols) {
            if !bucket.is_sorted_by_key(|e| e.0) {
                bucket.sort_by_key(|e| e.0);
            }
            col.reserve_exact(bucket.len());
            for (r, v) in bucket.drain(..) {
                match col.last_mut() {
                    Some((lr, lv)) if *lr == r => *lv += &v,
                    _ => col.push((r, v)),
                }
            }
            col.retain(|(_, v)| !v.is_zero());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let ncols = rows.first().map_or(0, Vec::len);
        let mut t = Vec::new();
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), ncols, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                if v != 0 {
                    t.push((i, j, Int::from(v)));
                }
            }
        }
        Self::from_triplets(rows.len(), ncols, t)
    }

    pub fn from_columns(rows: usize, columns: &[Vec<Int>]) -> Self {
        let mut m = Self::zero(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows);
            m.cols[j] = c.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(i, v)| (i, v.clone())).collect();
        }
        m
    }

    pub fn diagonal(values: &[Int]) -> Self {
        let n = values.len();
        let t = values.iter().enumerate().map(|(i, v)| (i, i, v.clone())).collect();
        Self::from_triplets(n, n, t)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols.len()
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    pub fn column(&self, j: usize) -> &[(usize, Int)] {
        &self.cols[j]
    }

    pub fn column_dense(&self, j: usize) -> Vec<Int> {
        let mut v = vec![Int::ZERO; self.rows];
        for (i, x) in &self.cols[j] {
            v[*i] = x.clone();
        }
        v
    }

    pub fn get(&self, r: usize, c: usize) -> Int {
        let col = &self.cols[c];
        match col.binary_search_by_key(&r, |e| e.0) {
            Ok(p) => col[p].1.clone(),
            Err(_) => Int::ZERO,
        }
    }

    pub(crate) fn into_columns(self) -> Vec<Vec<(usize, Int)>> {
        self.cols
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &Int)> + '_ {
        self.cols.iter().enumerate().flat_map(|(j, c)| c.iter().map(move |(i, v)| (*i, j, v)))
    }

    pub fn to_dense(&self) -> Vec<Vec<Int>> {
        let mut d = vec![vec![Int::ZERO; self.cols()]; self.rows];
        for (i, j, v) in self.triplets() {
            d[i][j] = v.clone();
        }
        d
    }

    pub fn transpose(&self) -> Self {
        let t = self.triplets().map(|(i, j, v)| (j, i, v.clone())).collect();
        Self::from_triplets(self.cols(), self.rows, t)
    }

    /// `self * v` for a dense vector.
    pub fn mul_vec(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(v.len(), self.cols(), "dimension mismatch in mul_vec");
        let mut out = vec![Int::ZERO; self.rows];
        for (j, col) in self.cols.iter().enumerate() {
            if v[j].is_zero() {
                continue;
            }
            for (i, x) in col {
                out[*i] += &(x * &v[j]);
            }
        }
        out
    }

    fn fits_i32(&self) -> bool {
        self.cols.iter().flatten().all(|(_, v)| v.to_i64().is_some_and(|x| i32::try_from(x).is_ok()))
    }

    /// Product for entries in `i32` range: every partial sum fits in `i128`.
    fn mul_small(&self, other: &IntegerMatrix) -> IntegerMatrix {
        let small = |v: &Int| v.to_i64().expect("checked by fits_i32") as i128;
        let mut acc = vec![0i128; self.rows];
        let mut seen = vec![false; self.rows];
        let mut touched = Vec::new();
        let mut cols = Vec::with_capacity(other.cols());
        for ocol in &other.cols {
            for (k, b) in ocol {
                let b = small(b);
                for (i, a) in &self.cols[*k] {
                    acc[*i] += small(a) * b;
                    if !seen[*i] {
                        seen[*i] = true;
                        touched.push(*i);
                    }
                }
            }
            touched.sort_unstable();
            let mut col = Vec::with_capacity(touched.len());
            for &i in &touched {
                if acc[i] != 0 {
                    col.push((i, Int::from(acc[i])));
                }
                acc[i] = 0;
                seen[i] = false;
            }
            touched.clear();
            cols.push(col);
        }
        IntegerMatrix { rows: self.rows, cols }
    }

    pub fn mul(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols(), other.rows, "dimension mismatch in mul");
        if self.fits_i32() && other.fits_i32() {
            return self.mul_small(other);
        }
        let mut acc: Vec<Option<Int>> = vec![None; self.rows];
        let mut touched = Vec::new();
        let mut cols = Vec::with_capacity(other.cols());
        for ocol in &other.cols {
            for (k, b) in ocol {
                for (i, a) in &self.cols[*k] {
                    let prod = a * b;
                    match &mut acc[*i] {
                        Some(x) => *x += &prod,
                        slot @ None => {
                            *slot = Some(prod);
                            touched.push(*i);
                        }
                    }
                }
            }
            touched.sort_unstable();
            let mut col = Vec::with_capacity(touched.len());
            for &i in &touched {
                if let Some(x) = acc[i].take() {
                    if !x.is_zero() {
                        col.push((i, x));
                    }
                }
            }
            touched.clear();
            cols.push(col);
        }
        IntegerMatrix { rows: self.rows, cols }
    }

    pub fn add(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!((self.rows, self.cols()), (other.rows, other.cols()));
        let cols = self.cols.iter().zip(&other.cols).map(|(a, b)| merge_scaled(a, b, &Int::ONE)).collect();
        IntegerMatrix { rows: self.rows, cols }
    }

    pub fn scale(&self, s: &Int) -> IntegerMatrix {
        if s.is_zero() {
            return Self::zero(self.rows, self.cols());
        }
        let cols = self.cols.iter().map(|c| c.iter().map(|(i, v)| (*i, v * s)).collect()).collect();
        IntegerMatrix { rows: self.rows, cols }
    }

    /// Entries reduced to `0..m`.
    pub fn reduce_mod(&self, m: &Int) -> IntegerMatrix {
        let cols = self
            .cols
            .iter()
            .map(|c| c.iter().map(|(i, v)| (*i, v.rem_euclid(m))).filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        IntegerMatrix { rows: self.rows, cols }
    }

    /// Block matrix `[[a, b], [c, d]]`; every block must be supplied with
    /// consistent dimensions.
    pub fn block(a: &IntegerMatrix, b: &IntegerMatrix, c: &IntegerMatrix, d: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(a.rows, b.rows);
        assert_eq!(c.rows, d.rows);
        assert_eq!(a.cols(), c.cols());
        assert_eq!(b.cols(), d.cols());
        let top = a.rows;
        let mut cols = Vec::with_capacity(a.cols() + b.cols());
        for (upper, lower) in a.cols.iter().zip(&c.cols).chain(b.cols.iter().zip(&d.cols)) {
            let mut col = upper.clone();
            col.extend(lower.iter().map(|(i, v)| (i + top, v.clone())));
            cols.push(col);
        }
        IntegerMatrix { rows: a.rows + c.rows, cols }
    }

    pub fn hstack(a: &IntegerMatrix, b: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(a.rows, b.rows);
        let mut cols = a.cols.clone();
        cols.extend(b.cols.iter().cloned());
        IntegerMatrix { rows: a.rows, cols }
    }

    /// Keeps the listed columns, in order.
    pub fn select_columns(&self, idx: &[usize]) -> IntegerMatrix {
        IntegerMatrix { rows: self.rows, cols: idx.iter().map(|&j| self.cols[j].clone()).collect() }
    }

    /// Keeps the listed rows, renumbered in the given order.
    pub fn select_rows(&self, idx: &[usize]) -> IntegerMatrix {
        let mut pos = vec![usize::MAX; self.rows];
        for (new, &old) in idx.iter().enumerate() {
            pos[old] = new;
        }
        let t =
            self.triplets().filter(|(i, _, _)| pos[*i] != usize::MAX).map(|(i, j, v)| (pos[i], j, v.clone())).collect();
        Self::from_triplets(idx.len(), self.cols(), t)
    }
}

/// `a + s * b` for sorted sparse columns.
pub(crate) fn merge_scaled(a: &[(usize, Int)], b: &[(usize, Int)], s: &Int) -> Vec<(usize, Int)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut p, mut q) = (0, 0);
    while p < a.len() || q < b.len() {
        let ra = a.get(p).map_or(usize::MAX, |e| e.0);
        let rb = b.get(q).map_or(usize::MAX, |e| e.0);
        if ra < rb {
            out.push(a[p].clone());
            p += 1;
        } else if rb < ra {
            out.push((rb, &b[q].1 * s));
            q += 1;
        } else {
            let v = &a[p].1 + &(&b[q].1 * s);
            if !v.is_zero() {
                out.push((ra, v));
            }
            p += 1;
            q += 1;
        }
    }
    out
}

impl fmt::Debug for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntegerMatrix {}x{} [", self.rows, self.cols())?;
        if self.rows * self.cols() <= 400 {
            for row in self.to_dense() {
                write!(f, " ")?;
                for v in row {
                    write!(f, " {v:>3}")?;
                }
                writeln!(f)?;
            }
        } else {
            writeln!(f, "  ({} nonzeros)", self.nnz())?;
        }
        write!(f, "]")
    }
}
