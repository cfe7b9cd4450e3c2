//! Sparse Smith normal form.
//!
//! Elimination prefers unit pivots in short columns (Markowitz-style) and
//! falls back to Euclidean reduction on the smallest remaining entry. Row and
//! column operations are recorded as logs instead of materialized matrices,
//! so the transforms can be applied to vectors (and inverted) at the cost of
//! a replay.

use alloc::collections::BinaryHeap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;

use super::int::Int;
use super::matrix::{merge_scaled, IntegerMatrix};
use crate::error::{Limits, Result};

/// Elementary unimodular operation on two coordinates.
#[derive(Clone, Debug)]
pub(crate) enum Op {
    Add {
        target: usize,
        source: usize,
        factor: Int,
    },
    Negate(usize),
    /// `(x_i, x_j) <- (a x_i + b x_j, c x_i + d x_j)` for rows; for columns
    /// `(col_i, col_j) <- (a col_i + b col_j, c col_i + d col_j)`.
    Mix {
        i: usize,
        j: usize,
        a: Int,
        b: Int,
        c: Int,
        d: Int,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pivot {
    pub row: usize,
    pub col: usize,
    /// Positive diagonal value.
    pub value: Int,
}

/// Result of diagonalizing a matrix `M`: `U M V = D`, where `D` has exactly
/// one nonzero entry per pivot at `(pivot.row, pivot.col)`. Pivots are
/// ordered so their values form a divisibility chain.
#[derive(Clone, Debug)]
pub struct Reduction {
    rows: usize,
    cols: usize,
    row_ops: Option<Vec<Op>>,
    col_ops: Option<Vec<Op>>,
    pivots: Vec<Pivot>,
}

impl Reduction {
    pub fn compute(m: &IntegerMatrix, track_rows: bool, track_cols: bool, limits: &Limits) -> Result<Reduction> {
        let rows = m.rows();
        let cols = m.cols();
        let mut e = Eliminator::new(m.clone(), track_rows, track_cols, *limits)?;
        e.run()?;
        let Eliminator { row_ops, col_ops, pivots, .. } = e;
        let mut red = Reduction { rows, cols, row_ops, col_ops, pivots: Vec::new() };
        red.normalize(pivots);
        Ok(red)
    }

    fn normalize(&mut self, raw: Vec<(usize, usize, Int)>) {
        let mut piv: Vec<Pivot> = Vec::with_capacity(raw.len());
        for (row, col, v) in raw {
            if v.is_negative() {
                if let Some(ops) = &mut self.col_ops {
                    ops.push(Op::Negate(col));
                }
            }
            piv.push(Pivot { row, col, value: v.abs() });
        }
        let big: Vec<usize> = (0..piv.len()).filter(|&k| !piv[k].value.is_one()).collect();
        for a in 0..big.len() {
            for b in a + 1..big.len() {
                let (p, q) = (big[a], big[b]);
                let (x, y) = (piv[p].value.clone(), piv[q].value.clone());
                if x.divides(&y) {
                    continue;
                }
                let (g, s, t) = Int::ext_gcd(&x, &y);
                let (r1, c1, r2, c2) = (piv[p].row, piv[p].col, piv[q].row, piv[q].col);
                let y_g = y.exact_div(&g).expect("gcd divides");
                let x_g = x.exact_div(&g).expect("gcd divides");
                if let Some(ops) = &mut self.col_ops {
                    ops.push(Op::Add { target: c1, source: c2, factor: Int::ONE });
                }
                if let Some(ops) = &mut self.row_ops {
                    ops.push(Op::Mix { i: r1, j: r2, a: s, b: t.clone(), c: -&y_g, d: x_g });
                }
                if let Some(ops) = &mut self.col_ops {
                    ops.push(Op::Add { target: c2, source: c1, factor: -(&t * &y_g) });
                }
                piv[q].value = &x * &y_g;
                piv[p].value = g;
            }
        }
        // A divisibility chain is non-decreasing, so a stable sort keeps it.
        piv.sort_by(|a, b| a.value.cmp(&b.value));
        self.pivots = piv;
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivots(&self) -> &[Pivot] {
        &self.pivots
    }

    /// Diagonal values greater than one, in divisibility order.
    pub fn nonunit_values(&self) -> Vec<Int> {
        self.pivots.iter().filter(|p| !p.value.is_one()).map(|p| p.value.clone()).collect()
    }

    /// Rows that carry no pivot, ascending.
    pub fn free_rows(&self) -> Vec<usize> {
        let mut used = vec![false; self.rows];
        for p in &self.pivots {
            used[p.row] = true;
        }
        (0..self.rows).filter(|&r| !used[r]).collect()
    }

    /// Columns that carry no pivot, ascending.
    pub fn free_cols(&self) -> Vec<usize> {
        let mut used = vec![false; self.cols];
        for p in &self.pivots {
            used[p.col] = true;
        }
        (0..self.cols).filter(|&c| !used[c]).collect()
    }

    fn row_log(&self) -> &[Op] {
        self.row_ops.as_deref().expect("row transform was not tracked")
    }

    fn col_log(&self) -> &[Op] {
        self.col_ops.as_deref().expect("column transform was not tracked")
    }

    /// `z <- U z`.
    pub fn apply_u(&self, z: &mut [Int]) {
        assert_eq!(z.len(), self.rows);
        for op in self.row_log() {
            match op {
                Op::Add { target, source, factor } => {
                    if !z[*source].is_zero() {
                        let d = factor * &z[*source];
                        z[*target] += &d;
                    }
                }
                Op::Negate(i) => z[*i] = -&z[*i],
                Op::Mix { i, j, a, b, c, d } => {
                    let (x, y) = (z[*i].clone(), z[*j].clone());
                    z[*i] = &(a * &x) + &(b * &y);
                    z[*j] = &(c * &x) + &(d * &y);
                }
            }
        }
    }

    /// `z <- U^{-1} z`.
    pub fn apply_u_inv(&self, z: &mut [Int]) {
        assert_eq!(z.len(), self.rows);
        for op in self.row_log().iter().rev() {
            match op {
                Op::Add { target, source, factor } => {
                    if !z[*source].is_zero() {
                        let d = factor * &z[*source];
                        z[*target] -= &d;
                    }
                }
                Op::Negate(i) => z[*i] = -&z[*i],
                Op::Mix { i, j, a, b, c, d } => {
                    let det = &(a * d) - &(b * c);
                    let (x, y) = (z[*i].clone(), z[*j].clone());
                    z[*i] = &det * &(&(d * &x) - &(b * &y));
                    z[*j] = &det * &(&(a * &y) - &(c * &x));
                }
            }
        }
    }

    /// `w <- V w`.
    pub fn apply_v(&self, w: &mut [Int]) {
        assert_eq!(w.len(), self.cols);
        for op in self.col_log().iter().rev() {
            match op {
                Op::Add { target, source, factor } => {
                    if !w[*target].is_zero() {
                        let d = factor * &w[*target];
                        w[*source] += &d;
                    }
                }
                Op::Negate(i) => w[*i] = -&w[*i],
                Op::Mix { i, j, a, b, c, d } => {
                    let (x, y) = (w[*i].clone(), w[*j].clone());
                    w[*i] = &(a * &x) + &(c * &y);
                    w[*j] = &(b * &x) + &(d * &y);
                }
            }
        }
    }

    /// `w <- V^{-1} w`.
    pub fn apply_v_inv(&self, w: &mut [Int]) {
        assert_eq!(w.len(), self.cols);
        for op in self.col_log() {
            match op {
                Op::Add { target, source, factor } => {
                    if !w[*target].is_zero() {
                        let d = factor * &w[*target];
                        w[*source] -= &d;
                    }
                }
                Op::Negate(i) => w[*i] = -&w[*i],
                Op::Mix { i, j, a, b, c, d } => {
                    let det = &(a * d) - &(c * b);
                    let (x, y) = (w[*i].clone(), w[*j].clone());
                    w[*i] = &det * &(&(d * &x) - &(c * &y));
                    w[*j] = &det * &(&(a * &y) - &(b * &x));
                }
            }
        }
    }

    /// Row order putting pivot `t` at position `t`, remaining rows after.
    fn row_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = self.pivots.iter().map(|p| p.row).collect();
        order.extend(self.free_rows());
        order
    }

    fn col_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = self.pivots.iter().map(|p| p.col).collect();
        order.extend(self.free_cols());
        order
    }

    /// Materialized `(S, U, V)` with `S = U M V` in Smith normal form.
    pub fn materialize(&self) -> (IntegerMatrix, IntegerMatrix, IntegerMatrix) {
        let rorder = self.row_order();
        let mut ucols = Vec::with_capacity(self.rows);
        for k in 0..self.rows {
            let mut e = vec![Int::ZERO; self.rows];
            e[k] = Int::ONE;
            self.apply_u(&mut e);
            ucols.push(rorder.iter().map(|&r| e[r].clone()).collect::<Vec<_>>());
        }
        let u = IntegerMatrix::from_columns(self.rows, &ucols);

        let corder = self.col_order();
        let mut vcols = Vec::with_capacity(self.cols);
        for &c in &corder {
            let mut e = vec![Int::ZERO; self.cols];
            e[c] = Int::ONE;
            self.apply_v(&mut e);
            vcols.push(e);
        }
        let v = IntegerMatrix::from_columns(self.cols, &vcols);

        let t = self.pivots.iter().enumerate().map(|(k, p)| (k, k, p.value.clone())).collect();
        let s = IntegerMatrix::from_triplets(self.rows, self.cols, t);
        (s, u, v)
    }
}

struct Eliminator {
    cols: Vec<Vec<(usize, Int)>>,
    /// Columns with an entry in each row. Lists may hold stale or repeated
    /// indices; `row` cleans them on read.
    row_lists: Vec<Vec<usize>>,
    col_active: Vec<bool>,
    deferred: Vec<bool>,
    heap: BinaryHeap<Reverse<(usize, usize)>>,
    nnz: u64,
    limits: Limits,
    row_ops: Option<Vec<Op>>,
    col_ops: Option<Vec<Op>>,
    pivots: Vec<(usize, usize, Int)>,
}

impl Eliminator {
    fn new(m: IntegerMatrix, track_rows: bool, track_cols: bool, limits: Limits) -> Result<Self> {
        let nrows = m.rows();
        let nnz = m.nnz() as u64;
        limits.check("smith normal form", nnz)?;
        let cols = m.into_columns();
        let mut row_lists = vec![Vec::new(); nrows];
        let mut heap = BinaryHeap::with_capacity(cols.len());
        for (j, col) in cols.iter().enumerate() {
            for (i, _) in col {
                row_lists[*i].push(j);
            }
            heap.push(Reverse((col.len(), j)));
        }
        let n = cols.len();
        Ok(Eliminator {
            cols,
            row_lists,
            col_active: vec![true; n],
            deferred: vec![false; n],
            heap,
            nnz,
            limits,
            row_ops: track_rows.then(Vec::new),
            col_ops: track_cols.then(Vec::new),
            pivots: Vec::new(),
        })
    }

    fn position(&self, r: usize, c: usize) -> Option<usize> {
        self.cols[c].binary_search_by_key(&r, |e| e.0).ok()
    }

    fn get(&self, r: usize, c: usize) -> Int {
        match self.position(r, c) {
            Some(p) => self.cols[c][p].1.clone(),
            None => Int::ZERO,
        }
    }

    /// Columns with a nonzero entry in row `r`, ascending.
    fn row(&mut self, r: usize) -> Vec<usize> {
        let mut list = core::mem::take(&mut self.row_lists[r]);
        list.sort_unstable();
        list.dedup();
        list.retain(|&c| self.position(r, c).is_some());
        self.row_lists[r] = list.clone();
        list
    }

    /// Upper bound on the number of entries in row `r`.
    fn row_count(&self, r: usize) -> usize {
        self.row_lists[r].len()
    }

    fn touched(&mut self, j: usize) {
        self.deferred[j] = false;
        self.heap.push(Reverse((self.cols[j].len(), j)));
    }

    fn set_column(&mut self, j: usize, new: Vec<(usize, Int)>) -> Result<()> {
        let old = core::mem::take(&mut self.cols[j]);
        let mut p = 0;
        for (r, _) in &new {
            while p < old.len() && old[p].0 < *r {
                p += 1;
            }
            if p == old.len() || old[p].0 != *r {
                self.row_lists[*r].push(j);
            }
        }
        self.nnz = self.nnz + new.len() as u64 - old.len() as u64;
        self.cols[j] = new;
        self.limits.check("smith normal form fill-in", self.nnz)?;
        self.touched(j);
        Ok(())
    }

    /// `col_target += factor * col_source`.
    fn col_add(&mut self, target: usize, source: usize, factor: Int) -> Result<()> {
        let new = merge_scaled(&self.cols[target], &self.cols[source], &factor);
        if let Some(ops) = &mut self.col_ops {
            ops.push(Op::Add { target, source, factor });
        }
        self.set_column(target, new)
    }

    fn finalize(&mut self, i: usize, j: usize, value: Int) {
        debug_assert_eq!(self.cols[j].len(), 1);
        self.cols[j].clear();
        self.nnz -= 1;
        self.col_active[j] = false;
        self.pivots.push((i, j, value));
    }

    fn unit_pivot(&mut self, i: usize, j: usize, u: Int) -> Result<()> {
        for l in self.row(i) {
            if l != j {
                let a = self.get(i, l);
                self.col_add(l, j, -(&a * &u))?;
            }
        }
        let entries = core::mem::take(&mut self.cols[j]);
        self.nnz -= entries.len() as u64;
        if let Some(ops) = &mut self.row_ops {
            for (k, a) in &entries {
                if *k != i {
                    ops.push(Op::Add { target: *k, source: i, factor: -(a * &u) });
                }
            }
        }
        self.nnz += 1;
        self.cols[j] = vec![(i, u.clone())];
        self.finalize(i, j, u);
        Ok(())
    }

    /// Euclidean reduction at `(i, j)`. Row `i` is cleared by column
    /// operations first, so each row operation only touches column `j`.
    fn general_pivot(&mut self, mut i: usize, mut j: usize) -> Result<()> {
        loop {
            let p = self.get(i, j);
            for l in self.row(i) {
                if l != j {
                    let (q, _) = self.get(i, l).div_rem_euclid(&p);
                    if !q.is_zero() {
                        self.col_add(l, j, -q)?;
                    }
                }
            }
            let rest = self.row(i).into_iter().filter(|&l| l != j).min_by_key(|&l| self.get(i, l).abs());
            if let Some(l) = rest {
                j = l;
                continue;
            }
            // Row `i` is now `p e_j`, so the row operations only change
            // column `j` and can be applied in one pass.
            let mut reduced = Vec::with_capacity(self.cols[j].len());
            for (k, a) in &self.cols[j] {
                if *k == i {
                    reduced.push((*k, a.clone()));
                    continue;
                }
                let (q, r) = a.div_rem_euclid(&p);
                if !q.is_zero() {
                    if let Some(ops) = &mut self.row_ops {
                        ops.push(Op::Add { target: *k, source: i, factor: -q });
                    }
                }
                if !r.is_zero() {
                    reduced.push((*k, r));
                }
            }
            self.set_column(j, reduced)?;
            if let Some((k, _)) = self.cols[j].iter().filter(|(k, _)| *k != i).min_by(|x, y| x.1.abs().cmp(&y.1.abs()))
            {
                i = *k;
                continue;
            }
            self.finalize(i, j, p);
            return Ok(());
        }
    }

    fn run(&mut self) -> Result<()> {
        loop {
            while let Some(Reverse((cnt, j))) = self.heap.pop() {
                if !self.col_active[j] || self.deferred[j] || self.cols[j].len() != cnt {
                    continue;
                }
                if cnt == 0 {
                    self.col_active[j] = false;
                    continue;
                }
                let mut best: Option<(usize, usize)> = None;
                for (k, v) in &self.cols[j] {
                    if v.is_unit() {
                        let rc = self.row_count(*k);
                        if best.is_none_or(|(_, b)| rc < b) {
                            best = Some((*k, rc));
                        }
                    }
                }
                match best {
                    Some((k, _)) => {
                        let u = self.get(k, j);
                        self.unit_pivot(k, j, u)?;
                    }
                    None => self.deferred[j] = true,
                }
            }
            // Only non-unit entries remain: Euclidean step on the smallest.
            let mut best: Option<(Int, usize, usize, usize)> = None;
            for j in 0..self.cols.len() {
                if !self.col_active[j] {
                    continue;
                }
                let cc = self.cols[j].len();
                if cc == 0 {
                    self.col_active[j] = false;
                    continue;
                }
                for (k, v) in &self.cols[j] {
                    let a = v.abs();
                    let cost = self.row_count(*k).saturating_sub(1) * (cc - 1);
                    let better = match &best {
                        None => true,
                        Some((b, bc, _, _)) => a < *b || (a == *b && cost < *bc),
                    };
                    if better {
                        best = Some((a, cost, *k, j));
                    }
                }
            }
            match best {
                Some((_, _, i, j)) => self.general_pivot(i, j)?,
                None => return Ok(()),
            }
        }
    }
}

/// Smith normal form `S = U M V` with `U`, `V` unimodular and the diagonal of
/// `S` a divisibility chain of non-negative values (zeros last).
pub fn smith_normal_form(m: &IntegerMatrix, limits: &Limits) -> Result<(IntegerMatrix, IntegerMatrix, IntegerMatrix)> {
    let red = Reduction::compute(m, true, true, limits)?;
    Ok(red.materialize())
}
