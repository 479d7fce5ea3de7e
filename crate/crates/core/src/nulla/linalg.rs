//! Column-incremental elimination over `F_p`.
//!
//! Columns arrive one at a time and are reduced against the pivots created
//! so far, in creation order. A column with a nonzero residual becomes a new
//! pivot on its lowest nonzero row. The right-hand side is kept reduced
//! against every pivot, so consistency is known after each column and a
//! solution can be read back at any point.
//!
//! Rows are dense `u32` indices handed out by the caller. Both engines
//! apply the same pivot rule and therefore return identical solutions.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

const NONE: u32 = u32::MAX;

/// Common interface of the elimination engines.
pub trait Eliminator {
    /// Adds a column; returns true if it increased the rank.
    fn push_column(&mut self, column: &[(u32, u32)]) -> bool;
    fn rank(&self) -> usize;
    fn columns(&self) -> usize;
    /// True once the right-hand side lies in the span of the columns so far.
    fn is_consistent(&self) -> bool;
    /// Coefficients, one per pushed column, reproducing the right-hand side.
    fn solution(&self) -> Option<Vec<u32>>;
}

#[inline]
fn mul(a: u32, b: u32, p: u32) -> u32 {
    (a as u64 * b as u64 % p as u64) as u32
}

#[inline]
fn sub_mul(acc: u32, c: u32, v: u32, p: u32) -> u32 {
    let t = mul(c, v, p);
    if acc >= t {
        acc - t
    } else {
        acc + p - t
    }
}

fn inv(a: u32, p: u32) -> u32 {
    crate::field::inv_mod(a, p).expect("nonzero residue")
}

struct Pivot {
    row: u32,
    column: u32,
    /// Inverse of the residual's value at `row`; `entries` are scaled by it.
    inv: u32,
    entries: Vec<(u32, u32)>,
    /// `(j, c)`: the residual is the column minus `Σ c·b_j`.
    history: Vec<(u32, u32)>,
}

pub struct SparseEchelon {
    p: u32,
    pivots: Vec<Pivot>,
    pivot_at_row: Vec<u32>,
    acc: Vec<u32>,
    marked: Vec<bool>,
    queued: Vec<bool>,
    rhs: Vec<u32>,
    rhs_nonzero: usize,
    rhs_coeffs: Vec<u32>,
    ncols: usize,
}

impl SparseEchelon {
    pub fn new(p: u32, rhs: &[(u32, u32)]) -> Self {
        let mut e = SparseEchelon {
            p,
            pivots: Vec::new(),
            pivot_at_row: Vec::new(),
            acc: Vec::new(),
            marked: Vec::new(),
            queued: Vec::new(),
            rhs: Vec::new(),
            rhs_nonzero: 0,
            rhs_coeffs: Vec::new(),
            ncols: 0,
        };
        for &(r, v) in rhs {
            e.grow(r);
            let old = e.rhs[r as usize];
            let new = (old + v % p) % p;
            e.rhs[r as usize] = new;
            e.rhs_nonzero = e.rhs_nonzero + (new != 0) as usize - (old != 0) as usize;
        }
        e
    }

    fn grow(&mut self, row: u32) {
        let need = row as usize + 1;
        if self.acc.len() < need {
            self.acc.resize(need, 0);
            self.marked.resize(need, false);
            self.pivot_at_row.resize(need, NONE);
            self.rhs.resize(need, 0);
        }
    }
}

impl Eliminator for SparseEchelon {
    fn push_column(&mut self, column: &[(u32, u32)]) -> bool {
        let p = self.p;
        let col_index = self.ncols as u32;
        self.ncols += 1;
        let mut touched: Vec<u32> = Vec::with_capacity(column.len() * 4);
        let mut heap = BinaryHeap::new();
        for &(r, v) in column {
            self.grow(r);
            let ri = r as usize;
            self.acc[ri] = (self.acc[ri] + v % p) % p;
            if !self.marked[ri] {
                self.marked[ri] = true;
                touched.push(r);
            }
            let piv = self.pivot_at_row[ri];
            if piv != NONE && !self.queued[piv as usize] {
                self.queued[piv as usize] = true;
                heap.push(Reverse(piv));
            }
        }
        let mut history = Vec::new();
        while let Some(Reverse(i)) = heap.pop() {
            self.queued[i as usize] = false;
            let pivot = &self.pivots[i as usize];
            let c = self.acc[pivot.row as usize];
            if c == 0 {
                continue;
            }
            history.push((i, c));
            for &(r, v) in &pivot.entries {
                let ri = r as usize;
                self.acc[ri] = sub_mul(self.acc[ri], c, v, p);
                if !self.marked[ri] {
                    self.marked[ri] = true;
                    touched.push(r);
                }
                let j = self.pivot_at_row[ri];
                if j != NONE && j > i && !self.queued[j as usize] {
                    self.queued[j as usize] = true;
                    heap.push(Reverse(j));
                }
            }
        }
        touched.sort_unstable();
        let mut residual = Vec::new();
        for r in touched {
            let ri = r as usize;
            if self.acc[ri] != 0 {
                residual.push((r, self.acc[ri]));
            }
            self.acc[ri] = 0;
            self.marked[ri] = false;
        }
        let Some(&(row, lead)) = residual.first() else {
            return false;
        };
        let inv_lead = inv(lead, p);
        let entries: Vec<(u32, u32)> = residual
            .into_iter()
            .map(|(r, v)| (r, mul(v, inv_lead, p)))
            .collect();
        let index = self.pivots.len() as u32;
        self.pivot_at_row[row as usize] = index;
        self.queued.push(false);
        // Keep the right-hand side reduced against the new pivot.
        let a = self.rhs[row as usize];
        if a != 0 {
            for &(r, v) in &entries {
                let ri = r as usize;
                let old = self.rhs[ri];
                let new = sub_mul(old, a, v, p);
                self.rhs[ri] = new;
                self.rhs_nonzero = self.rhs_nonzero + (new != 0) as usize - (old != 0) as usize;
            }
        }
        self.rhs_coeffs.push(a);
        self.pivots.push(Pivot {
            row,
            column: col_index,
            inv: inv_lead,
            entries,
            history,
        });
        true
    }

    fn rank(&self) -> usize {
        self.pivots.len()
    }

    fn columns(&self) -> usize {
        self.ncols
    }

    fn is_consistent(&self) -> bool {
        self.rhs_nonzero == 0
    }

    fn solution(&self) -> Option<Vec<u32>> {
        if !self.is_consistent() {
            return None;
        }
        let p = self.p;
        let mut x = vec![0u32; self.ncols];
        let mut a = self.rhs_coeffs.clone();
        for i in (0..self.pivots.len()).rev() {
            if a[i] == 0 {
                continue;
            }
            let pivot = &self.pivots[i];
            let s = mul(a[i], pivot.inv, p);
            let xc = &mut x[pivot.column as usize];
            *xc = (*xc + s) % p;
            for &(j, c) in &pivot.history {
                a[j as usize] = sub_mul(a[j as usize], s, c, p);
            }
        }
        Some(x)
    }
}

/// Dense bit-packed engine for `F_2`.
pub struct Gf2Echelon {
    pivots: Vec<(u32, Vec<u64>, Vec<u64>)>,
    rhs: Vec<u64>,
    rhs_combo: Vec<u64>,
    ncols: usize,
}

fn bit(v: &[u64], i: u32) -> bool {
    v.get(i as usize / 64)
        .is_some_and(|w| w >> (i % 64) & 1 == 1)
}

fn set_bit(v: &mut Vec<u64>, i: u32) {
    let w = i as usize / 64;
    if v.len() <= w {
        v.resize(w + 1, 0);
    }
    v[w] ^= 1 << (i % 64);
}

fn xor_into(dst: &mut Vec<u64>, src: &[u64]) {
    if dst.len() < src.len() {
        dst.resize(src.len(), 0);
    }
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= s;
    }
}

fn lowest_bit(v: &[u64]) -> Option<u32> {
    v.iter()
        .enumerate()
        .find(|(_, &w)| w != 0)
        .map(|(i, w)| i as u32 * 64 + w.trailing_zeros())
}

impl Gf2Echelon {
    pub fn new(rhs: &[(u32, u32)]) -> Self {
        let mut bits = Vec::new();
        for &(r, v) in rhs {
            if v % 2 == 1 {
                set_bit(&mut bits, r);
            }
        }
        Gf2Echelon {
            pivots: Vec::new(),
            rhs: bits,
            rhs_combo: Vec::new(),
            ncols: 0,
        }
    }
}

impl Eliminator for Gf2Echelon {
    fn push_column(&mut self, column: &[(u32, u32)]) -> bool {
        let mut v = Vec::new();
        for &(r, c) in column {
            if c % 2 == 1 {
                set_bit(&mut v, r);
            }
        }
        let mut combo = Vec::new();
        set_bit(&mut combo, self.ncols as u32);
        self.ncols += 1;
        for (row, b, cb) in &self.pivots {
            if bit(&v, *row) {
                xor_into(&mut v, b);
                xor_into(&mut combo, cb);
            }
        }
        let Some(row) = lowest_bit(&v) else {
            return false;
        };
        if bit(&self.rhs, row) {
            xor_into(&mut self.rhs, &v);
            xor_into(&mut self.rhs_combo, &combo);
        }
        self.pivots.push((row, v, combo));
        true
    }

    fn rank(&self) -> usize {
        self.pivots.len()
    }

    fn columns(&self) -> usize {
        self.ncols
    }

    fn is_consistent(&self) -> bool {
        self.rhs.iter().all(|&w| w == 0)
    }

    fn solution(&self) -> Option<Vec<u32>> {
        self.is_consistent().then(|| {
            (0..self.ncols as u32)
                .map(|c| bit(&self.rhs_combo, c) as u32)
                .collect()
        })
    }
}
