//! Smith normal form over any signed integer type and the abelian invariants
//! it yields.

use std::fmt;

use num_integer::Integer;
use num_traits::{FromPrimitive, Signed};
use serde::Serialize;

use crate::presentation::Presentation;

/// Coefficient type for integer matrices: `i64`, `i128`, `BigInt`, ...
pub trait IntScalar: Integer + Signed + Clone + FromPrimitive + fmt::Debug + fmt::Display {}
impl<T: Integer + Signed + Clone + FromPrimitive + fmt::Debug + fmt::Display> IntScalar for T {}

/// Dense row-major integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: IntScalar> IntMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn from_rows(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        IntMatrix { rows: rows.len(), cols, data: rows.iter().flatten().cloned().collect() }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row[dst] += k * row[src]`
    fn add_row(&mut self, dst: usize, src: usize, k: &T) {
        for j in 0..self.cols {
            let v = self.get(dst, j).clone() + k.clone() * self.get(src, j).clone();
            self.set(dst, j, v);
        }
    }

    /// `col[dst] += k * col[src]`
    fn add_col(&mut self, dst: usize, src: usize, k: &T) {
        for i in 0..self.rows {
            let v = self.get(i, dst).clone() + k.clone() * self.get(i, src).clone();
            self.set(i, dst, v);
        }
    }
}

/// Diagonal `d_1 | d_2 | ...` (length `min(rows, cols)`, all `d_i >= 0`) of
/// the Smith normal form, computed by unimodular row and column operations.
pub fn smith_normal_form<T: IntScalar>(mut a: IntMatrix<T>) -> Vec<T> {
    let n = a.rows.min(a.cols);
    let mut diag = Vec::with_capacity(n);
    for t in 0..n {
        loop {
            let Some((pi, pj)) = min_nonzero(&a, t) else {
                diag.resize(n, T::zero());
                return diag;
            };
            a.swap_rows(t, pi);
            a.swap_cols(t, pj);
            let pivot = a.get(t, t).clone();
            let mut clean = true;
            for i in (t + 1)..a.rows {
                let q = a.get(i, t).div_floor(&pivot);
                if !q.is_zero() {
                    a.add_row(i, t, &-q);
                }
                clean &= a.get(i, t).is_zero();
            }
            for j in (t + 1)..a.cols {
                let q = a.get(t, j).div_floor(&pivot);
                if !q.is_zero() {
                    a.add_col(j, t, &-q);
                }
                clean &= a.get(t, j).is_zero();
            }
            if !clean {
                continue;
            }
            // pivot must divide the whole remaining block
            let bad_row = ((t + 1)..a.rows).find(|&i| ((t + 1)..a.cols).any(|j| !a.get(i, j).is_multiple_of(&pivot)));
            match bad_row {
                Some(i) => a.add_row(t, i, &T::one()),
                None => break,
            }
        }
        diag.push(a.get(t, t).abs());
    }
    diag
}

fn min_nonzero<T: IntScalar>(a: &IntMatrix<T>, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, T)> = None;
    for i in t..a.rows {
        for j in t..a.cols {
            let v = a.get(i, j).abs();
            if !v.is_zero() && best.as_ref().is_none_or(|(_, _, b)| v < *b) {
                best = Some((i, j, v));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// `Z^free_rank ⊕ Z_{d_1} ⊕ ... ⊕ Z_{d_k}` with `d_1 | ... | d_k`, all `d_i >= 2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AbelianInvariants<T> {
    pub free_rank: usize,
    pub torsion: Vec<T>,
}

impl<T: IntScalar> fmt::Display for AbelianInvariants<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if self.free_rank > 0 {
            parts.push(if self.free_rank == 1 { "Z".into() } else { format!("Z^{}", self.free_rank) });
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z_{d}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// Relators × generators matrix of exponent sums.
pub fn exponent_matrix<T: IntScalar>(p: &Presentation) -> IntMatrix<T> {
    let mut m = IntMatrix::zeros(p.relators().len(), p.rank());
    for (i, r) in p.relators().iter().enumerate() {
        for g in 0..p.rank() {
            m.set(i, g, T::from_i64(r.exponent_sum(g)).expect("exponent sum fits"));
        }
    }
    m
}

pub fn abelianization<T: IntScalar>(p: &Presentation) -> AbelianInvariants<T> {
    let diag = smith_normal_form(exponent_matrix::<T>(p));
    let nonzero = diag.iter().filter(|d| !d.is_zero()).count();
    AbelianInvariants {
        free_rank: p.rank() - nonzero,
        torsion: diag.into_iter().filter(|d| *d > T::one()).collect(),
    }
}
