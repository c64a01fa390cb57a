//! Exact dense linear algebra over the rationals: reduced row echelon form,
//! rank, kernel bases, and an incremental echelon span.
//!
//! Everything here is fraction-exact; there are no tolerances anywhere.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::element::Coeff;

/// Dense row-major matrix of exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Vec<Coeff>>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![vec![Coeff::zero(); cols]; rows],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Coeff>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        debug_assert!(rows.iter().all(|r| r.len() == cols));
        Matrix {
            rows: rows.len(),
            cols,
            data: rows,
        }
    }

    pub fn get(&self, r: usize, c: usize) -> &Coeff {
        &self.data[r][c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Coeff) {
        self.data[r][c] = v;
    }

    pub fn row(&self, r: usize) -> &[Coeff] {
        &self.data[r]
    }

    /// In-place reduced row echelon form; returns the pivot columns in order.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            let Some(p) = (row..self.rows).find(|&r| !self.data[r][col].is_zero()) else {
                continue;
            };
            self.data.swap(row, p);
            let inv = self.data[row][col].recip();
            for c in col..self.cols {
                let v = &self.data[row][c] * &inv;
                self.data[row][c] = v;
            }
            for r in 0..self.rows {
                if r != row && !self.data[r][col].is_zero() {
                    let factor = self.data[r][col].clone();
                    for c in col..self.cols {
                        let v = &self.data[r][c] - &factor * &self.data[row][c];
                        self.data[r][c] = v;
                    }
                }
            }
            pivots.push(col);
            row += 1;
            if row == self.rows {
                break;
            }
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// A basis of `{x : Mx = 0}`, one vector per free column, each normalized
    /// with a 1 in its free coordinate.
    pub fn kernel_basis(&self) -> Vec<Vec<Coeff>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let pivot_row_of = |col: usize| pivots.iter().position(|&p| p == col);
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_row_of(free).is_some() {
                continue;
            }
            let mut x = vec![Coeff::zero(); self.cols];
            x[free] = Coeff::from_integer(1.into());
            for (r, &pc) in pivots.iter().enumerate() {
                x[pc] = -m.data[r][free].clone();
            }
            basis.push(x);
        }
        basis
    }
}

/// Incremental echelon span over a fixed coordinate dimension. Rows are kept
/// reduced, so membership tests and rank are cheap.
#[derive(Debug, Clone)]
pub struct Echelon {
    dim: usize,
    // (pivot column, row normalized to a unit pivot), sorted by pivot.
    rows: Vec<(usize, Vec<Coeff>)>,
}

impl Echelon {
    pub fn new(dim: usize) -> Self {
        Echelon { dim, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the span without inserting it.
    pub fn residue(&self, mut v: Vec<Coeff>) -> Vec<Coeff> {
        debug_assert_eq!(v.len(), self.dim);
        for (pivot, row) in &self.rows {
            if !v[*pivot].is_zero() {
                let factor = v[*pivot].clone();
                for c in *pivot..self.dim {
                    let u = &v[c] - &factor * &row[c];
                    v[c] = u;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: Vec<Coeff>) -> bool {
        self.residue(v).iter().all(Coeff::is_zero)
    }

    /// Inserts `v` if it enlarges the span; returns whether it did.
    pub fn insert(&mut self, v: Vec<Coeff>) -> bool {
        let mut v = self.residue(v);
        let Some(pivot) = v.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        let inv = v[pivot].recip();
        for c in pivot..self.dim {
            let u = &v[c] * &inv;
            v[c] = u;
        }
        // Back-substitute into earlier rows so the span stays fully reduced.
        for (_, row) in &mut self.rows {
            if !row[pivot].is_zero() {
                let factor = row[pivot].clone();
                for c in pivot..self.dim {
                    let u = &row[c] - &factor * &v[c];
                    row[c] = u;
                }
            }
        }
        let at = self
            .rows
            .binary_search_by(|(p, _)| p.cmp(&pivot))
            .unwrap_err();
        self.rows.insert(at, (pivot, v));
        true
    }
}
