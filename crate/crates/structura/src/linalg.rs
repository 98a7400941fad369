//! Exact rational linear algebra: sparse matrices, incremental reduced
//! echelon accumulation, kernel bases and subspace comparisons.
//!
//! Rows of tall systems are folded one at a time into the accumulator,
//! so memory stays proportional to cols^2 regardless of row count.

use crate::rat::Rat;
use num::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinalgError {
    #[error("vector length {got} does not match expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("modulus {0} is not an admissible prime (must be prime, > 5, coprime to all denominators)")]
    BadPrime(u64),
}

/// A sparse row: (column, value) pairs, sorted by column, no zeros.
pub type SparseRow = Vec<(usize, Rat)>;

/// Sparse rational matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct RatMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<SparseRow>,
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![Vec::new(); rows] }
    }

    /// Builds from dense rows, dropping zeros.
    pub fn from_dense(rows: &[Vec<Rat>], cols: usize) -> Self {
        let data = rows
            .iter()
            .map(|r| {
                assert_eq!(r.len(), cols);
                r.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(c, v)| (c, v.clone())).collect()
            })
            .collect();
        RatMatrix { rows: rows.len(), cols, data }
    }

    pub fn from_sparse_rows(rows: Vec<SparseRow>, cols: usize) -> Self {
        RatMatrix { rows: rows.len(), cols, data: rows }
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rat) {
        assert!(r < self.rows && c < self.cols);
        let row = &mut self.data[r];
        match row.binary_search_by_key(&c, |e| e.0) {
            Ok(i) => {
                if v.is_zero() {
                    row.remove(i);
                } else {
                    row[i].1 = v;
                }
            }
            Err(i) => {
                if !v.is_zero() {
                    row.insert(i, (c, v));
                }
            }
        }
    }

    pub fn row(&self, r: usize) -> &SparseRow {
        &self.data[r]
    }

    pub fn rows_iter(&self) -> impl Iterator<Item = &SparseRow> {
        self.data.iter()
    }

    /// Exact matrix-vector product.
    pub fn apply(&self, v: &[Rat]) -> Result<Vec<Rat>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::DimensionMismatch { expected: self.cols, got: v.len() });
        }
        Ok(self
            .data
            .iter()
            .map(|row| {
                let mut acc = Rat::zero();
                for (c, val) in row {
                    acc += val * &v[*c];
                }
                acc
            })
            .collect())
    }
}

/// Incremental reduced row echelon accumulator over the rationals.
///
/// Pivot selection: first nonzero in column order, so results are
/// deterministic given identical input ordering.
#[derive(Debug, Clone)]
pub struct RatRref {
    cols: usize,
    /// Pivot rows sorted by pivot column; each normalized to leading 1
    /// and reduced against all others.
    rows: Vec<(usize, Vec<Rat>)>,
    pivot_of_col: Vec<Option<usize>>,
}

impl RatRref {
    pub fn new(cols: usize) -> Self {
        RatRref { cols, rows: Vec::new(), pivot_of_col: vec![None; cols] }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Folds a row in; returns true when it increased the rank.
    pub fn absorb_sparse(&mut self, row: &SparseRow) -> bool {
        let mut dense = vec![Rat::zero(); self.cols];
        for (c, v) in row {
            dense[*c] += v;
        }
        self.absorb_dense(dense)
    }

    pub fn absorb_dense(&mut self, mut row: Vec<Rat>) -> bool {
        assert_eq!(row.len(), self.cols);
        // Fully reduce against every existing pivot (ascending pivot
        // column) so the surviving leading entry sits at a free column
        // and the new row has zeros at all other pivot columns.
        for (pc, pivot_row) in &self.rows {
            if !row[*pc].is_zero() {
                let factor = std::mem::replace(&mut row[*pc], Rat::zero());
                for j in pc + 1..self.cols {
                    if !pivot_row[j].is_zero() {
                        let sub = &factor * &pivot_row[j];
                        row[j] -= sub;
                    }
                }
            }
        }
        let Some(c) = row.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        // New pivot: normalize, reduce the rows above, insert.
        let inv = row[c].recip();
        for j in c..self.cols {
            if !row[j].is_zero() {
                row[j] *= &inv;
            }
        }
        for (_, existing) in self.rows.iter_mut() {
            if !existing[c].is_zero() {
                let factor = std::mem::replace(&mut existing[c], Rat::zero());
                for j in c + 1..self.cols {
                    if !row[j].is_zero() {
                        let sub = &factor * &row[j];
                        existing[j] -= sub;
                    }
                }
            }
        }
        let pos = self.rows.partition_point(|(pc, _)| *pc < c);
        self.rows.insert(pos, (c, row));
        for slot in self.pivot_of_col.iter_mut() {
            if let Some(i) = slot {
                if *i >= pos {
                    *i += 1;
                }
            }
        }
        self.pivot_of_col[c] = Some(pos);
        true
    }

    pub fn pivot_cols(&self) -> Vec<usize> {
        self.rows.iter().map(|(c, _)| *c).collect()
    }

    /// The canonical kernel basis: one vector per free column f, with a 1
    /// at f, zeros at the other free columns, and the negated pivot-row
    /// entries at the pivot columns.
    pub fn kernel_basis(&self) -> Vec<Vec<Rat>> {
        let mut basis = Vec::new();
        for f in 0..self.cols {
            if self.pivot_of_col[f].is_some() {
                continue;
            }
            let mut v = vec![Rat::zero(); self.cols];
            v[f] = Rat::one();
            for (pc, row) in &self.rows {
                if !row[f].is_zero() {
                    v[*pc] = -row[f].clone();
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Reduces v against the accumulated rows; returns the residue.
    pub fn reduce(&self, v: &[Rat]) -> Result<Vec<Rat>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::DimensionMismatch { expected: self.cols, got: v.len() });
        }
        let mut out = v.to_vec();
        for (pc, row) in &self.rows {
            if !out[*pc].is_zero() {
                let factor = std::mem::replace(&mut out[*pc], Rat::zero());
                for j in pc + 1..self.cols {
                    if !row[j].is_zero() {
                        let sub = &factor * &row[j];
                        out[j] -= sub;
                    }
                }
            }
        }
        Ok(out)
    }

    /// The canonical reduced rows, for span comparison.
    pub fn canonical_rows(&self) -> &[(usize, Vec<Rat>)] {
        &self.rows
    }
}

/// Basis of {v : m v = 0}, canonical form, exact.
pub fn kernel_basis(m: &RatMatrix) -> Vec<Vec<Rat>> {
    let mut rref = RatRref::new(m.cols);
    for row in m.rows_iter() {
        rref.absorb_sparse(row);
    }
    rref.kernel_basis()
}

/// Exact rank over the rationals.
pub fn rank(m: &RatMatrix) -> usize {
    let mut rref = RatRref::new(m.cols);
    for row in m.rows_iter() {
        rref.absorb_sparse(row);
    }
    rref.rank()
}

fn rref_of(space: &[Vec<Rat>]) -> Result<RatRref, LinalgError> {
    let cols = space.first().map(|v| v.len()).unwrap_or(0);
    let mut rref = RatRref::new(cols);
    for v in space {
        if v.len() != cols {
            return Err(LinalgError::DimensionMismatch { expected: cols, got: v.len() });
        }
        rref.absorb_dense(v.clone());
    }
    Ok(rref)
}

/// True iff v is a rational linear combination of the space basis.
pub fn subspace_contains(space: &[Vec<Rat>], v: &[Rat]) -> Result<bool, LinalgError> {
    if space.is_empty() {
        return Ok(v.iter().all(|x| x.is_zero()));
    }
    let cols = space[0].len();
    if v.len() != cols {
        return Err(LinalgError::DimensionMismatch { expected: cols, got: v.len() });
    }
    let rref = rref_of(space)?;
    Ok(rref.reduce(v)?.iter().all(|x| x.is_zero()))
}

/// True iff the two spans coincide.
pub fn subspace_equal(a: &[Vec<Rat>], b: &[Vec<Rat>]) -> Result<bool, LinalgError> {
    if a.is_empty() && b.is_empty() {
        return Ok(true);
    }
    if !a.is_empty() && !b.is_empty() && a[0].len() != b[0].len() {
        return Err(LinalgError::DimensionMismatch { expected: a[0].len(), got: b[0].len() });
    }
    let ra = rref_of(a)?;
    let rb = rref_of(b)?;
    Ok(ra.canonical_rows() == rb.canonical_rows())
}
