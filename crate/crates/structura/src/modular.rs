//! Prime-field linear algebra used for kernel certification. Kernel
//! dimensions mod p upper-bound the exact rational kernel dimension of
//! the same (denominator-cleared) system, which is the squeeze half of
//! the modular certificates.

use crate::linalg::{LinalgError, RatMatrix};
use crate::rat::{inv_mod, is_prime, rat_mod};

/// Sparse matrix over F_p, p prime and > 5.
#[derive(Debug, Clone)]
pub struct ModMatrix {
    pub modulus: u64,
    pub rows: usize,
    pub cols: usize,
    data: Vec<Vec<(usize, u64)>>,
}

impl ModMatrix {
    /// Reduces a rational matrix mod p.
    pub fn from_rat(m: &RatMatrix, p: u64) -> Result<Self, LinalgError> {
        if p <= 5 || !is_prime(p) {
            return Err(LinalgError::BadPrime(p));
        }
        let mut data = Vec::with_capacity(m.rows);
        for r in 0..m.rows {
            let mut row = Vec::with_capacity(m.row(r).len());
            for (c, v) in m.row(r) {
                let res = rat_mod(v, p).ok_or(LinalgError::BadPrime(p))?;
                if res != 0 {
                    row.push((*c, res));
                }
            }
            data.push(row);
        }
        Ok(ModMatrix { modulus: p, rows: m.rows, cols: m.cols, data })
    }

    pub fn row(&self, r: usize) -> &[(usize, u64)] {
        &self.data[r]
    }
}

/// Incremental row echelon accumulator over F_p. Rows are kept in
/// echelon (not fully reduced) form; kernel vectors are produced by
/// back-substitution on demand.
pub struct ModRef {
    p: u64,
    cols: usize,
    pivot_of_col: Vec<Option<usize>>,
    /// Echelon rows with leading 1, stored dense, sorted by pivot col.
    rows: Vec<(usize, Vec<u64>)>,
    /// Lazily reduced accumulators: entries are only taken mod p when
    /// read, so the elimination inner loop is a widening multiply-add.
    /// Safe because p < 2^31 and at most `cols` products (each < 2^62)
    /// accumulate per entry.
    scratch: Vec<u128>,
}

impl ModRef {
    pub fn new(cols: usize, p: u64) -> Self {
        assert!(p < 1 << 32, "modulus too large for lazy accumulation");
        ModRef { p, cols, pivot_of_col: vec![None; cols], rows: Vec::new(), scratch: vec![0; cols] }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn kernel_dim(&self) -> usize {
        self.cols - self.rows.len()
    }

    /// Folds a sparse row in; returns true when the rank increased.
    pub fn absorb(&mut self, row: &[(usize, u64)]) -> bool {
        let p = self.p;
        let pw = p as u128;
        let buf = &mut self.scratch;
        buf.iter_mut().for_each(|x| *x = 0);
        let mut first = self.cols;
        for &(c, v) in row {
            buf[c] += (v % p) as u128;
            if c < first {
                first = c;
            }
        }
        let mut c = first;
        while c < self.cols {
            let lead = (buf[c] % pw) as u64;
            if lead == 0 {
                buf[c] = 0;
                c += 1;
                continue;
            }
            match self.pivot_of_col[c] {
                Some(idx) => {
                    let factor = (p - lead) as u128;
                    buf[c] = 0;
                    let (_, prow) = &self.rows[idx];
                    for j in c + 1..self.cols {
                        let pv = prow[j];
                        if pv != 0 {
                            buf[j] += factor * pv as u128;
                        }
                    }
                    c += 1;
                }
                None => {
                    let inv = inv_mod(lead, p) as u128;
                    let mut newrow = vec![0u64; self.cols];
                    newrow[c] = 1;
                    for j in c + 1..self.cols {
                        let v = buf[j] % pw;
                        if v != 0 {
                            newrow[j] = (v * inv % pw) as u64;
                        }
                    }
                    let pos = self.rows.partition_point(|(pc, _)| *pc < c);
                    self.rows.insert(pos, (c, newrow));
                    for slot in self.pivot_of_col.iter_mut() {
                        if let Some(i) = slot {
                            if *i >= pos {
                                *i += 1;
                            }
                        }
                    }
                    self.pivot_of_col[c] = Some(pos);
                    return true;
                }
            }
        }
        false
    }

    pub fn free_cols(&self) -> Vec<usize> {
        (0..self.cols).filter(|&c| self.pivot_of_col[c].is_none()).collect()
    }

    /// Kernel vector with a 1 at free column f and zeros at the other
    /// free columns, found by back-substitution through the echelon rows.
    pub fn kernel_vector(&self, f: usize) -> Vec<u64> {
        assert!(self.pivot_of_col[f].is_none());
        let p = self.p;
        let mut v = vec![0u64; self.cols];
        v[f] = 1;
        for (pc, row) in self.rows.iter().rev() {
            // Lazy accumulation: each product is < 2^64 and there are
            // at most `cols` of them, so the u128 sum cannot overflow.
            let mut acc: u128 = 0;
            for j in pc + 1..self.cols {
                if row[j] != 0 && v[j] != 0 {
                    acc += row[j] as u128 * v[j] as u128;
                }
            }
            v[*pc] = (p - (acc % p as u128) as u64) % p;
        }
        v
    }

    pub fn kernel_basis(&self) -> Vec<Vec<u64>> {
        self.free_cols().into_iter().map(|f| self.kernel_vector(f)).collect()
    }
}

/// Kernel basis of m reduced mod p. The basis size is always >= the
/// dimension of the exact rational kernel.
pub fn kernel_basis_mod(m: &RatMatrix, p: u64) -> Result<Vec<Vec<u64>>, LinalgError> {
    let mm = ModMatrix::from_rat(m, p)?;
    let mut elim = ModRef::new(m.cols, p);
    for r in 0..mm.rows {
        elim.absorb(mm.row(r));
    }
    Ok(elim.kernel_basis())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::kernel_basis;
    use crate::rat::{rat_i, Rat};

    fn m(rows: &[&[i64]]) -> RatMatrix {
        let cols = rows.first().map(|r| r.len()).unwrap_or(0);
        let dense: Vec<Vec<Rat>> = rows.iter().map(|r| r.iter().map(|&x| rat_i(x)).collect()).collect();
        RatMatrix::from_dense(&dense, cols)
    }

    #[test]
    fn kernel_mod_matches_rational_kernel() {
        let mat = m(&[&[1, 2], &[2, 4]]);
        let k = kernel_basis_mod(&mat, 7).unwrap();
        assert_eq!(k.len(), 1);
        // (-2, 1) mod 7 = (5, 1)
        assert_eq!(k[0], vec![5, 1]);
    }

    #[test]
    fn identity_has_empty_kernel_mod_p() {
        let mat = m(&[&[1, 0], &[0, 1]]);
        assert!(kernel_basis_mod(&mat, 1_073_741_827).unwrap().is_empty());
    }

    #[test]
    fn reduction_can_only_enlarge_the_kernel() {
        // [[p, 0], [0, 1]] has exact kernel 0 but kernel dim 1 mod p.
        let p = 1_073_741_827i64;
        let mat = m(&[&[p, 0], &[0, 1]]);
        assert!(kernel_basis(&mat).is_empty());
        assert_eq!(kernel_basis_mod(&mat, p as u64).unwrap().len(), 1);
    }

    #[test]
    fn bad_primes_rejected() {
        let mat = m(&[&[1, 2]]);
        assert_eq!(kernel_basis_mod(&mat, 5), Err(LinalgError::BadPrime(5)));
        assert_eq!(kernel_basis_mod(&mat, 9), Err(LinalgError::BadPrime(9)));
        // p dividing a denominator is inadmissible.
        let frac = RatMatrix::from_dense(&[vec![crate::rat::rat(1, 7), rat_i(1)]], 2);
        assert_eq!(kernel_basis_mod(&frac, 7), Err(LinalgError::BadPrime(7)));
    }

    #[test]
    fn kernel_vectors_satisfy_system_mod_p() {
        let mat = m(&[&[1, 2, 3], &[4, 5, 6]]);
        let p = 1_073_741_827u64;
        for v in kernel_basis_mod(&mat, p).unwrap() {
            for r in 0..mat.rows {
                let mut acc = 0u128;
                for (c, val) in mat.row(r) {
                    let res = rat_mod(val, p).unwrap();
                    acc = (acc + res as u128 * v[*c] as u128) % p as u128;
                }
                assert_eq!(acc, 0);
            }
        }
    }
}
