//! Linear systems whose kernels are the delta-derivation spaces, the
//! centroid, and the generalized delta-derivation pair spaces. Rows are
//! generated on demand — both exactly over Q and reduced mod p — so the
//! solver can stream them without materializing n^3 x n^2 matrices.
//!
//! Unknown layout (shared with LinearMap::flatten): phi[r][c] sits at
//! index r * n + c; for pair systems chi comes first, phi is offset by
//! n^2.

use crate::algebra::Algebra;
use crate::linalg::{LinalgError, RatMatrix, SparseRow};
use crate::rat::{rat_mod, Rat};
use num::Zero;
use std::collections::BTreeMap;

/// Structure constants reindexed for the three contraction patterns
/// appearing in the equations.
pub struct ScTables {
    pub n: usize,
    /// prod[i*n+j] = nonzero (k, c[i][j][k]) of e_i e_j.
    prod: Vec<Vec<(usize, Rat)>>,
    /// left[j*n+m] = nonzero (r, c[r][j][m]): coordinate m of e_r e_j.
    left: Vec<Vec<(usize, Rat)>>,
    /// right[i*n+m] = nonzero (r, c[i][r][m]): coordinate m of e_i e_r.
    right: Vec<Vec<(usize, Rat)>>,
}

impl ScTables {
    pub fn new(a: &Algebra) -> Self {
        let n = a.dim;
        let mut prod = vec![Vec::new(); n * n];
        let mut left = vec![Vec::new(); n * n];
        let mut right = vec![Vec::new(); n * n];
        for i in 0..n {
            for j in 0..n {
                for (k, c) in a.sc_entries(i, j) {
                    prod[i * n + j].push((*k, c.clone()));
                    left[j * n + *k].push((i, c.clone()));
                    right[i * n + *k].push((j, c.clone()));
                }
            }
        }
        ScTables { n, prod, left, right }
    }
}

/// Which kernel is being computed.
#[derive(Debug, Clone, PartialEq)]
pub enum SystemKind {
    /// phi(e_i e_j) = delta (phi(e_i) e_j + e_i phi(e_j)).
    DeltaDerivation(Rat),
    /// chi(e_i e_j) = chi(e_i) e_j and chi(e_i e_j) = e_i chi(e_j).
    Centroid,
    /// chi(xy) = delta (chi(x) y + x phi(y)) = delta (phi(x) y + x chi(y)).
    Generalized(Rat),
}

pub struct System<'a> {
    tables: &'a ScTables,
    kind: SystemKind,
}

impl<'a> System<'a> {
    pub fn new(tables: &'a ScTables, kind: SystemKind) -> Self {
        System { tables, kind }
    }

    pub fn cols(&self) -> usize {
        let n2 = self.tables.n * self.tables.n;
        match self.kind {
            SystemKind::Generalized(_) => 2 * n2,
            _ => n2,
        }
    }

    pub fn rows(&self) -> usize {
        let n3 = self.tables.n.pow(3);
        match self.kind {
            SystemKind::DeltaDerivation(_) => n3,
            SystemKind::Centroid | SystemKind::Generalized(_) => 2 * n3,
        }
    }

    /// Equation row `ridx`, sorted by unknown index with merged
    /// coefficients. Row order: (i, j, m) lexicographic; two-family
    /// systems list the complete first family before the second.
    pub fn row(&self, ridx: usize) -> SparseRow {
        let n = self.tables.n;
        let n3 = n * n * n;
        let (family, rest) = (ridx / n3, ridx % n3);
        let m = rest % n;
        let j = (rest / n) % n;
        let i = rest / (n * n);
        let n2 = n * n;
        let mut acc: BTreeMap<usize, Rat> = BTreeMap::new();
        let mut add = |u: usize, c: Rat| {
            if !c.is_zero() {
                let e = acc.entry(u).or_insert_with(Rat::zero);
                *e += c;
            }
        };
        // Common term: coordinate m of the image of e_i e_j under the
        // first unknown map.
        for (k, c) in &self.tables.prod[i * n + j] {
            add(m * n + *k, c.clone());
        }
        let left = &self.tables.left[j * n + m];
        let right = &self.tables.right[i * n + m];
        match (&self.kind, family) {
            (SystemKind::DeltaDerivation(delta), 0) => {
                for (r, c) in left {
                    add(*r * n + i, -(delta * c));
                }
                for (r, c) in right {
                    add(*r * n + j, -(delta * c));
                }
            }
            (SystemKind::Centroid, 0) => {
                for (r, c) in left {
                    add(*r * n + i, -c.clone());
                }
            }
            (SystemKind::Centroid, 1) => {
                for (r, c) in right {
                    add(*r * n + j, -c.clone());
                }
            }
            (SystemKind::Generalized(delta), 0) => {
                for (r, c) in left {
                    add(*r * n + i, -(delta * c));
                }
                for (r, c) in right {
                    add(n2 + *r * n + j, -(delta * c));
                }
            }
            (SystemKind::Generalized(delta), 1) => {
                for (r, c) in left {
                    add(n2 + *r * n + i, -(delta * c));
                }
                for (r, c) in right {
                    add(*r * n + j, -(delta * c));
                }
            }
            _ => unreachable!("row index out of range"),
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    /// Exact residual of one equation against a candidate kernel vector.
    pub fn residual(&self, ridx: usize, v: &[Rat]) -> Rat {
        let mut acc = Rat::zero();
        for (u, c) in self.row(ridx) {
            if !v[u].is_zero() {
                acc += c * &v[u];
            }
        }
        acc
    }

    /// True iff v satisfies every equation of the system, exactly.
    pub fn is_solution(&self, v: &[Rat]) -> bool {
        (0..self.rows()).all(|r| self.residual(r, v).is_zero())
    }

    pub fn kind(&self) -> &SystemKind {
        &self.kind
    }
}

/// The same system with every coefficient reduced mod p.
pub struct ModSystem {
    n: usize,
    p: u64,
    kind_tag: ModKind,
    prod: Vec<Vec<(usize, u64)>>,
    left: Vec<Vec<(usize, u64)>>,
    right: Vec<Vec<(usize, u64)>>,
}

enum ModKind {
    DeltaDerivation(u64),
    Centroid,
    Generalized(u64),
}

impl ModSystem {
    pub fn new(sys: &System<'_>, p: u64) -> Result<Self, LinalgError> {
        let reduce_tbl = |tbl: &[Vec<(usize, Rat)>]| -> Result<Vec<Vec<(usize, u64)>>, LinalgError> {
            tbl.iter()
                .map(|row| {
                    row.iter()
                        .map(|(u, c)| rat_mod(c, p).map(|v| (*u, v)).ok_or(LinalgError::BadPrime(p)))
                        .collect()
                })
                .collect()
        };
        let kind_tag = match sys.kind() {
            SystemKind::DeltaDerivation(d) => {
                ModKind::DeltaDerivation(rat_mod(d, p).ok_or(LinalgError::BadPrime(p))?)
            }
            SystemKind::Centroid => ModKind::Centroid,
            SystemKind::Generalized(d) => {
                ModKind::Generalized(rat_mod(d, p).ok_or(LinalgError::BadPrime(p))?)
            }
        };
        Ok(ModSystem {
            n: sys.tables.n,
            p,
            kind_tag,
            prod: reduce_tbl(&sys.tables.prod)?,
            left: reduce_tbl(&sys.tables.left)?,
            right: reduce_tbl(&sys.tables.right)?,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Row `ridx` mod p, same ordering as the exact system. Duplicate
    /// unknowns may repeat; the eliminator accumulates them.
    pub fn row(&self, ridx: usize, out: &mut Vec<(usize, u64)>) {
        out.clear();
        let n = self.n;
        let p = self.p;
        let n3 = n * n * n;
        let (family, rest) = (ridx / n3, ridx % n3);
        let m = rest % n;
        let j = (rest / n) % n;
        let i = rest / (n * n);
        let n2 = n * n;
        for (k, c) in &self.prod[i * n + j] {
            out.push((m * n + *k, *c));
        }
        let neg = |x: u64| (p - x) % p;
        let scale = |d: u64, x: u64| (d as u128 * x as u128 % p as u128) as u64;
        let left = &self.left[j * n + m];
        let right = &self.right[i * n + m];
        match (&self.kind_tag, family) {
            (ModKind::DeltaDerivation(d), 0) => {
                for (r, c) in left {
                    out.push((*r * n + i, neg(scale(*d, *c))));
                }
                for (r, c) in right {
                    out.push((*r * n + j, neg(scale(*d, *c))));
                }
            }
            (ModKind::Centroid, 0) => {
                for (r, c) in left {
                    out.push((*r * n + i, neg(*c)));
                }
            }
            (ModKind::Centroid, 1) => {
                for (r, c) in right {
                    out.push((*r * n + j, neg(*c)));
                }
            }
            (ModKind::Generalized(d), 0) => {
                for (r, c) in left {
                    out.push((*r * n + i, neg(scale(*d, *c))));
                }
                for (r, c) in right {
                    out.push((n2 + *r * n + j, neg(scale(*d, *c))));
                }
            }
            (ModKind::Generalized(d), 1) => {
                for (r, c) in left {
                    out.push((n2 + *r * n + i, neg(scale(*d, *c))));
                }
                for (r, c) in right {
                    out.push((*r * n + j, neg(scale(*d, *c))));
                }
            }
            _ => unreachable!("row index out of range"),
        }
    }
}

/// Materialized delta-derivation system: n^3 rows, n^2 columns.
pub fn delta_derivation_system(a: &Algebra, delta: &Rat) -> RatMatrix {
    let tables = ScTables::new(a);
    let sys = System::new(&tables, SystemKind::DeltaDerivation(delta.clone()));
    let rows: Vec<SparseRow> = (0..sys.rows()).map(|r| sys.row(r)).collect();
    RatMatrix::from_sparse_rows(rows, sys.cols())
}
