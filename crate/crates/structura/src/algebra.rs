//! Finite-dimensional algebras given by structure constants, with
//! optional unit and involution, and the operator calculus (L, R, V, T)
//! built on top of them.

use crate::linalg::RatMatrix;
use crate::rat::{rat_to_i64_pair, Rat};
use num::{One, Zero};
use serde::{Deserialize, Serialize};
use std::sync::atomic::{AtomicU64, Ordering};
use thiserror::Error;

static NEXT_ALGEBRA_ID: AtomicU64 = AtomicU64::new(1);

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("element does not belong to this algebra")]
    AlgebraMismatch,
    #[error("algebra has no involution")]
    NoInvolution,
    #[error("algebra has no unit")]
    NoUnit,
    #[error("invalid algebra data: {0}")]
    InvalidData(String),
}

/// An algebra of dimension n over Q: e_i e_j = sum_k c[i][j][k] e_k.
/// Structure constants are stored sparsely keyed by (i, j). Immutable
/// once constructed.
#[derive(Debug, Clone)]
pub struct Algebra {
    id: u64,
    pub dim: usize,
    pub labels: Vec<String>,
    /// sc[i * dim + j] = sorted list of (k, c) with c != 0.
    sc: Vec<Vec<(usize, Rat)>>,
    pub unit: Option<Vec<Rat>>,
    /// Dense n x n involution matrix, column j = image of e_j.
    pub involution: Option<Vec<Vec<Rat>>>,
}

/// Coordinates of an algebra element, tagged with the owning algebra.
#[derive(Debug, Clone, PartialEq)]
pub struct Element {
    pub(crate) alg_id: u64,
    pub coords: Vec<Rat>,
}

/// An n x n rational matrix acting on algebra coordinates; column j is
/// the image of e_j.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearMap {
    pub matrix: Vec<Vec<Rat>>,
}

impl LinearMap {
    pub fn zero(n: usize) -> Self {
        LinearMap { matrix: vec![vec![Rat::zero(); n]; n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.matrix[i][i] = Rat::one();
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn apply(&self, v: &[Rat]) -> Vec<Rat> {
        let n = self.dim();
        let mut out = vec![Rat::zero(); n];
        for (c, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for r in 0..n {
                if !self.matrix[r][c].is_zero() {
                    out[r] += &self.matrix[r][c] * x;
                }
            }
        }
        out
    }

    /// Row-major flattening; unknown order shared with the solver systems.
    pub fn flatten(&self) -> Vec<Rat> {
        self.matrix.iter().flat_map(|row| row.iter().cloned()).collect()
    }

    pub fn from_flat(n: usize, v: &[Rat]) -> Self {
        assert_eq!(v.len(), n * n);
        LinearMap { matrix: (0..n).map(|r| v[r * n..(r + 1) * n].to_vec()).collect() }
    }

    pub fn compose(&self, other: &LinearMap) -> LinearMap {
        let n = self.dim();
        let mut out = LinearMap::zero(n);
        for r in 0..n {
            for k in 0..n {
                if self.matrix[r][k].is_zero() {
                    continue;
                }
                for c in 0..n {
                    if !other.matrix[k][c].is_zero() {
                        out.matrix[r][c] += &self.matrix[r][k] * &other.matrix[k][c];
                    }
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &LinearMap) -> LinearMap {
        let n = self.dim();
        let mut out = self.clone();
        for r in 0..n {
            for c in 0..n {
                out.matrix[r][c] -= &other.matrix[r][c];
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.iter().all(|row| row.iter().all(|x| x.is_zero()))
    }
}

impl Algebra {
    pub fn new(
        dim: usize,
        labels: Vec<String>,
        entries: Vec<(usize, usize, usize, Rat)>,
        unit: Option<Vec<Rat>>,
        involution: Option<Vec<Vec<Rat>>>,
    ) -> Result<Self, AlgebraError> {
        if labels.len() != dim {
            return Err(AlgebraError::InvalidData(format!(
                "{} labels for dimension {dim}",
                labels.len()
            )));
        }
        if let Some(u) = &unit {
            if u.len() != dim {
                return Err(AlgebraError::InvalidData("unit length".into()));
            }
        }
        if let Some(j) = &involution {
            if j.len() != dim || j.iter().any(|row| row.len() != dim) {
                return Err(AlgebraError::InvalidData("involution shape".into()));
            }
        }
        let mut sc = vec![Vec::new(); dim * dim];
        for (i, j, k, c) in entries {
            if i >= dim || j >= dim || k >= dim {
                return Err(AlgebraError::InvalidData(format!("sc index ({i},{j},{k})")));
            }
            if c.is_zero() {
                continue;
            }
            let row: &mut Vec<(usize, Rat)> = &mut sc[i * dim + j];
            match row.binary_search_by_key(&k, |e| e.0) {
                Ok(pos) => {
                    return Err(AlgebraError::InvalidData(format!(
                        "duplicate sc entry at ({i},{j},{}): already set",
                        row[pos].0
                    )))
                }
                Err(pos) => row.insert(pos, (k, c)),
            }
        }
        Ok(Algebra {
            id: NEXT_ALGEBRA_ID.fetch_add(1, Ordering::Relaxed),
            dim,
            labels,
            sc,
            unit,
            involution,
        })
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    /// e_i e_j as a sparse coordinate list.
    pub fn sc_entries(&self, i: usize, j: usize) -> &[(usize, Rat)] {
        &self.sc[i * self.dim + j]
    }

    pub fn sc_triples(&self) -> Vec<(usize, usize, usize, Rat)> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                for (k, c) in self.sc_entries(i, j) {
                    out.push((i, j, *k, c.clone()));
                }
            }
        }
        out
    }

    pub fn element(&self, coords: Vec<Rat>) -> Result<Element, AlgebraError> {
        if coords.len() != self.dim {
            return Err(AlgebraError::InvalidData("coordinate length".into()));
        }
        Ok(Element { alg_id: self.id, coords })
    }

    pub fn zero(&self) -> Element {
        Element { alg_id: self.id, coords: vec![Rat::zero(); self.dim] }
    }

    pub fn basis_element(&self, i: usize) -> Element {
        let mut e = self.zero();
        e.coords[i] = Rat::one();
        e
    }

    pub fn unit_element(&self) -> Result<Element, AlgebraError> {
        let u = self.unit.as_ref().ok_or(AlgebraError::NoUnit)?;
        Ok(Element { alg_id: self.id, coords: u.clone() })
    }

    fn check_member(&self, x: &Element) -> Result<(), AlgebraError> {
        if x.alg_id != self.id || x.coords.len() != self.dim {
            return Err(AlgebraError::AlgebraMismatch);
        }
        Ok(())
    }

    /// Bilinear product via structure constants, exact.
    pub fn mul(&self, x: &Element, y: &Element) -> Result<Element, AlgebraError> {
        self.check_member(x)?;
        self.check_member(y)?;
        let mut out = vec![Rat::zero(); self.dim];
        for (i, xi) in x.coords.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.coords.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let factor = xi * yj;
                for (k, c) in self.sc_entries(i, j) {
                    out[*k] += &factor * c;
                }
            }
        }
        Ok(Element { alg_id: self.id, coords: out })
    }

    pub fn involve(&self, x: &Element) -> Result<Element, AlgebraError> {
        self.check_member(x)?;
        let j = self.involution.as_ref().ok_or(AlgebraError::NoInvolution)?;
        let mut out = vec![Rat::zero(); self.dim];
        for (c, xc) in x.coords.iter().enumerate() {
            if xc.is_zero() {
                continue;
            }
            for (r, row) in j.iter().enumerate() {
                if !row[c].is_zero() {
                    out[r] += &row[c] * xc;
                }
            }
        }
        Ok(Element { alg_id: self.id, coords: out })
    }

    /// Matrix of x -> z x.
    pub fn left_mul(&self, z: &Element) -> Result<LinearMap, AlgebraError> {
        self.check_member(z)?;
        let mut m = LinearMap::zero(self.dim);
        for (i, zi) in z.coords.iter().enumerate() {
            if zi.is_zero() {
                continue;
            }
            for j in 0..self.dim {
                for (k, c) in self.sc_entries(i, j) {
                    m.matrix[*k][j] += zi * c;
                }
            }
        }
        Ok(m)
    }

    /// Matrix of x -> x z.
    pub fn right_mul(&self, z: &Element) -> Result<LinearMap, AlgebraError> {
        self.check_member(z)?;
        let mut m = LinearMap::zero(self.dim);
        for (j, zj) in z.coords.iter().enumerate() {
            if zj.is_zero() {
                continue;
            }
            for i in 0..self.dim {
                for (k, c) in self.sc_entries(i, j) {
                    m.matrix[*k][i] += zj * c;
                }
            }
        }
        Ok(m)
    }

    /// V_{x,y}(z) = (x ybar) z + (z ybar) x - (z xbar) y.
    pub fn v_operator(&self, x: &Element, y: &Element) -> Result<LinearMap, AlgebraError> {
        self.check_member(x)?;
        self.check_member(y)?;
        let xbar = self.involve(x)?;
        let ybar = self.involve(y)?;
        let xy_bar = self.mul(x, &ybar)?;
        let mut cols = Vec::with_capacity(self.dim);
        for w in 0..self.dim {
            let ew = self.basis_element(w);
            let mut col = self.mul(&xy_bar, &ew)?.coords;
            let t2 = self.mul(&self.mul(&ew, &ybar)?, x)?;
            let t3 = self.mul(&self.mul(&ew, &xbar)?, y)?;
            for r in 0..self.dim {
                col[r] += &t2.coords[r];
                col[r] -= &t3.coords[r];
            }
            cols.push(col);
        }
        let mut m = LinearMap::zero(self.dim);
        for (j, col) in cols.into_iter().enumerate() {
            for r in 0..self.dim {
                m.matrix[r][j] = col[r].clone();
            }
        }
        Ok(m)
    }

    /// T_z = V_{z, unit}.
    pub fn t_operator(&self, z: &Element) -> Result<LinearMap, AlgebraError> {
        let unit = self.unit_element()?;
        self.v_operator(z, &unit)
    }

    pub fn commutator(&self, x: &Element, y: &Element) -> Result<Element, AlgebraError> {
        let xy = self.mul(x, y)?;
        let yx = self.mul(y, x)?;
        let coords = xy.coords.iter().zip(&yx.coords).map(|(a, b)| a - b).collect();
        Ok(Element { alg_id: self.id, coords })
    }

    pub fn associator(&self, x: &Element, y: &Element, z: &Element) -> Result<Element, AlgebraError> {
        let l = self.mul(&self.mul(x, y)?, z)?;
        let r = self.mul(x, &self.mul(y, z)?)?;
        let coords = l.coords.iter().zip(&r.coords).map(|(a, b)| a - b).collect();
        Ok(Element { alg_id: self.id, coords })
    }

    /// Bases of the +1 and -1 eigenspaces of the involution.
    pub fn hermitian_skew_split(&self) -> Result<(Vec<Vec<Rat>>, Vec<Vec<Rat>>), AlgebraError> {
        let j = self.involution.as_ref().ok_or(AlgebraError::NoInvolution)?;
        let n = self.dim;
        let eig = |sign: i64| {
            let mut rows = Vec::with_capacity(n);
            for r in 0..n {
                let mut row = j[r].clone();
                row[r] -= Rat::from_integer(sign.into());
                rows.push(row);
            }
            crate::linalg::kernel_basis(&RatMatrix::from_dense(&rows, n))
        };
        Ok((eig(1), eig(-1)))
    }

    /// True iff unit times every basis vector equals that vector on both
    /// sides.
    pub fn unit_is_two_sided(&self) -> Result<bool, AlgebraError> {
        let u = self.unit_element()?;
        for i in 0..self.dim {
            let e = self.basis_element(i);
            if self.mul(&u, &e)? != e || self.mul(&e, &u)? != e {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// J^2 = id, J(xy) = J(y)J(x) on all basis pairs, J(unit) = unit.
    pub fn involution_is_valid(&self) -> Result<bool, AlgebraError> {
        if self.involution.is_none() {
            return Err(AlgebraError::NoInvolution);
        }
        for i in 0..self.dim {
            let e = self.basis_element(i);
            if self.involve(&self.involve(&e)?)? != e {
                return Ok(false);
            }
        }
        for i in 0..self.dim {
            for j in 0..self.dim {
                let x = self.basis_element(i);
                let y = self.basis_element(j);
                let lhs = self.involve(&self.mul(&x, &y)?)?;
                let rhs = self.mul(&self.involve(&y)?, &self.involve(&x)?)?;
                if lhs != rhs {
                    return Ok(false);
                }
            }
        }
        if let Some(u) = &self.unit {
            let ue = self.element(u.clone())?;
            if self.involve(&ue)? != ue {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Block-diagonal sum: cross products vanish, involutions and units act
/// per block.
pub fn direct_sum(a: &Algebra, b: &Algebra) -> Algebra {
    let n = a.dim + b.dim;
    let mut labels: Vec<String> = a.labels.iter().map(|l| format!("a.{l}")).collect();
    labels.extend(b.labels.iter().map(|l| format!("b.{l}")));
    let mut entries = a.sc_triples();
    for (i, j, k, c) in b.sc_triples() {
        entries.push((a.dim + i, a.dim + j, a.dim + k, c));
    }
    let unit = match (&a.unit, &b.unit) {
        (Some(ua), Some(ub)) => {
            let mut u = ua.clone();
            u.extend(ub.iter().cloned());
            Some(u)
        }
        _ => None,
    };
    let involution = match (&a.involution, &b.involution) {
        (Some(ja), Some(jb)) => {
            let mut m = vec![vec![Rat::zero(); n]; n];
            for r in 0..a.dim {
                for c in 0..a.dim {
                    m[r][c] = ja[r][c].clone();
                }
            }
            for r in 0..b.dim {
                for c in 0..b.dim {
                    m[a.dim + r][a.dim + c] = jb[r][c].clone();
                }
            }
            Some(m)
        }
        _ => None,
    };
    Algebra::new(n, labels, entries, unit, involution).expect("direct sum data is valid")
}

/// Tensor product on basis pairs: (x1 (x) x2)(y1 (x) y2) = x1 y1 (x) x2 y2,
/// involution factor-wise.
pub fn tensor_product(a: &Algebra, b: &Algebra) -> Algebra {
    let n = a.dim * b.dim;
    let idx = |i: usize, j: usize| i * b.dim + j;
    let mut labels = Vec::with_capacity(n);
    for la in &a.labels {
        for lb in &b.labels {
            labels.push(format!("{la}*{lb}"));
        }
    }
    let mut entries = Vec::new();
    for (i1, i2, k1, c1) in a.sc_triples() {
        for (j1, j2, k2, c2) in b.sc_triples() {
            entries.push((idx(i1, j1), idx(i2, j2), idx(k1, k2), &c1 * &c2));
        }
    }
    let unit = match (&a.unit, &b.unit) {
        (Some(ua), Some(ub)) => {
            let mut u = vec![Rat::zero(); n];
            for (i, x) in ua.iter().enumerate() {
                for (j, y) in ub.iter().enumerate() {
                    u[idx(i, j)] = x * y;
                }
            }
            Some(u)
        }
        _ => None,
    };
    let involution = match (&a.involution, &b.involution) {
        (Some(ja), Some(jb)) => {
            let mut m = vec![vec![Rat::zero(); n]; n];
            for r1 in 0..a.dim {
                for c1 in 0..a.dim {
                    if ja[r1][c1].is_zero() {
                        continue;
                    }
                    for r2 in 0..b.dim {
                        for c2 in 0..b.dim {
                            if !jb[r2][c2].is_zero() {
                                m[idx(r1, r2)][idx(c1, c2)] = &ja[r1][c1] * &jb[r2][c2];
                            }
                        }
                    }
                }
            }
            Some(m)
        }
        _ => None,
    };
    Algebra::new(n, labels, entries, unit, involution).expect("tensor product data is valid")
}

// --- serialization -------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct AlgebraJson {
    dim: usize,
    labels: Vec<String>,
    sc: Vec<(usize, usize, usize, i64, i64)>,
    unit: Option<Vec<(i64, i64)>>,
    involution: Option<Vec<(usize, usize, i64, i64)>>,
}

impl Algebra {
    pub fn to_json(&self) -> Result<String, AlgebraError> {
        let pair = |r: &Rat| {
            rat_to_i64_pair(r).ok_or_else(|| AlgebraError::InvalidData("coefficient exceeds i64".into()))
        };
        let mut sc = Vec::new();
        for (i, j, k, c) in self.sc_triples() {
            let (n, d) = pair(&c)?;
            sc.push((i, j, k, n, d));
        }
        let unit = match &self.unit {
            Some(u) => Some(u.iter().map(&pair).collect::<Result<Vec<_>, _>>()?),
            None => None,
        };
        let involution = match &self.involution {
            Some(m) => {
                let mut out = Vec::new();
                for (r, row) in m.iter().enumerate() {
                    for (c, v) in row.iter().enumerate() {
                        if !v.is_zero() {
                            let (n, d) = pair(v)?;
                            out.push((r, c, n, d));
                        }
                    }
                }
                Some(out)
            }
            None => None,
        };
        let doc = AlgebraJson { dim: self.dim, labels: self.labels.clone(), sc, unit, involution };
        serde_json::to_string_pretty(&doc).map_err(|e| AlgebraError::InvalidData(e.to_string()))
    }

    pub fn from_json(s: &str) -> Result<Self, AlgebraError> {
        let doc: AlgebraJson =
            serde_json::from_str(s).map_err(|e| AlgebraError::InvalidData(e.to_string()))?;
        let entries = doc
            .sc
            .into_iter()
            .map(|(i, j, k, n, d)| {
                if d == 0 {
                    Err(AlgebraError::InvalidData("zero denominator".into()))
                } else {
                    Ok((i, j, k, crate::rat::rat(n, d)))
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        let unit = doc.unit.map(|u| u.into_iter().map(|(n, d)| crate::rat::rat(n, d)).collect());
        let involution = match doc.involution {
            Some(list) => {
                let mut m = vec![vec![Rat::zero(); doc.dim]; doc.dim];
                for (r, c, n, d) in list {
                    if r >= doc.dim || c >= doc.dim || d == 0 {
                        return Err(AlgebraError::InvalidData("involution entry".into()));
                    }
                    m[r][c] = crate::rat::rat(n, d);
                }
                Some(m)
            }
            None => None,
        };
        Algebra::new(doc.dim, doc.labels, entries, unit, involution)
    }
}
