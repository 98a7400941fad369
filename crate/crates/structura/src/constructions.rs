//! Builders for the concrete algebra catalog: composition algebras by
//! doubling, the explicit octonion table, matrix and Jordan algebras,
//! Hermitian form algebras, admissible-triple algebras, and the
//! 35-dimensional algebra built from the skew octonions.

use crate::algebra::{direct_sum, tensor_product, Algebra, AlgebraError, Element};
use crate::linalg::{kernel_basis, rank, RatMatrix, RatRref};
use crate::rat::{rat, rat_i, Rat};
use num::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum BuildError {
    #[error("input is not a composition algebra: {0}")]
    NotComposition(String),
    #[error("doubling past dimension 8 loses the composition property")]
    DimensionLimit,
    #[error("input is not the 8-dimensional composition algebra with standard involution")]
    NotOctonions,
    #[error("the duality form T is degenerate")]
    DegenerateT,
    #[error("triple is not admissible: {0}")]
    NotAdmissible(String),
    #[error("no bilinear form satisfies the Malcev form identity")]
    Inconsistent,
    #[error("unknown algebra name: {0}")]
    UnknownAlgebra(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Accumulates structure-constant triples, merging duplicates.
#[derive(Default)]
struct ScAcc {
    map: BTreeMap<(usize, usize, usize), Rat>,
}

impl ScAcc {
    fn add(&mut self, i: usize, j: usize, k: usize, c: Rat) {
        if c.is_zero() {
            return;
        }
        *self.map.entry((i, j, k)).or_insert_with(Rat::zero) += c;
    }

    fn into_entries(self) -> Vec<(usize, usize, usize, Rat)> {
        self.map
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|((i, j, k), c)| (i, j, k, c))
            .collect()
    }
}

fn identity_matrix(n: usize) -> Vec<Vec<Rat>> {
    let mut m = vec![vec![Rat::zero(); n]; n];
    for i in 0..n {
        m[i][i] = Rat::one();
    }
    m
}

fn diag_matrix(signs: &[i64]) -> Vec<Vec<Rat>> {
    let n = signs.len();
    let mut m = vec![vec![Rat::zero(); n]; n];
    for i in 0..n {
        m[i][i] = rat_i(signs[i]);
    }
    m
}

/// The 1-dimensional ground field, base case for doubling.
pub fn ground_field() -> Algebra {
    Algebra::new(
        1,
        vec!["e1".into()],
        vec![(0, 0, 0, Rat::one())],
        Some(vec![Rat::one()]),
        Some(identity_matrix(1)),
    )
    .expect("ground field data is valid")
}

/// x xbar as a multiple of the unit, when it is one.
pub fn norm_scalar(a: &Algebra, x: &Element) -> Result<Option<Rat>, AlgebraError> {
    let unit = a.unit.as_ref().ok_or(AlgebraError::NoUnit)?;
    let xbar = a.involve(x)?;
    let n = a.mul(x, &xbar)?;
    // n = lambda * unit for some lambda?
    let mut lambda: Option<Rat> = None;
    for (i, u) in unit.iter().enumerate() {
        if u.is_zero() {
            if !n.coords[i].is_zero() {
                return Ok(None);
            }
        } else {
            let l = &n.coords[i] / u;
            match &lambda {
                None => lambda = Some(l),
                Some(prev) if *prev == l => {}
                _ => return Ok(None),
            }
        }
    }
    Ok(Some(lambda.unwrap_or_else(Rat::zero)))
}

/// Cayley-Dickson doubling with parameter mu:
/// (a,b)(c,d) = (ac + mu (dbar b), da + b cbar), involution (abar, -b).
pub fn cayley_dickson(a: &Algebra, mu: &Rat) -> Result<Algebra, BuildError> {
    if a.dim >= 8 {
        return Err(BuildError::DimensionLimit);
    }
    if a.unit.is_none() {
        return Err(BuildError::NotComposition("no unit".into()));
    }
    if a.involution.is_none() {
        return Err(BuildError::NotComposition("no involution".into()));
    }
    // Norm precondition on basis vectors and pairwise basis sums.
    let mut samples = Vec::new();
    for i in 0..a.dim {
        samples.push(a.basis_element(i));
        for j in i + 1..a.dim {
            let mut e = a.basis_element(i);
            e.coords[j] = Rat::one();
            samples.push(e);
        }
    }
    for x in &samples {
        if norm_scalar(a, x)?.is_none() {
            return Err(BuildError::NotComposition("norm not in F*unit".into()));
        }
    }

    let m = a.dim;
    let n = 2 * m;
    let jm = a.involution.as_ref().unwrap();
    let mut acc = ScAcc::default();
    // jm column t = image of e_t under the involution of a.
    let jcol = |t: usize| -> Vec<(usize, Rat)> {
        (0..m).filter(|&r| !jm[r][t].is_zero()).map(|r| (r, jm[r][t].clone())).collect()
    };
    for i in 0..m {
        for j in 0..m {
            // (e_i, 0)(e_j, 0) = (e_i e_j, 0)
            for (k, c) in a.sc_entries(i, j) {
                acc.add(i, j, *k, c.clone());
            }
            // (e_i, 0)(0, e_j) = (0, e_j e_i)
            for (k, c) in a.sc_entries(j, i) {
                acc.add(i, m + j, m + k, c.clone());
            }
            // (0, e_i)(e_j, 0) = (0, e_i e_jbar)
            for (t, jc) in jcol(j) {
                for (k, c) in a.sc_entries(i, t) {
                    acc.add(m + i, j, m + k, &jc * c);
                }
            }
            // (0, e_i)(0, e_j) = (mu * (e_jbar e_i), 0)
            for (t, jc) in jcol(j) {
                for (k, c) in a.sc_entries(t, i) {
                    acc.add(m + i, m + j, *k, mu * &jc * c);
                }
            }
        }
    }
    let mut unit = vec![Rat::zero(); n];
    unit[..m].clone_from_slice(a.unit.as_ref().unwrap());
    let mut inv = vec![vec![Rat::zero(); n]; n];
    for r in 0..m {
        for c in 0..m {
            inv[r][c] = jm[r][c].clone();
        }
    }
    for i in 0..m {
        inv[m + i][m + i] = -Rat::one();
    }
    let labels = (1..=n).map(|i| format!("e{i}")).collect();
    Ok(Algebra::new(n, labels, acc.into_entries(), Some(unit), Some(inv))?)
}

/// Composition algebra of dimension 1, 2, 4 or 8 by iterated doubling
/// with mu = -1.
pub fn composition_algebra(dim: usize) -> Result<Algebra, BuildError> {
    let mut a = ground_field();
    let mu = -Rat::one();
    let mut d = 1;
    while d < dim {
        a = cayley_dickson(&a, &mu)?;
        d *= 2;
    }
    if d != dim {
        return Err(BuildError::NotComposition(format!("no composition algebra of dimension {dim}")));
    }
    Ok(a)
}

/// The explicit octonion multiplication table: e1 is the unit, the 21
/// listed products of distinct imaginary units, anticommutativity for
/// the unlisted ones, and squares e_i^2 = -e1.
pub fn octonion_explicit_table() -> Algebra {
    // (target k, [(i, j); 3]) with e_i e_j = e_k, 1-based as printed.
    const TABLE: [(usize, [(usize, usize); 3]); 7] = [
        (2, [(5, 6), (7, 8), (3, 4)]),
        (3, [(7, 6), (4, 2), (8, 5)]),
        (4, [(2, 3), (6, 8), (7, 5)]),
        (5, [(6, 2), (4, 7), (3, 8)]),
        (6, [(2, 5), (8, 4), (3, 7)]),
        (7, [(5, 4), (8, 2), (6, 3)]),
        (8, [(2, 7), (4, 6), (5, 3)]),
    ];
    let mut acc = ScAcc::default();
    // Unit row and column.
    for i in 0..8 {
        acc.add(0, i, i, Rat::one());
        if i != 0 {
            acc.add(i, 0, i, Rat::one());
        }
    }
    // Squares of imaginary units.
    for i in 1..8 {
        acc.add(i, i, 0, -Rat::one());
    }
    for (k, pairs) in TABLE {
        for (i, j) in pairs {
            acc.add(i - 1, j - 1, k - 1, Rat::one());
            acc.add(j - 1, i - 1, k - 1, -Rat::one());
        }
    }
    let labels = (1..=8).map(|i| format!("e{i}")).collect();
    let mut unit = vec![Rat::zero(); 8];
    unit[0] = Rat::one();
    let inv = diag_matrix(&[1, -1, -1, -1, -1, -1, -1, -1]);
    Algebra::new(8, labels, acc.into_entries(), Some(unit), Some(inv)).expect("octonion table is valid")
}

/// Full n x n matrix algebra with transpose involution.
pub fn matrix_involution_algebra(n: usize) -> Algebra {
    let idx = |a: usize, b: usize| a * n + b;
    let mut acc = ScAcc::default();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                // E_ab E_bc = E_ac
                acc.add(idx(a, b), idx(b, c), idx(a, c), Rat::one());
            }
        }
    }
    let labels = (0..n * n).map(|i| format!("E{}{}", i / n + 1, i % n + 1)).collect();
    let mut unit = vec![Rat::zero(); n * n];
    for a in 0..n {
        unit[idx(a, a)] = Rat::one();
    }
    let mut inv = vec![vec![Rat::zero(); n * n]; n * n];
    for a in 0..n {
        for b in 0..n {
            inv[idx(b, a)][idx(a, b)] = Rat::one();
        }
    }
    Algebra::new(n * n, labels, acc.into_entries(), Some(unit), Some(inv)).expect("matrix algebra is valid")
}

/// M_n^+ : x o y = (xy + yx)/2, identity involution.
pub fn jordan_matrix(n: usize) -> Algebra {
    let idx = |a: usize, b: usize| a * n + b;
    let half = rat(1, 2);
    let mut acc = ScAcc::default();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    if b == c {
                        acc.add(idx(a, b), idx(c, d), idx(a, d), half.clone());
                    }
                    if d == a {
                        acc.add(idx(a, b), idx(c, d), idx(c, b), half.clone());
                    }
                }
            }
        }
    }
    let labels = (0..n * n).map(|i| format!("E{}{}", i / n + 1, i % n + 1)).collect();
    let mut unit = vec![Rat::zero(); n * n];
    for a in 0..n {
        unit[idx(a, a)] = Rat::one();
    }
    Algebra::new(n * n, labels, acc.into_entries(), Some(unit), Some(identity_matrix(n * n)))
        .expect("jordan algebra is valid")
}

/// Hermitian form algebra on E + W with E = M_n (transpose involution),
/// W = F^n, e o w the matrix-vector action and h(w1, w2) = w1 w2^T.
pub fn hermitian_form_algebra(n: usize) -> Algebra {
    let dim = n * n + n;
    let e_idx = |a: usize, b: usize| a * n + b;
    let w_idx = |i: usize| n * n + i;
    let mut acc = ScAcc::default();
    // E * E: associative matrix units.
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                acc.add(e_idx(a, b), e_idx(b, c), e_idx(a, c), Rat::one());
            }
        }
    }
    // (e1, 0)(0, w2) = (0, e1bar o w2): E_ab^T u_j = E_ba u_j = [a == j] u_b.
    for a in 0..n {
        for b in 0..n {
            acc.add(e_idx(a, b), w_idx(a), w_idx(b), Rat::one());
        }
    }
    // (0, w1)(e2, 0) = (0, e2 o w1): E_cd u_i = [d == i] u_c.
    for c in 0..n {
        for d in 0..n {
            acc.add(w_idx(d), e_idx(c, d), w_idx(c), Rat::one());
        }
    }
    // (0, w1)(0, w2) = (h(w2, w1), 0) = (u_j u_i^T, 0) = E_ji.
    for i in 0..n {
        for j in 0..n {
            acc.add(w_idx(i), w_idx(j), e_idx(j, i), Rat::one());
        }
    }
    let mut labels: Vec<String> = (0..n * n).map(|i| format!("E{}{}", i / n + 1, i % n + 1)).collect();
    labels.extend((1..=n).map(|i| format!("w{i}")));
    let mut unit = vec![Rat::zero(); dim];
    for a in 0..n {
        unit[e_idx(a, a)] = Rat::one();
    }
    let mut inv = vec![vec![Rat::zero(); dim]; dim];
    for a in 0..n {
        for b in 0..n {
            inv[e_idx(b, a)][e_idx(a, b)] = Rat::one();
        }
    }
    for i in 0..n {
        inv[w_idx(i)][w_idx(i)] = Rat::one();
    }
    Algebra::new(dim, labels, acc.into_entries(), Some(unit), Some(inv))
        .expect("hermitian form algebra is valid")
}

// --- admissible triples ---------------------------------------------------

/// Trilinear form data for an admissible triple: a duality T between J
/// and J' and symmetric trilinear forms N, N'.
#[derive(Debug, Clone)]
pub struct AdmissibleTripleData {
    pub dim_j: usize,
    pub dim_jp: usize,
    /// T[a][b'] for a in J, b' in J'.
    pub t: Vec<Vec<Rat>>,
    /// N[a][b][c], symmetric; index a * d^2 + b * d + c with d = dim_j.
    pub n: Vec<Rat>,
    /// N'[a][b][c] on J'.
    pub np: Vec<Rat>,
}

/// Sparse multivariate polynomial over Q, exponent-vector keyed.
type Poly = BTreeMap<Vec<u32>, Rat>;

fn poly_add_term(p: &mut Poly, exps: Vec<u32>, c: Rat) {
    if c.is_zero() {
        return;
    }
    let e = p.entry(exps).or_insert_with(Rat::zero);
    *e += c;
    // keep the map zero-free lazily; zeros are filtered on comparison
}

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ea, ca) in a {
        if ca.is_zero() {
            continue;
        }
        for (eb, cb) in b {
            if cb.is_zero() {
                continue;
            }
            let exps = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            poly_add_term(&mut out, exps, ca * cb);
        }
    }
    out
}

fn poly_eq(a: &Poly, b: &Poly) -> bool {
    let norm = |p: &Poly| -> Poly {
        p.iter().filter(|(_, c)| !c.is_zero()).map(|(e, c)| (e.clone(), c.clone())).collect()
    };
    norm(a) == norm(b)
}

/// Solves M x = rhs for square nondegenerate M.
fn solve_square(m: &[Vec<Rat>], rhs: &[Rat]) -> Option<Vec<Rat>> {
    let n = m.len();
    let mut rref = RatRref::new(n + 1);
    for (row, r) in m.iter().zip(rhs) {
        let mut aug = row.clone();
        aug.push(r.clone());
        rref.absorb_dense(aug);
    }
    if rref.rank() != n {
        return None;
    }
    let mut x = vec![Rat::zero(); n];
    for (pc, row) in rref.canonical_rows() {
        if *pc == n {
            return None; // inconsistent
        }
        x[*pc] = row[n].clone();
    }
    Some(x)
}

struct CrossMaps {
    /// cross_j[bp][b * d + c]: coefficient of (j x k)_{bp} in j_b k_c.
    cross_j: Vec<Vec<Rat>>,
    /// cross_jp[a][bp * dp + cp] on the primed side.
    cross_jp: Vec<Vec<Rat>>,
}

fn cross_maps(d: &AdmissibleTripleData) -> Result<CrossMaps, BuildError> {
    if d.dim_j != d.dim_jp {
        return Err(BuildError::DegenerateT);
    }
    let n = d.dim_j;
    let tm = RatMatrix::from_dense(&d.t, n);
    if rank(&tm) != n {
        return Err(BuildError::DegenerateT);
    }
    let t_t: Vec<Vec<Rat>> = (0..n).map(|r| (0..n).map(|c| d.t[c][r].clone()).collect()).collect();
    // j x k in J': solve T[a][.] x = N[a][b][c] for each (b, c).
    let mut cross_j = vec![vec![Rat::zero(); n * n]; n];
    for b in 0..n {
        for c in 0..n {
            let rhs: Vec<Rat> = (0..n).map(|a| d.n[a * n * n + b * n + c].clone()).collect();
            let x = solve_square(&d.t, &rhs).ok_or(BuildError::DegenerateT)?;
            for (bp, v) in x.into_iter().enumerate() {
                cross_j[bp][b * n + c] = v;
            }
        }
    }
    // j' x k' in J: T(x, l') pairs through T^T.
    let mut cross_jp = vec![vec![Rat::zero(); n * n]; n];
    for bp in 0..n {
        for cp in 0..n {
            let rhs: Vec<Rat> = (0..n).map(|ap| d.np[ap * n * n + bp * n + cp].clone()).collect();
            let x = solve_square(&t_t, &rhs).ok_or(BuildError::DegenerateT)?;
            for (a, v) in x.into_iter().enumerate() {
                cross_jp[a][bp * n + cp] = v;
            }
        }
    }
    Ok(CrossMaps { cross_j, cross_jp })
}

/// Checks the two sharp identities symbolically; None means admissible,
/// Some(description) names the first failure.
pub fn check_admissible_triple(d: &AdmissibleTripleData) -> Result<Option<String>, BuildError> {
    if d.n.iter().all(|c| c.is_zero()) {
        return Ok(Some("N is trivial".into()));
    }
    if d.np.iter().all(|c| c.is_zero()) {
        return Ok(Some("N' is trivial".into()));
    }
    let maps = cross_maps(d)?;
    let n = d.dim_j;
    let half = rat(1, 2);
    let sixth = rat(1, 6);

    let check_side = |cross_1: &[Vec<Rat>], cross_2: &[Vec<Rat>], tri: &[Rat], label: &str| -> Option<String> {
        // sharp(j)_bp as quadratic polynomials in j_0..j_{n-1}
        let var = |i: usize| -> Poly {
            let mut e = vec![0u32; n];
            e[i] = 1;
            let mut p = Poly::new();
            p.insert(e, Rat::one());
            p
        };
        let sharp1: Vec<Poly> = (0..n)
            .map(|bp| {
                let mut p = Poly::new();
                for b in 0..n {
                    for c in 0..n {
                        let coeff = &half * &cross_1[bp][b * n + c];
                        if !coeff.is_zero() {
                            for (e, v) in poly_mul(&var(b), &var(c)) {
                                poly_add_term(&mut p, e, v * &coeff);
                            }
                        }
                    }
                }
                p
            })
            .collect();
        // (j^#)^#_a = 1/2 sum cross_2[a][bp cp] sharp1_bp sharp1_cp
        for a in 0..n {
            let mut lhs = Poly::new();
            for bp in 0..n {
                for cp in 0..n {
                    let coeff = &half * &cross_2[a][bp * n + cp];
                    if coeff.is_zero() {
                        continue;
                    }
                    for (e, v) in poly_mul(&sharp1[bp], &sharp1[cp]) {
                        poly_add_term(&mut lhs, e, v * &coeff);
                    }
                }
            }
            // rhs = 1/6 N(j,j,j) j_a
            let mut cubic = Poly::new();
            for i0 in 0..n {
                for i1 in 0..n {
                    for i2 in 0..n {
                        let c = &tri[i0 * n * n + i1 * n + i2] * &sixth;
                        if !c.is_zero() {
                            let mut e = vec![0u32; n];
                            e[i0] += 1;
                            e[i1] += 1;
                            e[i2] += 1;
                            poly_add_term(&mut cubic, e, c);
                        }
                    }
                }
            }
            let rhs = poly_mul(&cubic, &var(a));
            if !poly_eq(&lhs, &rhs) {
                return Some(format!("sharp identity fails on {label}, coordinate {a}"));
            }
        }
        None
    };

    if let Some(w) = check_side(&maps.cross_j, &maps.cross_jp, &d.n, "J") {
        return Ok(Some(w));
    }
    if let Some(w) = check_side(&maps.cross_jp, &maps.cross_j, &d.np, "J'") {
        return Ok(Some(w));
    }
    Ok(None)
}

/// Algebra on 2x2 formal matrices [[alpha, j], [j', beta]] built from an
/// admissible triple; involution swaps alpha and beta.
pub fn admissible_triple_algebra(d: &AdmissibleTripleData) -> Result<Algebra, BuildError> {
    if let Some(w) = check_admissible_triple(d)? {
        return Err(BuildError::NotAdmissible(w));
    }
    let maps = cross_maps(d)?;
    let nj = d.dim_j;
    let dim = 2 + nj + nj;
    // coordinates: 0 = alpha, 1 = beta, 2..2+nj = J, 2+nj.. = J'.
    let j_at = |b: usize| 2 + b;
    let jp_at = |b: usize| 2 + nj + b;
    let mut acc = ScAcc::default();
    // Expand the 2x2 product over all basis pairs.
    // x = (alpha, j, j', beta), y = (gamma, k, k', delta).
    let basis_parts = |idx: usize| -> (Rat, Vec<Rat>, Vec<Rat>, Rat) {
        let mut alpha = Rat::zero();
        let mut beta = Rat::zero();
        let mut j = vec![Rat::zero(); nj];
        let mut jp = vec![Rat::zero(); nj];
        if idx == 0 {
            alpha = Rat::one();
        } else if idx == 1 {
            beta = Rat::one();
        } else if idx < 2 + nj {
            j[idx - 2] = Rat::one();
        } else {
            jp[idx - 2 - nj] = Rat::one();
        }
        (alpha, j, jp, beta)
    };
    let t_form = |j: &[Rat], kp: &[Rat]| -> Rat {
        let mut acc = Rat::zero();
        for a in 0..nj {
            for b in 0..nj {
                acc += &j[a] * &d.t[a][b] * &kp[b];
            }
        }
        acc
    };
    let cross = |maps_side: &[Vec<Rat>], x: &[Rat], y: &[Rat]| -> Vec<Rat> {
        let mut out = vec![Rat::zero(); nj];
        for (o, row) in maps_side.iter().enumerate() {
            for b in 0..nj {
                for c in 0..nj {
                    if !row[b * nj + c].is_zero() {
                        out[o] += &row[b * nj + c] * &x[b] * &y[c];
                    }
                }
            }
        }
        out
    };
    for xi in 0..dim {
        for yi in 0..dim {
            let (alpha, j, jp, beta) = basis_parts(xi);
            let (gamma, k, kp, delta) = basis_parts(yi);
            let out_alpha = &alpha * &gamma + t_form(&j, &kp);
            let out_beta = t_form(&k, &jp) + &beta * &delta;
            let jpxkp = cross(&maps.cross_jp, &jp, &kp);
            let jxk = cross(&maps.cross_j, &j, &k);
            let out_j: Vec<Rat> =
                (0..nj).map(|b| &alpha * &k[b] + &delta * &j[b] + &jpxkp[b]).collect();
            let out_jp: Vec<Rat> =
                (0..nj).map(|b| &gamma * &jp[b] + &beta * &kp[b] + &jxk[b]).collect();
            acc.add(xi, yi, 0, out_alpha);
            acc.add(xi, yi, 1, out_beta);
            for b in 0..nj {
                acc.add(xi, yi, j_at(b), out_j[b].clone());
                acc.add(xi, yi, jp_at(b), out_jp[b].clone());
            }
        }
    }
    let mut labels = vec!["u1".to_string(), "u2".to_string()];
    labels.extend((1..=nj).map(|i| format!("j{i}")));
    labels.extend((1..=nj).map(|i| format!("j'{i}")));
    let mut unit = vec![Rat::zero(); dim];
    unit[0] = Rat::one();
    unit[1] = Rat::one();
    let mut inv = identity_matrix(dim);
    inv[0][0] = Rat::zero();
    inv[1][1] = Rat::zero();
    inv[0][1] = Rat::one();
    inv[1][0] = Rat::one();
    Ok(Algebra::new(dim, labels, acc.into_entries(), Some(unit), Some(inv))?)
}

/// The minimal 1-dimensional admissible triple: T = 3 j k', N = N' with
/// N(j,j,j) = 6 j^3.
pub fn triple_1d_data() -> AdmissibleTripleData {
    AdmissibleTripleData {
        dim_j: 1,
        dim_jp: 1,
        t: vec![vec![rat_i(3)]],
        n: vec![rat_i(6)],
        np: vec![rat_i(6)],
    }
}

/// The same data with T = j k'; fails the sharp identity (27 j^4 vs j^4).
pub fn triple_1d_inadmissible_variant() -> AdmissibleTripleData {
    AdmissibleTripleData { t: vec![vec![rat_i(1)]], ..triple_1d_data() }
}

// --- skew octonions and T(C) ----------------------------------------------

fn express_in_basis(basis: &[Vec<Rat>], v: &[Rat]) -> Option<Vec<Rat>> {
    let n = v.len();
    let k = basis.len();
    // Solve B x = v with B columns = basis vectors.
    let mut rref = RatRref::new(k + 1);
    for r in 0..n {
        let mut row: Vec<Rat> = basis.iter().map(|b| b[r].clone()).collect();
        row.push(v[r].clone());
        rref.absorb_dense(row);
    }
    let mut x = vec![Rat::zero(); k];
    for (pc, row) in rref.canonical_rows() {
        if *pc == k {
            return None;
        }
        x[*pc] = row[k].clone();
    }
    Some(x)
}

fn octonion_skew_basis(c: &Algebra) -> Result<Vec<Vec<Rat>>, BuildError> {
    if c.dim != 8 || c.unit.is_none() || c.involution.is_none() {
        return Err(BuildError::NotOctonions);
    }
    let (h, s) = c.hermitian_skew_split()?;
    if h.len() != 1 || s.len() != 7 {
        return Err(BuildError::NotOctonions);
    }
    Ok(s)
}

/// The skew part of the octonions under the commutator: a 7-dimensional
/// anticommutative algebra.
pub fn malcev_minus(c: &Algebra) -> Result<Algebra, BuildError> {
    let s = octonion_skew_basis(c)?;
    let mut acc = ScAcc::default();
    for a in 0..7 {
        for b in 0..7 {
            let ea = c.element(s[a].clone())?;
            let eb = c.element(s[b].clone())?;
            let br = c.commutator(&ea, &eb)?;
            let coords = express_in_basis(&s, &br.coords).ok_or(BuildError::NotOctonions)?;
            for (k, v) in coords.into_iter().enumerate() {
                acc.add(a, b, k, v);
            }
        }
    }
    let labels = (2..=8).map(|i| format!("e{i}")).collect();
    Ok(Algebra::new(7, labels, acc.into_entries(), None, None)?)
}

/// Symmetric invariant bilinear form on the skew part, determined by
/// [[x,y],y] = (y,y)x - (x,y)y.
#[derive(Debug, Clone, PartialEq)]
pub struct MalcevForm {
    pub gram: Vec<Vec<Rat>>,
}

pub fn malcev_form(s: &Algebra) -> Result<MalcevForm, BuildError> {
    let n = s.dim;
    // Unknowns g[a][b] with a <= b.
    let mut unk = BTreeMap::new();
    for a in 0..n {
        for b in a..n {
            let next = unk.len();
            unk.insert((a, b), next);
        }
    }
    let g_idx = |a: usize, b: usize| unk[&(a.min(b), a.max(b))];
    let cols = unk.len() + 1;
    let mut rref = RatRref::new(cols);
    for i in 0..n {
        for j in 0..n {
            let ei = s.basis_element(i);
            let ej = s.basis_element(j);
            let lhs = s.mul(&s.mul(&ei, &ej)?, &ej)?;
            for r in 0..n {
                // lhs_r = g(j,j) [r==i] - g(i,j) [r==j]
                let mut row = vec![Rat::zero(); cols];
                if r == i {
                    row[g_idx(j, j)] += Rat::one();
                }
                if r == j {
                    row[g_idx(i, j)] -= Rat::one();
                }
                row[cols - 1] = -lhs.coords[r].clone();
                rref.absorb_dense(row);
            }
        }
    }
    let mut g = vec![Rat::zero(); unk.len()];
    for (pc, row) in rref.canonical_rows() {
        if *pc == cols - 1 {
            return Err(BuildError::Inconsistent);
        }
        // Particular solution: free unknowns stay zero. Sign: the RREF row
        // is g_pc + sum(free terms) + row[last] * (-rhs)... the augmented
        // column already carries -lhs, so g_pc = -row[last].
        g[*pc] = -row[cols - 1].clone();
    }
    let mut gram = vec![vec![Rat::zero(); n]; n];
    for ((a, b), idx) in &unk {
        gram[*a][*b] = g[*idx].clone();
        gram[*b][*a] = g[*idx].clone();
    }
    let form = MalcevForm { gram };
    if !malcev_form_identity_holds(s, &form)? {
        return Err(BuildError::Inconsistent);
    }
    if rank(&RatMatrix::from_dense(&form.gram, n)) != n {
        return Err(BuildError::Inconsistent);
    }
    Ok(form)
}

/// [[x,y],y] = (y,y)x - (x,y)y on all basis pairs.
pub fn malcev_form_identity_holds(s: &Algebra, form: &MalcevForm) -> Result<bool, BuildError> {
    let n = s.dim;
    for i in 0..n {
        for j in 0..n {
            let ei = s.basis_element(i);
            let ej = s.basis_element(j);
            let lhs = s.mul(&s.mul(&ei, &ej)?, &ej)?;
            for r in 0..n {
                let mut rhs = Rat::zero();
                if r == i {
                    rhs += &form.gram[j][j];
                }
                if r == j {
                    rhs -= &form.gram[i][j];
                }
                if lhs.coords[r] != rhs {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Jacobian J(x,y,z) = [[x,y],z] + [[y,z],x] + [[z,x],y].
fn jacobian(s: &Algebra, x: &Element, y: &Element, z: &Element) -> Result<Element, AlgebraError> {
    let t1 = s.mul(&s.mul(x, y)?, z)?;
    let t2 = s.mul(&s.mul(y, z)?, x)?;
    let t3 = s.mul(&s.mul(z, x)?, y)?;
    let coords = (0..s.dim).map(|r| &t1.coords[r] + &t2.coords[r] + &t3.coords[r]).collect();
    s.element(coords)
}

/// Malcev identity J(x,y,[x,z]) = [J(x,y,z),x] on all basis triples.
pub fn malcev_identity_holds(s: &Algebra) -> Result<bool, BuildError> {
    for i in 0..s.dim {
        for j in 0..s.dim {
            for k in 0..s.dim {
                let x = s.basis_element(i);
                let y = s.basis_element(j);
                let z = s.basis_element(k);
                let xz = s.mul(&x, &z)?;
                let lhs = jacobian(s, &x, &y, &xz)?;
                let rhs = s.mul(&jacobian(s, &x, &y, &z)?, &x)?;
                if lhs != rhs {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// First basis triple where the Jacobi identity fails, if any.
pub fn find_jacobi_counterexample(s: &Algebra) -> Result<Option<(usize, usize, usize)>, BuildError> {
    for i in 0..s.dim {
        for j in 0..s.dim {
            for k in 0..s.dim {
                let jac = jacobian(s, &s.basis_element(i), &s.basis_element(j), &s.basis_element(k))?;
                if jac.coords.iter().any(|c| !c.is_zero()) {
                    return Ok(Some((i, j, k)));
                }
            }
        }
    }
    Ok(None)
}

/// The 35-dimensional algebra on H + S, where S is the skew part of the
/// octonions and H its symmetric square; basis h_{ab} = s_a (.) s_b for
/// a <= b (28 elements) followed by s_0..s_6.
pub fn t_of_c(c: &Algebra) -> Result<Algebra, BuildError> {
    let s_basis = octonion_skew_basis(c)?;
    // Alternativity of the input, on all basis triples.
    for i in 0..8 {
        for j in 0..8 {
            let x = c.basis_element(i);
            let y = c.basis_element(j);
            if c.associator(&x, &x, &y)?.coords.iter().any(|v| !v.is_zero())
                || c.associator(&y, &x, &x)?.coords.iter().any(|v| !v.is_zero())
            {
                return Err(BuildError::NotOctonions);
            }
        }
    }
    let s_alg = malcev_minus(c)?;
    let form = malcev_form(&s_alg)?;
    let gram = &form.gram;
    let ns = 7usize;
    // bracket[a][b] = [s_a, s_b] in S coordinates.
    let bracket: Vec<Vec<Vec<Rat>>> = (0..ns)
        .map(|a| {
            (0..ns)
                .map(|b| {
                    let mut v = vec![Rat::zero(); ns];
                    for (k, cc) in s_alg.sc_entries(a, b) {
                        v[*k] = cc.clone();
                    }
                    v
                })
                .collect()
        })
        .collect();

    // Basis layout.
    let mut h_index = BTreeMap::new();
    for a in 0..ns {
        for b in a..ns {
            let next = h_index.len();
            h_index.insert((a, b), next);
        }
    }
    let nh = h_index.len(); // 28
    let dim = nh + ns; // 35
    let h_at = |a: usize, b: usize| h_index[&(a.min(b), a.max(b))];
    let s_at = |a: usize| nh + a;

    let mut acc = ScAcc::default();
    let add_s_vec = |acc: &mut ScAcc, i: usize, j: usize, v: &[Rat], scale: &Rat| {
        for (k, cv) in v.iter().enumerate() {
            acc.add(i, j, s_at(k), scale * cv);
        }
    };
    // Expands u (x) v into symmetric-square coordinates.
    let add_tensor = |acc: &mut ScAcc, i: usize, j: usize, u: &[Rat], v: &[Rat], scale: &Rat| {
        for (k, uk) in u.iter().enumerate() {
            if uk.is_zero() {
                continue;
            }
            for (l, vl) in v.iter().enumerate() {
                if !vl.is_zero() {
                    acc.add(i, j, h_at(k, l), scale * uk * vl);
                }
            }
        }
    };

    let half = rat(1, 2);
    let quarter = rat(1, 4);
    let one = Rat::one();

    // S * S: s_a s_b = h_{ab} + 1/2 [s_a, s_b].
    for a in 0..ns {
        for b in 0..ns {
            acc.add(s_at(a), s_at(b), h_at(a, b), one.clone());
            add_s_vec(&mut acc, s_at(a), s_at(b), &bracket[a][b], &half);
        }
    }

    // S * H and H * S.
    for a in 0..ns {
        for (&(b, cidx), &h) in &h_index {
            // odot part, in S:
            //   1/2 (s_b, s_c) s_a + 1/4 (s_a, s_b) s_c + 1/4 (s_a, s_c) s_b
            let mut odot = vec![Rat::zero(); ns];
            odot[a] += &half * &gram[b][cidx];
            odot[cidx] += &quarter * &gram[a][b];
            odot[b] += &quarter * &gram[a][cidx];
            // bracket part, in H: [s_a, s_b] (x) s_c + s_b (x) [s_a, s_c]
            let mut e_c = vec![Rat::zero(); ns];
            e_c[cidx] = Rat::one();
            let mut e_b = vec![Rat::zero(); ns];
            e_b[b] = Rat::one();
            let hidx = h;
            // s_a * h
            add_s_vec(&mut acc, s_at(a), hidx, &odot, &one);
            add_tensor(&mut acc, s_at(a), hidx, &bracket[a][b], &e_c, &half);
            add_tensor(&mut acc, s_at(a), hidx, &e_b, &bracket[a][cidx], &half);
            // h * s_a: odot commutes, bracket flips sign.
            add_s_vec(&mut acc, hidx, s_at(a), &odot, &one);
            add_tensor(&mut acc, hidx, s_at(a), &bracket[a][b], &e_c, &-&half);
            add_tensor(&mut acc, hidx, s_at(a), &e_b, &bracket[a][cidx], &-&half);
        }
    }

    // H * H.
    for (&(a, b), &h1) in &h_index {
        for (&(cc, dd), &h2) in &h_index {
            // odot part, in H:
            //   1/4 [s_a,s_c] (x) [s_b,s_d] + 1/4 [s_a,s_d] (x) [s_b,s_c]
            // + 1/2 (s_a,s_b) h_{cd} + 1/2 (s_c,s_d) h_{ab}
            add_tensor(&mut acc, h1, h2, &bracket[a][cc], &bracket[b][dd], &quarter);
            add_tensor(&mut acc, h1, h2, &bracket[a][dd], &bracket[b][cc], &quarter);
            acc.add(h1, h2, h2, &half * &gram[a][b]);
            acc.add(h1, h2, h1, &half * &gram[cc][dd]);
            // bracket part, in S:
            //   1/4 ((s_a,s_c)[s_b,s_d] + (s_a,s_d)[s_b,s_c]
            //      + (s_b,s_c)[s_a,s_d] + (s_b,s_d)[s_a,s_c]),
            // then the global 1/2 from xy = x odot y + 1/2 [x, y].
            // The 1/4 is forced: at full weight the operator identity
            // fails, while this normalization reproduces the closed
            // tensor-square model h_ab = s_a (x) s_b + s_b (x) s_a
            // + 1/2 (s_a,s_b) 1 (x) 1, s -> s (x) 1 + 1 (x) s inside the
            // tensor square of the octonions.
            let hc = rat(1, 8);
            add_s_vec(&mut acc, h1, h2, &bracket[b][dd], &(&hc * &gram[a][cc]));
            add_s_vec(&mut acc, h1, h2, &bracket[b][cc], &(&hc * &gram[a][dd]));
            add_s_vec(&mut acc, h1, h2, &bracket[a][dd], &(&hc * &gram[b][cc]));
            add_s_vec(&mut acc, h1, h2, &bracket[a][cc], &(&hc * &gram[b][dd]));
        }
    }

    // Labels: name S vectors by their octonion label when they are
    // coordinate vectors, else positionally.
    let s_label = |a: usize| -> String {
        let v = &s_basis[a];
        let nz: Vec<usize> = (0..8).filter(|&r| !v[r].is_zero()).collect();
        if nz.len() == 1 && v[nz[0]] == Rat::one() {
            c.labels[nz[0]].clone()
        } else {
            format!("s{}", a + 1)
        }
    };
    let mut labels = vec![String::new(); dim];
    for (&(a, b), &h) in &h_index {
        labels[h] = format!("{}⊙{}", s_label(a), s_label(b));
    }
    for a in 0..ns {
        labels[s_at(a)] = s_label(a);
    }

    let mut unit = vec![Rat::zero(); dim];
    for a in 0..ns {
        unit[h_at(a, a)] = rat(-1, 16);
    }
    let mut signs = vec![1i64; nh];
    signs.extend(vec![-1i64; ns]);
    let inv = diag_matrix(&signs);
    Ok(Algebra::new(dim, labels, acc.into_entries(), Some(unit), Some(inv))?)
}

// --- alternativity and composition helpers ---------------------------------

/// Associator fully alternating on basis triples (implies alternativity
/// in characteristic 0).
pub fn alternativity_holds(a: &Algebra) -> Result<bool, BuildError> {
    for i in 0..a.dim {
        for j in 0..a.dim {
            for k in 0..a.dim {
                let x = a.basis_element(i);
                let y = a.basis_element(j);
                let z = a.basis_element(k);
                let asc = a.associator(&x, &y, &z)?;
                let swap12 = a.associator(&y, &x, &z)?;
                let swap23 = a.associator(&x, &z, &y)?;
                for r in 0..a.dim {
                    if asc.coords[r] != -&swap12.coords[r] || asc.coords[r] != -&swap23.coords[r] {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// N(xy) = N(x) N(y) at `samples` random integer-coordinate points.
pub fn composition_norm_sampled(a: &Algebra, samples: usize, seed: u64) -> Result<bool, BuildError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let x = a.element((0..a.dim).map(|_| rat_i(rng.gen_range(-3..=3))).collect())?;
        let y = a.element((0..a.dim).map(|_| rat_i(rng.gen_range(-3..=3))).collect())?;
        let nx = norm_scalar(a, &x)?.ok_or_else(|| BuildError::NotComposition("norm of sample".into()))?;
        let ny = norm_scalar(a, &y)?.ok_or_else(|| BuildError::NotComposition("norm of sample".into()))?;
        let xy = a.mul(&x, &y)?;
        let nxy =
            norm_scalar(a, &xy)?.ok_or_else(|| BuildError::NotComposition("norm of product".into()))?;
        if nxy != nx * ny {
            return Ok(false);
        }
    }
    Ok(true)
}

// --- catalog ----------------------------------------------------------------

/// Registered catalog name patterns, CLI-facing.
pub fn catalog_name_patterns() -> Vec<&'static str> {
    vec![
        "field",
        "complex",
        "quaternion",
        "octonion",
        "octonion-table",
        "matrix-inv-<n>",
        "jordan-<n>",
        "hermitian-<n>",
        "tensor-<a>-<b>",
        "triple-1d",
        "toc",
        "sum-<a>-<b>",
    ]
}

/// The default verification catalog, in report order.
pub fn default_catalog() -> Vec<&'static str> {
    vec![
        "octonion-table",
        "matrix-inv-2",
        "jordan-3",
        "hermitian-2",
        "tensor-octonion-quaternion",
        "triple-1d",
        "toc",
        "sum-octonion-matrix-inv-2",
        "sum-toc-jordan-2",
    ]
}

/// The simple members of the default catalog.
pub fn simple_catalog() -> Vec<&'static str> {
    default_catalog().into_iter().filter(|n| !n.starts_with("sum-")).collect()
}

/// Builds a catalog algebra by name. Composite names nest, e.g.
/// "sum-octonion-matrix-inv-2".
pub fn build_by_name(name: &str) -> Result<Algebra, BuildError> {
    match name {
        "field" => return Ok(ground_field()),
        "complex" => return composition_algebra(2),
        "quaternion" => return composition_algebra(4),
        "octonion" => return composition_algebra(8),
        "octonion-table" => return Ok(octonion_explicit_table()),
        "triple-1d" => return admissible_triple_algebra(&triple_1d_data()),
        "toc" => return t_of_c(&octonion_explicit_table()),
        _ => {}
    }
    if let Some(rest) = name.strip_prefix("matrix-inv-") {
        let n: usize = rest.parse().map_err(|_| BuildError::UnknownAlgebra(name.into()))?;
        if n == 0 {
            return Err(BuildError::UnknownAlgebra(name.into()));
        }
        return Ok(matrix_involution_algebra(n));
    }
    if let Some(rest) = name.strip_prefix("jordan-") {
        let n: usize = rest.parse().map_err(|_| BuildError::UnknownAlgebra(name.into()))?;
        if n == 0 {
            return Err(BuildError::UnknownAlgebra(name.into()));
        }
        return Ok(jordan_matrix(n));
    }
    if let Some(rest) = name.strip_prefix("hermitian-") {
        let n: usize = rest.parse().map_err(|_| BuildError::UnknownAlgebra(name.into()))?;
        if n == 0 {
            return Err(BuildError::UnknownAlgebra(name.into()));
        }
        return Ok(hermitian_form_algebra(n));
    }
    for (prefix, op) in [("tensor-", true), ("sum-", false)] {
        if let Some(rest) = name.strip_prefix(prefix) {
            if let Some((a, b)) = split_composite(rest) {
                return Ok(if op { tensor_product(&a, &b) } else { direct_sum(&a, &b) });
            }
            return Err(BuildError::UnknownAlgebra(name.into()));
        }
    }
    Err(BuildError::UnknownAlgebra(name.into()))
}

/// Splits "a-b" where both halves are themselves catalog names, scanning
/// split points left to right.
fn split_composite(rest: &str) -> Option<(Algebra, Algebra)> {
    for (pos, ch) in rest.char_indices() {
        if ch != '-' {
            continue;
        }
        let (left, right) = (&rest[..pos], &rest[pos + 1..]);
        if let (Ok(a), Ok(b)) = (build_by_name(left), build_by_name(right)) {
            return Some((a, b));
        }
    }
    None
}

/// Component dimensions of a composite "sum-a-b" name, used for
/// block-structure checks.
pub fn sum_component_dims(name: &str) -> Option<(usize, usize)> {
    let rest = name.strip_prefix("sum-")?;
    for (pos, ch) in rest.char_indices() {
        if ch != '-' {
            continue;
        }
        let (left, right) = (&rest[..pos], &rest[pos + 1..]);
        if let (Ok(a), Ok(b)) = (build_by_name(left), build_by_name(right)) {
            return Some((a.dim, b.dim));
        }
    }
    None
}

pub fn kernel_basis_cols(m: &[Vec<Rat>], cols: usize) -> Vec<Vec<Rat>> {
    kernel_basis(&RatMatrix::from_dense(m, cols))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structurable::check_structurable;

    fn basis_product(a: &Algebra, i: usize, j: usize) -> Vec<Rat> {
        a.mul(&a.basis_element(i), &a.basis_element(j)).unwrap().coords
    }

    fn unit_vec(n: usize, i: usize, scale: Rat) -> Vec<Rat> {
        let mut v = vec![Rat::zero(); n];
        v[i] = scale;
        v
    }

    #[test]
    fn complex_numbers_from_doubling() {
        let c = composition_algebra(2).unwrap();
        // e2^2 = -e1
        assert_eq!(basis_product(&c, 1, 1), unit_vec(2, 0, -Rat::one()));
        assert!(c.unit_is_two_sided().unwrap());
        assert!(c.involution_is_valid().unwrap());
    }

    #[test]
    fn quaternions_are_associative_octonions_are_not() {
        let q = composition_algebra(4).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    let asc = q
                        .associator(&q.basis_element(i), &q.basis_element(j), &q.basis_element(k))
                        .unwrap();
                    assert!(asc.coords.iter().all(|c| c.is_zero()));
                }
            }
        }
        let o = composition_algebra(8).unwrap();
        let asc =
            o.associator(&o.basis_element(1), &o.basis_element(2), &o.basis_element(4)).unwrap();
        assert!(asc.coords.iter().any(|c| !c.is_zero()));
    }

    #[test]
    fn doubling_stops_at_dimension_eight() {
        let o = composition_algebra(8).unwrap();
        assert_eq!(cayley_dickson(&o, &-Rat::one()).unwrap_err(), BuildError::DimensionLimit);
    }

    #[test]
    fn composition_algebras_are_alternative_and_multiplicative() {
        for dim in [1, 2, 4, 8] {
            let a = composition_algebra(dim).unwrap();
            assert!(alternativity_holds(&a).unwrap(), "dim {dim}");
            assert!(composition_norm_sampled(&a, 100, 7).unwrap(), "dim {dim}");
        }
    }

    #[test]
    fn octonion_table_matches_listed_products() {
        let o = octonion_explicit_table();
        // spot-check one product per table line, 1-based indices
        let expect = [
            ((1usize, 2usize), 2usize),
            ((7, 6), 3),
            ((2, 3), 4),
            ((6, 2), 5),
            ((8, 4), 6),
            ((5, 4), 7),
            ((4, 6), 8),
        ];
        for ((i, j), k) in expect {
            assert_eq!(basis_product(&o, i - 1, j - 1), unit_vec(8, k - 1, Rat::one()), "e{i} e{j}");
        }
        // anticommutativity of an unlisted ordered pair
        assert_eq!(basis_product(&o, 3, 2), unit_vec(8, 1, -Rat::one())); // e4 e3 = -e2
        for i in 1..8 {
            assert_eq!(basis_product(&o, i, i), unit_vec(8, 0, -Rat::one()));
        }
        assert!(o.unit_is_two_sided().unwrap());
        assert!(o.involution_is_valid().unwrap());
        assert!(alternativity_holds(&o).unwrap());
        assert!(composition_norm_sampled(&o, 100, 11).unwrap());
        assert!(check_structurable(&o).unwrap().is_none());
    }

    #[test]
    fn matrix_algebra_with_transpose_involution() {
        let a = matrix_involution_algebra(2);
        // E11 E12 = E12, E12 E21 = E11, E12 E12 = 0
        assert_eq!(basis_product(&a, 0, 1), unit_vec(4, 1, Rat::one()));
        assert_eq!(basis_product(&a, 1, 2), unit_vec(4, 0, Rat::one()));
        assert!(basis_product(&a, 1, 1).iter().all(|c| c.is_zero()));
        assert!(a.unit_is_two_sided().unwrap());
        assert!(a.involution_is_valid().unwrap());
        assert!(check_structurable(&a).unwrap().is_none());
    }

    #[test]
    fn jordan_algebra_is_commutative_and_satisfies_jordan_identity() {
        let a = jordan_matrix(3);
        for i in 0..9 {
            for j in 0..9 {
                assert_eq!(basis_product(&a, i, j), basis_product(&a, j, i));
            }
        }
        // (x^2 o y) o x = x^2 o (y o x) on basis pairs
        for i in 0..9 {
            for j in 0..9 {
                let x = a.basis_element(i);
                let y = a.basis_element(j);
                let x2 = a.mul(&x, &x).unwrap();
                let lhs = a.mul(&a.mul(&x2, &y).unwrap(), &x).unwrap();
                let rhs = a.mul(&x2, &a.mul(&y, &x).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
        assert!(a.unit_is_two_sided().unwrap());
        assert!(check_structurable(&a).unwrap().is_none());
    }

    #[test]
    fn hermitian_form_algebra_products() {
        let n = 2;
        let a = hermitian_form_algebra(n);
        assert_eq!(a.dim, 6);
        let w = |i: usize| n * n + i;
        // w1 w2 = E21 (index 1*2+0 = 2)
        assert_eq!(basis_product(&a, w(0), w(1)), unit_vec(6, 2, Rat::one()));
        // E12 w1 = w2 (transpose acts: E21 u1 = u2)
        assert_eq!(basis_product(&a, 1, w(0)), unit_vec(6, w(1), Rat::one()));
        // w1 E12 = 0 since E12 u1 = 0; w2 E12 = w1
        assert!(basis_product(&a, w(0), 1).iter().all(|c| c.is_zero()));
        assert_eq!(basis_product(&a, w(1), 1), unit_vec(6, w(0), Rat::one()));
        assert!(a.unit_is_two_sided().unwrap());
        assert!(a.involution_is_valid().unwrap());
        assert!(check_structurable(&a).unwrap().is_none());
    }

    #[test]
    fn triple_1d_is_admissible_and_scaled_variant_is_not() {
        assert_eq!(check_admissible_triple(&triple_1d_data()).unwrap(), None);
        assert!(check_admissible_triple(&triple_1d_inadmissible_variant()).unwrap().is_some());
    }

    #[test]
    fn triple_algebra_products() {
        let a = admissible_triple_algebra(&triple_1d_data()).unwrap();
        assert_eq!(a.dim, 4);
        // basis: u1, u2, j, j'
        // j j = 2 j', j' j' = 2 j
        assert_eq!(basis_product(&a, 2, 2), unit_vec(4, 3, rat_i(2)));
        assert_eq!(basis_product(&a, 3, 3), unit_vec(4, 2, rat_i(2)));
        // j j' = T(j, j') u1 = 3 u1; j' j = 3 u2
        assert_eq!(basis_product(&a, 2, 3), unit_vec(4, 0, rat_i(3)));
        assert_eq!(basis_product(&a, 3, 2), unit_vec(4, 1, rat_i(3)));
        assert!(a.unit_is_two_sided().unwrap());
        assert!(a.involution_is_valid().unwrap());
        assert!(check_structurable(&a).unwrap().is_none());
    }

    #[test]
    fn skew_octonions_are_malcev_but_not_lie() {
        let s = malcev_minus(&octonion_explicit_table()).unwrap();
        assert_eq!(s.dim, 7);
        for i in 0..7 {
            for j in 0..7 {
                let ij = basis_product(&s, i, j);
                let ji = basis_product(&s, j, i);
                for r in 0..7 {
                    assert_eq!(ij[r], -&ji[r]);
                }
            }
        }
        assert!(find_jacobi_counterexample(&s).unwrap().is_some());
        assert!(malcev_identity_holds(&s).unwrap());
    }

    #[test]
    fn malcev_form_is_diagonal_minus_four() {
        let s = malcev_minus(&octonion_explicit_table()).unwrap();
        let form = malcev_form(&s).unwrap();
        for a in 0..7 {
            for b in 0..7 {
                let expect = if a == b { rat_i(-4) } else { Rat::zero() };
                assert_eq!(form.gram[a][b], expect, "({a},{b})");
            }
        }
        assert!(malcev_form_identity_holds(&s, &form).unwrap());
    }

    #[test]
    fn toc_shape_and_sample_products() {
        let t = t_of_c(&octonion_explicit_table()).unwrap();
        assert_eq!(t.dim, 35);
        assert!(t.unit_is_two_sided().unwrap());
        assert!(t.involution_is_valid().unwrap());
        let (h, s) = t.hermitian_skew_split().unwrap();
        assert_eq!((h.len(), s.len()), (28, 7));
        // s_1 (s_1 (x) s_1) = -4 s_1 (quadratic form value -4, no bracket term)
        let h11 = 0usize; // (0,0) is the first symmetric pair
        let s1 = 28usize;
        assert_eq!(basis_product(&t, s1, h11), unit_vec(35, s1, rat_i(-4)));
        assert_eq!(basis_product(&t, h11, s1), unit_vec(35, s1, rat_i(-4)));
        // [s_1 (x) s_1, s_2 (x) s_2] = 0: orthogonal indices kill the 4-term
        // bracket, so the product is symmetric.
        let h22 = 7usize; // pairs in order: (0,0),(0,1)..(0,6),(1,1),...
        assert_eq!(basis_product(&t, h11, h22), basis_product(&t, h22, h11));
    }

    #[test]
    fn toc_satisfies_the_structurable_identity() {
        let t = t_of_c(&octonion_explicit_table()).unwrap();
        assert_eq!(check_structurable(&t).unwrap(), None);
    }

    #[test]
    fn catalog_names_build() {
        for name in default_catalog() {
            let a = build_by_name(name).unwrap();
            assert!(a.dim > 0, "{name}");
        }
        assert_eq!(build_by_name("octonion-table").unwrap().dim, 8);
        assert_eq!(build_by_name("sum-octonion-matrix-inv-2").unwrap().dim, 12);
        assert_eq!(build_by_name("tensor-octonion-quaternion").unwrap().dim, 32);
        assert_eq!(build_by_name("sum-toc-jordan-2").unwrap().dim, 39);
        assert!(matches!(build_by_name("nope"), Err(BuildError::UnknownAlgebra(_))));
        assert!(matches!(build_by_name("matrix-inv-0"), Err(BuildError::UnknownAlgebra(_))));
    }

    #[test]
    fn sum_component_dims_parse() {
        assert_eq!(sum_component_dims("sum-octonion-matrix-inv-2"), Some((8, 4)));
        assert_eq!(sum_component_dims("sum-toc-jordan-2"), Some((35, 4)));
        assert_eq!(sum_component_dims("octonion"), None);
    }
}
