//! The structurable operator identity, checked exactly on all basis
//! quadruples: [T_z, V_{x,y}] = V_{T_z x, y} - V_{x, T_zbar y} applied
//! to every basis vector.
//!
//! The hot path runs on word-sized fractions with overflow checks and
//! falls back to arbitrary precision if anything does not fit.

use crate::algebra::{Algebra, AlgebraError};
use crate::rat::Rat;

/// First violating quadruple, by basis index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructurableWitness {
    pub x: usize,
    pub y: usize,
    pub z: usize,
    pub w: usize,
}

struct Overflow;

trait CheckScalar: Clone + PartialEq + Sized {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn from_rat(r: &Rat) -> Option<Self>;
    fn add(&self, other: &Self) -> Result<Self, Overflow>;
    fn mul(&self, other: &Self) -> Result<Self, Overflow>;
    fn neg(&self) -> Self;
}

/// Word-sized fraction; every operation checks for overflow.
#[derive(Clone, Copy, PartialEq, Eq)]
struct SmallRat {
    n: i64,
    d: i64, // > 0, gcd(|n|, d) = 1
}

fn gcd_i128(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl SmallRat {
    fn make(mut n: i128, mut d: i128) -> Result<SmallRat, Overflow> {
        debug_assert!(d != 0);
        if n == 0 {
            return Ok(SmallRat { n: 0, d: 1 });
        }
        if d < 0 {
            n = -n;
            d = -d;
        }
        let g = gcd_i128(n, d);
        n /= g;
        d /= g;
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) => Ok(SmallRat { n, d }),
            _ => Err(Overflow),
        }
    }
}

impl CheckScalar for SmallRat {
    fn zero() -> Self {
        SmallRat { n: 0, d: 1 }
    }
    fn is_zero(&self) -> bool {
        self.n == 0
    }
    fn from_rat(r: &Rat) -> Option<Self> {
        let (n, d) = crate::rat::rat_to_i64_pair(r)?;
        Some(SmallRat { n, d })
    }
    fn add(&self, other: &Self) -> Result<Self, Overflow> {
        SmallRat::make(
            self.n as i128 * other.d as i128 + other.n as i128 * self.d as i128,
            self.d as i128 * other.d as i128,
        )
    }
    fn mul(&self, other: &Self) -> Result<Self, Overflow> {
        SmallRat::make(self.n as i128 * other.n as i128, self.d as i128 * other.d as i128)
    }
    fn neg(&self) -> Self {
        SmallRat { n: -self.n, d: self.d }
    }
}

impl CheckScalar for Rat {
    fn zero() -> Self {
        num::Zero::zero()
    }
    fn is_zero(&self) -> bool {
        num::Zero::is_zero(self)
    }
    fn from_rat(r: &Rat) -> Option<Self> {
        Some(r.clone())
    }
    fn add(&self, other: &Self) -> Result<Self, Overflow> {
        Ok(self + other)
    }
    fn mul(&self, other: &Self) -> Result<Self, Overflow> {
        Ok(self * other)
    }
    fn neg(&self) -> Self {
        -self
    }
}

type SVec<T> = Vec<(usize, T)>;

struct Tables<T> {
    n: usize,
    /// prod[i*n+j] = e_i e_j.
    prod: Vec<SVec<T>>,
    /// jcol[j] = image of e_j under the involution.
    jcol: Vec<SVec<T>>,
    unit: SVec<T>,
}

impl<T: CheckScalar> Tables<T> {
    fn build(a: &Algebra) -> Option<Tables<T>> {
        let n = a.dim;
        let mut prod = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let v: Option<SVec<T>> =
                    a.sc_entries(i, j).iter().map(|(k, c)| T::from_rat(c).map(|t| (*k, t))).collect();
                prod.push(v?);
            }
        }
        let jm = a.involution.as_ref()?;
        let mut jcol = Vec::with_capacity(n);
        for c in 0..n {
            let mut col = Vec::new();
            for (r, row) in jm.iter().enumerate() {
                if !num::Zero::is_zero(&row[c]) {
                    col.push((r, T::from_rat(&row[c])?));
                }
            }
            jcol.push(col);
        }
        let u = a.unit.as_ref()?;
        let unit: Option<SVec<T>> = u
            .iter()
            .enumerate()
            .filter(|(_, v)| !num::Zero::is_zero(*v))
            .map(|(i, v)| T::from_rat(v).map(|t| (i, t)))
            .collect();
        Some(Tables { n, prod, jcol, unit: unit? })
    }

    /// v * e_b for sparse v.
    fn mul_sparse_basis(&self, v: &SVec<T>, b: usize, acc: &mut Accum<T>) -> Result<(), Overflow> {
        for (r, coeff) in v {
            for (k, c) in &self.prod[r * self.n + b] {
                acc.add(*k, coeff.mul(c)?)?;
            }
        }
        Ok(())
    }

    /// v * w for sparse v, w.
    fn mul_sparse_sparse(&self, v: &SVec<T>, w: &SVec<T>, acc: &mut Accum<T>) -> Result<(), Overflow> {
        for (r, cv) in v {
            for (s, cw) in w {
                let f = cv.mul(cw)?;
                for (k, c) in &self.prod[r * self.n + s] {
                    acc.add(*k, f.mul(c)?)?;
                }
            }
        }
        Ok(())
    }
}

/// Dense accumulator with a touched list, reusable across iterations.
struct Accum<T> {
    vals: Vec<T>,
    touched: Vec<usize>,
    is_set: Vec<bool>,
}

impl<T: CheckScalar> Accum<T> {
    fn new(n: usize) -> Self {
        Accum { vals: vec![T::zero(); n], touched: Vec::with_capacity(n), is_set: vec![false; n] }
    }

    fn add(&mut self, k: usize, v: T) -> Result<(), Overflow> {
        if v.is_zero() {
            return Ok(());
        }
        if !self.is_set[k] {
            self.is_set[k] = true;
            self.touched.push(k);
            self.vals[k] = v;
        } else {
            self.vals[k] = self.vals[k].add(&v)?;
        }
        Ok(())
    }

    fn sub(&mut self, k: usize, v: T) -> Result<(), Overflow> {
        self.add(k, v.neg())
    }

    fn drain_sparse(&mut self) -> SVec<T> {
        let mut out: SVec<T> = Vec::with_capacity(self.touched.len());
        self.touched.sort_unstable();
        for &k in &self.touched {
            if !self.vals[k].is_zero() {
                out.push((k, self.vals[k].clone()));
            }
            self.vals[k] = T::zero();
            self.is_set[k] = false;
        }
        self.touched.clear();
        out
    }

    fn all_zero_and_clear(&mut self) -> bool {
        let mut ok = true;
        for &k in &self.touched {
            if !self.vals[k].is_zero() {
                ok = false;
            }
            self.vals[k] = T::zero();
            self.is_set[k] = false;
        }
        self.touched.clear();
        ok
    }
}

fn run_check<T: CheckScalar>(a: &Algebra) -> Result<Option<StructurableWitness>, Overflow> {
    let tables = match Tables::<T>::build(a) {
        Some(t) => t,
        None => return Err(Overflow),
    };
    let n = tables.n;
    let mut acc = Accum::new(n);

    // ubar = J(unit); equals unit for a valid involution but computed anyway.
    let mut ubar_acc = Accum::new(n);
    for (t, c) in &tables.unit {
        for (r, jc) in &tables.jcol[*t] {
            ubar_acc.add(*r, jc.mul(c)?)?;
        }
    }
    let ubar = ubar_acc.drain_sparse();

    // A[x][y] = x * ybar on basis pairs.
    let mut axy: Vec<SVec<T>> = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            for (t, c) in &tables.jcol[y] {
                for (k, pc) in &tables.prod[x * n + t] {
                    acc.add(*k, c.mul(pc)?)?;
                }
            }
            axy.push(acc.drain_sparse());
        }
    }

    // Vcol[(x*n + y)*n + w] = V_{e_x, e_y}(e_w).
    let mut vcol: Vec<SVec<T>> = Vec::with_capacity(n * n * n);
    for x in 0..n {
        for y in 0..n {
            for w in 0..n {
                tables.mul_sparse_basis(&axy[x * n + y], w, &mut acc)?;
                tables.mul_sparse_basis(&axy[w * n + y], x, &mut acc)?;
                // subtract (e_w xbar) y
                for (r, cv) in &axy[w * n + x] {
                    for (k, c) in &tables.prod[r * n + y] {
                        acc.sub(*k, cv.mul(c)?)?;
                    }
                }
                vcol.push(acc.drain_sparse());
            }
        }
    }

    // Tcol[z][w] = T_{e_z}(e_w) = (z ubar) e_w + (e_w ubar) z - (e_w zbar) unit.
    let mut tcol: Vec<SVec<T>> = Vec::with_capacity(n * n);
    for z in 0..n {
        // z * ubar
        let mut zu = Accum::new(n);
        for (t, c) in &ubar {
            for (k, pc) in &tables.prod[z * n + t] {
                zu.add(*k, c.mul(pc)?)?;
            }
        }
        let zu = zu.drain_sparse();
        for w in 0..n {
            tables.mul_sparse_basis(&zu, w, &mut acc)?;
            // (e_w ubar) z
            let mut wu = Accum::new(n);
            for (t, c) in &ubar {
                for (k, pc) in &tables.prod[w * n + t] {
                    wu.add(*k, c.mul(pc)?)?;
                }
            }
            let wu = wu.drain_sparse();
            tables.mul_sparse_basis(&wu, z, &mut acc)?;
            // - (e_w zbar) unit
            let mut wz = Accum::new(n);
            for (t, c) in &tables.jcol[z] {
                for (k, pc) in &tables.prod[w * n + t] {
                    wz.add(*k, c.mul(pc)?)?;
                }
            }
            let wz = wz.drain_sparse();
            let mut neg = Accum::new(n);
            tables.mul_sparse_sparse(&wz, &tables.unit, &mut neg)?;
            for (k, v) in neg.drain_sparse() {
                acc.sub(k, v)?;
            }
            tcol.push(acc.drain_sparse());
        }
    }

    // Main sweep.
    let mut diff = Accum::new(n);
    for z in 0..n {
        // T_{zbar}(e_y) = sum_t J[t][z] T_{e_t}(e_y)
        let mut tzbar_y: Vec<SVec<T>> = Vec::with_capacity(n);
        for y in 0..n {
            let mut b = Accum::new(n);
            for (t, c) in &tables.jcol[z] {
                for (r, v) in &tcol[t * n + y] {
                    b.add(*r, c.mul(v)?)?;
                }
            }
            tzbar_y.push(b.drain_sparse());
        }
        for x in 0..n {
            let tzx = &tcol[z * n + x];
            for y in 0..n {
                let vxy_base = (x * n + y) * n;
                let tzby = &tzbar_y[y];
                for w in 0..n {
                    // + T_z(V_{x,y}(e_w))
                    for (r, v) in &vcol[vxy_base + w] {
                        for (k, t) in &tcol[z * n + r] {
                            diff.add(*k, v.mul(t)?)?;
                        }
                    }
                    // - V_{x,y}(T_z(e_w))
                    for (r, v) in &tcol[z * n + w] {
                        for (k, t) in &vcol[vxy_base + r] {
                            diff.sub(*k, v.mul(t)?)?;
                        }
                    }
                    // - V_{T_z x, y}(e_w)
                    for (r, v) in tzx {
                        for (k, t) in &vcol[(r * n + y) * n + w] {
                            diff.sub(*k, v.mul(t)?)?;
                        }
                    }
                    // + V_{x, T_zbar y}(e_w)
                    for (r, v) in tzby {
                        for (k, t) in &vcol[(x * n + r) * n + w] {
                            diff.add(*k, v.mul(t)?)?;
                        }
                    }
                    if !diff.all_zero_and_clear() {
                        return Ok(Some(StructurableWitness { x, y, z, w }));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// Checks the structurable identity on all basis quadruples; returns
/// None when the algebra is structurable, or the first violating
/// quadruple otherwise.
pub fn check_structurable(a: &Algebra) -> Result<Option<StructurableWitness>, AlgebraError> {
    if a.unit.is_none() {
        return Err(AlgebraError::NoUnit);
    }
    if a.involution.is_none() {
        return Err(AlgebraError::NoInvolution);
    }
    match run_check::<SmallRat>(a) {
        Ok(res) => Ok(res),
        Err(Overflow) => match run_check::<Rat>(a) {
            Ok(res) => Ok(res),
            Err(Overflow) => unreachable!("arbitrary precision path cannot overflow"),
        },
    }
}
