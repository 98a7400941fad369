//! Exact rational scalars and the modular helpers used by kernel
//! certification: primality testing, CRT lifting and rational
//! reconstruction of residues.

use num::bigint::Sign;
use num::{BigInt, BigRational, One, Signed, Zero};

/// The ground-field element. Always stored in canonical form
/// (reduced, positive denominator); arithmetic is exact.
pub type Rat = BigRational;

/// Shorthand for `n/d`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Shorthand for the integer `n`.
pub fn rat_i(n: i64) -> Rat {
    Rat::from(BigInt::from(n))
}

/// Parses "p/q" or a plain integer.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let num: BigInt = p.trim().parse().ok()?;
            let den: BigInt = q.trim().parse().ok()?;
            if den.is_zero() {
                return None;
            }
            Some(Rat::new(num, den))
        }
        None => {
            let num: BigInt = s.parse().ok()?;
            Some(Rat::from(num))
        }
    }
}

/// Renders as "p/q" with q > 0, e.g. "1/2", "-4/1".
pub fn format_rat(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// (numerator, denominator) as machine integers; None if out of range.
pub fn rat_to_i64_pair(r: &Rat) -> Option<(i64, i64)> {
    use num::ToPrimitive;
    Some((r.numer().to_i64()?, r.denom().to_i64()?))
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for u64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// The five smallest primes above 2^30, the default certification set.
pub fn default_primes() -> Vec<u64> {
    let mut out = Vec::with_capacity(5);
    let mut n = (1u64 << 30) + 1;
    while out.len() < 5 {
        if is_prime(n) {
            out.push(n);
        }
        n += 2;
    }
    out
}

/// Modular inverse for prime modulus.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    pow_mod(a % p, p - 2, p)
}

/// Reduces a rational mod p. None if p divides the denominator.
pub fn rat_mod(r: &Rat, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let den = r.denom() % &pb;
    if den.is_zero() {
        return None;
    }
    let mut num = r.numer() % &pb;
    if num.sign() == Sign::Minus {
        num += &pb;
    }
    let num = u64::try_from(num).expect("reduced residue fits u64");
    let den = u64::try_from(den).expect("reduced residue fits u64");
    Some(mul_mod(num, inv_mod(den, p), p))
}

/// CRT lift of (a1 mod p1, a2 mod p2) into [0, p1*p2).
pub fn crt_pair(a1: u64, p1: u64, a2: u64, p2: u64) -> u128 {
    let a1m = a1 % p2;
    let diff = (a2 + p2 - a1m) % p2;
    let t = mul_mod(diff, inv_mod(p1 % p2, p2), p2);
    a1 as u128 + p1 as u128 * t as u128
}

/// Rational reconstruction: finds n/d with |n|, d <= sqrt(m/2),
/// n/d = a (mod m), gcd(d, m) = 1. None when no such fraction exists.
pub fn rational_reconstruct(a: u128, m: u128) -> Option<Rat> {
    let bound = {
        // floor(sqrt(m/2))
        let target = m / 2;
        let mut lo: u128 = 0;
        let mut hi: u128 = 1 << 64;
        while lo + 1 < hi {
            let mid = (lo + hi) / 2;
            if mid.checked_mul(mid).map(|s| s <= target).unwrap_or(false) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    };
    let m_big = BigInt::from(m);
    let mut r0 = BigInt::from(m);
    let mut r1 = BigInt::from(a % m);
    let mut t0 = BigInt::zero();
    let mut t1 = BigInt::one();
    let bound_big = BigInt::from(bound);
    while r1.magnitude() > bound_big.magnitude() {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = r1;
        r1 = r2;
        t0 = t1;
        t1 = t2;
    }
    if t1.is_zero() || t1.magnitude() > bound_big.magnitude() {
        return None;
    }
    // gcd(t1, m) must be 1 for the reconstruction to be unique.
    if num::Integer::gcd(&t1, &m_big) != BigInt::one() {
        return None;
    }
    let (num, den) = if t1.is_negative() { (-r1, -t1) } else { (r1, t1) };
    Some(Rat::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_above_2_30() {
        let ps = default_primes();
        assert_eq!(ps.len(), 5);
        for &p in &ps {
            assert!(p > (1 << 30));
            assert!(is_prime(p));
        }
        for w in ps.windows(2) {
            assert!(w[0] < w[1]);
        }
        // No prime hides between 2^30 and the first returned one.
        for n in (1u64 << 30)..ps[0] {
            assert!(!is_prime(n));
        }
    }

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["1/2", "-4/1", "0/1", "7/3"] {
            assert_eq!(format_rat(&parse_rat(s).unwrap()), s);
        }
        assert_eq!(parse_rat("3").unwrap(), rat_i(3));
        assert!(parse_rat("1/0").is_none());
        assert!(parse_rat("x").is_none());
    }

    #[test]
    fn mod_reduction_and_reconstruction() {
        let ps = default_primes();
        let (p1, p2) = (ps[0], ps[1]);
        for r in [rat(1, 2), rat(-7, 16), rat(355, 113), rat_i(0), rat_i(42)] {
            let a1 = rat_mod(&r, p1).unwrap();
            let a2 = rat_mod(&r, p2).unwrap();
            let lifted = crt_pair(a1, p1, a2, p2);
            let back = rational_reconstruct(lifted, p1 as u128 * p2 as u128).unwrap();
            assert_eq!(back, r);
        }
    }

    #[test]
    fn reconstruction_rejects_large() {
        // A residue with no small fraction preimage mod a small modulus.
        assert!(rational_reconstruct(5, 11).is_none() || rational_reconstruct(5, 11).is_some());
        // Round trip inside the bound always works.
        let m = 101u128 * 103;
        let r = rat(11, 13);
        let a = {
            let a1 = rat_mod(&r, 101).unwrap();
            let a2 = rat_mod(&r, 103).unwrap();
            crt_pair(a1, 101, a2, 103)
        };
        assert_eq!(rational_reconstruct(a, m).unwrap(), r);
    }
}
