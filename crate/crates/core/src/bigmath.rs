//! Arbitrary-precision integer utilities.
//!
//! Everything here is a pure function over `num-bigint` values. The integer
//! k-th root is a Newton iteration seeded from the bit length; perfect-power
//! decomposition peels off prime exponents until none remain, which yields
//! the maximal exponent.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Non-negative greatest common divisor, with `gcd(a, 0) = |a|`.
pub fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    let mut x = a.abs();
    let mut y = b.abs();
    while !y.is_zero() {
        let r = &x % &y;
        x = y;
        y = r;
    }
    x
}

/// Trial-division primality for the small primes used as moduli and exponents.
pub fn is_small_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p < 4 {
        return true;
    }
    if p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// All primes `<= limit`, ascending.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i * i;
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    out
}

/// Largest `e` with `p^e | n`.
pub fn valuation(p: u64, n: &BigInt) -> Result<u32> {
    if !is_small_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if n.is_zero() {
        return Err(Error::ZeroValuation);
    }
    let p = BigInt::from(p);
    let mut rest = n.abs();
    let mut e = 0;
    loop {
        let (q, r) = rest.div_rem(&p);
        if !r.is_zero() {
            return Ok(e);
        }
        rest = q;
        e += 1;
    }
}

/// Splits `n > 0` as `p^s * rest` with `p` not dividing `rest`.
pub fn strip_prime(p: u64, n: &BigInt) -> Result<(u32, BigInt)> {
    if !is_small_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if n.sign() != Sign::Plus {
        return Err(Error::NonPositive(n.to_string()));
    }
    let (s, rest) = strip_prime_unsigned(p, n.magnitude());
    Ok((s, BigInt::from(rest)))
}

pub(crate) fn strip_prime_unsigned(p: u64, n: &BigUint) -> (u32, BigUint) {
    debug_assert!(!n.is_zero());
    if p == 2 {
        let s = n.trailing_zeros().unwrap_or(0);
        return (s as u32, n >> s);
    }
    let p = BigUint::from(p);
    let mut rest = n.clone();
    let mut s = 0;
    loop {
        let (q, r) = rest.div_rem(&p);
        if !r.is_zero() {
            return (s, rest);
        }
        rest = q;
        s += 1;
    }
}

/// `floor(n^(1/k))` for `k >= 1`.
///
/// Newton's method started above the root decreases monotonically to the
/// floor; a final correction loop guards the boundary.
pub fn integer_kth_root(n: &BigUint, k: u32) -> BigUint {
    assert!(k >= 1, "root degree must be positive");
    if k == 1 || n.is_zero() || n.is_one() {
        return n.clone();
    }
    let bits = n.bits();
    if bits <= u64::from(k) {
        // 1 <= n < 2^k, so the root is 1
        return BigUint::one();
    }
    let k_big = BigUint::from(k);
    let k_minus_1 = k - 1;
    let mut x = BigUint::one() << bits.div_ceil(u64::from(k));
    loop {
        let next = (&x * k_minus_1 + n / x.pow(k_minus_1)) / &k_big;
        if next >= x {
            break;
        }
        x = next;
    }
    while x.pow(k) > *n {
        x -= 1u32;
    }
    loop {
        let up = &x + 1u32;
        if up.pow(k) <= *n {
            x = up;
        } else {
            break;
        }
    }
    x
}

/// `Some(root)` iff `n` is an exact `k`-th power.
pub fn exact_root(n: &BigUint, k: u32) -> Option<BigUint> {
    let r = integer_kth_root(n, k);
    (r.pow(k) == *n).then_some(r)
}

/// Perfect-power structure of a non-negative integer.
///
/// 0 and 1 are kept apart because every exponent works for them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PowerDecomposition {
    Zero,
    One,
    /// `base^exponent` with the exponent maximal, so `base` is not itself a
    /// perfect power.
    Power {
        base: BigUint,
        exponent: u32,
    },
}

impl PowerDecomposition {
    pub fn is_trivial(&self) -> bool {
        !matches!(self, PowerDecomposition::Power { .. })
    }

    pub fn is_perfect_power(&self) -> bool {
        match self {
            PowerDecomposition::Power { exponent, .. } => *exponent >= 2,
            _ => true,
        }
    }

    /// The `q`-th root when the decomposed value is a `q`-th power.
    pub fn root(&self, q: u32) -> Option<BigUint> {
        match self {
            PowerDecomposition::Zero => Some(BigUint::zero()),
            PowerDecomposition::One => Some(BigUint::one()),
            PowerDecomposition::Power { base, exponent } => {
                (q >= 1 && exponent % q == 0).then(|| base.pow(exponent / q))
            }
        }
    }

    /// Every `(x, q)` with `x^q` equal to the value and `q >= min_q`.
    /// Empty for the trivial values, whose exponents are unbounded.
    pub fn powers_from(&self, min_q: u32) -> Vec<(BigUint, u32)> {
        match self {
            PowerDecomposition::Power { exponent, .. } => (min_q.max(1)..=*exponent)
                .filter(|q| exponent % q == 0)
                .filter_map(|q| self.root(q).map(|x| (x, q)))
                .collect(),
            _ => Vec::new(),
        }
    }
}

/// Maximal-exponent decomposition of `n`.
pub fn perfect_power_decompose(n: &BigUint) -> PowerDecomposition {
    decompose_with_filter(n, |_, _| true)
}

/// Decomposition that consults `may_be_power(base, p)` before attempting a
/// prime root. The filter must never reject a true `p`-th power, otherwise
/// the exponent stops being maximal.
pub fn decompose_with_filter<F>(n: &BigUint, may_be_power: F) -> PowerDecomposition
where
    F: Fn(&BigUint, u64) -> bool,
{
    if n.is_zero() {
        return PowerDecomposition::Zero;
    }
    if n.is_one() {
        return PowerDecomposition::One;
    }
    let mut base = n.clone();
    let mut exponent = 1u32;
    // a prime-p power with base >= 2 has p <= bits(base)
    let primes = primes_up_to(n.bits());
    let mut i = 0;
    while i < primes.len() {
        let p = primes[i];
        if p > base.bits() {
            break;
        }
        let root = if may_be_power(&base, p) {
            exact_root(&base, p as u32)
        } else {
            None
        };
        match root {
            Some(r) => {
                base = r;
                exponent *= p as u32;
            }
            None => i += 1,
        }
    }
    PowerDecomposition::Power { base, exponent }
}

/// Convenience for signed callers; negative inputs are rejected.
pub fn perfect_power_decompose_signed(n: &BigInt) -> Result<PowerDecomposition> {
    if n.is_negative() {
        return Err(Error::NonPositive(n.to_string()));
    }
    Ok(perfect_power_decompose(n.magnitude()))
}
