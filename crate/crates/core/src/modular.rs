//! Balancing numbers modulo small integers: restart periods, the mod-9
//! residue table, the 2-adic divisibility law, and a power-residue sieve used
//! to prune perfect-power tests.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::bigmath::{is_small_prime, primes_up_to, valuation};
use crate::error::{Error, Result};
use crate::sequences::{term, SequenceKind};

/// How many sieve moduli are kept per exponent.
pub const STANDARD_MODULI_COUNT: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodResult {
    pub modulus: u64,
    pub period: u64,
    /// Indices `k < prefix_checked` were scanned for restarts `(B_k, B_{k+1}) ≡ (0, 1)`.
    pub prefix_checked: u64,
    /// Whether every restart index seen in the prefix is a multiple of `period`.
    pub divides_all_restarts: bool,
}

fn step(state: (u64, u64), modulus: u64) -> (u64, u64) {
    let (b0, b1) = state;
    let six_b1 = (6 * u128::from(b1)) % u128::from(modulus);
    let next = (six_b1 + u128::from(modulus) - u128::from(b0)) % u128::from(modulus);
    (b1, next as u64)
}

/// Least `t >= 1` with `B_t ≡ 0` and `B_{t+1} ≡ 1 (mod modulus)`.
pub fn period(modulus: u64) -> Result<PeriodResult> {
    period_with_bound(modulus, u128::from(modulus) * u128::from(modulus))
}

fn period_with_bound(modulus: u64, bound: u128) -> Result<PeriodResult> {
    if modulus < 2 {
        return Err(Error::BadModulus(modulus));
    }
    let start = (0, 1);
    let mut state = step(start, modulus);
    let mut t: u64 = 1;
    while state != start {
        t += 1;
        if u128::from(t) > bound {
            return Err(Error::PeriodBoundExceeded { modulus, bound });
        }
        state = step(state, modulus);
    }

    let prefix = t.saturating_mul(4);
    let mut state = start;
    let mut divides = true;
    for k in 1..prefix {
        state = step(state, modulus);
        if state == start && k % t != 0 {
            divides = false;
        }
    }
    Ok(PeriodResult {
        modulus,
        period: t,
        prefix_checked: prefix,
        divides_all_restarts: divides,
    })
}

/// `B_0 .. B_{len-1}` reduced mod `modulus`, by iteration on residues.
pub fn balancing_residues(len: usize, modulus: u64) -> Vec<u64> {
    let mut out = Vec::with_capacity(len);
    let mut state = (0, 1 % modulus);
    for _ in 0..len {
        out.push(state.0);
        state = step(state, modulus);
    }
    out
}

/// `B_n mod 9`, read from the table keyed on `n mod 12`.
pub fn residue_class_mod9(n: u64) -> u8 {
    match n % 12 {
        0 | 6 => 0,
        1 | 5 | 9 => 1,
        8 | 10 => 3,
        2 | 4 => 6,
        3 | 7 | 11 => 8,
        _ => unreachable!(),
    }
}

/// Whether `2^k` divides `B_n`; for `n >= 1` this coincides with `2^k | n`.
pub fn two_adic_law(n: u64, k: u32) -> bool {
    let b = term(SequenceKind::Balancing, n);
    match valuation(2, &b) {
        Ok(v) => v >= k,
        // B_0 = 0 is divisible by everything
        Err(_) => true,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SieveVerdict {
    Possible,
    Impossible,
}

pub fn mod_pow(base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let m = u128::from(modulus);
    let mut b = u128::from(base) % m;
    let mut acc: u128 = 1;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// Rejects `value` as a `q`-th power when its residue modulo some listed
/// prime is not a `q`-th power residue. Never rejects an actual `q`-th power.
pub fn power_residue_sieve(value: &BigUint, q: u32, moduli: &[u64]) -> SieveVerdict {
    let q = u64::from(q);
    for &p in moduli {
        let r = (value % p).to_u64().expect("residue below a u64 modulus");
        if r == 0 {
            continue;
        }
        let g = q.gcd(&(p - 1));
        if g == 1 {
            // every unit is a q-th power
            continue;
        }
        if mod_pow(r, (p - 1) / g, p) != 1 {
            return SieveVerdict::Impossible;
        }
    }
    SieveVerdict::Possible
}

/// The first [`STANDARD_MODULI_COUNT`] primes `p ≡ 1 (mod q)`.
pub fn standard_moduli(q: u32) -> Vec<u64> {
    let q = u64::from(q.max(1));
    let mut out = Vec::with_capacity(STANDARD_MODULI_COUNT);
    let mut p = q + 1;
    while out.len() < STANDARD_MODULI_COUNT {
        if is_small_prime(p) {
            out.push(p);
        }
        p += q;
    }
    out
}

/// Standard moduli for every prime exponent up to a bound, built once and
/// shared read-only across search workers.
#[derive(Clone, Debug, Default)]
pub struct PowerSieve {
    moduli: HashMap<u64, Vec<u64>>,
}

impl PowerSieve {
    pub fn new(max_exponent: u64) -> Self {
        let moduli = primes_up_to(max_exponent)
            .into_iter()
            .map(|q| (q, standard_moduli(q as u32)))
            .collect();
        Self { moduli }
    }

    /// `false` only when `value` is certainly not a `q`-th power.
    pub fn may_be_power(&self, value: &BigUint, q: u64) -> bool {
        match self.moduli.get(&q) {
            Some(ms) => power_residue_sieve(value, q as u32, ms) == SieveVerdict::Possible,
            None => true,
        }
    }
}

/// Direct reduction `B_n mod m` through big integers.
pub fn balancing_mod_direct(n: u64, modulus: u64) -> u64 {
    let b: BigInt = term(SequenceKind::Balancing, n);
    b.mod_floor(&BigInt::from(modulus))
        .to_u64()
        .expect("reduced residue")
}
