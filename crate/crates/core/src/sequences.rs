//! The balancing family: balancing `B`, Lucas-balancing `C`, Pell `P` and
//! associated Pell `Q`, plus the identity evaluators that tie them together.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::RwLock;

use num_bigint::{BigInt, Sign};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::bigmath::integer_kth_root;
use crate::error::{Error, Result};
use crate::quadring::{binet_extract, qpow, QuadInt};

/// Index above which isolated term access switches from iteration to
/// exponentiation in Z[√2].
pub const DEFAULT_DOUBLING_THRESHOLD: u64 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SequenceKind {
    Balancing,
    LucasBalancing,
    Pell,
    AssociatedPell,
}

impl SequenceKind {
    pub const ALL: [SequenceKind; 4] = [
        SequenceKind::Balancing,
        SequenceKind::LucasBalancing,
        SequenceKind::Pell,
        SequenceKind::AssociatedPell,
    ];

    pub fn initial(self) -> (i64, i64) {
        match self {
            SequenceKind::Balancing => (0, 1),
            SequenceKind::LucasBalancing => (1, 3),
            SequenceKind::Pell => (0, 1),
            SequenceKind::AssociatedPell => (1, 1),
        }
    }

    /// `s_n = c1 * s_{n-1} + c2 * s_{n-2}`
    pub fn coefficients(self) -> (i64, i64) {
        match self {
            SequenceKind::Balancing | SequenceKind::LucasBalancing => (6, -1),
            SequenceKind::Pell | SequenceKind::AssociatedPell => (2, 1),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SequenceKind::Balancing => "balancing",
            SequenceKind::LucasBalancing => "lucas-balancing",
            SequenceKind::Pell => "pell",
            SequenceKind::AssociatedPell => "associated-pell",
        }
    }

    /// One step of the recurrence from `(s_{n-2}, s_{n-1})`.
    pub fn step(self, prev2: &BigInt, prev1: &BigInt) -> BigInt {
        match self {
            SequenceKind::Balancing | SequenceKind::LucasBalancing => prev1 * 6u32 - prev2,
            SequenceKind::Pell | SequenceKind::AssociatedPell => prev1 * 2u32 + prev2,
        }
    }
}

impl fmt::Display for SequenceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SequenceKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "balancing" | "b" => Ok(SequenceKind::Balancing),
            "lucas-balancing" | "lucas" | "c" => Ok(SequenceKind::LucasBalancing),
            "pell" | "p" => Ok(SequenceKind::Pell),
            "associated-pell" | "q" => Ok(SequenceKind::AssociatedPell),
            other => Err(format!("unknown sequence kind `{other}`")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeqTerm {
    pub kind: SequenceKind,
    pub index: u64,
    #[serde(with = "crate::decimal::signed")]
    pub value: BigInt,
}

/// Iterator over `s_0, s_1, ...` of one kind.
#[derive(Clone, Debug)]
pub struct Terms {
    kind: SequenceKind,
    cur: BigInt,
    next: BigInt,
}

impl Terms {
    pub fn new(kind: SequenceKind) -> Self {
        let (a, b) = kind.initial();
        Self {
            kind,
            cur: BigInt::from(a),
            next: BigInt::from(b),
        }
    }
}

impl Iterator for Terms {
    type Item = BigInt;

    fn next(&mut self) -> Option<BigInt> {
        let after = self.kind.step(&self.cur, &self.next);
        let next = std::mem::replace(&mut self.next, after);
        Some(std::mem::replace(&mut self.cur, next))
    }
}

/// `s_0 ..= s_hi`.
pub fn prefix(kind: SequenceKind, hi: u64) -> Vec<BigInt> {
    Terms::new(kind).take(hi as usize + 1).collect()
}

pub fn term_by_iteration(kind: SequenceKind, n: u64) -> BigInt {
    Terms::new(kind)
        .nth(n as usize)
        .expect("unbounded iterator")
}

/// Exponentiation route. `α^n = C_n + 2B_n√2` and `(1+√2)^n = Q_n + P_n√2`.
pub fn term_by_doubling(kind: SequenceKind, n: u64) -> Result<BigInt> {
    match kind {
        SequenceKind::Balancing => binet_extract(n).map(|(b, _)| b),
        SequenceKind::LucasBalancing => binet_extract(n).map(|(_, c)| c),
        SequenceKind::Pell => Ok(qpow(&QuadInt::new(1, 1), n).b),
        SequenceKind::AssociatedPell => Ok(qpow(&QuadInt::new(1, 1), n).a),
    }
}

/// Isolated term access with a configurable iterate/doubling switch.
#[derive(Clone, Copy, Debug)]
pub struct TermAccess {
    pub doubling_threshold: u64,
}

impl Default for TermAccess {
    fn default() -> Self {
        Self {
            doubling_threshold: DEFAULT_DOUBLING_THRESHOLD,
        }
    }
}

impl TermAccess {
    pub fn term(&self, kind: SequenceKind, n: u64) -> BigInt {
        if n > self.doubling_threshold {
            term_by_doubling(kind, n).expect("α^n always has an even √2 coordinate")
        } else {
            term_by_iteration(kind, n)
        }
    }
}

/// Exact `n`-th term.
pub fn term(kind: SequenceKind, n: u64) -> BigInt {
    TermAccess::default().term(kind, n)
}

/// Terms `lo..=hi` by a single forward pass.
pub fn range(kind: SequenceKind, lo: u64, hi: u64) -> Result<Vec<SeqTerm>> {
    if lo > hi {
        return Err(Error::InvalidRange { lo, hi });
    }
    Ok(Terms::new(kind)
        .enumerate()
        .skip(lo as usize)
        .take((hi - lo) as usize + 1)
        .map(|(i, value)| SeqTerm {
            kind,
            index: i as u64,
            value,
        })
        .collect())
}

fn check_same_parity(n: u64, m: u64) -> Result<()> {
    if n < m || !(n - m).is_multiple_of(2) {
        return Err(Error::ParityMismatch { n, m });
    }
    Ok(())
}

/// `B_n + B_m` against `2 B_{(n+m)/2} C_{(n-m)/2}`.
pub fn sum_identity(n: u64, m: u64) -> Result<(BigInt, BigInt)> {
    check_same_parity(n, m)?;
    let b = |i| term(SequenceKind::Balancing, i);
    let c = |i| term(SequenceKind::LucasBalancing, i);
    let lhs = b(n) + b(m);
    let rhs = b((n + m) / 2) * c((n - m) / 2) * 2u32;
    Ok((lhs, rhs))
}

/// `B_n − B_m` against `2 B_{(n−m)/2} C_{(n+m)/2}`.
pub fn diff_identity(n: u64, m: u64) -> Result<(BigInt, BigInt)> {
    check_same_parity(n, m)?;
    let b = |i| term(SequenceKind::Balancing, i);
    let c = |i| term(SequenceKind::LucasBalancing, i);
    let lhs = b(n) - b(m);
    let rhs = b((n - m) / 2) * c((n + m) / 2) * 2u32;
    Ok((lhs, rhs))
}

/// `(B_m, P_m · Q_m)`
pub fn product_identity(m: u64) -> (BigInt, BigInt) {
    (
        term(SequenceKind::Balancing, m),
        term(SequenceKind::Pell, m) * term(SequenceKind::AssociatedPell, m),
    )
}

/// The balancer `R` of a balancing number `B`, i.e. the `R >= 0` with
/// `1 + ... + (B−1) = (B+1) + ... + (B+R)`.
///
/// Solves `R² + (2B+1)R − (B² − B) = 0`, whose discriminant is `8B² + 1`.
pub fn balancer(b: &BigInt) -> Option<BigInt> {
    if b.sign() != Sign::Plus {
        return None;
    }
    let disc = (b * b * 8u32 + 1u32).magnitude().clone();
    let root = integer_kth_root(&disc, 2);
    if &root * &root != disc {
        return None;
    }
    let twice_r = BigInt::from(root) - (b * 2u32 + 1u32);
    if twice_r.sign() == Sign::Minus || !(&twice_r % 2u32).is_zero() {
        return None;
    }
    let r = twice_r / 2u32;
    // 1 + ... + (B-1) = B(B-1)/2 and (B+1) + ... + (B+R) = R(2B+R+1)/2
    let left = b * (b - BigInt::one());
    let right = &r * (b * 2u32 + &r + 1u32);
    (left == right).then_some(r)
}

/// Read-through memo for isolated terms; results are identical with or
/// without it.
#[derive(Debug, Default)]
pub struct TermCache {
    access: TermAccess,
    map: RwLock<HashMap<(SequenceKind, u64), BigInt>>,
}

impl TermCache {
    pub fn new(access: TermAccess) -> Self {
        Self {
            access,
            map: RwLock::default(),
        }
    }

    pub fn get(&self, kind: SequenceKind, n: u64) -> BigInt {
        if let Some(v) = self.map.read().expect("cache lock").get(&(kind, n)) {
            return v.clone();
        }
        let v = self.access.term(kind, n);
        self.map
            .write()
            .expect("cache lock")
            .entry((kind, n))
            .or_insert_with(|| v.clone());
        v
    }

    pub fn len(&self) -> usize {
        self.map.read().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
