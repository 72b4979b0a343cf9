//! Brute-force re-solver for cross-checking the fast searchers.
//!
//! Nothing here touches the sieve, the Newton root, the perfect-power
//! decomposition or any sequence identity: terms come from a plain
//! recurrence loop and exponents from a bisection scan over every `q`.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::{
    Equation, Exponent, PairEquation, ProductFormHit, SearchConfig, SearchResults, SolutionRecord,
    SpecialFormHit, ORACLE_MAX_INDEX,
};
use crate::error::{Error, Result};
use crate::sequences::SequenceKind;

fn plain_terms(kind: SequenceKind, hi: u64) -> Vec<BigUint> {
    let (a0, a1): (u32, u32) = match kind {
        SequenceKind::Balancing | SequenceKind::Pell => (0, 1),
        SequenceKind::LucasBalancing => (1, 3),
        SequenceKind::AssociatedPell => (1, 1),
    };
    let mut out = vec![BigUint::from(a0), BigUint::from(a1)];
    while out.len() <= hi as usize {
        let k = out.len();
        let next = match kind {
            SequenceKind::Balancing | SequenceKind::LucasBalancing => {
                &out[k - 1] * 6u32 - &out[k - 2]
            }
            _ => &out[k - 1] * 2u32 + &out[k - 2],
        };
        out.push(next);
    }
    out.truncate(hi as usize + 1);
    out
}

fn euclid(mut a: BigUint, mut b: BigUint) -> BigUint {
    while !b.is_zero() {
        let r = &a % &b;
        a = b;
        b = r;
    }
    a
}

fn euclid_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `x` with `x^q = v`, found by bisection on `[1, 2^ceil(bits(v)/q)]`.
fn bisect_root(v: &BigUint, q: u32) -> Option<BigUint> {
    let mut lo = BigUint::one();
    let mut hi = BigUint::one() << v.bits().div_ceil(u64::from(q));
    while lo <= hi {
        let mid: BigUint = (&lo + &hi) >> 1;
        let p = mid.pow(q);
        match p.cmp(v) {
            std::cmp::Ordering::Equal => return Some(mid),
            std::cmp::Ordering::Less => lo = mid + 1u32,
            std::cmp::Ordering::Greater => {
                if mid.is_zero() {
                    break;
                }
                hi = mid - 1u32;
            }
        }
    }
    None
}

/// Every `(x, q)` with `x^q = v`, `q >= min_q`; `x = 1` yields one family entry.
fn scan_powers(v: &BigUint, min_q: u32) -> Vec<(BigUint, Exponent)> {
    if v.is_zero() {
        return Vec::new();
    }
    if v.is_one() {
        return vec![(BigUint::one(), Exponent::Family { min: min_q })];
    }
    let mut out = Vec::new();
    // 2^q <= v bounds q by the bit length
    for q in min_q..=(v.bits() as u32) {
        if let Some(x) = bisect_root(v, q) {
            out.push((x, Exponent::Exact(q)));
        }
    }
    out
}

fn divide_out(p: u64, v: &BigUint) -> (u32, BigUint) {
    let p = BigUint::from(p);
    let mut rest = v.clone();
    let mut s = 0;
    while (&rest % &p).is_zero() {
        rest /= &p;
        s += 1;
    }
    (s, rest)
}

fn oracle_pairs(eq: PairEquation, cfg: &SearchConfig) -> Vec<SolutionRecord> {
    let b = plain_terms(SequenceKind::Balancing, cfg.max_index);
    let mut out = Vec::new();
    for n in 0..=cfg.max_index {
        for m in 0..=n {
            if m == n && eq != PairEquation::SumPower {
                continue;
            }
            if cfg.parity != super::Parity::Any
                && ((n % 2 == m % 2) != (cfg.parity == super::Parity::Same))
            {
                continue;
            }
            let (bn, bm) = (&b[n as usize], &b[m as usize]);
            if cfg.coprimality_required {
                let ok = if cfg.coprime_zero_exempt && (bn.is_zero() || bm.is_zero()) {
                    matches!(euclid_u64(n + m, n - m), 1 | 2)
                } else {
                    euclid(bn.clone(), bm.clone()).is_one()
                };
                if !ok {
                    continue;
                }
            }
            let value = match eq {
                PairEquation::SumPower => bn + bm,
                PairEquation::SquareDiff => bn * bn - bm * bm,
                PairEquation::CubeSumPlus => bn * bn * bn + bm * bm * bm,
                PairEquation::CubeSumMinus => bn * bn * bn - bm * bm * bm,
            };
            for (x, q) in scan_powers(&value, cfg.min_exponent) {
                out.push(SolutionRecord {
                    equation: eq,
                    n,
                    m,
                    x,
                    q,
                    bounds: *cfg,
                });
            }
        }
    }
    out
}

/// Re-solves `equation` by direct evaluation. Only `max_index <= 40` is accepted.
pub fn oracle_search(equation: Equation, cfg: &SearchConfig) -> Result<SearchResults> {
    if cfg.max_index > ORACLE_MAX_INDEX {
        return Err(Error::OracleBound(cfg.max_index));
    }
    equation.validate(cfg)?;
    Ok(match equation {
        Equation::SpecialForm { kind, prime } => {
            let terms = plain_terms(kind, cfg.max_index);
            let mut hits = Vec::new();
            for n in 1..=cfg.max_index {
                let t = &terms[n as usize];
                if t.is_zero() {
                    continue;
                }
                let (s, rest) = divide_out(prime, t);
                for (x, b) in scan_powers(&rest, cfg.min_exponent) {
                    hits.push(SpecialFormHit {
                        kind,
                        prime,
                        n,
                        s,
                        x,
                        b,
                    });
                }
            }
            SearchResults::Special { hits }
        }
        Equation::ProductForm => {
            let b = plain_terms(SequenceKind::Balancing, cfg.max_index);
            let c = plain_terms(SequenceKind::LucasBalancing, cfg.max_index);
            let (mut hits, mut degenerate) = (Vec::new(), Vec::new());
            for big_n in 1..=cfg.max_index {
                for big_m in 1..=cfg.max_index {
                    let (p, odd) = divide_out(2, &(&b[big_n as usize] * &c[big_m as usize]));
                    for (x, q) in scan_powers(&odd, cfg.min_exponent) {
                        let hit = ProductFormHit {
                            big_n,
                            big_m,
                            p,
                            x,
                            q,
                        };
                        match q {
                            Exponent::Family { .. } => degenerate.push(hit),
                            Exponent::Exact(_) => hits.push(hit),
                        }
                    }
                }
            }
            SearchResults::Product { hits, degenerate }
        }
        pair => SearchResults::Pairs {
            records: oracle_pairs(pair.pair().expect("pair equation"), cfg),
        },
    })
}
