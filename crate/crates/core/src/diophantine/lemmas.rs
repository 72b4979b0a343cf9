//! Spot checks for two elementary structural facts used by the cube-sum
//! argument.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::bigmath::{gcd, integer_kth_root, is_small_prime};
use crate::error::{Error, Result};

/// Shape of `x + y` when `x^p + y^p = z^k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FermatSumForm {
    /// `x + y = c^k`
    FormCk {
        #[serde(with = "crate::decimal::signed")]
        c: BigInt,
    },
    /// `x + y = p^(k−1) · c^k`
    FormPCk {
        #[serde(with = "crate::decimal::signed")]
        c: BigInt,
    },
    Violation,
}

/// Integer `c` with `c^k = v`, allowing negative `v` for odd `k`.
fn signed_root(v: &BigInt, k: u32) -> Option<BigInt> {
    if v.is_negative() && k.is_multiple_of(2) {
        return None;
    }
    let r = BigInt::from(integer_kth_root(v.magnitude(), k));
    let r = if v.is_negative() { -r } else { r };
    (r.pow(k) == *v).then_some(r)
}

/// Classifies `x + y` for coprime `x, y` with `x^p + y^p = z^k`, `p` an odd
/// prime and `k >= 2`. Inputs that fail those hypotheses are rejected.
pub fn check_fermat_sum_structure(
    x: &BigInt,
    y: &BigInt,
    p: u32,
    z: &BigInt,
    k: u32,
) -> Result<FermatSumForm> {
    if p.is_multiple_of(2) || !is_small_prime(u64::from(p)) {
        return Err(Error::Precondition(format!("p = {p} is not an odd prime")));
    }
    if k < 2 {
        return Err(Error::Precondition(format!("k = {k} < 2")));
    }
    if !gcd(x, y).is_one() {
        return Err(Error::Precondition(format!("gcd({x}, {y}) != 1")));
    }
    if x.pow(p) + y.pow(p) != z.pow(k) {
        return Err(Error::Precondition(format!("{x}^{p} + {y}^{p} != {z}^{k}")));
    }
    let s = x + y;
    if let Some(c) = signed_root(&s, k) {
        return Ok(FermatSumForm::FormCk { c });
    }
    let scale = BigInt::from(p).pow(k - 1);
    let (q, r) = s.div_rem(&scale);
    if r.is_zero() {
        if let Some(c) = signed_root(&q, k) {
            return Ok(FermatSumForm::FormPCk { c });
        }
    }
    Ok(FermatSumForm::Violation)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FermatScanSummary {
    pub pairs_checked: u64,
    pub solutions: u64,
    /// `(x, y, p, z, k)`
    pub violations: Vec<(i64, i64, u32, String, u32)>,
}

/// Every coprime `|x|, |y| <= bound` whose `p`-th power sum is a perfect
/// `k`-th power, classified.
pub fn fermat_structure_scan(bound: i64, primes: &[u32], exponents: &[u32]) -> FermatScanSummary {
    let mut summary = FermatScanSummary::default();
    for x in -bound..=bound {
        for y in -bound..=bound {
            if x.gcd(&y) != 1 {
                continue;
            }
            summary.pairs_checked += 1;
            let (bx, by) = (BigInt::from(x), BigInt::from(y));
            for &p in primes {
                let v = bx.pow(p) + by.pow(p);
                for &k in exponents {
                    let Some(z) = signed_root(&v, k) else {
                        continue;
                    };
                    summary.solutions += 1;
                    match check_fermat_sum_structure(&bx, &by, p, &z, k) {
                        Ok(FermatSumForm::Violation) | Err(_) => {
                            summary.violations.push((x, y, p, z.to_string(), k))
                        }
                        Ok(_) => {}
                    }
                }
            }
        }
    }
    summary
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubicScanSummary {
    /// `(a, b, c, p)` with `a³ + b³ = c^p`, `abc != 0`, `gcd(a, b) = 1`.
    pub solutions: Vec<(i64, i64, i64, u32)>,
    /// Solutions with `2 | ac` that miss `3 | c`, `2 | a`, `4 ∤ a`.
    pub counterexamples: Vec<(i64, i64, i64, u32)>,
}

/// Scans `a³ + b³ = c^p` over `|a|, |b|, |c| <= bound` for the structural
/// constraint on primitive solutions with `2 | ac`.
pub fn cubic_sum_scan(bound: i64, primes: &[u32]) -> CubicScanSummary {
    let mut summary = CubicScanSummary::default();
    for a in -bound..=bound {
        for b in -bound..=bound {
            if a == 0 || b == 0 || a.gcd(&b) != 1 {
                continue;
            }
            let v = BigInt::from(a).pow(3) + BigInt::from(b).pow(3);
            for &p in primes {
                let Some(c) = signed_root(&v, p) else {
                    continue;
                };
                let Ok(c) = i64::try_from(c) else { continue };
                if c == 0 || c.abs() > bound {
                    continue;
                }
                summary.solutions.push((a, b, c, p));
                if (a * c) % 2 == 0 && !(c % 3 == 0 && a % 2 == 0 && a % 4 != 0) {
                    summary.counterexamples.push((a, b, c, p));
                }
            }
        }
    }
    summary
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn fermat_examples() {
        assert_eq!(
            check_fermat_sum_structure(&b(1), &b(0), 3, &b(1), 5),
            Ok(FermatSumForm::FormCk { c: b(1) })
        );
        assert!(matches!(
            check_fermat_sum_structure(&b(2), &b(-1), 3, &b(7), 1),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn fermat_rejects_bad_hypotheses() {
        // 2^3 + 1^3 = 9 = 3^2 holds, but p = 4 is not an odd prime
        assert!(check_fermat_sum_structure(&b(2), &b(1), 4, &b(3), 2).is_err());
        assert!(check_fermat_sum_structure(&b(2), &b(4), 3, &b(6), 2).is_err());
        assert!(check_fermat_sum_structure(&b(2), &b(1), 3, &b(4), 2).is_err());
    }

    #[test]
    fn fermat_prime_scaled_form() {
        // 2^3 + 1^3 = 3^2 and 2 + 1 = 3 = 3^(2-1) · 1^2
        assert_eq!(
            check_fermat_sum_structure(&b(2), &b(1), 3, &b(3), 2),
            Ok(FermatSumForm::FormPCk { c: b(1) })
        );
    }

    #[test]
    fn signed_roots() {
        assert_eq!(signed_root(&b(-27), 3), Some(b(-3)));
        assert_eq!(signed_root(&b(-4), 2), None);
        assert_eq!(signed_root(&b(0), 4), Some(b(0)));
    }

    #[test]
    fn small_cubic_scan_has_no_counterexamples() {
        let s = cubic_sum_scan(10, &[3, 5, 7]);
        assert!(s.counterexamples.is_empty(), "{:?}", s.counterexamples);
    }
}
