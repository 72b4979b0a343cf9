use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::{
    sort_product, sort_records, sort_special, Equation, Exponent, PairEquation, ProductFormHit,
    SearchConfig, SearchResults, SolutionRecord, SpecialFormHit,
};
use crate::bigmath::{decompose_with_filter, strip_prime_unsigned, PowerDecomposition};
use crate::error::{Error, Result};
use crate::modular::PowerSieve;
use crate::sequences::{prefix, SequenceKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CubeSign {
    Plus,
    Minus,
}

/// Coprimality of `(B_n, B_m)` for `n >= m`.
///
/// With `zero_exempt`, a zero term is judged by the index condition
/// `gcd(n + m, n − m) | 2`, the form coprimality takes after rewriting
/// `B_n² − B_m² = B_{n+m} B_{n−m}`.
pub fn coprime_pair(n: u64, m: u64, bn: &BigUint, bm: &BigUint, zero_exempt: bool) -> bool {
    if zero_exempt && (bn.is_zero() || bm.is_zero()) {
        let (hi, lo) = (n.max(m), n.min(m));
        let g = num_integer::gcd(hi + lo, hi - lo);
        return g == 1 || g == 2;
    }
    num_integer::Integer::gcd(bn, bm).is_one()
}

/// Perfect-power test shared by all searchers.
struct PowerTester {
    sieve: Option<PowerSieve>,
    min_exponent: u32,
}

impl PowerTester {
    fn new(cfg: &SearchConfig, max_bits: u64) -> Self {
        Self {
            sieve: cfg.sieve_enabled.then(|| PowerSieve::new(max_bits)),
            min_exponent: cfg.min_exponent,
        }
    }

    fn decompose(&self, v: &BigUint) -> PowerDecomposition {
        match &self.sieve {
            Some(sieve) => decompose_with_filter(v, |base, p| sieve.may_be_power(base, p)),
            None => decompose_with_filter(v, |_, _| true),
        }
    }

    /// Every `(x, q)` with `x >= 1`, `q >= min_exponent` and `x^q = v`.
    fn powers(&self, v: &BigUint) -> Vec<(BigUint, Exponent)> {
        match self.decompose(v) {
            PowerDecomposition::Zero => Vec::new(),
            PowerDecomposition::One => {
                vec![(
                    BigUint::one(),
                    Exponent::Family {
                        min: self.min_exponent,
                    },
                )]
            }
            d => d
                .powers_from(self.min_exponent)
                .into_iter()
                .map(|(x, q)| (x, Exponent::Exact(q)))
                .collect(),
        }
    }
}

fn balancing_table(max_index: u64) -> Vec<BigUint> {
    prefix(SequenceKind::Balancing, max_index)
        .into_iter()
        .map(|v| v.to_biguint().expect("balancing numbers are non-negative"))
        .collect()
}

fn pair_value(eq: PairEquation, bn: &BigUint, bm: &BigUint) -> BigUint {
    match eq {
        PairEquation::SumPower => bn + bm,
        PairEquation::SquareDiff => bn * bn - bm * bm,
        PairEquation::CubeSumPlus => bn.pow(3) + bm.pow(3),
        PairEquation::CubeSumMinus => bn.pow(3) - bm.pow(3),
    }
}

fn search_pairs(eq: PairEquation, cfg: &SearchConfig) -> Vec<SolutionRecord> {
    let b = balancing_table(cfg.max_index);
    let c = prefix(SequenceKind::LucasBalancing, cfg.max_index);
    let degree = match eq {
        PairEquation::SumPower => 1,
        PairEquation::SquareDiff => 2,
        PairEquation::CubeSumPlus | PairEquation::CubeSumMinus => 3,
    };
    let max_bits = b.last().map_or(1, |v| v.bits()) * degree + 1;
    let tester = PowerTester::new(cfg, max_bits);

    let row = |n: u64| -> Vec<SolutionRecord> {
        let upper = if eq.allows_diagonal() { n + 1 } else { n };
        let mut out = Vec::new();
        for m in 0..upper {
            if !cfg.parity.admits(n, m) {
                continue;
            }
            let (bn, bm) = (&b[n as usize], &b[m as usize]);
            if cfg.coprimality_required && !coprime_pair(n, m, bn, bm, cfg.coprime_zero_exempt) {
                continue;
            }
            let value = pair_value(eq, bn, bm);
            if eq == PairEquation::SumPower && (n - m).is_multiple_of(2) {
                debug_assert_eq!(
                    num_bigint::BigInt::from(value.clone()),
                    num_bigint::BigInt::from(b[((n + m) / 2) as usize].clone())
                        * &c[((n - m) / 2) as usize]
                        * 2u32,
                    "sum identity at ({n}, {m})"
                );
            }
            for (x, q) in tester.powers(&value) {
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
        out
    };

    let mut records: Vec<SolutionRecord> = (0..=cfg.max_index)
        .into_par_iter()
        .flat_map_iter(row)
        .collect();
    sort_records(&mut records);
    records
}

/// Solutions of `B_n + B_m = x^q` with `0 <= m <= n <= max_index`.
pub fn search_sum_power(cfg: &SearchConfig) -> Result<Vec<SolutionRecord>> {
    Equation::SumPower.validate(cfg)?;
    Ok(search_pairs(PairEquation::SumPower, cfg))
}

/// Solutions of `B_n² − B_m² = x^q` with coprime terms, `n > m >= 0`.
pub fn search_square_diff(cfg: &SearchConfig) -> Result<Vec<SolutionRecord>> {
    Equation::SquareDiff.validate(cfg)?;
    Ok(search_pairs(PairEquation::SquareDiff, cfg))
}

/// Solutions of `B_n³ ± B_m³ = x^q` with coprime terms, `n > m >= 0`, `q >= 3`.
pub fn search_cube_sum(cfg: &SearchConfig, sign: CubeSign) -> Result<Vec<SolutionRecord>> {
    let (eq, pair) = match sign {
        CubeSign::Plus => (Equation::CubeSumPlus, PairEquation::CubeSumPlus),
        CubeSign::Minus => (Equation::CubeSumMinus, PairEquation::CubeSumMinus),
    };
    eq.validate(cfg)?;
    Ok(search_pairs(pair, cfg))
}

/// `(n, s, x, b)` with `kind_n = prime^s · x^b`, `1 <= n <= max_index`.
pub fn search_special_form(
    kind: SequenceKind,
    prime: u64,
    cfg: &SearchConfig,
) -> Result<Vec<SpecialFormHit>> {
    Equation::SpecialForm { kind, prime }.validate(cfg)?;
    let terms = prefix(kind, cfg.max_index);
    let max_bits = terms.last().map_or(1, |v| v.bits()) + 1;
    let tester = PowerTester::new(cfg, max_bits);

    let mut hits: Vec<SpecialFormHit> = (1..=cfg.max_index)
        .into_par_iter()
        .flat_map_iter(|n| {
            let t = terms[n as usize].magnitude();
            if t.is_zero() {
                return Vec::new();
            }
            let (s, rest) = strip_prime_unsigned(prime, t);
            tester
                .powers(&rest)
                .into_iter()
                .map(|(x, b)| SpecialFormHit {
                    kind,
                    prime,
                    n,
                    s,
                    x,
                    b,
                })
                .collect()
        })
        .collect();
    sort_special(&mut hits);
    Ok(hits)
}

/// `(N, M, p, x, q)` with `B_N · C_M = 2^p · x^q`, `x` odd, `1 <= N, M <= max_index`.
///
/// Products that are pure powers of 2 go to the second list.
pub fn search_product_form(
    cfg: &SearchConfig,
) -> Result<(Vec<ProductFormHit>, Vec<ProductFormHit>)> {
    Equation::ProductForm.validate(cfg)?;
    let b = balancing_table(cfg.max_index);
    let c = prefix(SequenceKind::LucasBalancing, cfg.max_index);
    let max_bits = b.last().map_or(1, |v| v.bits()) + c.last().map_or(1, |v| v.bits()) + 1;
    let tester = PowerTester::new(cfg, max_bits);

    let found: Vec<(bool, ProductFormHit)> = (1..=cfg.max_index)
        .into_par_iter()
        .flat_map_iter(|big_n| {
            let mut out = Vec::new();
            for big_m in 1..=cfg.max_index {
                let product = &b[big_n as usize] * c[big_m as usize].magnitude();
                let (p, odd) = strip_prime_unsigned(2, &product);
                for (x, q) in tester.powers(&odd) {
                    let degenerate = matches!(q, Exponent::Family { .. });
                    out.push((
                        degenerate,
                        ProductFormHit {
                            big_n,
                            big_m,
                            p,
                            x,
                            q,
                        },
                    ));
                }
            }
            out
        })
        .collect();
    let (degenerate, hits): (Vec<_>, Vec<_>) = found.into_iter().partition(|(d, _)| *d);
    let mut hits: Vec<_> = hits.into_iter().map(|(_, h)| h).collect();
    let mut degenerate: Vec<_> = degenerate.into_iter().map(|(_, h)| h).collect();
    sort_product(&mut hits);
    sort_product(&mut degenerate);
    Ok((hits, degenerate))
}

/// Runs one search, optionally on a dedicated pool of `workers` threads.
pub fn run_search(
    equation: Equation,
    cfg: &SearchConfig,
    workers: Option<usize>,
) -> Result<SearchResults> {
    let go = || -> Result<SearchResults> {
        Ok(match equation {
            Equation::SumPower => SearchResults::Pairs {
                records: search_sum_power(cfg)?,
            },
            Equation::SquareDiff => SearchResults::Pairs {
                records: search_square_diff(cfg)?,
            },
            Equation::CubeSumPlus => SearchResults::Pairs {
                records: search_cube_sum(cfg, CubeSign::Plus)?,
            },
            Equation::CubeSumMinus => SearchResults::Pairs {
                records: search_cube_sum(cfg, CubeSign::Minus)?,
            },
            Equation::SpecialForm { kind, prime } => SearchResults::Special {
                hits: search_special_form(kind, prime, cfg)?,
            },
            Equation::ProductForm => {
                let (hits, degenerate) = search_product_form(cfg)?;
                SearchResults::Product { hits, degenerate }
            }
        })
    };
    match workers {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w.max(1))
            .build()
            .map_err(|e| Error::InvalidConfig(format!("thread pool: {e}")))?
            .install(go),
        None => go(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diophantine::Parity;

    fn bu(v: u64) -> BigUint {
        BigUint::from(v)
    }

    fn cfg(eq: Equation, max_index: u64) -> SearchConfig {
        eq.default_config(max_index)
    }

    fn tuples(records: &[SolutionRecord]) -> Vec<String> {
        records.iter().map(SolutionRecord::tuple).collect()
    }

    #[test]
    fn coprimality_with_zero_terms() {
        // gcd(B_2, B_0) = 6, admitted only under the exemption
        assert!(!coprime_pair(2, 0, &bu(6), &bu(0), false));
        assert!(coprime_pair(2, 0, &bu(6), &bu(0), true));
        assert!(coprime_pair(1, 0, &bu(1), &bu(0), false));
        assert!(!coprime_pair(3, 0, &bu(35), &bu(0), true));
        assert!(coprime_pair(3, 1, &bu(35), &bu(1), true));
        assert!(!coprime_pair(4, 2, &bu(204), &bu(6), true));
    }

    #[test]
    fn sum_power_small_bounds() {
        let one = search_sum_power(&cfg(Equation::SumPower, 1)).unwrap();
        assert!(one.is_empty());
        let thirty = search_sum_power(&cfg(Equation::SumPower, 30)).unwrap();
        assert_eq!(tuples(&thirty), ["(3,1,6,2)"]);
    }

    #[test]
    fn sum_power_opposite_parity_has_unit_family() {
        let c = SearchConfig {
            parity: Parity::Opposite,
            ..cfg(Equation::SumPower, 60)
        };
        let records = search_sum_power(&c).unwrap();
        assert_eq!(records[0].tuple(), "(1,0,1,q>=2)");
        assert!(records.iter().all(SolutionRecord::verify));
    }

    #[test]
    fn square_diff_examples() {
        let records = search_square_diff(&cfg(Equation::SquareDiff, 30)).unwrap();
        assert_eq!(tuples(&records), ["(1,0,1,q>=2)", "(2,0,6,2)"]);
    }

    #[test]
    fn cube_sum_examples() {
        for sign in [CubeSign::Plus, CubeSign::Minus] {
            let records = search_cube_sum(&cfg(Equation::CubeSumPlus, 30), sign).unwrap();
            assert_eq!(tuples(&records), ["(1,0,1,q>=3)"]);
        }
    }

    #[test]
    fn cube_sum_rejects_low_exponent() {
        let c = SearchConfig {
            min_exponent: 2,
            ..cfg(Equation::CubeSumPlus, 10)
        };
        assert!(matches!(
            search_cube_sum(&c, CubeSign::Plus),
            Err(Error::InvalidConfig(_))
        ));
        let c = SearchConfig {
            coprimality_required: false,
            ..cfg(Equation::SquareDiff, 10)
        };
        assert!(matches!(
            search_square_diff(&c),
            Err(Error::InvalidConfig(_))
        ));
    }

    #[test]
    fn special_form_examples() {
        let c = cfg(
            Equation::SpecialForm {
                kind: SequenceKind::Balancing,
                prime: 2,
            },
            40,
        );
        let hits = search_special_form(SequenceKind::Balancing, 2, &c).unwrap();
        assert_eq!(
            hits.iter().map(SpecialFormHit::tuple).collect::<Vec<_>>(),
            ["(1,0,1,q>=2)"]
        );
        let hits = search_special_form(SequenceKind::LucasBalancing, 2, &c).unwrap();
        assert!(hits.is_empty());
        let hits = search_special_form(SequenceKind::LucasBalancing, 3, &c).unwrap();
        assert_eq!(
            hits.iter().map(SpecialFormHit::tuple).collect::<Vec<_>>(),
            ["(1,1,1,q>=2)"]
        );
        assert!(matches!(
            search_special_form(SequenceKind::Balancing, 4, &c),
            Err(Error::NotPrime(4))
        ));
    }

    #[test]
    fn product_form_example() {
        let (hits, degenerate) = search_product_form(&cfg(Equation::ProductForm, 30)).unwrap();
        assert_eq!(
            hits.iter().map(ProductFormHit::tuple).collect::<Vec<_>>(),
            ["(2,1,1,3,2)"]
        );
        assert!(degenerate.is_empty());
    }

    #[test]
    fn pool_size_does_not_change_output() {
        let c = cfg(Equation::SumPower, 40);
        let one = run_search(Equation::SumPower, &c, Some(1)).unwrap();
        let four = run_search(Equation::SumPower, &c, Some(4)).unwrap();
        assert_eq!(one.json_lines(), four.json_lines());
    }
}
