//! Known solution sets, compared against search output when the search
//! configuration matches the hypotheses under which each set is stated.

use serde::{Deserialize, Serialize};

use super::{Equation, Parity, SearchConfig, SearchResults};
use crate::sequences::SequenceKind;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Match,
    Mismatch,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claims {
    pub statement: String,
    /// The searched box; the known result is unconditional, the check is not.
    pub bound: String,
    pub expected: Vec<String>,
    pub found: Vec<String>,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
}

pub const ZERO_EXEMPTION_NOTE: &str = "gcd(B_n, 0) = B_n; with zero exemption a pair (n, 0) \
     is admitted when gcd(n + m, n - m) divides 2, which keeps (2,0,6,2) and drops (n,0) for n >= 3";

struct Expectation {
    statement: &'static str,
    expected: &'static [&'static str],
    min_index: u64,
    bound: fn(u64) -> String,
    notes: Vec<String>,
}

fn pair_bound(strict: bool) -> fn(u64) -> String {
    if strict {
        |max| format!("0 <= m < n <= {max}")
    } else {
        |max| format!("0 <= m <= n <= {max}")
    }
}

fn expectation(equation: Equation, cfg: &SearchConfig) -> Option<Expectation> {
    match equation {
        Equation::SumPower
            if cfg.parity == Parity::Same && cfg.min_exponent == 2 && !cfg.coprimality_required =>
        {
            Some(Expectation {
                statement: "B_n + B_m = x^q, n = m (mod 2), q >= 2, x >= 1",
                expected: &["(3,1,6,2)"],
                min_index: 3,
                bound: pair_bound(false),
                notes: Vec::new(),
            })
        }
        Equation::SquareDiff
            if cfg.coprimality_required
                && cfg.coprime_zero_exempt
                && cfg.min_exponent == 2
                && cfg.parity == Parity::Any =>
        {
            Some(Expectation {
                statement: "B_n^2 - B_m^2 = x^q, gcd(B_n, B_m) = 1, q >= 2, n > m >= 0, x > 0",
                expected: &["(1,0,1,q>=2)", "(2,0,6,2)"],
                min_index: 2,
                bound: pair_bound(true),
                notes: vec![ZERO_EXEMPTION_NOTE.to_string()],
            })
        }
        Equation::CubeSumPlus | Equation::CubeSumMinus
            if cfg.coprimality_required
                && !cfg.coprime_zero_exempt
                && cfg.min_exponent == 3
                && cfg.parity == Parity::Any =>
        {
            Some(Expectation {
                statement: if equation == Equation::CubeSumPlus {
                    "B_n^3 + B_m^3 = x^q, gcd(B_n, B_m) = 1, q >= 3, n > m >= 0, x > 0"
                } else {
                    "B_n^3 - B_m^3 = x^q, gcd(B_n, B_m) = 1, q >= 3, n > m >= 0, x > 0"
                },
                expected: &["(1,0,1,q>=3)"],
                min_index: 1,
                bound: pair_bound(true),
                notes: vec!["standard convention gcd(B_n, 0) = B_n".to_string()],
            })
        }
        Equation::ProductForm if cfg.min_exponent == 2 => Some(Expectation {
            statement: "B_N * C_M = 2^p * x^q, N, M, x >= 1, q >= 2",
            expected: &["(2,1,1,3,2)"],
            min_index: 2,
            bound: |max| format!("1 <= N, M <= {max}"),
            notes: Vec::new(),
        }),
        Equation::SpecialForm { kind, prime } if cfg.min_exponent == 2 => {
            let (statement, expected): (&'static str, &'static [&'static str]) = match (kind, prime)
            {
                (SequenceKind::Balancing, 2) => {
                    ("B_n = 2^s x^b, b >= 2: only n = 1", &["(1,0,1,q>=2)"])
                }
                (SequenceKind::Balancing, 3) => {
                    ("B_n = 3^s x^b, b >= 2: only n = 1", &["(1,0,1,q>=2)"])
                }
                (SequenceKind::LucasBalancing, 2) => ("C_n = 2^s x^b, b >= 2: no n >= 1", &[]),
                (SequenceKind::LucasBalancing, 3) => {
                    ("C_n = 3^k y^l, l >= 2: no n >= 2", &["(1,1,1,q>=2)"])
                }
                _ => return None,
            };
            Some(Expectation {
                statement,
                expected,
                min_index: 1,
                bound: |max| format!("1 <= n <= {max}"),
                notes: Vec::new(),
            })
        }
        _ => None,
    }
}

/// The comparison block for `results`, or `None` when the configuration
/// does not match a known statement (exploratory runs included).
pub fn claims_for(
    equation: Equation,
    cfg: &SearchConfig,
    results: &SearchResults,
) -> Option<Claims> {
    let e = expectation(equation, cfg)?;
    if cfg.max_index < e.min_index {
        return None;
    }
    let expected: Vec<String> = e.expected.iter().map(|s| s.to_string()).collect();
    let found = results.tuples();
    let verdict = if found == expected {
        Verdict::Match
    } else {
        Verdict::Mismatch
    };
    Some(Claims {
        statement: e.statement.to_string(),
        bound: (e.bound)(cfg.max_index),
        expected,
        found,
        verdict,
        notes: e.notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exploratory_configs_have_no_claims() {
        let cfg = SearchConfig {
            parity: Parity::Opposite,
            ..Equation::SumPower.default_config(60)
        };
        let empty = SearchResults::Pairs {
            records: Vec::new(),
        };
        assert!(claims_for(Equation::SumPower, &cfg, &empty).is_none());
    }

    #[test]
    fn mismatch_is_reported() {
        let cfg = Equation::SumPower.default_config(10);
        let empty = SearchResults::Pairs {
            records: Vec::new(),
        };
        let c = claims_for(Equation::SumPower, &cfg, &empty).unwrap();
        assert_eq!(c.verdict, Verdict::Mismatch);
        assert_eq!(c.bound, "0 <= m <= n <= 10");
    }
}
