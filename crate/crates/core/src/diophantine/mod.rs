//! Bounded exhaustive searches over the balancing sequence.
//!
//! Each searcher walks an index grid, tests the candidate value for perfect
//! powers, and returns records in canonical order. Grids are split across
//! rayon workers by row; the merge sorts, so output never depends on the
//! schedule.

mod claims;
mod lemmas;
mod oracle;
mod search;

pub use claims::{claims_for, Claims, Verdict, ZERO_EXEMPTION_NOTE};
pub use lemmas::{
    check_fermat_sum_structure, cubic_sum_scan, fermat_structure_scan, CubicScanSummary,
    FermatScanSummary, FermatSumForm,
};
pub use oracle::oracle_search;
pub use search::{
    coprime_pair, run_search, search_cube_sum, search_product_form, search_special_form,
    search_square_diff, search_sum_power, CubeSign,
};

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sequences::SequenceKind;

/// Largest index the brute-force oracle accepts.
pub const ORACLE_MAX_INDEX: u64 = 40;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Same,
    Opposite,
    Any,
}

impl Parity {
    pub fn admits(self, n: u64, m: u64) -> bool {
        let same = n % 2 == m % 2;
        match self {
            Parity::Same => same,
            Parity::Opposite => !same,
            Parity::Any => true,
        }
    }
}

impl FromStr for Parity {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "same" => Ok(Parity::Same),
            "opposite" => Ok(Parity::Opposite),
            "any" => Ok(Parity::Any),
            other => Err(format!("unknown parity `{other}`")),
        }
    }
}

/// Equations over index pairs `(n, m)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairEquation {
    /// `B_n + B_m = x^q`, `0 <= m <= n`
    SumPower,
    /// `B_n² − B_m² = x^q`, `0 <= m < n`
    SquareDiff,
    /// `B_n³ + B_m³ = x^q`, `0 <= m < n`
    CubeSumPlus,
    /// `B_n³ − B_m³ = x^q`, `0 <= m < n`
    CubeSumMinus,
}

impl PairEquation {
    pub fn name(self) -> &'static str {
        match self {
            PairEquation::SumPower => "sum-power",
            PairEquation::SquareDiff => "square-diff",
            PairEquation::CubeSumPlus => "cube-sum-plus",
            PairEquation::CubeSumMinus => "cube-sum-minus",
        }
    }

    /// Whether the pair `n = m` is part of the grid.
    pub fn allows_diagonal(self) -> bool {
        self == PairEquation::SumPower
    }
}

/// Every searchable equation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "equation", rename_all = "kebab-case")]
pub enum Equation {
    SumPower,
    SquareDiff,
    CubeSumPlus,
    CubeSumMinus,
    /// `kind_n = prime^s · x^b`
    SpecialForm {
        kind: SequenceKind,
        prime: u64,
    },
    /// `B_N · C_M = 2^p · x^q`
    ProductForm,
}

impl Equation {
    pub fn pair(self) -> Option<PairEquation> {
        match self {
            Equation::SumPower => Some(PairEquation::SumPower),
            Equation::SquareDiff => Some(PairEquation::SquareDiff),
            Equation::CubeSumPlus => Some(PairEquation::CubeSumPlus),
            Equation::CubeSumMinus => Some(PairEquation::CubeSumMinus),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Equation::SpecialForm { .. } => "special-form",
            Equation::ProductForm => "product-form",
            other => other.pair().expect("pair equation").name(),
        }
    }

    /// The configuration under which the equation's known solution set is stated.
    pub fn default_config(self, max_index: u64) -> SearchConfig {
        let base = SearchConfig {
            max_index,
            min_exponent: 2,
            parity: Parity::Any,
            coprimality_required: false,
            coprime_zero_exempt: true,
            sieve_enabled: true,
        };
        match self {
            Equation::SumPower => SearchConfig {
                parity: Parity::Same,
                ..base
            },
            Equation::SquareDiff => SearchConfig {
                coprimality_required: true,
                ..base
            },
            Equation::CubeSumPlus | Equation::CubeSumMinus => SearchConfig {
                min_exponent: 3,
                coprimality_required: true,
                coprime_zero_exempt: false,
                ..base
            },
            Equation::SpecialForm { .. } | Equation::ProductForm => base,
        }
    }

    /// Rejects flag combinations that do not describe this equation.
    pub fn validate(self, cfg: &SearchConfig) -> Result<()> {
        cfg.validate()?;
        match self {
            Equation::SumPower => Ok(()),
            Equation::SquareDiff | Equation::CubeSumPlus | Equation::CubeSumMinus => {
                if !cfg.coprimality_required {
                    return Err(Error::InvalidConfig(format!(
                        "{} requires coprimality",
                        self.name()
                    )));
                }
                if matches!(self, Equation::CubeSumPlus | Equation::CubeSumMinus)
                    && cfg.min_exponent < 3
                {
                    return Err(Error::InvalidConfig(format!(
                        "{} requires min_exponent >= 3, got {}",
                        self.name(),
                        cfg.min_exponent
                    )));
                }
                Ok(())
            }
            Equation::SpecialForm { prime, .. } => {
                if !crate::bigmath::is_small_prime(prime) {
                    return Err(Error::NotPrime(prime));
                }
                Self::check_single_index(self, cfg)
            }
            Equation::ProductForm => Self::check_single_index(self, cfg),
        }
    }

    fn check_single_index(self, cfg: &SearchConfig) -> Result<()> {
        if cfg.parity != Parity::Any || cfg.coprimality_required {
            return Err(Error::InvalidConfig(format!(
                "{} takes no parity or coprimality filter",
                self.name()
            )));
        }
        Ok(())
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Equation::SpecialForm { kind, prime } => write!(f, "special-form({kind}, {prime})"),
            other => f.write_str(other.name()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SearchConfig {
    pub max_index: u64,
    pub min_exponent: u32,
    pub parity: Parity,
    pub coprimality_required: bool,
    /// A pair with `B_m = 0` counts as coprime when `gcd(n + m, n − m)` divides 2.
    pub coprime_zero_exempt: bool,
    pub sieve_enabled: bool,
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_index < 1 {
            return Err(Error::InvalidConfig("max_index must be >= 1".into()));
        }
        if self.min_exponent < 2 {
            return Err(Error::InvalidConfig(format!(
                "min_exponent must be >= 2, got {}",
                self.min_exponent
            )));
        }
        Ok(())
    }
}

/// Either one exponent, or every exponent from `min` upward (when `x = 1`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Exponent {
    Exact(u32),
    Family { min: u32 },
}

impl Exponent {
    fn sort_key(self) -> u32 {
        match self {
            Exponent::Exact(q) => q,
            Exponent::Family { min } => min,
        }
    }

    pub fn admits(self, q: u32) -> bool {
        match self {
            Exponent::Exact(e) => e == q,
            Exponent::Family { min } => q >= min,
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Exact(q) => write!(f, "{q}"),
            Exponent::Family { min } => write!(f, "q>={min}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionRecord {
    pub equation: PairEquation,
    pub n: u64,
    pub m: u64,
    #[serde(with = "crate::decimal::unsigned")]
    pub x: BigUint,
    pub q: Exponent,
    pub bounds: SearchConfig,
}

impl SolutionRecord {
    pub fn tuple(&self) -> String {
        format!("({},{},{},{})", self.n, self.m, self.x, self.q)
    }

    /// Re-evaluates the equation directly.
    pub fn verify(&self) -> bool {
        let b = |i| crate::sequences::term(SequenceKind::Balancing, i);
        let (bn, bm) = (b(self.n), b(self.m));
        let lhs = match self.equation {
            PairEquation::SumPower => bn + bm,
            PairEquation::SquareDiff => &bn * &bn - &bm * &bm,
            PairEquation::CubeSumPlus => bn.pow(3) + bm.pow(3),
            PairEquation::CubeSumMinus => bn.pow(3) - bm.pow(3),
        };
        let q = match self.q {
            Exponent::Exact(q) => q,
            Exponent::Family { min } => min,
        };
        lhs == num_bigint::BigInt::from(self.x.pow(q))
            && (matches!(self.q, Exponent::Exact(_)) || self.x <= BigUint::from(1u32))
    }

    fn key(&self) -> (u64, u64, u32) {
        (self.n, self.m, self.q.sort_key())
    }
}

/// `kind_n = prime^s · x^b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecialFormHit {
    pub kind: SequenceKind,
    pub prime: u64,
    pub n: u64,
    pub s: u32,
    #[serde(with = "crate::decimal::unsigned")]
    pub x: BigUint,
    pub b: Exponent,
}

impl SpecialFormHit {
    pub fn tuple(&self) -> String {
        format!("({},{},{},{})", self.n, self.s, self.x, self.b)
    }

    pub fn verify(&self) -> bool {
        let t = crate::sequences::term(self.kind, self.n);
        let b = match self.b {
            Exponent::Exact(b) => b,
            Exponent::Family { min } => min,
        };
        t == num_bigint::BigInt::from(BigUint::from(self.prime).pow(self.s) * self.x.pow(b))
    }
}

/// `B_N · C_M = 2^p · x^q` with `x` odd.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductFormHit {
    #[serde(rename = "N")]
    pub big_n: u64,
    #[serde(rename = "M")]
    pub big_m: u64,
    pub p: u32,
    #[serde(with = "crate::decimal::unsigned")]
    pub x: BigUint,
    pub q: Exponent,
}

impl ProductFormHit {
    pub fn tuple(&self) -> String {
        format!(
            "({},{},{},{},{})",
            self.big_n, self.big_m, self.p, self.x, self.q
        )
    }

    pub fn verify(&self) -> bool {
        use crate::sequences::term;
        let lhs = term(SequenceKind::Balancing, self.big_n)
            * term(SequenceKind::LucasBalancing, self.big_m);
        let q = match self.q {
            Exponent::Exact(q) => q,
            Exponent::Family { min } => min,
        };
        lhs == num_bigint::BigInt::from((BigUint::from(1u32) << self.p) * self.x.pow(q))
    }
}

/// Output of one search, by equation shape.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "kebab-case")]
pub enum SearchResults {
    Pairs {
        records: Vec<SolutionRecord>,
    },
    Special {
        hits: Vec<SpecialFormHit>,
    },
    /// `degenerate` holds products that are pure powers of 2 (`x = 1`).
    Product {
        hits: Vec<ProductFormHit>,
        degenerate: Vec<ProductFormHit>,
    },
}

impl SearchResults {
    pub fn tuples(&self) -> Vec<String> {
        match self {
            SearchResults::Pairs { records } => records.iter().map(SolutionRecord::tuple).collect(),
            SearchResults::Special { hits } => hits.iter().map(SpecialFormHit::tuple).collect(),
            SearchResults::Product { hits, .. } => hits.iter().map(ProductFormHit::tuple).collect(),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            SearchResults::Pairs { records } => records.len(),
            SearchResults::Special { hits } => hits.len(),
            SearchResults::Product { hits, .. } => hits.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// One JSON value per result line, canonically ordered.
    pub fn json_lines(&self) -> Vec<String> {
        fn lines<T: Serialize>(items: &[T]) -> Vec<String> {
            items
                .iter()
                .map(|r| serde_json::to_string(r).expect("records serialize"))
                .collect()
        }
        match self {
            SearchResults::Pairs { records } => lines(records),
            SearchResults::Special { hits } => lines(hits),
            SearchResults::Product { hits, .. } => lines(hits),
        }
    }

    /// Whether every result re-verifies by direct evaluation.
    pub fn verify_all(&self) -> bool {
        match self {
            SearchResults::Pairs { records } => records.iter().all(SolutionRecord::verify),
            SearchResults::Special { hits } => hits.iter().all(SpecialFormHit::verify),
            SearchResults::Product { hits, degenerate } => {
                hits.iter().chain(degenerate).all(ProductFormHit::verify)
            }
        }
    }
}

pub(crate) fn sort_records(records: &mut [SolutionRecord]) {
    records.sort_by_key(SolutionRecord::key);
}

pub(crate) fn sort_special(hits: &mut [SpecialFormHit]) {
    hits.sort_by_key(|h| (h.n, h.b.sort_key()));
}

pub(crate) fn sort_product(hits: &mut [ProductFormHit]) {
    hits.sort_by_key(|h| (h.big_n, h.big_m, h.q.sort_key()));
}
