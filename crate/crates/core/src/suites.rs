//! Property suites behind `ballab verify`: each check runs over a bounded
//! range with exact big-integer arithmetic and records the first failure.

use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::bigmath::{gcd, valuation};
use crate::modular::{
    balancing_residues, period, power_residue_sieve, residue_class_mod9, standard_moduli,
    two_adic_law, SieveVerdict,
};
use crate::quadring::binet_extract;
use crate::sequences::{balancer, prefix, SequenceKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Identities,
    Gcd,
    Modular,
    All,
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "identities" => Ok(Suite::Identities),
            "gcd" => Ok(Suite::Gcd),
            "modular" => Ok(Suite::Modular),
            "all" => Ok(Suite::All),
            other => Err(format!("unknown suite `{other}`")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyCheck {
    pub name: String,
    pub range: String,
    pub cases: u64,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<String>,
}

/// Accumulates cases for one property.
struct Check {
    name: &'static str,
    range: String,
    cases: u64,
    first_failure: Option<String>,
}

impl Check {
    fn new(name: &'static str, range: impl Into<String>) -> Self {
        Self {
            name,
            range: range.into(),
            cases: 0,
            first_failure: None,
        }
    }

    fn case(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.first_failure.is_none() {
            self.first_failure = Some(describe());
        }
    }

    fn finish(self) -> PropertyCheck {
        PropertyCheck {
            name: self.name.to_string(),
            range: self.range,
            cases: self.cases,
            passed: self.first_failure.is_none(),
            first_failure: self.first_failure,
        }
    }
}

pub fn run_suite(suite: Suite, max_n: u64) -> Vec<PropertyCheck> {
    match suite {
        Suite::Identities => identities(max_n),
        Suite::Gcd => gcd_structure(max_n),
        Suite::Modular => modular(max_n),
        Suite::All => {
            let mut all = identities(max_n);
            all.extend(gcd_structure(max_n));
            all.extend(modular(max_n));
            all
        }
    }
}

pub fn all_passed(checks: &[PropertyCheck]) -> bool {
    checks.iter().all(|c| c.passed)
}

pub fn identities(max_n: u64) -> Vec<PropertyCheck> {
    let hi = 2 * max_n;
    let b = prefix(SequenceKind::Balancing, hi);
    let c = prefix(SequenceKind::LucasBalancing, hi);
    let p = prefix(SequenceKind::Pell, max_n);
    let q = prefix(SequenceKind::AssociatedPell, max_n);
    let at = |v: &Vec<BigInt>, i: u64| v[i as usize].clone();
    let mut out = Vec::new();

    let mut sum = Check::new(
        "B_n + B_m = 2 B_{(n+m)/2} C_{(n-m)/2}",
        format!("0 <= m <= n <= {max_n}, n = m mod 2"),
    );
    let mut diff = Check::new(
        "B_n - B_m = 2 B_{(n-m)/2} C_{(n+m)/2}",
        format!("0 <= m <= n <= {max_n}, n = m mod 2"),
    );
    for n in 0..=max_n {
        for m in (n % 2..=n).step_by(2) {
            let (h, d) = ((n + m) / 2, (n - m) / 2);
            sum.case(
                at(&b, n) + at(&b, m) == at(&b, h) * at(&c, d) * 2u32,
                || format!("({n}, {m})"),
            );
            diff.case(
                at(&b, n) - at(&b, m) == at(&b, d) * at(&c, h) * 2u32,
                || format!("({n}, {m})"),
            );
        }
    }
    out.push(sum.finish());
    out.push(diff.finish());

    let mut prod = Check::new("B_m = P_m Q_m", format!("0 <= m <= {max_n}"));
    let mut coprime = Check::new("gcd(P_n, Q_n) = 1", format!("1 <= n <= {max_n}"));
    let mut dbl = Check::new("B_2n = 2 B_n C_n", format!("0 <= n <= {max_n}"));
    let mut pell_eq = Check::new("8 B_n^2 + 1 = C_n^2", format!("0 <= n <= {max_n}"));
    let mut odd = Check::new("C_n is odd", format!("0 <= n <= {max_n}"));
    let mut binet = Check::new(
        "binet_extract(n) = (B_n, C_n) by recurrence",
        format!("0 <= n <= {max_n}"),
    );
    let mut bal = Check::new(
        "balancer(B_n) solves the balancing sum",
        format!("1 <= n <= {max_n}"),
    );
    for n in 0..=max_n {
        let (bn, cn) = (at(&b, n), at(&c, n));
        prod.case(bn == at(&p, n) * at(&q, n), || format!("m = {n}"));
        if n >= 1 {
            coprime.case(gcd(&at(&p, n), &at(&q, n)).is_one(), || format!("n = {n}"));
        }
        dbl.case(at(&b, 2 * n) == &bn * &cn * 2u32, || format!("n = {n}"));
        pell_eq.case(&bn * &bn * 8u32 + 1u32 == &cn * &cn, || format!("n = {n}"));
        odd.case(cn.is_odd(), || format!("n = {n}"));
        binet.case(
            binet_extract(n).ok() == Some((bn.clone(), cn.clone())),
            || format!("n = {n}"),
        );
        if n >= 1 {
            let ok = match balancer(&bn) {
                Some(r) => {
                    // 1 + ... + (B-1) against (B+1) + ... + (B+R)
                    &bn * (&bn - 1u32) == &r * (&bn * 2u32 + &r + 1u32)
                }
                None => false,
            };
            bal.case(ok, || format!("n = {n}"));
        }
    }
    out.extend([
        prod.finish(),
        coprime.finish(),
        dbl.finish(),
        pell_eq.finish(),
        odd.finish(),
    ]);
    out.extend([binet.finish(), bal.finish()]);

    let mut add = Check::new(
        "B_{x+y} = B_x C_y + C_x B_y",
        format!("0 <= x, y <= {max_n}"),
    );
    for x in 0..=max_n {
        for y in 0..=max_n {
            add.case(
                at(&b, x + y) == at(&b, x) * at(&c, y) + at(&c, x) * at(&b, y),
                || format!("({x}, {y})"),
            );
        }
    }
    out.push(add.finish());
    out
}

pub fn gcd_structure(max_n: u64) -> Vec<PropertyCheck> {
    let b = prefix(SequenceKind::Balancing, max_n);
    let c = prefix(SequenceKind::LucasBalancing, max_n);
    let range = format!("1 <= n, m <= {max_n}");
    let mut bb = Check::new("gcd(B_n, B_m) = B_gcd(n,m)", range.clone());
    let mut cc = Check::new(
        "gcd(C_n, C_m) = C_gcd(n,m) if v2(n) = v2(m), else 1",
        range.clone(),
    );
    let mut bc = Check::new("gcd(B_n, C_m) = C_gcd(n,m) if v2(n) > v2(m), else 1", range);
    let one = BigInt::one();
    for n in 1..=max_n {
        for m in 1..=max_n {
            let d = n.gcd(&m) as usize;
            let (an, am) = (n.trailing_zeros(), m.trailing_zeros());
            let (n_, m_) = (n as usize, m as usize);
            bb.case(gcd(&b[n_], &b[m_]) == b[d], || format!("({n}, {m})"));
            let want = if an == am { &c[d] } else { &one };
            cc.case(gcd(&c[n_], &c[m_]) == *want, || format!("({n}, {m})"));
            let want = if an > am { &c[d] } else { &one };
            bc.case(gcd(&b[n_], &c[m_]) == *want, || format!("({n}, {m})"));
        }
    }
    vec![bb.finish(), cc.finish(), bc.finish()]
}

pub fn modular(max_n: u64) -> Vec<PropertyCheck> {
    let b = prefix(SequenceKind::Balancing, max_n);
    let mut out = Vec::new();

    let nine = BigInt::from(9);
    let mut table = Check::new(
        "B_n mod 9 follows the n mod 12 table",
        format!("0 <= n <= {max_n}"),
    );
    for (n, bn) in b.iter().enumerate() {
        let direct = bn.mod_floor(&nine).to_u8();
        table.case(direct == Some(residue_class_mod9(n as u64)), || {
            format!("n = {n}")
        });
    }
    out.push(table.finish());

    let mut two_adic = Check::new(
        "2^k | B_n iff 2^k | n",
        format!("1 <= n <= {max_n}, 1 <= k <= 8"),
    );
    let mut low = Check::new(
        "2 | B_n iff n even; 4 | B_n iff 4 | n",
        format!("1 <= n <= {max_n}"),
    );
    for n in 1..=max_n {
        for k in 1..=8u32 {
            two_adic.case(two_adic_law(n, k) == (n % (1 << k) == 0), || {
                format!("(n, k) = ({n}, {k})")
            });
        }
        let v = valuation(2, &b[n as usize]).unwrap_or(u32::MAX);
        low.case((v >= 1) == (n % 2 == 0) && (v >= 2) == (n % 4 == 0), || {
            format!("n = {n}")
        });
    }
    out.push(two_adic.finish());
    out.push(low.finish());

    let mu_max = 200;
    let mut restart = Check::new(
        "period: B_t = 0, B_{t+1} = 1 and residues repeat",
        format!("2 <= mu <= {mu_max}"),
    );
    let mut minimal = Check::new(
        "period divides every restart index in the prefix",
        format!("2 <= mu <= {mu_max}"),
    );
    let mut multiples = Check::new(
        "period(mu) divides period(k mu)",
        format!("2 <= mu, k mu <= {mu_max}"),
    );
    let periods: Vec<u64> = (2..=mu_max)
        .map(|mu| period(mu).map(|r| r.period).unwrap_or(0))
        .collect();
    for mu in 2..=mu_max {
        match period(mu) {
            Ok(r) => {
                let t = r.period as usize;
                let res = balancing_residues(2 * t + 2, mu);
                let repeats =
                    res[t] == 0 && res[t + 1] == 1 % mu && (0..t + 2).all(|i| res[i] == res[i + t]);
                restart.case(repeats, || format!("mu = {mu}"));
                minimal.case(r.divides_all_restarts, || format!("mu = {mu}"));
            }
            Err(e) => {
                restart.case(false, || format!("mu = {mu}: {e}"));
            }
        }
        let t = periods[(mu - 2) as usize];
        for k in 2..=mu_max / mu {
            let tk = periods[(k * mu - 2) as usize];
            multiples.case(t != 0 && tk.is_multiple_of(t), || {
                format!("mu = {mu}, k = {k}")
            });
        }
    }
    out.extend([restart.finish(), minimal.finish(), multiples.finish()]);

    let mut sieve = Check::new("sieve never rejects x^q", "1 <= x <= 2000, q in {2, 3, 5}");
    for q in [2u32, 3, 5] {
        let moduli = standard_moduli(q);
        for x in 1..=2000u64 {
            let v = BigUint::from(x).pow(q);
            sieve.case(
                power_residue_sieve(&v, q, &moduli) == SieveVerdict::Possible,
                || format!("x = {x}, q = {q}"),
            );
        }
    }
    out.push(sieve.finish());
    out
}
