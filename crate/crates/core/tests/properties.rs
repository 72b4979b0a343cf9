use ballab::bigmath::{
    gcd, integer_kth_root, perfect_power_decompose, strip_prime, valuation, PowerDecomposition,
};
use ballab::diophantine::{oracle_search, run_search, Equation, Parity, SearchConfig};
use ballab::modular::{power_residue_sieve, standard_moduli, SieveVerdict};
use ballab::quadring::{binet_extract, qpow, QuadInt};
use ballab::sequences::{prefix, term_by_doubling, term_by_iteration, SequenceKind};
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn big_uint() -> impl Strategy<Value = BigUint> {
    prop::collection::vec(any::<u32>(), 0..8).prop_map(BigUint::new)
}

fn big_int() -> impl Strategy<Value = BigInt> {
    (any::<bool>(), big_uint()).prop_map(|(neg, m)| {
        let v = BigInt::from(m);
        if neg {
            -v
        } else {
            v
        }
    })
}

proptest! {
    #[test]
    fn kth_root_brackets(n in big_uint(), k in 1u32..12) {
        let r = integer_kth_root(&n, k);
        prop_assert!(r.pow(k) <= n);
        prop_assert!((&r + 1u32).pow(k) > n);
        prop_assert_eq!(r, n.nth_root(k));
    }

    #[test]
    fn kth_root_monotone(a in big_uint(), b in big_uint(), k in 1u32..8) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        prop_assert!(integer_kth_root(&lo, k) <= integer_kth_root(&hi, k));
    }

    #[test]
    fn decompose_recognises_constructed_powers(x in 2u64..1_000_000, q in 2u32..9) {
        let v = BigUint::from(x).pow(q);
        match perfect_power_decompose(&v) {
            PowerDecomposition::Power { base, exponent } => {
                prop_assert_eq!(base.pow(exponent), v.clone());
                prop_assert_eq!(exponent % q, 0);
                // maximality: base itself is not a perfect power
                let primitive = matches!(
                    perfect_power_decompose(&base),
                    PowerDecomposition::Power { exponent: 1, .. }
                );
                prop_assert!(primitive);
            }
            other => prop_assert!(false, "unexpected {:?}", other),
        }
    }

    #[test]
    fn strip_then_recompose(n in big_uint(), p in prop::sample::select(vec![2u64, 3, 5, 7, 97])) {
        prop_assume!(!n.is_zero());
        let n = BigInt::from(n);
        let (s, rest) = strip_prime(p, &n).unwrap();
        prop_assert_eq!(BigInt::from(p).pow(s) * &rest, n.clone());
        prop_assert!(!(&rest % p).is_zero());
        prop_assert_eq!(valuation(p, &n).unwrap(), s);
    }

    #[test]
    fn gcd_laws(a in big_int(), b in big_int(), c in big_int()) {
        let g = gcd(&a, &b);
        prop_assert_eq!(&g, &gcd(&b, &a));
        prop_assert_eq!(gcd(&g, &c), gcd(&a, &gcd(&b, &c)));
        prop_assert_eq!(&g, &num_integer::Integer::gcd(&a, &b));
        if !g.is_zero() {
            prop_assert!((&a % &g).is_zero() && (&b % &g).is_zero());
        }
    }

    #[test]
    fn conjugation_commutes_with_powers(a in -50i64..50, b in -50i64..50, n in 0u64..40) {
        let u = QuadInt::new(a, b);
        prop_assert_eq!(qpow(&u, n).conjugate(), qpow(&u.conjugate(), n));
        prop_assert_eq!(qpow(&u, n).norm(), u.norm().pow(n as u32));
    }

    #[test]
    fn norm_is_multiplicative(a in -1000i64..1000, b in -1000i64..1000, c in -1000i64..1000, d in -1000i64..1000) {
        let (u, v) = (QuadInt::new(a, b), QuadInt::new(c, d));
        prop_assert_eq!((&u * &v).norm(), u.norm() * v.norm());
    }

    #[test]
    fn sieve_never_rejects_powers(x in 1u64..1_000_000, q in prop::sample::select(vec![2u32, 3, 5])) {
        let v = BigUint::from(x).pow(q);
        prop_assert_eq!(power_residue_sieve(&v, q, &standard_moduli(q)), SieveVerdict::Possible);
    }
}

#[test]
fn binet_equals_iteration_to_500() {
    let b = prefix(SequenceKind::Balancing, 500);
    let c = prefix(SequenceKind::LucasBalancing, 500);
    for n in 0..=500u64 {
        assert_eq!(
            binet_extract(n).unwrap(),
            (b[n as usize].clone(), c[n as usize].clone()),
            "n = {n}"
        );
    }
}

#[test]
fn alpha_powers_have_unit_norm() {
    for n in 0..=300 {
        assert!(qpow(&QuadInt::alpha(), n).norm().is_one());
    }
}

#[test]
fn pell_family_doubling_matches_iteration() {
    for kind in SequenceKind::ALL {
        for n in [0u64, 1, 2, 63, 64, 65, 200, 333] {
            assert_eq!(
                term_by_doubling(kind, n).unwrap(),
                term_by_iteration(kind, n),
                "{kind} {n}"
            );
        }
    }
}

#[test]
fn sequence_invariants_to_500() {
    let b = prefix(SequenceKind::Balancing, 500);
    let c = prefix(SequenceKind::LucasBalancing, 500);
    let p = prefix(SequenceKind::Pell, 500);
    let q = prefix(SequenceKind::AssociatedPell, 500);
    for n in 0..=500 {
        assert_eq!(&b[n] * &b[n] * 8u32 + 1u32, &c[n] * &c[n]);
        assert!(num_integer::Integer::is_odd(&c[n]));
        if n >= 1 {
            assert!(gcd(&p[n], &q[n]).is_one());
        }
        if n <= 250 {
            assert_eq!(b[2 * n], &b[n] * &c[n] * 2u32);
        }
    }
    for x in 0..=100 {
        for y in 0..=100 {
            assert_eq!(b[x + y], &b[x] * &c[y] + &c[x] * &b[y]);
        }
    }
}

fn configs() -> Vec<(Equation, SearchConfig)> {
    let mut out = Vec::new();
    for parity in [Parity::Same, Parity::Opposite, Parity::Any] {
        let mut cfg = Equation::SumPower.default_config(30);
        cfg.parity = parity;
        out.push((Equation::SumPower, cfg));
        cfg.coprimality_required = true;
        out.push((Equation::SumPower, cfg));
    }
    for eq in [
        Equation::SquareDiff,
        Equation::CubeSumPlus,
        Equation::CubeSumMinus,
    ] {
        for exempt in [true, false] {
            let mut cfg = eq.default_config(30);
            cfg.coprime_zero_exempt = exempt;
            out.push((eq, cfg));
        }
    }
    // an exponent floor above 2 still admits the trivial squares of B_n
    let mut cfg = Equation::SquareDiff.default_config(25);
    cfg.min_exponent = 3;
    out.push((Equation::SquareDiff, cfg));
    for kind in SequenceKind::ALL {
        for prime in [2u64, 3, 5, 7] {
            let eq = Equation::SpecialForm { kind, prime };
            out.push((eq, eq.default_config(40)));
        }
    }
    out.push((
        Equation::ProductForm,
        Equation::ProductForm.default_config(30),
    ));
    out
}

#[test]
fn sieve_is_transparent() {
    for (eq, cfg) in configs() {
        let on = run_search(eq, &cfg, None).unwrap();
        let off = run_search(
            eq,
            &SearchConfig {
                sieve_enabled: false,
                ..cfg
            },
            None,
        )
        .unwrap();
        assert_eq!(on.tuples(), off.tuples(), "{eq} {cfg:?}");
    }
}

#[test]
fn fast_search_matches_oracle_on_varied_configs() {
    for (eq, cfg) in configs() {
        let fast = run_search(eq, &cfg, None).unwrap();
        let slow = oracle_search(eq, &cfg).unwrap();
        assert_eq!(fast.json_lines(), slow.json_lines(), "{eq} {cfg:?}");
        assert!(fast.verify_all(), "{eq}");
    }
}

#[test]
fn enlarging_the_box_keeps_records() {
    for (eq, cfg) in configs() {
        let small = run_search(
            eq,
            &SearchConfig {
                max_index: 15,
                ..cfg
            },
            None,
        )
        .unwrap()
        .tuples();
        let large = run_search(
            eq,
            &SearchConfig {
                max_index: 45,
                ..cfg
            },
            None,
        )
        .unwrap()
        .tuples();
        for t in &small {
            assert!(large.contains(t), "{eq}: {t} lost");
        }
        if cfg.min_exponent > 2 {
            let lower = run_search(
                eq,
                &SearchConfig {
                    min_exponent: cfg.min_exponent - 1,
                    ..cfg
                },
                None,
            );
            if let Ok(lower) = lower {
                let lower = lower.tuples();
                let shifted: Vec<_> = run_search(eq, &cfg, None).unwrap().tuples();
                for t in shifted.iter().filter(|t| !t.contains("q>=")) {
                    assert!(
                        lower.contains(t),
                        "{eq}: {t} lost when lowering the exponent"
                    );
                }
            }
        }
    }
}
