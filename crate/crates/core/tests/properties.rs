use braidstat::braid::check_braid_numeric;
use braidstat::exp_scalar::text::{parse, render};
use braidstat::exp_scalar::{Cyc, ExpScalar, LinForm, NumEnv, ParamSymbol, Sign};
use braidstat::params::{symbols, ParamSet};
use braidstat::projectors::{build_generalized, verify_basis, Label};
use braidstat::ring::{q, Ring};
use braidstat::spectrum::classify::root_sum;
use num_complex::Complex64;
use proptest::prelude::*;
use std::collections::{BTreeMap, HashMap};

fn cyc() -> impl Strategy<Value = Cyc> {
    (prop::sample::select(vec![1u32, 2, 3, 4, 5, 8]), -3i64..=3, prop::collection::vec((-4i64..=4, 1i64..=3), 1..3)).prop_map(
        |(order, _, parts)| {
            parts
                .into_iter()
                .enumerate()
                .fold(Cyc::zero(), |acc, (k, (a, b))| acc.add_ref(&Cyc::zeta_pow(order, k as i64).mul_ref(&Cyc::from_rational(q(a, b)))))
        },
    )
}

fn sym() -> impl Strategy<Value = ParamSymbol> {
    prop::sample::select(symbols(3))
}

fn linform() -> impl Strategy<Value = LinForm> {
    prop::collection::vec((sym(), -3i64..=3), 0..3)
        .prop_map(|terms| terms.into_iter().fold(LinForm::zero(), |acc, (s, c)| acc.add(&LinForm::term(s, q(c, 1)))))
}

fn scalar() -> impl Strategy<Value = ExpScalar> {
    prop::collection::vec((cyc(), linform()), 0..4)
        .prop_map(|terms| terms.into_iter().fold(ExpScalar::zero(), |acc, (c, mu)| acc.add_ref(&ExpScalar::exp_term(c, mu))))
}

fn env() -> NumEnv {
    let params: HashMap<ParamSymbol, f64> = symbols(3).into_iter().enumerate().map(|(i, s)| (s, 0.1 + 0.07 * i as f64)).collect();
    NumEnv::new(0.37, params)
}

fn close(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() <= 1e-9 * (1.0 + a.norm().max(b.norm()))
}

proptest! {
    #[test]
    fn cyclotomic_ring_axioms(a in cyc(), b in cyc(), c in cyc()) {
        prop_assert_eq!(a.add_ref(&b).add_ref(&c), a.add_ref(&b.add_ref(&c)));
        prop_assert_eq!(a.mul_ref(&b), b.mul_ref(&a));
        prop_assert_eq!(a.mul_ref(&b.add_ref(&c)), a.mul_ref(&b).add_ref(&a.mul_ref(&c)));
        prop_assert!(a.sub_ref(&a).is_zero());
    }

    #[test]
    fn cyclotomic_inverse(a in cyc()) {
        if let Some(inv) = a.inverse() {
            prop_assert_eq!(a.mul_ref(&inv), Cyc::one());
        } else {
            prop_assert!(a.is_zero());
        }
    }

    #[test]
    fn evaluation_is_a_ring_map(a in scalar(), b in scalar()) {
        let e = env();
        let (x, y) = (a.eval(&e).unwrap(), b.eval(&e).unwrap());
        prop_assert!(close(a.mul_ref(&b).eval(&e).unwrap(), x * y));
        prop_assert!(close(a.add_ref(&b).eval(&e).unwrap(), x + y));
    }

    #[test]
    fn canonicalize_is_idempotent(a in scalar()) {
        let c = a.canonicalize();
        prop_assert_eq!(c.canonicalize(), c.clone());
        prop_assert!(close(c.eval(&env()).unwrap(), a.eval(&env()).unwrap()));
    }

    #[test]
    fn render_parse_round_trip(a in scalar()) {
        let text = render(&a);
        let back = parse(&text).expect("rendered text parses");
        prop_assert_eq!(back, a);
    }

    #[test]
    fn roots_of_unity_sum_to_zero(l in 2usize..=12) {
        prop_assert!(root_sum(l).is_zero());
    }

    #[test]
    fn generalized_projectors_stay_projectors(vals in prop::collection::vec((1i64..=5, 1i64..=4, prop::bool::ANY), 8)) {
        let pairs: Vec<(usize, usize)> = Label::all(3).into_iter().filter(|l| *l != Label::Pp).map(|l| l.pair(3)).collect();
        let mut u = BTreeMap::new();
        let mut v = BTreeMap::new();
        for (k, pair) in pairs.into_iter().enumerate() {
            let (a, b, neg) = vals[k % vals.len()];
            let x = q(if neg { -a } else { a }, b);
            u.entry(pair).or_insert_with(|| x.clone());
            v.entry(pair).or_insert_with(|| q(b, a));
        }
        let basis = build_generalized(3, &u, &v).unwrap();
        prop_assert!(verify_basis(&basis).pass());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn braid_relation_holds_numerically(seed in 0u64..10_000, theta in -1.5f64..1.5, theta2 in -1.5f64..1.5) {
        let params = ParamSet::random(3, seed, 1.0).unwrap();
        let env = NumEnv { theta, theta2, params: params.numeric().unwrap(), ..Default::default() };
        prop_assert!(check_braid_numeric(&params, theta, theta2, &env).unwrap() < 1e-10);
    }

    #[test]
    fn sign_pairs_fold(a in 1u16..=3, b in 1u16..=3) {
        let s = ParamSymbol::canonical(3, a, b, Sign::Plus);
        prop_assert!(s.a <= 2 && s.b <= 2);
    }
}
