mod common;

use common::{naive_squarefree, poly_strategy, random_nonconstant, random_poly};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sfd_core::euler::partial_euler_product;
use sfd_core::local::{property_a_witnesses, rho_bruteforce, rho_lifted};
use sfd_core::{
    count_squarefree_values, is_squarefree_int, multivariate_gcd, parse, squarefree_verdict,
    BoxSpec, Budget, CountOptions, Polynomial, ProductMode,
};

const B: Budget = Budget::DEFAULT;

fn arity_and_poly() -> impl Strategy<Value = Polynomial> {
    (1usize..=3).prop_flat_map(|s| poly_strategy(s, 4, 10))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_string_round_trips(p in arity_and_poly()) {
        let text = p.to_canonical_string();
        let q = parse(&text, Some(p.arity())).unwrap();
        prop_assert_eq!(q, p);
    }

    #[test]
    fn evaluation_is_a_ring_homomorphism(
        (p, q, point) in (1usize..=3).prop_flat_map(|s| (
            poly_strategy(s, 4, 10),
            poly_strategy(s, 4, 10),
            prop::collection::vec(-50i64..=50, s),
        ))
    ) {
        let prod = &p * &q;
        let lhs = prod.evaluate_i64(&point).unwrap();
        let rhs = p.evaluate_i64(&point).unwrap() * q.evaluate_i64(&point).unwrap();
        prop_assert_eq!(lhs, rhs);
        let sum = (&p + &q).evaluate_i64(&point).unwrap();
        prop_assert_eq!(sum, p.evaluate_i64(&point).unwrap() + q.evaluate_i64(&point).unwrap());
    }

    #[test]
    fn modular_evaluation_matches_exact(
        (p, point) in (1usize..=3).prop_flat_map(|s| (
            poly_strategy(s, 4, 10),
            prop::collection::vec(-1_000_000i64..=1_000_000, s),
        )),
        m in 2u64..=1_000_000,
    ) {
        let exact = p.evaluate_i64(&point).unwrap();
        let mb = BigInt::from(m);
        let expect = ((exact % &mb) + &mb) % &mb;
        prop_assert_eq!(BigInt::from(p.evaluate_mod(&point, m).unwrap()), expect);
    }

    #[test]
    fn content_scales(p in arity_and_poly(), c in (-50i64..=50).prop_filter("nonzero", |c| *c != 0)) {
        let c = BigInt::from(c);
        prop_assert_eq!(p.scale(&c).content(), p.content() * c.abs());
        let pp = p.primitive_part();
        if !p.is_zero() {
            prop_assert_eq!(&pp.scale(&p.content()).normalize_sign(), &p.normalize_sign());
        }
    }

    #[test]
    fn verdict_is_invariant_under_integer_scaling(
        p in arity_and_poly().prop_filter("non-constant", |p| !p.is_constant()),
        c in (-30i64..=30).prop_filter("nonzero", |c| *c != 0),
    ) {
        let v = squarefree_verdict(&p).unwrap();
        let w = squarefree_verdict(&p.scale(&BigInt::from(c))).unwrap();
        prop_assert_eq!(v.is_squarefree, w.is_squarefree);
        for verdict in [v, w] {
            if let Some(l) = verdict.witness {
                prop_assert!(!l.is_constant());
            }
        }
    }

    #[test]
    fn witness_square_divides(p in arity_and_poly().prop_filter("non-constant", |p| !p.is_constant())) {
        let v = squarefree_verdict(&p).unwrap();
        match v.witness {
            Some(l) => {
                prop_assert!(!v.is_squarefree);
                prop_assert!(p.div_exact(&(&l * &l)).is_some());
            }
            None => prop_assert!(v.is_squarefree),
        }
    }

    #[test]
    fn gcd_divides_and_is_maximal(
        (a, b, c, d) in (1usize..=3).prop_flat_map(|s| (
            poly_strategy(s, 3, 10),
            poly_strategy(s, 3, 10),
            poly_strategy(s, 2, 5),
            poly_strategy(s, 2, 5),
        ))
    ) {
        prop_assume!(!a.is_zero() || !b.is_zero());
        let g = multivariate_gcd(&a, &b).unwrap();
        prop_assert!(a.div_exact(&g).is_some());
        prop_assert!(b.div_exact(&g).is_some());
        prop_assert_eq!(g.content(), BigInt::from(1));

        prop_assume!(!g.is_zero() && !(c.is_zero() && d.is_zero()));
        let h = multivariate_gcd(&(&g * &c), &(&g * &d)).unwrap();
        prop_assert!(h.div_exact(&g).is_some());
    }

    #[test]
    fn rho_is_translation_invariant(
        (p, shift) in (1usize..=2).prop_flat_map(|s| (
            poly_strategy(s, 3, 20),
            prop::collection::vec(-30i64..=30, s),
        )),
        prime in prop::sample::select(vec![2u64, 3, 5, 7]),
    ) {
        let shift: Vec<BigInt> = shift.into_iter().map(BigInt::from).collect();
        let q = p.shift(&shift).unwrap();
        let a = rho_lifted(&p, prime, B).unwrap();
        let b = rho_lifted(&q, prime, B).unwrap();
        prop_assert_eq!(a.rho, b.rho);
        prop_assert!(a.rho <= a.total);
    }

    #[test]
    fn squarefree_sign_symmetry(n in any::<i64>()) {
        let a = is_squarefree_int(&BigInt::from(n));
        let b = is_squarefree_int(&-BigInt::from(n));
        prop_assert_eq!(a, b);
    }
}

#[test]
fn rho_algorithms_agree_on_random_polynomials() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    for _ in 0..60 {
        let s = rng.gen_range(1..=2);
        let p = random_poly(&mut rng, s, 4, 20);
        if p.is_zero() {
            continue;
        }
        for prime in [2, 3, 5, 7] {
            let brute = rho_bruteforce(&p, prime, B).unwrap();
            let lifted = rho_lifted(&p, prime, B).unwrap();
            assert_eq!(brute.rho, lifted.rho, "{p} at p = {prime}");
            assert!(brute.rho <= brute.total);
        }
    }
}

#[test]
fn squared_factor_constructions_are_detected() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    for _ in 0..50 {
        let s = rng.gen_range(1..=3);
        let a = random_nonconstant(&mut rng, s, 3, 10);
        let b = loop {
            let b = random_poly(&mut rng, s, 3, 10);
            if !b.is_zero() {
                break b;
            }
        };
        let p = &(&a * &a) * &b;
        let v = squarefree_verdict(&p).unwrap();
        assert!(!v.is_squarefree, "{p}");
        let l = v.witness.unwrap();
        assert!(
            p.div_exact(&(&l * &l)).is_some(),
            "{l} squared does not divide {p}"
        );
    }
}

#[test]
fn euler_partials_are_monotone_and_zero_matches_property_a() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0003);
    let mut polys: Vec<Polynomial> = (0..20)
        .map(|_| {
            let s = rng.gen_range(1..=2);
            random_nonconstant(&mut rng, s, 4, 20)
        })
        .collect();
    polys.push(parse("x*(x-1)*y*(y-1)", None).unwrap());
    polys.push(parse("4*x^2+4*x+4", None).unwrap());
    polys.push(parse("9*x^3 - 9*x", None).unwrap());
    for p in &polys {
        let r = partial_euler_product(p, 50, ProductMode::Rational, None, B).unwrap();
        let mut prev = BigRational::from_integer(1.into());
        for part in &r.partials {
            let q = part.rational.clone().unwrap();
            assert!(q <= prev && q >= BigRational::zero(), "{p}");
            prev = q;
        }
        let witnesses = property_a_witnesses(p, B).unwrap();
        assert_eq!(
            r.is_exactly_zero,
            witnesses.iter().any(|w| w.p <= 50),
            "{p}"
        );
        for w in &witnesses {
            assert!((&w.fixed_divisor % (w.p * w.p)).is_zero());
        }
    }
}

#[test]
fn float_and_rational_modes_agree_within_reported_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0004);
    for _ in 0..20 {
        let p = random_nonconstant(&mut rng, 1, 4, 20);
        let exact = partial_euler_product(&p, 100, ProductMode::Rational, None, B).unwrap();
        let float = partial_euler_product(&p, 100, ProductMode::Float, None, B).unwrap();
        let e = exact.final_rational().unwrap();
        let f = BigRational::from_float(float.final_float()).unwrap();
        let diff = (f - e).to_f64().unwrap().abs();
        assert!(diff <= float.final_error_bound(), "{p}: {diff}");
    }
}

#[test]
fn squarefree_int_agrees_with_oracle() {
    for n in -100_000i64..=100_000 {
        assert_eq!(
            is_squarefree_int(&BigInt::from(n)),
            naive_squarefree(n),
            "n = {n}"
        );
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    for _ in 0..1000 {
        let n: i64 = rng.gen_range(1..=1_000_000_000_000);
        assert_eq!(
            is_squarefree_int(&BigInt::from(n)),
            naive_squarefree(n),
            "n = {n}"
        );
    }
}

#[test]
fn coprime_squarefree_products_stay_squarefree() {
    use num_integer::Integer;
    let sf: Vec<u64> = (1..=1000u64)
        .filter(|&n| is_squarefree_int(&BigInt::from(n)))
        .collect();
    for &a in sf.iter().step_by(7) {
        for &b in sf.iter().step_by(5) {
            if a.gcd(&b) == 1 {
                assert!(is_squarefree_int(&BigInt::from(a * b)), "{a} * {b}");
            }
        }
    }
}

#[test]
fn property_a_forces_empty_boxes() {
    for s in [
        "x*(x-1)*y*(y-1)",
        "4*x^2+4*x+4",
        "x^3*(x+1)^2 - x*(x+1)^2 + 18",
    ] {
        let p = parse(s, None).unwrap();
        let w = property_a_witnesses(&p, B).unwrap();
        if w.is_empty() {
            continue;
        }
        for r in [3, 8, 15] {
            let b = BoxSpec::cube(p.arity(), r).unwrap();
            let c = count_squarefree_values(&p, &b, CountOptions::default()).unwrap();
            assert_eq!(c.count, 0, "{s} on radius {r}");
        }
    }
}

#[test]
fn counts_do_not_depend_on_worker_count() {
    let p = parse("x^2*y + 3*x - y^2 + 1", None).unwrap();
    let b = BoxSpec::new(vec![40, 25]).unwrap();
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| count_squarefree_values(&p, &b, CountOptions::default()).unwrap())
    };
    let one = run(1);
    assert_eq!(one, run(3));
    assert_eq!(one, run(8));
}
