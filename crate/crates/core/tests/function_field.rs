use cft_core::finite_field::FieldSpec;
use cft_core::function_field::{
    divisor_of, local_expand, places_up_to_degree, principal_generator, riemann_roch_basis, valuation_at, Divisor, Place,
    RationalFunction,
};
use cft_core::poly::Poly;
use cft_core::verify::gen;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn gf(q: u64) -> FieldSpec {
    FieldSpec::with_order(q).unwrap()
}

fn setup(seed: u64, q: u64) -> (ChaCha8Rng, FieldSpec) {
    (ChaCha8Rng::seed_from_u64(seed), gf(q))
}

fn nonzero_rational(f: FieldSpec, r: &mut ChaCha8Rng) -> RationalFunction {
    loop {
        let x = gen::rational(f, 5, r);
        if !x.is_zero() {
            return x;
        }
    }
}

/// `v_f` by repeated division.
fn poly_valuation(a: &Poly, f: &Poly) -> i64 {
    let mut a = a.clone();
    let mut k = 0;
    while f.divides(&a) {
        a = a.exact_div(f);
        k += 1;
    }
    k
}

fn valuation_oracle(x: &RationalFunction, place: &Place) -> i64 {
    match place {
        Place::Infinity => x.denominator().degree() - x.numerator().degree(),
        Place::Finite(f) => poly_valuation(x.numerator(), f) - poly_valuation(x.denominator(), f),
    }
}

fn fields() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 4, 5, 9])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn valuations_match_repeated_division(seed in any::<u64>(), q in fields()) {
        let (mut r, f) = setup(seed, q);
        let x = nonzero_rational(f, &mut r);
        for place in places_up_to_degree(f, 2) {
            prop_assert_eq!(valuation_at(&x, &place).unwrap(), valuation_oracle(&x, &place));
        }
        let p = gen::place(f, 3, &mut r);
        prop_assert_eq!(valuation_at(&x, &p).unwrap(), valuation_oracle(&x, &p));
    }

    #[test]
    fn divisor_is_a_homomorphism(seed in any::<u64>(), q in fields()) {
        let (mut r, f) = setup(seed, q);
        let (x, y) = (nonzero_rational(f, &mut r), nonzero_rational(f, &mut r));
        let dx = divisor_of(&x).unwrap();
        let dy = divisor_of(&y).unwrap();
        prop_assert_eq!(divisor_of(&(&x * &y)).unwrap(), &dx + &dy);
        prop_assert_eq!(dx.degree(), 0);
        prop_assert_eq!(divisor_of(&x.inv().unwrap()).unwrap(), -&dx);
    }

    #[test]
    fn valuation_is_ultrametric(seed in any::<u64>(), q in fields()) {
        let (mut r, f) = setup(seed, q);
        let (x, y) = (nonzero_rational(f, &mut r), nonzero_rational(f, &mut r));
        let s = &x + &y;
        prop_assume!(!s.is_zero());
        for place in places_up_to_degree(f, 2) {
            let (vx, vy, vs) = (
                valuation_at(&x, &place).unwrap(),
                valuation_at(&y, &place).unwrap(),
                valuation_at(&s, &place).unwrap(),
            );
            prop_assert!(vs >= vx.min(vy));
            if vx != vy {
                prop_assert_eq!(vs, vx.min(vy));
            }
        }
    }

    #[test]
    fn expansion_of_inverse_is_inverse(seed in any::<u64>(), q in fields(), n in 1i64..8) {
        let (mut r, f) = setup(seed, q);
        let x = nonzero_rational(f, &mut r);
        let place = gen::place(f, gen::max_place_degree(f, 2), &mut r);
        let v = valuation_at(&x, &place).unwrap();
        let a = local_expand(&x, &place, v + n).unwrap();
        let b = local_expand(&x.inv().unwrap(), &place, n - v).unwrap();
        let prod = &a * &b;
        prop_assert!(prod.precision().is_none_or(|m| m >= n));
        let one = cft_core::laurent_series::LaurentSeries::one(prod.field());
        prop_assert!((&prod - &one).is_zero_to_precision(), "{} * {} at {}", a, b, place);
        prop_assert_eq!(a.valuation(), Some(v));
    }
}

#[test]
fn degree_zero_divisors_are_principal() {
    for (q, d) in [(2u64, 3u32), (3, 2), (4, 1)] {
        let f = gf(q);
        let places = places_up_to_degree(f, d);
        let k = places.len() as u32;
        let mut checked = 0;
        for code in 0..3u64.pow(k) {
            let mut c = code;
            let terms: Vec<(Place, i64)> = places
                .iter()
                .map(|p| {
                    let e = (c % 3) as i64 - 1;
                    c /= 3;
                    (p.clone(), e)
                })
                .collect();
            let div = Divisor::from_terms(terms);
            if div.degree() != 0 {
                continue;
            }
            let y = principal_generator(f, &div).unwrap();
            assert_eq!(divisor_of(&y).unwrap(), div, "over GF({q})");
            assert_eq!(riemann_roch_basis(f, &div).len(), 1);
            checked += 1;
        }
        assert!(checked > 10);
    }
}

#[test]
fn riemann_roch_dimensions() {
    let mut r = ChaCha8Rng::seed_from_u64(7);
    for q in [2u64, 3, 4] {
        let f = gf(q);
        let places = places_up_to_degree(f, 2);
        for _ in 0..50 {
            let div = Divisor::from_terms(places.iter().map(|p| (p.clone(), r.gen_range(-2..=2))));
            let basis = riemann_roch_basis(f, &div);
            assert_eq!(basis.len() as i64, (div.degree() + 1).max(0));
            for b in &basis {
                let e = &divisor_of(b).unwrap() + &div;
                assert!(e.terms().all(|(_, n)| n >= 0), "({b}) + {div} = {e}");
            }
        }
    }
}
