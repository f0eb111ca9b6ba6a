use cft_core::adele_idele::Idele;
use cft_core::as_pairing::{
    classify_place_in_as_ext, in_wp, in_wp_global, prime_ideles_at, psi_at_place, psi_global, psi_local, Splitting,
    WpVerdict,
};
use cft_core::finite_field::FieldSpec;
use cft_core::function_field::{local_expand, places_up_to_degree, RationalFunction};
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

fn fields() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 4, 5])
}

fn wp(z: &RationalFunction) -> RationalFunction {
    let p = z.field().p() as i64;
    &z.pow(p).unwrap() - z
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn bi_additive(seed in any::<u64>(), q in fields()) {
        let (mut r, f) = setup(seed, q);
        let (x, y) = (gen::rational(f, 3, &mut r), gen::rational(f, 3, &mut r));
        let (a, b) = (gen::idele(f, 2, &mut r).unwrap(), gen::idele(f, 2, &mut r).unwrap());
        prop_assert_eq!(
            psi_global(&(&x + &y), &a).unwrap(),
            psi_global(&x, &a).unwrap() + psi_global(&y, &a).unwrap()
        );
        prop_assert_eq!(
            psi_global(&x, &a.mul(&b).unwrap()).unwrap(),
            psi_global(&x, &a).unwrap() + psi_global(&x, &b).unwrap()
        );
    }

    #[test]
    fn left_kernel_is_wp(seed in any::<u64>(), q in fields()) {
        let (mut r, f) = setup(seed, q);
        let z = gen::rational(f, 2, &mut r);
        let a = gen::idele(f, 2, &mut r).unwrap();
        prop_assert!(psi_global(&wp(&z), &a).unwrap().is_zero());
    }

    #[test]
    fn right_kernel_contains_principal_and_pth_powers(seed in any::<u64>(), q in fields()) {
        let (mut r, f) = setup(seed, q);
        let x = gen::rational(f, 3, &mut r);
        let y = loop {
            let y = gen::rational(f, 3, &mut r);
            if !y.is_zero() {
                break y;
            }
        };
        prop_assert!(psi_global(&x, &Idele::principal(y).unwrap()).unwrap().is_zero());
        let a = gen::idele(f, 2, &mut r).unwrap();
        prop_assert!(psi_global(&x, &a.pow(f.p() as i64).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn local_pairing_depends_on_x_mod_wp(seed in any::<u64>(), q in prop::sample::select(vec![2u64, 3, 4])) {
        let (mut r, f) = setup(seed, q);
        let x = gen::series(f, r.gen_range(-3..2), 4, &mut r);
        let z = gen::series(f, r.gen_range(-1..2), 4, &mut r);
        let y = gen::series(f, r.gen_range(-3..4), 6, &mut r).truncate(8);
        let shifted = &x + &z.artin_schreier();
        prop_assert_eq!(psi_local(&x, &y).unwrap(), psi_local(&shifted, &y).unwrap());
    }
}

/// `P` splits exactly when `ψ_P(x, ·)` vanishes on every `t^k u`.
#[test]
fn split_places_are_exactly_the_local_kernel() {
    let mut r = ChaCha8Rng::seed_from_u64(5);
    for q in [2u64, 3, 4] {
        let f = gf(q);
        for _ in 0..30 {
            let x = gen::rational(f, 3, &mut r);
            if in_wp(&x).unwrap() {
                continue;
            }
            for place in places_up_to_degree(f, 2) {
                let kind = classify_place_in_as_ext(&x, &place).unwrap();
                let fp = place.residue_field(f).unwrap();
                let xs = local_expand(&x, &place, 1).unwrap();
                let mut all_zero = true;
                for k in 0..=1 {
                    for _ in 0..8 {
                        let u = gen::series(fp, 0, 6, &mut r);
                        let y = u.shift(k).truncate(12);
                        all_zero &= psi_local(&xs, &y).unwrap().is_zero();
                    }
                    // units with a chosen constant term reach every residue class
                    for c in fp.elements().filter(|c| !c.is_zero()) {
                        let y = cft_core::laurent_series::LaurentSeries::monomial(c, k);
                        all_zero &= psi_local(&xs, &y).unwrap().is_zero();
                    }
                }
                let unit_plus_t = {
                    let one = cft_core::laurent_series::LaurentSeries::one(fp);
                    let m = (-xs.valuation().unwrap_or(0)).max(1);
                    let mut ok = true;
                    for j in 1..=m {
                        for c in fp.elements().filter(|c| !c.is_zero()) {
                            let y = &one + &cft_core::laurent_series::LaurentSeries::monomial(c, j);
                            ok &= psi_local(&xs, &y.truncate(m + 2)).unwrap().is_zero();
                        }
                    }
                    ok
                };
                all_zero &= unit_plus_t;
                assert_eq!(kind == Splitting::Split, all_zero, "x = {x} at {place}: {kind}");
            }
        }
    }
}

#[test]
fn obstructed_functions_meet_a_nonzero_prime_idele() {
    let mut r = ChaCha8Rng::seed_from_u64(9);
    let mut seen = 0;
    for q in [2u64, 3] {
        let f = gf(q);
        while seen < 40 {
            let x = gen::rational(f, 3, &mut r);
            let WpVerdict::LocallyObstructed(..) = in_wp_global(&x, 3).unwrap() else { continue };
            seen += 1;
            let mut hit = false;
            'outer: for place in places_up_to_degree(f, 3) {
                for a in prime_ideles_at(f, &place, 3).unwrap() {
                    if !psi_global(&x, &a).unwrap().is_zero() {
                        hit = true;
                        break 'outer;
                    }
                }
            }
            assert!(hit, "no prime idele detects {x}");
        }
        seen = 0;
    }
}

#[test]
fn place_sum_matches_global_value() {
    let f = gf(2);
    let x = cft_core::parse::parse_rational("1/(T+1)", f).unwrap();
    let a = Idele::prime_at(f, cft_core::parse::parse_place("T", f).unwrap());
    assert_eq!(psi_global(&x, &a).unwrap().value(), 1);
    let total = a
        .relevant_places()
        .unwrap()
        .iter()
        .chain([cft_core::function_field::Place::Infinity].iter())
        .map(|p| psi_at_place(&x, &a, p).unwrap().value())
        .sum::<u8>()
        % 2;
    assert_eq!(total, 1);
}
