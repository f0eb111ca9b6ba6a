use cft_core::finite_field::FieldSpec;
use cft_core::laurent_series::{log_derivative_order, recompose_in_prime, reduce_mod_wp, residue, LaurentSeries, WpStatus};
use cft_core::verify::gen;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn gf(q: u64) -> FieldSpec {
    FieldSpec::with_order(q).unwrap()
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// All series `Σ_{i=lo}^{n-1} c_i t^i + O(t^n)`.
fn all_series(f: FieldSpec, lo: i64, n: i64) -> Vec<LaurentSeries> {
    let len = (n - lo) as u32;
    let total = f.order().pow(len);
    (0..total)
        .map(|mut idx| {
            let coeffs = (0..len)
                .map(|_| {
                    let c = f.element(idx % f.order());
                    idx /= f.order();
                    c
                })
                .collect();
            LaurentSeries::new(f, lo, coeffs, Some(n))
        })
        .collect()
}

fn zero_mod(s: &LaurentSeries, n: i64) -> bool {
    s.truncate(n).is_zero_to_precision()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn derivative_to_the_p_vanishes(seed in any::<u64>(), q in prop::sample::select(vec![2u64, 3, 4, 5, 7, 9])) {
        let mut r = rng(seed);
        let f = gf(q);
        let x = gen::series(f, r.gen_range(-6..6), r.gen_range(1..12), &mut r);
        let mut d = x.clone();
        for _ in 0..f.p() {
            d = d.derivative();
        }
        prop_assert!(d.is_exact_zero(), "D^p({}) = {}", x, d);
    }

    #[test]
    fn residue_is_independent_of_the_prime(seed in any::<u64>(), q in prop::sample::select(vec![2u64, 3, 4, 5])) {
        let mut r = rng(seed);
        let f = gf(q);
        let x = gen::series(f, r.gen_range(-4..1), 6, &mut r);
        let y = gen::series(f, r.gen_range(-3..4), 6, &mut r);
        let u = gen::series(f, 1, 5, &mut r).truncate(16);
        let before = residue(&x, &y);
        let (xu, yu) = (recompose_in_prime(&x, &u).unwrap(), recompose_in_prime(&y, &u).unwrap());
        let after = residue(&xu, &yu).unwrap();
        prop_assert_eq!(before.unwrap(), after, "x = {}, y = {}, u = {}", x, y, u);
    }

    #[test]
    fn log_derivative_is_additive(seed in any::<u64>(), q in prop::sample::select(vec![2u64, 3, 4, 5])) {
        let mut r = rng(seed);
        let f = gf(q);
        let x = gen::series(f, r.gen_range(-3..4), 6, &mut r).truncate(8);
        let y = gen::series(f, r.gen_range(-3..4), 6, &mut r).truncate(8);
        let lhs = (&x * &y).log_derivative().unwrap();
        let rhs = &x.log_derivative().unwrap() + &y.log_derivative().unwrap();
        prop_assert!((&lhs - &rhs).is_zero_to_precision(), "{} vs {}", lhs, rhs);
    }

    #[test]
    fn log_derivative_order_of_dy_over_y(seed in any::<u64>(), q in prop::sample::select(vec![2u64, 3, 5, 7])) {
        let mut r = rng(seed);
        let f = gf(q);
        let y = gen::series(f, r.gen_range(0..3), r.gen_range(1..4), &mut r);
        let x = y.truncate(24).log_derivative().unwrap();
        let n = log_derivative_order(&x).unwrap();
        prop_assert!(n.is_some(), "D(y)/y for y = {} has no order", y);
        // the least n with (D + x)^n (1) = 0, recomputed directly
        let mut z = LaurentSeries::one(f);
        let mut least = None;
        for k in 1..=f.p() as u32 {
            z = &z.derivative() + &(&x * &z);
            if z.is_zero_to_precision() {
                least = Some(k);
                break;
            }
        }
        prop_assert_eq!(n, least);
    }
}

#[test]
fn wp_reduction_matches_brute_force() {
    for (q, lo, n) in [(2u64, -4i64, 4i64), (3, -3, 3), (4, -2, 3)] {
        let f = gf(q);
        let p = f.p() as i64;
        let zs = all_series(f, lo.div_euclid(p).min(0), n);
        let image: std::collections::HashSet<String> =
            zs.iter().map(|z| z.artin_schreier().truncate(n).to_string()).collect();
        for x in all_series(f, lo, n) {
            let red = reduce_mod_wp(&x).unwrap();
            let in_wp = red.status == WpStatus::InWp;
            assert_eq!(in_wp, image.contains(&x.to_string()), "x = {x} over GF({q})");
            if in_wp {
                assert!(zero_mod(&(&x - &red.witness.artin_schreier()), n), "witness for {x}");
            }
        }
    }
}
