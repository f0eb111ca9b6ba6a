use cft_core::cyclic_cohomology::{
    check_multiplicativity, direct_sum, h0, herbrand_quotient, hminus1, induced_module, semilocal_compare,
    submodule_sequence, unit_group_module, CyclicModule,
};
use cft_core::verify::gen;
use num_rational::Ratio;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn orders(m: &CyclicModule) -> (u64, u64) {
    (h0(m).unwrap().order().unwrap(), hminus1(m).unwrap().order().unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn smith_matches_enumeration(seed in any::<u64>(), n in 1u32..=6) {
        let mut r = rng(seed);
        let m = gen::finite_module(n, 1000, &mut r);
        let (a, b) = orders(&m);
        if let Some((e0, e1)) = gen::brute_force_cohomology_orders(&m) {
            prop_assert_eq!((a, b), (e0 as u64, e1 as u64), "module {}", m.to_json());
        }
        prop_assert_eq!(herbrand_quotient(&m).unwrap(), Ratio::from_integer(1));
    }

    #[test]
    fn cohomology_is_invariant_under_change_of_basis(seed in any::<u64>(), n in 1u32..=6) {
        let mut r = rng(seed);
        let m = gen::block(n, false, &mut r);
        let m = if r.gen_bool(0.5) { direct_sum(&m, &gen::block(n, false, &mut r)).unwrap() } else { m };
        if let Some(c) = gen::conjugate_module(&m, &mut r) {
            prop_assert_eq!(h0(&c).unwrap(), h0(&m).unwrap());
            prop_assert_eq!(hminus1(&c).unwrap(), hminus1(&m).unwrap());
        }
    }

    #[test]
    fn herbrand_is_multiplicative(seed in any::<u64>(), n in 1u32..=6) {
        let mut r = rng(seed);
        let b = gen::module(n, true, 1000, &mut r);
        prop_assume!(b.rank() > 0);
        let g = gen::module_vector(&b, &mut r);
        let s = submodule_sequence(&b, &[g]).unwrap();
        prop_assert!(check_multiplicativity(&s.a, &s.b, &s.c, &s.f, &s.g).unwrap());
    }

    #[test]
    fn herbrand_of_free_modules(seed in any::<u64>(), n in 1u32..=8) {
        let mut r = rng(seed);
        let k = r.gen_range(1..=3);
        let trivial = CyclicModule::new(n, k, vec![], (0..k).map(|i| (0..k).map(|j| (i == j) as i128).collect()).collect(), false).unwrap();
        prop_assert_eq!(herbrand_quotient(&trivial).unwrap(), Ratio::from_integer((n as u64).pow(k as u32)));
        // an induced module from the trivial group is cohomologically trivial
        let z1 = CyclicModule::free(1, vec![vec![1]]).unwrap();
        let ind = induced_module(&z1, n).unwrap();
        prop_assert_eq!(h0(&ind).unwrap().order(), Some(1));
        prop_assert_eq!(hminus1(&ind).unwrap().order(), Some(1));
    }

    #[test]
    fn semilocal_isomorphisms(seed in any::<u64>(), s in 1u32..=3, n1 in 1u32..=3) {
        let mut r = rng(seed);
        let a1 = gen::module(n1, true, 200, &mut r);
        let rep = semilocal_compare(n1 * s, s, &a1).unwrap();
        prop_assert!(rep.h0_iso && rep.hminus1_iso);
        prop_assert_eq!(rep.h0.order(), rep.h0_local.order());
        prop_assert_eq!(rep.hminus1.order(), rep.hminus1_local.order());
    }

    #[test]
    fn json_round_trip(seed in any::<u64>(), n in 1u32..=6) {
        let mut r = rng(seed);
        let m = gen::module(n, true, 1000, &mut r);
        let back = CyclicModule::from_json(&m.to_json()).unwrap();
        prop_assert_eq!(back.to_json(), m.to_json());
    }
}

#[test]
fn hilbert_90_by_enumeration() {
    for q in [2u64, 3, 4, 5] {
        for n in 1..=4 {
            let m = unit_group_module(q, n).unwrap();
            assert!(hminus1(&m).unwrap().is_trivial(), "q={q} n={n}");
            let (ker, img) = gen::brute_force_hilbert90(q, n).unwrap();
            assert_eq!(ker, img, "q={q} n={n}");
        }
    }
}

#[test]
fn rejects_invalid_actions() {
    // σ of order 3 on Z/7 does not satisfy σ^2 = 1
    assert!(CyclicModule::new(2, 0, vec![7], vec![vec![2]], false).is_err());
    // -1 on Z is fine for even order, not for odd
    assert!(CyclicModule::new(2, 1, vec![], vec![vec![-1]], false).is_ok());
    assert!(CyclicModule::new(3, 1, vec![], vec![vec![-1]], false).is_err());
}
