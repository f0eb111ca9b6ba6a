use cft_core::finite_field::{ExtFieldElem, FieldSpec};
use proptest::prelude::*;

fn gf(q: u64) -> FieldSpec {
    FieldSpec::with_order(q).unwrap()
}

fn small_fields() -> impl Strategy<Value = FieldSpec> {
    prop::sample::select(vec![2u64, 3, 4, 5, 7, 8, 9, 16, 25, 27, 32, 49, 64, 81, 121, 169]).prop_map(gf)
}

fn elem_of(f: FieldSpec) -> impl Strategy<Value = ExtFieldElem> {
    (0..f.order()).prop_map(move |i| f.element(i))
}

fn subfields(f: FieldSpec) -> Vec<FieldSpec> {
    (1..=f.degree() as u32)
        .filter(|d| f.degree() as u32 % d == 0)
        .map(|d| FieldSpec::new(f.p() as u32, d).unwrap())
        .collect()
}

proptest! {
    #[test]
    fn trace_is_additive((f, a, b) in small_fields().prop_flat_map(|f| (Just(f), elem_of(f), elem_of(f)))) {
        for s in subfields(f) {
            prop_assert_eq!(
                (a + b).trace_to(s).unwrap(),
                a.trace_to(s).unwrap() + b.trace_to(s).unwrap()
            );
        }
    }

    #[test]
    fn embedding_commutes_with_frobenius((f, a, k) in small_fields().prop_flat_map(|f| (Just(f), elem_of(f), 0i64..12))) {
        let big = f.extension(2).unwrap();
        let up = a.embed(big).unwrap();
        prop_assert_eq!(a.frobenius_power(k).embed(big).unwrap(), up.frobenius_power(k));
        prop_assert_eq!(up.restrict(f).unwrap(), Some(a));
    }

    #[test]
    fn field_axioms((f, a, b, c) in small_fields().prop_flat_map(|f| (Just(f), elem_of(f), elem_of(f), elem_of(f)))) {
        prop_assert_eq!(a * (b + c), a * b + a * c);
        prop_assert_eq!((a * b) * c, a * (b * c));
        if !a.is_zero() {
            prop_assert!((a * a.inv()).is_one());
            prop_assert_eq!(a.pow(f.order() - 1), f.one());
        }
    }
}

#[test]
fn trace_is_onto_every_subfield() {
    for q in [4u64, 8, 9, 16, 27, 64, 81] {
        let f = gf(q);
        for s in subfields(f) {
            let image: std::collections::BTreeSet<u64> =
                f.elements().map(|a| a.trace_to(s).unwrap().restrict(s).unwrap().unwrap().index()).collect();
            assert_eq!(image.len() as u64, s.order(), "trace GF({q}) -> {s}");
        }
    }
}

#[test]
fn artin_schreier_solvable_iff_trace_vanishes() {
    for q in [2u64, 3, 4, 5, 7, 8, 9, 16, 27, 32, 64, 128, 243, 256, 512, 1024, 2048, 4096] {
        let f = gf(q);
        let image: std::collections::HashSet<u64> = f.elements().map(|z| z.artin_schreier().index()).collect();
        for a in f.elements() {
            let solvable = a.absolute_trace() == 0;
            assert_eq!(image.contains(&a.index()), solvable, "{a} over GF({q})");
            match a.artin_schreier_solve() {
                Some(z) => {
                    assert!(solvable);
                    assert_eq!(z.artin_schreier(), a);
                    // the smallest root in index order
                    assert!(f.elements().take_while(|w| *w != z).all(|w| w.artin_schreier() != a));
                }
                None => assert!(!solvable),
            }
        }
    }
}

#[test]
fn frobenius_fixes_exactly_the_prime_field() {
    for q in [4u64, 8, 9, 16, 25, 27, 32, 49, 64, 81, 125, 243, 256, 729] {
        let f = gf(q);
        for a in f.elements() {
            let b = a.frobenius_power(1);
            assert_eq!(b == a, a.is_prime_field(), "{a} over GF({q})");
            assert_eq!(a.frobenius_power(f.degree() as i64), a);
        }
        for a in f.elements().step_by(7) {
            for b in f.elements().step_by(11) {
                assert_eq!((a * b).frobenius_power(1), a.frobenius_power(1) * b.frobenius_power(1));
                assert_eq!((a + b).frobenius_power(1), a.frobenius_power(1) + b.frobenius_power(1));
            }
        }
    }
}

#[test]
fn gf4_embeds_into_gf16_as_a_root() {
    let (f4, f16) = (gf(4), gf(16));
    let g = f4.generator().embed(f16).unwrap();
    assert!((g * g + g + f16.one()).is_zero());
    let roots: Vec<_> = f16.elements().filter(|x| (*x * *x + *x + f16.one()).is_zero()).collect();
    assert_eq!(roots.len(), 2);
    assert!(roots.contains(&g));
}
