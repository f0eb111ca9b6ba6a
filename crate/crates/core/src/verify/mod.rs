//! Named batteries of exact checks over seeded random and exhaustive
//! instances. Each suite returns a [`SuiteReport`]; the CLI `verify`
//! subcommand and the acceptance tests both run them.

pub mod gen;

use std::collections::HashSet;
use std::time::{Duration, Instant};

use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::adele_idele::{
    gamma_generator, idele_degree, lambda_functional, norm_from_constant_ext, Adele, Idele, LocalElem,
    DEFAULT_LOCAL_PRECISION,
};
use crate::as_pairing::{
    classify_local, integral_truncations, prime_idele_values, splitting_table, verify_local_kernel, wp_preimage,
    Splitting,
};
use crate::cyclic_cohomology::{
    check_multiplicativity, h0, herbrand_quotient, hminus1, semilocal_compare, submodule_sequence,
    unit_group_module, CyclicModule,
};
use crate::error::Result;
use crate::finite_field::FieldSpec;
use crate::function_field::{divisor_of, places_up_to_degree, Place, RationalFunction};
use crate::laurent_series::{log_derivative_order, reduce_mod_wp, LaurentSeries, WpStatus};
use crate::poly::Poly;
use crate::reciprocity::{
    as_symbol, global_symbol_constant, local_global_diagram_check, neukirch_map_constant,
    neukirch_map_with_prime, norm_functoriality_check, v_k_idele, AbelianExtension, ConstantExtension,
};

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 20_240_601;

/// Counterexamples kept per suite.
const MAX_COUNTEREXAMPLES: usize = 20;

/// Suite names in run order.
pub const SUITES: [&str; 11] = [
    "residue",
    "product-formula",
    "local-kernel",
    "herbrand",
    "hilbert90",
    "reciprocity",
    "neukirch",
    "as-duality",
    "splitting",
    "diagram",
    "log-derivative",
];

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: String,
    pub passed: usize,
    pub failed: usize,
    pub counterexamples: Vec<String>,
    pub elapsed: Duration,
}

impl SuiteReport {
    fn new(name: &str) -> Self {
        SuiteReport { name: name.to_string(), ..Default::default() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if ok {
            self.passed += 1;
        } else {
            self.fail(what());
        }
    }

    fn fail(&mut self, what: String) {
        self.failed += 1;
        if self.counterexamples.len() < MAX_COUNTEREXAMPLES {
            self.counterexamples.push(what);
        }
    }

    /// Records an `Err` as a failure instead of aborting the suite.
    fn guard<T>(&mut self, r: Result<T>, context: impl FnOnce() -> String) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.fail(format!("{}: {e}", context()));
                None
            }
        }
    }

    pub fn ok(&self) -> bool {
        self.failed == 0 && self.passed > 0
    }

    pub fn to_json(&self) -> Value {
        json!({
            "passed": self.passed,
            "failed": self.failed,
            "counterexamples": self.counterexamples,
        })
    }

    /// Combined report for several suites.
    pub fn merge(name: &str, reports: &[SuiteReport]) -> SuiteReport {
        let mut out = SuiteReport::new(name);
        for r in reports {
            out.passed += r.passed;
            out.failed += r.failed;
            out.elapsed += r.elapsed;
            for c in &r.counterexamples {
                if out.counterexamples.len() < MAX_COUNTEREXAMPLES {
                    out.counterexamples.push(format!("{}: {c}", r.name));
                }
            }
        }
        out
    }
}

/// Runs one named suite.
pub fn run_suite(name: &str, seed: u64) -> Option<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let start = Instant::now();
    let mut report = match name {
        "residue" => residue_suite(&mut rng),
        "product-formula" => product_formula_suite(&mut rng),
        "local-kernel" => local_kernel_suite(),
        "herbrand" => herbrand_suite(&mut rng),
        "hilbert90" => hilbert90_suite(),
        "reciprocity" => reciprocity_suite(&mut rng),
        "neukirch" => neukirch_suite(),
        "as-duality" => as_duality_suite(&mut rng),
        "splitting" => splitting_suite(),
        "diagram" => diagram_suite(&mut rng),
        "log-derivative" => log_derivative_suite(&mut rng),
        _ => return None,
    };
    report.elapsed = start.elapsed();
    Some(report)
}

/// Runs every suite, or the one named; `"all"` selects every suite.
pub fn run(name: &str, seed: u64) -> Option<Vec<SuiteReport>> {
    if name == "all" {
        return Some(SUITES.iter().map(|s| run_suite(s, seed).expect("known suite")).collect());
    }
    run_suite(name, seed).map(|r| vec![r])
}

fn field(q: u64) -> FieldSpec {
    FieldSpec::with_order(q).expect("supported field")
}

/// `Σ_P Tr res_P(x dT) = 0` for random `x ∈ F_q(T)`.
pub fn residue_suite(rng: &mut ChaCha8Rng) -> SuiteReport {
    let mut r = SuiteReport::new("residue");
    let start = Instant::now();
    for i in 0..200 {
        let f = field([2, 3, 4][i % 3]);
        let x = gen::rational(f, 6, rng);
        if let Some((lambda, fval)) = r.guard(lambda_functional(&Adele::principal(x.clone())), || format!("λ({x})")) {
            r.check(lambda.is_zero() && fval.is_zero(), || format!("λ({x}) = {lambda} over {f}"));
        }
    }
    let t = start.elapsed();
    r.check(t < Duration::from_secs(10), || format!("took {t:?}"));
    r
}

/// `Deg (x) = 0`.
pub fn product_formula_suite(rng: &mut ChaCha8Rng) -> SuiteReport {
    let mut r = SuiteReport::new("product-formula");
    for i in 0..500 {
        let f = field([2, 3, 4][i % 3]);
        let x = gen::rational(f, 6, rng);
        if let Some(d) = r.guard(divisor_of(&x), || format!("divisor of {x}")) {
            r.check(d.degree() == 0, || format!("Deg({x}) = {}", d.degree()));
        }
    }
    r
}

/// Exhaustive local kernel criterion over `F_2((t))` and `F_4((t))`.
pub fn local_kernel_suite() -> SuiteReport {
    let mut r = SuiteReport::new("local-kernel");
    for q in [2, 4] {
        let f = field(q);
        for n in 1..=4 {
            if let Some(rep) = r.guard(verify_local_kernel(f, n), || format!("GF({q}) precision {n}")) {
                r.passed += rep.checked - rep.counterexamples.len();
                for (x, y, psi) in rep.counterexamples {
                    r.fail(format!("GF({q}): psi({x}, {y}) = {psi}"));
                }
            }
            // membership in ℘K_P against a brute-force solve of the constant term
            for x in integral_truncations(f, n) {
                let a0 = x.coeff(0).unwrap();
                let brute = f.elements().any(|z| z.pow(f.p() as u64) - z == a0);
                if let Some(red) = r.guard(reduce_mod_wp(&x), || format!("reduce {x}")) {
                    r.check((red.status == WpStatus::InWp) == brute, || format!("℘-membership of {x}"));
                }
            }
        }
    }
    r
}

/// Herbrand quotients, multiplicativity and the semilocal comparison.
pub fn herbrand_suite(rng: &mut ChaCha8Rng) -> SuiteReport {
    let mut r = SuiteReport::new("herbrand");
    for _ in 0..200 {
        let n = rng.gen_range(1..=6);
        let m = gen::finite_module(n, 1000, rng);
        let desc = || m.to_json().to_string();
        if let Some(h) = r.guard(herbrand_quotient(&m), desc) {
            r.check(h == Ratio::from_integer(1), || format!("h = {h} for {}", m.to_json()));
        }
        if let Some((b0, b1)) = gen::brute_force_cohomology_orders(&m) {
            let orders = h0(&m).and_then(|a| Ok((a, hminus1(&m)?)));
            if let Some((a0, a1)) = r.guard(orders, || m.to_json().to_string()) {
                r.check(a0.order() == Some(b0 as u64) && a1.order() == Some(b1 as u64), || {
                    format!("orders ({a0}, {a1}) vs enumeration ({b0}, {b1}) for {}", m.to_json())
                });
            }
        }
    }
    for n in 1..=8 {
        let z = CyclicModule::trivial(n, 1, vec![]).expect("trivial module");
        if let Some(h) = r.guard(herbrand_quotient(&z), || format!("h(Z) for n = {n}")) {
            r.check(h == Ratio::from_integer(n as u64), || format!("h(Z) = {h} for n = {n}"));
        }
    }
    for _ in 0..50 {
        let n = rng.gen_range(1..=6);
        let b = gen::module(n, true, 1000, rng);
        let gens: Vec<_> = (0..rng.gen_range(1..=2)).map(|_| gen::module_vector(&b, rng)).collect();
        let ok = submodule_sequence(&b, &gens).and_then(|s| check_multiplicativity(&s.a, &s.b, &s.c, &s.f, &s.g));
        if let Some(ok) = r.guard(ok, || format!("sequence in {}", b.to_json())) {
            r.check(ok, || format!("h not multiplicative for {} / {gens:?}", b.to_json()));
        }
    }
    for _ in 0..50 {
        let n: u32 = rng.gen_range(1..=6);
        let divisors: Vec<u32> = (1..=n).filter(|s| n % s == 0).collect();
        let s = *divisors.choose(rng).unwrap();
        let a1 = gen::module(n / s, rng.gen_bool(0.3), 30, rng);
        if let Some(rep) = r.guard(semilocal_compare(n, s, &a1), || format!("n={n} s={s} {}", a1.to_json())) {
            let ok = rep.h0_iso
                && rep.hminus1_iso
                && rep.h0.order() == rep.h0_local.order()
                && rep.hminus1.order() == rep.hminus1_local.order();
            r.check(ok, || format!("semilocal n={n} s={s} A1={}: {rep:?}", a1.to_json()));
        }
    }
    r
}

/// `H^-1(G(F_{q^n}/F_q), F_{q^n}^×) = 0`.
pub fn hilbert90_suite() -> SuiteReport {
    let mut r = SuiteReport::new("hilbert90");
    for q in [2u64, 3, 4, 5] {
        for n in 1..=4 {
            if let Some(h) = r.guard(unit_group_module(q, n).and_then(|m| hminus1(&m)), || format!("q={q} n={n}")) {
                r.check(h.is_trivial(), || format!("H^-1 = {h} for q={q} n={n}"));
            }
            if let Some((ker, img)) = r.guard(gen::brute_force_hilbert90(q, n), || format!("q={q} n={n}")) {
                r.check(ker == img, || format!("#ker N = {ker}, #I_G = {img} for q={q} n={n}"));
            }
        }
    }
    r
}

/// Random upstairs ideles for `F_{q^n}(T)`, with corrections at `∞` and at
/// degree-1 places.
fn upstairs_idele(up: FieldSpec, rng: &mut ChaCha8Rng) -> Result<Idele> {
    let mut a = Idele::principal(gen::rational(up, 2, rng))?;
    for _ in 0..rng.gen_range(0..=2) {
        let p = if rng.gen_ratio(1, 4) { Place::Infinity } else { Place::rational(gen::elem(up, rng)) };
        let c = gen::local_elem(up, &p, rng)?;
        a = a.mul(&Idele::at_place(up, p, c)?)?;
    }
    Ok(a)
}

/// Reciprocity for constant-field extensions.
pub fn reciprocity_suite(rng: &mut ChaCha8Rng) -> SuiteReport {
    let mut r = SuiteReport::new("reciprocity");
    for q in [2u64, 3, 4] {
        let f = field(q);
        let exts: Vec<ConstantExtension> = (1..=6).map(|n| ConstantExtension::new(f, n).expect("supported")).collect();
        for _ in 0..100 {
            let x = Idele::principal(gen::rational(f, 4, rng)).expect("nonzero");
            for e in &exts {
                if let Some(s) = r.guard(global_symbol_constant(&x, e), || format!("[{x}, n={}]", e.degree)) {
                    r.check(s.is_identity(), || format!("[{x}, F_{q}^{}(T)] = {s}", e.degree));
                }
            }
        }
        for e in &exts {
            let gamma = gamma_generator(f);
            let n = e.degree as i64;
            if let Some(s) = r.guard(global_symbol_constant(&gamma, e), || format!("symbol of γ, n = {n}")) {
                r.check(s.exponent == 1 % n, || format!("[γ, n={n}] = {s}"));
            }
            // γ^n is the norm of the prime at (T) upstairs, so the index is exactly n
            let prime_up = Idele::prime_at(e.top(), Place::Finite(Poly::x(e.top())));
            let norm = norm_from_constant_ext(&prime_up, f, DEFAULT_LOCAL_PRECISION);
            if let Some(norm) = r.guard(norm, || format!("norm of the prime at (T), n = {n}")) {
                r.check(Some(&norm) == gamma.pow(n).ok().as_ref(), || format!("N(π) = {norm} for n = {n}"));
            }
        }
    }
    for i in 0..100 {
        let q = [2u64, 3, 4][i % 3];
        let f = field(q);
        let n = rng.gen_range(1..=6);
        let e = ConstantExtension::new(f, n).expect("supported");
        let beta = match r.guard(upstairs_idele(e.top(), rng), || format!("idele over GF({q}^{n})")) {
            Some(b) => b,
            None => continue,
        };
        let norm = norm_from_constant_ext(&beta, f, DEFAULT_LOCAL_PRECISION);
        if let Some(s) = r.guard(norm.and_then(|a| global_symbol_constant(&a, &e)), || format!("N({beta})")) {
            r.check(s.is_identity(), || format!("[N({beta}), n={n}] = {s}"));
        }
    }
    for i in 0..500 {
        let f = field([2, 3, 4][i % 3]);
        if let Some(a) = r.guard(gen::idele(f, 3, rng), || "random idele".into()) {
            let both = v_k_idele(&a).and_then(|v| Ok((v, idele_degree(&a)?)));
            if let Some((v, d)) = r.guard(both, || format!("v_K({a})")) {
                r.check(v == d, || format!("v_K({a}) = {v} but deg = {d}"));
            }
        }
    }
    r
}

/// `[r(φ^j), L/K] = φ^j` for two choices of the prime of `Σ`.
pub fn neukirch_suite() -> SuiteReport {
    let mut r = SuiteReport::new("neukirch");
    for q in [2u64, 3, 4] {
        let f = field(q);
        for n in 1..=6 {
            let e = ConstantExtension::new(f, n).expect("supported");
            for j in 1..=n {
                let ctx = || format!("q={q} n={n} j={j}");
                let sigma = f.extension(j).expect("supported");
                let other = Place::rational(sigma.primitive_element());
                let first = neukirch_map_constant(j, &e).and_then(|a| global_symbol_constant(&a, &e));
                let second = neukirch_map_with_prime(j, &e, &other).and_then(|a| global_symbol_constant(&a, &e));
                if let (Some(s1), Some(s2)) = (r.guard(first, ctx), r.guard(second, ctx)) {
                    r.check(s1.exponent == j as i64 % n as i64, || format!("{}: symbol {s1}", ctx()));
                    r.check(s1 == s2, || format!("{}: prime choices give {s1} and {s2}", ctx()));
                }
            }
        }
    }
    r
}

/// A random `x ∈ F_q(T) \ ℘K` of height `<= 3`.
fn certified_x(q: u64, rng: &mut ChaCha8Rng) -> RationalFunction {
    let f = field(q);
    loop {
        let x = gen::rational(f, 3, rng);
        if matches!(wp_preimage(&x), Ok(None)) {
            return x;
        }
    }
}

/// Finite-level duality for `K(℘^{-1}x)`.
pub fn as_duality_suite(rng: &mut ChaCha8Rng) -> SuiteReport {
    let mut r = SuiteReport::new("as-duality");
    for i in 0..20 {
        let q = [2u64, 3][i % 2];
        let f = field(q);
        let p = f.p() as i64;
        let x = certified_x(q, rng);
        for _ in 0..3 {
            let y = Idele::principal(gen::rational(f, 3, rng)).expect("nonzero");
            if let Some(v) = r.guard(as_symbol(&x, &y), || format!("ψ({x}, {y})")) {
                r.check(v.is_zero(), || format!("ψ({x}, principal {y}) = {v}"));
            }
        }
        for _ in 0..2 {
            let Some(a) = r.guard(gen::idele(f, 2, rng), || "random idele".into()) else { continue };
            if let Some(v) = r.guard(a.pow(p).and_then(|ap| as_symbol(&x, &ap)), || format!("ψ({x}, ({a})^p)")) {
                r.check(v.is_zero(), || format!("ψ({x}, ({a})^p) = {v}"));
            }
        }
        if let Some(table) = r.guard(splitting_table(&x, 2), || format!("splitting of {x}")) {
            for row in table.iter().filter(|row| row.kind == Splitting::Split).take(3) {
                let fp = row.place.residue_field(f).expect("supported");
                let mut locals = vec![LocalElem::Series(LaurentSeries::t(fp))];
                for _ in 0..2 {
                    locals.push(LocalElem::Series(gen::series(fp, rng.gen_range(-2..=2), 3, rng)));
                }
                for b in locals {
                    let a = Idele::at_place(f, row.place.clone(), b.clone());
                    if let Some(v) = r.guard(a.and_then(|a| as_symbol(&x, &a)), || format!("ψ({x}, [{b}])")) {
                        r.check(v.is_zero(), || format!("ψ({x}, [{b}]_{}) = {v} at a split place", row.place));
                    }
                }
            }
        }
        if let Some(vals) = r.guard(prime_idele_values(&x, 3), || format!("values of ψ({x}, ·)")) {
            r.check(vals.len() == p as usize, || {
                format!("ψ({x}, prime ideles) attains only {:?}", vals.iter().map(|v| v.0.value()).collect::<Vec<_>>())
            });
        }
    }
    r
}

/// Every `x` of height `<= 3` over `F_q`, `q ∈ {2, 3}`, outside `℘K`.
pub fn small_height_functions(q: u64) -> Vec<RationalFunction> {
    let f = field(q);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let nums: Vec<Poly> = (0..q.pow(4))
        .map(|mut idx| {
            Poly::new(
                f,
                (0..4)
                    .map(|_| {
                        let c = f.element(idx % q);
                        idx /= q;
                        c
                    })
                    .collect(),
            )
        })
        .filter(|p| !p.is_zero())
        .collect();
    for d in 0..=3 {
        for den in Poly::monics_of_degree(f, d) {
            for num in &nums {
                let x = RationalFunction::new(num.clone(), den.clone()).expect("monic denominator");
                if seen.insert(x.to_string()) && matches!(wp_preimage(&x), Ok(None)) {
                    out.push(x);
                }
            }
        }
    }
    out
}

/// The splitting classifier against factorization of `Z^p - Z - x`.
pub fn splitting_suite() -> SuiteReport {
    let mut r = SuiteReport::new("splitting");
    for q in [2u64, 3] {
        let places = places_up_to_degree(field(q), 3);
        for x in small_height_functions(q) {
            for place in &places {
                let ours = classify_local(&x, place).map(|c| c.0);
                let oracle = gen::splitting_by_factorization(&x, place);
                let ctx = || format!("{x} at {place}");
                if let (Some(a), Some(b)) = (r.guard(ours, ctx), r.guard(oracle, ctx)) {
                    r.check(a == b, || format!("{x} at {place} over GF({q}): {a} vs oracle {b}"));
                }
            }
        }
    }
    r
}

/// Local-global compatibility and norm functoriality.
pub fn diagram_suite(rng: &mut ChaCha8Rng) -> SuiteReport {
    let mut r = SuiteReport::new("diagram");
    for i in 0..100 {
        let (ext, base) = if i % 2 == 0 {
            let q = [2u64, 3, 4][rng.gen_range(0..3)];
            let f = field(q);
            let e = ConstantExtension::new(f, rng.gen_range(1..=6)).expect("supported");
            (AbelianExtension::Constant(e), f)
        } else {
            let q = [2u64, 3][rng.gen_range(0..2)];
            (AbelianExtension::ArtinSchreier(certified_x(q, rng)), field(q))
        };
        let place = gen::place(base, gen::max_place_degree(base, 3), rng);
        let fp = place.residue_field(base).expect("supported");
        let a = if rng.gen_ratio(1, 4) {
            LaurentSeries::new(fp, 0, vec![gen::nonzero_elem(fp, rng)], None)
        } else {
            gen::series(fp, rng.gen_range(-3..=3), rng.gen_range(1..=3), rng)
        };
        if let Some(ok) = r.guard(local_global_diagram_check(&a, &place, &ext), || format!("{a} at {place}, {ext:?}")) {
            r.check(ok, || format!("diagram fails for {a} at {place}, {ext:?}"));
        }
    }
    for _ in 0..50 {
        let q = [2u64, 3][rng.gen_range(0..2)];
        let m = rng.gen_range(2..=3);
        let up = field(q).extension(m).expect("supported");
        let Some(alpha) = r.guard(upstairs_idele(up, rng), || format!("idele over GF({q}^{m})")) else { continue };
        let n = rng.gen_range(1..=4);
        if let Some(ok) = r.guard(norm_functoriality_check(&alpha, field(q), n), || format!("{alpha}, n = {n}")) {
            r.check(ok, || format!("functoriality fails for {alpha} over GF({q}^{m}), n = {n}"));
        }
    }
    r
}

/// `n` with `D^n(y) = 0` but `D^{n-1}(y) ≠ 0`, by direct differentiation.
fn derivative_order(y: &LaurentSeries) -> u32 {
    let mut d = y.clone();
    let mut n = 0;
    while !d.is_zero_to_precision() {
        d = d.derivative();
        n += 1;
    }
    n
}

/// The logarithmic-derivative criterion and `D^p = 0`.
pub fn log_derivative_suite(rng: &mut ChaCha8Rng) -> SuiteReport {
    let mut r = SuiteReport::new("log-derivative");
    let mut ys = Vec::new();
    for q in [2u64, 3, 5] {
        let f = field(q);
        for k in -6..=6 {
            ys.push(LaurentSeries::monomial(gen::nonzero_elem(f, rng), k));
        }
    }
    for i in 0..30 {
        let f = field([2, 3, 4, 5, 7][i % 5]);
        let y = gen::series(f, rng.gen_range(0..=2), rng.gen_range(2..=5), rng);
        ys.push(y);
    }
    for y in ys {
        let expected = derivative_order(&y);
        let truncated = if y.terms().count() > 1 { y.truncate(40) } else { y.clone() };
        let got = truncated.log_derivative().and_then(|x| log_derivative_order(&x));
        if let Some(got) = r.guard(got, || format!("log-derivative order of D({y})/{y}")) {
            r.check(got == Some(expected), || format!("order {got:?} for D({y})/{y}, expected {expected}"));
        }
    }
    for q in [2u64, 3, 5, 7] {
        let f = field(q);
        let got = log_derivative_order(&LaurentSeries::one(f));
        if let Some(got) = r.guard(got, || format!("D + 1 over GF({q})")) {
            r.check(got.is_none(), || format!("D + 1 over GF({q}) gave {got:?}"));
        }
    }
    for i in 0..100 {
        let f = field([2, 3, 4, 5, 7][i % 5]);
        let p = f.p() as usize;
        let len = rng.gen_range(1..=12);
        let mut s = gen::series(f, rng.gen_range(-5..=5), len, rng);
        if rng.gen_bool(0.5) {
            s = s.truncate(s.valuation().unwrap() + len as i64 + rng.gen_range(0..3));
        }
        let mut d = s.clone();
        for _ in 0..p {
            d = d.derivative();
        }
        r.check(d.is_zero_to_precision(), || format!("D^{p}({s}) = {d}"));
    }
    r
}
