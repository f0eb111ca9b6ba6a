//! Random instance generators and brute-force oracles used by the suites.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::adele_idele::{Idele, LocalElem};
use crate::cyclic_cohomology::{direct_sum, submodule_sequence, CyclicModule};
use crate::error::Result;
use crate::finite_field::{ExtFieldElem, FieldSpec};
use crate::function_field::{place_root, valuation_at, Place, RationalFunction};
use crate::laurent_series::LaurentSeries;
use crate::lattice::{identity, Vector};
use crate::poly::Poly;
use crate::as_pairing::Splitting;

pub fn elem<R: Rng>(field: FieldSpec, rng: &mut R) -> ExtFieldElem {
    field.element(rng.gen_range(0..field.order()))
}

pub fn nonzero_elem<R: Rng>(field: FieldSpec, rng: &mut R) -> ExtFieldElem {
    field.element(rng.gen_range(1..field.order()))
}

/// A polynomial of degree `<= deg`.
pub fn poly<R: Rng>(field: FieldSpec, deg: usize, rng: &mut R) -> Poly {
    Poly::new(field, (0..=deg).map(|_| elem(field, rng)).collect())
}

pub fn monic<R: Rng>(field: FieldSpec, deg: usize, rng: &mut R) -> Poly {
    let mut c: Vec<ExtFieldElem> = (0..deg).map(|_| elem(field, rng)).collect();
    c.push(field.one());
    Poly::new(field, c)
}

/// A nonzero rational function with numerator and denominator degrees `<= deg`.
pub fn rational<R: Rng>(field: FieldSpec, deg: usize, rng: &mut R) -> RationalFunction {
    loop {
        let num = poly(field, rng.gen_range(0..=deg), rng);
        if num.is_zero() {
            continue;
        }
        let den = monic(field, rng.gen_range(0..=deg), rng);
        return RationalFunction::new(num, den).expect("nonzero denominator");
    }
}

/// A random monic irreducible of degree `d`.
pub fn irreducible<R: Rng>(field: FieldSpec, d: usize, rng: &mut R) -> Poly {
    loop {
        let f = monic(field, d, rng);
        if f.is_irreducible() {
            return f;
        }
    }
}

/// `∞` or a finite place of degree `<= max_deg`.
pub fn place<R: Rng>(field: FieldSpec, max_deg: u32, rng: &mut R) -> Place {
    if rng.gen_ratio(1, 5) {
        return Place::Infinity;
    }
    let d = rng.gen_range(1..=max_deg) as usize;
    Place::Finite(irreducible(field, d, rng))
}

/// Largest place degree keeping `F_P` inside the supported fields.
pub fn max_place_degree(field: FieldSpec, wanted: u32) -> u32 {
    (1..=wanted).rev().find(|d| field.extension(*d).is_ok()).unwrap_or(1)
}

/// An exact polynomial series `Σ_{i=v}^{v+len-1} c_i t^i` with `c_v ≠ 0`.
pub fn series<R: Rng>(field: FieldSpec, v: i64, len: usize, rng: &mut R) -> LaurentSeries {
    let mut coeffs = vec![nonzero_elem(field, rng)];
    coeffs.extend((1..len).map(|_| elem(field, rng)));
    LaurentSeries::new(field, v, coeffs, None)
}

/// A local element at `place`: a global function or an exact series over `F_P`.
pub fn local_elem<R: Rng>(field: FieldSpec, place: &Place, rng: &mut R) -> Result<LocalElem> {
    if rng.gen_bool(0.5) {
        Ok(LocalElem::Global(rational(field, 2, rng)))
    } else {
        let fp = place.residue_field(field)?;
        let v = rng.gen_range(-2..=2);
        Ok(LocalElem::Series(series(fp, v, rng.gen_range(1..=3), rng)))
    }
}

/// A principal idele times up to two random corrections at places of degree `<= max_deg`.
pub fn idele<R: Rng>(field: FieldSpec, max_deg: u32, rng: &mut R) -> Result<Idele> {
    let mut a = Idele::principal(rational(field, 2, rng))?;
    let max_deg = max_place_degree(field, max_deg);
    for _ in 0..rng.gen_range(0..=2) {
        let p = place(field, max_deg, rng);
        let c = local_elem(field, &p, rng)?;
        a = a.mul(&Idele::at_place(field, p, c)?)?;
    }
    Ok(a)
}

/// A `G`-module block with `σ^n = 1`: a cyclic shift on `k | n` copies of
/// `Z/d` (or `Z` when `d = 0`) twisted by a unit `u` with `u^{n/k} = 1`.
pub fn block<R: Rng>(n: u32, allow_free: bool, rng: &mut R) -> CyclicModule {
    let divisors: Vec<u32> = (1..=n.min(3)).filter(|k| n % k == 0).collect();
    let k = *divisors.choose(rng).unwrap() as usize;
    let e = n / k as u32;
    let d: i128 = if allow_free && rng.gen_ratio(1, 3) { 0 } else { rng.gen_range(2..=if k == 1 { 30 } else { 6 }) };
    let units: Vec<i128> = if d == 0 {
        if e % 2 == 0 { vec![1, -1] } else { vec![1] }
    } else {
        (1..d).filter(|&u| gcd(u, d) == 1 && pow_mod(u, e as u64, d) == 1 % d).collect()
    };
    let u = *units.choose(rng).unwrap_or(&1);
    let mut sigma = vec![vec![0i128; k]; k];
    for j in 0..k - 1 {
        sigma[j + 1][j] = 1;
    }
    sigma[0][k - 1] = u;
    if d == 0 {
        CyclicModule::new(n, k, vec![], sigma, false).expect("valid free block")
    } else {
        CyclicModule::new(n, 0, vec![d; k], sigma, false).expect("valid torsion block")
    }
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 { a.abs() } else { gcd(b, a % b) }
}

fn pow_mod(mut b: i128, mut e: u64, m: i128) -> i128 {
    let mut r = 1 % m;
    b = b.rem_euclid(m);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

/// A direct sum of random blocks, of order `<= max_order` when finite.
pub fn module<R: Rng>(n: u32, allow_free: bool, max_order: u128, rng: &mut R) -> CyclicModule {
    loop {
        let mut m = block(n, allow_free, rng);
        for _ in 0..rng.gen_range(0..=2) {
            let b = block(n, allow_free, rng);
            let next = direct_sum(&m, &b).expect("same group");
            if next.free_rank() <= 4 && next.order().map_or(true, |o| o <= max_order) {
                m = next;
            }
        }
        if m.order().map_or(true, |o| o <= max_order) && m.free_rank() <= 4 {
            return m;
        }
    }
}

/// A random vector of `m`.
pub fn module_vector<R: Rng>(m: &CyclicModule, rng: &mut R) -> Vector {
    (0..m.rank())
        .map(|i| match m.modulus(i) {
            0 => rng.gen_range(-3..=3),
            d => rng.gen_range(0..d),
        })
        .collect()
}

/// A random finite module, sometimes a submodule or quotient of a direct
/// sum so that the action is not block diagonal.
pub fn finite_module<R: Rng>(n: u32, max_order: u128, rng: &mut R) -> CyclicModule {
    let b = module(n, false, max_order, rng);
    if b.rank() == 0 || rng.gen_ratio(1, 3) {
        return b;
    }
    let g = module_vector(&b, rng);
    let ses = submodule_sequence(&b, &[g]).expect("submodule of a valid module");
    if rng.gen_bool(0.5) { ses.a } else { ses.c }
}

/// `(|H^0|, |H^-1|)` of a finite module by enumerating its elements.
pub fn brute_force_cohomology_orders(m: &CyclicModule) -> Option<(usize, usize)> {
    let order = m.order()?;
    if order > 100_000 {
        return None;
    }
    let moduli: Vec<i128> = (0..m.rank()).map(|i| m.modulus(i)).collect();
    let mut elems: Vec<Vector> = vec![vec![]];
    for &d in &moduli {
        elems = elems
            .into_iter()
            .flat_map(|v| {
                (0..d).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    let act = |v: &Vector| m.act(v).expect("action");
    let add = |a: &Vector, b: &Vector| m.reduce(&a.iter().zip(b).map(|(x, y)| x + y).collect::<Vec<_>>());
    let sub = |a: &Vector, b: &Vector| m.reduce(&a.iter().zip(b).map(|(x, y)| x - y).collect::<Vec<_>>());
    let zero = vec![0i128; m.rank()];
    let norm = |v: &Vector| {
        let mut acc = zero.clone();
        let mut x = v.clone();
        for _ in 0..m.group_order() {
            acc = add(&acc, &x);
            x = act(&x);
        }
        acc
    };
    let mut fixed = 0;
    let mut ker_n = 0;
    let mut img_n = HashSet::new();
    let mut img_aug = HashSet::new();
    for v in &elems {
        let sv = act(v);
        if sv == *v {
            fixed += 1;
        }
        let nv = norm(v);
        if nv == zero {
            ker_n += 1;
        }
        img_n.insert(nv);
        img_aug.insert(sub(&sv, v));
    }
    Some((fixed / img_n.len(), ker_n / img_aug.len()))
}

/// `(#ker N, #{b^q/b})` for `F_{q^n}^×` over `F_q`, by enumeration.
pub fn brute_force_hilbert90(q: u64, n: u32) -> Result<(usize, usize)> {
    let base = FieldSpec::with_order(q)?;
    let top = base.extension(n)?;
    let mut ker = 0;
    let mut img = HashSet::new();
    for a in top.elements().filter(|a| !a.is_zero()) {
        if a.norm_to(base)?.is_one() {
            ker += 1;
        }
        img.insert(a.pow(q) / a);
    }
    Ok((ker, img.len()))
}

/// Splitting of `place` in `K(℘^{-1}x)` from the factorization of
/// `Z^p - Z - x̄` over `F_P`, after clearing poles of order divisible by `p`
/// with global elements `c/f^i` (`deg c < deg f`) or `c T^i`.
pub fn splitting_by_factorization(x: &RationalFunction, place: &Place) -> Result<Splitting> {
    let field = x.field();
    let p = field.p() as i64;
    let m = (-valuation_at(x, place)?).max(0);
    let k = (m / p) as u32;
    let candidates = polar_candidates(field, place, k);
    for z in candidates {
        let y = x - &(&z.pow(p)? - &z);
        if !y.is_zero() && valuation_at(&y, place)? < 0 {
            continue;
        }
        let fp = place.residue_field(field)?;
        let ybar = reduce_at(&y, place, fp)?;
        let has_root = fp.elements().any(|w| w.pow(p as u64) - w == ybar);
        return Ok(if has_root { Splitting::Split } else { Splitting::Inert });
    }
    Ok(Splitting::Ramified)
}

fn polar_candidates(field: FieldSpec, place: &Place, k: u32) -> Vec<RationalFunction> {
    let mut out = vec![RationalFunction::zero(field)];
    for i in 1..=k {
        let pieces: Vec<RationalFunction> = match place {
            Place::Infinity => field
                .elements()
                .map(|c| RationalFunction::from_poly(Poly::monomial(c, i as usize)))
                .collect(),
            Place::Finite(f) => {
                let fi = f.pow(i as u64);
                all_polys(field, f.degree() as usize)
                    .into_iter()
                    .map(|c| RationalFunction::new(c, fi.clone()).expect("nonzero"))
                    .collect()
            }
        };
        out = out.iter().flat_map(|z| pieces.iter().map(move |w| z + w)).collect();
    }
    out
}

/// All polynomials of degree `< len`.
fn all_polys(field: FieldSpec, len: usize) -> Vec<Poly> {
    let q = field.order();
    (0..q.pow(len as u32))
        .map(|mut idx| {
            Poly::new(
                field,
                (0..len)
                    .map(|_| {
                        let c = field.element(idx % q);
                        idx /= q;
                        c
                    })
                    .collect(),
            )
        })
        .collect()
}

/// The residue class of an integral `y` in `F_P`.
fn reduce_at(y: &RationalFunction, place: &Place, fp: FieldSpec) -> Result<ExtFieldElem> {
    if y.is_zero() {
        return Ok(fp.zero());
    }
    match place {
        Place::Infinity => {
            let (n, d) = (y.numerator(), y.denominator());
            if n.degree() < d.degree() {
                Ok(fp.zero())
            } else {
                (n.lead() / d.lead()).embed(fp)
            }
        }
        Place::Finite(f) => {
            let theta = place_root(f)?;
            Ok(y.eval(theta)?.expect("integral at the place"))
        }
    }
}

/// A random change of basis of `(Z/d)^k`: conjugates `σ` by a random
/// invertible matrix mod `d`.
pub fn conjugate_module<R: Rng>(m: &CyclicModule, rng: &mut R) -> Option<CyclicModule> {
    if m.free_rank() != 0 || m.rank() == 0 {
        return None;
    }
    let d = m.modulus(0);
    if (0..m.rank()).any(|i| m.modulus(i) != d) {
        return None;
    }
    let k = m.rank();
    loop {
        let mut pm = identity(k);
        for i in 0..k {
            for j in 0..k {
                pm[i][j] = rng.gen_range(0..d);
            }
        }
        if let Some(pinv) = inverse_mod(&pm, d) {
            let s = m.sigma();
            let mut prod = vec![vec![0i128; k]; k];
            for i in 0..k {
                for j in 0..k {
                    let mut acc = 0;
                    for a in 0..k {
                        for b in 0..k {
                            acc += pm[i][a] * s[a][b] * pinv[b][j];
                        }
                    }
                    prod[i][j] = acc.rem_euclid(d);
                }
            }
            return CyclicModule::new(m.group_order(), 0, vec![d; k], prod, false).ok();
        }
    }
}

fn inverse_mod(a: &[Vec<i128>], d: i128) -> Option<Vec<Vec<i128>>> {
    let k = a.len();
    let mut m: Vec<Vec<i128>> = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..k).map(|j| (i == j) as i128));
            row
        })
        .collect();
    for c in 0..k {
        let piv = (c..k).find(|&r| gcd(m[r][c], d) == 1)?;
        m.swap(c, piv);
        let inv = inv_mod(m[c][c], d)?;
        for x in m[c].iter_mut() {
            *x = (*x * inv).rem_euclid(d);
        }
        for r in 0..k {
            if r != c && m[r][c] != 0 {
                let f = m[r][c];
                for j in 0..2 * k {
                    m[r][j] = (m[r][j] - f * m[c][j]).rem_euclid(d);
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[k..].to_vec()).collect())
}

fn inv_mod(a: i128, d: i128) -> Option<i128> {
    let (g, x, _) = crate::lattice::ext_gcd(a.rem_euclid(d), d);
    (g == 1).then(|| x.rem_euclid(d))
}
