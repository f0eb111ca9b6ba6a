//! Lazily built tables of defining polynomials and tower embeddings.
//!
//! The defining polynomial of `GF(p^n)` is the first monic irreducible
//! polynomial of degree `n` in index order (constant coefficient least
//! significant). The embedding `GF(p^m) -> GF(p^n)` sends `g_m` to a root of
//! its defining polynomial; for `n/m` prime the root is the least one (by
//! index) that agrees with every previously fixed maximal subfield embedding
//! on their intersection, and all other embeddings factor through a maximal
//! subfield. This makes `embed(embed(a, M), T) == embed(a, T)` hold for every
//! chain `m | k | n`.

use std::sync::OnceLock;

use super::{inv_mod_p, ExtFieldElem, FieldSpec, MAX_DEGREE};
use crate::poly::Poly;

const ND: usize = MAX_DEGREE as usize + 1;

static MODULI: [[OnceLock<Vec<u8>>; ND]; 14] = [const { [const { OnceLock::new() }; ND] }; 14];

#[allow(clippy::type_complexity)]
static EMBEDDINGS: [[[OnceLock<Embedding>; ND]; ND]; 14] =
    [const { [const { [const { OnceLock::new() }; ND] }; ND] }; 14];

pub(super) fn modulus(p: u8, n: u8) -> &'static [u8] {
    MODULI[p as usize][n as usize].get_or_init(|| find_modulus(p as u32, n as usize))
}

/// Coefficients `c_0..c_n` of the defining polynomial of `GF(p^n)`.
pub fn defining_polynomial(spec: FieldSpec) -> Vec<u8> {
    spec.modulus().to_vec()
}

fn find_modulus(p: u32, n: usize) -> Vec<u8> {
    if n == 1 {
        return vec![0, 1];
    }
    let total = (p as u64).pow(n as u32);
    for idx in 0..total {
        let mut f = Vec::with_capacity(n + 1);
        let mut r = idx;
        for _ in 0..n {
            f.push((r % p as u64) as u32);
            r /= p as u64;
        }
        f.push(1);
        if f[0] != 0 && fp_is_irreducible(&f, p) {
            return f.into_iter().map(|x| x as u8).collect();
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

// ---- dense F_p polynomial helpers, low degree first ----

fn trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn fp_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    trim(&mut r);
    let dm = m.len() - 1;
    let inv_lead = inv_mod_p(m[dm], p);
    while r.len() > dm {
        let k = r.len() - 1;
        let c = r[k] * inv_lead % p;
        for i in 0..=dm {
            r[k - dm + i] = (r[k - dm + i] + (p - c) * m[i] % p) % p;
        }
        trim(&mut r);
    }
    r
}

fn fp_mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    fp_rem(&prod, m, p)
}

fn fp_powmod(a: &[u32], mut e: u64, m: &[u32], p: u32) -> Vec<u32> {
    let mut base = fp_rem(a, m, p);
    let mut acc = vec![1u32];
    while e > 0 {
        if e & 1 == 1 {
            acc = fp_mulmod(&acc, &base, m, p);
        }
        base = fp_mulmod(&base, &base, m, p);
        e >>= 1;
    }
    acc
}

fn fp_gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = fp_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn fp_is_irreducible(f: &[u32], p: u32) -> bool {
    let n = f.len() - 1;
    let x = vec![0u32, 1];
    // powers[i] = x^(p^i) mod f
    let mut powers = vec![fp_rem(&x, f, p)];
    for i in 1..=n {
        let next = fp_powmod(&powers[i - 1], p as u64, f, p);
        powers.push(next);
    }
    let x_mod = fp_rem(&x, f, p);
    if powers[n] != x_mod {
        return false;
    }
    for r in super::prime_factors(n as u64) {
        let k = n / r as usize;
        let mut h = powers[k].clone();
        h.resize(h.len().max(2), 0);
        h[1] = (h[1] + p - 1) % p;
        trim(&mut h);
        if fp_gcd(&h, f, p).len() != 1 {
            return false;
        }
    }
    true
}

// ---- embeddings ----

pub(super) struct Embedding {
    /// images of g_m^j, j < m, as coefficient vectors in GF(p^n)
    columns: Vec<ExtFieldElem>,
    /// rows of a nonsingular m x m minor and its inverse
    pivot_rows: Vec<usize>,
    minor_inv: Vec<Vec<u32>>,
}

impl Embedding {
    pub(super) fn apply(&self, a: &ExtFieldElem, target: FieldSpec) -> ExtFieldElem {
        let mut acc = target.zero();
        for (j, &c) in a.coeffs().iter().enumerate() {
            if c != 0 {
                acc += target.from_int(c as i64) * self.columns[j];
            }
        }
        acc
    }

    pub(super) fn preimage(&self, b: &ExtFieldElem, sub: FieldSpec) -> Option<ExtFieldElem> {
        let p = sub.p() as u32;
        let m = sub.degree() as usize;
        let rhs: Vec<u32> = self.pivot_rows.iter().map(|&r| b.coeffs()[r] as u32).collect();
        let mut c = vec![0i64; m];
        for i in 0..m {
            let mut s = 0u32;
            for k in 0..m {
                s = (s + self.minor_inv[i][k] * rhs[k]) % p;
            }
            c[i] = s as i64;
        }
        let a = sub.from_coeffs(&c).ok()?;
        (self.apply(&a, b.spec()) == *b).then_some(a)
    }
}

pub(super) fn embedding(p: u8, m: u8, n: u8) -> &'static Embedding {
    EMBEDDINGS[p as usize][m as usize][n as usize].get_or_init(|| build_embedding(p, m, n))
}

fn maximal_divisors(n: u8) -> Vec<u8> {
    super::prime_factors(n as u64)
        .into_iter()
        .map(|r| n / r as u8)
        .rev()
        .collect()
}

fn generator_image(p: u8, m: u8, n: u8) -> ExtFieldElem {
    let target = FieldSpec { p, n };
    let source = FieldSpec { p, n: m };
    if m == n {
        return target.generator();
    }
    if m == 1 {
        return target.zero();
    }
    let maxdivs = maximal_divisors(n);
    if maxdivs.contains(&m) {
        return choose_root(p, m, n, &maxdivs);
    }
    let k = *maxdivs
        .iter()
        .find(|&&k| k % m == 0)
        .expect("every proper divisor lies below a maximal one");
    let inner = source.generator().embed(FieldSpec { p, n: k }).unwrap();
    inner.embed(target).unwrap()
}

fn choose_root(p: u8, m: u8, n: u8, maxdivs: &[u8]) -> ExtFieldElem {
    let target = FieldSpec { p, n };
    let source = FieldSpec { p, n: m };
    let f = Poly::new(
        target,
        source.modulus().iter().map(|&c| target.from_int(c as i64)).collect(),
    );
    let roots = f.roots();
    assert_eq!(roots.len(), m as usize, "defining polynomial must split");
    // maximal divisors smaller than m are fixed first
    let constraints: Vec<(ExtFieldElem, ExtFieldElem)> = maxdivs
        .iter()
        .filter(|&&k| k < m)
        .filter_map(|&k| {
            let g = gcd(k, m);
            if g == 1 {
                return None;
            }
            let sub = FieldSpec { p, n: g };
            let via_k = sub
                .generator()
                .embed(FieldSpec { p, n: k })
                .unwrap()
                .embed(target)
                .unwrap();
            let in_m = sub.generator().embed(source).unwrap();
            Some((in_m, via_k))
        })
        .collect();
    roots
        .into_iter()
        .find(|r| {
            constraints
                .iter()
                .all(|(in_m, via_k)| evaluate_at(in_m, *r) == *via_k)
        })
        .expect("compatible root exists")
}

/// Evaluates the power-basis expansion of `a` at `x`.
fn evaluate_at(a: &ExtFieldElem, x: ExtFieldElem) -> ExtFieldElem {
    let t = x.spec();
    let mut acc = t.zero();
    for &c in a.coeffs().iter().rev() {
        acc = acc * x + t.from_int(c as i64);
    }
    acc
}

fn gcd(a: u8, b: u8) -> u8 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn build_embedding(p: u8, m: u8, n: u8) -> Embedding {
    let target = FieldSpec { p, n };
    let img = generator_image(p, m, n);
    let mut columns = Vec::with_capacity(m as usize);
    let mut pw = target.one();
    for _ in 0..m {
        columns.push(pw);
        pw *= img;
    }
    let (pivot_rows, minor_inv) = invert_minor(&columns, p as u32);
    Embedding { columns, pivot_rows, minor_inv }
}

/// Finds rows forming a nonsingular minor of the column matrix and inverts it.
fn invert_minor(columns: &[ExtFieldElem], p: u32) -> (Vec<usize>, Vec<Vec<u32>>) {
    let m = columns.len();
    let n = columns[0].spec().degree() as usize;
    // rows of the n x m matrix
    let rows: Vec<Vec<u32>> = (0..n)
        .map(|i| columns.iter().map(|c| c.coeffs()[i] as u32).collect())
        .collect();
    // greedily choose independent rows
    let mut chosen: Vec<usize> = Vec::new();
    let mut basis: Vec<Vec<u32>> = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        let mut v = row.clone();
        for b in &basis {
            let lead = b.iter().position(|&x| x != 0).unwrap();
            if v[lead] != 0 {
                let f = v[lead];
                for k in 0..m {
                    v[k] = (v[k] + (p - f) * b[k]) % p;
                }
            }
        }
        if let Some(lead) = v.iter().position(|&x| x != 0) {
            let inv = inv_mod_p(v[lead], p);
            for x in v.iter_mut() {
                *x = *x * inv % p;
            }
            for b in basis.iter_mut() {
                if b[lead] != 0 {
                    let f = b[lead];
                    for k in 0..m {
                        b[k] = (b[k] + (p - f) * v[k]) % p;
                    }
                }
            }
            basis.push(v);
            chosen.push(i);
            if chosen.len() == m {
                break;
            }
        }
    }
    assert_eq!(chosen.len(), m, "embedding matrix has full column rank");
    // invert the chosen minor by Gauss-Jordan
    let mut a: Vec<Vec<u32>> = chosen
        .iter()
        .enumerate()
        .map(|(i, &r)| {
            let mut row = rows[r].clone();
            row.extend((0..m).map(|k| u32::from(k == i)));
            row
        })
        .collect();
    for c in 0..m {
        let piv = (c..m).find(|&i| a[i][c] != 0).expect("nonsingular");
        a.swap(c, piv);
        let inv = inv_mod_p(a[c][c], p);
        for x in a[c].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..m {
            if i != c && a[i][c] != 0 {
                let f = a[i][c];
                for k in 0..2 * m {
                    a[i][k] = (a[i][k] + (p - f) * a[c][k]) % p;
                }
            }
        }
    }
    let inv = a.into_iter().map(|row| row[m..].to_vec()).collect();
    (chosen, inv)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tower_embeddings_commute() {
        for (p, n) in [(2u8, 12u8), (3, 6), (2, 6), (5, 4), (3, 12)] {
            let top = FieldSpec { p, n };
            for m in 1..=n {
                if n % m != 0 {
                    continue;
                }
                for k in m..=n {
                    if k % m != 0 || n % k != 0 {
                        continue;
                    }
                    let a = FieldSpec { p, n: m }.generator() + FieldSpec { p, n: m }.one();
                    let two_step = a.embed(FieldSpec { p, n: k }).unwrap().embed(top).unwrap();
                    assert_eq!(two_step, a.embed(top).unwrap(), "p={p} {m}|{k}|{n}");
                }
            }
        }
    }

    #[test]
    fn embeddings_are_ring_homomorphisms() {
        let small = FieldSpec { p: 3, n: 2 };
        let big = FieldSpec { p: 3, n: 6 };
        for a in small.elements() {
            for b in small.elements() {
                let ea = a.embed(big).unwrap();
                let eb = b.embed(big).unwrap();
                assert_eq!((a * b).embed(big).unwrap(), ea * eb);
                assert_eq!((a + b).embed(big).unwrap(), ea + eb);
                assert_eq!(ea.restrict(small).unwrap(), Some(a));
            }
        }
    }
}
