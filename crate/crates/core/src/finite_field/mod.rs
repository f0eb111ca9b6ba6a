//! Finite fields `GF(p^n)` for small `p` and `n`, with compatible embeddings
//! between the members of each tower.
//!
//! Elements are stored as coefficient vectors over `F_p` in the power basis of
//! a root `g` of the defining polynomial. The defining polynomials and the
//! embeddings `GF(p^m) -> GF(p^n)` for `m | n` are computed deterministically
//! on first use and cached for the lifetime of the process (see [`table`]).

mod table;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use crate::error::{Error, Result};

pub use table::defining_polynomial;

/// Largest supported extension degree over the prime field.
pub const MAX_DEGREE: u8 = 12;
/// Largest supported characteristic.
pub const MAX_CHAR: u8 = 13;

const PRIMES: [u8; 6] = [2, 3, 5, 7, 11, 13];

/// The field `GF(p^n)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldSpec {
    p: u8,
    n: u8,
}

impl FieldSpec {
    pub fn new(p: u32, n: u32) -> Result<Self> {
        if p > MAX_CHAR as u32 || !PRIMES.contains(&(p as u8)) || n == 0 || n > MAX_DEGREE as u32 {
            return Err(Error::UnsupportedField { p, n });
        }
        Ok(FieldSpec { p: p as u8, n: n as u8 })
    }

    /// The field with `q` elements.
    pub fn with_order(q: u64) -> Result<Self> {
        for &p in &PRIMES {
            let mut pow = p as u64;
            for n in 1..=MAX_DEGREE as u32 {
                if pow == q {
                    return FieldSpec::new(p as u32, n);
                }
                pow = pow.saturating_mul(p as u64);
            }
        }
        Err(Error::OutOfRange(format!("no supported field has order {q}; need q = p^n with p prime <= 13 and n <= 12")))
    }

    pub fn p(&self) -> u8 {
        self.p
    }

    /// Degree over the prime field.
    pub fn degree(&self) -> u8 {
        self.n
    }

    pub fn order(&self) -> u64 {
        (self.p as u64).pow(self.n as u32)
    }

    pub fn prime_field(&self) -> FieldSpec {
        FieldSpec { p: self.p, n: 1 }
    }

    pub fn is_subfield_of(&self, other: &FieldSpec) -> bool {
        self.p == other.p && other.n % self.n == 0
    }

    /// The extension of degree `k` over `self`.
    pub fn extension(&self, k: u32) -> Result<FieldSpec> {
        FieldSpec::new(self.p as u32, self.n as u32 * k)
    }

    /// `[self : sub]`, if `sub` is a subfield.
    pub fn degree_over(&self, sub: &FieldSpec) -> Result<u32> {
        if sub.is_subfield_of(self) {
            Ok((self.n / sub.n) as u32)
        } else {
            Err(Error::NotSubfield { p: self.p, sub: sub.n, n: self.n })
        }
    }

    /// Coefficients `c_0, ..., c_n` of the monic defining polynomial.
    pub fn modulus(&self) -> &'static [u8] {
        table::modulus(self.p, self.n)
    }

    pub fn zero(&self) -> ExtFieldElem {
        ExtFieldElem { spec: *self, c: [0; MAX_DEGREE as usize] }
    }

    pub fn one(&self) -> ExtFieldElem {
        self.from_int(1)
    }

    /// The root `g` of the defining polynomial.
    pub fn generator(&self) -> ExtFieldElem {
        if self.n == 1 {
            // the defining polynomial of F_p is X, with root 0
            return self.zero();
        }
        let mut e = self.zero();
        e.c[1] = 1;
        e
    }

    pub fn from_int(&self, v: i64) -> ExtFieldElem {
        let mut e = self.zero();
        e.c[0] = v.rem_euclid(self.p as i64) as u8;
        e
    }

    pub fn from_coeffs(&self, coeffs: &[i64]) -> Result<ExtFieldElem> {
        if coeffs.len() > self.n as usize {
            return Err(Error::FieldMismatch(format!(
                "{} coefficients for a degree-{} field",
                coeffs.len(),
                self.n
            )));
        }
        let mut e = self.zero();
        for (slot, &v) in e.c.iter_mut().zip(coeffs) {
            *slot = v.rem_euclid(self.p as i64) as u8;
        }
        Ok(e)
    }

    /// The element whose base-`p` digits (least significant first) are its coefficients.
    pub fn element(&self, mut index: u64) -> ExtFieldElem {
        let mut e = self.zero();
        for i in 0..self.n as usize {
            e.c[i] = (index % self.p as u64) as u8;
            index /= self.p as u64;
        }
        e
    }

    /// All elements in index order. Intended for small fields.
    pub fn elements(&self) -> impl Iterator<Item = ExtFieldElem> + '_ {
        (0..self.order()).map(move |i| self.element(i))
    }

    /// A generator of the multiplicative group (smallest by index).
    pub fn primitive_element(&self) -> ExtFieldElem {
        let q1 = self.order() - 1;
        let factors = prime_factors(q1);
        (1..self.order())
            .map(|i| self.element(i))
            .find(|a| factors.iter().all(|&r| !a.pow(q1 / r).is_one()))
            .expect("finite fields have primitive elements")
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.order())
    }
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.p, self.n)
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    /// Accepts `GF(q)`, `GF(p^n)` or a bare order `q`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let inner = s
            .strip_prefix("GF(")
            .and_then(|r| r.strip_suffix(')'))
            .unwrap_or(s)
            .trim();
        let bad = || Error::Parse(format!("bad field name `{s}`"));
        if let Some((p, n)) = inner.split_once('^') {
            let p = p.trim().parse::<u32>().map_err(|_| bad())?;
            let n = n.trim().parse::<u32>().map_err(|_| bad())?;
            FieldSpec::new(p, n)
        } else {
            let q = inner.parse::<u64>().map_err(|_| bad())?;
            FieldSpec::with_order(q)
        }
    }
}

/// Element of `GF(p^n)` as a coefficient vector in the power basis of `g`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct ExtFieldElem {
    spec: FieldSpec,
    c: [u8; MAX_DEGREE as usize],
}

impl ExtFieldElem {
    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn coeffs(&self) -> &[u8] {
        &self.c[..self.spec.n as usize]
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&x| x == 0)
    }

    pub fn is_one(&self) -> bool {
        self.c[0] == 1 && self.c[1..].iter().all(|&x| x == 0)
    }

    /// Lies in the prime field.
    pub fn is_prime_field(&self) -> bool {
        self.c[1..].iter().all(|&x| x == 0)
    }

    /// Base-`p` integer encoding; the total order on elements is by index.
    pub fn index(&self) -> u64 {
        self.coeffs()
            .iter()
            .rev()
            .fold(0u64, |acc, &d| acc * self.spec.p as u64 + d as u64)
    }

    fn check(&self, other: &Self) {
        assert!(
            self.spec == other.spec,
            "field mismatch: {:?} vs {:?}",
            self.spec,
            other.spec
        );
    }

    pub fn try_inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        Ok(self.pow(self.spec.order() - 2))
    }

    pub fn inv(&self) -> Self {
        self.try_inv().expect("inverse of zero")
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = *self;
        let mut acc = self.spec.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    /// `self^e` for signed `e`. Panics for `0^e` with `e < 0`.
    pub fn pow_i(&self, e: i64) -> Self {
        if e >= 0 {
            self.pow(e as u64)
        } else {
            self.inv().pow(e.unsigned_abs())
        }
    }

    /// `self^(p^k)`; negative `k` applies the inverse Frobenius.
    pub fn frobenius_power(&self, k: i64) -> Self {
        let n = self.spec.n as i64;
        let k = k.rem_euclid(n);
        let mut x = *self;
        for _ in 0..k {
            x = x.pow(self.spec.p as u64);
        }
        x
    }

    /// The `p`-th root.
    pub fn pth_root(&self) -> Self {
        self.frobenius_power(-1)
    }

    /// Image under the canonical embedding into `target`.
    pub fn embed(&self, target: FieldSpec) -> Result<Self> {
        if !self.spec.is_subfield_of(&target) {
            return Err(Error::NotSubfield { p: self.spec.p, sub: self.spec.n, n: target.n });
        }
        if self.spec == target {
            return Ok(*self);
        }
        Ok(table::embedding(self.spec.p, self.spec.n, target.n).apply(self, target))
    }

    /// Preimage under the canonical embedding of `sub`, if `self` lies there.
    pub fn restrict(&self, sub: FieldSpec) -> Result<Option<Self>> {
        self.spec.degree_over(&sub)?;
        if self.spec == sub {
            return Ok(Some(*self));
        }
        Ok(table::embedding(self.spec.p, sub.n, self.spec.n).preimage(self, sub))
    }

    /// `Tr_{self.spec / sub}`.
    pub fn trace_to(&self, sub: FieldSpec) -> Result<Self> {
        let d = self.spec.degree_over(&sub)?;
        let mut acc = self.spec.zero();
        let mut x = *self;
        for _ in 0..d {
            acc += x;
            x = x.frobenius_power(sub.n as i64);
        }
        Ok(acc.restrict(sub)?.expect("trace lies in the subfield"))
    }

    /// `N_{self.spec / sub}`.
    pub fn norm_to(&self, sub: FieldSpec) -> Result<Self> {
        let d = self.spec.degree_over(&sub)?;
        let mut acc = self.spec.one();
        let mut x = *self;
        for _ in 0..d {
            acc *= x;
            x = x.frobenius_power(sub.n as i64);
        }
        Ok(acc.restrict(sub)?.expect("norm lies in the subfield"))
    }

    /// Absolute trace to `F_p`, as an integer in `0..p`.
    pub fn absolute_trace(&self) -> u8 {
        self.trace_to(self.spec.prime_field()).expect("prime field is a subfield").c[0]
    }

    /// `z^p - z`.
    pub fn artin_schreier(&self) -> Self {
        self.pow(self.spec.p as u64) - *self
    }

    /// A solution of `z^p - z = self`, if any.
    ///
    /// Solutions exist exactly when the absolute trace vanishes; they form a
    /// coset of `F_p`, and the one with vanishing constant coefficient (the
    /// least in index order) is returned.
    pub fn artin_schreier_solve(&self) -> Option<Self> {
        let spec = self.spec;
        let n = spec.n as usize;
        let p = spec.p as u32;
        // columns j = 1..n of the F_p-linear map z -> z^p - z; column 0 vanishes
        let cols: Vec<Vec<u32>> = (1..n)
            .map(|j| {
                let mut e = spec.zero();
                e.c[j] = 1;
                e.artin_schreier().coeffs().iter().map(|&x| x as u32).collect()
            })
            .collect();
        let rhs: Vec<u32> = self.coeffs().iter().map(|&x| x as u32).collect();
        let sol = solve_mod_p(&cols, &rhs, p)?;
        let mut z = spec.zero();
        for (j, v) in sol.into_iter().enumerate() {
            z.c[j + 1] = v as u8;
        }
        debug_assert_eq!(z.artin_schreier(), *self);
        Some(z)
    }

    pub fn multiplicative_order(&self) -> u64 {
        assert!(!self.is_zero());
        let q1 = self.spec.order() - 1;
        let mut ord = q1;
        for r in prime_factors(q1) {
            while ord % r == 0 && self.pow(ord / r).is_one() {
                ord /= r;
            }
        }
        ord
    }

    /// Render with the generator written as `var`.
    pub fn format_with(&self, var: &str) -> String {
        let mut terms = Vec::new();
        for i in (0..self.spec.n as usize).rev() {
            let c = self.c[i];
            if c == 0 {
                continue;
            }
            let t = match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => var.to_string(),
                (1, c) => format!("{c}*{var}"),
                (i, 1) => format!("{var}^{i}"),
                (i, c) => format!("{c}*{var}^{i}"),
            };
            terms.push(t);
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }
}

impl PartialOrd for ExtFieldElem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtFieldElem {
    fn cmp(&self, other: &Self) -> Ordering {
        self.spec
            .cmp(&other.spec)
            .then_with(|| self.coeffs().iter().rev().cmp(other.coeffs().iter().rev()))
    }
}

impl fmt::Display for ExtFieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with("g"))
    }
}

impl fmt::Debug for ExtFieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {:?}", self, self.spec)
    }
}

impl Add for ExtFieldElem {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self.check(&rhs);
        let p = self.spec.p;
        for i in 0..self.spec.n as usize {
            let s = self.c[i] + rhs.c[i];
            self.c[i] = if s >= p { s - p } else { s };
        }
        self
    }
}

impl Sub for ExtFieldElem {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for ExtFieldElem {
    type Output = Self;
    fn neg(mut self) -> Self {
        let p = self.spec.p;
        for x in self.c.iter_mut().take(self.spec.n as usize) {
            if *x != 0 {
                *x = p - *x;
            }
        }
        self
    }
}

impl Mul for ExtFieldElem {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.check(&rhs);
        let n = self.spec.n as usize;
        let p = self.spec.p as u32;
        let mut out = self.spec.zero();
        if n == 1 {
            out.c[0] = ((self.c[0] as u32 * rhs.c[0] as u32) % p) as u8;
            return out;
        }
        let mut prod = [0u32; 2 * MAX_DEGREE as usize];
        for i in 0..n {
            let a = self.c[i] as u32;
            if a == 0 {
                continue;
            }
            for j in 0..n {
                prod[i + j] += a * rhs.c[j] as u32;
            }
        }
        let m = self.spec.modulus();
        for k in (n..2 * n - 1).rev() {
            let coef = prod[k] % p;
            if coef == 0 {
                continue;
            }
            for i in 0..n {
                prod[k - n + i] += coef * (p - m[i] as u32);
            }
        }
        for i in 0..n {
            out.c[i] = (prod[i] % p) as u8;
        }
        out
    }
}

impl Div for ExtFieldElem {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        self * rhs.inv()
    }
}

impl AddAssign for ExtFieldElem {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl SubAssign for ExtFieldElem {
    fn sub_assign(&mut self, rhs: Self) {
        *self = *self - rhs;
    }
}

impl MulAssign for ExtFieldElem {
    fn mul_assign(&mut self, rhs: Self) {
        *self = *self * rhs;
    }
}

/// `frobenius_power(a, k)` as a free function.
pub fn frobenius_power(a: &ExtFieldElem, k: i64) -> ExtFieldElem {
    a.frobenius_power(k)
}

/// `trace_to(a, sub)` as a free function.
pub fn trace_to(a: &ExtFieldElem, sub: FieldSpec) -> Result<ExtFieldElem> {
    a.trace_to(sub)
}

/// `artin_schreier_solve(a)` as a free function.
pub fn artin_schreier_solve(a: &ExtFieldElem) -> Option<ExtFieldElem> {
    a.artin_schreier_solve()
}

/// `embed(a, target)` as a free function.
pub fn embed(a: &ExtFieldElem, target: FieldSpec) -> Result<ExtFieldElem> {
    a.embed(target)
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub(crate) fn inv_mod_p(a: u32, p: u32) -> u32 {
    let mut r = 1u32;
    for _ in 0..p - 2 {
        r = r * a % p;
    }
    r
}

/// Solves `sum_j x_j * cols[j] = rhs` over `F_p`, setting free variables to zero.
pub(crate) fn solve_mod_p(cols: &[Vec<u32>], rhs: &[u32], p: u32) -> Option<Vec<u32>> {
    let rows = rhs.len();
    let ncols = cols.len();
    // augmented matrix, row-major
    let mut a: Vec<Vec<u32>> = (0..rows)
        .map(|i| {
            let mut row: Vec<u32> = cols.iter().map(|c| c[i] % p).collect();
            row.push(rhs[i] % p);
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(piv) = (r..rows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, piv);
        let inv = inv_mod_p(a[r][c], p);
        for v in a[r].iter_mut() {
            *v = *v * inv % p;
        }
        for i in 0..rows {
            if i != r && a[i][c] != 0 {
                let f = a[i][c];
                for k in 0..=ncols {
                    a[i][k] = (a[i][k] + (p - f) * a[r][k]) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    if a[r..].iter().any(|row| row[ncols] != 0) {
        return None;
    }
    let mut x = vec![0u32; ncols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = a[i][ncols];
    }
    Some(x)
}
