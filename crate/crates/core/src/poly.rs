//! Dense univariate polynomials over `GF(p^n)`, with factorization.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::Result;
use crate::finite_field::{ExtFieldElem, FieldSpec};

/// Polynomial with coefficients listed from the constant term upward.
/// The zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: FieldSpec,
    coeffs: Vec<ExtFieldElem>,
}

impl Poly {
    pub fn new(field: FieldSpec, mut coeffs: Vec<ExtFieldElem>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        debug_assert!(coeffs.iter().all(|c| c.spec() == field));
        Poly { field, coeffs }
    }

    pub fn from_ints(field: FieldSpec, coeffs: &[i64]) -> Self {
        Poly::new(field, coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    pub fn zero(field: FieldSpec) -> Self {
        Poly { field, coeffs: Vec::new() }
    }

    pub fn one(field: FieldSpec) -> Self {
        Poly::constant(field.one())
    }

    pub fn x(field: FieldSpec) -> Self {
        Poly::new(field, vec![field.zero(), field.one()])
    }

    pub fn constant(c: ExtFieldElem) -> Self {
        Poly::new(c.spec(), vec![c])
    }

    pub fn monomial(c: ExtFieldElem, k: usize) -> Self {
        let mut v = vec![c.spec().zero(); k];
        v.push(c);
        Poly::new(c.spec(), v)
    }

    /// `X - a`.
    pub fn linear(a: ExtFieldElem) -> Self {
        Poly::new(a.spec(), vec![-a, a.spec().one()])
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn coeffs(&self) -> &[ExtFieldElem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> ExtFieldElem {
        self.coeffs.get(i).copied().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree; `-1` for the zero polynomial.
    pub fn degree(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn lead(&self) -> ExtFieldElem {
        self.coeffs.last().copied().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_monic(&self) -> bool {
        self.lead().is_one()
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(self.lead().inv())
    }

    pub fn scale(&self, c: ExtFieldElem) -> Poly {
        Poly::new(self.field, self.coeffs.iter().map(|&a| a * c).collect())
    }

    pub fn map_coeffs(&self, target: FieldSpec, f: impl Fn(ExtFieldElem) -> ExtFieldElem) -> Poly {
        Poly::new(target, self.coeffs.iter().map(|&a| f(a)).collect())
    }

    /// Coefficientwise canonical embedding into a larger field.
    pub fn embed(&self, target: FieldSpec) -> Result<Poly> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.embed(target))
            .collect::<Result<Vec<_>>>()?;
        Ok(Poly::new(target, coeffs))
    }

    /// Coefficientwise restriction to a subfield, if every coefficient lies there.
    pub fn restrict(&self, sub: FieldSpec) -> Result<Option<Poly>> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            match c.restrict(sub)? {
                Some(x) => out.push(x),
                None => return Ok(None),
            }
        }
        Ok(Some(Poly::new(sub, out)))
    }

    /// Applies `frobenius_power(., k)` to every coefficient.
    pub fn frobenius(&self, k: i64) -> Poly {
        self.map_coeffs(self.field, |c| c.frobenius_power(k))
    }

    pub fn eval(&self, x: ExtFieldElem) -> ExtFieldElem {
        let mut acc = x.spec().zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + *c;
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| self.field.from_int(i as i64) * c)
            .collect();
        Poly::new(self.field, coeffs)
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return (Poly::zero(self.field), self.clone());
        }
        let inv_lead = d.lead().inv();
        let mut r = self.coeffs.clone();
        let mut q = vec![self.field.zero(); r.len() - dd];
        for k in (dd..r.len()).rev() {
            let c = r[k] * inv_lead;
            if c.is_zero() {
                continue;
            }
            q[k - dd] = c;
            for i in 0..=dd {
                r[k - dd + i] -= c * d.coeffs[i];
            }
        }
        (Poly::new(self.field, q), Poly::new(self.field, r))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.div_rem(d).1
    }

    /// Exact quotient; panics if `d` does not divide `self`.
    pub fn exact_div(&self, d: &Poly) -> Poly {
        let (q, r) = self.div_rem(d);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn divides(&self, other: &Poly) -> bool {
        other.rem(self).is_zero()
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn mul_mod(&self, other: &Poly, m: &Poly) -> Poly {
        (self * other).rem(m)
    }

    pub fn pow_mod(&self, mut e: u64, m: &Poly) -> Poly {
        let mut base = self.rem(m);
        let mut acc = Poly::one(self.field).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_mod(&base, m);
            }
            base = base.mul_mod(&base, m);
            e >>= 1;
        }
        acc
    }

    /// `self^(p^-1)` for a polynomial in `X^p`.
    fn pth_root(&self) -> Poly {
        let p = self.field.p() as usize;
        let coeffs = self.coeffs.iter().step_by(p).map(|c| c.pth_root()).collect();
        Poly::new(self.field, coeffs)
    }

    /// Rabin's irreducibility test over the coefficient field.
    pub fn is_irreducible(&self) -> bool {
        let n = self.degree();
        if n < 1 {
            return false;
        }
        if n == 1 {
            return true;
        }
        let n = n as usize;
        let f = self.monic();
        let q = self.field.order();
        let x = Poly::x(self.field);
        let mut powers = vec![x.rem(&f)];
        for i in 1..=n {
            let next = powers[i - 1].pow_mod(q, &f);
            powers.push(next);
        }
        if powers[n] != powers[0] {
            return false;
        }
        crate::finite_field::prime_factors(n as u64).into_iter().all(|r| {
            let h = &powers[n / r as usize] - &x;
            h.gcd(&f).is_one()
        })
    }

    /// Factorization into monic irreducibles with multiplicities, sorted in
    /// place order, together with the leading coefficient.
    pub fn factor(&self) -> (ExtFieldElem, Vec<(Poly, u32)>) {
        assert!(!self.is_zero(), "factorization of zero");
        let lead = self.lead();
        let mut out: Vec<(Poly, u32)> = Vec::new();
        for (sf, mult) in self.monic().squarefree_decomposition() {
            for (g, d) in sf.distinct_degree() {
                for h in g.equal_degree(d) {
                    out.push((h, mult));
                }
            }
        }
        out.sort_by(|a, b| a.0.place_cmp(&b.0));
        (lead, out)
    }

    /// Monic irreducible factors, without multiplicity.
    pub fn irreducible_factors(&self) -> Vec<Poly> {
        self.factor().1.into_iter().map(|(f, _)| f).collect()
    }

    /// All roots in the coefficient field, sorted by index.
    pub fn roots(&self) -> Vec<ExtFieldElem> {
        if self.degree() < 1 {
            return Vec::new();
        }
        let f = self.monic();
        let x = Poly::x(self.field);
        let xq = x.pow_mod(self.field.order(), &f);
        let g = (&xq - &x).gcd(&f);
        let mut roots: Vec<ExtFieldElem> = g
            .equal_degree(1)
            .into_iter()
            .map(|lin| -lin.coeff(0))
            .collect();
        roots.sort();
        roots
    }

    fn squarefree_decomposition(&self) -> Vec<(Poly, u32)> {
        let mut out = Vec::new();
        if self.degree() < 1 {
            return out;
        }
        let p = self.field.p() as u32;
        let d = self.derivative();
        if d.is_zero() {
            for (g, m) in self.pth_root().squarefree_decomposition() {
                out.push((g, m * p));
            }
            return out;
        }
        let mut c = self.gcd(&d);
        let mut w = self.exact_div(&c);
        let mut i = 1;
        while !w.is_one() {
            let y = w.gcd(&c);
            let z = w.exact_div(&y);
            if z.degree() > 0 {
                out.push((z, i));
            }
            i += 1;
            w = y;
            c = c.exact_div(&w);
        }
        if c.degree() > 0 {
            for (g, m) in c.pth_root().squarefree_decomposition() {
                out.push((g, m * p));
            }
        }
        out
    }

    /// Splits a monic squarefree polynomial into products of irreducibles of equal degree.
    fn distinct_degree(&self) -> Vec<(Poly, usize)> {
        let mut out = Vec::new();
        let mut f = self.clone();
        let q = self.field.order();
        let x = Poly::x(self.field);
        let mut h = x.rem(&f);
        let mut d = 0;
        while f.degree() >= 2 * (d as i64 + 1) {
            d += 1;
            h = h.pow_mod(q, &f);
            let g = (&h - &x).gcd(&f);
            if g.degree() > 0 {
                f = f.exact_div(&g);
                h = h.rem(&f);
                out.push((g, d));
            }
        }
        if f.degree() > 0 {
            let deg = f.degree() as usize;
            out.push((f, deg));
        }
        out
    }

    /// Cantor-Zassenhaus splitting of a product of distinct irreducibles of degree `d`.
    fn equal_degree(&self, d: usize) -> Vec<Poly> {
        let n = self.degree() as usize;
        if n == 0 {
            return Vec::new();
        }
        if n == d {
            return vec![self.clone()];
        }
        let field = self.field;
        let q = field.order();
        // deterministic sequence of trial polynomials
        let mut counter = 1u64;
        loop {
            let a = trial_poly(field, counter, n);
            counter += 1;
            if a.degree() < 1 {
                continue;
            }
            let b = if field.p() == 2 {
                // sum_{i < k d} a^(2^i) mod f where q = 2^k
                let k = field.degree() as usize;
                let mut acc = Poly::zero(field);
                let mut cur = a.rem(self);
                for _ in 0..k * d {
                    acc = &acc + &cur;
                    cur = cur.mul_mod(&cur, self);
                }
                acc
            } else {
                // a^((q^d - 1)/2) = (prod_{i<d} a^(q^i))^((q-1)/2)
                let mut prod = Poly::one(field);
                let mut cur = a.rem(self);
                for _ in 0..d {
                    prod = prod.mul_mod(&cur, self);
                    cur = cur.pow_mod(q, self);
                }
                &prod.pow_mod((q - 1) / 2, self) - &Poly::one(field)
            };
            let g = b.gcd(self);
            if g.degree() > 0 && g.degree() < n as i64 {
                let h = self.exact_div(&g);
                let mut out = g.equal_degree(d);
                out.extend(h.equal_degree(d));
                return out;
            }
        }
    }

    /// Place ordering: by degree, then coefficients from the constant term
    /// upward, each compared by index.
    pub fn place_cmp(&self, other: &Poly) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }

    /// Render using `var` for the indeterminate and `g` for the field generator.
    pub fn format_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            let term = crate::laurent_series::coefficient_term(*c, &mono);
            terms.push(term);
        }
        terms.join("+")
    }

    /// All monic polynomials of the given degree, in place order.
    pub fn monics_of_degree(field: FieldSpec, deg: usize) -> impl Iterator<Item = Poly> {
        let q = field.order();
        let count = q.pow(deg as u32);
        (0..count).map(move |mut idx| {
            let mut coeffs = Vec::with_capacity(deg + 1);
            for _ in 0..deg {
                coeffs.push(field.element(idx % q));
                idx /= q;
            }
            coeffs.push(field.one());
            Poly::new(field, coeffs)
        })
    }
}

fn trial_poly(field: FieldSpec, seed: u64, n: usize) -> Poly {
    // splitmix-style scrambling of the counter into coefficients
    let mut s = seed.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    let q = field.order();
    let coeffs = (0..n)
        .map(|_| {
            s ^= s >> 31;
            s = s.wrapping_mul(0xBF58_476D_1CE4_E5B9);
            s ^= s >> 27;
            field.element(s % q)
        })
        .collect();
    Poly::new(field, coeffs)
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with("T"))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {:?}", self, self.field)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        Poly::new(self.field, coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        Poly::new(self.field, coeffs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.field, self.coeffs.iter().map(|&c| -c).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(self.field, out)
    }
}
