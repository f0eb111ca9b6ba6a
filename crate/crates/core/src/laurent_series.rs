//! Truncated Laurent series `F_P((t))` with explicit precision tracking.
//!
//! A series is either exact (a finite Laurent polynomial) or known modulo
//! `t^N`. Every operation propagates precision pessimistically:
//!
//! | operation        | output precision                                  |
//! |------------------|---------------------------------------------------|
//! | `a + b`          | `min(N_a, N_b)`                                   |
//! | `a * b`          | `min(v_a + N_b, v_b + N_a)`                       |
//! | `a.inv()`        | `N_a - 2 v_a`                                     |
//! | `a.derivative()` | `N_a - 1`                                         |
//! | `a.pth_power()`  | `p N_a`                                           |
//!
//! where `v` is the valuation (or the precision, for a series known to vanish
//! modulo `t^N`). Exact inputs give exact outputs except for inverses of
//! non-monomials, which require a finite precision.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::finite_field::{ExtFieldElem, FieldSpec};

/// Witness precision used by [`reduce_mod_wp`] when the input is exact.
pub const EXACT_WITNESS_PRECISION: i64 = 16;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentSeries {
    field: FieldSpec,
    /// exponent of `coeffs[0]`
    start: i64,
    /// `coeffs[0] != 0` and no trailing zeros; empty for (known) zero
    coeffs: Vec<ExtFieldElem>,
    /// `None` for exact series
    prec: Option<i64>,
}

fn min_prec(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(x), Some(y)) => Some(x.min(y)),
    }
}

fn add_prec(a: Option<i64>, k: i64) -> Option<i64> {
    a.map(|n| n + k)
}

impl LaurentSeries {
    pub fn new(field: FieldSpec, start: i64, coeffs: Vec<ExtFieldElem>, prec: Option<i64>) -> Self {
        let mut coeffs = coeffs;
        if let Some(n) = prec {
            let keep = (n - start).max(0) as usize;
            coeffs.truncate(keep);
        }
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        let lead = coeffs.iter().position(|c| !c.is_zero()).unwrap_or(coeffs.len());
        coeffs.drain(..lead);
        let start = if coeffs.is_empty() { 0 } else { start + lead as i64 };
        LaurentSeries { field, start, coeffs, prec }
    }

    /// Exact zero.
    pub fn zero(field: FieldSpec) -> Self {
        LaurentSeries { field, start: 0, coeffs: Vec::new(), prec: None }
    }

    /// `O(t^n)`.
    pub fn big_o(field: FieldSpec, n: i64) -> Self {
        LaurentSeries { field, start: 0, coeffs: Vec::new(), prec: Some(n) }
    }

    pub fn constant(c: ExtFieldElem) -> Self {
        LaurentSeries::monomial(c, 0)
    }

    pub fn one(field: FieldSpec) -> Self {
        LaurentSeries::constant(field.one())
    }

    /// `c t^k`, exact.
    pub fn monomial(c: ExtFieldElem, k: i64) -> Self {
        LaurentSeries::new(c.spec(), k, vec![c], None)
    }

    /// The prime element `t`.
    pub fn t(field: FieldSpec) -> Self {
        LaurentSeries::monomial(field.one(), 1)
    }

    /// Exact Laurent polynomial from `(exponent, coefficient)` pairs.
    pub fn from_terms(field: FieldSpec, terms: &[(i64, ExtFieldElem)]) -> Self {
        let mut acc = LaurentSeries::zero(field);
        for &(k, c) in terms {
            acc = &acc + &LaurentSeries::monomial(c, k);
        }
        acc
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn precision(&self) -> Option<i64> {
        self.prec
    }

    pub fn is_exact(&self) -> bool {
        self.prec.is_none()
    }

    pub fn is_exact_zero(&self) -> bool {
        self.coeffs.is_empty() && self.prec.is_none()
    }

    /// True when every known coefficient vanishes.
    pub fn is_zero_to_precision(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Valuation, when some coefficient is known to be nonzero.
    pub fn valuation(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then_some(self.start)
    }

    /// Valuation, or an insufficient-precision error.
    pub fn try_valuation(&self) -> Result<i64> {
        if self.is_exact_zero() {
            return Err(Error::ZeroInput);
        }
        self.valuation().ok_or_else(|| {
            Error::InsufficientPrecision(format!("valuation of {self} is not determined"))
        })
    }

    /// Lower bound for the valuation used in precision bookkeeping.
    fn val_bound(&self) -> Option<i64> {
        self.valuation().or(self.prec)
    }

    pub fn leading_coeff(&self) -> Option<ExtFieldElem> {
        self.coeffs.first().copied()
    }

    /// Coefficient of `t^i`; `None` when not determined.
    pub fn coeff(&self, i: i64) -> Option<ExtFieldElem> {
        if self.prec.is_some_and(|n| i >= n) {
            return None;
        }
        let idx = i - self.start;
        if self.coeffs.is_empty() || idx < 0 || idx as usize >= self.coeffs.len() {
            Some(self.field.zero())
        } else {
            Some(self.coeffs[idx as usize])
        }
    }

    /// Highest exponent with a stored nonzero coefficient.
    pub fn last_exponent(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then(|| self.start + self.coeffs.len() as i64 - 1)
    }

    /// Known terms as `(exponent, coefficient)`, nonzero only.
    pub fn terms(&self) -> impl Iterator<Item = (i64, ExtFieldElem)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, &c)| (self.start + i as i64, c))
    }

    /// Forget everything from `t^n` on.
    pub fn truncate(&self, n: i64) -> Self {
        LaurentSeries::new(self.field, self.start, self.coeffs.clone(), min_prec(self.prec, Some(n)))
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentSeries {
            field: self.field,
            start: if self.coeffs.is_empty() { 0 } else { self.start + k },
            coeffs: self.coeffs.clone(),
            prec: add_prec(self.prec, k),
        }
    }

    pub fn scale(&self, c: ExtFieldElem) -> Self {
        if c.is_zero() {
            return match self.prec {
                None => LaurentSeries::zero(self.field),
                Some(_) => LaurentSeries::big_o(self.field, self.val_bound().unwrap()),
            };
        }
        LaurentSeries::new(
            self.field,
            self.start,
            self.coeffs.iter().map(|&a| a * c).collect(),
            self.prec,
        )
    }

    /// Applies `frobenius_power(., k)` to every coefficient.
    pub fn frobenius_coeffs(&self, k: i64) -> Self {
        LaurentSeries::new(
            self.field,
            self.start,
            self.coeffs.iter().map(|c| c.frobenius_power(k)).collect(),
            self.prec,
        )
    }

    pub fn map_coeffs(
        &self,
        target: FieldSpec,
        f: impl Fn(ExtFieldElem) -> Result<ExtFieldElem>,
    ) -> Result<Self> {
        let coeffs = self.coeffs.iter().map(|&c| f(c)).collect::<Result<Vec<_>>>()?;
        Ok(LaurentSeries::new(target, self.start, coeffs, self.prec))
    }

    pub fn embed(&self, target: FieldSpec) -> Result<Self> {
        self.map_coeffs(target, |c| c.embed(target))
    }

    /// Coefficientwise restriction; `None` if some coefficient is outside `sub`.
    pub fn restrict(&self, sub: FieldSpec) -> Result<Option<Self>> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            match c.restrict(sub)? {
                Some(x) => out.push(x),
                None => return Ok(None),
            }
        }
        Ok(Some(LaurentSeries::new(sub, self.start, out, self.prec)))
    }

    fn check(&self, other: &Self) {
        assert!(
            self.field == other.field,
            "series over different fields: {:?} vs {:?}",
            self.field,
            other.field
        );
    }

    fn add_impl(&self, other: &Self, negate: bool) -> Self {
        self.check(other);
        let prec = min_prec(self.prec, other.prec);
        let lo = match (self.valuation(), other.valuation()) {
            (Some(a), Some(b)) => a.min(b),
            (Some(a), None) => a,
            (None, Some(b)) => b,
            (None, None) => return self.zero_like(prec),
        };
        let hi = [self.last_exponent(), other.last_exponent()]
            .into_iter()
            .flatten()
            .max()
            .unwrap();
        let hi = match prec {
            Some(n) => hi.min(n - 1),
            None => hi,
        };
        if hi < lo {
            return self.zero_like(prec);
        }
        let coeffs = (lo..=hi)
            .map(|i| {
                let a = self.raw(i);
                let b = other.raw(i);
                if negate {
                    a - b
                } else {
                    a + b
                }
            })
            .collect();
        LaurentSeries::new(self.field, lo, coeffs, prec)
    }

    fn zero_like(&self, prec: Option<i64>) -> Self {
        match prec {
            None => LaurentSeries::zero(self.field),
            Some(n) => LaurentSeries::big_o(self.field, n),
        }
    }

    /// Stored coefficient, zero outside the stored range.
    fn raw(&self, i: i64) -> ExtFieldElem {
        let idx = i - self.start;
        if idx < 0 || idx as usize >= self.coeffs.len() {
            self.field.zero()
        } else {
            self.coeffs[idx as usize]
        }
    }

    fn mul_impl(&self, other: &Self) -> Self {
        self.check(other);
        if self.is_exact_zero() || other.is_exact_zero() {
            return LaurentSeries::zero(self.field);
        }
        let prec = match (self.val_bound(), other.val_bound()) {
            (Some(va), Some(vb)) => min_prec(add_prec(other.prec, va), add_prec(self.prec, vb)),
            _ => unreachable!("non-exact-zero series have a valuation bound"),
        };
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return self.zero_like(prec);
        }
        let start = self.start + other.start;
        let mut len = self.coeffs.len() + other.coeffs.len() - 1;
        if let Some(n) = prec {
            len = len.min((n - start).max(0) as usize);
        }
        let mut out = vec![self.field.zero(); len];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() || i >= len {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                out[i + j] += a * b;
            }
        }
        LaurentSeries::new(self.field, start, out, prec)
    }

    /// Multiplicative inverse. Requires a known valuation; exact inputs must be monomials.
    pub fn inv(&self) -> Result<Self> {
        if self.is_exact_zero() {
            return Err(Error::ZeroInput);
        }
        let v = self.try_valuation()?;
        let u0_inv = self.coeffs[0].inv();
        let rel = match self.prec {
            None if self.coeffs.len() == 1 => {
                return Ok(LaurentSeries::monomial(u0_inv, -v));
            }
            None => {
                return Err(Error::InsufficientPrecision(
                    "inverse of an exact non-monomial series needs a finite precision".into(),
                ))
            }
            Some(n) => n - v,
        };
        let rel = rel as usize;
        let mut w = Vec::with_capacity(rel);
        for k in 0..rel {
            if k == 0 {
                w.push(u0_inv);
                continue;
            }
            let mut s = self.field.zero();
            for i in 1..=k.min(self.coeffs.len() - 1) {
                s += self.coeffs[i] * w[k - i];
            }
            w.push(-(s * u0_inv));
        }
        Ok(LaurentSeries::new(self.field, -v, w, Some(-v + rel as i64)))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        let mut base = self.clone();
        let mut acc = LaurentSeries::one(self.field);
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// `self^p`, computed coefficientwise (characteristic `p`).
    pub fn pth_power(&self) -> Self {
        let p = self.field.p() as i64;
        let mut acc = LaurentSeries::zero(self.field).truncate_opt(self.prec.map(|n| n * p));
        for (k, c) in self.terms() {
            acc = &acc + &LaurentSeries::monomial(c.pow(p as u64), k * p);
        }
        acc
    }

    fn truncate_opt(&self, n: Option<i64>) -> Self {
        match n {
            Some(n) => self.truncate(n),
            None => self.clone(),
        }
    }

    /// `z^p - z`.
    pub fn artin_schreier(&self) -> Self {
        &self.pth_power() - self
    }

    /// Termwise derivative `d/dt`.
    pub fn derivative(&self) -> Self {
        let coeffs: Vec<_> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| self.field.from_int(self.start + i as i64) * c)
            .collect();
        LaurentSeries::new(self.field, self.start - 1, coeffs, add_prec(self.prec, -1))
    }

    /// `D(self)/self`.
    pub fn log_derivative(&self) -> Result<Self> {
        self.derivative().div(self)
    }

    /// `dx/dy = (dx/dt)/(dy/dt)`; undefined when `dy/dt` vanishes.
    pub fn derivative_wrt(&self, y: &Self) -> Result<Self> {
        let dy = y.derivative();
        if dy.is_zero_to_precision() {
            return Err(Error::UndefinedDerivative);
        }
        self.derivative().div(&dy)
    }

    /// Substitutes `s` (of positive valuation) for `t`.
    pub fn compose(&self, s: &Self) -> Result<Self> {
        self.check(s);
        let vs = s.try_valuation()?;
        if vs < 1 {
            return Err(Error::NotPrime(vs));
        }
        let tail = match self.prec {
            Some(n) => LaurentSeries::big_o(self.field, n * vs),
            None => LaurentSeries::zero(self.field),
        };
        let Some(v) = self.valuation() else {
            return Ok(tail);
        };
        let mut power = s.pow(v)?;
        let mut acc = tail;
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc = &acc + &power.scale(*c);
            }
            if i + 1 < self.coeffs.len() {
                power = &power * s;
            }
        }
        Ok(acc)
    }

    /// Compositional inverse of a series of valuation 1: returns `s` with `self(s(t)) = t`.
    pub fn reversion(&self) -> Result<Self> {
        let v = self.try_valuation()?;
        if v != 1 {
            return Err(Error::NotPrime(v));
        }
        let a1 = self.coeffs[0];
        let a1_inv = a1.inv();
        let m = match self.prec {
            None if self.coeffs.len() == 1 => {
                return Ok(LaurentSeries::monomial(a1_inv, 1));
            }
            None => {
                return Err(Error::InsufficientPrecision(
                    "reversion of an exact non-monomial series needs a finite precision".into(),
                ))
            }
            Some(m) => m,
        };
        let exact_u = LaurentSeries::new(self.field, self.start, self.coeffs.clone(), None);
        let mut b: Vec<ExtFieldElem> = vec![a1_inv];
        for k in 2..m {
            let s = LaurentSeries::new(self.field, 1, b.clone(), None);
            let comp = exact_u.truncate(k + 1).compose(&s.truncate(k + 1))?;
            let c = comp.coeff(k).expect("coefficient below precision");
            b.push(-(c * a1_inv));
        }
        Ok(LaurentSeries::new(self.field, 1, b, Some(m)))
    }

    /// Render with `var` as the series variable.
    pub fn format_with(&self, var: &str) -> String {
        let mut terms: Vec<String> = self
            .terms()
            .map(|(k, c)| {
                let mono = match k {
                    0 => String::new(),
                    1 => var.to_string(),
                    k => format!("{var}^{k}"),
                };
                coefficient_term(c, &mono)
            })
            .collect();
        if let Some(n) = self.prec {
            terms.push(match n {
                0 => "O(1)".to_string(),
                1 => format!("O({var})"),
                n => format!("O({var}^{n})"),
            });
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

/// `c*mono` with parentheses around compound coefficients.
pub(crate) fn coefficient_term(c: ExtFieldElem, mono: &str) -> String {
    let cs = c.to_string();
    if mono.is_empty() {
        cs
    } else if c.is_one() {
        mono.to_string()
    } else if cs.contains('+') {
        format!("({cs})*{mono}")
    } else {
        format!("{cs}*{mono}")
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with("t"))
    }
}

impl fmt::Debug for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {}", self, self.field)
    }
}

impl Add for &LaurentSeries {
    type Output = LaurentSeries;
    fn add(self, rhs: &LaurentSeries) -> LaurentSeries {
        self.add_impl(rhs, false)
    }
}

impl Sub for &LaurentSeries {
    type Output = LaurentSeries;
    fn sub(self, rhs: &LaurentSeries) -> LaurentSeries {
        self.add_impl(rhs, true)
    }
}

impl Neg for &LaurentSeries {
    type Output = LaurentSeries;
    fn neg(self) -> LaurentSeries {
        self.scale(-self.field.one())
    }
}

impl Mul for &LaurentSeries {
    type Output = LaurentSeries;
    fn mul(self, rhs: &LaurentSeries) -> LaurentSeries {
        self.mul_impl(rhs)
    }
}

/// Derivative `d/dt`.
pub fn derivative(x: &LaurentSeries) -> LaurentSeries {
    x.derivative()
}

/// Coefficient of `t^-1` in `x dy/dt`, the residue of the differential `x dy`.
pub fn residue(x: &LaurentSeries, y: &LaurentSeries) -> Result<ExtFieldElem> {
    let w = x * &y.derivative();
    w.coeff(-1).ok_or_else(|| {
        Error::InsufficientPrecision(format!("residue of ({x}) d({y}) is not determined"))
    })
}

/// Re-expands `x` in powers of the prime element `u`.
pub fn recompose_in_prime(x: &LaurentSeries, u: &LaurentSeries) -> Result<LaurentSeries> {
    let v = u.try_valuation()?;
    if v != 1 {
        return Err(Error::NotPrime(v));
    }
    x.compose(&u.reversion()?)
}

/// Least `n <= p` with `(D + x)^n (1) = 0`, if any.
///
/// Since `D^p = 0` on `F((t))`, an element is a logarithmic derivative exactly
/// when such an `n <= p` exists, so the search stops at `p`. A truncated
/// iterate counts as zero when it vanishes modulo `t^M` with `M >= 1`; if the
/// precision drops below that before a decision the call fails.
pub fn log_derivative_order(x: &LaurentSeries) -> Result<Option<u32>> {
    let p = x.field().p() as u32;
    let mut y = LaurentSeries::one(x.field());
    for n in 1..=p {
        y = &y.derivative() + &(x * &y);
        if y.is_zero_to_precision() {
            return match y.precision() {
                None => Ok(Some(n)),
                Some(m) if m >= 1 => Ok(Some(n)),
                Some(m) => Err(Error::InsufficientPrecision(format!(
                    "(D+x)^{n}(1) is only known modulo t^{m}"
                ))),
            };
        }
    }
    Ok(None)
}

/// Outcome of reducing a local element modulo `℘K_P`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WpStatus {
    /// `x = z^p - z` for the returned witness.
    InWp,
    /// `x ≡ a0 mod ℘K_P` with `a0` a constant of nonzero absolute trace.
    UnitObstruction,
    /// The reduced element keeps a pole of order prime to `p`.
    PoleObstruction,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WpReduction {
    /// `x - ℘(witness)`
    pub reduced: LaurentSeries,
    pub witness: LaurentSeries,
    pub status: WpStatus,
}

/// Reduces `x` modulo `℘K_P = {z^p - z}`.
///
/// Pole terms `c t^{-mp}` are removed by subtracting `℘(c^{1/p} t^{-m})`,
/// the constant term is split off with an `F_P`-level Artin-Schreier solve
/// when its trace vanishes, and the positive-valuation tail `x1` is absorbed
/// by `z1 = -(x1 + x1^p + x1^{p^2} + ...)`.
pub fn reduce_mod_wp(x: &LaurentSeries) -> Result<WpReduction> {
    let field = x.field();
    let p = field.p() as i64;
    let mut cur = x.clone();
    let mut z = LaurentSeries::zero(field);
    while let Some(v) = cur.valuation() {
        if v >= 0 {
            break;
        }
        let m = -v;
        if m % p != 0 {
            return Ok(WpReduction { reduced: cur, witness: z, status: WpStatus::PoleObstruction });
        }
        let root = cur.leading_coeff().unwrap().pth_root();
        let w = LaurentSeries::monomial(root, -m / p);
        cur = &cur - &w.artin_schreier();
        z = &z + &w;
    }
    let a0 = cur.coeff(0).ok_or_else(|| {
        Error::InsufficientPrecision(format!("constant term of {x} after pole reduction"))
    })?;
    let mut tail = &cur - &LaurentSeries::constant(a0);
    if tail.is_exact() && !tail.is_exact_zero() {
        tail = tail.truncate(EXACT_WITNESS_PRECISION);
    }
    let mut z_tail = LaurentSeries::zero(field);
    let bound = tail.precision().unwrap_or(0);
    let mut term = tail.clone();
    while let Some(v) = term.valuation() {
        if tail.precision().is_some() && v >= bound {
            break;
        }
        z_tail = &z_tail - &term;
        term = term.pth_power();
    }
    if let Some(n) = tail.precision() {
        z_tail = z_tail.truncate(n);
    }
    let status = match a0.artin_schreier_solve() {
        Some(b) => {
            z = &z + &LaurentSeries::constant(b);
            WpStatus::InWp
        }
        None => WpStatus::UnitObstruction,
    };
    z = &z + &z_tail;
    let reduced = x - &z.artin_schreier();
    Ok(WpReduction { reduced, witness: z, status })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u64) -> FieldSpec {
        FieldSpec::with_order(q).unwrap()
    }

    fn mono(f: FieldSpec, c: i64, k: i64) -> LaurentSeries {
        LaurentSeries::monomial(f.from_int(c), k)
    }

    #[test]
    fn derivative_examples() {
        let f2 = gf(2);
        assert!(mono(f2, 1, 2).derivative().is_exact_zero());
        assert!(LaurentSeries::constant(gf(4).generator()).derivative().is_exact_zero());
        assert_eq!(mono(f2, 1, -1).derivative(), mono(f2, 1, -2));
    }

    #[test]
    fn residue_examples() {
        let f2 = gf(2);
        let f3 = gf(3);
        assert!(residue(&mono(f2, 1, -1), &LaurentSeries::t(f2)).unwrap().is_one());
        assert!(residue(&mono(f2, 1, -2), &mono(f2, 1, 3)).unwrap().is_zero());
        let x = &LaurentSeries::one(f3) + &mono(f3, 1, -1);
        assert!(residue(&x, &mono(f3, 1, 2)).unwrap().is_zero());
    }

    #[test]
    fn residue_needs_precision() {
        let f2 = gf(2);
        let x = LaurentSeries::big_o(f2, -1);
        assert!(matches!(
            residue(&x, &LaurentSeries::t(f2)),
            Err(Error::InsufficientPrecision(_))
        ));
    }

    #[test]
    fn inverse_precision_rule() {
        let f3 = gf(3);
        let a = (&mono(f3, 1, -1) + &mono(f3, 1, 0)).truncate(4);
        let inv = a.inv().unwrap();
        assert_eq!(inv.precision(), Some(4 + 2));
        let prod = &a * &inv;
        assert_eq!(prod.precision(), Some(5));
        assert!((&prod - &LaurentSeries::one(f3)).is_zero_to_precision());
    }

    #[test]
    fn recompose_examples() {
        let f5 = gf(5);
        let x = (&mono(f5, 2, -2) + &mono(f5, 1, 1)).truncate(6);
        assert_eq!(recompose_in_prime(&x, &LaurentSeries::t(f5)).unwrap(), x);
        let c = f5.from_int(3);
        let u = LaurentSeries::monomial(c, 1);
        let r = recompose_in_prime(&LaurentSeries::t(f5), &u).unwrap();
        assert_eq!(r, LaurentSeries::monomial(c.inv(), 1));
        // residue of dt/t in the prime u = t + t^2
        let f2 = gf(2);
        let u = (&LaurentSeries::t(f2) + &mono(f2, 1, 2)).truncate(8);
        let x = mono(f2, 1, -1);
        let xu = recompose_in_prime(&x, &u).unwrap();
        let tu = recompose_in_prime(&LaurentSeries::t(f2), &u).unwrap();
        assert!(residue(&xu, &tu).unwrap().is_one());
        assert!(recompose_in_prime(&x, &mono(f2, 1, 2)).is_err());
    }

    #[test]
    fn reversion_round_trip() {
        let f3 = gf(3);
        let u = (&(&LaurentSeries::t(f3) + &mono(f3, 2, 2)) + &mono(f3, 1, 4)).truncate(9);
        let s = u.reversion().unwrap();
        let id = u.compose(&s).unwrap();
        assert!((&id - &LaurentSeries::t(f3)).is_zero_to_precision());
        assert!(id.precision().unwrap() >= 9);
    }

    #[test]
    fn log_derivative_examples() {
        let f2 = gf(2);
        assert_eq!(log_derivative_order(&LaurentSeries::zero(f2)).unwrap(), Some(1));
        assert_eq!(log_derivative_order(&mono(f2, 1, -1)).unwrap(), Some(2));
        for q in [2, 3, 5, 7] {
            let f = gf(q);
            assert_eq!(log_derivative_order(&LaurentSeries::one(f)).unwrap(), None);
        }
    }

    #[test]
    fn reduce_examples() {
        let f2 = gf(2);
        let r = reduce_mod_wp(&LaurentSeries::t(f2).truncate(9)).unwrap();
        assert_eq!(r.status, WpStatus::InWp);
        // z = t + t^2 + t^4 + t^8
        let expected = LaurentSeries::from_terms(
            f2,
            &[(1, f2.one()), (2, f2.one()), (4, f2.one()), (8, f2.one())],
        )
        .truncate(9);
        assert_eq!(r.witness, expected);

        let r = reduce_mod_wp(&LaurentSeries::one(f2)).unwrap();
        assert_eq!(r.status, WpStatus::UnitObstruction);
        assert_eq!(r.reduced, LaurentSeries::one(f2));

        let r = reduce_mod_wp(&mono(f2, 1, -2)).unwrap();
        assert_eq!(r.status, WpStatus::PoleObstruction);
        assert_eq!(r.reduced, mono(f2, 1, -1));
        assert_eq!(r.witness, mono(f2, 1, -1));
    }
}
