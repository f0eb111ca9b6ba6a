//! The rational function field `K = F_q(T)`: elements, places, divisors and
//! local expansions.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::finite_field::{ExtFieldElem, FieldSpec};
use crate::laurent_series::LaurentSeries;
use crate::poly::Poly;

/// `num/den` in lowest terms with `den` monic.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroInput);
        }
        if num.field() != den.field() {
            return Err(Error::FieldMismatch(format!("{:?} vs {:?}", num.field(), den.field())));
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        let field = num.field();
        if num.is_zero() {
            return RationalFunction { num, den: Poly::one(field) };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() { (num, den) } else { (num.exact_div(&g), den.exact_div(&g)) };
        let l = den.lead().inv();
        RationalFunction { num: num.scale(l), den: den.scale(l) }
    }

    pub fn from_poly(p: Poly) -> Self {
        let den = Poly::one(p.field());
        RationalFunction { num: p, den }
    }

    pub fn zero(field: FieldSpec) -> Self {
        Self::from_poly(Poly::zero(field))
    }

    pub fn one(field: FieldSpec) -> Self {
        Self::from_poly(Poly::one(field))
    }

    /// The indeterminate `T`.
    pub fn t(field: FieldSpec) -> Self {
        Self::from_poly(Poly::x(field))
    }

    pub fn constant(c: ExtFieldElem) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn field(&self) -> FieldSpec {
        self.num.field()
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.num.degree() <= 0 && self.den.degree() == 0
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// `max(deg num, deg den)`.
    pub fn height(&self) -> i64 {
        self.num.degree().max(self.den.degree())
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        Ok(Self::reduce(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        Ok(RationalFunction {
            num: self.num.pow(e as u64),
            den: self.den.pow(e as u64),
        })
    }

    pub fn scale(&self, c: ExtFieldElem) -> Self {
        Self::reduce(self.num.scale(c), self.den.clone())
    }

    /// Coefficientwise Frobenius `c -> c^{p^k}`.
    pub fn frobenius(&self, k: i64) -> Self {
        Self::reduce(self.num.frobenius(k), self.den.frobenius(k))
    }

    pub fn embed(&self, target: FieldSpec) -> Result<Self> {
        Ok(RationalFunction { num: self.num.embed(target)?, den: self.den.embed(target)? })
    }

    /// `None` when some coefficient lies outside `sub`.
    pub fn restrict(&self, sub: FieldSpec) -> Result<Option<Self>> {
        match (self.num.restrict(sub)?, self.den.restrict(sub)?) {
            (Some(n), Some(d)) => Ok(Some(RationalFunction { num: n, den: d })),
            _ => Ok(None),
        }
    }

    /// Value at a point of a field containing the coefficients; `None` at a pole.
    pub fn eval(&self, a: ExtFieldElem) -> Result<Option<ExtFieldElem>> {
        let target = a.spec();
        let n = self.num.embed(target)?.eval(a);
        let d = self.den.embed(target)?.eval(a);
        Ok((!d.is_zero()).then(|| n / d))
    }

    /// `d/dT`.
    pub fn derivative(&self) -> Self {
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        Self::reduce(n, &self.den * &self.den)
    }

    pub fn valuation_at(&self, place: &Place) -> Result<i64> {
        valuation_at(self, place)
    }
}

fn parenthesize(s: String) -> String {
    if s.contains('+') || s.contains('*') {
        format!("({s})")
    } else {
        s
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", parenthesize(self.num.to_string()), parenthesize(self.den.to_string()))
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {}", self, self.field())
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.den == rhs.den {
            return RationalFunction::reduce(&self.num + &rhs.num, self.den.clone());
        }
        let n = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RationalFunction::reduce(n, &self.den * &rhs.den)
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::reduce(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

/// A place of `F_q(T)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Place {
    Infinity,
    /// monic irreducible polynomial
    Finite(Poly),
}

impl Place {
    pub fn finite(f: Poly) -> Result<Self> {
        if f.degree() < 1 || !f.is_monic() || !f.is_irreducible() {
            return Err(Error::OutOfRange(format!("{f} is not a monic irreducible polynomial")));
        }
        Ok(Place::Finite(f))
    }

    /// `(T - a)`.
    pub fn rational(a: ExtFieldElem) -> Self {
        Place::Finite(Poly::linear(a))
    }

    /// `[F_P : F_q]`.
    pub fn degree(&self) -> u32 {
        match self {
            Place::Infinity => 1,
            Place::Finite(f) => f.degree() as u32,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Place::Infinity)
    }

    pub fn poly(&self) -> Option<&Poly> {
        match self {
            Place::Infinity => None,
            Place::Finite(f) => Some(f),
        }
    }

    /// Residue field `F_P` for a place of `F_q(T)` with `q` = `base`.
    pub fn residue_field(&self, base: FieldSpec) -> Result<FieldSpec> {
        base.extension(self.degree())
    }

    /// The canonical prime: `f` at a finite place, `1/T` at infinity.
    pub fn prime_element(&self, field: FieldSpec) -> RationalFunction {
        match self {
            Place::Infinity => RationalFunction::t(field).inv().unwrap(),
            Place::Finite(f) => RationalFunction::from_poly(f.clone()),
        }
    }
}

impl Ord for Place {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Place::Infinity, Place::Infinity) => Ordering::Equal,
            (Place::Infinity, _) => Ordering::Less,
            (_, Place::Infinity) => Ordering::Greater,
            (Place::Finite(a), Place::Finite(b)) => a.place_cmp(b),
        }
    }
}

impl PartialOrd for Place {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Infinity => f.write_str("inf"),
            Place::Finite(p) => write!(f, "{p}"),
        }
    }
}

impl fmt::Debug for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

/// Finite formal sum of places with nonzero coefficients.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Divisor {
    terms: BTreeMap<Place, i64>,
}

impl Divisor {
    pub fn zero() -> Self {
        Divisor::default()
    }

    pub fn from_place(place: Place, n: i64) -> Self {
        let mut d = Divisor::zero();
        d.add_term(place, n);
        d
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Place, i64)>) -> Self {
        let mut d = Divisor::zero();
        for (p, n) in terms {
            d.add_term(p, n);
        }
        d
    }

    pub fn add_term(&mut self, place: Place, n: i64) {
        let e = self.terms.entry(place).or_insert(0);
        *e += n;
        if *e == 0 {
            self.terms.retain(|_, v| *v != 0);
        }
    }

    pub fn coefficient(&self, place: &Place) -> i64 {
        self.terms.get(place).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Place, i64)> {
        self.terms.iter().map(|(p, &n)| (p, n))
    }

    pub fn support(&self) -> impl Iterator<Item = &Place> {
        self.terms.keys()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Σ n_P Deg(P)`.
    pub fn degree(&self) -> i64 {
        self.terms.iter().map(|(p, n)| n * p.degree() as i64).sum()
    }

    pub fn is_effective(&self) -> bool {
        self.terms.values().all(|&n| n > 0)
    }

    pub fn scale(&self, k: i64) -> Self {
        Divisor::from_terms(self.terms.iter().map(|(p, &n)| (p.clone(), n * k)))
    }
}

impl Add for &Divisor {
    type Output = Divisor;
    fn add(self, rhs: &Divisor) -> Divisor {
        let mut d = self.clone();
        for (p, &n) in &rhs.terms {
            d.add_term(p.clone(), n);
        }
        d
    }
}

impl Sub for &Divisor {
    type Output = Divisor;
    fn sub(self, rhs: &Divisor) -> Divisor {
        self + &rhs.scale(-1)
    }
}

impl Neg for &Divisor {
    type Output = Divisor;
    fn neg(self) -> Divisor {
        self.scale(-1)
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (p, &n)) in self.terms.iter().enumerate() {
            let sign = if n < 0 { "-" } else { "+" };
            if i > 0 {
                write!(f, " {sign} ")?;
            } else if n < 0 {
                f.write_str("-")?;
            }
            let m = n.abs();
            if m == 1 {
                write!(f, "[{p}]")?;
            } else {
                write!(f, "{m}[{p}]")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `v_P(x)`; infinity uses `deg den - deg num`.
pub fn valuation_at(x: &RationalFunction, place: &Place) -> Result<i64> {
    if x.is_zero() {
        return Err(Error::ZeroInput);
    }
    Ok(match place {
        Place::Infinity => x.den.degree() - x.num.degree(),
        Place::Finite(f) => multiplicity(&x.num, f) - multiplicity(&x.den, f),
    })
}

fn multiplicity(a: &Poly, f: &Poly) -> i64 {
    let mut a = a.clone();
    let mut m = 0;
    loop {
        let (q, r) = a.div_rem(f);
        if !r.is_zero() {
            return m;
        }
        a = q;
        m += 1;
    }
}

/// The principal divisor `(x)`.
pub fn divisor_of(x: &RationalFunction) -> Result<Divisor> {
    if x.is_zero() {
        return Err(Error::ZeroInput);
    }
    let mut d = Divisor::zero();
    for (f, m) in x.num.factor().1 {
        d.add_term(Place::Finite(f), m as i64);
    }
    for (f, m) in x.den.factor().1 {
        d.add_term(Place::Finite(f), -(m as i64));
    }
    d.add_term(Place::Infinity, valuation_at(x, &Place::Infinity)?);
    Ok(d)
}

/// `∞` followed by the monic irreducibles of degree `<= d`, in place order.
pub fn places_up_to_degree(field: FieldSpec, d: u32) -> Vec<Place> {
    let mut out = vec![Place::Infinity];
    for k in 1..=d as usize {
        let mut level: Vec<Poly> =
            Poly::monics_of_degree(field, k).filter(|f| f.is_irreducible()).collect();
        level.sort_by(|a, b| a.place_cmp(b));
        out.extend(level.into_iter().map(Place::Finite));
    }
    out
}

/// Number of monic irreducibles of degree `d` over `F_q` (necklace count).
pub fn irreducible_count(q: u64, d: u32) -> u64 {
    let mut total: i128 = 0;
    for k in 1..=d {
        if d % k == 0 {
            total += mobius(d / k) as i128 * (q as i128).pow(k);
        }
    }
    (total / d as i128) as u64
}

fn mobius(mut n: u32) -> i32 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

type RootCache = Mutex<HashMap<(FieldSpec, Vec<u64>), ExtFieldElem>>;

/// The least-index root of `f` in `F_P`; all local expansions at `(f)` use it.
pub fn place_root(f: &Poly) -> Result<ExtFieldElem> {
    static CACHE: OnceLock<RootCache> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let key = (f.field(), f.coeffs().iter().map(|c| c.index()).collect::<Vec<_>>());
    if let Some(r) = cache.lock().unwrap().get(&key) {
        return Ok(*r);
    }
    let fp = f.field().extension(f.degree() as u32)?;
    let root = *f
        .embed(fp)?
        .roots()
        .first()
        .ok_or_else(|| Error::OutOfRange(format!("{f} has no root in {fp}")))?;
    cache.lock().unwrap().insert(key, root);
    Ok(root)
}

/// `p(θ + s)` as an exact series in `s`.
fn taylor_shift(p: &Poly, theta: ExtFieldElem) -> Result<LaurentSeries> {
    let fp = theta.spec();
    let shift = Poly::new(fp, vec![theta, fp.one()]);
    let mut acc = Poly::zero(fp);
    for c in p.coeffs().iter().rev() {
        acc = &(&acc * &shift) + &Poly::constant(c.embed(fp)?);
    }
    Ok(LaurentSeries::new(fp, 0, acc.coeffs().to_vec(), None))
}

/// `t^{deg p} p(1/t)` as an exact series.
fn reversed(p: &Poly) -> LaurentSeries {
    let mut c = p.coeffs().to_vec();
    c.reverse();
    LaurentSeries::new(p.field(), 0, c, None)
}

/// `a/b` known modulo `t^n` (exact when `b` is a monomial).
fn quotient_to(a: &LaurentSeries, b: &LaurentSeries, n: i64) -> Result<LaurentSeries> {
    let vb = b.try_valuation()?;
    if b.terms().count() == 1 {
        return Ok(a * &b.inv()?);
    }
    let va = a.try_valuation()?;
    // a * inv(b) has precision v_a + (N_b - v_b) - v_b + v_b = v_a + N_b - 2 v_b
    let nb = (n - va + 2 * vb).max(vb + 1);
    Ok((a * &b.truncate(nb).inv()?).truncate(n))
}

/// Expansion of `x` in the canonical prime at `place`, known modulo `t^n`.
pub fn local_expand(x: &RationalFunction, place: &Place, n: i64) -> Result<LaurentSeries> {
    if x.is_zero() {
        return Err(Error::ZeroInput);
    }
    match place {
        Place::Infinity => {
            let shift = x.den.degree() - x.num.degree();
            let q = quotient_to(&reversed(&x.num), &reversed(&x.den), n - shift)?;
            Ok(q.shift(shift))
        }
        Place::Finite(f) => expand_finite(x, f, n),
    }
}

fn expand_finite(x: &RationalFunction, f: &Poly, n: i64) -> Result<LaurentSeries> {
    let theta = place_root(f)?;
    let num_s = taylor_shift(&x.num, theta)?;
    let den_s = taylor_shift(&x.den, theta)?;
    if f.degree() == 1 {
        // t = T - a = s exactly
        return quotient_to(&num_s, &den_s, n);
    }
    let phi = taylor_shift(f, theta)?;
    let v = num_s.try_valuation()? - den_s.try_valuation()?;
    let mut w = (n - v).max(1) + 2;
    for _ in 0..24 {
        let x_s = quotient_to(&num_s, &den_s, v + w)?;
        let s_t = phi.truncate(w + 1).reversion()?;
        let x_t = x_s.compose(&s_t)?;
        match x_t.precision() {
            Some(m) if m < n => w += n - m,
            _ => return Ok(x_t.truncate(n)),
        }
    }
    Err(Error::InsufficientPrecision(format!("expansion of {x} at ({f})")))
}

/// `dT/dt_P` in the canonical prime at `place`, known modulo `t^n`.
pub fn dt_over_dtp(place: &Place, field: FieldSpec, n: i64) -> Result<LaurentSeries> {
    match place {
        Place::Infinity => Ok(LaurentSeries::monomial(-field.one(), -2)),
        Place::Finite(f) => {
            let d = RationalFunction::from_poly(f.derivative()).inv()?;
            local_expand(&d, place, n)
        }
    }
}

/// Basis of `L(D) = {x : (x) + D >= 0} ∪ {0}` on the projective line:
/// `T^i / ∏ f^{n_f}` for `0 <= i <= Deg D`, where the product runs over the
/// finite part of `D`.
pub fn riemann_roch_basis(field: FieldSpec, d: &Divisor) -> Vec<RationalFunction> {
    let deg = d.degree();
    if deg < 0 {
        return Vec::new();
    }
    let mut num = Poly::one(field);
    let mut den = Poly::one(field);
    for (p, k) in d.terms() {
        if let Place::Finite(f) = p {
            if k > 0 {
                den = &den * &f.pow(k as u64);
            } else {
                num = &num * &f.pow((-k) as u64);
            }
        }
    }
    let base = RationalFunction::reduce(num, den);
    (0..=deg)
        .map(|i| &base * &RationalFunction::from_poly(Poly::monomial(field.one(), i as usize)))
        .collect()
}

/// `y` with `(y) = D`, for a divisor of degree zero.
pub fn principal_generator(field: FieldSpec, d: &Divisor) -> Result<RationalFunction> {
    if d.degree() != 0 {
        return Err(Error::OutOfRange(format!("divisor {d} has degree {}", d.degree())));
    }
    let basis = riemann_roch_basis(field, d);
    debug_assert_eq!(basis.len(), 1);
    basis[0].inv()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u64) -> FieldSpec {
        FieldSpec::with_order(q).unwrap()
    }

    fn poly(q: u64, c: &[i64]) -> Poly {
        Poly::from_ints(gf(q), c)
    }

    fn rf(q: u64, n: &[i64], d: &[i64]) -> RationalFunction {
        RationalFunction::new(poly(q, n), poly(q, d)).unwrap()
    }

    #[test]
    fn valuations() {
        let x = rf(2, &[0, 0, 1], &[1, 1]);
        assert_eq!(valuation_at(&x, &Place::Finite(poly(2, &[0, 1]))).unwrap(), 2);
        assert_eq!(valuation_at(&x, &Place::Infinity).unwrap(), -1);
        let c = RationalFunction::constant(gf(4).generator());
        assert_eq!(valuation_at(&c, &Place::Infinity).unwrap(), 0);
    }

    #[test]
    fn divisors() {
        let d = divisor_of(&rf(2, &[0, 1], &[1, 1])).unwrap();
        assert_eq!(d.to_string(), "[T] - [T+1]");
        assert_eq!(d.degree(), 0);
        assert!(divisor_of(&RationalFunction::one(gf(2))).unwrap().is_zero());
        let d = divisor_of(&rf(2, &[1, 1, 1], &[1])).unwrap();
        assert_eq!(d.to_string(), "-2[inf] + [T^2+T+1]");
    }

    #[test]
    fn place_lists() {
        let names = |q, d| {
            places_up_to_degree(gf(q), d).iter().map(|p| p.to_string()).collect::<Vec<_>>()
        };
        assert_eq!(names(2, 1), ["inf", "T", "T+1"]);
        assert_eq!(names(2, 2), ["inf", "T", "T+1", "T^2+T+1"]);
        assert_eq!(names(3, 1), ["inf", "T", "T+1", "T+2"]);
        for (q, d) in [(2, 5), (3, 3), (4, 3), (5, 2)] {
            for k in 1..=d {
                let n = places_up_to_degree(gf(q), d).iter().filter(|p| p.degree() == k && !p.is_infinite()).count();
                assert_eq!(n as u64, irreducible_count(q, k));
            }
        }
    }

    #[test]
    fn expansions() {
        let f2 = gf(2);
        let x = rf(2, &[1], &[1, 1]);
        let t_place = Place::Finite(poly(2, &[0, 1]));
        let e = local_expand(&x, &t_place, 4).unwrap();
        assert_eq!(e.to_string(), "1 + t + t^2 + t^3 + O(t^4)");
        let t = RationalFunction::t(f2);
        assert_eq!(local_expand(&t, &t_place, 5).unwrap(), LaurentSeries::t(f2));
        assert_eq!(
            local_expand(&t, &Place::Infinity, 5).unwrap(),
            LaurentSeries::monomial(f2.one(), -1)
        );
    }

    #[test]
    fn expansion_at_quadratic_place_reproduces_prime() {
        let f = poly(2, &[1, 1, 1]);
        let place = Place::Finite(f.clone());
        let e = local_expand(&RationalFunction::from_poly(f), &place, 6).unwrap();
        assert_eq!(e.truncate(6), LaurentSeries::t(gf(4)).truncate(6));
        let x = rf(2, &[1, 0, 1], &[0, 1, 1, 1]);
        let a = local_expand(&x, &place, 6).unwrap();
        let b = local_expand(&x.inv().unwrap(), &place, 6).unwrap();
        let prod = &a * &b;
        assert!((&prod - &LaurentSeries::one(gf(4))).is_zero_to_precision());
        assert_eq!(a.valuation(), Some(-1));
    }

    #[test]
    fn dt_ratios() {
        let f2 = gf(2);
        assert_eq!(
            dt_over_dtp(&Place::Finite(poly(2, &[0, 1])), f2, 5).unwrap(),
            LaurentSeries::one(f2)
        );
        assert_eq!(
            dt_over_dtp(&Place::Infinity, f2, 5).unwrap(),
            LaurentSeries::monomial(f2.one(), -2)
        );
        let u = dt_over_dtp(&Place::Finite(poly(2, &[1, 1, 1])), f2, 5).unwrap();
        assert_eq!(u.valuation(), Some(0));
        assert!(u.coeff(0).unwrap().is_one());
    }

    #[test]
    fn riemann_roch() {
        let f2 = gf(2);
        let b = riemann_roch_basis(f2, &Divisor::from_place(Place::Infinity, 2));
        let s: Vec<_> = b.iter().map(|x| x.to_string()).collect();
        assert_eq!(s, ["1", "T", "T^2"]);
        assert_eq!(riemann_roch_basis(f2, &Divisor::zero()).len(), 1);
        let b = riemann_roch_basis(f2, &Divisor::from_place(Place::Finite(poly(2, &[0, 1])), 1));
        let s: Vec<_> = b.iter().map(|x| x.to_string()).collect();
        assert_eq!(s, ["1/T", "1"]);
        let d = Divisor::from_terms([
            (Place::Finite(poly(2, &[1, 1, 1])), 1),
            (Place::Finite(poly(2, &[0, 1])), -3),
            (Place::Infinity, 1),
        ]);
        let y = principal_generator(f2, &d).unwrap();
        assert_eq!(divisor_of(&y).unwrap(), d);
    }
}
