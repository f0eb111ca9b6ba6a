//! The Artin-Schreier pairing `ψ_P(x, y) = Tr res(x dy/y)`, its global sum
//! over places, and the splitting of places in `K(℘^{-1} x)` for `K = F_q(T)`.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Neg};

use crate::adele_idele::{Idele, LocalElem};
use crate::error::{Error, Result};
use crate::finite_field::{solve_mod_p, ExtFieldElem, FieldSpec};
use crate::function_field::{divisor_of, local_expand, places_up_to_degree, valuation_at, Place, RationalFunction};
use crate::laurent_series::{reduce_mod_wp, LaurentSeries, WpReduction, WpStatus};
use crate::poly::Poly;

/// An element of the prime field `F_p`, the target of `ψ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ASCharacterValue {
    value: u8,
    p: u8,
}

impl ASCharacterValue {
    pub fn new(value: i64, p: u8) -> Self {
        ASCharacterValue { value: value.rem_euclid(p as i64) as u8, p }
    }

    pub fn zero(p: u8) -> Self {
        ASCharacterValue { value: 0, p }
    }

    /// Reads an element of the prime field.
    pub fn from_elem(e: &ExtFieldElem) -> Result<Self> {
        let sub = e.spec().prime_field();
        let e = e.restrict(sub)?.ok_or_else(|| Error::FieldMismatch(format!("{e} is not in F_{}", e.spec().p())))?;
        Ok(ASCharacterValue { value: e.coeffs()[0], p: sub.p() })
    }

    pub fn value(&self) -> u8 {
        self.value
    }

    pub fn p(&self) -> u8 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn scale(&self, k: i64) -> Self {
        ASCharacterValue::new(self.value as i64 * k, self.p)
    }
}

impl Add for ASCharacterValue {
    type Output = ASCharacterValue;

    fn add(self, o: ASCharacterValue) -> ASCharacterValue {
        assert_eq!(self.p, o.p, "characteristic mismatch");
        ASCharacterValue::new(self.value as i64 + o.value as i64, self.p)
    }
}

impl Neg for ASCharacterValue {
    type Output = ASCharacterValue;

    fn neg(self) -> ASCharacterValue {
        ASCharacterValue::new(-(self.value as i64), self.p)
    }
}

impl fmt::Display for ASCharacterValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// `ψ_P(x, y) = Tr_{F_P/F_p} res(x dy/y)` for series over `F_P`.
pub fn psi_local(x: &LaurentSeries, y: &LaurentSeries) -> Result<ASCharacterValue> {
    if x.field() != y.field() {
        return Err(Error::FieldMismatch("psi_local arguments over different fields".into()));
    }
    if y.is_zero_to_precision() {
        return Err(Error::ZeroInput);
    }
    let field = x.field();
    if x.is_exact_zero() {
        return Ok(ASCharacterValue::zero(field.p()));
    }
    let w = x * &y.log_derivative()?;
    let r = w.coeff(-1).ok_or_else(|| {
        Error::InsufficientPrecision(format!("residue of ({x}) d({y})/({y}) is not determined"))
    })?;
    ASCharacterValue::from_elem(&r.trace_to(field.prime_field())?)
}

/// `ψ_P(x, α_P)` for a global `x` at one place.
pub fn psi_at_place(x: &RationalFunction, alpha: &Idele, place: &Place) -> Result<ASCharacterValue> {
    let p = x.field().p();
    if x.is_zero() {
        return Ok(ASCharacterValue::zero(p));
    }
    // with α = t^v u, the residue only sees x mod t and u mod t^{m+1}
    let m = (-valuation_at(x, place)?).max(0);
    let v = alpha.component_valuation(place)?;
    let xs = local_expand(x, place, 1)?;
    let a = alpha.component_series(place, v + m + 1)?.truncate(v + m + 1);
    psi_local(&xs, &a)
}

/// Places where `ψ_P(x, α_P)` can be nonzero: the support of `α`, the zeros
/// and poles of `x`, and `∞`.
pub fn psi_relevant_places(x: &RationalFunction, alpha: &Idele) -> Result<BTreeSet<Place>> {
    let mut out = alpha.relevant_places()?;
    if !x.is_zero() {
        out.extend(divisor_of(x)?.support().cloned());
    }
    out.insert(Place::Infinity);
    Ok(out)
}

/// `ψ(x, α) = Σ_P ψ_P(x, α_P)`.
pub fn psi_global(x: &RationalFunction, alpha: &Idele) -> Result<ASCharacterValue> {
    if x.field() != alpha.field() {
        return Err(Error::FieldMismatch("psi_global arguments over different fields".into()));
    }
    let mut total = ASCharacterValue::zero(x.field().p());
    for place in psi_relevant_places(x, alpha)? {
        total = total + psi_at_place(x, alpha, &place)?;
    }
    Ok(total)
}

/// Result of an exhaustive check of the local kernel criterion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalKernelReport {
    pub checked: usize,
    /// `(x, y, ψ_P(x, y))` where the criterion fails.
    pub counterexamples: Vec<(LaurentSeries, LaurentSeries, ASCharacterValue)>,
}

/// All series `Σ_{i<n} a_i t^i` over `field`, known modulo `t^n`.
pub fn integral_truncations(field: FieldSpec, n: usize) -> Vec<LaurentSeries> {
    let q = field.order();
    let total = q.pow(n as u32);
    (0..total)
        .map(|mut idx| {
            let coeffs: Vec<ExtFieldElem> = (0..n)
                .map(|_| {
                    let c = field.element(idx % q);
                    idx /= q;
                    c
                })
                .collect();
            LaurentSeries::new(field, 0, coeffs, Some(n as i64))
        })
        .collect()
}

/// Checks `ψ_P(x, t^k u) = 0 ⟺ p | k or x ∈ ℘K_P` for every integral `x`
/// and unit `u` known modulo `t^n`, and `k` in `[-p, p]`.
pub fn verify_local_kernel(field: FieldSpec, n: usize) -> Result<LocalKernelReport> {
    if n == 0 {
        return Err(Error::OutOfRange("precision must be positive".into()));
    }
    let p = field.p() as i64;
    let xs = integral_truncations(field, n);
    let units: Vec<LaurentSeries> = xs.iter().filter(|u| u.valuation() == Some(0)).cloned().collect();
    let mut report = LocalKernelReport { checked: 0, counterexamples: Vec::new() };
    for x in &xs {
        let in_wp = reduce_mod_wp(x)?.status == WpStatus::InWp;
        for u in &units {
            for k in -p..=p {
                let y = u.shift(k);
                let psi = psi_local(x, &y)?;
                report.checked += 1;
                if psi.is_zero() != (k % p == 0 || in_wp) {
                    report.counterexamples.push((x.clone(), y, psi));
                }
            }
        }
    }
    Ok(report)
}

/// Splitting type of a place in `K(℘^{-1} x)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Splitting {
    Split,
    Inert,
    Ramified,
}

impl fmt::Display for Splitting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Splitting::Split => "SPLIT",
            Splitting::Inert => "INERT",
            Splitting::Ramified => "RAMIFIED",
        })
    }
}

/// A solution `z` of `z^p - z = x` in `K`, if one exists.
///
/// A solution has poles only where `x` does, of order `v_P(x)/p`, so with
/// `h = ∏ f^{m_f/p}` it is `a/h` with `deg a <= deg h + m_∞/p`, and
/// `a^p - a h^{p-1} = x h^p` is an `F_p`-linear system in the coefficients of `a`.
pub fn wp_preimage(x: &RationalFunction) -> Result<Option<RationalFunction>> {
    let field = x.field();
    if x.is_zero() {
        return Ok(Some(RationalFunction::zero(field)));
    }
    let p = field.p() as i64;
    let (_, factors) = x.denominator().factor();
    let mut h = Poly::one(field);
    for (f, m) in factors {
        if m as i64 % p != 0 {
            return Ok(None);
        }
        h = &h * &f.pow(m as u64 / p as u64);
    }
    let m_inf = x.numerator().degree() - x.denominator().degree();
    if m_inf > 0 && m_inf % p != 0 {
        return Ok(None);
    }
    let d = (h.degree() + m_inf.max(0) / p) as usize;
    let hp1 = h.pow(p as u64 - 1);
    let rhs_poly = (x.numerator() * &h.pow(p as u64)).exact_div(x.denominator());
    let r = field.degree() as usize;
    let basis: Vec<ExtFieldElem> = (0..r)
        .map(|j| {
            let mut c = vec![0i64; r];
            c[j] = 1;
            field.from_coeffs(&c).expect("basis element")
        })
        .collect();
    let images: Vec<Poly> = (0..=d)
        .flat_map(|i| basis.iter().map(move |b| (i, b.clone())))
        .map(|(i, b)| {
            let a = Poly::monomial(b, i);
            &a.pow(p as u64) - &(&a * &hp1)
        })
        .collect();
    let len = images.iter().map(|q| q.degree() + 1).max().unwrap_or(0).max(rhs_poly.degree() + 1) as usize;
    let flatten = |q: &Poly| -> Vec<u32> {
        let mut out = vec![0u32; len * r];
        for (i, c) in q.coeffs().iter().enumerate() {
            for (j, &v) in c.coeffs().iter().enumerate() {
                out[i * r + j] = v as u32;
            }
        }
        out
    };
    if (rhs_poly.degree() + 1) as usize > len {
        return Ok(None);
    }
    let cols: Vec<Vec<u32>> = images.iter().map(flatten).collect();
    let Some(sol) = solve_mod_p(&cols, &flatten(&rhs_poly), p as u32) else {
        return Ok(None);
    };
    let coeffs: Vec<ExtFieldElem> = sol
        .chunks(r)
        .map(|c| field.from_coeffs(&c.iter().map(|&v| v as i64).collect::<Vec<_>>()).expect("coefficient"))
        .collect();
    let z = RationalFunction::new(Poly::new(field, coeffs), h)?;
    debug_assert_eq!(&(&z.pow(p)? - &z), x);
    Ok(Some(z))
}

/// Whether `x ∈ ℘K`.
pub fn in_wp(x: &RationalFunction) -> Result<bool> {
    Ok(wp_preimage(x)?.is_some())
}

/// Splitting of `place` in `K(℘^{-1} x)` read off the local reduction of `x`
/// modulo `℘K_P`, without checking that the extension is nontrivial.
pub fn classify_local(x: &RationalFunction, place: &Place) -> Result<(Splitting, WpReduction)> {
    let red = if x.is_zero() {
        let fp = place.residue_field(x.field())?;
        reduce_mod_wp(&LaurentSeries::zero(fp))?
    } else {
        reduce_mod_wp(&local_expand(x, place, 1)?)?
    };
    let kind = match red.status {
        WpStatus::InWp => Splitting::Split,
        WpStatus::UnitObstruction => Splitting::Inert,
        WpStatus::PoleObstruction => Splitting::Ramified,
    };
    Ok((kind, red))
}

/// Splitting of `place` in the degree-`p` extension `K(℘^{-1} x)`.
pub fn classify_place_in_as_ext(x: &RationalFunction, place: &Place) -> Result<Splitting> {
    if in_wp(x)? {
        return Err(Error::DegenerateExtension);
    }
    Ok(classify_local(x, place)?.0)
}

/// One row of a splitting table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplittingRow {
    pub place: Place,
    pub degree: u32,
    pub kind: Splitting,
    /// The obstruction: the surviving constant for inert places, the leading
    /// polar term for ramified ones, and `z mod t` with `x ≡ ℘z` for split ones.
    pub witness: String,
}

/// Classifies every place of degree `<= max_degree`.
pub fn splitting_table(x: &RationalFunction, max_degree: u32) -> Result<Vec<SplittingRow>> {
    if in_wp(x)? {
        return Err(Error::DegenerateExtension);
    }
    places_up_to_degree(x.field(), max_degree)
        .into_iter()
        .map(|place| {
            let (kind, red) = classify_local(x, &place)?;
            let witness = match kind {
                Splitting::Split => red.witness.truncate(1).to_string(),
                Splitting::Inert => red.reduced.coeff(0).map(|c| c.to_string()).unwrap_or_default(),
                Splitting::Ramified => {
                    let v = red.reduced.valuation().unwrap_or(0);
                    LaurentSeries::monomial(red.reduced.leading_coeff().unwrap(), v).to_string()
                }
            };
            Ok(SplittingRow { degree: place.degree(), place, kind, witness })
        })
        .collect()
}

/// Outcome of deciding `x ∈ ℘K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WpVerdict {
    Solved(RationalFunction),
    LocallyObstructed(Place, Splitting),
    Undecided,
}

/// `Solved(z)` with `℘z = x` when `x ∈ ℘K`; otherwise the first place of
/// degree `<= d` that does not split, or `Undecided` if there is none.
pub fn in_wp_global(x: &RationalFunction, d: u32) -> Result<WpVerdict> {
    if let Some(z) = wp_preimage(x)? {
        return Ok(WpVerdict::Solved(z));
    }
    for place in places_up_to_degree(x.field(), d) {
        let (kind, _) = classify_local(x, &place)?;
        if kind != Splitting::Split {
            return Ok(WpVerdict::LocallyObstructed(place, kind));
        }
    }
    Ok(WpVerdict::Undecided)
}

/// The prime ideles `[t_P (1 + b t_P^j)]_P` for `b ∈ F_P`, `1 <= j <= max_j`,
/// together with `[t_P]_P` itself.
pub fn prime_ideles_at(field: FieldSpec, place: &Place, max_j: i64) -> Result<Vec<Idele>> {
    let fp = place.residue_field(field)?;
    let t = LaurentSeries::t(fp);
    let mut out = vec![Idele::prime_at(field, place.clone())];
    for j in 1..=max_j {
        for b in fp.elements().filter(|b| !b.is_zero()) {
            let u = &LaurentSeries::one(fp) + &LaurentSeries::monomial(b, j);
            out.push(Idele::at_place(field, place.clone(), LocalElem::Series(&t * &u))?);
        }
    }
    Ok(out)
}

/// Values of `ψ(x, ·)` on the prime ideles of [`prime_ideles_at`] over the
/// places of degree `<= max_degree`, each with a first idele attaining it.
pub fn prime_idele_values(x: &RationalFunction, max_degree: u32) -> Result<Vec<(ASCharacterValue, Idele)>> {
    let mut seen: Vec<(ASCharacterValue, Idele)> = Vec::new();
    let p = x.field().p() as usize;
    for place in places_up_to_degree(x.field(), max_degree) {
        let j = (-valuation_at(x, &place)?).max(1);
        for a in prime_ideles_at(x.field(), &place, j)? {
            let v = psi_global(x, &a)?;
            if !seen.iter().any(|(w, _)| *w == v) {
                seen.push((v, a));
                if seen.len() == p {
                    seen.sort_by_key(|(v, _)| *v);
                    return Ok(seen);
                }
            }
        }
    }
    seen.sort_by_key(|(v, _)| *v);
    Ok(seen)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse;

    fn gf(q: u64) -> FieldSpec {
        FieldSpec::with_order(q).unwrap()
    }

    fn rat(q: u64, s: &str) -> RationalFunction {
        parse::parse_rational(s, gf(q)).unwrap()
    }

    fn series(q: u64, s: &str) -> LaurentSeries {
        parse::parse_series(s, gf(q)).unwrap()
    }

    fn place(q: u64, s: &str) -> Place {
        parse::parse_place(s, gf(q)).unwrap()
    }

    #[test]
    fn local_examples() {
        assert_eq!(psi_local(&series(2, "1"), &series(2, "t")).unwrap().value(), 1);
        assert_eq!(psi_local(&series(2, "1"), &series(2, "t^2")).unwrap().value(), 0);
        assert_eq!(psi_local(&series(2, "t"), &series(2, "t")).unwrap().value(), 0);
        assert!(psi_local(&series(2, "1"), &series(2, "O(t^3)")).is_err());
    }

    #[test]
    fn global_examples() {
        let f2 = gf(2);
        let a = Idele::prime_at(f2, place(2, "T"));
        assert_eq!(psi_global(&rat(2, "1/(T+1)"), &a).unwrap().value(), 1);
        let y = Idele::principal(rat(2, "T^3/(T^2+T+1)")).unwrap();
        assert!(psi_global(&rat(2, "(T+1)/T^2"), &y).unwrap().is_zero());
        let wp = rat(2, "T^4/(T+1)^2 + T^2/(T+1)");
        assert!(in_wp(&wp).unwrap());
        assert!(psi_global(&wp, &a).unwrap().is_zero());
    }

    #[test]
    fn wp_solver() {
        assert_eq!(wp_preimage(&rat(2, "T^2+T")).unwrap(), Some(rat(2, "T")));
        assert_eq!(wp_preimage(&rat(2, "0")).unwrap(), Some(rat(2, "0")));
        assert_eq!(wp_preimage(&rat(2, "T")).unwrap(), None);
        assert_eq!(wp_preimage(&rat(2, "1")).unwrap(), None);
        assert!(wp_preimage(&rat(4, "1")).unwrap().is_some());
        assert!(wp_preimage(&rat(4, "g")).unwrap().is_none());
        let z = rat(3, "(T^2+1)/(T+2)^2");
        let x = &z.pow(3).unwrap() - &z;
        let w = wp_preimage(&x).unwrap().unwrap();
        assert_eq!(&w.pow(3).unwrap() - &w, x);
    }

    #[test]
    fn classification_examples() {
        let x = rat(2, "T");
        assert_eq!(classify_place_in_as_ext(&x, &place(2, "T")).unwrap(), Splitting::Split);
        assert_eq!(classify_place_in_as_ext(&x, &Place::Infinity).unwrap(), Splitting::Ramified);
        assert_eq!(classify_place_in_as_ext(&x, &place(2, "T+1")).unwrap(), Splitting::Inert);
        assert_eq!(classify_place_in_as_ext(&rat(2, "T^2+T"), &Place::Infinity), Err(Error::DegenerateExtension));
        assert_eq!(in_wp_global(&x, 1).unwrap(), WpVerdict::LocallyObstructed(Place::Infinity, Splitting::Ramified));
        assert_eq!(in_wp_global(&rat(2, "T^2+T"), 2).unwrap(), WpVerdict::Solved(rat(2, "T")));
    }

    #[test]
    fn local_kernel_small() {
        let r = verify_local_kernel(gf(2), 3).unwrap();
        assert!(r.counterexamples.is_empty());
        assert!(r.checked > 0);
        assert!(verify_local_kernel(gf(4), 2).unwrap().counterexamples.is_empty());
    }

    #[test]
    fn nondegenerate_values() {
        let vals = prime_idele_values(&rat(3, "T"), 2).unwrap();
        assert_eq!(vals.len(), 3);
        let vals = prime_idele_values(&rat(2, "T"), 1).unwrap();
        assert_eq!(vals.len(), 2);
    }
}
