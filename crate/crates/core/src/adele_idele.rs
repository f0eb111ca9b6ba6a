//! Ideles and adeles of `F_q(T)`, idelic degree, norms from constant-field
//! extensions and the residue functional on adeles.
//!
//! An idele is stored as a global factor times finitely many local
//! corrections, so principal ideles are exact and every other component is
//! `rational_part · correction(P)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::finite_field::{ExtFieldElem, FieldSpec};
use crate::function_field::{
    divisor_of, dt_over_dtp, local_expand, place_root, valuation_at, Place, RationalFunction,
};
use crate::laurent_series::{recompose_in_prime, LaurentSeries};
use crate::parse;
use crate::poly::Poly;

/// Precision used when a global correction must be turned into a series.
pub const DEFAULT_LOCAL_PRECISION: i64 = 12;

/// A local component: either a global function read at the place, or an
/// explicit series in the canonical prime with coefficients in `F_P`.
#[derive(Clone, PartialEq, Eq)]
pub enum LocalElem {
    Global(RationalFunction),
    Series(LaurentSeries),
}

impl LocalElem {
    pub fn valuation(&self, place: &Place) -> Result<i64> {
        match self {
            LocalElem::Global(x) => valuation_at(x, place),
            LocalElem::Series(s) => s.try_valuation(),
        }
    }

    /// The local series, known modulo `t^n` (exact series are returned as is).
    pub fn expand(&self, place: &Place, n: i64) -> Result<LaurentSeries> {
        match self {
            LocalElem::Global(x) => local_expand(x, place, n),
            LocalElem::Series(s) => Ok(s.clone()),
        }
    }

    fn is_zero(&self) -> bool {
        match self {
            LocalElem::Global(x) => x.is_zero(),
            LocalElem::Series(s) => s.is_exact_zero(),
        }
    }

    fn is_one(&self) -> bool {
        match self {
            LocalElem::Global(x) => x.is_one(),
            LocalElem::Series(s) => s.is_exact() && s == &LaurentSeries::one(s.field()),
        }
    }
}

impl fmt::Display for LocalElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LocalElem::Global(x) => write!(f, "{x}"),
            LocalElem::Series(s) => write!(f, "{s}"),
        }
    }
}

impl fmt::Debug for LocalElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Multiplies two local elements at `place`, expanding a global factor to
/// the relative precision of the series factor.
fn local_mul(place: &Place, a: &LocalElem, b: &LocalElem) -> Result<LocalElem> {
    Ok(match (a, b) {
        (LocalElem::Global(x), LocalElem::Global(y)) => LocalElem::Global(x * y),
        (LocalElem::Series(s), LocalElem::Global(x)) | (LocalElem::Global(x), LocalElem::Series(s)) => {
            LocalElem::Series(&match_precision(x, place, s)? * s)
        }
        (LocalElem::Series(s), LocalElem::Series(r)) => LocalElem::Series(s * r),
    })
}

/// Expansion of `x` accurate enough that its product with `s` keeps `s`'s precision.
fn match_precision(x: &RationalFunction, place: &Place, s: &LaurentSeries) -> Result<LaurentSeries> {
    let vx = valuation_at(x, place)?;
    let n = match (s.precision(), s.valuation()) {
        (Some(n), Some(v)) => vx + (n - v),
        (Some(n), None) => vx + n.max(1),
        (None, _) => vx + DEFAULT_LOCAL_PRECISION,
    };
    local_expand(x, place, n)
}

fn local_inv(a: &LocalElem) -> Result<LocalElem> {
    Ok(match a {
        LocalElem::Global(x) => LocalElem::Global(x.inv()?),
        LocalElem::Series(s) => LocalElem::Series(match s.inv() {
            Ok(i) => i,
            // an exact non-monomial series has no exact inverse
            Err(Error::InsufficientPrecision(_)) => s.truncate(s.try_valuation()? + DEFAULT_LOCAL_PRECISION).inv()?,
            Err(e) => return Err(e),
        }),
    })
}

fn local_pow(a: &LocalElem, e: i64) -> Result<LocalElem> {
    if e < 0 {
        return local_pow(&local_inv(a)?, -e);
    }
    Ok(match a {
        LocalElem::Global(x) => LocalElem::Global(x.pow(e)?),
        LocalElem::Series(s) => LocalElem::Series(s.pow(e)?),
    })
}

fn check_series_field(place: &Place, field: FieldSpec, s: &LaurentSeries) -> Result<()> {
    let fp = place.residue_field(field)?;
    if s.field() != fp {
        return Err(Error::FieldMismatch(format!(
            "component at {place} must have coefficients in {fp}, found {}",
            s.field()
        )));
    }
    Ok(())
}

/// An idele `rational_part · ∏_P [correction_P]_P`.
#[derive(Clone, PartialEq, Eq)]
pub struct Idele {
    field: FieldSpec,
    rational_part: RationalFunction,
    corrections: BTreeMap<Place, LocalElem>,
}

impl Idele {
    pub fn one(field: FieldSpec) -> Self {
        Idele { field, rational_part: RationalFunction::one(field), corrections: BTreeMap::new() }
    }

    /// The diagonal image of `x ∈ K^×`.
    pub fn principal(x: RationalFunction) -> Result<Self> {
        if x.is_zero() {
            return Err(Error::ZeroInput);
        }
        Ok(Idele { field: x.field(), rational_part: x, corrections: BTreeMap::new() })
    }

    /// `[a]_P`: `a` at `P` and 1 elsewhere.
    pub fn at_place(field: FieldSpec, place: Place, a: LocalElem) -> Result<Self> {
        Idele::one(field).with_correction(place, a)
    }

    /// `[t_P]_P` for the canonical prime at `P`.
    pub fn prime_at(field: FieldSpec, place: Place) -> Self {
        let t = place.prime_element(field);
        Idele::at_place(field, place, LocalElem::Global(t)).unwrap()
    }

    pub fn new(
        field: FieldSpec,
        rational_part: RationalFunction,
        corrections: impl IntoIterator<Item = (Place, LocalElem)>,
    ) -> Result<Self> {
        if rational_part.field() != field {
            return Err(Error::FieldMismatch("rational part over a different field".into()));
        }
        let mut out = Idele::principal(rational_part)?;
        for (p, a) in corrections {
            out = out.with_correction(p, a)?;
        }
        Ok(out)
    }

    /// Multiplies the correction at `place` by `a`.
    pub fn with_correction(mut self, place: Place, a: LocalElem) -> Result<Self> {
        if a.is_zero() {
            return Err(Error::ZeroInput);
        }
        match &a {
            LocalElem::Global(x) if x.field() != self.field => {
                return Err(Error::FieldMismatch("correction over a different field".into()))
            }
            LocalElem::Series(s) => check_series_field(&place, self.field, s)?,
            _ => {}
        }
        a.valuation(&place)?;
        let merged = match self.corrections.remove(&place) {
            Some(old) => local_mul(&place, &old, &a)?,
            None => a,
        };
        if !merged.is_one() {
            self.corrections.insert(place, merged);
        }
        Ok(self)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rational_part(&self) -> &RationalFunction {
        &self.rational_part
    }

    pub fn corrections(&self) -> &BTreeMap<Place, LocalElem> {
        &self.corrections
    }

    pub fn correction(&self, place: &Place) -> Option<&LocalElem> {
        self.corrections.get(place)
    }

    pub fn is_principal(&self) -> bool {
        self.corrections.is_empty()
    }

    /// Places where the component may fail to be a unit.
    pub fn relevant_places(&self) -> Result<BTreeSet<Place>> {
        let mut out: BTreeSet<Place> = self.corrections.keys().cloned().collect();
        out.extend(divisor_of(&self.rational_part)?.support().cloned());
        Ok(out)
    }

    pub fn component_valuation(&self, place: &Place) -> Result<i64> {
        let v = valuation_at(&self.rational_part, place)?;
        Ok(v + match self.corrections.get(place) {
            Some(c) => c.valuation(place)?,
            None => 0,
        })
    }

    /// The component at `place` as a local element.
    pub fn component(&self, place: &Place) -> Result<LocalElem> {
        let r = LocalElem::Global(self.rational_part.clone());
        match self.corrections.get(place) {
            Some(c) => local_mul(place, &r, c),
            None => Ok(r),
        }
    }

    /// The component at `place` as a series known modulo `t^n` (or better).
    pub fn component_series(&self, place: &Place, n: i64) -> Result<LaurentSeries> {
        let vr = valuation_at(&self.rational_part, place)?;
        match self.corrections.get(place) {
            None => local_expand(&self.rational_part, place, n),
            Some(LocalElem::Global(c)) => local_expand(&(&self.rational_part * c), place, n),
            Some(LocalElem::Series(s)) => {
                let vc = s.try_valuation()?;
                let r = local_expand(&self.rational_part, place, n - vc)?;
                let _ = vr;
                Ok(&r * s)
            }
        }
    }

    pub fn mul(&self, other: &Idele) -> Result<Idele> {
        if self.field != other.field {
            return Err(Error::FieldMismatch("ideles over different fields".into()));
        }
        let mut out = Idele::principal(&self.rational_part * &other.rational_part)?;
        out.corrections = self.corrections.clone();
        for (p, a) in &other.corrections {
            out = out.with_correction(p.clone(), a.clone())?;
        }
        Ok(out)
    }

    pub fn inv(&self) -> Result<Idele> {
        let mut out = Idele::principal(self.rational_part.inv()?)?;
        for (p, a) in &self.corrections {
            out.corrections.insert(p.clone(), local_inv(a)?);
        }
        Ok(out)
    }

    pub fn pow(&self, e: i64) -> Result<Idele> {
        let mut out = Idele::principal(self.rational_part.pow(e)?)?;
        for (p, a) in &self.corrections {
            let c = local_pow(a, e)?;
            if !c.is_one() {
                out.corrections.insert(p.clone(), c);
            }
        }
        Ok(out)
    }

    /// JSON object `{"q", "rational_part", "corrections"}`; series corrections
    /// are written over `F_P` with `g` its generator.
    pub fn to_json(&self) -> Value {
        let mut corr = Map::new();
        for (p, a) in &self.corrections {
            corr.insert(p.to_string(), Value::String(correction_string(a)));
        }
        json!({
            "q": self.field.order(),
            "rational_part": self.rational_part.to_string(),
            "corrections": Value::Object(corr),
        })
    }

    pub fn from_json(v: &Value) -> Result<Idele> {
        let field = field_from_json(v)?;
        let rational = match v.get("rational_part") {
            None => RationalFunction::one(field),
            Some(Value::String(s)) => parse::parse_rational(s, field)?,
            Some(other) => return Err(Error::Parse(format!("rational_part must be a string, got {other}"))),
        };
        let mut out = Idele::principal(rational).map_err(|e| Error::Parse(e.to_string()))?;
        if let Some(c) = v.get("corrections") {
            let obj = c
                .as_object()
                .ok_or_else(|| Error::Parse("corrections must be an object".into()))?;
            for (k, val) in obj {
                let place = parse::parse_place(k, field)?;
                let s = val
                    .as_str()
                    .ok_or_else(|| Error::Parse(format!("correction at {k} must be a string")))?;
                let elem = parse_local_elem(s, &place, field)?;
                out = out.with_correction(place, elem).map_err(|e| Error::Parse(e.to_string()))?;
            }
        }
        Ok(out)
    }
}

/// A constant series is written as `c*t^0` so that it reads back as a series over `F_P`.
fn correction_string(a: &LocalElem) -> String {
    let s = a.to_string();
    match a {
        LocalElem::Series(_) if !s.contains('t') && !s.contains('O') => format!("({s})*t^0"),
        _ => s,
    }
}

/// Reads `q` (number or `GF(q)` string) or `field` from a JSON object.
pub fn field_from_json(v: &Value) -> Result<FieldSpec> {
    let raw = v.get("q").or_else(|| v.get("field"));
    match raw {
        Some(Value::Number(n)) => {
            let q = n.as_u64().ok_or_else(|| Error::Parse(format!("bad field order {n}")))?;
            FieldSpec::with_order(q).map_err(|e| Error::Parse(e.to_string()))
        }
        Some(Value::String(s)) => s.parse().map_err(|e: Error| Error::Parse(e.to_string())),
        _ => Err(Error::Parse("missing field order `q`".into())),
    }
}

/// A correction string: a series in `t` over `F_P`, or a rational function in `T`.
pub fn parse_local_elem(s: &str, place: &Place, field: FieldSpec) -> Result<LocalElem> {
    if s.contains('t') || s.contains('O') {
        let fp = place.residue_field(field)?;
        Ok(LocalElem::Series(parse::parse_series(s, fp)?))
    } else {
        Ok(LocalElem::Global(parse::parse_rational(s, field)?))
    }
}

impl fmt::Display for Idele {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_json())
    }
}

impl fmt::Debug for Idele {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `Σ_P Deg(P) v_P(α_P)`, so that `|α| = q^{-result}`.
pub fn idele_degree(a: &Idele) -> Result<i64> {
    let mut total = 0;
    for p in a.relevant_places()? {
        total += p.degree() as i64 * a.component_valuation(&p)?;
    }
    Ok(total)
}

/// The generator `[T]_{(T)}` of the degree part.
pub fn gamma_generator(field: FieldSpec) -> Idele {
    Idele::prime_at(field, Place::Finite(Poly::x(field)))
}

/// `(β, m)` with `α = β γ^m`, `γ = [T]_{(T)}` and `deg β = 0`.
pub fn decompose_c0_gamma(a: &Idele) -> Result<(Idele, i64)> {
    let m = idele_degree(a)?;
    let beta = a.mul(&gamma_generator(a.field()).pow(-m)?)?;
    Ok((beta, m))
}

/// Places of `F_{q^n}(T)` above `P`, each with its residue degree `n / gcd(n, Deg P)`.
pub fn constant_ext_places_above(place: &Place, base: FieldSpec, n: u32) -> Result<Vec<(Place, u32)>> {
    let up = base.extension(n)?;
    match place {
        Place::Infinity => Ok(vec![(Place::Infinity, n)]),
        Place::Finite(f) => {
            let factors = f.embed(up)?.irreducible_factors();
            let g = factors.len() as u32;
            Ok(factors.into_iter().map(|h| (Place::Finite(h), n / g)).collect())
        }
    }
}

/// The place of `F_q(T)` below a place of `F_{q^n}(T)`.
pub fn place_below(place: &Place, base: FieldSpec) -> Result<Place> {
    match place {
        Place::Infinity => Ok(Place::Infinity),
        Place::Finite(g) => {
            let up = g.field();
            let r = base.degree() as i64;
            let n = up.degree_over(&base)? as i64;
            let mut norm = Poly::one(up);
            for i in 0..n {
                norm = &norm * &g.frobenius(r * i);
            }
            let norm = norm
                .restrict(base)?
                .ok_or_else(|| Error::FieldMismatch(format!("norm of {g} is not defined over {base}")))?;
            Ok(Place::Finite(norm.irreducible_factors().swap_remove(0)))
        }
    }
}

/// `N_{L/K}(y) = ∏_{i<n} σ^i(y)` for `y ∈ F_{q^n}(T)`.
pub fn field_norm(y: &RationalFunction, base: FieldSpec) -> Result<RationalFunction> {
    let up = y.field();
    let r = base.degree() as i64;
    let n = up.degree_over(&base)? as i64;
    let mut acc = RationalFunction::one(up);
    for i in 0..n {
        acc = &acc * &y.frobenius(r * i);
    }
    acc.restrict(base)?
        .ok_or_else(|| Error::FieldMismatch("norm is not defined over the base".into()))
}

/// Local norm `N_{L_𝔓/K_P}` of a local element at the upstairs place `up_place`.
///
/// The element is re-expanded in the base prime `t_P` (still a prime at `𝔓`
/// since constant extensions are unramified), the Galois conjugates are
/// taken coefficientwise by the Frobenius of `F_𝔓/F_P`, and the product is
/// pulled back along the embedding `F_P -> F_𝔓` sending the canonical root
/// of `P` to that of `𝔓`.
pub fn local_norm(
    elem: &LocalElem,
    up_place: &Place,
    base: FieldSpec,
    precision: i64,
) -> Result<(Place, LaurentSeries)> {
    let up_field = match elem {
        LocalElem::Global(x) => x.field(),
        LocalElem::Series(s) => {
            let deg_up = s.field().degree() as u32;
            let r = base.degree() as u32;
            FieldSpec::new(base.p() as u32, r * (deg_up / (r * up_place.degree()) ))?
        }
    };
    let down = place_below(up_place, base)?;
    let r = base.degree() as i64;
    let d = down.degree() as i64;
    let f_p = down.residue_field(base)?;
    let f_up = up_place.residue_field(up_field)?;
    let f_res = (f_up.degree() as i64) / (f_p.degree() as i64);
    let v = elem.valuation(up_place)?;
    let series_up = match elem {
        LocalElem::Global(x) => local_expand(x, up_place, v + precision)?,
        LocalElem::Series(s) => s.clone(),
    };
    // pull back along F_P -> F_𝔓
    let (in_base_prime, shift) = match (&down, up_place) {
        (Place::Infinity, _) => (series_up, 0),
        (Place::Finite(f), Place::Finite(_)) => {
            let series_up = if series_up.is_exact() { series_up.truncate(v + precision) } else { series_up };
            let rel = series_up.precision().unwrap() - v;
            let u = local_expand(&RationalFunction::from_poly(f.embed(up_field)?), up_place, rel + 2)?
                .truncate(rel + 2);
            let theta_p = place_root(f)?.embed(f_up)?;
            let theta_up = place_root(up_place.poly().unwrap())?;
            let mut k = None;
            for i in 0..d {
                if theta_p.frobenius_power(r * i) == theta_up {
                    k = Some(r * i);
                    break;
                }
            }
            let k = k.ok_or_else(|| Error::FieldMismatch("no embedding of residue fields".into()))?;
            (recompose_in_prime(&series_up, &u)?, k)
        }
        _ => unreachable!("infinity lies only over infinity"),
    };
    let mut prod = LaurentSeries::one(f_up);
    for j in 0..f_res {
        prod = &prod * &in_base_prime.frobenius_coeffs(r * d * j);
    }
    let pulled = prod.frobenius_coeffs(-shift);
    let down_series = pulled
        .restrict(f_p)?
        .ok_or_else(|| Error::FieldMismatch("local norm has coefficients outside F_P".into()))?;
    Ok((down, down_series))
}

/// `N_{L/K}(α)` for an idele of `L = F_{q^n}(T)`: the global norm of the
/// rational part times the local norms of the corrections.
pub fn norm_from_constant_ext(a: &Idele, base: FieldSpec, precision: i64) -> Result<Idele> {
    let mut out = Idele::principal(field_norm(a.rational_part(), base)?)?;
    for (p, c) in a.corrections() {
        // a correction defined over K is fixed by G(L_𝔓/K_P)
        if let LocalElem::Global(x) = c {
            if let Some(y) = x.restrict(base)? {
                let down = place_below(p, base)?;
                let f = p.residue_field(a.field())?.degree() / down.residue_field(base)?.degree();
                out = out.with_correction(down, LocalElem::Global(y.pow(f as i64)?))?;
                continue;
            }
        }
        let (down, s) = local_norm(c, p, base, precision)?;
        out = out.with_correction(down, LocalElem::Series(s))?;
    }
    Ok(out)
}

/// The diagonal embedding `K^× -> I_L` composed with constant extension.
pub fn extend_idele(a: &Idele, up: FieldSpec) -> Result<Idele> {
    if a.is_principal() {
        return Idele::principal(a.rational_part().embed(up)?);
    }
    Err(Error::Unsupported("extension of non-principal ideles".into()))
}

/// An adele `rational_part + Σ_P [correction_P]_P`.
#[derive(Clone, PartialEq, Eq)]
pub struct Adele {
    field: FieldSpec,
    rational_part: RationalFunction,
    corrections: BTreeMap<Place, LocalElem>,
}

impl Adele {
    pub fn zero(field: FieldSpec) -> Self {
        Adele { field, rational_part: RationalFunction::zero(field), corrections: BTreeMap::new() }
    }

    pub fn principal(x: RationalFunction) -> Self {
        Adele { field: x.field(), rational_part: x, corrections: BTreeMap::new() }
    }

    pub fn at_place(field: FieldSpec, place: Place, a: LocalElem) -> Result<Self> {
        if let LocalElem::Series(s) = &a {
            check_series_field(&place, field, s)?;
        }
        let mut out = Adele::zero(field);
        out.corrections.insert(place, a);
        Ok(out)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rational_part(&self) -> &RationalFunction {
        &self.rational_part
    }

    pub fn corrections(&self) -> &BTreeMap<Place, LocalElem> {
        &self.corrections
    }

    pub fn add(&self, other: &Adele) -> Result<Adele> {
        let mut out = Adele::principal(&self.rational_part + &other.rational_part);
        out.corrections = self.corrections.clone();
        for (p, a) in &other.corrections {
            let merged = match out.corrections.remove(p) {
                None => a.clone(),
                Some(LocalElem::Global(x)) => match a {
                    LocalElem::Global(y) => LocalElem::Global(&x + y),
                    LocalElem::Series(s) => LocalElem::Series(&match_precision_add(&x, p, s)? + s),
                },
                Some(LocalElem::Series(s)) => match a {
                    LocalElem::Global(y) => LocalElem::Series(&match_precision_add(y, p, &s)? + &s),
                    LocalElem::Series(r) => LocalElem::Series(&s + r),
                },
            };
            out.corrections.insert(p.clone(), merged);
        }
        Ok(out)
    }

    /// Same layout as [`Idele::to_json`].
    pub fn to_json(&self) -> Value {
        let mut corr = Map::new();
        for (p, a) in &self.corrections {
            corr.insert(p.to_string(), Value::String(correction_string(a)));
        }
        json!({
            "q": self.field.order(),
            "rational_part": self.rational_part.to_string(),
            "corrections": Value::Object(corr),
        })
    }

    pub fn from_json(v: &Value) -> Result<Adele> {
        let field = field_from_json(v)?;
        let mut out = match v.get("rational_part") {
            None => Adele::zero(field),
            Some(Value::String(s)) => Adele::principal(parse::parse_rational(s, field)?),
            Some(other) => return Err(Error::Parse(format!("rational_part must be a string, got {other}"))),
        };
        if let Some(c) = v.get("corrections") {
            let obj = c
                .as_object()
                .ok_or_else(|| Error::Parse("corrections must be an object".into()))?;
            for (k, val) in obj {
                let place = parse::parse_place(k, field)?;
                let s = val
                    .as_str()
                    .ok_or_else(|| Error::Parse(format!("correction at {k} must be a string")))?;
                let elem = parse_local_elem(s, &place, field)?;
                out = out.add(&Adele::at_place(field, place, elem).map_err(|e| Error::Parse(e.to_string()))?)?;
            }
        }
        Ok(out)
    }

    /// Places where the component may have a pole, together with `∞`.
    pub fn relevant_places(&self) -> Result<BTreeSet<Place>> {
        let mut out: BTreeSet<Place> = self.corrections.keys().cloned().collect();
        out.insert(Place::Infinity);
        if !self.rational_part.is_zero() {
            for (f, _) in self.rational_part.denominator().factor().1 {
                out.insert(Place::Finite(f));
            }
        }
        Ok(out)
    }

    /// The component at `place` known modulo `t^n`.
    pub fn component_series(&self, place: &Place, n: i64) -> Result<LaurentSeries> {
        let fp = place.residue_field(self.field)?;
        let r = if self.rational_part.is_zero() {
            LaurentSeries::zero(fp)
        } else {
            local_expand(&self.rational_part, place, n)?
        };
        Ok(match self.corrections.get(place) {
            None => r,
            Some(LocalElem::Global(x)) if x.is_zero() => r,
            Some(c) => &r + &c.expand(place, n)?,
        })
    }
}

fn match_precision_add(x: &RationalFunction, place: &Place, s: &LaurentSeries) -> Result<LaurentSeries> {
    if x.is_zero() {
        return Ok(LaurentSeries::zero(s.field()));
    }
    local_expand(x, place, s.precision().unwrap_or(DEFAULT_LOCAL_PRECISION))
}

/// `Tr_{F_P/F_q} res_P(α_P dT)` at one place.
pub fn local_residue_dt(component: &LaurentSeries, place: &Place, base: FieldSpec) -> Result<ExtFieldElem> {
    if component.is_exact_zero() {
        return Ok(base.zero());
    }
    let v = component.valuation().or(component.precision()).unwrap_or(0);
    let dt = dt_over_dtp(place, base, (1 - v).max(1))?;
    let w = component * &dt;
    let res = w.coeff(-1).ok_or_else(|| {
        Error::InsufficientPrecision(format!("residue at {place} of ({component}) dT"))
    })?;
    res.trace_to(base)
}

/// `(λ(α), f(α))` with `λ(α) = Σ_P Tr_{F_P/F_q} res_P(α_P dT)` and
/// `f(α) = Tr_{F_q/F_p} λ(α)`.
pub fn lambda_functional(a: &Adele) -> Result<(ExtFieldElem, ExtFieldElem)> {
    let base = a.field();
    let mut total = base.zero();
    for place in a.relevant_places()? {
        // components need t^{-1} coefficients against dT/dt_P of valuation >= -2
        let comp = a.component_series(&place, 2)?;
        total += local_residue_dt(&comp, &place, base)?;
    }
    let f = total.trace_to(base.prime_field())?;
    Ok((total, f))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u64) -> FieldSpec {
        FieldSpec::with_order(q).unwrap()
    }

    fn rat(q: u64, s: &str) -> RationalFunction {
        parse::parse_rational(s, gf(q)).unwrap()
    }

    fn place(q: u64, s: &str) -> Place {
        parse::parse_place(s, gf(q)).unwrap()
    }

    #[test]
    fn degrees() {
        let f2 = gf(2);
        assert_eq!(idele_degree(&gamma_generator(f2)).unwrap(), 1);
        assert_eq!(idele_degree(&Idele::principal(rat(2, "T^3/(T^2+T+1)")).unwrap()).unwrap(), 0);
        let p = place(2, "T^2+T+1");
        let a = Idele::at_place(f2, p.clone(), LocalElem::Global(rat(2, "(T^2+T+1)^3"))).unwrap();
        assert_eq!(idele_degree(&a).unwrap(), 6);
        let (beta, m) = decompose_c0_gamma(&a).unwrap();
        assert_eq!(m, 6);
        assert_eq!(idele_degree(&beta).unwrap(), 0);
        let back = beta.mul(&gamma_generator(f2).pow(m).unwrap()).unwrap();
        assert_eq!(back, a);
        let (b, m) = decompose_c0_gamma(&gamma_generator(f2)).unwrap();
        assert_eq!((b, m), (Idele::one(f2), 1));
    }

    #[test]
    fn places_above() {
        let f2 = gf(2);
        let above = constant_ext_places_above(&place(2, "T"), f2, 2).unwrap();
        assert_eq!(above.len(), 1);
        assert_eq!(above[0].1, 2);
        let above = constant_ext_places_above(&place(2, "T^2+T+1"), f2, 2).unwrap();
        let names: Vec<_> = above.iter().map(|(p, f)| (p.to_string(), *f)).collect();
        assert_eq!(names, [("T+g".to_string(), 1), ("T+g+1".to_string(), 1)]);
        let above = constant_ext_places_above(&Place::Infinity, f2, 3).unwrap();
        assert_eq!(above, [(Place::Infinity, 3)]);
    }

    #[test]
    fn norms() {
        let f2 = gf(2);
        let f4 = gf(4);
        let t_up = Place::Finite(Poly::x(f4));
        let a = Idele::at_place(f4, t_up.clone(), LocalElem::Global(RationalFunction::constant(f4.generator())))
            .unwrap();
        let n = norm_from_constant_ext(&a, f2, 6).unwrap();
        assert_eq!(idele_degree(&n).unwrap(), 0);
        let comp = n.component_series(&place(2, "T"), 6).unwrap();
        assert_eq!(comp.truncate(6), LaurentSeries::one(f2).truncate(6));

        let a = Idele::prime_at(f4, t_up);
        let n = norm_from_constant_ext(&a, f2, 6).unwrap();
        let comp = n.component_series(&place(2, "T"), 6).unwrap();
        assert_eq!(comp.truncate(6), LaurentSeries::monomial(f2.one(), 2).truncate(6));

        let y = parse::parse_rational("(T+g)/(T^2+g*T+1)", f4).unwrap();
        let n = norm_from_constant_ext(&Idele::principal(y.clone()).unwrap(), f2, 6).unwrap();
        assert!(n.is_principal());
        let direct = &y * &y.frobenius(1);
        assert_eq!(n.rational_part().embed(f4).unwrap(), direct);
    }

    #[test]
    fn lambda_examples() {
        let f2 = gf(2);
        let a = Adele::at_place(f2, place(2, "T"), LocalElem::Global(rat(2, "1/T"))).unwrap();
        let (l, f) = lambda_functional(&a).unwrap();
        assert!(l.is_one() && f.is_one());
        let a = Adele::at_place(f2, place(2, "T+1"), LocalElem::Global(rat(2, "T^2+T"))).unwrap();
        assert!(lambda_functional(&a).unwrap().0.is_zero());
        let a = Adele::principal(rat(2, "1/T"));
        assert!(lambda_functional(&a).unwrap().0.is_zero());
    }

    #[test]
    fn json_round_trip() {
        let v: Value = serde_json::from_str(
            r#"{"q":2, "rational_part":"T/(T+1)", "corrections":{"T":"T^2+T", "inf":"1+t^3+O(t^5)"}}"#,
        )
        .unwrap();
        let a = Idele::from_json(&v).unwrap();
        assert_eq!(
            a.to_json().to_string(),
            r#"{"corrections":{"T":"T^2+T","inf":"1 + t^3 + O(t^5)"},"q":2,"rational_part":"T/(T+1)"}"#
        );
        assert_eq!(Idele::from_json(&a.to_json()).unwrap(), a);
    }
}
