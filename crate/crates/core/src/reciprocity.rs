//! Norm residue symbols for constant-field extensions `F_{q^n}(T)/F_q(T)`
//! and for Artin-Schreier extensions `K(℘^{-1} x)`, the reciprocity map on
//! constant-field extensions and the compatibility checks between them.
//!
//! `G(F_{q^n}(T)/F_q(T))` is identified with `Z/n` through the Frobenius
//! `φ: ζ -> ζ^q`.

use std::fmt;

use crate::adele_idele::{norm_from_constant_ext, Idele, LocalElem, DEFAULT_LOCAL_PRECISION};
use crate::as_pairing::{in_wp, psi_at_place, psi_global, psi_local, ASCharacterValue};
use crate::error::{Error, Result};
use crate::finite_field::{ExtFieldElem, FieldSpec};
use crate::function_field::{local_expand, Place, RationalFunction};
use crate::laurent_series::LaurentSeries;
use crate::poly::Poly;

/// `φ^exponent` in a cyclic group of order `modulus`; modulus 0 stands for `Z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FrobExponent {
    pub exponent: i64,
    pub modulus: u64,
}

impl FrobExponent {
    pub fn new(exponent: i64, modulus: u64) -> Self {
        let exponent = if modulus == 0 { exponent } else { exponent.rem_euclid(modulus as i64) };
        FrobExponent { exponent, modulus }
    }

    pub fn is_identity(&self) -> bool {
        self.exponent == 0
    }

    /// The image of a local symbol `φ_P^e` in the global group `Z/n`, where
    /// `φ_P = φ^d` for a place of degree `d`.
    pub fn to_global(&self, d: u32, n: u64) -> FrobExponent {
        FrobExponent::new(self.exponent * d as i64, n)
    }

    /// The action on `ζ ∈ F_{q^n}`: `ζ -> ζ^{q^exponent}`.
    pub fn act(&self, zeta: &ExtFieldElem, base: FieldSpec) -> ExtFieldElem {
        zeta.frobenius_power(base.degree() as i64 * self.exponent)
    }
}

impl fmt::Display for FrobExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.modulus == 0 {
            write!(f, "phi^{}", self.exponent)
        } else {
            write!(f, "phi^{} mod {}", self.exponent, self.modulus)
        }
    }
}

/// `F_{q^n}(T) / F_q(T)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ConstantExtension {
    pub base: FieldSpec,
    pub degree: u32,
}

impl ConstantExtension {
    pub fn new(base: FieldSpec, degree: u32) -> Result<Self> {
        if degree == 0 {
            return Err(Error::OutOfRange("extension degree must be positive".into()));
        }
        base.extension(degree)?;
        Ok(ConstantExtension { base, degree })
    }

    pub fn top(&self) -> FieldSpec {
        self.base.extension(self.degree).expect("checked at construction")
    }

    /// Degree of the completion at a place of degree `d`.
    pub fn local_degree(&self, d: u32) -> u32 {
        self.degree / gcd(self.degree, d)
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `(a, L_P/K_P) = φ_P^{v(a)}` in `G(L_P/K_P) ≅ Z/m`, `m` the local degree
/// (0 for the maximal unramified extension). The residue degree `d` only
/// fixes `φ_P = φ^d`, which [`FrobExponent::to_global`] uses.
pub fn local_symbol_unramified(a: &LaurentSeries, d: u32, m: u64) -> Result<FrobExponent> {
    let _ = d;
    if a.is_exact_zero() {
        return Err(Error::ZeroInput);
    }
    Ok(FrobExponent::new(a.try_valuation()?, m))
}

fn check_base(alpha: &Idele, e: &ConstantExtension) -> Result<()> {
    if alpha.field() != e.base {
        return Err(Error::FieldMismatch(format!("idele over {} for an extension of {}", alpha.field(), e.base)));
    }
    Ok(())
}

/// `[α, L/K] = ∏_P (α_P, L_P/K_P)`, i.e. `Σ_P Deg(P) v_P(α_P) mod n`.
pub fn global_symbol_constant(alpha: &Idele, e: &ConstantExtension) -> Result<FrobExponent> {
    check_base(alpha, e)?;
    Ok(FrobExponent::new(v_k_idele(alpha)?, e.degree as u64))
}

/// `deg_K [α, K̃/K]`, summing the local unramified symbols at the places
/// where the component is not a unit.
pub fn v_k_idele(alpha: &Idele) -> Result<i64> {
    let mut total = 0;
    for place in alpha.relevant_places()? {
        // a global component has its valuation read off without expanding
        if !alpha.corrections().contains_key(&place) {
            total += place.degree() as i64 * alpha.component_valuation(&place)?;
            continue;
        }
        let comp = alpha.component_series(&place, 1)?;
        if comp.is_zero_to_precision() {
            // the valuation is read off exactly when the series is too coarse
            total += place.degree() as i64 * alpha.component_valuation(&place)?;
            continue;
        }
        let local = local_symbol_unramified(&comp, place.degree(), 0)?;
        total += local.to_global(place.degree(), 0).exponent;
    }
    Ok(total)
}

/// Violations found by [`henselian_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HenselianReport {
    pub checked: usize,
    /// Upstairs ideles whose norm has degree outside `nZ`.
    pub violations: Vec<(Idele, i64)>,
    /// Whether the value `n` itself was attained.
    pub attains_degree: bool,
}

/// Checks `v_K(N_{L/K} β) ∈ nZ` on the samples, and that the norm of the
/// prime idele at `(T)` upstairs has degree exactly `n`.
pub fn henselian_check(e: &ConstantExtension, samples: &[Idele]) -> Result<HenselianReport> {
    let n = e.degree as i64;
    let mut report = HenselianReport { checked: 0, violations: Vec::new(), attains_degree: false };
    let prime = Idele::prime_at(e.top(), Place::Finite(Poly::x(e.top())));
    for beta in samples.iter().chain(std::iter::once(&prime)) {
        if beta.field() != e.top() {
            return Err(Error::FieldMismatch(format!("sample over {} for an extension to {}", beta.field(), e.top())));
        }
        let v = v_k_idele(&norm_from_constant_ext(beta, e.base, DEFAULT_LOCAL_PRECISION)?)?;
        report.checked += 1;
        if v % n != 0 {
            report.violations.push((beta.clone(), v));
        }
        if v == n {
            report.attains_degree = true;
        }
    }
    Ok(report)
}

/// `r_{L/K}(φ^j) = N_{Σ/K}(π_Σ)` where `Σ = F_{q^j}(T)` is the fixed field of
/// the Frobenius lift of degree `j` and `π_Σ` the prime idele at `(T)`.
pub fn neukirch_map_constant(j: u32, e: &ConstantExtension) -> Result<Idele> {
    let sigma = fixed_field(j, e)?;
    neukirch_map_with_prime(j, e, &Place::Finite(Poly::x(sigma)))
}

fn fixed_field(j: u32, e: &ConstantExtension) -> Result<FieldSpec> {
    if j == 0 || j > e.degree {
        return Err(Error::OutOfRange(format!("need 1 <= j <= {}, got {j}", e.degree)));
    }
    e.base.extension(j)
}

/// As [`neukirch_map_constant`], with `π_Σ` the prime idele at a chosen
/// degree-1 place of `Σ = F_{q^j}(T)`.
pub fn neukirch_map_with_prime(j: u32, e: &ConstantExtension, place: &Place) -> Result<Idele> {
    let sigma = fixed_field(j, e)?;
    if let Place::Finite(f) = place {
        if f.field() != sigma {
            return Err(Error::FieldMismatch(format!("the place must be a place of {sigma}(T)")));
        }
    }
    if place.degree() != 1 {
        return Err(Error::OutOfRange("π_Σ must sit at a degree-1 place".into()));
    }
    norm_from_constant_ext(&Idele::prime_at(sigma, place.clone()), e.base, DEFAULT_LOCAL_PRECISION)
}

/// The action `℘^{-1}x -> ℘^{-1}x + ψ(x, α)` of the symbol `(α, K(℘^{-1}x)/K)`.
pub fn as_symbol(x: &RationalFunction, alpha: &Idele) -> Result<ASCharacterValue> {
    if in_wp(x)? {
        return Err(Error::DegenerateExtension);
    }
    psi_global(x, alpha)
}

/// The extension families with implemented symbols.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AbelianExtension {
    Constant(ConstantExtension),
    ArtinSchreier(RationalFunction),
}

/// Compares the global symbol of `[a]_P` with the local symbol of `a`.
pub fn local_global_diagram_check(a: &LaurentSeries, place: &Place, ext: &AbelianExtension) -> Result<bool> {
    let base = match ext {
        AbelianExtension::Constant(e) => e.base,
        AbelianExtension::ArtinSchreier(x) => x.field(),
    };
    if a.field() != place.residue_field(base)? {
        return Err(Error::FieldMismatch(format!("local element must have coefficients in F_P for P = {place}")));
    }
    let idele = Idele::at_place(base, place.clone(), LocalElem::Series(a.clone()))?;
    match ext {
        AbelianExtension::Constant(e) => {
            let d = place.degree();
            let local = local_symbol_unramified(a, d, e.local_degree(d) as u64)?;
            Ok(local.to_global(d, e.degree as u64) == global_symbol_constant(&idele, e)?)
        }
        AbelianExtension::ArtinSchreier(x) => {
            let global = as_symbol(x, &idele)?;
            let local = if x.is_zero() {
                ASCharacterValue::zero(base.p())
            } else {
                let m = (-crate::function_field::valuation_at(x, place)?).max(0);
                let v = a.try_valuation()?;
                psi_local(&local_expand(x, place, 1)?, &a.truncate(v + m + 1))?
            };
            Ok(local == global && psi_at_place(x, &idele, place)? == local)
        }
    }
}

/// `[N_{K'/K} α, L/K] = [α, L'/K']|_L` for `K' = F_{q^m}(T)`, `L = F_{q^n}(T)`
/// and `L' = L K'`, with `α` an idele of `K'`.
pub fn norm_functoriality_check(alpha: &Idele, base: FieldSpec, n: u32) -> Result<bool> {
    let up = alpha.field();
    let m = up.degree_over(&base)?;
    let e = ConstantExtension::new(base, n)?;
    let lhs = global_symbol_constant(&norm_from_constant_ext(alpha, base, DEFAULT_LOCAL_PRECISION)?, &e)?;
    // G(L'/K') is generated by x -> x^{q^m}, which restricts to φ^m on L
    let upper = ConstantExtension::new(up, (m * n / gcd(m, n)) / m)?;
    let sym_up = global_symbol_constant(alpha, &upper)?;
    let rhs = FrobExponent::new(sym_up.exponent * m as i64, n as u64);
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adele_idele::idele_degree;
    use crate::parse;

    fn gf(q: u64) -> FieldSpec {
        FieldSpec::with_order(q).unwrap()
    }

    fn place(q: u64, s: &str) -> Place {
        parse::parse_place(s, gf(q)).unwrap()
    }

    fn rat(q: u64, s: &str) -> RationalFunction {
        parse::parse_rational(s, gf(q)).unwrap()
    }

    #[test]
    fn local_examples() {
        let f2 = gf(2);
        let t = LaurentSeries::t(f2);
        assert_eq!(local_symbol_unramified(&t, 1, 2).unwrap().exponent, 1);
        let u = parse::parse_series("1 + t", f2).unwrap();
        assert!(local_symbol_unramified(&u, 1, 5).unwrap().is_identity());
        assert!(local_symbol_unramified(&t.pow(2).unwrap(), 1, 2).unwrap().is_identity());
        assert_eq!(local_symbol_unramified(&LaurentSeries::zero(f2), 1, 2), Err(Error::ZeroInput));
    }

    #[test]
    fn global_examples() {
        let f2 = gf(2);
        let e = ConstantExtension::new(f2, 2).unwrap();
        let s = global_symbol_constant(&Idele::prime_at(f2, place(2, "T")), &e).unwrap();
        assert_eq!(s, FrobExponent::new(1, 2));
        let f4 = gf(4);
        let zeta = f4.generator();
        assert_eq!(s.act(&zeta, f2), zeta.pow(2));
        let x = Idele::principal(rat(2, "T/(T+1)")).unwrap();
        assert!(global_symbol_constant(&x, &e).unwrap().is_identity());
        let a = Idele::prime_at(f2, place(2, "T^2+T+1"));
        assert!(global_symbol_constant(&a, &e).unwrap().is_identity());
    }

    #[test]
    fn valuation_examples() {
        let f2 = gf(2);
        let a = Idele::prime_at(f2, place(2, "T"));
        assert_eq!(v_k_idele(&a).unwrap(), 1);
        assert_eq!(v_k_idele(&Idele::principal(rat(2, "T^3/(T^2+1)")).unwrap()).unwrap(), 0);
        let b = Idele::prime_at(f2, place(2, "T^2+T+1"));
        assert_eq!(v_k_idele(&a.mul(&b).unwrap()).unwrap(), 3);
    }

    #[test]
    fn henselian_examples() {
        let f2 = gf(2);
        let e = ConstantExtension::new(f2, 2).unwrap();
        let r = henselian_check(&e, &[Idele::one(e.top())]).unwrap();
        assert!(r.violations.is_empty());
        assert!(r.attains_degree);
    }

    #[test]
    fn neukirch_examples() {
        let f2 = gf(2);
        let e = ConstantExtension::new(f2, 2).unwrap();
        let r = neukirch_map_constant(1, &e).unwrap();
        assert_eq!(r, Idele::prime_at(f2, place(2, "T")));
        assert_eq!(global_symbol_constant(&r, &e).unwrap().exponent, 1);
        let r = neukirch_map_constant(2, &e).unwrap();
        assert_eq!(idele_degree(&r).unwrap(), 2);
        assert!(global_symbol_constant(&r, &e).unwrap().is_identity());
        let e4 = ConstantExtension::new(f2, 4).unwrap();
        let r = neukirch_map_constant(2, &e4).unwrap();
        assert_eq!(global_symbol_constant(&r, &e4).unwrap(), FrobExponent::new(2, 4));
        assert!(neukirch_map_constant(0, &e).is_err());
        assert!(neukirch_map_constant(3, &e).is_err());
        // a second prime of Σ = F_4(T), above the degree-2 place T^2+T+1
        let f4 = gf(4);
        let other = Place::Finite(Poly::linear(f4.generator()));
        let r2 = neukirch_map_with_prime(2, &e, &other).unwrap();
        assert!(global_symbol_constant(&r2, &e).unwrap().is_identity());
    }

    #[test]
    fn as_symbol_examples() {
        let f2 = gf(2);
        let x = rat(2, "T");
        assert_eq!(as_symbol(&x, &Idele::prime_at(f2, place(2, "T+1"))).unwrap().value(), 1);
        assert_eq!(as_symbol(&x, &Idele::prime_at(f2, place(2, "T"))).unwrap().value(), 0);
        assert_eq!(as_symbol(&rat(2, "T^2+T"), &Idele::one(f2)), Err(Error::DegenerateExtension));
    }

    #[test]
    fn diagram_examples() {
        let f2 = gf(2);
        let e = AbelianExtension::Constant(ConstantExtension::new(f2, 2).unwrap());
        assert!(local_global_diagram_check(&LaurentSeries::t(f2), &place(2, "T"), &e).unwrap());
        let unit = parse::parse_series("1 + t^2", f2).unwrap();
        assert!(local_global_diagram_check(&unit, &place(2, "T+1"), &e).unwrap());
        let f4 = gf(4);
        assert!(local_global_diagram_check(&LaurentSeries::t(f4), &place(2, "T^2+T+1"), &e).unwrap());
        let asx = AbelianExtension::ArtinSchreier(rat(2, "T"));
        assert!(local_global_diagram_check(&LaurentSeries::t(f2), &place(2, "T+1"), &asx).unwrap());
    }

    #[test]
    fn functoriality_examples() {
        let f2 = gf(2);
        let f4 = gf(4);
        let a = Idele::prime_at(f4, Place::Finite(Poly::x(f4)));
        assert!(norm_functoriality_check(&a, f2, 1).unwrap());
        assert!(norm_functoriality_check(&a, f2, 3).unwrap());
        let b = Idele::principal(rat(4, "(T+g)/(T^2+1)")).unwrap();
        assert!(norm_functoriality_check(&b, f2, 2).unwrap());
    }
}
