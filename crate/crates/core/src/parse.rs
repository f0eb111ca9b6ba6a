//! Text syntax for field elements, rational functions, places and series.
//!
//! One expression grammar serves every type:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/')? unary)*      juxtaposition multiplies
//! unary  := '-' unary | power
//! power  := atom ('^' '-'? integer)?
//! atom   := integer | letter | '(' expr ')' | 'O' '(' expr ')'
//! ```
//!
//! `g` is the generator of the coefficient field, `T` the function field
//! variable and `t` the local prime of a series. `O(t^N)` sets the precision.

use crate::error::{Error, Result};
use crate::finite_field::{ExtFieldElem, FieldSpec};
use crate::function_field::{Place, RationalFunction};
use crate::laurent_series::LaurentSeries;
use crate::poly::Poly;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(u64),
    Var(char),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let mut v: u64 = 0;
            while i < chars.len() && chars[i].is_ascii_digit() {
                v = v
                    .checked_mul(10)
                    .and_then(|v| v.checked_add(chars[i].to_digit(10).unwrap() as u64))
                    .ok_or_else(|| Error::Parse(format!("integer too large in {s:?}")))?;
                i += 1;
            }
            out.push(Tok::Num(v));
        } else if c.is_ascii_alphabetic() {
            out.push(Tok::Var(c));
            i += 1;
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character {c:?} in {s:?}")));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
enum Expr {
    Num(u64),
    Var(char),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, i64),
    BigO(Box<Expr>),
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect(&mut self, c: char) -> Result<()> {
        match self.next() {
            Some(Tok::Op(d)) if d == c => Ok(()),
            other => Err(Error::Parse(format!("expected {c:?}, found {other:?}"))),
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        while let Some(Tok::Op(c @ ('+' | '-'))) = self.peek().cloned() {
            self.pos += 1;
            let rhs = self.term()?;
            lhs = if c == '+' {
                Expr::Add(Box::new(lhs), Box::new(rhs))
            } else {
                Expr::Sub(Box::new(lhs), Box::new(rhs))
            };
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek().cloned() {
                Some(Tok::Op('*')) => {
                    self.pos += 1;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Some(Tok::Op('/')) => {
                    self.pos += 1;
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
                }
                Some(Tok::Num(_) | Tok::Var(_) | Tok::Op('(')) => {
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.power()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if let Some(Tok::Op('-')) = self.peek() {
            self.pos += 1;
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.pos += 1;
            let neg = if let Some(Tok::Op('-')) = self.peek() {
                self.pos += 1;
                true
            } else {
                false
            };
            let e = match self.next() {
                Some(Tok::Num(n)) => i64::try_from(n).map_err(|_| Error::Parse("exponent too large".into()))?,
                other => return Err(Error::Parse(format!("expected exponent, found {other:?}"))),
            };
            return Ok(Expr::Pow(Box::new(base), if neg { -e } else { e }));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.next() {
            Some(Tok::Num(n)) => Ok(Expr::Num(n)),
            Some(Tok::Var('O')) => {
                self.expect('(')?;
                let inner = self.expr()?;
                self.expect(')')?;
                Ok(Expr::BigO(Box::new(inner)))
            }
            Some(Tok::Var(c)) => Ok(Expr::Var(c)),
            Some(Tok::Op('(')) => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

fn parse_expr(s: &str) -> Result<Expr> {
    let toks = tokenize(s)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser { toks, pos: 0 };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input in {s:?}")));
    }
    Ok(e)
}

/// Arithmetic needed to evaluate an expression tree.
trait Target: Sized + Clone {
    fn int(&self, n: u64) -> Self;
    fn var(&self, c: char) -> Result<Self>;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Result<Self>;
    fn neg(&self) -> Self;
    fn pow(&self, e: i64) -> Result<Self>;
    fn big_o(&self, inner: &Self) -> Result<Self> {
        let _ = inner;
        Err(Error::Parse("O(...) is only allowed in series".into()))
    }
}

/// Wraps a context value; `ctx` supplies the field and variables.
fn eval<A: Target>(e: &Expr, ctx: &A) -> Result<A> {
    Ok(match e {
        Expr::Num(n) => ctx.int(*n),
        Expr::Var(c) => ctx.var(*c)?,
        Expr::Add(a, b) => eval(a, ctx)?.add(&eval(b, ctx)?),
        Expr::Sub(a, b) => eval(a, ctx)?.sub(&eval(b, ctx)?),
        Expr::Mul(a, b) => eval(a, ctx)?.mul(&eval(b, ctx)?),
        Expr::Div(a, b) => eval(a, ctx)?.div(&eval(b, ctx)?)?,
        Expr::Neg(a) => eval(a, ctx)?.neg(),
        Expr::Pow(a, k) => eval(a, ctx)?.pow(*k)?,
        Expr::BigO(a) => ctx.big_o(&eval(a, ctx)?)?,
    })
}

fn generator_of(field: FieldSpec) -> Result<ExtFieldElem> {
    if field.degree() == 1 {
        return Err(Error::Parse(format!("{field} is a prime field; `g` is not defined")));
    }
    Ok(field.generator())
}

impl Target for ExtFieldElem {
    fn int(&self, n: u64) -> Self {
        self.spec().from_int((n % self.spec().p() as u64) as i64)
    }
    fn var(&self, c: char) -> Result<Self> {
        match c {
            'g' => generator_of(self.spec()),
            _ => Err(Error::Parse(format!("unknown symbol {c:?} in a field element"))),
        }
    }
    fn add(&self, o: &Self) -> Self {
        *self + *o
    }
    fn sub(&self, o: &Self) -> Self {
        *self - *o
    }
    fn mul(&self, o: &Self) -> Self {
        *self * *o
    }
    fn div(&self, o: &Self) -> Result<Self> {
        Ok(*self * o.try_inv()?)
    }
    fn neg(&self) -> Self {
        -*self
    }
    fn pow(&self, e: i64) -> Result<Self> {
        if e < 0 && self.is_zero() {
            return Err(Error::ZeroInput);
        }
        Ok(self.pow_i(e))
    }
}

impl Target for RationalFunction {
    fn int(&self, n: u64) -> Self {
        RationalFunction::constant(self.field().zero().int(n))
    }
    fn var(&self, c: char) -> Result<Self> {
        match c {
            'T' => Ok(RationalFunction::t(self.field())),
            'g' => Ok(RationalFunction::constant(generator_of(self.field())?)),
            _ => Err(Error::Parse(format!("unknown symbol {c:?} in a rational function"))),
        }
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Result<Self> {
        RationalFunction::div(self, o)
    }
    fn neg(&self) -> Self {
        -self
    }
    fn pow(&self, e: i64) -> Result<Self> {
        RationalFunction::pow(self, e)
    }
}

impl Target for LaurentSeries {
    fn int(&self, n: u64) -> Self {
        LaurentSeries::constant(self.field().zero().int(n))
    }
    fn var(&self, c: char) -> Result<Self> {
        match c {
            't' => Ok(LaurentSeries::t(self.field())),
            'g' => Ok(LaurentSeries::constant(generator_of(self.field())?)),
            _ => Err(Error::Parse(format!("unknown symbol {c:?} in a series"))),
        }
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Result<Self> {
        LaurentSeries::div(self, o)
    }
    fn neg(&self) -> Self {
        -self
    }
    fn pow(&self, e: i64) -> Result<Self> {
        LaurentSeries::pow(self, e)
    }
    fn big_o(&self, inner: &Self) -> Result<Self> {
        let mut terms = inner.terms();
        match (terms.next(), terms.next(), inner.is_exact()) {
            (Some((k, c)), None, true) if c.is_one() => Ok(LaurentSeries::big_o(self.field(), k)),
            _ => Err(Error::Parse("O(...) expects a power of t".into())),
        }
    }
}

/// Splits an optional trailing ` over GF(q)` annotation.
pub fn split_field_annotation(s: &str) -> Result<(&str, Option<FieldSpec>)> {
    match s.rfind(" over ") {
        Some(i) => Ok((&s[..i], Some(s[i + 6..].trim().parse()?))),
        None => Ok((s, None)),
    }
}

pub fn parse_field_elem(s: &str, field: FieldSpec) -> Result<ExtFieldElem> {
    eval(&parse_expr(s)?, &field.zero())
}

pub fn parse_rational(s: &str, field: FieldSpec) -> Result<RationalFunction> {
    eval(&parse_expr(s)?, &RationalFunction::zero(field))
}

pub fn parse_poly(s: &str, field: FieldSpec) -> Result<Poly> {
    let r = parse_rational(s, field)?;
    if !r.is_polynomial() {
        return Err(Error::Parse(format!("{s:?} is not a polynomial")));
    }
    Ok(r.numerator().clone())
}

/// Series over `field`; exact unless an `O(t^N)` term is present.
pub fn parse_series(s: &str, field: FieldSpec) -> Result<LaurentSeries> {
    eval(&parse_expr(s)?, &LaurentSeries::zero(field))
}

/// `inf` or a monic irreducible polynomial in `T`.
pub fn parse_place(s: &str, field: FieldSpec) -> Result<Place> {
    let s = s.trim();
    if s == "inf" || s == "∞" {
        return Ok(Place::Infinity);
    }
    let f = parse_poly(s, field)?;
    Place::finite(f).map_err(|e| Error::Parse(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u64) -> FieldSpec {
        FieldSpec::with_order(q).unwrap()
    }

    #[test]
    fn round_trips() {
        let f4 = gf(4);
        for e in f4.elements() {
            assert_eq!(parse_field_elem(&e.to_string(), f4).unwrap(), e);
        }
        let f9 = gf(9);
        for e in f9.elements() {
            assert_eq!(parse_field_elem(&e.to_string(), f9).unwrap(), e);
        }
        for s in ["(T^2+T+1)/(T+1)", "T/(T+1)", "1/T", "T^3+(g+1)*T+g"] {
            let r = parse_rational(s, f4).unwrap();
            assert_eq!(r.to_string(), s);
            assert_eq!(parse_rational(&r.to_string(), f4).unwrap(), r);
        }
        let x = parse_series("t^-2 + 1 + g*t^3 + O(t^5)", f4).unwrap();
        assert_eq!(x.to_string(), "t^-2 + 1 + g*t^3 + O(t^5)");
        assert_eq!(x.precision(), Some(5));
    }

    #[test]
    fn implicit_products_and_errors() {
        let f4 = gf(4);
        assert_eq!(parse_rational("gT", f4).unwrap(), parse_rational("g*T", f4).unwrap());
        assert!(parse_rational("T +", f4).unwrap_err().is_parse());
        assert!(parse_field_elem("g", gf(5)).unwrap_err().is_parse());
        assert!(parse_series("O(t^2 + t)", f4).unwrap_err().is_parse());
        assert_eq!(parse_place("inf", f4).unwrap(), Place::Infinity);
        assert!(parse_place("T^2+1", gf(2)).is_err());
        let (body, field) = split_field_annotation("t^-1 over GF(4)").unwrap();
        assert_eq!(body, "t^-1");
        assert_eq!(field, Some(f4));
    }
}
