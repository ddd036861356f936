use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use serde_json::Value;

use super::GaussInt;
use crate::error::{Error, Result};

/// Element of ℤ[i][A, A⁻¹]. Terms are kept sorted by exponent with no zero
/// coefficients stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, GaussInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(GaussInt::one())
    }

    pub fn constant(c: GaussInt) -> Self {
        Self::monomial(c, 0)
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(GaussInt::real(n))
    }

    /// The variable `A`.
    pub fn var() -> Self {
        Self::monomial(GaussInt::one(), 1)
    }

    pub fn monomial(coeff: GaussInt, exp: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        Self { terms }
    }

    /// `A^k` with unit coefficient.
    pub fn a_pow(k: i64) -> Self {
        Self::monomial(GaussInt::one(), k)
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, GaussInt)>>(iter: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in iter {
            p.add_term(e, &c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(GaussInt::is_one)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> GaussInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    /// Terms in descending exponent order.
    pub fn terms_desc(&self) -> impl Iterator<Item = (i64, &GaussInt)> {
        self.terms.iter().rev().map(|(e, c)| (*e, c))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    fn add_term(&mut self, exp: i64, c: &GaussInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exp) {
            Some(slot) => {
                let s = &*slot + c;
                if s.is_zero() {
                    self.terms.remove(&exp);
                } else {
                    *slot = s;
                }
            }
            None => {
                self.terms.insert(exp, c.clone());
            }
        }
    }

    /// `self += a * b` without allocating an intermediate product map.
    pub fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                self.add_term(ea + eb, &(ca * cb));
            }
        }
    }

    /// A single-term polynomial `c·A^k` with `c` a unit of ℤ[i].
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms.values().all(GaussInt::is_unit)
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_unit() {
            return None;
        }
        let (e, c) = self.terms.iter().next()?;
        let ci = GaussInt::one().div_exact(c)?;
        Some(Self::monomial(ci, -e))
    }

    /// Integer power; negative exponents require a unit.
    pub fn pow(&self, k: i64) -> Option<Self> {
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut n = k.unsigned_abs();
        let mut acc = Self::one();
        let mut sq = base;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &sq;
            }
            n >>= 1;
            if n > 0 {
                sq = &sq * &sq;
            }
        }
        Some(acc)
    }

    /// The bar involution `A ↦ A⁻¹` (coefficients untouched).
    pub fn bar(&self) -> Self {
        Self { terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect() }
    }

    /// Exact quotient in ℤ[i][A^±], or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let d_max = d.max_exp()?;
        let (d_lead, d_min) = (d.terms[&d_max].clone(), d.min_exp()?);
        let floor = self.min_exp()? - d_min;
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some(r_max) = rem.max_exp() {
            let e = r_max - d_max;
            if e < floor {
                return None;
            }
            let c = rem.terms[&r_max].div_exact(&d_lead)?;
            let q = Self::monomial(c, e);
            rem = &rem - &(&q * d);
            quot.add_term(e, &q.terms[&e]);
        }
        Some(quot)
    }

    pub fn eval(&self, a: Complex64) -> Result<Complex64> {
        if a == Complex64::new(0.0, 0.0) {
            if self.terms.keys().any(|&e| e < 0) {
                return Err(Error::Precondition("evaluation of a negative power at A = 0".into()));
            }
            let (re, im) = self.coeff(0).to_f64_pair();
            return Ok(Complex64::new(re, im));
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for (e, c) in &self.terms {
            let (re, im) = c.to_f64_pair();
            acc += Complex64::new(re, im) * a.powi(*e as i32);
        }
        Ok(acc)
    }

    /// JSON form: `[[exp, re, im], ...]`, exponents strictly descending.
    /// Parts outside the `i64` range are written as decimal strings.
    pub fn to_json(&self) -> Value {
        let num = |b: &BigInt| match b.to_i64() {
            Some(v) => Value::from(v),
            None => Value::from(b.to_string()),
        };
        Value::Array(
            self.terms_desc()
                .map(|(e, c)| Value::Array(vec![Value::from(e), num(&c.re), num(&c.im)]))
                .collect(),
        )
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = || Error::Parse(format!("polynomial JSON must be a list of [exp, re, im]: {v}"));
        let big = |x: &Value| -> Result<BigInt> {
            match x {
                Value::Number(n) => n.as_i64().map(BigInt::from).ok_or_else(bad),
                Value::String(s) => s.parse::<BigInt>().map_err(|_| bad()),
                _ => Err(bad()),
            }
        };
        let arr = v.as_array().ok_or_else(bad)?;
        let mut p = Self::zero();
        let mut last: Option<i64> = None;
        for t in arr {
            let t = t.as_array().filter(|t| t.len() == 3).ok_or_else(bad)?;
            let e = t[0].as_i64().ok_or_else(bad)?;
            if last.is_some_and(|l| e >= l) {
                return Err(Error::Parse("polynomial JSON exponents must be strictly descending".into()));
            }
            last = Some(e);
            p.add_term(e, &GaussInt { re: big(&t[1])?, im: big(&t[2])? });
        }
        Ok(p)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms_desc()
            .map(|(e, c)| match e {
                0 => c.to_string(),
                1 => format!("{}A", c.fmt_as_coefficient()),
                _ => format!("{}A^{}", c.fmt_as_coefficient(), e),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;

    /// Accepts the `Display` grammar: terms `coeff*A^k` joined by `+`, where
    /// `coeff` is an integer, `i`, `bi`, or `(a±bi)`, and may be omitted.
    /// A bare `-` before a term negates it; `-` between terms also works.
    fn from_str(s: &str) -> Result<Self> {
        let src: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if src.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut p = Self::zero();
        for (neg, term) in split_terms(&src)? {
            let (coeff, exp) = parse_term(term)?;
            let coeff = if neg { -&coeff } else { coeff };
            p.add_term(exp, &coeff);
        }
        Ok(p)
    }
}

fn split_terms(src: &str) -> Result<Vec<(bool, &str)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0usize;
    let mut neg = false;
    for (i, &b) in bytes.iter().enumerate() {
        match b {
            b'(' => depth += 1,
            b')' => depth -= 1,
            // `^-2` is an exponent sign, not a term separator.
            b'+' | b'-' if depth == 0 && !(i > 0 && bytes[i - 1] == b'^') => {
                if i > start {
                    out.push((neg, &src[start..i]));
                    neg = b == b'-';
                } else if b == b'-' {
                    neg = !neg;
                }
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(Error::Parse(format!("unbalanced parentheses in '{src}'")));
    }
    if start >= src.len() {
        return Err(Error::Parse(format!("dangling operator in '{src}'")));
    }
    out.push((neg, &src[start..]));
    Ok(out)
}

fn parse_term(t: &str) -> Result<(GaussInt, i64)> {
    let bad = || Error::Parse(format!("bad polynomial term '{t}'"));
    let (coeff_part, var_part) = match t.find('A') {
        Some(pos) => (&t[..pos], Some(&t[pos + 1..])),
        None => (t, None),
    };
    let coeff_part = coeff_part.strip_suffix('*').unwrap_or(coeff_part);
    let coeff = if coeff_part.is_empty() {
        if var_part.is_none() {
            return Err(bad());
        }
        GaussInt::one()
    } else {
        parse_gauss(coeff_part).ok_or_else(bad)?
    };
    let exp = match var_part {
        None => 0,
        Some("") => 1,
        Some(rest) => rest.strip_prefix('^').ok_or_else(bad)?.parse::<i64>().map_err(|_| bad())?,
    };
    Ok((coeff, exp))
}

fn parse_gauss(s: &str) -> Option<GaussInt> {
    if let Some(inner) = s.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
        // a+bi or a-bi, possibly a lone real or imaginary part
        let split = inner.char_indices().skip(1).filter(|(_, c)| *c == '+' || *c == '-').last();
        return match split {
            Some((pos, _)) if inner.ends_with('i') => {
                let re = inner[..pos].parse::<BigInt>().ok()?;
                let im = parse_imag(&inner[pos..])?;
                Some(GaussInt { re, im })
            }
            _ => parse_gauss(inner),
        };
    }
    if s.ends_with('i') {
        return Some(GaussInt { re: BigInt::zero(), im: parse_imag(s)? });
    }
    s.parse::<BigInt>().ok().map(GaussInt::real)
}

fn parse_imag(s: &str) -> Option<BigInt> {
    let body = s.strip_suffix('i')?;
    match body {
        "" | "+" => Some(BigInt::from(1)),
        "-" => Some(BigInt::from(-1)),
        _ => body.strip_prefix('+').unwrap_or(body).parse::<BigInt>().ok(),
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c);
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, &-c);
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        out.add_mul_assign(self, rhs);
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}
