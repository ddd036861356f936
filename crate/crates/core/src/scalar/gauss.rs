use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Gaussian integer `re + im·i` with arbitrary-precision parts.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussInt {
    pub re: BigInt,
    pub im: BigInt,
}

impl GaussInt {
    pub fn new(re: impl Into<BigInt>, im: impl Into<BigInt>) -> Self {
        Self { re: re.into(), im: im.into() }
    }

    pub fn real(re: impl Into<BigInt>) -> Self {
        Self::new(re, 0)
    }

    pub fn i() -> Self {
        Self::new(0, 1)
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::real(1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: -&self.im }
    }

    pub fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    /// One of `1, -1, i, -i`.
    pub fn is_unit(&self) -> bool {
        self.norm().is_one()
    }

    /// Exact quotient, or `None` when `rhs` does not divide `self` in ℤ[i].
    pub fn div_exact(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        let n = rhs.norm();
        let num = self * &rhs.conj();
        let (qr, rr) = num.re.div_rem(&n);
        let (qi, ri) = num.im.div_rem(&n);
        if rr.is_zero() && ri.is_zero() {
            Some(Self { re: qr, im: qi })
        } else {
            None
        }
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        use num_traits::ToPrimitive;
        (
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    fn is_imag(&self) -> bool {
        self.re.is_zero() && !self.im.is_zero()
    }

    /// Coefficient text used in front of `A^k`: empty for 1, `-` for -1,
    /// `c*` / `ci*` / `(a+bi)*` otherwise.
    pub(crate) fn fmt_as_coefficient(&self) -> String {
        if self.is_one() {
            String::new()
        } else if self.is_real() && (-&self.re).is_one() {
            "-".to_string()
        } else {
            format!("{}*", self)
        }
    }
}

impl fmt::Display for GaussInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_real() {
            write!(f, "{}", self.re)
        } else if self.is_imag() {
            match (self.im.is_one(), (-&self.im).is_one()) {
                (true, _) => write!(f, "i"),
                (_, true) => write!(f, "-i"),
                _ => write!(f, "{}i", self.im),
            }
        } else {
            let sign = if self.im.is_negative() { '-' } else { '+' };
            let mag = self.im.abs();
            if mag.is_one() {
                write!(f, "({}{}i)", self.re, sign)
            } else {
                write!(f, "({}{}{}i)", self.re, sign, mag)
            }
        }
    }
}

impl fmt::Debug for GaussInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<i64> for GaussInt {
    fn from(v: i64) -> Self {
        Self::real(v)
    }
}

impl Add for &GaussInt {
    type Output = GaussInt;
    fn add(self, rhs: &GaussInt) -> GaussInt {
        GaussInt { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl Sub for &GaussInt {
    type Output = GaussInt;
    fn sub(self, rhs: &GaussInt) -> GaussInt {
        GaussInt { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl Mul for &GaussInt {
    type Output = GaussInt;
    fn mul(self, rhs: &GaussInt) -> GaussInt {
        GaussInt {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Neg for &GaussInt {
    type Output = GaussInt;
    fn neg(self) -> GaussInt {
        GaussInt { re: -&self.re, im: -&self.im }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn i_squared_is_minus_one() {
        let i = GaussInt::i();
        assert_eq!(&i * &i, GaussInt::real(-1));
    }

    #[test]
    fn exact_division() {
        let a = GaussInt::new(3, 4);
        let b = GaussInt::new(1, 2);
        let p = &a * &b;
        assert_eq!(p.div_exact(&b), Some(a));
        assert_eq!(GaussInt::real(3).div_exact(&GaussInt::real(2)), None);
        assert_eq!(GaussInt::real(2).div_exact(&GaussInt::new(1, 1)), Some(GaussInt::new(1, -1)));
    }

    #[test]
    fn display_forms() {
        assert_eq!(GaussInt::new(0, 1).to_string(), "i");
        assert_eq!(GaussInt::new(0, -3).to_string(), "-3i");
        assert_eq!(GaussInt::new(2, -1).to_string(), "(2-i)");
        assert_eq!(GaussInt::new(-2, 5).to_string(), "(-2+5i)");
        assert_eq!(GaussInt::real(-7).to_string(), "-7");
    }
}
