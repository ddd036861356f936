//! Value rings for the invariants: exact Laurent polynomials over the
//! Gaussian integers, and `Complex64` for numeric checks.

mod gauss;
mod poly;

use std::fmt::Debug;

pub use gauss::GaussInt;
pub use num_complex::Complex64;
pub use poly::LaurentPoly;

/// Ring contract shared by the exact and numeric scalar kinds. Tensors and
/// the state-sum engine are generic over it; the two kinds never mix.
pub trait Scalar: Clone + Debug + PartialEq + Send + Sync + 'static {
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(n: i64) -> Self;
    fn is_zero(&self) -> bool;

    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;

    /// `self += a * b`.
    fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        *self = self.add(&a.mul(b));
    }

    /// Exact quotient for exact scalars; ordinary division (non-zero
    /// divisor) for numeric ones.
    fn try_div(&self, rhs: &Self) -> Option<Self>;

    /// Pivot preference for elimination: larger is better, zero means unusable.
    fn pivot_weight(&self) -> f64;

    /// Entrywise magnitude used for residuals; exact scalars report 0 or 1.
    fn magnitude(&self) -> f64;

    /// Equality for exact scalars, `|a - b| <= tol` for numeric ones.
    fn close_to(&self, other: &Self, tol: f64) -> bool;

    /// Gaussian-integer constant.
    fn from_gauss(g: &GaussInt) -> Self;
}

impl Scalar for LaurentPoly {
    const EXACT: bool = true;

    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn one() -> Self {
        LaurentPoly::one()
    }
    fn from_int(n: i64) -> Self {
        LaurentPoly::from_int(n)
    }
    fn is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        LaurentPoly::add_mul_assign(self, a, b)
    }
    fn try_div(&self, rhs: &Self) -> Option<Self> {
        self.div_exact(rhs)
    }
    fn pivot_weight(&self) -> f64 {
        if self.is_zero() {
            0.0
        } else if self.is_unit() {
            2.0
        } else {
            1.0
        }
    }
    fn magnitude(&self) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            1.0
        }
    }
    fn close_to(&self, other: &Self, _tol: f64) -> bool {
        self == other
    }
    fn from_gauss(g: &GaussInt) -> Self {
        LaurentPoly::constant(g.clone())
    }
}

impl Scalar for Complex64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_int(n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }
    fn try_div(&self, rhs: &Self) -> Option<Self> {
        if Scalar::is_zero(rhs) {
            None
        } else {
            Some(self / rhs)
        }
    }
    fn pivot_weight(&self) -> f64 {
        self.norm()
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
    fn close_to(&self, other: &Self, tol: f64) -> bool {
        (self - other).norm() <= tol
    }
    fn from_gauss(g: &GaussInt) -> Self {
        let (re, im) = g.to_f64_pair();
        Complex64::new(re, im)
    }
}

/// `e^{iθ}`.
pub fn unit_circle(theta: f64) -> Complex64 {
    Complex64::from_polar(1.0, theta)
}
