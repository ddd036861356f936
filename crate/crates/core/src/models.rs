//! The four concrete tangle models: bracket, swap-with-FG, product and
//! virtual.

use serde_json::{json, Value};

use crate::diagram::MorseDiagram;
use crate::error::{Error, Result};
use crate::linalg::Tensor;
use crate::scalar::{Complex64, GaussInt, LaurentPoly, Scalar};
use crate::statesum::transfer_matrix;

type P = LaurentPoly;

/// Reidemeister I factor: what a one-strand curl multiplies by.
#[derive(Clone, Debug, PartialEq)]
pub enum Curl<T> {
    Scalar(T),
    Matrix(Tensor<T>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Normalization {
    None,
    WritheMonomial,
}

/// Tensors are in the crate-wide row convention: `r` at row `a·n+b`,
/// column `c·n+d` is `R^{ab}_{cd}`; `cup[a,b] = M^{ab}`, `cap[a,b] = M_{ab}`.
/// `r` evaluates `X` crossings, `rbar` evaluates `Y` crossings.
#[derive(Clone, Debug, PartialEq)]
pub struct TangleModel<T> {
    pub name: String,
    pub n: usize,
    pub cup: Tensor<T>,
    pub cap: Tensor<T>,
    pub r: Tensor<T>,
    pub rbar: Tensor<T>,
    pub virtual_tensor: Option<Tensor<T>>,
    pub loop_value: T,
    pub curl_pos: Curl<T>,
    pub curl_neg: Curl<T>,
    pub normalization: Normalization,
}

impl<T: Scalar> TangleModel<T> {
    /// Fills in loop value and curl factors by contracting the model's own
    /// tensors.
    pub fn assemble(
        name: &str,
        cup: Tensor<T>,
        cap: Tensor<T>,
        r: Tensor<T>,
        rbar: Tensor<T>,
        virtual_tensor: Option<Tensor<T>>,
        normalization: Normalization,
    ) -> Result<Self> {
        let n = cup.rows();
        for (what, t, dim) in [("cup", &cup, n), ("cap", &cap, n), ("R", &r, n * n), ("R̄", &rbar, n * n)] {
            if t.shape() != [dim, dim] {
                return Err(Error::Shape(format!("{what} has shape {:?}, expected {dim}×{dim}", t.shape())));
            }
        }
        if let Some(v) = &virtual_tensor {
            if v.shape() != [n * n, n * n] {
                return Err(Error::Shape(format!("virtual tensor has shape {:?}", v.shape())));
            }
        }
        let mut loop_value = T::zero();
        for a in 0..n {
            for b in 0..n {
                loop_value.add_mul_assign(cup.get(a, b), cap.get(a, b));
            }
        }
        let mut m = Self {
            name: name.to_string(),
            n,
            cup,
            cap,
            r,
            rbar,
            virtual_tensor,
            loop_value,
            curl_pos: Curl::Scalar(T::one()),
            curl_neg: Curl::Scalar(T::one()),
            normalization,
        };
        m.curl_pos = curl_of(&transfer_matrix(&curl_diagram(true), &m)?);
        m.curl_neg = curl_of(&transfer_matrix(&curl_diagram(false), &m)?);
        Ok(m)
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> TangleModel<U> {
        let curl = |c: &Curl<T>| match c {
            Curl::Scalar(s) => Curl::Scalar(f(s)),
            Curl::Matrix(t) => Curl::Matrix(t.map(&f)),
        };
        TangleModel {
            name: self.name.clone(),
            n: self.n,
            cup: self.cup.map(&f),
            cap: self.cap.map(&f),
            r: self.r.map(&f),
            rbar: self.rbar.map(&f),
            virtual_tensor: self.virtual_tensor.as_ref().map(|v| v.map(&f)),
            loop_value: f(&self.loop_value),
            curl_pos: curl(&self.curl_pos),
            curl_neg: curl(&self.curl_neg),
            normalization: self.normalization,
        }
    }

    /// Tensor for an `X`/`Y`/`V` event.
    pub fn crossing_tensor(&self, kind: crate::diagram::EventKind) -> Option<&Tensor<T>> {
        use crate::diagram::EventKind::*;
        match kind {
            CrossPos => Some(&self.r),
            CrossNeg => Some(&self.rbar),
            Virtual => self.virtual_tensor.as_ref(),
            _ => None,
        }
    }
}

impl TangleModel<LaurentPoly> {
    /// Numeric copy at `A = a`.
    pub fn eval_at(&self, a: Complex64) -> Result<TangleModel<Complex64>> {
        if a.norm() == 0.0 {
            return Err(Error::Precondition("A = 0 is not allowed".into()));
        }
        Ok(self.map(|p| p.eval(a).expect("non-zero base")))
    }

    pub fn to_json(&self) -> Value {
        let curl = |c: &Curl<P>| match c {
            Curl::Scalar(s) => json!({"scalar": s.to_json()}),
            Curl::Matrix(t) => json!({"matrix": t.to_json()}),
        };
        json!({
            "name": self.name,
            "n": self.n,
            "cup": self.cup.to_json(),
            "cap": self.cap.to_json(),
            "R": self.r.to_json(),
            "Rbar": self.rbar.to_json(),
            "virtual": self.virtual_tensor.as_ref().map(|v| v.to_json()),
            "loop_value": self.loop_value.to_json(),
            "curl_pos": curl(&self.curl_pos),
            "curl_neg": curl(&self.curl_neg),
        })
    }
}

/// One strand with a single kink: `U1,X0,A1` (writhe +1) or `U1,Y0,A1`.
pub fn curl_diagram(positive: bool) -> MorseDiagram {
    let s = if positive { "1: U1,X0,A1" } else { "1: U1,Y0,A1" };
    s.parse().expect("static diagram")
}

fn curl_of<T: Scalar>(t: &Tensor<T>) -> Curl<T> {
    let n = t.rows();
    let c = t.get(0, 0).clone();
    let zero = T::zero();
    let scalar = (0..n).all(|i| (0..n).all(|j| t.get(i, j).close_to(if i == j { &c } else { &zero }, 0.0)));
    if scalar {
        Curl::Scalar(c)
    } else {
        Curl::Matrix(t.clone())
    }
}

fn poly_matrix(n: usize, entries: Vec<P>) -> Tensor<P> {
    Tensor::matrix(n, n, entries).expect("static shape")
}

fn ints(n: usize, v: &[i64]) -> Tensor<P> {
    poly_matrix(n, v.iter().map(|&x| P::from_int(x)).collect())
}

/// `M = [[0, iA], [−iA⁻¹, 0]]`.
pub fn bracket_m() -> Tensor<P> {
    poly_matrix(
        2,
        vec![P::zero(), P::monomial(GaussInt::i(), 1), P::monomial(GaussInt::new(0, -1), -1), P::zero()],
    )
}

/// `U[(a,b),(c,d)] = M^{ab} M_{cd}`: the cup-over-cap smoothing.
pub fn cupcap_tensor<T: Scalar>(cup: &Tensor<T>, cap: &Tensor<T>) -> Tensor<T> {
    let n = cup.rows();
    Tensor::from_fn(n * n, n * n, |r, c| cup.get(r / n, r % n).mul(cap.get(c / n, c % n)))
}

/// `A·M^{ab}M_{cd} + A⁻¹·δ^a_c δ^b_d`, entry for entry as printed:
/// `[[A⁻¹,0,0,0],[0,A⁻¹−A³,A,0],[0,A,0,0],[0,0,0,A⁻¹]]`. It is the bracket
/// model's `Y` tensor.
pub fn bracket_r_matrix() -> Tensor<P> {
    let m = bracket_m();
    let u = cupcap_tensor(&m, &m);
    u.scale(&P::a_pow(1)).add(&Tensor::identity(4).scale(&P::a_pow(-1))).expect("4×4")
}

/// Bracket model: `X = A·id + A⁻¹·U`, `Y = A⁻¹·id + A·U`, loop value
/// `−A²−A⁻²`, positive curl `−A³`.
pub fn bracket_model() -> TangleModel<P> {
    let m = bracket_m();
    let u = cupcap_tensor(&m, &m);
    let id = Tensor::<P>::identity(4);
    let x = id.scale(&P::a_pow(1)).add(&u.scale(&P::a_pow(-1))).expect("4×4");
    let y = bracket_r_matrix();
    TangleModel::assemble("bracket", m.clone(), m, x, y, None, Normalization::WritheMonomial)
        .expect("bracket model is well-formed")
}

pub fn f_matrix() -> Tensor<P> {
    ints(3, &[0, 0, 1, 0, 1, 0, 1, 0, 0])
}

pub fn g_matrix() -> Tensor<P> {
    ints(3, &[1, 0, 0, 0, -1, 0, 0, 0, 1])
}

/// `R = S∘(F⊗G)` with identity cups and caps on a 3-dimensional space. The
/// curl factor is the matrix `FG`, so there is no monomial normalization.
pub fn swap_fg_model() -> TangleModel<P> {
    swap_model_from(&f_matrix(), &g_matrix()).expect("F, G invertible")
}

/// Swap-form model `S∘(F⊗G)` for arbitrary invertible `F`, `G`.
pub fn swap_model_from(f: &Tensor<P>, g: &Tensor<P>) -> Result<TangleModel<P>> {
    let n = f.rows();
    // row convention: (S·(F⊗G))ᵀ = (Fᵀ⊗Gᵀ)·S
    let r = f.transpose().kron(&g.transpose())?.mat_mul(&Tensor::swap(n))?;
    let rbar = r.inverse()?;
    let id = Tensor::identity(n);
    TangleModel::assemble("swapfg", id.clone(), id, r, rbar, Some(Tensor::swap(n)), Normalization::None)
}

/// Cup and cap for the product model.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProductCups {
    /// `M^{00} = M_{00} = 1`.
    Unit,
    /// `M^{00} = A`, `M_{00} = A⁻¹`.
    Scaled,
}

/// Product-form model `R = s`, `R̄ = s⁻¹` on a one-dimensional space, where
/// `s = i^k`. Only `s = ±1` satisfies every consistency equation; for
/// `s = ±i` the model is still evaluable on diagrams without slides.
pub fn product_model(s_exponent: i64) -> Result<TangleModel<P>> {
    product_model_with(s_exponent, ProductCups::Unit)
}

pub fn product_model_with(s_exponent: i64, cups: ProductCups) -> Result<TangleModel<P>> {
    let s = P::constant(i_power(s_exponent));
    if s.pow(4) != Some(P::one()) {
        return Err(Error::Precondition("s must be a 4th root of unity".into()));
    }
    let sbar = s.inverse().expect("unit");
    let (cup, cap) = match cups {
        ProductCups::Unit => (P::one(), P::one()),
        ProductCups::Scaled => (P::a_pow(1), P::a_pow(-1)),
    };
    let one = |x: P| Tensor::matrix(1, 1, vec![x]).expect("1×1");
    TangleModel::assemble("product", one(cup), one(cap), one(s), one(sbar), Some(one(P::one())), Normalization::WritheMonomial)
}

/// `i^k` as a Gaussian integer.
pub fn i_power(k: i64) -> GaussInt {
    match k.rem_euclid(4) {
        0 => GaussInt::one(),
        1 => GaussInt::i(),
        2 => GaussInt::real(-1),
        _ => GaussInt::new(0, -1),
    }
}

/// `[[0,0,0,A],[0,A⁻¹,0,0],[0,0,A⁻¹,0],[A,0,0,0]]`.
pub fn virtual_r_matrix() -> Tensor<P> {
    let (a, ai, z) = (P::a_pow(1), P::a_pow(-1), P::zero);
    poly_matrix(
        4,
        vec![
            z(), z(), z(), a.clone(),
            z(), ai.clone(), z(), z(),
            z(), z(), ai, z(),
            a, z(), z(), z(),
        ],
    )
}

/// Virtual model with symbolic `A`: the matrix above, the swap gate for
/// virtual crossings, identity cups and caps.
pub fn virtual_model() -> TangleModel<P> {
    let r = virtual_r_matrix();
    let rbar = r.inverse().expect("unit determinant");
    let id = Tensor::identity(2);
    TangleModel::assemble("virtual", id.clone(), id, r, rbar, Some(Tensor::swap(2)), Normalization::WritheMonomial)
        .expect("virtual model is well-formed")
}

/// Numeric virtual model at `A = a`, which must lie on the unit circle.
pub fn virtual_model_numeric(a: Complex64) -> Result<TangleModel<Complex64>> {
    if (a.norm() - 1.0).abs() > 1e-12 {
        return Err(Error::Precondition(format!("|A| = {} is not 1", a.norm())));
    }
    virtual_model().eval_at(a)
}

/// Model by CLI name.
pub fn by_name(name: &str, s_exponent: i64) -> Result<TangleModel<P>> {
    match name {
        "bracket" => Ok(bracket_model()),
        "swapfg" => Ok(swap_fg_model()),
        "product" => product_model(s_exponent),
        "virtual" => Ok(virtual_model()),
        other => Err(Error::Parse(format!("unknown model '{other}' (bracket|swapfg|product|virtual)"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn m_squared_is_identity() {
        let m = bracket_m();
        assert_eq!(m.mat_mul(&m).unwrap(), Tensor::identity(2));
    }

    #[test]
    fn bracket_loop_and_curl() {
        let b = bracket_model();
        let delta = -(P::a_pow(2) + P::a_pow(-2));
        assert_eq!(b.loop_value, delta);
        assert_eq!(b.curl_pos, Curl::Scalar(-P::a_pow(3)));
        assert_eq!(b.curl_neg, Curl::Scalar(-P::a_pow(-3)));
    }

    #[test]
    fn bracket_r_inverse() {
        let b = bracket_model();
        assert_eq!(b.r.mat_mul(&b.rbar).unwrap(), Tensor::identity(4));
        assert_eq!(b.rbar, bracket_r_matrix());
    }

    #[test]
    fn printed_bracket_r_entries() {
        let r = bracket_r_matrix();
        let (a, ai) = (P::a_pow(1), P::a_pow(-1));
        let expect = poly_matrix(
            4,
            vec![
                ai.clone(), P::zero(), P::zero(), P::zero(),
                P::zero(), &ai - &P::a_pow(3), a.clone(), P::zero(),
                P::zero(), a, P::zero(), P::zero(),
                P::zero(), P::zero(), P::zero(), ai,
            ],
        );
        assert_eq!(r, expect);
    }

    #[test]
    fn swap_fg_data() {
        let (f, g) = (f_matrix(), g_matrix());
        assert_eq!(f.mat_mul(&f).unwrap(), Tensor::identity(3));
        assert_eq!(g.mat_mul(&g).unwrap(), Tensor::identity(3));
        let fg = f.mat_mul(&g).unwrap();
        assert_eq!(fg, ints(3, &[0, 0, 1, 0, -1, 0, 1, 0, 0]));
        let m = swap_fg_model();
        assert_eq!(m.loop_value, P::from_int(3));
        // the curl is FG in one of its two transposes; FG is symmetric
        assert_eq!(m.curl_pos, Curl::Matrix(fg.clone()));
        assert_eq!(m.curl_neg, Curl::Matrix(fg));
    }

    #[test]
    fn product_models() {
        let p = product_model(1).unwrap();
        assert_eq!(p.curl_pos, Curl::Scalar(P::constant(GaussInt::i())));
        assert_eq!(p.loop_value, P::one());
        let q = product_model_with(2, ProductCups::Scaled).unwrap();
        assert_eq!(q.loop_value, P::one());
        assert_eq!(q.curl_pos, Curl::Scalar(P::from_int(-1)));
    }

    #[test]
    fn virtual_model_data() {
        let v = virtual_model();
        assert_eq!(v.loop_value, P::from_int(2));
        assert_eq!(v.curl_pos, Curl::Scalar(P::a_pow(-1)));
        assert_eq!(v.curl_neg, Curl::Scalar(P::a_pow(1)));
        assert!(virtual_model_numeric(Complex64::new(2.0, 0.0)).is_err());
        let num = virtual_model_numeric(crate::scalar::unit_circle(0.3)).unwrap();
        assert!(num.r.is_unitary(1e-12));
    }

    #[test]
    fn model_names() {
        assert!(by_name("bracket", 0).is_ok());
        assert!(matches!(by_name("homfly", 0), Err(Error::Parse(_))));
    }
}
