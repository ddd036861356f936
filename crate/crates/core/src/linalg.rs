//! Small dense tensors over a [`Scalar`], row-major.
//!
//! A crossing tensor `R^{ab}_{cd}` on `V ⊗ V` (dim `V` = n) is stored as an
//! `n² × n²` matrix with `R^{ab}_{cd}` at row `a·n + b`, column `c·n + d`.
//! The row pair is the top (incoming) end of the crossing, the column pair
//! the bottom (outgoing) end, so a slice state `ψ` maps to `ψ·R`.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::scalar::{Complex64, LaurentPoly, Scalar};

#[derive(Clone, PartialEq, Debug)]
pub struct Tensor<T> {
    shape: Vec<usize>,
    entries: Vec<T>,
}

impl<T: Scalar> Tensor<T> {
    pub fn new(shape: Vec<usize>, entries: Vec<T>) -> Result<Self> {
        let len: usize = shape.iter().product();
        if len != entries.len() {
            return Err(Error::Shape(format!(
                "shape {shape:?} needs {len} entries, got {}",
                entries.len()
            )));
        }
        Ok(Self { shape, entries })
    }

    pub fn matrix(rows: usize, cols: usize, entries: Vec<T>) -> Result<Self> {
        Self::new(vec![rows, cols], entries)
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let entries = (0..rows * cols).map(|k| f(k / cols, k % cols)).collect();
        Self { shape: vec![rows, cols], entries }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn diag(d: &[T]) -> Self {
        let n = d.len();
        Self::from_fn(n, n, |i, j| if i == j { d[i].clone() } else { T::zero() })
    }

    /// Swap operator `S(x ⊗ y) = y ⊗ x` on `V ⊗ V`, dim `V` = n.
    pub fn swap(n: usize) -> Self {
        Self::from_fn(n * n, n * n, |r, c| {
            let (a, b) = (r / n, r % n);
            if c == b * n + a {
                T::one()
            } else {
                T::zero()
            }
        })
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn rows(&self) -> usize {
        self.shape[0]
    }

    pub fn cols(&self) -> usize {
        self.shape.get(1).copied().unwrap_or(1)
    }

    pub fn is_square(&self) -> bool {
        self.shape.len() == 2 && self.shape[0] == self.shape[1]
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.cols() + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        let c = self.cols();
        self.entries[i * c + j] = v;
    }

    pub fn map<U: Scalar>(&self, f: impl FnMut(&T) -> U) -> Tensor<U> {
        Tensor { shape: self.shape.clone(), entries: self.entries.iter().map(f).collect() }
    }

    pub fn try_map<U: Scalar>(&self, f: impl FnMut(&T) -> Result<U>) -> Result<Tensor<U>> {
        Ok(Tensor { shape: self.shape.clone(), entries: self.entries.iter().map(f).collect::<Result<_>>()? })
    }

    fn require_matrix(&self, what: &str) -> Result<()> {
        if self.shape.len() != 2 {
            return Err(Error::Shape(format!("{what}: expected a matrix, got shape {:?}", self.shape)));
        }
        Ok(())
    }

    fn require_square(&self, what: &str) -> Result<usize> {
        if !self.is_square() {
            return Err(Error::Shape(format!("{what}: expected a square matrix, got shape {:?}", self.shape)));
        }
        Ok(self.shape[0])
    }

    /// Dimension `n` of `V` for a matrix on `V ⊗ V`.
    pub fn factor_dim(&self) -> Result<usize> {
        let n2 = self.require_square("operator on V⊗V")?;
        let n = (n2 as f64).sqrt().round() as usize;
        if n * n != n2 {
            return Err(Error::Shape(format!("{n2}×{n2} is not an operator on V⊗V")));
        }
        Ok(n)
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|x| x.mul(s))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.shape != other.shape {
            return Err(Error::Shape(format!("add: {:?} vs {:?}", self.shape, other.shape)));
        }
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a.add(b)).collect();
        Ok(Self { shape: self.shape.clone(), entries })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.map(|x| x.neg()))
    }

    pub fn transpose(&self) -> Self {
        let (r, c) = (self.rows(), self.cols());
        Self::from_fn(c, r, |i, j| self.get(j, i).clone())
    }

    pub fn mat_mul(&self, other: &Self) -> Result<Self> {
        self.require_matrix("mat_mul")?;
        other.require_matrix("mat_mul")?;
        if self.cols() != other.rows() {
            return Err(Error::Shape(format!("mat_mul: {:?} · {:?}", self.shape, other.shape)));
        }
        let (r, k, c) = (self.rows(), self.cols(), other.cols());
        let mut out = Self::zeros(r, c);
        for i in 0..r {
            for l in 0..k {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..c {
                    let b = other.get(l, j);
                    if !b.is_zero() {
                        out.entries[i * c + j].add_mul_assign(a, b);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Kronecker product of two square matrices: block `(i, j)` is `x[i,j]·y`.
    pub fn kron(&self, other: &Self) -> Result<Self> {
        let n = self.require_square("kron")?;
        let m = other.require_square("kron")?;
        Ok(Self::from_fn(n * m, n * m, |r, c| {
            self.get(r / m, c / m).mul(other.get(r % m, c % m))
        }))
    }

    pub fn trace(&self) -> Result<T> {
        let n = self.require_square("trace")?;
        let mut acc = T::zero();
        for i in 0..n {
            acc = acc.add(self.get(i, i));
        }
        Ok(acc)
    }

    pub fn det2(&self) -> Result<T> {
        if self.shape != [2, 2] {
            return Err(Error::Shape(format!("det2 needs 2×2, got {:?}", self.shape)));
        }
        Ok(self.get(0, 0).mul(self.get(1, 1)).sub(&self.get(0, 1).mul(self.get(1, 0))))
    }

    /// Determinant by fraction-free (Bareiss) elimination; all divisions are
    /// exact in an integral domain.
    pub fn det(&self) -> Result<T> {
        let n = self.require_square("det")?;
        if n == 0 {
            return Ok(T::one());
        }
        let mut m: Vec<Vec<T>> = (0..n).map(|i| (0..n).map(|j| self.get(i, j).clone()).collect()).collect();
        let mut sign = false;
        let mut prev = T::one();
        for k in 0..n - 1 {
            let pivot_row = (k..n)
                .filter(|&i| !m[i][k].is_zero())
                .max_by(|&a, &b| m[a][k].pivot_weight().total_cmp(&m[b][k].pivot_weight()));
            let Some(p) = pivot_row else {
                return Ok(T::zero());
            };
            if p != k {
                m.swap(p, k);
                sign = !sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = m[k][k].mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                    m[i][j] = num
                        .try_div(&prev)
                        .ok_or_else(|| Error::Internal("inexact Bareiss division".into()))?;
                }
                m[i][k] = T::zero();
            }
            prev = m[k][k].clone();
        }
        let d = m[n - 1][n - 1].clone();
        Ok(if sign { d.neg() } else { d })
    }

    /// Inverse as adjugate over determinant. Exact scalars need a unit
    /// determinant; numeric scalars use Gauss-Jordan with partial pivoting.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.require_square("inverse")?;
        if !T::EXACT {
            return self.gauss_jordan_inverse(n);
        }
        let det = self.det()?;
        if det.is_zero() {
            return Err(Error::Singular("determinant is zero".into()));
        }
        let mut out = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let minor = Self::from_fn(n - 1, n - 1, |r, c| {
                    let rr = if r >= j { r + 1 } else { r };
                    let cc = if c >= i { c + 1 } else { c };
                    self.get(rr, cc).clone()
                });
                let cof = minor.det()?;
                let cof = if (i + j) % 2 == 1 { cof.neg() } else { cof };
                let v = cof
                    .try_div(&det)
                    .ok_or_else(|| Error::Singular(format!("determinant {det:?} is not a unit")))?;
                out.set(i, j, v);
            }
        }
        Ok(out)
    }

    fn gauss_jordan_inverse(&self, n: usize) -> Result<Self> {
        let mut a: Vec<Vec<T>> = (0..n).map(|i| (0..n).map(|j| self.get(i, j).clone()).collect()).collect();
        let mut inv: Vec<Vec<T>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { T::one() } else { T::zero() }).collect())
            .collect();
        let scale = self.entries.iter().map(Scalar::magnitude).fold(0.0, f64::max).max(1e-300);
        for k in 0..n {
            let p = (k..n)
                .max_by(|&x, &y| a[x][k].pivot_weight().total_cmp(&a[y][k].pivot_weight()))
                .expect("non-empty range");
            if a[p][k].pivot_weight() <= 1e-13 * scale {
                return Err(Error::Singular("pivot below tolerance".into()));
            }
            a.swap(p, k);
            inv.swap(p, k);
            let piv = a[k][k].clone();
            for j in 0..n {
                a[k][j] = a[k][j].try_div(&piv).expect("non-zero pivot");
                inv[k][j] = inv[k][j].try_div(&piv).expect("non-zero pivot");
            }
            for i in 0..n {
                if i == k || a[i][k].is_zero() {
                    continue;
                }
                let f = a[i][k].clone();
                for j in 0..n {
                    a[i][j] = a[i][j].sub(&f.mul(&a[k][j]));
                    inv[i][j] = inv[i][j].sub(&f.mul(&inv[k][j]));
                }
            }
        }
        Ok(Self::from_fn(n, n, |i, j| inv[i][j].clone()))
    }

    /// `(Tr₂ x)[a, c] = Σ_b x[(a,b), (c,b)]` for `x` on `V ⊗ V`, dim `V` = n.
    pub fn partial_trace_second(&self, n: usize) -> Result<Self> {
        let d = self.require_square("partial_trace_second")?;
        if d != n * n {
            return Err(Error::Shape(format!("partial trace: {d}×{d} is not ({n}²)×({n}²)")));
        }
        Ok(Self::from_fn(n, n, |a, c| {
            let mut acc = T::zero();
            for b in 0..n {
                acc = acc.add(self.get(a * n + b, c * n + b));
            }
            acc
        }))
    }

    /// Largest entrywise magnitude of `self - other` (0/1 for exact scalars).
    pub fn max_residual(&self, other: &Self) -> Result<f64> {
        let d = self.sub(other)?;
        Ok(d.entries.iter().map(Scalar::magnitude).fold(0.0, f64::max))
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.shape == other.shape && self.entries.iter().zip(&other.entries).all(|(a, b)| a.close_to(b, tol))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }
}

impl Tensor<Complex64> {
    pub fn adjoint(&self) -> Self {
        let (r, c) = (self.rows(), self.cols());
        Self::from_fn(c, r, |i, j| self.get(j, i).conj())
    }

    /// True iff `max |x†x − I| ≤ tol`.
    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_residual().is_some_and(|r| r <= tol)
    }

    pub fn unitarity_residual(&self) -> Option<f64> {
        let n = self.require_square("is_unitary").ok()?;
        let p = self.adjoint().mat_mul(self).ok()?;
        p.max_residual(&Self::identity(n)).ok()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "shape": self.shape,
            "entries": self.entries.iter().map(|z| json!([z.re, z.im])).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let (shape, raw) = split_json(v)?;
        let entries = raw
            .iter()
            .map(|e| match e {
                Value::Number(n) => n.as_f64().map(|re| Complex64::new(re, 0.0)),
                Value::Array(p) if p.len() == 2 => Some(Complex64::new(p[0].as_f64()?, p[1].as_f64()?)),
                _ => None,
            })
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::Parse("numeric entries must be [re, im] pairs or numbers".into()))?;
        Self::new(shape, entries)
    }
}

impl Tensor<LaurentPoly> {
    pub fn eval(&self, a: Complex64) -> Result<Tensor<Complex64>> {
        self.try_map(|p| p.eval(a))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "shape": self.shape,
            "entries": self.entries.iter().map(LaurentPoly::to_json).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let (shape, raw) = split_json(v)?;
        let entries = raw.iter().map(LaurentPoly::from_json).collect::<Result<Vec<_>>>()?;
        Self::new(shape, entries)
    }
}

fn split_json(v: &Value) -> Result<(Vec<usize>, &Vec<Value>)> {
    let shape = v
        .get("shape")
        .and_then(Value::as_array)
        .and_then(|s| s.iter().map(|d| d.as_u64().map(|d| d as usize)).collect::<Option<Vec<_>>>())
        .ok_or_else(|| Error::Parse("tensor JSON needs an integer 'shape' list".into()))?;
    let entries = v
        .get("entries")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("tensor JSON needs an 'entries' list".into()))?;
    Ok((shape, entries))
}

/// Scalar tensor kind read from JSON: exact when every entry is a
/// polynomial triple list, numeric otherwise.
pub enum AnyTensor {
    Exact(Tensor<LaurentPoly>),
    Numeric(Tensor<Complex64>),
}

impl AnyTensor {
    pub fn from_json(v: &Value) -> Result<Self> {
        let (_, raw) = split_json(v)?;
        let exact = raw
            .iter()
            .all(|e| e.as_array().is_some_and(|t| t.iter().all(|x| x.is_array())));
        if exact {
            Tensor::<LaurentPoly>::from_json(v).map(AnyTensor::Exact)
        } else {
            Tensor::<Complex64>::from_json(v).map(AnyTensor::Numeric)
        }
    }
}
