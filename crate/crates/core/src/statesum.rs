//! Transfer-matrix evaluation of Morse diagrams.
//!
//! The state after each slice is a dense vector of `n^k` amplitudes (`k` the
//! slice width, position 0 the most significant digit). Cups inject `M^{ab}`,
//! caps contract with `M_{ab}`, crossings apply their `n²×n²` tensor to two
//! adjacent digits in place. Cost per event is `O(n^{k+2})` scalar
//! operations; memory is `n^{max width}`.

use std::thread;

use crate::diagram::{EventKind, MorseDiagram};
use crate::error::{Error, Result};
use crate::linalg::Tensor;
use crate::models::{Curl, Normalization, TangleModel};
use crate::scalar::{LaurentPoly, Scalar};

/// Default width cap: 12 for `n = 2`, 8 for `n ≥ 3`.
pub fn default_width_cap(n: usize) -> usize {
    match n {
        0 | 1 => 64,
        2 => 12,
        _ => 8,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector<T> {
    pub width: usize,
    pub amplitudes: Vec<T>,
}

/// Sparse view of a crossing tensor: `(a·n+b) → [(c·n+d, R)]`.
struct Sparse<T> {
    rows: Vec<Vec<(usize, T)>>,
}

impl<T: Scalar> Sparse<T> {
    fn of(t: &Tensor<T>) -> Self {
        let rows = (0..t.rows())
            .map(|r| {
                (0..t.cols())
                    .filter(|&c| !t.get(r, c).is_zero())
                    .map(|c| (c, t.get(r, c).clone()))
                    .collect()
            })
            .collect();
        Self { rows }
    }
}

struct Engine<'m, T> {
    n: usize,
    model: &'m TangleModel<T>,
    x: Sparse<T>,
    y: Sparse<T>,
    v: Option<Sparse<T>>,
    overrides: Option<Vec<Sparse<T>>>,
}

impl<'m, T: Scalar> Engine<'m, T> {
    fn new(model: &'m TangleModel<T>) -> Self {
        Self {
            n: model.n,
            model,
            x: Sparse::of(&model.r),
            y: Sparse::of(&model.rbar),
            v: model.virtual_tensor.as_ref().map(Sparse::of),
            overrides: None,
        }
    }

    fn check(&self, d: &MorseDiagram, cap: usize) -> Result<()> {
        d.widths()?;
        if d.has_virtual() && self.v.is_none() {
            return Err(Error::Precondition(format!("model '{}' has no virtual tensor", self.model.name)));
        }
        let w = d.max_width();
        if w > cap {
            return Err(Error::WidthCap { width: w, cap });
        }
        Ok(())
    }

    fn run(&self, d: &MorseDiagram, mut psi: StateVector<T>) -> StateVector<T> {
        let mut classical = 0;
        for e in d.events() {
            psi = match e.kind {
                EventKind::Cup => self.cup(&psi, e.pos),
                EventKind::Cap => self.cap(&psi, e.pos),
                EventKind::CrossPos | EventKind::CrossNeg => {
                    let t = match &self.overrides {
                        Some(o) => &o[classical],
                        None if e.kind == EventKind::CrossPos => &self.x,
                        None => &self.y,
                    };
                    classical += 1;
                    self.cross(&psi, e.pos, t)
                }
                EventKind::Virtual => self.cross(&psi, e.pos, self.v.as_ref().expect("checked")),
            };
        }
        psi
    }

    fn cup(&self, psi: &StateVector<T>, p: usize) -> StateVector<T> {
        let n = self.n;
        let right = n.pow((psi.width - p) as u32);
        let left = n.pow(p as u32);
        let mut out = vec![T::zero(); psi.amplitudes.len() * n * n];
        for l in 0..left {
            for a in 0..n {
                for b in 0..n {
                    let m = self.model.cup.get(a, b);
                    if m.is_zero() {
                        continue;
                    }
                    let base = ((l * n + a) * n + b) * right;
                    for r in 0..right {
                        let src = &psi.amplitudes[l * right + r];
                        if !src.is_zero() {
                            out[base + r] = src.mul(m);
                        }
                    }
                }
            }
        }
        StateVector { width: psi.width + 2, amplitudes: out }
    }

    fn cap(&self, psi: &StateVector<T>, p: usize) -> StateVector<T> {
        let n = self.n;
        let right = n.pow((psi.width - p - 2) as u32);
        let left = n.pow(p as u32);
        let mut out = vec![T::zero(); left * right];
        for l in 0..left {
            for a in 0..n {
                for b in 0..n {
                    let m = self.model.cap.get(a, b);
                    if m.is_zero() {
                        continue;
                    }
                    let base = ((l * n + a) * n + b) * right;
                    for r in 0..right {
                        let src = &psi.amplitudes[base + r];
                        if !src.is_zero() {
                            out[l * right + r].add_mul_assign(src, m);
                        }
                    }
                }
            }
        }
        StateVector { width: psi.width - 2, amplitudes: out }
    }

    fn cross(&self, psi: &StateVector<T>, p: usize, t: &Sparse<T>) -> StateVector<T> {
        let n = self.n;
        let right = n.pow((psi.width - p - 2) as u32);
        let left = n.pow(p as u32);
        let mut out = vec![T::zero(); psi.amplitudes.len()];
        for l in 0..left {
            for (ab, row) in t.rows.iter().enumerate() {
                let src_base = (l * n * n + ab) * right;
                for (cd, coeff) in row {
                    let dst_base = (l * n * n + cd) * right;
                    for r in 0..right {
                        let src = &psi.amplitudes[src_base + r];
                        if !src.is_zero() {
                            out[dst_base + r].add_mul_assign(src, coeff);
                        }
                    }
                }
            }
        }
        StateVector { width: psi.width, amplitudes: out }
    }
}

fn vacuum<T: Scalar>() -> StateVector<T> {
    StateVector { width: 0, amplitudes: vec![T::one()] }
}

/// Quantum link amplitude `Z_K` of a closed diagram.
pub fn evaluate<T: Scalar>(d: &MorseDiagram, m: &TangleModel<T>) -> Result<T> {
    evaluate_capped(d, m, default_width_cap(m.n))
}

pub fn evaluate_capped<T: Scalar>(d: &MorseDiagram, m: &TangleModel<T>, width_cap: usize) -> Result<T> {
    d.validate()?;
    let eng = Engine::new(m);
    eng.check(d, width_cap)?;
    let out = eng.run(d, vacuum());
    Ok(out.amplitudes.into_iter().next().expect("width 0 state has one entry"))
}

/// Evaluates with the `i`-th classical crossing (in event order) replaced by
/// `tensors[i]`.
pub fn evaluate_with_crossings<T: Scalar>(d: &MorseDiagram, m: &TangleModel<T>, tensors: &[Tensor<T>]) -> Result<T> {
    d.validate()?;
    if tensors.len() != d.crossing_count() {
        return Err(Error::Shape(format!("{} tensors for {} crossings", tensors.len(), d.crossing_count())));
    }
    let mut eng = Engine::new(m);
    eng.overrides = Some(tensors.iter().map(Sparse::of).collect());
    eng.check(d, default_width_cap(m.n))?;
    Ok(eng.run(d, vacuum()).amplitudes.into_iter().next().expect("scalar"))
}

/// Map from the initial slice to the final slice of an open diagram, row
/// `i` being the image of basis state `i`.
pub fn transfer_matrix<T: Scalar>(d: &MorseDiagram, m: &TangleModel<T>) -> Result<Tensor<T>> {
    let eng = Engine::new(m);
    eng.check(d, default_width_cap(m.n))?;
    let w0 = d.initial_width();
    let dim_in = m.n.pow(w0 as u32);
    let dim_out = m.n.pow(d.final_width() as u32);
    let mut entries = Vec::with_capacity(dim_in * dim_out);
    for i in 0..dim_in {
        let mut amps = vec![T::zero(); dim_in];
        amps[i] = T::one();
        entries.extend(eng.run(d, StateVector { width: w0, amplitudes: amps }).amplitudes);
    }
    Tensor::matrix(dim_in, dim_out, entries)
}

/// `curl_pos^{−w} · Z_K`.
pub fn normalized<T: Scalar>(d: &MorseDiagram, m: &TangleModel<T>) -> Result<T> {
    if m.normalization != Normalization::WritheMonomial {
        return Err(Error::Precondition(format!(
            "model '{}' has a matrix-valued curl factor; compare raw values at equal writhe instead",
            m.name
        )));
    }
    let Curl::Scalar(c) = &m.curl_pos else {
        return Err(Error::Precondition("curl factor is not a scalar".into()));
    };
    let z = evaluate(d, m)?;
    let w = d.writhe()?;
    let mut cw = T::one();
    for _ in 0..w.unsigned_abs() {
        cw = cw.mul(c);
    }
    if w >= 0 {
        z.try_div(&cw).ok_or_else(|| Error::Internal("curl factor does not divide the amplitude".into()))
    } else {
        Ok(z.mul(&cw))
    }
}

/// Evaluates independent diagrams on up to `jobs` threads; output order
/// matches input order.
pub fn evaluate_batch<T: Scalar>(ds: &[MorseDiagram], m: &TangleModel<T>, jobs: usize) -> Vec<Result<T>> {
    let jobs = jobs.max(1).min(ds.len().max(1));
    if jobs == 1 {
        return ds.iter().map(|d| evaluate(d, m)).collect();
    }
    let chunk = ds.len().div_ceil(jobs);
    thread::scope(|s| {
        let handles: Vec<_> = ds
            .chunks(chunk)
            .map(|part| s.spawn(move || part.iter().map(|d| evaluate(d, m)).collect::<Vec<_>>()))
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClosedFormCase {
    Product,
    Swap,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ClosedFormValue {
    Scalar(LaurentPoly),
    Matrix(Tensor<LaurentPoly>),
}

/// Closed-form value on an oriented diagram together with its inputs.
#[derive(Clone, Debug, PartialEq)]
pub struct ClosedForm {
    pub seifert_circles: usize,
    pub writhe: i64,
    pub positive: usize,
    pub negative: usize,
    pub components: usize,
    /// Exponent: `SC − w − 1` (product) or `w + N − P` (swap).
    pub exponent: i64,
    pub value: ClosedFormValue,
}

/// Product case: `δ^{SC−w−1}` with the given loop value. Swap case:
/// `(FG)^{w+N−P}`.
pub fn oriented_closed_form(d: &MorseDiagram, case: ClosedFormCase, delta: &LaurentPoly) -> Result<ClosedForm> {
    d.validate()?;
    let sk = d.skeleton()?;
    let (p, n) = sk.sign_counts();
    let w = sk.writhe();
    let sc = sk.seifert_count();
    let (exponent, value) = match case {
        ClosedFormCase::Product => {
            let e = sc as i64 - w - 1;
            let v = delta
                .pow(e)
                .ok_or_else(|| Error::Precondition("negative power of a non-unit loop value".into()))?;
            (e, ClosedFormValue::Scalar(v))
        }
        ClosedFormCase::Swap => {
            let e = w + n as i64 - p as i64;
            let fg = crate::models::f_matrix().mat_mul(&crate::models::g_matrix())?;
            let base = if e < 0 { fg.inverse()? } else { fg };
            let mut acc = Tensor::identity(3);
            for _ in 0..e.unsigned_abs() {
                acc = acc.mat_mul(&base)?;
            }
            (e, ClosedFormValue::Matrix(acc))
        }
    };
    Ok(ClosedForm { seifert_circles: sc, writhe: w, positive: p, negative: n, components: sk.component_count(), exponent, value })
}
