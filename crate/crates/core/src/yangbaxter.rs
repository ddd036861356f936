//! Yang-Baxter and model consistency checks, product/swap decomposition of
//! two-site operators, enhancement checks and the cup-to-μ map.

use serde_json::{json, Value};

use crate::diagram::EventKind;
use crate::error::{Error, Result};
use crate::linalg::Tensor;
use crate::models::TangleModel;
use crate::scalar::{Complex64, GaussInt, Scalar};

/// Tolerance for numeric equalities in checks.
pub const NUMERIC_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct CheckEntry {
    pub name: String,
    pub passed: bool,
    /// Largest entrywise deviation (0 or 1 for exact scalars).
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct ModelReport {
    pub entries: Vec<CheckEntry>,
}

impl ModelReport {
    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.passed)
    }

    pub fn get(&self, name: &str) -> Option<&CheckEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    fn push<T: Scalar>(&mut self, name: &str, lhs: &Tensor<T>, rhs: &Tensor<T>) {
        let residual = lhs.max_residual(rhs).unwrap_or(f64::INFINITY);
        let passed = lhs.shape() == rhs.shape() && lhs.approx_eq(rhs, NUMERIC_TOL);
        self.merge(name, passed, residual);
    }

    /// Several equations under one name: pass only if all pass.
    fn merge(&mut self, name: &str, passed: bool, residual: f64) {
        match self.entries.iter_mut().find(|e| e.name == name) {
            Some(e) => {
                e.passed &= passed;
                e.residual = e.residual.max(residual);
            }
            None => self.entries.push(CheckEntry { name: name.to_string(), passed, residual }),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "all_pass": self.all_pass(),
            "checks": self.entries.iter().map(|e| json!({"name": e.name, "passed": e.passed, "residual": e.residual})).collect::<Vec<_>>(),
        })
    }
}

fn embed<T: Scalar>(t: &Tensor<T>, n: usize, pos: usize, width: usize) -> Result<Tensor<T>> {
    let left = Tensor::<T>::identity(n.pow(pos as u32));
    let right = Tensor::<T>::identity(n.pow((width - pos - 2) as u32));
    left.kron(t)?.kron(&right)
}

fn word<T: Scalar>(steps: &[(&Tensor<T>, usize)], n: usize) -> Result<Tensor<T>> {
    let mut acc = Tensor::identity(n * n * n);
    for (t, pos) in steps {
        acc = acc.mat_mul(&embed(t, n, *pos, 3)?)?;
    }
    Ok(acc)
}

/// Both sides of `(R⊗I)(I⊗R)(R⊗I) = (I⊗R)(R⊗I)(I⊗R)`.
pub fn ybe_sides<T: Scalar>(r: &Tensor<T>) -> Result<(Tensor<T>, Tensor<T>)> {
    let n = r.factor_dim()?;
    Ok((word(&[(r, 0), (r, 1), (r, 0)], n)?, word(&[(r, 1), (r, 0), (r, 1)], n)?))
}

/// `(holds, residual)`; exact scalars compare exactly.
pub fn check_ybe<T: Scalar>(r: &Tensor<T>) -> Result<(bool, f64)> {
    let (l, rr) = ybe_sides(r)?;
    Ok((l.approx_eq(&rr, NUMERIC_TOL), l.max_residual(&rr)?))
}

/// `[Cup(0), C(1)]` on one incoming strand, indexed `[x][o0,o1,o2]`.
fn slide_min_lhs<T: Scalar>(cup: &Tensor<T>, c: &Tensor<T>, n: usize) -> Tensor<T> {
    Tensor::from_fn(n, n * n * n, |x, o| {
        let (a, cc, d) = (o / (n * n), (o / n) % n, o % n);
        let mut acc = T::zero();
        for b in 0..n {
            acc.add_mul_assign(cup.get(a, b), c.get(b * n + x, cc * n + d));
        }
        acc
    })
}

/// `[Cup(1), C'(0)]`.
fn slide_min_rhs<T: Scalar>(cup: &Tensor<T>, c: &Tensor<T>, n: usize) -> Tensor<T> {
    Tensor::from_fn(n, n * n * n, |x, o| {
        let (cc, d, b) = (o / (n * n), (o / n) % n, o % n);
        let mut acc = T::zero();
        for a in 0..n {
            acc.add_mul_assign(c.get(x * n + a, cc * n + d), cup.get(a, b));
        }
        acc
    })
}

/// `[C(1), Cap(0)]` on three incoming strands, indexed `[x,y,z][o]`.
fn slide_max_lhs<T: Scalar>(cap: &Tensor<T>, c: &Tensor<T>, n: usize) -> Tensor<T> {
    Tensor::from_fn(n * n * n, n, |i, d| {
        let (x, y, z) = (i / (n * n), (i / n) % n, i % n);
        let mut acc = T::zero();
        for cc in 0..n {
            acc.add_mul_assign(cap.get(x, cc), c.get(y * n + z, cc * n + d));
        }
        acc
    })
}

/// `[C'(0), Cap(1)]`.
fn slide_max_rhs<T: Scalar>(cap: &Tensor<T>, c: &Tensor<T>, n: usize) -> Tensor<T> {
    Tensor::from_fn(n * n * n, n, |i, cc| {
        let (x, y, z) = (i / (n * n), (i / n) % n, i % n);
        let mut acc = T::zero();
        for d in 0..n {
            acc.add_mul_assign(c.get(x * n + y, cc * n + d), cap.get(d, z));
        }
        acc
    })
}

/// Every tensor equation behind regular-isotopy invariance of the model:
/// zigzag (cup-cap inverse), R·R̄ = id, YBE, slides over minima and maxima
/// for each crossing type, and for virtual models S² = id, YBE for S and
/// the mixed detour relations.
pub fn check_model<T: Scalar>(m: &TangleModel<T>) -> ModelReport {
    let n = m.n;
    let mut rep = ModelReport::default();
    let id = |k: usize| Tensor::<T>::identity(k);
    let prod = |x: &Tensor<T>, y: &Tensor<T>| x.mat_mul(y).expect("square");

    rep.push("cup_cap_inverse", &prod(&m.cap, &m.cup), &id(n));
    rep.push("cup_cap_inverse", &prod(&m.cup, &m.cap), &id(n));
    rep.push("r_rbar_inverse", &prod(&m.r, &m.rbar), &id(n * n));
    rep.push("r_rbar_inverse", &prod(&m.rbar, &m.r), &id(n * n));
    match ybe_sides(&m.r) {
        Ok((l, r)) => rep.push("ybe", &l, &r),
        Err(_) => rep.merge("ybe", false, f64::INFINITY),
    }

    let mut kinds = vec![EventKind::CrossPos, EventKind::CrossNeg];
    if m.virtual_tensor.is_some() {
        kinds.push(EventKind::Virtual);
    }
    for &k in &kinds {
        let t = m.crossing_tensor(k).expect("present");
        let tf = m.crossing_tensor(k.flipped()).expect("present");
        rep.push("slide", &slide_min_lhs(&m.cup, t, n), &slide_min_rhs(&m.cup, tf, n));
        rep.push("slide", &slide_max_lhs(&m.cap, t, n), &slide_max_rhs(&m.cap, tf, n));
    }

    if let Some(s) = &m.virtual_tensor {
        rep.push("virtual_involution", &prod(s, s), &id(n * n));
        match ybe_sides(s) {
            Ok((l, r)) => rep.push("virtual_ybe", &l, &r),
            Err(_) => rep.merge("virtual_ybe", false, f64::INFINITY),
        }
        for c in [&m.r, &m.rbar] {
            let lhs = word(&[(s, 0), (s, 1), (c, 0)], n).expect("shape");
            let rhs = word(&[(c, 1), (s, 0), (s, 1)], n).expect("shape");
            rep.push("virtual_detour", &lhs, &rhs);
            let lhs = word(&[(c, 0), (s, 1), (s, 0)], n).expect("shape");
            let rhs = word(&[(s, 1), (s, 0), (c, 1)], n).expect("shape");
            rep.push("virtual_detour", &lhs, &rhs);
        }
    }
    rep
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DecompositionForm {
    Product,
    Swap,
}

/// `scale · M = A ⊗ B` (product) or `scale · M = (A ⊗ B) ∘ S` (swap).
/// The first nonzero entry of `A` is 1 whenever exact division allows it.
#[derive(Clone, Debug, PartialEq)]
pub struct Decomposition<T> {
    pub form: DecompositionForm,
    pub a: Tensor<T>,
    pub b: Tensor<T>,
    pub scale: T,
}

impl<T: Scalar> Decomposition<T> {
    /// `A ⊗ B`, composed with the swap for the swap form.
    pub fn reconstruct(&self) -> Tensor<T> {
        let k = self.a.kron(&self.b).expect("square factors");
        match self.form {
            DecompositionForm::Product => k,
            DecompositionForm::Swap => k.mat_mul(&Tensor::swap(self.a.rows())).expect("shape"),
        }
    }
}

/// A product input state and its image.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness<T> {
    /// `(x, y)` for the first site and `(z, w)` for the second.
    pub amplitudes: [T; 4],
    pub image: Vec<T>,
    /// `φ₀₀φ₁₁ − φ₀₁φ₁₀` of the image.
    pub determinant: T,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EntanglementVerdict<T> {
    pub entangling: bool,
    pub witness: Option<Witness<T>>,
    pub decomposition: Option<Decomposition<T>>,
}

/// Realignment `X[(i,j),(k,l)] = M[(i,k),(j,l)]`; `M = A⊗B` iff `X` has rank 1.
fn realign<T: Scalar>(m: &Tensor<T>, n: usize) -> Tensor<T> {
    Tensor::from_fn(n * n, n * n, |r, c| {
        let (i, j, k, l) = (r / n, r % n, c / n, c % n);
        m.get(i * n + k, j * n + l).clone()
    })
}

fn rank_le_one<T: Scalar>(x: &Tensor<T>) -> bool {
    let (r, c) = (x.rows(), x.cols());
    let scale = x.entries().iter().map(Scalar::magnitude).fold(0.0, f64::max);
    let tol = NUMERIC_TOL * scale * scale;
    for i in 0..r {
        for k in i + 1..r {
            for j in 0..c {
                for l in j + 1..c {
                    let minor = x.get(i, j).mul(x.get(k, l)).sub(&x.get(i, l).mul(x.get(k, j)));
                    if !minor.close_to(&T::zero(), tol) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

fn factor<T: Scalar>(m: &Tensor<T>, n: usize, form: DecompositionForm) -> Option<Decomposition<T>> {
    let x = realign(m, n);
    if x.is_zero() || !rank_le_one(&x) {
        return None;
    }
    let (mut pr, mut pc) = (0, 0);
    let mut best = 0.0;
    for i in 0..x.rows() {
        for j in 0..x.cols() {
            let w = x.get(i, j).pivot_weight();
            if w > best {
                best = w;
                pr = i;
                pc = j;
            }
        }
    }
    let pivot = x.get(pr, pc).clone();
    // X = col · row / pivot
    let mut a_vec: Vec<T> = (0..x.rows()).map(|i| x.get(i, pc).clone()).collect();
    let mut b_vec: Vec<T> = (0..x.cols()).map(|j| x.get(pr, j).clone()).collect();
    let mut scale = pivot.clone();
    if let Some(b) = b_vec.iter().map(|v| v.try_div(&pivot)).collect::<Option<Vec<_>>>() {
        b_vec = b;
        scale = T::one();
    }
    let lead = a_vec.iter().find(|v| !v.is_zero()).cloned().expect("non-zero column");
    if let Some(a) = a_vec.iter().map(|v| v.try_div(&lead)).collect::<Option<Vec<_>>>() {
        a_vec = a;
        b_vec = b_vec.iter().map(|v| v.mul(&lead)).collect();
    }
    let a = Tensor::matrix(n, n, a_vec).ok()?;
    let b = Tensor::matrix(n, n, b_vec).ok()?;
    Some(Decomposition { form, a, b, scale })
}

/// Product or swap decomposition of an operator on `V ⊗ V`, if one exists.
pub fn decompose<T: Scalar>(m: &Tensor<T>) -> Result<Option<Decomposition<T>>> {
    let n = m.factor_dim()?;
    if let Some(d) = factor(m, n, DecompositionForm::Product) {
        return Ok(Some(d));
    }
    let ms = m.mat_mul(&Tensor::swap(n))?;
    Ok(factor(&ms, n, DecompositionForm::Swap))
}

fn witness_grid<T: Scalar>() -> Vec<[T; 2]> {
    let g = |re: i64, im: i64| T::from_gauss(&GaussInt::new(re, im));
    vec![
        [g(1, 0), g(1, 0)],
        [g(1, 0), g(-1, 0)],
        [g(1, 0), g(0, 1)],
        [g(1, 0), g(0, -1)],
        [g(1, 0), g(0, 0)],
        [g(0, 0), g(1, 0)],
        [g(1, 0), g(2, 0)],
        [g(2, 0), g(1, 1)],
    ]
}

fn image_witness<T: Scalar>(m: &Tensor<T>, xy: &[T; 2], zw: &[T; 2]) -> Witness<T> {
    let psi = [xy[0].mul(&zw[0]), xy[0].mul(&zw[1]), xy[1].mul(&zw[0]), xy[1].mul(&zw[1])];
    let image: Vec<T> = (0..4)
        .map(|r| {
            let mut acc = T::zero();
            for (c, p) in psi.iter().enumerate() {
                acc.add_mul_assign(m.get(r, c), p);
            }
            acc
        })
        .collect();
    let determinant = image[0].mul(&image[3]).sub(&image[1].mul(&image[2]));
    Witness { amplitudes: [xy[0].clone(), xy[1].clone(), zw[0].clone(), zw[1].clone()], image, determinant }
}

/// Decides whether a two-qubit operator (acting as `φ = Mψ`) sends some
/// product state to an entangled one. Non-entangling operators come back
/// with their decomposition, entangling ones with a product-state witness.
pub fn is_entangling_2q<T: Scalar>(m: &Tensor<T>) -> Result<EntanglementVerdict<T>> {
    if m.shape() != [4, 4] {
        return Err(Error::Shape(format!("expected a 4×4 operator, got {:?}", m.shape())));
    }
    let det = m.det()?;
    let scale = m.entries().iter().map(Scalar::magnitude).fold(0.0, f64::max);
    if det.close_to(&T::zero(), NUMERIC_TOL * scale.powi(4)) {
        return Err(Error::Singular("operator is not invertible".into()));
    }
    if let Some(d) = decompose(m)? {
        return Ok(EntanglementVerdict { entangling: false, witness: None, decomposition: Some(d) });
    }
    let grid = witness_grid::<T>();
    let mut found = None;
    'search: for xy in &grid {
        for zw in &grid {
            let w = image_witness(m, xy, zw);
            let norm2: f64 = w.image.iter().map(|v| v.magnitude().powi(2)).sum();
            if !w.determinant.close_to(&T::zero(), NUMERIC_TOL * norm2.max(1e-300)) {
                found = Some(w);
                break 'search;
            }
        }
    }
    Ok(EntanglementVerdict { entangling: true, witness: found, decomposition: None })
}

impl Witness<Complex64> {
    /// Rescales the input to unit-norm site states and recomputes the image.
    pub fn normalized(&self, m: &Tensor<Complex64>) -> Self {
        let [x, y, z, w] = &self.amplitudes;
        let n1 = (x.norm_sqr() + y.norm_sqr()).sqrt();
        let n2 = (z.norm_sqr() + w.norm_sqr()).sqrt();
        image_witness(m, &[x / n1, y / n1], &[z / n2, w / n2])
    }
}

/// Enhancement conditions on `(R, μ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct EnhancementReport {
    pub commutes: bool,
    pub trace_r: bool,
    pub trace_rbar: bool,
}

impl EnhancementReport {
    pub fn holds(&self) -> bool {
        self.commutes && self.trace_r && self.trace_rbar
    }
}

/// `R` commutes with `μ⊗μ`, and `Tr₂(R·μ⊗μ) = Tr₂(R̄·μ⊗μ) = μ`.
pub fn check_enhancement<T: Scalar>(r: &Tensor<T>, mu: &Tensor<T>) -> Result<EnhancementReport> {
    let n = r.factor_dim()?;
    if mu.shape() != [n, n] {
        return Err(Error::Shape(format!("μ must be {n}×{n}")));
    }
    let rbar = r.inverse()?;
    let mm = mu.kron(mu)?;
    let commutes = r.mat_mul(&mm)?.approx_eq(&mm.mat_mul(r)?, NUMERIC_TOL);
    let trace_r = r.mat_mul(&mm)?.partial_trace_second(n)?.approx_eq(mu, NUMERIC_TOL);
    let trace_rbar = rbar.mat_mul(&mm)?.partial_trace_second(n)?.approx_eq(mu, NUMERIC_TOL);
    Ok(EnhancementReport { commutes, trace_r, trace_rbar })
}

/// `μ = (1/Δ)·[[ad−b², −ac+ab], [cd−bd, −c²+ad]]` for the cup `[[a,b],[c,d]]`,
/// i.e. `M·(M⁻¹)ᵀ`.
pub fn mu_from_cupcap<T: Scalar>(m: &Tensor<T>) -> Result<Tensor<T>> {
    let delta = m.det2()?;
    if delta.is_zero() {
        return Err(Error::Singular("cup matrix has Δ = 0".into()));
    }
    let (a, b, c, d) = (m.get(0, 0), m.get(0, 1), m.get(1, 0), m.get(1, 1));
    let raw = [
        a.mul(d).sub(&b.mul(b)),
        a.mul(b).sub(&a.mul(c)),
        c.mul(d).sub(&b.mul(d)),
        a.mul(d).sub(&c.mul(c)),
    ];
    let entries = raw
        .iter()
        .map(|v| v.try_div(&delta))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::Precondition("Δ does not divide the numerators exactly".into()))?;
    Tensor::matrix(2, 2, entries)
}

/// Outcome of solving `mu_from_cupcap(M) = target` for `M`.
#[derive(Clone, Debug, PartialEq)]
pub struct MuSolve<T> {
    /// Basis of all `M` with `M = target·Mᵀ` (necessary and, for
    /// invertible `M`, sufficient).
    pub basis: Vec<Tensor<T>>,
    /// `det` vanishes on the whole solution space.
    pub det_identically_zero: bool,
    pub feasible: bool,
}

/// Exact solve of `μ(M) = T`: the linear system `M = T·Mᵀ` is solved
/// fraction-free, then `det` on the solution space is tested as a quadratic
/// form. Infeasible means every solution has `Δ = 0`.
pub fn solve_mu_target<T: Scalar>(target: &Tensor<T>) -> Result<MuSolve<T>> {
    if target.shape() != [2, 2] {
        return Err(Error::Shape("μ target must be 2×2".into()));
    }
    if !T::EXACT {
        return Err(Error::Precondition("μ feasibility is decided with exact scalars".into()));
    }
    // unknowns (a, b, c, d) = M[0,0], M[0,1], M[1,0], M[1,1]
    let t = |i: usize, j: usize| target.get(i, j).clone();
    let var = |i: usize, j: usize| i * 2 + j;
    let mut rows: Vec<Vec<T>> = Vec::new();
    for i in 0..2 {
        for j in 0..2 {
            // M[i,j] − Σ_k T[i,k] M[j,k] = 0
            let mut row = vec![T::zero(); 4];
            row[var(i, j)] = row[var(i, j)].add(&T::one());
            for k in 0..2 {
                row[var(j, k)] = row[var(j, k)].sub(&t(i, k));
            }
            rows.push(row);
        }
    }
    let basis: Vec<Tensor<T>> = nullspace(rows, 4)
        .into_iter()
        .map(|v| Tensor::matrix(2, 2, v).expect("4 entries"))
        .collect();
    let det_of = |u: &Tensor<T>, v: &Tensor<T>| {
        // polarization of ad − bc
        u.get(0, 0)
            .mul(v.get(1, 1))
            .add(&u.get(1, 1).mul(v.get(0, 0)))
            .sub(&u.get(0, 1).mul(v.get(1, 0)))
            .sub(&u.get(1, 0).mul(v.get(0, 1)))
    };
    let mut zero = true;
    for (i, u) in basis.iter().enumerate() {
        for v in &basis[i..] {
            if !det_of(u, v).is_zero() {
                zero = false;
            }
        }
    }
    let feasible = !basis.is_empty() && !zero;
    Ok(MuSolve { basis, det_identically_zero: zero, feasible })
}

/// Integral nullspace basis by fraction-free elimination to reduced form.
fn nullspace<T: Scalar>(mut rows: Vec<Vec<T>>, cols: usize) -> Vec<Vec<T>> {
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        for i in 0..rows.len() {
            if i == r || rows[i][c].is_zero() {
                continue;
            }
            let (pv, f) = (rows[r][c].clone(), rows[i][c].clone());
            for j in 0..cols {
                rows[i][j] = rows[i][j].mul(&pv).sub(&rows[r][j].mul(&f));
            }
        }
        pivots.push((r, c));
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let mut all = T::one();
    for &(pr, pc) in &pivots {
        all = all.mul(&rows[pr][pc]);
    }
    (0..cols)
        .filter(|c| !pivot_cols.contains(c))
        .map(|f| {
            let mut v = vec![T::zero(); cols];
            v[f] = all.clone();
            for &(pr, pc) in &pivots {
                let num = rows[pr][f].mul(&all).neg();
                v[pc] = num.try_div(&rows[pr][pc]).expect("pivot divides the pivot product");
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::*;
    use crate::scalar::{unit_circle, LaurentPoly};

    type P = LaurentPoly;

    fn ints(n: usize, v: &[i64]) -> Tensor<P> {
        Tensor::matrix(n, n, v.iter().map(|&x| P::from_int(x)).collect()).unwrap()
    }

    #[test]
    fn ybe_examples() {
        assert!(check_ybe(&bracket_r_matrix()).unwrap().0);
        assert!(check_ybe(&Tensor::<P>::swap(2)).unwrap().0);
        assert!(check_ybe(&virtual_r_matrix()).unwrap().0);
        assert!(check_ybe(&swap_fg_model().r).unwrap().0);
        let junk = ints(4, &[1, 2, 0, 0, 0, 1, 3, 0, 0, 0, 1, 0, 5, 0, 0, 1]);
        assert!(!check_ybe(&junk).unwrap().0);
        assert!(check_ybe(&ints(3, &[1, 0, 0, 0, 1, 0, 0, 0, 1])).is_err());
    }

    #[test]
    fn model_reports() {
        for m in [bracket_model(), swap_fg_model(), virtual_model(), product_model(0).unwrap(), product_model(2).unwrap()] {
            let rep = check_model(&m);
            assert!(rep.all_pass(), "{}: {:?}", m.name, rep);
        }
        let bad = product_model(1).unwrap();
        let rep = check_model(&bad);
        assert!(!rep.get("slide").unwrap().passed);
        assert!(rep.get("ybe").unwrap().passed);
    }

    #[test]
    fn slide_formulas_match_engine() {
        use crate::statesum::transfer_matrix;
        let m = bracket_model();
        let t = transfer_matrix(&"1: U0,X1".parse().unwrap(), &m).unwrap();
        assert_eq!(t, slide_min_lhs(&m.cup, &m.r, 2));
        let t = transfer_matrix(&"1: U1,Y0".parse().unwrap(), &m).unwrap();
        assert_eq!(t, slide_min_rhs(&m.cup, &m.rbar, 2));
        let t = transfer_matrix(&"3: X1,A0".parse().unwrap(), &m).unwrap();
        assert_eq!(t, slide_max_lhs(&m.cap, &m.r, 2));
    }

    #[test]
    fn bracket_at_i_is_swap_form() {
        for a in [Complex64::new(0.0, 1.0), Complex64::new(0.0, -1.0)] {
            let r = bracket_r_matrix().eval(a).unwrap();
            assert!(r.is_unitary(1e-12));
            let v = is_entangling_2q(&r).unwrap();
            assert!(!v.entangling);
            let d = v.decomposition.unwrap();
            assert!(d.reconstruct().approx_eq(&r, 1e-10));
        }
        let r = bracket_r_matrix().eval(unit_circle(0.3)).unwrap();
        assert!(!r.is_unitary(1e-6));
    }

    #[test]
    fn virtual_r_entangles_with_witness() {
        let theta = std::f64::consts::FRAC_PI_4;
        let r = virtual_r_matrix().eval(unit_circle(theta)).unwrap();
        let v = is_entangling_2q(&r).unwrap();
        assert!(v.entangling);
        let w = v.witness.unwrap().normalized(&r);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        for x in &w.amplitudes {
            assert!((x - Complex64::new(h, 0.0)).norm() < 1e-12);
        }
        let expect = Complex64::new(0.0, 2.0 * (2.0 * theta).sin()) * 0.25;
        assert!((w.determinant - expect).norm() < 1e-12);
    }

    #[test]
    fn exact_decomposition_gauge() {
        let a = ints(2, &[2, 1, 1, 1]);
        let b = ints(2, &[3, 0, 1, 1]);
        let k = a.kron(&b).unwrap();
        let d = is_entangling_2q(&k).unwrap().decomposition.unwrap();
        assert_eq!(d.form, DecompositionForm::Product);
        assert_eq!(d.reconstruct(), k.scale(&d.scale));
        let ks = k.mat_mul(&Tensor::swap(2)).unwrap();
        let ds = is_entangling_2q(&ks).unwrap().decomposition.unwrap();
        assert_eq!(ds.form, DecompositionForm::Swap);
        assert_eq!(ds.reconstruct(), ks.scale(&ds.scale));
    }

    #[test]
    fn cnot_entangles() {
        let cnot = ints(4, &[1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0]);
        let v = is_entangling_2q(&cnot).unwrap();
        assert!(v.entangling);
        assert!(!v.witness.unwrap().determinant.is_zero());
        assert!(matches!(is_entangling_2q(&ints(4, &[0; 16])), Err(Error::Singular(_))));
    }

    #[test]
    fn enhancement_examples() {
        let s = Tensor::<P>::swap(2);
        assert!(check_enhancement(&s, &Tensor::identity(2)).unwrap().holds());
        let mu = ints(2, &[1, 0, 0, -1]);
        // Tr₂(μ⊗μ) = Tr(μ)·μ = 0
        assert!(!check_enhancement(&Tensor::identity(4), &mu).unwrap().holds());
        let mu1 = ints(2, &[2, 0, 0, -1]);
        assert!(check_enhancement(&Tensor::identity(4), &mu1).unwrap().holds());
    }

    #[test]
    fn mu_examples() {
        assert_eq!(mu_from_cupcap(&Tensor::<P>::identity(2)).unwrap(), Tensor::identity(2));
        let mu = mu_from_cupcap(&bracket_m()).unwrap();
        assert_eq!(mu, Tensor::diag(&[-P::a_pow(2), -P::a_pow(-2)]));
        assert_eq!(mu.trace().unwrap(), bracket_model().loop_value);
        assert!(mu_from_cupcap(&ints(2, &[1, 1, 1, 1])).is_err());
    }

    #[test]
    fn mu_target_feasibility() {
        let s = solve_mu_target(&ints(2, &[1, 0, 0, -1])).unwrap();
        assert!(!s.feasible);
        assert!(s.det_identically_zero);
        assert_eq!(s.basis.len(), 1);
        let ok = solve_mu_target(&Tensor::<P>::identity(2)).unwrap();
        assert!(ok.feasible);
        // every basis element solves the linear system
        for m in &ok.basis {
            assert_eq!(*m, m.transpose());
        }
    }
}
