//! Two-dimensional Temperley-Lieb representation of the 3-strand braid
//! group and the trace formula for the bracket of a 3-braid closure.

use std::f64::consts::PI;

use serde_json::{json, Value};

use crate::braid::{BraidWord, LetterKind};
use crate::error::{Error, Result};
use crate::linalg::Tensor;
use crate::scalar::{unit_circle, Complex64};

type M = Tensor<Complex64>;

/// Closed θ-intervals on which both generators act unitarily (`|d| ≥ 1`).
pub const UNITARY_INTERVALS: [(f64, f64); 5] = [
    (0.0, PI / 6.0),
    (PI / 3.0, 2.0 * PI / 3.0),
    (5.0 * PI / 6.0, 7.0 * PI / 6.0),
    (4.0 * PI / 3.0, 5.0 * PI / 3.0),
    (11.0 * PI / 6.0, 2.0 * PI),
];

pub fn in_unitary_intervals(theta: f64) -> bool {
    let t = theta.rem_euclid(2.0 * PI);
    UNITARY_INTERVALS.iter().any(|&(lo, hi)| t >= lo - 1e-12 && t <= hi + 1e-12)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Rep3Params {
    pub theta: f64,
    pub a: Complex64,
    pub d: f64,
    pub u1: M,
    pub u2: M,
    /// `|d| = 1`: the off-diagonal entries of `U2` vanish.
    pub boundary: bool,
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn build(theta: f64, off: Complex64) -> Rep3Params {
    let d = -2.0 * (2.0 * theta).cos();
    let u1 = Tensor::matrix(2, 2, vec![c(d), c(0.0), c(0.0), c(0.0)]).expect("2×2");
    let u2 = Tensor::matrix(2, 2, vec![c(1.0 / d), off, off, c(d - 1.0 / d)]).expect("2×2");
    Rep3Params { theta, a: unit_circle(theta), d, u1, u2, boundary: (d.abs() - 1.0).abs() < 1e-9 }
}

/// `U1 = diag(d, 0)`, `U2 = [[1/d, √(1−d⁻²)], [√(1−d⁻²), d − 1/d]]` with
/// `d = −2cos 2θ`; needs real entries, i.e. `|d| ≥ 1`.
pub fn make_rep(theta: f64) -> Result<Rep3Params> {
    let d = -2.0 * (2.0 * theta).cos();
    if d.abs() < 1e-12 {
        return Err(Error::Precondition(format!("d = 0 at θ = {theta}")));
    }
    if d.abs() < 1.0 - 1e-12 {
        return Err(Error::Precondition(format!("|d| = {:.6} < 1: U2 would need complex entries", d.abs())));
    }
    Ok(build(theta, c((1.0 - 1.0 / (d * d)).max(0.0).sqrt())))
}

/// Same matrices with the principal complex square root, defined for any
/// `d ≠ 0`. Off the unitary intervals this still satisfies the algebra but
/// not unitarity.
pub fn make_rep_complex(theta: f64) -> Result<Rep3Params> {
    let d = -2.0 * (2.0 * theta).cos();
    if d.abs() < 1e-12 {
        return Err(Error::Precondition(format!("d = 0 at θ = {theta}")));
    }
    Ok(build(theta, c(1.0 - 1.0 / (d * d)).sqrt()))
}

impl Rep3Params {
    /// `Φ(s_i) = A·I + A⁻¹·U_i`.
    pub fn generator(&self, i: usize) -> Result<M> {
        let u = match i {
            1 => &self.u1,
            2 => &self.u2,
            _ => return Err(Error::Precondition(format!("3-strand braids have no generator s{i}"))),
        };
        Tensor::identity(2).scale(&self.a).add(&u.scale(&self.a.inv()))
    }
}

/// Ordered product of generator images; inverse letters use the numeric
/// matrix inverse.
pub fn phi(b: &BraidWord, p: &Rep3Params) -> Result<M> {
    if b.strands() != 3 {
        return Err(Error::Precondition(format!("expected a 3-strand braid, got {}", b.strands())));
    }
    let g = [p.generator(1)?, p.generator(2)?];
    let gi = [g[0].inverse()?, g[1].inverse()?];
    let mut acc = Tensor::identity(2);
    for l in b.letters() {
        let m = match l.kind {
            LetterKind::Positive => &g[l.index - 1],
            LetterKind::Negative => &gi[l.index - 1],
            LetterKind::Virtual => return Err(Error::Precondition("virtual letters have no image".into())),
        };
        acc = acc.mat_mul(m)?;
    }
    Ok(acc)
}

/// `Tr Φ(b) + A^{I(b)}·(d² − 2)`.
pub fn bracket_via_trace(b: &BraidWord, p: &Rep3Params) -> Result<Complex64> {
    let t = phi(b, p)?.trace()?;
    Ok(t + p.a.powi(b.exponent_sum() as i32) * (p.d * p.d - 2.0))
}

#[derive(Clone, Debug, PartialEq)]
pub struct Identity {
    pub name: &'static str,
    pub holds: bool,
    pub residual: f64,
}

/// Which algebraic identities the matrices satisfy, including the two
/// variants `U2² = d·U1` and `U2U1U2 = U1`.
pub fn identities(p: &Rep3Params) -> Vec<Identity> {
    let mm = |x: &M, y: &M| x.mat_mul(y).expect("2×2");
    let (u1, u2, d) = (&p.u1, &p.u2, c(p.d));
    let sides: Vec<(&'static str, M, M)> = vec![
        ("U1^2 = d U1", mm(u1, u1), u1.scale(&d)),
        ("U2^2 = d U2", mm(u2, u2), u2.scale(&d)),
        ("U2^2 = d U1", mm(u2, u2), u1.scale(&d)),
        ("U1 U2 U1 = U1", mm(&mm(u1, u2), u1), u1.clone()),
        ("U2 U1 U2 = U2", mm(&mm(u2, u1), u2), u2.clone()),
        ("U2 U1 U2 = U1", mm(&mm(u2, u1), u2), u1.clone()),
        ("Tr U1 = d", Tensor::diag(&[u1.trace().expect("square")]), Tensor::diag(&[d])),
        ("Tr U2 = d", Tensor::diag(&[u2.trace().expect("square")]), Tensor::diag(&[d])),
        ("Tr U1 U2 = 1", Tensor::diag(&[mm(u1, u2).trace().expect("square")]), Tensor::diag(&[c(1.0)])),
    ];
    sides
        .into_iter()
        .map(|(name, l, r)| {
            let residual = l.max_residual(&r).expect("same shape");
            Identity { name, holds: residual <= 1e-10, residual }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct Jones3Report {
    pub theta: f64,
    pub d: f64,
    pub boundary: bool,
    pub in_intervals: bool,
    pub phi_s1_unitary: bool,
    pub phi_s2_unitary: bool,
    pub braid_relation_residual: f64,
    pub identities: Vec<Identity>,
    pub bracket: Option<Complex64>,
}

/// Report at `θ`, using the complex square root off the unitary intervals.
pub fn report(theta: f64, b: Option<&BraidWord>) -> Result<Jones3Report> {
    let p = make_rep_complex(theta)?;
    let (g1, g2) = (p.generator(1)?, p.generator(2)?);
    let lhs = g1.mat_mul(&g2)?.mat_mul(&g1)?;
    let rhs = g2.mat_mul(&g1)?.mat_mul(&g2)?;
    Ok(Jones3Report {
        theta,
        d: p.d,
        boundary: p.boundary,
        in_intervals: in_unitary_intervals(theta),
        phi_s1_unitary: g1.is_unitary(1e-9),
        phi_s2_unitary: g2.is_unitary(1e-9),
        braid_relation_residual: lhs.max_residual(&rhs)?,
        identities: identities(&p),
        bracket: b.map(|b| bracket_via_trace(b, &p)).transpose()?,
    })
}

impl Jones3Report {
    pub fn to_json(&self) -> Value {
        json!({
            "theta": self.theta,
            "d": self.d,
            "boundary": self.boundary,
            "in_unitary_intervals": self.in_intervals,
            "phi_s1_unitary": self.phi_s1_unitary,
            "phi_s2_unitary": self.phi_s2_unitary,
            "braid_relation_residual": self.braid_relation_residual,
            "identities": self.identities.iter().map(|i| json!({"name": i.name, "holds": i.holds, "residual": i.residual})).collect::<Vec<_>>(),
            "bracket": self.bracket.map(|z| json!([z.re, z.im])),
        })
    }
}
