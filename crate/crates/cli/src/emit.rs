use std::fmt::Write;

use knotamp::yangbaxter::{DecompositionForm, EntanglementVerdict};
use knotamp::{Complex64, LaurentPoly, Scalar, Tensor};
use serde_json::{json, Value};

/// Both renderings of one command result.
pub struct Report {
    pub json: Value,
    pub text: String,
}

pub trait Emit: Scalar {
    fn json(&self) -> Value;
    fn text(&self) -> String;
}

impl Emit for LaurentPoly {
    fn json(&self) -> Value {
        self.to_json()
    }
    fn text(&self) -> String {
        self.to_string()
    }
}

impl Emit for Complex64 {
    fn json(&self) -> Value {
        json!([self.re, self.im])
    }
    fn text(&self) -> String {
        format_complex(*self)
    }
}

/// Text form only: 12 decimals, trailing zeros and tiny parts dropped.
pub fn format_complex(z: Complex64) -> String {
    let num = |x: f64| {
        let s = format!("{:.12}", if x.abs() < 1e-13 { 0.0 } else { x });
        let s = s.trim_end_matches('0').trim_end_matches('.');
        if s == "-0" { "0".to_string() } else { s.to_string() }
    };
    let (re, im) = (num(z.re), num(z.im));
    match (re.as_str(), im.as_str()) {
        (_, "0") => re,
        ("0", _) => format!("{im}i"),
        _ if im.starts_with('-') => format!("{re}{im}i"),
        _ => format!("{re}+{im}i"),
    }
}

pub fn tensor_json<T: Emit>(t: &Tensor<T>) -> Value {
    json!({"shape": t.shape(), "entries": t.entries().iter().map(Emit::json).collect::<Vec<_>>()})
}

pub fn tensor_text<T: Emit>(t: &Tensor<T>) -> String {
    let mut s = String::new();
    for r in 0..t.rows() {
        let row: Vec<String> = (0..t.cols()).map(|c| t.get(r, c).text()).collect();
        writeln!(s, "[{}]", row.join(", ")).unwrap();
    }
    s
}

pub fn verdict<T: Emit>(v: &EntanglementVerdict<T>, normalized: Option<&knotamp::yangbaxter::Witness<T>>) -> Report {
    let mut text = format!("entangling: {}\n", v.entangling);
    let witness = normalized.or(v.witness.as_ref());
    let wj = witness.map(|w| {
        let amps: Vec<String> = w.amplitudes.iter().map(Emit::text).collect();
        writeln!(text, "witness input: ({}, {}) ⊗ ({}, {})", amps[0], amps[1], amps[2], amps[3]).unwrap();
        writeln!(text, "image: [{}]", w.image.iter().map(Emit::text).collect::<Vec<_>>().join(", ")).unwrap();
        writeln!(text, "determinant: {}", w.determinant.text()).unwrap();
        json!({
            "amplitudes": w.amplitudes.iter().map(Emit::json).collect::<Vec<_>>(),
            "image": w.image.iter().map(Emit::json).collect::<Vec<_>>(),
            "determinant": w.determinant.json(),
        })
    });
    let dj = v.decomposition.as_ref().map(|d| {
        let form = match d.form {
            DecompositionForm::Product => "product",
            DecompositionForm::Swap => "swap",
        };
        writeln!(text, "form: {form}\nscale: {}\nA:\n{}B:\n{}", d.scale.text(), tensor_text(&d.a), tensor_text(&d.b)).unwrap();
        json!({"form": form, "scale": d.scale.json(), "a": tensor_json(&d.a), "b": tensor_json(&d.b)})
    });
    Report { json: json!({"entangling": v.entangling, "witness": wj, "decomposition": dj}), text }
}
