use std::fmt::Write;
use std::fs;

use knotamp::diagram::random_equivalent;
use knotamp::jones3::report;
use knotamp::linalg::AnyTensor;
use knotamp::models::{bracket_r_matrix, by_name, virtual_r_matrix};
use knotamp::scalar::unit_circle;
use knotamp::skein::{normalized_skein, skein_bracket};
use knotamp::statesum::{evaluate, evaluate_batch, normalized, transfer_matrix};
use knotamp::yangbaxter::{check_model, check_ybe, is_entangling_2q};
use knotamp::{parse_braid, BraidWord, Error, LaurentPoly, Letter, MorseDiagram, Result, TangleModel, Tensor};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::emit::{format_complex, tensor_json, tensor_text, verdict, Emit, Report};
use crate::{Input, ModelArg};

struct Item {
    label: String,
    diagram: MorseDiagram,
}

fn diagrams(input: &Input) -> Result<Vec<Item>> {
    let mut out = Vec::new();
    for b in &input.braid {
        let w = parse_braid(b)?;
        out.push(Item { label: b.clone(), diagram: w.to_morse(input.closed) });
    }
    for m in &input.morse {
        out.push(Item { label: m.clone(), diagram: m.parse()? });
    }
    if out.is_empty() {
        return Err(Error::Parse("give at least one --braid or --morse".into()));
    }
    Ok(out)
}

fn model(m: &ModelArg) -> Result<TangleModel<LaurentPoly>> {
    by_name(&m.model, m.s_exponent)
}

fn read_json(path: &str) -> Result<Value> {
    let raw = fs::read_to_string(path).map_err(|e| Error::Precondition(format!("cannot read {path}: {e}")))?;
    serde_json::from_str(&raw).map_err(|e| Error::Parse(format!("{path}: {e}")))
}

fn metadata(d: &MorseDiagram) -> Value {
    match d.skeleton() {
        Ok(sk) => json!({
            "writhe": sk.writhe(),
            "components": sk.component_count(),
            "seifert_circles": sk.seifert_count(),
        }),
        Err(_) => Value::Null,
    }
}

pub fn eval(m: &ModelArg, input: &Input, normalize: bool, theta: Option<f64>, jobs: usize) -> Result<Report> {
    let model = model(m)?;
    let items = diagrams(input)?;
    let (closed, open): (Vec<_>, Vec<_>) = items.iter().enumerate().partition(|(_, it)| it.diagram.is_closed());
    if normalize && !open.is_empty() {
        return Err(Error::Precondition("--normalize needs closed diagrams".into()));
    }
    let mut values: Vec<Option<Result<LaurentPoly>>> = vec![None; items.len()];
    if normalize {
        for (i, it) in &closed {
            values[*i] = Some(normalized(&it.diagram, &model));
        }
    } else {
        let ds: Vec<MorseDiagram> = closed.iter().map(|(_, it)| it.diagram.clone()).collect();
        for ((i, _), v) in closed.iter().zip(evaluate_batch(&ds, &model, jobs.max(1))) {
            values[*i] = Some(v);
        }
    }
    let mut results = Vec::new();
    let mut text = String::new();
    for (i, it) in items.iter().enumerate() {
        let mut entry = json!({"input": it.label, "diagram": it.diagram.to_json(), "metadata": metadata(&it.diagram)});
        match values[i].take() {
            Some(v) => {
                let v = v?;
                entry["value"] = v.to_json();
                text.push_str(&v.to_string());
                if let Some(t) = theta {
                    let z = v.eval(unit_circle(t))?;
                    entry["numeric"] = z.json();
                    write!(text, "  (at θ = {t}: {})", format_complex(z)).unwrap();
                }
                text.push('\n');
            }
            None => {
                let t = transfer_matrix(&it.diagram, &model)?;
                entry["transfer_matrix"] = tensor_json(&t);
                text.push_str(&tensor_text(&t));
            }
        }
        results.push(entry);
    }
    Ok(Report { json: json!({"model": model.name, "normalized": normalize, "results": results}), text })
}

pub fn oracle(input: &Input, normalize: bool) -> Result<Report> {
    let bracket = by_name("bracket", 0)?;
    let mut results = Vec::new();
    let mut text = String::new();
    for it in diagrams(input)? {
        let raw = skein_bracket(&it.diagram)?;
        let engine_agrees = evaluate(&it.diagram, &bracket)? == raw;
        let v = if normalize { normalized_skein(&it.diagram)? } else { raw };
        writeln!(text, "{v}").unwrap();
        results.push(json!({"input": it.label, "value": v.to_json(), "engine_agrees": engine_agrees, "metadata": metadata(&it.diagram)}));
    }
    Ok(Report { json: json!({"normalized": normalize, "results": results}), text })
}

pub fn jones3(theta: f64, braid: Option<&str>) -> Result<Report> {
    let b = braid.map(parse_braid).transpose()?;
    let r = report(theta, b.as_ref())?;
    let mut text = String::new();
    writeln!(text, "theta: {}\nd: {}\nin unitary intervals: {}", r.theta, r.d, r.in_intervals).unwrap();
    writeln!(text, "phi(s1) unitary: {}\nphi(s2) unitary: {}", r.phi_s1_unitary, r.phi_s2_unitary).unwrap();
    writeln!(text, "braid relation residual: {:.3e}", r.braid_relation_residual).unwrap();
    for i in &r.identities {
        writeln!(text, "{}: {} ({:.3e})", i.name, i.holds, i.residual).unwrap();
    }
    if let Some(z) = r.bracket {
        writeln!(text, "bracket: {}", format_complex(z)).unwrap();
    }
    Ok(Report { json: r.to_json(), text })
}

pub fn ybe(matrix: Option<&str>, model: Option<&str>, s_exponent: i64) -> Result<Report> {
    match (matrix, model) {
        (Some(path), _) => {
            let (holds, residual) = match AnyTensor::from_json(&read_json(path)?)? {
                AnyTensor::Exact(t) => check_ybe(&t)?,
                AnyTensor::Numeric(t) => check_ybe(&t)?,
            };
            Ok(Report {
                json: json!({"ybe": holds, "residual": residual}),
                text: format!("ybe: {holds} (residual {residual:.3e})\n"),
            })
        }
        (None, Some(name)) => {
            let m = by_name(name, s_exponent)?;
            let r = check_model(&m);
            let mut text = String::new();
            for e in &r.entries {
                writeln!(text, "{}: {} ({:.3e})", e.name, e.passed, e.residual).unwrap();
            }
            writeln!(text, "all: {}", r.all_pass()).unwrap();
            let mut j = r.to_json();
            j["model"] = json!(m.name);
            Ok(Report { json: j, text })
        }
        (None, None) => Err(Error::Parse("give --matrix FILE or --model NAME".into())),
    }
}

fn model_r(name: &str) -> Result<Tensor<LaurentPoly>> {
    match name {
        "bracket" => Ok(bracket_r_matrix()),
        "virtual" => Ok(virtual_r_matrix()),
        other => Err(Error::Parse(format!("entangle takes --model bracket|virtual, got '{other}'"))),
    }
}

pub fn entangle(matrix: Option<&str>, model: Option<&str>, theta: Option<f64>) -> Result<Report> {
    let t = match (matrix, model) {
        (Some(path), _) => AnyTensor::from_json(&read_json(path)?)?,
        (None, Some(name)) => AnyTensor::Exact(model_r(name)?),
        (None, None) => return Err(Error::Parse("give --matrix FILE or --model NAME".into())),
    };
    let t = match (t, theta) {
        (AnyTensor::Exact(p), Some(th)) => AnyTensor::Numeric(p.eval(unit_circle(th))?),
        (t, _) => t,
    };
    match t {
        AnyTensor::Exact(p) => Ok(verdict(&is_entangling_2q(&p)?, None)),
        AnyTensor::Numeric(m) => {
            let v = is_entangling_2q(&m)?;
            let w = v.witness.as_ref().map(|w| w.normalized(&m));
            Ok(verdict(&v, w.as_ref()))
        }
    }
}

fn random_braid(rng: &mut ChaCha8Rng, max_strands: usize, max_len: usize) -> Result<BraidWord> {
    let n = rng.gen_range(2..=max_strands.max(2));
    let len = rng.gen_range(0..=max_len);
    let letters = (0..len)
        .map(|_| {
            let i = rng.gen_range(1..n);
            if rng.gen_bool(0.5) { Letter::pos(i) } else { Letter::neg(i) }
        })
        .collect();
    BraidWord::new(n, letters)
}

pub fn parity(seed: u64, count: usize, max_strands: usize, max_len: usize, steps: usize) -> Result<Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut knots, mut knot_bad, mut link_bad) = (0usize, 0usize, 0usize);
    let mut first_violation = None;
    for _ in 0..count {
        let b = random_braid(&mut rng, max_strands, max_len)?;
        let d = random_equivalent(&b.to_morse(true), steps, rng.gen());
        let sk = d.skeleton()?;
        let (sc, w, c) = (sk.seifert_count() as i64, sk.writhe(), sk.component_count() as i64);
        if (sc - w - c).rem_euclid(2) != 0 {
            link_bad += 1;
        }
        if c == 1 {
            knots += 1;
            if (sc - w - 1).rem_euclid(2) != 0 {
                knot_bad += 1;
                first_violation.get_or_insert_with(|| d.to_string());
            }
        }
    }
    let holds = knot_bad == 0;
    let text = format!(
        "samples: {count}\nknots: {knots}\nknot violations of SC - w - 1 even: {knot_bad}\nviolations of SC - w - components even: {link_bad}\nlemma holds: {holds}\n"
    );
    let json = json!({
        "seed": seed,
        "samples": count,
        "knots": knots,
        "knot_violations": knot_bad,
        "link_violations": link_bad,
        "first_violation": first_violation,
        "lemma_holds": holds,
    });
    Ok(Report { json, text })
}

pub fn moves(m: &ModelArg, input: &Input, seed: u64, steps: usize) -> Result<Report> {
    let model = model(m)?;
    let mut results = Vec::new();
    let mut text = String::new();
    for it in diagrams(input)? {
        let d = &it.diagram;
        let e = random_equivalent(d, steps, seed);
        let (before, after) = if d.is_closed() {
            (evaluate(d, &model)?.json(), evaluate(&e, &model)?.json())
        } else {
            (tensor_json(&transfer_matrix(d, &model)?), tensor_json(&transfer_matrix(&e, &model)?))
        };
        let unchanged = before == after;
        writeln!(text, "{e}\nunchanged: {unchanged}").unwrap();
        results.push(json!({
            "input": it.label,
            "equivalent": e.to_json(),
            "before": before,
            "after": after,
            "unchanged": unchanged,
        }));
    }
    Ok(Report { json: json!({"model": model.name, "seed": seed, "steps": steps, "results": results}), text })
}
