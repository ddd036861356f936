//! Bracket polynomial by brute-force state expansion. Shares nothing with
//! the transfer-matrix engine beyond the diagram type: every crossing is
//! smoothed, loops are counted with a union-find over strand ends.

use std::collections::BTreeMap;

use crate::diagram::{EventKind, MorseDiagram, UnionFind};
use crate::error::{Error, Result};
use crate::scalar::LaurentPoly;

/// Largest crossing count the oracle accepts.
pub const MAX_CROSSINGS: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Smoothing {
    /// Top-left to bottom-left, top-right to bottom-right.
    Vertical,
    /// Top-left to top-right, bottom-left to bottom-right.
    Horizontal,
}

/// A-exponent contributed by one smoothed crossing.
fn weight(kind: EventKind, s: Smoothing) -> i64 {
    match (kind, s) {
        (EventKind::CrossPos, Smoothing::Vertical) | (EventKind::CrossNeg, Smoothing::Horizontal) => 1,
        _ => -1,
    }
}

fn check(d: &MorseDiagram) -> Result<()> {
    d.validate()?;
    if d.has_virtual() {
        return Err(Error::Precondition("the skein oracle takes classical diagrams only".into()));
    }
    if d.crossing_count() > MAX_CROSSINGS {
        return Err(Error::Precondition(format!(
            "{} crossings exceed the oracle limit of {MAX_CROSSINGS}",
            d.crossing_count()
        )));
    }
    Ok(())
}

/// Loop count after smoothing crossing `i` (event order) by `states[i]`.
pub fn count_loops(d: &MorseDiagram, states: &[Smoothing]) -> usize {
    let mut next = 0usize;
    let mut fresh = || {
        next += 1;
        next - 1
    };
    let mut joins: Vec<(usize, usize)> = Vec::new();
    let mut slots: Vec<usize> = Vec::new();
    let mut ci = 0;
    for e in d.events() {
        let p = e.pos;
        match e.kind {
            EventKind::Cup => {
                let (u, v) = (fresh(), fresh());
                joins.push((u, v));
                slots.splice(p..p, [u, v]);
            }
            EventKind::Cap => {
                joins.push((slots[p], slots[p + 1]));
                slots.drain(p..p + 2);
            }
            _ => {
                let (a, b) = (slots[p], slots[p + 1]);
                let (c, dd) = (fresh(), fresh());
                match states[ci] {
                    Smoothing::Vertical => joins.extend([(a, c), (b, dd)]),
                    Smoothing::Horizontal => joins.extend([(a, b), (c, dd)]),
                }
                ci += 1;
                slots[p] = c;
                slots[p + 1] = dd;
            }
        }
    }
    let mut uf = UnionFind::new(next);
    for (x, y) in joins {
        uf.union(x, y);
    }
    uf.count()
}

/// State-sum as a histogram `(A-exponent, loops) → count`.
fn histogram(d: &MorseDiagram) -> Result<BTreeMap<(i64, usize), u64>> {
    check(d)?;
    let kinds: Vec<EventKind> = d.events().iter().filter(|e| e.kind.is_crossing()).map(|e| e.kind).collect();
    let c = kinds.len();
    let mut hist = BTreeMap::new();
    let mut states = vec![Smoothing::Vertical; c];
    for mask in 0u32..(1u32 << c) {
        let mut k = 0;
        for (i, kind) in kinds.iter().enumerate() {
            states[i] = if mask >> i & 1 == 0 { Smoothing::Vertical } else { Smoothing::Horizontal };
            k += weight(*kind, states[i]);
        }
        *hist.entry((k, count_loops(d, &states))).or_insert(0u64) += 1;
    }
    Ok(hist)
}

fn loop_value() -> LaurentPoly {
    -(LaurentPoly::a_pow(2) + LaurentPoly::a_pow(-2))
}

fn sum_states(d: &MorseDiagram, loop_shift: i64) -> Result<LaurentPoly> {
    let delta = loop_value();
    let mut out = LaurentPoly::zero();
    for ((k, loops), count) in histogram(d)? {
        let e = loops as i64 + loop_shift;
        let term = &LaurentPoly::a_pow(k) * &delta.pow(e).expect("non-negative power");
        out = &out + &(&term * &LaurentPoly::from_int(count as i64));
    }
    Ok(out)
}

/// `Σ_states A^{#A − #A⁻¹} δ^{L}`: the closed-diagram amplitude, one loop
/// value more than the unit-normalized bracket.
pub fn skein_bracket(d: &MorseDiagram) -> Result<LaurentPoly> {
    sum_states(d, 0)
}

/// `Σ_states A^{…} δ^{L−1}`, so the unknot is 1.
pub fn skein_bracket_unit(d: &MorseDiagram) -> Result<LaurentPoly> {
    sum_states(d, -1)
}

/// `(−A³)^{−w} · skein_bracket`.
pub fn normalized_skein(d: &MorseDiagram) -> Result<LaurentPoly> {
    let z = skein_bracket(d)?;
    let w = d.writhe()?;
    let curl = -LaurentPoly::a_pow(3);
    Ok(&z * &curl.pow(-w).expect("unit"))
}
