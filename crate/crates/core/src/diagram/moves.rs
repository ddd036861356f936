//! Local rewrites preserving regular isotopy of Morse diagrams.
//!
//! Patterns (C is a crossing letter, C' the switched crossing):
//! - cancel: `U(k+1),A(k)` and `U(k),A(k+1)` are straight strands
//! - RII: `X(k),Y(k)`, `Y(k),X(k)`, `V(k),V(k)` are straight strands
//! - RIII: `C(k),C(k+1),C(k)` = `C(k+1),C(k),C(k+1)`, plus the detours
//!   `V(k),V(k+1),C(k)` = `C(k+1),V(k),V(k+1)` and
//!   `C(k),V(k+1),V(k)` = `V(k+1),V(k),C(k+1)`
//! - slides: `U(k),C(k+1)` = `U(k+1),C'(k)` and `C(k+1),A(k)` = `C'(k),A(k+1)`
//! - exchange: adjacent events on disjoint strands commute
//!
//! Reidemeister I is deliberately absent.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{EventKind, MorseDiagram, MorseEvent};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MoveKind {
    MinMaxCancel,
    ReidemeisterII,
    ReidemeisterIII,
    SlideOverMin,
    SlideOverMax,
    DistantExchange,
}

impl MoveKind {
    pub const ALL: [MoveKind; 6] = [
        MoveKind::MinMaxCancel,
        MoveKind::ReidemeisterII,
        MoveKind::ReidemeisterIII,
        MoveKind::SlideOverMin,
        MoveKind::SlideOverMax,
        MoveKind::DistantExchange,
    ];
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Apply,
    Inverse,
}

/// A move at event index `location`. For the inverse of a cancelling move
/// (which inserts events) `position` is the strand to act on and `variant`
/// picks the inserted pattern; pattern-matching moves ignore both.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MorseMove {
    pub kind: MoveKind,
    pub location: usize,
    pub direction: Direction,
    pub position: usize,
    pub variant: u8,
}

impl MorseMove {
    pub fn at(kind: MoveKind, location: usize, direction: Direction) -> Self {
        Self { kind, location, direction, position: 0, variant: 0 }
    }

    pub fn insert(kind: MoveKind, location: usize, position: usize, variant: u8) -> Self {
        Self { kind, location, direction: Direction::Inverse, position, variant }
    }

    fn inserts(&self) -> bool {
        self.direction == Direction::Inverse
            && matches!(self.kind, MoveKind::MinMaxCancel | MoveKind::ReidemeisterII)
    }
}

fn mismatch(m: &MorseMove) -> Error {
    Error::Precondition(format!("{:?} ({:?}) does not match at event {}", m.kind, m.direction, m.location))
}

use EventKind::{Cap, CrossNeg, CrossPos, Cup, Virtual};

fn ev(kind: EventKind, pos: usize) -> MorseEvent {
    MorseEvent::new(kind, pos)
}

impl MorseDiagram {
    pub fn apply_move(&self, m: &MorseMove) -> Result<MorseDiagram> {
        let evs = self.events();
        let i = m.location;
        let window = |len: usize| evs.get(i..i + len).ok_or_else(|| mismatch(m));

        let (remove, replacement): (usize, Vec<MorseEvent>) = if m.inserts() {
            if i > evs.len() {
                return Err(mismatch(m));
            }
            let w = if i == 0 { self.initial_width() } else { self.widths()?[i - 1] };
            let k = m.position;
            let ins = match (m.kind, m.variant) {
                (MoveKind::MinMaxCancel, 0) if k < w => vec![ev(Cup, k + 1), ev(Cap, k)],
                (MoveKind::MinMaxCancel, 1) if k < w => vec![ev(Cup, k), ev(Cap, k + 1)],
                (MoveKind::ReidemeisterII, 0) if k + 1 < w => vec![ev(CrossPos, k), ev(CrossNeg, k)],
                (MoveKind::ReidemeisterII, 1) if k + 1 < w => vec![ev(CrossNeg, k), ev(CrossPos, k)],
                (MoveKind::ReidemeisterII, 2) if k + 1 < w => vec![ev(Virtual, k), ev(Virtual, k)],
                _ => return Err(mismatch(m)),
            };
            (0, ins)
        } else {
            match m.kind {
                MoveKind::MinMaxCancel => {
                    let w = window(2)?;
                    let (u, a) = (w[0], w[1]);
                    let ok = u.kind == Cup
                        && a.kind == Cap
                        && (u.pos == a.pos + 1 || a.pos == u.pos + 1);
                    if !ok {
                        return Err(mismatch(m));
                    }
                    (2, vec![])
                }
                MoveKind::ReidemeisterII => {
                    let w = window(2)?;
                    let ok = w[0].pos == w[1].pos
                        && matches!(
                            (w[0].kind, w[1].kind),
                            (CrossPos, CrossNeg) | (CrossNeg, CrossPos) | (Virtual, Virtual)
                        );
                    if !ok {
                        return Err(mismatch(m));
                    }
                    (2, vec![])
                }
                MoveKind::ReidemeisterIII => (3, rewrite_r3(window(3)?, m.direction).ok_or_else(|| mismatch(m))?),
                MoveKind::SlideOverMin => {
                    let w = window(2)?;
                    let (u, c) = (w[0], w[1]);
                    if u.kind != Cup || !c.kind.is_crossing() {
                        return Err(mismatch(m));
                    }
                    let out = match m.direction {
                        Direction::Apply if c.pos == u.pos + 1 => vec![ev(Cup, u.pos + 1), ev(c.kind.flipped(), u.pos)],
                        Direction::Inverse if u.pos == c.pos + 1 => vec![ev(Cup, c.pos), ev(c.kind.flipped(), c.pos + 1)],
                        _ => return Err(mismatch(m)),
                    };
                    (2, out)
                }
                MoveKind::SlideOverMax => {
                    let w = window(2)?;
                    let (c, a) = (w[0], w[1]);
                    if a.kind != Cap || !c.kind.is_crossing() {
                        return Err(mismatch(m));
                    }
                    let out = match m.direction {
                        Direction::Apply if c.pos == a.pos + 1 => vec![ev(c.kind.flipped(), a.pos), ev(Cap, a.pos + 1)],
                        Direction::Inverse if a.pos == c.pos + 1 => vec![ev(c.kind.flipped(), c.pos + 1), ev(Cap, c.pos)],
                        _ => return Err(mismatch(m)),
                    };
                    (2, out)
                }
                MoveKind::DistantExchange => {
                    let w = window(2)?;
                    (2, exchange(w[0], w[1]).ok_or_else(|| mismatch(m))?.to_vec())
                }
            }
        };

        let mut events = Vec::with_capacity(evs.len() + replacement.len());
        events.extend_from_slice(&evs[..i]);
        events.extend(replacement);
        events.extend_from_slice(&evs[i + remove..]);
        MorseDiagram::new(self.initial_width(), events).map_err(|e| Error::Internal(format!("move produced invalid diagram: {e}")))
    }

    /// Every pattern-matching move applicable somewhere in the diagram.
    pub fn matching_moves(&self) -> Vec<MorseMove> {
        let mut out = Vec::new();
        for i in 0..self.events().len() {
            for kind in MoveKind::ALL {
                for dir in [Direction::Apply, Direction::Inverse] {
                    if dir == Direction::Inverse
                        && matches!(kind, MoveKind::MinMaxCancel | MoveKind::ReidemeisterII | MoveKind::DistantExchange)
                    {
                        continue;
                    }
                    let m = MorseMove::at(kind, i, dir);
                    if self.apply_move(&m).is_ok() {
                        out.push(m);
                    }
                }
            }
        }
        out
    }
}

fn rewrite_r3(w: &[MorseEvent], dir: Direction) -> Option<Vec<MorseEvent>> {
    let (e0, e1, e2) = (w[0], w[1], w[2]);
    if !(e0.kind.is_crossing() && e1.kind.is_crossing() && e2.kind.is_crossing()) {
        return None;
    }
    match dir {
        Direction::Apply => {
            let k = e0.pos;
            if e1.pos != k + 1 || e2.pos != k {
                return None;
            }
            if e0.kind == e1.kind && e1.kind == e2.kind {
                Some(vec![ev(e0.kind, k + 1), ev(e0.kind, k), ev(e0.kind, k + 1)])
            } else if e0.kind == Virtual && e1.kind == Virtual {
                Some(vec![ev(e2.kind, k + 1), ev(Virtual, k), ev(Virtual, k + 1)])
            } else if e1.kind == Virtual && e2.kind == Virtual {
                Some(vec![ev(Virtual, k + 1), ev(Virtual, k), ev(e0.kind, k + 1)])
            } else {
                None
            }
        }
        Direction::Inverse => {
            let k = e1.pos;
            if e0.pos != k + 1 || e2.pos != k + 1 {
                return None;
            }
            if e0.kind == e1.kind && e1.kind == e2.kind {
                Some(vec![ev(e0.kind, k), ev(e0.kind, k + 1), ev(e0.kind, k)])
            } else if e1.kind == Virtual && e2.kind == Virtual {
                Some(vec![ev(Virtual, k), ev(Virtual, k + 1), ev(e0.kind, k)])
            } else if e0.kind == Virtual && e1.kind == Virtual {
                Some(vec![ev(e2.kind, k), ev(Virtual, k + 1), ev(Virtual, k)])
            } else {
                None
            }
        }
    }
}

/// Swaps two consecutive events whose strand intervals are disjoint.
fn exchange(e1: MorseEvent, e2: MorseEvent) -> Option<[MorseEvent; 2]> {
    let (in1, out1) = e1.kind.arity();
    let (in2, out2) = e2.kind.arity();
    let (p, q) = (e1.pos, e2.pos);
    if q + in2 <= p {
        Some([e2, ev(e1.kind, p + out2 - in2)])
    } else if q >= p + out1 {
        Some([ev(e2.kind, q + in1 - out1), e1])
    } else {
        None
    }
}

/// `steps` random moves with the slice width capped at the diagram's own
/// maximum plus two.
pub fn random_equivalent(d: &MorseDiagram, steps: usize, seed: u64) -> MorseDiagram {
    random_equivalent_capped(d, steps, seed, d.max_width() + 2)
}

/// Deterministic in `seed`. Virtual RII pairs are only inserted into
/// diagrams that already carry virtual crossings.
pub fn random_equivalent_capped(d: &MorseDiagram, steps: usize, seed: u64, width_cap: usize) -> MorseDiagram {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let allow_virtual = d.has_virtual();
    let mut cur = d.clone();
    for _ in 0..steps {
        let matching = cur.matching_moves();
        let mut done = false;
        for _attempt in 0..32 {
            let m = if !matching.is_empty() && rng.gen_bool(0.6) {
                *matching.choose(&mut rng).expect("non-empty")
            } else {
                match random_insertion(&cur, &mut rng, allow_virtual) {
                    Some(m) => m,
                    None => continue,
                }
            };
            if let Ok(next) = cur.apply_move(&m) {
                if next.max_width() <= width_cap {
                    cur = next;
                    done = true;
                    break;
                }
            }
        }
        if !done {
            break;
        }
    }
    cur
}

fn random_insertion(d: &MorseDiagram, rng: &mut ChaCha8Rng, allow_virtual: bool) -> Option<MorseMove> {
    let widths = d.widths().ok()?;
    let loc = rng.gen_range(0..=d.events().len());
    let w = if loc == 0 { d.initial_width() } else { widths[loc - 1] };
    if rng.gen_bool(0.5) {
        if w == 0 {
            return None;
        }
        Some(MorseMove::insert(MoveKind::MinMaxCancel, loc, rng.gen_range(0..w), rng.gen_range(0..2)))
    } else {
        if w < 2 {
            return None;
        }
        let variants = if allow_virtual { 3 } else { 2 };
        Some(MorseMove::insert(MoveKind::ReidemeisterII, loc, rng.gen_range(0..w - 1), rng.gen_range(0..variants)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::parse_braid;

    fn md(s: &str) -> MorseDiagram {
        s.parse().unwrap()
    }

    #[test]
    fn cancel_zigzag() {
        let z = md("1: U1,A0");
        let s = z.apply_move(&MorseMove::at(MoveKind::MinMaxCancel, 0, Direction::Apply)).unwrap();
        assert_eq!(s, MorseDiagram::new(1, vec![]).unwrap());
        let back = s.apply_move(&MorseMove::insert(MoveKind::MinMaxCancel, 0, 0, 0)).unwrap();
        assert_eq!(back, z);
        assert!(md("1: U0,A1").apply_move(&MorseMove::at(MoveKind::MinMaxCancel, 0, Direction::Apply)).is_ok());
        assert!(md("U0,A0").apply_move(&MorseMove::at(MoveKind::MinMaxCancel, 0, Direction::Apply)).is_err());
    }

    #[test]
    fn r2_removes_pair() {
        let d = md("2: X0,Y0");
        let s = d.apply_move(&MorseMove::at(MoveKind::ReidemeisterII, 0, Direction::Apply)).unwrap();
        assert!(s.events().is_empty());
        assert!(md("2: X0,X0").apply_move(&MorseMove::at(MoveKind::ReidemeisterII, 0, Direction::Apply)).is_err());
    }

    #[test]
    fn r3_round_trip() {
        let d = md("3: X0,X1,X0");
        let r = d.apply_move(&MorseMove::at(MoveKind::ReidemeisterIII, 0, Direction::Apply)).unwrap();
        assert_eq!(r, md("3: X1,X0,X1"));
        let back = r.apply_move(&MorseMove::at(MoveKind::ReidemeisterIII, 0, Direction::Inverse)).unwrap();
        assert_eq!(back, d);
        assert!(md("3: X0,Y1,X0").apply_move(&MorseMove::at(MoveKind::ReidemeisterIII, 0, Direction::Apply)).is_err());
        let v = md("3: V0,V1,Y0");
        let vr = v.apply_move(&MorseMove::at(MoveKind::ReidemeisterIII, 0, Direction::Apply)).unwrap();
        assert_eq!(vr, md("3: Y1,V0,V1"));
        assert_eq!(vr.apply_move(&MorseMove::at(MoveKind::ReidemeisterIII, 0, Direction::Inverse)).unwrap(), v);
    }

    #[test]
    fn slides_flip_crossing() {
        let d = md("1: U0,X1");
        let s = d.apply_move(&MorseMove::at(MoveKind::SlideOverMin, 0, Direction::Apply)).unwrap();
        assert_eq!(s, md("1: U1,Y0"));
        assert_eq!(s.apply_move(&MorseMove::at(MoveKind::SlideOverMin, 0, Direction::Inverse)).unwrap(), d);
        let c = md("3: X1,A0");
        let t = c.apply_move(&MorseMove::at(MoveKind::SlideOverMax, 0, Direction::Apply)).unwrap();
        assert_eq!(t, md("3: Y0,A1"));
        assert_eq!(t.apply_move(&MorseMove::at(MoveKind::SlideOverMax, 0, Direction::Inverse)).unwrap(), c);
    }

    #[test]
    fn exchange_disjoint_events() {
        let d = md("U0,U2,A0,A0");
        let e = d.apply_move(&MorseMove::at(MoveKind::DistantExchange, 1, Direction::Apply)).unwrap();
        assert_eq!(e, md("U0,A0,U0,A0"));
        assert!(md("U0,U1,A1,A0").apply_move(&MorseMove::at(MoveKind::DistantExchange, 1, Direction::Apply)).is_err());
    }

    #[test]
    fn random_equivalent_examples() {
        let c = random_equivalent(&MorseDiagram::circle(), 10, 42);
        assert_eq!(c.components().unwrap(), 1);
        assert!(c.validate().is_ok());
        let t = parse_braid("2: s1 s1 s1").unwrap().to_morse(true);
        let r = random_equivalent(&t, 20, 7);
        assert_eq!(r.writhe().unwrap(), 3);
        let h = parse_braid("2: s1 s1").unwrap().to_morse(true);
        assert_eq!(random_equivalent(&h, 0, 0), h);
        assert_eq!(random_equivalent(&t, 20, 7), r);
    }
}
