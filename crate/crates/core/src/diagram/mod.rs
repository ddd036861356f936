//! Morse diagrams: time-ordered cups, caps and crossings on a row of strand
//! positions, read top to bottom.

pub mod moves;

use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::error::{Error, Result};

pub use moves::{random_equivalent, random_equivalent_capped, Direction, MorseMove, MoveKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EventKind {
    Cup,
    Cap,
    CrossPos,
    CrossNeg,
    Virtual,
}

impl EventKind {
    pub fn letter(self) -> char {
        match self {
            EventKind::Cup => 'U',
            EventKind::Cap => 'A',
            EventKind::CrossPos => 'X',
            EventKind::CrossNeg => 'Y',
            EventKind::Virtual => 'V',
        }
    }

    pub fn from_letter(c: char) -> Option<Self> {
        Some(match c {
            'U' => EventKind::Cup,
            'A' => EventKind::Cap,
            'X' => EventKind::CrossPos,
            'Y' => EventKind::CrossNeg,
            'V' => EventKind::Virtual,
            _ => return None,
        })
    }

    pub fn is_crossing(self) -> bool {
        matches!(self, EventKind::CrossPos | EventKind::CrossNeg | EventKind::Virtual)
    }

    pub fn is_classical_crossing(self) -> bool {
        matches!(self, EventKind::CrossPos | EventKind::CrossNeg)
    }

    /// Strands consumed and produced.
    pub fn arity(self) -> (usize, usize) {
        match self {
            EventKind::Cup => (0, 2),
            EventKind::Cap => (2, 0),
            _ => (2, 2),
        }
    }

    /// X ↔ Y; everything else fixed.
    pub fn flipped(self) -> Self {
        match self {
            EventKind::CrossPos => EventKind::CrossNeg,
            EventKind::CrossNeg => EventKind::CrossPos,
            k => k,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MorseEvent {
    pub kind: EventKind,
    /// Leftmost strand position touched (0-based).
    pub pos: usize,
}

impl MorseEvent {
    pub fn new(kind: EventKind, pos: usize) -> Self {
        Self { kind, pos }
    }
    pub fn cup(pos: usize) -> Self {
        Self::new(EventKind::Cup, pos)
    }
    pub fn cap(pos: usize) -> Self {
        Self::new(EventKind::Cap, pos)
    }
    pub fn pos_x(pos: usize) -> Self {
        Self::new(EventKind::CrossPos, pos)
    }
    pub fn neg_x(pos: usize) -> Self {
        Self::new(EventKind::CrossNeg, pos)
    }
    pub fn virt(pos: usize) -> Self {
        Self::new(EventKind::Virtual, pos)
    }
}

impl fmt::Display for MorseEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.kind.letter(), self.pos)
    }
}

impl FromStr for MorseEvent {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("bad Morse event '{s}'"));
        let mut chars = s.chars();
        let kind = chars.next().and_then(EventKind::from_letter).ok_or_else(bad)?;
        let digits = chars.as_str();
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        Ok(Self::new(kind, digits.parse().map_err(|_| bad())?))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MorseDiagram {
    initial_width: usize,
    events: Vec<MorseEvent>,
}

impl MorseDiagram {
    pub fn new(initial_width: usize, events: Vec<MorseEvent>) -> Result<Self> {
        let d = Self { initial_width, events };
        d.widths()?;
        Ok(d)
    }

    /// For callers that construct valid event lists by design.
    pub(crate) fn new_unchecked(initial_width: usize, events: Vec<MorseEvent>) -> Self {
        debug_assert!(Self { initial_width, events: events.clone() }.widths().is_ok());
        Self { initial_width, events }
    }

    pub fn closed(events: Vec<MorseEvent>) -> Result<Self> {
        let d = Self::new(0, events)?;
        if !d.is_closed() {
            return Err(Error::Precondition("diagram does not end at width 0".into()));
        }
        Ok(d)
    }

    pub fn circle() -> Self {
        Self::new_unchecked(0, vec![MorseEvent::cup(0), MorseEvent::cap(0)])
    }

    pub fn initial_width(&self) -> usize {
        self.initial_width
    }

    pub fn events(&self) -> &[MorseEvent] {
        &self.events
    }

    /// Running width after each event.
    pub fn widths(&self) -> Result<Vec<usize>> {
        let mut w = self.initial_width;
        let mut out = Vec::with_capacity(self.events.len());
        for (i, e) in self.events.iter().enumerate() {
            w = step_width(w, e).ok_or_else(|| {
                Error::Precondition(format!("event {i} ({e}) does not fit slice width {w}"))
            })?;
            out.push(w);
        }
        Ok(out)
    }

    /// Validates and additionally requires a closed diagram.
    pub fn validate(&self) -> Result<Vec<usize>> {
        let ws = self.widths()?;
        if !self.is_closed() {
            return Err(Error::Precondition(format!(
                "diagram is not closed (starts at {}, ends at {})",
                self.initial_width,
                self.final_width()
            )));
        }
        Ok(ws)
    }

    pub fn final_width(&self) -> usize {
        self.widths().ok().and_then(|w| w.last().copied()).unwrap_or(self.initial_width)
    }

    pub fn is_closed(&self) -> bool {
        self.initial_width == 0 && self.final_width() == 0
    }

    pub fn max_width(&self) -> usize {
        self.widths()
            .map(|w| w.into_iter().max().unwrap_or(0).max(self.initial_width))
            .unwrap_or(self.initial_width)
    }

    pub fn crossing_count(&self) -> usize {
        self.events.iter().filter(|e| e.kind.is_classical_crossing()).count()
    }

    pub fn has_virtual(&self) -> bool {
        self.events.iter().any(|e| e.kind == EventKind::Virtual)
    }

    /// Every classical crossing switched.
    pub fn mirror(&self) -> Self {
        let events = self.events.iter().map(|e| MorseEvent::new(e.kind.flipped(), e.pos)).collect();
        Self { initial_width: self.initial_width, events }
    }

    /// Arc graph with one orientation per component.
    pub fn skeleton(&self) -> Result<Skeleton> {
        self.widths()?;
        Ok(Skeleton::build(self))
    }

    pub fn writhe(&self) -> Result<i64> {
        Ok(self.skeleton()?.writhe())
    }

    pub fn components(&self) -> Result<usize> {
        Ok(self.skeleton()?.component_count())
    }

    pub fn seifert_count(&self) -> Result<usize> {
        Ok(self.skeleton()?.seifert_count())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "initial_width": self.initial_width,
            "events": self.events.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
        })
    }

    /// Accepts `{"initial_width": w, "events": ["U0", ...]}` or a bare event list.
    pub fn from_json(v: &Value) -> Result<Self> {
        let (w, evs) = match v {
            Value::Array(a) => (0, a),
            Value::Object(_) => {
                let w = match v.get("initial_width") {
                    None => 0,
                    Some(x) => x
                        .as_u64()
                        .ok_or_else(|| Error::Parse("'initial_width' must be a non-negative integer".into()))?
                        as usize,
                };
                let evs = v
                    .get("events")
                    .and_then(Value::as_array)
                    .ok_or_else(|| Error::Parse("diagram JSON needs an 'events' list".into()))?;
                (w, evs)
            }
            _ => return Err(Error::Parse("diagram JSON must be an object or a list".into())),
        };
        let events = evs
            .iter()
            .map(|e| {
                e.as_str()
                    .ok_or_else(|| Error::Parse("events must be strings like \"U0\"".into()))?
                    .parse()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(w, events)
    }
}

pub(crate) fn step_width(w: usize, e: &MorseEvent) -> Option<usize> {
    match e.kind {
        EventKind::Cup => (e.pos <= w).then_some(w + 2),
        EventKind::Cap => (e.pos + 1 < w).then(|| w - 2),
        _ => (e.pos + 1 < w).then_some(w),
    }
}

impl fmt::Display for MorseDiagram {
    /// `U0,X0,A0`; open diagrams carry a `w:` prefix.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.initial_width > 0 {
            write!(f, "{}: ", self.initial_width)?;
        }
        for (i, e) in self.events.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

impl FromStr for MorseDiagram {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let (w, body) = match s.split_once(':') {
            Some((w, body)) => (
                w.trim().parse().map_err(|_| Error::Parse(format!("bad initial width '{}'", w.trim())))?,
                body,
            ),
            None => (0, s),
        };
        let events = body
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(str::parse)
            .collect::<Result<Vec<_>>>()?;
        Self::new(w, events)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum End {
    Top,
    Bottom,
}

/// One crossing with its four incident segments: `a`, `b` enter from the
/// top at positions p, p+1; `c`, `d` leave at the bottom. Strands run a→d
/// and b→c.
#[derive(Clone, Copy, Debug)]
pub struct CrossingRec {
    pub event: usize,
    pub kind: EventKind,
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub d: usize,
}

/// Segments are the pieces of strand between consecutive events. Each has a
/// top and a bottom end; cups, caps and crossings join ends.
#[derive(Clone, Debug)]
pub struct Skeleton {
    partner: Vec<Option<(usize, End)>>,
    crossings: Vec<CrossingRec>,
    label: Vec<usize>,
    n_components: usize,
    down: Vec<bool>,
}

fn end_id(seg: usize, end: End) -> usize {
    seg * 2 + usize::from(end == End::Bottom)
}

impl Skeleton {
    fn build(d: &MorseDiagram) -> Self {
        let mut partner: Vec<Option<(usize, End)>> = Vec::new();
        let mut next = 0usize;
        let mut new_seg = |partner: &mut Vec<Option<(usize, End)>>| {
            partner.push(None);
            partner.push(None);
            next += 1;
            next - 1
        };
        fn join(partner: &mut [Option<(usize, End)>], x: (usize, End), y: (usize, End)) {
            partner[end_id(x.0, x.1)] = Some(y);
            partner[end_id(y.0, y.1)] = Some(x);
        }
        let mut slots: Vec<usize> = (0..d.initial_width).map(|_| new_seg(&mut partner)).collect();
        let mut crossings = Vec::new();
        for (i, e) in d.events.iter().enumerate() {
            let p = e.pos;
            match e.kind {
                EventKind::Cup => {
                    let s1 = new_seg(&mut partner);
                    let s2 = new_seg(&mut partner);
                    join(&mut partner, (s1, End::Top), (s2, End::Top));
                    slots.splice(p..p, [s1, s2]);
                }
                EventKind::Cap => {
                    let (x, y) = (slots[p], slots[p + 1]);
                    join(&mut partner, (x, End::Bottom), (y, End::Bottom));
                    slots.drain(p..p + 2);
                }
                kind => {
                    let (a, b) = (slots[p], slots[p + 1]);
                    let c = new_seg(&mut partner);
                    let dd = new_seg(&mut partner);
                    join(&mut partner, (a, End::Bottom), (dd, End::Top));
                    join(&mut partner, (b, End::Bottom), (c, End::Top));
                    slots[p] = c;
                    slots[p + 1] = dd;
                    crossings.push(CrossingRec { event: i, kind, a, b, c, d: dd });
                }
            }
        }
        let n_seg = partner.len() / 2;

        let mut uf = UnionFind::new(n_seg);
        for (id, p) in partner.iter().enumerate() {
            if let Some((s, _)) = p {
                uf.union(id / 2, *s);
            }
        }
        // label components in order of their first segment
        let mut label = vec![usize::MAX; n_seg];
        let mut root_label = vec![usize::MAX; n_seg];
        let mut n_components = 0;
        for s in 0..n_seg {
            let r = uf.find(s);
            if root_label[r] == usize::MAX {
                root_label[r] = n_components;
                n_components += 1;
            }
            label[s] = root_label[r];
        }

        let mut sk = Self { partner, crossings, label, n_components, down: vec![true; n_seg] };
        sk.orient();
        sk
    }

    /// Orients every component so that its first segment runs downward.
    fn orient(&mut self) {
        let n_seg = self.down.len();
        let mut done = vec![false; n_seg];
        for start in 0..n_seg {
            if done[start] {
                continue;
            }
            done[start] = true;
            self.down[start] = true;
            // forward from the bottom end
            let mut exit = (start, End::Bottom);
            while let Some((s, e)) = self.partner[end_id(exit.0, exit.1)] {
                if done[s] {
                    break;
                }
                done[s] = true;
                self.down[s] = e == End::Top;
                exit = (s, if e == End::Top { End::Bottom } else { End::Top });
            }
            // backward from the top end (open strands only reach here)
            let mut entry = (start, End::Top);
            while let Some((s, e)) = self.partner[end_id(entry.0, entry.1)] {
                if done[s] {
                    break;
                }
                done[s] = true;
                self.down[s] = e == End::Bottom;
                entry = (s, if e == End::Top { End::Bottom } else { End::Top });
            }
        }
    }

    pub fn component_count(&self) -> usize {
        self.n_components
    }

    /// Component label of every segment.
    pub fn labels(&self) -> &[usize] {
        &self.label
    }

    pub fn crossings(&self) -> &[CrossingRec] {
        &self.crossings
    }

    /// Reverses the orientation of one component.
    pub fn reverse_component(&mut self, comp: usize) {
        for (s, d) in self.down.iter_mut().enumerate() {
            if self.label[s] == comp {
                *d = !*d;
            }
        }
    }

    pub fn segment_runs_down(&self, seg: usize) -> bool {
        self.down[seg]
    }

    /// Oriented sign of a classical crossing, 0 for virtual ones.
    pub fn sign(&self, c: &CrossingRec) -> i64 {
        let base = match c.kind {
            EventKind::CrossPos => 1,
            EventKind::CrossNeg => -1,
            _ => return 0,
        };
        if self.down[c.a] == self.down[c.b] {
            base
        } else {
            -base
        }
    }

    /// (P, N): positive and negative crossing counts.
    pub fn sign_counts(&self) -> (usize, usize) {
        let mut p = 0;
        let mut n = 0;
        for c in &self.crossings {
            match self.sign(c) {
                1 => p += 1,
                -1 => n += 1,
                _ => {}
            }
        }
        (p, n)
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| self.sign(c)).sum()
    }

    /// Linking number between two components: half the signed count of
    /// classical crossings between them.
    pub fn linking_number_twice(&self, c1: usize, c2: usize) -> i64 {
        self.crossings
            .iter()
            .filter(|c| {
                let (la, lb) = (self.label[c.a], self.label[c.b]);
                (la == c1 && lb == c2) || (la == c2 && lb == c1)
            })
            .map(|c| self.sign(c))
            .sum()
    }

    /// Loops after the oriented smoothing of every classical crossing.
    pub fn seifert_count(&self) -> usize {
        let n_seg = self.down.len();
        let mut uf = UnionFind::new(n_seg);
        let mut at_crossing = vec![false; n_seg * 2];
        for c in &self.crossings {
            if !c.kind.is_classical_crossing() {
                continue;
            }
            at_crossing[end_id(c.a, End::Bottom)] = true;
            at_crossing[end_id(c.b, End::Bottom)] = true;
            if self.down[c.a] == self.down[c.b] {
                uf.union(c.a, c.c);
                uf.union(c.b, c.d);
            } else {
                uf.union(c.a, c.b);
                uf.union(c.c, c.d);
            }
        }
        for (id, p) in self.partner.iter().enumerate() {
            if let Some((s, e)) = p {
                if !at_crossing[id] && !at_crossing[end_id(*s, *e)] {
                    uf.union(id / 2, *s);
                }
            }
        }
        uf.count()
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
    sets: usize,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        Self { parent: (0..n).collect(), sets: n }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, x: usize, y: usize) {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx != ry {
            self.parent[rx] = ry;
            self.sets -= 1;
        }
    }

    pub(crate) fn count(&self) -> usize {
        self.sets
    }
}
