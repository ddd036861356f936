//! Braid words with classical and virtual generators.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::diagram::{EventKind, MorseDiagram, MorseEvent};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LetterKind {
    Positive,
    Negative,
    Virtual,
}

/// Generator `σ_index`, `σ_index⁻¹` or `v_index` (1-based index).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Letter {
    pub index: usize,
    pub kind: LetterKind,
}

impl Letter {
    pub fn pos(index: usize) -> Self {
        Self { index, kind: LetterKind::Positive }
    }
    pub fn neg(index: usize) -> Self {
        Self { index, kind: LetterKind::Negative }
    }
    pub fn virt(index: usize) -> Self {
        Self { index, kind: LetterKind::Virtual }
    }

    pub fn inverse(self) -> Self {
        let kind = match self.kind {
            LetterKind::Positive => LetterKind::Negative,
            LetterKind::Negative => LetterKind::Positive,
            LetterKind::Virtual => LetterKind::Virtual,
        };
        Self { kind, ..self }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<Letter>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<Letter>) -> Result<Self> {
        if strands < 1 {
            return Err(Error::Parse("strand count must be at least 1".into()));
        }
        if let Some(l) = letters.iter().find(|l| l.index == 0 || l.index >= strands) {
            return Err(Error::Parse(format!(
                "generator index {} out of range for {strands} strands",
                l.index
            )));
        }
        Ok(Self { strands, letters })
    }

    pub fn identity(strands: usize) -> Result<Self> {
        Self::new(strands, Vec::new())
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_classical(&self) -> bool {
        self.letters.iter().all(|l| l.kind != LetterKind::Virtual)
    }

    pub fn exponent_sum(&self) -> i64 {
        self.letters
            .iter()
            .map(|l| match l.kind {
                LetterKind::Positive => 1,
                LetterKind::Negative => -1,
                LetterKind::Virtual => 0,
            })
            .sum()
    }

    pub fn mirror(&self) -> Self {
        let letters = self
            .letters
            .iter()
            .map(|&l| match l.kind {
                LetterKind::Virtual => l,
                _ => l.inverse(),
            })
            .collect();
        Self { strands: self.strands, letters }
    }

    /// Permutation of strand positions induced by the word: strand starting
    /// at `i` ends at `perm[i]`.
    pub fn permutation(&self) -> Vec<usize> {
        let mut at: Vec<usize> = (0..self.strands).collect();
        for l in &self.letters {
            at.swap(l.index - 1, l.index);
        }
        let mut perm = vec![0; self.strands];
        for (pos, &start) in at.iter().enumerate() {
            perm[start] = pos;
        }
        perm
    }

    /// Number of link components of the closure.
    pub fn closure_components(&self) -> usize {
        let perm = self.permutation();
        let mut seen = vec![false; self.strands];
        let mut cycles = 0;
        for i in 0..self.strands {
            if !seen[i] {
                cycles += 1;
                let mut j = i;
                while !seen[j] {
                    seen[j] = true;
                    j = perm[j];
                }
            }
        }
        cycles
    }

    /// Open: `n` parallel strands with one crossing per letter. Closed:
    /// `n` nested cups, the braid, then `n` nested caps, so the return arcs
    /// run up the right-hand side.
    pub fn to_morse(&self, close: bool) -> MorseDiagram {
        let n = self.strands;
        let mut events = Vec::with_capacity(self.letters.len() + if close { 2 * n } else { 0 });
        if close {
            events.extend((0..n).map(|p| MorseEvent::new(EventKind::Cup, p)));
        }
        events.extend(self.letters.iter().map(|l| {
            let kind = match l.kind {
                LetterKind::Positive => EventKind::CrossPos,
                LetterKind::Negative => EventKind::CrossNeg,
                LetterKind::Virtual => EventKind::Virtual,
            };
            MorseEvent::new(kind, l.index - 1)
        }));
        if close {
            events.extend((0..n).rev().map(|p| MorseEvent::new(EventKind::Cap, p)));
        }
        MorseDiagram::new_unchecked(if close { 0 } else { n }, events)
    }
}

pub fn parse_braid(text: &str) -> Result<BraidWord> {
    text.parse()
}

pub fn braid_to_morse(b: &BraidWord, close: bool) -> MorseDiagram {
    b.to_morse(close)
}

impl FromStr for BraidWord {
    type Err = Error;

    /// `n: s1 s2^-1 v1`.
    fn from_str(s: &str) -> Result<Self> {
        let (head, body) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("braid '{s}' lacks 'n:' prefix")))?;
        let strands: usize = head
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad strand count '{}'", head.trim())))?;
        let letters = body.split_whitespace().map(parse_letter).collect::<Result<Vec<_>>>()?;
        Self::new(strands, letters)
    }
}

fn parse_letter(tok: &str) -> Result<Letter> {
    let bad = || Error::Parse(format!("bad braid token '{tok}'"));
    let (head, inverse) = match tok.strip_suffix("^-1") {
        Some(h) => (h, true),
        None => (tok, false),
    };
    let mut chars = head.chars();
    let kind = match chars.next() {
        Some('s') if inverse => LetterKind::Negative,
        Some('s') => LetterKind::Positive,
        Some('v') => LetterKind::Virtual,
        _ => return Err(bad()),
    };
    let digits = chars.as_str();
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let index = digits.parse().map_err(|_| bad())?;
    Ok(Letter { index, kind })
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.strands)?;
        for l in &self.letters {
            match l.kind {
                LetterKind::Positive => write!(f, " s{}", l.index)?,
                LetterKind::Negative => write!(f, " s{}^-1", l.index)?,
                LetterKind::Virtual => write!(f, " v{}", l.index)?,
            }
        }
        Ok(())
    }
}
