#![allow(dead_code)]

use knotamp::diagram::random_equivalent_capped;
use knotamp::{BraidWord, Letter, MorseDiagram, MorseEvent};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_braid(rng: &mut ChaCha8Rng, max_strands: usize, max_len: usize) -> BraidWord {
    let n = rng.gen_range(2..=max_strands);
    let len = rng.gen_range(0..=max_len);
    let letters = (0..len)
        .map(|_| {
            let i = rng.gen_range(1..n);
            if rng.gen_bool(0.5) { Letter::pos(i) } else { Letter::neg(i) }
        })
        .collect();
    BraidWord::new(n, letters).expect("valid indices")
}

/// Random braid whose closure is a knot.
pub fn random_knot_braid(rng: &mut ChaCha8Rng, max_strands: usize, max_len: usize) -> BraidWord {
    loop {
        let b = random_braid(rng, max_strands, max_len);
        if b.closure_components() == 1 {
            return b;
        }
    }
}

/// Knot closure scrambled by a few random Morse moves, so that it is no
/// longer a braid closure.
/// Width never exceeds `cap`.
pub fn random_knot_diagram(rng: &mut ChaCha8Rng, max_strands: usize, max_len: usize, steps: usize, cap: usize) -> MorseDiagram {
    let b = random_knot_braid(rng, max_strands, max_len);
    let seed = rng.gen();
    random_equivalent_capped(&b.to_morse(true), steps, seed, cap)
}

/// Unknot diagram with the given writhe: a circle carrying `|w|` curls,
/// width at most 4.
pub fn unknot_with_writhe(w: i64) -> MorseDiagram {
    let build = |positive: bool| {
        let mut ev = vec![MorseEvent::cup(0)];
        for _ in 0..w.unsigned_abs() {
            ev.push(MorseEvent::cup(2));
            ev.push(if positive { MorseEvent::pos_x(1) } else { MorseEvent::neg_x(1) });
            ev.push(MorseEvent::cap(2));
        }
        ev.push(MorseEvent::cap(0));
        MorseDiagram::closed(ev).unwrap()
    };
    let d = build(true);
    if d.writhe().unwrap() == w { d } else { build(false) }
}

/// Random braid mixing classical and virtual letters.
pub fn random_virtual_braid(rng: &mut ChaCha8Rng, max_strands: usize, max_len: usize) -> BraidWord {
    let n = rng.gen_range(2..=max_strands);
    let len = rng.gen_range(0..=max_len);
    let letters = (0..len)
        .map(|_| {
            let i = rng.gen_range(1..n);
            match rng.gen_range(0..3) {
                0 => Letter::pos(i),
                1 => Letter::neg(i),
                _ => Letter::virt(i),
            }
        })
        .collect();
    BraidWord::new(n, letters).expect("valid indices")
}
