//! Sweep engine: a GF(2) vector over the chords of the current slot is
//! pushed right to left, each event or handleslide acting linearly on it.

use super::{chord_step, Chord, Setup, Step};
use crate::diagram::{Event, Generator};

/// Chords of a slot as bits of an `n × n` grid, `n` the widest slot.
struct ChordSet {
    n: usize,
    words: Vec<u64>,
}

impl ChordSet {
    fn new(n: usize) -> Self {
        ChordSet { n, words: vec![0; (n * n).div_ceil(64)] }
    }

    fn bit(&self, c: Chord) -> usize {
        (c.top - 1) * self.n + (c.bottom - 1)
    }

    fn get(&self, c: Chord) -> bool {
        let b = self.bit(c);
        self.words[b / 64] >> (b % 64) & 1 == 1
    }

    fn flip(&mut self, c: Chord) {
        let b = self.bit(c);
        self.words[b / 64] ^= 1 << (b % 64);
    }

    fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    fn chords(&self) -> impl Iterator<Item = Chord> + '_ {
        self.words.iter().enumerate().flat_map(move |(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = wi * 64 + w.trailing_zeros() as usize;
                w &= w - 1;
                Some(Chord { top: b / self.n + 1, bottom: b % self.n + 1 })
            })
        })
    }
}

/// Events of the targets of `source` with an odd number of paths, possibly
/// repeated; repeats cancel when the caller flips matrix entries.
pub(super) fn targets(setup: &Setup<'_>, source: &Generator) -> Vec<usize> {
    let tl = &setup.timeline;
    let width = setup.states.iter().map(|s| s.len()).max().unwrap_or(0);
    let (start, origin) = setup.origin_chord(source);
    let mut v = ChordSet::new(width);
    v.flip(origin);
    let mut out = Vec::new();
    for q in (0..start).rev() {
        if v.is_empty() {
            break;
        }
        let step = &tl.steps[q];
        if let Step::Event(ev) = step {
            let event = tl.origin[q];
            match *ev {
                Event::LeftCusp(_) => break,
                Event::Crossing(p) if setup.degree_of_event[event] == Some(source.degree - 1) => {
                    let sigma = &setup.states[event];
                    let mut hit = false;
                    if sigma.partner(p) < p {
                        hit ^= v.get(Chord { top: sigma.partner(p), bottom: p });
                    }
                    if sigma.partner(p + 1) > p + 1 {
                        hit ^= v.get(Chord { top: p + 1, bottom: sigma.partner(p + 1) });
                    }
                    if hit {
                        out.push(event);
                    }
                }
                _ => {}
            }
        }
        let mut next = ChordSet::new(width);
        for c in v.chords() {
            for n in chord_step(c, step).expect("left cusps stop the sweep") {
                next.flip(n);
            }
        }
        v = next;
    }
    out
}
