//! Depth-first enumeration of chord paths. Exponential in the number of
//! handleslides in the worst case; kept as the reference engine.

use serde::Serialize;

use super::{chord_step, Chord, Differential, LinearizedError, Setup, Step};
use crate::diagram::{Event, Generator, GeneratorKind};
use crate::gf2::Gf2Matrix;
use crate::mcs::MorseComplexSequence;

/// A chord path from `source` to `target`, chords listed right to left.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChordPath {
    pub source: GeneratorKind,
    pub target: GeneratorKind,
    pub chords: Vec<Chord>,
    /// Indices of the handleslides the path jumps along.
    pub jumps: Vec<usize>,
}

struct Node {
    parent: Option<usize>,
    chord: Chord,
    jump: Option<usize>,
}

/// Calls `found(target_event, arena, leaf)` once per terminating path.
fn walk(setup: &Setup<'_>, source: &Generator, mut found: impl FnMut(usize, &[Node], usize)) {
    let tl = &setup.timeline;
    let (start, chord) = setup.origin_chord(source);
    let mut arena = vec![Node { parent: None, chord, jump: None }];
    // (node, q): the chord sits just left of timeline step q.
    let mut stack = vec![(0usize, start)];
    while let Some((node, q)) = stack.pop() {
        if q == 0 {
            continue;
        }
        let step = &tl.steps[q - 1];
        let c = arena[node].chord;
        if let Step::Event(ev) = step {
            let event = tl.origin[q - 1];
            match ev {
                Event::LeftCusp(_) => continue,
                Event::Crossing(p) => {
                    if setup.degree_of_event[event] == Some(source.degree - 1) && setup.terminates(c, event, *p) {
                        found(event, &arena, node);
                    }
                }
                Event::RightCusp(_) => {}
            }
        }
        let next = chord_step(c, step).expect("left cusps are handled above");
        for n in next {
            let jump = match step {
                Step::Slide(_) if n != c => Some(tl.origin[q - 1]),
                _ => None,
            };
            arena.push(Node { parent: Some(node), chord: n, jump });
            stack.push((arena.len() - 1, q - 1));
        }
    }
}

fn generator(setup: &Setup<'_>, kind: GeneratorKind) -> Result<Generator, LinearizedError> {
    setup
        .generators
        .iter()
        .find(|g| g.kind == kind)
        .copied()
        .ok_or(LinearizedError::UnknownGenerator(kind))
}

/// All chord paths from the generator `a` to the crossing `b`.
pub fn enumerate_chord_paths(
    m: &MorseComplexSequence<'_>,
    a: GeneratorKind,
    b: GeneratorKind,
) -> Result<Vec<ChordPath>, LinearizedError> {
    let setup = Setup::new(m)?;
    let source = generator(&setup, a)?;
    let target = generator(&setup, b)?;
    if !matches!(b, GeneratorKind::Crossing(_)) || target.degree + 1 != source.degree || target.event >= source.event {
        return Err(LinearizedError::BadTarget);
    }
    let mut out = Vec::new();
    walk(&setup, &source, |event, arena, leaf| {
        if event != target.event {
            return;
        }
        let mut chords = Vec::new();
        let mut jumps = Vec::new();
        let mut cur = Some(leaf);
        while let Some(i) = cur {
            chords.push(arena[i].chord);
            jumps.extend(arena[i].jump);
            cur = arena[i].parent;
        }
        chords.reverse();
        jumps.reverse();
        out.push(ChordPath { source: a, target: b, chords, jumps });
    });
    Ok(out)
}

/// The differential from path counts, source by source.
pub fn oracle_differential(m: &MorseComplexSequence<'_>) -> Result<Differential, LinearizedError> {
    let setup = Setup::new(m)?;
    let n = setup.generators.len();
    let mut full = Gf2Matrix::zeros(n, n);
    for (i, a) in setup.generators.iter().enumerate() {
        walk(&setup, a, |event, _, _| {
            let j = setup.generators.iter().position(|g| g.event == event).expect("crossings are generators");
            full.flip(i, j);
        });
    }
    Ok(Differential::new(setup.generators.clone(), full))
}

/// Whether any terminating path from `a` jumps along a handleslide.
fn any_jump(setup: &Setup<'_>, a: &Generator) -> bool {
    let mut jumped = false;
    walk(setup, a, |_, arena, leaf| {
        let mut cur = Some(leaf);
        while let Some(i) = cur {
            jumped |= arena[i].jump.is_some();
            cur = arena[i].parent;
        }
    });
    jumped
}

/// Degrees of sources that have a terminating path with a jump.
pub fn jumping_source_degrees(m: &MorseComplexSequence<'_>) -> Result<Vec<i32>, LinearizedError> {
    let setup = Setup::new(m)?;
    Ok(setup.generators.iter().filter(|a| any_jump(&setup, a)).map(|a| a.degree).collect())
}
