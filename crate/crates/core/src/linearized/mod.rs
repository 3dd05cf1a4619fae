//! Linearized differential of an SR-form MCS by counting chord paths, and
//! the resulting homology polynomials.
//!
//! Chord paths run right to left. Two engines compute the same counts: a
//! depth-first path enumeration ([`enumerate_chord_paths`]) and a sweep that
//! carries a GF(2) vector over all chords of a slot ([`differential`]).

mod oracle;
mod transfer;

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{DiagramError, Event, FrontDiagram, Generator, GeneratorKind};
use crate::gf2::Gf2Matrix;
use crate::laurent::LaurentPolynomial;
use crate::mcs::{enumerate_sr_forms, Handleslide, MorseComplexSequence};
use crate::rulings::Pairing;

pub use oracle::{enumerate_chord_paths, jumping_source_degrees, oracle_differential, ChordPath};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinearizedError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("chord paths are defined for SR-form MCSs only")]
    NotSrForm,
    #[error("chord paths need every left cusp before the other events")]
    NotPlat,
    #[error("a chord cannot be carried across a left cusp")]
    LeftCusp,
    #[error("no generator {0:?}")]
    UnknownGenerator(GeneratorKind),
    #[error("target must be a crossing one degree below and left of the source")]
    BadTarget,
    #[error("negative homology rank {h} in degree {k}")]
    NegativeHomology { k: i32, h: i64 },
}

/// Vertical segment between positions `top < bottom` of one slot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Chord {
    pub top: usize,
    pub bottom: usize,
}

impl Chord {
    pub fn new(top: usize, bottom: usize) -> Self {
        assert!(top < bottom, "chord endpoints out of order");
        Chord { top, bottom }
    }
}

impl fmt::Display for Chord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.top, self.bottom)
    }
}

/// Something a chord path crosses: a diagram event or a handleslide.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Step {
    Event(Event),
    Slide(Handleslide),
}

/// Chords immediately left of `step`, given a chord immediately right of it.
pub fn chord_step(c: Chord, step: &Step) -> Result<Vec<Chord>, LinearizedError> {
    let Chord { top: i, bottom: j } = c;
    Ok(match *step {
        Step::Event(Event::LeftCusp(_)) => return Err(LinearizedError::LeftCusp),
        Step::Event(Event::Crossing(p)) => {
            if (i, j) == (p, p + 1) {
                // Its ends would trade places.
                Vec::new()
            } else {
                let tr = |x: usize| match x {
                    _ if x == p => p + 1,
                    _ if x == p + 1 => p,
                    _ => x,
                };
                vec![Chord::new(tr(i), tr(j))]
            }
        }
        Step::Event(Event::RightCusp(p)) => {
            let sh = |x: usize| if x >= p { x + 2 } else { x };
            vec![Chord::new(sh(i), sh(j))]
        }
        Step::Slide(Handleslide { upper: k, lower: l, .. }) => {
            let mut out = vec![c];
            if j == l && i < k {
                out.push(Chord::new(i, k));
            }
            if i == k && j > l {
                out.push(Chord::new(l, j));
            }
            out
        }
    })
}

/// Events and handleslides of an MCS in left-to-right order.
#[derive(Debug, Clone)]
pub(crate) struct Timeline {
    pub(crate) steps: Vec<Step>,
    /// For each step: the event index, or the handleslide index.
    pub(crate) origin: Vec<usize>,
    /// Timeline index of each event.
    pub(crate) event_at: Vec<usize>,
}

impl Timeline {
    pub(crate) fn new(m: &MorseComplexSequence<'_>) -> Self {
        let events = m.diagram().events();
        let hs = m.handleslides();
        let mut steps = Vec::with_capacity(events.len() + hs.len());
        let mut origin = Vec::with_capacity(steps.capacity());
        let mut event_at = Vec::with_capacity(events.len());
        let mut next = 0;
        for (e, ev) in events.iter().enumerate() {
            while next < hs.len() && hs[next].gap <= e {
                steps.push(Step::Slide(hs[next]));
                origin.push(next);
                next += 1;
            }
            event_at.push(steps.len());
            steps.push(Step::Event(*ev));
            origin.push(e);
        }
        for (idx, h) in hs.iter().enumerate().skip(next) {
            steps.push(Step::Slide(*h));
            origin.push(idx);
        }
        Timeline { steps, origin, event_at }
    }
}

/// Everything the path engines need about an SR-form MCS.
pub(crate) struct Setup<'a> {
    pub(crate) timeline: Timeline,
    pub(crate) generators: Vec<Generator>,
    /// Degree of each event that is a generator, by event index.
    pub(crate) degree_of_event: Vec<Option<i32>>,
    /// Involution just left of each event.
    pub(crate) states: &'a [Pairing],
}

impl<'a> Setup<'a> {
    pub(crate) fn new(m: &'a MorseComplexSequence<'_>) -> Result<Self, LinearizedError> {
        let d = m.diagram();
        let ruling = m.ruling().ok_or(LinearizedError::NotSrForm)?;
        if !d.left_cusps_leading() {
            return Err(LinearizedError::NotPlat);
        }
        let generators = d.generators()?;
        let mut degree_of_event = vec![None; d.events().len()];
        for g in &generators {
            degree_of_event[g.event] = Some(g.degree);
        }
        Ok(Setup { timeline: Timeline::new(m), generators, degree_of_event, states: ruling.states() })
    }

    /// Chord that a path from `source` starts with.
    pub(crate) fn origin_chord(&self, source: &Generator) -> (usize, Chord) {
        let pos = self.timeline.event_at[source.event];
        let p = match self.timeline.steps[pos] {
            Step::Event(e) => e.position(),
            Step::Slide(_) => unreachable!(),
        };
        (pos, Chord::new(p, p + 1))
    }

    /// Whether a path holding `c` just right of the crossing event `event`
    /// ends there.
    pub(crate) fn terminates(&self, c: Chord, event: usize, p: usize) -> bool {
        (c.bottom == p || c.top == p + 1) && self.states[event].partner(c.top) == c.bottom
    }
}

/// `d₁` on all generators: `entry(a, b)` is the parity of chord paths from
/// `a` to `b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Differential {
    generators: Vec<Generator>,
    /// Rows are sources, columns targets, both in generator order.
    full: Gf2Matrix,
}

impl Differential {
    pub(crate) fn new(generators: Vec<Generator>, full: Gf2Matrix) -> Self {
        Differential { generators, full }
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn full(&self) -> &Gf2Matrix {
        &self.full
    }

    fn index(&self, kind: GeneratorKind) -> Option<usize> {
        self.generators.iter().position(|g| g.kind == kind)
    }

    pub fn entry(&self, a: GeneratorKind, b: GeneratorKind) -> bool {
        match (self.index(a), self.index(b)) {
            (Some(i), Some(j)) => self.full.get(i, j),
            _ => false,
        }
    }

    /// Targets of `a`.
    pub fn image(&self, a: GeneratorKind) -> Vec<GeneratorKind> {
        let Some(i) = self.index(a) else { return Vec::new() };
        (0..self.generators.len())
            .filter(|&j| self.full.get(i, j))
            .map(|j| self.generators[j].kind)
            .collect()
    }

    pub fn degree_count(&self, k: i32) -> usize {
        self.generators.iter().filter(|g| g.degree == k).count()
    }

    /// The block from degree `k` to degree `k - 1`.
    pub fn matrix(&self, k: i32) -> Gf2Matrix {
        let rows: Vec<usize> = (0..self.generators.len()).filter(|&i| self.generators[i].degree == k).collect();
        let cols: Vec<usize> = (0..self.generators.len()).filter(|&i| self.generators[i].degree == k - 1).collect();
        let mut m = Gf2Matrix::zeros(rows.len(), cols.len());
        for (r, &i) in rows.iter().enumerate() {
            for (c, &j) in cols.iter().enumerate() {
                if self.full.get(i, j) {
                    m.set(r, c, true);
                }
            }
        }
        m
    }

    pub fn rank(&self, k: i32) -> usize {
        gf2_rank(&self.matrix(k))
    }

    pub fn square_is_zero(&self) -> bool {
        self.full.mul(&self.full).is_zero()
    }

    fn degree_range(&self) -> Option<(i32, i32)> {
        let lo = self.generators.iter().map(|g| g.degree).min()?;
        let hi = self.generators.iter().map(|g| g.degree).max()?;
        Some((lo, hi))
    }

    /// `Σ h_k t^k` with `h_k = n_k - r_k - r_{k+1}`.
    pub fn poincare_polynomial(&self) -> Result<LaurentPolynomial, LinearizedError> {
        let Some((lo, hi)) = self.degree_range() else { return Ok(LaurentPolynomial::zero()) };
        let ranks: Vec<i64> = (lo..=hi + 1).map(|k| self.rank(k) as i64).collect();
        let r = |k: i32| ranks[(k - lo) as usize];
        let mut p = LaurentPolynomial::zero();
        for k in lo..=hi {
            let h = self.degree_count(k) as i64 - r(k) - r(k + 1);
            if h < 0 {
                return Err(LinearizedError::NegativeHomology { k, h });
            }
            p.add_term(k, h);
        }
        Ok(p)
    }
}

pub fn gf2_rank(mat: &Gf2Matrix) -> usize {
    mat.rank()
}

/// Linearized differential by the chord-vector sweep, one source per task.
pub fn differential(m: &MorseComplexSequence<'_>) -> Result<Differential, LinearizedError> {
    let setup = Setup::new(m)?;
    let n = setup.generators.len();
    let rows: Vec<Vec<usize>> = setup.generators.par_iter().map(|a| transfer::targets(&setup, a)).collect();
    let mut full = Gf2Matrix::zeros(n, n);
    for (i, targets) in rows.iter().enumerate() {
        for &event in targets {
            let j = setup.generators.iter().position(|g| g.event == event).expect("targets are generators");
            full.flip(i, j);
        }
    }
    Ok(Differential::new(setup.generators, full))
}

/// Poincaré polynomial of the linearized homology of an SR-form MCS.
pub fn mcs_polynomial(m: &MorseComplexSequence<'_>) -> Result<LaurentPolynomial, LinearizedError> {
    differential(m)?.poincare_polynomial()
}

/// `h_i = h_{-i}` for `i != ±1` and `h_1 = h_{-1} + 1`.
pub fn satisfies_duality(p: &LaurentPolynomial) -> bool {
    let lo = p.min_degree().unwrap_or(0).min(-p.max_degree().unwrap_or(0));
    let hi = -lo;
    p.coeff(1) == p.coeff(-1) + 1 && (lo..=hi).filter(|&i| i.abs() != 1).all(|i| p.coeff(i) == p.coeff(-i))
}

/// The distinct MCS polynomials over all SR-form MCSs of `d`.
pub fn chekanov_polynomial_set(d: &FrontDiagram) -> Result<BTreeSet<LaurentPolynomial>, LinearizedError> {
    let forms: Vec<_> = enumerate_sr_forms(d).collect();
    let polys: Vec<LaurentPolynomial> = forms.par_iter().map(mcs_polynomial).collect::<Result<_, _>>()?;
    Ok(polys.into_iter().collect())
}
