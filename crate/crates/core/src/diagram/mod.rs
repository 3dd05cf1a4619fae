//! Front diagrams as event sequences.
//!
//! Positions are 1-based and counted from the top at the x-slot of the
//! event. A left cusp at `p` creates the strand pair `(p, p+1)`, a crossing
//! at `p` exchanges the strands at `p` and `p+1`, and a right cusp at `p`
//! joins the strands at `p` and `p+1`.

mod family;
mod maslov;
mod orientation;
mod parse;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use family::{connect_sum, family_diagram, FAMILY_BASE, FAMILY_BLOCK};
pub use maslov::{maslov, MaslovLabeling};
pub use orientation::{classical_invariants, orient, ClassicalInvariants, Direction, Orientation};
pub use parse::parse_plat;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("event {event}: position {position} out of range for {strands} strands")]
    PositionOutOfRange { event: usize, position: usize, strands: usize },
    #[error("diagram ends with {0} open strands")]
    Unbalanced(usize),
    #[error("diagram has {0} components, expected a knot")]
    Components(usize),
    #[error("diagram is not in plat position")]
    NotPlat,
    #[error("rotation number is {0}, an integer Maslov potential needs rotation 0")]
    NonzeroRotation(i32),
    #[error("family index must be at least 2, got {0}")]
    FamilyIndex(usize),
    #[error("no crossing numbered {0}")]
    UnknownCrossing(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Event {
    LeftCusp(usize),
    RightCusp(usize),
    Crossing(usize),
}

impl Event {
    pub fn position(&self) -> usize {
        match *self {
            Event::LeftCusp(p) | Event::RightCusp(p) | Event::Crossing(p) => p,
        }
    }

    pub fn is_crossing(&self) -> bool {
        matches!(self, Event::Crossing(_))
    }

    pub fn is_right_cusp(&self) -> bool {
        matches!(self, Event::RightCusp(_))
    }

    pub fn is_left_cusp(&self) -> bool {
        matches!(self, Event::LeftCusp(_))
    }
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Event::LeftCusp(p) => write!(f, "L{p}"),
            Event::RightCusp(p) => write!(f, "R{p}"),
            Event::Crossing(p) => write!(f, "X{p}"),
        }
    }
}

/// A strand runs from a left cusp to a right cusp. Strands created by the
/// `c`-th left cusp get ids `2c` (upper branch) and `2c + 1` (lower branch).
pub type StrandId = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct StrandTable {
    /// Strand ids from top to bottom at every slot; slot `s` is just left of
    /// event `s`, slot `len` is after the last event.
    pub(crate) slots: Vec<Vec<StrandId>>,
    /// For each right cusp (left to right): event index and the joined
    /// (upper, lower) strands.
    pub(crate) right_cusps: Vec<(usize, StrandId, StrandId)>,
    /// For each left cusp: event index and the created (upper, lower) strands.
    pub(crate) left_cusps: Vec<(usize, StrandId, StrandId)>,
}

impl StrandTable {
    fn build(events: &[Event]) -> Result<Self, DiagramError> {
        let mut current: Vec<StrandId> = Vec::new();
        let mut slots = Vec::with_capacity(events.len() + 1);
        let mut left_cusps = Vec::new();
        let mut right_cusps = Vec::new();

        for (idx, ev) in events.iter().enumerate() {
            slots.push(current.clone());
            let n = current.len();
            let p = ev.position();
            let max = match ev {
                Event::LeftCusp(_) => n + 1,
                _ => n.saturating_sub(1),
            };
            if p < 1 || p > max {
                return Err(DiagramError::PositionOutOfRange { event: idx, position: p, strands: n });
            }
            match ev {
                Event::LeftCusp(_) => {
                    let upper = 2 * left_cusps.len();
                    current.splice(p - 1..p - 1, [upper, upper + 1]);
                    left_cusps.push((idx, upper, upper + 1));
                }
                Event::Crossing(_) => current.swap(p - 1, p),
                Event::RightCusp(_) => {
                    right_cusps.push((idx, current[p - 1], current[p]));
                    current.drain(p - 1..=p);
                }
            }
        }
        if !current.is_empty() {
            return Err(DiagramError::Unbalanced(current.len()));
        }
        slots.push(current);
        Ok(StrandTable { slots, right_cusps, left_cusps })
    }

    fn strand_count(&self) -> usize {
        2 * self.left_cusps.len()
    }

    /// Number of closed curves traced by the strands.
    fn components(&self) -> usize {
        let n = self.strand_count();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for &(_, a, b) in self.left_cusps.iter().chain(&self.right_cusps) {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra] = rb;
        }
        (0..n).filter(|&x| find(&mut parent, x) == x).count()
    }
}

/// What a generator of the linearized complex sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorKind {
    /// 1-based crossing number.
    Crossing(usize),
    /// 1-based right cusp number.
    RightCusp(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Generator {
    pub event: usize,
    pub kind: GeneratorKind,
    pub degree: i32,
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            GeneratorKind::Crossing(n) => write!(f, "x{n}"),
            GeneratorKind::RightCusp(n) => write!(f, "r{n}"),
        }
    }
}

/// A single-component front diagram, validated on construction.
///
/// Orientation and (when the rotation number vanishes) the Maslov labeling
/// are computed eagerly; both are linear in the number of events.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrontDiagram {
    events: Vec<Event>,
    labels: BTreeMap<String, usize>,
    crossing_events: Vec<usize>,
    strands: StrandTable,
    orientation: Orientation,
    maslov: Option<MaslovLabeling>,
}

impl FrontDiagram {
    pub fn new(events: Vec<Event>) -> Result<Self, DiagramError> {
        let strands = StrandTable::build(&events)?;
        let components = strands.components();
        if components != 1 {
            return Err(DiagramError::Components(components));
        }
        let crossing_events: Vec<usize> = events
            .iter()
            .enumerate()
            .filter(|(_, e)| e.is_crossing())
            .map(|(i, _)| i)
            .collect();
        let orientation = orientation::compute(&events, &strands);
        let maslov = maslov::compute(&events, &strands, &crossing_events);
        Ok(FrontDiagram {
            events,
            labels: BTreeMap::new(),
            crossing_events,
            strands,
            orientation,
            maslov,
        })
    }

    /// Canonical plat: `k` left cusps at `1, 3, …, 2k-1`, the crossing word,
    /// then `k` right cusps capping from the top.
    pub fn plat(k: usize, word: &[usize]) -> Result<Self, DiagramError> {
        let mut events: Vec<Event> = (0..k).map(|i| Event::LeftCusp(2 * i + 1)).collect();
        events.extend(word.iter().map(|&p| Event::Crossing(p)));
        events.extend(std::iter::repeat_n(Event::RightCusp(1), k));
        FrontDiagram::new(events)
    }

    pub fn with_labels(mut self, labels: BTreeMap<String, usize>) -> Self {
        self.labels = labels;
        self
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    pub fn labels(&self) -> &BTreeMap<String, usize> {
        &self.labels
    }

    /// Crossing number carrying `label`, e.g. `"b_3"`.
    pub fn label(&self, label: &str) -> Option<usize> {
        self.labels.get(label).copied()
    }

    pub fn crossing_count(&self) -> usize {
        self.crossing_events.len()
    }

    pub fn left_cusp_count(&self) -> usize {
        self.strands.left_cusps.len()
    }

    pub fn right_cusp_count(&self) -> usize {
        self.strands.right_cusps.len()
    }

    /// Event index of the 1-based crossing `n`.
    pub fn crossing_event(&self, n: usize) -> Option<usize> {
        n.checked_sub(1).and_then(|i| self.crossing_events.get(i)).copied()
    }

    /// 1-based crossing number of the event at `event`, if it is a crossing.
    pub fn crossing_number(&self, event: usize) -> Option<usize> {
        self.crossing_events.binary_search(&event).ok().map(|i| i + 1)
    }

    /// `(crossing number, event index, position)` for every crossing.
    pub fn crossings(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.crossing_events
            .iter()
            .enumerate()
            .map(move |(i, &e)| (i + 1, e, self.events[e].position()))
    }

    /// Strand count at slot `s` (just left of event `s`).
    pub fn strands_at(&self, slot: usize) -> usize {
        self.strands.slots[slot].len()
    }

    pub(crate) fn strand_ids_at(&self, slot: usize) -> &[StrandId] {
        &self.strands.slots[slot]
    }

    /// `(k, word)` when the diagram is a canonical plat.
    pub fn as_plat(&self) -> Option<(usize, Vec<usize>)> {
        let k = self.left_cusp_count();
        let n = self.events.len();
        let lefts_ok = (0..k).all(|i| self.events[i] == Event::LeftCusp(2 * i + 1));
        let rights_ok = (n - k..n).all(|i| self.events[i] == Event::RightCusp(1));
        let middle = &self.events[k..n - k];
        if lefts_ok && rights_ok && middle.iter().all(Event::is_crossing) {
            Some((k, middle.iter().map(Event::position).collect()))
        } else {
            None
        }
    }

    pub fn is_plat(&self) -> bool {
        self.as_plat().is_some()
    }

    /// All left cusps precede every other event. Chord paths never have to
    /// cross a left cusp on such diagrams.
    pub fn left_cusps_leading(&self) -> bool {
        let k = self.left_cusp_count();
        self.events[..k].iter().all(Event::is_left_cusp)
    }

    pub fn orientation(&self) -> &Orientation {
        &self.orientation
    }

    pub fn maslov(&self) -> Result<&MaslovLabeling, DiagramError> {
        self.maslov
            .as_ref()
            .ok_or(DiagramError::NonzeroRotation(self.orientation.rotation()))
    }

    /// Crossings and right cusps, left to right, with their degrees.
    pub fn generators(&self) -> Result<Vec<Generator>, DiagramError> {
        let maslov = self.maslov()?;
        let mut crossing = 0;
        let mut cusp = 0;
        let mut out = Vec::new();
        for (idx, ev) in self.events.iter().enumerate() {
            match ev {
                Event::Crossing(_) => {
                    crossing += 1;
                    out.push(Generator {
                        event: idx,
                        kind: GeneratorKind::Crossing(crossing),
                        degree: maslov.crossing_degree(crossing),
                    });
                }
                Event::RightCusp(_) => {
                    cusp += 1;
                    out.push(Generator { event: idx, kind: GeneratorKind::RightCusp(cusp), degree: 1 });
                }
                Event::LeftCusp(_) => {}
            }
        }
        Ok(out)
    }
}

impl fmt::Display for FrontDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_plat() {
            Some((k, word)) => {
                write!(f, "plat {k} :")?;
                for p in word {
                    write!(f, " {p}")?;
                }
                Ok(())
            }
            None => {
                write!(f, "front :")?;
                for e in &self.events {
                    write!(f, " {e}")?;
                }
                Ok(())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strand_bookkeeping() {
        let d = FrontDiagram::plat(3, &[2, 2, 4, 3, 3, 3, 2, 4]).unwrap();
        let counts: Vec<usize> = (0..=d.events().len()).map(|s| d.strands_at(s)).collect();
        assert_eq!(counts[..4], [0, 2, 4, 6]);
        assert!(counts[3..12].iter().all(|&c| c == 6));
        assert_eq!(counts[12..], [4, 2, 0]);
        assert_eq!(d.crossing_count(), 8);
    }

    #[test]
    fn rejects_bad_positions() {
        let err = FrontDiagram::new(vec![Event::LeftCusp(1), Event::Crossing(2), Event::RightCusp(1)]);
        assert!(matches!(err, Err(DiagramError::PositionOutOfRange { event: 1, position: 2, strands: 2 })));
        let err = FrontDiagram::new(vec![Event::LeftCusp(1)]);
        assert_eq!(err, Err(DiagramError::Unbalanced(2)));
        assert_eq!(FrontDiagram::new(vec![]), Err(DiagramError::Components(0)));
    }

    #[test]
    fn two_component_plat() {
        assert_eq!(FrontDiagram::plat(2, &[2, 2]), Err(DiagramError::Components(2)));
        assert_eq!(FrontDiagram::plat(2, &[]), Err(DiagramError::Components(2)));
        assert!(FrontDiagram::plat(2, &[2]).is_ok());
    }

    #[test]
    fn crossing_numbers() {
        let d = FrontDiagram::plat(2, &[2, 1, 1, 1, 2]).unwrap();
        assert_eq!(d.crossing_event(1), Some(2));
        assert_eq!(d.crossing_number(6), Some(5));
        assert_eq!(d.crossing_number(7), None);
        assert_eq!(d.crossing_event(0), None);
        let gens = d.generators().unwrap();
        assert_eq!(gens.len(), 7);
        assert_eq!(gens[5].kind, GeneratorKind::RightCusp(1));
    }

    #[test]
    fn display_forms() {
        let d = FrontDiagram::plat(1, &[]).unwrap();
        assert_eq!(d.to_string(), "plat 1 :");
        let d = FrontDiagram::new(vec![
            Event::LeftCusp(1),
            Event::LeftCusp(2),
            Event::RightCusp(1),
            Event::RightCusp(1),
        ])
        .unwrap();
        assert!(!d.is_plat());
        assert_eq!(d.to_string(), "front : L1 L2 R1 R1");
    }
}
