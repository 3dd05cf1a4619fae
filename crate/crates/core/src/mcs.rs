//! Handleslide collections on a front: SR-form and A-form Morse complex
//! sequences.

use std::collections::BTreeSet;

use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::diagram::{DiagramError, Event, FrontDiagram};
use crate::rulings::{enumerate_rulings, sweep, Configuration, CrossingClass, NormalRuling, RulingMode};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum McsError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("ruling is not graded")]
    NotGraded,
    #[error("crossing {0} is not a graded return of the ruling")]
    BadMark(usize),
    #[error("crossing {crossing} has degree {degree}, expected 0")]
    NotDegreeZero { crossing: usize, degree: i32 },
    #[error("handleslide left of event {gap} joins positions {upper},{lower} of unequal potential")]
    PotentialMismatch { gap: usize, upper: usize, lower: usize },
    #[error("handleslide left of event {gap} has positions {upper},{lower} outside the slot")]
    BadPositions { gap: usize, upper: usize, lower: usize },
    #[error("ruling rejected: {0}")]
    Ruling(#[from] crate::rulings::Rejection),
}

/// A handleslide between positions `upper < lower`, placed in the gap just
/// left of event `gap`. Handleslides sharing a gap are ordered left to right
/// by their index in the collection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "HandleslideRepr", from = "HandleslideRepr")]
pub struct Handleslide {
    pub gap: usize,
    pub upper: usize,
    pub lower: usize,
}

#[derive(Serialize, Deserialize)]
struct HandleslideRepr {
    left_of: usize,
    strands: [usize; 2],
}

impl From<Handleslide> for HandleslideRepr {
    fn from(h: Handleslide) -> Self {
        HandleslideRepr { left_of: h.gap, strands: [h.upper, h.lower] }
    }
}

impl From<HandleslideRepr> for Handleslide {
    fn from(r: HandleslideRepr) -> Self {
        Handleslide { gap: r.left_of, upper: r.strands[0], lower: r.strands[1] }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorseComplexSequence<'d> {
    diagram: &'d FrontDiagram,
    ruling: Option<NormalRuling>,
    marks: BTreeSet<usize>,
    handleslides: Vec<Handleslide>,
}

impl<'d> MorseComplexSequence<'d> {
    /// An arbitrary handleslide collection, checked for positions and
    /// equal endpoint potentials.
    pub fn new(
        diagram: &'d FrontDiagram,
        ruling: Option<NormalRuling>,
        marks: BTreeSet<usize>,
        handleslides: Vec<Handleslide>,
    ) -> Result<Self, McsError> {
        let m = diagram.maslov()?;
        for h in &handleslides {
            let strands = diagram.strand_ids_at(h.gap.min(diagram.events().len()));
            if h.gap > diagram.events().len() || h.upper < 1 || h.upper >= h.lower || h.lower > strands.len() {
                return Err(McsError::BadPositions { gap: h.gap, upper: h.upper, lower: h.lower });
            }
            if m.potential(strands[h.upper - 1]) != m.potential(strands[h.lower - 1]) {
                return Err(McsError::PotentialMismatch { gap: h.gap, upper: h.upper, lower: h.lower });
            }
        }
        Ok(MorseComplexSequence { diagram, ruling, marks, handleslides })
    }

    pub fn diagram(&self) -> &'d FrontDiagram {
        self.diagram
    }

    pub fn ruling(&self) -> Option<&NormalRuling> {
        self.ruling.as_ref()
    }

    pub fn marks(&self) -> &BTreeSet<usize> {
        &self.marks
    }

    pub fn handleslides(&self) -> &[Handleslide] {
        &self.handleslides
    }

    pub fn is_sr_form(&self) -> bool {
        self.ruling.as_ref().is_some_and(|r| {
            sr_placement(self.diagram, r, &self.marks).is_ok_and(|hs| hs == self.handleslides)
        })
    }

    /// Crossings whose A-form handleslide is present, if the collection is
    /// A-form: at most one handleslide per gap, each joining the two strands
    /// that cross at the degree-0 crossing just to its right.
    pub fn a_form_crossings(&self) -> Option<BTreeSet<usize>> {
        let m = self.diagram.maslov().ok()?;
        let mut out = BTreeSet::new();
        for h in &self.handleslides {
            let Some(Event::Crossing(p)) = self.diagram.events().get(h.gap).copied() else {
                return None;
            };
            let n = self.diagram.crossing_number(h.gap)?;
            if (h.upper, h.lower) != (p, p + 1) || m.crossing_degree(n) != 0 || !out.insert(n) {
                return None;
            }
        }
        Some(out)
    }

    pub fn is_a_form(&self) -> bool {
        self.a_form_crossings().is_some()
    }
}

impl Serialize for MorseComplexSequence<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct RulingRef<'a> {
            switches: &'a BTreeSet<usize>,
        }
        let mut st = s.serialize_struct("MorseComplexSequence", 3)?;
        if let Some(r) = &self.ruling {
            st.serialize_field("ruling", &RulingRef { switches: r.switches() })?;
        } else {
            st.skip_field("ruling")?;
        }
        st.serialize_field("marks", &self.marks)?;
        st.serialize_field("handleslides", &self.handleslides)?;
        st.end()
    }
}

/// Handleslides of the SR-form built on `rho` with marked returns `marks`,
/// in left-to-right order.
///
/// At a switch on positions `p, p+1` the crossing strands get a handleslide
/// on each side of the crossing; in the nested configuration the two
/// companions also get one, right of the crossing. A marked return gets one
/// on the crossing strands left of the crossing, plus one on the companions
/// right of it when they interleave.
fn sr_placement(d: &FrontDiagram, rho: &NormalRuling, marks: &BTreeSet<usize>) -> Result<Vec<Handleslide>, McsError> {
    let mut out = Vec::new();
    for (n, event, p) in d.crossings() {
        let state = rho.state_before(event);
        let (j, k) = (state.partner(p), state.partner(p + 1));
        let companions = Handleslide { gap: event + 1, upper: j.min(k), lower: j.max(k) };
        let cfg = rho.configuration(n);
        if rho.class(n) == CrossingClass::Switch {
            out.push(Handleslide { gap: event, upper: p, lower: p + 1 });
            out.push(Handleslide { gap: event + 1, upper: p, lower: p + 1 });
            if cfg == Configuration::SameSideNested {
                out.push(companions);
            }
        } else if marks.contains(&n) {
            out.push(Handleslide { gap: event, upper: p, lower: p + 1 });
            if cfg == Configuration::SameSideInterleaved {
                out.push(companions);
            }
        }
    }
    // Right-of-crossing handleslides of event e precede left-of handleslides
    // of event e+1 in the same gap; the stable sort keeps that.
    out.sort_by_key(|h| h.gap);
    Ok(out)
}

/// The SR-form MCS of a graded ruling with the given marked graded returns.
pub fn sr_form<'d>(
    d: &'d FrontDiagram,
    rho: &NormalRuling,
    marks: &BTreeSet<usize>,
) -> Result<MorseComplexSequence<'d>, McsError> {
    d.maslov()?;
    if !rho.is_graded(d) {
        return Err(McsError::NotGraded);
    }
    let returns = rho.graded_returns(d);
    if let Some(&bad) = marks.iter().find(|n| !returns.contains(n)) {
        return Err(McsError::BadMark(bad));
    }
    let hs = sr_placement(d, rho, marks)?;
    MorseComplexSequence::new(d, Some(rho.clone()), marks.clone(), hs)
}

/// The A-form MCS with a handleslide just left of each listed crossing.
pub fn a_form<'d>(d: &'d FrontDiagram, crossings: &BTreeSet<usize>) -> Result<MorseComplexSequence<'d>, McsError> {
    let m = d.maslov()?;
    let mut hs = Vec::new();
    for &n in crossings {
        let event = d.crossing_event(n).ok_or(DiagramError::UnknownCrossing(n))?;
        let degree = m.crossing_degree(n);
        if degree != 0 {
            return Err(McsError::NotDegreeZero { crossing: n, degree });
        }
        let p = d.events()[event].position();
        hs.push(Handleslide { gap: event, upper: p, lower: p + 1 });
    }
    MorseComplexSequence::new(d, None, BTreeSet::new(), hs)
}

/// Ruling switches used for the family's distinguished SR-forms: the first
/// and fourth crossings.
pub const FAMILY_RULING: [usize; 2] = [1, 4];

/// The `i`-th distinguished SR-form on a family diagram (`1 <= i <= m`):
/// marks `{b_2}` for `i = 1`, none for `i = 2`, `{b_3, …, b_i}` otherwise.
pub fn family_sr_form(d: &FrontDiagram, i: usize) -> Result<MorseComplexSequence<'_>, McsError> {
    let rho = sweep(d, &FAMILY_RULING.into_iter().collect())?;
    let label = |s: String| d.label(&s).ok_or(DiagramError::FamilyIndex(i));
    let marks: BTreeSet<usize> = match i {
        0 => return Err(DiagramError::FamilyIndex(0).into()),
        1 => [label("b_2".into())?].into_iter().collect(),
        2 => BTreeSet::new(),
        _ => (3..=i).map(|k| label(format!("b_{k}"))).collect::<Result<_, _>>()?,
    };
    sr_form(d, &rho, &marks)
}

/// All SR-form MCSs: every graded ruling with every subset of its graded
/// returns, produced lazily.
pub fn enumerate_sr_forms(d: &FrontDiagram) -> SrForms<'_> {
    let rulings = if d.maslov().is_ok() { enumerate_rulings(d, RulingMode::Graded) } else { Vec::new() };
    let returns = rulings.iter().map(|r| r.graded_returns(d).into_iter().collect()).collect();
    SrForms { d, rulings, returns, ruling: 0, subset: 0 }
}

pub struct SrForms<'d> {
    d: &'d FrontDiagram,
    rulings: Vec<NormalRuling>,
    returns: Vec<Vec<usize>>,
    ruling: usize,
    subset: u128,
}

impl SrForms<'_> {
    /// `Σ_ρ 2^{#graded returns(ρ)}`.
    pub fn total(&self) -> u128 {
        self.returns.iter().map(|r| 1u128 << r.len()).sum()
    }

    pub fn rulings(&self) -> &[NormalRuling] {
        &self.rulings
    }
}

impl<'d> Iterator for SrForms<'d> {
    type Item = MorseComplexSequence<'d>;

    fn next(&mut self) -> Option<Self::Item> {
        while self.ruling < self.rulings.len() {
            let rets = &self.returns[self.ruling];
            assert!(rets.len() < 128, "too many graded returns to enumerate");
            if self.subset < 1u128 << rets.len() {
                let marks = rets
                    .iter()
                    .enumerate()
                    .filter(|(b, _)| self.subset >> b & 1 == 1)
                    .map(|(_, &n)| n)
                    .collect();
                self.subset += 1;
                let mcs = sr_form(self.d, &self.rulings[self.ruling], &marks)
                    .expect("graded returns of a graded ruling are valid marks");
                return Some(mcs);
            }
            self.ruling += 1;
            self.subset = 0;
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::family_diagram;

    fn set(xs: &[usize]) -> BTreeSet<usize> {
        xs.iter().copied().collect()
    }

    #[test]
    fn family_forms_are_a_forms() {
        for m in 2..=5 {
            let d = family_diagram(m).unwrap();
            for i in 1..=m {
                let c = family_sr_form(&d, i).unwrap();
                assert!(c.is_sr_form());
                let mut expect = set(&[1, 2, 4, 5]);
                match i {
                    1 => {
                        expect.insert(6);
                    }
                    2 => {}
                    _ => expect.extend((3..=i).map(|k| d.label(&format!("b_{k}")).unwrap())),
                }
                assert_eq!(c.a_form_crossings(), Some(expect), "m={m} i={i}");
            }
        }
    }

    #[test]
    fn a_form_construction() {
        let d = family_diagram(2).unwrap();
        let a = a_form(&d, &set(&[1, 2, 4, 5])).unwrap();
        assert_eq!(a.handleslides().len(), 4);
        assert_eq!(a.a_form_crossings(), Some(set(&[1, 2, 4, 5])));
        assert!(a_form(&d, &set(&[])).unwrap().handleslides().is_empty());
        assert_eq!(a_form(&d, &set(&[3])).unwrap_err(), McsError::NotDegreeZero { crossing: 3, degree: -1 });
    }

    #[test]
    fn bad_marks() {
        let d = family_diagram(2).unwrap();
        let rho = sweep(&d, &set(&[1, 4])).unwrap();
        assert_eq!(sr_form(&d, &rho, &set(&[2])).unwrap_err(), McsError::BadMark(2));
        assert_eq!(sr_form(&d, &rho, &set(&[8])).unwrap_err(), McsError::BadMark(8));
        assert_eq!(sr_form(&d, &rho, &set(&[1])).unwrap_err(), McsError::BadMark(1));
    }

    #[test]
    fn potential_check() {
        let d = family_diagram(2).unwrap();
        let bad = vec![Handleslide { gap: 5, upper: 4, lower: 5 }];
        assert!(matches!(
            MorseComplexSequence::new(&d, None, BTreeSet::new(), bad),
            Err(McsError::PotentialMismatch { .. })
        ));
    }

    #[test]
    fn sr_counts() {
        let u = FrontDiagram::plat(1, &[]).unwrap();
        assert_eq!(enumerate_sr_forms(&u).count(), 1);
        let expected = [(2, 16), (3, 176)];
        for (m, n) in expected {
            let d = family_diagram(m).unwrap();
            let it = enumerate_sr_forms(&d);
            assert_eq!(it.total(), n);
            let all: Vec<_> = it.collect();
            assert_eq!(all.len() as u128, n);
            let distinct: BTreeSet<_> = all.iter().map(|c| (c.ruling().unwrap().switches().clone(), c.marks().clone())).collect();
            assert_eq!(distinct.len(), all.len());
            assert!(all.iter().all(MorseComplexSequence::is_sr_form));
        }
    }

    #[test]
    fn json_shape() {
        let d = family_diagram(2).unwrap();
        let c = family_sr_form(&d, 2).unwrap();
        let v = serde_json::to_value(&c).unwrap();
        assert_eq!(v["ruling"]["switches"], serde_json::json!([1, 4]));
        assert_eq!(v["handleslides"][0], serde_json::json!({"left_of": 3, "strands": [2, 3]}));
    }
}
