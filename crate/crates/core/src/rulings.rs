//! Normal rulings by a left-to-right sweep of position involutions.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{Event, FrontDiagram};
use crate::laurent::LaurentPolynomial;

/// Fixed-point-free involution on the strand positions of one slot.
/// Stored 0-based; the accessors take and return 1-based positions.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Pairing(Vec<usize>);

impl Pairing {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Companion of position `p`.
    pub fn partner(&self, p: usize) -> usize {
        self.0[p - 1] + 1
    }

    pub fn is_involution(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| j != i && j < self.0.len() && self.0[j] == i)
    }

    fn insert_cusp(&mut self, p: usize) {
        for j in self.0.iter_mut() {
            if *j >= p - 1 {
                *j += 2;
            }
        }
        self.0.splice(p - 1..p - 1, [p, p - 1]);
    }

    fn remove_cusp(&mut self, p: usize) {
        self.0.drain(p - 1..=p);
        for j in self.0.iter_mut() {
            if *j > p {
                *j -= 2;
            }
        }
    }

    /// Conjugate by the transposition of positions `p` and `p+1`.
    fn transpose(&mut self, p: usize) {
        let (a, b) = (p - 1, p);
        self.0.swap(a, b);
        for j in self.0.iter_mut() {
            if *j == a {
                *j = b;
            } else if *j == b {
                *j = a;
            }
        }
    }
}

impl fmt::Display for Pairing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> = (1..=self.len())
            .filter(|&p| p < self.partner(p))
            .map(|p| format!("{p}-{}", self.partner(p)))
            .collect();
        write!(f, "({})", pairs.join(" "))
    }
}

/// Companions of the two crossing strands just left of a crossing at `i`,
/// with `j = σ(i)` and `k = σ(i+1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Configuration {
    /// The crossing strands are each other's companions.
    Companions,
    /// `j < i` and `k > i+1`.
    OppositeDisjoint,
    /// `k < i` and `j > i+1`.
    OppositeLinked,
    /// Both companions on one side, `k < j`.
    SameSideNested,
    /// Both companions on one side, `j < k`.
    SameSideInterleaved,
}

impl Configuration {
    pub fn of(state: &Pairing, i: usize) -> Self {
        let (j, k) = (state.partner(i), state.partner(i + 1));
        if j == i + 1 {
            Configuration::Companions
        } else if j < i && k > i + 1 {
            Configuration::OppositeDisjoint
        } else if k < i && j > i + 1 {
            Configuration::OppositeLinked
        } else if k < j {
            Configuration::SameSideNested
        } else {
            Configuration::SameSideInterleaved
        }
    }

    /// Whether the two ruling paths may switch here. In the linked and
    /// interleaved cases the paths would interlace on one side.
    pub fn allows_switch(self) -> bool {
        matches!(self, Configuration::OppositeDisjoint | Configuration::SameSideNested)
    }

    /// Class of a non-switched crossing with this left configuration.
    fn passing_class(self) -> CrossingClass {
        match self {
            Configuration::OppositeDisjoint | Configuration::SameSideNested => CrossingClass::Departure,
            _ => CrossingClass::Return,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CrossingClass {
    #[serde(rename = "S")]
    Switch,
    #[serde(rename = "R")]
    Return,
    #[serde(rename = "D")]
    Departure,
}

impl fmt::Display for CrossingClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CrossingClass::Switch => "S",
            CrossingClass::Return => "R",
            CrossingClass::Departure => "D",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum RejectReason {
    #[error("companion strands cross")]
    CompanionsCross,
    #[error("switch in {0:?} configuration is not normal")]
    SwitchNotNormal(Configuration),
    #[error("right cusp joins strands that are not companions")]
    CuspNotCompanions,
    #[error("switch set names a non-crossing")]
    UnknownCrossing,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("rejected at event {event}: {reason}")]
pub struct Rejection {
    pub event: usize,
    pub reason: RejectReason,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalRuling {
    switches: BTreeSet<usize>,
    /// `states[s]` is the involution just left of event `s`.
    states: Vec<Pairing>,
    configurations: Vec<Configuration>,
    classes: Vec<CrossingClass>,
}

impl NormalRuling {
    pub fn switches(&self) -> &BTreeSet<usize> {
        &self.switches
    }

    pub fn switch_count(&self) -> usize {
        self.switches.len()
    }

    pub fn state_before(&self, event: usize) -> &Pairing {
        &self.states[event]
    }

    pub fn states(&self) -> &[Pairing] {
        &self.states
    }

    /// Class of the 1-based crossing `n`.
    pub fn class(&self, n: usize) -> CrossingClass {
        self.classes[n - 1]
    }

    pub fn classes(&self) -> &[CrossingClass] {
        &self.classes
    }

    /// Configuration just left of the 1-based crossing `n`.
    pub fn configuration(&self, n: usize) -> Configuration {
        self.configurations[n - 1]
    }

    pub fn crossings_of_class(&self, class: CrossingClass) -> BTreeSet<usize> {
        (1..=self.classes.len()).filter(|&n| self.classes[n - 1] == class).collect()
    }

    /// Every switch has degree 0. False when the diagram has no potential.
    pub fn is_graded(&self, d: &FrontDiagram) -> bool {
        d.maslov().is_ok_and(|m| self.switches.iter().all(|&n| m.crossing_degree(n) == 0))
    }

    /// Every switch is a positive crossing.
    pub fn is_two_graded(&self, d: &FrontDiagram) -> bool {
        self.switches.iter().all(|&n| d.orientation().sign(n) == 1)
    }

    /// Returns at degree-0 crossings, the candidates for SR-form marks.
    pub fn graded_returns(&self, d: &FrontDiagram) -> BTreeSet<usize> {
        let Ok(m) = d.maslov() else { return BTreeSet::new() };
        self.crossings_of_class(CrossingClass::Return)
            .into_iter()
            .filter(|&n| m.crossing_degree(n) == 0)
            .collect()
    }

    /// `#switches - #right cusps`.
    pub fn j(&self, d: &FrontDiagram) -> i32 {
        self.switches.len() as i32 - d.right_cusp_count() as i32
    }
}

/// Runs the involution sweep with the given switched crossings.
pub fn sweep(d: &FrontDiagram, switches: &BTreeSet<usize>) -> Result<NormalRuling, Rejection> {
    if switches.iter().any(|&n| d.crossing_event(n).is_none()) {
        return Err(Rejection { event: 0, reason: RejectReason::UnknownCrossing });
    }
    let mut state = Pairing::default();
    let mut states = Vec::with_capacity(d.events().len() + 1);
    let mut configurations = Vec::with_capacity(d.crossing_count());
    let mut classes = Vec::with_capacity(d.crossing_count());
    for (idx, ev) in d.events().iter().enumerate() {
        states.push(state.clone());
        match *ev {
            Event::LeftCusp(p) => state.insert_cusp(p),
            Event::RightCusp(p) => {
                if state.partner(p) != p + 1 {
                    return Err(Rejection { event: idx, reason: RejectReason::CuspNotCompanions });
                }
                state.remove_cusp(p);
            }
            Event::Crossing(p) => {
                let cfg = Configuration::of(&state, p);
                if cfg == Configuration::Companions {
                    return Err(Rejection { event: idx, reason: RejectReason::CompanionsCross });
                }
                configurations.push(cfg);
                if switches.contains(&(classes.len() + 1)) {
                    if !cfg.allows_switch() {
                        return Err(Rejection { event: idx, reason: RejectReason::SwitchNotNormal(cfg) });
                    }
                    classes.push(CrossingClass::Switch);
                } else {
                    state.transpose(p);
                    classes.push(cfg.passing_class());
                }
            }
        }
    }
    states.push(state);
    Ok(NormalRuling { switches: switches.clone(), states, configurations, classes })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RulingMode {
    Ungraded,
    Graded,
    #[serde(rename = "2graded")]
    TwoGraded,
}

impl fmt::Display for RulingMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RulingMode::Ungraded => "ungraded",
            RulingMode::Graded => "graded",
            RulingMode::TwoGraded => "2graded",
        })
    }
}

impl std::str::FromStr for RulingMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "ungraded" => Ok(RulingMode::Ungraded),
            "graded" => Ok(RulingMode::Graded),
            "2graded" | "2-graded" | "two-graded" => Ok(RulingMode::TwoGraded),
            _ => Err(format!("unknown ruling mode `{s}`")),
        }
    }
}

/// All normal rulings of `d` admissible in `mode`, sorted by switch set.
pub fn enumerate_rulings(d: &FrontDiagram, mode: RulingMode) -> Vec<NormalRuling> {
    let allowed: Vec<bool> = match mode {
        RulingMode::Ungraded => vec![true; d.crossing_count()],
        RulingMode::Graded => match d.maslov() {
            Ok(m) => m.crossing_degrees().iter().map(|&g| g == 0).collect(),
            Err(_) => return Vec::new(),
        },
        RulingMode::TwoGraded => d.orientation().signs().iter().map(|&s| s == 1).collect(),
    };

    let mut found: Vec<BTreeSet<usize>> = Vec::new();
    let mut chosen = Vec::new();
    search(d, &allowed, 0, Pairing::default(), 0, &mut chosen, &mut found);
    found.sort();
    found
        .into_iter()
        .map(|s| sweep(d, &s).expect("search only emits accepted switch sets"))
        .collect()
}

fn search(
    d: &FrontDiagram,
    allowed: &[bool],
    idx: usize,
    mut state: Pairing,
    crossing: usize,
    chosen: &mut Vec<usize>,
    found: &mut Vec<BTreeSet<usize>>,
) {
    let events = d.events();
    let mut idx = idx;
    let mut crossing = crossing;
    // Cusps are forced; only crossings branch.
    loop {
        let Some(ev) = events.get(idx) else {
            found.push(chosen.iter().copied().collect());
            return;
        };
        match *ev {
            Event::LeftCusp(p) => state.insert_cusp(p),
            Event::RightCusp(p) => {
                if state.partner(p) != p + 1 {
                    return;
                }
                state.remove_cusp(p);
            }
            Event::Crossing(p) => {
                let cfg = Configuration::of(&state, p);
                if cfg == Configuration::Companions {
                    return;
                }
                crossing += 1;
                if allowed[crossing - 1] && cfg.allows_switch() {
                    let mut passed = state.clone();
                    passed.transpose(p);
                    search(d, allowed, idx + 1, passed, crossing, chosen, found);
                    chosen.push(crossing);
                    search(d, allowed, idx + 1, state, crossing, chosen, found);
                    chosen.pop();
                    return;
                }
                state.transpose(p);
            }
        }
        idx += 1;
    }
}

/// Rulings of `mode` with the largest switch count.
pub fn maximal_rulings(d: &FrontDiagram, mode: RulingMode) -> Vec<NormalRuling> {
    let all = enumerate_rulings(d, mode);
    let best = all.iter().map(NormalRuling::switch_count).max();
    all.into_iter().filter(|r| Some(r.switch_count()) == best).collect()
}

/// `Σ z^{j(ρ)}` over the 2-graded rulings.
pub fn ruling_polynomial(d: &FrontDiagram) -> LaurentPolynomial {
    LaurentPolynomial::from_terms(enumerate_rulings(d, RulingMode::TwoGraded).iter().map(|r| (r.j(d), 1)))
}

/// Top coefficient of the 2-graded ruling polynomial; 0 if there is none.
pub fn f_max(d: &FrontDiagram) -> u64 {
    ruling_polynomial(d).leading_coeff() as u64
}
