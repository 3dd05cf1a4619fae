use serde::{Deserialize, Serialize};

use super::{DiagramError, Event, FrontDiagram, StrandId, StrandTable};

/// Integer Maslov potential on strands, normalized to minimum 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaslovLabeling {
    potentials: Vec<i32>,
    crossing_degrees: Vec<i32>,
}

impl MaslovLabeling {
    pub fn potential(&self, strand: StrandId) -> i32 {
        self.potentials[strand]
    }

    pub fn potentials(&self) -> &[i32] {
        &self.potentials
    }

    /// Degree of the 1-based crossing `n`.
    pub fn crossing_degree(&self, n: usize) -> i32 {
        self.crossing_degrees[n - 1]
    }

    pub fn crossing_degrees(&self) -> &[i32] {
        &self.crossing_degrees
    }
}

pub(super) fn compute(events: &[Event], strands: &StrandTable, crossings: &[usize]) -> Option<MaslovLabeling> {
    let n = strands.strand_count();
    let mut adj: Vec<Vec<(StrandId, i32)>> = vec![Vec::new(); n];
    for &(_, upper, lower) in strands.left_cusps.iter().chain(&strands.right_cusps) {
        adj[upper].push((lower, -1));
        adj[lower].push((upper, 1));
    }
    let mut mu: Vec<Option<i32>> = vec![None; n];
    let mut stack = Vec::new();
    for root in 0..n {
        if mu[root].is_some() {
            continue;
        }
        mu[root] = Some(0);
        stack.push(root);
        while let Some(s) = stack.pop() {
            let here = mu[s]?;
            for &(t, delta) in &adj[s] {
                match mu[t] {
                    None => {
                        mu[t] = Some(here + delta);
                        stack.push(t);
                    }
                    Some(v) if v != here + delta => return None,
                    Some(_) => {}
                }
            }
        }
    }
    let mut potentials: Vec<i32> = mu.into_iter().map(|m| m.unwrap_or(0)).collect();
    if let Some(&min) = potentials.iter().min() {
        potentials.iter_mut().for_each(|m| *m -= min);
    }
    let crossing_degrees = crossings
        .iter()
        .map(|&e| {
            let p = events[e].position();
            let slot = &strands.slots[e];
            potentials[slot[p - 1]] - potentials[slot[p]]
        })
        .collect();
    Some(MaslovLabeling { potentials, crossing_degrees })
}

pub fn maslov(d: &FrontDiagram) -> Result<&MaslovLabeling, DiagramError> {
    d.maslov()
}
