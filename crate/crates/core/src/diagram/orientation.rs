use serde::{Deserialize, Serialize};

use super::{DiagramError, Event, FrontDiagram, StrandTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    Rightward,
    Leftward,
}

impl Direction {
    fn flip(self) -> Self {
        match self {
            Direction::Rightward => Direction::Leftward,
            Direction::Leftward => Direction::Rightward,
        }
    }
}

/// An orientation of the knot, fixed by sending strand 0 rightward.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orientation {
    directions: Vec<Direction>,
    /// Sign of each crossing in crossing order.
    signs: Vec<i8>,
    up_cusps: usize,
    down_cusps: usize,
}

impl Orientation {
    pub fn direction(&self, strand: usize) -> Direction {
        self.directions[strand]
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    /// Sign of the 1-based crossing `n`.
    pub fn sign(&self, n: usize) -> i8 {
        self.signs[n - 1]
    }

    pub fn writhe(&self) -> i32 {
        self.signs.iter().map(|&s| s as i32).sum()
    }

    pub fn rotation(&self) -> i32 {
        (self.down_cusps as i32 - self.up_cusps as i32) / 2
    }

    pub fn reversed(&self) -> Self {
        Orientation {
            directions: self.directions.iter().map(|d| d.flip()).collect(),
            signs: self.signs.clone(),
            up_cusps: self.down_cusps,
            down_cusps: self.up_cusps,
        }
    }
}

pub(super) fn compute(events: &[Event], strands: &StrandTable) -> Orientation {
    let n = strands.strand_count();
    // Strands meeting at a cusp run in opposite directions, so a parity walk
    // around the cusp graph fixes every direction.
    let mut partner_left = vec![0; n];
    let mut partner_right = vec![0; n];
    for &(_, a, b) in &strands.left_cusps {
        partner_left[a] = b;
        partner_left[b] = a;
    }
    for &(_, a, b) in &strands.right_cusps {
        partner_right[a] = b;
        partner_right[b] = a;
    }
    let mut directions = vec![Direction::Rightward; n];
    if n > 0 {
        let mut s = 0;
        let mut dir = Direction::Rightward;
        for _ in 0..n {
            directions[s] = dir;
            s = match dir {
                Direction::Rightward => partner_right[s],
                Direction::Leftward => partner_left[s],
            };
            dir = dir.flip();
        }
    }

    let mut signs = Vec::new();
    let (mut up, mut down) = (0, 0);
    for (idx, ev) in events.iter().enumerate() {
        let slot = &strands.slots[idx];
        match *ev {
            Event::Crossing(p) => {
                let same = directions[slot[p - 1]] == directions[slot[p]];
                signs.push(if same { 1 } else { -1 });
            }
            Event::LeftCusp(_) => {
                let upper = strands.slots[idx + 1][ev.position() - 1];
                if directions[upper] == Direction::Leftward {
                    down += 1;
                } else {
                    up += 1;
                }
            }
            Event::RightCusp(p) => {
                if directions[slot[p - 1]] == Direction::Rightward {
                    down += 1;
                } else {
                    up += 1;
                }
            }
        }
    }
    Orientation { directions, signs, up_cusps: up, down_cusps: down }
}

pub fn orient(d: &FrontDiagram) -> &Orientation {
    d.orientation()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassicalInvariants {
    pub tb: i32,
    pub rotation: i32,
    pub writhe: i32,
    pub crossings: usize,
    pub right_cusps: usize,
}

/// Thurston–Bennequin and rotation numbers. The rotation number is only
/// defined up to sign; the reported value uses strand 0 oriented rightward.
pub fn classical_invariants(d: &FrontDiagram) -> Result<ClassicalInvariants, DiagramError> {
    let o = d.orientation();
    Ok(ClassicalInvariants {
        tb: o.writhe() - d.right_cusp_count() as i32,
        rotation: o.rotation(),
        writhe: o.writhe(),
        crossings: d.crossing_count(),
        right_cusps: d.right_cusp_count(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknot() {
        let d = FrontDiagram::plat(1, &[]).unwrap();
        let c = classical_invariants(&d).unwrap();
        assert_eq!((c.tb, c.rotation), (-1, 0));
    }

    #[test]
    fn one_crossing_unknot() {
        let d = FrontDiagram::plat(2, &[2]).unwrap();
        let c = classical_invariants(&d).unwrap();
        assert_eq!((c.tb, c.rotation), (-1, 0));
    }

    #[test]
    fn trefoil() {
        let d = FrontDiagram::plat(2, &[2, 2, 2]).unwrap();
        let c = classical_invariants(&d).unwrap();
        assert_eq!((c.tb, c.rotation, c.writhe), (1, 0, 3));
    }

    #[test]
    fn stabilized_unknot_rotates() {
        let d = FrontDiagram::new(vec![Event::LeftCusp(1), Event::LeftCusp(2), Event::RightCusp(1), Event::RightCusp(1)])
            .unwrap();
        let c = classical_invariants(&d).unwrap();
        assert_eq!(c.tb, -2);
        assert_eq!(c.rotation.abs(), 1);
        assert_eq!(d.orientation().reversed().rotation(), -c.rotation);
    }

    #[test]
    fn family_base_signs() {
        let d = FrontDiagram::plat(3, &[2, 2, 4, 3, 3, 3, 2, 4]).unwrap();
        assert_eq!(d.orientation().signs(), &[1, 1, -1, 1, 1, 1, 1, -1]);
        let c = classical_invariants(&d).unwrap();
        assert_eq!((c.tb, c.rotation), (1, 0));
    }
}
