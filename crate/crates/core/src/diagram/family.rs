use std::collections::BTreeMap;

use super::{DiagramError, FrontDiagram};

/// Crossing word of the first member of the family.
pub const FAMILY_BASE: [usize; 8] = [2, 2, 4, 3, 3, 3, 2, 4];
/// Block appended once per step up the family.
pub const FAMILY_BLOCK: [usize; 6] = [2, 4, 3, 3, 4, 2];

const BASE_LABELS: [(&str, usize); 7] =
    [("q_1", 1), ("q_2", 2), ("a_2", 3), ("q_3", 4), ("q_4", 5), ("b_2", 6), ("c_2", 7)];

/// The three-bridge plat `base · block^(m-2)` with its generator labels:
/// `q_1..q_4`, `a_2, b_2, c_2`, and `a_i, b_i, c_i` on the second, fourth
/// and sixth crossings of the `i`-th block.
pub fn family_diagram(m: usize) -> Result<FrontDiagram, DiagramError> {
    if m < 2 {
        return Err(DiagramError::FamilyIndex(m));
    }
    let mut word = FAMILY_BASE.to_vec();
    let mut labels: BTreeMap<String, usize> = BASE_LABELS.iter().map(|&(s, n)| (s.to_string(), n)).collect();
    for i in 3..=m {
        let start = word.len();
        word.extend_from_slice(&FAMILY_BLOCK);
        labels.insert(format!("a_{i}"), start + 2);
        labels.insert(format!("b_{i}"), start + 4);
        labels.insert(format!("c_{i}"), start + 6);
    }
    Ok(FrontDiagram::plat(3, &word)?.with_labels(labels))
}

/// Splices two plats: the last right cusp of `d1` and the first left cusp
/// of `d2` are removed and the open ends joined.
pub fn connect_sum(d1: &FrontDiagram, d2: &FrontDiagram) -> Result<FrontDiagram, DiagramError> {
    if !d1.is_plat() || !d2.is_plat() {
        return Err(DiagramError::NotPlat);
    }
    let left = &d1.events()[..d1.events().len() - 1];
    let right = &d2.events()[1..];
    FrontDiagram::new(left.iter().chain(right).copied().collect())
}
