//! Verification suites: each returns an [`Outcome`] listing what was
//! checked and any counterexamples.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::diagram::{classical_invariants, connect_sum, family_diagram, FrontDiagram};
use crate::laurent::LaurentPolynomial;
use crate::linearized::{
    chekanov_polynomial_set, differential, jumping_source_degrees, mcs_polynomial, satisfies_duality,
};
use crate::mcs::{enumerate_sr_forms, family_sr_form, FAMILY_RULING};
use crate::rulings::{f_max, maximal_rulings, RulingMode};

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Outcome {
    pub suite: String,
    pub passed: bool,
    pub summary: Vec<String>,
    pub counterexamples: Vec<String>,
}

impl Outcome {
    fn new(suite: &str) -> Self {
        Outcome { suite: suite.into(), passed: true, ..Default::default() }
    }

    fn note(&mut self, line: impl Into<String>) {
        self.summary.push(line.into());
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.passed = false;
            self.counterexamples.push(what.into());
        }
    }
}

/// `(m-i) t^-1 + (4m-2i-2) + (m-i+1) t`, the homology polynomial of the
/// `i`-th distinguished SR-form on the `m`-th family diagram.
pub fn family_polynomial(m: usize, i: usize) -> LaurentPolynomial {
    let (m, i) = (m as i64, i as i64);
    LaurentPolynomial::from_terms([(-1, m - i), (0, 4 * m - 2 * i - 2), (1, m - i + 1)])
}

/// Every crossing word of length at most `max_len` on a `k`-bridge plat,
/// shortest first, lexicographic within a length.
pub fn plat_words(k: usize, max_len: usize) -> impl Iterator<Item = Vec<usize>> {
    let top = 2 * k - 1;
    (0..=max_len).flat_map(move |len| {
        let mut word = vec![1; len];
        let mut done = false;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let out = word.clone();
            done = true;
            for pos in (0..len).rev() {
                if word[pos] < top {
                    word[pos] += 1;
                    done = false;
                    break;
                }
                word[pos] = 1;
            }
            Some(out)
        })
    })
}

#[derive(Debug, Default, Clone, Copy)]
struct ScanCounts {
    knots: usize,
    graded: usize,
    sr_forms: usize,
}

/// Every two-bridge plat knot with at most `max_crossings` crossings has at
/// most one Chekanov polynomial, and no chord path from a degree 0 or -1
/// source jumps.
pub fn theorem_one(max_crossings: usize) -> Outcome {
    let mut out = Outcome::new("thm1");
    let words: Vec<Vec<usize>> = plat_words(2, max_crossings).collect();
    let results: Vec<(ScanCounts, Vec<String>)> = words
        .par_iter()
        .map(|w| {
            let mut counts = ScanCounts::default();
            let mut bad = Vec::new();
            let Ok(d) = FrontDiagram::plat(2, w) else { return (counts, bad) };
            counts.knots = 1;
            let forms: Vec<_> = enumerate_sr_forms(&d).collect();
            if forms.is_empty() {
                return (counts, bad);
            }
            counts.graded = 1;
            counts.sr_forms = forms.len();
            let mut polys = BTreeSet::new();
            for c in &forms {
                match mcs_polynomial(c) {
                    Ok(p) => {
                        polys.insert(p);
                    }
                    Err(e) => bad.push(format!("{d}: {e}")),
                }
                match jumping_source_degrees(c) {
                    Ok(degs) if degs.iter().any(|&g| g == 0 || g == -1) => {
                        bad.push(format!("{d}: jump from a degree {degs:?} source, marks {:?}", c.marks()))
                    }
                    Ok(_) => {}
                    Err(e) => bad.push(format!("{d}: {e}")),
                }
            }
            if polys.len() > 1 {
                let list: Vec<String> = polys.iter().map(ToString::to_string).collect();
                bad.push(format!("{d}: {} polynomials {{{}}}", polys.len(), list.join(", ")));
            }
            (counts, bad)
        })
        .collect();
    let mut total = ScanCounts::default();
    for (c, bad) in results {
        total.knots += c.knots;
        total.graded += c.graded;
        total.sr_forms += c.sr_forms;
        for b in bad {
            out.check(false, b);
        }
    }
    out.note(format!("words scanned: {}", words.len()));
    out.note(format!("knots: {}", total.knots));
    out.note(format!("knots with a graded ruling: {}", total.graded));
    out.note(format!("SR-form MCSs: {}", total.sr_forms));
    out
}

/// The distinguished SR-forms on the `m`-th family diagram give `m`
/// distinct polynomials matching the closed form, and they exhaust the
/// Chekanov polynomial set.
pub fn theorem_two(m: usize) -> Outcome {
    let mut out = Outcome::new("thm2");
    let d = match family_diagram(m) {
        Ok(d) => d,
        Err(e) => {
            out.check(false, e.to_string());
            return out;
        }
    };
    let mut seen = BTreeSet::new();
    for i in 1..=m {
        let c = match family_sr_form(&d, i) {
            Ok(c) => c,
            Err(e) => {
                out.check(false, format!("C_{i}: {e}"));
                continue;
            }
        };
        let (p, r0) = match differential(&c).and_then(|dif| Ok((dif.poincare_polynomial()?, dif.rank(0)))) {
            Ok(x) => x,
            Err(e) => {
                out.check(false, format!("C_{i}: {e}"));
                continue;
            }
        };
        let want = family_polynomial(m, i);
        out.note(format!("C_{i}: P = {p}, r_0 = {r0}"));
        out.check(p == want, format!("C_{i}: got {p}, expected {want}"));
        out.check(r0 == i - 1, format!("C_{i}: r_0 = {r0}, expected {}", i - 1));
        out.check(seen.insert(p.clone()), format!("C_{i}: polynomial {p} repeats"));
    }
    out.note(format!("ruling switches {FAMILY_RULING:?} for every C_i"));
    match chekanov_polynomial_set(&d) {
        Ok(set) => {
            let list: Vec<String> = set.iter().map(ToString::to_string).collect();
            out.note(format!("Chekanov polynomials: {{{}}}", list.join(", ")));
            out.check(set == seen, "Chekanov polynomial set differs from the C_i polynomials");
        }
        Err(e) => out.check(false, e.to_string()),
    }
    out
}

/// Every SR-form polynomial of `d` satisfies duality and `P(-1) = tb`.
pub fn duality(d: &FrontDiagram) -> Outcome {
    let mut out = Outcome::new("duality");
    let tb = match classical_invariants(d) {
        Ok(c) => c.tb as i64,
        Err(e) => {
            out.check(false, e.to_string());
            return out;
        }
    };
    let forms: Vec<_> = enumerate_sr_forms(d).collect();
    for c in &forms {
        let tag = format!("ruling {:?} marks {:?}", c.ruling().map(|r| r.switches()), c.marks());
        match differential(c).and_then(|dif| Ok((dif.square_is_zero(), dif.poincare_polynomial()?))) {
            Ok((sq, p)) => {
                out.check(sq, format!("{tag}: d1 d1 != 0"));
                out.check(satisfies_duality(&p), format!("{tag}: {p} fails duality"));
                out.check(p.eval_at_minus_one() == tb, format!("{tag}: P(-1) = {} but tb = {tb}", p.eval_at_minus_one()));
            }
            Err(e) => out.check(false, format!("{tag}: {e}")),
        }
    }
    out.note(format!("diagram: {d}"));
    out.note(format!("SR-form MCSs checked: {}", forms.len()));
    out
}

/// `f_max` of the family starts at 2, doubles with each step, and is
/// multiplicative under connect sum.
pub fn fmax(m: usize) -> Outcome {
    let mut out = Outcome::new("fmax");
    let d2 = family_diagram(2).expect("m = 2 is valid");
    let max: Vec<Vec<usize>> = maximal_rulings(&d2, RulingMode::TwoGraded)
        .iter()
        .map(|r| r.switches().iter().copied().collect())
        .collect();
    out.note(format!("maximal 2-graded switch sets of m=2: {max:?}"));
    out.check(max == vec![vec![1, 2, 5, 7], vec![1, 4, 5, 6]], format!("unexpected maximal switch sets {max:?}"));
    let mut prev = f_max(&d2);
    out.note(format!("f_max(m=2) = {prev}"));
    out.check(prev == 2, format!("f_max(m=2) = {prev}, expected 2"));
    for k in 3..=m {
        let f = f_max(&family_diagram(k).expect("k >= 2"));
        out.note(format!("f_max(m={k}) = {f}"));
        out.check(f == 2 * prev, format!("f_max(m={k}) = {f}, expected {}", 2 * prev));
        prev = f;
    }
    let sum = connect_sum(&d2, &d2).expect("plats");
    let fs = f_max(&sum);
    out.note(format!("f_max(m=2 # m=2) = {fs}"));
    out.check(fs == 4, format!("f_max of the connect sum is {fs}, expected 4"));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_counts() {
        assert_eq!(plat_words(2, 2).count(), 1 + 3 + 9);
        let w: Vec<_> = plat_words(1, 3).collect();
        assert_eq!(w, [vec![], vec![1], vec![1, 1], vec![1, 1, 1]]);
        assert_eq!(plat_words(2, 2).nth(4), Some(vec![1, 1]));
    }

    #[test]
    fn small_suites_pass() {
        assert!(theorem_two(3).passed);
        assert!(fmax(3).passed);
        assert!(duality(&family_diagram(2).unwrap()).passed);
        let t = theorem_one(4);
        assert!(t.passed, "{:?}", t.counterexamples);
    }

    #[test]
    fn closed_form() {
        assert_eq!(family_polynomial(2, 2).to_string(), "2 + t");
        assert_eq!(family_polynomial(2, 1).to_string(), "t^-1 + 4 + 2t");
    }
}
