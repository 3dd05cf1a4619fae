use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::diagram::{classical_invariants, ClassicalInvariants, DiagramError, FrontDiagram, GeneratorKind};
use crate::laurent::LaurentPolynomial;
use crate::linearized::{chekanov_polynomial_set, differential, LinearizedError};
use crate::mcs::{enumerate_sr_forms, Handleslide};
use crate::rulings::{enumerate_rulings, ruling_polynomial, CrossingClass, NormalRuling, RulingMode};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeCount {
    pub crossings: usize,
    pub right_cusps: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RulingReport {
    pub switches: Vec<usize>,
    pub classification: BTreeMap<usize, CrossingClass>,
    pub graded: bool,
    pub j: i32,
}

impl RulingReport {
    pub fn new(d: &FrontDiagram, r: &NormalRuling) -> Self {
        RulingReport {
            switches: r.switches().iter().copied().collect(),
            classification: (1..=d.crossing_count()).map(|n| (n, r.class(n))).collect(),
            graded: r.is_graded(d),
            j: r.j(d),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RulingSwitches {
    pub switches: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct McsReport {
    pub ruling: RulingSwitches,
    pub marks: Vec<usize>,
    pub handleslides: Vec<Handleslide>,
    pub polynomial: LaurentPolynomial,
    /// Nonzero `d₁` entries as `source -> targets`, generators named `x<n>`
    /// for crossings and `r<n>` for right cusps.
    pub differential: BTreeMap<String, Vec<String>>,
}

/// Cacheable report fields.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Field {
    Classical,
    Degrees,
    RulingCounts,
    RulingPolynomial,
    FMax,
    ChekanovPolynomials,
}

/// Everything the CLI reports about one diagram. Fields that were not
/// requested are absent from the JSON.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub diagram: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub classical: Option<ClassicalInvariants>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degrees: Option<BTreeMap<i32, DegreeCount>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ruling_counts: Option<BTreeMap<RulingMode, usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rulings: Option<Vec<RulingReport>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ruling_polynomial: Option<LaurentPolynomial>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f_max: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chekanov_polynomials: Option<Vec<LaurentPolynomial>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mcs: Option<Vec<McsReport>>,
}

impl InvariantReport {
    pub fn new(d: &FrontDiagram) -> Self {
        InvariantReport { diagram: d.to_string(), ..Default::default() }
    }

    /// Copies fields present in `other` that are missing here; returns
    /// whether anything was added.
    pub fn fill_from(&mut self, other: &InvariantReport) -> bool {
        let mut added = false;
        macro_rules! fill {
            ($($f:ident),*) => {$(
                if self.$f.is_none() && other.$f.is_some() {
                    self.$f = other.$f.clone();
                    added = true;
                }
            )*};
        }
        fill!(classical, degrees, ruling_counts, rulings, ruling_polynomial, f_max, chekanov_polynomials, mcs);
        added
    }

    /// Only the listed fields, plus the diagram.
    pub fn project(&self, fields: &[Field]) -> InvariantReport {
        let mut out = InvariantReport { diagram: self.diagram.clone(), ..Default::default() };
        for f in fields {
            match f {
                Field::Classical => out.classical = self.classical,
                Field::Degrees => out.degrees = self.degrees.clone(),
                Field::RulingCounts => out.ruling_counts = self.ruling_counts.clone(),
                Field::RulingPolynomial => out.ruling_polynomial = self.ruling_polynomial.clone(),
                Field::FMax => out.f_max = self.f_max,
                Field::ChekanovPolynomials => out.chekanov_polynomials = self.chekanov_polynomials.clone(),
            }
        }
        out
    }

    /// The subset worth caching: small, mode-independent summaries.
    pub fn cacheable(&self) -> InvariantReport {
        InvariantReport {
            diagram: self.diagram.clone(),
            classical: self.classical,
            degrees: self.degrees.clone(),
            ruling_counts: self.ruling_counts.clone(),
            ruling_polynomial: self.ruling_polynomial.clone(),
            f_max: self.f_max,
            chekanov_polynomials: self.chekanov_polynomials.clone(),
            ..Default::default()
        }
    }

    pub fn add_info(&mut self, d: &FrontDiagram) -> Result<(), DiagramError> {
        if self.classical.is_none() {
            self.classical = Some(classical_invariants(d)?);
        }
        if self.degrees.is_none() {
            if let Ok(gens) = d.generators() {
                let mut census: BTreeMap<i32, DegreeCount> = BTreeMap::new();
                for g in gens {
                    let e = census.entry(g.degree).or_default();
                    match g.kind {
                        GeneratorKind::Crossing(_) => e.crossings += 1,
                        GeneratorKind::RightCusp(_) => e.right_cusps += 1,
                    }
                }
                self.degrees = Some(census);
            }
        }
        Ok(())
    }

    pub fn add_ruling_counts(&mut self, d: &FrontDiagram) {
        if self.ruling_counts.is_none() {
            let modes = [RulingMode::Ungraded, RulingMode::Graded, RulingMode::TwoGraded];
            self.ruling_counts = Some(modes.iter().map(|&m| (m, enumerate_rulings(d, m).len())).collect());
        }
    }

    pub fn add_rulings(&mut self, d: &FrontDiagram, mode: RulingMode, maximal_only: bool) {
        let mut all = enumerate_rulings(d, mode);
        if maximal_only {
            let best = all.iter().map(NormalRuling::switch_count).max();
            all.retain(|r| Some(r.switch_count()) == best);
        }
        self.rulings = Some(all.iter().map(|r| RulingReport::new(d, r)).collect());
    }

    pub fn add_ruling_polynomial(&mut self, d: &FrontDiagram) {
        if self.ruling_polynomial.is_none() {
            let p = ruling_polynomial(d);
            self.f_max = Some(p.leading_coeff() as u64);
            self.ruling_polynomial = Some(p);
        }
    }

    pub fn add_polynomials(&mut self, d: &FrontDiagram) -> Result<(), LinearizedError> {
        if self.chekanov_polynomials.is_none() {
            self.chekanov_polynomials = Some(chekanov_polynomial_set(d)?.into_iter().collect());
        }
        Ok(())
    }

    pub fn add_mcs_details(&mut self, d: &FrontDiagram) -> Result<(), LinearizedError> {
        let mut out = Vec::new();
        for c in enumerate_sr_forms(d) {
            let dif = differential(&c)?;
            let mut map = BTreeMap::new();
            for g in dif.generators() {
                let targets: Vec<String> = dif
                    .image(g.kind)
                    .into_iter()
                    .map(generator_name)
                    .collect();
                if !targets.is_empty() {
                    map.insert(generator_name(g.kind), targets);
                }
            }
            out.push(McsReport {
                ruling: RulingSwitches { switches: c.ruling().expect("SR-form").switches().iter().copied().collect() },
                marks: c.marks().iter().copied().collect(),
                handleslides: c.handleslides().to_vec(),
                polynomial: dif.poincare_polynomial()?,
                differential: map,
            });
        }
        self.mcs = Some(out);
        Ok(())
    }
}

pub fn generator_name(k: GeneratorKind) -> String {
    match k {
        GeneratorKind::Crossing(n) => format!("x{n}"),
        GeneratorKind::RightCusp(n) => format!("r{n}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::family_diagram;

    #[test]
    fn round_trip_and_absent_fields() {
        let d = family_diagram(2).unwrap();
        let mut r = InvariantReport::new(&d);
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(s, r#"{"diagram":"plat 3 : 2 2 4 3 3 3 2 4"}"#);
        r.add_info(&d).unwrap();
        r.add_ruling_counts(&d);
        r.add_rulings(&d, RulingMode::TwoGraded, true);
        r.add_ruling_polynomial(&d);
        r.add_polynomials(&d).unwrap();
        r.add_mcs_details(&d).unwrap();
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(serde_json::from_str::<InvariantReport>(&s).unwrap(), r);
        let degrees = r.degrees.as_ref().unwrap();
        assert_eq!(degrees[&-1], DegreeCount { crossings: 1, right_cusps: 0 });
        assert_eq!(degrees[&0], DegreeCount { crossings: 6, right_cusps: 0 });
        assert_eq!(degrees[&1], DegreeCount { crossings: 1, right_cusps: 3 });
        assert_eq!(r.f_max, Some(2));
        assert_eq!(r.mcs.as_ref().unwrap().len(), 16);
    }

    #[test]
    fn fill_merges_missing_only() {
        let d = FrontDiagram::plat(1, &[]).unwrap();
        let mut a = InvariantReport::new(&d);
        a.add_info(&d).unwrap();
        let mut b = InvariantReport::new(&d);
        b.add_ruling_polynomial(&d);
        assert!(a.fill_from(&b));
        assert!(!a.fill_from(&b));
        assert_eq!(a.f_max, Some(1));
    }
}
