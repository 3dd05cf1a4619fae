//! Acceptance suite. Runs every criterion, prints one line each, and exits
//! nonzero if any fails.

use std::collections::BTreeSet;
use std::process::ExitCode;

use legk::diagram::GeneratorKind;
use legk::linearized::{jumping_source_degrees, oracle_differential, satisfies_duality};
use legk::mcs::family_sr_form;
use legk::rulings::maximal_rulings;
use legk::{
    chekanov_polynomial_set, classical_invariants, connect_sum, differential, enumerate_chord_paths,
    enumerate_sr_forms, f_max, family_diagram, mcs_polynomial, sweep, CrossingClass, FrontDiagram,
    LaurentPolynomial, RulingMode,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn set(xs: &[usize]) -> BTreeSet<usize> {
    xs.iter().copied().collect()
}

fn expected_polynomial(m: usize, i: usize) -> LaurentPolynomial {
    let (m, i) = (m as i64, i as i64);
    LaurentPolynomial::from_terms([(-1, m - i), (0, 4 * m - 2 * i - 2), (1, m - i + 1)])
}

fn family_census() -> Check {
    for m in 2..=6 {
        let d = family_diagram(m).map_err(|e| e.to_string())?;
        let tb = classical_invariants(&d).map_err(|e| e.to_string())?.tb;
        let degrees = d.maslov().map_err(|e| e.to_string())?.crossing_degrees().to_vec();
        let n_neg = degrees.iter().filter(|&&g| g == -1).count();
        let n_zero = degrees.iter().filter(|&&g| g == 0).count();
        ensure(tb == 2 * m as i32 - 3, || format!("m={m}: tb {tb}"))?;
        ensure(n_neg == m - 1, || format!("m={m}: {n_neg} degree -1 crossings"))?;
        ensure(n_zero == 4 * m - 2, || format!("m={m}: {n_zero} degree 0 crossings"))?;
    }
    Ok("m=2..6: tb=2m-3, n_-1=m-1, n_0=4m-2".into())
}

fn figure_three() -> Check {
    let d = family_diagram(2).map_err(|e| e.to_string())?;
    let r = sweep(&d, &set(&[1, 4])).map_err(|e| e.to_string())?;
    let dep = r.crossings_of_class(CrossingClass::Departure);
    let ret = r.crossings_of_class(CrossingClass::Return);
    ensure(dep == set(&[2, 3, 5]), || format!("departures {dep:?}"))?;
    ensure(ret == set(&[6, 7, 8]), || format!("returns {ret:?}"))?;
    Ok("switches {1,4}: departures {2,3,5}, returns {6,7,8}".into())
}

fn family_forms() -> Check {
    let mut n = 0;
    for m in 2..=5 {
        let d = family_diagram(m).map_err(|e| e.to_string())?;
        for i in 1..=m {
            let c = family_sr_form(&d, i).map_err(|e| e.to_string())?;
            let dif = differential(&c).map_err(|e| e.to_string())?;
            let p = dif.poincare_polynomial().map_err(|e| e.to_string())?;
            let want = expected_polynomial(m, i);
            ensure(p == want, || format!("m={m} i={i}: {p} != {want}"))?;
            ensure(dif.rank(0) == i - 1, || format!("m={m} i={i}: r_0 = {}", dif.rank(0)))?;
            n += 1;
        }
    }
    Ok(format!("{n} fixtures match (m-i)t^-1 + (4m-2i-2) + (m-i+1)t with r_0 = i-1"))
}

fn chord_pinpoints() -> Check {
    let d3 = family_diagram(3).map_err(|e| e.to_string())?;
    let c3 = family_sr_form(&d3, 3).map_err(|e| e.to_string())?;
    let label = |d: &FrontDiagram, s: &str| d.label(s).ok_or_else(|| format!("missing label {s}"));
    let x = GeneratorKind::Crossing;
    let paths = enumerate_chord_paths(&c3, x(label(&d3, "c_3")?), x(label(&d3, "a_3")?)).map_err(|e| e.to_string())?;
    ensure(paths.len() == 1, || format!("{} c_3 -> a_3 paths", paths.len()))?;
    let b3_event = d3.crossing_event(label(&d3, "b_3")?).unwrap();
    let gaps: Vec<usize> = paths[0].jumps.iter().map(|&h| c3.handleslides()[h].gap).collect();
    ensure(gaps == [b3_event], || format!("jumps at gaps {gaps:?}, b_3 is event {b3_event}"))?;

    let d2 = family_diagram(2).map_err(|e| e.to_string())?;
    let c1 = family_sr_form(&d2, 1).map_err(|e| e.to_string())?;
    let even = enumerate_chord_paths(&c1, x(label(&d2, "c_2")?), x(label(&d2, "a_2")?)).map_err(|e| e.to_string())?;
    ensure(even.len() % 2 == 0, || format!("{} c_2 -> a_2 paths in C_1", even.len()))?;
    Ok(format!("C_3: one c_3->a_3 path jumping at b_3; C_1: {} c_2->a_2 paths", even.len()))
}

fn polynomial_sets() -> Check {
    for m in 2..=5 {
        let d = family_diagram(m).map_err(|e| e.to_string())?;
        let tb = classical_invariants(&d).map_err(|e| e.to_string())?.tb as i64;
        let got = chekanov_polynomial_set(&d).map_err(|e| e.to_string())?;
        let want: BTreeSet<_> = (1..=m).map(|i| expected_polynomial(m, i)).collect();
        ensure(got.len() == m && got == want, || format!("m={m}: got {got:?}"))?;
        for p in &got {
            ensure(satisfies_duality(p), || format!("m={m}: {p} fails duality"))?;
            ensure(p.eval_at_minus_one() == tb, || format!("m={m}: {p} at -1 is not tb={tb}"))?;
        }
    }
    Ok("m=2..5: m polynomials, all dual with P(-1)=tb".into())
}

fn two_bridge_scan() -> Check {
    let (mut knots, mut forms) = (0, 0);
    for w in legk::cli::verify::plat_words(2, 8) {
        let Ok(d) = FrontDiagram::plat(2, &w) else { continue };
        knots += 1;
        let set = chekanov_polynomial_set(&d).map_err(|e| e.to_string())?;
        ensure(set.len() <= 1, || format!("{d}: {} polynomials", set.len()))?;
        for c in enumerate_sr_forms(&d) {
            forms += 1;
            let degs = jumping_source_degrees(&c).map_err(|e| e.to_string())?;
            ensure(!degs.iter().any(|&g| g == 0 || g == -1), || format!("{d}: jump from degrees {degs:?}"))?;
        }
    }
    Ok(format!("{knots} knots, {forms} SR-forms: at most one polynomial, no low-degree jumps"))
}

fn fmax_counts() -> Check {
    let d2 = family_diagram(2).map_err(|e| e.to_string())?;
    let max: BTreeSet<_> = maximal_rulings(&d2, RulingMode::TwoGraded).iter().map(|r| r.switches().clone()).collect();
    ensure(max == [set(&[1, 4, 5, 6]), set(&[1, 2, 5, 7])].into_iter().collect(), || format!("maximal {max:?}"))?;
    let mut prev = f_max(&d2);
    ensure(prev == 2, || format!("f_max(D_2) = {prev}"))?;
    for m in 3..=5 {
        let f = f_max(&family_diagram(m).map_err(|e| e.to_string())?);
        ensure(f == 2 * prev, || format!("f_max(D_{m}) = {f}, previous {prev}"))?;
        prev = f;
    }
    let sum = connect_sum(&d2, &d2).map_err(|e| e.to_string())?;
    let fs = f_max(&sum);
    ensure(fs == 4, || format!("f_max(D_2 # D_2) = {fs}"))?;
    Ok("f_max(D_2)=2 at {1,4,5,6},{1,2,5,7}; doubling to m=5; connect sum 4".into())
}

fn random_knot(rng: &mut ChaCha8Rng) -> FrontDiagram {
    loop {
        let k = rng.gen_range(2..=3);
        let len = rng.gen_range(0..=12);
        let word: Vec<usize> = (0..len).map(|_| rng.gen_range(1..2 * k)).collect();
        if let Ok(d) = FrontDiagram::plat(k, &word) {
            return d;
        }
    }
}

fn engines_agree() -> Check {
    let mut diagrams = vec![family_diagram(2).unwrap(), family_diagram(3).unwrap()];
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    diagrams.extend((0..200).map(|_| random_knot(&mut rng)));
    let mut compared = 0;
    for d in &diagrams {
        for c in enumerate_sr_forms(d) {
            let fast = differential(&c).map_err(|e| e.to_string())?;
            let slow = oracle_differential(&c).map_err(|e| e.to_string())?;
            ensure(fast == slow, || format!("{d}: engines differ for marks {:?}", c.marks()))?;
            ensure(fast.square_is_zero(), || format!("{d}: d1 d1 != 0 for marks {:?}", c.marks()))?;
            mcs_polynomial(&c).map_err(|e| format!("{d}: {e}"))?;
            compared += 1;
        }
    }
    Ok(format!("{compared} SR-forms over {} diagrams: engines agree, d1 d1 = 0", diagrams.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("family census", family_census),
        ("ruling classification", figure_three),
        ("distinguished SR-forms", family_forms),
        ("chord path pinpoints", chord_pinpoints),
        ("Chekanov polynomial sets", polynomial_sets),
        ("two-bridge scan", two_bridge_scan),
        ("f_max", fmax_counts),
        ("engine equivalence", engines_agree),
    ];
    let mut failed = 0;
    for (n, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("criterion {} [{name}]: PASS  {detail}", n + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} [{name}]: FAIL  {why}", n + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
