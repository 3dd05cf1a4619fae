//! Command-line front end for the `legk` binary.

pub mod cache;
pub mod report;
pub mod verify;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::diagram::{family_diagram, parse_plat, FrontDiagram};
use crate::rulings::RulingMode;
use cache::Cache;
use report::{Field, InvariantReport};
use verify::Outcome;

pub const EXIT_OK: u8 = 0;
pub const EXIT_INPUT: u8 = 1;
pub const EXIT_VERIFY: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "legk", version, about = "Invariants of Legendrian knot front diagrams")]
pub struct Cli {
    /// Emit JSON instead of tables.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads (default: all cores).
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,
    /// Neither read nor write the results cache.
    #[arg(long, global = true)]
    no_cache: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Input {
    /// Diagram text, e.g. "plat 3 : 2 2 4 3 3 3 2 4".
    diagram: Option<String>,
    /// Read the diagram from a file.
    #[arg(short = 'f', long = "file", value_name = "PATH", conflicts_with = "diagram")]
    file: Option<PathBuf>,
    /// Use the m-th member of the three-bridge family.
    #[arg(long, value_name = "M", conflicts_with_all = ["diagram", "file"])]
    family: Option<usize>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Mode {
    Ungraded,
    Graded,
    #[value(name = "2graded")]
    TwoGraded,
}

impl From<Mode> for RulingMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Ungraded => RulingMode::Ungraded,
            Mode::Graded => RulingMode::Graded,
            Mode::TwoGraded => RulingMode::TwoGraded,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classical invariants and the degree census of the generators.
    Info(Input),
    /// Normal rulings with their crossing classification.
    Rulings {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "ungraded")]
        mode: Mode,
        /// Keep only rulings with the most switches.
        #[arg(long)]
        max: bool,
    },
    /// The 2-graded ruling polynomial and f_max.
    RulingPoly(Input),
    /// The set of Chekanov polynomials over all SR-form MCSs.
    Polys {
        #[command(flatten)]
        input: Input,
        /// Also list every SR-form MCS with its differential.
        #[arg(long)]
        mcs: bool,
    },
    /// Run a verification suite.
    Verify {
        #[command(subcommand)]
        suite: Suite,
    },
    /// Print the m-th family diagram with its generator labels.
    Family { m: usize },
}

#[derive(Debug, Subcommand)]
enum Suite {
    /// At most one Chekanov polynomial for every two-bridge plat knot.
    Thm1 {
        #[arg(long, default_value_t = 8)]
        max_crossings: usize,
    },
    /// m distinct polynomials on the m-th family diagram.
    Thm2 {
        #[arg(long, default_value_t = 4)]
        m: usize,
    },
    /// Duality and P(-1) = tb for every SR-form polynomial.
    Duality(Input),
    /// f_max doubling along the family and multiplicativity.
    Fmax {
        #[arg(long, default_value_t = 5)]
        m: usize,
    },
}

struct Failure {
    code: u8,
    message: String,
}

fn input_error(message: impl ToString) -> Failure {
    Failure { code: EXIT_INPUT, message: message.to_string() }
}

fn load(input: &Input) -> Result<FrontDiagram, Failure> {
    if let Some(m) = input.family {
        return family_diagram(m).map_err(input_error);
    }
    let text = match (&input.diagram, &input.file) {
        (Some(t), _) => t.clone(),
        (None, Some(p)) => std::fs::read_to_string(p).map_err(|e| input_error(format!("{}: {e}", p.display())))?,
        (None, None) => return Err(input_error("no diagram given; pass text, -f PATH or --family M")),
    };
    parse_plat(&text).map_err(input_error)
}

/// Runs the CLI on `args` (including the program name), writing to stdout
/// and stderr. Returns the process exit code.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: --threads must be positive");
            return EXIT_INPUT;
        }
        // Fails only if a pool already exists, which keeps its size.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match execute(&cli) {
        Ok(text) => {
            print!("{text}");
            EXIT_OK
        }
        Err(f) => {
            eprintln!("{}", f.message);
            f.code
        }
    }
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("reports serialize") + "\n"
}

fn execute(cli: &Cli) -> Result<String, Failure> {
    match &cli.command {
        Command::Info(input) => {
            let d = load(input)?;
            let r = cached(cli, &d, &[Field::Classical, Field::Degrees], |r| r.add_info(&d).map_err(input_error))?;
            Ok(if cli.json { json(&r) } else { render_info(&r) })
        }
        Command::Rulings { input, mode, max } => {
            let d = load(input)?;
            let mut r = InvariantReport::new(&d);
            r.add_rulings(&d, (*mode).into(), *max);
            Ok(if cli.json { json(&r) } else { render_rulings(&r, (*mode).into()) })
        }
        Command::RulingPoly(input) => {
            let d = load(input)?;
            let fields = [Field::RulingPolynomial, Field::FMax, Field::RulingCounts];
            let r = cached(cli, &d, &fields, |r| {
                r.add_ruling_polynomial(&d);
                r.add_ruling_counts(&d);
                Ok(())
            })?;
            Ok(if cli.json { json(&r) } else { render_ruling_poly(&r) })
        }
        Command::Polys { input, mcs } => {
            let d = load(input)?;
            let mut r = cached(cli, &d, &[Field::ChekanovPolynomials], |r| r.add_polynomials(&d).map_err(input_error))?;
            if *mcs {
                r.add_mcs_details(&d).map_err(input_error)?;
            }
            Ok(if cli.json { json(&r) } else { render_polys(&r) })
        }
        Command::Verify { suite } => {
            let outcome = match suite {
                Suite::Thm1 { max_crossings } => verify::theorem_one(*max_crossings),
                Suite::Thm2 { m } => {
                    if *m < 2 {
                        return Err(input_error("--m must be at least 2"));
                    }
                    verify::theorem_two(*m)
                }
                Suite::Duality(input) => verify::duality(&load(input)?),
                Suite::Fmax { m } => {
                    if *m < 2 {
                        return Err(input_error("--m must be at least 2"));
                    }
                    verify::fmax(*m)
                }
            };
            let text = if cli.json { json(&outcome) } else { render_outcome(&outcome) };
            if outcome.passed {
                Ok(text)
            } else {
                print!("{text}");
                Err(Failure { code: EXIT_VERIFY, message: format!("{}: FAILED", outcome.suite) })
            }
        }
        Command::Family { m } => {
            let d = family_diagram(*m).map_err(input_error)?;
            if cli.json {
                #[derive(Serialize)]
                struct FamilyJson<'a> {
                    diagram: String,
                    labels: &'a std::collections::BTreeMap<String, usize>,
                }
                Ok(json(&FamilyJson { diagram: d.to_string(), labels: d.labels() }))
            } else {
                let mut s = format!("{d}\n");
                let mut labels: Vec<_> = d.labels().iter().collect();
                labels.sort_by_key(|(_, &n)| n);
                for (name, n) in labels {
                    let _ = writeln!(s, "{name:<5} crossing {n}");
                }
                Ok(s)
            }
        }
    }
}

/// Fills a report through the cache: cached fields are reused, `compute`
/// adds what is missing, and the merged report is appended when it grew.
/// Only `fields` are returned.
fn cached(
    cli: &Cli,
    d: &FrontDiagram,
    fields: &[Field],
    compute: impl FnOnce(&mut InvariantReport) -> Result<(), Failure>,
) -> Result<InvariantReport, Failure> {
    let cache = if cli.no_cache { None } else { Cache::default_location() };
    let canonical = d.to_string();
    let mut r = InvariantReport::new(d);
    let prior = cache.as_ref().and_then(|c| c.lookup(&canonical));
    if let Some(p) = &prior {
        r.fill_from(p);
    }
    let before = r.clone();
    compute(&mut r)?;
    if let Some(c) = &cache {
        let mut merged = r.clone();
        if let Some(p) = &prior {
            merged.fill_from(p);
        }
        if merged.cacheable() != before.cacheable() {
            if let Err(e) = c.append(&merged) {
                eprintln!("warning: cache {} not written: {e}", c.path().display());
            }
        }
    }
    Ok(r.project(fields))
}

fn render_info(r: &InvariantReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "diagram      {}", r.diagram);
    if let Some(c) = &r.classical {
        let _ = writeln!(s, "tb           {}", c.tb);
        let _ = writeln!(s, "rotation     {}", c.rotation);
        let _ = writeln!(s, "writhe       {}", c.writhe);
        let _ = writeln!(s, "crossings    {}", c.crossings);
        let _ = writeln!(s, "right cusps  {}", c.right_cusps);
    }
    match &r.degrees {
        Some(deg) => {
            let _ = writeln!(s, "\ndegree  crossings  right cusps");
            for (k, c) in deg {
                let _ = writeln!(s, "{k:>6}  {:>9}  {:>11}", c.crossings, c.right_cusps);
            }
        }
        None => {
            let _ = writeln!(s, "\nno integer Maslov potential (rotation is nonzero)");
        }
    }
    s
}

fn render_rulings(r: &InvariantReport, mode: RulingMode) -> String {
    let mut s = String::new();
    let rulings = r.rulings.as_deref().unwrap_or_default();
    let _ = writeln!(s, "{} {mode} rulings of {}", rulings.len(), r.diagram);
    for ru in rulings {
        let classes: String = ru.classification.values().map(ToString::to_string).collect();
        let sw: Vec<String> = ru.switches.iter().map(ToString::to_string).collect();
        let _ = writeln!(s, "  switches {{{}}}  j={}  {}", sw.join(","), ru.j, classes);
    }
    s
}

fn render_ruling_poly(r: &InvariantReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "diagram    {}", r.diagram);
    if let Some(p) = &r.ruling_polynomial {
        let _ = writeln!(s, "R2(z)      {}", p.to_string().replace('t', "z"));
    }
    if let Some(f) = r.f_max {
        let _ = writeln!(s, "f_max      {f}");
    }
    if let Some(c) = &r.ruling_counts {
        for (mode, n) in c {
            let _ = writeln!(s, "{:<10} {n}", mode.to_string());
        }
    }
    s
}

fn render_polys(r: &InvariantReport) -> String {
    let mut s = String::new();
    let polys = r.chekanov_polynomials.as_deref().unwrap_or_default();
    let _ = writeln!(s, "{} Chekanov polynomial(s) of {}", polys.len(), r.diagram);
    for p in polys {
        let _ = writeln!(s, "  {p}");
    }
    if let Some(mcs) = &r.mcs {
        let _ = writeln!(s, "\n{} SR-form MCSs", mcs.len());
        for c in mcs {
            let _ = writeln!(
                s,
                "  switches {:?} marks {:?} handleslides {}  P = {}",
                c.ruling.switches,
                c.marks,
                c.handleslides.len(),
                c.polynomial
            );
        }
    }
    s
}

fn render_outcome(o: &Outcome) -> String {
    let mut s = String::new();
    for line in &o.summary {
        let _ = writeln!(s, "{line}");
    }
    for c in &o.counterexamples {
        let _ = writeln!(s, "counterexample: {c}");
    }
    let _ = writeln!(s, "{}: {}", o.suite, if o.passed { "PASS" } else { "FAIL" });
    s
}
