//! Combinatorial invariants of Legendrian knot front diagrams.
//!
//! A front is stored as a left-to-right list of cusp and crossing events.
//! On top of that the crate computes classical invariants, Maslov
//! potentials, normal rulings and the 2-graded ruling polynomial, SR-form
//! Morse complex sequences, and the linearized homology of those sequences
//! via chord paths, which yields the set of Chekanov polynomials.

pub mod cli;
pub mod diagram;
pub mod gf2;
pub mod laurent;
pub mod linearized;
pub mod mcs;
pub mod rulings;

pub use diagram::{
    classical_invariants, connect_sum, family_diagram, maslov, orient, parse_plat,
    ClassicalInvariants, DiagramError, Event, FrontDiagram, Generator, GeneratorKind,
    MaslovLabeling, Orientation,
};
pub use gf2::Gf2Matrix;
pub use laurent::LaurentPolynomial;
pub use linearized::{
    chekanov_polynomial_set, chord_step, differential, enumerate_chord_paths, gf2_rank,
    mcs_polynomial, Chord, ChordPath, Differential, LinearizedError,
};
pub use mcs::{a_form, enumerate_sr_forms, sr_form, Handleslide, McsError, MorseComplexSequence};
pub use rulings::{
    enumerate_rulings, f_max, ruling_polynomial, sweep, CrossingClass, NormalRuling, RulingMode,
};
