//! Deterministic linear automata: finite automata with two heads that read
//! the input from both ends until they meet.
//!
//! Besides simulation and validation, the crate computes border
//! classifications (classes of prefix-suffix pairs) from an automaton,
//! synthesizes automata back from class descriptions, checks fixed-rate head
//! schedules and provides bounded brute-force oracles for all of it.

pub mod automaton;
pub mod border;
pub mod cli;
pub mod error;
pub mod fixtures;
pub mod io;
pub mod oracle;
pub mod random;
pub mod runner;
pub mod schedule;
pub mod synth;
pub mod word;

pub use automaton::{
    complement, complete_with_sink, reachable_states, validate_complete, validate_deterministic,
    Head, LinearAutomaton, StateId, Transition, ValidationReport, Violation,
};
pub use border::{
    check_bc, check_complete, check_crossing_free, enumerate_pseudo_bc, index_of, merge_classes,
    BCCheckReport, PresuClass, PseudoBC,
};
pub use error::{Error, Result};
pub use oracle::{
    class_growth_probe, enumerate_words, equiv_bounded, presu_equiv_bounded, state_equiv_bounded,
    Budget, Builtin, BuiltinKind, EquivalenceVerdict, LanguagePredicate,
};
pub use runner::{
    check_prefix_stability, run, run_from, step, unique_split, Configuration, RunTrace,
};
pub use schedule::{check_conformance, schedule_for, Rate, ScheduleViolation};
pub use synth::{
    build_automaton, derive_bc_spec, roundtrip_check, validate_bc_spec, BCSpec, ClassSpec, Side,
    SideRef, SynthesisResult,
};
pub use word::{Alphabet, Presu};
