//! The worked example automata and BC specs shipped with the crate.
//!
//! - `pal3`: palindromes over `{a, b, c}`, five states.
//! - `three_rate`: `1ⁿ0³ⁿ`, a twelve-state table of which seven states are
//!   reachable; the unreachable ones have no transitions.
//! - `evenpal`: even-length palindromes over `{a, b}`, ten states with two
//!   pairs of equivalent states.

use crate::automaton::LinearAutomaton;
use crate::io::{parse_automaton, parse_bc_spec};
use crate::synth::BCSpec;

pub const PAL3_JSON: &str = include_str!("../fixtures/pal3.json");
pub const THREE_RATE_JSON: &str = include_str!("../fixtures/three_rate.json");
pub const EVENPAL_JSON: &str = include_str!("../fixtures/evenpal.json");
pub const EVENPAL_SPEC_JSON: &str = include_str!("../fixtures/evenpal_spec.json");
pub const THREE_RATE_SPEC_JSON: &str = include_str!("../fixtures/three_rate_spec.json");

pub fn pal3() -> LinearAutomaton {
    parse_automaton(PAL3_JSON).expect("pal3 fixture parses")
}

pub fn three_rate() -> LinearAutomaton {
    parse_automaton(THREE_RATE_JSON).expect("three_rate fixture parses")
}

pub fn evenpal() -> LinearAutomaton {
    parse_automaton(EVENPAL_JSON).expect("evenpal fixture parses")
}

pub fn evenpal_spec() -> BCSpec {
    parse_bc_spec(EVENPAL_SPEC_JSON).expect("evenpal spec parses")
}

pub fn three_rate_spec() -> BCSpec {
    parse_bc_spec(THREE_RATE_SPEC_JSON).expect("three_rate spec parses")
}
