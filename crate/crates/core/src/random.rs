//! Random complete deterministic linear automata for property sweeps.

use rand::Rng;

use crate::automaton::{Head, LinearAutomaton, Transition};
use crate::word::Alphabet;

const LETTERS: [char; 6] = ['a', 'b', 'c', 'd', 'e', 'f'];

/// Every state gets a random head and one random target per letter, so the
/// result is complete and deterministic. State `s0` is initial.
pub fn random_automaton<R: Rng + ?Sized>(
    rng: &mut R,
    max_states: usize,
    max_letters: usize,
) -> LinearAutomaton {
    assert!(max_states >= 1 && (1..=LETTERS.len()).contains(&max_letters));
    let n = rng.gen_range(1..=max_states);
    let k = rng.gen_range(1..=max_letters);
    let alphabet = Alphabet::new(LETTERS[..k].iter().copied()).expect("distinct letters");
    let states: Vec<String> = (0..n).map(|i| format!("s{i}")).collect();
    let accepting: Vec<String> = states
        .iter()
        .filter(|_| rng.gen_bool(0.5))
        .cloned()
        .collect();
    let mut transitions = Vec::new();
    for s in &states {
        let head = if rng.gen_bool(0.5) {
            Head::Left
        } else {
            Head::Right
        };
        for &c in alphabet.letters() {
            let to = &states[rng.gen_range(0..n)];
            transitions.push(Transition::new(s, head, c, to));
        }
    }
    LinearAutomaton::new(alphabet, states, "s0", &accepting, &transitions)
        .expect("generated automaton is well formed")
}
