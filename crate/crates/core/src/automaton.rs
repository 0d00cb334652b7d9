//! The linear automaton data model: two heads, one reading from each end of
//! the input, exactly one letter per transition.
//!
//! Transition maps may be partial and nondeterministic. Determinism and
//! completeness are properties checked after construction.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::word::Alphabet;

/// Which head reads in a transition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Head {
    /// Reads the leftmost unread letter.
    Left,
    /// Reads the rightmost unread letter.
    Right,
}

impl Head {
    pub fn tag(self) -> &'static str {
        match self {
            Head::Left => "L",
            Head::Right => "R",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Head> {
        match tag {
            "L" => Some(Head::Left),
            "R" => Some(Head::Right),
            _ => None,
        }
    }
}

impl fmt::Display for Head {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl Serialize for Head {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.tag())
    }
}

/// Index of a state in declaration order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StateId(pub usize);

/// A transition by state name, as it appears in documents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transition {
    pub from: String,
    pub head: Head,
    pub letter: char,
    pub to: String,
}

impl Transition {
    pub fn new(from: &str, head: Head, letter: char, to: &str) -> Self {
        Transition {
            from: from.to_string(),
            head,
            letter,
            to: to.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub state: String,
    pub description: String,
}

/// Outcome of a validator; `ok` holds exactly when there are no violations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    ok: bool,
    violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn from_violations(violations: Vec<Violation>) -> Self {
        ValidationReport {
            ok: violations.is_empty(),
            violations,
        }
    }

    pub fn ok(&self) -> bool {
        self.ok
    }

    pub fn violations(&self) -> &[Violation] {
        &self.violations
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearAutomaton {
    alphabet: Alphabet,
    states: Vec<String>,
    initial: StateId,
    accepting: Vec<bool>,
    transitions: BTreeMap<(StateId, Head, char), Vec<StateId>>,
    // derived
    heads: Vec<BTreeSet<Head>>,
    deterministic: bool,
}

impl LinearAutomaton {
    pub fn new(
        alphabet: Alphabet,
        states: Vec<String>,
        initial: &str,
        accepting: &[String],
        transitions: &[Transition],
    ) -> Result<Self> {
        let lookup = |name: &str| -> Result<StateId> {
            states
                .iter()
                .position(|s| s == name)
                .map(StateId)
                .ok_or_else(|| Error::UnknownState(name.to_string()))
        };
        for (i, s) in states.iter().enumerate() {
            if states[..i].contains(s) {
                return Err(Error::DuplicateState(s.clone()));
            }
        }
        let initial = lookup(initial)?;
        let mut acc = vec![false; states.len()];
        for s in accepting {
            acc[lookup(s)?.0] = true;
        }
        let mut map: BTreeMap<(StateId, Head, char), Vec<StateId>> = BTreeMap::new();
        for t in transitions {
            let from = lookup(&t.from)?;
            let to = lookup(&t.to)?;
            if !alphabet.contains(t.letter) {
                return Err(Error::ForeignLetter(t.letter));
            }
            let targets = map.entry((from, t.head, t.letter)).or_default();
            if targets.contains(&to) {
                return Err(Error::DuplicateTransition {
                    from: t.from.clone(),
                    head: t.head,
                    letter: t.letter,
                    to: t.to.clone(),
                });
            }
            targets.push(to);
            targets.sort();
        }
        Ok(Self::from_parts(alphabet, states, initial, acc, map))
    }

    fn from_parts(
        alphabet: Alphabet,
        states: Vec<String>,
        initial: StateId,
        accepting: Vec<bool>,
        transitions: BTreeMap<(StateId, Head, char), Vec<StateId>>,
    ) -> Self {
        let mut heads = vec![BTreeSet::new(); states.len()];
        for (&(q, h, _), targets) in &transitions {
            if !targets.is_empty() {
                heads[q.0].insert(h);
            }
        }
        let deterministic =
            heads.iter().all(|hs| hs.len() <= 1) && transitions.values().all(|t| t.len() <= 1);
        LinearAutomaton {
            alphabet,
            states,
            initial,
            accepting,
            transitions,
            heads,
            deterministic,
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn state_ids(&self) -> impl Iterator<Item = StateId> {
        (0..self.states.len()).map(StateId)
    }

    pub fn state_names(&self) -> &[String] {
        &self.states
    }

    pub fn name(&self, q: StateId) -> &str {
        &self.states[q.0]
    }

    pub fn state(&self, name: &str) -> Option<StateId> {
        self.states.iter().position(|s| s == name).map(StateId)
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn is_accepting(&self, q: StateId) -> bool {
        self.accepting[q.0]
    }

    pub fn accepting_names(&self) -> Vec<String> {
        self.state_ids()
            .filter(|&q| self.is_accepting(q))
            .map(|q| self.name(q).to_string())
            .collect()
    }

    pub fn targets(&self, q: StateId, head: Head, letter: char) -> &[StateId] {
        self.transitions
            .get(&(q, head, letter))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    /// The head used at `q`, if exactly one head has transitions there.
    pub fn active_head(&self, q: StateId) -> Option<Head> {
        let hs = &self.heads[q.0];
        if hs.len() == 1 {
            hs.iter().next().copied()
        } else {
            None
        }
    }

    pub fn is_deterministic(&self) -> bool {
        self.deterministic
    }

    /// All transitions by name, ordered by (from, head, letter, to) with states
    /// in declaration order and letters in alphabet order.
    pub fn transitions(&self) -> Vec<Transition> {
        let mut out: Vec<(StateId, Head, usize, StateId, char)> = Vec::new();
        for (&(q, h, c), targets) in &self.transitions {
            let rank = self.alphabet.rank(c).unwrap_or(usize::MAX);
            for &t in targets {
                out.push((q, h, rank, t, c));
            }
        }
        out.sort();
        out.into_iter()
            .map(|(q, h, _, t, c)| Transition::new(self.name(q), h, c, self.name(t)))
            .collect()
    }

    /// Same automaton with a different accepting set.
    pub fn with_accepting(&self, accepting: Vec<bool>) -> Self {
        assert_eq!(accepting.len(), self.states.len());
        LinearAutomaton {
            accepting,
            ..self.clone()
        }
    }

    pub(crate) fn require_deterministic(&self) -> Result<()> {
        if self.deterministic {
            return Ok(());
        }
        let bad = self
            .state_ids()
            .find(|&q| {
                self.heads[q.0].len() > 1
                    || self
                        .transitions
                        .range((q, Head::Left, '\0')..=(q, Head::Right, char::MAX))
                        .any(|(_, t)| t.len() > 1)
            })
            .expect("nondeterministic automaton has an offending state");
        Err(Error::NotDeterministic(self.name(bad).to_string()))
    }

    pub(crate) fn require_complete(&self, reachable_only: bool) -> Result<()> {
        let report = validate_complete(self, reachable_only)?;
        match report.violations().first() {
            None => Ok(()),
            Some(v) => Err(Error::NotComplete(v.state.clone())),
        }
    }
}

/// A state is deterministic when at most one head has transitions there and
/// that head has at most one target per letter.
pub fn validate_deterministic(a: &LinearAutomaton) -> ValidationReport {
    let mut violations = Vec::new();
    for q in a.state_ids() {
        if a.heads[q.0].len() > 1 {
            violations.push(Violation {
                state: a.name(q).to_string(),
                description: "both heads active".to_string(),
            });
        }
        for &h in &a.heads[q.0] {
            for &c in a.alphabet.letters() {
                let n = a.targets(q, h, c).len();
                if n > 1 {
                    violations.push(Violation {
                        state: a.name(q).to_string(),
                        description: format!("multiple targets on {h}:{c} ({n})"),
                    });
                }
            }
        }
    }
    ValidationReport::from_violations(violations)
}

/// Checks that every considered state has one active head with exactly one
/// target for every letter.
pub fn validate_complete(a: &LinearAutomaton, reachable_only: bool) -> Result<ValidationReport> {
    a.require_deterministic()?;
    let considered: Vec<StateId> = if reachable_only {
        reachable_states(a)
    } else {
        a.state_ids().collect()
    };
    let mut violations = Vec::new();
    for q in considered {
        match a.active_head(q) {
            None => violations.push(Violation {
                state: a.name(q).to_string(),
                description: "no transitions".to_string(),
            }),
            Some(h) => {
                let missing: Vec<char> = a
                    .alphabet
                    .letters()
                    .iter()
                    .copied()
                    .filter(|&c| a.targets(q, h, c).is_empty())
                    .collect();
                if !missing.is_empty() {
                    let list: String = missing.iter().collect();
                    violations.push(Violation {
                        state: a.name(q).to_string(),
                        description: format!("head {h} missing letters {list}"),
                    });
                }
            }
        }
    }
    Ok(ValidationReport::from_violations(violations))
}

/// States reachable from the initial state, in declaration order.
pub fn reachable_states(a: &LinearAutomaton) -> Vec<StateId> {
    let mut seen = vec![false; a.num_states()];
    let mut queue = VecDeque::from([a.initial]);
    seen[a.initial.0] = true;
    while let Some(q) = queue.pop_front() {
        for (_, targets) in a
            .transitions
            .range((q, Head::Left, '\0')..=(q, Head::Right, char::MAX))
        {
            for &t in targets {
                if !seen[t.0] {
                    seen[t.0] = true;
                    queue.push_back(t);
                }
            }
        }
    }
    a.state_ids().filter(|q| seen[q.0]).collect()
}

/// Name used for the state added by [`complete_with_sink`]: `sink`, or
/// `sink_<n>` when that is taken.
fn fresh_sink_name(a: &LinearAutomaton) -> String {
    let mut name = "sink".to_string();
    let mut n = 1;
    while a.state(&name).is_some() {
        name = format!("sink_{n}");
        n += 1;
    }
    name
}

/// Routes every undefined transition of each state's active head to a fresh
/// non-accepting sink. States without any transitions read with the left head.
/// The sink itself reads with the left head as well.
pub fn complete_with_sink(a: &LinearAutomaton) -> Result<LinearAutomaton> {
    a.require_deterministic()?;
    if validate_complete(a, false)?.ok() {
        return Ok(a.clone());
    }
    let sink = StateId(a.num_states());
    let mut states = a.states.clone();
    states.push(fresh_sink_name(a));
    let mut accepting = a.accepting.clone();
    accepting.push(false);
    let mut transitions = a.transitions.clone();
    for q in a.state_ids().chain([sink]) {
        let head = if q == sink {
            Head::Left
        } else {
            a.active_head(q).unwrap_or(Head::Left)
        };
        for &c in a.alphabet.letters() {
            let entry = transitions.entry((q, head, c)).or_default();
            if entry.is_empty() {
                entry.push(sink);
            }
        }
    }
    Ok(LinearAutomaton::from_parts(
        a.alphabet.clone(),
        states,
        a.initial,
        accepting,
        transitions,
    ))
}

/// Swaps accepting and non-accepting states of a complete deterministic
/// automaton.
pub fn complement(a: &LinearAutomaton) -> Result<LinearAutomaton> {
    a.require_deterministic()?;
    a.require_complete(false)?;
    Ok(a.with_accepting(a.accepting.iter().map(|b| !b).collect()))
}
