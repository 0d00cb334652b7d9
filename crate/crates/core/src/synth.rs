//! Synthesis of a complete deterministic linear automaton from a finite
//! border classification description.
//!
//! Each class contributes up to two states: a left side (`q_<id>`) read with
//! the left head and a right side (`p_<id>`) read with the right head. A side
//! maps every letter to the side of the class that the extended presu belongs
//! to.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::automaton::{
    reachable_states, Head, LinearAutomaton, Transition, ValidationReport, Violation,
};
use crate::border::equivalent_state_groups;
use crate::error::{Error, Result};
use crate::oracle::{equiv_bounded, Budget};
use crate::word::Alphabet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn head(self) -> Head {
        match self {
            Side::Left => Head::Left,
            Side::Right => Head::Right,
        }
    }

    fn of(head: Head) -> Side {
        match head {
            Head::Left => Side::Left,
            Head::Right => Side::Right,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

/// `[class-id, side]`
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SideRef(pub String, pub Side);

impl SideRef {
    pub fn new(class: &str, side: Side) -> Self {
        SideRef(class.to_string(), side)
    }
}

impl fmt::Display for SideRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0, self.1)
    }
}

pub type SideMap = BTreeMap<char, SideRef>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassSpec {
    pub id: String,
    pub accepting: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub left: Option<SideMap>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub right: Option<SideMap>,
}

impl ClassSpec {
    pub fn side(&self, side: Side) -> Option<&SideMap> {
        match side {
            Side::Left => self.left.as_ref(),
            Side::Right => self.right.as_ref(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BCSpec {
    pub alphabet: Alphabet,
    pub initial: SideRef,
    pub classes: Vec<ClassSpec>,
}

impl BCSpec {
    pub fn class(&self, id: &str) -> Option<&ClassSpec> {
        self.classes.iter().find(|c| c.id == id)
    }

    fn side_map(&self, r: &SideRef) -> Option<&SideMap> {
        self.class(&r.0).and_then(|c| c.side(r.1))
    }

    /// Walks `w` through the spec directly: a left side consumes the leftmost
    /// unread letter, a right side the rightmost. Requires a valid spec.
    pub fn follow(&self, w: &str) -> Result<SideRef> {
        self.alphabet.check_word(w)?;
        let input: Vec<char> = w.chars().collect();
        let (mut lo, mut hi) = (0, input.len());
        let mut at = self.initial.clone();
        while lo < hi {
            let c = match at.1 {
                Side::Left => {
                    lo += 1;
                    input[lo - 1]
                }
                Side::Right => {
                    hi -= 1;
                    input[hi]
                }
            };
            at = self
                .side_map(&at)
                .and_then(|m| m.get(&c))
                .cloned()
                .ok_or_else(|| Error::InvalidSpec(format!("no successor of {at} on '{c}'")))?;
        }
        Ok(at)
    }
}

fn violation(class: &str, description: String) -> Violation {
    Violation {
        state: class.to_string(),
        description,
    }
}

/// Checks ids, side totality and that every referenced side exists.
pub fn validate_bc_spec(s: &BCSpec) -> ValidationReport {
    let mut violations = Vec::new();
    let mut seen: HashMap<&str, usize> = HashMap::new();
    for c in &s.classes {
        *seen.entry(c.id.as_str()).or_default() += 1;
    }
    for c in &s.classes {
        if seen[c.id.as_str()] > 1 {
            violations.push(violation(&c.id, "duplicate class id".into()));
        }
        if c.left.is_none() && c.right.is_none() {
            violations.push(violation(&c.id, "class has neither side".into()));
        }
        for side in [Side::Left, Side::Right] {
            let Some(map) = c.side(side) else { continue };
            for &letter in s.alphabet.letters() {
                if !map.contains_key(&letter) {
                    violations.push(violation(
                        &c.id,
                        format!("{side} side of {} missing letter {letter}", c.id),
                    ));
                }
            }
            for (&letter, target) in map {
                if !s.alphabet.contains(letter) {
                    violations.push(violation(
                        &c.id,
                        format!("{side} side of {} uses foreign letter {letter}", c.id),
                    ));
                }
                if s.side_map(target).is_none() {
                    violations.push(violation(
                        &c.id,
                        format!(
                            "{side} side of {} on {letter} targets missing side {target}",
                            c.id
                        ),
                    ));
                }
            }
        }
    }
    if s.side_map(&s.initial).is_none() {
        violations.push(violation(
            &s.initial.0,
            format!("initial side {} does not exist", s.initial),
        ));
    }
    ValidationReport::from_violations(violations)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SynthesisResult {
    pub automaton: LinearAutomaton,
    pub state_of: BTreeMap<SideRef, String>,
}

pub fn state_name(r: &SideRef) -> String {
    match r.1 {
        Side::Left => format!("q_{}", r.0),
        Side::Right => format!("p_{}", r.0),
    }
}

/// Builds the automaton with one state per present side. Accepting states are
/// all sides of accepting classes.
pub fn build_automaton(s: &BCSpec) -> Result<SynthesisResult> {
    let report = validate_bc_spec(s);
    if let Some(v) = report.violations().first() {
        return Err(Error::InvalidSpec(format!(
            "{}: {}",
            v.state, v.description
        )));
    }
    let mut states = Vec::new();
    let mut accepting = Vec::new();
    let mut state_of = BTreeMap::new();
    let mut transitions = Vec::new();
    for c in &s.classes {
        for side in [Side::Left, Side::Right] {
            let Some(map) = c.side(side) else { continue };
            let r = SideRef::new(&c.id, side);
            let name = state_name(&r);
            for &letter in s.alphabet.letters() {
                transitions.push(Transition::new(
                    &name,
                    side.head(),
                    letter,
                    &state_name(&map[&letter]),
                ));
            }
            if c.accepting {
                accepting.push(name.clone());
            }
            states.push(name.clone());
            state_of.insert(r, name);
        }
    }
    let automaton = LinearAutomaton::new(
        s.alphabet.clone(),
        states,
        &state_name(&s.initial),
        &accepting,
        &transitions,
    )?;
    Ok(SynthesisResult {
        automaton,
        state_of,
    })
}

/// Reads a spec off a complete deterministic automaton: reachable states are
/// grouped by bounded equivalence, each group is a class named after its first
/// state, and each state becomes the side of its head. When several states of
/// one group use the same head, the first one defines the side.
pub fn derive_bc_spec(a: &LinearAutomaton, mid_bound: usize, budget: Budget) -> Result<BCSpec> {
    a.require_complete(true)?;
    let groups = equivalent_state_groups(a, &reachable_states(a), mid_bound, budget)?;
    let mut class_of = HashMap::new();
    for g in &groups {
        let id = a.name(g[0]);
        for &q in g {
            if a.is_accepting(q) != a.is_accepting(g[0]) {
                return Err(Error::AcceptanceConflict(
                    id.to_string(),
                    a.name(q).to_string(),
                ));
            }
            class_of.insert(q, id.to_string());
        }
    }
    let side_ref = |q| {
        let head = a.active_head(q).expect("complete on reachable states");
        SideRef(class_of[&q].clone(), Side::of(head))
    };
    let mut classes = Vec::new();
    for g in &groups {
        let mut class = ClassSpec {
            id: class_of[&g[0]].clone(),
            accepting: a.is_accepting(g[0]),
            left: None,
            right: None,
        };
        for &q in g {
            let head = a.active_head(q).expect("complete on reachable states");
            let slot = match head {
                Head::Left => &mut class.left,
                Head::Right => &mut class.right,
            };
            if slot.is_none() {
                *slot = Some(
                    a.alphabet()
                        .letters()
                        .iter()
                        .map(|&c| (c, side_ref(a.targets(q, head, c)[0])))
                        .collect(),
                );
            }
        }
        classes.push(class);
    }
    Ok(BCSpec {
        alphabet: a.alphabet().clone(),
        initial: side_ref(a.initial()),
        classes,
    })
}

/// Derives a spec from `a`, rebuilds an automaton from it and compares the two
/// languages on all words up to `bound`.
pub fn roundtrip_check(
    a: &LinearAutomaton,
    bound: usize,
    mid_bound: usize,
    budget: Budget,
) -> Result<ValidationReport> {
    let spec = derive_bc_spec(a, mid_bound, budget)?;
    let built = build_automaton(&spec)?;
    let verdict = equiv_bounded(a, &built.automaton, bound, budget)?;
    let violations = match verdict.witness {
        None => Vec::new(),
        Some(w) => vec![Violation {
            state: a.name(a.initial()).to_string(),
            description: format!("languages differ on \"{w}\""),
        }],
    };
    Ok(ValidationReport::from_violations(violations))
}
