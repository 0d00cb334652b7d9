//! Two-head computation semantics.
//!
//! A configuration indexes into the original input: the unread infix is
//! `input[lo..hi]`, the left head reads `input[lo]` and the right head reads
//! `input[hi - 1]`.

use std::fmt;

use serde::Serialize;

use crate::automaton::{Head, LinearAutomaton, StateId, ValidationReport, Violation};
use crate::error::Result;
use crate::word::{Presu, ShowWord};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Configuration {
    pub state: StateId,
    pub lo: usize,
    pub hi: usize,
}

impl Configuration {
    pub fn start(state: StateId, len: usize) -> Self {
        Configuration {
            state,
            lo: 0,
            hi: len,
        }
    }

    pub fn heads_met(&self) -> bool {
        self.lo == self.hi
    }
}

/// All successors of `c` on `input`. With one letter left both heads are
/// candidates since that letter is leftmost and rightmost at once.
pub fn step(
    a: &LinearAutomaton,
    c: Configuration,
    input: &[char],
) -> Vec<(Configuration, Head, char)> {
    let mut out = Vec::new();
    if c.heads_met() {
        return out;
    }
    let left = input[c.lo];
    for &t in a.targets(c.state, Head::Left, left) {
        out.push((
            Configuration {
                state: t,
                lo: c.lo + 1,
                hi: c.hi,
            },
            Head::Left,
            left,
        ));
    }
    let right = input[c.hi - 1];
    for &t in a.targets(c.state, Head::Right, right) {
        out.push((
            Configuration {
                state: t,
                lo: c.lo,
                hi: c.hi - 1,
            },
            Head::Right,
            right,
        ));
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Step {
    pub from: StateId,
    pub head: Head,
    pub letter: char,
    pub to: StateId,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunTrace {
    pub input: String,
    pub start: StateId,
    pub steps: Vec<Step>,
    pub final_state: StateId,
    pub accepted: bool,
    /// Letters read by the left head, and by the right head in input order.
    pub split: Presu,
    /// Set when no transition applied before the heads met.
    pub stuck: Option<Configuration>,
}

impl RunTrace {
    pub fn heads(&self) -> impl Iterator<Item = Head> + '_ {
        self.steps.iter().map(|s| s.head)
    }

    pub fn states(&self) -> Vec<StateId> {
        std::iter::once(self.start)
            .chain(self.steps.iter().map(|s| s.to))
            .collect()
    }

    pub fn display<'a>(&'a self, a: &'a LinearAutomaton) -> TraceDisplay<'a> {
        TraceDisplay { trace: self, a }
    }
}

pub struct TraceDisplay<'a> {
    trace: &'a RunTrace,
    a: &'a LinearAutomaton,
}

impl fmt::Display for TraceDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = self.trace;
        writeln!(f, "{}", if t.accepted { "ACCEPT" } else { "REJECT" })?;
        writeln!(f, "split: {}", t.split)?;
        for s in &t.steps {
            writeln!(
                f,
                "{} --{}:{}--> {}",
                self.a.name(s.from),
                s.head,
                s.letter,
                self.a.name(s.to)
            )?;
        }
        if let Some(c) = t.stuck {
            let rest: String = t.input.chars().skip(c.lo).take(c.hi - c.lo).collect();
            writeln!(
                f,
                "stuck in {} with {} unread",
                self.a.name(c.state),
                ShowWord(&rest)
            )?;
        }
        Ok(())
    }
}

/// Runs a deterministic automaton on `w` from its initial state.
pub fn run(a: &LinearAutomaton, w: &str) -> Result<RunTrace> {
    run_from(a, a.initial(), w)
}

/// Runs a deterministic automaton on `w` starting in `start`.
pub fn run_from(a: &LinearAutomaton, start: StateId, w: &str) -> Result<RunTrace> {
    a.require_deterministic()?;
    a.alphabet().check_word(w)?;
    let input: Vec<char> = w.chars().collect();
    let mut c = Configuration::start(start, input.len());
    let mut steps = Vec::with_capacity(input.len());
    let mut stuck = None;
    while !c.heads_met() {
        let next = step(a, c, &input);
        debug_assert!(next.len() <= 1, "deterministic run branched");
        match next.first() {
            Some(&(n, head, letter)) => {
                steps.push(Step {
                    from: c.state,
                    head,
                    letter,
                    to: n.state,
                });
                c = n;
            }
            None => {
                stuck = Some(c);
                break;
            }
        }
    }
    let prefix: String = input[..c.lo].iter().collect();
    let suffix: String = input[c.hi..].iter().collect();
    Ok(RunTrace {
        input: w.to_string(),
        start,
        steps,
        final_state: c.state,
        accepted: stuck.is_none() && a.is_accepting(c.state),
        split: Presu { prefix, suffix },
        stuck,
    })
}

/// The one presu `(u, v)` with `uv = w` such that the left head reads `u`
/// and the right head reads `v`.
pub fn unique_split(a: &LinearAutomaton, w: &str) -> Result<Presu> {
    a.require_complete(true)?;
    Ok(run(a, w)?.split)
}

/// Checks that inserting any of `middles` between the two parts of `w`'s split
/// leaves the first `|w|` steps unchanged: they read exactly the split and end
/// in the same state.
pub fn check_prefix_stability(
    a: &LinearAutomaton,
    w: &str,
    middles: &[String],
) -> Result<ValidationReport> {
    a.require_complete(true)?;
    let base = run(a, w)?;
    let n = base.steps.len();
    let left_count = base.split.prefix.chars().count();
    let mut violations = Vec::new();
    for m in middles {
        let t = run(a, &base.split.wrap(m))?;
        let head = &t.steps[..n.min(t.steps.len())];
        let reason = if head.len() < n {
            Some(format!("stuck after {} steps", head.len()))
        } else if head.iter().filter(|s| s.head == Head::Left).count() != left_count {
            Some("first steps read a different split".to_string())
        } else if head.last().map_or(t.start, |s| s.to) != base.final_state {
            Some(format!(
                "first {n} steps end in {}",
                a.name(head.last().map_or(t.start, |s| s.to))
            ))
        } else {
            None
        };
        if let Some(description) = reason {
            violations.push(Violation {
                state: a.name(base.final_state).to_string(),
                description: format!("middle {}: {description}", ShowWord(m)),
            });
        }
    }
    Ok(ValidationReport::from_violations(violations))
}

/// Serializable view of a trace using state names.
#[derive(Serialize)]
pub struct TraceRecord {
    pub input: String,
    pub accepted: bool,
    pub final_state: String,
    pub split: Presu,
    pub steps: Vec<StepRecord>,
    pub stuck: bool,
}

#[derive(Serialize)]
pub struct StepRecord {
    pub from: String,
    pub head: Head,
    pub letter: char,
    pub to: String,
}

impl TraceRecord {
    pub fn new(a: &LinearAutomaton, t: &RunTrace) -> Self {
        TraceRecord {
            input: t.input.clone(),
            accepted: t.accepted,
            final_state: a.name(t.final_state).to_string(),
            split: t.split.clone(),
            steps: t
                .steps
                .iter()
                .map(|s| StepRecord {
                    from: a.name(s.from).to_string(),
                    head: s.head,
                    letter: s.letter,
                    to: a.name(s.to).to_string(),
                })
                .collect(),
            stuck: t.stuck.is_some(),
        }
    }
}
