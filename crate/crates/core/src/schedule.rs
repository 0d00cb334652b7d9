//! Fixed-rate head schedules: for a rate `m/n` the heads alternate as
//! `n` left steps followed by `m` right steps, repeated until the heads meet.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::automaton::{Head, LinearAutomaton};
use crate::error::{Error, Result};
use crate::runner::run;

/// `m/n` in lowest terms. `0/1` is the regular case where only the left head
/// moves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Rate {
    m: u32,
    n: u32,
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl Rate {
    pub fn new(m: u32, n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidRate(format!(
                "{m}/{n}: denominator must be positive"
            )));
        }
        let g = gcd(m, n);
        Ok(Rate { m: m / g, n: n / g })
    }

    /// Right steps per block.
    pub fn right_steps(self) -> u32 {
        self.m
    }

    /// Left steps per block.
    pub fn left_steps(self) -> u32 {
        self.n
    }

    pub fn head_at(self, i: usize) -> Head {
        let block = (self.m + self.n) as usize;
        if i % block < self.n as usize {
            Head::Left
        } else {
            Head::Right
        }
    }
}

impl fmt::Display for Rate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.m, self.n)
    }
}

impl FromStr for Rate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidRate(format!("\"{s}\" is not of the form m/n"));
        let (m, n) = match s.split_once('/') {
            Some((m, n)) => (m.trim(), n.trim()),
            None => (s.trim(), "1"),
        };
        Rate::new(m.parse().map_err(|_| bad())?, n.parse().map_err(|_| bad())?)
    }
}

/// The first `len` heads of `(Leftⁿ Rightᵐ)^ω`.
pub fn schedule_for(r: Rate, len: usize) -> Vec<Head> {
    (0..len).map(|i| r.head_at(i)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScheduleViolation {
    pub word: String,
    /// 1-based step number.
    pub step: usize,
    pub expected: Head,
    pub actual: Head,
}

/// First deviation from the schedule for each word. A run that gets stuck is
/// only compared on the steps it made.
pub fn check_conformance(
    a: &LinearAutomaton,
    r: Rate,
    words: &[String],
) -> Result<Vec<ScheduleViolation>> {
    let mut out = Vec::new();
    for w in words {
        let t = run(a, w)?;
        let deviation = t.heads().enumerate().find(|&(i, h)| h != r.head_at(i));
        if let Some((i, actual)) = deviation {
            out.push(ScheduleViolation {
                word: w.clone(),
                step: i + 1,
                expected: r.head_at(i),
                actual,
            });
        }
    }
    Ok(out)
}
