//! Brute-force ground truth over bounded word sets.
//!
//! Every verdict here is relative to an explicit length bound and carries it;
//! none of them decides unbounded equivalence.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::automaton::{LinearAutomaton, StateId};
use crate::error::{Error, Result};
use crate::runner::{run, run_from};
use crate::word::{Alphabet, Presu};

/// Maximum number of membership tests one oracle call may perform.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget(pub u64);

impl Default for Budget {
    fn default() -> Self {
        Budget(10_000_000)
    }
}

impl Budget {
    pub fn check(self, needed: u128) -> Result<()> {
        if needed > self.0 as u128 {
            Err(Error::BudgetExceeded {
                needed,
                budget: self.0,
            })
        } else {
            Ok(())
        }
    }
}

/// A membership test over a fixed alphabet.
pub trait LanguagePredicate {
    fn alphabet(&self) -> &Alphabet;

    fn contains(&self, w: &str) -> bool;

    /// All members of length at most `maxlen`, for languages sparse enough to
    /// list directly. `None` means the caller has to enumerate and test.
    fn members_up_to(&self, _maxlen: usize) -> Option<Vec<String>> {
        None
    }
}

/// The language of a deterministic automaton.
pub struct AutomatonLanguage<'a>(pub &'a LinearAutomaton);

impl LanguagePredicate for AutomatonLanguage<'_> {
    fn alphabet(&self) -> &Alphabet {
        self.0.alphabet()
    }

    fn contains(&self, w: &str) -> bool {
        run(self.0, w).map(|t| t.accepted).unwrap_or(false)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BuiltinKind {
    Palindromes,
    EvenPalindromes,
    /// 1ⁿ0³ⁿ
    OnesThenTripleZeros,
    /// aⁿbⁿcⁿ
    AnBnCn,
    Everything,
    Nothing,
}

impl BuiltinKind {
    pub const ALL: [BuiltinKind; 6] = [
        BuiltinKind::Palindromes,
        BuiltinKind::EvenPalindromes,
        BuiltinKind::OnesThenTripleZeros,
        BuiltinKind::AnBnCn,
        BuiltinKind::Everything,
        BuiltinKind::Nothing,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BuiltinKind::Palindromes => "pal",
            BuiltinKind::EvenPalindromes => "evenpal",
            BuiltinKind::OnesThenTripleZeros => "1n03n",
            BuiltinKind::AnBnCn => "anbncn",
            BuiltinKind::Everything => "all",
            BuiltinKind::Nothing => "none",
        }
    }

    pub fn default_alphabet(self) -> Alphabet {
        let letters: &[char] = match self {
            BuiltinKind::Palindromes | BuiltinKind::AnBnCn => &['a', 'b', 'c'],
            BuiltinKind::EvenPalindromes | BuiltinKind::Everything | BuiltinKind::Nothing => {
                &['a', 'b']
            }
            BuiltinKind::OnesThenTripleZeros => &['0', '1'],
        };
        Alphabet::new(letters.iter().copied()).expect("builtin alphabets are valid")
    }
}

impl fmt::Display for BuiltinKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BuiltinKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BuiltinKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Parse {
                field: "lang".into(),
                message: format!(
                    "unknown language \"{s}\" (expected one of: {})",
                    BuiltinKind::ALL.map(|k| k.name()).join(", ")
                ),
            })
    }
}

/// One of the shipped example languages.
#[derive(Clone, Debug)]
pub struct Builtin {
    kind: BuiltinKind,
    alphabet: Alphabet,
}

impl Builtin {
    pub fn new(kind: BuiltinKind) -> Self {
        Builtin {
            kind,
            alphabet: kind.default_alphabet(),
        }
    }

    /// Palindromes, Σ* and ∅ work over any alphabet; the counting languages
    /// need their own letters.
    pub fn with_alphabet(kind: BuiltinKind, alphabet: Alphabet) -> Result<Self> {
        let needs: &[char] = match kind {
            BuiltinKind::OnesThenTripleZeros => &['0', '1'],
            BuiltinKind::AnBnCn => &['a', 'b', 'c'],
            _ => &[],
        };
        if let Some(&c) = needs.iter().find(|&&c| !alphabet.contains(c)) {
            return Err(Error::Parse {
                field: "alphabet".into(),
                message: format!("language {kind} needs letter '{c}'"),
            });
        }
        Ok(Builtin { kind, alphabet })
    }

    pub fn kind(&self) -> BuiltinKind {
        self.kind
    }

    fn palindromes_of_len(&self, len: usize, out: &mut Vec<String>) {
        for half in self.alphabet.words_of_len(len / 2) {
            let middles: Vec<String> = if len % 2 == 1 {
                self.alphabet
                    .letters()
                    .iter()
                    .map(|c| c.to_string())
                    .collect()
            } else {
                vec![String::new()]
            };
            let rev: String = half.chars().rev().collect();
            for m in middles {
                out.push(format!("{half}{m}{rev}"));
            }
        }
    }
}

fn is_palindrome(w: &str) -> bool {
    w.chars().eq(w.chars().rev())
}

/// Lengths of the consecutive blocks of `letters` in `w`, or `None` when a
/// letter appears out of order.
fn blocks(w: &str, letters: &[char]) -> Option<Vec<usize>> {
    let mut counts = vec![0; letters.len()];
    let mut at = 0;
    for c in w.chars() {
        while at < letters.len() && letters[at] != c {
            at += 1;
        }
        if at == letters.len() {
            return None;
        }
        counts[at] += 1;
    }
    Some(counts)
}

impl LanguagePredicate for Builtin {
    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn contains(&self, w: &str) -> bool {
        match self.kind {
            BuiltinKind::Palindromes => is_palindrome(w),
            BuiltinKind::EvenPalindromes => w.chars().count().is_multiple_of(2) && is_palindrome(w),
            BuiltinKind::OnesThenTripleZeros => {
                matches!(blocks(w, &['1', '0']), Some(c) if c[1] == 3 * c[0])
            }
            BuiltinKind::AnBnCn => {
                matches!(blocks(w, &['a', 'b', 'c']), Some(c) if c[0] == c[1] && c[1] == c[2])
            }
            BuiltinKind::Everything => true,
            BuiltinKind::Nothing => false,
        }
    }

    fn members_up_to(&self, maxlen: usize) -> Option<Vec<String>> {
        let mut out = Vec::new();
        match self.kind {
            BuiltinKind::Palindromes | BuiltinKind::EvenPalindromes
                if self.alphabet.word_count(maxlen.div_ceil(2)) > 10_000_000 =>
            {
                return None
            }
            BuiltinKind::Palindromes => {
                for len in 0..=maxlen {
                    self.palindromes_of_len(len, &mut out);
                }
            }
            BuiltinKind::EvenPalindromes => {
                for len in (0..=maxlen).step_by(2) {
                    self.palindromes_of_len(len, &mut out);
                }
            }
            BuiltinKind::OnesThenTripleZeros => {
                for n in 0..=maxlen / 4 {
                    out.push(format!("{}{}", "1".repeat(n), "0".repeat(3 * n)));
                }
            }
            BuiltinKind::AnBnCn => {
                for n in 0..=maxlen / 3 {
                    out.push(format!(
                        "{}{}{}",
                        "a".repeat(n),
                        "b".repeat(n),
                        "c".repeat(n)
                    ));
                }
            }
            BuiltinKind::Everything => return None,
            BuiltinKind::Nothing => {}
        }
        Some(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivalenceVerdict {
    pub equivalent_up_to: bool,
    /// Length bound the verdict refers to.
    pub bound: usize,
    /// First distinguishing word in length-lex order.
    pub witness: Option<String>,
}

impl EquivalenceVerdict {
    fn from_witness(bound: usize, witness: Option<String>) -> Self {
        EquivalenceVerdict {
            equivalent_up_to: witness.is_none(),
            bound,
            witness,
        }
    }
}

/// All words up to `maxlen`, length-lex.
pub fn enumerate_words(alphabet: &Alphabet, maxlen: usize, budget: Budget) -> Result<Vec<String>> {
    budget.check(alphabet.word_count(maxlen))?;
    Ok(alphabet.words(maxlen).collect())
}

/// Compares acceptance of two deterministic automata on all words up to
/// `maxlen`.
pub fn equiv_bounded(
    a: &LinearAutomaton,
    b: &LinearAutomaton,
    maxlen: usize,
    budget: Budget,
) -> Result<EquivalenceVerdict> {
    if a.alphabet().letters() != b.alphabet().letters() {
        return Err(Error::Parse {
            field: "alphabet".into(),
            message: "automata have different alphabets".into(),
        });
    }
    a.require_deterministic()?;
    b.require_deterministic()?;
    budget.check(a.alphabet().word_count(maxlen))?;
    for w in a.alphabet().words(maxlen) {
        if run(a, &w)?.accepted != run(b, &w)?.accepted {
            return Ok(EquivalenceVerdict::from_witness(maxlen, Some(w)));
        }
    }
    Ok(EquivalenceVerdict::from_witness(maxlen, None))
}

/// Middles `w` with `|w| ≤ mid_bound` and `u·w·v ∈ L`, length-lex, from the
/// sparse member list.
fn accepting_middles(
    alphabet: &Alphabet,
    members: &[String],
    p: &Presu,
    mid_bound: usize,
) -> Vec<String> {
    let mut out: Vec<String> = members
        .iter()
        .filter(|w| w.len() >= p.prefix.len() + p.suffix.len())
        .filter(|w| w.starts_with(&p.prefix) && w.ends_with(&p.suffix))
        .map(|w| w[p.prefix.len()..w.len() - p.suffix.len()].to_string())
        .filter(|m| m.chars().count() <= mid_bound)
        .collect();
    out.sort_by(|x, y| alphabet.cmp_words(x, y));
    out.dedup();
    out
}

/// Tests `u₁wv₁ ∈ L ⇔ u₂wv₂ ∈ L` for every middle `w` up to `mid_bound`.
///
/// Languages that list their members are compared through their accepting
/// middles; the witness is still the length-lex first distinguishing middle.
pub fn presu_equiv_bounded(
    lang: &dyn LanguagePredicate,
    p1: &Presu,
    p2: &Presu,
    mid_bound: usize,
    budget: Budget,
) -> Result<EquivalenceVerdict> {
    let alphabet = lang.alphabet();
    alphabet.check_word(&p1.word())?;
    alphabet.check_word(&p2.word())?;
    if p1 == p2 {
        return Ok(EquivalenceVerdict::from_witness(mid_bound, None));
    }
    let longest = p1.len().max(p2.len()) + mid_bound;
    let Some(members) = lang.members_up_to(longest) else {
        return presu_equiv_dense(lang, p1, p2, mid_bound, budget);
    };
    budget.check(members.len() as u128)?;
    let m1 = accepting_middles(alphabet, &members, p1, mid_bound);
    let m2 = accepting_middles(alphabet, &members, p2, mid_bound);
    let only_in = |xs: &[String], ys: &[String]| -> Option<String> {
        xs.iter()
            .find(|w| ys.binary_search_by(|y| alphabet.cmp_words(y, w)).is_err())
            .cloned()
    };
    let witness = match (only_in(&m1, &m2), only_in(&m2, &m1)) {
        (Some(x), Some(y)) => Some(std::cmp::min_by(x, y, |x, y| alphabet.cmp_words(x, y))),
        (x, y) => x.or(y),
    };
    Ok(EquivalenceVerdict::from_witness(mid_bound, witness))
}

/// Plain enumeration of all middles.
fn presu_equiv_dense(
    lang: &dyn LanguagePredicate,
    p1: &Presu,
    p2: &Presu,
    mid_bound: usize,
    budget: Budget,
) -> Result<EquivalenceVerdict> {
    let alphabet = lang.alphabet();
    budget.check(alphabet.word_count(mid_bound).saturating_mul(2))?;
    let witness = alphabet
        .words(mid_bound)
        .find(|w| lang.contains(&p1.wrap(w)) != lang.contains(&p2.wrap(w)));
    Ok(EquivalenceVerdict::from_witness(mid_bound, witness))
}

/// Compares the runs started in `s1` and in `s2` on every middle up to
/// `mid_bound`.
pub fn state_equiv_bounded(
    a: &LinearAutomaton,
    s1: StateId,
    s2: StateId,
    mid_bound: usize,
    budget: Budget,
) -> Result<EquivalenceVerdict> {
    a.require_deterministic()?;
    if s1 == s2 {
        return Ok(EquivalenceVerdict::from_witness(mid_bound, None));
    }
    budget.check(a.alphabet().word_count(mid_bound).saturating_mul(2))?;
    for w in a.alphabet().words(mid_bound) {
        if run_from(a, s1, &w)?.accepted != run_from(a, s2, &w)?.accepted {
            return Ok(EquivalenceVerdict::from_witness(mid_bound, Some(w)));
        }
    }
    Ok(EquivalenceVerdict::from_witness(mid_bound, None))
}

/// Partitions the presus `(prefix_stubᵐ, suffix_stubᵏ)`, `0 ≤ m, k ≤ max_power`,
/// by bounded presu equivalence and returns the number of cells.
pub fn class_growth_probe(
    lang: &dyn LanguagePredicate,
    prefix_stub: &str,
    suffix_stub: &str,
    max_power: usize,
    mid_bound: usize,
    budget: Budget,
) -> Result<usize> {
    Ok(probe_partition(lang, prefix_stub, suffix_stub, max_power, mid_bound, budget)?.len())
}

/// The cells found by [`class_growth_probe`], each in discovery order.
pub fn probe_partition(
    lang: &dyn LanguagePredicate,
    prefix_stub: &str,
    suffix_stub: &str,
    max_power: usize,
    mid_bound: usize,
    budget: Budget,
) -> Result<Vec<Vec<Presu>>> {
    let mut cells: Vec<Vec<Presu>> = Vec::new();
    for m in 0..=max_power {
        for k in 0..=max_power {
            let p = Presu::new(prefix_stub.repeat(m), suffix_stub.repeat(k));
            let mut placed = false;
            for cell in cells.iter_mut() {
                if presu_equiv_bounded(lang, &cell[0], &p, mid_bound, budget)?.equivalent_up_to {
                    cell.push(p.clone());
                    placed = true;
                    break;
                }
            }
            if !placed {
                cells.push(vec![p]);
            }
        }
    }
    Ok(cells)
}
