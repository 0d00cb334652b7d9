//! Alphabets, words and prefix-suffix pairs.
//!
//! Words are plain `String`s whose `char`s are letters of an [`Alphabet`].
//! Orderings that show up in output (word enumeration, class listings) are
//! length-lexicographic with respect to the alphabet's declaration order, not
//! Unicode order.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A non-empty, duplicate-free list of letters in declaration order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<char>", into = "Vec<char>")]
pub struct Alphabet {
    letters: Vec<char>,
    #[serde(skip)]
    rank: HashMap<char, usize>,
}

impl Alphabet {
    pub fn new(letters: impl IntoIterator<Item = char>) -> Result<Self> {
        let letters: Vec<char> = letters.into_iter().collect();
        if letters.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        let mut rank = HashMap::with_capacity(letters.len());
        for (i, &c) in letters.iter().enumerate() {
            if rank.insert(c, i).is_some() {
                return Err(Error::DuplicateLetter(c));
            }
        }
        Ok(Alphabet { letters, rank })
    }

    /// Parses `"abc"` or `"a,b,c"`.
    pub fn parse(text: &str) -> Result<Self> {
        if text.contains(',') {
            let mut letters = Vec::new();
            for part in text.split(',') {
                let mut chars = part.trim().chars();
                match (chars.next(), chars.next()) {
                    (Some(c), None) => letters.push(c),
                    _ => {
                        return Err(Error::Parse {
                            field: "alphabet".into(),
                            message: format!("\"{part}\" is not a single letter"),
                        })
                    }
                }
            }
            Alphabet::new(letters)
        } else {
            Alphabet::new(text.chars())
        }
    }

    pub fn letters(&self) -> &[char] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn contains(&self, c: char) -> bool {
        self.rank.contains_key(&c)
    }

    pub fn rank(&self, c: char) -> Option<usize> {
        self.rank.get(&c).copied()
    }

    pub fn check_word(&self, w: &str) -> Result<()> {
        match w.chars().find(|c| !self.contains(*c)) {
            Some(c) => Err(Error::ForeignLetter(c)),
            None => Ok(()),
        }
    }

    /// Length-lexicographic comparison using declaration order. Letters outside
    /// the alphabet sort after all known letters.
    pub fn cmp_words(&self, a: &str, b: &str) -> Ordering {
        let la = a.chars().count();
        let lb = b.chars().count();
        la.cmp(&lb).then_with(|| {
            let key = |c: char| self.rank(c).unwrap_or(usize::MAX);
            a.chars().map(key).cmp(b.chars().map(key))
        })
    }

    /// Total length first, then prefix, then suffix, each length-lex.
    pub fn cmp_presus(&self, a: &Presu, b: &Presu) -> Ordering {
        a.len()
            .cmp(&b.len())
            .then_with(|| self.cmp_words(&a.prefix, &b.prefix))
            .then_with(|| self.cmp_words(&a.suffix, &b.suffix))
    }

    /// Number of words of length at most `maxlen`, saturating.
    pub fn word_count(&self, maxlen: usize) -> u128 {
        let k = self.len() as u128;
        let mut total: u128 = 0;
        let mut level: u128 = 1;
        for _ in 0..=maxlen {
            total = total.saturating_add(level);
            level = level.saturating_mul(k);
        }
        total
    }

    /// Iterates all words of length `0..=maxlen` in length-lex order.
    pub fn words(&self, maxlen: usize) -> WordIter<'_> {
        WordIter {
            alphabet: self,
            maxlen,
            digits: Vec::new(),
            done: false,
        }
    }

    /// Iterates all words of exactly `len` letters in lex order.
    pub fn words_of_len(&self, len: usize) -> impl Iterator<Item = String> + '_ {
        let mut it = self.words(len);
        it.digits = vec![0; len];
        it
    }
}

impl TryFrom<Vec<char>> for Alphabet {
    type Error = Error;

    fn try_from(v: Vec<char>) -> Result<Self> {
        Alphabet::new(v)
    }
}

impl From<Alphabet> for Vec<char> {
    fn from(a: Alphabet) -> Self {
        a.letters
    }
}

/// Length-lex word enumeration as an odometer over letter indices.
pub struct WordIter<'a> {
    alphabet: &'a Alphabet,
    maxlen: usize,
    digits: Vec<usize>,
    done: bool,
}

impl Iterator for WordIter<'_> {
    type Item = String;

    fn next(&mut self) -> Option<String> {
        if self.done {
            return None;
        }
        let word: String = self
            .digits
            .iter()
            .map(|&d| self.alphabet.letters[d])
            .collect();
        // advance
        let k = self.alphabet.len();
        let mut i = self.digits.len();
        loop {
            if i == 0 {
                if self.digits.len() == self.maxlen {
                    self.done = true;
                } else {
                    let len = self.digits.len() + 1;
                    self.digits = vec![0; len];
                }
                break;
            }
            i -= 1;
            self.digits[i] += 1;
            if self.digits[i] < k {
                break;
            }
            self.digits[i] = 0;
        }
        Some(word)
    }
}

/// A prefix-suffix pair: the word `prefix · suffix` together with the
/// information of which head read which part of it.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Presu {
    pub prefix: String,
    pub suffix: String,
}

impl Presu {
    pub fn new(prefix: impl Into<String>, suffix: impl Into<String>) -> Self {
        Presu {
            prefix: prefix.into(),
            suffix: suffix.into(),
        }
    }

    pub fn empty() -> Self {
        Presu::new("", "")
    }

    /// Total number of letters.
    pub fn len(&self) -> usize {
        self.prefix.chars().count() + self.suffix.chars().count()
    }

    pub fn is_empty(&self) -> bool {
        self.prefix.is_empty() && self.suffix.is_empty()
    }

    pub fn word(&self) -> String {
        format!("{}{}", self.prefix, self.suffix)
    }

    /// `prefix · middle · suffix`
    pub fn wrap(&self, middle: &str) -> String {
        format!("{}{}{}", self.prefix, middle, self.suffix)
    }
}

/// Renders the empty word as `λ`.
pub struct ShowWord<'a>(pub &'a str);

impl fmt::Display for ShowWord<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            f.write_str("λ")
        } else {
            f.write_str(self.0)
        }
    }
}

impl fmt::Display for Presu {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", ShowWord(&self.prefix), ShowWord(&self.suffix))
    }
}
