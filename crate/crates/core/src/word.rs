use std::cmp::Ordering;
use std::fmt;

use crate::alphabet::Symbol;

/// A finite word: a sequence of [`Symbol`]s from one alphabet.
///
/// Words order by length first, then lexicographically by symbol order. That
/// ordering is the canonical enumeration order everywhere in the crate.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<Symbol>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_vec(symbols: Vec<Symbol>) -> Self {
        Word(symbols)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn appended(&self, s: Symbol) -> Word {
        let mut v = self.0.clone();
        v.push(s);
        Word(v)
    }

    pub fn prepended(&self, s: Symbol) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(s);
        v.extend_from_slice(&self.0);
        Word(v)
    }

    /// The prefix of length `n`; `n` must not exceed the length.
    pub fn prefix(&self, n: usize) -> Word {
        Word(self.0[..n].to_vec())
    }

    /// The suffix of length `n`; `n` must not exceed the length.
    pub fn suffix(&self, n: usize) -> Word {
        Word(self.0[self.0.len() - n..].to_vec())
    }

    /// The factor of length `len` starting at `start`.
    pub fn slice(&self, start: usize, len: usize) -> Word {
        Word(self.0[start..start + len].to_vec())
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn starts_with(&self, prefix: &Word) -> bool {
        self.0.len() >= prefix.0.len() && self.0[..prefix.0.len()] == prefix.0[..]
    }

    pub fn ends_with(&self, suffix: &Word) -> bool {
        self.0.len() >= suffix.0.len() && self.0[self.0.len() - suffix.0.len()..] == suffix.0[..]
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl FromIterator<Symbol> for Word {
    fn from_iter<T: IntoIterator<Item = Symbol>>(iter: T) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "λ");
        }
        for s in &self.0 {
            write!(f, "{}·", s.index())?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;

    #[test]
    fn length_then_lex_order() {
        let al = Alphabet::new(&["a", "b"], &[("a", "b")], false).unwrap();
        let mut words: Vec<Word> = ["b", "aa", "a", "", "ab", "ba"]
            .iter()
            .map(|t| al.parse_word(t).unwrap())
            .collect();
        words.sort();
        let rendered: Vec<String> = words.iter().map(|w| al.format_word(w)).collect();
        assert_eq!(rendered, vec!["λ", "a", "b", "aa", "ab", "ba"]);
    }

    #[test]
    fn slicing() {
        let al = Alphabet::new(&["a", "b"], &[("a", "b")], false).unwrap();
        let w = al.parse_word("abba").unwrap();
        assert_eq!(al.format_word(&w.prefix(2)), "ab");
        assert_eq!(al.format_word(&w.suffix(3)), "bba");
        assert_eq!(al.format_word(&w.slice(1, 2)), "bb");
        assert_eq!(al.format_word(&w.reversed()), "abba");
        assert!(w.starts_with(&w.prefix(0)));
        assert!(w.ends_with(&w.suffix(4)));
        assert!(!w.starts_with(&al.parse_word("b").unwrap()));
    }
}
