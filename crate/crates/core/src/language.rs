use std::collections::btree_set;
use std::collections::{BTreeMap, BTreeSet};

use serde_json::Value;

use crate::alphabet::{Alphabet, Symbol};
use crate::word::Word;

/// A finite set of words, deduplicated and iterated in length-then-lex order.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct LanguageSet(BTreeSet<Word>);

impl LanguageSet {
    pub fn new() -> Self {
        LanguageSet(BTreeSet::new())
    }

    pub fn singleton(w: Word) -> Self {
        let mut s = BTreeSet::new();
        s.insert(w);
        LanguageSet(s)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.0.contains(w)
    }

    /// Inserts `w`, reporting whether it was new.
    pub fn insert(&mut self, w: Word) -> bool {
        self.0.insert(w)
    }

    pub fn iter(&self) -> btree_set::Iter<'_, Word> {
        self.0.iter()
    }

    pub fn union_with(&mut self, other: &LanguageSet) {
        for w in &other.0 {
            self.0.insert(w.clone());
        }
    }

    pub fn is_subset(&self, other: &LanguageSet) -> bool {
        self.0.is_subset(&other.0)
    }

    /// Words present in exactly one of the two sets, in canonical order.
    pub fn symmetric_difference(&self, other: &LanguageSet) -> LanguageSet {
        LanguageSet(self.0.symmetric_difference(&other.0).cloned().collect())
    }

    /// Keeps only words of length at most `max_len`.
    pub fn truncated(&self, max_len: usize) -> LanguageSet {
        LanguageSet(self.0.iter().filter(|w| w.len() <= max_len).cloned().collect())
    }

    pub fn to_json(&self, alphabet: &Alphabet) -> Value {
        Value::Array(self.0.iter().map(|w| alphabet.word_to_json(w)).collect())
    }

    pub fn format(&self, alphabet: &Alphabet) -> Vec<String> {
        self.0.iter().map(|w| alphabet.format_word(w)).collect()
    }
}

impl FromIterator<Word> for LanguageSet {
    fn from_iter<T: IntoIterator<Item = Word>>(iter: T) -> Self {
        LanguageSet(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a LanguageSet {
    type Item = &'a Word;
    type IntoIter = btree_set::Iter<'a, Word>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// Infixes of one exact length together with the cumulative prefix and
/// suffix sets, as produced by [`factor_sets`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FactorSets {
    /// All factors of exactly length `k` (empty when `k > |w|`).
    pub infixes: LanguageSet,
    /// All prefixes of length at most `k`, always including λ.
    pub prefixes: LanguageSet,
    /// All suffixes of length at most `k`, always including λ.
    pub suffixes: LanguageSet,
}

/// Computes `Inf_k(w)`, `Pref_{≤k}(w)` and `Suf_{≤k}(w)` in one pass.
pub fn factor_sets(w: &Word, k: usize) -> FactorSets {
    let mut infixes = LanguageSet::new();
    if k <= w.len() {
        for start in 0..=w.len() - k {
            infixes.insert(w.slice(start, k));
        }
    }
    let mut prefixes = LanguageSet::new();
    let mut suffixes = LanguageSet::new();
    for n in 0..=k.min(w.len()) {
        prefixes.insert(w.prefix(n));
        suffixes.insert(w.suffix(n));
    }
    FactorSets {
        infixes,
        prefixes,
        suffixes,
    }
}

/// All circular permutations (rotations) of `w`; duplicates collapse.
pub fn circular_permutations(w: &Word) -> LanguageSet {
    if w.is_empty() {
        return LanguageSet::singleton(Word::empty());
    }
    (0..w.len())
        .map(|i| w.suffix(w.len() - i).concat(&w.prefix(i)))
        .collect()
}

/// Rotations of every word of `lang`.
pub fn circular_permutations_set(lang: &LanguageSet) -> LanguageSet {
    let mut out = LanguageSet::new();
    for w in lang {
        out.union_with(&circular_permutations(w));
    }
    out
}

/// Left derivative `prefix \ lang = { x | prefix·x ∈ lang }`.
pub fn left_derivative(prefix: &Word, lang: &LanguageSet) -> LanguageSet {
    lang.iter()
        .filter(|w| w.starts_with(prefix))
        .map(|w| w.suffix(w.len() - prefix.len()))
        .collect()
}

/// Right derivative `lang / suffix = { x | x·suffix ∈ lang }`.
pub fn right_derivative(suffix: &Word, lang: &LanguageSet) -> LanguageSet {
    lang.iter()
        .filter(|w| w.ends_with(suffix))
        .map(|w| w.prefix(w.len() - suffix.len()))
        .collect()
}

/// Finite substitution: every symbol maps to the finite language `images`
/// assigns it, defaulting to itself when unmapped.
pub fn substitute(lang: &LanguageSet, images: &BTreeMap<Symbol, LanguageSet>) -> LanguageSet {
    let mut out = LanguageSet::new();
    for w in lang {
        let mut partial: Vec<Word> = vec![Word::empty()];
        for &s in w.symbols() {
            match images.get(&s) {
                None => {
                    for p in &mut partial {
                        *p = p.appended(s);
                    }
                }
                Some(set) => {
                    let mut next = Vec::with_capacity(partial.len() * set.len().max(1));
                    for p in &partial {
                        for img in set {
                            next.push(p.concat(img));
                        }
                    }
                    partial = next;
                }
            }
        }
        for p in partial {
            out.insert(p);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;

    fn ab() -> Alphabet {
        Alphabet::new(&["a", "b"], &[("a", "b")], false).unwrap()
    }

    fn lang(al: &Alphabet, words: &[&str]) -> LanguageSet {
        words.iter().map(|t| al.parse_word(t).unwrap()).collect()
    }

    #[test]
    fn factor_sets_of_abab() {
        let al = ab();
        let w = al.parse_word("abab").unwrap();
        let f = factor_sets(&w, 2);
        assert_eq!(f.infixes, lang(&al, &["ab", "ba"]));
        assert_eq!(f.prefixes, lang(&al, &["", "a", "ab"]));
        assert_eq!(f.suffixes, lang(&al, &["", "b", "ab"]));
    }

    #[test]
    fn factor_sets_edges() {
        let al = ab();
        let w = al.parse_word("ab").unwrap();
        let f = factor_sets(&w, 0);
        assert_eq!(f.infixes, lang(&al, &[""]));
        assert_eq!(f.prefixes, lang(&al, &[""]));
        assert_eq!(f.suffixes, lang(&al, &[""]));
        let f = factor_sets(&w, 5);
        assert!(f.infixes.is_empty());
        assert_eq!(f.prefixes, lang(&al, &["", "a", "ab"]));
        assert_eq!(f.suffixes, lang(&al, &["", "b", "ab"]));
    }

    #[test]
    fn rotations() {
        let al = ab();
        let w = al.parse_word("aab").unwrap();
        assert_eq!(circular_permutations(&w), lang(&al, &["aab", "aba", "baa"]));
        let w = al.parse_word("abab").unwrap();
        assert_eq!(circular_permutations(&w), lang(&al, &["abab", "baba"]));
        assert_eq!(circular_permutations(&Word::empty()), lang(&al, &[""]));
    }

    #[test]
    fn derivative() {
        let al = ab();
        let p = al.parse_word("ab").unwrap();
        let l = lang(&al, &["aab", "abb", "abba", "b"]);
        assert_eq!(left_derivative(&p, &l), lang(&al, &["b", "ba"]));
        assert_eq!(left_derivative(&Word::empty(), &l), l);
    }

    #[test]
    fn substitution() {
        let al = ab();
        let a = al.symbol("a").unwrap();
        let mut images = BTreeMap::new();
        images.insert(a, lang(&al, &["b", "bb"]));
        let l = lang(&al, &["ab", "ba"]);
        assert_eq!(substitute(&l, &images), lang(&al, &["bb", "bb", "bbb", "bbb"]));
        let empty_image: BTreeMap<Symbol, LanguageSet> = BTreeMap::new();
        assert_eq!(substitute(&l, &empty_image), l);
    }

    #[test]
    fn substitution_distributes_over_union() {
        let al = ab();
        let a = al.symbol("a").unwrap();
        let mut images = BTreeMap::new();
        images.insert(a, lang(&al, &["", "ab"]));
        let l1 = lang(&al, &["aa", "b"]);
        let l2 = lang(&al, &["ab"]);
        let mut union = l1.clone();
        union.union_with(&l2);
        let mut expected = substitute(&l1, &images);
        expected.union_with(&substitute(&l2, &images));
        assert_eq!(substitute(&union, &images), expected);
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn word_over_ab() -> impl Strategy<Value = Word> {
            proptest::collection::vec(0u32..2, 0..10).prop_map(|codes| {
                let al = ab();
                let syms: Vec<Symbol> = al.symbols().collect();
                codes.into_iter().map(|c| syms[c as usize]).collect()
            })
        }

        proptest! {
            #[test]
            fn derivatives_peel_concatenations(u in word_over_ab(), v in word_over_ab()) {
                let joined = LanguageSet::singleton(u.concat(&v));
                prop_assert_eq!(left_derivative(&u, &joined), LanguageSet::singleton(v.clone()));
                prop_assert_eq!(right_derivative(&v, &joined), LanguageSet::singleton(u));
            }

            #[test]
            fn rotation_sets_are_rotation_closed(w in word_over_ab()) {
                let rotations = circular_permutations(&w);
                for r in &rotations {
                    prop_assert_eq!(&circular_permutations(r), &rotations);
                }
            }

            #[test]
            fn truncation_never_adds_words(u in word_over_ab(), v in word_over_ab(), cut in 0usize..8) {
                let mut l = LanguageSet::singleton(u);
                l.insert(v);
                let t = l.truncated(cut);
                prop_assert!(t.is_subset(&l));
                prop_assert!(t.iter().all(|w| w.len() <= cut));
            }
        }
    }
}
