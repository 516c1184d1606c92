//! Finite word signatures deciding closure-class equivalence.
//!
//! The right signature of `w` (defined for `|w| ≥ 2k`) collects the pair set
//!
//! `C = { (xy, z) | xy an infix of w, k ≤ |xy| ≤ m+k, |y| = k,`
//! `               z a suffix of the text right of some occurrence and a`
//! `               prefix of rc(y), |z| ≤ k }`
//!
//! together with the longest suffix of length ≤ m+k−1 and the word length
//! saturated at m+2k. Two words with equal signatures have identical
//! one-step right extensions forever, which is what lets closures be
//! computed on classes instead of words.
//!
//! Signatures update incrementally: appending one symbol rewrites the pair
//! set using only the stored data (keep the `z = λ` pairs, add pairs for the
//! new suffix occurrences, extend partially matched `z`s that still agree
//! with `rc(y)`). The left signature mirrors everything for prepending, and
//! [`FullSignature`] carries both halves, cross-updating each with the other
//! half's memory so that both directions stay available.

use std::collections::BTreeSet;

use serde_json::{json, Value};

use crate::alphabet::{Alphabet, Symbol};
use crate::error::{Error, Result};
use crate::word::Word;

/// Which signature variant an operation works on.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SigMode {
    Right,
    Left,
    Full,
}

fn check_params(m: usize, k: usize) -> Result<()> {
    if m == 0 || k == 0 {
        return Err(Error::InvalidParams(format!(
            "m and k must be at least 1 (got m={m}, k={k})"
        )));
    }
    Ok(())
}

fn check_length(w: &Word, k: usize) -> Result<()> {
    if w.len() < 2 * k {
        return Err(Error::WordTooShort {
            len: w.len(),
            min: 2 * k,
        });
    }
    Ok(())
}

/// Signature for right extension.
///
/// Pairs are `(xy, z)`: `xy` an infix with final stem `y` (`|y| = k`), `z`
/// the matched prefix of `rc(y)` available as a suffix behind some
/// occurrence. `len_sat = min(|w|, m+2k)` resolves every length side
/// condition the update rules need.
#[derive(Clone, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub struct RightSignature {
    m: usize,
    k: usize,
    pairs: BTreeSet<(Word, Word)>,
    suffix_memory: Word,
    len_sat: usize,
}

/// Signature for left extension: the mirror image of [`RightSignature`].
///
/// Pairs are `(z, yx)`: `yx` an infix with leading stem `y`, `z` the matched
/// suffix of `rc(y)` available as a prefix before some occurrence.
#[derive(Clone, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub struct LeftSignature {
    m: usize,
    k: usize,
    pairs: BTreeSet<(Word, Word)>,
    prefix_memory: Word,
    len_sat: usize,
}

/// Both directions at once; required to extend either end while keeping the
/// other end's signature current.
#[derive(Clone, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub struct FullSignature {
    right: RightSignature,
    left: LeftSignature,
}

/// Computes the right signature of `w` directly from the definition.
pub fn compute_right_signature(
    w: &Word,
    m: usize,
    k: usize,
    alphabet: &Alphabet,
) -> Result<RightSignature> {
    check_params(m, k)?;
    check_length(w, k)?;
    alphabet.validate_word(w)?;
    let n = w.len();
    let mut pairs = BTreeSet::new();
    for i in 0..=m {
        let infix_len = i + k;
        if infix_len > n {
            break;
        }
        for start in 0..=n - infix_len {
            let xy = w.slice(start, infix_len);
            let rc_y = alphabet.rc(&xy.suffix(k));
            let tail_len = n - start - infix_len;
            for zl in 0..=k.min(tail_len) {
                // A length-zl suffix of the tail is a suffix of w itself.
                let z = w.suffix(zl);
                if z == rc_y.prefix(zl) {
                    pairs.insert((xy.clone(), z));
                }
            }
        }
    }
    Ok(RightSignature {
        m,
        k,
        pairs,
        suffix_memory: w.suffix(n.min(m + k - 1)),
        len_sat: n.min(m + 2 * k),
    })
}

/// Computes the left signature of `w` directly from the definition.
pub fn compute_left_signature(
    w: &Word,
    m: usize,
    k: usize,
    alphabet: &Alphabet,
) -> Result<LeftSignature> {
    check_params(m, k)?;
    check_length(w, k)?;
    alphabet.validate_word(w)?;
    let n = w.len();
    let mut pairs = BTreeSet::new();
    for i in 0..=m {
        let infix_len = i + k;
        if infix_len > n {
            break;
        }
        for start in 0..=n - infix_len {
            let yx = w.slice(start, infix_len);
            let rc_y = alphabet.rc(&yx.prefix(k));
            for zl in 0..=k.min(start) {
                let z = w.prefix(zl);
                if z == rc_y.suffix(zl) {
                    pairs.insert((z, yx.clone()));
                }
            }
        }
    }
    Ok(LeftSignature {
        m,
        k,
        pairs,
        prefix_memory: w.prefix(n.min(m + k - 1)),
        len_sat: n.min(m + 2 * k),
    })
}

/// Computes both halves at once.
pub fn compute_full_signature(
    w: &Word,
    m: usize,
    k: usize,
    alphabet: &Alphabet,
) -> Result<FullSignature> {
    Ok(FullSignature {
        right: compute_right_signature(w, m, k, alphabet)?,
        left: compute_left_signature(w, m, k, alphabet)?,
    })
}

impl RightSignature {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn pairs(&self) -> &BTreeSet<(Word, Word)> {
        &self.pairs
    }

    pub fn suffix_memory(&self) -> &Word {
        &self.suffix_memory
    }

    pub fn len_sat(&self) -> usize {
        self.len_sat
    }

    /// The signature of `w·a`, from this signature of `w` alone.
    pub fn extend(&self, a: Symbol, alphabet: &Alphabet) -> Result<RightSignature> {
        alphabet.validate_symbol(a)?;
        let (m, k) = (self.m, self.k);
        let mut pairs = BTreeSet::new();
        for (xy, z) in &self.pairs {
            // Occurrences fully inside w persist; only λ stays directly
            // valid, a non-empty z must grow with the new last symbol.
            if z.is_empty() {
                pairs.insert((xy.clone(), Word::empty()));
            }
            if z.len() < k {
                let za = z.appended(a);
                let rc_y = alphabet.rc(&xy.suffix(k));
                if za == rc_y.prefix(za.len()) {
                    pairs.insert((xy.clone(), za));
                }
            }
        }
        // Fresh occurrences ending at the appended symbol.
        for i in 0..=m {
            let sl = i + k - 1;
            if self.len_sat < sl {
                continue;
            }
            let xy = self.suffix_memory.suffix(sl).appended(a);
            pairs.insert((xy, Word::empty()));
        }
        let memory_target = (self.len_sat + 1).min(m + k - 1);
        let suffix_memory = self.suffix_memory.appended(a).suffix(memory_target);
        Ok(RightSignature {
            m,
            k,
            pairs,
            suffix_memory,
            len_sat: (self.len_sat + 1).min(m + 2 * k),
        })
    }

    /// Extends by a whole word on the right, symbol by symbol.
    pub fn extend_word(&self, r: &Word, alphabet: &Alphabet) -> Result<RightSignature> {
        let mut sig = self.clone();
        for &s in r.symbols() {
            sig = sig.extend(s, alphabet)?;
        }
        Ok(sig)
    }

    /// One-step right completions: `rc(x)` for every fully matched pair
    /// `(xy, z)` with `|z| = k`. Always contains λ when any pair is full.
    pub fn completions(&self, alphabet: &Alphabet) -> BTreeSet<Word> {
        let mut out = BTreeSet::new();
        for (xy, z) in &self.pairs {
            if z.len() == self.k {
                out.insert(alphabet.rc(&xy.prefix(xy.len() - self.k)));
            }
        }
        out
    }

    pub fn to_json(&self, alphabet: &Alphabet) -> Value {
        json!({
            "kind": "right",
            "m": self.m,
            "k": self.k,
            "len_sat": self.len_sat,
            "suffix_memory": alphabet.word_to_json(&self.suffix_memory),
            "pairs": self
                .pairs
                .iter()
                .map(|(x, z)| json!([alphabet.word_to_json(x), alphabet.word_to_json(z)]))
                .collect::<Vec<_>>(),
        })
    }
}

impl LeftSignature {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn pairs(&self) -> &BTreeSet<(Word, Word)> {
        &self.pairs
    }

    pub fn prefix_memory(&self) -> &Word {
        &self.prefix_memory
    }

    pub fn len_sat(&self) -> usize {
        self.len_sat
    }

    /// The signature of `a·w`, from this signature of `w` alone.
    pub fn extend(&self, a: Symbol, alphabet: &Alphabet) -> Result<LeftSignature> {
        alphabet.validate_symbol(a)?;
        let (m, k) = (self.m, self.k);
        let mut pairs = BTreeSet::new();
        for (z, yx) in &self.pairs {
            if z.is_empty() {
                pairs.insert((Word::empty(), yx.clone()));
            }
            if z.len() < k {
                let az = z.prepended(a);
                let rc_y = alphabet.rc(&yx.prefix(k));
                if az == rc_y.suffix(az.len()) {
                    pairs.insert((az, yx.clone()));
                }
            }
        }
        for i in 0..=m {
            let pl = i + k - 1;
            if self.len_sat < pl {
                continue;
            }
            let yx = self.prefix_memory.prefix(pl).prepended(a);
            pairs.insert((Word::empty(), yx));
        }
        let memory_target = (self.len_sat + 1).min(m + k - 1);
        let prefix_memory = self.prefix_memory.prepended(a).prefix(memory_target);
        Ok(LeftSignature {
            m,
            k,
            pairs,
            prefix_memory,
            len_sat: (self.len_sat + 1).min(m + 2 * k),
        })
    }

    /// Extends by a whole word on the left: the signature of `l·w`.
    pub fn extend_word(&self, l: &Word, alphabet: &Alphabet) -> Result<LeftSignature> {
        let mut sig = self.clone();
        for &s in l.symbols().iter().rev() {
            sig = sig.extend(s, alphabet)?;
        }
        Ok(sig)
    }

    /// One-step left completions: `rc(x)` for every pair `(z, yx)` with
    /// `|z| = k`.
    pub fn completions(&self, alphabet: &Alphabet) -> BTreeSet<Word> {
        let mut out = BTreeSet::new();
        for (z, yx) in &self.pairs {
            if z.len() == self.k {
                out.insert(alphabet.rc(&yx.suffix(yx.len() - self.k)));
            }
        }
        out
    }

    pub fn to_json(&self, alphabet: &Alphabet) -> Value {
        json!({
            "kind": "left",
            "m": self.m,
            "k": self.k,
            "len_sat": self.len_sat,
            "prefix_memory": alphabet.word_to_json(&self.prefix_memory),
            "pairs": self
                .pairs
                .iter()
                .map(|(z, x)| json!([alphabet.word_to_json(z), alphabet.word_to_json(x)]))
                .collect::<Vec<_>>(),
        })
    }
}

impl FullSignature {
    pub fn right(&self) -> &RightSignature {
        &self.right
    }

    pub fn left(&self) -> &LeftSignature {
        &self.left
    }

    pub fn m(&self) -> usize {
        self.right.m
    }

    pub fn k(&self) -> usize {
        self.right.k
    }

    pub fn len_sat(&self) -> usize {
        self.right.len_sat
    }

    /// The full signature of `w·a`.
    ///
    /// The right half updates by its own rule; the left half keeps every
    /// pair and gains pairs `(z, s·a)` for the new infix occurrences `s·a`
    /// ending at `a`, where `s` comes out of the right half's suffix memory
    /// and `z` out of the stored prefix memory.
    pub fn extend_right(&self, a: Symbol, alphabet: &Alphabet) -> Result<FullSignature> {
        alphabet.validate_symbol(a)?;
        let (m, k) = (self.m(), self.k());
        let len_sat = self.right.len_sat;
        let mut pairs = self.left.pairs.clone();
        for i in 0..=m {
            let sl = i + k - 1;
            if len_sat < sl {
                continue;
            }
            let infix = self.right.suffix_memory.suffix(sl).appended(a);
            pairs.insert((Word::empty(), infix.clone()));
            let rc_y = alphabet.rc(&infix.prefix(k));
            for zl in 1..=k {
                // The occurrence must leave room for z strictly before it.
                if len_sat < zl + sl {
                    continue;
                }
                let z = self.left.prefix_memory.prefix(zl);
                if z == rc_y.suffix(zl) {
                    pairs.insert((z, infix.clone()));
                }
            }
        }
        let prefix_memory = if len_sat < m + k - 1 {
            self.left.prefix_memory.appended(a)
        } else {
            self.left.prefix_memory.clone()
        };
        Ok(FullSignature {
            right: self.right.extend(a, alphabet)?,
            left: LeftSignature {
                m,
                k,
                pairs,
                prefix_memory,
                len_sat: (len_sat + 1).min(m + 2 * k),
            },
        })
    }

    /// The full signature of `a·w`; the exact mirror of
    /// [`FullSignature::extend_right`].
    pub fn extend_left(&self, a: Symbol, alphabet: &Alphabet) -> Result<FullSignature> {
        alphabet.validate_symbol(a)?;
        let (m, k) = (self.m(), self.k());
        let len_sat = self.right.len_sat;
        let mut pairs = self.right.pairs.clone();
        for i in 0..=m {
            let pl = i + k - 1;
            if len_sat < pl {
                continue;
            }
            let infix = self.left.prefix_memory.prefix(pl).prepended(a);
            pairs.insert((infix.clone(), Word::empty()));
            let rc_y = alphabet.rc(&infix.suffix(k));
            for zl in 1..=k {
                if len_sat < zl + pl {
                    continue;
                }
                let z = self.right.suffix_memory.suffix(zl);
                if z == rc_y.prefix(zl) {
                    pairs.insert((infix.clone(), z));
                }
            }
        }
        let suffix_memory = if len_sat < m + k - 1 {
            self.right.suffix_memory.prepended(a)
        } else {
            self.right.suffix_memory.clone()
        };
        Ok(FullSignature {
            right: RightSignature {
                m,
                k,
                pairs,
                suffix_memory,
                len_sat: (len_sat + 1).min(m + 2 * k),
            },
            left: self.left.extend(a, alphabet)?,
        })
    }

    /// Extends by a whole word on the right, symbol by symbol.
    pub fn extend_right_word(&self, r: &Word, alphabet: &Alphabet) -> Result<FullSignature> {
        let mut sig = self.clone();
        for &s in r.symbols() {
            sig = sig.extend_right(s, alphabet)?;
        }
        Ok(sig)
    }

    /// Extends by a whole word on the left: `sig(l·w)` from `sig(w)`.
    pub fn extend_left_word(&self, l: &Word, alphabet: &Alphabet) -> Result<FullSignature> {
        let mut sig = self.clone();
        for &s in l.symbols().iter().rev() {
            sig = sig.extend_left(s, alphabet)?;
        }
        Ok(sig)
    }

    pub fn to_json(&self, alphabet: &Alphabet) -> Value {
        json!({
            "kind": "full",
            "right": self.right.to_json(alphabet),
            "left": self.left.to_json(alphabet),
        })
    }
}

/// Decides `≡`: equal signatures of the requested kind.
pub fn equivalent(
    w1: &Word,
    w2: &Word,
    m: usize,
    k: usize,
    mode: SigMode,
    alphabet: &Alphabet,
) -> Result<bool> {
    Ok(match mode {
        SigMode::Right => {
            compute_right_signature(w1, m, k, alphabet)?
                == compute_right_signature(w2, m, k, alphabet)?
        }
        SigMode::Left => {
            compute_left_signature(w1, m, k, alphabet)?
                == compute_left_signature(w2, m, k, alphabet)?
        }
        SigMode::Full => {
            compute_full_signature(w1, m, k, alphabet)?
                == compute_full_signature(w2, m, k, alphabet)?
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hairpin::{hi_step, HiParams, Side};
    use crate::language::LanguageSet;

    fn ab() -> Alphabet {
        Alphabet::new(&["a", "b"], &[("a", "b")], false).unwrap()
    }

    fn w(al: &Alphabet, t: &str) -> Word {
        al.parse_word(t).unwrap()
    }

    fn pair_set(al: &Alphabet, pairs: &[(&str, &str)]) -> BTreeSet<(Word, Word)> {
        pairs.iter().map(|(x, z)| (w(al, x), w(al, z))).collect()
    }

    #[test]
    fn right_signature_of_ab() {
        let al = ab();
        let sig = compute_right_signature(&w(&al, "ab"), 1, 1, &al).unwrap();
        assert_eq!(
            *sig.pairs(),
            pair_set(&al, &[("a", ""), ("a", "b"), ("b", ""), ("ab", "")])
        );
        assert_eq!(al.format_word(sig.suffix_memory()), "b");
        assert_eq!(sig.len_sat(), 2);
    }

    #[test]
    fn right_signature_of_abb() {
        let al = ab();
        let sig = compute_right_signature(&w(&al, "abb"), 1, 1, &al).unwrap();
        assert_eq!(
            *sig.pairs(),
            pair_set(&al, &[("a", ""), ("a", "b"), ("b", ""), ("ab", ""), ("bb", "")])
        );
        assert_eq!(al.format_word(sig.suffix_memory()), "b");
        assert_eq!(sig.len_sat(), 3);
    }

    #[test]
    fn too_short_words_are_rejected() {
        let al = ab();
        assert!(matches!(
            compute_right_signature(&w(&al, "a"), 1, 1, &al),
            Err(Error::WordTooShort { len: 1, min: 2 })
        ));
        assert!(compute_full_signature(&w(&al, "aba"), 1, 2, &al).is_err());
        assert!(compute_left_signature(&w(&al, "abab"), 1, 2, &al).is_ok());
    }

    #[test]
    fn lambda_pair_always_present() {
        let al = ab();
        for text in ["ab", "aab", "abab", "babab"] {
            let sig = compute_right_signature(&w(&al, text), 2, 1, &al).unwrap();
            let infixes: BTreeSet<Word> = sig.pairs().iter().map(|(x, _)| x.clone()).collect();
            for x in infixes {
                assert!(sig.pairs().contains(&(x, Word::empty())));
            }
        }
    }

    #[test]
    fn completions_match_step_outputs() {
        let al = ab();
        let sig = compute_right_signature(&w(&al, "ab"), 1, 1, &al).unwrap();
        let comps: Vec<String> = sig.completions(&al).iter().map(|r| al.format_word(r)).collect();
        assert_eq!(comps, vec!["λ"]);
        let sig = compute_right_signature(&w(&al, "aab"), 1, 1, &al).unwrap();
        let comps: Vec<String> = sig.completions(&al).iter().map(|r| al.format_word(r)).collect();
        assert_eq!(comps, vec!["λ", "b"]);
    }

    /// The signature route and the decomposition route must name the same
    /// one-step extensions.
    #[test]
    fn completions_agree_with_decomposition_route() {
        let al = ab();
        for m in 1..=2 {
            for k in 1..=2 {
                for len in 2 * k..=7 {
                    for code in 0..(1u32 << len) {
                        let word: Word = (0..len)
                            .map(|i| {
                                al.symbol(if code >> i & 1 == 0 { "a" } else { "b" }).unwrap()
                            })
                            .collect();
                        let p = HiParams::new(m, k, Side::Right).unwrap();
                        let direct = hi_step(&word, &p, &al);
                        let sig = compute_right_signature(&word, m, k, &al).unwrap();
                        let mut via_sig: LanguageSet = sig
                            .completions(&al)
                            .iter()
                            .map(|r| word.concat(r))
                            .collect();
                        if via_sig.is_empty() {
                            via_sig.insert(word.clone());
                        }
                        assert_eq!(via_sig, direct, "right m={m} k={k} {word:?}");

                        let p = HiParams::new(m, k, Side::Left).unwrap();
                        let direct = hi_step(&word, &p, &al);
                        let sig = compute_left_signature(&word, m, k, &al).unwrap();
                        let mut via_sig: LanguageSet = sig
                            .completions(&al)
                            .iter()
                            .map(|l| l.concat(&word))
                            .collect();
                        if via_sig.is_empty() {
                            via_sig.insert(word.clone());
                        }
                        assert_eq!(via_sig, direct, "left m={m} k={k} {word:?}");
                    }
                }
            }
        }
    }

    /// Incremental extension must equal recomputation from scratch, for all
    /// four update rules (bare right, bare left, and both full directions).
    #[test]
    fn extension_agrees_with_recomputation() {
        let al = ab();
        let syms: Vec<Symbol> = al.symbols().collect();
        for m in 1..=3 {
            for k in 1..=2 {
                for len in 2 * k..=6 {
                    for code in 0..(1u32 << len) {
                        let word: Word = (0..len)
                            .map(|i| syms[(code >> i & 1) as usize])
                            .collect();
                        let rsig = compute_right_signature(&word, m, k, &al).unwrap();
                        let lsig = compute_left_signature(&word, m, k, &al).unwrap();
                        let fsig = compute_full_signature(&word, m, k, &al).unwrap();
                        for &a in &syms {
                            let appended = word.appended(a);
                            let prepended = word.prepended(a);
                            assert_eq!(
                                rsig.extend(a, &al).unwrap(),
                                compute_right_signature(&appended, m, k, &al).unwrap(),
                                "right extend m={m} k={k} {word:?}"
                            );
                            assert_eq!(
                                lsig.extend(a, &al).unwrap(),
                                compute_left_signature(&prepended, m, k, &al).unwrap(),
                                "left extend m={m} k={k} {word:?}"
                            );
                            assert_eq!(
                                fsig.extend_right(a, &al).unwrap(),
                                compute_full_signature(&appended, m, k, &al).unwrap(),
                                "full right m={m} k={k} {word:?}"
                            );
                            assert_eq!(
                                fsig.extend_left(a, &al).unwrap(),
                                compute_full_signature(&prepended, m, k, &al).unwrap(),
                                "full left m={m} k={k} {word:?}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn full_extensions_commute() {
        let al = ab();
        let base = w(&al, "abba");
        let a = al.symbol("a").unwrap();
        let b = al.symbol("b").unwrap();
        let sig = compute_full_signature(&base, 1, 1, &al).unwrap();
        let rl = sig.extend_right(a, &al).unwrap().extend_left(b, &al).unwrap();
        let lr = sig.extend_left(b, &al).unwrap().extend_right(a, &al).unwrap();
        assert_eq!(rl, lr);
        assert_eq!(rl, compute_full_signature(&w(&al, "babbaa"), 1, 1, &al).unwrap());
    }

    #[test]
    fn memory_and_saturation_invariants() {
        let al = ab();
        for m in 1..=3 {
            for k in 1..=2 {
                for text in ["aabb", "abbbab", "aabbabab"] {
                    let word = w(&al, text);
                    if word.len() < 2 * k {
                        continue;
                    }
                    let sig = compute_right_signature(&word, m, k, &al).unwrap();
                    assert_eq!(sig.suffix_memory().len(), word.len().min(m + k - 1));
                    assert_eq!(sig.len_sat(), word.len().min(m + 2 * k));
                    assert!(sig.len_sat() >= 2 * k);
                    for (xy, z) in sig.pairs() {
                        assert!(xy.len() >= k && xy.len() <= m + k);
                        assert!(z.len() <= k);
                    }
                }
            }
        }
    }

    #[test]
    fn equivalence_examples() {
        let al = ab();
        assert!(!equivalent(&w(&al, "ab"), &w(&al, "ba"), 1, 1, SigMode::Right, &al).unwrap());
        // Saturation differs (2 vs 3), so these are inequivalent even though
        // both admit only the identity step.
        assert!(!equivalent(&w(&al, "ab"), &w(&al, "abb"), 1, 1, SigMode::Right, &al).unwrap());
        assert!(equivalent(&w(&al, "abb"), &w(&al, "abbb"), 1, 1, SigMode::Right, &al).unwrap());
    }

    #[test]
    fn saturated_words_in_same_class() {
        let al = ab();
        assert!(equivalent(&w(&al, "aabbb"), &w(&al, "aabbbb"), 2, 1, SigMode::Right, &al).unwrap());
    }

    /// All 2044 words of length 2..=10 over {a,b} fall into exactly 20
    /// right-signature classes at (m,k) = (1,1).
    #[test]
    fn class_count_stays_small() {
        let al = ab();
        let syms: Vec<Symbol> = al.symbols().collect();
        let mut sigs = BTreeSet::new();
        for len in 2..=10usize {
            for code in 0..(1u64 << len) {
                let word: Word = (0..len).map(|i| syms[(code >> i & 1) as usize]).collect();
                sigs.insert(compute_right_signature(&word, 1, 1, &al).unwrap());
            }
        }
        assert_eq!(sigs.len(), 20);
    }

    #[test]
    fn foreign_symbols_are_rejected() {
        let al = ab();
        let wide = Alphabet::new(&["a", "b", "c"], &[("a", "b"), ("c", "c")], false).unwrap();
        let c = wide.symbol("c").unwrap();
        let sig = compute_right_signature(&w(&al, "ab"), 1, 1, &al).unwrap();
        assert!(matches!(sig.extend(c, &al), Err(Error::ForeignSymbol { .. })));
    }
}
