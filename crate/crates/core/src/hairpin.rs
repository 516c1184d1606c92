//! The incompletion step operators, by direct decomposition enumeration.
//!
//! A right step on `w` picks a factorization `w = δ·γ·α·β·rc(α)` with
//! `|α| = k` and `|γ| ≤ m` and appends `rc(γ)`; the left step mirrors it on
//! `w = α·β·rc(α)·γ·δ`, prepending `rc(γ)`. When a word admits no
//! factorization at all the step acts as the identity, so a step always
//! contains its input. The bounded-completion variant (`δ = λ`) has no such
//! fallback and may be empty.

use std::collections::VecDeque;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::language::LanguageSet;
use crate::word::Word;

/// Default cap on the number of distinct words a closure may visit.
pub const DEFAULT_WORD_CAP: usize = 1_000_000;

/// Which end of the word the step extends.
#[derive(Clone, Copy, PartialEq, Eq, Debug, PartialOrd, Ord)]
pub enum Side {
    Right,
    Left,
    Both,
}

impl Side {
    pub fn as_str(self) -> &'static str {
        match self {
            Side::Right => "right",
            Side::Left => "left",
            Side::Both => "both",
        }
    }
}

/// Step parameters: overhang bound `m ≥ 1`, stem length `k ≥ 1`, and side.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct HiParams {
    m: usize,
    k: usize,
    side: Side,
}

impl HiParams {
    pub fn new(m: usize, k: usize, side: Side) -> Result<Self> {
        if m == 0 || k == 0 {
            return Err(Error::InvalidParams(format!(
                "m and k must be at least 1 (got m={m}, k={k})"
            )));
        }
        Ok(HiParams { m, k, side })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn with_side(&self, side: Side) -> HiParams {
        HiParams { side, ..*self }
    }
}

/// One factorization witnessing a step.
///
/// For the right side the word reads `δ·γ·α·β·rc(α)`, for the left side
/// `α·β·rc(α)·γ·δ`. In both cases the step contributes `rc(γ)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Decomposition {
    pub delta: Word,
    pub gamma: Word,
    pub alpha: Word,
    pub beta: Word,
}

/// All right factorizations of `w`, ordered by stem position then `|γ|`.
pub fn right_decompositions(
    w: &Word,
    m: usize,
    k: usize,
    alphabet: &Alphabet,
) -> Vec<Decomposition> {
    let mut out = Vec::new();
    let n = w.len();
    if n < 2 * k {
        return out;
    }
    // The closing factor rc(α) is the length-k suffix, so α is forced.
    let alpha = alphabet.rc(&w.suffix(k));
    for start in 0..=n - 2 * k {
        if w.slice(start, k) != alpha {
            continue;
        }
        for g in 0..=m.min(start) {
            out.push(Decomposition {
                delta: w.prefix(start - g),
                gamma: w.slice(start - g, g),
                alpha: alpha.clone(),
                beta: w.slice(start + k, n - k - (start + k)),
            });
        }
    }
    out
}

/// All left factorizations of `w`, ordered by stem position then `|γ|`.
pub fn left_decompositions(
    w: &Word,
    m: usize,
    k: usize,
    alphabet: &Alphabet,
) -> Vec<Decomposition> {
    let mut out = Vec::new();
    let n = w.len();
    if n < 2 * k {
        return out;
    }
    let alpha = w.prefix(k);
    let closing = alphabet.rc(&alpha);
    for start in k..=n - k {
        if w.slice(start, k) != closing {
            continue;
        }
        for g in 0..=m.min(n - (start + k)) {
            out.push(Decomposition {
                delta: w.suffix(n - (start + k) - g),
                gamma: w.slice(start + k, g),
                alpha: alpha.clone(),
                beta: w.slice(k, start - k),
            });
        }
    }
    out
}

fn step_one_side(w: &Word, p: &HiParams, side: Side, alphabet: &Alphabet) -> LanguageSet {
    let mut out = LanguageSet::new();
    match side {
        Side::Right => {
            for d in right_decompositions(w, p.m, p.k, alphabet) {
                out.insert(w.concat(&alphabet.rc(&d.gamma)));
            }
        }
        Side::Left => {
            for d in left_decompositions(w, p.m, p.k, alphabet) {
                out.insert(alphabet.rc(&d.gamma).concat(w));
            }
        }
        Side::Both => unreachable!("per-side helper"),
    }
    if out.is_empty() {
        // No factorization: the step acts as the identity.
        out.insert(w.clone());
    }
    out
}

/// One incompletion step on a single word. Always contains `w`.
pub fn hi_step(w: &Word, p: &HiParams, alphabet: &Alphabet) -> LanguageSet {
    match p.side {
        Side::Right | Side::Left => step_one_side(w, p, p.side, alphabet),
        Side::Both => {
            let mut out = step_one_side(w, p, Side::Right, alphabet);
            out.union_with(&step_one_side(w, p, Side::Left, alphabet));
            out
        }
    }
}

/// One bounded-completion step: only factorizations with `δ = λ` count and
/// there is no identity fallback, so the result may be empty.
pub fn bhc_step(w: &Word, p: &HiParams, alphabet: &Alphabet) -> LanguageSet {
    let mut out = LanguageSet::new();
    if matches!(p.side, Side::Right | Side::Both) {
        for d in right_decompositions(w, p.m, p.k, alphabet) {
            if d.delta.is_empty() {
                out.insert(w.concat(&alphabet.rc(&d.gamma)));
            }
        }
    }
    if matches!(p.side, Side::Left | Side::Both) {
        for d in left_decompositions(w, p.m, p.k, alphabet) {
            if d.delta.is_empty() {
                out.insert(alphabet.rc(&d.gamma).concat(w));
            }
        }
    }
    out
}

fn step_set(lang: &LanguageSet, p: &HiParams, alphabet: &Alphabet) -> LanguageSet {
    let mut out = LanguageSet::new();
    for w in lang {
        out.union_with(&hi_step(w, p, alphabet));
    }
    out
}

/// Iterated step: the union of `HI^i(L)` for `0 ≤ i ≤ n`.
///
/// Since every step contains its input, this equals `HI^n(L)`.
pub fn hi_iter(
    lang: &LanguageSet,
    p: &HiParams,
    n: usize,
    alphabet: &Alphabet,
    word_cap: usize,
) -> Result<LanguageSet> {
    let mut acc = lang.clone();
    for _ in 0..n {
        let next = step_set(&acc, p, alphabet);
        if next == acc {
            break;
        }
        acc = next;
        if acc.len() > word_cap {
            return Err(Error::WordCapExceeded { cap: word_cap });
        }
    }
    Ok(acc)
}

/// Result of a bounded closure.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BoundedClosure {
    /// `HI*(L) ∩ V^{≤ max_len}`, plus any oversized seeds passed through.
    pub words: LanguageSet,
    /// Seeds longer than `max_len`, kept unexpanded.
    pub oversized_seeds: LanguageSet,
}

/// Exact bounded closure `HI*(L) ∩ V^{≤ max_len}` by worklist search.
///
/// Step lengths never decrease, so restricting the worklist to words of
/// length at most `max_len` loses nothing. Seeds already longer than the
/// bound are passed through unchanged and reported.
pub fn hi_closure_bounded(
    lang: &LanguageSet,
    p: &HiParams,
    max_len: usize,
    word_cap: usize,
    alphabet: &Alphabet,
) -> Result<BoundedClosure> {
    #[cfg(feature = "parallel")]
    {
        hi_closure_bounded_parallel(lang, p, max_len, word_cap, alphabet)
    }
    #[cfg(not(feature = "parallel"))]
    {
        hi_closure_bounded_sequential(lang, p, max_len, word_cap, alphabet)
    }
}

fn split_seeds(lang: &LanguageSet, max_len: usize) -> (Vec<Word>, LanguageSet) {
    let mut seeds = Vec::new();
    let mut oversized = LanguageSet::new();
    for w in lang {
        if w.len() <= max_len {
            seeds.push(w.clone());
        } else {
            oversized.insert(w.clone());
        }
    }
    (seeds, oversized)
}

/// Sequential reference implementation of [`hi_closure_bounded`].
pub fn hi_closure_bounded_sequential(
    lang: &LanguageSet,
    p: &HiParams,
    max_len: usize,
    word_cap: usize,
    alphabet: &Alphabet,
) -> Result<BoundedClosure> {
    let (seeds, oversized_seeds) = split_seeds(lang, max_len);
    let mut visited: LanguageSet = seeds.iter().cloned().collect();
    let mut queue: VecDeque<Word> = seeds.into();
    while let Some(w) = queue.pop_front() {
        for v in &hi_step(&w, p, alphabet) {
            if v.len() <= max_len && visited.insert(v.clone()) {
                if visited.len() > word_cap {
                    return Err(Error::WordCapExceeded { cap: word_cap });
                }
                queue.push_back(v.clone());
            }
        }
    }
    let mut words = visited;
    words.union_with(&oversized_seeds);
    Ok(BoundedClosure {
        words,
        oversized_seeds,
    })
}

/// Frontier-parallel implementation of [`hi_closure_bounded`]; produces the
/// identical set (and ordering) as the sequential reference.
#[cfg(feature = "parallel")]
pub fn hi_closure_bounded_parallel(
    lang: &LanguageSet,
    p: &HiParams,
    max_len: usize,
    word_cap: usize,
    alphabet: &Alphabet,
) -> Result<BoundedClosure> {
    let (seeds, oversized_seeds) = split_seeds(lang, max_len);
    let mut visited: LanguageSet = seeds.iter().cloned().collect();
    let mut frontier: Vec<Word> = seeds;
    while !frontier.is_empty() {
        let expansions: Vec<LanguageSet> = frontier
            .par_iter()
            .map(|w| hi_step(w, p, alphabet))
            .collect();
        let mut next = Vec::new();
        for expansion in expansions {
            for v in &expansion {
                if v.len() <= max_len && visited.insert(v.clone()) {
                    if visited.len() > word_cap {
                        return Err(Error::WordCapExceeded { cap: word_cap });
                    }
                    next.push(v.clone());
                }
            }
        }
        frontier = next;
    }
    let mut words = visited;
    words.union_with(&oversized_seeds);
    Ok(BoundedClosure {
        words,
        oversized_seeds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::new(&["a", "b"], &[("a", "b")], false).unwrap()
    }

    fn lang(al: &Alphabet, words: &[&str]) -> LanguageSet {
        words.iter().map(|t| al.parse_word(t).unwrap()).collect()
    }

    fn step(al: &Alphabet, w: &str, m: usize, k: usize, side: Side) -> LanguageSet {
        let p = HiParams::new(m, k, side).unwrap();
        hi_step(&al.parse_word(w).unwrap(), &p, al)
    }

    #[test]
    fn params_validate() {
        assert!(HiParams::new(0, 1, Side::Right).is_err());
        assert!(HiParams::new(1, 0, Side::Right).is_err());
        assert!(HiParams::new(1, 1, Side::Both).is_ok());
    }

    #[test]
    fn right_step_examples() {
        let al = ab();
        assert_eq!(step(&al, "aab", 1, 1, Side::Right), lang(&al, &["aab", "aabb"]));
        assert_eq!(
            step(&al, "baab", 1, 1, Side::Right),
            lang(&al, &["baab", "baaba", "baabb"])
        );
    }

    #[test]
    fn left_step_example() {
        let al = ab();
        assert_eq!(step(&al, "baa", 1, 1, Side::Left), lang(&al, &["baa", "bbaa"]));
    }

    #[test]
    fn both_sides_union() {
        let al = ab();
        assert_eq!(
            step(&al, "abab", 1, 1, Side::Both),
            lang(&al, &["abab", "ababa", "babab"])
        );
    }

    #[test]
    fn identity_fallback_on_inapplicable_words() {
        let al = ab();
        assert_eq!(step(&al, "a", 1, 1, Side::Both), lang(&al, &["a"]));
        assert_eq!(step(&al, "", 1, 1, Side::Right), lang(&al, &[""]));
        // Long enough but with no annealing stem: "aa" ends in a, and the
        // required earlier b-occurrence is missing.
        assert!(right_decompositions(&al.parse_word("aa").unwrap(), 1, 1, &ab()).is_empty());
        assert_eq!(step(&al, "aa", 1, 1, Side::Right), lang(&al, &["aa"]));
        // "ab" folds with stem a, but only the empty overhang fits.
        assert_eq!(step(&al, "ab", 1, 1, Side::Right), lang(&al, &["ab"]));
    }

    #[test]
    fn bounded_completion_restricts_delta() {
        let al = ab();
        let p = HiParams::new(1, 1, Side::Right).unwrap();
        let w = al.parse_word("baab").unwrap();
        assert_eq!(bhc_step(&w, &p, &al), lang(&al, &["baaba"]));
        let decs = right_decompositions(&w, 1, 1, &al);
        let with_empty_delta: Vec<_> = decs.iter().filter(|d| d.delta.is_empty()).collect();
        assert_eq!(with_empty_delta.len(), 1);
        assert_eq!(al.format_word(&with_empty_delta[0].gamma), "b");
        assert_eq!(al.format_word(&with_empty_delta[0].alpha), "a");
        // And the no-fallback case: a word with no factorization at all.
        let a = al.parse_word("a").unwrap();
        assert!(bhc_step(&a, &p, &al).is_empty());
        assert_eq!(bhc_step(&al.parse_word("aab").unwrap(), &p, &al), lang(&al, &["aab", "aabb"]));
    }

    #[test]
    fn decomposition_concatenation_reproduces_word() {
        let al = ab();
        let w = al.parse_word("babaabab").unwrap();
        for d in right_decompositions(&w, 2, 2, &al) {
            let rebuilt = d
                .delta
                .concat(&d.gamma)
                .concat(&d.alpha)
                .concat(&d.beta)
                .concat(&al.rc(&d.alpha));
            assert_eq!(rebuilt, w);
        }
        for d in left_decompositions(&w, 2, 2, &al) {
            let rebuilt = d
                .alpha
                .concat(&d.beta)
                .concat(&al.rc(&d.alpha))
                .concat(&d.gamma)
                .concat(&d.delta);
            assert_eq!(rebuilt, w);
        }
    }

    #[test]
    fn iteration_accumulates() {
        let al = ab();
        let p = HiParams::new(1, 1, Side::Right).unwrap();
        let seeds = lang(&al, &["aab"]);
        let got = hi_iter(&seeds, &p, 2, &al, DEFAULT_WORD_CAP).unwrap();
        assert_eq!(got, lang(&al, &["aab", "aabb", "aabbb"]));
        assert_eq!(hi_iter(&seeds, &p, 0, &al, DEFAULT_WORD_CAP).unwrap(), seeds);
    }

    #[test]
    fn closure_examples() {
        let al = ab();
        let p = HiParams::new(1, 1, Side::Right).unwrap();
        let got = hi_closure_bounded(&lang(&al, &["aab"]), &p, 6, DEFAULT_WORD_CAP, &al).unwrap();
        assert_eq!(got.words, lang(&al, &["aab", "aabb", "aabbb", "aabbbb"]));
        assert!(got.oversized_seeds.is_empty());
        let got = hi_closure_bounded(&lang(&al, &["ab"]), &p, 10, DEFAULT_WORD_CAP, &al).unwrap();
        assert_eq!(got.words, lang(&al, &["ab"]));
    }

    #[test]
    fn closure_passes_oversized_seeds_through() {
        let al = ab();
        let p = HiParams::new(1, 1, Side::Right).unwrap();
        let seeds = lang(&al, &["aab", "aabbbbbb"]);
        let got = hi_closure_bounded(&seeds, &p, 6, DEFAULT_WORD_CAP, &al).unwrap();
        assert_eq!(got.oversized_seeds, lang(&al, &["aabbbbbb"]));
        assert_eq!(got.words, lang(&al, &["aab", "aabb", "aabbb", "aabbbb", "aabbbbbb"]));
    }

    #[test]
    fn closure_word_cap_is_loud() {
        let al = ab();
        let p = HiParams::new(1, 1, Side::Both).unwrap();
        let err = hi_closure_bounded(&lang(&al, &["aab"]), &p, 12, 3, &al).unwrap_err();
        assert!(matches!(err, Error::WordCapExceeded { cap: 3 }));
        assert!(err.is_cap_exceeded());
    }

    #[test]
    fn parallel_matches_sequential() {
        let al = ab();
        for side in [Side::Right, Side::Left, Side::Both] {
            let p = HiParams::new(2, 1, side).unwrap();
            let seeds = lang(&al, &["aab", "baa", "abab"]);
            let seq =
                hi_closure_bounded_sequential(&seeds, &p, 10, DEFAULT_WORD_CAP, &al).unwrap();
            let dispatch = hi_closure_bounded(&seeds, &p, 10, DEFAULT_WORD_CAP, &al).unwrap();
            assert_eq!(seq, dispatch);
            #[cfg(feature = "parallel")]
            {
                let par =
                    hi_closure_bounded_parallel(&seeds, &p, 10, DEFAULT_WORD_CAP, &al).unwrap();
                assert_eq!(seq, par);
            }
        }
    }

    #[test]
    fn steps_preserve_input_as_factor() {
        let al = ab();
        // Right extensions keep w as a prefix, left extensions as a suffix.
        for text in ["aab", "abab", "babaab"] {
            let w = al.parse_word(text).unwrap();
            let p = HiParams::new(2, 1, Side::Right).unwrap();
            for v in &hi_step(&w, &p, &al) {
                assert!(v.starts_with(&w));
                assert!(v.len() >= w.len() && v.len() <= w.len() + 2);
            }
            let p = HiParams::new(2, 1, Side::Left).unwrap();
            for v in &hi_step(&w, &p, &al) {
                assert!(v.ends_with(&w));
            }
        }
    }

    mod properties {
        use super::*;
        use crate::alphabet::Symbol;
        use proptest::prelude::*;

        fn word_over_ab() -> impl Strategy<Value = Word> {
            proptest::collection::vec(0u32..2, 0..9).prop_map(|codes| {
                let al = ab();
                let syms: Vec<Symbol> = al.symbols().collect();
                codes.into_iter().map(|c| syms[c as usize]).collect()
            })
        }

        fn small_params() -> impl Strategy<Value = HiParams> {
            (1usize..=2, 1usize..=2, 0usize..3).prop_map(|(m, k, s)| {
                let side = [Side::Right, Side::Left, Side::Both][s];
                HiParams::new(m, k, side).unwrap()
            })
        }

        proptest! {
            #[test]
            fn steps_never_shrink(w in word_over_ab(), p in small_params()) {
                let al = ab();
                for v in &hi_step(&w, &p, &al) {
                    prop_assert!(v.len() >= w.len());
                    prop_assert!(v.len() <= w.len() + p.m());
                    prop_assert!(v.starts_with(&w) || v.ends_with(&w));
                }
            }

            #[test]
            fn anchored_steps_refine_free_steps(w in word_over_ab(), p in small_params()) {
                let al = ab();
                prop_assert!(bhc_step(&w, &p, &al).is_subset(&hi_step(&w, &p, &al)));
            }

            #[test]
            fn closures_grow_with_the_bound(
                w in word_over_ab(),
                p in small_params(),
                bound in 0usize..10,
            ) {
                let al = ab();
                let seeds = LanguageSet::singleton(w);
                let narrow =
                    hi_closure_bounded(&seeds, &p, bound, DEFAULT_WORD_CAP, &al).unwrap();
                let wide =
                    hi_closure_bounded(&seeds, &p, bound + 1, DEFAULT_WORD_CAP, &al).unwrap();
                prop_assert!(narrow.words.is_subset(&wide.words));
            }
        }
    }
}
