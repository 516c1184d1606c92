//! The acceptance sweeps: every structural promise of the library checked
//! against an independent route, at desk scale, deterministically.
//!
//! Each criterion compares two computations that share no code path for
//! the property under test: signature completions against decomposition
//! enumeration, grammar languages against worklist closures, machine runs
//! against the step operation, encoded strands against derivation
//! enumeration. Randomized sweeps draw from a seeded generator, so a
//! report is reproducible from its seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::alphabet::Alphabet;
use crate::error::Result;
use crate::grammar::{
    build_gl, build_gw, closure_via_classes, enumerate_grammar, reconstruct_closure,
    DEFAULT_FORM_BUDGET,
};
use crate::hairpin::{
    bhc_step, hi_closure_bounded, hi_step, HiParams, Side, DEFAULT_WORD_CAP,
};
use crate::language::LanguageSet;
use crate::signature::{
    compute_full_signature, compute_left_signature, compute_right_signature,
};
use crate::transducer::{apply_transducer, build_hi_gsm, DEFAULT_STATE_CAP};
use crate::universal::{verify_universal, RegProduction, SourceRegularGrammar};
use crate::word::Word;

/// Seed used when the caller does not supply one.
pub const DEFAULT_SEED: u64 = 0x48504b49;

/// One row of the acceptance table.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "criterion {}: {}: {}: {}",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.detail
        )
    }
}

/// The two-letter alphabet with complementary letters used by every sweep.
pub fn standard_alphabet() -> Alphabet {
    Alphabet::new(&["a", "b"], &[("a", "b")], false).expect("static alphabet")
}

fn all_words(alphabet: &Alphabet, max_len: usize) -> Vec<Word> {
    let syms: Vec<_> = alphabet.symbols().collect();
    let mut out = Vec::new();
    for len in 0..=max_len {
        for code in 0..(1u64 << len) {
            out.push((0..len).map(|i| syms[(code >> i & 1) as usize]).collect());
        }
    }
    out
}

fn random_word(rng: &mut ChaCha8Rng, alphabet: &Alphabet, min_len: usize, max_len: usize) -> Word {
    let syms: Vec<_> = alphabet.symbols().collect();
    let len = rng.gen_range(min_len..=max_len);
    (0..len).map(|_| syms[rng.gen_range(0..syms.len())]).collect()
}

fn random_language(
    rng: &mut ChaCha8Rng,
    alphabet: &Alphabet,
    max_words: usize,
    min_len: usize,
    max_len: usize,
) -> LanguageSet {
    let count = rng.gen_range(1..=max_words);
    (0..count)
        .map(|_| random_word(rng, alphabet, min_len, max_len))
        .collect()
}

/// Applies `check` to every item, reporting the count or the first failure
/// in item order. Parallel when the `parallel` feature is active; the
/// first-failure choice keeps the report identical either way.
fn sweep<T, F>(items: &[T], check: F) -> std::result::Result<usize, String>
where
    T: Sync,
    F: Fn(&T) -> Option<String> + Sync,
{
    #[cfg(feature = "parallel")]
    let outcomes: Vec<Option<String>> = {
        use rayon::prelude::*;
        items.par_iter().map(&check).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let outcomes: Vec<Option<String>> = items.iter().map(&check).collect();
    for outcome in outcomes {
        if let Some(msg) = outcome {
            return Err(msg);
        }
    }
    Ok(items.len())
}

fn verdict(
    id: usize,
    name: &'static str,
    outcome: std::result::Result<String, String>,
) -> CriterionResult {
    match outcome {
        Ok(detail) => CriterionResult {
            id,
            name,
            passed: true,
            detail,
        },
        Err(detail) => CriterionResult {
            id,
            name,
            passed: false,
            detail,
        },
    }
}

fn err_detail(e: &crate::error::Error) -> String {
    format!("unexpected error: {e}")
}

/// Criterion 1: the completion route through the signature names exactly
/// the words one right step produces, for every short word.
pub fn criterion_step_vs_completions() -> CriterionResult {
    let al = standard_alphabet();
    let run = || -> std::result::Result<String, String> {
        let words = all_words(&al, 8);
        let mut cases = Vec::new();
        for m in 1..=2usize {
            for k in 1..=2usize {
                for w in &words {
                    cases.push((m, k, w.clone()));
                }
            }
        }
        let n = sweep(&cases, |(m, k, w)| {
            let p = HiParams::new(*m, *k, Side::Right).expect("params");
            let direct = hi_step(w, &p, &al);
            let mut via_sig = LanguageSet::new();
            if w.len() >= 2 * k {
                let sig = match compute_right_signature(w, *m, *k, &al) {
                    Ok(sig) => sig,
                    Err(e) => return Some(err_detail(&e)),
                };
                for r in sig.completions(&al) {
                    via_sig.insert(w.concat(&r));
                }
            }
            if via_sig.is_empty() {
                via_sig.insert(w.clone());
            }
            if via_sig == direct {
                None
            } else {
                Some(format!(
                    "mismatch at m={m} k={k} w={}",
                    al.format_word(w)
                ))
            }
        })?;
        Ok(format!("{n} word/parameter cases agree"))
    };
    verdict(1, "one-step extension agrees with the completion route", run())
}

/// Criterion 2: all four incremental update rules equal recomputation.
pub fn criterion_incremental_updates() -> CriterionResult {
    let al = standard_alphabet();
    let syms: Vec<_> = al.symbols().collect();
    let run = || -> std::result::Result<String, String> {
        let mut cases = Vec::new();
        for m in 1..=2usize {
            for k in 1..=2usize {
                for w in all_words(&al, 8) {
                    if w.len() >= 2 * k {
                        cases.push((m, k, w));
                    }
                }
            }
        }
        let n = sweep(&cases, |(m, k, w)| {
            let go = || -> Result<Option<String>> {
                let rsig = compute_right_signature(w, *m, *k, &al)?;
                let lsig = compute_left_signature(w, *m, *k, &al)?;
                let fsig = compute_full_signature(w, *m, *k, &al)?;
                for &a in &syms {
                    let wa = w.appended(a);
                    let aw = w.prepended(a);
                    if rsig.extend(a, &al)? != compute_right_signature(&wa, *m, *k, &al)?
                        || lsig.extend(a, &al)? != compute_left_signature(&aw, *m, *k, &al)?
                        || fsig.extend_right(a, &al)? != compute_full_signature(&wa, *m, *k, &al)?
                        || fsig.extend_left(a, &al)? != compute_full_signature(&aw, *m, *k, &al)?
                    {
                        return Ok(Some(format!(
                            "update mismatch at m={m} k={k} w={}",
                            al.format_word(w)
                        )));
                    }
                }
                Ok(None)
            };
            match go() {
                Ok(v) => v,
                Err(e) => Some(err_detail(&e)),
            }
        })?;
        Ok(format!("{n} words × 2 letters × 4 update rules agree"))
    };
    verdict(2, "incremental signature updates match recomputation", run())
}

/// Criterion 3: the word grammar generates the bounded one-sided closure,
/// including the pinned four-word closure of "aab".
pub fn criterion_word_grammars() -> CriterionResult {
    let al = standard_alphabet();
    let run = || -> std::result::Result<String, String> {
        let pinned = build_gw(
            &al.parse_word("aab").expect("pinned word"),
            1,
            1,
            Side::Right,
            1000,
            &al,
        )
        .and_then(|g| enumerate_grammar(&g, 6, DEFAULT_FORM_BUDGET))
        .map_err(|e| err_detail(&e))?;
        let expected: LanguageSet = ["aab", "aabb", "aabbb", "aabbbb"]
            .iter()
            .map(|t| al.parse_word(t).expect("pinned word"))
            .collect();
        if pinned != expected {
            return Err("pinned closure of aab is wrong".into());
        }
        let mut cases = Vec::new();
        for m in 1..=2usize {
            for k in 1..=2usize {
                for w in all_words(&al, 6) {
                    if w.len() >= 2 * k {
                        cases.push((m, k, w));
                    }
                }
            }
        }
        let n = sweep(&cases, |(m, k, w)| {
            let go = || -> Result<Option<String>> {
                let p = HiParams::new(*m, *k, Side::Right)?;
                let g = build_gw(w, *m, *k, Side::Right, 10_000, &al)?;
                let via_grammar = enumerate_grammar(&g, 12, DEFAULT_FORM_BUDGET)?;
                let direct = hi_closure_bounded(
                    &LanguageSet::singleton(w.clone()),
                    &p,
                    12,
                    DEFAULT_WORD_CAP,
                    &al,
                )?
                .words;
                Ok(if via_grammar == direct {
                    None
                } else {
                    Some(format!(
                        "grammar mismatch at m={m} k={k} w={}",
                        al.format_word(w)
                    ))
                })
            };
            match go() {
                Ok(v) => v,
                Err(e) => Some(err_detail(&e)),
            }
        })?;
        Ok(format!("pinned case plus {n} grammar/closure pairs agree"))
    };
    verdict(3, "word grammars generate the bounded closure", run())
}

/// Criterion 4: the class decomposition equals the direct closure on
/// seeded random languages, both sides.
pub fn criterion_class_decomposition(seed: u64) -> CriterionResult {
    let al = standard_alphabet();
    let run = || -> std::result::Result<String, String> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(4));
        let mut cases = Vec::new();
        for _ in 0..50 {
            let lang = random_language(&mut rng, &al, 5, 0, 6);
            let m = rng.gen_range(1..=2usize);
            let k = rng.gen_range(1..=2usize);
            cases.push((lang, m, k));
        }
        let n = sweep(&cases, |(lang, m, k)| {
            for side in [Side::Right, Side::Left] {
                let go = || -> Result<Option<String>> {
                    let p = HiParams::new(*m, *k, side)?;
                    let via_classes =
                        closure_via_classes(lang, *m, *k, side, 10, 10_000, &al)?;
                    let direct =
                        hi_closure_bounded(lang, &p, 10, DEFAULT_WORD_CAP, &al)?.words;
                    Ok(if via_classes == direct {
                        None
                    } else {
                        Some(format!("class route mismatch ({side:?}, m={m}, k={k})"))
                    })
                };
                match go() {
                    Ok(None) => continue,
                    Ok(some) => return some,
                    Err(e) => return Some(err_detail(&e)),
                }
            }
            None
        })?;
        Ok(format!("{n} random seed languages × both sides agree"))
    };
    verdict(4, "class decomposition matches the direct closure", run())
}

/// Criterion 5: building the linear grammar and folding its language back
/// reproduces the two-sided closure on seeded random languages.
pub fn criterion_linear_grammar_pipeline(seed: u64) -> CriterionResult {
    let al = standard_alphabet();
    let run = || -> std::result::Result<String, String> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(5));
        let mut cases = Vec::new();
        for _ in 0..25 {
            cases.push(random_language(&mut rng, &al, 3, 2, 5));
        }
        let n = sweep(&cases, |lang| {
            let go = || -> Result<Option<String>> {
                let p = HiParams::new(1, 1, Side::Both)?;
                let g = build_gl(lang, 1, 1, 10_000, &al)?;
                let rebuilt = reconstruct_closure(&g, 8, DEFAULT_FORM_BUDGET)?;
                let direct = hi_closure_bounded(lang, &p, 8, DEFAULT_WORD_CAP, &al)?.words;
                Ok(if rebuilt == direct {
                    None
                } else {
                    let seeds: Vec<String> = lang.iter().map(|w| al.format_word(w)).collect();
                    Some(format!("pipeline mismatch on {{{}}}", seeds.join(", ")))
                })
            };
            match go() {
                Ok(v) => v,
                Err(e) => Some(err_detail(&e)),
            }
        })?;
        Ok(format!("{n} random seed languages agree"))
    };
    verdict(5, "linear grammar pipeline matches the two-sided closure", run())
}

fn random_source_grammar(rng: &mut ChaCha8Rng, alphabet: &Alphabet) -> SourceRegularGrammar {
    let names = ["S", "T", "U"];
    let nt_count = rng.gen_range(1..=3usize);
    let syms: Vec<_> = alphabet.symbols().collect();
    let prod_count = rng.gen_range(1..=5usize);
    let productions = (0..prod_count)
        .map(|_| {
            let lhs = names[rng.gen_range(0..nt_count)].to_string();
            let terminal = syms[rng.gen_range(0..syms.len())];
            let next = if rng.gen_bool(0.5) {
                Some(names[rng.gen_range(0..nt_count)].to_string())
            } else {
                None
            };
            RegProduction {
                lhs,
                terminal,
                next,
            }
        })
        .collect();
    SourceRegularGrammar::new("S", &names[..nt_count], productions, alphabet)
        .expect("generated grammar is well-formed")
}

/// Criterion 6: the encoded-strand route recovers the source language for
/// the pinned loop grammar and for seeded random grammars.
pub fn criterion_universal_encoding(seed: u64) -> CriterionResult {
    let al = standard_alphabet();
    let run = || -> std::result::Result<String, String> {
        let single = Alphabet::new(&["a"], &[("a", "a")], false).expect("static alphabet");
        let a = single.symbol("a").expect("symbol");
        let pinned = SourceRegularGrammar::new(
            "S",
            &["S"],
            vec![
                RegProduction {
                    lhs: "S".into(),
                    terminal: a,
                    next: Some("S".into()),
                },
                RegProduction {
                    lhs: "S".into(),
                    terminal: a,
                    next: None,
                },
            ],
            &single,
        )
        .expect("pinned grammar");
        let report =
            verify_universal(&pinned, 3, DEFAULT_WORD_CAP, &single).map_err(|e| err_detail(&e))?;
        let expected: LanguageSet = ["a", "aa", "aaa"]
            .iter()
            .map(|t| single.parse_word(t).expect("pinned word"))
            .collect();
        if !report.equal || report.rhs != expected {
            return Err("pinned loop grammar not recovered".into());
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(6));
        let grammars: Vec<SourceRegularGrammar> =
            (0..30).map(|_| random_source_grammar(&mut rng, &al)).collect();
        let n = sweep(&grammars, |g| {
            match verify_universal(g, 5, DEFAULT_WORD_CAP, &al) {
                Ok(report) => {
                    if report.equal && report.stable_at_higher_bound {
                        None
                    } else {
                        let side = report
                            .counterexample
                            .as_ref()
                            .map(|w| al.format_word(w))
                            .unwrap_or_else(|| "bound instability".into());
                        Some(format!("encoding mismatch, witness {side}"))
                    }
                }
                Err(e) => Some(err_detail(&e)),
            }
        })?;
        Ok(format!("pinned grammar plus {n} random grammars recovered"))
    };
    verdict(6, "encoded strands recover their source languages", run())
}

/// Criterion 7: the one-step machines agree with the step operation on
/// every short word, both sides.
pub fn criterion_machines(_seed: u64) -> CriterionResult {
    let al = standard_alphabet();
    let run = || -> std::result::Result<String, String> {
        let words = all_words(&al, 8);
        let mut cases = Vec::new();
        for side in [Side::Right, Side::Left] {
            for m in 1..=2usize {
                for k in 1..=2usize {
                    cases.push((side, m, k));
                }
            }
        }
        let mut total = 0usize;
        for (side, m, k) in cases {
            let t = build_hi_gsm(m, k, side, DEFAULT_STATE_CAP, &al).map_err(|e| err_detail(&e))?;
            let p = HiParams::new(m, k, side).map_err(|e| err_detail(&e))?;
            let n = sweep(&words, |w| {
                let go = || -> Result<Option<String>> {
                    Ok(if apply_transducer(&t, w)? == hi_step(w, &p, &al) {
                        None
                    } else {
                        Some(format!(
                            "machine mismatch ({side:?}, m={m}, k={k}) on {}",
                            al.format_word(w)
                        ))
                    })
                };
                match go() {
                    Ok(v) => v,
                    Err(e) => Some(err_detail(&e)),
                }
            })?;
            total += n;
        }
        Ok(format!("{total} machine/step comparisons agree"))
    };
    verdict(7, "one-step machines match the step operation", run())
}

/// Criterion 8: anchored steps refine free steps, larger overhang bounds
/// extend smaller ones, and the pinned strictness witness behaves.
pub fn criterion_containments() -> CriterionResult {
    let al = standard_alphabet();
    let run = || -> std::result::Result<String, String> {
        let baab = al.parse_word("baab").expect("pinned word");
        let p11 = HiParams::new(1, 1, Side::Right).map_err(|e| err_detail(&e))?;
        let anchored = bhc_step(&baab, &p11, &al);
        let free = hi_step(&baab, &p11, &al);
        let expected_anchored = LanguageSet::singleton(al.parse_word("baaba").expect("word"));
        let expected_free: LanguageSet = ["baab", "baaba", "baabb"]
            .iter()
            .map(|t| al.parse_word(t).expect("word"))
            .collect();
        if anchored != expected_anchored || free != expected_free {
            return Err("pinned step sets are wrong".into());
        }
        if !anchored.is_subset(&free) || anchored == free {
            return Err("pinned strict containment fails".into());
        }
        let words = all_words(&al, 8);
        let n = sweep(&words, |w| {
            for side in [Side::Right, Side::Left, Side::Both] {
                for k in 1..=2usize {
                    for m in 1..=2usize {
                        let go = || -> Result<Option<String>> {
                            let p = HiParams::new(m, k, side)?;
                            let wider = HiParams::new(m + 1, k, side)?;
                            let step = hi_step(w, &p, &al);
                            if !bhc_step(w, &p, &al).is_subset(&step) {
                                return Ok(Some(format!(
                                    "anchored step escapes ({side:?}, m={m}, k={k}) on {}",
                                    al.format_word(w)
                                )));
                            }
                            if !step.is_subset(&hi_step(w, &wider, &al)) {
                                return Ok(Some(format!(
                                    "overhang monotonicity fails ({side:?}, m={m}, k={k}) on {}",
                                    al.format_word(w)
                                )));
                            }
                            Ok(None)
                        };
                        match go() {
                            Ok(None) => continue,
                            Ok(some) => return some,
                            Err(e) => return Some(err_detail(&e)),
                        }
                    }
                }
            }
            None
        })?;
        Ok(format!(
            "pinned witness plus {n} words × 12 parameter combinations contained"
        ))
    };
    verdict(8, "containment laws hold", run())
}

/// Runs criteria 1 through 8 in order. The ninth criterion, byte-identical
/// command output, needs the built binary and lives with the front end.
pub fn run_all(seed: u64) -> Vec<CriterionResult> {
    vec![
        criterion_step_vs_completions(),
        criterion_incremental_updates(),
        criterion_word_grammars(),
        criterion_class_decomposition(seed),
        criterion_linear_grammar_pipeline(seed),
        criterion_universal_encoding(seed),
        criterion_machines(seed),
        criterion_containments(),
    ]
}
