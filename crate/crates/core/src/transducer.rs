//! The one-step extension as a nondeterministic finite transducer.
//!
//! The right machine copies its input and nondeterministically brackets an
//! annealing window: it reads the overhang-to-be `γ` (at most `m` symbols)
//! and the stem `α` (exactly `k`), loops over the middle, then insists the
//! input ends with `rc(α)`, consumed symbol by symbol. Accepting there
//! emits `rc(γ)` as a final output after the last input symbol, so the run
//! produces `w·rc(γ)`. A plain copy path accepts everything with final λ,
//! which is exactly the identity fallback of the step operation.
//!
//! The left machine must emit `rc(γ)` before reading any of `w`, so it
//! guesses `γ` upfront, emits its complement along with the first input
//! symbol, and only accepts if the guess is confirmed: stem at the front,
//! its mirror later, then the guessed `γ`, then anything.
//!
//! States are descriptor-driven and built by search from the initial
//! state; a final co-reachability sweep removes dead states so the
//! reported state count means something.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde_json::{json, Value};

use crate::alphabet::{Alphabet, Symbol};
use crate::error::{Error, Result};
use crate::hairpin::Side;
use crate::language::LanguageSet;
use crate::word::Word;

/// Default bound on constructed transducer states.
pub const DEFAULT_STATE_CAP: usize = 100_000;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
enum RightState {
    Copy,
    Grow(Word),
    Stem(Word, Word),
    Loop(Word, Word),
    Match(Word, Word, usize),
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
enum LeftState {
    Start,
    Copy,
    Stem(Word, Word),
    Loop(Word, Word),
    Match(Word, Word, usize),
    Verify(Word, usize),
    Tail,
}

/// A nondeterministic gsm with an optional final output per state.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NondetTransducer {
    alphabet: Alphabet,
    names: Vec<String>,
    initial: usize,
    finals: Vec<Option<Word>>,
    transitions: Vec<BTreeMap<Symbol, BTreeSet<(usize, Word)>>>,
}

impl NondetTransducer {
    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.names.len()
    }

    pub fn state_names(&self) -> &[String] {
        &self.names
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn final_output(&self, state: usize) -> Option<&Word> {
        self.finals[state].as_ref()
    }

    pub fn to_json(&self) -> Value {
        let states: Vec<Value> = self
            .names
            .iter()
            .enumerate()
            .map(|(i, name)| {
                json!({
                    "name": name,
                    "final": self.finals[i]
                        .as_ref()
                        .map(|f| self.alphabet.word_to_json(f))
                        .unwrap_or(Value::Null),
                })
            })
            .collect();
        let mut transitions = Vec::new();
        for (i, by_symbol) in self.transitions.iter().enumerate() {
            for (&sym, targets) in by_symbol {
                for (j, out) in targets {
                    transitions.push(json!({
                        "from": self.names[i],
                        "on": self.alphabet.name(sym),
                        "to": self.names[*j],
                        "out": self.alphabet.word_to_json(out),
                    }));
                }
            }
        }
        json!({
            "initial": self.names[self.initial],
            "states": states,
            "transitions": transitions,
        })
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph gsm {\n  rankdir=LR;\n  node [shape=circle];\n");
        for (i, name) in self.names.iter().enumerate() {
            let shape = if self.finals[i].is_some() {
                "doublecircle"
            } else {
                "circle"
            };
            let extra = match &self.finals[i] {
                Some(f) if !f.is_empty() => {
                    format!(" / {}", self.alphabet.format_word(f))
                }
                _ => String::new(),
            };
            out.push_str(&format!(
                "  \"{name}\" [shape={shape}, label=\"{name}{extra}\"];\n"
            ));
        }
        for (i, by_symbol) in self.transitions.iter().enumerate() {
            for (&sym, targets) in by_symbol {
                for (j, word) in targets {
                    out.push_str(&format!(
                        "  \"{}\" -> \"{}\" [label=\"{} / {}\"];\n",
                        self.names[i],
                        self.names[*j],
                        self.alphabet.name(sym),
                        self.alphabet.format_word(word),
                    ));
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

/// All outputs of accepting runs of `t` on `w`.
pub fn apply_transducer(t: &NondetTransducer, w: &Word) -> Result<LanguageSet> {
    t.alphabet.validate_word(w)?;
    let mut runs: BTreeSet<(usize, Word)> = BTreeSet::from([(t.initial, Word::empty())]);
    for &sym in w.symbols() {
        let mut next = BTreeSet::new();
        for (state, out) in &runs {
            if let Some(targets) = t.transitions[*state].get(&sym) {
                for (j, emitted) in targets {
                    next.insert((*j, out.concat(emitted)));
                }
            }
        }
        runs = next;
    }
    let mut out = LanguageSet::new();
    for (state, emitted) in runs {
        if let Some(f) = &t.finals[state] {
            out.insert(emitted.concat(f));
        }
    }
    Ok(out)
}

/// Pointwise application to a finite language.
pub fn apply_transducer_language(t: &NondetTransducer, lang: &LanguageSet) -> Result<LanguageSet> {
    let mut out = LanguageSet::new();
    for w in lang {
        out.union_with(&apply_transducer(t, w)?);
    }
    Ok(out)
}

struct Builder<S: Ord + Clone> {
    index: BTreeMap<S, usize>,
    order: Vec<S>,
    cap: usize,
}

impl<S: Ord + Clone> Builder<S> {
    fn new(cap: usize) -> Builder<S> {
        Builder {
            index: BTreeMap::new(),
            order: Vec::new(),
            cap,
        }
    }

    fn intern(&mut self, s: S, queue: &mut VecDeque<S>) -> Result<usize> {
        match self.index.get(&s) {
            Some(&i) => Ok(i),
            None => {
                let i = self.order.len();
                if i >= self.cap {
                    return Err(Error::StateCapExceeded { cap: self.cap });
                }
                self.index.insert(s.clone(), i);
                self.order.push(s.clone());
                queue.push_back(s);
                Ok(i)
            }
        }
    }
}

fn check_machine_params(m: usize, k: usize, alphabet: &Alphabet) -> Result<()> {
    if m == 0 || k == 0 {
        return Err(Error::InvalidParams(format!(
            "m and k must be at least 1 (got m={m}, k={k})"
        )));
    }
    if alphabet.len() == 0 {
        return Err(Error::InvalidParams("empty alphabet".into()));
    }
    Ok(())
}

/// Builds the one-step machine for the requested side.
pub fn build_hi_gsm(
    m: usize,
    k: usize,
    side: Side,
    state_cap: usize,
    alphabet: &Alphabet,
) -> Result<NondetTransducer> {
    check_machine_params(m, k, alphabet)?;
    match side {
        Side::Right => build_right(m, k, state_cap, alphabet),
        Side::Left => build_left(m, k, state_cap, alphabet),
        Side::Both => Err(Error::InvalidParams(
            "the machine realizes one side per instance; build right and left separately".into(),
        )),
    }
}

fn right_name(s: &RightState, alphabet: &Alphabet) -> String {
    match s {
        RightState::Copy => "copy".into(),
        RightState::Grow(g) => format!("grow:{}", alphabet.format_word(g)),
        RightState::Stem(g, p) => format!(
            "stem:{}|{}",
            alphabet.format_word(g),
            alphabet.format_word(p)
        ),
        RightState::Loop(g, a) => format!(
            "mid:{}|{}",
            alphabet.format_word(g),
            alphabet.format_word(a)
        ),
        RightState::Match(g, a, j) => format!(
            "close:{}|{}|{}",
            alphabet.format_word(g),
            alphabet.format_word(a),
            j
        ),
    }
}

fn build_right(m: usize, k: usize, state_cap: usize, alphabet: &Alphabet) -> Result<NondetTransducer> {
    let mut b: Builder<RightState> = Builder::new(state_cap);
    let mut queue = VecDeque::new();
    let initial = b.intern(RightState::Copy, &mut queue)?;
    let mut transitions: Vec<BTreeMap<Symbol, BTreeSet<(usize, Word)>>> = Vec::new();
    while let Some(state) = queue.pop_front() {
        let i = b.index[&state];
        if transitions.len() <= i {
            transitions.resize_with(i + 1, BTreeMap::new);
        }
        let mut row: BTreeMap<Symbol, BTreeSet<(usize, Word)>> = BTreeMap::new();
        let push = |row: &mut BTreeMap<Symbol, BTreeSet<(usize, Word)>>,
                        sym: Symbol,
                        target: usize| {
            row.entry(sym)
                .or_default()
                .insert((target, Word::from_vec(vec![sym])));
        };
        match &state {
            RightState::Copy => {
                for sym in alphabet.symbols() {
                    let copy = b.intern(RightState::Copy, &mut queue)?;
                    push(&mut row, sym, copy);
                    let grow = b.intern(RightState::Grow(Word::from_vec(vec![sym])), &mut queue)?;
                    push(&mut row, sym, grow);
                    let stem =
                        stem_target(&mut b, &mut queue, Word::empty(), Word::from_vec(vec![sym]), k)?;
                    push(&mut row, sym, stem);
                }
            }
            RightState::Grow(g) => {
                for sym in alphabet.symbols() {
                    if g.len() < m {
                        let grow = b.intern(RightState::Grow(g.appended(sym)), &mut queue)?;
                        push(&mut row, sym, grow);
                    }
                    let stem =
                        stem_target(&mut b, &mut queue, g.clone(), Word::from_vec(vec![sym]), k)?;
                    push(&mut row, sym, stem);
                }
            }
            RightState::Stem(g, p) => {
                for sym in alphabet.symbols() {
                    let stem = stem_target(&mut b, &mut queue, g.clone(), p.appended(sym), k)?;
                    push(&mut row, sym, stem);
                }
            }
            RightState::Loop(g, a) => {
                for sym in alphabet.symbols() {
                    let again = b.intern(RightState::Loop(g.clone(), a.clone()), &mut queue)?;
                    push(&mut row, sym, again);
                }
                let target = alphabet.rc(a);
                let first = target.symbols()[0];
                let matching = b.intern(RightState::Match(g.clone(), a.clone(), 1), &mut queue)?;
                push(&mut row, first, matching);
            }
            RightState::Match(g, a, j) => {
                if *j < k {
                    let target = alphabet.rc(a);
                    let sym = target.symbols()[*j];
                    let next = b.intern(RightState::Match(g.clone(), a.clone(), j + 1), &mut queue)?;
                    push(&mut row, sym, next);
                }
            }
        }
        transitions[i] = row;
    }
    transitions.resize_with(b.order.len(), BTreeMap::new);
    let finals: Vec<Option<Word>> = b
        .order
        .iter()
        .map(|s| match s {
            RightState::Copy => Some(Word::empty()),
            RightState::Match(g, _, j) if *j == k => Some(alphabet.rc(g)),
            _ => None,
        })
        .collect();
    let names = b.order.iter().map(|s| right_name(s, alphabet)).collect();
    Ok(prune(NondetTransducer {
        alphabet: alphabet.clone(),
        names,
        initial,
        finals,
        transitions,
    }))
}

fn stem_target(
    b: &mut Builder<RightState>,
    queue: &mut VecDeque<RightState>,
    g: Word,
    p: Word,
    k: usize,
) -> Result<usize> {
    if p.len() == k {
        b.intern(RightState::Loop(g, p), queue)
    } else {
        b.intern(RightState::Stem(g, p), queue)
    }
}

fn left_name(s: &LeftState, alphabet: &Alphabet) -> String {
    match s {
        LeftState::Start => "start".into(),
        LeftState::Copy => "copy".into(),
        LeftState::Stem(g, p) => format!(
            "stem:{}|{}",
            alphabet.format_word(g),
            alphabet.format_word(p)
        ),
        LeftState::Loop(g, a) => format!(
            "mid:{}|{}",
            alphabet.format_word(g),
            alphabet.format_word(a)
        ),
        LeftState::Match(g, a, j) => format!(
            "close:{}|{}|{}",
            alphabet.format_word(g),
            alphabet.format_word(a),
            j
        ),
        LeftState::Verify(g, i) => format!("confirm:{}|{}", alphabet.format_word(g), i),
        LeftState::Tail => "tail".into(),
    }
}

fn guesses(m: usize, alphabet: &Alphabet) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut layer = vec![Word::empty()];
    for _ in 0..m {
        let mut next = Vec::new();
        for g in &layer {
            for sym in alphabet.symbols() {
                let longer = g.appended(sym);
                out.push(longer.clone());
                next.push(longer);
            }
        }
        layer = next;
    }
    out.sort();
    out
}

fn build_left(m: usize, k: usize, state_cap: usize, alphabet: &Alphabet) -> Result<NondetTransducer> {
    let mut b: Builder<LeftState> = Builder::new(state_cap);
    let mut queue = VecDeque::new();
    let initial = b.intern(LeftState::Start, &mut queue)?;
    let mut transitions: Vec<BTreeMap<Symbol, BTreeSet<(usize, Word)>>> = Vec::new();
    let all_guesses = guesses(m, alphabet);
    while let Some(state) = queue.pop_front() {
        let i = b.index[&state];
        if transitions.len() <= i {
            transitions.resize_with(i + 1, BTreeMap::new);
        }
        let mut row: BTreeMap<Symbol, BTreeSet<(usize, Word)>> = BTreeMap::new();
        let push = |row: &mut BTreeMap<Symbol, BTreeSet<(usize, Word)>>,
                        sym: Symbol,
                        target: usize,
                        out: Word| {
            row.entry(sym).or_default().insert((target, out));
        };
        match &state {
            LeftState::Start => {
                for sym in alphabet.symbols() {
                    let copy = b.intern(LeftState::Copy, &mut queue)?;
                    push(&mut row, sym, copy, Word::from_vec(vec![sym]));
                    for g in &all_guesses {
                        let p = Word::from_vec(vec![sym]);
                        let target = if p.len() == k {
                            b.intern(LeftState::Loop(g.clone(), p), &mut queue)?
                        } else {
                            b.intern(LeftState::Stem(g.clone(), p), &mut queue)?
                        };
                        push(&mut row, sym, target, alphabet.rc(g).appended(sym));
                    }
                }
            }
            LeftState::Copy => {
                for sym in alphabet.symbols() {
                    let copy = b.intern(LeftState::Copy, &mut queue)?;
                    push(&mut row, sym, copy, Word::from_vec(vec![sym]));
                }
            }
            LeftState::Stem(g, p) => {
                for sym in alphabet.symbols() {
                    let grown = p.appended(sym);
                    let target = if grown.len() == k {
                        b.intern(LeftState::Loop(g.clone(), grown), &mut queue)?
                    } else {
                        b.intern(LeftState::Stem(g.clone(), grown), &mut queue)?
                    };
                    push(&mut row, sym, target, Word::from_vec(vec![sym]));
                }
            }
            LeftState::Loop(g, a) => {
                for sym in alphabet.symbols() {
                    let again = b.intern(LeftState::Loop(g.clone(), a.clone()), &mut queue)?;
                    push(&mut row, sym, again, Word::from_vec(vec![sym]));
                }
                let target = alphabet.rc(a);
                let first = target.symbols()[0];
                let matching = b.intern(LeftState::Match(g.clone(), a.clone(), 1), &mut queue)?;
                push(&mut row, first, matching, Word::from_vec(vec![first]));
            }
            LeftState::Match(g, a, j) => {
                if *j < k {
                    let target = alphabet.rc(a);
                    let sym = target.symbols()[*j];
                    let next = b.intern(LeftState::Match(g.clone(), a.clone(), j + 1), &mut queue)?;
                    push(&mut row, sym, next, Word::from_vec(vec![sym]));
                } else {
                    let next_state = verify_target(&mut b, &mut queue, g, 0)?;
                    if let Some((sym, target)) = next_state {
                        push(&mut row, sym, target, Word::from_vec(vec![sym]));
                    } else {
                        let tail = b.intern(LeftState::Tail, &mut queue)?;
                        for sym in alphabet.symbols() {
                            push(&mut row, sym, tail, Word::from_vec(vec![sym]));
                        }
                    }
                }
            }
            LeftState::Verify(g, i) => {
                let next_state = verify_target(&mut b, &mut queue, g, *i)?;
                if let Some((sym, target)) = next_state {
                    push(&mut row, sym, target, Word::from_vec(vec![sym]));
                } else {
                    let tail = b.intern(LeftState::Tail, &mut queue)?;
                    for sym in alphabet.symbols() {
                        push(&mut row, sym, tail, Word::from_vec(vec![sym]));
                    }
                }
            }
            LeftState::Tail => {
                for sym in alphabet.symbols() {
                    let tail = b.intern(LeftState::Tail, &mut queue)?;
                    push(&mut row, sym, tail, Word::from_vec(vec![sym]));
                }
            }
        }
        transitions[i] = row;
    }
    transitions.resize_with(b.order.len(), BTreeMap::new);
    let finals: Vec<Option<Word>> = b
        .order
        .iter()
        .map(|s| match s {
            LeftState::Start | LeftState::Copy | LeftState::Tail => Some(Word::empty()),
            LeftState::Match(g, _, j) if *j == k && g.is_empty() => Some(Word::empty()),
            LeftState::Verify(g, i) if *i == g.len() => Some(Word::empty()),
            _ => None,
        })
        .collect();
    let names = b.order.iter().map(|s| left_name(s, alphabet)).collect();
    Ok(prune(NondetTransducer {
        alphabet: alphabet.clone(),
        names,
        initial,
        finals,
        transitions,
    }))
}

type VerifyStep = Option<(Symbol, usize)>;

fn verify_target(
    b: &mut Builder<LeftState>,
    queue: &mut VecDeque<LeftState>,
    g: &Word,
    i: usize,
) -> Result<VerifyStep> {
    if i < g.len() {
        let sym = g.symbols()[i];
        let next = b.intern(LeftState::Verify(g.clone(), i + 1), queue)?;
        Ok(Some((sym, next)))
    } else {
        Ok(None)
    }
}

/// Drops states that cannot reach acceptance, then reindexes.
fn prune(t: NondetTransducer) -> NondetTransducer {
    let n = t.names.len();
    let mut co: Vec<bool> = t.finals.iter().map(Option::is_some).collect();
    loop {
        let mut changed = false;
        for i in 0..n {
            if co[i] {
                continue;
            }
            let reaches = t.transitions[i]
                .values()
                .flatten()
                .any(|(j, _)| co[*j]);
            if reaches {
                co[i] = true;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let mut remap: Vec<Option<usize>> = vec![None; n];
    let mut kept = 0;
    for i in 0..n {
        if co[i] {
            remap[i] = Some(kept);
            kept += 1;
        }
    }
    let mut names = Vec::with_capacity(kept);
    let mut finals = Vec::with_capacity(kept);
    let mut transitions = Vec::with_capacity(kept);
    for i in 0..n {
        if remap[i].is_none() {
            continue;
        }
        names.push(t.names[i].clone());
        finals.push(t.finals[i].clone());
        let mut row: BTreeMap<Symbol, BTreeSet<(usize, Word)>> = BTreeMap::new();
        for (&sym, targets) in &t.transitions[i] {
            let mapped: BTreeSet<(usize, Word)> = targets
                .iter()
                .filter_map(|(j, w)| remap[*j].map(|jj| (jj, w.clone())))
                .collect();
            if !mapped.is_empty() {
                row.insert(sym, mapped);
            }
        }
        transitions.push(row);
    }
    let initial = remap[t.initial].expect("initial state must stay co-reachable");
    NondetTransducer {
        alphabet: t.alphabet,
        names,
        initial,
        finals,
        transitions,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hairpin::{hi_step, HiParams};

    fn ab() -> Alphabet {
        Alphabet::new(&["a", "b"], &[("a", "b")], false).unwrap()
    }

    fn w(al: &Alphabet, t: &str) -> Word {
        al.parse_word(t).unwrap()
    }

    #[test]
    fn right_machine_reproduces_the_step() {
        let al = ab();
        let t = build_hi_gsm(1, 1, Side::Right, DEFAULT_STATE_CAP, &al).unwrap();
        let got = apply_transducer(&t, &w(&al, "aab")).unwrap();
        let expected: LanguageSet = ["aab", "aabb"].iter().map(|s| w(&al, s)).collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn left_machine_reproduces_the_step() {
        let al = ab();
        let t = build_hi_gsm(1, 1, Side::Left, DEFAULT_STATE_CAP, &al).unwrap();
        let got = apply_transducer(&t, &w(&al, "baa")).unwrap();
        let expected: LanguageSet = ["baa", "bbaa"].iter().map(|s| w(&al, s)).collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn short_words_pass_through_the_copy_path() {
        let al = ab();
        for side in [Side::Right, Side::Left] {
            let t = build_hi_gsm(1, 1, side, DEFAULT_STATE_CAP, &al).unwrap();
            let got = apply_transducer(&t, &w(&al, "a")).unwrap();
            assert_eq!(got, LanguageSet::singleton(w(&al, "a")));
            let got = apply_transducer(&t, &Word::empty()).unwrap();
            assert_eq!(got, LanguageSet::singleton(Word::empty()));
        }
    }

    #[test]
    fn machines_agree_with_the_step_everywhere_small() {
        let al = ab();
        let syms: Vec<Symbol> = al.symbols().collect();
        for side in [Side::Right, Side::Left] {
            for m in 1..=2 {
                for k in 1..=2 {
                    let t = build_hi_gsm(m, k, side, DEFAULT_STATE_CAP, &al).unwrap();
                    let p = HiParams::new(m, k, side).unwrap();
                    for len in 0..=6usize {
                        for code in 0..(1u32 << len) {
                            let word: Word =
                                (0..len).map(|i| syms[(code >> i & 1) as usize]).collect();
                            assert_eq!(
                                apply_transducer(&t, &word).unwrap(),
                                hi_step(&word, &p, &al),
                                "side {side:?} m={m} k={k} {word:?}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn identity_machine_copies() {
        let al = ab();
        let mut transitions: Vec<BTreeMap<Symbol, BTreeSet<(usize, Word)>>> =
            vec![BTreeMap::new()];
        for sym in al.symbols() {
            transitions[0]
                .entry(sym)
                .or_default()
                .insert((0, Word::from_vec(vec![sym])));
        }
        let t = NondetTransducer {
            alphabet: al.clone(),
            names: vec!["copy".into()],
            initial: 0,
            finals: vec![Some(Word::empty())],
            transitions,
        };
        let input = w(&al, "abba");
        assert_eq!(
            apply_transducer(&t, &input).unwrap(),
            LanguageSet::singleton(input.clone())
        );
    }

    #[test]
    fn language_application_distributes_over_union() {
        let al = ab();
        let t = build_hi_gsm(1, 1, Side::Right, DEFAULT_STATE_CAP, &al).unwrap();
        let l1: LanguageSet = ["aab", "ab"].iter().map(|s| w(&al, s)).collect();
        let l2: LanguageSet = ["baab"].iter().map(|s| w(&al, s)).collect();
        let mut union = l1.clone();
        union.union_with(&l2);
        let mut pointwise = apply_transducer_language(&t, &l1).unwrap();
        pointwise.union_with(&apply_transducer_language(&t, &l2).unwrap());
        assert_eq!(apply_transducer_language(&t, &union).unwrap(), pointwise);
    }

    #[test]
    fn construction_is_deterministic_and_pruned() {
        let al = ab();
        for side in [Side::Right, Side::Left] {
            let t1 = build_hi_gsm(2, 2, side, DEFAULT_STATE_CAP, &al).unwrap();
            let t2 = build_hi_gsm(2, 2, side, DEFAULT_STATE_CAP, &al).unwrap();
            assert_eq!(t1.state_count(), t2.state_count());
            assert_eq!(
                serde_json::to_string(&t1.to_json()).unwrap(),
                serde_json::to_string(&t2.to_json()).unwrap()
            );
            for m in &t1.finals {
                if let Some(f) = m {
                    assert!(f.len() <= 2);
                }
            }
        }
    }

    #[test]
    fn state_cap_is_loud() {
        let al = ab();
        assert!(matches!(
            build_hi_gsm(2, 2, Side::Right, 5, &al),
            Err(Error::StateCapExceeded { cap: 5 })
        ));
    }

    #[test]
    fn both_side_request_is_rejected() {
        let al = ab();
        assert!(matches!(
            build_hi_gsm(1, 1, Side::Both, DEFAULT_STATE_CAP, &al),
            Err(Error::InvalidParams(_))
        ));
    }

    #[test]
    fn foreign_input_is_rejected() {
        let al = ab();
        let wide = Alphabet::new(&["a", "b", "c"], &[("a", "b"), ("c", "c")], false).unwrap();
        let t = build_hi_gsm(1, 1, Side::Right, DEFAULT_STATE_CAP, &al).unwrap();
        let bad = Word::from_vec(vec![wide.symbol("c").unwrap()]);
        assert!(apply_transducer(&t, &bad).is_err());
    }

    #[test]
    fn dot_export_lists_states() {
        let al = ab();
        let t = build_hi_gsm(1, 1, Side::Right, DEFAULT_STATE_CAP, &al).unwrap();
        let dot = t.to_dot();
        assert!(dot.starts_with("digraph"));
        for name in t.state_names() {
            assert!(dot.contains(name.as_str()));
        }
    }
}
