//! One fixed machinery, many grammars: encoding a right-linear grammar into
//! a single strand whose hairpin closure spells out the grammar's language.
//!
//! Every production `X_i → a X_j` (with `X_j = λ` for terminal productions)
//! contributes, for every `b` in the terminal alphabet plus λ, the barred
//! block `~# ~[a,X_j] ~[b,X_i]`; the strand is the concatenation of all
//! blocks followed by the head token `[λ,S]`. Under (m,k) = (1,1) right
//! extension, a step reads the current head `[b,X_i]`, anneals to the block
//! of a production out of `X_i` guarded by `b`, and appends `[a,X_j]`: the
//! heads accumulate a derivation of the grammar. Terminal heads `[a,λ]`
//! only anneal to block middles, whose predecessor is `~#`, so the only way
//! to continue past a finished derivation is to append the stopper `#`.
//! Filtering the closure to strands with no `#` that end in a `[a,λ]`
//! token and erasing everything but the `a`s recovers the language.
//!
//! The block guard ranges over `b ∈ V ∪ {λ}` so the launch head `[λ,S]`
//! has blocks to anneal to; without the λ guard no first step exists.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::alphabet::{Alphabet, Symbol};
use crate::error::{Error, Result};
use crate::grammar::{enumerate_grammar, Grammar, GrammarKind, Production, DEFAULT_FORM_BUDGET};
use crate::hairpin::{hi_closure_bounded, HiParams, Side};
use crate::language::LanguageSet;
use crate::word::Word;

/// A right-linear grammar with no λ-productions: every production carries
/// exactly one terminal and an optional successor nonterminal.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SourceRegularGrammar {
    start: String,
    nonterminals: Vec<String>,
    productions: Vec<RegProduction>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RegProduction {
    pub lhs: String,
    pub terminal: Symbol,
    pub next: Option<String>,
}

impl SourceRegularGrammar {
    pub fn new(
        start: &str,
        nonterminals: &[&str],
        productions: Vec<RegProduction>,
        alphabet: &Alphabet,
    ) -> Result<SourceRegularGrammar> {
        let names: Vec<String> = nonterminals.iter().map(|s| s.to_string()).collect();
        if names.is_empty() {
            return Err(Error::InvalidGrammar("no nonterminals".into()));
        }
        let mut sorted = names.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != names.len() {
            return Err(Error::InvalidGrammar("duplicate nonterminal".into()));
        }
        if !names.iter().any(|n| n == start) {
            return Err(Error::InvalidGrammar(format!(
                "start symbol {start:?} is not a nonterminal"
            )));
        }
        for p in &productions {
            if !names.iter().any(|n| *n == p.lhs) {
                return Err(Error::InvalidGrammar(format!(
                    "production from unknown nonterminal {:?}",
                    p.lhs
                )));
            }
            if let Some(next) = &p.next {
                if !names.iter().any(|n| n == next) {
                    return Err(Error::InvalidGrammar(format!(
                        "production into unknown nonterminal {next:?}"
                    )));
                }
            }
            alphabet.validate_symbol(p.terminal)?;
        }
        Ok(SourceRegularGrammar {
            start: start.to_string(),
            nonterminals: names,
            productions,
        })
    }

    pub fn start(&self) -> &str {
        &self.start
    }

    pub fn nonterminals(&self) -> &[String] {
        &self.nonterminals
    }

    pub fn productions(&self) -> &[RegProduction] {
        &self.productions
    }

    /// `L(G) ∩ V^{≤ max_len}` by derivation, reusing the generic grammar
    /// enumerator on a converted production list.
    pub fn enumerate(&self, max_len: usize, alphabet: &Alphabet) -> Result<LanguageSet> {
        let g = Grammar {
            kind: GrammarKind::RightLinear,
            alphabet: alphabet.clone(),
            start: self.start.clone(),
            nonterminals: self.nonterminals.clone(),
            productions: self
                .productions
                .iter()
                .map(|p| Production {
                    lhs: p.lhs.clone(),
                    pre: Word::from_vec(vec![p.terminal]),
                    nt: p.next.clone(),
                    post: Word::empty(),
                })
                .collect(),
            class_table: BTreeMap::new(),
            class_markers: BTreeMap::new(),
        };
        enumerate_grammar(&g, max_len, DEFAULT_FORM_BUDGET)
    }

    pub fn to_json(&self, alphabet: &Alphabet) -> Value {
        json!({
            "start": self.start,
            "nonterminals": self.nonterminals,
            "productions": self
                .productions
                .iter()
                .map(|p| {
                    json!({
                        "lhs": p.lhs,
                        "terminal": alphabet.name(p.terminal),
                        "next": p.next.clone().map(Value::String).unwrap_or(Value::Null),
                    })
                })
                .collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value, alphabet: &Alphabet) -> Result<SourceRegularGrammar> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::InvalidGrammar("grammar json must be an object".into()))?;
        let start = obj
            .get("start")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::InvalidGrammar("missing start symbol".into()))?;
        let nonterminals: Vec<&str> = obj
            .get("nonterminals")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::InvalidGrammar("missing nonterminals".into()))?
            .iter()
            .map(|n| {
                n.as_str()
                    .ok_or_else(|| Error::InvalidGrammar("nonterminal names must be strings".into()))
            })
            .collect::<Result<_>>()?;
        let mut productions = Vec::new();
        for p in obj
            .get("productions")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::InvalidGrammar("missing productions".into()))?
        {
            let pobj = p
                .as_object()
                .ok_or_else(|| Error::InvalidGrammar("production must be an object".into()))?;
            let lhs = pobj
                .get("lhs")
                .and_then(Value::as_str)
                .ok_or_else(|| Error::InvalidGrammar("production missing lhs".into()))?;
            let terminal = pobj
                .get("terminal")
                .and_then(Value::as_str)
                .ok_or_else(|| {
                    Error::InvalidGrammar("production missing its terminal symbol".into())
                })?;
            let terminal = alphabet.require_symbol(terminal)?;
            let next = match pobj.get("next") {
                None | Some(Value::Null) => None,
                Some(Value::String(s)) => Some(s.clone()),
                Some(_) => {
                    return Err(Error::InvalidGrammar(
                        "production next must be a string or null".into(),
                    ))
                }
            };
            productions.push(RegProduction {
                lhs: lhs.to_string(),
                terminal,
                next,
            });
        }
        SourceRegularGrammar::new(start, &nonterminals, productions, alphabet)
    }
}

/// The fixed strand and bookkeeping produced by [`encode_regular_grammar`].
#[derive(Clone, PartialEq, Debug)]
pub struct EncodedInstance {
    pub(crate) tokens: Alphabet,
    pub(crate) base: Alphabet,
    pub(crate) strand: Word,
    pub(crate) v_dprime: Vec<Symbol>,
    pub(crate) hash: Symbol,
    pub(crate) coding: BTreeMap<Symbol, Option<Symbol>>,
}

impl EncodedInstance {
    /// The token alphabet V′ with its barred involution.
    pub fn tokens(&self) -> &Alphabet {
        &self.tokens
    }

    pub fn strand(&self) -> &Word {
        &self.strand
    }

    /// The accepting token set V″ = { [a,λ] } of terminal heads.
    pub fn v_dprime(&self) -> &[Symbol] {
        &self.v_dprime
    }

    pub fn hash_symbol(&self) -> Symbol {
        self.hash
    }

    /// The weak coding h, one token at a time.
    pub fn code_token(&self, t: Symbol) -> Option<Symbol> {
        self.coding.get(&t).copied().flatten()
    }

    /// h applied letterwise to a token word.
    pub fn code_word(&self, w: &Word) -> Word {
        w.symbols().iter().filter_map(|&t| self.code_token(t)).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "tokens": self.tokens.to_json(),
            "strand": self.tokens.word_to_json(&self.strand),
            "v_dprime": self
                .v_dprime
                .iter()
                .map(|&t| self.tokens.name(t))
                .collect::<Vec<_>>(),
            "hash": self.tokens.name(self.hash),
            "coding": self
                .coding
                .iter()
                .map(|(t, img)| {
                    json!([
                        self.tokens.name(*t),
                        img.map(|s| Value::String(self.base.name(s).to_string()))
                            .unwrap_or(Value::Null),
                    ])
                })
                .collect::<Vec<_>>(),
        })
    }
}

fn token_name(x: Option<&str>, y: Option<&str>) -> String {
    format!("[{},{}]", x.unwrap_or("λ"), y.unwrap_or("λ"))
}

/// Builds the token alphabet and strand for a source grammar.
///
/// Tokens pair `[x,Y] ↔ ~[x,Y]` and `# ↔ ~#`; the strand is all-barred
/// except its final `[λ,S]` head. Block order follows production order,
/// with the guard `b` running through the terminals in alphabet order and
/// λ last.
pub fn encode_regular_grammar(
    g: &SourceRegularGrammar,
    alphabet: &Alphabet,
) -> Result<EncodedInstance> {
    if g.productions.is_empty() {
        return Err(Error::InvalidGrammar(
            "cannot encode a grammar with no productions".into(),
        ));
    }
    let mut names: Vec<String> = Vec::new();
    let mut pairs: Vec<(String, String)> = Vec::new();
    let mut xs: Vec<Option<Symbol>> = alphabet.symbols().map(Some).collect();
    xs.push(None);
    let mut ys: Vec<Option<&str>> = g.nonterminals.iter().map(|n| Some(n.as_str())).collect();
    ys.push(None);
    for &x in &xs {
        for &y in &ys {
            if x.is_none() && y.is_none() {
                continue;
            }
            let name = token_name(x.map(|s| alphabet.name(s)), y);
            let barred = format!("~{name}");
            pairs.push((name.clone(), barred.clone()));
            names.push(name);
            names.push(barred);
        }
    }
    names.push("#".into());
    names.push("~#".into());
    pairs.push(("#".into(), "~#".into()));
    let name_refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let pair_refs: Vec<(&str, &str)> = pairs.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    let tokens = Alphabet::new(&name_refs, &pair_refs, true)?;
    let get = |x: Option<Symbol>, y: Option<&str>| {
        tokens
            .symbol(&token_name(x.map(|s| alphabet.name(s)), y))
            .expect("token present by construction")
    };
    let bar_get = |x: Option<Symbol>, y: Option<&str>| tokens.bar(get(x, y));
    let hash = tokens.symbol("#").expect("hash token");
    let bar_hash = tokens.bar(hash);
    let mut strand = Vec::new();
    for p in &g.productions {
        for &b in &xs {
            strand.push(bar_hash);
            strand.push(bar_get(Some(p.terminal), p.next.as_deref()));
            strand.push(bar_get(b, Some(p.lhs.as_str())));
        }
    }
    strand.push(get(None, Some(g.start.as_str())));
    let v_dprime: Vec<Symbol> = alphabet.symbols().map(|a| get(Some(a), None)).collect();
    let mut coding = BTreeMap::new();
    for t in tokens.symbols() {
        coding.insert(t, None);
    }
    for &a in xs.iter().flatten() {
        for &y in &ys {
            coding.insert(get(Some(a), y), Some(a));
        }
    }
    Ok(EncodedInstance {
        tokens,
        base: alphabet.clone(),
        strand: Word::from_vec(strand),
        v_dprime,
        hash,
        coding,
    })
}

pub(crate) fn universal_language_with_slack(
    inst: &EncodedInstance,
    max_len: usize,
    slack: usize,
    word_cap: usize,
    filter_hash: bool,
) -> Result<LanguageSet> {
    let bound = inst.strand.len() + max_len + 1 + slack;
    let p = HiParams::new(1, 1, Side::Right).expect("fixed parameters");
    let closure = hi_closure_bounded(
        &LanguageSet::singleton(inst.strand.clone()),
        &p,
        bound,
        word_cap,
        &inst.tokens,
    )?
    .words;
    let mut out = LanguageSet::new();
    for w in &closure {
        let last = match w.symbols().last() {
            Some(&t) => t,
            None => continue,
        };
        if !inst.v_dprime.contains(&last) {
            continue;
        }
        if filter_hash && w.symbols().contains(&inst.hash) {
            continue;
        }
        let image = inst.code_word(w);
        if image.len() <= max_len {
            out.insert(image);
        }
    }
    Ok(out)
}

/// `h( rHI*₁,₁(strand) ∩ (V′−{#})* V″ )` truncated to `max_len`.
///
/// The closure is explored up to strand length `|strand| + max_len + 1`:
/// every productive step appends a single token, and an image of length `n`
/// needs at most `n + 1` appended tokens.
pub fn universal_language_bounded(
    inst: &EncodedInstance,
    max_len: usize,
    word_cap: usize,
) -> Result<LanguageSet> {
    universal_language_with_slack(inst, max_len, 0, word_cap, true)
}

/// The verdict of [`verify_universal`]: both language listings, whether
/// they agree, and whether the strand-length bound was already saturated.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UniversalReport {
    pub lhs: LanguageSet,
    pub rhs: LanguageSet,
    pub equal: bool,
    pub counterexample: Option<Word>,
    pub stable_at_higher_bound: bool,
}

impl UniversalReport {
    pub fn to_json(&self, alphabet: &Alphabet) -> Value {
        json!({
            "equal": self.equal,
            "stable_at_higher_bound": self.stable_at_higher_bound,
            "lhs": self.lhs.to_json(alphabet),
            "rhs": self.rhs.to_json(alphabet),
            "counterexample": self
                .counterexample
                .as_ref()
                .map(|w| alphabet.word_to_json(w))
                .unwrap_or(Value::Null),
        })
    }
}

/// Checks `L(G) ∩ V^{≤max_len}` against the encoded route, reporting the
/// first difference if any. The encoded side is recomputed with two tokens
/// of extra slack to confirm the bound lost nothing.
pub fn verify_universal(
    g: &SourceRegularGrammar,
    max_len: usize,
    word_cap: usize,
    alphabet: &Alphabet,
) -> Result<UniversalReport> {
    let inst = encode_regular_grammar(g, alphabet)?;
    let lhs = g.enumerate(max_len, alphabet)?;
    let rhs = universal_language_with_slack(&inst, max_len, 0, word_cap, true)?;
    let widened = universal_language_with_slack(&inst, max_len, 2, word_cap, true)?;
    let equal = lhs == rhs;
    let counterexample = if equal {
        None
    } else {
        lhs.symmetric_difference(&rhs).into_iter().next().cloned()
    };
    Ok(UniversalReport {
        stable_at_higher_bound: rhs == widened,
        lhs,
        rhs,
        equal,
        counterexample,
    })
}
