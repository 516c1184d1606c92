//! Grammars whose languages are hairpin closures.
//!
//! Two constructions live here. [`build_gw`] turns a single word into a
//! right-linear grammar generating the one-sided closure of that word:
//! nonterminals are the signature classes reachable from the word, a
//! production `D_i → r D_j` records that appending the completion `r` moves
//! class `i` to class `j`, and `D_i → λ` closes off every intermediate.
//! [`build_gl`] does the same for a finite seed language under extension on
//! both ends, producing a linear grammar over an extended alphabet whose
//! words spell a right-block sequence, a `$` separator, a reversed
//! left-block sequence, and a class marker; [`reconstruct_closure`] folds
//! such words back into closure words by rotating the marker to the front,
//! stripping `$`, and substituting each marker with its seed class.
//!
//! Only classes reachable from the seeds are materialized; the full quotient
//! of `V*` by signature equivalence is never enumerated.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde_json::{json, Map, Value};

use crate::alphabet::{Alphabet, Symbol};
use crate::error::{Error, Result};
use crate::hairpin::Side;
use crate::language::{
    circular_permutations_set, left_derivative, right_derivative, substitute, LanguageSet,
};
use crate::signature::{
    compute_full_signature, compute_left_signature, compute_right_signature, FullSignature,
    LeftSignature, RightSignature,
};
use crate::word::Word;

/// Default bound on materialized signature classes.
pub const DEFAULT_CLASS_CAP: usize = 10_000;
/// Default bound on visited sentential forms during enumeration.
pub const DEFAULT_FORM_BUDGET: usize = 1_000_000;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GrammarKind {
    RightLinear,
    Linear,
}

impl GrammarKind {
    pub fn as_str(self) -> &'static str {
        match self {
            GrammarKind::RightLinear => "right_linear",
            GrammarKind::Linear => "linear",
        }
    }
}

/// A production `lhs → pre · nt · post`, with `nt = None` for terminal
/// productions (whole body in `pre`).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Production {
    pub lhs: String,
    pub pre: Word,
    pub nt: Option<String>,
    pub post: Word,
}

/// A grammar produced by [`build_gw`] or [`build_gl`], or reimported from
/// JSON. Owns its terminal alphabet (the extended one for linear grammars).
///
/// `class_table` keeps the canonical signature of each class nonterminal in
/// serialized form; `class_markers` maps each marker symbol of a linear
/// grammar to its seed class.
#[derive(Clone, PartialEq, Debug)]
pub struct Grammar {
    pub(crate) kind: GrammarKind,
    pub(crate) alphabet: Alphabet,
    pub(crate) start: String,
    pub(crate) nonterminals: Vec<String>,
    pub(crate) productions: Vec<Production>,
    pub(crate) class_table: BTreeMap<String, Value>,
    pub(crate) class_markers: BTreeMap<String, Vec<Word>>,
}

impl Grammar {
    pub fn kind(&self) -> GrammarKind {
        self.kind
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn start(&self) -> &str {
        &self.start
    }

    pub fn nonterminals(&self) -> &[String] {
        &self.nonterminals
    }

    pub fn productions(&self) -> &[Production] {
        &self.productions
    }

    pub fn class_table(&self) -> &BTreeMap<String, Value> {
        &self.class_table
    }

    pub fn class_markers(&self) -> &BTreeMap<String, Vec<Word>> {
        &self.class_markers
    }

    /// Distinct non-λ terminal blocks appearing before the nonterminal.
    pub fn right_blocks(&self) -> BTreeSet<Word> {
        self.productions
            .iter()
            .filter(|p| p.nt.is_some() && !p.pre.is_empty())
            .map(|p| p.pre.clone())
            .collect()
    }

    /// Distinct non-λ terminal blocks appearing after the nonterminal.
    pub fn left_blocks(&self) -> BTreeSet<Word> {
        self.productions
            .iter()
            .filter(|p| p.nt.is_some() && !p.post.is_empty())
            .map(|p| p.post.clone())
            .collect()
    }

    fn check_wellformed(&self) -> Result<()> {
        let names: BTreeSet<&str> = self.nonterminals.iter().map(String::as_str).collect();
        if !names.contains(self.start.as_str()) {
            return Err(Error::InvalidGrammar(format!(
                "start symbol {:?} is not a nonterminal",
                self.start
            )));
        }
        for p in &self.productions {
            if !names.contains(p.lhs.as_str()) {
                return Err(Error::InvalidGrammar(format!(
                    "production references unknown nonterminal {:?}",
                    p.lhs
                )));
            }
            if let Some(nt) = &p.nt {
                if !names.contains(nt.as_str()) {
                    return Err(Error::InvalidGrammar(format!(
                        "production references unknown nonterminal {nt:?}"
                    )));
                }
            }
            self.alphabet.validate_word(&p.pre)?;
            self.alphabet.validate_word(&p.post)?;
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        let mut table = Map::new();
        for (name, sig) in &self.class_table {
            table.insert(name.clone(), sig.clone());
        }
        let mut markers = Map::new();
        for (name, words) in &self.class_markers {
            markers.insert(
                name.clone(),
                Value::Array(words.iter().map(|w| self.alphabet.word_to_json(w)).collect()),
            );
        }
        json!({
            "kind": self.kind.as_str(),
            "start": self.start,
            "nonterminals": self.nonterminals,
            "terminals": self.alphabet.symbols().map(|s| self.alphabet.name(s)).collect::<Vec<_>>(),
            "productions": self
                .productions
                .iter()
                .map(|p| {
                    json!({
                        "lhs": p.lhs,
                        "pre": self.alphabet.word_to_json(&p.pre),
                        "nt": p.nt.clone().map(Value::String).unwrap_or(Value::Null),
                        "post": self.alphabet.word_to_json(&p.post),
                    })
                })
                .collect::<Vec<_>>(),
            "class_table": Value::Object(table),
            "class_markers": Value::Object(markers),
        })
    }

    /// Rebuilds a grammar from its JSON form.
    ///
    /// `base` is the seed alphabet; a linear grammar's extended alphabet
    /// (with `$` and its markers) is reconstructed around it.
    pub fn from_json(v: &Value, base: &Alphabet) -> Result<Grammar> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::InvalidGrammar("grammar json must be an object".into()))?;
        let kind = match obj.get("kind").and_then(Value::as_str) {
            Some("right_linear") => GrammarKind::RightLinear,
            Some("linear") => GrammarKind::Linear,
            other => {
                return Err(Error::InvalidGrammar(format!(
                    "unrecognized grammar kind {other:?}"
                )))
            }
        };
        let markers_obj = obj
            .get("class_markers")
            .and_then(Value::as_object)
            .ok_or_else(|| Error::InvalidGrammar("missing class_markers".into()))?;
        let alphabet = match kind {
            GrammarKind::RightLinear => base.clone(),
            GrammarKind::Linear => {
                // Restore the marker symbols in their numeric order, not the
                // alphabetical key order of the JSON object, so symbol ids
                // match the exporting grammar.
                let mut names: Vec<String> = markers_obj.keys().cloned().collect();
                names.sort_by_key(|n| {
                    (
                        n.strip_prefix("a_")
                            .and_then(|s| s.parse::<u64>().ok())
                            .unwrap_or(u64::MAX),
                        n.clone(),
                    )
                });
                extended_alphabet(base, &names)?
            }
        };
        let start = obj
            .get("start")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::InvalidGrammar("missing start symbol".into()))?
            .to_string();
        let nonterminals: Vec<String> = obj
            .get("nonterminals")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::InvalidGrammar("missing nonterminals".into()))?
            .iter()
            .map(|n| {
                n.as_str()
                    .map(str::to_string)
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
                .ok_or_else(|| Error::InvalidGrammar("production missing lhs".into()))?
                .to_string();
            let pre = alphabet.word_from_json(
                pobj.get("pre")
                    .ok_or_else(|| Error::InvalidGrammar("production missing pre".into()))?,
            )?;
            let post = alphabet.word_from_json(
                pobj.get("post")
                    .ok_or_else(|| Error::InvalidGrammar("production missing post".into()))?,
            )?;
            let nt = match pobj.get("nt") {
                None | Some(Value::Null) => None,
                Some(Value::String(s)) => Some(s.clone()),
                Some(_) => {
                    return Err(Error::InvalidGrammar(
                        "production nt must be a string or null".into(),
                    ))
                }
            };
            productions.push(Production { lhs, pre, nt, post });
        }
        let class_table = obj
            .get("class_table")
            .and_then(Value::as_object)
            .ok_or_else(|| Error::InvalidGrammar("missing class_table".into()))?
            .iter()
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect();
        let mut class_markers = BTreeMap::new();
        for (name, words) in markers_obj {
            let arr = words
                .as_array()
                .ok_or_else(|| Error::InvalidGrammar("class marker value must be a list".into()))?;
            let words: Vec<Word> = arr
                .iter()
                .map(|w| alphabet.word_from_json(w))
                .collect::<Result<_>>()?;
            class_markers.insert(name.clone(), words);
        }
        let g = Grammar {
            kind,
            alphabet,
            start,
            nonterminals,
            productions,
            class_table,
            class_markers,
        };
        g.check_wellformed()?;
        Ok(g)
    }

    /// Graphviz rendering: one node per nonterminal, one labeled edge per
    /// production. Terminal productions point at a shared accept node.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph grammar {\n  rankdir=LR;\n  node [shape=circle];\n");
        for nt in &self.nonterminals {
            out.push_str(&format!("  \"{nt}\";\n"));
        }
        out.push_str("  \"accept\" [shape=doublecircle];\n");
        for p in &self.productions {
            let pre = self.alphabet.format_word(&p.pre);
            let post = self.alphabet.format_word(&p.post);
            match &p.nt {
                Some(nt) => out.push_str(&format!(
                    "  \"{}\" -> \"{}\" [label=\"{} · {}\"];\n",
                    p.lhs, nt, pre, post
                )),
                None => {
                    let body = self.alphabet.format_word(&p.pre.concat(&p.post));
                    out.push_str(&format!(
                        "  \"{}\" -> \"accept\" [label=\"{}\"];\n",
                        p.lhs, body
                    ));
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Serializes a grammar as pretty JSON or Graphviz DOT bytes.
pub fn export_grammar(g: &Grammar, format: ExportFormat) -> Vec<u8> {
    match format {
        ExportFormat::Json => {
            let mut bytes = serde_json::to_vec_pretty(&g.to_json()).expect("grammar json");
            bytes.push(b'\n');
            bytes
        }
        ExportFormat::Dot => g.to_dot().into_bytes(),
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ExportFormat {
    Json,
    Dot,
}

fn class_name(side: Side, idx: usize) -> String {
    match side {
        Side::Both => format!("E{}", idx + 1),
        _ => format!("D{}", idx + 1),
    }
}

/// Builds the right-linear grammar of the one-sided closure of `w`.
///
/// Nonterminal `D_i` stands for the i-th signature class discovered;
/// `S → w D_1` seeds the derivation and every class closes with `D_i → λ`.
/// λ-completions are dropped: extending by λ is the identity, and the word
/// they would certify is already produced by `D_i → λ`.
pub fn build_gw(
    w: &Word,
    m: usize,
    k: usize,
    side: Side,
    class_cap: usize,
    alphabet: &Alphabet,
) -> Result<Grammar> {
    match side {
        Side::Right => build_gw_right(w, m, k, class_cap, alphabet),
        Side::Left => build_gw_left(w, m, k, class_cap, alphabet),
        Side::Both => Err(Error::InvalidParams(
            "the class grammar is one-sided; use the linear grammar for both ends".into(),
        )),
    }
}

fn build_gw_right(
    w: &Word,
    m: usize,
    k: usize,
    class_cap: usize,
    alphabet: &Alphabet,
) -> Result<Grammar> {
    let sig0 = compute_right_signature(w, m, k, alphabet)?;
    let mut classes: Vec<RightSignature> = vec![sig0.clone()];
    let mut index: BTreeMap<RightSignature, usize> = BTreeMap::new();
    index.insert(sig0, 0);
    let mut queue: VecDeque<usize> = VecDeque::from([0]);
    let mut productions = vec![Production {
        lhs: "S".into(),
        pre: w.clone(),
        nt: Some(class_name(Side::Right, 0)),
        post: Word::empty(),
    }];
    while let Some(i) = queue.pop_front() {
        let sig = classes[i].clone();
        for r in sig.completions(alphabet) {
            if r.is_empty() {
                continue;
            }
            let next = sig.extend_word(&r, alphabet)?;
            let j = match index.get(&next) {
                Some(&j) => j,
                None => {
                    let j = classes.len();
                    if j >= class_cap {
                        return Err(Error::ClassCapExceeded {
                            cap: class_cap,
                            have: j,
                        });
                    }
                    classes.push(next.clone());
                    index.insert(next, j);
                    queue.push_back(j);
                    j
                }
            };
            productions.push(Production {
                lhs: class_name(Side::Right, i),
                pre: r,
                nt: Some(class_name(Side::Right, j)),
                post: Word::empty(),
            });
        }
    }
    let mut nonterminals = vec!["S".to_string()];
    let mut class_table = BTreeMap::new();
    for (i, sig) in classes.iter().enumerate() {
        let name = class_name(Side::Right, i);
        class_table.insert(name.clone(), sig.to_json(alphabet));
        nonterminals.push(name.clone());
        productions.push(Production {
            lhs: name,
            pre: Word::empty(),
            nt: None,
            post: Word::empty(),
        });
    }
    Ok(Grammar {
        kind: GrammarKind::RightLinear,
        alphabet: alphabet.clone(),
        start: "S".into(),
        nonterminals,
        productions,
        class_table,
        class_markers: BTreeMap::new(),
    })
}

fn build_gw_left(
    w: &Word,
    m: usize,
    k: usize,
    class_cap: usize,
    alphabet: &Alphabet,
) -> Result<Grammar> {
    let sig0 = compute_left_signature(w, m, k, alphabet)?;
    let mut classes: Vec<LeftSignature> = vec![sig0.clone()];
    let mut index: BTreeMap<LeftSignature, usize> = BTreeMap::new();
    index.insert(sig0, 0);
    let mut queue: VecDeque<usize> = VecDeque::from([0]);
    let mut productions = vec![Production {
        lhs: "S".into(),
        pre: Word::empty(),
        nt: Some(class_name(Side::Left, 0)),
        post: w.clone(),
    }];
    while let Some(i) = queue.pop_front() {
        let sig = classes[i].clone();
        for l in sig.completions(alphabet) {
            if l.is_empty() {
                continue;
            }
            let next = sig.extend_word(&l, alphabet)?;
            let j = match index.get(&next) {
                Some(&j) => j,
                None => {
                    let j = classes.len();
                    if j >= class_cap {
                        return Err(Error::ClassCapExceeded {
                            cap: class_cap,
                            have: j,
                        });
                    }
                    classes.push(next.clone());
                    index.insert(next, j);
                    queue.push_back(j);
                    j
                }
            };
            productions.push(Production {
                lhs: class_name(Side::Left, i),
                pre: Word::empty(),
                nt: Some(class_name(Side::Left, j)),
                post: l,
            });
        }
    }
    let mut nonterminals = vec!["S".to_string()];
    let mut class_table = BTreeMap::new();
    for (i, sig) in classes.iter().enumerate() {
        let name = class_name(Side::Left, i);
        class_table.insert(name.clone(), sig.to_json(alphabet));
        nonterminals.push(name.clone());
        productions.push(Production {
            lhs: name,
            pre: Word::empty(),
            nt: None,
            post: Word::empty(),
        });
    }
    Ok(Grammar {
        kind: GrammarKind::RightLinear,
        alphabet: alphabet.clone(),
        start: "S".into(),
        nonterminals,
        productions,
        class_table,
        class_markers: BTreeMap::new(),
    })
}

/// All grammar words of length at most `max_len`, by breadth-first
/// derivation over sentential forms `(u, X, v)`.
///
/// Terminal blocks only accumulate in these grammar shapes, so a form with
/// `|u| + |v| > max_len` can be pruned outright. The visited-form budget
/// turns runaway grammars into a loud error.
pub fn enumerate_grammar(g: &Grammar, max_len: usize, form_budget: usize) -> Result<LanguageSet> {
    g.check_wellformed()?;
    let mut by_lhs: BTreeMap<&str, Vec<&Production>> = BTreeMap::new();
    for p in &g.productions {
        by_lhs.entry(p.lhs.as_str()).or_default().push(p);
    }
    let start = (Word::empty(), g.start.clone(), Word::empty());
    let mut visited: BTreeSet<(Word, String, Word)> = BTreeSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    let mut out = LanguageSet::new();
    while let Some((u, x, v)) = queue.pop_front() {
        for p in by_lhs.get(x.as_str()).map(Vec::as_slice).unwrap_or(&[]) {
            match &p.nt {
                Some(nt) => {
                    let nu = u.concat(&p.pre);
                    let nv = p.post.concat(&v);
                    if nu.len() + nv.len() > max_len {
                        continue;
                    }
                    let form = (nu, nt.clone(), nv);
                    if visited.insert(form.clone()) {
                        if visited.len() > form_budget {
                            return Err(Error::FormBudgetExceeded { cap: form_budget });
                        }
                        queue.push_back(form);
                    }
                }
                None => {
                    let word = u.concat(&p.pre).concat(&p.post).concat(&v);
                    if word.len() <= max_len {
                        out.insert(word);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// One-sided bounded closure of a finite language through class grammars.
///
/// Words shorter than `2k` pass through untouched (no step applies to
/// them). The rest are partitioned by signature; each class is represented
/// by its shortest member, whose grammar supplies the quotient language of
/// valid completion sequences, reused for every member of the class. The
/// shortest member matters: its quotient is enumerated with the largest
/// usable budget, so classmates never miss a completion that still fits
/// under `max_len`.
pub fn closure_via_classes(
    lang: &LanguageSet,
    m: usize,
    k: usize,
    side: Side,
    max_len: usize,
    class_cap: usize,
    alphabet: &Alphabet,
) -> Result<LanguageSet> {
    if side == Side::Both {
        return Err(Error::InvalidParams(
            "the class decomposition is one-sided; use the linear grammar for both ends".into(),
        ));
    }
    let mut out = LanguageSet::new();
    let mut partition: BTreeMap<RightSignature, Vec<Word>> = BTreeMap::new();
    let mut partition_left: BTreeMap<LeftSignature, Vec<Word>> = BTreeMap::new();
    for w in lang {
        if w.len() < 2 * k {
            out.insert(w.clone());
            continue;
        }
        match side {
            Side::Right => partition
                .entry(compute_right_signature(w, m, k, alphabet)?)
                .or_default()
                .push(w.clone()),
            _ => partition_left
                .entry(compute_left_signature(w, m, k, alphabet)?)
                .or_default()
                .push(w.clone()),
        }
    }
    let classes: Vec<Vec<Word>> = partition
        .into_values()
        .chain(partition_left.into_values())
        .collect();
    for mut members in classes {
        members.sort();
        let rep = members[0].clone();
        let g = build_gw(&rep, m, k, side, class_cap, alphabet)?;
        let closure = enumerate_grammar(&g, max_len, DEFAULT_FORM_BUDGET)?;
        let quotient = match side {
            Side::Right => left_derivative(&rep, &closure),
            _ => right_derivative(&rep, &closure),
        };
        for member in &members {
            for q in &quotient {
                let word = match side {
                    Side::Right => member.concat(q),
                    _ => q.concat(member),
                };
                if word.len() <= max_len {
                    out.insert(word);
                }
            }
        }
    }
    Ok(out.truncated(max_len))
}

fn marker_name(idx: usize) -> String {
    format!("a_{}", idx + 1)
}

fn extended_alphabet(base: &Alphabet, markers: &[String]) -> Result<Alphabet> {
    let mut names: Vec<&str> = Vec::new();
    let mut pairs: Vec<(&str, &str)> = Vec::new();
    for s in base.symbols() {
        let n = base.name(s);
        if n == "$" || markers.iter().any(|m| m == n) {
            return Err(Error::InvalidAlphabet(format!(
                "symbol name {n:?} collides with a reserved separator or class marker"
            )));
        }
        names.push(n);
        let p = base.name(base.bar(s));
        if base.bar(s) >= s {
            pairs.push((n, p));
        }
    }
    names.push("$");
    pairs.push(("$", "$"));
    for m in markers {
        names.push(m);
        pairs.push((m, m));
    }
    Alphabet::new(&names, &pairs, false)
}

/// Builds the linear grammar of the two-sided closure of a finite seed
/// language.
///
/// Seeds are first grouped into classes `A_1..A_u` by full-signature
/// equivalence; each class gets a fresh marker symbol `a_j` in the extended
/// alphabet alongside the separator `$`. The grammar's words spell
/// `r_1 … r_n $ l_n … l_1 a_j`: the right blocks in application order, then
/// the left blocks reversed, then the marker naming the seed class.
pub fn build_gl(
    lang: &LanguageSet,
    m: usize,
    k: usize,
    class_cap: usize,
    alphabet: &Alphabet,
) -> Result<Grammar> {
    for w in lang {
        alphabet.validate_word(w)?;
        if w.len() < 2 * k {
            return Err(Error::WordTooShort {
                len: w.len(),
                min: 2 * k,
            });
        }
    }
    let mut classes: Vec<FullSignature> = Vec::new();
    let mut index: BTreeMap<FullSignature, usize> = BTreeMap::new();
    let mut seed_classes: Vec<Vec<Word>> = Vec::new();
    for w in lang {
        let sig = compute_full_signature(w, m, k, alphabet)?;
        match index.get(&sig) {
            Some(&j) => seed_classes[j].push(w.clone()),
            None => {
                let j = classes.len();
                classes.push(sig.clone());
                index.insert(sig, j);
                seed_classes.push(vec![w.clone()]);
            }
        }
    }
    let marker_names: Vec<String> = (0..seed_classes.len()).map(marker_name).collect();
    let extended = extended_alphabet(alphabet, &marker_names)?;
    let mut productions: Vec<Production> = Vec::new();
    for (j, name) in marker_names.iter().enumerate() {
        let marker = extended.symbol(name).expect("marker symbol");
        productions.push(Production {
            lhs: "S".into(),
            pre: Word::empty(),
            nt: Some(class_name(Side::Both, j)),
            post: Word::from_vec(vec![marker]),
        });
    }
    let mut queue: VecDeque<usize> = (0..classes.len()).collect();
    while let Some(i) = queue.pop_front() {
        let sig = classes[i].clone();
        let mut steps: Vec<(Word, FullSignature, bool)> = Vec::new();
        for r in sig.right().completions(alphabet) {
            if r.is_empty() {
                continue;
            }
            steps.push((r.clone(), sig.extend_right_word(&r, alphabet)?, true));
        }
        for l in sig.left().completions(alphabet) {
            if l.is_empty() {
                continue;
            }
            steps.push((l.clone(), sig.extend_left_word(&l, alphabet)?, false));
        }
        for (block, next, is_right) in steps {
            let j = match index.get(&next) {
                Some(&j) => j,
                None => {
                    let j = classes.len();
                    if j >= class_cap {
                        return Err(Error::ClassCapExceeded {
                            cap: class_cap,
                            have: j,
                        });
                    }
                    classes.push(next.clone());
                    index.insert(next, j);
                    queue.push_back(j);
                    j
                }
            };
            if is_right {
                productions.push(Production {
                    lhs: class_name(Side::Both, i),
                    pre: block,
                    nt: Some(class_name(Side::Both, j)),
                    post: Word::empty(),
                });
            } else {
                productions.push(Production {
                    lhs: class_name(Side::Both, i),
                    pre: Word::empty(),
                    nt: Some(class_name(Side::Both, j)),
                    post: block,
                });
            }
        }
    }
    let dollar = extended.symbol("$").expect("separator symbol");
    let mut nonterminals = vec!["S".to_string()];
    let mut class_table = BTreeMap::new();
    for (i, sig) in classes.iter().enumerate() {
        let name = class_name(Side::Both, i);
        class_table.insert(name.clone(), sig.to_json(&extended));
        nonterminals.push(name.clone());
        productions.push(Production {
            lhs: name,
            pre: Word::from_vec(vec![dollar]),
            nt: None,
            post: Word::empty(),
        });
    }
    let mut class_markers = BTreeMap::new();
    for (j, words) in seed_classes.into_iter().enumerate() {
        class_markers.insert(marker_names[j].clone(), words);
    }
    Ok(Grammar {
        kind: GrammarKind::Linear,
        alphabet: extended,
        start: "S".into(),
        nonterminals,
        productions,
        class_table,
        class_markers,
    })
}

/// Folds a linear grammar's language back into the bounded two-sided
/// closure of its seeds.
///
/// Rotating each grammar word to start at its unique `$`, stripping that
/// `$`, and substituting each marker by its seed class turns
/// `r_1 … r_n $ l_n … l_1 a_j` into `l_n … l_1 w r_1 … r_n` for every seed
/// `w` in class `j`. A grammar word within budget `max_len + 2` covers
/// every closure word within `max_len`: the seed contributes at least two
/// symbols, and `$` plus the marker account for the other two.
pub fn reconstruct_closure(g: &Grammar, max_len: usize, form_budget: usize) -> Result<LanguageSet> {
    if g.kind != GrammarKind::Linear {
        return Err(Error::InvalidGrammar(
            "reconstruction applies to linear grammars only".into(),
        ));
    }
    let dollar = g.alphabet.symbol("$").ok_or_else(|| {
        Error::InvalidGrammar("linear grammar alphabet is missing the separator".into())
    })?;
    let budget = max_len + 2;
    let grammar_words = enumerate_grammar(g, budget, form_budget)?;
    let rotated = circular_permutations_set(&grammar_words);
    let stripped = left_derivative(&Word::from_vec(vec![dollar]), &rotated);
    let mut images: BTreeMap<Symbol, LanguageSet> = BTreeMap::new();
    for (name, words) in &g.class_markers {
        let marker = g
            .alphabet
            .symbol(name)
            .ok_or_else(|| Error::InvalidGrammar(format!("unknown marker symbol {name:?}")))?;
        images.insert(marker, words.iter().cloned().collect());
    }
    Ok(substitute(&stripped, &images).truncated(max_len))
}
