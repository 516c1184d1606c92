use std::collections::HashMap;
use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::word::Word;

/// A symbol of some [`Alphabet`], identified by its declaration index.
///
/// Symbol order (and therefore word order) is declaration order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(u32);

impl Symbol {
    pub(crate) fn new(id: u32) -> Self {
        Symbol(id)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub(crate) fn id(self) -> u32 {
        self.0
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s{}", self.0)
    }
}

/// A finite alphabet equipped with an involution `bar` (a self-inverse
/// bijection on symbols), the combinatorial stand-in for Watson-Crick
/// complementarity.
///
/// With `strict_wk` the involution must be fixed-point free; otherwise
/// symbols may be their own partner.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
    index: HashMap<String, u32>,
    partner: Vec<u32>,
    strict_wk: bool,
}

impl Alphabet {
    /// Builds an alphabet from symbol names and involution pairs.
    ///
    /// Every symbol must appear in exactly one pair; a fixed point is written
    /// as the pair `(x, x)` and is rejected when `strict_wk` is set.
    pub fn new(symbols: &[&str], pairs: &[(&str, &str)], strict_wk: bool) -> Result<Self> {
        let symbols: Vec<String> = symbols.iter().map(|s| s.to_string()).collect();
        let pairs: Vec<(String, String)> = pairs
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        Self::build(symbols, pairs, strict_wk)
    }

    fn build(names: Vec<String>, pairs: Vec<(String, String)>, strict_wk: bool) -> Result<Self> {
        if names.is_empty() {
            return Err(Error::InvalidAlphabet("no symbols declared".into()));
        }
        let mut index = HashMap::new();
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() {
                return Err(Error::InvalidAlphabet("empty symbol token".into()));
            }
            if index.insert(name.clone(), i as u32).is_some() {
                return Err(Error::InvalidAlphabet(format!("duplicate symbol {name:?}")));
            }
        }
        let mut partner: Vec<Option<u32>> = vec![None; names.len()];
        let mut seen = vec![false; names.len()];
        for (a, b) in &pairs {
            let ia = *index
                .get(a)
                .ok_or_else(|| Error::InvalidAlphabet(format!("involution names unknown symbol {a:?}")))?;
            let ib = *index
                .get(b)
                .ok_or_else(|| Error::InvalidAlphabet(format!("involution names unknown symbol {b:?}")))?;
            if strict_wk && ia == ib {
                return Err(Error::InvalidAlphabet(format!(
                    "strict_wk forbids the fixed point {a:?}"
                )));
            }
            if seen[ia as usize] || seen[ib as usize] {
                return Err(Error::InvalidAlphabet(format!(
                    "symbol {a:?} or {b:?} appears in more than one involution pair"
                )));
            }
            seen[ia as usize] = true;
            seen[ib as usize] = true;
            partner[ia as usize] = Some(ib);
            partner[ib as usize] = Some(ia);
        }
        let partner: Vec<u32> = partner
            .into_iter()
            .enumerate()
            .map(|(i, p)| {
                p.ok_or_else(|| {
                    Error::InvalidAlphabet(format!("symbol {:?} missing from the involution", names[i]))
                })
            })
            .collect::<Result<_>>()?;
        Ok(Alphabet {
            names,
            index,
            partner,
            strict_wk,
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn strict_wk(&self) -> bool {
        self.strict_wk
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> + '_ {
        (0..self.names.len() as u32).map(Symbol::new)
    }

    pub fn symbol(&self, name: &str) -> Option<Symbol> {
        self.index.get(name).copied().map(Symbol::new)
    }

    pub fn require_symbol(&self, name: &str) -> Result<Symbol> {
        self.symbol(name).ok_or_else(|| Error::UnknownSymbol {
            token: name.to_string(),
        })
    }

    pub fn name(&self, s: Symbol) -> &str {
        &self.names[s.index()]
    }

    /// The involution partner of `s`.
    pub fn bar(&self, s: Symbol) -> Symbol {
        Symbol::new(self.partner[s.index()])
    }

    /// Reversed complement: `rc(w) = bar(w)` reversed, the shape a folded-back
    /// strand presents for annealing.
    pub fn rc(&self, w: &Word) -> Word {
        w.symbols().iter().rev().map(|&s| self.bar(s)).collect()
    }

    /// Checks that every symbol id of `w` belongs to this alphabet.
    pub fn validate_word(&self, w: &Word) -> Result<()> {
        for &s in w.symbols() {
            self.validate_symbol(s)?;
        }
        Ok(())
    }

    pub fn validate_symbol(&self, s: Symbol) -> Result<()> {
        if s.index() >= self.names.len() {
            return Err(Error::ForeignSymbol {
                id: s.id(),
                size: self.names.len(),
            });
        }
        Ok(())
    }

    /// Builds a word from symbol tokens.
    pub fn word(&self, tokens: &[&str]) -> Result<Word> {
        tokens.iter().map(|t| self.require_symbol(t)).collect()
    }

    /// True when every symbol name is a single character, which enables the
    /// compact string form for words.
    pub fn single_char(&self) -> bool {
        self.names.iter().all(|n| n.chars().count() == 1)
    }

    /// Parses a word from its compact form (one character per symbol).
    ///
    /// The empty string and `"λ"` both denote the empty word. Alphabets with
    /// multi-character tokens must use the JSON array form instead.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        if text.is_empty() || text == "λ" {
            return Ok(Word::empty());
        }
        if !self.single_char() {
            return Err(Error::InvalidInput(
                "alphabet has multi-character tokens; pass words as json arrays".into(),
            ));
        }
        text.chars()
            .map(|c| self.require_symbol(&c.to_string()))
            .collect()
    }

    /// Renders a word compactly for single-character alphabets, otherwise as
    /// space-joined tokens; the empty word renders as `λ`.
    pub fn format_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "λ".to_string();
        }
        if self.single_char() {
            w.symbols().iter().map(|&s| self.name(s)).collect()
        } else {
            w.symbols()
                .iter()
                .map(|&s| self.name(s))
                .collect::<Vec<_>>()
                .join(" ")
        }
    }

    /// Serializes a word as a JSON array of symbol tokens.
    pub fn word_to_json(&self, w: &Word) -> Value {
        Value::Array(
            w.symbols()
                .iter()
                .map(|&s| Value::String(self.name(s).to_string()))
                .collect(),
        )
    }

    /// Reads a word from either a JSON array of tokens or, for
    /// single-character alphabets, a compact JSON string.
    pub fn word_from_json(&self, v: &Value) -> Result<Word> {
        match v {
            Value::Array(items) => items
                .iter()
                .map(|item| {
                    let tok = item.as_str().ok_or_else(|| {
                        Error::InvalidInput("word arrays must contain string tokens".into())
                    })?;
                    self.require_symbol(tok)
                })
                .collect(),
            Value::String(s) => self.parse_word(s),
            _ => Err(Error::InvalidInput(
                "a word must be a json array of tokens or a compact string".into(),
            )),
        }
    }

    /// The canonical JSON description: symbols, involution pairs, strictness.
    pub fn to_json(&self) -> Value {
        let mut pairs = Vec::new();
        let mut done = vec![false; self.names.len()];
        for i in 0..self.names.len() {
            if done[i] {
                continue;
            }
            let j = self.partner[i] as usize;
            done[i] = true;
            done[j] = true;
            pairs.push(json!([self.names[i], self.names[j]]));
        }
        json!({
            "symbols": self.names,
            "involution": pairs,
            "strict_wk": self.strict_wk,
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::InvalidAlphabet("expected a json object".into()))?;
        let symbols = obj
            .get("symbols")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::InvalidAlphabet("missing \"symbols\" array".into()))?
            .iter()
            .map(|s| {
                s.as_str()
                    .map(str::to_string)
                    .ok_or_else(|| Error::InvalidAlphabet("symbols must be strings".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        let pairs = obj
            .get("involution")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::InvalidAlphabet("missing \"involution\" array".into()))?
            .iter()
            .map(|p| {
                let pair = p
                    .as_array()
                    .filter(|a| a.len() == 2)
                    .ok_or_else(|| Error::InvalidAlphabet("involution entries must be pairs".into()))?;
                let a = pair[0]
                    .as_str()
                    .ok_or_else(|| Error::InvalidAlphabet("involution entries must be strings".into()))?;
                let b = pair[1]
                    .as_str()
                    .ok_or_else(|| Error::InvalidAlphabet("involution entries must be strings".into()))?;
                Ok((a.to_string(), b.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        let strict_wk = obj.get("strict_wk").and_then(Value::as_bool).unwrap_or(false);
        Self::build(symbols, pairs, strict_wk)
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        Self::from_json(&serde_json::from_str(text)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::new(&["a", "b"], &[("a", "b")], false).unwrap()
    }

    #[test]
    fn involution_pairs_and_rc() {
        let al = ab();
        let a = al.symbol("a").unwrap();
        let b = al.symbol("b").unwrap();
        assert_eq!(al.bar(a), b);
        assert_eq!(al.bar(b), a);
        let w = al.parse_word("aab").unwrap();
        assert_eq!(al.format_word(&al.rc(&w)), "abb");
        assert_eq!(al.rc(&al.rc(&w)), w);
    }

    #[test]
    fn fixed_points_allowed_unless_strict() {
        let loose = Alphabet::new(&["a", "b", "c"], &[("a", "b"), ("c", "c")], false).unwrap();
        let c = loose.symbol("c").unwrap();
        assert_eq!(loose.bar(c), c);
        let strict = Alphabet::new(&["a", "b", "c"], &[("a", "b"), ("c", "c")], true);
        assert!(matches!(strict, Err(Error::InvalidAlphabet(_))));
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(Alphabet::new(&[], &[], false).is_err());
        assert!(Alphabet::new(&["a", "a"], &[("a", "a")], false).is_err());
        assert!(Alphabet::new(&["a", "b"], &[("a", "a"), ("b", "b"), ("a", "b")], false).is_err());
        assert!(Alphabet::new(&["a", "b"], &[("a", "b"), ("b", "a")], false).is_err());
        assert!(Alphabet::new(&["a", "b"], &[("a", "a")], false).is_err());
        assert!(Alphabet::new(&["a"], &[("a", "z")], false).is_err());
    }

    #[test]
    fn json_round_trip() {
        let al = Alphabet::new(&["a", "b", "c"], &[("a", "b"), ("c", "c")], false).unwrap();
        let back = Alphabet::from_json(&al.to_json()).unwrap();
        assert_eq!(al, back);
    }

    #[test]
    fn parse_and_format() {
        let al = ab();
        assert_eq!(al.parse_word("").unwrap(), Word::empty());
        assert_eq!(al.parse_word("λ").unwrap(), Word::empty());
        assert_eq!(al.format_word(&Word::empty()), "λ");
        assert!(al.parse_word("ax").is_err());
        let multi = Alphabet::new(&["aa", "b"], &[("aa", "b")], false).unwrap();
        assert!(multi.parse_word("aab").is_err());
        let w = multi.word(&["aa", "b", "aa"]).unwrap();
        assert_eq!(multi.format_word(&w), "aa b aa");
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn word_over_ab() -> impl Strategy<Value = Word> {
            proptest::collection::vec(0u32..2, 0..12).prop_map(|codes| {
                let al = ab();
                let syms: Vec<Symbol> = al.symbols().collect();
                codes.into_iter().map(|c| syms[c as usize]).collect()
            })
        }

        proptest! {
            #[test]
            fn rc_is_an_involution(w in word_over_ab()) {
                let al = ab();
                prop_assert_eq!(al.rc(&al.rc(&w)), w);
            }

            #[test]
            fn rc_is_an_antimorphism(u in word_over_ab(), v in word_over_ab()) {
                let al = ab();
                prop_assert_eq!(al.rc(&u.concat(&v)), al.rc(&v).concat(&al.rc(&u)));
            }

            #[test]
            fn text_round_trip(w in word_over_ab()) {
                let al = ab();
                prop_assert_eq!(al.parse_word(&al.format_word(&w)).unwrap(), w);
            }

            #[test]
            fn json_word_round_trip(w in word_over_ab()) {
                let al = ab();
                prop_assert_eq!(al.word_from_json(&al.word_to_json(&w)).unwrap(), w);
            }
        }
    }
}
