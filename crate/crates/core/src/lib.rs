//! Toolkit for m-bounded k-hairpin incompletion on formal languages.
//!
//! A word `w = δγαβ·rc(α)` over an involution alphabet can fold back on
//! itself: the suffix `rc(α)` anneals to an earlier occurrence of the stem
//! `α`, and a polymerase-style extension then appends `rc(γ)` for the bounded
//! overhang `γ` (`|γ| ≤ m`, `|α| = k`). This crate implements that operator
//! and its left-sided mirror, together with:
//!
//! * [`hairpin`]: single steps, bounded iteration, and bounded closures via
//!   direct decomposition enumeration (the reference semantics everything
//!   else is tested against),
//! * [`signature`]: finite word signatures that support incremental
//!   extension by one symbol and decide closure-class equivalence,
//! * [`grammar`]: right-linear and linear class grammars describing one- and
//!   two-sided closures of finite languages,
//! * [`universal`]: an encoding of arbitrary right-linear grammars into a
//!   single strand whose `(1,1)` right closure simulates derivations,
//! * [`transducer`]: a nondeterministic gsm computing one incompletion step,
//! * [`suite`]: deterministic cross-validation sweeps over all of the above.
//!
//! Determinism is part of the contract: language sets iterate in
//! length-then-lexicographic order, constructions number classes and states
//! by BFS discovery, and randomized sweeps take explicit seeds.

pub mod alphabet;
pub mod error;
pub mod grammar;
pub mod hairpin;
pub mod language;
pub mod signature;
pub mod suite;
pub mod transducer;
pub mod universal;
pub mod word;

pub use alphabet::{Alphabet, Symbol};
pub use error::{Error, Result};
pub use hairpin::{HiParams, Side};
pub use language::LanguageSet;
pub use word::Word;
