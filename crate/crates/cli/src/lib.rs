//! Command line front end for the hairpin incompletion toolkit.
//!
//! Every subcommand reads an alphabet description, runs one library
//! operation, and prints the result on stdout: JSON as the canonical
//! machine format, `text` as a lossy human projection, `dot` for the
//! graph-shaped artifacts. Identical invocations produce byte-identical
//! output; the `suite` subcommand checks that along with the rest of the
//! acceptance criteria.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use hpkit_core::grammar::{
    build_gl, build_gw, export_grammar, reconstruct_closure, ExportFormat, Grammar, GrammarKind,
    DEFAULT_CLASS_CAP, DEFAULT_FORM_BUDGET,
};
use hpkit_core::hairpin::{
    hi_closure_bounded, hi_iter, hi_step, DEFAULT_WORD_CAP,
};
use hpkit_core::signature::{
    compute_full_signature, compute_left_signature, compute_right_signature, equivalent,
    FullSignature, LeftSignature, RightSignature, SigMode,
};
use hpkit_core::suite::{
    criterion_class_decomposition, criterion_containments, criterion_incremental_updates,
    criterion_linear_grammar_pipeline, criterion_machines, criterion_step_vs_completions,
    criterion_universal_encoding, criterion_word_grammars, CriterionResult, DEFAULT_SEED,
};
use hpkit_core::transducer::{
    apply_transducer_language, build_hi_gsm, NondetTransducer, DEFAULT_STATE_CAP,
};
use hpkit_core::universal::{encode_regular_grammar, verify_universal, SourceRegularGrammar};
use hpkit_core::{Alphabet, Error, HiParams, LanguageSet, Side, Word};

pub mod battery;

#[derive(Parser)]
#[command(
    name = "hpkit",
    version,
    about = "Hairpin incompletion toolkit",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Apply one incompletion step to a word.
    Step(StepArgs),
    /// Apply a fixed number of incompletion steps to a language.
    Iter(IterArgs),
    /// Compute the length-bounded closure of a seed language.
    Closure(ClosureArgs),
    /// Print the signature of a word.
    Sig(SigArgs),
    /// Decide signature equivalence of two words.
    Equiv(EquivArgs),
    /// Build grammars for closures.
    #[command(subcommand)]
    Grammar(GrammarCmd),
    /// Fold a two-sided closure grammar back into its language.
    Reconstruct(ReconstructArgs),
    /// Encode regular grammars as annealing strands.
    #[command(subcommand)]
    Universal(UniversalCmd),
    /// Build and run the one-step machines.
    #[command(subcommand)]
    Gsm(GsmCmd),
    /// Run the acceptance criteria and print a pass/fail table.
    Suite(SuiteArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SideArg {
    Right,
    Left,
    Both,
}

impl SideArg {
    fn to_side(self) -> Side {
        match self {
            SideArg::Right => Side::Right,
            SideArg::Left => Side::Left,
            SideArg::Both => Side::Both,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Right,
    Left,
    Full,
}

impl ModeArg {
    fn to_mode(self) -> SigMode {
        match self {
            ModeArg::Right => SigMode::Right,
            ModeArg::Left => SigMode::Left,
            ModeArg::Full => SigMode::Full,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SetFormat {
    Json,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GraphFormat {
    Json,
    Text,
    Dot,
}

#[derive(Args)]
struct CommonOpts {
    /// Alphabet description file (JSON).
    #[arg(long, value_name = "FILE")]
    alphabet: PathBuf,
    /// Maximum overhang length m.
    #[arg(short = 'm', value_name = "M")]
    m: usize,
    /// Stem length k.
    #[arg(short = 'k', value_name = "K")]
    k: usize,
}

#[derive(Args)]
struct OutOpt {
    /// Write the result here instead of stdout.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args)]
#[command(group(clap::ArgGroup::new("input").required(true).args(["word", "word_file"])))]
struct OneWord {
    /// The word, as a compact string (single-character alphabets only).
    #[arg(long, value_name = "WORD")]
    word: Option<String>,
    /// File holding one JSON word (string or array of symbol names).
    #[arg(long, value_name = "FILE")]
    word_file: Option<PathBuf>,
}

#[derive(Args)]
struct ManyWords {
    /// A seed word; repeatable (single-character alphabets only).
    #[arg(long = "word", value_name = "WORD")]
    words: Vec<String>,
    /// JSON file with an array of seed words.
    #[arg(long = "words", value_name = "FILE")]
    words_file: Option<PathBuf>,
}

#[derive(Args)]
struct StepArgs {
    #[command(flatten)]
    common: CommonOpts,
    #[command(flatten)]
    input: OneWord,
    #[arg(long, value_enum)]
    side: SideArg,
    #[arg(long, value_enum, default_value = "json")]
    format: SetFormat,
    #[command(flatten)]
    out: OutOpt,
}

#[derive(Args)]
struct IterArgs {
    #[command(flatten)]
    common: CommonOpts,
    #[command(flatten)]
    input: ManyWords,
    #[arg(long, value_enum)]
    side: SideArg,
    /// Number of steps to apply.
    #[arg(long, value_name = "N")]
    depth: usize,
    #[arg(long, value_name = "N", default_value_t = DEFAULT_WORD_CAP)]
    word_cap: usize,
    #[arg(long, value_enum, default_value = "json")]
    format: SetFormat,
    #[command(flatten)]
    out: OutOpt,
}

#[derive(Args)]
struct ClosureArgs {
    #[command(flatten)]
    common: CommonOpts,
    #[command(flatten)]
    input: ManyWords,
    #[arg(long, value_enum)]
    side: SideArg,
    /// Keep only words up to this length.
    #[arg(long, value_name = "N")]
    max_len: usize,
    #[arg(long, value_name = "N", default_value_t = DEFAULT_WORD_CAP)]
    word_cap: usize,
    #[arg(long, value_enum, default_value = "json")]
    format: SetFormat,
    #[command(flatten)]
    out: OutOpt,
}

#[derive(Args)]
struct SigArgs {
    #[command(flatten)]
    common: CommonOpts,
    #[command(flatten)]
    input: OneWord,
    #[arg(long, value_enum)]
    mode: ModeArg,
    #[arg(long, value_enum, default_value = "json")]
    format: SetFormat,
    #[command(flatten)]
    out: OutOpt,
}

#[derive(Args)]
struct EquivArgs {
    #[command(flatten)]
    common: CommonOpts,
    #[arg(long, value_enum)]
    mode: ModeArg,
    /// First word (compact string).
    #[arg(value_name = "W1")]
    w1: String,
    /// Second word (compact string).
    #[arg(value_name = "W2")]
    w2: String,
}

#[derive(Subcommand)]
enum GrammarCmd {
    /// Right-linear grammar of a single word's one-sided closure.
    Gw(GrammarGwArgs),
    /// Linear grammar encoding a language's two-sided closure.
    Gl(GrammarGlArgs),
}

#[derive(Args)]
struct GrammarGwArgs {
    #[command(flatten)]
    common: CommonOpts,
    #[command(flatten)]
    input: OneWord,
    #[arg(long, value_enum)]
    side: SideArg,
    #[arg(long, value_name = "N", default_value_t = DEFAULT_CLASS_CAP)]
    class_cap: usize,
    #[arg(long, value_enum, default_value = "json")]
    format: GraphFormat,
    #[command(flatten)]
    out: OutOpt,
}

#[derive(Args)]
struct GrammarGlArgs {
    #[command(flatten)]
    common: CommonOpts,
    #[command(flatten)]
    input: ManyWords,
    #[arg(long, value_name = "N", default_value_t = DEFAULT_CLASS_CAP)]
    class_cap: usize,
    #[arg(long, value_enum, default_value = "json")]
    format: GraphFormat,
    #[command(flatten)]
    out: OutOpt,
}

#[derive(Args)]
struct ReconstructArgs {
    /// Alphabet description file (JSON).
    #[arg(long, value_name = "FILE")]
    alphabet: PathBuf,
    /// Grammar file produced by `grammar gl`.
    #[arg(long, value_name = "FILE")]
    grammar: PathBuf,
    /// Keep only words up to this length.
    #[arg(long, value_name = "N")]
    max_len: usize,
    #[arg(long, value_name = "N", default_value_t = DEFAULT_FORM_BUDGET)]
    form_budget: usize,
    #[arg(long, value_enum, default_value = "json")]
    format: SetFormat,
    #[command(flatten)]
    out: OutOpt,
}

#[derive(Subcommand)]
enum UniversalCmd {
    /// Encode a regular grammar as one annealing strand.
    Encode(UniversalEncodeArgs),
    /// Check that the strand's closure recovers the grammar's language.
    Verify(UniversalVerifyArgs),
}

#[derive(Args)]
struct UniversalEncodeArgs {
    /// Alphabet description file (JSON).
    #[arg(long, value_name = "FILE")]
    alphabet: PathBuf,
    /// Regular grammar file (JSON).
    #[arg(long, value_name = "FILE")]
    grammar: PathBuf,
    #[arg(long, value_enum, default_value = "json")]
    format: SetFormat,
    #[command(flatten)]
    out: OutOpt,
}

#[derive(Args)]
struct UniversalVerifyArgs {
    /// Alphabet description file (JSON).
    #[arg(long, value_name = "FILE")]
    alphabet: PathBuf,
    /// Regular grammar file (JSON).
    #[arg(long, value_name = "FILE")]
    grammar: PathBuf,
    /// Compare languages up to this length.
    #[arg(long, value_name = "N")]
    max_len: usize,
    #[arg(long, value_name = "N", default_value_t = DEFAULT_WORD_CAP)]
    word_cap: usize,
    #[arg(long, value_enum, default_value = "json")]
    format: SetFormat,
    #[command(flatten)]
    out: OutOpt,
}

#[derive(Subcommand)]
enum GsmCmd {
    /// Build the one-step machine for the given parameters.
    Build(GsmBuildArgs),
    /// Build the machine and run it on input words.
    Apply(GsmApplyArgs),
}

#[derive(Args)]
struct GsmBuildArgs {
    #[command(flatten)]
    common: CommonOpts,
    #[arg(long, value_enum)]
    side: SideArg,
    #[arg(long, value_name = "N", default_value_t = DEFAULT_STATE_CAP)]
    state_cap: usize,
    #[arg(long, value_enum, default_value = "json")]
    format: GraphFormat,
    #[command(flatten)]
    out: OutOpt,
}

#[derive(Args)]
struct GsmApplyArgs {
    #[command(flatten)]
    common: CommonOpts,
    #[command(flatten)]
    input: ManyWords,
    #[arg(long, value_enum)]
    side: SideArg,
    #[arg(long, value_name = "N", default_value_t = DEFAULT_STATE_CAP)]
    state_cap: usize,
    #[arg(long, value_enum, default_value = "json")]
    format: SetFormat,
    #[command(flatten)]
    out: OutOpt,
}

#[derive(Args)]
struct SuiteArgs {
    /// Seed for the randomized sweeps; HPKIT_SEED is read when absent.
    #[arg(long, value_name = "N")]
    seed: Option<u64>,
    /// Run only these criteria; repeatable.
    #[arg(long = "only", value_name = "ID")]
    only: Vec<usize>,
}

enum Failure {
    Core(Error),
    Io(String, std::io::Error),
    Message(String),
}

impl Failure {
    fn exit_code(&self) -> i32 {
        match self {
            Failure::Core(e) if e.is_cap_exceeded() => 3,
            _ => 2,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Core(e) => write!(f, "{e}"),
            Failure::Io(path, e) => write!(f, "{path}: {e}"),
            Failure::Message(m) => write!(f, "{m}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type CmdResult = Result<i32, Failure>;

/// Parses `argv` and runs the command, returning the process exit code.
pub fn run_from<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{e}");
                    0
                }
                _ => {
                    eprint!("{e}");
                    1
                }
            };
        }
    };
    match execute(cli.cmd) {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("error: {failure}");
            failure.exit_code()
        }
    }
}

/// Entry point used by the binary.
pub fn run() -> i32 {
    run_from(std::env::args_os())
}

fn execute(cmd: Cmd) -> CmdResult {
    match cmd {
        Cmd::Step(a) => cmd_step(a),
        Cmd::Iter(a) => cmd_iter(a),
        Cmd::Closure(a) => cmd_closure(a),
        Cmd::Sig(a) => cmd_sig(a),
        Cmd::Equiv(a) => cmd_equiv(a),
        Cmd::Grammar(GrammarCmd::Gw(a)) => cmd_grammar_gw(a),
        Cmd::Grammar(GrammarCmd::Gl(a)) => cmd_grammar_gl(a),
        Cmd::Reconstruct(a) => cmd_reconstruct(a),
        Cmd::Universal(UniversalCmd::Encode(a)) => cmd_universal_encode(a),
        Cmd::Universal(UniversalCmd::Verify(a)) => cmd_universal_verify(a),
        Cmd::Gsm(GsmCmd::Build(a)) => cmd_gsm_build(a),
        Cmd::Gsm(GsmCmd::Apply(a)) => cmd_gsm_apply(a),
        Cmd::Suite(a) => cmd_suite(a),
    }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(path.display().to_string(), e))
}

fn load_alphabet(path: &Path) -> Result<Alphabet, Failure> {
    Ok(Alphabet::from_json_str(&read_file(path)?)?)
}

fn load_one_word(al: &Alphabet, input: &OneWord) -> Result<Word, Failure> {
    if let Some(text) = &input.word {
        return Ok(al.parse_word(text)?);
    }
    let path = input.word_file.as_ref().expect("clap enforces the group");
    let v: Value = serde_json::from_str(&read_file(path)?).map_err(Error::from)?;
    Ok(al.word_from_json(&v)?)
}

fn load_many_words(al: &Alphabet, input: &ManyWords) -> Result<LanguageSet, Failure> {
    let mut lang = LanguageSet::new();
    for text in &input.words {
        lang.insert(al.parse_word(text)?);
    }
    if let Some(path) = &input.words_file {
        let v: Value = serde_json::from_str(&read_file(path)?).map_err(Error::from)?;
        let items = v.as_array().ok_or_else(|| {
            Failure::Message(format!("{}: expected a JSON array of words", path.display()))
        })?;
        for item in items {
            lang.insert(al.word_from_json(item)?);
        }
    }
    Ok(lang)
}

fn load_linear_grammar(path: &Path, al: &Alphabet) -> Result<Grammar, Failure> {
    let v: Value = serde_json::from_str(&read_file(path)?).map_err(Error::from)?;
    Ok(Grammar::from_json(&v, al)?)
}

fn load_source_grammar(path: &Path, al: &Alphabet) -> Result<SourceRegularGrammar, Failure> {
    let v: Value = serde_json::from_str(&read_file(path)?).map_err(Error::from)?;
    Ok(SourceRegularGrammar::from_json(&v, al)?)
}

fn emit(bytes: &[u8], out: &OutOpt) -> CmdResult {
    match &out.out {
        Some(path) => {
            fs::write(path, bytes).map_err(|e| Failure::Io(path.display().to_string(), e))?
        }
        None => std::io::stdout()
            .write_all(bytes)
            .map_err(|e| Failure::Io("stdout".into(), e))?,
    }
    Ok(0)
}

/// Words render as compact strings over single-character alphabets and as
/// arrays of symbol names otherwise, mirroring the command line input rule.
fn word_value(al: &Alphabet, w: &Word) -> Value {
    if al.single_char() {
        Value::String(al.format_word(w))
    } else {
        al.word_to_json(w)
    }
}

fn language_value(al: &Alphabet, lang: &LanguageSet) -> Value {
    Value::Array(lang.iter().map(|w| word_value(al, w)).collect())
}

fn language_bytes(al: &Alphabet, lang: &LanguageSet, format: SetFormat) -> Vec<u8> {
    match format {
        SetFormat::Json => {
            let mut s = language_value(al, lang).to_string();
            s.push('\n');
            s.into_bytes()
        }
        SetFormat::Text => {
            let mut s = String::new();
            for w in lang {
                s.push_str(&al.format_word(w));
                s.push('\n');
            }
            s.into_bytes()
        }
    }
}

fn pretty_bytes(v: &Value) -> Vec<u8> {
    let mut s = serde_json::to_string_pretty(v).expect("value serializes");
    s.push('\n');
    s.into_bytes()
}

fn cmd_step(a: StepArgs) -> CmdResult {
    let al = load_alphabet(&a.common.alphabet)?;
    let w = load_one_word(&al, &a.input)?;
    let p = HiParams::new(a.common.m, a.common.k, a.side.to_side())?;
    let result = hi_step(&w, &p, &al);
    emit(&language_bytes(&al, &result, a.format), &a.out)
}

fn cmd_iter(a: IterArgs) -> CmdResult {
    let al = load_alphabet(&a.common.alphabet)?;
    let lang = load_many_words(&al, &a.input)?;
    let p = HiParams::new(a.common.m, a.common.k, a.side.to_side())?;
    let result = hi_iter(&lang, &p, a.depth, &al, a.word_cap)?;
    emit(&language_bytes(&al, &result, a.format), &a.out)
}

fn cmd_closure(a: ClosureArgs) -> CmdResult {
    let al = load_alphabet(&a.common.alphabet)?;
    let lang = load_many_words(&al, &a.input)?;
    let p = HiParams::new(a.common.m, a.common.k, a.side.to_side())?;
    let closure = hi_closure_bounded(&lang, &p, a.max_len, a.word_cap, &al)?;
    let bytes = match a.format {
        SetFormat::Json => {
            let v = serde_json::json!({
                "words": language_value(&al, &closure.words),
                "oversized_seeds": language_value(&al, &closure.oversized_seeds),
            });
            let mut s = v.to_string();
            s.push('\n');
            s.into_bytes()
        }
        SetFormat::Text => {
            let mut s = String::new();
            for w in &closure.words {
                s.push_str(&al.format_word(w));
                s.push('\n');
            }
            for w in &closure.oversized_seeds {
                s.push_str("oversized: ");
                s.push_str(&al.format_word(w));
                s.push('\n');
            }
            s.into_bytes()
        }
    };
    emit(&bytes, &a.out)
}

fn right_sig_text(al: &Alphabet, sig: &RightSignature, out: &mut String, label: &str) {
    out.push_str(&format!("{label}memory: {}\n", al.format_word(sig.suffix_memory())));
    out.push_str(&format!("{label}pairs:\n"));
    for (xy, z) in sig.pairs() {
        out.push_str(&format!(
            "  ({}, {})\n",
            al.format_word(xy),
            al.format_word(z)
        ));
    }
}

fn left_sig_text(al: &Alphabet, sig: &LeftSignature, out: &mut String, label: &str) {
    out.push_str(&format!("{label}memory: {}\n", al.format_word(sig.prefix_memory())));
    out.push_str(&format!("{label}pairs:\n"));
    for (yx, z) in sig.pairs() {
        out.push_str(&format!(
            "  ({}, {})\n",
            al.format_word(yx),
            al.format_word(z)
        ));
    }
}

fn full_sig_text(al: &Alphabet, sig: &FullSignature) -> String {
    let mut s = format!(
        "kind: full\nm: {}\nk: {}\nlen_sat: {}\n",
        sig.m(),
        sig.k(),
        sig.len_sat()
    );
    right_sig_text(al, sig.right(), &mut s, "right ");
    left_sig_text(al, sig.left(), &mut s, "left ");
    s
}

fn cmd_sig(a: SigArgs) -> CmdResult {
    let al = load_alphabet(&a.common.alphabet)?;
    let w = load_one_word(&al, &a.input)?;
    let (m, k) = (a.common.m, a.common.k);
    let (json, text) = match a.mode {
        ModeArg::Right => {
            let sig = compute_right_signature(&w, m, k, &al)?;
            let mut s = format!(
                "kind: right\nm: {m}\nk: {k}\nlen_sat: {}\n",
                sig.len_sat()
            );
            right_sig_text(&al, &sig, &mut s, "");
            (sig.to_json(&al), s)
        }
        ModeArg::Left => {
            let sig = compute_left_signature(&w, m, k, &al)?;
            let mut s = format!(
                "kind: left\nm: {m}\nk: {k}\nlen_sat: {}\n",
                sig.len_sat()
            );
            left_sig_text(&al, &sig, &mut s, "");
            (sig.to_json(&al), s)
        }
        ModeArg::Full => {
            let sig = compute_full_signature(&w, m, k, &al)?;
            (sig.to_json(&al), full_sig_text(&al, &sig))
        }
    };
    let bytes = match a.format {
        SetFormat::Json => pretty_bytes(&json),
        SetFormat::Text => text.into_bytes(),
    };
    emit(&bytes, &a.out)
}

fn cmd_equiv(a: EquivArgs) -> CmdResult {
    let al = load_alphabet(&a.common.alphabet)?;
    let w1 = al.parse_word(&a.w1)?;
    let w2 = al.parse_word(&a.w2)?;
    let eq = equivalent(&w1, &w2, a.common.m, a.common.k, a.mode.to_mode(), &al)?;
    println!("{eq}");
    Ok(0)
}

fn grammar_text(g: &Grammar) -> String {
    let al = g.alphabet();
    let mut s = format!("kind: {}\nstart: {}\n", g.kind().as_str(), g.start());
    s.push_str(&format!("nonterminals: {}\n", g.nonterminals().join(" ")));
    let terminals: Vec<&str> = al.symbols().map(|sym| al.name(sym)).collect();
    s.push_str(&format!("terminals: {}\n", terminals.join(" ")));
    if g.kind() == GrammarKind::Linear && !g.class_markers().is_empty() {
        s.push_str("markers:\n");
        for (marker, members) in g.class_markers() {
            let words: Vec<String> = members.iter().map(|w| al.format_word(w)).collect();
            s.push_str(&format!("  {marker}: {}\n", words.join(", ")));
        }
    }
    s.push_str("productions:\n");
    for p in g.productions() {
        let mut pieces = Vec::new();
        if !p.pre.is_empty() {
            pieces.push(al.format_word(&p.pre));
        }
        if let Some(nt) = &p.nt {
            pieces.push(nt.clone());
        }
        if !p.post.is_empty() {
            pieces.push(al.format_word(&p.post));
        }
        let body = if pieces.is_empty() {
            "λ".to_string()
        } else {
            pieces.join(" ")
        };
        s.push_str(&format!("  {} -> {}\n", p.lhs, body));
    }
    s
}

fn grammar_bytes(g: &Grammar, format: GraphFormat) -> Vec<u8> {
    match format {
        GraphFormat::Json => export_grammar(g, ExportFormat::Json),
        GraphFormat::Dot => export_grammar(g, ExportFormat::Dot),
        GraphFormat::Text => grammar_text(g).into_bytes(),
    }
}

fn cmd_grammar_gw(a: GrammarGwArgs) -> CmdResult {
    let al = load_alphabet(&a.common.alphabet)?;
    let w = load_one_word(&al, &a.input)?;
    let g = build_gw(&w, a.common.m, a.common.k, a.side.to_side(), a.class_cap, &al)?;
    emit(&grammar_bytes(&g, a.format), &a.out)
}

fn cmd_grammar_gl(a: GrammarGlArgs) -> CmdResult {
    let al = load_alphabet(&a.common.alphabet)?;
    let lang = load_many_words(&al, &a.input)?;
    let g = build_gl(&lang, a.common.m, a.common.k, a.class_cap, &al)?;
    emit(&grammar_bytes(&g, a.format), &a.out)
}

fn cmd_reconstruct(a: ReconstructArgs) -> CmdResult {
    let al = load_alphabet(&a.alphabet)?;
    let g = load_linear_grammar(&a.grammar, &al)?;
    let lang = reconstruct_closure(&g, a.max_len, a.form_budget)?;
    emit(&language_bytes(&al, &lang, a.format), &a.out)
}

fn cmd_universal_encode(a: UniversalEncodeArgs) -> CmdResult {
    let al = load_alphabet(&a.alphabet)?;
    let g = load_source_grammar(&a.grammar, &al)?;
    let inst = encode_regular_grammar(&g, &al)?;
    let bytes = match a.format {
        SetFormat::Json => pretty_bytes(&inst.to_json()),
        SetFormat::Text => {
            let tokens = inst.tokens();
            let strand = tokens.format_word(inst.strand());
            let terminals: Vec<&str> =
                inst.v_dprime().iter().map(|&sym| tokens.name(sym)).collect();
            format!(
                "tokens: {}\nstrand length: {}\nstrand: {strand}\nterminal tokens: {}\n",
                tokens.len(),
                inst.strand().len(),
                terminals.join(" ")
            )
            .into_bytes()
        }
    };
    emit(&bytes, &a.out)
}

fn cmd_universal_verify(a: UniversalVerifyArgs) -> CmdResult {
    let al = load_alphabet(&a.alphabet)?;
    let g = load_source_grammar(&a.grammar, &al)?;
    let report = verify_universal(&g, a.max_len, a.word_cap, &al)?;
    let bytes = match a.format {
        SetFormat::Json => pretty_bytes(&report.to_json(&al)),
        SetFormat::Text => {
            let mut s = format!(
                "equal: {}\nstable: {}\n",
                report.equal, report.stable_at_higher_bound
            );
            match &report.counterexample {
                Some(w) => s.push_str(&format!("counterexample: {}\n", al.format_word(w))),
                None => s.push_str("counterexample: none\n"),
            }
            s.push_str(&format!(
                "grammar words: {}\nstrand words: {}\n",
                report.lhs.len(),
                report.rhs.len()
            ));
            s.into_bytes()
        }
    };
    emit(&bytes, &a.out)
}

fn gsm_text(t: &NondetTransducer) -> String {
    let al = t.alphabet();
    let mut s = format!(
        "states: {}\ninitial: {}\n",
        t.state_count(),
        t.state_names()[t.initial()]
    );
    for (i, name) in t.state_names().iter().enumerate() {
        match t.final_output(i) {
            Some(f) => s.push_str(&format!("  {name} (final: {})\n", al.format_word(f))),
            None => s.push_str(&format!("  {name}\n")),
        }
    }
    let v = t.to_json();
    let transitions = v["transitions"].as_array().expect("transition array");
    s.push_str(&format!("transitions: {}\n", transitions.len()));
    for tr in transitions {
        let out_word = al.word_from_json(&tr["out"]).expect("machine output word");
        s.push_str(&format!(
            "  {} -{}-> {} / {}\n",
            tr["from"].as_str().expect("state name"),
            tr["on"].as_str().expect("symbol name"),
            tr["to"].as_str().expect("state name"),
            al.format_word(&out_word)
        ));
    }
    s
}

fn cmd_gsm_build(a: GsmBuildArgs) -> CmdResult {
    let al = load_alphabet(&a.common.alphabet)?;
    let t = build_hi_gsm(a.common.m, a.common.k, a.side.to_side(), a.state_cap, &al)?;
    let bytes = match a.format {
        GraphFormat::Json => pretty_bytes(&t.to_json()),
        GraphFormat::Text => gsm_text(&t).into_bytes(),
        GraphFormat::Dot => t.to_dot().into_bytes(),
    };
    emit(&bytes, &a.out)
}

fn cmd_gsm_apply(a: GsmApplyArgs) -> CmdResult {
    let al = load_alphabet(&a.common.alphabet)?;
    let lang = load_many_words(&al, &a.input)?;
    let t = build_hi_gsm(a.common.m, a.common.k, a.side.to_side(), a.state_cap, &al)?;
    let result = apply_transducer_language(&t, &lang)?;
    emit(&language_bytes(&al, &result, a.format), &a.out)
}

fn resolve_seed(flag: Option<u64>) -> Result<u64, Failure> {
    if let Some(seed) = flag {
        return Ok(seed);
    }
    match std::env::var("HPKIT_SEED") {
        Ok(text) => text
            .parse()
            .map_err(|_| Failure::Message(format!("HPKIT_SEED is not a number: {text}"))),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

fn run_criterion(id: usize, seed: u64) -> Option<CriterionResult> {
    match id {
        1 => Some(criterion_step_vs_completions()),
        2 => Some(criterion_incremental_updates()),
        3 => Some(criterion_word_grammars()),
        4 => Some(criterion_class_decomposition(seed)),
        5 => Some(criterion_linear_grammar_pipeline(seed)),
        6 => Some(criterion_universal_encoding(seed)),
        7 => Some(criterion_machines(seed)),
        8 => Some(criterion_containments()),
        9 => Some(criterion_determinism(seed)),
        _ => None,
    }
}

/// Criterion 9: runs the whole command battery twice against this very
/// binary and demands byte-identical output.
fn criterion_determinism(seed: u64) -> CriterionResult {
    let outcome = (|| -> Result<String, String> {
        let exe = std::env::current_exe().map_err(|e| format!("cannot locate binary: {e}"))?;
        let dir = battery::unique_temp_dir();
        battery::write_fixtures(&dir).map_err(|e| format!("fixture setup failed: {e}"))?;
        let result = battery::compare_two_runs(&exe, &dir, seed);
        let _ = fs::remove_dir_all(&dir);
        result
    })();
    match outcome {
        Ok(detail) => CriterionResult {
            id: 9,
            name: "command output is byte-identical across runs",
            passed: true,
            detail,
        },
        Err(detail) => CriterionResult {
            id: 9,
            name: "command output is byte-identical across runs",
            passed: false,
            detail,
        },
    }
}

fn cmd_suite(a: SuiteArgs) -> CmdResult {
    let seed = resolve_seed(a.seed)?;
    let ids: Vec<usize> = if a.only.is_empty() {
        (1..=9).collect()
    } else {
        for &id in &a.only {
            if !(1..=9).contains(&id) {
                return Err(Failure::Message(format!("no such criterion: {id}")));
            }
        }
        a.only.clone()
    };
    let mut passed = 0usize;
    for &id in &ids {
        let result = run_criterion(id, seed).expect("ids validated above");
        println!("{}", result.line());
        if result.passed {
            passed += 1;
        }
    }
    println!("passed {passed} of {} criteria (seed {seed})", ids.len());
    Ok(if passed == ids.len() { 0 } else { 1 })
}
