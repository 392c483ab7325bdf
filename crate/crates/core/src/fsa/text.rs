//! Line-oriented text formats for grammars, automata, transducers and
//! register automata.
//!
//! `#` starts a comment (at line start or after whitespace), `_` stands for
//! epsilon or an empty right-hand side. Serializers write a canonical form
//! that parses back to an equal value and serializes to the same bytes.

use std::collections::BTreeSet;

use super::automaton::check_state_name;
use super::cfg::{CfgRule, ContextFreeGrammar};
use super::grammar::{Orientation, RegularGrammar, Rule};
use super::register::{Action, Guard, RegisterAutomaton, RegisterTransition};
use super::{FiniteAutomaton, FsaError, StateId, Symbol, Transducer};

/// Written in place of an empty label or an empty string.
pub const EPSILON: &str = "_";

fn parse_err(line: usize, message: impl Into<String>) -> FsaError {
    FsaError::Parse {
        line,
        message: message.into(),
    }
}

/// Content lines with 1-based numbers, comments stripped.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let mut end = raw.len();
        let bytes = raw.as_bytes();
        for (j, c) in raw.char_indices() {
            if c == '#' && (j == 0 || bytes[j - 1].is_ascii_whitespace()) {
                end = j;
                break;
            }
        }
        let words: Vec<&str> = raw[..end].split_whitespace().collect();
        (!words.is_empty()).then_some((i + 1, words))
    })
}

fn symbol_at(line: usize, text: &str) -> Result<Symbol, FsaError> {
    Symbol::new(text).map_err(|e| parse_err(line, e.to_string()))
}

fn optional_symbol(line: usize, text: &str) -> Result<Option<Symbol>, FsaError> {
    if text == EPSILON {
        Ok(None)
    } else {
        symbol_at(line, text).map(Some)
    }
}

fn with_line(line: usize) -> impl Fn(FsaError) -> FsaError {
    move |e| match e {
        FsaError::Parse { .. } => e,
        other => parse_err(line, other.to_string()),
    }
}

/// Splits `A -> x y | z` into its left-hand side and alternatives.
fn split_rule<'a>(line: usize, words: &[&'a str]) -> Result<(&'a str, Vec<Vec<&'a str>>), FsaError> {
    if words.len() < 3 || words[1] != "->" {
        return Err(parse_err(line, "expected `LHS -> RHS`"));
    }
    let alternatives = words[2..]
        .split(|w| *w == "|")
        .map(|alt| alt.to_vec())
        .collect::<Vec<_>>();
    if alternatives.iter().any(Vec::is_empty) {
        return Err(parse_err(line, "empty alternative; write `_` for an empty right-hand side"));
    }
    Ok((words[0], alternatives))
}

// Grammars.

/// A grammar file, regular when it declares `@orientation`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GrammarFile {
    Regular(RegularGrammar),
    ContextFree(ContextFreeGrammar),
}

impl GrammarFile {
    pub fn to_cfg(&self) -> ContextFreeGrammar {
        match self {
            GrammarFile::Regular(g) => g.to_cfg(),
            GrammarFile::ContextFree(g) => g.clone(),
        }
    }
}

pub fn parse_grammar_file(text: &str) -> Result<GrammarFile, FsaError> {
    let regular = content_lines(text).any(|(_, w)| w[0] == "@orientation");
    if regular {
        parse_grammar(text).map(GrammarFile::Regular)
    } else {
        parse_cfg(text).map(GrammarFile::ContextFree)
    }
}

fn grammar_headers(text: &str) -> Result<(Option<Symbol>, Option<Orientation>), FsaError> {
    let mut start = None;
    let mut orientation = None;
    for (line, words) in content_lines(text) {
        match words[0] {
            "@start" if words.len() == 2 => start = Some(symbol_at(line, words[1])?),
            "@orientation" if words.len() == 2 => {
                orientation = Some(match words[1] {
                    "right" => Orientation::Right,
                    "left" => Orientation::Left,
                    other => return Err(parse_err(line, format!("unknown orientation {other:?}"))),
                })
            }
            w if w.starts_with('@') => {
                return Err(parse_err(line, format!("malformed header {w}")))
            }
            _ => {}
        }
    }
    Ok((start, orientation))
}

pub fn parse_grammar(text: &str) -> Result<RegularGrammar, FsaError> {
    let (start, orientation) = grammar_headers(text)?;
    let start = start.ok_or_else(|| parse_err(0, "missing @start"))?;
    let orientation = orientation.ok_or_else(|| parse_err(0, "missing @orientation"))?;
    let mut rules = Vec::new();
    for (line, words) in content_lines(text).filter(|(_, w)| !w[0].starts_with('@')) {
        let (lhs, alternatives) = split_rule(line, &words)?;
        let lhs = symbol_at(line, lhs)?;
        for alt in alternatives {
            let rule = match (alt.as_slice(), orientation) {
                ([a], _) if *a != EPSILON => Rule::terminal(lhs.clone(), symbol_at(line, a)?),
                ([a, b], Orientation::Right) => {
                    Rule::pair(lhs.clone(), symbol_at(line, a)?, symbol_at(line, b)?)
                }
                ([b, a], Orientation::Left) => {
                    Rule::pair(lhs.clone(), symbol_at(line, a)?, symbol_at(line, b)?)
                }
                _ => {
                    return Err(parse_err(
                        line,
                        "regular rules take one terminal, optionally with one nonterminal",
                    ))
                }
            };
            rules.push((line, rule));
        }
    }
    // Report vocabulary errors against the first offending line.
    let all: Vec<Rule> = rules.iter().map(|(_, r)| r.clone()).collect();
    RegularGrammar::new(start, orientation, all).map_err(|e| {
        let line = match &e {
            FsaError::InvalidRule { rule, .. } => rules
                .iter()
                .find(|(_, r)| &r.display(orientation) == rule)
                .map_or(0, |(l, _)| *l),
            _ => 0,
        };
        with_line(line)(e)
    })
}

pub fn write_grammar(g: &RegularGrammar) -> String {
    let mut out = format!("@start {}\n@orientation {}\n", g.start(), g.orientation());
    for r in g.rules() {
        out.push_str(&r.display(g.orientation()));
        out.push('\n');
    }
    out
}

pub fn parse_cfg(text: &str) -> Result<ContextFreeGrammar, FsaError> {
    let (start, orientation) = grammar_headers(text)?;
    if orientation.is_some() {
        return Err(parse_err(0, "@orientation is only valid in regular grammar files"));
    }
    let start = start.ok_or_else(|| parse_err(0, "missing @start"))?;
    let mut rules = Vec::new();
    for (line, words) in content_lines(text).filter(|(_, w)| !w[0].starts_with('@')) {
        let (lhs, alternatives) = split_rule(line, &words)?;
        let lhs = symbol_at(line, lhs)?;
        for alt in alternatives {
            let rhs = if alt == [EPSILON] {
                Vec::new()
            } else {
                alt.iter().map(|s| symbol_at(line, s)).collect::<Result<_, _>>()?
            };
            rules.push(CfgRule {
                lhs: lhs.clone(),
                rhs,
            });
        }
    }
    ContextFreeGrammar::new(start, rules)
}

pub fn write_cfg(g: &ContextFreeGrammar) -> String {
    let mut out = format!("@start {}\n", g.start());
    for r in g.rules() {
        out.push_str(&r.to_string());
        out.push('\n');
    }
    out
}

// Automata.

/// Shared header block of the automaton-like formats.
struct Header {
    initial: Option<String>,
    finals: Vec<(usize, String)>,
    states: Option<Vec<String>>,
    alphabet: Option<Vec<Symbol>>,
    input: Option<Vec<Symbol>>,
    output: Option<Vec<Symbol>>,
    registers: Vec<(Symbol, Vec<Symbol>)>,
}

fn read_header(text: &str, allowed: &[&str]) -> Result<Header, FsaError> {
    let mut h = Header {
        initial: None,
        finals: Vec::new(),
        states: None,
        alphabet: None,
        input: None,
        output: None,
        registers: Vec::new(),
    };
    let symbols_of = |line: usize, words: &[&str]| -> Result<Vec<Symbol>, FsaError> {
        words.iter().map(|w| symbol_at(line, w)).collect()
    };
    for (line, words) in content_lines(text) {
        let key = words[0];
        if !key.starts_with('@') {
            continue;
        }
        if !allowed.contains(&key) {
            return Err(parse_err(line, format!("unknown header {key}")));
        }
        let rest = &words[1..];
        match key {
            "@initial" if rest.len() == 1 => h.initial = Some(rest[0].to_string()),
            "@initial" => return Err(parse_err(line, "@initial takes one state")),
            "@finals" => h.finals.extend(rest.iter().map(|s| (line, s.to_string()))),
            "@states" => h.states = Some(rest.iter().map(|s| s.to_string()).collect()),
            "@alphabet" => h.alphabet = Some(symbols_of(line, rest)?),
            "@input" => h.input = Some(symbols_of(line, rest)?),
            "@output" => h.output = Some(symbols_of(line, rest)?),
            "@register" if !rest.is_empty() => h.registers.push((
                symbol_at(line, rest[0])?,
                symbols_of(line, &rest[1..])?,
            )),
            _ => return Err(parse_err(line, format!("malformed header {key}"))),
        }
    }
    Ok(h)
}

fn body_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    content_lines(text).filter(|(_, w)| !w[0].starts_with('@'))
}

fn check_state(line: usize, name: &str) -> Result<(), FsaError> {
    check_state_name(name).map_err(with_line(line))
}

/// States in the order a parser meets them without an `@states` header.
fn implied_order<'a>(
    initial: &'a str,
    edges: impl Iterator<Item = (&'a str, &'a str)>,
    finals: impl Iterator<Item = &'a str>,
) -> Vec<&'a str> {
    let mut seen = BTreeSet::new();
    let mut order = Vec::new();
    let mut add = |s: &'a str| {
        if seen.insert(s) {
            order.push(s);
        }
    };
    add(initial);
    for (s, d) in edges {
        add(s);
        add(d);
    }
    for f in finals {
        add(f);
    }
    order
}

fn write_states_header(out: &mut String, names: &[String], implied: &[&str]) {
    if names.len() != implied.len() || names.iter().zip(implied).any(|(a, b)| a != b) {
        out.push_str("@states");
        for n in names {
            out.push(' ');
            out.push_str(n);
        }
        out.push('\n');
    }
}

fn write_symbol_header(out: &mut String, key: &str, declared: &BTreeSet<Symbol>, used: &BTreeSet<&Symbol>) {
    if declared.len() != used.len() {
        out.push_str(key);
        for s in declared {
            out.push(' ');
            out.push_str(s.as_str());
        }
        out.push('\n');
    }
}

fn write_initial_finals(out: &mut String, names: &[String], initial: StateId, finals: &BTreeSet<StateId>) {
    out.push_str(&format!("@initial {}\n@finals", names[initial]));
    for &f in finals {
        out.push(' ');
        out.push_str(&names[f]);
    }
    out.push('\n');
}

fn finish_header(h: &Header, line_fallback: usize) -> Result<String, FsaError> {
    h.initial
        .clone()
        .ok_or_else(|| parse_err(line_fallback, "missing @initial"))
}

pub fn parse_automaton(text: &str) -> Result<FiniteAutomaton, FsaError> {
    let h = read_header(text, &["@initial", "@finals", "@states", "@alphabet"])?;
    let initial = finish_header(&h, 0)?;
    check_state(0, &initial)?;
    let mut fsa = FiniteAutomaton::new(&initial);
    for s in h.states.iter().flatten() {
        check_state(0, s)?;
        fsa.add_state(s);
    }
    if let Some(alphabet) = &h.alphabet {
        for a in alphabet {
            fsa.add_symbol(a.clone());
        }
    }
    for (line, words) in body_lines(text) {
        let [src, label, dst] = words.as_slice() else {
            return Err(parse_err(line, "expected `source label target`"));
        };
        check_state(line, src)?;
        check_state(line, dst)?;
        let label = optional_symbol(line, label)?;
        if let (Some(a), Some(alphabet)) = (&label, &h.alphabet) {
            if !alphabet.contains(a) {
                return Err(parse_err(line, format!("label {a} outside @alphabet")));
            }
        }
        let s = fsa.add_state(src);
        let d = fsa.add_state(dst);
        fsa.add_transition(s, label, d);
    }
    for (line, f) in &h.finals {
        check_state(*line, f)?;
        let id = fsa.add_state(f);
        fsa.set_final(id, true);
    }
    fsa.validate()?;
    Ok(fsa)
}

pub fn write_automaton(fsa: &FiniteAutomaton) -> String {
    let names = fsa.state_names();
    let mut out = String::new();
    let implied = implied_order(
        &names[fsa.initial()],
        fsa.transitions()
            .iter()
            .map(|t| (names[t.src].as_str(), names[t.dst].as_str())),
        fsa.finals().iter().map(|&f| names[f].as_str()),
    );
    write_initial_finals(&mut out, names, fsa.initial(), fsa.finals());
    write_states_header(&mut out, names, &implied);
    let used: BTreeSet<&Symbol> = fsa.transitions().iter().filter_map(|t| t.label.as_ref()).collect();
    write_symbol_header(&mut out, "@alphabet", fsa.alphabet(), &used);
    for t in fsa.transitions() {
        let label = t.label.as_ref().map_or(EPSILON, Symbol::as_str);
        out.push_str(&format!("{} {} {}\n", names[t.src], label, names[t.dst]));
    }
    out
}

pub fn parse_transducer(text: &str) -> Result<Transducer, FsaError> {
    let h = read_header(text, &["@initial", "@finals", "@states", "@input", "@output"])?;
    let initial = finish_header(&h, 0)?;
    check_state(0, &initial)?;
    let mut t = Transducer::new(&initial);
    for s in h.states.iter().flatten() {
        check_state(0, s)?;
        t.add_state(s);
    }
    for a in h.input.iter().flatten() {
        t.add_input_symbol(a.clone());
    }
    for b in h.output.iter().flatten() {
        t.add_output_symbol(b.clone());
    }
    for (line, words) in body_lines(text) {
        let [src, label, dst] = words.as_slice() else {
            return Err(parse_err(line, "expected `source in:out target`"));
        };
        let Some((a, b)) = label.split_once(':') else {
            return Err(parse_err(line, "transducer labels are written in:out"));
        };
        check_state(line, src)?;
        check_state(line, dst)?;
        let a = optional_symbol(line, a)?;
        let b = optional_symbol(line, b)?;
        if let (Some(a), Some(declared)) = (&a, &h.input) {
            if !declared.contains(a) {
                return Err(parse_err(line, format!("input {a} outside @input")));
            }
        }
        if let (Some(b), Some(declared)) = (&b, &h.output) {
            if !declared.contains(b) {
                return Err(parse_err(line, format!("output {b} outside @output")));
            }
        }
        let s = t.add_state(src);
        let d = t.add_state(dst);
        t.add_edge(s, a, b, d);
    }
    for (line, f) in &h.finals {
        check_state(*line, f)?;
        let id = t.add_state(f);
        t.set_final(id, true);
    }
    t.validate()?;
    Ok(t)
}

pub fn write_transducer(t: &Transducer) -> String {
    let names = t.state_names();
    let mut out = String::new();
    let implied = implied_order(
        &names[t.initial()],
        t.edges()
            .iter()
            .map(|e| (names[e.src].as_str(), names[e.dst].as_str())),
        t.finals().iter().map(|&f| names[f].as_str()),
    );
    write_initial_finals(&mut out, names, t.initial(), t.finals());
    write_states_header(&mut out, names, &implied);
    let used_in: BTreeSet<&Symbol> = t.edges().iter().filter_map(|e| e.label.input.as_ref()).collect();
    let used_out: BTreeSet<&Symbol> = t.edges().iter().filter_map(|e| e.label.output.as_ref()).collect();
    write_symbol_header(&mut out, "@input", t.input_alphabet(), &used_in);
    write_symbol_header(&mut out, "@output", t.output_alphabet(), &used_out);
    for e in t.edges() {
        out.push_str(&format!("{} {} {}\n", names[e.src], e.label, names[e.dst]));
    }
    out
}

fn parse_guard(line: usize, text: &str) -> Result<Guard, FsaError> {
    let body = &text[1..];
    let reg = |s: &str| symbol_at(line, s);
    if let Some(r) = body.strip_suffix(":set") {
        return Ok(Guard::IsSet(reg(r)?));
    }
    if let Some(r) = body.strip_suffix(":unset") {
        return Ok(Guard::IsUnset(reg(r)?));
    }
    if let Some((r, o)) = body.split_once("==") {
        return Ok(Guard::EqualsRegister {
            register: reg(r)?,
            other: reg(o)?,
        });
    }
    if let Some((r, v)) = body.split_once('=') {
        return Ok(Guard::Equals {
            register: reg(r)?,
            value: reg(v)?,
        });
    }
    Err(parse_err(line, format!("malformed guard {text}")))
}

fn parse_action(line: usize, text: &str) -> Result<Action, FsaError> {
    let body = &text[1..];
    if let Some(r) = body.strip_suffix(":clear") {
        return Ok(Action::Clear(symbol_at(line, r)?));
    }
    if let Some((r, v)) = body.split_once('=') {
        return Ok(Action::Set {
            register: symbol_at(line, r)?,
            value: symbol_at(line, v)?,
        });
    }
    Err(parse_err(line, format!("malformed action {text}")))
}

pub fn parse_register_automaton(text: &str) -> Result<RegisterAutomaton, FsaError> {
    let h = read_header(text, &["@initial", "@finals", "@states", "@alphabet", "@register"])?;
    let initial = finish_header(&h, 0)?;
    check_state(0, &initial)?;
    let mut ra = RegisterAutomaton::new(&initial);
    for s in h.states.iter().flatten() {
        check_state(0, s)?;
        ra.add_state(s);
    }
    for a in h.alphabet.iter().flatten() {
        ra.add_symbol(a.clone());
    }
    for (r, domain) in &h.registers {
        ra.add_register(r.clone(), domain.iter().cloned());
    }
    for (line, words) in body_lines(text) {
        if words.len() < 3 {
            return Err(parse_err(line, "expected `source label target [guards] [actions]`"));
        }
        check_state(line, words[0])?;
        check_state(line, words[2])?;
        let label = optional_symbol(line, words[1])?;
        let mut guards = Vec::new();
        let mut actions = Vec::new();
        for w in &words[3..] {
            match w.chars().next() {
                Some('?') => guards.push(parse_guard(line, w)?),
                Some('!') => actions.push(parse_action(line, w)?),
                _ => return Err(parse_err(line, format!("expected ?guard or !action, found {w}"))),
            }
        }
        let src = ra.add_state(words[0]);
        let dst = ra.add_state(words[2]);
        ra.add_transition(RegisterTransition {
            src,
            label,
            guards,
            actions,
            dst,
        });
    }
    for (line, f) in &h.finals {
        check_state(*line, f)?;
        let id = ra.add_state(f);
        ra.set_final(id, true);
    }
    ra.validate()?;
    Ok(ra)
}

pub fn write_register_automaton(ra: &RegisterAutomaton) -> String {
    let names = ra.state_names();
    let mut out = String::new();
    let implied = implied_order(
        &names[ra.initial()],
        ra.transitions()
            .iter()
            .map(|t| (names[t.src].as_str(), names[t.dst].as_str())),
        ra.finals().iter().map(|&f| names[f].as_str()),
    );
    write_initial_finals(&mut out, names, ra.initial(), ra.finals());
    write_states_header(&mut out, names, &implied);
    let used: BTreeSet<&Symbol> = ra.transitions().iter().filter_map(|t| t.label.as_ref()).collect();
    write_symbol_header(&mut out, "@alphabet", ra.alphabet(), &used);
    for (r, domain) in ra.registers() {
        out.push_str(&format!("@register {r}"));
        for v in domain {
            out.push(' ');
            out.push_str(v.as_str());
        }
        out.push('\n');
    }
    for t in ra.transitions() {
        let label = t.label.as_ref().map_or(EPSILON, Symbol::as_str);
        out.push_str(&format!("{} {} {}", names[t.src], label, names[t.dst]));
        for g in &t.guards {
            out.push_str(&format!(" {g}"));
        }
        for a in &t.actions {
            out.push_str(&format!(" {a}"));
        }
        out.push('\n');
    }
    out
}
