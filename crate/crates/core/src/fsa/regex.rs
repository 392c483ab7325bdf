//! Regular expression trees and Thompson compilation.

use std::fmt;

use super::{FiniteAutomaton, FsaError, StateId, Symbol};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RegexTree {
    /// The empty language.
    Empty,
    /// The language holding only the empty string.
    Epsilon,
    Symbol(Symbol),
    Concat(Vec<RegexTree>),
    Union(Vec<RegexTree>),
    Star(Box<RegexTree>),
    Optional(Box<RegexTree>),
}

impl RegexTree {
    pub fn symbol(s: Symbol) -> Self {
        RegexTree::Symbol(s)
    }

    pub fn concat(parts: Vec<RegexTree>) -> Self {
        RegexTree::Concat(parts)
    }

    pub fn union(parts: Vec<RegexTree>) -> Self {
        RegexTree::Union(parts)
    }

    pub fn star(inner: RegexTree) -> Self {
        RegexTree::Star(Box::new(inner))
    }

    pub fn optional(inner: RegexTree) -> Self {
        RegexTree::Optional(Box::new(inner))
    }

    /// One or more: `x x*`.
    pub fn plus(inner: RegexTree) -> Self {
        RegexTree::Concat(vec![inner.clone(), RegexTree::star(inner)])
    }

    /// Parses the text notation: whitespace-separated symbols, `|`, `*`,
    /// `+`, `?`, parentheses, `_` for the empty string and `∅` for the
    /// empty language.
    pub fn parse(text: &str) -> Result<RegexTree, FsaError> {
        let tokens = tokenize(text)?;
        let mut p = Parser { tokens, pos: 0 };
        let tree = p.union()?;
        if p.pos != p.tokens.len() {
            return Err(p.error("unexpected token"));
        }
        Ok(tree)
    }

    fn precedence(&self) -> u8 {
        match self {
            RegexTree::Union(parts) if parts.len() > 1 => 0,
            RegexTree::Concat(parts) if parts.len() > 1 => 1,
            _ => 2,
        }
    }
}

impl fmt::Display for RegexTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |f: &mut fmt::Formatter<'_>, t: &RegexTree, min: u8| {
            if t.precedence() < min {
                write!(f, "( {t} )")
            } else {
                write!(f, "{t}")
            }
        };
        match self {
            RegexTree::Empty => f.write_str("∅"),
            RegexTree::Epsilon => f.write_str("_"),
            RegexTree::Symbol(s) => write!(f, "{s}"),
            RegexTree::Concat(parts) if parts.is_empty() => f.write_str("_"),
            RegexTree::Union(parts) if parts.is_empty() => f.write_str("∅"),
            RegexTree::Concat(parts) => {
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    wrap(f, p, 2)?;
                }
                Ok(())
            }
            RegexTree::Union(parts) => {
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" | ")?;
                    }
                    wrap(f, p, 1)?;
                }
                Ok(())
            }
            RegexTree::Star(inner) => {
                wrap(f, inner, 2)?;
                f.write_str(" *")
            }
            RegexTree::Optional(inner) => {
                wrap(f, inner, 2)?;
                f.write_str(" ?")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Sym(String),
    Op(char),
}

fn tokenize(text: &str) -> Result<Vec<Token>, FsaError> {
    let mut tokens = Vec::new();
    let mut word = String::new();
    let flush = |word: &mut String, tokens: &mut Vec<Token>| {
        if !word.is_empty() {
            tokens.push(Token::Sym(std::mem::take(word)));
        }
    };
    for c in text.chars() {
        if c.is_whitespace() {
            flush(&mut word, &mut tokens);
        } else if "()|*+?".contains(c) {
            flush(&mut word, &mut tokens);
            tokens.push(Token::Op(c));
        } else {
            word.push(c);
        }
    }
    flush(&mut word, &mut tokens);
    Ok(tokens)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn error(&self, message: &str) -> FsaError {
        FsaError::Parse {
            line: 1,
            message: format!("{message} at token {}", self.pos + 1),
        }
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn union(&mut self) -> Result<RegexTree, FsaError> {
        let mut parts = vec![self.concat()?];
        while self.peek() == Some(&Token::Op('|')) {
            self.pos += 1;
            parts.push(self.concat()?);
        }
        Ok(if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            RegexTree::Union(parts)
        })
    }

    fn concat(&mut self) -> Result<RegexTree, FsaError> {
        let mut parts = Vec::new();
        while matches!(self.peek(), Some(Token::Sym(_)) | Some(Token::Op('('))) {
            parts.push(self.postfix()?);
        }
        match parts.len() {
            0 => Err(self.error("expected an expression")),
            1 => Ok(parts.pop().unwrap()),
            _ => Ok(RegexTree::Concat(parts)),
        }
    }

    fn postfix(&mut self) -> Result<RegexTree, FsaError> {
        let mut t = self.atom()?;
        while let Some(Token::Op(c @ ('*' | '+' | '?'))) = self.peek() {
            t = match c {
                '*' => RegexTree::star(t),
                '+' => RegexTree::plus(t),
                _ => RegexTree::optional(t),
            };
            self.pos += 1;
        }
        Ok(t)
    }

    fn atom(&mut self) -> Result<RegexTree, FsaError> {
        match self.peek().cloned() {
            Some(Token::Sym(s)) => {
                self.pos += 1;
                Ok(match s.as_str() {
                    "_" => RegexTree::Epsilon,
                    "∅" => RegexTree::Empty,
                    _ => RegexTree::Symbol(Symbol::new(&s)?),
                })
            }
            Some(Token::Op('(')) => {
                self.pos += 1;
                let t = self.union()?;
                if self.peek() != Some(&Token::Op(')')) {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(t)
            }
            _ => Err(self.error("expected a symbol or '('")),
        }
    }
}

/// Thompson construction: an epsilon-NFA with one initial and one final
/// state for the language of `expr`.
pub fn regex_compile(expr: &RegexTree) -> FiniteAutomaton {
    let mut fsa = FiniteAutomaton::new("q0");
    let mut count = 1;
    let mut fresh = |fsa: &mut FiniteAutomaton| {
        let id = fsa.add_state(&format!("q{count}"));
        count += 1;
        id
    };
    let end = fresh(&mut fsa);
    build(&mut fsa, &mut fresh, expr, 0, end);
    fsa.set_final(end, true);
    fsa
}

fn build(
    fsa: &mut FiniteAutomaton,
    fresh: &mut impl FnMut(&mut FiniteAutomaton) -> StateId,
    expr: &RegexTree,
    from: StateId,
    to: StateId,
) {
    match expr {
        RegexTree::Empty => {}
        RegexTree::Epsilon => fsa.add_transition(from, None, to),
        RegexTree::Symbol(s) => fsa.add_transition(from, Some(s.clone()), to),
        RegexTree::Concat(parts) => {
            if parts.is_empty() {
                fsa.add_transition(from, None, to);
                return;
            }
            let mut cur = from;
            for (i, p) in parts.iter().enumerate() {
                let next = if i + 1 == parts.len() { to } else { fresh(fsa) };
                build(fsa, fresh, p, cur, next);
                cur = next;
            }
        }
        RegexTree::Union(parts) => {
            for p in parts {
                let a = fresh(fsa);
                let b = fresh(fsa);
                fsa.add_transition(from, None, a);
                build(fsa, fresh, p, a, b);
                fsa.add_transition(b, None, to);
            }
        }
        RegexTree::Star(inner) => {
            let a = fresh(fsa);
            let b = fresh(fsa);
            fsa.add_transition(from, None, a);
            build(fsa, fresh, inner, a, b);
            fsa.add_transition(b, None, a);
            fsa.add_transition(b, None, to);
            fsa.add_transition(from, None, to);
        }
        RegexTree::Optional(inner) => {
            let a = fresh(fsa);
            let b = fresh(fsa);
            fsa.add_transition(from, None, a);
            build(fsa, fresh, inner, a, b);
            fsa.add_transition(b, None, to);
            fsa.add_transition(from, None, to);
        }
    }
}
