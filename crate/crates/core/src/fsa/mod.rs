//! Regular grammars, finite automata, transducers and register automata.

mod automaton;
mod cfg;
mod count;
mod grammar;
mod ops;
mod regex;
mod register;
mod symbol;
pub mod text;
mod transducer;

pub use automaton::{FiniteAutomaton, RunResult, StateId, Transition, END};
pub use cfg::{CfgRule, Classification, ContextFreeGrammar, RecursionType};
pub use count::LanguageSize;
pub use grammar::{grammar_to_automaton, Orientation, RegularGrammar, Rhs, Rule};
pub use regex::{regex_compile, RegexTree};
pub use register::{Action, Guard, RegisterAutomaton, RegisterTransition, Valuation};
pub use symbol::{join, sym, symbols, Symbol};
pub use transducer::{PairLabel, Transducer, TransducerEdge, DEFAULT_OUTPUT_CAP};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FsaError {
    #[error("invalid symbol {0:?}: symbols are nonempty and contain no whitespace")]
    InvalidSymbol(String),
    #[error("invalid state name {0:?}")]
    InvalidStateName(String),
    #[error("{0:?} is reserved and cannot name a nonterminal")]
    ReservedName(String),
    #[error("invalid rule `{rule}`: {reason}")]
    InvalidRule { rule: String, reason: String },
    #[error("{0}")]
    Invalid(String),
    #[error("unknown symbol {symbol:?} at position {position}")]
    UnknownSymbol { position: usize, symbol: String },
    #[error("automaton is not deterministic")]
    NotDeterministic,
    #[error("the language contains the empty string, which no regular rule can derive")]
    EmptyStringInLanguage,
    #[error("output symbols not in the next input alphabet: {}", .0.join(" "))]
    AlphabetMismatch(Vec<String>),
    #[error("more than {cap} outputs")]
    OutputOverflow { cap: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl FsaError {
    /// Stable machine-readable identifier.
    pub fn code(&self) -> &'static str {
        match self {
            FsaError::InvalidSymbol(_) => "INVALID_SYMBOL",
            FsaError::InvalidStateName(_) => "INVALID_STATE_NAME",
            FsaError::ReservedName(_) => "RESERVED_NAME",
            FsaError::InvalidRule { .. } => "INVALID_RULE",
            FsaError::Invalid(_) => "INVALID",
            FsaError::UnknownSymbol { .. } => "UNKNOWN_SYMBOL",
            FsaError::NotDeterministic => "NOT_DETERMINISTIC",
            FsaError::EmptyStringInLanguage => "EMPTY_STRING_IN_LANGUAGE",
            FsaError::AlphabetMismatch(_) => "ALPHABET_MISMATCH",
            FsaError::OutputOverflow { .. } => "OUTPUT_OVERFLOW",
            FsaError::Parse { .. } => "PARSE_ERROR",
        }
    }
}
