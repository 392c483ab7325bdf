//! Worked grammar fragments, available as values and as text fixtures.

mod agreement;
mod auxiliary;
mod dependency;
mod discourse;
mod iteration;
mod lexicon;

pub use agreement::{agreement_automaton, feature_domains, parse_token, token, FeatureBundle, Language};
pub use auxiliary::{affix_hop, english_aux, AuxMorphemeString, Tense, MODALS};
pub use dependency::{
    cross_serial_check, wh_dependency, CrossSerialReason, Verdict, DEFAULT_CROSS_SERIAL_BOUND,
    FILLER_REGISTERS,
};
pub use discourse::{adjacency_pairs, adjacency_pairs_regex, chant_schema};
pub use iteration::{iteration_template, IterationKind, IterationParams};
pub use lexicon::{
    blend_automaton, blend_count, compound_vocabulary, kleene_vocab, prefix_vocabulary, segment,
    COMPOUND_PARTS, EXTRA_PREFIX, PREFIXES,
};

use crate::fsa::{sym, text, FiniteAutomaton, Orientation, RegisterAutomaton, RegularGrammar, Rule, Transducer};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FragmentError {
    #[error("invalid auxiliary sequence: {0}")]
    InvalidAux(String),
    #[error("{0}")]
    Feature(String),
    #[error("unknown language {0:?}; use en or de")]
    UnknownLanguage(String),
    #[error("vocabulary is empty")]
    EmptyVocabulary,
    #[error("unknown fragment {0:?}")]
    UnknownFragment(String),
}

impl FragmentError {
    pub fn code(&self) -> &'static str {
        match self {
            FragmentError::InvalidAux(_) => "INVALID_AUX",
            FragmentError::Feature(_) => "INVALID_FEATURE",
            FragmentError::UnknownLanguage(_) => "UNKNOWN_LANGUAGE",
            FragmentError::EmptyVocabulary => "EMPTY_VOCABULARY",
            FragmentError::UnknownFragment(_) => "UNKNOWN_FRAGMENT",
        }
    }
}

/// `A -> very A | big | small`
pub fn table1_grammar() -> RegularGrammar {
    RegularGrammar::new(
        sym("A"),
        Orientation::Right,
        vec![
            Rule::pair(sym("A"), sym("very"), sym("A")),
            Rule::terminal(sym("A"), sym("big")),
            Rule::terminal(sym("A"), sym("small")),
        ],
    )
    .expect("valid grammar")
}

/// Kernel clause template: subject, verb and at most two post-verbal
/// objects. Acyclic, so the language is finite.
pub fn saad_grammar() -> RegularGrammar {
    RegularGrammar::new(
        sym("S"),
        Orientation::Right,
        vec![
            Rule::pair(sym("S"), sym("Subj"), sym("P")),
            Rule::pair(sym("P"), sym("V"), sym("O1")),
            Rule::terminal(sym("P"), sym("V")),
            Rule::pair(sym("O1"), sym("Obj"), sym("O2")),
            Rule::terminal(sym("O1"), sym("Obj")),
            Rule::terminal(sym("O2"), sym("Obj")),
        ],
    )
    .expect("valid grammar")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Fragment {
    Grammar(RegularGrammar),
    Automaton(FiniteAutomaton),
    Transducer(Transducer),
    Register(RegisterAutomaton),
}

impl Fragment {
    pub fn to_text(&self) -> String {
        match self {
            Fragment::Grammar(g) => text::write_grammar(g),
            Fragment::Automaton(a) => text::write_automaton(a),
            Fragment::Transducer(t) => text::write_transducer(t),
            Fragment::Register(r) => text::write_register_automaton(r),
        }
    }
}

pub struct CatalogueEntry {
    pub name: &'static str,
    /// Fixture file name.
    pub file: &'static str,
    pub description: &'static str,
    pub build: fn() -> Fragment,
}

/// Every named fragment, sorted by name.
pub fn catalogue() -> Vec<CatalogueEntry> {
    let mut entries = vec![
        CatalogueEntry {
            name: "adjacency-pairs",
            file: "adjacency_pairs.fsa",
            description: "question, answer, optional confirmation, iterated",
            build: || Fragment::Automaton(adjacency_pairs()),
        },
        CatalogueEntry {
            name: "agreement-de",
            file: "agreement_de.rfsa",
            description: "German noun-phrase and subject-verb agreement registers",
            build: || Fragment::Register(agreement_automaton(Language::De)),
        },
        CatalogueEntry {
            name: "agreement-en",
            file: "agreement_en.rfsa",
            description: "English subject-verb agreement registers",
            build: || Fragment::Register(agreement_automaton(Language::En)),
        },
        CatalogueEntry {
            name: "blend",
            file: "blend.fsa",
            description: "56 onsets times 549 nuclei",
            build: || Fragment::Automaton(blend_automaton(56, 549)),
        },
        CatalogueEntry {
            name: "chant-de",
            file: "chant_de.fsa",
            description: "chant-framed dialogue with repair chants",
            build: || Fragment::Automaton(chant_schema(Language::De)),
        },
        CatalogueEntry {
            name: "chant-en",
            file: "chant_en.fsa",
            description: "chant-framed dialogue without repair",
            build: || Fragment::Automaton(chant_schema(Language::En)),
        },
        CatalogueEntry {
            name: "compounds",
            file: "compounds.fsa",
            description: "free concatenation of compound parts",
            build: || Fragment::Automaton(kleene_vocab(&compound_vocabulary()).unwrap()),
        },
        CatalogueEntry {
            name: "english-aux",
            file: "english_aux.fsa",
            description: "tense, modal, perfect, progressive, passive, verb",
            build: || Fragment::Automaton(english_aux()),
        },
        CatalogueEntry {
            name: "prefixes",
            file: "prefixes.fsa",
            description: "stacked derivational prefixes",
            build: || Fragment::Automaton(kleene_vocab(&prefix_vocabulary()).unwrap()),
        },
        CatalogueEntry {
            name: "saad",
            file: "saad.grammar",
            description: "subject, verb and up to two objects",
            build: || Fragment::Grammar(saad_grammar()),
        },
        CatalogueEntry {
            name: "table1-fsa",
            file: "table1.fsa",
            description: "automaton for very* (big | small)",
            build: || Fragment::Automaton(table1_grammar().to_automaton()),
        },
        CatalogueEntry {
            name: "table1-grammar",
            file: "table1.grammar",
            description: "A -> very A | big | small",
            build: || Fragment::Grammar(table1_grammar()),
        },
        CatalogueEntry {
            name: "tem",
            file: "tem.fst",
            description: "three-state tone sandhi transducer",
            build: || Fragment::Transducer(crate::tone::tem_transducer()),
        },
        CatalogueEntry {
            name: "wh-dependency",
            file: "wh_dependency.rfsa",
            description: "three filler registers discharged by gaps",
            build: || Fragment::Register(wh_dependency()),
        },
    ];
    entries.sort_by_key(|e| e.name);
    entries
}

pub fn build(name: &str) -> Result<Fragment, FragmentError> {
    catalogue()
        .into_iter()
        .find(|e| e.name == name)
        .map(|e| (e.build)())
        .ok_or_else(|| FragmentError::UnknownFragment(name.to_string()))
}

pub fn emit(name: &str) -> Result<String, FragmentError> {
    build(name).map(|f| f.to_text())
}
