//! Discourse-level schemas: question-answer exchanges and chant framing.

use super::agreement::Language;
use crate::fsa::{FiniteAutomaton, RegexTree};

/// Question, answer, optional confirmation, any number of times, at least
/// once.
pub fn adjacency_pairs() -> FiniteAutomaton {
    let mut fsa = FiniteAutomaton::new("open");
    fsa.connect("open", Some("Q"), "asked");
    fsa.connect("asked", Some("A"), "answered");
    fsa.connect("answered", Some("C"), "confirmed");
    fsa.connect("answered", Some("Q"), "asked");
    fsa.connect("confirmed", Some("Q"), "asked");
    for f in ["answered", "confirmed"] {
        let id = fsa.state_id(f).unwrap();
        fsa.set_final(id, true);
    }
    fsa
}

/// `Q A C? ( Q A C? )*`
pub fn adjacency_pairs_regex() -> RegexTree {
    RegexTree::parse("Q A C? ( Q A C? )*").expect("well-formed")
}

/// Chant-framed exchange. Only the German schema lets a repair chant
/// interrupt the dialogue.
pub fn chant_schema(language: Language) -> FiniteAutomaton {
    let mut fsa = FiniteAutomaton::new("idle");
    fsa.connect("idle", Some("OPEN_CHANT"), "opened");
    fsa.connect("opened", Some("DIALOGUE"), "talking");
    fsa.connect("talking", Some("CLOSE_CHANT"), "closed");
    if language == Language::De {
        fsa.connect("talking", Some("REPAIR_CHANT"), "repairing");
        fsa.connect("repairing", Some("DIALOGUE"), "talking");
    }
    let id = fsa.state_id("closed").unwrap();
    fsa.set_final(id, true);
    fsa
}
