//! Word-internal fragments: free concatenation over a vocabulary and
//! two-slot syllable blends.

use std::collections::BTreeSet;

use num_bigint::BigUint;

use super::FragmentError;
use crate::fsa::{sym, FiniteAutomaton, Symbol};

pub const PREFIXES: [&str; 6] = ["over", "post", "pre", "pro", "trans", "un"];

/// Added to [`PREFIXES`] so that stacked forms opening with `anti` parse.
pub const EXTRA_PREFIX: &str = "anti";

pub const COMPOUND_PARTS: [&str; 8] = ["cam", "cycle", "cylinder", "head", "motor", "over", "shaft", "twin"];

pub fn prefix_vocabulary() -> BTreeSet<Symbol> {
    PREFIXES.iter().chain([&EXTRA_PREFIX]).map(|p| sym(p)).collect()
}

pub fn compound_vocabulary() -> BTreeSet<Symbol> {
    COMPOUND_PARTS.iter().map(|p| sym(p)).collect()
}

/// One state, final, looping on every vocabulary item.
pub fn kleene_vocab(vocab: &BTreeSet<Symbol>) -> Result<FiniteAutomaton, FragmentError> {
    if vocab.is_empty() {
        return Err(FragmentError::EmptyVocabulary);
    }
    let mut fsa = FiniteAutomaton::new("V");
    for v in vocab {
        fsa.add_transition(0, Some(v.clone()), 0);
    }
    fsa.set_final(0, true);
    Ok(fsa)
}

/// All ways of cutting `word` into vocabulary items, in lexicographic order
/// of the item sequences.
pub fn segment(word: &str, vocab: &BTreeSet<Symbol>) -> Vec<Vec<Symbol>> {
    // ways[i] holds the segmentations of word[i..]
    let n = word.len();
    let mut ways: Vec<Vec<Vec<Symbol>>> = vec![Vec::new(); n + 1];
    ways[n].push(Vec::new());
    for i in (0..n).rev() {
        if !word.is_char_boundary(i) {
            continue;
        }
        let mut here = Vec::new();
        for v in vocab {
            if word[i..].starts_with(v.as_str()) {
                for rest in &ways[i + v.as_str().len()] {
                    let mut s = vec![v.clone()];
                    s.extend(rest.iter().cloned());
                    here.push(s);
                }
            }
        }
        ways[i] = here;
    }
    let mut all = std::mem::take(&mut ways[0]);
    all.sort();
    all
}

/// Onset choices times nucleus choices.
pub fn blend_count(onsets: u64, nuclei: u64) -> BigUint {
    BigUint::from(onsets) * BigUint::from(nuclei)
}

/// Acyclic two-slot automaton with `onsets` arcs `o1..` then `nuclei` arcs
/// `n1..`.
pub fn blend_automaton(onsets: usize, nuclei: usize) -> FiniteAutomaton {
    let mut fsa = FiniteAutomaton::new("empty");
    let onset = fsa.add_state("onset");
    let syllable = fsa.add_state("syllable");
    for i in 1..=onsets {
        fsa.add_transition(0, Some(sym(&format!("o{i}"))), onset);
    }
    for j in 1..=nuclei {
        fsa.add_transition(onset, Some(sym(&format!("n{j}"))), syllable);
    }
    fsa.set_final(syllable, true);
    fsa
}
