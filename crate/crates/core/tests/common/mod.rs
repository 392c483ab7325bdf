#![allow(dead_code)]

use std::collections::BTreeSet;

use mlg_core::fsa::{sym, FiniteAutomaton, Symbol, Transducer};
use proptest::prelude::*;

pub const LETTERS: [&str; 3] = ["a", "b", "c"];

pub fn language(fsa: &FiniteAutomaton, max_len: usize) -> BTreeSet<Vec<Symbol>> {
    fsa.enumerate_language(max_len).into_iter().collect()
}

/// Up to `max_states` states over `a b c`, with occasional epsilon edges.
pub fn nfa(max_states: usize) -> impl Strategy<Value = FiniteAutomaton> {
    (1..=max_states)
        .prop_flat_map(|n| {
            (
                Just(n),
                prop::collection::vec((0..n, prop::option::weighted(0.85, 0..3usize), 0..n), 0..3 * n + 2),
                prop::collection::vec(any::<bool>(), n),
            )
        })
        .prop_map(|(n, edges, finals)| {
            let mut fsa = FiniteAutomaton::new("q0");
            for i in 1..n {
                fsa.add_state(&format!("q{i}"));
            }
            for (s, label, d) in edges {
                fsa.add_transition(s, label.map(|l| sym(LETTERS[l])), d);
            }
            for (i, f) in finals.into_iter().enumerate() {
                fsa.set_final(i, f);
            }
            fsa
        })
}

/// Transducer over `a b` in and out, every symbol declared on both sides.
pub fn transducer(max_states: usize) -> impl Strategy<Value = Transducer> {
    let label = prop::option::weighted(0.8, 0..2usize);
    (1..=max_states)
        .prop_flat_map(move |n| {
            (
                Just(n),
                prop::collection::vec((0..n, label.clone(), label.clone(), 0..n), 1..2 * n + 2),
                prop::collection::vec(any::<bool>(), n),
            )
        })
        .prop_map(|(n, edges, finals)| {
            let mut t = Transducer::new("t0");
            for i in 1..n {
                t.add_state(&format!("t{i}"));
            }
            for l in ["a", "b"] {
                t.add_input_symbol(sym(l));
                t.add_output_symbol(sym(l));
            }
            for (s, i, o, d) in edges {
                t.add_edge(s, i.map(|x| sym(LETTERS[x])), o.map(|x| sym(LETTERS[x])), d);
            }
            for (i, f) in finals.into_iter().enumerate() {
                t.set_final(i, f);
            }
            t
        })
}

pub fn word(max_len: usize) -> impl Strategy<Value = Vec<Symbol>> {
    prop::collection::vec(0..3usize, 0..=max_len).prop_map(|v| v.into_iter().map(|i| sym(LETTERS[i])).collect())
}
