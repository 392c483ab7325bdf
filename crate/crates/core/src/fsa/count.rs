use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::{FiniteAutomaton, StateId, Symbol};

/// Size of a regular language.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LanguageSize {
    Finite(BigUint),
    Infinite,
}

impl LanguageSize {
    pub fn finite(n: u64) -> Self {
        LanguageSize::Finite(BigUint::from(n))
    }
}

impl fmt::Display for LanguageSize {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LanguageSize::Finite(n) => write!(f, "FINITE {n}"),
            LanguageSize::Infinite => f.write_str("INFINITE"),
        }
    }
}

impl FiniteAutomaton {
    /// All accepted strings of length at most `max_len`, ordered by length and
    /// then lexicographically by symbol.
    ///
    /// Works directly on the (possibly nondeterministic) automaton by
    /// simulating state sets, pruning prefixes that can no longer reach a
    /// final state.
    pub fn enumerate_language(&self, max_len: usize) -> Vec<Vec<Symbol>> {
        let out = self.out_edges();
        let live = self.coaccessible();
        let mut start = BTreeSet::from([self.initial]);
        Self::closure_with(&out, &mut start);
        start.retain(|s| live.contains(s));

        let mut accepted = Vec::new();
        let mut level: Vec<(Vec<Symbol>, BTreeSet<StateId>)> = Vec::new();
        if !start.is_empty() {
            level.push((Vec::new(), start));
        }
        for len in 0..=max_len {
            for (prefix, set) in &level {
                if set.iter().any(|s| self.finals.contains(s)) {
                    accepted.push(prefix.clone());
                }
            }
            if len == max_len {
                break;
            }
            let mut next_level = Vec::new();
            for (prefix, set) in &level {
                // only labels leaving the set can extend the prefix
                let mut by_symbol: BTreeMap<&Symbol, BTreeSet<StateId>> = BTreeMap::new();
                for &s in set {
                    for &(label, d) in &out[s] {
                        if let Some(a) = label {
                            by_symbol.entry(a).or_default().insert(d);
                        }
                    }
                }
                for (symbol, mut next) in by_symbol {
                    Self::closure_with(&out, &mut next);
                    next.retain(|s| live.contains(s));
                    if !next.is_empty() {
                        let mut p = prefix.clone();
                        p.push(symbol.clone());
                        next_level.push((p, next));
                    }
                }
            }
            level = next_level;
        }
        accepted
    }

    /// Exact number of accepted strings, or `Infinite` when a cycle lies on
    /// some accepting path.
    ///
    /// Nondeterministic input is determinized first so that paths and strings
    /// coincide; the count is then a path count over the trimmed DAG.
    pub fn count_language(&self) -> LanguageSize {
        let dfa = if self.is_deterministic() {
            self.clone()
        } else {
            self.determinize()
        };
        let useful = dfa.trim();
        if !useful.coaccessible().contains(&useful.initial) {
            return LanguageSize::Finite(BigUint::zero());
        }
        let out = useful.out_edges();
        // 0 = unvisited, 1 = on stack, 2 = done
        let mut colour = vec![0u8; useful.num_states()];
        let mut memo: HashMap<StateId, BigUint> = HashMap::new();
        match count_paths(&useful, &out, useful.initial, &mut colour, &mut memo) {
            Some(n) => LanguageSize::Finite(n),
            None => LanguageSize::Infinite,
        }
    }
}

fn count_paths(
    fsa: &FiniteAutomaton,
    out: &[Vec<(Option<&Symbol>, StateId)>],
    state: StateId,
    colour: &mut [u8],
    memo: &mut HashMap<StateId, BigUint>,
) -> Option<BigUint> {
    if let Some(n) = memo.get(&state) {
        return Some(n.clone());
    }
    colour[state] = 1;
    let mut total = if fsa.is_final(state) {
        BigUint::one()
    } else {
        BigUint::zero()
    };
    for &(_, d) in &out[state] {
        if colour[d] == 1 {
            return None;
        }
        total += count_paths(fsa, out, d, colour, memo)?;
    }
    colour[state] = 2;
    memo.insert(state, total.clone());
    Some(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fsa::{join, END};

    fn table1() -> FiniteAutomaton {
        let mut a = FiniteAutomaton::new("A");
        a.connect("A", Some("very"), "A");
        a.connect("A", Some("big"), END);
        a.connect("A", Some("small"), END);
        let end = a.state_id(END).unwrap();
        a.set_final(end, true);
        a
    }

    #[test]
    fn enumeration_order_is_length_then_lexicographic() {
        let words: Vec<String> = table1()
            .enumerate_language(3)
            .iter()
            .map(|w| join(w))
            .collect();
        assert_eq!(
            words,
            [
                "big",
                "small",
                "very big",
                "very small",
                "very very big",
                "very very small"
            ]
        );
    }

    #[test]
    fn counts() {
        assert_eq!(table1().count_language(), LanguageSize::Infinite);
        let empty = FiniteAutomaton::new("s");
        assert_eq!(empty.count_language(), LanguageSize::finite(0));
        assert!(empty.enumerate_language(4).is_empty());
        let mut eps = FiniteAutomaton::new("s");
        eps.set_final(0, true);
        assert_eq!(eps.count_language(), LanguageSize::finite(1));
        assert_eq!(eps.enumerate_language(2), vec![Vec::<Symbol>::new()]);
    }

    #[test]
    fn cycle_off_accepting_paths_is_ignored() {
        let mut a = FiniteAutomaton::new("s");
        a.connect("s", Some("x"), "f");
        a.connect("s", Some("y"), "loop");
        a.connect("loop", Some("y"), "loop");
        let f = a.state_id("f").unwrap();
        a.set_final(f, true);
        assert_eq!(a.count_language(), LanguageSize::finite(1));
    }

    #[test]
    fn nondeterministic_paths_are_not_double_counted() {
        let mut a = FiniteAutomaton::new("s");
        a.connect("s", Some("x"), "f");
        a.connect("s", Some("x"), "g");
        for n in ["f", "g"] {
            let id = a.state_id(n).unwrap();
            a.set_final(id, true);
        }
        assert_eq!(a.count_language(), LanguageSize::finite(1));
    }
}
