//! Epsilon removal, reversal, subset construction and minimization.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use super::{FiniteAutomaton, FsaError, StateId, Symbol};

impl FiniteAutomaton {
    /// Equivalent automaton without epsilon moves, over the same states.
    pub fn remove_epsilons(&self) -> FiniteAutomaton {
        if !self.has_epsilon() {
            return self.clone();
        }
        let out = self.out_edges();
        let mut result = FiniteAutomaton::new(self.state_name(self.initial));
        for name in self.state_names() {
            result.add_state(name);
        }
        result.set_initial(self.initial);
        result.alphabet = self.alphabet.clone();
        for q in 0..self.num_states() {
            let mut closure = BTreeSet::from([q]);
            Self::closure_with(&out, &mut closure);
            if closure.iter().any(|s| self.finals.contains(s)) {
                result.finals.insert(q);
            }
            for &p in &closure {
                for &(label, r) in &out[p] {
                    if let Some(l) = label {
                        result.add_transition(q, Some(l.clone()), r);
                    }
                }
            }
        }
        result
    }

    /// Automaton for the reversed language.
    ///
    /// With a single final state that state becomes the new initial state;
    /// otherwise a fresh initial state fans out to the old finals by epsilon.
    pub fn reverse(&self) -> FiniteAutomaton {
        let single = (self.finals.len() == 1).then(|| *self.finals.iter().next().unwrap());
        let mut result = FiniteAutomaton::new(self.state_name(self.initial));
        for name in self.state_names() {
            result.add_state(name);
        }
        result.alphabet = self.alphabet.clone();
        for t in &self.transitions {
            result.add_transition(t.dst, t.label.clone(), t.src);
        }
        result.finals = BTreeSet::from([self.initial]);
        match single {
            Some(f) => result.set_initial(f),
            None => {
                let fresh = self.states.fresh("REV");
                let start = result.add_state(&fresh);
                for &f in &self.finals {
                    result.add_transition(start, None, f);
                }
                result.set_initial(start);
            }
        }
        result
    }

    /// Subset construction. The result is deterministic (possibly partial)
    /// and accepts the same language.
    pub fn determinize(&self) -> FiniteAutomaton {
        self.determinize_with_subsets().0
    }

    /// Like [`determinize`](Self::determinize), also returning the source
    /// state set behind each result state.
    pub fn determinize_with_subsets(&self) -> (FiniteAutomaton, Vec<BTreeSet<StateId>>) {
        let out = self.out_edges();
        let mut start = BTreeSet::from([self.initial]);
        Self::closure_with(&out, &mut start);

        let mut subsets: Vec<BTreeSet<StateId>> = vec![start.clone()];
        let mut ids: HashMap<BTreeSet<StateId>, StateId> = HashMap::from([(start, 0)]);
        let mut edges: Vec<(StateId, Symbol, StateId)> = Vec::new();
        let mut queue = VecDeque::from([0]);
        while let Some(cur) = queue.pop_front() {
            for symbol in &self.alphabet {
                let next = Self::step_with(&out, &subsets[cur], symbol);
                if next.is_empty() {
                    continue;
                }
                let id = match ids.get(&next) {
                    Some(&id) => id,
                    None => {
                        let id = subsets.len();
                        subsets.push(next.clone());
                        ids.insert(next, id);
                        queue.push_back(id);
                        id
                    }
                };
                edges.push((cur, symbol.clone(), id));
            }
        }

        let names = self.subset_names(&subsets);
        let mut result = FiniteAutomaton::new(&names[0]);
        for name in &names[1..] {
            result.add_state(name);
        }
        result.alphabet = self.alphabet.clone();
        for (s, l, d) in edges {
            result.add_transition(s, Some(l), d);
        }
        for (id, subset) in subsets.iter().enumerate() {
            if subset.iter().any(|s| self.finals.contains(s)) {
                result.finals.insert(id);
            }
        }
        (result, subsets)
    }

    fn subset_names(&self, subsets: &[BTreeSet<StateId>]) -> Vec<String> {
        let names: Vec<String> = subsets
            .iter()
            .map(|set| {
                let parts: Vec<&str> = set.iter().map(|&s| self.state_name(s)).collect();
                if parts.len() == 1 {
                    parts[0].to_string()
                } else {
                    format!("{{{}}}", parts.join(","))
                }
            })
            .collect();
        let distinct: BTreeSet<&String> = names.iter().collect();
        if distinct.len() == names.len() {
            names
        } else {
            (0..subsets.len()).map(|i| format!("q{i}")).collect()
        }
    }

    /// Minimal trimmed DFA for the language of a deterministic automaton.
    ///
    /// Dead and unreachable states are dropped, so a missing edge means
    /// rejection. States are numbered in breadth-first order from the initial
    /// state, each block named after its lowest-numbered member.
    pub fn minimize(&self) -> Result<FiniteAutomaton, FsaError> {
        if !self.is_deterministic() {
            return Err(FsaError::NotDeterministic);
        }
        let reachable = self.accessible();
        let dfa = self.restrict(&reachable);
        let n = dfa.num_states();
        let sink = n;
        let symbols: Vec<&Symbol> = dfa.alphabet.iter().collect();
        let sym_index: HashMap<&Symbol, usize> =
            symbols.iter().enumerate().map(|(i, s)| (*s, i)).collect();

        // delta[s][a], with the implicit sink completing the function.
        let mut delta = vec![vec![sink; symbols.len()]; n + 1];
        for t in &dfa.transitions {
            let l = t.label.as_ref().expect("deterministic");
            delta[t.src][sym_index[l]] = t.dst;
        }

        let mut block: Vec<usize> = (0..=n)
            .map(|s| usize::from(s < n && dfa.finals.contains(&s)))
            .collect();
        let mut count = block.iter().collect::<BTreeSet<_>>().len();
        loop {
            let mut signatures: BTreeMap<(usize, Vec<usize>), usize> = BTreeMap::new();
            let mut next = vec![0; n + 1];
            for s in 0..=n {
                let sig = (block[s], delta[s].iter().map(|&d| block[d]).collect());
                let fresh = signatures.len();
                next[s] = *signatures.entry(sig).or_insert(fresh);
            }
            let new_count = signatures.len();
            block = next;
            if new_count == count {
                break;
            }
            count = new_count;
        }

        let dead = block[sink];
        if block[dfa.initial] == dead {
            return Ok(FiniteAutomaton::new(dfa.state_name(dfa.initial)));
        }
        // Breadth-first numbering of live blocks from the initial block.
        let mut order: HashMap<usize, StateId> = HashMap::new();
        let mut representative: Vec<usize> = Vec::new();
        let mut queue = VecDeque::from([dfa.initial]);
        order.insert(block[dfa.initial], 0);
        representative.push(dfa.initial);
        while let Some(s) = queue.pop_front() {
            for &d in &delta[s] {
                let b = block[d];
                if b != dead && !order.contains_key(&b) {
                    order.insert(b, representative.len());
                    representative.push(d);
                    queue.push_back(d);
                }
            }
        }
        let mut members: Vec<Vec<usize>> = vec![Vec::new(); representative.len()];
        for s in 0..n {
            if let Some(&id) = order.get(&block[s]) {
                members[id].push(s);
            }
        }
        let names: Vec<&str> = members.iter().map(|m| dfa.state_name(m[0])).collect();
        let mut result = FiniteAutomaton::new(names[0]);
        for name in &names[1..] {
            result.add_state(name);
        }
        result.alphabet = dfa.alphabet.clone();
        for (id, &rep) in representative.iter().enumerate() {
            for (a, &d) in delta[rep].iter().enumerate() {
                if block[d] != dead {
                    result.add_transition(id, Some(symbols[a].clone()), order[&block[d]]);
                }
            }
            if dfa.finals.contains(&rep) {
                result.finals.insert(id);
            }
        }
        Ok(result)
    }
}
