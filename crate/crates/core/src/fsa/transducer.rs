//! Finite-state transducers over symbol pairs.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use super::automaton::StateTable;
use super::{FsaError, StateId, Symbol};

/// Default bound on the number of outputs (and pending configurations) in
/// [`Transducer::transduce`].
pub const DEFAULT_OUTPUT_CAP: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PairLabel {
    /// `None` is epsilon.
    pub input: Option<Symbol>,
    /// `None` is epsilon.
    pub output: Option<Symbol>,
}

impl fmt::Display for PairLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |s: &Option<Symbol>| s.as_ref().map_or("_", Symbol::as_str).to_string();
        write!(f, "{}:{}", side(&self.input), side(&self.output))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TransducerEdge {
    pub src: StateId,
    pub label: PairLabel,
    pub dst: StateId,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transducer {
    pub(crate) states: StateTable,
    pub(crate) input_alphabet: BTreeSet<Symbol>,
    pub(crate) output_alphabet: BTreeSet<Symbol>,
    pub(crate) edges: Vec<TransducerEdge>,
    pub(crate) initial: StateId,
    pub(crate) finals: BTreeSet<StateId>,
}

impl Transducer {
    pub fn new(initial: &str) -> Self {
        let mut states = StateTable::default();
        let initial = states.get_or_add(initial);
        Transducer {
            states,
            input_alphabet: BTreeSet::new(),
            output_alphabet: BTreeSet::new(),
            edges: Vec::new(),
            initial,
            finals: BTreeSet::new(),
        }
    }

    /// One final state looping `a:a` for every symbol.
    pub fn identity<'a>(alphabet: impl IntoIterator<Item = &'a Symbol>) -> Self {
        let mut t = Transducer::new("id");
        t.set_final(0, true);
        for a in alphabet {
            t.add_edge(0, Some(a.clone()), Some(a.clone()), 0);
        }
        t
    }

    pub fn add_state(&mut self, name: &str) -> StateId {
        self.states.get_or_add(name)
    }

    pub fn add_input_symbol(&mut self, s: Symbol) {
        self.input_alphabet.insert(s);
    }

    pub fn add_output_symbol(&mut self, s: Symbol) {
        self.output_alphabet.insert(s);
    }

    /// Adds an edge; labels join the respective alphabets and duplicates are
    /// ignored.
    pub fn add_edge(
        &mut self,
        src: StateId,
        input: Option<Symbol>,
        output: Option<Symbol>,
        dst: StateId,
    ) {
        assert!(src < self.states.len() && dst < self.states.len(), "unknown state");
        if let Some(a) = &input {
            self.input_alphabet.insert(a.clone());
        }
        if let Some(b) = &output {
            self.output_alphabet.insert(b.clone());
        }
        let e = TransducerEdge {
            src,
            label: PairLabel { input, output },
            dst,
        };
        if !self.edges.contains(&e) {
            self.edges.push(e);
        }
    }

    /// Name-based wrapper over [`add_edge`](Self::add_edge).
    pub fn connect(&mut self, src: &str, input: Option<&str>, output: Option<&str>, dst: &str) {
        let s = self.add_state(src);
        let d = self.add_state(dst);
        self.add_edge(s, input.map(super::sym), output.map(super::sym), d);
    }

    pub fn set_final(&mut self, state: StateId, is_final: bool) {
        if is_final {
            self.finals.insert(state);
        } else {
            self.finals.remove(&state);
        }
    }

    pub fn set_initial(&mut self, state: StateId) {
        assert!(state < self.states.len(), "unknown state");
        self.initial = state;
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn state_name(&self, id: StateId) -> &str {
        self.states.name(id)
    }

    pub fn state_id(&self, name: &str) -> Option<StateId> {
        self.states.id(name)
    }

    pub fn state_names(&self) -> &[String] {
        self.states.names()
    }

    pub fn edges(&self) -> &[TransducerEdge] {
        &self.edges
    }

    pub fn input_alphabet(&self) -> &BTreeSet<Symbol> {
        &self.input_alphabet
    }

    pub fn output_alphabet(&self) -> &BTreeSet<Symbol> {
        &self.output_alphabet
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn finals(&self) -> &BTreeSet<StateId> {
        &self.finals
    }

    pub fn is_final(&self, s: StateId) -> bool {
        self.finals.contains(&s)
    }

    pub fn validate(&self) -> Result<(), FsaError> {
        let n = self.states.len();
        if self.initial >= n || self.finals.iter().any(|&f| f >= n) {
            return Err(FsaError::Invalid("state out of range".into()));
        }
        for e in &self.edges {
            if e.src >= n || e.dst >= n {
                return Err(FsaError::Invalid("transition endpoint out of range".into()));
            }
            if let Some(a) = &e.label.input {
                if !self.input_alphabet.contains(a) {
                    return Err(FsaError::Invalid(format!("input {a} outside the input alphabet")));
                }
            }
            if let Some(b) = &e.label.output {
                if !self.output_alphabet.contains(b) {
                    return Err(FsaError::Invalid(format!(
                        "output {b} outside the output alphabet"
                    )));
                }
            }
        }
        Ok(())
    }

    /// All outputs of accepting paths consuming `input`, capped at
    /// [`DEFAULT_OUTPUT_CAP`].
    pub fn transduce(&self, input: &[Symbol]) -> Result<BTreeSet<Vec<Symbol>>, FsaError> {
        self.transduce_capped(input, DEFAULT_OUTPUT_CAP)
    }

    /// Like [`transduce`](Self::transduce) with an explicit cap. Exceeding the
    /// cap, either in results or in configurations alive at one input
    /// position, yields [`FsaError::OutputOverflow`].
    pub fn transduce_capped(
        &self,
        input: &[Symbol],
        cap: usize,
    ) -> Result<BTreeSet<Vec<Symbol>>, FsaError> {
        for (position, a) in input.iter().enumerate() {
            if !self.input_alphabet.contains(a) {
                return Err(FsaError::UnknownSymbol {
                    position,
                    symbol: a.to_string(),
                });
            }
        }
        let mut out: Vec<Vec<&TransducerEdge>> = vec![Vec::new(); self.states.len()];
        for e in &self.edges {
            out[e.src].push(e);
        }
        let overflow = FsaError::OutputOverflow { cap };
        let closure = |configs: BTreeSet<(StateId, Vec<Symbol>)>| {
            let mut seen = configs.clone();
            let mut queue: VecDeque<_> = configs.into_iter().collect();
            while let Some((s, o)) = queue.pop_front() {
                for e in out[s].iter().filter(|e| e.label.input.is_none()) {
                    let mut o2 = o.clone();
                    o2.extend(e.label.output.iter().cloned());
                    let c = (e.dst, o2);
                    if !seen.contains(&c) {
                        if seen.len() >= cap {
                            return Err(overflow.clone());
                        }
                        seen.insert(c.clone());
                        queue.push_back(c);
                    }
                }
            }
            Ok(seen)
        };
        let mut configs = closure(BTreeSet::from([(self.initial, Vec::new())]))?;
        for a in input {
            let mut next = BTreeSet::new();
            for (s, o) in &configs {
                for e in out[*s].iter().filter(|e| e.label.input.as_ref() == Some(a)) {
                    let mut o2 = o.clone();
                    o2.extend(e.label.output.iter().cloned());
                    next.insert((e.dst, o2));
                    if next.len() > cap {
                        return Err(overflow);
                    }
                }
            }
            configs = closure(next)?;
        }
        let results: BTreeSet<Vec<Symbol>> = configs
            .into_iter()
            .filter(|(s, _)| self.finals.contains(s))
            .map(|(_, o)| o)
            .collect();
        if results.len() > cap {
            return Err(overflow);
        }
        Ok(results)
    }

    /// Relational composition: `self` first, then `next`.
    ///
    /// Every output symbol of `self` must be in the input alphabet of `next`.
    pub fn compose(&self, next: &Transducer) -> Result<Transducer, FsaError> {
        let missing: Vec<String> = self
            .output_alphabet
            .difference(&next.input_alphabet)
            .map(|s| s.to_string())
            .collect();
        if !missing.is_empty() {
            return Err(FsaError::AlphabetMismatch(missing));
        }
        let mut out1: Vec<Vec<&TransducerEdge>> = vec![Vec::new(); self.states.len()];
        for e in &self.edges {
            out1[e.src].push(e);
        }
        let mut out2: Vec<Vec<&TransducerEdge>> = vec![Vec::new(); next.states.len()];
        for e in &next.edges {
            out2[e.src].push(e);
        }

        let start = (self.initial, next.initial);
        let mut pairs = vec![start];
        let mut ids: HashMap<(StateId, StateId), StateId> = HashMap::from([(start, 0)]);
        let mut edges: Vec<(StateId, Option<Symbol>, Option<Symbol>, StateId)> = Vec::new();
        let mut queue = VecDeque::from([0]);
        while let Some(cur) = queue.pop_front() {
            let (p, q) = pairs[cur];
            let mut moves: Vec<(Option<Symbol>, Option<Symbol>, (StateId, StateId))> = Vec::new();
            for e1 in &out1[p] {
                match &e1.label.output {
                    None => moves.push((e1.label.input.clone(), None, (e1.dst, q))),
                    Some(b) => {
                        for e2 in out2[q].iter().filter(|e2| e2.label.input.as_ref() == Some(b)) {
                            moves.push((
                                e1.label.input.clone(),
                                e2.label.output.clone(),
                                (e1.dst, e2.dst),
                            ));
                        }
                    }
                }
            }
            for e2 in out2[q].iter().filter(|e2| e2.label.input.is_none()) {
                moves.push((None, e2.label.output.clone(), (p, e2.dst)));
            }
            for (a, c, pair) in moves {
                let id = *ids.entry(pair).or_insert_with(|| {
                    pairs.push(pair);
                    queue.push_back(pairs.len() - 1);
                    pairs.len() - 1
                });
                edges.push((cur, a, c, id));
            }
        }

        let mut names: Vec<String> = pairs
            .iter()
            .map(|&(p, q)| format!("({},{})", self.state_name(p), next.state_name(q)))
            .collect();
        if names.iter().collect::<BTreeSet<_>>().len() != names.len() {
            names = (0..pairs.len()).map(|i| format!("q{i}")).collect();
        }
        let mut result = Transducer::new(&names[0]);
        for name in &names[1..] {
            result.add_state(name);
        }
        result.input_alphabet = self.input_alphabet.clone();
        result.output_alphabet = next.output_alphabet.clone();
        for (s, a, c, d) in edges {
            result.add_edge(s, a, c, d);
        }
        for (id, &(p, q)) in pairs.iter().enumerate() {
            if self.is_final(p) && next.is_final(q) {
                result.finals.insert(id);
            }
        }
        Ok(result)
    }
}
