use std::collections::{BTreeSet, HashMap};

use super::{FsaError, Symbol};

/// Index of a state inside one automaton.
pub type StateId = usize;

/// Reserved name of the synthetic final state produced from terminal rules.
pub const END: &str = "END";

/// Named state storage shared by acceptors, transducers and register automata.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub(crate) struct StateTable {
    names: Vec<String>,
    index: HashMap<String, StateId>,
}

impl StateTable {
    pub(crate) fn get_or_add(&mut self, name: &str) -> StateId {
        if let Some(&id) = self.index.get(name) {
            return id;
        }
        let id = self.names.len();
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), id);
        id
    }

    pub(crate) fn id(&self, name: &str) -> Option<StateId> {
        self.index.get(name).copied()
    }

    pub(crate) fn name(&self, id: StateId) -> &str {
        &self.names[id]
    }

    pub(crate) fn len(&self) -> usize {
        self.names.len()
    }

    pub(crate) fn names(&self) -> &[String] {
        &self.names
    }

    /// Returns a name not yet in the table, derived from `base`.
    pub(crate) fn fresh(&self, base: &str) -> String {
        if !self.index.contains_key(base) {
            return base.to_string();
        }
        (0..)
            .map(|i| format!("{base}_{i}"))
            .find(|n| !self.index.contains_key(n))
            .unwrap()
    }
}

pub(crate) fn check_state_name(name: &str) -> Result<(), FsaError> {
    if name.is_empty() || name.chars().any(char::is_whitespace) {
        return Err(FsaError::InvalidStateName(name.to_string()));
    }
    Ok(())
}

/// One labelled edge; `label == None` is an epsilon move.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Transition {
    pub src: StateId,
    pub label: Option<Symbol>,
    pub dst: StateId,
}

/// A finite-state acceptor with named states and optional epsilon moves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteAutomaton {
    pub(crate) states: StateTable,
    pub(crate) alphabet: BTreeSet<Symbol>,
    pub(crate) transitions: Vec<Transition>,
    pub(crate) initial: StateId,
    pub(crate) finals: BTreeSet<StateId>,
}

/// Outcome of [`FiniteAutomaton::run`], with the work counters used to check
/// linear time and bounded memory.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunResult {
    pub accepted: bool,
    /// Number of input symbols consumed.
    pub steps: usize,
    /// Largest active state set observed during the run.
    pub max_frontier: usize,
}

impl FiniteAutomaton {
    /// Creates an automaton holding only its initial state.
    pub fn new(initial: &str) -> Self {
        let mut states = StateTable::default();
        let initial = states.get_or_add(initial);
        FiniteAutomaton {
            states,
            alphabet: BTreeSet::new(),
            transitions: Vec::new(),
            initial,
            finals: BTreeSet::new(),
        }
    }

    /// Returns the id of the named state, creating it if needed.
    pub fn add_state(&mut self, name: &str) -> StateId {
        self.states.get_or_add(name)
    }

    pub fn add_symbol(&mut self, symbol: Symbol) {
        self.alphabet.insert(symbol);
    }

    /// Adds an edge. Labels join the alphabet; exact duplicates are ignored.
    pub fn add_transition(&mut self, src: StateId, label: Option<Symbol>, dst: StateId) {
        assert!(src < self.states.len() && dst < self.states.len(), "unknown state");
        if let Some(l) = &label {
            self.alphabet.insert(l.clone());
        }
        let t = Transition { src, label, dst };
        if !self.transitions.contains(&t) {
            self.transitions.push(t);
        }
    }

    /// Convenience wrapper over [`add_state`](Self::add_state) and
    /// [`add_transition`](Self::add_transition) using names.
    pub fn connect(&mut self, src: &str, label: Option<&str>, dst: &str) {
        let s = self.add_state(src);
        let d = self.add_state(dst);
        let label = label.map(super::sym);
        self.add_transition(s, label, d);
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

    pub fn alphabet(&self) -> &BTreeSet<Symbol> {
        &self.alphabet
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn finals(&self) -> &BTreeSet<StateId> {
        &self.finals
    }

    pub fn is_final(&self, state: StateId) -> bool {
        self.finals.contains(&state)
    }

    pub fn has_epsilon(&self) -> bool {
        self.transitions.iter().any(|t| t.label.is_none())
    }

    /// True iff there are no epsilon moves and no two edges share `(src, label)`.
    pub fn is_deterministic(&self) -> bool {
        let mut seen = BTreeSet::new();
        for t in &self.transitions {
            let Some(label) = &t.label else { return false };
            if !seen.insert((t.src, label)) {
                return false;
            }
        }
        true
    }

    pub fn validate(&self) -> Result<(), FsaError> {
        let n = self.states.len();
        if self.initial >= n {
            return Err(FsaError::Invalid("initial state out of range".into()));
        }
        if let Some(f) = self.finals.iter().find(|&&f| f >= n) {
            return Err(FsaError::Invalid(format!("final state {f} out of range")));
        }
        for name in self.states.names() {
            check_state_name(name)?;
        }
        for t in &self.transitions {
            if t.src >= n || t.dst >= n {
                return Err(FsaError::Invalid("transition endpoint out of range".into()));
            }
            if let Some(l) = &t.label {
                if !self.alphabet.contains(l) {
                    return Err(FsaError::Invalid(format!("label {l} outside the alphabet")));
                }
            }
        }
        Ok(())
    }

    /// Outgoing edge lists per state.
    pub(crate) fn out_edges(&self) -> Vec<Vec<(Option<&Symbol>, StateId)>> {
        let mut out = vec![Vec::new(); self.states.len()];
        for t in &self.transitions {
            out[t.src].push((t.label.as_ref(), t.dst));
        }
        out
    }

    pub(crate) fn closure_with(
        out: &[Vec<(Option<&Symbol>, StateId)>],
        set: &mut BTreeSet<StateId>,
    ) {
        let mut stack: Vec<StateId> = set.iter().copied().collect();
        while let Some(s) = stack.pop() {
            for &(label, d) in &out[s] {
                if label.is_none() && set.insert(d) {
                    stack.push(d);
                }
            }
        }
    }

    pub(crate) fn step_with(
        out: &[Vec<(Option<&Symbol>, StateId)>],
        set: &BTreeSet<StateId>,
        symbol: &Symbol,
    ) -> BTreeSet<StateId> {
        let mut next = BTreeSet::new();
        for &s in set {
            for &(label, d) in &out[s] {
                if label == Some(symbol) {
                    next.insert(d);
                }
            }
        }
        Self::closure_with(out, &mut next);
        next
    }

    /// Epsilon closure of a state set.
    pub fn epsilon_closure(&self, states: &BTreeSet<StateId>) -> BTreeSet<StateId> {
        let out = self.out_edges();
        let mut set = states.clone();
        Self::closure_with(&out, &mut set);
        set
    }

    /// Runs the automaton over `input`, simulating the subset frontier.
    ///
    /// A symbol outside the alphabet aborts with its position.
    pub fn run(&self, input: &[Symbol]) -> Result<RunResult, FsaError> {
        let out = self.out_edges();
        let mut frontier = BTreeSet::from([self.initial]);
        Self::closure_with(&out, &mut frontier);
        let mut max_frontier = frontier.len();
        let mut steps = 0;
        for (position, symbol) in input.iter().enumerate() {
            if !self.alphabet.contains(symbol) {
                return Err(FsaError::UnknownSymbol {
                    position,
                    symbol: symbol.to_string(),
                });
            }
            frontier = Self::step_with(&out, &frontier, symbol);
            steps += 1;
            max_frontier = max_frontier.max(frontier.len());
        }
        Ok(RunResult {
            accepted: frontier.iter().any(|s| self.finals.contains(s)),
            steps,
            max_frontier,
        })
    }

    /// Membership test; unknown symbols simply reject.
    pub fn accepts(&self, input: &[Symbol]) -> bool {
        self.run(input).map(|r| r.accepted).unwrap_or(false)
    }

    /// States reachable from the initial state.
    pub fn accessible(&self) -> BTreeSet<StateId> {
        let out = self.out_edges();
        let mut seen = BTreeSet::from([self.initial]);
        let mut stack = vec![self.initial];
        while let Some(s) = stack.pop() {
            for &(_, d) in &out[s] {
                if seen.insert(d) {
                    stack.push(d);
                }
            }
        }
        seen
    }

    /// States from which some final state is reachable.
    pub fn coaccessible(&self) -> BTreeSet<StateId> {
        let mut incoming = vec![Vec::new(); self.states.len()];
        for t in &self.transitions {
            incoming[t.dst].push(t.src);
        }
        let mut seen: BTreeSet<StateId> = self.finals.clone();
        let mut stack: Vec<StateId> = seen.iter().copied().collect();
        while let Some(s) = stack.pop() {
            for &p in &incoming[s] {
                if seen.insert(p) {
                    stack.push(p);
                }
            }
        }
        seen
    }

    /// Keeps only the listed states (the initial state is always kept),
    /// renumbering in original order.
    pub(crate) fn restrict(&self, keep: &BTreeSet<StateId>) -> FiniteAutomaton {
        let mut result = FiniteAutomaton::new(self.states.name(self.initial));
        let mut map = HashMap::new();
        map.insert(self.initial, result.initial);
        for s in 0..self.states.len() {
            if keep.contains(&s) && s != self.initial {
                map.insert(s, result.add_state(self.states.name(s)));
            }
        }
        result.alphabet = self.alphabet.clone();
        for t in &self.transitions {
            if let (Some(&s), Some(&d)) = (map.get(&t.src), map.get(&t.dst)) {
                result.add_transition(s, t.label.clone(), d);
            }
        }
        for f in &self.finals {
            if let Some(&m) = map.get(f) {
                result.finals.insert(m);
            }
        }
        result
    }

    /// Removes states that are unreachable or cannot reach a final state.
    pub fn trim(&self) -> FiniteAutomaton {
        let acc = self.accessible();
        let coacc = self.coaccessible();
        let keep: BTreeSet<StateId> = acc.intersection(&coacc).copied().collect();
        self.restrict(&keep)
    }
}
