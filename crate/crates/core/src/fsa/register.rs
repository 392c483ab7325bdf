//! Automata with finitely many finite-valued storage registers.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use super::automaton::{check_state_name, StateTable};
use super::{FiniteAutomaton, FsaError, StateId, Symbol};

/// Register contents; a register absent from the map is unset.
pub type Valuation = BTreeMap<Symbol, Symbol>;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Guard {
    Equals { register: Symbol, value: Symbol },
    /// Both registers set and holding the same value.
    EqualsRegister { register: Symbol, other: Symbol },
    IsSet(Symbol),
    IsUnset(Symbol),
}

impl Guard {
    pub fn holds(&self, v: &Valuation) -> bool {
        match self {
            Guard::Equals { register, value } => v.get(register) == Some(value),
            Guard::EqualsRegister { register, other } => {
                matches!((v.get(register), v.get(other)), (Some(a), Some(b)) if a == b)
            }
            Guard::IsSet(r) => v.contains_key(r),
            Guard::IsUnset(r) => !v.contains_key(r),
        }
    }

    fn registers(&self) -> Vec<&Symbol> {
        match self {
            Guard::Equals { register, .. } | Guard::IsSet(register) | Guard::IsUnset(register) => {
                vec![register]
            }
            Guard::EqualsRegister { register, other } => vec![register, other],
        }
    }
}

impl fmt::Display for Guard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Guard::Equals { register, value } => write!(f, "?{register}={value}"),
            Guard::EqualsRegister { register, other } => write!(f, "?{register}=={other}"),
            Guard::IsSet(r) => write!(f, "?{r}:set"),
            Guard::IsUnset(r) => write!(f, "?{r}:unset"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Action {
    Set { register: Symbol, value: Symbol },
    Clear(Symbol),
}

impl Action {
    pub fn apply(&self, v: &mut Valuation) {
        match self {
            Action::Set { register, value } => {
                v.insert(register.clone(), value.clone());
            }
            Action::Clear(r) => {
                v.remove(r);
            }
        }
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Action::Set { register, value } => write!(f, "!{register}={value}"),
            Action::Clear(r) => write!(f, "!{r}:clear"),
        }
    }
}

/// An edge whose guards must all hold before it fires; its actions then run
/// in order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RegisterTransition {
    pub src: StateId,
    pub label: Option<Symbol>,
    pub guards: Vec<Guard>,
    pub actions: Vec<Action>,
    pub dst: StateId,
}

impl RegisterTransition {
    fn fire(&self, v: &Valuation) -> Option<Valuation> {
        if !self.guards.iter().all(|g| g.holds(v)) {
            return None;
        }
        let mut next = v.clone();
        for a in &self.actions {
            a.apply(&mut next);
        }
        Some(next)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegisterAutomaton {
    pub(crate) states: StateTable,
    pub(crate) alphabet: BTreeSet<Symbol>,
    pub(crate) registers: BTreeMap<Symbol, BTreeSet<Symbol>>,
    pub(crate) transitions: Vec<RegisterTransition>,
    pub(crate) initial: StateId,
    pub(crate) finals: BTreeSet<StateId>,
}

type Config = (StateId, Valuation);

impl RegisterAutomaton {
    pub fn new(initial: &str) -> Self {
        let mut states = StateTable::default();
        let initial = states.get_or_add(initial);
        RegisterAutomaton {
            states,
            alphabet: BTreeSet::new(),
            registers: BTreeMap::new(),
            transitions: Vec::new(),
            initial,
            finals: BTreeSet::new(),
        }
    }

    /// Register automaton with no registers, behaving exactly like `fsa`.
    pub fn from_automaton(fsa: &FiniteAutomaton) -> Self {
        RegisterAutomaton {
            states: fsa.states.clone(),
            alphabet: fsa.alphabet().clone(),
            registers: BTreeMap::new(),
            transitions: fsa
                .transitions()
                .iter()
                .map(|t| RegisterTransition {
                    src: t.src,
                    label: t.label.clone(),
                    guards: Vec::new(),
                    actions: Vec::new(),
                    dst: t.dst,
                })
                .collect(),
            initial: fsa.initial(),
            finals: fsa.finals().clone(),
        }
    }

    pub fn add_register(&mut self, name: Symbol, domain: impl IntoIterator<Item = Symbol>) {
        self.registers.entry(name).or_default().extend(domain);
    }

    pub fn add_state(&mut self, name: &str) -> StateId {
        self.states.get_or_add(name)
    }

    pub fn add_symbol(&mut self, s: Symbol) {
        self.alphabet.insert(s);
    }

    pub fn add_transition(&mut self, t: RegisterTransition) {
        assert!(
            t.src < self.states.len() && t.dst < self.states.len(),
            "unknown state"
        );
        if let Some(l) = &t.label {
            self.alphabet.insert(l.clone());
        }
        if !self.transitions.contains(&t) {
            self.transitions.push(t);
        }
    }

    /// Name-based edge constructor.
    pub fn connect(
        &mut self,
        src: &str,
        label: Option<&str>,
        guards: Vec<Guard>,
        actions: Vec<Action>,
        dst: &str,
    ) {
        let src = self.add_state(src);
        let dst = self.add_state(dst);
        self.add_transition(RegisterTransition {
            src,
            label: label.map(super::sym),
            guards,
            actions,
            dst,
        });
    }

    pub fn set_final(&mut self, state: StateId, is_final: bool) {
        if is_final {
            self.finals.insert(state);
        } else {
            self.finals.remove(&state);
        }
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

    pub fn registers(&self) -> &BTreeMap<Symbol, BTreeSet<Symbol>> {
        &self.registers
    }

    pub fn transitions(&self) -> &[RegisterTransition] {
        &self.transitions
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn finals(&self) -> &BTreeSet<StateId> {
        &self.finals
    }

    pub fn validate(&self) -> Result<(), FsaError> {
        let n = self.states.len();
        for name in self.states.names() {
            check_state_name(name)?;
        }
        if self.initial >= n || self.finals.iter().any(|&f| f >= n) {
            return Err(FsaError::Invalid("state out of range".into()));
        }
        let declared = |r: &Symbol| {
            self.registers
                .get(r)
                .ok_or_else(|| FsaError::Invalid(format!("undeclared register {r}")))
        };
        let in_domain = |r: &Symbol, v: &Symbol| -> Result<(), FsaError> {
            if declared(r)?.contains(v) {
                Ok(())
            } else {
                Err(FsaError::Invalid(format!("value {v} outside the domain of register {r}")))
            }
        };
        for t in &self.transitions {
            if t.src >= n || t.dst >= n {
                return Err(FsaError::Invalid("transition endpoint out of range".into()));
            }
            if let Some(l) = &t.label {
                if !self.alphabet.contains(l) {
                    return Err(FsaError::Invalid(format!("label {l} outside the alphabet")));
                }
            }
            for g in &t.guards {
                for r in g.registers() {
                    declared(r)?;
                }
                if let Guard::Equals { register, value } = g {
                    in_domain(register, value)?;
                }
            }
            for a in &t.actions {
                match a {
                    Action::Set { register, value } => in_domain(register, value)?,
                    Action::Clear(r) => {
                        declared(r)?;
                    }
                }
            }
        }
        Ok(())
    }

    fn out_edges(&self) -> Vec<Vec<&RegisterTransition>> {
        let mut out = vec![Vec::new(); self.states.len()];
        for t in &self.transitions {
            out[t.src].push(t);
        }
        out
    }

    fn closure(out: &[Vec<&RegisterTransition>], configs: &mut BTreeSet<Config>) {
        let mut stack: Vec<Config> = configs.iter().cloned().collect();
        while let Some((s, v)) = stack.pop() {
            for t in out[s].iter().filter(|t| t.label.is_none()) {
                if let Some(v2) = t.fire(&v) {
                    if configs.insert((t.dst, v2.clone())) {
                        stack.push((t.dst, v2));
                    }
                }
            }
        }
    }

    fn step(out: &[Vec<&RegisterTransition>], configs: &BTreeSet<Config>, a: &Symbol) -> BTreeSet<Config> {
        let mut next = BTreeSet::new();
        for (s, v) in configs {
            for t in out[*s].iter().filter(|t| t.label.as_ref() == Some(a)) {
                if let Some(v2) = t.fire(v) {
                    next.insert((t.dst, v2));
                }
            }
        }
        Self::closure(out, &mut next);
        next
    }

    fn start_configs(&self, out: &[Vec<&RegisterTransition>]) -> BTreeSet<Config> {
        let mut start = BTreeSet::from([(self.initial, Valuation::new())]);
        Self::closure(out, &mut start);
        start
    }

    /// Direct simulation over (state, valuation) configurations.
    pub fn accepts(&self, input: &[Symbol]) -> bool {
        let out = self.out_edges();
        let mut configs = self.start_configs(&out);
        for a in input {
            configs = Self::step(&out, &configs, a);
            if configs.is_empty() {
                return false;
            }
        }
        configs.iter().any(|(s, _)| self.finals.contains(s))
    }

    /// Accepted strings up to `max_len`, by length then lexicographically,
    /// computed by configuration simulation without expanding registers.
    pub fn enumerate_language(&self, max_len: usize) -> Vec<Vec<Symbol>> {
        let out = self.out_edges();
        let mut level = vec![(Vec::new(), self.start_configs(&out))];
        let mut accepted = Vec::new();
        for len in 0..=max_len {
            for (prefix, configs) in &level {
                if configs.iter().any(|(s, _)| self.finals.contains(s)) {
                    accepted.push(prefix.clone());
                }
            }
            if len == max_len {
                break;
            }
            let mut next_level = Vec::new();
            for (prefix, configs) in &level {
                for a in &self.alphabet {
                    let next = Self::step(&out, configs, a);
                    if !next.is_empty() {
                        let mut p = prefix.clone();
                        p.push(a.clone());
                        next_level.push((p, next));
                    }
                }
            }
            level = next_level;
        }
        accepted
    }

    /// Compiles the registers into the state space. Only reachable
    /// (state, valuation) pairs become states.
    pub fn expand(&self) -> FiniteAutomaton {
        let out = self.out_edges();
        let start: Config = (self.initial, Valuation::new());
        let mut configs = vec![start.clone()];
        let mut ids: HashMap<Config, StateId> = HashMap::from([(start, 0)]);
        let mut edges = Vec::new();
        let mut queue = VecDeque::from([0]);
        while let Some(cur) = queue.pop_front() {
            let (s, v) = configs[cur].clone();
            for t in &out[s] {
                if let Some(v2) = t.fire(&v) {
                    let c = (t.dst, v2);
                    let id = match ids.get(&c) {
                        Some(&id) => id,
                        None => {
                            let id = configs.len();
                            ids.insert(c.clone(), id);
                            configs.push(c);
                            queue.push_back(id);
                            id
                        }
                    };
                    edges.push((cur, t.label.clone(), id));
                }
            }
        }
        let mut names: Vec<String> = configs
            .iter()
            .map(|(s, v)| {
                if self.registers.is_empty() {
                    return self.state_name(*s).to_string();
                }
                let cells: Vec<String> = v.iter().map(|(r, x)| format!("{r}={x}")).collect();
                format!("{}[{}]", self.state_name(*s), cells.join(","))
            })
            .collect();
        if names.iter().collect::<BTreeSet<_>>().len() != names.len() {
            names = (0..configs.len()).map(|i| format!("q{i}")).collect();
        }
        let mut fsa = FiniteAutomaton::new(&names[0]);
        for name in &names[1..] {
            fsa.add_state(name);
        }
        for a in &self.alphabet {
            fsa.add_symbol(a.clone());
        }
        for (s, l, d) in edges {
            fsa.add_transition(s, l, d);
        }
        for (id, (s, _)) in configs.iter().enumerate() {
            if self.finals.contains(s) {
                fsa.set_final(id, true);
            }
        }
        fsa
    }

    /// Upper bound on the expanded state count: states times the product of
    /// (domain size + 1) over registers.
    pub fn expansion_bound(&self) -> u128 {
        self.registers
            .values()
            .fold(self.states.len() as u128, |acc, d| acc.saturating_mul(d.len() as u128 + 1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fsa::{sym, symbols};

    fn toy() -> RegisterAutomaton {
        // a value is stored then must be matched
        let mut ra = RegisterAutomaton::new("s");
        ra.add_register(sym("R"), symbols("x y"));
        for v in ["x", "y"] {
            ra.connect(
                "s",
                Some(&format!("set_{v}")),
                vec![],
                vec![Action::Set { register: sym("R"), value: sym(v) }],
                "m",
            );
            ra.connect(
                "m",
                Some(&format!("get_{v}")),
                vec![Guard::Equals { register: sym("R"), value: sym(v) }],
                vec![],
                "f",
            );
        }
        let f = ra.state_id("f").unwrap();
        ra.set_final(f, true);
        ra
    }

    #[test]
    fn guards_enforce_matching() {
        let ra = toy();
        ra.validate().unwrap();
        assert!(ra.accepts(&symbols("set_x get_x")));
        assert!(!ra.accepts(&symbols("set_x get_y")));
    }

    #[test]
    fn expansion_matches_simulation() {
        let ra = toy();
        let fsa = ra.expand();
        assert!(fsa.is_deterministic());
        assert_eq!(fsa.enumerate_language(3), ra.enumerate_language(3));
        assert!(fsa.num_states() as u128 <= ra.expansion_bound());
    }

    #[test]
    fn no_registers_keeps_the_base() {
        let mut a = FiniteAutomaton::new("A");
        a.connect("A", Some("very"), "A");
        a.connect("A", Some("big"), "END");
        a.set_final(1, true);
        let e = RegisterAutomaton::from_automaton(&a).expand();
        assert_eq!(e.state_names(), a.state_names());
        assert_eq!(e.transitions(), a.transitions());
    }

    #[test]
    fn undeclared_register_is_invalid() {
        let mut ra = RegisterAutomaton::new("s");
        ra.connect("s", Some("a"), vec![Guard::IsSet(sym("Q"))], vec![], "s");
        assert!(ra.validate().is_err());
    }
}
