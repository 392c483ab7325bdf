//! Right- and left-branching regular grammars and their automaton models.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::cfg::{CfgRule, ContextFreeGrammar};
use super::{FiniteAutomaton, FsaError, StateId, Symbol, END};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    /// `A -> a B` (tail recursion)
    Right,
    /// `A -> B a` (head recursion)
    Left,
}

impl Orientation {
    pub fn opposite(self) -> Self {
        match self {
            Orientation::Right => Orientation::Left,
            Orientation::Left => Orientation::Right,
        }
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Orientation::Right => "right",
            Orientation::Left => "left",
        })
    }
}

/// Right-hand side of a regular rule. The order of the two symbols in a pair
/// is fixed by the grammar's [`Orientation`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rhs {
    Terminal(Symbol),
    Pair { terminal: Symbol, nonterminal: Symbol },
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rule {
    pub lhs: Symbol,
    pub rhs: Rhs,
}

impl Rule {
    pub fn terminal(lhs: Symbol, terminal: Symbol) -> Self {
        Rule {
            lhs,
            rhs: Rhs::Terminal(terminal),
        }
    }

    pub fn pair(lhs: Symbol, terminal: Symbol, nonterminal: Symbol) -> Self {
        Rule {
            lhs,
            rhs: Rhs::Pair {
                terminal,
                nonterminal,
            },
        }
    }

    /// Renders the rule in text-format order for the given orientation.
    pub fn display(&self, orientation: Orientation) -> String {
        match (&self.rhs, orientation) {
            (Rhs::Terminal(a), _) => format!("{} -> {}", self.lhs, a),
            (Rhs::Pair { terminal, nonterminal }, Orientation::Right) => {
                format!("{} -> {} {}", self.lhs, terminal, nonterminal)
            }
            (Rhs::Pair { terminal, nonterminal }, Orientation::Left) => {
                format!("{} -> {} {}", self.lhs, nonterminal, terminal)
            }
        }
    }
}

/// A Type 3 grammar: terminal rules plus uniformly oriented pair rules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularGrammar {
    nonterminals: BTreeSet<Symbol>,
    terminals: BTreeSet<Symbol>,
    start: Symbol,
    orientation: Orientation,
    rules: Vec<Rule>,
}

impl RegularGrammar {
    /// Builds a grammar, taking the nonterminals to be the start symbol, every
    /// left-hand side and every pair nonterminal, and the terminals to be the
    /// remaining right-hand-side symbols.
    pub fn new(start: Symbol, orientation: Orientation, rules: Vec<Rule>) -> Result<Self, FsaError> {
        let mut nonterminals = BTreeSet::from([start.clone()]);
        let mut terminals = BTreeSet::new();
        for r in &rules {
            nonterminals.insert(r.lhs.clone());
            match &r.rhs {
                Rhs::Terminal(a) => {
                    terminals.insert(a.clone());
                }
                Rhs::Pair { terminal, nonterminal } => {
                    terminals.insert(terminal.clone());
                    nonterminals.insert(nonterminal.clone());
                }
            }
        }
        Self::with_vocabulary(nonterminals, terminals, start, orientation, rules)
    }

    /// Builds a grammar over an explicitly declared vocabulary.
    pub fn with_vocabulary(
        nonterminals: BTreeSet<Symbol>,
        terminals: BTreeSet<Symbol>,
        start: Symbol,
        orientation: Orientation,
        rules: Vec<Rule>,
    ) -> Result<Self, FsaError> {
        let mut deduped: Vec<Rule> = Vec::with_capacity(rules.len());
        for r in rules {
            if !deduped.contains(&r) {
                deduped.push(r);
            }
        }
        let g = RegularGrammar {
            nonterminals,
            terminals,
            start,
            orientation,
            rules: deduped,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<(), FsaError> {
        let bad = |rule: &Rule, reason: &str| FsaError::InvalidRule {
            rule: rule.display(self.orientation),
            reason: reason.to_string(),
        };
        if self.nonterminals.contains(END) {
            return Err(FsaError::ReservedName(END.to_string()));
        }
        if !self.nonterminals.contains(&self.start) {
            return Err(FsaError::Invalid(format!(
                "start symbol {} is not a nonterminal",
                self.start
            )));
        }
        if let Some(s) = self.terminals.intersection(&self.nonterminals).next() {
            return Err(FsaError::Invalid(format!(
                "symbol {s} is both terminal and nonterminal"
            )));
        }
        for r in &self.rules {
            if !self.nonterminals.contains(&r.lhs) {
                return Err(bad(r, "left-hand side is not a nonterminal"));
            }
            let (terminal, nonterminal) = match &r.rhs {
                Rhs::Terminal(a) => (a, None),
                Rhs::Pair { terminal, nonterminal } => (terminal, Some(nonterminal)),
            };
            if !self.terminals.contains(terminal) {
                return Err(bad(r, "right-hand terminal is not a declared terminal"));
            }
            if let Some(b) = nonterminal {
                if !self.nonterminals.contains(b) {
                    return Err(bad(r, "right-hand nonterminal is not declared"));
                }
            }
        }
        Ok(())
    }

    pub fn start(&self) -> &Symbol {
        &self.start
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn nonterminals(&self) -> &BTreeSet<Symbol> {
        &self.nonterminals
    }

    pub fn terminals(&self) -> &BTreeSet<Symbol> {
        &self.terminals
    }

    /// Finite-state model of the grammar.
    ///
    /// Right-branching: one state per nonterminal plus `END`; `A -> a B`
    /// gives `(A, a, B)`, `A -> a` gives `(A, a, END)`. Left-branching: the
    /// mirror-image right grammar is built over reversed strings and its
    /// automaton reversed, which yields `(END, a, A)` for `A -> a`,
    /// `(B, a, A)` for `A -> B a`, initial `END` and final `A_start`.
    pub fn to_automaton(&self) -> FiniteAutomaton {
        match self.orientation {
            Orientation::Right => self.right_automaton(),
            Orientation::Left => {
                let mirror = RegularGrammar {
                    orientation: Orientation::Right,
                    ..self.clone()
                };
                mirror.right_automaton().reverse()
            }
        }
    }

    fn right_automaton(&self) -> FiniteAutomaton {
        let mut fsa = FiniteAutomaton::new(self.start.as_str());
        for nt in &self.nonterminals {
            fsa.add_state(nt.as_str());
        }
        let end = fsa.add_state(END);
        fsa.set_final(end, true);
        for a in &self.terminals {
            fsa.add_symbol(a.clone());
        }
        for r in &self.rules {
            let src = fsa.state_id(r.lhs.as_str()).unwrap();
            let (label, dst) = match &r.rhs {
                Rhs::Terminal(a) => (a, end),
                Rhs::Pair { terminal, nonterminal } => {
                    (terminal, fsa.state_id(nonterminal.as_str()).unwrap())
                }
            };
            fsa.add_transition(src, Some(label.clone()), dst);
        }
        fsa
    }

    /// Extracts a grammar of the requested orientation from an automaton.
    ///
    /// Epsilon moves are eliminated and useless states trimmed first.
    /// Nonterminals are named after states; a state called `END` or named
    /// like a terminal is prefixed with `N_`. A language containing the empty
    /// string cannot be expressed and is reported as an error.
    pub fn from_automaton(fsa: &FiniteAutomaton, orientation: Orientation) -> Result<Self, FsaError> {
        fsa.validate()?;
        let fsa = fsa.remove_epsilons().trim();
        if fsa.is_final(fsa.initial()) {
            return Err(FsaError::EmptyStringInLanguage);
        }
        let terminals = fsa.alphabet().clone();
        let names = nonterminal_names(&fsa, &terminals);
        let nt = |s: StateId| names[&s].clone();
        let mut rules = Vec::new();
        let start;
        match orientation {
            Orientation::Right => {
                let mut has_out = BTreeSet::new();
                for t in fsa.transitions() {
                    has_out.insert(t.src);
                }
                for t in fsa.transitions() {
                    let a = t.label.clone().expect("epsilon-free");
                    if has_out.contains(&t.dst) {
                        rules.push(Rule::pair(nt(t.src), a.clone(), nt(t.dst)));
                    }
                    if fsa.is_final(t.dst) {
                        rules.push(Rule::terminal(nt(t.src), a));
                    }
                }
                start = nt(fsa.initial());
            }
            Orientation::Left => {
                // X_q derives the nonempty strings leading from the initial
                // state to q.
                let mut has_in = BTreeSet::new();
                for t in fsa.transitions() {
                    has_in.insert(t.dst);
                }
                let into = |rules: &mut Vec<Rule>, lhs: &Symbol, src: StateId, a: &Symbol| {
                    if src == fsa.initial() {
                        rules.push(Rule::terminal(lhs.clone(), a.clone()));
                    }
                    if has_in.contains(&src) {
                        rules.push(Rule::pair(lhs.clone(), a.clone(), nt(src)));
                    }
                };
                for t in fsa.transitions() {
                    let a = t.label.as_ref().expect("epsilon-free");
                    into(&mut rules, &nt(t.dst), t.src, a);
                }
                let finals: Vec<StateId> = fsa.finals().iter().copied().collect();
                if finals.len() == 1 {
                    start = nt(finals[0]);
                } else {
                    let taken: BTreeSet<&str> = names.values().map(Symbol::as_str).collect();
                    let mut name = "S".to_string();
                    let mut i = 0;
                    while taken.contains(name.as_str()) || terminals.contains(name.as_str()) {
                        name = format!("S_{i}");
                        i += 1;
                    }
                    start = Symbol::new(&name)?;
                    for t in fsa.transitions() {
                        if fsa.is_final(t.dst) {
                            let a = t.label.as_ref().expect("epsilon-free");
                            into(&mut rules, &start, t.src, a);
                        }
                    }
                }
            }
        }
        RegularGrammar::new(start, orientation, rules)
    }

    /// Same language, opposite branching direction, via the shared automaton.
    pub fn convert_orientation(&self) -> Result<Self, FsaError> {
        Self::from_automaton(&self.to_automaton(), self.orientation.opposite())
    }

    /// The grammar viewed as a context-free grammar.
    pub fn to_cfg(&self) -> ContextFreeGrammar {
        let rules = self
            .rules
            .iter()
            .map(|r| {
                let rhs = match (&r.rhs, self.orientation) {
                    (Rhs::Terminal(a), _) => vec![a.clone()],
                    (Rhs::Pair { terminal, nonterminal }, Orientation::Right) => {
                        vec![terminal.clone(), nonterminal.clone()]
                    }
                    (Rhs::Pair { terminal, nonterminal }, Orientation::Left) => {
                        vec![nonterminal.clone(), terminal.clone()]
                    }
                };
                CfgRule {
                    lhs: r.lhs.clone(),
                    rhs,
                }
            })
            .collect();
        ContextFreeGrammar::with_vocabulary(
            self.nonterminals.clone(),
            self.terminals.clone(),
            self.start.clone(),
            rules,
        )
        .expect("a valid regular grammar is a valid context-free grammar")
    }
}

/// Validates `g` and returns its automaton model.
pub fn grammar_to_automaton(g: &RegularGrammar) -> Result<FiniteAutomaton, FsaError> {
    g.validate()?;
    Ok(g.to_automaton())
}

fn nonterminal_names(
    fsa: &FiniteAutomaton,
    terminals: &BTreeSet<Symbol>,
) -> BTreeMap<StateId, Symbol> {
    let mut used: BTreeSet<String> = BTreeSet::new();
    let mut names = BTreeMap::new();
    for s in 0..fsa.num_states() {
        let mut name = fsa.state_name(s).to_string();
        while name == END || terminals.contains(name.as_str()) || used.contains(&name) {
            name = format!("N_{name}");
        }
        used.insert(name.clone());
        names.insert(s, Symbol::new(&name).expect("state names are valid symbols"));
    }
    names
}
